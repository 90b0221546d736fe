//! Finite groups given by explicit multiplication tables.
//!
//! Elements are the dense indices `0..order` and the identity is always `0`.
//! Every constructor validates the group axioms by full enumeration, so a
//! [`FiniteGroup`] value is always a genuine group.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use thiserror::Error;

/// Largest order accepted from external tables unless the caller raises it.
pub const DEFAULT_ORDER_CAP: usize = 24;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("multiplication table is empty")]
    Empty,
    #[error("row {row} has length {len}, expected {order}")]
    NotSquare {
        row: usize,
        len: usize,
        order: usize,
    },
    #[error("entry ({row}, {col}) = {value} is out of range for order {order}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        order: usize,
    },
    #[error("group order {order} exceeds the configured cap {cap}")]
    TooLarge { order: usize, cap: usize },
    #[error("element 0 is not a two-sided identity (fails against element {witness})")]
    NoIdentity { witness: usize },
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("({a}*{b})*{c} != {a}*({b}*{c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("map is not a homomorphism: image of {a}*{b} differs from the product of images")]
    NotHomomorphism { a: usize, b: usize },
    #[error("image has length {len}, expected {order}")]
    WrongLength { len: usize, order: usize },
    #[error("homomorphism is not injective: {a} and {b} have the same image")]
    NotInjective { a: usize, b: usize },
    #[error("subset is not a subgroup ({reason})")]
    NotSubgroup { reason: String },
    #[error("subgroup is not normal: {g} * {n} * {g}^-1 leaves it")]
    NotNormal { g: usize, n: usize },
    #[error("group mismatch: {0}")]
    Mismatch(String),
}

/// A finite group stored as a full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.mul == other.mul
    }
}

impl Eq for FiniteGroup {}

impl Hash for FiniteGroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.order.hash(state);
        self.mul.hash(state);
    }
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteGroup({}, order {})", self.name, self.order)
    }
}

/// Validates `table` as a group with the default order cap.
pub fn make_group(table: &[Vec<usize>]) -> Result<FiniteGroup, GroupError> {
    FiniteGroup::from_table_capped("G", table, DEFAULT_ORDER_CAP)
}

impl FiniteGroup {
    /// Builds a group from a square table without an order cap.
    pub fn from_table(name: impl Into<String>, table: &[Vec<usize>]) -> Result<Self, GroupError> {
        Self::from_table_capped(name, table, usize::MAX)
    }

    pub fn from_table_capped(
        name: impl Into<String>,
        table: &[Vec<usize>],
        cap: usize,
    ) -> Result<Self, GroupError> {
        let order = table.len();
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > cap {
            return Err(GroupError::TooLarge { order, cap });
        }
        let mut mul = Vec::with_capacity(order * order);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != order {
                return Err(GroupError::NotSquare {
                    row,
                    len: entries.len(),
                    order,
                });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= order {
                    return Err(GroupError::OutOfRange {
                        row,
                        col,
                        value,
                        order,
                    });
                }
                mul.push(value);
            }
        }
        Self::from_flat(name.into(), order, mul)
    }

    fn from_flat(name: String, order: usize, mul: Vec<usize>) -> Result<Self, GroupError> {
        let at = |a: usize, b: usize| mul[a * order + b];
        for g in 0..order {
            if at(0, g) != g || at(g, 0) != g {
                return Err(GroupError::NoIdentity { witness: g });
            }
        }
        let mut inv = vec![usize::MAX; order];
        for g in 0..order {
            match (0..order).find(|&h| at(g, h) == 0 && at(h, g) == 0) {
                Some(h) => inv[g] = h,
                None => return Err(GroupError::NoInverse { element: g }),
            }
        }
        for a in 0..order {
            for b in 0..order {
                let ab = at(a, b);
                for c in 0..order {
                    if at(ab, c) != at(a, at(b, c)) {
                        return Err(GroupError::NotAssociative { a, b, c });
                    }
                }
            }
        }
        Ok(FiniteGroup {
            name,
            order,
            mul,
            inv,
        })
    }

    pub fn trivial() -> Self {
        FiniteGroup {
            name: "e".into(),
            order: 1,
            mul: vec![0],
            inv: vec![0],
        }
    }

    pub fn cyclic(n: usize) -> Self {
        assert!(n > 0, "cyclic group of order 0");
        let mul = (0..n * n).map(|i| (i / n + i % n) % n).collect();
        let inv = (0..n).map(|g| (n - g) % n).collect();
        FiniteGroup {
            name: format!("C{n}"),
            order: n,
            mul,
            inv,
        }
    }

    /// The symmetric group on `n` letters; elements are the permutations in
    /// lexicographic order of their one-line notation, composed right to left.
    pub fn symmetric(n: usize) -> Self {
        let perms = permutations(n);
        let index = |p: &[usize]| perms.binary_search_by(|q| q.as_slice().cmp(p)).unwrap();
        let order = perms.len();
        let mut mul = Vec::with_capacity(order * order);
        for s in &perms {
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                mul.push(index(&st));
            }
        }
        Self::from_flat(format!("S{n}"), order, mul).expect("symmetric group table is valid")
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        0
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g * h * g^-1`
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn element_order(&self, g: usize) -> usize {
        let mut k = 1;
        let mut x = g;
        while x != 0 {
            x = self.mul(x, g);
            k += 1;
        }
        k
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.mul.chunks(self.order).map(<[usize]>::to_vec).collect()
    }

    pub fn is_abelian(&self) -> bool {
        self.elements()
            .all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// The subgroup generated by `gens`, as a sorted element list.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(x) = stack.pop() {
            for &s in gens {
                let y = self.mul(x, s);
                if !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        (0..self.order).filter(|&g| seen[g]).collect()
    }

    /// Whether `set` (sorted) is closed under multiplication and inverses and contains `e`.
    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        let mut member = vec![false; self.order];
        for &g in set {
            if g >= self.order {
                return false;
            }
            member[g] = true;
        }
        member[0]
            && set
                .iter()
                .all(|&a| member[self.inv(a)] && set.iter().all(|&b| member[self.mul(a, b)]))
    }

    /// `g K g^-1`, sorted.
    pub fn conjugate_set(&self, g: usize, set: &[usize]) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&k| self.conjugate(g, k)).collect();
        out.sort_unstable();
        out
    }

    /// Every subgroup contained in the subgroup `ambient`, sorted by (order, elements).
    pub fn subgroups_within(&self, ambient: &[usize]) -> Vec<Vec<usize>> {
        let mut found: HashSet<Vec<usize>> = HashSet::new();
        let mut queue = vec![vec![0]];
        found.insert(vec![0]);
        while let Some(k) = queue.pop() {
            for &a in ambient {
                if k.binary_search(&a).is_ok() {
                    continue;
                }
                let mut gens = k.clone();
                gens.push(a);
                let l = self.generated(&gens);
                if found.insert(l.clone()) {
                    queue.push(l);
                }
            }
        }
        let mut all: Vec<Vec<usize>> = found.into_iter().collect();
        all.sort_by(|a, b| (a.len(), a).cmp(&(b.len(), b)));
        all
    }

    /// Lexicographically least conjugate of `set` under conjugation by `conjugators`.
    pub fn least_conjugate(&self, set: &[usize], conjugators: &[usize]) -> Vec<usize> {
        conjugators
            .iter()
            .map(|&g| self.conjugate_set(g, set))
            .min()
            .unwrap_or_else(|| set.to_vec())
    }

    /// Subgroups of `ambient` grouped into `ambient`-conjugacy classes.
    pub fn subgroup_classes_within(&self, ambient: &[usize]) -> Vec<Vec<Vec<usize>>> {
        let mut classes: Vec<(Vec<usize>, BTreeSet<Vec<usize>>)> = Vec::new();
        for k in self.subgroups_within(ambient) {
            let rep = self.least_conjugate(&k, ambient);
            match classes.iter_mut().find(|(r, _)| *r == rep) {
                Some((_, members)) => {
                    members.insert(k);
                }
                None => classes.push((rep, BTreeSet::from([k]))),
            }
        }
        classes.sort_by(|(a, _), (b, _)| (a.len(), a).cmp(&(b.len(), b)));
        classes
            .into_iter()
            .map(|(_, m)| m.into_iter().collect())
            .collect()
    }

    /// A small generating set of the subgroup `set` (greedy).
    pub fn generators_of(&self, set: &[usize]) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![0];
        for &g in set {
            if span.binary_search(&g).is_err() {
                gens.push(g);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                go(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// A homomorphism of finite groups, stored as the image of every element.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GroupHom {
    source: Arc<FiniteGroup>,
    target: Arc<FiniteGroup>,
    image: Vec<usize>,
}

impl GroupHom {
    pub fn new(
        source: Arc<FiniteGroup>,
        target: Arc<FiniteGroup>,
        image: Vec<usize>,
    ) -> Result<Self, GroupError> {
        if image.len() != source.order() {
            return Err(GroupError::WrongLength {
                len: image.len(),
                order: source.order(),
            });
        }
        if let Some((i, &v)) = image.iter().enumerate().find(|(_, &v)| v >= target.order()) {
            return Err(GroupError::OutOfRange {
                row: i,
                col: 0,
                value: v,
                order: target.order(),
            });
        }
        for a in source.elements() {
            for b in source.elements() {
                if image[source.mul(a, b)] != target.mul(image[a], image[b]) {
                    return Err(GroupError::NotHomomorphism { a, b });
                }
            }
        }
        Ok(GroupHom {
            source,
            target,
            image,
        })
    }

    pub fn identity(group: Arc<FiniteGroup>) -> Self {
        let image = group.elements().collect();
        GroupHom {
            source: group.clone(),
            target: group,
            image,
        }
    }

    /// The homomorphism sending everything to the identity.
    pub fn trivial(source: Arc<FiniteGroup>, target: Arc<FiniteGroup>) -> Self {
        let image = vec![0; source.order()];
        GroupHom {
            source,
            target,
            image,
        }
    }

    pub fn source(&self) -> &Arc<FiniteGroup> {
        &self.source
    }

    pub fn target(&self) -> &Arc<FiniteGroup> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, g: usize) -> usize {
        self.image[g]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GroupHom) -> Result<GroupHom, GroupError> {
        if *self.target != *other.source {
            return Err(GroupError::Mismatch(
                "composing homomorphisms with different middle groups".into(),
            ));
        }
        let image = self.image.iter().map(|&g| other.apply(g)).collect();
        Ok(GroupHom {
            source: self.source.clone(),
            target: other.target.clone(),
            image,
        })
    }

    pub fn kernel(&self) -> Subgroup {
        let elements = self
            .source
            .elements()
            .filter(|&g| self.image[g] == 0)
            .collect();
        Subgroup {
            parent: self.source.clone(),
            elements,
        }
    }

    pub fn image_subgroup(&self) -> Subgroup {
        let set: BTreeSet<usize> = self.image.iter().copied().collect();
        Subgroup {
            parent: self.target.clone(),
            elements: set.into_iter().collect(),
        }
    }

    pub fn injectivity_witness(&self) -> Option<(usize, usize)> {
        let mut seen = vec![usize::MAX; self.target.order()];
        for g in self.source.elements() {
            let h = self.image[g];
            if seen[h] != usize::MAX {
                return Some((seen[h], g));
            }
            seen[h] = g;
        }
        None
    }

    pub fn is_injective(&self) -> bool {
        self.injectivity_witness().is_none()
    }

    pub fn is_surjective(&self) -> bool {
        self.image_subgroup().order() == self.target.order()
    }
}

/// A subgroup, kept as a sorted list of elements of its parent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    elements: Vec<usize>,
}

impl Subgroup {
    pub fn new(parent: Arc<FiniteGroup>, mut elements: Vec<usize>) -> Result<Self, GroupError> {
        elements.sort_unstable();
        elements.dedup();
        if !parent.is_subgroup(&elements) {
            return Err(GroupError::NotSubgroup {
                reason: format!("{elements:?} is not closed in {}", parent.name()),
            });
        }
        Ok(Subgroup { parent, elements })
    }

    pub fn generated_by(parent: Arc<FiniteGroup>, gens: &[usize]) -> Self {
        let elements = parent.generated(gens);
        Subgroup { parent, elements }
    }

    pub fn whole(parent: Arc<FiniteGroup>) -> Self {
        let elements = parent.elements().collect();
        Subgroup { parent, elements }
    }

    pub fn trivial(parent: Arc<FiniteGroup>) -> Self {
        Subgroup {
            parent,
            elements: vec![0],
        }
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn elements(&self) -> &[usize] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, g: usize) -> bool {
        self.elements.binary_search(&g).is_ok()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    /// A pair `(g, n)` with `g n g^-1` outside the subgroup, if any.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        let p = &self.parent;
        p.elements()
            .flat_map(|g| self.elements.iter().map(move |&n| (g, n)))
            .find(|&(g, n)| !self.contains(p.conjugate(g, n)))
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// The subgroup as a group in its own right (elements renumbered in
    /// increasing order) together with its inclusion into the parent.
    pub fn to_group(&self, name: impl Into<String>) -> (Arc<FiniteGroup>, GroupHom) {
        let k = self.elements.len();
        let pos = |g: usize| self.elements.binary_search(&g).expect("closed subgroup");
        let mul = (0..k * k)
            .map(|i| pos(self.parent.mul(self.elements[i / k], self.elements[i % k])))
            .collect();
        let group = Arc::new(
            FiniteGroup::from_flat(name.into(), k, mul).expect("subgroup of a group is a group"),
        );
        let inclusion = GroupHom {
            source: group.clone(),
            target: self.parent.clone(),
            image: self.elements.clone(),
        };
        (group, inclusion)
    }
}

/// A conjugacy class of subgroups with its canonical representative.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubgroupClass {
    /// Lexicographically least member.
    pub representative: Subgroup,
    pub members: Vec<Subgroup>,
}

/// All subgroups of `g` up to conjugacy.
pub fn subgroups(g: &Arc<FiniteGroup>) -> Vec<SubgroupClass> {
    let all: Vec<usize> = g.elements().collect();
    g.subgroup_classes_within(&all)
        .into_iter()
        .map(|members| {
            let members: Vec<Subgroup> = members
                .into_iter()
                .map(|elements| Subgroup {
                    parent: g.clone(),
                    elements,
                })
                .collect();
            let representative = members
                .iter()
                .min_by(|a, b| a.elements.cmp(&b.elements))
                .unwrap()
                .clone();
            SubgroupClass {
                representative,
                members,
            }
        })
        .collect()
}

/// `G × H` with its structure maps.
#[derive(Clone, Debug)]
pub struct ProductGroup {
    pub group: Arc<FiniteGroup>,
    /// `g ↦ (g, e)`
    pub inj_left: GroupHom,
    /// `h ↦ (e, h)`
    pub inj_right: GroupHom,
    pub proj_left: GroupHom,
    pub proj_right: GroupHom,
}

impl ProductGroup {
    /// Index of `(g, h)`.
    pub fn pair(&self, g: usize, h: usize) -> usize {
        g * self.proj_right.target().order() + h
    }

    pub fn split(&self, gh: usize) -> (usize, usize) {
        (self.proj_left.apply(gh), self.proj_right.apply(gh))
    }
}

/// Direct product; `(g, h)` has index `g * |H| + h`.
pub fn product_group(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>) -> ProductGroup {
    let (m, n) = (g.order(), h.order());
    let order = m * n;
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            mul.push(g.mul(a / n, b / n) * n + h.mul(a % n, b % n));
        }
    }
    let inv = (0..order)
        .map(|a| g.inv(a / n) * n + h.inv(a % n))
        .collect();
    let group = Arc::new(FiniteGroup {
        name: format!("{}x{}", g.name(), h.name()),
        order,
        mul,
        inv,
    });
    ProductGroup {
        inj_left: GroupHom {
            source: g.clone(),
            target: group.clone(),
            image: (0..m).map(|a| a * n).collect(),
        },
        inj_right: GroupHom {
            source: h.clone(),
            target: group.clone(),
            image: (0..n).collect(),
        },
        proj_left: GroupHom {
            source: group.clone(),
            target: g.clone(),
            image: (0..order).map(|a| a / n).collect(),
        },
        proj_right: GroupHom {
            source: group.clone(),
            target: h.clone(),
            image: (0..order).map(|a| a % n).collect(),
        },
        group,
    }
}

/// The quotient map `G → G/N`. Cosets are numbered by their least element,
/// so `N` itself is the identity `0`.
pub fn quotient_hom(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<GroupHom, GroupError> {
    if **n.parent() != **g {
        return Err(GroupError::Mismatch(
            "subgroup belongs to a different group".into(),
        ));
    }
    if let Some((x, k)) = n.normality_witness() {
        return Err(GroupError::NotNormal { g: x, n: k });
    }
    let mut coset = vec![usize::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x] == usize::MAX {
            for &k in n.elements() {
                coset[g.mul(x, k)] = reps.len();
            }
            reps.push(x);
        }
    }
    let q = reps.len();
    let mul = (0..q * q)
        .map(|i| coset[g.mul(reps[i / q], reps[i % q])])
        .collect();
    let quotient = FiniteGroup::from_flat(format!("{}/N", g.name()), q, mul)
        .expect("quotient by a normal subgroup is a group");
    Ok(GroupHom {
        source: g.clone(),
        target: Arc::new(quotient),
        image: coset,
    })
}

/// All homomorphisms from the subgroup `dom` of `g` into the subgroup `cod` of `h`,
/// each returned as a list of images aligned with `dom`.
pub fn homs_between(
    g: &FiniteGroup,
    dom: &[usize],
    h: &FiniteGroup,
    cod: &[usize],
) -> Vec<Vec<usize>> {
    let gens = g.generators_of(dom);
    let pos = |x: usize| dom.binary_search(&x).expect("element of dom");
    let mut out = Vec::new();
    let mut choice = vec![0usize; gens.len()];
    loop {
        let gen_images: Vec<usize> = choice.iter().map(|&i| cod[i]).collect();
        if let Some(images) = extend_hom(g, dom, h, &gens, &gen_images, &pos) {
            out.push(images);
        }
        // odometer over generator images
        let mut i = 0;
        loop {
            if i == choice.len() {
                return out;
            }
            choice[i] += 1;
            if choice[i] < cod.len() {
                break;
            }
            choice[i] = 0;
            i += 1;
        }
    }
}

fn extend_hom(
    g: &FiniteGroup,
    dom: &[usize],
    h: &FiniteGroup,
    gens: &[usize],
    gen_images: &[usize],
    pos: &dyn Fn(usize) -> usize,
) -> Option<Vec<usize>> {
    let mut image = vec![usize::MAX; dom.len()];
    image[pos(0)] = 0;
    let mut stack = vec![0usize];
    while let Some(x) = stack.pop() {
        let fx = image[pos(x)];
        for (&s, &fs) in gens.iter().zip(gen_images) {
            let y = g.mul(x, s);
            let fy = h.mul(fx, fs);
            let slot = &mut image[pos(y)];
            if *slot == usize::MAX {
                *slot = fy;
                stack.push(y);
            } else if *slot != fy {
                return None;
            }
        }
    }
    Some(image)
}
