//! Finite left G-sets and equivariant maps.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{FiniteGroup, GroupHom, Subgroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GSetError {
    #[error("G-sets live over different groups")]
    GroupMismatch,
    #[error("action table has {rows} rows, expected one per group element ({order})")]
    WrongRowCount { rows: usize, order: usize },
    #[error("action row {g} has length {len}, expected {size}")]
    WrongRowLength { g: usize, len: usize, size: usize },
    #[error("action of {g} on {x} gives {value}, outside 0..{size}")]
    OutOfRange {
        g: usize,
        x: usize,
        value: usize,
        size: usize,
    },
    #[error("identity acts nontrivially on point {x}")]
    IdentityMoves { x: usize },
    #[error("({g}*{h}).{x} != {g}.({h}.{x})")]
    NotAnAction { g: usize, h: usize, x: usize },
    #[error("map has length {len}, expected {size}")]
    WrongLength { len: usize, size: usize },
    #[error("map value {value} at {x} is outside the target of size {size}")]
    MapOutOfRange { x: usize, value: usize, size: usize },
    #[error("map is not equivariant at g = {g}, x = {x}")]
    NotEquivariant { g: usize, x: usize },
    #[error("maps do not share a common target")]
    TargetMismatch,
    #[error("homomorphism is not injective ({a} and {b} collide)")]
    NotInjective { a: usize, b: usize },
}

/// A finite left G-set: `act[g * size + x] = g.x`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct GSet {
    group: Arc<FiniteGroup>,
    size: usize,
    act: Arc<[usize]>,
}

impl std::fmt::Debug for GSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "GSet({} points over {})", self.size, self.group.name())
    }
}

impl GSet {
    /// Validates a `|G| × size` action table.
    pub fn new(
        group: Arc<FiniteGroup>,
        size: usize,
        table: &[Vec<usize>],
    ) -> Result<Self, GSetError> {
        if table.len() != group.order() {
            return Err(GSetError::WrongRowCount {
                rows: table.len(),
                order: group.order(),
            });
        }
        let mut act = Vec::with_capacity(group.order() * size);
        for (g, row) in table.iter().enumerate() {
            if row.len() != size {
                return Err(GSetError::WrongRowLength {
                    g,
                    len: row.len(),
                    size,
                });
            }
            act.extend_from_slice(row);
        }
        Self::from_flat(group, size, act)
    }

    pub fn from_flat(
        group: Arc<FiniteGroup>,
        size: usize,
        act: Vec<usize>,
    ) -> Result<Self, GSetError> {
        if act.len() != group.order() * size {
            return Err(GSetError::WrongLength {
                len: act.len(),
                size: group.order() * size,
            });
        }
        for g in group.elements() {
            for x in 0..size {
                let value = act[g * size + x];
                if value >= size {
                    return Err(GSetError::OutOfRange { g, x, value, size });
                }
            }
        }
        for x in 0..size {
            if act[x] != x {
                return Err(GSetError::IdentityMoves { x });
            }
        }
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                for x in 0..size {
                    if act[gh * size + x] != act[g * size + act[h * size + x]] {
                        return Err(GSetError::NotAnAction { g, h, x });
                    }
                }
            }
        }
        Ok(Self::from_flat_unchecked(group, size, act))
    }

    pub(crate) fn from_flat_unchecked(
        group: Arc<FiniteGroup>,
        size: usize,
        act: Vec<usize>,
    ) -> Self {
        debug_assert_eq!(act.len(), group.order() * size);
        GSet {
            group,
            size,
            act: act.into(),
        }
    }

    /// Builds the action from a per-(g, x) rule; the rule is validated.
    pub fn from_fn(
        group: Arc<FiniteGroup>,
        size: usize,
        rule: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, GSetError> {
        let act = group
            .elements()
            .flat_map(|g| (0..size).map(move |x| (g, x)))
            .map(|(g, x)| rule(g, x))
            .collect();
        Self::from_flat(group, size, act)
    }

    pub fn trivial(group: Arc<FiniteGroup>, size: usize) -> Self {
        let act = group.elements().flat_map(|_| 0..size).collect();
        Self::from_flat_unchecked(group, size, act)
    }

    pub fn point(group: Arc<FiniteGroup>) -> Self {
        Self::trivial(group, 1)
    }

    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        Self::trivial(group, 0)
    }

    /// `G` acting on itself by left multiplication.
    pub fn regular(group: Arc<FiniteGroup>) -> Self {
        let n = group.order();
        let act = (0..n * n).map(|i| group.mul(i / n, i % n)).collect();
        Self::from_flat_unchecked(group, n, act)
    }

    /// Left cosets `G/K`, numbered by least element; `K` itself is point 0.
    pub fn cosets(group: Arc<FiniteGroup>, subgroup: &[usize]) -> Self {
        let mut coset = vec![usize::MAX; group.order()];
        let mut reps = Vec::new();
        for g in group.elements() {
            if coset[g] == usize::MAX {
                for &k in subgroup {
                    coset[group.mul(g, k)] = reps.len();
                }
                reps.push(g);
            }
        }
        let size = reps.len();
        let act = group
            .elements()
            .flat_map(|g| reps.iter().map(move |&r| (g, r)))
            .map(|(g, r)| coset[group.mul(g, r)])
            .collect();
        Self::from_flat_unchecked(group, size, act)
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.act[g * self.size + x]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        if self.size == 0 {
            return vec![Vec::new(); self.group.order()];
        }
        self.act.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub fn stabilizer(&self, x: usize) -> Vec<usize> {
        self.group
            .elements()
            .filter(|&g| self.act(g, x) == x)
            .collect()
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        let mut pts: Vec<usize> = self.group.elements().map(|g| self.act(g, x)).collect();
        pts.sort_unstable();
        pts.dedup();
        pts
    }

    /// `orbit_id[x]` for every point, orbits numbered by least element.
    pub fn orbit_ids(&self) -> Vec<usize> {
        let mut id = vec![usize::MAX; self.size];
        let mut next = 0;
        for x in 0..self.size {
            if id[x] == usize::MAX {
                for g in self.group.elements() {
                    id[self.act(g, x)] = next;
                }
                next += 1;
            }
        }
        id
    }

    /// Decomposition into orbits, ordered by representative (the least point).
    pub fn orbits(&self) -> Vec<Orbit> {
        let ids = self.orbit_ids();
        let count = ids.iter().copied().max().map_or(0, |m| m + 1);
        let mut points = vec![Vec::new(); count];
        for (x, &o) in ids.iter().enumerate() {
            points[o].push(x);
        }
        points
            .into_iter()
            .map(|points| {
                let representative = points[0];
                let stabilizer = Subgroup::new(self.group.clone(), self.stabilizer(representative))
                    .expect("stabilizers are subgroups");
                Orbit {
                    points,
                    representative,
                    stabilizer,
                }
            })
            .collect()
    }

    /// Points fixed by every element of `n`.
    pub fn fixed_points_subgroup(&self, n: &[usize]) -> Vec<usize> {
        (0..self.size)
            .filter(|&x| n.iter().all(|&k| self.act(k, x) == x))
            .collect()
    }

    /// The action pulled back along `hom: H → G`.
    pub fn restrict(&self, hom: &GroupHom) -> Result<GSet, GSetError> {
        if **hom.target() != *self.group {
            return Err(GSetError::GroupMismatch);
        }
        let act = hom
            .source()
            .elements()
            .flat_map(|h| (0..self.size).map(move |x| (h, x)))
            .map(|(h, x)| self.act(hom.apply(h), x))
            .collect();
        Ok(Self::from_flat_unchecked(
            hom.source().clone(),
            self.size,
            act,
        ))
    }

    /// The sub-G-set on `points` (which must be G-stable), renumbered in increasing order.
    pub fn subset(&self, points: &[usize]) -> GSet {
        let mut pos = vec![usize::MAX; self.size];
        for (i, &x) in points.iter().enumerate() {
            pos[x] = i;
        }
        let act = self
            .group
            .elements()
            .flat_map(|g| points.iter().map(move |&x| (g, x)))
            .map(|(g, x)| {
                let p = pos[self.act(g, x)];
                assert!(p != usize::MAX, "subset is not G-stable");
                p
            })
            .collect();
        Self::from_flat_unchecked(self.group.clone(), points.len(), act)
    }

    /// Transports the action along a bijection `relabel: old point -> new point`.
    pub fn relabeled(&self, relabel: &[usize]) -> GSet {
        let mut inverse = vec![0; self.size];
        for (x, &y) in relabel.iter().enumerate() {
            inverse[y] = x;
        }
        let act = self
            .group
            .elements()
            .flat_map(|g| (0..self.size).map(move |y| (g, y)))
            .map(|(g, y)| relabel[self.act(g, inverse[y])])
            .collect();
        Self::from_flat_unchecked(self.group.clone(), self.size, act)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orbit {
    pub points: Vec<usize>,
    pub representative: usize,
    pub stabilizer: Subgroup,
}

/// An equivariant map between G-sets over the same group.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GMap {
    source: GSet,
    target: GSet,
    image: Vec<usize>,
}

impl GMap {
    pub fn new(source: GSet, target: GSet, image: Vec<usize>) -> Result<Self, GSetError> {
        if *source.group != *target.group {
            return Err(GSetError::GroupMismatch);
        }
        if image.len() != source.size {
            return Err(GSetError::WrongLength {
                len: image.len(),
                size: source.size,
            });
        }
        if let Some((x, &value)) = image.iter().enumerate().find(|(_, &v)| v >= target.size) {
            return Err(GSetError::MapOutOfRange {
                x,
                value,
                size: target.size,
            });
        }
        for g in source.group.elements() {
            for x in 0..source.size {
                if image[source.act(g, x)] != target.act(g, image[x]) {
                    return Err(GSetError::NotEquivariant { g, x });
                }
            }
        }
        Ok(GMap {
            source,
            target,
            image,
        })
    }

    pub(crate) fn new_unchecked(source: GSet, target: GSet, image: Vec<usize>) -> Self {
        debug_assert!(GMap::new(source.clone(), target.clone(), image.clone()).is_ok());
        GMap {
            source,
            target,
            image,
        }
    }

    pub fn identity(set: GSet) -> Self {
        let image = (0..set.size).collect();
        GMap {
            source: set.clone(),
            target: set,
            image,
        }
    }

    /// The unique map into the one-point set.
    pub fn to_point(set: GSet) -> Self {
        let target = GSet::point(set.group.clone());
        GMap {
            image: vec![0; set.size],
            source: set,
            target,
        }
    }

    pub fn source(&self) -> &GSet {
        &self.source
    }

    pub fn target(&self) -> &GSet {
        &self.target
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// `other ∘ self`
    pub fn then(&self, other: &GMap) -> Result<GMap, GSetError> {
        if self.target != other.source {
            return Err(GSetError::TargetMismatch);
        }
        let image = self.image.iter().map(|&x| other.image[x]).collect();
        Ok(GMap {
            source: self.source.clone(),
            target: other.target.clone(),
            image,
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size != self.target.size {
            return false;
        }
        let mut hit = vec![false; self.target.size];
        self.image
            .iter()
            .all(|&y| !std::mem::replace(&mut hit[y], true))
    }

    pub fn inverse(&self) -> Option<GMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut image = vec![0; self.target.size];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Some(GMap {
            source: self.target.clone(),
            target: self.source.clone(),
            image,
        })
    }

    pub fn fiber(&self, y: usize) -> Vec<usize> {
        (0..self.source.size)
            .filter(|&x| self.image[x] == y)
            .collect()
    }
}

pub struct Coproduct {
    pub set: GSet,
    pub left: GMap,
    pub right: GMap,
}

/// `A ⊔ B`; the points of `B` follow those of `A`.
pub fn coproduct(a: &GSet, b: &GSet) -> Result<Coproduct, GSetError> {
    if *a.group != *b.group {
        return Err(GSetError::GroupMismatch);
    }
    let n = a.size + b.size;
    let act = a
        .group
        .elements()
        .flat_map(|g| (0..n).map(move |x| (g, x)))
        .map(|(g, x)| {
            if x < a.size {
                a.act(g, x)
            } else {
                a.size + b.act(g, x - a.size)
            }
        })
        .collect();
    let set = GSet::from_flat_unchecked(a.group.clone(), n, act);
    let left = GMap {
        source: a.clone(),
        target: set.clone(),
        image: (0..a.size).collect(),
    };
    let right = GMap {
        source: b.clone(),
        target: set.clone(),
        image: (a.size..n).collect(),
    };
    Ok(Coproduct { set, left, right })
}

pub struct FiberedProduct {
    pub set: GSet,
    /// Point `i` is the pair `pairs[i]`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    pub left: GMap,
    pub right: GMap,
}

impl FiberedProduct {
    pub fn index_of(&self, a: usize, b: usize) -> Option<usize> {
        self.pairs.binary_search(&(a, b)).ok()
    }
}

/// `{(a, b) | f(a) = g(b)}` with the diagonal action.
pub fn fibered_product(f: &GMap, g: &GMap) -> Result<FiberedProduct, GSetError> {
    if f.target != g.target {
        return Err(GSetError::TargetMismatch);
    }
    let pairs: Vec<(usize, usize)> = (0..f.source.size)
        .flat_map(|a| (0..g.source.size).map(move |b| (a, b)))
        .filter(|&(a, b)| f.apply(a) == g.apply(b))
        .collect();
    let group = f.source.group.clone();
    let n = pairs.len();
    let find = |p: (usize, usize)| {
        pairs
            .binary_search(&p)
            .expect("diagonal action preserves fibers")
    };
    let act = group
        .elements()
        .flat_map(|h| pairs.iter().map(move |&p| (h, p)))
        .map(|(h, (a, b))| find((f.source.act(h, a), g.source.act(h, b))))
        .collect();
    let set = GSet::from_flat_unchecked(group, n, act);
    let left = GMap {
        source: set.clone(),
        target: f.source.clone(),
        image: pairs.iter().map(|p| p.0).collect(),
    };
    let right = GMap {
        source: set.clone(),
        target: g.source.clone(),
        image: pairs.iter().map(|p| p.1).collect(),
    };
    Ok(FiberedProduct {
        set,
        pairs,
        left,
        right,
    })
}

/// The quotient `(H × X)/~` with `(η, x) ~ (η·θ_x(g)⁻¹, g·x)` and `H` acting on the left.
///
/// Both the induced set `G ×_H X` and the stabilizerwise image `H ×_G X` of a
/// 1-cell are instances of this construction.
#[derive(Clone, Debug)]
pub struct BalancedProduct {
    pub set: GSet,
    source_size: usize,
    class_of: Vec<usize>,
    /// Least pair `(η, x)` of each class; classes are numbered in increasing order of these.
    pub reps: Vec<(usize, usize)>,
}

impl BalancedProduct {
    pub fn build(
        target: &Arc<FiniteGroup>,
        source: &GSet,
        theta: impl Fn(usize, usize) -> usize,
    ) -> BalancedProduct {
        let g = source.group();
        let n = source.size();
        let mut class_of = vec![usize::MAX; target.order() * n];
        let mut reps = Vec::new();
        for eta in target.elements() {
            for x in 0..n {
                if class_of[eta * n + x] != usize::MAX {
                    continue;
                }
                let id = reps.len();
                reps.push((eta, x));
                class_of[eta * n + x] = id;
                let mut stack = vec![(eta, x)];
                while let Some((e, y)) = stack.pop() {
                    for k in g.elements() {
                        let e2 = target.mul(e, target.inv(theta(y, k)));
                        let y2 = source.act(k, y);
                        let slot = &mut class_of[e2 * n + y2];
                        if *slot == usize::MAX {
                            *slot = id;
                            stack.push((e2, y2));
                        }
                    }
                }
            }
        }
        let act = target
            .elements()
            .flat_map(|h| reps.iter().map(move |&r| (h, r)))
            .map(|(h, (e, y))| class_of[target.mul(h, e) * n + y])
            .collect();
        let set = GSet::from_flat_unchecked(target.clone(), reps.len(), act);
        BalancedProduct {
            set,
            source_size: n,
            class_of,
            reps,
        }
    }

    /// Index of the class `[η, x]`.
    #[inline]
    pub fn class(&self, eta: usize, x: usize) -> usize {
        self.class_of[eta * self.source_size + x]
    }

    /// All pairs `(η, x)` in the class `c`.
    pub fn members(&self, c: usize) -> Vec<(usize, usize)> {
        let n = self.source_size;
        (0..self.class_of.len())
            .filter(|&i| self.class_of[i] == c)
            .map(|i| (i / n, i % n))
            .collect()
    }
}

pub struct Induced {
    pub set: GSet,
    /// `υ(x) = [e, x]`
    pub upsilon: Vec<usize>,
    pub classes: BalancedProduct,
}

/// `Ind_ι X = G ×_H X` along a monomorphism `ι: H ↪ G`.
pub fn induce(iota: &GroupHom, x: &GSet) -> Result<Induced, GSetError> {
    if **iota.source() != **x.group() {
        return Err(GSetError::GroupMismatch);
    }
    if let Some((a, b)) = iota.injectivity_witness() {
        return Err(GSetError::NotInjective { a, b });
    }
    let classes = BalancedProduct::build(iota.target(), x, |_, h| iota.apply(h));
    let upsilon = (0..x.size()).map(|p| classes.class(0, p)).collect();
    Ok(Induced {
        set: classes.set.clone(),
        upsilon,
        classes,
    })
}
