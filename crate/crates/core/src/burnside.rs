//! The semi-Burnside ring of `G-set/X`, its completion `Ω(X/G)` and the maps
//! `Ω*`, `Ω₊`, `Ω•` induced by a 1-cell.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::gset::{fibered_product, GSet};
use crate::poly::{AbelianGroup, Monoid, PolyError, PolyMap, DEFAULT_DEGREE_CAP};
use crate::scat::{sim_factorize, OneCell, ZeroCell};
use crate::slice::{pullback_star, push_bullet, push_plus, SliceError, SliceObject};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BurnsideError {
    #[error("elements live over different 0-cells")]
    BaseMismatch,
    #[error("invalid orbit descriptor at base point {point}: {reason}")]
    InvalidDescriptor { point: usize, reason: &'static str },
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Slice(#[from] SliceError),
}

/// A transitive object `G/K → X`, `gK ↦ g·point`, in canonical form: `point` is the
/// least point of its base orbit and `subgroup` the least `Stab(point)`-conjugate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct OrbitDescriptor {
    pub point: usize,
    pub subgroup: Vec<usize>,
}

impl OrbitDescriptor {
    /// Checks that the descriptor is canonical for `base`.
    pub fn validate(&self, base: &ZeroCell) -> Result<(), BurnsideError> {
        let err = |reason| {
            Err(BurnsideError::InvalidDescriptor {
                point: self.point,
                reason,
            })
        };
        let set = base.gset();
        if self.point >= set.size() {
            return err("point out of range");
        }
        if set.orbit_of(self.point)[0] != self.point {
            return err("point is not the least of its orbit");
        }
        let group = base.group();
        if self.subgroup.windows(2).any(|w| w[0] >= w[1]) || !group.is_subgroup(&self.subgroup) {
            return err("not a sorted subgroup");
        }
        let stab = set.stabilizer(self.point);
        if !self.subgroup.iter().all(|k| stab.binary_search(k).is_ok()) {
            return err("not inside the point stabilizer");
        }
        if group.least_conjugate(&self.subgroup, &stab) != self.subgroup {
            return err("not the least conjugate");
        }
        Ok(())
    }

    /// Number of points of the realized orbit.
    pub fn size(&self, base: &ZeroCell) -> usize {
        let set = base.gset();
        set.orbit_of(self.point).len() * set.stabilizer(self.point).len() / self.subgroup.len()
    }
}

impl fmt::Display for OrbitDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.subgroup.iter().map(usize::to_string).collect();
        write!(f, "[{}; {{{}}}]", self.point, k.join(","))
    }
}

/// Descriptor of the orbit of `a` in `obj`.
pub fn describe_orbit(obj: &SliceObject, a: usize) -> OrbitDescriptor {
    let base = obj.base().gset();
    let group = base.group();
    let x = obj.over(a);
    let x0 = base.orbit_of(x)[0];
    let g = group
        .elements()
        .find(|&g| base.act(g, x) == x0)
        .expect("x0 lies in the orbit of x");
    let a0 = obj.total().act(g, a);
    let stab = base.stabilizer(x0);
    let k = obj.total().stabilizer(a0);
    OrbitDescriptor {
        point: x0,
        subgroup: group.least_conjugate(&k, &stab),
    }
}

/// Realizes a descriptor as `G/K → X`. The coset `K` is point 0.
pub fn realize_transitive(
    base: &ZeroCell,
    d: &OrbitDescriptor,
) -> Result<SliceObject, BurnsideError> {
    d.validate(base)?;
    let group = base.group();
    let set = GSet::cosets(group.clone(), &d.subgroup);
    let mut image = vec![usize::MAX; set.size()];
    for g in group.elements() {
        image[set.act(g, 0)] = base.act(g, d.point);
    }
    Ok(SliceObject::new(base.clone(), set, image)?)
}

/// Canonical descriptors of every transitive object over `base`, sorted.
pub fn transitive_descriptors(base: &ZeroCell) -> Vec<OrbitDescriptor> {
    let set = base.gset();
    let group = base.group();
    let mut out = Vec::new();
    for orbit in set.orbits() {
        let x0 = orbit.representative;
        for class in group.subgroup_classes_within(orbit.stabilizer.elements()) {
            let rep = class.into_iter().min().expect("non-empty class");
            out.push(OrbitDescriptor {
                point: x0,
                subgroup: rep,
            });
        }
    }
    out.sort();
    out
}

/// An isomorphism class of `G-set/X`: the sorted multiset of its orbit descriptors.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BurnsideClass {
    base: ZeroCell,
    canonical: Vec<OrbitDescriptor>,
}

impl BurnsideClass {
    pub fn zero(base: ZeroCell) -> Self {
        BurnsideClass {
            base,
            canonical: Vec::new(),
        }
    }

    pub fn one(base: ZeroCell) -> Self {
        classify(&SliceObject::terminal(base))
    }

    pub fn from_descriptors(
        base: ZeroCell,
        mut canonical: Vec<OrbitDescriptor>,
    ) -> Result<Self, BurnsideError> {
        for d in &canonical {
            d.validate(&base)?;
        }
        canonical.sort();
        Ok(BurnsideClass { base, canonical })
    }

    pub fn base(&self) -> &ZeroCell {
        &self.base
    }

    pub fn canonical(&self) -> &[OrbitDescriptor] {
        &self.canonical
    }

    pub fn is_zero(&self) -> bool {
        self.canonical.is_empty()
    }

    /// Number of points of a representative.
    pub fn size(&self) -> usize {
        self.canonical.iter().map(|d| d.size(&self.base)).sum()
    }

    pub fn add(&self, other: &BurnsideClass) -> Result<BurnsideClass, BurnsideError> {
        if self.base != other.base {
            return Err(BurnsideError::BaseMismatch);
        }
        let mut canonical = self.canonical.clone();
        canonical.extend(other.canonical.iter().cloned());
        canonical.sort();
        Ok(BurnsideClass {
            base: self.base.clone(),
            canonical,
        })
    }

    /// Fibered product of representatives over the base.
    pub fn mul(&self, other: &BurnsideClass) -> Result<BurnsideClass, BurnsideError> {
        if self.base != other.base {
            return Err(BurnsideError::BaseMismatch);
        }
        let (a, b) = (self.realize(), other.realize());
        Ok(classify(&fibered_object(&a, &b)?))
    }

    /// A representative: the disjoint union of the realized orbits, in order.
    pub fn realize(&self) -> SliceObject {
        let mut out = SliceObject::initial(self.base.clone());
        for d in &self.canonical {
            let orbit = realize_transitive(&self.base, d).expect("canonical descriptors are valid");
            out = out.sum(&orbit).expect("same base");
        }
        out
    }
}

impl Monoid for BurnsideClass {
    fn plus(&self, other: &Self) -> Self {
        self.add(other).expect("classes over the same base")
    }

    fn is_neutral(&self) -> bool {
        self.is_zero()
    }
}

impl fmt::Display for BurnsideClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        OmegaElement::from_class(self).fmt(f)
    }
}

/// The canonical form of a slice object.
pub fn classify(obj: &SliceObject) -> BurnsideClass {
    let mut canonical: Vec<OrbitDescriptor> = obj
        .total()
        .orbits()
        .iter()
        .map(|o| describe_orbit(obj, o.representative))
        .collect();
    canonical.sort();
    BurnsideClass {
        base: obj.base().clone(),
        canonical,
    }
}

fn fibered_object(a: &SliceObject, b: &SliceObject) -> Result<SliceObject, BurnsideError> {
    let fp = fibered_product(a.structure(), b.structure()).map_err(SliceError::from)?;
    let structure = fp.pairs.iter().map(|&(p, _)| a.over(p)).collect();
    Ok(SliceObject::new(a.base().clone(), fp.set, structure)?)
}

/// Every isomorphism class over `base` whose representatives have at most `max_size` points.
pub fn effective_classes(base: &ZeroCell, max_size: usize) -> Vec<BurnsideClass> {
    weighted_classes(base, |d| vec![d.size(base)], &[max_size])
}

/// Every isomorphism class whose orbits' weights sum to at most `limits`
/// componentwise. Every transitive class must have a nonzero weight.
pub fn weighted_classes(
    base: &ZeroCell,
    weight: impl Fn(&OrbitDescriptor) -> Vec<usize>,
    limits: &[usize],
) -> Vec<BurnsideClass> {
    let basis: Vec<(OrbitDescriptor, Vec<usize>)> = transitive_descriptors(base)
        .into_iter()
        .map(|d| {
            let w = weight(&d);
            assert!(
                w.len() == limits.len() && w.iter().any(|&x| x > 0),
                "weights must be nonzero"
            );
            (d, w)
        })
        .collect();
    fn go(
        basis: &[(OrbitDescriptor, Vec<usize>)],
        start: usize,
        room: &mut Vec<usize>,
        current: &mut Vec<OrbitDescriptor>,
        out: &mut Vec<Vec<OrbitDescriptor>>,
    ) {
        out.push(current.clone());
        for i in start..basis.len() {
            let w = &basis[i].1;
            if w.iter().zip(room.iter()).all(|(a, b)| a <= b) {
                room.iter_mut().zip(w).for_each(|(r, a)| *r -= a);
                current.push(basis[i].0.clone());
                go(basis, i, room, current, out);
                current.pop();
                room.iter_mut().zip(w).for_each(|(r, a)| *r += a);
            }
        }
    }
    let mut out = Vec::new();
    go(&basis, 0, &mut limits.to_vec(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|canonical| BurnsideClass {
            base: base.clone(),
            canonical,
        })
        .collect()
}

/// One representative of every isomorphism class of size at most `max_size`.
pub fn objects_up_to(base: &ZeroCell, max_size: usize) -> Vec<SliceObject> {
    effective_classes(base, max_size)
        .iter()
        .map(BurnsideClass::realize)
        .collect()
}

/// An element of `Ω(X/G)` in the basis of transitive classes. Zero coefficients are absent.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OmegaElement {
    base: ZeroCell,
    coeffs: BTreeMap<OrbitDescriptor, i64>,
}

impl OmegaElement {
    pub fn zero(base: ZeroCell) -> Self {
        OmegaElement {
            base,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(base: ZeroCell) -> Self {
        OmegaElement::from_class(&BurnsideClass::one(base))
    }

    pub fn from_class(class: &BurnsideClass) -> Self {
        let mut out = OmegaElement::zero(class.base.clone());
        for d in &class.canonical {
            out.bump(d.clone(), 1);
        }
        out
    }

    pub fn from_object(obj: &SliceObject) -> Self {
        OmegaElement::from_class(&classify(obj))
    }

    pub fn from_terms(
        base: ZeroCell,
        terms: impl IntoIterator<Item = (OrbitDescriptor, i64)>,
    ) -> Result<Self, BurnsideError> {
        let mut out = OmegaElement::zero(base);
        for (d, c) in terms {
            d.validate(&out.base)?;
            out.bump(d, c);
        }
        Ok(out)
    }

    fn bump(&mut self, d: OrbitDescriptor, c: i64) {
        let entry = self.coeffs.entry(d).or_insert(0);
        *entry += c;
        if *entry == 0 {
            self.coeffs.retain(|_, v| *v != 0);
        }
    }

    pub fn base(&self) -> &ZeroCell {
        &self.base
    }

    pub fn coeffs(&self) -> &BTreeMap<OrbitDescriptor, i64> {
        &self.coeffs
    }

    pub fn coeff(&self, d: &OrbitDescriptor) -> i64 {
        self.coeffs.get(d).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_effective(&self) -> bool {
        self.coeffs.values().all(|&c| c > 0)
    }

    /// `(p, n)` with `self = p - n` and `p`, `n` effective with disjoint support.
    pub fn split(&self) -> (BurnsideClass, BurnsideClass) {
        let mut pos = Vec::new();
        let mut neg = Vec::new();
        for (d, &c) in &self.coeffs {
            let side = if c > 0 { &mut pos } else { &mut neg };
            side.extend(std::iter::repeat_n(d.clone(), c.unsigned_abs() as usize));
        }
        (
            BurnsideClass {
                base: self.base.clone(),
                canonical: pos,
            },
            BurnsideClass {
                base: self.base.clone(),
                canonical: neg,
            },
        )
    }

    pub fn add(&self, other: &OmegaElement) -> Result<OmegaElement, BurnsideError> {
        if self.base != other.base {
            return Err(BurnsideError::BaseMismatch);
        }
        let mut out = self.clone();
        for (d, &c) in &other.coeffs {
            out.bump(d.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &OmegaElement) -> Result<OmegaElement, BurnsideError> {
        self.add(&other.scale(-1))
    }

    pub fn scale(&self, k: i64) -> OmegaElement {
        if k == 0 {
            return OmegaElement::zero(self.base.clone());
        }
        OmegaElement {
            base: self.base.clone(),
            coeffs: self
                .coeffs
                .iter()
                .map(|(d, &c)| (d.clone(), c * k))
                .collect(),
        }
    }

    /// Bilinear extension of the fibered product over the base.
    pub fn mul(&self, other: &OmegaElement) -> Result<OmegaElement, BurnsideError> {
        if self.base != other.base {
            return Err(BurnsideError::BaseMismatch);
        }
        let mut out = OmegaElement::zero(self.base.clone());
        for (d1, &c1) in &self.coeffs {
            for (d2, &c2) in &other.coeffs {
                let product = transitive_product(&self.base, d1, d2)?;
                out = out.add(&product.scale(c1 * c2))?;
            }
        }
        Ok(out)
    }
}

impl Monoid for OmegaElement {
    fn plus(&self, other: &Self) -> Self {
        self.add(other).expect("elements over the same base")
    }

    fn is_neutral(&self) -> bool {
        self.is_zero()
    }
}

impl AbelianGroup for OmegaElement {
    fn zero_like(&self) -> Self {
        OmegaElement::zero(self.base.clone())
    }

    fn negate(&self) -> Self {
        self.scale(-1)
    }

    fn times(&self, k: i64) -> Self {
        self.scale(k)
    }
}

impl fmt::Display for OmegaElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (d, &c)) in self.coeffs.iter().enumerate() {
            match (i, c < 0) {
                (0, false) => {}
                (0, true) => write!(f, "-")?,
                (_, false) => write!(f, " + ")?,
                (_, true) => write!(f, " - ")?,
            }
            if c.abs() != 1 {
                write!(f, "{}", c.abs())?;
            }
            write!(f, "{d}")?;
        }
        Ok(())
    }
}

fn transitive_product(
    base: &ZeroCell,
    d1: &OrbitDescriptor,
    d2: &OrbitDescriptor,
) -> Result<OmegaElement, BurnsideError> {
    if d1.point != d2.point {
        return Ok(OmegaElement::zero(base.clone()));
    }
    let a = realize_transitive(base, d1)?;
    let b = realize_transitive(base, d2)?;
    Ok(OmegaElement::from_object(&fibered_object(&a, &b)?))
}

fn linear(
    x: &OmegaElement,
    expected: &ZeroCell,
    target: &ZeroCell,
    image: impl Fn(&SliceObject) -> Result<SliceObject, SliceError>,
) -> Result<OmegaElement, BurnsideError> {
    if x.base() != expected {
        return Err(BurnsideError::BaseMismatch);
    }
    let mut out = OmegaElement::zero(target.clone());
    for (d, &c) in x.coeffs() {
        let obj = realize_transitive(x.base(), d)?;
        out = out.add(&OmegaElement::from_object(&image(&obj)?).scale(c))?;
    }
    Ok(out)
}

/// `Ω*(f): Ω(Y/H) → Ω(X/G)`.
pub fn omega_star(f: &OneCell, y: &OmegaElement) -> Result<OmegaElement, BurnsideError> {
    linear(y, f.target(), f.source(), |b| {
        Ok(pullback_star(f, b)?.object)
    })
}

/// `Ω₊(f): Ω(X/G) → Ω(Y/H)`.
pub fn omega_plus(f: &OneCell, x: &OmegaElement) -> Result<OmegaElement, BurnsideError> {
    linear(x, f.source(), f.target(), |a| Ok(push_plus(f, a)?.object))
}

/// `f•` on isomorphism classes.
pub fn bullet_class(f: &OneCell, a: &BurnsideClass) -> Result<BurnsideClass, BurnsideError> {
    if a.base() != f.source() {
        return Err(BurnsideError::BaseMismatch);
    }
    Ok(classify(&push_bullet(f, &a.realize())?.object))
}

/// Largest fiber of `α̃: SIm(f) → Y`; the degree bound used for `Ω•(f)`.
pub fn bullet_degree_bound(f: &OneCell) -> usize {
    let sim = sim_factorize(f);
    let a_tilde = &sim.a_tilde;
    (0..f.target().size())
        .map(|y| a_tilde.fiber(y).len())
        .max()
        .unwrap_or(0)
}

/// `𝔄•(f)` followed by the completion map, as a polynomial map.
pub fn bullet_poly(f: &OneCell) -> PolyMap<BurnsideClass, OmegaElement> {
    let cell = f.clone();
    let domain = format!("A({}/{})", f.source().size(), f.source().group().name());
    let codomain = format!("Omega({}/{})", f.target().size(), f.target().group().name());
    PolyMap::new(
        domain,
        codomain,
        bullet_degree_bound(f),
        move |a: &BurnsideClass| {
            OmegaElement::from_class(
                &bullet_class(&cell, a).expect("class over the source of the cell"),
            )
        },
    )
}

/// `Ω•(f): Ω(X/G) → Ω(Y/H)` with the default difference cap.
pub fn omega_bullet(f: &OneCell, x: &OmegaElement) -> Result<OmegaElement, BurnsideError> {
    omega_bullet_capped(f, x, DEFAULT_DEGREE_CAP)
}

pub fn omega_bullet_capped(
    f: &OneCell,
    x: &OmegaElement,
    cap: usize,
) -> Result<OmegaElement, BurnsideError> {
    if x.base() != f.source() {
        return Err(BurnsideError::BaseMismatch);
    }
    let (p, n) = x.split();
    Ok(bullet_poly(f).extend(&p, &n, cap)?)
}

/// Structure constants of `Ω(X/G)` in the transitive basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BurnsideTable {
    pub group: String,
    pub base_size: usize,
    pub basis: Vec<OrbitDescriptor>,
    /// `products[i][j][k]` is the coefficient of `basis[k]` in `basis[i]·basis[j]`.
    pub products: Vec<Vec<Vec<i64>>>,
}

pub fn burnside_table(base: &ZeroCell) -> BurnsideTable {
    let basis = transitive_descriptors(base);
    let products = basis
        .iter()
        .map(|d1| {
            basis
                .iter()
                .map(|d2| {
                    let p = transitive_product(base, d1, d2).expect("basis descriptors are valid");
                    basis.iter().map(|d| p.coeff(d)).collect()
                })
                .collect()
        })
        .collect();
    BurnsideTable {
        group: base.group().name().to_string(),
        base_size: base.size(),
        basis,
        products,
    }
}
