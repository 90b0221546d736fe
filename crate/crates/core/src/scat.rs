//! The 2-category of finite sets with variable finite group actions.
//!
//! A 0-cell `X/G` is a finite group with a finite G-set. A 1-cell
//! `(α, θ): X/G → Y/H` is a map `α: X → Y` together with a family of maps
//! `θ_x: G → H` satisfying `α(gx) = θ_x(g)α(x)` and the cocycle condition
//! `θ_x(gg') = θ_{g'x}(g)θ_x(g')`. A 2-cell `ε: (α, θ) ⇒ (α', θ')` is a family
//! `ε_x ∈ H` with `α'(x) = ε_x α(x)` and `ε_{gx} θ_x(g) ε_x⁻¹ = θ'_x(g)`.

use std::sync::Arc;

use thiserror::Error;

use crate::group::{homs_between, product_group, FiniteGroup, GroupError, GroupHom, ProductGroup};
use crate::gset::{coproduct, induce, BalancedProduct, GMap, GSet, GSetError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CellError {
    #[error("base map has length {len}, expected {size}")]
    BaseLength { len: usize, size: usize },
    #[error("theta family has the wrong shape at point {x}")]
    ThetaShape { x: usize },
    #[error("value out of range at point {x}")]
    OutOfRange { x: usize },
    #[error("base map is not compatible with theta at x = {x}, g = {g}")]
    BaseNotCompatible { x: usize, g: usize },
    #[error("cocycle condition fails at x = {x}, g = {g}, g' = {g2}")]
    NotCocycle { x: usize, g: usize, g2: usize },
    #[error("2-cell does not carry the base map at x = {x}")]
    TwoCellBase { x: usize },
    #[error("2-cell does not conjugate theta at x = {x}, g = {g}")]
    TwoCellConjugation { x: usize, g: usize },
    #[error("cells are not composable: {0}")]
    CellMismatch(&'static str),
    #[error("not a factorization: {0}")]
    NotAFactorization(String),
    #[error(transparent)]
    GSet(#[from] GSetError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A 0-cell `X/G`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ZeroCell {
    gset: GSet,
}

impl ZeroCell {
    pub fn new(gset: GSet) -> Self {
        ZeroCell { gset }
    }

    /// `pt/G`
    pub fn point(group: Arc<FiniteGroup>) -> Self {
        ZeroCell::new(GSet::point(group))
    }

    /// `∅/G`
    pub fn empty(group: Arc<FiniteGroup>) -> Self {
        ZeroCell::new(GSet::empty(group))
    }

    pub fn gset(&self) -> &GSet {
        &self.gset
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        self.gset.group()
    }

    pub fn size(&self) -> usize {
        self.gset.size()
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.gset.act(g, x)
    }
}

impl From<GSet> for ZeroCell {
    fn from(gset: GSet) -> Self {
        ZeroCell::new(gset)
    }
}

/// A 1-cell `(α, θ): X/G → Y/H`; `theta[x * |G| + g] = θ_x(g)`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct OneCell {
    source: ZeroCell,
    target: ZeroCell,
    base: Vec<usize>,
    theta: Vec<usize>,
}

impl OneCell {
    pub fn new(
        source: ZeroCell,
        target: ZeroCell,
        base: Vec<usize>,
        theta: Vec<Vec<usize>>,
    ) -> Result<Self, CellError> {
        let order = source.group().order();
        if theta.len() != source.size() {
            return Err(CellError::ThetaShape {
                x: theta.len().min(source.size()),
            });
        }
        if let Some(x) = theta.iter().position(|row| row.len() != order) {
            return Err(CellError::ThetaShape { x });
        }
        Self::from_flat(source, target, base, theta.concat())
    }

    pub fn from_flat(
        source: ZeroCell,
        target: ZeroCell,
        base: Vec<usize>,
        theta: Vec<usize>,
    ) -> Result<Self, CellError> {
        let g = source.group().clone();
        let h = target.group().clone();
        let n = source.size();
        if base.len() != n {
            return Err(CellError::BaseLength {
                len: base.len(),
                size: n,
            });
        }
        if theta.len() != n * g.order() {
            return Err(CellError::ThetaShape { x: 0 });
        }
        for x in 0..n {
            if base[x] >= target.size()
                || theta[x * g.order()..(x + 1) * g.order()]
                    .iter()
                    .any(|&t| t >= h.order())
            {
                return Err(CellError::OutOfRange { x });
            }
        }
        let cell = OneCell {
            source,
            target,
            base,
            theta,
        };
        for x in 0..n {
            for a in g.elements() {
                if cell.base[cell.source.act(a, x)]
                    != cell.target.act(cell.theta(x, a), cell.base[x])
                {
                    return Err(CellError::BaseNotCompatible { x, g: a });
                }
            }
        }
        for x in 0..n {
            for a in g.elements() {
                for b in g.elements() {
                    let lhs = cell.theta(x, g.mul(a, b));
                    let rhs = h.mul(cell.theta(cell.source.act(b, x), a), cell.theta(x, b));
                    if lhs != rhs {
                        return Err(CellError::NotCocycle { x, g: a, g2: b });
                    }
                }
            }
        }
        Ok(cell)
    }

    pub(crate) fn from_flat_unchecked(
        source: ZeroCell,
        target: ZeroCell,
        base: Vec<usize>,
        theta: Vec<usize>,
    ) -> Self {
        debug_assert!(OneCell::from_flat(
            source.clone(),
            target.clone(),
            base.clone(),
            theta.clone()
        )
        .is_ok());
        OneCell {
            source,
            target,
            base,
            theta,
        }
    }

    pub fn identity(x: ZeroCell) -> Self {
        let order = x.group().order();
        let base = (0..x.size()).collect();
        let theta = (0..x.size()).flat_map(|_| 0..order).collect();
        OneCell {
            source: x.clone(),
            target: x,
            base,
            theta,
        }
    }

    /// The 1-cell `(α/φ)` with constant acting part `φ`.
    pub fn with_hom(
        source: ZeroCell,
        target: ZeroCell,
        hom: &GroupHom,
        base: Vec<usize>,
    ) -> Result<Self, CellError> {
        if **hom.source() != **source.group() || **hom.target() != **target.group() {
            return Err(CellError::CellMismatch(
                "homomorphism does not match the groups",
            ));
        }
        let theta = (0..source.size())
            .flat_map(|_| hom.images().iter().copied())
            .collect();
        Self::from_flat(source, target, base, theta)
    }

    /// The equivariant 1-cell `(f/G)` of a G-map.
    pub fn from_gmap(f: &GMap) -> Self {
        let g = f.source().group().clone();
        Self::from_flat_unchecked(
            ZeroCell::new(f.source().clone()),
            ZeroCell::new(f.target().clone()),
            f.images().to_vec(),
            (0..f.source().size()).flat_map(|_| g.elements()).collect(),
        )
    }

    /// `pt/G → pt/H` along a homomorphism.
    pub fn from_group_hom(hom: &GroupHom) -> Self {
        let source = ZeroCell::point(hom.source().clone());
        let target = ZeroCell::point(hom.target().clone());
        Self::from_flat_unchecked(source, target, vec![0], hom.images().to_vec())
    }

    /// The unique-up-to-2-cell map to `pt/e`.
    pub fn to_terminal(x: ZeroCell) -> Self {
        let target = ZeroCell::point(Arc::new(FiniteGroup::trivial().with_name("e")));
        let theta = vec![0; x.size() * x.group().order()];
        let base = vec![0; x.size()];
        OneCell {
            source: x,
            target,
            base,
            theta,
        }
    }

    pub fn source(&self) -> &ZeroCell {
        &self.source
    }

    pub fn target(&self) -> &ZeroCell {
        &self.target
    }

    #[inline]
    pub fn base(&self, x: usize) -> usize {
        self.base[x]
    }

    pub fn base_map(&self) -> &[usize] {
        &self.base
    }

    #[inline]
    pub fn theta(&self, x: usize, g: usize) -> usize {
        self.theta[x * self.source.group().order() + g]
    }

    pub fn theta_row(&self, x: usize) -> &[usize] {
        let n = self.source.group().order();
        &self.theta[x * n..(x + 1) * n]
    }

    pub fn thetas(&self) -> Vec<Vec<usize>> {
        (0..self.source.size())
            .map(|x| self.theta_row(x).to_vec())
            .collect()
    }

    /// True when every θ_x is the identity of a common group.
    pub fn is_equivariant(&self) -> bool {
        *self.source.group() == *self.target.group()
            && (0..self.source.size())
                .all(|x| self.theta_row(x).iter().enumerate().all(|(g, &t)| g == t))
    }

    /// The base map as a G-map, when the cell is equivariant.
    pub fn as_gmap(&self) -> Option<GMap> {
        self.is_equivariant()
            .then(|| {
                GMap::new(
                    self.source.gset.clone(),
                    self.target.gset.clone(),
                    self.base.clone(),
                )
                .ok()
            })
            .flatten()
    }

    /// `next ∘ self`
    pub fn then(&self, next: &OneCell) -> Result<OneCell, CellError> {
        if self.target != next.source {
            return Err(CellError::CellMismatch(
                "target of the first cell differs from the source of the second",
            ));
        }
        let order = self.source.group().order();
        let base = self.base.iter().map(|&y| next.base[y]).collect();
        let theta = (0..self.source.size())
            .flat_map(|x| (0..order).map(move |g| (x, g)))
            .map(|(x, g)| next.theta(self.base[x], self.theta(x, g)))
            .collect();
        Ok(OneCell::from_flat_unchecked(
            self.source.clone(),
            next.target.clone(),
            base,
            theta,
        ))
    }

    /// Transports `self` along an arbitrary family `ε_x ∈ H`, returning the
    /// target cell and the 2-cell `self ⇒ target`.
    pub fn conjugated(&self, eps: &[usize]) -> (OneCell, TwoCell) {
        let h = self.target.group();
        let order = self.source.group().order();
        let base = (0..self.source.size())
            .map(|x| self.target.act(eps[x], self.base[x]))
            .collect();
        let theta = (0..self.source.size())
            .flat_map(|x| (0..order).map(move |g| (x, g)))
            .map(|(x, g)| {
                h.mul(
                    h.mul(eps[self.source.act(g, x)], self.theta(x, g)),
                    h.inv(eps[x]),
                )
            })
            .collect();
        let to =
            OneCell::from_flat_unchecked(self.source.clone(), self.target.clone(), base, theta);
        let cell = TwoCell {
            from: self.clone(),
            to: to.clone(),
            eps: eps.to_vec(),
        };
        (to, cell)
    }
}

/// `g ∘ f`
pub fn compose_one(f: &OneCell, g: &OneCell) -> Result<OneCell, CellError> {
    f.then(g)
}

/// A 2-cell `ε: from ⇒ to`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct TwoCell {
    from: OneCell,
    to: OneCell,
    eps: Vec<usize>,
}

impl TwoCell {
    pub fn new(from: OneCell, to: OneCell, eps: Vec<usize>) -> Result<Self, CellError> {
        if from.source != to.source || from.target != to.target {
            return Err(CellError::CellMismatch(
                "2-cell between 1-cells with different ends",
            ));
        }
        let n = from.source.size();
        if eps.len() != n {
            return Err(CellError::BaseLength {
                len: eps.len(),
                size: n,
            });
        }
        let h = from.target.group().clone();
        if let Some(x) = eps.iter().position(|&e| e >= h.order()) {
            return Err(CellError::OutOfRange { x });
        }
        for x in 0..n {
            if to.base[x] != from.target.act(eps[x], from.base[x]) {
                return Err(CellError::TwoCellBase { x });
            }
        }
        for x in 0..n {
            for g in from.source.group().elements() {
                let lhs = h.mul(
                    h.mul(eps[from.source.act(g, x)], from.theta(x, g)),
                    h.inv(eps[x]),
                );
                if lhs != to.theta(x, g) {
                    return Err(CellError::TwoCellConjugation { x, g });
                }
            }
        }
        Ok(TwoCell { from, to, eps })
    }

    pub fn identity(f: &OneCell) -> Self {
        TwoCell {
            from: f.clone(),
            to: f.clone(),
            eps: vec![0; f.source.size()],
        }
    }

    pub fn from(&self) -> &OneCell {
        &self.from
    }

    pub fn to(&self) -> &OneCell {
        &self.to
    }

    #[inline]
    pub fn eps(&self, x: usize) -> usize {
        self.eps[x]
    }

    pub fn components(&self) -> &[usize] {
        &self.eps
    }

    pub fn is_identity(&self) -> bool {
        self.from == self.to && self.eps.iter().all(|&e| e == 0)
    }

    /// `next · self`
    pub fn vcompose(&self, next: &TwoCell) -> Result<TwoCell, CellError> {
        if self.to != next.from {
            return Err(CellError::CellMismatch(
                "2-cells are not vertically composable",
            ));
        }
        let h = self.from.target.group();
        let eps = self
            .eps
            .iter()
            .zip(&next.eps)
            .map(|(&a, &b)| h.mul(b, a))
            .collect();
        Ok(TwoCell {
            from: self.from.clone(),
            to: next.to.clone(),
            eps,
        })
    }

    pub fn inverse(&self) -> TwoCell {
        let h = self.from.target.group();
        TwoCell {
            from: self.to.clone(),
            to: self.from.clone(),
            eps: self.eps.iter().map(|&e| h.inv(e)).collect(),
        }
    }

    /// `β ∘ ε: β∘f ⇒ β∘f'`, with components `τ_{α(x)}(ε_x)`.
    pub fn whisker_after(&self, beta: &OneCell) -> Result<TwoCell, CellError> {
        let from = self.from.then(beta)?;
        let to = self.to.then(beta)?;
        let eps = (0..self.eps.len())
            .map(|x| beta.theta(self.from.base[x], self.eps[x]))
            .collect();
        TwoCell::new(from, to, eps)
    }

    /// `δ ∘ f: β∘f ⇒ β'∘f`, with components `δ_{α(x)}`.
    pub fn whisker_before(&self, f: &OneCell) -> Result<TwoCell, CellError> {
        let from = f.then(&self.from)?;
        let to = f.then(&self.to)?;
        let eps = f.base.iter().map(|&y| self.eps[y]).collect();
        TwoCell::new(from, to, eps)
    }

    /// Horizontal composite of `self: f ⇒ f'` and `delta: β ⇒ β'`.
    pub fn hcompose(&self, delta: &TwoCell) -> Result<TwoCell, CellError> {
        self.whisker_after(&delta.from)?
            .vcompose(&delta.whisker_before(&self.to)?)
    }
}

/// `ε' · ε`
pub fn vcompose_two(eps: &TwoCell, next: &TwoCell) -> Result<TwoCell, CellError> {
    eps.vcompose(next)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum WhiskerSide {
    /// `β ∘ ε`
    After,
    /// `ε ∘ f`
    Before,
}

pub fn whisker(cell: &OneCell, eps: &TwoCell, side: WhiskerSide) -> Result<TwoCell, CellError> {
    match side {
        WhiskerSide::After => eps.whisker_after(cell),
        WhiskerSide::Before => eps.whisker_before(cell),
    }
}

/// For each orbit of the source, every admissible choice of 2-cell components on that orbit.
pub fn two_cell_choices(
    f: &OneCell,
    f2: &OneCell,
) -> Result<Vec<Vec<Vec<(usize, usize)>>>, CellError> {
    if f.source != f2.source || f.target != f2.target {
        return Err(CellError::CellMismatch(
            "2-cell between 1-cells with different ends",
        ));
    }
    Ok(f.source
        .gset()
        .orbits()
        .iter()
        .map(|o| {
            local_two_cells(
                f.source.gset(),
                &f.target,
                &o.points,
                |p| f.base(p),
                |p, a| f.theta(p, a),
                |p| f2.base(p),
                |p, a| f2.theta(p, a),
                false,
            )
        })
        .collect())
}

/// 2-cells between two pointwise-given cells `src → tgt` on one orbit `pts`
/// (representative first), as `(point, ε)` lists.
///
/// Components are pinned by their value at the representative:
/// `ε_{gx₀} = θ'_{x₀}(g) ε_{x₀} θ_{x₀}(g)⁻¹`.
#[allow(clippy::too_many_arguments)]
fn local_two_cells(
    src: &GSet,
    tgt: &ZeroCell,
    pts: &[usize],
    base1: impl Fn(usize) -> usize,
    theta1: impl Fn(usize, usize) -> usize,
    base2: impl Fn(usize) -> usize,
    theta2: impl Fn(usize, usize) -> usize,
    first_only: bool,
) -> Vec<Vec<(usize, usize)>> {
    let h = tgt.group();
    let x0 = pts[0];
    let mut out = Vec::new();
    let mut eps = vec![usize::MAX; src.size()];
    'eps: for e0 in h.elements() {
        if base2(x0) != tgt.act(e0, base1(x0)) {
            continue;
        }
        for &p in pts {
            eps[p] = usize::MAX;
        }
        for g in src.group().elements() {
            let p = src.act(g, x0);
            let v = h.mul(h.mul(theta2(x0, g), e0), h.inv(theta1(x0, g)));
            if eps[p] == usize::MAX {
                eps[p] = v;
            } else if eps[p] != v {
                continue 'eps;
            }
        }
        for &p in pts {
            if base2(p) != tgt.act(eps[p], base1(p)) {
                continue 'eps;
            }
            for g in src.group().elements() {
                if h.mul(h.mul(eps[src.act(g, p)], theta1(p, g)), h.inv(eps[p])) != theta2(p, g) {
                    continue 'eps;
                }
            }
        }
        out.push(pts.iter().map(|&p| (p, eps[p])).collect());
        if first_only {
            break;
        }
    }
    out
}

/// Some 2-cell `f ⇒ f2`, if one exists.
pub fn find_two_cell(f: &OneCell, f2: &OneCell) -> Option<TwoCell> {
    let choices = two_cell_choices(f, f2).ok()?;
    let mut eps = vec![0; f.source.size()];
    for orbit in choices {
        for &(x, e) in orbit.first()? {
            eps[x] = e;
        }
    }
    Some(TwoCell {
        from: f.clone(),
        to: f2.clone(),
        eps,
    })
}

/// Number of 2-cells `f ⇒ f2` (saturating).
pub fn count_two_cells(f: &OneCell, f2: &OneCell) -> usize {
    two_cell_choices(f, f2).map_or(0, |c| {
        c.iter().fold(1usize, |acc, o| acc.saturating_mul(o.len()))
    })
}

/// Every 2-cell `f ⇒ f2`.
pub fn two_cells_between(f: &OneCell, f2: &OneCell) -> Vec<TwoCell> {
    let Ok(choices) = two_cell_choices(f, f2) else {
        return Vec::new();
    };
    let mut out = Vec::new();
    let mut eps = vec![0; f.source.size()];
    fn go(
        i: usize,
        choices: &[Vec<Vec<(usize, usize)>>],
        eps: &mut Vec<usize>,
        f: &OneCell,
        f2: &OneCell,
        out: &mut Vec<TwoCell>,
    ) {
        if i == choices.len() {
            out.push(TwoCell {
                from: f.clone(),
                to: f2.clone(),
                eps: eps.clone(),
            });
            return;
        }
        for choice in &choices[i] {
            for &(x, e) in choice {
                eps[x] = e;
            }
            go(i + 1, choices, eps, f, f2, out);
        }
    }
    go(0, &choices, &mut eps, f, f2, &mut out);
    out
}

/// Outcome of the stab-surjectivity test.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StabVerdict {
    StabSurjective,
    /// `y` is not in `Hα(X)`.
    MissesOrbit {
        y: usize,
    },
    /// `hα(x) = h'α(x')` but no `g` has `x' = gx` and `h = h'θ_x(g)`.
    StabilizerGap {
        x: usize,
        h: usize,
        x2: usize,
        h2: usize,
    },
}

impl StabVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, StabVerdict::StabSurjective)
    }
}

pub fn is_stab_surjective(f: &OneCell) -> StabVerdict {
    let hg = f.target.group();
    let gg = f.source.group();
    let mut hit = vec![false; f.target.size()];
    for x in 0..f.source.size() {
        for h in hg.elements() {
            hit[f.target.act(h, f.base(x))] = true;
        }
    }
    if let Some(y) = hit.iter().position(|&b| !b) {
        return StabVerdict::MissesOrbit { y };
    }
    // With k = h'⁻¹h the condition reads: kα(x) = α(x') ⇒ ∃g, x' = gx and θ_x(g) = k.
    for x in 0..f.source.size() {
        for x2 in 0..f.source.size() {
            for k in hg.elements() {
                if f.target.act(k, f.base(x)) != f.base(x2) {
                    continue;
                }
                let found = gg
                    .elements()
                    .any(|g| f.source.act(g, x) == x2 && f.theta(x, g) == k);
                if !found {
                    return StabVerdict::StabilizerGap {
                        x,
                        h: k,
                        x2,
                        h2: hg.identity(),
                    };
                }
            }
        }
    }
    StabVerdict::StabSurjective
}

/// The SIm-factorization `f = (α̃/H) ∘ u`.
#[derive(Clone, Debug)]
pub struct SimFactorization {
    /// `SIm(f)/H`
    pub sim: ZeroCell,
    pub classes: BalancedProduct,
    /// `(υ/θ): X/G → SIm(f)/H`, stab-surjective.
    pub u: OneCell,
    /// `α̃[η, x] = ηα(x)`
    pub a_tilde: GMap,
}

impl SimFactorization {
    pub fn composite(&self) -> OneCell {
        self.u
            .then(&OneCell::from_gmap(&self.a_tilde))
            .expect("factorization is composable")
    }
}

pub fn sim_factorize(f: &OneCell) -> SimFactorization {
    let h = f.target.group().clone();
    let classes = BalancedProduct::build(&h, f.source.gset(), |x, g| f.theta(x, g));
    let sim = ZeroCell::new(classes.set.clone());
    let upsilon = (0..f.source.size()).map(|x| classes.class(0, x)).collect();
    let u = OneCell::from_flat_unchecked(f.source.clone(), sim.clone(), upsilon, f.theta.clone());
    let image = classes
        .reps
        .iter()
        .map(|&(eta, x)| f.target.act(eta, f.base(x)))
        .collect();
    let a_tilde =
        GMap::new(sim.gset().clone(), f.target.gset().clone(), image).expect("α̃ is H-equivariant");
    SimFactorization {
        sim,
        classes,
        u,
        a_tilde,
    }
}

/// Compares the SIm-factorization of `f` with another factorization
/// `ε: (γ/H) ∘ β ⇒ f` where `β` is stab-surjective, returning the
/// H-isomorphism `ω[η, x] = ηε_xβ(x)` from `SIm(f)` to the middle of `β`.
pub fn compare_factorizations(
    f: &OneCell,
    beta: &OneCell,
    gamma: &GMap,
    eps: &TwoCell,
) -> Result<GMap, CellError> {
    if beta.source != f.source
        || gamma.source() != beta.target.gset()
        || gamma.target() != f.target.gset()
    {
        return Err(CellError::NotAFactorization("shapes do not match".into()));
    }
    if !is_stab_surjective(beta).holds() {
        return Err(CellError::NotAFactorization(
            "first factor is not stab-surjective".into(),
        ));
    }
    let composite = beta.then(&OneCell::from_gmap(gamma))?;
    if eps.from != composite || eps.to != *f {
        return Err(CellError::NotAFactorization(
            "2-cell does not run from the composite to f".into(),
        ));
    }
    let fac = sim_factorize(f);
    let h = f.target.group();
    let w = beta.target.gset();
    let image: Vec<usize> = fac
        .classes
        .reps
        .iter()
        .map(|&(eta, x)| w.act(h.mul(eta, eps.eps(x)), beta.base(x)))
        .collect();
    for c in 0..fac.sim.size() {
        for (eta, x) in fac.classes.members(c) {
            if w.act(h.mul(eta, eps.eps(x)), beta.base(x)) != image[c] {
                return Err(CellError::NotAFactorization(format!(
                    "ω is not well defined on class {c}"
                )));
            }
        }
    }
    let omega = GMap::new(fac.sim.gset().clone(), w.clone(), image)?;
    if !omega.is_bijective() {
        return Err(CellError::NotAFactorization("ω is not bijective".into()));
    }
    if omega.then(gamma)? != fac.a_tilde {
        return Err(CellError::NotAFactorization("γ ∘ ω differs from α̃".into()));
    }
    Ok(omega)
}

#[derive(Clone, Debug)]
pub struct Bicoproduct {
    pub cell: ZeroCell,
    pub product: ProductGroup,
    pub left: OneCell,
    pub right: OneCell,
}

/// `Ind X ⊔ Ind Y` over `G × H`, with the two injections `(υ/ι)`.
pub fn bicoproduct(x: &ZeroCell, y: &ZeroCell) -> Result<Bicoproduct, CellError> {
    let product = product_group(x.group(), y.group());
    let ix = induce(&product.inj_left, x.gset())?;
    let iy = induce(&product.inj_right, y.gset())?;
    let cp = coproduct(&ix.set, &iy.set)?;
    let cell = ZeroCell::new(cp.set);
    let left_base = ix.upsilon.iter().map(|&p| cp.left.apply(p)).collect();
    let right_base = iy.upsilon.iter().map(|&p| cp.right.apply(p)).collect();
    let left = OneCell::with_hom(x.clone(), cell.clone(), &product.inj_left, left_base)?;
    let right = OneCell::with_hom(y.clone(), cell.clone(), &product.inj_right, right_base)?;
    Ok(Bicoproduct {
        cell,
        product,
        left,
        right,
    })
}

#[derive(Clone, Debug)]
pub struct Bipullback {
    pub cell: ZeroCell,
    pub product: ProductGroup,
    /// Point `i` of `F` is `points[i] = (x, y, k)`, in lexicographic order.
    pub points: Vec<(usize, usize, usize)>,
    /// `(℘_X / pr_G)`
    pub left: OneCell,
    /// `(℘_Y / pr_H)`
    pub right: OneCell,
    /// `κ: f ∘ left ⇒ g ∘ right`, `κ_{(x,y,k)} = k`.
    pub kappa: TwoCell,
    f: OneCell,
    g: OneCell,
}

/// `F = {(x, y, k) | β(y) = kα(x)}` with `(g,h)(x,y,k) = (gx, hy, τ_y(h) k θ_x(g)⁻¹)`.
pub fn bipullback(f: &OneCell, g: &OneCell) -> Result<Bipullback, CellError> {
    if f.target != g.target {
        return Err(CellError::CellMismatch(
            "bipullback legs have different targets",
        ));
    }
    let k = f.target.group().clone();
    let z = &f.target;
    let product = product_group(f.source.group(), g.source.group());
    let points: Vec<(usize, usize, usize)> = (0..f.source.size())
        .flat_map(|x| (0..g.source.size()).map(move |y| (x, y)))
        .flat_map(|(x, y)| k.elements().map(move |kk| (x, y, kk)))
        .filter(|&(x, y, kk)| g.base(y) == z.act(kk, f.base(x)))
        .collect();
    let find = |p: (usize, usize, usize)| points.binary_search(&p).expect("action preserves F");
    let act = product
        .group
        .elements()
        .flat_map(|gh| points.iter().map(move |&p| (gh, p)))
        .map(|(gh, (x, y, kk))| {
            let (a, b) = product.split(gh);
            let kk2 = k.mul(k.mul(g.theta(y, b), kk), k.inv(f.theta(x, a)));
            find((f.source.act(a, x), g.source.act(b, y), kk2))
        })
        .collect();
    let cell = ZeroCell::new(GSet::from_flat(product.group.clone(), points.len(), act)?);
    let left = OneCell::with_hom(
        cell.clone(),
        f.source.clone(),
        &product.proj_left,
        points.iter().map(|p| p.0).collect(),
    )?;
    let right = OneCell::with_hom(
        cell.clone(),
        g.source.clone(),
        &product.proj_right,
        points.iter().map(|p| p.1).collect(),
    )?;
    let kappa = TwoCell::new(
        left.then(f)?,
        right.then(g)?,
        points.iter().map(|p| p.2).collect(),
    )?;
    Ok(Bipullback {
        cell,
        product,
        points,
        left,
        right,
        kappa,
        f: f.clone(),
        g: g.clone(),
    })
}

impl Bipullback {
    pub fn index_of(&self, x: usize, y: usize, k: usize) -> Option<usize> {
        self.points.binary_search(&(x, y, k)).ok()
    }

    /// The mediating 1-cell of a cone `ε: f ∘ g1 ⇒ g ∘ g2`, for which the
    /// triangles commute strictly: `w ↦ (g1(w), g2(w), ε_w)` with acting part
    /// `l ↦ (μ_w(l), ν_w(l))`.
    pub fn mediate(&self, g1: &OneCell, g2: &OneCell, eps: &TwoCell) -> Result<OneCell, CellError> {
        if g1.source != g2.source || g1.target != self.f.source || g2.target != self.g.source {
            return Err(CellError::CellMismatch(
                "cone does not match the bipullback",
            ));
        }
        if *eps.from() != g1.then(&self.f)? || *eps.to() != g2.then(&self.g)? {
            return Err(CellError::CellMismatch("cone 2-cell has the wrong ends"));
        }
        let w = &g1.source;
        let base = (0..w.size())
            .map(|p| {
                self.index_of(g1.base(p), g2.base(p), eps.eps(p))
                    .ok_or(CellError::CellMismatch("cone point outside F"))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let order = w.group().order();
        let theta = (0..w.size())
            .flat_map(|p| (0..order).map(move |l| (p, l)))
            .map(|(p, l)| self.product.pair(g1.theta(p, l), g2.theta(p, l)))
            .collect();
        OneCell::from_flat(w.clone(), self.cell.clone(), base, theta)
    }
}

/// A quasi-inverse with the 2-cells `unit: β∘f ⇒ id_X` and `counit: f∘β ⇒ id_Y`.
#[derive(Clone, Debug)]
pub struct Equivalence {
    pub inverse: OneCell,
    pub unit: TwoCell,
    pub counit: TwoCell,
}

/// Every 1-cell `Y/H → X/G` restricted to the orbit of `y0`, as
/// `(points, base, theta)` triples over those points.
fn orbit_cells(
    y: &ZeroCell,
    x: &ZeroCell,
    y0: usize,
) -> Vec<(Vec<usize>, Vec<usize>, Vec<Vec<usize>>)> {
    let h = y.group();
    let g = x.group();
    let stab = y.gset().stabilizer(y0);
    let mut t = vec![usize::MAX; y.size()];
    for a in h.elements() {
        let p = y.act(a, y0);
        if t[p] == usize::MAX {
            t[p] = a;
        }
    }
    let pts: Vec<usize> = (0..y.size()).filter(|&p| t[p] != usize::MAX).collect();
    let free: Vec<usize> = pts.iter().copied().filter(|&p| p != y0).collect();
    let mut out = Vec::new();
    for x0 in 0..x.size() {
        let stab_x0 = x.gset().stabilizer(x0);
        for psi in homs_between(h, &stab, g, &stab_x0) {
            let psi_of = |s: usize| psi[stab.binary_search(&s).expect("stabilizer element")];
            let mut choice = vec![0usize; free.len()];
            loop {
                // φ(t_p) for every orbit point
                let mut phi_t = vec![0usize; y.size()];
                for (i, &p) in free.iter().enumerate() {
                    phi_t[p] = choice[i];
                }
                let phi = |a: usize| {
                    // a = t_{a y0} s
                    let p = y.act(a, y0);
                    let s = h.mul(h.inv(t[p]), a);
                    g.mul(phi_t[p], psi_of(s))
                };
                let base: Vec<usize> = pts.iter().map(|&p| x.act(phi_t[p], x0)).collect();
                let theta: Vec<Vec<usize>> = pts
                    .iter()
                    .map(|&p| {
                        h.elements()
                            .map(|a| g.mul(phi(h.mul(a, t[p])), g.inv(phi_t[p])))
                            .collect()
                    })
                    .collect();
                out.push((pts.clone(), base, theta));
                let mut i = 0;
                loop {
                    if i == choice.len() {
                        break;
                    }
                    choice[i] += 1;
                    if choice[i] < g.order() {
                        break;
                    }
                    choice[i] = 0;
                    i += 1;
                }
                if i == choice.len() {
                    break;
                }
            }
        }
    }
    out
}

/// Searches for a quasi-inverse of `f`.
///
/// Orbits of the target are independent: a candidate inverse on the orbit `O`
/// only interacts with the source orbits that `f` sends into `O`.
pub fn is_equivalence(f: &OneCell) -> Option<Equivalence> {
    let x = &f.source;
    let y = &f.target;
    let hg = y.group().clone();
    let mut base = vec![0usize; y.size()];
    let mut theta = vec![vec![0usize; hg.order()]; y.size()];
    for orbit in y.gset().orbits() {
        let xs: Vec<usize> = (0..x.size())
            .filter(|&p| orbit.points.contains(&f.base(p)))
            .collect();
        let mut found = false;
        for (pts, b, t) in orbit_cells(y, x, orbit.representative) {
            for (i, &p) in pts.iter().enumerate() {
                base[p] = b[i];
                theta[p] = t[i].clone();
            }
            // f ∘ β ⇒ id on the orbit: ε_y f(β(y)) = y and ε_{hy} θ_{β(y)}(σ_y(h)) ε_y⁻¹ = h
            let counit_ok = !local_two_cells(
                y.gset(),
                y,
                &pts,
                |p| f.base(base[p]),
                |p, a| f.theta(base[p], theta[p][a]),
                |p| p,
                |_, a| a,
                true,
            )
            .is_empty();
            if !counit_ok {
                continue;
            }
            let unit_ok = x
                .gset()
                .orbits()
                .iter()
                .filter(|o| xs.contains(&o.representative))
                .all(|o| {
                    !local_two_cells(
                        x.gset(),
                        x,
                        &o.points,
                        |p| base[f.base(p)],
                        |p, a| theta[f.base(p)][f.theta(p, a)],
                        |p| p,
                        |_, a| a,
                        true,
                    )
                    .is_empty()
                });
            if unit_ok {
                found = true;
                break;
            }
        }
        if !found {
            return None;
        }
    }
    let inverse =
        OneCell::new(y.clone(), x.clone(), base, theta).expect("orbitwise cells assemble");
    let unit = find_two_cell(&f.then(&inverse).ok()?, &OneCell::identity(x.clone()))?;
    let counit = find_two_cell(&inverse.then(f).ok()?, &OneCell::identity(y.clone()))?;
    Some(Equivalence {
        inverse,
        unit,
        counit,
    })
}
