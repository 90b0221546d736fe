//! A small built-in corpus of groups and 1-cells.

use std::sync::Arc;

use crate::group::{product_group, quotient_hom, FiniteGroup, GroupHom, Subgroup};
use crate::gset::{induce, GSet};
use crate::scat::{OneCell, ZeroCell};

/// How a fixture cell arises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CellKind {
    /// `pt/H → pt/G` along a subgroup inclusion, or `G/H → pt` over `G`.
    Restriction,
    /// `pt/G → pt/(G/N)` along a quotient.
    Quotient,
    Equivariant,
    Equivalence,
    /// Acting part varies from point to point.
    Twisted,
}

#[derive(Clone, Debug)]
pub struct CellFixture {
    pub name: &'static str,
    pub kind: CellKind,
    pub cell: OneCell,
}

pub fn trivial_group() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::trivial())
}

pub fn cyclic(n: usize) -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::cyclic(n))
}

/// `S3` with elements in lexicographic order of permutations of `{0,1,2}`:
/// `1 = (1 2)`, `2 = (0 1)`, `3, 4` the 3-cycles, `5 = (0 2)`.
pub fn s3() -> Arc<FiniteGroup> {
    Arc::new(FiniteGroup::symmetric(3))
}

pub fn klein() -> Arc<FiniteGroup> {
    product_group(&cyclic(2), &cyclic(2)).group
}

/// The named groups of the corpus.
pub fn groups() -> Vec<Arc<FiniteGroup>> {
    vec![
        trivial_group(),
        cyclic(2),
        cyclic(3),
        cyclic(4),
        klein(),
        s3(),
    ]
}

pub fn group(name: &str) -> Option<Arc<FiniteGroup>> {
    groups().into_iter().find(|g| g.name() == name)
}

fn hom(src: &Arc<FiniteGroup>, tgt: &Arc<FiniteGroup>, image: &[usize]) -> GroupHom {
    GroupHom::new(src.clone(), tgt.clone(), image.to_vec()).expect("fixture homomorphism")
}

/// A 1-cell out of the regular `G`-set, determined by `φ: G → H` with `φ(e) = e`:
/// `α(x) = φ(x)y₀` and `θ_x(g) = φ(gx)φ(x)⁻¹`.
pub fn twisted_regular(
    g: &Arc<FiniteGroup>,
    target: ZeroCell,
    y0: usize,
    phi: &[usize],
) -> OneCell {
    let h = target.group().clone();
    let source = ZeroCell::new(GSet::regular(g.clone()));
    let base = g.elements().map(|x| target.act(phi[x], y0)).collect();
    let theta = g
        .elements()
        .map(|x| {
            g.elements()
                .map(|a| h.mul(phi[g.mul(a, x)], h.inv(phi[x])))
                .collect()
        })
        .collect();
    OneCell::new(source, target, base, theta).expect("fixture cell")
}

pub fn cells() -> Vec<CellFixture> {
    let e = trivial_group();
    let c2 = cyclic(2);
    let c3 = cyclic(3);
    let c4 = cyclic(4);
    let s3 = s3();
    let v4 = product_group(&c2, &c2);
    let a3 = Subgroup::new(s3.clone(), vec![0, 3, 4]).expect("A3");
    let sign = quotient_hom(&s3, &a3).expect("A3 is normal");
    let c2_in_s3 = Subgroup::new(s3.clone(), vec![0, 1]).expect("transposition subgroup");
    let ind_pt = induce(&hom(&e, &c2, &[0]), &GSet::point(e.clone())).expect("induction");
    let mut out = vec![
        CellFixture {
            name: "inc_e_c2",
            kind: CellKind::Restriction,
            cell: OneCell::from_group_hom(&hom(&e, &c2, &[0])),
        },
        CellFixture {
            name: "q_c2",
            kind: CellKind::Quotient,
            cell: OneCell::from_group_hom(&hom(&c2, &e, &[0, 0])),
        },
        CellFixture {
            name: "inc_c2_s3",
            kind: CellKind::Restriction,
            cell: OneCell::from_group_hom(&hom(&c2, &s3, &[0, 1])),
        },
        CellFixture {
            name: "inc_c3_s3",
            kind: CellKind::Restriction,
            cell: OneCell::from_group_hom(&hom(&c3, &s3, &[0, 3, 4])),
        },
        CellFixture {
            name: "q_s3_a3",
            kind: CellKind::Quotient,
            cell: OneCell::from_group_hom(&sign),
        },
        CellFixture {
            name: "inc_c2_c4",
            kind: CellKind::Restriction,
            cell: OneCell::from_group_hom(&hom(&c2, &c4, &[0, 2])),
        },
        CellFixture {
            name: "inc_c2_c2xc2",
            kind: CellKind::Restriction,
            cell: OneCell::from_group_hom(&v4.inj_left),
        },
        CellFixture {
            name: "proj_c2",
            kind: CellKind::Equivariant,
            cell: OneCell::from_gmap(&crate::gset::GMap::to_point(GSet::regular(c2.clone()))),
        },
        CellFixture {
            name: "proj_s3_c2",
            kind: CellKind::Equivariant,
            cell: OneCell::from_gmap(&crate::gset::GMap::to_point(GSet::cosets(
                s3.clone(),
                c2_in_s3.elements(),
            ))),
        },
        CellFixture {
            name: "ind_equiv_c2",
            kind: CellKind::Equivalence,
            cell: OneCell::with_hom(
                ZeroCell::point(e.clone()),
                ZeroCell::new(ind_pt.set.clone()),
                &hom(&e, &c2, &[0]),
                ind_pt.upsilon.clone(),
            )
            .expect("Ind-equivalence"),
        },
        CellFixture {
            name: "tw_c2_c3",
            kind: CellKind::Twisted,
            cell: twisted_regular(&c2, ZeroCell::point(c3.clone()), 0, &[0, 1]),
        },
        CellFixture {
            name: "tw_c2_s3",
            kind: CellKind::Twisted,
            cell: twisted_regular(
                &c2,
                ZeroCell::new(GSet::cosets(s3.clone(), c2_in_s3.elements())),
                0,
                &[0, 3],
            ),
        },
        CellFixture {
            name: "tw_c3_s3",
            kind: CellKind::Twisted,
            cell: twisted_regular(&c3, ZeroCell::point(s3.clone()), 0, &[0, 1, 2]),
        },
    ];
    out.sort_by_key(|f| f.name);
    out
}

pub fn cell(name: &str) -> Option<CellFixture> {
    cells().into_iter().find(|f| f.name == name)
}
