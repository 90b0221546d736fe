//! Acceptance criteria. Each test prints one `PASS`/`FAIL` line with its
//! elapsed time and the time limit it is held to. All comparisons are exact.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use bisetcalc::burnside::{
    bullet_poly, burnside_table, objects_up_to, omega_bullet, transitive_descriptors,
    BurnsideClass, OmegaElement,
};
use bisetcalc::fixtures::{self, cyclic, s3};
use bisetcalc::group::{quotient_hom, subgroups, FiniteGroup, GroupHom};
use bisetcalc::gset::{GMap, GSet};
use bisetcalc::laws::{run_law, run_laws, Corpus, Law, LawConfig, LawReport};
use bisetcalc::poly::DEFAULT_DEGREE_CAP;
use bisetcalc::scat::{
    compare_factorizations, is_stab_surjective, sim_factorize, OneCell, ZeroCell,
};
use bisetcalc::slice::{find_iso, pullback_star, push_bullet, push_plus, SliceObject};

fn verdict(criterion: u32, what: &str, started: Instant, limit: Duration, ok: bool, detail: &str) {
    let elapsed = started.elapsed();
    let pass = ok && elapsed <= limit;
    println!(
        "{} criterion {criterion}: {what} ({:.2}s, limit {}s) {detail}",
        if pass { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    assert!(ok, "criterion {criterion} failed: {detail}");
    assert!(
        elapsed <= limit,
        "criterion {criterion} exceeded {limit:?}: {elapsed:?}"
    );
}

fn all_hold(reports: &[LawReport]) -> Result<usize, String> {
    let mut checked = 0;
    for r in reports {
        if !r.holds {
            return Err(format!(
                "{} failed on {}: {:?}",
                r.law, r.fixture, r.witness
            ));
        }
        if r.warnings.iter().any(|w| w.starts_with("skipped")) {
            return Err(format!("{} skipped {}", r.law, r.fixture));
        }
        checked += r.checked;
    }
    Ok(checked)
}

fn over_point(group: &Arc<FiniteGroup>, set: GSet) -> SliceObject {
    let n = set.size();
    SliceObject::new(ZeroCell::point(group.clone()), set, vec![0; n]).unwrap()
}

// ------------------------------------------------------------ oracles

fn res_oracle(iota: &GroupHom, b: &GSet) -> GSet {
    GSet::from_fn(iota.source().clone(), b.size(), |h, x| {
        b.act(iota.apply(h), x)
    })
    .unwrap()
}

/// `G ×_H A`: pairs `(g, a)` modulo `(g·ι(h), a) ~ (g, h·a)`.
fn ind_oracle(iota: &GroupHom, a: &GSet) -> GSet {
    let (g, h) = (iota.target(), iota.source());
    let n = a.size();
    let idx = |x: usize, p: usize| x * n + p;
    let mut parent: Vec<usize> = (0..g.order() * n).collect();
    fn find(parent: &mut [usize], mut i: usize) -> usize {
        while parent[i] != i {
            parent[i] = parent[parent[i]];
            i = parent[i];
        }
        i
    }
    for x in g.elements() {
        for p in 0..n {
            for k in h.elements() {
                let (r1, r2) = (
                    find(&mut parent, idx(g.mul(x, iota.apply(k)), p)),
                    find(&mut parent, idx(x, a.act(k, p))),
                );
                parent[r1.max(r2)] = r1.min(r2);
            }
        }
    }
    let roots: Vec<usize> = (0..parent.len()).map(|i| find(&mut parent, i)).collect();
    let mut label = HashMap::new();
    for &r in &roots {
        let next = label.len();
        label.entry(r).or_insert(next);
    }
    let mut rep = vec![0; label.len()];
    for (i, r) in roots.iter().enumerate() {
        rep[label[r]] = i;
    }
    GSet::from_fn(g.clone(), label.len(), |k, c| {
        let (x, p) = (rep[c] / n, rep[c] % n);
        label[&roots[idx(g.mul(k, x), p)]]
    })
    .unwrap()
}

/// Functions `φ: G → A` with `φ(ι(h)x) = h·φ(x)`, acted on by `(g·φ)(x) = φ(xg)`.
fn coind_oracle(iota: &GroupHom, a: &GSet) -> GSet {
    let (g, h) = (iota.target(), iota.source());
    let mut reps: Vec<usize> = Vec::new();
    let mut coset_of = vec![usize::MAX; g.order()];
    for x in g.elements() {
        if coset_of[x] == usize::MAX {
            for k in h.elements() {
                coset_of[g.mul(iota.apply(k), x)] = reps.len();
            }
            reps.push(x);
        }
    }
    let m = reps.len();
    let n = a.size();
    let total = n.pow(m as u32);
    let mut funcs: Vec<Vec<usize>> = Vec::with_capacity(total);
    for code in 0..total {
        let values: Vec<usize> = (0..m).map(|i| code / n.pow(i as u32) % n).collect();
        let mut phi = vec![usize::MAX; g.order()];
        for (i, &r) in reps.iter().enumerate() {
            for k in h.elements() {
                let y = g.mul(iota.apply(k), r);
                let v = a.act(k, values[i]);
                assert!(phi[y] == usize::MAX || phi[y] == v, "ι must be injective");
                phi[y] = v;
            }
        }
        funcs.push(phi);
    }
    let index: HashMap<Vec<usize>, usize> = funcs
        .iter()
        .cloned()
        .enumerate()
        .map(|(i, f)| (f, i))
        .collect();
    GSet::from_fn(g.clone(), total, |k, i| {
        let moved: Vec<usize> = g.elements().map(|x| funcs[i][g.mul(x, k)]).collect();
        index[&moved]
    })
    .unwrap()
}

fn lift(q: &GroupHom) -> Vec<usize> {
    let mut out = vec![usize::MAX; q.target().order()];
    for g in q.source().elements() {
        if out[q.apply(g)] == usize::MAX {
            out[q.apply(g)] = g;
        }
    }
    out
}

fn inf_oracle(q: &GroupHom, b: &GSet) -> GSet {
    GSet::from_fn(q.source().clone(), b.size(), |g, x| b.act(q.apply(g), x)).unwrap()
}

/// `A/N` with `G/N` acting through any lift.
fn orb_oracle(q: &GroupHom, a: &GSet) -> GSet {
    let kernel = q.kernel();
    let mut class = vec![usize::MAX; a.size()];
    let mut reps = Vec::new();
    for p in 0..a.size() {
        if class[p] == usize::MAX {
            for &k in kernel.elements() {
                class[a.act(k, p)] = reps.len();
            }
            reps.push(p);
        }
    }
    let up = lift(q);
    GSet::from_fn(q.target().clone(), reps.len(), |k, c| {
        class[a.act(up[k], reps[c])]
    })
    .unwrap()
}

/// `A^N` with `G/N` acting through any lift.
fn inv_oracle(q: &GroupHom, a: &GSet) -> GSet {
    let kernel = q.kernel();
    let fixed: Vec<usize> = (0..a.size())
        .filter(|&p| kernel.elements().iter().all(|&k| a.act(k, p) == p))
        .collect();
    let pos: HashMap<usize, usize> = fixed.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let up = lift(q);
    GSet::from_fn(q.target().clone(), fixed.len(), |k, i| {
        pos[&a.act(up[k], fixed[i])]
    })
    .unwrap()
}

fn same(what: &str, computed: &SliceObject, oracle: &SliceObject) -> Result<(), String> {
    match find_iso(computed, oracle) {
        Some(iso) if iso.is_iso() => Ok(()),
        _ => Err(format!(
            "{what}: no isomorphism between {} and {} points",
            computed.size(),
            oracle.size()
        )),
    }
}

fn six_operations() -> Result<usize, String> {
    let mut checked = 0;
    for g in [cyclic(2), s3()] {
        let pt_g = ZeroCell::point(g.clone());
        let g_sets = objects_up_to(&pt_g, 6);
        for class in subgroups(&g) {
            let (h, iota) = class
                .representative
                .to_group(format!("H{}", class.representative.order()));
            let f = OneCell::from_group_hom(&iota);
            for b in &g_sets {
                let computed = pullback_star(&f, b).map_err(|e| e.to_string())?.object;
                same(
                    "Res",
                    &computed,
                    &over_point(&h, res_oracle(&iota, b.total())),
                )?;
                checked += 1;
            }
            for a in objects_up_to(f.source(), 6) {
                let pushed = push_plus(&f, &a).map_err(|e| e.to_string())?.object;
                same(
                    "Ind",
                    &pushed,
                    &over_point(&g, ind_oracle(&iota, a.total())),
                )?;
                let bullet = push_bullet(&f, &a).map_err(|e| e.to_string())?.object;
                same(
                    "Jnd",
                    &bullet,
                    &over_point(&g, coind_oracle(&iota, a.total())),
                )?;
                checked += 2;
            }
            if !class.representative.is_normal() {
                continue;
            }
            let q = quotient_hom(&g, &class.representative).map_err(|e| e.to_string())?;
            let f = OneCell::from_group_hom(&q);
            let quotient = q.target().clone();
            for b in objects_up_to(f.target(), 6) {
                let computed = pullback_star(&f, &b).map_err(|e| e.to_string())?.object;
                same("Inf", &computed, &over_point(&g, inf_oracle(&q, b.total())))?;
                checked += 1;
            }
            for a in &g_sets {
                let pushed = push_plus(&f, a).map_err(|e| e.to_string())?.object;
                same(
                    "Orb",
                    &pushed,
                    &over_point(&quotient, orb_oracle(&q, a.total())),
                )?;
                let bullet = push_bullet(&f, a).map_err(|e| e.to_string())?.object;
                same(
                    "Inv",
                    &bullet,
                    &over_point(&quotient, inv_oracle(&q, a.total())),
                )?;
                checked += 2;
            }
        }
    }
    Ok(checked)
}

#[test]
fn criterion_1_six_operations_match_oracles() {
    let t = Instant::now();
    let r = six_operations();
    let detail = match &r {
        Ok(n) => format!("{n} comparisons"),
        Err(e) => e.clone(),
    };
    verdict(
        1,
        "Ind/Res/Jnd and Orb/Inf/Inv over C2 and S3, sizes <= 6",
        t,
        Duration::from_secs(60),
        r.is_ok(),
        &detail,
    );
}

#[test]
fn criterion_2_adjunctions() {
    let t = Instant::now();
    let reports = run_law(Law::Der3, &Corpus::builtin(), &LawConfig::with_bound(5));
    let r = all_hold(&reports);
    let detail = format!("{} cells, {:?}", reports.len(), r);
    verdict(
        2,
        "Φ/Ψ and forward/backward bijections, bound 5",
        t,
        Duration::from_secs(120),
        r.is_ok(),
        &detail,
    );
}

#[test]
fn criterion_3_stab_surjective_counit() {
    let t = Instant::now();
    let corpus = Corpus::builtin();
    let surjective = corpus
        .cells
        .iter()
        .filter(|(_, f)| is_stab_surjective(f).holds())
        .count();
    let reports = run_law(Law::Counit, &corpus, &LawConfig::with_bound(5));
    let r = all_hold(&reports);
    let ok = surjective >= 3 && matches!(r, Ok(n) if n > 0);
    let detail = format!("{surjective} stab-surjective cells, {r:?}");
    verdict(
        3,
        "counit bijective for stab-surjective cells, bound 5",
        t,
        Duration::from_secs(30),
        ok,
        &detail,
    );
}

#[test]
fn criterion_4_der_suites() {
    let t = Instant::now();
    let cfg = LawConfig::with_bound(5);
    let reports = run_laws(
        &[Law::Der1, Law::Der2, Law::Der3, Law::Der4],
        &Corpus::builtin(),
        &cfg,
    );
    let r = all_hold(&reports);
    let detail = format!("{} reports, {:?}", reports.len(), r);
    verdict(
        4,
        "Der1-Der4 with the explicit Der4(i) map, bound 5",
        t,
        Duration::from_secs(300),
        r.is_ok(),
        &detail,
    );
}

fn theta_varies(f: &OneCell) -> bool {
    let rows = f.thetas();
    let trivial = rows
        .iter()
        .all(|row| row.iter().all(|&k| k == f.target().group().identity()));
    !trivial && rows.windows(2).any(|w| w[0] != w[1])
}

#[test]
fn criterion_5_mackey_and_tambara() {
    let t = Instant::now();
    let corpus = Corpus::builtin();
    let varying = corpus.cells.iter().filter(|(_, f)| theta_varies(f)).count();
    let reports = run_laws(
        &[Law::Mackey, Law::Tambara, Law::SemiMackey],
        &corpus,
        &LawConfig::with_bound(4),
    );
    let r = all_hold(&reports);
    let covered = corpus.cells.iter().all(|(name, _)| {
        reports.iter().any(|rep| {
            rep.law == Law::Mackey && rep.fixture.contains(name.as_str()) && rep.checked > 0
        })
    });
    let ok = r.is_ok() && varying >= 3 && covered;
    let detail =
        format!("{varying} cells with non-constant θ, every cell covered: {covered}, {r:?}");
    verdict(
        5,
        "Mackey, Tambara and semi-Mackey squares, bound 4",
        t,
        Duration::from_secs(300),
        ok,
        &detail,
    );
}

/// Structure constants of `Ω(pt/G)` from explicit products of coset spaces.
fn brute_force_table(g: &Arc<FiniteGroup>) -> Vec<Vec<Vec<i64>>> {
    let basis: Vec<Vec<usize>> = transitive_descriptors(&ZeroCell::point(g.clone()))
        .into_iter()
        .map(|d| d.subgroup)
        .collect();
    let conjugate = |a: &[usize], b: &[usize]| g.elements().any(|x| g.conjugate_set(x, a) == b);
    let cosets = |k: &[usize]| -> Vec<Vec<usize>> {
        let mut out: Vec<Vec<usize>> = Vec::new();
        for x in g.elements() {
            let mut c: Vec<usize> = k.iter().map(|&y| g.mul(x, y)).collect();
            c.sort_unstable();
            if !out.contains(&c) {
                out.push(c);
            }
        }
        out
    };
    let act = |x: usize, c: &[usize]| -> Vec<usize> {
        let mut d: Vec<usize> = c.iter().map(|&y| g.mul(x, y)).collect();
        d.sort_unstable();
        d
    };
    basis
        .iter()
        .map(|k1| {
            basis
                .iter()
                .map(|k2| {
                    let (c1, c2) = (cosets(k1), cosets(k2));
                    let mut seen = vec![vec![false; c2.len()]; c1.len()];
                    let mut row = vec![0i64; basis.len()];
                    for i in 0..c1.len() {
                        for j in 0..c2.len() {
                            if seen[i][j] {
                                continue;
                            }
                            let mut stab = Vec::new();
                            for x in g.elements() {
                                let (a, b) = (act(x, &c1[i]), act(x, &c2[j]));
                                let (ia, ib) = (
                                    c1.iter().position(|c| *c == a).unwrap(),
                                    c2.iter().position(|c| *c == b).unwrap(),
                                );
                                seen[ia][ib] = true;
                                if ia == i && ib == j {
                                    stab.push(x);
                                }
                            }
                            let k = basis
                                .iter()
                                .position(|s| conjugate(&stab, s))
                                .expect("stabilizer class");
                            row[k] += 1;
                        }
                    }
                    row
                })
                .collect()
        })
        .collect()
}

#[test]
fn criterion_6_burnside_tables() {
    let t = Instant::now();
    let c2 = burnside_table(&ZeroCell::point(cyclic(2)));
    // basis is ordered [C2/e, C2/C2]
    let c2_ok = c2.basis.len() == 2
        && c2.basis[0].subgroup.len() == 1
        && c2.products[0][0] == vec![2, 0]
        && c2.products[0][1] == vec![1, 0]
        && c2.products[1][1] == vec![0, 1];
    let mut mismatches = Vec::new();
    for g in fixtures::groups() {
        let table = burnside_table(&ZeroCell::point(g.clone()));
        if table.products != brute_force_table(&g) {
            mismatches.push(g.name().to_string());
        }
    }
    let s3_size = burnside_table(&ZeroCell::point(s3())).basis.len();
    let ok = c2_ok && mismatches.is_empty() && s3_size == 4;
    let detail =
        format!("[C2]^2 = 2[C2]: {c2_ok}, S3 basis size {s3_size}, mismatches {mismatches:?}");
    verdict(
        6,
        "Burnside tables against coset-product oracle",
        t,
        Duration::from_secs(30),
        ok,
        &detail,
    );
}

fn random_class(base: &ZeroCell, rng: &mut ChaCha8Rng, max: usize) -> BurnsideClass {
    let mut ds = Vec::new();
    for d in transitive_descriptors(base) {
        for _ in 0..rng.gen_range(0..=max) {
            ds.push(d.clone());
        }
    }
    BurnsideClass::from_descriptors(base.clone(), ds).unwrap()
}

fn random_element(base: &ZeroCell, rng: &mut ChaCha8Rng) -> OmegaElement {
    let terms: Vec<_> = transitive_descriptors(base)
        .into_iter()
        .map(|d| (d, rng.gen_range(-2..=2)))
        .collect();
    OmegaElement::from_terms(base.clone(), terms).unwrap()
}

fn polynomial_extension() -> Result<(usize, usize), String> {
    let names = ["q_c2", "inc_c2_c4", "inc_c2_c2xc2", "inc_c2_s3"];
    let cells: Vec<OneCell> = names
        .iter()
        .map(|n| fixtures::cell(n).unwrap().cell)
        .collect();
    let base = ZeroCell::point(cyclic(2));
    assert!(cells.iter().all(|f| *f.source() == base));
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut triples = 0;
    for i in 0..500 {
        let f = &cells[i % cells.len()];
        let phi = bullet_poly(f);
        let max = if f.target().group().order() > 4 { 1 } else { 2 };
        let (a, b, c) = (
            random_class(&base, &mut rng, max),
            random_class(&base, &mut rng, max),
            random_class(&base, &mut rng, max),
        );
        let plain = phi
            .extend(&a, &b, DEFAULT_DEGREE_CAP)
            .map_err(|e| e.to_string())?;
        let shifted = phi
            .extend(&a.add(&c).unwrap(), &b.add(&c).unwrap(), DEFAULT_DEGREE_CAP)
            .map_err(|e| e.to_string())?;
        if plain != shifted {
            return Err(format!(
                "{}: extension depends on the representative at a={a:?} b={b:?} c={c:?}",
                names[i % 4]
            ));
        }
        let direct = phi
            .extend(&a.add(&c).unwrap(), &c, DEFAULT_DEGREE_CAP)
            .map_err(|e| e.to_string())?;
        if direct != phi.eval(&a) {
            return Err(format!(
                "{}: extension differs from direct evaluation at {a:?}",
                names[i % 4]
            ));
        }
        // fixed points under C2 are additive: [pt] ↦ [pt], [C2] ↦ 0
        if i % cells.len() == 0 {
            let x = OmegaElement::from_class(&a)
                .sub(&OmegaElement::from_class(&b))
                .unwrap();
            let fixed: i64 = x
                .coeffs()
                .iter()
                .filter(|(d, _)| d.subgroup.len() == 2)
                .map(|(_, &k)| k)
                .sum();
            let expected = OmegaElement::one(f.target().clone()).scale(fixed);
            if plain != expected {
                return Err(format!("q_c2: Ω• of {x} is {plain}, expected {expected}"));
            }
        }
        triples += 1;
    }
    let mut pairs = 0;
    for i in 0..200 {
        let f = &cells[i % cells.len()];
        let (x, y) = (
            random_element(&base, &mut rng),
            random_element(&base, &mut rng),
        );
        let lhs = omega_bullet(f, &x.mul(&y).unwrap()).map_err(|e| e.to_string())?;
        let rhs = omega_bullet(f, &x)
            .unwrap()
            .mul(&omega_bullet(f, &y).unwrap())
            .unwrap();
        if lhs != rhs {
            return Err(format!(
                "{}: Ω•({x} · {y}) = {lhs} but the product of images is {rhs}",
                names[i % 4]
            ));
        }
        pairs += 1;
    }
    Ok((triples, pairs))
}

#[test]
fn criterion_7_polynomial_extension() {
    let t = Instant::now();
    let r = polynomial_extension();
    let detail = format!("{r:?}");
    verdict(
        7,
        "extension well defined on 500 triples, multiplicative on 200 pairs",
        t,
        Duration::from_secs(60),
        r.is_ok(),
        &detail,
    );
}

fn factorizations() -> Result<usize, String> {
    let corpus = fixtures::cells();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..100 {
        let f = &corpus[rng.gen_range(0..corpus.len())].cell;
        let h = f.target().group();
        let fac = sim_factorize(f);
        let eps: Vec<usize> = (0..f.source().size())
            .map(|_| rng.gen_range(0..h.order()))
            .collect();
        let (u2, _) = fac.u.conjugated(&eps);
        let mut sigma: Vec<usize> = (0..fac.sim.size()).collect();
        sigma.shuffle(&mut rng);
        let mut inverse = vec![0; sigma.len()];
        for (i, &s) in sigma.iter().enumerate() {
            inverse[s] = i;
        }
        let middle = ZeroCell::new(fac.sim.gset().relabeled(&sigma));
        let base = (0..f.source().size()).map(|x| sigma[u2.base(x)]).collect();
        let beta = OneCell::new(f.source().clone(), middle.clone(), base, u2.thetas())
            .map_err(|e| e.to_string())?;
        let gamma_image = (0..middle.size())
            .map(|w| fac.a_tilde.apply(inverse[w]))
            .collect();
        let gamma = GMap::new(
            middle.gset().clone(),
            f.target().gset().clone(),
            gamma_image,
        )
        .map_err(|e| e.to_string())?;
        let (_, to_conjugate) = f.conjugated(&eps);
        let omega = compare_factorizations(f, &beta, &gamma, &to_conjugate.inverse())
            .map_err(|e| e.to_string())?;
        if !omega.is_bijective() || omega.then(&gamma).unwrap() != fac.a_tilde {
            return Err("ω is not an isomorphism over the target".into());
        }
    }
    Ok(100)
}

#[test]
fn criterion_8_sim_factorization_uniqueness() {
    let t = Instant::now();
    let r = factorizations();
    let detail = format!("{r:?}");
    verdict(
        8,
        "ω bijective for 100 random alternative factorizations",
        t,
        Duration::from_secs(30),
        r.is_ok(),
        &detail,
    );
}
