//! Acceptance suite: prints one PASS/FAIL line per criterion and exits with a
//! nonzero status if any criterion fails.

use std::collections::VecDeque;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use siltwb::derived::{iso_test, project_to_perpendicular, DObject, Stalk};
use siltwb::linalg::Matrix;
use siltwb::oracle::{TypeAOracle, Window};
use siltwb::quiver::Quiver;
use siltwb::rep::{ext1_dim, hom_basis, hom_dim, Representation};
use siltwb::silting::{
    class_determinant, complete_presilting, hom_graph_is_acyclic, is_silting, is_tilting_module,
    lift_silting, mutate_left, mutate_right, projective_silting, sort_presilting_summands,
};
use siltwb::smc::{complete_presmc, ext_quiver, is_pre_smc, PreSmcCompletion};
use siltwb::Field;

type Outcome = Result<String, String>;

fn linear(n: usize) -> (Arc<Quiver>, Field) {
    (Arc::new(Quiver::linear_a(n)), Field::default())
}

fn as_module(t: &DObject) -> Option<Representation> {
    if !t.is_module() {
        return None;
    }
    let parts: Vec<&Representation> = t.summands().iter().map(|s| &s.rep).collect();
    Some(Representation::direct_sum(t.quiver().clone(), t.field(), &parts))
}

fn contains_all(big: &DObject, small: &[Stalk]) -> bool {
    small.iter().all(|s| big.find_summand(s).is_some())
}

fn projectives(q: &Arc<Quiver>, f: Field) -> DObject {
    projective_silting(q, f)
}

/// Presilting objects in [-1, 1] complete to silting objects confirmed by thick closure.
fn criterion_1() -> Outcome {
    let w = Window::new(-1, 1).unwrap();
    let mut total = 0;
    for n in [2, 3] {
        let (q, f) = linear(n);
        let oracle = TypeAOracle::new(&q, f).map_err(|e| e.to_string())?;
        let proj = projectives(&q, f);
        for t in oracle.enumerate_presilting(w) {
            total += 1;
            let out = complete_presilting(&t).map_err(|e| format!("A_{n}, {t}: {e}"))?;
            if !is_silting(&out) || out.len() != n || class_determinant(&out).abs() != 1 {
                return Err(format!("A_{n}, {t}: output {out} fails the silting checks"));
            }
            if !contains_all(&out, t.summands()) {
                return Err(format!("A_{n}, {t}: output {out} does not contain the input"));
            }
            let (lo, hi) = out.shift_range().unwrap();
            let padded = Window::new(lo.min(w.min_shift) - 1, hi.max(w.max_shift) + 1).unwrap();
            let gen = oracle
                .thick_closure_contains(&[out.clone()], &proj, padded)
                .map_err(|e| e.to_string())?;
            if !gen {
                return Err(format!("A_{n}, {t}: output {out} does not generate"));
            }
        }
    }
    Ok(format!("{total} presilting objects completed"))
}

/// Pre-SMCs in [-1, 1]: completion succeeds exactly when the Ext-quiver is acyclic.
fn criterion_2() -> Outcome {
    let w = Window::new(-1, 1).unwrap();
    let search = w.padded(2);
    let (mut completed, mut rejected) = (0, 0);
    for n in [2, 3] {
        let (q, f) = linear(n);
        let oracle = TypeAOracle::new(&q, f).map_err(|e| e.to_string())?;
        let smcs = oracle.enumerate_smc(search);
        for x in oracle.enumerate_pre_smc(w) {
            let label = x.iter().map(|s| s.to_string()).collect::<Vec<_>>().join(" + ");
            let acyclic = ext_quiver(&x).map_err(|e| e.to_string())?.is_acyclic();
            let oracle_completable = smcs
                .iter()
                .any(|c| x.iter().all(|s| c.iter().any(|t| t.is_isomorphic(s))));
            if acyclic != oracle_completable {
                return Err(format!(
                    "A_{n}, {label}: acyclic = {acyclic} but oracle completable = {oracle_completable}"
                ));
            }
            match complete_presmc(&x).map_err(|e| format!("A_{n}, {label}: {e}"))? {
                PreSmcCompletion::Completed(c) => {
                    if !acyclic {
                        return Err(format!("A_{n}, {label}: cyclic input was completed"));
                    }
                    let col = &c.collection;
                    let ok = col.len() == n
                        && is_pre_smc(col)
                        && x.iter().all(|s| col.iter().any(|t| t.is_isomorphic(s)))
                        && oracle.collection_generates(col).map_err(|e| e.to_string())?;
                    if !ok {
                        return Err(format!("A_{n}, {label}: completion is not an SMC containing the input"));
                    }
                    completed += 1;
                }
                PreSmcCompletion::NotCompletable { .. } => {
                    if acyclic {
                        return Err(format!("A_{n}, {label}: acyclic input was rejected"));
                    }
                    rejected += 1;
                }
            }
        }
    }
    let kq = Arc::new(Quiver::kronecker());
    let f = Field::default();
    let one = Matrix::from_i64(f, &[vec![1]]);
    let r = Representation::new(kq, f, vec![1, 1], vec![one.clone(), one]).map_err(|e| e.to_string())?;
    match complete_presmc(&[Stalk::new(r, 0)]).map_err(|e| e.to_string())? {
        PreSmcCompletion::NotCompletable { cycle } if cycle == vec![0] => {}
        other => return Err(format!("Kronecker regular object: unexpected {other:?}")),
    }
    Ok(format!("{completed} completed, {rejected} rejected, Kronecker loop detected"))
}

/// Lifting silting objects of a perpendicular category and projecting back.
fn criterion_3() -> Outcome {
    let w = Window::new(-1, 1).unwrap();
    let (q, f) = linear(3);
    let oracle = TypeAOracle::new(&q, f).map_err(|e| e.to_string())?;
    let mut total = 0;
    for e in oracle.indecomposables() {
        let d = Stalk::new(e.clone(), 0);
        for n_obj in oracle.enumerate_silting_in_perpendicular(e, w).map_err(|e| e.to_string())? {
            total += 1;
            let lift = lift_silting(&d, &n_obj).map_err(|err| format!("{d}, {n_obj}: {err}"))?;
            let t = &lift.result;
            if !is_silting(t) || t.find_summand(&d).is_none() {
                return Err(format!("{d}, {n_obj}: lift {t} is not a silting object containing D"));
            }
            let back = project_to_perpendicular(std::slice::from_ref(&d), t).map_err(|e| e.to_string())?;
            if !iso_test(&back, &n_obj) {
                return Err(format!("{d}, {n_obj}: lift {t} projects to {back}"));
            }
        }
    }
    Ok(format!("{total} lifts round-tripped"))
}

/// `M ⊕ E[1]` is silting and right mutation at `E[1]` gives a tilting module.
fn criterion_4() -> Outcome {
    let mut total = 0;
    for n in [2, 3] {
        let (q, f) = linear(n);
        let oracle = TypeAOracle::new(&q, f).map_err(|e| e.to_string())?;
        for e in oracle.indecomposables() {
            let e1 = Stalk::new(e.clone(), 1);
            for m in oracle.enumerate_tilting_in_perpendicular(e).map_err(|e| e.to_string())? {
                total += 1;
                let t = DObject::stalk(m.clone(), 0).direct_sum(&DObject::from_stalk(e1.clone()));
                if !is_silting(&t) {
                    return Err(format!("A_{n}: {t} is not silting"));
                }
                let mu = mutate_right(&t, &e1).map_err(|err| format!("A_{n}, {t}: {err}"))?;
                match as_module(&mu.result) {
                    Some(rep) if is_tilting_module(&rep) => {}
                    _ => return Err(format!("A_{n}, {t}: mutation gives {}", mu.result)),
                }
            }
        }
    }
    Ok(format!("{total} objects checked"))
}

fn random_line(rng: &mut ChaCha8Rng, n: usize) -> Arc<Quiver> {
    let arrows = (0..n - 1)
        .map(|i| if rng.gen_bool(0.5) { (i, i + 1) } else { (i + 1, i) })
        .collect();
    Arc::new(Quiver::new(n, arrows).unwrap())
}

fn random_combination(rng: &mut ChaCha8Rng, f: Field, basis: &[siltwb::rep::RepMorphism]) -> siltwb::rep::RepMorphism {
    let mut acc = basis[0].scale(&f.from_i64(0));
    for b in basis {
        let c: i64 = rng.gen_range(-5..=5);
        acc = acc.add(&b.scale(&f.from_i64(c)));
    }
    acc
}

/// Nonzero maps between exceptional modules with `Ext^1(F, E) = 0` are mono or epi.
fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let f = Field::default();
    let (mut pairs, mut maps) = (0, 0);
    while pairs < 600 {
        let n = rng.gen_range(1..=4);
        let q = random_line(&mut rng, n);
        let oracle = TypeAOracle::new(&q, f).map_err(|e| e.to_string())?;
        let ind = oracle.indecomposables();
        let e = &ind[rng.gen_range(0..ind.len())];
        let ff = &ind[rng.gen_range(0..ind.len())];
        if ext1_dim(ff, e) != 0 {
            continue;
        }
        pairs += 1;
        let basis = hom_basis(e, ff);
        if basis.is_empty() {
            continue;
        }
        let mut tests: Vec<_> = basis.clone();
        for _ in 0..3 {
            tests.push(random_combination(&mut rng, f, &basis));
        }
        for g in tests.iter().filter(|g| !g.is_zero()) {
            maps += 1;
            if !g.is_injective() && !g.is_surjective() {
                return Err(format!("map {:?} -> {:?} is neither mono nor epi", e.dims(), ff.dims()));
            }
        }
    }
    Ok(format!("{pairs} pairs, {maps} nonzero maps, 0 violations"))
}

/// The degree-0 hom graph of every rigid object is acyclic.
fn criterion_6() -> Outcome {
    let w = Window::new(-1, 1).unwrap();
    let mut total = 0;
    for n in [2, 3, 4] {
        let (q, f) = linear(n);
        let oracle = TypeAOracle::new(&q, f).map_err(|e| e.to_string())?;
        for t in oracle.enumerate_rigid(w) {
            total += 1;
            if !hom_graph_is_acyclic(&t) || sort_presilting_summands(&t).is_err() {
                return Err(format!("A_{n}: hom graph of {t} has a cycle"));
            }
        }
    }
    Ok(format!("{total} rigid objects sorted"))
}

/// Tilting counts 1, 2, 5 and mutation connectivity on A_3.
fn criterion_7() -> Outcome {
    let mut counts = Vec::new();
    for n in 1..=3 {
        let (q, f) = linear(n);
        counts.push(TypeAOracle::new(&q, f).map_err(|e| e.to_string())?.enumerate_tilting_modules().len());
    }
    if counts != vec![1, 2, 5] {
        return Err(format!("tilting counts {counts:?}"));
    }
    let (q, f) = linear(3);
    let oracle = TypeAOracle::new(&q, f).map_err(|e| e.to_string())?;
    let all = oracle.enumerate_tilting_modules();
    let mut seen: Vec<DObject> = vec![projectives(&q, f)];
    let mut queue: VecDeque<DObject> = seen.iter().cloned().collect();
    while let Some(t) = queue.pop_front() {
        for s in t.summands().to_vec() {
            for mu in [mutate_left(&t, &s), mutate_right(&t, &s)] {
                let r = mu.map_err(|e| e.to_string())?.result;
                if r.is_module() && !seen.iter().any(|x| iso_test(x, &r)) {
                    seen.push(r.clone());
                    queue.push_back(r);
                }
            }
        }
    }
    for m in &all {
        if !seen.iter().any(|x| iso_test(x, &DObject::stalk(m.clone(), 0))) {
            return Err(format!("tilting module {:?} not reached by mutation", m.dims()));
        }
    }
    Ok(format!("counts {counts:?}, {} tilting modules reached", seen.len()))
}

type MapData = Vec<Vec<Vec<i64>>>;

fn build_rep(q: &Arc<Quiver>, dims: &[usize], maps: &MapData, f: Field) -> Representation {
    let maps = maps
        .iter()
        .zip(q.arrows())
        .map(|(m, &(s, t))| {
            if dims[s] == 0 || dims[t] == 0 {
                Matrix::zeros(f, dims[t], dims[s])
            } else {
                Matrix::from_i64(f, m)
            }
        })
        .collect();
    Representation::new(q.clone(), f, dims.to_vec(), maps).unwrap()
}

fn random_data(rng: &mut ChaCha8Rng, q: &Quiver) -> (Vec<usize>, MapData) {
    let dims: Vec<usize> = (0..q.vertex_count()).map(|_| rng.gen_range(0..=2)).collect();
    let maps = q
        .arrows()
        .iter()
        .map(|&(s, t)| {
            (0..dims[t])
                .map(|_| (0..dims[s]).map(|_| rng.gen_range(-1..=1)).collect())
                .collect()
        })
        .collect();
    (dims, maps)
}

/// `dim Hom - dim Ext^1` equals the Euler form, with equal dimensions over F_101 and Q.
fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let fp = Field::Prime(101);
    let fq = Field::Rational;
    let mut pairs = 0;
    while pairs < 1000 {
        let n = rng.gen_range(1..=4);
        let mut arrows = Vec::new();
        for s in 0..n {
            for t in s + 1..n {
                for _ in 0..rng.gen_range(0..=1) {
                    arrows.push((s, t));
                }
            }
        }
        if rng.gen_bool(0.2) && n >= 2 {
            arrows.push((0, n - 1));
        }
        let q = Arc::new(Quiver::new(n, arrows).map_err(|e| e.to_string())?);
        let (dm, em) = random_data(&mut rng, &q);
        let (dn, en) = random_data(&mut rng, &q);
        let mut dims = Vec::new();
        for f in [fp, fq] {
            let m = build_rep(&q, &dm, &em, f);
            let nn = build_rep(&q, &dn, &en, f);
            let h = hom_dim(&m, &nn) as i64;
            let e = ext1_dim(&m, &nn) as i64;
            let chi = q.euler_form(&m.class(), &nn.class());
            if h - e != chi {
                return Err(format!("over {f:?}: hom {h} - ext {e} != euler {chi}"));
            }
            dims.push((h, e));
        }
        if dims[0] != dims[1] {
            return Err(format!("dimensions differ between fields: {dims:?}"));
        }
        pairs += 1;
    }
    Ok(format!("{pairs} pairs over F_101 and Q"))
}

fn main() {
    let criteria: Vec<(&str, fn() -> Outcome)> = vec![
        ("presilting completion on A_2, A_3", criterion_1),
        ("pre-SMC completion and Kronecker loop", criterion_2),
        ("silting lift round trip on A_3", criterion_3),
        ("M + E[1] silting, right mutation tilting", criterion_4),
        ("maps between exceptionals mono or epi", criterion_5),
        ("rigid hom graphs acyclic", criterion_6),
        ("tilting counts and mutation connectivity", criterion_7),
        ("Hom - Ext equals Euler form", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.into_iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panic: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {}: PASS ({name}; {detail}; {secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {}: FAIL ({name}; {detail}; {secs:.1}s)", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
