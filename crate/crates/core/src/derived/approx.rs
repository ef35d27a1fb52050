//! Minimal approximations by finitely many indecomposable stalks, and
//! projection onto right perpendicular categories of exceptional objects.

use crate::error::{Error, Result};
use crate::linalg::Span;
use crate::rep::{ext1_dim, EndRing};

use super::{cone, dhom_basis, dhom_dim, fully_orthogonal, Component, DMorphism, DObject, Stalk};

fn dedup(stalks: &[Stalk]) -> Vec<Stalk> {
    let mut out: Vec<Stalk> = Vec::new();
    for s in stalks {
        if !out.iter().any(|t| t.is_isomorphic(s)) {
            out.push(s.clone());
        }
    }
    out
}

/// Radical morphisms `S_s -> S_t` between members of a list of pairwise
/// non-isomorphic indecomposables: everything when `s != t`, `J(End S_s)` when `s = t`.
fn radical_maps(objs: &[DObject], s: usize, t: usize) -> Vec<DMorphism> {
    if s != t {
        return dhom_basis(&objs[s], &objs[t], 0);
    }
    let ring = EndRing::new(&objs[s].summands()[0].rep);
    ring.radical_morphisms()
        .unwrap_or_default()
        .into_iter()
        .map(|r| {
            let mut m = DMorphism::zero(&objs[s], &objs[s]);
            m.set_component(0, 0, Component::Hom(r));
            m
        })
        .collect()
}

fn sorted_picks(picks: Vec<(usize, DMorphism)>, stalks: &[Stalk]) -> Vec<(usize, DMorphism)> {
    let mut picks = picks;
    picks.sort_by_key(|(s, _)| stalks[*s].sort_key());
    picks
}

/// Minimal right approximation `f: X' -> target` with `X'` a direct sum of
/// copies of the given stalks.
pub fn minimal_right_approximation(sources: &[Stalk], target: &DObject) -> DMorphism {
    let q = target.quiver().clone();
    let field = target.field();
    let stalks = dedup(sources);
    let objs: Vec<DObject> = stalks.iter().cloned().map(DObject::from_stalk).collect();
    let homs: Vec<Vec<DMorphism>> = objs.iter().map(|o| dhom_basis(o, target, 0)).collect();
    let mut picks: Vec<(usize, DMorphism)> = Vec::new();
    for s in 0..objs.len() {
        if homs[s].is_empty() {
            continue;
        }
        let dim = homs[s][0].coordinates().len();
        let mut w = Span::new(field, dim);
        for t in 0..objs.len() {
            if homs[t].is_empty() {
                continue;
            }
            for h in radical_maps(&objs, s, t) {
                for g in &homs[t] {
                    w.insert(&g.after(&h).coordinates());
                }
            }
        }
        let ends = dhom_basis(&objs[s], &objs[s], 0);
        for g in &homs[s] {
            if w.contains(&g.coordinates()) {
                continue;
            }
            for d in &ends {
                w.insert(&g.after(d).coordinates());
            }
            picks.push((s, g.clone()));
        }
    }
    let picks = sorted_picks(picks, &stalks);
    let source = DObject::from_indecomposables(
        q,
        field,
        picks.iter().map(|(s, _)| stalks[*s].clone()).collect(),
    );
    let mut f = DMorphism::zero(&source, target);
    for (p, (_, g)) in picks.iter().enumerate() {
        for j in 0..target.len() {
            f.set_component(p, j, g.component(0, j).clone());
        }
    }
    f
}

/// Minimal left approximation `g: source -> X'` with `X'` a direct sum of
/// copies of the given stalks.
pub fn minimal_left_approximation(targets: &[Stalk], source: &DObject) -> DMorphism {
    let q = source.quiver().clone();
    let field = source.field();
    let stalks = dedup(targets);
    let objs: Vec<DObject> = stalks.iter().cloned().map(DObject::from_stalk).collect();
    let homs: Vec<Vec<DMorphism>> = objs.iter().map(|o| dhom_basis(source, o, 0)).collect();
    let mut picks: Vec<(usize, DMorphism)> = Vec::new();
    for s in 0..objs.len() {
        if homs[s].is_empty() {
            continue;
        }
        let dim = homs[s][0].coordinates().len();
        let mut w = Span::new(field, dim);
        for t in 0..objs.len() {
            if homs[t].is_empty() {
                continue;
            }
            for h in radical_maps(&objs, t, s) {
                for g in &homs[t] {
                    w.insert(&h.after(g).coordinates());
                }
            }
        }
        let ends = dhom_basis(&objs[s], &objs[s], 0);
        for g in &homs[s] {
            if w.contains(&g.coordinates()) {
                continue;
            }
            for d in &ends {
                w.insert(&d.after(g).coordinates());
            }
            picks.push((s, g.clone()));
        }
    }
    let picks = sorted_picks(picks, &stalks);
    let target = DObject::from_indecomposables(
        q,
        field,
        picks.iter().map(|(s, _)| stalks[*s].clone()).collect(),
    );
    let mut g = DMorphism::zero(source, &target);
    for (p, (_, h)) in picks.iter().enumerate() {
        for i in 0..source.len() {
            g.set_component(i, p, h.component(i, 0).clone());
        }
    }
    g
}

/// Fails with `NotExceptional` unless `Ext^1(E, E) = 0` and `End(E)` is a division ring.
pub fn check_exceptional(e: &Stalk) -> Result<()> {
    if ext1_dim(&e.rep, &e.rep) != 0 {
        return Err(Error::NotExceptional(format!("{e} has self-extensions")));
    }
    let ring = EndRing::new(&e.rep);
    let division = match ring.radical() {
        Some(r) => r.is_empty() && (ring.dim() == 1 || ring.find_splitting_endomorphism().is_none()),
        None => false,
    };
    if !division {
        return Err(Error::NotExceptional(format!(
            "End({e}) is not a division ring"
        )));
    }
    Ok(())
}

/// Triangle `E_X --approx--> X -> result -> E_X[1]` with `E_X` in `thick(E)`
/// and `result` in `thick(E)^⊥`.
#[derive(Clone, Debug)]
pub struct PerpProjection {
    pub approx: DMorphism,
    pub result: DObject,
}

/// Projection of `x` to `thick(e)^⊥` through a minimal right `thick(e)`-approximation.
pub fn thick_perp_project(e: &Stalk, x: &DObject) -> Result<PerpProjection> {
    check_exceptional(e)?;
    let base = Stalk::new(e.rep.clone(), 0);
    let mut shifts: Vec<i32> = Vec::new();
    for s in x.summands() {
        for j in [s.shift, s.shift - 1] {
            if !shifts.contains(&j) {
                shifts.push(j);
            }
        }
    }
    let sources: Vec<Stalk> = shifts
        .into_iter()
        .map(|j| base.shifted(j))
        .filter(|st| dhom_dim(&DObject::from_stalk(st.clone()), x, 0) > 0)
        .collect();
    let approx = minimal_right_approximation(&sources, x);
    let result = cone(&approx);
    Ok(PerpProjection { approx, result })
}

/// Projection of `x` to `thick(ctx)^⊥` for a list of exceptional stalks.
/// Each object of the list is assumed to lie in the right perpendicular of the
/// earlier ones, so a single ordered pass suffices; further passes are a guard.
pub fn project_to_perpendicular(ctx: &[Stalk], x: &DObject) -> Result<DObject> {
    let mut cur = x.clone();
    for _ in 0..(ctx.len() + 2) {
        if ctx
            .iter()
            .all(|e| fully_orthogonal(&DObject::from_stalk(e.clone()), &cur))
        {
            return Ok(cur);
        }
        for e in ctx {
            cur = thick_perp_project(e, &cur)?.result;
        }
    }
    Err(Error::Internal(
        "perpendicular projection did not stabilize".into(),
    ))
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::derived::iso_test;
    use crate::field::Field;
    use crate::quiver::Quiver;
    use crate::rep::Representation;

    fn setup(n: usize) -> (Arc<Quiver>, Field) {
        (Arc::new(Quiver::linear_a(n)), Field::default())
    }

    #[test]
    fn right_approximation_examples() {
        let (q, f) = setup(2);
        let p1 = Representation::projective(q.clone(), f, 0);
        let p2 = Representation::projective(q.clone(), f, 1);
        let t = DObject::stalk(p1.clone(), 0);
        let a = minimal_right_approximation(&[Stalk::new(p2, 0)], &t);
        assert_eq!(a.source().len(), 1);
        assert!(!a.is_zero());
        let id = minimal_right_approximation(&[Stalk::new(p1.clone(), 0)], &t);
        assert_eq!(id.source().len(), 1);
        let s1 = DObject::stalk(Representation::simple(q, f, 0), 1);
        let z = minimal_right_approximation(&[Stalk::new(p1, 0)], &s1);
        assert!(z.source().is_zero());
    }

    #[test]
    fn approximation_of_sum_has_multiplicity() {
        let (q, f) = setup(2);
        let p1 = Representation::projective(q.clone(), f, 0);
        let p2 = Representation::projective(q.clone(), f, 1);
        let t = DObject::new(q, f, vec![(p1.clone(), 0), (p1, 0)]);
        let a = minimal_right_approximation(&[Stalk::new(p2.clone(), 0)], &t);
        assert_eq!(a.source().len(), 2);
        // P_1 itself is also a source: P_2 maps factor through it, so only P_1 copies.
        let b = minimal_right_approximation(
            &[Stalk::new(p2, 0), Stalk::new(t.summands()[0].rep.clone(), 0)],
            &t,
        );
        assert_eq!(b.source().len(), 2);
        assert!(b.source().summands().iter().all(|s| s.rep.dims() == [1, 1]));
    }

    #[test]
    fn left_approximation_examples() {
        let (q, f) = setup(2);
        let p1 = Representation::projective(q.clone(), f, 0);
        let p2 = Representation::projective(q.clone(), f, 1);
        let a = minimal_left_approximation(&[Stalk::new(p1.clone(), 0)], &DObject::stalk(p2.clone(), 0));
        assert_eq!(a.target().len(), 1);
        let z = minimal_left_approximation(&[Stalk::new(p2, 0)], &DObject::stalk(p1, 0));
        assert!(z.target().is_zero());
    }

    #[test]
    fn perpendicular_projection_examples() {
        let (q, f) = setup(2);
        let p1 = Representation::projective(q.clone(), f, 0);
        let p2 = Stalk::new(Representation::projective(q.clone(), f, 1), 0);
        let z = thick_perp_project(&p2, &DObject::stalk(p1, 0)).unwrap().result;
        assert!(iso_test(&z, &DObject::stalk(Representation::simple(q.clone(), f, 0), 0)));
        let self_proj = thick_perp_project(&p2, &DObject::from_stalk(p2.shifted(3))).unwrap();
        assert!(self_proj.result.is_zero());
        let bad = Stalk::new(
            Representation::direct_sum(
                q.clone(),
                f,
                &[&Representation::simple(q.clone(), f, 0), &Representation::simple(q.clone(), f, 0)],
            ),
            0,
        );
        assert!(thick_perp_project(&bad, &DObject::zero(q, f)).is_err());
    }

    #[test]
    fn projection_is_idempotent_on_a3() {
        let (q, f) = setup(3);
        let e = Stalk::new(Representation::simple(q.clone(), f, 1), 0);
        for x in 0..3 {
            let obj = DObject::new(
                q.clone(),
                f,
                vec![
                    (Representation::projective(q.clone(), f, x), 0),
                    (Representation::injective(q.clone(), f, x), 1),
                ],
            );
            let once = thick_perp_project(&e, &obj).unwrap().result;
            let twice = thick_perp_project(&e, &once).unwrap().result;
            assert!(iso_test(&once, &twice));
            assert!(fully_orthogonal(&DObject::from_stalk(e.clone()), &once));
        }
    }
}
