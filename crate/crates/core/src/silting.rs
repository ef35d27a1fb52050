//! Presilting and silting objects: detection, mutation, reduction and its
//! inverse, completion of presilting objects, and passage to tilting modules.

use std::sync::Arc;

use crate::derived::{
    check_exceptional, cone, dhom_dim, fully_orthogonal, minimal_left_approximation,
    minimal_right_approximation, project_to_perpendicular, DMorphism, DObject, Stalk,
};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::quiver::{class_basis_determinant, Quiver};
use crate::rep::{
    decompose, decompose_grouped, ext1_basis, ext1_dim, extension_middle_term, hom_dim,
    indecomposables_isomorphic, ExtClass, Representation,
};

/// The first `(degree, dimension)` with `Hom(T, T[degree]) != 0`, `degree > 0`.
/// Degrees beyond the shift span plus one vanish for hereditary algebras.
pub fn presilting_violation(t: &DObject) -> Option<(i32, usize)> {
    let (lo, hi) = t.shift_range()?;
    (1..=(hi - lo + 1)).find_map(|d| {
        let dim = dhom_dim(t, t, d);
        (dim > 0).then_some((d, dim))
    })
}

pub fn is_presilting(t: &DObject) -> bool {
    presilting_violation(t).is_none()
}

/// Presilting with `n` pairwise non-isomorphic summands.
pub fn is_silting(t: &DObject) -> bool {
    is_presilting(t) && t.basic().len() == t.quiver().vertex_count()
}

/// Whether `Hom(T, T[i]) = 0` for all `i != 0` and `T` is silting.
pub fn is_tilting_object(t: &DObject) -> bool {
    if !is_silting(t) {
        return false;
    }
    match t.shift_range() {
        None => true,
        Some((lo, hi)) => (1..=(hi - lo + 1)).all(|d| dhom_dim(t, t, -d) == 0),
    }
}

/// `Ext^1(M, M) = 0` and `M` has `n` isomorphism classes of summands.
pub fn is_tilting_module(m: &Representation) -> bool {
    ext1_dim(m, m) == 0 && decompose_grouped(m).len() == m.quiver().vertex_count()
}

/// Determinant of the summand classes; `±1` for silting objects.
pub fn class_determinant(t: &DObject) -> i128 {
    let classes: Vec<_> = t.summands().iter().map(Stalk::class).collect();
    if classes.len() != t.quiver().vertex_count() {
        return 0;
    }
    class_basis_determinant(&classes)
}

/// Outcome of a mutation: `removed` is exchanged for `new_summand` along the
/// triangle built from `approx`.
#[derive(Clone, Debug)]
pub struct Mutation {
    pub result: DObject,
    pub removed: Stalk,
    pub new_summand: DObject,
    pub approx: DMorphism,
}

fn mutation_setup(t: &DObject, m: &Stalk) -> Result<(DObject, Stalk)> {
    if !is_silting(t) {
        return Err(Error::NotSilting(format!("{t}")));
    }
    let t = t.basic();
    let idx = t
        .find_summand(m)
        .ok_or_else(|| Error::NotASummand(format!("{m} in {t}")))?;
    Ok((t.without(idx), t.summands()[idx].clone()))
}

/// `M -> T' -> N -> M[1]` with `M -> T'` a minimal left `add(T/M)`-approximation.
pub fn mutate_left(t: &DObject, m: &Stalk) -> Result<Mutation> {
    let (rest, removed) = mutation_setup(t, m)?;
    let approx = minimal_left_approximation(rest.summands(), &DObject::from_stalk(removed.clone()));
    let new_summand = cone(&approx);
    Ok(Mutation {
        result: rest.direct_sum(&new_summand).basic(),
        removed,
        new_summand,
        approx,
    })
}

/// `N -> T' -> M -> N[1]` with `T' -> M` a minimal right `add(T/M)`-approximation.
pub fn mutate_right(t: &DObject, m: &Stalk) -> Result<Mutation> {
    let (rest, removed) = mutation_setup(t, m)?;
    let approx = minimal_right_approximation(rest.summands(), &DObject::from_stalk(removed.clone()));
    let new_summand = cone(&approx).shift(-1);
    Ok(Mutation {
        result: rest.direct_sum(&new_summand).basic(),
        removed,
        new_summand,
        approx,
    })
}

/// A module `N` with `M ⊕ N` tilting, from the universal extension
/// `0 -> kQ -> E -> M^d -> 0`; `N` collects the summands of `E` outside `add M`.
pub fn bongartz_complete(m: &Representation) -> Result<Representation> {
    if ext1_dim(m, m) != 0 {
        return Err(Error::NotRigid("Ext^1(M, M) is nonzero".into()));
    }
    let q = m.quiver().clone();
    let f = m.field();
    // add M = add basic(M), and the extension is much smaller for the basic module.
    let own: Vec<Representation> = decompose_grouped(m).into_iter().map(|(r, _)| r).collect();
    let own_refs: Vec<&Representation> = own.iter().collect();
    let basic = Representation::direct_sum(q.clone(), f, &own_refs);
    let m = &basic;
    if own.len() == q.vertex_count() {
        return Ok(Representation::zero(q, f));
    }
    let kq = regular_module(&q, f);
    let classes = ext1_basis(m, &kq);
    let middle = if classes.is_empty() {
        kq.clone()
    } else {
        let copies: Vec<&Representation> = classes.iter().map(|_| m).collect();
        let md = Representation::direct_sum(q.clone(), f, &copies);
        // Class of M^d whose restriction to the i-th copy is the i-th basis class.
        let cocycle = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(x, y))| {
                let mut blk = crate::linalg::Matrix::zeros(f, kq.dim(y), md.dim(x));
                for (i, c) in classes.iter().enumerate() {
                    blk.set_block(0, i * m.dim(x), &c.cocycle()[a]);
                }
                blk
            })
            .collect();
        extension_middle_term(&md, &kq, &ExtClass::new(cocycle)).0
    };
    let mut extra: Vec<Representation> = Vec::new();
    for e in decompose(&middle) {
        let known = own.iter().chain(extra.iter()).any(|o| indecomposables_isomorphic(o, &e));
        if !known {
            extra.push(e);
        }
    }
    let refs: Vec<&Representation> = extra.iter().collect();
    Ok(Representation::direct_sum(q, f, &refs))
}

pub fn regular_module(q: &Arc<Quiver>, f: Field) -> Representation {
    let ps: Vec<Representation> = (0..q.vertex_count())
        .map(|x| Representation::projective(q.clone(), f, x))
        .collect();
    let refs: Vec<&Representation> = ps.iter().collect();
    Representation::direct_sum(q.clone(), f, &refs)
}

/// `⊕ P_i` as a derived object.
pub fn projective_silting(q: &Arc<Quiver>, f: Field) -> DObject {
    let stalks = (0..q.vertex_count())
        .map(|x| Stalk::new(Representation::projective(q.clone(), f, x), 0))
        .collect();
    DObject::from_indecomposables(q.clone(), f, stalks)
}

/// Orders summands by shift and, within a shift, so that `Hom(T_i, T_j) = 0`
/// whenever `i > j`. Ties in the topological sort go to the earliest summand.
pub fn sort_presilting_summands(t: &DObject) -> Result<Vec<Stalk>> {
    let s = t.summands();
    let k = s.len();
    let mut edge = vec![vec![false; k]; k];
    for i in 0..k {
        for j in 0..k {
            if i != j && s[i].shift == s[j].shift && hom_dim(&s[i].rep, &s[j].rep) > 0 {
                edge[i][j] = true;
            }
        }
    }
    let mut indeg: Vec<usize> = (0..k).map(|j| (0..k).filter(|&i| edge[i][j]).count()).collect();
    let mut done = vec![false; k];
    let mut order = Vec::with_capacity(k);
    while order.len() < k {
        let next = (0..k)
            .filter(|&i| !done[i] && indeg[i] == 0)
            .min_by_key(|&i| (s[i].shift, i))
            .ok_or_else(|| Error::Internal("degree-0 hom graph has a cycle".into()))?;
        done[next] = true;
        order.push(s[next].clone());
        for j in 0..k {
            if edge[next][j] {
                indeg[j] -= 1;
            }
        }
    }
    Ok(order)
}

/// Whether the degree-0 hom graph on the summands (edges for nonzero homs
/// between non-isomorphic summands) is acyclic.
pub fn hom_graph_is_acyclic(t: &DObject) -> bool {
    sort_presilting_summands(&t.basic()).is_ok()
}

#[derive(Clone, Debug)]
pub struct Lift {
    pub result: DObject,
    /// Minimal left approximation `N -> S_N[1]`.
    pub approx: DMorphism,
    /// `T_N` with `T_N -> N -> S_N[1]` part of a triangle.
    pub lifted: DObject,
}

/// Inverse of silting reduction at `D = E[d]`: from `N` in `thick(E)^⊥`
/// builds `T_N` via a minimal left `add{E[d+i] : i ≥ 1}`-approximation and
/// returns `T_N ⊕ D`.
pub fn lift_silting(d: &Stalk, n: &DObject) -> Result<Lift> {
    check_exceptional(d)?;
    let dobj = DObject::from_stalk(d.clone());
    if !fully_orthogonal(&dobj, n) {
        return Err(Error::PreconditionFailed(format!(
            "{n} is not in the right perpendicular category of thick({d})"
        )));
    }
    let mut targets: Vec<Stalk> = Vec::new();
    for s in n.summands() {
        for i in [s.shift - d.shift, s.shift + 1 - d.shift] {
            if i >= 1 && !targets.iter().any(|t| t.shift == d.shift + i) {
                targets.push(d.shifted(i));
            }
        }
    }
    let approx = minimal_left_approximation(&targets, n);
    let lifted = cone(&approx).shift(-1);
    Ok(Lift {
        result: lifted.direct_sum(&dobj).basic(),
        approx,
        lifted,
    })
}

fn normalized(e: &Stalk) -> Stalk {
    Stalk::new(e.rep.clone(), 0)
}

/// Basic projective generator of the module category `thick(ctx)^⊥ ∩ mod kQ`,
/// obtained by projecting the indecomposable projectives.
pub fn perpendicular_projective_generator(
    q: &Arc<Quiver>,
    f: Field,
    ctx: &[Stalk],
) -> Result<DObject> {
    let mut acc = DObject::zero(q.clone(), f);
    for x in 0..q.vertex_count() {
        let p = DObject::from_stalk(Stalk::new(Representation::projective(q.clone(), f, x), 0));
        let z = project_to_perpendicular(ctx, &p)?;
        acc = acc.direct_sum(&z);
    }
    let gen = acc.basic();
    if !gen.is_module() {
        return Err(Error::Internal(format!(
            "projected projectives are not modules: {gen}"
        )));
    }
    if gen.len() + ctx.len() != q.vertex_count() {
        return Err(Error::Internal(format!(
            "perpendicular generator has {} summands, expected {}",
            gen.len(),
            q.vertex_count() - ctx.len()
        )));
    }
    Ok(gen)
}

fn complete_within(ctx: &[Stalk], t: &DObject) -> Result<DObject> {
    let q = t.quiver().clone();
    let f = t.field();
    if t.is_empty() {
        return perpendicular_projective_generator(&q, f, ctx);
    }
    let order = sort_presilting_summands(t)?;
    let (last, rest) = order.split_last().expect("nonempty");
    let e = normalized(last);
    check_exceptional(&e)?;
    let rest = DObject::from_indecomposables(q, f, rest.to_vec());
    let mut inner_ctx = ctx.to_vec();
    inner_ctx.push(e);
    let inner = complete_within(&inner_ctx, &rest)?;
    Ok(lift_silting(last, &inner)?.result)
}

/// A basic silting object containing every summand of the presilting `t`.
pub fn complete_presilting(t: &DObject) -> Result<DObject> {
    if let Some((d, dim)) = presilting_violation(t) {
        return Err(Error::NotPresilting(format!(
            "Hom(T, T[{d}]) has dimension {dim}"
        )));
    }
    let t = t.basic();
    let out = complete_within(&[], &t)?;
    if !is_silting(&out) {
        return Err(Error::Internal(format!("completion {out} is not silting")));
    }
    if let Some(s) = t.summands().iter().find(|s| out.find_summand(s).is_none()) {
        return Err(Error::Internal(format!("completion lost the summand {s}")));
    }
    Ok(out)
}

fn tilting_within(ctx: &[Stalk], t: &DObject) -> Result<DObject> {
    let q = t.quiver().clone();
    let f = t.field();
    if t.is_empty() {
        return Ok(DObject::zero(q, f));
    }
    let order = sort_presilting_summands(t)?;
    let top = order.last().expect("nonempty").shift;
    let t = t.shift(-top);
    let order: Vec<Stalk> = order.into_iter().map(|s| s.shifted(-top)).collect();
    let (e, rest) = order.split_last().expect("nonempty");
    check_exceptional(e)?;
    let mut inner_ctx = ctx.to_vec();
    inner_ctx.push(e.clone());
    let mut reduced = DObject::zero(q.clone(), f);
    for s in rest {
        let z = project_to_perpendicular(&inner_ctx, &DObject::from_stalk(s.clone()))?;
        reduced = reduced.direct_sum(&z);
    }
    let reduced = reduced.basic();
    debug_assert!(t.find_summand(e).is_some());
    let m = tilting_within(&inner_ctx, &reduced)?;
    let shifted_e = e.shifted(1);
    let approx = minimal_right_approximation(m.summands(), &DObject::from_stalk(shifted_e));
    let n = cone(&approx).shift(-1);
    let out = m.direct_sum(&n).basic();
    if !out.is_module() {
        return Err(Error::Internal(format!(
            "right mutation at E[1] left the module category: {out}"
        )));
    }
    Ok(out)
}

/// A tilting module obtained from a silting object by reduction at one
/// summand, recursion, and one right mutation.
pub fn silting_to_tilting(t: &DObject) -> Result<Representation> {
    if !is_silting(t) {
        return Err(Error::NotSilting(format!("{t}")));
    }
    let out = tilting_within(&[], &t.basic())?;
    let reps: Vec<&Representation> = out.summands().iter().map(|s| &s.rep).collect();
    let m = Representation::direct_sum(t.quiver().clone(), t.field(), &reps);
    if !is_tilting_module(&m) {
        return Err(Error::Internal(format!("result {out} is not a tilting module")));
    }
    Ok(m)
}
