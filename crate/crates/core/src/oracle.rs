//! Brute-force ground truth for quivers whose underlying graph is a line.
//!
//! Indecomposables are the interval modules. Thick closures are computed on
//! interval indices (closure under shifts is implicit) by repeatedly adding the
//! summands of cones of nonzero maps `I_a -> I_b[e]`, `e ∈ {0, 1}`. Hom spaces
//! between intervals are at most one-dimensional, so one cone per pair suffices.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::Serialize;

use crate::derived::{cone, dhom_basis, DObject, Stalk};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use crate::rep::{ext1_dim, hom_dim, EndRing, Representation};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Window {
    pub min_shift: i32,
    pub max_shift: i32,
}

impl Default for Window {
    fn default() -> Self {
        Window {
            min_shift: -2,
            max_shift: 2,
        }
    }
}

impl Window {
    pub fn new(min_shift: i32, max_shift: i32) -> Result<Self> {
        if min_shift > max_shift {
            return Err(Error::PreconditionFailed(format!(
                "window [{min_shift}, {max_shift}] is empty"
            )));
        }
        Ok(Window {
            min_shift,
            max_shift,
        })
    }

    pub fn padded(&self, k: i32) -> Window {
        Window {
            min_shift: self.min_shift - k,
            max_shift: self.max_shift + k,
        }
    }

    pub fn contains(&self, shift: i32) -> bool {
        (self.min_shift..=self.max_shift).contains(&shift)
    }

    pub fn shifts(&self) -> impl Iterator<Item = i32> {
        self.min_shift..=self.max_shift
    }
}

/// Vertices in line order, or `NotTypeA`.
pub fn type_a_line(q: &Quiver) -> Result<Vec<usize>> {
    let n = q.vertex_count();
    let not = || Error::NotTypeA(format!("{q}"));
    if n == 0 || q.arrow_count() + 1 != n {
        return Err(not());
    }
    let mut adj = vec![Vec::new(); n];
    for &(s, t) in q.arrows() {
        if adj[s].contains(&t) {
            return Err(not());
        }
        adj[s].push(t);
        adj[t].push(s);
    }
    if adj.iter().any(|a| a.len() > 2) {
        return Err(not());
    }
    let start = (0..n).find(|&v| adj[v].len() <= 1).ok_or_else(not)?;
    let mut line = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = adj[cur].iter().find(|&&w| w != prev) {
        line.push(next);
        prev = cur;
        cur = next;
    }
    if line.len() != n {
        return Err(not());
    }
    Ok(line)
}

/// All interval modules, confirmed indecomposable.
pub fn enumerate_indecomposables(q: &Arc<Quiver>, f: Field) -> Result<Vec<Representation>> {
    let line = type_a_line(q)?;
    let n = line.len();
    let mut out = Vec::with_capacity(n * (n + 1) / 2);
    for len in 1..=n {
        for i in 0..=(n - len) {
            let mut dims = vec![0; n];
            for &v in &line[i..i + len] {
                dims[v] = 1;
            }
            let maps = q
                .arrows()
                .iter()
                .map(|&(s, t)| {
                    if dims[s] == 1 && dims[t] == 1 {
                        Matrix::identity(f, 1)
                    } else {
                        Matrix::zeros(f, dims[t], dims[s])
                    }
                })
                .collect();
            let rep = Representation::new(q.clone(), f, dims, maps)?;
            if EndRing::new(&rep).dim() != 1 {
                return Err(Error::Internal(format!("interval {rep:?} is not a brick")));
            }
            out.push(rep);
        }
    }
    Ok(out)
}

/// Stalk encoded as (interval index, shift).
pub type StalkId = (usize, i32);

pub struct TypeAOracle {
    quiver: Arc<Quiver>,
    field: Field,
    intervals: Vec<Representation>,
    hom: Vec<Vec<usize>>,
    ext: Vec<Vec<usize>>,
    /// `cones[a][b][e]`: interval indices of the cone of a nonzero map `I_a -> I_b[e]`.
    cones: Vec<Vec<[Vec<usize>; 2]>>,
}

impl TypeAOracle {
    pub fn new(q: &Arc<Quiver>, f: Field) -> Result<Self> {
        let intervals = enumerate_indecomposables(q, f)?;
        let k = intervals.len();
        let hom: Vec<Vec<usize>> = intervals
            .iter()
            .map(|a| intervals.iter().map(|b| hom_dim(a, b)).collect())
            .collect();
        let ext: Vec<Vec<usize>> = intervals
            .iter()
            .map(|a| intervals.iter().map(|b| ext1_dim(a, b)).collect())
            .collect();
        let mut oracle = TypeAOracle {
            quiver: q.clone(),
            field: f,
            intervals,
            hom,
            ext,
            cones: Vec::new(),
        };
        let mut cones = vec![vec![[Vec::new(), Vec::new()]; k]; k];
        for a in 0..k {
            for b in 0..k {
                for e in 0..2 {
                    let d = if e == 0 { oracle.hom[a][b] } else { oracle.ext[a][b] };
                    if d == 0 {
                        continue;
                    }
                    let src = DObject::stalk(oracle.intervals[a].clone(), 0);
                    let tgt = DObject::stalk(oracle.intervals[b].clone(), 0);
                    let basis = dhom_basis(&src, &tgt, e as i32);
                    let c = cone(&basis[0]);
                    let mut ids = Vec::new();
                    for s in c.summands() {
                        ids.push(oracle.index_of(&s.rep).ok_or_else(|| {
                            Error::Internal("cone summand is not an interval".into())
                        })?);
                    }
                    cones[a][b][e] = ids;
                }
            }
        }
        oracle.cones = cones;
        Ok(oracle)
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn indecomposables(&self) -> &[Representation] {
        &self.intervals
    }

    /// Interval index of an indecomposable, matched by dimension vector.
    pub fn index_of(&self, rep: &Representation) -> Option<usize> {
        self.intervals.iter().position(|i| i.dims() == rep.dims())
    }

    pub fn stalk_id(&self, s: &Stalk) -> Result<StalkId> {
        self.index_of(&s.rep)
            .map(|i| (i, s.shift))
            .ok_or_else(|| Error::PreconditionFailed(format!("{s} is not indecomposable")))
    }

    pub fn stalk(&self, id: StalkId) -> Stalk {
        Stalk::new(self.intervals[id.0].clone(), id.1)
    }

    pub fn object(&self, ids: &[StalkId]) -> DObject {
        DObject::from_indecomposables(
            self.quiver.clone(),
            self.field,
            ids.iter().map(|&id| self.stalk(id)).collect(),
        )
    }

    pub fn stalk_ids(&self, w: Window) -> Vec<StalkId> {
        w.shifts()
            .flat_map(|s| (0..self.intervals.len()).map(move |i| (i, s)))
            .collect()
    }

    /// `dim Hom(x, y[m])`.
    pub fn dhom(&self, x: StalkId, y: StalkId, m: i32) -> usize {
        match y.1 + m - x.1 {
            0 => self.hom[x.0][y.0],
            1 => self.ext[x.0][y.0],
            _ => 0,
        }
    }

    /// Interval indices of `thick(gens)`.
    pub fn closure(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = gens.iter().copied().collect();
        loop {
            let mut added = Vec::new();
            for &a in &set {
                for &b in &set {
                    for e in 0..2 {
                        for &c in &self.cones[a][b][e] {
                            if !set.contains(&c) && !added.contains(&c) {
                                added.push(c);
                            }
                        }
                    }
                }
            }
            if added.is_empty() {
                return set;
            }
            set.extend(added);
        }
    }

    pub fn generates(&self, ids: &[StalkId]) -> bool {
        let gens: Vec<usize> = ids.iter().map(|id| id.0).collect();
        self.closure(&gens).len() == self.intervals.len()
    }

    /// Whether every summand of `target` lies in `thick(generators)`. Generator
    /// and target shifts must lie in `w`; the closure itself is shift-invariant.
    pub fn thick_closure_contains(&self, generators: &[DObject], target: &DObject, w: Window) -> Result<bool> {
        let mut gens = Vec::new();
        for g in generators {
            for s in g.summands() {
                if !w.contains(s.shift) {
                    return Err(Error::PreconditionFailed(format!("{s} lies outside the window")));
                }
                gens.push(self.stalk_id(s)?.0);
            }
        }
        let closure = self.closure(&gens);
        for s in target.summands() {
            if !w.contains(s.shift) {
                return Err(Error::PreconditionFailed(format!("{s} lies outside the window")));
            }
            if !closure.contains(&self.stalk_id(s)?.0) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// All sets of pairwise compatible candidates of size at most `max`.
    fn cliques(
        &self,
        cands: &[StalkId],
        max: usize,
        ok: &dyn Fn(StalkId, StalkId) -> bool,
    ) -> Vec<Vec<StalkId>> {
        fn go(
            cands: &[StalkId],
            start: usize,
            cur: &mut Vec<StalkId>,
            max: usize,
            ok: &dyn Fn(StalkId, StalkId) -> bool,
            out: &mut Vec<Vec<StalkId>>,
        ) {
            if !cur.is_empty() {
                out.push(cur.clone());
            }
            if cur.len() == max {
                return;
            }
            for i in start..cands.len() {
                let c = cands[i];
                if cur.iter().all(|&x| ok(x, c) && ok(c, x)) {
                    cur.push(c);
                    go(cands, i + 1, cur, max, ok, out);
                    cur.pop();
                }
            }
        }
        let singles: Vec<StalkId> = cands.iter().copied().filter(|&c| ok(c, c)).collect();
        let mut out = Vec::new();
        go(&singles, 0, &mut Vec::new(), max, ok, &mut out);
        out
    }

    fn presilting_pair(&self, x: StalkId, y: StalkId) -> bool {
        (0..2).all(|e| {
            let m = x.1 - y.1 + e;
            m <= 0 || self.dhom(x, y, m) == 0
        })
    }

    fn pre_smc_pair(&self, x: StalkId, y: StalkId) -> bool {
        (0..2).all(|e| {
            let m = x.1 - y.1 + e;
            let forbidden = m < 0 || (m == 0 && x != y);
            !forbidden || self.dhom(x, y, m) == 0
        })
    }

    fn in_perpendicular(&self, e: usize, x: StalkId) -> bool {
        self.hom[e][x.0] == 0 && self.ext[e][x.0] == 0
    }

    fn n(&self) -> usize {
        self.quiver.vertex_count()
    }

    fn to_objects(&self, sets: Vec<Vec<StalkId>>) -> Vec<DObject> {
        sets.iter().map(|s| self.object(s)).collect()
    }

    /// Every basic presilting object with shifts in `w`.
    pub fn enumerate_presilting(&self, w: Window) -> Vec<DObject> {
        let sets = self.cliques(&self.stalk_ids(w), self.n(), &|x, y| self.presilting_pair(x, y));
        self.to_objects(sets)
    }

    /// Every basic object with shifts in `w` and `Hom(T, T[1]) = 0`.
    pub fn enumerate_rigid(&self, w: Window) -> Vec<DObject> {
        let sets = self.cliques(&self.stalk_ids(w), self.n(), &|x, y| self.dhom(x, y, 1) == 0);
        self.to_objects(sets)
    }

    /// Silting objects with shifts in `w`: presilting and thick-generating.
    pub fn enumerate_silting(&self, w: Window) -> Vec<DObject> {
        let sets = self.cliques(&self.stalk_ids(w), self.n(), &|x, y| self.presilting_pair(x, y));
        let sets = sets.into_iter().filter(|s| self.generates(s)).collect();
        self.to_objects(sets)
    }

    /// Silting objects of `thick(E)^⊥` with shifts in `w`.
    pub fn enumerate_silting_in_perpendicular(&self, e: &Representation, w: Window) -> Result<Vec<DObject>> {
        let ei = self.index_of(e).ok_or_else(|| Error::NotExceptional(format!("{e:?}")))?;
        let cands: Vec<StalkId> = self
            .stalk_ids(w)
            .into_iter()
            .filter(|&x| self.in_perpendicular(ei, x))
            .collect();
        let sets = self.cliques(&cands, self.n() - 1, &|x, y| self.presilting_pair(x, y));
        let sets = sets
            .into_iter()
            .filter(|s| {
                let mut all = s.clone();
                all.push((ei, 0));
                self.generates(&all)
            })
            .collect();
        Ok(self.to_objects(sets))
    }

    /// Tilting modules of `E^⊥` (all of mod kQ when `e` is `None`).
    fn tilting_modules(&self, e: Option<usize>) -> Vec<Representation> {
        let cands: Vec<StalkId> = (0..self.intervals.len())
            .map(|i| (i, 0))
            .filter(|&x| e.is_none_or(|ei| self.in_perpendicular(ei, x)))
            .collect();
        let want = self.n() - usize::from(e.is_some());
        let sets = self.cliques(&cands, want, &|x, y| self.ext[x.0][y.0] == 0);
        sets.into_iter()
            .filter(|s| s.len() == want)
            .map(|s| {
                let parts: Vec<&Representation> = s.iter().map(|id| &self.intervals[id.0]).collect();
                Representation::direct_sum(self.quiver.clone(), self.field, &parts)
            })
            .collect()
    }

    pub fn enumerate_tilting_modules(&self) -> Vec<Representation> {
        self.tilting_modules(None)
    }

    pub fn enumerate_tilting_in_perpendicular(&self, e: &Representation) -> Result<Vec<Representation>> {
        let ei = self.index_of(e).ok_or_else(|| Error::NotExceptional(format!("{e:?}")))?;
        Ok(self.tilting_modules(Some(ei)))
    }

    /// Every pre-simple-minded collection with shifts in `w`.
    pub fn enumerate_pre_smc(&self, w: Window) -> Vec<Vec<Stalk>> {
        self.cliques(&self.stalk_ids(w), self.n(), &|x, y| self.pre_smc_pair(x, y))
            .into_iter()
            .map(|s| s.into_iter().map(|id| self.stalk(id)).collect())
            .collect()
    }

    /// Simple-minded collections with shifts in `w`.
    pub fn enumerate_smc(&self, w: Window) -> Vec<Vec<Stalk>> {
        self.cliques(&self.stalk_ids(w), self.n(), &|x, y| self.pre_smc_pair(x, y))
            .into_iter()
            .filter(|s| s.len() == self.n() && self.generates(s))
            .map(|s| s.into_iter().map(|id| self.stalk(id)).collect())
            .collect()
    }

    /// Whether the collection of stalks thick-generates the whole category.
    pub fn collection_generates(&self, xs: &[Stalk]) -> Result<bool> {
        let ids: Vec<StalkId> = xs.iter().map(|s| self.stalk_id(s)).collect::<Result<_>>()?;
        Ok(self.generates(&ids))
    }
}

pub fn thick_closure_contains(generators: &[DObject], target: &DObject, w: Window) -> Result<bool> {
    let oracle = TypeAOracle::new(target.quiver(), target.field())?;
    oracle.thick_closure_contains(generators, target, w)
}

pub fn enumerate_silting(q: &Arc<Quiver>, f: Field, w: Window) -> Result<Vec<DObject>> {
    Ok(TypeAOracle::new(q, f)?.enumerate_silting(w))
}

pub fn enumerate_tilting_modules(q: &Arc<Quiver>, f: Field) -> Result<Vec<Representation>> {
    Ok(TypeAOracle::new(q, f)?.enumerate_tilting_modules())
}

pub fn enumerate_smc(q: &Arc<Quiver>, f: Field, w: Window) -> Result<Vec<Vec<Stalk>>> {
    Ok(TypeAOracle::new(q, f)?.enumerate_smc(w))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn oracle(n: usize) -> TypeAOracle {
        TypeAOracle::new(&Arc::new(Quiver::linear_a(n)), Field::default()).unwrap()
    }

    #[test]
    fn interval_counts() {
        for n in 1..=4 {
            assert_eq!(oracle(n).indecomposables().len(), n * (n + 1) / 2);
        }
        let k = Arc::new(Quiver::kronecker());
        assert!(matches!(
            enumerate_indecomposables(&k, Field::default()),
            Err(Error::NotTypeA(_))
        ));
        let mixed = Arc::new(Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap());
        assert_eq!(enumerate_indecomposables(&mixed, Field::default()).unwrap().len(), 6);
    }

    #[test]
    fn closure_examples() {
        let o = oracle(2);
        let q = o.quiver().clone();
        let f = o.field();
        let p1 = DObject::stalk(Representation::projective(q.clone(), f, 0), 0);
        let p2 = DObject::stalk(Representation::projective(q.clone(), f, 1), 0);
        let s1 = DObject::stalk(Representation::simple(q.clone(), f, 0), 1);
        let w = Window::default();
        assert!(o.thick_closure_contains(&[p1.clone(), p2.clone()], &s1, w).unwrap());
        assert!(!o.thick_closure_contains(&[p2.clone()], &s1, w).unwrap());
        assert!(o.thick_closure_contains(&[p2.clone()], &p2, w).unwrap());
        assert!(o.thick_closure_contains(&[p2.clone()], &p2.shift(4), w).is_err());
    }

    #[test]
    fn tilting_counts() {
        let counts: Vec<usize> = (1..=3).map(|n| oracle(n).enumerate_tilting_modules().len()).collect();
        assert_eq!(counts, vec![1, 2, 5]);
    }

    #[test]
    fn smc_of_a1_are_shifted_simples() {
        let o = oracle(1);
        let w = Window::new(-1, 2).unwrap();
        let smcs = o.enumerate_smc(w);
        assert_eq!(smcs.len(), 4);
        assert!(smcs.iter().all(|c| c.len() == 1));
    }

    #[test]
    fn silting_counts_agree_with_opposite() {
        let w = Window::new(-1, 1).unwrap();
        for n in 2..=3 {
            let q = Quiver::linear_a(n);
            let a = TypeAOracle::new(&Arc::new(q.clone()), Field::default()).unwrap();
            let b = TypeAOracle::new(&Arc::new(q.opposite()), Field::default()).unwrap();
            assert_eq!(a.enumerate_silting(w).len(), b.enumerate_silting(w).len());
        }
    }
}
