//! Krull-Schmidt decomposition by Fitting splitting.
//!
//! For an endomorphism `φ` of `M` with `N = dim M`, `M = ker φ^N ⊕ im φ^N`.
//! A proper splitting exists exactly when some endomorphism is neither
//! nilpotent nor invertible, i.e. when `End(M)` is not local.

use std::sync::atomic::{AtomicU64, Ordering};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Span, Vector};

use super::{hom_basis, RepMorphism, Representation};

static FALLBACK_SEED: AtomicU64 = AtomicU64::new(0x5eed);

/// Seed for the random endomorphisms tried when searching for a splitting.
pub fn set_fallback_seed(seed: u64) {
    FALLBACK_SEED.store(seed, Ordering::Relaxed);
}

/// Endomorphism algebra of a representation, with its Jacobson radical
/// whenever the trace form certifies it.
#[derive(Clone, Debug)]
pub struct EndRing {
    module: Representation,
    basis: Vec<RepMorphism>,
    /// Columns are the flattened basis morphisms.
    coords: Matrix,
    radical: Option<Vec<Vector>>,
}

fn endo_trace(f: Field, phi: &RepMorphism) -> Scalar {
    phi.maps().iter().fold(f.zero(), |acc, m| f.add(&acc, &m.trace()))
}

fn is_nilpotent(phi: &RepMorphism, n: usize) -> bool {
    phi.maps().iter().all(|m| m.pow(n.max(1)).is_zero())
}

impl EndRing {
    pub fn new(m: &Representation) -> Self {
        let f = m.field();
        let basis = hom_basis(m, m);
        let vecs: Vec<Vector> = basis.iter().map(RepMorphism::to_vector).collect();
        let len = RepMorphism::identity(m).to_vector().len();
        let coords = Matrix::from_columns(f, len, &vecs);
        let mut ring = EndRing {
            module: m.clone(),
            basis,
            coords,
            radical: None,
        };
        ring.radical = ring.trace_form_radical();
        ring
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[RepMorphism] {
        &self.basis
    }

    /// Coordinates of an endomorphism in [`Self::basis`].
    pub fn coordinates(&self, phi: &RepMorphism) -> Vector {
        self.coords
            .solve(&phi.to_vector())
            .expect("argument is an endomorphism")
    }

    fn combination(&self, c: &[Scalar]) -> RepMorphism {
        let f = self.module.field();
        let mut acc = RepMorphism::zero(&self.module, &self.module);
        for (b, s) in self.basis.iter().zip(c) {
            if !f.is_zero(s) {
                acc = acc.add(&b.scale(s));
            }
        }
        acc
    }

    /// Kernel of `(a, b) -> tr(ab)`, accepted only after checking that it is
    /// a nilpotent two-sided ideal; it then equals the radical.
    fn trace_form_radical(&self) -> Option<Vec<Vector>> {
        let f = self.module.field();
        let d = self.dim();
        let mut gram = Matrix::zeros(f, d, d);
        for i in 0..d {
            for j in 0..d {
                gram.set(i, j, endo_trace(f, &self.basis[i].after(&self.basis[j])));
            }
        }
        let k = gram.kernel_basis();
        let mut span = Span::new(f, d);
        for v in &k {
            span.insert(v);
        }
        let elems: Vec<RepMorphism> = k.iter().map(|c| self.combination(c)).collect();
        for e in &elems {
            for b in &self.basis {
                if !span.contains(&self.coordinates(&b.after(e)))
                    || !span.contains(&self.coordinates(&e.after(b)))
                {
                    return None;
                }
            }
        }
        // An ideal spanned by nilpotent elements need not be nil in general,
        // so check nilpotency of the ideal itself: K^N = 0.
        let n = self.module.total_dim().max(1);
        let mut power = elems.clone();
        for _ in 1..n {
            if power.is_empty() {
                break;
            }
            let mut next_span = Span::new(f, d);
            let mut next = Vec::new();
            for p in &power {
                for e in &elems {
                    let prod = p.after(e);
                    if next_span.insert(&self.coordinates(&prod)) {
                        next.push(prod);
                    }
                }
            }
            power = next;
        }
        if power.iter().all(RepMorphism::is_zero) {
            Some(k)
        } else {
            None
        }
    }

    /// Radical as coordinate vectors, if certified.
    pub fn radical(&self) -> Option<&[Vector]> {
        self.radical.as_deref()
    }

    pub fn radical_morphisms(&self) -> Option<Vec<RepMorphism>> {
        self.radical
            .as_ref()
            .map(|r| r.iter().map(|c| self.combination(c)).collect())
    }

    /// Whether `End(M)/J = k`, which certifies that `M` is indecomposable.
    pub fn is_local_with_trivial_residue(&self) -> bool {
        matches!(&self.radical, Some(r) if self.dim() == r.len() + 1)
    }

    /// Searches for an endomorphism that is neither nilpotent nor invertible.
    pub fn find_splitting_endomorphism(&self) -> Option<RepMorphism> {
        let f = self.module.field();
        let n = self.module.total_dim();
        let good = |phi: &RepMorphism| !phi.is_isomorphism() && !is_nilpotent(phi, n);
        for b in &self.basis {
            if good(b) {
                return Some(b.clone());
            }
        }
        let d = self.dim();
        for i in 0..d {
            for j in (i + 1)..d {
                let s = self.basis[i].add(&self.basis[j]);
                if good(&s) {
                    return Some(s);
                }
                let t = self.basis[i].add(&self.basis[j].scale(&f.from_i64(-1)));
                if good(&t) {
                    return Some(t);
                }
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(FALLBACK_SEED.load(Ordering::Relaxed));
        let mut candidates: Vec<RepMorphism> = self.basis.clone();
        for _ in 0..8 {
            let c: Vector = (0..d).map(|_| f.from_i64(rng.gen_range(-9..=9))).collect();
            candidates.push(self.combination(&c));
        }
        let id = RepMorphism::identity(&self.module);
        for phi in &candidates {
            for lambda in eigenvalue_candidates(f, phi) {
                let shifted = phi.add(&id.scale(&f.neg(&lambda)));
                if good(&shifted) {
                    return Some(shifted);
                }
            }
        }
        None
    }
}

/// Scalars `λ` to try for `φ - λ`: all of `F_p` for small `p`, otherwise the
/// diagonal entries and small integers.
fn eigenvalue_candidates(f: Field, phi: &RepMorphism) -> Vec<Scalar> {
    match f {
        Field::Prime(p) if p <= 1009 => (0..p as i64).map(|v| f.from_i64(v)).collect(),
        _ => {
            let mut out: Vec<Scalar> = (-10..=10).map(|v| f.from_i64(v)).collect();
            for m in phi.maps() {
                for i in 0..m.rows().min(m.cols()) {
                    let v = m.get(i, i).clone();
                    if !out.contains(&v) {
                        out.push(v);
                    }
                }
            }
            out
        }
    }
}

/// Outcome of a decomposition; `certified` is false when some summand was
/// declared indecomposable only because the search found no splitting map.
#[derive(Clone, Debug)]
pub struct Decomposition {
    pub summands: Vec<Representation>,
    pub certified: bool,
}

fn split(m: &Representation, out: &mut Decomposition) {
    if m.is_zero() {
        return;
    }
    // Cheap pass over basis endomorphisms before certifying the radical.
    let n = m.total_dim();
    if let Some(phi) = hom_basis(m, m)
        .into_iter()
        .find(|b| !b.is_isomorphism() && !is_nilpotent(b, n))
    {
        split_by(m, &phi, out);
        return;
    }
    let ring = EndRing::new(m);
    if ring.is_local_with_trivial_residue() {
        out.summands.push(m.clone());
        return;
    }
    match ring.find_splitting_endomorphism() {
        Some(phi) => split_by(m, &phi, out),
        None => {
            if ring.radical().is_none() {
                out.certified = false;
            }
            out.summands.push(m.clone());
        }
    }
}

/// Fitting splitting `M = ker φ^n ⊕ im φ^n`.
fn split_by(m: &Representation, phi: &RepMorphism, out: &mut Decomposition) {
    let n = m.total_dim();
    let power = RepMorphism::new(phi.maps().iter().map(|x| x.pow(n)).collect());
    let (k, _) = power.kernel(m);
    let (i, _) = power.image(m);
    split(&k, out);
    split(&i, out);
}

pub fn decompose_report(m: &Representation) -> Decomposition {
    let mut out = Decomposition {
        summands: Vec::new(),
        certified: true,
    };
    split(m, &mut out);
    out
}

/// Indecomposable summands of `m`, listed with multiplicity.
pub fn decompose(m: &Representation) -> Vec<Representation> {
    decompose_report(m).summands
}

/// Tests `M ≅ N` for indecomposable `M`, `N`: some `g ∘ f` with `f`, `g`
/// basis morphisms is invertible.
pub fn indecomposables_isomorphic(m: &Representation, n: &Representation) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    if m == n {
        return true;
    }
    let fs = hom_basis(m, n);
    if fs.is_empty() {
        return false;
    }
    let gs = hom_basis(n, m);
    fs.iter()
        .any(|f| gs.iter().any(|g| g.after(f).is_isomorphism()))
}

/// Indecomposable summands grouped into isomorphism classes with multiplicities.
pub fn decompose_grouped(m: &Representation) -> Vec<(Representation, usize)> {
    group_isoclasses(decompose(m))
}

pub fn group_isoclasses(parts: Vec<Representation>) -> Vec<(Representation, usize)> {
    let mut groups: Vec<(Representation, usize)> = Vec::new();
    for p in parts {
        match groups
            .iter_mut()
            .find(|(r, _)| indecomposables_isomorphic(r, &p))
        {
            Some(g) => g.1 += 1,
            None => groups.push((p, 1)),
        }
    }
    groups
}

/// Isomorphism of arbitrary representations via their Krull-Schmidt multisets.
pub fn representations_isomorphic(m: &Representation, n: &Representation) -> bool {
    if m.dims() != n.dims() {
        return false;
    }
    let a = decompose_grouped(m);
    let b = decompose_grouped(n);
    a.len() == b.len()
        && a.iter().all(|(r, k)| {
            b.iter()
                .any(|(s, l)| k == l && indecomposables_isomorphic(r, s))
        })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::quiver::Quiver;

    #[test]
    fn projectives_are_indecomposable() {
        let q = Arc::new(Quiver::linear_a(4));
        let f = Field::default();
        for x in 0..4 {
            let p = Representation::projective(q.clone(), f, x);
            assert!(EndRing::new(&p).is_local_with_trivial_residue());
            assert_eq!(decompose(&p).len(), 1);
        }
    }

    #[test]
    fn direct_sum_splits_with_multiplicities() {
        let q = Arc::new(Quiver::linear_a(3));
        for f in [Field::default(), Field::Rational] {
            let p1 = Representation::projective(q.clone(), f, 0);
            let s2 = Representation::simple(q.clone(), f, 1);
            let m = Representation::direct_sum(q.clone(), f, &[&p1, &s2, &p1]);
            let r = decompose_report(&m);
            assert!(r.certified);
            assert_eq!(r.summands.len(), 3);
            let g = decompose_grouped(&m);
            assert_eq!(g.len(), 2);
            let mut counts: Vec<usize> = g.iter().map(|x| x.1).collect();
            counts.sort();
            assert_eq!(counts, vec![1, 2]);
        }
    }

    #[test]
    fn disguised_sum_is_split() {
        // P_1 ⊕ S_1 on A_2 after a change of basis at vertex 1.
        let q = Arc::new(Quiver::linear_a(2));
        let f = Field::default();
        let p1 = Representation::projective(q.clone(), f, 0);
        let s1 = Representation::simple(q.clone(), f, 0);
        let m = Representation::direct_sum(q.clone(), f, &[&p1, &s1]);
        let g0 = Matrix::from_i64(f, &[vec![1, 1], vec![1, 2]]);
        let g1 = Matrix::identity(f, 1);
        let t = m.transport(&[g0, g1]).unwrap();
        assert!(representations_isomorphic(&m, &t));
        assert_eq!(decompose(&t).len(), 2);
    }

    #[test]
    fn kronecker_regular_of_degree_two_point_is_local() {
        // x^2 + 1 has no root mod 103, so (1, x) on the companion matrix is
        // indecomposable with residue field F_{103^2}.
        let f = Field::Prime(103);
        let q = Arc::new(Quiver::kronecker());
        let m = Representation::new(
            q,
            f,
            vec![2, 2],
            vec![Matrix::identity(f, 2), Matrix::from_i64(f, &[vec![0, -1], vec![1, 0]])],
        )
        .unwrap();
        let ring = EndRing::new(&m);
        assert_eq!(ring.dim(), 2);
        assert!(!ring.is_local_with_trivial_residue());
        assert!(ring.find_splitting_endomorphism().is_none());
        assert_eq!(decompose(&m).len(), 1);
    }

    #[test]
    fn non_isomorphic_same_dimension() {
        let q = Arc::new(Quiver::linear_a(2));
        let f = Field::default();
        let p1 = Representation::projective(q.clone(), f, 0);
        let s = Representation::direct_sum(
            q.clone(),
            f,
            &[&Representation::simple(q.clone(), f, 0), &Representation::simple(q, f, 1)],
        );
        assert!(!representations_isomorphic(&p1, &s));
    }
}
