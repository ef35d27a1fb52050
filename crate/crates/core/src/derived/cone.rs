//! Mapping cones through two-term projective resolutions.
//!
//! The stalk `M[i]` is replaced by `P^1(M) -> P^0(M)` in cohomological degrees
//! `-i-1, -i`. For a chain map `F: C -> D` the cone has
//! `Cone^k = C^{k+1} ⊕ D^k` and `d = [[-d_C, 0], [F, d_D]]`; its cohomology
//! modules, decomposed, give the answer because complexes over a hereditary
//! algebra split into their shifted cohomologies.

use std::collections::BTreeMap;

use crate::linalg::Matrix;
use crate::rep::{RepMorphism, Representation, StandardResolution};

use super::{Component, DMorphism, DObject};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Side {
    Source,
    Target,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Term {
    P0,
    P1,
}

#[derive(Clone, Copy, Debug)]
struct Piece {
    side: Side,
    summand: usize,
    term: Term,
}

struct ConeComplex<'a> {
    f: &'a DMorphism,
    src_res: Vec<StandardResolution>,
    tgt_res: Vec<StandardResolution>,
    /// Pieces of `Cone^k`.
    pieces: BTreeMap<i32, Vec<Piece>>,
}

impl<'a> ConeComplex<'a> {
    fn new(f: &'a DMorphism) -> Self {
        let src_res: Vec<StandardResolution> = f
            .source()
            .summands()
            .iter()
            .map(|s| StandardResolution::new(&s.rep))
            .collect();
        let tgt_res: Vec<StandardResolution> = f
            .target()
            .summands()
            .iter()
            .map(|s| StandardResolution::new(&s.rep))
            .collect();
        let mut pieces: BTreeMap<i32, Vec<Piece>> = BTreeMap::new();
        for (i, s) in f.source().summands().iter().enumerate() {
            // C^{-i} = P^0 sits in Cone^{-i-1}; C^{-i-1} = P^1 in Cone^{-i-2}.
            pieces.entry(-s.shift - 1).or_default().push(Piece {
                side: Side::Source,
                summand: i,
                term: Term::P0,
            });
            pieces.entry(-s.shift - 2).or_default().push(Piece {
                side: Side::Source,
                summand: i,
                term: Term::P1,
            });
        }
        for (j, t) in f.target().summands().iter().enumerate() {
            pieces.entry(-t.shift).or_default().push(Piece {
                side: Side::Target,
                summand: j,
                term: Term::P0,
            });
            pieces.entry(-t.shift - 1).or_default().push(Piece {
                side: Side::Target,
                summand: j,
                term: Term::P1,
            });
        }
        ConeComplex {
            f,
            src_res,
            tgt_res,
            pieces,
        }
    }

    fn piece_rep(&self, p: &Piece) -> &Representation {
        let res = match p.side {
            Side::Source => &self.src_res[p.summand],
            Side::Target => &self.tgt_res[p.summand],
        };
        match p.term {
            Term::P0 => res.p0().rep(),
            Term::P1 => res.p1().rep(),
        }
    }

    fn term(&self, k: i32) -> (Representation, Vec<Piece>) {
        let q = self.f.source().quiver().clone();
        let field = self.f.source().field();
        let pieces = self.pieces.get(&k).cloned().unwrap_or_default();
        let reps: Vec<&Representation> = pieces.iter().map(|p| self.piece_rep(p)).collect();
        (Representation::direct_sum(q, field, &reps), pieces)
    }

    /// Block of the cone differential from piece `a` (in `Cone^k`) to piece
    /// `b` (in `Cone^{k+1}`), if nonzero.
    fn block(&self, a: &Piece, b: &Piece) -> Option<RepMorphism> {
        match (a.side, b.side) {
            (Side::Source, Side::Source) => {
                if a.summand == b.summand && a.term == Term::P1 && b.term == Term::P0 {
                    let d = self.src_res[a.summand].differential();
                    let field = self.f.source().field();
                    Some(d.scale(&field.from_i64(-1)))
                } else {
                    None
                }
            }
            (Side::Target, Side::Target) => {
                if a.summand == b.summand && a.term == Term::P1 && b.term == Term::P0 {
                    Some(self.tgt_res[a.summand].differential().clone())
                } else {
                    None
                }
            }
            (Side::Source, Side::Target) => {
                let (rs, rt) = (&self.src_res[a.summand], &self.tgt_res[b.summand]);
                match self.f.component(a.summand, b.summand) {
                    Component::Hom(phi) => {
                        if a.term != b.term {
                            return None;
                        }
                        let (f0, f1) = rs.lift_hom(rt, phi);
                        Some(if a.term == Term::P0 { f0 } else { f1 })
                    }
                    Component::Ext(eta) => {
                        if a.term == Term::P1 && b.term == Term::P0 {
                            Some(rs.lift_ext(rt, eta))
                        } else {
                            None
                        }
                    }
                    Component::Vanishing => None,
                }
            }
            (Side::Target, Side::Source) => None,
        }
    }

    fn differential(&self, k: i32) -> RepMorphism {
        let (src, sp) = self.term(k);
        let (tgt, tp) = self.term(k + 1);
        let q = src.quiver().clone();
        let field = src.field();
        let mut maps: Vec<Matrix> = (0..q.vertex_count())
            .map(|v| Matrix::zeros(field, tgt.dim(v), src.dim(v)))
            .collect();
        let mut col_off = vec![0usize; q.vertex_count()];
        for a in &sp {
            let mut row_off = vec![0usize; q.vertex_count()];
            for b in &tp {
                if let Some(m) = self.block(a, b) {
                    for (v, mat) in maps.iter_mut().enumerate() {
                        mat.set_block(row_off[v], col_off[v], m.at(v));
                    }
                }
                for (v, off) in row_off.iter_mut().enumerate() {
                    *off += self.piece_rep(b).dim(v);
                }
            }
            for (v, off) in col_off.iter_mut().enumerate() {
                *off += self.piece_rep(a).dim(v);
            }
        }
        RepMorphism::new(maps)
    }

    fn cohomology(&self, k: i32) -> Representation {
        let (term, _) = self.term(k);
        let d = self.differential(k);
        let (ker, incl) = d.kernel(&term);
        let prev = self.differential(k - 1);
        let maps = (0..term.quiver().vertex_count())
            .map(|v| {
                incl.at(v)
                    .solve_matrix(prev.at(v))
                    .expect("image of d^{k-1} lies in ker d^k")
            })
            .collect();
        let into_ker = RepMorphism::new(maps);
        into_ker.cokernel(&ker).0
    }
}

/// Third object `C` of a triangle `A --f--> B -> C -> A[1]`.
pub fn cone(f: &DMorphism) -> DObject {
    let q = f.source().quiver().clone();
    let field = f.source().field();
    let cx = ConeComplex::new(f);
    let mut parts = Vec::new();
    let degrees: Vec<i32> = cx.pieces.keys().copied().collect();
    for k in degrees {
        let h = cx.cohomology(k);
        if !h.is_zero() {
            parts.push((h, -k));
        }
    }
    let obj = DObject::new(q, field, parts);
    debug_assert_eq!(
        obj.class(),
        f.target().class() - f.source().class(),
        "cone class"
    );
    obj
}
