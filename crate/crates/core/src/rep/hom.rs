//! Hom and Ext^1 between representations via the standard two-term complex
//!
//! ```text
//! d: ⊕_x Hom_k(M_x, N_x) -> ⊕_{a: x->y} Hom_k(M_x, N_y),  d(φ)_a = φ_y M_a - N_a φ_x
//! ```
//!
//! `Hom(M, N) = ker d` and, because kQ is hereditary, `Ext^1(M, N) = coker d`.

use crate::field::Field;
use crate::linalg::{Matrix, Vector};

use super::{RepMorphism, Representation};

/// An element of `⊕_a Hom_k(M_x, N_y)` standing for its class in `Ext^1(M, N)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExtClass {
    cocycle: Vec<Matrix>,
}

impl ExtClass {
    pub fn new(cocycle: Vec<Matrix>) -> Self {
        ExtClass { cocycle }
    }

    pub fn zero(m: &Representation, n: &Representation) -> Self {
        let f = m.field();
        ExtClass {
            cocycle: m
                .quiver()
                .arrows()
                .iter()
                .map(|&(x, y)| Matrix::zeros(f, n.dim(y), m.dim(x)))
                .collect(),
        }
    }

    pub fn cocycle(&self) -> &[Matrix] {
        &self.cocycle
    }

    pub fn to_vector(&self) -> Vector {
        self.cocycle.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn add(&self, other: &ExtClass) -> ExtClass {
        ExtClass {
            cocycle: self.cocycle.iter().zip(&other.cocycle).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &crate::field::Scalar) -> ExtClass {
        ExtClass {
            cocycle: self.cocycle.iter().map(|m| m.scale(s)).collect(),
        }
    }

    /// Pullback along `f: L -> M`: the class of `η ∘ f`.
    pub fn pullback(&self, f: &RepMorphism, arrows: &[(usize, usize)]) -> ExtClass {
        ExtClass {
            cocycle: arrows
                .iter()
                .enumerate()
                .map(|(a, &(x, _))| self.cocycle[a].mul(f.at(x)))
                .collect(),
        }
    }

    /// Pushforward along `g: N -> L`: the class of `g ∘ η`.
    pub fn pushforward(&self, g: &RepMorphism, arrows: &[(usize, usize)]) -> ExtClass {
        ExtClass {
            cocycle: arrows
                .iter()
                .enumerate()
                .map(|(a, &(_, y))| g.at(y).mul(&self.cocycle[a]))
                .collect(),
        }
    }
}

/// The complex `d` for a pair `(M, N)` with its kernel and a complement of
/// its image.
#[derive(Clone, Debug)]
pub struct HomComplex {
    field: Field,
    var_offsets: Vec<usize>,
    eq_offsets: Vec<usize>,
    source_dims: Vec<usize>,
    target_dims: Vec<usize>,
    arrows: Vec<(usize, usize)>,
    d: Matrix,
}

impl HomComplex {
    pub fn new(m: &Representation, n: &Representation) -> Self {
        assert!(m.same_category(n), "representations over different quivers or fields");
        let f = m.field();
        let q = m.quiver();
        let nv = q.vertex_count();
        let mut var_offsets = Vec::with_capacity(nv + 1);
        let mut acc = 0;
        for x in 0..nv {
            var_offsets.push(acc);
            acc += n.dim(x) * m.dim(x);
        }
        var_offsets.push(acc);
        let vars = acc;
        let mut eq_offsets = Vec::with_capacity(q.arrow_count() + 1);
        acc = 0;
        for &(x, y) in q.arrows() {
            eq_offsets.push(acc);
            acc += n.dim(y) * m.dim(x);
        }
        eq_offsets.push(acc);
        let eqs = acc;

        let mut d = Matrix::zeros(f, eqs, vars);
        for (a, &(x, y)) in q.arrows().iter().enumerate() {
            let ma = m.arrow_map(a);
            let na = n.arrow_map(a);
            let (mx, my, nx, ny) = (m.dim(x), m.dim(y), n.dim(x), n.dim(y));
            for r in 0..ny {
                for c in 0..mx {
                    let row = eq_offsets[a] + r * mx + c;
                    // (φ_y M_a)[r][c] = Σ_k φ_y[r][k] M_a[k][c]
                    for k in 0..my {
                        let v = ma.get(k, c);
                        if f.is_zero(v) {
                            continue;
                        }
                        let col = var_offsets[y] + r * my + k;
                        let cur = f.add(d.get(row, col), v);
                        d.set(row, col, cur);
                    }
                    // -(N_a φ_x)[r][c] = -Σ_k N_a[r][k] φ_x[k][c]
                    for k in 0..nx {
                        let v = na.get(r, k);
                        if f.is_zero(v) {
                            continue;
                        }
                        let col = var_offsets[x] + k * mx + c;
                        let cur = f.sub(d.get(row, col), v);
                        d.set(row, col, cur);
                    }
                }
            }
        }
        HomComplex {
            field: f,
            var_offsets,
            eq_offsets,
            source_dims: m.dims().to_vec(),
            target_dims: n.dims().to_vec(),
            arrows: q.arrows().to_vec(),
            d,
        }
    }

    pub fn differential(&self) -> &Matrix {
        &self.d
    }

    fn unflatten_hom(&self, v: &[crate::field::Scalar]) -> RepMorphism {
        let maps = (0..self.source_dims.len())
            .map(|x| {
                let (r, c) = (self.target_dims[x], self.source_dims[x]);
                let start = self.var_offsets[x];
                Matrix::from_rows(self.field, r, c, v[start..start + r * c].to_vec())
            })
            .collect();
        RepMorphism::new(maps)
    }

    fn unflatten_ext(&self, v: &[crate::field::Scalar]) -> ExtClass {
        let cocycle = self
            .arrows
            .iter()
            .enumerate()
            .map(|(a, &(x, y))| {
                let (r, c) = (self.target_dims[y], self.source_dims[x]);
                let start = self.eq_offsets[a];
                Matrix::from_rows(self.field, r, c, v[start..start + r * c].to_vec())
            })
            .collect();
        ExtClass::new(cocycle)
    }

    pub fn hom_basis(&self) -> Vec<RepMorphism> {
        self.d
            .kernel_basis()
            .iter()
            .map(|v| self.unflatten_hom(v))
            .collect()
    }

    pub fn hom_dim(&self) -> usize {
        self.d.cols() - self.d.rank()
    }

    pub fn ext_dim(&self) -> usize {
        self.d.rows() - self.d.rank()
    }

    /// Standard cocycles spanning a complement of `im d`.
    pub fn ext_basis(&self) -> Vec<ExtClass> {
        let f = self.field;
        self.d
            .complement_indices()
            .into_iter()
            .map(|i| {
                let mut v = vec![f.zero(); self.d.rows()];
                v[i] = f.one();
                self.unflatten_ext(&v)
            })
            .collect()
    }

    /// Coordinates of a cocycle's class in the basis returned by [`Self::ext_basis`].
    pub fn ext_coordinates(&self, eta: &ExtClass) -> Vector {
        let f = self.field;
        let comp = self.d.complement_indices();
        let mut e = Matrix::zeros(f, self.d.rows(), comp.len());
        for (j, &i) in comp.iter().enumerate() {
            e.set(i, j, f.one());
        }
        let aug = self.d.hstack(&e);
        let z = aug
            .solve(&eta.to_vector())
            .expect("image plus complement spans the cocycle space");
        z[self.d.cols()..].to_vec()
    }
}

pub fn hom_basis(m: &Representation, n: &Representation) -> Vec<RepMorphism> {
    HomComplex::new(m, n).hom_basis()
}

pub fn hom_dim(m: &Representation, n: &Representation) -> usize {
    HomComplex::new(m, n).hom_dim()
}

pub fn ext1_basis(m: &Representation, n: &Representation) -> Vec<ExtClass> {
    HomComplex::new(m, n).ext_basis()
}

pub fn ext1_dim(m: &Representation, n: &Representation) -> usize {
    HomComplex::new(m, n).ext_dim()
}

pub fn ext_coordinates(m: &Representation, n: &Representation, eta: &ExtClass) -> Vector {
    HomComplex::new(m, n).ext_coordinates(eta)
}
