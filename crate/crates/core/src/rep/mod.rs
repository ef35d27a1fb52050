//! Finite-dimensional representations of an acyclic quiver: the hereditary
//! abelian category in which everything else is computed.

mod decompose;
mod hom;
mod resolution;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};
use crate::linalg::{Matrix, Vector};
use crate::quiver::{ClassVector, Quiver};

pub use decompose::{
    decompose, decompose_grouped, decompose_report, group_isoclasses, indecomposables_isomorphic,
    representations_isomorphic, set_fallback_seed, Decomposition, EndRing,
};
pub use hom::{ext1_basis, ext1_dim, ext_coordinates, hom_basis, hom_dim, ExtClass, HomComplex};
pub use resolution::{FreeModule, StandardResolution};

#[derive(Clone, Debug)]
pub struct Representation {
    quiver: Arc<Quiver>,
    field: Field,
    dims: Vec<usize>,
    /// One matrix per arrow `a: x -> y`, of shape `dims[y] x dims[x]`.
    maps: Vec<Matrix>,
}

impl PartialEq for Representation {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
            && self.field == other.field
            && self.dims == other.dims
            && self.maps == other.maps
    }
}

impl Eq for Representation {}

impl Representation {
    pub fn new(
        quiver: Arc<Quiver>,
        field: Field,
        dims: Vec<usize>,
        maps: Vec<Matrix>,
    ) -> Result<Self> {
        if dims.len() != quiver.vertex_count() {
            return Err(Error::InvalidRepresentation(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                dims.len(),
                quiver.vertex_count()
            )));
        }
        if maps.len() != quiver.arrow_count() {
            return Err(Error::InvalidRepresentation(format!(
                "{} arrow matrices given, quiver has {} arrows",
                maps.len(),
                quiver.arrow_count()
            )));
        }
        for (a, (&(s, t), m)) in quiver.arrows().iter().zip(&maps).enumerate() {
            if m.shape() != (dims[t], dims[s]) {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} needs a {}x{} matrix, got {}x{}",
                    a + 1,
                    dims[t],
                    dims[s],
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::InvalidRepresentation(format!(
                    "arrow {} matrix is over {}, expected {field}",
                    a + 1,
                    m.field()
                )));
            }
        }
        Ok(Representation {
            quiver,
            field,
            dims,
            maps,
        })
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Self {
        let dims = vec![0; quiver.vertex_count()];
        let maps = quiver
            .arrows()
            .iter()
            .map(|_| Matrix::zeros(field, 0, 0))
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn simple(quiver: Arc<Quiver>, field: Field, x: usize) -> Self {
        let mut dims = vec![0; quiver.vertex_count()];
        dims[x] = 1;
        let maps = quiver
            .arrows()
            .iter()
            .map(|&(s, t)| Matrix::zeros(field, dims[t], dims[s]))
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    /// `P_x`: at vertex `y` the span of paths `x ~> y`.
    pub fn projective(quiver: Arc<Quiver>, field: Field, x: usize) -> Self {
        FreeModule::new(quiver, field, vec![x]).rep().clone()
    }

    /// `I_x`: at vertex `y` the dual of the span of paths `y ~> x`.
    pub fn injective(quiver: Arc<Quiver>, field: Field, x: usize) -> Self {
        let q = &quiver;
        let n = q.vertex_count();
        let dims: Vec<usize> = (0..n).map(|y| q.path_count(y, x)).collect();
        let mut maps = Vec::with_capacity(q.arrow_count());
        for (a, &(y, z)) in q.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(field, dims[z], dims[y]);
            for (col, &p) in q.paths_between(y, x).iter().enumerate() {
                let path = q.path(p);
                if path.arrows.first() != Some(&a) {
                    continue;
                }
                let rest = &path.arrows[1..];
                let row = q
                    .paths_between(z, x)
                    .iter()
                    .position(|&r| q.path(r).arrows == rest)
                    .expect("suffix of a path is a path");
                m.set(row, col, field.one());
            }
            maps.push(m);
        }
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn direct_sum(quiver: Arc<Quiver>, field: Field, parts: &[&Representation]) -> Self {
        let n = quiver.vertex_count();
        let dims: Vec<usize> = (0..n)
            .map(|v| parts.iter().map(|p| p.dims[v]).sum())
            .collect();
        let maps = (0..quiver.arrow_count())
            .map(|a| {
                let blocks: Vec<Matrix> = parts.iter().map(|p| p.maps[a].clone()).collect();
                Matrix::block_diagonal(field, &blocks)
            })
            .collect();
        Representation {
            quiver,
            field,
            dims,
            maps,
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    pub fn dim(&self, v: usize) -> usize {
        self.dims[v]
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn arrow_map(&self, a: usize) -> &Matrix {
        &self.maps[a]
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.total_dim() == 0
    }

    pub fn class(&self) -> ClassVector {
        ClassVector(self.dims.iter().map(|&d| d as i64).collect())
    }

    /// Linear map along a path, `dims[end] x dims[start]`.
    pub fn path_map(&self, pid: usize) -> Matrix {
        let p = self.quiver.path(pid);
        let mut m = Matrix::identity(self.field, self.dims[p.start]);
        for &a in &p.arrows {
            m = self.maps[a].mul(&m);
        }
        m
    }

    pub fn same_category(&self, other: &Representation) -> bool {
        self.field == other.field
            && (Arc::ptr_eq(&self.quiver, &other.quiver) || self.quiver == other.quiver)
    }

    /// Representation with the arrow maps conjugated by vertexwise
    /// invertible changes of basis `g_x`: `M'_a = g_y M_a g_x^{-1}`.
    pub fn transport(&self, basis_change: &[Matrix]) -> Option<Representation> {
        let inverses: Option<Vec<Matrix>> = basis_change.iter().map(Matrix::inverse).collect();
        let inverses = inverses?;
        let maps = self
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| basis_change[t].mul(&self.maps[a]).mul(&inverses[s]))
            .collect();
        Some(Representation {
            quiver: self.quiver.clone(),
            field: self.field,
            dims: self.dims.clone(),
            maps,
        })
    }

    /// Subrepresentation spanned vertexwise by the columns of `bases`, with its
    /// inclusion. Fails if the spans are not closed under the arrow maps.
    pub fn subrepresentation(&self, bases: &[Matrix]) -> Result<(Representation, RepMorphism)> {
        let q = &self.quiver;
        let dims: Vec<usize> = bases.iter().map(Matrix::cols).collect();
        let mut maps = Vec::with_capacity(q.arrow_count());
        for (a, &(s, t)) in q.arrows().iter().enumerate() {
            let image = self.maps[a].mul(&bases[s]);
            let induced = bases[t].solve_matrix(&image).ok_or_else(|| {
                Error::Internal(format!("subspace not closed under arrow {}", a + 1))
            })?;
            maps.push(induced);
        }
        let sub = Representation {
            quiver: q.clone(),
            field: self.field,
            dims,
            maps,
        };
        let incl = RepMorphism::new(bases.to_vec());
        Ok((sub, incl))
    }
}

/// A morphism of representations, stored as one matrix per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RepMorphism {
    maps: Vec<Matrix>,
}

impl RepMorphism {
    pub fn new(maps: Vec<Matrix>) -> Self {
        RepMorphism { maps }
    }

    pub fn identity(m: &Representation) -> Self {
        RepMorphism {
            maps: m.dims.iter().map(|&d| Matrix::identity(m.field, d)).collect(),
        }
    }

    pub fn zero(source: &Representation, target: &Representation) -> Self {
        RepMorphism {
            maps: source
                .dims
                .iter()
                .zip(&target.dims)
                .map(|(&s, &t)| Matrix::zeros(source.field, t, s))
                .collect(),
        }
    }

    pub fn maps(&self) -> &[Matrix] {
        &self.maps
    }

    pub fn at(&self, v: usize) -> &Matrix {
        &self.maps[v]
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &RepMorphism) -> RepMorphism {
        RepMorphism {
            maps: self.maps.iter().zip(&first.maps).map(|(g, f)| g.mul(f)).collect(),
        }
    }

    pub fn add(&self, other: &RepMorphism) -> RepMorphism {
        RepMorphism {
            maps: self.maps.iter().zip(&other.maps).map(|(a, b)| a.add(b)).collect(),
        }
    }

    pub fn scale(&self, s: &Scalar) -> RepMorphism {
        RepMorphism {
            maps: self.maps.iter().map(|m| m.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.maps.iter().all(Matrix::is_zero)
    }

    /// Flattened row-major entries, vertex by vertex.
    pub fn to_vector(&self) -> Vector {
        self.maps.iter().flat_map(|m| m.entries().iter().cloned()).collect()
    }

    pub fn commutes(&self, source: &Representation, target: &Representation) -> bool {
        source
            .quiver
            .arrows()
            .iter()
            .enumerate()
            .all(|(a, &(x, y))| {
                self.maps[y].mul(&source.maps[a]) == target.maps[a].mul(&self.maps[x])
            })
    }

    pub fn is_injective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.cols())
    }

    pub fn is_surjective(&self) -> bool {
        self.maps.iter().all(|m| m.rank() == m.rows())
    }

    pub fn is_isomorphism(&self) -> bool {
        self.maps.iter().all(Matrix::is_invertible)
    }

    /// Kernel with its inclusion into the source.
    pub fn kernel(&self, source: &Representation) -> (Representation, RepMorphism) {
        let bases: Vec<Matrix> = self.maps.iter().map(Matrix::kernel_matrix).collect();
        source
            .subrepresentation(&bases)
            .expect("kernel of a morphism is a subrepresentation")
    }

    /// Image with its inclusion into the target.
    pub fn image(&self, target: &Representation) -> (Representation, RepMorphism) {
        let bases: Vec<Matrix> = self
            .maps
            .iter()
            .map(|m| {
                let e = m.echelon();
                let cols: Vec<Vector> = e.pivots.iter().map(|&c| m.column(c)).collect();
                Matrix::from_columns(m.field(), m.rows(), &cols)
            })
            .collect();
        target
            .subrepresentation(&bases)
            .expect("image of a morphism is a subrepresentation")
    }

    /// Cokernel with the projection from the target.
    pub fn cokernel(&self, target: &Representation) -> (Representation, RepMorphism) {
        let q = target.quiver.clone();
        let field = target.field;
        let projections: Vec<Matrix> = self.maps.iter().map(|m| m.cokernel_basis().0).collect();
        // Sections s_x with p_x s_x = id give the induced arrow maps p_y M_a s_x.
        let sections: Vec<Matrix> = projections
            .iter()
            .map(|p| p.right_inverse().expect("cokernel projection is surjective"))
            .collect();
        let dims: Vec<usize> = projections.iter().map(Matrix::rows).collect();
        let maps = q
            .arrows()
            .iter()
            .enumerate()
            .map(|(a, &(s, t))| projections[t].mul(&target.maps[a]).mul(&sections[s]))
            .collect();
        let coker = Representation {
            quiver: q,
            field,
            dims,
            maps,
        };
        (coker, RepMorphism::new(projections))
    }
}

/// Middle term `X` of the extension `0 -> N -> X -> M -> 0` described by the
/// cocycle `eta` (one matrix `N_y x M_x` per arrow `x -> y`), together with
/// the inclusion of `N` and the projection onto `M`.
pub fn extension_middle_term(
    m: &Representation,
    n: &Representation,
    eta: &ExtClass,
) -> (Representation, RepMorphism, RepMorphism) {
    let q = m.quiver.clone();
    let field = m.field;
    let dims: Vec<usize> = (0..q.vertex_count()).map(|v| n.dims[v] + m.dims[v]).collect();
    let maps = q
        .arrows()
        .iter()
        .enumerate()
        .map(|(a, &(s, t))| {
            let mut x = Matrix::zeros(field, dims[t], dims[s]);
            x.set_block(0, 0, &n.maps[a]);
            x.set_block(0, n.dims[s], &eta.cocycle()[a]);
            x.set_block(n.dims[t], n.dims[s], &m.maps[a]);
            x
        })
        .collect();
    let x = Representation {
        quiver: q.clone(),
        field,
        dims: dims.clone(),
        maps,
    };
    let incl = RepMorphism::new(
        (0..q.vertex_count())
            .map(|v| {
                let mut i = Matrix::zeros(field, dims[v], n.dims[v]);
                i.set_block(0, 0, &Matrix::identity(field, n.dims[v]));
                i
            })
            .collect(),
    );
    let proj = RepMorphism::new(
        (0..q.vertex_count())
            .map(|v| {
                let mut p = Matrix::zeros(field, m.dims[v], dims[v]);
                p.set_block(0, n.dims[v], &Matrix::identity(field, m.dims[v]));
                p
            })
            .collect(),
    );
    (x, incl, proj)
}
