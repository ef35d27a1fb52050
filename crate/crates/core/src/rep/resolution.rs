//! Free modules over the path algebra and the functorial two-term projective
//! resolution `0 -> P^1(M) -> P^0(M) -> M -> 0`.

use std::sync::Arc;

use crate::field::Field;
use crate::linalg::{Matrix, Vector};
use crate::quiver::Quiver;

use super::{ExtClass, RepMorphism, Representation};

/// `⊕_g P_{x_g}` with basis at vertex `z` given by pairs `(g, p)`, `p: x_g ~> z`,
/// ordered by generator and then by path position.
#[derive(Clone, Debug)]
pub struct FreeModule {
    gens: Vec<usize>,
    /// `offsets[z][g]`: index of the first basis vector of generator `g` at `z`.
    offsets: Vec<Vec<usize>>,
    rep: Representation,
}

impl FreeModule {
    pub fn new(quiver: Arc<Quiver>, field: Field, gens: Vec<usize>) -> Self {
        let n = quiver.vertex_count();
        let mut offsets = vec![Vec::with_capacity(gens.len()); n];
        let mut dims = vec![0usize; n];
        for z in 0..n {
            for &x in &gens {
                offsets[z].push(dims[z]);
                dims[z] += quiver.path_count(x, z);
            }
        }
        let mut maps = Vec::with_capacity(quiver.arrow_count());
        for (a, &(y, z)) in quiver.arrows().iter().enumerate() {
            let mut m = Matrix::zeros(field, dims[z], dims[y]);
            for (g, &x) in gens.iter().enumerate() {
                for (i, &p) in quiver.paths_between(x, y).iter().enumerate() {
                    let q = quiver.extend(p, a).expect("path extends along an outgoing arrow");
                    let row = offsets[z][g] + quiver.path_position(q);
                    m.set(row, offsets[y][g] + i, field.one());
                }
            }
            maps.push(m);
        }
        let rep = Representation::new(quiver, field, dims, maps)
            .expect("free module has consistent shapes");
        FreeModule { gens, offsets, rep }
    }

    pub fn rep(&self) -> &Representation {
        &self.rep
    }

    pub fn gens(&self) -> &[usize] {
        &self.gens
    }

    /// Basis index at vertex `z` of `(g, path)`.
    pub fn index(&self, z: usize, g: usize, path: usize) -> usize {
        debug_assert_eq!(self.rep.quiver().path(path).end, z);
        self.offsets[z][g] + self.rep.quiver().path_position(path)
    }

    /// Index of the generator `g` itself inside the space at its vertex.
    pub fn generator_index(&self, g: usize) -> usize {
        let x = self.gens[g];
        self.index(x, g, self.rep.quiver().trivial_path(x))
    }

    /// The unique morphism sending generator `g` to `images[g] ∈ target_{x_g}`.
    pub fn morphism_to(&self, target: &Representation, images: &[Vector]) -> RepMorphism {
        let q = self.rep.quiver();
        let f = self.rep.field();
        let maps = (0..q.vertex_count())
            .map(|z| {
                let mut m = Matrix::zeros(f, target.dim(z), self.rep.dim(z));
                for (g, &x) in self.gens.iter().enumerate() {
                    for &p in q.paths_between(x, z) {
                        let col = target.path_map(p).mul_vec(&images[g]);
                        let c = self.index(z, g, p);
                        for (r, v) in col.into_iter().enumerate() {
                            m.set(r, c, v);
                        }
                    }
                }
                m
            })
            .collect();
        RepMorphism::new(maps)
    }
}

/// `0 -> P^1 --∂--> P^0 --ε--> M -> 0` with generators
/// `(x, k)` of `P^0` at `x` for each basis vector `k` of `M_x`, and
/// `(a, k)` of `P^1` at `y` for each arrow `a: x -> y` and basis vector `k` of `M_x`.
#[derive(Clone, Debug)]
pub struct StandardResolution {
    module: Representation,
    p0: FreeModule,
    p1: FreeModule,
    /// `p0_gen[x][k]`, `p1_gen[a][k]`: generator numbers.
    p0_gen: Vec<Vec<usize>>,
    p1_gen: Vec<Vec<usize>>,
    differential: RepMorphism,
    augmentation: RepMorphism,
}

impl StandardResolution {
    pub fn new(m: &Representation) -> Self {
        let q = m.quiver().clone();
        let f = m.field();
        let mut gens0 = Vec::new();
        let mut p0_gen = Vec::new();
        for x in 0..q.vertex_count() {
            p0_gen.push((0..m.dim(x)).map(|_| {
                gens0.push(x);
                gens0.len() - 1
            }).collect::<Vec<_>>());
        }
        let mut gens1 = Vec::new();
        let mut p1_gen = Vec::new();
        for &(x, y) in q.arrows() {
            p1_gen.push((0..m.dim(x)).map(|_| {
                gens1.push(y);
                gens1.len() - 1
            }).collect::<Vec<_>>());
        }
        let p0 = FreeModule::new(q.clone(), f, gens0);
        let p1 = FreeModule::new(q.clone(), f, gens1);

        let eps_images: Vec<Vector> = p0
            .gens()
            .iter()
            .enumerate()
            .map(|(g, &x)| {
                let k = p0_gen[x].iter().position(|&h| h == g).expect("generator listed");
                let mut v = vec![f.zero(); m.dim(x)];
                v[k] = f.one();
                v
            })
            .collect();
        let augmentation = p0.morphism_to(m, &eps_images);

        let mut d_images: Vec<Vector> = vec![Vec::new(); p1.gens().len()];
        for (a, &(x, y)) in q.arrows().iter().enumerate() {
            let along = q.extend(q.trivial_path(x), a).expect("arrow is a path");
            let ma = m.arrow_map(a);
            for k in 0..m.dim(x) {
                let mut v = vec![f.zero(); p0.rep().dim(y)];
                v[p0.index(y, p0_gen[x][k], along)] = f.one();
                for l in 0..m.dim(y) {
                    let idx = p0.generator_index(p0_gen[y][l]);
                    v[idx] = f.sub(&v[idx], ma.get(l, k));
                }
                d_images[p1_gen[a][k]] = v;
            }
        }
        let differential = p1.morphism_to(p0.rep(), &d_images);

        StandardResolution {
            module: m.clone(),
            p0,
            p1,
            p0_gen,
            p1_gen,
            differential,
            augmentation,
        }
    }

    pub fn module(&self) -> &Representation {
        &self.module
    }

    pub fn p0(&self) -> &FreeModule {
        &self.p0
    }

    pub fn p1(&self) -> &FreeModule {
        &self.p1
    }

    pub fn differential(&self) -> &RepMorphism {
        &self.differential
    }

    pub fn augmentation(&self) -> &RepMorphism {
        &self.augmentation
    }

    /// Chain lift `(f^0, f^1)` of a module map `φ: M -> N`.
    pub fn lift_hom(&self, target: &StandardResolution, phi: &RepMorphism) -> (RepMorphism, RepMorphism) {
        let f = self.module.field();
        let q = self.module.quiver();
        let mut im0 = vec![Vec::new(); self.p0.gens().len()];
        for x in 0..q.vertex_count() {
            let px = phi.at(x);
            for (k, &g) in self.p0_gen[x].iter().enumerate() {
                let mut v = vec![f.zero(); target.p0.rep().dim(x)];
                for (l, &h) in target.p0_gen[x].iter().enumerate() {
                    v[target.p0.generator_index(h)] = px.get(l, k).clone();
                }
                im0[g] = v;
            }
        }
        let mut im1 = vec![Vec::new(); self.p1.gens().len()];
        for (a, &(x, y)) in q.arrows().iter().enumerate() {
            let px = phi.at(x);
            for (k, &g) in self.p1_gen[a].iter().enumerate() {
                let mut v = vec![f.zero(); target.p1.rep().dim(y)];
                for (l, &h) in target.p1_gen[a].iter().enumerate() {
                    v[target.p1.generator_index(h)] = px.get(l, k).clone();
                }
                im1[g] = v;
            }
        }
        (
            self.p0.morphism_to(target.p0.rep(), &im0),
            self.p1.morphism_to(target.p1.rep(), &im1),
        )
    }

    /// Chain map `P^1(M) -> P^0(N)` representing the class `η ∈ Ext^1(M, N)`.
    pub fn lift_ext(&self, target: &StandardResolution, eta: &ExtClass) -> RepMorphism {
        let f = self.module.field();
        let q = self.module.quiver();
        let mut im = vec![Vec::new(); self.p1.gens().len()];
        for (a, &(_, y)) in q.arrows().iter().enumerate() {
            let ea = &eta.cocycle()[a];
            for (k, &g) in self.p1_gen[a].iter().enumerate() {
                let mut v = vec![f.zero(); target.p0.rep().dim(y)];
                for (l, &h) in target.p0_gen[y].iter().enumerate() {
                    v[target.p0.generator_index(h)] = ea.get(l, k).clone();
                }
                im[g] = v;
            }
        }
        self.p1.morphism_to(target.p0.rep(), &im)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rep::{ext1_basis, hom_basis};

    fn reps(q: &Arc<Quiver>, f: Field) -> Vec<Representation> {
        let n = q.vertex_count();
        let mut out = Vec::new();
        for x in 0..n {
            out.push(Representation::simple(q.clone(), f, x));
            out.push(Representation::projective(q.clone(), f, x));
            out.push(Representation::injective(q.clone(), f, x));
        }
        out
    }

    #[test]
    fn resolution_is_exact() {
        for q in [Quiver::linear_a(3), Quiver::kronecker(), Quiver::new(3, vec![(0, 1), (2, 1)]).unwrap()] {
            let q = Arc::new(q);
            let f = Field::default();
            for m in reps(&q, f) {
                let r = StandardResolution::new(&m);
                assert!(r.differential().commutes(r.p1().rep(), r.p0().rep()));
                assert!(r.augmentation().commutes(r.p0().rep(), &m));
                assert!(r.differential().is_injective());
                assert!(r.augmentation().is_surjective());
                assert!(r.augmentation().after(r.differential()).is_zero());
                for v in 0..q.vertex_count() {
                    let d = r.differential().at(v).rank();
                    assert_eq!(d + m.dim(v), r.p0().rep().dim(v));
                }
            }
        }
    }

    #[test]
    fn lifts_are_chain_maps() {
        let q = Arc::new(Quiver::linear_a(3));
        let f = Field::default();
        let all = reps(&q, f);
        for m in &all {
            for n in &all {
                let (rm, rn) = (StandardResolution::new(m), StandardResolution::new(n));
                for phi in hom_basis(m, n) {
                    let (f0, f1) = rm.lift_hom(&rn, &phi);
                    assert!(f0.commutes(rm.p0().rep(), rn.p0().rep()));
                    assert_eq!(
                        rn.differential().after(&f1),
                        f0.after(rm.differential())
                    );
                    assert_eq!(rn.augmentation().after(&f0), phi.after(rm.augmentation()));
                }
                for eta in ext1_basis(m, n) {
                    let h = rm.lift_ext(&rn, &eta);
                    assert!(h.commutes(rm.p1().rep(), rn.p0().rep()));
                }
            }
        }
    }
}
