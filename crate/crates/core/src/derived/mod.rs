//! Objects and morphisms of `D^b(mod kQ)` kept in stalk-decomposed form.
//!
//! Every object is a finite direct sum of stalks `M[i]` with `M`
//! indecomposable. `Hom(M[i], N[j])` is `Hom(M, N)` when `j = i`,
//! `Ext^1(M, N)` when `j = i + 1`, and zero otherwise.

mod approx;
mod cone;

use std::fmt;
use std::sync::Arc;

use crate::field::{Field, Scalar};
use crate::linalg::Vector;
use crate::quiver::{ClassVector, Quiver};
use crate::rep::{
    decompose, ext1_basis, hom_basis, indecomposables_isomorphic, ExtClass, HomComplex,
    RepMorphism, Representation,
};

pub use approx::{
    check_exceptional, minimal_left_approximation, minimal_right_approximation,
    project_to_perpendicular, thick_perp_project, PerpProjection,
};
pub use cone::cone;

/// An indecomposable representation placed in cohomological shift `shift`,
/// i.e. the object `rep[shift]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stalk {
    pub rep: Representation,
    pub shift: i32,
}

impl Stalk {
    pub fn new(rep: Representation, shift: i32) -> Self {
        Stalk { rep, shift }
    }

    pub fn shifted(&self, l: i32) -> Stalk {
        Stalk {
            rep: self.rep.clone(),
            shift: self.shift + l,
        }
    }

    pub fn class(&self) -> ClassVector {
        self.rep.class().shifted(self.shift)
    }

    pub fn is_isomorphic(&self, other: &Stalk) -> bool {
        self.shift == other.shift && indecomposables_isomorphic(&self.rep, &other.rep)
    }

    fn sort_key(&self) -> (i32, Vec<usize>) {
        (self.shift, self.rep.dims().to_vec())
    }
}

impl fmt::Display for Stalk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let dims: Vec<String> = self.rep.dims().iter().map(|d| d.to_string()).collect();
        write!(f, "M({})", dims.join(","))?;
        if self.shift != 0 {
            write!(f, "[{}]", self.shift)?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct DObject {
    quiver: Arc<Quiver>,
    field: Field,
    summands: Vec<Stalk>,
}

impl DObject {
    /// Builds an object, splitting every representation into indecomposables.
    pub fn new(quiver: Arc<Quiver>, field: Field, parts: Vec<(Representation, i32)>) -> Self {
        let mut summands = Vec::new();
        for (rep, shift) in parts {
            for piece in decompose(&rep) {
                summands.push(Stalk::new(piece, shift));
            }
        }
        Self::from_indecomposables(quiver, field, summands)
    }

    /// Builds an object from stalks already known to be indecomposable.
    pub fn from_indecomposables(quiver: Arc<Quiver>, field: Field, mut summands: Vec<Stalk>) -> Self {
        summands.retain(|s| !s.rep.is_zero());
        summands.sort_by_key(Stalk::sort_key);
        DObject {
            quiver,
            field,
            summands,
        }
    }

    pub fn zero(quiver: Arc<Quiver>, field: Field) -> Self {
        DObject {
            quiver,
            field,
            summands: Vec::new(),
        }
    }

    pub fn stalk(rep: Representation, shift: i32) -> Self {
        let q = rep.quiver().clone();
        let f = rep.field();
        DObject::new(q, f, vec![(rep, shift)])
    }

    pub fn from_stalk(s: Stalk) -> Self {
        let q = s.rep.quiver().clone();
        let f = s.rep.field();
        DObject {
            quiver: q,
            field: f,
            summands: vec![s],
        }
    }

    pub fn quiver(&self) -> &Arc<Quiver> {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn summands(&self) -> &[Stalk] {
        &self.summands
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.summands.is_empty()
    }

    pub fn class(&self) -> ClassVector {
        self.summands
            .iter()
            .fold(ClassVector::zero(self.quiver.vertex_count()), |acc, s| acc + s.class())
    }

    pub fn shift(&self, l: i32) -> DObject {
        DObject {
            quiver: self.quiver.clone(),
            field: self.field,
            summands: self.summands.iter().map(|s| s.shifted(l)).collect(),
        }
    }

    pub fn shift_range(&self) -> Option<(i32, i32)> {
        let min = self.summands.iter().map(|s| s.shift).min()?;
        let max = self.summands.iter().map(|s| s.shift).max()?;
        Some((min, max))
    }

    /// Whether every summand sits in shift 0.
    pub fn is_module(&self) -> bool {
        self.summands.iter().all(|s| s.shift == 0)
    }

    pub fn direct_sum(&self, other: &DObject) -> DObject {
        let mut s = self.summands.clone();
        s.extend(other.summands.iter().cloned());
        DObject::from_indecomposables(self.quiver.clone(), self.field, s)
    }

    /// One representative per isomorphism class of summands.
    pub fn basic(&self) -> DObject {
        let mut out: Vec<Stalk> = Vec::new();
        for s in &self.summands {
            if !out.iter().any(|t| t.is_isomorphic(s)) {
                out.push(s.clone());
            }
        }
        DObject::from_indecomposables(self.quiver.clone(), self.field, out)
    }

    pub fn is_basic(&self) -> bool {
        self.basic().len() == self.len()
    }

    pub fn find_summand(&self, s: &Stalk) -> Option<usize> {
        self.summands.iter().position(|t| t.is_isomorphic(s))
    }

    /// The object with summand `idx` removed.
    pub fn without(&self, idx: usize) -> DObject {
        let mut s = self.summands.clone();
        s.remove(idx);
        DObject::from_indecomposables(self.quiver.clone(), self.field, s)
    }

    /// Multiset of summands as `(representative, multiplicity)`.
    pub fn grouped(&self) -> Vec<(Stalk, usize)> {
        let mut out: Vec<(Stalk, usize)> = Vec::new();
        for s in &self.summands {
            match out.iter_mut().find(|(t, _)| t.is_isomorphic(s)) {
                Some(e) => e.1 += 1,
                None => out.push((s.clone(), 1)),
            }
        }
        out
    }

    /// The module `⊕` of summands at shift `i` (with their shift forgotten).
    pub fn degree_part(&self, i: i32) -> Vec<Representation> {
        self.summands
            .iter()
            .filter(|s| s.shift == i)
            .map(|s| s.rep.clone())
            .collect()
    }
}

impl fmt::Display for DObject {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.summands.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.summands.iter().map(|s| s.to_string()).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Whether the multisets of `(isoclass, shift)` coincide.
pub fn iso_test(a: &DObject, b: &DObject) -> bool {
    if a.len() != b.len() || a.class() != b.class() {
        return false;
    }
    let ga = a.grouped();
    let gb = b.grouped();
    ga.len() == gb.len()
        && ga
            .iter()
            .all(|(s, k)| gb.iter().any(|(t, l)| k == l && s.is_isomorphic(t)))
}

/// One block of a morphism between two stalks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Component {
    /// The shifts make every morphism zero.
    Vanishing,
    Hom(RepMorphism),
    Ext(ExtClass),
}

impl Component {
    fn zero_between(s: &Stalk, t: &Stalk) -> Component {
        match t.shift - s.shift {
            0 => Component::Hom(RepMorphism::zero(&s.rep, &t.rep)),
            1 => Component::Ext(ExtClass::zero(&s.rep, &t.rep)),
            _ => Component::Vanishing,
        }
    }

    /// Zero as a cocycle; a nonzero cocycle may still be a coboundary.
    pub fn is_zero(&self) -> bool {
        match self {
            Component::Vanishing => true,
            Component::Hom(h) => h.is_zero(),
            Component::Ext(e) => e.cocycle().iter().all(|m| m.is_zero()),
        }
    }

    fn add(&self, other: &Component) -> Component {
        match (self, other) {
            (Component::Hom(a), Component::Hom(b)) => Component::Hom(a.add(b)),
            (Component::Ext(a), Component::Ext(b)) => Component::Ext(a.add(b)),
            (Component::Vanishing, Component::Vanishing) => Component::Vanishing,
            _ => panic!("adding components of different degrees"),
        }
    }

    fn scale(&self, c: &Scalar) -> Component {
        match self {
            Component::Hom(a) => Component::Hom(a.scale(c)),
            Component::Ext(a) => Component::Ext(a.scale(c)),
            Component::Vanishing => Component::Vanishing,
        }
    }
}

/// `comps[s][t]` is the block from source summand `s` to target summand `t`.
#[derive(Clone, Debug)]
pub struct DMorphism {
    source: DObject,
    target: DObject,
    comps: Vec<Vec<Component>>,
}

impl DMorphism {
    pub fn zero(source: &DObject, target: &DObject) -> Self {
        let comps = source
            .summands
            .iter()
            .map(|s| target.summands.iter().map(|t| Component::zero_between(s, t)).collect())
            .collect();
        DMorphism {
            source: source.clone(),
            target: target.clone(),
            comps,
        }
    }

    pub fn identity(obj: &DObject) -> Self {
        let mut m = DMorphism::zero(obj, obj);
        for (i, s) in obj.summands.iter().enumerate() {
            m.comps[i][i] = Component::Hom(RepMorphism::identity(&s.rep));
        }
        m
    }

    /// Builds a morphism from explicit blocks; shapes are the caller's responsibility.
    pub fn from_components(source: DObject, target: DObject, comps: Vec<Vec<Component>>) -> Self {
        DMorphism {
            source,
            target,
            comps,
        }
    }

    pub fn source(&self) -> &DObject {
        &self.source
    }

    pub fn target(&self) -> &DObject {
        &self.target
    }

    pub fn component(&self, s: usize, t: usize) -> &Component {
        &self.comps[s][t]
    }

    pub fn set_component(&mut self, s: usize, t: usize, c: Component) {
        self.comps[s][t] = c;
    }

    /// Zero in the derived category: degree-1 blocks are compared by class.
    pub fn is_zero(&self) -> bool {
        let f = self.source.field;
        self.comps.iter().flatten().all(Component::is_zero)
            || self.coordinates().iter().all(|x| f.is_zero(x))
    }

    pub fn add(&self, other: &DMorphism) -> DMorphism {
        DMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self
                .comps
                .iter()
                .zip(&other.comps)
                .map(|(r, q)| r.iter().zip(q).map(|(a, b)| a.add(b)).collect())
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> DMorphism {
        DMorphism {
            source: self.source.clone(),
            target: self.target.clone(),
            comps: self
                .comps
                .iter()
                .map(|r| r.iter().map(|a| a.scale(c)).collect())
                .collect(),
        }
    }

    /// `self ∘ first`; the degree-two part of `Ext ∘ Ext` vanishes.
    pub fn after(&self, first: &DMorphism) -> DMorphism {
        let arrows = self.source.quiver.arrows();
        let a = &first.source;
        let c = &self.target;
        let mut out = DMorphism::zero(a, c);
        for (i, si) in a.summands.iter().enumerate() {
            for (k, sk) in c.summands.iter().enumerate() {
                let mut acc = Component::zero_between(si, sk);
                if matches!(acc, Component::Vanishing) {
                    continue;
                }
                for j in 0..first.target.len() {
                    let term = match (&first.comps[i][j], &self.comps[j][k]) {
                        (Component::Hom(f), Component::Hom(g)) => Component::Hom(g.after(f)),
                        (Component::Hom(f), Component::Ext(g)) => Component::Ext(g.pullback(f, arrows)),
                        (Component::Ext(f), Component::Hom(g)) => {
                            Component::Ext(f.pushforward(g, arrows))
                        }
                        _ => continue,
                    };
                    acc = acc.add(&term);
                }
                out.comps[i][k] = acc;
            }
        }
        out
    }

    /// Coordinates in a fixed basis of `Hom(source, target)`: raw entries for
    /// degree-0 blocks, `Ext^1` coordinates for degree-1 blocks.
    pub fn coordinates(&self) -> Vector {
        let mut out = Vec::new();
        for (i, s) in self.source.summands.iter().enumerate() {
            for (j, t) in self.target.summands.iter().enumerate() {
                match &self.comps[i][j] {
                    Component::Vanishing => {}
                    Component::Hom(h) => out.extend(h.to_vector()),
                    Component::Ext(e) => {
                        out.extend(HomComplex::new(&s.rep, &t.rep).ext_coordinates(e))
                    }
                }
            }
        }
        out
    }

    /// Restriction to the source summand `i` (as a stalk object).
    pub fn restrict_source(&self, i: usize) -> DMorphism {
        DMorphism {
            source: DObject::from_stalk(self.source.summands[i].clone()),
            target: self.target.clone(),
            comps: vec![self.comps[i].clone()],
        }
    }

    /// Corestriction to the target summand `j`.
    pub fn restrict_target(&self, j: usize) -> DMorphism {
        DMorphism {
            source: self.source.clone(),
            target: DObject::from_stalk(self.target.summands[j].clone()),
            comps: self.comps.iter().map(|r| vec![r[j].clone()]).collect(),
        }
    }

    /// The same blocks read as a morphism `source[l] -> target[l]`.
    pub fn shifted(&self, l: i32) -> DMorphism {
        DMorphism {
            source: self.source.shift(l),
            target: self.target.shift(l),
            comps: self.comps.clone(),
        }
    }
}

/// Basis of `Hom(a, b[degree])`, each element a single-block morphism.
pub fn dhom_basis(a: &DObject, b: &DObject, degree: i32) -> Vec<DMorphism> {
    let target = b.shift(degree);
    let mut out = Vec::new();
    for (i, s) in a.summands.iter().enumerate() {
        for (j, t) in target.summands.iter().enumerate() {
            let blocks: Vec<Component> = match t.shift - s.shift {
                0 => hom_basis(&s.rep, &t.rep).into_iter().map(Component::Hom).collect(),
                1 => ext1_basis(&s.rep, &t.rep).into_iter().map(Component::Ext).collect(),
                _ => Vec::new(),
            };
            for c in blocks {
                let mut m = DMorphism::zero(a, &target);
                m.comps[i][j] = c;
                out.push(m);
            }
        }
    }
    out
}

/// `dim Hom(a, b[degree])` without materializing the basis.
pub fn dhom_dim(a: &DObject, b: &DObject, degree: i32) -> usize {
    let mut total = 0;
    for s in &a.summands {
        for t in &b.summands {
            total += match t.shift + degree - s.shift {
                0 => HomComplex::new(&s.rep, &t.rep).hom_dim(),
                1 => HomComplex::new(&s.rep, &t.rep).ext_dim(),
                _ => 0,
            };
        }
    }
    total
}

/// Whether `Hom(a, b[m]) = 0` for every integer `m`.
pub fn fully_orthogonal(a: &DObject, b: &DObject) -> bool {
    a.summands.iter().all(|s| {
        b.summands.iter().all(|t| {
            let hc = HomComplex::new(&s.rep, &t.rep);
            hc.hom_dim() == 0 && hc.ext_dim() == 0
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> (Arc<Quiver>, Field) {
        (Arc::new(Quiver::linear_a(2)), Field::default())
    }

    #[test]
    fn graded_hom_examples() {
        let (q, f) = a2();
        let s1 = DObject::stalk(Representation::simple(q.clone(), f, 0), 0);
        let s2 = DObject::stalk(Representation::simple(q.clone(), f, 1), 0);
        assert_eq!(dhom_basis(&s1, &s2, 1).len(), 1);
        assert_eq!(dhom_basis(&s1, &s1, -1).len(), 0);
        let p1 = DObject::stalk(Representation::projective(q.clone(), f, 0), 1);
        let p2 = DObject::stalk(Representation::projective(q, f, 1), 0);
        assert_eq!(dhom_basis(&p1, &p2, 0).len(), 0);
        assert_eq!(dhom_dim(&s1, &s2, 1), 1);
    }

    #[test]
    fn shift_and_class() {
        let (q, f) = a2();
        let s1 = DObject::stalk(Representation::simple(q, f, 0), 0);
        assert_eq!(s1.shift(1).class(), -s1.class());
        assert!(iso_test(&s1.shift(1).shift(-1), &s1));
        assert!(!iso_test(&s1, &s1.shift(1)));
    }

    #[test]
    fn composition_of_hom_and_ext() {
        // S_1 -> S_2[1] composed with P_1 -> S_1 is zero since P_1 is projective.
        let (q, f) = a2();
        let p1 = DObject::stalk(Representation::projective(q.clone(), f, 0), 0);
        let s1 = DObject::stalk(Representation::simple(q.clone(), f, 0), 0);
        let s2 = DObject::stalk(Representation::simple(q, f, 1), 0);
        let g = &dhom_basis(&s1, &s2, 1)[0];
        let h = &dhom_basis(&p1, &s1, 0)[0];
        let c = g.after(h);
        assert!(c.is_zero());
        assert!(c.coordinates().iter().all(|x| f.is_zero(x)));
        let id = DMorphism::identity(&s1);
        assert_eq!(g.after(&id).coordinates(), g.coordinates());
    }

    #[test]
    fn basic_removes_repeats() {
        let (q, f) = a2();
        let s1 = Representation::simple(q.clone(), f, 0);
        let x = DObject::new(q, f, vec![(s1.clone(), 0), (s1.clone(), 0), (s1, 1)]);
        assert_eq!(x.len(), 3);
        assert_eq!(x.basic().len(), 2);
        assert_eq!(x.grouped().len(), 2);
    }
}
