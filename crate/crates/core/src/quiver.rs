//! Acyclic quivers, their paths, Euler forms and Grothendieck-group classes.
//!
//! Vertices and arrows are 0-indexed in memory. The text and JSON formats
//! (see [`crate::io`]) use 1-indexed vertices.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::integer_determinant;

/// A path is a sequence of composable arrows; trivial paths have no arrows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
}

#[derive(Clone, Debug)]
pub struct Quiver {
    vertices: usize,
    arrows: Vec<(usize, usize)>,
    topo: Vec<usize>,
    paths: Vec<Path>,
    /// `between[s][t]` lists the ids of all paths from `s` to `t`.
    between: Vec<Vec<Vec<usize>>>,
    /// Position of a path inside its `between` list.
    position: Vec<usize>,
    extend: HashMap<(usize, usize), usize>,
}

impl PartialEq for Quiver {
    fn eq(&self, other: &Self) -> bool {
        self.vertices == other.vertices && self.arrows == other.arrows
    }
}

impl Eq for Quiver {}

impl Quiver {
    /// Builds a quiver from 0-indexed arrows, rejecting directed cycles.
    pub fn new(vertices: usize, arrows: Vec<(usize, usize)>) -> Result<Self> {
        if vertices == 0 {
            return Err(Error::Parse("a quiver needs at least one vertex".into()));
        }
        for &(s, t) in &arrows {
            if s >= vertices || t >= vertices {
                return Err(Error::Parse(format!(
                    "arrow {}->{} leaves the vertex range 1..={vertices}",
                    s + 1,
                    t + 1
                )));
            }
        }
        let topo = validate_acyclic(vertices, &arrows)?;
        let mut q = Quiver {
            vertices,
            arrows,
            topo,
            paths: Vec::new(),
            between: vec![vec![Vec::new(); vertices]; vertices],
            position: Vec::new(),
            extend: HashMap::new(),
        };
        q.build_paths();
        Ok(q)
    }

    /// Linearly oriented A_n: 1 -> 2 -> ... -> n.
    pub fn linear_a(n: usize) -> Self {
        let arrows = (0..n.saturating_sub(1)).map(|i| (i, i + 1)).collect();
        Quiver::new(n, arrows).expect("linear A_n is acyclic")
    }

    /// Kronecker quiver 1 => 2.
    pub fn kronecker() -> Self {
        Quiver::new(2, vec![(0, 1), (0, 1)]).expect("acyclic")
    }

    fn build_paths(&mut self) {
        // Breadth-first extension from trivial paths; terminates because Q is acyclic.
        let mut frontier = Vec::new();
        for v in 0..self.vertices {
            frontier.push(self.push_path(Path {
                start: v,
                end: v,
                arrows: vec![],
            }));
        }
        while let Some(pid) = frontier.pop() {
            let end = self.paths[pid].end;
            for (a, &(s, t)) in self.arrows.clone().iter().enumerate() {
                if s != end {
                    continue;
                }
                let mut arrows = self.paths[pid].arrows.clone();
                arrows.push(a);
                let start = self.paths[pid].start;
                let id = self.push_path(Path {
                    start,
                    end: t,
                    arrows,
                });
                self.extend.insert((pid, a), id);
                frontier.push(id);
            }
        }
    }

    fn push_path(&mut self, p: Path) -> usize {
        let id = self.paths.len();
        let list = &mut self.between[p.start][p.end];
        self.position.push(list.len());
        list.push(id);
        self.paths.push(p);
        id
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn arrows(&self) -> &[(usize, usize)] {
        &self.arrows
    }

    pub fn arrow_count(&self) -> usize {
        self.arrows.len()
    }

    pub fn topological_order(&self) -> &[usize] {
        &self.topo
    }

    pub fn path(&self, id: usize) -> &Path {
        &self.paths[id]
    }

    pub fn paths_between(&self, s: usize, t: usize) -> &[usize] {
        &self.between[s][t]
    }

    pub fn path_position(&self, id: usize) -> usize {
        self.position[id]
    }

    /// The path `p` followed by arrow `a`, if composable.
    pub fn extend(&self, p: usize, a: usize) -> Option<usize> {
        self.extend.get(&(p, a)).copied()
    }

    pub fn trivial_path(&self, v: usize) -> usize {
        self.between[v][v][0]
    }

    /// Number of paths from `s` to `t`, i.e. `dim (P_s)_t`.
    pub fn path_count(&self, s: usize, t: usize) -> usize {
        self.between[s][t].len()
    }

    /// The quiver with every arrow reversed.
    pub fn opposite(&self) -> Quiver {
        Quiver::new(self.vertices, self.arrows.iter().map(|&(s, t)| (t, s)).collect())
            .expect("opposite of an acyclic quiver is acyclic")
    }

    /// `<a, b> = sum_i a_i b_i - sum_{x -> y} a_x b_y`.
    pub fn euler_form(&self, a: &ClassVector, b: &ClassVector) -> i64 {
        assert_eq!(a.len(), self.vertices);
        assert_eq!(b.len(), self.vertices);
        let diag: i64 = a.0.iter().zip(&b.0).map(|(x, y)| x * y).sum();
        let off: i64 = self.arrows.iter().map(|&(s, t)| a.0[s] * b.0[t]).sum();
        diag - off
    }
}

impl fmt::Display for Quiver {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(n={}; ", self.vertices)?;
        let arrows: Vec<String> = self
            .arrows
            .iter()
            .map(|(s, t)| format!("{}->{}", s + 1, t + 1))
            .collect();
        write!(f, "{})", arrows.join(", "))
    }
}

/// Kahn's algorithm; smallest available vertex first, so the order is deterministic.
pub fn validate_acyclic(vertices: usize, arrows: &[(usize, usize)]) -> Result<Vec<usize>> {
    let mut indeg = vec![0usize; vertices];
    for &(_, t) in arrows {
        indeg[t] += 1;
    }
    let mut order = Vec::with_capacity(vertices);
    let mut ready: std::collections::BTreeSet<usize> =
        (0..vertices).filter(|&v| indeg[v] == 0).collect();
    while let Some(v) = ready.pop_first() {
        order.push(v);
        for &(s, t) in arrows {
            if s == v {
                indeg[t] -= 1;
                if indeg[t] == 0 {
                    ready.insert(t);
                }
            }
        }
    }
    if order.len() < vertices {
        let stuck = (0..vertices).find(|&v| indeg[v] > 0).unwrap_or(0);
        return Err(Error::CyclicQuiver(stuck + 1));
    }
    Ok(order)
}

/// Class in the Grothendieck group `Z^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ClassVector(pub Vec<i64>);

impl ClassVector {
    pub fn zero(n: usize) -> Self {
        ClassVector(vec![0; n])
    }

    pub fn unit(n: usize, i: usize) -> Self {
        let mut v = vec![0; n];
        v[i] = 1;
        ClassVector(v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Class of `X[shift]` given the class of `X`.
    pub fn shifted(&self, shift: i32) -> Self {
        if shift.rem_euclid(2) == 0 {
            self.clone()
        } else {
            -self.clone()
        }
    }
}

impl Add for ClassVector {
    type Output = ClassVector;
    fn add(self, rhs: Self) -> Self {
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for ClassVector {
    type Output = ClassVector;
    fn sub(self, rhs: Self) -> Self {
        ClassVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for ClassVector {
    type Output = ClassVector;
    fn neg(self) -> Self {
        ClassVector(self.0.iter().map(|a| -a).collect())
    }
}

/// Determinant of the square matrix whose rows are the given classes; the
/// classes form a Z-basis exactly when this is +-1.
pub fn class_basis_determinant(classes: &[ClassVector]) -> i128 {
    let rows: Vec<Vec<i64>> = classes.iter().map(|c| c.0.clone()).collect();
    integer_determinant(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topological_orders() {
        assert_eq!(Quiver::linear_a(2).topological_order(), &[0, 1]);
        assert_eq!(Quiver::kronecker().topological_order(), &[0, 1]);
        let q = Quiver::new(3, vec![(2, 0), (0, 1)]).unwrap();
        assert_eq!(q.topological_order(), &[2, 0, 1]);
    }

    #[test]
    fn loops_and_cycles_are_rejected() {
        assert_eq!(Quiver::new(1, vec![(0, 0)]), Err(Error::CyclicQuiver(1)));
        assert!(matches!(
            Quiver::new(3, vec![(0, 1), (1, 2), (2, 0)]),
            Err(Error::CyclicQuiver(_))
        ));
    }

    #[test]
    fn path_counts() {
        let k = Quiver::kronecker();
        assert_eq!(k.path_count(0, 1), 2);
        assert_eq!(k.path_count(1, 0), 0);
        let a3 = Quiver::linear_a(3);
        assert_eq!(a3.path_count(0, 2), 1);
        let p = a3.paths_between(0, 2)[0];
        assert_eq!(a3.path(p).arrows, vec![0, 1]);
    }

    #[test]
    fn euler_form_examples() {
        let a2 = Quiver::linear_a(2);
        // <P_1, S_2> with P_1 = (1,1), S_2 = (0,1)
        assert_eq!(a2.euler_form(&ClassVector(vec![1, 1]), &ClassVector(vec![0, 1])), 0);
        assert_eq!(a2.euler_form(&ClassVector(vec![3, -2]), &ClassVector::zero(2)), 0);
        let k = Quiver::kronecker();
        assert_eq!(k.euler_form(&ClassVector(vec![1, 1]), &ClassVector(vec![1, 1])), 0);
    }

    #[test]
    fn projective_classes_form_a_basis() {
        for q in [Quiver::linear_a(4), Quiver::kronecker()] {
            let n = q.vertex_count();
            let classes: Vec<ClassVector> = (0..n)
                .map(|x| ClassVector((0..n).map(|y| q.path_count(x, y) as i64).collect()))
                .collect();
            assert_eq!(class_basis_determinant(&classes).abs(), 1);
        }
        let repeated = vec![ClassVector(vec![1, 0]), ClassVector(vec![1, 0])];
        assert_eq!(class_basis_determinant(&repeated), 0);
        let simples = vec![ClassVector::unit(2, 0), ClassVector::unit(2, 1)];
        assert_eq!(class_basis_determinant(&simples), 1);
    }

    #[test]
    fn class_shift_sign() {
        let c = ClassVector(vec![1, 2]);
        assert_eq!(c.shifted(1), ClassVector(vec![-1, -2]));
        assert_eq!(c.shifted(-2), c);
    }
}
