//! Twisted complexes over Gamma: finite sums of shifted, weight-twisted
//! projectives `e_v Gamma[shift]<weight>` with a differential matrix of
//! algebra elements.
//!
//! Conventions. Entry `(r, c)` is left multiplication by an element of
//! `e_{v_r} Gamma e_{v_c}`, a map from generator `c` to generator `r`. It has
//! cohomological degree `shift(r) - shift(c) + 1` and path weight
//! `weight(c) - weight(r)`. The total differential on generator `c` is
//! `(-1)^{shift(c)} d + delta`, so the Maurer-Cartan equation reads
//! `(-1)^{shift(r)} d(delta_rc) + (delta delta)_rc = 0`.
//!
//! Every entry has non-negative path weight and a weight-0 entry is a scalar
//! that lowers the shift by one, so ordering generators by `(weight, shift)`
//! is always a strict filtration. Validation checks exactly this.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgebraElement, Gamma};
use crate::quiver::Vertex;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub vertex: Vertex,
    pub shift: i32,
    pub weight: i32,
}

impl Generator {
    pub fn new(vertex: Vertex, shift: i32, weight: i32) -> Generator {
        Generator { vertex, shift, weight }
    }

    /// `(-1)^shift` as a sign.
    pub fn parity(&self) -> bool {
        self.shift.rem_euclid(2) == 1
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexError {
    IndexOutOfRange { row: usize, col: usize },
    WrongEndpoints { row: usize, col: usize },
    WrongDegree { row: usize, col: usize, expected: i32 },
    WrongWeight { row: usize, col: usize, expected: i32 },
    NotFiltered { row: usize, col: usize },
    MaurerCartan { row: usize, col: usize },
    NotClosed { row: usize, col: usize },
}

impl fmt::Display for ComplexError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ComplexError::IndexOutOfRange { row, col } => write!(f, "entry ({row}, {col}) out of range"),
            ComplexError::WrongEndpoints { row, col } => {
                write!(f, "entry ({row}, {col}) has paths with wrong endpoints")
            }
            ComplexError::WrongDegree { row, col, expected } => {
                write!(f, "entry ({row}, {col}) must have degree {expected}")
            }
            ComplexError::WrongWeight { row, col, expected } => {
                write!(f, "entry ({row}, {col}) must have weight {expected}")
            }
            ComplexError::NotFiltered { row, col } => {
                write!(f, "entry ({row}, {col}) does not lower (weight, shift)")
            }
            ComplexError::MaurerCartan { row, col } => {
                write!(f, "Maurer-Cartan equation fails at ({row}, {col})")
            }
            ComplexError::NotClosed { row, col } => write!(f, "morphism is not closed at ({row}, {col})"),
        }
    }
}

pub type Matrix = BTreeMap<(usize, usize), AlgebraElement>;

fn insert_entry(m: &mut Matrix, key: (usize, usize), value: AlgebraElement) {
    if value.is_zero() {
        m.remove(&key);
    } else {
        m.insert(key, value);
    }
}

fn add_to_entry(m: &mut Matrix, key: (usize, usize), value: &AlgebraElement) {
    let sum = match m.get(&key) {
        Some(old) => old.add(value),
        None => value.clone(),
    };
    insert_entry(m, key, sum);
}

/// Product of matrices of algebra elements: `(a b)_{rc} = sum_m a_{rm} b_{mc}`.
pub fn matrix_mul(a: &Matrix, b: &Matrix) -> Matrix {
    let mut by_row: BTreeMap<usize, Vec<(usize, &AlgebraElement)>> = BTreeMap::new();
    for (&(m, c), x) in b {
        by_row.entry(m).or_default().push((c, x));
    }
    let mut out = Matrix::new();
    for (&(r, m), x) in a {
        if let Some(row) = by_row.get(&m) {
            for &(c, y) in row {
                add_to_entry(&mut out, (r, c), &x.mul(y));
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TwistedComplex {
    generators: Vec<Generator>,
    delta: Matrix,
}

impl TwistedComplex {
    /// Builds a complex and checks endpoints, degrees, weights and the
    /// filtration (not Maurer-Cartan; see [`TwistedComplex::validate`]).
    pub fn new(generators: Vec<Generator>, delta: Matrix) -> Result<TwistedComplex, ComplexError> {
        let t = TwistedComplex::from_parts(generators, delta);
        t.check_shape()?;
        Ok(t)
    }

    pub(crate) fn from_parts(generators: Vec<Generator>, mut delta: Matrix) -> TwistedComplex {
        delta.retain(|_, v| !v.is_zero());
        TwistedComplex { generators, delta }
    }

    pub fn zero() -> TwistedComplex {
        TwistedComplex::default()
    }

    /// `e_v Gamma` with no shift or twist.
    pub fn free(v: Vertex) -> TwistedComplex {
        TwistedComplex::from_parts(alloc::vec![Generator::new(v, 0, 0)], Matrix::new())
    }

    /// `Gamma` itself, one generator per vertex.
    pub fn gamma(g: &Gamma) -> TwistedComplex {
        let gens = g.quiver().vertices().map(|v| Generator::new(v, 0, 0)).collect();
        TwistedComplex::from_parts(gens, Matrix::new())
    }

    pub fn generators(&self) -> &[Generator] {
        &self.generators
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn delta(&self) -> &Matrix {
        &self.delta
    }

    pub fn entry(&self, row: usize, col: usize) -> Option<&AlgebraElement> {
        self.delta.get(&(row, col))
    }

    /// Required degree of entry `(r, c)`.
    pub fn entry_degree(&self, r: usize, c: usize) -> i32 {
        self.generators[r].shift - self.generators[c].shift + 1
    }

    /// Required path weight of entry `(r, c)`.
    pub fn entry_weight(&self, r: usize, c: usize) -> i32 {
        self.generators[c].weight - self.generators[r].weight
    }

    fn check_shape(&self) -> Result<(), ComplexError> {
        let n = self.generators.len();
        for (&(row, col), x) in &self.delta {
            if row >= n || col >= n {
                return Err(ComplexError::IndexOutOfRange { row, col });
            }
            let (gr, gc) = (self.generators[row], self.generators[col]);
            let degree = self.entry_degree(row, col);
            let weight = self.entry_weight(row, col);
            for (p, _) in x.terms() {
                if p.source() != gc.vertex || p.target() != gr.vertex {
                    return Err(ComplexError::WrongEndpoints { row, col });
                }
                if p.degree() != degree {
                    return Err(ComplexError::WrongDegree { row, col, expected: degree });
                }
                if p.weight() as i32 != weight {
                    return Err(ComplexError::WrongWeight { row, col, expected: weight });
                }
            }
            if (gr.weight, gr.shift) >= (gc.weight, gc.shift) {
                return Err(ComplexError::NotFiltered { row, col });
            }
        }
        Ok(())
    }

    /// `(-1)^{shift r} d(delta) + delta delta`, the Maurer-Cartan defect.
    pub fn mc_defect(&self, g: &Gamma) -> Matrix {
        let mut out = matrix_mul(&self.delta, &self.delta);
        for (&(r, c), x) in &self.delta {
            let mut dx = g.differential(x);
            if self.generators[r].parity() {
                dx = dx.neg();
            }
            add_to_entry(&mut out, (r, c), &dx);
        }
        out
    }

    /// Shape checks plus the Maurer-Cartan equation.
    pub fn validate(&self, g: &Gamma) -> Result<(), ComplexError> {
        self.check_shape()?;
        if let Some((&(row, col), _)) = self.mc_defect(g).iter().next() {
            return Err(ComplexError::MaurerCartan { row, col });
        }
        Ok(())
    }

    /// `T[n]`: shifts increase by `n`, entries pick up `(-1)^n`.
    pub fn shift(&self, n: i32) -> TwistedComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator::new(g.vertex, g.shift + n, g.weight))
            .collect();
        let odd = n.rem_euclid(2) == 1;
        let delta = self
            .delta
            .iter()
            .map(|(k, x)| (*k, if odd { x.neg() } else { x.clone() }))
            .collect();
        TwistedComplex { generators, delta }
    }

    /// Weight twist: every generator weight increases by `w`.
    pub fn twist(&self, w: i32) -> TwistedComplex {
        let generators = self
            .generators
            .iter()
            .map(|g| Generator::new(g.vertex, g.shift, g.weight + w))
            .collect();
        TwistedComplex { generators, delta: self.delta.clone() }
    }

    pub fn direct_sum(&self, other: &TwistedComplex) -> TwistedComplex {
        let off = self.len();
        let mut generators = self.generators.clone();
        generators.extend_from_slice(&other.generators);
        let mut delta = self.delta.clone();
        for (&(r, c), x) in &other.delta {
            delta.insert((r + off, c + off), x.clone());
        }
        TwistedComplex { generators, delta }
    }

    /// Alternating count of generators per vertex, the class in K_0.
    pub fn g_vector(&self, num_vertices: usize) -> Vec<i64> {
        let mut v = alloc::vec![0i64; num_vertices];
        for g in &self.generators {
            v[g.vertex] += if g.parity() { -1 } else { 1 };
        }
        v
    }

    /// Sorted `(vertex, shift)` pairs: for a reduced complex these are the
    /// dimensions of Hom into shifted simples, an isomorphism invariant.
    pub fn shape(&self) -> Vec<(Vertex, i32)> {
        let mut s: Vec<_> = self.generators.iter().map(|g| (g.vertex, g.shift)).collect();
        s.sort();
        s
    }

    /// Sorted `(vertex, shift, weight)` triples.
    pub fn graded_shape(&self) -> Vec<(Vertex, i32, i32)> {
        let mut s: Vec<_> = self.generators.iter().map(|g| (g.vertex, g.shift, g.weight)).collect();
        s.sort();
        s
    }

    pub fn min_weight(&self) -> Option<i32> {
        self.generators.iter().map(|g| g.weight).min()
    }

    /// Scalar entry usable as a Gaussian elimination pivot, first by column
    /// then by row.
    fn find_pivot(&self) -> Option<(usize, usize, Scalar)> {
        let mut best: Option<(usize, usize, Scalar)> = None;
        for (&(r, c), x) in &self.delta {
            let gr = self.generators[r];
            let gc = self.generators[c];
            if gr.weight != gc.weight {
                continue;
            }
            // weight-0 entries are multiples of the trivial path
            if let Some(s) = x.scalar_part(gr.vertex) {
                let better = match &best {
                    None => true,
                    Some((br, bc, _)) => (c, r) < (*bc, *br),
                };
                if better {
                    best = Some((r, c, s.clone()));
                }
            }
        }
        best
    }

    /// Eliminates one scalar pivot `c -> r`; the remaining generators keep
    /// their relative order.
    fn eliminate(&self, r: usize, c: usize, lambda: &Scalar) -> TwistedComplex {
        let inv = lambda.inv();
        let keep: Vec<usize> = (0..self.len()).filter(|&k| k != r && k != c).collect();
        let mut index = BTreeMap::new();
        for (new, &old) in keep.iter().enumerate() {
            index.insert(old, new);
        }
        let mut delta = Matrix::new();
        for (&(x, y), e) in &self.delta {
            if let (Some(&nx), Some(&ny)) = (index.get(&x), index.get(&y)) {
                delta.insert((nx, ny), e.clone());
            }
        }
        let into: Vec<(usize, &AlgebraElement)> = keep
            .iter()
            .filter_map(|&x| self.delta.get(&(x, c)).map(|e| (x, e)))
            .collect();
        let from: Vec<(usize, &AlgebraElement)> = keep
            .iter()
            .filter_map(|&y| self.delta.get(&(r, y)).map(|e| (y, e)))
            .collect();
        for &(x, a) in &into {
            let a = a.scale(&inv);
            for &(y, b) in &from {
                let correction = a.mul(b).neg();
                add_to_entry(&mut delta, (index[&x], index[&y]), &correction);
            }
        }
        let generators = keep.iter().map(|&k| self.generators[k]).collect();
        TwistedComplex { generators, delta }
    }

    /// Gaussian elimination of all scalar entries. The result is minimal and
    /// homotopy equivalent to the input.
    pub fn reduce(&self) -> TwistedComplex {
        let mut t = self.clone();
        while let Some((r, c, lambda)) = t.find_pivot() {
            t = t.eliminate(r, c, &lambda);
        }
        t
    }

    pub fn is_minimal(&self) -> bool {
        self.find_pivot().is_none()
    }

    /// Generators reordered by `perm` (new position `k` holds old `perm[k]`).
    pub fn permute(&self, perm: &[usize]) -> TwistedComplex {
        let mut inverse = alloc::vec![0; perm.len()];
        for (new, &old) in perm.iter().enumerate() {
            inverse[old] = new;
        }
        let generators = perm.iter().map(|&k| self.generators[k]).collect();
        let delta = self
            .delta
            .iter()
            .map(|(&(r, c), x)| ((inverse[r], inverse[c]), x.clone()))
            .collect();
        TwistedComplex { generators, delta }
    }

    /// Canonical generator order: by `(weight, shift, vertex)`, stable.
    pub fn sorted(&self) -> TwistedComplex {
        let mut perm: Vec<usize> = (0..self.len()).collect();
        perm.sort_by_key(|&k| {
            let g = self.generators[k];
            (core::cmp::Reverse(g.weight), core::cmp::Reverse(g.shift), g.vertex, k)
        });
        self.permute(&perm)
    }
}

/// A homogeneous map of twisted complexes `source -> target` of
/// cohomological degree `degree` and weight `weight`. Entry `(r, c)` goes
/// from generator `c` of the source to generator `r` of the target and has
/// path degree `degree + shift(r) - shift(c)` and path weight
/// `weight + weight(c) - weight(r)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Morphism {
    pub degree: i32,
    pub weight: i32,
    pub entries: Matrix,
}

impl Morphism {
    pub fn zero(degree: i32, weight: i32) -> Morphism {
        Morphism { degree, weight, entries: Matrix::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn identity(t: &TwistedComplex, g: &Gamma) -> Morphism {
        let mut entries = Matrix::new();
        for (k, gen) in t.generators().iter().enumerate() {
            entries.insert((k, k), g.e(gen.vertex));
        }
        Morphism { degree: 0, weight: 0, entries }
    }

    /// `self after other`.
    pub fn compose(&self, other: &Morphism) -> Morphism {
        Morphism {
            degree: self.degree + other.degree,
            weight: self.weight + other.weight,
            entries: matrix_mul(&self.entries, &other.entries),
        }
    }

    pub fn add(&self, other: &Morphism) -> Morphism {
        let mut entries = self.entries.clone();
        for (k, x) in &other.entries {
            add_to_entry(&mut entries, *k, x);
        }
        Morphism { degree: self.degree, weight: self.weight, entries }
    }

    pub fn scale(&self, s: &Scalar) -> Morphism {
        let mut entries = Matrix::new();
        for (k, x) in &self.entries {
            insert_entry(&mut entries, *k, x.scale(s));
        }
        Morphism { degree: self.degree, weight: self.weight, entries }
    }

    /// Hom differential `D(f) = d_N f - (-1)^p f d_M`, entrywise
    /// `(-1)^{shift r} d(f_rc) + (delta_N f)_rc - (-1)^p (f delta_M)_rc`.
    pub fn differential(&self, g: &Gamma, source: &TwistedComplex, target: &TwistedComplex) -> Morphism {
        let mut out = matrix_mul(&target.delta, &self.entries);
        for (&(r, c), x) in &self.entries {
            let mut dx = g.differential(x);
            if target.generators[r].parity() {
                dx = dx.neg();
            }
            add_to_entry(&mut out, (r, c), &dx);
        }
        let right = matrix_mul(&self.entries, &source.delta);
        let odd = self.degree.rem_euclid(2) == 1;
        for (k, x) in &right {
            add_to_entry(&mut out, *k, &if odd { x.clone() } else { x.neg() });
        }
        Morphism { degree: self.degree + 1, weight: self.weight, entries: out }
    }

    /// Checks endpoints and bidegree of every entry.
    pub fn check_shape(&self, source: &TwistedComplex, target: &TwistedComplex) -> bool {
        self.entries.iter().all(|(&(r, c), x)| {
            if r >= target.len() || c >= source.len() {
                return false;
            }
            let (gr, gc) = (target.generators[r], source.generators[c]);
            let degree = self.degree + gr.shift - gc.shift;
            let weight = self.weight + gc.weight - gr.weight;
            x.terms().all(|(p, _)| {
                p.source() == gc.vertex
                    && p.target() == gr.vertex
                    && p.degree() == degree
                    && p.weight() as i32 == weight
            })
        })
    }
}

/// `Cone(phi: source -> target)` for a closed degree-0 weight-0 map: the
/// generators of `source[1]` followed by those of `target`, with
/// differential `[[-delta_source, 0], [phi, delta_target]]`.
pub fn cone(
    g: &Gamma,
    source: &TwistedComplex,
    target: &TwistedComplex,
    phi: &Morphism,
) -> Result<TwistedComplex, ComplexError> {
    if phi.degree != 0 || phi.weight != 0 || !phi.check_shape(source, target) {
        return Err(ComplexError::NotClosed { row: 0, col: 0 });
    }
    if let Some((&(row, col), _)) = phi.differential(g, source, target).entries.iter().next() {
        return Err(ComplexError::NotClosed { row, col });
    }
    let mut t = source.shift(1).direct_sum(target);
    let off = source.len();
    for (&(r, c), x) in &phi.entries {
        t.delta.insert((r + off, c), x.clone());
    }
    Ok(t)
}

/// The projective resolution of the simple `S_i`:
/// `e_i Gamma[2]<2> + R_i[1]<1> + e_i Gamma`, where `R_i` has one summand
/// `e_{s(a)} Gamma` per arrow `a` into `i` and one summand `e_{t(b)} Gamma`
/// per arrow `b` out of `i`. Entries: `-a*` and `b` from the top, `a` and
/// `b*` into the bottom, and `t_i` from top to bottom.
pub fn simple_resolution(g: &Gamma, i: Vertex) -> TwistedComplex {
    let q = g.quiver();
    let mut gens = alloc::vec![Generator::new(i, 2, 2)];
    let mut delta = Matrix::new();
    let mut middle = Vec::new();
    for a in q.arrows_into(i) {
        gens.push(Generator::new(q.arrow(a).source, 1, 1));
        middle.push((gens.len() - 1, g.dual(a).neg(), g.arrow(a)));
    }
    for b in q.arrows_out_of(i) {
        gens.push(Generator::new(q.arrow(b).target, 1, 1));
        middle.push((gens.len() - 1, g.arrow(b), g.dual(b)));
    }
    gens.push(Generator::new(i, 0, 0));
    let bottom = gens.len() - 1;
    for (k, down, up) in middle {
        delta.insert((k, 0), down);
        delta.insert((bottom, k), up);
    }
    delta.insert((bottom, 0), g.t(i));
    TwistedComplex::from_parts(gens, delta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;
    use crate::scalar::Field;

    #[test]
    fn resolution_is_maurer_cartan() {
        for q in [Quiver::a(2), Quiver::a(3), Quiver::d(4), Quiver::kronecker(2)] {
            let g = Gamma::new(q, Field::Rational);
            for i in g.quiver().vertices() {
                let p = simple_resolution(&g, i);
                assert_eq!(p.validate(&g), Ok(()));
                assert!(p.is_minimal());
            }
        }
    }

    #[test]
    fn a2_resolution_entries() {
        let g = Gamma::new(Quiver::a(2), Field::Rational);
        let p = simple_resolution(&g, 0);
        assert_eq!(p.generators(), &[Generator::new(0, 2, 2), Generator::new(1, 1, 1), Generator::new(0, 0, 0)]);
        assert_eq!(p.entry(1, 0), Some(&g.arrow(0)));
        assert_eq!(p.entry(2, 1), Some(&g.dual(0)));
        assert_eq!(p.entry(2, 0), Some(&g.t(0)));
    }

    #[test]
    fn shift_round_trip_and_cone_of_identity() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        let p = simple_resolution(&g, 1);
        assert_eq!(p.shift(0), p);
        assert_eq!(p.shift(1).shift(-1), p);
        assert_eq!(p.shift(1).validate(&g), Ok(()));
        let e = TwistedComplex::free(1);
        let c = cone(&g, &e, &e, &Morphism::identity(&e, &g)).unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(c.validate(&g), Ok(()));
        assert!(c.reduce().is_empty());
        let z = cone(&g, &p, &e, &Morphism::zero(0, 0)).unwrap();
        assert_eq!(z, p.shift(1).direct_sum(&e));
    }

    #[test]
    fn non_closed_cone_is_rejected() {
        let g = Gamma::new(Quiver::a(2), Field::Rational);
        let p = simple_resolution(&g, 0);
        // e_1 Gamma -> top generator of pS_1 (a degree-0 map that is not closed)
        let mut m = Morphism::zero(0, 0);
        m.entries.insert((0, 0), g.e(0));
        let bad = TwistedComplex::free(0).twist(2).shift(2);
        assert!(cone(&g, &bad, &p, &m).is_err());
    }
}
