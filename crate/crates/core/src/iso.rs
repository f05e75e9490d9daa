//! Deciding whether two minimal twisted complexes are isomorphic.
//!
//! Distinctness is only ever reported from invariants: the multiset of
//! `(vertex, shift)` pairs of a minimal complex is the table of Hom into
//! shifted simples, and the g-vector follows from it. Equality is reported
//! only with an explicit isomorphism, found as a closed degree-0 map whose
//! scalar part is invertible. Everything else is `Unknown`.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec::Vec;

use crate::algebra::Gamma;
use crate::complex::{Morphism, TwistedComplex};
use crate::hom::{hom_differential, HomCell};
use crate::linalg::{axpy, kernel_basis, rank, SparseMatrix, SparseVec};
use crate::quiver::Vertex;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Witness {
    /// Different `(vertex, shift)` multisets.
    Shape { left: Vec<(Vertex, i32)>, right: Vec<(Vertex, i32)> },
    /// Different numbers of indecomposable blocks with a given shape.
    Blocks { shape: Vec<(Vertex, i32)> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IsoVerdict {
    /// An isomorphism `left -> right<-twist>` of degree 0 and weight `twist`.
    Equal { twist: i32, map: Morphism },
    Distinct(Witness),
    Unknown(String),
}

impl IsoVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, IsoVerdict::Equal { .. })
    }

    pub fn is_distinct(&self) -> bool {
        matches!(self, IsoVerdict::Distinct(_))
    }
}

/// Number of random combinations tried before giving up.
const ATTEMPTS: u64 = 8;

/// Deterministic pseudo-random small integers.
struct Lcg(u64);

impl Lcg {
    fn next(&mut self) -> i64 {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((self.0 >> 33) % 97) as i64 - 48
    }
}

/// Weight twist `w` with `graded_shape(b) = graded_shape(a)` shifted by `w`.
fn matching_twist(a: &TwistedComplex, b: &TwistedComplex) -> Option<i32> {
    let (Some(ma), Some(mb)) = (a.min_weight(), b.min_weight()) else {
        return Some(0);
    };
    let w = mb - ma;
    let shifted: Vec<_> = a.graded_shape().into_iter().map(|(v, s, x)| (v, s, x + w)).collect();
    let mut shifted = shifted;
    shifted.sort();
    (shifted == b.graded_shape()).then_some(w)
}

/// Scalar part of `f` restricted to generator pairs with equal
/// `(vertex, shift, weight + twist)`, as square blocks; `None` if some block
/// is singular.
fn scalar_blocks_invertible(a: &TwistedComplex, b: &TwistedComplex, twist: i32, f: &Morphism, g: &Gamma) -> bool {
    let mut classes: BTreeMap<(Vertex, i32, i32), (Vec<usize>, Vec<usize>)> = BTreeMap::new();
    for (c, gen) in a.generators().iter().enumerate() {
        classes.entry((gen.vertex, gen.shift, gen.weight + twist)).or_default().0.push(c);
    }
    for (r, gen) in b.generators().iter().enumerate() {
        classes.entry((gen.vertex, gen.shift, gen.weight)).or_default().1.push(r);
    }
    for ((v, _, _), (cols, rows)) in &classes {
        if cols.len() != rows.len() {
            return false;
        }
        let mut m = SparseMatrix::zeros(g.field(), rows.len(), cols.len());
        for (i, r) in rows.iter().enumerate() {
            for (j, c) in cols.iter().enumerate() {
                if let Some(s) = f.entries.get(&(*r, *c)).and_then(|x| x.scalar_part(*v)) {
                    m.set(i, j, s.clone());
                }
            }
        }
        if rank(&m) != rows.len() {
            return false;
        }
    }
    true
}

/// Searches for a graded isomorphism `a -> b` of weight `twist`.
pub fn find_isomorphism(g: &Gamma, a: &TwistedComplex, b: &TwistedComplex, twist: i32) -> Option<Morphism> {
    let cell = HomCell::new(g, a, b, 0, twist);
    let next = HomCell::new(g, a, b, 1, twist);
    let cocycles = kernel_basis(&hom_differential(g, a, b, &cell, &next));
    if a.is_empty() && b.is_empty() {
        return Some(Morphism::zero(0, twist));
    }
    let mut rng = Lcg(0x9e3779b97f4a7c15);
    for attempt in 0..ATTEMPTS {
        let mut v = SparseVec::new();
        for z in &cocycles {
            let c = g.scalar(if attempt == 0 { 1 } else { rng.next() });
            v = axpy(&v, &c, z, false);
        }
        let f = cell.to_morphism(&v);
        if scalar_blocks_invertible(a, b, twist, &f, g) {
            return Some(f);
        }
    }
    None
}

/// Compares two complexes up to isomorphism and a global weight twist.
/// Inputs that are not minimal are reduced first.
pub fn equal_upto_iso(g: &Gamma, a: &TwistedComplex, b: &TwistedComplex) -> IsoVerdict {
    let a = if a.is_minimal() { a.clone() } else { a.reduce() };
    let b = if b.is_minimal() { b.clone() } else { b.reduce() };
    let (sa, sb) = (a.shape(), b.shape());
    if sa != sb {
        return IsoVerdict::Distinct(Witness::Shape { left: sa, right: sb });
    }
    let Some(twist) = matching_twist(&a, &b) else {
        return IsoVerdict::Unknown(String::from("weights differ by more than a global twist"));
    };
    match find_isomorphism(g, &a, &b, twist) {
        Some(map) => IsoVerdict::Equal { twist, map },
        None => IsoVerdict::Unknown(String::from("no invertible closed map found")),
    }
}

/// Compares two lists of indecomposable blocks as sets, allowing an
/// independent weight twist per block.
pub fn blocks_equal_upto_iso(g: &Gamma, left: &[TwistedComplex], right: &[TwistedComplex]) -> IsoVerdict {
    let mut ls: Vec<Vec<(Vertex, i32)>> = left.iter().map(|b| b.shape()).collect();
    let mut rs: Vec<Vec<(Vertex, i32)>> = right.iter().map(|b| b.shape()).collect();
    ls.sort();
    rs.sort();
    if ls != rs {
        let mut a: Vec<(Vertex, i32)> = ls.concat();
        let mut b: Vec<(Vertex, i32)> = rs.concat();
        a.sort();
        b.sort();
        if a != b {
            return IsoVerdict::Distinct(Witness::Shape { left: a, right: b });
        }
        let shape = ls.iter().find(|s| !rs.contains(s)).or_else(|| rs.iter().find(|s| !ls.contains(s)));
        return IsoVerdict::Distinct(Witness::Blocks { shape: shape.cloned().unwrap_or_default() });
    }
    let mut used = alloc::vec![false; right.len()];
    let mut total = Morphism::zero(0, 0);
    for l in left {
        let mut found = false;
        for (k, r) in right.iter().enumerate() {
            if used[k] || r.shape() != l.shape() {
                continue;
            }
            if let IsoVerdict::Equal { map, .. } = equal_upto_iso(g, l, r) {
                used[k] = true;
                found = true;
                if total.entries.is_empty() {
                    total = map;
                }
                break;
            }
        }
        if !found {
            return IsoVerdict::Unknown(String::from("no block isomorphism found"));
        }
    }
    IsoVerdict::Equal { twist: 0, map: total }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simple_resolution;
    use crate::quiver::Quiver;
    use crate::scalar::Field;
    use crate::tensor::{tensor_ideal, Sign};

    #[test]
    fn gamma_equals_itself_and_differs_from_its_shift() {
        let g = Gamma::new(Quiver::a(2), Field::Rational);
        let gamma = TwistedComplex::gamma(&g);
        match equal_upto_iso(&g, &gamma, &gamma) {
            IsoVerdict::Equal { twist, map } => {
                assert_eq!(twist, 0);
                assert_eq!(map, Morphism::identity(&gamma, &g));
            }
            other => panic!("{other:?}"),
        }
        assert!(equal_upto_iso(&g, &gamma, &gamma.shift(1)).is_distinct());
    }

    #[test]
    fn resolution_equals_its_twist_and_reordering() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        let p = simple_resolution(&g, 1);
        let q = p.twist(3).permute(&[0, 2, 1, 3]);
        assert!(equal_upto_iso(&g, &p, &q).is_equal());
    }

    #[test]
    fn inverse_round_trip_is_isomorphic_to_input() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        let p = simple_resolution(&g, 0);
        let back = tensor_ideal(&g, &tensor_ideal(&g, &p, 1, Sign::Plus), 1, Sign::Minus).reduce();
        assert!(equal_upto_iso(&g, &p, &back).is_equal());
    }
}
