//! Silting objects given by their indecomposable blocks: the braid word map
//! `a -> I_a`, mutation, the silting order and finite intervals.
//!
//! Block `v` of `I_a` is `e_v I_a`. A mutation at block `i` only replaces
//! block `i`, so block indices stay meaningful along mutation sequences.
//! Weight twists of single blocks are ignored by every comparison here.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::Gamma;
use crate::braid::{BraidLetter, BraidWord};
use crate::complex::{cone, Morphism, TwistedComplex};
use crate::hom::{cell_cohomology, positive_extension, tables_against_simples, weight_range, CellCohomology, HomTable};
use crate::iso::{blocks_equal_upto_iso, IsoVerdict};
use crate::linalg::RowEchelon;
use crate::quiver::Vertex;
use crate::tensor::{tensor_ideal, Sign};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Direction {
    Left,
    Right,
}

impl Direction {
    pub fn sign(self) -> Sign {
        match self {
            Direction::Left => Sign::Plus,
            Direction::Right => Sign::Minus,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Provenance {
    Word(BraidWord),
    Mutations(Vec<(usize, Direction)>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SiltingError {
    VertexOutOfRange(Vertex),
    BlockOutOfRange(usize),
    /// The minimal approximation changes between the weight bounds `W - 2`
    /// and `W`.
    Unstable { block: usize, bound: u32 },
    /// A computed approximation was not a closed map.
    NotClosed { block: usize },
    /// A deduplication step could neither prove nor refute isomorphism.
    Undecided(String),
    /// Enumeration stopped after this many objects.
    NodeLimit(usize),
}

impl fmt::Display for SiltingError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SiltingError::VertexOutOfRange(v) => write!(f, "vertex {v} out of range"),
            SiltingError::BlockOutOfRange(b) => write!(f, "block {b} out of range"),
            SiltingError::Unstable { block, bound } => {
                write!(f, "approximation of block {block} not stable between weight bounds {} and {bound}", bound.saturating_sub(2))
            }
            SiltingError::NotClosed { block } => write!(f, "approximation of block {block} is not a chain map"),
            SiltingError::Undecided(why) => write!(f, "isomorphism undecided: {why}"),
            SiltingError::NodeLimit(n) => write!(f, "more than {n} silting objects in the interval"),
        }
    }
}

/// Vanishing of `Hom(M, M[p])`, `p > 0`, checked up to a weight bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub bound: u32,
    /// First nonvanishing cell `(p, weight)`, if any.
    pub witness: Option<(i32, i32)>,
}

impl Certificate {
    pub fn holds(&self) -> bool {
        self.witness.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiltingObject {
    pub blocks: Vec<TwistedComplex>,
    pub provenance: Provenance,
}

impl SiltingObject {
    pub fn gamma(g: &Gamma) -> SiltingObject {
        SiltingObject {
            blocks: g.quiver().vertices().map(TwistedComplex::free).collect(),
            provenance: Provenance::Word(BraidWord::empty()),
        }
    }

    pub fn complex(&self) -> TwistedComplex {
        self.blocks.iter().fold(TwistedComplex::zero(), |acc, b| acc.direct_sum(b))
    }

    pub fn shift(&self, n: i32) -> SiltingObject {
        SiltingObject { blocks: self.blocks.iter().map(|b| b.shift(n)).collect(), provenance: self.provenance.clone() }
    }

    pub fn g_vector(&self, g: &Gamma) -> Vec<Vec<i64>> {
        self.blocks.iter().map(|b| b.g_vector(g.num_vertices())).collect()
    }

    /// Shapes of the blocks, sorted: independent of block order and twists.
    pub fn fingerprint(&self) -> Vec<Vec<(Vertex, i32)>> {
        let mut s: Vec<_> = self.blocks.iter().map(|b| b.shape()).collect();
        s.sort();
        s
    }

    pub fn tables(&self, g: &Gamma, degrees: (i32, i32)) -> Vec<HomTable> {
        tables_against_simples(g, &self.complex(), degrees)
    }

    pub fn certify(&self, g: &Gamma, bound: u32) -> Certificate {
        let m = self.complex();
        Certificate { bound, witness: positive_extension(g, &m, &m, bound) }
    }
}

/// `I_a`: block `v` is `e_v Gamma` tensored with the letters of `a` from
/// left to right, reduced.
pub fn braid_to_silting(g: &Gamma, word: &BraidWord) -> Result<SiltingObject, SiltingError> {
    if let Some(l) = word.letters.iter().find(|l| l.vertex >= g.num_vertices()) {
        return Err(SiltingError::VertexOutOfRange(l.vertex));
    }
    let blocks = g
        .quiver()
        .vertices()
        .map(|v| word.letters.iter().fold(TwistedComplex::free(v), |t, l| apply_letter(g, &t, *l)))
        .collect();
    Ok(SiltingObject { blocks, provenance: Provenance::Word(word.clone()) })
}

/// `T (x) I_i^{+-}`, reduced.
pub fn apply_letter(g: &Gamma, t: &TwistedComplex, l: BraidLetter) -> TwistedComplex {
    let sign = if l.inverse { Sign::Minus } else { Sign::Plus };
    tensor_ideal(g, t, l.vertex, sign).reduce()
}

/// `M >= N`: `Hom(M, N[p]) = 0` for all `p > 0` up to the weight bound.
/// Returns the first nonvanishing cell `(p, weight)` otherwise.
pub fn silting_geq(g: &Gamma, m: &SiltingObject, n: &SiltingObject, bound: u32) -> Result<(), (i32, i32)> {
    match positive_extension(g, &m.complex(), &n.complex(), bound) {
        None => Ok(()),
        Some(w) => Err(w),
    }
}

/// One summand of an approximation: a map between block `i` and a twisted
/// copy of block `k`.
#[derive(Clone, Debug)]
pub struct ApproxTerm {
    pub block: usize,
    pub weight: i32,
    pub map: Morphism,
}

type HomCache = BTreeMap<(usize, usize), Vec<CellCohomology>>;

fn degree_zero(g: &Gamma, blocks: &[TwistedComplex], cache: &mut HomCache, a: usize, b: usize, bound: u32) {
    cache.entry((a, b)).or_insert_with(|| {
        let (lo, hi) = weight_range(&blocks[a], &blocks[b], bound);
        (lo..=hi).map(|w| cell_cohomology(g, &blocks[a], &blocks[b], 0, w)).collect()
    });
}

/// Minimal left (maps out of block `i`) or right (maps into block `i`)
/// approximation by the other blocks: a basis of degree-0 cohomology
/// classes modulo those factoring through a radical map between the other
/// blocks. Weight-0 endomorphisms of a block count as non-radical.
pub fn approximation(g: &Gamma, blocks: &[TwistedComplex], i: usize, dir: Direction, bound: u32) -> Vec<ApproxTerm> {
    let n = blocks.len();
    let others: Vec<usize> = (0..n).filter(|&k| k != i).collect();
    let mut cache = HomCache::new();
    for &k in &others {
        match dir {
            Direction::Left => degree_zero(g, blocks, &mut cache, i, k, bound),
            Direction::Right => degree_zero(g, blocks, &mut cache, k, i, bound),
        }
        for &l in &others {
            degree_zero(g, blocks, &mut cache, l, k, bound);
        }
    }
    let mut terms = Vec::new();
    for &k in &others {
        let key = match dir {
            Direction::Left => (i, k),
            Direction::Right => (k, i),
        };
        for target in &cache[&key] {
            if target.classes.is_empty() {
                continue;
            }
            let w = target.cell.weight;
            let mut span: RowEchelon = target.boundaries.clone();
            for &l in &others {
                let (near, far) = match dir {
                    Direction::Left => (&cache[&(i, l)], &cache[&(l, k)]),
                    Direction::Right => (&cache[&(l, i)], &cache[&(k, l)]),
                };
                for a in near {
                    for b in far {
                        let (wa, wb) = (a.cell.weight, b.cell.weight);
                        if wa + wb != w || (l == k && wb == 0) {
                            continue;
                        }
                        for x in a.class_morphisms() {
                            for y in b.class_morphisms() {
                                let comp = match dir {
                                    Direction::Left => y.compose(&x),
                                    Direction::Right => x.compose(&y),
                                };
                                span.insert(target.cell.coordinates(&comp));
                            }
                        }
                    }
                }
            }
            for z in &target.classes {
                if span.insert(z.clone()) {
                    terms.push(ApproxTerm { block: k, weight: w, map: target.cell.to_morphism(z) });
                }
            }
        }
    }
    terms
}

fn term_profile(terms: &[ApproxTerm]) -> Vec<(usize, i32)> {
    let mut p: Vec<_> = terms.iter().map(|t| (t.block, t.weight)).collect();
    p.sort();
    p
}

/// Mutates block `i` of `m`. A left mutation replaces `X_i` by
/// `Cone(X_i -> Y')<2>`, a right mutation by `Cone(Y'' -> X_i)[-1]<-2>`.
/// The approximation is recomputed at `bound - 2` and must agree.
pub fn mutate(g: &Gamma, m: &SiltingObject, i: usize, dir: Direction, bound: u32) -> Result<SiltingObject, SiltingError> {
    if i >= m.blocks.len() {
        return Err(SiltingError::BlockOutOfRange(i));
    }
    let terms = approximation(g, &m.blocks, i, dir, bound);
    let coarse = approximation(g, &m.blocks, i, dir, bound.saturating_sub(2));
    if term_profile(&terms) != term_profile(&coarse) {
        return Err(SiltingError::Unstable { block: i, bound });
    }
    let x = &m.blocks[i];
    let mut sum = TwistedComplex::zero();
    let mut map = Morphism::zero(0, 0);
    for t in &terms {
        let off = sum.len();
        let copy = match dir {
            Direction::Left => m.blocks[t.block].twist(-t.weight),
            Direction::Right => m.blocks[t.block].twist(t.weight),
        };
        for (&(r, c), e) in &t.map.entries {
            let key = match dir {
                Direction::Left => (r + off, c),
                Direction::Right => (r, c + off),
            };
            map.entries.insert(key, e.clone());
        }
        sum = sum.direct_sum(&copy);
    }
    let replaced = match dir {
        Direction::Left => cone(g, x, &sum, &map).map(|c| c.twist(2)),
        Direction::Right => cone(g, &sum, x, &map).map(|c| c.shift(-1).twist(-2)),
    }
    .map_err(|_| SiltingError::NotClosed { block: i })?;
    let mut blocks = m.blocks.clone();
    blocks[i] = replaced.reduce();
    let mut steps = match &m.provenance {
        Provenance::Mutations(s) => s.clone(),
        Provenance::Word(_) => Vec::new(),
    };
    steps.push((i, dir));
    Ok(SiltingObject { blocks, provenance: Provenance::Mutations(steps) })
}

/// Compares two silting objects as sets of blocks.
pub fn silting_equal(g: &Gamma, a: &SiltingObject, b: &SiltingObject) -> IsoVerdict {
    blocks_equal_upto_iso(g, &a.blocks, &b.blocks)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordVerdict {
    EqualInBQ,
    DistinctInBQ,
    Unknown(String),
}

/// Decides `w1 = w2` in the braid group through their silting objects.
/// Distinct objects always separate the words; equal objects identify them
/// only for Dynkin quivers, where `a -> I_a` is injective.
pub fn word_equality(g: &Gamma, w1: &BraidWord, w2: &BraidWord) -> Result<WordVerdict, SiltingError> {
    if w1.free_reduce() == w2.free_reduce() {
        return Ok(WordVerdict::EqualInBQ);
    }
    let (a, b) = (braid_to_silting(g, w1)?, braid_to_silting(g, w2)?);
    Ok(match silting_equal(g, &a, &b) {
        IsoVerdict::Distinct(_) => WordVerdict::DistinctInBQ,
        IsoVerdict::Equal { .. } if g.quiver().is_dynkin() => WordVerdict::EqualInBQ,
        IsoVerdict::Equal { .. } => WordVerdict::Unknown(String::from("equal objects, quiver not Dynkin")),
        IsoVerdict::Unknown(why) => WordVerdict::Unknown(why),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderReversal {
    pub c: BraidWord,
    pub b: BraidWord,
    /// `I_b >= I_{cb}`; the failing cell otherwise.
    pub forward: Result<(), (i32, i32)>,
    /// `I_{cb} >= I_b`; expected to fail when `c` is nonempty.
    pub backward: Result<(), (i32, i32)>,
}

impl OrderReversal {
    pub fn passed(&self) -> bool {
        self.forward.is_ok() && (self.c.is_empty() || self.backward.is_err())
    }
}

/// For positive `c` and `a = c b`, checks `I_b >= I_a`, and that the
/// converse fails when `c` is nonempty.
pub fn order_reversal_test(g: &Gamma, c: &BraidWord, b: &BraidWord, bound: u32) -> Result<OrderReversal, SiltingError> {
    assert!(c.is_positive(), "witness word must be positive");
    let ib = braid_to_silting(g, b)?;
    let ia = braid_to_silting(g, &c.concat(b))?;
    Ok(OrderReversal {
        c: c.clone(),
        b: b.clone(),
        forward: silting_geq(g, &ib, &ia, bound),
        backward: silting_geq(g, &ia, &ib, bound),
    })
}

/// The silting objects `M` with `Gamma >= M >= Gamma[n]`, found from
/// `Gamma` by left mutations, with the mutations between them.
#[derive(Clone, Debug)]
pub struct SiltingPosetSlice {
    pub n: u32,
    pub bound: u32,
    pub nodes: Vec<SiltingObject>,
    /// `(from, to, block)`: `nodes[to]` is the left mutation of
    /// `nodes[from]` at `block`.
    pub edges: Vec<(usize, usize, usize)>,
}

pub fn enumerate_interval(g: &Gamma, n: u32, bound: u32) -> Result<SiltingPosetSlice, SiltingError> {
    enumerate_interval_limited(g, n, bound, usize::MAX)
}

/// As [`enumerate_interval`], failing once more than `max_nodes` objects
/// have been found (the interval is infinite away from Dynkin type).
pub fn enumerate_interval_limited(g: &Gamma, n: u32, bound: u32, max_nodes: usize) -> Result<SiltingPosetSlice, SiltingError> {
    let gamma = SiltingObject::gamma(g);
    let floor = gamma.shift(n as i32);
    let mut nodes = alloc::vec![gamma];
    let mut edges = Vec::new();
    let mut next = 0;
    while next < nodes.len() {
        let current = nodes[next].clone();
        for i in 0..current.blocks.len() {
            let m = mutate(g, &current, i, Direction::Left, bound)?;
            if silting_geq(g, &m, &floor, bound).is_err() {
                continue;
            }
            let mut found = None;
            for (k, old) in nodes.iter().enumerate() {
                if old.fingerprint() != m.fingerprint() {
                    continue;
                }
                match silting_equal(g, old, &m) {
                    IsoVerdict::Equal { .. } => {
                        found = Some(k);
                        break;
                    }
                    IsoVerdict::Distinct(_) => {}
                    IsoVerdict::Unknown(why) => return Err(SiltingError::Undecided(format!("node {k}: {why}"))),
                }
            }
            let to = match found {
                Some(k) => k,
                None if nodes.len() >= max_nodes => return Err(SiltingError::NodeLimit(max_nodes)),
                None => {
                    nodes.push(m);
                    nodes.len() - 1
                }
            };
            edges.push((next, to, i));
        }
        next += 1;
    }
    Ok(SiltingPosetSlice { n, bound, nodes, edges })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::equal_upto_iso;
    use crate::quiver::Quiver;
    use crate::scalar::Field;

    fn a(n: usize) -> Gamma {
        Gamma::new(Quiver::a(n), Field::Rational)
    }

    #[test]
    fn left_mutation_of_gamma_is_the_ideal() {
        let g = a(3);
        let gamma = SiltingObject::gamma(&g);
        for i in 0..3 {
            let m = mutate(&g, &gamma, i, Direction::Left, 8).unwrap();
            let ideal = braid_to_silting(&g, &BraidWord::positive(&[i])).unwrap();
            assert!(silting_equal(&g, &m, &ideal).is_equal(), "vertex {i}");
            assert!(equal_upto_iso(&g, &m.blocks[i], &ideal.blocks[i]).is_equal());
        }
    }

    #[test]
    fn left_then_right_returns() {
        let g = a(3);
        let gamma = SiltingObject::gamma(&g);
        for i in 0..3 {
            let m = mutate(&g, &gamma, i, Direction::Left, 8).unwrap();
            let back = mutate(&g, &m, i, Direction::Right, 8).unwrap();
            assert!(silting_equal(&g, &back, &gamma).is_equal(), "vertex {i}");
        }
    }

    #[test]
    fn gamma_is_above_its_mutations() {
        let g = a(2);
        let gamma = SiltingObject::gamma(&g);
        let i1 = braid_to_silting(&g, &BraidWord::positive(&[0])).unwrap();
        assert!(silting_geq(&g, &gamma, &i1, 8).is_ok());
        assert!(silting_geq(&g, &i1, &gamma, 8).is_err());
        assert!(silting_geq(&g, &i1, &i1, 8).is_ok());
    }

    #[test]
    fn word_equality_examples() {
        let g = a(2);
        let q = g.quiver().clone();
        let w = |s: &str| BraidWord::parse(&q, s).unwrap();
        assert_eq!(word_equality(&g, &w("1 2 1"), &w("2 1 2")).unwrap(), WordVerdict::EqualInBQ);
        assert_eq!(word_equality(&g, &w("1"), &w("2")).unwrap(), WordVerdict::DistinctInBQ);
        assert_eq!(word_equality(&g, &w("1 1'"), &w("")).unwrap(), WordVerdict::EqualInBQ);
    }

    #[test]
    fn interval_counts_on_a2() {
        let g = a(2);
        assert_eq!(enumerate_interval(&g, 0, 8).unwrap().nodes.len(), 1);
        assert_eq!(enumerate_interval(&g, 1, 8).unwrap().nodes.len(), 6);
    }
}
