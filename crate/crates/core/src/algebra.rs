//! The derived preprojective algebra as a dg path algebra.
//!
//! Composition convention: in a product `p * q` the path `q` is traversed
//! first, so `e_{target(p)} * p = p = p * e_{source(p)}`. A path is stored
//! in written order: its first letter is traversed last. With this
//! convention `e_i * Gamma` consists of the paths ending at `i`.

use alloc::collections::BTreeMap;
use alloc::rc::Rc;
use alloc::string::String;
use alloc::vec::Vec;
use core::cell::RefCell;
use core::fmt;

use crate::quiver::{ArrowId, Quiver, Vertex};
use crate::scalar::{Field, Scalar};

/// A letter of the graded double quiver.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    /// An arrow of the quiver, degree 0, weight 1.
    Arrow(ArrowId),
    /// The reversed arrow, degree 0, weight 1.
    Dual(ArrowId),
    /// The loop `t_v`, degree -1, weight 2.
    Loop(Vertex),
}

impl Letter {
    pub fn degree(self) -> i32 {
        match self {
            Letter::Loop(_) => -1,
            _ => 0,
        }
    }

    pub fn weight(self) -> u32 {
        match self {
            Letter::Loop(_) => 2,
            _ => 1,
        }
    }
}

/// A path of the graded double quiver. Field order gives the canonical
/// order: weight, degree, source, target, then the letters.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Path {
    weight: u32,
    degree: i32,
    source: Vertex,
    target: Vertex,
    letters: Vec<Letter>,
}

impl Path {
    pub fn trivial(v: Vertex) -> Path {
        Path {
            weight: 0,
            degree: 0,
            source: v,
            target: v,
            letters: Vec::new(),
        }
    }

    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn degree(&self) -> i32 {
        self.degree
    }

    pub fn source(&self) -> Vertex {
        self.source
    }

    pub fn target(&self) -> Vertex {
        self.target
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn is_trivial(&self) -> bool {
        self.letters.is_empty()
    }

    /// `self * other`, or `None` when `other` does not end where `self` starts.
    pub fn compose(&self, other: &Path) -> Option<Path> {
        if self.source != other.target {
            return None;
        }
        let mut letters = Vec::with_capacity(self.letters.len() + other.letters.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Some(Path {
            weight: self.weight + other.weight,
            degree: self.degree + other.degree,
            source: other.source,
            target: self.target,
            letters,
        })
    }

    /// Sub-path made of `letters[from..to]` (written order). `from == to`
    /// gives the trivial path at the vertex between those positions.
    pub fn subpath(&self, quiver: &Quiver, from: usize, to: usize) -> Path {
        let vertex_at = |k: usize| -> Vertex {
            // vertex to the left of letters[k] is target(letters[k]);
            if k < self.letters.len() {
                letter_target(quiver, self.letters[k])
            } else {
                self.source
            }
        };
        if from == to {
            return Path::trivial(vertex_at(from));
        }
        let letters: Vec<Letter> = self.letters[from..to].to_vec();
        Path {
            weight: letters.iter().map(|l| l.weight()).sum(),
            degree: letters.iter().map(|l| l.degree()).sum(),
            source: letter_source(quiver, letters[letters.len() - 1]),
            target: letter_target(quiver, letters[0]),
            letters,
        }
    }

    /// Vertices visited, from the target end to the source end.
    pub fn vertices<'a>(&'a self, quiver: &'a Quiver) -> impl Iterator<Item = Vertex> + 'a {
        core::iter::once(self.target).chain(self.letters.iter().map(move |&l| letter_source(quiver, l)))
    }
}

pub fn letter_source(q: &Quiver, l: Letter) -> Vertex {
    match l {
        Letter::Arrow(a) => q.arrow(a).source,
        Letter::Dual(a) => q.arrow(a).target,
        Letter::Loop(v) => v,
    }
}

pub fn letter_target(q: &Quiver, l: Letter) -> Vertex {
    match l {
        Letter::Arrow(a) => q.arrow(a).target,
        Letter::Dual(a) => q.arrow(a).source,
        Letter::Loop(v) => v,
    }
}

type SliceKey = (i32, u32, Vertex, Vertex);

/// The graded double quiver of a quiver together with the chosen field: the
/// context every algebra computation runs in.
pub struct Gamma {
    quiver: Quiver,
    field: Field,
    letters: Vec<Letter>,
    slices: RefCell<BTreeMap<SliceKey, Rc<Vec<Path>>>>,
}

impl fmt::Debug for Gamma {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Gamma")
            .field("quiver", &self.quiver.name())
            .field("field", &self.field)
            .finish()
    }
}

impl Gamma {
    pub fn new(quiver: Quiver, field: Field) -> Gamma {
        let mut letters = Vec::new();
        for a in 0..quiver.arrows().len() {
            letters.push(Letter::Arrow(a));
            letters.push(Letter::Dual(a));
        }
        for v in quiver.vertices() {
            letters.push(Letter::Loop(v));
        }
        Gamma {
            quiver,
            field,
            letters,
            slices: RefCell::new(BTreeMap::new()),
        }
    }

    pub fn quiver(&self) -> &Quiver {
        &self.quiver
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn num_vertices(&self) -> usize {
        self.quiver.num_vertices()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn source(&self, l: Letter) -> Vertex {
        letter_source(&self.quiver, l)
    }

    pub fn target(&self, l: Letter) -> Vertex {
        letter_target(&self.quiver, l)
    }

    pub fn letter_path(&self, l: Letter) -> Path {
        Path {
            weight: l.weight(),
            degree: l.degree(),
            source: self.source(l),
            target: self.target(l),
            letters: alloc::vec![l],
        }
    }

    /// Builds a path from letters in written order; `None` if they do not compose.
    pub fn path(&self, letters: &[Letter]) -> Option<Path> {
        let (first, last) = (letters.first()?, letters.last()?);
        for w in letters.windows(2) {
            if self.source(w[0]) != self.target(w[1]) {
                return None;
            }
        }
        Some(Path {
            weight: letters.iter().map(|l| l.weight()).sum(),
            degree: letters.iter().map(|l| l.degree()).sum(),
            source: self.source(*last),
            target: self.target(*first),
            letters: letters.to_vec(),
        })
    }

    pub fn e(&self, v: Vertex) -> AlgebraElement {
        AlgebraElement::from_path(Path::trivial(v), self.field.one())
    }

    pub fn letter(&self, l: Letter) -> AlgebraElement {
        AlgebraElement::from_path(self.letter_path(l), self.field.one())
    }

    pub fn arrow(&self, a: ArrowId) -> AlgebraElement {
        self.letter(Letter::Arrow(a))
    }

    pub fn dual(&self, a: ArrowId) -> AlgebraElement {
        self.letter(Letter::Dual(a))
    }

    pub fn t(&self, v: Vertex) -> AlgebraElement {
        self.letter(Letter::Loop(v))
    }

    pub fn scalar(&self, n: i64) -> Scalar {
        self.field.from_i64(n)
    }

    /// `d(t_v) = sum over arrows alpha into v of alpha alpha*
    ///          - sum over arrows beta out of v of beta* beta`.
    pub fn d_loop(&self, v: Vertex) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for a in self.quiver.arrows_into(v) {
            let p = self.path(&[Letter::Arrow(a), Letter::Dual(a)]).unwrap();
            out.add_term(p, self.field.one());
        }
        for b in self.quiver.arrows_out_of(v) {
            let p = self.path(&[Letter::Dual(b), Letter::Arrow(b)]).unwrap();
            out.add_term(p, -self.field.one());
        }
        out
    }

    /// Graded Leibniz extension of `d` to a single path.
    pub fn d_path(&self, p: &Path) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        let mut loops_before = 0;
        for (k, &l) in p.letters.iter().enumerate() {
            if let Letter::Loop(v) = l {
                let sign = if loops_before % 2 == 0 { self.field.one() } else { -self.field.one() };
                let left = p.subpath(&self.quiver, 0, k);
                let right = p.subpath(&self.quiver, k + 1, p.letters.len());
                let dv = self.d_loop(v);
                for (q, c) in dv.terms() {
                    let full = left.compose(q).and_then(|x| x.compose(&right)).unwrap();
                    out.add_term(full, &sign * c);
                }
                loops_before += 1;
            }
        }
        out
    }

    pub fn differential(&self, a: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero();
        for (p, c) in a.terms() {
            for (q, x) in self.d_path(p).terms() {
                out.add_term(q.clone(), c * x);
            }
        }
        out
    }

    /// All paths from `from` to `to` of the given degree and weight, in
    /// canonical order.
    pub fn weight_slice(&self, degree: i32, weight: u32, from: Vertex, to: Vertex) -> Rc<Vec<Path>> {
        let key = (degree, weight, from, to);
        if let Some(hit) = self.slices.borrow().get(&key) {
            return hit.clone();
        }
        let paths = Rc::new(self.enumerate(degree, weight, from, to));
        self.slices.borrow_mut().insert(key, paths.clone());
        paths
    }

    fn enumerate(&self, degree: i32, weight: u32, from: Vertex, to: Vertex) -> Vec<Path> {
        let mut out = Vec::new();
        if degree > 0 {
            return out;
        }
        let loops = (-degree) as u32;
        if 2 * loops > weight {
            return out;
        }
        let arrows = weight - 2 * loops;
        if loops == 0 && arrows == 0 {
            if from == to {
                out.push(Path::trivial(from));
            }
            return out;
        }
        let mut current = Vec::new();
        self.dfs(to, from, loops, arrows, &mut current, &mut out);
        out.sort();
        out
    }

    fn dfs(
        &self,
        at: Vertex,
        goal: Vertex,
        loops: u32,
        arrows: u32,
        current: &mut Vec<Letter>,
        out: &mut Vec<Path>,
    ) {
        if loops == 0 && arrows == 0 {
            if at == goal {
                out.push(self.path(current).unwrap());
            }
            return;
        }
        for &l in &self.letters {
            if self.target(l) != at {
                continue;
            }
            let (nl, na) = match l {
                Letter::Loop(_) if loops > 0 => (loops - 1, arrows),
                Letter::Loop(_) => continue,
                _ if arrows > 0 => (loops, arrows - 1),
                _ => continue,
            };
            current.push(l);
            self.dfs(self.source(l), goal, nl, na, current, out);
            current.pop();
        }
    }

    pub fn letter_name(&self, l: Letter) -> String {
        match l {
            Letter::Arrow(a) => self.quiver.arrow(a).label.clone(),
            Letter::Dual(a) => alloc::format!("{}*", self.quiver.arrow(a).label),
            Letter::Loop(v) => alloc::format!("t{}", self.quiver.vertex_label(v)),
        }
    }

    /// Letter names in written order; a trivial path is `["e<v>"]`.
    pub fn path_names(&self, p: &Path) -> Vec<String> {
        if p.is_trivial() {
            alloc::vec![alloc::format!("e{}", self.quiver.vertex_label(p.source))]
        } else {
            p.letters.iter().map(|&l| self.letter_name(l)).collect()
        }
    }

    /// Inverse of [`Gamma::path_names`].
    pub fn parse_path(&self, names: &[String]) -> Option<Path> {
        if names.len() == 1 {
            if let Some(v) = names[0].strip_prefix('e').and_then(|s| self.quiver.vertex_by_label(s)) {
                if self.parse_letter(&names[0]).is_none() {
                    return Some(Path::trivial(v));
                }
            }
        }
        let letters: Option<Vec<Letter>> = names.iter().map(|n| self.parse_letter(n)).collect();
        self.path(&letters?)
    }

    pub fn parse_letter(&self, name: &str) -> Option<Letter> {
        let arrows = self.quiver.arrows();
        if let Some(a) = arrows.iter().position(|a| a.label == name) {
            return Some(Letter::Arrow(a));
        }
        if let Some(base) = name.strip_suffix('*') {
            if let Some(a) = arrows.iter().position(|a| a.label == base) {
                return Some(Letter::Dual(a));
            }
        }
        name.strip_prefix('t')
            .and_then(|s| self.quiver.vertex_by_label(s))
            .map(Letter::Loop)
    }

    pub fn format_path(&self, p: &Path) -> String {
        self.path_names(p).join("")
    }

    pub fn format_element(&self, a: &AlgebraElement) -> String {
        if a.is_zero() {
            return String::from("0");
        }
        let mut s = String::new();
        for (k, (p, c)) in a.terms().enumerate() {
            let (neg, mag) = if c.is_negative() { (true, -c) } else { (false, c.clone()) };
            if k > 0 {
                s.push_str(if neg { " - " } else { " + " });
            } else if neg {
                s.push('-');
            }
            if !mag.is_one() {
                s.push_str(&alloc::format!("{}·", mag));
            }
            s.push_str(&self.format_path(p));
        }
        s
    }
}

/// A finite linear combination of paths with nonzero coefficients, kept in
/// canonical path order.
#[derive(Clone, Debug, PartialEq, Eq, Default, Hash)]
pub struct AlgebraElement {
    terms: BTreeMap<Path, Scalar>,
}

impl AlgebraElement {
    pub fn zero() -> Self {
        AlgebraElement { terms: BTreeMap::new() }
    }

    pub fn from_path(p: Path, c: Scalar) -> Self {
        let mut a = Self::zero();
        a.add_term(p, c);
        a
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &Scalar)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, p: &Path) -> Option<&Scalar> {
        self.terms.get(p)
    }

    pub fn add_term(&mut self, p: Path, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&p) {
            Some(old) => {
                let s = &*old + &c;
                if s.is_zero() {
                    self.terms.remove(&p);
                } else {
                    *old = s;
                }
            }
            None => {
                self.terms.insert(p, c);
            }
        }
    }

    pub fn add_assign(&mut self, other: &AlgebraElement) {
        for (p, c) in other.terms() {
            self.add_term(p.clone(), c.clone());
        }
    }

    pub fn add_scaled(&mut self, other: &AlgebraElement, factor: &Scalar) {
        if factor.is_zero() {
            return;
        }
        for (p, c) in other.terms() {
            self.add_term(p.clone(), c * factor);
        }
    }

    pub fn add(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn sub(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = self.clone();
        for (p, c) in other.terms() {
            out.add_term(p.clone(), -c);
        }
        out
    }

    pub fn scale(&self, factor: &Scalar) -> AlgebraElement {
        let mut out = Self::zero();
        out.add_scaled(self, factor);
        out
    }

    pub fn neg(&self) -> AlgebraElement {
        AlgebraElement {
            terms: self.terms.iter().map(|(p, c)| (p.clone(), -c)).collect(),
        }
    }

    /// Bilinear extension of path concatenation.
    pub fn mul(&self, other: &AlgebraElement) -> AlgebraElement {
        let mut out = Self::zero();
        for (p, a) in &self.terms {
            for (q, b) in &other.terms {
                if let Some(pq) = p.compose(q) {
                    out.add_term(pq, a * b);
                }
            }
        }
        out
    }

    /// The part of bidegree `(degree, weight)`.
    pub fn component(&self, degree: i32, weight: u32) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| p.degree == degree && p.weight == weight)
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }

    /// `Some((degree, weight))` when all terms share one bidegree.
    pub fn bidegree(&self) -> Option<(i32, u32)> {
        let mut it = self.terms.keys();
        let first = it.next()?;
        let bd = (first.degree, first.weight);
        if it.all(|p| (p.degree, p.weight) == bd) {
            Some(bd)
        } else {
            None
        }
    }

    /// Coefficient of the trivial path at `v` (the weight-0 part).
    pub fn scalar_part(&self, v: Vertex) -> Option<&Scalar> {
        self.terms.get(&Path::trivial(v))
    }

    /// Removes terms whose path fails the predicate.
    pub fn filter(&self, mut keep: impl FnMut(&Path) -> bool) -> AlgebraElement {
        AlgebraElement {
            terms: self
                .terms
                .iter()
                .filter(|(p, _)| keep(p))
                .map(|(p, c)| (p.clone(), c.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a2() -> Gamma {
        Gamma::new(Quiver::a(2), Field::Rational)
    }

    #[test]
    fn idempotent_and_mismatch() {
        let g = a2();
        assert_eq!(g.e(0).mul(&g.e(0)), g.e(0));
        assert!(g.arrow(0).mul(&g.arrow(0)).is_zero());
        assert!(g.e(1).mul(&g.e(0)).is_zero());
    }

    #[test]
    fn dual_times_arrow_is_the_loop_at_one() {
        let g = a2();
        let p = g.dual(0).mul(&g.arrow(0));
        let path = g.path(&[Letter::Dual(0), Letter::Arrow(0)]).unwrap();
        assert_eq!(p, AlgebraElement::from_path(path.clone(), g.field().one()));
        assert_eq!((path.source(), path.target(), path.weight(), path.degree()), (0, 0, 2, 0));
    }

    #[test]
    fn differential_values() {
        let g = a2();
        assert!(g.differential(&g.arrow(0)).is_zero());
        assert!(g.differential(&g.e(1)).is_zero());
        // d(t_1) = -a1* a1 for the single arrow 1 -> 2
        let expected = g.dual(0).mul(&g.arrow(0)).neg();
        assert_eq!(g.differential(&g.t(0)), expected);
        assert_eq!(g.differential(&g.t(1)), g.arrow(0).mul(&g.dual(0)));
        // Leibniz with p = -1: d(t t) = d(t) t - t d(t)
        let tt = g.t(0).mul(&g.t(0));
        let dt = g.differential(&g.t(0));
        assert_eq!(g.differential(&tt), dt.mul(&g.t(0)).sub(&g.t(0).mul(&dt)));
    }

    #[test]
    fn slices() {
        let g = a2();
        assert_eq!(*g.weight_slice(0, 0, 0, 0), alloc::vec![Path::trivial(0)]);
        assert!(g.weight_slice(-1, 2, 1, 1).contains(&g.letter_path(Letter::Loop(1))));
        let s = g.weight_slice(0, 2, 0, 0);
        assert_eq!(*s, alloc::vec![g.path(&[Letter::Dual(0), Letter::Arrow(0)]).unwrap()]);
        assert!(g.weight_slice(1, 4, 0, 0).is_empty());
    }

    #[test]
    fn path_names_round_trip() {
        let g = a2();
        let p = g.path(&[Letter::Loop(0), Letter::Dual(0)]).unwrap();
        assert_eq!(g.parse_path(&g.path_names(&p)), Some(p));
        assert_eq!(g.parse_path(&g.path_names(&Path::trivial(1))), Some(Path::trivial(1)));
    }
}
