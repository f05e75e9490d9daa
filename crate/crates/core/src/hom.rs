//! Hom complexes out of twisted complexes and their cohomology, computed
//! one `(degree, weight)` cell at a time.
//!
//! A degree-`p` map `M -> N` between twisted complexes is a matrix of algebra
//! elements (see [`Morphism`]). Its weight `w` fixes the path weight of every
//! entry, so each cell is finite-dimensional and the cohomology of the cell
//! is exact. Only the choice of which cells to compute is truncated.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, Gamma, Letter, Path};
use crate::complex::{Morphism, TwistedComplex};
use crate::linalg::{kernel_basis, rank, RowEchelon, SparseMatrix, SparseVec};
use crate::quiver::Vertex;
use crate::scalar::{Field, Scalar};

/// Cells to compute: degrees `lo..=hi` and path weights up to `weight_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Window {
    pub degrees: (i32, i32),
    pub weight_bound: u32,
}

impl Window {
    pub fn new(lo: i32, hi: i32, weight_bound: u32) -> Window {
        Window { degrees: (lo, hi), weight_bound }
    }
}

/// Dimensions of `H^p Hom(M, N)` in weight `w`, keyed by `(p, w)`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HomTable {
    pub cells: BTreeMap<(i32, i32), usize>,
    pub degrees: (i32, i32),
    pub weights: (i32, i32),
    /// `None` when every weight with a possibly nonzero cell was computed.
    pub weight_bound: Option<u32>,
}

impl HomTable {
    pub fn get(&self, p: i32, w: i32) -> Option<usize> {
        self.cells.get(&(p, w)).copied()
    }

    /// Sum over the computed weights in degree `p`, `None` outside the window.
    pub fn degree_total(&self, p: i32) -> Option<usize> {
        if p < self.degrees.0 || p > self.degrees.1 {
            return None;
        }
        Some(self.cells.iter().filter(|((q, _), _)| *q == p).map(|(_, d)| d).sum())
    }

    pub fn degree_totals(&self) -> BTreeMap<i32, usize> {
        (self.degrees.0..=self.degrees.1)
            .map(|p| (p, self.degree_total(p).unwrap_or(0)))
            .collect()
    }

    /// Nonzero cells only.
    pub fn support(&self) -> BTreeMap<(i32, i32), usize> {
        self.cells.iter().filter(|(_, d)| **d > 0).map(|(k, d)| (*k, *d)).collect()
    }

    /// True when every computed cell of positive degree vanishes.
    pub fn vanishes_in_positive_degrees(&self) -> bool {
        self.cells.iter().all(|((p, _), d)| *p <= 0 || *d == 0)
    }

    /// Same table with weights shifted by `by`.
    pub fn twisted(&self, by: i32) -> HomTable {
        HomTable {
            cells: self.cells.iter().map(|((p, w), d)| ((*p, *w + by), *d)).collect(),
            degrees: self.degrees,
            weights: (self.weights.0 + by, self.weights.1 + by),
            weight_bound: self.weight_bound,
        }
    }
}

/// Weights of cells with possibly nonzero maps `M -> N`, up to the bound.
pub fn weight_range(m: &TwistedComplex, n: &TwistedComplex, bound: u32) -> (i32, i32) {
    let mut lo = i32::MAX;
    for r in n.generators() {
        for c in m.generators() {
            lo = lo.min(r.weight - c.weight);
        }
    }
    if lo == i32::MAX {
        return (0, -1);
    }
    (lo, lo.max(0) + bound as i32)
}

/// Basis of the `(degree, weight)` cell of `Hom(M, N)`: one element per
/// generator pair and path of the right bidegree.
#[derive(Clone, Debug)]
pub struct HomCell {
    pub degree: i32,
    pub weight: i32,
    pub basis: Vec<(usize, usize, Path)>,
    index: BTreeMap<(usize, usize, Path), usize>,
}

impl HomCell {
    pub fn new(g: &Gamma, m: &TwistedComplex, n: &TwistedComplex, degree: i32, weight: i32) -> HomCell {
        let mut basis = Vec::new();
        for (r, gr) in n.generators().iter().enumerate() {
            for (c, gc) in m.generators().iter().enumerate() {
                let pw = weight + gc.weight - gr.weight;
                if pw < 0 {
                    continue;
                }
                let pd = degree + gr.shift - gc.shift;
                for p in g.weight_slice(pd, pw as u32, gc.vertex, gr.vertex).iter() {
                    basis.push((r, c, p.clone()));
                }
            }
        }
        let index = basis.iter().cloned().enumerate().map(|(k, b)| (b, k)).collect();
        HomCell { degree, weight, basis, index }
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn to_morphism(&self, v: &SparseVec) -> Morphism {
        let mut entries: BTreeMap<(usize, usize), AlgebraElement> = BTreeMap::new();
        for (k, x) in v {
            let (r, c, p) = &self.basis[*k];
            entries.entry((*r, *c)).or_default().add_term(p.clone(), x.clone());
        }
        entries.retain(|_, e| !e.is_zero());
        Morphism { degree: self.degree, weight: self.weight, entries }
    }

    /// Coordinates of a morphism in this cell. Panics on a morphism outside it.
    pub fn coordinates(&self, f: &Morphism) -> SparseVec {
        let mut v: SparseVec = Vec::new();
        for (&(r, c), x) in &f.entries {
            for (p, s) in x.terms() {
                let k = self.index[&(r, c, p.clone())];
                v.push((k, s.clone()));
            }
        }
        v.sort_by_key(|e| e.0);
        v
    }
}

/// Matrix of the Hom differential from `from` (degree `p`) to `to`
/// (degree `p + 1`, same weight).
pub fn hom_differential(
    g: &Gamma,
    m: &TwistedComplex,
    n: &TwistedComplex,
    from: &HomCell,
    to: &HomCell,
) -> SparseMatrix {
    let field = g.field();
    let mut n_col: BTreeMap<usize, Vec<(usize, &AlgebraElement)>> = BTreeMap::new();
    for (&(r2, r), x) in n.delta() {
        n_col.entry(r).or_default().push((r2, x));
    }
    let mut m_row: BTreeMap<usize, Vec<(usize, &AlgebraElement)>> = BTreeMap::new();
    for (&(c, c2), y) in m.delta() {
        m_row.entry(c).or_default().push((c2, y));
    }
    let odd = from.degree.rem_euclid(2) == 1;
    let mut columns = Vec::with_capacity(from.len());
    for (r, c, p) in &from.basis {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        let mut push = |r: usize, c: usize, e: &AlgebraElement, negate: bool| {
            for (q, s) in e.terms() {
                let k = to.index[&(r, c, q.clone())];
                let s = if negate { -s } else { s.clone() };
                let v = match acc.remove(&k) {
                    Some(old) => &old + &s,
                    None => s,
                };
                if !v.is_zero() {
                    acc.insert(k, v);
                }
            }
        };
        let single = AlgebraElement::from_path(p.clone(), field.one());
        let dp = g.d_path(p);
        push(*r, *c, &dp, n.generators()[*r].parity());
        if let Some(list) = n_col.get(r) {
            for (r2, x) in list {
                push(*r2, *c, &x.mul(&single), false);
            }
        }
        if let Some(list) = m_row.get(c) {
            for (c2, y) in list {
                // -(-1)^p f delta_M
                push(*r, *c2, &single.mul(y), !odd);
            }
        }
        columns.push(acc.into_iter().collect::<SparseVec>());
    }
    SparseMatrix::from_columns(field, to.len(), &columns)
}

/// Cohomology of one cell together with explicit representatives.
#[derive(Clone, Debug)]
pub struct CellCohomology {
    pub cell: HomCell,
    pub cocycles: Vec<SparseVec>,
    pub boundaries: RowEchelon,
    /// Cocycles whose classes form a basis of the cohomology.
    pub classes: Vec<SparseVec>,
}

impl CellCohomology {
    pub fn dim(&self) -> usize {
        self.classes.len()
    }

    pub fn class_morphisms(&self) -> Vec<Morphism> {
        self.classes.iter().map(|v| self.cell.to_morphism(v)).collect()
    }
}

pub fn cell_cohomology(g: &Gamma, m: &TwistedComplex, n: &TwistedComplex, p: i32, w: i32) -> CellCohomology {
    let prev = HomCell::new(g, m, n, p - 1, w);
    let cell = HomCell::new(g, m, n, p, w);
    let next = HomCell::new(g, m, n, p + 1, w);
    let out = hom_differential(g, m, n, &cell, &next);
    let cocycles = kernel_basis(&out);
    let mut boundaries = RowEchelon::new(g.field());
    if !prev.is_empty() && !cell.is_empty() {
        let inc = hom_differential(g, m, n, &prev, &cell);
        for k in 0..prev.len() {
            let col = column(&inc, k);
            boundaries.insert(col);
        }
    }
    let mut span = boundaries.clone();
    let mut classes = Vec::new();
    for z in &cocycles {
        if span.insert(z.clone()) {
            classes.push(z.clone());
        }
    }
    CellCohomology { cell, cocycles, boundaries, classes }
}

fn column(m: &SparseMatrix, k: usize) -> SparseVec {
    (0..m.rows())
        .filter_map(|i| {
            let x = m.get(i, k);
            if x.is_zero() {
                None
            } else {
                Some((i, x))
            }
        })
        .collect()
}

/// Dimensions of `H^p Hom(M, N)` in weight `w` for every cell of the window.
pub fn hom_table(g: &Gamma, m: &TwistedComplex, n: &TwistedComplex, window: Window) -> HomTable {
    let (wlo, whi) = weight_range(m, n, window.weight_bound);
    let (plo, phi) = window.degrees;
    let mut cells = BTreeMap::new();
    for w in wlo..=whi {
        let spaces: BTreeMap<i32, HomCell> =
            ((plo - 1)..=(phi + 1)).map(|p| (p, HomCell::new(g, m, n, p, w))).collect();
        let mut ranks = BTreeMap::new();
        for p in (plo - 1)..=phi {
            let (a, b) = (&spaces[&p], &spaces[&(p + 1)]);
            let r = if a.is_empty() || b.is_empty() {
                0
            } else {
                rank(&hom_differential(g, m, n, a, b))
            };
            ranks.insert(p, r);
        }
        for p in plo..=phi {
            let dim = spaces[&p].len() - ranks[&p] - ranks[&(p - 1)];
            cells.insert((p, w), dim);
        }
    }
    HomTable { cells, degrees: (plo, phi), weights: (wlo, whi), weight_bound: Some(window.weight_bound) }
}

/// Degrees in which `Hom^p(M, N)` can be nonzero at all.
pub fn degree_support(m: &TwistedComplex, n: &TwistedComplex) -> Option<(i32, i32)> {
    let max_c = m.generators().iter().map(|g| g.shift).max()?;
    let min_r = n.generators().iter().map(|g| g.shift).min()?;
    // path degrees are <= 0, so p + shift(r) - shift(c) <= 0
    Some((i32::MIN / 4, max_c - min_r))
}

/// First cell `(p, w)` with `p > 0`, weight within the bound and nonzero
/// `H^p Hom(M, N)`; `None` when all of them vanish. Degrees beyond the
/// support of the Hom complex are skipped.
pub fn positive_extension(g: &Gamma, m: &TwistedComplex, n: &TwistedComplex, bound: u32) -> Option<(i32, i32)> {
    let Some((_, top)) = degree_support(m, n) else {
        return None;
    };
    if top < 1 {
        return None;
    }
    let table = hom_table(g, m, n, Window::new(1, top, bound));
    table.support().keys().next().copied()
}

/// Basis element of a finite-dimensional module.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FdBasis {
    pub vertex: Vertex,
    pub degree: i32,
    pub weight: i32,
}

/// A finite-dimensional right dg module over Gamma, given by a bigraded
/// basis, the right action of every letter and the differential.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FdModule {
    basis: Vec<FdBasis>,
    /// `basis[from] * letter = sum coeff * basis[to]`.
    action: BTreeMap<Letter, Vec<(usize, usize, Scalar)>>,
    /// `d(basis[from]) = sum coeff * basis[to]`.
    differential: Vec<(usize, usize, Scalar)>,
}

impl FdModule {
    pub fn new(
        basis: Vec<FdBasis>,
        action: BTreeMap<Letter, Vec<(usize, usize, Scalar)>>,
        differential: Vec<(usize, usize, Scalar)>,
    ) -> FdModule {
        FdModule { basis, action, differential }
    }

    /// The simple module at `j`: one basis vector in degree 0, weight 0,
    /// killed by every letter.
    pub fn simple(j: Vertex) -> FdModule {
        FdModule {
            basis: alloc::vec![FdBasis { vertex: j, degree: 0, weight: 0 }],
            action: BTreeMap::new(),
            differential: Vec::new(),
        }
    }

    pub fn basis(&self) -> &[FdBasis] {
        &self.basis
    }

    fn act_letter(&self, v: &BTreeMap<usize, Scalar>, l: Letter) -> BTreeMap<usize, Scalar> {
        let mut out: BTreeMap<usize, Scalar> = BTreeMap::new();
        if let Some(list) = self.action.get(&l) {
            for (from, to, s) in list {
                if let Some(x) = v.get(from) {
                    add_into(&mut out, *to, x * s);
                }
            }
        }
        out
    }

    /// `m * path`; the first written letter acts first.
    pub fn act(&self, v: &BTreeMap<usize, Scalar>, p: &Path) -> BTreeMap<usize, Scalar> {
        let mut cur: BTreeMap<usize, Scalar> = v
            .iter()
            .filter(|(k, _)| self.basis[**k].vertex == p.target())
            .map(|(k, s)| (*k, s.clone()))
            .collect();
        for &l in p.letters() {
            cur = self.act_letter(&cur, l);
        }
        cur
    }

    pub fn d(&self, v: &BTreeMap<usize, Scalar>) -> BTreeMap<usize, Scalar> {
        let mut out = BTreeMap::new();
        for (from, to, s) in &self.differential {
            if let Some(x) = v.get(from) {
                add_into(&mut out, *to, x * s);
            }
        }
        out
    }
}

fn add_into(m: &mut BTreeMap<usize, Scalar>, k: usize, s: Scalar) {
    let v = match m.remove(&k) {
        Some(old) => &old + &s,
        None => s,
    };
    if !v.is_zero() {
        m.insert(k, v);
    }
}

/// Cell of `Hom(T, M)` for a finite-dimensional target: a map of degree `p`
/// and weight `w` sends generator `c` to an element of `M e_{v_c}` of
/// degree `p - shift(c)` and weight `weight(c) + w`.
fn module_cell(t: &TwistedComplex, m: &FdModule, p: i32, w: i32) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for (c, gc) in t.generators().iter().enumerate() {
        for (k, b) in m.basis.iter().enumerate() {
            if b.vertex == gc.vertex && b.degree == p - gc.shift && b.weight == gc.weight + w {
                out.push((c, k));
            }
        }
    }
    out
}

/// `D(f)(g_c) = d_M f(g_c) - (-1)^p sum_r f(g_r) delta_rc`.
fn module_differential(
    field: Field,
    t: &TwistedComplex,
    m: &FdModule,
    p: i32,
    from: &[(usize, usize)],
    to: &[(usize, usize)],
) -> SparseMatrix {
    let index: BTreeMap<(usize, usize), usize> = to.iter().enumerate().map(|(k, b)| (*b, k)).collect();
    let sign = if p.rem_euclid(2) == 1 { field.one() } else { -field.one() };
    let mut columns = Vec::new();
    for &(r, k) in from {
        let mut acc: BTreeMap<usize, Scalar> = BTreeMap::new();
        let unit: BTreeMap<usize, Scalar> = [(k, field.one())].into_iter().collect();
        for (k2, s) in m.d(&unit) {
            add_into(&mut acc, index[&(r, k2)], s);
        }
        for (&(r0, c), x) in t.delta() {
            if r0 != r {
                continue;
            }
            for (path, coeff) in x.terms() {
                for (k2, s) in m.act(&unit, path) {
                    add_into(&mut acc, index[&(c, k2)], &(&s * coeff) * &sign);
                }
            }
        }
        columns.push(acc.into_iter().collect::<SparseVec>());
    }
    SparseMatrix::from_columns(field, to.len(), &columns)
}

/// Complete table of `H^p Hom(T, M)` for a finite-dimensional module `M`
/// over the given degrees. Every weight with a nonzero cochain is included.
pub fn hom_table_module(g: &Gamma, t: &TwistedComplex, m: &FdModule, degrees: (i32, i32)) -> HomTable {
    let field = g.field();
    let mut weights = BTreeSet::new();
    for gc in t.generators() {
        for b in &m.basis {
            if b.vertex == gc.vertex {
                weights.insert(b.weight - gc.weight);
            }
        }
    }
    let (plo, phi) = degrees;
    let mut cells = BTreeMap::new();
    for &w in &weights {
        let spaces: BTreeMap<i32, Vec<(usize, usize)>> =
            ((plo - 1)..=(phi + 1)).map(|p| (p, module_cell(t, m, p, w))).collect();
        let mut ranks = BTreeMap::new();
        for p in (plo - 1)..=phi {
            let (a, b) = (&spaces[&p], &spaces[&(p + 1)]);
            let r = if a.is_empty() || b.is_empty() {
                0
            } else {
                rank(&module_differential(field, t, m, p, a, b))
            };
            ranks.insert(p, r);
        }
        for p in plo..=phi {
            cells.insert((p, w), spaces[&p].len() - ranks[&p] - ranks[&(p - 1)]);
        }
    }
    let lo = weights.iter().next().copied().unwrap_or(0);
    let hi = weights.iter().next_back().copied().unwrap_or(-1);
    HomTable { cells, degrees, weights: (lo, hi), weight_bound: None }
}

/// Tables of `Hom(T, S_j)` for every vertex `j`.
pub fn tables_against_simples(g: &Gamma, t: &TwistedComplex, degrees: (i32, i32)) -> Vec<HomTable> {
    g.quiver()
        .vertices()
        .map(|j| hom_table_module(g, t, &FdModule::simple(j), degrees))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simple_resolution;
    use crate::quiver::Quiver;

    #[test]
    fn simple_is_two_spherical_on_a2() {
        let g = Gamma::new(Quiver::a(2), Field::Rational);
        for i in 0..2 {
            let p = simple_resolution(&g, i);
            let t = hom_table_module(&g, &p, &FdModule::simple(i), (-6, 6));
            let totals = t.degree_totals();
            for (deg, d) in totals {
                assert_eq!(d, if deg == 0 || deg == 2 { 1 } else { 0 }, "degree {deg}");
            }
        }
    }

    #[test]
    fn free_module_against_other_simple() {
        let g = Gamma::new(Quiver::a(2), Field::Rational);
        let t = hom_table_module(&g, &TwistedComplex::free(0), &FdModule::simple(1), (-2, 2));
        assert!(t.support().is_empty());
    }

    #[test]
    fn gamma_has_no_positive_self_extensions() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        let gamma = TwistedComplex::gamma(&g);
        let t = hom_table(&g, &gamma, &gamma, Window::new(-2, 3, 6));
        assert!(t.vanishes_in_positive_degrees());
        // H^0 in weight 0 is spanned by the three idempotents
        assert_eq!(t.get(0, 0), Some(3));
    }

    #[test]
    fn resolution_quasi_isomorphic_to_simple() {
        // Hom(pS_i, pS_i) agrees with Hom(pS_i, S_i) in each degree
        let g = Gamma::new(Quiver::a(2), Field::Rational);
        let p = simple_resolution(&g, 0);
        let t = hom_table(&g, &p, &p, Window::new(-1, 3, 6));
        let totals = t.degree_totals();
        assert_eq!(totals[&0], 1);
        assert_eq!(totals[&1], 0);
        assert_eq!(totals[&2], 1);
        assert_eq!(totals[&3], 0);
    }
}
