//! The functors `- (x) I_i` and `- (x) I_i^-` on twisted complexes.
//!
//! Both ideals are modelled as bimodules that are free as right modules:
//! for each vertex `v` a twisted complex `X_v` modelling `e_v X`, and for each
//! path `x` from `c` to `r` the left multiplication `X_c -> X_r` as a matrix.
//! Tensoring a twisted complex `T` replaces each generator `(v, n, w)` by a
//! copy of `X_v[n]<w>` and each entry `delta_rc` by its left multiplication
//! matrix.
//!
//! `I_i` is free as a right module on `e_v` (`v != i`), `t_i`, the arrows
//! into `i` and the duals of the arrows out of `i`: a path ending at `i` has
//! a unique leading letter. `I_i^-` is the dual `Hom(I_i, Gamma)` of left
//! module maps, free as a right module on the duals of the left generators
//! `e_v` (`v != i`), `t_i`, the duals of arrows into `i` and the arrows out of
//! `i` (unique trailing letter for paths starting at `i`).

use alloc::vec::Vec;

use crate::algebra::{AlgebraElement, Gamma, Letter, Path};
use crate::complex::{Generator, Matrix, Morphism, TwistedComplex};
use crate::quiver::Vertex;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn inverse(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Right-module generator of a block of an ideal model, with the letter it
/// corresponds to (`None` for the unit `e_v`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
struct Handle {
    letter: Option<Letter>,
    generator: Generator,
}

/// A vertex-indexed bimodule model of `I_i` or `I_i^-`.
#[derive(Clone, Debug)]
pub struct IdealModel {
    vertex: Vertex,
    sign: Sign,
    handles: Vec<Vec<Handle>>,
    blocks: Vec<TwistedComplex>,
}

impl IdealModel {
    pub fn new(g: &Gamma, i: Vertex, sign: Sign) -> IdealModel {
        let q = g.quiver();
        let mut handles = Vec::new();
        let mut blocks = Vec::new();
        for v in q.vertices() {
            if v != i {
                handles.push(alloc::vec![Handle { letter: None, generator: Generator::new(v, 0, 0) }]);
                blocks.push(TwistedComplex::free(v));
                continue;
            }
            let (top, side) = match sign {
                Sign::Plus => ((1, 2), (0, 1)),
                Sign::Minus => ((-1, -2), (0, -1)),
            };
            let mut hs = alloc::vec![Handle {
                letter: Some(Letter::Loop(i)),
                generator: Generator::new(i, top.0, top.1),
            }];
            let mut delta = Matrix::new();
            for a in q.arrows_into(i) {
                let letter = match sign {
                    Sign::Plus => Letter::Arrow(a),
                    Sign::Minus => Letter::Dual(a),
                };
                hs.push(Handle { letter: Some(letter), generator: Generator::new(q.arrow(a).source, side.0, side.1) });
                let k = hs.len() - 1;
                match sign {
                    Sign::Plus => delta.insert((k, 0), g.dual(a)),
                    Sign::Minus => delta.insert((0, k), g.arrow(a)),
                };
            }
            for b in q.arrows_out_of(i) {
                let letter = match sign {
                    Sign::Plus => Letter::Dual(b),
                    Sign::Minus => Letter::Arrow(b),
                };
                hs.push(Handle { letter: Some(letter), generator: Generator::new(q.arrow(b).target, side.0, side.1) });
                let k = hs.len() - 1;
                match sign {
                    Sign::Plus => delta.insert((k, 0), g.arrow(b).neg()),
                    Sign::Minus => delta.insert((0, k), g.dual(b).neg()),
                };
            }
            let gens = hs.iter().map(|h| h.generator).collect();
            blocks.push(TwistedComplex::from_parts(gens, delta));
            handles.push(hs);
        }
        IdealModel { vertex: i, sign, handles, blocks }
    }

    pub fn vertex(&self) -> Vertex {
        self.vertex
    }

    pub fn sign(&self) -> Sign {
        self.sign
    }

    /// The twisted complex modelling `e_v X`.
    pub fn block(&self, v: Vertex) -> &TwistedComplex {
        &self.blocks[v]
    }

    /// The letter each right generator of block `v` stands for, `None` for
    /// the unit.
    pub fn handle_letters(&self, v: Vertex) -> Vec<Option<Letter>> {
        self.handles[v].iter().map(|h| h.letter).collect()
    }

    /// All blocks as one right module.
    pub fn right_module(&self) -> TwistedComplex {
        self.blocks.iter().fold(TwistedComplex::zero(), |acc, b| acc.direct_sum(b))
    }

    fn handle_element(&self, g: &Gamma, v: Vertex, h: &Handle) -> AlgebraElement {
        match h.letter {
            None => g.e(v),
            Some(l) => g.letter(l),
        }
    }

    fn handle_index(&self, v: Vertex, l: Letter) -> usize {
        self.handles[v].iter().position(|h| h.letter == Some(l)).unwrap()
    }

    /// Left multiplication by a path `x` (from `c` to `r`) as a matrix from
    /// block `c` to block `r`.
    pub fn left_action(&self, g: &Gamma, x: &Path) -> Matrix {
        let (c, r) = (x.source(), x.target());
        let mut out = Matrix::new();
        let one = g.field().one();
        let xe = AlgebraElement::from_path(x.clone(), one.clone());
        match self.sign {
            Sign::Plus => {
                for (col, h) in self.handles[c].iter().enumerate() {
                    let product = xe.mul(&self.handle_element(g, c, h));
                    if r != self.vertex {
                        accumulate(&mut out, (0, col), &product);
                        continue;
                    }
                    for (p, s) in product.terms() {
                        let lead = p.letters()[0];
                        let rest = p.subpath(g.quiver(), 1, p.letters().len());
                        let row = self.handle_index(r, lead);
                        accumulate(&mut out, (row, col), &AlgebraElement::from_path(rest, s.clone()));
                    }
                }
            }
            Sign::Minus => {
                for (row, h2) in self.handles[r].iter().enumerate() {
                    let product = self.handle_element(g, r, h2).mul(&xe);
                    if c != self.vertex {
                        accumulate(&mut out, (row, 0), &product);
                        continue;
                    }
                    for (p, s) in product.terms() {
                        let n = p.letters().len();
                        let col = self.handle_index(c, p.letters()[n - 1]);
                        let prefix = p.subpath(g.quiver(), 0, n - 1);
                        accumulate(&mut out, (row, col), &AlgebraElement::from_path(prefix, s.clone()));
                    }
                }
            }
        }
        out
    }

    /// Left multiplication by an element, as a morphism of the given
    /// bidegree from block `c` to block `r`.
    pub fn left_action_element(&self, g: &Gamma, x: &AlgebraElement, c: Vertex, r: Vertex, degree: i32, weight: i32) -> Morphism {
        let mut entries = Matrix::new();
        for (p, s) in x.terms() {
            debug_assert_eq!((p.source(), p.target()), (c, r));
            for (k, e) in self.left_action(g, p) {
                accumulate(&mut entries, k, &e.scale(s));
            }
        }
        Morphism { degree, weight, entries }
    }

    /// `T (x) X`: each generator `(v, n, w)` of `T` becomes `X_v[n]<w>`.
    pub fn tensor(&self, g: &Gamma, t: &TwistedComplex) -> TwistedComplex {
        let mut offsets = Vec::with_capacity(t.len());
        let mut gens = Vec::new();
        let mut delta = Matrix::new();
        for gen in t.generators() {
            offsets.push(gens.len());
            let block = self.blocks[gen.vertex].shift(gen.shift).twist(gen.weight);
            let off = gens.len();
            for (&(a, b), x) in block.delta() {
                delta.insert((a + off, b + off), x.clone());
            }
            gens.extend_from_slice(block.generators());
        }
        for (&(r, c), x) in t.delta() {
            for (p, s) in x.terms() {
                for ((a, b), e) in self.left_action(g, p) {
                    accumulate(&mut delta, (offsets[r] + a, offsets[c] + b), &e.scale(s));
                }
            }
        }
        TwistedComplex::from_parts(gens, delta)
    }
}

fn accumulate(m: &mut Matrix, key: (usize, usize), value: &AlgebraElement) {
    if value.is_zero() {
        return;
    }
    let sum = match m.get(&key) {
        Some(old) => old.add(value),
        None => value.clone(),
    };
    if sum.is_zero() {
        m.remove(&key);
    } else {
        m.insert(key, sum);
    }
}

/// `T (x) I_i` for [`Sign::Plus`], `T (x) I_i^-` for [`Sign::Minus`].
pub fn tensor_ideal(g: &Gamma, t: &TwistedComplex, i: Vertex, sign: Sign) -> TwistedComplex {
    IdealModel::new(g, i, sign).tensor(g, t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::simple_resolution;
    use crate::quiver::Quiver;
    use crate::scalar::Field;

    fn letters(g: &Gamma) -> Vec<Letter> {
        g.letters().to_vec()
    }

    /// `D(L_l) = L_{d l}` for every letter: left multiplication is a dg map.
    fn assert_dg_bimodule(g: &Gamma, model: &IdealModel) {
        for l in letters(g) {
            let (c, r) = (g.source(l), g.target(l));
            let p = g.letter_path(l);
            let lx = model.left_action_element(g, &g.letter(l), c, r, l.degree(), l.weight() as i32);
            assert!(lx.check_shape(model.block(c), model.block(r)), "shape of {l:?}");
            let d = lx.differential(g, model.block(c), model.block(r));
            let dl = g.d_path(&p);
            let rhs = model.left_action_element(g, &dl, c, r, l.degree() + 1, l.weight() as i32);
            assert_eq!(d.entries, rhs.entries, "letter {:?} sign {:?}", l, model.sign());
        }
    }

    #[test]
    fn models_are_dg_bimodules() {
        for q in [Quiver::a(2), Quiver::a(3), Quiver::d(4), Quiver::kronecker(2)] {
            let g = Gamma::new(q, Field::Rational);
            for i in g.quiver().vertices() {
                for sign in [Sign::Plus, Sign::Minus] {
                    let m = IdealModel::new(&g, i, sign);
                    for v in g.quiver().vertices() {
                        assert_eq!(m.block(v).validate(&g), Ok(()));
                    }
                    assert_dg_bimodule(&g, &m);
                }
            }
        }
    }

    #[test]
    fn left_action_is_multiplicative() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        for sign in [Sign::Plus, Sign::Minus] {
            let m = IdealModel::new(&g, 1, sign);
            for v in 0..3 {
                for u in 0..3 {
                    for w in 0..3 {
                        for x in g.weight_slice(-1, 3, u, v).iter().chain(g.weight_slice(0, 2, u, v).iter()) {
                            for y in g.weight_slice(0, 1, w, u).iter().chain(g.weight_slice(-1, 2, w, u).iter()) {
                                let xy = x.compose(y).unwrap();
                                let lhs = m.left_action(&g, &xy);
                                let rhs = crate::complex::matrix_mul(&m.left_action(&g, x), &m.left_action(&g, y));
                                assert_eq!(lhs, rhs, "{sign:?}");
                            }
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn tensor_preserves_maurer_cartan() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        for j in 0..3 {
            let p = simple_resolution(&g, j);
            for i in 0..3 {
                for sign in [Sign::Plus, Sign::Minus] {
                    let t = tensor_ideal(&g, &p, i, sign);
                    assert_eq!(t.validate(&g), Ok(()), "pS_{j} (x) I_{i} {sign:?}");
                }
            }
        }
    }

    #[test]
    fn plus_then_minus_reduces_to_gamma() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        let gamma = TwistedComplex::gamma(&g);
        for i in 0..3 {
            for first in [Sign::Plus, Sign::Minus] {
                let t = tensor_ideal(&g, &tensor_ideal(&g, &gamma, i, first), i, first.inverse());
                assert_eq!(t.validate(&g), Ok(()));
                let r = t.reduce();
                assert_eq!(r.validate(&g), Ok(()));
                assert_eq!(r.graded_shape(), gamma.graded_shape(), "vertex {i} {first:?}");
            }
        }
    }
}
