//! The dual twist by a simple, built directly from its defining cone:
//! `tw^-(T) = Cone(T -> (+)_p Hom(T, S_i[p])^* (x) S_i[p])[-1]`, with `S_i`
//! replaced by its resolution `pS_i`.

use crate::algebra::Gamma;
use crate::complex::{cone, simple_resolution, ComplexError, Morphism, TwistedComplex};
use crate::hom::{cell_cohomology, hom_table_module, FdModule};
use crate::quiver::Vertex;

/// `tw^-_{S_i}(T)`. The coevaluation uses a basis of `H^p Hom(T, pS_i)` in
/// every weight where `Hom(T, S_i)` is nonzero; that table is complete, so
/// no truncation is involved.
pub fn dual_twist_direct(g: &Gamma, t: &TwistedComplex, i: Vertex) -> Result<TwistedComplex, ComplexError> {
    // cochains of Hom(T, S_i) sit in the degrees given by the shifts of T
    let lo = t.generators().iter().map(|x| x.shift).min().unwrap_or(0);
    let hi = t.generators().iter().map(|x| x.shift).max().unwrap_or(0);
    let table = hom_table_module(g, t, &FdModule::simple(i), (lo, hi));
    let p_s = simple_resolution(g, i);
    let mut target = TwistedComplex::zero();
    let mut coev = Morphism::zero(0, 0);
    for (&(p, w), &dim) in &table.support() {
        let coh = cell_cohomology(g, t, &p_s, p, w);
        debug_assert_eq!(coh.dim(), dim);
        for class in coh.class_morphisms() {
            let off = target.len();
            for ((r, c), x) in class.entries {
                coev.entries.insert((r + off, c), x);
            }
            target = target.direct_sum(&p_s.shift(p).twist(-w));
        }
    }
    Ok(cone(g, t, &target, &coev)?.shift(-1))
}

/// Minimal model of the dual twist of `T`.
pub fn dual_twist_reduced(g: &Gamma, t: &TwistedComplex, i: Vertex) -> Result<TwistedComplex, ComplexError> {
    dual_twist_direct(g, t, i).map(|x| x.reduce())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::tables_against_simples;
    use crate::quiver::Quiver;
    use crate::scalar::Field;
    use crate::tensor::{tensor_ideal, Sign};

    #[test]
    fn other_projectives_are_fixed() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        let t = TwistedComplex::free(2);
        assert_eq!(dual_twist_reduced(&g, &t, 0).unwrap(), t);
    }

    #[test]
    fn agrees_with_tensoring_by_the_ideal() {
        for q in [Quiver::a(2), Quiver::a(3)] {
            let g = Gamma::new(q, Field::Rational);
            let gamma = TwistedComplex::gamma(&g);
            for i in g.quiver().vertices() {
                let direct = dual_twist_reduced(&g, &gamma, i).unwrap();
                let tensor = tensor_ideal(&g, &gamma, i, Sign::Plus).reduce();
                assert_eq!(
                    tables_against_simples(&g, &direct, (-4, 4)),
                    tables_against_simples(&g, &tensor, (-4, 4)),
                    "vertex {i}"
                );
            }
        }
    }
}
