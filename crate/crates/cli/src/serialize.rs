//! JSON forms of complexes, Hom tables and silting objects, and a plain
//! text rendering of Hom tables.

use std::collections::BTreeMap;
use std::fmt::Write;

use dgpp_core::complex::{Generator, Matrix, TwistedComplex};
use dgpp_core::hom::HomTable;
use dgpp_core::silting::{Direction, Provenance, SiltingObject};
use dgpp_core::{AlgebraElement, Gamma, Scalar};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum FormatError {
    #[error("unknown vertex `{0}`")]
    Vertex(String),
    #[error("bad path {0:?}")]
    Path(Vec<String>),
    #[error("bad coefficient `{0}`")]
    Coefficient(String),
    #[error("invalid complex: {0}")]
    Complex(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorJson {
    pub vertex: String,
    pub shift: i32,
    #[serde(default)]
    pub weight: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub path: Vec<String>,
    pub coeff: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EntryJson {
    pub row: usize,
    pub col: usize,
    pub element: Vec<TermJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexJson {
    pub generators: Vec<GeneratorJson>,
    pub delta: Vec<EntryJson>,
}

pub fn element_json(g: &Gamma, x: &AlgebraElement) -> Vec<TermJson> {
    x.terms().map(|(p, c)| TermJson { path: g.path_names(p), coeff: c.to_string() }).collect()
}

pub fn complex_json(g: &Gamma, t: &TwistedComplex) -> ComplexJson {
    let q = g.quiver();
    ComplexJson {
        generators: t
            .generators()
            .iter()
            .map(|x| GeneratorJson { vertex: q.vertex_label(x.vertex).to_string(), shift: x.shift, weight: x.weight })
            .collect(),
        delta: t
            .delta()
            .iter()
            .map(|(&(row, col), x)| EntryJson { row, col, element: element_json(g, x) })
            .collect(),
    }
}

/// Reads a complex back and checks it, Maurer-Cartan equation included.
pub fn complex_from_json(g: &Gamma, c: &ComplexJson) -> Result<TwistedComplex, FormatError> {
    let q = g.quiver();
    let mut generators = Vec::new();
    for x in &c.generators {
        let v = q.vertex_by_label(&x.vertex).ok_or_else(|| FormatError::Vertex(x.vertex.clone()))?;
        generators.push(Generator::new(v, x.shift, x.weight));
    }
    let mut delta = Matrix::new();
    for e in &c.delta {
        let mut x = AlgebraElement::zero();
        for t in &e.element {
            let p = g.parse_path(&t.path).ok_or_else(|| FormatError::Path(t.path.clone()))?;
            let s = Scalar::parse(g.field(), &t.coeff).ok_or_else(|| FormatError::Coefficient(t.coeff.clone()))?;
            x.add_term(p, s);
        }
        delta.insert((e.row, e.col), x);
    }
    let t = TwistedComplex::new(generators, delta).map_err(|e| FormatError::Complex(e.to_string()))?;
    t.validate(g).map_err(|e| FormatError::Complex(e.to_string()))?;
    Ok(t)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellJson {
    pub degree: i32,
    pub weight: i32,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomTableJson {
    pub degrees: (i32, i32),
    pub weights: (i32, i32),
    /// Absent when the table is complete in weight.
    pub weight_bound: Option<u32>,
    pub cells: Vec<CellJson>,
    pub totals: BTreeMap<i32, usize>,
}

pub fn hom_table_json(t: &HomTable) -> HomTableJson {
    HomTableJson {
        degrees: t.degrees,
        weights: t.weights,
        weight_bound: t.weight_bound,
        cells: t.support().into_iter().map(|((degree, weight), dim)| CellJson { degree, weight, dim }).collect(),
        totals: t.degree_totals(),
    }
}

/// Rows are weights, columns degrees; zero cells print as `.`.
pub fn hom_table_text(t: &HomTable) -> String {
    let (plo, phi) = t.degrees;
    let support = t.support();
    let weights: Vec<i32> = match (support.keys().map(|k| k.1).min(), support.keys().map(|k| k.1).max()) {
        (Some(lo), Some(hi)) => (lo..=hi).collect(),
        _ => Vec::new(),
    };
    let width = support.values().map(|d| d.to_string().len()).max().unwrap_or(1).max(3);
    let mut out = String::new();
    let _ = write!(out, "{:>6} |", "w \\ p");
    for p in plo..=phi {
        let _ = write!(out, " {p:>width$}");
    }
    out.push('\n');
    out.push_str(&"-".repeat(8 + (phi - plo + 1) as usize * (width + 1)));
    out.push('\n');
    for w in weights {
        let _ = write!(out, "{w:>6} |");
        for p in plo..=phi {
            match support.get(&(p, w)) {
                Some(d) => {
                    let _ = write!(out, " {d:>width$}");
                }
                None => {
                    let _ = write!(out, " {:>width$}", ".");
                }
            }
        }
        out.push('\n');
    }
    let _ = write!(out, "{:>6} |", "total");
    for p in plo..=phi {
        let _ = write!(out, " {:>width$}", t.degree_total(p).unwrap_or(0));
    }
    out.push('\n');
    out
}

pub fn provenance_text(g: &Gamma, p: &Provenance) -> String {
    match p {
        Provenance::Word(w) if w.is_empty() => "Γ".into(),
        Provenance::Word(w) => w.format(g.quiver()),
        Provenance::Mutations(steps) => steps
            .iter()
            .map(|(i, d)| {
                let dir = match d {
                    Direction::Left => 'L',
                    Direction::Right => 'R',
                };
                format!("{}{dir}", g.quiver().vertex_label(*i))
            })
            .collect::<Vec<_>>()
            .join(" "),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SiltingJson {
    pub provenance: String,
    pub g_vectors: Vec<Vec<i64>>,
    pub blocks: Vec<ComplexJson>,
}

pub fn silting_json(g: &Gamma, m: &SiltingObject) -> SiltingJson {
    SiltingJson {
        provenance: provenance_text(g, &m.provenance),
        g_vectors: m.g_vector(g),
        blocks: m.blocks.iter().map(|b| complex_json(g, b)).collect(),
    }
}

/// One line per generator, then the nonzero entries of the differential.
pub fn complex_text(g: &Gamma, t: &TwistedComplex) -> String {
    let q = g.quiver();
    let mut out = String::new();
    for (k, x) in t.generators().iter().enumerate() {
        let _ = writeln!(out, "  [{k}] P{}[{}]<{}>", q.vertex_label(x.vertex), x.shift, x.weight);
    }
    for (&(r, c), x) in t.delta() {
        let _ = writeln!(out, "  d({c} -> {r}) = {}", g.format_element(x));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use dgpp_core::complex::simple_resolution;
    use dgpp_core::{Field, Quiver};

    #[test]
    fn complex_round_trip() {
        let g = Gamma::new(Quiver::a(3), Field::Rational);
        for i in 0..3 {
            let t = simple_resolution(&g, i);
            let json = serde_json::to_string(&complex_json(&g, &t)).unwrap();
            let back: ComplexJson = serde_json::from_str(&json).unwrap();
            assert_eq!(complex_from_json(&g, &back).unwrap(), t);
        }
    }

    #[test]
    fn weight_defaults_to_zero() {
        let g = Gamma::new(Quiver::a(2), Field::Rational);
        let c: ComplexJson = serde_json::from_str(r#"{"generators":[{"vertex":"1","shift":0}],"delta":[]}"#).unwrap();
        assert_eq!(complex_from_json(&g, &c).unwrap(), TwistedComplex::free(0));
    }
}
