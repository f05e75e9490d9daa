//! Words in the generators `a_i` and their inverses.

use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::quiver::{Quiver, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidLetter {
    pub vertex: Vertex,
    pub inverse: bool,
}

impl BraidLetter {
    pub fn pos(vertex: Vertex) -> BraidLetter {
        BraidLetter { vertex, inverse: false }
    }

    pub fn neg(vertex: Vertex) -> BraidLetter {
        BraidLetter { vertex, inverse: true }
    }

    pub fn inverted(self) -> BraidLetter {
        BraidLetter { vertex: self.vertex, inverse: !self.inverse }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WordError {
    UnknownVertex(String),
    Syntax { position: usize, token: String },
}

impl fmt::Display for WordError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordError::UnknownVertex(v) => write!(f, "unknown vertex `{v}` in braid word"),
            WordError::Syntax { position, token } => write!(f, "bad braid letter `{token}` at token {position}"),
        }
    }
}

/// A word `a_{i_1}^{e_1} ... a_{i_k}^{e_k}` in the free group on the vertices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BraidWord {
    pub letters: Vec<BraidLetter>,
}

impl BraidWord {
    pub fn empty() -> BraidWord {
        BraidWord::default()
    }

    pub fn new(letters: Vec<BraidLetter>) -> BraidWord {
        BraidWord { letters }
    }

    /// A positive word from a list of vertices.
    pub fn positive(vertices: &[Vertex]) -> BraidWord {
        BraidWord { letters: vertices.iter().map(|&v| BraidLetter::pos(v)).collect() }
    }

    /// Parses whitespace or comma separated vertex labels, `'` marking an
    /// inverse: `"1 2 1'"`.
    pub fn parse(q: &Quiver, s: &str) -> Result<BraidWord, WordError> {
        let mut letters = Vec::new();
        for (position, token) in s.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()).enumerate() {
            let (label, inverse) = match token.strip_suffix('\'') {
                Some(l) => (l, true),
                None => (token, false),
            };
            if label.is_empty() || label.contains('\'') {
                return Err(WordError::Syntax { position, token: token.into() });
            }
            let vertex = q.vertex_by_label(label).ok_or_else(|| WordError::UnknownVertex(label.into()))?;
            letters.push(BraidLetter { vertex, inverse });
        }
        Ok(BraidWord { letters })
    }

    pub fn format(&self, q: &Quiver) -> String {
        let mut out = String::new();
        for (k, l) in self.letters.iter().enumerate() {
            if k > 0 {
                out.push(' ');
            }
            out.push_str(q.vertex_label(l.vertex));
            if l.inverse {
                out.push('\'');
            }
        }
        out
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_positive(&self) -> bool {
        self.letters.iter().all(|l| !l.inverse)
    }

    /// Cancels adjacent `a_i a_i^-` and `a_i^- a_i` until none remain.
    pub fn free_reduce(&self) -> BraidWord {
        let mut out: Vec<BraidLetter> = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            if out.last() == Some(&l.inverted()) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        BraidWord { letters: out }
    }

    /// The reversed word with every letter inverted.
    pub fn inverse(&self) -> BraidWord {
        BraidWord { letters: self.letters.iter().rev().map(|l| l.inverted()).collect() }
    }

    pub fn concat(&self, other: &BraidWord) -> BraidWord {
        let mut letters = self.letters.clone();
        letters.extend_from_slice(&other.letters);
        BraidWord { letters }
    }

    /// The two sides of the defining relation for `i, j`: `a_i a_j = a_j a_i`
    /// when they are not adjacent, `a_i a_j a_i = a_j a_i a_j` otherwise.
    pub fn relation(q: &Quiver, i: Vertex, j: Vertex) -> (BraidWord, BraidWord) {
        if q.edges_between(i, j) == 0 {
            (BraidWord::positive(&[i, j]), BraidWord::positive(&[j, i]))
        } else {
            (BraidWord::positive(&[i, j, i]), BraidWord::positive(&[j, i, j]))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_format_round_trip() {
        let q = Quiver::a(3);
        let w = BraidWord::parse(&q, "1 2 1' 3").unwrap();
        assert_eq!(w.letters, alloc::vec![BraidLetter::pos(0), BraidLetter::pos(1), BraidLetter::neg(0), BraidLetter::pos(2)]);
        assert_eq!(w.format(&q), "1 2 1' 3");
        assert!(matches!(BraidWord::parse(&q, "4"), Err(WordError::UnknownVertex(_))));
        assert!(matches!(BraidWord::parse(&q, "1''"), Err(WordError::Syntax { .. })));
        assert!(BraidWord::parse(&q, "  ").unwrap().is_empty());
    }

    #[test]
    fn free_reduction_and_inverse() {
        let q = Quiver::a(2);
        let w = BraidWord::parse(&q, "1 2 2' 1' 2").unwrap();
        assert_eq!(w.free_reduce(), BraidWord::positive(&[1]));
        assert!(w.concat(&w.inverse()).free_reduce().is_empty());
    }
}
