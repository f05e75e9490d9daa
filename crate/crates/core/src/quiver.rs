//! Finite acyclic, loop-free quivers.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

/// Index of a vertex inside a [`Quiver`].
pub type Vertex = usize;
/// Index of an arrow inside a [`Quiver`].
pub type ArrowId = usize;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub label: String,
    pub source: Vertex,
    pub target: Vertex,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum QuiverError {
    Loop { arrow: String },
    Cycle { through: String },
    DuplicateVertex(String),
    DuplicateArrow(String),
    UnknownVertex(String),
    UnknownName(String),
    Empty,
}

impl fmt::Display for QuiverError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            QuiverError::Loop { arrow } => write!(f, "arrow {} is a loop", arrow),
            QuiverError::Cycle { through } => {
                write!(f, "quiver has an oriented cycle through vertex {}", through)
            }
            QuiverError::DuplicateVertex(v) => write!(f, "duplicate vertex id {}", v),
            QuiverError::DuplicateArrow(a) => write!(f, "duplicate arrow id {}", a),
            QuiverError::UnknownVertex(v) => write!(f, "unknown vertex {}", v),
            QuiverError::UnknownName(n) => write!(f, "unknown built-in quiver {}", n),
            QuiverError::Empty => write!(f, "quiver has no vertices"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
    name: Option<String>,
}

impl Quiver {
    /// Builds and validates a quiver from vertex labels and
    /// `(arrow label, source label, target label)` triples.
    pub fn new(
        vertices: Vec<String>,
        arrows: Vec<(String, String, String)>,
    ) -> Result<Quiver, QuiverError> {
        if vertices.is_empty() {
            return Err(QuiverError::Empty);
        }
        for (k, v) in vertices.iter().enumerate() {
            if vertices[..k].contains(v) {
                return Err(QuiverError::DuplicateVertex(v.clone()));
            }
        }
        let find = |l: &str| {
            vertices
                .iter()
                .position(|v| v == l)
                .ok_or_else(|| QuiverError::UnknownVertex(l.to_string()))
        };
        let mut out: Vec<Arrow> = Vec::new();
        for (label, s, t) in arrows {
            if out.iter().any(|a| a.label == label) {
                return Err(QuiverError::DuplicateArrow(label));
            }
            let source = find(&s)?;
            let target = find(&t)?;
            if source == target {
                return Err(QuiverError::Loop { arrow: label });
            }
            out.push(Arrow {
                label,
                source,
                target,
            });
        }
        let q = Quiver {
            vertices,
            arrows: out,
            name: None,
        };
        if let Some(v) = q.find_cycle() {
            return Err(QuiverError::Cycle {
                through: q.vertices[v].clone(),
            });
        }
        Ok(q)
    }

    /// Convenience constructor with vertices `1..=n` and arrows given by
    /// 1-based `(source, target)` pairs, labelled `a1, a2, ...`.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Quiver, QuiverError> {
        let vertices = (1..=n).map(|i| i.to_string()).collect();
        let arrows = edges
            .iter()
            .enumerate()
            .map(|(k, (s, t))| (format!("a{}", k + 1), s.to_string(), t.to_string()))
            .collect();
        Quiver::new(vertices, arrows)
    }

    /// Linear orientation `1 -> 2 -> ... -> n`.
    pub fn a(n: usize) -> Quiver {
        let edges: Vec<_> = (1..n).map(|i| (i, i + 1)).collect();
        Quiver::from_edges(n, &edges).unwrap().named(format!("A{}", n))
    }

    /// `1 -> 2 -> ... -> n-2` with `n-2 -> n-1` and `n-2 -> n`.
    pub fn d(n: usize) -> Quiver {
        assert!(n >= 4, "D_n needs n >= 4");
        let mut edges: Vec<_> = (1..n - 2).map(|i| (i, i + 1)).collect();
        edges.push((n - 2, n - 1));
        edges.push((n - 2, n));
        Quiver::from_edges(n, &edges).unwrap().named(format!("D{}", n))
    }

    /// Chain `1 -> ... -> n-1` with the branch vertex `n` attached at `3 -> n`.
    pub fn e(n: usize) -> Quiver {
        assert!((6..=8).contains(&n), "E_n needs 6 <= n <= 8");
        let mut edges: Vec<_> = (1..n - 1).map(|i| (i, i + 1)).collect();
        edges.push((3, n));
        Quiver::from_edges(n, &edges).unwrap().named(format!("E{}", n))
    }

    /// `m` parallel arrows `1 -> 2`.
    pub fn kronecker(m: usize) -> Quiver {
        let edges: Vec<_> = (0..m).map(|_| (1, 2)).collect();
        Quiver::from_edges(2, &edges)
            .unwrap()
            .named(format!("Kronecker{}", m))
    }

    /// Resolves names like `A3`, `D4`, `E6`, `Kronecker2` (case-insensitive).
    pub fn builtin(name: &str) -> Result<Quiver, QuiverError> {
        let unknown = || QuiverError::UnknownName(name.to_string());
        let lower = name.trim().to_ascii_lowercase();
        let num = |s: &str| s.parse::<usize>().map_err(|_| unknown());
        if let Some(rest) = lower.strip_prefix("kronecker") {
            let m = num(rest.trim_start_matches(['(', '_']).trim_end_matches(')'))?;
            if m == 0 {
                return Err(unknown());
            }
            return Ok(Quiver::kronecker(m));
        }
        let (kind, rest) = lower.split_at(1.min(lower.len()));
        let n = num(rest.trim_start_matches('_'))?;
        match kind {
            "a" if n >= 1 => Ok(Quiver::a(n)),
            "d" if n >= 4 => Ok(Quiver::d(n)),
            "e" if (6..=8).contains(&n) => Ok(Quiver::e(n)),
            _ => Err(unknown()),
        }
    }

    pub fn named(mut self, name: String) -> Quiver {
        self.name = Some(name);
        self
    }

    /// Built-in name, or the arrow-list text form.
    pub fn name(&self) -> String {
        match &self.name {
            Some(n) => n.clone(),
            None => {
                let parts: Vec<String> = self
                    .arrows
                    .iter()
                    .map(|a| format!("{}->{}", self.vertices[a.source], self.vertices[a.target]))
                    .collect();
                if parts.is_empty() {
                    self.vertices.join(", ")
                } else {
                    parts.join(", ")
                }
            }
        }
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> {
        0..self.vertices.len()
    }

    pub fn vertex_label(&self, v: Vertex) -> &str {
        &self.vertices[v]
    }

    pub fn vertex_by_label(&self, label: &str) -> Option<Vertex> {
        self.vertices.iter().position(|v| v == label)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, a: ArrowId) -> &Arrow {
        &self.arrows[a]
    }

    /// Arrows with `target == v`.
    pub fn arrows_into(&self, v: Vertex) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].target == v)
    }

    /// Arrows with `source == v`.
    pub fn arrows_out_of(&self, v: Vertex) -> impl Iterator<Item = ArrowId> + '_ {
        (0..self.arrows.len()).filter(move |&a| self.arrows[a].source == v)
    }

    /// Number of arrows between `i` and `j` in either direction.
    pub fn edges_between(&self, i: Vertex, j: Vertex) -> usize {
        self.arrows
            .iter()
            .filter(|a| (a.source == i && a.target == j) || (a.source == j && a.target == i))
            .count()
    }

    fn find_cycle(&self) -> Option<Vertex> {
        // 0 = unvisited, 1 = on stack, 2 = done
        let n = self.vertices.len();
        let mut state = vec![0u8; n];
        for start in 0..n {
            if state[start] != 0 {
                continue;
            }
            let mut stack: Vec<(Vertex, usize)> = vec![(start, 0)];
            state[start] = 1;
            while let Some(&mut (v, ref mut next)) = stack.last_mut() {
                let out: Vec<Vertex> = self
                    .arrows
                    .iter()
                    .filter(|a| a.source == v)
                    .map(|a| a.target)
                    .collect();
                if *next < out.len() {
                    let w = out[*next];
                    *next += 1;
                    match state[w] {
                        1 => return Some(w),
                        0 => {
                            state[w] = 1;
                            stack.push((w, 0));
                        }
                        _ => {}
                    }
                } else {
                    state[v] = 2;
                    stack.pop();
                }
            }
        }
        None
    }

    /// True when every connected component is a simply laced Dynkin diagram.
    pub fn is_dynkin(&self) -> bool {
        let n = self.vertices.len();
        let mut adj = vec![Vec::new(); n];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        for v in 0..n {
            let mut sorted = adj[v].clone();
            sorted.sort_unstable();
            if sorted.windows(2).any(|w| w[0] == w[1]) {
                return false;
            }
        }
        let mut seen = vec![false; n];
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut comp = Vec::new();
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(v) = stack.pop() {
                comp.push(v);
                for &w in &adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
            let edges: usize = comp.iter().map(|&v| adj[v].len()).sum::<usize>() / 2;
            if edges + 1 != comp.len() {
                return false;
            }
            let branch: Vec<Vertex> = comp.iter().copied().filter(|&v| adj[v].len() > 2).collect();
            match branch.len() {
                0 => {}
                1 => {
                    let c = branch[0];
                    if adj[c].len() != 3 {
                        return false;
                    }
                    let mut arms: Vec<usize> = adj[c]
                        .iter()
                        .map(|&first| {
                            let (mut prev, mut cur, mut len) = (c, first, 1);
                            loop {
                                let next: Vec<_> = adj[cur].iter().filter(|&&w| w != prev).collect();
                                if next.is_empty() {
                                    break len;
                                }
                                prev = cur;
                                cur = *next[0];
                                len += 1;
                            }
                        })
                        .collect();
                    arms.sort_unstable();
                    // lengths excluding the center: D = (1,1,k), E = (1,2,2..4)
                    let ok = arms[0] == 1 && (arms[1] == 1 || (arms[1] == 2 && arms[2] <= 4));
                    if !ok {
                        return false;
                    }
                }
                _ => return false,
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        let a2 = Quiver::builtin("A2").unwrap();
        assert_eq!(a2.num_vertices(), 2);
        assert_eq!(a2.arrows().len(), 1);
        assert_eq!(a2.arrow(0).source, 0);
        assert_eq!(Quiver::builtin("D4").unwrap().arrows().len(), 3);
        assert_eq!(Quiver::builtin("kronecker2").unwrap().edges_between(0, 1), 2);
        assert!(matches!(Quiver::builtin("X9"), Err(QuiverError::UnknownName(_))));
    }

    #[test]
    fn rejects_loops_and_cycles() {
        assert!(matches!(
            Quiver::from_edges(1, &[(1, 1)]),
            Err(QuiverError::Loop { .. })
        ));
        assert!(matches!(
            Quiver::from_edges(3, &[(1, 2), (2, 3), (3, 1)]),
            Err(QuiverError::Cycle { .. })
        ));
    }

    #[test]
    fn dynkin_classification() {
        for q in [Quiver::a(1), Quiver::a(5), Quiver::d(4), Quiver::d(6), Quiver::e(6), Quiver::e(7), Quiver::e(8)] {
            assert!(q.is_dynkin(), "{}", q.name());
        }
        assert!(!Quiver::kronecker(2).is_dynkin());
        // affine D4~: star with four arms
        let star = Quiver::from_edges(5, &[(1, 2), (1, 3), (1, 4), (1, 5)]).unwrap();
        assert!(!star.is_dynkin());
        // affine E6~: arms (2,2,2)
        let e6t = Quiver::from_edges(7, &[(1, 2), (2, 3), (3, 4), (4, 5), (3, 6), (6, 7)]).unwrap();
        assert!(!e6t.is_dynkin());
    }
}
