//! Independent oracles: braid rewriting on positive words, and a brute-force
//! search for two-term silting objects.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use dgpp_core::braid::BraidWord;
use dgpp_core::complex::{Generator, Matrix, TwistedComplex};
use dgpp_core::hom::positive_extension;
use dgpp_core::iso::{blocks_equal_upto_iso, equal_upto_iso, IsoVerdict};
use dgpp_core::{AlgebraElement, Gamma, Quiver};

fn rewrites(q: &Quiver, w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..w.len() {
        if k + 1 < w.len() && w[k] != w[k + 1] && q.edges_between(w[k], w[k + 1]) == 0 {
            let mut v = w.to_vec();
            v.swap(k, k + 1);
            out.push(v);
        }
        if k + 2 < w.len() && w[k] == w[k + 2] && w[k] != w[k + 1] && q.edges_between(w[k], w[k + 1]) > 0 {
            let mut v = w.to_vec();
            v[k] = w[k + 1];
            v[k + 1] = w[k];
            v[k + 2] = w[k + 1];
            out.push(v);
        }
    }
    out
}

/// Class labels for positive words: two words share a label exactly when
/// one rewrites to the other by braid relations. Positive words that are
/// equal in the braid group are equal in the positive monoid, so this is
/// equality in the group.
pub fn braid_classes(q: &Quiver, words: &[BraidWord]) -> Vec<usize> {
    let mut label: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut next = 0;
    let mut out = Vec::new();
    for w in words {
        assert!(w.is_positive());
        let start: Vec<usize> = w.letters.iter().map(|l| l.vertex).collect();
        if let Some(&c) = label.get(&start) {
            out.push(c);
            continue;
        }
        let mut seen = BTreeSet::from([start.clone()]);
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for y in rewrites(q, &x) {
                if seen.insert(y.clone()) {
                    queue.push_back(y);
                }
            }
        }
        for x in seen {
            label.insert(x, next);
        }
        out.push(next);
        next += 1;
    }
    out
}

fn candidates(g: &Gamma) -> Vec<TwistedComplex> {
    let mut out = Vec::new();
    for v in g.quiver().vertices() {
        out.push(TwistedComplex::free(v));
        out.push(TwistedComplex::free(v).shift(1));
    }
    for top in g.quiver().vertices() {
        for bottom in g.quiver().vertices() {
            for w in 1..=3u32 {
                for p in g.weight_slice(0, w, top, bottom).iter() {
                    let gens = vec![Generator::new(bottom, 0, 0), Generator::new(top, 1, w as i32)];
                    let mut delta = Matrix::new();
                    delta.insert((0, 1), AlgebraElement::from_path(p.clone(), g.field().one()));
                    let t = TwistedComplex::new(gens, delta).expect("shape");
                    if t.validate(g).is_ok() {
                        out.push(t);
                    }
                }
            }
        }
    }
    out
}

fn rigid(g: &Gamma, t: &TwistedComplex, bound: u32) -> bool {
    positive_extension(g, t, t, bound).is_none()
}

fn independent(g: &Gamma, blocks: &[TwistedComplex]) -> bool {
    let v: Vec<Vec<i64>> = blocks.iter().map(|b| b.g_vector(g.num_vertices())).collect();
    match v.len() {
        1 => v[0].iter().any(|&x| x != 0),
        2 => v[0][0] * v[1][1] - v[0][1] * v[1][0] != 0,
        n => panic!("oracle handles rank 1 and 2, got {n}"),
    }
}

/// Number of basic two-term silting objects of a rank-2 Gamma, up to
/// isomorphism and twists of the summands.
pub fn two_term_silting(g: &Gamma, bound: u32) -> usize {
    let n = g.num_vertices();
    let summands: Vec<TwistedComplex> = candidates(g).into_iter().filter(|t| rigid(g, t, bound)).collect();
    let mut found: Vec<Vec<TwistedComplex>> = Vec::new();
    let mut choose = |blocks: Vec<TwistedComplex>| {
        let sum = blocks.iter().fold(TwistedComplex::zero(), |a, b| a.direct_sum(b));
        if !rigid(g, &sum, bound) || !independent(g, &blocks) {
            return;
        }
        if found.iter().any(|f| blocks_equal_upto_iso(g, f, &blocks).is_equal()) {
            return;
        }
        found.push(blocks);
    };
    assert_eq!(n, 2, "oracle is written for rank 2");
    for (x, a) in summands.iter().enumerate() {
        for b in summands.iter().skip(x + 1) {
            if matches!(equal_upto_iso(g, a, b), IsoVerdict::Equal { .. }) {
                continue;
            }
            choose(vec![a.clone(), b.clone()]);
        }
    }
    found.len()
}
