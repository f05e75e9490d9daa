//! The acceptance checks, run on the configured quiver.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use dgpp_core::braid::{BraidLetter, BraidWord};
use dgpp_core::complex::{simple_resolution, TwistedComplex};
use dgpp_core::hom::{hom_table, hom_table_module, tables_against_simples, FdModule, Window};
use dgpp_core::ideal::{braid_relation_check, ideal_i, quotient_cell, verify_simple_resolution, DgIdeal};
use dgpp_core::iso::equal_upto_iso;
use dgpp_core::silting::{
    braid_to_silting, enumerate_interval_limited, mutate, order_reversal_test, silting_equal, word_equality, Direction,
    SiltingError, SiltingObject, WordVerdict,
};
use dgpp_core::tensor::{tensor_ideal, IdealModel, Sign};
use dgpp_core::twist::dual_twist_reduced;
use dgpp_core::{Gamma, Quiver};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde::Serialize;

use crate::config::{RunConfig, MIN_WEIGHT_BOUND};
use crate::report::Status;

/// Largest interval the suite enumerates.
const MAX_INTERVAL: u128 = 200;
const SEED: u64 = 0x5eed;

#[derive(Clone, Debug, Serialize)]
pub struct CheckResult {
    pub check: String,
    pub status: Status,
    #[serde(rename = "W")]
    pub weight_bound: Option<u32>,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<CheckResult>,
    pub verdict: Status,
}

enum Outcome {
    Pass(String),
    Fail(String),
    Skip(String),
    Insufficient(String),
}

impl From<SiltingError> for Outcome {
    fn from(e: SiltingError) -> Outcome {
        match e {
            SiltingError::Unstable { .. } | SiltingError::NodeLimit(_) => Outcome::Insufficient(e.to_string()),
            e => Outcome::Fail(e.to_string()),
        }
    }
}

type Check = fn(&Gamma, &RunConfig) -> Outcome;

struct CheckDef {
    name: &'static str,
    /// Uses weight-truncated computations, so needs `W >= 4`.
    truncated: bool,
    run: Check,
}

macro_rules! attempt {
    ($e:expr) => {
        match $e {
            Ok(x) => x,
            Err(e) => return Outcome::from(e),
        }
    };
}

macro_rules! fail_on {
    ($e:expr) => {
        match $e {
            Ok(x) => x,
            Err(e) => return Outcome::Fail(e.to_string()),
        }
    };
}

const SUITE: [CheckDef; 10] = [
    CheckDef { name: "sphericality", truncated: false, run: sphericality },
    CheckDef { name: "resolution", truncated: true, run: resolution },
    CheckDef { name: "ideal-is-mutation", truncated: true, run: ideal_is_mutation },
    CheckDef { name: "braid-relations", truncated: true, run: braid_relations },
    CheckDef { name: "inverses", truncated: false, run: inverses },
    CheckDef { name: "twist-is-tensor", truncated: false, run: twist_is_tensor },
    CheckDef { name: "silting-certificates", truncated: true, run: certificates },
    CheckDef { name: "word-injectivity", truncated: false, run: injectivity },
    CheckDef { name: "order-reversal", truncated: true, run: order_reversal },
    CheckDef { name: "interval", truncated: true, run: interval },
];

pub fn suite_names() -> Vec<&'static str> {
    SUITE.iter().map(|s| s.name).collect()
}

/// Runs every check; the verdict is the worst status, with skipped checks
/// counting as passes.
pub fn run_check_suite(config: &RunConfig, only: &[String]) -> SuiteReport {
    let g = Gamma::new(config.quiver.clone(), config.field);
    let mut checks = Vec::new();
    let mut verdict = Status::Pass;
    for spec in SUITE.iter().filter(|s| only.is_empty() || only.iter().any(|o| o == s.name)) {
        let outcome = if spec.truncated && config.weight_bound < MIN_WEIGHT_BOUND {
            Outcome::Insufficient(format!("needs W >= {MIN_WEIGHT_BOUND}"))
        } else {
            (spec.run)(&g, config)
        };
        let (status, detail) = match outcome {
            Outcome::Pass(d) => (Status::Pass, d),
            Outcome::Skip(d) => (Status::Pass, format!("skipped: {d}")),
            Outcome::Fail(d) => (Status::Fail, d),
            Outcome::Insufficient(d) => (Status::WindowInsufficient, d),
        };
        verdict = verdict.combine(status);
        checks.push(CheckResult {
            check: spec.name.to_string(),
            status,
            weight_bound: spec.truncated.then_some(config.weight_bound),
            detail,
        });
    }
    SuiteReport { suite: "acceptance".into(), checks, verdict }
}

fn sphericality(g: &Gamma, config: &RunConfig) -> Outcome {
    let (lo, hi) = config.degree_window;
    for i in g.quiver().vertices() {
        let totals = hom_table_module(g, &simple_resolution(g, i), &FdModule::simple(i), (lo, hi)).degree_totals();
        for (p, d) in totals {
            if d != usize::from(p == 0 || p == 2) {
                return Outcome::Fail(format!("vertex {}: dim Hom(S, S[{p}]) = {d}", g.quiver().vertex_label(i)));
            }
        }
    }
    Outcome::Pass(format!("degrees {lo}..{hi}"))
}

fn resolution(g: &Gamma, config: &RunConfig) -> Outcome {
    let mut cells = 0;
    for i in g.quiver().vertices() {
        let r = fail_on!(verify_simple_resolution(g, i, config.weight_bound));
        if !r.passed() {
            return Outcome::Fail(format!("vertex {}: chain map {}, failing cell {:?}", g.quiver().vertex_label(i), r.chain_map, r.failure));
        }
        cells += r.cells_checked;
    }
    Outcome::Pass(format!("{cells} cells"))
}

fn ideal_is_mutation(g: &Gamma, config: &RunConfig) -> Outcome {
    let bound = config.weight_bound;
    let zero = fail_on!(DgIdeal::generated(g, "0", vec![]));
    let low = -(bound as i32) / 2 - 1;
    for i in g.quiver().vertices() {
        let ideal = fail_on!(ideal_i(g, i));
        let model = IdealModel::new(g, i, Sign::Plus);
        for v in g.quiver().vertices() {
            for s in g.quiver().vertices() {
                let table = hom_table(g, &TwistedComplex::free(s), model.block(v), Window::new(low, 1, bound));
                for w in 0..=bound {
                    let cell = match quotient_cell(g, &zero, &ideal, w, s, v) {
                        Ok(c) => c,
                        Err(c) => return Outcome::Fail(format!("I_{i} not closed at {c:?}")),
                    };
                    for p in low..=1 {
                        let a = cell.cohomology.get(&p).copied().unwrap_or(0);
                        let b = table.get(p, w as i32).unwrap_or(0);
                        if a != b {
                            return Outcome::Fail(format!("I_{i} at degree {p}, weight {w}: ideal {a}, model {b}"));
                        }
                    }
                }
            }
        }
        let mutated = attempt!(mutate(g, &SiltingObject::gamma(g), i, Direction::Left, bound));
        let tensored = attempt!(braid_to_silting(g, &BraidWord::positive(&[i])));
        if !silting_equal(g, &mutated, &tensored).is_equal() {
            return Outcome::Fail(format!("left mutation at {} differs from I_i", g.quiver().vertex_label(i)));
        }
    }
    Outcome::Pass(format!("{} vertices", g.num_vertices()))
}

fn braid_relations(g: &Gamma, config: &RunConfig) -> Outcome {
    let n = g.num_vertices();
    let mut pairs = 0;
    for i in 0..n {
        for j in (i + 1)..n {
            let r = match braid_relation_check(g, i, j, config.weight_bound) {
                Ok(r) => r,
                // multiple arrows: no braid relation to check
                Err(_) if g.quiver().edges_between(i, j) > 1 => continue,
                Err(e) => return Outcome::Fail(e.to_string()),
            };
            if let Some(c) = r.checks.iter().find(|c| !c.passed) {
                return Outcome::Fail(format!("({i},{j}) {}: {}", c.name, c.detail));
            }
            pairs += 1;
        }
    }
    Outcome::Pass(format!("{pairs} pairs"))
}

fn random_word(rng: &mut StdRng, n: usize, len: usize, signed: bool) -> BraidWord {
    BraidWord::new(
        (0..len)
            .map(|_| BraidLetter { vertex: rng.gen_range(0..n), inverse: signed && rng.gen_bool(0.5) })
            .collect(),
    )
}

fn inverses(g: &Gamma, _: &RunConfig) -> Outcome {
    let gamma = TwistedComplex::gamma(g);
    for i in g.quiver().vertices() {
        for (a, b) in [(Sign::Plus, Sign::Minus), (Sign::Minus, Sign::Plus)] {
            let t = tensor_ideal(g, &tensor_ideal(g, &gamma, i, a), i, b).reduce();
            if !equal_upto_iso(g, &t, &gamma).is_equal() {
                return Outcome::Fail(format!("vertex {}: {a:?} then {b:?}", g.quiver().vertex_label(i)));
            }
        }
    }
    let mut rng = StdRng::seed_from_u64(SEED);
    let base = SiltingObject::gamma(g);
    for _ in 0..3 {
        let w = random_word(&mut rng, g.num_vertices(), 3, true);
        let m = attempt!(braid_to_silting(g, &w.concat(&w.inverse())));
        if !silting_equal(g, &m, &base).is_equal() {
            return Outcome::Fail(format!("word `{}`", w.format(g.quiver())));
        }
    }
    Outcome::Pass("all vertices, 3 random words".into())
}

fn twist_is_tensor(g: &Gamma, config: &RunConfig) -> Outcome {
    let gamma = TwistedComplex::gamma(g);
    for i in g.quiver().vertices() {
        let direct = fail_on!(dual_twist_reduced(g, &gamma, i));
        let tensor = tensor_ideal(g, &gamma, i, Sign::Plus).reduce();
        if tables_against_simples(g, &direct, config.degree_window) != tables_against_simples(g, &tensor, config.degree_window) {
            return Outcome::Fail(format!("vertex {}", g.quiver().vertex_label(i)));
        }
    }
    Outcome::Pass("all vertices".into())
}

fn positive_words(n: usize, max_len: usize) -> Vec<BraidWord> {
    let mut out = vec![BraidWord::empty()];
    let mut layer = out.clone();
    for _ in 0..max_len {
        layer = layer
            .iter()
            .flat_map(|w| (0..n).map(move |v| w.concat(&BraidWord::positive(&[v]))))
            .collect();
        out.extend(layer.iter().cloned());
    }
    out
}

/// Longest random word used; complexes grow much faster with word length
/// away from Dynkin type.
fn max_word_len(g: &Gamma) -> usize {
    if g.quiver().is_dynkin() {
        4
    } else {
        2
    }
}

fn certificates(g: &Gamma, config: &RunConfig) -> Outcome {
    let n = g.num_vertices();
    let mut rng = StdRng::seed_from_u64(SEED);
    let mut words = positive_words(n, if n <= 2 { max_word_len(g) } else { 2 });
    words.extend((0..10).map(|_| {
        let len = rng.gen_range(1..=max_word_len(g));
        random_word(&mut rng, n, len, true)
    }));
    for w in &words {
        let m = attempt!(braid_to_silting(g, w));
        if let Some((p, wt)) = m.certify(g, config.weight_bound).witness {
            return Outcome::Fail(format!("`{}`: Hom^{p} in weight {wt}", w.format(g.quiver())));
        }
    }
    Outcome::Pass(format!("{} words", words.len()))
}

fn rewrites(q: &Quiver, w: &[usize]) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for k in 0..w.len() {
        if k + 1 < w.len() && w[k] != w[k + 1] && q.edges_between(w[k], w[k + 1]) == 0 {
            let mut v = w.to_vec();
            v.swap(k, k + 1);
            out.push(v);
        }
        if k + 2 < w.len() && w[k] == w[k + 2] && w[k] != w[k + 1] && q.edges_between(w[k], w[k + 1]) == 1 {
            let mut v = w.to_vec();
            v[k] = w[k + 1];
            v[k + 1] = w[k];
            v[k + 2] = w[k + 1];
            out.push(v);
        }
    }
    out
}

/// Classes of positive words under the braid relations.
pub fn rewriting_classes(q: &Quiver, words: &[BraidWord]) -> Vec<usize> {
    let mut label: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut out = Vec::new();
    for w in words {
        let start: Vec<usize> = w.letters.iter().map(|l| l.vertex).collect();
        if let Some(&c) = label.get(&start) {
            out.push(c);
            continue;
        }
        let class = label.values().max().map_or(0, |m| m + 1);
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
            label.insert(x, class);
        }
        out.push(class);
    }
    out
}

fn injectivity(g: &Gamma, _: &RunConfig) -> Outcome {
    if !g.quiver().is_dynkin() {
        return Outcome::Skip("equality is only decidable for Dynkin quivers".into());
    }
    let n = g.num_vertices();
    let words = positive_words(n, if n <= 2 { 4 } else { 3 });
    let classes = rewriting_classes(g.quiver(), &words);
    for (x, a) in words.iter().enumerate() {
        for (y, b) in words.iter().enumerate().skip(x + 1) {
            let verdict = attempt!(word_equality(g, a, b));
            let same = classes[x] == classes[y];
            let agrees = match verdict {
                WordVerdict::EqualInBQ => same,
                WordVerdict::DistinctInBQ => !same,
                WordVerdict::Unknown(why) => return Outcome::Fail(format!("undecided: {why}")),
            };
            if !agrees {
                return Outcome::Fail(format!("`{}` vs `{}`", a.format(g.quiver()), b.format(g.quiver())));
            }
        }
    }
    Outcome::Pass(format!("{} words", words.len()))
}

fn order_reversal(g: &Gamma, config: &RunConfig) -> Outcome {
    let mut rng = StdRng::seed_from_u64(SEED);
    let n = g.num_vertices();
    for _ in 0..10 {
        let top = max_word_len(g) - 1;
        let (lc, lb) = (rng.gen_range(0..=top), rng.gen_range(0..=top));
        let c = random_word(&mut rng, n, lc, false);
        let b = random_word(&mut rng, n, lb, true);
        let r = attempt!(order_reversal_test(g, &c, &b, config.weight_bound));
        if !r.passed() {
            return Outcome::Fail(format!("c = `{}`, b = `{}`", c.format(g.quiver()), b.format(g.quiver())));
        }
    }
    Outcome::Pass("10 pairs".into())
}

/// Order of the Weyl group of a Dynkin quiver.
pub fn weyl_group_order(q: &Quiver) -> Option<u128> {
    if !q.is_dynkin() {
        return None;
    }
    let n = q.num_vertices();
    let mut adj = vec![Vec::new(); n];
    for a in q.arrows() {
        adj[a.source].push(a.target);
        adj[a.target].push(a.source);
    }
    let fact = |k: u128| (1..=k).product::<u128>();
    let mut seen = vec![false; n];
    let mut order = 1u128;
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut comp = vec![start];
        seen[start] = true;
        let mut k = 0;
        while k < comp.len() {
            for &w in &adj[comp[k]] {
                if !seen[w] {
                    seen[w] = true;
                    comp.push(w);
                }
            }
            k += 1;
        }
        let m = comp.len() as u128;
        let branch = comp.iter().find(|&&v| adj[v].len() == 3);
        order *= match branch {
            None => fact(m + 1),
            Some(&b) => {
                let mut arms: Vec<usize> = adj[b]
                    .iter()
                    .map(|&start| {
                        let (mut prev, mut cur, mut len) = (b, start, 1);
                        while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                            (prev, cur, len) = (cur, next, len + 1);
                        }
                        len
                    })
                    .collect();
                arms.sort();
                match arms.as_slice() {
                    [1, 1, _] => (1u128 << (m - 1)) * fact(m),
                    [1, 2, 2] => 51_840,
                    [1, 2, 3] => 2_903_040,
                    [1, 2, 4] => 696_729_600,
                    _ => return None,
                }
            }
        };
    }
    Some(order)
}

fn interval(g: &Gamma, config: &RunConfig) -> Outcome {
    let Some(expected) = weyl_group_order(g.quiver()) else {
        return Outcome::Skip("interval is infinite away from Dynkin type".into());
    };
    if expected > MAX_INTERVAL {
        return Outcome::Skip(format!("{expected} objects expected, above the limit {MAX_INTERVAL}"));
    }
    let slice = attempt!(enumerate_interval_limited(g, 1, config.weight_bound, expected as usize + 1));
    if slice.nodes.len() as u128 != expected {
        return Outcome::Fail(format!("{} objects, expected {expected}", slice.nodes.len()));
    }
    Outcome::Pass(format!("{expected} two-term silting objects"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weyl_orders() {
        assert_eq!(weyl_group_order(&Quiver::a(2)), Some(6));
        assert_eq!(weyl_group_order(&Quiver::a(3)), Some(24));
        assert_eq!(weyl_group_order(&Quiver::d(4)), Some(192));
        assert_eq!(weyl_group_order(&Quiver::e(6)), Some(51_840));
        assert_eq!(weyl_group_order(&Quiver::kronecker(2)), None);
    }

    #[test]
    fn a2_positive_words_of_length_three() {
        let q = Quiver::a(2);
        let words = vec![BraidWord::positive(&[0, 1, 0]), BraidWord::positive(&[1, 0, 1]), BraidWord::positive(&[0, 0, 1])];
        let c = rewriting_classes(&q, &words);
        assert_eq!(c[0], c[1]);
        assert_ne!(c[0], c[2]);
    }
}
