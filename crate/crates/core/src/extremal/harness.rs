//! Randomized checks of the structural facts about graphs that contain a
//! complete bipartite `[A, B]` with `|A| = r - 3`. Each sample is tested with
//! the minor search; a failed implication means the search is wrong.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ExtremalError;
use crate::constructions::{pattern_graph, PatternSpec};
use crate::graph::{bit, Bits, Graph};
use crate::graph6::to_graph6;
use crate::minor::{check_model, find_minor};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum HarnessName {
    /// `B` under a `K_r^-`-free or `K_r^=`-free host.
    Lemma31,
    /// Completing `A` to a clique, and moving a vertex onto `A`.
    Clique,
    /// Trading a vertex's `B`-edges for `A`-edges.
    Rewire,
}

impl HarnessName {
    pub fn name(self) -> &'static str {
        match self {
            HarnessName::Lemma31 => "lemma31",
            HarnessName::Clique => "clique",
            HarnessName::Rewire => "rewire",
        }
    }
}

impl fmt::Display for HarnessName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for HarnessName {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "lemma31" => Ok(HarnessName::Lemma31),
            "clique" => Ok(HarnessName::Clique),
            "rewire" => Ok(HarnessName::Rewire),
            _ => Err(format!("unknown harness {s:?}; expected lemma31, clique or rewire")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HarnessConfig {
    pub trials: usize,
    pub r: usize,
    pub n: usize,
    /// `|B|` is drawn from `ceil((1 - delta) n) ..= n - (r - 3)`.
    pub delta: f64,
    pub seed: u64,
}

impl HarnessConfig {
    pub fn new(r: usize, n: usize, trials: usize, seed: u64) -> Self {
        Self {
            trials,
            r,
            n,
            delta: 0.3,
            seed,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckTally {
    /// Samples the check ran on.
    pub evaluated: u64,
    /// Samples where the implication's premise held.
    pub premise_held: u64,
    /// Samples where the premise held and the conclusion did not.
    pub failed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HarnessFailure {
    pub check: String,
    pub trial: usize,
    pub graph6: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HarnessSummary {
    pub name: HarnessName,
    pub config: HarnessConfig,
    /// Trials whose sample met the size requirements.
    pub hypothesis_met: u64,
    pub skipped: u64,
    pub checks: BTreeMap<String, CheckTally>,
    pub failures: Vec<HarnessFailure>,
    pub passed: bool,
}

pub fn run_harness(name: HarnessName, config: &HarnessConfig) -> Result<HarnessSummary, ExtremalError> {
    match name {
        HarnessName::Lemma31 => harness_lemma31(config),
        HarnessName::Clique => harness_clique_completion(config),
        HarnessName::Rewire => harness_rewire(config),
    }
}

/// Vertex roles of one sample, as masks over the relabeled graph.
#[derive(Debug, Clone)]
struct Sample {
    g: Graph,
    a: u64,
    b: u64,
    rest: u64,
}

impl Sample {
    /// Vertices of `B` with no neighbor outside `A ∪ B`.
    fn detached(&self) -> u64 {
        Bits(self.b).filter(|&v| self.g.neighbors(v) & self.rest == 0).fold(0, |m, v| m | bit(v))
    }

    /// For each component of `G[R]`, the `B`-vertices adjacent to it.
    fn component_attachments(&self) -> Vec<u64> {
        self.g
            .components_within(self.rest)
            .into_iter()
            .map(|c| Bits(self.b).filter(|&v| self.g.neighbors(v) & c != 0).fold(0, |m, v| m | bit(v)))
            .collect()
    }
}

/// Random graph with `[A, B]` complete, `|A| = t`, `|B| = b`, other pairs
/// drawn with per-class densities skewed sparse, then randomly relabeled.
fn sample(rng: &mut ChaCha8Rng, n: usize, t: usize, b: usize, clique_a: bool) -> Sample {
    let role = |v: usize| if v < t { 0 } else if v < t + b { 1 } else { 2 };
    // densities for AA, BB, AR, BR, RR
    let mut p = [0.0f64; 5];
    for x in &mut p {
        let u: f64 = rng.gen();
        *x = 0.7 * u * u;
    }
    let mut rows = vec![0u64; n];
    for i in 0..n {
        for j in i + 1..n {
            let on = match (role(i), role(j)) {
                (0, 0) => clique_a || rng.gen_bool(p[0]),
                (0, 1) => true,
                (1, 1) => rng.gen_bool(p[1]),
                (0, 2) => rng.gen_bool(p[2]),
                (1, 2) => rng.gen_bool(p[3]),
                _ => rng.gen_bool(p[4]),
            };
            if on {
                rows[i] |= bit(j);
                rows[j] |= bit(i);
            }
        }
    }
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let g = Graph::from_rows_unchecked(rows).relabel(&perm).expect("permutation of 0..n");
    let mask = |lo: usize, hi: usize| (lo..hi).fold(0u64, |m, v| m | bit(perm[v]));
    Sample {
        g,
        a: mask(0, t),
        b: mask(t, t + b),
        rest: mask(t + b, n),
    }
}

struct Patterns {
    minus: Graph,
    double_minus: Graph,
}

impl Patterns {
    fn new(r: usize) -> Result<Self, ExtremalError> {
        Ok(Self {
            minus: pattern_graph(&PatternSpec::kr_minus(r)?)?,
            double_minus: pattern_graph(&PatternSpec::kr_double_minus(r)?)?,
        })
    }
}

fn free(g: &Graph, h: &Graph) -> Result<bool, ExtremalError> {
    find_minor(g, h)
        .map(|m| m.is_none())
        .map_err(|source| ExtremalError::Minor {
            graph6: to_graph6(g),
            source,
        })
}

/// Outcome of one check on one trial.
enum Verdict {
    PremiseFailed,
    Held,
    Failed { graph: Graph, detail: String },
}

impl Verdict {
    fn implication(premise: bool, conclusion: bool, graph: &Graph, detail: impl FnOnce() -> String) -> Verdict {
        match (premise, conclusion) {
            (false, _) => Verdict::PremiseFailed,
            (true, true) => Verdict::Held,
            (true, false) => Verdict::Failed {
                graph: graph.clone(),
                detail: detail(),
            },
        }
    }
}

type TrialResult = Option<Vec<(&'static str, Verdict)>>;

fn validate(config: &HarnessConfig) -> Result<usize, ExtremalError> {
    let (r, n) = (config.r, config.n);
    if r < 4 {
        return Err(ExtremalError::Range(format!("harness needs r >= 4, got {r}")));
    }
    if n <= r - 3 || n > crate::graph::MAX_VERTICES {
        return Err(ExtremalError::Range(format!("harness needs r - 3 < n <= 64, got n = {n}")));
    }
    if !(0.0..=1.0).contains(&config.delta) {
        return Err(ExtremalError::Range(format!("delta must lie in [0, 1], got {}", config.delta)));
    }
    Ok(r - 3)
}

/// Smallest `|B|` allowed by `delta`.
fn b_floor(config: &HarnessConfig) -> usize {
    (((1.0 - config.delta) * config.n as f64) - 1e-9).ceil().max(1.0) as usize
}

fn run<F>(name: HarnessName, config: &HarnessConfig, trial: F) -> Result<HarnessSummary, ExtremalError>
where
    F: Fn(&mut ChaCha8Rng) -> Result<TrialResult, ExtremalError> + Sync,
{
    let results: Vec<TrialResult> = (0..config.trials)
        .into_par_iter()
        .map(|k| {
            let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
            rng.set_stream(k as u64);
            trial(&mut rng)
        })
        .collect::<Result<_, _>>()?;
    let mut summary = HarnessSummary {
        name,
        config: *config,
        hypothesis_met: 0,
        skipped: 0,
        checks: BTreeMap::new(),
        failures: Vec::new(),
        passed: true,
    };
    for (k, result) in results.into_iter().enumerate() {
        let Some(verdicts) = result else {
            summary.skipped += 1;
            continue;
        };
        summary.hypothesis_met += 1;
        for (check, verdict) in verdicts {
            let tally = summary.checks.entry(check.to_string()).or_default();
            tally.evaluated += 1;
            match verdict {
                Verdict::PremiseFailed => {}
                Verdict::Held => tally.premise_held += 1,
                Verdict::Failed { graph, detail } => {
                    tally.premise_held += 1;
                    tally.failed += 1;
                    summary.failures.push(HarnessFailure {
                        check: check.to_string(),
                        trial: k,
                        graph6: to_graph6(&graph),
                        detail,
                    });
                }
            }
        }
    }
    summary.passed = summary.failures.is_empty();
    Ok(summary)
}

/// With `[A, B]` complete, `|A| = r - 3` and `|B| > r`: a `K_r^-`-free host has
/// `G[B]` free of `P_3`, each component of `R = V - A - B` sees at most two
/// vertices of `B`, and at least `3|B| - 2n` vertices of `B` see nothing in `R`.
/// A `K_r^=`-free host has `B` independent and each component of `R` sees at
/// most one vertex of `B`, with at least `2|B| - n` of `B` seeing nothing in `R`.
/// Planting a `P_3` in `B` must create a `K_r^-` minor.
pub fn harness_lemma31(config: &HarnessConfig) -> Result<HarnessSummary, ExtremalError> {
    let t = validate(config)?;
    let (r, n) = (config.r, config.n);
    let pats = Patterns::new(r)?;
    let lo = b_floor(config);
    run(HarnessName::Lemma31, config, |rng| {
        if lo.max(r + 1) > n - t {
            return Ok(None);
        }
        let b = rng.gen_range(lo.max(r + 1)..=n - t);
        let s = sample(rng, n, t, b, false);
        let g = &s.g;
        let mut out = Vec::new();

        let minus_free = free(g, &pats.minus)?;
        let b_graph = g.induced(s.b).expect("mask within graph");
        out.push((
            "b_p3_free",
            Verdict::implication(minus_free, b_graph.max_degree() <= 1, g, || "G[B] contains P3".into()),
        ));
        let attach = s.component_attachments();
        let worst = attach.iter().map(|m| m.count_ones()).max().unwrap_or(0);
        out.push((
            "r_component_attachments",
            Verdict::implication(minus_free, worst <= 2, g, || {
                format!("an R-component sees {worst} vertices of B")
            }),
        ));
        let detached = s.detached().count_ones() as i64;
        let need = 3 * b as i64 - 2 * n as i64;
        out.push((
            "detached_count",
            Verdict::implication(minus_free, detached >= need, g, || {
                format!("{detached} detached B-vertices, expected at least {need}")
            }),
        ));

        let double_free = free(g, &pats.double_minus)?;
        out.push((
            "b_independent",
            Verdict::implication(double_free, b_graph.edge_count() == 0, g, || "B has an edge".into()),
        ));
        out.push((
            "r_component_attachments_double",
            Verdict::implication(double_free, worst <= 1, g, || {
                format!("an R-component sees {worst} vertices of B")
            }),
        ));
        let need = 2 * b as i64 - n as i64;
        out.push((
            "detached_count_double",
            Verdict::implication(double_free, detached >= need, g, || {
                format!("{detached} detached B-vertices, expected at least {need}")
            }),
        ));

        let mut bs: Vec<usize> = Bits(s.b).collect();
        bs.shuffle(rng);
        let planted = g
            .add_edge(bs[0], bs[1])
            .and_then(|h| h.add_edge(bs[1], bs[2]))
            .expect("distinct vertices of B");
        let verdict = match find_minor(&planted, &pats.minus) {
            Ok(Some(m)) => match check_model(&planted, &pats.minus, &m) {
                Ok(()) => Verdict::Held,
                Err(e) => Verdict::Failed {
                    graph: planted.clone(),
                    detail: format!("invalid model: {e}"),
                },
            },
            Ok(None) => Verdict::Failed {
                graph: planted.clone(),
                detail: format!("no K_r^- minor after planting {}-{}-{}", bs[0], bs[1], bs[2]),
            },
            Err(source) => {
                return Err(ExtremalError::Minor {
                    graph6: to_graph6(&planted),
                    source,
                })
            }
        };
        out.push(("planted_p3_forces_minor", verdict));
        Ok(Some(out))
    })
}

/// With `[A, B]` complete, `|A| = r - 3` and more than `r` vertices of `B`
/// without neighbors outside `A ∪ B`: completing `A` to a clique keeps a
/// `K_r^-`-free or `K_r^=`-free graph free. In the completed graph, replacing
/// all edges at a vertex `u` outside `A ∪ B` by the edges from `u` to `A`
/// keeps it `K_r^=`-free.
pub fn harness_clique_completion(config: &HarnessConfig) -> Result<HarnessSummary, ExtremalError> {
    let t = validate(config)?;
    let (r, n) = (config.r, config.n);
    let pats = Patterns::new(r)?;
    let lo = b_floor(config);
    run(HarnessName::Clique, config, |rng| {
        if lo.max(r + 1) > n - t {
            return Ok(None);
        }
        let b = rng.gen_range(lo.max(r + 1)..=n - t);
        let s = sample(rng, n, t, b, false);
        if s.detached().count_ones() as usize <= r {
            return Ok(None);
        }
        let g = &s.g;
        let completed = complete_on(g, s.a);
        let mut out = Vec::new();
        let minus = free(g, &pats.minus)?;
        out.push((
            "completion_kr_minus",
            Verdict::implication(minus, minus && free(&completed, &pats.minus)?, &completed, || {
                format!("completing A in {} creates K_r^-", to_graph6(g))
            }),
        ));
        let double = free(g, &pats.double_minus)?;
        let completed_double = free(&completed, &pats.double_minus)?;
        out.push((
            "completion_kr_double_minus",
            Verdict::implication(double, completed_double, &completed, || {
                format!("completing A in {} creates K_r^=", to_graph6(g))
            }),
        ));
        if s.rest != 0 {
            let rest: Vec<usize> = Bits(s.rest).collect();
            let u = rest[rng.gen_range(0..rest.len())];
            let moved = attach_to(&completed, u, s.a);
            out.push((
                "move_onto_a_kr_double_minus",
                Verdict::implication(completed_double, completed_double && free(&moved, &pats.double_minus)?, &moved, || {
                    format!("moving vertex {u} of {} onto A creates K_r^=", to_graph6(&completed))
                }),
            ));
        }
        Ok(Some(out))
    })
}

/// With `A` a clique of order `r - 3` completely joined to `B`, `|B| > r`, and
/// `u` outside `A ∪ B`: deleting the edges from `u` to `B` and joining `u` to
/// all of `A` keeps a `K_r^-`-free or `K_r^=`-free graph free. Also checks the
/// stronger move that drops every edge at `u`, including those into `R`,
/// before joining `u` to `A`.
pub fn harness_rewire(config: &HarnessConfig) -> Result<HarnessSummary, ExtremalError> {
    let t = validate(config)?;
    let (r, n) = (config.r, config.n);
    let pats = Patterns::new(r)?;
    let lo = b_floor(config).max(r + 1);
    run(HarnessName::Rewire, config, |rng| {
        if lo + t + 1 > n {
            return Ok(None);
        }
        let b = rng.gen_range(lo..=n - t - 1);
        let s = sample(rng, n, t, b, true);
        let g = &s.g;
        let rest: Vec<usize> = Bits(s.rest).collect();
        let u = rest[rng.gen_range(0..rest.len())];
        let rewired = rewire(g, u, s.a, s.b);
        let mut out = Vec::new();
        let moved = attach_to(g, u, s.a);
        let cases = [
            ("rewire_kr_minus", &pats.minus, &rewired),
            ("rewire_kr_double_minus", &pats.double_minus, &rewired),
            ("move_onto_a_kr_minus", &pats.minus, &moved),
            ("move_onto_a_kr_double_minus", &pats.double_minus, &moved),
        ];
        for (check, h, after_graph) in cases {
            let before = free(g, h)?;
            let after = before && free(after_graph, h)?;
            out.push((
                check,
                Verdict::implication(before, after, after_graph, || {
                    format!("changing the edges at vertex {u} of {} creates the pattern", to_graph6(g))
                }),
            ));
        }
        Ok(Some(out))
    })
}

fn complete_on(g: &Graph, a: u64) -> Graph {
    let rows = g
        .rows()
        .iter()
        .enumerate()
        .map(|(v, &row)| if a & bit(v) != 0 { row | (a & !bit(v)) } else { row })
        .collect();
    Graph::from_rows_unchecked(rows)
}

/// `g` with `u`'s edges to `b` deleted and edges to all of `a` added.
fn rewire(g: &Graph, u: usize, a: u64, b: u64) -> Graph {
    set_neighbors(g, u, (g.neighbors(u) & !b) | a)
}

/// `g` with every edge at `u` replaced by the edges from `u` to `a`.
fn attach_to(g: &Graph, u: usize, a: u64) -> Graph {
    set_neighbors(g, u, a)
}

fn set_neighbors(g: &Graph, u: usize, nbrs: u64) -> Graph {
    let nbrs = nbrs & !bit(u) & g.vertex_mask();
    let rows = g
        .rows()
        .iter()
        .enumerate()
        .map(|(v, &row)| {
            if v == u {
                nbrs
            } else if nbrs & bit(v) != 0 {
                row | bit(u)
            } else {
                row & !bit(u)
            }
        })
        .collect();
    Graph::from_rows_unchecked(rows)
}
