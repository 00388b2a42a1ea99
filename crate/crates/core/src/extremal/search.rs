use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::ExtremalError;
use crate::canon::canonical_form;
use crate::constructions::{
    classify_deletion, pattern_graph, split_graph, split_matching_graph, Deletion, PatternClass, PatternSpec,
};
use crate::graph::Graph;
use crate::graph6::{from_graph6, to_graph6};
use crate::minor::find_minor;
use crate::spectral::{compare_spectral_radii, spectral_radius, DEFAULT_TOL};

/// Spectral radii closer than this are ties unless the exact channel separates them.
pub const TIE_TOLERANCE: f64 = 1e-9;
/// Largest order at which ties are settled exactly.
pub const EXACT_TIE_MAX_VERTICES: usize = 12;
/// Distinct classes remembered across chunks before the memo is flushed.
const MEMO_LIMIT: usize = 1 << 20;

/// Which split graph the maximizers include.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TheoremMatch {
    /// `S(n, r-3)` is a maximizer.
    SplitGraph,
    /// `F(n, r-3)` is a maximizer.
    SplitMatchingGraph,
    Neither,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SearchReport {
    pub pattern: PatternSpec,
    pub pattern_label: String,
    /// `None` for an empty corpus.
    pub n: Option<usize>,
    pub connected_only: bool,
    /// Graphs read.
    pub corpus_size: u64,
    /// Graphs left after the connectivity filter.
    pub considered: u64,
    /// Considered graphs without the pattern as a minor.
    pub family_size: u64,
    /// `None` when the family is empty.
    pub max_lambda: Option<f64>,
    /// Canonical graph6 of every maximizer, sorted.
    pub argmax: Vec<String>,
    /// The split graph expected to win for large `n`, when the pattern shape names one.
    pub predicted: Option<TheoremMatch>,
    pub matches_theorem: TheoremMatch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchConfig {
    pub connected_only: bool,
    /// Graphs buffered per parallel batch.
    pub chunk_size: usize,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            connected_only: false,
            chunk_size: 1 << 14,
        }
    }
}

/// The split graph predicted to maximize the spectral radius for large `n`.
pub fn predicted_extremal(spec: &PatternSpec) -> Result<Option<TheoremMatch>, ExtremalError> {
    Ok(match &spec.deletion {
        Deletion::PathFamily(ks) if ks.is_empty() => None,
        Deletion::PathFamily(ks) if ks.iter().all(|&k| k == 2) => Some(TheoremMatch::SplitMatchingGraph),
        Deletion::PathFamily(_) => Some(TheoremMatch::SplitGraph),
        Deletion::ExplicitEdges(m) if m.is_empty() => None,
        Deletion::ExplicitEdges(_) => match classify_deletion(spec)? {
            PatternClass::Matching => Some(TheoremMatch::SplitMatchingGraph),
            PatternClass::NonMatchingTriangleFreeConnected => Some(TheoremMatch::SplitGraph),
            PatternClass::Other => None,
        },
    })
}

pub fn search_extremal<I>(corpus: I, spec: &PatternSpec, connected_only: bool) -> Result<SearchReport, ExtremalError>
where
    I: IntoIterator<Item = Graph>,
{
    let config = SearchConfig {
        connected_only,
        ..SearchConfig::default()
    };
    search_extremal_weighted(corpus.into_iter().map(|g| (g, 1)), spec, &config)
}

/// Like [`search_extremal`], with each graph standing for `weight` corpus members
/// (for example an isomorphism class and its labeled count).
pub fn search_extremal_weighted<I>(corpus: I, spec: &PatternSpec, config: &SearchConfig) -> Result<SearchReport, ExtremalError>
where
    I: IntoIterator<Item = (Graph, u64)>,
{
    let h = pattern_graph(spec)?;
    let mut partial = Partial::default();
    let mut memo: HashMap<Graph, Option<f64>> = HashMap::new();
    let mut n = None;
    let mut iter = corpus.into_iter();
    loop {
        let chunk: Vec<(Graph, u64)> = iter.by_ref().take(config.chunk_size.max(1)).collect();
        if chunk.is_empty() {
            break;
        }
        for (g, w) in &chunk {
            let expected = *n.get_or_insert(g.n());
            if g.n() != expected {
                return Err(ExtremalError::MixedOrder { expected, found: g.n() });
            }
            partial.corpus_size += w;
        }
        let kept: Vec<(Graph, u64)> = chunk
            .into_iter()
            .filter(|(g, _)| !config.connected_only || g.is_connected())
            .collect();
        let canon: Vec<Graph> = kept.par_iter().map(|(g, _)| canonical_form(g)).collect();
        let mut classes: HashMap<Graph, u64> = HashMap::new();
        for (c, (_, w)) in canon.into_iter().zip(&kept) {
            partial.considered += w;
            *classes.entry(c).or_default() += w;
        }
        let fresh: Vec<&Graph> = classes.keys().filter(|c| !memo.contains_key(*c)).collect();
        let scored: Vec<(Graph, Option<f64>)> = fresh
            .into_par_iter()
            .map(|c| score(c, &h).map(|s| (c.clone(), s)))
            .collect::<Result<_, _>>()?;
        if memo.len() + scored.len() > MEMO_LIMIT {
            memo.clear();
        }
        memo.extend(scored);
        let mut members: Vec<(&Graph, u64)> = classes.iter().map(|(c, &w)| (c, w)).collect();
        members.sort_by(|a, b| a.0.cmp(b.0));
        for (c, w) in members {
            if let Some(lambda) = memo[c] {
                partial.family_size += w;
                partial.offer(lambda, c);
            }
        }
    }
    let report = partial.into_report(spec, n, config.connected_only)?;
    reverify(&report, &h)?;
    Ok(report)
}

/// `Some(lambda)` when `g` is free of `h`.
fn score(g: &Graph, h: &Graph) -> Result<Option<f64>, ExtremalError> {
    let has_minor = find_minor(g, h)
        .map_err(|source| ExtremalError::Minor {
            graph6: to_graph6(g),
            source,
        })?
        .is_some();
    if has_minor {
        return Ok(None);
    }
    let lambda = spectral_radius(g, DEFAULT_TOL)
        .map_err(|source| ExtremalError::Spectral {
            graph6: to_graph6(g),
            source,
        })?
        .lambda;
    Ok(Some(lambda))
}

/// Orders two scored graphs, settling near-ties exactly on small graphs.
fn compare_scores(a: f64, ga: &Graph, b: f64, gb: &Graph) -> Ordering {
    if (a - b).abs() > TIE_TOLERANCE {
        return a.partial_cmp(&b).unwrap_or(Ordering::Equal);
    }
    if ga.n().max(gb.n()) <= EXACT_TIE_MAX_VERTICES {
        if let Ok(ord) = compare_spectral_radii(ga, gb) {
            return ord;
        }
    }
    Ordering::Equal
}

#[derive(Debug, Clone)]
struct Best {
    lambda: f64,
    /// The maximizer with the smallest graph6; `lambda` is its score.
    rep: Graph,
    rep_g6: String,
    argmax: BTreeSet<String>,
}

#[derive(Debug, Clone, Default)]
struct Partial {
    corpus_size: u64,
    considered: u64,
    family_size: u64,
    best: Option<Best>,
}

impl Partial {
    fn offer(&mut self, lambda: f64, g: &Graph) {
        let g6 = to_graph6(g);
        let candidate = Best {
            lambda,
            rep: g.clone(),
            rep_g6: g6.clone(),
            argmax: BTreeSet::from([g6]),
        };
        self.best = Some(match self.best.take() {
            None => candidate,
            Some(best) => merge_best(best, candidate),
        });
    }

    fn merge(mut self, other: Partial) -> Partial {
        self.corpus_size += other.corpus_size;
        self.considered += other.considered;
        self.family_size += other.family_size;
        self.best = match (self.best, other.best) {
            (None, b) | (b, None) => b,
            (Some(a), Some(b)) => Some(merge_best(a, b)),
        };
        self
    }

    fn into_report(self, spec: &PatternSpec, n: Option<usize>, connected_only: bool) -> Result<SearchReport, ExtremalError> {
        let argmax: Vec<String> = self.best.as_ref().map(|b| b.argmax.iter().cloned().collect()).unwrap_or_default();
        let predicted = predicted_extremal(spec)?;
        let matches_theorem = match n {
            Some(n) => theorem_match(&argmax, spec.r, n, predicted),
            None => TheoremMatch::Neither,
        };
        Ok(SearchReport {
            pattern: spec.clone(),
            pattern_label: spec.label(),
            n,
            connected_only,
            corpus_size: self.corpus_size,
            considered: self.considered,
            family_size: self.family_size,
            max_lambda: self.best.map(|b| b.lambda),
            argmax,
            predicted,
            matches_theorem,
        })
    }
}

fn merge_best(a: Best, b: Best) -> Best {
    match compare_scores(a.lambda, &a.rep, b.lambda, &b.rep) {
        Ordering::Greater => a,
        Ordering::Less => b,
        Ordering::Equal => {
            let (mut keep, other) = if a.rep_g6 <= b.rep_g6 { (a, b) } else { (b, a) };
            keep.argmax.extend(other.argmax);
            keep
        }
    }
}

fn theorem_match(argmax: &[String], r: usize, n: usize, predicted: Option<TheoremMatch>) -> TheoremMatch {
    let t = r.saturating_sub(3);
    let canonical_g6 = |g: Result<Graph, _>| g.ok().map(|g| to_graph6(&canonical_form(&g)));
    let contains = |g6: Option<String>| g6.is_some_and(|s| argmax.binary_search(&s).is_ok());
    let s = contains(canonical_g6(split_graph(n, t)));
    let f = contains(canonical_g6(split_matching_graph(n, t)));
    match (s, f) {
        (true, true) => predicted.unwrap_or(TheoremMatch::SplitGraph),
        (true, false) => TheoremMatch::SplitGraph,
        (false, true) => TheoremMatch::SplitMatchingGraph,
        (false, false) => TheoremMatch::Neither,
    }
}

/// Every maximizer must be free of the pattern and reproduce `max_lambda`.
fn reverify(report: &SearchReport, h: &Graph) -> Result<(), ExtremalError> {
    let Some(max) = report.max_lambda else {
        if report.argmax.is_empty() {
            return Ok(());
        }
        return Err(ExtremalError::Invariant("maximizers recorded without a maximum".into()));
    };
    for g6 in &report.argmax {
        let g = from_graph6(g6).map_err(|e| ExtremalError::Invariant(format!("{g6}: {e}")))?;
        match score(&g, h)? {
            None => return Err(ExtremalError::Invariant(format!("maximizer {g6} contains the pattern"))),
            Some(lambda) if (lambda - max).abs() > 10.0 * TIE_TOLERANCE => {
                return Err(ExtremalError::Invariant(format!(
                    "maximizer {g6} rescored to {lambda}, report says {max}"
                )))
            }
            Some(_) => {}
        }
    }
    Ok(())
}

/// Combines reports over disjoint parts of one corpus. Associative and
/// commutative up to the tie tolerance on graphs above the exact-tie order.
pub fn merge_reports(a: &SearchReport, b: &SearchReport) -> Result<SearchReport, ExtremalError> {
    if a.pattern != b.pattern || a.connected_only != b.connected_only {
        return Err(ExtremalError::Invariant("reports describe different searches".into()));
    }
    let n = match (a.n, b.n) {
        (Some(x), Some(y)) if x != y => return Err(ExtremalError::MixedOrder { expected: x, found: y }),
        (x, y) => x.or(y),
    };
    let merged = to_partial(a)?.merge(to_partial(b)?);
    merged.into_report(&a.pattern, n, a.connected_only)
}

fn to_partial(r: &SearchReport) -> Result<Partial, ExtremalError> {
    let best = match (r.max_lambda, r.argmax.first()) {
        (Some(lambda), Some(first)) => Some(Best {
            lambda,
            rep: from_graph6(first).map_err(|e| ExtremalError::Invariant(format!("{first}: {e}")))?,
            rep_g6: first.clone(),
            argmax: r.argmax.iter().cloned().collect(),
        }),
        _ => None,
    };
    Ok(Partial {
        corpus_size: r.corpus_size,
        considered: r.considered,
        family_size: r.family_size,
        best,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::extremal::enumerate_labeled;

    #[test]
    fn single_split_graph() {
        let s = split_graph(8, 1).unwrap();
        let spec = PatternSpec::kr_double_minus(4).unwrap();
        let r = search_extremal([s.clone()], &spec, false).unwrap();
        assert_eq!(r.family_size, 1);
        assert_eq!(r.argmax, vec![to_graph6(&canonical_form(&s))]);
        assert_eq!(r.matches_theorem, TheoremMatch::SplitGraph);
        assert_eq!(r.predicted, Some(TheoremMatch::SplitGraph));
        assert!((r.max_lambda.unwrap() - 7f64.sqrt()).abs() < 1e-9);
    }

    #[test]
    fn empty_corpus() {
        let spec = PatternSpec::kr_minus(4).unwrap();
        let r = search_extremal(Vec::new(), &spec, true).unwrap();
        assert_eq!((r.corpus_size, r.family_size), (0, 0));
        assert!(r.argmax.is_empty());
        assert_eq!(r.max_lambda, None);
        assert_eq!(r.matches_theorem, TheoremMatch::Neither);
    }

    #[test]
    fn mixed_orders_rejected() {
        let spec = PatternSpec::kr_minus(4).unwrap();
        let corpus = vec![Graph::empty(3).unwrap(), Graph::empty(4).unwrap()];
        assert!(matches!(
            search_extremal(corpus, &spec, false),
            Err(ExtremalError::MixedOrder { expected: 3, found: 4 })
        ));
    }

    #[test]
    fn order_independent_and_mergeable() {
        use rand::seq::SliceRandom;
        use rand::SeedableRng;
        let spec = PatternSpec::kr_minus(4).unwrap();
        let corpus: Vec<Graph> = enumerate_labeled(5).unwrap().collect();
        let whole = search_extremal(corpus.clone(), &spec, true).unwrap();
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(1);
        let mut shuffled = corpus.clone();
        shuffled.shuffle(&mut rng);
        assert_eq!(search_extremal(shuffled.clone(), &spec, true).unwrap(), whole);

        let parts: Vec<SearchReport> = shuffled
            .chunks(97)
            .map(|c| search_extremal(c.to_vec(), &spec, true).unwrap())
            .collect();
        let left = parts.iter().skip(1).fold(parts[0].clone(), |acc, p| merge_reports(&acc, p).unwrap());
        let right = parts
            .iter()
            .rev()
            .skip(1)
            .fold(parts.last().unwrap().clone(), |acc, p| merge_reports(p, &acc).unwrap());
        assert_eq!(left, whole);
        assert_eq!(right, whole);
    }

    #[test]
    fn weighted_classes_match_labeled_scan() {
        let spec = PatternSpec::kr_double_minus(4).unwrap();
        let labeled = search_extremal(enumerate_labeled(5).unwrap(), &spec, true).unwrap();
        let classes = crate::extremal::isomorphism_classes(5, false).unwrap();
        let config = SearchConfig {
            connected_only: true,
            ..SearchConfig::default()
        };
        let weighted = search_extremal_weighted(classes, &spec, &config).unwrap();
        assert_eq!(weighted, labeled);
    }

    #[test]
    fn predictions() {
        use crate::constructions::catalog_entry;
        let p = |s: &PatternSpec| predicted_extremal(s).unwrap();
        assert_eq!(p(&PatternSpec::kr_minus(5).unwrap()), Some(TheoremMatch::SplitMatchingGraph));
        assert_eq!(p(&PatternSpec::paths(6, vec![2, 2]).unwrap()), Some(TheoremMatch::SplitMatchingGraph));
        assert_eq!(p(&PatternSpec::paths(6, vec![2, 3]).unwrap()), Some(TheoremMatch::SplitGraph));
        assert_eq!(p(&PatternSpec::clique(5).unwrap()), None);
        assert_eq!(p(&catalog_entry("F2").unwrap().spec), Some(TheoremMatch::SplitMatchingGraph));
        assert_eq!(p(&catalog_entry("F4").unwrap().spec), Some(TheoremMatch::SplitGraph));
        assert_eq!(p(&catalog_entry("F11").unwrap().spec), None);
    }
}
