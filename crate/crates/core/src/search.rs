//! Depth-first search for superregular matrices.
//!
//! Entries `a_0, a_1, ...` are assigned in order. At level `l` the minors
//! that are linear in `a_l` each rule out at most one value, so a node
//! computes its forbidden set once and then iterates the remaining nonzero
//! values. Symmetry reduction fixes `a_0 = 1` (entrywise scaling) and
//! optionally `a_1 = 1` (diagonal conjugation), which preserves existence.
//!
//! Work is split by the value of the first free entry. Subtree results are
//! merged in root order, so outputs do not depend on the thread count.

use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{is_prime, prime_power, Elem, Gf};
use crate::toeplitz::{is_superregular, level_table, LevelMinors, LtToeplitz};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SearchMode {
    FindFirst,
    CountAll,
    EnumerateAll,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    None,
    /// `a_0 = 1`.
    A0,
    /// `a_0 = a_1 = 1`; existence only.
    A0A1,
}

#[derive(Clone, Debug)]
pub struct SearchConfig {
    pub field: Arc<Gf>,
    /// Matrix dimension minus one.
    pub gamma: usize,
    pub mode: SearchMode,
    pub normalization: Normalization,
    pub budget: Option<Duration>,
    pub threads: usize,
    value_order: Option<Vec<Elem>>,
}

impl SearchConfig {
    pub fn new(field: Arc<Gf>, gamma: usize) -> Self {
        SearchConfig {
            field,
            gamma,
            mode: SearchMode::FindFirst,
            normalization: Normalization::A0A1,
            budget: None,
            threads: 1,
            value_order: None,
        }
    }

    pub fn mode(mut self, mode: SearchMode) -> Self {
        self.mode = mode;
        self
    }

    pub fn normalization(mut self, n: Normalization) -> Self {
        self.normalization = n;
        self
    }

    pub fn budget(mut self, budget: Option<Duration>) -> Self {
        self.budget = budget;
        self
    }

    pub fn threads(mut self, threads: usize) -> Self {
        self.threads = threads.max(1);
        self
    }

    /// Overrides the order in which nonzero values are tried.
    pub fn value_order(mut self, order: Vec<Elem>) -> Self {
        self.value_order = Some(order);
        self
    }

    fn validate(&self) -> Result<()> {
        if self.gamma + 1 > crate::matrix::MAX_DIM {
            return Err(Error::DimensionTooLarge(self.gamma + 1));
        }
        if self.mode != SearchMode::FindFirst && self.normalization == Normalization::A0A1 {
            return Err(Error::InvalidConfig(
                "normalization a0=a1=1 is only valid for find-first searches".into(),
            ));
        }
        if let Some(order) = &self.value_order {
            let mut sorted = order.clone();
            sorted.sort();
            let mut expected = self.field.nonzero_in_order();
            expected.sort();
            if sorted != expected {
                return Err(Error::InvalidConfig("value order must permute the nonzero elements".into()));
            }
        }
        Ok(())
    }

    fn fixed_levels(&self) -> usize {
        match self.normalization {
            Normalization::None => 0,
            Normalization::A0 => 1,
            Normalization::A0A1 => 2,
        }
        .min(self.gamma + 1)
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub found: Option<LtToeplitz>,
    /// Exact |SR(q, γ)| in count mode.
    pub count: Option<u128>,
    pub all: Vec<LtToeplitz>,
    pub nodes_visited: u64,
    pub deepest_level: usize,
    pub seconds: f64,
}

enum Flow {
    Continue,
    Stop,
    Abort,
}

struct Dfs<'a> {
    gf: &'a Gf,
    levels: &'a [LevelMinors],
    order: &'a [Elem],
    gamma: usize,
    fixed: usize,
    mode: SearchMode,
    deadline: Option<Instant>,
    abort: &'a AtomicBool,
    best: &'a AtomicUsize,
    root: usize,
    prefix: Vec<Elem>,
    buf: Vec<Elem>,
    forb: Vec<Vec<Elem>>,
    stamp: Vec<Vec<u32>>,
    token: u32,
    nodes: u64,
    deepest: usize,
    count: u128,
    hits: Vec<Vec<Elem>>,
}

impl<'a> Dfs<'a> {
    fn candidates(&mut self, l: usize) -> Option<Vec<Elem>> {
        let mut forb = std::mem::take(&mut self.forb[l]);
        let ok = self.levels[l].forbidden(self.gf, &self.prefix, &mut self.buf, &mut forb);
        if !ok {
            self.forb[l] = forb;
            return None;
        }
        self.token = self.token.wrapping_add(1).max(1);
        let stamp = &mut self.stamp[l];
        for f in &forb {
            stamp[f.code() as usize] = self.token;
        }
        self.forb[l] = forb;
        let token = self.token;
        let values: Vec<Elem> = if l < self.fixed {
            vec![Elem::ONE]
        } else {
            self.order.to_vec()
        };
        Some(values.into_iter().filter(|v| self.stamp[l][v.code() as usize] != token).collect())
    }

    fn should_stop(&self) -> bool {
        self.abort.load(Ordering::Relaxed)
            || (self.mode == SearchMode::FindFirst && self.best.load(Ordering::Relaxed) < self.root)
    }

    fn descend(&mut self) -> Flow {
        let l = self.prefix.len();
        let Some(values) = self.candidates(l) else {
            return Flow::Continue;
        };
        for v in values {
            self.prefix.push(v);
            self.nodes += 1;
            self.deepest = self.deepest.max(l);
            if self.nodes % 4096 == 0 {
                if self.should_stop() {
                    self.prefix.pop();
                    return Flow::Abort;
                }
                if self.deadline.is_some_and(|d| Instant::now() > d) {
                    self.abort.store(true, Ordering::Relaxed);
                    self.prefix.pop();
                    return Flow::Abort;
                }
            }
            let flow = if l == self.gamma {
                self.count += 1;
                match self.mode {
                    SearchMode::FindFirst => {
                        self.hits.push(self.prefix.clone());
                        Flow::Stop
                    }
                    SearchMode::EnumerateAll => {
                        self.hits.push(self.prefix.clone());
                        Flow::Continue
                    }
                    SearchMode::CountAll => Flow::Continue,
                }
            } else {
                self.descend()
            };
            self.prefix.pop();
            match flow {
                Flow::Continue => {}
                other => return other,
            }
        }
        Flow::Continue
    }
}

struct SubtreeResult {
    nodes: u64,
    deepest: usize,
    count: u128,
    hits: Vec<Vec<Elem>>,
    aborted: bool,
}

/// Runs a search per the configuration.
pub fn run(cfg: &SearchConfig) -> Result<SearchOutcome> {
    cfg.validate()?;
    let start = Instant::now();
    let gf = cfg.field.as_ref();
    let gamma = cfg.gamma;
    let levels = level_table(gamma);
    let order = cfg.value_order.clone().unwrap_or_else(|| gf.nonzero_in_order());
    let fixed = cfg.fixed_levels();
    let deadline = cfg.budget.map(|b| start + b);
    let abort = AtomicBool::new(false);
    let best = AtomicUsize::new(usize::MAX);
    let q = gf.order() as usize;

    let new_dfs = |root: usize, prefix: Vec<Elem>| Dfs {
        gf,
        levels: &levels,
        order: &order,
        gamma,
        fixed,
        mode: cfg.mode,
        deadline,
        abort: &abort,
        best: &best,
        root,
        prefix,
        buf: Vec::with_capacity(64 * 64),
        forb: vec![Vec::new(); gamma + 1],
        stamp: vec![vec![0u32; q]; gamma + 1],
        token: 0,
        nodes: 0,
        deepest: 0,
        count: 0,
        hits: Vec::new(),
    };

    // Fixed (normalized) entries, then the subtree roots at level `fixed`.
    let mut head = new_dfs(0, Vec::new());
    for l in 0..fixed {
        match head.candidates(l) {
            Some(v) if !v.is_empty() => {
                head.prefix.push(Elem::ONE);
                head.nodes += 1;
                head.deepest = l;
            }
            _ => return Ok(finish(cfg, start, head.nodes, head.deepest, 0, Vec::new())),
        }
    }
    if fixed == gamma + 1 {
        let hit = head.prefix.clone();
        let n = head.nodes;
        return Ok(finish(cfg, start, n, gamma, 1, vec![hit]));
    }
    let roots = match head.candidates(fixed) {
        Some(v) => v,
        None => return Ok(finish(cfg, start, head.nodes, head.deepest, 0, Vec::new())),
    };
    let head_nodes = head.nodes;
    let head_prefix = head.prefix.clone();

    let explore = |(idx, &root): (usize, &Elem)| -> SubtreeResult {
        let mut dfs = new_dfs(idx, head_prefix.clone());
        if deadline.is_some_and(|d| Instant::now() > d) {
            abort.store(true, Ordering::Relaxed);
        }
        if dfs.should_stop() {
            return SubtreeResult { nodes: 0, deepest: 0, count: 0, hits: Vec::new(), aborted: true };
        }
        dfs.prefix.push(root);
        dfs.nodes += 1;
        dfs.deepest = fixed;
        let flow = if fixed == gamma {
            dfs.count += 1;
            if cfg.mode != SearchMode::CountAll {
                dfs.hits.push(dfs.prefix.clone());
            }
            if cfg.mode == SearchMode::FindFirst {
                Flow::Stop
            } else {
                Flow::Continue
            }
        } else {
            dfs.descend()
        };
        if matches!(flow, Flow::Stop) {
            best.fetch_min(idx, Ordering::Relaxed);
        }
        SubtreeResult {
            nodes: dfs.nodes,
            deepest: dfs.deepest,
            count: dfs.count,
            hits: dfs.hits,
            aborted: matches!(flow, Flow::Abort),
        }
    };

    let results: Vec<SubtreeResult> = if cfg.threads <= 1 {
        let mut out = Vec::new();
        for item in roots.iter().enumerate() {
            let r = explore(item);
            let stop = cfg.mode == SearchMode::FindFirst && !r.hits.is_empty();
            out.push(r);
            if stop || abort.load(Ordering::Relaxed) {
                break;
            }
        }
        out
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(cfg.threads)
            .build()
            .map_err(|e| Error::InvalidConfig(e.to_string()))?;
        pool.install(|| roots.par_iter().enumerate().map(explore).collect())
    };

    let mut nodes = head_nodes;
    let mut deepest = head.deepest;
    let mut count = 0u128;
    let mut hits = Vec::new();
    for r in results {
        if cfg.mode == SearchMode::FindFirst && !hits.is_empty() {
            break;
        }
        nodes += r.nodes;
        deepest = deepest.max(r.deepest);
        if r.aborted && hits.is_empty() && abort.load(Ordering::Relaxed) {
            return Err(Error::TimeBudgetExceeded { deepest_level: deepest, nodes_visited: nodes });
        }
        count += r.count;
        hits.extend(r.hits);
    }
    if abort.load(Ordering::Relaxed) && (cfg.mode != SearchMode::FindFirst || hits.is_empty()) {
        return Err(Error::TimeBudgetExceeded { deepest_level: deepest, nodes_visited: nodes });
    }
    Ok(finish(cfg, start, nodes, deepest, count, hits))
}

fn finish(
    cfg: &SearchConfig,
    start: Instant,
    nodes: u64,
    deepest: usize,
    count: u128,
    hits: Vec<Vec<Elem>>,
) -> SearchOutcome {
    let scale = if cfg.normalization == Normalization::A0 { cfg.field.order() as u128 - 1 } else { 1 };
    let all: Vec<LtToeplitz> = hits
        .into_iter()
        .map(|h| LtToeplitz::new(cfg.field.clone(), h).expect("search hit has valid entries"))
        .collect();
    SearchOutcome {
        found: if cfg.mode == SearchMode::FindFirst { all.first().cloned() } else { None },
        count: (cfg.mode != SearchMode::FindFirst).then_some(count * scale),
        all: if cfg.mode == SearchMode::EnumerateAll { all } else { Vec::new() },
        nodes_visited: nodes,
        deepest_level: deepest,
        seconds: start.elapsed().as_secs_f64(),
    }
}

/// First superregular matrix in search order, or `None` when none exists.
pub fn find_superregular(cfg: &SearchConfig) -> Result<SearchOutcome> {
    let cfg = cfg.clone().mode(SearchMode::FindFirst);
    run(&cfg)
}

/// Exact |SR(q, γ)|.
pub fn count_superregular(cfg: &SearchConfig) -> Result<u128> {
    let mut cfg = cfg.clone().mode(SearchMode::CountAll);
    if cfg.normalization == Normalization::A0A1 {
        cfg.normalization = Normalization::None;
    }
    Ok(run(&cfg)?.count.unwrap_or(0))
}

/// Every element of SR(q, γ), in search order.
pub fn enumerate_superregular(field: Arc<Gf>, gamma: usize) -> Result<Vec<LtToeplitz>> {
    let cfg = SearchConfig::new(field, gamma)
        .mode(SearchMode::EnumerateAll)
        .normalization(Normalization::None);
    Ok(run(&cfg)?.all)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FieldFamily {
    Primes,
    PrimePowers,
}

impl FieldFamily {
    pub fn contains(self, q: u64) -> bool {
        match self {
            FieldFamily::Primes => is_prime(q),
            FieldFamily::PrimePowers => prime_power(q).is_some(),
        }
    }

    /// Members in increasing order from 2 up to `cap`.
    pub fn orders(self, cap: u64) -> impl Iterator<Item = u64> {
        (2..=cap).filter(move |&q| self.contains(q))
    }
}

#[derive(Clone, Debug)]
pub struct MinFieldResult {
    /// Matrix dimension.
    pub dim: usize,
    pub q: u64,
    pub witness: LtToeplitz,
    /// Smaller field orders proven empty, with node counts.
    pub proven_empty: Vec<(u64, u64)>,
    pub nodes_visited: u64,
    pub seconds: f64,
}

/// Smallest field order in `family` admitting a `dim x dim` superregular
/// matrix. Every smaller member of the family is searched exhaustively.
pub fn min_field_size(
    dim: usize,
    family: FieldFamily,
    cap: u64,
    budget: Option<Duration>,
    threads: usize,
) -> Result<MinFieldResult> {
    if dim < 2 || cap < 2 {
        return Err(Error::InvalidConfig("min_field_size needs dimension >= 2 and cap >= 2".into()));
    }
    let start = Instant::now();
    let mut proven = Vec::new();
    let mut nodes = 0;
    for q in family.orders(cap) {
        let cfg = SearchConfig::new(Gf::shared(q)?, dim - 1).budget(budget).threads(threads);
        let out = find_superregular(&cfg)?;
        nodes += out.nodes_visited;
        match out.found {
            Some(w) => {
                return Ok(MinFieldResult {
                    dim,
                    q,
                    witness: w,
                    proven_empty: proven,
                    nodes_visited: nodes,
                    seconds: start.elapsed().as_secs_f64(),
                })
            }
            None => proven.push((q, out.nodes_visited)),
        }
    }
    Err(Error::CapExceeded { cap, tried: proven.iter().map(|&(q, _)| q).collect() })
}

#[derive(Clone, Debug)]
pub enum ConjectureOutcome {
    Witness(LtToeplitz),
    RefutedByExhaustion,
    BudgetExceeded { deepest_level: usize },
}

#[derive(Clone, Debug)]
pub struct ConjectureReport {
    pub dim: usize,
    pub q: u64,
    pub outcome: ConjectureOutcome,
    pub nodes_visited: u64,
    pub seconds: f64,
}

/// Searches GF(2^(dim-2)) for a `dim x dim` superregular matrix.
pub fn test_conjecture(dim: usize, budget: Option<Duration>, threads: usize) -> Result<ConjectureReport> {
    if dim < 5 {
        return Err(Error::InvalidConfig(format!("the conjecture concerns dimension >= 5, got {dim}")));
    }
    let q = 1u64 << (dim - 2);
    let cfg = SearchConfig::new(Gf::shared(q)?, dim - 1).budget(budget).threads(threads);
    let start = Instant::now();
    match find_superregular(&cfg) {
        Ok(out) => Ok(ConjectureReport {
            dim,
            q,
            outcome: match out.found {
                Some(w) => ConjectureOutcome::Witness(w),
                None => ConjectureOutcome::RefutedByExhaustion,
            },
            nodes_visited: out.nodes_visited,
            seconds: out.seconds,
        }),
        Err(Error::TimeBudgetExceeded { deepest_level, nodes_visited }) => Ok(ConjectureReport {
            dim,
            q,
            outcome: ConjectureOutcome::BudgetExceeded { deepest_level },
            nodes_visited,
            seconds: start.elapsed().as_secs_f64(),
        }),
        Err(e) => Err(e),
    }
}

/// Re-checks a search hit with the full (non-incremental) test.
pub fn verify_hit(a: &LtToeplitz) -> bool {
    is_superregular(a).superregular
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn brute_count(q: u64, gamma: usize) -> u128 {
        let gf = Gf::shared(q).unwrap();
        let nz = gf.nonzero_in_order();
        std::iter::repeat(nz.iter().copied())
            .take(gamma + 1)
            .multi_cartesian_product()
            .filter(|col| verify_hit(&LtToeplitz::new(gf.clone(), col.clone()).unwrap()))
            .count() as u128
    }

    #[test]
    fn tiny_fields() {
        let gf2 = Gf::shared(2).unwrap();
        let cfg = SearchConfig::new(gf2.clone(), 2);
        assert!(find_superregular(&cfg).unwrap().found.is_none());
        assert_eq!(count_superregular(&SearchConfig::new(gf2.clone(), 1)).unwrap(), 1);
        assert_eq!(count_superregular(&SearchConfig::new(gf2, 2)).unwrap(), 0);

        let gf3 = Gf::shared(3).unwrap();
        let hit = find_superregular(&SearchConfig::new(gf3.clone(), 2)).unwrap().found.unwrap();
        assert_eq!(hit.format_col(), "1, 1, 2");
        let unnorm = SearchConfig::new(gf3, 2).normalization(Normalization::None);
        assert_eq!(find_superregular(&unnorm).unwrap().found.unwrap().format_col(), "1, 1, 2");
    }

    #[test]
    fn counts_match_brute_force() {
        for (q, gamma) in [(2u64, 1usize), (3, 2), (4, 2), (5, 2), (5, 3), (7, 2), (4, 3)] {
            let gf = Gf::shared(q).unwrap();
            let expected = brute_count(q, gamma);
            let cfg = SearchConfig::new(gf.clone(), gamma).normalization(Normalization::None);
            assert_eq!(count_superregular(&cfg).unwrap(), expected, "q={q} gamma={gamma}");
            let a0 = SearchConfig::new(gf.clone(), gamma).normalization(Normalization::A0);
            assert_eq!(count_superregular(&a0).unwrap(), expected);
            let threaded = cfg.clone().threads(3);
            assert_eq!(count_superregular(&threaded).unwrap(), expected);
            let mut rev = gf.nonzero_in_order();
            rev.reverse();
            assert_eq!(count_superregular(&cfg.clone().value_order(rev)).unwrap(), expected);
            assert_eq!(enumerate_superregular(gf, gamma).unwrap().len() as u128, expected);
        }
    }

    #[test]
    fn normalized_existence_matches_unnormalized() {
        for q in [2u64, 3, 4, 5, 7, 8] {
            for gamma in 0..=4 {
                let gf = Gf::shared(q).unwrap();
                let a = find_superregular(&SearchConfig::new(gf.clone(), gamma)).unwrap();
                let b = find_superregular(&SearchConfig::new(gf, gamma).normalization(Normalization::None)).unwrap();
                assert_eq!(a.found.is_some(), b.found.is_some(), "q={q} gamma={gamma}");
                if let Some(w) = a.found {
                    assert!(verify_hit(&w));
                }
            }
        }
    }

    #[test]
    fn thread_count_does_not_change_results() {
        let gf = Gf::shared(11).unwrap();
        let base = SearchConfig::new(gf, 5);
        let one = find_superregular(&base).unwrap();
        let many = find_superregular(&base.clone().threads(4)).unwrap();
        assert_eq!(one.found, many.found);
        assert_eq!(one.nodes_visited, many.nodes_visited);
    }

    #[test]
    fn config_errors() {
        let gf = Gf::shared(5).unwrap();
        let bad = SearchConfig::new(gf.clone(), 2).mode(SearchMode::CountAll);
        assert!(matches!(run(&bad), Err(Error::InvalidConfig(_))));
        assert!(matches!(test_conjecture(4, None, 1), Err(Error::InvalidConfig(_))));
        let tiny = SearchConfig::new(Gf::shared(13).unwrap(), 7).budget(Some(Duration::ZERO));
        assert!(matches!(find_superregular(&tiny), Err(Error::TimeBudgetExceeded { .. })));
    }

    #[test]
    fn min_field_small_rows() {
        let r = min_field_size(3, FieldFamily::Primes, 50, None, 1).unwrap();
        assert_eq!(r.q, 3);
        assert_eq!(r.proven_empty.iter().map(|p| p.0).collect::<Vec<_>>(), vec![2]);
        let r = min_field_size(4, FieldFamily::PrimePowers, 50, None, 1).unwrap();
        assert_eq!(r.q, 5);
        assert_eq!(r.proven_empty.iter().map(|p| p.0).collect::<Vec<_>>(), vec![2, 3, 4]);
        assert!(matches!(min_field_size(5, FieldFamily::Primes, 5, None, 1), Err(Error::CapExceeded { .. })));
    }
}
