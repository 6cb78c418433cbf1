//! Core identification: the smallest set of vertices covering a fraction `tau` of all
//! ST-paths, approximated greedily.
//!
//! Each greedy step removes the vertex with maximum residual path centrality. Vertices
//! tied at the maximum that are traversed by exactly the same ST-paths form a
//! Path-Equivalent Set (PES) and enter the core as a single element. Ties between
//! different PESs are broken by [`TiePolicy`], or explored exhaustively by
//! [`enumerate_cores`].

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::centrality::{fits_u128, ratio, reaches_fraction, Counts, PathCount, PathStats};
use crate::error::{Error, Result};
use crate::graph::DependencyNetwork;

/// Default path coverage threshold.
pub const DEFAULT_TAU: f64 = 0.90;

/// Default number of distinct cores [`enumerate_cores`] collects.
pub const DEFAULT_ENUMERATION_LIMIT: usize = 64;

/// Largest network [`brute_force_core`] accepts.
pub const ORACLE_VERTEX_LIMIT: usize = 20;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum TiePolicy {
    /// Picks the tied candidate holding the lexicographically smallest vertex id.
    #[default]
    Deterministic,
    /// Picks uniformly among tied candidates from a stream seeded with the value.
    Seeded(u64),
}

impl TiePolicy {
    /// Derives an independent policy for a sibling computation. Deterministic stays
    /// deterministic.
    pub fn fork(self, stream: u64) -> TiePolicy {
        match self {
            TiePolicy::Deterministic => TiePolicy::Deterministic,
            TiePolicy::Seeded(seed) => {
                TiePolicy::Seeded(seed ^ stream.wrapping_add(1).wrapping_mul(0x9E37_79B9_7F4A_7C15))
            }
        }
    }

    fn rng(self) -> Option<ChaCha8Rng> {
        match self {
            TiePolicy::Deterministic => None,
            TiePolicy::Seeded(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ElementKind {
    Single,
    Pes,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CoreElement {
    pub kind: ElementKind,
    /// Vertex ids, sorted.
    pub members: Vec<String>,
    /// Coverage gained when the element was added.
    pub weight: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Core {
    /// In greedy selection order.
    pub elements: Vec<CoreElement>,
    pub coverage: f64,
    pub tau: f64,
    /// Number of steps where more than one candidate element was tied.
    pub tie_events: usize,
}

impl Core {
    /// Core size `C(tau)`: a PES counts once.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// Union of all element members, sorted.
    pub fn vertex_ids(&self) -> BTreeSet<&str> {
        self.elements
            .iter()
            .flat_map(|e| e.members.iter().map(String::as_str))
            .collect()
    }

    /// Coverage after each element, in order.
    pub fn cumulative_coverage(&self) -> Vec<f64> {
        self.elements
            .iter()
            .scan(0.0, |acc, e| {
                *acc += e.weight;
                Some(*acc)
            })
            .collect()
    }

    pub fn pes_count(&self) -> usize {
        self.elements.iter().filter(|e| e.kind == ElementKind::Pes).count()
    }
}

fn check_tau(tau: f64) -> Result<()> {
    if tau.is_finite() && tau > 0.0 && tau <= 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidTau(tau))
    }
}

fn check_stats(g: &DependencyNetwork, stats: &PathStats) -> Result<()> {
    if stats.vertex_count() != g.vertex_count() {
        return Err(Error::InvalidArgument(format!(
            "path stats cover {} vertices, network has {}",
            stats.vertex_count(),
            g.vertex_count()
        )));
    }
    stats.require_paths()
}

fn resolve(g: &DependencyNetwork, ids: &[impl AsRef<str>]) -> Result<Vec<usize>> {
    ids.iter()
        .map(|id| {
            let id = id.as_ref();
            g.index_of(id)
                .ok_or_else(|| Error::InvalidArgument(format!("unknown vertex {id:?}")))
        })
        .collect()
}

/// Residual network state shared by the greedy, the PES grouping and the enumerator.
struct Residual<'g, C> {
    g: &'g DependencyNetwork,
    removed: Vec<bool>,
    counts: Counts<C>,
    scratch: Counts<C>,
}

impl<'g, C: PathCount> Residual<'g, C> {
    fn new(g: &'g DependencyNetwork) -> Self {
        let n = g.vertex_count();
        let mut residual = Residual {
            g,
            removed: vec![false; n],
            counts: Counts::new(n),
            scratch: Counts::new(n),
        };
        residual.refresh();
        residual
    }

    fn refresh(&mut self) {
        let ok = self.counts.recount(self.g, &self.removed);
        assert!(ok, "residual counts never exceed the initial counts");
    }

    fn total(&self) -> &C {
        &self.counts.total
    }

    /// Maximum residual centrality and every vertex attaining it, in id order. `None`
    /// once no ST-path remains.
    fn tied_max(&self) -> Option<(C, Vec<usize>)> {
        if self.counts.total.is_nil() {
            return None;
        }
        let mut best = C::zero();
        let mut tied = Vec::new();
        for v in 0..self.g.vertex_count() {
            if self.removed[v] || self.counts.ps[v].is_nil() || self.counts.pt[v].is_nil() {
                continue;
            }
            let p = self.counts.centrality(v);
            match p.cmp(&best) {
                std::cmp::Ordering::Greater => {
                    best = p;
                    tied.clear();
                    tied.push(v);
                }
                std::cmp::Ordering::Equal => tied.push(v),
                std::cmp::Ordering::Less => {}
            }
        }
        Some((best, tied))
    }

    /// `u` plus every other candidate whose centrality drops to zero once `u` is gone.
    fn pes_of(&mut self, u: usize, candidates: &[usize]) -> Vec<usize> {
        if candidates.len() == 1 {
            return vec![u];
        }
        self.removed[u] = true;
        let ok = self.scratch.recount(self.g, &self.removed);
        self.removed[u] = false;
        assert!(ok, "residual counts never exceed the initial counts");
        let mut group: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&w| {
                w == u || self.scratch.ps[w].is_nil() || self.scratch.pt[w].is_nil()
            })
            .collect();
        group.sort_unstable();
        group
    }

    /// Splits tied vertices into PESs, seeding each group with the smallest remaining id.
    fn partition(&mut self, tied: &[usize]) -> Vec<Vec<usize>> {
        let mut remaining = tied.to_vec();
        let mut groups = Vec::new();
        while let Some(&u) = remaining.first() {
            let group = self.pes_of(u, &remaining);
            remaining.retain(|v| group.binary_search(v).is_err());
            groups.push(group);
        }
        groups
    }

    fn remove(&mut self, vertices: &[usize]) {
        for &v in vertices {
            self.removed[v] = true;
        }
        self.refresh();
    }

    fn restore(&mut self, vertices: &[usize]) {
        for &v in vertices {
            self.removed[v] = false;
        }
        self.refresh();
    }
}

fn element(g: &DependencyNetwork, vertices: &[usize], gain: &BigUint, total: &BigUint) -> CoreElement {
    CoreElement {
        kind: if vertices.len() > 1 { ElementKind::Pes } else { ElementKind::Single },
        members: vertices.iter().map(|&v| g.id(v).to_owned()).collect(),
        weight: ratio(gain, total),
    }
}

/// Runs the greedy until the covered fraction reaches `tau`.
///
/// With `pes_grouping` off every element is a single vertex; path-equivalent partners of
/// a chosen vertex then drop to zero centrality and are never picked.
pub fn greedy_core(
    g: &DependencyNetwork,
    stats: &PathStats,
    tau: f64,
    tie_policy: TiePolicy,
    pes_grouping: bool,
) -> Result<Core> {
    check_tau(tau)?;
    check_stats(g, stats)?;
    Ok(if fits_u128(g) {
        run_greedy::<u128>(g, tau, tie_policy, pes_grouping)
    } else {
        run_greedy::<BigUint>(g, tau, tie_policy, pes_grouping)
    })
}

fn run_greedy<C: PathCount>(g: &DependencyNetwork, tau: f64, tie_policy: TiePolicy, pes_grouping: bool) -> Core {
    let mut residual = Residual::<C>::new(g);
    let total = residual.total().clone();
    let total_big = total.to_big();
    let mut covered = C::zero();
    let mut rng = tie_policy.rng();
    let mut elements = Vec::new();
    let mut tie_events = 0;

    while !reaches_fraction(&covered.to_big(), &total_big, tau) {
        let Some((gain, tied)) = residual.tied_max() else {
            break;
        };
        let chosen = match (pes_grouping, rng.as_mut()) {
            (false, None) => vec![tied[0]],
            (false, Some(rng)) => vec![tied[rng.random_range(0..tied.len())]],
            (true, None) => residual.pes_of(tied[0], &tied),
            (true, Some(rng)) => {
                let mut groups = residual.partition(&tied);
                let pick = rng.random_range(0..groups.len());
                groups.swap_remove(pick)
            }
        };
        if chosen.len() < tied.len() {
            tie_events += 1;
        }
        covered = covered.checked_add(&gain).expect("covered <= total");
        elements.push(element(g, &chosen, &gain.to_big(), &total_big));
        residual.remove(&chosen);
    }

    Core { elements, coverage: ratio(&covered.to_big(), &total_big), tau, tie_events }
}

/// Partition of `tied` into Path-Equivalent Sets, on the full network.
pub fn identify_pes<S: AsRef<str>>(
    g: &DependencyNetwork,
    stats: &PathStats,
    tied: &[S],
) -> Result<Vec<Vec<String>>> {
    check_stats(g, stats)?;
    let mut tied = resolve(g, tied)?;
    tied.sort_unstable();
    tied.dedup();
    let groups = if fits_u128(g) {
        Residual::<u128>::new(g).partition(&tied)
    } else {
        Residual::<BigUint>::new(g).partition(&tied)
    };
    Ok(groups
        .into_iter()
        .map(|group| group.into_iter().map(|v| g.id(v).to_owned()).collect())
        .collect())
}

#[derive(Clone, Debug, PartialEq)]
pub struct CoreEnumeration {
    /// Distinct cores, sorted by their element member sets.
    pub cores: Vec<Core>,
    /// More distinct cores existed beyond the limit.
    pub truncated: bool,
}

/// Explores every tie-breaking branch of the greedy and collects the distinct cores.
///
/// Two cores are the same when they consist of the same element member sets, in any
/// order. At most `limit` cores are returned.
pub fn enumerate_cores(
    g: &DependencyNetwork,
    stats: &PathStats,
    tau: f64,
    limit: usize,
    pes_grouping: bool,
) -> Result<CoreEnumeration> {
    check_tau(tau)?;
    check_stats(g, stats)?;
    if limit == 0 {
        return Err(Error::InvalidArgument("enumeration limit must be positive".into()));
    }
    Ok(if fits_u128(g) {
        Enumerator::<u128>::run(g, tau, limit, pes_grouping)
    } else {
        Enumerator::<BigUint>::run(g, tau, limit, pes_grouping)
    })
}

type CoreKey = Vec<Vec<usize>>;

struct Enumerator<'g, C> {
    residual: Residual<'g, C>,
    total: BigUint,
    tau: f64,
    limit: usize,
    pes_grouping: bool,
    path: Vec<(Vec<usize>, BigUint)>,
    ties_on_path: usize,
    visited: HashSet<CoreKey>,
    found: BTreeMap<CoreKey, Core>,
    truncated: bool,
}

impl<'g, C: PathCount> Enumerator<'g, C> {
    fn run(g: &'g DependencyNetwork, tau: f64, limit: usize, pes_grouping: bool) -> CoreEnumeration {
        let residual = Residual::<C>::new(g);
        let total = residual.total().to_big();
        let mut e = Enumerator {
            residual,
            total,
            tau,
            limit,
            pes_grouping,
            path: Vec::new(),
            ties_on_path: 0,
            visited: HashSet::new(),
            found: BTreeMap::new(),
            truncated: false,
        };
        e.explore(BigUint::default());
        CoreEnumeration { cores: e.found.into_values().collect(), truncated: e.truncated }
    }

    fn key(&self) -> CoreKey {
        let mut key: CoreKey = self.path.iter().map(|(group, _)| group.clone()).collect();
        key.sort();
        key
    }

    fn explore(&mut self, covered: BigUint) {
        if self.truncated {
            return;
        }
        let tied = if reaches_fraction(&covered, &self.total, self.tau) {
            None
        } else {
            self.residual.tied_max()
        };
        let Some((gain, tied)) = tied else {
            self.record(&covered);
            return;
        };
        let groups = if self.pes_grouping {
            self.residual.partition(&tied)
        } else {
            tied.iter().map(|&v| vec![v]).collect()
        };
        let branching = groups.len() > 1 || groups[0].len() < tied.len();
        let gain = gain.to_big();
        for group in groups {
            self.path.push((group.clone(), gain.clone()));
            if self.visited.insert(self.key()) {
                self.ties_on_path += usize::from(branching);
                self.residual.remove(&group);
                self.explore(&covered + &gain);
                self.residual.restore(&group);
                self.ties_on_path -= usize::from(branching);
            }
            self.path.pop();
            if self.truncated {
                return;
            }
        }
    }

    fn record(&mut self, covered: &BigUint) {
        let key = self.key();
        if self.found.contains_key(&key) {
            return;
        }
        if self.found.len() == self.limit {
            self.truncated = true;
            return;
        }
        let g = self.residual.g;
        let elements = self
            .path
            .iter()
            .map(|(group, gain)| element(g, group, gain, &self.total))
            .collect();
        let core = Core {
            elements,
            coverage: ratio(covered, &self.total),
            tau: self.tau,
            tie_events: self.ties_on_path,
        };
        self.found.insert(key, core);
    }
}

/// Number of ST-paths traversing at least one vertex of `r`.
pub fn covered_paths<S: AsRef<str>>(g: &DependencyNetwork, stats: &PathStats, r: &[S]) -> Result<BigUint> {
    check_stats(g, stats)?;
    let r = resolve(g, r)?;
    Ok(covered_by_indices(g, stats, &r))
}

fn covered_by_indices(g: &DependencyNetwork, stats: &PathStats, r: &[usize]) -> BigUint {
    let mut removed = vec![false; g.vertex_count()];
    for &v in r {
        removed[v] = true;
    }
    let residual = match Counts::<u128>::compute(g, &removed) {
        Some(c) => c.total.to_big(),
        None => Counts::<BigUint>::compute(g, &removed).expect("no overflow").total,
    };
    stats.total() - residual
}

/// Path coverage of `r`: the fraction of ST-paths traversing at least one of its vertices.
pub fn coverage<S: AsRef<str>>(g: &DependencyNetwork, stats: &PathStats, r: &[S]) -> Result<f64> {
    let covered = covered_paths(g, stats, r)?;
    Ok(ratio(&covered, stats.total()))
}

#[derive(Clone, Debug, PartialEq)]
pub struct BruteForceCore {
    pub coverage: f64,
    pub covered_paths: BigUint,
    /// First optimal `k`-subset in lexicographic id order.
    pub witness: Vec<String>,
}

/// Exhaustive optimum over all `k`-subsets. Exponential; only for small test instances.
pub fn brute_force_core(g: &DependencyNetwork, stats: &PathStats, k: usize) -> Result<BruteForceCore> {
    let n = g.vertex_count();
    if n > ORACLE_VERTEX_LIMIT {
        return Err(Error::OracleTooLarge { vertices: n, limit: ORACLE_VERTEX_LIMIT });
    }
    check_stats(g, stats)?;
    if k > n {
        return Err(Error::InvalidArgument(format!("k = {k} exceeds the {n} vertices")));
    }
    let mut best: Option<(BigUint, Vec<usize>)> = None;
    let mut subset: Vec<usize> = (0..k).collect();
    loop {
        let covered = covered_by_indices(g, stats, &subset);
        if best.as_ref().is_none_or(|(b, _)| covered > *b) {
            best = Some((covered, subset.clone()));
        }
        // Advance to the next combination in lexicographic order.
        let Some(i) = (0..k).rev().find(|&i| subset[i] < n - k + i) else {
            break;
        };
        subset[i] += 1;
        for j in i + 1..k {
            subset[j] = subset[j - 1] + 1;
        }
    }
    let (covered, witness) = best.expect("at least the empty or first subset");
    Ok(BruteForceCore {
        coverage: ratio(&covered, stats.total()),
        covered_paths: covered,
        witness: witness.into_iter().map(|v| g.id(v).to_owned()).collect(),
    })
}

/// Mean pairwise Jaccard similarity of the cores' vertex sets.
pub fn jaccard_core_similarity(cores: &[Core]) -> Result<f64> {
    if cores.len() < 2 {
        return Err(Error::InvalidArgument("need at least two cores".into()));
    }
    let sets: Vec<BTreeSet<&str>> = cores.iter().map(Core::vertex_ids).collect();
    let mut sum = 0.0;
    let mut pairs = 0usize;
    for (i, a) in sets.iter().enumerate() {
        for b in &sets[i + 1..] {
            let union = a.union(b).count();
            sum += if union == 0 { 1.0 } else { a.intersection(b).count() as f64 / union as f64 };
            pairs += 1;
        }
    }
    Ok(sum / pairs as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centrality::compute_path_stats;
    use crate::graph::{build_raw, condense};

    fn net(pairs: &[(&str, &str)]) -> (DependencyNetwork, PathStats) {
        let g = condense(&build_raw(pairs).unwrap()).unwrap().0;
        let stats = compute_path_stats(&g).unwrap();
        (g, stats)
    }

    fn diamond() -> (DependencyNetwork, PathStats) {
        net(&[("s1", "a"), ("s2", "a"), ("a", "t1"), ("a", "t2")])
    }

    fn shortcut() -> (DependencyNetwork, PathStats) {
        net(&[("s", "t"), ("s", "m"), ("m", "t")])
    }

    fn members(core: &Core) -> Vec<Vec<&str>> {
        core.elements
            .iter()
            .map(|e| e.members.iter().map(String::as_str).collect())
            .collect()
    }

    #[test]
    fn coverage_examples() {
        let (g, stats) = diamond();
        assert_eq!(coverage(&g, &stats, &["a"]).unwrap(), 1.0);
        assert_eq!(coverage(&g, &stats, &["s1"]).unwrap(), 0.5);
        let empty: [&str; 0] = [];
        assert_eq!(coverage(&g, &stats, &empty).unwrap(), 0.0);
    }

    #[test]
    fn coverage_rejects_pathless_graph() {
        let g = DependencyNetwork::from_edges(vec!["x".into()], vec![]).unwrap();
        let stats = compute_path_stats(&g).unwrap();
        assert!(matches!(coverage(&g, &stats, &["x"]), Err(Error::NoStPaths)));
    }

    #[test]
    fn greedy_diamond() {
        let (g, stats) = diamond();
        let core = greedy_core(&g, &stats, 0.9, TiePolicy::Deterministic, true).unwrap();
        assert_eq!(members(&core), vec![vec!["a"]]);
        assert_eq!(core.coverage, 1.0);
        assert_eq!(core.elements[0].weight, 1.0);
    }

    #[test]
    fn greedy_chain_is_one_pes() {
        let (g, stats) = net(&[("s", "m"), ("m", "t")]);
        let core = greedy_core(&g, &stats, 0.9, TiePolicy::Deterministic, true).unwrap();
        assert_eq!(members(&core), vec![vec!["m", "s", "t"]]);
        assert_eq!(core.elements[0].kind, ElementKind::Pes);
        assert_eq!(core.size(), 1);
        assert_eq!(core.coverage, 1.0);
    }

    #[test]
    fn greedy_shortcut_single_vertex_mode() {
        let (g, stats) = shortcut();
        let core = greedy_core(&g, &stats, 1.0, TiePolicy::Deterministic, false).unwrap();
        assert_eq!(members(&core), vec![vec!["s"]]);
        assert_eq!(core.coverage, 1.0);
        assert_eq!(core.tie_events, 1);
    }

    #[test]
    fn greedy_shortcut_groups_source_and_target() {
        // s and t lie on both ST-paths, so they are path-equivalent.
        let (g, stats) = shortcut();
        let core = greedy_core(&g, &stats, 1.0, TiePolicy::Deterministic, true).unwrap();
        assert_eq!(members(&core), vec![vec!["s", "t"]]);
        assert_eq!(core.tie_events, 0);
    }

    #[test]
    fn greedy_rejects_bad_tau() {
        let (g, stats) = diamond();
        for tau in [0.0, -0.1, 1.5, f64::NAN] {
            assert!(matches!(
                greedy_core(&g, &stats, tau, TiePolicy::Deterministic, true),
                Err(Error::InvalidTau(_))
            ));
        }
    }

    #[test]
    fn pes_examples() {
        let (g, stats) = net(&[("s", "m"), ("m", "t")]);
        assert_eq!(identify_pes(&g, &stats, &["s", "m", "t"]).unwrap(), vec![vec!["m", "s", "t"]]);

        let (g, stats) = net(&[("s", "a"), ("a", "t"), ("s", "b"), ("b", "t")]);
        assert_eq!(identify_pes(&g, &stats, &["a", "b"]).unwrap(), vec![vec!["a"], vec!["b"]]);
        assert_eq!(identify_pes(&g, &stats, &["a"]).unwrap(), vec![vec!["a"]]);
    }

    #[test]
    fn enumerate_shortcut_branches() {
        let (g, stats) = shortcut();
        let e = enumerate_cores(&g, &stats, 1.0, 64, false).unwrap();
        let found: Vec<_> = e.cores.iter().map(members).collect();
        assert_eq!(found, vec![vec![vec!["s"]], vec![vec!["t"]]]);
        assert!(!e.truncated);

        let e = enumerate_cores(&g, &stats, 1.0, 1, false).unwrap();
        assert_eq!(e.cores.len(), 1);
        assert!(e.truncated);
    }

    #[test]
    fn enumerate_diamond_single_core() {
        let (g, stats) = diamond();
        let e = enumerate_cores(&g, &stats, 0.9, 64, true).unwrap();
        assert_eq!(e.cores.len(), 1);
        assert_eq!(members(&e.cores[0]), vec![vec!["a"]]);
        assert!(!e.truncated);
        let e = enumerate_cores(&g, &stats, 0.9, 1, true).unwrap();
        assert!(!e.truncated);
        assert!(enumerate_cores(&g, &stats, 0.9, 0, true).is_err());
    }

    #[test]
    fn brute_force_examples() {
        let (g, stats) = diamond();
        let b = brute_force_core(&g, &stats, 1).unwrap();
        assert_eq!((b.coverage, b.witness.as_slice()), (1.0, &["a".to_owned()][..]));
        let b = brute_force_core(&g, &stats, 0).unwrap();
        assert_eq!(b.coverage, 0.0);
        assert!(b.witness.is_empty());

        let (g, stats) = shortcut();
        let b = brute_force_core(&g, &stats, 1).unwrap();
        assert_eq!((b.coverage, b.witness.as_slice()), (1.0, &["s".to_owned()][..]));
    }

    #[test]
    fn brute_force_guard() {
        let ids: Vec<String> = (0..21).map(|i| format!("v{i:02}")).collect();
        let edges = (0..20).map(|i| (i, i + 1)).collect();
        let g = DependencyNetwork::from_edges(ids, edges).unwrap();
        let stats = compute_path_stats(&g).unwrap();
        assert!(matches!(brute_force_core(&g, &stats, 1), Err(Error::OracleTooLarge { .. })));
    }

    fn core_of(sets: &[&[&str]]) -> Core {
        Core {
            elements: sets
                .iter()
                .map(|m| CoreElement {
                    kind: ElementKind::Single,
                    members: m.iter().map(|s| s.to_string()).collect(),
                    weight: 0.5,
                })
                .collect(),
            coverage: 1.0,
            tau: 0.9,
            tie_events: 0,
        }
    }

    #[test]
    fn jaccard_examples() {
        let a = core_of(&[&["a"], &["b"]]);
        assert_eq!(jaccard_core_similarity(&[a.clone(), a.clone()]).unwrap(), 1.0);
        let s = core_of(&[&["s"]]);
        let t = core_of(&[&["t"]]);
        assert_eq!(jaccard_core_similarity(&[s, t]).unwrap(), 0.0);
        let ac = core_of(&[&["a", "c"]]);
        assert!((jaccard_core_similarity(&[a.clone(), ac]).unwrap() - 1.0 / 3.0).abs() < 1e-15);
        assert!(jaccard_core_similarity(&[a]).is_err());
    }

    #[test]
    fn seeded_policy_is_reproducible() {
        let (g, stats) = net(&[("s1", "t1"), ("s1", "t2"), ("s2", "t1"), ("s2", "t2"), ("s3", "t3")]);
        let a = greedy_core(&g, &stats, 1.0, TiePolicy::Seeded(11), true).unwrap();
        let b = greedy_core(&g, &stats, 1.0, TiePolicy::Seeded(11), true).unwrap();
        assert_eq!(a, b);
    }
}
