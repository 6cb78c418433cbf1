//! Reuse-preference and edge-copying generators, α fitting and ensemble sweeps.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::core_id::TiePolicy;
use crate::error::{Error, Result};
use crate::graph::{DependencyNetwork, VertexClass};
use crate::metrics::h_score;

/// Redraws of an in-degree that exceeds the candidate pool before clamping.
const INDEGREE_RETRIES: usize = 100;

/// Rejection attempts per requested origin before switching to sampling without replacement.
const DUPLICATE_RETRY_FACTOR: usize = 100;

/// Normalized Zipf probabilities `r^-alpha` for ranks `1..=n`.
pub fn rank_distribution(alpha: f64, n: usize) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::InvalidArgument("rank distribution needs n >= 1".into()));
    }
    let weights: Vec<f64> = (1..=n).map(|r| rank_weight(r, alpha)).collect();
    let sum: f64 = weights.iter().sum();
    Ok(weights.into_iter().map(|w| w / sum).collect())
}

fn rank_weight(r: usize, alpha: f64) -> f64 {
    (r as f64).powf(-alpha)
}

/// Cumulative Zipf weights, shared by every arrival of a generation.
struct ZipfTable {
    cumulative: Vec<f64>,
}

impl ZipfTable {
    fn new(alpha: f64, n: usize) -> Self {
        let mut acc = 0.0;
        let cumulative = (1..=n)
            .map(|r| {
                acc += rank_weight(r, alpha);
                acc
            })
            .collect();
        ZipfTable { cumulative }
    }

    /// Draws a rank in `1..=n`.
    fn sample(&self, n: usize, rng: &mut impl Rng) -> usize {
        let prefix = &self.cumulative[..n];
        let x = rng.random::<f64>() * prefix[n - 1];
        prefix.partition_point(|&c| c <= x).min(n - 1) + 1
    }

    fn weight(&self, r: usize) -> f64 {
        if r == 1 {
            self.cumulative[0]
        } else {
            self.cumulative[r - 1] - self.cumulative[r - 2]
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum InDegreeLaw {
    Const(usize),
    OnePlusPoisson(f64),
}

impl InDegreeLaw {
    fn validate(self) -> Result<()> {
        match self {
            InDegreeLaw::Const(0) => Err(Error::InvalidArgument("constant in-degree must be >= 1".into())),
            InDegreeLaw::OnePlusPoisson(mean) if !(mean >= 0.0 && mean.is_finite()) => {
                Err(Error::InvalidArgument(format!("poisson mean must be finite and >= 0, got {mean}")))
            }
            _ => Ok(()),
        }
    }

    /// One in-degree for a vertex with `pool` candidates. Oversized draws are redrawn a
    /// bounded number of times, then clamped.
    fn draw(self, pool: usize, poisson: Option<&Poisson<f64>>, rng: &mut impl Rng) -> usize {
        let mut d = 0;
        for _ in 0..INDEGREE_RETRIES {
            d = match (self, poisson) {
                (InDegreeLaw::Const(c), _) => c,
                (InDegreeLaw::OnePlusPoisson(_), Some(p)) => 1 + p.sample(rng) as usize,
                (InDegreeLaw::OnePlusPoisson(_), None) => 1,
            };
            if d <= pool || matches!(self, InDegreeLaw::Const(_)) {
                break;
            }
        }
        d.min(pool)
    }

    fn poisson(self) -> Option<Poisson<f64>> {
        match self {
            InDegreeLaw::OnePlusPoisson(mean) if mean > 0.0 => Poisson::new(mean).ok(),
            _ => None,
        }
    }
}

impl fmt::Display for InDegreeLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            InDegreeLaw::Const(c) => write!(f, "const:{c}"),
            InDegreeLaw::OnePlusPoisson(mean) => write!(f, "poisson:{mean}"),
        }
    }
}

/// Parses `const:C` or `poisson:MEAN` (the latter meaning `1 + Poisson(MEAN)`).
impl FromStr for InDegreeLaw {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidArgument(format!("in-degree law must be const:C or poisson:MEAN, got {s:?}"));
        let (kind, value) = s.split_once(':').ok_or_else(bad)?;
        let law = match kind.trim() {
            "const" => InDegreeLaw::Const(value.trim().parse().map_err(|_| bad())?),
            "poisson" => InDegreeLaw::OnePlusPoisson(value.trim().parse().map_err(|_| bad())?),
            _ => return Err(bad()),
        };
        law.validate()?;
        Ok(law)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RpConfig {
    pub sources: usize,
    pub intermediates: usize,
    pub targets: usize,
    pub alpha: f64,
    pub indegree: InDegreeLaw,
    pub seed: u64,
}

impl RpConfig {
    fn validate(&self) -> Result<()> {
        if self.sources == 0 || self.targets == 0 {
            return Err(Error::InvalidArgument("RP model needs at least one source and one target".into()));
        }
        if !self.alpha.is_finite() {
            return Err(Error::InvalidArgument(format!("alpha must be finite, got {}", self.alpha)));
        }
        self.indegree.validate()
    }
}

fn padded_names(prefix: char, count: usize) -> Vec<String> {
    let width = count.saturating_sub(1).to_string().len();
    (0..count).map(|i| format!("{prefix}{i:0width$}")).collect()
}

/// Picks `d` distinct values by repeated draws from `draw`, rejecting duplicates. After
/// `100 * d` attempts the remaining picks are made without replacement from
/// `fallback_weights`, which lists every candidate with its single-draw weight.
fn distinct_draws<R: Rng>(
    d: usize,
    rng: &mut R,
    mut draw: impl FnMut(&mut R) -> usize,
    fallback_weights: impl FnOnce() -> Vec<(usize, f64)>,
) -> Vec<usize> {
    let mut picked: Vec<usize> = Vec::with_capacity(d);
    let mut attempts = 0;
    while picked.len() < d && attempts < DUPLICATE_RETRY_FACTOR * d {
        attempts += 1;
        let x = draw(rng);
        if !picked.contains(&x) {
            picked.push(x);
        }
    }
    if picked.len() < d {
        let mut pool: Vec<(usize, f64)> =
            fallback_weights().into_iter().filter(|(x, _)| !picked.contains(x)).collect();
        while picked.len() < d && !pool.is_empty() {
            let total: f64 = pool.iter().map(|(_, w)| w).sum();
            let i = if total > 0.0 {
                let mut x = rng.random::<f64>() * total;
                pool.iter()
                    .position(|&(_, w)| {
                        x -= w;
                        x < 0.0
                    })
                    .unwrap_or(pool.len() - 1)
            } else {
                rng.random_range(0..pool.len())
            };
            picked.push(pool.swap_remove(i).0);
        }
    }
    picked
}

/// Free-standing reuse-preference network.
///
/// Sources come first, then intermediates one at a time, then all targets as one batch.
/// An arrival sees prior intermediates ranked by recency (most recent is rank 1) followed
/// by the sources in a freshly shuffled order, and draws its distinct origins from the
/// Zipf rank law.
pub fn rp_generate(cfg: &RpConfig) -> Result<DependencyNetwork> {
    cfg.validate()?;
    let (s, m, t) = (cfg.sources, cfg.intermediates, cfg.targets);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let zipf = ZipfTable::new(cfg.alpha, s + m);
    let poisson = cfg.indegree.poisson();

    let mut ids = padded_names('s', s);
    ids.extend(padded_names('m', m));
    ids.extend(padded_names('t', t));

    let mut order: Vec<usize> = (0..s).collect();
    let mut edges = Vec::new();
    for v in s..s + m + t {
        // Targets all see the full intermediate ranking.
        let prior = (v - s).min(m);
        let pool = prior + s;
        let d = cfg.indegree.draw(pool, poisson.as_ref(), &mut rng);
        if d == 0 {
            return Err(Error::InvalidArgument(format!("no admissible in-degree for vertex {}", ids[v])));
        }
        order.shuffle(&mut rng);
        let vertex_at = |r: usize| if r <= prior { s + prior - r } else { order[r - prior - 1] };
        let ranks = distinct_draws(
            d,
            &mut rng,
            |rng| zipf.sample(pool, rng),
            || (1..=pool).map(|r| (r, zipf.weight(r))).collect(),
        );
        edges.extend(ranks.into_iter().map(|r| (vertex_at(r), v)));
    }
    generated(ids, edges)
}

fn generated(ids: Vec<String>, edges: Vec<(usize, usize)>) -> Result<DependencyNetwork> {
    let expected = edges.len();
    let g = DependencyNetwork::from_edges(ids, edges)
        .map_err(|e| Error::Invariant(format!("generated network rejected: {e}")))?;
    if g.edge_count() != expected {
        return Err(Error::Invariant("generator produced a duplicate edge".into()));
    }
    Ok(g)
}

/// Layered template for the fitted generators.
#[derive(Clone, Debug, PartialEq)]
pub struct LayeredScaffold {
    ids: Vec<String>,
    layer: Vec<usize>,
    layers: Vec<Vec<usize>>,
    indegree: Vec<usize>,
    /// Sorted ancestor indices per vertex.
    ancestors: Vec<Vec<usize>>,
    /// Ancestors grouped by layer distance, nearest first.
    by_distance: Vec<Vec<(usize, Vec<usize>)>>,
}

impl LayeredScaffold {
    /// Builds and validates a scaffold from explicit parts. `layers[0]` holds the sources
    /// and the last layer the targets.
    pub fn from_parts(
        layers: Vec<Vec<String>>,
        indegrees: &[(String, usize)],
        ancestors: &[(String, Vec<String>)],
    ) -> Result<Self> {
        let ids: Vec<String> = layers.iter().flatten().cloned().collect();
        let index: std::collections::HashMap<&str, usize> =
            ids.iter().enumerate().map(|(i, id)| (id.as_str(), i)).collect();
        if index.len() != ids.len() {
            return Err(Error::InvalidArgument("scaffold lists a vertex twice".into()));
        }
        let lookup = |id: &str| {
            index.get(id).copied().ok_or_else(|| Error::ScaffoldInconsistency {
                vertex: id.to_owned(),
                reason: "not in any layer".into(),
            })
        };
        let mut layer = vec![0; ids.len()];
        let mut layer_idx = Vec::with_capacity(layers.len());
        let mut next = 0;
        for (i, l) in layers.iter().enumerate() {
            layer_idx.push((next..next + l.len()).collect::<Vec<_>>());
            for slot in &mut layer[next..next + l.len()] {
                *slot = i;
            }
            next += l.len();
        }
        let mut indegree = vec![0; ids.len()];
        for (id, d) in indegrees {
            indegree[lookup(id)?] = *d;
        }
        let mut anc = vec![Vec::new(); ids.len()];
        for (id, list) in ancestors {
            let v = lookup(id)?;
            anc[v] = list.iter().map(|a| lookup(a)).collect::<Result<Vec<_>>>()?;
            anc[v].sort_unstable();
            anc[v].dedup();
        }
        Self::assemble(ids, layer, layer_idx, indegree, anc)
    }

    fn assemble(
        ids: Vec<String>,
        layer: Vec<usize>,
        layers: Vec<Vec<usize>>,
        indegree: Vec<usize>,
        ancestors: Vec<Vec<usize>>,
    ) -> Result<Self> {
        let inconsistent = |v: usize, reason: String| Error::ScaffoldInconsistency { vertex: ids[v].clone(), reason };
        for v in 0..ids.len() {
            if layer[v] == 0 {
                if indegree[v] != 0 || !ancestors[v].is_empty() {
                    return Err(inconsistent(v, "layer-0 vertex with inputs".into()));
                }
                continue;
            }
            if indegree[v] == 0 || ancestors[v].is_empty() {
                return Err(inconsistent(v, "non-source without inputs".into()));
            }
            if indegree[v] > ancestors[v].len() {
                return Err(inconsistent(
                    v,
                    format!("in-degree {} exceeds {} ancestors", indegree[v], ancestors[v].len()),
                ));
            }
            if let Some(&a) = ancestors[v].iter().find(|&&a| layer[a] >= layer[v]) {
                return Err(inconsistent(v, format!("ancestor {} is not in a lower layer", ids[a])));
            }
        }
        let by_distance = ancestors
            .iter()
            .enumerate()
            .map(|(v, anc)| {
                let mut groups: Vec<(usize, Vec<usize>)> = Vec::new();
                let mut sorted: Vec<usize> = anc.clone();
                sorted.sort_by_key(|&a| (layer[v] - layer[a], a));
                for a in sorted {
                    let r = layer[v] - layer[a];
                    match groups.last_mut() {
                        Some((dist, members)) if *dist == r => members.push(a),
                        _ => groups.push((r, vec![a])),
                    }
                }
                groups
            })
            .collect();
        Ok(LayeredScaffold { ids, layer, layers, indegree, ancestors, by_distance })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }

    pub fn layers(&self) -> Vec<Vec<&str>> {
        self.layers
            .iter()
            .map(|l| l.iter().map(|&v| self.ids[v].as_str()).collect())
            .collect()
    }

    fn index_of(&self, id: &str) -> Option<usize> {
        self.ids.iter().position(|x| x == id)
    }

    pub fn layer_of(&self, id: &str) -> Option<usize> {
        self.index_of(id).map(|v| self.layer[v])
    }

    pub fn indegree(&self, id: &str) -> Option<usize> {
        self.index_of(id).map(|v| self.indegree[v])
    }

    pub fn ancestors(&self, id: &str) -> Option<Vec<&str>> {
        self.index_of(id)
            .map(|v| self.ancestors[v].iter().map(|&a| self.ids[a].as_str()).collect())
    }

    /// Non-source vertices in layer order.
    fn arrivals(&self) -> impl Iterator<Item = usize> + '_ {
        self.layers.iter().skip(1).flatten().copied()
    }
}

/// Layers a template network: sources at 0, every other non-target at its longest-path
/// distance from the sources, and all targets in one layer above the rest. Isolated
/// vertices sit in layer 0 with no inputs.
pub fn layered_scaffold_from(g: &DependencyNetwork) -> Result<LayeredScaffold> {
    if g.targets().next().is_none() || g.sources().next().is_none() {
        return Err(Error::NoStPaths);
    }
    let n = g.vertex_count();
    let mut level = vec![0usize; n];
    for &v in g.topo_order() {
        level[v] = g.predecessors(v).iter().map(|&u| level[u] + 1).max().unwrap_or(0);
    }
    let top = (0..n)
        .filter(|&v| g.class(v) != VertexClass::Target)
        .map(|v| level[v])
        .max()
        .unwrap_or(0)
        + 1;
    for v in g.targets() {
        level[v] = top;
    }

    let words = n.div_ceil(64);
    let mut bits = vec![0u64; n * words];
    let mut row = vec![0u64; words];
    for &v in g.topo_order() {
        row.fill(0);
        for &u in g.predecessors(v) {
            row[u / 64] |= 1 << (u % 64);
            let urow = &bits[u * words..(u + 1) * words];
            for (r, b) in row.iter_mut().zip(urow) {
                *r |= b;
            }
        }
        bits[v * words..(v + 1) * words].copy_from_slice(&row);
    }
    let ancestors: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            (0..n)
                .filter(|&a| bits[v * words + a / 64] >> (a % 64) & 1 == 1)
                .collect()
        })
        .collect();

    let mut layers = vec![Vec::new(); top + 1];
    for v in 0..n {
        layers[level[v]].push(v);
    }
    let indegree = (0..n).map(|v| g.predecessors(v).len()).collect();
    LayeredScaffold::assemble(g.ids().to_vec(), level, layers, indegree, ancestors)
}

/// Per-vertex origin sampler for the fitted RP model: pick a layer distance with
/// probability proportional to `count * r^-alpha`, then a member uniformly.
struct FittedSampler<'s> {
    groups: &'s [(usize, Vec<usize>)],
    cumulative: Vec<f64>,
}

impl<'s> FittedSampler<'s> {
    fn new(groups: &'s [(usize, Vec<usize>)], alpha: f64) -> Self {
        let mut acc = 0.0;
        let cumulative = groups
            .iter()
            .map(|(r, members)| {
                acc += members.len() as f64 * rank_weight(*r, alpha);
                acc
            })
            .collect();
        FittedSampler { groups, cumulative }
    }

    fn sample(&self, rng: &mut impl Rng) -> usize {
        let total = *self.cumulative.last().expect("non-source has ancestors");
        let x = rng.random::<f64>() * total;
        let g = self.cumulative.partition_point(|&c| c <= x).min(self.groups.len() - 1);
        let members = &self.groups[g].1;
        members[rng.random_range(0..members.len())]
    }

    fn weights(&self, alpha: f64) -> Vec<(usize, f64)> {
        self.groups
            .iter()
            .flat_map(|(r, members)| members.iter().map(move |&a| (a, rank_weight(*r, alpha))))
            .collect()
    }
}

/// Regenerates the scaffold's edges with the fitted RP law: each non-source keeps its
/// in-degree and draws distinct origins from its template ancestors, weighted by
/// `(layer distance)^-alpha`.
pub fn rp_generate_fitted(scaffold: &LayeredScaffold, alpha: f64, seed: u64) -> Result<DependencyNetwork> {
    if !alpha.is_finite() {
        return Err(Error::InvalidArgument(format!("alpha must be finite, got {alpha}")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in scaffold.arrivals() {
        let sampler = FittedSampler::new(&scaffold.by_distance[v], alpha);
        let origins = distinct_draws(
            scaffold.indegree[v],
            &mut rng,
            |rng| sampler.sample(rng),
            || sampler.weights(alpha),
        );
        edges.extend(origins.into_iter().map(|u| (u, v)));
    }
    generated(scaffold.ids.clone(), edges)
}

#[derive(Clone, Debug)]
pub struct EdgeCopyConfig<'s> {
    pub beta: f64,
    pub seed: u64,
    pub scaffold: &'s LayeredScaffold,
}

/// Edge-copying baseline on a scaffold. Each incoming slot of `v` picks `u` uniformly from
/// its ancestors; with probability `beta` it links to `u`, otherwise it copies one of the
/// inputs already assigned to `u` (or links to `u` when `u` has none). Duplicates are
/// redrawn.
pub fn edge_copy_generate_fitted(cfg: &EdgeCopyConfig<'_>) -> Result<DependencyNetwork> {
    if !(0.0..=1.0).contains(&cfg.beta) {
        return Err(Error::InvalidArgument(format!("beta must lie in [0, 1], got {}", cfg.beta)));
    }
    let scaffold = cfg.scaffold;
    let beta = cfg.beta;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let mut inputs: Vec<Vec<usize>> = vec![Vec::new(); scaffold.vertex_count()];
    for v in scaffold.arrivals() {
        let anc = &scaffold.ancestors[v];
        let chosen = {
            let inputs = &inputs;
            distinct_draws(
                scaffold.indegree[v],
                &mut rng,
                |rng| {
                    let u = anc[rng.random_range(0..anc.len())];
                    if rng.random::<f64>() < beta || inputs[u].is_empty() {
                        u
                    } else {
                        inputs[u][rng.random_range(0..inputs[u].len())]
                    }
                },
                || copy_weights(anc, inputs, beta),
            )
        };
        inputs[v] = chosen;
    }
    let edges = inputs
        .iter()
        .enumerate()
        .flat_map(|(v, us)| us.iter().map(move |&u| (u, v)))
        .collect();
    generated(scaffold.ids.clone(), edges)
}

/// Single-slot attachment probabilities of the edge-copy rule.
fn copy_weights(anc: &[usize], inputs: &[Vec<usize>], beta: f64) -> Vec<(usize, f64)> {
    let mut weight: std::collections::BTreeMap<usize, f64> = anc.iter().map(|&a| (a, 0.0)).collect();
    let share = 1.0 / anc.len() as f64;
    for &u in anc {
        if inputs[u].is_empty() {
            *weight.entry(u).or_default() += share;
        } else {
            *weight.entry(u).or_default() += share * beta;
            let each = share * (1.0 - beta) / inputs[u].len() as f64;
            for &w in &inputs[u] {
                *weight.entry(w).or_default() += each;
            }
        }
    }
    weight.into_iter().collect()
}

/// A generator with one free parameter, used by sweeps and fitting.
#[derive(Clone, Debug)]
pub enum Model<'s> {
    /// Free-standing RP model; the parameter is α.
    Rp(RpConfig),
    /// Fitted RP model on a scaffold; the parameter is α.
    FittedRp(&'s LayeredScaffold),
    /// Edge-copying model on a scaffold; the parameter is β.
    EdgeCopy(&'s LayeredScaffold),
}

impl Model<'_> {
    pub fn generate(&self, param: f64, seed: u64) -> Result<DependencyNetwork> {
        match self {
            Model::Rp(cfg) => rp_generate(&RpConfig { alpha: param, seed, ..cfg.clone() }),
            Model::FittedRp(scaffold) => rp_generate_fitted(scaffold, param, seed),
            Model::EdgeCopy(scaffold) => edge_copy_generate_fitted(&EdgeCopyConfig { beta: param, seed, scaffold }),
        }
    }

    pub fn parameter_name(&self) -> &'static str {
        match self {
            Model::Rp(_) | Model::FittedRp(_) => "alpha",
            Model::EdgeCopy(_) => "beta",
        }
    }
}

/// Sample mean with a normal-approximation 95% confidence interval.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Estimate {
    pub mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
}

impl Estimate {
    pub fn from_samples(xs: &[f64]) -> Estimate {
        let n = xs.len() as f64;
        let mean = xs.iter().sum::<f64>() / n;
        let half = if xs.len() < 2 {
            0.0
        } else {
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0);
            1.96 * (var / n).sqrt()
        };
        Estimate { mean, ci_low: mean - half, ci_high: mean + half }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub param: f64,
    pub runs: usize,
    pub h_score: Estimate,
    pub core_size: Estimate,
    pub core_vertex_coverage: Estimate,
    pub avg_core_location: Estimate,
}

struct RunSummary {
    h: f64,
    core: f64,
    coverage: f64,
    location: f64,
}

fn run_one(model: &Model<'_>, param: f64, seed: u64, tau: f64) -> Result<RunSummary> {
    let g = model.generate(param, seed)?;
    let r = h_score(&g, tau, TiePolicy::Deterministic)?;
    Ok(RunSummary {
        h: r.h_score,
        core: r.core_size as f64,
        coverage: r.core_vertex_coverage,
        location: r.avg_core_location,
    })
}

/// Runs `runs` independent generations per parameter value, run `i` seeded with
/// `seed + i`, and summarizes H, core size, core vertex coverage and core location.
pub fn ensemble_sweep(model: &Model<'_>, params: &[f64], runs: usize, tau: f64, seed: u64) -> Result<Vec<SweepRow>> {
    if runs < 2 {
        return Err(Error::InvalidArgument("a sweep needs at least 2 runs per point".into()));
    }
    params
        .iter()
        .map(|&param| {
            let results: Vec<Result<RunSummary>> = (0..runs as u64)
                .into_par_iter()
                .map(|i| run_one(model, param, seed.wrapping_add(i), tau))
                .collect();
            let results = results.into_iter().collect::<Result<Vec<_>>>()?;
            let column = |f: fn(&RunSummary) -> f64| Estimate::from_samples(&results.iter().map(f).collect::<Vec<_>>());
            Ok(SweepRow {
                param,
                runs,
                h_score: column(|r| r.h),
                core_size: column(|r| r.core),
                core_vertex_coverage: column(|r| r.coverage),
                avg_core_location: column(|r| r.location),
            })
        })
        .collect()
}

/// α grid for fitting, inclusive at both ends.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaGrid {
    pub min: f64,
    pub max: f64,
    pub step: f64,
}

impl Default for AlphaGrid {
    fn default() -> Self {
        AlphaGrid { min: -2.0, max: 3.0, step: 0.1 }
    }
}

impl AlphaGrid {
    pub fn points(&self) -> Result<Vec<f64>> {
        let finite = self.min.is_finite() && self.max.is_finite() && self.step.is_finite();
        if !finite || self.max < self.min || (self.max > self.min && self.step <= 0.0) {
            return Err(Error::InvalidArgument(format!(
                "degenerate alpha grid [{}, {}] step {}",
                self.min, self.max, self.step
            )));
        }
        if self.max == self.min {
            return Ok(vec![self.min]);
        }
        let n = ((self.max - self.min) / self.step + 1e-9).floor() as usize;
        Ok((0..=n).map(|i| round_grid(self.min + i as f64 * self.step)).collect())
    }
}

/// Strips accumulated float noise so grid points print as typed.
fn round_grid(x: f64) -> f64 {
    (x * 1e9).round() / 1e9
}

pub const DEFAULT_FIT_ENSEMBLE: usize = 100;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitRow {
    pub alpha: f64,
    pub h_score: Estimate,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AlphaFit {
    pub alpha: f64,
    pub target_h: f64,
    pub table: Vec<FitRow>,
}

/// Fits the fitted-RP α to `g`: the grid value whose ensemble mean H is closest to H(g).
/// Every grid point reuses the seeds `seed..seed + ensemble`; ties go to the smaller α.
pub fn fit_alpha(g: &DependencyNetwork, grid: AlphaGrid, ensemble: usize, tau: f64, seed: u64) -> Result<AlphaFit> {
    if ensemble < 2 {
        return Err(Error::InvalidArgument("fit ensemble needs at least 2 networks".into()));
    }
    let points = grid.points()?;
    let target_h = h_score(g, tau, TiePolicy::Deterministic)?.h_score;
    let scaffold = layered_scaffold_from(g)?;
    let model = Model::FittedRp(&scaffold);
    let mut table = Vec::with_capacity(points.len());
    for alpha in points {
        let hs: Vec<Result<f64>> = (0..ensemble as u64)
            .into_par_iter()
            .map(|i| run_one(&model, alpha, seed.wrapping_add(i), tau).map(|r| r.h))
            .collect();
        let hs = hs.into_iter().collect::<Result<Vec<_>>>()?;
        table.push(FitRow { alpha, h_score: Estimate::from_samples(&hs) });
    }
    let mut best = &table[0];
    for row in &table[1..] {
        if (row.h_score.mean - target_h).abs() < (best.h_score.mean - target_h).abs() {
            best = row;
        }
    }
    Ok(AlphaFit { alpha: best.alpha, target_h, table })
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::{BTreeMap, BTreeSet};

    fn net(pairs: &[(&str, &str)]) -> DependencyNetwork {
        let raw = crate::graph::build_raw(pairs).unwrap();
        crate::graph::condense(&raw).unwrap().0
    }

    fn edge_set(g: &DependencyNetwork) -> BTreeSet<(String, String)> {
        g.edge_ids().map(|(u, v)| (u.to_owned(), v.to_owned())).collect()
    }

    fn rp(s: usize, m: usize, t: usize, alpha: f64, indegree: InDegreeLaw, seed: u64) -> RpConfig {
        RpConfig { sources: s, intermediates: m, targets: t, alpha, indegree, seed }
    }

    #[test]
    fn rank_distribution_examples() {
        let close = |a: &[f64], b: &[f64]| a.iter().zip(b).all(|(x, y)| (x - y).abs() < 1e-12);
        assert!(close(&rank_distribution(0.0, 4).unwrap(), &[0.25; 4]));
        assert!(close(&rank_distribution(1.0, 3).unwrap(), &[6.0 / 11.0, 3.0 / 11.0, 2.0 / 11.0]));
        assert!(close(&rank_distribution(-1.0, 3).unwrap(), &[1.0 / 6.0, 2.0 / 6.0, 3.0 / 6.0]));
        for alpha in [-2.0, 0.3, 2.5] {
            let sum: f64 = rank_distribution(alpha, 1000).unwrap().iter().sum();
            assert!((sum - 1.0).abs() < 1e-12);
        }
        assert!(rank_distribution(1.0, 0).is_err());
    }

    #[test]
    fn zipf_sampler_chi_square() {
        // 10 ranks, 9 degrees of freedom; the 0.999 quantile is 27.88.
        let n = 10;
        let probs = rank_distribution(1.2, n).unwrap();
        let table = ZipfTable::new(1.2, n);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let draws = 100_000;
        let mut counts = vec![0usize; n];
        for _ in 0..draws {
            counts[table.sample(n, &mut rng) - 1] += 1;
        }
        let chi2: f64 = counts
            .iter()
            .zip(&probs)
            .map(|(&c, &p)| {
                let e = p * draws as f64;
                (c as f64 - e).powi(2) / e
            })
            .sum();
        assert!(chi2 < 27.88, "chi2 = {chi2}");
    }

    #[test]
    fn indegree_law_parsing() {
        assert_eq!("const:3".parse::<InDegreeLaw>().unwrap(), InDegreeLaw::Const(3));
        assert_eq!("poisson:2".parse::<InDegreeLaw>().unwrap(), InDegreeLaw::OnePlusPoisson(2.0));
        assert!("const:0".parse::<InDegreeLaw>().is_err());
        assert!("poisson:-1".parse::<InDegreeLaw>().is_err());
        assert!("zipf:2".parse::<InDegreeLaw>().is_err());
        assert_eq!(InDegreeLaw::OnePlusPoisson(2.0).to_string(), "poisson:2");
    }

    #[test]
    fn rp_single_candidate() {
        let g = rp_generate(&rp(1, 0, 1, 3.0, InDegreeLaw::Const(1), 5)).unwrap();
        assert_eq!(edge_set(&g), BTreeSet::from([("s0".into(), "t0".into())]));
    }

    #[test]
    fn rp_forced_by_distinctness() {
        for alpha in [-2.0, 0.0, 2.0] {
            let g = rp_generate(&rp(2, 0, 1, alpha, InDegreeLaw::Const(2), 1)).unwrap();
            assert_eq!(edge_set(&g).len(), 2);
            assert!(g.has_edge(g.index_of("s0").unwrap(), g.index_of("t0").unwrap()));
            assert!(g.has_edge(g.index_of("s1").unwrap(), g.index_of("t0").unwrap()));
        }
    }

    #[test]
    fn rp_indegrees_and_determinism() {
        let cfg = rp(20, 40, 20, 1.0, InDegreeLaw::Const(3), 42);
        let a = rp_generate(&cfg).unwrap();
        let b = rp_generate(&cfg).unwrap();
        assert_eq!(edge_set(&a), edge_set(&b));
        assert_eq!(a.vertex_count(), 80);
        for v in 0..a.vertex_count() {
            if !a.id(v).starts_with('s') {
                assert_eq!(a.predecessors(v).len(), 3, "{}", a.id(v));
            }
        }
        let c = rp_generate(&RpConfig { seed: 43, ..cfg }).unwrap();
        assert_ne!(edge_set(&a), edge_set(&c));
    }

    #[test]
    fn rp_clamps_oversized_indegree() {
        let g = rp_generate(&rp(2, 1, 1, 0.0, InDegreeLaw::Const(5), 0)).unwrap();
        assert_eq!(g.predecessors(g.index_of("m0").unwrap()).len(), 2);
        assert_eq!(g.predecessors(g.index_of("t0").unwrap()).len(), 3);
    }

    #[test]
    fn rp_rejects_bad_config() {
        assert!(rp_generate(&rp(0, 1, 1, 0.0, InDegreeLaw::Const(1), 0)).is_err());
        assert!(rp_generate(&rp(1, 1, 0, 0.0, InDegreeLaw::Const(1), 0)).is_err());
        assert!(rp_generate(&rp(1, 1, 1, f64::NAN, InDegreeLaw::Const(1), 0)).is_err());
    }

    #[test]
    fn rp_high_alpha_prefers_recent_intermediate() {
        // With a steep rank law each intermediate almost always links to its predecessor.
        let g = rp_generate(&rp(5, 30, 5, 8.0, InDegreeLaw::Const(1), 3)).unwrap();
        let chained = (1..30)
            .filter(|i| {
                let prev = g.index_of(&format!("m{:02}", i - 1)).unwrap();
                let cur = g.index_of(&format!("m{i:02}")).unwrap();
                g.has_edge(prev, cur)
            })
            .count();
        assert!(chained >= 27, "{chained}");
    }

    #[test]
    fn scaffold_examples() {
        let chain = layered_scaffold_from(&net(&[("s", "m"), ("m", "t")])).unwrap();
        assert_eq!(chain.layers(), vec![vec!["s"], vec!["m"], vec!["t"]]);

        let diamond =
            layered_scaffold_from(&net(&[("s1", "a"), ("s2", "a"), ("a", "t1"), ("a", "t2")])).unwrap();
        assert_eq!(diamond.layers(), vec![vec!["s1", "s2"], vec!["a"], vec!["t1", "t2"]]);
        assert_eq!(diamond.ancestors("t1").unwrap(), vec!["a", "s1", "s2"]);

        let shortcut = layered_scaffold_from(&net(&[("s", "t"), ("s", "m"), ("m", "t")])).unwrap();
        assert_eq!(shortcut.layers(), vec![vec!["s"], vec!["m"], vec!["t"]]);
        assert_eq!(shortcut.ancestors("t").unwrap(), vec!["m", "s"]);
        assert_eq!(shortcut.indegree("t"), Some(2));
    }

    #[test]
    fn scaffold_targets_share_top_layer() {
        let s = layered_scaffold_from(&net(&[("s", "t1"), ("s", "a"), ("a", "b"), ("b", "t2")])).unwrap();
        assert_eq!(s.layer_of("t1"), Some(3));
        assert_eq!(s.layer_of("t2"), Some(3));
    }

    #[test]
    fn scaffold_validation() {
        let layers = vec![vec!["s".to_string()], vec!["t".to_string()]];
        let err = LayeredScaffold::from_parts(layers.clone(), &[("t".into(), 2)], &[("t".into(), vec!["s".into()])]);
        assert!(matches!(err, Err(Error::ScaffoldInconsistency { .. })));
        let err = LayeredScaffold::from_parts(layers, &[("t".into(), 1)], &[]);
        assert!(matches!(err, Err(Error::ScaffoldInconsistency { .. })));
    }

    #[test]
    fn fitted_chain() {
        // A(m) = {s} is forced; t chooses between m (distance 1) and s (distance 2).
        let g = net(&[("s", "m"), ("m", "t")]);
        let scaffold = layered_scaffold_from(&g).unwrap();
        let sm = ("s".to_string(), "m".to_string());
        for alpha in [-2.0, 0.0, 2.0] {
            assert!(edge_set(&rp_generate_fitted(&scaffold, alpha, 9).unwrap()).contains(&sm));
        }
        for beta in [0.0, 0.5, 1.0] {
            let cfg = EdgeCopyConfig { beta, seed: 9, scaffold: &scaffold };
            assert!(edge_set(&edge_copy_generate_fitted(&cfg).unwrap()).contains(&sm));
        }
        assert_eq!(edge_set(&rp_generate_fitted(&scaffold, 60.0, 9).unwrap()), edge_set(&g));
        // Copying from m always lands on s.
        let cfg = EdgeCopyConfig { beta: 0.0, seed: 9, scaffold: &scaffold };
        let copied = edge_copy_generate_fitted(&cfg).unwrap();
        assert!(edge_set(&copied).contains(&("s".to_string(), "t".to_string())));
    }

    fn diamond_scaffold() -> LayeredScaffold {
        let s = |x: &str| x.to_string();
        LayeredScaffold::from_parts(
            vec![vec![s("s1"), s("s2")], vec![s("a")], vec![s("t1")]],
            &[(s("a"), 2), (s("t1"), 1)],
            &[(s("a"), vec![s("s1"), s("s2")]), (s("t1"), vec![s("s1"), s("s2"), s("a")])],
        )
        .unwrap()
    }

    fn origin_frequencies(draws: usize, mut gen: impl FnMut(u64) -> DependencyNetwork) -> BTreeMap<String, f64> {
        let mut freq = BTreeMap::new();
        for seed in 0..draws as u64 {
            let g = gen(seed);
            let t1 = g.index_of("t1").unwrap();
            for &u in g.predecessors(t1) {
                *freq.entry(g.id(u).to_owned()).or_insert(0.0) += 1.0 / draws as f64;
            }
        }
        freq
    }

    #[test]
    fn fitted_rp_layer_distance_weights() {
        let scaffold = diamond_scaffold();
        let alpha = 1.0;
        let freq = origin_frequencies(20_000, |seed| rp_generate_fitted(&scaffold, alpha, seed).unwrap());
        // Ranks 2, 2 and 1.
        let z = 2.0 * 0.5 + 1.0;
        assert!((freq["a"] - 1.0 / z).abs() < 0.02, "{freq:?}");
        assert!((freq["s1"] - 0.5 / z).abs() < 0.02, "{freq:?}");
        assert!((freq["s2"] - 0.5 / z).abs() < 0.02, "{freq:?}");
    }

    #[test]
    fn fitted_rp_alpha_zero_is_uniform() {
        let scaffold = diamond_scaffold();
        let freq = origin_frequencies(20_000, |seed| rp_generate_fitted(&scaffold, 0.0, seed).unwrap());
        for id in ["a", "s1", "s2"] {
            assert!((freq[id] - 1.0 / 3.0).abs() < 0.02, "{freq:?}");
        }
    }

    /// Straightforward re-implementation of the edge-copy rule on the diamond scaffold.
    fn simulate_copy(beta: f64, rng: &mut ChaCha8Rng) -> BTreeSet<String> {
        let mut a_inputs: Vec<&str> = Vec::new();
        while a_inputs.len() < 2 {
            let u = ["s1", "s2"][rng.random_range(0..2)];
            if !a_inputs.contains(&u) {
                a_inputs.push(u);
            }
        }
        let pick = ["s1", "s2", "a"][rng.random_range(0..3)];
        let origin = if pick == "a" && rng.random::<f64>() >= beta {
            a_inputs[rng.random_range(0..a_inputs.len())]
        } else {
            pick
        };
        BTreeSet::from([origin.to_string()])
    }

    #[test]
    fn edge_copy_matches_direct_simulation() {
        let scaffold = diamond_scaffold();
        for beta in [0.0, 0.4] {
            let draws = 20_000;
            let ours = origin_frequencies(draws, |seed| {
                edge_copy_generate_fitted(&EdgeCopyConfig { beta, seed, scaffold: &scaffold }).unwrap()
            });
            let mut rng = ChaCha8Rng::seed_from_u64(1234);
            let mut theirs: BTreeMap<String, f64> = BTreeMap::new();
            for _ in 0..draws {
                for id in simulate_copy(beta, &mut rng) {
                    *theirs.entry(id).or_insert(0.0) += 1.0 / draws as f64;
                }
            }
            for id in ["a", "s1", "s2"] {
                let (x, y) = (ours.get(id).copied().unwrap_or(0.0), theirs.get(id).copied().unwrap_or(0.0));
                assert!((x - y).abs() < 0.02, "beta {beta} {id}: {x} vs {y}");
            }
        }
    }

    #[test]
    fn edge_copy_beta_one_is_uniform() {
        let scaffold = diamond_scaffold();
        let freq = origin_frequencies(20_000, |seed| {
            edge_copy_generate_fitted(&EdgeCopyConfig { beta: 1.0, seed, scaffold: &scaffold }).unwrap()
        });
        for id in ["a", "s1", "s2"] {
            assert!((freq[id] - 1.0 / 3.0).abs() < 0.02, "{freq:?}");
        }
        assert!(edge_copy_generate_fitted(&EdgeCopyConfig { beta: 1.5, seed: 0, scaffold: &scaffold }).is_err());
    }

    #[test]
    fn fitted_generators_keep_indegrees() {
        let template = rp_generate(&rp(10, 30, 10, 0.5, InDegreeLaw::OnePlusPoisson(2.0), 8)).unwrap();
        let scaffold = layered_scaffold_from(&template).unwrap();
        let nets = [
            rp_generate_fitted(&scaffold, 1.0, 1).unwrap(),
            edge_copy_generate_fitted(&EdgeCopyConfig { beta: 0.2, seed: 1, scaffold: &scaffold }).unwrap(),
        ];
        for g in nets {
            for v in 0..template.vertex_count() {
                let w = g.index_of(template.id(v)).unwrap();
                assert_eq!(g.predecessors(w).len(), template.predecessors(v).len());
            }
        }
    }

    #[test]
    fn distinct_draw_fallback() {
        // A sampler stuck on one value forces the weighted fallback.
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut picked = distinct_draws(3, &mut rng, |_| 7, || vec![(7, 1.0), (8, 1.0), (9, 0.0)]);
        picked.sort_unstable();
        assert_eq!(picked, vec![7, 8, 9]);
    }

    #[test]
    fn grid_points() {
        let pts = AlphaGrid::default().points().unwrap();
        assert_eq!(pts.len(), 51);
        assert_eq!((pts[0], pts[10], pts[50]), (-2.0, -1.0, 3.0));
        assert_eq!(AlphaGrid { min: 0.7, max: 0.7, step: 0.0 }.points().unwrap(), vec![0.7]);
        assert!(AlphaGrid { min: 1.0, max: 0.0, step: 0.1 }.points().is_err());
        assert!(AlphaGrid { min: 0.0, max: 1.0, step: 0.0 }.points().is_err());
    }

    #[test]
    fn fit_single_point_grid() {
        let g = rp_generate(&rp(5, 10, 5, 1.0, InDegreeLaw::Const(2), 2)).unwrap();
        let fit = fit_alpha(&g, AlphaGrid { min: 0.4, max: 0.4, step: 0.1 }, 2, 0.9, 0).unwrap();
        assert_eq!(fit.alpha, 0.4);
        assert_eq!(fit.table.len(), 1);
        assert!(fit_alpha(&g, AlphaGrid::default(), 1, 0.9, 0).is_err());
    }

    #[test]
    fn minimal_sweep() {
        let model = Model::Rp(rp(4, 4, 4, 0.0, InDegreeLaw::OnePlusPoisson(2.0), 0));
        let rows = ensemble_sweep(&model, &[1.0], 2, 0.9, 0).unwrap();
        assert_eq!(rows.len(), 1);
        let h = rows[0].h_score;
        assert!(h.ci_low.is_finite() && h.ci_high.is_finite() && h.ci_low <= h.mean && h.mean <= h.ci_high);
        assert!(ensemble_sweep(&model, &[1.0], 1, 0.9, 0).is_err());
    }

    #[test]
    fn estimate_interval() {
        let e = Estimate::from_samples(&[1.0, 3.0]);
        assert_eq!(e.mean, 2.0);
        assert!((e.ci_high - e.mean - 1.96).abs() < 1e-12);
    }
}
