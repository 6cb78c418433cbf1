//! Flattening, H-score and the core location/coverage metrics.

use serde::{Deserialize, Serialize};

use crate::centrality::{compute_path_stats, PathStats};
use crate::core_id::{greedy_core, Core, CoreElement, TiePolicy};
use crate::error::{Error, Result};
use crate::graph::{DependencyNetwork, VertexClass};

/// The non-hierarchical baseline: sources and targets only, with `s -> t` whenever `s`
/// reaches `t` in `g`.
pub fn flatten(g: &DependencyNetwork) -> Result<DependencyNetwork> {
    let targets: Vec<usize> = g.targets().collect();
    if targets.is_empty() {
        return Err(Error::NoStPaths);
    }
    let n = g.vertex_count();
    let mut target_slot = vec![usize::MAX; n];
    for (i, &t) in targets.iter().enumerate() {
        target_slot[t] = i;
    }

    // Row v holds the set of targets reachable from v. Reverse topological order
    // finishes every successor's row before v reads it.
    let words = targets.len().div_ceil(64);
    let mut reach = vec![0u64; n * words];
    let mut row = vec![0u64; words];
    for &v in g.topo_order().iter().rev() {
        row.fill(0);
        if target_slot[v] != usize::MAX {
            row[target_slot[v] / 64] |= 1 << (target_slot[v] % 64);
        }
        for &w in g.successors(v) {
            for (r, x) in row.iter_mut().zip(&reach[w * words..(w + 1) * words]) {
                *r |= x;
            }
        }
        reach[v * words..(v + 1) * words].copy_from_slice(&row);
    }

    let mut keep = vec![false; n];
    let mut edges = Vec::new();
    for s in g.sources() {
        keep[s] = true;
        let row = &reach[s * words..(s + 1) * words];
        for (i, &t) in targets.iter().enumerate() {
            if row[i / 64] >> (i % 64) & 1 == 1 {
                edges.push((s, t));
            }
        }
    }
    for &t in &targets {
        keep[t] = true;
    }
    g.with_vertices_and_edges(&keep, edges)
}

/// `1 - C / C_f`.
pub fn hourglass_score(core_size: usize, flat_core_size: usize) -> f64 {
    1.0 - core_size as f64 / flat_core_size as f64
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HourglassReport {
    pub tau: f64,
    pub core_size: usize,
    pub flat_core_size: usize,
    pub h_score: f64,
    pub core_vertex_coverage: f64,
    pub avg_core_location: f64,
    /// `(location, weight)` per core element with a defined location.
    pub location_samples: Vec<(f64, f64)>,
    pub core: Core,
    pub flat_core: Core,
}

/// Cores of `g` and of its flattening under the same `tau` and tie policy, plus the
/// derived metrics. Seeded policies are forked so both runs draw independent streams.
pub fn h_score(g: &DependencyNetwork, tau: f64, tie_policy: TiePolicy) -> Result<HourglassReport> {
    let stats = compute_path_stats(g)?;
    stats.require_paths()?;
    h_score_with_stats(g, &stats, tau, tie_policy)
}

pub fn h_score_with_stats(
    g: &DependencyNetwork,
    stats: &PathStats,
    tau: f64,
    tie_policy: TiePolicy,
) -> Result<HourglassReport> {
    let core = greedy_core(g, stats, tau, tie_policy.fork(0), true)?;
    let flat = flatten(g)?;
    let flat_stats = compute_path_stats(&flat)?;
    let flat_core = greedy_core(&flat, &flat_stats, tau, tie_policy.fork(1), true)?;

    Ok(HourglassReport {
        tau,
        core_size: core.size(),
        flat_core_size: flat_core.size(),
        h_score: hourglass_score(core.size(), flat_core.size()),
        core_vertex_coverage: core_vertex_coverage(g, stats, &core)?,
        avg_core_location: avg_core_location(g, stats, &core)?,
        location_samples: location_samples(g, stats, &core)?,
        core,
        flat_core,
    })
}

fn core_vertices(g: &DependencyNetwork, core: &Core) -> Result<Vec<usize>> {
    core.elements
        .iter()
        .flat_map(|e| &e.members)
        .map(|id| {
            g.index_of(id)
                .ok_or_else(|| Error::InvalidArgument(format!("core vertex {id:?} not in network")))
        })
        .collect()
}

/// Fraction of on-path vertices that reach, or are reached from, some core vertex.
pub fn core_vertex_coverage(g: &DependencyNetwork, stats: &PathStats, core: &Core) -> Result<f64> {
    let n = g.vertex_count();
    let on_path: Vec<usize> = (0..n).filter(|&v| stats.on_path(v)).collect();
    if on_path.is_empty() {
        return Err(Error::NoStPaths);
    }
    let seeds = core_vertices(g, core)?;
    let mut reached = vec![false; n];
    for forward in [true, false] {
        let mut seen = vec![false; n];
        let mut stack = seeds.clone();
        for &s in &seeds {
            seen[s] = true;
        }
        while let Some(v) = stack.pop() {
            reached[v] = true;
            let next = if forward { g.successors(v) } else { g.predecessors(v) };
            for &w in next {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
    }
    let covered = on_path.iter().filter(|&&v| reached[v]).count();
    Ok(covered as f64 / on_path.len() as f64)
}

/// Location of a core element: the vertex location, or for a PES the median of its
/// members' defined locations.
pub fn element_location(g: &DependencyNetwork, stats: &PathStats, element: &CoreElement) -> Result<Option<f64>> {
    let mut locations = Vec::with_capacity(element.members.len());
    for id in &element.members {
        let v = g
            .index_of(id)
            .ok_or_else(|| Error::InvalidArgument(format!("core vertex {id:?} not in network")))?;
        if let Some(l) = stats.location(v) {
            locations.push(l);
        }
    }
    Ok(median(&mut locations))
}

fn median(values: &mut [f64]) -> Option<f64> {
    if values.is_empty() {
        return None;
    }
    values.sort_by(f64::total_cmp);
    let mid = values.len() / 2;
    Some(if values.len() % 2 == 1 {
        values[mid]
    } else {
        (values[mid - 1] + values[mid]) / 2.0
    })
}

pub fn location_samples(g: &DependencyNetwork, stats: &PathStats, core: &Core) -> Result<Vec<(f64, f64)>> {
    let mut samples = Vec::with_capacity(core.elements.len());
    for e in &core.elements {
        if let Some(l) = element_location(g, stats, e)? {
            samples.push((l, e.weight));
        }
    }
    Ok(samples)
}

/// Coverage-weighted mean location of the core elements.
pub fn avg_core_location(g: &DependencyNetwork, stats: &PathStats, core: &Core) -> Result<f64> {
    if core.elements.is_empty() {
        return Err(Error::InvalidArgument("empty core".into()));
    }
    let samples = location_samples(g, stats, core)?;
    let weight: f64 = samples.iter().map(|(_, w)| w).sum();
    if samples.is_empty() || weight <= 0.0 {
        return Err(Error::InvalidArgument("all core element locations are undefined".into()));
    }
    Ok(samples.iter().map(|(l, w)| l * w).sum::<f64>() / weight)
}

/// Whether every vertex of `g` is a source, target or isolated.
pub fn is_flat(g: &DependencyNetwork) -> bool {
    g.classes().iter().all(|&c| c != VertexClass::Intermediate)
}
