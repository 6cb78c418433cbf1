//! Raw digraphs, SCC condensation and the dependency-network DAG.
//!
//! A [`RawDigraph`] is the input graph as read from disk, possibly cyclic. Condensing it
//! replaces every strongly connected component of two or more vertices by a single
//! super-vertex, giving a [`DependencyNetwork`]. An edge `u -> v` always means "`v`
//! depends on `u`".

use std::collections::{BTreeMap, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Vertex role in a dependency network, decided purely by degree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum VertexClass {
    Source,
    Intermediate,
    Target,
    Isolated,
}

impl VertexClass {
    fn from_degrees(in_degree: usize, out_degree: usize) -> Self {
        match (in_degree, out_degree) {
            (0, 0) => VertexClass::Isolated,
            (0, _) => VertexClass::Source,
            (_, 0) => VertexClass::Target,
            _ => VertexClass::Intermediate,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            VertexClass::Source => "source",
            VertexClass::Intermediate => "intermediate",
            VertexClass::Target => "target",
            VertexClass::Isolated => "isolated",
        }
    }
}

impl fmt::Display for VertexClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The original directed graph over named vertices.
///
/// Vertices are kept sorted by name; edges are deduplicated and never self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawDigraph {
    names: Vec<String>,
    edges: Vec<(usize, usize)>,
    self_loops_dropped: usize,
}

impl RawDigraph {
    /// Builds a graph from declared vertices plus edges. Edge endpoints are declared
    /// implicitly.
    pub fn from_parts<I, S, E>(vertices: I, pairs: E) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
        E: IntoIterator<Item = (S, S)>,
    {
        let mut names: Vec<String> = vertices.into_iter().map(|v| v.as_ref().to_owned()).collect();
        let pairs: Vec<(String, String)> = pairs
            .into_iter()
            .map(|(u, v)| (u.as_ref().to_owned(), v.as_ref().to_owned()))
            .collect();
        for (u, v) in &pairs {
            names.push(u.clone());
            names.push(v.clone());
        }
        names.sort();
        names.dedup();
        if names.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let index: HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, n)| (n.as_str(), i)).collect();

        let mut self_loops_dropped = 0;
        let mut edges = Vec::with_capacity(pairs.len());
        for (u, v) in &pairs {
            if u == v {
                self_loops_dropped += 1;
                continue;
            }
            edges.push((index[u.as_str()], index[v.as_str()]));
        }
        edges.sort_unstable();
        edges.dedup();

        Ok(RawDigraph { names, edges, self_loops_dropped })
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    /// Number of self-loops removed during ingestion.
    pub fn self_loops_dropped(&self) -> usize {
        self.self_loops_dropped
    }

    pub fn edges(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges
            .iter()
            .map(|&(u, v)| (self.names[u].as_str(), self.names[v].as_str()))
    }

    pub fn contains_edge(&self, u: &str, v: &str) -> bool {
        let (Ok(u), Ok(v)) = (self.names.binary_search_by(|n| n.as_str().cmp(u)), self.names.binary_search_by(|n| n.as_str().cmp(v))) else {
            return false;
        };
        self.edges.binary_search(&(u, v)).is_ok()
    }

    fn successors(&self) -> Vec<Vec<usize>> {
        let mut succ = vec![Vec::new(); self.names.len()];
        for &(u, v) in &self.edges {
            succ[u].push(v);
        }
        succ
    }
}

/// Collapses duplicate edges and drops self-loops. The vertex set is the union of all
/// endpoints.
pub fn build_raw<S: AsRef<str>>(pairs: &[(S, S)]) -> Result<RawDigraph> {
    if pairs.is_empty() {
        return Err(Error::EmptyGraph);
    }
    RawDigraph::from_parts(
        std::iter::empty::<&str>(),
        pairs.iter().map(|(u, v)| (u.as_ref(), v.as_ref())),
    )
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassCounts {
    pub sources: usize,
    pub intermediates: usize,
    pub targets: usize,
    pub isolated: usize,
}

/// Acyclic dependency network. Every vertex stands for one original vertex or, for a
/// condensed SCC, for the set of its members.
#[derive(Clone, Debug)]
pub struct DependencyNetwork {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    members: Vec<Vec<String>>,
    succ: Vec<Vec<usize>>,
    pred: Vec<Vec<usize>>,
    classes: Vec<VertexClass>,
    topo: Vec<usize>,
    edge_count: usize,
}

impl DependencyNetwork {
    /// Builds a network over singleton vertices. `edges` index into `ids`.
    ///
    /// Fails with [`Error::Cyclic`] if the edge relation has a cycle.
    pub fn from_edges(ids: Vec<String>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let vertices = ids.into_iter().map(|id| {
            let members = vec![id.clone()];
            (id, members)
        });
        Self::assemble(vertices.collect(), edges)
    }

    /// Vertices arrive in arbitrary order; the result is sorted by id.
    fn assemble(vertices: Vec<(String, Vec<String>)>, edges: Vec<(usize, usize)>) -> Result<Self> {
        let n = vertices.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&a, &b| vertices[a].0.cmp(&vertices[b].0));
        let mut remap = vec![0; n];
        for (new, &old) in order.iter().enumerate() {
            remap[old] = new;
        }

        let mut slots: Vec<Option<(String, Vec<String>)>> = vertices.into_iter().map(Some).collect();
        let mut ids = Vec::with_capacity(n);
        let mut members = Vec::with_capacity(n);
        for &old in &order {
            let (id, mut m) = slots[old].take().expect("each vertex moved once");
            m.sort();
            ids.push(id);
            members.push(m);
        }
        let mut index = HashMap::with_capacity(n);
        for (i, id) in ids.iter().enumerate() {
            if index.insert(id.clone(), i).is_some() {
                return Err(Error::InvalidArgument(format!("duplicate vertex id {id:?}")));
            }
        }

        let mut edges: Vec<(usize, usize)> = edges
            .into_iter()
            .map(|(u, v)| (remap[u], remap[v]))
            .collect();
        edges.sort_unstable();
        edges.dedup();
        if edges.iter().any(|&(u, v)| u == v) {
            return Err(Error::Cyclic);
        }

        let mut succ = vec![Vec::new(); n];
        let mut pred = vec![Vec::new(); n];
        for &(u, v) in &edges {
            succ[u].push(v);
            pred[v].push(u);
        }
        let topo = kahn_order(&succ, &pred).ok_or(Error::Cyclic)?;
        let classes = (0..n)
            .map(|v| VertexClass::from_degrees(pred[v].len(), succ[v].len()))
            .collect();

        Ok(DependencyNetwork {
            ids,
            index,
            members,
            succ,
            pred,
            classes,
            topo,
            edge_count: edges.len(),
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn id(&self, v: usize) -> &str {
        &self.ids[v]
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.index.get(id).copied()
    }

    /// Original vertex ids represented by `v`, sorted.
    pub fn members(&self, v: usize) -> &[String] {
        &self.members[v]
    }

    pub fn is_super_vertex(&self, v: usize) -> bool {
        self.members[v].len() > 1
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    pub fn predecessors(&self, v: usize) -> &[usize] {
        &self.pred[v]
    }

    pub fn class(&self, v: usize) -> VertexClass {
        self.classes[v]
    }

    pub fn classes(&self) -> &[VertexClass] {
        &self.classes
    }

    /// A topological order: every edge points forward in it.
    pub fn topo_order(&self) -> &[usize] {
        &self.topo
    }

    /// Edges as index pairs, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.succ
            .iter()
            .enumerate()
            .flat_map(|(u, out)| out.iter().map(move |&v| (u, v)))
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = (&str, &str)> + '_ {
        self.edges().map(|(u, v)| (self.id(u), self.id(v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.succ[u].binary_search(&v).is_ok()
    }

    pub fn sources(&self) -> impl Iterator<Item = usize> + '_ {
        self.of_class(VertexClass::Source)
    }

    pub fn targets(&self) -> impl Iterator<Item = usize> + '_ {
        self.of_class(VertexClass::Target)
    }

    pub fn of_class(&self, class: VertexClass) -> impl Iterator<Item = usize> + '_ {
        (0..self.ids.len()).filter(move |&v| self.classes[v] == class)
    }

    pub fn class_counts(&self) -> ClassCounts {
        let mut counts = ClassCounts::default();
        for c in &self.classes {
            match c {
                VertexClass::Source => counts.sources += 1,
                VertexClass::Intermediate => counts.intermediates += 1,
                VertexClass::Target => counts.targets += 1,
                VertexClass::Isolated => counts.isolated += 1,
            }
        }
        counts
    }

    /// Number of original vertices across all members.
    pub fn original_vertex_count(&self) -> usize {
        self.members.iter().map(Vec::len).sum()
    }

    /// Subgraph induced by the vertices with `keep[v]` set. Classes are recomputed.
    pub fn induced(&self, keep: &[bool]) -> DependencyNetwork {
        let mut remap = vec![usize::MAX; self.ids.len()];
        let mut vertices = Vec::new();
        for v in 0..self.ids.len() {
            if keep[v] {
                remap[v] = vertices.len();
                vertices.push((self.ids[v].clone(), self.members[v].clone()));
            }
        }
        let edges = self
            .edges()
            .filter(|&(u, v)| keep[u] && keep[v])
            .map(|(u, v)| (remap[u], remap[v]))
            .collect();
        Self::assemble(vertices, edges).expect("induced subgraph of a DAG is a DAG")
    }

    /// Same vertices, different edge set. Used by flattening.
    pub(crate) fn with_vertices_and_edges(&self, keep: &[bool], edges: Vec<(usize, usize)>) -> Result<DependencyNetwork> {
        let mut remap = vec![usize::MAX; self.ids.len()];
        let mut vertices = Vec::new();
        for v in 0..self.ids.len() {
            if keep[v] {
                remap[v] = vertices.len();
                vertices.push((self.ids[v].clone(), self.members[v].clone()));
            }
        }
        let edges = edges.into_iter().map(|(u, v)| (remap[u], remap[v])).collect();
        Self::assemble(vertices, edges)
    }

    /// The network as a raw digraph over its vertex ids, isolated vertices included.
    pub fn to_raw(&self) -> RawDigraph {
        RawDigraph {
            names: self.ids.clone(),
            edges: self.edges().collect(),
            self_loops_dropped: 0,
        }
    }
}

/// Super-vertex id: `scc:` + shortest member id (ties lexicographic) + `:` + member count.
pub fn super_vertex_id(members: &[String]) -> String {
    let rep = members
        .iter()
        .min_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)))
        .expect("super-vertex has members");
    format!("scc:{rep}:{}", members.len())
}

fn kahn_order(succ: &[Vec<usize>], pred: &[Vec<usize>]) -> Option<Vec<usize>> {
    let n = succ.len();
    let mut remaining: Vec<usize> = pred.iter().map(Vec::len).collect();
    let mut order: Vec<usize> = (0..n).filter(|&v| remaining[v] == 0).collect();
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        for &v in &succ[u] {
            remaining[v] -= 1;
            if remaining[v] == 0 {
                order.push(v);
            }
        }
    }
    (order.len() == n).then_some(order)
}

/// Tarjan's algorithm, iterative so deep call-graphs do not exhaust the stack.
/// Components come out in reverse topological order.
pub(crate) fn tarjan_scc(succ: &[Vec<usize>]) -> Vec<Vec<usize>> {
    const UNVISITED: usize = usize::MAX;
    let n = succ.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut stack = Vec::new();
    let mut components = Vec::new();
    let mut next = 0;
    let mut frames: Vec<(usize, usize)> = Vec::new();

    for root in 0..n {
        if index[root] != UNVISITED {
            continue;
        }
        index[root] = next;
        low[root] = next;
        next += 1;
        stack.push(root);
        on_stack[root] = true;
        frames.push((root, 0));

        while let Some(frame) = frames.last_mut() {
            let v = frame.0;
            if frame.1 < succ[v].len() {
                let w = succ[v][frame.1];
                frame.1 += 1;
                if index[w] == UNVISITED {
                    index[w] = next;
                    low[w] = next;
                    next += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    frames.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                frames.pop();
                if let Some(&(parent, _)) = frames.last() {
                    low[parent] = low[parent].min(low[v]);
                }
                if low[v] == index[v] {
                    let mut component = Vec::new();
                    loop {
                        let w = stack.pop().expect("v is on the stack");
                        on_stack[w] = false;
                        component.push(w);
                        if w == v {
                            break;
                        }
                    }
                    components.push(component);
                }
            }
        }
    }
    components
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct CondensationReport {
    pub super_vertex_count: usize,
    pub sizes: Vec<usize>,
    pub size_mean: f64,
    /// Population standard deviation of `sizes`.
    pub size_std: f64,
}

impl CondensationReport {
    fn from_sizes(mut sizes: Vec<usize>) -> Self {
        sizes.sort_unstable();
        let (size_mean, size_std) = if sizes.is_empty() {
            (0.0, 0.0)
        } else {
            let n = sizes.len() as f64;
            let mean = sizes.iter().sum::<usize>() as f64 / n;
            let var = sizes.iter().map(|&s| (s as f64 - mean).powi(2)).sum::<f64>() / n;
            (mean, var.sqrt())
        };
        CondensationReport { super_vertex_count: sizes.len(), sizes, size_mean, size_std }
    }
}

/// Replaces each SCC with two or more vertices by a super-vertex. Edges internal to an
/// SCC are discarded; parallel edges created by re-attachment are collapsed.
pub fn condense(g: &RawDigraph) -> Result<(DependencyNetwork, CondensationReport)> {
    if g.vertex_count() == 0 {
        return Err(Error::EmptyGraph);
    }
    let components = tarjan_scc(&g.successors());
    let mut component_of = vec![0; g.vertex_count()];
    let mut vertices = Vec::with_capacity(components.len());
    let mut sizes = Vec::new();
    for (c, component) in components.iter().enumerate() {
        let mut members: Vec<String> = component.iter().map(|&v| g.names[v].clone()).collect();
        members.sort();
        for &v in component {
            component_of[v] = c;
        }
        let id = if members.len() > 1 {
            sizes.push(members.len());
            super_vertex_id(&members)
        } else {
            members[0].clone()
        };
        vertices.push((id, members));
    }
    let edges = g
        .edges
        .iter()
        .map(|&(u, v)| (component_of[u], component_of[v]))
        .filter(|(cu, cv)| cu != cv)
        .collect();
    let network = DependencyNetwork::assemble(vertices, edges)?;
    Ok((network, CondensationReport::from_sizes(sizes)))
}

#[derive(Clone, Debug, PartialEq)]
pub struct Classification {
    pub classes: BTreeMap<String, VertexClass>,
    pub counts: ClassCounts,
}

pub fn classify(g: &DependencyNetwork) -> Classification {
    let classes = g
        .ids
        .iter()
        .zip(&g.classes)
        .map(|(id, &c)| (id.clone(), c))
        .collect();
    Classification { classes, counts: g.class_counts() }
}

/// Induced subgraph on the largest weakly connected component. Equal sizes are broken
/// in favour of the component holding the lexicographically smallest member id.
pub fn largest_wcc(g: &DependencyNetwork) -> Result<DependencyNetwork> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let mut component = vec![usize::MAX; n];
    let mut best: Option<(usize, &str, usize)> = None;
    let mut queue = Vec::new();
    let mut count = 0;
    for start in 0..n {
        if component[start] != usize::MAX {
            continue;
        }
        let c = count;
        count += 1;
        component[start] = c;
        queue.clear();
        queue.push(start);
        let mut size = 0;
        let mut smallest = g.members[start][0].as_str();
        while let Some(v) = queue.pop() {
            size += 1;
            smallest = smallest.min(g.members[v][0].as_str());
            for &w in g.succ[v].iter().chain(&g.pred[v]) {
                if component[w] == usize::MAX {
                    component[w] = c;
                    queue.push(w);
                }
            }
        }
        let better = match best {
            None => true,
            Some((best_size, best_min, _)) => size > best_size || (size == best_size && smallest < best_min),
        };
        if better {
            best = Some((size, smallest, c));
        }
    }
    let (_, _, chosen) = best.expect("at least one component");
    let keep: Vec<bool> = component.iter().map(|&c| c == chosen).collect();
    Ok(g.induced(&keep))
}

/// Removes the named vertices and their incident edges. Returns the new network and the
/// number of names that matched no vertex.
pub fn exclude_vertices<S: AsRef<str>>(g: &DependencyNetwork, names: &[S]) -> (DependencyNetwork, usize) {
    let mut keep = vec![true; g.vertex_count()];
    let mut unknown = 0;
    let mut seen = HashSet::new();
    for name in names {
        let name = name.as_ref();
        if !seen.insert(name) {
            continue;
        }
        match g.index_of(name) {
            Some(v) => keep[v] = false,
            None => unknown += 1,
        }
    }
    (g.induced(&keep), unknown)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn raw(pairs: &[(&str, &str)]) -> RawDigraph {
        build_raw(pairs).unwrap()
    }

    fn net(pairs: &[(&str, &str)]) -> DependencyNetwork {
        condense(&raw(pairs)).unwrap().0
    }

    fn diamond() -> DependencyNetwork {
        net(&[("s1", "a"), ("s2", "a"), ("a", "t1"), ("a", "t2")])
    }

    fn edge_set(g: &DependencyNetwork) -> Vec<(String, String)> {
        g.edge_ids().map(|(u, v)| (u.to_owned(), v.to_owned())).collect()
    }

    #[test]
    fn duplicate_edges_collapse() {
        let g = raw(&[("a", "b"), ("a", "b")]);
        assert_eq!(g.edge_count(), 1);
        assert!(g.contains_edge("a", "b"));
    }

    #[test]
    fn self_loops_are_dropped_and_counted() {
        let g = raw(&[("a", "a"), ("a", "b")]);
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.self_loops_dropped(), 1);
        assert!(g.contains_edge("a", "b"));
    }

    #[test]
    fn build_diamond_counts() {
        let g = raw(&[("s1", "a"), ("s2", "a"), ("a", "t1"), ("a", "t2")]);
        assert_eq!(g.vertex_count(), 5);
        assert_eq!(g.edge_count(), 4);
    }

    #[test]
    fn empty_input_is_rejected() {
        let pairs: [(&str, &str); 0] = [];
        assert!(matches!(build_raw(&pairs), Err(Error::EmptyGraph)));
    }

    #[test]
    fn two_cycle_collapses() {
        let (g, report) = condense(&raw(&[("x", "y"), ("y", "x"), ("x", "z")])).unwrap();
        assert_eq!(report.super_vertex_count, 1);
        assert_eq!(report.sizes, vec![2]);
        assert_eq!(g.vertex_count(), 2);
        let sv = g.index_of("scc:x:2").unwrap();
        assert_eq!(g.members(sv), ["x", "y"]);
        assert_eq!(edge_set(&g), vec![("scc:x:2".to_owned(), "z".to_owned())]);
    }

    #[test]
    fn acyclic_input_is_unchanged() {
        let pairs = [("a", "b"), ("b", "c"), ("a", "c")];
        let (g, report) = condense(&raw(&pairs)).unwrap();
        assert_eq!(report.super_vertex_count, 0);
        assert_eq!(g.vertex_count(), 3);
        assert_eq!(edge_set(&g).len(), 3);
        assert!(!(0..3).any(|v| g.is_super_vertex(v)));
    }

    #[test]
    fn five_cycle_with_chord_is_one_component() {
        let (g, report) = condense(&raw(&[
            ("a", "b"),
            ("b", "c"),
            ("c", "a"),
            ("c", "d"),
            ("d", "e"),
            ("e", "c"),
        ]))
        .unwrap();
        assert_eq!(report.super_vertex_count, 1);
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.members(0), ["a", "b", "c", "d", "e"]);
        assert_eq!(g.class(0), VertexClass::Isolated);
    }

    #[test]
    fn super_vertex_name_uses_shortest_member() {
        let members = vec!["alpha".to_owned(), "zz".to_owned(), "yy".to_owned()];
        assert_eq!(super_vertex_id(&members), "scc:yy:3");
    }

    #[test]
    fn condensation_report_stats() {
        let (_, report) = condense(&raw(&[("a", "b"), ("b", "a"), ("c", "d"), ("d", "e"), ("e", "c"), ("b", "c")])).unwrap();
        assert_eq!(report.sizes, vec![2, 3]);
        assert_eq!(report.size_mean, 2.5);
        assert_eq!(report.size_std, 0.5);
    }

    #[test]
    fn classify_by_degree() {
        let c = classify(&diamond());
        assert_eq!(c.classes["s1"], VertexClass::Source);
        assert_eq!(c.classes["s2"], VertexClass::Source);
        assert_eq!(c.classes["a"], VertexClass::Intermediate);
        assert_eq!(c.classes["t1"], VertexClass::Target);
        assert_eq!(c.counts, ClassCounts { sources: 2, intermediates: 1, targets: 2, isolated: 0 });

        let single = DependencyNetwork::from_edges(vec!["x".into()], vec![]).unwrap();
        assert_eq!(classify(&single).classes["x"], VertexClass::Isolated);

        let chain = classify(&net(&[("s", "m"), ("m", "t")]));
        assert_eq!(chain.classes["s"], VertexClass::Source);
        assert_eq!(chain.classes["m"], VertexClass::Intermediate);
        assert_eq!(chain.classes["t"], VertexClass::Target);
    }

    #[test]
    fn largest_wcc_picks_bigger_component() {
        let g = net(&[("a", "b"), ("b", "c"), ("x", "y")]);
        let w = largest_wcc(&g).unwrap();
        assert_eq!(w.ids(), ["a", "b", "c"]);

        let d = diamond();
        assert_eq!(largest_wcc(&d).unwrap().ids(), d.ids());
    }

    #[test]
    fn largest_wcc_tie_prefers_smallest_id() {
        let g = net(&[("c", "d"), ("a", "b")]);
        assert_eq!(largest_wcc(&g).unwrap().ids(), ["a", "b"]);
    }

    #[test]
    fn exclude_cut_vertex() {
        let (g, unknown) = exclude_vertices(&diamond(), &["a"]);
        assert_eq!(unknown, 0);
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edge_count(), 0);
        assert_eq!(g.class_counts().isolated, 4);
    }

    #[test]
    fn exclude_nothing_or_unknown() {
        let d = diamond();
        let none: [&str; 0] = [];
        let (g, unknown) = exclude_vertices(&d, &none);
        assert_eq!((g.ids(), unknown), (d.ids(), 0));
        let (g, unknown) = exclude_vertices(&d, &["nope"]);
        assert_eq!(edge_set(&g), edge_set(&d));
        assert_eq!(unknown, 1);
    }

    #[test]
    fn from_edges_rejects_cycles() {
        let ids = vec!["a".to_owned(), "b".to_owned()];
        assert!(matches!(
            DependencyNetwork::from_edges(ids, vec![(0, 1), (1, 0)]),
            Err(Error::Cyclic)
        ));
    }

    #[test]
    fn topo_order_respects_edges() {
        let g = diamond();
        let mut pos = vec![0; g.vertex_count()];
        for (i, &v) in g.topo_order().iter().enumerate() {
            pos[v] = i;
        }
        assert!(g.edges().all(|(u, v)| pos[u] < pos[v]));
    }
}
