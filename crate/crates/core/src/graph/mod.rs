//! Directed social graph with per-edge diffusion probability and delay
//! distribution, and per-node threshold and selection cost.
//!
//! Storage is compressed sparse rows in both directions. Every in-edge keeps
//! the index of its out-edge so attributes live in one place.

mod annotate;
mod delay;
mod io;
mod stats;

use std::collections::HashMap;
use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

pub use annotate::{
    assign_costs, assign_delay_distributions, assign_probabilities, assign_thresholds,
    ProbabilitySetting, ThresholdMode, TRIVALENCY_VALUES,
};
pub use delay::DelayDistribution;
pub use io::{
    label_map_path, load_edge_list, read_annotated, read_label_map, write_annotated,
    write_annotated_to, write_edge_list, write_label_map,
};
pub use stats::{graph_stats, GraphStats};

/// Dense node index in `0..n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct NodeId(pub u32);

impl NodeId {
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl From<usize> for NodeId {
    fn from(i: usize) -> Self {
        NodeId(i as u32)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EdgeAttr {
    /// Probability in (0, 1] that an active source ever influences the target.
    pub prob: f64,
    pub delay: DelayDistribution,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NodeAttr {
    pub threshold: f64,
    pub cost: u64,
}

impl Default for NodeAttr {
    fn default() -> Self {
        NodeAttr {
            threshold: 0.0,
            cost: 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Graph {
    directed: bool,
    labels: Vec<String>,
    nodes: Vec<NodeAttr>,
    out_offsets: Vec<usize>,
    out_targets: Vec<NodeId>,
    out_attrs: Vec<EdgeAttr>,
    in_offsets: Vec<usize>,
    in_sources: Vec<NodeId>,
    in_edge_index: Vec<usize>,
    probs_loaded: bool,
    self_loops_dropped: usize,
    duplicates_dropped: usize,
}

impl Graph {
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    pub fn edge_count(&self) -> usize {
        self.out_targets.len()
    }

    /// False when the graph was built from an undirected edge list.
    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn nodes(&self) -> impl ExactSizeIterator<Item = NodeId> + Clone {
        (0..self.nodes.len() as u32).map(NodeId)
    }

    pub fn check_node(&self, id: NodeId) -> Result<()> {
        if id.index() < self.nodes.len() {
            Ok(())
        } else {
            Err(Error::InvalidNode {
                id: id.index(),
                n: self.nodes.len(),
            })
        }
    }

    pub fn node(&self, id: NodeId) -> &NodeAttr {
        &self.nodes[id.index()]
    }

    pub fn cost(&self, id: NodeId) -> u64 {
        self.nodes[id.index()].cost
    }

    pub fn threshold(&self, id: NodeId) -> f64 {
        self.nodes[id.index()].threshold
    }

    pub fn label(&self, id: NodeId) -> &str {
        &self.labels[id.index()]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find_label(&self, label: &str) -> Option<NodeId> {
        self.labels.iter().position(|l| l == label).map(NodeId::from)
    }

    /// Label-to-id index for repeated lookups.
    pub fn label_index(&self) -> HashMap<&str, NodeId> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), NodeId::from(i)))
            .collect()
    }

    pub fn out_degree(&self, u: NodeId) -> usize {
        self.out_offsets[u.index() + 1] - self.out_offsets[u.index()]
    }

    pub fn in_degree(&self, u: NodeId) -> usize {
        self.in_offsets[u.index() + 1] - self.in_offsets[u.index()]
    }

    pub fn out_edges(&self, u: NodeId) -> impl ExactSizeIterator<Item = (NodeId, &EdgeAttr)> {
        let range = self.out_offsets[u.index()]..self.out_offsets[u.index() + 1];
        self.out_targets[range.clone()]
            .iter()
            .copied()
            .zip(self.out_attrs[range].iter())
    }

    pub fn out_neighbors(&self, u: NodeId) -> &[NodeId] {
        &self.out_targets[self.out_offsets[u.index()]..self.out_offsets[u.index() + 1]]
    }

    /// In-edges of `v` as `(source, attributes of source -> v)`.
    pub fn in_edges(&self, v: NodeId) -> impl ExactSizeIterator<Item = (NodeId, &EdgeAttr)> {
        let range = self.in_offsets[v.index()]..self.in_offsets[v.index() + 1];
        self.in_sources[range.clone()]
            .iter()
            .copied()
            .zip(self.in_edge_index[range].iter().map(|&e| &self.out_attrs[e]))
    }

    pub fn in_neighbors(&self, v: NodeId) -> &[NodeId] {
        &self.in_sources[self.in_offsets[v.index()]..self.in_offsets[v.index() + 1]]
    }

    /// Attributes of the edge `u -> v`, if present.
    pub fn edge(&self, u: NodeId, v: NodeId) -> Option<&EdgeAttr> {
        let range = self.out_offsets[u.index()]..self.out_offsets[u.index() + 1];
        let targets = &self.out_targets[range.clone()];
        targets
            .binary_search(&v)
            .ok()
            .map(|i| &self.out_attrs[range.start + i])
    }

    /// All edges in CSR order as `(source, target, attributes)`.
    pub fn edges(&self) -> impl Iterator<Item = (NodeId, NodeId, &EdgeAttr)> {
        self.nodes()
            .flat_map(move |u| self.out_edges(u).map(move |(v, a)| (u, v, a)))
    }

    /// Whether every edge carried a probability in the source file.
    pub fn probabilities_loaded(&self) -> bool {
        self.probs_loaded
    }

    pub fn self_loops_dropped(&self) -> usize {
        self.self_loops_dropped
    }

    pub fn duplicates_dropped(&self) -> usize {
        self.duplicates_dropped
    }

    pub(crate) fn edge_attrs_mut(&mut self) -> &mut [EdgeAttr] {
        &mut self.out_attrs
    }

    /// Edge range of `u` in CSR order, for attribute updates.
    pub(crate) fn out_range(&self, u: NodeId) -> std::ops::Range<usize> {
        self.out_offsets[u.index()]..self.out_offsets[u.index() + 1]
    }

    pub(crate) fn node_attrs_mut(&mut self) -> &mut [NodeAttr] {
        &mut self.nodes
    }

    pub(crate) fn set_probabilities_loaded(&mut self, loaded: bool) {
        self.probs_loaded = loaded;
    }

    /// Recounts both adjacency directions and checks they describe one edge set.
    pub fn check_consistency(&self) -> bool {
        let n = self.node_count();
        if self.out_offsets.len() != n + 1 || self.in_offsets.len() != n + 1 {
            return false;
        }
        if self.in_sources.len() != self.out_targets.len() {
            return false;
        }
        let mut forward: Vec<(NodeId, NodeId)> = self.edges().map(|(u, v, _)| (u, v)).collect();
        let mut backward: Vec<(NodeId, NodeId)> = self
            .nodes()
            .flat_map(|v| self.in_neighbors(v).iter().map(move |&u| (u, v)))
            .collect();
        forward.sort_unstable();
        backward.sort_unstable();
        let no_loops = forward.iter().all(|(u, v)| u != v);
        let no_dups = forward.windows(2).all(|w| w[0] != w[1]);
        let attrs_match = self.nodes().all(|v| {
            self.in_edges(v)
                .all(|(u, a)| self.edge(u, v).is_some_and(|b| std::ptr::eq(a, b)))
        });
        forward == backward && no_loops && no_dups && attrs_match
    }
}

/// Accumulates labelled edges and produces a dense-id [`Graph`].
///
/// Node ids follow first appearance. Self-loops are dropped and counted;
/// a repeated directed edge keeps its first probability.
#[derive(Debug, Default)]
pub struct GraphBuilder {
    directed: bool,
    ids: HashMap<String, NodeId>,
    labels: Vec<String>,
    edges: Vec<(NodeId, NodeId, Option<f64>)>,
    seen: HashSet<(NodeId, NodeId)>,
    self_loops: usize,
    duplicates: usize,
}

impl GraphBuilder {
    pub fn new(directed: bool) -> Self {
        GraphBuilder {
            directed,
            ..Default::default()
        }
    }

    pub fn add_node(&mut self, label: &str) -> NodeId {
        if let Some(&id) = self.ids.get(label) {
            return id;
        }
        let id = NodeId::from(self.labels.len());
        self.ids.insert(label.to_owned(), id);
        self.labels.push(label.to_owned());
        id
    }

    pub fn add_edge(&mut self, src: &str, dst: &str, prob: Option<f64>) {
        let u = self.add_node(src);
        let v = self.add_node(dst);
        if u == v {
            self.self_loops += 1;
            return;
        }
        self.push_arc(u, v, prob);
        if !self.directed {
            self.push_arc(v, u, prob);
        }
    }

    fn push_arc(&mut self, u: NodeId, v: NodeId, prob: Option<f64>) {
        if self.seen.insert((u, v)) {
            self.edges.push((u, v, prob));
        } else {
            self.duplicates += 1;
        }
    }

    pub fn build(self) -> Graph {
        let n = self.labels.len();
        let probs_loaded = self.edges.iter().all(|e| e.2.is_some());
        let mut edges = self.edges;
        edges.sort_by_key(|&(u, v, _)| (u, v));

        let mut out_offsets = vec![0usize; n + 1];
        for &(u, _, _) in &edges {
            out_offsets[u.index() + 1] += 1;
        }
        for i in 0..n {
            out_offsets[i + 1] += out_offsets[i];
        }
        let out_targets: Vec<NodeId> = edges.iter().map(|e| e.1).collect();
        let out_attrs: Vec<EdgeAttr> = edges
            .iter()
            .map(|e| EdgeAttr {
                // placeholder until a probability setting is applied
                prob: e.2.unwrap_or(1.0),
                delay: DelayDistribution::immediate(),
            })
            .collect();

        let mut in_offsets = vec![0usize; n + 1];
        for &(_, v, _) in &edges {
            in_offsets[v.index() + 1] += 1;
        }
        for i in 0..n {
            in_offsets[i + 1] += in_offsets[i];
        }
        let mut fill = in_offsets.clone();
        let mut in_sources = vec![NodeId(0); edges.len()];
        let mut in_edge_index = vec![0usize; edges.len()];
        // edges are sorted by source, so each in-list ends up sorted by source too
        for (e, &(u, v, _)) in edges.iter().enumerate() {
            let slot = fill[v.index()];
            in_sources[slot] = u;
            in_edge_index[slot] = e;
            fill[v.index()] += 1;
        }

        Graph {
            directed: self.directed,
            labels: self.labels,
            nodes: vec![NodeAttr::default(); n],
            out_offsets,
            out_targets,
            out_attrs,
            in_offsets,
            in_sources,
            in_edge_index,
            probs_loaded,
            self_loops_dropped: self.self_loops,
            duplicates_dropped: self.duplicates,
        }
    }
}

impl Graph {
    /// Builds a graph on dense ids `0..n` labelled by their index.
    ///
    /// Convenient for tests and synthetic instances; `edges` are directed.
    pub fn from_edges(n: usize, edges: &[(usize, usize, f64)]) -> Result<Graph> {
        let mut b = GraphBuilder::new(true);
        for i in 0..n {
            b.add_node(&i.to_string());
        }
        for &(u, v, p) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidNode { id: u.max(v), n });
            }
            if !(p > 0.0 && p <= 1.0) {
                return Err(Error::InvalidParameter(format!(
                    "edge {u} -> {v}: probability {p} outside (0, 1]"
                )));
            }
            b.add_edge(&u.to_string(), &v.to_string(), Some(p));
        }
        Ok(b.build())
    }

    /// Replaces the delay distribution of one edge.
    pub fn set_edge_delay(&mut self, u: NodeId, v: NodeId, delay: DelayDistribution) -> Result<()> {
        let idx = self.edge_slot(u, v)?;
        self.out_attrs[idx].delay = delay;
        Ok(())
    }

    pub fn set_edge_prob(&mut self, u: NodeId, v: NodeId, prob: f64) -> Result<()> {
        if !(prob > 0.0 && prob <= 1.0) {
            return Err(Error::InvalidParameter(format!(
                "probability {prob} outside (0, 1]"
            )));
        }
        let idx = self.edge_slot(u, v)?;
        self.out_attrs[idx].prob = prob;
        Ok(())
    }

    pub fn set_node_attr(&mut self, u: NodeId, attr: NodeAttr) -> Result<()> {
        self.check_node(u)?;
        if !(0.0..=1.0).contains(&attr.threshold) || attr.cost == 0 {
            return Err(Error::InvalidParameter(format!(
                "node {u}: threshold must lie in [0, 1] and cost be positive"
            )));
        }
        self.nodes[u.index()] = attr;
        Ok(())
    }

    /// Sets every node's cost.
    pub fn with_costs(mut self, costs: &[u64]) -> Result<Graph> {
        if costs.len() != self.node_count() || costs.contains(&0) {
            return Err(Error::InvalidParameter(
                "need one positive cost per node".into(),
            ));
        }
        for (attr, &c) in self.nodes.iter_mut().zip(costs) {
            attr.cost = c;
        }
        Ok(self)
    }

    fn edge_slot(&self, u: NodeId, v: NodeId) -> Result<usize> {
        self.check_node(u)?;
        self.check_node(v)?;
        let range = self.out_range(u);
        self.out_targets[range.clone()]
            .binary_search(&v)
            .map(|i| range.start + i)
            .map_err(|_| Error::InvalidParameter(format!("no edge {u} -> {v}")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builder_dedups_and_drops_loops() {
        let mut b = GraphBuilder::new(true);
        b.add_edge("a", "b", Some(0.3));
        b.add_edge("a", "b", Some(0.9));
        b.add_edge("c", "c", None);
        b.add_edge("b", "c", Some(0.5));
        let g = b.build();
        assert_eq!(g.node_count(), 3);
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.self_loops_dropped(), 1);
        assert_eq!(g.duplicates_dropped(), 1);
        let a = g.find_label("a").unwrap();
        let bb = g.find_label("b").unwrap();
        assert_eq!(g.edge(a, bb).unwrap().prob, 0.3);
        assert!(g.check_consistency());
    }

    #[test]
    fn undirected_materializes_both_directions() {
        let mut b = GraphBuilder::new(false);
        b.add_edge("0", "1", None);
        b.add_edge("1", "0", None);
        let g = b.build();
        assert_eq!(g.edge_count(), 2);
        assert!(!g.is_directed());
        assert!(!g.probabilities_loaded());
        assert!(g.check_consistency());
    }

    #[test]
    fn in_edges_see_out_attributes() {
        let g = Graph::from_edges(3, &[(0, 2, 0.25), (1, 2, 0.5), (0, 1, 1.0)]).unwrap();
        let ins: Vec<(NodeId, f64)> = g.in_edges(NodeId(2)).map(|(u, a)| (u, a.prob)).collect();
        assert_eq!(ins, vec![(NodeId(0), 0.25), (NodeId(1), 0.5)]);
        assert_eq!(g.out_degree(NodeId(0)), 2);
        assert_eq!(g.in_degree(NodeId(0)), 0);
        assert!(g.edge(NodeId(2), NodeId(0)).is_none());
    }

    #[test]
    fn from_edges_validates() {
        assert!(Graph::from_edges(2, &[(0, 2, 0.5)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1, 0.0)]).is_err());
        assert!(Graph::from_edges(2, &[(0, 1, 1.5)]).is_err());
    }
}
