use super::Graph;
use crate::error::{Error, Result};

/// Summary statistics in the convention of the usual dataset tables.
///
/// `arcs` counts directed adjacency entries. `m` reports arcs for a directed
/// graph and unordered pairs for an undirected one, and `avg_degree` is
/// `arcs / n` (out-degree per node, which equals `2m / n` when undirected).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub arcs: usize,
    pub avg_degree: f64,
    pub max_out_degree: usize,
}

pub fn graph_stats(g: &Graph) -> Result<GraphStats> {
    let n = g.node_count();
    if n == 0 {
        return Err(Error::EmptyGraph);
    }
    let arcs = g.edge_count();
    let m = if g.is_directed() { arcs } else { arcs / 2 };
    let max_out_degree = g.nodes().map(|u| g.out_degree(u)).max().unwrap_or(0);
    Ok(GraphStats {
        n,
        m,
        arcs,
        avg_degree: arcs as f64 / n as f64,
        max_out_degree,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::GraphBuilder;

    #[test]
    fn single_edge() {
        let g = Graph::from_edges(2, &[(0, 1, 0.5)]).unwrap();
        let s = graph_stats(&g).unwrap();
        assert_eq!((s.n, s.m, s.max_out_degree), (2, 1, 1));
        assert_eq!(s.avg_degree, 0.5);
    }

    #[test]
    fn undirected_reports_pairs() {
        let mut b = GraphBuilder::new(false);
        b.add_edge("a", "b", None);
        b.add_edge("b", "c", None);
        let s = graph_stats(&b.build()).unwrap();
        assert_eq!((s.n, s.m, s.arcs, s.max_out_degree), (3, 2, 4, 2));
        assert!((s.avg_degree - 4.0 / 3.0).abs() < 1e-12);
    }

    #[test]
    fn empty_graph_is_an_error() {
        let g = GraphBuilder::new(true).build();
        assert!(matches!(graph_stats(&g), Err(Error::EmptyGraph)));
    }
}
