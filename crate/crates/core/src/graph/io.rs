//! Text formats: SNAP-style edge lists, the annotated-graph file and the
//! label map.
//!
//! Annotated graph layout (dense ids, `#` comments allowed anywhere):
//!
//! ```text
//! directed true
//! nodes 3
//! edges 2
//! [nodes]
//! 0 0 57
//! [edges]
//! 0 1 0.1 0.6 0.4
//! ```
//!
//! Node lines are `id threshold cost`; edge lines are `src dst prob phi_1 .. phi_l`.
//! Floats are written in shortest round-trip form, so a write/read cycle is
//! bit-exact.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use super::{DelayDistribution, EdgeAttr, Graph, GraphBuilder, NodeAttr, NodeId};
use crate::error::{Error, Result};

fn open(path: &Path) -> Result<BufReader<File>> {
    File::open(path)
        .map(BufReader::new)
        .map_err(|e| Error::io(path, e))
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::io(path, e))
}

/// Loads a whitespace-separated edge list: `src dst [prob]` per line.
pub fn load_edge_list(path: impl AsRef<Path>, directed: bool) -> Result<Graph> {
    let path = path.as_ref();
    let reader = open(path)?;
    let mut builder = GraphBuilder::new(directed);
    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let prob = match tokens.len() {
            2 => None,
            3 => {
                let p: f64 = tokens[2].parse().map_err(|_| {
                    Error::parse(path, lineno, format!("bad probability {:?}", tokens[2]))
                })?;
                if !(p > 0.0 && p <= 1.0) {
                    return Err(Error::ProbabilityOutOfRange {
                        path: path.to_owned(),
                        line: lineno,
                        value: p,
                    });
                }
                Some(p)
            }
            k => {
                return Err(Error::parse(
                    path,
                    lineno,
                    format!("expected `src dst [prob]`, found {k} tokens"),
                ))
            }
        };
        builder.add_edge(tokens[0], tokens[1], prob);
    }
    let g = builder.build();
    if g.self_loops_dropped() > 0 {
        log::warn!(
            "{}: dropped {} self-loops",
            path.display(),
            g.self_loops_dropped()
        );
    }
    if g.duplicates_dropped() > 0 {
        log::info!(
            "{}: collapsed {} duplicate edges",
            path.display(),
            g.duplicates_dropped()
        );
    }
    Ok(g)
}

/// Writes `src_label dst_label prob` for every directed edge.
pub fn write_edge_list(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    let io = |e| Error::io(path, e);
    for (u, v, a) in g.edges() {
        writeln!(w, "{} {} {}", g.label(u), g.label(v), a.prob).map_err(io)?;
    }
    w.flush().map_err(io)
}

pub fn write_label_map(g: &Graph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    let io = |e| Error::io(path, e);
    for u in g.nodes() {
        writeln!(w, "{} {}", g.label(u), u).map_err(io)?;
    }
    w.flush().map_err(io)
}

/// Reads `external_label dense_id` lines into a vector indexed by dense id.
pub fn read_label_map(path: impl AsRef<Path>, n: usize) -> Result<Vec<String>> {
    let path = path.as_ref();
    let mut labels: Vec<Option<String>> = vec![None; n];
    for (i, line) in open(path)?.lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut it = line.split_whitespace();
        let (Some(label), Some(id), None) = (it.next(), it.next(), it.next()) else {
            return Err(Error::parse(path, i + 1, "expected `label dense_id`"));
        };
        let id: usize = id
            .parse()
            .map_err(|_| Error::parse(path, i + 1, format!("bad dense id {id:?}")))?;
        let slot = labels
            .get_mut(id)
            .ok_or_else(|| Error::parse(path, i + 1, format!("dense id {id} >= {n}")))?;
        if slot.replace(label.to_owned()).is_some() {
            return Err(Error::parse(path, i + 1, format!("dense id {id} repeated")));
        }
    }
    labels
        .into_iter()
        .enumerate()
        .map(|(i, l)| {
            l.ok_or_else(|| Error::parse(path, 0, format!("dense id {i} has no label")))
        })
        .collect()
}

/// Path of the label map stored beside an annotated graph.
pub fn label_map_path(annotated: &Path) -> PathBuf {
    let mut s = annotated.as_os_str().to_owned();
    s.push(".labels");
    PathBuf::from(s)
}

/// Writes the annotated graph and its label map (`<path>.labels`).
pub fn write_annotated(g: &Graph, path: impl AsRef<Path>, comments: &[String]) -> Result<()> {
    let path = path.as_ref();
    let mut w = create(path)?;
    write_annotated_to(g, &mut w, comments).map_err(|e| Error::io(path, e))?;
    w.flush().map_err(|e| Error::io(path, e))?;
    write_label_map(g, label_map_path(path))
}

pub fn write_annotated_to<W: Write>(
    g: &Graph,
    w: &mut W,
    comments: &[String],
) -> std::io::Result<()> {
    writeln!(w, "# tbim annotated graph")?;
    for c in comments {
        writeln!(w, "# {c}")?;
    }
    writeln!(w, "directed {}", g.is_directed())?;
    writeln!(w, "nodes {}", g.node_count())?;
    writeln!(w, "edges {}", g.edge_count())?;
    writeln!(w, "[nodes]")?;
    for u in g.nodes() {
        let a = g.node(u);
        writeln!(w, "{} {} {}", u, a.threshold, a.cost)?;
    }
    writeln!(w, "[edges]")?;
    for (u, v, a) in g.edges() {
        write!(w, "{} {} {}", u, v, a.prob)?;
        for phi in a.delay.phis() {
            write!(w, " {phi}")?;
        }
        writeln!(w)?;
    }
    Ok(())
}

#[derive(PartialEq)]
enum Section {
    Header,
    Nodes,
    Edges,
}

/// Reads an annotated graph. Labels come from `<path>.labels` when that file
/// exists, otherwise dense ids double as labels.
pub fn read_annotated(path: impl AsRef<Path>) -> Result<Graph> {
    let path = path.as_ref();
    let reader = open(path)?;
    let mut directed = None;
    let mut n = None;
    let mut m = None;
    let mut section = Section::Header;
    let mut nodes: Vec<(usize, NodeAttr)> = Vec::new();
    let mut edges: Vec<(usize, usize, EdgeAttr)> = Vec::new();

    for (i, line) in reader.lines().enumerate() {
        let lineno = i + 1;
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let bad = |msg: String| Error::parse(path, lineno, msg);
        match line {
            "[nodes]" => {
                section = Section::Nodes;
                continue;
            }
            "[edges]" => {
                section = Section::Edges;
                continue;
            }
            _ => {}
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match section {
            Section::Header => match tokens.as_slice() {
                ["directed", v] => {
                    directed = Some(v.parse::<bool>().map_err(|_| bad(format!("bad flag {v:?}")))?)
                }
                ["nodes", v] => n = Some(parse_num::<usize>(v).ok_or_else(|| bad(format!("bad count {v:?}")))?),
                ["edges", v] => m = Some(parse_num::<usize>(v).ok_or_else(|| bad(format!("bad count {v:?}")))?),
                _ => return Err(bad(format!("unexpected header line {line:?}"))),
            },
            Section::Nodes => {
                let [id, threshold, cost] = tokens.as_slice() else {
                    return Err(bad("expected `id threshold cost`".into()));
                };
                let id = parse_num::<usize>(id).ok_or_else(|| bad(format!("bad id {id:?}")))?;
                let threshold = parse_num::<f64>(threshold)
                    .filter(|t| (0.0..=1.0).contains(t))
                    .ok_or_else(|| bad(format!("bad threshold {threshold:?}")))?;
                let cost = parse_num::<u64>(cost)
                    .filter(|c| *c >= 1)
                    .ok_or_else(|| bad(format!("bad cost {cost:?}")))?;
                nodes.push((id, NodeAttr { threshold, cost }));
            }
            Section::Edges => {
                if tokens.len() < 4 {
                    return Err(bad("expected `src dst prob phi_1 ..`".into()));
                }
                let src = parse_num::<usize>(tokens[0]).ok_or_else(|| bad("bad source id".into()))?;
                let dst = parse_num::<usize>(tokens[1]).ok_or_else(|| bad("bad target id".into()))?;
                let prob = parse_num::<f64>(tokens[2]).ok_or_else(|| bad("bad probability".into()))?;
                if !(prob > 0.0 && prob <= 1.0) {
                    return Err(Error::ProbabilityOutOfRange {
                        path: path.to_owned(),
                        line: lineno,
                        value: prob,
                    });
                }
                let phis = tokens[3..]
                    .iter()
                    .map(|t| parse_num::<f64>(t))
                    .collect::<Option<Vec<f64>>>()
                    .ok_or_else(|| bad("bad delay probability".into()))?;
                let delay = DelayDistribution::new(phis).map_err(|e| bad(e.to_string()))?;
                edges.push((src, dst, EdgeAttr { prob, delay }));
            }
        }
    }

    let missing = |what: &str| Error::parse(path, 0, format!("missing `{what}` header"));
    let directed = directed.ok_or_else(|| missing("directed"))?;
    let n = n.ok_or_else(|| missing("nodes"))?;
    let m = m.ok_or_else(|| missing("edges"))?;
    if nodes.len() != n || edges.len() != m {
        return Err(Error::parse(
            path,
            0,
            format!(
                "header declares {n} nodes and {m} edges, found {} and {}",
                nodes.len(),
                edges.len()
            ),
        ));
    }

    let label_path = label_map_path(path);
    let labels = if label_path.exists() {
        read_label_map(&label_path, n)?
    } else {
        (0..n).map(|i| i.to_string()).collect()
    };

    // Rebuild through the builder so the CSR invariants are re-established,
    // then restore attributes by dense id.
    let mut b = GraphBuilder::new(true);
    for l in &labels {
        b.add_node(l);
    }
    for (src, dst, _) in &edges {
        if *src >= n || *dst >= n {
            return Err(Error::InvalidNode { id: (*src).max(*dst), n });
        }
        b.add_edge(&labels[*src], &labels[*dst], Some(1.0));
    }
    let mut g = b.build();
    if g.edge_count() != m {
        return Err(Error::parse(path, 0, "edge section has self-loops or duplicates"));
    }
    g.directed = directed;
    let mut seen = vec![false; n];
    for (id, attr) in nodes {
        if id >= n || std::mem::replace(&mut seen[id], true) {
            return Err(Error::parse(path, 0, format!("node id {id} out of range or repeated")));
        }
        g.nodes[id] = attr;
    }
    for (src, dst, attr) in edges {
        let range = g.out_range(NodeId::from(src));
        let pos = g.out_targets[range.clone()]
            .binary_search(&NodeId::from(dst))
            .expect("edge inserted above");
        g.out_attrs[range.start + pos] = attr;
    }
    g.probs_loaded = true;
    Ok(g)
}

fn parse_num<T: std::str::FromStr>(s: &str) -> Option<T> {
    s.parse().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;
    use std::fs;

    fn write(dir: &tempfile::TempDir, name: &str, body: &str) -> PathBuf {
        let p = dir.path().join(name);
        fs::write(&p, body).unwrap();
        p
    }

    #[test]
    fn directed_two_edges() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "e.txt", "0 1\n1 2\n");
        let g = load_edge_list(&p, true).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
    }

    #[test]
    fn undirected_single_edge() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "e.txt", "# comment\n\n0 1\n");
        let g = load_edge_list(&p, false).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 2));
        assert!(g.check_consistency());
    }

    #[test]
    fn sparse_labels_are_densified() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "e.txt", "1000 7 0.5\n7 42 0.25\n");
        let g = load_edge_list(&p, true).unwrap();
        assert_eq!(g.labels(), &["1000", "7", "42"]);
        assert!(g.probabilities_loaded());
        assert_eq!(g.edge(NodeId(1), NodeId(2)).unwrap().prob, 0.25);
    }

    #[test]
    fn malformed_lines_report_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "e.txt", "0 1\n2\n");
        match load_edge_list(&p, true) {
            Err(Error::Parse { line, .. }) => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        let p = write(&dir, "f.txt", "0 1 0.5\n1 2 1.5\n");
        match load_edge_list(&p, true) {
            Err(Error::ProbabilityOutOfRange { line, value, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(value, 1.5);
            }
            other => panic!("{other:?}"),
        }
        let p = write(&dir, "g.txt", "0 1 abc\n");
        assert!(matches!(load_edge_list(&p, true), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(
            load_edge_list(dir.path().join("missing"), true),
            Err(Error::Io { .. })
        ));
    }

    #[test]
    fn edge_list_round_trip_preserves_labelled_edges() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(&dir, "e.txt", "a b 0.5\nb c 0.125\nc a 1\n");
        let g = load_edge_list(&p, true).unwrap();
        let out = dir.path().join("out.txt");
        write_edge_list(&g, &out).unwrap();
        let h = load_edge_list(&out, true).unwrap();
        let set = |g: &Graph| -> BTreeSet<(String, String, u64)> {
            g.edges()
                .map(|(u, v, a)| (g.label(u).to_owned(), g.label(v).to_owned(), a.prob.to_bits()))
                .collect()
        };
        assert_eq!(set(&g), set(&h));
    }

    #[test]
    fn annotated_rejects_inconsistent_counts() {
        let dir = tempfile::tempdir().unwrap();
        let p = write(
            &dir,
            "a.ann",
            "directed true\nnodes 2\nedges 2\n[nodes]\n0 0 1\n1 0 1\n[edges]\n0 1 0.5 1\n",
        );
        assert!(read_annotated(&p).is_err());
        let p = write(
            &dir,
            "b.ann",
            "directed true\nnodes 2\nedges 1\n[nodes]\n0 0 1\n1 0 1\n[edges]\n0 1 0.5 0.5 0.4\n",
        );
        assert!(read_annotated(&p).is_err());
    }
}
