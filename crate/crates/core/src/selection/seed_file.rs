//! Seed-set text format: `#` comments, then one line per seed
//! `rank label cost cumulative_cost`, rank starting at 1.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use super::SeedSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, NodeId};

pub fn write_seed_file(g: &Graph, set: &SeedSet, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    let mut w = BufWriter::new(file);
    write_seeds_to(g, set, &mut w)
        .and_then(|_| w.flush())
        .map_err(|e| Error::io(path, e))
}

fn write_seeds_to<W: Write>(g: &Graph, set: &SeedSet, w: &mut W) -> std::io::Result<()> {
    writeln!(w, "# budget {} total_cost {}", set.budget(), set.total_cost())?;
    let mut cumulative = 0;
    for (rank, &v) in set.nodes().iter().enumerate() {
        cumulative += g.cost(v);
        writeln!(w, "{} {} {} {}", rank + 1, g.label(v), g.cost(v), cumulative)?;
    }
    Ok(())
}

/// Reads seeds in file order. Lines may also hold a bare label.
pub fn read_seed_file(g: &Graph, path: impl AsRef<Path>) -> Result<Vec<NodeId>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let index = g.label_index();
    let mut seeds = Vec::new();
    for (i, line) in BufReader::new(file).lines().enumerate() {
        let line = line.map_err(|e| Error::io(path, e))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let label = match tokens.len() {
            1 => tokens[0],
            4 => tokens[1],
            k => return Err(Error::parse(path, i + 1, format!("expected 1 or 4 fields, found {k}"))),
        };
        let v = *index.get(label).ok_or_else(|| Error::UnknownLabel(label.to_owned()))?;
        seeds.push(v);
    }
    Ok(seeds)
}
