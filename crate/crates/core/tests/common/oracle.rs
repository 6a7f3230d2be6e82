//! Test-side reference computations, written without the library's
//! enumeration code.
#![allow(dead_code)]

use tbim::{Graph, NodeId};

/// One directed edge with its success probability and offset pmf
/// (`phis[k]` is the mass on offset `k + 1`).
#[derive(Debug, Clone)]
pub struct RefEdge {
    pub src: usize,
    pub dst: usize,
    pub prob: f64,
    pub phis: Vec<f64>,
}

pub fn ref_edges(g: &Graph) -> Vec<RefEdge> {
    g.edges()
        .map(|(u, v, a)| RefEdge {
            src: u.index(),
            dst: v.index(),
            prob: a.prob,
            phis: a.delay.phis().to_vec(),
        })
        .collect()
}

pub fn thresholds(g: &Graph) -> Vec<f64> {
    g.nodes().map(|v| g.threshold(v)).collect()
}

/// Expected number of nodes active by `deadline`.
///
/// Walks every joint outcome with a mixed-radix counter (digit 0 = the edge
/// fails, digit k = it fires with offset k), then replays the cascade one time
/// step at a time.
pub fn laic_expected_spread(n: usize, edges: &[RefEdge], theta: &[f64], seeds: &[usize], deadline: u32) -> f64 {
    let radix: Vec<usize> = edges.iter().map(|e| e.phis.len() + 1).collect();
    let mut digits = vec![0usize; edges.len()];
    let mut total = 0.0;
    loop {
        let mut prob = 1.0;
        for (e, &d) in edges.iter().zip(&digits) {
            prob *= if d == 0 { 1.0 - e.prob } else { e.prob * e.phis[d - 1] };
        }
        if prob > 0.0 {
            total += prob * replay(n, edges, theta, &digits, seeds, deadline) as f64;
        }
        // increment the counter
        let mut i = 0;
        loop {
            if i == digits.len() {
                return total;
            }
            digits[i] += 1;
            if digits[i] < radix[i] {
                break;
            }
            digits[i] = 0;
            i += 1;
        }
    }
}

fn replay(n: usize, edges: &[RefEdge], theta: &[f64], digits: &[usize], seeds: &[usize], deadline: u32) -> usize {
    const NEVER: u32 = u32::MAX;
    let mut time = vec![NEVER; n];
    for &s in seeds {
        time[s] = 0;
    }
    for t in 0..=deadline {
        for (e, &d) in edges.iter().zip(digits) {
            if d == 0 || time[e.src] != t {
                continue;
            }
            if theta[e.dst] > 0.0 && e.prob * e.phis[d - 1] < theta[e.dst] {
                continue;
            }
            let arrive = t + d as u32;
            if arrive < time[e.dst] {
                time[e.dst] = arrive;
            }
        }
    }
    time.iter().filter(|&&t| t <= deadline).count()
}

/// Classical independent cascade: expected size of the set reachable from
/// `seeds` over a random live-edge subgraph, summed over all `2^m` subgraphs.
pub fn ic_expected_spread(n: usize, edges: &[(usize, usize, f64)], seeds: &[usize]) -> f64 {
    assert!(edges.len() < 26);
    let mut total = 0.0;
    for mask in 0u32..(1 << edges.len()) {
        let mut prob = 1.0;
        for (i, &(_, _, p)) in edges.iter().enumerate() {
            prob *= if mask >> i & 1 == 1 { p } else { 1.0 - p };
        }
        let mut seen = vec![false; n];
        let mut stack: Vec<usize> = seeds.to_vec();
        for &s in seeds {
            seen[s] = true;
        }
        while let Some(u) = stack.pop() {
            for (i, &(a, b, _)) in edges.iter().enumerate() {
                if a == u && mask >> i & 1 == 1 && !seen[b] {
                    seen[b] = true;
                    stack.push(b);
                }
            }
        }
        total += prob * seen.iter().filter(|&&s| s).count() as f64;
    }
    total
}

/// Best budget-feasible subset under `value` by exhaustive search.
pub fn best_subset<F: Fn(&[usize]) -> f64>(costs: &[u64], budget: u64, value: F) -> (Vec<usize>, f64) {
    let n = costs.len();
    let mut best = (Vec::new(), 0.0);
    for mask in 1u32..(1 << n) {
        let members: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
        let cost: u64 = members.iter().map(|&i| costs[i]).sum();
        if cost <= budget {
            let v = value(&members);
            if v > best.1 {
                best = (members, v);
            }
        }
    }
    best
}

pub fn ids(v: &[NodeId]) -> Vec<usize> {
    v.iter().map(|x| x.index()).collect()
}
