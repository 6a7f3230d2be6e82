use std::collections::BTreeMap;
use std::fmt::Write;

use super::SweepResult;
use crate::error::{Error, Result};

/// `(a - b) / n` in percent, truncated toward zero at two decimals.
pub fn gap_percent_of_n(a: f64, b: f64, n: usize) -> f64 {
    truncate2(100.0 * (a - b) / n as f64)
}

/// How much larger `a` is than `b`, in percent of `b`, to two decimals.
pub fn percent_more(a: f64, b: f64) -> f64 {
    if b == 0.0 {
        return if a == 0.0 { 0.0 } else { f64::INFINITY };
    }
    (10_000.0 * (a / b - 1.0)).round() / 100.0
}

fn truncate2(x: f64) -> f64 {
    // a tiny nudge keeps exact decimals such as 10.55 from landing on 10.54
    let scaled = x * 100.0;
    (scaled + 1e-9 * scaled.signum()).trunc() / 100.0 + 0.0
}

/// Per budget shared by two or more algorithms: algorithms ranked by mean
/// spread, each with its gap to the leader as a percentage of `n` and its
/// advantage over the best baseline heuristic.
pub fn compare_report(results: &[SweepResult], n: usize) -> Result<String> {
    let mut by_budget: BTreeMap<u64, Vec<&SweepResult>> = BTreeMap::new();
    for r in results {
        by_budget.entry(r.budget).or_default().push(r);
    }
    by_budget.retain(|_, rows| {
        let mut algos: Vec<_> = rows.iter().map(|r| r.algorithm).collect();
        algos.sort();
        algos.dedup();
        algos.len() >= 2
    });
    if by_budget.is_empty() {
        return Err(Error::NoSharedBudgets);
    }
    let mut out = String::new();
    for (budget, mut rows) in by_budget {
        rows.sort_by(|a, b| {
            b.spread_mean
                .total_cmp(&a.spread_mean)
                .then(a.algorithm.cmp(&b.algorithm))
                .then(a.dataset.cmp(&b.dataset))
        });
        let leader = rows[0].spread_mean;
        let best_baseline = rows.iter().find(|r| !r.algorithm.is_greedy());
        let _ = writeln!(out, "budget {budget}");
        for (rank, r) in rows.iter().enumerate() {
            let _ = write!(
                out,
                "  {:>2}. {:<12} {:>12.4}  gap {:>6.2}% of n",
                rank + 1,
                r.algorithm.name(),
                r.spread_mean,
                gap_percent_of_n(leader, r.spread_mean, n)
            );
            if let Some(b) = best_baseline.filter(|b| b.algorithm != r.algorithm) {
                let _ = write!(
                    out,
                    "  vs {}: {:+.2}% of n, {:+.2}% more",
                    b.algorithm,
                    gap_percent_of_n(r.spread_mean, b.spread_mean, n),
                    percent_more(r.spread_mean, b.spread_mean)
                );
            }
            out.push('\n');
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::selection::Algorithm;

    fn row(algorithm: Algorithm, budget: u64, spread: f64) -> SweepResult {
        SweepResult {
            dataset: "d".into(),
            algorithm,
            budget,
            spread_mean: spread,
            spread_stddev: 0.0,
            selection_seconds: 0.0,
            evaluation_trials: 1,
            seed_set_path: "x".into(),
        }
    }

    #[test]
    fn gap_truncates() {
        // (977 - 871) / 1005 = 10.547...%
        assert_eq!(gap_percent_of_n(977.0, 871.0, 1005), 10.54);
        assert_eq!(gap_percent_of_n(5.0, 5.0, 10), 0.0);
        assert_eq!(gap_percent_of_n(871.0, 977.0, 1005), -10.54);
    }

    #[test]
    fn percent_more_examples() {
        assert_eq!(percent_more(511.0, 511.0 / 1.44), 44.0);
        assert_eq!(percent_more(3.0, 3.0), 0.0);
    }

    #[test]
    fn report_lists_shared_budgets() {
        let rows = [
            row(Algorithm::Approx, 16000, 977.0),
            row(Algorithm::Irie, 16000, 871.0),
            row(Algorithm::Deg, 16000, 800.0),
            row(Algorithm::Deg, 2000, 100.0),
        ];
        let text = compare_report(&rows, 1005).unwrap();
        assert!(!text.contains("budget 2000"));
        assert!(text.contains("budget 16000"));
        let approx = text.lines().find(|l| l.contains("approx")).unwrap();
        assert!(approx.contains("vs irie: +10.54% of n"), "{approx}");
        assert!(approx.contains("gap   0.00% of n"), "{approx}");
    }

    #[test]
    fn identical_spreads_zero_gaps() {
        let rows = [row(Algorithm::Approx, 5, 4.0), row(Algorithm::Deg, 5, 4.0)];
        let text = compare_report(&rows, 10).unwrap();
        assert!(text.contains("+0.00% of n, +0.00% more"), "{text}");
    }

    #[test]
    fn no_shared_budget() {
        let rows = [row(Algorithm::Approx, 5, 4.0), row(Algorithm::Deg, 6, 4.0)];
        assert!(matches!(compare_report(&rows, 10), Err(Error::NoSharedBudgets)));
    }
}
