use crate::graph::{Graph, NodeId};

/// Per-node probability of being reached in one step by the current seeds.
///
/// Stored as the miss probability `prod(1 - P(s -> u))` so that updates are
/// plain products and the value only ever shrinks as seeds are added. Seeds
/// themselves have miss probability 0.
#[derive(Debug, Clone, PartialEq)]
pub struct SeedReach {
    miss: Vec<f64>,
}

impl SeedReach {
    /// No seeds: every activation probability is 0.
    pub fn new(n: usize) -> Self {
        SeedReach { miss: vec![1.0; n] }
    }

    /// Builds the table from explicit activation probabilities.
    pub fn from_activation_probs(probs: &[f64]) -> Self {
        SeedReach {
            miss: probs.iter().map(|p| 1.0 - p).collect(),
        }
    }

    pub fn activation_prob(&self, u: NodeId) -> f64 {
        1.0 - self.miss[u.index()]
    }

    #[inline]
    pub fn miss(&self, u: NodeId) -> f64 {
        self.miss[u.index()]
    }

    /// Folds a new seed into the table: its out-neighbours' miss
    /// probabilities shrink by `1 - P(v -> w)` and the seed itself is covered.
    pub fn add_seed(&mut self, g: &Graph, v: NodeId) {
        for (w, a) in g.out_edges(v) {
            self.miss[w.index()] *= 1.0 - a.prob;
        }
        self.miss[v.index()] = 0.0;
    }
}

/// Approximate marginal gain of `v` given the seeds summarized by `reach`:
///
/// `sigma(v) * sum_w P(v->w) (1 - P_S(w)) sigma(w) / sum_w P(v->w) sigma(w)`
///
/// over out-neighbours `w`. The fraction is taken as 1 when the denominator
/// vanishes (no out-edges), so the result is always in `[0, sigma(v)]` and
/// equals `sigma(v)` for an empty seed set.
pub fn approx_marginal_gain(g: &Graph, sigma_single: &[f64], reach: &SeedReach, v: NodeId) -> f64 {
    let (num, den) = g.out_edges(v).fold((0.0, 0.0), |(num, den), (w, a)| {
        let weight = a.prob * sigma_single[w.index()];
        (num + weight * reach.miss(w), den + weight)
    });
    scale(sigma_single[v.index()], num, den)
}

#[inline]
fn scale(sigma_v: f64, num: f64, den: f64) -> f64 {
    if den > 0.0 {
        sigma_v * (num / den)
    } else {
        sigma_v
    }
}

/// Miss-probability factors for a hypothetical extra seed, used to evaluate
/// gains against `S ∪ {extra}` without touching the real table.
pub(crate) struct Hypothetical {
    factor: Vec<f64>,
    extra: Option<NodeId>,
}

impl Hypothetical {
    pub fn new(n: usize) -> Self {
        Hypothetical {
            factor: vec![1.0; n],
            extra: None,
        }
    }

    pub fn set(&mut self, g: &Graph, extra: Option<NodeId>) {
        if self.extra == extra {
            return;
        }
        if let Some(old) = self.extra {
            for &w in g.out_neighbors(old) {
                self.factor[w.index()] = 1.0;
            }
            self.factor[old.index()] = 1.0;
        }
        if let Some(new) = extra {
            for (w, a) in g.out_edges(new) {
                self.factor[w.index()] = 1.0 - a.prob;
            }
            self.factor[new.index()] = 0.0;
        }
        self.extra = extra;
    }
}

/// Gains of `v` against `S` and against `S ∪ {extra}` in one pass over its
/// out-edges. The second value is bit-identical to what
/// [`approx_marginal_gain`] returns after `reach.add_seed(extra)`.
pub(crate) fn approx_gain_pair(
    g: &Graph,
    sigma_single: &[f64],
    reach: &SeedReach,
    hyp: &Hypothetical,
    v: NodeId,
) -> (f64, f64) {
    let (mut num, mut num_extra, mut den) = (0.0, 0.0, 0.0);
    for (w, a) in g.out_edges(v) {
        let weight = a.prob * sigma_single[w.index()];
        let miss = reach.miss(w);
        let miss_extra = if hyp.extra == Some(w) {
            0.0
        } else {
            miss * hyp.factor[w.index()]
        };
        num += weight * miss;
        num_extra += weight * miss_extra;
        den += weight;
    }
    let sigma_v = sigma_single[v.index()];
    (scale(sigma_v, num, den), scale(sigma_v, num_extra, den))
}
