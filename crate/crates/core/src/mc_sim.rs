//! Monte Carlo simulation of the total progeny of the dual Galton–Watson
//! process and goodness-of-fit comparison with the theoretical law.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::branching::{
    dual_offspring_pmf, extinction_prob, progeny_pmf_table, sibuya_pmf, sibuya_survival,
    ProgenyHalfLaw, ScaledSibuya,
};
use crate::error::{Error, Result};

pub const DEFAULT_PROGENY_CAP: u64 = 100_000;
const PREFIX_LEN: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SimConfig {
    pub seed: u64,
    pub replicates: u64,
    /// Replicates whose total progeny reaches this value are censored.
    pub progeny_cap: u64,
    pub workers: usize,
}

impl SimConfig {
    pub fn new(seed: u64, replicates: u64) -> Self {
        SimConfig {
            seed,
            replicates,
            progeny_cap: DEFAULT_PROGENY_CAP,
            workers: std::thread::available_parallelism().map_or(1, |n| n.get()),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.replicates == 0 || self.progeny_cap < 2 || self.workers == 0 {
            return Err(Error::domain(format!(
                "need replicates >= 1, progeny_cap >= 2, workers >= 1; got {self:?}"
            )));
        }
        Ok(())
    }

    /// The generator for one replicate: the seed selects the key and the
    /// replicate index the stream, so draws never depend on scheduling.
    pub fn replicate_rng(&self, index: u64) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(index);
        rng
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum OffspringLaw {
    Sibuya(ScaledSibuya),
    Dual { d: ScaledSibuya, q: f64 },
}

impl OffspringLaw {
    fn pmf(&self, k: u64) -> f64 {
        match self {
            OffspringLaw::Sibuya(d) => sibuya_pmf(d, k),
            OffspringLaw::Dual { d, q } => match k {
                0 => (1.0 - d.lambda()) / q,
                _ => q.powf((k - 1) as f64) * sibuya_pmf(d, k),
            },
        }
    }
}

/// Inversion sampler with a cached cumulative table for k < 64. Draws past
/// the table extend the cumulative sum locally (dual law, geometric tail) or
/// search the closed-form survival function (plain Sibuya, power tail).
#[derive(Debug, Clone)]
pub struct OffspringSampler {
    law: OffspringLaw,
    cdf: Vec<f64>,
}

impl OffspringSampler {
    pub fn sibuya(d: ScaledSibuya) -> Self {
        Self::build(OffspringLaw::Sibuya(d))
    }

    /// The offspring law of the process conditioned on extinction.
    pub fn dual(d: ScaledSibuya) -> Result<Self> {
        let q = extinction_prob(&d)?;
        debug_assert_eq!(dual_offspring_pmf(&d, 0)?, (1.0 - d.lambda()) / q);
        Ok(Self::build(OffspringLaw::Dual { d, q }))
    }

    fn build(law: OffspringLaw) -> Self {
        let mut cdf = Vec::with_capacity(PREFIX_LEN);
        let mut acc = 0.0;
        for k in 0..PREFIX_LEN as u64 {
            acc += law.pmf(k);
            cdf.push(acc);
        }
        OffspringSampler { law, cdf }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> u64 {
        let u: f64 = rng.random();
        let last = *self.cdf.last().expect("table is non-empty");
        if u < last {
            return self.cdf.partition_point(|&c| c <= u) as u64;
        }
        match self.law {
            OffspringLaw::Sibuya(d) => survival_inverse(&d, 1.0 - u),
            OffspringLaw::Dual { .. } => {
                let mut k = PREFIX_LEN as u64;
                let mut acc = last;
                loop {
                    let p = self.law.pmf(k);
                    acc += p;
                    // once terms vanish below rounding of the sum, the
                    // remaining mass is unrepresentable
                    if u < acc || p < f64::EPSILON * 1e-3 {
                        return k;
                    }
                    k += 1;
                }
            }
        }
    }
}

/// Smallest k with P{W > k} ≤ tail, by doubling then bisection. Saturates
/// near u64::MAX for tails too small to reach.
fn survival_inverse(d: &ScaledSibuya, tail: f64) -> u64 {
    if sibuya_survival(d, 0) <= tail {
        return 0;
    }
    let (mut lo, mut hi) = (0u64, PREFIX_LEN as u64);
    while sibuya_survival(d, hi) > tail {
        if hi > u64::MAX / 4 {
            return hi;
        }
        lo = hi;
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if sibuya_survival(d, mid) > tail {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Outcome of one replicate: total progeny, or `None` if censored.
fn run_replicate(sampler: &OffspringSampler, cap: u64, rng: &mut ChaCha8Rng) -> Option<u64> {
    let mut generation = 1u64;
    let mut total = 1u64;
    while generation > 0 {
        let mut children = 0u64;
        for _ in 0..generation {
            children += sampler.sample(rng);
            if total + children >= cap {
                return None;
            }
        }
        total += children;
        generation = children;
    }
    Some(total)
}

/// Tallies of simulated (or directly sampled) total progeny.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProgenyCounts {
    pub counts: BTreeMap<u64, u64>,
    pub censored: u64,
    pub replicates: u64,
    pub progeny_cap: u64,
}

impl ProgenyCounts {
    fn from_outcomes(outcomes: impl Iterator<Item = Option<u64>>, cap: u64) -> Self {
        let mut counts = BTreeMap::new();
        let mut censored = 0;
        let mut replicates = 0;
        for o in outcomes {
            replicates += 1;
            match o {
                Some(l) => *counts.entry(l).or_insert(0) += 1,
                None => censored += 1,
            }
        }
        ProgenyCounts {
            counts,
            censored,
            replicates,
            progeny_cap: cap,
        }
    }

    pub fn count(&self, ell: u64) -> u64 {
        self.counts.get(&ell).copied().unwrap_or(0)
    }

    /// Mean over the uncensored replicates.
    pub fn uncensored_mean(&self) -> f64 {
        let (n, s) = self
            .counts
            .iter()
            .fold((0u64, 0.0), |(n, s), (l, c)| (n + c, s + (*l as f64) * (*c as f64)));
        s / n as f64
    }
}

/// Runs `cfg.replicates` independent dual processes started from one
/// particle, generation by generation, counting every particle ever born.
pub fn simulate_total_progeny(d: &ScaledSibuya, cfg: &SimConfig) -> Result<ProgenyCounts> {
    cfg.validate()?;
    let sampler = OffspringSampler::dual(*d)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers)
        .build()
        .map_err(|e| Error::domain(format!("cannot start worker pool: {e}")))?;
    let outcomes: Vec<Option<u64>> = pool.install(|| {
        (0..cfg.replicates)
            .into_par_iter()
            .map(|i| run_replicate(&sampler, cfg.progeny_cap, &mut cfg.replicate_rng(i)))
            .collect()
    });
    Ok(ProgenyCounts::from_outcomes(outcomes.into_iter(), cfg.progeny_cap))
}

/// Draws total progeny directly from pℓ by inversion, with the same
/// censoring rule. Used to check the goodness-of-fit machinery.
pub fn sample_progeny_direct(law: &ProgenyHalfLaw, cfg: &SimConfig) -> Result<ProgenyCounts> {
    cfg.validate()?;
    let len = (cfg.progeny_cap - 1) as usize;
    let table = progeny_pmf_table(law, len)?;
    let mut cdf = Vec::with_capacity(len);
    let mut acc = 0.0;
    for p in table {
        acc += p;
        cdf.push(acc);
    }
    let outcomes = (0..cfg.replicates).map(|i| {
        let u: f64 = cfg.replicate_rng(i).random();
        let idx = cdf.partition_point(|&c| c <= u);
        (idx < len).then_some(idx as u64 + 1)
    });
    Ok(ProgenyCounts::from_outcomes(outcomes, cfg.progeny_cap))
}

/// One chi-square cell: ℓ ∈ [from, to], `to = None` for the pooled tail.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofCell {
    pub from: u64,
    pub to: Option<u64>,
    pub observed: u64,
    pub expected: f64,
    pub z_score: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GofReport {
    pub replicates: u64,
    pub empirical_counts: BTreeMap<u64, u64>,
    pub censored: u64,
    pub cells: Vec<GofCell>,
    pub chi_square: f64,
    pub dof: usize,
    pub quantile_999: f64,
    pub p_value: f64,
    pub max_abs_deviation: f64,
    /// Σ_{ℓ ≥ cap} pℓ, the theoretical censored mass.
    pub expected_censored_fraction: f64,
}

impl GofReport {
    pub fn passes(&self) -> bool {
        self.chi_square < self.quantile_999
    }
}

const MIN_EXPECTED: f64 = 5.0;

/// Chi-square test of `counts` against pℓ over ℓ = 1..=bins plus a pooled
/// tail cell (censored replicates included). Cells with expected count
/// below 5 are folded into the tail.
pub fn gof_compare(counts: &ProgenyCounts, law: &ProgenyHalfLaw, bins: usize) -> Result<GofReport> {
    let n = counts.replicates;
    if n < 10_000 {
        return Err(Error::InsufficientData(format!(
            "goodness of fit needs at least 10^4 replicates, got {n}"
        )));
    }
    let nf = n as f64;
    let table_len = bins.max((counts.progeny_cap - 1) as usize);
    let pmf = progeny_pmf_table(law, table_len)?;
    let mut cells = Vec::new();
    let mut head_p = 0.0;
    let mut head_obs = 0u64;
    for ell in 1..=bins as u64 {
        let p = pmf[ell as usize - 1];
        if nf * p < MIN_EXPECTED {
            break;
        }
        let o = counts.count(ell);
        cells.push(GofCell {
            from: ell,
            to: Some(ell),
            observed: o,
            expected: nf * p,
            z_score: (o as f64 - nf * p) / (nf * p * (1.0 - p)).sqrt(),
        });
        head_p += p;
        head_obs += o;
    }
    let mut tail_p = (1.0 - head_p).max(0.0);
    let mut tail_obs = n - head_obs;
    while nf * tail_p < MIN_EXPECTED {
        let Some(c) = cells.pop() else { break };
        tail_p += c.expected / nf;
        tail_obs += c.observed;
    }
    if cells.is_empty() || nf * tail_p < MIN_EXPECTED {
        return Err(Error::InsufficientData(
            "pooling cannot reach expected counts of 5 in two cells".into(),
        ));
    }
    let from = cells.last().map_or(1, |c| c.to.unwrap() + 1);
    cells.push(GofCell {
        from,
        to: None,
        observed: tail_obs,
        expected: nf * tail_p,
        z_score: (tail_obs as f64 - nf * tail_p) / (nf * tail_p * (1.0 - tail_p)).sqrt(),
    });
    let chi_square: f64 = cells
        .iter()
        .map(|c| (c.observed as f64 - c.expected).powi(2) / c.expected)
        .sum();
    let max_abs_deviation = cells
        .iter()
        .map(|c| (c.observed as f64 - c.expected).abs() / nf)
        .fold(0.0, f64::max);
    let dof = cells.len() - 1;
    let dist = ChiSquared::new(dof as f64)
        .map_err(|e| Error::InsufficientData(format!("chi-square with {dof} dof: {e}")))?;
    let below_cap: f64 = pmf[..(counts.progeny_cap - 1) as usize].iter().sum();
    Ok(GofReport {
        replicates: n,
        empirical_counts: counts.counts.clone(),
        censored: counts.censored,
        cells,
        chi_square,
        dof,
        quantile_999: dist.inverse_cdf(0.999),
        p_value: dist.sf(chi_square),
        max_abs_deviation,
        expected_censored_fraction: (1.0 - below_cap).max(0.0),
    })
}
