//! Monte Carlo estimates of the occupation averages, drawn from the Gibbs
//! distribution over admissible states.
//!
//! Two samplers: i.i.d. draws from the enumerated distribution (`n ≤ 24`),
//! and a single-bit-flip Metropolis chain that never leaves `|θ| ≤ p`.
//! Randomness comes from ChaCha8 streams derived from one seed, so results
//! do not depend on thread scheduling.

use std::path::Path;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::emit::{csv_string, write_text};
use crate::error::{Error, Result};
use crate::thermo::{state_distribution, ThermoParams, BRUTEFORCE_MAX_N};

/// Jackknife blocks (fewer when there are fewer samples).
pub const JACKKNIFE_BLOCKS: usize = 100;
pub const DEFAULT_BURN_IN: u64 = 1000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Method {
    ExactCategorical,
    Metropolis,
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "exact" | "exact_categorical" => Ok(Method::ExactCategorical),
            "metropolis" => Ok(Method::Metropolis),
            _ => Err(Error::Parse(format!("unknown sampling method {s:?}"))),
        }
    }
}

#[derive(Debug, Clone)]
pub struct SamplerConfig {
    pub params: ThermoParams<f64>,
    /// Draws (exact) or total chain steps including burn-in (metropolis).
    pub count: u64,
    pub seed: u64,
    pub method: Method,
    pub burn_in: u64,
    pub thinning: u64,
}

impl SamplerConfig {
    pub fn new(params: ThermoParams<f64>, count: u64, seed: u64, method: Method) -> Self {
        SamplerConfig {
            params,
            count,
            seed,
            method,
            burn_in: DEFAULT_BURN_IN,
            thinning: 1,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.count == 0 {
            return Err(Error::InvalidParams("count must be >= 1".into()));
        }
        match self.method {
            Method::ExactCategorical if self.params.n() > BRUTEFORCE_MAX_N => {
                Err(Error::Capacity(format!(
                    "exact sampling supports at most {BRUTEFORCE_MAX_N} orbitals (got {})",
                    self.params.n()
                )))
            }
            Method::Metropolis if self.count < self.burn_in => Err(Error::InvalidParams(format!(
                "count {} is smaller than burn-in {}",
                self.count, self.burn_in
            ))),
            Method::Metropolis if self.thinning == 0 => {
                Err(Error::InvalidParams("thinning must be >= 1".into()))
            }
            Method::Metropolis if self.params.n() > 32 => Err(Error::Capacity(format!(
                "chain states are 32-bit masks (got {} orbitals)",
                self.params.n()
            ))),
            _ => Ok(()),
        }
    }
}

/// Sample means with blocked-jackknife standard errors.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleEstimate {
    pub method: Method,
    pub samples: u64,
    pub nbar_hat: f64,
    pub nbar_se: f64,
    pub theta_bar_hat: Vec<f64>,
    pub theta_bar_se: Vec<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ebar_hat: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ebar_se: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub acceptance_rate: Option<f64>,
}

/// Per-block occupation counts.
#[derive(Debug, Clone)]
struct Block {
    size: u64,
    occ: Vec<u64>,
}

impl Block {
    fn new(n: usize) -> Self {
        Block {
            size: 0,
            occ: vec![0; n],
        }
    }

    fn record(&mut self, mask: u32) {
        self.size += 1;
        let mut m = mask;
        while m != 0 {
            self.occ[m.trailing_zeros() as usize] += 1;
            m &= m - 1;
        }
    }
}

fn block_sizes(total: u64) -> Vec<u64> {
    let b = (JACKKNIFE_BLOCKS as u64).min(total).max(1);
    (0..b).map(|k| total / b + u64::from(k < total % b)).collect()
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Runs the configured sampler.
pub fn sample(config: &SamplerConfig) -> Result<SampleEstimate> {
    run(config, false).map(|(e, _)| e)
}

/// Like [`sample`], also returning every recorded state as a bit mask.
pub fn sample_raw(config: &SamplerConfig) -> Result<(SampleEstimate, Vec<u32>)> {
    run(config, true)
}

fn run(config: &SamplerConfig, keep: bool) -> Result<(SampleEstimate, Vec<u32>)> {
    config.validate()?;
    let n = config.params.n();
    let (blocks, raw, acceptance) = match config.method {
        Method::ExactCategorical => {
            let dist = state_distribution(&config.params)?;
            let mut cum = Vec::with_capacity(dist.len());
            let mut acc = 0.0;
            for (_, w) in &dist {
                acc += w;
                cum.push(acc);
            }
            let total = acc;
            let sizes = block_sizes(config.count);
            let parts: Vec<(Block, Vec<u32>)> = sizes
                .par_iter()
                .enumerate()
                .map(|(b, &size)| {
                    let mut rng = stream_rng(config.seed, b as u64);
                    let mut block = Block::new(n);
                    let mut raw = Vec::new();
                    for _ in 0..size {
                        let u = rng.gen::<f64>() * total;
                        let k = cum.partition_point(|&c| c <= u).min(dist.len() - 1);
                        let mask = dist[k].0;
                        block.record(mask);
                        if keep {
                            raw.push(mask);
                        }
                    }
                    (block, raw)
                })
                .collect();
            let (blocks, raws): (Vec<Block>, Vec<Vec<u32>>) = parts.into_iter().unzip();
            (blocks, raws.concat(), None)
        }
        Method::Metropolis => metropolis(config, keep)?,
    };
    let est = estimate(config, &blocks, acceptance);
    Ok((est, raw))
}

fn metropolis(config: &SamplerConfig, keep: bool) -> Result<(Vec<Block>, Vec<u32>, Option<f64>)> {
    let params = &config.params;
    let n = params.n();
    let pe = params.effective_p() as u32;
    let xs = params.xs();
    let recorded = (config.count - config.burn_in) / config.thinning;
    if recorded == 0 {
        return Err(Error::InvalidParams(format!(
            "no samples left after burn-in {} and thinning {}",
            config.burn_in, config.thinning
        )));
    }
    let mut rng = stream_rng(config.seed, 0);
    let mut state = 0u32;
    let mut weight = 0u32;
    let mut accepted = 0u64;
    let step = |rng: &mut ChaCha8Rng, state: &mut u32, weight: &mut u32| {
        let i = rng.gen_range(0..n);
        let bit = 1u32 << i;
        let occupied = *state & bit != 0;
        let ratio = if occupied {
            1.0 / xs[i]
        } else if *weight >= pe {
            // leaving the admissible set: zero target probability
            0.0
        } else {
            xs[i]
        };
        let u: f64 = rng.gen();
        if ratio >= 1.0 || u < ratio {
            *state ^= bit;
            if occupied {
                *weight -= 1;
            } else {
                *weight += 1;
            }
            true
        } else {
            false
        }
    };
    for _ in 0..config.burn_in {
        step(&mut rng, &mut state, &mut weight);
    }
    let sizes = block_sizes(recorded);
    let mut blocks = Vec::with_capacity(sizes.len());
    let mut raw = Vec::new();
    let mut steps = 0u64;
    for size in sizes {
        let mut block = Block::new(n);
        for _ in 0..size {
            for _ in 0..config.thinning {
                accepted += u64::from(step(&mut rng, &mut state, &mut weight));
                steps += 1;
            }
            debug_assert!(state.count_ones() <= pe);
            block.record(state);
            if keep {
                raw.push(state);
            }
        }
        blocks.push(block);
    }
    Ok((blocks, raw, Some(accepted as f64 / steps as f64)))
}

/// Mean and blocked-jackknife standard error of a linear observable
/// `Σ c_i θ_i`.
fn jackknife(blocks: &[Block], coeffs: &[f64]) -> (f64, f64) {
    let value = |b: &Block| -> f64 { b.occ.iter().zip(coeffs).map(|(&o, c)| o as f64 * c).sum() };
    let total_n: u64 = blocks.iter().map(|b| b.size).sum();
    let sums: Vec<f64> = blocks.iter().map(value).collect();
    let total: f64 = sums.iter().sum();
    let mean = total / total_n as f64;
    let nb = blocks.len();
    if nb < 2 {
        return (mean, 0.0);
    }
    let loo: Vec<f64> = blocks
        .iter()
        .zip(&sums)
        .map(|(b, s)| (total - s) / (total_n - b.size) as f64)
        .collect();
    let loo_mean = loo.iter().sum::<f64>() / nb as f64;
    let var = loo.iter().map(|v| (v - loo_mean).powi(2)).sum::<f64>() * (nb - 1) as f64
        / nb as f64;
    (mean, var.sqrt())
}

fn estimate(config: &SamplerConfig, blocks: &[Block], acceptance: Option<f64>) -> SampleEstimate {
    let n = config.params.n();
    let unit = |i: usize| -> Vec<f64> { (0..n).map(|j| f64::from(u8::from(i == j))).collect() };
    let (theta_bar_hat, theta_bar_se): (Vec<f64>, Vec<f64>) =
        (0..n).map(|i| jackknife(blocks, &unit(i))).unzip();
    // same samples, so N̂ is exactly Σ θ̂_i
    let nbar_hat = theta_bar_hat.iter().sum();
    let (_, nbar_se) = jackknife(blocks, &vec![1.0; n]);
    let energy = config.params.energies().map(|eps| jackknife(blocks, eps));
    SampleEstimate {
        method: config.method,
        samples: blocks.iter().map(|b| b.size).sum(),
        nbar_hat,
        nbar_se,
        theta_bar_hat,
        theta_bar_se,
        ebar_hat: energy.map(|e| e.0),
        ebar_se: energy.map(|e| e.1),
        acceptance_rate: acceptance,
    }
}

/// Writes recorded states as CSV with columns `theta1..thetan`.
pub fn write_samples_csv(path: &Path, n: usize, masks: &[u32]) -> Result<()> {
    let header: Vec<String> = (1..=n).map(|i| format!("theta{i}")).collect();
    let rows: Vec<Vec<String>> = masks
        .iter()
        .map(|m| (0..n).map(|i| (m >> i & 1).to_string()).collect())
        .collect();
    write_text(path, &csv_string(&header, &rows)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::thermo::average_n;

    fn p123() -> ThermoParams<f64> {
        ThermoParams::new(2, vec![1.0, 2.0, 3.0]).unwrap()
    }

    #[test]
    fn exact_estimates_and_determinism() {
        let cfg = SamplerConfig::new(p123(), 100_000, 7, Method::ExactCategorical);
        let a = sample(&cfg).unwrap();
        let b = sample(&cfg).unwrap();
        assert_eq!(a, b);
        assert!((a.nbar_hat - 14.0 / 9.0).abs() < 3.0 * a.nbar_se);
        assert!(a.nbar_se > 0.0 && a.theta_bar_se.iter().all(|s| *s > 0.0));
        assert_eq!(a.nbar_hat, a.theta_bar_hat.iter().sum::<f64>());
        let c = sample(&SamplerConfig { seed: 8, ..cfg }).unwrap();
        assert_ne!(a.nbar_hat, c.nbar_hat);
    }

    #[test]
    fn chi_square_against_distribution() {
        let cfg = SamplerConfig::new(p123(), 100_000, 2024, Method::ExactCategorical);
        let (_, raw) = sample_raw(&cfg).unwrap();
        let dist = state_distribution(&p123()).unwrap();
        assert_eq!(dist.len(), 7);
        let stat: f64 = dist
            .iter()
            .map(|(m, pr)| {
                let observed = raw.iter().filter(|s| *s == m).count() as f64;
                let expected = pr * raw.len() as f64;
                (observed - expected).powi(2) / expected
            })
            .sum();
        // 0.999 quantile of chi-square with 6 degrees of freedom
        assert!(stat < 22.458, "chi-square {stat}");
    }

    #[test]
    fn metropolis_stays_admissible() {
        let pr = ThermoParams::new(2, vec![3.0; 6]).unwrap();
        let cfg = SamplerConfig::new(pr.clone(), 20_000, 1, Method::Metropolis);
        let (est, raw) = sample_raw(&cfg).unwrap();
        assert_eq!(raw.len() as u64, 19_000);
        assert!(raw.iter().all(|m| m.count_ones() <= 2));
        let rate = est.acceptance_rate.unwrap();
        assert!(rate > 0.0 && rate < 1.0);
        assert!((est.nbar_hat - average_n(&pr)).abs() < 5.0 * est.nbar_se + 1e-3);
    }

    #[test]
    fn metropolis_with_energies_and_thinning() {
        let pr = ThermoParams::new(2, vec![1.0, 2.0, 3.0])
            .unwrap()
            .with_energies(vec![1.0, 2.0, 3.0])
            .unwrap();
        let mut cfg = SamplerConfig::new(pr, 200_000, 3, Method::Metropolis);
        cfg.thinning = 4;
        let est = sample(&cfg).unwrap();
        assert_eq!(est.samples, 49_750);
        let e = est.ebar_hat.unwrap();
        assert!((e - 31.0 / 9.0).abs() < 4.0 * est.ebar_se.unwrap());
    }

    #[test]
    fn config_errors() {
        let mut cfg = SamplerConfig::new(p123(), 10, 0, Method::Metropolis);
        assert!(sample(&cfg).is_err());
        cfg.count = 0;
        cfg.method = Method::ExactCategorical;
        assert!(sample(&cfg).is_err());
        let big = ThermoParams::new(1, vec![1.0; 25]).unwrap();
        assert!(matches!(
            sample(&SamplerConfig::new(big, 10, 0, Method::ExactCategorical)),
            Err(Error::Capacity(_))
        ));
        assert_eq!("exact".parse::<Method>().unwrap(), Method::ExactCategorical);
        assert!("gibbs".parse::<Method>().is_err());
    }

    #[test]
    fn dump_and_json() {
        let dir = tempfile::tempdir().unwrap();
        let cfg = SamplerConfig::new(p123(), 50, 1, Method::ExactCategorical);
        let (est, raw) = sample_raw(&cfg).unwrap();
        let path = dir.path().join("s.csv");
        write_samples_csv(&path, 3, &raw).unwrap();
        let text = std::fs::read_to_string(path).unwrap();
        assert_eq!(text.lines().count(), 51);
        assert!(text.starts_with("theta1,theta2,theta3\n"));
        let json = serde_json::to_string(&est).unwrap();
        let back: SampleEstimate = serde_json::from_str(&json).unwrap();
        assert_eq!(back, est);
        assert!(!json.contains("acceptance_rate"));
    }
}
