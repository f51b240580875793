//! Grand-canonical thermodynamics for arbitrary fugacities: partition
//! function, particle and orbital averages, energies, and the `p = n - 1`
//! deviation formulas.
//!
//! The state space is `θ ∈ {0,1}^n` with `|θ| ≤ p`; the Gibbs weight of `θ`
//! is `Π x_i^{θ_i}`. Requests with `p > n` are clamped to `p = n`, which
//! leaves every quantity unchanged.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use crate::emit::Emit;
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symfun::{elem_sym_excluding, elem_sym_table};

/// Largest `n` accepted by state enumeration.
pub const BRUTEFORCE_MAX_N: usize = 24;
/// Largest `n` accepted in exact rational mode.
pub const EXACT_MAX_N: usize = 64;

/// Order of statistics plus fugacities (and optionally orbital energies).
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoParams<T> {
    p: u64,
    xs: Vec<T>,
    energies: Option<Vec<T>>,
}

impl<T: Scalar> ThermoParams<T> {
    pub fn new(p: u64, xs: Vec<T>) -> Result<Self> {
        if xs.is_empty() {
            return Err(Error::InvalidParams("need at least one orbital".into()));
        }
        if T::EXACT && xs.len() > EXACT_MAX_N {
            return Err(Error::Capacity(format!(
                "exact mode supports at most {EXACT_MAX_N} orbitals (got {})",
                xs.len()
            )));
        }
        if let Some((i, x)) = xs.iter().enumerate().find(|(_, x)| x.is_negative()) {
            return Err(Error::InvalidParams(format!(
                "fugacity x_{} = {x} is negative",
                i + 1
            )));
        }
        if !T::EXACT && xs.iter().any(|x| !x.to_f64().is_finite()) {
            return Err(Error::InvalidParams("fugacities must be finite".into()));
        }
        Ok(ThermoParams {
            p,
            xs,
            energies: None,
        })
    }

    pub fn with_energies(mut self, energies: Vec<T>) -> Result<Self> {
        if energies.len() != self.xs.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} energies for {} orbitals",
                energies.len(),
                self.xs.len()
            )));
        }
        self.energies = Some(energies);
        Ok(self)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[T] {
        &self.xs
    }

    pub fn energies(&self) -> Option<&[T]> {
        self.energies.as_deref()
    }

    /// `min(p, n)`, the order actually used.
    pub fn effective_p(&self) -> usize {
        self.p.min(self.xs.len() as u64) as usize
    }

    /// True when `p > n` was requested.
    pub fn is_clamped(&self) -> bool {
        self.p > self.xs.len() as u64
    }

    /// Same parameters with fugacity `i` (1-based) replaced.
    pub fn with_fugacity(&self, i: usize, x: T) -> Result<Self> {
        check_orbital(i, self.n())?;
        let mut xs = self.xs.clone();
        xs[i - 1] = x;
        let mut out = ThermoParams::new(self.p, xs)?;
        out.energies = self.energies.clone();
        Ok(out)
    }

    pub fn with_p(&self, p: u64) -> Self {
        ThermoParams {
            p,
            ..self.clone()
        }
    }
}

impl ThermoParams<f64> {
    /// Physical parametrisation; energies are kept for [`average_energy`].
    pub fn physical(p: u64, energies: Vec<f64>, mu: Vec<f64>, tau: f64) -> Result<Self> {
        let xs = fugacities_physical(&energies, &mu, tau)?;
        ThermoParams::new(p, xs)?.with_energies(energies)
    }
}

fn check_orbital(i: usize, n: usize) -> Result<()> {
    if i == 0 || i > n {
        return Err(Error::InvalidIndex(format!("orbital {i} outside 1..={n}")));
    }
    Ok(())
}

/// `x_i = exp((μ_i - ε_i)/τ)`. A single `μ` is shared by all orbitals.
pub fn fugacities_physical(energies: &[f64], mu: &[f64], tau: f64) -> Result<Vec<f64>> {
    if tau.is_nan() || tau <= 0.0 || tau.is_infinite() {
        return Err(Error::InvalidParams(format!("temperature tau = {tau} must be > 0")));
    }
    if mu.len() != energies.len() && mu.len() != 1 {
        return Err(Error::DimensionMismatch(format!(
            "{} chemical potentials for {} energies",
            mu.len(),
            energies.len()
        )));
    }
    Ok(energies
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let m = if mu.len() == 1 { mu[0] } else { mu[i] };
            ((m - e) / tau).exp()
        })
        .collect())
}

/// The fugacity vector seen by every other routine.
pub fn fugacities<T: Scalar>(params: &ThermoParams<T>) -> Vec<T> {
    params.xs.clone()
}

/// `Z = Σ_{k ≤ min(p,n)} e_k(x)`.
pub fn gpf<T: Scalar>(params: &ThermoParams<T>) -> T {
    let pe = params.effective_p();
    elem_sym_table(&params.xs, pe).partial_sum(pe)
}

fn gibbs_weight<T: Scalar>(xs: &[T], mask: u32) -> T {
    xs.iter()
        .enumerate()
        .filter(|&(i, _)| mask >> i & 1 == 1)
        .fold(T::one(), |acc, (_, x)| acc * x.clone())
}

/// Admissible states (as bit masks, bit `i-1` = `θ_i`) with their Gibbs
/// weights, in increasing mask order.
pub fn admissible_states<T: Scalar>(params: &ThermoParams<T>) -> Result<Vec<(u32, T)>> {
    let n = params.n();
    if n > BRUTEFORCE_MAX_N {
        return Err(Error::Capacity(format!(
            "state enumeration supports at most {BRUTEFORCE_MAX_N} orbitals (got {n})"
        )));
    }
    let pe = params.effective_p() as u32;
    Ok((0u32..1 << n)
        .filter(|m| m.count_ones() <= pe)
        .map(|m| (m, gibbs_weight(&params.xs, m)))
        .collect())
}

/// `Z` by summing Gibbs weights over all admissible states.
pub fn gpf_bruteforce<T: Scalar>(params: &ThermoParams<T>) -> Result<T> {
    Ok(admissible_states(params)?
        .into_iter()
        .fold(T::zero(), |acc, (_, w)| acc + w))
}

fn parse_theta(theta: &[u8], n: usize) -> Result<u32> {
    if theta.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "state has {} occupations for {n} orbitals",
            theta.len()
        )));
    }
    theta.iter().enumerate().try_fold(0u32, |m, (i, &b)| match b {
        0 => Ok(m),
        1 => Ok(m | 1 << i),
        other => Err(Error::InvalidParams(format!("occupation {other} is not 0 or 1"))),
    })
}

/// Gibbs probability of `θ`; `None` when `|θ| > p` (a forbidden state).
pub fn state_probability<T: Scalar>(params: &ThermoParams<T>, theta: &[u8]) -> Result<Option<T>> {
    let mask = parse_theta(theta, params.n())?;
    if mask.count_ones() as usize > params.effective_p() {
        return Ok(None);
    }
    Ok(Some(gibbs_weight(&params.xs, mask) / gpf(params)))
}

/// Full distribution over admissible states (mask, probability).
pub fn state_distribution<T: Scalar>(params: &ThermoParams<T>) -> Result<Vec<(u32, T)>> {
    let states = admissible_states(params)?;
    let z = states.iter().fold(T::zero(), |acc, (_, w)| acc + w.clone());
    Ok(states.into_iter().map(|(m, w)| (m, w / z.clone())).collect())
}

/// `N̄ = Σ k e_k / Σ e_k`.
pub fn average_n<T: Scalar>(params: &ThermoParams<T>) -> T {
    let pe = params.effective_p();
    let t = elem_sym_table(&params.xs, pe);
    t.weighted_partial_sum(pe) / t.partial_sum(pe)
}

/// `N̄ = p - Σ (p - k) e_k / Z`, which exhibits `N̄ < p`.
pub fn average_n_deficit<T: Scalar>(params: &ThermoParams<T>) -> T {
    let pe = params.effective_p();
    let t = elem_sym_table(&params.xs, pe);
    let deficit = (0..=pe).fold(T::zero(), |acc, k| {
        acc + T::from_usize(pe - k) * t.get(k)
    });
    T::from_usize(pe) - deficit / t.partial_sum(pe)
}

/// Mean orbital occupations and the complementary emptiness probabilities.
#[derive(Debug, Clone, PartialEq)]
pub struct Occupancies<T> {
    pub theta_bar: Vec<T>,
    /// `P(θ_i = 0) = 1 - θ̄_i`.
    pub empty: Vec<T>,
}

/// `θ̄_i = x_i Σ_{k<p} e_k(x without x_i) / Z`.
pub fn occupancies<T: Scalar>(params: &ThermoParams<T>) -> Occupancies<T> {
    let pe = params.effective_p();
    let z = gpf(params);
    let theta_bar: Vec<T> = (1..=params.n())
        .map(|i| {
            if pe == 0 {
                return T::zero();
            }
            let rest = elem_sym_excluding(&params.xs, i, pe - 1)
                .expect("index in range")
                .partial_sum(pe - 1);
            params.xs[i - 1].clone() * rest / z.clone()
        })
        .collect();
    let empty = theta_bar.iter().map(|t| T::one() - t.clone()).collect();
    Occupancies { theta_bar, empty }
}

/// `|θ̄_i - x_i ∂ ln Z / ∂ x_i|` with a central difference of step `h`.
pub fn log_derivative_check(params: &ThermoParams<f64>, i: usize, h: f64) -> Result<f64> {
    check_orbital(i, params.n())?;
    if h.is_nan() || h <= 0.0 {
        return Err(Error::InvalidParams(format!("step h = {h} must be > 0")));
    }
    let x = params.xs[i - 1];
    if x - h <= 0.0 {
        return Err(Error::Domain(format!("x_{i} - h = {} is not positive", x - h)));
    }
    let up = gpf(&params.with_fugacity(i, x + h)?).ln();
    let down = gpf(&params.with_fugacity(i, x - h)?).ln();
    let theta = occupancies(params).theta_bar[i - 1];
    Ok((theta - x * (up - down) / (2.0 * h)).abs())
}

/// Per-orbital energies `ε_i θ̄_i` and their total.
pub fn average_energy<T: Scalar>(params: &ThermoParams<T>) -> Result<(Vec<T>, T)> {
    let eps = params
        .energies()
        .ok_or_else(|| Error::Precondition("average energy needs orbital energies".into()))?;
    let occ = occupancies(params);
    let per: Vec<T> = eps
        .iter()
        .zip(&occ.theta_bar)
        .map(|(e, t)| e.clone() * t.clone())
        .collect();
    let total = per.iter().fold(T::zero(), |a, b| a + b.clone());
    Ok((per, total))
}

/// Averages at `p = n - 1` from the Fermi values `x/(1+x)`.
#[derive(Debug, Clone, PartialEq)]
pub struct Deviation<T> {
    pub theta_bar: Vec<T>,
    pub nbar: T,
    pub ebar: Option<T>,
}

/// `θ̄_i = (θ^f_i - Π θ^f_j)/(1 - Π θ^f_j)` and the matching `N̄`, `Ē`.
pub fn deviation_p_n_minus_1<T: Scalar>(xs: &[T], energies: Option<&[T]>) -> Result<Deviation<T>> {
    let params = ThermoParams::new(0, xs.to_vec())?;
    if let Some(e) = energies {
        params.clone().with_energies(e.to_vec())?;
    }
    let fermi: Vec<T> = xs
        .iter()
        .map(|x| x.clone() / (T::one() + x.clone()))
        .collect();
    let full = fermi.iter().fold(T::one(), |a, b| a * b.clone());
    let denom = T::one() - full.clone();
    let theta_bar = fermi
        .iter()
        .map(|t| (t.clone() - full.clone()) / denom.clone())
        .collect();
    let sum_f = fermi.iter().fold(T::zero(), |a, b| a + b.clone());
    let nbar = (sum_f - T::from_usize(xs.len()) * full.clone()) / denom.clone();
    let ebar = energies.map(|eps| {
        let weighted = eps
            .iter()
            .zip(&fermi)
            .fold(T::zero(), |a, (e, t)| a + e.clone() * t.clone());
        let sum_e = eps.iter().fold(T::zero(), |a, b| a + b.clone());
        (weighted - sum_e * full.clone()) / denom.clone()
    });
    Ok(Deviation {
        theta_bar,
        nbar,
        ebar,
    })
}

/// How a report was computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Route {
    Bruteforce,
    Symfun,
    ClosedForm,
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Route::Bruteforce => "bruteforce",
            Route::Symfun => "symfun",
            Route::ClosedForm => "closed_form",
        })
    }
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bruteforce" => Ok(Route::Bruteforce),
            "symfun" => Ok(Route::Symfun),
            "closed_form" => Ok(Route::ClosedForm),
            other => Err(Error::Parse(format!("unknown route {other:?}"))),
        }
    }
}

/// Summary of one thermodynamic evaluation.
#[derive(Debug, Clone, PartialEq)]
pub struct ThermoReport<T> {
    pub p: u64,
    pub n: usize,
    pub route: Route,
    /// Set when `p > n` was requested and `p = n` used.
    pub clamped: bool,
    pub z: T,
    pub nbar: T,
    pub theta_bar: Vec<T>,
    pub ebar: Option<T>,
}

/// Computes a report by the requested route. The closed-form route covers
/// `p ≥ n` (Fermi) and `p = n - 1`.
pub fn thermo_report<T: Scalar>(params: &ThermoParams<T>, route: Route) -> Result<ThermoReport<T>> {
    let n = params.n();
    let pe = params.effective_p();
    let (z, nbar, theta_bar, ebar) = match route {
        Route::Bruteforce => {
            let states = admissible_states(params)?;
            let mut z = T::zero();
            let mut nsum = T::zero();
            let mut occ = vec![T::zero(); n];
            for (m, w) in states {
                z = z + w.clone();
                nsum = nsum + T::from_usize(m.count_ones() as usize) * w.clone();
                for (i, o) in occ.iter_mut().enumerate() {
                    if m >> i & 1 == 1 {
                        *o = o.clone() + w.clone();
                    }
                }
            }
            let theta: Vec<T> = occ.into_iter().map(|o| o / z.clone()).collect();
            let ebar = params.energies().map(|eps| dot(eps, &theta));
            (z.clone(), nsum / z, theta, ebar)
        }
        Route::Symfun => {
            let occ = occupancies(params);
            let ebar = params.energies().map(|eps| dot(eps, &occ.theta_bar));
            (gpf(params), average_n(params), occ.theta_bar, ebar)
        }
        Route::ClosedForm => {
            let fermi_z = params
                .xs
                .iter()
                .fold(T::one(), |a, x| a * (T::one() + x.clone()));
            if pe == n {
                let theta: Vec<T> = params
                    .xs
                    .iter()
                    .map(|x| x.clone() / (T::one() + x.clone()))
                    .collect();
                let nbar = theta.iter().fold(T::zero(), |a, b| a + b.clone());
                let ebar = params.energies().map(|eps| dot(eps, &theta));
                (fermi_z, nbar, theta, ebar)
            } else if pe + 1 == n {
                let d = deviation_p_n_minus_1(&params.xs, params.energies())?;
                let all = params.xs.iter().fold(T::one(), |a, x| a * x.clone());
                (fermi_z - all, d.nbar, d.theta_bar, d.ebar)
            } else {
                return Err(Error::Precondition(format!(
                    "closed-form route needs p >= n - 1 (p = {}, n = {n})",
                    params.p
                )));
            }
        }
    };
    Ok(ThermoReport {
        p: params.p,
        n,
        route,
        clamped: params.is_clamped(),
        z,
        nbar,
        theta_bar,
        ebar,
    })
}

fn dot<T: Scalar>(a: &[T], b: &[T]) -> T {
    a.iter()
        .zip(b)
        .fold(T::zero(), |acc, (x, y)| acc + x.clone() * y.clone())
}

impl<T: Emit> ThermoReport<T> {
    /// JSON object `{p, n, route, Z, Nbar, theta_bar, Ebar}` (plus
    /// `clamped: true` when applicable). Exact values are `"a/b"` strings.
    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("p".into(), json!(self.p));
        m.insert("n".into(), json!(self.n));
        m.insert("route".into(), json!(self.route.to_string()));
        if self.clamped {
            m.insert("clamped".into(), json!(true));
        }
        m.insert("Z".into(), self.z.to_json_value());
        m.insert("Nbar".into(), self.nbar.to_json_value());
        m.insert(
            "theta_bar".into(),
            Value::Array(self.theta_bar.iter().map(Emit::to_json_value).collect()),
        );
        if let Some(e) = &self.ebar {
            m.insert("Ebar".into(), e.to_json_value());
        }
        Value::Object(m)
    }

    pub fn from_json(v: &Value) -> Result<Self> {
        let field = |k: &str| {
            v.get(k)
                .ok_or_else(|| Error::Parse(format!("report is missing {k:?}")))
        };
        let int = |k: &str| {
            field(k)?
                .as_u64()
                .ok_or_else(|| Error::Parse(format!("{k:?} is not a nonnegative integer")))
        };
        let route: Route = field("route")?
            .as_str()
            .ok_or_else(|| Error::Parse("route is not a string".into()))?
            .parse()?;
        let theta_bar = field("theta_bar")?
            .as_array()
            .ok_or_else(|| Error::Parse("theta_bar is not an array".into()))?
            .iter()
            .map(T::from_json_value)
            .collect::<Result<Vec<T>>>()?;
        Ok(ThermoReport {
            p: int("p")?,
            n: int("n")? as usize,
            route,
            clamped: v.get("clamped").and_then(Value::as_bool).unwrap_or(false),
            z: T::from_json_value(field("Z")?)?,
            nbar: T::from_json_value(field("Nbar")?)?,
            theta_bar,
            ebar: v.get("Ebar").map(T::from_json_value).transpose()?,
        })
    }

    /// Header and single data row.
    pub fn csv_rows(&self) -> (Vec<String>, Vec<String>) {
        let mut header: Vec<String> = ["p", "n", "route", "Z", "Nbar"]
            .iter()
            .map(|s| s.to_string())
            .collect();
        let mut row = vec![
            self.p.to_string(),
            self.n.to_string(),
            self.route.to_string(),
            self.z.to_text(),
            self.nbar.to_text(),
        ];
        for (i, t) in self.theta_bar.iter().enumerate() {
            header.push(format!("theta_bar_{}", i + 1));
            row.push(t.to_text());
        }
        if let Some(e) = &self.ebar {
            header.push("Ebar".into());
            row.push(e.to_text());
        }
        (header, row)
    }

    pub fn to_human(&self) -> String {
        let mut out = format!(
            "p = {}, n = {}{} (route {})\nZ = {}\nNbar = {}\n",
            self.p,
            self.n,
            if self.clamped { " (clamped to p = n)" } else { "" },
            self.route,
            self.z.to_human(),
            self.nbar.to_human()
        );
        for (i, t) in self.theta_bar.iter().enumerate() {
            out.push_str(&format!("theta_bar_{} = {}\n", i + 1, t.to_human()));
        }
        if let Some(e) = &self.ebar {
            out.push_str(&format!("Ebar = {}\n", e.to_human()));
        }
        out
    }
}
