//! Closed forms for two energy spectra: all orbitals degenerate (classical
//! hypergeometric series) and equidistant levels (Gaussian binomials and a
//! terminating `₂φ₁`).

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;

use crate::error::{Error, Result};
use crate::scalar::Scalar;
use crate::symfun::{
    basic_2phi1_terminating, elem_sym_geometric, hyp2f1_terminating, q_pochhammer, QArg,
};
use crate::thermo::ThermoParams;

pub mod figures;

pub use figures::{figure_data, FigureSeries, Grid};

/// `n` orbitals sharing one fugacity `x`.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateParams<T> {
    pub p: u64,
    pub n: usize,
    pub x: T,
}

impl<T: Scalar> DegenerateParams<T> {
    pub fn new(p: u64, n: usize, x: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("need at least one orbital".into()));
        }
        if x <= T::zero() {
            return Err(Error::InvalidParams(format!("fugacity x = {x} must be > 0")));
        }
        Ok(DegenerateParams { p, n, x })
    }

    fn pe(&self) -> usize {
        self.p.min(self.n as u64) as usize
    }

    /// The same system as an explicit fugacity tuple.
    pub fn thermo(&self) -> Result<ThermoParams<T>> {
        ThermoParams::new(self.p, vec![self.x.clone(); self.n])
    }
}

impl DegenerateParams<f64> {
    /// `x = e^{-y}` with `y = (ε - μ)/τ`.
    pub fn from_y(p: u64, n: usize, y: f64) -> Result<Self> {
        DegenerateParams::new(p, n, (-y).exp())
    }
}

/// Evaluation route for the degenerate partition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegenerateRoute {
    /// `Σ_{k ≤ p} C(n,k) x^k`.
    Direct,
    /// `(1+x)^n - C(n,p+1) x^{p+1} ₂F₁(1, p-n+1; p+2; -x)`.
    Additive2F1,
    /// `(1+x)^n (1 - C(n,p+1) x^{p+1} ₂F₁(p+1, n+1; p+2; -x))`, needs `x < 1`.
    Multiplicative2F1,
}

impl fmt::Display for DegenerateRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DegenerateRoute::Direct => "direct",
            DegenerateRoute::Additive2F1 => "additive_2F1",
            DegenerateRoute::Multiplicative2F1 => "multiplicative_2F1",
        })
    }
}

impl FromStr for DegenerateRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "direct" => Ok(DegenerateRoute::Direct),
            "additive_2f1" | "additive" => Ok(DegenerateRoute::Additive2F1),
            "multiplicative_2f1" | "multiplicative" => Ok(DegenerateRoute::Multiplicative2F1),
            _ => Err(Error::Parse(format!("unknown degenerate route {s:?}"))),
        }
    }
}

// The additive forms subtract two terms that nearly cancel when x > 1 and
// p << n, so float inputs are evaluated on their exact binary value.
fn in_exact<T: Scalar>(x: &T, f: impl Fn(&BigRational) -> Result<BigRational>) -> Result<T> {
    Ok(T::from_rational(&f(&x.to_rational())?))
}

fn additive(p: u64, n: u64, x: &BigRational) -> Result<BigRational> {
    let fermi = fermi_gpf(x, n as usize);
    if p >= n {
        return Ok(fermi);
    }
    let tail = hyp2f1_terminating(
        &<BigRational as Scalar>::one(),
        &BigRational::from_i64(p as i64 - n as i64 + 1),
        &BigRational::from_i64(p as i64 + 2),
        &-x.clone(),
    )?;
    Ok(fermi - BigRational::binomial(n, p + 1) * x.powu(p + 1) * tail.value)
}

fn fermi_gpf<T: Scalar>(x: &T, n: usize) -> T {
    (T::one() + x.clone()).powu(n as u64)
}

pub fn degenerate_gpf<T: Scalar>(params: &DegenerateParams<T>, route: DegenerateRoute) -> Result<T> {
    let (p, n, x) = (params.p, params.n as u64, &params.x);
    match route {
        DegenerateRoute::Direct => Ok((0..=params.pe() as u64).fold(T::zero(), |acc, k| {
            acc + T::binomial(n, k) * x.powu(k)
        })),
        DegenerateRoute::Additive2F1 => in_exact(x, |xr| additive(p, n, xr)),
        DegenerateRoute::Multiplicative2F1 => {
            if *x >= T::one() {
                return Err(Error::Domain(format!(
                    "multiplicative route needs x < 1 (got x = {x})"
                )));
            }
            if p >= n {
                return Ok(fermi_gpf(x, params.n));
            }
            let f = hyp2f1_terminating(
                &T::from_i64(p as i64 + 1),
                &T::from_i64(n as i64 + 1),
                &T::from_i64(p as i64 + 2),
                &-x.clone(),
            )?;
            Ok(fermi_gpf(x, params.n)
                * (T::one() - T::binomial(n, p + 1) * x.powu(p + 1) * f.value))
        }
    }
}

/// Degenerate averages; `theta_bar` is common to every orbital.
#[derive(Debug, Clone, PartialEq)]
pub struct DegenerateAverages<T> {
    pub nbar: T,
    pub theta_bar: T,
}

/// `N̄` as the ratio `Σ k C(n,k) x^k / Σ C(n,k) x^k`, and
/// `θ̄ = x/(1+x) - C(n-1,p) x^{p+1} / ((1+x) Z)`.
pub fn degenerate_averages<T: Scalar>(params: &DegenerateParams<T>) -> Result<DegenerateAverages<T>> {
    let (p, n, x) = (params.p, params.n as u64, &params.x);
    let z = degenerate_gpf(params, DegenerateRoute::Direct)?;
    let weighted = (1..=params.pe() as u64).fold(T::zero(), |acc, k| {
        acc + T::from_i64(k as i64) * T::binomial(n, k) * x.powu(k)
    });
    let one_x = T::one() + x.clone();
    let theta_bar = x.clone() / one_x.clone()
        - T::binomial(n - 1, p) * x.powu(p + 1) / (one_x * z.clone());
    Ok(DegenerateAverages {
        nbar: weighted / z,
        theta_bar,
    })
}

/// `N̄` from its ₂F₁ form:
/// `[n x (1+x)^{n-1} - (p+1) C(n,p+1) x^{p+1} ₂F₁(1, p-n+1; p+1; -x)] / Z`.
pub fn degenerate_nbar_2f1<T: Scalar>(params: &DegenerateParams<T>) -> Result<T> {
    let (p, n) = (params.p, params.n as u64);
    in_exact(&params.x, |x| {
        let lead = BigRational::from_i64(n as i64) * x.clone() * (<BigRational as Scalar>::one() + x.clone()).powu(n - 1);
        let z = additive(p, n, x)?;
        if p >= n {
            return Ok(lead / z);
        }
        let f = hyp2f1_terminating(
            &<BigRational as Scalar>::one(),
            &BigRational::from_i64(p as i64 - n as i64 + 1),
            &BigRational::from_i64(p as i64 + 1),
            &-x.clone(),
        )?;
        let tail = BigRational::from_i64(p as i64 + 1)
            * BigRational::binomial(n, p + 1)
            * x.powu(p + 1)
            * f.value;
        Ok((lead - tail) / z)
    })
}

/// `N̄(1, n) = n / (e^y + n)`.
pub fn hardcore_boson_n(n: usize, y: f64) -> f64 {
    let n = n as f64;
    if y > 700.0 {
        // e^y overflows; n e^{-y} is the leading term
        return n * (-y).exp();
    }
    n / (y.exp() + n)
}

/// Equidistant levels: fugacities `x, qx, …, q^{n-1}x`.
#[derive(Debug, Clone, PartialEq)]
pub struct EquidistantParams<T> {
    pub p: u64,
    pub n: usize,
    pub x: T,
    pub q: T,
}

impl<T: Scalar> EquidistantParams<T> {
    pub fn new(p: u64, n: usize, x: T, q: T) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParams("need at least one orbital".into()));
        }
        if x <= T::zero() {
            return Err(Error::InvalidParams(format!("fugacity x = {x} must be > 0")));
        }
        if q <= T::zero() || q > T::one() {
            return Err(Error::InvalidParams(format!("q = {q} outside (0, 1]")));
        }
        Ok(EquidistantParams { p, n, x, q })
    }

    fn pe(&self) -> usize {
        self.p.min(self.n as u64) as usize
    }

    pub fn fugacity_tuple(&self) -> Vec<T> {
        (0..self.n)
            .map(|i| self.x.clone() * self.q.powu(i as u64))
            .collect()
    }

    pub fn thermo(&self) -> Result<ThermoParams<T>> {
        ThermoParams::new(self.p, self.fugacity_tuple())
    }

    fn degenerate(&self) -> DegenerateParams<T> {
        DegenerateParams {
            p: self.p,
            n: self.n,
            x: self.x.clone(),
        }
    }

    fn geometric(&self, k: usize, exclude: Option<usize>) -> T {
        elem_sym_geometric(&self.x, &self.q, self.n, k, exclude).expect("validated parameters")
    }
}

impl EquidistantParams<f64> {
    /// From `ε_i = ε_1 + (i-1)Δ`: `x = e^{(μ-ε_1)/τ}`, `q = e^{-Δ/τ}`.
    pub fn physical(p: u64, n: usize, eps1: f64, delta: f64, mu: f64, tau: f64) -> Result<Self> {
        if tau.is_nan() || tau <= 0.0 {
            return Err(Error::InvalidParams(format!("temperature tau = {tau} must be > 0")));
        }
        if delta.is_nan() || delta <= 0.0 {
            return Err(Error::InvalidParams(format!("level spacing {delta} must be > 0")));
        }
        EquidistantParams::new(p, n, ((mu - eps1) / tau).exp(), (-delta / tau).exp())
    }
}

/// Evaluation route for the equidistant partition function.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EquidistantRoute {
    /// `Σ_{k ≤ p} q^{k(k-1)/2} [n k]_q x^k`.
    QBinomial,
    /// `₂φ₁(q^{-n}, q^{-p}; q^{-p}; q, -q^n x)`.
    Phi21,
    /// `(-x; q)_n`, needs `p ≥ n`.
    Product,
}

impl fmt::Display for EquidistantRoute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            EquidistantRoute::QBinomial => "qbinomial",
            EquidistantRoute::Phi21 => "phi21",
            EquidistantRoute::Product => "product",
        })
    }
}

impl FromStr for EquidistantRoute {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "qbinomial" => Ok(EquidistantRoute::QBinomial),
            "phi21" => Ok(EquidistantRoute::Phi21),
            "product" => Ok(EquidistantRoute::Product),
            _ => Err(Error::Parse(format!("unknown equidistant route {s:?}"))),
        }
    }
}

/// At `q = 1` every route reduces to the degenerate value.
pub fn equidistant_gpf<T: Scalar>(params: &EquidistantParams<T>, route: EquidistantRoute) -> Result<T> {
    if route == EquidistantRoute::Product && params.p < params.n as u64 {
        return Err(Error::Precondition(format!(
            "product route needs p >= n (p = {}, n = {})",
            params.p, params.n
        )));
    }
    if params.q == T::one() {
        return degenerate_gpf(&params.degenerate(), DegenerateRoute::Direct);
    }
    match route {
        EquidistantRoute::QBinomial => {
            Ok((0..=params.pe()).fold(T::zero(), |acc, k| acc + params.geometric(k, None)))
        }
        EquidistantRoute::Phi21 => {
            let z = -(params.q.powu(params.n as u64) * params.x.clone());
            let p = -(params.p as i64);
            basic_2phi1_terminating(
                &QArg::Power(-(params.n as i64)),
                &QArg::Power(p),
                &QArg::Power(p),
                &params.q,
                &z,
            )
            .map(|s| s.value)
        }
        EquidistantRoute::Product => {
            Ok(q_pochhammer(&-params.x.clone(), &params.q, params.n).value)
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquidistantAverages<T> {
    pub nbar: T,
    pub theta_bar: Vec<T>,
}

/// `N̄` as the Gaussian-binomial ratio and `θ̄_i` from the excluded-orbital
/// alternating sums.
pub fn equidistant_averages<T: Scalar>(params: &EquidistantParams<T>) -> Result<EquidistantAverages<T>> {
    if params.q == T::one() {
        let d = degenerate_averages(&params.degenerate())?;
        return Ok(EquidistantAverages {
            nbar: d.nbar,
            theta_bar: vec![d.theta_bar; params.n],
        });
    }
    let pe = params.pe();
    let terms: Vec<T> = (0..=pe).map(|k| params.geometric(k, None)).collect();
    let z = terms.iter().fold(T::zero(), |a, b| a + b.clone());
    let weighted = terms
        .iter()
        .enumerate()
        .fold(T::zero(), |a, (k, e)| a + T::from_usize(k) * e.clone());
    let theta_bar = (1..=params.n)
        .map(|i| {
            if pe == 0 {
                return T::zero();
            }
            let rest = (0..pe).fold(T::zero(), |a, k| a + params.geometric(k, Some(i)));
            params.x.clone() * params.q.powu(i as u64 - 1) * rest / z.clone()
        })
        .collect();
    Ok(EquidistantAverages {
        nbar: weighted / z,
        theta_bar,
    })
}

/// `N̄(n, n) = x Σ_{i<n} q^i / (1 + q^i x)`.
pub fn equidistant_nbar_typical<T: Scalar>(params: &EquidistantParams<T>) -> T {
    (0..params.n as u64).fold(T::zero(), |acc, i| {
        let qi = params.q.powu(i);
        acc + params.x.clone() * qi.clone() / (T::one() + qi * params.x.clone())
    })
}

/// Below this `q` the single-particle low-temperature limits are reported.
pub const LOWTEMP_Q_TOL: f64 = 1e-3;

/// Deviations from the low-temperature limits at `p = 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct LowTemperature {
    /// `|N̄ - 1/(e^y + 1)|`.
    pub nbar_deviation: f64,
    /// `|θ̄_1 - 1/(e^y + 1)|`.
    pub theta1_deviation: f64,
    /// `max_{i>1} θ̄_i`.
    pub max_upper_occupation: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EquidistantP1 {
    pub z: f64,
    pub nbar: f64,
    pub theta_bar: Vec<f64>,
    /// Present when `q ≤` [`LOWTEMP_Q_TOL`].
    pub lowtemp: Option<LowTemperature>,
}

/// The hard-core boson system on equidistant levels, with `x = e^{-y}`.
pub fn equidistant_p1(n: usize, y: f64, q: f64) -> Result<EquidistantP1> {
    let params = EquidistantParams::new(1, n, (-y).exp(), q)?;
    let s: f64 = (0..n).map(|i| q.powi(i as i32)).sum();
    // dividing through by x keeps large y finite
    let denom = y.exp() + s;
    let nbar = s / denom;
    let theta_bar: Vec<f64> = (0..n).map(|i| q.powi(i as i32) / denom).collect();
    let fd = 1.0 / (y.exp() + 1.0);
    let lowtemp = (q <= LOWTEMP_Q_TOL).then(|| LowTemperature {
        nbar_deviation: (nbar - fd).abs(),
        theta1_deviation: (theta_bar[0] - fd).abs(),
        max_upper_occupation: theta_bar[1..].iter().cloned().fold(0.0, f64::max),
    });
    Ok(EquidistantP1 {
        z: 1.0 + s * params.x,
        nbar,
        theta_bar,
        lowtemp,
    })
}
