//! Fock representations `W(p, n)` of `gl(1|n)` as explicit sparse matrices.
//!
//! Basis vectors `|p; θ⟩` are labelled by occupation vectors
//! `θ ∈ {0,1}^n` with `|θ| ≤ p`. The Jacobson generators act by
//!
//! ```text
//! f_i^- |p;θ⟩ = θ_i     (-1)^{θ_1+…+θ_{i-1}} √(p-|θ|+1) |…,θ_i-1,…⟩
//! f_i^+ |p;θ⟩ = (1-θ_i) (-1)^{θ_1+…+θ_{i-1}} √(p-|θ|)   |…,θ_i+1,…⟩
//! ```

pub mod amplitude;
pub mod sparse;
pub mod verify;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::parse_rational;
pub use amplitude::Amplitude;
pub use sparse::{Entry, Inexact, SparseMatrix};

/// Largest number of orbitals the basis enumeration accepts.
pub const MAX_ORBITALS: usize = 20;

/// Order of statistics `p` and number of orbitals `n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FockSpec {
    p: u64,
    n: usize,
}

impl FockSpec {
    pub fn new(p: u64, n: usize) -> Result<Self> {
        if p == 0 {
            return Err(Error::InvalidParams("order of statistics p must be >= 1".into()));
        }
        if n == 0 {
            return Err(Error::InvalidParams("number of orbitals n must be >= 1".into()));
        }
        if n > MAX_ORBITALS {
            return Err(Error::Capacity(format!(
                "n = {n} exceeds the enumeration cap of {MAX_ORBITALS} orbitals"
            )));
        }
        Ok(FockSpec { p, n })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `p ≥ n`: the representation is typical and has dimension `2^n`.
    pub fn is_typical(&self) -> bool {
        self.p >= self.n as u64
    }

    /// `Σ_{k ≤ min(p,n)} C(n, k)`, computed from binomials (independently of
    /// the enumeration).
    pub fn dimension(&self) -> usize {
        let kmax = (self.p.min(self.n as u64)) as usize;
        let mut total = 0usize;
        let mut c = 1usize;
        for k in 0..=kmax {
            total += c;
            c = c * (self.n - k) / (k + 1);
        }
        total
    }
}

/// Occupation vector `θ`; bit `i-1` of the mask holds `θ_i`.
///
/// Ordered by weight, then by mask, which puts the vacuum first and lists
/// `100, 010, 001` in that order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BasisState {
    weight: u32,
    mask: u32,
    n: u32,
}

impl BasisState {
    pub fn from_mask(n: usize, mask: u32) -> Self {
        assert!(n <= 32 && (n == 32 || mask >> n == 0), "mask wider than n");
        BasisState {
            weight: mask.count_ones(),
            mask,
            n: n as u32,
        }
    }

    /// From explicit occupations; each entry must be 0 or 1.
    pub fn from_bits(theta: &[u8]) -> Result<Self> {
        if theta.len() > 32 {
            return Err(Error::Capacity("occupation vector longer than 32".into()));
        }
        let mut mask = 0u32;
        for (i, &t) in theta.iter().enumerate() {
            match t {
                0 => {}
                1 => mask |= 1 << i,
                other => {
                    return Err(Error::InvalidParams(format!(
                        "occupation θ_{} = {other} is not 0 or 1",
                        i + 1
                    )))
                }
            }
        }
        Ok(Self::from_mask(theta.len(), mask))
    }

    pub fn vacuum(n: usize) -> Self {
        Self::from_mask(n, 0)
    }

    pub fn mask(&self) -> u32 {
        self.mask
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    /// `|θ|`.
    pub fn weight(&self) -> u32 {
        self.weight
    }

    pub fn theta(&self) -> Vec<u8> {
        (0..self.n).map(|i| ((self.mask >> i) & 1) as u8).collect()
    }

    /// `θ_i` for orbital `i` (1-based).
    pub fn occupied(&self, i: usize) -> bool {
        (self.mask >> (i - 1)) & 1 == 1
    }

    /// `(-1)^{θ_1+…+θ_{i-1}}` for orbital `i` (1-based).
    pub fn jordan_wigner_sign(&self, i: usize) -> i8 {
        let below = self.mask & ((1u32 << (i - 1)) - 1);
        if below.count_ones().is_multiple_of(2) {
            1
        } else {
            -1
        }
    }

    pub fn with_toggled(&self, i: usize) -> Self {
        Self::from_mask(self.n as usize, self.mask ^ (1 << (i - 1)))
    }
}

impl fmt::Display for BasisState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for t in self.theta() {
            write!(f, "{t}")?;
        }
        Ok(())
    }
}

/// Lists every `θ ∈ {0,1}^n` with `|θ| ≤ p` in basis order.
pub fn enumerate_basis(spec: FockSpec) -> Vec<BasisState> {
    let n = spec.n;
    let mut states: Vec<BasisState> = (0..(1u32 << n))
        .filter(|m| u64::from(m.count_ones()) <= spec.p)
        .map(|m| BasisState::from_mask(n, m))
        .collect();
    states.sort();
    states
}

/// Enumerated basis with a reverse index.
#[derive(Debug, Clone)]
pub struct FockBasis {
    spec: FockSpec,
    states: Vec<BasisState>,
    index: HashMap<u32, usize>,
}

impl FockBasis {
    pub fn new(spec: FockSpec) -> Self {
        let states = enumerate_basis(spec);
        let index = states.iter().enumerate().map(|(k, s)| (s.mask, k)).collect();
        FockBasis {
            spec,
            states,
            index,
        }
    }

    pub fn spec(&self) -> FockSpec {
        self.spec
    }

    pub fn dim(&self) -> usize {
        self.states.len()
    }

    pub fn states(&self) -> &[BasisState] {
        &self.states
    }

    pub fn state(&self, k: usize) -> BasisState {
        self.states[k]
    }

    pub fn index_of(&self, s: &BasisState) -> Option<usize> {
        if s.n() != self.spec.n {
            return None;
        }
        self.index.get(&s.mask).copied()
    }
}

/// Generator identity of an [`OperatorMatrix`]. Orbital indices are 1-based;
/// index 0 in [`OperatorKind::Weyl`] is the extra even index of `gl(1|n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum OperatorKind {
    Create(usize),
    Annihilate(usize),
    /// `N_i = e_ii`.
    Number(usize),
    /// `N_0 = e_00`.
    Number0,
    Weyl(usize, usize),
    /// `H = Σ ε_i N_i`.
    Hamiltonian(Vec<BigRational>),
    /// `f_i^+ / √p`.
    QuasiCreate(usize),
    /// `f_i^- / √p`.
    QuasiAnnihilate(usize),
    /// Canonical Fermi operator on the identified space `W(n)`.
    FermiCreate(usize),
    FermiAnnihilate(usize),
}

impl fmt::Display for OperatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use OperatorKind::*;
        match self {
            Create(i) => write!(f, "create({i})"),
            Annihilate(i) => write!(f, "annihilate({i})"),
            Number(i) => write!(f, "number({i})"),
            Number0 => write!(f, "number0"),
            Weyl(i, j) => write!(f, "weyl({i},{j})"),
            Hamiltonian(eps) => {
                let parts: Vec<String> = eps.iter().map(|e| e.to_string()).collect();
                write!(f, "hamiltonian({})", parts.join(","))
            }
            QuasiCreate(i) => write!(f, "quasi_create({i})"),
            QuasiAnnihilate(i) => write!(f, "quasi_annihilate({i})"),
            FermiCreate(i) => write!(f, "fermi_create({i})"),
            FermiAnnihilate(i) => write!(f, "fermi_annihilate({i})"),
        }
    }
}

impl FromStr for OperatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "number0" {
            return Ok(OperatorKind::Number0);
        }
        let (name, rest) = s
            .split_once('(')
            .ok_or_else(|| Error::Parse(format!("bad operator kind {s}")))?;
        let args = rest
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("bad operator kind {s}")))?;
        let index = |a: &str| -> Result<usize> {
            a.trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad index in {s}")))
        };
        Ok(match name {
            "create" => OperatorKind::Create(index(args)?),
            "annihilate" => OperatorKind::Annihilate(index(args)?),
            "number" => OperatorKind::Number(index(args)?),
            "quasi_create" => OperatorKind::QuasiCreate(index(args)?),
            "quasi_annihilate" => OperatorKind::QuasiAnnihilate(index(args)?),
            "fermi_create" => OperatorKind::FermiCreate(index(args)?),
            "fermi_annihilate" => OperatorKind::FermiAnnihilate(index(args)?),
            "weyl" => {
                let (a, b) = args
                    .split_once(',')
                    .ok_or_else(|| Error::Parse(format!("weyl needs two indices: {s}")))?;
                OperatorKind::Weyl(index(a)?, index(b)?)
            }
            "hamiltonian" => OperatorKind::Hamiltonian(
                args.split(',').map(parse_rational).collect::<Result<_>>()?,
            ),
            _ => return Err(Error::Parse(format!("unknown operator kind {name}"))),
        })
    }
}

/// A generator of `gl(1|n)` (or a related operator) represented on `W(p,n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorMatrix {
    spec: FockSpec,
    kind: OperatorKind,
    matrix: SparseMatrix<Amplitude>,
}

impl OperatorMatrix {
    pub fn spec(&self) -> FockSpec {
        self.spec
    }

    pub fn kind(&self) -> &OperatorKind {
        &self.kind
    }

    pub fn matrix(&self) -> &SparseMatrix<Amplitude> {
        &self.matrix
    }

    pub fn into_matrix(self) -> SparseMatrix<Amplitude> {
        self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    /// `⟨row|op|col⟩` between basis states.
    pub fn element(&self, basis: &FockBasis, row: &BasisState, col: &BasisState) -> Amplitude {
        match (basis.index_of(row), basis.index_of(col)) {
            (Some(r), Some(c)) => self.matrix.get(r, c).cloned().unwrap_or_else(Amplitude::zero),
            _ => Amplitude::zero(),
        }
    }

    /// JSON triplet form
    /// `{dim, kind, entries: [[row, col, sign, radicand_num, radicand_den]]}`.
    pub fn to_json(&self) -> serde_json::Value {
        let entries: Vec<serde_json::Value> = self
            .matrix
            .iter()
            .map(|(r, c, a)| {
                serde_json::json!([
                    r,
                    c,
                    a.sign(),
                    big_to_json(a.radicand().numer()),
                    big_to_json(a.radicand().denom())
                ])
            })
            .collect();
        serde_json::json!({
            "p": self.spec.p,
            "n": self.spec.n,
            "dim": self.dim(),
            "kind": self.kind.to_string(),
            "entries": entries,
        })
    }

    pub fn from_json(v: &serde_json::Value) -> Result<Self> {
        let bad = |what: &str| Error::Parse(format!("operator JSON: {what}"));
        let p = v["p"].as_u64().ok_or_else(|| bad("p"))?;
        let n = v["n"].as_u64().ok_or_else(|| bad("n"))? as usize;
        let dim = v["dim"].as_u64().ok_or_else(|| bad("dim"))? as usize;
        let kind: OperatorKind = v["kind"].as_str().ok_or_else(|| bad("kind"))?.parse()?;
        let spec = FockSpec::new(p, n)?;
        if dim != spec.dimension() {
            return Err(Error::DimensionMismatch(format!(
                "dim {dim} does not match W({p},{n})"
            )));
        }
        let mut matrix = SparseMatrix::zeros(dim, dim);
        for e in v["entries"].as_array().ok_or_else(|| bad("entries"))? {
            let e = e.as_array().filter(|a| a.len() == 5).ok_or_else(|| bad("entry"))?;
            let r = e[0].as_u64().ok_or_else(|| bad("row"))? as usize;
            let c = e[1].as_u64().ok_or_else(|| bad("col"))? as usize;
            let s = e[2].as_i64().ok_or_else(|| bad("sign"))?;
            let num = big_from_json(&e[3]).ok_or_else(|| bad("radicand_num"))?;
            let den = big_from_json(&e[4]).ok_or_else(|| bad("radicand_den"))?;
            if r >= dim || c >= dim || den.is_zero() || !(-1..=1).contains(&s) {
                return Err(bad("entry out of range"));
            }
            matrix.set(r, c, Amplitude::new(s as i8, BigRational::new(num, den)));
        }
        Ok(OperatorMatrix { spec, kind, matrix })
    }
}

fn big_to_json(v: &BigInt) -> serde_json::Value {
    match i64::try_from(v) {
        Ok(x) => serde_json::Value::from(x),
        Err(_) => serde_json::Value::from(v.to_string()),
    }
}

fn big_from_json(v: &serde_json::Value) -> Option<BigInt> {
    if let Some(x) = v.as_i64() {
        return Some(BigInt::from(x));
    }
    v.as_str().and_then(|s| s.parse().ok())
}

fn check_orbital(spec: FockSpec, i: usize) -> Result<()> {
    if i == 0 || i > spec.n {
        return Err(Error::InvalidIndex(format!(
            "orbital {i} outside 1..={}",
            spec.n
        )));
    }
    Ok(())
}

fn int(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Builds the matrix of `kind` on the basis of `W(p, n)`.
pub fn build_operator(spec: FockSpec, kind: OperatorKind) -> Result<OperatorMatrix> {
    let basis = FockBasis::new(spec);
    build_operator_on(&basis, kind)
}

/// As [`build_operator`], reusing an enumerated basis.
pub fn build_operator_on(basis: &FockBasis, kind: OperatorKind) -> Result<OperatorMatrix> {
    use OperatorKind::*;
    let spec = basis.spec();
    let p = spec.p as i64;
    let dim = basis.dim();
    let mut m = SparseMatrix::zeros(dim, dim);

    // Moves one particle into (create) or out of (annihilate) orbital i with
    // the given radicand as a function of |θ| before the move.
    let mut ladder = |i: usize, create: bool, radicand: &dyn Fn(i64) -> BigRational| -> Result<()> {
        check_orbital(spec, i)?;
        for (col, s) in basis.states().iter().enumerate() {
            if s.occupied(i) == create {
                continue;
            }
            let target = s.with_toggled(i);
            let Some(row) = basis.index_of(&target) else {
                continue;
            };
            let amp = Amplitude::new(s.jordan_wigner_sign(i), radicand(i64::from(s.weight())));
            m.set(row, col, amp);
        }
        Ok(())
    };

    match &kind {
        Create(i) => ladder(*i, true, &|w| int(p - w))?,
        Annihilate(i) => ladder(*i, false, &|w| int(p - w + 1))?,
        QuasiCreate(i) => ladder(*i, true, &|w| BigRational::new((p - w).into(), p.into()))?,
        QuasiAnnihilate(i) => {
            ladder(*i, false, &|w| BigRational::new((p - w + 1).into(), p.into()))?
        }
        FermiCreate(i) | FermiAnnihilate(i) => {
            if !spec.is_typical() {
                return Err(Error::Precondition(format!(
                    "Fermi operators need p >= n (got p = {}, n = {})",
                    spec.p, spec.n
                )));
            }
            ladder(*i, matches!(kind, FermiCreate(_)), &|_| int(1))?
        }
        Number(i) => {
            check_orbital(spec, *i)?;
            for (k, s) in basis.states().iter().enumerate() {
                if s.occupied(*i) {
                    m.set(k, k, Amplitude::one());
                }
            }
        }
        Number0 => {
            for (k, s) in basis.states().iter().enumerate() {
                m.set(k, k, Amplitude::from_int(p - i64::from(s.weight())));
            }
        }
        Hamiltonian(eps) => {
            if eps.len() != spec.n {
                return Err(Error::DimensionMismatch(format!(
                    "{} energies for {} orbitals",
                    eps.len(),
                    spec.n
                )));
            }
            for (k, s) in basis.states().iter().enumerate() {
                let e: BigRational = (1..=spec.n)
                    .filter(|&i| s.occupied(i))
                    .map(|i| eps[i - 1].clone())
                    .sum();
                m.set(k, k, Amplitude::from_rational(&e));
            }
        }
        Weyl(i, j) => {
            let (i, j) = (*i, *j);
            if i > spec.n || j > spec.n {
                return Err(Error::InvalidIndex(format!(
                    "weyl({i},{j}) outside 0..={}",
                    spec.n
                )));
            }
            let direct = match (i, j) {
                (0, 0) => Number0,
                (i, 0) => Create(i),
                (0, j) => Annihilate(j),
                (i, j) if i == j => Number(i),
                _ => {
                    // e_ij moves a particle from orbital j to orbital i.
                    for (col, s) in basis.states().iter().enumerate() {
                        if !s.occupied(j) || s.occupied(i) {
                            continue;
                        }
                        let mid = s.with_toggled(j);
                        let target = mid.with_toggled(i);
                        let row = basis.index_of(&target).expect("weight preserved");
                        let sign = s.jordan_wigner_sign(j) * mid.jordan_wigner_sign(i);
                        m.set(row, col, Amplitude::new(sign, int(1)));
                    }
                    return Ok(OperatorMatrix {
                        spec,
                        kind,
                        matrix: m,
                    });
                }
            };
            let inner = build_operator_on(basis, direct)?;
            return Ok(OperatorMatrix {
                spec,
                kind,
                matrix: inner.matrix,
            });
        }
    }
    Ok(OperatorMatrix {
        spec,
        kind,
        matrix: m,
    })
}

/// A vector in `W(p,n)`: exact amplitudes, or floats once an exact sum was
/// not representable.
#[derive(Debug, Clone, PartialEq)]
pub enum StateVector {
    Exact(BTreeMap<BasisState, Amplitude>),
    Float(BTreeMap<BasisState, f64>),
}

impl StateVector {
    /// `|θ⟩` with unit amplitude.
    pub fn unit(s: BasisState) -> Self {
        StateVector::Exact(BTreeMap::from([(s, Amplitude::one())]))
    }

    pub fn is_zero(&self) -> bool {
        match self {
            StateVector::Exact(m) => m.values().all(|a| a.is_zero()),
            StateVector::Float(m) => m.values().all(|&a| a == 0.0),
        }
    }

    /// Component along `s` as a float.
    pub fn component(&self, s: &BasisState) -> f64 {
        match self {
            StateVector::Exact(m) => m.get(s).map_or(0.0, |a| a.to_f64()),
            StateVector::Float(m) => m.get(s).copied().unwrap_or(0.0),
        }
    }

    fn to_float(&self) -> BTreeMap<BasisState, f64> {
        match self {
            StateVector::Exact(m) => m.iter().map(|(k, a)| (*k, a.to_f64())).collect(),
            StateVector::Float(m) => m.clone(),
        }
    }
}

/// Float tolerance used once exact arithmetic is abandoned.
pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Matrix-vector product `op · vec`. Stays exact while every accumulated sum
/// collapses; otherwise the whole product is redone in `f64`.
pub fn apply(op: &OperatorMatrix, vec: &StateVector) -> Result<StateVector> {
    let basis = FockBasis::new(op.spec);
    let keys: Vec<BasisState> = match vec {
        StateVector::Exact(m) => m.keys().copied().collect(),
        StateVector::Float(m) => m.keys().copied().collect(),
    };
    for k in &keys {
        if basis.index_of(k).is_none() {
            return Err(Error::DimensionMismatch(format!(
                "state {k} is not a basis vector of W({},{})",
                op.spec.p, op.spec.n
            )));
        }
    }
    if let StateVector::Exact(m) = vec {
        let mut col = SparseMatrix::<Amplitude>::zeros(basis.dim(), 1);
        for (s, a) in m {
            col.set(basis.index_of(s).expect("checked"), 0, a.clone());
        }
        if let Ok(out) = op.matrix.mul(&col) {
            return Ok(StateVector::Exact(
                out.iter()
                    .map(|(r, _, a)| (basis.state(r), a.clone()))
                    .collect(),
            ));
        }
    }
    let mut col = SparseMatrix::<f64>::zeros(basis.dim(), 1);
    for (s, a) in vec.to_float() {
        col.set(basis.index_of(&s).expect("checked"), 0, a);
    }
    let out = op.matrix.to_float().mul(&col).expect("float arithmetic is total");
    Ok(StateVector::Float(
        out.iter().map(|(r, _, a)| (basis.state(r), *a)).collect(),
    ))
}
