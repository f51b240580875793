//! Machine verification of the operator identities of `W(p, n)`.
//!
//! Every suite is written once, generically over the matrix entry type. The
//! runner evaluates it in exact [`Amplitude`] arithmetic and only falls back
//! to `f64` (tolerance [`FLOAT_TOLERANCE`]) if some sum of square roots does
//! not collapse.

use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{
    build_operator_on, Amplitude, Entry, FockBasis, FockSpec, Inexact, OperatorKind,
    SparseMatrix, FLOAT_TOLERANCE,
};
use crate::error::{Error, Result};

/// Outcome of one identity suite.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub identity: String,
    pub p: u64,
    pub n: usize,
    /// Verified in exact amplitude arithmetic.
    pub exact: bool,
    /// Largest entrywise `|lhs - rhs|`; always 0 in exact mode.
    pub max_residual: f64,
    /// Number of matrix identities checked.
    pub checks: usize,
    pub counterexample: Option<Counterexample>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// First mismatching entry found.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Counterexample {
    pub identity: String,
    pub row: String,
    pub col: String,
    pub expected: String,
    pub got: String,
}

/// One matrix identity `lhs = rhs`.
pub struct Check<E> {
    pub name: String,
    pub lhs: SparseMatrix<E>,
    pub rhs: SparseMatrix<E>,
}

impl<E> Check<E> {
    pub fn new(name: impl Into<String>, lhs: SparseMatrix<E>, rhs: SparseMatrix<E>) -> Self {
        Check {
            name: name.into(),
            lhs,
            rhs,
        }
    }
}

/// Operators of `W(p, n)` in a given entry type. Quasi-Fermi and Fermi
/// families are empty unless `p ≥ n`.
#[derive(Clone)]
pub struct Generators<E> {
    pub spec: FockSpec,
    pub basis: FockBasis,
    pub create: Vec<SparseMatrix<E>>,
    pub annihilate: Vec<SparseMatrix<E>>,
    pub number: Vec<SparseMatrix<E>>,
    pub number0: SparseMatrix<E>,
    /// `weyl_direct[i][j]` is `e_ij` built from its action on the basis.
    pub weyl_direct: Vec<Vec<SparseMatrix<E>>>,
    pub quasi_create: Vec<SparseMatrix<E>>,
    pub quasi_annihilate: Vec<SparseMatrix<E>>,
    pub fermi_create: Vec<SparseMatrix<E>>,
    pub fermi_annihilate: Vec<SparseMatrix<E>>,
    /// `|0⟩` as a `dim × 1` column.
    pub vacuum: SparseMatrix<E>,
}

impl Generators<Amplitude> {
    pub fn build(spec: FockSpec) -> Result<Self> {
        let basis = FockBasis::new(spec);
        let n = spec.n();
        let family = |f: fn(usize) -> OperatorKind| -> Result<Vec<SparseMatrix<Amplitude>>> {
            (1..=n)
                .map(|i| Ok(build_operator_on(&basis, f(i))?.into_matrix()))
                .collect()
        };
        let weyl_direct = (0..=n)
            .map(|i| {
                (0..=n)
                    .map(|j| Ok(build_operator_on(&basis, OperatorKind::Weyl(i, j))?.into_matrix()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        let typical = spec.is_typical();
        let maybe = |f: fn(usize) -> OperatorKind| {
            if typical {
                family(f)
            } else {
                Ok(Vec::new())
            }
        };
        let mut vacuum = SparseMatrix::zeros(basis.dim(), 1);
        vacuum.set(0, 0, Amplitude::one());
        Ok(Generators {
            spec,
            create: family(OperatorKind::Create)?,
            annihilate: family(OperatorKind::Annihilate)?,
            number: family(OperatorKind::Number)?,
            number0: build_operator_on(&basis, OperatorKind::Number0)?.into_matrix(),
            weyl_direct,
            quasi_create: maybe(OperatorKind::QuasiCreate)?,
            quasi_annihilate: maybe(OperatorKind::QuasiAnnihilate)?,
            fermi_create: maybe(OperatorKind::FermiCreate)?,
            fermi_annihilate: maybe(OperatorKind::FermiAnnihilate)?,
            vacuum,
            basis,
        })
    }

    pub fn to_float(&self) -> Generators<f64> {
        let conv = |v: &Vec<SparseMatrix<Amplitude>>| v.iter().map(|m| m.to_float()).collect();
        Generators {
            spec: self.spec,
            basis: self.basis.clone(),
            create: conv(&self.create),
            annihilate: conv(&self.annihilate),
            number: conv(&self.number),
            number0: self.number0.to_float(),
            weyl_direct: self.weyl_direct.iter().map(conv).collect(),
            quasi_create: conv(&self.quasi_create),
            quasi_annihilate: conv(&self.quasi_annihilate),
            fermi_create: conv(&self.fermi_create),
            fermi_annihilate: conv(&self.fermi_annihilate),
            vacuum: self.vacuum.to_float(),
        }
    }
}

impl<E: Entry> Generators<E> {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }

    pub fn zero(&self) -> SparseMatrix<E> {
        SparseMatrix::zeros(self.dim(), self.dim())
    }

    pub fn zero_vector(&self) -> SparseMatrix<E> {
        SparseMatrix::zeros(self.dim(), 1)
    }

    pub fn scalar(&self, v: i64) -> SparseMatrix<E> {
        SparseMatrix::scalar(self.dim(), rat::<E>(v, 1))
    }

    /// `e_ij` from the Jacobson generators: `f_i^+`, `f_j^-`, `N_0`, or
    /// `{f_i^+, f_j^-} - δ_ij N_0` when both indices are orbitals.
    pub fn weyl(&self, i: usize, j: usize) -> std::result::Result<SparseMatrix<E>, Inexact> {
        Ok(match (i, j) {
            (0, 0) => self.number0.clone(),
            (i, 0) => self.create[i - 1].clone(),
            (0, j) => self.annihilate[j - 1].clone(),
            (i, j) => {
                let ac = self.create[i - 1].anticommutator(&self.annihilate[j - 1])?;
                if i == j {
                    ac.sub(&self.number0)?
                } else {
                    ac
                }
            }
        })
    }
}

fn rat<E: Entry>(num: i64, den: i64) -> E {
    E::from_rational(&BigRational::new(BigInt::from(num), BigInt::from(den)))
}

fn delta(a: usize, b: usize) -> i64 {
    i64::from(a == b)
}

/// `Σ_t c_t M_t` over the nonzero coefficients.
fn combo<E: Entry>(
    zero: SparseMatrix<E>,
    terms: &[(i64, &SparseMatrix<E>)],
) -> std::result::Result<SparseMatrix<E>, Inexact> {
    let mut acc = zero;
    for &(c, m) in terms {
        if c != 0 {
            acc = acc.add(&m.scale(&rat(c, 1)))?;
        }
    }
    Ok(acc)
}

/// `deg(e_ij)`: odd exactly when one index is 0.
fn degree(i: usize, j: usize) -> u8 {
    u8::from((i == 0) != (j == 0))
}

type Checks<E> = std::result::Result<Vec<Check<E>>, Inexact>;

/// A family of matrix identities on `W(p, n)`.
pub trait Suite: Sync {
    fn name(&self) -> &'static str;

    fn precondition(&self, _spec: FockSpec) -> Result<()> {
        Ok(())
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E>;
}

/// Runs a suite exactly, falling back to floats on an inexact sum.
pub fn run_suite<S: Suite>(spec: FockSpec, suite: &S) -> Result<VerificationReport> {
    suite.precondition(spec)?;
    let g = Generators::build(spec)?;
    run_suite_on(&g, suite)
}

pub fn run_suite_on<S: Suite>(g: &Generators<Amplitude>, suite: &S) -> Result<VerificationReport> {
    suite.precondition(g.spec)?;
    let mut report = VerificationReport {
        identity: suite.name().to_string(),
        p: g.spec.p(),
        n: g.spec.n(),
        exact: true,
        max_residual: 0.0,
        checks: 0,
        counterexample: None,
    };
    match suite.checks(g) {
        Ok(checks) => {
            report.checks = checks.len();
            report.counterexample = checks.par_iter().find_map_first(|c| exact_mismatch(g, c));
        }
        Err(Inexact) => {
            let gf = g.to_float();
            let checks = suite
                .checks(&gf)
                .expect("float arithmetic never reports inexact sums");
            report.exact = false;
            report.checks = checks.len();
            for c in &checks {
                let (residual, at) = float_residual(c);
                report.max_residual = report.max_residual.max(residual);
                if residual > FLOAT_TOLERANCE && report.counterexample.is_none() {
                    let (r, col) = at.expect("nonzero residual has a location");
                    let get = |m: &SparseMatrix<f64>| m.get(r, col).copied().unwrap_or(0.0);
                    report.counterexample = Some(Counterexample {
                        identity: c.name.clone(),
                        row: label(&gf, r, c.lhs.rows()),
                        col: label(&gf, col, c.lhs.cols()),
                        expected: format!("{:e}", get(&c.rhs)),
                        got: format!("{:e}", get(&c.lhs)),
                    });
                }
            }
        }
    }
    Ok(report)
}

fn label<E>(g: &Generators<E>, k: usize, extent: usize) -> String {
    if extent == g.basis.dim() {
        g.basis.state(k).to_string()
    } else {
        k.to_string()
    }
}

fn exact_mismatch(g: &Generators<Amplitude>, c: &Check<Amplitude>) -> Option<Counterexample> {
    assert_eq!(
        (c.lhs.rows(), c.lhs.cols()),
        (c.rhs.rows(), c.rhs.cols()),
        "shape mismatch in {}",
        c.name
    );
    let zero = Amplitude::zero();
    let keys = c.lhs.iter().chain(c.rhs.iter()).map(|(r, col, _)| (r, col));
    for (r, col) in keys {
        let a = c.lhs.get(r, col).unwrap_or(&zero);
        let b = c.rhs.get(r, col).unwrap_or(&zero);
        if a != b {
            return Some(Counterexample {
                identity: c.name.clone(),
                row: label(g, r, c.lhs.rows()),
                col: label(g, col, c.lhs.cols()),
                expected: b.to_string(),
                got: a.to_string(),
            });
        }
    }
    None
}

fn float_residual(c: &Check<f64>) -> (f64, Option<(usize, usize)>) {
    let diff = c.lhs.sub(&c.rhs).expect("float");
    let mut best = (0.0, None);
    for (r, col, v) in diff.iter() {
        if v.abs() > best.0 {
            best = (v.abs(), Some((r, col)));
        }
    }
    best
}

fn require_typical(spec: FockSpec) -> Result<()> {
    if spec.is_typical() {
        Ok(())
    } else {
        Err(Error::Precondition(format!(
            "identification with the Fermi Fock space needs p >= n (got p = {}, n = {})",
            spec.p(),
            spec.n()
        )))
    }
}

/// `f_i^-|0⟩ = 0` and `f_i^- f_j^+|0⟩ = p δ_ij |0⟩`.
pub struct Vacuum;

impl Suite for Vacuum {
    fn name(&self) -> &'static str {
        "vacuum"
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let p = g.spec.p() as i64;
        let mut out = Vec::new();
        for i in 1..=n {
            out.push(Check::new(
                format!("f{i}- |0> = 0"),
                g.annihilate[i - 1].mul(&g.vacuum)?,
                g.zero_vector(),
            ));
            for j in 1..=n {
                let lhs = g.annihilate[i - 1].mul(&g.create[j - 1].mul(&g.vacuum)?)?;
                let rhs = g.vacuum.scale(&rat(p * delta(i, j), 1));
                out.push(Check::new(format!("f{i}- f{j}+ |0> = p d{i}{j} |0>"), lhs, rhs));
            }
        }
        Ok(out)
    }
}

/// Defining triple relations of the Jacobson generators, plus integrality
/// of the anticommutators `{f_i^+, f_j^-}`.
pub struct TripleRelations;

impl Suite for TripleRelations {
    fn name(&self) -> &'static str {
        "triple"
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let (cr, an) = (&g.create, &g.annihilate);
        let mut out = Vec::new();
        for i in 0..n {
            for j in 0..n {
                let (a, b) = (i + 1, j + 1);
                out.push(Check::new(
                    format!("{{f{a}+, f{b}+}} = 0"),
                    cr[i].anticommutator(&cr[j])?,
                    g.zero(),
                ));
                out.push(Check::new(
                    format!("{{f{a}-, f{b}-}} = 0"),
                    an[i].anticommutator(&an[j])?,
                    g.zero(),
                ));
                let ac = cr[i].anticommutator(&an[j])?;
                out.push(Check::new(
                    format!("{{f{a}+, f{b}-}} is integral"),
                    ac.clone(),
                    ac.map(|v| v.nearest_integer()),
                ));
                for k in 0..n {
                    let c = k + 1;
                    out.push(Check::new(
                        format!("[{{f{a}+, f{b}-}}, f{c}+] = d{b}{c} f{a}+ - d{a}{b} f{c}+"),
                        ac.commutator(&cr[k])?,
                        combo(g.zero(), &[(delta(j, k), &cr[i]), (-delta(i, j), &cr[k])])?,
                    ));
                    out.push(Check::new(
                        format!("[{{f{a}+, f{b}-}}, f{c}-] = -d{a}{c} f{b}- + d{a}{b} f{c}-"),
                        ac.commutator(&an[k])?,
                        combo(g.zero(), &[(-delta(i, k), &an[j]), (delta(i, j), &an[k])])?,
                    ));
                }
            }
        }
        Ok(out)
    }
}

/// Super-bracket of the Weyl generators `e_ij` (`i, j ∈ 0..=n`), the
/// agreement of both constructions of `e_ij`, and `N_0 + Σ N_i = p`.
pub struct WeylSuperbracket;

impl Suite for WeylSuperbracket {
    fn name(&self) -> &'static str {
        "weyl"
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let m = n + 1;
        let mut e = Vec::with_capacity(m);
        let mut out = Vec::new();
        for i in 0..m {
            let mut row = Vec::with_capacity(m);
            for j in 0..m {
                let w = g.weyl(i, j)?;
                out.push(Check::new(
                    format!("e{i}{j}: anticommutator route = direct action"),
                    w.clone(),
                    g.weyl_direct[i][j].clone(),
                ));
                row.push(w);
            }
            e.push(row);
        }
        let mut cartan = g.number0.clone();
        for ni in &g.number {
            cartan = cartan.add(ni)?;
        }
        out.push(Check::new("N0 + sum Ni = p", cartan, g.scalar(g.spec.p() as i64)));

        let quads: Vec<(usize, usize, usize, usize)> = (0..m)
            .flat_map(|i| (0..m).flat_map(move |j| (0..m).flat_map(move |k| (0..m).map(move |l| (i, j, k, l)))))
            .collect();
        let brackets: Vec<Check<E>> = quads
            .par_iter()
            .map(|&(i, j, k, l)| {
                let sign: i64 = if degree(i, j) * degree(k, l) == 1 { -1 } else { 1 };
                let lhs = e[i][j].mul(&e[k][l])?.sub(&e[k][l].mul(&e[i][j])?.scale(&rat(sign, 1)))?;
                let rhs = combo(
                    g.zero(),
                    &[(delta(j, k), &e[i][l]), (-sign * delta(i, l), &e[k][j])],
                )?;
                Ok(Check::new(format!("[[e{i}{j}, e{k}{l}]]"), lhs, rhs))
            })
            .collect::<std::result::Result<_, Inexact>>()?;
        out.extend(brackets);
        Ok(out)
    }
}

/// Hermiticity `(f_i^+)ᵀ = f_i^-`, ladder relations `[H, f_i^±] = ±ε_i f_i^±`,
/// `H|0⟩ = 0`, and (for `n ≥ 2`) the rewriting of `H` through anticommutators.
pub struct HermiticityLadder {
    pub energies: Vec<BigRational>,
}

impl Suite for HermiticityLadder {
    fn name(&self) -> &'static str {
        "hermiticity"
    }

    fn precondition(&self, spec: FockSpec) -> Result<()> {
        if self.energies.len() != spec.n() {
            return Err(Error::DimensionMismatch(format!(
                "{} energies for {} orbitals",
                self.energies.len(),
                spec.n()
            )));
        }
        Ok(())
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let eps: Vec<E> = self.energies.iter().map(E::from_rational).collect();
        let mut h = g.zero();
        for (i, ni) in g.number.iter().enumerate() {
            h = h.add(&ni.scale(&eps[i]))?;
        }
        let mut out = vec![Check::new("H |0> = 0", h.mul(&g.vacuum)?, g.zero_vector())];
        for i in 0..n {
            let a = i + 1;
            out.push(Check::new(
                format!("(f{a}+)^T = f{a}-"),
                g.create[i].transpose(),
                g.annihilate[i].clone(),
            ));
            out.push(Check::new(
                format!("[H, f{a}+] = e{a} f{a}+"),
                h.commutator(&g.create[i])?,
                g.create[i].scale(&eps[i]),
            ));
            out.push(Check::new(
                format!("[H, f{a}-] = -e{a} f{a}-"),
                h.commutator(&g.annihilate[i])?,
                g.annihilate[i].scale(&eps[i].neg()),
            ));
        }
        if n >= 2 {
            let acs: Vec<SparseMatrix<E>> = (0..n)
                .map(|i| g.create[i].anticommutator(&g.annihilate[i]))
                .collect::<std::result::Result<_, _>>()?;
            let mut rest = g.scalar(g.spec.p() as i64);
            for ac in &acs {
                rest = rest.sub(ac)?;
            }
            let rest = rest.scale(&rat(1, n as i64 - 1));
            let mut hf = g.zero();
            for (i, ac) in acs.iter().enumerate() {
                hf = hf.add(&ac.add(&rest)?.scale(&eps[i]))?;
            }
            out.push(Check::new("H via anticommutators", hf, h.clone()));
        }
        Ok(out)
    }
}

/// The anticommutators of the quasi-Fermi operators `f_i^±/√p` on `W(n)`.
pub struct QuasiFermiAnticommutators;

impl Suite for QuasiFermiAnticommutators {
    fn name(&self) -> &'static str {
        "quasi"
    }

    fn precondition(&self, spec: FockSpec) -> Result<()> {
        require_typical(spec)
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let p = g.spec.p() as i64;
        let (qc, qa) = (&g.quasi_create, &g.quasi_annihilate);
        let mut out = Vec::new();
        for i in 1..=n {
            for j in 1..=n {
                out.push(Check::new(
                    format!("{{F{i}+, F{j}+}} = 0"),
                    qc[i - 1].anticommutator(&qc[j - 1])?,
                    g.zero(),
                ));
                out.push(Check::new(
                    format!("{{F{i}-, F{j}-}} = 0"),
                    qa[i - 1].anticommutator(&qa[j - 1])?,
                    g.zero(),
                ));
                let mut expected = g.zero();
                for (col, s) in g.basis.states().iter().enumerate() {
                    let w = i64::from(s.weight());
                    if i == j {
                        let ti = i64::from(s.occupied(i));
                        expected.set(col, col, rat(p + ti - w, p));
                    } else if s.occupied(i) && !s.occupied(j) {
                        let (lo, hi) = (i.min(j), i.max(j));
                        let flips = (lo..=hi).filter(|&k| s.occupied(k)).count();
                        let sign: i64 = if flips % 2 == 0 { 1 } else { -1 };
                        let target = s.with_toggled(i).with_toggled(j);
                        let row = g.basis.index_of(&target).expect("weight preserved");
                        expected.set(row, col, rat(-sign, p));
                    }
                }
                out.push(Check::new(
                    format!("{{F{i}-, F{j}+}}"),
                    qa[i - 1].anticommutator(&qc[j - 1])?,
                    expected,
                ));
            }
        }
        Ok(out)
    }
}

/// The Holstein–Primakoff realization of the Jacobson generators through
/// canonical Fermi operators on `W(n)`.
pub struct HolsteinPrimakoff;

impl Suite for HolsteinPrimakoff {
    fn name(&self) -> &'static str {
        "hp"
    }

    fn precondition(&self, spec: FockSpec) -> Result<()> {
        require_typical(spec)
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let (fc, fa) = (&g.fermi_create, &g.fermi_annihilate);
        // p - Σ F_k^+ F_k^-
        let mut dressing = g.scalar(g.spec.p() as i64);
        for k in 0..n {
            dressing = dressing.sub(&fc[k].mul(&fa[k])?)?;
        }
        let mut sqrt = g.zero();
        for (r, c, v) in dressing.iter() {
            assert_eq!(r, c, "dressing operator is diagonal");
            sqrt.set(r, c, v.checked_sqrt()?);
        }
        let mut out = vec![Check::new("e00 = p - sum Fk+ Fk-", g.number0.clone(), dressing)];
        for i in 0..n {
            let a = i + 1;
            out.push(Check::new(
                format!("f{a}+ = F{a}+ sqrt(p - N)"),
                g.create[i].clone(),
                fc[i].mul(&sqrt)?,
            ));
            out.push(Check::new(
                format!("f{a}- = sqrt(p - N) F{a}-"),
                g.annihilate[i].clone(),
                sqrt.mul(&fa[i])?,
            ));
            out.push(Check::new(
                format!("{{F{a}-, F{a}+}} = 1"),
                fa[i].anticommutator(&fc[i])?,
                g.scalar(1),
            ));
            for j in 0..n {
                let b = j + 1;
                out.push(Check::new(
                    format!("e{a}{b} = F{a}+ F{b}-"),
                    g.weyl_direct[a][b].clone(),
                    fc[i].mul(&fa[j])?,
                ));
            }
        }
        Ok(out)
    }
}

/// Ideal odd-particle relations, valid in `W(1, n)`.
pub struct IdealOddParticle;

impl Suite for IdealOddParticle {
    fn name(&self) -> &'static str {
        "iop"
    }

    fn precondition(&self, spec: FockSpec) -> Result<()> {
        if spec.p() != 1 {
            return Err(Error::Precondition(format!(
                "ideal odd-particle relations hold for p = 1 (got p = {})",
                spec.p()
            )));
        }
        Ok(())
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let (cr, an, n0) = (&g.create, &g.annihilate, &g.number0);
        let mut out = vec![Check::new("N0^2 = N0", n0.mul(n0)?, n0.clone())];
        for i in 0..n {
            let a = i + 1;
            out.push(Check::new(format!("N0 f{a}+ = 0"), n0.mul(&cr[i])?, g.zero()));
            out.push(Check::new(format!("f{a}- N0 = 0"), an[i].mul(n0)?, g.zero()));
            for j in 0..n {
                let b = j + 1;
                out.push(Check::new(format!("f{b}- f{a}- = 0"), an[j].mul(&an[i])?, g.zero()));
                out.push(Check::new(format!("f{a}+ f{b}+ = 0"), cr[i].mul(&cr[j])?, g.zero()));
                out.push(Check::new(
                    format!("f{a}- f{b}+ = d{a}{b} N0"),
                    an[i].mul(&cr[j])?,
                    n0.scale(&rat(delta(i, j), 1)),
                ));
            }
        }
        Ok(out)
    }
}

/// Generalized Pauli principle: `(f_i^+)² = 0`, and any `p + 1` distinct
/// creators annihilate the vacuum when `p < n`.
pub struct PauliPrinciple;

impl Suite for PauliPrinciple {
    fn name(&self) -> &'static str {
        "pauli"
    }

    fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
        let n = g.spec.n();
        let p = g.spec.p() as usize;
        let mut out = Vec::new();
        for i in 0..n {
            out.push(Check::new(
                format!("(f{}+)^2 = 0", i + 1),
                g.create[i].mul(&g.create[i])?,
                g.zero(),
            ));
        }
        if p < n {
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize != p + 1 {
                    continue;
                }
                let mut v = g.vacuum.clone();
                for i in (0..n).rev().filter(|&i| mask >> i & 1 == 1) {
                    v = g.create[i].mul(&v)?;
                }
                out.push(Check::new(
                    format!("{} creators on |0> (mask {mask:#b}) = 0", p + 1),
                    v,
                    g.zero_vector(),
                ));
            }
        }
        Ok(out)
    }
}

pub fn verify_vacuum(spec: FockSpec) -> Result<VerificationReport> {
    run_suite(spec, &Vacuum)
}

pub fn verify_triple_relations(spec: FockSpec) -> Result<VerificationReport> {
    run_suite(spec, &TripleRelations)
}

pub fn verify_weyl_superbracket(spec: FockSpec) -> Result<VerificationReport> {
    run_suite(spec, &WeylSuperbracket)
}

pub fn verify_hermiticity_and_ladder(
    spec: FockSpec,
    energies: &[BigRational],
) -> Result<VerificationReport> {
    run_suite(
        spec,
        &HermiticityLadder {
            energies: energies.to_vec(),
        },
    )
}

pub fn verify_quasi_fermi_anticommutators(spec: FockSpec) -> Result<VerificationReport> {
    run_suite(spec, &QuasiFermiAnticommutators)
}

pub fn verify_holstein_primakoff(spec: FockSpec) -> Result<VerificationReport> {
    run_suite(spec, &HolsteinPrimakoff)
}

pub fn verify_iop(n: usize) -> Result<VerificationReport> {
    run_suite(FockSpec::new(1, n)?, &IdealOddParticle)
}

pub fn verify_pauli_principle(spec: FockSpec) -> Result<VerificationReport> {
    run_suite(spec, &PauliPrinciple)
}

/// Which suites [`verify_suites`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SuiteSelection {
    All,
    Vacuum,
    Triple,
    Weyl,
    Hermiticity,
    Quasi,
    HolsteinPrimakoff,
    Iop,
    Pauli,
}

impl std::str::FromStr for SuiteSelection {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "all" => SuiteSelection::All,
            "vacuum" => SuiteSelection::Vacuum,
            "triple" => SuiteSelection::Triple,
            "weyl" => SuiteSelection::Weyl,
            "hermiticity" | "ladder" => SuiteSelection::Hermiticity,
            "quasi" => SuiteSelection::Quasi,
            "hp" => SuiteSelection::HolsteinPrimakoff,
            "iop" => SuiteSelection::Iop,
            "pauli" => SuiteSelection::Pauli,
            other => return Err(Error::Parse(format!("unknown suite {other}"))),
        })
    }
}

/// Energies `ε_i = i` used when a ladder check needs a Hamiltonian.
pub fn default_energies(n: usize) -> Vec<BigRational> {
    (1..=n as i64).map(|i| BigRational::from_integer(i.into())).collect()
}

/// Runs the selected suites. `All` skips suites whose precondition does not
/// hold for `spec` (Fermi identification for `p < n`, IOP for `p > 1`);
/// naming such a suite explicitly is a precondition error.
pub fn verify_suites(spec: FockSpec, which: SuiteSelection) -> Result<Vec<VerificationReport>> {
    use SuiteSelection::*;
    let g = Generators::build(spec)?;
    let ladder = HermiticityLadder {
        energies: default_energies(spec.n()),
    };
    let one = |s: SuiteSelection| -> Result<VerificationReport> {
        match s {
            Vacuum => run_suite_on(&g, &self::Vacuum),
            Triple => run_suite_on(&g, &TripleRelations),
            Weyl => run_suite_on(&g, &WeylSuperbracket),
            Hermiticity => run_suite_on(&g, &ladder),
            Quasi => run_suite_on(&g, &QuasiFermiAnticommutators),
            HolsteinPrimakoff => run_suite_on(&g, &self::HolsteinPrimakoff),
            Iop => run_suite_on(&g, &IdealOddParticle),
            Pauli => run_suite_on(&g, &PauliPrinciple),
            All => unreachable!(),
        }
    };
    if which != All {
        return Ok(vec![one(which)?]);
    }
    let mut selected = vec![Vacuum, Triple, Weyl, Hermiticity, Pauli];
    if spec.is_typical() {
        selected.extend([Quasi, HolsteinPrimakoff]);
    }
    if spec.p() == 1 {
        selected.push(Iop);
    }
    selected.into_iter().map(one).collect()
}

/// `d(p) = max |ρ(F(p)_i^±) - F_i^±|` over all entries, for each `p`.
pub fn quasi_fermi_deviation(n: usize, p_list: &[u64]) -> Result<Vec<(u64, f64)>> {
    if p_list.is_empty() {
        return Err(Error::InvalidParams("empty list of p values".into()));
    }
    p_list
        .iter()
        .map(|&p| {
            let spec = FockSpec::new(p, n)?;
            require_typical(spec)?;
            let basis = FockBasis::new(spec);
            let mut worst = 0.0f64;
            for i in 1..=n {
                for (quasi, fermi) in [
                    (OperatorKind::QuasiCreate(i), OperatorKind::FermiCreate(i)),
                    (OperatorKind::QuasiAnnihilate(i), OperatorKind::FermiAnnihilate(i)),
                ] {
                    let q = build_operator_on(&basis, quasi)?.into_matrix().to_float();
                    let f = build_operator_on(&basis, fermi)?.into_matrix().to_float();
                    worst = worst.max(q.sub(&f).expect("float").max_abs());
                }
            }
            Ok((p, worst))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: u64, n: usize) -> FockSpec {
        FockSpec::new(p, n).unwrap()
    }

    fn assert_exact_pass(r: &VerificationReport) {
        assert!(r.passed(), "{r:?}");
        assert!(r.exact, "{r:?}");
        assert_eq!(r.max_residual, 0.0);
        assert!(r.checks > 0);
    }

    #[test]
    fn vacuum_examples() {
        assert_exact_pass(&verify_vacuum(spec(2, 3)).unwrap());
        assert_exact_pass(&verify_vacuum(spec(1, 1)).unwrap());
        assert_exact_pass(&verify_vacuum(spec(5, 2)).unwrap());
    }

    #[test]
    fn triple_examples() {
        assert_exact_pass(&verify_triple_relations(spec(2, 3)).unwrap());
        assert_exact_pass(&verify_triple_relations(spec(1, 2)).unwrap());
    }

    #[test]
    fn weyl_examples() {
        let r = verify_weyl_superbracket(spec(2, 2)).unwrap();
        assert_exact_pass(&r);
        // 9 route checks + cartan + 3^4 brackets
        assert_eq!(r.checks, 9 + 1 + 81);
    }

    #[test]
    fn odd_odd_bracket_example() {
        // {e10, e01} = e11 + e00
        let g = Generators::build(spec(2, 2)).unwrap();
        let lhs = g.weyl(1, 0).unwrap().anticommutator(&g.weyl(0, 1).unwrap()).unwrap();
        let rhs = g.weyl(1, 1).unwrap().add(&g.weyl(0, 0).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
        // [e11, e22] = 0
        assert!(g.weyl(1, 1).unwrap().commutator(&g.weyl(2, 2).unwrap()).unwrap().is_zero());
    }

    #[test]
    fn ladder_examples() {
        let q = |v: i64| BigRational::from_integer(v.into());
        assert_exact_pass(&verify_hermiticity_and_ladder(spec(2, 2), &[q(1), q(2)]).unwrap());
        assert_exact_pass(&verify_hermiticity_and_ladder(spec(2, 2), &[q(0), q(0)]).unwrap());
        let half = BigRational::new(1.into(), 2.into());
        assert_exact_pass(
            &verify_hermiticity_and_ladder(spec(3, 3), &[half.clone(), q(-2), half]).unwrap(),
        );
        assert!(verify_hermiticity_and_ladder(spec(2, 2), &[q(1)]).is_err());
    }

    #[test]
    fn uniform_ladder_commutator() {
        let g = Generators::build(spec(3, 3)).unwrap();
        let mut h = g.zero();
        for ni in &g.number {
            h = h.add(ni).unwrap();
        }
        assert_eq!(h.commutator(&g.create[1]).unwrap(), g.create[1]);
    }

    #[test]
    fn quasi_examples() {
        assert_exact_pass(&verify_quasi_fermi_anticommutators(spec(2, 2)).unwrap());
        assert!(matches!(
            verify_quasi_fermi_anticommutators(spec(1, 2)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn quasi_coefficients() {
        use super::super::BasisState;
        let g = Generators::build(spec(2, 2)).unwrap();
        let st = |b: &[u8]| g.basis.index_of(&BasisState::from_bits(b).unwrap()).unwrap();
        let ac = g.quasi_annihilate[0].anticommutator(&g.quasi_create[0]).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(ac.get(st(&[0, 1]), st(&[0, 1])), Some(&Amplitude::from_rational(&half)));
        assert_eq!(ac.get(st(&[0, 0]), st(&[0, 0])), Some(&Amplitude::one()));

        // p = 4, {F1-, F2+} |10⟩ = +1/4 |01⟩
        let g = Generators::build(spec(4, 2)).unwrap();
        let st = |b: &[u8]| g.basis.index_of(&BasisState::from_bits(b).unwrap()).unwrap();
        let ac = g.quasi_annihilate[0].anticommutator(&g.quasi_create[1]).unwrap();
        let quarter = BigRational::new(1.into(), 4.into());
        assert_eq!(ac.get(st(&[0, 1]), st(&[1, 0])), Some(&Amplitude::from_rational(&quarter)));
        assert_eq!(ac.nnz(), 1);
    }

    #[test]
    fn holstein_primakoff_examples() {
        assert_exact_pass(&verify_holstein_primakoff(spec(3, 2)).unwrap());
        assert_exact_pass(&verify_holstein_primakoff(spec(2, 2)).unwrap());
        let g = Generators::build(spec(3, 2)).unwrap();
        assert_eq!(g.number0.get(0, 0), Some(&Amplitude::from_int(3)));
        assert!(verify_holstein_primakoff(spec(2, 3)).is_err());
    }

    #[test]
    fn iop_examples() {
        assert_exact_pass(&verify_iop(3).unwrap());
        assert_exact_pass(&verify_iop(1).unwrap());
        assert!(run_suite(spec(2, 2), &IdealOddParticle).is_err());
    }

    #[test]
    fn pauli_examples() {
        assert_exact_pass(&verify_pauli_principle(spec(2, 4)).unwrap());
        assert_exact_pass(&verify_pauli_principle(spec(4, 4)).unwrap());
    }

    #[test]
    fn deviation_examples() {
        let d = quasi_fermi_deviation(2, &[2, 100]).unwrap();
        let exact = |p: f64| 1.0 - (1.0 - 1.0 / p).sqrt();
        assert!((d[0].1 - exact(2.0)).abs() < 1e-15);
        assert!(d[0].1 <= 1.0);
        assert!(d[1].1 <= 1.0 - (1.0 - 2.0 / 100.0f64).sqrt());
        assert!((d[1].1 - exact(100.0)).abs() < 1e-15);
        assert!(quasi_fermi_deviation(2, &[]).is_err());
        assert!(quasi_fermi_deviation(3, &[2]).is_err());
    }

    struct Incommensurable;

    impl Suite for Incommensurable {
        fn name(&self) -> &'static str {
            "incommensurable"
        }
        fn checks<E: Entry>(&self, g: &Generators<E>) -> Checks<E> {
            // f1+ f1- + f1- f1+ with one factor rescaled by 1/√p is still
            // commensurable; mixing √p and 1 on the same entry is not.
            let lhs = g.create[0].add(&g.quasi_create[0])?;
            let rhs = g.quasi_create[0].add(&g.create[0])?;
            Ok(vec![Check::new("f+ + F+ commutes", lhs, rhs)])
        }
    }

    #[test]
    fn float_fallback_is_recorded() {
        // p = 2: entries √2 (f1+) and √1 (F1+) on |00⟩ → |10⟩ cannot be summed exactly
        let r = run_suite(spec(2, 1), &Incommensurable).unwrap();
        assert!(!r.exact);
        assert!(r.passed());
        assert!(r.max_residual <= FLOAT_TOLERANCE);
    }

    #[test]
    fn report_json_roundtrip() {
        let r = verify_vacuum(spec(2, 2)).unwrap();
        let text = serde_json::to_string(&r).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, r);
    }

    #[test]
    fn suites_selection() {
        let all = verify_suites(spec(1, 3), SuiteSelection::All).unwrap();
        let names: Vec<_> = all.iter().map(|r| r.identity.as_str()).collect();
        assert_eq!(names, ["vacuum", "triple", "weyl", "hermiticity", "pauli", "iop"]);
        assert!(all.iter().all(|r| r.passed()));
        assert!(verify_suites(spec(1, 3), SuiteSelection::Quasi).is_err());
        let typ = verify_suites(spec(3, 3), SuiteSelection::All).unwrap();
        assert_eq!(typ.len(), 7);
    }
}
