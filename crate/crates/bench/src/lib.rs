//! Shared inputs for the benchmarks.

use num_rational::BigRational;

/// Deterministic positive fugacities `0.1, 0.2, …` cycling through ten values.
pub fn float_fugacities(n: usize) -> Vec<f64> {
    (0..n).map(|i| 0.1 * (1 + i % 10) as f64).collect()
}

/// Rational fugacities `1/2, 2/3, 3/4, …`.
pub fn rational_fugacities(n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|i| BigRational::new((i as i64 + 1).into(), (i as i64 + 2).into()))
        .collect()
}
