//! Means on bounded functions over a finite group and their translation
//! invariance.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::freegroup::FiniteGroupTable;

/// A bounded real function `θ: G → R`, stored exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundedFunction {
    values: Vec<BigRational>,
}

impl BoundedFunction {
    pub fn new(values: Vec<BigRational>) -> Self {
        BoundedFunction { values }
    }

    pub fn from_integers(values: &[i64]) -> Self {
        Self::new(
            values
                .iter()
                .map(|&v| BigRational::from_integer(v.into()))
                .collect(),
        )
    }

    /// Exact binary value of each float; non-finite values are rejected.
    pub fn from_f64(values: &[f64]) -> Result<Self> {
        values
            .iter()
            .map(|&v| {
                BigRational::from_float(v)
                    .ok_or_else(|| Error::InvalidWeights(format!("non-finite value {v}")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Self::new)
    }

    /// `1_x` on a group of order `m`.
    pub fn indicator(m: usize, x: usize) -> Self {
        Self::new(
            (0..m)
                .map(|y| {
                    if y == x {
                        BigRational::one()
                    } else {
                        BigRational::zero()
                    }
                })
                .collect(),
        )
    }

    pub fn values(&self) -> &[BigRational] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `‖θ‖ = max |θ(x)|`.
    pub fn norm(&self) -> BigRational {
        self.values
            .iter()
            .map(BigRational::abs)
            .max()
            .unwrap_or_else(BigRational::zero)
    }

    pub fn glb(&self) -> Option<&BigRational> {
        self.values.iter().min()
    }

    pub fn lub(&self) -> Option<&BigRational> {
        self.values.iter().max()
    }

    /// `(ℓ_σ θ)(σ') = θ(σσ')`.
    pub fn left_translate(&self, g: &FiniteGroupTable, sigma: usize) -> Self {
        Self::new(
            (0..g.order())
                .map(|s| self.values[g.mul(sigma, s)].clone())
                .collect(),
        )
    }

    /// `(r_σ θ)(σ') = θ(σ'σ)`.
    pub fn right_translate(&self, g: &FiniteGroupTable, sigma: usize) -> Self {
        Self::new(
            (0..g.order())
                .map(|s| self.values[g.mul(s, sigma)].clone())
                .collect(),
        )
    }

    fn to_f64(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::NAN))
            .collect()
    }
}

/// A finitely supported mean `μ(θ) = Σ w(x) θ(x) / Σ w(x)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Mean {
    Uniform,
    /// Nonnegative weights with a positive sum, one per group element.
    Weighted(Vec<BigRational>),
}

impl Mean {
    pub fn weighted(weights: Vec<BigRational>) -> Result<Self> {
        if weights.iter().any(Signed::is_negative) {
            return Err(Error::InvalidWeights("negative weight".into()));
        }
        if weights.iter().all(Zero::is_zero) {
            return Err(Error::InvalidWeights("weights sum to zero".into()));
        }
        Ok(Mean::Weighted(weights))
    }

    pub fn describe(&self) -> String {
        match self {
            Mean::Uniform => "uniform".into(),
            Mean::Weighted(w) => {
                let parts: Vec<String> = w.iter().map(ToString::to_string).collect();
                format!("weighted({})", parts.join(", "))
            }
        }
    }

    /// Integer weights proportional to this mean on a group of order `m`.
    fn integer_weights(&self, m: usize) -> Result<Vec<BigInt>> {
        match self {
            Mean::Uniform => Ok(vec![BigInt::one(); m]),
            Mean::Weighted(w) => {
                if w.len() != m {
                    return Err(Error::FunctionLength {
                        expected: m,
                        found: w.len(),
                    });
                }
                let den = w.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
                Ok(w.iter().map(|x| x.numer() * (&den / x.denom())).collect())
            }
        }
    }

    pub fn evaluate(&self, theta: &BoundedFunction) -> Result<BigRational> {
        let m = theta.len();
        let w = self.integer_weights(m)?;
        let total: BigInt = w.iter().sum();
        let sum: BigRational = w
            .iter()
            .zip(theta.values())
            .map(|(wi, v)| v * BigRational::from_integer(wi.clone()))
            .sum();
        Ok(sum / BigRational::from_integer(total))
    }
}

/// `(1/m) Σ θ(x)`.
pub fn uniform_mean(g: &FiniteGroupTable, theta: &BoundedFunction) -> Result<BigRational> {
    check_len(g, theta)?;
    Mean::Uniform.evaluate(theta)
}

fn check_len(g: &FiniteGroupTable, theta: &BoundedFunction) -> Result<()> {
    if theta.len() != g.order() {
        return Err(Error::FunctionLength {
            expected: g.order(),
            found: theta.len(),
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Arithmetic {
    /// Exact rational sums.
    #[default]
    Exact,
    /// Compensated `f64` sums compared within [`FLOAT_TOLERANCE`].
    Float,
}

pub const FLOAT_TOLERANCE: f64 = 1e-12;

/// Result of checking `μ(ℓ_σθ) = μ(θ) = μ(r_σθ)` for every `σ`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct InvarianceReport {
    pub mean: String,
    pub arithmetic: Arithmetic,
    /// `μ(θ)` as an exact fraction or decimal.
    pub value: String,
    pub left_violations: Vec<usize>,
    pub right_violations: Vec<usize>,
}

impl InvarianceReport {
    pub fn passed(&self) -> bool {
        self.left_violations.is_empty() && self.right_violations.is_empty()
    }

    /// Least violating `σ`, if any.
    pub fn witness(&self) -> Option<usize> {
        self.left_violations
            .iter()
            .chain(&self.right_violations)
            .min()
            .copied()
    }
}

/// Checks left and right invariance of `mean` at `θ` for every `σ ∈ G`.
pub fn check_invariance(
    g: &FiniteGroupTable,
    theta: &BoundedFunction,
    mean: &Mean,
    arithmetic: Arithmetic,
) -> Result<InvarianceReport> {
    check_len(g, theta)?;
    let m = g.order();
    let weights = mean.integer_weights(m)?;
    let (value, left, right) = match arithmetic {
        Arithmetic::Exact => exact_invariance(g, theta, &weights),
        Arithmetic::Float => float_invariance(g, theta, &weights),
    };
    Ok(InvarianceReport {
        mean: mean.describe(),
        arithmetic,
        value,
        left_violations: left,
        right_violations: right,
    })
}

/// Scans translates with integer numerators `N(x) = θ(x)·D` and integer
/// weights; the common positive denominator cancels from every comparison.
fn exact_invariance(
    g: &FiniteGroupTable,
    theta: &BoundedFunction,
    weights: &[BigInt],
) -> (String, Vec<usize>, Vec<usize>) {
    let m = g.order();
    let den = theta
        .values()
        .iter()
        .fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
    let numers: Vec<BigInt> = theta
        .values()
        .iter()
        .map(|v| v.numer() * (&den / v.denom()))
        .collect();
    let total: BigInt = weights.iter().sum();
    let base: BigInt = weights.iter().zip(&numers).map(|(w, n)| w * n).sum();
    let value = BigRational::new(base.clone(), &total * &den).to_string();

    let small_n: Option<Vec<i64>> = numers.iter().map(ToPrimitive::to_i64).collect();
    let small_w: Option<Vec<i64>> = weights.iter().map(ToPrimitive::to_i64).collect();
    let (left, right) = match (small_n, small_w, base.to_i128()) {
        (Some(n), Some(w), Some(b)) if m <= 1 << 20 => {
            let sum = |f: &dyn Fn(usize) -> usize| -> i128 {
                (0..m).map(|s| i128::from(w[s]) * i128::from(n[f(s)])).sum()
            };
            let left = (0..m).filter(|&sg| sum(&|s| g.mul(sg, s)) != b).collect();
            let right = (0..m).filter(|&sg| sum(&|s| g.mul(s, sg)) != b).collect();
            (left, right)
        }
        _ => {
            let sum = |f: &dyn Fn(usize) -> usize| -> BigInt {
                (0..m).map(|s| &weights[s] * &numers[f(s)]).sum()
            };
            let left = (0..m)
                .filter(|&sg| sum(&|s| g.mul(sg, s)) != base)
                .collect();
            let right = (0..m)
                .filter(|&sg| sum(&|s| g.mul(s, sg)) != base)
                .collect();
            (left, right)
        }
    };
    (value, left, right)
}

fn float_invariance(
    g: &FiniteGroupTable,
    theta: &BoundedFunction,
    weights: &[BigInt],
) -> (String, Vec<usize>, Vec<usize>) {
    let m = g.order();
    let values = theta.to_f64();
    let total = weights.iter().sum::<BigInt>().to_f64().unwrap_or(f64::NAN);
    let w: Vec<f64> = weights
        .iter()
        .map(|x| x.to_f64().unwrap_or(f64::NAN) / total)
        .collect();
    let mean_of = |f: &dyn Fn(usize) -> usize| neumaier((0..m).map(|s| w[s] * values[f(s)]));
    let mu = mean_of(&|s| s);
    let bad = |x: f64| {
        let d = (x - mu).abs();
        d.is_nan() || d > FLOAT_TOLERANCE
    };
    let left = (0..m)
        .filter(|&sg| bad(mean_of(&|s| g.mul(sg, s))))
        .collect();
    let right = (0..m)
        .filter(|&sg| bad(mean_of(&|s| g.mul(s, sg))))
        .collect();
    (format!("{mu:e}"), left, right)
}

/// Compensated summation.
fn neumaier(values: impl Iterator<Item = f64>) -> f64 {
    let (mut sum, mut c) = (0.0f64, 0.0f64);
    for v in values {
        let t = sum + v;
        if sum.abs() >= v.abs() {
            c += (sum - t) + v;
        } else {
            c += (v - t) + sum;
        }
        sum = t;
    }
    sum + c
}

/// Checks every indicator `1_x` at once: for each `σ`, the weight mass that
/// `ℓ_σ` and `r_σ` move onto each `x` must equal `w(x)`.
pub fn check_indicator_basis(g: &FiniteGroupTable, mean: &Mean) -> Result<InvarianceReport> {
    let m = g.order();
    let weights = mean.integer_weights(m)?;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for sigma in 0..m {
        let mut lhist = vec![BigInt::zero(); m];
        let mut rhist = vec![BigInt::zero(); m];
        for s in 0..m {
            lhist[g.mul(sigma, s)] += &weights[s];
            rhist[g.mul(s, sigma)] += &weights[s];
        }
        if lhist != weights {
            left.push(sigma);
        }
        if rhist != weights {
            right.push(sigma);
        }
    }
    Ok(InvarianceReport {
        mean: mean.describe(),
        arithmetic: Arithmetic::Exact,
        value: "indicator basis".into(),
        left_violations: left,
        right_violations: right,
    })
}

/// Number of pseudo-random integer functions added to every amenability sample.
pub const RANDOM_SAMPLES: usize = 32;
/// Values of the random functions lie in `-RANDOM_BOUND..=RANDOM_BOUND`.
pub const RANDOM_BOUND: i64 = 100;

/// The pseudo-random functions used by [`is_amenable_witness`] for `seed`.
pub fn random_functions(m: usize, seed: u64) -> Vec<BoundedFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..RANDOM_SAMPLES)
        .map(|_| {
            let v: Vec<i64> = (0..m)
                .map(|_| rng.gen_range(-RANDOM_BOUND..=RANDOM_BOUND))
                .collect();
            BoundedFunction::from_integers(&v)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AmenabilityReport {
    pub amenable: bool,
    pub mean: String,
    pub order: usize,
    pub seed: u64,
    pub indicator_basis: InvarianceReport,
    /// Caller-supplied functions followed by the seeded random ones.
    pub checked_functions: usize,
    /// Index into the checked functions and the report for each failure.
    pub failures: Vec<(usize, InvarianceReport)>,
    pub argument: &'static str,
}

const BASIS_ARGUMENT: &str = "every bounded function on a finite group is a finite linear \
combination of indicators and the mean is linear, so invariance on the indicator basis \
gives invariance on all of m(G)";

/// Verifies the uniform mean as an invariant mean on `g`: the indicator basis,
/// every function in `sample`, and [`RANDOM_SAMPLES`] seeded random functions.
pub fn is_amenable_witness(
    g: &FiniteGroupTable,
    sample: &[BoundedFunction],
    seed: u64,
) -> Result<AmenabilityReport> {
    let mean = Mean::Uniform;
    let indicator_basis = check_indicator_basis(g, &mean)?;
    let mut functions: Vec<BoundedFunction> = sample.to_vec();
    functions.extend(random_functions(g.order(), seed));
    let mut failures = Vec::new();
    for (i, theta) in functions.iter().enumerate() {
        let report = check_invariance(g, theta, &mean, Arithmetic::Exact)?;
        if !report.passed() {
            failures.push((i, report));
        }
    }
    Ok(AmenabilityReport {
        amenable: indicator_basis.passed() && failures.is_empty(),
        mean: mean.describe(),
        order: g.order(),
        seed,
        indicator_basis,
        checked_functions: functions.len(),
        failures,
        argument: BASIS_ARGUMENT,
    })
}
