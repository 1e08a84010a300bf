//! Zeta functions as exact rational functions: reconstruction from point
//! counts, recovery of counts, weight factorization, and Weil bound
//! checks.
//!
//! Reconstruction solves the linear system for the denominator
//! coefficients of `exp(sum N_k t^k / k)` over exact rationals; floating
//! point is used only to group reciprocal roots by magnitude, and every
//! reported polynomial is re-derived and re-verified exactly.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{FromPrimitive, One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::poly::IntPolynomial;
use crate::numerics::{ensure_prime, Matrix};
use crate::schemes::PointCountSeries;

/// `Z(X,t)` as a pair of coprime integer polynomials with constant term 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ZetaRational {
    pub num: IntPolynomial,
    pub den: IntPolynomial,
}

impl ZetaRational {
    pub fn one() -> Self {
        ZetaRational { num: IntPolynomial::one(), den: IntPolynomial::one() }
    }

    fn check_normalized(&self) -> Result<()> {
        if !self.num.coeff(0).is_one() || !self.den.coeff(0).is_one() {
            return Err(Error::Validation(
                "zeta numerator and denominator must have constant term 1".into(),
            ));
        }
        Ok(())
    }

    /// Exact product of two zeta functions, reduced to lowest terms.
    pub fn mul(&self, other: &ZetaRational) -> Result<ZetaRational> {
        reduce_integer_fraction(self.num.mul(&other.num), self.den.mul(&other.den))
    }

    /// Exact quotient, reduced to lowest terms.
    pub fn div(&self, other: &ZetaRational) -> Result<ZetaRational> {
        reduce_integer_fraction(self.num.mul(&other.den), self.den.mul(&other.num))
    }
}

impl std::fmt::Display for ZetaRational {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({}) / ({})", self.num, self.den)
    }
}

/// Cancels the common factor of an integer-polynomial fraction and
/// renormalizes both constant terms to 1.
fn reduce_integer_fraction(num: IntPolynomial, den: IntPolynomial) -> Result<ZetaRational> {
    if num.is_zero() || den.is_zero() {
        return Err(Error::Domain("zeta fraction with zero side".into()));
    }
    let g = num.gcd(&den);
    let (mut num, mut den) = if g.degree().is_some_and(|d| d > 0) {
        (
            num.div_exact(&g)
                .ok_or_else(|| Error::Internal("gcd does not divide numerator".into()))?,
            den.div_exact(&g)
                .ok_or_else(|| Error::Internal("gcd does not divide denominator".into()))?,
        )
    } else {
        (num, den)
    };
    let c_num = num.coeff(0);
    let c_den = den.coeff(0);
    if c_num.is_zero() || c_den.is_zero() || c_num.abs() != c_den.abs() {
        return Err(Error::Validation(format!(
            "constant terms {c_num} and {c_den} cannot be normalized to 1"
        )));
    }
    if c_num != c_den {
        num = num.neg();
    }
    let c = num.coeff(0);
    if !c.is_one() {
        use num_integer::Integer;
        let coeffs_ok = |p: &IntPolynomial| p.coeffs().iter().all(|x| x.is_multiple_of(&c));
        if !coeffs_ok(&num) || !coeffs_ok(&den) {
            return Err(Error::Validation(
                "zeta fraction does not normalize to constant term 1".into(),
            ));
        }
        num = IntPolynomial::from_coeffs(num.coeffs().iter().map(|x| x / &c).collect());
        den = IntPolynomial::from_coeffs(den.coeffs().iter().map(|x| x / &c).collect());
    }
    Ok(ZetaRational { num, den })
}

/// Coefficients `z_0..z_m` of `exp(sum N_k t^k / k)` as exact rationals.
fn exp_series(counts: &[BigInt], order: usize) -> Vec<BigRational> {
    let mut z = Vec::with_capacity(order + 1);
    z.push(BigRational::one());
    for m in 1..=order {
        // m * z_m = sum_{k=1..m} N_k z_{m-k}
        let mut acc = BigRational::zero();
        for k in 1..=m.min(counts.len()) {
            acc += BigRational::from_integer(counts[k - 1].clone()) * &z[m - k];
        }
        z.push(acc / BigRational::from_integer(BigInt::from(m)));
    }
    z
}

/// Gaussian elimination returning any solution of `A x = b` (free
/// variables pinned to zero), or `None` when inconsistent.
fn solve_linear(a: &Matrix<BigRational>, b: &[BigRational]) -> Option<Vec<BigRational>> {
    let rows = a.rows();
    let cols = a.cols();
    let mut m = Matrix::from_fn(rows, cols + 1, |r, c| {
        if c < cols {
            a.get(r, c).clone()
        } else {
            b[r].clone()
        }
    });
    let mut pivot_cols = Vec::new();
    let mut rank = 0usize;
    for col in 0..cols {
        let pivot = (rank..rows).find(|&r| !m.get(r, col).is_zero());
        let Some(pr) = pivot else { continue };
        m.swap_rows(pr, rank);
        let pv = m.get(rank, col).clone();
        for c in col..=cols {
            let v = m.get(rank, c) / &pv;
            m.set(rank, c, v);
        }
        for r in 0..rows {
            if r == rank || m.get(r, col).is_zero() {
                continue;
            }
            let f = m.get(r, col).clone();
            for c in col..=cols {
                let v = m.get(r, c) - &f * m.get(rank, c);
                m.set(r, c, v);
            }
        }
        pivot_cols.push(col);
        rank += 1;
        if rank == rows {
            break;
        }
    }
    for r in rank..rows {
        if !m.get(r, cols).is_zero() {
            return None;
        }
    }
    let mut x = vec![BigRational::zero(); cols];
    for (i, &col) in pivot_cols.iter().enumerate() {
        x[col] = m.get(i, cols).clone();
    }
    Some(x)
}

/// Reconstructs `Z(X,t)` from `N_1..N_K` under the given degree bounds.
///
/// Needs `K >= num_bound + den_bound`; the returned function is verified
/// against every supplied count, so extra counts act as consistency
/// checks.
pub fn zeta_from_counts(
    series: &PointCountSeries,
    num_bound: usize,
    den_bound: usize,
) -> Result<ZetaRational> {
    let k = series.len();
    if k < num_bound + den_bound {
        return Err(Error::Argument(format!(
            "need at least {} counts to determine degrees ({num_bound},{den_bound}), got {k}",
            num_bound + den_bound
        )));
    }
    let order = num_bound + den_bound;
    let z = exp_series(&series.counts, order);
    // unknowns d_1..d_den; equations sum_i d_i z_{j-i} = 0 for
    // j = num_bound+1 ..= num_bound+den_bound, with d_0 = 1
    let d_coeffs = if den_bound == 0 {
        Vec::new()
    } else {
        let a = Matrix::from_fn(den_bound, den_bound, |r, c| {
            let j = num_bound + 1 + r;
            let i = c + 1;
            if i <= j {
                z[j - i].clone()
            } else {
                BigRational::zero()
            }
        });
        let b: Vec<BigRational> =
            (0..den_bound).map(|r| -z[num_bound + 1 + r].clone()).collect();
        solve_linear(&a, &b).ok_or_else(|| {
            Error::Validation("no rational function of the given degrees fits the counts".into())
        })?
    };
    let mut den_rat = vec![BigRational::one()];
    den_rat.extend(d_coeffs);
    // numerator coefficients: n_j = sum_i d_i z_{j-i}, j = 0..num_bound
    let mut num_rat = Vec::with_capacity(num_bound + 1);
    for j in 0..=num_bound {
        let mut acc = BigRational::zero();
        for (i, d) in den_rat.iter().enumerate() {
            if i > j {
                break;
            }
            acc += d * &z[j - i];
        }
        num_rat.push(acc);
    }
    let candidate = rational_fraction_to_zeta(num_rat, den_rat)?;
    // the log-derivative identity must reproduce every supplied count
    let recovered = series_from_zeta(&candidate, k as u32)?;
    if recovered != series.counts {
        return Err(Error::Validation(
            "reconstructed zeta does not reproduce the supplied counts".into(),
        ));
    }
    Ok(candidate)
}

/// Reduces a rational-coefficient fraction to a coprime integer
/// `ZetaRational` with constant terms 1.
fn rational_fraction_to_zeta(
    num: Vec<BigRational>,
    den: Vec<BigRational>,
) -> Result<ZetaRational> {
    fn clear(v: &[BigRational]) -> (BigInt, IntPolynomial) {
        use num_integer::Integer;
        let mut l = BigInt::one();
        for x in v {
            l = l.lcm(x.denom());
        }
        let ints = v
            .iter()
            .map(|x| (x * BigRational::from_integer(l.clone())).to_integer())
            .collect();
        (l, IntPolynomial::from_coeffs(ints))
    }
    let (ln, num_i) = clear(&num);
    let (ld, den_i) = clear(&den);
    if num_i.is_zero() || den_i.is_zero() {
        return Err(Error::Validation("degenerate zeta candidate".into()));
    }
    // num/den = (num_i/ln)/(den_i/ld) = (ld*num_i)/(ln*den_i)
    let scaled_num = num_i.scale(&ld);
    let scaled_den = den_i.scale(&ln);
    let g = scaled_num.gcd(&scaled_den);
    let num_red = scaled_num
        .div_exact(&g)
        .ok_or_else(|| Error::Internal("gcd division failed".into()))?;
    let den_red = scaled_den
        .div_exact(&g)
        .ok_or_else(|| Error::Internal("gcd division failed".into()))?;
    let c_num = num_red.coeff(0);
    let c_den = den_red.coeff(0);
    if c_num.is_zero() || c_den.is_zero() || c_num != c_den {
        return Err(Error::Validation("zeta candidate does not normalize".into()));
    }
    use num_integer::Integer;
    let all_divisible = num_red
        .coeffs()
        .iter()
        .chain(den_red.coeffs())
        .all(|x| x.is_multiple_of(&c_num));
    if !all_divisible {
        return Err(Error::Validation(
            "reconstructed zeta has non-integer coefficients".into(),
        ));
    }
    let num_final =
        IntPolynomial::from_coeffs(num_red.coeffs().iter().map(|x| x / &c_num).collect());
    let den_final =
        IntPolynomial::from_coeffs(den_red.coeffs().iter().map(|x| x / &c_den).collect());
    Ok(ZetaRational { num: num_final, den: den_final })
}

/// Recovers `N_1..N_K` from the logarithmic derivative
/// `t (log Z)' = sum N_k t^k`. Errors when the input is not normalized
/// (the only way a non-integer count could appear).
pub fn series_from_zeta(z: &ZetaRational, max_k: u32) -> Result<Vec<BigInt>> {
    if max_k == 0 {
        return Err(Error::Argument("need K >= 1".into()));
    }
    z.check_normalized()?;
    // t (log Z)' = t (num' den - den' num) / (num den)
    let u = z
        .num
        .derivative()
        .mul(&z.den)
        .sub(&z.den.derivative().mul(&z.num)); // coefficient of t^{k-1} feeds N_k
    let v = z.num.mul(&z.den); // constant term 1
    let mut counts: Vec<BigInt> = Vec::with_capacity(max_k as usize);
    for k in 1..=max_k as usize {
        // N_k = u_{k-1} - sum_{j=1}^{k-1} v_j N_{k-j}
        let mut acc = u.coeff(k - 1);
        for j in 1..k {
            acc -= v.coeff(j) * &counts[k - j - 1];
        }
        counts.push(acc);
    }
    Ok(counts)
}

/// One factor `P_i` per cohomological degree `i`, the reciprocal roots of
/// `P_i` having absolute value `p^{i/2}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeilFactorization {
    pub dimension: usize,
    /// `(cohomological degree, P_i)`; degrees with trivial factor omitted.
    pub factors: Vec<(usize, IntPolynomial)>,
}

impl WeilFactorization {
    pub fn factor(&self, i: usize) -> IntPolynomial {
        self.factors
            .iter()
            .find(|(deg, _)| *deg == i)
            .map(|(_, p)| p.clone())
            .unwrap_or_else(IntPolynomial::one)
    }
}

/// Deterministic Durand-Kerner root finder; coefficients low-to-high,
/// nonzero leading coefficient.
fn complex_roots(coeffs: &[f64]) -> Vec<Complex64> {
    let deg = coeffs.len() - 1;
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> =
        coeffs.iter().map(|&c| Complex64::new(c / lead, 0.0)).collect();
    let eval = |z: Complex64| {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let radius = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    // deterministic spiral of initial guesses, never symmetric about a root
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / (deg as f64) + 0.4;
            Complex64::new(angle.cos(), angle.sin()) * radius * (0.5 + 0.3 * (k as f64) / (deg as f64))
        })
        .collect();
    for _ in 0..600 {
        let mut delta_max = 0.0f64;
        for i in 0..deg {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..deg {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-18, 0.0);
            }
            let step = eval(roots[i]) / denom;
            roots[i] -= step;
            delta_max = delta_max.max(step.norm());
        }
        if delta_max < 1e-14 * radius {
            break;
        }
    }
    roots
}

/// Reciprocal roots of an integer polynomial with nonzero constant term,
/// with exact multiplicities: the squarefree decomposition is computed
/// exactly so repeated roots never degrade floating-point accuracy.
fn reciprocal_roots_with_multiplicity(p: &IntPolynomial) -> Result<Vec<(Complex64, u32)>> {
    if p.coeff(0).is_zero() {
        return Err(Error::Internal("factor with zero constant term".into()));
    }
    if p.degree().is_none_or(|d| d == 0) {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        let deg = factor.degree().unwrap();
        // reciprocal roots of f are the roots of the reversed polynomial
        let reversed: Vec<f64> = (0..=deg)
            .rev()
            .map(|i| {
                factor.coeff(i).to_f64().ok_or_else(|| {
                    Error::Internal(
                        "coefficient too large for floating-point root isolation".into(),
                    )
                })
            })
            .collect::<Result<Vec<_>>>()?;
        for root in complex_roots(&reversed) {
            out.push((root, mult));
        }
    }
    Ok(out)
}

const CLUSTER_RELATIVE_TOLERANCE: f64 = 1e-6;

/// Groups the reciprocal roots of `Z` by `|alpha| = p^{i/2}` and returns
/// exact integer factors, one per cohomological degree `0..=2d`.
///
/// Floating point only decides the grouping; the factors are re-derived by
/// rounding clustered products to integers and the full decomposition is
/// re-verified by exact multiplication.
pub fn weight_factorization(
    z: &ZetaRational,
    p: u64,
    dimension: usize,
) -> Result<WeilFactorization> {
    ensure_prime(p)?;
    z.check_normalized()?;
    let log_p = (p as f64).ln();
    let mut clusters: Vec<Vec<(Complex64, u32)>> = vec![Vec::new(); 2 * dimension + 1];
    for (parity, poly) in [(1usize, &z.num), (0usize, &z.den)] {
        for (alpha, mult) in reciprocal_roots_with_multiplicity(poly)? {
            let mag = alpha.norm();
            if mag <= 0.0 {
                return Err(Error::Factorization("zero reciprocal root".into()));
            }
            let x = 2.0 * mag.ln() / log_p;
            let i = x.round();
            if i < 0.0 || i > (2 * dimension) as f64 {
                return Err(Error::Factorization(format!(
                    "reciprocal root magnitude {mag} is outside weights 0..{}",
                    2 * dimension
                )));
            }
            let i = i as usize;
            let target = (p as f64).powf(i as f64 / 2.0);
            if ((mag - target).abs() / target) > CLUSTER_RELATIVE_TOLERANCE {
                return Err(Error::Factorization(format!(
                    "reciprocal root magnitude {mag} does not sit near any p^(i/2)"
                )));
            }
            if i % 2 != parity {
                return Err(Error::Factorization(format!(
                    "weight-{i} root found on the wrong side of the zeta fraction"
                )));
            }
            clusters[i].push((alpha, mult));
        }
    }
    let mut factors = Vec::new();
    for (i, cluster) in clusters.iter().enumerate() {
        if cluster.is_empty() {
            continue;
        }
        let poly = round_cluster_product(cluster)?;
        factors.push((i, poly));
    }
    let result = WeilFactorization { dimension, factors };
    // exact re-verification: product over even degrees is den, odd is num
    let mut even = IntPolynomial::one();
    let mut odd = IntPolynomial::one();
    for (i, f) in &result.factors {
        if i % 2 == 0 {
            even = even.mul(f);
        } else {
            odd = odd.mul(f);
        }
    }
    if even != z.den || odd != z.num {
        return Err(Error::Internal(
            "rounded weight factors do not reproduce the zeta function exactly".into(),
        ));
    }
    // functional-equation constraint, applied post hoc only: Poincare
    // duality pairs weights i and 2d - i, so the factor degrees must match
    for i in 0..=dimension {
        let lo = result.factor(i).degree().map_or(0, |d| d);
        let hi = result.factor(2 * dimension - i).degree().map_or(0, |d| d);
        if lo != hi {
            return Err(Error::Factorization(format!(
                "weights {i} and {} have factor degrees {lo} and {hi}; the functional equation is violated",
                2 * dimension - i
            )));
        }
    }
    Ok(result)
}

/// Multiplies `prod (1 - alpha t)^mult` over a cluster and rounds to the
/// integer polynomial it must be.
fn round_cluster_product(cluster: &[(Complex64, u32)]) -> Result<IntPolynomial> {
    let mut coeffs = vec![Complex64::new(1.0, 0.0)];
    for (alpha, mult) in cluster {
        for _ in 0..*mult {
            let mut next = vec![Complex64::new(0.0, 0.0); coeffs.len() + 1];
            for (k, c) in coeffs.iter().enumerate() {
                next[k] += c;
                next[k + 1] -= c * alpha;
            }
            coeffs = next;
        }
    }
    let mut out = Vec::with_capacity(coeffs.len());
    for c in &coeffs {
        let nearest = c.re.round();
        if (c.re - nearest).abs() > 0.25 || c.im.abs() > 0.25 {
            return Err(Error::Factorization(format!(
                "cluster product coefficient {c} is not close to an integer"
            )));
        }
        out.push(
            BigInt::from_f64(nearest)
                .ok_or_else(|| Error::Internal("rounded coefficient out of range".into()))?,
        );
    }
    Ok(IntPolynomial::from_coeffs(out))
}

pub const WEIL_BOUND_TOLERANCE: f64 = 1e-9;

/// Per-factor maximal relative deviation of reciprocal-root magnitudes
/// from `p^(i/2)`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct WeilBoundReport {
    pub tolerance: f64,
    /// `(degree, max relative deviation)` per factor.
    pub deviations: Vec<(usize, f64)>,
    pub pass: bool,
}

/// Checks every factor's reciprocal roots against `|alpha| = p^{i/2}` at
/// double precision. A failing bound is a report, not an error.
pub fn weil_bound_check(f: &WeilFactorization, p: u64) -> Result<WeilBoundReport> {
    ensure_prime(p)?;
    let mut deviations = Vec::new();
    let mut pass = true;
    for (i, poly) in &f.factors {
        let target = (p as f64).powf(*i as f64 / 2.0);
        let mut max_dev = 0.0f64;
        for (alpha, _) in reciprocal_roots_with_multiplicity(poly)? {
            let dev = (alpha.norm() - target).abs() / target;
            max_dev = max_dev.max(dev);
        }
        if max_dev > WEIL_BOUND_TOLERANCE {
            pass = false;
        }
        deviations.push((*i, max_dev));
    }
    Ok(WeilBoundReport { tolerance: WEIL_BOUND_TOLERANCE, deviations, pass })
}
