//! Dense univariate polynomials with arbitrary-precision integer
//! coefficients, stored lowest degree first.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::numerics::{ensure_prime, rational_prime_power};

/// Integer polynomial. Invariant: no trailing zero coefficient, so the zero
/// polynomial is the empty coefficient vector and `degree` is `len - 1`
/// otherwise.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        IntPolynomial::from_coeffs(vec![c])
    }

    /// Builds from low-to-high coefficients, trimming trailing zeros.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn leading(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) + other.coeff(k));
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let mut out = Vec::with_capacity(n);
        for k in 0..n {
            out.push(self.coeff(k) - other.coeff(k));
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn neg(&self) -> Self {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = IntPolynomial::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn derivative(&self) -> Self {
        if self.coeffs.len() <= 1 {
            return IntPolynomial::zero();
        }
        let out = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * BigInt::from(k))
            .collect();
        IntPolynomial::from_coeffs(out)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from_integer(c.clone());
        }
        acc
    }

    /// gcd of all coefficients, positive; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
        }
        g
    }

    /// Divides out the content; sign is normalized so the leading
    /// coefficient is positive.
    pub fn primitive_part(&self) -> Self {
        if self.is_zero() {
            return IntPolynomial::zero();
        }
        let mut g = self.content();
        if self.leading().is_negative() {
            g = -g;
        }
        IntPolynomial::from_coeffs(self.coeffs.iter().map(|c| c / &g).collect())
    }

    /// Exact division; `None` when `self` is not a polynomial multiple of
    /// `divisor`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(IntPolynomial::zero());
        }
        let dd = divisor.degree().unwrap();
        let nd = self.degree().unwrap();
        if nd < dd {
            return None;
        }
        let lead = divisor.leading();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); nd - dd + 1];
        for k in (0..=nd - dd).rev() {
            let top = rem[k + dd].clone();
            if top.is_zero() {
                continue;
            }
            let (q, r) = top.div_rem(&lead);
            if !r.is_zero() {
                return None;
            }
            quot[k] = q.clone();
            for (j, c) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &q * c;
            }
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(IntPolynomial::from_coeffs(quot))
    }

    /// Pseudo-remainder of `self` by `other` (both nonzero,
    /// `deg self >= deg other`).
    fn pseudo_rem(&self, other: &Self) -> Self {
        let mut r = self.clone();
        let d = other.degree().unwrap();
        let lead = other.leading();
        while let Some(rd) = r.degree() {
            if rd < d {
                break;
            }
            let shift = rd - d;
            let top = r.leading();
            // lead * r - top * x^shift * other kills the top coefficient
            let mut shifted = vec![BigInt::zero(); shift];
            shifted.extend(other.coeffs.iter().map(|c| c * &top));
            r = r.scale(&lead).sub(&IntPolynomial::from_coeffs(shifted));
        }
        r
    }

    /// Primitive gcd via the primitive pseudo-remainder sequence. Result is
    /// primitive with positive leading coefficient (or zero).
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.primitive_part();
        }
        if other.is_zero() {
            return self.primitive_part();
        }
        let (mut a, mut b) = if self.degree() >= other.degree() {
            (self.primitive_part(), other.primitive_part())
        } else {
            (other.primitive_part(), self.primitive_part())
        };
        while !b.is_zero() {
            let r = a.pseudo_rem(&b).primitive_part();
            a = b;
            b = r;
        }
        a.primitive_part()
    }

    /// Yun's squarefree decomposition: returns `(factor, multiplicity)`
    /// pairs with squarefree, pairwise coprime factors whose product with
    /// multiplicities is `self` up to a rational constant.
    pub fn squarefree_decomposition(&self) -> Vec<(IntPolynomial, u32)> {
        if self.degree().is_none_or(|d| d == 0) {
            return Vec::new();
        }
        let f = self.primitive_part();
        let fp = f.derivative();
        let g = f.gcd(&fp);
        if g.degree() == Some(0) {
            return vec![(f, 1)];
        }
        let mut out = Vec::new();
        let mut c = f.div_exact(&g).expect("gcd divides").primitive_part();
        let mut d = fp
            .div_exact(&g)
            .expect("gcd divides derivative")
            .sub(&c.derivative());
        let mut mult = 1u32;
        while c.degree().is_some_and(|deg| deg > 0) {
            let p = c.gcd(&d);
            if p.degree().is_some_and(|deg| deg > 0) {
                out.push((p.clone(), mult));
            }
            c = c.div_exact(&p).expect("squarefree step").primitive_part();
            d = d.div_exact(&p).expect("squarefree step").sub(&c.derivative());
            mult += 1;
        }
        out
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        write!(f, "t")?;
                    } else {
                        write!(f, "t^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let strings: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        strings.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let strings = Vec::<String>::deserialize(deserializer)?;
        let coeffs = strings
            .iter()
            .map(|s| s.parse::<BigInt>().map_err(|e| D::Error::custom(format!("bad integer '{s}': {e}"))))
            .collect::<std::result::Result<Vec<_>, _>>()?;
        Ok(IntPolynomial::from_coeffs(coeffs))
    }
}

/// Splits off the exact power of `(1 - p^n t)` dividing `poly`:
/// `poly = (1 - p^n t)^m * Q` with `Q(p^{-n}) != 0` and `Q` integral.
///
/// `n` may be negative; the quotient stays integral because the divisor is
/// primitive up to a power of `p` prime to the content.
pub fn divide_out_factor(poly: &IntPolynomial, p: u64, n: i64) -> Result<(u32, IntPolynomial)> {
    ensure_prime(p)?;
    if poly.is_zero() {
        return Err(Error::Domain("cannot divide factors out of the zero polynomial".into()));
    }
    let point = rational_prime_power(p, -n);
    let c = rational_prime_power(p, n);
    let mut m = 0u32;
    let mut q = poly.clone();
    while q.eval_rational(&point).is_zero() {
        q = divide_by_one_minus_ct(&q, &c)?;
        m += 1;
    }
    Ok((m, q))
}

/// Exact division by `(1 - c*t)` given that the dividend vanishes at `1/c`.
fn divide_by_one_minus_ct(poly: &IntPolynomial, c: &BigRational) -> Result<IntPolynomial> {
    let deg = poly.degree().ok_or_else(|| Error::Domain("zero polynomial".into()))?;
    if deg == 0 {
        return Err(Error::Internal("constant polynomial has no root".into()));
    }
    // p_k = q_k - c*q_{k-1}  =>  q_k = p_k + c*q_{k-1}
    let mut q = Vec::with_capacity(deg);
    let mut prev = BigRational::zero();
    for k in 0..deg {
        let qk = BigRational::from_integer(poly.coeff(k)) + c * &prev;
        q.push(qk.clone());
        prev = qk;
    }
    let mut out = Vec::with_capacity(deg);
    for qk in q {
        if !qk.is_integer() {
            return Err(Error::Internal(format!(
                "non-integral quotient coefficient {qk} dividing by (1 - {c} t)"
            )));
        }
        out.push(qk.to_integer());
    }
    Ok(IntPolynomial::from_coeffs(out))
}
