//! Arithmetic in `F_{p^k}` with a deterministically chosen modulus.
//!
//! Elements are coefficient vectors of length `k` modulo the first monic
//! irreducible polynomial of degree `k` in the base-p digit order, so
//! counts are reproducible without external tables.

use crate::error::{Error, Result};
use crate::numerics::ensure_prime;

/// Element of `F_{p^k}`: coefficients of `1, x, ..., x^{k-1}`, each
/// reduced mod p.
pub type FElem = Vec<u64>;

#[derive(Clone, Debug)]
pub struct ExtField {
    p: u64,
    k: u32,
    /// Coefficients `m_0..m_{k-1}` of the monic modulus
    /// `x^k + m_{k-1} x^{k-1} + ... + m_0`.
    modulus: Vec<u64>,
}

// mod-p scalar helpers; p^2 < 2^64 for all supported p
fn addm(a: u64, b: u64, p: u64) -> u64 {
    let s = a + b;
    if s >= p {
        s - p
    } else {
        s
    }
}

fn subm(a: u64, b: u64, p: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + p - b
    }
}

fn mulm(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

/// Product of dense coefficient vectors over F_p.
fn poly_mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = addm(out[i + j], mulm(x, y, p), p);
        }
    }
    out
}

/// Reduce a dense polynomial by the monic modulus of degree k.
fn poly_reduce(mut a: Vec<u64>, modulus: &[u64], k: usize, p: u64) -> Vec<u64> {
    while a.len() > k {
        let top = a.pop().unwrap();
        if top == 0 {
            continue;
        }
        let shift = a.len() - k;
        for (j, &m) in modulus.iter().enumerate() {
            a[shift + j] = subm(a[shift + j], mulm(top, m, p), p);
        }
    }
    a.resize(k, 0);
    a
}

fn poly_trim(mut a: Vec<u64>) -> Vec<u64> {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

/// gcd of dense polynomials over F_p (monic output, possibly constant).
fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = poly_trim(a.to_vec());
    let mut b = poly_trim(b.to_vec());
    while !b.is_empty() {
        // a mod b
        let lead_inv = inv_mod(b[b.len() - 1], p);
        while a.len() >= b.len() && !a.is_empty() {
            let factor = mulm(a[a.len() - 1], lead_inv, p);
            let shift = a.len() - b.len();
            for (j, &m) in b.iter().enumerate() {
                a[shift + j] = subm(a[shift + j], mulm(factor, m, p), p);
            }
            a = poly_trim(a);
        }
        std::mem::swap(&mut a, &mut b);
    }
    if let Some(&lead) = a.last() {
        let li = inv_mod(lead, p);
        a = a.into_iter().map(|c| mulm(c, li, p)).collect();
    }
    a
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // Fermat; p prime, a != 0
    pow_mod(a, p - 2, p)
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mulm(acc, a, p);
        }
        a = mulm(a, a, p);
        e >>= 1;
    }
    acc
}

/// x^(p^j) mod f, computed by iterated p-th powers of x.
fn frobenius_power(modulus: &[u64], k: usize, p: u64, j: u32) -> Vec<u64> {
    let mut x = vec![0u64; k];
    if k == 1 {
        // x reduces to -m_0
        x[0] = subm(0, modulus[0] % p, p);
    } else {
        x[1] = 1;
    }
    let mut cur = x;
    for _ in 0..j {
        cur = poly_pow_mod(&cur, p, modulus, k, p);
    }
    cur
}

fn poly_pow_mod(a: &[u64], mut e: u64, modulus: &[u64], k: usize, p: u64) -> Vec<u64> {
    let mut acc = vec![0u64; k];
    acc[0] = 1;
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = poly_reduce(poly_mul(&acc, &base, p), modulus, k, p);
        }
        base = poly_reduce(poly_mul(&base, &base, p), modulus, k, p);
        e >>= 1;
    }
    acc
}

/// Rabin irreducibility test for a monic degree-k candidate.
fn is_irreducible(modulus: &[u64], k: u32, p: u64) -> bool {
    let ku = k as usize;
    // x^(p^k) == x mod f
    let frob_k = frobenius_power(modulus, ku, p, k);
    let mut x = vec![0u64; ku];
    if ku == 1 {
        x[0] = subm(0, modulus[0] % p, p);
    } else {
        x[1] = 1;
    }
    if frob_k != x {
        return false;
    }
    // gcd(x^(p^(k/q)) - x, f) constant for every prime q | k
    let mut rest = k;
    let mut q = 2u32;
    let mut prime_divisors = Vec::new();
    while q * q <= rest {
        if rest.is_multiple_of(q) {
            prime_divisors.push(q);
            while rest.is_multiple_of(q) {
                rest /= q;
            }
        }
        q += 1;
    }
    if rest > 1 {
        prime_divisors.push(rest);
    }
    let mut full = modulus.to_vec();
    full.push(1); // monic of degree k for the gcd
    for q in prime_divisors {
        let mut diff = frobenius_power(modulus, ku, p, k / q);
        diff[if ku == 1 { 0 } else { 1 }] = subm(diff[if ku == 1 { 0 } else { 1 }], 1, p);
        if ku == 1 {
            // degree-1 polynomials are always irreducible
            continue;
        }
        let g = poly_gcd(&diff, &full, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

impl ExtField {
    /// Constructs `F_{p^k}` with the first irreducible monic modulus in
    /// base-p digit order (constant digit least significant).
    pub fn new(p: u64, k: u32) -> Result<Self> {
        ensure_prime(p)?;
        if k == 0 {
            return Err(Error::Argument("extension degree must be positive".into()));
        }
        let ku = k as usize;
        let total = p.checked_pow(k).ok_or_else(|| {
            Error::Budget(format!("field F_{{{p}^{k}}} too large to construct"))
        })?;
        for m in 0..total {
            let mut digits = Vec::with_capacity(ku);
            let mut rest = m;
            for _ in 0..ku {
                digits.push(rest % p);
                rest /= p;
            }
            if is_irreducible(&digits, k, p) {
                return Ok(ExtField { p, k, modulus: digits });
            }
        }
        Err(Error::Internal(format!("no irreducible polynomial of degree {k} over F_{p}")))
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.p.pow(self.k)
    }

    pub fn zero(&self) -> FElem {
        vec![0; self.k as usize]
    }

    pub fn one(&self) -> FElem {
        let mut e = self.zero();
        e[0] = 1;
        e
    }

    /// Embeds an integer (mod p) as a constant.
    pub fn from_i64(&self, c: i64) -> FElem {
        let p = self.p as i64;
        let mut e = self.zero();
        e[0] = (((c % p) + p) % p) as u64;
        e
    }

    pub fn is_zero(&self, a: &FElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &FElem, b: &FElem) -> FElem {
        a.iter().zip(b).map(|(&x, &y)| addm(x, y, self.p)).collect()
    }

    pub fn sub(&self, a: &FElem, b: &FElem) -> FElem {
        a.iter().zip(b).map(|(&x, &y)| subm(x, y, self.p)).collect()
    }

    pub fn mul(&self, a: &FElem, b: &FElem) -> FElem {
        poly_reduce(poly_mul(a, b, self.p), &self.modulus, self.k as usize, self.p)
    }

    pub fn pow(&self, a: &FElem, e: u64) -> FElem {
        poly_pow_mod(a, e, &self.modulus, self.k as usize, self.p)
    }

    /// Canonical integer key `sum a_i p^i`, unique per element.
    pub fn key(&self, a: &FElem) -> u64 {
        let mut acc = 0u64;
        for &c in a.iter().rev() {
            acc = acc * self.p + c;
        }
        acc
    }

    pub fn from_key(&self, mut key: u64) -> FElem {
        let mut e = self.zero();
        for slot in e.iter_mut() {
            *slot = key % self.p;
            key /= self.p;
        }
        e
    }

    /// Deterministic enumeration of all field elements.
    pub fn elements(&self) -> impl Iterator<Item = FElem> + '_ {
        (0..self.size()).map(|key| self.from_key(key))
    }

    /// Number of square roots of `a`: 2, 1 (a = 0), or 0. Requires p odd.
    pub fn sqrt_count(&self, a: &FElem) -> u64 {
        debug_assert!(self.p != 2);
        if self.is_zero(a) {
            return 1;
        }
        let chi = self.pow(a, (self.size() - 1) / 2);
        if chi == self.one() {
            2
        } else {
            0
        }
    }
}
