//! Multivariate integer polynomials for hypersurface descriptions.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::schemes::gf::{ExtField, FElem};

/// Sparse polynomial in `vars` variables: a map from exponent tuples to
/// nonzero integer coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct MultiPoly {
    vars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl MultiPoly {
    pub fn new(vars: usize) -> Self {
        MultiPoly { vars, terms: BTreeMap::new() }
    }

    pub fn from_terms(vars: usize, terms: Vec<(Vec<u32>, BigInt)>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (exps, coeff) in terms {
            if exps.len() != vars {
                return Err(Error::Argument(format!(
                    "exponent tuple {exps:?} does not have {vars} entries"
                )));
            }
            if coeff.is_zero() {
                continue;
            }
            let entry = map.entry(exps).or_insert_with(BigInt::zero);
            *entry += coeff;
            if entry.is_zero() {
                // borrow ends before removal
            }
        }
        map.retain(|_, c| !c.is_zero());
        Ok(MultiPoly { vars, terms: map })
    }

    /// Convenience constructor from `(coefficient, exponents)` rows.
    pub fn from_i64_terms(vars: usize, rows: &[(i64, &[u32])]) -> Self {
        MultiPoly::from_terms(
            vars,
            rows.iter()
                .map(|(c, e)| (e.to_vec(), BigInt::from(*c)))
                .collect(),
        )
        .expect("static term table")
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    /// Total degree if the polynomial is homogeneous, else `None`.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for exps in self.terms.keys() {
            let d: u32 = exps.iter().sum();
            match deg {
                None => deg = Some(d),
                Some(existing) if existing != d => return None,
                _ => {}
            }
        }
        deg
    }

    pub fn partial(&self, var: usize) -> MultiPoly {
        let mut out = BTreeMap::new();
        for (exps, coeff) in &self.terms {
            let e = exps[var];
            if e == 0 {
                continue;
            }
            let mut reduced = exps.clone();
            reduced[var] = e - 1;
            let c = coeff * BigInt::from(e);
            let entry = out.entry(reduced).or_insert_with(BigInt::zero);
            *entry += c;
        }
        out.retain(|_, c: &mut BigInt| !c.is_zero());
        MultiPoly { vars: self.vars, terms: out }
    }

    /// Evaluates over `F_{p^k}` at a point given coordinatewise.
    pub fn eval(&self, field: &ExtField, point: &[FElem]) -> FElem {
        debug_assert_eq!(point.len(), self.vars);
        let p = BigInt::from(field.p());
        let mut acc = field.zero();
        for (exps, coeff) in &self.terms {
            let c = coeff.mod_floor(&p);
            let c: u64 = c.try_into().expect("reduced coefficient fits u64");
            if c == 0 {
                continue;
            }
            let mut term = field.from_i64(c as i64);
            for (var, &e) in exps.iter().enumerate() {
                if e > 0 {
                    term = field.mul(&term, &field.pow(&point[var], e as u64));
                }
            }
            acc = field.add(&acc, &term);
        }
        acc
    }

    /// True when every term is `c_i * x_i^d` with all variables present and
    /// every coefficient a unit mod p: the Fermat-type shape whose
    /// smoothness is certified exactly for p not dividing d.
    pub fn is_diagonal_form(&self, p: u64) -> bool {
        let Some(d) = self.homogeneous_degree() else {
            return false;
        };
        if d == 0 {
            return false;
        }
        let mut seen = vec![false; self.vars];
        let p = BigInt::from(p);
        for (exps, coeff) in &self.terms {
            let nonzero: Vec<usize> =
                (0..self.vars).filter(|&v| exps[v] != 0).collect();
            if nonzero.len() != 1 || exps[nonzero[0]] != d {
                return false;
            }
            if coeff.mod_floor(&p).is_zero() {
                return false;
            }
            seen[nonzero[0]] = true;
        }
        seen.into_iter().all(|s| s)
    }
}

impl fmt::Debug for MultiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(exps, c)| {
                let vars: Vec<String> = exps
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| if e == 1 { format!("x{v}") } else { format!("x{v}^{e}") })
                    .collect();
                if vars.is_empty() {
                    format!("{c}")
                } else {
                    format!("{c}*{}", vars.join("*"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[derive(Serialize, Deserialize)]
struct TermRow {
    exponents: Vec<u32>,
    #[serde(with = "crate::ser::bigint_string")]
    coeff: BigInt,
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            vars: usize,
            terms: Vec<TermRow>,
        }
        let rows = self
            .terms
            .iter()
            .map(|(e, c)| TermRow { exponents: e.clone(), coeff: c.clone() })
            .collect();
        Repr { vars: self.vars, terms: rows }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for MultiPoly {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            vars: usize,
            terms: Vec<TermRow>,
        }
        let repr = Repr::deserialize(deserializer)?;
        MultiPoly::from_terms(
            repr.vars,
            repr.terms.into_iter().map(|t| (t.exponents, t.coeff)).collect(),
        )
        .map_err(|e| D::Error::custom(e.to_string()))
    }
}
