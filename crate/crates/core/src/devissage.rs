//! Dévissage calculus: zeta multiplicativity over closed decompositions,
//! blowup-square value identities, compactly supported special values, and
//! fixpoint propagation of the verified-formula property.
//!
//! Schemes here are symbolic descriptors; gluing arguments are replaced by
//! extensional checks (two registered compactifications must produce equal
//! reports), and the propagation ledger tracks derivability of the
//! property, not an independent numerical verification, except where the
//! zeta-level pipeline fully applies.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::catalog::{self, zeta_of_scheme};
use crate::error::{Error, Result};
use crate::schemes::{count_series, CountBudget, GroundField, SchemeDescriptor};
use crate::special::{special_value, SpecialValueReport};
use crate::zeta::ZetaRational;

/// Abstract blowup square `(Y' -> X', Y -> X)`: `X' -> X` proper,
/// `Y -> X` closed, an isomorphism off `Y`. At the counting level this
/// forces `N_k(X) + N_k(Y') = N_k(X') + N_k(Y)`, which registration
/// verifies.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlowupSquareInstance {
    pub y_prime: SchemeDescriptor,
    pub x_prime: SchemeDescriptor,
    pub y: SchemeDescriptor,
    pub x: SchemeDescriptor,
}

impl BlowupSquareInstance {
    /// Registers the square after checking the point-count identity for
    /// `k <= checked_k`.
    pub fn register(
        y_prime: SchemeDescriptor,
        x_prime: SchemeDescriptor,
        y: SchemeDescriptor,
        x: SchemeDescriptor,
        field: &GroundField,
        checked_k: u32,
        budget: &CountBudget,
    ) -> Result<Self> {
        let sq = BlowupSquareInstance { y_prime, x_prime, y, x };
        sq.check_counts(field, checked_k, budget)?;
        Ok(sq)
    }

    pub fn check_counts(
        &self,
        field: &GroundField,
        checked_k: u32,
        budget: &CountBudget,
    ) -> Result<()> {
        let nx = count_series(&self.x, field, checked_k, budget)?;
        let nyp = count_series(&self.y_prime, field, checked_k, budget)?;
        let nxp = count_series(&self.x_prime, field, checked_k, budget)?;
        let ny = count_series(&self.y, field, checked_k, budget)?;
        for k in 0..checked_k as usize {
            let lhs = &nx.counts[k] + &nyp.counts[k];
            let rhs = &nxp.counts[k] + &ny.counts[k];
            if lhs != rhs {
                return Err(Error::Validation(format!(
                    "blowup square count identity fails at k = {}: {lhs} != {rhs}",
                    k + 1
                )));
            }
        }
        Ok(())
    }

    /// The square for the blowup of a surface at a rational point.
    pub fn of_surface_blowup(base: SchemeDescriptor) -> BlowupSquareInstance {
        BlowupSquareInstance {
            y_prime: SchemeDescriptor::projective(1),
            x_prime: SchemeDescriptor::blowup_at_point(base.clone()),
            y: SchemeDescriptor::point(),
            x: base,
        }
    }

    /// The square comparing a thickening with its reduced subscheme.
    pub fn of_thickening(thick: SchemeDescriptor) -> BlowupSquareInstance {
        BlowupSquareInstance {
            y_prime: SchemeDescriptor::Empty,
            x_prime: thick.reduced(),
            y: SchemeDescriptor::Empty,
            x: thick,
        }
    }
}

/// Open piece with a chosen compactification: `u = x \ z`.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompactificationTriple {
    pub u: SchemeDescriptor,
    pub x: SchemeDescriptor,
    pub z: SchemeDescriptor,
}

impl CompactificationTriple {
    pub fn register(
        u: SchemeDescriptor,
        x: SchemeDescriptor,
        z: SchemeDescriptor,
        field: &GroundField,
        checked_k: u32,
        budget: &CountBudget,
    ) -> Result<Self> {
        let nu = count_series(&u, field, checked_k, budget)?;
        let nx = count_series(&x, field, checked_k, budget)?;
        let nz = count_series(&z, field, checked_k, budget)?;
        for k in 0..checked_k as usize {
            if &nx.counts[k] - &nz.counts[k] != nu.counts[k] {
                return Err(Error::Validation(format!(
                    "compactification count identity fails at k = {}",
                    k + 1
                )));
            }
        }
        Ok(CompactificationTriple { u, x, z })
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DecomposeReport {
    pub ambient_zeta: ZetaRational,
    pub closed_zeta: ZetaRational,
    pub complement_zeta: ZetaRational,
    pub holds: bool,
}

/// Verifies `Z(X) = Z(Z) * Z(X \ Z)` as exact rational functions, all
/// three reconstructed independently from counts.
pub fn decompose_check(
    x: &SchemeDescriptor,
    z: &SchemeDescriptor,
    field: &GroundField,
    budget: &CountBudget,
) -> Result<DecomposeReport> {
    let complement = SchemeDescriptor::open_complement(x.clone(), z.clone());
    let zx = zeta_of_scheme(x, field, budget)?.zeta;
    let zz = zeta_of_scheme(z, field, budget)?.zeta;
    let zu = zeta_of_scheme(&complement, field, budget)?.zeta;
    let product = zz.mul(&zu)?;
    let holds = product == zx;
    Ok(DecomposeReport { ambient_zeta: zx, closed_zeta: zz, complement_zeta: zu, holds })
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BlowupValueReport {
    pub n: i64,
    #[serde(with = "crate::ser::rational_string")]
    pub lhs: num_rational::BigRational,
    #[serde(with = "crate::ser::rational_string")]
    pub rhs: num_rational::BigRational,
    pub rho_lhs: i64,
    pub rho_rhs: i64,
    pub holds: bool,
}

/// Checks `C(X,n) C(Y',n) = C(X',n) C(Y,n)` and the matching signed pole
/// orders across a registered square.
pub fn blowup_value_identity(
    sq: &BlowupSquareInstance,
    field: &GroundField,
    n: i64,
    budget: &CountBudget,
) -> Result<BlowupValueReport> {
    sq.check_counts(field, 4, budget)?;
    let p = field.p();
    let report = |desc: &SchemeDescriptor| -> Result<SpecialValueReport> {
        let z = zeta_of_scheme(desc, field, budget)?.zeta;
        special_value(&z, p, n, &[])
    };
    let rx = report(&sq.x)?;
    let ryp = report(&sq.y_prime)?;
    let rxp = report(&sq.x_prime)?;
    let ry = report(&sq.y)?;
    let lhs = &rx.value * &ryp.value;
    let rhs = &rxp.value * &ry.value;
    let rho_lhs = rx.rho + ryp.rho;
    let rho_rhs = rxp.rho + ry.rho;
    let holds = lhs == rhs && rho_lhs == rho_rhs;
    Ok(BlowupValueReport { n, lhs, rhs, rho_lhs, rho_rhs, holds })
}

/// Compactly supported special value of an open piece: the special value
/// of `Z(X)/Z(Z)` at `n`. Registered alternative compactifications of the
/// same `u` must produce identical reports.
pub fn open_value(
    tr: &CompactificationTriple,
    field: &GroundField,
    n: i64,
    budget: &CountBudget,
) -> Result<SpecialValueReport> {
    let zx = zeta_of_scheme(&tr.x, field, budget)?.zeta;
    let zz = zeta_of_scheme(&tr.z, field, budget)?.zeta;
    let zc = zx.div(&zz)?;
    special_value(&zc, field.p(), n, &[])
}

/// Symbolic ledger for the verified-formula property: ids of schemes known
/// to satisfy it, plus square (4-element) and triple (3-element)
/// constraints.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyPLedger {
    pub known: BTreeSet<String>,
    pub squares: Vec<[String; 4]>,
    pub triples: Vec<[String; 3]>,
}

/// The empty scheme satisfies the property for trivial reasons and is
/// always in the known set.
pub const EMPTY_SCHEME_ID: &str = "empty";

impl Default for PropertyPLedger {
    fn default() -> Self {
        Self::new()
    }
}

impl PropertyPLedger {
    pub fn new() -> Self {
        let mut known = BTreeSet::new();
        known.insert(EMPTY_SCHEME_ID.to_string());
        PropertyPLedger { known, squares: Vec::new(), triples: Vec::new() }
    }

    pub fn add_known(&mut self, id: &str) {
        self.known.insert(id.to_string());
    }

    pub fn add_square(&mut self, ids: [&str; 4]) {
        self.squares.push(ids.map(|s| s.to_string()));
    }

    pub fn add_triple(&mut self, ids: [&str; 3]) {
        self.triples.push(ids.map(|s| s.to_string()));
    }
}

/// Least fixpoint of the two rules: a square with at least 3 known members
/// marks all 4 known; a triple with at least 2 known marks all 3 known.
/// Monotone on a finite set, hence terminating and order-independent.
pub fn propagate_property_p(ledger: &PropertyPLedger) -> PropertyPLedger {
    let mut out = ledger.clone();
    out.known.insert(EMPTY_SCHEME_ID.to_string());
    loop {
        let mut changed = false;
        for square in &out.squares {
            let known = square.iter().filter(|id| out.known.contains(*id)).count();
            if known == 3 {
                for id in square {
                    changed |= out.known.insert(id.clone());
                }
            }
        }
        for triple in &out.triples {
            let known = triple.iter().filter(|id| out.known.contains(*id)).count();
            if known == 2 {
                for id in triple {
                    changed |= out.known.insert(id.clone());
                }
            }
        }
        if !changed {
            return out;
        }
    }
}

/// Seeds a ledger with the catalog entries whose verification pipeline
/// reports a consistent formula for every `n` in `-1..=d+1`.
pub fn seed_known_from_catalog(
    names: &[&str],
    field: &GroundField,
    budget: &CountBudget,
) -> Result<PropertyPLedger> {
    let mut ledger = PropertyPLedger::new();
    for name in names {
        let desc = catalog::resolve(name)?;
        let d = desc.dimension().max(0);
        let mut all_consistent = true;
        for n in -1..=(d + 1) {
            match crate::special::verify_milne(&desc, field, n, &[], budget) {
                Ok(report) if report.consistent => {}
                _ => {
                    all_consistent = false;
                    break;
                }
            }
        }
        if all_consistent {
            ledger.add_known(name);
        }
    }
    Ok(ledger)
}
