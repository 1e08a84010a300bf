//! Named catalog schemes, degree-bound metadata, and the counts-to-zeta
//! pipeline helper.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hodge;
use crate::schemes::{
    count_series, CountBudget, GroundField, PointCountSeries, SchemeDescriptor,
    SmoothnessEvidence,
};
use crate::zeta::{zeta_from_counts, ZetaRational};

/// Short names accepted by the CLI and the FFI surface.
pub const CATALOG_NAMES: &[&str] = &[
    "P1", "P2", "P3", "A1", "A2", "Gm", "dualnum", "E:a,b", "K3:quartic", "P1xP1", "BlP2",
];

/// Resolves a registry name to a descriptor. `E:a,b` takes integer
/// Weierstrass coefficients, e.g. `E:1,0`.
pub fn resolve(name: &str) -> Result<SchemeDescriptor> {
    if let Some(rest) = name.strip_prefix("E:") {
        let parts: Vec<&str> = rest.split(',').collect();
        if parts.len() != 2 {
            return Err(Error::Argument(format!(
                "elliptic catalog entries look like E:a,b, got '{name}'"
            )));
        }
        let a: i64 = parts[0]
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("bad coefficient in '{name}'")))?;
        let b: i64 = parts[1]
            .trim()
            .parse()
            .map_err(|_| Error::Argument(format!("bad coefficient in '{name}'")))?;
        return Ok(SchemeDescriptor::elliptic(a, b));
    }
    match name {
        "pt" | "point" => Ok(SchemeDescriptor::point()),
        "P1" => Ok(SchemeDescriptor::projective(1)),
        "P2" => Ok(SchemeDescriptor::projective(2)),
        "P3" => Ok(SchemeDescriptor::projective(3)),
        "A1" => Ok(SchemeDescriptor::open_complement(
            SchemeDescriptor::projective(1),
            SchemeDescriptor::point(),
        )),
        "A2" => Ok(SchemeDescriptor::open_complement(
            SchemeDescriptor::projective(2),
            SchemeDescriptor::projective(1),
        )),
        "Gm" => Ok(SchemeDescriptor::open_complement(
            SchemeDescriptor::projective(1),
            SchemeDescriptor::disjoint_union(SchemeDescriptor::point(), SchemeDescriptor::point()),
        )),
        "dualnum" => Ok(SchemeDescriptor::thickening(
            SchemeDescriptor::point(),
            "F_p[x]/(x^2)",
        )),
        "K3:quartic" => Ok(SchemeDescriptor::fermat_hypersurface(3, 4)),
        "P1xP1" => Ok(SchemeDescriptor::product(
            SchemeDescriptor::projective(1),
            SchemeDescriptor::projective(1),
        )),
        "BlP2" => Ok(SchemeDescriptor::blowup_at_point(SchemeDescriptor::projective(2))),
        other => Err(Error::Argument(format!("unknown scheme '{other}'"))),
    }
}

/// Degree bounds `(num, den)` for the zeta rational function, from Betti
/// metadata of the catalog grammar.
pub fn zeta_degree_bounds(desc: &SchemeDescriptor) -> Result<(usize, usize)> {
    use SchemeDescriptor::*;
    Ok(match desc {
        Empty => (0, 0),
        Point | AffineSpace { .. } => (0, 1),
        ProjectiveSpace { n } => (0, *n as usize + 1),
        EllipticCurve { .. } => (2, 2),
        ProjectiveHypersurface { ambient, poly } => {
            let d = *ambient as usize - 1;
            let deg = poly
                .homogeneous_degree()
                .ok_or_else(|| Error::Validation("inhomogeneous hypersurface".into()))?;
            let middle = hodge::hypersurface_diamond(d, deg)?.middle_betti() as usize;
            // b_i = 1 at even i != d, 0 at odd i != d, b_d = middle
            let mut num = 0usize;
            let mut den = 0usize;
            for i in 0..=2 * d {
                let b = if i == d { middle } else { usize::from(i % 2 == 0) };
                if i % 2 == 0 {
                    den += b;
                } else {
                    num += b;
                }
            }
            (num, den)
        }
        Product { left, right } => {
            let (na, da) = zeta_degree_bounds(left)?;
            let (nb, db) = zeta_degree_bounds(right)?;
            (na * db + da * nb, da * db + na * nb)
        }
        DisjointUnion { left, right } => {
            let (na, da) = zeta_degree_bounds(left)?;
            let (nb, db) = zeta_degree_bounds(right)?;
            (na + nb, da + db)
        }
        OpenComplement { ambient, closed } => {
            let (na, da) = zeta_degree_bounds(ambient)?;
            let (nz, dz) = zeta_degree_bounds(closed)?;
            (na + dz, da + nz)
        }
        Thickening { reduced, .. } => zeta_degree_bounds(reduced)?,
        BlowupAtRationalPoint { base } => {
            let (nb, db) = zeta_degree_bounds(base)?;
            let d = base.dimension();
            (nb + 1, db + d as usize)
        }
    })
}

/// Smooth-properness as far as the catalog can certify it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SmoothProperStatus {
    Certified,
    /// Smoothness not certified, only searched over small extensions.
    Heuristic { checked_up_to: u32 },
    No { reason: String },
}

pub fn smooth_proper_status(
    desc: &SchemeDescriptor,
    field: &GroundField,
    budget: &CountBudget,
) -> Result<SmoothProperStatus> {
    use SchemeDescriptor::*;
    Ok(match desc {
        Point | ProjectiveSpace { .. } => SmoothProperStatus::Certified,
        EllipticCurve { .. } => match desc.validate(field) {
            Ok(()) => SmoothProperStatus::Certified,
            Err(e) => SmoothProperStatus::No { reason: e.to_string() },
        },
        ProjectiveHypersurface { .. } => {
            match crate::schemes::smoothness_evidence(desc, field, budget)? {
                SmoothnessEvidence::CertifiedDiagonal
                | SmoothnessEvidence::CertifiedDiscriminant => SmoothProperStatus::Certified,
                SmoothnessEvidence::JacobianHeuristic { checked_up_to } => {
                    SmoothProperStatus::Heuristic { checked_up_to }
                }
                SmoothnessEvidence::SingularPointFound { k } => SmoothProperStatus::No {
                    reason: format!("singular point over F_{{p^{k}}}"),
                },
                SmoothnessEvidence::NotApplicable => {
                    SmoothProperStatus::No { reason: "not a hypersurface".into() }
                }
            }
        }
        Product { left, right } | DisjointUnion { left, right } => {
            let a = smooth_proper_status(left, field, budget)?;
            let b = smooth_proper_status(right, field, budget)?;
            match (a, b) {
                (SmoothProperStatus::No { reason }, _) | (_, SmoothProperStatus::No { reason }) => {
                    SmoothProperStatus::No { reason }
                }
                (SmoothProperStatus::Heuristic { checked_up_to }, _)
                | (_, SmoothProperStatus::Heuristic { checked_up_to }) => {
                    SmoothProperStatus::Heuristic { checked_up_to }
                }
                _ => SmoothProperStatus::Certified,
            }
        }
        BlowupAtRationalPoint { base } => {
            if base.dimension() != 2 {
                SmoothProperStatus::No {
                    reason: "blowups are only certified over surfaces".into(),
                }
            } else {
                smooth_proper_status(base, field, budget)?
            }
        }
        Empty => SmoothProperStatus::No { reason: "empty scheme".into() },
        AffineSpace { .. } | OpenComplement { .. } => {
            SmoothProperStatus::No { reason: "not proper".into() }
        }
        Thickening { .. } => SmoothProperStatus::No { reason: "not reduced".into() },
    })
}

/// A zeta function together with the data used to produce it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ZetaComputation {
    pub zeta: ZetaRational,
    pub num_bound: usize,
    pub den_bound: usize,
    pub counts: PointCountSeries,
}

/// Counts-to-zeta pipeline: degree bounds from catalog metadata, then
/// `K = num + den + 1` counts (one beyond determination, as a consistency
/// check), then exact reconstruction.
pub fn zeta_of_scheme(
    desc: &SchemeDescriptor,
    field: &GroundField,
    budget: &CountBudget,
) -> Result<ZetaComputation> {
    let (num_bound, den_bound) = zeta_degree_bounds(desc)?;
    let k = (num_bound + den_bound + 1) as u32;
    let counts = count_series(desc, field, k, budget)?;
    let zeta = zeta_from_counts(&counts, num_bound, den_bound)?;
    Ok(ZetaComputation { zeta, num_bound, den_bound, counts })
}

/// Whether the budget admits the `K = num + den + 1` counts the
/// reconstruction needs. Purely a static check; nothing is enumerated.
pub fn zeta_feasible(desc: &SchemeDescriptor, field: &GroundField, budget: &CountBudget) -> bool {
    if desc.validate(field).is_err() {
        return false;
    }
    let Ok((num_bound, den_bound)) = zeta_degree_bounds(desc) else {
        return false;
    };
    let k = (num_bound + den_bound + 1) as u32;
    (1..=k).all(|ki| crate::schemes::enumeration_within_budget(desc, field, ki, budget).is_ok())
}
