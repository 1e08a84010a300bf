//! Hodge diamonds for the catalog and the two correction exponents built
//! from them.
//!
//! `correction_exponent` is the alternating double sum
//! `sum (-1)^(i+j) (n-j) h^i(Omega^j)` over `0 <= i <= d`, `0 <= j <= n`.
//! `nygaard_quotient_exponent` is the telescoping sum of truncated de Rham
//! Euler characteristics, `sum_{j<n} sum_i (-1)^i sum_{a+b=i, b<=j}
//! h^{a,b}`. The two are computed by the two different formulas on
//! purpose: their equality (for any entry matrix, symmetric or not) is one
//! of the identities this crate exists to check.
//!
//! Catalog diamonds carry characteristic-zero Hodge numbers. That is an
//! assumption of the pipeline for the degeneration-free cases it supports
//! (projective spaces, curves, products, smooth complete intersections)
//! and is recorded as a caveat in every downstream report.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::schemes::{GroundField, SchemeDescriptor};

/// Matrix of Hodge numbers `h[i][j] = h^i(X, Omega^j)`, `0 <= i, j <= d`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HodgeDiamond {
    pub d: usize,
    pub h: Vec<Vec<u64>>,
}

impl HodgeDiamond {
    pub fn zeros(d: usize) -> Self {
        HodgeDiamond { d, h: vec![vec![0; d + 1]; d + 1] }
    }

    pub fn point() -> Self {
        HodgeDiamond { d: 0, h: vec![vec![1]] }
    }

    pub fn projective_space(n: usize) -> Self {
        let mut hd = HodgeDiamond::zeros(n);
        for j in 0..=n {
            hd.h[j][j] = 1;
        }
        hd
    }

    /// Smooth proper curve of genus g.
    pub fn curve(genus: u64) -> Self {
        let mut hd = HodgeDiamond::zeros(1);
        hd.h[0][0] = 1;
        hd.h[1][1] = 1;
        hd.h[0][1] = genus;
        hd.h[1][0] = genus;
        hd
    }

    pub fn elliptic_curve() -> Self {
        HodgeDiamond::curve(1)
    }

    /// Entry with out-of-range indices reading as zero.
    pub fn entry(&self, i: i64, j: i64) -> u64 {
        if i < 0 || j < 0 || i > self.d as i64 || j > self.d as i64 {
            0
        } else {
            self.h[i as usize][j as usize]
        }
    }

    pub fn is_serre_symmetric(&self) -> bool {
        let d = self.d;
        (0..=d).all(|i| (0..=d).all(|j| self.h[i][j] == self.h[d - i][d - j]))
    }

    /// Kunneth convolution: `h^{i,j}(A x B) = sum h^{a,b}(A) h^{c,e}(B)`
    /// over `a+c=i`, `b+e=j`.
    pub fn kunneth(&self, other: &HodgeDiamond) -> HodgeDiamond {
        let d = self.d + other.d;
        let mut out = HodgeDiamond::zeros(d);
        for i in 0..=d {
            for j in 0..=d {
                let mut acc = 0u64;
                for a in 0..=i.min(self.d) {
                    for b in 0..=j.min(self.d) {
                        let c = i - a;
                        let e = j - b;
                        acc += self.h[a][b] * other.entry(c as i64, e as i64);
                    }
                }
                out.h[i][j] = acc;
            }
        }
        out
    }

    /// Entrywise sum (disjoint unions), padding the smaller diamond.
    pub fn direct_sum(&self, other: &HodgeDiamond) -> HodgeDiamond {
        let d = self.d.max(other.d);
        let mut out = HodgeDiamond::zeros(d);
        for i in 0..=d {
            for j in 0..=d {
                out.h[i][j] = self.entry(i as i64, j as i64) + other.entry(i as i64, j as i64);
            }
        }
        out
    }

    /// Sum of the middle anti-diagonal: the middle Betti number for the
    /// varieties this catalog certifies.
    pub fn middle_betti(&self) -> u64 {
        (0..=self.d).map(|j| self.h[self.d - j][j]).sum()
    }
}

/// chi(P^n, O(m)) = binomial(m + n, n) as a polynomial in m, exact.
fn chi_projective_twist(n: usize, m: i64) -> i128 {
    // product (m + 1) .. (m + n) / n!
    let mut num: i128 = 1;
    for i in 1..=n as i64 {
        num *= (m + i) as i128;
    }
    let mut fact: i128 = 1;
    for i in 1..=n as i128 {
        fact *= i;
    }
    num / fact
}

fn binomial(n: usize, k: usize) -> i128 {
    if k > n {
        return 0;
    }
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// chi(P^n, Omega^j(m)) via the exterior powers of the Euler sequence.
fn chi_projective_forms(n: usize, j: usize, m: i64) -> i128 {
    if j == 0 {
        return chi_projective_twist(n, m);
    }
    binomial(n + 1, j) * chi_projective_twist(n, m - j as i64) - chi_projective_forms(n, j - 1, m)
}

/// chi(X, Omega^j_X(m)) for a smooth hypersurface of degree `deg` in
/// `P^{d+1}`, by the conormal and restriction sequences.
fn chi_hypersurface_forms(d: usize, deg: i64, j: usize, m: i64) -> i128 {
    let ambient = d + 1;
    let restr = chi_projective_forms(ambient, j, m) - chi_projective_forms(ambient, j, m - deg);
    if j == 0 {
        restr
    } else {
        restr - chi_hypersurface_forms(d, deg, j - 1, m - deg)
    }
}

/// Hodge numbers of a smooth hypersurface of dimension `d >= 1` and degree
/// `deg` in `P^{d+1}`: off the middle row the diamond looks like
/// projective space, and the middle entries are recovered from the exact
/// coherent Euler characteristics `chi(X, Omega^j)` (the chi_y-genus
/// coefficients).
pub fn hypersurface_diamond(d: usize, deg: u32) -> Result<HodgeDiamond> {
    if d == 0 {
        return Err(Error::Unsupported("zero-dimensional hypersurface".into()));
    }
    if deg == 0 {
        return Err(Error::Argument("hypersurface degree must be positive".into()));
    }
    let mut hd = HodgeDiamond::zeros(d);
    for j in 0..=d {
        if 2 * j != d {
            hd.h[j][j] = 1;
        }
    }
    for j in 0..=d {
        let chi = chi_hypersurface_forms(d, deg as i64, j, 0);
        // chi = (-1)^(d-j) h^{d-j,j} + off-middle diagonal contribution
        let off: i128 = if 2 * j != d {
            if j.is_multiple_of(2) { 1 } else { -1 }
        } else {
            0
        };
        let signed = chi - off;
        let want_sign = if (d - j).is_multiple_of(2) { 1 } else { -1 };
        let middle = signed * want_sign as i128;
        if middle < 0 {
            return Err(Error::Internal(format!(
                "negative middle Hodge number for degree {deg} hypersurface of dimension {d}"
            )));
        }
        hd.h[d - j][j] += middle as u64;
    }
    Ok(hd)
}

/// Independent oracle for the primitive middle Hodge numbers of a smooth
/// degree-`deg` hypersurface of dimension `d`:
/// `h^{d-q,q}_prim = [t^{(q+1) deg - (d+2)}] ((1-t^{deg-1})/(1-t))^{d+2}`.
pub fn hypersurface_primitive_middle(d: usize, deg: u32, q: usize) -> u64 {
    if deg == 0 {
        return 0;
    }
    // ((1 - t^(deg-1))/(1 - t))^(d+2) = (1 + t + .. + t^(deg-2))^(d+2)
    let block_len = (deg as usize).saturating_sub(1);
    if block_len == 0 {
        return 0; // degree 1: hyperplane, no primitive cohomology
    }
    let target = (q as i64 + 1) * deg as i64 - (d as i64 + 2);
    if target < 0 {
        return 0;
    }
    let mut poly = vec![1u128];
    for _ in 0..d + 2 {
        let mut next = vec![0u128; poly.len() + block_len - 1];
        for (a, &ca) in poly.iter().enumerate() {
            for b in 0..block_len {
                next[a + b] += ca;
            }
        }
        poly = next;
    }
    poly.get(target as usize).copied().unwrap_or(0) as u64
}

/// Hodge diamond of a catalog smooth proper descriptor.
pub fn hodge_of(desc: &SchemeDescriptor, field: &GroundField) -> Result<HodgeDiamond> {
    match desc {
        SchemeDescriptor::Point => Ok(HodgeDiamond::point()),
        SchemeDescriptor::ProjectiveSpace { n } => Ok(HodgeDiamond::projective_space(*n as usize)),
        SchemeDescriptor::EllipticCurve { .. } => {
            desc.validate(field)?;
            Ok(HodgeDiamond::elliptic_curve())
        }
        SchemeDescriptor::ProjectiveHypersurface { ambient, poly } => {
            desc.validate(field)?;
            let deg = poly
                .homogeneous_degree()
                .ok_or_else(|| Error::Validation("inhomogeneous hypersurface".into()))?;
            let d = *ambient as usize - 1;
            if d == 0 {
                return Err(Error::Unsupported(
                    "points cut out by binary forms are not catalog varieties".into(),
                ));
            }
            let evidence = crate::schemes::smoothness_evidence(
                desc,
                field,
                &crate::schemes::CountBudget::default(),
            )?;
            if let crate::schemes::SmoothnessEvidence::SingularPointFound { k } = evidence {
                return Err(Error::Unsupported(format!(
                    "hypersurface is singular (point over F_{{p^{k}}}); smooth Hodge numbers do not apply"
                )));
            }
            hypersurface_diamond(d, deg)
        }
        SchemeDescriptor::Product { left, right } => {
            let a = hodge_of(left, field)?;
            let b = hodge_of(right, field)?;
            Ok(a.kunneth(&b))
        }
        SchemeDescriptor::DisjointUnion { left, right } => {
            let a = hodge_of(left, field)?;
            let b = hodge_of(right, field)?;
            Ok(a.direct_sum(&b))
        }
        SchemeDescriptor::BlowupAtRationalPoint { base } => {
            let inner = hodge_of(base, field)?;
            if inner.d != 2 {
                return Err(Error::Unsupported(
                    "blowup Hodge numbers are only certified for surfaces".into(),
                ));
            }
            let mut out = inner;
            out.h[1][1] += 1;
            Ok(out)
        }
        other => Err(Error::Unsupported(format!(
            "no Hodge diamond for non-smooth or non-proper descriptor {}",
            other.short_name()
        ))),
    }
}

/// The correction exponent `sum_{0<=i<=d, 0<=j<=n} (-1)^(i+j) (n-j) h^i(Omega^j)`.
///
/// The j-sum is empty for n < 0; entries beyond the diamond read as zero.
pub fn correction_exponent(hd: &HodgeDiamond, n: i64) -> i64 {
    let mut acc = 0i64;
    for i in 0..=hd.d as i64 {
        let mut j = 0i64;
        while j <= n {
            let h = hd.entry(i, j);
            if h != 0 {
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                acc += sign * (n - j) * h as i64;
            }
            j += 1;
        }
    }
    acc
}

/// The telescoping exponent: for each truncation layer `j = 0..n-1`, the
/// alternating sum over total degree `i` of the Hodge numbers `h^{a,b}`
/// with `a+b=i`, `b <= j`. Layers below zero are an empty filtration, so
/// `n <= 0` yields 0.
pub fn nygaard_quotient_exponent(hd: &HodgeDiamond, n: i64) -> i64 {
    if n <= 0 {
        return 0;
    }
    let mut acc = 0i64;
    for j in 0..n {
        for i in 0..=(2 * hd.d as i64) {
            let mut layer = 0i64;
            for b in 0..=j.min(i) {
                let a = i - b;
                layer += hd.entry(a, b) as i64;
            }
            if layer != 0 {
                let sign = if i % 2 == 0 { 1 } else { -1 };
                acc += sign * layer;
            }
        }
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn projective_space_diamonds() {
        let p2 = HodgeDiamond::projective_space(2);
        for i in 0..=2 {
            for j in 0..=2 {
                assert_eq!(p2.h[i][j], u64::from(i == j));
            }
        }
        assert!(p2.is_serre_symmetric());
    }

    #[test]
    fn elliptic_diamond() {
        let e = HodgeDiamond::elliptic_curve();
        assert_eq!(e.h, vec![vec![1, 1], vec![1, 1]]);
        assert!(e.is_serre_symmetric());
    }

    #[test]
    fn quartic_surface_diamond() {
        let k3 = hypersurface_diamond(2, 4).unwrap();
        assert_eq!(k3.h[0][0], 1);
        assert_eq!(k3.h[2][0], 1);
        assert_eq!(k3.h[0][2], 1);
        assert_eq!(k3.h[1][1], 20);
        assert_eq!(k3.h[2][2], 1);
        assert_eq!(k3.h[1][0], 0);
        assert!(k3.is_serre_symmetric());
        assert_eq!(k3.middle_betti(), 22);
    }

    #[test]
    fn hypersurface_diamond_matches_primitive_oracle() {
        // cross-check chi-based middle rows against the binomial formula
        for (d, deg) in [(1usize, 3u32), (2, 2), (2, 3), (2, 4), (3, 3), (3, 4), (4, 2)] {
            let hd = hypersurface_diamond(d, deg).unwrap();
            for q in 0..=d {
                let prim = hypersurface_primitive_middle(d, deg, q);
                let nonprim = u64::from(d % 2 == 0 && 2 * q == d);
                assert_eq!(
                    hd.h[d - q][q],
                    prim + nonprim,
                    "degree {deg}, dim {d}, q {q}"
                );
            }
            assert!(hd.is_serre_symmetric(), "degree {deg}, dim {d}");
        }
    }

    #[test]
    fn elliptic_cubic_agrees_with_genus_one() {
        let cubic = hypersurface_diamond(1, 3).unwrap();
        assert_eq!(cubic, HodgeDiamond::curve(1));
    }

    #[test]
    fn every_catalog_diamond_is_serre_symmetric() {
        use crate::catalog::resolve;
        use crate::schemes::GroundField;
        let field = GroundField::new(5).unwrap();
        for name in ["pt", "P1", "P2", "P3", "E:1,0", "K3:quartic", "P1xP1", "BlP2"] {
            let hd = hodge_of(&resolve(name).unwrap(), &field).unwrap();
            assert!(hd.is_serre_symmetric(), "{name}");
        }
    }

    #[test]
    fn singular_hypersurface_rejected() {
        use crate::schemes::{GroundField, SchemeDescriptor};
        // char 2 turns the Fermat quartic into a fourfold plane
        let k3 = SchemeDescriptor::fermat_hypersurface(3, 4);
        let field = GroundField::new(2).unwrap();
        assert!(matches!(hodge_of(&k3, &field), Err(Error::Unsupported(_))));
        // while over F_5 it is certified smooth
        let field = GroundField::new(5).unwrap();
        assert!(hodge_of(&k3, &field).is_ok());
    }

    #[test]
    fn kunneth_examples() {
        let pt = HodgeDiamond::point();
        let p1 = HodgeDiamond::projective_space(1);
        assert_eq!(pt.kunneth(&p1), p1);
        let p1xp1 = p1.kunneth(&p1);
        assert_eq!(p1xp1.h[0][0], 1);
        assert_eq!(p1xp1.h[1][1], 2);
        assert_eq!(p1xp1.h[2][2], 1);
        assert_eq!(p1xp1.h[1][0], 0);
        let e = HodgeDiamond::elliptic_curve();
        let exe = e.kunneth(&e);
        assert_eq!(exe.h[1][0], 2);
        assert_eq!(exe.h[0][1], 2);
        assert_eq!(exe.h[1][1], 4);
        assert_eq!(exe.h[2][1], 2);
        assert_eq!(exe.h[1][2], 2);
        assert_eq!(exe.h[0][0], 1);
        assert_eq!(exe.h[2][2], 1);
    }

    #[test]
    fn kunneth_commutative_associative_with_unit() {
        let shapes = [
            HodgeDiamond::point(),
            HodgeDiamond::projective_space(1),
            HodgeDiamond::curve(2),
            HodgeDiamond::projective_space(2),
        ];
        let pt = HodgeDiamond::point();
        for a in &shapes {
            assert_eq!(&pt.kunneth(a), a);
            for b in &shapes {
                assert_eq!(a.kunneth(b), b.kunneth(a));
                for c in &shapes {
                    assert_eq!(a.kunneth(b).kunneth(c), a.kunneth(&b.kunneth(c)));
                }
            }
        }
    }

    #[test]
    fn correction_exponent_examples() {
        // n = 0 is always 0
        for hd in [HodgeDiamond::projective_space(3), HodgeDiamond::curve(5)] {
            assert_eq!(correction_exponent(&hd, 0), 0);
        }
        // P^2 at n=2: (0,0) weight 2, (1,1) weight 1, (2,2) weight 0
        assert_eq!(correction_exponent(&HodgeDiamond::projective_space(2), 2), 3);
        // genus-g curve at n=1: 1 - g
        for g in 0..5u64 {
            assert_eq!(correction_exponent(&HodgeDiamond::curve(g), 1), 1 - g as i64);
        }
        // negative n: empty sum
        assert_eq!(correction_exponent(&HodgeDiamond::projective_space(3), -2), 0);
    }

    #[test]
    fn nygaard_exponent_examples() {
        assert_eq!(nygaard_quotient_exponent(&HodgeDiamond::projective_space(1), 1), 1);
        assert_eq!(nygaard_quotient_exponent(&HodgeDiamond::projective_space(2), 2), 3);
        assert_eq!(nygaard_quotient_exponent(&HodgeDiamond::elliptic_curve(), 1), 0);
        assert_eq!(nygaard_quotient_exponent(&HodgeDiamond::curve(3), -1), 0);
    }

    #[test]
    fn exponent_identity_on_catalog_diamonds() {
        let diamonds = [
            HodgeDiamond::point(),
            HodgeDiamond::projective_space(1),
            HodgeDiamond::projective_space(2),
            HodgeDiamond::projective_space(3),
            HodgeDiamond::elliptic_curve(),
            HodgeDiamond::curve(7),
            hypersurface_diamond(2, 4).unwrap(),
            HodgeDiamond::projective_space(1).kunneth(&HodgeDiamond::projective_space(1)),
            HodgeDiamond::elliptic_curve().kunneth(&HodgeDiamond::elliptic_curve()),
        ];
        for hd in &diamonds {
            for n in 0..=8i64 {
                assert_eq!(
                    correction_exponent(hd, n),
                    nygaard_quotient_exponent(hd, n),
                    "diamond d={} at n={n}",
                    hd.d
                );
            }
        }
    }

    proptest! {
        // the identity is combinatorial: no symmetry needed
        #[test]
        fn exponent_identity_random_asymmetric(
            d in 0usize..=4,
            entries in proptest::collection::vec(0u64..=20, 25),
            n in 0i64..=6,
        ) {
            let mut hd = HodgeDiamond::zeros(d);
            for i in 0..=d {
                for j in 0..=d {
                    hd.h[i][j] = entries[i * 5 + j];
                }
            }
            prop_assert_eq!(correction_exponent(&hd, n), nygaard_quotient_exponent(&hd, n));
        }
    }
}
