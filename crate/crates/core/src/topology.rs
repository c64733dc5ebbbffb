//! Topological criteria for the base surface: vanishing of `H_1` of the
//! smooth locus, the abelian orbifold fundamental group `H_1^orb(S, Delta)`,
//! and the prime-cover obstruction.

use num::{BigInt, Integer, One, Signed, Zero};

use crate::abgroup::{smith_normal_form, AbGroup, IntMatrix};
use crate::error::Error;
use crate::surface::{BranchDivisor, OrbSurface};
use crate::{linalg, surface};

/// Certificate for the determinant criterion: `H_1(S^0, Z) = 0` iff the
/// Gram determinant of the Picard basis equals the product of the local
/// class group orders.
#[derive(Debug, Clone)]
pub struct DetCertificate {
    pub holds: bool,
    pub det_abs: BigInt,
    pub expected: BigInt,
}

/// `H_1^orb(S, Delta)` with the audited presentation it came from.
#[derive(Debug, Clone)]
pub struct OrbH1Report {
    pub group: AbGroup,
    pub presentation: IntMatrix,
    pub prerequisites_met: bool,
}

/// Outcome of the Calabi-Yau branch check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CyVerdict {
    /// Empty branch divisor: consistent with `H_1(L, Z) = 0`.
    Consistent,
    /// A nonempty branch divisor over a numerically trivial `K + Delta`
    /// forces `H_1^orb != 0`; the witness lists the mod-`p` coefficients.
    Obstructed { p: u64, witness: Vec<(String, u64)> },
}

/// Decide `H_1(S^0, Z) = 0` via the determinant criterion.
///
/// Requires the surface-level attestation `H_1(S, Z) = 0`; without it the
/// criterion does not apply.
pub fn h1_smooth_locus_trivial(s: &OrbSurface) -> Result<DetCertificate, Error> {
    if s.h1_zero.is_none() {
        return Err(Error::Precondition(
            "H_1(S, Z) = 0 is not attested for this surface".to_string(),
        ));
    }
    if s.pic_basis.is_empty() || s.pic_basis.len() != s.weil_rank {
        return Err(Error::Precondition(
            "determinant criterion needs a full-rank Picard basis".to_string(),
        ));
    }
    let det = linalg::det_rational(&s.pic_gram());
    if !det.is_integer() {
        return Err(Error::DataInconsistency(
            "Picard Gram matrix has a non-integral determinant".to_string(),
        ));
    }
    let det_abs = det.to_integer().abs();
    let expected = s.local_order_product();
    Ok(DetCertificate {
        holds: det_abs == expected,
        det_abs,
        expected,
    })
}

/// Intersection numbers `(D_j . eta)` for `eta` in the Picard basis must be
/// integers; anything else is inconsistent input data.
fn integral_pairing(s: &OrbSurface, class: &[BigInt], eta: &[BigInt]) -> Result<BigInt, Error> {
    let v = s.pair_int(class, eta);
    if !v.is_integer() {
        return Err(Error::DataInconsistency(format!(
            "intersection number {v} of a curve with a Picard class is not an integer"
        )));
    }
    Ok(v.to_integer())
}

/// Abelian orbifold fundamental group of `(S, Delta)`.
///
/// Generators: one loop `g_j` per branch curve. Relations: `m_j g_j = 0`,
/// and `sum_j (D_j . eta) g_j = 0` for every Picard basis class `eta`.
/// Only valid when `H_1(S^0, Z) = 0`.
pub fn h1_orb(s: &OrbSurface, delta: &BranchDivisor) -> Result<OrbH1Report, Error> {
    let cert = h1_smooth_locus_trivial(s)?;
    if !cert.holds {
        return Err(Error::Precondition(format!(
            "H_1(S^0) != 0 (determinant {} vs expected {}), presentation inapplicable",
            cert.det_abs, cert.expected
        )));
    }
    let n = delta.curves.len();
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + s.pic_basis.len());
    for (j, c) in delta.curves.iter().enumerate() {
        let mut row = vec![BigInt::zero(); n];
        row[j] = BigInt::from(c.multiplicity);
        rows.push(row);
    }
    for eta in &s.pic_basis {
        let mut row = Vec::with_capacity(n);
        for c in &delta.curves {
            row.push(integral_pairing(s, &c.degree, eta)?);
        }
        rows.push(row);
    }
    let presentation = if n == 0 {
        IntMatrix::zeros(0, 0)
    } else {
        IntMatrix::from_rows(rows)
    };
    let group = AbGroup::from_presentation(n, &presentation)?;
    Ok(OrbH1Report {
        group,
        presentation,
        prerequisites_met: true,
    })
}

/// Arithmetic shortcut for `H_1^orb = 0` on rank-one surfaces: the Weil
/// class group is `Z`, the `m_j` are pairwise coprime and each is coprime
/// to the degree of its curve.
pub fn rho1_h1orb_zero(s: &OrbSurface, delta: &BranchDivisor) -> Result<bool, Error> {
    if s.weil_rank != 1 {
        return Err(Error::Precondition(format!(
            "rank-one criterion called on a surface of Weil rank {}",
            s.weil_rank
        )));
    }
    let cert = h1_smooth_locus_trivial(s)?;
    if !cert.holds {
        return Ok(false);
    }
    for (i, a) in delta.curves.iter().enumerate() {
        for b in delta.curves.iter().skip(i + 1) {
            if a.multiplicity.gcd(&b.multiplicity) != 1 {
                return Ok(false);
            }
        }
    }
    for c in &delta.curves {
        let m = BigInt::from(c.multiplicity);
        if m.gcd(&c.degree[0]) != BigInt::one() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Does some combination `sum a_i [D_i]` over the curves with `p | m_i`,
/// with not all `a_i` divisible by `p`, land in `p * Weil(S)`?
///
/// If so, `H_1^orb(S, Delta)` has nontrivial `p`-part. Decided by the rank
/// mod `p` of the degree matrix, read off from its Smith normal form.
pub fn p_cover_obstruction(
    s: &OrbSurface,
    delta: &BranchDivisor,
    p: u64,
) -> Result<bool, Error> {
    if !is_prime(p) {
        return Err(Error::Shape(format!("{p} is not prime")));
    }
    let cols: Vec<&crate::surface::BranchCurve> = delta
        .curves
        .iter()
        .filter(|c| c.multiplicity % p == 0)
        .collect();
    if cols.is_empty() {
        return Ok(false);
    }
    // degree matrix, one column per p-divisible curve
    let rows: Vec<Vec<BigInt>> = (0..s.weil_rank)
        .map(|k| cols.iter().map(|c| c.degree[k].clone()).collect())
        .collect();
    let m = IntMatrix::from_rows(rows);
    let snf = smith_normal_form(&m);
    let p_big = BigInt::from(p);
    let rank_mod_p = snf
        .diagonal
        .iter()
        .filter(|d| !d.is_zero() && !(*d % &p_big).is_zero())
        .count();
    Ok(rank_mod_p < cols.len())
}

/// Over a numerically trivial `K + Delta`, a nonempty branch divisor is
/// inconsistent with `H_1(L, Z) = 0`: clearing denominators produces a
/// prime-cover obstruction.
pub fn cy_branch_check(s: &OrbSurface, delta: &BranchDivisor) -> Result<CyVerdict, Error> {
    let log_canonical: Vec<_> = s
        .anti_log_canonical(delta)
        .into_iter()
        .map(|v| -v)
        .collect();
    for eta in &s.pic_basis {
        if !s.pair(&log_canonical, &surface::to_rational(eta)).is_zero() {
            return Err(Error::Precondition(
                "not Calabi-Yau input: K + Delta is not numerically trivial".to_string(),
            ));
        }
    }
    if delta.is_empty() {
        return Ok(CyVerdict::Consistent);
    }
    let m_lcm = delta
        .curves
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&c.multiplicity));
    let p = (2..=m_lcm).find(|&q| is_prime(q) && m_lcm % q == 0).expect(
        "some multiplicity is >= 2, so its lcm has a prime factor",
    );
    let witness: Vec<(String, u64)> = delta
        .curves
        .iter()
        .filter(|c| c.multiplicity % p == 0)
        .map(|c| {
            let a = (m_lcm - m_lcm / c.multiplicity) % p;
            (c.id.clone(), a)
        })
        .collect();
    debug_assert!(witness.iter().any(|(_, a)| *a != 0));
    debug_assert!(p_cover_obstruction(s, delta, p).unwrap_or(false));
    Ok(CyVerdict::Obstructed { p, witness })
}
