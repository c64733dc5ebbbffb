//! The base orbifold surface `(S, Delta)`.
//!
//! A surface is modeled by its Weil divisor class lattice `Z^s` with a
//! rational intersection pairing, the canonical class, a basis of the Picard
//! sublattice, and the singular points with their local class group data.
//! Branch curves carry a degree vector, a genus, a multiplicity `m >= 2` and
//! the set of singular points they pass through.
//!
//! The [`catalog`] submodule holds exact records for every named surface
//! used elsewhere in the crate.

pub mod catalog;

use std::collections::BTreeSet;

use num::{BigInt, BigRational, Integer, One, Signed, Zero};

use crate::error::Error;
use crate::linalg;

pub use catalog::{catalog, catalog_names, CatalogSurface, CurveTemplate};

/// A recorded fact that is input data rather than something this crate
/// proves: e.g. smoothness of a particular curve, or vanishing of a
/// fundamental group established by classical surface theory.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attestation {
    pub note: String,
}

impl Attestation {
    pub fn new(note: impl Into<String>) -> Self {
        Attestation { note: note.into() }
    }
}

/// A cyclic quotient singularity: the local class group is `Z/n` and
/// `restriction` gives the image of each Weil-lattice basis vector in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SingularPoint {
    pub id: String,
    pub local_order: u64,
    pub restriction: Vec<u64>,
}

impl SingularPoint {
    pub fn new(id: impl Into<String>, local_order: u64, restriction: Vec<u64>) -> Self {
        SingularPoint {
            id: id.into(),
            local_order,
            restriction,
        }
    }

    /// Image of a Weil class under the restriction map to `Z/n`.
    pub fn restrict(&self, class: &[BigInt]) -> u64 {
        let n = BigInt::from(self.local_order);
        let mut acc = BigInt::zero();
        for (c, r) in class.iter().zip(&self.restriction) {
            acc += c * BigInt::from(*r);
        }
        let m = acc.mod_floor(&n);
        // value in [0, n), fits u64 by construction
        u64::try_from(m).expect("residue fits u64")
    }

    /// The restriction map hits a generator of `Z/n` iff the residues and
    /// `n` are jointly coprime.
    pub fn restriction_surjective(&self) -> bool {
        let mut g = self.local_order;
        for r in &self.restriction {
            g = g.gcd(r);
        }
        g == 1
    }
}

/// One branch curve `D_i` with multiplicity `m_i >= 2`; the boundary
/// contribution is `(1 - 1/m_i) D_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchCurve {
    pub id: String,
    pub degree: Vec<BigInt>,
    pub genus: u64,
    pub multiplicity: u64,
    pub through_points: BTreeSet<String>,
    pub orbismooth: Option<Attestation>,
}

impl BranchCurve {
    /// Boundary coefficient `1 - 1/m` as an exact rational.
    pub fn coefficient(&self) -> BigRational {
        BigRational::new(
            BigInt::from(self.multiplicity - 1),
            BigInt::from(self.multiplicity),
        )
    }
}

/// The branch divisor `Delta = sum (1 - 1/m_i) D_i`, plus the divisor-level
/// transversality attestation that cannot be read off from lattice data.
#[derive(Debug, Clone, Default)]
pub struct BranchDivisor {
    pub curves: Vec<BranchCurve>,
    pub transversal: Option<Attestation>,
}

impl BranchDivisor {
    pub fn empty() -> Self {
        BranchDivisor::default()
    }

    pub fn of(curves: Vec<BranchCurve>) -> Self {
        BranchDivisor {
            curves,
            transversal: None,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    pub fn curve(&self, id: &str) -> Option<&BranchCurve> {
        self.curves.iter().find(|c| c.id == id)
    }
}

/// The order of the fundamental group of the complement of a distinguished
/// curve, recorded as catalog data.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Pi1Complement {
    pub curve_class: Vec<BigInt>,
    pub order: u64,
    pub note: String,
}

/// The base surface `S`.
#[derive(Debug, Clone)]
pub struct OrbSurface {
    pub name: String,
    pub weil_rank: usize,
    /// Symmetric `s x s` intersection form on `Weil(S) (x) Q`.
    pub pairing: Vec<Vec<BigRational>>,
    /// Canonical class `K_S` in the Weil lattice.
    pub canonical: Vec<BigInt>,
    /// Integer vectors spanning `Pic(S)` inside `Weil(S)`.
    pub pic_basis: Vec<Vec<BigInt>>,
    pub singular_points: Vec<SingularPoint>,
    /// Curve classes against which ampleness means strict positivity.
    pub ample_cone_tests: Vec<Vec<BigRational>>,
    /// `H_1(S, Z) = 0` and `H_1(S^0, Z) = 0`, attested; the determinant
    /// criterion re-checks the second claim during validation.
    pub h1_zero: Option<Attestation>,
    /// The bare surface has trivial orbifold fundamental group.
    pub pi1_orb_trivial: Option<Attestation>,
    pub pi1_complement: Option<Pi1Complement>,
}

/// A failed structural rule; violations are data, not panics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub rule: &'static str,
    pub detail: String,
}

impl Violation {
    fn new(rule: &'static str, detail: impl Into<String>) -> Self {
        Violation {
            rule,
            detail: detail.into(),
        }
    }
}

/// Where local multiplicities are evaluated.
#[derive(Debug, Clone)]
pub enum PointSite {
    /// A singular point of `S`, identified by id; incident curves are read
    /// off from `through_points`.
    Singular(String),
    /// A smooth point lying on the named curves.
    Smooth(Vec<String>),
}

/// The three multiplicity measures at a point: branch, quotient, combined.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LocalMultiplicities {
    pub m_delta: u64,
    pub m_x: u64,
    pub m_x_delta: u64,
}

/// Global lcm versions of the same three measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GlobalMultiplicities {
    pub m_delta: u64,
    pub m_x: u64,
    pub m_x_delta: u64,
}

/// Ampleness verdict with the exact pairing values as witness.
#[derive(Debug, Clone)]
pub struct LogDelPezzoReport {
    pub is_log_del_pezzo: bool,
    /// `- (K + Delta) . t` for each ample-cone test class `t`.
    pub pairings: Vec<BigRational>,
}

impl OrbSurface {
    /// Intersection number of two rational classes.
    pub fn pair(&self, a: &[BigRational], b: &[BigRational]) -> BigRational {
        let mut acc = BigRational::zero();
        for (i, ai) in a.iter().enumerate() {
            if ai.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if bj.is_zero() {
                    continue;
                }
                acc += ai * bj * &self.pairing[i][j];
            }
        }
        acc
    }

    pub fn pair_int(&self, a: &[BigInt], b: &[BigInt]) -> BigRational {
        self.pair(&to_rational(a), &to_rational(b))
    }

    /// `Delta = sum (1 - 1/m_i) [D_i]` as a rational class.
    pub fn boundary_class(&self, delta: &BranchDivisor) -> Vec<BigRational> {
        let mut acc = vec![BigRational::zero(); self.weil_rank];
        for c in &delta.curves {
            let coeff = c.coefficient();
            for (k, d) in c.degree.iter().enumerate() {
                acc[k] += &coeff * BigRational::from(d.clone());
            }
        }
        acc
    }

    /// `-(K_S + Delta)`, the class whose positivity defines log Del Pezzo.
    pub fn anti_log_canonical(&self, delta: &BranchDivisor) -> Vec<BigRational> {
        let boundary = self.boundary_class(delta);
        self.canonical
            .iter()
            .zip(boundary)
            .map(|(k, b)| -(BigRational::from(k.clone()) + b))
            .collect()
    }

    /// `(D . (D + K))/2 + 1`; equals the genus for curves avoiding the
    /// singular locus.
    pub fn adjunction_genus(&self, class: &[BigInt]) -> BigRational {
        let d = to_rational(class);
        let k = to_rational(&self.canonical);
        let dk: Vec<BigRational> = d.iter().zip(&k).map(|(a, b)| a + b).collect();
        self.pair(&d, &dk) / linalg::rat_int(2) + BigRational::one()
    }

    pub fn point(&self, id: &str) -> Option<&SingularPoint> {
        self.singular_points.iter().find(|p| p.id == id)
    }

    /// Gram matrix of the Picard basis under the intersection form.
    pub fn pic_gram(&self) -> Vec<Vec<BigRational>> {
        self.pic_basis
            .iter()
            .map(|a| {
                self.pic_basis
                    .iter()
                    .map(|b| self.pair_int(a, b))
                    .collect()
            })
            .collect()
    }

    /// Product of the local class group orders.
    pub fn local_order_product(&self) -> BigInt {
        self.singular_points
            .iter()
            .fold(BigInt::one(), |acc, p| acc * BigInt::from(p.local_order))
    }

    pub fn curves_through<'a>(
        &self,
        delta: &'a BranchDivisor,
        point_id: &str,
    ) -> Vec<&'a BranchCurve> {
        delta
            .curves
            .iter()
            .filter(|c| c.through_points.contains(point_id))
            .collect()
    }
}

pub fn to_rational(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from(x.clone())).collect()
}

/// Structural validation of the surface record alone.
pub fn validate(s: &OrbSurface) -> Vec<Violation> {
    let mut out = Vec::new();
    let rank = s.weil_rank;

    if s.pairing.len() != rank || s.pairing.iter().any(|r| r.len() != rank) {
        out.push(Violation::new(
            "pairing-shape",
            format!("pairing must be {rank}x{rank}"),
        ));
        return out; // everything else depends on the pairing
    }
    for i in 0..rank {
        for j in i + 1..rank {
            if s.pairing[i][j] != s.pairing[j][i] {
                out.push(Violation::new(
                    "pairing-symmetric",
                    format!("entries ({i},{j}) and ({j},{i}) differ"),
                ));
            }
        }
    }
    if s.canonical.len() != rank {
        out.push(Violation::new("canonical-length", "K has wrong length"));
        return out;
    }
    for (idx, v) in s.pic_basis.iter().enumerate() {
        if v.len() != rank {
            out.push(Violation::new(
                "pic-basis-length",
                format!("pic basis vector {idx} has wrong length"),
            ));
            return out;
        }
    }
    for t in &s.ample_cone_tests {
        if t.len() != rank {
            out.push(Violation::new(
                "ample-test-length",
                "ample-cone test class has wrong length",
            ));
            return out;
        }
    }

    for p in &s.singular_points {
        if p.local_order < 2 {
            out.push(Violation::new(
                "point-order",
                format!("point {}: local order {} < 2", p.id, p.local_order),
            ));
        }
        if p.restriction.len() != rank {
            out.push(Violation::new(
                "restriction-length",
                format!("point {}: restriction vector has wrong length", p.id),
            ));
            continue;
        }
        if p.restriction.iter().any(|&r| r >= p.local_order) {
            out.push(Violation::new(
                "restriction-range",
                format!("point {}: residue out of [0, n)", p.id),
            ));
        }
    }
    if out.iter().any(|v| v.rule == "restriction-length") {
        return out;
    }

    // Pic classes are Cartier: they pair integrally with every lattice
    // vector and restrict to zero in every local class group.
    for (idx, v) in s.pic_basis.iter().enumerate() {
        for k in 0..rank {
            let mut basis = vec![BigInt::zero(); rank];
            basis[k] = BigInt::one();
            if !s.pair_int(v, &basis).is_integer() {
                out.push(Violation::new(
                    "pic-integral-pairing",
                    format!("pic basis vector {idx} pairs fractionally with lattice basis {k}"),
                ));
            }
        }
        for p in &s.singular_points {
            if p.restrict(v) != 0 {
                out.push(Violation::new(
                    "pic-in-restriction-kernel",
                    format!(
                        "pic basis vector {idx} is not in the kernel of the order-{} restriction at {}",
                        p.local_order, p.id
                    ),
                ));
            }
        }
    }

    for v in &s.pic_basis {
        if !s.pair_int(&s.canonical, v).is_integer() {
            out.push(Violation::new(
                "canonical-pic-pairing",
                "K pairs fractionally with a pic basis vector",
            ));
        }
    }

    if s.h1_zero.is_some() {
        if s.pic_basis.len() != rank {
            out.push(Violation::new(
                "pic-basis-rank",
                "h1_zero surfaces need a full-rank pic basis",
            ));
        } else {
            let det = linalg::det_rational(&s.pic_gram());
            let expected = BigRational::from(s.local_order_product());
            if det.abs() != expected {
                out.push(Violation::new(
                    "h1-determinant",
                    format!(
                        "|det| of the pic Gram matrix is {}, expected the product of local orders {}",
                        det.abs(),
                        expected
                    ),
                ));
            }
        }
        for p in &s.singular_points {
            if !p.restriction_surjective() {
                out.push(Violation::new(
                    "h1-restriction-surjective",
                    format!("restriction at {} is not onto Z/{}", p.id, p.local_order),
                ));
            }
        }
    }

    out
}

/// Validation of a surface together with a branch divisor.
pub fn validate_pair(s: &OrbSurface, delta: &BranchDivisor) -> Vec<Violation> {
    let mut out = validate(s);
    let mut seen = BTreeSet::new();
    for c in &delta.curves {
        if !seen.insert(&c.id) {
            out.push(Violation::new(
                "curve-id-unique",
                format!("duplicate curve id {}", c.id),
            ));
        }
        if c.multiplicity < 2 {
            out.push(Violation::new(
                "curve-multiplicity",
                format!("curve {}: multiplicity {} < 2", c.id, c.multiplicity),
            ));
        }
        if c.degree.len() != s.weil_rank {
            out.push(Violation::new(
                "curve-degree-length",
                format!("curve {}: degree vector has wrong length", c.id),
            ));
        }
        for p in &c.through_points {
            if s.point(p).is_none() {
                out.push(Violation::new(
                    "curve-through-unknown-point",
                    format!("curve {} passes through unknown point {p}", c.id),
                ));
            }
        }
    }
    if out
        .iter()
        .any(|v| v.rule == "curve-degree-length" || v.rule == "canonical-length")
    {
        return out;
    }
    // Two curves that meet anywhere must have coprime multiplicities for
    // the orbifold to stay locally cyclic.
    for (i, a) in delta.curves.iter().enumerate() {
        for b in delta.curves.iter().skip(i + 1) {
            if !s.pair_int(&a.degree, &b.degree).is_zero()
                && a.multiplicity.gcd(&b.multiplicity) != 1
            {
                out.push(Violation::new(
                    "meeting-curves-coprime",
                    format!(
                        "curves {} and {} meet but their multiplicities {} and {} are not coprime",
                        a.id, b.id, a.multiplicity, b.multiplicity
                    ),
                ));
            }
        }
    }
    out
}

/// Multiplicity measures at one point.
pub fn local_multiplicities(
    s: &OrbSurface,
    delta: &BranchDivisor,
    site: &PointSite,
) -> Result<LocalMultiplicities, Error> {
    let (incident, m_x, where_): (Vec<&BranchCurve>, u64, String) = match site {
        PointSite::Singular(id) => {
            let p = s
                .point(id)
                .ok_or_else(|| Error::Shape(format!("unknown singular point {id}")))?;
            (s.curves_through(delta, id), p.local_order, id.clone())
        }
        PointSite::Smooth(curve_ids) => {
            let mut curves = Vec::new();
            for cid in curve_ids {
                let c = delta
                    .curve(cid)
                    .ok_or_else(|| Error::Shape(format!("unknown curve {cid}")))?;
                curves.push(c);
            }
            (curves, 1, "smooth point".to_string())
        }
    };
    if incident.len() > 2 {
        return Err(Error::NotLocallyCyclic(format!(
            "{} curves through {where_}; at most 2 can meet at a surface point",
            incident.len()
        )));
    }
    for (i, a) in incident.iter().enumerate() {
        for b in incident.iter().skip(i + 1) {
            if a.multiplicity.gcd(&b.multiplicity) != 1 {
                return Err(Error::NotLocallyCyclic(format!(
                    "multiplicities {} and {} at {where_} are not coprime",
                    a.multiplicity, b.multiplicity
                )));
            }
        }
    }
    let m_delta = incident
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&c.multiplicity));
    Ok(LocalMultiplicities {
        m_delta,
        m_x,
        m_x_delta: m_delta * m_x,
    })
}

/// Global lcm of the local measures over all (finitely many relevant)
/// points: every singular point, plus a generic point of each curve.
pub fn global_multiplicities(
    s: &OrbSurface,
    delta: &BranchDivisor,
) -> Result<GlobalMultiplicities, Error> {
    let m_delta = delta
        .curves
        .iter()
        .fold(1u64, |acc, c| acc.lcm(&c.multiplicity));
    let m_x = s
        .singular_points
        .iter()
        .fold(1u64, |acc, p| acc.lcm(&p.local_order));
    let mut m_x_delta = m_delta; // generic points of the curves
    for p in &s.singular_points {
        let local = local_multiplicities(s, delta, &PointSite::Singular(p.id.clone()))?;
        m_x_delta = m_x_delta.lcm(&local.m_x_delta);
    }
    debug_assert_eq!((m_delta * m_x) % m_x_delta, 0);
    Ok(GlobalMultiplicities {
        m_delta,
        m_x,
        m_x_delta,
    })
}

/// Is `-(K + Delta)` strictly positive against every ample-cone test class?
pub fn is_log_del_pezzo(
    s: &OrbSurface,
    delta: &BranchDivisor,
) -> Result<LogDelPezzoReport, Error> {
    if s.ample_cone_tests.is_empty() {
        return Err(Error::AmpleUndecidable);
    }
    let target = s.anti_log_canonical(delta);
    let pairings: Vec<BigRational> = s
        .ample_cone_tests
        .iter()
        .map(|t| s.pair(&target, t))
        .collect();
    let is_ldp = pairings.iter().all(|v| v.is_positive());
    Ok(LogDelPezzoReport {
        is_log_del_pezzo: is_ldp,
        pairings,
    })
}
