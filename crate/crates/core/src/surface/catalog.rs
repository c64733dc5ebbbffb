//! Exact lattice records for the named surfaces used throughout the crate.
//!
//! Rank-one entries: the projective plane `P2`, the quadric cone `Q`, the
//! weighted planes `P123` and `P125`, the degree-5 surface `S5` with one
//! index-5 point, and the cones `F2..F8` over rational normal curves.
//! Rank-two entries: `P1xP1` and the ruled surfaces `H1..H5` (section `E`,
//! fiber `F`, `E^2 = -n`).

use std::collections::BTreeSet;

use num::{BigInt, BigRational, One, Zero};

use crate::error::Error;
use crate::linalg::rat;

use super::{Attestation, BranchCurve, OrbSurface, Pi1Complement, SingularPoint};

/// A distinguished curve on a catalog surface, waiting for a multiplicity.
#[derive(Debug, Clone)]
pub struct CurveTemplate {
    pub id: String,
    pub degree: Vec<BigInt>,
    pub genus: u64,
    pub through_points: Vec<String>,
    pub orbismooth: Option<Attestation>,
}

impl CurveTemplate {
    pub fn with_multiplicity(&self, m: u64) -> BranchCurve {
        BranchCurve {
            id: self.id.clone(),
            degree: self.degree.clone(),
            genus: self.genus,
            multiplicity: m,
            through_points: self.through_points.iter().cloned().collect::<BTreeSet<_>>(),
            orbismooth: self.orbismooth.clone(),
        }
    }
}

/// A catalog surface together with its distinguished curves.
#[derive(Debug, Clone)]
pub struct CatalogSurface {
    pub surface: OrbSurface,
    pub curves: Vec<CurveTemplate>,
}

impl CatalogSurface {
    /// Panics on a missing id; catalog curve ids are part of the API.
    pub fn template(&self, id: &str) -> &CurveTemplate {
        self.try_template(id)
            .unwrap_or_else(|| panic!("no distinguished curve `{id}` on {}", self.surface.name))
    }

    pub fn try_template(&self, id: &str) -> Option<&CurveTemplate> {
        self.curves.iter().find(|c| c.id == id)
    }
}

fn ints(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn smooth_curve(id: &str, degree: &[i64], genus: u64, note: &str) -> CurveTemplate {
    CurveTemplate {
        id: id.to_string(),
        degree: ints(degree),
        genus,
        through_points: Vec::new(),
        orbismooth: Some(Attestation::new(note)),
    }
}

fn rank_one_surface(
    name: &str,
    order_product: i64,
    canonical_degree: i64,
    pic_multiple: i64,
    points: Vec<SingularPoint>,
) -> OrbSurface {
    OrbSurface {
        name: name.to_string(),
        weil_rank: 1,
        pairing: vec![vec![rat(1, order_product)]],
        canonical: ints(&[canonical_degree]),
        pic_basis: vec![ints(&[pic_multiple])],
        singular_points: points,
        ample_cone_tests: vec![vec![BigRational::one()]],
        h1_zero: Some(Attestation::new(
            "rational surface with simply connected smooth locus",
        )),
        pi1_orb_trivial: Some(Attestation::new(
            "smooth locus is simply connected (classical)",
        )),
        pi1_complement: None,
    }
}

fn ruled_surface(name: &str, n: i64) -> OrbSurface {
    OrbSurface {
        name: name.to_string(),
        weil_rank: 2,
        pairing: vec![vec![rat(-n, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]],
        canonical: ints(&[-2, -(n + 2)]),
        pic_basis: vec![ints(&[1, 0]), ints(&[0, 1])],
        singular_points: Vec::new(),
        ample_cone_tests: vec![
            vec![BigRational::one(), BigRational::zero()],
            vec![BigRational::zero(), BigRational::one()],
        ],
        h1_zero: Some(Attestation::new("smooth rational surface")),
        pi1_orb_trivial: Some(Attestation::new("smooth rational surface is simply connected")),
        pi1_complement: None,
    }
}

/// Names accepted by [`catalog`], in a stable order.
pub fn catalog_names() -> Vec<&'static str> {
    vec![
        "P2", "Q", "P123", "S5", "P125", "F2", "F3", "F4", "F5", "F6", "F7", "F8", "P1xP1", "H1",
        "H2", "H3", "H4", "H5",
    ]
}

/// Look up a surface and its distinguished curves by name.
pub fn catalog(name: &str) -> Result<CatalogSurface, Error> {
    match name {
        "P2" => {
            let mut s = rank_one_surface("P2", 1, -3, 1, Vec::new());
            s.pi1_complement = Some(Pi1Complement {
                curve_class: ints(&[3]),
                order: 3,
                note: "complement of a smooth plane cubic has cyclic fundamental group of order 3"
                    .to_string(),
            });
            Ok(CatalogSurface {
                surface: s,
                curves: vec![
                    smooth_curve("cubic", &[3], 1, "smooth plane cubic"),
                    smooth_curve("conic", &[2], 0, "smooth plane conic"),
                    smooth_curve("line", &[1], 0, "projective line"),
                ],
            })
        }
        "Q" => {
            let vertex = SingularPoint::new("v", 2, vec![1]);
            let mut s = rank_one_surface("Q", 2, -4, 2, vec![vertex]);
            s.pi1_complement = Some(Pi1Complement {
                curve_class: ints(&[4]),
                order: 4,
                note: "complement of a smooth quadric section of the cone has cyclic fundamental group of order 4".to_string(),
            });
            let mut quintic = smooth_curve(
                "quintic",
                &[5],
                2,
                "smooth degree-5 curve on the cone; odd degree forces it through the vertex",
            );
            quintic.through_points = vec!["v".to_string()];
            Ok(CatalogSurface {
                surface: s,
                curves: vec![
                    smooth_curve(
                        "quartic",
                        &[4],
                        1,
                        "smooth quadric section of the cone, disjoint from the vertex",
                    ),
                    quintic,
                ],
            })
        }
        "P123" => {
            let p2 = SingularPoint::new("p2", 2, vec![1]);
            let p3 = SingularPoint::new("p3", 3, vec![1]);
            let mut s = rank_one_surface("P123", 6, -6, 6, vec![p2, p3]);
            s.pi1_complement = Some(Pi1Complement {
                curve_class: ints(&[6]),
                order: 6,
                note: "complement of a smooth anticanonical member has cyclic fundamental group of order 6".to_string(),
            });
            let mut line = smooth_curve(
                "line",
                &[1],
                0,
                "the weight-1 coordinate line; its chart preimages are smooth",
            );
            line.through_points = vec!["p2".to_string(), "p3".to_string()];
            Ok(CatalogSurface {
                surface: s,
                curves: vec![
                    smooth_curve(
                        "sextic",
                        &[6],
                        1,
                        "smooth anticanonical member avoiding both singular points",
                    ),
                    line,
                ],
            })
        }
        "S5" => {
            let p5 = SingularPoint::new("p5", 5, vec![1]);
            let mut s = rank_one_surface("S5", 5, -5, 5, vec![p5]);
            s.pi1_complement = Some(Pi1Complement {
                curve_class: ints(&[5]),
                order: 5,
                note: "complement of a smooth hyperplane section has cyclic fundamental group of order 5".to_string(),
            });
            Ok(CatalogSurface {
                surface: s,
                curves: vec![smooth_curve(
                    "hyperplane",
                    &[5],
                    1,
                    "smooth hyperplane section avoiding the index-5 point",
                )],
            })
        }
        "P125" => {
            let p2 = SingularPoint::new("p2", 2, vec![1]);
            let p5 = SingularPoint::new("p5", 5, vec![1]);
            let s = rank_one_surface("P125", 10, -8, 10, vec![p2, p5]);
            Ok(CatalogSurface {
                surface: s,
                curves: vec![smooth_curve(
                    "decic",
                    &[10],
                    2,
                    "smooth degree-10 member avoiding both singular points",
                )],
            })
        }
        "P1xP1" => {
            let s = OrbSurface {
                name: "P1xP1".to_string(),
                weil_rank: 2,
                pairing: vec![vec![rat(0, 1), rat(1, 1)], vec![rat(1, 1), rat(0, 1)]],
                canonical: ints(&[-2, -2]),
                pic_basis: vec![ints(&[1, 0]), ints(&[0, 1])],
                singular_points: Vec::new(),
                ample_cone_tests: vec![
                    vec![BigRational::one(), BigRational::zero()],
                    vec![BigRational::zero(), BigRational::one()],
                ],
                h1_zero: Some(Attestation::new("smooth rational surface")),
                pi1_orb_trivial: Some(Attestation::new(
                    "smooth rational surface is simply connected",
                )),
                pi1_complement: None,
            };
            Ok(CatalogSurface {
                surface: s,
                curves: vec![
                    smooth_curve("biquadric", &[2, 2], 1, "smooth anticanonical member"),
                    smooth_curve("ruling-a", &[1, 0], 0, "ruling"),
                    smooth_curve("ruling-b", &[0, 1], 0, "ruling"),
                ],
            })
        }
        _ => {
            if let Some(n) = name
                .strip_prefix('F')
                .and_then(|t| t.parse::<i64>().ok())
                .filter(|&n| (2..=8).contains(&n))
            {
                // cone over the rational normal curve of degree n
                let vertex = SingularPoint::new("v", n as u64, vec![1]);
                let s = rank_one_surface(name, n, -(n + 2), n, vec![vertex]);
                return Ok(CatalogSurface {
                    surface: s,
                    curves: vec![smooth_curve(
                        "quadric-section",
                        &[2 * n],
                        (n - 1) as u64,
                        "smooth quadric section of the cone, disjoint from the vertex",
                    )],
                });
            }
            if let Some(n) = name
                .strip_prefix('H')
                .and_then(|t| t.parse::<i64>().ok())
                .filter(|&n| (1..=5).contains(&n))
            {
                let s = ruled_surface(name, n);
                let mut curves = vec![
                    CurveTemplate {
                        id: "negsection".to_string(),
                        degree: ints(&[1, 0]),
                        genus: 0,
                        through_points: Vec::new(),
                        orbismooth: Some(Attestation::new("the section of self-intersection -n")),
                    },
                    smooth_curve("fiber", &[0, 1], 0, "a fiber of the ruling"),
                    smooth_curve(
                        "wide",
                        &[2, 2 * n + 3],
                        (n + 2) as u64,
                        "smooth member of |2E + (2n+3)F| transversal to the negative section",
                    ),
                ];
                if n == 1 {
                    curves.push(smooth_curve(
                        "g2-curve",
                        &[2, 4],
                        2,
                        "smooth member of |2E + 4F|",
                    ));
                }
                return Ok(CatalogSurface { surface: s, curves });
            }
            Err(Error::UnknownCatalog(name.to_string()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_names_resolve() {
        for name in catalog_names() {
            let entry = catalog(name).unwrap();
            assert_eq!(entry.surface.name, name);
        }
    }

    #[test]
    fn f4_record() {
        let entry = catalog("F4").unwrap();
        let s = &entry.surface;
        assert_eq!(s.pairing[0][0], rat(1, 4));
        assert_eq!(s.canonical, ints(&[-6]));
        let c = entry.template("quadric-section");
        assert_eq!(c.degree, ints(&[8]));
        assert_eq!(c.genus, 3);
    }

    #[test]
    fn s5_record() {
        let entry = catalog("S5").unwrap();
        let s = &entry.surface;
        assert_eq!(s.pic_basis, vec![ints(&[5])]);
        // K . l = -1
        assert_eq!(
            s.pair_int(&s.canonical, &ints(&[1])),
            rat(-1, 1)
        );
    }

    #[test]
    fn ruled_pairing() {
        let entry = catalog("H3").unwrap();
        let s = &entry.surface;
        let e = ints(&[1, 0]);
        let f = ints(&[0, 1]);
        assert_eq!(s.pair_int(&e, &e), rat(-3, 1));
        assert_eq!(s.pair_int(&e, &f), rat(1, 1));
        assert_eq!(s.pair_int(&f, &f), rat(0, 1));
    }
}
