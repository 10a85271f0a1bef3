//! Integer lattice invariants (rank, determinant, Smith normal form,
//! definiteness), the hyperbolic block Gram coming from products of curve
//! cycles, congruence verification by explicit base change, the
//! sublattice/complement discriminant consistency check, and the
//! Shioda-Mitani correspondence for positive definite even binary forms.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::rational::Rational;

/// A symmetric integer matrix of cycle intersections.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramMatrix(IntMatrix);

impl GramMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.rows(),
                cols: m.cols(),
            });
        }
        if !m.is_symmetric() {
            return Err(Error::NotSymmetric);
        }
        Ok(Self(m))
    }

    pub fn from_i64(n: usize, entries: &[i64]) -> Result<Self> {
        Self::new(IntMatrix::from_i64(n, n, entries))
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.rows()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Definiteness {
    Positive,
    Negative,
    Indefinite,
    Degenerate,
}

impl fmt::Display for Definiteness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Definiteness::Positive => "positive",
            Definiteness::Negative => "negative",
            Definiteness::Indefinite => "indefinite",
            Definiteness::Degenerate => "degenerate",
        };
        write!(f, "{s}")
    }
}

#[derive(Debug, Clone)]
pub struct LatticeReport {
    pub rank: usize,
    pub determinant: BigInt,
    pub snf_diagonal: Vec<BigInt>,
    pub definiteness: Definiteness,
}

/// Exact rank, determinant, Smith diagonal and definiteness of a Gram matrix.
pub fn lattice_invariants(g: &GramMatrix) -> LatticeReport {
    let m = g.matrix();
    let n = g.size();
    let determinant = m.det_bareiss().expect("square by construction");
    let snf = m.smith_normal_form();
    let rank = snf.invariant_factors().len();
    let definiteness = if rank < n {
        Definiteness::Degenerate
    } else {
        definiteness_of_nondegenerate(m)
    };
    LatticeReport {
        rank,
        determinant,
        snf_diagonal: snf.diagonal(),
        definiteness,
    }
}

fn definiteness_of_nondegenerate(m: &IntMatrix) -> Definiteness {
    let n = m.rows();
    let minors: Vec<BigInt> = (1..=n)
        .map(|k| {
            m.leading_minor_matrix(k)
                .det_bareiss()
                .expect("square")
        })
        .collect();
    if minors.iter().all(BigInt::is_positive) {
        return Definiteness::Positive;
    }
    let alternating = minors
        .iter()
        .enumerate()
        .all(|(i, d)| if i % 2 == 0 { d.is_negative() } else { d.is_positive() });
    if alternating {
        Definiteness::Negative
    } else {
        Definiteness::Indefinite
    }
}

/// The Gram matrix of the sublattice swept out by products of 1-cycles on the
/// two degree-d plane curves: 2g^2 hyperbolic blocks [[0, -d], [-d, 0]] with
/// g = (d-1)(d-2)/2, total rank 4g^2.
pub fn im_phi_gram(d: usize) -> GramMatrix {
    assert!(d >= 3, "degree must be at least 3");
    let g = (d - 1) * (d - 2) / 2;
    let blocks = 2 * g * g;
    let n = 2 * blocks;
    let mut m = IntMatrix::zero(n, n);
    for b in 0..blocks {
        *m.at_mut(2 * b, 2 * b + 1) = BigInt::from(-(d as i64));
        *m.at_mut(2 * b + 1, 2 * b) = BigInt::from(-(d as i64));
    }
    GramMatrix::new(m).expect("block matrix is symmetric")
}

/// The sign flip diag(1, -1, 1, -1, ...) carrying the -d blocks to +d blocks.
pub fn block_flip(n: usize) -> IntMatrix {
    let mut m = IntMatrix::identity(n);
    for i in 0..n {
        if i % 2 == 1 {
            *m.at_mut(i, i) = BigInt::from(-1);
        }
    }
    m
}

/// U(n) + U(n): two hyperbolic blocks [[0, n], [n, 0]].
pub fn double_u(n: i64) -> GramMatrix {
    GramMatrix::from_i64(
        4,
        &[
            0, n, 0, 0, //
            n, 0, 0, 0, //
            0, 0, 0, n, //
            0, 0, n, 0,
        ],
    )
    .expect("symmetric")
}

/// True when B is unimodular and transforms G1 into G2 exactly:
/// B^T G1 B = G2.
pub fn congruence_check(b: &IntMatrix, g1: &GramMatrix, g2: &GramMatrix) -> Result<bool> {
    if !b.is_square() || b.rows() != g1.size() || g1.size() != g2.size() {
        return Err(Error::SizeMismatch);
    }
    if !b.det_bareiss()?.abs().is_one() {
        return Ok(false);
    }
    let transformed = b.transpose().mul(g1.matrix())?.mul(b)?;
    Ok(transformed == *g2.matrix())
}

/// Numeric consistency of a primitive sublattice and its orthogonal
/// complement inside a unimodular lattice: equal absolute discriminants and
/// ranks summing to the ambient rank.
pub fn complement_disc_check(
    d_sub: &BigInt,
    d_comp: &BigInt,
    r_sub: usize,
    r_comp: usize,
    ambient_rank: usize,
) -> bool {
    d_sub.abs() == d_comp.abs() && r_sub + r_comp == ambient_rank
}

/// An exact quadratic surd p + q * sqrt(d) with d a negative integer,
/// normalized so d carries no square factor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuadraticSurd {
    pub p: Rational,
    pub q: Rational,
    pub d: BigInt,
}

impl QuadraticSurd {
    fn new(p: Rational, q: Rational, d: BigInt) -> Self {
        let (square, core) = extract_square(&d);
        Self {
            p,
            q: q * Rational::from_integer(square),
            d: core,
        }
    }
}

/// Splits d = s^2 * core with core carrying no square factor.
fn extract_square(d: &BigInt) -> (BigInt, BigInt) {
    let mut core = d.clone();
    let mut square = BigInt::one();
    let mut f = BigInt::from(2);
    while &f * &f <= core.abs() {
        let f2 = &f * &f;
        while (&core % &f2).is_zero() {
            core /= &f2;
            square *= &f;
        }
        f += 1;
    }
    (square, core)
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::rational::rational_to_string;
        let radical = if self.d == BigInt::from(-1) {
            "i".to_string()
        } else {
            format!("sqrt({})", self.d)
        };
        if self.q.is_zero() {
            return write!(f, "{}", rational_to_string(&self.p));
        }
        let q_part = if self.q.is_one() {
            radical
        } else {
            format!("{}*{}", rational_to_string(&self.q), radical)
        };
        if self.p.is_zero() {
            write!(f, "{q_part}")
        } else {
            write!(f, "{}+{}", rational_to_string(&self.p), q_part)
        }
    }
}

/// Output of the Shioda-Mitani correspondence for the even positive definite
/// binary form [[2a, b], [b, 2c]].
#[derive(Debug, Clone)]
pub struct ShiodaMitani {
    pub tau1: QuadraticSurd,
    pub tau2: QuadraticSurd,
    pub delta: BigInt,
    pub trans_lattice: GramMatrix,
}

/// tau1 = (-b + sqrt(Delta)) / (2a), tau2 = (b + sqrt(Delta)) / 2 with
/// Delta = b^2 - 4ac < 0, and the twisted lattice [[-6a, -3b], [-3b, -6c]].
pub fn shioda_mitani(a: i64, b: i64, c: i64) -> Result<ShiodaMitani> {
    let delta = BigInt::from(b * b - 4 * a * c);
    if a <= 0 || !delta.is_negative() {
        return Err(Error::NotPositiveDefinite);
    }
    let tau1 = QuadraticSurd::new(
        Rational::new(BigInt::from(-b), BigInt::from(2 * a)),
        Rational::new(BigInt::one(), BigInt::from(2 * a)),
        delta.clone(),
    );
    let tau2 = QuadraticSurd::new(
        Rational::new(BigInt::from(b), BigInt::from(2)),
        Rational::new(BigInt::one(), BigInt::from(2)),
        delta.clone(),
    );
    let trans_lattice = GramMatrix::from_i64(
        2,
        &[-6 * a, -3 * b, -3 * b, -6 * c],
    )?;
    Ok(ShiodaMitani {
        tau1,
        tau2,
        delta,
        trans_lattice,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, rat_frac};

    #[test]
    fn hyperbolic_pair_is_indefinite_det_minus_nine() {
        let g = GramMatrix::from_i64(2, &[0, 3, 3, 0]).unwrap();
        let report = lattice_invariants(&g);
        assert_eq!(report.determinant, BigInt::from(-9));
        assert_eq!(report.rank, 2);
        assert_eq!(report.definiteness, Definiteness::Indefinite);
    }

    #[test]
    fn double_u3_det_81_rank_4() {
        let report = lattice_invariants(&double_u(3));
        assert_eq!(report.determinant, BigInt::from(81));
        assert_eq!(report.rank, 4);
        assert_eq!(report.definiteness, Definiteness::Indefinite);
    }

    #[test]
    fn negative_definite_detected() {
        let g = GramMatrix::from_i64(2, &[-2, 1, 1, -2]).unwrap();
        assert_eq!(lattice_invariants(&g).definiteness, Definiteness::Negative);
    }

    #[test]
    fn degenerate_detected() {
        let g = GramMatrix::from_i64(2, &[1, 1, 1, 1]).unwrap();
        let report = lattice_invariants(&g);
        assert_eq!(report.definiteness, Definiteness::Degenerate);
        assert_eq!(report.rank, 1);
        assert!(report.determinant.is_zero());
    }

    #[test]
    fn report_det_equals_snf_product_up_to_sign() {
        for entries in [
            vec![0i64, 3, 3, 0],
            vec![2, 1, 1, 2],
            vec![-2, 1, 1, -2],
        ] {
            let g = GramMatrix::from_i64(2, &entries).unwrap();
            let report = lattice_invariants(&g);
            let prod: BigInt = report.snf_diagonal.iter().product();
            assert_eq!(report.determinant.abs(), prod.abs());
        }
    }

    #[test]
    fn im_phi_blocks_for_cubic() {
        let g = im_phi_gram(3);
        assert_eq!(g.size(), 4);
        assert_eq!(*g.matrix().at(0, 1), BigInt::from(-3));
        assert_eq!(*g.matrix().at(2, 3), BigInt::from(-3));
        assert!(g.matrix().at(0, 2).is_zero());
        let report = lattice_invariants(&g);
        assert_eq!(report.determinant, BigInt::from(81));
    }

    #[test]
    fn im_phi_rank_for_quartic() {
        // g = 3, so rank 4 g^2 = 36
        let g = im_phi_gram(4);
        assert_eq!(g.size(), 36);
        let report = lattice_invariants(&g);
        assert_eq!(report.rank, 36);
        // |det| = d^(4 g^2)
        assert_eq!(report.determinant.abs(), BigInt::from(4).pow(36));
    }

    #[test]
    fn flip_conjugates_to_plus_blocks() {
        let g = im_phi_gram(3);
        let flipped = block_flip(4);
        assert!(congruence_check(&flipped, &g, &double_u(3)).unwrap());
        // symmetric under the inverse base change (the flip is an involution)
        assert_eq!(flipped.mul(&flipped).unwrap(), IntMatrix::identity(4));
        assert!(congruence_check(&flipped, &double_u(3), &g).unwrap());
        // and the identity is reflexive
        let id = IntMatrix::identity(4);
        assert!(congruence_check(&id, &g, &g).unwrap());
        // non-unimodular base changes are rejected
        let mut two = IntMatrix::identity(4);
        for i in 0..4 {
            *two.at_mut(i, i) = BigInt::from(2);
        }
        assert!(!congruence_check(&two, &g, &g).unwrap());
    }

    #[test]
    fn congruence_size_mismatch() {
        let g2 = GramMatrix::from_i64(2, &[0, 3, 3, 0]).unwrap();
        let g4 = double_u(3);
        let id = IntMatrix::identity(2);
        assert!(matches!(
            congruence_check(&id, &g2, &g4),
            Err(Error::SizeMismatch)
        ));
    }

    #[test]
    fn complement_check_examples() {
        assert!(complement_disc_check(
            &BigInt::from(81),
            &BigInt::from(81),
            19,
            4,
            23
        ));
        assert!(!complement_disc_check(
            &BigInt::from(81),
            &BigInt::from(80),
            19,
            4,
            23
        ));
        assert!(complement_disc_check(&BigInt::one(), &BigInt::one(), 0, 23, 23));
    }

    #[test]
    fn shioda_mitani_gaussian_point() {
        let out = shioda_mitani(1, 0, 1).unwrap();
        assert_eq!(out.delta, BigInt::from(-4));
        // tau1 = tau2 = i after square extraction
        assert_eq!(out.tau1.d, BigInt::from(-1));
        assert!(out.tau1.p.is_zero());
        assert!(out.tau1.q.is_one());
        assert_eq!(out.tau1, out.tau2);
        assert_eq!(format!("{}", out.tau1), "i");
        assert_eq!(
            out.trans_lattice.matrix().entries().to_vec(),
            [-6i64, 0, 0, -6].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn shioda_mitani_eisenstein_point() {
        let out = shioda_mitani(1, 1, 1).unwrap();
        assert_eq!(out.delta, BigInt::from(-3));
        assert_eq!(out.tau1.p, rat_frac(-1, 2));
        assert_eq!(out.tau1.q, rat_frac(1, 2));
        assert_eq!(out.tau1.d, BigInt::from(-3));
        assert_eq!(
            out.trans_lattice.matrix().entries().to_vec(),
            [-6i64, -3, -3, -6].map(BigInt::from).to_vec()
        );
    }

    #[test]
    fn shioda_mitani_rejects_indefinite() {
        assert!(matches!(
            shioda_mitani(1, 0, -1),
            Err(Error::NotPositiveDefinite)
        ));
        assert!(matches!(
            shioda_mitani(-1, 0, -1),
            Err(Error::NotPositiveDefinite)
        ));
    }

    #[test]
    fn twisted_lattice_is_minus_three_times_input() {
        for (a, b, c) in [(1i64, 0, 1), (1, 1, 1), (2, 1, 3)] {
            let out = shioda_mitani(a, b, c).unwrap();
            let input = GramMatrix::from_i64(2, &[2 * a, b, b, 2 * c]).unwrap();
            for i in 0..2 {
                for j in 0..2 {
                    assert_eq!(
                        out.trans_lattice.matrix().at(i, j).clone(),
                        input.matrix().at(i, j) * BigInt::from(-3)
                    );
                }
            }
        }
    }

    #[test]
    fn surd_square_extraction() {
        let s = QuadraticSurd::new(rat(0), rat(1), BigInt::from(-12));
        assert_eq!(s.d, BigInt::from(-3));
        assert_eq!(s.q, rat(2));
        assert_eq!(format!("{s}"), "2*sqrt(-3)");
    }
}
