//! Exact arithmetic in Z[t1..t5]/(t_i^2 + t_i + 1): a free rank-32 module on
//! the square-free monomials, the four relation elements rho_J, and the
//! Smith-normal-form torsion certificate for the quotient by them.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::Result;
use crate::fermat::{PlaneIndex, INDEX_SET};
use crate::matrix::IntMatrix;

pub const VARS: usize = 5;
pub const MONOMIAL_COUNT: usize = 1 << VARS;

/// A Z-linear combination of the 32 square-free monomials in t1..t5, keyed by
/// a 5-bit mask (bit i-1 set means t_i divides the monomial). Zero
/// coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct GroupRingElement {
    coeffs: BTreeMap<u32, BigInt>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        let mut e = Self::default();
        e.add_assign_term(0, BigInt::one());
        e
    }

    /// The generator t_i, i in 1..=5.
    pub fn variable(i: usize) -> Self {
        assert!((1..=VARS).contains(&i));
        let mut e = Self::default();
        e.add_assign_term(1 << (i - 1), BigInt::one());
        e
    }

    pub fn coefficient(&self, mask: u32) -> BigInt {
        self.coeffs.get(&mask).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<u32, BigInt> {
        &self.coeffs
    }

    pub fn monomial_count(&self) -> usize {
        self.coeffs.len()
    }

    fn add_assign_term(&mut self, mask: u32, c: BigInt) {
        if c.is_zero() {
            return;
        }
        debug_assert!(mask < MONOMIAL_COUNT as u32);
        let entry = self.coeffs.entry(mask).or_insert_with(BigInt::zero);
        *entry += c;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (&m, c) in &other.coeffs {
            out.add_assign_term(m, c.clone());
        }
        out
    }

    pub fn scale(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(&m, c)| (m, c * k)).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut raw: BTreeMap<Vec<u32>, BigInt> = BTreeMap::new();
        for (&m1, c1) in &self.coeffs {
            for (&m2, c2) in &other.coeffs {
                let mut exps = vec![0u32; VARS];
                for (i, e) in exps.iter_mut().enumerate() {
                    *e = ((m1 >> i) & 1) + ((m2 >> i) & 1);
                }
                let entry = raw.entry(exps).or_insert_with(BigInt::zero);
                *entry += c1 * c2;
            }
        }
        reduce(&raw)
    }

    /// Dense length-32 coefficient row in mask order.
    pub fn dense_row(&self) -> Vec<BigInt> {
        (0..MONOMIAL_COUNT as u32)
            .map(|m| self.coefficient(m))
            .collect()
    }
}

/// Reduces an integer polynomial in t1..t5 modulo every t_i^2 + t_i + 1.
///
/// Per variable, t^e collapses to a_e t + b_e through the rewrite
/// t^2 -> -t - 1; the term then expands over the subsets of its variables.
/// The result does not depend on the rewrite order.
pub fn reduce(raw: &BTreeMap<Vec<u32>, BigInt>) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    for (exps, c) in raw {
        assert_eq!(exps.len(), VARS, "raw terms carry five exponents");
        if c.is_zero() {
            continue;
        }
        // per-variable linear remainders (a_i t_i + b_i)
        let linear: Vec<(BigInt, BigInt)> = exps
            .iter()
            .map(|&e| {
                let (mut a, mut b) = (BigInt::zero(), BigInt::one()); // t^0
                for _ in 0..e {
                    // (a t + b) * t = a t^2 + b t = (b - a) t - a
                    let next_a = &b - &a;
                    let next_b = -a;
                    a = next_a;
                    b = next_b;
                }
                (a, b)
            })
            .collect();
        // expand the product of the five linear remainders over subsets
        for mask in 0..MONOMIAL_COUNT as u32 {
            let mut coeff = c.clone();
            for (i, (a, b)) in linear.iter().enumerate() {
                let factor = if (mask >> i) & 1 == 1 { a } else { b };
                if factor.is_zero() {
                    coeff = BigInt::zero();
                    break;
                }
                coeff *= factor;
            }
            out.add_assign_term(mask, coeff);
        }
    }
    out
}

/// rho_J = (1 + t_{j1} + t_{j1} t_{k1})(1 + t_{j2} + t_{j2} t_{k2}) for the
/// two crossing pairs of the index triple J.
pub fn rho(j: &PlaneIndex) -> Result<GroupRingElement> {
    let j = PlaneIndex::new(*j.pairs())?; // re-validate membership
    let factor = |(a, b): (usize, usize)| {
        let ta = GroupRingElement::variable(a);
        let tb = GroupRingElement::variable(b);
        GroupRingElement::one().add(&ta).add(&ta.mul(&tb))
    };
    let pairs = j.pairs();
    Ok(factor(pairs[1]).mul(&factor(pairs[2])))
}

/// The 4x32 integer matrix whose rows are the rho_J over the monomial basis.
pub fn relation_matrix() -> Result<IntMatrix> {
    let mut entries = Vec::with_capacity(4 * MONOMIAL_COUNT);
    for j in &INDEX_SET {
        entries.extend(rho(j)?.dense_row());
    }
    Ok(IntMatrix::new(4, MONOMIAL_COUNT, entries))
}

/// Basis masks of the four distinguished monomials 1, t3, t1 t3, t1 t3 t5.
pub const SUB_TABLE_MASKS: [u32; 4] = [0b00000, 0b00100, 0b00101, 0b10101];

#[derive(Debug, Clone)]
pub struct TorsionCertificate {
    pub invariant_factors: Vec<BigInt>,
    pub is_torsion_free: bool,
    pub sub_table: IntMatrix,
    pub sub_table_det: BigInt,
}

/// Torsion-freeness certificate for the quotient of the rank-32 module by
/// the four rho_J: full Smith normal form of the relation matrix as primary
/// evidence, and the determinant of the 4x4 sub-table on the distinguished
/// monomials as the secondary unimodularity witness.
pub fn torsion_free_certificate() -> Result<TorsionCertificate> {
    let relations = relation_matrix()?;
    let snf = relations.smith_normal_form();
    let invariant_factors = snf.diagonal();
    let is_torsion_free = invariant_factors.iter().all(|d| d.is_one());
    let mut sub_table = IntMatrix::zero(4, 4);
    for (row, j) in INDEX_SET.iter().enumerate() {
        let r = rho(j)?;
        for (col, &mask) in SUB_TABLE_MASKS.iter().enumerate() {
            *sub_table.at_mut(row, col) = r.coefficient(mask);
        }
    }
    let sub_table_det = sub_table.det_bareiss()?;
    Ok(TorsionCertificate {
        invariant_factors,
        is_torsion_free,
        sub_table,
        sub_table_det,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numfield::{FieldElements, NumberFieldElement, NumberFieldSpec};

    fn raw(terms: &[(Vec<u32>, i64)]) -> BTreeMap<Vec<u32>, BigInt> {
        terms
            .iter()
            .map(|(e, c)| (e.clone(), BigInt::from(*c)))
            .collect()
    }

    #[test]
    fn square_rewrites_to_minus_t_minus_one() {
        let r = reduce(&raw(&[(vec![2, 0, 0, 0, 0], 1)]));
        assert_eq!(r.coefficient(0b00001), BigInt::from(-1));
        assert_eq!(r.coefficient(0), BigInt::from(-1));
        assert_eq!(r.monomial_count(), 2);
    }

    #[test]
    fn constant_is_fixed() {
        let r = reduce(&raw(&[(vec![0; 5], 1)]));
        assert_eq!(r, GroupRingElement::one());
    }

    #[test]
    fn mixed_square_rewrite() {
        // t1^2 t2 -> -t1 t2 - t2
        let r = reduce(&raw(&[(vec![2, 1, 0, 0, 0], 1)]));
        assert_eq!(r.coefficient(0b00011), BigInt::from(-1));
        assert_eq!(r.coefficient(0b00010), BigInt::from(-1));
        assert_eq!(r.monomial_count(), 2);
    }

    /// Substituting t_i = omega is a ring homomorphism to Q(omega); reducing
    /// first must not change the value.
    #[test]
    fn omega_evaluation_commutes_with_reduce() {
        let spec = NumberFieldSpec::cyclotomic3();
        let w = spec.omega().unwrap();
        let eval_raw = |terms: &BTreeMap<Vec<u32>, BigInt>| {
            let mut acc = NumberFieldElement::zero(&spec);
            for (e, c) in terms {
                let total: u32 = e.iter().sum();
                let term = w
                    .pow(u64::from(total))
                    .scale(&crate::rational::Rational::from_integer(c.clone()));
                acc = &acc + &term;
            }
            acc
        };
        let eval_reduced = |g: &GroupRingElement| {
            let mut acc = NumberFieldElement::zero(&spec);
            for (&m, c) in g.coefficients() {
                let term = w
                    .pow(u64::from(m.count_ones()))
                    .scale(&crate::rational::Rational::from_integer(c.clone()));
                acc = &acc + &term;
            }
            acc
        };
        let samples = [
            raw(&[(vec![2, 0, 1, 0, 0], 3), (vec![0, 0, 0, 0, 2], -1)]),
            raw(&[(vec![2, 2, 2, 2, 2], 1)]),
            raw(&[(vec![1, 1, 1, 1, 1], 2), (vec![2, 1, 0, 2, 0], 5)]),
        ];
        for s in samples {
            assert_eq!(eval_raw(&s), eval_reduced(&reduce(&s)));
        }
    }

    #[test]
    fn reduce_is_linear_and_idempotent() {
        let p = raw(&[(vec![2, 0, 0, 1, 0], 2)]);
        let q = raw(&[(vec![0, 2, 0, 1, 0], 3)]);
        let mut sum = p.clone();
        for (e, c) in &q {
            *sum.entry(e.clone()).or_insert_with(BigInt::zero) += c;
        }
        assert_eq!(reduce(&sum), reduce(&p).add(&reduce(&q)));
        // a reduced element re-reduces to itself
        let r = reduce(&p);
        let as_raw: BTreeMap<Vec<u32>, BigInt> = r
            .coefficients()
            .iter()
            .map(|(&m, c)| {
                let exps: Vec<u32> = (0..VARS as u32).map(|i| (m >> i) & 1).collect();
                (exps, c.clone())
            })
            .collect();
        assert_eq!(reduce(&as_raw), r);
    }

    #[test]
    fn rho_j1_is_nine_unit_monomials() {
        let r = rho(&INDEX_SET[0]).unwrap();
        assert_eq!(r.monomial_count(), 9);
        assert!(r.coefficients().values().all(BigInt::is_one));
    }

    #[test]
    fn rho_sub_table_rows() {
        // coefficients of (1, t3, t1 t3, t1 t3 t5) per rho
        let expected: [[i64; 4]; 4] = [
            [1, 0, 0, 0],
            [1, 1, 0, 0],
            [1, 0, 1, 0],
            [1, 1, 1, 1],
        ];
        for (j, row) in INDEX_SET.iter().zip(expected) {
            let r = rho(j).unwrap();
            let got: Vec<BigInt> = SUB_TABLE_MASKS.iter().map(|&m| r.coefficient(m)).collect();
            assert_eq!(got, row.map(BigInt::from).to_vec());
        }
    }

    #[test]
    fn certificate_is_torsion_free() {
        let cert = torsion_free_certificate().unwrap();
        assert!(cert.is_torsion_free);
        assert_eq!(cert.invariant_factors, vec![BigInt::one(); 4]);
        assert_eq!(cert.sub_table_det.magnitude(), BigInt::one().magnitude());
    }

    #[test]
    fn doubled_relations_gain_torsion() {
        let relations = relation_matrix().unwrap();
        let mut doubled = IntMatrix::zero(4, MONOMIAL_COUNT);
        for i in 0..4 {
            for j in 0..MONOMIAL_COUNT {
                *doubled.at_mut(i, j) = relations.at(i, j) * BigInt::from(2);
            }
        }
        let snf = doubled.smith_normal_form();
        assert_eq!(snf.diagonal(), vec![BigInt::from(2); 4]);
    }

    #[test]
    fn relation_matrix_has_rank_four() {
        assert_eq!(relation_matrix().unwrap().rank(), 4);
    }
}
