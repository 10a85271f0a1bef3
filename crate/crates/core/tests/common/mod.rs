//! Shared helpers for the integration suites: an independent invariant-factor
//! oracle built from minor gcds, and seeded random generators.

// each test binary compiles this module separately and uses a subset
#![allow(dead_code)]

use num_bigint::BigInt;
use num_traits::Zero;
use rand::rngs::StdRng;
use rand::Rng;

use splitcubic::matrix::IntMatrix;
use splitcubic::numfield::{NumberFieldElement, NumberFieldSpec};
use splitcubic::rational::Rational;
use std::sync::Arc;

/// Exact determinant of a small i128 matrix by cofactor expansion.
/// Entries must stay tiny; this is oracle code, clarity over speed.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    if n == 1 {
        return m[0][0];
    }
    let mut det = 0i128;
    for c in 0..n {
        if m[0][c] == 0 {
            continue;
        }
        let minor: Vec<Vec<i128>> = (1..n)
            .map(|i| {
                (0..n)
                    .filter(|&j| j != c)
                    .map(|j| m[i][j])
                    .collect()
            })
            .collect();
        let term = m[0][c] * det_i128(&minor);
        det += if c % 2 == 0 { term } else { -term };
    }
    det
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Index subsets of size k from 0..n in lexicographic order.
fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..k).collect();
    if k > n {
        return out;
    }
    loop {
        out.push(current.clone());
        // advance
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] < n - (k - i) {
                current[i] += 1;
                for j in i + 1..k {
                    current[j] = current[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Brute-force invariant factors: d_k = gcd of all k x k minors, invariant
/// factor k = d_k / d_{k-1}, stopping at the rank.
pub fn invariant_factors_by_minors(entries: &[i64], rows: usize, cols: usize) -> Vec<BigInt> {
    let m: Vec<Vec<i128>> = (0..rows)
        .map(|i| (0..cols).map(|j| i128::from(entries[i * cols + j])).collect())
        .collect();
    let mut factors = Vec::new();
    let mut prev = 1i128;
    for k in 1..=rows.min(cols) {
        let mut g = 0i128;
        'outer: for rs in subsets(rows, k) {
            for cs in subsets(cols, k) {
                let sub: Vec<Vec<i128>> = rs
                    .iter()
                    .map(|&i| cs.iter().map(|&j| m[i][j]).collect())
                    .collect();
                g = gcd_i128(g, det_i128(&sub));
                if g == 1 {
                    break 'outer;
                }
            }
        }
        if g == 0 {
            break; // rank reached
        }
        factors.push(BigInt::from(g / prev));
        prev = g;
    }
    factors
}

pub fn random_int_matrix(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> (IntMatrix, Vec<i64>) {
    let entries: Vec<i64> = (0..rows * cols).map(|_| rng.gen_range(-bound..=bound)).collect();
    (
        IntMatrix::new(rows, cols, entries.iter().map(|&x| BigInt::from(x)).collect()),
        entries,
    )
}

pub fn random_zeta12_element(rng: &mut StdRng, spec: &Arc<NumberFieldSpec>) -> NumberFieldElement {
    let coeffs: Vec<Rational> = (0..spec.degree())
        .map(|_| {
            let num = rng.gen_range(-20i64..=20);
            let den = rng.gen_range(1i64..=9);
            Rational::new(BigInt::from(num), BigInt::from(den))
        })
        .collect();
    NumberFieldElement::new(spec, coeffs)
}

/// Matrix-vector product over BigInt entries.
pub fn mat_vec(m: &IntMatrix, v: &[BigInt]) -> Vec<BigInt> {
    (0..m.rows())
        .map(|i| {
            let mut acc = BigInt::zero();
            for j in 0..m.cols() {
                acc += m.at(i, j) * &v[j];
            }
            acc
        })
        .collect()
}
