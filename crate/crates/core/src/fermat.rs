//! The Fermat cubic fourfold z0^3 + ... + z5^3 = 0 in its split presentation
//! F1 = z0^3+z1^3+z2^3, F2 = -(z3^3+z4^3+z5^3): the four admissible index
//! triples, the 108 planes L_{J,beta}, the 19-plane basis S1..S19 with its
//! intersection matrix, and the integral decomposition of every L over the
//! basis via bordered-kernel computations.

use std::collections::BTreeSet;
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::hesse;
use crate::json;
use crate::matrix::{FieldMatrix, IntMatrix};
use crate::numfield::{FieldElements, NumberFieldElement, NumberFieldSpec};
use crate::plane::{self, Plane, SplitHypersurface};

/// Three disjoint index pairs partitioning {0..5}; only the four triples
/// below are admissible.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct PlaneIndex {
    pairs: [(usize, usize); 3],
}

pub const INDEX_SET: [PlaneIndex; 4] = [
    PlaneIndex { pairs: [(0, 1), (2, 3), (4, 5)] },
    PlaneIndex { pairs: [(0, 1), (2, 4), (3, 5)] },
    PlaneIndex { pairs: [(0, 2), (1, 3), (4, 5)] },
    PlaneIndex { pairs: [(0, 2), (1, 4), (3, 5)] },
];

impl PlaneIndex {
    /// Validates membership in the admissible set.
    pub fn new(pairs: [(usize, usize); 3]) -> Result<Self> {
        let candidate = Self { pairs };
        if INDEX_SET.contains(&candidate) {
            Ok(candidate)
        } else {
            Err(Error::IndexNotInK)
        }
    }

    pub fn pairs(&self) -> &[(usize, usize); 3] {
        &self.pairs
    }

    /// Position in the catalog order, 0..4.
    pub fn ordinal(&self) -> usize {
        INDEX_SET.iter().position(|j| j == self).expect("validated")
    }

    pub fn label(&self) -> String {
        format!("J{}", self.ordinal() + 1)
    }

    pub fn bracket(&self) -> String {
        format!(
            "[{}{}|{}{}|{}{}]",
            self.pairs[0].0,
            self.pairs[0].1,
            self.pairs[1].0,
            self.pairs[1].1,
            self.pairs[2].0,
            self.pairs[2].1
        )
    }

    /// Parses "J1".."J4" or the bracket form "[01|23|45]".
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        for j in INDEX_SET {
            if s.eq_ignore_ascii_case(&j.label()) || s == j.bracket() {
                return Ok(j);
            }
        }
        Err(Error::IndexNotInK)
    }
}

/// Three cube roots of unity, stored with their exponents so output ordering
/// and labels stay exact.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BetaTriple {
    exponents: [u8; 3],
    betas: [NumberFieldElement; 3],
}

impl BetaTriple {
    pub fn new(spec: &Arc<NumberFieldSpec>, exponents: [u8; 3]) -> Result<Self> {
        assert!(exponents.iter().all(|&e| e < 3));
        let w = spec.omega()?;
        let betas = [
            w.pow(u64::from(exponents[0])),
            w.pow(u64::from(exponents[1])),
            w.pow(u64::from(exponents[2])),
        ];
        for b in &betas {
            debug_assert!(b.pow(3).is_one());
        }
        Ok(Self { exponents, betas })
    }

    pub fn betas(&self) -> &[NumberFieldElement; 3] {
        &self.betas
    }

    pub fn exponents(&self) -> [u8; 3] {
        self.exponents
    }

    pub fn label(&self) -> String {
        let name = |e: u8| match e {
            0 => "1".to_string(),
            1 => "w".to_string(),
            _ => "w^2".to_string(),
        };
        format!(
            "({},{},{})",
            name(self.exponents[0]),
            name(self.exponents[1]),
            name(self.exponents[2])
        )
    }

    /// Parses "(1,w,w^2)" style labels; also accepts w2 for w^2.
    pub fn parse(spec: &Arc<NumberFieldSpec>, s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse(format!("expected three betas in {s:?}")));
        }
        let mut exps = [0u8; 3];
        for (i, p) in parts.iter().enumerate() {
            exps[i] = match p.to_ascii_lowercase().as_str() {
                "1" => 0,
                "w" | "omega" => 1,
                "w^2" | "w2" | "omega^2" | "omega2" => 2,
                other => return Err(Error::Parse(format!("not a cube root of unity: {other:?}"))),
            };
        }
        Self::new(spec, exps)
    }
}

/// All 27 beta triples in lexicographic order of exponents.
pub fn beta_set(spec: &Arc<NumberFieldSpec>) -> Result<Vec<BetaTriple>> {
    let mut out = Vec::with_capacity(27);
    for e0 in 0..3u8 {
        for e1 in 0..3u8 {
            for e2 in 0..3u8 {
                out.push(BetaTriple::new(spec, [e0, e1, e2])?);
            }
        }
    }
    Ok(out)
}

/// The plane L_{J,beta}: z_{k_i} = -beta_i z_{j_i} for the three pairs of J.
pub fn l_plane(
    spec: &Arc<NumberFieldSpec>,
    j: &PlaneIndex,
    beta: &BetaTriple,
) -> Result<Plane> {
    let zero = NumberFieldElement::zero(spec);
    let one = NumberFieldElement::one(spec);
    let mut rows: [Vec<NumberFieldElement>; 3] = [
        vec![zero.clone(); 6],
        vec![zero.clone(); 6],
        vec![zero; 6],
    ];
    for (i, &(jj, kk)) in j.pairs().iter().enumerate() {
        rows[i][kk] = one.clone();
        rows[i][jj] = beta.betas()[i].clone();
    }
    Plane::from_rows(spec, &rows)
}

/// The Lemma catalog around the Fermat fourfold, with the 19-plane basis and
/// its intersection matrix precomputed.
pub struct FermatCatalog {
    spec: Arc<NumberFieldSpec>,
    hypersurface: SplitHypersurface,
    s_basis: Vec<Plane>,
    gram: IntMatrix,
}

/// (J ordinal, beta exponents) of S1..S19 in table order.
pub const S_BASIS_TABLE: [(usize, [u8; 3]); 19] = [
    (0, [0, 0, 0]),
    (0, [0, 0, 1]),
    (0, [0, 0, 2]),
    (0, [0, 1, 0]),
    (0, [0, 1, 1]),
    (0, [1, 0, 0]),
    (0, [1, 0, 1]),
    (0, [1, 1, 0]),
    (0, [1, 1, 1]),
    (1, [0, 0, 0]),
    (1, [0, 0, 1]),
    (1, [1, 0, 0]),
    (1, [1, 0, 1]),
    (2, [0, 0, 0]),
    (2, [0, 0, 1]),
    (2, [0, 1, 0]),
    (2, [0, 1, 1]),
    (3, [0, 0, 0]),
    (3, [0, 0, 1]),
];

impl FermatCatalog {
    pub fn new() -> Result<Self> {
        let spec = NumberFieldSpec::cyclotomic3();
        let f1 = hesse::hesse_form(&NumberFieldElement::zero(&spec));
        let f2 = f1.neg();
        let hypersurface = SplitHypersurface::new(f1, f2);
        let s_basis = S_BASIS_TABLE
            .iter()
            .map(|&(j, exps)| l_plane(&spec, &INDEX_SET[j], &BetaTriple::new(&spec, exps)?))
            .collect::<Result<Vec<_>>>()?;
        let gram = gram_matrix(&s_basis)?;
        Ok(Self {
            spec,
            hypersurface,
            s_basis,
            gram,
        })
    }

    pub fn spec(&self) -> &Arc<NumberFieldSpec> {
        &self.spec
    }

    pub fn hypersurface(&self) -> &SplitHypersurface {
        &self.hypersurface
    }

    pub fn s_basis(&self) -> &[Plane] {
        &self.s_basis
    }

    pub fn gram(&self) -> &IntMatrix {
        &self.gram
    }

    /// The 108 planes L_{J,beta} in (J, beta) lexicographic order.
    pub fn l_planes(&self) -> Result<Vec<(PlaneIndex, BetaTriple, Plane)>> {
        let betas = beta_set(&self.spec)?;
        let mut out = Vec::with_capacity(108);
        for j in &INDEX_SET {
            for beta in &betas {
                let plane = l_plane(&self.spec, j, beta)?;
                debug_assert!(plane::contains(&self.hypersurface, &plane));
                out.push((*j, beta.clone(), plane));
            }
        }
        Ok(out)
    }

    /// Integral coordinates m with m . [S] + [L] = 0, from the kernel of the
    /// bordered 20x20 intersection matrix.
    ///
    /// Checks, in order: the bordered determinant vanishes, the kernel is one
    /// dimensional, the primitive kernel vector has last coordinate 1 after
    /// the sign convention, and the linear relation M m = -v really holds.
    pub fn decompose(&self, l: &Plane) -> Result<Vec<BigInt>> {
        let v: Vec<i64> = self
            .s_basis
            .iter()
            .map(|s| plane::intersection_number(s, l))
            .collect::<Result<Vec<_>>>()?;
        let n = self.s_basis.len();
        let mut bordered = IntMatrix::zero(n + 1, n + 1);
        for i in 0..n {
            for j in 0..n {
                *bordered.at_mut(i, j) = self.gram.at(i, j).clone();
            }
        }
        for i in 0..n {
            *bordered.at_mut(i, n) = BigInt::from(v[i]);
            *bordered.at_mut(n, i) = BigInt::from(v[i]);
        }
        *bordered.at_mut(n, n) = BigInt::from(plane::intersection_number(l, l)?);
        if !bordered.det_bareiss()?.is_zero() {
            return Err(Error::KernelRankUnexpected(0));
        }
        let kernel = bordered.rational_kernel_primitive();
        if kernel.len() != 1 {
            return Err(Error::KernelRankUnexpected(kernel.len()));
        }
        let mut vec = kernel.into_iter().next().unwrap();
        let last = vec[n].clone();
        if last.magnitude() != BigInt::one().magnitude() {
            return Err(Error::NonIntegralKernel);
        }
        if last.is_negative() {
            for x in &mut vec {
                *x = -x.clone();
            }
        }
        let m: Vec<BigInt> = vec[..n].to_vec();
        // Gram-consistency: M m = -v
        for i in 0..n {
            let mut acc = BigInt::zero();
            for j in 0..n {
                acc += self.gram.at(i, j) * &m[j];
            }
            if acc != -BigInt::from(v[i]) {
                return Err(Error::NonIntegralKernel);
            }
        }
        Ok(m)
    }

    /// All 405 planes of the signed Fermat fourfold: the 243 rank-2 planes
    /// from flex-tangent pairs together with the 162 rank-3 planes y = -g x
    /// over the automorphism closure of the diagonal cubic.
    pub fn all_planes(&self) -> Result<Vec<Plane>> {
        let zero_lambda = NumberFieldElement::zero(&self.spec);
        let flexes = hesse::flex_table(&zero_lambda)?;
        let mut planes =
            plane::rank2_planes(&flexes, &flexes, 3, &self.hypersurface)?;
        let aut = hesse::group_closure(
            &hesse::hesse_generators(&zero_lambda)?,
            self.hypersurface.f1(),
        )?;
        for g in aut.elements() {
            let mut neg = FieldMatrix::zero(&self.spec, 3, 3);
            for i in 0..3 {
                for j in 0..3 {
                    *neg.at_mut(i, j) = -g.at(i, j);
                }
            }
            let plane = Plane::graph(&neg)?;
            debug_assert!(plane::contains(&self.hypersurface, &plane));
            planes.push(plane);
        }
        let unique: BTreeSet<&Plane> = planes.iter().collect();
        assert_eq!(unique.len(), planes.len(), "plane catalog has collisions");
        planes.sort();
        Ok(planes)
    }
}

/// Symmetric matrix of pairwise intersection numbers; diagonal entries 3.
pub fn gram_matrix(planes: &[Plane]) -> Result<IntMatrix> {
    let n = planes.len();
    let mut m = IntMatrix::zero(n, n);
    for i in 0..n {
        for j in i..n {
            let value = plane::intersection_number(&planes[i], &planes[j])?;
            *m.at_mut(i, j) = BigInt::from(value);
            *m.at_mut(j, i) = BigInt::from(value);
        }
    }
    Ok(m)
}

/// The 108 planes alone, in catalog order.
pub fn build_l_planes() -> Result<Vec<Plane>> {
    Ok(FermatCatalog::new()?
        .l_planes()?
        .into_iter()
        .map(|(_, _, p)| p)
        .collect())
}

/// The 19 basis planes in table order.
pub fn build_s_basis() -> Result<Vec<Plane>> {
    Ok(FermatCatalog::new()?.s_basis().to_vec())
}

/// Full 405-plane catalog of the Fermat fourfold.
pub fn all_fermat_planes() -> Result<Vec<Plane>> {
    FermatCatalog::new()?.all_planes()
}

/// The transcribed 19x19 golden matrix M + I (every entry of M shifted by 1).
pub fn appendix_m_plus_i() -> IntMatrix {
    let text = include_str!("../data/appendix_M_plus_I.json");
    let value = json::parse_json(text).expect("embedded golden file parses");
    json::int_matrix_from_value(&value).expect("embedded golden file is a matrix")
}

/// M + I for a computed Gram matrix, for diffing against the appendix file.
pub fn plus_ones(m: &IntMatrix) -> IntMatrix {
    let mut out = m.clone();
    for i in 0..m.rows() {
        for j in 0..m.cols() {
            *out.at_mut(i, j) += 1;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn index_set_validation() {
        assert!(PlaneIndex::new([(0, 1), (2, 3), (4, 5)]).is_ok());
        assert!(matches!(
            PlaneIndex::new([(0, 3), (1, 4), (2, 5)]),
            Err(Error::IndexNotInK)
        ));
        assert_eq!(PlaneIndex::parse("J2").unwrap().bracket(), "[01|24|35]");
        assert_eq!(
            PlaneIndex::parse("[02|14|35]").unwrap().label(),
            "J4"
        );
    }

    #[test]
    fn l_planes_are_108_distinct_rank2_members() {
        let catalog = FermatCatalog::new().unwrap();
        let planes = catalog.l_planes().unwrap();
        assert_eq!(planes.len(), 108);
        let unique: BTreeSet<&Plane> = planes.iter().map(|(_, _, p)| p).collect();
        assert_eq!(unique.len(), 108);
        for (_, _, p) in &planes {
            assert!(plane::contains(catalog.hypersurface(), p));
            assert_eq!(
                plane::classify_rank(p).unwrap(),
                plane::PlaneRank::Rank2
            );
        }
    }

    #[test]
    fn s_basis_corners() {
        let catalog = FermatCatalog::new().unwrap();
        let spec = catalog.spec().clone();
        let s1 = l_plane(
            &spec,
            &INDEX_SET[0],
            &BetaTriple::new(&spec, [0, 0, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(catalog.s_basis()[0], s1);
        let s10 = l_plane(
            &spec,
            &INDEX_SET[1],
            &BetaTriple::new(&spec, [0, 0, 0]).unwrap(),
        )
        .unwrap();
        assert_eq!(catalog.s_basis()[9], s10);
        let s19 = l_plane(
            &spec,
            &INDEX_SET[3],
            &BetaTriple::new(&spec, [0, 0, 1]).unwrap(),
        )
        .unwrap();
        assert_eq!(catalog.s_basis()[18], s19);
    }

    #[test]
    fn stacked_s1_s2_has_rank_four() {
        let catalog = FermatCatalog::new().unwrap();
        let stacked = catalog.s_basis()[0]
            .canonical()
            .stack(catalog.s_basis()[1].canonical())
            .unwrap();
        assert_eq!(stacked.rank().unwrap(), 4);
        // the corresponding Gram entries: S1.S2 meet in a line, S1.S5 in a point
        assert_eq!(*catalog.gram().at(0, 1), BigInt::from(-1));
        assert_eq!(*catalog.gram().at(0, 4), BigInt::from(1));
    }

    #[test]
    fn gram_matches_appendix_and_det_81() {
        let catalog = FermatCatalog::new().unwrap();
        let recomputed = plus_ones(catalog.gram());
        let golden = appendix_m_plus_i();
        assert_eq!(recomputed, golden);
        assert_eq!(
            catalog.gram().det_bareiss().unwrap(),
            BigInt::from(81)
        );
    }

    #[test]
    fn decompose_basis_member_is_minus_unit() {
        let catalog = FermatCatalog::new().unwrap();
        let m = catalog.decompose(&catalog.s_basis()[0].clone()).unwrap();
        let mut expected = vec![BigInt::zero(); 19];
        expected[0] = BigInt::from(-1);
        assert_eq!(m, expected);
    }

    #[test]
    fn decompose_known_catalog_member() {
        // L_{J1,(w,1,1)} = S6
        let catalog = FermatCatalog::new().unwrap();
        let spec = catalog.spec().clone();
        let l = l_plane(
            &spec,
            &INDEX_SET[0],
            &BetaTriple::new(&spec, [1, 0, 0]).unwrap(),
        )
        .unwrap();
        let m = catalog.decompose(&l).unwrap();
        let mut expected = vec![BigInt::zero(); 19];
        expected[5] = BigInt::from(-1);
        assert_eq!(m, expected);
    }

    #[test]
    fn l_planes_subset_of_rank2_enumeration() {
        let catalog = FermatCatalog::new().unwrap();
        let zero_lambda = NumberFieldElement::zero(catalog.spec());
        let flexes = hesse::flex_table(&zero_lambda).unwrap();
        let rank2: BTreeSet<Plane> =
            plane::rank2_planes(&flexes, &flexes, 3, catalog.hypersurface())
                .unwrap()
                .into_iter()
                .collect();
        assert_eq!(rank2.len(), 243);
        for (_, _, p) in catalog.l_planes().unwrap() {
            assert!(rank2.contains(&p), "L plane missing from rank-2 set");
        }
    }

    #[test]
    fn full_catalog_has_405_planes() {
        let planes = all_fermat_planes().unwrap();
        assert_eq!(planes.len(), 405);
    }
}
