//! Planes in P^5 presented as rank-3 systems Ax = By, their rank
//! classification, membership in a split hypersurface, the two construction
//! routes (flex-tangent pairs and form automorphisms), pairwise intersection
//! numbers, and the plane-counting formulas.

use std::collections::BTreeSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::hesse::{self, AutGroup, FlexDatum};
use crate::matrix::FieldMatrix;
use crate::numfield::{FieldElements, NumberFieldElement, NumberFieldSpec};
use crate::poly::MultiPoly;
use crate::rational::{rat, rational_cbrt, Rational};

/// A 2-plane in P^5 cut out by three independent equations A x = B y, with
/// x = (z0, z1, z2) and y = (z3, z4, z5). Two planes are equal exactly when
/// the reduced row echelon forms of their stacked systems [A | -B] agree.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Plane {
    canonical: FieldMatrix,
}

impl Plane {
    /// Builds a plane from the 3x6 coefficient rows of [A | -B], i.e. each
    /// row r encodes the equation sum_i r[i] z_i = 0.
    pub fn from_rows(spec: &Arc<NumberFieldSpec>, rows: &[Vec<NumberFieldElement>; 3]) -> Result<Self> {
        let system = FieldMatrix::from_rows(spec, rows);
        let (canonical, rank, _) = system.rref()?;
        if rank != 3 {
            return Err(Error::PlaneSystemRank(rank));
        }
        Ok(Self { canonical })
    }

    /// Builds the plane {y = g x} for an invertible 3x3 matrix g.
    pub fn graph(g: &FieldMatrix) -> Result<Self> {
        assert_eq!((g.rows(), g.cols()), (3, 3));
        let spec = g.spec();
        let mut rows: [Vec<NumberFieldElement>; 3] = [vec![], vec![], vec![]];
        for (i, row) in rows.iter_mut().enumerate() {
            for j in 0..3 {
                row.push(g.at(i, j).clone());
            }
            for j in 0..3 {
                row.push(if i == j {
                    -NumberFieldElement::one(spec)
                } else {
                    NumberFieldElement::zero(spec)
                });
            }
        }
        Self::from_rows(spec, &rows)
    }

    /// The canonical 3x6 reduced system.
    pub fn canonical(&self) -> &FieldMatrix {
        &self.canonical
    }

    pub fn spec(&self) -> &Arc<NumberFieldSpec> {
        self.canonical.spec()
    }

    /// Rank of the x-side coefficient block (columns 0..3).
    pub fn rank_a(&self) -> Result<usize> {
        self.side_rank(0)
    }

    /// Rank of the y-side coefficient block (columns 3..6).
    pub fn rank_b(&self) -> Result<usize> {
        self.side_rank(3)
    }

    fn side_rank(&self, offset: usize) -> Result<usize> {
        let spec = self.spec();
        let mut m = FieldMatrix::zero(spec, 3, 3);
        for i in 0..3 {
            for j in 0..3 {
                *m.at_mut(i, j) = self.canonical.at(i, offset + j).clone();
            }
        }
        m.rank()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PlaneRank {
    Rank2,
    Rank3,
}

/// Rank classification of a plane inside a smooth split hypersurface: rank 3
/// means A (equivalently B) is invertible, rank 2 is the flex-tangent case.
/// Rank <= 1 on either side cannot occur for planes in a smooth X and is
/// reported as an error.
pub fn classify_rank(plane: &Plane) -> Result<PlaneRank> {
    let ra = plane.rank_a()?;
    let rb = plane.rank_b()?;
    if ra <= 1 || rb <= 1 {
        return Err(Error::IllegalRank {
            rank_a: ra,
            rank_b: rb,
        });
    }
    Ok(if ra == 3 { PlaneRank::Rank3 } else { PlaneRank::Rank2 })
}

/// A hypersurface F1(x0,x1,x2) = F2(y0,y1,y2) in P^5 of degree d >= 3.
#[derive(Debug, Clone)]
pub struct SplitHypersurface {
    f1: MultiPoly,
    f2: MultiPoly,
    degree: usize,
}

impl SplitHypersurface {
    pub fn new(f1: MultiPoly, f2: MultiPoly) -> Self {
        assert_eq!(f1.nvars(), 3);
        assert_eq!(f2.nvars(), 3);
        assert!(f1.is_homogeneous() && f2.is_homogeneous(), "forms must be homogeneous");
        let degree = f1.total_degree() as usize;
        assert_eq!(degree, f2.total_degree() as usize, "degrees must agree");
        assert!(degree >= 3, "degree must be at least 3");
        Self { f1, f2, degree }
    }

    pub fn f1(&self) -> &MultiPoly {
        &self.f1
    }

    pub fn f2(&self) -> &MultiPoly {
        &self.f2
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    /// F1 - F2 as a polynomial in the six coordinates z0..z5.
    pub fn difference(&self) -> MultiPoly {
        let spec = self.f1.spec();
        let embed = |f: &MultiPoly, offset: usize| {
            let images: Vec<MultiPoly> = (0..3)
                .map(|i| MultiPoly::var(spec, 6, i + offset))
                .collect();
            f.substitute(&images, 6)
        };
        embed(&self.f1, 0).sub(&embed(&self.f2, 3))
    }
}

/// Membership test: the plane lies in X exactly when F1 - F2 restricts to
/// zero along the plane's solved system.
pub fn contains(x: &SplitHypersurface, plane: &Plane) -> bool {
    x.difference()
        .restrict_to_subspace(plane.canonical())
        .map(|r| r.is_zero())
        .unwrap_or(false)
}

/// Extracts, for a verified flex datum of the form F, the scalar c and lifted
/// linear form l1 with F = c * l1^d modulo the tangent l0.
fn flex_residue(
    f: &MultiPoly,
    flex: &FlexDatum,
    d: usize,
) -> Result<(NumberFieldElement, [NumberFieldElement; 3])> {
    let spec = f.spec();
    let phi = hesse::restrict_to_line(f, &flex.tangent)?;
    let Some((c, root)) = phi.dth_power_root() else {
        return Err(Error::FlexExtractionFailed);
    };
    debug_assert_eq!(d as u32, f.total_degree());
    // lift the binary root back to a linear form on P^2: among the lifts with
    // l1(s*u + t*v) = root(s, t) (they differ by multiples of the tangent and
    // cut the same plane) take the one vanishing on the pivot unit vector
    let (u, v, _pivot) = hesse::line_basis(&flex.tangent)?;
    let ju = u.iter().position(|e| e.is_one()).expect("unit position");
    let jv = v.iter().position(|e| e.is_one()).expect("unit position");
    let mut l1 = [
        NumberFieldElement::zero(spec),
        NumberFieldElement::zero(spec),
        NumberFieldElement::zero(spec),
    ];
    l1[ju] = root.coeff(1).clone();
    l1[jv] = root.coeff(0).clone();
    Ok((c, l1))
}

/// Solves gamma^d = ratio in the working field for d = 3.
///
/// Handles, in order: ratio = 1; a perfect cube of a rational; a cube root
/// registered on the field spec, up to a rational cube factor; and a ratio
/// lying in a quadratic subfield whose cube root lies in the same subfield
/// (resolved exactly through its norm and trace, no factorization needed).
/// Anything else means the plane is not defined over this field.
fn cube_root_in_field(ratio: &NumberFieldElement) -> Result<NumberFieldElement> {
    let spec = ratio.spec();
    if ratio.is_one() {
        return Ok(NumberFieldElement::one(spec));
    }
    if let Some(q) = ratio.as_rational() {
        if let Some(root) = rational_cbrt(&q) {
            return Ok(NumberFieldElement::from_rational(spec, root));
        }
        // look for a registered radical delta with delta^3 = r and q = r * s^3
        for r in spec.cube_root_values() {
            let scale = &q / &r;
            if let Some(s) = rational_cbrt(&scale) {
                let delta = spec.cube_root_of(&r).expect("registered");
                return Ok(delta.scale(&s));
            }
        }
    } else if let Some(gamma) = cube_root_in_quadratic_subfield(ratio) {
        return Ok(gamma);
    }
    Err(Error::FieldTooSmall(format!(
        "no cube root of {ratio} available in {}",
        spec.label()
    )))
}

/// Cube root of an element r generating a quadratic subfield Q(r), searched
/// inside Q(r) itself.
///
/// If gamma^3 = r and gamma has trace T and norm N over Q, then N^3 = N(r),
/// T satisfies T^3 - 3 N T = Tr(r), and gamma = (r + T N) / (T^2 - N). Both
/// N and T are found by exact rational root extraction.
fn cube_root_in_quadratic_subfield(r: &NumberFieldElement) -> Option<NumberFieldElement> {
    use num_traits::Zero;
    let spec = r.spec();
    let (trace, norm) = quadratic_relation(r)?;
    let n_gamma = rational_cbrt(&norm)?;
    for t_gamma in rational_roots_of_depressed_cubic(&(-rat(3) * &n_gamma), &(-trace.clone())) {
        let denom = &t_gamma * &t_gamma - &n_gamma;
        if denom.is_zero() {
            continue;
        }
        let shift = NumberFieldElement::from_rational(spec, &t_gamma * &n_gamma);
        let gamma = (r + shift).scale(&denom.recip());
        if gamma.pow(3) == *r {
            return Some(gamma);
        }
    }
    None
}

/// The monic quadratic x^2 - t x + n satisfied by r, when span{1, r} is
/// two-dimensional and closed under squaring.
fn quadratic_relation(r: &NumberFieldElement) -> Option<(Rational, Rational)> {
    let r2 = r.pow(2);
    let rc = r.coefficients();
    let r2c = r2.coefficients();
    // t is forced by any nonzero off-constant coordinate of r
    let i = (1..rc.len()).find(|&i| !num_traits::Zero::is_zero(&rc[i]))?;
    let t = &r2c[i] / &rc[i];
    let n = &t * &rc[0] - &r2c[0];
    let candidate = r.scale(&t)
        - NumberFieldElement::from_rational(r.spec(), n.clone());
    if candidate == r2 {
        Some((t, n))
    } else {
        None
    }
}

/// Rational roots of x^3 + p x + q, by integer divisor enumeration after
/// clearing denominators. Gives up (returns what it found) past a desk-scale
/// search bound; callers verify candidates anyway.
fn rational_roots_of_depressed_cubic(p: &Rational, q: &Rational) -> Vec<Rational> {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, Zero};
    let k = num_integer::lcm(p.denom().clone(), q.denom().clone());
    let k_rat = Rational::from_integer(k.clone());
    // s = k x solves s^3 + (p k^2) s + (q k^3) = 0 with integer coefficients
    let a = (p * &k_rat * &k_rat).to_integer();
    let b = (q * &k_rat * &k_rat * &k_rat).to_integer();
    let mut roots = Vec::new();
    let mut push = |s: BigInt| {
        if (&s * &s * &s + &a * &s + &b).is_zero() {
            roots.push(Rational::new(s, k.clone()));
        }
    };
    if b.is_zero() {
        push(BigInt::zero());
        // remaining roots solve s^2 = -a
        if !a.is_positive() {
            let root = num_integer::Roots::sqrt(&(-&a));
            if &root * &root == -&a {
                push(root.clone());
                push(-root);
            }
        }
        return roots;
    }
    let bound = BigInt::from(1_000_000i64);
    let mut d = BigInt::one();
    while &d * &d <= b.abs() && d <= bound {
        if (&b % &d).is_zero() {
            let e = b.abs() / &d;
            for cand in [d.clone(), -d.clone(), e.clone(), -e] {
                push(cand);
            }
        }
        d += 1;
    }
    roots.sort();
    roots.dedup();
    roots
}

/// The d planes of rank 2 attached to one pair of d-flex tangents, together
/// over all pairs: l0(x) = 0, l1(x) = zeta * gamma * m1(y), m2(y) = 0 where
/// F1 = c1 l1^d mod l0, F2 = c2 m1^d mod m2 and gamma^d = c2/c1.
pub fn rank2_planes(
    flexes1: &[FlexDatum],
    flexes2: &[FlexDatum],
    d: usize,
    x: &SplitHypersurface,
) -> Result<Vec<Plane>> {
    assert_eq!(d, x.degree());
    if d != 3 {
        return Err(Error::FieldTooSmall(
            "only cubic hypersurfaces carry the needed roots of unity".into(),
        ));
    }
    let spec = x.f1().spec();
    let zetas = spec.third_roots_of_unity()?;
    let difference = x.difference();
    let mut seen = BTreeSet::new();
    let mut planes = Vec::new();
    for flex1 in flexes1 {
        let (c1, l1) = flex_residue(x.f1(), flex1, d)?;
        for flex2 in flexes2 {
            let (c2, m1) = flex_residue(x.f2(), flex2, d)?;
            let ratio = c2 * c1.inv()?;
            let gamma = cube_root_in_field(&ratio)?;
            for zeta in &zetas {
                let couple = zeta * &gamma;
                let zero = NumberFieldElement::zero(spec);
                let row0: Vec<NumberFieldElement> = flex1
                    .tangent
                    .iter()
                    .cloned()
                    .chain(std::iter::repeat_n(zero.clone(), 3))
                    .collect();
                let row1: Vec<NumberFieldElement> = l1
                    .iter()
                    .cloned()
                    .chain(m1.iter().map(|c| -(c * &couple)))
                    .collect();
                let row2: Vec<NumberFieldElement> = std::iter::repeat_n(zero.clone(), 3)
                    .chain(flex2.tangent.iter().cloned())
                    .collect();
                let plane = Plane::from_rows(spec, &[row0, row1, row2])?;
                if !difference
                    .restrict_to_subspace(plane.canonical())?
                    .is_zero()
                {
                    return Err(Error::FlexExtractionFailed);
                }
                if seen.insert(plane.clone()) {
                    planes.push(plane);
                }
            }
        }
    }
    planes.sort();
    Ok(planes)
}

/// The |Aut(F1)| planes of rank 3 in the equal-form presentation F1 = F2:
/// one plane {y = g x} per group element.
pub fn rank3_planes(aut: &AutGroup, x: &SplitHypersurface) -> Result<Vec<Plane>> {
    if x.f1() != x.f2() {
        return Err(Error::FormsNotEqual);
    }
    let mut planes = Vec::with_capacity(aut.order());
    for g in aut.elements() {
        let plane = Plane::graph(g)?;
        debug_assert!(contains(x, &plane));
        planes.push(plane);
    }
    let unique: BTreeSet<&Plane> = planes.iter().collect();
    assert_eq!(unique.len(), planes.len(), "group elements gave duplicate planes");
    planes.sort();
    Ok(planes)
}

/// Cohomological intersection number of two planes in a common smooth cubic
/// fourfold, read off the rank of the stacked 6x6 system:
/// rank 6 -> disjoint (0), rank 5 -> point (1), rank 4 -> line (-1),
/// rank 3 -> equal (3).
pub fn intersection_number(s: &Plane, t: &Plane) -> Result<i64> {
    let stacked = s.canonical().stack(t.canonical())?;
    let (_, rank, _) = stacked.rref()?;
    Ok(match rank {
        6 => 0,
        5 => 1,
        4 => -1,
        3 => 3,
        _ => unreachable!("stacked plane systems have rank between 3 and 6"),
    })
}

/// d nu1 nu2 rank-2 planes, plus |Aut(F1)| rank-3 planes when the two forms
/// are linearly equivalent.
pub fn count_planes(
    d: u64,
    nu1: u64,
    nu2: u64,
    aut_order: Option<u64>,
    equivalent: bool,
) -> Result<u64> {
    let rank2 = d * nu1 * nu2;
    if !equivalent {
        return Ok(rank2);
    }
    match aut_order {
        Some(a) => Ok(rank2 + a),
        None => Err(Error::MissingAutOrder),
    }
}

/// Total plane count of the cubic fourfold Hesse(lambda1)(x) = Hesse(lambda2)(y),
/// deciding equivalence of the two members by equality of j-invariants.
pub fn cubic_plane_count(
    lambda1: &NumberFieldElement,
    lambda2: &NumberFieldElement,
) -> Result<u64> {
    let j1 = hesse::j_invariant(lambda1)?;
    let j2 = hesse::j_invariant(lambda2)?;
    if j1 == j2 {
        let aut = hesse::aut_order(lambda1)? as u64;
        count_planes(3, 9, 9, Some(aut), true)
    } else {
        count_planes(3, 9, 9, None, false)
    }
}

/// Full exact enumeration of the planes on Hesse(lambda1)(x) = Hesse(lambda2)(y).
///
/// For lambda1 = lambda2 this is the equal-form presentation: 243 rank-2
/// planes plus one rank-3 plane per automorphism. For distinct rational
/// lambdas the rank-2 planes need a cube root of (1 - lambda2^3)/(1 - lambda1^3);
/// when that ratio is not a perfect cube the enumeration is performed over
/// the sextic field Q(omega, cbrt(ratio)) built on the fly. Enumerating the
/// rank-3 planes of two equivalent but unequal forms is out of scope and
/// reported as [`Error::FormsNotEqual`].
pub fn enumerate_planes(
    lambda1: &NumberFieldElement,
    lambda2: &NumberFieldElement,
) -> Result<Vec<Plane>> {
    if !hesse::is_smooth(lambda1) || !hesse::is_smooth(lambda2) {
        return Err(Error::SingularCurve);
    }
    let equal_lambda = lambda1 == lambda2;
    let equivalent = hesse::j_invariant(lambda1)? == hesse::j_invariant(lambda2)?;
    if equivalent && !equal_lambda {
        return Err(Error::FormsNotEqual);
    }
    let (l1, l2) = promote_pair(lambda1, lambda2)?;
    let x = SplitHypersurface::new(hesse::hesse_form(&l1), hesse::hesse_form(&l2));
    let flexes1 = hesse::flex_table(&l1)?;
    let flexes2 = hesse::flex_table(&l2)?;
    let mut planes = rank2_planes(&flexes1, &flexes2, 3, &x)?;
    if equal_lambda {
        let aut = hesse::group_closure(&hesse::hesse_generators(&l1)?, x.f1())?;
        planes.extend(rank3_planes(&aut, &x)?);
    }
    let unique: BTreeSet<&Plane> = planes.iter().collect();
    assert_eq!(unique.len(), planes.len(), "rank-2 and rank-3 sets overlap");
    planes.sort();
    Ok(planes)
}

/// Moves the pair of pencil parameters into a field over which every plane of
/// the fourfold is defined.
fn promote_pair(
    lambda1: &NumberFieldElement,
    lambda2: &NumberFieldElement,
) -> Result<(NumberFieldElement, NumberFieldElement)> {
    if lambda1 == lambda2 {
        let spec = lambda1.spec();
        if !spec.has_omega() {
            return Err(Error::FieldTooSmall(format!(
                "{} has no cube root of unity",
                spec.label()
            )));
        }
        return Ok((lambda1.clone(), lambda2.clone()));
    }
    // c_i = 1 - lambda_i^3 for the Hesse pencil; the coupling needs a cube
    // root of c2/c1
    let one = NumberFieldElement::one(lambda1.spec());
    let c1 = &one - &lambda1.pow(3);
    let c2 = &one - &lambda2.pow(3);
    let ratio = (c2 * c1.inv()?)
        .as_rational()
        .ok_or_else(|| Error::FieldTooSmall("irrational coupling ratio".into()))?;
    if rational_cbrt(&ratio).is_some() {
        // ratio is already a cube: the base field just needs omega
        let spec = lambda1.spec();
        if spec.has_omega() {
            return Ok((lambda1.clone(), lambda2.clone()));
        }
        let target = NumberFieldSpec::cyclotomic3();
        return Ok((transfer_rational(lambda1, &target)?, transfer_rational(lambda2, &target)?));
    }
    let target = NumberFieldSpec::omega_cbrt(&ratio)?;
    Ok((
        transfer_rational(lambda1, &target)?,
        transfer_rational(lambda2, &target)?,
    ))
}

fn transfer_rational(
    x: &NumberFieldElement,
    target: &Arc<NumberFieldSpec>,
) -> Result<NumberFieldElement> {
    let q = x
        .as_rational()
        .ok_or_else(|| Error::FieldTooSmall("parameter is not rational".into()))?;
    Ok(NumberFieldElement::from_rational(target, q))
}
