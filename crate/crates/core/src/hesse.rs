//! The Hesse pencil x0^3 + x1^3 + x2^3 - 3 lambda x0 x1 x2: smoothness, the
//! j-invariant, the nine flex points with their tangent lines, and the full
//! automorphism group of the form computed by generator closure.

use std::collections::HashSet;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::matrix::FieldMatrix;
use crate::numfield::{FieldElements, NumberFieldElement, NumberFieldSpec};
use crate::poly::{poly_from_terms, BinaryForm, Monomial, MultiPoly};
use crate::rational::{rat, rat_frac};

/// Hard cap on closure size; a wrong generator set must not loop forever.
pub const CLOSURE_BUDGET: usize = 10_000;

/// A member of the Hesse pencil with its cached cubic form.
#[derive(Debug, Clone)]
pub struct HesseCubic {
    lambda: NumberFieldElement,
    form: MultiPoly,
}

impl HesseCubic {
    pub fn new(lambda: &NumberFieldElement) -> Self {
        Self {
            lambda: lambda.clone(),
            form: hesse_form(lambda),
        }
    }

    pub fn lambda(&self) -> &NumberFieldElement {
        &self.lambda
    }

    pub fn form(&self) -> &MultiPoly {
        &self.form
    }
}

/// x0^3 + x1^3 + x2^3 - 3 lambda x0 x1 x2 over lambda's field.
pub fn hesse_form(lambda: &NumberFieldElement) -> MultiPoly {
    let spec = lambda.spec();
    let one = NumberFieldElement::one(spec);
    poly_from_terms(
        spec,
        3,
        &[
            (one.clone(), vec![3, 0, 0]),
            (one.clone(), vec![0, 3, 0]),
            (one, vec![0, 0, 3]),
            (-lambda.scale(&rat(3)), vec![1, 1, 1]),
        ],
    )
}

/// The pencil member is smooth precisely when lambda^3 != 1.
pub fn is_smooth(lambda: &NumberFieldElement) -> bool {
    !lambda.pow(3).is_one()
}

/// j = 1728 lambda^3 (lambda^3 + 8)^3 / (64 (lambda^3 - 1)^3), exactly.
pub fn j_invariant(lambda: &NumberFieldElement) -> Result<NumberFieldElement> {
    if !is_smooth(lambda) {
        return Err(Error::SingularCurve);
    }
    let spec = lambda.spec();
    let l3 = lambda.pow(3);
    let eight = NumberFieldElement::from_int(spec, 8);
    let one = NumberFieldElement::one(spec);
    let num = l3.clone() * (l3.clone() + eight).pow(3);
    let den = (l3 - one).pow(3).scale(&rat(64));
    Ok(num.scale(&rat(1728)) * den.inv()?)
}

/// A flex point of the curve together with its tangent line, the tangent
/// stored as its coefficient triple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlexDatum {
    pub point: [NumberFieldElement; 3],
    pub tangent: [NumberFieldElement; 3],
}

impl FlexDatum {
    pub fn tangent_poly(&self) -> MultiPoly {
        let spec = self.point[0].spec();
        let mut p = MultiPoly::zero(spec, 3);
        for (i, c) in self.tangent.iter().enumerate() {
            let mut e = vec![0; 3];
            e[i] = 1;
            p.add_term(Monomial(e), c.clone());
        }
        p
    }

    /// Projective normalization: first nonzero coordinate scaled to one.
    pub fn normalized_point(&self) -> [NumberFieldElement; 3] {
        normalize_projective(&self.point)
    }
}

pub fn normalize_projective(p: &[NumberFieldElement; 3]) -> [NumberFieldElement; 3] {
    let pivot = p
        .iter()
        .find(|c| !c.is_zero())
        .expect("projective point must be nonzero");
    let inv = pivot.inv().expect("nonzero coordinate is invertible");
    [&p[0] * &inv, &p[1] * &inv, &p[2] * &inv]
}

/// The nine flex points and tangent lines of a smooth Hesse member.
///
/// The points fall into three coordinate families [0 : -w^k : 1],
/// [1 : 0 : -w^k] and [-w^k : 1 : 0]; each tangent is the gradient line at
/// its point. Every returned row is re-verified through [`verify_flex`].
pub fn flex_table(lambda: &NumberFieldElement) -> Result<Vec<FlexDatum>> {
    if !is_smooth(lambda) {
        return Err(Error::SingularCurve);
    }
    let spec = lambda.spec();
    let w = spec.omega()?;
    let one = NumberFieldElement::one(spec);
    let zero = NumberFieldElement::zero(spec);
    let mut rows = Vec::with_capacity(9);
    for family in 0..3 {
        for k in 0..3u64 {
            let wk = w.pow(k);
            let w2k = w.pow(2 * k);
            let (point, tangent) = match family {
                0 => (
                    [zero.clone(), -wk.clone(), one.clone()],
                    [lambda * &wk, w2k, one.clone()],
                ),
                1 => (
                    [one.clone(), zero.clone(), -wk.clone()],
                    [one.clone(), lambda * &wk, w2k],
                ),
                _ => (
                    [-wk.clone(), one.clone(), zero.clone()],
                    [w2k, one.clone(), lambda * &wk],
                ),
            };
            rows.push(FlexDatum { point, tangent });
        }
    }
    let form = hesse_form(lambda);
    for row in &rows {
        if !verify_flex(&form, &row.point, &row.tangent, 3)? {
            return Err(Error::FlexExtractionFailed);
        }
    }
    Ok(rows)
}

/// Deterministic basis of the line {l = 0} in P^2: complete the pivot
/// coordinate of l with the two standard unit vectors on the other positions.
pub fn line_basis(
    l: &[NumberFieldElement; 3],
) -> Result<([NumberFieldElement; 3], [NumberFieldElement; 3], usize)> {
    let Some(p) = l.iter().position(|c| !c.is_zero()) else {
        return Err(Error::DegenerateLine);
    };
    let inv = l[p].inv()?;
    let spec = l[0].spec();
    let others: Vec<usize> = (0..3).filter(|&j| j != p).collect();
    let mk = |j: usize| {
        let mut v = [
            NumberFieldElement::zero(spec),
            NumberFieldElement::zero(spec),
            NumberFieldElement::zero(spec),
        ];
        v[j] = NumberFieldElement::one(spec);
        v[p] = -(&l[j] * &inv);
        v
    };
    Ok((mk(others[0]), mk(others[1]), p))
}

/// Restriction of a ternary form to the line {l = 0}, as a binary form in the
/// two basis parameters of [`line_basis`].
pub fn restrict_to_line(f: &MultiPoly, l: &[NumberFieldElement; 3]) -> Result<BinaryForm> {
    assert_eq!(f.nvars(), 3);
    let (u, v, _) = line_basis(l)?;
    let spec = f.spec();
    let images: Vec<MultiPoly> = (0..3)
        .map(|i| {
            let mut p = MultiPoly::zero(spec, 2);
            p.add_term(Monomial(vec![1, 0]), u[i].clone());
            p.add_term(Monomial(vec![0, 1]), v[i].clone());
            p
        })
        .collect();
    let restricted = f.substitute(&images, 2);
    Ok(BinaryForm::from_poly(&restricted, f.total_degree() as usize))
}

/// Checks that P is a d-flex of {F = 0} with tangent {L = 0}: P lies on both,
/// and F restricted to the line is c * (linear)^d with the root vanishing at P.
pub fn verify_flex(
    f: &MultiPoly,
    point: &[NumberFieldElement; 3],
    line: &[NumberFieldElement; 3],
    d: usize,
) -> Result<bool> {
    if line.iter().all(NumberFieldElement::is_zero) {
        return Err(Error::DegenerateLine);
    }
    let spec = f.spec();
    let on_curve = f.evaluate(point).is_zero();
    let on_line = {
        let mut acc = NumberFieldElement::zero(spec);
        for i in 0..3 {
            acc = &acc + &(&line[i] * &point[i]);
        }
        acc.is_zero()
    };
    if !on_curve || !on_line {
        return Ok(false);
    }
    let (u, v, _) = line_basis(line)?;
    let phi = restrict_to_line(f, line)?;
    let Some((_, root)) = phi.dth_power_root() else {
        return Ok(false);
    };
    // P = alpha*u + beta*v where alpha, beta are P's coordinates on the two
    // unit positions of the basis
    let ju = u.iter().position(|c| c.is_one()).expect("unit position");
    let jv = v.iter().position(|c| c.is_one()).expect("unit position");
    let alpha = point[ju].clone();
    let beta = point[jv].clone();
    debug_assert_eq!(d as u32, f.total_degree());
    let root_at_p = root.evaluate(&alpha, &beta);
    Ok(root_at_p.is_zero())
}

/// A finite matrix group preserving a form, stored as a sorted element list.
#[derive(Debug, Clone)]
pub struct AutGroup {
    elements: Vec<FieldMatrix>,
    order: usize,
}

impl AutGroup {
    pub fn elements(&self) -> &[FieldMatrix] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn contains(&self, g: &FieldMatrix) -> bool {
        self.elements.binary_search(g).is_ok()
    }

    /// True when the three scalar matrices of mu_3 all belong to the group.
    pub fn contains_mu3(&self) -> Result<bool> {
        let spec = self.elements[0].spec();
        let n = self.elements[0].rows();
        let w = spec.omega()?;
        Ok([
            FieldMatrix::identity(spec, n),
            FieldMatrix::scalar(spec, n, &w),
            FieldMatrix::scalar(spec, n, &w.pow(2)),
        ]
        .iter()
        .all(|m| self.contains(m)))
    }
}

/// Multiplicative closure of verified form automorphisms.
///
/// Every generator is first checked to satisfy F(g x) = F(x) exactly; the
/// closure is a breadth-first product sweep capped at [`CLOSURE_BUDGET`]
/// elements, returned sorted for deterministic downstream output.
pub fn group_closure(generators: &[FieldMatrix], f: &MultiPoly) -> Result<AutGroup> {
    for (index, g) in generators.iter().enumerate() {
        if f.substitute_linear(g)? != *f {
            return Err(Error::NotAnAutomorphism { index });
        }
    }
    let spec = f.spec();
    let id = FieldMatrix::identity(spec, f.nvars());
    let mut seen: HashSet<FieldMatrix> = HashSet::new();
    seen.insert(id.clone());
    let mut frontier = vec![id];
    while let Some(m) = frontier.pop() {
        for g in generators {
            let prod = m.mul(g)?;
            if seen.contains(&prod) {
                continue;
            }
            if seen.len() + 1 > CLOSURE_BUDGET {
                return Err(Error::ClosureBudgetExceeded {
                    budget: CLOSURE_BUDGET,
                });
            }
            seen.insert(prod.clone());
            frontier.push(prod);
        }
    }
    let mut elements: Vec<FieldMatrix> = seen.into_iter().collect();
    elements.sort();
    let order = elements.len();
    Ok(AutGroup { elements, order })
}

/// Generators of Aut(F) for the Hesse form at the given lambda: coordinate
/// permutations, diag(1, w, w^2) and the w scalar, plus the known extra
/// automorphism at the two special members lambda = 0 and lambda = 1 + sqrt 3.
pub fn hesse_generators(lambda: &NumberFieldElement) -> Result<Vec<FieldMatrix>> {
    let spec = lambda.spec();
    let w = spec.omega()?;
    let one = NumberFieldElement::one(spec);
    let zero = NumberFieldElement::zero(spec);
    let cycle = FieldMatrix::from_rows(
        spec,
        &[
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
            vec![one.clone(), zero.clone(), zero.clone()],
        ],
    );
    let swap = FieldMatrix::from_rows(
        spec,
        &[
            vec![zero.clone(), one.clone(), zero.clone()],
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), one.clone()],
        ],
    );
    let diag = FieldMatrix::from_rows(
        spec,
        &[
            vec![one.clone(), zero.clone(), zero.clone()],
            vec![zero.clone(), w.clone(), zero.clone()],
            vec![zero.clone(), zero.clone(), w.pow(2)],
        ],
    );
    let scalar = FieldMatrix::scalar(spec, 3, &w);
    let mut gens = vec![cycle, swap, diag, scalar];
    if lambda.is_zero() {
        gens.push(FieldMatrix::from_rows(
            spec,
            &[
                vec![one.clone(), zero.clone(), zero.clone()],
                vec![zero.clone(), one.clone(), zero.clone()],
                vec![zero.clone(), zero.clone(), w.clone()],
            ],
        ));
    } else if is_one_plus_sqrt3(lambda) {
        // M = -(1/sqrt3) [[1,1,1],[1,w,w^2],[1,w^2,w]], of order 4
        let scale = -spec.sqrt3()?.scale(&rat_frac(1, 3));
        let w2 = w.pow(2);
        let rows = [
            [one.clone(), one.clone(), one.clone()],
            [one.clone(), w.clone(), w2.clone()],
            [one.clone(), w2, w],
        ];
        let m = FieldMatrix::from_rows(
            spec,
            &rows
                .iter()
                .map(|r| r.iter().map(|e| e * &scale).collect())
                .collect::<Vec<_>>(),
        );
        gens.push(m);
    }
    Ok(gens)
}

fn is_one_plus_sqrt3(lambda: &NumberFieldElement) -> bool {
    let spec = lambda.spec();
    match spec.sqrt3() {
        Ok(s) => *lambda == NumberFieldElement::one(spec) + s,
        Err(_) => false,
    }
}

/// |Aut(F)| by the j-invariant rule: 162 at j = 0, 108 at j = 1728, 54 else.
pub fn aut_order(lambda: &NumberFieldElement) -> Result<usize> {
    let spec = lambda.spec();
    let j = j_invariant(lambda)?;
    Ok(if j.is_zero() {
        162
    } else if j == NumberFieldElement::from_int(spec, 1728) {
        108
    } else {
        54
    })
}

/// |Aut(F)| by explicit closure of [`hesse_generators`]; checks the result
/// contains the mu_3 scalars and agrees with the j-rule.
pub fn aut_order_by_closure(lambda: &NumberFieldElement) -> Result<usize> {
    let group = group_closure(&hesse_generators(lambda)?, &hesse_form(lambda))?;
    assert!(group.contains_mu3()?, "closure lost the scalar matrices");
    let expected = aut_order(lambda)?;
    assert_eq!(
        group.order(),
        expected,
        "generator closure disagrees with the j-rule; more generators needed"
    );
    Ok(group.order())
}

/// Convenience for tests and the CLI: lambda values in the zeta12 field.
pub fn lambda_in(spec: &Arc<NumberFieldSpec>, n: i64) -> NumberFieldElement {
    NumberFieldElement::from_int(spec, n)
}
