//! Exact arithmetic in number fields presented as Q[t]/(m(t)).
//!
//! A [`NumberFieldSpec`] fixes a monic modulus m(t); elements are coefficient
//! vectors of length deg m, always reduced modulo m. Irreducibility of the
//! modulus is asserted by the caller: a reducible modulus surfaces as
//! [`Error::NotInvertible`] the first time a zero divisor is inverted.
//!
//! Presets cover everything the geometry needs: Q itself, Q(omega) for the
//! cube roots of unity, Q(zeta12) which contains both omega and sqrt(3), and
//! an on-demand sextic compositum Q(omega, cbrt(r)) for a rational r that is
//! not a perfect cube.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rational::{rat, rational_cbrt, rational_to_string, Rational};

#[derive(Debug, Clone)]
pub struct NumberFieldSpec {
    /// Coefficients of the monic modulus, constant term first, leading 1 included.
    modulus: Vec<Rational>,
    label: String,
    /// Coefficient vector of a primitive cube root of unity, when the field has one.
    omega: Option<Vec<Rational>>,
    /// Coefficient vector of sqrt(3), when the field has one.
    sqrt3: Option<Vec<Rational>>,
    /// Registered radicals: (r, x) with x^3 = r, for cube roots adjoined on purpose.
    cube_roots: Vec<(Rational, Vec<Rational>)>,
}

impl PartialEq for NumberFieldSpec {
    fn eq(&self, other: &Self) -> bool {
        self.label == other.label && self.modulus == other.modulus
    }
}
impl Eq for NumberFieldSpec {}

impl NumberFieldSpec {
    /// Q as the degenerate extension Q[t]/(t - 1).
    pub fn rationals() -> Arc<Self> {
        Arc::new(Self {
            modulus: vec![rat(-1), rat(1)],
            label: "Q".into(),
            omega: None,
            sqrt3: None,
            cube_roots: vec![],
        })
    }

    /// Q(omega) = Q[t]/(t^2 + t + 1), omega = t.
    pub fn cyclotomic3() -> Arc<Self> {
        Arc::new(Self {
            modulus: vec![rat(1), rat(1), rat(1)],
            label: "Q(zeta3)".into(),
            omega: Some(vec![rat(0), rat(1)]),
            sqrt3: None,
            cube_roots: vec![],
        })
    }

    /// Q(zeta12) = Q[t]/(t^4 - t^2 + 1); omega = zeta12^4 = t^2 - 1 and
    /// sqrt(3) = zeta12 + zeta12^{-1} = 2t - t^3.
    pub fn cyclotomic12() -> Arc<Self> {
        Arc::new(Self {
            modulus: vec![rat(1), rat(0), rat(-1), rat(0), rat(1)],
            label: "Q(zeta12)".into(),
            omega: Some(vec![rat(-1), rat(0), rat(1), rat(0)]),
            sqrt3: Some(vec![rat(0), rat(2), rat(0), rat(-1)]),
            cube_roots: vec![],
        })
    }

    /// The sextic compositum Q(omega, cbrt(r)) for a rational r that is not a
    /// perfect cube, generated by theta = omega + cbrt(r).
    ///
    /// Writing s = 1 + r, theta satisfies the monic sextic
    /// t^6 + 3t^5 + 6t^4 + (9-2s)t^3 + (9-3s)t^2 + 3s t + s^2,
    /// inside which omega = (t^3 - 3t - s) / (3t^2 + 3t) and cbrt(r) = t - omega.
    /// The constructed omega and radical are re-verified before returning.
    pub fn omega_cbrt(r: &Rational) -> Result<Arc<Self>> {
        debug_assert!(
            rational_cbrt(r).is_none(),
            "radicand must not be a perfect cube"
        );
        let s = rat(1) + r;
        let modulus = vec![
            &s * &s,
            rat(3) * &s,
            rat(9) - rat(3) * &s,
            rat(9) - rat(2) * &s,
            rat(6),
            rat(3),
            rat(1),
        ];
        let label = format!("Q(zeta3,cbrt({}))", rational_to_string(r));
        let bare = Arc::new(Self {
            modulus,
            label,
            omega: None,
            sqrt3: None,
            cube_roots: vec![],
        });
        let theta = NumberFieldElement::generator(&bare);
        let numer = theta.pow(3) - theta.scale(&rat(3)) - NumberFieldElement::from_rational(&bare, s);
        let denom = theta.pow(2).scale(&rat(3)) + theta.scale(&rat(3));
        let omega = (numer * denom.inv()?).coefficients().to_vec();
        let delta: Vec<Rational> = theta
            .coefficients()
            .iter()
            .zip(&omega)
            .map(|(a, b)| a - b)
            .collect();
        let spec = Arc::new(Self {
            modulus: bare.modulus.clone(),
            label: bare.label.clone(),
            omega: Some(omega),
            sqrt3: None,
            cube_roots: vec![(r.clone(), delta)],
        });
        let w = spec.omega()?;
        if !(w.pow(2) + w.clone() + NumberFieldElement::one(&spec)).is_zero() {
            return Err(Error::NotInvertible);
        }
        let d = spec.cube_root_of(r).expect("registered radical");
        if d.pow(3) != NumberFieldElement::from_rational(&spec, r.clone()) {
            return Err(Error::NotInvertible);
        }
        Ok(spec)
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn modulus(&self) -> &[Rational] {
        &self.modulus
    }

    pub fn has_omega(&self) -> bool {
        self.omega.is_some()
    }

    /// Rational values whose cube roots were adjoined to this field.
    pub fn cube_root_values(&self) -> Vec<Rational> {
        self.cube_roots.iter().map(|(r, _)| r.clone()).collect()
    }
}

/// Methods that hand out distinguished elements need the Arc, not the bare spec.
pub trait FieldElements {
    fn omega(&self) -> Result<NumberFieldElement>;
    fn sqrt3(&self) -> Result<NumberFieldElement>;
    fn third_roots_of_unity(&self) -> Result<[NumberFieldElement; 3]>;
    fn cube_root_of(&self, r: &Rational) -> Option<NumberFieldElement>;
}

impl FieldElements for Arc<NumberFieldSpec> {
    fn omega(&self) -> Result<NumberFieldElement> {
        match &self.omega {
            Some(c) => Ok(NumberFieldElement::new(self, c.clone())),
            None => Err(Error::FieldTooSmall(format!(
                "{} has no cube root of unity",
                self.label
            ))),
        }
    }

    fn sqrt3(&self) -> Result<NumberFieldElement> {
        match &self.sqrt3 {
            Some(c) => Ok(NumberFieldElement::new(self, c.clone())),
            None => Err(Error::FieldTooSmall(format!(
                "{} has no square root of 3",
                self.label
            ))),
        }
    }

    fn third_roots_of_unity(&self) -> Result<[NumberFieldElement; 3]> {
        let w = self.omega()?;
        Ok([NumberFieldElement::one(self), w.clone(), w.pow(2)])
    }

    fn cube_root_of(&self, r: &Rational) -> Option<NumberFieldElement> {
        self.cube_roots
            .iter()
            .find(|(value, _)| value == r)
            .map(|(_, c)| NumberFieldElement::new(self, c.clone()))
    }
}

/// An element of Q[t]/(m(t)): deg m rational coefficients of 1, t, .., t^{n-1}.
#[derive(Debug, Clone)]
pub struct NumberFieldElement {
    spec: Arc<NumberFieldSpec>,
    coeffs: Vec<Rational>,
}

impl NumberFieldElement {
    pub fn new(spec: &Arc<NumberFieldSpec>, mut coeffs: Vec<Rational>) -> Self {
        assert_eq!(coeffs.len(), spec.degree(), "coefficient count != degree");
        // length is already right; nothing to reduce
        coeffs.shrink_to_fit();
        Self {
            spec: Arc::clone(spec),
            coeffs,
        }
    }

    /// Reduces an arbitrary-length coefficient vector modulo the modulus.
    pub fn from_polynomial(spec: &Arc<NumberFieldSpec>, mut poly: Vec<Rational>) -> Self {
        let n = spec.degree();
        let m = &spec.modulus();
        while poly.len() > n {
            let lead = poly.pop().unwrap();
            if lead.is_zero() {
                continue;
            }
            let k = poly.len() - n; // reduce t^{n+k} = -sum m_i t^{i+k}
            for i in 0..n {
                let delta = &lead * &m[i];
                poly[k + i] -= delta;
            }
        }
        poly.resize(n, Rational::zero());
        Self::new(spec, poly)
    }

    pub fn zero(spec: &Arc<NumberFieldSpec>) -> Self {
        Self::new(spec, vec![Rational::zero(); spec.degree()])
    }

    pub fn one(spec: &Arc<NumberFieldSpec>) -> Self {
        Self::from_rational(spec, rat(1))
    }

    pub fn from_rational(spec: &Arc<NumberFieldSpec>, x: Rational) -> Self {
        let mut coeffs = vec![Rational::zero(); spec.degree()];
        coeffs[0] = x;
        Self::new(spec, coeffs)
    }

    pub fn from_int(spec: &Arc<NumberFieldSpec>, x: i64) -> Self {
        Self::from_rational(spec, rat(x))
    }

    /// The residue class of t itself.
    pub fn generator(spec: &Arc<NumberFieldSpec>) -> Self {
        if spec.degree() == 1 {
            // t = 1 in Q[t]/(t - 1)
            return Self::one(spec);
        }
        let mut coeffs = vec![Rational::zero(); spec.degree()];
        coeffs[1] = Rational::one();
        Self::new(spec, coeffs)
    }

    pub fn spec(&self) -> &Arc<NumberFieldSpec> {
        &self.spec
    }

    pub fn coefficients(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Rational::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Rational::is_zero)
    }

    /// The rational value, if the element is a constant.
    pub fn as_rational(&self) -> Option<Rational> {
        if self.coeffs[1..].iter().all(Rational::is_zero) {
            Some(self.coeffs[0].clone())
        } else {
            None
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::new(
            &self.spec,
            self.coeffs.iter().map(|x| x * c).collect(),
        )
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(&self.spec);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm in Q[t].
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        // Maintain r = a*self + b*m while running Euclid on (self, m); b is not needed.
        let mut r0 = trim(self.coeffs.clone());
        let mut r1 = trim(self.spec.modulus().to_vec());
        let mut a0 = vec![Rational::one()];
        let mut a1 = vec![Rational::zero()];
        while !r1.is_empty() {
            let (q, rem) = poly_divmod(&r0, &r1);
            let next_a = poly_sub(&a0, &poly_mul(&q, &a1));
            r0 = r1;
            r1 = rem;
            a0 = a1;
            a1 = next_a;
        }
        if r0.len() != 1 {
            return Err(Error::NotInvertible);
        }
        let scale = r0[0].recip();
        let coeffs = a0.into_iter().map(|c| c * &scale).collect();
        Ok(Self::from_polynomial(&self.spec, coeffs))
    }

    fn assert_same_spec(&self, other: &Self) {
        assert!(
            Arc::ptr_eq(&self.spec, &other.spec) || self.spec == other.spec,
            "mixed number field specs: {} vs {}",
            self.spec.label(),
            other.spec.label()
        );
    }
}

fn trim(mut v: Vec<Rational>) -> Vec<Rational> {
    while v.last().is_some_and(Rational::is_zero) {
        v.pop();
    }
    v
}

fn poly_mul(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![Rational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    trim(out)
}

fn poly_sub(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); a.len().max(b.len())];
    for (i, x) in a.iter().enumerate() {
        out[i] += x;
    }
    for (i, y) in b.iter().enumerate() {
        out[i] -= y;
    }
    trim(out)
}

/// Division with remainder in Q[t]; the divisor need not be monic.
fn poly_divmod(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let mut rem = a.to_vec();
    if rem.len() < b.len() {
        return (vec![], trim(rem));
    }
    let mut quot = vec![Rational::zero(); rem.len() - b.len() + 1];
    let lead = b.last().unwrap();
    for k in (0..quot.len()).rev() {
        let top = rem[k + b.len() - 1].clone();
        if top.is_zero() {
            continue;
        }
        let q = top / lead;
        for (i, c) in b.iter().enumerate() {
            let delta = &q * c;
            rem[k + i] -= delta;
        }
        quot[k] = q;
    }
    (trim(quot), trim(rem))
}

impl PartialEq for NumberFieldElement {
    fn eq(&self, other: &Self) -> bool {
        self.spec == other.spec && self.coeffs == other.coeffs
    }
}
impl Eq for NumberFieldElement {}

impl Hash for NumberFieldElement {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.spec.label().hash(state);
        for c in &self.coeffs {
            c.numer().hash(state);
            c.denom().hash(state);
        }
    }
}

impl PartialOrd for NumberFieldElement {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on coefficient vectors; an arbitrary but stable total order
/// used for canonical sorting of planes and group elements.
impl Ord for NumberFieldElement {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.coeffs.cmp(&other.coeffs)
    }
}

impl fmt::Display for NumberFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use num_traits::Signed;
        let mut out = String::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match i {
                0 => rational_to_string(&mag),
                1 if mag.is_one() => "t".into(),
                1 => format!("{}*t", rational_to_string(&mag)),
                _ if mag.is_one() => format!("t^{i}"),
                _ => format!("{}*t^{i}", rational_to_string(&mag)),
            };
            if out.is_empty() {
                if c.is_negative() {
                    out.push('-');
                }
            } else {
                out.push_str(if c.is_negative() { " - " } else { " + " });
            }
            out.push_str(&body);
        }
        if out.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{out}")
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $imp:expr) => {
        impl std::ops::$trait for &NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: &NumberFieldElement) -> NumberFieldElement {
                self.assert_same_spec(rhs);
                #[allow(clippy::redundant_closure_call)]
                ($imp)(self, rhs)
            }
        }
        impl std::ops::$trait for NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: NumberFieldElement) -> NumberFieldElement {
                std::ops::$trait::$method(&self, &rhs)
            }
        }
        impl std::ops::$trait<&NumberFieldElement> for NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: &NumberFieldElement) -> NumberFieldElement {
                std::ops::$trait::$method(&self, rhs)
            }
        }
        impl std::ops::$trait<NumberFieldElement> for &NumberFieldElement {
            type Output = NumberFieldElement;
            fn $method(self, rhs: NumberFieldElement) -> NumberFieldElement {
                std::ops::$trait::$method(self, &rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a: &NumberFieldElement, b: &NumberFieldElement| {
    NumberFieldElement::new(
        &a.spec,
        a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x + y).collect(),
    )
});

forward_binop!(Sub, sub, |a: &NumberFieldElement, b: &NumberFieldElement| {
    NumberFieldElement::new(
        &a.spec,
        a.coeffs.iter().zip(&b.coeffs).map(|(x, y)| x - y).collect(),
    )
});

forward_binop!(Mul, mul, |a: &NumberFieldElement, b: &NumberFieldElement| {
    NumberFieldElement::from_polynomial(&a.spec, poly_mul(&a.coeffs, &b.coeffs))
});

impl std::ops::Neg for &NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        NumberFieldElement::new(&self.spec, self.coeffs.iter().map(|x| -x).collect())
    }
}
impl std::ops::Neg for NumberFieldElement {
    type Output = NumberFieldElement;
    fn neg(self) -> NumberFieldElement {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat_frac;

    #[test]
    fn inv_of_one_is_one() {
        for spec in [
            NumberFieldSpec::rationals(),
            NumberFieldSpec::cyclotomic3(),
            NumberFieldSpec::cyclotomic12(),
        ] {
            let one = NumberFieldElement::one(&spec);
            assert_eq!(one.inv().unwrap(), one);
        }
    }

    #[test]
    fn omega_inverse_is_minus_one_minus_omega() {
        let spec = NumberFieldSpec::cyclotomic3();
        let w = spec.omega().unwrap();
        let expected = -(NumberFieldElement::one(&spec) + w.clone());
        assert_eq!(w.inv().unwrap(), expected);
        assert_eq!(w.pow(3), NumberFieldElement::one(&spec));
    }

    #[test]
    fn one_plus_sqrt3_inverse() {
        let spec = NumberFieldSpec::cyclotomic12();
        let x = NumberFieldElement::one(&spec) + spec.sqrt3().unwrap();
        let inv = x.inv().unwrap();
        // (sqrt3 - 1)/2
        let expected = (spec.sqrt3().unwrap() - NumberFieldElement::one(&spec))
            .scale(&rat_frac(1, 2));
        assert_eq!(inv, expected);
        assert!((x * inv).is_one());
    }

    #[test]
    fn zero_inverse_rejected() {
        let spec = NumberFieldSpec::cyclotomic3();
        assert!(matches!(
            NumberFieldElement::zero(&spec).inv(),
            Err(Error::ZeroInverse)
        ));
    }

    #[test]
    fn reducible_modulus_surfaces_as_not_invertible() {
        // t^2 - 1 factors; t - 1 is a zero divisor
        let spec = Arc::new(NumberFieldSpec {
            modulus: vec![rat(-1), rat(0), rat(1)],
            label: "Q[t]/(t^2-1)".into(),
            omega: None,
            sqrt3: None,
            cube_roots: vec![],
        });
        let x = NumberFieldElement::generator(&spec) - NumberFieldElement::one(&spec);
        assert!(matches!(x.inv(), Err(Error::NotInvertible)));
    }

    #[test]
    fn zeta12_houses_omega_and_sqrt3() {
        let spec = NumberFieldSpec::cyclotomic12();
        let w = spec.omega().unwrap();
        let one = NumberFieldElement::one(&spec);
        assert!((w.pow(2) + w.clone() + one.clone()).is_zero());
        let s = spec.sqrt3().unwrap();
        assert_eq!(s.pow(2), NumberFieldElement::from_int(&spec, 3));
        // sqrt(-3) = 2*omega + 1
        let sqrt_m3 = w.scale(&rat(2)) + one;
        assert_eq!(sqrt_m3.pow(2), NumberFieldElement::from_int(&spec, -3));
    }

    #[test]
    fn compositum_contains_cube_root() {
        let r = rat_frac(26, 7);
        let spec = NumberFieldSpec::omega_cbrt(&r).unwrap();
        assert_eq!(spec.degree(), 6);
        let g = spec.cube_root_of(&r).unwrap();
        assert_eq!(g.pow(3), NumberFieldElement::from_rational(&spec, r));
        let w = spec.omega().unwrap();
        assert!((w.pow(2) + w + NumberFieldElement::one(&spec)).is_zero());
    }

    #[test]
    fn rationals_preset_collapses_generator() {
        let spec = NumberFieldSpec::rationals();
        let t = NumberFieldElement::generator(&spec);
        assert!(t.is_one());
    }
}
