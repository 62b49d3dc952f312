//! Exact scalar fields: the rationals and quadratic extensions `Q(sqrt d)`.
//!
//! Every algebra in this crate is generic over [`Scalar`]. The two
//! implementations are [`Rational`] and [`QuadExt`]; the latter carries the
//! nontrivial field automorphism exposed as [`Scalar::conj`].

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use malachite_base::num::arithmetic::traits::{AddMulAssign, Reciprocal, Sign};
use malachite_q::Rational as MRational;
use num_traits::{One, Zero};
use rand::Rng;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalarError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("scalars from different quadratic fields: sqrt({0}) and sqrt({1})")]
    FieldMismatch(i64, i64),
    #[error("{0} is a square in Q, so Q(sqrt {0}) is not a quadratic field")]
    SquareParameter(i64),
    #[error("cannot parse scalar {0:?}")]
    Parse(String),
}

/// Exact field element. Implemented by [`Rational`] and [`QuadExt`].
pub trait Scalar:
    Clone
    + fmt::Debug
    + fmt::Display
    + PartialEq
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
    + Send
    + Sync
    + 'static
{
    fn from_i64(n: i64) -> Self;

    fn from_rational(r: &Rational) -> Self;

    fn inverse(&self) -> Result<Self, ScalarError>;

    /// The field automorphism: identity on `Q`, `sqrt d -> -sqrt d` on `Q(sqrt d)`.
    fn conj(&self) -> Self;

    fn mul_ref(&self, rhs: &Self) -> Self;

    /// `self += a * b`
    fn add_mul(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        *self += &p;
    }

    /// `self -= a * b`
    fn sub_mul(&mut self, a: &Self, b: &Self) {
        let p = a.mul_ref(b);
        *self -= &p;
    }

    fn try_div(&self, rhs: &Self) -> Result<Self, ScalarError> {
        Ok(self.mul_ref(&rhs.inverse()?))
    }

    fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(&Rational::new(num, den))
    }

    fn scaled(&self, k: i64) -> Self {
        self.mul_ref(&Self::from_i64(k))
    }
}

// ---------------------------------------------------------------------------
// Rational

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Rational(MRational);

impl Rational {
    /// `num / den`, reduced. Panics if `den == 0`.
    pub fn new(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Rational(MRational::from_signeds(num, den))
    }

    pub fn from_integer(n: i64) -> Self {
        Rational(MRational::from(n))
    }

    pub fn is_negative(&self) -> bool {
        self.0.sign() == Ordering::Less
    }

    pub fn is_integer(&self) -> bool {
        *self.0.denominator_ref() == 1u32
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self.clone()
        } else {
            self.clone()
        }
    }

    /// Numerator and denominator as decimal strings (denominator positive).
    pub fn parts(&self) -> (String, String) {
        let (n, d) = self.0.to_numerator_and_denominator();
        let sign = if self.is_negative() { "-" } else { "" };
        (format!("{sign}{n}"), d.to_string())
    }

    pub fn inner(&self) -> &MRational {
        &self.0
    }

    pub fn random<R: Rng + ?Sized>(rng: &mut R, height: i64) -> Self {
        let height = height.max(1);
        let num = rng.gen_range(-height..=height);
        let den = rng.gen_range(1..=height);
        Rational::new(num, den)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl FromStr for Rational {
    type Err = ScalarError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let body = compact.strip_prefix('+').unwrap_or(&compact);
        MRational::from_str(body)
            .map(Rational)
            .map_err(|_| ScalarError::Parse(s.to_string()))
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_integer(n)
    }
}

impl Zero for Rational {
    fn zero() -> Self {
        Rational(MRational::from(0u32))
    }
    fn is_zero(&self) -> bool {
        self.0.sign() == Ordering::Equal
    }
}

impl One for Rational {
    fn one() -> Self {
        Rational(MRational::from(1u32))
    }
}

impl Add for Rational {
    type Output = Rational;
    fn add(self, rhs: Rational) -> Rational {
        Rational(self.0 + rhs.0)
    }
}

impl Sub for Rational {
    type Output = Rational;
    fn sub(self, rhs: Rational) -> Rational {
        Rational(self.0 - rhs.0)
    }
}

impl Mul for Rational {
    type Output = Rational;
    fn mul(self, rhs: Rational) -> Rational {
        Rational(self.0 * rhs.0)
    }
}

impl Div for Rational {
    type Output = Rational;
    /// Panics on a zero divisor; use [`Scalar::try_div`] for a checked quotient.
    fn div(self, rhs: Rational) -> Rational {
        assert!(!rhs.is_zero(), "division by zero");
        Rational(self.0 / rhs.0)
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl<'a> AddAssign<&'a Rational> for Rational {
    fn add_assign(&mut self, rhs: &'a Rational) {
        self.0 += &rhs.0;
    }
}

impl<'a> SubAssign<&'a Rational> for Rational {
    fn sub_assign(&mut self, rhs: &'a Rational) {
        self.0 -= &rhs.0;
    }
}

impl<'a> MulAssign<&'a Rational> for Rational {
    fn mul_assign(&mut self, rhs: &'a Rational) {
        self.0 *= &rhs.0;
    }
}

impl Scalar for Rational {
    fn from_i64(n: i64) -> Self {
        Rational::from_integer(n)
    }

    fn from_rational(r: &Rational) -> Self {
        r.clone()
    }

    fn inverse(&self) -> Result<Self, ScalarError> {
        if self.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(Rational((&self.0).reciprocal()))
    }

    fn conj(&self) -> Self {
        self.clone()
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        self.0.add_mul_assign(&a.0, &b.0);
    }

    fn sub_mul(&mut self, a: &Self, b: &Self) {
        self.0 -= &a.0 * &b.0;
    }
}

// ---------------------------------------------------------------------------
// Quadratic extensions

fn is_perfect_square(n: i64) -> bool {
    if n < 0 {
        return false;
    }
    let r = (n as f64).sqrt() as i64;
    (r.saturating_sub(1)..=r + 1).any(|k| k >= 0 && k.checked_mul(k) == Some(n))
}

/// The field `Q(sqrt d)` for a non-square integer `d`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuadField {
    d: i64,
}

impl QuadField {
    pub fn new(d: i64) -> Result<Self, ScalarError> {
        if is_perfect_square(d) {
            return Err(ScalarError::SquareParameter(d));
        }
        Ok(QuadField { d })
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn elem(&self, p: Rational, q: Rational) -> QuadExt {
        QuadExt { p, q, d: self.d }
    }

    /// The generator `delta` with `delta^2 = d`.
    pub fn sqrt_d(&self) -> QuadExt {
        self.elem(Rational::zero(), Rational::one())
    }

    pub fn from_rational(&self, r: &Rational) -> QuadExt {
        self.elem(r.clone(), Rational::zero())
    }

    /// Parses `p`, `r*w`, `p+r*w`, `p-w`, ... where `w` stands for `sqrt d`.
    pub fn parse(&self, s: &str) -> Result<QuadExt, ScalarError> {
        let err = || ScalarError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err());
        }
        let mut terms = Vec::new();
        let mut start = 0;
        let bytes = compact.as_bytes();
        for i in 1..bytes.len() {
            if (bytes[i] == b'+' || bytes[i] == b'-') && bytes[i - 1] != b'/' && bytes[i - 1] != b'*' {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);

        let mut p = Rational::zero();
        let mut q = Rational::zero();
        for term in terms {
            let (sign, body) = match term.as_bytes().first() {
                Some(b'-') => (-1, &term[1..]),
                Some(b'+') => (1, &term[1..]),
                _ => (1, term),
            };
            let signed = |r: Rational| if sign < 0 { -r } else { r };
            if let Some(coef) = body.strip_suffix('w') {
                let coef = coef.strip_suffix('*').unwrap_or(coef);
                let c = if coef.is_empty() {
                    Rational::one()
                } else {
                    coef.parse::<Rational>().map_err(|_| err())?
                };
                q += &signed(c);
            } else {
                let c = body.parse::<Rational>().map_err(|_| err())?;
                p += &signed(c);
            }
        }
        Ok(self.elem(p, q))
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> QuadExt {
        self.elem(Rational::random(rng, height), Rational::random(rng, height))
    }
}

/// `p + q sqrt(d)`. Pure rationals (`q = 0`) are compatible with every
/// field; mixing two genuinely irrational values from different fields panics
/// in the operator impls and is reported as [`ScalarError::FieldMismatch`] by
/// the `checked_*` methods.
#[derive(Clone)]
pub struct QuadExt {
    p: Rational,
    q: Rational,
    d: i64,
}

impl QuadExt {
    pub fn rational_part(&self) -> &Rational {
        &self.p
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.q
    }

    /// The field parameter, or `0` for a value built without a field context.
    pub fn d(&self) -> i64 {
        self.d
    }

    /// `p^2 - d q^2`, the norm down to `Q`.
    pub fn norm_to_base(&self) -> Rational {
        let mut n = self.p.mul_ref(&self.p);
        let dq2 = self.q.mul_ref(&self.q).mul_ref(&Rational::from_integer(self.d));
        n -= &dq2;
        n
    }

    pub fn is_rational(&self) -> bool {
        self.q.is_zero()
    }

    fn join(&self, other: &QuadExt) -> Result<i64, ScalarError> {
        if self.d == other.d || other.d == 0 {
            Ok(self.d)
        } else if self.d == 0 {
            Ok(other.d)
        } else if self.q.is_zero() && other.q.is_zero() {
            Ok(self.d)
        } else {
            Err(ScalarError::FieldMismatch(self.d, other.d))
        }
    }

    fn join_or_panic(&self, other: &QuadExt) -> i64 {
        match self.join(other) {
            Ok(d) => d,
            Err(e) => panic!("{e}"),
        }
    }

    pub fn checked_add(&self, rhs: &QuadExt) -> Result<QuadExt, ScalarError> {
        let d = self.join(rhs)?;
        Ok(QuadExt { p: self.p.clone() + rhs.p.clone(), q: self.q.clone() + rhs.q.clone(), d })
    }

    pub fn checked_sub(&self, rhs: &QuadExt) -> Result<QuadExt, ScalarError> {
        let d = self.join(rhs)?;
        Ok(QuadExt { p: self.p.clone() - rhs.p.clone(), q: self.q.clone() - rhs.q.clone(), d })
    }

    pub fn checked_mul(&self, rhs: &QuadExt) -> Result<QuadExt, ScalarError> {
        let d = self.join(rhs)?;
        Ok(Self::mul_with(self, rhs, d))
    }

    pub fn checked_div(&self, rhs: &QuadExt) -> Result<QuadExt, ScalarError> {
        self.join(rhs)?;
        self.try_div(rhs)
    }

    fn mul_with(a: &QuadExt, b: &QuadExt, d: i64) -> QuadExt {
        let mut p = a.p.mul_ref(&b.p);
        if !a.q.is_zero() && !b.q.is_zero() {
            let qq = a.q.mul_ref(&b.q).mul_ref(&Rational::from_integer(d));
            p += &qq;
        }
        let mut q = a.p.mul_ref(&b.q);
        q.add_mul(&a.q, &b.p);
        QuadExt { p, q, d }
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (w^2 = {})", self.d)
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coef = |q: &Rational| -> String {
            if q.is_one() {
                "w".to_string()
            } else {
                format!("{q}*w")
            }
        };
        if self.q.is_zero() {
            write!(f, "{}", self.p)
        } else if self.p.is_zero() {
            if self.q.is_negative() {
                write!(f, "-{}", coef(&self.q.abs()))
            } else {
                write!(f, "{}", coef(&self.q))
            }
        } else if self.q.is_negative() {
            write!(f, "{}-{}", self.p, coef(&self.q.abs()))
        } else {
            write!(f, "{}+{}", self.p, coef(&self.q))
        }
    }
}

impl PartialEq for QuadExt {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.q == other.q
            && (self.q.is_zero() || self.d == other.d || self.d == 0 || other.d == 0)
    }
}

impl Zero for QuadExt {
    fn zero() -> Self {
        QuadExt { p: Rational::zero(), q: Rational::zero(), d: 0 }
    }
    fn is_zero(&self) -> bool {
        self.p.is_zero() && self.q.is_zero()
    }
}

impl One for QuadExt {
    fn one() -> Self {
        QuadExt { p: Rational::one(), q: Rational::zero(), d: 0 }
    }
}

impl Add for QuadExt {
    type Output = QuadExt;
    fn add(mut self, rhs: QuadExt) -> QuadExt {
        self += &rhs;
        self
    }
}

impl Sub for QuadExt {
    type Output = QuadExt;
    fn sub(mut self, rhs: QuadExt) -> QuadExt {
        self -= &rhs;
        self
    }
}

impl Mul for QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: QuadExt) -> QuadExt {
        self.mul_ref(&rhs)
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { p: -self.p, q: -self.q, d: self.d }
    }
}

impl<'a> AddAssign<&'a QuadExt> for QuadExt {
    fn add_assign(&mut self, rhs: &'a QuadExt) {
        self.d = self.join_or_panic(rhs);
        self.p += &rhs.p;
        self.q += &rhs.q;
    }
}

impl<'a> SubAssign<&'a QuadExt> for QuadExt {
    fn sub_assign(&mut self, rhs: &'a QuadExt) {
        self.d = self.join_or_panic(rhs);
        self.p -= &rhs.p;
        self.q -= &rhs.q;
    }
}

impl<'a> MulAssign<&'a QuadExt> for QuadExt {
    fn mul_assign(&mut self, rhs: &'a QuadExt) {
        *self = self.mul_ref(rhs);
    }
}

impl Scalar for QuadExt {
    fn from_i64(n: i64) -> Self {
        QuadExt { p: Rational::from_integer(n), q: Rational::zero(), d: 0 }
    }

    fn from_rational(r: &Rational) -> Self {
        QuadExt { p: r.clone(), q: Rational::zero(), d: 0 }
    }

    fn inverse(&self) -> Result<Self, ScalarError> {
        let n = self.norm_to_base();
        let inv = n.inverse()?;
        Ok(QuadExt { p: self.p.mul_ref(&inv), q: -self.q.mul_ref(&inv), d: self.d })
    }

    fn conj(&self) -> Self {
        QuadExt { p: self.p.clone(), q: -self.q.clone(), d: self.d }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        let d = self.join_or_panic(rhs);
        Self::mul_with(self, rhs, d)
    }

    fn add_mul(&mut self, a: &Self, b: &Self) {
        if a.is_zero() || b.is_zero() {
            return;
        }
        let d = a.join_or_panic(b);
        self.d = self.join_or_panic(&QuadExt { p: Rational::zero(), q: Rational::zero(), d });
        if a.q.is_zero() && b.q.is_zero() {
            self.p.add_mul(&a.p, &b.p);
            return;
        }
        let prod = Self::mul_with(a, b, d);
        self.p += &prod.p;
        self.q += &prod.q;
    }
}

// ---------------------------------------------------------------------------
// Field contexts

/// A field context: knows how to build, parse and sample its elements.
pub trait ScalarField: Clone + fmt::Debug + Send + Sync {
    type Elem: Scalar;

    fn from_rational(&self, r: &Rational) -> Self::Elem;

    fn parse(&self, s: &str) -> Result<Self::Elem, ScalarError>;

    /// Random element with numerators and denominators bounded by `height`.
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Self::Elem;
}

/// The rational numbers as a [`ScalarField`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RationalField;

impl ScalarField for RationalField {
    type Elem = Rational;

    fn from_rational(&self, r: &Rational) -> Rational {
        r.clone()
    }

    fn parse(&self, s: &str) -> Result<Rational, ScalarError> {
        s.parse()
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> Rational {
        Rational::random(rng, height)
    }
}

impl ScalarField for QuadField {
    type Elem = QuadExt;

    fn from_rational(&self, r: &Rational) -> QuadExt {
        QuadField::from_rational(self, r)
    }

    fn parse(&self, s: &str) -> Result<QuadExt, ScalarError> {
        QuadField::parse(self, s)
    }

    fn sample<R: Rng + ?Sized>(&self, rng: &mut R, height: i64) -> QuadExt {
        self.random(rng, height)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn rational_sum_reduces() {
        assert_eq!(q(1, 2) + q(1, 3), q(5, 6));
        assert_eq!(q(2, -4), q(-1, 2));
        assert_eq!(q(6, 4).to_string(), "3/2");
    }

    #[test]
    fn conjugate_pair_multiplies_to_norm() {
        let f = QuadField::new(2).unwrap();
        let a = f.elem(q(1, 1), q(1, 1));
        let b = f.elem(q(1, 1), q(-1, 1));
        assert_eq!(a.clone() * b, QuadExt::from_i64(-1));
        assert_eq!(a.norm_to_base(), q(-1, 1));
    }

    #[test]
    fn inverse_of_one_plus_sqrt2() {
        // (1 + sqrt2)(x + y sqrt2) = 1  <=>  x + 2y = 1, x + y = 0  =>  x = -1, y = 1
        let f = QuadField::new(2).unwrap();
        let a = f.elem(q(1, 1), q(1, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(inv, f.elem(q(-1, 1), q(1, 1)));
        assert_eq!(a * inv, QuadExt::one());
    }

    #[test]
    fn conjugation_examples() {
        let f = QuadField::new(2).unwrap();
        assert_eq!(f.elem(q(3, 1), q(2, 1)).conj(), f.elem(q(3, 1), q(-2, 1)));
        assert_eq!(QuadExt::from_i64(5).conj(), QuadExt::from_i64(5));
        let delta = f.sqrt_d();
        assert_eq!(delta.conj(), -delta.clone());
        assert_eq!(delta.clone() * delta, QuadExt::from_i64(2));
    }

    #[test]
    fn norm_to_base_examples() {
        let f = QuadField::new(2).unwrap();
        assert_eq!(f.elem(q(1, 1), q(1, 1)).norm_to_base(), q(-1, 1));
        assert_eq!(f.sqrt_d().norm_to_base(), q(-2, 1));
        assert_eq!(QuadExt::zero().norm_to_base(), Rational::zero());
    }

    #[test]
    fn division_by_zero_is_an_error() {
        assert_eq!(Rational::zero().inverse(), Err(ScalarError::DivisionByZero));
        assert_eq!(QuadExt::zero().inverse(), Err(ScalarError::DivisionByZero));
        assert!(q(1, 2).try_div(&Rational::zero()).is_err());
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let a = QuadField::new(2).unwrap().sqrt_d();
        let b = QuadField::new(3).unwrap().sqrt_d();
        assert_eq!(a.checked_mul(&b), Err(ScalarError::FieldMismatch(2, 3)));
        assert_eq!(a.checked_add(&b), Err(ScalarError::FieldMismatch(2, 3)));
        // rationals mix with anything
        assert!(a.checked_add(&QuadExt::from_i64(4)).is_ok());
    }

    #[test]
    fn square_parameters_are_rejected() {
        for d in [0, 1, 4, 9, 144] {
            assert_eq!(QuadField::new(d), Err(ScalarError::SquareParameter(d)));
        }
        for d in [2, 3, -1, -4, 5, 12] {
            assert!(QuadField::new(d).is_ok());
        }
    }

    #[test]
    fn text_forms() {
        let f = QuadField::new(5).unwrap();
        assert_eq!(" 1 / 2 ".parse::<Rational>().unwrap(), q(1, 2));
        assert_eq!("+3".parse::<Rational>().unwrap(), q(3, 1));
        assert!("1/0".parse::<Rational>().is_err());
        assert_eq!(f.parse("1/2+3/4*w").unwrap(), f.elem(q(1, 2), q(3, 4)));
        assert_eq!(f.parse("-w").unwrap(), f.elem(q(0, 1), q(-1, 1)));
        assert_eq!(f.parse("2 - 1/3 * w").unwrap(), f.elem(q(2, 1), q(-1, 3)));
        assert_eq!(f.parse("-1/2").unwrap(), f.from_rational(&q(-1, 2)));
        assert!(f.parse("2+").is_err());
        assert!(f.parse("x").is_err());
        for s in ["1/2+3/4*w", "-w", "w", "7", "-2/3-5*w"] {
            assert_eq!(f.parse(s).unwrap().to_string(), s);
        }
    }

    fn arb_rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n, d))
    }

    fn arb_quad(d: i64) -> impl Strategy<Value = QuadExt> {
        let f = QuadField::new(d).unwrap();
        (arb_rational(), arb_rational()).prop_map(move |(p, q)| f.elem(p, q))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn rational_field_axioms(a in arb_rational(), b in arb_rational(), c in arb_rational()) {
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            if !a.is_zero() {
                prop_assert_eq!(a.inverse().unwrap() * a.clone(), Rational::one());
            }
        }

        #[test]
        fn quad_field_axioms(a in arb_quad(2), b in arb_quad(2), c in arb_quad(2)) {
            prop_assert_eq!(a.clone() + b.clone(), b.clone() + a.clone());
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            if !a.is_zero() {
                prop_assert_eq!(a.inverse().unwrap() * a.clone(), QuadExt::one());
            }
        }

        #[test]
        fn conjugation_is_an_involutive_automorphism(a in arb_quad(-1), b in arb_quad(-1)) {
            prop_assert_eq!(a.conj().conj(), a.clone());
            prop_assert_eq!((a.clone() * b.clone()).conj(), a.conj() * b.conj());
            prop_assert_eq!((a.clone() + b.clone()).conj(), a.conj() + b.conj());
        }

        #[test]
        fn norm_vanishes_only_at_zero(a in arb_quad(3)) {
            prop_assert_eq!(a.norm_to_base().is_zero(), a.is_zero());
            prop_assert_eq!(QuadExt::from_rational(&a.norm_to_base()), a.clone() * a.conj());
        }

        #[test]
        fn text_round_trip(a in arb_quad(7)) {
            let f = QuadField::new(7).unwrap();
            prop_assert_eq!(f.parse(&a.to_string()).unwrap(), a);
        }
    }
}
