//! Exact arithmetic in the real quadratic field Q(√2).
//!
//! A [`Scalar`] is the real number `a + b·√2` with `a, b` arbitrary-precision
//! rationals. Every predicate used elsewhere in the crate (orthogonality,
//! causal class, subgroup membership) reduces to [`Scalar::signum`], which is
//! decided without floating point.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational in canonical form (positive denominator, reduced).
pub type Rational = BigRational;

/// The real number `a + b·√2`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Scalar {
    a: Rational,
    b: Rational,
}

/// The four field operations, for callers that select one at run time.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn rational(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

fn rational_sqrt(r: &Rational) -> Option<Rational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().sqrt();
    let d = r.denom().sqrt();
    if &(&n * &n) == r.numer() && &(&d * &d) == r.denom() {
        Some(Rational::new(n, d))
    } else {
        None
    }
}

impl Scalar {
    pub fn new(a: Rational, b: Rational) -> Self {
        Scalar { a, b }
    }

    pub fn zero() -> Self {
        Scalar::default()
    }

    pub fn one() -> Self {
        Scalar::int(1)
    }

    pub fn int(n: i64) -> Self {
        Scalar::from_rational(Rational::from_integer(BigInt::from(n)))
    }

    /// `num/den`; panics if `den == 0`.
    pub fn frac(num: i64, den: i64) -> Self {
        Scalar::from_rational(rational(num, den))
    }

    pub fn from_rational(a: Rational) -> Self {
        Scalar { a, b: Rational::zero() }
    }

    /// `√2`.
    pub fn sqrt2() -> Self {
        Scalar { a: Rational::zero(), b: Rational::one() }
    }

    /// Rational part `a`.
    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    /// Coefficient `b` of `√2`.
    pub fn sqrt2_part(&self) -> &Rational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.a.is_one() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// True when the value is an integer (in particular rational).
    pub fn is_integer(&self) -> bool {
        self.b.is_zero() && self.a.is_integer()
    }

    /// Exact sign of `a + b√2`: -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        if sa == 0 {
            return sb;
        }
        if sb == 0 || sa == sb {
            return sa;
        }
        // Opposite signs: the term with the larger square dominates.
        let a2 = &self.a * &self.a;
        let two_b2 = &self.b * &self.b * rational(2, 1);
        match a2.cmp(&two_b2) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => unreachable!("sqrt(2) is irrational"),
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Scalar {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Galois conjugate `a - b√2`.
    pub fn conjugate(&self) -> Scalar {
        Scalar { a: self.a.clone(), b: -&self.b }
    }

    /// Field norm `a² - 2b²`.
    pub fn norm(&self) -> Rational {
        &self.a * &self.a - &self.b * &self.b * rational(2, 1)
    }

    pub fn square(&self) -> Scalar {
        self * self
    }

    pub fn recip(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let n = self.norm();
        Ok(Scalar { a: &self.a / &n, b: -(&self.b / &n) })
    }

    pub fn checked_div(&self, rhs: &Scalar) -> Result<Scalar> {
        Ok(self * &rhs.recip()?)
    }

    /// Applies one of the four field operations; division by zero is an error.
    pub fn arith(&self, rhs: &Scalar, op: ArithOp) -> Result<Scalar> {
        Ok(match op {
            ArithOp::Add => self + rhs,
            ArithOp::Sub => self - rhs,
            ArithOp::Mul => self * rhs,
            ArithOp::Div => self.checked_div(rhs)?,
        })
    }

    /// Non-negative square root, when it exists inside Q(√2).
    pub fn sqrt_exact(&self) -> Option<Scalar> {
        match self.signum() {
            -1 => return None,
            0 => return Some(Scalar::zero()),
            _ => {}
        }
        if self.b.is_zero() {
            if let Some(r) = rational_sqrt(&self.a) {
                return Some(Scalar::from_rational(r));
            }
            return rational_sqrt(&(&self.a / rational(2, 1)))
                .map(|q| Scalar { a: Rational::zero(), b: q });
        }
        // (p + q√2)² = p² + 2q² + 2pq√2, so p² solves 2p⁴ - 2a·p² + b² = 0.
        let disc = rational_sqrt(&self.norm())?;
        let half = rational(1, 2);
        for p2 in [(&self.a + &disc) * &half, (&self.a - &disc) * &half] {
            let Some(p) = rational_sqrt(&p2) else { continue };
            if p.is_zero() {
                continue;
            }
            let q = &self.b / (&p * rational(2, 1));
            let root = Scalar { a: p, b: q };
            if &root.square() == self {
                return Some(root.abs());
            }
        }
        None
    }

    /// Floating-point approximation. Only for cross-check oracles and display.
    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN)
            + self.b.to_f64().unwrap_or(f64::NAN) * std::f64::consts::SQRT_2
    }

    pub fn min(self, other: Scalar) -> Scalar {
        if self <= other {
            self
        } else {
            other
        }
    }

    pub fn max(self, other: Scalar) -> Scalar {
        if self >= other {
            self
        } else {
            other
        }
    }
}

fn sign_of(r: &Rational) -> i32 {
    if r.is_positive() {
        1
    } else if r.is_negative() {
        -1
    } else {
        0
    }
}

impl PartialOrd for Scalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Scalar {
    fn cmp(&self, other: &Self) -> Ordering {
        (self - other).signum().cmp(&0)
    }
}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::int(n)
    }
}

impl From<Rational> for Scalar {
    fn from(r: Rational) -> Self {
        Scalar::from_rational(r)
    }
}

macro_rules! forward_binop {
    ($Trait:ident, $method:ident, $body:expr) => {
        impl<'a> $Trait<&'a Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                let f: fn(&Scalar, &Scalar) -> Scalar = $body;
                f(self, rhs)
            }
        }
        impl $Trait<Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $Trait<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &'a Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
        impl<'a> $Trait<Scalar> for &'a Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| Scalar { a: &x.a + &y.a, b: &x.b + &y.b });
forward_binop!(Sub, sub, |x, y| Scalar { a: &x.a - &y.a, b: &x.b - &y.b });
forward_binop!(Mul, mul, |x, y| Scalar {
    a: &x.a * &y.a + &x.b * &y.b * rational(2, 1),
    b: &x.a * &y.b + &x.b * &y.a,
});
// Panics on a zero divisor, like `BigRational`; use `checked_div` to get an error.
forward_binop!(Div, div, |x, y| x
    .checked_div(y)
    .expect("division of Scalar by zero"));

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -self.a, b: -self.b }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar { a: -&self.a, b: -&self.b }
    }
}

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

impl std::iter::Sum for Scalar {
    fn sum<I: Iterator<Item = Scalar>>(iter: I) -> Scalar {
        iter.fold(Scalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Literal syntax: `R`, `R + R*r2` or `R - R*r2`.
impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return f.write_str(&fmt_rational(&self.a));
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*r2", fmt_rational(&self.a), sign, fmt_rational(&self.b.abs()))
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cursor over literal text shared by every text format in the crate.
pub(crate) struct Lexer<'s> {
    src: &'s [u8],
    pos: usize,
}

impl<'s> Lexer<'s> {
    pub(crate) fn new(src: &'s str) -> Self {
        Lexer { src: src.as_bytes(), pos: 0 }
    }

    pub(crate) fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    pub(crate) fn at_end(&mut self) -> bool {
        self.skip_ws();
        self.pos >= self.src.len()
    }

    pub(crate) fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    pub(crate) fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    pub(crate) fn expect(&mut self, c: u8) -> Result<()> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(Error::Parse(format!(
                "expected `{}` at offset {}",
                c as char, self.pos
            )))
        }
    }

    fn digits(&mut self) -> Option<&'s str> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        (self.pos > start).then(|| std::str::from_utf8(&self.src[start..self.pos]).unwrap())
    }

    /// `[-]digits[/digits]`
    fn rational(&mut self) -> Option<Rational> {
        let save = self.pos;
        let neg = self.eat(b'-');
        self.skip_ws();
        let Some(num) = self.digits() else {
            self.pos = save;
            return None;
        };
        let mut num: BigInt = num.parse().unwrap();
        if neg {
            num = -num;
        }
        let den = if self.eat(b'/') {
            self.skip_ws();
            match self.digits() {
                Some(d) => d.parse::<BigInt>().unwrap(),
                None => {
                    self.pos = save;
                    return None;
                }
            }
        } else {
            BigInt::one()
        };
        if den.is_zero() {
            self.pos = save;
            return None;
        }
        Some(Rational::new(num, den))
    }

    fn eat_r2(&mut self) -> bool {
        let save = self.pos;
        if self.eat(b'*') && self.eat(b'r') && self.src.get(self.pos) == Some(&b'2') {
            self.pos += 1;
            true
        } else {
            self.pos = save;
            false
        }
    }

    /// Parses one Scalar literal; an isolated `R*r2` is also accepted.
    pub(crate) fn scalar(&mut self) -> Result<Scalar> {
        let start = self.pos;
        let first = self.rational().ok_or_else(|| {
            Error::Parse(format!("expected scalar literal at offset {start}"))
        })?;
        if self.eat_r2() {
            return Ok(Scalar { a: Rational::zero(), b: first });
        }
        let save = self.pos;
        let sign = match self.peek() {
            Some(b'+') => 1,
            Some(b'-') => -1,
            _ => return Ok(Scalar::from_rational(first)),
        };
        self.pos += 1;
        self.skip_ws();
        if self.peek() == Some(b'-') {
            self.pos = save;
            return Ok(Scalar::from_rational(first));
        }
        match self.rational() {
            Some(r) if self.eat_r2() => {
                let b = if sign < 0 { -r } else { r };
                Ok(Scalar { a: first, b })
            }
            _ => {
                self.pos = save;
                Ok(Scalar::from_rational(first))
            }
        }
    }

    /// The unconsumed remainder.
    pub(crate) fn rest(&mut self) -> &'s str {
        self.skip_ws();
        std::str::from_utf8(&self.src[self.pos..]).unwrap()
    }
}

impl FromStr for Scalar {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut lx = Lexer::new(s);
        let v = lx.scalar()?;
        if !lx.at_end() {
            return Err(Error::Parse(format!("trailing input in scalar literal `{s}`")));
        }
        Ok(v)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(text: &str) -> Scalar {
        text.parse().unwrap()
    }

    #[test]
    fn arithmetic_examples() {
        assert_eq!(Scalar::one() + Scalar::sqrt2(), s("1 + 1*r2"));
        assert_eq!(Scalar::sqrt2() * Scalar::sqrt2(), Scalar::int(2));
        assert_eq!(s("1 + 1*r2").recip().unwrap(), s("-1 + 1*r2"));
        assert_eq!(Scalar::one().checked_div(&Scalar::zero()), Err(Error::DivisionByZero));
        assert_eq!(
            Scalar::one().arith(&Scalar::zero(), ArithOp::Div),
            Err(Error::DivisionByZero)
        );
        assert_eq!(
            Scalar::int(3).arith(&Scalar::sqrt2(), ArithOp::Sub).unwrap(),
            s("3 - 1*r2")
        );
    }

    #[test]
    fn sign_examples() {
        assert_eq!(Scalar::zero().signum(), 0);
        assert_eq!(s("1 - 1*r2").signum(), -1);
        assert_eq!(s("3 - 2*r2").signum(), 1);
        assert_eq!(s("-3 + 2*r2").signum(), -1);
        assert_eq!(s("-1 + 1*r2").signum(), 1);
    }

    #[test]
    fn rationality() {
        assert!(s("5/3").is_rational());
        assert!(!Scalar::sqrt2().is_rational());
        assert!(!s("1/2 - 3*r2").is_rational());
    }

    #[test]
    fn literal_grammar() {
        assert_eq!(s("3/4 - 1/2*r2"), Scalar::new(rational(3, 4), rational(-1, 2)));
        assert_eq!(s(" -7 "), Scalar::int(-7));
        assert_eq!(s("2*r2"), Scalar::int(2) * Scalar::sqrt2());
        assert_eq!(s("6/4"), Scalar::frac(3, 2));
        assert!("1/0".parse::<Scalar>().is_err());
        assert!("abc".parse::<Scalar>().is_err());
        assert!("1 + 2".parse::<Scalar>().is_err());
        assert_eq!(s("3/4 - 1/2*r2").to_string(), "3/4 - 1/2*r2");
        assert_eq!(Scalar::sqrt2().to_string(), "0 + 1*r2");
    }

    #[test]
    fn exact_square_roots() {
        assert_eq!(s("9/4").sqrt_exact(), Some(Scalar::frac(3, 2)));
        assert_eq!(Scalar::int(2).sqrt_exact(), Some(Scalar::sqrt2()));
        assert_eq!(Scalar::int(8).sqrt_exact(), Some(s("2*r2")));
        assert_eq!(s("3 + 2*r2").sqrt_exact(), Some(s("1 + 1*r2")));
        assert_eq!(s("3 - 2*r2").sqrt_exact(), Some(s("-1 + 1*r2")));
        assert_eq!(Scalar::int(3).sqrt_exact(), None);
        assert_eq!(Scalar::int(-4).sqrt_exact(), None);
        assert_eq!(Scalar::sqrt2().sqrt_exact(), None);
    }

    fn small_scalar() -> impl Strategy<Value = Scalar> {
        (-40i64..40, 1i64..12, -40i64..40, 1i64..12)
            .prop_map(|(an, ad, bn, bd)| Scalar::new(rational(an, ad), rational(bn, bd)))
    }

    proptest! {
        #[test]
        fn field_axioms(x in small_scalar(), y in small_scalar(), z in small_scalar()) {
            prop_assert_eq!(&(&x + &y) + &z, &x + &(&y + &z));
            prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
            prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
            prop_assert_eq!(&x * &y, &y * &x);
            if !x.is_zero() {
                prop_assert_eq!(&x * &x.recip().unwrap(), Scalar::one());
            }
        }

        #[test]
        fn sign_matches_float(x in small_scalar()) {
            let f = x.to_f64();
            if f.abs() > 1e-9 {
                prop_assert_eq!(x.signum(), if f > 0.0 { 1 } else { -1 });
            } else {
                prop_assert_eq!(x.signum() == 0, x.is_zero());
            }
        }

        #[test]
        fn display_parse_round_trip(x in small_scalar()) {
            let text = x.to_string();
            let back: Scalar = text.parse().unwrap();
            prop_assert_eq!(&back, &x);
            // canonical form is idempotent
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn square_root_of_square(x in small_scalar()) {
            let root = x.square().sqrt_exact().unwrap();
            prop_assert_eq!(root, x.abs());
        }
    }
}
