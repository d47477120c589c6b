//! Exact coefficients over ℚ and the Gaussian rationals ℚ(i).
//!
//! Every algebra carries a [`Field`] tag and all scalars it touches share that
//! tag. The arithmetic operators (`+`, `*`, ...) assume matching tags and panic
//! otherwise; loaders and constructors validate tags up front, and the
//! `try_*` methods / [`field_arith`] report [`Error::FieldMismatch`] instead.

use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Rational = BigRational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Field {
    #[serde(rename = "Q")]
    Rational,
    #[serde(rename = "Q(i)")]
    Gaussian,
}

impl Field {
    pub fn name(self) -> &'static str {
        match self {
            Field::Rational => "Q",
            Field::Gaussian => "Q(i)",
        }
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Field {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "Q" => Ok(Field::Rational),
            "Q(i)" => Ok(Field::Gaussian),
            other => Err(Error::Parse {
                position: 0,
                message: format!("unknown field `{other}`, expected `Q` or `Q(i)`"),
            }),
        }
    }
}

/// `re + im·i` with `i² = −1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussianRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussianRational {
    pub fn new(re: Rational, im: Rational) -> Self {
        Self { re, im }
    }

    fn norm(&self) -> Rational {
        &self.re * &self.re + &self.im * &self.im
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Scalar {
    Rational(Rational),
    Gaussian(GaussianRational),
}

fn mismatch(a: Field, b: Field) -> ! {
    panic!("field mismatch in scalar arithmetic: {a} vs {b}")
}

fn mismatch_err(expected: Field, found: Field) -> Error {
    Error::FieldMismatch {
        expected: expected.to_string(),
        found: found.to_string(),
    }
}

impl Scalar {
    pub fn zero(field: Field) -> Self {
        Self::from_i64(field, 0)
    }

    pub fn one(field: Field) -> Self {
        Self::from_i64(field, 1)
    }

    pub fn from_i64(field: Field, value: i64) -> Self {
        Self::from_rational(field, Rational::from_integer(BigInt::from(value)))
    }

    /// `numer / denom`; panics on a zero denominator.
    pub fn from_ratio(field: Field, numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Self::from_rational(field, Rational::new(numer.into(), denom.into()))
    }

    pub fn from_rational(field: Field, value: Rational) -> Self {
        match field {
            Field::Rational => Scalar::Rational(value),
            Field::Gaussian => Scalar::Gaussian(GaussianRational::new(value, Rational::zero())),
        }
    }

    pub fn gaussian(re: Rational, im: Rational) -> Self {
        Scalar::Gaussian(GaussianRational::new(re, im))
    }

    /// The imaginary unit of ℚ(i).
    pub fn i() -> Self {
        Self::gaussian(Rational::zero(), Rational::one())
    }

    pub fn field(&self) -> Field {
        match self {
            Scalar::Rational(_) => Field::Rational,
            Scalar::Gaussian(_) => Field::Gaussian,
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_zero(),
            Scalar::Gaussian(g) => g.re.is_zero() && g.im.is_zero(),
        }
    }

    pub fn is_one(&self) -> bool {
        match self {
            Scalar::Rational(r) => r.is_one(),
            Scalar::Gaussian(g) => g.re.is_one() && g.im.is_zero(),
        }
    }

    pub fn real_part(&self) -> &Rational {
        match self {
            Scalar::Rational(r) => r,
            Scalar::Gaussian(g) => &g.re,
        }
    }

    pub fn imag_part(&self) -> Option<&Rational> {
        match self {
            Scalar::Rational(_) => None,
            Scalar::Gaussian(g) => Some(&g.im),
        }
    }

    pub fn check_field(&self, field: Field) -> Result<()> {
        if self.field() == field {
            Ok(())
        } else {
            Err(mismatch_err(field, self.field()))
        }
    }

    /// The same number viewed in `field`; fails only for a non-real value in ℚ.
    pub fn coerce(&self, field: Field) -> Result<Scalar> {
        match (self, field) {
            (Scalar::Rational(r), f) => Ok(Scalar::from_rational(f, r.clone())),
            (Scalar::Gaussian(_), Field::Gaussian) => Ok(self.clone()),
            (Scalar::Gaussian(g), Field::Rational) if g.im.is_zero() => Ok(Scalar::Rational(g.re.clone())),
            (Scalar::Gaussian(_), Field::Rational) => Err(mismatch_err(Field::Rational, Field::Gaussian)),
        }
    }

    fn same_field(&self, other: &Scalar) -> Result<()> {
        other.check_field(self.field())
    }

    pub fn try_add(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * other)
    }

    pub fn try_div(&self, other: &Scalar) -> Result<Scalar> {
        self.same_field(other)?;
        Ok(self * &other.inv()?)
    }

    pub fn try_eq(&self, other: &Scalar) -> Result<bool> {
        self.same_field(other)?;
        Ok(self == other)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match self {
            Scalar::Rational(r) => Scalar::Rational(r.recip()),
            Scalar::Gaussian(g) => {
                let n = g.norm();
                Scalar::gaussian(&g.re / &n, -(&g.im / &n))
            }
        })
    }

    pub fn pow(&self, exp: u32) -> Scalar {
        let mut acc = Scalar::one(self.field());
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Parses the scalar text grammar under the given field.
    pub fn parse(text: &str, field: Field) -> Result<Scalar> {
        parse_scalar(text, field)
    }
}

/// The exact operations exposed by [`field_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
    Neg,
    Inv,
    Eq,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ArithValue {
    Scalar(Scalar),
    Bool(bool),
}

/// Checked scalar arithmetic. Unary operations ignore `b`.
pub fn field_arith(a: &Scalar, b: &Scalar, op: ArithOp) -> Result<ArithValue> {
    Ok(match op {
        ArithOp::Add => ArithValue::Scalar(a.try_add(b)?),
        ArithOp::Sub => ArithValue::Scalar(a.try_sub(b)?),
        ArithOp::Mul => ArithValue::Scalar(a.try_mul(b)?),
        ArithOp::Div => ArithValue::Scalar(a.try_div(b)?),
        ArithOp::Neg => ArithValue::Scalar(-a),
        ArithOp::Inv => ArithValue::Scalar(a.inv()?),
        ArithOp::Eq => ArithValue::Bool(a.try_eq(b)?),
    })
}

impl Add for &Scalar {
    type Output = Scalar;

    fn add(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::gaussian(&a.re + &b.re, &a.im + &b.im),
            _ => mismatch(self.field(), rhs.field()),
        }
    }
}

impl Sub for &Scalar {
    type Output = Scalar;

    fn sub(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => Scalar::gaussian(&a.re - &b.re, &a.im - &b.im),
            _ => mismatch(self.field(), rhs.field()),
        }
    }
}

impl Mul for &Scalar {
    type Output = Scalar;

    fn mul(self, rhs: &Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                Scalar::gaussian(&a.re * &b.re - &a.im * &b.im, &a.re * &b.im + &a.im * &b.re)
            }
            _ => mismatch(self.field(), rhs.field()),
        }
    }
}

impl Div for &Scalar {
    type Output = Scalar;

    /// Panics on division by zero; use [`Scalar::try_div`] for a checked form.
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, rhs: &Scalar) -> Scalar {
        self * &rhs.inv().expect("division by zero")
    }
}

impl Neg for &Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Gaussian(a) => Scalar::gaussian(-&a.re, -&a.im),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;

    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $method:ident) => {
        impl $tr for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: Scalar) -> Scalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&Scalar> for Scalar {
            type Output = Scalar;
            fn $method(self, rhs: &Scalar) -> Scalar {
                (&self).$method(rhs)
            }
        }
    };
}

forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a += b,
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                a.re += &b.re;
                a.im += &b.im;
            }
            _ => mismatch(self.field(), rhs.field()),
        }
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        match (&mut *self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => *a -= b,
            (Scalar::Gaussian(a), Scalar::Gaussian(b)) => {
                a.re -= &b.re;
                a.im -= &b.im;
            }
            _ => mismatch(self.field(), rhs.field()),
        }
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        *self = &*self * rhs;
    }
}

fn fmt_rational(r: &Rational, f: &mut fmt::Formatter<'_>) -> fmt::Result {
    if r.denom().is_one() {
        write!(f, "{}", r.numer())
    } else {
        write!(f, "{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(r) => fmt_rational(r, f),
            Scalar::Gaussian(g) => {
                if g.im.is_zero() {
                    fmt_rational(&g.re, f)
                } else if g.re.is_zero() {
                    fmt_rational(&g.im, f)?;
                    f.write_str("i")
                } else {
                    fmt_rational(&g.re, f)?;
                    if g.im.is_negative() {
                        f.write_str("-")?;
                        fmt_rational(&-&g.im, f)?;
                    } else {
                        f.write_str("+")?;
                        fmt_rational(&g.im, f)?;
                    }
                    f.write_str("i")
                }
            }
        }
    }
}

/// Canonical text form; inverse of [`parse_scalar`].
pub fn format_scalar(s: &Scalar) -> String {
    s.to_string()
}

struct Cursor<'a> {
    chars: Vec<(usize, char)>,
    pos: usize,
    text: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        let chars = text
            .char_indices()
            .map(|(i, c)| (i, if c == '\u{2212}' { '-' } else { c }))
            .collect();
        Self { chars, pos: 0, text }
    }

    fn offset(&self) -> usize {
        self.chars.get(self.pos).map_or(self.text.len(), |&(i, _)| i)
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn bump(&mut self) {
        self.pos += 1;
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn error(&self, message: impl Into<String>) -> Error {
        Error::Parse {
            position: self.offset(),
            message: message.into(),
        }
    }

    fn sign(&mut self) -> Option<bool> {
        match self.peek() {
            Some('+') => {
                self.bump();
                Some(false)
            }
            Some('-') => {
                self.bump();
                Some(true)
            }
            _ => None,
        }
    }

    fn digits(&mut self) -> Option<BigInt> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.bump();
        }
        if start == self.pos {
            return None;
        }
        let s: String = self.chars[start..self.pos].iter().map(|&(_, c)| c).collect();
        s.parse().ok()
    }

    /// `digits [ws '/' ws digits]`, unsigned.
    fn rational(&mut self) -> Result<Option<Rational>> {
        let Some(numer) = self.digits() else {
            return Ok(None);
        };
        let save = self.pos;
        self.skip_ws();
        if self.peek() != Some('/') {
            self.pos = save;
            return Ok(Some(Rational::from_integer(numer)));
        }
        self.bump();
        self.skip_ws();
        let at = self.offset();
        let denom = self.digits().ok_or_else(|| self.error("expected denominator"))?;
        if denom.is_zero() {
            return Err(Error::Parse {
                position: at,
                message: "zero denominator".into(),
            });
        }
        Ok(Some(Rational::new(numer, denom)))
    }
}

/// Parses `int | int/posint | <rat>(+|-)<rat>i | (+|-)<rat>i` with optional
/// whitespace. A bare `i` stands for `1i`.
pub fn parse_scalar(text: &str, field: Field) -> Result<Scalar> {
    let mut cur = Cursor::new(text);
    cur.skip_ws();
    let neg = cur.sign() == Some(true);
    cur.skip_ws();
    let first = cur.rational()?;
    cur.skip_ws();

    let apply = |neg: bool, r: Rational| if neg { -r } else { r };

    let (re, im) = if cur.peek() == Some('i') {
        cur.bump();
        let coeff = first.unwrap_or_else(Rational::one);
        (Rational::zero(), Some(apply(neg, coeff)))
    } else {
        let Some(first) = first else {
            return Err(cur.error("expected a number"));
        };
        let re = apply(neg, first);
        match cur.sign() {
            None => (re, None),
            Some(neg_im) => {
                cur.skip_ws();
                let coeff = cur.rational()?.unwrap_or_else(Rational::one);
                cur.skip_ws();
                if cur.peek() != Some('i') {
                    return Err(cur.error("expected `i` after imaginary part"));
                }
                cur.bump();
                (re, Some(apply(neg_im, coeff)))
            }
        }
    };
    cur.skip_ws();
    if cur.peek().is_some() {
        return Err(cur.error("unexpected trailing input"));
    }
    match (field, im) {
        (Field::Rational, None) => Ok(Scalar::Rational(re)),
        (Field::Rational, Some(_)) => Err(mismatch_err(Field::Rational, Field::Gaussian)),
        (Field::Gaussian, im) => Ok(Scalar::gaussian(re, im.unwrap_or_else(Rational::zero))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::from_ratio(Field::Rational, n, d)
    }

    fn qi(a: (i64, i64), b: (i64, i64)) -> Scalar {
        Scalar::gaussian(
            Rational::new(a.0.into(), a.1.into()),
            Rational::new(b.0.into(), b.1.into()),
        )
    }

    #[test]
    fn fraction_sum() {
        assert_eq!(&q(1, 2) + &q(1, 3), q(5, 6));
    }

    #[test]
    fn conjugate_product() {
        let a = qi((1, 1), (1, 1));
        let b = qi((1, 1), (-1, 1));
        assert_eq!(&a * &b, Scalar::from_i64(Field::Gaussian, 2));
        assert_eq!(&Scalar::i() * &Scalar::i(), Scalar::from_i64(Field::Gaussian, -1));
    }

    #[test]
    fn zero_has_no_inverse() {
        assert_eq!(Scalar::zero(Field::Rational).inv(), Err(Error::DivisionByZero));
        assert_eq!(Scalar::zero(Field::Gaussian).inv(), Err(Error::DivisionByZero));
        assert!(matches!(
            field_arith(&q(1, 1), &q(0, 1), ArithOp::Div),
            Err(Error::DivisionByZero)
        ));
    }

    #[test]
    fn mixed_fields_are_rejected() {
        let err = field_arith(&q(1, 2), &Scalar::i(), ArithOp::Add).unwrap_err();
        assert!(matches!(err, Error::FieldMismatch { .. }));
        assert!(q(1, 2).try_eq(&Scalar::one(Field::Gaussian)).is_err());
    }

    #[test]
    fn parse_reduces() {
        assert_eq!(parse_scalar("-3/6", Field::Rational).unwrap(), q(-1, 2));
        assert_eq!(parse_scalar("\u{2212}3/6", Field::Rational).unwrap(), q(-1, 2));
        assert_eq!(parse_scalar(" 4 / 2 ", Field::Rational).unwrap(), q(2, 1));
    }

    #[test]
    fn parse_gaussian() {
        assert_eq!(parse_scalar("1/2+1/3i", Field::Gaussian).unwrap(), qi((1, 2), (1, 3)));
        assert_eq!(parse_scalar("-2/3i", Field::Gaussian).unwrap(), qi((0, 1), (-2, 3)));
        assert_eq!(parse_scalar("1 - i", Field::Gaussian).unwrap(), qi((1, 1), (-1, 1)));
        assert_eq!(parse_scalar("i", Field::Gaussian).unwrap(), Scalar::i());
        assert_eq!(parse_scalar("7", Field::Gaussian).unwrap(), qi((7, 1), (0, 1)));
    }

    #[test]
    fn parse_errors() {
        match parse_scalar("1/0", Field::Rational) {
            Err(Error::Parse { position, .. }) => assert_eq!(position, 2),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_scalar("", Field::Rational), Err(Error::Parse { .. })));
        assert!(matches!(parse_scalar("1/", Field::Rational), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_scalar("1/-2", Field::Rational),
            Err(Error::Parse { .. })
        ));
        assert!(matches!(
            parse_scalar("2x", Field::Rational),
            Err(Error::Parse { position: 1, .. })
        ));
        assert!(matches!(parse_scalar("1+2", Field::Gaussian), Err(Error::Parse { .. })));
        assert!(matches!(
            parse_scalar("1+2i", Field::Rational),
            Err(Error::FieldMismatch { .. })
        ));
    }

    #[test]
    fn display_forms() {
        assert_eq!(q(-1, 2).to_string(), "-1/2");
        assert_eq!(q(3, 1).to_string(), "3");
        assert_eq!(qi((1, 2), (-1, 3)).to_string(), "1/2-1/3i");
        assert_eq!(qi((0, 1), (-1, 1)).to_string(), "-1i");
        assert_eq!(qi((5, 1), (0, 1)).to_string(), "5");
    }

    fn rational() -> impl Strategy<Value = Rational> {
        (-50i64..=50, 1i64..=12).prop_map(|(n, d)| Rational::new(n.into(), d.into()))
    }

    fn scalar() -> impl Strategy<Value = Scalar> {
        prop_oneof![
            rational().prop_map(Scalar::Rational),
            (rational(), rational()).prop_map(|(a, b)| Scalar::gaussian(a, b)),
        ]
    }

    fn gaussian() -> impl Strategy<Value = Scalar> {
        (rational(), rational()).prop_map(|(a, b)| Scalar::gaussian(a, b))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]

        #[test]
        fn field_axioms(a in gaussian(), b in gaussian(), c in gaussian()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            if !a.is_zero() {
                let inv = a.inv().unwrap();
                prop_assert!((&a * &inv).is_one());
                prop_assert_eq!(inv.inv().unwrap(), a.clone());
            }
        }

        #[test]
        fn format_parse_roundtrip(s in scalar()) {
            let text = format_scalar(&s);
            prop_assert_eq!(parse_scalar(&text, s.field()).unwrap(), s);
        }
    }
}
