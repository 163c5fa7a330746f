//! Exact arithmetic in the ring of integers of ℚ or a real quadratic field ℚ(√d).
//!
//! Elements are stored in coordinates over the integral basis `{1, ω}` where
//! `ω = √d` for `d ≡ 2, 3 (mod 4)` and `ω = (1 + √d)/2` for `d ≡ 1 (mod 4)`.
//! Over ℚ the `ω`-coordinate is always zero.
//!
//! Positivity is decided with integer comparisons only: a quadratic integer is
//! totally positive exactly when its trace and norm are both positive.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Which integral basis the field uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum OmegaKind {
    /// The field is ℚ; there is no `ω`.
    Rational,
    /// `ω = √d`, used when `d ≡ 2, 3 (mod 4)`.
    Sqrt,
    /// `ω = (1 + √d)/2`, used when `d ≡ 1 (mod 4)`.
    Golden,
}

/// ℚ (radicand 1) or a real quadratic field ℚ(√d) with `d > 1` squarefree.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadField {
    d: u64,
    kind: OmegaKind,
}

impl QuadField {
    pub fn new(d: u64) -> Result<Self> {
        if d == 0 || !is_squarefree(d) {
            return Err(Error::InvalidField(d));
        }
        let kind = match d % 4 {
            _ if d == 1 => OmegaKind::Rational,
            1 => OmegaKind::Golden,
            _ => OmegaKind::Sqrt,
        };
        Ok(QuadField { d, kind })
    }

    pub fn rational() -> Self {
        QuadField { d: 1, kind: OmegaKind::Rational }
    }

    pub fn radicand(&self) -> u64 {
        self.d
    }

    pub fn omega_kind(&self) -> OmegaKind {
        self.kind
    }

    pub fn is_rational(&self) -> bool {
        self.kind == OmegaKind::Rational
    }

    /// Degree of the field over ℚ.
    pub fn degree(&self) -> u32 {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    /// Smallest trace of a totally positive integer: 1 over ℚ, 2 otherwise.
    pub fn min_positive_trace(&self) -> u64 {
        u64::from(self.degree())
    }

    /// `tr(ω)`: 0 for `ω = √d`, 1 for `ω = (1+√d)/2`.
    pub(crate) fn omega_trace(&self) -> i64 {
        match self.kind {
            OmegaKind::Golden => 1,
            _ => 0,
        }
    }

    /// The constant `c` in `ω² = tr(ω)·ω + c`.
    pub(crate) fn omega_square_const(&self) -> BigInt {
        match self.kind {
            OmegaKind::Rational => BigInt::zero(),
            OmegaKind::Sqrt => BigInt::from(self.d),
            OmegaKind::Golden => BigInt::from((self.d - 1) / 4),
        }
    }

    pub fn zero(&self) -> AlgInt {
        AlgInt::from_int(*self, 0)
    }

    pub fn one(&self) -> AlgInt {
        AlgInt::from_int(*self, 1)
    }

    /// `ω` itself. Fails over ℚ.
    pub fn omega(&self) -> Result<AlgInt> {
        AlgInt::new(*self, 0, 1)
    }

    /// Element `x + y·ω`; `y` must be zero over ℚ.
    pub fn elem(&self, x: i64, y: i64) -> Result<AlgInt> {
        AlgInt::new(*self, x, y)
    }

    /// Parses an element literal: `INT`, `INT+INT*w` or `INT-INT*w`.
    pub fn parse_elem(&self, s: &str) -> Result<AlgInt> {
        let (x, y) = parse_literal(s)?;
        AlgInt::from_coords(*self, x, y)
    }
}

impl fmt::Display for QuadField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            write!(f, "Q")
        } else {
            write!(f, "Q(√{})", self.d)
        }
    }
}

fn is_squarefree(d: u64) -> bool {
    let mut p = 2u64;
    while p * p <= d {
        if d.is_multiple_of(p * p) {
            return false;
        }
        p += 1;
    }
    true
}

/// An algebraic integer `x + y·ω` of a [`QuadField`].
#[derive(Clone, Debug)]
pub struct AlgInt {
    field: QuadField,
    x: BigInt,
    y: BigInt,
}

impl AlgInt {
    pub fn new(field: QuadField, x: i64, y: i64) -> Result<Self> {
        Self::from_coords(field, BigInt::from(x), BigInt::from(y))
    }

    pub fn from_coords(field: QuadField, x: BigInt, y: BigInt) -> Result<Self> {
        if field.is_rational() && !y.is_zero() {
            return Err(Error::IrrationalInRational);
        }
        Ok(AlgInt { field, x, y })
    }

    pub fn from_int(field: QuadField, n: impl Into<BigInt>) -> Self {
        AlgInt { field, x: n.into(), y: BigInt::zero() }
    }

    // Unchecked constructor for results of ring operations.
    fn raw(field: QuadField, x: BigInt, y: BigInt) -> Self {
        debug_assert!(!field.is_rational() || y.is_zero());
        AlgInt { field, x, y }
    }

    pub fn field(&self) -> QuadField {
        self.field
    }

    pub fn x(&self) -> &BigInt {
        &self.x
    }

    pub fn y(&self) -> &BigInt {
        &self.y
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }

    /// `Some(n)` when the element is the rational integer `n`.
    pub fn as_rational(&self) -> Option<&BigInt> {
        self.y.is_zero().then_some(&self.x)
    }

    fn check_field(&self, other: &AlgInt) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.field, other.field))
        }
    }

    pub fn try_add(&self, other: &AlgInt) -> Result<AlgInt> {
        self.check_field(other)?;
        Ok(Self::raw(self.field, &self.x + &other.x, &self.y + &other.y))
    }

    pub fn try_sub(&self, other: &AlgInt) -> Result<AlgInt> {
        self.check_field(other)?;
        Ok(Self::raw(self.field, &self.x - &other.x, &self.y - &other.y))
    }

    pub fn try_mul(&self, other: &AlgInt) -> Result<AlgInt> {
        self.check_field(other)?;
        // (x1 + y1ω)(x2 + y2ω) with ω² = tω + c
        let yy = &self.y * &other.y;
        let x = &self.x * &other.x + &yy * self.field.omega_square_const();
        let y = &self.x * &other.y + &other.x * &self.y + yy * self.field.omega_trace();
        Ok(Self::raw(self.field, x, y))
    }

    pub fn scale(&self, k: impl Into<BigInt>) -> AlgInt {
        let k = k.into();
        Self::raw(self.field, &self.x * &k, &self.y * &k)
    }

    pub fn pow(&self, k: u32) -> AlgInt {
        let mut acc = self.field.one();
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Trace `a + a′`.
    pub fn trace(&self) -> BigInt {
        match self.field.kind {
            OmegaKind::Rational => self.x.clone(),
            OmegaKind::Sqrt => &self.x * 2,
            OmegaKind::Golden => &self.x * 2 + &self.y,
        }
    }

    /// Norm `a · a′` (over ℚ the element itself).
    pub fn norm(&self) -> BigInt {
        match self.field.kind {
            OmegaKind::Rational => self.x.clone(),
            _ => {
                // x² + tr(ω)xy − c·y²
                &self.x * &self.x + &self.x * &self.y * self.field.omega_trace()
                    - &self.y * &self.y * self.field.omega_square_const()
            }
        }
    }

    /// Galois conjugate; the identity over ℚ.
    pub fn conjugate(&self) -> AlgInt {
        match self.field.kind {
            OmegaKind::Rational => self.clone(),
            // ω′ = tr(ω) − ω
            _ => Self::raw(
                self.field,
                &self.x + &self.y * self.field.omega_trace(),
                -&self.y,
            ),
        }
    }

    /// Every real embedding is strictly positive.
    pub fn is_totally_positive(&self) -> bool {
        match self.field.kind {
            OmegaKind::Rational => self.x.is_positive(),
            // both embeddings positive <=> their sum and product are positive
            _ => self.trace().is_positive() && self.norm().is_positive(),
        }
    }

    /// `self ⪰ 0`: totally positive or zero.
    pub fn is_totally_nonneg(&self) -> bool {
        self.is_zero() || self.is_totally_positive()
    }

    /// `self − other ⪰ 0`.
    pub fn dominates(&self, other: &AlgInt) -> bool {
        (self - other).is_totally_nonneg()
    }

    /// `Some(q)` with `self = divisor · q` when `q` is integral, `None` otherwise.
    pub fn exact_div(&self, divisor: &AlgInt) -> Result<Option<AlgInt>> {
        self.check_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        // self / b = self · b′ / N(b); over ℚ there is no conjugate factor
        let n = divisor.norm();
        let num = if self.field.is_rational() {
            self.clone()
        } else {
            self.try_mul(&divisor.conjugate())?
        };
        let (qx, rx) = num.x.div_rem(&n);
        let (qy, ry) = num.y.div_rem(&n);
        if rx.is_zero() && ry.is_zero() {
            Ok(Some(Self::raw(self.field, qx, qy)))
        } else {
            Ok(None)
        }
    }

    /// Divisibility by a rational integer, coordinate-wise.
    pub fn divide_by_int(&self, n: &BigInt) -> Option<AlgInt> {
        if n.is_zero() {
            return None;
        }
        let (qx, rx) = self.x.div_rem(n);
        let (qy, ry) = self.y.div_rem(n);
        (rx.is_zero() && ry.is_zero()).then(|| Self::raw(self.field, qx, qy))
    }
}

impl PartialEq for AlgInt {
    fn eq(&self, other: &Self) -> bool {
        self.field == other.field && self.x == other.x && self.y == other.y
    }
}

impl Eq for AlgInt {}

impl Hash for AlgInt {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.field.hash(state);
        self.x.hash(state);
        self.y.hash(state);
    }
}

/// Canonical order: by field, then `(trace, x, y)`.
impl Ord for AlgInt {
    fn cmp(&self, other: &Self) -> Ordering {
        self.field
            .cmp(&other.field)
            .then_with(|| self.trace().cmp(&other.trace()))
            .then_with(|| self.x.cmp(&other.x))
            .then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for AlgInt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $checked:ident) => {
        /// Panics if the operands live in different fields; use the `try_` method to handle that.
        impl<'a> $trait<&'a AlgInt> for &'a AlgInt {
            type Output = AlgInt;
            fn $method(self, rhs: &'a AlgInt) -> AlgInt {
                self.$checked(rhs).expect("field mismatch")
            }
        }

        impl $trait<AlgInt> for AlgInt {
            type Output = AlgInt;
            fn $method(self, rhs: AlgInt) -> AlgInt {
                self.$checked(&rhs).expect("field mismatch")
            }
        }
    };
}

forward_binop!(Add, add, try_add);
forward_binop!(Sub, sub, try_sub);
forward_binop!(Mul, mul, try_mul);

impl Neg for &AlgInt {
    type Output = AlgInt;
    fn neg(self) -> AlgInt {
        AlgInt::raw(self.field, -&self.x, -&self.y)
    }
}

impl Neg for AlgInt {
    type Output = AlgInt;
    fn neg(self) -> AlgInt {
        -&self
    }
}

/// Renders with √d notation, e.g. `6+2√2`, `2-√3`, `(1+√5)/2`.
impl fmt::Display for AlgInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.field.d;
        match self.field.kind {
            OmegaKind::Rational => write!(f, "{}", self.x),
            OmegaKind::Sqrt => write_surd(f, &self.x, &self.y, d),
            OmegaKind::Golden => {
                // x + y(1+√d)/2 = ((2x+y) + y√d)/2
                let u = &self.x * 2 + &self.y;
                if self.y.is_even() {
                    write_surd(f, &(u / 2), &(&self.y / 2), d)
                } else {
                    write!(f, "(")?;
                    write_surd(f, &u, &self.y, d)?;
                    write!(f, ")/2")
                }
            }
        }
    }
}

fn write_surd(f: &mut fmt::Formatter<'_>, a: &BigInt, b: &BigInt, d: u64) -> fmt::Result {
    if b.is_zero() {
        return write!(f, "{a}");
    }
    if !a.is_zero() {
        write!(f, "{a}")?;
        if b.is_positive() {
            write!(f, "+")?;
        }
    }
    if b.is_negative() {
        write!(f, "-")?;
    }
    let mag = b.abs();
    if !mag.is_one() {
        write!(f, "{mag}")?;
    }
    write!(f, "√{d}")
}

/// Parses `INT`, `INT+INT*w` or `INT-INT*w` into integral-basis coordinates.
///
/// Whitespace is ignored. Errors carry the byte offset of the offending character.
pub fn parse_literal(s: &str) -> Result<(BigInt, BigInt)> {
    let chars: Vec<(usize, char)> = s.char_indices().filter(|(_, c)| !c.is_whitespace()).collect();
    let err = |pos: usize, msg: &str| Error::Parse { input: s.to_string(), pos, msg: msg.to_string() };
    let mut i = 0;

    let read_int = |i: &mut usize, allow_sign: bool| -> Result<BigInt> {
        let mut text = String::new();
        if allow_sign {
            if let Some(&(_, c @ ('+' | '-'))) = chars.get(*i) {
                text.push(c);
                *i += 1;
            }
        }
        let digits_start = *i;
        while let Some(&(_, c)) = chars.get(*i) {
            if c.is_ascii_digit() {
                text.push(c);
                *i += 1;
            } else {
                break;
            }
        }
        if *i == digits_start {
            let pos = chars.get(*i).map_or(s.len(), |p| p.0);
            return Err(err(pos, "expected integer"));
        }
        Ok(BigInt::from_str(&text).expect("digits"))
    };

    let x = read_int(&mut i, true)?;
    if i == chars.len() {
        return Ok((x, BigInt::zero()));
    }
    let sign = match chars[i].1 {
        '+' => 1,
        '-' => -1,
        _ => return Err(err(chars[i].0, "expected '+' or '-'")),
    };
    i += 1;
    let y = read_int(&mut i, false)?;
    match (chars.get(i), chars.get(i + 1)) {
        (Some(&(_, '*')), Some(&(_, 'w'))) => i += 2,
        (Some(&(p, _)), _) => return Err(err(p, "expected '*w'")),
        (None, _) => return Err(err(s.len(), "expected '*w'")),
    }
    if let Some(&(p, _)) = chars.get(i) {
        return Err(err(p, "trailing input"));
    }
    Ok((x, y * sign))
}
