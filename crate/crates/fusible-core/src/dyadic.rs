//! Exact dyadic and rational arithmetic, the fuse operator, and the exponent
//! function.
//!
//! A [`Dyadic`] is kept in the canonical form `p / 2^e` with `p` odd (or
//! `p = 0`, `e = 0`); a [`Rational`] is an arbitrary exact rational in lowest
//! terms. All equality is structural equality of canonical forms, and there
//! is no floating point anywhere.
//!
//! # Bit-size guard
//!
//! Gap exponents in the tame/meek systems reach values near `10^9`, which
//! would correspond to dyadics with billion-bit denominators. A global,
//! configurable guard (default `2^20` bits, see [`set_bit_guard`]) aborts any
//! operation whose result would exceed the limit with
//! [`Error::ResourceExhausted`], so such computations fail loudly instead of
//! exhausting memory.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

static BIT_GUARD: AtomicU64 = AtomicU64::new(1 << 20);

/// Set the global bit-size guard (in bits). Applies process-wide.
pub fn set_bit_guard(bits: u64) {
    BIT_GUARD.store(bits, AtomicOrdering::Relaxed);
}

/// Current bit-size guard.
pub fn bit_guard() -> u64 {
    BIT_GUARD.load(AtomicOrdering::Relaxed)
}

fn guard_bits(bits: u64, what: &str) -> Result<()> {
    let limit = bit_guard();
    if bits > limit {
        return Err(Error::ResourceExhausted {
            what: format!("{what} needs {bits} bits"),
            limit,
        });
    }
    Ok(())
}

/// A signed dyadic rational `numer / 2^exp` in canonical form: `numer` odd,
/// or `numer = 0` and `exp = 0`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Dyadic {
    numer: BigInt,
    exp: u64,
}

impl Dyadic {
    pub fn zero() -> Self {
        Dyadic {
            numer: BigInt::zero(),
            exp: 0,
        }
    }

    pub fn one() -> Self {
        Dyadic {
            numer: BigInt::one(),
            exp: 0,
        }
    }

    /// Canonicalizes `numer / 2^exp` by stripping factors of two.
    pub fn new(numer: BigInt, exp: u64) -> Self {
        let mut d = Dyadic { numer, exp };
        d.canonicalize();
        d
    }

    /// `p / 2^e` from machine integers, canonicalized.
    pub fn from_parts(p: i64, e: u64) -> Self {
        Dyadic::new(BigInt::from(p), e)
    }

    pub fn from_int(n: i64) -> Self {
        Dyadic::new(BigInt::from(n), 0)
    }

    /// `2^k` for any sign of `k`, subject to the bit guard.
    pub fn pow2(k: i64) -> Result<Self> {
        if k >= 0 {
            guard_bits(k as u64 + 1, "2^k numerator")?;
            Ok(Dyadic {
                numer: BigInt::one() << (k as usize),
                exp: 0,
            })
        } else {
            let e = k.unsigned_abs();
            guard_bits(e + 1, "2^k denominator")?;
            Ok(Dyadic {
                numer: BigInt::one(),
                exp: e,
            })
        }
    }

    fn canonicalize(&mut self) {
        if self.numer.is_zero() {
            self.exp = 0;
            return;
        }
        let tz = self.numer.trailing_zeros().unwrap_or(0);
        let shift = tz.min(self.exp);
        if shift > 0 {
            self.numer >>= shift as usize;
            self.exp -= shift;
        }
    }

    /// The exponent `e(r)`: the unique `e` with `r = p / 2^e`, `p` odd
    /// (`e(0) = 0`).
    pub fn exponent(&self) -> u64 {
        self.exp
    }

    /// Numerator of the canonical form.
    pub fn numer(&self) -> &BigInt {
        &self.numer
    }

    pub fn is_zero(&self) -> bool {
        self.numer.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.numer.is_negative()
    }

    /// Denominator `2^e` as an integer. Materializes the power, so it is
    /// subject to the same practical limits as printing.
    pub fn denominator(&self) -> BigUint {
        BigUint::one() << (self.exp as usize)
    }

    /// Exact sum, subject to the bit guard.
    pub fn try_add(&self, other: &Dyadic) -> Result<Dyadic> {
        let e = self.exp.max(other.exp);
        let la = self.numer.bits() + (e - self.exp);
        let lb = other.numer.bits() + (e - other.exp);
        guard_bits(la.max(lb) + 1, "dyadic sum numerator")?;
        guard_bits(e + 1, "dyadic sum denominator")?;
        let a = &self.numer << ((e - self.exp) as usize);
        let b = &other.numer << ((e - other.exp) as usize);
        Ok(Dyadic::new(a + b, e))
    }

    /// Exact difference, subject to the bit guard.
    pub fn try_sub(&self, other: &Dyadic) -> Result<Dyadic> {
        self.try_add(&other.clone().neg())
    }

    pub fn neg(mut self) -> Dyadic {
        self.numer = -self.numer;
        self
    }

    /// Lossless embedding into the rationals.
    pub fn to_rational(&self) -> Rational {
        let den = BigInt::one() << (self.exp as usize);
        Rational(BigRational::new_raw(self.numer.clone(), den))
    }

    pub fn parse(s: &str) -> Result<Self> {
        let r = Rational::parse(s)?;
        r.to_dyadic()
    }
}

impl PartialOrd for Dyadic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Dyadic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.numer.sign(), other.numer.sign()) {
            (Sign::Minus, Sign::NoSign) | (Sign::Minus, Sign::Plus) => return Ordering::Less,
            (Sign::NoSign, Sign::Plus) => return Ordering::Less,
            (Sign::Plus, Sign::Minus) | (Sign::Plus, Sign::NoSign) => return Ordering::Greater,
            (Sign::NoSign, Sign::Minus) => return Ordering::Greater,
            (Sign::NoSign, Sign::NoSign) => return Ordering::Equal,
            _ => {}
        }
        // same nonzero sign: compare p_a * 2^(E-e_a) with p_b * 2^(E-e_b)
        let e = self.exp.max(other.exp);
        let a = &self.numer << ((e - self.exp) as usize);
        let b = &other.numer << ((e - other.exp) as usize);
        a.cmp(&b)
    }
}

impl fmt::Display for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.exp == 0 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denominator())
        }
    }
}

impl FromStr for Dyadic {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Dyadic::parse(s)
    }
}

impl From<i64> for Dyadic {
    fn from(n: i64) -> Self {
        Dyadic::from_int(n)
    }
}

/// An exact signed rational in lowest terms with positive denominator.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

fn guarded(r: BigRational, what: &str) -> Result<Rational> {
    guard_bits(r.numer().bits(), what)?;
    guard_bits(r.denom().bits(), what)?;
    Ok(Rational(r))
}

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    /// `n / d` in lowest terms. `d` must be nonzero.
    pub fn new(n: BigInt, d: BigInt) -> Result<Self> {
        if d.is_zero() {
            return Err(Error::Parse("zero denominator".into()));
        }
        guarded(BigRational::new(n, d), "rational")
    }

    pub fn from_int(n: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_frac(n: i64, d: i64) -> Self {
        Rational(BigRational::new(BigInt::from(n), BigInt::from(d)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    /// The lowest-terms denominator (integers return 1).
    pub fn denominator(&self) -> BigUint {
        self.0.denom().magnitude().clone()
    }

    /// `1 / denominator(self)` as a rational.
    pub fn denominator_recip(&self) -> Rational {
        Rational(BigRational::new_raw(BigInt::one(), self.0.denom().clone()))
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    /// True when the lowest-terms denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        let d = self.0.denom().magnitude();
        d.count_ones() == 1
    }

    /// Conversion to canonical dyadic form; fails on non-dyadic denominators.
    pub fn to_dyadic(&self) -> Result<Dyadic> {
        if !self.is_dyadic() {
            return Err(Error::NotDyadic(self.to_string()));
        }
        let e = self.0.denom().magnitude().trailing_zeros().unwrap_or(0);
        Ok(Dyadic::new(self.0.numer().clone(), e))
    }

    pub fn try_add(&self, other: &Rational) -> Result<Rational> {
        self.guard_pair(other)?;
        guarded(&self.0 + &other.0, "sum")
    }

    pub fn try_sub(&self, other: &Rational) -> Result<Rational> {
        self.guard_pair(other)?;
        guarded(&self.0 - &other.0, "difference")
    }

    pub fn try_double(&self) -> Result<Rational> {
        guarded(&self.0 + &self.0, "double")
    }

    pub fn try_add_int(&self, n: i64) -> Result<Rational> {
        guarded(&self.0 + BigRational::from_integer(BigInt::from(n)), "sum")
    }

    pub fn try_half(&self) -> Result<Rational> {
        guarded(
            BigRational::new(self.0.numer().clone(), self.0.denom() * BigInt::from(2)),
            "half",
        )
    }

    pub fn neg(&self) -> Rational {
        Rational(-self.0.clone())
    }

    // Worst-case numerator size of a sum/difference, checked before the
    // operands are scaled to a common denominator.
    fn guard_pair(&self, other: &Rational) -> Result<()> {
        let a = self.0.numer().bits() + other.0.denom().bits();
        let b = other.0.numer().bits() + self.0.denom().bits();
        guard_bits(a.max(b) + 1, "rational operation")
    }

    /// Parses `"p/q"` or an integer literal.
    pub fn parse(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse(format!("expected 'p/q' or integer, got '{s}'"));
        let (np, dp) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), Some(d.trim())),
            None => (s, None),
        };
        let n = BigInt::from_str(np).map_err(|_| bad())?;
        guard_bits(n.bits(), "parsed numerator")?;
        match dp {
            None => Ok(Rational(BigRational::from_integer(n))),
            Some(dp) => {
                let d = BigInt::from_str(dp).map_err(|_| bad())?;
                if !d.is_positive() {
                    return Err(Error::Parse(format!("denominator must be positive in '{s}'")));
                }
                guard_bits(d.bits(), "parsed denominator")?;
                guarded(BigRational::new(n, d), "parsed rational")
            }
        }
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl FromStr for Rational {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Rational::parse(s)
    }
}

impl From<i64> for Rational {
    fn from(n: i64) -> Self {
        Rational::from_int(n)
    }
}

impl From<&Dyadic> for Rational {
    fn from(d: &Dyadic) -> Self {
        d.to_rational()
    }
}

/// The fuse operation `x ~ y = (x + y + 1) / 2`, unchecked.
///
/// If both arguments are dyadic the result is dyadic.
pub fn fuse(x: &Rational, y: &Rational) -> Result<Rational> {
    x.try_add(y)?.try_add_int(1)?.try_half()
}

/// Checked fuse: requires `|y - x| < 1`.
pub fn fuse_checked(x: &Rational, y: &Rational) -> Result<Rational> {
    let gap = y.try_sub(x)?;
    let one = Rational::one();
    if gap >= one || gap <= one.neg() {
        return Err(Error::FuseGap {
            x: x.to_string(),
            y: y.to_string(),
        });
    }
    fuse(x, y)
}

/// The smallest integer `k` with `r <= 2^k`, computed exactly.
pub fn ceil_log2(r: &Rational) -> Result<i64> {
    if r.is_zero() || r.is_negative() {
        return Err(Error::NonPositive(r.to_string()));
    }
    let p = r.numer().magnitude();
    let q = r.denominator();
    // 2^(bp-1) <= p < 2^bp and likewise for q pin k within a window of 3.
    let bp = p.bits() as i64;
    let bq = q.bits() as i64;
    for k in (bp - bq - 1)..=(bp - bq + 1) {
        // test p <= q * 2^k
        let le = if k >= 0 {
            *p <= (&q << (k as usize))
        } else {
            (p << ((-k) as usize)) <= q
        };
        if le {
            return Ok(k);
        }
    }
    unreachable!("ceil_log2 window missed for {r}");
}
