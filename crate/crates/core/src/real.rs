//! Certified real numbers: exact rational enclosures that can be refined on
//! demand, plus the fixed-point interval arithmetic used in hot loops.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `2^e` for any integer exponent.
pub fn pow2(e: i64) -> BigRational {
    let one = BigInt::one();
    if e >= 0 {
        BigRational::from_integer(one << e as usize)
    } else {
        BigRational::new_raw(one.clone(), one << (-e) as usize)
    }
}

pub(crate) fn floor_shr(x: &BigInt, s: u32) -> BigInt {
    if x.sign() == Sign::Minus {
        -ceil_shr(&-x, s)
    } else {
        x >> s
    }
}

pub(crate) fn ceil_shr(x: &BigInt, s: u32) -> BigInt {
    if x.sign() == Sign::Minus {
        return -floor_shr(&-x, s);
    }
    let f = x >> s;
    match x.trailing_zeros() {
        Some(t) if t < s as u64 => f + 1,
        _ => f,
    }
}

/// floor(r · 2^bits)
pub fn floor_scaled(r: &BigRational, bits: u32) -> BigInt {
    (r.numer() << bits).div_floor(r.denom())
}

/// ceil(r · 2^bits)
pub fn ceil_scaled(r: &BigRational, bits: u32) -> BigInt {
    let n: BigInt = r.numer() << bits;
    let (q, rem) = n.div_mod_floor(r.denom());
    if rem.is_zero() {
        q
    } else {
        q + 1
    }
}

/// Smallest `k` with `2^-k <= tol`.
pub fn bits_for_tol(tol: &BigRational) -> Result<u32> {
    if !tol.is_positive() {
        return Err(Error::InvalidArgument("tolerance must be positive".into()));
    }
    let inv = tol.recip();
    let mut k = (inv.numer().bits() as i64 - inv.denom().bits() as i64 - 1).max(0);
    while pow2(k) < inv {
        k += 1;
    }
    u32::try_from(k).map_err(|_| Error::InvalidArgument("tolerance too small".into()))
}

fn ldexp(mut x: f64, mut e: i64) -> f64 {
    while e > 1000 {
        x *= 2f64.powi(1000);
        e -= 1000;
    }
    while e < -1000 {
        x *= 2f64.powi(-1000);
        e += 1000;
    }
    x * 2f64.powi(e as i32)
}

/// Nearest-ish f64; robust for numerators and denominators of any size.
pub fn to_f64(r: &BigRational) -> f64 {
    let (n, d) = (r.numer(), r.denom());
    if n.is_zero() {
        return 0.0;
    }
    let shift = d.bits() as i64 + 64 - n.bits() as i64;
    let q = if shift >= 0 {
        (n << shift as usize) / d
    } else {
        n / (d << (-shift) as usize)
    };
    ldexp(q.to_f64().unwrap_or(f64::NAN), -shift)
}

pub fn ln_biguint(x: &BigUint) -> f64 {
    let bits = x.bits();
    if bits <= 960 {
        return x.to_f64().unwrap_or(f64::NAN).ln();
    }
    let s = bits - 64;
    (x >> s).to_f64().unwrap_or(f64::NAN).ln() + s as f64 * std::f64::consts::LN_2
}

pub fn ln_rational(r: &BigRational) -> f64 {
    assert!(r.is_positive(), "log of a non-positive rational");
    let n = r.numer().magnitude();
    let d = r.denom().magnitude();
    ln_biguint(n) - ln_biguint(d)
}

/// Parses `p/q`, an integer, or a decimal with optional exponent (`1e-5`, `0.25`).
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    if s.is_empty() {
        return Err(bad());
    }
    if let Some((p, q)) = s.split_once('/') {
        let p = BigInt::from_str(p.trim()).map_err(|_| bad())?;
        let q = BigInt::from_str(q.trim()).map_err(|_| bad())?;
        if q.is_zero() {
            return Err(Error::Parse(format!("zero denominator in '{s}'")));
        }
        return Ok(BigRational::new(p, q));
    }
    let (mant, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
        None => (s, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant.strip_prefix('+').unwrap_or(mant)),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    if ip.is_empty() && fp.is_empty() {
        return Err(bad());
    }
    if !ip.chars().chain(fp.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let digits = format!("{ip}{fp}");
    let mut v = BigRational::from_integer(BigInt::from_str(&digits).map_err(|_| bad())?);
    let e10 = exp - fp.len() as i64;
    let ten = BigRational::from_integer(BigInt::from(10));
    if e10 >= 0 {
        v *= num_traits::pow(ten, e10 as usize);
    } else {
        v /= num_traits::pow(ten, (-e10) as usize);
    }
    Ok(if neg { -v } else { v })
}

/// Decimal rendering rounded to `digits` places after the point.
pub fn decimal_string(r: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = r.abs() * BigRational::from_integer(scale.clone()) + rat(1, 2);
    let n = scaled.floor().to_integer();
    let (ip, fp) = n.div_rem(&scale);
    let sign = if r.is_negative() && !n.is_zero() { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{ip}")
    } else {
        format!("{sign}{ip}.{:0>width$}", fp.to_string(), width = digits)
    }
}

/// Closed rational interval with outward-safe arithmetic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalInterval {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl RationalInterval {
    pub fn new(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument("interval with lo > hi".into()));
        }
        Ok(Self { lo, hi })
    }

    pub fn point(v: BigRational) -> Self {
        Self { lo: v.clone(), hi: v }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn mid(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        let (a, b) = (&self.lo * c, &self.hi * c);
        if c.is_negative() {
            Self { lo: b, hi: a }
        } else {
            Self { lo: a, hi: b }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        let lo = p.iter().min().unwrap().clone();
        let hi = p.iter().max().unwrap().clone();
        Self { lo, hi }
    }

    pub fn recip(&self) -> Result<Self> {
        if !self.lo.is_positive() && !self.hi.is_negative() {
            return Err(Error::Uncertified("division by an interval containing 0".into()));
        }
        Ok(Self { lo: self.hi.recip(), hi: self.lo.recip() })
    }

    pub fn div(&self, o: &Self) -> Result<Self> {
        Ok(self.mul(&o.recip()?))
    }

    /// Integer power of a positive interval.
    pub fn powi(&self, e: i64) -> Result<Self> {
        if !self.lo.is_positive() {
            return Err(Error::InvalidArgument("powi needs a positive interval".into()));
        }
        let up = |x: &BigRational| num_traits::pow(x.clone(), e.unsigned_abs() as usize);
        let r = Self { lo: up(&self.lo), hi: up(&self.hi) };
        if e >= 0 {
            Ok(r)
        } else {
            r.recip()
        }
    }

    pub fn min(&self, o: &Self) -> Self {
        Self {
            lo: (&self.lo).min(&o.lo).clone(),
            hi: (&self.hi).min(&o.hi).clone(),
        }
    }

    /// Widens outward to a dyadic grid of spacing `2^-bits`, keeping sizes bounded.
    pub fn round_out(&self, bits: u32) -> Self {
        let d = pow2(-(bits as i64));
        Self {
            lo: BigRational::from_integer(floor_scaled(&self.lo, bits)) * &d,
            hi: BigRational::from_integer(ceil_scaled(&self.hi, bits)) * &d,
        }
    }

    pub fn certainly_lt(&self, o: &Self) -> bool {
        self.hi < o.lo
    }

    pub fn certainly_le(&self, o: &Self) -> bool {
        self.hi <= o.lo
    }

    pub fn contains(&self, v: &BigRational) -> bool {
        &self.lo <= v && v <= &self.hi
    }
}

/// Fixed-point interval `[lo, hi] · 2^-prec` with outward rounding.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixedInterval {
    pub lo: BigInt,
    pub hi: BigInt,
    pub prec: u32,
}

impl FixedInterval {
    pub fn from_int(v: i64, prec: u32) -> Self {
        let x = BigInt::from(v) << prec;
        Self { lo: x.clone(), hi: x, prec }
    }

    pub fn from_rational(r: &BigRational, prec: u32) -> Self {
        Self { lo: floor_scaled(r, prec), hi: ceil_scaled(r, prec), prec }
    }

    pub fn from_bounds(lo: &BigRational, hi: &BigRational, prec: u32) -> Self {
        Self { lo: floor_scaled(lo, prec), hi: ceil_scaled(hi, prec), prec }
    }

    pub fn add(&self, o: &Self) -> Self {
        debug_assert_eq!(self.prec, o.prec);
        Self { lo: &self.lo + &o.lo, hi: &self.hi + &o.hi, prec: self.prec }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { lo: &self.lo - &o.hi, hi: &self.hi - &o.lo, prec: self.prec }
    }

    pub fn add_int(&self, v: i64) -> Self {
        let x = BigInt::from(v) << self.prec;
        Self { lo: &self.lo + &x, hi: &self.hi + &x, prec: self.prec }
    }

    pub fn mul_int(&self, v: i64) -> Self {
        let (a, b) = (&self.lo * v, &self.hi * v);
        if v < 0 {
            Self { lo: b, hi: a, prec: self.prec }
        } else {
            Self { lo: a, hi: b, prec: self.prec }
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let p = self.prec;
        if self.lo.sign() != Sign::Minus && o.lo.sign() != Sign::Minus {
            return Self {
                lo: floor_shr(&(&self.lo * &o.lo), p),
                hi: ceil_shr(&(&self.hi * &o.hi), p),
                prec: p,
            };
        }
        let c = [&self.lo * &o.lo, &self.lo * &o.hi, &self.hi * &o.lo, &self.hi * &o.hi];
        Self {
            lo: floor_shr(c.iter().min().unwrap(), p),
            hi: ceil_shr(c.iter().max().unwrap(), p),
            prec: p,
        }
    }

    /// Reciprocal of a certainly-positive interval.
    pub fn recip(&self) -> Result<Self> {
        if self.lo.sign() != Sign::Plus {
            return Err(Error::Uncertified("reciprocal of a non-positive interval".into()));
        }
        let one = BigInt::one() << (2 * self.prec);
        let lo = one.div_floor(&self.hi);
        let hi = one.div_ceil(&self.lo);
        Ok(Self { lo, hi, prec: self.prec })
    }

    pub fn is_positive(&self) -> bool {
        self.lo.sign() == Sign::Plus
    }

    pub fn width(&self) -> BigInt {
        &self.hi - &self.lo
    }

    /// (floor(lo), floor(hi)) of the represented values.
    pub fn floor_range(&self) -> (BigInt, BigInt) {
        (floor_shr(&self.lo, self.prec), floor_shr(&self.hi, self.prec))
    }

    pub fn ceil_range(&self) -> (BigInt, BigInt) {
        (ceil_shr(&self.lo, self.prec), ceil_shr(&self.hi, self.prec))
    }

    pub fn lo_rational(&self) -> BigRational {
        BigRational::from_integer(self.lo.clone()) * pow2(-(self.prec as i64))
    }

    pub fn hi_rational(&self) -> BigRational {
        BigRational::from_integer(self.hi.clone()) * pow2(-(self.prec as i64))
    }

    pub fn to_interval(&self) -> RationalInterval {
        RationalInterval { lo: self.lo_rational(), hi: self.hi_rational() }
    }

    /// `Some(order)` when the two intervals are certainly ordered (or both
    /// are the same point).
    pub fn cmp_certain(&self, o: &Self) -> Option<Ordering> {
        if self.hi < o.lo {
            Some(Ordering::Less)
        } else if self.lo > o.hi {
            Some(Ordering::Greater)
        } else if self.lo == self.hi && o.lo == o.hi && self.lo == o.lo {
            Some(Ordering::Equal)
        } else {
            None
        }
    }
}

/// Something that can tighten an enclosure of a fixed real number.
pub trait Refine: Send + Sync {
    /// Returns an enclosure of width at most `2^-bits`, given the current one.
    fn refine(&self, lo: &BigRational, hi: &BigRational, bits: u32) -> Result<(BigRational, BigRational)>;
}

/// A real number known through a rational enclosure `[lo, hi]`.
///
/// Refinement is copy-on-refine: `refine` returns a tighter value and leaves
/// `self` untouched, so values can be shared freely between threads.
#[derive(Clone)]
pub struct CertifiedReal {
    lo: BigRational,
    hi: BigRational,
    refiner: Option<Arc<dyn Refine>>,
    algebraic: Option<Arc<Quadratic>>,
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("CertifiedReal")
            .field("lo", &self.lo.to_string())
            .field("hi", &self.hi.to_string())
            .field("refinable", &self.refiner.is_some())
            .finish()
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.decimal())
    }
}

pub const DEFAULT_MAX_BITS: u32 = 4096;

impl CertifiedReal {
    pub fn exact(v: BigRational) -> Self {
        Self { lo: v.clone(), hi: v, refiner: None, algebraic: None }
    }

    pub fn from_integer(v: i64) -> Self {
        Self::exact(int(v))
    }

    /// A fixed enclosure that cannot be refined further.
    pub fn enclosure(lo: BigRational, hi: BigRational) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument("enclosure with lo > hi".into()));
        }
        Ok(Self { lo, hi, refiner: None, algebraic: None })
    }

    pub fn with_refiner(lo: BigRational, hi: BigRational, refiner: Arc<dyn Refine>) -> Result<Self> {
        if lo > hi {
            return Err(Error::InvalidArgument("enclosure with lo > hi".into()));
        }
        Ok(Self { lo, hi, refiner: Some(refiner), algebraic: None })
    }

    /// An exactly known quadratic irrational.
    pub fn quadratic(v: Quadratic) -> Self {
        if let Some(r) = v.rational() {
            return Self::exact(r.clone());
        }
        let (lo, hi) = v.bounds(64);
        let v = Arc::new(v);
        Self { lo, hi, refiner: Some(v.clone()), algebraic: Some(v) }
    }

    pub fn as_quadratic(&self) -> Option<&Quadratic> {
        self.algebraic.as_deref()
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn is_exact(&self) -> bool {
        self.lo == self.hi
    }

    pub fn exact_value(&self) -> Option<&BigRational> {
        self.is_exact().then_some(&self.lo)
    }

    pub fn is_refinable(&self) -> bool {
        self.refiner.is_some() && !self.is_exact()
    }

    pub fn bounds(&self) -> RationalInterval {
        RationalInterval { lo: self.lo.clone(), hi: self.hi.clone() }
    }

    pub fn to_f64(&self) -> f64 {
        to_f64(&self.midpoint())
    }

    /// Decimal rendering with as many digits as the enclosure supports.
    pub fn decimal(&self) -> String {
        let digits = if self.is_exact() {
            20
        } else {
            let w = to_f64(&self.width());
            ((-w.log10()).floor().max(1.0) as usize).min(80)
        };
        decimal_string(&self.midpoint(), digits)
    }

    /// A value whose enclosure has width at most `2^-bits`, when attainable.
    pub fn refine(&self, bits: u32) -> Result<Self> {
        if self.width() <= pow2(-(bits as i64)) {
            return Ok(self.clone());
        }
        let Some(r) = &self.refiner else {
            return Ok(self.clone());
        };
        let (lo, hi) = r.refine(&self.lo, &self.hi, bits)?;
        let lo = if lo > self.lo { lo } else { self.lo.clone() };
        let hi = if hi < self.hi { hi } else { self.hi.clone() };
        if lo > hi {
            return Err(Error::Uncertified("refinement left the enclosure".into()));
        }
        Ok(Self { lo, hi, refiner: self.refiner.clone(), algebraic: self.algebraic.clone() })
    }

    /// Refines to `bits` and errors if the width target is not met.
    pub fn refine_strict(&self, bits: u32) -> Result<Self> {
        let r = self.refine(bits)?;
        if r.width() > pow2(-(bits as i64)) {
            return Err(Error::PrecisionExhausted {
                bits,
                context: "value cannot be refined further".into(),
            });
        }
        Ok(r)
    }

    pub fn fixed(&self, prec: u32) -> Result<FixedInterval> {
        let r = self.refine(prec)?;
        Ok(FixedInterval::from_bounds(&r.lo, &r.hi, prec))
    }

    /// Certified comparison, refining both sides up to `max_bits`.
    pub fn compare(&self, other: &CertifiedReal, max_bits: u32) -> Result<Ordering> {
        let mut bits = 64u32.min(max_bits);
        let (mut a, mut b) = (self.clone(), other.clone());
        loop {
            if a.hi < b.lo {
                return Ok(Ordering::Less);
            }
            if a.lo > b.hi {
                return Ok(Ordering::Greater);
            }
            if a.is_exact() && b.is_exact() {
                return Ok(a.lo.cmp(&b.lo));
            }
            if bits >= max_bits || (!a.is_refinable() && !b.is_refinable()) {
                return Err(Error::PrecisionExhausted {
                    bits,
                    context: "comparison of overlapping enclosures".into(),
                });
            }
            bits = bits.saturating_mul(2).min(max_bits);
            a = a.refine(bits)?;
            b = b.refine(bits)?;
        }
    }

    pub fn compare_rational(&self, v: &BigRational, max_bits: u32) -> Result<Ordering> {
        self.compare(&CertifiedReal::exact(v.clone()), max_bits)
    }
}

impl From<BigRational> for CertifiedReal {
    fn from(v: BigRational) -> Self {
        Self::exact(v)
    }
}

/// An element `a + b·sqrt(n)` of a real quadratic field (`n > 0`, not a square).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Quadratic {
    a: BigRational,
    b: BigRational,
    n: BigInt,
}

fn sqrt_bounds(n: &BigInt, bits: u32) -> (BigRational, BigRational) {
    let sq = n << (2 * bits);
    let s = sq.sqrt();
    let scale = pow2(-(bits as i64));
    let lo = BigRational::from_integer(s.clone()) * &scale;
    let hi = if &s * &s == sq { lo.clone() } else { BigRational::from_integer(s + 1) * &scale };
    (lo, hi)
}

impl Quadratic {
    pub fn new(a: BigRational, b: BigRational, n: BigInt) -> Result<Self> {
        if !n.is_positive() || n.sqrt().pow(2) == n {
            return Err(Error::InvalidArgument(format!("{n} is not a positive non-square")));
        }
        Ok(Self { a, b, n })
    }

    pub fn rational(&self) -> Option<&BigRational> {
        self.b.is_zero().then_some(&self.a)
    }

    /// A rational embedded in the same field.
    pub fn lift(&self, r: BigRational) -> Self {
        Self { a: r, b: BigRational::zero(), n: self.n.clone() }
    }

    pub fn add(&self, o: &Self) -> Self {
        Self { a: &self.a + &o.a, b: &self.b + &o.b, n: self.n.clone() }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self { a: &self.a - &o.a, b: &self.b - &o.b, n: self.n.clone() }
    }

    pub fn add_rational(&self, r: &BigRational) -> Self {
        Self { a: &self.a + r, b: self.b.clone(), n: self.n.clone() }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let n = BigRational::from_integer(self.n.clone());
        Self {
            a: &self.a * &o.a + &self.b * &o.b * n,
            b: &self.a * &o.b + &self.b * &o.a,
            n: self.n.clone(),
        }
    }

    pub fn recip(&self) -> Result<Self> {
        let n = BigRational::from_integer(self.n.clone());
        let norm = &self.a * &self.a - &self.b * &self.b * n;
        if norm.is_zero() {
            return Err(Error::InvalidArgument("reciprocal of zero".into()));
        }
        Ok(Self { a: &self.a / &norm, b: -&self.b / &norm, n: self.n.clone() })
    }

    /// Exact sign.
    pub fn signum(&self) -> Ordering {
        let sa = self.a.cmp(&BigRational::zero());
        let sb = self.b.cmp(&BigRational::zero());
        if sa == sb || sb == Ordering::Equal {
            return sa;
        }
        if sa == Ordering::Equal {
            return sb;
        }
        // opposite signs: compare a² with b²n
        let n = BigRational::from_integer(self.n.clone());
        match (&self.a * &self.a).cmp(&(&self.b * &self.b * n)) {
            Ordering::Greater => sa,
            Ordering::Less => sb,
            Ordering::Equal => Ordering::Equal,
        }
    }

    pub fn cmp_rational(&self, r: &BigRational) -> Ordering {
        self.add_rational(&-r).signum()
    }

    pub fn bounds(&self, bits: u32) -> (BigRational, BigRational) {
        let extra = self.b.numer().bits().saturating_sub(self.b.denom().bits()) as u32 + 2;
        let (slo, shi) = sqrt_bounds(&self.n, bits + extra);
        let (x, y) = (&self.b * slo, &self.b * shi);
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        (&self.a + lo, &self.a + hi)
    }

    pub fn floor(&self) -> BigInt {
        if let Some(r) = self.rational() {
            return r.floor().to_integer();
        }
        let (_, hi) = self.bounds(8);
        let mut k = hi.floor().to_integer();
        while self.cmp_rational(&BigRational::from_integer(k.clone())) == Ordering::Less {
            k -= 1;
        }
        k
    }

    pub fn ceil(&self) -> BigInt {
        let neg = Self { a: -&self.a, b: -&self.b, n: self.n.clone() };
        -neg.floor()
    }
}

impl Refine for Quadratic {
    fn refine(&self, _lo: &BigRational, _hi: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
        Ok(self.bounds(bits))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_forms() {
        assert_eq!(parse_rational("1/2").unwrap(), rat(1, 2));
        assert_eq!(parse_rational("-3").unwrap(), int(-3));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("1e-5").unwrap(), rat(1, 100_000));
        assert_eq!(parse_rational("2.5E2").unwrap(), int(250));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational(".").is_err());
    }

    #[test]
    fn decimal_rounding() {
        assert_eq!(decimal_string(&rat(2, 3), 4), "0.6667");
        assert_eq!(decimal_string(&rat(-1, 8), 2), "-0.13");
        assert_eq!(decimal_string(&int(5), 0), "5");
    }

    #[test]
    fn shifts_round_correctly() {
        for v in -40i64..40 {
            let x = BigInt::from(v);
            assert_eq!(floor_shr(&x, 3), BigInt::from(v.div_euclid(8)));
            assert_eq!(ceil_shr(&x, 3), BigInt::from(-((-v).div_euclid(8))));
        }
    }

    #[test]
    fn tol_bits() {
        assert_eq!(bits_for_tol(&rat(1, 1024)).unwrap(), 10);
        assert_eq!(bits_for_tol(&rat(1, 1000)).unwrap(), 10);
        assert_eq!(bits_for_tol(&rat(1, 1025)).unwrap(), 11);
        assert_eq!(bits_for_tol(&int(3)).unwrap(), 0);
    }

    #[test]
    fn fixed_ops_enclose() {
        let p = 40;
        let a = FixedInterval::from_rational(&rat(1, 3), p);
        let b = FixedInterval::from_rational(&rat(-2, 7), p);
        let prod = a.mul(&b).to_interval();
        assert!(prod.contains(&rat(-2, 21)));
        let r = a.recip().unwrap().to_interval();
        assert!(r.contains(&int(3)));
        let s = a.sub(&b).to_interval();
        assert!(s.contains(&(rat(1, 3) + rat(2, 7))));
    }

    #[test]
    fn quadratic_golden() {
        let g = Quadratic::new(rat(1, 2), rat(1, 2), BigInt::from(5)).unwrap();
        let (lo, hi) = g.bounds(50);
        assert!(&hi - &lo <= pow2(-50));
        // lo^2 <= lo + 1 <= hi^2 brackets the golden ratio
        assert!(&lo * &lo <= &lo + int(1));
        assert!(&hi * &hi >= &hi + int(1));
    }

    #[test]
    fn compare_refines() {
        let g = CertifiedReal::quadratic(Quadratic::new(rat(1, 2), rat(1, 2), BigInt::from(5)).unwrap());
        assert_eq!(g.compare_rational(&rat(161803, 100000), 4096).unwrap(), Ordering::Greater);
        assert_eq!(g.compare_rational(&rat(161804, 100000), 4096).unwrap(), Ordering::Less);
        let one = CertifiedReal::from_integer(1);
        assert_eq!(one.compare(&CertifiedReal::exact(int(1)), 64).unwrap(), Ordering::Equal);
    }

    #[test]
    fn quadratic_exact_ops() {
        let g = Quadratic::new(rat(1, 2), rat(1, 2), BigInt::from(5)).unwrap();
        // φ² = φ + 1
        assert_eq!(g.mul(&g), g.add_rational(&int(1)));
        assert_eq!(g.floor(), BigInt::from(1));
        assert_eq!(g.ceil(), BigInt::from(2));
        assert_eq!(g.recip().unwrap(), g.add_rational(&int(-1)));
        assert_eq!(g.add_rational(&int(-1)).mul(&g).cmp_rational(&int(1)), Ordering::Equal);
        assert!(Quadratic::new(int(0), int(1), BigInt::from(9)).is_err());
        let neg = Quadratic::new(int(3), int(-1), BigInt::from(8)).unwrap();
        assert_eq!(neg.signum(), Ordering::Greater);
        assert_eq!(neg.floor(), BigInt::from(0));
    }

    #[test]
    fn big_logs() {
        let x = BigUint::one() << 5000u32;
        assert!((ln_biguint(&x) - 5000.0 * std::f64::consts::LN_2).abs() < 1e-9);
        assert!((to_f64(&rat(1, 3)) - 1.0 / 3.0).abs() < 1e-16);
    }
}
