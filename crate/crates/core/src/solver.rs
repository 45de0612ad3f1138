//! Inverse problems: the base in which a digit sequence evaluates to a given
//! value, by certified bisection. Also the Komornik–Loreti constant and the
//! endpoint bases of the symbolic cylinder intervals.

use std::cmp::Ordering;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::expansion::{eval_seq_exact, eval_seq_fixed, finite_base_m1_expansion, DmExpansion};
use crate::real::{bits_for_tol, int, pow2, CertifiedReal, FixedInterval, Refine, DEFAULT_MAX_BITS};
use crate::symbolic::{max_run, Alphabet, PeriodicSeq, Word};

#[derive(Clone, Copy, Debug)]
pub struct SolveOptions {
    /// Working-precision budget in bits.
    pub max_bits: u32,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self { max_bits: DEFAULT_MAX_BITS }
    }
}

/// Exponent `e` with `2^-e` roughly the width of `[lo, hi]`.
fn width_bits(lo: &BigRational, hi: &BigRational) -> u32 {
    let w = hi - lo;
    if w.is_zero() {
        return u32::MAX;
    }
    (w.denom().bits() as i64 - w.numer().bits() as i64).max(0) as u32
}

/// Sign of `value(s, q) - x` at a rational point `q > 1`.
fn side(s: &PeriodicSeq, x: &BigRational, q: &BigRational, mut prec: u32, max_bits: u32) -> Result<Ordering> {
    let qinv = q.recip();
    loop {
        let v = eval_seq_fixed(s, &FixedInterval::from_rational(&qinv, prec))?;
        let xf = FixedInterval::from_rational(x, prec);
        if let Some(o) = v.cmp_certain(&xf) {
            if o != Ordering::Equal {
                return Ok(o);
            }
        }
        if prec >= max_bits {
            // midpoints are rational, so an exact decision is always available
            return Ok(eval_seq_exact(s, q)?.cmp(x));
        }
        prec = (prec * 2).min(max_bits);
    }
}

enum Root {
    Exact(BigRational),
    Bracket(BigRational, BigRational),
}

/// Bisection on a decreasing value function until the bracket has width `2^-bits`.
fn bisect(s: &PeriodicSeq, x: &BigRational, mut lo: BigRational, mut hi: BigRational, bits: u32, max_bits: u32) -> Result<Root> {
    let target = pow2(-(bits as i64));
    let two = int(2);
    let guard = 64 + 2 * (s.preperiod().len() + s.period().len()).min(4096) as u32;
    while &hi - &lo > target {
        let mid = (&lo + &hi) / &two;
        let prec = width_bits(&lo, &hi).saturating_add(guard).min(max_bits.max(guard));
        match side(s, x, &mid, prec, max_bits.max(prec))? {
            Ordering::Greater => lo = mid,
            Ordering::Less => hi = mid,
            Ordering::Equal => return Ok(Root::Exact(mid)),
        }
    }
    Ok(Root::Bracket(lo, hi))
}

struct BisectionRefiner {
    s: PeriodicSeq,
    x: BigRational,
    max_bits: u32,
}

impl Refine for BisectionRefiner {
    fn refine(&self, lo: &BigRational, hi: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
        if bits > self.max_bits {
            return Err(Error::PrecisionExhausted {
                bits: self.max_bits,
                context: format!("refining the base of {} beyond the budget", self.s),
            });
        }
        Ok(match bisect(&self.s, &self.x, lo.clone(), hi.clone(), bits, self.max_bits)? {
            Root::Exact(v) => (v.clone(), v),
            Root::Bracket(a, b) => (a, b),
        })
    }
}

/// The unique `q` in `[lo, hi]` with `((s))_q = x`, enclosed to width `tol`.
pub fn solve_base(s: &PeriodicSeq, x: &BigRational, lo: &BigRational, hi: &BigRational, tol: &BigRational) -> Result<CertifiedReal> {
    solve_base_with(s, x, lo, hi, tol, SolveOptions::default())
}

pub fn solve_base_with(
    s: &PeriodicSeq,
    x: &BigRational,
    lo: &BigRational,
    hi: &BigRational,
    tol: &BigRational,
    opts: SolveOptions,
) -> Result<CertifiedReal> {
    if s.is_zero() {
        return Err(Error::InvalidArgument("the zero sequence has no base".into()));
    }
    if lo <= &int(1) || lo > hi {
        return Err(Error::InvalidArgument("bracket must satisfy 1 < lo <= hi".into()));
    }
    let bits = bits_for_tol(tol)?;
    if bits > opts.max_bits {
        return Err(Error::PrecisionExhausted {
            bits: opts.max_bits,
            context: format!("tolerance needs {bits} bits"),
        });
    }
    let prec = 64 + bits.min(opts.max_bits);
    let at_lo = side(s, x, lo, prec, opts.max_bits.max(prec))?;
    if at_lo == Ordering::Equal {
        return Ok(CertifiedReal::exact(lo.clone()));
    }
    let at_hi = side(s, x, hi, prec, opts.max_bits.max(prec))?;
    if at_hi == Ordering::Equal {
        return Ok(CertifiedReal::exact(hi.clone()));
    }
    if at_lo == Ordering::Less || at_hi == Ordering::Greater {
        return Err(Error::BracketDoesNotStraddle);
    }
    let refiner = BisectionRefiner { s: s.clone(), x: x.clone(), max_bits: opts.max_bits };
    match bisect(s, x, lo.clone(), hi.clone(), bits, opts.max_bits)? {
        Root::Exact(v) => Ok(CertifiedReal::exact(v)),
        Root::Bracket(a, b) => CertifiedReal::with_refiner(a, b, Arc::new(refiner)),
    }
}

/// Default lower end of every search bracket.
pub fn bracket_floor() -> BigRational {
    int(1) + pow2(-20)
}

/// First index where the quasi-greedy digits of `x` in base `q` certainly
/// leave `s`. Digits the enclosure cannot decide are resolved in favour of
/// `s`, so a reported mismatch is always genuine.
fn roundtrip_mismatch(s: &PeriodicSeq, x: &BigRational, q: &CertifiedReal, n: usize) -> Result<Option<usize>> {
    let m = s.alphabet().m();
    if let Some(qv) = q.exact_value() {
        let mut r = x.clone();
        for i in 0..n {
            let v = qv * &r;
            let c: BigInt = v.ceil().to_integer();
            let d = (c - BigInt::from(1)).clamp(BigInt::zero(), BigInt::from(m));
            let d = d.to_u8().unwrap();
            if d != s.digit(i) {
                return Ok(Some(i));
            }
            r = v - int(d as i64);
        }
        return Ok(None);
    }
    let prec = width_bits(q.lo(), q.hi()).min(DEFAULT_MAX_BITS) + 16;
    let qf = q.fixed(prec)?;
    let mut r = FixedInterval::from_rational(x, prec);
    for i in 0..n {
        let v = qf.mul(&r);
        let (a, b) = v.ceil_range();
        let lo = (a - BigInt::from(1)).max(BigInt::zero()).min(BigInt::from(m));
        let hi = (b - BigInt::from(1)).max(BigInt::zero()).min(BigInt::from(m));
        let d = s.digit(i);
        if BigInt::from(d) < lo || BigInt::from(d) > hi {
            return Ok(Some(i));
        }
        r = v.add_int(-(d as i64));
    }
    Ok(None)
}

fn roundtrip_depth(s: &PeriodicSeq) -> usize {
    (s.preperiod().len() + 2 * s.period().len() + 8).max(16)
}

/// Inverse of `q ↦ Φ_x(q)`: the base in which `s` is the quasi-greedy
/// expansion of `x`, with the expansion re-derived as a check.
pub fn phi_inverse(s: &PeriodicSeq, x: &BigRational, tol: &BigRational) -> Result<CertifiedReal> {
    phi_inverse_in(s, x, &bracket_floor(), &int(s.alphabet().base() as i64), tol, SolveOptions::default())
}

pub fn phi_inverse_in(
    s: &PeriodicSeq,
    x: &BigRational,
    lo: &BigRational,
    hi: &BigRational,
    tol: &BigRational,
    opts: SolveOptions,
) -> Result<CertifiedReal> {
    let q = solve_base_with(s, x, lo, hi, tol, opts)?;
    let n = roundtrip_depth(s);
    if let Some(i) = roundtrip_mismatch(s, x, &q, n)? {
        return Err(Error::RoundtripMismatch {
            index: i + 1,
            expected: Word::new(s.prefix(i + 1), s.alphabet())?.to_string(),
            found: format!("quasi-greedy digit {} differs", i + 1),
        });
    }
    Ok(q)
}

// ---------------------------------------------------------------- Komornik–Loreti

/// `τ_i` for `i ≥ 1`: the parity of the number of ones in the binary form of `i`.
pub fn thue_morse(i: u64) -> u8 {
    (i.count_ones() & 1) as u8
}

/// Sign of `Σ τ_i q^-i − 1`, using `n` terms and the tail bound `q^-n/(q−1)`.
fn kl_side(q: &BigRational, bits: u32, max_bits: u32) -> Result<Ordering> {
    let mut n = 2 * (bits as usize + 48);
    let mut prec = bits + 64;
    loop {
        let qinv = FixedInterval::from_rational(&q.recip(), prec);
        let mut acc = FixedInterval::from_int(0, prec);
        for i in (1..=n as u64).rev() {
            acc = acc.add_int(thue_morse(i) as i64).mul(&qinv);
        }
        let qf = FixedInterval::from_rational(q, prec);
        let mut qn = FixedInterval::from_int(1, prec);
        for _ in 0..n {
            qn = qn.mul(&qinv);
        }
        let tail = qn.mul(&qf.add_int(-1).recip()?);
        let one = FixedInterval::from_int(1, prec);
        if acc.lo > one.hi {
            return Ok(Ordering::Greater);
        }
        if &acc.hi + &tail.hi < one.lo {
            return Ok(Ordering::Less);
        }
        if prec >= max_bits {
            return Err(Error::PrecisionExhausted {
                bits: max_bits,
                context: "Thue–Morse series comparison".into(),
            });
        }
        n *= 2;
        prec = (prec * 2).min(max_bits);
    }
}

fn kl_bisect(mut lo: BigRational, mut hi: BigRational, bits: u32, max_bits: u32) -> Result<(BigRational, BigRational)> {
    let target = pow2(-(bits as i64));
    while &hi - &lo > target {
        let mid = (&lo + &hi) / int(2);
        let b = width_bits(&lo, &hi);
        match kl_side(&mid, b, max_bits)? {
            Ordering::Greater => lo = mid,
            _ => hi = mid,
        }
    }
    Ok((lo, hi))
}

struct KlRefiner {
    max_bits: u32,
}

impl Refine for KlRefiner {
    fn refine(&self, lo: &BigRational, hi: &BigRational, bits: u32) -> Result<(BigRational, BigRational)> {
        kl_bisect(lo.clone(), hi.clone(), bits, self.max_bits)
    }
}

/// The smallest univoque base of 1 over `{0, 1}`.
pub fn komornik_loreti(tol: &BigRational) -> Result<CertifiedReal> {
    komornik_loreti_with(tol, SolveOptions::default())
}

pub fn komornik_loreti_with(tol: &BigRational, opts: SolveOptions) -> Result<CertifiedReal> {
    let bits = bits_for_tol(tol)?;
    if bits > opts.max_bits {
        return Err(Error::PrecisionExhausted { bits: opts.max_bits, context: format!("tolerance needs {bits} bits") });
    }
    let (lo, hi) = kl_bisect(BigRational::new(3.into(), 2.into()), int(2), bits, opts.max_bits)?;
    CertifiedReal::with_refiner(lo, hi, Arc::new(KlRefiner { max_bits: opts.max_bits }))
}

// ---------------------------------------------------------------- cylinder intervals

/// The symbolic set `ε_1…ε_m M^N d_1 d_2 …` where no `N` consecutive appended
/// digits are all `0` or all `M`, for `x ∈ D_M` with `Φ_x(M+1) = ε_1…ε_m M^∞`.
#[derive(Clone, Debug)]
pub struct RunLimitedSet {
    x: BigRational,
    alphabet: Alphabet,
    dm: DmExpansion,
    run_limit: usize,
    prefix: Vec<u8>,
    lead: usize,
}

impl RunLimitedSet {
    pub fn new(x: &BigRational, alphabet: Alphabet, run_limit: usize) -> Result<Self> {
        if run_limit < 2 {
            return Err(Error::InvalidArgument("run limit must be at least 2".into()));
        }
        let dm = finite_base_m1_expansion(x, alphabet)?
            .ok_or_else(|| Error::InvalidArgument(format!("{x} has no finite base-{} expansion", alphabet.base())))?;
        let mut prefix = dm.eps.digits().to_vec();
        prefix.extend(std::iter::repeat(alphabet.m()).take(run_limit));
        let lead = prefix.iter().position(|&d| d != 0).unwrap() + 1;
        Ok(Self { x: x.clone(), alphabet, dm, run_limit, prefix, lead })
    }

    /// Run limit `m + j`.
    pub fn lemma(x: &BigRational, alphabet: Alphabet, j: usize) -> Result<Self> {
        let m = finite_base_m1_expansion(x, alphabet)?.map(|d| d.m()).unwrap_or(0);
        Self::new(x, alphabet, m + j)
    }

    /// Run limit `2^j`, which must exceed `m`.
    pub fn dyadic(x: &BigRational, alphabet: Alphabet, j: u32) -> Result<Self> {
        if j >= 31 {
            return Err(Error::InvalidArgument("j too large".into()));
        }
        let s = Self::new(x, alphabet, 1usize << j)?;
        if s.run_limit <= s.dm.m() {
            return Err(Error::InvalidArgument(format!("2^{j} must exceed m = {}", s.dm.m())));
        }
        Ok(s)
    }

    pub fn x(&self) -> &BigRational {
        &self.x
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn run_limit(&self) -> usize {
        self.run_limit
    }

    pub fn dm(&self) -> &DmExpansion {
        &self.dm
    }

    /// `ε_1…ε_m M^N`.
    pub fn prefix(&self) -> &[u8] {
        &self.prefix
    }

    /// Position of the first nonzero digit of the prefix.
    pub fn lead(&self) -> usize {
        self.lead
    }

    pub fn admits(&self, tail: &[u8]) -> bool {
        let n = self.run_limit;
        let m = self.alphabet.m();
        self.alphabet.check(tail).is_ok() && max_run(tail, 0) < n && max_run(tail, m) < n
    }

    pub fn word(&self, tail: &[u8]) -> Result<Word> {
        if !self.admits(tail) {
            return Err(Error::RunConstraint(format!("{:?}", tail)));
        }
        let mut d = self.prefix.clone();
        d.extend_from_slice(tail);
        Word::new(d, self.alphabet)
    }

    /// Quasi-greedy sequences of the two endpoints of the cylinder interval.
    pub fn endpoint_sequences(&self, tail: &[u8]) -> Result<(PeriodicSeq, PeriodicSeq)> {
        let w = self.word(tail)?.into_digits();
        let (n, m) = (self.run_limit, self.alphabet.m());
        let trailing = |b: u8| tail.iter().rev().take_while(|&&d| d == b).count();
        let low_block = {
            let mut v = vec![0u8; n - 1];
            v.push(1);
            v
        };
        let high_block = {
            let mut v = vec![m; n - 1];
            v.push(m - 1);
            v
        };
        let k0 = trailing(0);
        let left = if k0 > 0 {
            let mut pre = w.clone();
            pre.extend(std::iter::repeat(0).take(n - 1 - k0));
            let mut per = vec![1u8];
            per.extend(std::iter::repeat(0).take(n - 1));
            PeriodicSeq::new(pre, per, self.alphabet)?
        } else {
            PeriodicSeq::new(w.clone(), low_block, self.alphabet)?
        };
        let km = trailing(m);
        let right = if km > 0 {
            let mut pre = w.clone();
            pre.extend(std::iter::repeat(m).take(n - 1 - km));
            let mut per = vec![m - 1];
            per.extend(std::iter::repeat(m).take(n - 1));
            PeriodicSeq::new(pre, per, self.alphabet)?
        } else {
            PeriodicSeq::new(w, high_block, self.alphabet)?
        };
        Ok((left, right))
    }
}

/// Endpoints of the cylinder interval of `prefix · tail`.
pub fn interval_endpoints(set: &RunLimitedSet, tail: &[u8], tol: &BigRational) -> Result<(CertifiedReal, CertifiedReal)> {
    let hi = int(set.alphabet.base() as i64);
    interval_endpoints_in(set, tail, (&bracket_floor(), &hi), tol, SolveOptions::default())
}

/// As [`interval_endpoints`], searching only inside `bracket` (e.g. the parent interval).
pub fn interval_endpoints_in(
    set: &RunLimitedSet,
    tail: &[u8],
    bracket: (&BigRational, &BigRational),
    tol: &BigRational,
    opts: SolveOptions,
) -> Result<(CertifiedReal, CertifiedReal)> {
    let (ls, rs) = set.endpoint_sequences(tail)?;
    let a = phi_inverse_in(&ls, &set.x, bracket.0, bracket.1, tol, opts)?;
    let b = phi_inverse_in(&rs, &set.x, bracket.0, bracket.1, tol, opts)?;
    if a.lo() > b.hi() {
        return Err(Error::Ordering("left endpoint above right endpoint".into()));
    }
    Ok((a, b))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{generalized_golden_ratio, is_univoque_point, UnivoqueStatus};
    use crate::real::rat;

    fn a(m: u32) -> Alphabet {
        Alphabet::new(m).unwrap()
    }

    fn seq(s: &str, m: u32) -> PeriodicSeq {
        PeriodicSeq::parse(s, a(m)).unwrap()
    }

    #[test]
    fn solve_examples() {
        let q = solve_base(&seq("(1)", 1), &int(1), &rat(3, 2), &int(2), &pow2(-40)).unwrap();
        assert!(q.lo() <= &int(2) && &int(2) <= q.hi());
        let q = solve_base(&seq("(10)", 1), &int(1), &rat(3, 2), &int(2), &pow2(-60)).unwrap();
        let g = generalized_golden_ratio(a(1)).refine(80).unwrap();
        assert!(q.lo() <= g.hi() && g.lo() <= q.hi());
        assert!(q.width() <= pow2(-60));
        assert!(matches!(
            solve_base(&seq("(10)", 1), &int(1), &rat(17, 10), &int(2), &pow2(-20)),
            Err(Error::BracketDoesNotStraddle)
        ));
    }

    #[test]
    fn refinement_continues_from_bounds() {
        let q = solve_base(&seq("(10)", 1), &int(1), &rat(3, 2), &int(2), &pow2(-20)).unwrap();
        let r = q.refine(200).unwrap();
        assert!(r.width() <= pow2(-200));
        assert!(r.lo() >= q.lo() && r.hi() <= q.hi());
    }

    #[test]
    fn phi_inverse_examples() {
        let q = phi_inverse(&seq("(3)", 3), &int(1), &pow2(-30)).unwrap();
        assert_eq!(q.exact_value(), Some(&int(4)));
        let q = phi_inverse(&seq("(10)", 1), &int(1), &pow2(-50)).unwrap();
        assert!((q.to_f64() - 1.618_033_988_749_895).abs() < 1e-12);
        // a sequence that is no quasi-greedy expansion of 1 in any base
        let err = phi_inverse(&seq("(01)", 1), &int(1), &pow2(-40)).unwrap_err();
        assert!(matches!(err, Error::RoundtripMismatch { .. }), "{err:?}");
    }

    #[test]
    fn kl_constant() {
        let q = komornik_loreti(&rat(1, 100_000)).unwrap();
        assert!(q.lo() >= &rat(178722, 100000) && q.hi() <= &rat(178724, 100000));
        let q = q.refine(60).unwrap();
        assert!((q.to_f64() - 1.787_231_650_182_965).abs() < 1e-12);
        let coarse = komornik_loreti(&rat(1, 100)).unwrap();
        assert!((coarse.to_f64() - 1.79).abs() < 1e-2);
    }

    #[test]
    fn kl_below_is_not_unique() {
        let q = komornik_loreti(&pow2(-40)).unwrap();
        let below = CertifiedReal::exact(q.midpoint() - rat(1, 100));
        let st = is_univoque_point(&CertifiedReal::from_integer(1), &below, a(1), 64).unwrap();
        assert_eq!(st, UnivoqueStatus::NotUnique);
        // at q_KL itself no disagreement appears within 64 digits
        let st = is_univoque_point(&CertifiedReal::from_integer(1), &q.refine(300).unwrap(), a(1), 64);
        assert_ne!(st.ok(), Some(UnivoqueStatus::NotUnique));
    }

    #[test]
    fn thue_morse_prefix() {
        let t: Vec<u8> = (1..=8).map(thue_morse).collect();
        assert_eq!(t, vec![1, 1, 0, 1, 0, 0, 1, 1]);
    }

    #[test]
    fn run_limited_prefix() {
        let s = RunLimitedSet::lemma(&rat(1, 2), a(1), 2).unwrap();
        assert_eq!(s.run_limit(), 3);
        assert_eq!(s.prefix(), &[0, 1, 1, 1]);
        assert_eq!(s.lead(), 2);
        assert!(s.admits(&[0, 0, 1, 1]));
        assert!(!s.admits(&[0, 0, 0]));
        assert!(s.word(&[1, 1, 1]).is_err());
        assert!(RunLimitedSet::dyadic(&rat(3, 4), a(1), 2).is_ok());
        assert!(RunLimitedSet::dyadic(&rat(3, 4), a(1), 1).is_err());
        assert!(RunLimitedSet::new(&rat(1, 3), a(1), 4).is_err());
    }

    #[test]
    fn endpoint_cases() {
        // x = 2/3 = (0.2)_3, so ε = 1 and the prefix is 1 222
        let s = RunLimitedSet::new(&rat(2, 3), a(2), 3).unwrap();
        assert_eq!(s.prefix(), &[1, 2, 2, 2]);
        let (l, r) = s.endpoint_sequences(&[1]).unwrap();
        assert_eq!(l, PeriodicSeq::new(vec![1, 2, 2, 2, 1], vec![0, 0, 1], a(2)).unwrap());
        assert_eq!(l.to_string(), "1222(100)");
        assert_eq!(r, PeriodicSeq::new(vec![1, 2, 2, 2, 1], vec![2, 2, 1], a(2)).unwrap());
        let (l, _) = s.endpoint_sequences(&[1, 0]).unwrap();
        assert_eq!(l, PeriodicSeq::new(vec![1, 2, 2, 2, 1, 0, 0], vec![1, 0, 0], a(2)).unwrap());
        let (_, r) = s.endpoint_sequences(&[2, 2]).unwrap();
        assert_eq!(r, PeriodicSeq::new(vec![1, 2, 2, 2, 2, 2], vec![1, 2, 2], a(2)).unwrap());
    }

    #[test]
    fn endpoints_ordered_and_nested() {
        let s = RunLimitedSet::lemma(&rat(1, 2), a(1), 2).unwrap();
        let tol = pow2(-80);
        let (a0, b0) = interval_endpoints(&s, &[], &tol).unwrap();
        let (a1, b1) = interval_endpoints(&s, &[0], &tol).unwrap();
        let (a2, b2) = interval_endpoints(&s, &[1], &tol).unwrap();
        assert!(a0.hi() < b0.lo());
        // leftmost child shares the parent's left endpoint
        assert_eq!(a1.compare(&a0, 512).unwrap_or(Ordering::Equal), Ordering::Equal);
        assert!(b1.hi() < a2.lo());
        assert!(b2.hi() <= b0.hi() && a1.lo() >= a0.lo());
        let g = generalized_golden_ratio(a(1));
        assert!(a0.lo() > g.hi());
    }
}
