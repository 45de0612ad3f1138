//! Digit words and eventually periodic sequences over `{0, …, M}`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// The digit set `{0, 1, …, M}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Alphabet(u8);

impl Alphabet {
    pub fn new(m: u32) -> Result<Self> {
        if (1..=254).contains(&m) {
            Ok(Self(m as u8))
        } else {
            Err(Error::InvalidAlphabet(m))
        }
    }

    #[inline]
    pub fn m(self) -> u8 {
        self.0
    }

    /// `M + 1`, the integer base.
    #[inline]
    pub fn base(self) -> u32 {
        self.0 as u32 + 1
    }

    pub fn check(self, digits: &[u8]) -> Result<()> {
        match digits.iter().find(|&&d| d > self.0) {
            Some(&d) => Err(Error::DigitOutOfRange { digit: d as u32, m: self.0 }),
            None => Ok(()),
        }
    }

    fn same(self, other: Alphabet) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::AlphabetMismatch(self.0, other.0))
        }
    }
}

pub fn digit_count(w: &[u8], b: u8) -> usize {
    w.iter().filter(|&&d| d == b).count()
}

pub fn max_run(w: &[u8], b: u8) -> usize {
    let (mut best, mut cur) = (0, 0);
    for &d in w {
        cur = if d == b { cur + 1 } else { 0 };
        best = best.max(cur);
    }
    best
}

fn fmt_digits(f: &mut fmt::Formatter<'_>, digits: &[u8], wide: bool) -> fmt::Result {
    for (i, d) in digits.iter().enumerate() {
        if wide && i > 0 {
            f.write_str(",")?;
        }
        write!(f, "{d}")?;
    }
    Ok(())
}

fn parse_digits(s: &str, alphabet: Alphabet) -> Result<Vec<u8>> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let digits: Vec<u32> = if alphabet.m() > 9 || s.contains(',') {
        s.split(',')
            .map(|t| t.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad digit '{t}'"))))
            .collect::<Result<_>>()?
    } else {
        s.chars()
            .map(|c| c.to_digit(10).ok_or_else(|| Error::Parse(format!("bad digit '{c}'"))))
            .collect::<Result<_>>()?
    };
    digits
        .into_iter()
        .map(|d| {
            if d <= alphabet.m() as u32 {
                Ok(d as u8)
            } else {
                Err(Error::DigitOutOfRange { digit: d, m: alphabet.m() })
            }
        })
        .collect()
}

/// A finite digit string.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word {
    digits: Vec<u8>,
    alphabet: Alphabet,
}

impl PartialOrd for Alphabet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Alphabet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0.cmp(&other.0)
    }
}

impl Word {
    pub fn new(digits: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        alphabet.check(&digits)?;
        Ok(Self { digits, alphabet })
    }

    pub fn empty(alphabet: Alphabet) -> Self {
        Self { digits: Vec::new(), alphabet }
    }

    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Self> {
        Ok(Self { digits: parse_digits(s, alphabet)?, alphabet })
    }

    pub fn digits(&self) -> &[u8] {
        &self.digits
    }

    pub fn into_digits(self) -> Vec<u8> {
        self.digits
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digit_count(&self, b: u8) -> usize {
        digit_count(&self.digits, b)
    }

    pub fn max_run(&self, b: u8) -> usize {
        max_run(&self.digits, b)
    }

    pub fn concat(&self, tail: &[u8]) -> Result<Self> {
        self.alphabet.check(tail)?;
        let mut digits = self.digits.clone();
        digits.extend_from_slice(tail);
        Ok(Self { digits, alphabet: self.alphabet })
    }

    /// Value of the finite word followed by zeros in base `q`.
    pub fn value(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::from_integer(BigInt::from(0));
        for &d in self.digits.iter().rev() {
            acc = (acc + BigRational::from_integer(BigInt::from(d))) / q;
        }
        acc
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt_digits(f, &self.digits, self.alphabet.m() > 9)
    }
}

/// An eventually periodic sequence `pre (period)^∞`, always in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PeriodicSeq {
    pre: Vec<u8>,
    per: Vec<u8>,
    alphabet: Alphabet,
}

fn primitive_root_len(w: &[u8]) -> usize {
    let n = w.len();
    let mut fail = vec![0usize; n];
    let mut k = 0;
    for i in 1..n {
        while k > 0 && w[i] != w[k] {
            k = fail[k - 1];
        }
        if w[i] == w[k] {
            k += 1;
        }
        fail[i] = k;
    }
    let p = n - fail[n - 1];
    if n % p == 0 {
        p
    } else {
        n
    }
}

impl PeriodicSeq {
    pub fn new(pre: Vec<u8>, per: Vec<u8>, alphabet: Alphabet) -> Result<Self> {
        if per.is_empty() {
            return Err(Error::InvalidArgument("period must be nonempty".into()));
        }
        alphabet.check(&pre)?;
        alphabet.check(&per)?;
        Ok(Self::canonical(pre, per, alphabet))
    }

    fn canonical(mut pre: Vec<u8>, mut per: Vec<u8>, alphabet: Alphabet) -> Self {
        let p = primitive_root_len(&per);
        per.truncate(p);
        while let (Some(&a), Some(&b)) = (pre.last(), per.last()) {
            if a != b {
                break;
            }
            pre.pop();
            per.rotate_right(1);
        }
        Self { pre, per, alphabet }
    }

    pub fn constant(d: u8, alphabet: Alphabet) -> Result<Self> {
        Self::new(Vec::new(), vec![d], alphabet)
    }

    /// Parses `pre(period)`; digits may be comma separated (required when M > 9).
    pub fn parse(s: &str, alphabet: Alphabet) -> Result<Self> {
        let s = s.trim();
        let open = s.find('(').ok_or_else(|| Error::Parse(format!("missing '(' in '{s}'")))?;
        let inner = s[open + 1..]
            .strip_suffix(')')
            .ok_or_else(|| Error::Parse(format!("missing trailing ')' in '{s}'")))?;
        let pre = parse_digits(s[..open].trim_end_matches(','), alphabet)?;
        let per = parse_digits(inner, alphabet)?;
        Self::new(pre, per, alphabet)
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn preperiod(&self) -> &[u8] {
        &self.pre
    }

    pub fn period(&self) -> &[u8] {
        &self.per
    }

    #[inline]
    pub fn digit(&self, i: usize) -> u8 {
        if i < self.pre.len() {
            self.pre[i]
        } else {
            self.per[(i - self.pre.len()) % self.per.len()]
        }
    }

    pub fn prefix(&self, n: usize) -> Vec<u8> {
        (0..n).map(|i| self.digit(i)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.pre.is_empty() && self.per == [0]
    }

    /// 0-based index of the first disagreement, `None` if equal.
    pub fn first_difference(&self, other: &PeriodicSeq) -> Result<Option<usize>> {
        self.alphabet.same(other.alphabet)?;
        let bound = self.pre.len() + other.pre.len() + self.per.len().lcm(&other.per.len());
        Ok((0..bound).find(|&i| self.digit(i) != other.digit(i)))
    }

    pub fn lex_compare(&self, other: &PeriodicSeq) -> Result<Ordering> {
        Ok(match self.first_difference(other)? {
            Some(i) => self.digit(i).cmp(&other.digit(i)),
            None => Ordering::Equal,
        })
    }

    /// `(M+1)^-k` with `k` the 1-based first disagreement index.
    pub fn rho_distance(&self, other: &PeriodicSeq) -> Result<BigRational> {
        Ok(match self.first_difference(other)? {
            None => BigRational::from_integer(BigInt::from(0)),
            Some(i) => BigRational::new(
                BigInt::from(1),
                num_traits::pow(BigInt::from(self.alphabet.base()), i + 1),
            ),
        })
    }

    pub fn shift(&self, n: usize) -> PeriodicSeq {
        if n <= self.pre.len() {
            return Self::canonical(self.pre[n..].to_vec(), self.per.clone(), self.alphabet);
        }
        let mut per = self.per.clone();
        let k = (n - self.pre.len()) % per.len();
        per.rotate_left(k);
        Self::canonical(Vec::new(), per, self.alphabet)
    }

    pub fn reflect(&self) -> PeriodicSeq {
        let m = self.alphabet.m();
        let f = |v: &[u8]| v.iter().map(|&d| m - d).collect::<Vec<_>>();
        Self::canonical(f(&self.pre), f(&self.per), self.alphabet)
    }

    /// Prepends a finite word.
    pub fn prepend(&self, w: &[u8]) -> Result<PeriodicSeq> {
        self.alphabet.check(w)?;
        let mut pre = w.to_vec();
        pre.extend_from_slice(&self.pre);
        Ok(Self::canonical(pre, self.per.clone(), self.alphabet))
    }
}

impl fmt::Display for PeriodicSeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.alphabet.m() > 9;
        fmt_digits(f, &self.pre, wide)?;
        f.write_str("(")?;
        fmt_digits(f, &self.per, wide)?;
        f.write_str(")")
    }
}

impl FromStr for Alphabet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let m = s.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad M '{s}'")))?;
        Alphabet::new(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(m: u32) -> Alphabet {
        Alphabet::new(m).unwrap()
    }

    fn seq(s: &str, m: u32) -> PeriodicSeq {
        PeriodicSeq::parse(s, a(m)).unwrap()
    }

    #[test]
    fn alphabet_bounds() {
        assert!(Alphabet::new(0).is_err());
        assert!(Alphabet::new(255).is_err());
        assert_eq!(a(254).base(), 255);
    }

    #[test]
    fn canonical_forms() {
        assert_eq!(seq("0(10)", 1), seq("(01)", 1));
        assert_eq!(seq("(1010)", 1).period(), &[1, 0]);
        assert_eq!(seq("111(1)", 1).preperiod(), &[] as &[u8]);
        assert_eq!(seq("0(10)", 1).to_string(), "(01)");
        assert_eq!(seq("2(1)", 3).to_string(), "2(1)");
    }

    #[test]
    fn lex_examples() {
        assert_eq!(seq("(10)", 1).lex_compare(&seq("(1)", 1)).unwrap(), Ordering::Less);
        assert_eq!(seq("(0)", 1).lex_compare(&seq("(0)", 1)).unwrap(), Ordering::Equal);
        // the Ω prefix sits above 0^(ℓ-1) 1 0^∞
        let omega = seq("0111011(0)", 1);
        assert_eq!(seq("01(0)", 1).lex_compare(&omega).unwrap(), Ordering::Less);
        assert!(seq("(1)", 1).lex_compare(&seq("(1)", 2)).is_err());
    }

    #[test]
    fn rho_examples() {
        assert_eq!(seq("(1)", 1).rho_distance(&seq("(1)", 1)).unwrap(), BigRational::from_integer(0.into()));
        assert_eq!(
            seq("(1)", 1).rho_distance(&seq("(10)", 1)).unwrap(),
            BigRational::new(1.into(), 4.into())
        );
        assert_eq!(
            seq("0(1)", 1).rho_distance(&seq("0(10)", 1)).unwrap(),
            BigRational::new(1.into(), 8.into())
        );
    }

    #[test]
    fn shift_examples() {
        assert_eq!(seq("0(10)", 1).shift(1), seq("(10)", 1));
        assert_eq!(seq("(110)", 1).shift(2), seq("(011)", 1));
        assert_eq!(seq("0101(2)", 2).shift(4), seq("(2)", 2));
    }

    #[test]
    fn reflect_examples() {
        assert_eq!(seq("(0)", 3).reflect(), seq("(3)", 3));
        assert_eq!(seq("(10)", 1).reflect(), seq("(01)", 1));
        let s = seq("201(12)", 2);
        assert_eq!(s.reflect().reflect(), s);
    }

    #[test]
    fn counts_and_runs() {
        let w = Word::parse("0101", a(1)).unwrap();
        assert_eq!(w.digit_count(1), 2);
        assert_eq!(Word::new(vec![2; 5], a(2)).unwrap().digit_count(0), 0);
        assert_eq!(max_run(&[0, 0, 1, 0, 0], 0), 2);
        let mut w = vec![3u8; 6];
        w.push(2);
        assert_eq!(max_run(&w, 3), 6);
    }

    #[test]
    fn wide_alphabet_text() {
        let s = seq("10,2(11,0)", 12);
        assert_eq!(s.preperiod(), &[10, 2]);
        assert_eq!(s.to_string(), "10,2(11,0)");
        assert!(PeriodicSeq::parse("13(0)", a(12)).is_err());
        assert!(PeriodicSeq::parse("2(1)", a(1)).is_err());
        assert!(PeriodicSeq::parse("01", a(1)).is_err());
    }

    #[test]
    fn word_value() {
        let w = Word::parse("11", a(1)).unwrap();
        assert_eq!(w.value(&BigRational::from_integer(2.into())), BigRational::new(3.into(), 4.into()));
    }
}
