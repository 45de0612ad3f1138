//! Geometric covers of the Cantor sets of univoque bases, and the
//! thickness / dimension / intersection machinery built on them.

mod hulls;
mod overlap;
mod thickness;

pub use hulls::{build_hulls, HullCheck, HullEntry, HullSequence};
pub use overlap::{depth_for_bits, find_common_cell, intersect_covers, intersect_spans, sum_image_check, CommonCell, SumImage};
pub use thickness::{
    moran_dim_estimate, newhouse_dim_bound, sibling_checks, thickness_ordered, thickness_star,
    thickness_star_by_level, MoranEstimate, SiblingCheck,
};

use std::collections::HashMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::real::{bits_for_tol, int, pow2, CertifiedReal, RationalInterval, DEFAULT_MAX_BITS};
use crate::solver::{bracket_floor, interval_endpoints_in, RunLimitedSet, SolveOptions};
use crate::symbolic::{Alphabet, Word};

pub const DEFAULT_ENUMERATION_CAP: u64 = 2_000_000;

/// An interval `[lo, hi]` with certified endpoints.
#[derive(Clone, Debug)]
pub struct Span {
    pub lo: CertifiedReal,
    pub hi: CertifiedReal,
}

impl Span {
    /// Enclosure of the length `hi - lo`.
    pub fn length(&self) -> RationalInterval {
        self.hi.bounds().sub(&self.lo.bounds())
    }
}

/// A basic interval `I_ω`; `tail` is the part of `ω` after the fixed prefix.
#[derive(Clone, Debug)]
pub struct BasicInterval {
    pub tail: Vec<u8>,
    pub word: Word,
    pub span: Span,
}

/// The open gap between two consecutive sibling intervals.
#[derive(Clone, Debug)]
pub struct Gap {
    /// Word of the left sibling `ωd`.
    pub word: Word,
    /// Index of the left sibling in its level.
    pub left: usize,
    pub span: Span,
}

#[derive(Clone, Debug)]
pub struct CoverLevel {
    pub intervals: Vec<BasicInterval>,
    pub gaps: Vec<Gap>,
}

/// Levels `0..=n` of a nested interval construction.
#[derive(Clone, Debug)]
pub struct Cover {
    levels: Vec<CoverLevel>,
}

fn certainly_before(a: &Span, b: &Span) -> bool {
    a.hi.hi() < b.lo.lo()
}

impl Cover {
    /// Assembles and validates a cover. Intervals at level `n` are identified
    /// by tails of length `n`; siblings share all but the last digit.
    pub fn from_levels(levels: Vec<Vec<BasicInterval>>) -> Result<Cover> {
        if levels.is_empty() || levels[0].is_empty() {
            return Err(Error::InvalidArgument("a cover needs a level 0".into()));
        }
        let mut out: Vec<CoverLevel> = Vec::with_capacity(levels.len());
        for (l, mut ivs) in levels.into_iter().enumerate() {
            ivs.sort_by_key(|a| a.span.lo.midpoint());
            for w in ivs.windows(2) {
                if !certainly_before(&w[0].span, &w[1].span) {
                    return Err(Error::Ordering(format!(
                        "level {l}: intervals {} and {} are not certainly disjoint",
                        w[0].word, w[1].word
                    )));
                }
            }
            if let Some(prev) = out.last() {
                let index: HashMap<&[u8], usize> =
                    prev.intervals.iter().enumerate().map(|(i, iv)| (iv.tail.as_slice(), i)).collect();
                for iv in &ivs {
                    let parent = iv
                        .tail
                        .split_last()
                        .and_then(|(_, p)| index.get(p))
                        .ok_or_else(|| Error::Ordering(format!("level {l}: {} has no parent", iv.word)))?;
                    let p = &prev.intervals[*parent].span;
                    if iv.span.lo.hi() < p.lo.lo() || iv.span.hi.lo() > p.hi.hi() {
                        return Err(Error::Ordering(format!("level {l}: {} escapes its parent", iv.word)));
                    }
                }
            }
            let mut gaps = Vec::new();
            for (i, w) in ivs.windows(2).enumerate() {
                let (a, b) = (&w[0], &w[1]);
                if l > 0 && a.tail[..l - 1] == b.tail[..l - 1] {
                    gaps.push(Gap {
                        word: a.word.clone(),
                        left: i,
                        span: Span { lo: a.span.hi.clone(), hi: b.span.lo.clone() },
                    });
                }
            }
            out.push(CoverLevel { intervals: ivs, gaps });
        }
        Ok(Cover { levels: out })
    }

    pub fn level(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[CoverLevel] {
        &self.levels
    }

    /// Intervals of the deepest level.
    pub fn intervals(&self) -> &[BasicInterval] {
        &self.levels.last().unwrap().intervals
    }

    /// Gaps of the deepest level.
    pub fn gaps(&self) -> &[Gap] {
        &self.levels.last().unwrap().gaps
    }

    pub fn hull(&self) -> &Span {
        &self.levels[0].intervals[0].span
    }

    pub fn spans(&self) -> Vec<Span> {
        self.intervals().iter().map(|iv| iv.span.clone()).collect()
    }

    /// Ordered thickness of the finite construction, from endpoint midpoints.
    pub fn ordered_thickness(&self) -> Result<Option<BigRational>> {
        let h = self.hull();
        let gaps: Vec<(BigRational, BigRational)> = self
            .levels
            .iter()
            .flat_map(|l| l.gaps.iter())
            .map(|g| (g.span.lo.midpoint(), g.span.hi.midpoint()))
            .collect();
        thickness_ordered((h.lo.midpoint(), h.hi.midpoint()), &gaps)
    }

    /// The self-similar set with two pieces of ratio `r` in `[0, 1]`, `levels` deep.
    pub fn two_piece(r: &BigRational, levels: usize) -> Result<Cover> {
        if !(r > &int(0) && r < &BigRational::new(1.into(), 2.into())) {
            return Err(Error::InvalidArgument("ratio must lie in (0, 1/2)".into()));
        }
        let alphabet = Alphabet::new(1)?;
        let mut out = Vec::new();
        let mut cur = vec![(Vec::<u8>::new(), int(0), int(1))];
        for l in 0..=levels {
            out.push(
                cur.iter()
                    .map(|(t, a, b)| BasicInterval {
                        tail: t.clone(),
                        word: Word::new(t.clone(), alphabet).unwrap(),
                        span: Span { lo: CertifiedReal::exact(a.clone()), hi: CertifiedReal::exact(b.clone()) },
                    })
                    .collect(),
            );
            if l == levels {
                break;
            }
            let mut next = Vec::new();
            for (t, a, b) in &cur {
                let len = b - a;
                let piece = &len * r;
                let mut t0 = t.clone();
                t0.push(0);
                let mut t1 = t.clone();
                t1.push(1);
                next.push((t0, a.clone(), a + &piece));
                next.push((t1, b - &piece, b.clone()));
            }
            cur = next;
        }
        Cover::from_levels(out)
    }

    /// The middle-thirds Cantor set.
    pub fn middle_thirds(levels: usize) -> Result<Cover> {
        Cover::two_piece(&BigRational::new(1.into(), 3.into()), levels)
    }
}

// ---------------------------------------------------------------- enumeration

/// Number of admissible tails of length `n` (transfer matrix over run states).
pub fn count_omega(set: &RunLimitedSet, n: usize) -> BigUint {
    let limit = set.run_limit();
    let m = set.alphabet().m() as u64;
    // zeros[r] / maxes[r]: tails ending in a run of exactly r+1 zeros / Ms
    let mut zeros = vec![BigUint::zero(); limit - 1];
    let mut maxes = vec![BigUint::zero(); limit - 1];
    let mut other = BigUint::from(1u32);
    for _ in 0..n {
        let total: BigUint = zeros.iter().chain(maxes.iter()).fold(other.clone(), |a, b| a + b);
        let zsum: BigUint = zeros.iter().fold(BigUint::zero(), |a, b| a + b);
        let msum: BigUint = maxes.iter().fold(BigUint::zero(), |a, b| a + b);
        let mut nz = vec![BigUint::zero(); limit - 1];
        let mut nm = vec![BigUint::zero(); limit - 1];
        nz[0] = &total - &zsum;
        nm[0] = &total - &msum;
        nz[1..].clone_from_slice(&zeros[..limit - 2]);
        nm[1..].clone_from_slice(&maxes[..limit - 2]);
        other = total * BigUint::from(m - 1);
        zeros = nz;
        maxes = nm;
    }
    zeros.iter().chain(maxes.iter()).fold(other, |a, b| a + b)
}

fn push_tails(set: &RunLimitedSet, tail: &mut Vec<u8>, n: usize, out: &mut Vec<Vec<u8>>) {
    if tail.len() == n {
        out.push(tail.clone());
        return;
    }
    for d in 0..=set.alphabet().m() {
        tail.push(d);
        if set.admits(tail) {
            push_tails(set, tail, n, out);
        }
        tail.pop();
    }
}

/// All admissible tails of length `n`, lexicographically sorted.
pub fn omega_tails(set: &RunLimitedSet, n: usize, cap: u64) -> Result<Vec<Vec<u8>>> {
    let count = count_omega(set, n);
    if count > BigUint::from(cap) {
        return Err(Error::CapExceeded { cap, needed: count.to_string() });
    }
    let mut out = Vec::with_capacity(count.to_usize().unwrap_or(0));
    push_tails(set, &mut Vec::new(), n, &mut out);
    Ok(out)
}

/// All words of `Ω^n`: the fixed prefix followed by an admissible tail of length `n`.
pub fn enumerate_omega(set: &RunLimitedSet, n: usize, cap: u64) -> Result<Vec<Word>> {
    omega_tails(set, n, cap)?.into_iter().map(|t| set.word(&t)).collect()
}

// ---------------------------------------------------------------- covers

#[derive(Clone, Debug)]
pub struct CoverOptions {
    /// Requested endpoint tolerance; tightened automatically per level.
    pub tol: Option<BigRational>,
    pub enumeration_cap: u64,
    pub max_bits: u32,
}

impl Default for CoverOptions {
    fn default() -> Self {
        Self { tol: None, enumeration_cap: DEFAULT_ENUMERATION_CAP, max_bits: DEFAULT_MAX_BITS }
    }
}

/// Endpoint precision (bits) for words of length `word_len`: well below the
/// gap scale `q^-(|ω|+N)`.
pub fn auto_tol_bits(set: &RunLimitedSet, word_len: usize) -> u32 {
    let lg = (set.alphabet().base() as f64).log2();
    ((word_len + set.run_limit() + 3) as f64 * lg).ceil() as u32 + 40
}

fn level_tol(set: &RunLimitedSet, word_len: usize, opts: &CoverOptions) -> Result<BigRational> {
    let user = match &opts.tol {
        Some(t) => bits_for_tol(t)?,
        None => 60,
    };
    let bits = user.max(auto_tol_bits(set, word_len));
    if bits > opts.max_bits {
        return Err(Error::PrecisionExhausted { bits: opts.max_bits, context: format!("cover needs {bits}-bit endpoints") });
    }
    Ok(pow2(-(bits as i64)))
}

/// Basic interval of one tail, solved inside `bracket`.
pub fn basic_interval(
    set: &RunLimitedSet,
    tail: &[u8],
    bracket: (&BigRational, &BigRational),
    opts: &CoverOptions,
) -> Result<BasicInterval> {
    let word = set.word(tail)?;
    let tol = level_tol(set, word.len(), opts)?;
    let (lo, hi) = interval_endpoints_in(set, tail, bracket, &tol, SolveOptions { max_bits: opts.max_bits })?;
    Ok(BasicInterval { tail: tail.to_vec(), word, span: Span { lo, hi } })
}

/// Levels `0..=n` of the cover of the set.
pub fn build_cover(set: &RunLimitedSet, n: usize, opts: &CoverOptions) -> Result<Cover> {
    let top = int(set.alphabet().base() as i64);
    let root = basic_interval(set, &[], (&bracket_floor(), &top), opts)?;
    let mut levels = vec![vec![root]];
    for l in 1..=n {
        let count = count_omega(set, l);
        if count > BigUint::from(opts.enumeration_cap) {
            return Err(Error::CapExceeded { cap: opts.enumeration_cap, needed: count.to_string() });
        }
        let parents = levels.last().unwrap();
        let jobs: Vec<(usize, Vec<u8>)> = parents
            .iter()
            .enumerate()
            .flat_map(|(i, p)| {
                (0..=set.alphabet().m()).filter_map(move |d| {
                    let mut t = p.tail.clone();
                    t.push(d);
                    set.admits(&t).then_some((i, t))
                })
            })
            .collect();
        let children: Vec<BasicInterval> = jobs
            .par_iter()
            .map(|(i, t)| {
                let p = &parents[*i].span;
                basic_interval(set, t, (p.lo.lo(), p.hi.hi()), opts)
            })
            .collect::<Result<_>>()?;
        levels.push(children);
    }
    Cover::from_levels(levels)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::expansion::{generalized_golden_ratio, is_univoque_point, UnivoqueStatus};
    use crate::real::rat;

    fn a(m: u32) -> Alphabet {
        Alphabet::new(m).unwrap()
    }

    fn brute_count(set: &RunLimitedSet, n: usize) -> usize {
        let b = set.alphabet().base() as usize;
        (0..b.pow(n as u32))
            .filter(|&mut_v| {
                let mut v = mut_v;
                let t: Vec<u8> = (0..n)
                    .map(|_| {
                        let d = (v % b) as u8;
                        v /= b;
                        d
                    })
                    .collect();
                set.admits(&t)
            })
            .count()
    }

    #[test]
    fn enumeration_counts() {
        let s = RunLimitedSet::lemma(&rat(1, 2), a(1), 2).unwrap();
        let w = enumerate_omega(&s, 0, 10).unwrap();
        assert_eq!(w.len(), 1);
        assert_eq!(w[0].digits(), s.prefix());
        assert_eq!(enumerate_omega(&s, 1, 10).unwrap().len(), 2);
        for (m, x, j) in [(1u32, rat(1, 2), 2usize), (2, rat(1, 3), 1), (3, rat(1, 4), 2)] {
            let s = RunLimitedSet::lemma(&x, a(m), j).unwrap();
            for n in 0..=7 {
                assert_eq!(count_omega(&s, n), BigUint::from(brute_count(&s, n)), "M={m} n={n}");
                if n < s.run_limit() {
                    assert_eq!(count_omega(&s, n), BigUint::from((m as usize + 1).pow(n as u32)));
                }
            }
        }
        let words = enumerate_omega(&s, 5, 1000).unwrap();
        assert!(words.windows(2).all(|w| w[0] < w[1]));
        assert!(matches!(enumerate_omega(&s, 20, 100), Err(Error::CapExceeded { .. })));
    }

    #[test]
    fn cover_is_sound() {
        let s = RunLimitedSet::lemma(&rat(1, 2), a(1), 2).unwrap();
        let c = build_cover(&s, 2, &CoverOptions::default()).unwrap();
        assert_eq!(c.level(), 2);
        assert_eq!(c.levels()[0].intervals.len(), 1);
        for l in 1..=2 {
            let lev = &c.levels()[l];
            assert_eq!(lev.intervals.len(), count_omega(&s, l).to_usize().unwrap());
            // one gap per consecutive sibling pair
            for p in &c.levels()[l - 1].intervals {
                let kids = lev.intervals.iter().filter(|iv| iv.tail[..l - 1] == p.tail[..]).count();
                let gaps = lev.gaps.iter().filter(|g| lev.intervals[g.left].tail[..l - 1] == p.tail[..]).count();
                assert_eq!(gaps, kids - 1);
            }
        }
        let g = generalized_golden_ratio(a(1));
        assert!(c.hull().lo.lo() > g.hi());
    }

    #[test]
    fn endpoints_are_univoque() {
        let s = RunLimitedSet::lemma(&rat(1, 2), a(1), 2).unwrap();
        let c = build_cover(&s, 1, &CoverOptions::default()).unwrap();
        let x = CertifiedReal::exact(rat(1, 2));
        for iv in c.intervals() {
            for e in [&iv.span.lo, &iv.span.hi] {
                let e = e.refine(300).unwrap();
                let st = is_univoque_point(&x, &e, a(1), 64).unwrap();
                assert_ne!(st, UnivoqueStatus::NotUnique);
            }
        }
    }

    #[test]
    fn synthetic_covers() {
        let c = Cover::middle_thirds(3).unwrap();
        assert_eq!(c.intervals().len(), 8);
        assert_eq!(c.gaps().len(), 4);
        assert_eq!(c.hull().hi.exact_value(), Some(&int(1)));
    }
}
