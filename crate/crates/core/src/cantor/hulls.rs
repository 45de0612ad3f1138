use num_rational::BigRational;
use num_traits::Signed;

use super::{basic_interval, CoverOptions};
use crate::error::{Error, Result};
use crate::expansion::generalized_golden_ratio;
use crate::real::{int, CertifiedReal, RationalInterval};
use crate::solver::{bracket_floor, RunLimitedSet};
use crate::symbolic::Alphabet;

/// Convex hull `[α_j, β_j]` of the run-limited set with run limit `2^j`.
#[derive(Clone, Debug)]
pub struct HullEntry {
    pub j: u32,
    pub alpha: CertifiedReal,
    pub beta: CertifiedReal,
}

/// The three hull bounds and the gap ratio for one `j`, using the next hull.
#[derive(Clone, Debug)]
pub struct HullCheck {
    pub j: u32,
    /// `α_{j+1} - β_j ≤ C0 / α_{j+1}^(2^{j+1} + 2^j)`
    pub upper: bool,
    /// `β_j - α_j ≥ C1 / α_{j+1}^(2^j)`
    pub lower_1: bool,
    /// `M+1 - α_{j+1} ≥ C2 / α_{j+1}^(2^{j+1})`
    pub lower_2: bool,
    /// `min((β_j - α_j), (M+1 - α_{j+1})) / (α_{j+1} - β_j)`
    pub min_ratio: RationalInterval,
}

impl HullCheck {
    pub fn all_ok(&self) -> bool {
        self.upper && self.lower_1 && self.lower_2
    }
}

#[derive(Clone, Debug)]
pub struct HullSequence {
    pub alphabet: Alphabet,
    /// Entries for `j_min..=j_max + 1`.
    pub entries: Vec<HullEntry>,
    /// Checks for `j_min..=j_max`.
    pub checks: Vec<HullCheck>,
}

impl HullSequence {
    /// Whether the gap ratios certainly increase with `j`.
    pub fn ratios_increasing(&self) -> bool {
        self.checks.windows(2).all(|w| w[0].min_ratio.certainly_lt(&w[1].min_ratio))
    }
}

/// Solves the hulls for `j_min..=j_max + 1` and checks ordering and bounds.
pub fn build_hulls(
    x: &BigRational,
    alphabet: Alphabet,
    j_min: u32,
    j_max: u32,
    opts: &CoverOptions,
) -> Result<HullSequence> {
    if j_min > j_max {
        return Err(Error::InvalidArgument("j_min > j_max".into()));
    }
    let top = int(alphabet.base() as i64);
    let mut entries = Vec::new();
    let mut ms = 0;
    for j in j_min..=j_max + 1 {
        let set = RunLimitedSet::dyadic(x, alphabet, j)?;
        ms = set.dm().m() as i64;
        let iv = basic_interval(&set, &[], (&bracket_floor(), &top), opts)?;
        // hull gaps shrink like (M+1)^-(3·2^j), finer than the cover default
        let bits = super::auto_tol_bits(&set, 2 * set.prefix().len() + set.run_limit());
        let refine = |r: &CertifiedReal| r.refine(bits.min(opts.max_bits));
        entries.push(HullEntry { j, alpha: refine(&iv.span.lo)?, beta: refine(&iv.span.hi)? });
    }
    for w in entries.windows(2) {
        if !(w[0].alpha.hi() < w[0].beta.lo() && w[0].beta.hi() < w[1].alpha.lo()) {
            return Err(Error::Ordering(format!("hulls at j = {} and {} are not interleaved", w[0].j, w[1].j)));
        }
    }
    let m = alphabet.m() as i64;
    let qg = generalized_golden_ratio(alphabet).refine(160)?.bounds();
    let qg1 = qg.sub(&RationalInterval::point(int(1)));
    let base = RationalInterval::point(int(m + 1));
    let inv_pow = base.powi(-(ms + 1))?;
    let c0 = RationalInterval::point(int(2 * (m + 1).pow(3))).div(&qg1)?;
    let c1 = qg1.mul(&qg1).mul(&inv_pow);
    let c2 = qg1.scale(&int(m)).mul(&inv_pow);
    let mut checks = Vec::new();
    for w in entries.windows(2) {
        let (e, n) = (&w[0], &w[1]);
        let p = 1i64 << e.j;
        let a1 = n.alpha.bounds().round_out(128);
        let gap = n.alpha.bounds().sub(&e.beta.bounds());
        if !gap.lo.is_positive() {
            return Err(Error::Uncertified(format!("hull gap at j = {}", e.j)));
        }
        let width = e.beta.bounds().sub(&e.alpha.bounds());
        let tail = base.sub(&n.alpha.bounds());
        let upper = gap.certainly_le(&c0.mul(&a1.powi(-(2 * p + p))?));
        let lower_1 = c1.mul(&a1.powi(-p)?).certainly_le(&width);
        let lower_2 = c2.mul(&a1.powi(-2 * p)?).certainly_le(&tail);
        let min_ratio = width.div(&gap)?.min(&tail.div(&gap)?).round_out(96);
        checks.push(HullCheck { j: e.j, upper, lower_1, lower_2, min_ratio });
    }
    Ok(HullSequence { alphabet, entries, checks })
}
