use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{Cover, Span};
use crate::error::{Error, Result};
use crate::expansion::generalized_golden_ratio;
use crate::real::{int, ln_biguint, to_f64, CertifiedReal, RationalInterval};
use crate::solver::RunLimitedSet;
use crate::symbolic::{Alphabet, Word};

// ratios and bounds are kept on a 2^-96 grid; plenty next to the margins involved
const GRID: u32 = 96;

fn positive_gap(g: &Span) -> Result<RationalInterval> {
    let len = g.length();
    if !len.lo.is_positive() {
        return Err(Error::Uncertified("gap length not certified positive".into()));
    }
    Ok(len)
}

/// `min(|left|/|G|, |right|/|G|)` for one gap.
fn gap_ratio(left: &Span, gap: &Span, right: &Span) -> Result<RationalInterval> {
    let g = positive_gap(gap)?;
    let l = left.length().div(&g)?;
    let r = right.length().div(&g)?;
    Ok(l.min(&r).round_out(GRID))
}

/// Levelwise `min |I|/|G|` over sibling gaps; `None` for levels without gaps.
pub fn thickness_star_by_level(cover: &Cover) -> Result<Vec<Option<RationalInterval>>> {
    cover
        .levels()
        .iter()
        .map(|lev| {
            let mut best: Option<RationalInterval> = None;
            for g in &lev.gaps {
                let r = gap_ratio(&lev.intervals[g.left].span, &g.span, &lev.intervals[g.left + 1].span)?;
                best = Some(match best {
                    Some(b) => b.min(&r),
                    None => r,
                });
            }
            Ok(best)
        })
        .collect()
}

/// Thickness through the cover's deepest level: the minimum of all sibling
/// ratios up to that level (an upper estimate of the infinite infimum).
pub fn thickness_star(cover: &Cover) -> Result<CertifiedReal> {
    let best = thickness_star_by_level(cover)?
        .into_iter()
        .flatten()
        .reduce(|a, b| a.min(&b))
        .ok_or_else(|| Error::InvalidArgument("cover has no gaps".into()))?;
    CertifiedReal::enclosure(best.lo, best.hi)
}

/// Thickness with respect to the ordered derived sequence of a finite
/// construction. `None` means no gaps (infinite thickness).
pub fn thickness_ordered(
    hull: (BigRational, BigRational),
    gaps: &[(BigRational, BigRational)],
) -> Result<Option<BigRational>> {
    let (h0, h1) = hull;
    if h0 >= h1 {
        return Err(Error::InvalidArgument("empty hull".into()));
    }
    let mut order: Vec<&(BigRational, BigRational)> = gaps.iter().collect();
    for g in &order {
        if g.0 >= g.1 || g.0 <= h0 || g.1 >= h1 {
            return Err(Error::InvalidArgument(format!("gap ({}, {}) is empty or leaves the hull", g.0, g.1)));
        }
    }
    order.sort_by(|a, b| (&b.1 - &b.0).cmp(&(&a.1 - &a.0)).then_with(|| a.0.cmp(&b.0)));
    let mut comps: BTreeMap<BigRational, BigRational> = BTreeMap::new();
    comps.insert(h0, h1);
    let mut best: Option<BigRational> = None;
    for (lo, hi) in order {
        let (c0, c1) = comps
            .range(..=lo.clone())
            .next_back()
            .map(|(a, b)| (a.clone(), b.clone()))
            .filter(|(a, b)| a < lo && hi < b)
            .ok_or_else(|| Error::InvalidArgument(format!("gap ({lo}, {hi}) overlaps another gap")))?;
        let len = hi - lo;
        let t = (lo - &c0).min(&c1 - hi) / len;
        best = Some(match best {
            Some(b) if b <= t => b,
            _ => t,
        });
        comps.insert(c0, lo.clone());
        comps.insert(hi.clone(), c1);
    }
    Ok(best)
}

/// Dimension lower bound `log 2 / log(2 + 1/τ)`.
pub fn newhouse_dim_bound(tau: &BigRational) -> Result<f64> {
    if !tau.is_positive() {
        return Err(Error::InvalidArgument("thickness must be positive".into()));
    }
    Ok(2f64.ln() / (2.0 + to_f64(&tau.recip())).ln())
}

#[derive(Clone, Debug)]
pub struct MoranEstimate {
    /// `Σ_{k≤n} log #D_k / (Σ_{k≤n} m_k · log(M+1))` for each `n`.
    pub partials: Vec<f64>,
    pub value: f64,
}

/// Symbolic dimension of a homogeneous Moran construction with `counts[k]`
/// admissible blocks of length `lengths[k]` at stage `k`.
pub fn moran_dim_estimate(counts: &[BigUint], lengths: &[u64], alphabet: Alphabet) -> Result<MoranEstimate> {
    if counts.is_empty() || counts.len() != lengths.len() {
        return Err(Error::InvalidArgument("counts and lengths must be nonempty and of equal length".into()));
    }
    let lb = (alphabet.base() as f64).ln();
    let (mut num, mut den) = (0.0, 0.0);
    let mut partials = Vec::with_capacity(counts.len());
    for (c, &m) in counts.iter().zip(lengths) {
        if c.is_zero() || m == 0 {
            return Err(Error::InvalidArgument("counts and lengths must be positive".into()));
        }
        num += ln_biguint(c);
        den += m as f64 * lb;
        partials.push(num / den);
    }
    Ok(MoranEstimate { value: *partials.last().unwrap(), partials })
}

/// The explicit gap/interval/ratio bounds, checked on one pair of siblings
/// `I_{ωd} = [q1, q2]`, `I_{ω(d+1)} = [q3, q4]` with gap `(q2, q3)`.
#[derive(Clone, Debug)]
pub struct SiblingCheck {
    pub level: usize,
    pub left: Word,
    pub right: Word,
    pub gap: RationalInterval,
    pub left_len: RationalInterval,
    pub right_len: RationalInterval,
    pub ratio: RationalInterval,
    /// `|G| < 4 / q3^(n + N - ℓ)`
    pub gap_upper: bool,
    /// `|I_{ωd}| ≥ (q_G-1)^2 / (M q2^(n+3))`
    pub left_lower: bool,
    /// `|I_{ω(d+1)}| ≥ (q_G-1)^2 / (M q3^(n+3))`
    pub right_lower: bool,
    /// `ratio ≥ (q_G-1)^2/(4M) · q3^(N-ℓ-3)`
    pub ratio_lower: bool,
    /// Certified lower bound of the ratio side (for reporting).
    pub ratio_bound: BigRational,
}

impl SiblingCheck {
    pub fn all_ok(&self) -> bool {
        self.gap_upper && self.left_lower && self.right_lower && self.ratio_lower
    }
}

/// `c · q^e` as an interval, `q` positive.
fn c_pow(c: &RationalInterval, q: &RationalInterval, e: i64) -> Result<RationalInterval> {
    Ok(c.mul(&q.round_out(GRID).powi(e)?).round_out(GRID + 32))
}

/// Runs the sibling bounds over every gap of the cover. Here `n` is `|ω|`
/// (the parent word length) and `ℓ` the position of the first nonzero digit.
pub fn sibling_checks(set: &RunLimitedSet, cover: &Cover) -> Result<Vec<SiblingCheck>> {
    let m = set.alphabet().m() as i64;
    let big_n = set.run_limit() as i64;
    let ell = set.lead() as i64;
    let qg = generalized_golden_ratio(set.alphabet()).refine(160)?.bounds();
    let qg1 = qg.sub(&RationalInterval::point(int(1)));
    let k = qg1.mul(&qg1);
    let k_m = k.scale(&BigRational::new(1.into(), m.into()));
    let k_4m = k.scale(&BigRational::new(1.into(), (4 * m).into()));
    let four = RationalInterval::point(int(4));
    let mut out = Vec::new();
    for (l, lev) in cover.levels().iter().enumerate() {
        for g in &lev.gaps {
            let (li, ri) = (&lev.intervals[g.left], &lev.intervals[g.left + 1]);
            let n = (li.word.len() - 1) as i64;
            let q2 = li.span.hi.bounds();
            let q3 = ri.span.lo.bounds();
            let gap = positive_gap(&g.span)?;
            let left_len = li.span.length();
            let right_len = ri.span.length();
            let ratio = gap_ratio(&li.span, &g.span, &ri.span)?;
            let gap_ub = c_pow(&four, &q3, -(n + big_n - ell))?;
            let left_lb = c_pow(&k_m, &q2, -(n + 3))?;
            let right_lb = c_pow(&k_m, &q3, -(n + 3))?;
            let ratio_lb = c_pow(&k_4m, &q3, big_n - ell - 3)?;
            out.push(SiblingCheck {
                level: l,
                left: li.word.clone(),
                right: ri.word.clone(),
                gap_upper: gap.certainly_lt(&gap_ub),
                left_lower: left_lb.certainly_le(&left_len),
                right_lower: right_lb.certainly_le(&right_len),
                ratio_lower: ratio_lb.certainly_le(&ratio),
                ratio_bound: ratio_lb.hi,
                gap,
                left_len,
                right_len,
                ratio,
            });
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cantor::{build_cover, CoverOptions};
    use crate::real::rat;

    #[test]
    fn middle_thirds_thickness() {
        let c = Cover::middle_thirds(4).unwrap();
        let t = thickness_star(&c).unwrap();
        assert_eq!(t.exact_value(), Some(&int(1)));
        assert_eq!(c.ordered_thickness().unwrap(), Some(int(1)));
    }

    #[test]
    fn ordered_single_gap() {
        let t = thickness_ordered((int(0), int(1)), &[(rat(1, 5), rat(1, 2))]).unwrap();
        assert_eq!(t, Some(rat(1, 5) / rat(3, 10)));
        assert_eq!(thickness_ordered((int(0), int(1)), &[]).unwrap(), None);
        assert!(thickness_ordered((int(0), int(1)), &[(rat(1, 5), rat(1, 2)), (rat(2, 5), rat(3, 5))]).is_err());
    }

    #[test]
    fn self_similar_ordered() {
        for r in [rat(1, 3), rat(1, 4), rat(2, 5)] {
            let c = Cover::two_piece(&r, 4).unwrap();
            let want = &r / (int(1) - &r * int(2));
            assert_eq!(c.ordered_thickness().unwrap(), Some(want.clone()));
            assert_eq!(thickness_star(&c).unwrap().exact_value(), Some(&want));
        }
    }

    #[test]
    fn newhouse_values() {
        assert!((newhouse_dim_bound(&int(1)).unwrap() - 2f64.ln() / 3f64.ln()).abs() < 1e-12);
        assert!((newhouse_dim_bound(&rat(1, 2)).unwrap() - 0.5).abs() < 1e-12);
        let a = newhouse_dim_bound(&int(1000)).unwrap();
        let b = newhouse_dim_bound(&int(1_000_000)).unwrap();
        assert!(a < b && b < 1.0);
        assert!(newhouse_dim_bound(&int(0)).is_err());
    }

    #[test]
    fn moran_values() {
        let a = Alphabet::new(2).unwrap();
        let full = moran_dim_estimate(&[BigUint::from(9u32), BigUint::from(27u32)], &[2, 3], a).unwrap();
        assert!((full.value - 1.0).abs() < 1e-12);
        let one = moran_dim_estimate(&vec![BigUint::from(1u32); 3], &[1, 2, 3], a).unwrap();
        assert_eq!(one.value, 0.0);
        assert!(moran_dim_estimate(&[], &[], a).is_err());
    }

    #[test]
    fn sibling_bounds_hold() {
        let a = Alphabet::new(1).unwrap();
        let s = RunLimitedSet::lemma(&rat(1, 2), a, 3).unwrap();
        let c = build_cover(&s, 2, &CoverOptions::default()).unwrap();
        let checks = sibling_checks(&s, &c).unwrap();
        assert!(!checks.is_empty());
        for ch in &checks {
            assert!(ch.all_ok(), "{:?}", ch);
        }
        let t = thickness_star(&c).unwrap();
        let ord = c.ordered_thickness().unwrap().unwrap();
        assert!(ord >= t.lo() - crate::real::pow2(-60));
    }
}
