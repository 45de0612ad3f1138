use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::{basic_interval, auto_tol_bits, Cover, CoverOptions, Span};
use crate::error::{Error, Result};
use crate::real::int;
use crate::solver::{bracket_floor, RunLimitedSet};
use crate::symbolic::Word;

/// Pairwise intersections of two sorted interval lists (sweep). Only
/// intersections certified nonempty are returned.
pub fn intersect_spans(a: &[Span], b: &[Span]) -> Vec<Span> {
    let (mut i, mut j) = (0, 0);
    let mut out = Vec::new();
    while i < a.len() && j < b.len() {
        let lo = if a[i].lo.midpoint() >= b[j].lo.midpoint() { &a[i].lo } else { &b[j].lo };
        let hi = if a[i].hi.midpoint() <= b[j].hi.midpoint() { &a[i].hi } else { &b[j].hi };
        if lo.hi() < hi.lo() {
            out.push(Span { lo: lo.clone(), hi: hi.clone() });
        }
        if a[i].hi.midpoint() < b[j].hi.midpoint() {
            i += 1;
        } else {
            j += 1;
        }
    }
    out
}

/// Intersections of the deepest levels of two covers.
pub fn intersect_covers(a: &Cover, b: &Cover) -> Vec<Span> {
    intersect_spans(&a.spans(), &b.spans())
}

/// A cell shared by basic intervals of several sets.
#[derive(Clone, Debug)]
pub struct CommonCell {
    /// One word per set.
    pub words: Vec<Word>,
    /// The intersection of their basic intervals.
    pub span: Span,
}

struct Node {
    tail: Vec<u8>,
    word_len: usize,
    span: Span,
}

fn overlap(nodes: &[Node]) -> Option<Span> {
    let lo = nodes.iter().map(|n| &n.span.lo).max_by(|a, b| a.midpoint().cmp(&b.midpoint()))?;
    let hi = nodes.iter().map(|n| &n.span.hi).min_by(|a, b| a.midpoint().cmp(&b.midpoint()))?;
    (lo.hi() < hi.lo()).then(|| Span { lo: lo.clone(), hi: hi.clone() })
}

fn descend(
    sets: &[RunLimitedSet],
    nodes: &mut Vec<Node>,
    depth: usize,
    opts: &CoverOptions,
    budget: &mut usize,
) -> Result<Option<CommonCell>> {
    let Some(span) = overlap(nodes) else { return Ok(None) };
    // refine the shallowest word first
    let (k, shallow) = nodes.iter().enumerate().min_by_key(|(_, n)| n.word_len).unwrap();
    if shallow.word_len >= depth {
        let words = nodes.iter().zip(sets).map(|(n, s)| s.word(&n.tail)).collect::<Result<_>>()?;
        return Ok(Some(CommonCell { words, span }));
    }
    if *budget == 0 {
        return Ok(None);
    }
    *budget -= 1;
    let set = &sets[k];
    let parent = (nodes[k].span.lo.lo().clone(), nodes[k].span.hi.hi().clone());
    for d in (0..=set.alphabet().m()).rev() {
        let mut tail = nodes[k].tail.clone();
        tail.push(d);
        if !set.admits(&tail) {
            continue;
        }
        let iv = basic_interval(set, &tail, (&parent.0, &parent.1), opts)?;
        let saved = std::mem::replace(&mut nodes[k], Node { tail, word_len: iv.word.len(), span: iv.span });
        let found = descend(sets, nodes, depth, opts, budget)?;
        nodes[k] = saved;
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// Depth-first search, rightmost branches first, for basic intervals of every
/// set (words of length at least `depth`) with a certified common overlap.
pub fn find_common_cell(sets: &[RunLimitedSet], depth: usize, opts: &CoverOptions) -> Result<Option<CommonCell>> {
    if sets.is_empty() {
        return Err(Error::InvalidArgument("no sets given".into()));
    }
    let mut nodes = Vec::with_capacity(sets.len());
    for s in sets {
        let top = int(s.alphabet().base() as i64);
        let iv = basic_interval(s, &[], (&bracket_floor(), &top), opts)?;
        nodes.push(Node { tail: Vec::new(), word_len: iv.word.len(), span: iv.span });
    }
    let mut budget = 100_000;
    descend(sets, &mut nodes, depth, opts, &mut budget)
}

#[derive(Clone, Debug)]
pub struct SumImage {
    /// Longest interval covered by `a + λ b` up to holes of at most `resolution`.
    pub covered: Option<(BigRational, BigRational)>,
    /// Holes wider than `resolution` inside the hull of the image.
    pub holes: Vec<(BigRational, BigRational)>,
    pub pieces: usize,
}

/// Union of `{p + λq : p ∈ I, q ∈ J}` over interval pairs, using inner
/// enclosures so that covered stretches are certified.
pub fn sum_image_check(a: &[Span], b: &[Span], lambda: &BigRational, resolution: &BigRational) -> Result<SumImage> {
    if lambda.is_zero() {
        return Err(Error::InvalidArgument("λ must be nonzero".into()));
    }
    if resolution.is_negative() {
        return Err(Error::InvalidArgument("resolution must be nonnegative".into()));
    }
    let mut pieces: Vec<(BigRational, BigRational)> = Vec::with_capacity(a.len() * b.len());
    for p in a {
        for q in b {
            let (q_lo, q_hi) = if lambda.is_positive() {
                (q.lo.hi() * lambda, q.hi.lo() * lambda)
            } else {
                (q.hi.lo() * lambda, q.lo.hi() * lambda)
            };
            let lo = p.lo.hi() + q_lo;
            let hi = p.hi.lo() + q_hi;
            if lo <= hi {
                pieces.push((lo, hi));
            }
        }
    }
    pieces.sort();
    let n = pieces.len();
    let mut runs: Vec<(BigRational, BigRational)> = Vec::new();
    let mut holes = Vec::new();
    for (lo, hi) in pieces {
        match runs.last_mut() {
            Some(cur) if &lo - &cur.1 <= *resolution => {
                if hi > cur.1 {
                    cur.1 = hi;
                }
            }
            Some(cur) => {
                holes.push((cur.1.clone(), lo.clone()));
                runs.push((lo, hi));
            }
            None => runs.push((lo, hi)),
        }
    }
    let covered = runs.into_iter().max_by(|x, y| (&x.1 - &x.0).cmp(&(&y.1 - &y.0)));
    Ok(SumImage { covered, holes, pieces: n })
}

/// Word length at which cells of the set are resolved to `bits` bits.
pub fn depth_for_bits(set: &RunLimitedSet, bits: u32) -> usize {
    let mut d = set.prefix().len();
    while auto_tol_bits(set, d) < bits {
        d += 1;
    }
    d
}
