//! Block constructions with prescribed digit statistics: simply normal blocks
//! `D_{j,k}` and irregular blocks `Δ_{j,k}`, their counts, seeded samplers,
//! frequency checkpoints and the resulting dimension lower bounds.

use std::collections::BTreeMap;

use num_bigint::{BigUint, RandBigInt};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::real::{int, ln_biguint, pow2, to_f64, CertifiedReal};
use crate::solver::{interval_endpoints, RunLimitedSet};
use crate::symbolic::{digit_count, Alphabet, Word};

/// Digit counts `(n_0, …, n_M)` of a block of length `len`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct FreqVector {
    counts: Vec<u64>,
    len: u64,
}

impl FreqVector {
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    fn add(&self, o: &Self) -> Self {
        Self { counts: self.counts.iter().zip(&o.counts).map(|(a, b)| a + b).collect(), len: self.len + o.len }
    }

    fn of(word: &[u8], alphabet: Alphabet) -> Self {
        let counts = (0..=alphabet.m()).map(|b| digit_count(word, b) as u64).collect();
        Self { counts, len: word.len() as u64 }
    }
}

fn check_run_limit(alphabet: Alphabet, run_limit: usize) -> Result<()> {
    if run_limit <= 6 * alphabet.m() as usize {
        return Err(Error::InvalidArgument(format!("run limit {run_limit} must exceed 6M = {}", 6 * alphabet.m() as usize)));
    }
    Ok(())
}

/// `m_k = 2^k (M+1) ⌊N/3⌋`.
pub fn block_length(alphabet: Alphabet, run_limit: usize, k: u32) -> Result<u64> {
    check_run_limit(alphabet, run_limit)?;
    Ok((1u64 << k) * alphabet.base() as u64 * (run_limit as u64 / 3))
}

/// The `2^M` admissible count vectors of length `m`: each of the first `M`
/// digits occurs `m/(M+1)` or `m/(M+1) - 1` times, the last digit fills up.
pub fn freq_vectors(alphabet: Alphabet, m: u64) -> Result<Vec<FreqVector>> {
    let base = alphabet.base() as u64;
    let mm = alphabet.m() as u32;
    if m == 0 || m % base != 0 {
        return Err(Error::InvalidArgument(format!("block length {m} is not a positive multiple of {base}")));
    }
    let avg = m / base;
    let mut out = Vec::with_capacity(1 << mm);
    for mask in 0u32..(1 << mm) {
        let mut counts: Vec<u64> = (0..mm).map(|b| avg - ((mask >> b) & 1) as u64).collect();
        counts.push(m - counts.iter().sum::<u64>());
        let v = FreqVector { counts, len: m };
        // |n_b/m - 1/(M+1)| ≤ M/m for every digit
        debug_assert!(v.counts.iter().all(|&c| (c as i64 * base as i64 - m as i64).unsigned_abs() <= mm as u64 * base));
        out.push(v);
    }
    out.sort();
    Ok(out)
}

/// Multinomial coefficient `m! / ∏ n_b!`.
pub fn multinomial(v: &FreqVector) -> BigUint {
    let mut r = BigUint::one();
    let mut n = 0u64;
    for &c in &v.counts {
        for i in 1..=c {
            n += 1;
            r = r * BigUint::from(n) / BigUint::from(i);
        }
    }
    r
}

fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [(T, BigUint)]) -> &'a T {
    let total: BigUint = items.iter().map(|(_, w)| w).sum();
    let mut r = rng.gen_biguint_below(&total);
    for (t, w) in items {
        if &r < w {
            return t;
        }
        r -= w;
    }
    unreachable!("weights sum to the total")
}

/// The simply normal block sets `D_{j,0}, D_{j,1}, …` for one run limit,
/// tracked by exact member counts per digit-count vector.
#[derive(Clone, Debug)]
pub struct SimplyNormalBlocks {
    alphabet: Alphabet,
    run_limit: usize,
    levels: Vec<BTreeMap<FreqVector, BigUint>>,
}

/// Full enumeration or, above the caps, the exact count with its lower bound.
#[derive(Clone, Debug)]
pub enum BlockSet {
    Words(Vec<Vec<u8>>),
    Count { exact: BigUint, lower_bound: BigUint },
}

impl SimplyNormalBlocks {
    pub fn new(alphabet: Alphabet, run_limit: usize) -> Result<Self> {
        let m0 = block_length(alphabet, run_limit, 0)?;
        let level0 = freq_vectors(alphabet, m0)?.into_iter().map(|v| {
            let c = multinomial(&v);
            (v, c)
        });
        Ok(Self { alphabet, run_limit, levels: vec![level0.collect()] })
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    pub fn run_limit(&self) -> usize {
        self.run_limit
    }

    pub fn block_length(&self, k: u32) -> u64 {
        block_length(self.alphabet, self.run_limit, k).unwrap()
    }

    fn ensure(&mut self, k: u32) {
        while self.levels.len() <= k as usize {
            let prev = self.levels.last().unwrap();
            let m = prev.keys().next().unwrap().len * 2;
            let mut next = BTreeMap::new();
            for v in freq_vectors(self.alphabet, m).unwrap() {
                let mut c = BigUint::zero();
                for (a, ca) in prev {
                    for (b, cb) in prev {
                        if a.add(b) == v {
                            c += ca * cb;
                        }
                    }
                }
                next.insert(v, c);
            }
            self.levels.push(next);
        }
    }

    /// Exact `#D_{j,k}`.
    pub fn count(&mut self, k: u32) -> BigUint {
        self.ensure(k);
        self.levels[k as usize].values().sum()
    }

    /// `2^M (min_n multinomial(m_0; n))^(2^k)`.
    pub fn lower_bound(&self, k: u32) -> BigUint {
        let min = self.levels[0].values().min().unwrap().clone();
        BigUint::from(1u32 << self.alphabet.m()) * num_traits::pow(min, 1usize << k)
    }

    /// The minimizing vector `n*` for `D_{j,0}` and its multinomial.
    pub fn min_multinomial(&self) -> (FreqVector, BigUint) {
        let (v, c) = self.levels[0].iter().min_by(|a, b| a.1.cmp(b.1)).unwrap();
        (v.clone(), c.clone())
    }

    /// Lists `D_{j,k}` (sorted) when it has at most `cap` members and the
    /// pair filter needs at most `filter_cap` candidates; else counts.
    pub fn enumerate_or_count(&mut self, k: u32, cap: u64, filter_cap: u64) -> Result<BlockSet> {
        let exact = self.count(k);
        let fallback = |s: &Self, exact: BigUint| BlockSet::Count { exact, lower_bound: s.lower_bound(k) };
        if exact > BigUint::from(cap) {
            return Ok(fallback(self, exact));
        }
        let mut words = self.enumerate_level0();
        for kk in 1..=k {
            let n = words.len() as u64;
            if n.saturating_mul(n) > filter_cap {
                return Ok(fallback(self, exact));
            }
            let allowed: std::collections::HashSet<FreqVector> = self.levels[kk as usize].keys().cloned().collect();
            let tagged: Vec<(FreqVector, &Vec<u8>)> = words.iter().map(|w| (FreqVector::of(w, self.alphabet), w)).collect();
            let mut next = Vec::new();
            for (va, a) in &tagged {
                for (vb, b) in &tagged {
                    if allowed.contains(&va.add(vb)) {
                        let mut w = (*a).clone();
                        w.extend_from_slice(b);
                        next.push(w);
                    }
                }
            }
            words = next;
        }
        words.sort();
        Ok(BlockSet::Words(words))
    }

    fn enumerate_level0(&self) -> Vec<Vec<u8>> {
        fn rec(rem: &mut [u64], cur: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
            if rem.iter().all(|&c| c == 0) {
                out.push(cur.clone());
                return;
            }
            for b in 0..rem.len() {
                if rem[b] > 0 {
                    rem[b] -= 1;
                    cur.push(b as u8);
                    rec(rem, cur, out);
                    cur.pop();
                    rem[b] += 1;
                }
            }
        }
        let mut out = Vec::new();
        for v in self.levels[0].keys() {
            rec(&mut v.counts.clone(), &mut Vec::new(), &mut out);
        }
        out.sort();
        out
    }

    /// A uniformly random member of `D_{j,k}`.
    pub fn sample(&mut self, k: u32, rng: &mut ChaCha8Rng) -> Vec<u8> {
        self.ensure(k);
        let items: Vec<(FreqVector, BigUint)> = self.levels[k as usize].iter().map(|(v, c)| (v.clone(), c.clone())).collect();
        let v = pick(rng, &items).clone();
        self.sample_with(k, &v, rng)
    }

    // uniform among members of D_{j,k} with count vector v
    fn sample_with(&self, k: u32, v: &FreqVector, rng: &mut ChaCha8Rng) -> Vec<u8> {
        if k == 0 {
            let mut w: Vec<u8> = v.counts.iter().enumerate().flat_map(|(b, &c)| std::iter::repeat(b as u8).take(c as usize)).collect();
            w.shuffle(rng);
            return w;
        }
        let prev = &self.levels[k as usize - 1];
        let mut splits = Vec::new();
        for (a, ca) in prev {
            for (b, cb) in prev {
                if &a.add(b) == v {
                    splits.push(((a.clone(), b.clone()), ca * cb));
                }
            }
        }
        let (a, b) = pick(rng, &splits).clone();
        let mut w = self.sample_with(k - 1, &a, rng);
        w.extend(self.sample_with(k - 1, &b, rng));
        w
    }
}

/// Run limit used for the simply normal construction at step `j`: a multiple
/// of 3 above both `6M` and `m`, growing by 3 per step so `⌊N/3⌋` grows by 1.
pub fn sn_run_limit(alphabet: Alphabet, m: usize, j: usize) -> usize {
    3 * ((2 * alphabet.m() as usize).max(m.div_ceil(3)) + j)
}

/// Prefix followed by `d_0 d_1 …` with `d_k` uniform in `D_{j,k}`, until the
/// length reaches `depth`. Deterministic in `seed`.
pub fn sample_simply_normal(set: &RunLimitedSet, depth: usize, seed: u64) -> Result<Word> {
    let mut blocks = SimplyNormalBlocks::new(set.alphabet(), set.run_limit())?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = set.prefix().to_vec();
    let mut k = 0;
    while w.len() < depth {
        w.extend(blocks.sample(k, &mut rng));
        k += 1;
    }
    Word::new(w, set.alphabet())
}

// ---------------------------------------------------------------- irregular blocks

/// The irregular block family `Δ_{j,k}` (or its binary variant when `M = 1`).
#[derive(Clone, Copy, Debug)]
pub struct DeltaBlock {
    alphabet: Alphabet,
    run_limit: usize,
    k: u32,
}

impl DeltaBlock {
    pub fn new(alphabet: Alphabet, run_limit: usize, k: u32) -> Result<Self> {
        if run_limit < 2 || k > 40 {
            return Err(Error::InvalidArgument("need run limit ≥ 2 and k ≤ 40".into()));
        }
        Ok(Self { alphabet, run_limit, k })
    }

    fn pk(&self) -> u64 {
        1u64 << self.k
    }

    /// Length of the free part `c_1 … c_L`.
    pub fn free_len(&self) -> u64 {
        let n = self.run_limit as u64;
        match self.alphabet.m() {
            1 => 2 * self.pk() * n * n,
            m => self.pk() * (m as u64 + 1) * n * n,
        }
    }

    pub fn len(&self) -> u64 {
        let n = self.run_limit as u64;
        match self.alphabet.m() {
            1 => 2 * self.pk() * n * (n + 1) + 2,
            m => self.pk() * (m as u64 + 1) * n * (n + 1),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `#Δ = (M+1)^a (M-1)^b`, returned as `(a, b)`.
    pub fn count_exponents(&self) -> (u64, u64) {
        let n = self.run_limit as u64;
        match self.alphabet.m() {
            // two positions pinned per multiple of N
            1 => (2 * self.pk() * n * (n - 2), 0),
            m => (self.pk() * (m as u64 + 1) * n * (n - 1), self.pk() * (m as u64 + 1) * n),
        }
    }

    pub fn count(&self) -> BigUint {
        let (a, b) = self.count_exponents();
        let m = self.alphabet.m() as u32;
        num_traits::pow(BigUint::from(m + 1), a as usize) * num_traits::pow(BigUint::from(m.saturating_sub(1).max(1)), b as usize)
    }

    /// The fixed part after `c`.
    pub fn template(&self) -> Vec<u8> {
        let (n, m, p) = (self.run_limit, self.alphabet.m(), self.pk() as usize);
        let mut t = Vec::new();
        let rep = |t: &mut Vec<u8>, unit: &[u8]| (0..p).for_each(|_| t.extend_from_slice(unit));
        let mut low = vec![0u8; n - 1];
        low.push(1);
        rep(&mut t, &low);
        if m == 1 {
            let mut u = vec![0u8];
            u.extend(std::iter::repeat(1).take(n - 1));
            rep(&mut t, &u);
            t.extend_from_slice(&[0, 1]);
        } else {
            for d in 1..m {
                rep(&mut t, &vec![d; n]);
            }
            let mut hi = vec![m; n - 1];
            hi.push(m - 1);
            rep(&mut t, &hi);
        }
        t
    }

    /// A uniformly random block.
    pub fn sample(&self, rng: &mut ChaCha8Rng) -> Vec<u8> {
        let (n, m) = (self.run_limit, self.alphabet.m());
        let len = self.free_len() as usize;
        let mut c: Vec<u8> = Vec::with_capacity(self.len() as usize);
        for i in 1..=len {
            c.push(if i % n == 0 {
                if m == 1 { 1 } else { rng.gen_range(1..m) }
            } else if m == 1 && (i + 1) % n == 0 {
                0
            } else {
                rng.gen_range(0..=m)
            });
        }
        c.extend(self.template());
        c
    }
}

/// Position of one irregular block inside a sampled tail.
#[derive(Clone, Debug, Serialize)]
pub struct BlockSpan {
    pub start: usize,
    pub free_len: usize,
    pub len: usize,
}

#[derive(Clone, Debug)]
pub struct IrregularSample {
    pub word: Word,
    pub prefix_len: usize,
    pub blocks: Vec<BlockSpan>,
}

impl IrregularSample {
    /// The sampled digits after the prefix.
    pub fn tail(&self) -> &[u8] {
        &self.word.digits()[self.prefix_len..]
    }

    /// Occurrences of `b` in the free parts of blocks `0..=k`.
    pub fn theta(&self, b: u8, k: usize) -> u64 {
        let t = self.tail();
        self.blocks[..=k].iter().map(|s| digit_count(&t[s.start..s.start + s.free_len], b) as u64).sum()
    }
}

/// Prefix followed by blocks `b_0 … b_{k_max}`, each uniform in its family.
pub fn sample_irregular(set: &RunLimitedSet, k_max: u32, seed: u64) -> Result<IrregularSample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut w = set.prefix().to_vec();
    let prefix_len = w.len();
    let mut blocks = Vec::new();
    for k in 0..=k_max {
        let blk = DeltaBlock::new(set.alphabet(), set.run_limit(), k)?;
        blocks.push(BlockSpan { start: w.len() - prefix_len, free_len: blk.free_len() as usize, len: blk.len() as usize });
        w.extend(blk.sample(&mut rng));
    }
    Ok(IrregularSample { word: Word::new(w, set.alphabet())?, prefix_len, blocks })
}

/// `(ℓ_k, n_k)`: tail lengths just before and just after the `(b^N)^(2^k)`
/// segment of block `k` (for `b = 0` and `b = M` the segments
/// `(0^{N-1}1)^(2^k)` and `(M^{N-1}(M-1))^(2^k)`).
pub fn checkpoint_lengths(alphabet: Alphabet, run_limit: usize, k: u32, b: u8) -> Result<(u64, u64)> {
    let m = alphabet.m() as u64;
    if m < 2 || b as u64 > m {
        return Err(Error::InvalidArgument("checkpoints need M ≥ 2 and 0 ≤ b ≤ M".into()));
    }
    let n = run_limit as u64;
    let pk = 1u64 << k;
    let before: u64 = (0..k).map(|i| (1u64 << i) * (m + 1) * n * (n + 1)).sum();
    let l = pk * (m + 1) * n * n + pk * n * b as u64 + before;
    Ok((l, l + pk * n))
}

/// `Σ_{i≤k} 2^i (M+1) N (N-1)` for `b ∈ {0, M}`, `Σ_{i≤k} 2^i (M+1) N²` otherwise.
pub fn theta_bound(alphabet: Alphabet, run_limit: usize, k: u32, b: u8) -> u64 {
    let (m, n) = (alphabet.m() as u64, run_limit as u64);
    let per = if b == 0 || b as u64 == m { n * (n - 1) } else { n * n };
    ((1u64 << (k + 1)) - 1) * (m + 1) * per
}

/// Ratios `ξ_b(n)/n` at checkpoints.
#[derive(Clone, Debug, Serialize)]
pub struct FreqProfile {
    pub digit: u8,
    pub checkpoints: Vec<(u64, String)>,
    #[serde(skip)]
    pub ratios: Vec<BigRational>,
    /// `max - min` over the last two checkpoint pairs.
    #[serde(skip)]
    pub spread: BigRational,
}

/// Digit ratios of `b` at each `(ℓ_k, n_k)` pair.
pub fn oscillation_evidence(seq: &[u8], b: u8, checkpoints: &[(u64, u64)]) -> Result<FreqProfile> {
    if checkpoints.is_empty() {
        return Err(Error::InvalidArgument("no checkpoints".into()));
    }
    let mut ratios = Vec::new();
    let mut points = Vec::new();
    for &(l, n) in checkpoints {
        for p in [l, n] {
            if p == 0 || p as usize > seq.len() {
                return Err(Error::InvalidArgument(format!("sequence of length {} is shorter than checkpoint {p}", seq.len())));
            }
            let r = BigRational::new(digit_count(&seq[..p as usize], b).into(), p.into());
            points.push((p, r.to_string()));
            ratios.push(r);
        }
    }
    let last = &ratios[ratios.len().saturating_sub(4)..];
    let spread = last.iter().max().unwrap() - last.iter().min().unwrap();
    Ok(FreqProfile { digit: b, checkpoints: points, ratios, spread })
}

// ---------------------------------------------------------------- dimension bounds

/// Lower/upper ends of a dimension value evaluated over an enclosure of `γ`.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct DimBound {
    pub lo: f64,
    pub hi: f64,
}

impl DimBound {
    pub fn mid(&self) -> f64 {
        0.5 * (self.lo + self.hi)
    }
}

fn log_base(alphabet: Alphabet, gamma: &CertifiedReal) -> Result<(f64, f64)> {
    let lb = (alphabet.base() as f64).ln();
    let g = gamma.refine(80)?;
    if g.lo() <= &int(1) {
        return Err(Error::InvalidArgument("γ must exceed 1".into()));
    }
    // widen by a few ulps so float rounding cannot flip the enclosure
    let lo = to_f64(g.lo()).ln() / lb * (1.0 - 1e-14);
    let hi = to_f64(g.hi()).ln() / lb * (1.0 + 1e-14);
    Ok((lo, hi))
}

/// `γ_j`: the largest point of the set (right end of its hull).
pub fn gamma(set: &RunLimitedSet, tol: &BigRational) -> Result<CertifiedReal> {
    Ok(interval_endpoints(set, &[], tol)?.1)
}

/// `log multinomial(m_0; n*) / (m_0 log γ)`, logs in base `M+1`.
pub fn dim_lower_sn(alphabet: Alphabet, run_limit: usize, gamma: &CertifiedReal) -> Result<DimBound> {
    let sym = sn_symbolic(alphabet, run_limit)?;
    let (glo, ghi) = log_base(alphabet, gamma)?;
    Ok(DimBound { lo: sym / ghi, hi: sym / glo })
}

/// `log multinomial(m_0; n*) / m_0` in base `M+1`.
pub fn sn_symbolic(alphabet: Alphabet, run_limit: usize) -> Result<f64> {
    let blocks = SimplyNormalBlocks::new(alphabet, run_limit)?;
    let (v, c) = blocks.min_multinomial();
    Ok(ln_biguint(&c) / (v.len as f64 * (alphabet.base() as f64).ln()))
}

/// Entropy `-Σ (n*_b/m_0) log(n*_b/m_0)` in base `M+1`, and the slack
/// `(M+1) log(m_0+1) / m_0` bounding its distance to the symbolic value.
pub fn sn_entropy(alphabet: Alphabet, run_limit: usize) -> Result<(f64, f64)> {
    let blocks = SimplyNormalBlocks::new(alphabet, run_limit)?;
    let (v, _) = blocks.min_multinomial();
    let lb = (alphabet.base() as f64).ln();
    let m = v.len as f64;
    let h = -v.counts.iter().filter(|&&c| c > 0).map(|&c| (c as f64 / m) * (c as f64 / m).ln()).sum::<f64>() / lb;
    Ok((h, alphabet.base() as f64 * (m + 1.0).ln() / lb / m))
}

/// Exact value `rational + log_ratio · log_{M+1}(M-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SymbolicDim {
    #[serde(serialize_with = "ser_rat")]
    pub rational: BigRational,
    #[serde(serialize_with = "ser_rat")]
    pub log_ratio: BigRational,
}

fn ser_rat<S: serde::Serializer>(r: &BigRational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

impl SymbolicDim {
    pub fn to_f64(&self, alphabet: Alphabet) -> f64 {
        let m = alphabet.m() as f64;
        let lr = if alphabet.m() > 1 { (m - 1.0).ln() / (m + 1.0).ln() } else { 0.0 };
        to_f64(&self.rational) + to_f64(&self.log_ratio) * lr
    }
}

/// `(N-1)/(N+1) + log(M-1)/((N+1) log(M+1))` for `M ≥ 2`.
pub fn ir_closed_form(alphabet: Alphabet, run_limit: usize) -> Result<SymbolicDim> {
    if alphabet.m() < 2 {
        return Err(Error::InvalidArgument("closed form needs M ≥ 2".into()));
    }
    let n = run_limit as i64;
    Ok(SymbolicDim { rational: BigRational::new((n - 1).into(), (n + 1).into()), log_ratio: BigRational::new(1.into(), (n + 1).into()) })
}

/// Symbolic dimension of the irregular construction through blocks `0..=n`
/// for each `n`, computed exactly from the block counts.
pub fn ir_partials(alphabet: Alphabet, run_limit: usize, n: u32) -> Result<Vec<SymbolicDim>> {
    let (mut a, mut b, mut len) = (BigUint::zero(), BigUint::zero(), BigUint::zero());
    let mut out = Vec::new();
    for k in 0..=n {
        let blk = DeltaBlock::new(alphabet, run_limit, k)?;
        let (ea, eb) = blk.count_exponents();
        a += ea;
        b += eb;
        len += blk.len();
        let d = BigRational::from_integer(len.clone().into());
        out.push(SymbolicDim {
            rational: BigRational::from_integer(a.clone().into()) / &d,
            log_ratio: if alphabet.m() > 1 { BigRational::from_integer(b.clone().into()) / &d } else { int(0) },
        });
    }
    Ok(out)
}

/// Block counts and lengths of the irregular construction, for Moran estimates.
pub fn delta_counts(alphabet: Alphabet, run_limit: usize, n: u32) -> Result<(Vec<BigUint>, Vec<u64>)> {
    let mut counts = Vec::new();
    let mut lens = Vec::new();
    for k in 0..=n {
        let blk = DeltaBlock::new(alphabet, run_limit, k)?;
        counts.push(blk.count());
        lens.push(blk.len());
    }
    Ok((counts, lens))
}

/// `(N-1)/((N+1) log γ) + log(M-1)/((N+1) log(M+1) log γ)`, logs base `M+1`.
/// For `M = 1` the binary variant's limit `(N-2)/((N+1) log γ)` is used.
pub fn dim_lower_ir(alphabet: Alphabet, run_limit: usize, gamma: &CertifiedReal) -> Result<DimBound> {
    let n = run_limit as f64;
    let sym = if alphabet.m() >= 2 {
        ir_closed_form(alphabet, run_limit)?.to_f64(alphabet)
    } else {
        (n - 2.0) / (n + 1.0)
    };
    let (glo, ghi) = log_base(alphabet, gamma)?;
    Ok(DimBound { lo: sym / ghi, hi: sym / glo })
}

/// Default tolerance for `γ` solves.
pub fn gamma_tol() -> BigRational {
    pow2(-64)
}
