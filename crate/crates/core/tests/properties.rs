use num_rational::BigRational;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use univoque::cantor::{build_cover, count_omega, newhouse_dim_bound, sibling_checks, CoverOptions};
use univoque::expansion::{expand, Mode};
use univoque::freqsets::{
    freq_vectors, sample_irregular, sample_simply_normal, sn_run_limit, theta_bound, DeltaBlock,
};
use univoque::real::rat;
use univoque::solver::RunLimitedSet;
use univoque::symbolic::max_run;
use univoque::{Alphabet, CertifiedReal, PeriodicSeq};

fn a(m: u32) -> Alphabet {
    Alphabet::new(m).unwrap()
}

fn digits(m: u8, len: std::ops::Range<usize>) -> impl Strategy<Value = Vec<u8>> {
    prop::collection::vec(0..=m, len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn periodic_seq_is_canonical(pre in digits(2, 0..5), per in digits(2, 1..4), extra in 0usize..4, reps in 1usize..3) {
        let al = a(2);
        let s = PeriodicSeq::new(pre.clone(), per.clone(), al).unwrap();
        // unroll `extra` digits of the period into the preperiod, repeat the period
        let mut pre2 = pre.clone();
        let mut per2 = per.clone();
        for _ in 0..extra {
            let d = per2.remove(0);
            pre2.push(d);
            per2.push(d);
        }
        let per2: Vec<u8> = per2.iter().cycle().take(per2.len() * reps).copied().collect();
        let t = PeriodicSeq::new(pre2, per2, al).unwrap();
        prop_assert_eq!(&s, &t);
        prop_assert_eq!(PeriodicSeq::parse(&s.to_string(), al).unwrap(), s.clone());
        for i in 0..20 {
            let want = if i < pre.len() { pre[i] } else { per[(i - pre.len()) % per.len()] };
            prop_assert_eq!(s.digit(i), want);
        }
    }

    #[test]
    fn expansion_prefix_brackets_value(m in 1u32..=3, xn in 1i64..=40, xd in 1i64..=40, qn in 0i64..=100, mode in 0usize..3) {
        let al = a(m);
        prop_assume!(xn <= xd);
        // q on a grid in [1, M+1]
        let q = rat(100 + (m as i64) * qn, 100);
        prop_assume!(q > rat(1, 1));
        let x = rat(xn, xd);
        let mode = [Mode::Greedy, Mode::Quasi, Mode::Lazy][mode];
        let n = 16;
        let p = expand(&CertifiedReal::exact(x.clone()), &CertifiedReal::exact(q.clone()), al, n, mode, 4096).unwrap();
        let rest = &x - p.digits.value(&q);
        prop_assert!(p.tail_lo <= rest && rest <= p.tail_hi, "{} not in [{}, {}]", rest, p.tail_lo, p.tail_hi);
    }

    #[test]
    fn newhouse_bound_is_monotone(a1 in 1i64..10_000, a2 in 1i64..10_000) {
        let (lo, hi) = if a1 <= a2 { (a1, a2) } else { (a2, a1) };
        let b1 = newhouse_dim_bound(&rat(lo, 100)).unwrap();
        let b2 = newhouse_dim_bound(&rat(hi, 100)).unwrap();
        prop_assert!(0.0 < b1 && b1 <= b2 && b2 < 1.0);
    }

    #[test]
    fn freq_vectors_fill_the_last_digit(m in 1u32..=4, blocks in 2u64..12) {
        let al = a(m);
        let base = al.base() as u64;
        let len = blocks * base;
        let vs = freq_vectors(al, len).unwrap();
        prop_assert_eq!(vs.len(), 1usize << m);
        for v in vs {
            let c = v.counts();
            prop_assert_eq!(c.iter().sum::<u64>(), len);
            let last = *c.last().unwrap();
            prop_assert!(len / base <= last && last <= len / base + m as u64);
            for &ci in &c[..c.len() - 1] {
                prop_assert!(ci == len / base || ci + 1 == len / base);
            }
        }
    }

    #[test]
    fn delta_count_matches_position_rules(m in 1u32..=3, n in 3usize..9, k in 0u32..3) {
        let al = a(m);
        let blk = DeltaBlock::new(al, n, k).unwrap();
        let mm = m as u64;
        // choices per free position
        let (mut e_full, mut e_mid) = (0u64, 0u64);
        for i in 1..=blk.free_len() {
            if i % n as u64 == 0 {
                if mm >= 2 { e_mid += 1 }
            } else if !(mm == 1 && (i + 1) % n as u64 == 0) {
                e_full += 1;
            }
        }
        prop_assert_eq!(blk.count_exponents(), (e_full, if mm >= 2 { e_mid } else { 0 }));
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64 * 31 + k as u64);
        let s = blk.sample(&mut rng);
        prop_assert_eq!(s.len() as u64, blk.len());
        for (i, &d) in s[..blk.free_len() as usize].iter().enumerate() {
            let pos = i as u64 + 1;
            if pos % n as u64 == 0 {
                let ok = if mm == 1 { d == 1 } else { 1 <= d && d < m as u8 };
                prop_assert!(ok);
            } else if mm == 1 && (pos + 1) % n as u64 == 0 {
                prop_assert_eq!(d, 0);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn sampled_words_respect_run_limit(m in 1u32..=2, j in 1usize..3, seed in 0u64..1000) {
        let al = a(m);
        let x = rat(1, al.base() as i64);
        let mm = RunLimitedSet::new(&x, al, 2).unwrap().dm().m();
        let n = sn_run_limit(al, mm, j);
        let set = RunLimitedSet::new(&x, al, n).unwrap();
        let w = sample_simply_normal(&set, 600, seed).unwrap();
        prop_assert!(set.admits(&w.digits()[set.prefix().len()..]));
        for b in 0..=al.m() {
            prop_assert!(max_run(&w.digits()[set.prefix().len()..], b) <= n);
        }
    }

    #[test]
    fn irregular_theta_within_bound(j in 1usize..4, seed in 0u64..1000) {
        let al = a(2);
        let x = rat(1, 3);
        let n = 1 + j + 12;
        let set = RunLimitedSet::new(&x, al, n).unwrap();
        let s = sample_irregular(&set, 2, seed).unwrap();
        prop_assert!(set.admits(s.tail()));
        for k in 0..=2 {
            for b in 0..=2u8 {
                prop_assert!(s.theta(b, k) <= theta_bound(al, n, k as u32, b));
            }
        }
    }

    #[test]
    fn covers_are_sound(xi in 0usize..4, j in 2usize..4, level in 1usize..3) {
        let x: BigRational = [rat(1, 2), rat(1, 4), rat(3, 4), rat(3, 8)][xi].clone();
        let set = RunLimitedSet::lemma(&x, a(1), j).unwrap();
        let c = build_cover(&set, level, &CoverOptions::default()).unwrap();
        for (l, lev) in c.levels().iter().enumerate() {
            prop_assert_eq!(num_bigint::BigUint::from(lev.intervals.len()), count_omega(&set, l));
            for w in lev.intervals.windows(2) {
                prop_assert!(w[0].span.hi.hi() < w[1].span.lo.lo());
            }
        }
        prop_assert!(sibling_checks(&set, &c).unwrap().iter().all(|s| s.all_ok()));
    }
}
