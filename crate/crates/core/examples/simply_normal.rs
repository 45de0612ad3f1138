//! Simply normal block sets: exact counts, a sampled sequence, and the
//! dimension lower bound as the run limit grows.
use univoque::freqsets::{dim_lower_sn, gamma, gamma_tol, sample_simply_normal, sn_run_limit, SimplyNormalBlocks};
use univoque::real::rat;
use univoque::solver::RunLimitedSet;
use univoque::Alphabet;

fn main() -> univoque::Result<()> {
    let a = Alphabet::new(1)?;
    let x = rat(1, 2);
    let m = RunLimitedSet::new(&x, a, 2)?.dm().m();
    let n = sn_run_limit(a, m, 1);
    let mut blocks = SimplyNormalBlocks::new(a, n)?;
    for k in 0..4 {
        println!("#D_k for k={k}: {} (lower bound {})", blocks.count(k), blocks.lower_bound(k));
    }
    let set = RunLimitedSet::new(&x, a, n)?;
    let w = sample_simply_normal(&set, 120, 1)?;
    println!("sample: {w}");
    for j in [1, 2, 5, 10, 20, 40] {
        let n = sn_run_limit(a, m, j);
        let g = gamma(&RunLimitedSet::new(&x, a, n)?, &gamma_tol())?;
        println!("j={j:>2} N={n:>3} dim ≥ {:.4}", dim_lower_sn(a, n, &g)?.lo);
    }
    Ok(())
}
