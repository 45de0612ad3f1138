//! Irregular blocks: digit frequencies oscillate between checkpoints, and the
//! dimension bound comes from exact block counts.
use univoque::cantor::moran_dim_estimate;
use univoque::freqsets::{
    checkpoint_lengths, delta_counts, dim_lower_ir, gamma, gamma_tol, ir_closed_form, oscillation_evidence,
    sample_irregular,
};
use univoque::real::{decimal_string, rat};
use univoque::solver::RunLimitedSet;
use univoque::Alphabet;

fn main() -> univoque::Result<()> {
    let a = Alphabet::new(2)?;
    let n = 14;
    let set = RunLimitedSet::new(&rat(1, 3), a, n)?;
    let s = sample_irregular(&set, 3, 7)?;
    let cps: Vec<_> = (0..=3).map(|k| checkpoint_lengths(a, n, k, 2)).collect::<univoque::Result<_>>()?;
    let p = oscillation_evidence(s.tail(), 2, &cps)?;
    for (len, r) in &p.checkpoints {
        println!("ratio of 2s after {len:>5} digits: {r}");
    }
    println!("spread over the last two pairs: {}", decimal_string(&p.spread, 5));

    let (counts, lens) = delta_counts(a, n, 5)?;
    let est = moran_dim_estimate(&counts, &lens, a)?;
    println!("closed form {:.6}, Moran partials {:?}", ir_closed_form(a, n)?.to_f64(a), est.partials);
    let g = gamma(&set, &gamma_tol())?;
    println!("dim ≥ {:.4}", dim_lower_ir(a, n, &g)?.lo);
    Ok(())
}
