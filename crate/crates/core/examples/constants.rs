//! Generalized golden ratios and the Komornik–Loreti constant.
use univoque::expansion::generalized_golden_ratio;
use univoque::real::rat;
use univoque::solver::komornik_loreti;
use univoque::Alphabet;

fn main() -> univoque::Result<()> {
    for m in 1..=6 {
        let g = generalized_golden_ratio(Alphabet::new(m)?).refine(64)?;
        println!("q_G({m}) = {}", g.decimal());
    }
    let kl = komornik_loreti(&rat(1, 10i64.pow(12)))?;
    println!("q_KL ∈ [{}, {}]", kl.lo(), kl.hi());
    println!("q_KL ≈ {}", kl.decimal());
    Ok(())
}
