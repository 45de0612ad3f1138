//! Convex hulls of the dyadic run-limited sets: they interleave and their
//! gaps shrink faster than the hulls themselves.
use univoque::cantor::{build_hulls, CoverOptions};
use univoque::real::{decimal_string, rat};
use univoque::Alphabet;

fn main() -> univoque::Result<()> {
    let h = build_hulls(&rat(1, 2), Alphabet::new(1)?, 1, 5, &CoverOptions::default())?;
    for e in &h.entries {
        println!("j={} [{}, {}]", e.j, e.alpha.decimal(), e.beta.decimal());
    }
    for c in &h.checks {
        println!("j={} bounds ok {} min ratio ≥ {}", c.j, c.all_ok(), decimal_string(&c.min_ratio.lo, 4));
    }
    println!("ratios increasing: {}", h.ratios_increasing());
    Ok(())
}
