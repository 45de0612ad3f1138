//! Basic intervals of a run-limited set of univoque bases, its thickness and
//! the resulting Newhouse dimension bound.
use univoque::cantor::{build_cover, newhouse_dim_bound, sibling_checks, thickness_star, CoverOptions};
use univoque::real::rat;
use univoque::solver::RunLimitedSet;
use univoque::Alphabet;

fn main() -> univoque::Result<()> {
    let a = Alphabet::new(1)?;
    for j in 2..=5 {
        let set = RunLimitedSet::lemma(&rat(1, 2), a, j)?;
        let cover = build_cover(&set, 2, &CoverOptions::default())?;
        let tau = thickness_star(&cover)?;
        let ok = sibling_checks(&set, &cover)?.iter().all(|c| c.all_ok());
        println!(
            "j={j} N={} intervals={} τ_*≈{} dim ≥ {:.4} sibling bounds {ok}",
            set.run_limit(),
            cover.intervals().len(),
            tau.decimal(),
            newhouse_dim_bound(tau.lo())?
        );
    }
    let set = RunLimitedSet::lemma(&rat(1, 2), a, 2)?;
    for iv in build_cover(&set, 1, &CoverOptions::default())?.intervals() {
        println!("  {} : [{}, {}]", iv.word, iv.span.lo.decimal(), iv.span.hi.decimal());
    }
    Ok(())
}
