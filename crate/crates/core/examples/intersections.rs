//! Common univoque bases of 1/2 and 1/4, and the sum image of two thick covers.
use univoque::cantor::{build_cover, find_common_cell, intersect_covers, sum_image_check, CoverOptions};
use univoque::expansion::is_univoque_point;
use univoque::real::{decimal_string, rat};
use univoque::solver::RunLimitedSet;
use univoque::{Alphabet, CertifiedReal};

fn main() -> univoque::Result<()> {
    let a = Alphabet::new(1)?;
    let opts = CoverOptions::default();
    let s1 = RunLimitedSet::dyadic(&rat(1, 2), a, 3)?;
    let s2 = RunLimitedSet::dyadic(&rat(1, 4), a, 3)?;
    let common = intersect_covers(&build_cover(&s1, 1, &opts)?, &build_cover(&s2, 1, &opts)?);
    println!("{} overlapping level-1 pieces", common.len());
    if let Some(cell) = find_common_cell(&[s1, s2], 48, &opts)? {
        println!("common cell [{}, {}]", cell.span.lo.decimal(), cell.span.hi.decimal());
        for x in [rat(1, 2), rat(1, 4)] {
            let st = is_univoque_point(&CertifiedReal::exact(x.clone()), &cell.span.hi, a, 40)?;
            println!("  x={x}: {st:?}");
        }
    }

    let c1 = build_cover(&RunLimitedSet::lemma(&rat(1, 2), a, 3)?, 2, &opts)?;
    let c2 = build_cover(&RunLimitedSet::lemma(&rat(1, 4), a, 3)?, 2, &opts)?;
    let s = sum_image_check(&c1.spans(), &c2.spans(), &rat(1, 1), &rat(1, 10_000))?;
    if let Some((lo, hi)) = &s.covered {
        println!("I + J covers [{}, {}] from {} pieces", decimal_string(lo, 6), decimal_string(hi, 6), s.pieces);
    }
    println!("holes wider than 1e-4: {}", s.holes.len());
    Ok(())
}
