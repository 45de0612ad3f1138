//! Inverse problem: the base in which an eventually periodic sequence sums to x.
use univoque::real::{pow2, rat};
use univoque::solver::{phi_inverse, solve_base};
use univoque::{Alphabet, PeriodicSeq};

fn main() -> univoque::Result<()> {
    let a = Alphabet::new(1)?;
    let tol = pow2(-80);
    for s in ["(10)", "1(10)", "11(0)", "(110)"] {
        let seq = PeriodicSeq::parse(s, a)?;
        let q = solve_base(&seq, &rat(1, 1), &rat(1025, 1024), &rat(2, 1), &tol)?;
        println!("{s} sums to 1 in base q ≈ {}", q.decimal());
    }
    // as the quasi-greedy expansion of 1/2
    let seq = PeriodicSeq::parse("0(110)", a)?;
    let q = phi_inverse(&seq, &rat(1, 2), &tol)?;
    println!("quasi-greedy expansion of 1/2 is {seq} at q ≈ {}", q.decimal());
    Ok(())
}
