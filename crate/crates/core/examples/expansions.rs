//! Greedy, quasi-greedy and lazy expansions, and the univoque test.
use univoque::expansion::{expand, generalized_golden_ratio, is_univoque_point, Mode};
use univoque::real::rat;
use univoque::{Alphabet, CertifiedReal};

fn main() -> univoque::Result<()> {
    let a = Alphabet::new(1)?;
    let phi = generalized_golden_ratio(a);
    let one = CertifiedReal::from_integer(1);
    for mode in [Mode::Greedy, Mode::Quasi, Mode::Lazy] {
        let p = expand(&one, &phi, a, 12, mode, 4096)?;
        println!("{mode:?} expansion of 1 in base φ: {}…", p.digits);
    }
    println!("1 in base φ: {:?}", is_univoque_point(&one, &phi, a, 32)?);

    let q = CertifiedReal::exact(rat(9, 5));
    let x = CertifiedReal::exact(rat(2, 3));
    let g = expand(&x, &q, a, 24, Mode::Greedy, 4096)?;
    println!("greedy 2/3 in base 9/5: {}, remainder in [{}, {}]", g.digits, g.tail_lo, g.tail_hi);
    println!("2/3 in base 9/5: {:?}", is_univoque_point(&x, &q, a, 64)?);
    Ok(())
}
