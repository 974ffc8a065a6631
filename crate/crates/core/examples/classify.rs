//! Essentially n-ary members, cube sublattices and cube quotients.
use centra::congruence::{build_lex_doubling, build_m3_power, classify};
use centra::Lattice;

fn main() -> centra::Result<()> {
    let lattices = [
        ("2^3", Lattice::boolean(3), 3),
        ("N5", Lattice::n5(), 2),
        ("M3", Lattice::m3(), 2),
        ("M3^2", build_m3_power(2)?.0, 2),
        ("lex doubling of 2^4", build_lex_doubling(4)?, 4),
    ];
    for (name, l, n) in lattices {
        let c = classify(&l, n)?;
        println!(
            "{name}, n={n}: ess {:?}, sub {:?}, quo {:?}",
            c.ess, c.sub, c.quo
        );
    }
    Ok(())
}
