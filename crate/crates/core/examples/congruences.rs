//! Congruences and quotients of a small lattice.
use centra::congruence::{enumerate_congruences, principal_congruence, quotient};
use centra::Lattice;

fn main() -> centra::Result<()> {
    let l = Lattice::n5();
    for theta in enumerate_congruences(&l)? {
        let q = quotient(&l, &theta);
        println!("{:?}: quotient of size {}", theta.classes(), q.size());
    }
    let theta = principal_congruence(&l, 0, 1);
    println!("collapsing 0 and {}: {:?}", l.label(1), theta.classes());
    Ok(())
}
