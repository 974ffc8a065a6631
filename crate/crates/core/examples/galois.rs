//! Join-homomorphisms and their adjoints.
use centra::homs::{enumerate_homs, galois_left, galois_right, Flavor, Preserves};
use centra::Lattice;

fn main() -> centra::Result<()> {
    let c3 = Lattice::chain(3);
    let a = c3.power(2, 100)?.join_semilattice();
    let b = c3.join_semilattice();
    let homs = enumerate_homs(&a, &b, Flavor::Join, Preserves::NONE)?;
    let mut back = 0;
    for f in &homs {
        let g = galois_left(f, &a, &b)?;
        back += usize::from(galois_right(&g, &a, &b)? == *f);
    }
    println!(
        "{} join-homomorphisms, {} recovered from their adjoints",
        homs.len(),
        back
    );
    let f = &homs[homs.len() / 2];
    println!(
        "{:?} has adjoint {:?} (0 is the adjoined bottom)",
        f.map,
        galois_left(f, &a, &b)?.map
    );
    Ok(())
}
