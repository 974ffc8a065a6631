//! Enumerating homomorphisms of several flavors.
use centra::homs::{count_homs, enumerate_homs, Flavor, Preserves};
use centra::{Lattice, Semilattice};

fn main() -> centra::Result<()> {
    let v = Semilattice::v_shape();
    let c3 = Lattice::chain(3);
    for h in enumerate_homs(&v, &c3.join_semilattice(), Flavor::Join, Preserves::NONE)? {
        println!("V -> 3-chain: {:?}", h.map);
    }
    let m3 = Lattice::m3();
    for (flavor, name) in [
        (Flavor::Monotone, "monotone"),
        (Flavor::Join, "join"),
        (Flavor::Lattice, "lattice"),
    ] {
        println!(
            "M3 -> M3 {name}: {}",
            count_homs(&m3, &m3, flavor, Preserves::BOTH)?
        );
    }
    Ok(())
}
