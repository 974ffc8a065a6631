//! Loading a lattice from text and reading off its operations.
use centra::order::{parse_structure, Structure};
use centra::Lattice;

fn main() -> centra::Result<()> {
    let text =
        std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/data/n5.lat"))?;
    let loaded = parse_structure(&text)?;
    println!("input -> canonical: {:?}", loaded.permutation);
    let Structure::Lattice(n5) = loaded.structure else {
        unreachable!()
    };
    let (a, c) = (
        n5.order().index_of("a").unwrap(),
        n5.order().index_of("c").unwrap(),
    );
    println!(
        "a v c = {}, a ^ c = {}",
        n5.label(n5.join(a, c)),
        n5.label(n5.meet(a, c))
    );
    println!("distributive: {}", n5.is_distributive());
    if let Some((x, y, z)) = n5.distributivity_failure() {
        println!(
            "fails at ({}, {}, {})",
            n5.label(x),
            n5.label(y),
            n5.label(z)
        );
    }
    let square = Lattice::chain(3).power(2, 1000)?;
    println!(
        "3-chain squared: {} elements, covers {:?}",
        square.size(),
        square.order().covers()
    );
    Ok(())
}
