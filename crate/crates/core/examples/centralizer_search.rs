//! Members of a centralizer by backtracking, against the raw table count.
use centra::centralizer::{
    brute_force_centralizer, count_centralizer_members, CentralizerSearch, DEFAULT_MAX_CELLS,
};
use centra::ops::fundamental_ops;
use centra::Lattice;

fn main() -> centra::Result<()> {
    let l = Lattice::n5();
    let gens = fundamental_ops(&l.join_semilattice());
    let search = CentralizerSearch::new(5, &gens, 2, DEFAULT_MAX_CELLS)?;
    let members = search.collect(1 << 20)?;
    println!("binary members of [join]* on N5: {}", members.len());
    let counts = count_centralizer_members(5, &gens, 2)?;
    println!("of which essentially binary: {}", counts.essential);
    let c3 = Lattice::chain(3);
    let raw = brute_force_centralizer(3, &fundamental_ops(&c3), 2)?;
    println!(
        "binary members of [join, meet]* on the 3-chain: {}",
        raw.len()
    );
    Ok(())
}
