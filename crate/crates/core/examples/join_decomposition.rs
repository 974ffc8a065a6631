//! Writing a member of [join]* as a join of unary maps, and a semilattice
//! where that fails.
use centra::centralizer::{recompose, semilattice_decompose, witness_nonlattice};
use centra::{Lattice, OpTable, Semilattice};

fn main() -> centra::Result<()> {
    let s = Lattice::chain(4).join_semilattice();
    let f = OpTable::from_fn(2, 4, |t| t[0].max(t[1].saturating_sub(1)).max(1));
    let d = semilattice_decompose(&f, &s)?;
    for u in &d.unaries {
        println!("u = {:?}", u.values());
    }
    println!("recomposes: {}", recompose(&d.unaries, &s)? == f);

    let cert = witness_nonlattice(&Semilattice::v_shape())?;
    println!(
        "V: {:?} commutes with join: {}, decomposable: {} ({} endomorphism pairs)",
        cert.operation.values(),
        cert.in_centralizer,
        cert.decomposable,
        cert.pairs_checked
    );
    Ok(())
}
