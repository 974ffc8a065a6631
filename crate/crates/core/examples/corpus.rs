//! Checking the relationships between (Ess), (Sub), (Quo) on every small lattice.
use centra::congruence::{all_lattices, corpus_check, distributive_lattices, CorpusCheck};

fn main() -> centra::Result<()> {
    let all = all_lattices(6);
    let report = corpus_check(&all, 2, CorpusCheck::Implications)?;
    println!("{} lattices, passed: {}", report.lattices, report.passed());
    let distributive = distributive_lattices(3);
    let report = corpus_check(&distributive, 3, CorpusCheck::Equivalence)?;
    println!(
        "{} distributive lattices, all agree: {}",
        report.lattices,
        report.passed()
    );
    Ok(())
}
