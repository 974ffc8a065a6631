//! Closed forms and filter sums for centralizer sizes.
use centra::centralizer::{
    count_essential_chain, count_essential_thm, count_essential_v, count_total_v, machida_rosenberg,
};
use centra::Lattice;

fn main() -> centra::Result<()> {
    for n in 0..=5 {
        println!(
            "n={n}: 4-chain {}, V {} of {}, Machida-Rosenberg {}",
            count_essential_chain(4, n),
            count_essential_v(n),
            count_total_v(n),
            machida_rosenberg(n)
        );
    }
    let report = count_essential_thm(&Lattice::boolean(2), 3)?;
    for s in &report.summands {
        println!(
            "element {}: {} join-homs, term {}",
            s.element, s.join_homs, s.term
        );
    }
    println!("2^2, essentially ternary: {}", report.total);
    // 19^n overflows 64 bits near n = 15
    println!("4-chain at n=20: {}", count_essential_chain(4, 20));
    Ok(())
}
