//! A join of endomorphisms that commutes with join but not with meet.
use centra::centralizer::distributive_recompose;
use centra::congruence::build_fig2;

fn main() -> centra::Result<()> {
    let fig = build_fig2();
    let l = &fig.lattice;
    let report = distributive_recompose(&[fig.u1.clone(), fig.u2.clone()], l)?;
    println!("commutes with join: {}", report.join_witness.is_none());
    if let Some(w) = &report.meet_witness {
        let label = |row: &Vec<usize>| {
            row.iter()
                .map(|&x| l.label(x))
                .collect::<Vec<_>>()
                .join(",")
        };
        println!(
            "meet fails at ({}) / ({}): columns first {}, rows first {}",
            label(&w.matrix[0]),
            label(&w.matrix[1]),
            l.label(w.columns_first),
            l.label(w.rows_first)
        );
    }
    Ok(())
}
