//! Boolean clones, membership and bounded centralizers.
use centra::boolean::{bounded_centralizer, lookup, verify_table4, RowStatus};
use centra::OpTable;

fn main() -> centra::Result<()> {
    let xor = OpTable::from_fn(2, 2, |t| t[0] ^ t[1]);
    for name in ["L", "M", "S", "Omega_0"] {
        println!("x+y in {name}: {}", lookup(name)?.contains(&xor));
    }
    let c = bounded_centralizer("M", 2)?;
    println!("M* up to arity 2: {} members", c.members.len());
    let report = verify_table4(3)?;
    println!(
        "table rows: {} pass, {} fail, {} skipped",
        report.count(RowStatus::Pass),
        report.count(RowStatus::Fail),
        report.count(RowStatus::Skipped)
    );
    Ok(())
}
