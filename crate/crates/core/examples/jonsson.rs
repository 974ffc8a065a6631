//! Jonsson terms on the two-element set.
use centra::congruence::{boolean_jonsson_terms, majority, verify_jonsson};
use centra::OpTable;

fn main() {
    let terms = boolean_jonsson_terms();
    println!("tabulated terms: {:?}", verify_jonsson(&terms).is_ok());
    let (x, z) = (OpTable::projection(3, 2, 0), OpTable::projection(3, 2, 2));
    println!(
        "x, majority, z: {:?}",
        verify_jonsson(&[x.clone(), majority(), z.clone()]).is_ok()
    );
    match verify_jonsson(&[x, z]) {
        Ok(()) => println!("x, z: passes"),
        Err(e) => println!("x, z: fails {e:?}"),
    }
}
