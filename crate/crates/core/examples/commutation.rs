//! Commutation of operations and the first failing matrix.
use centra::ops::commutes;
use centra::{Lattice, OpTable};

fn main() -> centra::Result<()> {
    let l = Lattice::chain(3);
    let join = OpTable::binary(3, l.join_table())?;
    let meet = OpTable::binary(3, l.meet_table())?;
    println!(
        "join commutes with itself: {}",
        commutes(&join, &join)?.is_none()
    );
    if let Some(w) = commutes(&join, &meet)? {
        println!("join and meet on the 3-chain fail at {:?}", w.matrix);
    }

    let m3 = Lattice::m3();
    let (join, meet) = (
        OpTable::binary(5, m3.join_table())?,
        OpTable::binary(5, m3.meet_table())?,
    );
    match commutes(&join, &meet)? {
        None => println!("M3: commute"),
        Some(w) => println!(
            "M3: matrix {:?}, rows first {}, columns first {}",
            w.matrix,
            m3.label(w.rows_first),
            m3.label(w.columns_first)
        ),
    }
    let f = OpTable::from_fn(3, 3, |t| t[0].max(t[2]));
    println!(
        "essential variables of max(x, z): {:?}",
        f.essential_profile().essential
    );
    Ok(())
}
