//! Runs the fourteen reproduction criteria and prints one line each.
//!
//! Criterion 8 has one known discrepancy: the quoted failing matrix for the
//! seven-element lattice is a witness but not the lexicographically first
//! one. That check is expected to fail with exactly the value below, and the
//! printed line says FAIL. Any other failure panics, which fails the test.

use centra::congruence::{build_fig2, fig2};
use centra::ops::{commute, decode_tuple};
use centra::suite::{run_suite, Status};
use centra::{Lattice, OpTable};

const KNOWN_FAILURES: &[(&str, &str)] = &[("c8.first", "((a,c),(c,0)) 0 / b")];

fn join_table_op(l: &Lattice) -> OpTable {
    OpTable::binary(l.size(), l.join_table()).unwrap()
}

/// Counts binary tables commuting with `g`, by raw enumeration.
fn raw_binary_members(size: usize, g: &OpTable) -> (usize, usize) {
    let (mut total, mut essential) = (0, 0);
    for code in 0..size.pow((size * size) as u32) {
        let f = OpTable::new(2, size, decode_tuple(code, size, size * size)).unwrap();
        if commute(&f, g).unwrap() {
            total += 1;
            if (0..size)
                .any(|y| (0..size).any(|x| (0..size).any(|z| f.apply(&[x, y]) != f.apply(&[z, y]))))
                && (0..size).any(|x| {
                    (0..size).any(|y| (0..size).any(|z| f.apply(&[x, y]) != f.apply(&[x, z])))
                })
            {
                essential += 1;
            }
        }
    }
    (total, essential)
}

fn independent_oracles() {
    // 3-chain: 5^2+2^2+0^2 essential, 6^2+3^2+1^2 total
    assert_eq!(
        raw_binary_members(3, &join_table_op(&Lattice::chain(3))),
        (46, 29)
    );
    // 2-chain: 1^2+0^2, 2^2+1^2
    assert_eq!(
        raw_binary_members(2, &join_table_op(&Lattice::chain(2))),
        (5, 1)
    );

    // join-preserving maps from the square of the 3-chain to the 3-chain
    let join = |a: usize, b: usize| a.max(b);
    let mut maps = 0;
    for code in 0..3usize.pow(9) {
        let h = decode_tuple(code, 3, 9);
        let at = |x: usize, y: usize| h[3 * x + y];
        let ok = (0..9).all(|p| {
            (0..9).all(|q| {
                at(join(p / 3, q / 3), join(p % 3, q % 3))
                    == join(at(p / 3, p % 3), at(q / 3, q % 3))
            })
        });
        if ok {
            maps += 1;
        }
    }
    assert_eq!(maps, 46);

    // the quoted matrix fails meet-commutation with c against e
    use fig2::*;
    let fig = build_fig2();
    let l = &fig.lattice;
    let f = |x: usize, y: usize| fig.f.apply(&[x, y]);
    let columns_first = f(l.meet(A, C), l.meet(C, C));
    let rows_first = l.meet(f(A, C), f(C, C));
    assert_eq!((columns_first, rows_first), (C, E));
    // the lexicographically earlier ((a,c),(c,0)) already fails
    assert_eq!(
        (
            f(l.meet(A, C), l.meet(C, ZERO)),
            l.meet(f(A, C), f(C, ZERO))
        ),
        (ZERO, B)
    );
}

fn acceptance() {
    let reports = run_suite(&[]);
    assert_eq!(reports.len(), 14);
    let mut unexpected = Vec::new();
    for report in &reports {
        println!("{}", report.summary_line());
        for r in report.failures() {
            let known = KNOWN_FAILURES
                .iter()
                .any(|&(id, computed)| r.id == id && r.computed == computed);
            println!(
                "    {} {}: computed {}, expected {}{}",
                if known { "known" } else { "FAIL" },
                r.id,
                r.computed,
                r.expected,
                if known {
                    " (the quoted matrix is the fourth witness)"
                } else {
                    ""
                }
            );
            if !known {
                unexpected.push(r.id.clone());
            }
        }
    }
    for &(id, _) in KNOWN_FAILURES {
        let seen = reports
            .iter()
            .flat_map(|r| &r.records)
            .any(|r| r.id == id && r.status == Status::Fail);
        assert!(seen, "{id} was expected to fail");
    }
    assert!(unexpected.is_empty(), "unexpected failures: {unexpected:?}");
}

// runs without the libtest harness so the criterion lines always show
fn main() {
    independent_oracles();
    println!("independent oracles: ok");
    acceptance();
}
