use crate::error::{Error, Result};
use crate::ops::{fundamental_ops, is_endomorphism, is_hom_power, OpTable};
use crate::order::{Lattice, DEFAULT_ELEMENT_BUDGET};

use super::{enumerate_congruences_with_budget, product_congruence, Congruence};

/// The seven-element lattice with atoms `a, b, c`, `d = a ∨ b`, `e = b ∨ c`,
/// `a ∨ c = 1`, two endomorphisms `u1`, `u2`, and `f = u1(x) ∨ u2(y)`.
#[derive(Clone, Debug)]
pub struct Fig2 {
    pub lattice: Lattice,
    pub u1: OpTable,
    pub u2: OpTable,
    pub f: OpTable,
}

/// Element indices of [`build_fig2`].
pub mod fig2 {
    pub const ZERO: usize = 0;
    pub const A: usize = 1;
    pub const B: usize = 2;
    pub const C: usize = 3;
    pub const D: usize = 4;
    pub const E: usize = 5;
    pub const ONE: usize = 6;
}

/// Builds the seven-element lattice and its two unary maps, panicking if
/// any of the equalities the counterexample relies on fails.
pub fn build_fig2() -> Fig2 {
    use fig2::*;
    let covers = [
        (ZERO, A),
        (ZERO, B),
        (ZERO, C),
        (A, D),
        (B, D),
        (B, E),
        (C, E),
        (D, ONE),
        (E, ONE),
    ];
    let (lattice, perm) = Lattice::from_covers(7, &covers).expect("fig2 covers form a lattice");
    assert_eq!(
        perm,
        (0..7).collect::<Vec<_>>(),
        "fig2 numbering is already canonical"
    );
    let lattice = lattice
        .with_names(
            ["0", "a", "b", "c", "d", "e", "1"]
                .map(String::from)
                .to_vec(),
        )
        .expect("seven names");
    for (x, y, join, meet) in [
        (A, B, D, ZERO),
        (B, C, E, ZERO),
        (A, C, ONE, ZERO),
        (D, E, ONE, B),
    ] {
        assert_eq!(lattice.join(x, y), join, "fig2 join {x} {y}");
        assert_eq!(lattice.meet(x, y), meet, "fig2 meet {x} {y}");
    }
    let u1 = OpTable::new(1, 7, vec![ZERO, A, ZERO, B, A, B, D]).expect("u1");
    let u2 = OpTable::new(1, 7, vec![ZERO, ZERO, ZERO, C, ZERO, C, C]).expect("u2");
    for u in [&u1, &u2] {
        for op in fundamental_ops(&lattice) {
            assert!(
                is_endomorphism(u, &op),
                "fig2 unary map is not an endomorphism"
            );
        }
    }
    let f = OpTable::from_fn(2, 7, |t| lattice.join(u1.apply(&t[..1]), u2.apply(&t[1..])));
    Fig2 { lattice, u1, u2, f }
}

/// `K_n × {0,1}` ordered lexicographically. Element `(a, i)` has index
/// `2a + i` where `a` is a bitmask.
///
/// The tables follow the four-case definitions directly; the order is
/// `(a,i) ≤ (b,j)` iff `a < b`, or `a = b` and `i ≤ j`.
pub fn build_lex_doubling(n: usize) -> Result<Lattice> {
    if n > 10 {
        return Err(Error::BudgetExceeded(format!(
            "lexicographic doubling of 2^{n}"
        )));
    }
    let k = 1usize << (n + 1);
    let mut join = vec![0; k * k];
    let mut meet = vec![0; k * k];
    let subset = |a: usize, b: usize| a & b == a;
    for x in 0..k {
        for y in 0..k {
            let (a, i, b, j) = (x >> 1, x & 1, y >> 1, y & 1);
            let (jn, mt) = if a == b {
                ((a, i | j), (a, i & j))
            } else if subset(b, a) {
                ((a, i), (b, j))
            } else if subset(a, b) {
                ((b, j), (a, i))
            } else {
                ((a | b, 0), (a & b, 1))
            };
            join[x * k + y] = 2 * jn.0 + jn.1;
            meet[x * k + y] = 2 * mt.0 + mt.1;
        }
    }
    Lattice::from_tables(k, join, meet)
}

/// The congruence `(a, i) ~ (b, j)` iff `a = b`, whose quotient is `K_n`.
pub fn forget_second_coordinate(n: usize) -> Congruence {
    let labels: Vec<usize> = (0..1usize << (n + 1)).map(|x| x >> 1).collect();
    Congruence::from_labels(&labels)
}

/// `M_3^n` and the operation taking the first coordinate of each argument.
pub fn build_m3_power(n: usize) -> Result<(Lattice, OpTable)> {
    let m3 = Lattice::m3();
    let l = m3.power(n, DEFAULT_ELEMENT_BUDGET)?;
    let lead = 5usize.pow(n.saturating_sub(1) as u32);
    let f = OpTable::from_fn(n, l.size(), |t| {
        t.iter().fold(0, |acc, &x| acc * 5 + x / lead)
    });
    Ok((l, f))
}

/// Every congruence of `L^n` is a product of congruences of `L`.
pub fn product_congruence_decomposition_check(
    l: &Lattice,
    n: usize,
    budget: usize,
) -> Result<bool> {
    let power = l.power(n, budget)?;
    let all = enumerate_congruences_with_budget(&power, budget)?;
    let factors = enumerate_congruences_with_budget(l, budget)?;
    let mut products = Vec::new();
    let mut choice = vec![0usize; n];
    loop {
        let picked: Vec<&Congruence> = choice.iter().map(|&i| &factors[i]).collect();
        products.push(product_congruence(&picked));
        let mut i = n;
        loop {
            if i == 0 {
                products.sort();
                products.dedup();
                let mut all = all;
                all.sort();
                return Ok(all == products);
            }
            i -= 1;
            choice[i] += 1;
            if choice[i] < factors.len() {
                break;
            }
            choice[i] = 0;
        }
    }
}

/// Checks that `f` lies in `[∨,∧]*` of `l` and is essentially `arity`-ary.
pub fn is_essential_member(f: &OpTable, l: &Lattice) -> Result<bool> {
    Ok(is_hom_power(f, l)? && f.essential_arity() == f.arity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{kernel, quotient};
    use crate::ops::commutes;
    use crate::order::Poset;

    #[test]
    fn fig2_validates() {
        let fig = build_fig2();
        assert_eq!(fig.lattice.label(fig2::E), "e");
        let theta = kernel(fig.u1.values());
        assert_eq!(
            theta.classes(),
            vec![vec![0, 2], vec![1, 4], vec![3, 5], vec![6]]
        );
        assert!(theta.is_compatible(&fig.lattice));
    }

    #[test]
    fn fig2_meet_witness() {
        use fig2::*;
        let fig = build_fig2();
        let meet = OpTable::binary(7, fig.lattice.meet_table()).unwrap();
        let w = commutes(&fig.f, &meet)
            .unwrap()
            .expect("f does not commute with meet");
        // rows_first = meet of f over rows, columns_first = f of the column meets
        let rows = |m: &[[usize; 2]; 2]| fig.lattice.meet(fig.f.apply(&m[0]), fig.f.apply(&m[1]));
        let cols = |m: &[[usize; 2]; 2]| {
            fig.f.apply(&[
                fig.lattice.meet(m[0][0], m[1][0]),
                fig.lattice.meet(m[0][1], m[1][1]),
            ])
        };
        let quoted = [[A, C], [C, C]];
        assert_eq!((cols(&quoted), rows(&quoted)), (C, E));
        assert_eq!(w.matrix, vec![vec![A, C], vec![C, ZERO]]);
        assert_eq!((w.columns_first, w.rows_first), (ZERO, B));
    }

    #[test]
    fn lex_doubling_tables() {
        let l = build_lex_doubling(4).unwrap();
        assert_eq!(l.size(), 32);
        let (a, b) = (0b0001, 0b0010);
        assert_eq!(l.join(2 * a, 2 * b), 2 * (a | b));
        assert_eq!(l.meet(2 * 0b0011 + 1, 2 * 0b0110), 2 * 0b0010 + 1);
        // the order is lexicographic with strict comparison on the first coordinate
        let lex = Poset::new(32, {
            let mut rel = vec![false; 32 * 32];
            for x in 0..32usize {
                for y in 0..32usize {
                    let (a, i, b, j) = (x >> 1, x & 1, y >> 1, y & 1);
                    rel[x * 32 + y] = (a != b && a & b == a) || (a == b && i <= j);
                }
            }
            rel
        })
        .unwrap();
        assert!((0..32).all(|x| (0..32).all(|y| lex.leq(x, y) == l.leq(x, y))));
        let theta = forget_second_coordinate(4);
        assert!(theta.is_compatible(&l));
        let q = quotient(&l, &theta);
        assert_eq!(q.size(), 16);
        assert!(q.is_distributive() && q.is_complemented());
    }

    #[test]
    fn m3_power_coordinate_op() {
        let (l, f) = build_m3_power(2).unwrap();
        assert_eq!(l.size(), 25);
        assert_eq!(f.apply(&[7, 19]), 5 + 3);
        assert!(is_essential_member(&f, &l).unwrap());
    }

    #[test]
    fn products_of_congruences() {
        for l in [Lattice::chain(2), Lattice::m3(), Lattice::chain(3)] {
            assert!(product_congruence_decomposition_check(&l, 2, 64).unwrap());
        }
    }
}
