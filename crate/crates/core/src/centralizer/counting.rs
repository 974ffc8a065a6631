use num_bigint::{BigInt, BigUint};
use num_integer::binomial;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::homs::{count_homs, Flavor, Preserves};
use crate::order::Lattice;

/// `base^n` with `0^0 = 1`.
pub fn pow(base: u64, n: usize) -> BigUint {
    num_traits::pow(BigUint::from(base), n)
}

fn big_binomial(n: usize, k: usize) -> BigUint {
    binomial(BigUint::from(n), BigUint::from(k))
}

/// One summand of the two filter-indexed sums over a lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterSummand {
    pub element: usize,
    /// `|Hom_∨^0(S, ↑b)|`
    pub join_homs: u64,
    /// `|Hom_∧^1(↑b, S)|`
    pub meet_homs: u64,
    pub term: BigUint,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FilterSumReport {
    pub arity: usize,
    pub summands: Vec<FilterSummand>,
    pub total: BigUint,
}

/// Number of essentially `n`-ary members of `[∨]*` on a finite lattice,
/// `Σ_b (|Hom_∨^0(S, ↑b)| - 1)^n`, with the meet-hom form computed alongside.
/// The two forms must agree for every `b`.
pub fn count_essential_thm(s: &Lattice, n: usize) -> Result<FilterSumReport> {
    let mut summands = Vec::with_capacity(s.size());
    let mut total = BigUint::zero();
    for b in 0..s.size() {
        let (up, _) = s.filter_sublattice(b);
        let join_homs = count_homs(s, &up, Flavor::Join, Preserves::BOTTOM)?;
        let meet_homs = count_homs(&up, s, Flavor::Meet, Preserves::TOP)?;
        if join_homs != meet_homs {
            return Err(Error::FormulaDisagreement(format!(
                "at element {b}: {join_homs} join-homomorphisms, {meet_homs} meet-homomorphisms"
            )));
        }
        let term = pow(join_homs - 1, n);
        total += &term;
        summands.push(FilterSummand {
            element: b,
            join_homs,
            meet_homs,
            term,
        });
    }
    Ok(FilterSumReport {
        arity: n,
        summands,
        total,
    })
}

/// `Σ_{i=1..ℓ} [C(ℓ+i-2, ℓ-1) - 1]^n`, essentially `n`-ary members of `[∨]*`
/// on the `ℓ`-chain.
pub fn count_essential_chain(l: usize, n: usize) -> BigUint {
    chain_terms(l)
        .into_iter()
        .map(|c| num_traits::pow(c - 1u32, n))
        .sum()
}

/// `Σ_{i=1..ℓ} C(ℓ+i-2, ℓ-1)^n`, all `n`-ary members of `[∨]*` on the `ℓ`-chain.
pub fn count_total_chain(l: usize, n: usize) -> BigUint {
    chain_terms(l)
        .into_iter()
        .map(|c| num_traits::pow(c, n))
        .sum()
}

/// The bases `C(ℓ+i-2, ℓ-1)` for `i = 1..ℓ`.
pub fn chain_terms(l: usize) -> Vec<BigUint> {
    assert!(l >= 1, "chains have at least one element");
    (1..=l).map(|i| big_binomial(l + i - 2, l - 1)).collect()
}

/// Summands of the essential count on the V-shaped semilattice, one per
/// kind of member: constants at the top, constants at each atom, and the rest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VBreakdown {
    pub top: BigUint,
    pub first_atom: BigUint,
    pub second_atom: BigUint,
    pub rest: BigUint,
}

impl VBreakdown {
    pub fn total(&self) -> BigUint {
        &self.top + &self.first_atom + &self.second_atom + &self.rest
    }
}

pub fn v_breakdown(n: usize) -> VBreakdown {
    let rest = BigInt::from(pow(8, n)) - BigInt::from(pow(6, n));
    VBreakdown {
        top: pow(0, n),
        first_atom: pow(2, n),
        second_atom: pow(2, n),
        rest: rest.to_biguint().expect("8^n >= 6^n"),
    }
}

/// `8^n - 6^n + 2·2^n + 0^n`.
pub fn count_essential_v(n: usize) -> BigUint {
    v_breakdown(n).total()
}

/// `9^n - 7^n + 2·3^n + 1^n`.
pub fn count_total_v(n: usize) -> BigUint {
    let v: BigInt =
        BigInt::from(pow(9, n)) - BigInt::from(pow(7, n)) + BigInt::from(pow(3, n)) * 2 + 1;
    v.to_biguint().expect("9^n >= 7^n")
}

/// `Σ_{k=0..n} C(n,k) p_k`: all `n`-ary operations from the essential counts.
pub fn essential_to_total(p: &[BigUint], n: usize) -> Result<BigUint> {
    if p.len() <= n {
        return Err(Error::ArityMismatch {
            expected: n + 1,
            found: p.len(),
        });
    }
    Ok((0..=n).map(|k| big_binomial(n, k) * &p[k]).sum())
}

/// `3^{n+1} + Σ_{0≤p<n, 0≤q≤n-p} C(n,p) C(n-p,q) (3^p 2^q - 1)`, evaluated
/// term by term.
pub fn machida_rosenberg(n: usize) -> BigUint {
    let mut total = pow(3, n + 1);
    for p in 0..n {
        for q in 0..=(n - p) {
            let inner = pow(3, p) * pow(2, q) - 1u32;
            total += big_binomial(n, p) * big_binomial(n - p, q) * inner;
        }
    }
    total
}

/// `a^n + b^n + ...` for a list of bases.
pub fn power_sum(bases: &[u64], n: usize) -> BigUint {
    bases.iter().map(|&b| pow(b, n)).sum()
}

/// A count as `u64` when it fits.
pub fn small(count: &BigUint) -> Option<u64> {
    count.to_u64()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::count_centralizer_members;
    use crate::ops::fundamental_ops;
    use crate::order::Semilattice;

    #[test]
    fn chain_counts() {
        for n in 0..=6 {
            assert_eq!(count_essential_chain(2, n), power_sum(&[1, 0], n));
            assert_eq!(count_total_chain(2, n), power_sum(&[2, 1], n));
            assert_eq!(count_essential_chain(3, n), power_sum(&[5, 2, 0], n));
            assert_eq!(count_total_chain(3, n), power_sum(&[6, 3, 1], n));
        }
        assert_eq!(count_essential_chain(4, 2), BigUint::from(451u32));
        assert_eq!(count_total_chain(4, 2), BigUint::from(517u32));
    }

    #[test]
    fn filter_sum_examples() {
        let c3 = Lattice::chain(3);
        assert_eq!(
            count_essential_thm(&c3, 2).unwrap().total,
            BigUint::from(29u32)
        );
        for l in [Lattice::chain(4), Lattice::m3(), Lattice::boolean(2)] {
            assert_eq!(
                count_essential_thm(&l, 0).unwrap().total,
                BigUint::from(l.size())
            );
        }
        let b2 = Lattice::boolean(2);
        let oracle =
            count_centralizer_members(4, &fundamental_ops(&b2.join_semilattice()), 2).unwrap();
        assert_eq!(
            count_essential_thm(&b2, 2).unwrap().total,
            BigUint::from(oracle.essential)
        );
    }

    #[test]
    fn chain_formula_matches_filter_sum() {
        for l in 1..=6 {
            for n in 0..=4 {
                assert_eq!(
                    count_essential_chain(l, n),
                    count_essential_thm(&Lattice::chain(l), n).unwrap().total
                );
            }
        }
    }

    #[test]
    fn v_counts() {
        assert_eq!(count_essential_v(0), BigUint::from(3u32));
        assert_eq!(count_essential_v(2), BigUint::from(36u32));
        assert_eq!(count_total_v(2), BigUint::from(51u32));
        let v = Semilattice::v_shape();
        let counts = count_centralizer_members(3, &fundamental_ops(&v), 2).unwrap();
        assert_eq!((counts.essential, counts.total), (36, 51));
    }

    #[test]
    fn essential_to_total_examples() {
        let p: Vec<BigUint> = [3u32, 7, 29].map(BigUint::from).to_vec();
        assert_eq!(essential_to_total(&p, 2).unwrap(), BigUint::from(46u32));
        let only_constants = vec![BigUint::from(4u32), BigUint::zero(), BigUint::zero()];
        assert_eq!(
            essential_to_total(&only_constants, 2).unwrap(),
            BigUint::from(4u32)
        );
        let v: Vec<BigUint> = [3u32, 6].map(BigUint::from).to_vec();
        assert_eq!(essential_to_total(&v, 1).unwrap(), count_total_v(1));
    }

    #[test]
    fn machida_rosenberg_values() {
        assert_eq!(machida_rosenberg(0), BigUint::from(3u32));
        assert_eq!(machida_rosenberg(1), BigUint::from(10u32));
        assert_eq!(machida_rosenberg(5), BigUint::from(8020u32));
        for n in 0..=10 {
            assert_eq!(machida_rosenberg(n), power_sum(&[6, 3, 1], n));
        }
    }
}
