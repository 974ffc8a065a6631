use serde::Serialize;

use crate::centralizer::{count_centralizer_members, cube_operation};
use crate::error::{Error, Result};
use crate::homs::find_embedding;
use crate::ops::{fundamental_ops, OpTable};
use crate::order::{encode_mixed, Lattice};

use super::{enumerate_congruences, quotient, Congruence};

/// Default cap on the congruence tuples tried by the embedding search.
pub const DEFAULT_TUPLE_BUDGET: usize = 1 << 16;

/// Evidence that `2^n` is a sublattice or a quotient.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CubeWitness {
    /// `I ↦ b ∨ ⋁_{i∈I} a_i` embeds `2^n`.
    Sublattice {
        n: usize,
        base: usize,
        atoms: Vec<usize>,
    },
    /// `L/θ ≅ 2^n`; `labeling[block]` is the subset bitmask of that block.
    Quotient {
        n: usize,
        congruence: Congruence,
        labeling: Vec<usize>,
    },
}

/// The image of subset `mask` under the candidate cube map.
fn cube_point(l: &Lattice, b: usize, atoms: &[usize], mask: usize) -> usize {
    atoms
        .iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(b, |acc, (_, &a)| l.join(acc, a))
}

/// Whether `I ↦ b ∨ ⋁_{i∈I} a_i` is injective and preserves meets.
pub fn is_cube_embedding(l: &Lattice, b: usize, atoms: &[usize]) -> bool {
    let n = atoms.len();
    let points: Vec<usize> = (0..1usize << n)
        .map(|m| cube_point(l, b, atoms, m))
        .collect();
    let mut sorted = points.clone();
    sorted.sort_unstable();
    sorted.dedup();
    if sorted.len() != points.len() {
        return false;
    }
    (0..points.len())
        .all(|i| (0..points.len()).all(|j| l.meet(points[i], points[j]) == points[i & j]))
}

/// First `(b, a_1 < ... < a_n)` in index order spanning a copy of `2^n`.
pub fn find_cube_sublattice(l: &Lattice, n: usize) -> Option<CubeWitness> {
    if n == 0 {
        return Some(CubeWitness::Sublattice {
            n,
            base: l.bottom(),
            atoms: Vec::new(),
        });
    }
    for b in 0..l.size() {
        let above: Vec<usize> = (b + 1..l.size()).filter(|&x| l.leq(b, x)).collect();
        let mut atoms = Vec::with_capacity(n);
        if extend_atoms(l, b, &above, 0, n, &mut atoms) {
            return Some(CubeWitness::Sublattice { n, base: b, atoms });
        }
    }
    None
}

fn extend_atoms(
    l: &Lattice,
    b: usize,
    above: &[usize],
    from: usize,
    n: usize,
    atoms: &mut Vec<usize>,
) -> bool {
    if atoms.len() == n {
        return true;
    }
    for (pos, &a) in above.iter().enumerate().skip(from) {
        if atoms.iter().any(|&x| l.meet(x, a) != b) {
            continue;
        }
        atoms.push(a);
        if is_cube_embedding(l, b, atoms) && extend_atoms(l, b, above, pos + 1, n, atoms) {
            return true;
        }
        atoms.pop();
    }
    false
}

/// Size `2^n`, distributive and complemented.
pub fn is_boolean_cube(q: &Lattice, n: usize) -> bool {
    n < usize::BITS as usize && q.size() == 1 << n && q.is_distributive() && q.is_complemented()
}

/// Labels each element of a Boolean lattice by the set of atoms below it.
fn atom_labels(q: &Lattice) -> Vec<usize> {
    let atoms: Vec<usize> = (0..q.size())
        .filter(|&x| {
            x != q.bottom()
                && (0..q.size()).all(|y| y == x || y == q.bottom() || !q.order().lt(y, x))
        })
        .collect();
    (0..q.size())
        .map(|x| {
            atoms
                .iter()
                .enumerate()
                .filter(|(_, &a)| q.leq(a, x))
                .fold(0, |acc, (i, _)| acc | 1 << i)
        })
        .collect()
}

/// First congruence in enumeration order whose quotient is `2^n`.
pub fn exists_cube_quotient(l: &Lattice, n: usize) -> Result<Option<CubeWitness>> {
    for theta in enumerate_congruences(l)? {
        if n < usize::BITS as usize && theta.count == 1 << n {
            let q = quotient(l, &theta);
            if is_boolean_cube(&q, n) {
                return Ok(Some(CubeWitness::Quotient {
                    n,
                    labeling: atom_labels(&q),
                    congruence: theta,
                }));
            }
        }
    }
    Ok(None)
}

/// How an essentially `n`-ary member of `[∨,∧]*` was obtained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "method", rename_all = "snake_case")]
pub enum EssMethod {
    /// `⋁ (x_i ∨ b) ∧ a_i` over a cube sublattice of a distributive lattice.
    Cube {
        base: usize,
        atoms: Vec<usize>,
    },
    /// `f(x) = φ(x_1/θ_1, ..., x_n/θ_n)` for an embedding `φ` of the
    /// product of quotients.
    Embedding {
        congruences: Vec<Congruence>,
        embedding: Vec<usize>,
    },
    Constant,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EssWitness {
    pub op: OpTable,
    pub method: EssMethod,
}

/// An essentially `n`-ary operation in `[∨,∧]*`, or `None` if there is none.
///
/// On distributive lattices this goes through the cube sublattice. Otherwise
/// tuples `θ_1 ≤ ... ≤ θ_n` of proper congruences (in enumeration order,
/// product of block counts at most `|L|`) are tried until the product of
/// the quotients embeds into `L`. Running out of `tuple_budget` is reported
/// as [`Error::Undecided`].
pub fn exists_essential_nary(
    l: &Lattice,
    n: usize,
    tuple_budget: usize,
) -> Result<Option<EssWitness>> {
    let witness = if n == 0 {
        Some(EssWitness {
            op: OpTable::constant(0, l.size(), l.bottom()),
            method: EssMethod::Constant,
        })
    } else if l.is_distributive() {
        match find_cube_sublattice(l, n) {
            Some(CubeWitness::Sublattice { base, atoms, .. }) => Some(EssWitness {
                op: cube_operation(l, base, &atoms),
                method: EssMethod::Cube { base, atoms },
            }),
            _ => None,
        }
    } else {
        embedding_search(l, n, tuple_budget)?
    };
    if let Some(w) = &witness {
        assert!(
            super::is_essential_member(&w.op, l)?,
            "constructed operation is not an essentially {n}-ary member"
        );
    }
    Ok(witness)
}

fn embedding_search(l: &Lattice, n: usize, tuple_budget: usize) -> Result<Option<EssWitness>> {
    let proper: Vec<Congruence> = enumerate_congruences(l)?
        .into_iter()
        .filter(|t| !t.is_total())
        .collect();
    let quotients: Vec<Lattice> = proper.iter().map(|t| quotient(l, t)).collect();
    let mut tried = 0usize;
    let mut choice: Vec<usize> = Vec::with_capacity(n);
    let found = tuples(&proper, n, l.size(), 0, 1, &mut choice, &mut |picked| {
        tried += 1;
        if tried > tuple_budget {
            return Err(Error::Undecided(format!(
                "no essentially {n}-ary witness among the first {tuple_budget} congruence tuples"
            )));
        }
        let factors: Vec<&Lattice> = picked.iter().map(|&i| &quotients[i]).collect();
        let product = Lattice::product(&factors)?;
        Ok(find_embedding(&product, l)?.map(|phi| (picked.to_vec(), phi)))
    })?;
    let Some((picked, phi)) = found else {
        return Ok(None);
    };
    let congruences: Vec<Congruence> = picked.iter().map(|&i| proper[i].clone()).collect();
    let radices: Vec<usize> = congruences.iter().map(|t| t.count).collect();
    let op = OpTable::from_fn(n, l.size(), |t| {
        let blocks: Vec<usize> = t
            .iter()
            .zip(&congruences)
            .map(|(&x, th)| th.blocks[x])
            .collect();
        phi[encode_mixed(&blocks, &radices)]
    });
    Ok(Some(EssWitness {
        op,
        method: EssMethod::Embedding {
            congruences,
            embedding: phi,
        },
    }))
}

type Found = Option<(Vec<usize>, Vec<usize>)>;

/// Nondecreasing index tuples whose block-count product stays within `limit`.
fn tuples(
    proper: &[Congruence],
    n: usize,
    limit: usize,
    from: usize,
    product: usize,
    choice: &mut Vec<usize>,
    visit: &mut impl FnMut(&[usize]) -> Result<Found>,
) -> Result<Found> {
    if choice.len() == n {
        return visit(choice);
    }
    for i in from..proper.len() {
        let p = product * proper[i].count;
        if p > limit {
            // block counts are nondecreasing along the list
            break;
        }
        choice.push(i);
        if let Some(found) = tuples(proper, n, limit, i, p, choice, visit)? {
            return Ok(Some(found));
        }
        choice.pop();
    }
    Ok(None)
}

/// Result of checking that nothing essentially more than `log₂|L|`-ary
/// commutes with `∨` and `∧`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ArityBoundReport {
    pub size: usize,
    /// The least arity `n` with `2^n > |L|`.
    pub arity: usize,
    pub members: u64,
    pub essential: u64,
    pub holds: bool,
}

pub fn first_violating_arity(size: usize) -> usize {
    (0..)
        .find(|&n| 1u128 << n > size as u128)
        .expect("some power of two exceeds size")
}

/// Brute-force count of `[∨,∧]*` at the first arity above `log₂|L|`.
pub fn cd_arity_bound_check(l: &Lattice) -> Result<ArityBoundReport> {
    let arity = first_violating_arity(l.size());
    let counts = count_centralizer_members(l.size(), &fundamental_ops(l), arity)?;
    Ok(ArityBoundReport {
        size: l.size(),
        arity,
        members: counts.total,
        essential: counts.essential,
        holds: counts.essential == 0,
    })
}

/// Outcome of one of the three cube predicates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails,
    Undecided,
}

impl Verdict {
    pub fn holds(&self) -> Option<bool> {
        match self {
            Verdict::Holds => Some(true),
            Verdict::Fails => Some(false),
            Verdict::Undecided => None,
        }
    }

    fn of(b: bool) -> Self {
        if b {
            Verdict::Holds
        } else {
            Verdict::Fails
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub size: usize,
    pub n: usize,
    pub distributive: bool,
    pub ess: Verdict,
    pub sub: Verdict,
    pub quo: Verdict,
    pub ess_witness: Option<EssWitness>,
    pub sub_witness: Option<CubeWitness>,
    pub quo_witness: Option<CubeWitness>,
}

/// Evaluates (Ess), (Sub) and (Quo) for `n`.
pub fn classify(l: &Lattice, n: usize) -> Result<Classification> {
    let sub_witness = find_cube_sublattice(l, n);
    let quo_witness = exists_cube_quotient(l, n)?;
    let (ess, ess_witness) = match exists_essential_nary(l, n, DEFAULT_TUPLE_BUDGET) {
        Ok(w) => (Verdict::of(w.is_some()), w),
        Err(Error::Undecided(_)) => (Verdict::Undecided, None),
        Err(e) => return Err(e),
    };
    Ok(Classification {
        size: l.size(),
        n,
        distributive: l.is_distributive(),
        ess,
        sub: Verdict::of(sub_witness.is_some()),
        quo: Verdict::of(quo_witness.is_some()),
        ess_witness,
        sub_witness,
        quo_witness,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::congruence::{build_fig2, build_lex_doubling, build_m3_power, kernel};

    #[test]
    fn cube_sublattices() {
        assert_eq!(
            find_cube_sublattice(&Lattice::m3(), 2),
            Some(CubeWitness::Sublattice {
                n: 2,
                base: 0,
                atoms: vec![1, 2]
            })
        );
        assert_eq!(find_cube_sublattice(&Lattice::chain(5), 2), None);
        assert!(find_cube_sublattice(&Lattice::boolean(3), 3).is_some());
        assert!(find_cube_sublattice(&Lattice::boolean(3), 4).is_none());
        assert!(find_cube_sublattice(&Lattice::n5(), 2).is_some());
        assert!(find_cube_sublattice(&Lattice::n5(), 3).is_none());
    }

    #[test]
    fn lex_doubling_separates_quo_from_sub() {
        let l = build_lex_doubling(4).unwrap();
        assert!(find_cube_sublattice(&l, 4).is_none());
        let Some(CubeWitness::Quotient { congruence, .. }) = exists_cube_quotient(&l, 4).unwrap()
        else {
            panic!("expected a quotient witness");
        };
        assert_eq!(congruence, crate::congruence::forget_second_coordinate(4));
        assert!(find_cube_sublattice(&l, 3).is_some());
    }

    #[test]
    fn cube_quotients() {
        let fig = build_fig2();
        let Some(CubeWitness::Quotient {
            congruence,
            labeling,
            ..
        }) = exists_cube_quotient(&fig.lattice, 2).unwrap()
        else {
            panic!("fig2 has a 2^2 quotient");
        };
        assert_eq!(congruence, kernel(fig.u1.values()));
        assert_eq!(labeling.len(), 4);
        let (m3sq, _) = build_m3_power(2).unwrap();
        assert_eq!(exists_cube_quotient(&m3sq, 2).unwrap(), None);
        assert_eq!(exists_cube_quotient(&Lattice::m3(), 1).unwrap(), None);
    }

    #[test]
    fn essential_witnesses() {
        let (m3sq, coord) = build_m3_power(2).unwrap();
        let w = exists_essential_nary(&m3sq, 2, DEFAULT_TUPLE_BUDGET)
            .unwrap()
            .unwrap();
        assert!(matches!(w.method, EssMethod::Embedding { .. }));
        assert_eq!(w.op.essential_arity(), 2);
        assert_eq!(w.op, coord);
        assert_eq!(
            exists_essential_nary(&Lattice::m3(), 2, DEFAULT_TUPLE_BUDGET).unwrap(),
            None
        );
        let w = exists_essential_nary(&Lattice::boolean(2), 2, DEFAULT_TUPLE_BUDGET)
            .unwrap()
            .unwrap();
        assert!(matches!(w.method, EssMethod::Cube { .. }));
        assert_eq!(
            exists_essential_nary(&Lattice::boolean(2), 3, DEFAULT_TUPLE_BUDGET).unwrap(),
            None
        );
        assert!(matches!(
            exists_essential_nary(&m3sq, 2, 0),
            Err(Error::Undecided(_))
        ));
    }

    #[test]
    fn arity_bound() {
        let r = cd_arity_bound_check(&Lattice::chain(3)).unwrap();
        assert_eq!((r.arity, r.essential), (2, 0));
        assert!(cd_arity_bound_check(&Lattice::m3()).unwrap().holds);
        let b2 = cd_arity_bound_check(&Lattice::boolean(2)).unwrap();
        assert_eq!(b2.arity, 3);
        assert!(b2.holds);
        let m3 = count_centralizer_members(5, &fundamental_ops(&Lattice::m3()), 2).unwrap();
        assert_eq!(m3.essential, 0);
    }

    #[test]
    fn classification() {
        let c = classify(&Lattice::boolean(2), 2).unwrap();
        assert_eq!(
            (c.ess, c.sub, c.quo),
            (Verdict::Holds, Verdict::Holds, Verdict::Holds)
        );
        let c = classify(&Lattice::n5(), 2).unwrap();
        assert_eq!(
            (c.ess, c.sub, c.quo),
            (Verdict::Holds, Verdict::Holds, Verdict::Holds)
        );
        let c = classify(&Lattice::m3(), 2).unwrap();
        assert_eq!(
            (c.ess, c.sub, c.quo),
            (Verdict::Fails, Verdict::Holds, Verdict::Fails)
        );
    }
}
