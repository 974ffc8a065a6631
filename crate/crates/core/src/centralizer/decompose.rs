use crate::error::{Error, Result};
use crate::homs::{enumerate_homs, Flavor, Preserves};
use crate::ops::{commutes, fundamental_ops, is_hom_power, CommutationWitness, OpTable};
use crate::order::{Lattice, Semilattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DecompositionFlavor {
    /// Members of `[∨]*`: `u_i` are join-endomorphisms with equal values at 0.
    Semilattice,
    /// Members of `[∨,∧]*` on a distributive lattice: additionally
    /// `u_i(1) ∧ u_j(1) = u_1(0)` for `i != j`.
    Distributive,
}

/// `f(x_1, ..., x_n) = u_1(x_1) ∨ ... ∨ u_n(x_n)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinDecomposition {
    pub unaries: Vec<OpTable>,
    pub flavor: DecompositionFlavor,
}

impl JoinDecomposition {
    /// Variables whose unary part is nonconstant, 0-based.
    pub fn nonconstant_positions(&self) -> Vec<usize> {
        (0..self.unaries.len())
            .filter(|&i| !self.unaries[i].is_constant())
            .collect()
    }
}

/// `⋁ u_i(x_i)` over a join table.
pub fn recompose(unaries: &[OpTable], join: &Semilattice) -> Result<OpTable> {
    let k = join.size();
    if unaries.is_empty() {
        return Err(Error::InvalidDecomposition("no unary parts".into()));
    }
    for u in unaries {
        if u.arity() != 1 || u.base() != k {
            return Err(Error::InvalidDecomposition(
                "parts must be unary on the structure".into(),
            ));
        }
    }
    Ok(OpTable::from_fn(unaries.len(), k, |t| {
        t.iter()
            .zip(unaries)
            .map(|(&x, u)| u.at(x))
            .reduce(|a, b| join.join(a, b))
            .expect("nonempty")
    }))
}

/// The unary parts `u_i(x) = f(0, ..., x, ..., 0)`.
fn slices(f: &OpTable, zero: usize) -> Vec<OpTable> {
    let n = f.arity();
    (0..n)
        .map(|i| {
            let mut args = vec![zero; n];
            OpTable::from_fn(1, f.base(), |t| {
                args[i] = t[0];
                f.apply(&args)
            })
        })
        .collect()
}

/// Decomposes a member of `[∨]*` on a join-semilattice with a least element.
pub fn semilattice_decompose(f: &OpTable, s: &Semilattice) -> Result<JoinDecomposition> {
    let zero = s.least().ok_or(Error::NoLeastElement)?;
    if f.arity() == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    }
    if !is_hom_power(f, s)? {
        return Err(Error::NotInCentralizer);
    }
    let unaries = slices(f, zero);
    if &recompose(&unaries, s)? != f {
        return Err(Error::InvalidDecomposition(
            "recomposition differs from f".into(),
        ));
    }
    Ok(JoinDecomposition {
        unaries,
        flavor: DecompositionFlavor::Semilattice,
    })
}

/// Every tuple of join-endomorphisms `(u_1..u_n)` with `u_1(0) = ... = u_n(0)`
/// and `⋁ u_i(x_i) = f`, found by exhaustive search.
pub fn enumerate_join_decompositions(f: &OpTable, s: &Semilattice) -> Result<Vec<Vec<OpTable>>> {
    let zero = s.least().ok_or(Error::NoLeastElement)?;
    let endos: Vec<OpTable> = enumerate_homs(s, s, Flavor::Join, Preserves::NONE)?
        .into_iter()
        .map(|h| OpTable::new(1, s.size(), h.map).expect("endomorphism table"))
        .collect();
    let mut out = Vec::new();
    let mut chosen = Vec::new();
    extend_decomposition(f, s, zero, &endos, &mut chosen, &mut out)?;
    Ok(out)
}

fn extend_decomposition(
    f: &OpTable,
    s: &Semilattice,
    zero: usize,
    endos: &[OpTable],
    chosen: &mut Vec<OpTable>,
    out: &mut Vec<Vec<OpTable>>,
) -> Result<()> {
    if chosen.len() == f.arity() {
        if &recompose(chosen, s)? == f {
            out.push(chosen.clone());
        }
        return Ok(());
    }
    for u in endos {
        if chosen.first().is_some_and(|c| c.at(zero) != u.at(zero)) {
            continue;
        }
        chosen.push(u.clone());
        extend_decomposition(f, s, zero, endos, chosen, out)?;
        chosen.pop();
    }
    Ok(())
}

/// Certificate that a binary member of `[∨]*` is not `u_1(x_1) ∨ u_2(x_2)`
/// for any endomorphisms `u_1, u_2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NonLatticeCertificate {
    pub minimal_pair: (usize, usize),
    pub operation: OpTable,
    pub in_centralizer: bool,
    pub endomorphisms: usize,
    pub pairs_checked: usize,
    pub decomposable: bool,
}

/// For a join-semilattice without a least element, builds the binary
/// operation sending `(a,b) ↦ a`, `(b,b) ↦ b` and everything else to `a ∨ b`
/// for the first two minimal elements `a, b`, and checks it against every
/// pair of join-endomorphisms.
pub fn witness_nonlattice(s: &Semilattice) -> Result<NonLatticeCertificate> {
    if s.least().is_some() {
        return Err(Error::HasLeastElement);
    }
    let minimal = s.order().minimal_elements();
    let (a, b) = (minimal[0], minimal[1]);
    let top = s.join(a, b);
    let operation = OpTable::from_fn(2, s.size(), |t| match (t[0], t[1]) {
        (x, y) if x == a && y == b => a,
        (x, y) if x == b && y == b => b,
        _ => top,
    });
    let in_centralizer = is_hom_power(&operation, s)?;
    let endos: Vec<OpTable> = enumerate_homs(s, s, Flavor::Join, Preserves::NONE)?
        .into_iter()
        .map(|h| OpTable::new(1, s.size(), h.map).expect("endomorphism table"))
        .collect();
    let mut pairs_checked = 0;
    let mut decomposable = false;
    for u1 in &endos {
        for u2 in &endos {
            pairs_checked += 1;
            if recompose(&[u1.clone(), u2.clone()], s)? == operation {
                decomposable = true;
            }
        }
    }
    Ok(NonLatticeCertificate {
        minimal_pair: (a, b),
        operation,
        in_centralizer,
        endomorphisms: endos.len(),
        pairs_checked,
        decomposable,
    })
}

/// Decomposes a member of `[∨,∧]*` on a distributive lattice and checks
/// `u_i(1) ∧ u_j(1) = u_1(0)` for all `i != j`.
pub fn distributive_decompose(f: &OpTable, l: &Lattice) -> Result<JoinDecomposition> {
    if !l.is_distributive() {
        return Err(Error::NotDistributive);
    }
    if f.arity() == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    }
    if !is_hom_power(f, l)? {
        return Err(Error::NotInCentralizer);
    }
    let unaries = slices(f, l.bottom());
    check_distributive_conditions(&unaries, l)?;
    if &recompose(&unaries, &l.join_semilattice())? != f {
        return Err(Error::InvalidDecomposition(
            "recomposition differs from f".into(),
        ));
    }
    Ok(JoinDecomposition {
        unaries,
        flavor: DecompositionFlavor::Distributive,
    })
}

fn check_distributive_conditions(unaries: &[OpTable], l: &Lattice) -> Result<()> {
    let ops = fundamental_ops(l);
    let base_value = unaries[0].at(l.bottom());
    for (i, u) in unaries.iter().enumerate() {
        for op in &ops {
            if commutes(u, op)?.is_some() {
                return Err(Error::InvalidDecomposition(format!(
                    "u_{} is not a lattice endomorphism",
                    i + 1
                )));
            }
        }
        if u.at(l.bottom()) != base_value {
            return Err(Error::InvalidDecomposition(
                "parts differ at the least element".into(),
            ));
        }
        for (j, v) in unaries.iter().enumerate() {
            if i != j && l.meet(u.at(l.top()), v.at(l.top())) != base_value {
                return Err(Error::InvalidDecomposition(format!(
                    "u_{}(1) ∧ u_{}(1) differs from u_1(0)",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(())
}

/// Result of joining unary parts on a lattice.
#[derive(Clone, Debug)]
pub struct RecomposeReport {
    pub table: OpTable,
    pub join_witness: Option<CommutationWitness>,
    pub meet_witness: Option<CommutationWitness>,
    /// `Ok` when the parts satisfy the decomposition conditions on a
    /// distributive lattice, which guarantees membership in `[∨,∧]*`.
    pub certified: Result<()>,
}

impl RecomposeReport {
    pub fn in_centralizer(&self) -> bool {
        self.join_witness.is_none() && self.meet_witness.is_none()
    }
}

/// Builds `⋁ u_i(x_i)` and tests it against both lattice operations.
/// Membership is only certified on distributive lattices.
pub fn distributive_recompose(unaries: &[OpTable], l: &Lattice) -> Result<RecomposeReport> {
    let table = recompose(unaries, &l.join_semilattice())?;
    let join = OpTable::binary(l.size(), l.join_table())?;
    let meet = OpTable::binary(l.size(), l.meet_table())?;
    let certified = if l.is_distributive() {
        check_distributive_conditions(unaries, l)
    } else {
        Err(Error::NotDistributive)
    };
    Ok(RecomposeReport {
        join_witness: commutes(&table, &join)?,
        meet_witness: commutes(&table, &meet)?,
        table,
        certified,
    })
}

/// `f(x_1..x_n) = ⋁ ((x_i ∨ b) ∧ a_i)`, essentially `n`-ary in `[∨,∧]*`
/// when `a_1..a_n` lie above `b` with pairwise meets `b` in a distributive
/// lattice.
pub fn cube_operation(l: &Lattice, b: usize, atoms: &[usize]) -> OpTable {
    OpTable::from_fn(atoms.len(), l.size(), |t| {
        t.iter()
            .zip(atoms)
            .map(|(&x, &a)| l.meet(l.join(x, b), a))
            .fold(l.bottom(), |acc, v| l.join(acc, v))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::centralizer::brute_force_centralizer;
    use crate::ops::commute;

    fn fig_chain() -> (Semilattice, OpTable) {
        let u1 = [0, 1, 1, 3, 4];
        let u2 = [0, 1, 2, 4, 4];
        let f = OpTable::from_fn(2, 5, |t| u1[t[0]].max(u2[t[1]]));
        (Lattice::chain(5).join_semilattice(), f)
    }

    #[test]
    fn five_chain_example() {
        let (s, f) = fig_chain();
        let d = semilattice_decompose(&f, &s).unwrap();
        assert_eq!(d.unaries[0].values(), &[0, 1, 1, 3, 4]);
        assert_eq!(d.unaries[1].values(), &[0, 1, 2, 4, 4]);
        assert_eq!(
            enumerate_join_decompositions(&f, &s).unwrap(),
            vec![d.unaries.clone()]
        );
    }

    #[test]
    fn join_and_constants() {
        let s = Lattice::chain(4).join_semilattice();
        let join = OpTable::binary(4, s.join_table()).unwrap();
        let d = semilattice_decompose(&join, &s).unwrap();
        assert!(d.unaries.iter().all(|u| u == &OpTable::projection(1, 4, 0)));
        let c = OpTable::constant(3, 4, 2);
        let d = semilattice_decompose(&c, &s).unwrap();
        assert!(d.unaries.iter().all(|u| u == &OpTable::constant(1, 4, 2)));
        assert!(d.nonconstant_positions().is_empty());
    }

    #[test]
    fn rejects_non_members() {
        let s = Lattice::chain(3).join_semilattice();
        let meet = OpTable::binary(3, Lattice::chain(3).meet_table()).unwrap();
        assert_eq!(
            semilattice_decompose(&meet, &s),
            Err(Error::NotInCentralizer)
        );
        assert_eq!(
            semilattice_decompose(&OpTable::projection(1, 3, 0), &Semilattice::v_shape()),
            Err(Error::NoLeastElement)
        );
    }

    #[test]
    fn nonlattice_witness() {
        let cert = witness_nonlattice(&Semilattice::v_shape()).unwrap();
        assert_eq!(cert.operation.values(), &[2, 0, 2, 2, 1, 2, 2, 2, 2]);
        assert!(cert.in_centralizer);
        assert!(!cert.decomposable);
        assert_eq!(cert.pairs_checked, cert.endomorphisms * cert.endomorphisms);
        assert_eq!(
            witness_nonlattice(&Lattice::chain(3).join_semilattice()),
            Err(Error::HasLeastElement)
        );
        // a < c < 1 and b < 1
        let (s, _) = Semilattice::from_covers(4, &[(0, 2), (2, 3), (1, 3)]).unwrap();
        let cert = witness_nonlattice(&s).unwrap();
        assert!(cert.in_centralizer && !cert.decomposable);
    }

    #[test]
    fn boolean_square_cube_operation() {
        let b2 = Lattice::boolean(2);
        let f = cube_operation(&b2, 0, &[1, 2]);
        assert_eq!(f.essential_arity(), 2);
        assert!(is_hom_power(&f, &b2).unwrap());
        let d = distributive_decompose(&f, &b2).unwrap();
        let report = distributive_recompose(&d.unaries, &b2).unwrap();
        assert_eq!(report.table, f);
        assert!(report.certified.is_ok() && report.in_centralizer());
    }

    #[test]
    fn chain_meet_is_not_a_lattice_centralizer_member() {
        let c3 = Lattice::chain(3);
        let meet = OpTable::binary(3, c3.meet_table()).unwrap();
        let members = brute_force_centralizer(3, &fundamental_ops(&c3), 2).unwrap();
        assert!(!members.contains(&meet));
        assert_eq!(
            distributive_decompose(&meet, &c3),
            Err(Error::NotInCentralizer)
        );
        assert!(!commute(&meet, &OpTable::binary(3, c3.join_table()).unwrap()).unwrap());
    }

    #[test]
    fn m3_refuses_certification() {
        let m3 = Lattice::m3();
        let id = OpTable::projection(1, 5, 0);
        let report = distributive_recompose(&[id.clone(), id], &m3).unwrap();
        assert_eq!(report.certified, Err(Error::NotDistributive));
        assert_eq!(
            distributive_decompose(&report.table, &m3),
            Err(Error::NotDistributive)
        );
    }
}
