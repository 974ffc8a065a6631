//! Named clones of Boolean functions, their centralizers at bounded arity,
//! and sums of unary maps over cyclic groups.

mod maltsev;
mod table;

pub use maltsev::*;
pub use table::*;

use std::sync::OnceLock;

use serde::Serialize;

use crate::centralizer::{CentralizerSearch, DEFAULT_MAX_SOLUTIONS};
use crate::error::{Error, Result};
use crate::ops::{closure_on_base, OpTable, DEFAULT_CLOSURE_CAP};

/// Unary parts allowed in an essentially unary clone, as a bit set over
/// [`UNARY_ID`], [`UNARY_NEG`], [`UNARY_ZERO`], [`UNARY_ONE`].
pub const UNARY_ID: u8 = 1;
pub const UNARY_NEG: u8 = 2;
pub const UNARY_ZERO: u8 = 4;
pub const UNARY_ONE: u8 = 8;

/// The defining property of a clone, before the `_0`, `_1`, `_01` restriction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Family {
    All,
    /// Essentially at most unary with the given unary parts.
    Unary(u8),
    Monotone,
    SelfDual,
    SelfDualMonotone,
    /// Every true point has a 1 in a common coordinate.
    UInf,
    UInfMonotone,
    /// Every false point has a 0 in a common coordinate.
    WInf,
    WInfMonotone,
    /// Constants and meets of nonempty sets of variables.
    Meet,
    Join,
    /// `x_{i_1} + ... + x_{i_r} + c`.
    Affine,
    SelfDualAffine,
}

#[derive(Clone, Debug)]
pub struct CloneEntry {
    pub name: &'static str,
    pub display: &'static str,
    pub family: Family,
    pub preserves_zero: bool,
    pub preserves_one: bool,
    /// Generators, unless the entry failed its closure check.
    pub generators: Option<Vec<OpTable>>,
    /// Whether the generators were chosen here rather than printed with the
    /// clone's definition.
    pub chosen_generators: bool,
}

impl CloneEntry {
    pub fn contains(&self, f: &OpTable) -> bool {
        f.base() == 2
            && (!self.preserves_zero || f.at(0) == 0)
            && (!self.preserves_one || f.at(f.values().len() - 1) == 1)
            && family_contains(self.family, f)
    }

    pub fn is_generator_backed(&self) -> bool {
        self.generators.is_some()
    }
}

fn family_contains(family: Family, f: &OpTable) -> bool {
    let v = f.values();
    let n = f.arity();
    let len = v.len();
    let monotone = || (0..len).all(|x| (0..n).all(|i| x >> i & 1 == 1 || v[x] <= v[x | 1 << i]));
    let self_dual = || (0..len).all(|x| v[x] != v[len - 1 - x]);
    // bit `n-1-i` of a tuple index is the value of x_i
    let common = |want: usize| {
        (0..n).any(|k| (0..len).all(|x| v[x] != want || (x >> (n - 1 - k) & 1) == want))
    };
    match family {
        Family::All => true,
        Family::Unary(allowed) => unary_part(f).is_some_and(|u| allowed & u != 0),
        Family::Monotone => monotone(),
        Family::SelfDual => self_dual(),
        Family::SelfDualMonotone => self_dual() && monotone(),
        Family::UInf => n >= 1 && common(1),
        Family::UInfMonotone => n >= 1 && common(1) && monotone(),
        Family::WInf => n >= 1 && common(0),
        Family::WInfMonotone => n >= 1 && common(0) && monotone(),
        Family::Meet => f.is_constant() || meet_of_variables(f, 0),
        Family::Join => f.is_constant() || meet_of_variables(f, 1),
        Family::Affine => affine_support(f).is_some(),
        Family::SelfDualAffine => affine_support(f).is_some_and(|(vars, _)| vars % 2 == 1),
    }
}

/// The unary part of an essentially at most unary function.
fn unary_part(f: &OpTable) -> Option<u8> {
    let profile = f.essential_profile();
    match profile.essential.as_slice() {
        [] => Some(if f.at(0) == 0 { UNARY_ZERO } else { UNARY_ONE }),
        [i] => {
            let one = 1 << (f.arity() - 1 - i);
            Some(if f.at(one) == 1 { UNARY_ID } else { UNARY_NEG })
        }
        _ => None,
    }
}

/// `f` is the meet (`absorbing = 0`) or join (`absorbing = 1`) of its
/// essential variables.
fn meet_of_variables(f: &OpTable, absorbing: usize) -> bool {
    let profile = f.essential_profile();
    if profile.essential.is_empty() {
        return false;
    }
    let n = f.arity();
    (0..f.values().len()).all(|x| {
        let hit = profile
            .essential
            .iter()
            .any(|&i| (x >> (n - 1 - i) & 1) == absorbing);
        f.at(x) == if hit { absorbing } else { 1 - absorbing }
    })
}

/// `(number of variables, constant)` if `f` is a sum of variables plus a
/// constant over GF(2).
fn affine_support(f: &OpTable) -> Option<(usize, usize)> {
    let n = f.arity();
    let c = f.at(0);
    let coeffs: Vec<usize> = (0..n).map(|i| f.at(1 << (n - 1 - i)) ^ c).collect();
    let ok = (0..f.values().len()).all(|x| {
        let sum = (0..n)
            .filter(|&i| x >> (n - 1 - i) & 1 == 1)
            .map(|i| coeffs[i])
            .sum::<usize>();
        f.at(x) == (sum + c) % 2
    });
    ok.then(|| (coeffs.iter().sum(), c))
}

fn op(arity: usize, f: impl Fn(&[usize]) -> usize) -> OpTable {
    OpTable::from_fn(arity, 2, f)
}

fn and() -> OpTable {
    op(2, |t| t[0] & t[1])
}
fn or() -> OpTable {
    op(2, |t| t[0] | t[1])
}
fn neg() -> OpTable {
    op(1, |t| 1 - t[0])
}
fn zero() -> OpTable {
    OpTable::constant(0, 2, 0)
}
fn one() -> OpTable {
    OpTable::constant(0, 2, 1)
}
fn xor() -> OpTable {
    op(2, |t| t[0] ^ t[1])
}
fn xnor() -> OpTable {
    op(2, |t| 1 ^ t[0] ^ t[1])
}
fn xor3() -> OpTable {
    op(3, |t| t[0] ^ t[1] ^ t[2])
}
fn maj() -> OpTable {
    op(3, |t| usize::from(t[0] + t[1] + t[2] >= 2))
}

/// Every named clone, with generators. An entry whose generators fail the
/// closure check at arity 3 keeps only its predicate.
pub fn catalog() -> &'static [CloneEntry] {
    static CATALOG: OnceLock<Vec<CloneEntry>> = OnceLock::new();
    CATALOG.get_or_init(|| {
        raw_catalog()
            .into_iter()
            .map(|mut e| {
                if let Some(gens) = &e.generators {
                    if !closure_matches(&e, gens, 3) {
                        e.generators = None;
                    }
                }
                e
            })
            .collect()
    })
}

/// The catalog before any generator set is checked.
pub fn raw_catalog() -> Vec<CloneEntry> {
    use Family::*;
    let e = |name, display, family, p0, p1, gens: Vec<OpTable>, chosen| CloneEntry {
        name,
        display,
        family,
        preserves_zero: p0,
        preserves_one: p1,
        generators: Some(gens),
        chosen_generators: chosen,
    };
    let u_inf = op(2, |t| t[0] & (1 - t[1]));
    let u_inf_m = op(3, |t| t[0] & (t[1] | t[2]));
    let u_inf_01 = op(3, |t| t[0] & (t[1] | (1 - t[2])));
    let w_inf = op(2, |t| t[0] | (1 - t[1]));
    let w_inf_m = op(3, |t| t[0] | (t[1] & t[2]));
    let w_inf_01 = op(3, |t| t[0] | (t[1] & (1 - t[2])));
    vec![
        e("Omega", "Ω", All, false, false, vec![and(), neg()], true),
        e("Omega_0", "Ω_0", All, true, false, vec![and(), xor()], true),
        e("Omega_1", "Ω_1", All, false, true, vec![or(), xnor()], true),
        e(
            "Omega_01",
            "Ω_01",
            All,
            true,
            true,
            vec![and(), xor3()],
            true,
        ),
        e(
            "Omega^(1)",
            "Ω^(1)",
            Unary(15),
            false,
            false,
            vec![neg(), zero(), one()],
            false,
        ),
        e("[x]", "[x]", Unary(UNARY_ID), false, false, vec![], false),
        e(
            "[0]",
            "[0]",
            Unary(UNARY_ID | UNARY_ZERO),
            false,
            false,
            vec![zero()],
            false,
        ),
        e(
            "[1]",
            "[1]",
            Unary(UNARY_ID | UNARY_ONE),
            false,
            false,
            vec![one()],
            false,
        ),
        e(
            "[0,1]",
            "[0,1]",
            Unary(UNARY_ID | UNARY_ZERO | UNARY_ONE),
            false,
            false,
            vec![zero(), one()],
            false,
        ),
        e(
            "[neg]",
            "[¬]",
            Unary(UNARY_ID | UNARY_NEG),
            false,
            false,
            vec![neg()],
            false,
        ),
        e(
            "M",
            "M",
            Monotone,
            false,
            false,
            vec![and(), or(), zero(), one()],
            true,
        ),
        e(
            "M_0",
            "M_0",
            Monotone,
            true,
            false,
            vec![and(), or(), zero()],
            true,
        ),
        e(
            "M_1",
            "M_1",
            Monotone,
            false,
            true,
            vec![and(), or(), one()],
            true,
        ),
        e(
            "M_01",
            "M_01",
            Monotone,
            true,
            true,
            vec![and(), or()],
            true,
        ),
        e("S", "S", SelfDual, false, false, vec![neg(), maj()], true),
        e(
            "S_01",
            "S_01",
            SelfDual,
            true,
            true,
            vec![maj(), xor3()],
            true,
        ),
        e(
            "SM",
            "SM",
            SelfDualMonotone,
            false,
            false,
            vec![maj()],
            false,
        ),
        e("U^inf", "U^∞", UInf, false, false, vec![u_inf], true),
        e(
            "U^inf M",
            "U^∞M",
            UInfMonotone,
            false,
            false,
            vec![u_inf_m.clone(), zero()],
            true,
        ),
        e("U^inf_01", "U^∞_01", UInf, true, true, vec![u_inf_01], true),
        e(
            "U^inf_01 M",
            "U^∞_01M",
            UInfMonotone,
            true,
            true,
            vec![u_inf_m],
            true,
        ),
        e("W^inf", "W^∞", WInf, false, false, vec![w_inf], true),
        e(
            "W^inf M",
            "W^∞M",
            WInfMonotone,
            false,
            false,
            vec![w_inf_m.clone(), one()],
            true,
        ),
        e("W^inf_01", "W^∞_01", WInf, true, true, vec![w_inf_01], true),
        e(
            "W^inf_01 M",
            "W^∞_01M",
            WInfMonotone,
            true,
            true,
            vec![w_inf_m],
            true,
        ),
        e(
            "Lambda",
            "Λ",
            Meet,
            false,
            false,
            vec![and(), zero(), one()],
            false,
        ),
        e(
            "Lambda_0",
            "Λ_0",
            Meet,
            true,
            false,
            vec![and(), zero()],
            false,
        ),
        e(
            "Lambda_1",
            "Λ_1",
            Meet,
            false,
            true,
            vec![and(), one()],
            false,
        ),
        e("Lambda_01", "Λ_01", Meet, true, true, vec![and()], false),
        e(
            "V",
            "V",
            Join,
            false,
            false,
            vec![or(), zero(), one()],
            false,
        ),
        e("V_0", "V_0", Join, true, false, vec![or(), zero()], false),
        e("V_1", "V_1", Join, false, true, vec![or(), one()], false),
        e("V_01", "V_01", Join, true, true, vec![or()], false),
        e("L", "L", Affine, false, false, vec![xor(), one()], false),
        e("L_0", "L_0", Affine, true, false, vec![xor()], false),
        e(
            "L_1",
            "L_1",
            Affine,
            false,
            true,
            vec![xor3(), one()],
            false,
        ),
        e("L_01", "L_01", Affine, true, true, vec![xor3()], false),
        e(
            "SL",
            "SL",
            SelfDualAffine,
            false,
            false,
            vec![xor3(), neg()],
            false,
        ),
    ]
}

/// Looks a clone up by its ASCII or display name.
pub fn lookup(name: &str) -> Result<&'static CloneEntry> {
    let name = name.trim();
    catalog()
        .iter()
        .find(|e| e.name == name || e.display == name)
        .ok_or_else(|| Error::UnknownClone(name.to_string()))
}

pub fn membership(name: &str, f: &OpTable) -> Result<bool> {
    Ok(lookup(name)?.contains(f))
}

/// All Boolean operations of arity `1..=max_arity`, in closure order.
pub fn all_boolean_ops(max_arity: usize) -> Vec<OpTable> {
    let mut out = Vec::new();
    for n in 1..=max_arity {
        let len = 1usize << n;
        for code in 0u64..1 << len {
            out.push(
                OpTable::new(
                    n,
                    2,
                    (0..len)
                        .map(|i| (code >> (len - 1 - i) & 1) as usize)
                        .collect(),
                )
                .expect("table"),
            );
        }
    }
    out
}

/// Members of `entry` with arity `1..=max_arity`, sorted.
pub fn bounded_members(entry: &CloneEntry, max_arity: usize) -> Vec<OpTable> {
    all_boolean_ops(max_arity)
        .into_iter()
        .filter(|f| entry.contains(f))
        .collect()
}

fn closure_matches(entry: &CloneEntry, gens: &[OpTable], max_arity: usize) -> bool {
    match closure_on_base(2, gens, max_arity, DEFAULT_CLOSURE_CAP) {
        Ok(closed) => closed == bounded_members(entry, max_arity),
        Err(_) => false,
    }
}

/// Result of the generator check for one catalog entry.
#[derive(Clone, Debug, Serialize)]
pub struct ManifestCheck {
    pub name: &'static str,
    pub generators: Vec<Vec<usize>>,
    pub chosen_generators: bool,
    pub closure_size: usize,
    pub predicate_size: usize,
    pub consistent: bool,
}

/// Compares the closure of each entry's generators with its predicate.
pub fn check_manifest(max_arity: usize) -> Result<Vec<ManifestCheck>> {
    raw_catalog()
        .into_iter()
        .map(|e| {
            let gens = e.generators.clone().unwrap_or_default();
            let closed = closure_on_base(2, &gens, max_arity, DEFAULT_CLOSURE_CAP)?;
            let members = bounded_members(&e, max_arity);
            Ok(ManifestCheck {
                name: e.name,
                generators: gens.iter().map(|g| g.values().to_vec()).collect(),
                chosen_generators: e.chosen_generators,
                closure_size: closed.len(),
                predicate_size: members.len(),
                consistent: closed == members,
            })
        })
        .collect()
}

/// A bounded centralizer and whether it may contain too much.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundedCentralizer {
    pub members: Vec<OpTable>,
    /// Computed against the clone's members up to a fixed arity rather than
    /// a generating set, so it can be larger than the true centralizer.
    pub over_approximation: bool,
}

/// Default arity of the members used in place of generators for
/// predicate-only clones.
pub const DEFAULT_GENERATOR_ARITY: usize = 3;

/// All operations of arity `1..=max_arity` commuting with the clone.
pub fn bounded_centralizer(name: &str, max_arity: usize) -> Result<BoundedCentralizer> {
    bounded_centralizer_with(name, max_arity, DEFAULT_GENERATOR_ARITY)
}

pub fn bounded_centralizer_with(
    name: &str,
    max_arity: usize,
    generator_arity: usize,
) -> Result<BoundedCentralizer> {
    let entry = lookup(name)?;
    let (gens, over_approximation) = match &entry.generators {
        Some(g) => (g.clone(), false),
        None => (bounded_members(entry, generator_arity), true),
    };
    Ok(BoundedCentralizer {
        members: centralizer_of(&gens, max_arity)?,
        over_approximation,
    })
}

/// Boolean operations of arity `1..=max_arity` commuting with every generator.
pub fn centralizer_of(gens: &[OpTable], max_arity: usize) -> Result<Vec<OpTable>> {
    let mut out = Vec::new();
    for n in 1..=max_arity {
        let search = CentralizerSearch::new(2, gens, n, 1 << 10)?;
        out.extend(search.collect(DEFAULT_MAX_SOLUTIONS)?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn membership_examples() {
        assert!(membership("M", &and()).unwrap());
        assert!(membership("S", &neg()).unwrap());
        assert!(!membership("S", &OpTable::constant(1, 2, 0)).unwrap());
        assert!(membership("U^inf", &and()).unwrap());
        assert!(!membership("U^∞", &or()).unwrap());
        assert!(membership("L_01", &xor3()).unwrap());
        assert!(!membership("L_01", &xor()).unwrap());
        assert!(membership("Λ_01", &op(3, |t| t[0] & t[2])).unwrap());
        assert!(!membership("Lambda_01", &OpTable::constant(2, 2, 0)).unwrap());
        assert!(membership("SL", &op(3, |t| 1 ^ t[0] ^ t[1] ^ t[2])).unwrap());
        assert!(matches!(
            membership("Q", &and()),
            Err(Error::UnknownClone(_))
        ));
    }

    #[test]
    fn generator_manifest_is_consistent() {
        let checks = check_manifest(3).unwrap();
        let bad: Vec<_> = checks
            .iter()
            .filter(|c| !c.consistent)
            .map(|c| c.name)
            .collect();
        assert!(bad.is_empty(), "inconsistent generators: {bad:?}");
        assert!(catalog().iter().all(|e| e.is_generator_backed()));
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(
            closure_on_base(2, &[xor3()], 3, DEFAULT_CLOSURE_CAP)
                .unwrap()
                .len(),
            1 + 2 + 4
        );
        assert_eq!(bounded_members(lookup("Omega").unwrap(), 2).len(), 4 + 16);
    }

    #[test]
    fn centralizer_examples() {
        let v = bounded_centralizer("V_01", 2).unwrap();
        assert!(!v.over_approximation);
        assert_eq!(v.members, bounded_members(lookup("V").unwrap(), 2));
        let l = bounded_centralizer("Lambda_01", 2).unwrap();
        assert_eq!(l.members, bounded_members(lookup("Λ").unwrap(), 2));
        let lin = bounded_centralizer("L_01", 3).unwrap();
        assert_eq!(lin.members, bounded_members(lookup("L").unwrap(), 3));
    }

    #[test]
    fn predicate_only_is_flagged() {
        let mut e = lookup("SM").unwrap().clone();
        e.generators = None;
        let gens = bounded_members(&e, 3);
        let c = centralizer_of(&gens, 2).unwrap();
        assert_eq!(c, centralizer_of(&[maj()], 2).unwrap());
    }
}
