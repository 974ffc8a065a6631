//! Finite posets, join-semilattices and lattices.
//!
//! Every structure numbers its elements `0..k` along a linear extension of
//! its order: `a <= b` implies `a <= b` as indices. Loaders renumber their
//! input to enforce this, constructions produce it directly. As a consequence
//! the least element of a lattice is always `0` and the greatest is `k - 1`.

use std::fmt;

use crate::error::{Error, Result};
use crate::ops::{decode_tuple, encode_tuple};

/// Default cap on the number of elements of a constructed structure.
pub const DEFAULT_ELEMENT_BUDGET: usize = 1_000_000;

/// Dense tables are quadratic in the element count; this caps their size.
const MAX_TABLE_ENTRIES: u128 = 1 << 28;

/// The element budget, overridable through `CENTRA_BUDGET`.
pub fn element_budget() -> usize {
    std::env::var("CENTRA_BUDGET")
        .ok()
        .and_then(|v| v.trim().parse().ok())
        .unwrap_or(DEFAULT_ELEMENT_BUDGET)
}

fn check_budget(size: u128, budget: usize) -> Result<usize> {
    if size > budget as u128 || size * size > MAX_TABLE_ENTRIES {
        return Err(Error::SizeOverflow { size, budget });
    }
    Ok(size as usize)
}

/// Common view of the ordered structures used by homomorphism search.
pub trait OrderedStructure {
    fn order(&self) -> &Poset;

    fn join_table(&self) -> Option<&[usize]> {
        None
    }

    fn meet_table(&self) -> Option<&[usize]> {
        None
    }

    fn size(&self) -> usize {
        self.order().size()
    }
}

/// A finite partial order on `0..size`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poset {
    size: usize,
    leq: Vec<bool>,
    names: Option<Vec<String>>,
}

impl Poset {
    /// Wraps a `size * size` relation, checking that it is a partial order
    /// numbered along a linear extension.
    pub fn new(size: usize, leq: Vec<bool>) -> Result<Self> {
        if size == 0 {
            return Err(Error::NotPartialOrder("empty universe".into()));
        }
        if leq.len() != size * size {
            return Err(Error::NotPartialOrder(format!(
                "relation has {} entries, expected {}",
                leq.len(),
                size * size
            )));
        }
        let poset = Poset {
            size,
            leq,
            names: None,
        };
        poset.validate()?;
        for a in 0..size {
            for b in 0..a {
                if poset.leq(a, b) {
                    return Err(Error::NotPartialOrder(format!(
                        "{a} <= {b} contradicts the linear-extension numbering"
                    )));
                }
            }
        }
        Ok(poset)
    }

    pub(crate) fn from_fn_unchecked(size: usize, leq: impl Fn(usize, usize) -> bool) -> Self {
        let mut rel = vec![false; size * size];
        for a in 0..size {
            for b in 0..size {
                rel[a * size + b] = leq(a, b);
            }
        }
        Poset {
            size,
            leq: rel,
            names: None,
        }
    }

    fn validate(&self) -> Result<()> {
        let k = self.size;
        for a in 0..k {
            if !self.leq(a, a) {
                return Err(Error::NotPartialOrder(format!("{a} is not reflexive")));
            }
            for b in 0..k {
                if a != b && self.leq(a, b) && self.leq(b, a) {
                    return Err(Error::NotPartialOrder(format!(
                        "{a} and {b} violate antisymmetry"
                    )));
                }
                for c in 0..k {
                    if self.leq(a, b) && self.leq(b, c) && !self.leq(a, c) {
                        return Err(Error::NotPartialOrder(format!(
                            "{a} <= {b} <= {c} violates transitivity"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Reflexive-transitive closure of `covers`, renumbered canonically.
    ///
    /// Returns the poset together with the map from input index to canonical
    /// index.
    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<(Self, Vec<usize>)> {
        if size == 0 {
            return Err(Error::NotPartialOrder("empty universe".into()));
        }
        let mut rel = vec![false; size * size];
        for a in 0..size {
            rel[a * size + a] = true;
        }
        for &(lo, hi) in covers {
            for index in [lo, hi] {
                if index >= size {
                    return Err(Error::IndexOutOfRange { index, size });
                }
            }
            if lo == hi {
                return Err(Error::CycleDetected(lo));
            }
            rel[lo * size + hi] = true;
        }
        for m in 0..size {
            for a in 0..size {
                if rel[a * size + m] {
                    for b in 0..size {
                        if rel[m * size + b] {
                            rel[a * size + b] = true;
                        }
                    }
                }
            }
        }
        for a in 0..size {
            for b in (a + 1)..size {
                if rel[a * size + b] && rel[b * size + a] {
                    return Err(Error::CycleDetected(a));
                }
            }
        }
        let perm = canonical_permutation(size, |a, b| rel[a * size + b]);
        let mut inverse = vec![0; size];
        for (input, &canon) in perm.iter().enumerate() {
            inverse[canon] = input;
        }
        let poset = Poset::from_fn_unchecked(size, |a, b| rel[inverse[a] * size + inverse[b]]);
        Ok((poset, perm))
    }

    pub fn size(&self) -> usize {
        self.size
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.leq[a * self.size + b]
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        a != b && self.leq(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.leq(a, b) || self.leq(b, a)
    }

    pub fn names(&self) -> Option<&[String]> {
        self.names.as_deref()
    }

    /// Label of `a`: its name when names are attached, its index otherwise.
    pub fn label(&self, a: usize) -> String {
        match &self.names {
            Some(names) => names[a].clone(),
            None => a.to_string(),
        }
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.as_ref()?.iter().position(|n| n == name)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        if names.len() != self.size {
            return Err(Error::NotPartialOrder(format!(
                "{} names for {} elements",
                names.len(),
                self.size
            )));
        }
        self.names = Some(names);
        Ok(self)
    }

    /// `{c : c <= a}` in increasing order.
    pub fn principal_ideal(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&c| self.leq(c, a)).collect()
    }

    /// `{c : c >= a}` in increasing order.
    pub fn principal_filter(&self, a: usize) -> Vec<usize> {
        (0..self.size).filter(|&c| self.leq(a, c)).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.size)
            .filter(|&a| (0..self.size).all(|b| !self.lt(b, a)))
            .collect()
    }

    pub fn least(&self) -> Option<usize> {
        (0..self.size).find(|&a| (0..self.size).all(|b| self.leq(a, b)))
    }

    pub fn greatest(&self) -> Option<usize> {
        (0..self.size).find(|&a| (0..self.size).all(|b| self.leq(b, a)))
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|a| (0..self.size).all(|b| self.comparable(a, b)))
    }

    /// Pairs `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for a in 0..self.size {
            for b in 0..self.size {
                if self.lt(a, b) && !(0..self.size).any(|c| self.lt(a, c) && self.lt(c, b)) {
                    out.push((a, b));
                }
            }
        }
        out
    }

    /// The reversed order, renumbered `i -> k - 1 - i`.
    pub fn dual(&self) -> Poset {
        let k = self.size;
        let mut dual = Poset::from_fn_unchecked(k, |a, b| self.leq(k - 1 - b, k - 1 - a));
        dual.names = self
            .names
            .as_ref()
            .map(|names| names.iter().rev().cloned().collect());
        dual
    }

    fn least_upper_bound(&self, a: usize, b: usize) -> Option<usize> {
        let candidate = (0..self.size).find(|&u| self.leq(a, u) && self.leq(b, u))?;
        (0..self.size)
            .filter(|&u| self.leq(a, u) && self.leq(b, u))
            .all(|u| self.leq(candidate, u))
            .then_some(candidate)
    }

    fn greatest_lower_bound(&self, a: usize, b: usize) -> Option<usize> {
        let candidate = (0..self.size)
            .rev()
            .find(|&l| self.leq(l, a) && self.leq(l, b))?;
        (0..self.size)
            .filter(|&l| self.leq(l, a) && self.leq(l, b))
            .all(|l| self.leq(l, candidate))
            .then_some(candidate)
    }
}

/// Canonical renumbering: sort by the number of strictly smaller elements,
/// ties broken by input index. Any such order is a linear extension.
fn canonical_permutation(size: usize, leq: impl Fn(usize, usize) -> bool) -> Vec<usize> {
    let mut keyed: Vec<(usize, usize)> = (0..size)
        .map(|a| ((0..size).filter(|&b| b != a && leq(b, a)).count(), a))
        .collect();
    keyed.sort_unstable();
    let mut perm = vec![0; size];
    for (canon, &(_, input)) in keyed.iter().enumerate() {
        perm[input] = canon;
    }
    perm
}

/// A finite join-semilattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Semilattice {
    order: Poset,
    join: Vec<usize>,
}

impl Semilattice {
    pub fn from_order(order: Poset) -> Result<Self> {
        let k = order.size();
        let mut join = vec![0; k * k];
        for a in 0..k {
            for b in a..k {
                let lub = order
                    .least_upper_bound(a, b)
                    .ok_or(Error::MissingLub(a, b))?;
                join[a * k + b] = lub;
                join[b * k + a] = lub;
            }
        }
        Ok(Semilattice { order, join })
    }

    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<(Self, Vec<usize>)> {
        let (order, perm) = Poset::from_covers(size, covers)?;
        let s = Semilattice::from_order(order).map_err(|e| remap_error(e, &perm))?;
        Ok((s, perm))
    }

    /// The join-semilattice `{a, b, 1}` with `a ∨ b = 1`.
    pub fn v_shape() -> Self {
        let order = Poset::from_fn_unchecked(3, |a, b| a == b || b == 2)
            .with_names(vec!["a".into(), "b".into(), "1".into()])
            .expect("three names");
        Semilattice::from_order(order).expect("V is a join-semilattice")
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn top(&self) -> usize {
        self.size() - 1
    }

    pub fn least(&self) -> Option<usize> {
        self.order.least()
    }

    /// The lattice `S_⊥`: a fresh bottom `0` below every element, old element
    /// `i` becomes `i + 1`. A bottom is added even if one already exists.
    pub fn adjoin_bottom(&self) -> Lattice {
        let k = self.size();
        let mut order =
            Poset::from_fn_unchecked(k + 1, |a, b| a == 0 || (b > 0 && self.leq(a - 1, b - 1)));
        if let Some(names) = self.order.names() {
            let mut labels = vec!["⊥".to_string()];
            labels.extend(names.iter().cloned());
            order.names = Some(labels);
        }
        Lattice::from_order(order).expect("a finite join-semilattice with a bottom is a lattice")
    }

    /// Componentwise `S^n` under the tuple-index codec.
    pub fn power(&self, n: usize, budget: usize) -> Result<Semilattice> {
        let (order, join) = power_tables(&self.order, &[&self.join], n, budget)?;
        Ok(Semilattice {
            order,
            join: join.into_iter().next().expect("one table"),
        })
    }
}

/// A finite lattice with join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Lattice {
    order: Poset,
    join: Vec<usize>,
    meet: Vec<usize>,
    bottom: usize,
    top: usize,
}

impl Lattice {
    pub fn from_order(order: Poset) -> Result<Self> {
        let k = order.size();
        let mut join = vec![0; k * k];
        let mut meet = vec![0; k * k];
        for a in 0..k {
            for b in a..k {
                let lub = order
                    .least_upper_bound(a, b)
                    .ok_or(Error::MissingLub(a, b))?;
                let glb = order
                    .greatest_lower_bound(a, b)
                    .ok_or(Error::MissingGlb(a, b))?;
                join[a * k + b] = lub;
                join[b * k + a] = lub;
                meet[a * k + b] = glb;
                meet[b * k + a] = glb;
            }
        }
        let bottom = order.least().ok_or(Error::NoLeastElement)?;
        let top = order.greatest().ok_or(Error::MissingLub(0, k - 1))?;
        Ok(Lattice {
            order,
            join,
            meet,
            bottom,
            top,
        })
    }

    pub fn from_covers(size: usize, covers: &[(usize, usize)]) -> Result<(Self, Vec<usize>)> {
        let (order, perm) = Poset::from_covers(size, covers)?;
        let l = Lattice::from_order(order).map_err(|e| remap_error(e, &perm))?;
        Ok((l, perm))
    }

    /// The `k`-element chain `0 < 1 < ... < k-1`.
    pub fn chain(k: usize) -> Self {
        assert!(k >= 1, "a chain needs at least one element");
        Lattice::from_order(Poset::from_fn_unchecked(k, |a, b| a <= b))
            .expect("chains are lattices")
    }

    /// The Boolean lattice `2^n`, element `i` being the subset with bitmask `i`.
    pub fn boolean(n: usize) -> Self {
        let k = 1usize << n;
        Lattice::from_order(Poset::from_fn_unchecked(k, |a, b| a & b == a))
            .expect("powersets are lattices")
    }

    /// The diamond `M_3` with atoms `a`, `b`, `c`.
    pub fn m3() -> Self {
        let order = Poset::from_fn_unchecked(5, |x, y| x == y || x == 0 || y == 4)
            .with_names(["0", "a", "b", "c", "1"].map(String::from).to_vec())
            .expect("five names");
        Lattice::from_order(order).expect("M3 is a lattice")
    }

    /// The pentagon `N_5`: `0 < a < b < 1`, `0 < c < 1`.
    pub fn n5() -> Self {
        let (lattice, _) =
            Lattice::from_covers(5, &[(0, 1), (1, 2), (2, 4), (0, 3), (3, 4)]).expect("N5");
        lattice
    }

    pub fn order(&self) -> &Poset {
        &self.order
    }

    pub fn size(&self) -> usize {
        self.order.size()
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size() + b]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size() + b]
    }

    #[inline]
    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.order.leq(a, b)
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn label(&self, a: usize) -> String {
        self.order.label(a)
    }

    pub fn with_names(mut self, names: Vec<String>) -> Result<Self> {
        self.order = self.order.with_names(names)?;
        Ok(self)
    }

    pub fn join_all(&self, elements: impl IntoIterator<Item = usize>) -> usize {
        elements
            .into_iter()
            .fold(self.bottom, |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, elements: impl IntoIterator<Item = usize>) -> usize {
        elements
            .into_iter()
            .fold(self.top, |acc, x| self.meet(acc, x))
    }

    pub fn join_semilattice(&self) -> Semilattice {
        Semilattice {
            order: self.order.clone(),
            join: self.join.clone(),
        }
    }

    pub fn is_chain(&self) -> bool {
        self.order.is_chain()
    }

    /// First triple (in index order) violating `x ∧ (y ∨ z) = (x ∧ y) ∨ (x ∧ z)`.
    pub fn distributivity_failure(&self) -> Option<(usize, usize, usize)> {
        let k = self.size();
        for x in 0..k {
            for y in 0..k {
                for z in 0..k {
                    if self.meet(x, self.join(y, z)) != self.join(self.meet(x, y), self.meet(x, z))
                    {
                        return Some((x, y, z));
                    }
                }
            }
        }
        None
    }

    pub fn is_distributive(&self) -> bool {
        self.distributivity_failure().is_none()
    }

    /// Every element has a complement.
    pub fn is_complemented(&self) -> bool {
        (0..self.size()).all(|a| {
            (0..self.size()).any(|b| self.join(a, b) == self.top && self.meet(a, b) == self.bottom)
        })
    }

    /// Order reversed, join and meet swapped, renumbered `i -> k - 1 - i`.
    pub fn dual(&self) -> Lattice {
        let k = self.size();
        let flip = |x: usize| k - 1 - x;
        let mut join = vec![0; k * k];
        let mut meet = vec![0; k * k];
        for a in 0..k {
            for b in 0..k {
                join[a * k + b] = flip(self.meet(flip(a), flip(b)));
                meet[a * k + b] = flip(self.join(flip(a), flip(b)));
            }
        }
        Lattice {
            order: self.order.dual(),
            join,
            meet,
            bottom: flip(self.top),
            top: flip(self.bottom),
        }
    }

    /// Componentwise `L^n` under the tuple-index codec.
    pub fn power(&self, n: usize, budget: usize) -> Result<Lattice> {
        let (order, mut tables) = power_tables(&self.order, &[&self.join, &self.meet], n, budget)?;
        let meet = tables.pop().expect("meet table");
        let join = tables.pop().expect("join table");
        let size = order.size();
        Ok(Lattice {
            order,
            join,
            meet,
            bottom: 0,
            top: size - 1,
        })
    }

    /// Direct product of lattices of possibly different sizes; element
    /// `(x_1, ..., x_n)` has index `Σ x_i · Π_{j>i} |L_j|`.
    pub fn product(factors: &[&Lattice]) -> Result<Lattice> {
        let radices: Vec<usize> = factors.iter().map(|l| l.size()).collect();
        let size = check_budget(
            radices.iter().map(|&r| r as u128).product(),
            element_budget(),
        )?;
        let digits: Vec<Vec<usize>> = (0..size).map(|i| decode_mixed(i, &radices)).collect();
        let order = Poset::from_fn_unchecked(size, |a, b| {
            factors
                .iter()
                .enumerate()
                .all(|(i, l)| l.leq(digits[a][i], digits[b][i]))
        });
        let mut join = vec![0; size * size];
        let mut meet = vec![0; size * size];
        let mut buf = vec![0; factors.len()];
        for a in 0..size {
            for b in 0..size {
                for (i, l) in factors.iter().enumerate() {
                    buf[i] = l.join(digits[a][i], digits[b][i]);
                }
                join[a * size + b] = encode_mixed(&buf, &radices);
                for (i, l) in factors.iter().enumerate() {
                    buf[i] = l.meet(digits[a][i], digits[b][i]);
                }
                meet[a * size + b] = encode_mixed(&buf, &radices);
            }
        }
        Ok(Lattice {
            order,
            join,
            meet,
            bottom: 0,
            top: size - 1,
        })
    }

    /// The principal filter `↑b` as a lattice, with the map from its
    /// elements back to elements of `self`.
    pub fn filter_sublattice(&self, b: usize) -> (Lattice, Vec<usize>) {
        self.sublattice(&self.order.principal_filter(b))
            .expect("principal filters are sublattices")
    }

    /// Restriction to `elements`, which must be closed under join and meet.
    pub fn sublattice(&self, elements: &[usize]) -> Result<(Lattice, Vec<usize>)> {
        let mut members: Vec<usize> = elements.to_vec();
        members.sort_unstable();
        members.dedup();
        let mut position = vec![usize::MAX; self.size()];
        for (i, &x) in members.iter().enumerate() {
            position[x] = i;
        }
        let m = members.len();
        let mut join = vec![0; m * m];
        let mut meet = vec![0; m * m];
        for (i, &x) in members.iter().enumerate() {
            for (j, &y) in members.iter().enumerate() {
                let (jn, mt) = (position[self.join(x, y)], position[self.meet(x, y)]);
                if jn == usize::MAX {
                    return Err(Error::MissingLub(x, y));
                }
                if mt == usize::MAX {
                    return Err(Error::MissingGlb(x, y));
                }
                join[i * m + j] = jn;
                meet[i * m + j] = mt;
            }
        }
        let mut order = Poset::from_fn_unchecked(m, |i, j| self.leq(members[i], members[j]));
        if let Some(names) = self.order.names() {
            order.names = Some(members.iter().map(|&x| names[x].clone()).collect());
        }
        Ok((
            Lattice {
                order,
                join,
                meet,
                bottom: 0,
                top: m - 1,
            },
            members,
        ))
    }

    /// Builds a lattice from join and meet tables over a linear-extension
    /// numbering, checking that they are the lub and glb of the induced order.
    pub fn from_tables(size: usize, join: Vec<usize>, meet: Vec<usize>) -> Result<Lattice> {
        let order = Poset::new(size, {
            let mut rel = vec![false; size * size];
            for a in 0..size {
                for b in 0..size {
                    rel[a * size + b] = join[a * size + b] == b;
                }
            }
            rel
        })?;
        let lattice = Lattice::from_order(order)?;
        for a in 0..size {
            for b in 0..size {
                if lattice.join(a, b) != join[a * size + b] {
                    return Err(Error::MissingLub(a, b));
                }
                if lattice.meet(a, b) != meet[a * size + b] {
                    return Err(Error::MissingGlb(a, b));
                }
            }
        }
        Ok(lattice)
    }
}

impl OrderedStructure for Poset {
    fn order(&self) -> &Poset {
        self
    }
}

impl OrderedStructure for Semilattice {
    fn order(&self) -> &Poset {
        &self.order
    }

    fn join_table(&self) -> Option<&[usize]> {
        Some(&self.join)
    }
}

impl OrderedStructure for Lattice {
    fn order(&self) -> &Poset {
        &self.order
    }

    fn join_table(&self) -> Option<&[usize]> {
        Some(&self.join)
    }

    fn meet_table(&self) -> Option<&[usize]> {
        Some(&self.meet)
    }
}

pub(crate) fn decode_mixed(mut index: usize, radices: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; radices.len()];
    for i in (0..radices.len()).rev() {
        digits[i] = index % radices[i];
        index /= radices[i];
    }
    digits
}

pub(crate) fn encode_mixed(digits: &[usize], radices: &[usize]) -> usize {
    digits
        .iter()
        .zip(radices)
        .fold(0, |acc, (&d, &r)| acc * r + d)
}

fn power_tables(
    base: &Poset,
    tables: &[&[usize]],
    n: usize,
    budget: usize,
) -> Result<(Poset, Vec<Vec<usize>>)> {
    let k = base.size();
    if n == 0 {
        return Err(Error::ArityMismatch {
            expected: 1,
            found: 0,
        });
    }
    let size = check_budget((k as u128).pow(n as u32), budget)?;
    let digits: Vec<Vec<usize>> = (0..size).map(|i| decode_tuple(i, k, n)).collect();
    let order = Poset::from_fn_unchecked(size, |a, b| {
        digits[a]
            .iter()
            .zip(&digits[b])
            .all(|(&x, &y)| base.leq(x, y))
    });
    let mut out = Vec::with_capacity(tables.len());
    let mut buf = vec![0; n];
    for table in tables {
        let mut result = vec![0; size * size];
        for a in 0..size {
            for b in 0..size {
                for i in 0..n {
                    buf[i] = table[digits[a][i] * k + digits[b][i]];
                }
                result[a * size + b] = encode_tuple(&buf, k);
            }
        }
        out.push(result);
    }
    Ok((order, out))
}

fn remap_error(err: Error, perm: &[usize]) -> Error {
    let input = |canon: usize| perm.iter().position(|&p| p == canon).unwrap_or(canon);
    match err {
        Error::MissingLub(a, b) => {
            let (x, y) = (input(a), input(b));
            Error::MissingLub(x.min(y), x.max(y))
        }
        Error::MissingGlb(a, b) => {
            let (x, y) = (input(a), input(b));
            Error::MissingGlb(x.min(y), x.max(y))
        }
        other => other,
    }
}

/// Which kind of structure a text file declares.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum StructureKind {
    Poset,
    JoinSemilattice,
    Lattice,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Poset(Poset),
    Semilattice(Semilattice),
    Lattice(Lattice),
}

impl Structure {
    pub fn order(&self) -> &Poset {
        match self {
            Structure::Poset(p) => p,
            Structure::Semilattice(s) => s.order(),
            Structure::Lattice(l) => l.order(),
        }
    }

    pub fn kind(&self) -> StructureKind {
        match self {
            Structure::Poset(_) => StructureKind::Poset,
            Structure::Semilattice(_) => StructureKind::JoinSemilattice,
            Structure::Lattice(_) => StructureKind::Lattice,
        }
    }

    /// The join-semilattice reduct, when there is one.
    pub fn as_semilattice(&self) -> Option<Semilattice> {
        match self {
            Structure::Poset(_) => None,
            Structure::Semilattice(s) => Some(s.clone()),
            Structure::Lattice(l) => Some(l.join_semilattice()),
        }
    }

    pub fn as_lattice(&self) -> Option<&Lattice> {
        match self {
            Structure::Lattice(l) => Some(l),
            _ => None,
        }
    }
}

/// Builds a structure of the given kind from a cover list.
pub fn build_from_covers(
    size: usize,
    covers: &[(usize, usize)],
    kind: StructureKind,
) -> Result<(Structure, Vec<usize>)> {
    Ok(match kind {
        StructureKind::Poset => {
            let (p, perm) = Poset::from_covers(size, covers)?;
            (Structure::Poset(p), perm)
        }
        StructureKind::JoinSemilattice => {
            let (s, perm) = Semilattice::from_covers(size, covers)?;
            (Structure::Semilattice(s), perm)
        }
        StructureKind::Lattice => {
            let (l, perm) = Lattice::from_covers(size, covers)?;
            (Structure::Lattice(l), perm)
        }
    })
}

/// A structure read from text, with the input-to-canonical renumbering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoadedStructure {
    pub structure: Structure,
    pub permutation: Vec<usize>,
}

/// Parses the line-oriented structure format:
///
/// ```text
/// lattice 5
/// names 0 a b c 1
/// cover 0 1
/// ...
/// end
/// ```
pub fn parse_structure(text: &str) -> Result<LoadedStructure> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let (line_no, header) = lines.next().ok_or_else(|| Error::parse(1, "empty input"))?;
    let mut words = header.split_whitespace();
    let kind = match words.next() {
        Some("lattice") => StructureKind::Lattice,
        Some("joinsemilattice") => StructureKind::JoinSemilattice,
        Some("poset") => StructureKind::Poset,
        other => {
            return Err(Error::parse(
                line_no,
                format!("unknown structure kind {other:?}"),
            ))
        }
    };
    let size: usize = words
        .next()
        .and_then(|w| w.parse().ok())
        .ok_or_else(|| Error::parse(line_no, "missing element count"))?;
    let mut names: Option<Vec<String>> = None;
    let mut covers = Vec::new();
    let mut ended = false;
    for (line_no, line) in lines {
        if ended {
            return Err(Error::parse(line_no, "content after `end`"));
        }
        let mut words = line.split_whitespace();
        match words.next() {
            Some("names") => {
                if names.is_some() || !covers.is_empty() {
                    return Err(Error::parse(
                        line_no,
                        "`names` must precede covers and appear once",
                    ));
                }
                let list: Vec<String> = words.map(String::from).collect();
                if list.len() != size {
                    return Err(Error::parse(line_no, format!("expected {size} names")));
                }
                names = Some(list);
            }
            Some("cover") => {
                let pair: Vec<usize> = words
                    .map(|w| w.parse())
                    .collect::<std::result::Result<_, _>>()
                    .map_err(|_| Error::parse(line_no, "cover indices must be integers"))?;
                if pair.len() != 2 {
                    return Err(Error::parse(line_no, "`cover` takes two indices"));
                }
                covers.push((pair[0], pair[1]));
            }
            Some("end") => ended = true,
            other => {
                return Err(Error::parse(
                    line_no,
                    format!("unexpected directive {other:?}"),
                ))
            }
        }
    }
    if !ended {
        return Err(Error::parse(text.lines().count(), "missing `end`"));
    }
    let (mut structure, permutation) = build_from_covers(size, &covers, kind)?;
    if let Some(input_names) = names {
        let mut canonical = vec![String::new(); size];
        for (input, name) in input_names.into_iter().enumerate() {
            canonical[permutation[input]] = name;
        }
        structure = match structure {
            Structure::Poset(p) => Structure::Poset(p.with_names(canonical)?),
            Structure::Semilattice(mut s) => {
                s.order = s.order.with_names(canonical)?;
                Structure::Semilattice(s)
            }
            Structure::Lattice(l) => Structure::Lattice(l.with_names(canonical)?),
        };
    }
    Ok(LoadedStructure {
        structure,
        permutation,
    })
}

/// Writes a structure in canonical numbering.
pub fn write_structure(structure: &Structure) -> String {
    let order = structure.order();
    let keyword = match structure.kind() {
        StructureKind::Poset => "poset",
        StructureKind::JoinSemilattice => "joinsemilattice",
        StructureKind::Lattice => "lattice",
    };
    let mut out = format!("{keyword} {}\n", order.size());
    if let Some(names) = order.names() {
        out.push_str("names");
        for n in names {
            out.push(' ');
            out.push_str(n);
        }
        out.push('\n');
    }
    for (a, b) in order.covers() {
        out.push_str(&format!("cover {a} {b}\n"));
    }
    out.push_str("end\n");
    out
}

impl fmt::Display for Lattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&write_structure(&Structure::Lattice(self.clone())))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3_from_covers() -> Lattice {
        let (l, _) =
            Lattice::from_covers(5, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)]).unwrap();
        l
    }

    #[test]
    fn chain_from_covers() {
        let (l, perm) = Lattice::from_covers(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(perm, vec![0, 1, 2]);
        assert_eq!(l, Lattice::chain(3));
    }

    #[test]
    fn m3_tables_are_lubs_and_glbs() {
        let l = m3_from_covers();
        let k = l.size();
        for a in 0..k {
            for b in 0..k {
                let j = l.join(a, b);
                assert!(l.leq(a, j) && l.leq(b, j));
                for u in 0..k {
                    if l.leq(a, u) && l.leq(b, u) {
                        assert!(l.leq(j, u));
                    }
                }
                let m = l.meet(a, b);
                assert!(l.leq(m, a) && l.leq(m, b));
            }
        }
        assert_eq!(l.join(1, 2), 4);
        assert_eq!(l.meet(1, 3), 0);
    }

    #[test]
    fn missing_lub_is_reported_in_input_indices() {
        let err = Semilattice::from_covers(3, &[(0, 1), (0, 2)]).unwrap_err();
        assert_eq!(err, Error::MissingLub(1, 2));
    }

    #[test]
    fn cycles_and_bad_indices() {
        assert!(matches!(
            Poset::from_covers(3, &[(0, 1), (1, 2), (2, 0)]),
            Err(Error::CycleDetected(_))
        ));
        assert!(matches!(
            Poset::from_covers(2, &[(0, 5)]),
            Err(Error::IndexOutOfRange { index: 5, size: 2 })
        ));
    }

    #[test]
    fn loader_renumbers_to_linear_extension() {
        // top listed first
        let (l, perm) = Lattice::from_covers(3, &[(1, 0), (2, 1)]).unwrap();
        assert_eq!(perm, vec![2, 1, 0]);
        assert_eq!(l, Lattice::chain(3));
    }

    #[test]
    fn adjoin_bottom_examples() {
        let two = Lattice::chain(2).join_semilattice();
        assert_eq!(two.adjoin_bottom(), Lattice::chain(3));
        let three = Lattice::chain(3).join_semilattice();
        let four = three.adjoin_bottom();
        assert_eq!(four.size(), 4);
        assert_eq!(four.order().covers()[0], (0, 1));
        let v = Semilattice::v_shape().adjoin_bottom();
        assert_eq!(v.size(), 4);
        assert!(v.order().lt(0, 1) && v.order().lt(0, 2));
        assert_eq!(v.join(1, 2), 3);
        assert_eq!(v.meet(1, 2), 0);
        assert!(v.is_distributive() && v.is_complemented());
    }

    #[test]
    fn adjoin_bottom_restricts_to_original() {
        let s = Lattice::m3().join_semilattice();
        let sb = s.adjoin_bottom();
        for a in 0..s.size() {
            for b in 0..s.size() {
                assert_eq!(s.leq(a, b), sb.leq(a + 1, b + 1));
                assert_eq!(s.join(a, b) + 1, sb.join(a + 1, b + 1));
            }
        }
    }

    #[test]
    fn powers() {
        assert_eq!(
            Lattice::chain(2).power(2, DEFAULT_ELEMENT_BUDGET).unwrap(),
            Lattice::boolean(2)
        );
        let grid = Lattice::chain(3).power(2, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(grid.size(), 9);
        // validate the componentwise tables against the order, all 81 pairs
        let rebuilt = Lattice::from_order(grid.order().clone()).unwrap();
        assert_eq!(rebuilt, grid);
        let m3sq = Lattice::m3().power(2, DEFAULT_ELEMENT_BUDGET).unwrap();
        assert_eq!(m3sq.size(), 25);
        assert_eq!(
            Lattice::from_order(m3sq.order().clone())
                .unwrap()
                .join_table(),
            m3sq.join_table()
        );
        assert!(matches!(
            Lattice::chain(3).power(20, DEFAULT_ELEMENT_BUDGET),
            Err(Error::SizeOverflow { .. })
        ));
    }

    #[test]
    fn ideals_and_filters() {
        let c3 = Lattice::chain(3);
        assert_eq!(c3.order().principal_ideal(1), vec![0, 1]);
        let m3 = Lattice::m3();
        assert_eq!(m3.order().principal_ideal(4), vec![0, 1, 2, 3, 4]);
        let b2 = Lattice::boolean(2);
        assert_eq!(b2.order().principal_filter(1), vec![1, 3]);
    }

    #[test]
    fn distributivity_and_duals() {
        assert!(Lattice::chain(4).is_distributive());
        let (x, y, z) = Lattice::m3().distributivity_failure().unwrap();
        let m3 = Lattice::m3();
        assert_ne!(
            m3.meet(x, m3.join(y, z)),
            m3.join(m3.meet(x, y), m3.meet(x, z))
        );
        assert!(!Lattice::n5().is_distributive());
        for l in [Lattice::m3(), Lattice::n5(), Lattice::boolean(3)] {
            assert_eq!(l.dual().dual(), l);
            assert_eq!(l.is_distributive(), l.dual().is_distributive());
        }
    }

    #[test]
    fn text_format_roundtrip() {
        let text = "lattice 5\nnames 0 a b c 1\ncover 0 1\ncover 0 2\ncover 0 3\ncover 1 4\ncover 2 4\ncover 3 4\nend\n";
        let loaded = parse_structure(text).unwrap();
        assert_eq!(loaded.permutation, vec![0, 1, 2, 3, 4]);
        let l = loaded.structure.as_lattice().unwrap();
        assert_eq!(l.label(2), "b");
        assert_eq!(write_structure(&loaded.structure), text);
        assert!(parse_structure("lattice 2\ncover 0 1\n").is_err());
        assert!(matches!(
            parse_structure("joinsemilattice 3\ncover 0 1\ncover 0 2\nend\n"),
            Err(Error::MissingLub(1, 2))
        ));
    }
}
