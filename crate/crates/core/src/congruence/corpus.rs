//! Exhaustive small corpora: all lattices up to a size, distributive
//! lattices as down-set lattices of small posets, and join-semilattices.

use std::collections::HashSet;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::Result;
use crate::order::{Lattice, Semilattice};

use super::{classify, Classification, Verdict};

/// Relations on `0..m` that are transitive and only relate `i < j`, i.e.
/// naturally labeled strict orders, as `m * m` bit vectors.
fn natural_strict_orders(m: usize) -> Vec<Vec<bool>> {
    let pairs: Vec<(usize, usize)> = (0..m)
        .flat_map(|i| (i + 1..m).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let mut rel = vec![false; m * m];
        for (bit, &(i, j)) in pairs.iter().enumerate() {
            rel[i * m + j] = mask >> bit & 1 == 1;
        }
        let transitive = (0..m).all(|i| {
            (0..m).all(|j| !rel[i * m + j] || (0..m).all(|k| !rel[j * m + k] || rel[i * m + k]))
        });
        if transitive {
            out.push(rel);
        }
    }
    out
}

/// Lexicographically least relabeling of a strict order.
fn canonical_form(rel: &[bool], m: usize) -> Vec<bool> {
    let mut perm: Vec<usize> = (0..m).collect();
    let mut best: Option<Vec<bool>> = None;
    permutations(&mut perm, 0, &mut |p| {
        let image: Vec<bool> = (0..m * m).map(|x| rel[p[x / m] * m + p[x % m]]).collect();
        if best.as_ref().is_none_or(|b| image < *b) {
            best = Some(image);
        }
    });
    best.unwrap_or_default()
}

fn permutations(p: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
    if k == p.len() {
        visit(p);
        return;
    }
    for i in k..p.len() {
        p.swap(k, i);
        permutations(p, k + 1, visit);
        p.swap(k, i);
    }
}

/// One strict order per isomorphism class on `m` points.
pub fn posets_up_to_iso(m: usize) -> Vec<Vec<bool>> {
    let mut seen = HashSet::new();
    natural_strict_orders(m)
        .into_iter()
        .filter(|rel| seen.insert(canonical_form(rel, m)))
        .collect()
}

fn covers_of(rel: &[bool], m: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 0..m {
        for j in 0..m {
            if rel[i * m + j] && !(0..m).any(|k| rel[i * m + k] && rel[k * m + j]) {
                out.push((i, j));
            }
        }
    }
    out
}

/// Every lattice with at most `max_size` elements, one per isomorphism
/// class, ordered by size and then by generation order.
pub fn all_lattices(max_size: usize) -> Vec<Lattice> {
    let mut out = Vec::new();
    for size in 1..=max_size {
        if size <= 2 {
            out.push(Lattice::chain(size));
            continue;
        }
        let m = size - 2;
        for rel in posets_up_to_iso(m) {
            // bottom 0, middle 1..=m, top m+1
            let mut covers: Vec<(usize, usize)> = covers_of(&rel, m)
                .into_iter()
                .map(|(i, j)| (i + 1, j + 1))
                .collect();
            for i in 0..m {
                if !(0..m).any(|k| rel[k * m + i]) {
                    covers.push((0, i + 1));
                }
                if !(0..m).any(|k| rel[i * m + k]) {
                    covers.push((i + 1, m + 1));
                }
            }
            if let Ok((l, _)) = Lattice::from_covers(size, &covers) {
                out.push(l);
            }
        }
    }
    out
}

/// Down-set lattices of every poset on at most `max_points` points.
pub fn distributive_lattices(max_points: usize) -> Vec<Lattice> {
    let mut out = Vec::new();
    for m in 0..=max_points {
        for rel in posets_up_to_iso(m) {
            out.push(down_set_lattice(&rel, m));
        }
    }
    out
}

/// The lattice of down-sets of a strict order on `m` points, down-sets
/// being bitmasks ordered by inclusion.
pub fn down_set_lattice(rel: &[bool], m: usize) -> Lattice {
    let down_sets: Vec<usize> = (0..1usize << m)
        .filter(|&s| {
            (0..m).all(|j| s >> j & 1 == 0 || (0..m).all(|i| !rel[i * m + j] || s >> i & 1 == 1))
        })
        .collect();
    let mut covers = Vec::new();
    for (x, &s) in down_sets.iter().enumerate() {
        for (y, &t) in down_sets.iter().enumerate() {
            if s & t == s && (t & !s).count_ones() == 1 {
                covers.push((x, y));
            }
        }
    }
    let (l, _) = Lattice::from_covers(down_sets.len(), &covers).expect("down-sets form a lattice");
    l
}

/// Finite join-semilattices with at most `max_size` elements: each lattice
/// of size at most `max_size + 1` with its bottom removed.
pub fn join_semilattices(max_size: usize) -> Vec<Semilattice> {
    all_lattices(max_size + 1)
        .into_iter()
        .filter(|l| l.size() >= 2)
        .map(|l| {
            let k = l.size();
            let covers: Vec<(usize, usize)> = l
                .order()
                .covers()
                .into_iter()
                .filter(|&(lo, _)| lo != l.bottom())
                .map(|(lo, hi)| (lo - 1, hi - 1))
                .collect();
            let (s, _) = Semilattice::from_covers(k - 1, &covers).expect("lattice minus bottom");
            s
        })
        .collect()
}

/// Which implications between (Ess), (Sub), (Quo) to check.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CorpusCheck {
    /// All three agree.
    Equivalence,
    /// (Ess) ⇒ (Sub), (Sub) ∧ (Quo) ⇒ (Ess), and (Quo) ⇒ (Sub) for `n ≤ 3`.
    Implications,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusEntry {
    pub index: usize,
    pub size: usize,
    pub covers: Vec<(usize, usize)>,
    pub classifications: Vec<Classification>,
    pub failures: Vec<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CorpusReport {
    pub check: CorpusCheck,
    pub lattices: usize,
    pub max_arity: usize,
    pub entries: Vec<CorpusEntry>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.failures.is_empty())
    }

    pub fn failures(&self) -> impl Iterator<Item = &String> {
        self.entries.iter().flat_map(|e| &e.failures)
    }
}

fn failures_for(c: &Classification, check: CorpusCheck) -> Vec<String> {
    let (ess, sub, quo) = (c.ess.holds(), c.sub.holds(), c.quo.holds());
    let mut out = Vec::new();
    if c.ess == Verdict::Undecided {
        out.push(format!("n={}: (Ess) undecided", c.n));
        return out;
    }
    let (ess, sub, quo) = (ess.unwrap(), sub.unwrap(), quo.unwrap());
    match check {
        CorpusCheck::Equivalence => {
            if !(ess == sub && sub == quo) {
                out.push(format!("n={}: ess={ess} sub={sub} quo={quo}", c.n));
            }
        }
        CorpusCheck::Implications => {
            if ess && !sub {
                out.push(format!("n={}: (Ess) without (Sub)", c.n));
            }
            if sub && quo && !ess {
                out.push(format!("n={}: (Sub) and (Quo) without (Ess)", c.n));
            }
            if c.n <= 3 && quo && !sub {
                out.push(format!("n={}: (Quo) without (Sub)", c.n));
            }
        }
    }
    out
}

/// Classifies every lattice for `n = 1..=max_arity` in parallel and checks
/// the chosen implications.
pub fn corpus_check(
    lattices: &[Lattice],
    max_arity: usize,
    check: CorpusCheck,
) -> Result<CorpusReport> {
    let entries: Vec<Result<CorpusEntry>> = lattices
        .par_iter()
        .enumerate()
        .map(|(index, l)| {
            let classifications = (1..=max_arity)
                .map(|n| classify(l, n))
                .collect::<Result<Vec<_>>>()?;
            let failures = classifications
                .iter()
                .flat_map(|c| failures_for(c, check))
                .collect();
            Ok(CorpusEntry {
                index,
                size: l.size(),
                covers: l.order().covers(),
                classifications,
                failures,
            })
        })
        .collect();
    Ok(CorpusReport {
        check,
        lattices: lattices.len(),
        max_arity,
        entries: entries.into_iter().collect::<Result<_>>()?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lattice_counts() {
        let all = all_lattices(6);
        let counts: Vec<usize> = (1..=6)
            .map(|k| all.iter().filter(|l| l.size() == k).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 1, 2, 5, 15]);
        assert_eq!(
            all.iter().filter(|l| l.is_distributive()).count(),
            1 + 1 + 1 + 2 + 3 + 5
        );
    }

    #[test]
    fn poset_counts() {
        let counts: Vec<usize> = (0..=4).map(|m| posets_up_to_iso(m).len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 5, 16]);
    }

    #[test]
    fn distributive_corpus() {
        let d = distributive_lattices(4);
        assert_eq!(d.len(), 25);
        assert!(d.iter().all(|l| l.is_distributive()));
        // the antichain on three points gives 2^3
        assert!(d.iter().any(|l| l.size() == 8 && l.is_complemented()));
    }

    #[test]
    fn semilattice_corpus() {
        let s = join_semilattices(4);
        let counts: Vec<usize> = (1..=4)
            .map(|k| s.iter().filter(|x| x.size() == k).count())
            .collect();
        assert_eq!(counts, vec![1, 1, 2, 5]);
        assert!(s.iter().any(|x| x.least().is_none()));
    }
}
