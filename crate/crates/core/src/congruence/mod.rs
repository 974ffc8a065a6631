//! Lattice congruences, quotients, and the cube predicates: a `2^n`
//! sublattice, a `2^n` quotient, an essentially `n`-ary member of `[∨,∧]*`.

mod constructions;
mod corpus;
mod cube;
mod jonsson;

pub use constructions::*;
pub use corpus::*;
pub use cube::*;
pub use jonsson::*;

use std::collections::{HashSet, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::order::{decode_mixed, encode_mixed, Lattice};

/// Default cap on the lattice size accepted by congruence enumeration.
pub const DEFAULT_CONGRUENCE_BUDGET: usize = 64;
/// Cap on the number of congruences collected.
pub const MAX_CONGRUENCES: usize = 1 << 20;

/// A partition of the universe, blocks numbered by first occurrence.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Congruence {
    pub blocks: Vec<usize>,
    pub count: usize,
}

impl Congruence {
    /// Normalizes an arbitrary labeling.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut renumber = std::collections::HashMap::new();
        let blocks: Vec<usize> = labels
            .iter()
            .map(|l| {
                let next = renumber.len();
                *renumber.entry(*l).or_insert(next)
            })
            .collect();
        Congruence {
            count: renumber.len(),
            blocks,
        }
    }

    pub fn identity(k: usize) -> Self {
        Congruence {
            blocks: (0..k).collect(),
            count: k,
        }
    }

    pub fn total(k: usize) -> Self {
        Congruence {
            blocks: vec![0; k],
            count: 1,
        }
    }

    pub fn size(&self) -> usize {
        self.blocks.len()
    }

    pub fn related(&self, a: usize, b: usize) -> bool {
        self.blocks[a] == self.blocks[b]
    }

    pub fn is_total(&self) -> bool {
        self.count == 1
    }

    /// Smallest element of each block, in block order.
    pub fn representatives(&self) -> Vec<usize> {
        let mut reps = vec![usize::MAX; self.count];
        for (x, &b) in self.blocks.iter().enumerate().rev() {
            reps[b] = x;
        }
        reps
    }

    /// Elements of each block.
    pub fn classes(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.count];
        for (x, &b) in self.blocks.iter().enumerate() {
            out[b].push(x);
        }
        out
    }

    /// Compatibility with join and meet, checked on all pairs of pairs.
    pub fn is_compatible(&self, l: &Lattice) -> bool {
        let k = l.size();
        (0..k).all(|a| {
            (0..k).filter(|&b| self.related(a, b)).all(|b| {
                (0..k).all(|c| {
                    self.related(l.join(a, c), l.join(b, c))
                        && self.related(l.meet(a, c), l.meet(b, c))
                })
            })
        })
    }

    /// Transitive closure of the union; for congruences this is their join.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for x in 0..self.size() {
            uf.union(x, self.representatives()[self.blocks[x]]);
            uf.union(x, other.representatives()[other.blocks[x]]);
        }
        uf.congruence()
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(k: usize) -> Self {
        UnionFind {
            parent: (0..k).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = (ra.min(rb), ra.max(rb));
        self.parent[hi] = lo;
        true
    }

    fn congruence(&mut self) -> Congruence {
        let labels: Vec<usize> = (0..self.parent.len()).map(|x| self.find(x)).collect();
        Congruence::from_labels(&labels)
    }
}

/// The least congruence collapsing `a` and `b`.
///
/// Closes the equivalence under the translations `x ↦ x ∨ z`, `x ↦ x ∧ z`,
/// applied to the pairs `(x, root(x))` which generate it.
pub fn principal_congruence(l: &Lattice, a: usize, b: usize) -> Congruence {
    let k = l.size();
    let mut uf = UnionFind::new(k);
    uf.union(a, b);
    let mut changed = true;
    while changed {
        changed = false;
        for x in 0..k {
            let r = uf.find(x);
            if r == x {
                continue;
            }
            for z in 0..k {
                changed |= uf.union(l.join(x, z), l.join(r, z));
                changed |= uf.union(l.meet(x, z), l.meet(r, z));
            }
        }
    }
    uf.congruence()
}

/// Every congruence of `l`, as joins of principal congruences of covering
/// pairs, sorted by block count and then by labeling.
pub fn enumerate_congruences(l: &Lattice) -> Result<Vec<Congruence>> {
    enumerate_congruences_with_budget(l, DEFAULT_CONGRUENCE_BUDGET)
}

pub fn enumerate_congruences_with_budget(l: &Lattice, budget: usize) -> Result<Vec<Congruence>> {
    if l.size() > budget {
        return Err(Error::BudgetExceeded(format!(
            "congruence enumeration on {} elements exceeds the limit {budget}",
            l.size()
        )));
    }
    let mut principal: Vec<Congruence> = l
        .order()
        .covers()
        .into_iter()
        .map(|(a, b)| principal_congruence(l, a, b))
        .collect();
    principal.sort();
    principal.dedup();
    let identity = Congruence::identity(l.size());
    let mut seen: HashSet<Congruence> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(theta) = queue.pop_front() {
        for p in &principal {
            let joined = theta.join(p);
            if !seen.contains(&joined) {
                if seen.len() >= MAX_CONGRUENCES {
                    return Err(Error::BudgetExceeded(format!(
                        "more than {MAX_CONGRUENCES} congruences"
                    )));
                }
                seen.insert(joined.clone());
                queue.push_back(joined);
            }
        }
    }
    let mut all: Vec<Congruence> = seen.into_iter().collect();
    all.sort_by(|x, y| x.count.cmp(&y.count).then_with(|| x.blocks.cmp(&y.blocks)));
    Ok(all)
}

/// `L/θ`. Block `i` is the block first met at index order, which makes the
/// numbering a linear extension of the quotient order.
pub fn quotient(l: &Lattice, theta: &Congruence) -> Lattice {
    let reps = theta.representatives();
    let m = theta.count;
    let mut join = vec![0; m * m];
    let mut meet = vec![0; m * m];
    for i in 0..m {
        for j in 0..m {
            join[i * m + j] = theta.blocks[l.join(reps[i], reps[j])];
            meet[i * m + j] = theta.blocks[l.meet(reps[i], reps[j])];
        }
    }
    Lattice::from_tables(m, join, meet).expect("quotient by a congruence is a lattice")
}

/// `θ_1 × ... × θ_n` on `L_1 × ... × L_n`, indexed by the mixed-radix codec
/// of [`Lattice::product`] (the tuple codec when all factors agree).
pub fn product_congruence(thetas: &[&Congruence]) -> Congruence {
    let radices: Vec<usize> = thetas.iter().map(|t| t.size()).collect();
    let block_radices: Vec<usize> = thetas.iter().map(|t| t.count).collect();
    let size: usize = radices.iter().product();
    let labels: Vec<usize> = (0..size)
        .map(|x| {
            let digits = decode_mixed(x, &radices);
            let blocks: Vec<usize> = digits
                .iter()
                .zip(thetas)
                .map(|(&d, t)| t.blocks[d])
                .collect();
            encode_mixed(&blocks, &block_radices)
        })
        .collect();
    Congruence::from_labels(&labels)
}

/// The kernel of a map, as a partition.
pub fn kernel(map: &[usize]) -> Congruence {
    Congruence::from_labels(map)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Every partition of `0..k` that is compatible with the lattice.
    fn brute_congruences(l: &Lattice) -> Vec<Congruence> {
        let k = l.size();
        let mut out = Vec::new();
        let mut labels = vec![0usize; k];
        fn rec(
            i: usize,
            max: usize,
            labels: &mut Vec<usize>,
            l: &Lattice,
            out: &mut Vec<Congruence>,
        ) {
            if i == labels.len() {
                let c = Congruence::from_labels(labels);
                if c.is_compatible(l) {
                    out.push(c);
                }
                return;
            }
            for b in 0..=max {
                labels[i] = b;
                rec(i + 1, max.max(b + 1), labels, l, out);
            }
        }
        rec(1, 1, &mut labels, l, &mut out);
        out.sort_by(|x, y| x.count.cmp(&y.count).then_with(|| x.blocks.cmp(&y.blocks)));
        out
    }

    #[test]
    fn small_congruence_lattices() {
        let m3 = Lattice::m3();
        let cons = enumerate_congruences(&m3).unwrap();
        assert_eq!(cons, vec![Congruence::total(5), Congruence::identity(5)]);
        assert_eq!(enumerate_congruences(&Lattice::chain(3)).unwrap().len(), 4);
        assert_eq!(
            enumerate_congruences(&Lattice::boolean(2)).unwrap().len(),
            4
        );
        for l in [
            Lattice::n5(),
            Lattice::chain(4),
            Lattice::boolean(3),
            build_fig2().lattice,
        ] {
            assert_eq!(enumerate_congruences(&l).unwrap(), brute_congruences(&l));
        }
    }

    #[test]
    fn quotients() {
        let fig = build_fig2();
        let theta = kernel(fig.u1.values());
        let q = quotient(&fig.lattice, &theta);
        assert_eq!(q.size(), 4);
        let (sub, _) = fig.lattice.sublattice(&[0, 1, 2, 4]).unwrap();
        assert_eq!(q.join_table(), sub.join_table());
        assert_eq!(q.meet_table(), sub.meet_table());
        let l = Lattice::n5();
        assert_eq!(quotient(&l, &Congruence::identity(5)), l);
    }

    #[test]
    fn product_of_identity_and_total() {
        let delta = Congruence::identity(2);
        let nabla = Congruence::total(2);
        let p = product_congruence(&[&delta, &nabla]);
        assert_eq!(p.blocks, vec![0, 0, 1, 1]);
        assert!(p.is_compatible(&Lattice::boolean(2)));
    }

    #[test]
    fn congruence_budget() {
        assert!(matches!(
            enumerate_congruences_with_budget(&Lattice::chain(5), 4),
            Err(Error::BudgetExceeded(_))
        ));
    }
}
