use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::ops::{decode_tuple, table_len, OpTable};

/// Largest table (`base^arity` cells) the search accepts by default.
pub const DEFAULT_MAX_CELLS: usize = 1 << 12;
/// Largest number of members the search collects by default.
pub const DEFAULT_MAX_SOLUTIONS: usize = 1 << 22;

/// One instance of `g(t) = h(g(c_1), ..., g(c_r))`.
#[derive(Clone, Debug)]
struct Constraint {
    generator: usize,
    inputs: Vec<usize>,
    target: usize,
}

/// Backtracking search for the `arity`-ary operations commuting with a
/// set of generators.
///
/// `g` commutes with an `r`-ary `h` iff `g` is a homomorphism
/// `(A; h)^arity -> (A; h)`, i.e. for every `r` cells `c_1..c_r` of the
/// table, `g(h(c_1, ..., c_r)) = h(g(c_1), ..., g(c_r))` with `h` applied
/// componentwise on the left. Cells are filled in index order with values
/// ascending; a constraint whose target comes after all its inputs forces
/// the target value, any other one is checked once its last cell is set.
pub struct CentralizerSearch<'a> {
    base: usize,
    arity: usize,
    cells: usize,
    generators: &'a [OpTable],
    forced: Vec<Vec<Constraint>>,
    checks: Vec<Vec<Constraint>>,
}

impl<'a> CentralizerSearch<'a> {
    pub fn new(
        base: usize,
        generators: &'a [OpTable],
        arity: usize,
        max_cells: usize,
    ) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.base() != base) {
            return Err(Error::BaseMismatch(base, g.base()));
        }
        let cells = table_len(base, arity)?;
        if cells > max_cells {
            return Err(Error::BudgetExceeded(format!(
                "{cells} table cells exceed the limit {max_cells}"
            )));
        }
        let digits: Vec<Vec<usize>> = (0..cells).map(|c| decode_tuple(c, base, arity)).collect();
        let mut forced = vec![Vec::new(); cells];
        let mut checks = vec![Vec::new(); cells];
        let mut column = Vec::new();
        for (gi, h) in generators.iter().enumerate() {
            let r = h.arity();
            let combos = table_len(cells, r)?;
            for combo in 0..combos {
                let inputs = decode_tuple(combo, cells, r);
                let target = (0..arity).fold(0, |acc, j| {
                    column.clear();
                    column.extend(inputs.iter().map(|&c| digits[c][j]));
                    acc * base + h.apply(&column)
                });
                let last_input = inputs.iter().copied().max();
                let constraint = Constraint {
                    generator: gi,
                    inputs,
                    target,
                };
                match last_input {
                    Some(m) if m >= target => checks[m].push(constraint),
                    _ => forced[target].push(constraint),
                }
            }
        }
        Ok(CentralizerSearch {
            base,
            arity,
            cells,
            generators,
            forced,
            checks,
        })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Visits every member in lexicographic table order; stops early when
    /// `visit` returns `false`.
    pub fn for_each(&self, mut visit: impl FnMut(&[usize]) -> bool) {
        let mut values = vec![0; self.cells];
        self.dfs(0, &mut values, &mut visit);
    }

    /// All members, sorted. The first cell's branches run in parallel.
    pub fn collect(&self, max_solutions: usize) -> Result<Vec<OpTable>> {
        if self.cells == 0 {
            return Ok(Vec::new());
        }
        let first: Vec<usize> = (0..self.base).collect();
        let branches: Vec<Result<Vec<Vec<usize>>>> = first
            .par_iter()
            .map(|&v| {
                let mut values = vec![0; self.cells];
                let mut found = Vec::new();
                let mut overflow = false;
                if self.admit(0, v, &mut values) {
                    self.dfs(1, &mut values, &mut |t: &[usize]| {
                        found.push(t.to_vec());
                        overflow = found.len() > max_solutions;
                        !overflow
                    });
                }
                if overflow {
                    Err(Error::BudgetExceeded(format!(
                        "more than {max_solutions} centralizer members"
                    )))
                } else {
                    Ok(found)
                }
            })
            .collect();
        let mut out = Vec::new();
        for branch in branches {
            out.extend(branch?.into_iter().map(|t| {
                OpTable::new(self.arity, self.base, t).expect("search produces valid tables")
            }));
            if out.len() > max_solutions {
                return Err(Error::BudgetExceeded(format!(
                    "more than {max_solutions} centralizer members"
                )));
            }
        }
        Ok(out)
    }

    fn forced_value(&self, c: usize, values: &[usize]) -> Option<Option<usize>> {
        let mut forced = None;
        for k in &self.forced[c] {
            let h = &self.generators[k.generator];
            let idx = k
                .inputs
                .iter()
                .fold(0, |acc, &i| acc * self.base + values[i]);
            let v = h.at(idx);
            match forced {
                Some(prev) if prev != v => return None,
                _ => forced = Some(v),
            }
        }
        Some(forced)
    }

    /// Sets cell `c` to `v` if that is consistent with the forced value and
    /// the constraints closing at `c`.
    fn admit(&self, c: usize, v: usize, values: &mut [usize]) -> bool {
        match self.forced_value(c, values) {
            None => return false,
            Some(Some(f)) if f != v => return false,
            _ => {}
        }
        values[c] = v;
        self.checks[c].iter().all(|k| {
            let h = &self.generators[k.generator];
            let idx = k
                .inputs
                .iter()
                .fold(0, |acc, &i| acc * self.base + values[i]);
            values[k.target] == h.at(idx)
        })
    }

    fn dfs(
        &self,
        c: usize,
        values: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        if c == self.cells {
            return visit(values);
        }
        let candidates = match self.forced_value(c, values) {
            None => return true,
            Some(Some(v)) => v..v + 1,
            Some(None) => 0..self.base,
        };
        for v in candidates {
            values[c] = v;
            let ok = self.checks[c].iter().all(|k| {
                let h = &self.generators[k.generator];
                let idx = k
                    .inputs
                    .iter()
                    .fold(0, |acc, &i| acc * self.base + values[i]);
                values[k.target] == h.at(idx)
            });
            if ok && !self.dfs(c + 1, values, visit) {
                return false;
            }
        }
        true
    }
}

/// All `arity`-ary operations on `0..base` commuting with every generator,
/// in sorted order.
pub fn brute_force_centralizer(
    base: usize,
    generators: &[OpTable],
    arity: usize,
) -> Result<Vec<OpTable>> {
    CentralizerSearch::new(base, generators, arity, DEFAULT_MAX_CELLS)?
        .collect(DEFAULT_MAX_SOLUTIONS)
}

/// Number of `arity`-ary members and how many of them are essentially
/// `arity`-ary.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MemberCounts {
    pub total: u64,
    pub essential: u64,
}

pub fn count_centralizer_members(
    base: usize,
    generators: &[OpTable],
    arity: usize,
) -> Result<MemberCounts> {
    let search = CentralizerSearch::new(base, generators, arity, DEFAULT_MAX_CELLS)?;
    let mut counts = MemberCounts::default();
    search.for_each(|t| {
        counts.total += 1;
        let op = OpTable::new(arity, base, t.to_vec()).expect("valid table");
        if op.essential_arity() == arity {
            counts.essential += 1;
        }
        true
    });
    Ok(counts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::{commute, fundamental_ops};
    use crate::order::Lattice;

    #[test]
    fn chain_join_centralizer_has_46_binary_members() {
        let c3 = Lattice::chain(3);
        let ops = brute_force_centralizer(3, &fundamental_ops(&c3.join_semilattice()), 2).unwrap();
        assert_eq!(ops.len(), 46);
        assert!(ops.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn empty_generator_set() {
        assert_eq!(brute_force_centralizer(2, &[], 1).unwrap().len(), 4);
    }

    #[test]
    fn m3_lattice_centralizer_collapses() {
        let m3 = Lattice::m3();
        let ops = brute_force_centralizer(5, &fundamental_ops(&m3), 2).unwrap();
        assert!(!ops.is_empty());
        assert!(ops.iter().all(|f| f.essential_arity() <= 1));
    }

    #[test]
    fn matches_raw_enumeration() {
        // all 3^9 binary tables on the V-shaped semilattice
        let v = crate::order::Semilattice::v_shape();
        let gens = fundamental_ops(&v);
        let mut raw = Vec::new();
        for code in 0..3usize.pow(9) {
            let f = OpTable::new(2, 3, decode_tuple(code, 3, 9)).unwrap();
            if commute(&f, &gens[0]).unwrap() {
                raw.push(f);
            }
        }
        assert_eq!(brute_force_centralizer(3, &gens, 2).unwrap(), raw);
        let counts = count_centralizer_members(3, &gens, 2).unwrap();
        assert_eq!(counts.total, raw.len() as u64);
    }

    #[test]
    fn constants_and_unary_generators() {
        let not = OpTable::from_fn(1, 2, |t| 1 - t[0]);
        let zero = OpTable::constant(0, 2, 0);
        let ops = brute_force_centralizer(2, &[not.clone(), zero.clone()], 2).unwrap();
        for f in &ops {
            assert!(commute(f, &not).unwrap() && commute(f, &zero).unwrap());
        }
        let all = brute_force_centralizer(2, &[], 2).unwrap();
        let filtered: Vec<_> = all
            .into_iter()
            .filter(|f| commute(f, &not).unwrap() && commute(f, &zero).unwrap())
            .collect();
        assert_eq!(ops, filtered);
    }
}
