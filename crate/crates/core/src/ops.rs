//! Finitary operations as value tables, commutation, essential variables and
//! bounded clone closure.
//!
//! Tuples are indexed by `(a_1, ..., a_n) -> Σ a_i · k^(n-i)`, so `a_1` is the
//! most significant digit and table order is lexicographic tuple order.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::order::OrderedStructure;

pub fn encode_tuple(tuple: &[usize], base: usize) -> usize {
    tuple.iter().fold(0, |acc, &a| acc * base + a)
}

pub fn decode_tuple(index: usize, base: usize, arity: usize) -> Vec<usize> {
    let mut out = vec![0; arity];
    decode_into(index, base, &mut out);
    out
}

pub fn decode_into(mut index: usize, base: usize, out: &mut [usize]) {
    for slot in out.iter_mut().rev() {
        *slot = index % base;
        index /= base;
    }
}

/// `base^arity`, or an overflow error.
pub fn table_len(base: usize, arity: usize) -> Result<usize> {
    u32::try_from(arity)
        .ok()
        .and_then(|a| base.checked_pow(a))
        .ok_or(Error::SizeOverflow {
            size: u128::MAX,
            budget: usize::MAX,
        })
}

/// An `arity`-ary operation on `{0, ..., base-1}`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OpTable {
    arity: usize,
    base: usize,
    values: Vec<usize>,
}

impl fmt::Debug for OpTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "op{}/{}{:?}", self.arity, self.base, self.values)
    }
}

impl OpTable {
    pub fn new(arity: usize, base: usize, values: Vec<usize>) -> Result<Self> {
        if base == 0 {
            return Err(Error::ValueOutOfRange { value: 0, base: 0 });
        }
        let len = table_len(base, arity)?;
        if values.len() != len {
            return Err(Error::ArityMismatch {
                expected: len,
                found: values.len(),
            });
        }
        if let Some(&value) = values.iter().find(|&&v| v >= base) {
            return Err(Error::ValueOutOfRange { value, base });
        }
        Ok(OpTable {
            arity,
            base,
            values,
        })
    }

    pub fn from_fn(arity: usize, base: usize, mut f: impl FnMut(&[usize]) -> usize) -> Self {
        let len = table_len(base, arity).expect("table size fits in memory");
        let mut tuple = vec![0; arity];
        let values = (0..len)
            .map(|i| {
                decode_into(i, base, &mut tuple);
                let v = f(&tuple);
                assert!(v < base, "operation value {v} out of range for base {base}");
                v
            })
            .collect();
        OpTable {
            arity,
            base,
            values,
        }
    }

    /// The binary operation given by a `base * base` table, e.g. a join table.
    pub fn binary(base: usize, table: &[usize]) -> Result<Self> {
        OpTable::new(2, base, table.to_vec())
    }

    /// `(x_1, ..., x_arity) -> x_i`, with `i` counted from 0.
    pub fn projection(arity: usize, base: usize, i: usize) -> Self {
        assert!(i < arity, "projection index out of range");
        OpTable::from_fn(arity, base, |t| t[i])
    }

    pub fn constant(arity: usize, base: usize, c: usize) -> Self {
        OpTable::from_fn(arity, base, |_| c)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn eval(&self, tuple: &[usize]) -> Result<usize> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: tuple.len(),
            });
        }
        if let Some(&value) = tuple.iter().find(|&&v| v >= self.base) {
            return Err(Error::ValueOutOfRange {
                value,
                base: self.base,
            });
        }
        Ok(self.apply(tuple))
    }

    /// Unchecked evaluation; panics on malformed input.
    #[inline]
    pub fn apply(&self, tuple: &[usize]) -> usize {
        self.values[encode_tuple(tuple, self.base)]
    }

    #[inline]
    pub fn at(&self, index: usize) -> usize {
        self.values[index]
    }

    /// `self(g_1, ..., g_n)` for operations `g_i` of a common arity.
    pub fn compose(&self, args: &[OpTable]) -> Result<OpTable> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        let Some(first) = args.first() else {
            return Ok(self.clone());
        };
        let arity = first.arity;
        for g in args {
            if g.base != self.base {
                return Err(Error::BaseMismatch(self.base, g.base));
            }
            if g.arity != arity {
                return Err(Error::ArityMismatch {
                    expected: arity,
                    found: g.arity,
                });
            }
        }
        let values = (0..first.values.len())
            .map(|t| self.values[args.iter().fold(0, |acc, g| acc * self.base + g.values[t])])
            .collect();
        Ok(OpTable {
            arity,
            base: self.base,
            values,
        })
    }

    /// The operation `(x_1..x_n) -> self(x_{perm[0]}, ..., x_{perm[n-1]})`.
    pub fn permute_variables(&self, perm: &[usize]) -> OpTable {
        assert_eq!(perm.len(), self.arity);
        let mut args = vec![0; self.arity];
        OpTable::from_fn(self.arity, self.base, |t| {
            for (slot, &p) in args.iter_mut().zip(perm) {
                *slot = t[p];
            }
            self.apply(&args)
        })
    }

    /// Positions (0-based) the operation depends on.
    pub fn essential_profile(&self) -> EssentialProfile {
        let k = self.base;
        let n = self.arity;
        let essential = (0..n)
            .filter(|&i| {
                let stride = k.pow((n - 1 - i) as u32);
                (0..self.values.len())
                    .filter(|idx| (idx / stride).is_multiple_of(k))
                    .any(|idx| (1..k).any(|v| self.values[idx + v * stride] != self.values[idx]))
            })
            .collect();
        EssentialProfile { essential }
    }

    pub fn essential_arity(&self) -> usize {
        self.essential_profile().essential.len()
    }

    pub fn is_constant(&self) -> bool {
        self.values.iter().all(|&v| v == self.values[0])
    }
}

/// The set of essential variable positions of an operation.
impl serde::Serialize for OpTable {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("OpTable", 3)?;
        st.serialize_field("arity", &self.arity())?;
        st.serialize_field("base", &self.base())?;
        st.serialize_field("values", self.values())?;
        st.end()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialProfile {
    pub essential: Vec<usize>,
}

impl EssentialProfile {
    pub fn essential_arity(&self) -> usize {
        self.essential.len()
    }

    pub fn is_essential(&self, i: usize) -> bool {
        self.essential.contains(&i)
    }
}

/// A matrix on which `f` and `g` fail to commute.
///
/// `f` is `n`-ary, `g` is `m`-ary and the matrix has `m` rows of length `n`.
/// `rows_first` is `g(f(row_1), ..., f(row_m))`, `columns_first` is
/// `f(g(col_1), ..., g(col_n))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommutationWitness {
    pub matrix: Vec<Vec<usize>>,
    pub rows_first: usize,
    pub columns_first: usize,
}

/// Decides `f ⊥ g`. Returns `None` when they commute, otherwise the first
/// failing matrix in row-major lexicographic order.
pub fn commutes(f: &OpTable, g: &OpTable) -> Result<Option<CommutationWitness>> {
    if f.base != g.base {
        return Err(Error::BaseMismatch(f.base, g.base));
    }
    let k = f.base;
    let (n, m) = (f.arity, g.arity);
    let row_count = f.values.len();
    let digits: Vec<usize> = (0..row_count).flat_map(|i| decode_tuple(i, k, n)).collect();
    let mut rows = vec![0usize; m];
    let mut g_cols = vec![0usize; n];
    loop {
        let lhs = g.values[rows.iter().fold(0, |acc, &r| acc * k + f.values[r])];
        for (j, slot) in g_cols.iter_mut().enumerate() {
            *slot = g.values[rows.iter().fold(0, |acc, &r| acc * k + digits[r * n + j])];
        }
        let rhs = f.values[encode_tuple(&g_cols, k)];
        if lhs != rhs {
            return Ok(Some(CommutationWitness {
                matrix: rows
                    .iter()
                    .map(|&r| digits[r * n..(r + 1) * n].to_vec())
                    .collect(),
                rows_first: lhs,
                columns_first: rhs,
            }));
        }
        let mut i = m;
        loop {
            if i == 0 {
                return Ok(None);
            }
            i -= 1;
            rows[i] += 1;
            if rows[i] < row_count {
                break;
            }
            rows[i] = 0;
        }
    }
}

/// `true` iff `f` and `g` commute.
pub fn commute(f: &OpTable, g: &OpTable) -> Result<bool> {
    Ok(commutes(f, g)?.is_none())
}

/// Direct check that unary `u` is an endomorphism of `(A; f)`.
pub fn is_endomorphism(u: &OpTable, f: &OpTable) -> bool {
    assert_eq!(u.arity, 1);
    let mut tuple = vec![0; f.arity];
    let mut image = vec![0; f.arity];
    (0..f.values.len()).all(|i| {
        decode_into(i, f.base, &mut tuple);
        for (dst, &src) in image.iter_mut().zip(&tuple) {
            *dst = u.values[src];
        }
        u.values[f.values[i]] == f.apply(&image)
    })
}

/// The fundamental operations of an ordered structure: its join, then its
/// meet, whichever exist.
pub fn fundamental_ops<S: OrderedStructure + ?Sized>(s: &S) -> Vec<OpTable> {
    let k = s.size();
    [s.join_table(), s.meet_table()]
        .into_iter()
        .flatten()
        .map(|t| OpTable::binary(k, t).expect("structure tables are well formed"))
        .collect()
}

/// `f` is a homomorphism `S^n -> S`, i.e. commutes with every fundamental
/// operation of `S`.
pub fn is_hom_power<S: OrderedStructure + ?Sized>(f: &OpTable, s: &S) -> Result<bool> {
    if f.base != s.size() {
        return Err(Error::BaseMismatch(f.base, s.size()));
    }
    for op in fundamental_ops(s) {
        if !commute(f, &op)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Default cap on the number of operations of one arity in a closure.
pub const DEFAULT_CLOSURE_CAP: usize = 1 << 20;

/// All operations of arities `1..=max_arity` in the clone generated by
/// `generators`, sorted by arity and then by table.
///
/// The `p`-ary part of a clone is the closure of the `p`-ary projections
/// under the generators, so each arity is computed independently.
pub fn clone_closure(generators: &[OpTable], max_arity: usize, cap: usize) -> Result<Vec<OpTable>> {
    match generators.first() {
        Some(g) => closure_on_base(g.base, generators, max_arity, cap),
        // no base to put projections on
        None => Ok(Vec::new()),
    }
}

/// Like [`clone_closure`] with an explicit base, so that an empty generator
/// set yields the projections.
pub fn closure_on_base(
    base: usize,
    generators: &[OpTable],
    max_arity: usize,
    cap: usize,
) -> Result<Vec<OpTable>> {
    if base > 256 {
        return Err(Error::BudgetExceeded(format!(
            "closure needs base <= 256, got {base}"
        )));
    }
    if let Some(g) = generators.iter().find(|g| g.base != base) {
        return Err(Error::BaseMismatch(base, g.base));
    }
    let mut out = Vec::new();
    for p in 1..=max_arity {
        let mut part: Vec<OpTable> = closure_at_arity(base, generators, p, cap)?
            .into_iter()
            .map(|v| OpTable {
                arity: p,
                base,
                values: v.iter().map(|&x| x as usize).collect(),
            })
            .collect();
        part.sort();
        out.extend(part);
    }
    Ok(out)
}

fn closure_at_arity(
    base: usize,
    generators: &[OpTable],
    p: usize,
    cap: usize,
) -> Result<Vec<Box<[u8]>>> {
    let len = table_len(base, p)?;
    let mut members: Vec<Box<[u8]>> = Vec::new();
    let mut seen: HashSet<Box<[u8]>> = HashSet::new();
    for i in 0..p {
        let proj: Box<[u8]> = (0..len)
            .map(|t| ((t / base.pow((p - 1 - i) as u32)) % base) as u8)
            .collect();
        if seen.insert(proj.clone()) {
            members.push(proj);
        }
    }
    let mut frontier = 0;
    let mut first_round = true;
    let mut buf = vec![0u8; len];
    loop {
        let end = members.len();
        let mut added = Vec::new();
        for h in generators {
            let r = h.arity;
            if r == 0 {
                if first_round {
                    buf.fill(h.values[0] as u8);
                    if !seen.contains(&buf[..]) {
                        let b: Box<[u8]> = buf.clone().into_boxed_slice();
                        seen.insert(b.clone());
                        added.push(b);
                    }
                }
                continue;
            }
            // every r-tuple over members[..end] using at least one index >= frontier
            let mut idx = vec![0usize; r];
            'tuples: loop {
                if idx.iter().any(|&i| i >= frontier) {
                    for (t, slot) in buf.iter_mut().enumerate() {
                        let arg = idx
                            .iter()
                            .fold(0, |acc, &i| acc * base + members[i][t] as usize);
                        *slot = h.values[arg] as u8;
                    }
                    if !seen.contains(&buf[..]) {
                        let b: Box<[u8]> = buf.clone().into_boxed_slice();
                        seen.insert(b.clone());
                        added.push(b);
                        if seen.len() > cap {
                            return Err(Error::BudgetExceeded(format!(
                                "clone closure exceeds {cap} operations at arity {p}"
                            )));
                        }
                    }
                }
                let mut j = r;
                loop {
                    if j == 0 {
                        break 'tuples;
                    }
                    j -= 1;
                    idx[j] += 1;
                    if idx[j] < end {
                        break;
                    }
                    idx[j] = 0;
                }
            }
        }
        first_round = false;
        if added.is_empty() {
            return Ok(members);
        }
        frontier = end;
        members.extend(added);
    }
}

/// Parses `op <arity> <base>`, the values in tuple order, then `end`.
pub fn parse_op(text: &str) -> Result<OpTable> {
    let mut tokens = text
        .lines()
        .enumerate()
        .flat_map(|(i, l)| l.split_whitespace().map(move |w| (i + 1, w)));
    let (line, head) = tokens
        .next()
        .ok_or_else(|| Error::parse(1, "empty input"))?;
    if head != "op" {
        return Err(Error::parse(line, "expected `op <arity> <base>`"));
    }
    let mut number = |what: &str| -> Result<usize> {
        let (line, w) = tokens
            .next()
            .ok_or_else(|| Error::parse(line, format!("missing {what}")))?;
        w.parse()
            .map_err(|_| Error::parse(line, format!("bad {what} {w:?}")))
    };
    let arity = number("arity")?;
    let base = number("base")?;
    let len = table_len(base, arity)?;
    let mut values = Vec::with_capacity(len);
    for _ in 0..len {
        values.push(number("value")?);
    }
    match tokens.next() {
        Some((_, "end")) => {}
        Some((line, w)) => return Err(Error::parse(line, format!("expected `end`, found {w:?}"))),
        None => return Err(Error::parse(text.lines().count(), "missing `end`")),
    }
    if let Some((line, _)) = tokens.next() {
        return Err(Error::parse(line, "content after `end`"));
    }
    OpTable::new(arity, base, values)
}

pub fn write_op(op: &OpTable) -> String {
    let mut out = format!("op {} {}\n", op.arity, op.base);
    let width = op.base.max(1);
    for chunk in op.values.chunks(width) {
        let line: Vec<String> = chunk.iter().map(|v| v.to_string()).collect();
        out.push_str(&line.join(" "));
        out.push('\n');
    }
    out.push_str("end\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::Lattice;
    use proptest::prelude::*;

    fn join2() -> OpTable {
        OpTable::from_fn(2, 2, |t| t[0] | t[1])
    }

    #[test]
    fn eval_examples() {
        assert_eq!(OpTable::projection(2, 2, 0).eval(&[0, 1]).unwrap(), 0);
        let c3 = Lattice::chain(3);
        let join = OpTable::binary(3, c3.join_table()).unwrap();
        assert_eq!(join.eval(&[1, 2]).unwrap(), 2);
        assert_eq!(OpTable::constant(0, 4, 3).eval(&[]).unwrap(), 3);
        assert!(matches!(join.eval(&[1]), Err(Error::ArityMismatch { .. })));
        assert!(matches!(
            join.eval(&[1, 3]),
            Err(Error::ValueOutOfRange { .. })
        ));
    }

    #[test]
    fn codec_roundtrip() {
        for i in 0..81 {
            assert_eq!(encode_tuple(&decode_tuple(i, 3, 4), 3), i);
        }
        assert_eq!(encode_tuple(&[1, 0, 2], 3), 11);
    }

    #[test]
    fn join_commutes_with_itself() {
        for l in [Lattice::chain(4), Lattice::m3(), Lattice::boolean(2)] {
            let j = OpTable::binary(l.size(), l.join_table()).unwrap();
            assert!(commute(&j, &j).unwrap());
            assert!(is_hom_power(&j, &l.join_semilattice()).unwrap());
        }
    }

    #[test]
    fn negation_is_not_a_join_endomorphism() {
        let neg = OpTable::from_fn(1, 2, |t| 1 - t[0]);
        assert!(!is_hom_power(&neg, &Lattice::chain(2).join_semilattice()).unwrap());
        let w = commutes(&neg, &join2()).unwrap().unwrap();
        assert_eq!(w.matrix.len(), 2);
        assert_eq!(w.matrix, vec![vec![0], vec![1]]);
    }

    #[test]
    fn witness_values_are_recomputed() {
        let and = OpTable::from_fn(2, 2, |t| t[0] & t[1]);
        let w = commutes(&and, &join2()).unwrap().unwrap();
        let m = &w.matrix;
        let rows: Vec<usize> = m.iter().map(|r| and.apply(r)).collect();
        assert_eq!(join2().apply(&rows), w.rows_first);
        let cols: Vec<usize> = (0..2).map(|j| join2().apply(&[m[0][j], m[1][j]])).collect();
        assert_eq!(and.apply(&cols), w.columns_first);
        assert_ne!(w.rows_first, w.columns_first);
    }

    #[test]
    fn base_mismatch() {
        assert_eq!(
            commutes(&join2(), &OpTable::projection(1, 3, 0)),
            Err(Error::BaseMismatch(2, 3))
        );
    }

    #[test]
    fn essential_examples() {
        assert_eq!(
            OpTable::projection(2, 2, 0).essential_profile().essential,
            vec![0]
        );
        assert!(OpTable::constant(3, 3, 1)
            .essential_profile()
            .essential
            .is_empty());
        let u1 = [0, 1, 1, 3, 4];
        let u2 = [0, 1, 2, 4, 4];
        let f = OpTable::from_fn(2, 5, |t| u1[t[0]].max(u2[t[1]]));
        assert_eq!(f.essential_profile().essential, vec![0, 1]);
    }

    #[test]
    fn closure_examples() {
        let c = clone_closure(&[join2()], 2, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(c.len(), 4);
        assert!(c.contains(&join2()));
        let consts = [OpTable::constant(0, 2, 0), OpTable::constant(0, 2, 1)];
        let c = clone_closure(&consts, 1, DEFAULT_CLOSURE_CAP).unwrap();
        assert_eq!(
            c,
            vec![
                OpTable::constant(1, 2, 0),
                OpTable::projection(1, 2, 0),
                OpTable::constant(1, 2, 1)
            ]
        );
        let minority = OpTable::from_fn(3, 2, |t| t[0] ^ t[1] ^ t[2]);
        let c = clone_closure(std::slice::from_ref(&minority), 3, DEFAULT_CLOSURE_CAP).unwrap();
        assert!(c.contains(&minority));
        for i in 0..3 {
            assert!(c.contains(&OpTable::projection(3, 2, i)));
        }
        assert!(!c.contains(&OpTable::from_fn(2, 2, |t| t[0] ^ t[1])));
        assert!(
            closure_on_base(2, &[], 2, DEFAULT_CLOSURE_CAP)
                .unwrap()
                .len()
                == 3
        );
    }

    #[test]
    fn closure_cap() {
        let nand = OpTable::from_fn(2, 2, |t| 1 - (t[0] & t[1]));
        assert!(matches!(
            clone_closure(&[nand], 3, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn op_text_roundtrip() {
        let f = OpTable::from_fn(2, 3, |t| (t[0] + 2 * t[1]) % 3);
        assert_eq!(parse_op(&write_op(&f)).unwrap(), f);
        assert!(parse_op("op 1 2\n0 1\n").is_err());
        assert!(parse_op("op 1 2\n0 2\nend\n").is_err());
    }

    #[test]
    fn commutation_is_symmetric_on_small_boolean_ops() {
        let mut ops = Vec::new();
        for arity in 0..=2 {
            for code in 0..(1usize << (1 << arity)) {
                ops.push(OpTable::from_fn(arity, 2, |t| {
                    (code >> encode_tuple(t, 2)) & 1
                }));
            }
        }
        for f in &ops {
            for g in &ops {
                assert_eq!(commute(f, g).unwrap(), commute(g, f).unwrap());
            }
        }
    }

    fn arb_op(base: usize, arity: usize) -> impl Strategy<Value = OpTable> {
        proptest::collection::vec(0..base, base.pow(arity as u32))
            .prop_map(move |v| OpTable::new(arity, base, v).unwrap())
    }

    proptest! {
        #[test]
        fn commutation_symmetric_random(f in arb_op(3, 2), g in arb_op(3, 1)) {
            prop_assert_eq!(commute(&f, &g).unwrap(), commute(&g, &f).unwrap());
        }

        #[test]
        fn unary_commutation_is_endomorphism(f in arb_op(3, 2), u in arb_op(3, 1)) {
            prop_assert_eq!(commute(&f, &u).unwrap(), is_endomorphism(&u, &f));
        }

        #[test]
        fn essential_set_follows_permutation(f in arb_op(2, 3), rot in 0usize..3) {
            let perm: Vec<usize> = (0..3).map(|i| (i + rot) % 3).collect();
            let g = f.permute_variables(&perm);
            let ef = f.essential_profile().essential;
            let mut expected: Vec<usize> = ef.iter().map(|&j| perm[j]).collect();
            expected.sort();
            prop_assert_eq!(g.essential_profile().essential, expected);
        }

        #[test]
        fn closure_monotone_and_idempotent(a in arb_op(2, 2), b in arb_op(2, 1)) {
            let small = clone_closure(std::slice::from_ref(&a), 2, DEFAULT_CLOSURE_CAP).unwrap();
            let big = clone_closure(&[a, b], 2, DEFAULT_CLOSURE_CAP).unwrap();
            prop_assert!(small.iter().all(|op| big.contains(op)));
            let again = clone_closure(&big, 2, DEFAULT_CLOSURE_CAP).unwrap();
            prop_assert_eq!(again, big);
        }
    }
}
