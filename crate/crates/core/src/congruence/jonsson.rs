use serde::Serialize;

use crate::ops::OpTable;

/// The first identity that a candidate sequence of Jónsson terms breaks.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JonssonFailure {
    pub identity: String,
    /// Index of the (first) term involved.
    pub term: usize,
    pub x: usize,
    pub y: usize,
}

/// Checks `J_0 = x`, `J_n = z`, `J_i(x,y,x) = x`, and
/// `J_i(x,x,y) = J_{i+1}(x,x,y)` for even `i`, `J_i(x,y,y) = J_{i+1}(x,y,y)`
/// for odd `i`, over every pair of elements.
pub fn verify_jonsson(terms: &[OpTable]) -> Result<(), JonssonFailure> {
    let fail = |identity: &str, term: usize, x: usize, y: usize| JonssonFailure {
        identity: identity.to_string(),
        term,
        x,
        y,
    };
    let Some(first) = terms.first() else {
        return Err(fail("at least one term", 0, 0, 0));
    };
    let base = first.base();
    if let Some(i) = terms
        .iter()
        .position(|t| t.arity() != 3 || t.base() != base)
    {
        return Err(fail("ternary terms on a common base", i, 0, 0));
    }
    let n = terms.len() - 1;
    for x in 0..base {
        for y in 0..base {
            for z in 0..base {
                if terms[0].apply(&[x, y, z]) != x {
                    return Err(fail("J_0(x,y,z) = x", 0, x, y));
                }
                if terms[n].apply(&[x, y, z]) != z {
                    return Err(fail("J_n(x,y,z) = z", n, x, y));
                }
            }
        }
    }
    for (i, t) in terms.iter().enumerate() {
        for x in 0..base {
            for y in 0..base {
                if t.apply(&[x, y, x]) != x {
                    return Err(fail("J_i(x,y,x) = x", i, x, y));
                }
            }
        }
    }
    for (i, pair) in terms.windows(2).enumerate() {
        for x in 0..base {
            for y in 0..base {
                if i % 2 == 0 && pair[0].apply(&[x, x, y]) != pair[1].apply(&[x, x, y]) {
                    return Err(fail("J_i(x,x,y) = J_i+1(x,x,y), i even", i, x, y));
                }
                if i % 2 == 1 && pair[0].apply(&[x, y, y]) != pair[1].apply(&[x, y, y]) {
                    return Err(fail("J_i(x,y,y) = J_i+1(x,y,y), i odd", i, x, y));
                }
            }
        }
    }
    Ok(())
}

/// Five Boolean Jónsson terms, as truth tables over `000, 001, ..., 111`.
pub const BOOLEAN_JONSSON_TABLES: [[usize; 8]; 5] = [
    [0, 0, 0, 0, 1, 1, 1, 1],
    [0, 0, 0, 0, 0, 1, 1, 1],
    [0, 0, 0, 0, 0, 1, 0, 1],
    [0, 0, 0, 1, 0, 1, 0, 1],
    [0, 1, 0, 1, 0, 1, 0, 1],
];

pub fn boolean_jonsson_terms() -> Vec<OpTable> {
    BOOLEAN_JONSSON_TABLES
        .iter()
        .map(|t| OpTable::new(3, 2, t.to_vec()).expect("truth table"))
        .collect()
}

/// Boolean majority.
pub fn majority() -> OpTable {
    OpTable::from_fn(3, 2, |t| usize::from(t.iter().sum::<usize>() >= 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn boolean_terms() {
        let terms = boolean_jonsson_terms();
        assert_eq!(verify_jonsson(&terms), Ok(()));
        // row (1,1,0)
        let row: Vec<usize> = terms.iter().map(|t| t.apply(&[1, 1, 0])).collect();
        assert_eq!(row, vec![1, 1, 0, 0, 0]);
        // each term is 1 only where one fixed variable is 1
        for t in &terms {
            assert!((0..3).any(|k| (0..8).all(|i| t.at(i) <= i >> (2 - k) & 1)));
        }
    }

    #[test]
    fn majority_sequence() {
        let x = OpTable::projection(3, 2, 0);
        let z = OpTable::projection(3, 2, 2);
        assert_eq!(verify_jonsson(&[x.clone(), majority(), z.clone()]), Ok(()));
        let err = verify_jonsson(&[x, z]).unwrap_err();
        assert_eq!(err.identity, "J_i(x,x,y) = J_i+1(x,x,y), i even");
        assert_eq!((err.x, err.y), (0, 1));
    }

    #[test]
    fn three_element_majority() {
        let k = 3;
        let x = OpTable::projection(3, k, 0);
        let z = OpTable::projection(3, k, 2);
        let med = OpTable::from_fn(3, k, |t| {
            let mut s = t.to_vec();
            s.sort_unstable();
            s[1]
        });
        assert!(verify_jonsson(&[x, med, z]).is_ok());
    }
}
