use crate::ops::{commute, OpTable};

/// `m(x, y, z) = x - y + z` on `Z_k`.
pub fn maltsev_op(k: usize) -> OpTable {
    OpTable::from_fn(3, k, |t| (t[0] + k - t[1] + t[2]) % k)
}

/// Writes `f` over `Z_k` as `u_1(x_1) + ... + u_n(x_n)` when `f` commutes
/// with `x - y + z`.
///
/// `u_i(x) = f(0, .., x, .., 0)`, except that the last part absorbs the
/// correction `-(n-1)·f(0, ..., 0)`. Nullary `f` has no decomposition.
pub fn maltsev_decompose(f: &OpTable) -> Option<Vec<OpTable>> {
    let (k, n) = (f.base(), f.arity());
    if n == 0 || !commute(f, &maltsev_op(k)).expect("same base") {
        return None;
    }
    let f0 = f.at(0);
    let correction = (n - 1) * f0 % k;
    let mut tuple = vec![0; n];
    let parts = (0..n)
        .map(|i| {
            OpTable::from_fn(1, k, |x| {
                tuple.fill(0);
                tuple[i] = x[0];
                let v = f.apply(&tuple);
                if i == n - 1 {
                    (v + k - correction) % k
                } else {
                    v
                }
            })
        })
        .collect();
    Some(parts)
}

/// `u_1(x_1) + ... + u_n(x_n)` over `Z_k`.
pub fn maltsev_recompose(parts: &[OpTable], k: usize) -> OpTable {
    OpTable::from_fn(parts.len(), k, |t| {
        t.iter()
            .zip(parts)
            .map(|(&x, u)| u.apply(&[x]))
            .sum::<usize>()
            % k
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ops::decode_tuple;

    #[test]
    fn examples() {
        let xor = OpTable::from_fn(2, 2, |t| t[0] ^ t[1]);
        let parts = maltsev_decompose(&xor).unwrap();
        assert_eq!(parts[0].values(), &[0, 1]);
        assert_eq!(parts[1].values(), &[0, 1]);
        let and = OpTable::from_fn(2, 2, |t| t[0] & t[1]);
        assert_eq!(maltsev_decompose(&and), None);
        for k in 2..=4 {
            let c = OpTable::constant(3, k, k - 1);
            let parts = maltsev_decompose(&c).unwrap();
            assert!(parts.iter().all(|u| u.is_constant()));
            assert_eq!(maltsev_recompose(&parts, k), c);
        }
    }

    #[test]
    fn exhaustive_binary_z3() {
        let m = maltsev_op(3);
        let mut decomposable = 0;
        for code in 0..3usize.pow(9) {
            let f = OpTable::new(2, 3, decode_tuple(code, 3, 9)).unwrap();
            match maltsev_decompose(&f) {
                Some(parts) => {
                    decomposable += 1;
                    assert_eq!(maltsev_recompose(&parts, 3), f);
                }
                None => assert!(!commute(&f, &m).unwrap()),
            }
        }
        // affine maps a x + b y + c with a, b, c in Z_3
        assert_eq!(decomposable, 27);
    }
}
