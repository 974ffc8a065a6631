//! Operations over Z_k commuting with x - y + z are sums of unary maps.
use centra::boolean::{maltsev_decompose, maltsev_recompose};
use centra::OpTable;

fn main() {
    let f = OpTable::from_fn(3, 5, |t| (2 * t[0] + 4 * t[2] + 1) % 5);
    let parts = maltsev_decompose(&f).expect("affine maps decompose");
    for (i, u) in parts.iter().enumerate() {
        println!("u{} = {:?}", i + 1, u.values());
    }
    println!("sums back: {}", maltsev_recompose(&parts, 5) == f);
    let g = OpTable::from_fn(2, 5, |t| t[0] * t[1] % 5);
    println!("x*y decomposes: {}", maltsev_decompose(&g).is_some());
}
