//! Homomorphisms between finite ordered structures and the Galois
//! correspondence `Hom_∨(A, B) ≅ Hom_∧^{⊥,1}(B_⊥, A_⊥)`.

use num_bigint::BigUint;

use crate::error::{Error, Result};
use crate::order::{OrderedStructure, Semilattice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    Join,
    Meet,
    /// Both join and meet.
    Lattice,
    Monotone,
}

/// Which bounds a map is required to send to the corresponding bound.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Preserves {
    pub bottom: bool,
    pub top: bool,
}

impl Preserves {
    pub const NONE: Preserves = Preserves {
        bottom: false,
        top: false,
    };
    pub const BOTTOM: Preserves = Preserves {
        bottom: true,
        top: false,
    };
    pub const TOP: Preserves = Preserves {
        bottom: false,
        top: true,
    };
    pub const BOTH: Preserves = Preserves {
        bottom: true,
        top: true,
    };
}

/// A map between two ordered structures together with its declared kind.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HomMap {
    pub map: Vec<usize>,
    pub flavor: Flavor,
    pub preserves: Preserves,
    pub target_size: usize,
}

impl HomMap {
    /// Wraps `map` after checking it is a homomorphism of the given kind.
    pub fn new<A, B>(
        map: Vec<usize>,
        a: &A,
        b: &B,
        flavor: Flavor,
        preserves: Preserves,
    ) -> Result<Self>
    where
        A: OrderedStructure + ?Sized,
        B: OrderedStructure + ?Sized,
    {
        if map.len() != a.size() {
            return Err(Error::ArityMismatch {
                expected: a.size(),
                found: map.len(),
            });
        }
        if let Some(&value) = map.iter().find(|&&v| v >= b.size()) {
            return Err(Error::ValueOutOfRange {
                value,
                base: b.size(),
            });
        }
        let t = tables(a, b, flavor)?;
        if !respects(&map, a, b, &t) {
            return Err(Error::FlavorMismatch(format!(
                "map is not a {flavor:?} homomorphism"
            )));
        }
        if !preserves_bounds(&map, a, b, preserves)? {
            return Err(Error::PreservationViolated);
        }
        Ok(HomMap {
            map,
            flavor,
            preserves,
            target_size: b.size(),
        })
    }

    pub fn source_size(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `self ∘ inner`.
    pub fn after(&self, inner: &HomMap) -> HomMap {
        HomMap {
            map: inner.map.iter().map(|&x| self.map[x]).collect(),
            flavor: self.flavor,
            preserves: Preserves {
                bottom: self.preserves.bottom && inner.preserves.bottom,
                top: self.preserves.top && inner.preserves.top,
            },
            target_size: self.target_size,
        }
    }
}

type Table<'a> = Option<&'a [usize]>;

/// Join and meet table pairs `(source, target)` required by a flavor.
struct FlavorTables<'a, 'b> {
    join: Option<(&'a [usize], &'b [usize])>,
    meet: Option<(&'a [usize], &'b [usize])>,
}

fn tables<'a, 'b, A, B>(a: &'a A, b: &'b B, flavor: Flavor) -> Result<FlavorTables<'a, 'b>>
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    let pick = |name: &str, ta: Table<'a>, tb: Table<'b>| match (ta, tb) {
        (Some(x), Some(y)) => Ok(Some((x, y))),
        _ => Err(Error::FlavorMismatch(format!(
            "both structures need a {name} table"
        ))),
    };
    let (join, meet) = match flavor {
        Flavor::Join => (pick("join", a.join_table(), b.join_table())?, None),
        Flavor::Meet => (None, pick("meet", a.meet_table(), b.meet_table())?),
        Flavor::Lattice => (
            pick("join", a.join_table(), b.join_table())?,
            pick("meet", a.meet_table(), b.meet_table())?,
        ),
        Flavor::Monotone => (None, None),
    };
    Ok(FlavorTables { join, meet })
}

fn respects<A, B>(map: &[usize], a: &A, b: &B, t: &FlavorTables) -> bool
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    let (ka, kb) = (a.size(), b.size());
    let preserves = |(ta, tb): (&[usize], &[usize])| {
        (0..ka).all(|x| (0..ka).all(|y| map[ta[x * ka + y]] == tb[map[x] * kb + map[y]]))
    };
    let monotone =
        (0..ka).all(|x| (0..ka).all(|y| !a.order().leq(x, y) || b.order().leq(map[x], map[y])));
    monotone && t.join.is_none_or(preserves) && t.meet.is_none_or(preserves)
}

fn preserves_bounds<A, B>(map: &[usize], a: &A, b: &B, p: Preserves) -> Result<bool>
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    let mut ok = true;
    if p.bottom {
        let (x, y) = bounds(a.order().least(), b.order().least())?;
        ok &= map[x] == y;
    }
    if p.top {
        let (x, y) = bounds(a.order().greatest(), b.order().greatest())?;
        ok &= map[x] == y;
    }
    Ok(ok)
}

fn bounds(x: Option<usize>, y: Option<usize>) -> Result<(usize, usize)> {
    match (x, y) {
        (Some(x), Some(y)) => Ok((x, y)),
        _ => Err(Error::FlavorMismatch(
            "bound preservation requested on a structure without that bound".into(),
        )),
    }
}

/// All homomorphisms `A -> B` of the given kind, in lexicographic order of
/// their value vectors.
///
/// Elements of `A` are assigned in index order, which is a linear extension,
/// so every constraint from smaller elements is known when a value is chosen.
pub fn enumerate_homs<A, B>(
    a: &A,
    b: &B,
    flavor: Flavor,
    preserves: Preserves,
) -> Result<Vec<HomMap>>
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    let mut out = Vec::new();
    for_each_hom(a, b, flavor, preserves, |map| {
        out.push(HomMap {
            map: map.to_vec(),
            flavor,
            preserves,
            target_size: b.size(),
        });
        true
    })?;
    Ok(out)
}

/// Number of homomorphisms, without materializing them.
pub fn count_homs<A, B>(a: &A, b: &B, flavor: Flavor, preserves: Preserves) -> Result<u64>
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    let mut count = 0u64;
    for_each_hom(a, b, flavor, preserves, |_| {
        count += 1;
        true
    })?;
    Ok(count)
}

/// The lexicographically first injective lattice homomorphism `A -> B`.
pub fn find_embedding<A, B>(a: &A, b: &B) -> Result<Option<Vec<usize>>>
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    if a.size() > b.size() {
        return Ok(None);
    }
    let mut found = None;
    search_homs(
        a,
        b,
        Flavor::Lattice,
        Preserves::NONE,
        true,
        &mut |map: &[usize]| {
            found = Some(map.to_vec());
            false
        },
    )?;
    Ok(found)
}

/// Calls `visit` on every homomorphism in lexicographic order until it
/// returns `false`.
pub fn for_each_hom<A, B>(
    a: &A,
    b: &B,
    flavor: Flavor,
    preserves: Preserves,
    mut visit: impl FnMut(&[usize]) -> bool,
) -> Result<()>
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    search_homs(a, b, flavor, preserves, false, &mut visit)
}

fn search_homs<A, B>(
    a: &A,
    b: &B,
    flavor: Flavor,
    preserves: Preserves,
    injective: bool,
    visit: &mut impl FnMut(&[usize]) -> bool,
) -> Result<()>
where
    A: OrderedStructure + ?Sized,
    B: OrderedStructure + ?Sized,
{
    let t = tables(a, b, flavor)?;
    let (ka, kb) = (a.size(), b.size());
    let (pa, pb) = (a.order(), b.order());
    let mut fixed: Vec<Option<usize>> = vec![None; ka];
    if preserves.bottom {
        let (x, y) = bounds(pa.least(), pb.least())?;
        fixed[x] = Some(y);
    }
    if preserves.top {
        let (x, y) = bounds(pa.greatest(), pb.greatest())?;
        match fixed[x] {
            Some(v) if v != y => return Ok(()),
            _ => fixed[x] = Some(y),
        }
    }
    // smaller elements each x must dominate, and join/meet pairs closing at x
    let below: Vec<Vec<usize>> = (0..ka)
        .map(|x| (0..x).filter(|&y| pa.leq(y, x)).collect())
        .collect();
    let join_checks: Vec<Vec<(usize, usize)>> = (0..ka)
        .map(|x| match t.join {
            Some((ta, _)) => (0..x)
                .flat_map(|y| (y + 1..x).map(move |z| (y, z)))
                .filter(|&(y, z)| ta[y * ka + z] == x)
                .collect(),
            None => Vec::new(),
        })
        .collect();
    let meet_checks: Vec<Vec<(usize, usize)>> = (0..ka)
        .map(|x| match t.meet {
            Some((ta, _)) => (0..x).map(|z| (z, ta[x * ka + z])).collect(),
            None => Vec::new(),
        })
        .collect();
    let mut search = Search {
        ka,
        kb,
        join_b: t.join.map(|(_, tb)| tb),
        meet_b: t.meet.map(|(_, tb)| tb),
        order_b: pb,
        below: &below,
        join_checks: &join_checks,
        meet_checks: &meet_checks,
        fixed: &fixed,
        injective,
        used: vec![false; kb],
        map: vec![0; ka],
    };
    search.run(0, visit);
    Ok(())
}

struct Search<'a> {
    ka: usize,
    kb: usize,
    join_b: Table<'a>,
    meet_b: Table<'a>,
    order_b: &'a crate::order::Poset,
    below: &'a [Vec<usize>],
    join_checks: &'a [Vec<(usize, usize)>],
    meet_checks: &'a [Vec<(usize, usize)>],
    fixed: &'a [Option<usize>],
    injective: bool,
    used: Vec<bool>,
    map: Vec<usize>,
}

impl Search<'_> {
    /// Returns `false` once the visitor asks to stop.
    fn run(&mut self, x: usize, visit: &mut impl FnMut(&[usize]) -> bool) -> bool {
        if x == self.ka {
            return visit(&self.map);
        }
        let candidates = match self.fixed[x] {
            Some(v) => v..v + 1,
            None => 0..self.kb,
        };
        for v in candidates {
            if self.admissible(x, v) {
                self.map[x] = v;
                self.used[v] = true;
                let go_on = self.run(x + 1, visit);
                self.used[v] = false;
                if !go_on {
                    return false;
                }
            }
        }
        true
    }

    fn admissible(&self, x: usize, v: usize) -> bool {
        if self.injective && self.used[v] {
            return false;
        }
        if !self.below[x]
            .iter()
            .all(|&y| self.order_b.leq(self.map[y], v))
        {
            return false;
        }
        let kb = self.kb;
        let joins_ok = self.join_b.is_none_or(|tb| {
            self.join_checks[x]
                .iter()
                .all(|&(y, z)| tb[self.map[y] * kb + self.map[z]] == v)
        });
        joins_ok
            && self.meet_b.is_none_or(|tb| {
                self.meet_checks[x]
                    .iter()
                    .all(|&(z, m)| tb[v * kb + self.map[z]] == self.map[m])
            })
    }
}

/// The generator of the principal ideal `f^{-1}(↓b)`, or `None` when the
/// preimage is empty. Panics if the preimage is not principal, which cannot
/// happen for a join-homomorphism.
pub fn inverse_image_ideal(
    f: &HomMap,
    a: &Semilattice,
    b: &Semilattice,
    target: usize,
) -> Option<usize> {
    let pre: Vec<usize> = (0..a.size()).filter(|&x| b.leq(f.map[x], target)).collect();
    let generator = pre.iter().copied().reduce(|x, y| a.join(x, y))?;
    debug_assert_eq!(pre, a.order().principal_ideal(generator));
    Some(generator)
}

/// `f^◁ : B_⊥ -> A_⊥`, `b ↦ ⋁ f^{-1}(↓b)` or `⊥` for an empty preimage.
///
/// Index `0` of each `_⊥` lattice is `⊥`; element `i` of the original
/// structure is `i + 1`.
pub fn galois_left(f: &HomMap, a: &Semilattice, b: &Semilattice) -> Result<HomMap> {
    if f.flavor != Flavor::Join {
        return Err(Error::FlavorMismatch(
            "galois_left expects a join-homomorphism".into(),
        ));
    }
    let mut map = vec![0; b.size() + 1];
    for target in 0..b.size() {
        map[target + 1] = inverse_image_ideal(f, a, b, target).map_or(0, |g| g + 1);
    }
    Ok(HomMap {
        map,
        flavor: Flavor::Meet,
        preserves: Preserves::BOTH,
        target_size: a.size() + 1,
    })
}

/// `g^▷ : A -> B`, `a ↦ ⋀ g^{-1}(↑a)` computed in `B_⊥`.
pub fn galois_right(g: &HomMap, a: &Semilattice, b: &Semilattice) -> Result<HomMap> {
    if g.flavor != Flavor::Meet {
        return Err(Error::FlavorMismatch(
            "galois_right expects a meet-homomorphism".into(),
        ));
    }
    let (a_bot, b_bot) = (a.adjoin_bottom(), b.adjoin_bottom());
    if g.map.len() != b_bot.size() || g.target_size != a_bot.size() {
        return Err(Error::ArityMismatch {
            expected: b_bot.size(),
            found: g.map.len(),
        });
    }
    if g.map[0] != 0 || g.map[b_bot.top()] != a_bot.top() {
        return Err(Error::PreservationViolated);
    }
    let checked = HomMap::new(g.map.clone(), &b_bot, &a_bot, Flavor::Meet, Preserves::BOTH)?;
    let mut map = Vec::with_capacity(a.size());
    for x in 0..a.size() {
        let m = b_bot.meet_all((0..b_bot.size()).filter(|&y| a_bot.leq(x + 1, checked.map[y])));
        if m == 0 {
            return Err(Error::FlavorMismatch("preimage meet fell to ⊥".into()));
        }
        map.push(m - 1);
    }
    Ok(HomMap {
        map,
        flavor: Flavor::Join,
        preserves: Preserves::NONE,
        target_size: b.size(),
    })
}

/// Number of monotone maps from an `r`-chain to an `s`-chain, `C(s+r-1, r)`.
pub fn count_monotone_chain(r: usize, s: usize) -> BigUint {
    num_integer::binomial(BigUint::from(s + r - 1), BigUint::from(r))
}

/// Parses `hom <srcsize> <dstsize>`, the map vector, then `end`.
pub fn parse_hom(text: &str) -> Result<(usize, usize, Vec<usize>)> {
    let mut words = text.split_whitespace();
    if words.next() != Some("hom") {
        return Err(Error::parse(1, "expected `hom <srcsize> <dstsize>`"));
    }
    let parse_num = |w: Option<&str>| -> Result<usize> {
        w.and_then(|w| w.parse().ok())
            .ok_or_else(|| Error::parse(1, "bad size in header"))
    };
    let src = parse_num(words.next())?;
    let dst = parse_num(words.next())?;
    let values: Vec<&str> = words.collect();
    if values.last() != Some(&"end") {
        return Err(Error::parse(text.lines().count(), "missing `end`"));
    }
    let map = values[..values.len() - 1]
        .iter()
        .map(|w| w.parse::<usize>())
        .collect::<std::result::Result<Vec<_>, _>>()
        .map_err(|_| Error::parse(2, "map values must be integers"))?;
    if map.len() != src {
        return Err(Error::parse(
            2,
            format!("expected {src} values, found {}", map.len()),
        ));
    }
    if let Some(&value) = map.iter().find(|&&v| v >= dst) {
        return Err(Error::ValueOutOfRange { value, base: dst });
    }
    Ok((src, dst, map))
}

pub fn write_hom(h: &HomMap) -> String {
    let values: Vec<String> = h.map.iter().map(|v| v.to_string()).collect();
    format!(
        "hom {} {}\n{}\nend\n",
        h.source_size(),
        h.target_size,
        values.join(" ")
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::{Lattice, DEFAULT_ELEMENT_BUDGET};

    fn chain_sl(k: usize) -> Semilattice {
        Lattice::chain(k).join_semilattice()
    }

    #[test]
    fn monotone_chain_counts() {
        let c2 = Lattice::chain(2);
        assert_eq!(
            enumerate_homs(&c2, &c2, Flavor::Monotone, Preserves::NONE)
                .unwrap()
                .len(),
            3
        );
        assert_eq!(count_monotone_chain(2, 3), BigUint::from(6u32));
        assert_eq!(count_monotone_chain(1, 7), BigUint::from(7u32));
        assert_eq!(count_monotone_chain(3, 2), BigUint::from(4u32));
        for r in 1..=6 {
            for s in 1..=6 {
                let n = count_homs(
                    &Lattice::chain(r),
                    &Lattice::chain(s),
                    Flavor::Monotone,
                    Preserves::NONE,
                )
                .unwrap();
                assert_eq!(BigUint::from(n), count_monotone_chain(r, s), "r={r} s={s}");
            }
        }
    }

    #[test]
    fn homs_into_filter() {
        let c3 = Lattice::chain(3);
        let (up, _) = c3.filter_sublattice(1);
        let c2 = Lattice::chain(2);
        let n = count_homs(
            &c3.join_semilattice(),
            &up.join_semilattice(),
            Flavor::Join,
            Preserves::BOTTOM,
        )
        .unwrap();
        assert_eq!(n, 3);
        assert_eq!(
            n,
            count_homs(
                &chain_sl(2),
                &c2.join_semilattice(),
                Flavor::Join,
                Preserves::NONE
            )
            .unwrap()
        );
        let one = chain_sl(1);
        assert_eq!(
            count_homs(&one, &Lattice::m3(), Flavor::Join, Preserves::NONE).unwrap(),
            5
        );
    }

    #[test]
    fn enumeration_matches_raw_tables() {
        // every map m3 -> c3, filtered by the definition
        let (a, b) = (Lattice::m3(), Lattice::chain(3));
        for flavor in [
            Flavor::Join,
            Flavor::Meet,
            Flavor::Lattice,
            Flavor::Monotone,
        ] {
            let mut raw = Vec::new();
            for code in 0..3usize.pow(5) {
                let map = crate::ops::decode_tuple(code, 3, 5);
                if HomMap::new(map.clone(), &a, &b, flavor, Preserves::NONE).is_ok() {
                    raw.push(map);
                }
            }
            let found: Vec<Vec<usize>> = enumerate_homs(&a, &b, flavor, Preserves::NONE)
                .unwrap()
                .into_iter()
                .map(|h| h.map)
                .collect();
            assert_eq!(found, raw, "{flavor:?}");
        }
    }

    #[test]
    fn inverse_image_examples() {
        let c3 = chain_sl(3);
        let id = HomMap::new(vec![0, 1, 2], &c3, &c3, Flavor::Join, Preserves::NONE).unwrap();
        assert_eq!(inverse_image_ideal(&id, &c3, &c3, 1), Some(1));
        let top = HomMap::new(vec![2, 2, 2], &c3, &c3, Flavor::Join, Preserves::NONE).unwrap();
        assert_eq!(inverse_image_ideal(&top, &c3, &c3, 1), None);

        let u1 = [0, 1, 1, 3, 4];
        let u2 = [0, 1, 2, 4, 4];
        let c5 = chain_sl(5);
        let sq = c5.power(2, DEFAULT_ELEMENT_BUDGET).unwrap();
        let map = (0..25).map(|i| u1[i / 5].max(u2[i % 5])).collect();
        let f = HomMap::new(map, &sq, &c5, Flavor::Join, Preserves::NONE).unwrap();
        assert_eq!(inverse_image_ideal(&f, &sq, &c5, 2), Some(2 * 5 + 2));
    }

    #[test]
    fn galois_examples() {
        let c2 = chain_sl(2);
        let id = HomMap::new(vec![0, 1], &c2, &c2, Flavor::Join, Preserves::NONE).unwrap();
        assert_eq!(galois_left(&id, &c2, &c2).unwrap().map, vec![0, 1, 2]);
        let a = Semilattice::v_shape();
        let one = HomMap::new(vec![1, 1, 1], &a, &c2, Flavor::Join, Preserves::NONE).unwrap();
        let g = galois_left(&one, &a, &c2).unwrap();
        assert_eq!(g.map, vec![0, 0, 3]);
        assert_eq!(galois_right(&g, &a, &c2).unwrap(), one);
        let bad = HomMap {
            map: vec![1, 1, 3],
            flavor: Flavor::Meet,
            preserves: Preserves::BOTH,
            target_size: 4,
        };
        assert_eq!(
            galois_right(&bad, &a, &c2),
            Err(Error::PreservationViolated)
        );
        assert!(matches!(
            galois_left(&g, &a, &c2),
            Err(Error::FlavorMismatch(_))
        ));
    }

    #[test]
    fn galois_roundtrip_and_adjunction_on_grid() {
        let c3 = chain_sl(3);
        let sq = c3.power(2, DEFAULT_ELEMENT_BUDGET).unwrap();
        let homs = enumerate_homs(&sq, &c3, Flavor::Join, Preserves::NONE).unwrap();
        assert_eq!(homs.len(), 46);
        let (a_bot, b_bot) = (sq.adjoin_bottom(), c3.adjoin_bottom());
        let lefts: Vec<HomMap> = homs
            .iter()
            .map(|f| galois_left(f, &sq, &c3).unwrap())
            .collect();
        for (f, g) in homs.iter().zip(&lefts) {
            assert_eq!(&galois_right(g, &sq, &c3).unwrap(), f);
            for x in 0..sq.size() {
                for y in 0..b_bot.size() {
                    assert_eq!(b_bot.leq(f.map[x] + 1, y), a_bot.leq(x + 1, g.map[y]));
                }
            }
        }
        let meets = enumerate_homs(&b_bot, &a_bot, Flavor::Meet, Preserves::BOTH).unwrap();
        let mut sorted = lefts.clone();
        sorted.sort_by(|x, y| x.map.cmp(&y.map));
        assert_eq!(sorted, meets);
    }

    #[test]
    fn galois_contravariance_on_chains() {
        for (ka, kb, kc) in [(1, 2, 3), (2, 2, 2), (3, 2, 3), (3, 3, 3), (2, 3, 1)] {
            let (a, b, c) = (chain_sl(ka), chain_sl(kb), chain_sl(kc));
            for f in enumerate_homs(&a, &b, Flavor::Join, Preserves::NONE).unwrap() {
                for h in enumerate_homs(&b, &c, Flavor::Join, Preserves::NONE).unwrap() {
                    let hf = h.after(&f);
                    let lhs = galois_left(&hf, &a, &c).unwrap();
                    let rhs = galois_left(&f, &a, &b)
                        .unwrap()
                        .after(&galois_left(&h, &b, &c).unwrap());
                    assert_eq!(lhs.map, rhs.map);
                }
            }
        }
    }

    #[test]
    fn embeddings() {
        let b2 = Lattice::boolean(2);
        let m3 = Lattice::m3();
        assert_eq!(find_embedding(&b2, &m3).unwrap(), Some(vec![0, 1, 2, 4]));
        assert_eq!(find_embedding(&b2, &Lattice::chain(4)).unwrap(), None);
        assert_eq!(find_embedding(&m3, &b2).unwrap(), None);
    }

    #[test]
    fn hom_text_roundtrip() {
        let c2 = chain_sl(2);
        let h = HomMap::new(vec![0, 1], &c2, &c2, Flavor::Join, Preserves::NONE).unwrap();
        let (s, d, m) = parse_hom(&write_hom(&h)).unwrap();
        assert_eq!((s, d, m), (2, 2, vec![0, 1]));
        assert!(parse_hom("hom 2 2\n0 3\nend\n").is_err());
    }
}
