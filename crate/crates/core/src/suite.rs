//! The reproduction suite: fourteen numbered criteria, each a list of exact
//! checks with a wall-time limit.

use std::time::{Duration, Instant};

use num_bigint::{BigInt, BigUint};
use serde::Serialize;

use crate::boolean::{maltsev_decompose, maltsev_op, maltsev_recompose};
use crate::boolean::{verify_table4, RowStatus};
use crate::centralizer::{
    chain_terms, count_centralizer_members, count_essential_chain, count_essential_thm,
    count_essential_v, count_total_chain, count_total_v, distributive_recompose,
    enumerate_join_decompositions, essential_to_total, machida_rosenberg, pow, power_sum,
    recompose, semilattice_decompose, witness_nonlattice,
};
use crate::congruence::{
    all_lattices, boolean_jonsson_terms, build_fig2, build_lex_doubling, build_m3_power,
    cd_arity_bound_check, corpus_check, distributive_lattices, exists_cube_quotient,
    exists_essential_nary, fig2, find_cube_sublattice, is_essential_member, join_semilattices,
    majority, verify_jonsson, CorpusCheck, DEFAULT_TUPLE_BUDGET,
};
use crate::error::Result;
use crate::homs::{enumerate_homs, galois_left, galois_right, Flavor, Preserves};
use crate::ops::{commute, commutes, decode_tuple, fundamental_ops, OpTable};
use crate::order::{Lattice, Semilattice, DEFAULT_ELEMENT_BUDGET};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    Fail,
}

/// One exact comparison.
#[derive(Clone, Debug, Serialize)]
pub struct CheckRecord {
    pub id: String,
    pub claim: String,
    pub computed: String,
    pub expected: String,
    pub status: Status,
}

impl CheckRecord {
    pub fn new(
        id: impl Into<String>,
        claim: impl Into<String>,
        computed: impl ToString,
        expected: impl ToString,
    ) -> Self {
        let (computed, expected) = (computed.to_string(), expected.to_string());
        let status = if computed == expected {
            Status::Pass
        } else {
            Status::Fail
        };
        CheckRecord {
            id: id.into(),
            claim: claim.into(),
            computed,
            expected,
            status,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionReport {
    pub number: usize,
    pub title: &'static str,
    pub limit_ms: u128,
    pub elapsed_ms: u128,
    pub records: Vec<CheckRecord>,
}

impl CriterionReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(|r| r.status == Status::Pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckRecord> {
        self.records.iter().filter(|r| r.status == Status::Fail)
    }

    /// `criterion N: PASS|FAIL title (elapsed)`.
    pub fn summary_line(&self) -> String {
        format!(
            "criterion {:>2}: {} {} ({} ms, {} checks)",
            self.number,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.elapsed_ms,
            self.records.len()
        )
    }
}

pub struct Criterion {
    pub number: usize,
    pub title: &'static str,
    pub limit: Duration,
    run: fn() -> Result<Vec<CheckRecord>>,
}

impl Criterion {
    /// Runs the checks and appends the wall-time check.
    pub fn run(&self) -> CriterionReport {
        let start = Instant::now();
        let mut records = (self.run)().unwrap_or_else(|e| {
            vec![CheckRecord::new(
                format!("c{}.error", self.number),
                "runs without error",
                e,
                "ok",
            )]
        });
        let elapsed = start.elapsed();
        records.push(CheckRecord {
            id: format!("c{}.time", self.number),
            claim: format!("finishes within {} s", self.limit.as_secs()),
            computed: format!("{} ms", elapsed.as_millis()),
            expected: format!("< {} ms", self.limit.as_millis()),
            status: if elapsed < self.limit {
                Status::Pass
            } else {
                Status::Fail
            },
        });
        CriterionReport {
            number: self.number,
            title: self.title,
            limit_ms: self.limit.as_millis(),
            elapsed_ms: elapsed.as_millis(),
            records,
        }
    }
}

const fn secs(s: u64) -> Duration {
    Duration::from_secs(s)
}

pub const CRITERIA: [Criterion; 14] = [
    Criterion {
        number: 1,
        title: "chain counts",
        limit: secs(1),
        run: chain_counts,
    },
    Criterion {
        number: 2,
        title: "V-semilattice counts",
        limit: secs(5),
        run: v_counts,
    },
    Criterion {
        number: 3,
        title: "Machida-Rosenberg closed form",
        limit: secs(1),
        run: mr_closed_form,
    },
    Criterion {
        number: 4,
        title: "filter sums agree with each other and brute force",
        limit: secs(60),
        run: filter_sums,
    },
    Criterion {
        number: 5,
        title: "Galois roundtrips",
        limit: secs(30),
        run: galois_roundtrips,
    },
    Criterion {
        number: 6,
        title: "join decompositions on small lattices",
        limit: secs(30),
        run: join_decompositions,
    },
    Criterion {
        number: 7,
        title: "V-semilattice non-decomposable member",
        limit: secs(1),
        run: v_nondecomposable,
    },
    Criterion {
        number: 8,
        title: "seven-element meet-commutation failure",
        limit: secs(1),
        run: fig2_failure,
    },
    Criterion {
        number: 9,
        title: "Ess, Sub, Quo agree on distributive lattices",
        limit: secs(120),
        run: distributive_equivalence,
    },
    Criterion {
        number: 10,
        title: "separations and implications on small lattices",
        limit: secs(120),
        run: separations,
    },
    Criterion {
        number: 11,
        title: "log2 arity bound",
        limit: secs(60),
        run: arity_bound,
    },
    Criterion {
        number: 12,
        title: "Jonsson terms",
        limit: secs(1),
        run: jonsson,
    },
    Criterion {
        number: 13,
        title: "Boolean centralizer table",
        limit: secs(60),
        run: boolean_table,
    },
    Criterion {
        number: 14,
        title: "sums of unary maps over Z_2 and Z_3",
        limit: secs(30),
        run: abelian_sums,
    },
];

/// Runs the selected criteria (all when `only` is empty), in order.
pub fn run_suite(only: &[usize]) -> Vec<CriterionReport> {
    CRITERIA
        .iter()
        .filter(|c| only.is_empty() || only.contains(&c.number))
        .map(Criterion::run)
        .collect()
}

fn chain_counts() -> Result<Vec<CheckRecord>> {
    let cases: [(usize, &[u64], &[u64]); 3] = [
        (2, &[1, 0], &[2, 1]),
        (3, &[5, 2, 0], &[6, 3, 1]),
        (4, &[19, 9, 3, 0], &[20, 10, 4, 1]),
    ];
    let mut out = Vec::new();
    for (l, ess, total) in cases {
        for n in 0..=10 {
            out.push(CheckRecord::new(
                format!("c1.chain{l}.ess.n{n}"),
                format!("essential count on the {l}-chain is a power sum over {ess:?}"),
                count_essential_chain(l, n),
                power_sum(ess, n),
            ));
            out.push(CheckRecord::new(
                format!("c1.chain{l}.total.n{n}"),
                format!("total count on the {l}-chain is a power sum over {total:?}"),
                count_total_chain(l, n),
                power_sum(total, n),
            ));
        }
    }
    Ok(out)
}

/// `8^n - 6^n + 2·2^n + 0^n` and `9^n - 7^n + 2·3^n + 1^n`, evaluated here.
fn v_closed_forms(n: usize) -> (BigUint, BigUint) {
    let b = |x: u64| -> BigInt { pow(x, n).into() };
    let ess = b(8) - b(6) + b(2) * 2u32 + b(0);
    let total = b(9) - b(7) + b(3) * 2u32 + b(1);
    (
        ess.to_biguint().expect("positive"),
        total.to_biguint().expect("positive"),
    )
}

fn v_counts() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let essentials: Vec<BigUint> = (0..=10).map(count_essential_v).collect();
    for n in 0..=10 {
        let (ess, total) = v_closed_forms(n);
        out.push(CheckRecord::new(
            format!("c2.ess.n{n}"),
            "8^n-6^n+2*2^n+0^n",
            &essentials[n],
            ess,
        ));
        out.push(CheckRecord::new(
            format!("c2.total.n{n}"),
            "9^n-7^n+2*3^n+1^n",
            count_total_v(n),
            &total,
        ));
        out.push(CheckRecord::new(
            format!("c2.binomial.n{n}"),
            "total is the binomial transform of the essential counts",
            essential_to_total(&essentials, n)?,
            total,
        ));
    }
    let v = Semilattice::v_shape();
    let join = OpTable::binary(3, v.join_table())?;
    let (mut total, mut essential) = (0, 0);
    for code in 0..3usize.pow(9) {
        let f = OpTable::new(2, 3, decode_tuple(code, 3, 9))?;
        if commute(&f, &join)? {
            total += 1;
            if f.essential_arity() == 2 {
                essential += 1;
            }
        }
    }
    out.push(CheckRecord::new(
        "c2.raw.n2",
        "all 3^9 binary tables: essential/total",
        format!("{essential}/{total}"),
        "36/51",
    ));
    let search = count_centralizer_members(3, &[join], 2)?;
    out.push(CheckRecord::new(
        "c2.search.n2",
        "backtracking search: essential/total",
        format!("{}/{}", search.essential, search.total),
        "36/51",
    ));
    Ok(out)
}

fn mr_closed_form() -> Result<Vec<CheckRecord>> {
    Ok((0..=10)
        .map(|n| {
            CheckRecord::new(
                format!("c3.n{n}"),
                "simplifies to 6^n+3^n+1^n",
                machida_rosenberg(n),
                power_sum(&[6, 3, 1], n),
            )
        })
        .collect())
}

fn filter_sums() -> Result<Vec<CheckRecord>> {
    let mut lattices = all_lattices(4);
    lattices.push(Lattice::chain(5));
    let mut out = Vec::new();
    for (i, l) in lattices.iter().enumerate() {
        for n in 0..=4 {
            // count_essential_thm fails if the two sums disagree at some element
            let report = count_essential_thm(l, n);
            let agree = report
                .as_ref()
                .map(|r| r.summands.iter().all(|s| s.join_homs == s.meet_homs));
            out.push(CheckRecord::new(
                format!("c4.l{i}.agree.n{n}"),
                format!(
                    "join-hom and meet-hom sums agree on a {}-element lattice",
                    l.size()
                ),
                format!("{agree:?}"),
                "Ok(true)",
            ));
            if (1..=2).contains(&n) {
                let brute = count_centralizer_members(
                    l.size(),
                    &fundamental_ops(&l.join_semilattice()),
                    n,
                )?;
                out.push(CheckRecord::new(
                    format!("c4.l{i}.brute.n{n}"),
                    format!(
                        "filter sum equals brute force on a {}-element lattice",
                        l.size()
                    ),
                    report?.total,
                    brute.essential,
                ));
            }
        }
    }
    Ok(out)
}

fn galois_pair(
    a: &Semilattice,
    b: &Semilattice,
    label: &str,
    out: &mut Vec<CheckRecord>,
) -> Result<usize> {
    let homs = enumerate_homs(a, b, Flavor::Join, Preserves::NONE)?;
    let (mut roundtrip, mut adjoint) = (0, 0);
    for f in &homs {
        let g = galois_left(f, a, b)?;
        if galois_right(&g, a, b)? == *f {
            roundtrip += 1;
        }
        let (a_bot, _) = (a.adjoin_bottom(), b.adjoin_bottom());
        let ok = (0..a.size()).all(|x| {
            (0..b.size()).all(|y| b.leq(f.apply(x), y) == a_bot.leq(x + 1, g.apply(y + 1)))
        });
        if ok {
            adjoint += 1;
        }
    }
    out.push(CheckRecord::new(
        format!("c5.{label}.roundtrip"),
        "right adjoint of the left adjoint is f",
        roundtrip,
        homs.len(),
    ));
    out.push(CheckRecord::new(
        format!("c5.{label}.adjunction"),
        "f(a) <= b iff a <= f'(b)",
        adjoint,
        homs.len(),
    ));
    Ok(homs.len())
}

fn galois_roundtrips() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    let corpus = join_semilattices(4);
    for (i, a) in corpus.iter().enumerate() {
        for (j, b) in corpus.iter().enumerate() {
            galois_pair(a, b, &format!("s{i}s{j}"), &mut out)?;
        }
    }
    let c3 = Lattice::chain(3);
    let square = c3.power(2, DEFAULT_ELEMENT_BUDGET)?.join_semilattice();
    let maps = galois_pair(&square, &c3.join_semilattice(), "square", &mut out)?;
    out.push(CheckRecord::new(
        "c5.square.count",
        "join-homomorphisms from the square of the 3-chain to the 3-chain",
        maps,
        46,
    ));
    Ok(out)
}

fn join_decompositions() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (i, l) in all_lattices(4).iter().enumerate() {
        let s = l.join_semilattice();
        let members =
            crate::centralizer::brute_force_centralizer(l.size(), &fundamental_ops(&s), 2)?;
        let (mut decomposed, mut unique, mut essential) = (0, 0, 0);
        for f in &members {
            let Ok(d) = semilattice_decompose(f, &s) else {
                continue;
            };
            if recompose(&d.unaries, &s)? == *f {
                decomposed += 1;
            }
            if enumerate_join_decompositions(f, &s)? == vec![d.unaries.clone()] {
                unique += 1;
            }
            if f.essential_profile().essential == d.nonconstant_positions() {
                essential += 1;
            }
        }
        let n = members.len();
        out.push(CheckRecord::new(
            format!("c6.l{i}.decompose"),
            "every binary member decomposes and recomposes",
            decomposed,
            n,
        ));
        out.push(CheckRecord::new(
            format!("c6.l{i}.unique"),
            "the decomposition is the only one",
            unique,
            n,
        ));
        out.push(CheckRecord::new(
            format!("c6.l{i}.essential"),
            "essential variables are the nonconstant parts",
            essential,
            n,
        ));
    }
    Ok(out)
}

fn v_nondecomposable() -> Result<Vec<CheckRecord>> {
    let cert = witness_nonlattice(&Semilattice::v_shape())?;
    Ok(vec![
        CheckRecord::new(
            "c7.member",
            "constructed operation commutes with the join",
            cert.in_centralizer,
            true,
        ),
        CheckRecord::new(
            "c7.endos",
            "endomorphism pairs searched",
            cert.pairs_checked,
            cert.endomorphisms * cert.endomorphisms,
        ),
        CheckRecord::new(
            "c7.decomposable",
            "some endomorphism pair recomposes to it",
            cert.decomposable,
            false,
        ),
    ])
}

fn matrix_label(l: &Lattice, m: &[Vec<usize>]) -> String {
    let rows: Vec<String> = m
        .iter()
        .map(|r| {
            format!(
                "({})",
                r.iter().map(|&x| l.label(x)).collect::<Vec<_>>().join(",")
            )
        })
        .collect();
    format!("({})", rows.join(","))
}

fn fig2_failure() -> Result<Vec<CheckRecord>> {
    use fig2::*;
    let fig = build_fig2();
    let l = &fig.lattice;
    let report = distributive_recompose(&[fig.u1.clone(), fig.u2.clone()], l)?;
    let meet = OpTable::binary(7, l.meet_table())?;
    let rows_first = |m: [[usize; 2]; 2]| l.meet(fig.f.apply(&m[0]), fig.f.apply(&m[1]));
    let columns_first = |m: [[usize; 2]; 2]| {
        fig.f
            .apply(&[l.meet(m[0][0], m[1][0]), l.meet(m[0][1], m[1][1])])
    };
    let quoted = [[A, C], [C, C]];
    let mut out = vec![
        CheckRecord::new(
            "c8.validate",
            "u1, u2 are endomorphisms and the lattice equalities hold",
            true,
            true,
        ),
        CheckRecord::new(
            "c8.join",
            "recomposition commutes with the join",
            report.join_witness.is_none(),
            true,
        ),
        CheckRecord::new(
            "c8.meet",
            "recomposition fails to commute with the meet",
            report.meet_witness.is_some(),
            true,
        ),
        CheckRecord::new(
            "c8.quoted",
            "((a,c),(c,c)) is a witness: columns first / rows first",
            format!(
                "{} / {}",
                l.label(columns_first(quoted)),
                l.label(rows_first(quoted))
            ),
            "c / e",
        ),
    ];
    let first = commutes(&fig.f, &meet)?.expect("meet witness");
    out.push(CheckRecord::new(
        "c8.first",
        "first witness in row-major lexicographic order, columns first / rows first",
        format!(
            "{} {} / {}",
            matrix_label(l, &first.matrix),
            l.label(first.columns_first),
            l.label(first.rows_first)
        ),
        "((a,c),(c,c)) c / e",
    ));
    Ok(out)
}

fn distributive_equivalence() -> Result<Vec<CheckRecord>> {
    let lattices = distributive_lattices(4);
    let report = corpus_check(&lattices, 3, CorpusCheck::Equivalence)?;
    let mut out = vec![CheckRecord::new(
        "c9.count",
        "down-set lattices of posets on at most 4 points",
        lattices.len(),
        25,
    )];
    out.push(CheckRecord::new(
        "c9.equivalence",
        "lattices where Ess, Sub, Quo disagree for some n <= 3",
        report.failures().count(),
        0,
    ));
    Ok(out)
}

fn separations() -> Result<Vec<CheckRecord>> {
    let lex = build_lex_doubling(4)?;
    let (m3sq, coord) = build_m3_power(2)?;
    let mut out = vec![
        CheckRecord::new(
            "c10.lex.quo",
            "lexicographic doubling of 2^4 has a 2^4 quotient",
            exists_cube_quotient(&lex, 4)?.is_some(),
            true,
        ),
        CheckRecord::new(
            "c10.lex.sub",
            "lexicographic doubling of 2^4 has a 2^4 sublattice",
            find_cube_sublattice(&lex, 4).is_some(),
            false,
        ),
        CheckRecord::new(
            "c10.m3.coord",
            "coordinate operation on M3^2 is an essentially binary member",
            is_essential_member(&coord, &m3sq)?,
            true,
        ),
        CheckRecord::new(
            "c10.m3.ess",
            "an essentially binary member of M3^2 is found",
            exists_essential_nary(&m3sq, 2, DEFAULT_TUPLE_BUDGET)?.is_some(),
            true,
        ),
        CheckRecord::new(
            "c10.m3.quo",
            "M3^2 has a 2^2 quotient",
            exists_cube_quotient(&m3sq, 2)?.is_some(),
            false,
        ),
    ];
    let corpus = all_lattices(6);
    let report = corpus_check(&corpus, 2, CorpusCheck::Implications)?;
    out.push(CheckRecord::new(
        "c10.corpus",
        "lattices on at most 6 elements",
        corpus.len(),
        25,
    ));
    out.push(CheckRecord::new(
        "c10.implications",
        "violations of Ess=>Sub, Sub&Quo=>Ess, Quo=>Sub for n <= 2",
        report.failures().count(),
        0,
    ));
    Ok(out)
}

fn arity_bound() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (i, l) in all_lattices(5).iter().enumerate() {
        let r = cd_arity_bound_check(l)?;
        out.push(CheckRecord::new(
            format!("c11.l{i}"),
            format!(
                "no essentially {}-ary member on a {}-element lattice",
                r.arity, r.size
            ),
            r.essential,
            0,
        ));
    }
    let m3 = count_centralizer_members(5, &fundamental_ops(&Lattice::m3()), 2)?;
    out.push(CheckRecord::new(
        "c11.m3",
        "no essentially binary member on M3",
        m3.essential,
        0,
    ));
    Ok(out)
}

fn jonsson() -> Result<Vec<CheckRecord>> {
    let x = OpTable::projection(3, 2, 0);
    let z = OpTable::projection(3, 2, 2);
    Ok(vec![
        CheckRecord::new(
            "c12.table",
            "five tabulated terms",
            format!("{:?}", verify_jonsson(&boolean_jonsson_terms()).is_ok()),
            "true",
        ),
        CheckRecord::new(
            "c12.majority",
            "x, majority, z",
            verify_jonsson(&[x, majority(), z]).is_ok(),
            true,
        ),
    ])
}

fn boolean_table() -> Result<Vec<CheckRecord>> {
    let report = verify_table4(3)?;
    let mut out: Vec<CheckRecord> = report
        .records
        .iter()
        .filter(|r| r.status != RowStatus::Skipped)
        .map(|r| {
            CheckRecord::new(
                format!("c13.{}", r.row),
                "bounded centralizer at arity <= 3",
                format!("{:?}", r.status),
                "Pass",
            )
        })
        .collect();
    out.push(CheckRecord::new(
        "c13.distinct",
        "25 distinct centralizers",
        report.distinct_centralizers,
        true,
    ));
    out.push(CheckRecord::new(
        "c13.skipped",
        "finite-k rows skipped",
        report.count(RowStatus::Skipped),
        8,
    ));
    Ok(out)
}

fn abelian_sums() -> Result<Vec<CheckRecord>> {
    let mut out = Vec::new();
    for (k, max_arity) in [(2usize, 3usize), (3, 2)] {
        let m = maltsev_op(k);
        for n in 1..=max_arity {
            let cells = k.pow(n as u32);
            let (mut agree, mut roundtrip, mut total, mut decomposed) = (0, 0, 0, 0);
            for code in 0..k.pow(cells as u32) {
                let f = OpTable::new(n, k, decode_tuple(code, k, cells))?;
                total += 1;
                let parts = maltsev_decompose(&f);
                if parts.is_some() == commute(&f, &m)? {
                    agree += 1;
                }
                if let Some(p) = parts {
                    decomposed += 1;
                    if maltsev_recompose(&p, k) == f {
                        roundtrip += 1;
                    }
                }
            }
            out.push(CheckRecord::new(
                format!("c14.z{k}.n{n}.iff"),
                "decomposes iff commutes with x-y+z",
                agree,
                total,
            ));
            out.push(CheckRecord::new(
                format!("c14.z{k}.n{n}.roundtrip"),
                "decomposition sums back to f",
                roundtrip,
                decomposed,
            ));
            // sums a_1 x_1 + ... + a_n x_n + c
            out.push(CheckRecord::new(
                format!("c14.z{k}.n{n}.count"),
                "number of decomposable operations",
                decomposed,
                k.pow(n as u32 + 1),
            ));
        }
    }
    Ok(out)
}

/// Bases of the chain power sums, exposed for the CLI.
pub fn chain_bases(l: usize) -> Vec<BigUint> {
    chain_terms(l)
}
