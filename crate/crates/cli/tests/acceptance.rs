//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use ringcover::cover::Sigma;
use ringcover::ideal::{jacobson_radical, local_data, minimal_ideals, quotient_ring, transporter, Side};
use ringcover::iso::is_isomorphic;
use ringcover::sn::{in_sn, local_coverability_criterion};
use ringcover::subring::coset_representatives;
use ringcover::{
    all_subrings, canonical_print, eval, eval_str, parse, sigma, verify_good_tuple, ElementSet, Limits,
    RingExpr, RingTable,
};
use ringcover_cli::manifest::{parse_manifest, DEFAULT_MANIFEST};
use ringcover_oracles as oracle;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ring(spec: &str) -> RingTable {
    eval_str(spec).unwrap_or_else(|e| panic!("{spec}: {e}"))
}

fn limits() -> Limits {
    Limits::default()
}

/// Distinct manifest rings keyed by canonical spec.
fn manifest_rings() -> BTreeMap<String, RingTable> {
    parse_manifest(DEFAULT_MANIFEST)
        .expect("default manifest parses")
        .into_iter()
        .map(|e| (canonical_print(&e.spec), eval(&e.spec).expect("manifest spec evaluates")))
        .collect()
}

fn sigma_of(r: &RingTable) -> Sigma {
    sigma(r, &limits()).expect("sigma").sigma
}

const SIGMA_TABLE: &[(&str, usize)] = &[
    ("Z(2) x Z(2)", 3),
    ("Nil2(2)", 3),
    ("T(2, GF(2))", 3),
    ("Z(2) x Z(2) x Z(2)", 3),
    ("Z(2) x P(2, 2)", 3),
    ("Z(2) x Z(4)", 3),
    ("GF(4) x GF(4)", 4),
    ("M(2, GF(2))", 4),
    ("Nil2(3)", 4),
    ("T(2, GF(3))", 4),
    ("Z(2) x M(2, GF(2))", 4),
    ("GF(2) x GF(4) x GF(4)", 4),
    ("TD(4)", 5),
    ("MT()", 5),
    ("GF(3) x GF(3) x GF(3)", 6),
    ("M(2, GF(3))", 7),
    ("TD(9)", 10),
];

const F4_DUAL: &str = "Table([2,2,2,2], [[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],\
[[0,1,0,0],[1,1,0,0],[0,0,0,1],[0,0,1,1]],[[0,0,1,0],[0,0,0,1],[0,0,0,0],[0,0,0,0]],\
[[0,0,0,1],[0,0,1,1],[0,0,0,0],[0,0,0,0]]], [1,0,0,0])";

const NOT_COVERABLE: &[&str] = &[
    "Z(4)",
    "GF(4)",
    "P(2, 2)",
    "Z(9)",
    "GF(9)",
    "P(3, 2)",
    "GF(3) x GF(3)",
    "GF(8)",
    "GF(27)",
    "Z(8)",
    "P(2, 3)",
    "P(3, 3)",
    "GF(8) x GF(4)",
    F4_DUAL,
];

const TIME_LIMIT: Duration = Duration::from_secs(60);

fn criterion_1() -> Check {
    let mut bad = Vec::new();
    let mut slowest = Duration::ZERO;
    let cases = SIGMA_TABLE
        .iter()
        .map(|&(s, n)| (s, Sigma::Finite(n)))
        .chain(NOT_COVERABLE.iter().map(|&s| (s, Sigma::NotCoverable)));
    for (spec, want) in cases {
        let r = ring(spec);
        let t = Instant::now();
        let got = sigma_of(&r);
        let dt = t.elapsed();
        slowest = slowest.max(dt);
        if got != want {
            bad.push(format!("{spec}: sigma {got}, expected {want}"));
        }
        if dt > TIME_LIMIT {
            bad.push(format!("{spec}: took {dt:?}"));
        }
    }
    let total = SIGMA_TABLE.len() + NOT_COVERABLE.len();
    if bad.is_empty() {
        Ok(format!("{total} covering numbers reproduced, slowest {slowest:.2?}"))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_2() -> Check {
    let expected: [(usize, &[&str]); 2] = [
        (3, &["Z(2) x Z(2)", "Nil2(2)"]),
        (4, &["GF(4) x GF(4)", "M(2, GF(2))", "Nil2(3)", "T(2, GF(3))"]),
    ];
    let rings = manifest_rings();
    let mut bad = Vec::new();
    for (n, members) in expected {
        let targets: Vec<RingTable> = members.iter().map(|s| ring(s)).collect();
        let mut found = vec![false; targets.len()];
        for (spec, r) in &rings {
            let member = in_sn(r, n, &limits()).expect("in_sn").member;
            let matched = targets
                .iter()
                .position(|t| t.order() == r.order() && is_isomorphic(t, r).expect("iso"));
            match (member, matched) {
                (true, Some(i)) => found[i] = true,
                (true, None) => bad.push(format!("{spec} unexpectedly in S({n})")),
                (false, Some(_)) => bad.push(format!("{spec} missing from S({n})")),
                (false, None) => {}
            }
        }
        for (s, f) in members.iter().zip(&found) {
            if !f {
                bad.push(format!("{s} not found in S({n})"));
            }
        }
    }
    for spec in ["GF(2) x GF(4) x GF(4)", "Z(2) x M(2, GF(2))"] {
        let v = in_sn(&ring(spec), 4, &limits()).expect("in_sn");
        if v.member || v.sigma.sigma != Sigma::Finite(4) {
            bad.push(format!("{spec}: member {}, sigma {}", v.member, v.sigma.sigma));
        }
    }
    if bad.is_empty() {
        Ok(format!("S(3) and S(4) membership exact over {} manifest rings", rings.len()))
    } else {
        Err(bad.join("; "))
    }
}

/// All coordinate vectors produced by `f` over two parameters in `F_q`-like ranges.
fn family(q: u64, f: impl Fn(u64, u64) -> Vec<u64>) -> Vec<Vec<u64>> {
    let mut v: Vec<Vec<u64>> = (0..q).flat_map(|a| (0..q).map(move |b| (a, b))).map(|(a, b)| f(a, b)).collect();
    v.sort();
    v.dedup();
    v
}

fn bits(words: &[&str]) -> Vec<Vec<u64>> {
    let mut v: Vec<Vec<u64>> = words
        .iter()
        .map(|w| w.bytes().map(|b| u64::from(b - b'0')).collect())
        .collect();
    v.sort();
    v
}

/// Every F_2-vector of length 4 satisfying `keep`.
fn f2_4(keep: impl Fn(&[u64]) -> bool) -> Vec<Vec<u64>> {
    (0..16u64)
        .map(|m| (0..4).map(|i| (m >> (3 - i)) & 1).collect::<Vec<_>>())
        .filter(|v| keep(v))
        .collect()
}

fn goldens() -> Vec<(&'static str, Vec<Vec<Vec<u64>>>)> {
    vec![
        (
            // coordinates [a0, a1, b0, b1] with F_4 = F_2[t]/(t^2 + t + 1)
            "GF(4) x GF(4)",
            vec![
                f2_4(|v| v[3] == 0),
                f2_4(|v| v[1] == 0),
                f2_4(|v| v[0] == v[2] && v[1] == v[3]),
                bits(&["0000", "1010", "0111", "1101"]),
            ],
        ),
        (
            // row-major [m00, m01, m10, m11]
            "M(2, GF(2))",
            vec![
                bits(&["0000", "1001", "0111", "1110"]),
                f2_4(|v| v[2] == 0),
                f2_4(|v| v[1] == 0),
                f2_4(|v| v.iter().sum::<u64>() % 2 == 0),
            ],
        ),
        (
            // [a, b, c] for a + bx + cy
            "Nil2(3)",
            vec![
                family(3, |a, b| vec![a, b, 0]),
                family(3, |a, b| vec![a, 0, b]),
                family(3, |a, b| vec![a, b, b]),
                family(3, |a, b| vec![a, b, 2 * b % 3]),
            ],
        ),
        (
            // [m00, m01, m11]
            "T(2, GF(3))",
            vec![
                family(3, |a, b| vec![a, 0, b]),
                family(3, |a, b| vec![a, b, a]),
                family(3, |a, b| vec![(a + b) % 3, a, b]),
                family(3, |a, b| vec![a, b, (a + b) % 3]),
            ],
        ),
    ]
}

fn serialize(r: &RingTable, s: &ElementSet) -> Vec<Vec<u64>> {
    let mut v: Vec<Vec<u64>> = s.iter().map(|x| r.coords(x)).collect();
    v.sort();
    v
}

fn criterion_3() -> Check {
    let mut bad = Vec::new();
    for (spec, golden) in goldens() {
        let r = ring(spec);
        let maximal = all_subrings(&r, limits().lattice_cap).expect("lattice").maximal_subrings();
        let (unital, other): (Vec<_>, Vec<_>) = maximal.iter().partition(|s| s.contains(r.one()));
        let mut got: Vec<Vec<Vec<u64>>> = unital.iter().map(|s| serialize(&r, s)).collect();
        got.sort();
        let mut want = golden;
        want.sort();
        if got != want {
            bad.push(format!("{spec}: maximal subrings containing 1 differ from the listed families"));
        }
        if maximal.len() != 4 {
            let extra: Vec<String> = other
                .iter()
                .map(|s| {
                    let ideal_like = ringcover::ideal::is_ideal(&r, s);
                    format!("order {} without 1{}", s.len(), if ideal_like { ", an ideal" } else { "" })
                })
                .collect();
            bad.push(format!(
                "{spec}: {} maximal subrings, not 4; the extra ones are [{}]",
                maximal.len(),
                extra.join(", ")
            ));
        }
    }
    if bad.is_empty() {
        Ok("4 maximal subrings each, equal to the listed families".into())
    } else {
        Err(bad.join("; "))
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn criterion_4() -> Check {
    let mut bad = Vec::new();
    let members = [
        ("GF(4) x GF(4)", 8, None),
        ("M(2, GF(2))", 8, None),
        ("Nil2(3)", 9, Some(3)),
        ("T(2, GF(3))", 9, Some(3)),
    ];
    for (spec, index, local) in members {
        let r = ring(spec);
        let res = sigma(&r, &limits()).expect("sigma");
        let g = verify_good_tuple(&r, &res.witness).expect("good tuple");
        if g.index != index {
            bad.push(format!("{spec}: [R:S] = {}", g.index));
        }
        if let Some(k) = local {
            if g.indexes.iter().chain(&g.indexes_over_intersection).any(|&i| i != k) {
                bad.push(format!(
                    "{spec}: [R:Si] = {:?}, [Si:S] = {:?}",
                    g.indexes, g.indexes_over_intersection
                ));
            }
        }
        if !g.unit_in_intersection {
            bad.push(format!("{spec}: 1 not in S"));
        }
        if !g.ideal_free {
            bad.push(format!("{spec}: S contains a nonzero ideal"));
        }
    }
    for &(spec, n) in SIGMA_TABLE {
        let r = ring(spec);
        let res = sigma(&r, &limits()).expect("sigma");
        let g = verify_good_tuple(&r, &res.witness).expect("cover");
        if g.index > factorial(n) {
            bad.push(format!("{spec}: [R:S] = {} > {n}!", g.index));
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "indices 8, 8, 9, 9 with 1 in S and S ideal-free; [R:S] <= sigma! on {} covers",
            SIGMA_TABLE.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_5() -> Check {
    let mut bad = Vec::new();
    let (mut lattices, mut radicals, mut covers) = (0, 0, 0);
    for (spec, r) in manifest_rings() {
        if r.order() <= 16 {
            let lattice = all_subrings(&r, limits().lattice_cap).expect("lattice");
            let mut brute = oracle::subrings_by_subsets(&r);
            brute.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
            if lattice.subrings() != brute.as_slice() {
                bad.push(format!("{spec}: subring lattice differs from subset scan"));
            }
            lattices += 1;
            if let Sigma::Finite(n) = sigma_of(&r) {
                if oracle::min_cover_by_combinations(&r, &brute, n) != Some(n) {
                    bad.push(format!("{spec}: brute-force cover disagrees with sigma {n}"));
                }
                covers += 1;
            }
        }
        if r.order() <= 32 {
            if jacobson_radical(&r).radical != oracle::largest_nil_ideal(&r) {
                bad.push(format!("{spec}: radical differs from largest nil ideal"));
            }
            radicals += 1;
        }
    }
    if bad.is_empty() {
        Ok(format!(
            "{lattices} lattices, {radicals} radicals and {covers} covering numbers match brute force"
        ))
    } else {
        Err(bad.join("; "))
    }
}

const PRODUCT_PAIRS: &[(&str, &str)] = &[
    ("Z(2) x Z(2)", "GF(3)"),
    ("Nil2(2)", "GF(9)"),
    ("T(2, GF(2))", "Z(9)"),
    ("M(2, GF(2))", "GF(3)"),
    ("Nil2(3)", "Z(4)"),
    ("GF(4) x GF(4)", "P(3, 2)"),
    ("T(2, GF(3))", "GF(8)"),
];

fn criterion_6() -> Check {
    let mut bad = Vec::new();
    let rings = manifest_rings();
    let (mut quotients, mut local) = (0, 0);
    for (spec, r) in &rings {
        let s = sigma_of(r);
        if sigma_of(&r.opposite()) != s {
            bad.push(format!("{spec}: opposite ring has a different sigma"));
        }
        for ideal in minimal_ideals(r) {
            let q = quotient_ring(r, &ideal).expect("quotient").quotient;
            if sigma_of(&q) < s {
                bad.push(format!("{spec}: quotient by an ideal of order {} has smaller sigma", ideal.len()));
            }
            quotients += 1;
        }
        if r.is_commutative() && local_data(r).is_local && local_data(r).resfield_prime {
            let p = local_coverability_criterion(r).expect("criterion applies");
            if p.sigma != s {
                bad.push(format!("{spec}: predicted {}, direct {s}", p.sigma));
            }
            local += 1;
        }
    }
    for &(a, b) in PRODUCT_PAIRS {
        let (ra, rb) = (ring(a), ring(b));
        let whole = sigma_of(&ring(&format!("{a} x {b}")));
        let want = sigma_of(&ra).min(sigma_of(&rb));
        if whole != want {
            bad.push(format!("{a} x {b}: sigma {whole}, expected {want}"));
        }
    }
    let q = ring("Quot(T(2, GF(3)), [[0,1,0]])");
    if !is_isomorphic(&q, &ring("GF(3) x GF(3)")).expect("iso") {
        bad.push("T(2, GF(3)) modulo its order-3 ideal is not F_3 x F_3".into());
    }
    if bad.is_empty() {
        Ok(format!(
            "{} rings: {quotients} quotients, opposites, {} product pairs, {local} local predictions",
            rings.len(),
            PRODUCT_PAIRS.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn criterion_7() -> Check {
    let r = ring("Nil2(3)");
    let res = sigma(&r, &limits()).expect("sigma");
    let s = verify_good_tuple(&r, &res.witness).expect("good tuple").intersection;
    let reps: Vec<_> = coset_representatives(&r, &s)
        .into_iter()
        .filter(|&x| !s.contains(x))
        .collect();
    let mut bad = Vec::new();
    let mut seen = Vec::new();
    for &x in &reps {
        for side in [Side::Left, Side::Right] {
            let t = transporter(&r, &s, x, side);
            if s.len() / t.len() != 3 {
                bad.push(format!("{:?} {side:?}: index {}", r.coords(x), s.len() / t.len()));
            }
            seen.push(t);
        }
    }
    seen.dedup();
    if seen.len() != 1 {
        bad.push(format!("{} distinct transporters", seen.len()));
    }
    if bad.is_empty() {
        Ok(format!(
            "[S:I(r)] = 3 on both sides for all {} nontrivial coset representatives; I(r) constant",
            reps.len()
        ))
    } else {
        Err(bad.join("; "))
    }
}

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> RingExpr {
    const GF: [u64; 8] = [2, 3, 4, 8, 9, 16, 27, 32];
    if depth == 0 || rng.gen_bool(0.4) {
        return match rng.gen_range(0..8) {
            0 => RingExpr::Zmod(rng.gen_range(2..5000)),
            1 => RingExpr::GF(GF[rng.gen_range(0..GF.len())]),
            2 => RingExpr::TruncPoly([2, 3, 5, 7][rng.gen_range(0..4)], rng.gen_range(1..8)),
            3 => RingExpr::Nil2([2, 3, 5, 7][rng.gen_range(0..4)]),
            4 => RingExpr::TwistedDual([4, 9][rng.gen_range(0..2)]),
            5 => RingExpr::MixedTri,
            _ => {
                let k = rng.gen_range(0..4);
                let shape: Vec<u64> = (0..k).map(|_| [2, 3, 4, 7, 8, 9, 25][rng.gen_range(0..7)]).collect();
                let vec = |rng: &mut ChaCha8Rng| shape.iter().map(|&d| rng.gen_range(0..d)).collect::<Vec<_>>();
                let consts = (0..k).map(|_| (0..k).map(|_| vec(rng)).collect()).collect();
                let unit = vec(rng);
                RingExpr::Table { shape, consts, unit }
            }
        };
    }
    let inner = Box::new(random_expr(rng, depth - 1));
    match rng.gen_range(0..5) {
        0 => (0..rng.gen_range(1..3)).fold(*inner, |acc, _| acc.times(random_expr(rng, depth - 1))),
        1 => RingExpr::Mat(rng.gen_range(1..5), inner),
        2 => RingExpr::Tri(rng.gen_range(1..5), inner),
        3 => RingExpr::Opp(inner),
        _ => {
            let len = inner.basis_len().unwrap_or_else(|| rng.gen_range(0..4));
            let gens = (0..rng.gen_range(0..3))
                .map(|_| (0..len).map(|_| rng.gen_range(0..12)).collect())
                .collect();
            RingExpr::Quot(inner, gens)
        }
    }
}

fn criterion_8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut bad = Vec::new();
    const CASES: usize = 10_000;
    for _ in 0..CASES {
        let e = random_expr(&mut rng, 4);
        let text = canonical_print(&e);
        match parse(&text) {
            Ok(back) if back == e => {}
            Ok(_) => bad.push(format!("{text}: reparsed to a different tree")),
            Err(err) => bad.push(format!("{text}: {err}")),
        }
        if bad.len() > 5 {
            break;
        }
    }
    let entries = parse_manifest(DEFAULT_MANIFEST).map_err(|e| e.to_string())?;
    for e in &entries {
        if let Err(err) = eval(&e.spec) {
            bad.push(format!("line {}: {err}", e.line));
        }
    }
    if bad.is_empty() {
        Ok(format!("{CASES} random trees round-trip; {} manifest rows evaluate", entries.len()))
    } else {
        Err(bad.join("; "))
    }
}

fn main() {
    let criteria: [Criterion; 8] = [
        ("covering numbers", criterion_1),
        ("S(n) membership", criterion_2),
        ("maximal subrings", criterion_3),
        ("good-tuple indices", criterion_4),
        ("oracle equivalence", criterion_5),
        ("structural invariants", criterion_6),
        ("transporters", criterion_7),
        ("DSL", criterion_8),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let result = f();
        let dt = t.elapsed();
        match result {
            Ok(msg) => println!("PASS criterion {} ({name}, {dt:.2?}): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("FAIL criterion {} ({name}, {dt:.2?}): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
