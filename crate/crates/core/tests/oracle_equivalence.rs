use ringcover::constructors::*;
use ringcover::cover::{is_coverable, sigma, Limits, Sigma};
use ringcover::dsl::eval_str;
use ringcover::ideal::jacobson_radical;
use ringcover::subring::all_subrings;
use ringcover::RingTable;
use ringcover_oracles as oracle;

fn small_rings() -> Vec<(&'static str, RingTable)> {
    [
        "Z(2)", "Z(3)", "Z(4)", "GF(4)", "P(2,2)", "Z(2) x Z(2)", "Z(6)", "Z(8)", "GF(8)", "P(2,3)",
        "Nil2(2)", "T(2, GF(2))", "Z(2) x Z(2) x Z(2)", "Z(2) x Z(4)", "Z(2) x P(2,2)", "Z(2) x GF(4)",
        "GF(9)", "Z(9)", "P(3,2)", "GF(3) x GF(3)", "Z(3) x Z(4)", "GF(4) x GF(4)", "M(2, GF(2))",
        "TD(4)", "GF(16)", "P(2,4)", "Z(16)", "Z(4) x Z(4)", "Z(2) x T(2, GF(2))", "Z(2) x Nil2(2)",
        "Z(2) x Z(2) x Z(2) x Z(2)", "GF(4) x P(2,2)", "Z(4) x P(2,2)",
        "Table([2,2,2,2], [[[1,0,0,0],[0,1,0,0],[0,0,1,0],[0,0,0,1]],[[0,1,0,0],[1,1,0,0],[0,0,0,1],[0,0,1,1]],[[0,0,1,0],[0,0,0,1],[0,0,0,0],[0,0,0,0]],[[0,0,0,1],[0,0,1,1],[0,0,0,0],[0,0,0,0]]], [1,0,0,0])",
        "Table([4,2], [[[1,0],[0,1]],[[0,1],[2,0]]], [1,0])",
    ]
    .into_iter()
    .map(|s| (s, eval_str(s).unwrap()))
    .collect()
}

#[test]
fn subring_lattice_matches_subset_scan() {
    for (name, r) in small_rings().into_iter().filter(|(_, r)| r.order() <= 16) {
        let lattice = all_subrings(&r, 100_000).unwrap();
        assert_eq!(lattice.subrings(), oracle::subrings_by_subsets(&r).as_slice(), "{name}");
    }
}

#[test]
fn maximal_flags_match_oracle() {
    for (name, r) in small_rings().into_iter().filter(|(_, r)| r.order() <= 16) {
        let lattice = all_subrings(&r, 100_000).unwrap();
        let expected = oracle::maximal_among(&oracle::subrings_by_subsets(&r));
        assert_eq!(lattice.maximal_subrings(), expected, "{name}");
    }
}

#[test]
fn radical_matches_largest_nil_ideal() {
    let mut rings = small_rings();
    for s in ["Nil2(3)", "T(2, GF(3))", "GF(2) x GF(4) x GF(4)", "MT()", "Z(2) x M(2, GF(2))", "P(2,5)", "Z(32)"] {
        rings.push((s, eval_str(s).unwrap()));
    }
    for (name, r) in rings.into_iter().filter(|(_, r)| r.order() <= 32) {
        assert_eq!(jacobson_radical(&r).radical, oracle::largest_nil_ideal(&r), "{name}");
    }
}

#[test]
fn sigma_matches_cover_by_all_subrings() {
    for (name, r) in small_rings().into_iter().filter(|(_, r)| r.order() <= 16) {
        let all = oracle::subrings_by_subsets(&r);
        let brute = oracle::min_cover_by_combinations(&r, &all, 8);
        let got = sigma(&r, &Limits::default()).unwrap().sigma;
        match brute {
            Some(k) => assert_eq!(got, Sigma::Finite(k), "{name}"),
            None => assert_eq!(got, Sigma::NotCoverable, "{name}"),
        }
        assert_eq!(got != Sigma::NotCoverable, is_coverable(&r), "{name}");
    }
}

#[test]
fn constructed_rings_satisfy_ring_axioms() {
    let mut rings = small_rings();
    for s in ["Nil2(3)", "T(2, GF(3))", "MT()", "Op(MT())", "GF(27)", "GF(32)", "Z(2) x M(2, GF(2))", "P(3,3)"] {
        rings.push((s, eval_str(s).unwrap()));
    }
    for (name, r) in rings.into_iter().filter(|(_, r)| r.order() <= 64) {
        assert!(oracle::associative_on_all_triples(&r), "{name}");
        assert!(oracle::unital_and_distributive(&r), "{name}");
    }
}

#[test]
fn unit_counts() {
    for q in [2u64, 3, 4, 8, 9, 16, 27, 32] {
        assert_eq!(gf(q).unwrap().units().len() as u64, q - 1);
    }
    for (p, n) in [(2u64, 1usize), (2, 2), (2, 3), (3, 2), (3, 3), (5, 2)] {
        let expect = p.pow(n as u32 - 1) * (p - 1);
        assert_eq!(trunc_poly(p, n).unwrap().units().len() as u64, expect);
    }
    // GL_2(F_2) and GL_2(F_3)
    assert_eq!(matrix_ring(2, &gf(2).unwrap()).unwrap().units().len(), 6);
    assert_eq!(matrix_ring(2, &gf(3).unwrap()).unwrap().units().len(), 48);
}
