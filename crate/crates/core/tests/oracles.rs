mod common;

use common::*;
use proptest::prelude::*;
use qshadow::coloring::{count_colorings, count_shadow_colorings};
use qshadow::diagram::{standard, LinkDiagram};
use qshadow::homology::{homology, rack_boundary_matrix, Coefficients, Theory};
use qshadow::quandle::FiniteRack;
use qshadow::verify::{fixture_diagrams, fixture_dir, load_move_pairs};

fn q(spec: &str) -> FiniteRack {
    FiniteRack::from_spec(spec).unwrap()
}

#[test]
fn pinned_coloring_counts_match_brute_force() {
    let cases = [
        (standard::trefoil(), "dihedral:3", 9),
        (standard::figure_eight(), "dihedral:3", 3),
        (standard::figure_eight(), "dihedral:5", 25),
    ];
    for (d, spec, expected) in cases {
        let x = q(spec);
        assert_eq!(brute_colorings(&d.to_pd(), &x), expected, "oracle {spec}");
        assert_eq!(count_colorings(&d, &x), expected, "library {spec}");
    }
    for spec in ["dihedral:3", "dihedral:7", "trivial:4", "alexander:5:2"] {
        let x = q(spec);
        assert_eq!(count_colorings(&standard::unknot(), &x), x.size() as u64);
        assert_eq!(brute_colorings("PD[]", &x), x.size() as u64);
    }
}

#[test]
fn fixture_diagrams_agree_with_brute_force() {
    let quandles = [
        "dihedral:3",
        "dihedral:4",
        "alexander-poly:2:1,1",
        "alexander:5:2",
        "cyclic:3",
    ];
    for (name, d) in fixture_diagrams() {
        if d.arc_count() > 6 {
            continue;
        }
        for spec in quandles {
            let x = q(spec);
            assert_eq!(
                count_colorings(&d, &x),
                brute_colorings(&d.to_pd(), &x),
                "{name} {spec}"
            );
        }
    }
}

#[test]
fn move_fixtures_agree_with_brute_force() {
    let x = q("alexander-poly:2:1,1");
    for kind in ["r1", "r2", "r3"] {
        for pair in load_move_pairs(&fixture_dir(), kind).unwrap() {
            for d in [&pair.a, &pair.b] {
                assert_eq!(
                    count_colorings(d, &x),
                    brute_colorings(&d.to_pd(), &x),
                    "{}",
                    pair.name
                );
            }
        }
    }
}

#[test]
fn s4_fixture_file_is_the_alexander_quandle() {
    let text = std::fs::read_to_string(fixture_dir().join("quandles/s4.json")).unwrap();
    let s4 = FiniteRack::from_json(&text).unwrap();
    assert_eq!(s4.rows(), q("alexander-poly:2:1,1").rows());
}

#[test]
fn boundary_matrices_match_the_definition() {
    for spec in [
        "dihedral:3",
        "dihedral:4",
        "cyclic:3",
        "alexander-poly:2:1,1",
    ] {
        let x = q(spec);
        for n in 1..=4 {
            let lib = rack_boundary_matrix(&x, n).unwrap().to_dense();
            assert_eq!(lib, oracle_boundary(&x, n, false), "{spec} n={n}");
        }
    }
}

#[test]
fn boundary_squares_to_zero_in_oracle() {
    let x = q("alexander:5:2");
    for quandle in [false, true] {
        let a = oracle_boundary(&x, 2, quandle);
        let b = oracle_boundary(&x, 3, quandle);
        for row in &a {
            for j in 0..b[0].len() {
                let v: i64 = row.iter().zip(&b).map(|(u, r)| u * r[j]).sum();
                assert_eq!(v, 0);
            }
        }
    }
}

/// `dim H_k(C (x) F_p) = free + t_p(H_k) + t_p(H_{k-1})` by universal
/// coefficients, so free ranks and p-torsion counts are both pinned.
fn check_against_oracle(spec: &str, theory: Theory, top: usize) {
    let x = q(spec);
    let quandle = theory == Theory::Quandle;
    let groups: Vec<_> = (0..=top)
        .map(|k| homology(&x, theory, k, Coefficients::Integers).unwrap())
        .collect();
    for k in 0..=top {
        assert_eq!(
            groups[k].free_rank,
            betti(&x, k, quandle, None),
            "{spec} {theory} H_{k} over Q"
        );
        for p in [2u64, 3, 5] {
            let tp = |g: &qshadow::homology::HomologyGroup| g.p_rank(p) - g.free_rank;
            let below = if k > 0 { tp(&groups[k - 1]) } else { 0 };
            assert_eq!(
                groups[k].p_rank(p) + below,
                betti(&x, k, quandle, Some(p as i64)),
                "{spec} {theory} H_{k} mod {p}"
            );
        }
    }
}

#[test]
fn homology_agrees_with_rank_oracle() {
    for spec in [
        "dihedral:3",
        "trivial:2",
        "trivial:3",
        "alexander-poly:2:1,1",
        "dihedral:4",
    ] {
        check_against_oracle(spec, Theory::Rack, 3);
        check_against_oracle(spec, Theory::Quandle, 3);
    }
    check_against_oracle("dihedral:5", Theory::Quandle, 2);
    check_against_oracle("cyclic:3", Theory::Rack, 3);
}

#[test]
fn pinned_homology() {
    let h = |spec, t, n| {
        homology(&q(spec), t, n, Coefficients::Integers)
            .unwrap()
            .to_string()
    };
    assert_eq!(h("dihedral:3", Theory::Rack, 1), "Z");
    assert_eq!(h("trivial:3", Theory::Rack, 1), "Z^3");
    assert_eq!(h("dihedral:3", Theory::Quandle, 2), "0");
    assert_eq!(h("dihedral:3", Theory::Quandle, 3), "Z/3");
    // the same answers from the oracle: no free part, 3-torsion only
    let x = q("dihedral:3");
    assert_eq!(betti(&x, 3, true, None), 0);
    assert_eq!(betti(&x, 3, true, Some(3)), 1);
    assert_eq!(betti(&x, 3, true, Some(2)), 0);
}

fn braid_word() -> impl Strategy<Value = (usize, Vec<i32>)> {
    (2usize..=3).prop_flat_map(|s| {
        let gen = (1..s as i32).prop_flat_map(|g| prop_oneof![Just(g), Just(-g)]);
        (Just(s), prop::collection::vec(gen, 1..=6))
    })
}

fn closure(strands: usize, word: &[i32]) -> Option<(String, LinkDiagram)> {
    let pd = braid_closure_pd(strands, word);
    // closures with a strand no generator touches are split off and skipped
    let touched = (1..strands).all(|k| word.iter().any(|g| g.unsigned_abs() as usize == k));
    // a one-edge over-loop leaves the orientation undetermined by the PD code alone
    let loops = pd_quads(&pd).iter().any(|q| q[1] == q[3]);
    if !touched || loops {
        return None;
    }
    LinkDiagram::parse_pd(&pd).ok().map(|d| (pd, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn random_closures_match_brute_force((s, w) in braid_word()) {
        if let Some((pd, d)) = closure(s, &w) {
            for spec in ["dihedral:3", "alexander-poly:2:1,1"] {
                let x = q(spec);
                let col = count_colorings(&d, &x);
                prop_assert_eq!(col, brute_colorings(&pd, &x));
                prop_assert_eq!(count_shadow_colorings(&d, &x).unwrap(), x.size() as u64 * col);
            }
        }
    }

    #[test]
    fn braid_relation_preserves_counts(pre in prop::collection::vec(prop_oneof![Just(1), Just(-1), Just(2), Just(-2)], 0..3)) {
        let x = q("alexander-poly:2:1,1");
        let mut a = pre.clone();
        a.extend([1, 2, 1]);
        let mut b = pre;
        b.extend([2, 1, 2]);
        let da = LinkDiagram::parse_pd(&braid_closure_pd(3, &a)).unwrap();
        let db = LinkDiagram::parse_pd(&braid_closure_pd(3, &b)).unwrap();
        prop_assert_eq!(count_colorings(&da, &x), count_colorings(&db, &x));
    }
}
