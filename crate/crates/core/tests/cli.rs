use std::process::{Command, Output};

fn qshadow(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qshadow"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn exit_codes() {
    assert_eq!(qshadow(&["info", "dihedral:3"]).status.code(), Some(0));
    assert_eq!(qshadow(&["info", "cyclic:2"]).status.code(), Some(0));
    assert_eq!(qshadow(&["info", "not_a_rack"]).status.code(), Some(1));
    assert_eq!(qshadow(&["info", "dihedral:"]).status.code(), Some(2));
    assert_eq!(qshadow(&["info", "no-such-file"]).status.code(), Some(2));
    assert_eq!(
        qshadow(&["color", "trefoil", "dihedral:3", "--frobnicate"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(
        qshadow(&["homology", "dihedral:3", "X", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(
        qshadow(&["homology", "cyclic:2", "Q", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(qshadow(&["verify", "nope"]).status.code(), Some(2));
    assert_eq!(qshadow(&["verify", "prop23"]).status.code(), Some(0));
}

#[test]
fn info_report() {
    let out = stdout(&qshadow(&["info", "cyclic:2"]));
    assert!(out.contains("(3) idempotency: FAIL at (0)"), "{out}");
    assert!(out.contains("rack, not a quandle"));
    let out = stdout(&qshadow(&["info", "s4"]));
    assert!(
        out.contains("connected: true") && out.contains("faithful: true"),
        "{out}"
    );
}

#[test]
fn documented_examples() {
    let cases: &[(&[&str], &str)] = &[
        (
            &["homology", "dihedral:3", "Q", "2", "Z"],
            "H_2^Q(X; Z) = 0\n",
        ),
        (
            &["homology", "trivial:3", "R", "1", "Z"],
            "H_1^R(X; Z) = Z^3\n",
        ),
        (
            &["homology", "dihedral:3", "Q", "3", "Z"],
            "H_3^Q(X; Z) = Z/3\n",
        ),
        (&["color", "trefoil", "dihedral:3"], "colorings: 9\n"),
        (
            &["color", "trefoil", "dihedral:3", "--shadow"],
            "shadow colorings: 27\n",
        ),
        (&["color", "unknot", "alexander:5:2"], "colorings: 5\n"),
        (&["graph", "dihedral:4"], "components: 2\n"),
        (&["graph", "trivial:3"], "components: 3\n"),
    ];
    for (args, expected) in cases {
        assert_eq!(stdout(&qshadow(args)), *expected, "{args:?}");
    }
}

#[test]
fn statesums() {
    let zero = stdout(&qshadow(&[
        "--format",
        "json",
        "statesum",
        "trefoil",
        "dihedral:3",
        "--degree",
        "2",
        "--mod",
        "3",
        "--cocycle",
        "zero",
    ]));
    let v: serde_json::Value = serde_json::from_str(&zero).unwrap();
    assert_eq!(v["statesum"]["pairs"], serde_json::json!([[0, 9]]));

    let run = |d: &str| {
        let o = qshadow(&[
            "statesum",
            d,
            "s4",
            "--degree",
            "2",
            "--mod",
            "2",
            "--pullback",
        ]);
        assert_eq!(o.status.code(), Some(0));
        stdout(&o)
    };
    let trefoil = run("trefoil");
    let unknot = run("unknot");
    assert!(
        trefoil.contains("equals |X| times the state-sum: true"),
        "{trefoil}"
    );
    let first = |s: &str| s.lines().next().unwrap().to_string();
    assert_ne!(first(&trefoil), first(&unknot));
}

#[test]
fn deterministic_output() {
    for args in [
        &[
            "--format",
            "json",
            "homology",
            "dihedral:3",
            "Q",
            "2",
            "Z3",
            "--cocycles",
        ][..],
        &["graph", "dihedral:3", "--dot"],
        &["--format", "json", "census", "dihedral:3"],
        &["verify", "moves", "--seed", "7"],
        &[
            "color",
            "figure-eight",
            "dihedral:5",
            "--shadow",
            "--list",
            "--cycles",
        ],
    ] {
        let a = qshadow(args);
        let b = qshadow(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
        assert_eq!(a.status.code(), Some(0), "{args:?}");
    }
}

#[test]
fn dot_is_stable() {
    let out = stdout(&qshadow(&["graph", "trivial:1", "--dot"]));
    assert_eq!(
        out,
        "digraph rack_graph {\n  0;\n  0 -> 0 [label=\"(0,0)\"];\n}\ncomponents: 1\n"
    );
}
