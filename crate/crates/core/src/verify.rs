//! Fixture sets and the check suites driven by `qshadow verify`.

use std::collections::BTreeMap;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::cocycle::{
    find_cocycles, shadow_statesum_3cocycle, statesum_2cocycle, verify_connected_sum, Cocycle,
    CocycleError, ShadowClassifier, StateSumResult,
};
use crate::coloring::{count_colorings, count_shadow_colorings};
use crate::diagram::{standard, LinkDiagram, Side, Sign};
use crate::homology::{homology, Coefficients, Theory};
use crate::quandle::{inner_orbits, is_connected, FiniteRack};
use crate::spaces::{
    build_extended_rack_space_cells, build_rack_space_cells, extended_quandle_census,
    quandle_graph, rack_graph, space_homology, Space,
};

/// Environment variable overriding the fixture directory.
pub const FIXTURE_ENV: &str = "QSHADOW_FIXTURES";

#[derive(Debug, Error)]
pub enum VerifyError {
    #[error("unknown suite {0:?} (expected prop23, scol-identity, moves, consum or spaces)")]
    UnknownSuite(String),
    #[error("{path}: {message}")]
    Fixture { path: PathBuf, message: String },
}

pub fn fixture_dir() -> PathBuf {
    match std::env::var_os(FIXTURE_ENV) {
        Some(p) => PathBuf::from(p),
        None => Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures"),
    }
}

/// Quandles (and one rack) used across the suites.
pub fn fixture_quandles() -> Vec<(&'static str, FiniteRack)> {
    [
        "dihedral:3",
        "dihedral:4",
        "dihedral:5",
        "dihedral:6",
        "trivial:2",
        "trivial:3",
        "alexander-poly:2:1,1",
        "alexander:5:2",
    ]
    .into_iter()
    .map(|s| (s, FiniteRack::from_spec(s).expect("fixture spec")))
    .collect()
}

pub fn fixture_diagrams() -> Vec<(&'static str, LinkDiagram)> {
    let t = standard::trefoil();
    vec![
        ("unknot", standard::unknot()),
        ("trefoil", t.clone()),
        ("trefoil-mirror", t.mirror()),
        ("figure-eight", standard::figure_eight()),
        ("hopf", standard::hopf()),
        ("granny", t.connected_sum_auto(&t).expect("knots")),
        ("square", t.connected_sum_auto(&t.mirror()).expect("knots")),
    ]
}

/// A pair of diagrams related by one Reidemeister move.
#[derive(Debug, Clone)]
pub struct MovePair {
    pub name: String,
    pub a: LinkDiagram,
    pub b: LinkDiagram,
}

/// Reads `<dir>/moves/<kind>/*_a.pd` with their `*_b.pd` partners.
pub fn load_move_pairs(dir: &Path, kind: &str) -> Result<Vec<MovePair>, VerifyError> {
    let root = dir.join("moves").join(kind);
    let err = |path: &Path, message: String| VerifyError::Fixture {
        path: path.to_path_buf(),
        message,
    };
    let mut names: Vec<String> = fs::read_dir(&root)
        .map_err(|e| err(&root, e.to_string()))?
        .filter_map(|e| e.ok())
        .filter_map(|e| {
            e.file_name()
                .to_str()
                .and_then(|n| n.strip_suffix("_a.pd"))
                .map(String::from)
        })
        .collect();
    names.sort();
    let load = |path: PathBuf| -> Result<LinkDiagram, VerifyError> {
        let text = fs::read_to_string(&path).map_err(|e| err(&path, e.to_string()))?;
        LinkDiagram::parse_pd(&text).map_err(|e| err(&path, e.to_string()))
    };
    names
        .into_iter()
        .map(|n| {
            Ok(MovePair {
                a: load(root.join(format!("{n}_a.pd")))?,
                b: load(root.join(format!("{n}_b.pd")))?,
                name: format!("{kind}/{n}"),
            })
        })
        .collect()
}

/// Every kink insertion: each arc, both signs, both sides.
pub fn r1_rewrites(d: &LinkDiagram) -> Vec<(String, LinkDiagram)> {
    let mut out = Vec::new();
    for arc in 0..d.arc_count().max(1) {
        for sign in [Sign::Positive, Sign::Negative] {
            for side in [Side::Left, Side::Right] {
                if let Ok(k) = d.reidemeister1_insert(arc, sign, side) {
                    out.push((format!("R1(arc {arc}, {sign:?}, {side:?})"), k));
                }
            }
        }
    }
    out
}

/// Every R2 insertion across a region: ordered pairs of boundary sides of
/// the same region.
pub fn r2_rewrites(d: &LinkDiagram) -> Vec<(String, LinkDiagram)> {
    let mut out = Vec::new();
    for (f, region) in d.regions().iter().enumerate() {
        for &(e1, s1) in &region.boundary {
            for &(e2, s2) in &region.boundary {
                if e1 == e2 && s1 != s2 {
                    continue;
                }
                if let Ok(k) = d.reidemeister2_at(e1, s1, e2, s2) {
                    out.push((
                        format!("R2(region {f}, over {e1}{s1:?}, under {e2}{s2:?})"),
                        k,
                    ));
                }
            }
        }
    }
    out
}

/// Everything a move must preserve, for one quandle and fixed cocycles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantSnapshot {
    pub colorings: u64,
    pub shadow_colorings: u64,
    pub classes: BTreeMap<Vec<BigInt>, u64>,
    pub statesums2: Vec<StateSumResult>,
    pub statesums3: Vec<StateSumResult>,
}

/// A quandle with the data needed to snapshot invariants of many diagrams.
pub struct InvariantProbe {
    pub x: FiniteRack,
    classifier: ShadowClassifier,
    phis: Vec<Cocycle>,
    thetas: Vec<Cocycle>,
}

impl InvariantProbe {
    /// Uses up to two cocycles per degree, non-coboundaries first.
    pub fn new(x: &FiniteRack, m: u64) -> Result<Self, CocycleError> {
        let pick = |degree| -> Result<Vec<Cocycle>, CocycleError> {
            let s = find_cocycles(x, degree, m)?;
            let mut v: Vec<(bool, Cocycle)> = s
                .cocycles
                .into_iter()
                .zip(s.coboundary)
                .map(|(c, b)| (b, c))
                .filter(|(_, c)| !c.is_zero())
                .collect();
            v.sort_by_key(|(b, _)| *b);
            Ok(v.into_iter().take(2).map(|(_, c)| c).collect())
        };
        Ok(InvariantProbe {
            x: x.clone(),
            classifier: ShadowClassifier::new(x)?,
            phis: pick(2)?,
            thetas: pick(3)?,
        })
    }

    pub fn snapshot(&self, d: &LinkDiagram) -> Result<InvariantSnapshot, CocycleError> {
        Ok(InvariantSnapshot {
            colorings: count_colorings(d, &self.x),
            shadow_colorings: count_shadow_colorings(d, &self.x)?,
            classes: self.classifier.multiset(d)?,
            statesums2: self
                .phis
                .iter()
                .map(|p| statesum_2cocycle(d, &self.x, p))
                .collect::<Result<_, _>>()?,
            statesums3: self
                .thetas
                .iter()
                .map(|t| shadow_statesum_3cocycle(d, &self.x, t))
                .collect::<Result<_, _>>()?,
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Prop23,
    ScolIdentity,
    Moves,
    Consum,
    Spaces,
}

impl FromStr for Suite {
    type Err = VerifyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "prop23" => Ok(Suite::Prop23),
            "scol-identity" => Ok(Suite::ScolIdentity),
            "moves" => Ok(Suite::Moves),
            "consum" => Ok(Suite::Consum),
            "spaces" => Ok(Suite::Spaces),
            _ => Err(VerifyError::UnknownSuite(s.to_string())),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Suite::Prop23 => "prop23",
            Suite::ScolIdentity => "scol-identity",
            Suite::Moves => "moves",
            Suite::Consum => "consum",
            Suite::Spaces => "spaces",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CaseResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: Vec<CaseResult>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            cases: Vec::new(),
        }
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.cases.push(CaseResult {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    fn push_result(&mut self, name: impl Into<String>, r: Result<(bool, String), String>) {
        match r {
            Ok((ok, detail)) => self.push(name, ok, detail),
            Err(e) => self.push(name, false, format!("error: {e}")),
        }
    }

    pub fn passed(&self) -> bool {
        self.cases.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> usize {
        self.cases.iter().filter(|c| !c.passed).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.cases {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(f, "{tag} {}: {}", c.name, c.detail)?;
        }
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(
            f,
            "{} {}: {}/{} cases passed",
            verdict,
            self.suite,
            self.cases.len() - self.failures(),
            self.cases.len()
        )
    }
}

/// Options for [`run_suite`].
#[derive(Debug, Clone)]
pub struct SuiteOptions {
    pub fixtures: PathBuf,
    pub seed: u64,
    /// Programmatic R2 rewrites sampled per diagram; `None` runs them all.
    pub r2_sample: Option<usize>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            fixtures: fixture_dir(),
            seed: 0,
            r2_sample: Some(8),
        }
    }
}

pub fn run_suite(suite: Suite, opts: &SuiteOptions) -> Result<SuiteReport, VerifyError> {
    match suite {
        Suite::Prop23 => Ok(prop23()),
        Suite::ScolIdentity => Ok(scol_identity()),
        Suite::Moves => moves(opts),
        Suite::Consum => Ok(consum()),
        Suite::Spaces => Ok(spaces()),
    }
}

fn prop23() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Prop23);
    let mut items = fixture_quandles();
    items.push(("cyclic:3", FiniteRack::cyclic(3).expect("cyclic")));
    for (name, x) in items {
        let r = (|| -> Result<(bool, String), String> {
            let orbits = inner_orbits(&x).blocks.len();
            let rg = rack_graph(&x);
            let weak = rg.component_count();
            let strong = rg.strong_component_count();
            let h0 = space_homology(&x, Space::ExtendedRack, 0, Coefficients::Integers)
                .map_err(|e| e.to_string())?;
            let h1r =
                homology(&x, Theory::Rack, 1, Coefficients::Integers).map_err(|e| e.to_string())?;
            let mut ranks = vec![orbits, weak, strong, h0.free_rank, h1r.free_rank];
            let mut detail = format!(
                "orbits={orbits} rack_graph={weak} strong={strong} H0(ext)={h0} H1^R={h1r}"
            );
            if x.is_quandle() {
                let qg = quandle_graph(&x).component_count();
                let h1q = homology(&x, Theory::Quandle, 1, Coefficients::Integers)
                    .map_err(|e| e.to_string())?;
                ranks.extend([qg, h1q.free_rank]);
                detail.push_str(&format!(" quandle_graph={qg} H1^Q={h1q}"));
            }
            let connected = is_connected(&x);
            let ok = ranks.iter().all(|&r| r == orbits) && connected == (orbits == 1);
            detail.push_str(&format!(" connected={connected}"));
            Ok((ok, detail))
        })();
        report.push_result(name, r);
    }
    report
}

fn scol_identity() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::ScolIdentity);
    for (dn, d) in fixture_diagrams() {
        for (xn, x) in fixture_quandles() {
            let col = count_colorings(&d, &x);
            let r = count_shadow_colorings(&d, &x)
                .map(|s| {
                    (
                        s == x.size() as u64 * col,
                        format!("|SCol|={s} |X||Col|={}", x.size() as u64 * col),
                    )
                })
                .map_err(|e| e.to_string());
            report.push_result(format!("{dn} / {xn}"), r);
        }
    }
    report
}

fn compare(
    probe: &InvariantProbe,
    a: &InvariantSnapshot,
    d: &LinkDiagram,
) -> Result<(bool, String), String> {
    let b = probe.snapshot(d).map_err(|e| e.to_string())?;
    let detail = format!(
        "{} crossings, Col={} SCol={} classes={}",
        d.crossing_count(),
        b.colorings,
        b.shadow_colorings,
        b.classes.len()
    );
    Ok((*a == b, detail))
}

fn moves(opts: &SuiteOptions) -> Result<SuiteReport, VerifyError> {
    let mut report = SuiteReport::new(Suite::Moves);
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let probes: Vec<(&str, InvariantProbe)> = [("dihedral:3", 3), ("alexander-poly:2:1,1", 2)]
        .into_iter()
        .map(|(s, m)| {
            (
                s,
                InvariantProbe::new(&FiniteRack::from_spec(s).expect("fixture"), m).expect("probe"),
            )
        })
        .collect();
    let bases = [
        ("unknot", standard::unknot()),
        ("trefoil", standard::trefoil()),
        ("figure-eight", standard::figure_eight()),
        ("hopf", standard::hopf()),
    ];
    for (dn, d) in &bases {
        let mut rewrites = r1_rewrites(d);
        let mut r2 = r2_rewrites(d);
        if let Some(k) = opts.r2_sample {
            r2.shuffle(&mut rng);
            r2.truncate(k);
        }
        rewrites.extend(r2);
        for (xn, probe) in &probes {
            let base = match probe.snapshot(d) {
                Ok(s) => s,
                Err(e) => {
                    report.push(format!("{dn} / {xn}"), false, format!("error: {e}"));
                    continue;
                }
            };
            for (mv, k) in &rewrites {
                report.push_result(format!("{dn} {mv} / {xn}"), compare(probe, &base, k));
            }
        }
    }
    for kind in ["r1", "r2", "r3"] {
        for pair in load_move_pairs(&opts.fixtures, kind)? {
            for (xn, probe) in &probes {
                let r = probe
                    .snapshot(&pair.a)
                    .map_err(|e| e.to_string())
                    .and_then(|a| compare(probe, &a, &pair.b));
                report.push_result(format!("{} / {xn}", pair.name), r);
            }
        }
    }
    Ok(report)
}

fn consum() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Consum);
    let t = standard::trefoil();
    let cases = [
        ("dihedral:3", 3, "trefoil # trefoil", t.clone(), t.clone()),
        (
            "dihedral:3",
            3,
            "unknot # trefoil",
            standard::unknot(),
            t.clone(),
        ),
        (
            "dihedral:3",
            3,
            "trefoil # figure-eight",
            t.clone(),
            standard::figure_eight(),
        ),
        (
            "alexander-poly:2:1,1",
            2,
            "trefoil # figure-eight",
            t.clone(),
            standard::figure_eight(),
        ),
        (
            "alexander-poly:2:1,1",
            2,
            "trefoil # trefoil-mirror",
            t.clone(),
            t.mirror(),
        ),
        (
            "dihedral:5",
            5,
            "figure-eight # figure-eight",
            standard::figure_eight(),
            standard::figure_eight(),
        ),
    ];
    for (spec, m, name, d1, d2) in cases {
        let x = FiniteRack::from_spec(spec).expect("fixture");
        let r = find_cocycles(&x, 2, m)
            .and_then(|s| verify_connected_sum(&x, &d1, &d2, &s.cocycles))
            .map(|rep| {
                let detail = format!(
                    "{} crossings, |X||Col|={} vs {}, |X|^2|SCol|={} vs {}, {} state-sum identities",
                    rep.sum_crossings,
                    rep.colorings.lhs,
                    rep.colorings.rhs,
                    rep.shadow_colorings.lhs,
                    rep.shadow_colorings.rhs,
                    rep.statesums.len()
                );
                (rep.passed(), detail)
            })
            .map_err(|e| e.to_string());
        report.push_result(format!("{spec}: {name}"), r);
    }
    for spec in ["trivial:2", "dihedral:4"] {
        let x = FiniteRack::from_spec(spec).expect("fixture");
        match verify_connected_sum(&x, &t, &t, &[]) {
            Err(CocycleError::Hypothesis(h)) => report.push(
                format!("{spec}: refusal"),
                true,
                format!("refused, not {h}"),
            ),
            Ok(_) => report.push(
                format!("{spec}: refusal"),
                false,
                "hypotheses fail but the check ran",
            ),
            Err(e) => report.push(format!("{spec}: refusal"), false, format!("error: {e}")),
        }
    }
    report
}

fn spaces() -> SuiteReport {
    let mut report = SuiteReport::new(Suite::Spaces);
    for (name, x) in fixture_quandles() {
        let n = x.size();
        let r = (|| -> Result<(bool, String), String> {
            build_rack_space_cells(&x, 3).map_err(|e| e.to_string())?;
            build_extended_rack_space_cells(&x, 3).map_err(|e| e.to_string())?;
            let census = extended_quandle_census(&x).map_err(|e| e.to_string())?;
            let expected = [n, n * n, n.pow(3) + n, n.pow(4) + 2 * n * n - n];
            let mut ok = census.totals() == expected;
            let mut detail = format!("census {:?}", census.totals());
            for i in 1..=2 {
                let z = Coefficients::Integers;
                let er =
                    space_homology(&x, Space::ExtendedRack, i - 1, z).map_err(|e| e.to_string())?;
                let eq = space_homology(&x, Space::ExtendedQuandle, i - 1, z)
                    .map_err(|e| e.to_string())?;
                let hr = homology(&x, Theory::Rack, i, z).map_err(|e| e.to_string())?;
                let hq = homology(&x, Theory::Quandle, i, z).map_err(|e| e.to_string())?;
                ok &= er == hr && eq == hq;
                detail.push_str(&format!(
                    "; H{}(ext)={er} H{i}^R={hr} H{}(extQ)={eq} H{i}^Q={hq}",
                    i - 1,
                    i - 1
                ));
            }
            Ok((ok, detail))
        })();
        report.push_result(name, r);
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_round_trip() {
        for s in ["prop23", "scol-identity", "moves", "consum", "spaces"] {
            assert_eq!(s.parse::<Suite>().unwrap().to_string(), s);
        }
        assert!("nope".parse::<Suite>().is_err());
    }

    #[test]
    fn shipped_pairs_load() {
        for kind in ["r1", "r2", "r3"] {
            let pairs = load_move_pairs(&fixture_dir(), kind).unwrap();
            assert!(!pairs.is_empty());
            if kind == "r3" {
                for p in &pairs {
                    assert_eq!(p.a.crossing_count(), p.b.crossing_count(), "{}", p.name);
                }
            }
        }
    }

    #[test]
    fn rewrites_exist() {
        let t = standard::trefoil();
        assert_eq!(r1_rewrites(&t).len(), 12);
        assert!(!r2_rewrites(&t).is_empty());
        assert_eq!(r1_rewrites(&standard::unknot()).len(), 4);
    }
}
