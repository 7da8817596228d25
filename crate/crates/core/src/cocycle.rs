//! Quandle cocycles over `Z/m` and the state-sum images of the coloring
//! invariants they pair with.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::coloring::{
    enumerate_colorings, enumerate_shadow_colorings, fundamental_cycle, ColoringError,
    ShadowColoring,
};
use crate::diagram::{DiagramError, LinkDiagram};
use crate::homology::{
    all_tuples, build_complex, is_degenerate, rack_boundary_terms, ChainComplex, Coefficients,
    CycleClassifier, HomologyError, HomologyGroup, Theory,
};
use crate::quandle::{is_connected, is_faithful, FiniteRack};

#[derive(Debug, Error)]
pub enum CocycleError {
    #[error("cocycle degree must be 2 or 3, got {0}")]
    BadDegree(usize),
    #[error("modulus must be at least 2, got {0}")]
    BadModulus(u64),
    #[error("cocycle is for a quandle of size {found}, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("entry {0:?} is not a tuple of the right length over the quandle")]
    BadEntry(Vec<usize>),
    #[error("quandle cocycles vanish on degenerate tuples, {0:?} has a nonzero value")]
    DegenerateValue(Vec<usize>),
    #[error("not a cocycle: coboundary is nonzero on {0:?}")]
    NotACocycle(Vec<usize>),
    #[error("expected a degree-{expected} cocycle, got degree {found}")]
    WrongDegree { expected: usize, found: usize },
    #[error("hypothesis fails: quandle is not {0}")]
    Hypothesis(&'static str),
    #[error("cocycle JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Homology(#[from] HomologyError),
    #[error(transparent)]
    Coloring(#[from] ColoringError),
    #[error(transparent)]
    Diagram(#[from] DiagramError),
}

/// A cochain `X^n -> Z/m`, stored densely on all of `X^n`. Quandle cochains
/// vanish on degenerate tuples; rack cochains (such as pullbacks) need not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cocycle {
    theory: Theory,
    size: usize,
    degree: usize,
    modulus: u64,
    values: Vec<u64>,
}

#[derive(Serialize, Deserialize)]
struct CocycleJson {
    degree: usize,
    m: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    size: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    theory: Option<String>,
    entries: Vec<Vec<u64>>,
}

fn encode(size: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &a| acc * size + a)
}

impl Cocycle {
    pub fn zero(size: usize, degree: usize, modulus: u64) -> Result<Self, CocycleError> {
        Self::with_theory(Theory::Quandle, size, degree, modulus)
    }

    fn with_theory(
        theory: Theory,
        size: usize,
        degree: usize,
        modulus: u64,
    ) -> Result<Self, CocycleError> {
        if modulus < 2 {
            return Err(CocycleError::BadModulus(modulus));
        }
        let len = size.checked_pow(degree as u32).expect("cochain too large");
        Ok(Cocycle {
            theory,
            size,
            degree,
            modulus,
            values: vec![0; len],
        })
    }

    /// Quandle cochain from `(tuple, value)` pairs; unlisted tuples are zero.
    pub fn from_entries<I>(
        size: usize,
        degree: usize,
        modulus: u64,
        entries: I,
    ) -> Result<Self, CocycleError>
    where
        I: IntoIterator<Item = (Vec<usize>, u64)>,
    {
        let mut c = Self::zero(size, degree, modulus)?;
        for (t, v) in entries {
            if t.len() != degree || t.iter().any(|&a| a >= size) {
                return Err(CocycleError::BadEntry(t));
            }
            let v = v % modulus;
            if v != 0 && is_degenerate(&t) {
                return Err(CocycleError::DegenerateValue(t));
            }
            c.values[encode(size, &t)] = v;
        }
        Ok(c)
    }

    /// From values listed along a basis of nondegenerate tuples.
    pub fn from_basis_values(
        size: usize,
        degree: usize,
        modulus: u64,
        basis: &[Vec<usize>],
        values: &[i64],
    ) -> Result<Self, CocycleError> {
        let m = modulus as i64;
        Self::from_entries(
            size,
            degree,
            modulus,
            basis
                .iter()
                .cloned()
                .zip(values.iter().map(|v| v.rem_euclid(m) as u64)),
        )
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn value(&self, t: &[usize]) -> u64 {
        self.values[encode(self.size, t)]
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    /// Nonzero entries in lexicographic tuple order.
    pub fn entries(&self) -> Vec<(Vec<usize>, u64)> {
        all_tuples(self.size, self.degree)
            .into_iter()
            .filter_map(|t| {
                let v = self.value(&t);
                (v != 0).then_some((t, v))
            })
            .collect()
    }

    /// Pointwise sum.
    pub fn add(&self, other: &Cocycle) -> Cocycle {
        assert_eq!(
            (self.size, self.degree, self.modulus),
            (other.size, other.degree, other.modulus)
        );
        let theory = if self.theory == other.theory {
            self.theory
        } else {
            Theory::Rack
        };
        let values = self
            .values
            .iter()
            .zip(&other.values)
            .map(|(a, b)| (a + b) % self.modulus)
            .collect();
        Cocycle {
            theory,
            values,
            ..*self
        }
    }

    pub fn scale(&self, k: u64) -> Cocycle {
        let m = self.modulus;
        let values = self
            .values
            .iter()
            .map(|&v| ((v as u128 * k as u128) % m as u128) as u64)
            .collect();
        Cocycle { values, ..*self }
    }

    /// `θ(r, x, y) = φ(x, y)`. The result is a rack cocycle; it does not
    /// vanish on `(r, r, y)`.
    pub fn pullback(&self) -> Cocycle {
        let mut out = Self::with_theory(Theory::Rack, self.size, self.degree + 1, self.modulus)
            .expect("same modulus");
        for t in all_tuples(self.size, self.degree + 1) {
            out.values[encode(self.size, &t)] = self.value(&t[1..]);
        }
        out
    }

    /// `δf(t) = f(∂t)` on all of `X^{n+1}`.
    pub fn coboundary(&self, x: &FiniteRack) -> Cocycle {
        let m = self.modulus as i64;
        let mut out = Self::with_theory(self.theory, self.size, self.degree + 1, self.modulus)
            .expect("same modulus");
        for t in all_tuples(self.size, self.degree + 1) {
            let s: i64 = rack_boundary_terms(x, &t)
                .iter()
                .map(|(f, c)| c * self.value(f) as i64)
                .sum();
            out.values[encode(self.size, &t)] = s.rem_euclid(m) as u64;
        }
        out
    }

    /// Checks `δf = 0` through the transposed boundary matrix of the
    /// complex matching the cochain's theory.
    pub fn verify(&self, x: &FiniteRack) -> Result<(), CocycleError> {
        if x.size() != self.size {
            return Err(CocycleError::SizeMismatch {
                expected: x.size(),
                found: self.size,
            });
        }
        let complex = build_complex(x, self.theory, self.degree + 1)?;
        let basis = complex.basis(self.degree);
        if self.theory == Theory::Quandle {
            if let Some(t) = all_tuples(self.size, self.degree)
                .into_iter()
                .find(|t| is_degenerate(t) && self.value(t) != 0)
            {
                return Err(CocycleError::DegenerateValue(t));
            }
        }
        let f: Vec<i64> = basis.iter().map(|t| self.value(t) as i64).collect();
        let image = complex.boundary(self.degree + 1).transpose().apply(&f);
        let m = self.modulus as i64;
        if let Some(k) = image.iter().position(|v| v.rem_euclid(m) != 0) {
            return Err(CocycleError::NotACocycle(
                complex.basis(self.degree + 1)[k].clone(),
            ));
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let entries = self
            .entries()
            .into_iter()
            .map(|(t, v)| t.into_iter().map(|a| a as u64).chain([v]).collect())
            .collect();
        let theory = (self.theory != Theory::Quandle).then(|| self.theory.to_string());
        let j = CocycleJson {
            degree: self.degree,
            m: self.modulus,
            size: Some(self.size),
            theory,
            entries,
        };
        serde_json::to_string(&j).expect("serializable")
    }

    /// Reads `{degree, m, entries: [[tuple..., value], ...]}`; `size` is
    /// optional and checked against the quandle when present.
    pub fn from_json(text: &str, x: &FiniteRack) -> Result<Self, CocycleError> {
        let j: CocycleJson =
            serde_json::from_str(text).map_err(|e| CocycleError::Json(e.to_string()))?;
        if let Some(s) = j.size {
            if s != x.size() {
                return Err(CocycleError::SizeMismatch {
                    expected: x.size(),
                    found: s,
                });
            }
        }
        let theory = match j.theory.as_deref() {
            None => Theory::Quandle,
            Some(t) => t.parse()?,
        };
        let mut c = Self::with_theory(theory, x.size(), j.degree, j.m)?;
        for e in j.entries {
            let (v, t) = e
                .split_last()
                .ok_or_else(|| CocycleError::Json("empty entry".into()))?;
            let t: Vec<usize> = t.iter().map(|&a| a as usize).collect();
            if t.len() != j.degree || t.iter().any(|&a| a >= x.size()) {
                return Err(CocycleError::BadEntry(t));
            }
            let v = v % j.m;
            if theory == Theory::Quandle && v != 0 && is_degenerate(&t) {
                return Err(CocycleError::DegenerateValue(t));
            }
            c.values[encode(x.size(), &t)] = v;
        }
        Ok(c)
    }
}

/// Result of a cocycle search: a spanning set of `ker δ` with coboundary
/// flags, and the cohomology group.
#[derive(Debug, Clone)]
pub struct CocycleSearch {
    pub cocycles: Vec<Cocycle>,
    pub coboundary: Vec<bool>,
    pub group: HomologyGroup,
}

impl CocycleSearch {
    pub fn nontrivial(&self) -> impl Iterator<Item = &Cocycle> {
        self.cocycles
            .iter()
            .zip(&self.coboundary)
            .filter(|(_, &b)| !b)
            .map(|(c, _)| c)
    }
}

/// Quandle cocycles of degree 2 or 3 with values in `Z/m`.
pub fn find_cocycles(x: &FiniteRack, degree: usize, m: u64) -> Result<CocycleSearch, CocycleError> {
    if !(2..=3).contains(&degree) {
        return Err(CocycleError::BadDegree(degree));
    }
    if m < 2 {
        return Err(CocycleError::BadModulus(m));
    }
    let complex = build_complex(x, Theory::Quandle, degree + 1)?;
    let h = complex.cohomology(degree, Coefficients::Modular(m))?;
    let cocycles = h
        .cocycles
        .iter()
        .map(|v| Cocycle::from_basis_values(x.size(), degree, m, &h.basis, v))
        .collect::<Result<_, _>>()?;
    Ok(CocycleSearch {
        cocycles,
        coboundary: h.coboundary,
        group: h.group,
    })
}

/// First cocycle of the search that is not a coboundary.
pub fn nontrivial_cocycle(
    x: &FiniteRack,
    degree: usize,
    m: u64,
) -> Result<Option<Cocycle>, CocycleError> {
    Ok(find_cocycles(x, degree, m)?.nontrivial().next().cloned())
}

/// Multiset of weights in `Z/m`, i.e. an element of the group ring `Z[Z/m]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StateSumResult {
    pub modulus: u64,
    pub multiplicities: BTreeMap<u64, u64>,
}

impl StateSumResult {
    pub fn new(modulus: u64) -> Self {
        StateSumResult {
            modulus,
            multiplicities: BTreeMap::new(),
        }
    }

    pub fn from_weights<I: IntoIterator<Item = u64>>(modulus: u64, weights: I) -> Self {
        let mut r = Self::new(modulus);
        for w in weights {
            r.add(w, 1);
        }
        r
    }

    pub fn add(&mut self, weight: u64, count: u64) {
        if count > 0 {
            *self
                .multiplicities
                .entry(weight % self.modulus)
                .or_insert(0) += count;
        }
    }

    pub fn total(&self) -> u64 {
        self.multiplicities.values().sum()
    }

    /// Every multiplicity times `k`.
    pub fn scale(&self, k: u64) -> Self {
        let multiplicities = self
            .multiplicities
            .iter()
            .filter(|_| k > 0)
            .map(|(&w, &c)| (w, c * k))
            .collect();
        StateSumResult {
            modulus: self.modulus,
            multiplicities,
        }
    }

    /// Product in the group ring.
    pub fn convolve(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus, "moduli differ");
        let mut r = Self::new(self.modulus);
        for (&u, &a) in &self.multiplicities {
            for (&v, &b) in &other.multiplicities {
                r.add(u + v, a * b);
            }
        }
        r
    }

    /// Sorted `(weight, multiplicity)` pairs.
    pub fn pairs(&self) -> Vec<(u64, u64)> {
        self.multiplicities.iter().map(|(&w, &c)| (w, c)).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({ "m": self.modulus, "pairs": self.pairs() }).to_string()
    }
}

impl std::fmt::Display for StateSumResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self
            .pairs()
            .iter()
            .map(|(w, c)| format!("{c}*t^{w}"))
            .collect();
        if parts.is_empty() {
            return write!(f, "0");
        }
        write!(f, "{}", parts.join(" + "))
    }
}

fn expect_degree(c: &Cocycle, degree: usize, x: &FiniteRack) -> Result<(), CocycleError> {
    if c.degree != degree {
        return Err(CocycleError::WrongDegree {
            expected: degree,
            found: c.degree,
        });
    }
    if c.size != x.size() {
        return Err(CocycleError::SizeMismatch {
            expected: x.size(),
            found: c.size,
        });
    }
    Ok(())
}

/// Weight `sum_c sign(c) φ(x_c, y_c)` of every coloring, in coloring order.
pub fn coloring_weights(
    d: &LinkDiagram,
    x: &FiniteRack,
    phi: &Cocycle,
) -> Result<Vec<u64>, CocycleError> {
    expect_degree(phi, 2, x)?;
    let m = phi.modulus as i64;
    Ok(enumerate_colorings(d, x)
        .iter()
        .map(|col| {
            let w: i64 = (0..d.crossing_count())
                .map(|c| {
                    let pair = [col.0[d.source_under_arc(c)], col.0[d.over_arc(c)]];
                    d.crossing_sign(c).value() * phi.value(&pair) as i64
                })
                .sum();
            w.rem_euclid(m) as u64
        })
        .collect())
}

pub fn statesum_2cocycle(
    d: &LinkDiagram,
    x: &FiniteRack,
    phi: &Cocycle,
) -> Result<StateSumResult, CocycleError> {
    Ok(StateSumResult::from_weights(
        phi.modulus,
        coloring_weights(d, x, phi)?,
    ))
}

/// Weight `sum_c sign(c) θ(r_c, x_c, y_c)` of every shadow coloring.
pub fn shadow_weights(
    d: &LinkDiagram,
    x: &FiniteRack,
    theta: &Cocycle,
) -> Result<Vec<u64>, CocycleError> {
    expect_degree(theta, 3, x)?;
    let m = theta.modulus as i64;
    Ok(enumerate_shadow_colorings(d, x)?
        .iter()
        .map(|s| {
            let w: i64 = fundamental_cycle(d, s)
                .terms
                .iter()
                .map(|(sign, t)| sign * theta.value(t) as i64)
                .sum();
            w.rem_euclid(m) as u64
        })
        .collect())
}

pub fn shadow_statesum_3cocycle(
    d: &LinkDiagram,
    x: &FiniteRack,
    theta: &Cocycle,
) -> Result<StateSumResult, CocycleError> {
    Ok(StateSumResult::from_weights(
        theta.modulus,
        shadow_weights(d, x, theta)?,
    ))
}

/// Classes in `H_3^Q(X)` of fundamental cycles. Built once per quandle.
pub struct ShadowClassifier {
    x: FiniteRack,
    complex: ChainComplex,
    classifier: CycleClassifier,
}

impl ShadowClassifier {
    pub fn new(x: &FiniteRack) -> Result<Self, CocycleError> {
        let complex = build_complex(x, Theory::Quandle, 4)?;
        let classifier = complex.cycle_classifier(3)?;
        Ok(ShadowClassifier {
            x: x.clone(),
            complex,
            classifier,
        })
    }

    /// Coordinates of the class of one shadow coloring's fundamental cycle.
    pub fn class_of(
        &self,
        d: &LinkDiagram,
        shadow: &ShadowColoring,
    ) -> Result<Vec<BigInt>, CocycleError> {
        let terms = fundamental_cycle(d, shadow).terms;
        let z = self
            .complex
            .chain_from_terms(3, terms.iter().map(|&(c, t)| (t.to_vec(), c)))?;
        Ok(self.classifier.classify(&z)?)
    }

    /// Multiset of classes over all shadow colorings of `d`.
    pub fn multiset(&self, d: &LinkDiagram) -> Result<BTreeMap<Vec<BigInt>, u64>, CocycleError> {
        let mut out = BTreeMap::new();
        for s in enumerate_shadow_colorings(d, &self.x)? {
            *out.entry(self.class_of(d, &s)?).or_insert(0) += 1;
        }
        Ok(out)
    }
}

/// Multiset of homology classes in `H_3^Q(X)` of the fundamental cycles of
/// all shadow colorings, each class given by its coordinates.
pub fn shadow_class_multiset(
    d: &LinkDiagram,
    x: &FiniteRack,
) -> Result<BTreeMap<Vec<BigInt>, u64>, CocycleError> {
    ShadowClassifier::new(x)?.multiset(d)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IdentityCheck {
    pub lhs: String,
    pub rhs: String,
    pub holds: bool,
}

impl IdentityCheck {
    fn new<T: PartialEq + ToString>(lhs: T, rhs: T) -> Self {
        IdentityCheck {
            holds: lhs == rhs,
            lhs: lhs.to_string(),
            rhs: rhs.to_string(),
        }
    }
}

/// Connected-sum identities at the level of counts and cocycle images.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConnectedSumReport {
    pub sum_crossings: usize,
    /// `|X| |Col(K1#K2)| = |Col(K1)| |Col(K2)|`
    pub colorings: IdentityCheck,
    /// `|X|^2 |SCol(K1#K2)| = |SCol(K1)| |SCol(K2)|`
    pub shadow_colorings: IdentityCheck,
    /// `|X| Φ(K1#K2) = Φ(K1) Φ(K2)` in the group ring, one per cocycle.
    pub statesums: Vec<IdentityCheck>,
}

impl ConnectedSumReport {
    pub fn passed(&self) -> bool {
        self.colorings.holds
            && self.shadow_colorings.holds
            && self.statesums.iter().all(|c| c.holds)
    }
}

/// Refuses unless `X` is faithful and connected and both diagrams are knots.
pub fn verify_connected_sum(
    x: &FiniteRack,
    d1: &LinkDiagram,
    d2: &LinkDiagram,
    cocycles: &[Cocycle],
) -> Result<ConnectedSumReport, CocycleError> {
    if !is_faithful(x) {
        return Err(CocycleError::Hypothesis("faithful"));
    }
    if !is_connected(x) {
        return Err(CocycleError::Hypothesis("connected"));
    }
    let sum = d1.connected_sum_auto(d2)?;
    let n = x.size() as u64;
    let count = |d: &LinkDiagram| crate::coloring::count_colorings(d, x);
    let shadow = |d: &LinkDiagram| crate::coloring::count_shadow_colorings(d, x);
    let colorings = IdentityCheck::new(n * count(&sum), count(d1) * count(d2));
    let shadow_colorings = IdentityCheck::new(n * n * shadow(&sum)?, shadow(d1)? * shadow(d2)?);
    let mut statesums = Vec::new();
    for phi in cocycles {
        let lhs = statesum_2cocycle(&sum, x, phi)?.scale(n);
        let rhs = statesum_2cocycle(d1, x, phi)?.convolve(&statesum_2cocycle(d2, x, phi)?);
        statesums.push(IdentityCheck::new(lhs, rhs));
    }
    Ok(ConnectedSumReport {
        sum_crossings: sum.crossing_count(),
        colorings,
        shadow_colorings,
        statesums,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diagram::standard;

    fn s4() -> FiniteRack {
        FiniteRack::alexander_poly(2, &[1, 1]).unwrap()
    }

    #[test]
    fn trivial_quandle_cocycles() {
        let t2 = FiniteRack::trivial(2).unwrap();
        let s = find_cocycles(&t2, 2, 2).unwrap();
        assert_eq!(s.cocycles.len(), 2);
        for c in &s.cocycles {
            c.verify(&t2).unwrap();
            assert_eq!(c.value(&[0, 0]), 0);
        }
    }

    #[test]
    fn dihedral_three() {
        let r3 = FiniteRack::dihedral(3).unwrap();
        assert!(find_cocycles(&r3, 2, 3)
            .unwrap()
            .coboundary
            .iter()
            .all(|&b| b));
        let theta = nontrivial_cocycle(&r3, 3, 3)
            .unwrap()
            .expect("H^3 is nonzero");
        theta.verify(&r3).unwrap();
        assert!(matches!(
            find_cocycles(&r3, 4, 3),
            Err(CocycleError::BadDegree(4))
        ));
    }

    #[test]
    fn zero_cocycle_statesums() {
        let r3 = FiniteRack::dihedral(3).unwrap();
        let t = standard::trefoil();
        let phi = Cocycle::zero(3, 2, 3).unwrap();
        let s = statesum_2cocycle(&t, &r3, &phi).unwrap();
        assert_eq!(s.pairs(), vec![(0, 9)]);
        let theta = Cocycle::zero(3, 3, 3).unwrap();
        assert_eq!(
            shadow_statesum_3cocycle(&t, &r3, &theta).unwrap().pairs(),
            vec![(0, 27)]
        );
    }

    #[test]
    fn pullback_gives_factor_of_size() {
        let x = s4();
        let phi = nontrivial_cocycle(&x, 2, 2)
            .unwrap()
            .expect("H^2(S4; Z/2) is nonzero");
        let theta = phi.pullback();
        theta.verify(&x).unwrap();
        for d in [
            standard::trefoil(),
            standard::figure_eight(),
            standard::unknot(),
        ] {
            let a = shadow_statesum_3cocycle(&d, &x, &theta).unwrap();
            let b = statesum_2cocycle(&d, &x, &phi).unwrap();
            assert_eq!(a, b.scale(4));
        }
    }

    #[test]
    fn trefoil_distinguished_by_four_element_quandle() {
        let x = s4();
        let phi = nontrivial_cocycle(&x, 2, 2).unwrap().unwrap();
        let t = statesum_2cocycle(&standard::trefoil(), &x, &phi).unwrap();
        let u = statesum_2cocycle(&standard::unknot(), &x, &phi).unwrap();
        assert!(t.multiplicities.len() >= 2);
        assert_ne!(t, u);
    }

    #[test]
    fn coboundaries_give_trivial_statesums() {
        let x = s4();
        let psi = Cocycle::from_entries(4, 1, 2, [(vec![1], 1)]).unwrap();
        let phi = psi.coboundary(&x);
        phi.verify(&x).unwrap();
        assert!(!phi.is_zero());
        let s = statesum_2cocycle(&standard::trefoil(), &x, &phi).unwrap();
        assert_eq!(s.pairs(), vec![(0, 16)]);
    }

    #[test]
    fn json_round_trip() {
        let r3 = FiniteRack::dihedral(3).unwrap();
        let theta = nontrivial_cocycle(&r3, 3, 3).unwrap().unwrap();
        let back = Cocycle::from_json(&theta.to_json(), &r3).unwrap();
        assert_eq!(back, theta);
        let bad = r#"{"degree":2,"m":2,"entries":[[0,0,1]]}"#;
        assert!(matches!(
            Cocycle::from_json(bad, &r3),
            Err(CocycleError::DegenerateValue(_))
        ));
        let s = StateSumResult::from_weights(3, [0, 2, 2]);
        assert_eq!(s.to_json(), r#"{"m":3,"pairs":[[0,1],[2,2]]}"#);
    }

    #[test]
    fn convolution() {
        let a = StateSumResult::from_weights(3, [0, 1]);
        let b = StateSumResult::from_weights(3, [2, 2]);
        assert_eq!(a.convolve(&b).pairs(), vec![(0, 2), (2, 2)]);
    }

    #[test]
    fn connected_sum_identities() {
        let r3 = FiniteRack::dihedral(3).unwrap();
        let t = standard::trefoil();
        let r = verify_connected_sum(&r3, &t, &t, &[]).unwrap();
        assert_eq!(r.colorings.lhs, "81");
        assert_eq!(r.shadow_colorings.lhs, (27 * 27).to_string());
        assert!(r.passed());
        let u = standard::unknot();
        assert!(verify_connected_sum(&r3, &u, &t, &[]).unwrap().passed());
        assert!(matches!(
            verify_connected_sum(&FiniteRack::trivial(2).unwrap(), &t, &t, &[]),
            Err(CocycleError::Hypothesis("faithful"))
        ));
    }
}
