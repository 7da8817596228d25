//! Rack, degenerate and quandle chain complexes with exact homology.

mod complex;
mod group;
pub mod matrix;
pub mod snf;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::quandle::FiniteRack;

pub use complex::{ChainComplex, Cohomology, CycleClassifier};
pub use group::{Coefficients, HomologyGroup};
pub use matrix::{IntMatrix, SparseMatrix};
pub use snf::{invariant_factors, rank_mod_p, smith_normal_form, smith_sparse, SmithForm};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HomologyError {
    #[error("degree {requested} exceeds the bound {bound} for a quandle of size {size}")]
    DegreeBound {
        requested: usize,
        bound: usize,
        size: usize,
    },
    #[error("degree {degree} is outside the built range 0..={max}")]
    DegreeOutOfRange { degree: usize, max: usize },
    #[error(
        "degenerate chains are not a subcomplex: boundary of {tuple:?} leaves the degenerate span"
    )]
    NotASubcomplex { tuple: Vec<usize> },
    #[error("boundary composition is nonzero at degree {0}")]
    NotAChainComplex(usize),
    #[error("unknown theory {0:?} (expected R, D or Q)")]
    UnknownTheory(String),
    #[error("bad coefficients {0:?} (expected Z or Z_m with m >= 2)")]
    BadCoefficients(String),
    #[error("chain has length {found}, expected {expected}")]
    WrongLength { expected: usize, found: usize },
    #[error("{0:?} is not a basis element in degree {1}")]
    NotInBasis(Vec<usize>, usize),
    #[error("chain is not a cycle")]
    NotACycle,
    #[error("integer cocycle entry does not fit in 64 bits")]
    Overflow,
}

/// Which complex: the full rack complex, its degenerate subcomplex, or the
/// quotient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Theory {
    Rack,
    Degenerate,
    Quandle,
}

impl FromStr for Theory {
    type Err = HomologyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "r" | "rack" => Ok(Theory::Rack),
            "d" | "degenerate" => Ok(Theory::Degenerate),
            "q" | "quandle" => Ok(Theory::Quandle),
            _ => Err(HomologyError::UnknownTheory(s.to_string())),
        }
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Theory::Rack => "R",
            Theory::Degenerate => "D",
            Theory::Quandle => "Q",
        })
    }
}

/// Highest chain degree a complex may be built to by default.
pub fn degree_bound(size: usize) -> usize {
    match size {
        0..=6 => 4,
        7..=10 => 3,
        _ => 2,
    }
}

fn check_bound(size: usize, degree: usize, bound: usize) -> Result<(), HomologyError> {
    if degree > bound {
        return Err(HomologyError::DegreeBound {
            requested: degree,
            bound,
            size,
        });
    }
    Ok(())
}

/// Some pair of adjacent entries coincide.
pub fn is_degenerate(t: &[usize]) -> bool {
    t.windows(2).any(|w| w[0] == w[1])
}

/// All `n`-tuples over `0..size` in lexicographic order.
pub fn all_tuples(size: usize, n: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|t| {
                (0..size).map(move |a| {
                    let mut u = t.clone();
                    u.push(a);
                    u
                })
            })
            .collect();
    }
    out
}

pub fn degenerate_basis(x: &FiniteRack, n: usize) -> Vec<Vec<usize>> {
    all_tuples(x.size(), n)
        .into_iter()
        .filter(|t| is_degenerate(t))
        .collect()
}

pub fn nondegenerate_basis(x: &FiniteRack, n: usize) -> Vec<Vec<usize>> {
    all_tuples(x.size(), n)
        .into_iter()
        .filter(|t| !is_degenerate(t))
        .collect()
}

/// Unmerged terms of `sum_{i=2}^{n} (-1)^i (d_i^0 - d_i^1)` applied to a
/// tuple, where `d_i^0` drops `x_i` and `d_i^1` first acts on the prefix
/// by `x_i`. Positions are 1-based as in the formula.
pub fn rack_boundary_terms(x: &FiniteRack, t: &[usize]) -> Vec<(Vec<usize>, i64)> {
    let n = t.len();
    let mut out = Vec::with_capacity(2 * n.saturating_sub(1));
    for i in 2..=n {
        let sign = if i % 2 == 0 { 1 } else { -1 };
        let xi = t[i - 1];
        let mut drop: Vec<usize> = Vec::with_capacity(n - 1);
        drop.extend_from_slice(&t[..i - 1]);
        drop.extend_from_slice(&t[i..]);
        let mut act: Vec<usize> = t[..i - 1].iter().map(|&a| x.op(a, xi)).collect();
        act.extend_from_slice(&t[i..]);
        out.push((drop, sign));
        out.push((act, -sign));
    }
    out
}

/// Boundary of one tuple with like terms collected and zeros removed.
pub fn rack_boundary(x: &FiniteRack, t: &[usize]) -> BTreeMap<Vec<usize>, i64> {
    let mut acc: BTreeMap<Vec<usize>, i64> = BTreeMap::new();
    for (face, c) in rack_boundary_terms(x, t) {
        *acc.entry(face).or_insert(0) += c;
    }
    acc.retain(|_, c| *c != 0);
    acc
}

/// Index of tuples in a basis list.
#[derive(Debug, Clone)]
pub(crate) struct TupleIndex {
    size: usize,
    slots: Vec<u32>,
}

impl TupleIndex {
    const ABSENT: u32 = u32::MAX;

    pub(crate) fn new(size: usize, arity: usize, basis: &[Vec<usize>]) -> Self {
        let len = size
            .checked_pow(arity as u32)
            .expect("tuple space too large");
        let mut slots = vec![Self::ABSENT; len];
        for (k, t) in basis.iter().enumerate() {
            slots[encode(size, t)] = k as u32;
        }
        TupleIndex { size, slots }
    }

    pub(crate) fn get(&self, t: &[usize]) -> Option<usize> {
        if t.iter().any(|&a| a >= self.size) {
            return None;
        }
        match self.slots.get(encode(self.size, t)) {
            Some(&k) if k != Self::ABSENT => Some(k as usize),
            _ => None,
        }
    }
}

fn encode(size: usize, t: &[usize]) -> usize {
    t.iter().fold(0, |acc, &a| acc * size + a)
}

/// `∂_n` on the full rack basis `X^n -> X^{n-1}`, lexicographic on both sides.
pub fn rack_boundary_matrix(x: &FiniteRack, n: usize) -> Result<SparseMatrix, HomologyError> {
    check_bound(x.size(), n, degree_bound(x.size()))?;
    let rows = all_tuples(x.size(), n.saturating_sub(1));
    let cols = all_tuples(x.size(), n);
    if n == 0 {
        return Ok(SparseMatrix::zeros(0, 1));
    }
    Ok(boundary_between(x, &cols, &rows, n))
}

fn boundary_between(
    x: &FiniteRack,
    cols: &[Vec<usize>],
    rows: &[Vec<usize>],
    n: usize,
) -> SparseMatrix {
    let index = TupleIndex::new(x.size(), n - 1, rows);
    let columns = cols
        .iter()
        .map(|t| {
            rack_boundary_terms(x, t)
                .into_iter()
                .filter_map(|(face, c)| index.get(&face).map(|r| (r, c)))
                .collect()
        })
        .collect();
    SparseMatrix::from_columns(rows.len(), columns)
}

/// Builds `C^W_0 .. C^W_{max_degree}` with the default degree bound.
pub fn build_complex(
    x: &FiniteRack,
    theory: Theory,
    max_degree: usize,
) -> Result<ChainComplex, HomologyError> {
    build_complex_with_bound(x, theory, max_degree, degree_bound(x.size()))
}

pub fn build_complex_with_bound(
    x: &FiniteRack,
    theory: Theory,
    max_degree: usize,
    bound: usize,
) -> Result<ChainComplex, HomologyError> {
    check_bound(x.size(), max_degree, bound)?;
    if theory != Theory::Rack {
        check_degenerate_subcomplex(x, max_degree.max(2))?;
    }
    let bases: Vec<Vec<Vec<usize>>> = (0..=max_degree)
        .map(|n| match theory {
            Theory::Rack => all_tuples(x.size(), n),
            Theory::Degenerate => degenerate_basis(x, n),
            Theory::Quandle => nondegenerate_basis(x, n),
        })
        .collect();
    let mut boundaries = Vec::with_capacity(max_degree + 1);
    boundaries.push(SparseMatrix::zeros(0, bases[0].len()));
    for n in 1..=max_degree {
        boundaries.push(boundary_between(x, &bases[n], &bases[n - 1], n));
    }
    let arities = (0..=max_degree).collect();
    let complex = ChainComplex::from_parts(theory, x.size(), arities, bases, boundaries);
    complex.check_chain_condition()?;
    Ok(complex)
}

/// First degenerate tuple whose boundary has a nondegenerate face with a
/// nonzero coefficient. For a rack this is `(a, a)` with `a*a != a`.
fn check_degenerate_subcomplex(x: &FiniteRack, max_degree: usize) -> Result<(), HomologyError> {
    for n in 2..=max_degree {
        for t in degenerate_basis(x, n) {
            if rack_boundary(x, &t).keys().any(|face| !is_degenerate(face)) {
                return Err(HomologyError::NotASubcomplex { tuple: t });
            }
        }
    }
    Ok(())
}

/// `H_n^W(X; coefficients)`.
pub fn homology(
    x: &FiniteRack,
    theory: Theory,
    n: usize,
    coefficients: Coefficients,
) -> Result<HomologyGroup, HomologyError> {
    check_bound(x.size(), n + 1, degree_bound(x.size()))?;
    build_complex(x, theory, n + 1)?.homology(n, coefficients)
}

/// `H^n_W(X; coefficients)` with an explicit cocycle basis.
pub fn cohomology(
    x: &FiniteRack,
    theory: Theory,
    n: usize,
    coefficients: Coefficients,
) -> Result<Cohomology, HomologyError> {
    check_bound(x.size(), n + 1, degree_bound(x.size()))?;
    build_complex(x, theory, n + 1)?.cohomology(n, coefficients)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> FiniteRack {
        FiniteRack::dihedral(3).unwrap()
    }

    #[test]
    fn boundary_in_degree_two() {
        // ∂(0,1) = (0) - (0*1) = (0) - (2)
        let b = rack_boundary(&r3(), &[0, 1]);
        assert_eq!(b, BTreeMap::from([(vec![0], 1), (vec![2], -1)]));
        let m = rack_boundary_matrix(&r3(), 1).unwrap();
        assert!(m.is_zero());
        assert_eq!((m.rows(), m.cols()), (1, 3));
    }

    #[test]
    fn trivial_quandle_boundaries_vanish() {
        let t = FiniteRack::trivial(2).unwrap();
        for n in 0..=4 {
            assert!(rack_boundary_matrix(&t, n).unwrap().is_zero(), "degree {n}");
        }
    }

    #[test]
    fn degenerate_counts() {
        assert_eq!(degenerate_basis(&r3(), 2).len(), 3);
        assert_eq!(
            degenerate_basis(&FiniteRack::trivial(2).unwrap(), 3).len(),
            6
        );
        assert!(degenerate_basis(&r3(), 1).is_empty());
        assert!(degenerate_basis(&r3(), 0).is_empty());
    }

    #[test]
    fn complexes_and_bounds() {
        let c = build_complex(&r3(), Theory::Quandle, 3).unwrap();
        assert_eq!(c.basis(2).len(), 6);
        assert!(build_complex(&r3(), Theory::Rack, 3).is_ok());
        let err = build_complex(&FiniteRack::cyclic(2).unwrap(), Theory::Quandle, 2).unwrap_err();
        assert!(matches!(err, HomologyError::NotASubcomplex { ref tuple } if tuple == &vec![0, 0]));
        assert!(matches!(
            rack_boundary_matrix(&r3(), 5),
            Err(HomologyError::DegreeBound { requested: 5, .. })
        ));
    }

    #[test]
    fn regression_groups() {
        let z = Coefficients::Integers;
        assert_eq!(
            homology(&r3(), Theory::Rack, 1, z).unwrap().to_string(),
            "Z"
        );
        assert_eq!(
            homology(&FiniteRack::trivial(3).unwrap(), Theory::Rack, 1, z)
                .unwrap()
                .to_string(),
            "Z^3"
        );
        assert_eq!(
            homology(&r3(), Theory::Quandle, 2, z).unwrap().to_string(),
            "0"
        );
        assert_eq!(
            homology(&r3(), Theory::Quandle, 3, z).unwrap().to_string(),
            "Z/3"
        );
    }

    #[test]
    fn theory_parsing() {
        assert_eq!("Q".parse::<Theory>().unwrap(), Theory::Quandle);
        assert_eq!("rack".parse::<Theory>().unwrap(), Theory::Rack);
        assert!("X".parse::<Theory>().is_err());
    }
}
