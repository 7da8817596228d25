//! Finite racks and quandles stored as Cayley tables.
//!
//! Elements are the integers `0..n`. `table[a][b]` is `a * b`; the right
//! translation `*_b : a -> a * b` is the column `b` of the table.

use std::collections::{HashSet, VecDeque};
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Default upper bound on `|X|` for the exhaustive automorphism search.
pub const DEFAULT_AUT_SEARCH_BOUND: usize = 8;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QuandleError {
    #[error("empty table")]
    Empty,
    #[error("row {row} has {len} entries, expected {expected}")]
    NotSquare {
        row: usize,
        len: usize,
        expected: usize,
    },
    #[error("entry {value} at ({row}, {col}) is out of range 0..{size}")]
    OutOfRange {
        row: usize,
        col: usize,
        value: usize,
        size: usize,
    },
    #[error("table is not a rack: {0}")]
    NotARack(String),
    #[error("operation requires a quandle, but a*a != a for a = {0}")]
    NotAQuandle(usize),
    #[error("t = {t} is not invertible modulo {modulus}")]
    NonInvertibleParameter { t: i64, modulus: usize },
    #[error("size {size} exceeds the brute-force bound {bound}")]
    BoundExceeded { size: usize, bound: usize },
    #[error("bad quandle spec {0:?}")]
    BadSpec(String),
    #[error("unknown element name {0:?}")]
    UnknownElement(String),
    #[error("parse error: {0}")]
    Parse(String),
}

/// Outcome of a single axiom check; a failure carries the lexicographically
/// first counterexample tuple.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum AxiomStatus {
    Pass,
    Fail(Vec<usize>),
}

impl AxiomStatus {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomStatus::Pass)
    }
}

impl fmt::Display for AxiomStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomStatus::Pass => write!(f, "PASS"),
            AxiomStatus::Fail(t) => {
                let parts: Vec<String> = t.iter().map(|x| x.to_string()).collect();
                write!(f, "FAIL at ({})", parts.join(", "))
            }
        }
    }
}

/// Per-axiom results. Numbering: (1) right self-distributivity,
/// (2) invertibility of right translations, (3) idempotency.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub size: usize,
    /// Counterexample `(a, b, c)` with `(a*b)*c != (a*c)*(b*c)`.
    pub distributivity: AxiomStatus,
    /// Counterexample `(a1, a2, b)` with `a1 < a2` and `a1*b == a2*b`.
    pub invertibility: AxiomStatus,
    /// Counterexample `(a)` with `a*a != a`.
    pub idempotency: AxiomStatus,
}

impl ValidationReport {
    pub fn is_rack(&self) -> bool {
        self.distributivity.passed() && self.invertibility.passed()
    }

    pub fn is_quandle(&self) -> bool {
        self.is_rack() && self.idempotency.passed()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "(1) right self-distributivity: {}", self.distributivity)?;
        writeln!(f, "(2) invertibility: {}", self.invertibility)?;
        write!(f, "(3) idempotency: {}", self.idempotency)
    }
}

/// Table rows from the text form, without checking any axiom.
pub fn table_from_text(text: &str) -> Result<Vec<Vec<usize>>, QuandleError> {
    text.lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| {
            l.split_whitespace()
                .map(|t| {
                    t.parse::<usize>()
                        .map_err(|_| QuandleError::Parse(format!("bad entry {t:?}")))
                })
                .collect::<Result<Vec<_>, _>>()
        })
        .collect()
}

/// Table rows from either JSON form, without checking any axiom.
pub fn table_from_json(text: &str) -> Result<Vec<Vec<usize>>, QuandleError> {
    let value: serde_json::Value =
        serde_json::from_str(text).map_err(|e| QuandleError::Parse(e.to_string()))?;
    if value.get("elements").is_some() {
        let named: NamedTableFile =
            serde_json::from_value(value).map_err(|e| QuandleError::Parse(e.to_string()))?;
        return named_rows(&named.elements, &named.table);
    }
    let file: TableFile =
        serde_json::from_value(value).map_err(|e| QuandleError::Parse(e.to_string()))?;
    if file.size != file.table.len() {
        return Err(QuandleError::Parse(format!(
            "size {} disagrees with {} table rows",
            file.size,
            file.table.len()
        )));
    }
    Ok(file.table)
}

fn named_rows(elements: &[String], table: &[Vec<String>]) -> Result<Vec<Vec<usize>>, QuandleError> {
    let lookup = |name: &String| {
        elements
            .iter()
            .position(|e| e == name)
            .ok_or_else(|| QuandleError::UnknownElement(name.clone()))
    };
    let rows = table
        .iter()
        .map(|row| row.iter().map(lookup).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()?;
    if rows.len() != elements.len() {
        return Err(QuandleError::Parse(
            "row count differs from element count".into(),
        ));
    }
    Ok(rows)
}

/// Checks the shape of a table and reports each axiom separately.
pub fn validate(table: &[Vec<usize>]) -> Result<ValidationReport, QuandleError> {
    let n = table.len();
    if n == 0 {
        return Err(QuandleError::Empty);
    }
    for (row, entries) in table.iter().enumerate() {
        if entries.len() != n {
            return Err(QuandleError::NotSquare {
                row,
                len: entries.len(),
                expected: n,
            });
        }
        for (col, &value) in entries.iter().enumerate() {
            if value >= n {
                return Err(QuandleError::OutOfRange {
                    row,
                    col,
                    value,
                    size: n,
                });
            }
        }
    }
    let op = |a: usize, b: usize| table[a][b];

    let mut distributivity = AxiomStatus::Pass;
    'outer: for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if op(op(a, b), c) != op(op(a, c), op(b, c)) {
                    distributivity = AxiomStatus::Fail(vec![a, b, c]);
                    break 'outer;
                }
            }
        }
    }

    // First (a1, a2, b) in lexicographic order with a1 < a2 and a1*b == a2*b.
    let mut invertibility = AxiomStatus::Pass;
    'inv: for a1 in 0..n {
        for a2 in a1 + 1..n {
            for b in 0..n {
                if op(a1, b) == op(a2, b) {
                    invertibility = AxiomStatus::Fail(vec![a1, a2, b]);
                    break 'inv;
                }
            }
        }
    }

    let idempotency = match (0..n).find(|&a| op(a, a) != a) {
        Some(a) => AxiomStatus::Fail(vec![a]),
        None => AxiomStatus::Pass,
    };

    Ok(ValidationReport {
        size: n,
        distributivity,
        invertibility,
        idempotency,
    })
}

/// A finite rack; `is_quandle` is derived from the table at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FiniteRack {
    size: usize,
    table: Vec<usize>,
    inverse: Vec<usize>,
    quandle: bool,
}

impl FiniteRack {
    pub fn from_table(table: Vec<Vec<usize>>) -> Result<Self, QuandleError> {
        let report = validate(&table)?;
        if !report.is_rack() {
            let mut why = Vec::new();
            if !report.distributivity.passed() {
                why.push(format!("(1) {}", report.distributivity));
            }
            if !report.invertibility.passed() {
                why.push(format!("(2) {}", report.invertibility));
            }
            return Err(QuandleError::NotARack(why.join("; ")));
        }
        let n = table.len();
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mut inverse = vec![0; n * n];
        for a in 0..n {
            for b in 0..n {
                inverse[flat[a * n + b] * n + b] = a;
            }
        }
        Ok(FiniteRack {
            size: n,
            table: flat,
            inverse,
            quandle: report.idempotency.passed(),
        })
    }

    fn from_fn(n: usize, op: impl Fn(usize, usize) -> usize) -> Result<Self, QuandleError> {
        let table = (0..n).map(|a| (0..n).map(|b| op(a, b)).collect()).collect();
        Self::from_table(table)
    }

    /// Cyclic rack `C_n`: `i * j = i + 1 mod n`.
    pub fn cyclic(n: usize) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        Self::from_fn(n, |i, _| (i + 1) % n)
    }

    /// Trivial quandle `T_n`: `a * b = a`.
    pub fn trivial(n: usize) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        Self::from_fn(n, |a, _| a)
    }

    /// Dihedral quandle `R_n`: `i * j = 2j - i mod n`.
    pub fn dihedral(n: usize) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        Self::from_fn(n, |i, j| (2 * j + n - i) % n)
    }

    /// Affine Alexander quandle on `Z_n`: `a * b = t a + (1 - t) b mod n`.
    pub fn alexander(n: usize, t: i64) -> Result<Self, QuandleError> {
        if n == 0 {
            return Err(QuandleError::Empty);
        }
        let m = n as i64;
        if t.rem_euclid(m).gcd(&m) != 1 {
            return Err(QuandleError::NonInvertibleParameter { t, modulus: n });
        }
        let t = t.rem_euclid(m);
        let s = (1 - t).rem_euclid(m);
        Self::from_fn(n, |a, b| ((t * a as i64 + s * b as i64) % m) as usize)
    }

    /// Alexander quandle on `Z_m[t]/(f)` for monic `f = t^d + c_{d-1} t^{d-1} + ... + c_0`.
    ///
    /// `lower` lists `c_0, ..., c_{d-1}`. A polynomial `sum a_i t^i` is the
    /// element `sum a_i m^i`. For example `m = 2`, `lower = [1, 1]` gives the
    /// four-element quandle `Z_2[t]/(t^2 + t + 1)`.
    pub fn alexander_poly(modulus: usize, lower: &[i64]) -> Result<Self, QuandleError> {
        let d = lower.len();
        if modulus < 2 || d == 0 {
            return Err(QuandleError::BadSpec(format!(
                "alexander-poly:{modulus}:{lower:?}"
            )));
        }
        let m = modulus as i64;
        let c: Vec<i64> = lower.iter().map(|x| x.rem_euclid(m)).collect();
        if c[0].gcd(&m) != 1 {
            return Err(QuandleError::NonInvertibleParameter { t: c[0], modulus });
        }
        let n = modulus
            .checked_pow(d as u32)
            .filter(|&n| n <= 4096)
            .ok_or_else(|| {
                QuandleError::BadSpec(format!("alexander-poly:{modulus}:{lower:?} is too large"))
            })?;
        let digits = |mut x: usize| -> Vec<i64> {
            (0..d)
                .map(|_| {
                    let r = (x % modulus) as i64;
                    x /= modulus;
                    r
                })
                .collect()
        };
        let index = |v: &[i64]| {
            v.iter()
                .rev()
                .fold(0usize, |acc, &a| acc * modulus + a as usize)
        };
        // t * v, reduced using t^d = -sum c_i t^i
        let times_t = |v: &[i64]| -> Vec<i64> {
            let top = v[d - 1];
            let mut out = vec![0; d];
            for i in (1..d).rev() {
                out[i] = v[i - 1];
            }
            for i in 0..d {
                out[i] = (out[i] - top * c[i]).rem_euclid(m);
            }
            out
        };
        Self::from_fn(n, |a, b| {
            let (va, vb) = (digits(a), digits(b));
            let ta = times_t(&va);
            let tb = times_t(&vb);
            let res: Vec<i64> = (0..d)
                .map(|i| (ta[i] + vb[i] - tb[i]).rem_euclid(m))
                .collect();
            index(&res)
        })
    }

    /// Builds a rack from a spec string: `dihedral:n`, `alexander:n:t`,
    /// `cyclic:n`, `trivial:n` or `alexander-poly:m:c0,c1,...`.
    pub fn from_spec(spec: &str) -> Result<Self, QuandleError> {
        let bad = || QuandleError::BadSpec(spec.to_string());
        let parts: Vec<&str> = spec.trim().split(':').collect();
        let num = |s: &str| s.trim().parse::<usize>().map_err(|_| bad());
        match parts.as_slice() {
            ["dihedral", n] => Self::dihedral(num(n)?),
            ["cyclic", n] => Self::cyclic(num(n)?),
            ["trivial", n] => Self::trivial(num(n)?),
            ["alexander", n, t] => {
                Self::alexander(num(n)?, t.trim().parse::<i64>().map_err(|_| bad())?)
            }
            ["alexander-poly", m, coeffs] => {
                let lower = coeffs
                    .split(',')
                    .map(|c| c.trim().parse::<i64>().map_err(|_| bad()))
                    .collect::<Result<Vec<_>, _>>()?;
                Self::alexander_poly(num(m)?, &lower)
            }
            _ => Err(bad()),
        }
    }

    /// Parses the terse text form: `n` lines of `n` whitespace-separated integers.
    pub fn from_text(text: &str) -> Result<Self, QuandleError> {
        Self::from_table(table_from_text(text)?)
    }

    /// Parses either `{"size": n, "table": [[...]]}` or the named form
    /// `{"elements": ["a", ...], "table": [["a", ...], ...]}`.
    pub fn from_json(text: &str) -> Result<Self, QuandleError> {
        Self::from_table(table_from_json(text)?)
    }

    /// Rows follow `elements`; each name maps to its position there.
    pub fn from_named_table(
        elements: &[String],
        table: &[Vec<String>],
    ) -> Result<Self, QuandleError> {
        Self::from_table(named_rows(elements, table)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&TableFile {
            size: self.size,
            table: self.rows(),
        })
        .expect("serializable")
    }

    pub fn to_text(&self) -> String {
        self.rows()
            .iter()
            .map(|r| {
                r.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(" ")
            })
            .collect::<Vec<_>>()
            .join("\n")
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_quandle(&self) -> bool {
        self.quandle
    }

    /// `a * b`
    #[inline]
    pub fn op(&self, a: usize, b: usize) -> usize {
        self.table[a * self.size + b]
    }

    /// The unique `x` with `x * b = a`.
    #[inline]
    pub fn op_inv(&self, a: usize, b: usize) -> usize {
        self.inverse[a * self.size + b]
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(|r| r.to_vec()).collect()
    }

    /// The right translation `*_b` as a permutation of `0..n`.
    pub fn translation(&self, b: usize) -> Vec<usize> {
        (0..self.size).map(|a| self.op(a, b)).collect()
    }

    pub fn validate(&self) -> ValidationReport {
        validate(&self.rows()).expect("stored table is well formed")
    }

    pub fn require_quandle(&self) -> Result<(), QuandleError> {
        match (0..self.size).find(|&a| self.op(a, a) != a) {
            Some(a) => Err(QuandleError::NotAQuandle(a)),
            None => Ok(()),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct TableFile {
    size: usize,
    table: Vec<Vec<usize>>,
}

#[derive(Deserialize)]
struct NamedTableFile {
    elements: Vec<String>,
    table: Vec<Vec<String>>,
}

/// Orbits of `Inn(X)` together with the order of the group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OrbitPartition {
    /// Each block sorted; blocks ordered by their least element.
    pub blocks: Vec<Vec<usize>>,
    pub group_order: usize,
}

impl OrbitPartition {
    pub fn block_of(&self, x: usize) -> usize {
        self.blocks
            .iter()
            .position(|b| b.contains(&x))
            .expect("blocks cover the carrier")
    }
}

pub fn inner_orbits(x: &FiniteRack) -> OrbitPartition {
    let n = x.size();
    let mut block_id = vec![usize::MAX; n];
    let mut blocks = Vec::new();
    for start in 0..n {
        if block_id[start] != usize::MAX {
            continue;
        }
        let id = blocks.len();
        let mut block = vec![start];
        block_id[start] = id;
        let mut queue = VecDeque::from([start]);
        while let Some(a) = queue.pop_front() {
            for b in 0..n {
                for next in [x.op(a, b), x.op_inv(a, b)] {
                    if block_id[next] == usize::MAX {
                        block_id[next] = id;
                        block.push(next);
                        queue.push_back(next);
                    }
                }
            }
        }
        block.sort_unstable();
        blocks.push(block);
    }
    OrbitPartition {
        blocks,
        group_order: inner_group_order(x),
    }
}

/// Order of the permutation group generated by the right translations.
pub fn inner_group_order(x: &FiniteRack) -> usize {
    let generators: Vec<Vec<usize>> = {
        let mut g: Vec<Vec<usize>> = (0..x.size()).map(|b| x.translation(b)).collect();
        g.sort();
        g.dedup();
        g
    };
    let identity: Vec<usize> = (0..x.size()).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::from([identity.clone()]);
    let mut queue = VecDeque::from([identity]);
    while let Some(p) = queue.pop_front() {
        for g in &generators {
            let q: Vec<usize> = p.iter().map(|&i| g[i]).collect();
            if seen.insert(q.clone()) {
                queue.push_back(q);
            }
        }
    }
    seen.len()
}

pub fn is_connected(x: &FiniteRack) -> bool {
    inner_orbits(x).blocks.len() == 1
}

/// True iff `b -> *_b` is injective, i.e. the table columns are pairwise distinct.
pub fn is_faithful(x: &FiniteRack) -> bool {
    let columns: HashSet<Vec<usize>> = (0..x.size()).map(|b| x.translation(b)).collect();
    columns.len() == x.size()
}

/// Whether `Aut(X)` acts transitively, by exhaustive search up to
/// [`DEFAULT_AUT_SEARCH_BOUND`] elements.
pub fn is_homogeneous(x: &FiniteRack) -> Result<bool, QuandleError> {
    is_homogeneous_bounded(x, DEFAULT_AUT_SEARCH_BOUND)
}

pub fn is_homogeneous_bounded(x: &FiniteRack, bound: usize) -> Result<bool, QuandleError> {
    if x.size() > bound {
        return Err(QuandleError::BoundExceeded {
            size: x.size(),
            bound,
        });
    }
    Ok((0..x.size()).all(|t| find_automorphism(x, 0, t).is_some()))
}

/// Some automorphism `f` with `f(from) = to`, by backtracking over partial
/// maps that respect every fully determined product.
pub fn find_automorphism(x: &FiniteRack, from: usize, to: usize) -> Option<Vec<usize>> {
    let n = x.size();
    let mut image = vec![usize::MAX; n];
    let mut used = vec![false; n];
    image[from] = to;
    used[to] = true;
    let order: Vec<usize> = std::iter::once(from)
        .chain((0..n).filter(|&a| a != from))
        .collect();
    if search_automorphism(x, &order, 1, &mut image, &mut used) {
        Some(image)
    } else {
        None
    }
}

fn consistent(x: &FiniteRack, image: &[usize]) -> bool {
    let n = x.size();
    for a in 0..n {
        if image[a] == usize::MAX {
            continue;
        }
        for b in 0..n {
            if image[b] == usize::MAX {
                continue;
            }
            let ab = image[x.op(a, b)];
            if ab != usize::MAX && ab != x.op(image[a], image[b]) {
                return false;
            }
        }
    }
    true
}

fn search_automorphism(
    x: &FiniteRack,
    order: &[usize],
    depth: usize,
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
) -> bool {
    if !consistent(x, image) {
        return false;
    }
    if depth == order.len() {
        return true;
    }
    let a = order[depth];
    if image[a] != usize::MAX {
        return search_automorphism(x, order, depth + 1, image, used);
    }
    for target in 0..x.size() {
        if used[target] {
            continue;
        }
        image[a] = target;
        used[target] = true;
        if search_automorphism(x, order, depth + 1, image, used) {
            return true;
        }
        image[a] = usize::MAX;
        used[target] = false;
    }
    false
}

pub fn is_automorphism(x: &FiniteRack, f: &[usize]) -> bool {
    let n = x.size();
    let bijective = f.len() == n && f.iter().collect::<HashSet<_>>().len() == n;
    bijective && (0..n).all(|a| (0..n).all(|b| f[x.op(a, b)] == x.op(f[a], f[b])))
}
