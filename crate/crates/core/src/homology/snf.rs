use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::{IntMatrix, SparseMatrix};

/// Arithmetic needed by the elimination. Every operation may refuse
/// (return `None`) on overflow, which sends the caller to the bignum path.
trait Scalar: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn is_negative(&self) -> bool;
    fn magnitude_lt(&self, other: &Self) -> bool;
    fn neg(&self) -> Option<Self>;
    fn quot(&self, p: &Self) -> Option<Self>;
    fn divides(&self, other: &Self) -> bool;
    /// `self - q * b`
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self>;
    fn to_big(&self) -> BigInt;
}

impl Scalar for i64 {
    fn zero() -> Self {
        0
    }
    fn one() -> Self {
        1
    }
    fn is_zero(&self) -> bool {
        *self == 0
    }
    fn is_negative(&self) -> bool {
        *self < 0
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.unsigned_abs() < other.unsigned_abs()
    }
    fn neg(&self) -> Option<Self> {
        self.checked_neg()
    }
    fn quot(&self, p: &Self) -> Option<Self> {
        self.checked_div(*p)
    }
    fn divides(&self, other: &Self) -> bool {
        *self != 0 && (other.checked_rem(*self) == Some(0))
    }
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self> {
        q.checked_mul(*b).and_then(|qb| self.checked_sub(qb))
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Scalar for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        BigInt::from(1)
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn is_negative(&self) -> bool {
        Signed::is_negative(self)
    }
    fn magnitude_lt(&self, other: &Self) -> bool {
        self.magnitude() < other.magnitude()
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn quot(&self, p: &Self) -> Option<Self> {
        Some(self / p)
    }
    fn divides(&self, other: &Self) -> bool {
        !Zero::is_zero(self) && Zero::is_zero(&other.mod_floor(self))
    }
    fn mul_sub(&self, q: &Self, b: &Self) -> Option<Self> {
        Some(self - q * b)
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

struct Overflow;

/// Working state: `p * original * q == a` holds throughout.
struct Elimination<T> {
    a: Vec<Vec<T>>,
    p: Option<Vec<Vec<T>>>,
    q: Option<Vec<Vec<T>>>,
    rows: usize,
    cols: usize,
}

fn identity<T: Scalar>(n: usize) -> Vec<Vec<T>> {
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { T::one() } else { T::zero() })
                .collect()
        })
        .collect()
}

/// `dst -= q * src` on two rows of the same matrix.
fn row_mul_sub<T: Scalar>(
    m: &mut [Vec<T>],
    dst: usize,
    src: usize,
    q: &T,
    from: usize,
) -> Result<(), Overflow> {
    let (d, s) = if dst < src {
        let (lo, hi) = m.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = m.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for j in from..s.len() {
        if !s[j].is_zero() {
            d[j] = d[j].mul_sub(q, &s[j]).ok_or(Overflow)?;
        }
    }
    Ok(())
}

fn col_mul_sub<T: Scalar>(
    m: &mut [Vec<T>],
    dst: usize,
    src: usize,
    q: &T,
    from: usize,
) -> Result<(), Overflow> {
    for row in m.iter_mut().skip(from) {
        if !row[src].is_zero() {
            row[dst] = row[dst].mul_sub(q, &row[src]).ok_or(Overflow)?;
        }
    }
    Ok(())
}

impl<T: Scalar> Elimination<T> {
    fn new(a: Vec<Vec<T>>, rows: usize, cols: usize, want_p: bool, want_q: bool) -> Self {
        Elimination {
            a,
            p: want_p.then(|| identity(rows)),
            q: want_q.then(|| identity(cols)),
            rows,
            cols,
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i != j {
            self.a.swap(i, j);
            if let Some(p) = &mut self.p {
                p.swap(i, j);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i != j {
            for row in &mut self.a {
                row.swap(i, j);
            }
            if let Some(q) = &mut self.q {
                for row in q {
                    row.swap(i, j);
                }
            }
        }
    }

    /// row `dst` -= k * row `src`
    fn row_op(&mut self, dst: usize, src: usize, k: &T, from: usize) -> Result<(), Overflow> {
        row_mul_sub(&mut self.a, dst, src, k, from)?;
        if let Some(p) = &mut self.p {
            row_mul_sub(p, dst, src, k, 0)?;
        }
        Ok(())
    }

    /// column `dst` -= k * column `src`
    fn col_op(&mut self, dst: usize, src: usize, k: &T, from: usize) -> Result<(), Overflow> {
        col_mul_sub(&mut self.a, dst, src, k, from)?;
        if let Some(q) = &mut self.q {
            col_mul_sub(q, dst, src, k, 0)?;
        }
        Ok(())
    }

    fn negate_row(&mut self, i: usize) -> Result<(), Overflow> {
        for v in self.a[i].iter_mut() {
            *v = v.neg().ok_or(Overflow)?;
        }
        if let Some(p) = &mut self.p {
            for v in p[i].iter_mut() {
                *v = v.neg().ok_or(Overflow)?;
            }
        }
        Ok(())
    }

    fn smallest_in_block(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let v = &self.a[i][j];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| v.magnitude_lt(&self.a[bi][bj])) {
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(&mut self) -> Result<usize, Overflow> {
        let mut t = 0;
        while t < self.rows.min(self.cols) {
            let Some((i, j)) = self.smallest_in_block(t) else {
                break;
            };
            self.swap_rows(t, i);
            self.swap_cols(t, j);
            loop {
                let pivot = self.a[t][t].clone();
                for i in t + 1..self.rows {
                    if !self.a[i][t].is_zero() {
                        let k = self.a[i][t].quot(&pivot).ok_or(Overflow)?;
                        self.row_op(i, t, &k, t)?;
                    }
                }
                for j in t + 1..self.cols {
                    if !self.a[t][j].is_zero() {
                        let k = self.a[t][j].quot(&pivot).ok_or(Overflow)?;
                        self.col_op(j, t, &k, t)?;
                    }
                }
                // Remainders left in the pivot row or column are strictly
                // smaller than the pivot; move the smallest one in.
                let mut smaller: Option<(bool, usize)> = None;
                let mut best = pivot.clone();
                for i in t + 1..self.rows {
                    let v = &self.a[i][t];
                    if !v.is_zero() && v.magnitude_lt(&best) {
                        best = v.clone();
                        smaller = Some((true, i));
                    }
                }
                for j in t + 1..self.cols {
                    let v = &self.a[t][j];
                    if !v.is_zero() && v.magnitude_lt(&best) {
                        best = v.clone();
                        smaller = Some((false, j));
                    }
                }
                match smaller {
                    Some((true, i)) => {
                        self.swap_rows(t, i);
                        continue;
                    }
                    Some((false, j)) => {
                        self.swap_cols(t, j);
                        continue;
                    }
                    None => {}
                }
                // Divisibility: fold an offending row into the pivot row.
                let offender = (t + 1..self.rows)
                    .find(|&i| (t + 1..self.cols).any(|j| !pivot.divides(&self.a[i][j])));
                match offender {
                    Some(i) => {
                        let minus_one = T::one().neg().ok_or(Overflow)?;
                        self.row_op(t, i, &minus_one, t)?;
                    }
                    None => break,
                }
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t)?;
            }
            t += 1;
        }
        Ok(t)
    }
}

/// `p * a * q == diag(d_1, ..., d_r, 0, ...)` with `d_1 | d_2 | ... | d_r`,
/// `d_i > 0`, and `p`, `q` unimodular.
#[derive(Debug, Clone)]
pub struct SmithForm {
    pub invariants: Vec<BigInt>,
    pub row_transform: Option<IntMatrix>,
    pub col_transform: Option<IntMatrix>,
}

impl SmithForm {
    pub fn rank(&self) -> usize {
        self.invariants.len()
    }
}

fn finish<T: Scalar>(e: Elimination<T>, rank: usize) -> SmithForm {
    let to_int = |m: Vec<Vec<T>>| {
        let rows = m.len();
        let cols = m.first().map_or(0, Vec::len);
        IntMatrix {
            rows,
            cols,
            data: m
                .iter()
                .map(|r| r.iter().map(T::to_big).collect())
                .collect(),
        }
    };
    let invariants = (0..rank).map(|i| e.a[i][i].to_big()).collect();
    let (rows, cols) = (e.rows, e.cols);
    SmithForm {
        invariants,
        row_transform: e
            .p
            .map(to_int)
            .map(|m| if rows == 0 { IntMatrix::zeros(0, 0) } else { m }),
        col_transform: e
            .q
            .map(to_int)
            .map(|m| if cols == 0 { IntMatrix::zeros(0, 0) } else { m }),
    }
}

fn smith_i64(
    a: Vec<Vec<i64>>,
    rows: usize,
    cols: usize,
    want_p: bool,
    want_q: bool,
) -> Option<SmithForm> {
    let mut e = Elimination::new(a, rows, cols, want_p, want_q);
    let rank = e.run().ok()?;
    Some(finish(e, rank))
}

fn smith_big(
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    want_p: bool,
    want_q: bool,
) -> SmithForm {
    let mut e = Elimination::new(a, rows, cols, want_p, want_q);
    let rank = match e.run() {
        Ok(r) => r,
        Err(Overflow) => unreachable!("bignum arithmetic does not overflow"),
    };
    finish(e, rank)
}

/// Smith normal form of a dense integer matrix. Runs in machine integers
/// and restarts with arbitrary precision on overflow.
pub fn smith_normal_form(a: &IntMatrix, want_p: bool, want_q: bool) -> SmithForm {
    if let Some(small) = a.to_i64() {
        if let Some(s) = smith_i64(small, a.rows, a.cols, want_p, want_q) {
            return s;
        }
    }
    smith_big(a.data.clone(), a.rows, a.cols, want_p, want_q)
}

pub fn smith_sparse(a: &SparseMatrix, want_p: bool, want_q: bool) -> SmithForm {
    let dense = a.to_dense();
    if let Some(s) = smith_i64(dense.clone(), a.rows(), a.cols(), want_p, want_q) {
        return s;
    }
    let big = dense
        .iter()
        .map(|r| r.iter().map(|&v| BigInt::from(v)).collect())
        .collect();
    smith_big(big, a.rows(), a.cols(), want_p, want_q)
}

/// Nonzero invariant factors.
pub fn invariant_factors(a: &SparseMatrix) -> Vec<BigInt> {
    smith_sparse(a, false, false).invariants
}

/// Rank over the prime field `Z/p` by Gaussian elimination.
pub fn rank_mod_p(a: &SparseMatrix, p: u64) -> usize {
    assert!(p >= 2, "modulus must be at least 2");
    let pm = p as i128;
    let mut rows: Vec<Vec<u64>> = a
        .to_dense()
        .iter()
        .map(|r| {
            r.iter()
                .map(|&v| (v as i128).rem_euclid(pm) as u64)
                .collect()
        })
        .collect();
    let cols = a.cols();
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else {
            continue;
        };
        rows.swap(rank, piv);
        let inv = mod_inverse(rows[rank][c], p);
        for v in rows[rank].iter_mut() {
            *v = ((*v as u128 * inv as u128) % p as u128) as u64;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != rank && row[c] != 0 {
                let f = row[c];
                for (v, &pv) in row.iter_mut().zip(&pivot).skip(c) {
                    let sub = (f as u128 * pv as u128 % p as u128) as u64;
                    *v = (*v + p - sub) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let e = (a as i128).extended_gcd(&(p as i128));
    assert_eq!(e.gcd, 1, "{a} is not invertible mod {p}");
    e.x.rem_euclid(p as i128) as u64
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &[Vec<i64>]) -> SmithForm {
        let m = IntMatrix::from_i64(a);
        let s = smith_normal_form(&m, true, true);
        let p = s.row_transform.clone().unwrap();
        let q = s.col_transform.clone().unwrap();
        let d = p.mul(&m).mul(&q);
        for i in 0..m.rows {
            for j in 0..m.cols {
                let expect = if i == j && i < s.rank() {
                    s.invariants[i].clone()
                } else {
                    <BigInt as Zero>::zero()
                };
                assert_eq!(d.data[i][j], expect, "entry ({i},{j})");
            }
        }
        assert_eq!(p.determinant().abs(), BigInt::from(1));
        assert_eq!(q.determinant().abs(), BigInt::from(1));
        for w in s.invariants.windows(2) {
            assert!(Zero::is_zero(&(&w[1] % &w[0])));
        }
        s
    }

    #[test]
    fn small_examples() {
        let s = check(&[vec![2, 4, 4], vec![-6, 6, 12], vec![10, -4, -16]]);
        assert_eq!(
            s.invariants,
            vec![BigInt::from(2), BigInt::from(6), BigInt::from(12)]
        );
        let s = check(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(s.invariants, vec![BigInt::from(1), BigInt::from(6)]);
        let s = check(&[vec![0, 0, 0], vec![0, 0, 0]]);
        assert!(s.invariants.is_empty());
        let s = check(&[vec![4, 6]]);
        assert_eq!(s.invariants, vec![BigInt::from(2)]);
    }

    #[test]
    fn empty_shapes() {
        assert_eq!(
            invariant_factors(&SparseMatrix::zeros(0, 3)),
            Vec::<BigInt>::new()
        );
        assert_eq!(
            invariant_factors(&SparseMatrix::zeros(4, 0)),
            Vec::<BigInt>::new()
        );
    }

    #[test]
    fn overflow_falls_back_to_bignum() {
        let big = i64::MAX / 3;
        let s = check(&[vec![big, big - 1], vec![big - 7, big + 5]]);
        assert_eq!(s.rank(), 2);
    }

    #[test]
    fn rank_modulo_primes() {
        let m = SparseMatrix::from_dense(&[vec![2, 0], vec![0, 3]]);
        assert_eq!(rank_mod_p(&m, 2), 1);
        assert_eq!(rank_mod_p(&m, 3), 1);
        assert_eq!(rank_mod_p(&m, 5), 2);
    }
}
