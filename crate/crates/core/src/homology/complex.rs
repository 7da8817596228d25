use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::group::{is_zero_mod, reduce};
use super::snf::{rank_mod_p, smith_sparse};
use super::{
    is_degenerate, Coefficients, HomologyError, HomologyGroup, IntMatrix, SparseMatrix, Theory,
    TupleIndex,
};

/// Graded free module with bases of tuples and boundary matrices
/// `boundary(n): C_n -> C_{n-1}`, `boundary(0)` being the zero map to 0.
#[derive(Debug, Clone)]
pub struct ChainComplex {
    theory: Theory,
    size: usize,
    bases: Vec<Vec<Vec<usize>>>,
    boundaries: Vec<SparseMatrix>,
    arities: Vec<usize>,
    indices: Vec<TupleIndex>,
}

impl ChainComplex {
    /// `arities[n]` is the tuple length of degree-`n` labels; the rack
    /// complex has `arities[n] == n`, extended spaces `n + 1`.
    pub fn from_parts(
        theory: Theory,
        size: usize,
        arities: Vec<usize>,
        bases: Vec<Vec<Vec<usize>>>,
        boundaries: Vec<SparseMatrix>,
    ) -> Self {
        assert_eq!(bases.len(), boundaries.len(), "one boundary per degree");
        assert_eq!(bases.len(), arities.len(), "one arity per degree");
        for (n, d) in boundaries.iter().enumerate() {
            assert_eq!(d.cols(), bases[n].len(), "boundary {n} columns");
            if n > 0 {
                assert_eq!(d.rows(), bases[n - 1].len(), "boundary {n} rows");
            }
        }
        let indices = bases
            .iter()
            .zip(&arities)
            .map(|(b, &k)| TupleIndex::new(size, k, b))
            .collect();
        ChainComplex {
            theory,
            size,
            bases,
            boundaries,
            arities,
            indices,
        }
    }

    pub fn theory(&self) -> Theory {
        self.theory
    }

    pub fn max_degree(&self) -> usize {
        self.bases.len() - 1
    }

    pub fn basis(&self, n: usize) -> &[Vec<usize>] {
        &self.bases[n]
    }

    pub fn boundary(&self, n: usize) -> &SparseMatrix {
        &self.boundaries[n]
    }

    pub fn index_of(&self, n: usize, t: &[usize]) -> Option<usize> {
        if n > self.max_degree() || t.len() != self.arities[n] {
            return None;
        }
        self.indices[n].get(t)
    }

    fn require(&self, n: usize) -> Result<(), HomologyError> {
        if n > self.max_degree() {
            return Err(HomologyError::DegreeOutOfRange {
                degree: n,
                max: self.max_degree(),
            });
        }
        Ok(())
    }

    /// `∂_{n-1} ∂_n = 0` for every built degree.
    pub fn check_chain_condition(&self) -> Result<(), HomologyError> {
        for n in 2..=self.max_degree() {
            if !self.boundaries[n - 1].mul(&self.boundaries[n]).is_zero() {
                return Err(HomologyError::NotAChainComplex(n));
            }
        }
        Ok(())
    }

    /// `δ^{n} δ^{n-1} = 0` with `δ^{n-1} = ∂_n^T`.
    pub fn check_cochain_condition(&self) -> Result<(), HomologyError> {
        for n in 2..=self.max_degree() {
            let d_lo = self.boundaries[n - 1].transpose();
            let d_hi = self.boundaries[n].transpose();
            if !d_hi.mul(&d_lo).is_zero() {
                return Err(HomologyError::NotAChainComplex(n));
            }
        }
        Ok(())
    }

    /// Chain vector from a formal sum of tuples. In the quotient theory
    /// degenerate tuples are zero and are dropped.
    pub fn chain_from_terms<I>(&self, n: usize, terms: I) -> Result<Vec<i64>, HomologyError>
    where
        I: IntoIterator<Item = (Vec<usize>, i64)>,
    {
        self.require(n)?;
        let mut v = vec![0i64; self.bases[n].len()];
        for (t, c) in terms {
            match self.index_of(n, &t) {
                Some(k) => v[k] += c,
                None if self.theory == Theory::Quandle
                    && t.len() == self.arities[n]
                    && is_degenerate(&t) => {}
                None => return Err(HomologyError::NotInBasis(t, n)),
            }
        }
        Ok(v)
    }

    fn integral(&self, n: usize) -> HomologyGroup {
        let c = self.bases[n].len();
        let rank_out = if n == 0 {
            0
        } else {
            smith_sparse(&self.boundaries[n], false, false).rank()
        };
        let inv = smith_sparse(&self.boundaries[n + 1], false, false).invariants;
        HomologyGroup::from_invariants(c - rank_out - inv.len(), &inv)
    }

    /// `H_n` of the complex; needs degree `n + 1` built. Modular
    /// coefficients go through the universal coefficient theorem.
    pub fn homology(
        &self,
        n: usize,
        coefficients: Coefficients,
    ) -> Result<HomologyGroup, HomologyError> {
        self.require(n + 1)?;
        let h = self.integral(n);
        match coefficients {
            Coefficients::Integers => Ok(h),
            Coefficients::Modular(m) => {
                let mut orders = h.tensor_orders(m);
                if n > 0 {
                    orders.extend(self.integral(n - 1).tor_orders(m));
                }
                Ok(HomologyGroup::from_cyclic_orders(0, &orders))
            }
        }
    }

    /// `dim H_n(C; Z/p)` by ranks over the prime field.
    pub fn betti_mod_p(&self, n: usize, p: u64) -> Result<usize, HomologyError> {
        self.require(n + 1)?;
        let c = self.bases[n].len();
        let r_out = if n == 0 {
            0
        } else {
            rank_mod_p(&self.boundaries[n], p)
        };
        Ok(c - r_out - rank_mod_p(&self.boundaries[n + 1], p))
    }

    /// `H^n` with a spanning set of cocycles and, for each, whether it is a
    /// coboundary.
    pub fn cohomology(
        &self,
        n: usize,
        coefficients: Coefficients,
    ) -> Result<Cohomology, HomologyError> {
        self.require(n + 1)?;
        let m = coefficients.modulus();
        let h = self.integral(n);
        let below = if n > 0 {
            Some(self.integral(n - 1))
        } else {
            None
        };
        let group = match m {
            None => {
                let torsion = below.map(|g| g.torsion).unwrap_or_default();
                HomologyGroup {
                    free_rank: h.free_rank,
                    torsion,
                }
            }
            Some(m) => {
                let mut orders = h.tensor_orders(m);
                if let Some(g) = &below {
                    orders.extend(g.tor_orders(m));
                }
                HomologyGroup::from_cyclic_orders(0, &orders)
            }
        };

        // Kernel of δ^n = ∂_{n+1}^T.
        let delta = self.boundaries[n + 1].transpose();
        let snf = smith_sparse(&delta, false, true);
        let q = snf.col_transform.as_ref().expect("requested");
        let mut generators: Vec<Vec<BigInt>> = Vec::new();
        for i in 0..self.bases[n].len() {
            let scale = match (i < snf.rank(), m) {
                (false, _) => BigInt::from(1),
                (true, None) => continue,
                (true, Some(m)) => {
                    let g = snf.invariants[i].gcd(&BigInt::from(m));
                    if g == BigInt::from(1) {
                        continue;
                    }
                    BigInt::from(m) / g
                }
            };
            let col: Vec<BigInt> = (0..q.rows).map(|r| &q.data[r][i] * &scale).collect();
            generators.push(col);
        }

        let cocycles: Vec<Vec<i64>> = generators
            .iter()
            .map(|g| {
                g.iter()
                    .map(|v| match m {
                        Some(m) => Ok(reduce(v, m) as i64),
                        None => v.to_i64().ok_or(HomologyError::Overflow),
                    })
                    .collect()
            })
            .collect::<Result<_, _>>()?;

        let membership = CoboundaryTest::new(self, n, m);
        let coboundary = generators.iter().map(|g| membership.contains(g)).collect();
        Ok(Cohomology {
            degree: n,
            coefficients,
            group,
            basis: self.bases[n].clone(),
            cocycles,
            coboundary,
        })
    }

    /// Is `f` (values on the degree-`n` basis) a cocycle?
    pub fn is_cocycle(
        &self,
        n: usize,
        f: &[i64],
        modulus: Option<u64>,
    ) -> Result<bool, HomologyError> {
        self.require(n + 1)?;
        if f.len() != self.bases[n].len() {
            return Err(HomologyError::WrongLength {
                expected: self.bases[n].len(),
                found: f.len(),
            });
        }
        let image = self.boundaries[n + 1].transpose().apply(f);
        Ok(image
            .iter()
            .all(|&v| is_zero_mod(&BigInt::from(v), modulus)))
    }

    /// Is `f` a coboundary `δψ` with coefficients in `Z` or `Z/m`?
    pub fn is_coboundary(
        &self,
        n: usize,
        f: &[i64],
        modulus: Option<u64>,
    ) -> Result<bool, HomologyError> {
        self.require(n)?;
        if f.len() != self.bases[n].len() {
            return Err(HomologyError::WrongLength {
                expected: self.bases[n].len(),
                found: f.len(),
            });
        }
        let f: Vec<BigInt> = f.iter().map(|&v| BigInt::from(v)).collect();
        Ok(CoboundaryTest::new(self, n, modulus).contains(&f))
    }

    /// Reusable decision procedure for homology classes in degree `n`.
    pub fn cycle_classifier(&self, n: usize) -> Result<CycleClassifier, HomologyError> {
        self.require(n + 1)?;
        let snf = smith_sparse(&self.boundaries[n + 1], true, false);
        Ok(CycleClassifier {
            boundary: self.boundaries[n].clone(),
            p: snf.row_transform.clone().expect("requested"),
            invariants: snf.invariants,
        })
    }

    /// `∂_n` as sparse triplets, rows and columns indexed by `basis`.
    pub fn boundary_json(&self, n: usize) -> Result<String, HomologyError> {
        self.require(n)?;
        Ok(self.boundaries[n].to_triplet_json())
    }

    pub fn quandle_size(&self) -> usize {
        self.size
    }
}

/// Membership in the image of `δ^{n-1} = ∂_n^T`, over `Z` or mod `m`.
struct CoboundaryTest {
    p: IntMatrix,
    invariants: Vec<BigInt>,
    modulus: Option<u64>,
}

impl CoboundaryTest {
    fn new(c: &ChainComplex, n: usize, modulus: Option<u64>) -> Self {
        let b = c.boundaries[n].transpose();
        let snf = smith_sparse(&b, true, false);
        CoboundaryTest {
            p: snf.row_transform.expect("requested"),
            invariants: snf.invariants,
            modulus,
        }
    }

    fn contains(&self, f: &[BigInt]) -> bool {
        let y: Vec<BigInt> = (0..self.p.rows)
            .map(|i| {
                self.p.data[i]
                    .iter()
                    .zip(f)
                    .fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect();
        y.iter()
            .enumerate()
            .all(|(i, yi)| match (i < self.invariants.len(), self.modulus) {
                (true, None) => yi.is_multiple_of(&self.invariants[i]),
                (true, Some(m)) => {
                    let g = self.invariants[i].gcd(&BigInt::from(m));
                    yi.mod_floor(&g).is_zero()
                }
                (false, m) => is_zero_mod(yi, m),
            })
    }
}

/// Cohomology with an explicit spanning set of cocycles.
#[derive(Debug, Clone)]
pub struct Cohomology {
    pub degree: usize,
    pub coefficients: Coefficients,
    pub group: HomologyGroup,
    pub basis: Vec<Vec<usize>>,
    /// Values on `basis`; residues in `[0, m)` for modular coefficients.
    pub cocycles: Vec<Vec<i64>>,
    pub coboundary: Vec<bool>,
}

impl Cohomology {
    /// Cocycles that are not coboundaries.
    pub fn nontrivial(&self) -> impl Iterator<Item = &Vec<i64>> {
        self.cocycles
            .iter()
            .zip(&self.coboundary)
            .filter(|(_, &b)| !b)
            .map(|(c, _)| c)
    }
}

/// Coordinates of a cycle in `C_n / im ∂_{n+1}`: two cycles are homologous
/// iff their coordinates agree.
#[derive(Debug, Clone)]
pub struct CycleClassifier {
    boundary: SparseMatrix,
    p: IntMatrix,
    invariants: Vec<BigInt>,
}

impl CycleClassifier {
    pub fn classify(&self, z: &[i64]) -> Result<Vec<BigInt>, HomologyError> {
        if z.len() != self.p.cols {
            return Err(HomologyError::WrongLength {
                expected: self.p.cols,
                found: z.len(),
            });
        }
        if self.boundary.apply(z).iter().any(|&v| v != 0) {
            return Err(HomologyError::NotACycle);
        }
        let mut out = Vec::new();
        for (i, row) in self.p.data.iter().enumerate() {
            let y = row
                .iter()
                .zip(z)
                .fold(BigInt::zero(), |acc, (a, &b)| acc + a * b);
            match self.invariants.get(i) {
                Some(d) if *d == BigInt::from(1) => {}
                Some(d) => out.push(y.mod_floor(d)),
                None => out.push(y),
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::super::{build_complex, Coefficients, Theory};
    use crate::quandle::FiniteRack;

    #[test]
    fn cocycles_of_trivial_quandle() {
        let t2 = FiniteRack::trivial(2).unwrap();
        let c = build_complex(&t2, Theory::Quandle, 3).unwrap();
        let h = c.cohomology(2, Coefficients::Modular(2)).unwrap();
        assert_eq!(h.basis, vec![vec![0, 1], vec![1, 0]]);
        assert_eq!(h.cocycles.len(), 2);
        assert!(h.coboundary.iter().all(|&b| !b));
        assert_eq!(h.group.to_string(), "Z/2 + Z/2");
    }

    #[test]
    fn dihedral_three_cohomology() {
        let r3 = FiniteRack::dihedral(3).unwrap();
        let c = build_complex(&r3, Theory::Quandle, 4).unwrap();
        let h2 = c.cohomology(2, Coefficients::Modular(3)).unwrap();
        assert!(h2.coboundary.iter().all(|&b| b));
        assert!(h2.group.is_trivial());
        let h3 = c.cohomology(3, Coefficients::Modular(3)).unwrap();
        assert!(h3.nontrivial().count() > 0);
        for f in &h3.cocycles {
            assert!(c.is_cocycle(3, f, Some(3)).unwrap());
        }
        let h1 = c.cohomology(1, Coefficients::Integers).unwrap();
        assert_eq!(h1.group.free_rank, 1);
        c.check_cochain_condition().unwrap();
    }

    #[test]
    fn classifier_detects_boundaries() {
        let r3 = FiniteRack::dihedral(3).unwrap();
        let c = build_complex(&r3, Theory::Rack, 3).unwrap();
        let cls = c.cycle_classifier(2).unwrap();
        let b = c.boundary(3).apply(&vec![1; c.basis(3).len()]);
        let zero = vec![0; c.basis(2).len()];
        assert_eq!(cls.classify(&b).unwrap(), cls.classify(&zero).unwrap());
        let mut e = zero.clone();
        e[1] = 1;
        assert!(cls.classify(&e).is_err());
    }
}
