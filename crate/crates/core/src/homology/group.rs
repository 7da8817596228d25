use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use serde::ser::{Serialize, SerializeStruct, Serializer};

use super::HomologyError;

/// Coefficient ring of a (co)homology computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Coefficients {
    Integers,
    Modular(u64),
}

impl Coefficients {
    pub fn modulus(self) -> Option<u64> {
        match self {
            Coefficients::Integers => None,
            Coefficients::Modular(m) => Some(m),
        }
    }
}

impl FromStr for Coefficients {
    type Err = HomologyError;

    /// Accepts `Z`, `Z5`, `Z_5`, `Z/5`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        if t == "Z" {
            return Ok(Coefficients::Integers);
        }
        let digits = t
            .strip_prefix("Z_")
            .or_else(|| t.strip_prefix("Z/"))
            .or_else(|| t.strip_prefix('Z'))
            .ok_or_else(|| HomologyError::BadCoefficients(s.to_string()))?;
        let m: u64 = digits
            .parse()
            .map_err(|_| HomologyError::BadCoefficients(s.to_string()))?;
        if m < 2 {
            return Err(HomologyError::BadCoefficients(s.to_string()));
        }
        Ok(Coefficients::Modular(m))
    }
}

impl fmt::Display for Coefficients {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coefficients::Integers => write!(f, "Z"),
            Coefficients::Modular(m) => write!(f, "Z/{m}"),
        }
    }
}

/// A finitely generated abelian group `Z^r + Z/d1 + ... + Z/dk` in
/// invariant-factor form: every `d_i > 1` and `d_i | d_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn trivial() -> Self {
        HomologyGroup {
            free_rank: 0,
            torsion: Vec::new(),
        }
    }

    pub fn free(rank: usize) -> Self {
        HomologyGroup {
            free_rank: rank,
            torsion: Vec::new(),
        }
    }

    /// From a divisibility chain such as the diagonal of a Smith form;
    /// unit entries are dropped.
    pub fn from_invariants(free_rank: usize, factors: &[BigInt]) -> Self {
        let torsion = factors.iter().filter(|d| !d.is_one()).cloned().collect();
        HomologyGroup { free_rank, torsion }
    }

    /// From an arbitrary list of cyclic orders (no divisibility assumed).
    pub fn from_cyclic_orders(free_rank: usize, orders: &[u64]) -> Self {
        let mut by_prime: BTreeMap<u64, Vec<u64>> = BTreeMap::new();
        for &n in orders {
            for (p, pk) in prime_powers(n) {
                by_prime.entry(p).or_default().push(pk);
            }
        }
        let len = by_prime.values().map(Vec::len).max().unwrap_or(0);
        let mut torsion = vec![BigInt::one(); len];
        for powers in by_prime.values_mut() {
            powers.sort_unstable_by(|a, b| b.cmp(a));
            for (k, &pk) in powers.iter().enumerate() {
                torsion[k] *= pk;
            }
        }
        torsion.reverse();
        HomologyGroup { free_rank, torsion }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Number of cyclic summands of order divisible by `p` plus the free rank:
    /// the dimension of `G (x) Z/p` for a prime `p`.
    pub fn p_rank(&self, p: u64) -> usize {
        let p = BigInt::from(p);
        self.free_rank + self.torsion.iter().filter(|d| d.is_multiple_of(&p)).count()
    }

    fn torsion_u64(&self) -> impl Iterator<Item = BigInt> + '_ {
        self.torsion.iter().cloned()
    }

    /// Orders of `G (x) Z/m` as cyclic groups.
    pub fn tensor_orders(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        let mut out = vec![m; self.free_rank];
        out.extend(
            self.torsion_u64()
                .map(|d| d.gcd(&mb).to_u64().expect("gcd with u64")),
        );
        out
    }

    /// Orders of `Tor(G, Z/m)`; the same list serves `Ext(G, Z/m)`.
    pub fn tor_orders(&self, m: u64) -> Vec<u64> {
        let mb = BigInt::from(m);
        self.torsion_u64()
            .map(|d| d.gcd(&mb).to_u64().expect("gcd with u64"))
            .collect()
    }
}

fn prime_powers(mut n: u64) -> Vec<(u64, u64)> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            let mut pk = 1;
            while n.is_multiple_of(p) {
                n /= p;
                pk *= p;
            }
            out.push((p, pk));
        }
        p += 1;
    }
    if n > 1 {
        out.push((n, n));
    }
    out
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

impl Serialize for HomologyGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let torsion: Vec<serde_json::Value> = self
            .torsion
            .iter()
            .map(|d| match d.to_u64() {
                Some(v) => serde_json::Value::from(v),
                None => serde_json::Value::from(d.to_string()),
            })
            .collect();
        let mut s = serializer.serialize_struct("HomologyGroup", 3)?;
        s.serialize_field("free_rank", &self.free_rank)?;
        s.serialize_field("torsion", &torsion)?;
        s.serialize_field("text", &self.to_string())?;
        s.end()
    }
}

/// `BigInt` residue in `[0, m)`.
pub(crate) fn reduce(v: &BigInt, m: u64) -> u64 {
    v.mod_floor(&BigInt::from(m))
        .to_u64()
        .expect("residue fits")
}

pub(crate) fn is_zero_mod(v: &BigInt, m: Option<u64>) -> bool {
    match m {
        None => v.is_zero(),
        Some(m) => reduce(v, m) == 0,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn display() {
        assert_eq!(HomologyGroup::trivial().to_string(), "0");
        assert_eq!(HomologyGroup::free(1).to_string(), "Z");
        assert_eq!(HomologyGroup::free(3).to_string(), "Z^3");
        assert_eq!(
            HomologyGroup::from_invariants(2, &b(&[1, 1, 3, 6])).to_string(),
            "Z^2 + Z/3 + Z/6"
        );
    }

    #[test]
    fn canonical_from_cyclics() {
        let g = HomologyGroup::from_cyclic_orders(0, &[2, 3, 1, 4]);
        assert_eq!(g.torsion, b(&[2, 12]));
        let g = HomologyGroup::from_cyclic_orders(1, &[6, 10]);
        assert_eq!(g.torsion, b(&[2, 30]));
        assert!(HomologyGroup::from_cyclic_orders(0, &[1, 1]).is_trivial());
    }

    #[test]
    fn coefficient_parsing() {
        assert_eq!("Z".parse::<Coefficients>().unwrap(), Coefficients::Integers);
        assert_eq!(
            "Z_5".parse::<Coefficients>().unwrap(),
            Coefficients::Modular(5)
        );
        assert_eq!(
            "Z/4".parse::<Coefficients>().unwrap(),
            Coefficients::Modular(4)
        );
        assert_eq!(
            "Z3".parse::<Coefficients>().unwrap(),
            Coefficients::Modular(3)
        );
        assert!("Z_1".parse::<Coefficients>().is_err());
        assert!("Q".parse::<Coefficients>().is_err());
    }

    #[test]
    fn json_shape() {
        let g = HomologyGroup::from_invariants(1, &b(&[3]));
        assert_eq!(
            serde_json::to_string(&g).unwrap(),
            r#"{"free_rank":1,"torsion":[3],"text":"Z + Z/3"}"#
        );
    }
}
