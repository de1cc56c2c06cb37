//! Finitely generated abelian groups in invariant factor form.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};
use std::fmt;

/// `Z^free_rank (+) Z/d_1 (+) ... (+) Z/d_k` with `d_1 | d_2 | ... | d_k`,
/// each `d_i >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FgAbelianGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl FgAbelianGroup {
    pub fn zero() -> Self {
        FgAbelianGroup { free_rank: 0, torsion: Vec::new() }
    }

    pub fn free(rank: usize) -> Self {
        FgAbelianGroup { free_rank: rank, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn is_free(&self) -> bool {
        self.torsion.is_empty()
    }

    /// Build from an SNF diagonal plus the ambient rank: diagonal entries
    /// equal to 1 are dropped, entries > 1 become torsion, and positions
    /// with no (or zero) diagonal entry contribute free rank.
    pub fn from_snf_diagonal(diagonal: &[BigInt], ambient_rank: usize) -> Self {
        let mut torsion: Vec<BigUint> = Vec::new();
        let mut killed = 0usize;
        for d in diagonal {
            if d.is_zero() {
                continue;
            }
            killed += 1;
            if !d.magnitude().is_one() {
                torsion.push(d.magnitude().clone());
            }
        }
        torsion.sort();
        FgAbelianGroup { free_rank: ambient_rank - killed, torsion }
    }

    /// Tor_1^Z of two groups: free parts contribute nothing and
    /// `Tor(Z/a, Z/b) = Z/gcd(a, b)`.
    pub fn tor(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut factors: Vec<BigUint> = Vec::new();
        for a in &self.torsion {
            for b in &other.torsion {
                let g = a.gcd(b);
                if !g.is_one() {
                    factors.push(g);
                }
            }
        }
        normalize_invariant_factors(factors)
    }

    /// Tensor product over Z:
    /// `Z^r (x) Z^s = Z^{rs}`, `Z/a (x) Z = Z/a`, `Z/a (x) Z/b = Z/gcd(a,b)`.
    pub fn tensor(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut factors: Vec<BigUint> = Vec::new();
        for a in &self.torsion {
            for _ in 0..other.free_rank {
                factors.push(a.clone());
            }
            for b in &other.torsion {
                let g = a.gcd(b);
                if !g.is_one() {
                    factors.push(g);
                }
            }
        }
        for b in &other.torsion {
            for _ in 0..self.free_rank {
                factors.push(b.clone());
            }
        }
        let mut out = normalize_invariant_factors(factors);
        out.free_rank = self.free_rank * other.free_rank;
        out
    }

    pub fn direct_sum(&self, other: &FgAbelianGroup) -> FgAbelianGroup {
        let mut factors = self.torsion.clone();
        factors.extend(other.torsion.iter().cloned());
        let mut out = normalize_invariant_factors(factors);
        out.free_rank = self.free_rank + other.free_rank;
        out
    }
}

/// Reassemble an arbitrary list of cyclic orders into the invariant factor
/// chain (elementary divisor decomposition and regrouping).
pub fn normalize_invariant_factors(factors: Vec<BigUint>) -> FgAbelianGroup {
    use std::collections::BTreeMap;
    // prime -> multiset of exponents
    let mut primary: BTreeMap<BigUint, Vec<u32>> = BTreeMap::new();
    for f in factors {
        for (p, e) in trial_factor(&f) {
            primary.entry(p).or_default().push(e);
        }
    }
    let max_len = primary.values().map(|v| v.len()).max().unwrap_or(0);
    let mut chain = vec![BigUint::one(); max_len];
    for (p, mut exps) in primary {
        exps.sort_unstable_by(|a, b| b.cmp(a)); // descending
        for (slot, e) in exps.into_iter().enumerate() {
            // largest prime powers go to the last invariant factor
            let idx = max_len - 1 - slot;
            chain[idx] *= p.pow(e);
        }
    }
    let torsion: Vec<BigUint> = chain.into_iter().filter(|d| !d.is_one()).collect();
    FgAbelianGroup { free_rank: 0, torsion }
}

/// As `normalize_invariant_factors`, with an added free rank.
pub fn normalize_invariant_factors_with_rank(
    factors: Vec<BigUint>,
    free_rank: usize,
) -> FgAbelianGroup {
    let mut g = normalize_invariant_factors(factors);
    g.free_rank = free_rank;
    g
}

fn trial_factor(n: &BigUint) -> Vec<(BigUint, u32)> {
    let mut n = n.clone();
    let mut out = Vec::new();
    let mut d = BigUint::from(2u32);
    while &d * &d <= n {
        let mut e = 0u32;
        while (&n % &d).is_zero() {
            n /= &d;
            e += 1;
        }
        if e > 0 {
            out.push((d.clone(), e));
        }
        d += 1u32;
    }
    if !n.is_one() {
        out.push((n, 1));
    }
    out
}

impl fmt::Display for FgAbelianGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        for d in &self.torsion {
            parts.push(format!("Z/{d}"));
        }
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn zmod(n: u32) -> FgAbelianGroup {
        FgAbelianGroup { free_rank: 0, torsion: vec![BigUint::from(n)] }
    }

    #[test]
    fn tor_gcd_rule() {
        assert_eq!(zmod(4).tor(&zmod(6)), zmod(2));
        assert_eq!(FgAbelianGroup::free(3).tor(&zmod(2)), FgAbelianGroup::zero());
        let mixed = FgAbelianGroup { free_rank: 1, torsion: vec![BigUint::from(2u32)] };
        assert_eq!(mixed.tor(&zmod(2)), zmod(2));
    }

    #[test]
    fn invariant_factor_normalization() {
        // Z/2 + Z/4 + Z/3 -> Z/2 + Z/12
        let g = normalize_invariant_factors(vec![
            BigUint::from(2u32),
            BigUint::from(4u32),
            BigUint::from(3u32),
        ]);
        assert_eq!(g.torsion, vec![BigUint::from(2u32), BigUint::from(12u32)]);
    }

    #[test]
    fn display() {
        let g = FgAbelianGroup { free_rank: 2, torsion: vec![BigUint::from(6u32)] };
        assert_eq!(g.to_string(), "Z^2 + Z/6");
        assert_eq!(FgAbelianGroup::zero().to_string(), "0");
    }
}
