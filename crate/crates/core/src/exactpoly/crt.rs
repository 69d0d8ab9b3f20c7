//! Prime selection and Chinese-remainder reconstruction of signed integers.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use serde::Serialize;

use crate::zp::{is_prime, Zp, CRT_PRIME_CEILING};

/// Reconstruction primes, a coefficient bound and disjoint control primes.
#[derive(Clone, Debug, Serialize)]
pub struct CrtPlan {
    pub primes: Vec<u64>,
    pub control: Vec<u64>,
    /// `log₂` of the bound on the absolute value of every reconstructed integer.
    pub bound_bits: f64,
}

impl CrtPlan {
    /// Takes primes downward from 2³¹, skipping those rejected by `skip`,
    /// until their product exceeds `2·2^bound_bits`, then appends
    /// `n_control` further primes as controls.
    pub fn new(bound_bits: f64, n_control: usize, skip: impl Fn(u64) -> bool) -> Self {
        let mut primes = Vec::new();
        let mut control = Vec::new();
        let mut acc = 0f64;
        let mut n = CRT_PRIME_CEILING - 1;
        while control.len() < n_control {
            if is_prime(n) && !skip(n) {
                if acc <= bound_bits + 2.0 {
                    primes.push(n);
                    // each prime is credited with ⌊log₂ p⌋ bits
                    acc += (n as f64).log2().floor();
                } else {
                    control.push(n);
                }
            }
            n -= 1;
        }
        CrtPlan {
            primes,
            control,
            bound_bits,
        }
    }
}

/// Incremental Garner reconstruction of one integer in `[0, M)`.
#[derive(Clone, Debug)]
pub struct CrtAccumulator {
    value: BigInt,
    modulus: BigInt,
}

impl Default for CrtAccumulator {
    fn default() -> Self {
        CrtAccumulator {
            value: BigInt::zero(),
            modulus: BigInt::from(1),
        }
    }
}

impl CrtAccumulator {
    pub fn push(&mut self, residue: u64, p: u64) {
        let zp = Zp::new(p);
        let pb = BigInt::from(p);
        let cur = self.value.mod_floor(&pb).to_u64().unwrap();
        let m = self.modulus.mod_floor(&pb).to_u64().unwrap();
        let t = zp.mul(zp.sub(residue % p, cur), zp.inv(m));
        self.value += &self.modulus * BigInt::from(t);
        self.modulus *= pb;
    }

    /// Representative in `(−M/2, M/2]`.
    pub fn symmetric(&self) -> BigInt {
        let half: BigInt = &self.modulus >> 1;
        if self.value > half {
            &self.value - &self.modulus
        } else {
            self.value.clone()
        }
    }
}

/// Reconstructs a vector of signed integers from per-prime residue vectors.
pub fn reconstruct(primes: &[u64], residues: &[Vec<u64>]) -> Vec<BigInt> {
    assert_eq!(primes.len(), residues.len());
    let len = residues.first().map_or(0, Vec::len);
    let mut acc = vec![CrtAccumulator::default(); len];
    for (&p, res) in primes.iter().zip(residues) {
        assert_eq!(res.len(), len);
        for (a, &r) in acc.iter_mut().zip(res) {
            a.push(r, p);
        }
    }
    acc.iter().map(CrtAccumulator::symmetric).collect()
}

/// `v mod p` as a residue.
pub fn big_mod(v: &BigInt, p: u64) -> u64 {
    v.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}
