//! Discriminants: `disc(P) = (−1)^{n(n−1)/2} Res(P, P′) / lc(P)`.

use num_bigint::BigInt;
use num_traits::Zero;

use super::crt::{reconstruct, CrtPlan};
use super::{polymod, IntPoly};
use crate::error::{Error, Result};
use crate::matrix::big_log2;
use crate::zp::Zp;

/// `disc(P) mod p`, or `None` when `p` divides `n·lc(P)` (the degree of
/// `P′` drops and the resultant formula no longer applies).
pub fn discriminant_mod(p: &IntPoly, prime: u64) -> Option<u64> {
    let n = p.degree()?;
    let zp = Zp::new(prime);
    let f = p.reduce(prime);
    if f.len() != n + 1 || (n as u64).is_multiple_of(prime) {
        return None;
    }
    let d = polymod::derivative(&f, zp);
    let res = polymod::resultant(&f, &d, zp);
    let mut v = zp.mul(res, zp.inv(f[n]));
    if (n * (n.saturating_sub(1)) / 2) % 2 == 1 {
        v = zp.neg(v);
    }
    Some(v)
}

fn l2_log2(p: &IntPoly) -> f64 {
    let sq: BigInt = p.coeffs().iter().map(|c| c * c).sum();
    if sq.is_zero() {
        0.0
    } else {
        big_log2(&sq) / 2.0
    }
}

/// `log₂` of Hadamard's bound `‖P‖₂^{n−1}·‖P′‖₂^n` on `|Res(P, P′)|`.
pub fn discriminant_bound_log2(p: &IntPoly) -> f64 {
    let n = p.degree().unwrap_or(0) as f64;
    (n - 1.0).max(0.0) * l2_log2(p) + n * l2_log2(&p.derivative())
}

/// Exact discriminant by multi-modular reconstruction with two control
/// primes.
pub fn discriminant_exact(p: &IntPoly) -> Result<BigInt> {
    let n = p.degree().ok_or(Error::DegeneratePoly("zero"))?;
    if n == 0 {
        return Err(Error::DegeneratePoly("constant"));
    }
    let lc = p.leading().unwrap().clone();
    let bad = |q: u64| (n as u64).is_multiple_of(q) || super::crt::big_mod(&lc, q) == 0;
    let plan = CrtPlan::new(discriminant_bound_log2(p), 2, bad);
    let residues: Vec<Vec<u64>> = plan
        .primes
        .iter()
        .map(|&q| vec![discriminant_mod(p, q).expect("prime was screened")])
        .collect();
    let d = reconstruct(&plan.primes, &residues).pop().unwrap();
    for &q in &plan.control {
        if Some(super::crt::big_mod(&d, q)) != discriminant_mod(p, q) {
            return Err(Error::ControlMismatch { prime: q });
        }
    }
    Ok(d)
}

/// Outcome of dividing a discriminant by a prime-power product.
#[derive(Clone, Debug, serde::Serialize)]
pub struct DivisorReport {
    pub divides: bool,
    /// `disc / product` is the square of an integer.
    pub cofactor_is_square: bool,
    pub cofactor_digits: usize,
}

/// Parses `p1^e1 * p2^e2 * …` (`^e` optional, whitespace ignored).
pub fn parse_prime_powers(s: &str) -> Result<Vec<(BigInt, u32)>> {
    s.split('*')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| {
            let (b, e) = t.split_once('^').unwrap_or((t, "1"));
            let perr = |msg: String| Error::Parse { line: 1, msg };
            let b: BigInt = b
                .trim()
                .parse()
                .map_err(|e| perr(format!("bad base {b:?}: {e}")))?;
            let e: u32 = e
                .trim()
                .parse()
                .map_err(|x| perr(format!("bad exponent {e:?}: {x}")))?;
            Ok((b, e))
        })
        .collect()
}

pub fn check_divisors(d: &BigInt, factors: &[(BigInt, u32)]) -> DivisorReport {
    use num_integer::Integer;
    let prod: BigInt = factors
        .iter()
        .map(|(b, e)| num_traits::pow(b.clone(), *e as usize))
        .product();
    let (q, r) = d.div_rem(&prod);
    let divides = r.is_zero() && !prod.is_zero();
    let cofactor_is_square = divides && q.sign() != num_bigint::Sign::Minus && {
        let s = q.sqrt();
        &s * &s == q
    };
    DivisorReport {
        divides,
        cofactor_is_square,
        cofactor_digits: if divides {
            q.magnitude().to_string().len()
        } else {
            0
        },
    }
}
