//! Modular arithmetic, factorization, and classical Kloosterman-sum
//! primitives.
//!
//! Everything here is exact. Values are `i64`/`u64` with `i128`
//! intermediates; moduli are expected to stay within desk scale (≤ 10^5),
//! which the evaluation caps in the callers enforce. Overflow checks are
//! enabled in every build profile, so arithmetic never wraps silently.

use crate::cyclotomic::{CycAccumulator, CycInt};
use crate::error::{Error, Result};

pub fn gcd_u(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

pub fn gcd3(a: u64, b: u64, c: u64) -> u64 {
    gcd_u(gcd_u(a, b), c)
}

pub fn lcm_u(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd_u(a, b) * b
}

/// Extended GCD: returns (g, x, y) with a*x + b*y = g = gcd(a, b), g ≥ 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if a == 0 {
        return (b.abs(), 0, b.signum());
    }
    let (g, x, y) = ext_gcd(b.rem_euclid(a), a);
    (g, y - (b.div_euclid(a)) * x, x)
}

/// A residue `value` modulo `modulus`, kept in `[0, modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ResidueClass {
    value: u64,
    modulus: u64,
}

impl ResidueClass {
    /// Reduces `value` into `[0, modulus)`. `modulus` must be ≥ 1.
    pub fn new(value: i64, modulus: u64) -> Self {
        assert!(modulus >= 1, "modulus must be positive");
        ResidueClass {
            value: (value as i128).rem_euclid(modulus as i128) as u64,
            modulus,
        }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }
}

/// Inverse of `a` modulo `m`: the x with a·x ≡ 1 (mod m).
pub fn mod_inverse(a: i64, m: u64) -> Result<ResidueClass> {
    let (g, x, _) = ext_gcd((a as i128).rem_euclid(m as i128), m as i128);
    if g != 1 {
        return Err(Error::NotInvertible { a, modulus: m });
    }
    Ok(ResidueClass::new(x.rem_euclid(m as i128) as i64, m))
}

pub(crate) fn inv_u(a: u64, m: u64) -> Result<u64> {
    mod_inverse((a % m.max(1)) as i64, m).map(|r| r.value())
}

/// p-adic valuation of a nonzero integer.
pub fn nu_p(t: i64, p: u64) -> u32 {
    assert!(t != 0, "nu_p is defined on nonzero integers");
    assert!(p >= 2);
    let mut t = (t as i128).unsigned_abs();
    let p = p as u128;
    let mut v = 0;
    while t % p == 0 {
        t /= p;
        v += 1;
    }
    v
}

/// p-adic valuation of a residue modulo p^k: the largest j ≤ k with
/// t ≡ 0 (mod p^j). In particular the zero residue has valuation k.
pub fn nu_p_residue(t: &ResidueClass, p: u64) -> u32 {
    let k = prime_power_exponent(t.modulus(), p)
        .expect("nu_p_residue requires the modulus to be a power of p");
    let mut v = 0;
    let mut t = t.value();
    while v < k && t % p == 0 {
        t /= p;
        v += 1;
    }
    v
}

/// If n = p^k with k ≥ 0, returns k; otherwise None.
pub fn prime_power_exponent(n: u64, p: u64) -> Option<u32> {
    assert!(p >= 2);
    let mut n = n;
    let mut k = 0;
    while n % p == 0 {
        n /= p;
        k += 1;
    }
    (n == 1).then_some(k)
}

/// Combines residues with pairwise coprime moduli into the unique residue
/// modulo their product.
pub fn crt_combine(parts: &[ResidueClass]) -> Result<ResidueClass> {
    let mut value: i128 = 0;
    let mut modulus: u64 = 1;
    for part in parts {
        let m = part.modulus();
        let g = gcd_u(modulus, m);
        if g != 1 {
            return Err(Error::ModuliNotCoprime { a: modulus, b: m });
        }
        // value + modulus * s ≡ part (mod m)
        let minv = inv_u(modulus % m, m)?;
        let diff = (part.value() as i128 - value).rem_euclid(m as i128);
        let s = (diff * minv as i128).rem_euclid(m as i128);
        value += modulus as i128 * s;
        modulus *= m;
    }
    Ok(ResidueClass::new(value.rem_euclid(modulus as i128) as i64, modulus))
}

pub fn euler_phi(n: u64) -> u64 {
    assert!(n >= 1);
    let mut phi = n;
    for &(p, _) in factor(n).factors() {
        phi = phi / p * (p - 1);
    }
    phi
}

/// A factored positive integer: value = Π p^e with primes strictly
/// increasing and every exponent ≥ 1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    value: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, e)| e)
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, e)| e == 1)
    }

    /// All positive divisors, sorted.
    pub fn divisors(&self) -> Vec<u64> {
        let mut out = vec![1u64];
        for &(p, e) in &self.factors {
            let prev = out.clone();
            let mut pe = 1u64;
            for _ in 0..e {
                pe *= p;
                out.extend(prev.iter().map(|d| d * pe));
            }
        }
        out.sort_unstable();
        out
    }
}

/// Trial-division factorization; intended for desk-scale inputs.
pub fn factor(n: u64) -> Factorization {
    assert!(n >= 1, "factor requires n >= 1");
    let value = n;
    let mut n = n;
    let mut factors = Vec::new();
    let mut p = 2u64;
    while p * p <= n {
        if n % p == 0 {
            let mut e = 0;
            while n % p == 0 {
                n /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factors.push((n, 1));
    }
    Factorization { value, factors }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && factor(n).factors() == [(n, 1)]
}

pub fn divisors(n: u64) -> Vec<u64> {
    factor(n).divisors()
}

/// Classical Kloosterman sum S(m, n; c) = Σ*_{x mod c} e((mx + n x̄)/c),
/// evaluated exactly by direct summation over reduced residues.
pub fn classical_kloosterman(m: i64, n: i64, c: u64) -> CycInt {
    assert!(c >= 1);
    if c == 1 {
        return CycInt::one();
    }
    let mut acc = CycAccumulator::new(c).expect("modulus within order cap");
    let m = (m as i128).rem_euclid(c as i128) as u64;
    let n = (n as i128).rem_euclid(c as i128) as u64;
    for x in 0..c {
        if gcd_u(x, c) != 1 {
            continue;
        }
        let xinv = inv_u(x, c).expect("reduced residue is invertible");
        let e = ((m as u128 * x as u128 + n as u128 * xinv as u128) % c as u128) as u64;
        acc.add_term(e);
    }
    acc.into_cyc()
}

/// Ramanujan sum S(n, 0; c) = Σ*_{x mod c} e(xn/c). Equals φ(c) when c | n.
pub fn ramanujan_sum(n: i64, c: u64) -> CycInt {
    classical_kloosterman(n, 0, c)
}

/// Counts the n ≤ x whose set of prime divisors equals that of q.
///
/// Enumerates by recursive exponent search over q's primes rather than
/// scanning all n ≤ x.
pub fn same_prime_support_count(q: u64, x: u64) -> u64 {
    assert!(q >= 1);
    let primes: Vec<u64> = factor(q).primes().collect();
    if primes.is_empty() {
        return u64::from(x >= 1);
    }
    fn go(primes: &[u64], limit: u64, acc: u64) -> u64 {
        match primes.split_first() {
            None => 1,
            Some((&p, rest)) => {
                let mut count = 0;
                let mut value = acc;
                loop {
                    value = match value.checked_mul(p) {
                        Some(v) if v <= limit => v,
                        _ => break,
                    };
                    count += go(rest, limit, value);
                }
                count
            }
        }
    }
    go(&primes, x, 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mod_inverse_examples() {
        assert_eq!(mod_inverse(1, 7).unwrap().value(), 1);
        assert_eq!(mod_inverse(2, 5).unwrap().value(), 3);
        let v = mod_inverse(10, 21).unwrap().value();
        // exhaustive scan oracle
        let expected = (0..21).find(|x| (10 * x) % 21 == 1).unwrap();
        assert_eq!(v, expected);
        assert_eq!(
            mod_inverse(6, 9),
            Err(Error::NotInvertible { a: 6, modulus: 9 })
        );
    }

    #[test]
    fn nu_p_examples() {
        assert_eq!(nu_p(12, 2), 2);
        assert_eq!(nu_p_residue(&ResidueClass::new(0, 27), 3), 3);
        // valuation capped at k, brute-force divisibility scan oracle
        for t in 0..125 {
            let r = ResidueClass::new(t, 125);
            let brute = (0..=3u32)
                .rev()
                .find(|&j| t as u64 % 5u64.pow(j) == 0)
                .unwrap();
            assert_eq!(nu_p_residue(&r, 5), brute);
        }
    }

    #[test]
    fn nu_p_residue_consistent_with_integers() {
        for (p, k) in [(2u64, 5u32), (3, 3), (5, 3)] {
            let pk = p.pow(k);
            for t in 1..=pk {
                let vi = nu_p(t as i64, p);
                let vr = nu_p_residue(&ResidueClass::new(t as i64, pk), p);
                if vi < k {
                    assert_eq!(vi, vr);
                } else {
                    assert_eq!(vr, k);
                }
            }
        }
    }

    #[test]
    fn crt_examples() {
        let r = crt_combine(&[ResidueClass::new(1, 2), ResidueClass::new(2, 3)]).unwrap();
        assert_eq!((r.value(), r.modulus()), (5, 6));
        let z = crt_combine(&[ResidueClass::new(0, 4), ResidueClass::new(0, 9)]).unwrap();
        assert_eq!((z.value(), z.modulus()), (0, 36));
        assert!(crt_combine(&[ResidueClass::new(0, 4), ResidueClass::new(1, 6)]).is_err());
    }

    #[test]
    fn crt_random_triples() {
        let moduli = [(5u64, 7u64, 8u64), (3, 4, 25), (2, 9, 5)];
        for (m1, m2, m3) in moduli {
            for v in 0..(m1 * m2 * m3) {
                let parts = [
                    ResidueClass::new((v % m1) as i64, m1),
                    ResidueClass::new((v % m2) as i64, m2),
                    ResidueClass::new((v % m3) as i64, m3),
                ];
                let r = crt_combine(&parts).unwrap();
                assert_eq!(r.modulus(), m1 * m2 * m3);
                for part in &parts {
                    assert_eq!(r.value() % part.modulus(), part.value());
                }
            }
        }
    }

    #[test]
    fn euler_phi_examples() {
        assert_eq!(euler_phi(1), 1);
        assert_eq!(euler_phi(8), 4);
        let scan = (1..=360).filter(|&i| gcd_u(i, 360) == 1).count() as u64;
        assert_eq!(euler_phi(360), scan);
    }

    #[test]
    fn factorization_invariants() {
        for n in 1..=500u64 {
            let f = factor(n);
            let product: u64 = f.factors().iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(product, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));
            assert!(f.factors().iter().all(|&(p, e)| is_prime(p) && e >= 1));
            let ds = f.divisors();
            assert!(ds.iter().all(|d| n % d == 0));
            assert_eq!(ds.len(), (1..=n).filter(|d| n % d == 0).count());
        }
    }

    #[test]
    fn kloosterman_examples() {
        assert_eq!(classical_kloosterman(1, 1, 1), CycInt::one());
        for p in [2u64, 3, 5, 7] {
            assert_eq!(classical_kloosterman(1, 0, p), CycInt::from_int(-1));
        }
        // vanishing: S(1, 6, 9) = S(1, 2*3, 3^2) = 0
        assert!(classical_kloosterman(1, 6, 9).is_zero());
    }

    #[test]
    fn ramanujan_examples() {
        assert_eq!(ramanujan_sum(0, 3), CycInt::from_int(2));
        assert!(ramanujan_sum(1, 4).is_zero());
        assert_eq!(ramanujan_sum(2, 4), CycInt::from_int(-2));
        // always a rational integer
        for c in 1..=30u64 {
            for n in 0..c as i64 {
                assert_eq!(ramanujan_sum(n, c).order(), 1);
            }
        }
    }

    #[test]
    fn same_support_examples() {
        assert_eq!(same_prime_support_count(1, 10), 1);
        assert_eq!(same_prime_support_count(2, 10), 3);
        // full-scan oracle
        for q in [2u64, 6, 12, 30, 7] {
            for x in [10u64, 100, 1000] {
                let scan = (1..=x)
                    .filter(|&n| {
                        let sn: Vec<u64> = factor(n).primes().collect();
                        let sq: Vec<u64> = factor(q).primes().collect();
                        sn == sq
                    })
                    .count() as u64;
                assert_eq!(same_prime_support_count(q, x), scan, "q={q} x={x}");
            }
        }
    }
}
