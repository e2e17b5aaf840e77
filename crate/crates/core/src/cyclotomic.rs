//! Exact arithmetic in the rings Z[ζ_N] of cyclotomic integers.
//!
//! Every exponential sum in this crate is accumulated as an integer
//! combination of roots of unity and reduced to a canonical form, so
//! equality of sums is decided exactly, with zero tolerance.
//!
//! Canonical form: an element is stored on the Z-basis of Z[ζ_N] obtained
//! by tensoring the power bases {ζ_q^j : 0 ≤ j < φ(q)} over the prime-power
//! factors q of N (for q = p^e the relation Σ_{s<p} ζ_q^{s·p^{e-1}} = 0
//! rewrites the top slice of exponents). The order N is then reduced to the
//! smallest N' with the element in Z[ζ_{N'}]. Two values represent the same
//! algebraic number iff their canonical forms are identical.

use num_complex::Complex64;

use crate::arith::{factor, gcd_u};
use crate::error::{Error, Result};

/// Largest permitted cyclotomic order. Exceeding it is an explicit error,
/// never silent degradation.
pub const ORDER_CAP: u64 = 100_000;

/// An element of Z[ζ_N], canonically reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycInt {
    order: u64,
    coeffs: Vec<i128>,
}

/// CRT data for one order: prime powers q_i and units c_i with
/// c_i · (N/q_i) ≡ 1 (mod q_i), so that a/N ≡ Σ_i (a·c_i mod q_i)/q_i (mod 1).
struct TensorBasis {
    order: u64,
    parts: Vec<TensorPart>,
}

struct TensorPart {
    p: u64,
    q: u64,      // p^e
    phi: u64,    // (p-1) p^{e-1}
    slice: u64,  // p^{e-1}
    c: u64,      // CRT unit
    stride: u64, // position stride in the mixed-radix tensor index
}

impl TensorBasis {
    fn new(order: u64) -> Self {
        let mut parts = Vec::new();
        let mut stride = 1u64;
        for &(p, e) in factor(order).factors() {
            let q = p.pow(e);
            let m = order / q;
            let c = crate::arith::inv_u(m % q, q).expect("coprime cofactor");
            parts.push(TensorPart {
                p,
                q,
                phi: q / p * (p - 1),
                slice: q / p,
                c,
                stride,
            });
            stride *= q;
        }
        TensorBasis { order, parts }
    }

    fn tensor_index(&self, a: u64) -> u64 {
        let mut idx = 0;
        for part in &self.parts {
            let ai = (a as u128 * part.c as u128 % part.q as u128) as u64;
            idx += ai * part.stride;
        }
        idx
    }

    fn coordinate(&self, a: u64, i: usize) -> u64 {
        let part = &self.parts[i];
        (a as u128 * part.c as u128 % part.q as u128) as u64
    }

    /// The exponent a ∈ [0, N) whose coordinate tuple is `coords`.
    fn exponent_of_coords(&self, coords: &[u64]) -> u64 {
        let mut a: u128 = 0;
        let n = self.order as u128;
        for (part, &ai) in self.parts.iter().zip(coords) {
            let m = self.order / part.q;
            let ri = ai as u128 * (m % part.q) as u128 % part.q as u128;
            a = (a + ri * m as u128 % n * part.c as u128) % n;
        }
        a as u64
    }
}

/// Reduces a raw coefficient vector over exponents mod N to the canonical
/// tensor basis and performs order descent.
fn canonicalize(order: u64, coeffs: Vec<i128>) -> CycInt {
    debug_assert_eq!(coeffs.len(), order as usize);
    if order == 1 {
        return CycInt { order, coeffs };
    }
    let basis = TensorBasis::new(order);
    let mut tensor = vec![0i128; order as usize];
    for (a, &c) in coeffs.iter().enumerate() {
        if c != 0 {
            tensor[basis.tensor_index(a as u64) as usize] += c;
        }
    }
    // Rewrite the top slice of each coordinate onto the basis slice.
    for part in &basis.parts {
        let stride = part.stride as usize;
        let q = part.q as usize;
        let outer = (order as usize) / (stride * q);
        for block in 0..outer {
            for low in 0..stride {
                let base = block * stride * q + low;
                for ai in part.phi..part.q {
                    let idx = base + ai as usize * stride;
                    let c = tensor[idx];
                    if c == 0 {
                        continue;
                    }
                    tensor[idx] = 0;
                    let r = ai - part.phi;
                    let mut target = r;
                    while target < part.phi {
                        tensor[base + target as usize * stride] -= c;
                        target += part.slice;
                    }
                }
            }
        }
    }
    let mut out = vec![0i128; order as usize];
    for a in 0..order {
        let c = tensor[basis.tensor_index(a) as usize];
        if c != 0 {
            out[a as usize] = c;
        }
    }
    descend(CycInt { order, coeffs: out })
}

/// Shrinks the order to the minimal N' with the element in Z[ζ_{N'}].
fn descend(mut x: CycInt) -> CycInt {
    'outer: loop {
        if x.order == 1 {
            return x;
        }
        let basis = TensorBasis::new(x.order);
        let support: Vec<u64> = (0..x.order).filter(|&a| x.coeffs[a as usize] != 0).collect();
        if support.is_empty() {
            return CycInt::zero();
        }
        for (i, part) in basis.parts.iter().enumerate() {
            let e_ge_2 = part.q > part.p;
            let descends = if e_ge_2 {
                support.iter().all(|&a| basis.coordinate(a, i) % part.p == 0)
            } else {
                support.iter().all(|&a| basis.coordinate(a, i) == 0)
            };
            if !descends {
                continue;
            }
            let new_order = x.order / part.p;
            let new_basis = TensorBasis::new(new_order);
            let mut new_coeffs = vec![0i128; new_order as usize];
            for &a in &support {
                let coords: Vec<u64> = new_basis
                    .parts
                    .iter()
                    .map(|np| {
                        let j = basis
                            .parts
                            .iter()
                            .position(|op| op.p == np.p)
                            .expect("prime persists after descent");
                        let aj = basis.coordinate(a, j);
                        if np.p == part.p {
                            aj / part.p
                        } else {
                            aj
                        }
                    })
                    .collect();
                new_coeffs[new_basis.exponent_of_coords(&coords) as usize] +=
                    x.coeffs[a as usize];
            }
            x = CycInt {
                order: new_order,
                coeffs: new_coeffs,
            };
            continue 'outer;
        }
        return x;
    }
}

impl CycInt {
    pub fn zero() -> Self {
        CycInt {
            order: 1,
            coeffs: vec![0],
        }
    }

    pub fn one() -> Self {
        CycInt {
            order: 1,
            coeffs: vec![1],
        }
    }

    pub fn from_int(v: i128) -> Self {
        CycInt {
            order: 1,
            coeffs: vec![v],
        }
    }

    /// The root of unity e(a/n). Depends only on a mod n.
    pub fn root_of_unity(a: i64, n: u64) -> Self {
        assert!((1..=ORDER_CAP).contains(&n), "order {n} out of range");
        let exp = (a as i128).rem_euclid(n as i128) as u64;
        let mut coeffs = vec![0i128; n as usize];
        coeffs[exp as usize] = 1;
        canonicalize(n, coeffs)
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The rational integer value, if the element is one.
    pub fn as_int(&self) -> Option<i128> {
        (self.order == 1).then(|| self.coeffs[0])
    }

    fn support(&self) -> impl Iterator<Item = (u64, i128)> + '_ {
        self.coeffs
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c != 0)
            .map(|(a, &c)| (a as u64, c))
    }

    pub fn try_add(&self, rhs: &CycInt) -> Result<CycInt> {
        let l = checked_lcm(self.order, rhs.order)?;
        let mut coeffs = vec![0i128; l as usize];
        for (a, c) in self.support() {
            coeffs[(a * (l / self.order)) as usize] += c;
        }
        for (a, c) in rhs.support() {
            coeffs[(a * (l / rhs.order)) as usize] += c;
        }
        Ok(canonicalize(l, coeffs))
    }

    pub fn try_sub(&self, rhs: &CycInt) -> Result<CycInt> {
        self.try_add(&rhs.scale(-1))
    }

    pub fn try_mul(&self, rhs: &CycInt) -> Result<CycInt> {
        let l = checked_lcm(self.order, rhs.order)?;
        let mut coeffs = vec![0i128; l as usize];
        let s1 = l / self.order;
        let s2 = l / rhs.order;
        for (a, ca) in self.support() {
            for (b, cb) in rhs.support() {
                let exp = (a * s1 + b * s2) % l;
                coeffs[exp as usize] += ca * cb;
            }
        }
        Ok(canonicalize(l, coeffs))
    }

    pub fn scale(&self, k: i128) -> CycInt {
        if k == 0 {
            return CycInt::zero();
        }
        CycInt {
            order: self.order,
            coeffs: self.coeffs.iter().map(|&c| c * k).collect(),
        }
    }

    /// Exact division by a rational integer; panics if not divisible
    /// (division is coefficient-wise in the canonical basis).
    pub fn div_exact(&self, d: i128) -> CycInt {
        assert!(d != 0);
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| {
                assert!(c % d == 0, "inexact division of cyclotomic integer by {d}");
                c / d
            })
            .collect();
        descend(CycInt {
            order: self.order,
            coeffs,
        })
    }

    /// Numerical evaluation at ζ_N = e^{2πi/N}.
    pub fn to_complex(&self) -> Complex64 {
        let n = self.order as f64;
        let mut z = Complex64::new(0.0, 0.0);
        for (a, c) in self.support() {
            let theta = 2.0 * std::f64::consts::PI * (a as f64) / n;
            z += Complex64::new(theta.cos(), theta.sin()) * (c as f64);
        }
        z
    }
}

fn checked_lcm(a: u64, b: u64) -> Result<u64> {
    let g = gcd_u(a, b);
    let l = (a as u128 / g as u128) * b as u128;
    if l > ORDER_CAP as u128 {
        return Err(Error::OrderOverflow {
            order: l,
            cap: ORDER_CAP,
        });
    }
    Ok(l as u64)
}

impl std::ops::Add for &CycInt {
    type Output = CycInt;
    fn add(self, rhs: &CycInt) -> CycInt {
        self.try_add(rhs).expect("cyclotomic order cap exceeded")
    }
}

impl std::ops::Sub for &CycInt {
    type Output = CycInt;
    fn sub(self, rhs: &CycInt) -> CycInt {
        self.try_sub(rhs).expect("cyclotomic order cap exceeded")
    }
}

impl std::ops::Mul for &CycInt {
    type Output = CycInt;
    fn mul(self, rhs: &CycInt) -> CycInt {
        self.try_mul(rhs).expect("cyclotomic order cap exceeded")
    }
}

impl std::fmt::Display for CycInt {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (a, c) in self.support() {
            if !first {
                write!(f, " {} ", if c < 0 { "-" } else { "+" })?;
            } else {
                if c < 0 {
                    write!(f, "-")?;
                }
                first = false;
            }
            let mag = c.unsigned_abs();
            if a == 0 {
                write!(f, "{mag}")?;
            } else if mag == 1 {
                write!(f, "z{}^{}", self.order, a)?;
            } else {
                write!(f, "{mag}*z{}^{}", self.order, a)?;
            }
        }
        Ok(())
    }
}

/// Accumulates Σ c·ζ_order^exp terms in raw form, canonicalizing once at
/// the end. This is how the sum evaluators aggregate their terms.
pub struct CycAccumulator {
    order: u64,
    coeffs: Vec<i128>,
}

impl CycAccumulator {
    pub fn new(order: u64) -> Result<Self> {
        if order == 0 || order > ORDER_CAP {
            return Err(Error::OrderOverflow {
                order: order as u128,
                cap: ORDER_CAP,
            });
        }
        Ok(CycAccumulator {
            order,
            coeffs: vec![0i128; order as usize],
        })
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Adds ζ^exp. `exp` must already be reduced mod the order.
    #[inline]
    pub fn add_term(&mut self, exp: u64) {
        self.coeffs[exp as usize] += 1;
    }

    #[inline]
    pub fn add_scaled(&mut self, c: i128, exp: u64) {
        self.coeffs[exp as usize] += c;
    }

    /// Adds x · ζ^shift. The order of x must divide the accumulator order.
    pub fn add_shifted(&mut self, x: &CycInt, shift: u64) {
        debug_assert_eq!(self.order % x.order, 0);
        let s = self.order / x.order;
        for (a, c) in x.support() {
            self.coeffs[((a * s + shift) % self.order) as usize] += c;
        }
    }

    pub fn into_cyc(self) -> CycInt {
        canonicalize(self.order, self.coeffs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::classical_kloosterman;
    use proptest::prelude::*;

    fn root(a: i64, n: u64) -> CycInt {
        CycInt::root_of_unity(a, n)
    }

    #[test]
    fn basic_roots() {
        assert_eq!(root(0, 5), CycInt::one());
        assert_eq!(root(2, 4), CycInt::from_int(-1));
        assert_eq!(&root(1, 3) + &root(2, 3), CycInt::from_int(-1));
        assert_eq!(&root(1, 6) * &root(5, 6), CycInt::one());
        assert_eq!(&root(1, 2) * &root(1, 3), root(5, 6));
        assert!(root(2, 4).try_add(&CycInt::one()).unwrap().is_zero());
    }

    #[test]
    fn geometric_sums_vanish() {
        for n in 2..=30u64 {
            let mut acc = CycAccumulator::new(n).unwrap();
            for i in 0..n {
                acc.add_term(i);
            }
            assert!(acc.into_cyc().is_zero(), "n={n}");
        }
    }

    #[test]
    fn canonicality_mod_order() {
        for n in 1..=40u64 {
            for a in 0..n as i64 {
                assert_eq!(root(a, n), root(a + n as i64, n));
                assert_eq!(root(a, n), root(a - n as i64, n));
            }
        }
    }

    #[test]
    fn order_descends_to_minimal() {
        assert_eq!(root(2, 6).order(), 3);
        assert_eq!(root(3, 6).order(), 1);
        assert_eq!(root(3, 6), CycInt::from_int(-1));
        assert_eq!(root(2, 8).order(), 4);
        assert_eq!(root(5, 10), root(1, 2));
        // zero from cancellation collapses to order 1
        let z = root(1, 7).try_sub(&root(1, 7)).unwrap();
        assert_eq!(z.order(), 1);
        assert!(z.is_zero());
    }

    #[test]
    fn to_complex_basics() {
        let one = CycInt::one().to_complex();
        assert!((one.re - 1.0).abs() < 1e-15 && one.im.abs() < 1e-15);
        let i = root(1, 4).to_complex();
        assert!(i.re.abs() < 1e-12 && (i.im - 1.0).abs() < 1e-12);
        // float oracle for a small Kloosterman sum
        let s = classical_kloosterman(1, 1, 5);
        let mut direct = 0.0f64;
        for x in 1..5u64 {
            let xinv = (1..5u64).find(|y| x * y % 5 == 1).unwrap();
            direct += (2.0 * std::f64::consts::PI * ((x + xinv) as f64) / 5.0).cos();
        }
        assert!((s.to_complex().re - direct).abs() < 1e-10);
        assert!(s.to_complex().im.abs() < 1e-10);
    }

    #[test]
    fn large_order_embedding() {
        // desk-scale extremes: orders near 1e4 with coefficients near 1e6
        for n in [9973u64, 10000] {
            let r = root(1, n);
            let z = r.to_complex();
            let theta = 2.0 * std::f64::consts::PI / n as f64;
            assert!((z.re - theta.cos()).abs() < 1e-10, "n={n}");
            assert!((z.im - theta.sin()).abs() < 1e-10, "n={n}");
            let x = root(123, n).scale(1_000_000);
            let y = x.try_sub(&x).unwrap();
            assert!(y.is_zero());
            let mut acc = CycAccumulator::new(n).unwrap();
            for i in 0..n {
                acc.add_scaled(1_000_000, i);
            }
            let geo = acc.into_cyc();
            assert!(geo.is_zero(), "n={n}");
        }
    }

    #[test]
    fn exact_division() {
        let x = root(1, 5).scale(6).try_add(&CycInt::from_int(9)).unwrap();
        let y = x.div_exact(3);
        assert_eq!(y, root(1, 5).scale(2).try_add(&CycInt::from_int(3)).unwrap());
    }

    /// Random element of Z[ζ_n] as a short combination of roots whose
    /// orders divide n.
    fn element_of(n: u64, picks: &[(u64, i64, i128)]) -> CycInt {
        let divs: Vec<u64> = crate::arith::divisors(n);
        let mut acc = CycInt::zero();
        for &(di, a, c) in picks {
            let d = divs[di as usize % divs.len()];
            acc = acc.try_add(&root(a, d).scale(c)).unwrap();
        }
        acc
    }

    proptest! {
        #[test]
        fn ring_axioms(
            n in 1u64..=100,
            p1 in proptest::collection::vec((0u64..16, 0i64..100, -5i128..=5), 1..4),
            p2 in proptest::collection::vec((0u64..16, 0i64..100, -5i128..=5), 1..4),
            p3 in proptest::collection::vec((0u64..16, 0i64..100, -5i128..=5), 1..4),
        ) {
            let (x, y, z) = (&element_of(n, &p1), &element_of(n, &p2), &element_of(n, &p3));
            // associativity
            prop_assert_eq!(&(x + y) + z, x + &(y + z));
            prop_assert_eq!(&(x * y) * z, x * &(y * z));
            // commutativity and distributivity
            prop_assert_eq!(x + y, y + x);
            prop_assert_eq!(x * y, y * x);
            prop_assert_eq!(x * &(y + z), &(x * y) + &(x * z));
        }

        #[test]
        fn embedding_is_homomorphism(
            n in 1u64..=1000,
            factors in proptest::collection::vec((0u64..24, 0i64..1000), 2..10),
        ) {
            let divs: Vec<u64> = crate::arith::divisors(n);
            let mut product = CycInt::one();
            let mut z = Complex64::new(1.0, 0.0);
            for &(di, a) in &factors {
                let r = root(a, divs[di as usize % divs.len()]);
                z *= r.to_complex();
                product = product.try_mul(&r).unwrap();
            }
            let pz = product.to_complex();
            prop_assert!((pz - z).norm() < 1e-9);
        }

        #[test]
        fn equality_iff_difference_vanishes(
            n in 1u64..=60,
            p1 in proptest::collection::vec((0u64..12, 0i64..60, -3i128..=3), 1..5),
            p2 in proptest::collection::vec((0u64..12, 0i64..60, -3i128..=3), 1..5),
        ) {
            let x = element_of(n, &p1);
            let y = element_of(n, &p2);
            prop_assert_eq!(x == y, x.try_sub(&y).unwrap().is_zero());
        }

        #[test]
        fn representation_independent_of_presented_order(
            a in 0i64..120,
            n in 1u64..=40,
            k in 1u64..=25,
        ) {
            // e(a·k / n·k) = e(a/n): the canonical form must not remember
            // the inflated order it was presented at
            prop_assert_eq!(
                CycInt::root_of_unity(a * k as i64, n * k),
                CycInt::root_of_unity(a, n)
            );
        }

        #[test]
        fn is_zero_matches_embedding(
            n in 1u64..=60,
            terms in proptest::collection::vec((0u64..12, 0i64..60, -3i128..=3), 1..6),
        ) {
            let acc = element_of(n, &terms);
            let z = acc.to_complex();
            // exactness is the contract; the float check is a sanity net
            prop_assert_eq!(acc.is_zero(), z.norm() < 1e-6);
        }
    }
}
