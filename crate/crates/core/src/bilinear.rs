//! The bilinear form
//!
//!   𝒮(α, β, γ) = Σ_{D1,D2,m,n} γ_{D1,D2} · α_m · β_n · S(1, m, n, 1, D1, D2)
//!
//! over finitely supported sequences with |γ| ≤ 1, the arithmetic
//! large-sieve quantity M(β) and its q-truncated variant, the A-function of
//! the squarefree common-modulus stratum, and empirical ratio experiments
//! against the two bounds
//!
//!   |𝒮| ≤ C · (X1·X2) · M(α)^{1/2} M(β)^{1/2}
//!   |𝒮| ≤ C · [(X1·H2 + X2·H1) · M*(α)^{1/2} M*(β)^{1/2}
//!              + (X1·X2)^{3/2} · N · ‖α‖‖β‖ · (H1⁻¹ + H2⁻¹)]
//!
//! with the epsilon-powers set to zero and absorbed into recorded
//! calibration constants. Kloosterman values are exact; only the
//! aggregation runs in complex doubles.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{divisors, factor, gcd_u, is_prime};
use crate::error::{Error, Result};
use crate::gl3::{factor_coprime, s_long_fast, Gl3Args, NaiveCap};

/// A finitely supported complex coefficient sequence on 1..=bound.
#[derive(Debug, Clone)]
pub struct CoeffSeq {
    entries: BTreeMap<u64, Complex64>,
    bound: u64,
}

impl CoeffSeq {
    pub fn new(bound: u64) -> Self {
        CoeffSeq { entries: BTreeMap::new(), bound }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn set(&mut self, index: u64, value: Complex64) -> Result<()> {
        if index == 0 || index > self.bound {
            return Err(Error::InvalidInput(format!(
                "index {index} outside support bound 1..={}",
                self.bound
            )));
        }
        if value == Complex64::new(0.0, 0.0) {
            self.entries.remove(&index);
        } else {
            self.entries.insert(index, value);
        }
        Ok(())
    }

    pub fn get(&self, index: u64) -> Complex64 {
        self.entries.get(&index).copied().unwrap_or_default()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, Complex64)> + '_ {
        self.entries.iter().map(|(&i, &z)| (i, z))
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// ‖·‖ = (Σ |c_n|²)^{1/2}
    pub fn norm(&self) -> f64 {
        self.entries.values().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Dense ±1 coefficients on 1..=bound.
    pub fn random_signs(bound: u64, rng: &mut ChaCha8Rng) -> Self {
        let mut seq = CoeffSeq::new(bound);
        for n in 1..=bound {
            let s = if rng.gen_range(0..2) == 0 { 1.0 } else { -1.0 };
            seq.set(n, Complex64::new(s, 0.0)).expect("index in range");
        }
        seq
    }

    /// Dense unit-modulus coefficients with uniform random phases.
    pub fn random_phases(bound: u64, rng: &mut ChaCha8Rng) -> Self {
        let mut seq = CoeffSeq::new(bound);
        for n in 1..=bound {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            seq.set(n, Complex64::new(theta.cos(), theta.sin()))
                .expect("index in range");
        }
        seq
    }
}

/// The modulus-pair sequence γ with |γ_{D1,D2}| ≤ 1 enforced on
/// construction.
#[derive(Debug, Clone)]
pub struct GammaSeq {
    entries: BTreeMap<(u64, u64), Complex64>,
    x1: u64,
    x2: u64,
}

impl GammaSeq {
    pub fn new(x1: u64, x2: u64) -> Self {
        GammaSeq { entries: BTreeMap::new(), x1, x2 }
    }

    pub fn bounds(&self) -> (u64, u64) {
        (self.x1, self.x2)
    }

    pub fn set(&mut self, d1: u64, d2: u64, value: Complex64) -> Result<()> {
        if d1 == 0 || d1 > self.x1 || d2 == 0 || d2 > self.x2 {
            return Err(Error::InvalidInput(format!(
                "moduli pair ({d1}, {d2}) outside support ({}, {})",
                self.x1, self.x2
            )));
        }
        let abs = value.norm();
        if abs > 1.0 + 1e-12 {
            return Err(Error::CoefficientBound { index: (d1, d2), abs });
        }
        if value == Complex64::new(0.0, 0.0) {
            self.entries.remove(&(d1, d2));
        } else {
            self.entries.insert((d1, d2), value);
        }
        Ok(())
    }

    pub fn iter(&self) -> impl Iterator<Item = ((u64, u64), Complex64)> + '_ {
        self.entries.iter().map(|(&k, &z)| (k, z))
    }
}

/// Coefficient drawing styles used by the experiment drivers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoeffStyle {
    Signs,
    Phases,
}

/// A deterministic coefficient sequence keyed by (seed, salt): the same key
/// always reproduces the same sequence, independent of evaluation order.
pub fn seeded_coeff(seed: u64, salt: u64, bound: u64, style: CoeffStyle) -> CoeffSeq {
    let mut rng = trial_rng(seed, salt, bound, 0, 0, 0, 0);
    match style {
        CoeffStyle::Signs => CoeffSeq::random_signs(bound, &mut rng),
        CoeffStyle::Phases => CoeffSeq::random_phases(bound, &mut rng),
    }
}

/// A deterministic full-support random-phase γ keyed by (seed, salt).
pub fn seeded_gamma_phases(seed: u64, salt: u64, x1: u64, x2: u64) -> Result<GammaSeq> {
    let mut rng = trial_rng(seed, salt, x1, x2, 1, 1, 0);
    let mut gamma = GammaSeq::new(x1, x2);
    for d1 in 1..=x1 {
        for d2 in 1..=x2 {
            let theta = rng.gen_range(0.0..std::f64::consts::TAU);
            gamma.set(d1, d2, Complex64::new(theta.cos(), theta.sin()))?;
        }
    }
    Ok(gamma)
}

fn check_signs(signs: (i8, i8)) -> Result<()> {
    if !matches!(signs.0, -1 | 1) || !matches!(signs.1, -1 | 1) {
        return Err(Error::InvalidInput("signs must be ±1".into()));
    }
    Ok(())
}

/// The inner double sum Σ_{m,n} α_m β_n S(1, ε1·m, ε2·n, 1, D1, D2).
fn inner_sum(
    alpha: &CoeffSeq,
    beta: &CoeffSeq,
    d1: u64,
    d2: u64,
    signs: (i8, i8),
    cap: NaiveCap,
) -> Result<Complex64> {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, am) in alpha.iter() {
        for (n, bn) in beta.iter() {
            let args = Gl3Args::new(
                1,
                signs.0 as i64 * m as i64,
                signs.1 as i64 * n as i64,
                1,
                d1,
                d2,
            )?;
            acc += am * bn * s_long_fast(&args, cap)?.to_complex();
        }
    }
    Ok(acc)
}

/// 𝒮(α, β, γ) with the optional sign twist (ε1, ε2) on the frequencies.
pub fn bilinear_s(
    alpha: &CoeffSeq,
    beta: &CoeffSeq,
    gamma: &GammaSeq,
    signs: (i8, i8),
    cap: NaiveCap,
) -> Result<Complex64> {
    check_signs(signs)?;
    let mut total = Complex64::new(0.0, 0.0);
    for ((d1, d2), g) in gamma.iter() {
        total += g * inner_sum(alpha, beta, d1, d2, signs, cap)?;
    }
    Ok(total)
}

/// The arithmetic large-sieve quantity
///
///   M(β) = Σ_{q ≤ min(X1,X2)} Σ_{d1|q} (d1/q) Σ_{c ≤ X1/q, (c,q)=1}
///          Σ*_{t mod c} |Σ_{(n,q)=d1} β_n e(tn/c)|².
///
/// With `q_cap` set, the q-sum is further truncated at it (the windowed
/// variant); `q_cap = min(X1, X2)` reproduces the full quantity exactly.
pub fn m_beta(beta: &CoeffSeq, x1: u64, x2: u64, q_cap: Option<u64>) -> f64 {
    let qmax = q_cap.unwrap_or(u64::MAX).min(x1.min(x2));
    let mut total = 0.0f64;
    for q in 1..=qmax {
        for d1 in divisors(q) {
            let class: Vec<(u64, Complex64)> =
                beta.iter().filter(|&(n, _)| gcd_u(n, q) == d1).collect();
            if class.is_empty() {
                continue;
            }
            let mut qsum = 0.0f64;
            for c in (1..=x1 / q).filter(|&c| gcd_u(c, q) == 1) {
                for t in (0..c).filter(|&t| gcd_u(t, c) == 1) {
                    let mut inner = Complex64::new(0.0, 0.0);
                    for &(n, bn) in &class {
                        let theta = std::f64::consts::TAU * ((t * n) % c) as f64 / c as f64;
                        inner += bn * Complex64::new(theta.cos(), theta.sin());
                    }
                    qsum += inner.norm_sqr();
                }
            }
            total += d1 as f64 / q as f64 * qsum;
        }
    }
    total
}

/// A(d1, d2, q) = Π_{p | (d1,d2)} (p²−p+1) · Π_{p | q, p∤d1, p∤d2} (p+1)
/// for squarefree q with d1 | q and d2 | q.
pub fn a_function(d1: u64, d2: u64, q: u64) -> Result<u64> {
    if q == 0 || d1 == 0 || d2 == 0 || q % d1 != 0 || q % d2 != 0 {
        return Err(Error::InvalidDivisors(format!(
            "require d1 | q and d2 | q, got ({d1}, {d2}, {q})"
        )));
    }
    if !factor(q).is_squarefree() {
        return Err(Error::InvalidDivisors(format!("{q} is not squarefree")));
    }
    let mut out = 1u64;
    for p in factor(q).primes() {
        if d1 % p == 0 && d2 % p == 0 {
            out *= p * p - p + 1;
        } else if d1 % p != 0 && d2 % p != 0 {
            out *= p + 1;
        }
    }
    Ok(out)
}

/// One grid-point/trial outcome of a ratio experiment.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub x1: u64,
    pub x2: u64,
    pub h1: Option<u64>,
    pub h2: Option<u64>,
    pub trial: u32,
    pub coeff_style: String,
    pub lhs: f64,
    pub rhs_components: BTreeMap<String, f64>,
    /// lhs over the experiment's primary denominator.
    pub ratio: f64,
}

/// Deterministic per-trial RNG: the stream depends only on the seed, the
/// grid point, and the trial index, never on evaluation order.
fn trial_rng(seed: u64, n: u64, x1: u64, x2: u64, h1: u64, h2: u64, trial: u32) -> ChaCha8Rng {
    let mut h = seed ^ 0x9e37_79b9_7f4a_7c15;
    for v in [n, x1, x2, h1, h2, trial as u64] {
        h = (h ^ v).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        h ^= h >> 27;
    }
    ChaCha8Rng::seed_from_u64(h)
}

fn draw_pair(style_even: bool, n: u64, rng: &mut ChaCha8Rng) -> (CoeffSeq, CoeffSeq, &'static str) {
    if style_even {
        (
            CoeffSeq::random_signs(n, rng),
            CoeffSeq::random_signs(n, rng),
            "signs",
        )
    } else {
        (
            CoeffSeq::random_phases(n, rng),
            CoeffSeq::random_phases(n, rng),
            "phases",
        )
    }
}

/// The exact Kloosterman kernel S(1, m, n, 1, D1, D2) over the full grid,
/// embedded into complex doubles once per experiment.
fn kernel(
    n_bound: u64,
    x1: u64,
    x2: u64,
    cap: NaiveCap,
) -> Result<BTreeMap<(u64, u64), Vec<Complex64>>> {
    let mut out = BTreeMap::new();
    for d1 in 1..=x1 {
        for d2 in 1..=x2 {
            let mut grid = Vec::with_capacity((n_bound * n_bound) as usize);
            for m in 1..=n_bound {
                for n in 1..=n_bound {
                    let args = Gl3Args::new(1, m as i64, n as i64, 1, d1, d2)?;
                    grid.push(s_long_fast(&args, cap)?.to_complex());
                }
            }
            out.insert((d1, d2), grid);
        }
    }
    Ok(out)
}

fn inner_from_kernel(
    alpha: &CoeffSeq,
    beta: &CoeffSeq,
    grid: &[Complex64],
    n_bound: u64,
) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for (m, am) in alpha.iter() {
        for (n, bn) in beta.iter() {
            acc += am * bn * grid[((m - 1) * n_bound + (n - 1)) as usize];
        }
    }
    acc
}

/// Ratio experiment against |𝒮| ≤ C·(X1·X2)·M(α)^{1/2} M(β)^{1/2}: random
/// ±1 and random-phase α, β; γ chosen adversarially as the conjugate phase
/// of the inner double sum (unit modulus, the worst case the bound admits,
/// since a same-signed γ could otherwise be rigged by hand).
pub fn theorem2_experiment(
    n_bound: u64,
    x1: u64,
    x2: u64,
    trials: u32,
    seed: u64,
    cap: NaiveCap,
) -> Result<Vec<BoundReport>> {
    let kern = kernel(n_bound, x1, x2, cap)?;
    let mut reports = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, n_bound, x1, x2, 0, 0, trial);
        let (alpha, beta, style) = draw_pair(trial % 2 == 0, n_bound, &mut rng);
        // adversarial γ turns 𝒮 into Σ |inner double sum|
        let mut lhs = 0.0f64;
        for d1 in 1..=x1 {
            for d2 in 1..=x2 {
                lhs += inner_from_kernel(&alpha, &beta, &kern[&(d1, d2)], n_bound).norm();
            }
        }
        let ma = m_beta(&alpha, x1, x2, None);
        let mb = m_beta(&beta, x1, x2, None);
        let denom = (x1 * x2) as f64 * (ma * mb).sqrt();
        let weil = ((x1 * x2) as f64).powf(1.5) * n_bound as f64 * alpha.norm() * beta.norm();
        let mut rhs = BTreeMap::new();
        rhs.insert("product_form".to_string(), denom);
        rhs.insert("weil_form".to_string(), weil);
        rhs.insert("m_alpha".to_string(), ma);
        rhs.insert("m_beta".to_string(), mb);
        reports.push(BoundReport {
            n: n_bound,
            x1,
            x2,
            h1: None,
            h2: None,
            trial,
            coeff_style: style.to_string(),
            lhs,
            ratio: if denom > 0.0 { lhs / denom } else { 0.0 },
            rhs_components: rhs,
        });
    }
    Ok(reports)
}

/// Ratio experiment against the windowed bound
/// (X1·H2 + X2·H1)·M*(α)^{1/2}M*(β)^{1/2} + (X1X2)^{3/2}·N·‖α‖‖β‖·(H1⁻¹+H2⁻¹).
/// Trials reuse the coefficient streams of `theorem2_experiment`, so the
/// H1 = X1, H2 = X2 degeneration is comparable trial by trial.
#[allow(clippy::too_many_arguments)]
pub fn theorem3_experiment(
    n_bound: u64,
    x1: u64,
    x2: u64,
    h1: u64,
    h2: u64,
    trials: u32,
    seed: u64,
    cap: NaiveCap,
) -> Result<Vec<BoundReport>> {
    if h1 < 1 || h1 > x1 || h2 < 1 || h2 > x2 {
        return Err(Error::InvalidHRange(format!(
            "require 1 ≤ H1 ≤ X1 and 1 ≤ H2 ≤ X2, got H = ({h1}, {h2}), X = ({x1}, {x2})"
        )));
    }
    let kern = kernel(n_bound, x1, x2, cap)?;
    let mut reports = Vec::with_capacity(trials as usize);
    for trial in 0..trials {
        let mut rng = trial_rng(seed, n_bound, x1, x2, 0, 0, trial);
        let (alpha, beta, style) = draw_pair(trial % 2 == 0, n_bound, &mut rng);
        let mut lhs = 0.0f64;
        for d1 in 1..=x1 {
            for d2 in 1..=x2 {
                lhs += inner_from_kernel(&alpha, &beta, &kern[&(d1, d2)], n_bound).norm();
            }
        }
        let q_cap = Some(h1.min(h2));
        let ma = m_beta(&alpha, x1, x2, q_cap);
        let mb = m_beta(&beta, x1, x2, q_cap);
        let first = (x1 * h2 + x2 * h1) as f64 * (ma * mb).sqrt();
        let second = ((x1 * x2) as f64).powf(1.5)
            * n_bound as f64
            * alpha.norm()
            * beta.norm()
            * (1.0 / h1 as f64 + 1.0 / h2 as f64);
        let denom = first + second;
        let mut rhs = BTreeMap::new();
        rhs.insert("window_product_form".to_string(), first);
        rhs.insert("weil_tail".to_string(), second);
        rhs.insert("m_star_alpha".to_string(), ma);
        rhs.insert("m_star_beta".to_string(), mb);
        reports.push(BoundReport {
            n: n_bound,
            x1,
            x2,
            h1: Some(h1),
            h2: Some(h2),
            trial,
            coeff_style: style.to_string(),
            lhs,
            ratio: if denom > 0.0 { lhs / denom } else { 0.0 },
            rhs_components: rhs,
        });
    }
    Ok(reports)
}

/// 𝒮 split by gcd(D1, D2): the coprime stratum (also recomputed through the
/// classical-pair factorization), the equal-prime stratum D1 = D2 = p, and
/// the remainder. The strata are separate partial sums, so additivity
/// against `total` is a real consistency check, not bookkeeping.
#[derive(Debug, Clone, serde::Serialize)]
pub struct StrataReport {
    pub total: (f64, f64),
    pub coprime: (f64, f64),
    pub coprime_refactored: (f64, f64),
    pub equal_prime: (f64, f64),
    pub remainder: (f64, f64),
    pub additivity_gap: f64,
    pub refactor_gap: f64,
}

pub fn gcd_stratification(
    alpha: &CoeffSeq,
    beta: &CoeffSeq,
    gamma: &GammaSeq,
    cap: NaiveCap,
) -> Result<StrataReport> {
    let signs = (1i8, 1i8);
    let total = bilinear_s(alpha, beta, gamma, signs, cap)?;
    let zero = Complex64::new(0.0, 0.0);
    let (mut coprime, mut refactored, mut equal_prime, mut remainder) = (zero, zero, zero, zero);
    for ((d1, d2), g) in gamma.iter() {
        let inner = inner_sum(alpha, beta, d1, d2, signs, cap)?;
        if gcd_u(d1, d2) == 1 {
            coprime += g * inner;
            let mut ref_inner = zero;
            for (m, am) in alpha.iter() {
                for (n, bn) in beta.iter() {
                    let args = Gl3Args::new(1, m as i64, n as i64, 1, d1, d2)?;
                    let (f1, f2) = factor_coprime(&args)?;
                    ref_inner += am * bn * f1.value().to_complex() * f2.value().to_complex();
                }
            }
            refactored += g * ref_inner;
        } else if d1 == d2 && is_prime(d1) {
            equal_prime += g * inner;
        } else {
            remainder += g * inner;
        }
    }
    let additivity_gap = (total - (coprime + equal_prime + remainder)).norm();
    let refactor_gap = (coprime - refactored).norm();
    Ok(StrataReport {
        total: (total.re, total.im),
        coprime: (coprime.re, coprime.im),
        coprime_refactored: (refactored.re, refactored.im),
        equal_prime: (equal_prime.re, equal_prime.im),
        remainder: (remainder.re, remainder.im),
        additivity_gap,
        refactor_gap,
    })
}
