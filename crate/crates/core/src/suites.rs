//! Verification suites: every identity, inequality, and cross-path
//! equivalence of the library, organized to run from the command line and
//! from the acceptance tests.
//!
//! Checks are exact wherever the quantities are cyclotomic integers; R and
//! the bilinear aggregates compare at the stated float tolerances. Reports
//! are deterministic for a fixed seed: grids iterate in a fixed order and
//! every random draw comes from a seeded stream.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{
    classical_kloosterman, crt_combine, divisors, euler_phi, factor, gcd_u, inv_u, is_prime,
    lcm_u, nu_p, nu_p_residue, ramanujan_sum, same_prime_support_count, ResidueClass,
};
use crate::bilinear::{
    a_function, bilinear_s, gcd_stratification, m_beta, theorem2_experiment, theorem3_experiment,
    CoeffSeq, GammaSeq,
};
use crate::calibration;
use crate::cyclotomic::CycInt;
use crate::error::Result;
use crate::gl3::{
    complete_sum_identity_check, decompose_moduli, factor_coprime, h_split, s_long_fast,
    s_long_naive, s_prime_primepower, symmetry_identities, twisted_factor,
    well_definedness_check, Gl3Args, NaiveCap,
};
use crate::transforms::{
    rbound_check, shat_closed_form, shat_factorization_check, RTable, ShatArgs, ShatEval,
    ShatPlane, TermTable,
};

#[derive(Debug, Clone, Copy)]
pub struct SuiteConfig {
    pub cap: NaiveCap,
    pub seed: u64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig { cap: NaiveCap::default(), seed: 7 }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: u64,
    pub detail: String,
}

impl CheckResult {
    fn new(name: &str, passed: bool, cases: u64, detail: String) -> Self {
        CheckResult { name: name.to_string(), passed, cases, detail }
    }
}

#[derive(Debug, Clone, serde::Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

impl SuiteReport {
    fn collect(suite: &str, checks: Vec<CheckResult>) -> Self {
        SuiteReport {
            suite: suite.to_string(),
            passed: checks.iter().all(|c| c.passed),
            checks,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Identities,
    Fourier,
    Rbound,
    Decomposition,
    All,
}

impl Suite {
    pub fn parse(name: &str) -> Option<Suite> {
        Some(match name {
            "identities" => Suite::Identities,
            "fourier" => Suite::Fourier,
            "rbound" => Suite::Rbound,
            "decomposition" => Suite::Decomposition,
            "all" => Suite::All,
            _ => return None,
        })
    }
}

/// Grid points whose metered cost exceeds the configured cap are skipped
/// and counted, so a reduced cap shrinks the grids instead of aborting.
fn skip_cap<T>(r: Result<T>, skipped: &mut u64) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(crate::error::Error::CapExceeded { .. }) => {
            *skipped += 1;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

/// Captures the first counterexample a check encounters.
struct Witness(Option<String>);

impl Witness {
    fn new() -> Self {
        Witness(None)
    }
    fn note(&mut self, s: String) {
        self.0.get_or_insert(s);
    }
    fn detail(&self, description: &str) -> String {
        match &self.0 {
            None => description.to_string(),
            Some(w) => format!("{description}; first counterexample: {w}"),
        }
    }
}

fn with_skips(detail: String, skipped: u64) -> String {
    if skipped == 0 {
        detail
    } else {
        format!("{detail}; {skipped} grid points beyond the cap skipped")
    }
}

/// Runs a suite. Cap violations abort the run (they indicate the configured
/// cap cannot cover the suite's grids); assertion failures are reported per
/// check.
pub fn run_suite(suite: Suite, cfg: &SuiteConfig) -> Result<SuiteReport> {
    Ok(match suite {
        Suite::Identities => SuiteReport::collect("identities", identities_checks(cfg)?),
        Suite::Fourier => SuiteReport::collect("fourier", fourier_checks(cfg)?),
        Suite::Rbound => SuiteReport::collect("rbound", rbound_checks(cfg)?),
        Suite::Decomposition => SuiteReport::collect("decomposition", decomposition_checks(cfg)?),
        Suite::All => {
            let mut checks = identities_checks(cfg)?;
            checks.extend(fourier_checks(cfg)?);
            checks.extend(rbound_checks(cfg)?);
            checks.extend(decomposition_checks(cfg)?);
            checks.extend(bilinear_checks(cfg)?);
            SuiteReport::collect("all", checks)
        }
    })
}

// ---------------------------------------------------------------------------
// identities
// ---------------------------------------------------------------------------

fn identities_checks(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let cap = cfg.cap;
    let mut checks = Vec::new();

    // One pass over the frequency/moduli grid feeds three checks: the
    // fast-vs-naive oracle equivalence, the individual-sum ratio record,
    // and the empirical realness observation.
    {
        let freqs = [1i64, 2, 3, 5];
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut equal = true;
        let mut worst: Option<String> = None;
        let mut max_ratio = 0.0f64;
        let mut max_imag = 0.0f64;
        for d1 in 1..=24u64 {
            for d2 in 1..=24u64 {
                for &m in &freqs {
                    for &n in &freqs {
                        let args = Gl3Args::new(1, m, n, 1, d1, d2)?;
                        let Some(naive) = skip_cap(s_long_naive(&args, cap), &mut skipped)? else {
                            continue;
                        };
                        let Some(fast) = skip_cap(s_long_fast(&args, cap), &mut skipped)? else {
                            continue;
                        };
                        cases += 1;
                        if naive != fast && equal {
                            equal = false;
                            worst = Some(format!("(1,{m},{n},1,{d1},{d2})"));
                        }
                        let z = naive.to_complex();
                        max_imag = max_imag.max(z.im.abs());
                        let g = gcd_u(d1, d2) as f64;
                        let l = lcm_u(d1, d2);
                        let mn = gcd_u((m * n) as u64, l) as f64;
                        let denom = ((d1 * d2) as f64).sqrt() * (g * mn).sqrt();
                        max_ratio = max_ratio.max(z.norm() / denom);
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "oracle_equivalence_fast_vs_naive",
            equal,
            cases,
            with_skips(
                worst.unwrap_or_else(|| "exact agreement on the full grid".into()),
                skipped,
            ),
        ));
        let ratio_ok = max_ratio.is_finite()
            && max_ratio <= calibration::INDIVIDUAL_BOUND_RATIO_MAX * (1.0 + 1e-9);
        checks.push(CheckResult::new(
            "individual_bound_ratio",
            ratio_ok,
            cases,
            format!(
                "max |S| / [(D1 D2)^(1/2) ((D1,D2)(mn,[D1,D2]))^(1/2)] = {max_ratio:.12e}, recorded ceiling {:.12e}",
                calibration::INDIVIDUAL_BOUND_RATIO_MAX
            ),
        ));
        checks.push(CheckResult::new(
            "empirical_realness_observation",
            true,
            cases,
            format!("max |Im S(1,m,n,1,D1,D2)| = {max_imag:.3e} (observation, not asserted)"),
        ));
    }

    // 200 randomized representative/(Y, Z) trials spread over random small
    // argument tuples.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x77e11);
        let mut trials_done = 0u32;
        let mut all_ok = true;
        let mut arg_sets = 0u64;
        while trials_done < 200 {
            let d1 = rng.gen_range(1..=10u64);
            let d2 = rng.gen_range(1..=10u64);
            let pick = |rng: &mut ChaCha8Rng| -> i64 {
                let v = rng.gen_range(1..=6i64);
                if rng.gen_range(0..2) == 0 {
                    v
                } else {
                    -v
                }
            };
            let args = Gl3Args::new(pick(&mut rng), pick(&mut rng), pick(&mut rng), pick(&mut rng), d1, d2)?;
            let batch = 10u32.min(200 - trials_done);
            if !well_definedness_check(&args, batch, rng.gen(), cap)? {
                all_ok = false;
            }
            trials_done += batch;
            arg_sets += 1;
        }
        checks.push(CheckResult::new(
            "well_definedness_randomized",
            all_ok,
            u64::from(trials_done),
            format!("{arg_sets} argument tuples, {trials_done} randomized re-evaluations"),
        ));
    }

    // The prime-prime case table: p²−p+1 / p+1 / 1 by divisibility of (m, n).
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for p in [2u64, 3, 5] {
            for m in 1..=2 * p as i64 {
                for n in 1..=2 * p as i64 {
                    let args = Gl3Args::new(1, m, n, 1, p, p)?;
                    let v = s_long_naive(&args, cap)?;
                    let expected = match (m as u64 % p == 0, n as u64 % p == 0) {
                        (true, true) => p * p - p + 1,
                        (false, false) => p + 1,
                        _ => 1,
                    };
                    cases += 1;
                    if v != CycInt::from_int(expected as i128) {
                        ok = false;
                        witness.note(format!("(1,{m},{n},1,{p},{p})"));
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "prime_prime_case_table",
            ok,
            cases,
            witness.detail("S(1,m,n,1,p,p) against the divisibility case table"),
        ));
    }

    // Closed evaluation at (p, p^l) against the definition.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for p in [2u64, 3, 5] {
            for l in 1..=3u32 {
                for m1 in 1..=3i64 {
                    for m2 in 1..=3i64 {
                        for n1 in 1..=3i64 {
                            for n2 in 1..=3i64 {
                                let formula = s_prime_primepower(m1, m2, n1, n2, p, l);
                                let naive = s_long_naive(
                                    &Gl3Args::new(m1, m2, n1, n2, p, p.pow(l))?,
                                    cap,
                                )?;
                                cases += 1;
                                if formula != naive {
                                    ok = false;
                                    witness.note(format!(
                                        "({m1},{m2},{n1},{n2},{p},{})",
                                        p.pow(l)
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "prime_primepower_formula",
            ok,
            cases,
            witness.detail("three-term classical-sum formula vs the definition"),
        ));
    }

    // Vanishing of classical sums S(α, β·p^b; p^c) for c ≥ 2.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for p in [2u64, 3, 5] {
            for c in 2..=3u32 {
                let pc = p.pow(c);
                if pc > 125 {
                    continue;
                }
                for b in 1..=c + 1 {
                    for alpha in (1..=6i64).filter(|&a| a as u64 % p != 0) {
                        for beta in (1..=6i64).filter(|&b| b as u64 % p != 0) {
                            let n = beta * p.pow(b) as i64;
                            cases += 1;
                            if !classical_kloosterman(alpha, n, pc).is_zero() {
                                ok = false;
                                witness.note(format!("S({alpha},{n};{pc})"));
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "classical_vanishing",
            ok,
            cases,
            witness.detail("S(α, β·p^b; p^c) = 0 for b ≥ 1, c ≥ 2, (αβ, p) = 1"),
        ));
    }

    // Symmetry of the classical sum in its two frequencies.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for c in 1..=50u64 {
            let mut table: BTreeMap<(u64, u64), CycInt> = BTreeMap::new();
            for m in 1..=50i64 {
                for n in 1..=50i64 {
                    let key = ((m as u64) % c, (n as u64) % c);
                    let v = table
                        .entry(key)
                        .or_insert_with(|| classical_kloosterman(key.0 as i64, key.1 as i64, c))
                        .clone();
                    let w = table
                        .entry((key.1, key.0))
                        .or_insert_with(|| classical_kloosterman(key.1 as i64, key.0 as i64, c))
                        .clone();
                    cases += 1;
                    if v != w {
                        ok = false;
                        witness.note(format!("(m,n,c)=({m},{n},{c})"));
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "classical_symmetry",
            ok,
            cases,
            witness.detail("S(m, n; c) = S(n, m; c) for m, n, c ≤ 50"),
        ));
    }

    // Twisted multiplicativity of the classical sum over coprime moduli,
    // fixed by exhaustive verification before anything relies on it.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for c1 in 2..=59u64 {
            for c2 in 2..=(60 / c1) {
                if gcd_u(c1, c2) != 1 {
                    continue;
                }
                let c = c1 * c2;
                let c2inv = inv_u(c2 % c1, c1)? as i64;
                let c1inv = inv_u(c1 % c2, c2)? as i64;
                let mrange = if c <= 30 { 0..c as i64 } else { 0..12 };
                for m in mrange.clone() {
                    for n in mrange.clone() {
                        let lhs = classical_kloosterman(m, n, c);
                        let rhs = classical_kloosterman(m * c2inv, n * c2inv, c1)
                            .try_mul(&classical_kloosterman(m * c1inv, n * c1inv, c2))?;
                        cases += 1;
                        if lhs != rhs {
                            ok = false;
                            witness.note(format!("(m,n,c1,c2)=({m},{n},{c1},{c2})"));
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "classical_twisted_multiplicativity",
            ok,
            cases,
            witness.detail("S(m,n;c1c2) = S(m·c̄2, n·c̄2; c1)·S(m·c̄1, n·c̄1; c2), c1·c2 ≤ 60"),
        ));
    }

    // Slot-shuffling identities of the GL(3) sum.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for d1 in 1..=8u64 {
            for d2 in 1..=8u64 {
                for a in (1..=3i64).filter(|&a| gcd_u(a as u64, d1) == 1) {
                    for x in 1..=3i64 {
                        for y in 1..=3i64 {
                            for check in symmetry_identities(a, x, y, d1, d2, cap)? {
                                cases += 1;
                                if !check.passed {
                                    ok = false;
                                    witness.note(format!(
                                        "{} at (a,x,y,D1,D2)=({a},{x},{y},{d1},{d2})",
                                        check.name
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "gl3_symmetry_identities",
            ok,
            cases,
            witness.detail("slot rotation, moduli reversal, unit twist absorption"),
        ));
    }

    // Coprime-moduli factorization into classical sums.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for d1 in 1..=12u64 {
            for d2 in (1..=12u64).filter(|&d2| gcd_u(d1, d2) == 1) {
                for m in 1..=3i64 {
                    for n in 1..=3i64 {
                        let args = Gl3Args::new(1, m, n, 1, d1, d2)?;
                        let (f1, f2) = factor_coprime(&args)?;
                        cases += 1;
                        if f1.value().try_mul(&f2.value())? != s_long_naive(&args, cap)? {
                            ok = false;
                            witness.note(format!("(1,{m},{n},1,{d1},{d2})"));
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "coprime_factorization",
            ok,
            cases,
            witness.detail("S = S(D2·m1, n1; D1)·S(D1·m2, n2; D2) for (D1, D2) = 1"),
        ));
    }

    // Twisted block factorization against the naive oracle.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for d1 in 1..=18u64 {
            for d2 in 1..=18u64 {
                if gcd_u(d1, d2) == 1 && d1 * d2 > 12 {
                    continue;
                }
                for m in 1..=2i64 {
                    for n in 1..=2i64 {
                        let args = Gl3Args::new(1, m, n, 1, d1, d2)?;
                        let dec = decompose_moduli(d1, d2);
                        let (fe, fg) = twisted_factor(&args, &dec)?;
                        let lhs = s_long_naive(&args, cap)?;
                        let rhs = s_long_naive(&fe, cap)?.try_mul(&s_long_naive(&fg, cap)?)?;
                        cases += 1;
                        if lhs != rhs {
                            ok = false;
                            witness.note(format!("(1,{m},{n},1,{d1},{d2})"));
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "twisted_block_factorization",
            ok,
            cases,
            witness.detail("S(1,m,n,1,D1,D2) = (E-block) · (g-block) with squared-inverse twists"),
        ));
    }

    // The squarefree equal-moduli block evaluates to the A-function:
    // S(a, b·m, n, 1, q, q) = A((n,q), (m,q), q) for squarefree q, (ab,q)=1.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for q in [1u64, 2, 3, 5, 6, 10, 15] {
            let units: Vec<i64> = if q == 1 {
                vec![1]
            } else {
                (1..q).filter(|&a| gcd_u(a, q) == 1).map(|a| a as i64).collect()
            };
            for &a in units.iter().take(2) {
                for &b in units.iter().rev().take(2) {
                    for m in 1..=6i64 {
                        for n in 1..=6i64 {
                            let v = crate::gl3::s_long_raw(
                                a,
                                (b * m).rem_euclid(q as i64),
                                n,
                                1,
                                q,
                                q,
                                cap,
                            )?;
                            let expected = crate::bilinear::a_function(
                                gcd_u(n as u64, q),
                                gcd_u(m as u64, q),
                                q,
                            )?;
                            cases += 1;
                            if v != CycInt::from_int(expected as i128) {
                                ok = false;
                                witness.note(format!("(a,b,m,n,q)=({a},{b},{m},{n},{q})"));
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "squarefree_block_a_function",
            ok,
            cases,
            witness.detail("S(a, b·m, n, 1, q, q) = A((n,q), (m,q), q) on squarefree q"),
        ));
    }

    // Complete-sum identity for classical sums.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for d1 in 1..=20u64 {
            for n1 in 1..=20i64 {
                for n2 in 1..=20i64 {
                    for m in 1..=3u32 {
                        cases += 1;
                        if !complete_sum_identity_check(n1, n2, d1, m) {
                            ok = false;
                            witness.note(format!("(n1,n2,D1,M)=({n1},{n2},{d1},{m})"));
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "complete_sum_identity",
            ok,
            cases,
            witness.detail("Σ_{D2 ≤ M·D1} S(n1,D2;D1)S(n2,D2;D1) = M·D1·c_{D1}(n1−n2)"),
        ));
    }

    Ok(checks)
}

// ---------------------------------------------------------------------------
// fourier
// ---------------------------------------------------------------------------

fn fourier_checks(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let cap = cfg.cap;
    let mut checks = Vec::new();

    // The two exact transform paths agree.
    {
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for (d1, d2) in [(1u64, 1u64), (4, 4), (2, 8), (4, 6), (6, 9), (8, 12), (9, 3), (5, 10)] {
            let Some(table) = skip_cap(TermTable::build(d1, d2, cap), &mut skipped)? else {
                continue;
            };
            for a in (0..d1.max(1)).filter(|&a| gcd_u(a, d1) == 1 || d1 == 1) {
                for b in (0..d2.max(1)).filter(|&b| gcd_u(b, d2) == 1 || d2 == 1) {
                    let Some(plane) =
                        skip_cap(ShatPlane::naive(a as i64, b as i64, d1, d2, cap), &mut skipped)?
                    else {
                        continue;
                    };
                    for t in 0..d1 as i64 {
                        for u in 0..d2 as i64 {
                            cases += 1;
                            if plane.value(t, u) != &table.shat_exact(a as i64, b as i64, t, u) {
                                ok = false;
                                witness.note(format!(
                                    "(a,b,t,u,D1,D2)=({a},{b},{t},{u},{d1},{d2})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "transform_paths_agree",
            ok,
            cases,
            with_skips(
                witness.detail("definition-level transform vs orthogonality-collapsed term table"),
                skipped,
            ),
        ));
    }

    // Fourier inversion reconstructs the sum exactly.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for d1 in 1..=6u64 {
            for d2 in 1..=6u64 {
                let l = lcm_u(d1, d2);
                let units1: Vec<u64> = if d1 == 1 { vec![1] } else { (1..d1).filter(|&a| gcd_u(a, d1) == 1).collect() };
                let units2: Vec<u64> = if d2 == 1 { vec![1] } else { (1..d2).filter(|&b| gcd_u(b, d2) == 1).collect() };
                for &a in &units1 {
                    for &b in &units2 {
                        let (a, b) = (a as i64, b as i64);
                        let plane = ShatPlane::naive(a, b, d1, d2, cap)?;
                        for m in 0..d2 as i64 {
                            for n in 0..d1 as i64 {
                                let mut acc = CycInt::zero();
                                for t in 0..d1 as i64 {
                                    for u in 0..d2 as i64 {
                                        let phase = CycInt::root_of_unity(
                                            t * n * (l / d1) as i64 + u * m * (l / d2) as i64,
                                            l,
                                        );
                                        acc = acc.try_add(&phase.try_mul(plane.value(t, u))?)?;
                                    }
                                }
                                cases += 1;
                                if acc != crate::gl3::s_long_raw(a, m, n, b, d1, d2, cap)? {
                                    ok = false;
                                    witness.note(format!(
                                        "(a,b,m,n,D1,D2)=({a},{b},{m},{n},{d1},{d2})"
                                    ));
                                }
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "fourier_inversion",
            ok,
            cases,
            witness.detail("Σ_{t,u} e(tn/D1 + um/D2)·Ŝ = S for D1, D2 ≤ 6"),
        ));
    }

    // Closed forms against the definition-level transform, all valid
    // argument tuples, p ∈ {2, 3}, exponents ≤ 3, k ≠ l.
    {
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut ok = true;
        let mut worst: Option<String> = None;
        for p in [2u64, 3] {
            for k in 0..=3u32 {
                for l in 0..=3u32 {
                    if k == l && k >= 2 {
                        continue;
                    }
                    let (d1, d2) = (p.pow(k), p.pow(l));
                    let units1: Vec<u64> = if d1 == 1 { vec![1] } else { (1..d1).filter(|&a| gcd_u(a, d1) == 1).collect() };
                    let units2: Vec<u64> = if d2 == 1 { vec![1] } else { (1..d2).filter(|&b| gcd_u(b, d2) == 1).collect() };
                    for &a in &units1 {
                        for &b in &units2 {
                            let Some(plane) = skip_cap(
                                ShatPlane::naive(a as i64, b as i64, d1, d2, cap),
                                &mut skipped,
                            )?
                            else {
                                continue;
                            };
                            for t in 0..d1 as i64 {
                                for u in 0..d2 as i64 {
                                    let args = ShatArgs::new(a as i64, u, t, b as i64, d1, d2)?;
                                    let ShatEval::Value(v) = shat_closed_form(&args)? else {
                                        ok = false;
                                        continue;
                                    };
                                    cases += 1;
                                    if &v != plane.value(t, u) && worst.is_none() {
                                        ok = false;
                                        worst =
                                            Some(format!("p={p} k={k} l={l} a={a} b={b} t={t} u={u}"));
                                    }
                                }
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "closed_forms_exact",
            ok,
            cases,
            with_skips(
                worst.unwrap_or_else(|| "all prime-power closed forms match the definition".into()),
                skipped,
            ),
        ));
    }

    // Valuation decomposition: parts sum to the transform computed on the
    // independent definitional path, V_0 = 0, and the vanishing pattern
    // V_j = 0 for j < ν < k; at t ≡ u ≡ 0 the middle parts collapse to
    // p^{k-1} at j = k−1.
    {
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut ok = true;
        let mut worst: Option<String> = None;
        for (p, k) in [(2u64, 2u32), (2, 3), (3, 2), (3, 3)] {
            let d = p.pow(k);
            let Some(table) = skip_cap(TermTable::build(d, d, cap), &mut skipped)? else {
                continue;
            };
            let units: Vec<u64> = (1..d).filter(|&a| gcd_u(a, d) == 1).collect();
            let pairs: Vec<(u64, u64)> = if d <= 9 {
                units
                    .iter()
                    .flat_map(|&a| units.iter().map(move |&b| (a, b)))
                    .collect()
            } else {
                // a deterministic sample of twist pairs at the largest size
                vec![
                    (1, 1),
                    (2, 5),
                    (units[units.len() - 1], 13 % d),
                    (4 % d, units[units.len() - 2]),
                    (1, units[units.len() - 1]),
                    (5 % d, 1),
                ]
            };
            for &(a, b) in &pairs {
                let Some(plane) =
                    skip_cap(ShatPlane::naive(a as i64, b as i64, d, d, cap), &mut skipped)?
                else {
                    continue;
                };
                for t in 0..d as i64 {
                    for u in 0..d as i64 {
                        let parts = table.v_parts(a as i64, b as i64, t, u, p, k);
                        let mut total = CycInt::zero();
                        for part in &parts {
                            total = total.try_add(part)?;
                        }
                        cases += 1;
                        let nu = nu_p_residue(&ResidueClass::new(t, d), p);
                        let mut this_ok = &total == plane.value(t, u) && parts[0].is_zero();
                        for (j, part) in parts.iter().enumerate() {
                            if (j as u32) < nu && nu < k && !part.is_zero() {
                                this_ok = false;
                            }
                        }
                        if t == 0 && u == 0 {
                            for j in 1..k {
                                let expected = if j == k - 1 {
                                    CycInt::from_int(p.pow(k - 1) as i128)
                                } else {
                                    CycInt::zero()
                                };
                                if parts[j as usize] != expected {
                                    this_ok = false;
                                }
                            }
                        }
                        if !this_ok {
                            ok = false;
                            if worst.is_none() {
                                worst = Some(format!("p={p} k={k} a={a} b={b} t={t} u={u}"));
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "valuation_decomposition",
            ok,
            cases,
            with_skips(
                worst.unwrap_or_else(|| "Σ V_j = Ŝ, V_0 = 0, vanishing pattern verified".into()),
                skipped,
            ),
        ));
    }

    // Reversed-moduli symmetry of the transform.
    {
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for (d1, d2) in [(2u64, 9u64), (9, 2), (4, 4), (6, 6), (3, 8), (12, 5), (1, 7), (5, 5)] {
            let (Some(fwd), Some(rev)) = (
                skip_cap(TermTable::build(d1, d2, cap), &mut skipped)?,
                skip_cap(TermTable::build(d2, d1, cap), &mut skipped)?,
            ) else {
                continue;
            };
            let units1: Vec<i64> = if d1 == 1 { vec![1] } else { (1..d1).filter(|&a| gcd_u(a, d1) == 1).map(|a| a as i64).collect() };
            let units2: Vec<i64> = if d2 == 1 { vec![1] } else { (1..d2).filter(|&b| gcd_u(b, d2) == 1).map(|b| b as i64).collect() };
            for &a in units1.iter().take(3) {
                for &b in units2.iter().take(3) {
                    for t in 0..d1 as i64 {
                        for u in 0..d2 as i64 {
                            cases += 1;
                            if fwd.shat_exact(a, b, t, u) != rev.shat_exact(b, a, u, t) {
                                ok = false;
                                witness.note(format!(
                                    "(a,u,t,b,D1,D2)=({a},{u},{t},{b},{d1},{d2})"
                                ));
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "reverse_moduli",
            ok,
            cases,
            with_skips(witness.detail("Ŝ(a,u,t,b,D1,D2) = Ŝ(b,t,u,a,D2,D1)"), skipped),
        ));
    }

    // Two-block factorization of the transform.
    {
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for (c1, c2, e1, e2) in [
            (2u64, 2u64, 3u64, 3u64),
            (4, 2, 3, 9),
            (2, 4, 9, 3),
            (3, 3, 4, 2),
            (4, 1, 3, 5),
            (1, 1, 5, 6),
            (9, 3, 2, 4),
        ] {
            let d1 = c1 * e1;
            let units: Vec<i64> = if d1 == 1 { vec![1] } else { (1..d1).filter(|&a| gcd_u(a, d1) == 1).map(|a| a as i64).collect() };
            for &a in units.iter().take(3) {
                for u in 0..(c2 * e2).min(6) as i64 {
                    for t in 0..d1.min(6) as i64 {
                        let Some(good) = skip_cap(
                            shat_factorization_check(a, u, t, c1, e1, c2, e2, cap),
                            &mut skipped,
                        )?
                        else {
                            continue;
                        };
                        cases += 1;
                        if !good {
                            ok = false;
                            witness.note(format!(
                                "(a,u,t,C1,E1,C2,E2)=({a},{u},{t},{c1},{e1},{c2},{e2})"
                            ));
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "transform_block_factorization",
            ok,
            cases,
            with_skips(
                witness.detail("Ŝ over C·E moduli splits into twisted C- and E-block transforms"),
                skipped,
            ),
        ));
    }

    let _ = cfg;
    Ok(checks)
}

// ---------------------------------------------------------------------------
// rbound
// ---------------------------------------------------------------------------

fn rbound_checks(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let cap = cfg.cap;
    let mut checks = Vec::new();

    // The prime-power inequality, its sharp special cases, the two
    // definition forms of R, and the divisor-form constant, over the grid.
    {
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut main_ok = true;
        let mut special_ok = true;
        let mut defs_ok = true;
        let mut sharper_all = true;
        let mut main_witness = Witness::new();
        let mut special_witness = Witness::new();
        let mut defs_witness = Witness::new();
        let mut divisor_max: f64 = 0.0;
        for p in [2u64, 3, 5] {
            for k in 0..=3u32 {
                for l in 0..=3u32 {
                    let Some(rep) = skip_cap(rbound_check(p, k, l, cap), &mut skipped)? else {
                        continue;
                    };
                    cases += p.pow(k);
                    if !rep.main_bound_holds {
                        main_witness.note(format!("(p,k,l)=({p},{k},{l})"));
                    }
                    if !rep.special_case_bound_holds {
                        special_witness.note(format!("(p,k,l)=({p},{k},{l})"));
                    }
                    main_ok &= rep.main_bound_holds;
                    special_ok &= rep.special_case_bound_holds;
                    sharper_all &= rep.sharper_variant_held;
                    divisor_max = divisor_max.max(rep.divisor_form_max_ratio);
                    let table = RTable::compute(p.pow(k), p.pow(l), cap)?;
                    for t in 0..p.pow(k) as i64 {
                        if (table.r(t) - table.r_alternate(t)).abs() > 1e-8 {
                            defs_ok = false;
                            defs_witness.note(format!("(p,k,l,t)=({p},{k},{l},{t})"));
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "r_prime_power_bound",
            main_ok,
            cases,
            with_skips(
                main_witness.detail("R(t,p^k,p^l) ≤ (k+1)p^l + p^{ν+l}·δ(3ν ≤ 2 min(k,l))"),
                skipped,
            ),
        ));
        checks.push(CheckResult::new(
            "r_special_case_bounds",
            special_ok,
            cases,
            special_witness.detail("sharper closed-form bounds for min(k,l) ≤ 1"),
        ));
        checks.push(CheckResult::new(
            "r_definition_forms_agree",
            defs_ok,
            cases,
            defs_witness.detail("max over (a,b) equals the single-twist restricted maximum"),
        ));
        let div_ok = divisor_max <= calibration::RBOUND_DIVISOR_FORM_MAX * (1.0 + 1e-9);
        checks.push(CheckResult::new(
            "r_divisor_form_constant",
            div_ok,
            cases,
            format!(
                "max R/(D2·Σ d) = {divisor_max:.12e}, recorded ceiling {:.12e}; sharper k≠l variant held: {sharper_all}",
                calibration::RBOUND_DIVISOR_FORM_MAX
            ),
        ));
    }

    // Duality R'(u, D1, D2) = R(u, D2, D1) on the small grid.
    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut max_gap: f64 = 0.0;
        let mut skipped = 0u64;
        for d1 in 1..=9u64 {
            for d2 in 1..=9u64 {
                let (Some(fwd), Some(rev)) = (
                    skip_cap(RTable::compute(d1, d2, cap), &mut skipped)?,
                    skip_cap(RTable::compute(d2, d1, cap), &mut skipped)?,
                ) else {
                    continue;
                };
                for u in 0..d2 as i64 {
                    cases += 1;
                    let gap = (fwd.r_prime(u) - rev.r(u)).abs();
                    max_gap = max_gap.max(gap);
                    if gap > 1e-8 {
                        ok = false;
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "r_duality",
            ok,
            cases,
            with_skips(format!("max |R'(u,D1,D2) − R(u,D2,D1)| = {max_gap:.3e}"), skipped),
        ));
    }

    // Joint multiplicativity over coprime block pairs with moduli ≤ 36.
    {
        let mut cases = 0u64;
        let mut skipped = 0u64;
        let mut ok = true;
        let mut max_gap: f64 = 0.0;
        let mut cache: BTreeMap<(u64, u64), RTable> = BTreeMap::new();
        for d1 in 1..=36u64 {
            for d2 in 1..=36u64 {
                for c1 in divisors(d1) {
                    let e1 = d1 / c1;
                    for c2 in divisors(d2) {
                        let e2 = d2 / c2;
                        if gcd_u(c1 * c2, e1 * e2) != 1 || c1 * c2 == 1 || e1 * e2 == 1 {
                            continue;
                        }
                        let mut available = true;
                        for key in [(d1, d2), (c1, c2), (e1, e2)] {
                            if let std::collections::btree_map::Entry::Vacant(slot) =
                                cache.entry(key)
                            {
                                match skip_cap(RTable::compute(key.0, key.1, cap), &mut skipped)? {
                                    Some(t) => {
                                        slot.insert(t);
                                    }
                                    None => available = false,
                                }
                            }
                        }
                        if !available {
                            continue;
                        }
                        for t in 0..d1 as i64 {
                            cases += 1;
                            let full = cache[&(d1, d2)].r(t);
                            let prod = cache[&(c1, c2)].r(t) * cache[&(e1, e2)].r(t);
                            let gap = (full - prod).abs();
                            max_gap = max_gap.max(gap);
                            if gap > 1e-8 {
                                ok = false;
                            }
                        }
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "r_multiplicativity",
            ok,
            cases,
            with_skips(
                format!("max |R(t,C1E1,C2E2) − R(t,C1,C2)·R(t,E1,E2)| = {max_gap:.3e}"),
                skipped,
            ),
        ));
    }

    let _ = cfg;
    Ok(checks)
}

// ---------------------------------------------------------------------------
// decomposition
// ---------------------------------------------------------------------------

fn decomposition_checks(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let mut checks = Vec::new();

    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for d1 in 1..=200u64 {
            for d2 in 1..=200u64 {
                let dec = decompose_moduli(d1, d2);
                cases += 1;
                if dec.q * dec.h1 * dec.e1 != d1
                    || dec.q * dec.h2 * dec.e2 != d2
                    || dec.validate(d1, d2).is_err()
                {
                    ok = false;
                    witness.note(format!("(D1,D2)=({d1},{d2})"));
                }
                if dec.h1 > 1 {
                    let ok_split = match h_split(dec.h1, dec.h2) {
                        Ok(s) => s.j1 * s.k1 * s.l1 == dec.h1 && s.j2 * s.k2 * s.l2 == dec.h2,
                        Err(_) => false,
                    };
                    if !ok_split {
                        ok = false;
                        witness.note(format!("h-split at (D1,D2)=({d1},{d2})"));
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "moduli_decomposition_reconstructs",
            ok,
            cases,
            witness.detail("q·h·E reassembly, invariants, and the h-pair class split, D ≤ 200"),
        ));
    }

    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut max_ratio: f64 = 0.0;
        for q in (1..=210u64).filter(|&q| factor(q).is_squarefree()) {
            for d1 in divisors(q) {
                for d2 in divisors(q) {
                    let a = a_function(d1, d2, q)?;
                    let g = gcd_u(d1, d2);
                    let ratio = a as f64 * (d1 * d2) as f64 / (q as f64 * (g * g * g) as f64);
                    max_ratio = max_ratio.max(ratio);
                    cases += 1;
                }
            }
        }
        let ok2 = max_ratio <= calibration::ABOUND_RATIO_MAX * (1.0 + 1e-9);
        ok &= ok2;
        checks.push(CheckResult::new(
            "a_function_ratio",
            ok,
            cases,
            format!(
                "max A·d1·d2/(q·(d1,d2)³) = {max_ratio:.12e}, recorded ceiling {:.12e}",
                calibration::ABOUND_RATIO_MAX
            ),
        ));
    }

    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for (p, kmax) in [(2u64, 6u32), (3, 4), (5, 3)] {
            for k in 1..=kmax {
                let pk = p.pow(k);
                for t in 1..=pk {
                    let vi = nu_p(t as i64, p);
                    let vr = nu_p_residue(&ResidueClass::new(t as i64, pk), p);
                    cases += 1;
                    if (vi < k && vi != vr) || (vi >= k && vr != k) {
                        ok = false;
                        witness.note(format!("(p,k,t)=({p},{k},{t})"));
                    }
                }
            }
        }
        checks.push(CheckResult::new(
            "valuation_consistency",
            ok,
            cases,
            witness.detail("integer valuation vs capped residue valuation"),
        ));
    }

    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for n in 1..=500u64 {
            let scan = (1..=n).filter(|&i| gcd_u(i, n) == 1).count() as u64;
            cases += 1;
            if euler_phi(n) != scan {
                ok = false;
                witness.note(format!("phi({n})"));
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0xc47);
        for _ in 0..200 {
            let moduli = [2u64, 3, 5, 7, 11];
            let parts: Vec<ResidueClass> = moduli
                .iter()
                .map(|&m| ResidueClass::new(rng.gen_range(0..m) as i64, m))
                .collect();
            let r = crt_combine(&parts)?;
            cases += 1;
            for part in &parts {
                if r.value() % part.modulus() != part.value() {
                    ok = false;
                    witness.note(format!(
                        "crt residue mismatch at modulus {}",
                        part.modulus()
                    ));
                }
            }
        }
        checks.push(CheckResult::new(
            "euler_phi_and_crt",
            ok,
            cases,
            witness.detail("totient against the coprimality scan; random residue recombination"),
        ));
    }

    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for q in [1u64, 2, 6, 12, 30, 210, 8] {
            for x in [100u64, 1000, 10_000] {
                let fast = same_prime_support_count(q, x);
                let scan = (1..=x)
                    .filter(|&n| {
                        factor(n).primes().collect::<Vec<_>>()
                            == factor(q).primes().collect::<Vec<_>>()
                    })
                    .count() as u64;
                cases += 1;
                if fast != scan {
                    ok = false;
                    witness.note(format!("(q,X)=({q},{x})"));
                }
            }
        }
        checks.push(CheckResult::new(
            "same_prime_support_count",
            ok,
            cases,
            witness.detail("recursive exponent enumeration vs the full scan, X ≤ 10^4"),
        ));
    }

    {
        let mut cases = 0u64;
        let mut ok = true;
        let mut witness = Witness::new();
        for c in 1..=60u64 {
            for n in 0..c as i64 {
                cases += 1;
                if ramanujan_sum(n, c).as_int().is_none() {
                    ok = false;
                    witness.note(format!("(n,c)=({n},{c})"));
                }
            }
        }
        checks.push(CheckResult::new(
            "ramanujan_rational_integrality",
            ok,
            cases,
            witness.detail("every Ramanujan sum reduces to a degree-0 cyclotomic integer"),
        ));
    }

    Ok(checks)
}

// ---------------------------------------------------------------------------
// bilinear (folded into `all`)
// ---------------------------------------------------------------------------

fn bilinear_checks(cfg: &SuiteConfig) -> Result<Vec<CheckResult>> {
    let cap = cfg.cap;
    let mut checks = Vec::new();

    // gcd-strata additivity on the X1 = X2 = 6, N = 8 grid.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5712a);
        let alpha = CoeffSeq::random_signs(8, &mut rng);
        let beta = CoeffSeq::random_phases(8, &mut rng);
        let mut gamma = GammaSeq::new(6, 6);
        for d1 in 1..=6u64 {
            for d2 in 1..=6u64 {
                let theta = rng.gen_range(0.0..std::f64::consts::TAU);
                gamma.set(d1, d2, Complex64::new(theta.cos(), theta.sin()))?;
            }
        }
        let rep = gcd_stratification(&alpha, &beta, &gamma, cap)?;
        let ok = rep.additivity_gap < 1e-8 && rep.refactor_gap < 1e-8;
        checks.push(CheckResult::new(
            "strata_additivity",
            ok,
            36,
            format!(
                "additivity gap {:.3e}, coprime refactorization gap {:.3e}",
                rep.additivity_gap, rep.refactor_gap
            ),
        ));
    }

    // Linearity of the form in α and in β (structural, checked in floats).
    {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x11b);
        let a1 = CoeffSeq::random_phases(5, &mut rng);
        let a2 = CoeffSeq::random_phases(5, &mut rng);
        let beta = CoeffSeq::random_signs(5, &mut rng);
        let mut gamma = GammaSeq::new(4, 4);
        for d1 in 1..=4u64 {
            for d2 in 1..=4u64 {
                gamma.set(d1, d2, Complex64::new(0.7, -0.3))?;
            }
        }
        let mut sum_seq = CoeffSeq::new(5);
        for n in 1..=5 {
            sum_seq.set(n, a1.get(n) + a2.get(n))?;
        }
        let lhs = bilinear_s(&sum_seq, &beta, &gamma, (1, 1), cap)?;
        let rhs = bilinear_s(&a1, &beta, &gamma, (1, 1), cap)?
            + bilinear_s(&a2, &beta, &gamma, (1, 1), cap)?;
        let gap = (lhs - rhs).norm();
        checks.push(CheckResult::new(
            "bilinear_linearity",
            gap < 1e-8,
            1,
            format!("|S(α1+α2) − S(α1) − S(α2)| = {gap:.3e}"),
        ));
    }

    // Seed-pinned regression experiments against the recorded calibration
    // ceilings; the H = X degeneration identity is exact.
    {
        let mut max2: f64 = 0.0;
        let mut max3: f64 = 0.0;
        let mut degeneration_exact = true;
        let mut sieve_ratio_max: f64 = 0.0;
        let mut cases = 0u64;
        for &n in calibration::EXPERIMENT_N_GRID {
            for &x in calibration::EXPERIMENT_X_GRID {
                let t2 = theorem2_experiment(
                    n,
                    x,
                    x,
                    calibration::EXPERIMENT_TRIALS,
                    calibration::CALIBRATION_SEED,
                    cap,
                )?;
                for rep in &t2 {
                    max2 = max2.max(rep.ratio);
                    let mb = rep.rhs_components["m_beta"];
                    // dense unit-modulus sequences have ‖β‖² = N
                    sieve_ratio_max =
                        sieve_ratio_max.max(mb / (((x * x) + n) as f64 * n as f64));
                    cases += 1;
                }
                for h in [1u64, (x / 2).max(1), x] {
                    let t3 = theorem3_experiment(
                        n,
                        x,
                        x,
                        h,
                        h,
                        calibration::EXPERIMENT_TRIALS,
                        calibration::CALIBRATION_SEED,
                        cap,
                    )?;
                    for (rep3, rep2) in t3.iter().zip(t2.iter()) {
                        max3 = max3.max(rep3.ratio);
                        cases += 1;
                        if h == x {
                            let plain = rep2.rhs_components["product_form"];
                            let windowed = rep3.rhs_components["window_product_form"];
                            if windowed.to_bits() != (2.0 * plain).to_bits() {
                                degeneration_exact = false;
                            }
                        }
                    }
                }
            }
        }
        let ok2 = max2.is_finite() && max2 <= calibration::THEOREM2_RATIO_MAX * (1.0 + 1e-9);
        checks.push(CheckResult::new(
            "theorem2_ratio_regression",
            ok2,
            cases,
            format!(
                "max |S|/[(X1X2)·(M(α)M(β))^(1/2)] = {max2:.12e}, recorded ceiling {:.12e}",
                calibration::THEOREM2_RATIO_MAX
            ),
        ));
        let ok3 = max3.is_finite() && max3 <= calibration::THEOREM3_RATIO_MAX * (1.0 + 1e-9);
        checks.push(CheckResult::new(
            "theorem3_ratio_regression",
            ok3,
            cases,
            format!(
                "max windowed-bound ratio = {max3:.12e}, recorded ceiling {:.12e}",
                calibration::THEOREM3_RATIO_MAX
            ),
        ));
        checks.push(CheckResult::new(
            "window_degeneration_identity",
            degeneration_exact,
            cases,
            "H = X reproduces the product-form denominator exactly (factor 2 structural)".into(),
        ));
        checks.push(CheckResult::new(
            "large_sieve_ratio_observation",
            true,
            cases,
            format!("max M(β)/((X1²+N)·‖β‖²) = {sieve_ratio_max:.12e} (report only)"),
        ));
    }

    // γ = δ_(p,p): the equal-prime stratum against the case-table closed
    // form.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x99d);
        let mut ok = true;
        let mut cases = 0u64;
        let mut witness = Witness::new();
        for p in [2u64, 3, 5] {
            let alpha = CoeffSeq::random_phases(2 * p, &mut rng);
            let beta = CoeffSeq::random_signs(2 * p, &mut rng);
            let mut gamma = GammaSeq::new(p, p);
            gamma.set(p, p, Complex64::new(1.0, 0.0))?;
            let rep = gcd_stratification(&alpha, &beta, &gamma, cap)?;
            let split = |seq: &CoeffSeq| {
                let mut div = Complex64::new(0.0, 0.0);
                let mut cop = Complex64::new(0.0, 0.0);
                for (n, z) in seq.iter() {
                    if n % p == 0 {
                        div += z;
                    } else {
                        cop += z;
                    }
                }
                (div, cop)
            };
            let (a0, a1) = split(&alpha);
            let (b0, b1) = split(&beta);
            let expected = (p * p - p + 1) as f64 * a0 * b0
                + (p + 1) as f64 * a1 * b1
                + a0 * b1
                + a1 * b0;
            let got = Complex64::new(rep.equal_prime.0, rep.equal_prime.1);
            cases += 1;
            if (got - expected).norm() > 1e-8 {
                ok = false;
                witness.note(format!("p={p}"));
            }
        }
        checks.push(CheckResult::new(
            "equal_prime_stratum_closed_form",
            ok,
            cases,
            witness.detail("δ_(p,p) stratum equals its case-table-weighted closed form"),
        ));
    }

    // M(β) against its independent Ramanujan-sum expansion.
    {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x31c);
        let beta = CoeffSeq::random_signs(20, &mut rng);
        let direct = m_beta(&beta, 5, 5, None);
        let mut oracle = 0.0f64;
        for q in 1..=5u64 {
            for d1 in divisors(q) {
                for c in (1..=5 / q).filter(|&c| gcd_u(c, q) == 1) {
                    let mut csum = Complex64::new(0.0, 0.0);
                    for (n, bn) in beta.iter().filter(|&(n, _)| gcd_u(n, q) == d1) {
                        for (n2, bn2) in beta.iter().filter(|&(n, _)| gcd_u(n, q) == d1) {
                            let r = ramanujan_sum(n as i64 - n2 as i64, c)
                                .as_int()
                                .expect("rational integer") as f64;
                            csum += bn * bn2.conj() * r;
                        }
                    }
                    oracle += d1 as f64 / q as f64 * csum.re;
                }
            }
        }
        let gap = (direct - oracle).abs();
        checks.push(CheckResult::new(
            "m_beta_independent_oracle",
            gap < 1e-8,
            1,
            format!("|direct − Ramanujan-expansion| = {gap:.3e}"),
        ));
    }

    let _ = is_prime(2);
    Ok(checks)
}
