//! Calibration constants recorded from the first verified run.
//!
//! The asymptotic bounds this library checks hide unspecified constants (and
//! epsilon powers, set to zero here). At desk scale the honest statement is
//! a ratio ceiling: each constant below is the maximum ratio observed on the
//! pinned grid with the pinned seed, and the suites assert that reruns never
//! exceed it. Regenerate with `gl3sum experiment` / `gl3sum verify all` if
//! the grids change, and update the values in one commit with the change.

/// Seed pinning the regression experiments (independent of `--seed`, which
/// only steers the sampling-style checks).
pub const CALIBRATION_SEED: u64 = 1;

pub const EXPERIMENT_N_GRID: &[u64] = &[4, 8, 16];
pub const EXPERIMENT_X_GRID: &[u64] = &[4, 6, 8];
pub const EXPERIMENT_TRIALS: u32 = 10;

/// max |S| / [(X1·X2)·(M(α)·M(β))^(1/2)] over the pinned grid.
pub const THEOREM2_RATIO_MAX: f64 = 0.268_934_057_170_318_76;

/// max |S| over the windowed denominator, H1 = H2 ∈ {1, X/2, X}.
pub const THEOREM3_RATIO_MAX: f64 = 0.074_829_618_856_918_58;

/// max A(d1,d2,q)·d1·d2 / (q·(d1,d2)³) over squarefree q ≤ 210.
pub const ABOUND_RATIO_MAX: f64 = 2.742_857_142_857_143;

/// max |S(1,m,n,1,D1,D2)| / [(D1 D2)^(1/2)·((D1,D2)·(mn,[D1,D2]))^(1/2)]
/// over D1, D2 ≤ 24, m, n ∈ {1,2,3,5}.
pub const INDIVIDUAL_BOUND_RATIO_MAX: f64 = 3.385_884_811_581_199;

/// max R(t, p^k, p^l) / (p^l · Σ_{p^j | t, 3j ≤ 2 min(k,l)} p^j) over
/// p ∈ {2,3,5}, k, l ≤ 3.
pub const RBOUND_DIVISOR_FORM_MAX: f64 = 1.000_000_000_000_000_2;
