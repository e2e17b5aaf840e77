//! Shared fixtures for the evaluator benchmarks.

use gl3sum::gl3::Gl3Args;

/// Moduli pairs spanning the structural cases: coprime, prime × prime
/// power, mixed blocks, and an irreducible prime-power block.
pub fn bench_cases() -> Vec<Gl3Args> {
    [
        (1i64, 1i64, 1i64, 1i64, 15u64, 8u64),
        (1, 1, 1, 1, 60, 36),
        (1, 2, 3, 1, 24, 24),
        (1, 1, 1, 1, 27, 27),
    ]
    .into_iter()
    .map(|(m1, m2, n1, n2, d1, d2)| Gl3Args::new(m1, m2, n1, n2, d1, d2).expect("valid args"))
    .collect()
}
