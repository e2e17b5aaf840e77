//! The structured evaluator must beat the definition-level loop by a wide
//! margin on composite moduli; (60, 36) is the pinned comparison point.

use std::time::Instant;

use gl3sum::gl3::{s_long_fast, s_long_naive, Gl3Args, NaiveCap};

fn best_of<F: FnMut() -> gl3sum::CycInt>(reps: u32, mut f: F) -> (f64, gl3sum::CycInt) {
    let mut best = f64::INFINITY;
    let mut value = f();
    for _ in 0..reps {
        let t0 = Instant::now();
        value = f();
        best = best.min(t0.elapsed().as_secs_f64());
    }
    (best, value)
}

#[test]
fn fast_is_at_least_ten_times_faster_on_60_36() {
    let cap = NaiveCap::default();
    let args = Gl3Args::new(1, 1, 1, 1, 60, 36).unwrap();
    let (t_naive, v_naive) = best_of(3, || s_long_naive(&args, cap).unwrap());
    let (t_fast, v_fast) = best_of(3, || s_long_fast(&args, cap).unwrap());
    assert_eq!(v_naive, v_fast);
    let speedup = t_naive / t_fast;
    println!("naive {t_naive:.6}s, fast {t_fast:.6}s, speedup {speedup:.1}x");
    assert!(
        speedup >= 10.0,
        "expected at least 10x speedup, measured {speedup:.1}x"
    );
}
