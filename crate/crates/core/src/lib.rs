//! Exact evaluation of GL(3) long-element Kloosterman sums, their partial
//! Fourier transforms, the multiplicative majorant R, and the bilinear form
//! these sums generate, plus verification suites that check every identity
//! exactly and ratio experiments against the associated bounds.

pub mod arith;
pub mod bilinear;
pub mod calibration;
pub mod cyclotomic;
pub mod error;
pub mod gl3;
pub mod suites;
pub mod transforms;

pub use arith::{Factorization, ResidueClass};
pub use bilinear::{BoundReport, CoeffSeq, CoeffStyle, GammaSeq, StrataReport};
pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use gl3::{Gl3Args, ModuliDecomposition, NaiveCap};
pub use suites::{run_suite, CheckResult, Suite, SuiteConfig, SuiteReport};
pub use transforms::{RValue, ShatArgs, ShatEval};
