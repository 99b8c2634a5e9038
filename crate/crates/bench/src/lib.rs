//! Benchmark fixtures shared by the criterion targets.

use jcpurity::{Evolution, ModelKind, ModelParams, DEFAULT_TAIL_BOUND};

/// The figure configuration: `alpha = 7`, `f = 1e-7`, `g = 1`.
pub fn figure_evolution(model: ModelKind, beta: f64) -> Evolution {
    let params = ModelParams::new(model, 7.0, beta, 1e-7, 1.0).expect("valid parameters");
    Evolution::new(params, DEFAULT_TAIL_BOUND).expect("alpha = 7 converges")
}
