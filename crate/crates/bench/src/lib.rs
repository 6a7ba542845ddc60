//! Fixtures shared by the benchmarks.

use std::sync::Arc;

use aaanep::helmholtz::{geometry_by_name, make_nep, HelmholtzNep, ProblemKind};
use aaanep::nep::{MatrixFunction, ScalarizedResolvent};

/// Interior kite problem with `n` nodes.
pub fn kite(n: usize) -> HelmholtzNep {
    let g = geometry_by_name("kite", None, None).expect("builtin geometry");
    make_nep(&g, ProblemKind::Interior, n).expect("valid resolution")
}

pub fn kite_resolvent(n: usize, seed: u64) -> ScalarizedResolvent {
    let f: Arc<dyn MatrixFunction> = Arc::new(kite(n));
    ScalarizedResolvent::new(f, seed)
}
