//! Shared inputs for the benchmarks.

use jetloci::{Pipeline, Polynomial};

/// Plane curve germs of increasing resolution size.
pub const CURVES: [&str; 4] = ["x*y", "x^2+y^3", "x^3+y^4", "x^3+y^7"];

pub fn pipeline(f: &str) -> Pipeline {
    Pipeline::from_polynomial(&Polynomial::parse(f).expect("fixture parses")).expect("fixture resolves")
}

pub fn polynomial(f: &str) -> Polynomial {
    Polynomial::parse(f).expect("fixture parses")
}
