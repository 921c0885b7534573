//! Benchmark inputs shared by the criterion harness.

use whitney_core::{parse_polynomial, Ideal, Ring, RingContext};

/// Projective ring `Q[x,y,z,w]` with `w` homogenizing.
pub fn xyzw() -> Ring {
    RingContext::with_homogenizing(&["x", "y", "z", "w"], "w").expect("valid ring")
}

pub fn ideal(ring: &Ring, gens: &[&str]) -> Ideal {
    Ideal::new(ring, gens.iter().map(|g| parse_polynomial(g, ring).expect("valid input"))).expect("same ring")
}

/// Projective closure of the shifted Xano quartic times the plane `y = w`.
pub const XANO: &str = "(x^4+(z+w)^3*w-(y+2*w)*(z+w)^2*w)*(y-w)";

/// Projective closure of the perturbed teardrop boundary.
pub const TEARDROP: &str =
    "(z^2*w+y^2*w-(x+w)*(x-w)^2)*(y-5*(x-w))*(y+5*(x-w))+1/10*w*(x-w)*y*z^2";
