//! Flowing along the catalog subalgebras: the time-1 map of a real
//! combination of commuting fields is independent of the order in which
//! the coefficients are combined, and stays on the model hypersurface.

use crtubes::engine::{exp_point, flow_with_target};
use crtubes::models::tube_catalog;
use num_complex::Complex64;

fn main() {
    let spec = &tube_catalog(2).unwrap()[0];
    let a: Vec<Complex64> = spec
        .base_point
        .iter()
        .map(|c| c.to_complex64())
        .collect();

    // One field at a time versus the combined field.
    let coeffs = [0.3, -0.7];
    let combined = exp_point(&spec.subalgebra, &coeffs, &a, 1e-9).unwrap();
    let mut sequential = a.clone();
    for (xi, &t) in spec.subalgebra.basis.iter().zip(&coeffs) {
        sequential = flow_with_target(xi, &sequential, t, 1e-9, Some(&spec.target))
            .unwrap()
            .endpoint;
    }
    let residual = spec.target.eval_f64(&combined).abs();
    let diff: f64 = combined
        .iter()
        .zip(&sequential)
        .map(|(u, v)| (u - v).norm())
        .fold(0.0, f64::max);
    println!("case {}:", spec.case.tag());
    println!("  combined flow endpoint:   {combined:?}");
    println!("  sequential flow endpoint: {sequential:?}");
    println!("  difference {diff:.2e}, on-surface residual {residual:.2e}");
}
