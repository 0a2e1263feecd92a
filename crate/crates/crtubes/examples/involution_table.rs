//! Classification table of antilinear involutions of the hyperquadric
//! S_{p,q}: types I-IV with (eps, delta), the exact matrix identities,
//! fixed-set dimensions on the m-plane manifold, and fixed subalgebras.

use crtubes::models::{fixed_subalgebra, involution, su_basis, InvolutionKind};

fn main() {
    let m = 1;
    for (p, q) in [(1usize, 2usize), (2, 2), (2, 3), (2, 4)] {
        let n = p + q;
        println!("S_{{{p},{q}}} (n = {n}), m = {m}:");
        for kind in [
            InvolutionKind::I,
            InvolutionKind::II,
            InvolutionKind::III,
            InvolutionKind::IV,
        ] {
            match involution(kind, p, q) {
                Ok(spec) => {
                    let gtau = fixed_subalgebra(&su_basis(&spec.form), &spec, 1).unwrap();
                    println!(
                        "  type {kind:?}: eps={:+} delta={:+} identities={} \
                         fixed-set dim {:?}  dim g^tau = {}",
                        spec.eps,
                        spec.delta,
                        spec.verify_identities(),
                        spec.fixed_set_dim(m),
                        gtau.len(),
                    );
                    if kind == InvolutionKind::I {
                        // g^tau = so(p,q), dimension n(n-1)/2.
                        assert_eq!(gtau.len(), n * (n - 1) / 2);
                    }
                }
                Err(_) => println!("  type {kind:?}: not admissible"),
            }
        }
    }
}
