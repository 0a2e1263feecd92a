//! The r+2 tube realizations of the sphere S^{2r-1} and their validation:
//! abelian, totally real, tangent-spanning, with the induced involution
//! and its fixed-set dimension, plus covering residuals.

use crtubes::engine::{conjugacy_invariants, validate_subalgebra, verify_covering};
use crtubes::models::{
    cayley_pushforward, field_to_matrix_images, sphere_hol_basis, tube_catalog, TubeCase,
};

fn main() {
    let r = 2;
    let sphere_ambient = sphere_hol_basis(r).unwrap();
    let quadric_ambient: Vec<_> = sphere_ambient
        .iter()
        .map(|f| cayley_pushforward(r, f).unwrap())
        .collect();

    println!("tube catalog of S^{} (r = {r}):", 2 * r - 1);
    for spec in tube_catalog(r).unwrap() {
        let ambient = match spec.case {
            TubeCase::Parabolic(_) => &quadric_ambient,
            _ => &sphere_ambient,
        };
        let v = validate_subalgebra(ambient, &spec.subalgebra, &spec.base_point, &spec.target)
            .unwrap();
        let residual = verify_covering(&spec, 500, 1e-9, 0).unwrap();
        let sig = conjugacy_invariants(&field_to_matrix_images(&spec.subalgebra).unwrap(), 0);
        println!(
            "  {:12}  abelian={} totally_real={} spans={} dim T^-tau={} covering_residual={:.2e}",
            spec.case.tag(),
            v.abelian,
            v.totally_real,
            v.spans_tangent,
            v.dim_v,
            residual,
        );
        println!(
            "  {:12}  nilpotent dim {}, trace form {:?}, generic ad-spectrum {:?}",
            "", sig.dim_nilpotent, sig.trace_form_signature, sig.generic_spectrum,
        );
    }
}
