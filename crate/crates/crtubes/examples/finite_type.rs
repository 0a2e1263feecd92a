//! Finite type of tube germs over graphs via the iterated-bracket
//! vectors, cross-checked against the affine-span criterion.

use crtubes::levi::{affine_span_dim, finite_type, GraphGerm};
use crtubes::poly::{MPoly, Monomial};
use crtubes::rational::GaussRational;

fn germ(deps: &[&[(u32, i64)]]) -> GraphGerm {
    let jets = deps
        .iter()
        .map(|cs| {
            let mut f = MPoly::zero(1, 0);
            for &(e, c) in *cs {
                f.add_term(Monomial(vec![e]), GaussRational::from_int(c));
            }
            f
        })
        .collect();
    GraphGerm::new(1, jets, 4).unwrap()
}

fn main() {
    let named: [(&str, GraphGerm); 3] = [
        ("paraboloid y2 = y1^2", germ(&[&[(2, 1)]])),
        ("flat y2 = 0", germ(&[&[]])),
        ("curve (y, y^2, 2y^2)", germ(&[&[(2, 1)], &[(2, 2)]])),
    ];
    for (name, g) in named {
        let r = finite_type(&g);
        println!(
            "{name}: finite type = {} (spanning order {:?}), affine span dim {} of {}",
            r.finite,
            r.spanning_order,
            affine_span_dim(&g),
            g.ambient_dim(),
        );
    }
}
