//! End-to-end acceptance checks, one pass/fail line per criterion.
//! Run with `cargo test --test acceptance -- --nocapture` to see them.

use crtubes::engine::{
    affine_homogeneity, check_field_correspondence, conjugacy_invariants, validate_subalgebra,
    verify_covering,
};
use crtubes::levi::{
    affine_span_dim, finite_type, levi_chain, siegel_split, verify_siegel_split, GraphGerm,
    LeviModel,
};
use crtubes::linalg::complex_span_dim;
use crtubes::models::{
    cayley_pushforward, field_to_matrix_images, fixed_subalgebra, involution, siegel_nilpotent_basis,
    sphere_defining, sphere_hol_basis, su_basis, tube_catalog, ConeSpec, InvolutionKind,
    SiegelModel, TubeCase,
};
use crtubes::poly::{MPoly, Monomial};
use crtubes::rational::GaussRational;
use crtubes::vfield::tangent_to;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn verdict(n: u32, name: &str, pass: bool) {
    println!("criterion {n:2} ({name}): {}", if pass { "PASS" } else { "FAIL" });
    assert!(pass, "criterion {n} failed: {name}");
}

#[test]
fn criterion_01_sphere_algebra() {
    let mut pass = true;
    for r in 2..=5usize {
        let basis = sphere_hol_basis(r).unwrap();
        pass &= basis.len() == (r + 1) * (r + 1) - 1;
        let rho = sphere_defining(r);
        pass &= basis.iter().all(|f| tangent_to(f, &rho).unwrap());
    }
    verdict(1, "sphere algebra basis and tangency", pass);
}

fn catalog_with_ambients(
    r: usize,
) -> Vec<(crtubes::models::TubeRealizationSpec, Vec<crtubes::vfield::PolyVectorField>)> {
    let sphere_ambient = sphere_hol_basis(r).unwrap();
    let quadric_ambient: Vec<_> = sphere_ambient
        .iter()
        .map(|f| cayley_pushforward(r, f).unwrap())
        .collect();
    tube_catalog(r)
        .unwrap()
        .into_iter()
        .map(|spec| {
            let ambient = match spec.case {
                TubeCase::Parabolic(_) => quadric_ambient.clone(),
                _ => sphere_ambient.clone(),
            };
            (spec, ambient)
        })
        .collect()
}

#[test]
fn criterion_02_catalog_validity() {
    let mut pass = true;
    for r in [2usize, 3] {
        let entries = catalog_with_ambients(r);
        pass &= entries.len() == r + 2;
        for (spec, ambient) in &entries {
            let v = validate_subalgebra(ambient, &spec.subalgebra, &spec.base_point, &spec.target)
                .unwrap();
            pass &= v.all_pass() && v.involution_unique && v.dim_v == r;
        }
    }
    verdict(2, "catalog validity with involutions", pass);
}

#[test]
fn criterion_03_covering_residuals() {
    let mut pass = true;
    for r in [2usize, 3] {
        for spec in tube_catalog(r).unwrap() {
            let res = verify_covering(&spec, 1000, 1e-9, 0).unwrap();
            pass &= res <= 1e-9;
        }
    }
    verdict(3, "covering residuals at 1000 samples", pass);
}

#[test]
fn criterion_04_field_correspondence() {
    let r = 2;
    let mut pass = true;
    for spec in tube_catalog(r).unwrap() {
        for dir in 0..r {
            let res = check_field_correspondence(&spec, dir, 300, 1e-9, 0).unwrap();
            pass &= res <= 1e-9;
        }
    }
    verdict(4, "translation field correspondence", pass);
}

#[test]
fn criterion_05_invariant_separation() {
    let mut pass = true;
    for r in [2usize, 3] {
        let sigs: Vec<_> = tube_catalog(r)
            .unwrap()
            .iter()
            .map(|spec| {
                conjugacy_invariants(&field_to_matrix_images(&spec.subalgebra).unwrap(), 0)
            })
            .collect();
        for i in 0..sigs.len() {
            for j in (i + 1)..sigs.len() {
                pass &= sigs[i] != sigs[j];
            }
        }
        // dim_nilpotent = r − s + 1 for the parabolic family F_s.
        for (spec, sig) in tube_catalog(r).unwrap().iter().zip(&sigs) {
            if let TubeCase::Parabolic(s) = spec.case {
                pass &= sig.dim_nilpotent == r - s + 1;
            }
        }
    }
    verdict(5, "invariant signatures pairwise distinct", pass);
}

#[test]
fn criterion_06_affine_homogeneity() {
    let mut pass = true;
    for r in [2usize, 3] {
        for spec in tube_catalog(r).unwrap() {
            match spec.case {
                TubeCase::Parabolic(1) => {
                    pass &= affine_homogeneity(&spec, 60, 1e-7, 0).unwrap();
                }
                TubeCase::Exp => {
                    pass &= !affine_homogeneity(&spec, 60, 1e-7, 0).unwrap();
                }
                _ => {}
            }
        }
    }
    verdict(6, "affine homogeneity of F_1 versus exp", pass);
}

#[test]
fn criterion_07_involution_table() {
    let mut pass = true;
    for (p, q) in [(1usize, 2usize), (2, 2), (2, 3), (2, 4)] {
        let n = p + q;
        for kind in [
            InvolutionKind::I,
            InvolutionKind::II,
            InvolutionKind::III,
            InvolutionKind::IV,
        ] {
            let admissible = match kind {
                InvolutionKind::I => true,
                InvolutionKind::II | InvolutionKind::IV => p == q,
                InvolutionKind::III => (p % 2, q % 2) == (0, 0),
            };
            match involution(kind, p, q) {
                Ok(spec) => {
                    pass &= admissible && spec.verify_identities();
                    let expected = match kind {
                        InvolutionKind::I => (1, 1),
                        InvolutionKind::II => (1, -1),
                        InvolutionKind::III => (-1, 1),
                        InvolutionKind::IV => (-1, -1),
                    };
                    pass &= (spec.eps, spec.delta) == expected;
                    if kind == InvolutionKind::I {
                        let gtau = fixed_subalgebra(&su_basis(&spec.form), &spec, 1).unwrap();
                        pass &= gtau.len() == n * (n - 1) / 2;
                    }
                }
                Err(_) => pass &= !admissible,
            }
        }
    }
    verdict(7, "involution table identities", pass);
}

#[test]
fn criterion_08_levi_chains() {
    let mut pass = true;
    let tube = LeviModel::TubeCone(ConeSpec::new(2, 1, 0).unwrap());
    let res = levi_chain(&tube, 2).unwrap();
    pass &= res.dims == vec![3, 1, 0];

    let sm = SiegelModel::new(2, 3, 1, 0).unwrap();
    let res = levi_chain(&LeviModel::Siegel(sm.clone()), 2).unwrap();
    pass &= res.dims[1] != 0 && res.dims[2] == 0;
    pass &= verify_siegel_split(&sm, 2).unwrap();
    let s0 = siegel_split(&sm, 0).unwrap();
    pass &= s0.w_part.len() == sm.dim_w();
    let s1 = siegel_split(&sm, 1).unwrap();
    // W^1 = {w : w_2 = 0}.
    let mut unit = vec![GaussRational::zero(); 2];
    unit[0] = GaussRational::one();
    let mut both = s1.w_part.clone();
    both.push(unit);
    pass &= s1.w_part.len() == 1 && complex_span_dim(&both) == 1;
    verdict(8, "iterated Levi kernels and UD split", pass);
}

#[test]
fn criterion_09_nilpotency() {
    let mut pass = true;
    for (p, q) in [(1usize, 2usize), (2, 3)] {
        let model = SiegelModel::new(p, q, 1, 0).unwrap();
        let basis = siegel_nilpotent_basis(&model).basis;
        for a in &basis {
            for b in &basis {
                let ab = a.bracket(b).unwrap();
                for c in &basis {
                    pass &= ab.bracket(c).unwrap().is_zero();
                }
            }
        }
    }
    verdict(9, "second brackets of the translation algebra vanish", pass);
}

#[test]
fn criterion_10_finite_type() {
    let mut pass = true;
    let named = [
        (vec![vec![(vec![2u32], 1i64)]], true),
        (vec![vec![]], false),
        (vec![vec![(vec![2], 1)], vec![(vec![2], 2)]], false),
    ];
    for (jets_spec, expected) in &named {
        let jets: Vec<MPoly> = jets_spec
            .iter()
            .map(|cs| {
                let mut f = MPoly::zero(1, 0);
                for (e, c) in cs {
                    f.add_term(Monomial(e.clone()), GaussRational::from_int(*c));
                }
                f
            })
            .collect();
        let germ = GraphGerm::new(1, jets, 4).unwrap();
        let r = finite_type(&germ);
        pass &= r.finite == *expected && r.certified;
        pass &= (affine_span_dim(&germ) == germ.ambient_dim()) == *expected;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let free = rng.gen_range(1..=3usize);
        let deps = rng.gen_range(1..=3usize);
        let jets: Vec<MPoly> = (0..deps)
            .map(|_| {
                let mut f = MPoly::zero(free, 0);
                for _ in 0..4 {
                    let mut exps = vec![0u32; free];
                    let deg = rng.gen_range(2..=3);
                    for _ in 0..deg {
                        exps[rng.gen_range(0..free)] += 1;
                    }
                    let c = rng.gen_range(-2..=2i64);
                    if c != 0 {
                        f.add_term(Monomial(exps), GaussRational::from_int(c));
                    }
                }
                f
            })
            .collect();
        let germ = GraphGerm::new(free, jets, 4).unwrap();
        let r = finite_type(&germ);
        let oracle = affine_span_dim(&germ) == germ.ambient_dim();
        pass &= r.finite == oracle;
    }
    verdict(10, "finite type versus affine-span oracle", pass);
}

#[test]
fn criterion_11_property_suites() {
    // The full randomized suites live in tests/properties.rs; this
    // criterion runs a seeded instance of each law.
    let mut pass = true;
    let mut rng = ChaCha8Rng::seed_from_u64(5);

    // Jacobi identity on 50 random triples of quadratic plane fields.
    for _ in 0..50 {
        let mut field = || {
            let mut comps = Vec::new();
            for _ in 0..2 {
                let mut f = MPoly::zero(2, 0);
                for exps in [[0u32, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]] {
                    let c = GaussRational::from_parts(
                        rng.gen_range(-2..=2),
                        rng.gen_range(-2..=2),
                        1,
                    );
                    f.add_term(Monomial(exps.to_vec()), c);
                }
                comps.push(f);
            }
            crtubes::vfield::PolyVectorField::new(comps)
        };
        let (x, y, z) = (field(), field(), field());
        let lhs = x
            .bracket(&y)
            .unwrap()
            .bracket(&z)
            .unwrap()
            .add(&y.bracket(&z).unwrap().bracket(&x).unwrap())
            .add(&z.bracket(&x).unwrap().bracket(&y).unwrap());
        pass &= lhs.is_zero();
    }

    // Product rule for the formal derivative.
    for _ in 0..20 {
        let mut poly = || {
            let mut f = MPoly::zero(2, 1);
            for _ in 0..4 {
                let exps = vec![
                    rng.gen_range(0..3u32),
                    rng.gen_range(0..3u32),
                    rng.gen_range(0..2u32),
                ];
                f.add_term(
                    Monomial(exps),
                    GaussRational::from_parts(rng.gen_range(-3..=3), rng.gen_range(-3..=3), 1),
                );
            }
            f
        };
        let (f, g) = (poly(), poly());
        for v in 0..3 {
            let lhs = f.mul(&g).diff(v);
            let rhs = f.diff(v).mul(&g).add(&f.mul(&g.diff(v)));
            pass &= lhs == rhs;
        }
    }

    // Rank is transpose-invariant; real span doubles under i-closure.
    for _ in 0..20 {
        let rows: Vec<Vec<GaussRational>> = (0..3)
            .map(|_| {
                (0..4)
                    .map(|_| {
                        GaussRational::from_parts(rng.gen_range(-2..=2), rng.gen_range(-2..=2), 1)
                    })
                    .collect()
            })
            .collect();
        let m = crtubes::linalg::ExactMatrix::from_rows(rows.clone());
        pass &= m.rank() == m.transpose().rank();
        let mut doubled = rows.clone();
        doubled.extend(rows.iter().map(|v| {
            v.iter().map(|c| c * &GaussRational::i()).collect::<Vec<_>>()
        }));
        pass &= crtubes::linalg::real_span_dim(&doubled) == 2 * complex_span_dim(&rows);
    }

    // Flow order-independence over the abelian catalog subalgebra.
    let spec = &tube_catalog(2).unwrap()[0];
    let a: Vec<num_complex::Complex64> =
        spec.base_point.iter().map(|c| c.to_complex64()).collect();
    for _ in 0..5 {
        let t1 = rng.gen_range(-0.5..0.5);
        let t2 = rng.gen_range(-0.5..0.5);
        let xi = &spec.subalgebra.basis[0];
        let eta = &spec.subalgebra.basis[1];
        let p12 = crtubes::engine::flow(eta, &crtubes::engine::flow(xi, &a, t1, 1e-12).unwrap().endpoint, t2, 1e-12)
            .unwrap()
            .endpoint;
        let p21 = crtubes::engine::flow(xi, &crtubes::engine::flow(eta, &a, t2, 1e-12).unwrap().endpoint, t1, 1e-12)
            .unwrap()
            .endpoint;
        let diff: f64 = p12
            .iter()
            .zip(&p21)
            .map(|(u, v)| (u - v).norm())
            .fold(0.0, f64::max);
        pass &= diff <= 1e-9;
    }
    verdict(11, "algebraic and analytic property laws", pass);
}
