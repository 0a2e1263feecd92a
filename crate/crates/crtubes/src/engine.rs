//! The constructive core of the realization procedure: validating
//! candidate subalgebras (including the involution of the uniqueness
//! statement), integrating flows ψ(ξ) = exp(ξ)(a), verifying covering
//! maps numerically, conjugation-separating invariants, and the affine
//! homogeneity test for tube bases.

use crate::linalg::{self, ExactMatrix};
use crate::models::TubeRealizationSpec;
use crate::rational::GaussRational;
use crate::vfield::{
    self, coeff_vectors, field_to_matrix, PolyVectorField, RealDefining, SubalgebraSpec,
};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::Zero;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("step size underflow at t = {0} (pole or chart exit)")]
    StepUnderflow(f64),
    #[error("tolerance must be positive")]
    BadTolerance,
    #[error("base sampler found no points of the base in the search box")]
    SamplerFailed,
    #[error("subalgebra is not contained in the ambient algebra")]
    NotInAmbient,
    #[error(transparent)]
    Field(#[from] vfield::VfError),
}

// ---------------------------------------------------------------------------
// Flows
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct FlowResult {
    pub endpoint: Vec<Complex64>,
    pub step_count: usize,
    pub max_residual: f64,
}

// Dormand-Prince 5(4) tableau.
const DP_C: [f64; 6] = [1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0, 1.0, 1.0];
const DP_A: [[f64; 6]; 6] = [
    [1.0 / 5.0, 0.0, 0.0, 0.0, 0.0, 0.0],
    [3.0 / 40.0, 9.0 / 40.0, 0.0, 0.0, 0.0, 0.0],
    [44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0, 0.0, 0.0, 0.0],
    [
        19372.0 / 6561.0,
        -25360.0 / 2187.0,
        64448.0 / 6561.0,
        -212.0 / 729.0,
        0.0,
        0.0,
    ],
    [
        9017.0 / 3168.0,
        -355.0 / 33.0,
        46732.0 / 5247.0,
        49.0 / 176.0,
        -5103.0 / 18656.0,
        0.0,
    ],
    [
        35.0 / 384.0,
        0.0,
        500.0 / 1113.0,
        125.0 / 192.0,
        -2187.0 / 6784.0,
        11.0 / 84.0,
    ],
];
const DP_B5: [f64; 7] = [
    35.0 / 384.0,
    0.0,
    500.0 / 1113.0,
    125.0 / 192.0,
    -2187.0 / 6784.0,
    11.0 / 84.0,
    0.0,
];
const DP_B4: [f64; 7] = [
    5179.0 / 57600.0,
    0.0,
    7571.0 / 16695.0,
    393.0 / 640.0,
    -92097.0 / 339200.0,
    187.0 / 2100.0,
    1.0 / 40.0,
];

/// Integrate ż = f(z) from a over [0, t] with adaptive Dormand-Prince
/// 5(4). When a target defining function is given, the tangency residual
/// |ρ(z)| is tracked along the trajectory.
pub fn flow_with_target(
    xi: &PolyVectorField,
    a: &[Complex64],
    t: f64,
    tol: f64,
    target: Option<&RealDefining>,
) -> Result<FlowResult, EngineError> {
    if tol <= 0.0 {
        return Err(EngineError::BadTolerance);
    }
    let n = xi.n;
    assert_eq!(a.len(), n);
    let rel = 1e-12_f64.min(tol);
    let sign = if t < 0.0 { -1.0 } else { 1.0 };
    let t_end = t.abs();
    let mut z: Vec<Complex64> = a.to_vec();
    let mut time = 0.0;
    let mut h = (t_end / 16.0).max(1e-8).min(0.1);
    let mut steps = 0;
    let mut max_residual: f64 = target.map(|rho| rho.eval_f64(&z).abs()).unwrap_or(0.0);
    let eval = |z: &[Complex64]| -> Vec<Complex64> {
        xi.evaluate_f64(z)
            .into_iter()
            .map(|v| sign * v)
            .collect()
    };
    while time < t_end {
        if h < 1e-14 {
            return Err(EngineError::StepUnderflow(sign * time));
        }
        let h_cur = h.min(t_end - time);
        let mut k: Vec<Vec<Complex64>> = Vec::with_capacity(7);
        k.push(eval(&z));
        for stage in 0..6 {
            let mut zs = z.clone();
            for (j, kj) in k.iter().enumerate() {
                let aij = DP_A[stage][j];
                if aij != 0.0 {
                    for (zc, kc) in zs.iter_mut().zip(kj) {
                        *zc += h_cur * aij * kc;
                    }
                }
            }
            let _ = DP_C[stage];
            k.push(eval(&zs));
        }
        let mut z5 = z.clone();
        let mut err: f64 = 0.0;
        for c in 0..n {
            let mut d5 = Complex64::new(0.0, 0.0);
            let mut d4 = Complex64::new(0.0, 0.0);
            for (j, kj) in k.iter().enumerate() {
                d5 += DP_B5[j] * kj[c];
                d4 += DP_B4[j] * kj[c];
            }
            z5[c] += h_cur * d5;
            err = err.max((h_cur * (d5 - d4)).norm());
        }
        let scale = rel * (1.0 + z.iter().map(|v| v.norm()).fold(0.0, f64::max));
        if err <= scale {
            time += h_cur;
            z = z5;
            steps += 1;
            if let Some(rho) = target {
                max_residual = max_residual.max(rho.eval_f64(&z).abs());
            }
            if err < 0.1 * scale {
                h *= 2.0;
            }
        } else {
            h *= 0.5 * (scale / err).powf(0.2).max(0.2);
        }
    }
    Ok(FlowResult {
        endpoint: z,
        step_count: steps,
        max_residual,
    })
}

pub fn flow(
    xi: &PolyVectorField,
    a: &[Complex64],
    t: f64,
    tol: f64,
) -> Result<FlowResult, EngineError> {
    flow_with_target(xi, a, t, tol, None)
}

/// ψ(Σ coeffs_j ξ_j) = exp of the combined field applied to a, over t = 1.
/// Abelianness of the span makes the factor ordering irrelevant.
pub fn exp_point(
    e: &SubalgebraSpec,
    coeffs: &[f64],
    a: &[Complex64],
    tol: f64,
) -> Result<Vec<Complex64>, EngineError> {
    assert_eq!(coeffs.len(), e.basis.len());
    let n = e.basis[0].n;
    // combine with rational approximations of the coefficients so the
    // field stays exact; 2^40 denominators are far below the integrator
    // tolerance
    let mut combined = PolyVectorField::zero(n);
    for (c, f) in coeffs.iter().zip(&e.basis) {
        let approx = BigRational::new(
            num_bigint::BigInt::from((c * (1u64 << 40) as f64).round() as i64),
            num_bigint::BigInt::from(1u64 << 40),
        );
        combined = combined.add(&f.scale(&GaussRational::new(approx, BigRational::zero())));
    }
    Ok(flow(&combined, a, 1.0, tol)?.endpoint)
}

// ---------------------------------------------------------------------------
// Base sampling and covering verification
// ---------------------------------------------------------------------------

/// Newton projection onto {g = 0} from seeded uniform draws in the box.
pub fn sample_base_points(
    spec: &TubeRealizationSpec,
    n_samples: usize,
    seed: u64,
) -> Result<Vec<Vec<f64>>, EngineError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (lo, hi) = spec.sample_box();
    let r = spec.r;
    let mut out = Vec::with_capacity(n_samples);
    let mut attempts = 0;
    while out.len() < n_samples {
        attempts += 1;
        if attempts > 200 * n_samples.max(10) {
            return Err(EngineError::SamplerFailed);
        }
        let mut x: Vec<f64> = (0..r).map(|_| rng.gen_range(lo..hi)).collect();
        let mut ok = false;
        for _ in 0..60 {
            let g = spec.base_residual(&x);
            if g.abs() < 1e-13 {
                ok = true;
                break;
            }
            let grad = spec.base_gradient(&x);
            let norm2: f64 = grad.iter().map(|d| d * d).sum();
            if norm2 < 1e-20 {
                break;
            }
            for (xc, d) in x.iter_mut().zip(&grad) {
                *xc -= g * d / norm2;
            }
        }
        if ok && spec.in_domain(&x) && x.iter().all(|v| v.is_finite()) {
            out.push(x);
        }
    }
    Ok(out)
}

/// Max |ρ(φ(b + iy))| over sampled base points b and random imaginary
/// translations y.
pub fn verify_covering(
    spec: &TubeRealizationSpec,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<f64, EngineError> {
    if tol <= 0.0 {
        return Err(EngineError::BadTolerance);
    }
    let points = sample_base_points(spec, n_samples, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e3779b97f4a7c15);
    let mut max_res: f64 = 0.0;
    for b in &points {
        let z: Vec<Complex64> = b
            .iter()
            .map(|&x| Complex64::new(x, rng.gen_range(-1.0..1.0)))
            .collect();
        let w = spec.covering_map(&z);
        max_res = max_res.max(spec.target.eval_f64(&w).abs());
    }
    Ok(max_res)
}

/// Max ‖dφ_z(i·e_k) − ξ_k(φ(z))‖ over samples, for the translation
/// direction with index k and the matching subalgebra basis field.
pub fn check_field_correspondence(
    spec: &TubeRealizationSpec,
    direction: usize,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<f64, EngineError> {
    if tol <= 0.0 {
        return Err(EngineError::BadTolerance);
    }
    assert!(direction < spec.r);
    let xi = &spec.subalgebra.basis[direction];
    let points = sample_base_points(spec, n_samples, seed)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5bf0a8b1);
    let mut v = vec![Complex64::new(0.0, 0.0); spec.r];
    v[direction] = Complex64::new(0.0, 1.0);
    let mut max_res: f64 = 0.0;
    for b in &points {
        let z: Vec<Complex64> = b
            .iter()
            .map(|&x| Complex64::new(x, rng.gen_range(-1.0..1.0)))
            .collect();
        let w = spec.covering_map(&z);
        let push = spec.jacobian_apply(&z, &v);
        let field = xi.evaluate_f64(&w);
        let diff: f64 = push
            .iter()
            .zip(&field)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max);
        max_res = max_res.max(diff);
    }
    Ok(max_res)
}

// ---------------------------------------------------------------------------
// Subalgebra validation and the involution of the uniqueness statement
// ---------------------------------------------------------------------------

#[derive(Clone, Debug)]
pub struct ValidationReport {
    pub abelian: bool,
    pub totally_real: bool,
    pub spans_tangent: bool,
    pub dim_v: usize,
    /// B with τ([z]) = [z̄·B], when the linear system has a unique
    /// projective solution that is an involution preserving the model.
    pub involution: Option<ExactMatrix>,
    pub involution_unique: bool,
    /// dim T_a^{−τ}M = dim_ℂ Z (condition (iii) of the uniqueness
    /// statement).
    pub condition_iii: bool,
}

impl ValidationReport {
    pub fn all_pass(&self) -> bool {
        self.abelian
            && self.totally_real
            && self.spans_tangent
            && self.involution.is_some()
            && self.condition_iii
    }
}

/// Hermitian (r+1)×(r+1) lift H of an affine-plus-hermitian defining
/// polynomial, so that ρ(z) = L(z)·H·L(z)* with L(z) = (1, z).
pub fn defining_lift_form(rho: &RealDefining) -> ExactMatrix {
    let r = rho.n();
    let mut h = ExactMatrix::zero(r + 1, r + 1);
    let zero = vec![0u32; 2 * r];
    *h.at_mut(0, 0) = rho.rho.coeff(&zero);
    for k in 0..r {
        let mut e = zero.clone();
        e[k] = 1;
        *h.at_mut(k + 1, 0) = rho.rho.coeff(&e);
        let mut e = zero.clone();
        e[r + k] = 1;
        *h.at_mut(0, k + 1) = rho.rho.coeff(&e);
        for l in 0..r {
            let mut e = zero.clone();
            e[k] += 1;
            e[r + l] += 1;
            *h.at_mut(k + 1, l + 1) = rho.rho.coeff(&e);
        }
    }
    debug_assert!(h.is_hermitian());
    h
}

/// Validate the realization conditions for 𝔳 at the point a, searching
/// for the antilinear projective involution τ([z]) = [z̄·B] with
/// τ_*ξ = −ξ on 𝔳 and τ(a) = a.
pub fn validate_subalgebra(
    ambient: &[PolyVectorField],
    v: &SubalgebraSpec,
    a: &[GaussRational],
    target: &RealDefining,
) -> Result<ValidationReport, EngineError> {
    // exact membership of v in the real span of the ambient basis
    let mut all = ambient.to_vec();
    all.extend(v.basis.iter().cloned());
    let ambient_dim = linalg::real_span_dim(&coeff_vectors(ambient));
    if linalg::real_span_dim(&coeff_vectors(&all)) != ambient_dim {
        return Err(EngineError::NotInAmbient);
    }

    let abelian = vfield::is_abelian(v);
    let totally_real = vfield::totally_real(v);
    let spans = vfield::spans_tangent(v, a);
    let r = a.len();

    let (involution, unique, condition_iii) =
        match involution_search(v, a, target) {
            Some((b, unique)) => {
                let ciii = check_condition_iii(&b, a, target, r);
                (Some(b), unique, ciii)
            }
            None => (None, false, false),
        };

    Ok(ValidationReport {
        abelian,
        totally_real,
        spans_tangent: spans,
        dim_v: v.dim(),
        involution,
        involution_unique: unique,
        condition_iii,
    })
}

fn lift_point(a: &[GaussRational]) -> Vec<GaussRational> {
    let mut l = vec![GaussRational::one()];
    l.extend(a.iter().cloned());
    l
}

/// Solve the linear system for B: X̄·B + B·X = 0 for every basis field
/// (τ_*ξ = −ξ) together with conj(lift(a))·B ∥ lift(a) (τ fixes a).
/// B is accepted when the projective solution is unique, B̄·B is a real
/// multiple of the identity (τ² = id) and B·H·B* ∥ H (τ preserves the
/// model). Returns (B, uniqueness flag).
fn involution_search(
    v: &SubalgebraSpec,
    a: &[GaussRational],
    target: &RealDefining,
) -> Option<(ExactMatrix, bool)> {
    let r = a.len();
    let n = r + 1;
    let mats: Vec<ExactMatrix> = v
        .basis
        .iter()
        .map(|f| field_to_matrix(f).map(|m| m.m))
        .collect::<Result<_, _>>()
        .ok()?;
    let idx = |i: usize, j: usize| i * n + j;
    let mut rows: Vec<Vec<GaussRational>> = Vec::new();
    for x in &mats {
        let xbar = x.conj_transpose().transpose();
        // (X̄·B + B·X)_{ij} = Σ_k X̄_{ik} B_{kj} + B_{ik} X_{kj}
        for i in 0..n {
            for j in 0..n {
                let mut row = vec![GaussRational::zero(); n * n];
                for k in 0..n {
                    row[idx(k, j)] += xbar.at(i, k);
                    row[idx(i, k)] += x.at(k, j);
                }
                rows.push(row);
            }
        }
    }
    let la = lift_point(a);
    let lac: Vec<GaussRational> = la.iter().map(|c| c.conj()).collect();
    // (conj(la)·B)_i la_j − (conj(la)·B)_j la_i = 0
    for i in 0..n {
        for j in (i + 1)..n {
            let mut row = vec![GaussRational::zero(); n * n];
            for k in 0..n {
                row[idx(k, i)] += &(&lac[k] * &la[j]);
                row[idx(k, j)] -= &(&lac[k] * &la[i]);
            }
            rows.push(row);
        }
    }
    let system = ExactMatrix::from_rows(rows);
    let null = system.nullspace();
    if null.is_empty() {
        return None;
    }
    let unique = null.len() == 1;
    // pick any solution; with uniqueness it is the projective involution
    let sol = &null[0];
    let mut b = ExactMatrix::zero(n, n);
    for i in 0..n {
        for j in 0..n {
            *b.at_mut(i, j) = sol[idx(i, j)].clone();
        }
    }
    if b.inverse().is_none() {
        return None;
    }
    // τ² = id projectively: B̄·B = μ·I with μ real
    let bbar = b.conj_transpose().transpose();
    let sq = bbar.mul(&b);
    let mu = sq.at(0, 0).clone();
    if !mu.is_real() || sq != ExactMatrix::identity(n).scale(&mu) {
        return None;
    }
    // τ(S) = S: B·H·B* = ν·H with ν real
    let h = defining_lift_form(&RealDefining::new(target.rho.clone()));
    let bhb = b.mul(&h).mul(&b.conj_transpose());
    let nu = find_scalar_ratio(&bhb, &h)?;
    if !nu.is_real() {
        return None;
    }
    Some((b, unique))
}

fn find_scalar_ratio(x: &ExactMatrix, y: &ExactMatrix) -> Option<GaussRational> {
    let mut ratio: Option<GaussRational> = None;
    for (a, b) in x.entries.iter().zip(&y.entries) {
        match (a.is_zero(), b.is_zero()) {
            (true, true) => {}
            (false, false) => {
                let r = a / b;
                match &ratio {
                    None => ratio = Some(r),
                    Some(prev) if *prev == r => {}
                    _ => return None,
                }
            }
            _ => return None,
        }
    }
    ratio
}

/// dim T_a^{−τ}M for the projective antilinear map τ([z]) = [z̄·B] at a
/// fixed point a of τ, computed exactly from the realified chart
/// derivative of τ restricted to T_aM.
fn check_condition_iii(
    b: &ExactMatrix,
    a: &[GaussRational],
    target: &RealDefining,
    r: usize,
) -> bool {
    // chart derivative at a: dτ_a(v) = v̄·K with
    // K = (B_low − c·τ(a)) / m0, where B = [[b00, row], [c, B_low]],
    // m0 = (conj lift(a)·B)_0 and τ(a) = a
    let la = lift_point(a);
    let lac: Vec<GaussRational> = la.iter().map(|x| x.conj()).collect();
    let img = b.apply_row(&lac);
    let m0 = img[0].clone();
    if m0.is_zero() {
        return false; // a maps into the hyperplane at infinity
    }
    let m0inv = m0.inv().unwrap();
    let mut k = ExactMatrix::zero(r, r);
    for i in 0..r {
        for j in 0..r {
            let outer = b.at(i + 1, 0) * &a[j];
            *k.at_mut(i, j) = &(b.at(i + 1, j + 1) - &outer) * &m0inv;
        }
    }
    // realified: row (x, y) ↦ (x·K_re + y·K_im, x·K_im − y·K_re)
    let zero = BigRational::zero();
    let mut rmat = ExactMatrix::zero(2 * r, 2 * r);
    for i in 0..r {
        for j in 0..r {
            let kre = GaussRational::new(k.at(i, j).re.clone(), zero.clone());
            let kim = GaussRational::new(k.at(i, j).im.clone(), zero.clone());
            *rmat.at_mut(i, j) = kre.clone();
            *rmat.at_mut(r + i, j) = kim.clone();
            *rmat.at_mut(i, r + j) = kim;
            *rmat.at_mut(r + i, r + j) = -&kre;
        }
    }
    // the −1 eigenspace of dτ_a inside T_aM: rows v with v·(R + I) = 0
    // and dρ_a(v) = 0
    let mut constraints = rmat.add(&ExactMatrix::identity(2 * r)).transpose();
    // real differential of ρ at a: v ↦ 2 Re Σ g_j v_j, realified row
    // (2 Re g, −2 Im g)
    let point: Vec<GaussRational> = {
        let mut p = a.to_vec();
        p.extend(a.iter().map(|x| x.conj()));
        p
    };
    let mut grad_row = vec![GaussRational::zero(); 2 * r];
    for j in 0..r {
        let g = target.rho.diff(j).eval(&point);
        grad_row[j] = GaussRational::new(&g.re + &g.re, zero.clone());
        grad_row[r + j] = GaussRational::new(-(&g.im + &g.im), zero.clone());
    }
    let mut rows: Vec<Vec<GaussRational>> = (0..constraints.rows)
        .map(|i| constraints.row(i).to_vec())
        .collect();
    rows.push(grad_row);
    constraints = ExactMatrix::from_rows(rows);
    let dim_minus = 2 * r - constraints.rank();
    dim_minus == r
}

// ---------------------------------------------------------------------------
// Conjugation-separating invariants
// ---------------------------------------------------------------------------

#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct InvariantSignature {
    pub dim_nilpotent: usize,
    /// signature (positives, negatives) of the trace form Re tr(ξη) on 𝔳
    pub trace_form_signature: (usize, usize),
    /// counts of ad-eigenvalue differences of a generic element:
    /// (zero, nonzero real, purely imaginary, complex quadruple members)
    pub generic_spectrum: (usize, usize, usize, usize),
}

/// Invariants of an abelian subalgebra given by its matrix images.
pub fn conjugacy_invariants(mats: &[ExactMatrix], seed: u64) -> InvariantSignature {
    let dim_nilpotent = nilpotent_subspace_dim(mats);
    let trace_form_signature = trace_form_signature(mats);
    let generic_spectrum = generic_spectrum(mats, seed);
    InvariantSignature {
        dim_nilpotent,
        trace_form_signature,
        generic_spectrum,
    }
}

/// dim {ξ ∈ 𝔳 : ξ nilpotent}. For a commuting family the nilpotents
/// form a subspace: ξ is nilpotent iff tr(ξ·m) = 0 for every m in the
/// unital associative algebra generated by 𝔳 (simultaneous
/// triangularization argument); each solution is certified by X^n = 0.
fn nilpotent_subspace_dim(mats: &[ExactMatrix]) -> usize {
    let n = mats[0].rows;
    let mut algebra: Vec<ExactMatrix> = vec![ExactMatrix::identity(n)];
    let mut frontier: Vec<ExactMatrix> = vec![ExactMatrix::identity(n)];
    loop {
        let mut new_elems = Vec::new();
        for f in &frontier {
            for x in mats {
                let prod = f.mul(x);
                let mut candidates = algebra.clone();
                candidates.extend(new_elems.iter().cloned());
                let before: Vec<Vec<GaussRational>> = candidates
                    .iter()
                    .map(|m| m.entries.clone())
                    .collect();
                let mut with = before.clone();
                with.push(prod.entries.clone());
                if linalg::complex_span_dim(&with) > linalg::complex_span_dim(&before) {
                    new_elems.push(prod);
                }
            }
        }
        if new_elems.is_empty() {
            break;
        }
        algebra.extend(new_elems.iter().cloned());
        frontier = new_elems;
    }
    // rows: for each algebra element m, the functional c ↦ Re/Im tr(Σ c_i X_i m)
    let mut rows = Vec::new();
    for m in &algebra {
        let mut row_re = Vec::with_capacity(mats.len());
        let mut row_im = Vec::with_capacity(mats.len());
        for x in mats {
            let t = x.mul(m).trace();
            row_re.push(GaussRational::new(t.re, BigRational::zero()));
            row_im.push(GaussRational::new(t.im, BigRational::zero()));
        }
        rows.push(row_re);
        rows.push(row_im);
    }
    let null = ExactMatrix::from_rows(rows).nullspace();
    // certify each combination
    for combo in &null {
        let mut acc = ExactMatrix::zero(n, n);
        for (c, x) in combo.iter().zip(mats) {
            acc = acc.add(&x.scale(c));
        }
        let mut pow = acc.clone();
        for _ in 1..n {
            pow = pow.mul(&acc);
        }
        assert!(pow.is_zero(), "trace criterion produced a non-nilpotent");
    }
    null.len()
}

fn trace_form_signature(mats: &[ExactMatrix]) -> (usize, usize) {
    let d = mats.len();
    let mut gram = ExactMatrix::zero(d, d);
    for i in 0..d {
        for j in 0..d {
            let t = mats[i].mul(&mats[j]).trace();
            *gram.at_mut(i, j) = GaussRational::new(t.re, BigRational::zero());
        }
    }
    gram.hermitian_signature()
}

fn generic_spectrum(mats: &[ExactMatrix], seed: u64) -> (usize, usize, usize, usize) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut draws = Vec::new();
    for _ in 0..3 {
        let mut combo = ExactMatrix::zero(mats[0].rows, mats[0].cols);
        for x in mats {
            let c = gri(rng.gen_range(-5i64..=5).max(1));
            combo = combo.add(&x.scale(&c));
        }
        let coeffs: Vec<Complex64> = combo.char_poly().iter().map(|c| c.to_complex64()).collect();
        let lambda = durand_kerner(&coeffs);
        let mut counts = (0usize, 0usize, 0usize, 0usize);
        for (i, li) in lambda.iter().enumerate() {
            for (j, lj) in lambda.iter().enumerate() {
                if i == j {
                    continue;
                }
                let d = li - lj;
                let eps = 1e-7;
                if d.norm() < eps {
                    counts.0 += 1;
                } else if d.im.abs() < eps {
                    counts.1 += 1;
                } else if d.re.abs() < eps {
                    counts.2 += 1;
                } else {
                    counts.3 += 1;
                }
            }
        }
        draws.push(counts);
    }
    // majority of three draws
    if draws[0] == draws[1] || draws[0] == draws[2] {
        draws[0]
    } else {
        draws[1]
    }
}

fn gri(v: i64) -> GaussRational {
    GaussRational::from_parts(v, 0, 1)
}

/// All roots of the monic polynomial with the given coefficients
/// (c[0] + c[1] t + … + c[n] t^n, c[n] = 1), by Durand-Kerner.
fn durand_kerner(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    if n == 0 {
        return Vec::new();
    }
    let evaluate = |z: Complex64| -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    };
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32 + 1)).collect();
    for _ in 0..200 {
        let mut delta: f64 = 0.0;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    denom *= roots[i] - roots[j];
                }
            }
            let step = evaluate(roots[i]) / denom;
            roots[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-13 {
            break;
        }
    }
    roots
}

// ---------------------------------------------------------------------------
// Affine homogeneity of tube bases
// ---------------------------------------------------------------------------

/// Is the base F affinely homogeneous? Solved by finding all affine
/// fields x ↦ A·x + b tangent to F on a sample of base points, then
/// checking that they span T_xF at every sample.
pub fn affine_homogeneity(
    spec: &TubeRealizationSpec,
    n_samples: usize,
    tol: f64,
    seed: u64,
) -> Result<bool, EngineError> {
    if tol <= 0.0 {
        return Err(EngineError::BadTolerance);
    }
    let r = spec.r;
    let points = sample_base_points(spec, n_samples, seed)?;
    let unknowns = r * r + r;
    // constraint rows: ∇g(x)·(A·x + b) = 0
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(points.len());
    for x in &points {
        let grad = spec.base_gradient(x);
        let mut row = vec![0.0; unknowns];
        for i in 0..r {
            for j in 0..r {
                row[i * r + j] = grad[i] * x[j];
            }
            row[r * r + i] = grad[i];
        }
        rows.push(row);
    }
    let null = numeric_nullspace(&rows, unknowns, 1e-8);
    if null.is_empty() {
        return Ok(false);
    }
    // spanning check at each sample: tangent space has dim r − 1
    for x in &points {
        let mut vecs: Vec<Vec<f64>> = Vec::with_capacity(null.len());
        for sol in &null {
            let mut v = vec![0.0; r];
            for i in 0..r {
                for j in 0..r {
                    v[i] += sol[i * r + j] * x[j];
                }
                v[i] += sol[r * r + i];
            }
            vecs.push(v);
        }
        if numeric_rank(&vecs, 1e-8) < r - 1 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Nullspace basis via eigen-decomposition of the Gram matrix MᵀM
/// (Jacobi rotations); eigenvectors below the threshold (relative to the
/// largest eigenvalue, floored at an absolute cutoff) span the kernel.
pub fn numeric_nullspace(rows: &[Vec<f64>], cols: usize, threshold: f64) -> Vec<Vec<f64>> {
    let mut gram = vec![vec![0.0; cols]; cols];
    for row in rows {
        for i in 0..cols {
            for j in 0..cols {
                gram[i][j] += row[i] * row[j];
            }
        }
    }
    let (eigvals, eigvecs) = jacobi_eigen(&gram);
    let max_ev = eigvals.iter().cloned().fold(0.0, f64::max);
    let cutoff = (threshold * threshold * max_ev).max(1e-18);
    let mut out = Vec::new();
    for (k, &ev) in eigvals.iter().enumerate() {
        if ev <= cutoff {
            out.push(eigvecs.iter().map(|row| row[k]).collect());
        }
    }
    out
}

pub fn numeric_rank(vectors: &[Vec<f64>], threshold: f64) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    let d = vectors[0].len();
    let mut gram = vec![vec![0.0; d]; d];
    for v in vectors {
        for i in 0..d {
            for j in 0..d {
                gram[i][j] += v[i] * v[j];
            }
        }
    }
    let (eigvals, _) = jacobi_eigen(&gram);
    let max_ev = eigvals.iter().cloned().fold(0.0, f64::max);
    if max_ev <= 0.0 {
        return 0;
    }
    eigvals
        .iter()
        .filter(|&&ev| ev > threshold * threshold * max_ev)
        .count()
}

/// Classical Jacobi eigenvalue iteration for small symmetric matrices.
/// Returns (eigenvalues, matrix whose columns are eigenvectors).
fn jacobi_eigen(m: &[Vec<f64>]) -> (Vec<f64>, Vec<Vec<f64>>) {
    let n = m.len();
    let mut a: Vec<Vec<f64>> = m.to_vec();
    let mut v = vec![vec![0.0; n]; n];
    for i in 0..n {
        v[i][i] = 1.0;
    }
    let scale = (0..n)
        .map(|i| m[i][i].abs())
        .fold(f64::MIN_POSITIVE, f64::max);
    for _ in 0..100 * n * n {
        let mut off = 0.0;
        let (mut p, mut q) = (0, 1.min(n.saturating_sub(1)));
        for i in 0..n {
            for j in (i + 1)..n {
                if a[i][j].abs() > off {
                    off = a[i][j].abs();
                    p = i;
                    q = j;
                }
            }
        }
        if off < 1e-15 * scale || n < 2 {
            break;
        }
        let theta = 0.5 * (a[q][q] - a[p][p]) / a[p][q];
        let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
        let c = 1.0 / (t * t + 1.0).sqrt();
        let s = t * c;
        for k in 0..n {
            let akp = a[k][p];
            let akq = a[k][q];
            a[k][p] = c * akp - s * akq;
            a[k][q] = s * akp + c * akq;
        }
        for k in 0..n {
            let apk = a[p][k];
            let aqk = a[q][k];
            a[p][k] = c * apk - s * aqk;
            a[q][k] = s * apk + c * aqk;
        }
        for k in 0..n {
            let vkp = v[k][p];
            let vkq = v[k][q];
            v[k][p] = c * vkp - s * vkq;
            v[k][q] = s * vkp + c * vkq;
        }
    }
    ((0..n).map(|i| a[i][i]).collect(), v)
}
