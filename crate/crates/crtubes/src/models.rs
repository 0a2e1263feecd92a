//! The concrete models: the sphere S ⊂ ℙ_r and its automorphism algebra
//! 𝔤 ≅ su(1,r), the Cayley transform onto the quadric S′, the two Cartan
//! subalgebras and the parabolic family F_s, the r+2 tube catalog,
//! involution types I–IV on hyperquadrics, hermitian cones C^p_{j,k},
//! and Siegel models Σ with their nilpotent algebras 𝔫.

use crate::linalg::ExactMatrix;
use crate::poly::MPoly;
use crate::rational::GaussRational;
use crate::vfield::{
    self, PolyVectorField, RealDefining, SubalgebraSpec, VfError,
};
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("dimension r = {0} not supported (need r >= 2)")]
    BadDimension(usize),
    #[error("parabolic index s = {0} out of range 1..={1}")]
    BadParabolicIndex(usize, usize),
    #[error("involution type {0:?} not admissible for (p,q) = ({1},{2})")]
    InadmissibleInvolution(InvolutionKind, usize, usize),
    #[error("bad signature parameters")]
    BadSignature,
    #[error("matrix is not hermitian")]
    NotHermitian,
    #[error("siegel model needs q > p >= 1 and j + k <= p")]
    BadSiegelParameters,
    #[error(transparent)]
    Field(#[from] VfError),
}

fn gr(re: i64, im: i64) -> GaussRational {
    GaussRational::from_parts(re, im, 1)
}

fn zvar(n: usize, k: usize) -> MPoly {
    MPoly::var(n, 0, k)
}

/// ρ = Σ z_k z̄_k − 1 on the affine chart.
pub fn sphere_defining(r: usize) -> RealDefining {
    let mut rho = MPoly::constant(r, r, gr(-1, 0));
    for k in 0..r {
        rho = rho.add(&MPoly::var(r, r, k).mul(&MPoly::var(r, r, r + k)));
    }
    RealDefining::new(rho)
}

/// The field (α + zu − (z|α)z)∂z with (z|α) = Σ z_k ᾱ_k.
pub fn sphere_field(r: usize, alpha: &[GaussRational], u: &ExactMatrix) -> PolyVectorField {
    assert_eq!(alpha.len(), r);
    assert_eq!((u.rows, u.cols), (r, r));
    let zs: Vec<MPoly> = (0..r).map(|k| zvar(r, k)).collect();
    // (z|α) = Σ z_k conj(α_k)
    let mut pairing = MPoly::zero(r, 0);
    for k in 0..r {
        pairing = pairing.add(&zs[k].scale(&alpha[k].conj()));
    }
    let mut comps = Vec::with_capacity(r);
    for m in 0..r {
        let mut f = MPoly::constant(r, 0, alpha[m].clone());
        for j in 0..r {
            f = f.add(&zs[j].scale(u.at(j, m)));
        }
        f = f.sub(&pairing.mul(&zs[m]));
        comps.push(f);
    }
    PolyVectorField::new(comps)
}

/// ℝ-basis of 𝔤 = hol(S) ≅ su(1,r): 2r translations α ∈ {e_k, i e_k}
/// plus r² rotations u from the standard 𝔲(r) basis.
pub fn sphere_hol_basis(r: usize) -> Result<Vec<PolyVectorField>, ModelError> {
    if r < 2 {
        return Err(ModelError::BadDimension(r));
    }
    let mut basis = Vec::new();
    let zero_u = ExactMatrix::zero(r, r);
    for k in 0..r {
        for alpha_k in [gr(1, 0), gr(0, 1)] {
            let mut alpha = vec![GaussRational::zero(); r];
            alpha[k] = alpha_k;
            basis.push(sphere_field(r, &alpha, &zero_u));
        }
    }
    let zero_alpha = vec![GaussRational::zero(); r];
    for u in u_basis(r) {
        basis.push(sphere_field(r, &zero_alpha, &u));
    }
    Ok(basis)
}

/// Standard basis of 𝔲(r): i·E_kk, E_kl − E_lk, i(E_kl + E_lk).
pub fn u_basis(r: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for k in 0..r {
        let mut m = ExactMatrix::zero(r, r);
        *m.at_mut(k, k) = gr(0, 1);
        out.push(m);
    }
    for k in 0..r {
        for l in (k + 1)..r {
            let mut m = ExactMatrix::zero(r, r);
            *m.at_mut(k, l) = gr(1, 0);
            *m.at_mut(l, k) = gr(-1, 0);
            out.push(m);
            let mut m = ExactMatrix::zero(r, r);
            *m.at_mut(k, l) = gr(0, 1);
            *m.at_mut(l, k) = gr(0, 1);
            out.push(m);
        }
    }
    out
}

/// Signature matrix of the sphere's projective lift: diag(−1, 1, …, 1).
pub fn sphere_lift_form(r: usize) -> ExactMatrix {
    let mut j = ExactMatrix::identity(r + 1);
    *j.at_mut(0, 0) = gr(-1, 0);
    j
}

/// The Cayley transform as a projective matrix acting by [z] ↦ [z·C].
///
/// The classical map has a √2 factor; rescaling the target chart gives
/// the rational matrix with w0 = (z0 − z1)/2, w1 = z0 + z1, w_k = z_k,
/// which carries S onto S′ = {z1 + z̄1 = Σ_{k≥2} z_k z̄_k} with unit
/// coefficients.
pub fn cayley_matrix(r: usize) -> ExactMatrix {
    let mut c = ExactMatrix::identity(r + 1);
    *c.at_mut(0, 0) = GaussRational::from_parts(1, 0, 2);
    *c.at_mut(1, 0) = GaussRational::from_parts(-1, 0, 2);
    *c.at_mut(0, 1) = gr(1, 0);
    *c.at_mut(1, 1) = gr(1, 0);
    c
}

/// Pushforward of a chart field along the Cayley transform γ: since the
/// point action is [z] ↦ [z·C], fields transform by X ↦ C⁻¹·X·C.
pub fn cayley_pushforward(r: usize, xi: &PolyVectorField) -> Result<PolyVectorField, VfError> {
    let c = cayley_matrix(r);
    let cinv = c.inverse().unwrap();
    vfield::pushforward_projective(&cinv, xi)
}

/// Hyperquadric z1 + z̄1 = Σ_{j≥2} ε_j z_j z̄_j with ε_j = −1 for j ≤ p
/// and +1 for j > p; the Levi form has type (p−1, q−1).
pub fn quadric_defining(p: usize, q: usize) -> Result<RealDefining, ModelError> {
    let r = match (p + q).checked_sub(1) {
        Some(r) if r >= 2 && p >= 1 && q >= 1 => r,
        _ => return Err(ModelError::BadSignature),
    };
    let mut rho = MPoly::var(r, r, 0).add(&MPoly::var(r, r, r));
    for j in 2..=r {
        let eps = if j <= p { gr(1, 0) } else { gr(-1, 0) };
        // rho = z1 + z̄1 − Σ ε_j z_j z̄_j, with ε_j = −1 for j ≤ p
        rho = rho.add(&MPoly::var(r, r, j - 1).mul(&MPoly::var(r, r, r + j - 1)).scale(&eps));
    }
    Ok(RealDefining::new(rho))
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum CartanKind {
    Split,
    Compact,
}

/// The two conjugacy classes of Cartan subalgebras of 𝔤 in field form.
///
/// Split is the α = 0 case {i z_k ∂z_k}; compact is α = (i, 0, …, 0),
/// whose generator is (i + i z1²)∂z1 + Σ_{k≥2} i z1 z_k ∂z_k.
pub fn sphere_cartan(r: usize, kind: CartanKind) -> Result<SubalgebraSpec, ModelError> {
    if r < 2 {
        return Err(ModelError::BadDimension(r));
    }
    let mut basis = Vec::new();
    match kind {
        CartanKind::Split => {
            for k in 0..r {
                let mut u = ExactMatrix::zero(r, r);
                *u.at_mut(k, k) = gr(0, 1);
                basis.push(sphere_field(r, &vec![GaussRational::zero(); r], &u));
            }
        }
        CartanKind::Compact => {
            let mut alpha = vec![GaussRational::zero(); r];
            alpha[0] = gr(0, 1);
            basis.push(sphere_field(r, &alpha, &ExactMatrix::zero(r, r)));
            let zero_alpha = vec![GaussRational::zero(); r];
            for k in 1..r {
                let mut u = ExactMatrix::zero(r, r);
                *u.at_mut(k, k) = gr(0, 1);
                basis.push(sphere_field(r, &zero_alpha, &u));
            }
        }
    }
    let label = match kind {
        CartanKind::Split => format!("split cartan r={r}"),
        CartanKind::Compact => format!("compact cartan r={r}"),
    };
    Ok(SubalgebraSpec::new(basis, label))
}

/// 𝔳′_s on the quadric chart: {i∂z1} ∪ {i z_k∂z_k : 2 ≤ k ≤ s}
/// ∪ {i(∂z_j − z_j∂z1) : s < j ≤ r}.
pub fn sphere_parabolic_family(r: usize, s: usize) -> Result<SubalgebraSpec, ModelError> {
    if r < 2 {
        return Err(ModelError::BadDimension(r));
    }
    if s < 1 || s > r {
        return Err(ModelError::BadParabolicIndex(s, r));
    }
    let mut basis = Vec::new();
    let mut first = PolyVectorField::zero(r);
    first.components[0] = MPoly::constant(r, 0, gr(0, 1));
    basis.push(first);
    for k in 1..s {
        let mut f = PolyVectorField::zero(r);
        f.components[k] = zvar(r, k).scale(&gr(0, 1));
        basis.push(f);
    }
    for j in s..r {
        let mut f = PolyVectorField::zero(r);
        f.components[j] = MPoly::constant(r, 0, gr(0, 1));
        f.components[0] = zvar(r, j).scale(&gr(0, -1));
        basis.push(f);
    }
    Ok(SubalgebraSpec::new(basis, format!("parabolic F_{s} r={r}")))
}

/// Matrix images of a subalgebra's basis fields under the chart
/// correspondence with su(1,r).
pub fn field_to_matrix_images(v: &SubalgebraSpec) -> Result<Vec<ExactMatrix>, VfError> {
    v.basis
        .iter()
        .map(|f| vfield::field_to_matrix(f).map(|m| m.m))
        .collect()
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum TubeCase {
    /// Π−: φ(z) = (e^{z1}, …, e^{zr}) onto the sphere chart.
    Exp,
    /// Π+: [cos z1, sin z1, e^{z2}, …, e^{zr}], chart w = (tan z1, e^{zk}/cos z1).
    Trig,
    /// F_s: φ′(z) = (z1 − ½Σ_{j>s} z_j², e^{z2}, …, e^{zs}, z_{s+1}, …, zr).
    Parabolic(usize),
}

impl TubeCase {
    pub fn tag(&self) -> String {
        match self {
            TubeCase::Exp => "exp".into(),
            TubeCase::Trig => "trig".into(),
            TubeCase::Parabolic(s) => format!("parabolic-{s}"),
        }
    }
}

/// One entry of the sphere's tube catalog: the covering map onto the
/// model hypersurface, its base equation and domain, the realized
/// subalgebra on the target chart, and an exact base point inside the
/// open orbit.
#[derive(Clone, Debug)]
pub struct TubeRealizationSpec {
    pub case: TubeCase,
    pub r: usize,
    pub subalgebra: SubalgebraSpec,
    pub target: RealDefining,
    pub base_point: Vec<GaussRational>,
    /// Translation directions are i·e_k; basis[k] of the subalgebra is
    /// the pushforward of i·e_k∂z.
    pub translation_convention: &'static str,
}

impl TubeRealizationSpec {
    pub fn covering_map(&self, z: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(z.len(), self.r);
        match self.case {
            TubeCase::Exp => z.iter().map(|v| v.exp()).collect(),
            TubeCase::Trig => {
                let c = z[0].cos();
                let mut w = vec![z[0].sin() / c];
                for v in &z[1..] {
                    w.push(v.exp() / c);
                }
                w
            }
            TubeCase::Parabolic(s) => {
                let mut w1 = z[0];
                for v in &z[s..] {
                    w1 -= 0.5 * v * v;
                }
                let mut w = vec![w1];
                for v in &z[1..s] {
                    w.push(v.exp());
                }
                for v in &z[s..] {
                    w.push(*v);
                }
                w
            }
        }
    }

    /// dφ_z(v), the complex Jacobian applied to a direction.
    pub fn jacobian_apply(&self, z: &[Complex64], v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(z.len(), self.r);
        assert_eq!(v.len(), self.r);
        match self.case {
            TubeCase::Exp => z.iter().zip(v).map(|(zk, vk)| zk.exp() * vk).collect(),
            TubeCase::Trig => {
                let c = z[0].cos();
                let t = z[0].sin() / c;
                let mut out = vec![v[0] / (c * c)];
                for (zk, vk) in z[1..].iter().zip(&v[1..]) {
                    out.push(zk.exp() / c * (vk + t * v[0]));
                }
                out
            }
            TubeCase::Parabolic(s) => {
                let mut d1 = v[0];
                for (zj, vj) in z[s..].iter().zip(&v[s..]) {
                    d1 -= zj * vj;
                }
                let mut out = vec![d1];
                for (zk, vk) in z[1..s].iter().zip(&v[1..s]) {
                    out.push(zk.exp() * vk);
                }
                out.extend_from_slice(&v[s..]);
                out
            }
        }
    }

    /// Base equation g(x) = 0 of F ⊂ ℝ^r.
    pub fn base_residual(&self, x: &[f64]) -> f64 {
        assert_eq!(x.len(), self.r);
        match self.case {
            TubeCase::Exp => x.iter().map(|t| (2.0 * t).exp()).sum::<f64>() - 1.0,
            TubeCase::Trig => {
                2.0 * x[0].sin().powi(2)
                    + x[1..].iter().map(|t| (2.0 * t).exp()).sum::<f64>()
                    - 1.0
            }
            TubeCase::Parabolic(s) => {
                let mut g = -x[0];
                for t in &x[1..s] {
                    g += 0.5 * (2.0 * t).exp();
                }
                for t in &x[s..] {
                    g += t * t;
                }
                g
            }
        }
    }

    pub fn base_gradient(&self, x: &[f64]) -> Vec<f64> {
        match self.case {
            TubeCase::Exp => x.iter().map(|t| 2.0 * (2.0 * t).exp()).collect(),
            TubeCase::Trig => {
                let mut g = vec![2.0 * (2.0 * x[0]).sin()];
                for t in &x[1..] {
                    g.push(2.0 * (2.0 * t).exp());
                }
                g
            }
            TubeCase::Parabolic(s) => {
                let mut g = vec![-1.0];
                for t in &x[1..s] {
                    g.push((2.0 * t).exp());
                }
                for t in &x[s..] {
                    g.push(2.0 * t);
                }
                g
            }
        }
    }

    pub fn in_domain(&self, x: &[f64]) -> bool {
        match self.case {
            TubeCase::Trig => x[0].abs() < std::f64::consts::FRAC_PI_4,
            _ => true,
        }
    }

    /// Sampling box for base-point search.
    pub fn sample_box(&self) -> (f64, f64) {
        (-2.0, 2.0)
    }
}

/// A rational point on the unit sphere of ℝ^r with all coordinates
/// nonzero, built from Pythagorean pairs.
pub fn rational_sphere_point(r: usize) -> Vec<GaussRational> {
    assert!(r >= 2);
    let mut pt = vec![
        GaussRational::from_parts(4, 0, 5),
        GaussRational::from_parts(3, 0, 5),
    ];
    while pt.len() < r {
        let scale = GaussRational::from_parts(4, 0, 5);
        for v in pt.iter_mut() {
            *v = &*v * &scale;
        }
        pt.push(GaussRational::from_parts(3, 0, 5));
    }
    pt
}

pub fn tube_catalog(r: usize) -> Result<Vec<TubeRealizationSpec>, ModelError> {
    if r < 2 {
        return Err(ModelError::BadDimension(r));
    }
    let sphere = sphere_defining(r);
    let sphere_point = rational_sphere_point(r);
    let mut catalog = Vec::new();

    catalog.push(TubeRealizationSpec {
        case: TubeCase::Exp,
        r,
        subalgebra: sphere_cartan(r, CartanKind::Split)?,
        target: sphere.clone(),
        base_point: sphere_point.clone(),
        translation_convention: "i*e_k",
    });
    catalog.push(TubeRealizationSpec {
        case: TubeCase::Trig,
        r,
        subalgebra: sphere_cartan(r, CartanKind::Compact)?,
        target: sphere,
        base_point: sphere_point,
        translation_convention: "i*e_k",
    });

    let quadric = quadric_defining(1, r)?;
    for s in 1..=r {
        // point on S': 2 Re a1 = Σ_{k≥2} |a_k|² with every needed
        // coordinate nonzero
        let mut a = vec![GaussRational::from_parts((r as i64) - 1, 0, 2)];
        a.extend(std::iter::repeat(gr(1, 0)).take(r - 1));
        catalog.push(TubeRealizationSpec {
            case: TubeCase::Parabolic(s),
            r,
            subalgebra: sphere_parabolic_family(r, s)?,
            target: quadric.clone(),
            base_point: a,
            translation_convention: "i*e_k",
        });
    }
    Ok(catalog)
}

// ---------------------------------------------------------------------------
// Involutions on the hyperquadric models S^{p,q}
// ---------------------------------------------------------------------------

/// 𝔥(z) = (u|u) − (v|v) for z = (u,v) ∈ ℂ^p ⊕ ℂ^q, J = diag(1_p, −1_q).
#[derive(Clone, Debug)]
pub struct SignatureForm {
    pub p: usize,
    pub q: usize,
    pub j: ExactMatrix,
}

impl SignatureForm {
    pub fn new(p: usize, q: usize) -> Self {
        let n = p + q;
        let mut j = ExactMatrix::identity(n);
        for k in p..n {
            *j.at_mut(k, k) = gr(-1, 0);
        }
        SignatureForm { p, q, j }
    }

    pub fn n(&self) -> usize {
        self.p + self.q
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, serde::Serialize)]
pub enum InvolutionKind {
    I,
    II,
    III,
    IV,
}

/// The antilinear involution templates of the classification; τ̃ acts on
/// rows as τ̃(z) = conj(z)·A.
#[derive(Clone, Debug)]
pub struct InvolutionSpec {
    pub kind: InvolutionKind,
    pub eps: i8,
    pub delta: i8,
    pub a: ExactMatrix,
    pub form: SignatureForm,
}

/// J_d = [[0, 1],[−1, 0]] ∈ GL(2d, ℤ).
fn symplectic_j(d: usize) -> ExactMatrix {
    let mut m = ExactMatrix::zero(2 * d, 2 * d);
    for k in 0..d {
        *m.at_mut(k, d + k) = gr(1, 0);
        *m.at_mut(d + k, k) = gr(-1, 0);
    }
    m
}

fn block_diag(a: &ExactMatrix, b: &ExactMatrix) -> ExactMatrix {
    let n = a.rows + b.rows;
    let mut m = ExactMatrix::zero(n, n);
    for i in 0..a.rows {
        for j in 0..a.cols {
            *m.at_mut(i, j) = a.at(i, j).clone();
        }
    }
    for i in 0..b.rows {
        for j in 0..b.cols {
            *m.at_mut(a.rows + i, a.cols + j) = b.at(i, j).clone();
        }
    }
    m
}

pub fn involution(kind: InvolutionKind, p: usize, q: usize) -> Result<InvolutionSpec, ModelError> {
    let form = SignatureForm::new(p, q);
    let n = p + q;
    let (eps, delta, a) = match kind {
        InvolutionKind::I => (1, 1, ExactMatrix::identity(n)),
        InvolutionKind::II => {
            if p != q {
                return Err(ModelError::InadmissibleInvolution(kind, p, q));
            }
            // τ̃(z) = (v̄, ū)
            let mut a = ExactMatrix::zero(n, n);
            for k in 0..p {
                *a.at_mut(k, p + k) = gr(1, 0);
                *a.at_mut(p + k, k) = gr(1, 0);
            }
            (1, -1, a)
        }
        InvolutionKind::III => {
            if p % 2 != 0 || q % 2 != 0 {
                return Err(ModelError::InadmissibleInvolution(kind, p, q));
            }
            (-1, 1, block_diag(&symplectic_j(p / 2), &symplectic_j(q / 2)))
        }
        InvolutionKind::IV => {
            if p != q {
                return Err(ModelError::InadmissibleInvolution(kind, p, q));
            }
            (-1, -1, symplectic_j(p))
        }
    };
    let spec = InvolutionSpec { kind, eps, delta, a, form };
    debug_assert!(spec.verify_identities());
    Ok(spec)
}

impl InvolutionSpec {
    /// τ̃² = ε·id ⟺ Ā·A = ε·I, and 𝔥∘τ̃ = δ·𝔥 ⟺ A·J·A* = δ·J,
    /// both exact matrix identities.
    pub fn verify_identities(&self) -> bool {
        let n = self.form.n();
        let a_conj = self.a.conj_transpose().transpose();
        let eps_ok = a_conj.mul(&self.a)
            == ExactMatrix::identity(n).scale(&gr(self.eps as i64, 0));
        let delta_ok = self.a.mul(&self.form.j).mul(&self.a.conj_transpose())
            == self.form.j.scale(&gr(self.delta as i64, 0));
        eps_ok && delta_ok
    }

    /// dim S^τ as given by the classification, when the fixed set is a
    /// manifold of m-planes: I → m(n−2m), II → m(n−m), IV (m even) →
    /// m(n−m−1); none for III (fixed set empty for m odd).
    pub fn fixed_set_dim(&self, m: usize) -> Option<usize> {
        let n = self.form.n();
        match self.kind {
            InvolutionKind::I => Some(m * (n.saturating_sub(2 * m))),
            InvolutionKind::II => Some(m * (n - m)),
            InvolutionKind::III => None,
            InvolutionKind::IV if m % 2 == 0 => Some(m * (n - m - 1)),
            InvolutionKind::IV => None,
        }
    }
}

/// ℝ-basis of su(J) for J = diag(1_p, −1_q): matrices J·H with H
/// anti-hermitian, intersected with trace zero.
pub fn su_basis(form: &SignatureForm) -> Vec<ExactMatrix> {
    let n = form.n();
    let j = &form.j;
    let mut out = Vec::new();
    // diagonal part: i(J_kk E_kk) has trace i·J_kk; pair against slot n−1
    for k in 0..(n - 1) {
        let mut h = ExactMatrix::zero(n, n);
        *h.at_mut(k, k) = gr(0, 1);
        let mut last = ExactMatrix::zero(n, n);
        *last.at_mut(n - 1, n - 1) = gr(0, 1);
        let jk = j.at(k, k).clone();
        let jn = j.at(n - 1, n - 1).clone();
        let x = j.mul(&h).sub(&j.mul(&last).scale(&(&jk * &jn.inv().unwrap())));
        out.push(x);
    }
    for k in 0..n {
        for l in (k + 1)..n {
            let mut h = ExactMatrix::zero(n, n);
            *h.at_mut(k, l) = gr(1, 0);
            *h.at_mut(l, k) = gr(-1, 0);
            out.push(j.mul(&h));
            let mut h = ExactMatrix::zero(n, n);
            *h.at_mut(k, l) = gr(0, 1);
            *h.at_mut(l, k) = gr(0, 1);
            out.push(j.mul(&h));
        }
    }
    debug_assert_eq!(out.len(), n * n - 1);
    out
}

fn realify_matrix(m: &ExactMatrix) -> Vec<GaussRational> {
    let mut v = Vec::with_capacity(2 * m.entries.len());
    for e in &m.entries {
        v.push(GaussRational::new(e.re.clone(), num_rational::BigRational::from_integer(0.into())));
    }
    for e in &m.entries {
        v.push(GaussRational::new(e.im.clone(), num_rational::BigRational::from_integer(0.into())));
    }
    v
}

/// The ±1 eigenspace of the induced involution X ↦ A⁻¹·X̄·A on the real
/// span of the given matrix basis. Returns an ℝ-basis of the eigenspace.
pub fn fixed_subalgebra(
    basis: &[ExactMatrix],
    tau: &InvolutionSpec,
    sign: i8,
) -> Result<Vec<ExactMatrix>, ModelError> {
    assert!(sign == 1 || sign == -1);
    let ainv = tau.a.inverse().ok_or(ModelError::BadSignature)?;
    let images: Vec<ExactMatrix> = basis
        .iter()
        .map(|x| {
            let xbar = x.conj_transpose().transpose();
            ainv.mul(&xbar).mul(&tau.a)
        })
        .collect();
    // even for ε = −1, X ↦ A⁻¹X̄A is an involution on matrices since
    // (εI)⁻¹·X·(εI) = X
    let sgn = gr(sign as i64, 0);
    let cols: Vec<Vec<GaussRational>> = basis
        .iter()
        .zip(&images)
        .map(|(x, tx)| realify_matrix(&tx.sub(&x.scale(&sgn))))
        .collect();
    // nullspace of the realified column matrix gives the eigen-combinations
    let ncols = cols.len();
    let nrows = cols[0].len();
    let mut m = ExactMatrix::zero(nrows, ncols);
    for (jcol, col) in cols.iter().enumerate() {
        for (irow, v) in col.iter().enumerate() {
            *m.at_mut(irow, jcol) = v.clone();
        }
    }
    let null = m.nullspace();
    let mut out = Vec::new();
    for combo in null {
        let mut acc = ExactMatrix::zero(basis[0].rows, basis[0].cols);
        for (c, x) in combo.iter().zip(basis) {
            assert!(c.is_real());
            acc = acc.add(&x.scale(c));
        }
        out.push(acc);
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// Hermitian cones and Siegel models
// ---------------------------------------------------------------------------

/// C^p_{j,k}: hermitian p×p matrices with exactly j positive and k
/// negative eigenvalues.
#[derive(Clone, Copy, Debug)]
pub struct ConeSpec {
    pub p: usize,
    pub j: usize,
    pub k: usize,
}

impl ConeSpec {
    pub fn new(p: usize, j: usize, k: usize) -> Result<Self, ModelError> {
        if j + k > p || p == 0 {
            return Err(ModelError::BadSignature);
        }
        Ok(ConeSpec { p, j, k })
    }
}

pub fn cone_membership(cone: &ConeSpec, x: &ExactMatrix) -> Result<bool, ModelError> {
    if x.rows != cone.p || !x.is_hermitian() {
        return Err(ModelError::NotHermitian);
    }
    Ok(x.hermitian_signature() == (cone.j, cone.k))
}

/// Σ^{p,q}_{j,k} = {(z,w) : Im z − ww* ∈ C^p_{j,k}} with z ∈ ℂ^{p×p}
/// (the complexified hermitian matrices) and w ∈ ℂ^{p×(q−p)}.
#[derive(Clone, Debug)]
pub struct SiegelModel {
    pub p: usize,
    pub q: usize,
    pub cone: ConeSpec,
}

impl SiegelModel {
    pub fn new(p: usize, q: usize, j: usize, k: usize) -> Result<Self, ModelError> {
        if !(q > p && p >= 1) {
            return Err(ModelError::BadSiegelParameters);
        }
        let cone = ConeSpec::new(p, j, k).map_err(|_| ModelError::BadSiegelParameters)?;
        Ok(SiegelModel { p, q, cone })
    }

    /// real dim of V = hermitian p×p matrices
    pub fn dim_v(&self) -> usize {
        self.p * self.p
    }

    /// complex dim of W = ℂ^{p×(q−p)}
    pub fn dim_w(&self) -> usize {
        self.p * (self.q - self.p)
    }

    /// ambient complex dimension n = dim_ℂ V^ℂ + dim_ℂ W
    pub fn ambient_dim(&self) -> usize {
        self.dim_v() + self.dim_w()
    }

    /// variable index of z_{rs} (matrix coordinate on V^ℂ)
    pub fn z_index(&self, r: usize, s: usize) -> usize {
        r * self.p + s
    }

    /// variable index of w_{ab}
    pub fn w_index(&self, a: usize, b: usize) -> usize {
        self.dim_v() + a * (self.q - self.p) + b
    }

    /// F(w, w′) = w·(w′)* as a p×p matrix of f64 entries.
    pub fn f_eval(&self, w: &[Complex64], wp: &[Complex64]) -> Vec<Complex64> {
        let d = self.q - self.p;
        let mut out = vec![Complex64::new(0.0, 0.0); self.p * self.p];
        for r in 0..self.p {
            for s in 0..self.p {
                for b in 0..d {
                    out[r * self.p + s] += w[r * d + b] * wp[s * d + b].conj();
                }
            }
        }
        out
    }

    /// ℝ-basis of V: E_rr, E_rs + E_sr, i(E_rs − E_sr).
    pub fn v_basis(&self) -> Vec<ExactMatrix> {
        let p = self.p;
        let mut out = Vec::new();
        for r in 0..p {
            let mut m = ExactMatrix::zero(p, p);
            *m.at_mut(r, r) = gr(1, 0);
            out.push(m);
        }
        for r in 0..p {
            for s in (r + 1)..p {
                let mut m = ExactMatrix::zero(p, p);
                *m.at_mut(r, s) = gr(1, 0);
                *m.at_mut(s, r) = gr(1, 0);
                out.push(m);
                let mut m = ExactMatrix::zero(p, p);
                *m.at_mut(r, s) = gr(0, 1);
                *m.at_mut(s, r) = gr(0, -1);
                out.push(m);
            }
        }
        out
    }

    /// The field (2iF(w,c) + v)∂z + c∂w for constant v ∈ V, c ∈ W.
    /// F(w,c)_{rs} = Σ_b w_{rb} c̄_{sb} is linear in the w-variables.
    pub fn nilpotent_field(&self, v: Option<&ExactMatrix>, c: Option<&ExactMatrix>) -> PolyVectorField {
        let n = self.ambient_dim();
        let p = self.p;
        let d = self.q - self.p;
        let mut comps = vec![MPoly::zero(n, 0); n];
        if let Some(v) = v {
            for r in 0..p {
                for s in 0..p {
                    comps[self.z_index(r, s)] =
                        comps[self.z_index(r, s)].add(&MPoly::constant(n, 0, v.at(r, s).clone()));
                }
            }
        }
        if let Some(c) = c {
            let two_i = gr(0, 2);
            for r in 0..p {
                for s in 0..p {
                    let mut acc = comps[self.z_index(r, s)].clone();
                    for b in 0..d {
                        let coeff = &two_i * &c.at(s, b).conj();
                        let wv = MPoly::var(n, 0, self.dim_v() + r * d + b);
                        acc = acc.add(&wv.scale(&coeff));
                    }
                    comps[self.z_index(r, s)] = acc;
                }
            }
            for a in 0..p {
                for b in 0..d {
                    comps[self.dim_v() + a * d + b] =
                        MPoly::constant(n, 0, c.at(a, b).clone());
                }
            }
        }
        PolyVectorField::new(comps)
    }
}

/// 𝔫 = {(2iF(w,c) + v)∂z + c∂w}: dim = dimV + 2 dimW, step ≤ 2 nilpotent.
pub fn siegel_nilpotent_basis(model: &SiegelModel) -> SubalgebraSpec {
    let mut basis = Vec::new();
    for v in model.v_basis() {
        basis.push(model.nilpotent_field(Some(&v), None));
    }
    let p = model.p;
    let d = model.q - model.p;
    for a in 0..p {
        for b in 0..d {
            for c_ab in [gr(1, 0), gr(0, 1)] {
                let mut c = ExactMatrix::zero(p, d);
                *c.at_mut(a, b) = c_ab;
                basis.push(model.nilpotent_field(None, Some(&c)));
            }
        }
    }
    SubalgebraSpec::new(
        basis,
        format!("siegel nilpotent p={} q={}", model.p, model.q),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::vfield::{field_to_matrix, is_abelian, spans_tangent, tangent_to, totally_real};

    #[test]
    fn sphere_basis_count_and_tangency() {
        for r in 2..=3 {
            let basis = sphere_hol_basis(r).unwrap();
            assert_eq!(basis.len(), (r + 1) * (r + 1) - 1);
            let rho = sphere_defining(r);
            for f in &basis {
                assert!(tangent_to(f, &rho).unwrap());
            }
        }
    }

    #[test]
    fn sphere_basis_lands_in_su_1_r() {
        let r = 2;
        let j = sphere_lift_form(r);
        for f in sphere_hol_basis(r).unwrap() {
            let x = field_to_matrix(&f).unwrap();
            assert!(x.in_su(&j));
        }
    }

    #[test]
    fn cayley_maps_sphere_points() {
        let c = cayley_matrix(2);
        // γ([1,1,0]) = [0,2,0] ~ the infinite point [0,1,0]
        let v = vec![gr(1, 0), gr(1, 0), gr(0, 0)];
        let w = c.apply_row(&v);
        assert!(w[0].is_zero() && !w[1].is_zero() && w[2].is_zero());
        // γ([1,−1,0]) = [1,0,0], the chart origin
        let v = vec![gr(1, 0), gr(-1, 0), gr(0, 0)];
        let w = c.apply_row(&v);
        assert!(!w[0].is_zero() && w[1].is_zero() && w[2].is_zero());
    }

    #[test]
    fn cayley_pushforward_tangent_to_quadric() {
        let r = 2;
        let quadric = quadric_defining(1, 2).unwrap();
        for f in sphere_hol_basis(r).unwrap() {
            let g = cayley_pushforward(r, &f).unwrap();
            assert!(tangent_to(&g, &quadric).unwrap());
        }
    }

    #[test]
    fn quadric_origin_membership() {
        let rho = quadric_defining(1, 2).unwrap();
        let origin = vec![GaussRational::zero(); 2];
        assert!(rho.rho.eval_at_z(&origin).is_zero());
    }

    #[test]
    fn cartans_are_abelian_totally_real() {
        for r in 2..=3 {
            for kind in [CartanKind::Split, CartanKind::Compact] {
                let v = sphere_cartan(r, kind).unwrap();
                assert_eq!(v.dim(), r);
                assert!(is_abelian(&v));
                assert!(totally_real(&v));
                assert!(spans_tangent(&v, &rational_sphere_point(r)));
                let rho = sphere_defining(r);
                for f in &v.basis {
                    assert!(tangent_to(f, &rho).unwrap());
                }
            }
        }
    }

    #[test]
    fn parabolic_family_checks() {
        for r in 2..=3 {
            let rho = quadric_defining(1, r).unwrap();
            for s in 1..=r {
                let v = sphere_parabolic_family(r, s).unwrap();
                assert_eq!(v.dim(), r);
                assert!(is_abelian(&v));
                assert!(totally_real(&v));
                for f in &v.basis {
                    assert!(tangent_to(f, &rho).unwrap());
                }
            }
        }
    }

    #[test]
    fn catalog_counts_and_base_points() {
        for r in 2..=3 {
            let cat = tube_catalog(r).unwrap();
            assert_eq!(cat.len(), r + 2);
            for spec in &cat {
                // exact base point lies on the target
                assert!(spec.target.rho.eval_at_z(&spec.base_point).is_zero());
                assert!(spans_tangent(&spec.subalgebra, &spec.base_point));
            }
        }
    }

    #[test]
    fn exp_base_point_example() {
        let cat = tube_catalog(2).unwrap();
        let exp = &cat[0];
        let x = [-0.5 * 2.0_f64.ln(), -0.5 * 2.0_f64.ln()];
        assert!(exp.base_residual(&x).abs() < 1e-12);
        let z: Vec<Complex64> = x.iter().map(|&t| Complex64::new(t, 0.0)).collect();
        let w = exp.covering_map(&z);
        let norm: f64 = w.iter().map(|c| c.norm_sqr()).sum();
        assert!((norm - 1.0).abs() < 1e-12);
    }

    #[test]
    fn involution_types_identities() {
        for (p, q) in [(1, 2), (2, 2), (2, 3), (2, 4)] {
            for kind in [
                InvolutionKind::I,
                InvolutionKind::II,
                InvolutionKind::III,
                InvolutionKind::IV,
            ] {
                match involution(kind, p, q) {
                    Ok(spec) => {
                        assert!(spec.verify_identities());
                        let expected = match kind {
                            InvolutionKind::I => (1, 1),
                            InvolutionKind::II => (1, -1),
                            InvolutionKind::III => (-1, 1),
                            InvolutionKind::IV => (-1, -1),
                        };
                        assert_eq!((spec.eps, spec.delta), expected);
                    }
                    Err(_) => {
                        let admissible = match kind {
                            InvolutionKind::I => true,
                            InvolutionKind::II | InvolutionKind::IV => p == q,
                            InvolutionKind::III => p % 2 == 0 && q % 2 == 0,
                        };
                        assert!(!admissible, "{kind:?} should be admissible at ({p},{q})");
                    }
                }
            }
        }
    }

    #[test]
    fn type_i_fixed_subalgebra_is_so_p_q() {
        for (p, q) in [(1, 2), (2, 2), (1, 3)] {
            let form = SignatureForm::new(p, q);
            let basis = su_basis(&form);
            let n = p + q;
            assert_eq!(basis.len(), n * n - 1);
            for x in &basis {
                assert!(x.trace().is_zero());
                assert!(x.conj_transpose().mul(&form.j).add(&form.j.mul(x)).is_zero());
            }
            let tau = involution(InvolutionKind::I, p, q).unwrap();
            let fixed = fixed_subalgebra(&basis, &tau, 1).unwrap();
            assert_eq!(fixed.len(), n * (n - 1) / 2);
            let anti = fixed_subalgebra(&basis, &tau, -1).unwrap();
            assert_eq!(fixed.len() + anti.len(), n * n - 1);
        }
    }

    #[test]
    fn cone_membership_examples() {
        let cone = ConeSpec::new(2, 1, 0).unwrap();
        let mut x = ExactMatrix::zero(2, 2);
        *x.at_mut(0, 0) = gr(1, 0);
        assert!(cone_membership(&cone, &x).unwrap());
        *x.at_mut(1, 1) = gr(-1, 0);
        assert!(!cone_membership(&cone, &x).unwrap());
    }

    #[test]
    fn nilpotent_algebra_step_two() {
        for (p, q) in [(1, 2), (2, 3)] {
            let model = SiegelModel::new(p, q, 0, 0).unwrap();
            let n = siegel_nilpotent_basis(&model);
            assert_eq!(n.dim(), model.dim_v() + 2 * model.dim_w());
            for a in &n.basis {
                for b in &n.basis {
                    let ab = a.bracket(b).unwrap();
                    for c in &n.basis {
                        assert!(ab.bracket(c).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn nilpotent_bracket_formula() {
        // [ξ_c, ξ_c'] = 2i(F(c′,c) − F(c,c′))∂z
        let model = SiegelModel::new(2, 3, 0, 0).unwrap();
        let mut c1 = ExactMatrix::zero(2, 1);
        *c1.at_mut(0, 0) = gr(1, 0);
        let mut c2 = ExactMatrix::zero(2, 1);
        *c2.at_mut(1, 0) = gr(0, 1);
        let f1 = model.nilpotent_field(None, Some(&c1));
        let f2 = model.nilpotent_field(None, Some(&c2));
        let br = f1.bracket(&f2).unwrap();
        // with our bracket orientation: [ξ_c, ξ_c'] = 2i(F(c,c') − F(c',c))∂z
        let fc1c2 = c1.mul(&c2.conj_transpose());
        let fc2c1 = c2.mul(&c1.conj_transpose());
        let expect_matrix = fc1c2.sub(&fc2c1).scale(&gr(0, 2));
        for r in 0..2 {
            for s in 0..2 {
                let idx = model.z_index(r, s);
                let got = br.components[idx].coeff(&vec![0; model.ambient_dim()]);
                assert_eq!(&got, expect_matrix.at(r, s));
                assert_eq!(br.components[idx].total_degree(), 0);
            }
        }
    }
}
