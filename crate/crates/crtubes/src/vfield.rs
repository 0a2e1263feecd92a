//! Holomorphic polynomial vector fields ξ = f(z)∂/∂z, their brackets and
//! span tests, tangency to quadratically-defined hypersurfaces, and the
//! bridge to trace-free matrices acting on the affine chart of ℙ_r.
//!
//! Conventions: z is a row vector, projective points are rows [z0, …, zr]
//! acted on from the right, and the chart is [1, z].

use crate::linalg::{self, ExactMatrix};
use crate::poly::MPoly;
use crate::rational::GaussRational;
use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum VfError {
    #[error("ambient dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("defining polynomial outside the supported affine-plus-hermitian shape")]
    UnsupportedDefining,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("field is not of chart form (degree > 2 or wrong quadratic part)")]
    NotChartForm,
    #[error("matrix must be trace-free")]
    NotTraceFree,
}

/// ξ = f(z)∂/∂z with holomorphic polynomial components.
#[derive(Clone, PartialEq, Debug)]
pub struct PolyVectorField {
    pub n: usize,
    pub components: Vec<MPoly>,
}

impl PolyVectorField {
    pub fn new(components: Vec<MPoly>) -> Self {
        let n = components.len();
        assert!(components.iter().all(|c| c.nvars == n && c.nconj == 0));
        PolyVectorField { n, components }
    }

    pub fn zero(n: usize) -> Self {
        PolyVectorField::new(vec![MPoly::zero(n, 0); n])
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Constant field v∂/∂z.
    pub fn constant(v: Vec<GaussRational>) -> Self {
        let n = v.len();
        PolyVectorField::new(
            v.into_iter()
                .map(|c| MPoly::constant(n, 0, c))
                .collect(),
        )
    }

    pub fn add(&self, other: &PolyVectorField) -> PolyVectorField {
        assert_eq!(self.n, other.n);
        PolyVectorField::new(
            self.components
                .iter()
                .zip(&other.components)
                .map(|(a, b)| a.add(b))
                .collect(),
        )
    }

    pub fn sub(&self, other: &PolyVectorField) -> PolyVectorField {
        self.add(&other.scale(&-GaussRational::one()))
    }

    pub fn scale(&self, k: &GaussRational) -> PolyVectorField {
        PolyVectorField::new(self.components.iter().map(|c| c.scale(k)).collect())
    }

    pub fn times_i(&self) -> PolyVectorField {
        self.scale(&GaussRational::i())
    }

    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.total_degree())
            .max()
            .unwrap_or(0)
    }

    pub fn evaluate(&self, a: &[GaussRational]) -> Vec<GaussRational> {
        self.components.iter().map(|c| c.eval(a)).collect()
    }

    pub fn evaluate_f64(&self, a: &[Complex64]) -> Vec<Complex64> {
        self.components.iter().map(|c| c.eval_f64(a)).collect()
    }

    /// [ξ,η]_k = Σ_j (f_j ∂g_k/∂z_j − g_j ∂f_k/∂z_j).
    pub fn bracket(&self, other: &PolyVectorField) -> Result<PolyVectorField, VfError> {
        if self.n != other.n {
            return Err(VfError::DimensionMismatch(self.n, other.n));
        }
        let n = self.n;
        let mut comps = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = MPoly::zero(n, 0);
            for j in 0..n {
                acc = acc.add(&self.components[j].mul(&other.components[k].diff(j)));
                acc = acc.sub(&other.components[j].mul(&self.components[k].diff(j)));
            }
            comps.push(acc);
        }
        Ok(PolyVectorField::new(comps))
    }
}

/// Common-support coefficient vectors for a family of fields, so that
/// span questions reduce to exact matrix rank.
pub fn coeff_vectors(fields: &[PolyVectorField]) -> Vec<Vec<GaussRational>> {
    if fields.is_empty() {
        return Vec::new();
    }
    let n = fields[0].n;
    let mut support: Vec<(usize, crate::poly::Monomial)> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    for f in fields {
        assert_eq!(f.n, n);
        for (k, c) in f.components.iter().enumerate() {
            for m in c.terms.keys() {
                if seen.insert((k, m.clone())) {
                    support.push((k, m.clone()));
                }
            }
        }
    }
    fields
        .iter()
        .map(|f| {
            support
                .iter()
                .map(|(k, m)| f.components[*k].coeff(&m.0))
                .collect()
        })
        .collect()
}

/// A real defining function ρ(z, z̄), fixed by conj-swap.
#[derive(Clone, PartialEq, Debug)]
pub struct RealDefining {
    pub rho: MPoly,
}

impl RealDefining {
    pub fn new(rho: MPoly) -> Self {
        assert!(rho.is_real_valued(), "defining polynomial must be real-valued");
        RealDefining { rho }
    }

    pub fn n(&self) -> usize {
        self.rho.nvars
    }

    pub fn eval_f64(&self, z: &[Complex64]) -> f64 {
        self.rho.eval_f64_at_z(z).re
    }
}

/// An ordered ℝ-basis of a real span of fields (the 𝔳 of the realization
/// procedure).
#[derive(Clone, Debug)]
pub struct SubalgebraSpec {
    pub basis: Vec<PolyVectorField>,
    pub label: String,
}

impl SubalgebraSpec {
    pub fn new(basis: Vec<PolyVectorField>, label: impl Into<String>) -> Self {
        let spec = SubalgebraSpec { basis, label: label.into() };
        assert_eq!(
            linalg::real_span_dim(&coeff_vectors(&spec.basis)),
            spec.basis.len(),
            "basis must be R-linearly independent"
        );
        spec
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }
}

pub fn is_abelian(v: &SubalgebraSpec) -> bool {
    for (i, a) in v.basis.iter().enumerate() {
        for b in &v.basis[i + 1..] {
            match a.bracket(b) {
                Ok(br) if br.is_zero() => {}
                _ => return false,
            }
        }
    }
    true
}

pub fn totally_real(v: &SubalgebraSpec) -> bool {
    let mut fields: Vec<PolyVectorField> = v.basis.clone();
    fields.extend(v.basis.iter().map(|f| f.times_i()));
    linalg::real_span_dim(&coeff_vectors(&fields)) == 2 * v.basis.len()
}

/// Does 𝔳 ⊕ i𝔳 evaluate onto all of T_aZ = ℂ^n?
pub fn spans_tangent(v: &SubalgebraSpec, a: &[GaussRational]) -> bool {
    if v.basis.is_empty() {
        return false;
    }
    let n = v.basis[0].n;
    let mut vals: Vec<Vec<GaussRational>> = Vec::new();
    for f in &v.basis {
        vals.push(f.evaluate(a));
        vals.push(f.times_i().evaluate(a));
    }
    linalg::complex_span_dim(&vals) == n
}

/// Exact tangency of ξ to {ρ = 0}: the real polynomial
/// Σ f_j ∂ρ/∂z_j + conj-swap of the same must be a multiple of ρ.
pub fn tangent_to(xi: &PolyVectorField, rho: &RealDefining) -> Result<bool, VfError> {
    if rho.rho.total_degree() > 2 {
        return Err(VfError::UnsupportedDefining);
    }
    if xi.n != rho.n() {
        return Err(VfError::DimensionMismatch(xi.n, rho.n()));
    }
    let n = xi.n;
    let mut half = MPoly::zero(n, n);
    for j in 0..n {
        let fj = xi.components[j].lift_to_doubled();
        half = half.add(&fj.mul(&rho.rho.diff(j)));
    }
    let residual = half.add(&half.conj_swap());
    Ok(divides(&rho.rho, &residual))
}

/// Is p a polynomial multiple of rho? Decided by an exact linear solve
/// for the quotient's coefficients.
fn divides(rho: &MPoly, p: &MPoly) -> bool {
    if p.is_zero() {
        return true;
    }
    let nt = rho.nvars_total();
    // If q·rho = p then the top-degree parts multiply without
    // cancellation, so deg q = deg p - deg rho exactly.
    let Some(dq) = p.total_degree().checked_sub(rho.total_degree()) else {
        return false;
    };
    // candidate quotient monomials of degree <= dq
    let mut monos: Vec<Vec<u32>> = Vec::new();
    gen_monomials(nt, dq, &mut vec![0; nt], 0, &mut monos);
    // residual support
    let mut support: Vec<crate::poly::Monomial> = Vec::new();
    let mut seen = std::collections::BTreeSet::new();
    let mut columns: Vec<MPoly> = Vec::new();
    for exps in &monos {
        let mut q = MPoly::zero(rho.nvars, rho.nconj);
        q.terms
            .insert(crate::poly::Monomial(exps.clone()), GaussRational::one());
        let col = q.mul(rho);
        for m in col.terms.keys() {
            if seen.insert(m.clone()) {
                support.push(m.clone());
            }
        }
        columns.push(col);
    }
    for m in p.terms.keys() {
        if seen.insert(m.clone()) {
            support.push(m.clone());
        }
    }
    let rows: Vec<Vec<GaussRational>> = support
        .iter()
        .map(|m| columns.iter().map(|c| c.coeff(&m.0)).collect())
        .collect();
    let b: Vec<GaussRational> = support.iter().map(|m| p.coeff(&m.0)).collect();
    ExactMatrix::from_rows(rows).solve(&b).is_some()
}

fn gen_monomials(nvars: usize, maxdeg: u32, cur: &mut Vec<u32>, pos: usize, out: &mut Vec<Vec<u32>>) {
    if pos == nvars {
        out.push(cur.clone());
        return;
    }
    let used: u32 = cur[..pos].iter().sum();
    for e in 0..=(maxdeg - used) {
        cur[pos] = e;
        gen_monomials(nvars, maxdeg, cur, pos + 1, out);
    }
    cur[pos] = 0;
}

/// Trace-free (r+1)×(r+1) matrix, an element of sl(r+1,ℂ) ≅ hol(ℙ_r).
#[derive(Clone, PartialEq, Debug)]
pub struct MatrixRep {
    pub size: usize,
    pub m: ExactMatrix,
}

impl MatrixRep {
    pub fn new(m: ExactMatrix) -> Result<Self, VfError> {
        if m.rows != m.cols {
            return Err(VfError::DimensionMismatch(m.rows, m.cols));
        }
        if !m.trace().is_zero() {
            return Err(VfError::NotTraceFree);
        }
        Ok(MatrixRep { size: m.rows, m })
    }

    /// X ∈ su(J) iff X*·J + J·X = 0.
    pub fn in_su(&self, j_form: &ExactMatrix) -> bool {
        self.m
            .conj_transpose()
            .mul(j_form)
            .add(&j_form.mul(&self.m))
            .is_zero()
    }

    pub fn bracket(&self, other: &MatrixRep) -> MatrixRep {
        MatrixRep {
            size: self.size,
            m: self.m.mul(&other.m).sub(&other.m.mul(&self.m)),
        }
    }
}

/// Chart field of X = [[a, b],[c, d]]: ξ_X(z) = b + z·d − a·z − (z·c)·z.
pub fn matrix_to_field(x: &MatrixRep) -> PolyVectorField {
    let r = x.size - 1;
    let a = x.m.at(0, 0).clone();
    let zvars: Vec<MPoly> = (0..r).map(|k| MPoly::var(r, 0, k)).collect();
    // scalar z·c
    let mut zc = MPoly::zero(r, 0);
    for j in 0..r {
        zc = zc.add(&zvars[j].scale(x.m.at(j + 1, 0)));
    }
    let mut comps = Vec::with_capacity(r);
    for k in 0..r {
        let mut f = MPoly::constant(r, 0, x.m.at(0, k + 1).clone());
        for j in 0..r {
            f = f.add(&zvars[j].scale(x.m.at(j + 1, k + 1)));
        }
        f = f.sub(&zvars[k].scale(&a));
        f = f.sub(&zc.mul(&zvars[k]));
        comps.push(f);
    }
    PolyVectorField::new(comps)
}

/// Inverse of `matrix_to_field` on chart-form fields.
pub fn field_to_matrix(xi: &PolyVectorField) -> Result<MatrixRep, VfError> {
    let r = xi.n;
    if xi.degree() > 2 {
        return Err(VfError::NotChartForm);
    }
    let zero_exp = vec![0u32; r];
    let mut b = vec![GaussRational::zero(); r];
    let mut lin = ExactMatrix::zero(r, r); // L with ξ_lin(z) = z·L
    let mut c = vec![GaussRational::zero(); r];
    let mut c_fixed = false;
    for k in 0..r {
        let comp = &xi.components[k];
        b[k] = comp.coeff(&zero_exp);
        for j in 0..r {
            let mut e = zero_exp.clone();
            e[j] = 1;
            *lin.at_mut(j, k) = comp.coeff(&e);
        }
        // quadratic part must be −(z·c)·z_k; the coefficient of z_j z_k
        // in component k is −c_j
        let mut ck_col = vec![GaussRational::zero(); r];
        for j in 0..r {
            let mut e = zero_exp.clone();
            e[j] += 1;
            e[k] += 1;
            ck_col[j] = -&comp.coeff(&e);
        }
        if !c_fixed && ck_col.iter().any(|v| !v.is_zero()) {
            c = ck_col;
            c_fixed = true;
        }
    }
    if !c_fixed {
        // quadratic part may still be zero everywhere
        c = vec![GaussRational::zero(); r];
    }
    // a = −tr(L)/(r+1), d = L + a·I
    let tr = lin.trace();
    let a = -&tr.scale(&num_rational::BigRational::new(
        num_bigint::BigInt::from(1),
        num_bigint::BigInt::from((r + 1) as i64),
    ));
    let mut m = ExactMatrix::zero(r + 1, r + 1);
    *m.at_mut(0, 0) = a.clone();
    for k in 0..r {
        *m.at_mut(0, k + 1) = b[k].clone();
        *m.at_mut(k + 1, 0) = c[k].clone();
        for j in 0..r {
            *m.at_mut(k + 1, j + 1) = lin.at(k, j).clone();
        }
        *m.at_mut(k + 1, k + 1) += &a;
    }
    let rep = MatrixRep::new(m)?;
    if matrix_to_field(&rep) != *xi {
        return Err(VfError::NotChartForm);
    }
    Ok(rep)
}

/// Conjugation X ↦ g·X·g⁻¹ transported to chart fields. This is the
/// pushforward along the projective map [z] ↦ [z·g⁻¹] in the row-action
/// convention.
pub fn pushforward_projective(
    g: &ExactMatrix,
    xi: &PolyVectorField,
) -> Result<PolyVectorField, VfError> {
    let x = field_to_matrix(xi)?;
    let ginv = g.inverse().ok_or(VfError::SingularMatrix)?;
    let conj = g.mul(&x.m).mul(&ginv);
    Ok(matrix_to_field(&MatrixRep::new(conj)?))
}

/// Antilinear affine map τ(z) = conj(z)·A + b in row convention.
#[derive(Clone, Debug)]
pub struct AntiholomorphicMap {
    pub a: ExactMatrix,
    pub b: Vec<GaussRational>,
}

impl AntiholomorphicMap {
    pub fn conjugation(n: usize) -> Self {
        AntiholomorphicMap {
            a: ExactMatrix::identity(n),
            b: vec![GaussRational::zero(); n],
        }
    }

    pub fn apply(&self, z: &[GaussRational]) -> Vec<GaussRational> {
        let zc: Vec<GaussRational> = z.iter().map(|v| v.conj()).collect();
        let mut w = self.a.apply_row(&zc);
        for (wk, bk) in w.iter_mut().zip(&self.b) {
            *wk += bk;
        }
        w
    }

    pub fn is_involution(&self) -> bool {
        // τ²(z) = conj(conj(z)A + b)·A + b = z·ĀA + b̄A + b
        let comp = self.a.conj_transpose().transpose().mul(&self.a); // Ā·A
        if comp != ExactMatrix::identity(self.a.rows) {
            return false;
        }
        let bc: Vec<GaussRational> = self.b.iter().map(|v| v.conj()).collect();
        let shift = self.a.apply_row(&bc);
        shift
            .iter()
            .zip(&self.b)
            .all(|(s, b)| (s + b).is_zero())
    }
}

/// τ_*ξ for τ(z) = conj(z)·A + b: (τ_*ξ)(w) = f̄((w − b)·A⁻¹)·A.
pub fn pushforward_antiholomorphic(
    tau: &AntiholomorphicMap,
    xi: &PolyVectorField,
) -> Result<PolyVectorField, VfError> {
    let n = xi.n;
    if tau.a.rows != n {
        return Err(VfError::DimensionMismatch(tau.a.rows, n));
    }
    let ainv = tau.a.inverse().ok_or(VfError::SingularMatrix)?;
    // affine substitution z_j -> ((w − b)·A⁻¹)_j
    let wvars: Vec<MPoly> = (0..n).map(|k| MPoly::var(n, 0, k)).collect();
    let mut subs = Vec::with_capacity(n);
    for j in 0..n {
        let mut s = MPoly::zero(n, 0);
        for k in 0..n {
            s = s.add(&wvars[k].scale(ainv.at(k, j)));
            s = s.sub(&MPoly::constant(n, 0, &tau.b[k] * ainv.at(k, j)));
        }
        subs.push(s);
    }
    let composed: Vec<MPoly> = xi
        .components
        .iter()
        .map(|f| f.conj_coeffs().substitute(&subs))
        .collect();
    // multiply the row (g_1..g_n) by A
    let mut comps = Vec::with_capacity(n);
    for k in 0..n {
        let mut acc = MPoly::zero(n, 0);
        for j in 0..n {
            acc = acc.add(&composed[j].scale(tau.a.at(j, k)));
        }
        comps.push(acc);
    }
    Ok(PolyVectorField::new(comps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gr(re: i64, im: i64) -> GaussRational {
        GaussRational::from_parts(re, im, 1)
    }

    fn field(n: usize, comps: Vec<MPoly>) -> PolyVectorField {
        assert_eq!(comps.len(), n);
        PolyVectorField::new(comps)
    }

    fn z(n: usize, i: usize) -> MPoly {
        MPoly::var(n, 0, i)
    }

    #[test]
    fn bracket_translation_scaling() {
        // [∂z1, z1∂z1] = ∂z1
        let d1 = field(1, vec![MPoly::one(1, 0)]);
        let s1 = field(1, vec![z(1, 0)]);
        assert_eq!(d1.bracket(&s1).unwrap(), d1);
        assert!(d1.bracket(&d1).unwrap().is_zero());
    }

    #[test]
    fn bracket_sl2_triple() {
        // [z1∂z2, z2∂z1] = z1∂z1 − z2∂z2
        let e = field(2, vec![MPoly::zero(2, 0), z(2, 0)]);
        let f = field(2, vec![z(2, 1), MPoly::zero(2, 0)]);
        let h = field(2, vec![z(2, 0), z(2, 1).neg()]);
        assert_eq!(e.bracket(&f).unwrap(), h);
    }

    fn sphere_rho(n: usize) -> RealDefining {
        let mut rho = MPoly::constant(n, n, -GaussRational::one());
        for k in 0..n {
            rho = rho.add(&MPoly::var(n, n, k).mul(&MPoly::var(n, n, n + k)));
        }
        RealDefining::new(rho)
    }

    #[test]
    fn tangency_to_sphere() {
        let rho = sphere_rho(2);
        let rot = field(2, vec![z(2, 0).scale(&gr(0, 1)), MPoly::zero(2, 0)]);
        assert!(tangent_to(&rot, &rho).unwrap());
        let trans = field(2, vec![MPoly::one(2, 0), MPoly::zero(2, 0)]);
        assert!(!tangent_to(&trans, &rho).unwrap());
        // α = e1 term of the sphere algebra: (1 − z1²)∂z1 − z1z2∂z2 is NOT
        // tangent; the tangent one is (1 − z1²)∂z1 − z1z2∂z2 with the
        // hermitian pairing, i.e. α − (z|α)z with (z|α) = Σ z_k ᾱ_k:
        let a_field = field(
            2,
            vec![
                MPoly::one(2, 0).sub(&z(2, 0).mul(&z(2, 0))),
                z(2, 0).mul(&z(2, 1)).neg(),
            ],
        );
        assert!(tangent_to(&a_field, &rho).unwrap());
    }

    #[test]
    fn span_and_reality_tests() {
        let d1 = field(2, vec![MPoly::one(2, 0), MPoly::zero(2, 0)]);
        let d2 = field(2, vec![MPoly::zero(2, 0), MPoly::one(2, 0)]);
        let v = SubalgebraSpec::new(vec![d1.clone(), d2.clone()], "translations");
        assert!(is_abelian(&v));
        assert!(totally_real(&v));
        assert!(spans_tangent(&v, &[gr(0, 0), gr(0, 0)]));
        let w = SubalgebraSpec::new(vec![d1.clone(), d1.times_i()], "complex line");
        assert!(!totally_real(&w));
        let s = SubalgebraSpec::new(
            vec![field(2, vec![z(2, 0), MPoly::zero(2, 0)])],
            "scaling",
        );
        assert!(!spans_tangent(&s, &[gr(0, 0), gr(0, 0)]));
    }

    #[test]
    fn matrix_field_round_trip() {
        // X = [[0, e1],[0, 0]] -> ∂z1
        let mut m = ExactMatrix::zero(3, 3);
        *m.at_mut(0, 1) = gr(1, 0);
        let x = MatrixRep::new(m).unwrap();
        let xi = matrix_to_field(&x);
        let d1 = field(2, vec![MPoly::one(2, 0), MPoly::zero(2, 0)]);
        assert_eq!(xi, d1);
        assert_eq!(field_to_matrix(&xi).unwrap(), x);

        // diag(0, i, −i) -> (i z1, −i z2)
        let mut d = ExactMatrix::zero(3, 3);
        *d.at_mut(1, 1) = gr(0, 1);
        *d.at_mut(2, 2) = gr(0, -1);
        let x2 = MatrixRep::new(d).unwrap();
        let xi2 = matrix_to_field(&x2);
        let expect = field(2, vec![z(2, 0).scale(&gr(0, 1)), z(2, 1).scale(&gr(0, -1))]);
        assert_eq!(xi2, expect);
        assert_eq!(field_to_matrix(&xi2).unwrap(), x2);
    }

    #[test]
    fn quadratic_round_trip() {
        // generic su(1,2)-ish element with c ≠ 0
        let mut m = ExactMatrix::zero(3, 3);
        *m.at_mut(0, 0) = gr(0, 1);
        *m.at_mut(1, 1) = gr(0, -2);
        *m.at_mut(2, 2) = gr(0, 1);
        *m.at_mut(0, 1) = gr(1, 2);
        *m.at_mut(1, 0) = gr(3, -1);
        *m.at_mut(2, 0) = gr(-2, 5);
        *m.at_mut(1, 2) = gr(1, 1);
        let x = MatrixRep::new(m).unwrap();
        let xi = matrix_to_field(&x);
        assert_eq!(field_to_matrix(&xi).unwrap(), x);
    }

    #[test]
    fn pushforward_inverse_symmetry() {
        let mut g = ExactMatrix::identity(3);
        *g.at_mut(0, 1) = gr(2, 0);
        *g.at_mut(2, 0) = gr(0, 1);
        let mut m = ExactMatrix::zero(3, 3);
        *m.at_mut(0, 1) = gr(1, 0);
        *m.at_mut(1, 0) = gr(0, 1);
        *m.at_mut(1, 1) = gr(0, 2);
        *m.at_mut(2, 2) = gr(0, -2);
        let xi = matrix_to_field(&MatrixRep::new(m).unwrap());
        let pushed = pushforward_projective(&g, &xi).unwrap();
        let ginv = g.inverse().unwrap();
        let back = pushforward_projective(&ginv, &pushed).unwrap();
        assert_eq!(back, xi);
    }

    #[test]
    fn antiholomorphic_pushforward_examples() {
        let tau = AntiholomorphicMap::conjugation(2);
        assert!(tau.is_involution());
        let d1 = field(2, vec![MPoly::one(2, 0), MPoly::zero(2, 0)]);
        assert_eq!(pushforward_antiholomorphic(&tau, &d1).unwrap(), d1);
        let id1 = d1.times_i();
        assert_eq!(
            pushforward_antiholomorphic(&tau, &id1).unwrap(),
            id1.scale(&gr(-1, 0))
        );
        // θ(z) = −z̄ fixes z1∂z1
        let theta = AntiholomorphicMap {
            a: ExactMatrix::identity(2).neg(),
            b: vec![gr(0, 0), gr(0, 0)],
        };
        assert!(theta.is_involution());
        let s1 = field(2, vec![z(2, 0), MPoly::zero(2, 0)]);
        assert_eq!(pushforward_antiholomorphic(&theta, &s1).unwrap(), s1);
    }

    #[test]
    fn antiholomorphic_squares_to_identity_on_fields() {
        let tau = AntiholomorphicMap {
            a: {
                let mut a = ExactMatrix::zero(2, 2);
                *a.at_mut(0, 1) = gr(1, 0);
                *a.at_mut(1, 0) = gr(1, 0);
                a
            },
            b: vec![gr(1, 0), gr(-1, 0)],
        };
        assert!(tau.is_involution());
        let xi = field(2, vec![z(2, 0).mul(&z(2, 1)), z(2, 1).scale(&gr(0, 3))]);
        let once = pushforward_antiholomorphic(&tau, &xi).unwrap();
        let twice = pushforward_antiholomorphic(&tau, &once).unwrap();
        assert_eq!(twice, xi);
    }
}
