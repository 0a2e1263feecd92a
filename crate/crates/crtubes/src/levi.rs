//! Iterated Levi kernels H^0 ⊃ H^1 ⊃ ⋯, the kernel split of Siegel
//! domains over cones, and the finite-type test for tube germs.
//!
//! The recursion η_a ∈ H^{k+1}_a  ⟺  [ξ,η]_a + i[ξ,iη]_a ∈ H^k_a for all
//! ξ in a frame of H is solved exactly at the distinguished base point
//! a = i·diag(1_j, −1_k, 0).  Sections of the bundles H^0 and H^1 are
//! closed-form polynomial families equivariant under the affine
//! automorphisms, so the pointwise computation is sound at every level
//! that carries such a frame; the recursion itself cross-checks the
//! level-1 family against the solved kernel.

use crate::linalg::{complex_span_dim, ExactMatrix};
use crate::models::{ConeSpec, SiegelModel};
use crate::poly::MPoly;
use crate::rational::GaussRational;
use num_rational::BigRational;
use num_traits::Zero;
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum LeviError {
    #[error("jets truncated at order {have}, need at least {need}")]
    TruncationTooLow { have: u32, need: u32 },
    #[error("graph jet has a term of degree < 2 or a non-real coefficient")]
    BadJet,
    #[error("closed-form frame of H^{level} disagrees with the solved kernel")]
    FrameMismatch { level: usize },
    #[error("no section frame available for H^{level}; chain not stabilized")]
    MissingFrame { level: usize },
    #[error("kernel chain increased at level {level}")]
    ChainNotMonotone { level: usize },
}

/// CR germ given as a tube over a graph y_j = f_j(y_1,…,y_k), the f_j
/// truncated Taylor polynomials with real coefficients and order ≥ 2.
#[derive(Clone, Debug)]
pub struct GraphGerm {
    pub free: usize,
    pub jets: Vec<MPoly>,
    pub order: u32,
}

impl GraphGerm {
    pub fn new(free: usize, jets: Vec<MPoly>, order: u32) -> Result<Self, LeviError> {
        for f in &jets {
            assert_eq!(f.nvars_total(), free);
            for (m, c) in f.terms.iter() {
                if m.degree() < 2 || !c.is_real() {
                    return Err(LeviError::BadJet);
                }
            }
            if f.total_degree() > order {
                return Err(LeviError::TruncationTooLow {
                    have: order,
                    need: f.total_degree(),
                });
            }
        }
        Ok(GraphGerm { free, jets, order })
    }

    pub fn deps(&self) -> usize {
        self.jets.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.free + self.deps()
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviChainResult {
    pub dims: Vec<usize>,
    pub stabilized: bool,
    pub nondegeneracy_order: Option<usize>,
}

#[derive(Clone, Debug)]
pub enum LeviModel {
    TubeCone(ConeSpec),
    Siegel(SiegelModel),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Nondegeneracy {
    Nondegenerate(usize),
    Degenerate,
    Inconclusive,
}

// ---------------------------------------------------------------------------
// 1-jets of real vector fields v∂z + v̄∂z̄ at the base point.

#[derive(Clone)]
struct Jet1 {
    value: Vec<GaussRational>,
    jz: Vec<Vec<GaussRational>>,
    jzb: Vec<Vec<GaussRational>>,
}

impl Jet1 {
    fn from_components(comps: &[MPoly], a: &[GaussRational]) -> Jet1 {
        let n = comps.len();
        let mut point: Vec<GaussRational> = a.to_vec();
        point.extend(a.iter().map(GaussRational::conj));
        let mut value = Vec::with_capacity(n);
        let mut jz = Vec::with_capacity(n);
        let mut jzb = Vec::with_capacity(n);
        for f in comps {
            assert_eq!(f.nvars_total(), 2 * n);
            let mut val = GaussRational::zero();
            let mut grad = vec![GaussRational::zero(); 2 * n];
            for (m, c) in f.terms.iter() {
                let active: Vec<(usize, u32)> = m
                    .0
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(v, &e)| (v, e))
                    .collect();
                let pows: Vec<GaussRational> = active
                    .iter()
                    .map(|&(v, e)| {
                        let mut p = GaussRational::one();
                        for _ in 0..e {
                            p = &p * &point[v];
                        }
                        p
                    })
                    .collect();
                let zeros: Vec<usize> = (0..active.len()).filter(|&i| pows[i].is_zero()).collect();
                match zeros.len() {
                    0 => {
                        let mut prod = c.clone();
                        for p in &pows {
                            prod = &prod * p;
                        }
                        val += &prod;
                        for &(v, e) in &active {
                            let g = &(&prod * &GaussRational::from_int(e as i64))
                                * &point[v].inv().unwrap();
                            grad[v] += &g;
                        }
                    }
                    1 => {
                        let i0 = zeros[0];
                        let (v0, e0) = active[i0];
                        if e0 == 1 {
                            let mut prod = c.clone();
                            for (i, p) in pows.iter().enumerate() {
                                if i != i0 {
                                    prod = &prod * p;
                                }
                            }
                            grad[v0] += &prod;
                        }
                    }
                    _ => {}
                }
            }
            value.push(val);
            jz.push(grad[..n].to_vec());
            jzb.push(grad[n..].to_vec());
        }
        Jet1 { value, jz, jzb }
    }

    fn times_i(&self) -> Jet1 {
        let i = GaussRational::i();
        Jet1 {
            value: self.value.iter().map(|v| v * &i).collect(),
            jz: self.jz.iter().map(|r| r.iter().map(|v| v * &i).collect()).collect(),
            jzb: self.jzb.iter().map(|r| r.iter().map(|v| v * &i).collect()).collect(),
        }
    }

    fn combo(sections: &[Jet1], c: &[GaussRational]) -> Jet1 {
        let n = sections[0].value.len();
        let mut out = Jet1 {
            value: vec![GaussRational::zero(); n],
            jz: vec![vec![GaussRational::zero(); n]; n],
            jzb: vec![vec![GaussRational::zero(); n]; n],
        };
        for (s, ck) in sections.iter().zip(c) {
            if ck.is_zero() {
                continue;
            }
            for k in 0..n {
                out.value[k] += &(&s.value[k] * ck);
                for j in 0..n {
                    out.jz[k][j] += &(&s.jz[k][j] * ck);
                    out.jzb[k][j] += &(&s.jzb[k][j] * ck);
                }
            }
        }
        out
    }
}

/// ∂z-part of [v∂z + v̄∂z̄, w∂z + w̄∂z̄] at the base point.
fn bracket_value(x: &Jet1, y: &Jet1) -> Vec<GaussRational> {
    let n = x.value.len();
    let mut out = vec![GaussRational::zero(); n];
    for j in 0..n {
        if !x.value[j].is_zero() {
            let xc = x.value[j].conj();
            for k in 0..n {
                if !y.jz[k][j].is_zero() {
                    out[k] += &(&x.value[j] * &y.jz[k][j]);
                }
                if !y.jzb[k][j].is_zero() {
                    out[k] += &(&xc * &y.jzb[k][j]);
                }
            }
        }
        if !y.value[j].is_zero() {
            let yc = y.value[j].conj();
            for k in 0..n {
                if !x.jz[k][j].is_zero() {
                    out[k] -= &(&y.value[j] * &x.jz[k][j]);
                }
                if !x.jzb[k][j].is_zero() {
                    out[k] -= &(&yc * &x.jzb[k][j]);
                }
            }
        }
    }
    out
}

/// [ξ,η]_a + i[ξ,iη]_a in the ∂z-representation of tangent vectors.
fn condition_vector_pre(xi: &Jet1, eta: &Jet1, i_eta: &Jet1) -> Vec<GaussRational> {
    let b1 = bracket_value(xi, eta);
    let b2 = bracket_value(xi, i_eta);
    let i = GaussRational::i();
    b1.iter().zip(&b2).map(|(u, v)| u + &(v * &i)).collect()
}

fn complex_row_basis(rows: Vec<Vec<GaussRational>>) -> Vec<Vec<GaussRational>> {
    if rows.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = ExactMatrix::from_rows(rows).rref();
    (0..pivots.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Drop sections whose value does not enlarge the real span of the rest.
/// Incremental elimination on the realified value vectors.
fn prune_by_value(sections: Vec<Jet1>) -> Vec<Jet1> {
    let mut kept: Vec<Jet1> = Vec::new();
    let mut reduced: Vec<(usize, Vec<BigRational>)> = Vec::new();
    for s in sections {
        let mut v: Vec<BigRational> = s
            .value
            .iter()
            .map(|c| c.re.clone())
            .chain(s.value.iter().map(|c| c.im.clone()))
            .collect();
        for (piv, row) in &reduced {
            if !v[*piv].is_zero() {
                let f = v[*piv].clone();
                for (vi, ri) in v.iter_mut().zip(row) {
                    *vi -= &f * ri;
                }
            }
        }
        if let Some(piv) = v.iter().position(|x| !x.is_zero()) {
            let inv = v[piv].recip();
            let row: Vec<BigRational> = v.iter().map(|x| x * &inv).collect();
            reduced.push((piv, row));
            kept.push(s);
        }
    }
    kept
}

/// Solve the membership condition over real combinations of the given
/// sections of H^k and return a basis of H^{k+1}_a.
fn next_kernel(
    xis: &[Jet1],
    sections: &[Jet1],
    hk: &[Vec<GaussRational>],
) -> Vec<Vec<GaussRational>> {
    if hk.is_empty() || sections.is_empty() {
        return Vec::new();
    }
    let annihilator = ExactMatrix::from_rows(hk.to_vec()).nullspace();
    let combos: Vec<Vec<GaussRational>> = if annihilator.is_empty() {
        // H^k is the whole ambient space; the condition is vacuous.
        (0..sections.len())
            .map(|b| {
                let mut c = vec![GaussRational::zero(); sections.len()];
                c[b] = GaussRational::one();
                c
            })
            .collect()
    } else {
        let conds: Vec<Vec<Vec<GaussRational>>> = sections
            .iter()
            .map(|s| {
                let si = s.times_i();
                xis.iter().map(|x| condition_vector_pre(x, s, &si)).collect()
            })
            .collect();
        let mut rows = Vec::new();
        for xi_idx in 0..xis.len() {
            for lam in &annihilator {
                let mut row_re = Vec::with_capacity(sections.len());
                let mut row_im = Vec::with_capacity(sections.len());
                for cond in &conds {
                    let mut dot = GaussRational::zero();
                    for (li, ci) in lam.iter().zip(&cond[xi_idx]) {
                        dot += &(li * ci);
                    }
                    row_re.push(GaussRational::new(dot.re.clone(), BigRational::zero()));
                    row_im.push(GaussRational::new(dot.im.clone(), BigRational::zero()));
                }
                rows.push(row_re);
                rows.push(row_im);
            }
        }
        ExactMatrix::from_rows(rows).nullspace()
    };
    let values: Vec<Vec<GaussRational>> = combos
        .iter()
        .map(|c| Jet1::combo(sections, c).value)
        .collect();
    complex_row_basis(values)
}

fn span_equal(a: &[Vec<GaussRational>], b: &[Vec<GaussRational>]) -> bool {
    let da = complex_span_dim(a);
    let db = complex_span_dim(b);
    let mut both = a.to_vec();
    both.extend_from_slice(b);
    da == db && complex_span_dim(&both) == da
}

// ---------------------------------------------------------------------------
// Closed-form section frames for the catalog models.

fn var(n: usize, idx: usize) -> MPoly {
    MPoly::var(n, n, idx)
}

fn conj_var(n: usize, idx: usize) -> MPoly {
    MPoly::var(n, n, n + idx)
}

/// Entries of Im z for the tube (d = 0) or Im z − w·w* for the Siegel
/// model, as polynomials in the doubled ring of ℂ^n, n = p² + p·d.
fn height_matrix(p: usize, d: usize) -> Vec<Vec<MPoly>> {
    let n = p * p + p * d;
    let half_over_i = GaussRational::from_parts(0, -1, 2);
    let mut m = vec![vec![MPoly::zero(n, n); p]; p];
    for r in 0..p {
        for s in 0..p {
            let mut e = var(n, r * p + s).sub(&conj_var(n, s * p + r)).scale(&half_over_i);
            for b in 0..d {
                let w = var(n, p * p + r * d + b);
                let wb = conj_var(n, p * p + s * d + b);
                e = e.sub(&w.mul(&wb));
            }
            m[r][s] = e;
        }
    }
    m
}

/// ℝ-basis E_ab, iE_ab of the complex p×q matrices.
fn real_matrix_basis(p: usize, q: usize) -> Vec<ExactMatrix> {
    let mut out = Vec::new();
    for a in 0..p {
        for b in 0..q {
            for c in [GaussRational::one(), GaussRational::i()] {
                let mut m = ExactMatrix::zero(p, q);
                *m.at_mut(a, b) = c;
                out.push(m);
            }
        }
    }
    out
}

/// u·M + M·u* placed in the z-slots of a length-n component vector.
fn tube_type_components(p: usize, d: usize, m: &[Vec<MPoly>], u: &ExactMatrix) -> Vec<MPoly> {
    let n = p * p + p * d;
    let mut comps = vec![MPoly::zero(n, n); n];
    for r in 0..p {
        for s in 0..p {
            let mut e = MPoly::zero(n, n);
            for t in 0..p {
                e = e.add(&m[t][s].scale(u.at(r, t)));
                e = e.add(&m[r][t].scale(&u.at(s, t).conj()));
            }
            comps[r * p + s] = e;
        }
    }
    comps
}

/// M·Y·M placed in the z-slots.
fn kernel_type_components(p: usize, d: usize, m: &[Vec<MPoly>], y: &ExactMatrix) -> Vec<MPoly> {
    let n = p * p + p * d;
    let mut my = vec![vec![MPoly::zero(n, n); p]; p];
    for r in 0..p {
        for v in 0..p {
            let mut e = MPoly::zero(n, n);
            for t in 0..p {
                e = e.add(&m[r][t].scale(y.at(t, v)));
            }
            my[r][v] = e;
        }
    }
    let mut comps = vec![MPoly::zero(n, n); n];
    for r in 0..p {
        for s in 0..p {
            let mut e = MPoly::zero(n, n);
            for v in 0..p {
                e = e.add(&my[r][v].mul(&m[v][s]));
            }
            comps[r * p + s] = e;
        }
    }
    comps
}

/// 2iF(g, w)∂z + g∂w for a p×d polynomial matrix g.
fn w_type_components(p: usize, d: usize, g: &[Vec<MPoly>]) -> Vec<MPoly> {
    let n = p * p + p * d;
    let two_i = GaussRational::from_parts(0, 2, 1);
    let mut comps = vec![MPoly::zero(n, n); n];
    for r in 0..p {
        for s in 0..p {
            let mut e = MPoly::zero(n, n);
            for b in 0..d {
                e = e.add(&g[r][b].mul(&conj_var(n, p * p + s * d + b)));
            }
            comps[r * p + s] = e.scale(&two_i);
        }
    }
    for a in 0..p {
        for b in 0..d {
            comps[p * p + a * d + b] = g[a][b].clone();
        }
    }
    comps
}

fn const_pmat(n: usize, c: &ExactMatrix) -> Vec<Vec<MPoly>> {
    (0..c.rows)
        .map(|r| (0..c.cols).map(|s| MPoly::constant(n, n, c.at(r, s).clone())).collect())
        .collect()
}

/// M·Y for constant Y, as a p×d polynomial matrix.
fn height_times(p: usize, d: usize, m: &[Vec<MPoly>], y: &ExactMatrix) -> Vec<Vec<MPoly>> {
    let n = p * p + p * d;
    let mut out = vec![vec![MPoly::zero(n, n); d]; p];
    for r in 0..p {
        for b in 0..d {
            let mut e = MPoly::zero(n, n);
            for t in 0..p {
                e = e.add(&m[r][t].scale(y.at(t, b)));
            }
            out[r][b] = e;
        }
    }
    out
}

/// Base point a = i·diag(1_j, −1_k, 0) in the z-slots, w = 0.
fn base_point(cone: &ConeSpec, d: usize) -> Vec<GaussRational> {
    let p = cone.p;
    let mut a = vec![GaussRational::zero(); p * p + p * d];
    for t in 0..cone.j {
        a[t * p + t] = GaussRational::i();
    }
    for t in cone.j..cone.j + cone.k {
        a[t * p + t] = -&GaussRational::i();
    }
    a
}

struct ModelFrames {
    xis: Vec<Jet1>,
    levels: Vec<Vec<Jet1>>,
}

fn with_i_copies(mut sections: Vec<Jet1>) -> Vec<Jet1> {
    let extra: Vec<Jet1> = sections.iter().map(Jet1::times_i).collect();
    sections.extend(extra);
    sections
}

fn model_frames(model: &LeviModel) -> ModelFrames {
    let (cone, d) = match model {
        LeviModel::TubeCone(c) => (*c, 0usize),
        LeviModel::Siegel(s) => (s.cone, s.q - s.p),
    };
    let p = cone.p;
    let a = base_point(&cone, d);
    let m = height_matrix(p, d);
    let mut frames0 = Vec::new();
    for u in real_matrix_basis(p, p) {
        frames0.push(Jet1::from_components(&tube_type_components(p, d, &m, &u), &a));
    }
    let n = p * p + p * d;
    if d > 0 {
        for c in real_matrix_basis(p, d) {
            frames0.push(Jet1::from_components(
                &w_type_components(p, d, &const_pmat(n, &c)),
                &a,
            ));
        }
    }
    let mut frames1 = Vec::new();
    for y in real_matrix_basis(p, p) {
        frames1.push(Jet1::from_components(&kernel_type_components(p, d, &m, &y), &a));
    }
    if d > 0 {
        for y in real_matrix_basis(p, d) {
            frames1.push(Jet1::from_components(
                &w_type_components(p, d, &height_times(p, d, &m, &y)),
                &a,
            ));
        }
    }
    let frames0 = with_i_copies(frames0);
    let frames1 = with_i_copies(frames1);
    ModelFrames {
        xis: prune_by_value(frames0.clone()),
        levels: vec![prune_by_value(frames0), prune_by_value(frames1)],
    }
}

// ---------------------------------------------------------------------------
// The kernel chain.

fn run_chain(
    xis: &[Jet1],
    levels: &[Vec<Jet1>],
    kmax: usize,
) -> Result<(LeviChainResult, Vec<Vec<Vec<GaussRational>>>), LeviError> {
    let h0: Vec<Vec<GaussRational>> =
        complex_row_basis(levels[0].iter().map(|s| s.value.clone()).collect());
    let mut dims = vec![h0.len()];
    let mut bases = vec![h0];
    let mut stabilized = dims[0] == 0;
    for k in 1..=kmax {
        let prev = bases[k - 1].clone();
        if prev.is_empty() {
            dims.push(0);
            bases.push(Vec::new());
            stabilized = true;
            continue;
        }
        if k - 1 >= levels.len() {
            return Err(LeviError::MissingFrame { level: k - 1 });
        }
        let sections = &levels[k - 1];
        if k >= 2 {
            // The level-(k−1) frame must be a frame of the solved kernel.
            let frame_vals: Vec<Vec<GaussRational>> =
                sections.iter().map(|s| s.value.clone()).collect();
            if !span_equal(&frame_vals, &prev) {
                return Err(LeviError::FrameMismatch { level: k - 1 });
            }
        }
        let next = next_kernel(xis, sections, &prev);
        let mut both = prev.clone();
        both.extend(next.iter().cloned());
        if complex_span_dim(&both) != prev.len() {
            return Err(LeviError::ChainNotMonotone { level: k });
        }
        if next.len() == prev.len() {
            stabilized = true;
        }
        dims.push(next.len());
        bases.push(next);
    }
    let nondegeneracy_order = dims.iter().position(|&d| d == 0);
    if nondegeneracy_order.is_some() {
        stabilized = true;
    }
    Ok((
        LeviChainResult {
            dims,
            stabilized,
            nondegeneracy_order,
        },
        bases,
    ))
}

pub fn levi_chain(model: &LeviModel, kmax: usize) -> Result<LeviChainResult, LeviError> {
    let frames = model_frames(model);
    run_chain(&frames.xis, &frames.levels, kmax).map(|(r, _)| r)
}

fn chain_with_bases(
    model: &LeviModel,
    kmax: usize,
) -> Result<(LeviChainResult, Vec<Vec<Vec<GaussRational>>>), LeviError> {
    let frames = model_frames(model);
    run_chain(&frames.xis, &frames.levels, kmax)
}

pub fn holomorphic_nondegenerate(
    model: &LeviModel,
    kmax: usize,
) -> Result<Nondegeneracy, LeviError> {
    match levi_chain(model, kmax) {
        Ok(r) => Ok(match r.nondegeneracy_order {
            Some(k) => Nondegeneracy::Nondegenerate(k),
            None if r.stabilized => Nondegeneracy::Degenerate,
            None => Nondegeneracy::Inconclusive,
        }),
        Err(LeviError::MissingFrame { .. }) => Ok(Nondegeneracy::Inconclusive),
        Err(e) => Err(e),
    }
}

// ---------------------------------------------------------------------------
// Lemma UD: H^k_aΣ = H^k_aT ⊕ W^k_a.

pub struct SiegelSplit {
    pub t_part: Vec<Vec<GaussRational>>,
    pub w_part: Vec<Vec<GaussRational>>,
}

/// Split the solved kernel H^k_aΣ into its V^ℂ-part and its W-projection,
/// verifying that the two parts recombine to the whole kernel.
pub fn siegel_split(model: &SiegelModel, k: usize) -> Result<SiegelSplit, LeviError> {
    let (_, bases) = chain_with_bases(&LeviModel::Siegel(model.clone()), k)?;
    split_from_basis(model, &bases[k], k)
}

fn split_from_basis(
    model: &SiegelModel,
    basis: &[Vec<GaussRational>],
    k: usize,
) -> Result<SiegelSplit, LeviError> {
    let nv = model.dim_v();
    let nw = model.dim_w();
    if basis.is_empty() {
        return Ok(SiegelSplit {
            t_part: Vec::new(),
            w_part: Vec::new(),
        });
    }
    // Combinations with vanishing w-part give the T-part of the kernel.
    let mut wrows = vec![vec![GaussRational::zero(); basis.len()]; nw];
    for (i, b) in basis.iter().enumerate() {
        for wc in 0..nw {
            wrows[wc][i] = b[nv + wc].clone();
        }
    }
    let t_combos = ExactMatrix::from_rows(wrows).nullspace();
    let t_part: Vec<Vec<GaussRational>> = complex_row_basis(
        t_combos
            .iter()
            .map(|c| {
                let mut v = vec![GaussRational::zero(); nv];
                for (ci, b) in c.iter().zip(basis) {
                    for (vk, bk) in v.iter_mut().zip(&b[..nv]) {
                        *vk += &(ci * bk);
                    }
                }
                v
            })
            .collect(),
    );
    let w_part = complex_row_basis(basis.iter().map(|b| b[nv..].to_vec()).collect());
    if t_part.len() + w_part.len() != basis.len() {
        return Err(LeviError::FrameMismatch { level: k });
    }
    Ok(SiegelSplit { t_part, w_part })
}

/// Verify W^0_a = W and F(W^{k+1}_a, W) ⊆ H^k_aT for all computed levels.
pub fn verify_siegel_split(model: &SiegelModel, kmax: usize) -> Result<bool, LeviError> {
    let p = model.p;
    let d = model.q - model.p;
    let tube = chain_with_bases(&LeviModel::TubeCone(model.cone), kmax)?.1;
    let (_, bases) = chain_with_bases(&LeviModel::Siegel(model.clone()), kmax)?;
    let splits: Vec<SiegelSplit> = (0..=kmax)
        .map(|k| split_from_basis(model, &bases[k], k))
        .collect::<Result<_, _>>()?;
    if splits[0].w_part.len() != model.dim_w() {
        return Ok(false);
    }
    for k in 0..kmax {
        let hkt = &tube[k];
        for omega in &splits[k + 1].w_part {
            for b in 0..d {
                // F(ω, E_{ab}) = ω·E_{ab}*, column b of ω spread over column a;
                // ranging over a, b this is ω's column b in every slot.
                for a_col in 0..p {
                    let mut f = vec![GaussRational::zero(); p * p];
                    for r in 0..p {
                        f[r * p + a_col] = omega[r * d + b].clone();
                    }
                    let mut rows = hkt.clone();
                    rows.push(f);
                    if complex_span_dim(&rows) != complex_span_dim(hkt) {
                        return Ok(false);
                    }
                }
            }
        }
    }
    Ok(true)
}

// ---------------------------------------------------------------------------
// Graph germs: kernel chain and finite type.

/// Kernel chain of the tube over a graph germ at 0, using the frame
/// t_ℓ = ∂/∂z_ℓ + Σ_j (∂f_j/∂y_ℓ)(Im z) ∂/∂z_j of its CR bundle.
pub fn levi_chain_graph(germ: &GraphGerm, kmax: usize) -> Result<LeviChainResult, LeviError> {
    let need = (kmax + 2) as u32;
    if germ.order < need {
        return Err(LeviError::TruncationTooLow {
            have: germ.order,
            need,
        });
    }
    let n = germ.ambient_dim();
    let half_over_i = GaussRational::from_parts(0, -1, 2);
    let subs: Vec<MPoly> = (0..germ.free)
        .map(|l| var(n, l).sub(&conj_var(n, l)).scale(&half_over_i))
        .collect();
    let a = vec![GaussRational::zero(); n];
    let mut frames0 = Vec::new();
    for l in 0..germ.free {
        let mut comps = vec![MPoly::zero(n, n); n];
        comps[l] = MPoly::one(n, n);
        for (j, f) in germ.jets.iter().enumerate() {
            comps[germ.free + j] = f.diff(l).substitute(&subs);
        }
        frames0.push(Jet1::from_components(&comps, &a));
    }
    let frames0 = with_i_copies(frames0);
    let xis = prune_by_value(frames0.clone());
    run_chain(&xis, &[frames0], kmax).map(|(r, _)| r)
}

#[derive(Clone, Debug, Serialize)]
pub struct FiniteTypeResult {
    pub finite: bool,
    pub spanning_order: Option<usize>,
    pub truncation_order: u32,
    pub certified: bool,
}

fn multi_indices(nvars: usize, total: u32) -> Vec<Vec<u32>> {
    if nvars == 0 {
        return if total == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    for first in 0..=total {
        for mut rest in multi_indices(nvars - 1, total - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

fn deriv_at_zero(f: &MPoly, nu: &[u32], l: usize) -> GaussRational {
    let mut g = f.diff(l);
    for (v, &e) in nu.iter().enumerate() {
        for _ in 0..e {
            g = g.diff(v);
        }
    }
    g.coeff(&vec![0; f.nvars_total()])
}

/// Dimension of the affine span of the graph {(y, f(y))} read off the
/// truncated jets: free directions plus the rank of the jet coefficients.
pub fn affine_span_dim(germ: &GraphGerm) -> usize {
    let mut monomials = std::collections::BTreeSet::new();
    for f in &germ.jets {
        for m in f.terms.keys() {
            monomials.insert(m.clone());
        }
    }
    if monomials.is_empty() {
        return germ.free;
    }
    let rows: Vec<Vec<GaussRational>> = monomials
        .iter()
        .map(|m| germ.jets.iter().map(|f| f.coeff(&m.0)).collect())
        .collect();
    germ.free + ExactMatrix::from_rows(rows).rank()
}

/// Finite type via the iterated-bracket vectors (ad η)^ν ξ^ℓ, whose
/// ∂/∂x_j components are ∂^{|ν|}(∂f_j/∂y_ℓ)(0); cross-certified against
/// the affine-span criterion.
pub fn finite_type(germ: &GraphGerm) -> FiniteTypeResult {
    let deps = germ.deps();
    let dmax = (germ.order as usize).saturating_sub(1);
    let mut vecs: Vec<Vec<GaussRational>> = Vec::new();
    let mut spanning_order = None;
    for mtot in 1..=dmax {
        for nu in multi_indices(germ.free, mtot as u32) {
            for l in 0..germ.free {
                let v: Vec<GaussRational> =
                    germ.jets.iter().map(|f| deriv_at_zero(f, &nu, l)).collect();
                if v.iter().any(|c| !c.is_zero()) {
                    vecs.push(v);
                }
            }
        }
        if spanning_order.is_none()
            && !vecs.is_empty()
            && ExactMatrix::from_rows(vecs.clone()).rank() == deps
        {
            spanning_order = Some(mtot);
        }
    }
    let finite = spanning_order.is_some();
    let affine_full = affine_span_dim(germ) == germ.ambient_dim();
    FiniteTypeResult {
        finite,
        spanning_order,
        truncation_order: germ.order,
        certified: finite || !affine_full,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Monomial;
    use rand::Rng;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn unit(n: usize, idx: usize) -> Vec<GaussRational> {
        let mut v = vec![GaussRational::zero(); n];
        v[idx] = GaussRational::one();
        v
    }

    #[test]
    fn tube_cone_2_1_0_chain() {
        let model = LeviModel::TubeCone(ConeSpec::new(2, 1, 0).unwrap());
        let (res, bases) = chain_with_bases(&model, 2).unwrap();
        assert_eq!(res.dims, vec![3, 1, 0]);
        assert_eq!(res.nondegeneracy_order, Some(2));
        assert!(res.stabilized);
        // H^1 = {z : z_rs = 0 unless r = s = 1} = span{z_11}.
        assert!(span_equal(&bases[1], &[unit(4, 0)]));
    }

    #[test]
    fn totally_real_and_open_tubes() {
        let flat = LeviModel::TubeCone(ConeSpec::new(2, 0, 0).unwrap());
        let res = levi_chain(&flat, 2).unwrap();
        assert_eq!(res.dims, vec![0, 0, 0]);
        assert_eq!(res.nondegeneracy_order, Some(0));
        assert_eq!(
            holomorphic_nondegenerate(&flat, 2).unwrap(),
            Nondegeneracy::Nondegenerate(0)
        );

        let open = LeviModel::TubeCone(ConeSpec::new(2, 2, 0).unwrap());
        let res = levi_chain(&open, 2).unwrap();
        assert_eq!(res.dims, vec![4, 4, 4]);
        assert_eq!(
            holomorphic_nondegenerate(&open, 2).unwrap(),
            Nondegeneracy::Degenerate
        );
    }

    #[test]
    fn siegel_quadric_nondegenerate() {
        let model = LeviModel::Siegel(SiegelModel::new(1, 2, 0, 0).unwrap());
        let res = levi_chain(&model, 1).unwrap();
        assert_eq!(res.dims, vec![1, 0]);
        assert_eq!(res.nondegeneracy_order, Some(1));
    }

    #[test]
    fn siegel_2_3_1_0_chain_and_split() {
        let sm = SiegelModel::new(2, 3, 1, 0).unwrap();
        let model = LeviModel::Siegel(sm.clone());
        let res = levi_chain(&model, 2).unwrap();
        assert_eq!(res.dims, vec![5, 2, 0]);
        assert_eq!(res.nondegeneracy_order, Some(2));
        assert_eq!(
            holomorphic_nondegenerate(&model, 2).unwrap(),
            Nondegeneracy::Nondegenerate(2)
        );

        let s0 = siegel_split(&sm, 0).unwrap();
        assert_eq!(s0.w_part.len(), sm.dim_w());
        let s1 = siegel_split(&sm, 1).unwrap();
        assert_eq!(s1.t_part.len(), 1);
        // W^1 = {w : w_2 = 0} = span{w_11}.
        assert!(span_equal(&s1.w_part, &[unit(2, 0)]));
        let s2 = siegel_split(&sm, 2).unwrap();
        assert!(s2.t_part.is_empty() && s2.w_part.is_empty());

        assert!(verify_siegel_split(&sm, 2).unwrap());
    }

    #[test]
    fn split_inclusion_p3() {
        let sm = SiegelModel::new(3, 4, 1, 1).unwrap();
        let res = levi_chain(&LeviModel::Siegel(sm.clone()), 2).unwrap();
        assert_eq!(res.nondegeneracy_order, Some(2));
        assert!(verify_siegel_split(&sm, 2).unwrap());
    }

    #[test]
    fn frame_independence() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for model in [
            LeviModel::TubeCone(ConeSpec::new(2, 1, 0).unwrap()),
            LeviModel::Siegel(SiegelModel::new(2, 3, 1, 0).unwrap()),
        ] {
            let frames = model_frames(&model);
            let reference = run_chain(&frames.xis, &frames.levels, 2).unwrap().0;
            // Random invertible real recombination of the H^0 frame.
            let k = frames.levels[0].len();
            let shuffled: Vec<Jet1> = loop {
                let rows: Vec<Vec<GaussRational>> = (0..k)
                    .map(|_| {
                        (0..k)
                            .map(|_| GaussRational::from_int(rng.gen_range(-3..=3)))
                            .collect()
                    })
                    .collect();
                if ExactMatrix::from_rows(rows.clone()).rank() == k {
                    break rows
                        .iter()
                        .map(|c| Jet1::combo(&frames.levels[0], c))
                        .collect();
                }
            };
            let levels = vec![shuffled.clone(), frames.levels[1].clone()];
            let alt = run_chain(&prune_by_value(shuffled), &levels, 2).unwrap().0;
            assert_eq!(alt.dims, reference.dims);
        }
    }

    fn germ_1var(deps_coeffs: &[Vec<(u32, i64)>], order: u32) -> GraphGerm {
        let jets = deps_coeffs
            .iter()
            .map(|cs| {
                let mut f = MPoly::zero(1, 0);
                for &(e, c) in cs {
                    f.add_term(Monomial(vec![e]), GaussRational::from_int(c));
                }
                f
            })
            .collect();
        GraphGerm::new(1, jets, order).unwrap()
    }

    #[test]
    fn graph_paraboloid_chain() {
        let germ = germ_1var(&[vec![(2, 1)]], 3);
        let res = levi_chain_graph(&germ, 1).unwrap();
        assert_eq!(res.dims, vec![1, 0]);
        assert_eq!(res.nondegeneracy_order, Some(1));
    }

    #[test]
    fn finite_type_named_examples() {
        let parab = germ_1var(&[vec![(2, 1)]], 3);
        let r = finite_type(&parab);
        assert!(r.finite && r.certified);
        assert_eq!(r.spanning_order, Some(1));

        let flat = germ_1var(&[vec![]], 3);
        let r = finite_type(&flat);
        assert!(!r.finite && r.certified);
        assert_eq!(affine_span_dim(&flat), 1);

        // Curve (y, y², 2y²): contained in the plane y_3 = 2y_2.
        let curve = germ_1var(&[vec![(2, 1)], vec![(2, 2)]], 3);
        let r = finite_type(&curve);
        assert!(!r.finite && r.certified);
        assert_eq!(affine_span_dim(&curve), 2);
    }

    #[test]
    fn finite_type_matches_affine_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..30 {
            let free = rng.gen_range(1..=3usize);
            let deps = rng.gen_range(1..=3usize);
            let jets: Vec<MPoly> = (0..deps)
                .map(|_| {
                    let mut f = MPoly::zero(free, 0);
                    for m in multi_indices(free, 2).into_iter().chain(multi_indices(free, 3)) {
                        let c = rng.gen_range(-2..=2i64);
                        if c != 0 {
                            f.add_term(Monomial(m), GaussRational::from_int(c));
                        }
                    }
                    f
                })
                .collect();
            let germ = GraphGerm::new(free, jets, 4).unwrap();
            let r = finite_type(&germ);
            let oracle = affine_span_dim(&germ) == germ.ambient_dim();
            assert_eq!(r.finite, oracle);
            assert!(r.certified);
        }
    }

    #[test]
    fn truncation_guard() {
        let germ = germ_1var(&[vec![(2, 1)]], 3);
        assert!(matches!(
            levi_chain_graph(&germ, 2),
            Err(LeviError::TruncationTooLow { .. })
        ));
    }
}

