//! Machine-readable reports for the command surface.
//!
//! One JSON document per invocation; identical parameters and seed give
//! byte-identical output.

use crate::engine::{
    check_field_correspondence, conjugacy_invariants, sample_base_points, validate_subalgebra,
    verify_covering, EngineError,
};
use crate::levi::{levi_chain, siegel_split, verify_siegel_split, LeviError, LeviModel};
use crate::models::{
    self, cayley_pushforward, field_to_matrix_images, involution, su_basis, tube_catalog, ConeSpec,
    InvolutionKind, ModelError, SiegelModel, TubeCase, TubeRealizationSpec,
};
use serde::Serialize;
use serde_json::{json, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Levi(#[from] LeviError),
    #[error(transparent)]
    Field(#[from] crate::vfield::VfError),
}

#[derive(Serialize)]
pub struct CheckResult {
    pub item: String,
    pub pass: bool,
    pub data: Value,
}

#[derive(Serialize)]
pub struct Report {
    pub schema: u32,
    pub tool_version: &'static str,
    pub command: String,
    pub parameters: Value,
    pub seed: u64,
    pub results: Vec<CheckResult>,
}

impl Report {
    pub fn new(command: &str, parameters: Value, seed: u64) -> Report {
        Report {
            schema: SCHEMA_VERSION,
            tool_version: env!("CARGO_PKG_VERSION"),
            command: command.into(),
            parameters,
            seed,
            results: Vec::new(),
        }
    }

    pub fn push(&mut self, item: &str, pass: bool, data: Value) {
        self.results.push(CheckResult {
            item: item.into(),
            pass,
            data,
        });
    }

    pub fn all_pass(&self) -> bool {
        self.results.iter().all(|r| r.pass)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization")
    }
}

fn require(cond: bool, msg: &str) -> Result<(), CliError> {
    if cond {
        Ok(())
    } else {
        Err(CliError::BadParameter(msg.into()))
    }
}

/// Validate the full catalog of r+2 tube realizations of the sphere.
pub fn cmd_sphere_tubes(
    r: usize,
    tol: f64,
    samples: usize,
    seed: u64,
) -> Result<Report, CliError> {
    require((2..=6).contains(&r), "r must satisfy 2 <= r <= 6")?;
    require(tol > 0.0, "tol must be positive")?;
    require(samples > 0, "samples must be positive")?;
    let mut report = Report::new(
        "sphere-tubes",
        json!({"r": r, "tol": tol, "samples": samples}),
        seed,
    );
    let sphere_ambient = models::sphere_hol_basis(r)?;
    let quadric_ambient: Vec<_> = sphere_ambient
        .iter()
        .map(|f| cayley_pushforward(r, f))
        .collect::<Result<_, _>>()
        .map_err(|_| CliError::BadParameter("cayley pushforward failed".into()))?;
    let mut signatures = Vec::new();
    for spec in tube_catalog(r)? {
        let ambient = match spec.case {
            TubeCase::Parabolic(_) => &quadric_ambient,
            _ => &sphere_ambient,
        };
        let v = validate_subalgebra(ambient, &spec.subalgebra, &spec.base_point, &spec.target)?;
        let residual = verify_covering(&spec, samples, tol, seed)?;
        let mut corr: f64 = 0.0;
        for dir in 0..r {
            corr = corr.max(check_field_correspondence(&spec, dir, samples, tol, seed)?);
        }
        let sig = conjugacy_invariants(&field_to_matrix_images(&spec.subalgebra)?, seed);
        let pass = v.all_pass()
            && v.involution_unique
            && v.dim_v == r
            && residual <= tol
            && corr <= tol;
        report.push(
            &spec.case.tag(),
            pass,
            json!({
                "abelian": v.abelian,
                "totally_real": v.totally_real,
                "spans_tangent": v.spans_tangent,
                "involution_unique": v.involution_unique,
                "condition_iii": v.condition_iii,
                "dim_v": v.dim_v,
                "covering_residual": residual,
                "field_correspondence_residual": corr,
                "signature": &sig,
            }),
        );
        signatures.push(sig);
    }
    let mut distinct = true;
    for i in 0..signatures.len() {
        for j in (i + 1)..signatures.len() {
            if signatures[i] == signatures[j] {
                distinct = false;
            }
        }
    }
    report.push(
        "signatures-pairwise-distinct",
        distinct,
        json!({"count": signatures.len()}),
    );
    Ok(report)
}

/// Classification table of antilinear involutions on the hyperquadric.
pub fn cmd_involutions(p: usize, q: usize, m: usize) -> Result<Report, CliError> {
    require(m >= 1 && p >= m && q >= m, "need p, q >= m >= 1")?;
    require(!(p == q && q == m), "the case p = q = m is excluded")?;
    let mut report = Report::new("involutions", json!({"p": p, "q": q, "m": m}), 0);
    let n = p + q;
    for kind in [
        InvolutionKind::I,
        InvolutionKind::II,
        InvolutionKind::III,
        InvolutionKind::IV,
    ] {
        let label = format!("{kind:?}");
        match involution(kind, p, q) {
            Ok(spec) => {
                let identities = spec.verify_identities();
                let basis = su_basis(&spec.form);
                let gtau = models::fixed_subalgebra(&basis, &spec, 1)?;
                let type_i_dim_ok = match kind {
                    InvolutionKind::I => gtau.len() == n * (n - 1) / 2,
                    _ => true,
                };
                report.push(
                    &label,
                    identities && type_i_dim_ok,
                    json!({
                        "admissible": true,
                        "eps": spec.eps,
                        "delta": spec.delta,
                        "identities": identities,
                        "fixed_set_dim": spec.fixed_set_dim(m),
                        "fixed_subalgebra_dim": gtau.len(),
                    }),
                );
            }
            Err(_) => {
                report.push(&label, true, json!({"admissible": false}));
            }
        }
    }
    Ok(report)
}

/// Iterated Levi kernel chain of a catalog model.
pub fn cmd_levi_chain(
    selector: &str,
    p: usize,
    q: usize,
    j: usize,
    k: usize,
    kmax: usize,
) -> Result<Report, CliError> {
    let mut report = Report::new(
        "levi-chain",
        json!({"model": selector, "p": p, "q": q, "j": j, "k": k, "kmax": kmax}),
        0,
    );
    match selector {
        "tube-cone" => {
            let model = LeviModel::TubeCone(ConeSpec::new(p, j, k)?);
            let res = levi_chain(&model, kmax)?;
            report.push(
                "chain",
                res.stabilized,
                json!({
                    "dims": res.dims,
                    "stabilized": res.stabilized,
                    "nondegeneracy_order": res.nondegeneracy_order,
                }),
            );
        }
        "siegel" => {
            let sm = SiegelModel::new(p, q, j, k)?;
            let res = levi_chain(&LeviModel::Siegel(sm.clone()), kmax)?;
            let split_ok = verify_siegel_split(&sm, kmax)?;
            let mut w_dims = Vec::new();
            let mut t_dims = Vec::new();
            for level in 0..=kmax {
                let s = siegel_split(&sm, level)?;
                t_dims.push(s.t_part.len());
                w_dims.push(s.w_part.len());
            }
            report.push(
                "chain",
                res.stabilized,
                json!({
                    "dims": res.dims,
                    "stabilized": res.stabilized,
                    "nondegeneracy_order": res.nondegeneracy_order,
                }),
            );
            report.push(
                "kernel-split",
                split_ok,
                json!({"t_dims": t_dims, "w_dims": w_dims}),
            );
        }
        other => {
            return Err(CliError::BadParameter(format!(
                "unknown model selector '{other}' (expected tube-cone or siegel)"
            )))
        }
    }
    Ok(report)
}

fn case_from_name(name: &str) -> Result<TubeCase, CliError> {
    match name {
        "exp" => Ok(TubeCase::Exp),
        "trig" | "pi-plus" => Ok(TubeCase::Trig),
        _ => {
            if let Some(s) = name.strip_prefix("parabolic-") {
                let s: usize = s
                    .parse()
                    .map_err(|_| CliError::BadParameter(format!("bad case '{name}'")))?;
                Ok(TubeCase::Parabolic(s))
            } else {
                Err(CliError::BadParameter(format!("unknown case '{name}'")))
            }
        }
    }
}

fn catalog_entry(case: TubeCase, r: usize) -> Result<TubeRealizationSpec, CliError> {
    tube_catalog(r)?
        .into_iter()
        .find(|s| s.case == case)
        .ok_or_else(|| CliError::BadParameter(format!("case {} not in catalog", case.tag())))
}

pub struct EmitResult {
    pub report: Report,
    pub payload: String,
    pub extension: &'static str,
}

/// Emit sampled base points (csv) or the base curve (svg, r = 2).
pub fn cmd_emit_base(
    case_name: &str,
    r: usize,
    format: &str,
    samples: usize,
    tol: f64,
    seed: u64,
) -> Result<EmitResult, CliError> {
    require((2..=6).contains(&r), "r must satisfy 2 <= r <= 6")?;
    require(tol > 0.0, "tol must be positive")?;
    let case = case_from_name(case_name)?;
    let spec = catalog_entry(case, r)?;
    let mut report = Report::new(
        "emit-base",
        json!({"case": spec.case.tag(), "r": r, "format": format, "samples": samples, "tol": tol}),
        seed,
    );
    match format {
        "csv" => {
            let points = sample_base_points(&spec, samples, seed)?;
            let max_res = points
                .iter()
                .map(|x| spec.base_residual(x))
                .fold(0.0f64, f64::max);
            let mut payload = String::new();
            payload.push_str(
                &(1..=r)
                    .map(|i| format!("x{i}"))
                    .collect::<Vec<_>>()
                    .join(","),
            );
            payload.push('\n');
            for x in &points {
                let row: Vec<String> = x.iter().map(|v| format!("{v:.15e}")).collect();
                payload.push_str(&row.join(","));
                payload.push('\n');
            }
            report.push(
                "base-samples",
                max_res <= tol,
                json!({"count": points.len(), "max_residual": max_res}),
            );
            Ok(EmitResult {
                report,
                payload,
                extension: "csv",
            })
        }
        "svg" => {
            require(r == 2, "svg output is only supported for r = 2")?;
            let branches = crate::svg::base_curve(&spec);
            let max_res = branches
                .iter()
                .flatten()
                .map(|&(x1, x2)| spec.base_residual(&[x1, x2]))
                .fold(0.0f64, f64::max);
            let payload = crate::svg::render(&branches);
            report.push(
                "base-curve",
                !branches.is_empty() && max_res <= tol,
                json!({"branches": branches.len(), "max_residual": max_res}),
            );
            Ok(EmitResult {
                report,
                payload,
                extension: "svg",
            })
        }
        other => Err(CliError::BadParameter(format!(
            "unknown format '{other}' (expected csv or svg)"
        ))),
    }
}
