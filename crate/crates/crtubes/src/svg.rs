//! SVG 1.1 plain-profile rendering of catalog base curves at r = 2.
//! Fixed 800×800 viewport showing the axis box [−3,3]².

use crate::models::{TubeCase, TubeRealizationSpec};

const SIZE: f64 = 800.0;
const LO: f64 = -3.0;
const HI: f64 = 3.0;

fn to_px(v: f64) -> f64 {
    (v - LO) / (HI - LO) * SIZE
}

/// Split a parametric point stream into maximal runs inside the axis box.
fn clip_runs(points: impl Iterator<Item = (f64, f64)>) -> Vec<Vec<(f64, f64)>> {
    let margin = 0.02;
    let inside = |p: &(f64, f64)| {
        p.0.is_finite()
            && p.1.is_finite()
            && p.0 >= LO - margin
            && p.0 <= HI + margin
            && p.1 >= LO - margin
            && p.1 <= HI + margin
    };
    let mut runs = Vec::new();
    let mut current: Vec<(f64, f64)> = Vec::new();
    for p in points {
        if inside(&p) {
            current.push(p);
        } else if current.len() > 1 {
            runs.push(std::mem::take(&mut current));
        } else {
            current.clear();
        }
    }
    if current.len() > 1 {
        runs.push(current);
    }
    runs
}

fn linspace(a: f64, b: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| a + (b - a) * i as f64 / (n - 1) as f64)
}

/// Base curve of a catalog case at r = 2 as polyline branches.
pub fn base_curve(spec: &TubeRealizationSpec) -> Vec<Vec<(f64, f64)>> {
    assert_eq!(spec.r, 2);
    let n = 800;
    match spec.case {
        // e^{2x1} + e^{2x2} = 1, parametrized by e^{2x1} = cos²θ.
        TubeCase::Exp => clip_runs(linspace(1e-4, std::f64::consts::FRAC_PI_2 - 1e-4, n).map(
            |theta| (theta.cos().ln(), theta.sin().ln()),
        )),
        // 2 sin²x1 + e^{2x2} = 1, i.e. x2 = ½ ln cos 2x1, |x1| < π/4.
        TubeCase::Trig => {
            let b = std::f64::consts::FRAC_PI_4 - 1e-6;
            clip_runs(linspace(-b, b, n).map(|x1| (x1, 0.5 * (2.0 * x1).cos().ln())))
        }
        // x1 = x2² for s = 1; x1 = ½ e^{2x2} for s = 2.
        TubeCase::Parabolic(1) => clip_runs(linspace(-1.75, 1.75, n).map(|x2| (x2 * x2, x2))),
        TubeCase::Parabolic(2) => {
            clip_runs(linspace(LO, 0.9, n).map(|x2| (0.5 * (2.0 * x2).exp(), x2)))
        }
        TubeCase::Parabolic(_) => Vec::new(),
    }
}

/// Render polylines into a fixed-viewport SVG 1.1 document.
pub fn render(branches: &[Vec<(f64, f64)>]) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">\n"
    ));
    out.push_str(&format!(
        "  <rect x=\"0\" y=\"0\" width=\"{SIZE}\" height=\"{SIZE}\" \
         fill=\"none\" stroke=\"black\"/>\n"
    ));
    for branch in branches {
        let pts: Vec<String> = branch
            .iter()
            .map(|&(x, y)| format!("{:.2},{:.2}", to_px(x), SIZE - to_px(y)))
            .collect();
        out.push_str(&format!(
            "  <polyline fill=\"none\" stroke=\"black\" points=\"{}\"/>\n",
            pts.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}
