//! Deterministic SVG diagrams of walls in the `(β, α)` half plane and of function graphs.
//!
//! With `a = α²/2` every semicircular wall is a true semicircle of radius `sqrt(R)`.

use std::fmt::Write;

use num_traits::Zero;

use crate::exactnum::{ceil_int, floor_int, from_bigint, int, rational_to_f64, Rational};
use crate::hntree::PiecewiseQuadratic;
use crate::lattice::ChernClass;
use crate::walls::{NumericalWall, WallCandidate};

const WIDTH: f64 = 720.0;
const HEIGHT: f64 = 360.0;
const MARGIN: f64 = 36.0;
const SAMPLES: i64 = 240;

const STYLE: &str = "<style>.axis{stroke:#000;stroke-width:1}.vertical-wall{stroke:#555;stroke-dasharray:6 4}\
.hyperbola{fill:none;stroke:#1f77b4;stroke-width:1.5}.wall{fill:none;stroke:#d62728;stroke-width:1.5}\
.segment{stroke:#2ca02c;stroke-width:2}.graph{fill:none;stroke:#1f77b4;stroke-width:1.5}\
.breakpoint{fill:#d62728}text{font:11px sans-serif}</style>";

fn f(x: f64) -> String {
    let s = format!("{x:.2}");
    if s == "-0.00" {
        "0.00".into()
    } else {
        s
    }
}

/// Maps plot coordinates to SVG pixels.
struct Frame {
    x_lo: f64,
    y_lo: f64,
    sx: f64,
    sy: f64,
}

impl Frame {
    fn px(&self, x: f64) -> f64 {
        MARGIN + (x - self.x_lo) * self.sx
    }

    fn py(&self, y: f64) -> f64 {
        HEIGHT - MARGIN - (y - self.y_lo) * self.sy
    }
}

fn open(out: &mut String, title: &str) {
    let _ = write!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{w}\" height=\"{h}\" viewBox=\"0 0 {w} {h}\">\n<title>{title}</title>\n{STYLE}\n",
        w = WIDTH,
        h = HEIGHT
    );
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Walls for `v` crossing the segment `β = beta`, `a_min <= a <= a_max`, with the hyperbola `H_v`.
pub fn walls_svg(
    v: &ChernClass,
    beta: &Rational,
    a_min: &Rational,
    a_max: &Rational,
    walls: &[WallCandidate],
) -> String {
    let mu = (!v.v0.is_zero()).then(|| Rational::new(v.v1.clone(), v.v0.clone()));
    let mut lo = beta.clone();
    let mut hi = beta.clone();
    let mut top = int(1);
    for c in walls {
        if let Some((s, r)) = c.wall.circle() {
            let rho = Rational::from_integer(crate::exactnum::isqrt(&ceil_int(r)) + 1u32);
            lo = lo.min(s - &rho);
            hi = hi.max(s + &rho);
            top = top.max(rho);
        }
    }
    if let Some(m) = &mu {
        hi = hi.max(m.clone());
    }
    let lo = from_bigint(&(floor_int(&lo) - 1u32));
    let hi = from_bigint(&(ceil_int(&hi) + 1u32));
    let alpha_max = (2.0 * rational_to_f64(a_max)).sqrt();
    let y_hi = rational_to_f64(&top).max(alpha_max.min(2.0 * rational_to_f64(&top))) * 1.1;
    let (x_lo, x_hi) = (rational_to_f64(&lo), rational_to_f64(&hi));
    let scale = ((WIDTH - 2.0 * MARGIN) / (x_hi - x_lo)).min((HEIGHT - 2.0 * MARGIN) / y_hi);
    let fr = Frame {
        x_lo,
        y_lo: 0.0,
        sx: scale,
        sy: scale,
    };
    let mut out = String::new();
    open(&mut out, &escape(&format!("Numerical walls for {v}")));
    let base = fr.py(0.0);
    let _ = writeln!(
        out,
        "<line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\"/>",
        f(fr.px(x_lo)),
        f(base),
        f(fr.px(x_hi)),
        f(base)
    );
    let _ = writeln!(
        out,
        "<text x=\"{}\" y=\"{}\">β</text>",
        f(fr.px(x_hi) + 6.0),
        f(base + 4.0)
    );
    let mut k = floor_int(&lo);
    let last = ceil_int(&hi);
    while k <= last {
        let x = fr.px(rational_to_f64(&from_bigint(&k)));
        let _ = writeln!(
            out,
            "<line class=\"axis\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/><text x=\"{}\" y=\"{}\">{k}</text>",
            f(base),
            f(base + 4.0),
            f(x - 4.0),
            f(base + 16.0),
            x = f(x)
        );
        k += 1;
    }
    if let Some(m) = &mu {
        let x = f(fr.px(rational_to_f64(m)));
        let _ = writeln!(
            out,
            "<line class=\"vertical-wall\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
            f(base),
            f(fr.py(y_hi))
        );
    }
    for run in hyperbola_runs(v, &lo, &hi) {
        let pts: Vec<String> = run
            .iter()
            .map(|(b, a)| format!("{},{}", f(fr.px(*b)), f(fr.py((2.0 * a).sqrt().min(y_hi)))))
            .collect();
        let _ = writeln!(out, "<polyline class=\"hyperbola\" points=\"{}\"/>", pts.join(" "));
    }
    if v.v0.is_zero() && !v.v1.is_zero() {
        let x = f(fr.px(rational_to_f64(&(&v.v2 / from_bigint(&v.v1)))));
        let _ = writeln!(
            out,
            "<line class=\"hyperbola\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
            f(base),
            f(fr.py(y_hi))
        );
    }
    let bx = f(fr.px(rational_to_f64(beta)));
    let a_lo = (2.0 * rational_to_f64(a_min)).sqrt();
    let _ = writeln!(
        out,
        "<line class=\"segment\" x1=\"{bx}\" y1=\"{}\" x2=\"{bx}\" y2=\"{}\"/>",
        f(fr.py(a_lo)),
        f(fr.py(alpha_max.min(y_hi)))
    );
    for c in walls {
        match &c.wall {
            NumericalWall::Semicircle { center, radius_sq } => {
                let s = rational_to_f64(center);
                let rho = rational_to_f64(radius_sq).sqrt();
                let r = f(rho * scale);
                let _ = writeln!(
                    out,
                    "<path class=\"wall\" d=\"M {} {} A {r} {r} 0 0 1 {} {}\"/>",
                    f(fr.px(s - rho)),
                    f(base),
                    f(fr.px(s + rho)),
                    f(base)
                );
                let _ = writeln!(
                    out,
                    "<text class=\"wall-label\" x=\"{}\" y=\"{}\">{}</text>",
                    f(fr.px(s) + 3.0),
                    f(fr.py(rho) - 3.0),
                    escape(&c.wall.to_string())
                );
            }
            NumericalWall::Vertical { beta } => {
                let x = f(fr.px(rational_to_f64(beta)));
                let _ = writeln!(
                    out,
                    "<line class=\"wall\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
                    f(base),
                    f(fr.py(y_hi))
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Runs of `(β, a)` on `H_v` with `a >= 0`, sampled at rational `β` with exact `a`.
fn hyperbola_runs(v: &ChernClass, lo: &Rational, hi: &Rational) -> Vec<Vec<(f64, f64)>> {
    let mut runs = Vec::new();
    if v.v0.is_zero() {
        return runs;
    }
    let v0 = v.v0r();
    let step = (hi - lo) / int(SAMPLES);
    let mut current: Vec<(f64, f64)> = Vec::new();
    for k in 0..=SAMPLES {
        let b = lo + &step * int(k);
        let a = v.ch2_at(&b) / &v0;
        if a >= int(0) {
            current.push((rational_to_f64(&b), rational_to_f64(&a)));
        } else if !current.is_empty() {
            runs.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        runs.push(current);
    }
    runs
}

/// Graph of a piecewise quadratic function on `[x_lo, x_hi]` with its breakpoints marked.
pub fn function_svg(name: &str, func: &PiecewiseQuadratic, x_lo: &Rational, x_hi: &Rational) -> String {
    let step = (x_hi - x_lo) / int(SAMPLES);
    let lower = func.domain_lower.as_ref().map(|b| b.to_f64());
    let upper = func.domain_upper.as_ref().map(|b| b.to_f64());
    let pts: Vec<(f64, f64)> = (0..=SAMPLES)
        .map(|k| x_lo + &step * int(k))
        .map(|x| (rational_to_f64(&x), rational_to_f64(&func.eval_rational(&x))))
        .filter(|(x, _)| lower.is_none_or(|l| *x >= l) && upper.is_none_or(|u| *x <= u))
        .collect();
    let (x0, x1) = (rational_to_f64(x_lo), rational_to_f64(x_hi));
    let y0 = pts.iter().map(|p| p.1).fold(0.0f64, f64::min);
    let y1 = pts.iter().map(|p| p.1).fold(1.0f64, f64::max);
    let fr = Frame {
        x_lo: x0,
        y_lo: y0,
        sx: (WIDTH - 2.0 * MARGIN) / (x1 - x0),
        sy: (HEIGHT - 2.0 * MARGIN) / (y1 - y0),
    };
    let mut out = String::new();
    open(&mut out, &escape(name));
    let zero = f(fr.py(0.0));
    let _ = writeln!(
        out,
        "<line class=\"axis\" x1=\"{}\" y1=\"{zero}\" x2=\"{}\" y2=\"{zero}\"/>",
        f(fr.px(x0)),
        f(fr.px(x1))
    );
    if x0 <= 0.0 && 0.0 <= x1 {
        let x = f(fr.px(0.0));
        let _ = writeln!(
            out,
            "<line class=\"axis\" x1=\"{x}\" y1=\"{}\" x2=\"{x}\" y2=\"{}\"/>",
            f(fr.py(y0)),
            f(fr.py(y1))
        );
    }
    let coords: Vec<String> = pts
        .iter()
        .map(|(x, y)| format!("{},{}", f(fr.px(*x)), f(fr.py(*y))))
        .collect();
    let _ = writeln!(out, "<polyline class=\"graph\" points=\"{}\"/>", coords.join(" "));
    for b in &func.breakpoints {
        let x = b.to_f64();
        if x < x0 || x > x1 {
            continue;
        }
        let y = func.eval(b).to_f64();
        let _ = writeln!(
            out,
            "<circle class=\"breakpoint\" cx=\"{}\" cy=\"{}\" r=\"3\"/><text x=\"{}\" y=\"{}\">{}</text>",
            f(fr.px(x)),
            f(fr.py(y)),
            f(fr.px(x) + 4.0),
            f(fr.py(y) - 6.0),
            escape(&b.to_string())
        );
    }
    out.push_str("</svg>\n");
    out
}
