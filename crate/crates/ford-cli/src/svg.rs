//! Plain SVG 1.1 rendering: circles as tangent disks over a baseline,
//! spheres as a top view of their shadows on the complex plane.
//!
//! Rendering is the one place the CLI leaves exact arithmetic; every
//! coordinate goes through the same `f64` formatting, so reruns on the same
//! input are byte-identical.

use ford::circles::FordCircle;
use ford::spheres::FordSphere;
use num::rational::BigRational;
use num::ToPrimitive;
use std::fmt::Write;

const WIDTH: f64 = 800.0;

fn f(x: f64) -> String {
    format!("{x:.4}")
}

fn rat(x: &BigRational) -> f64 {
    x.to_f64().expect("rational fits in f64")
}

/// Side view of Ford circles in a window `[lo, hi]` of the real line:
/// every circle sits on the baseline, the frame is scaled to a fixed width.
pub fn render_circles(circles: &[FordCircle], window: &(BigRational, BigRational)) -> String {
    let lo = rat(&window.0);
    let hi = rat(&window.1);
    let span = (hi - lo).max(1e-9);
    let margin = 0.02 * span;
    let world_w = span + 2.0 * margin;
    // Ford circles never rise above diameter 1, and most windows only hold
    // far flatter ones; size the frame to the tallest circle present.
    let top = circles
        .iter()
        .map(|c| 2.0 * rat(&c.radius()))
        .fold(0.0f64, f64::max)
        .max(0.05);
    let scale = WIDTH / world_w;
    let height = (top + margin) * scale;
    let x_of = |t: f64| (t - lo + margin) * scale;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        f(WIDTH),
        f(height),
        f(WIDTH),
        f(height)
    );
    let _ = writeln!(
        out,
        "  <line x1=\"0\" y1=\"{y}\" x2=\"{w}\" y2=\"{y}\" \
         stroke=\"black\" stroke-width=\"1\"/>",
        y = f(height),
        w = f(WIDTH)
    );
    for c in circles {
        let r = rat(&c.radius()) * scale;
        let cx = x_of(rat(&c.tangent()));
        let cy = height - r;
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" \
             fill=\"none\" stroke=\"black\" stroke-width=\"0.75\"/>",
            f(cx),
            f(cy),
            f(r)
        );
    }
    out.push_str("</svg>\n");
    out
}

/// Top view of Ford spheres: each sphere projects to the disk of its own
/// radius around its tangency point. The plane has no shadow and is skipped.
pub fn render_spheres(spheres: &[FordSphere]) -> String {
    struct Disk {
        x: f64,
        y: f64,
        r: f64,
    }
    let root_d = spheres
        .first()
        .map(|s| (s.d().get() as f64).sqrt())
        .unwrap_or(1.0);
    let disks: Vec<Disk> = spheres
        .iter()
        .filter_map(|s| {
            let t = s.tangent()?;
            Some(Disk {
                x: rat(&t.re()),
                y: rat(&t.im_over_root()) * root_d,
                r: rat(&s.radius()),
            })
        })
        .collect();

    let mut lo_x = f64::INFINITY;
    let mut hi_x = f64::NEG_INFINITY;
    let mut lo_y = f64::INFINITY;
    let mut hi_y = f64::NEG_INFINITY;
    for d in &disks {
        lo_x = lo_x.min(d.x - d.r);
        hi_x = hi_x.max(d.x + d.r);
        lo_y = lo_y.min(d.y - d.r);
        hi_y = hi_y.max(d.y + d.r);
    }
    if disks.is_empty() {
        lo_x = 0.0;
        hi_x = 1.0;
        lo_y = 0.0;
        hi_y = 1.0;
    }
    let span_x = (hi_x - lo_x).max(1e-9);
    let span_y = (hi_y - lo_y).max(1e-9);
    let margin = 0.02 * span_x.max(span_y);
    let scale = WIDTH / (span_x + 2.0 * margin);
    let height = (span_y + 2.0 * margin) * scale;

    let mut out = String::new();
    out.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    let _ = writeln!(
        out,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" \
         width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">",
        f(WIDTH),
        f(height),
        f(WIDTH),
        f(height)
    );
    for d in &disks {
        let cx = (d.x - lo_x + margin) * scale;
        // Flip the vertical axis so the positive imaginary direction
        // points up on the page.
        let cy = height - (d.y - lo_y + margin) * scale;
        let _ = writeln!(
            out,
            "  <circle cx=\"{}\" cy=\"{}\" r=\"{}\" \
             fill=\"none\" stroke=\"black\" stroke-width=\"0.75\"/>",
            f(cx),
            f(cy),
            f(d.r * scale)
        );
    }
    out.push_str("</svg>\n");
    out
}
