//! Static SVG rendering of Newton diagrams: lifted points as dots, the
//! lower hull as a thick polyline, marked points as stars, hidden ties as
//! dashed segments.

use num::rational::BigRational;
use num::ToPrimitive;
use std::fmt::Write;
use tropsev::classifier::{classify, ConeCertificate};
use tropsev::newton::{newton_diagram, WeightVector};

const WIDTH: f64 = 520.0;
const HEIGHT: f64 = 380.0;
const MARGIN: f64 = 42.0;

fn approx(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(0.0)
}

pub fn render(w: &WeightVector) -> String {
    let n = w.n();
    let diagram = newton_diagram(w);
    let ties: Vec<[usize; 2]> = {
        let mut ties: Vec<[usize; 2]> = classify(w)
            .certificates
            .iter()
            .filter_map(|c| match c {
                ConeCertificate::TypeIII { tie, .. } => Some(*tie),
                _ => None,
            })
            .collect();
        ties.sort();
        ties.dedup();
        ties
    };
    let ys: Vec<f64> = w.entries().iter().map(approx).collect();
    let (ymin, ymax) = ys
        .iter()
        .fold((f64::MAX, f64::MIN), |(lo, hi), &y| (lo.min(y), hi.max(y)));
    let yspan = (ymax - ymin).max(1.0);
    let sx = |i: usize| MARGIN + (WIDTH - 2.0 * MARGIN) * (i as f64) / (n as f64);
    let sy = |y: f64| HEIGHT - MARGIN - (HEIGHT - 2.0 * MARGIN) * (y - ymin) / yspan;

    let mut out = String::new();
    let _ = writeln!(
        out,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {WIDTH} {HEIGHT}" width="{WIDTH}" height="{HEIGHT}">"##
    );
    let _ = writeln!(out, r##"<rect width="100%" height="100%" fill="white"/>"##);
    // axes
    let _ = writeln!(
        out,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#888" stroke-width="1"/>"##,
        MARGIN,
        HEIGHT - MARGIN,
        WIDTH - MARGIN + 10.0,
        HEIGHT - MARGIN
    );
    let _ = writeln!(
        out,
        r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#888" stroke-width="1"/>"##,
        MARGIN,
        HEIGHT - MARGIN + 10.0,
        MARGIN,
        MARGIN - 10.0
    );
    for i in 0..=n {
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" font-size="11" text-anchor="middle" fill="#555">{}</text>"##,
            sx(i),
            HEIGHT - MARGIN + 16.0,
            i
        );
    }
    // hidden ties, drawn beneath the hull
    for [j1, j2] in &ties {
        let _ = writeln!(
            out,
            r##"<line x1="{:.1}" y1="{:.1}" x2="{:.1}" y2="{:.1}" stroke="#d55" stroke-width="1.5" stroke-dasharray="6,4"/>"##,
            sx(*j1),
            sy(ys[*j1]),
            sx(*j2),
            sy(ys[*j2])
        );
    }
    // lower hull through the cell endpoints
    let mut path = String::new();
    for (k, cell) in diagram.cells.iter().enumerate() {
        if k == 0 {
            let _ = write!(path, "M {:.1} {:.1}", sx(cell.left), sy(ys[cell.left]));
        }
        let _ = write!(path, " L {:.1} {:.1}", sx(cell.right), sy(ys[cell.right]));
    }
    let _ = writeln!(
        out,
        r##"<path d="{}" fill="none" stroke="black" stroke-width="2"/>"##,
        path
    );
    // lifted points; marked points as stars
    let marked: Vec<usize> = diagram
        .cells
        .iter()
        .flat_map(|c| c.marked.iter().copied())
        .collect();
    for i in 0..=n {
        let (x, y) = (sx(i), sy(ys[i]));
        if marked.contains(&i) {
            let _ = writeln!(out, r##"<path d="{}" fill="#d55"/>"##, star_path(x, y, 7.0));
        } else {
            let _ = writeln!(
                out,
                r##"<circle cx="{:.1}" cy="{:.1}" r="3.2" fill="black"/>"##,
                x, y
            );
        }
        let _ = writeln!(
            out,
            r##"<text x="{:.1}" y="{:.1}" font-size="10" text-anchor="middle" fill="#338">w{}={}</text>"##,
            x,
            y - 9.0,
            i,
            tropsev::textio::format_rational(w.get(i))
        );
    }
    out.push_str("</svg>\n");
    out
}

fn star_path(cx: f64, cy: f64, r: f64) -> String {
    let mut d = String::new();
    for k in 0..10 {
        let radius = if k % 2 == 0 { r } else { r * 0.45 };
        let angle = std::f64::consts::PI * (k as f64) / 5.0 - std::f64::consts::FRAC_PI_2;
        let (x, y) = (cx + radius * angle.cos(), cy + radius * angle.sin());
        if k == 0 {
            let _ = write!(d, "M {:.1} {:.1}", x, y);
        } else {
            let _ = write!(d, " L {:.1} {:.1}", x, y);
        }
    }
    d.push_str(" Z");
    d
}
