//! Planar picture of the cell images when the Prym variety is two-dimensional.

use std::fmt::Write;

use anyhow::Result;
use num_traits::ToPrimitive;
use prym_core::abel_prym::{AbelPrym, CellMatrix};
use prym_core::Rat;

use crate::InputError;

const SIZE: f64 = 480.0;
const MARGIN: f64 = 20.0;

fn colour(degree: u64) -> &'static str {
    match degree {
        1 => "#8ecae6",
        2 => "#ffb703",
        4 => "#fb8500",
        _ => "#d62828",
    }
}

fn to_f64(r: &Rat) -> f64 {
    r.numer().to_f64().unwrap_or(0.0) / r.denom().to_f64().unwrap_or(1.0)
}

/// Cell images translated into the fundamental domain spanned by the Gram rows.
pub fn cells_picture(ap: &AbelPrym, cells: &[CellMatrix]) -> Result<String> {
    if ap.dimension() != 2 {
        return Err(InputError {
            code: "svg_dimension",
            message: format!("SVG output needs a two-dimensional Prym variety, got {}", ap.dimension()),
        }
        .into());
    }
    let gram = ap.gram();
    let inverse = gram.inverse().expect("Gram matrix is invertible");
    let mut polygons: Vec<(Vec<(f64, f64)>, u64)> = Vec::new();
    for cell in cells {
        let corners = ap.cell_image_corners(&cell.edges)?;
        // Shift by a lattice vector so the first corner lies in the fundamental domain.
        let mu = inverse.mul_vec(&corners[0].coords);
        let shift: Vec<Rat> = mu.iter().map(|m| Rat::from_integer(m.floor().to_integer())).collect();
        let offset = gram.mul_vec(&shift);
        let points = [0, 1, 3, 2]
            .iter()
            .map(|&i| {
                let c = &corners[i].coords;
                (to_f64(&(&c[0] - &offset[0])), to_f64(&(&c[1] - &offset[1])))
            })
            .collect();
        polygons.push((points, cell.degree));
    }
    let rows: Vec<(f64, f64)> = (0..2).map(|j| (to_f64(&gram[(j, 0)]), to_f64(&gram[(j, 1)]))).collect();
    let domain = [(0.0, 0.0), rows[0], (rows[0].0 + rows[1].0, rows[0].1 + rows[1].1), rows[1]];
    let all = polygons.iter().flat_map(|(p, _)| p.iter()).chain(domain.iter());
    let (mut lo_x, mut lo_y, mut hi_x, mut hi_y) = (f64::MAX, f64::MAX, f64::MIN, f64::MIN);
    for &(x, y) in all {
        lo_x = lo_x.min(x);
        lo_y = lo_y.min(y);
        hi_x = hi_x.max(x);
        hi_y = hi_y.max(y);
    }
    let scale = (SIZE - 2.0 * MARGIN) / (hi_x - lo_x).max(hi_y - lo_y).max(1e-9);
    let map = |(x, y): (f64, f64)| (MARGIN + (x - lo_x) * scale, SIZE - MARGIN - (y - lo_y) * scale);
    let path = |pts: &[(f64, f64)]| {
        pts.iter()
            .map(|&p| {
                let (x, y) = map(p);
                format!("{x:.2},{y:.2}")
            })
            .collect::<Vec<_>>()
            .join(" ")
    };
    let mut out = String::new();
    writeln!(out, r##"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"##)?;
    for (points, degree) in &polygons {
        writeln!(
            out,
            r##"  <polygon points="{}" fill="{}" fill-opacity="0.5" stroke="#333" stroke-width="0.5"/>"##,
            path(points),
            colour(*degree)
        )?;
    }
    writeln!(out, r#"  <polygon points="{}" fill="none" stroke="black" stroke-width="1.5"/>"#, path(&domain))?;
    writeln!(out, "</svg>")?;
    Ok(out)
}
