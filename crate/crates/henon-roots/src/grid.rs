//! Grid rendering of Green's functions and escape masks over a planar slice
//! of the two-dimensional complex domain, with PGM and CSV emission.

use std::io::{self, Write};

use num_complex::Complex64;

use crate::green::{green_minus, green_plus, in_kminus, in_kplus, GreenParams, OrbitClass};
use crate::henon::HenonComposition;
use crate::scalar::ApproxScalar;

/// An affine embedding of a real 2-plane into the domain:
/// `(x, y) ↦ origin + x·u + y·v` with real parameters `x, y`.
/// A complex line is the special case `v = i·u`.
#[derive(Debug, Clone)]
pub struct Slice {
    pub origin: (Complex64, Complex64),
    pub u: (Complex64, Complex64),
    pub v: (Complex64, Complex64),
    pub x_range: (f64, f64),
    pub y_range: (f64, f64),
}

impl Slice {
    pub fn point(&self, x: f64, y: f64) -> (Complex64, Complex64) {
        (
            self.origin.0 + self.u.0 * x + self.v.0 * y,
            self.origin.1 + self.u.1 * x + self.v.1 * y,
        )
    }

    /// The plane `z = conj(w)` around a center, the usual symmetric slice.
    pub fn conjugate_plane(center: Complex64, half_width: f64) -> Self {
        Slice {
            origin: (center.conj(), center),
            u: (Complex64::new(1.0, 0.0), Complex64::new(1.0, 0.0)),
            v: (Complex64::new(0.0, -1.0), Complex64::new(0.0, 1.0)),
            x_range: (-half_width, half_width),
            y_range: (-half_width, half_width),
        }
    }

    /// The complex line `z = z0`, varying `w` around a center.
    pub fn w_line(z0: Complex64, center: Complex64, half_width: f64) -> Self {
        Slice {
            origin: (z0, center),
            u: (Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)),
            v: (Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)),
            x_range: (-half_width, half_width),
            y_range: (-half_width, half_width),
        }
    }

    /// The complex line `w = w0`, varying `z` around a center.
    pub fn z_line(w0: Complex64, center: Complex64, half_width: f64) -> Self {
        Slice {
            origin: (center, w0),
            u: (Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)),
            v: (Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)),
            x_range: (-half_width, half_width),
            y_range: (-half_width, half_width),
        }
    }
}

/// What to compute per grid cell.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GridQuantity {
    GreenPlus,
    GreenMinus,
    KPlusMask,
    KMinusMask,
}

impl std::fmt::Display for GridQuantity {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GridQuantity::GreenPlus => write!(f, "green+"),
            GridQuantity::GreenMinus => write!(f, "green-"),
            GridQuantity::KPlusMask => write!(f, "kplus-mask"),
            GridQuantity::KMinusMask => write!(f, "kminus-mask"),
        }
    }
}

/// Row-major grid of values; row 0 is the low end of the y range.
#[derive(Debug, Clone)]
pub struct Grid {
    pub nx: usize,
    pub ny: usize,
    pub values: Vec<f64>,
    pub quantity: GridQuantity,
}

impl Grid {
    pub fn value(&self, ix: usize, iy: usize) -> f64 {
        self.values[iy * self.nx + ix]
    }
}

/// Evaluate the requested quantity over the slice. Deterministic for fixed
/// inputs; cells are independent pure evaluations.
pub fn emit_grid(
    h: &HenonComposition<ApproxScalar>,
    slice: &Slice,
    resolution: (usize, usize),
    prm: &GreenParams,
    what: GridQuantity,
) -> Grid {
    let (nx, ny) = resolution;
    assert!(nx >= 1 && ny >= 1, "resolution must be at least 1x1");
    let mut values = Vec::with_capacity(nx * ny);
    for iy in 0..ny {
        let ty = (iy as f64 + 0.5) / ny as f64;
        let y = slice.y_range.0 + ty * (slice.y_range.1 - slice.y_range.0);
        for ix in 0..nx {
            let tx = (ix as f64 + 0.5) / nx as f64;
            let x = slice.x_range.0 + tx * (slice.x_range.1 - slice.x_range.0);
            let pt = slice.point(x, y);
            let v = match what {
                GridQuantity::GreenPlus => green_plus(pt, h, prm).value,
                GridQuantity::GreenMinus => green_minus(pt, h, prm).value,
                GridQuantity::KPlusMask => mask(in_kplus(pt, h, prm)),
                GridQuantity::KMinusMask => mask(in_kminus(pt, h, prm)),
            };
            values.push(v);
        }
    }
    Grid {
        nx,
        ny,
        values,
        quantity: what,
    }
}

fn mask(class: OrbitClass) -> f64 {
    match class {
        OrbitClass::Escaped => 1.0,
        OrbitClass::BoundedUpToMaxIter => 0.0,
    }
}

/// Write as PGM, values affinely rescaled to 0..=65535 with the scale
/// recorded in a header comment. `binary` selects P5 over P2.
pub fn write_pgm(grid: &Grid, out: &mut impl Write, binary: bool) -> io::Result<()> {
    let min = grid.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = grid
        .values
        .iter()
        .cloned()
        .fold(f64::NEG_INFINITY, f64::max);
    let span = if max > min { max - min } else { 1.0 };
    let magic = if binary { "P5" } else { "P2" };
    writeln!(out, "{magic}")?;
    writeln!(
        out,
        "# quantity={} scale min={min} max={max}",
        grid.quantity
    )?;
    writeln!(out, "{} {}", grid.nx, grid.ny)?;
    writeln!(out, "65535")?;
    if binary {
        let mut buf = Vec::with_capacity(grid.values.len() * 2);
        for v in &grid.values {
            let level = (((v - min) / span) * 65535.0).round() as u16;
            buf.extend_from_slice(&level.to_be_bytes());
        }
        out.write_all(&buf)?;
    } else {
        for row in grid.values.chunks(grid.nx) {
            let line: Vec<String> = row
                .iter()
                .map(|v| format!("{}", (((v - min) / span) * 65535.0).round() as u16))
                .collect();
            writeln!(out, "{}", line.join(" "))?;
        }
    }
    Ok(())
}

/// Write as CSV rows `x,y,value` over cell indices.
pub fn write_csv(grid: &Grid, out: &mut impl Write) -> io::Result<()> {
    writeln!(out, "x,y,value")?;
    for iy in 0..grid.ny {
        for ix in 0..grid.nx {
            writeln!(out, "{},{},{}", ix, iy, grid.value(ix, iy))?;
        }
    }
    Ok(())
}
