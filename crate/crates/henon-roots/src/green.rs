//! Numerical Green's functions and escape-time classification.
//!
//! `G⁺(p) = lim d^{-n} log⁺‖H^n(p)‖` and `G⁻` likewise under the inverse.
//! Orbits grow doubly exponentially past the escape radius, so all orbit
//! arithmetic runs on scaled complex numbers `m·e^E` with the exponent kept
//! separately; the estimate converges long after doubles would overflow.
//!
//! Escape is certified, boundedness is not: a point that never certifies
//! within the iteration budget is reported as bounded-up-to-max-iter.

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::henon::HenonComposition;
use crate::poly::{BiPoly, PolyMap2};
use crate::scalar::{ApproxScalar, Scalar};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum GreenError {
    #[error("only {found} of {wanted} sample points escaped; cannot fit a multiplier")]
    InsufficientSamples { wanted: usize, found: usize },
}

/// Parameters for Green's function estimation.
#[derive(Debug, Clone)]
pub struct GreenParams {
    /// Certified escape radius (at least 2).
    pub escape_radius: f64,
    pub max_iter: u32,
    /// Convergence threshold on successive estimates.
    pub tol: f64,
    /// Coordinate magnitude beyond which the estimate is frozen: tail
    /// corrections decay like the reciprocal of the dominant coordinate, so
    /// past this point they are below any representable tolerance. The
    /// scaled orbit arithmetic itself never overflows.
    pub overflow_guard: f64,
}

impl GreenParams {
    pub fn for_composition<S: Scalar>(h: &HenonComposition<S>) -> Self {
        GreenParams {
            escape_radius: h.escape_radius(),
            max_iter: 200,
            tol: 1e-10,
            overflow_guard: 1e300,
        }
    }
}

/// Orbit classification. Boundedness is a semi-decision: it only means no
/// escape certificate fired within the iteration budget.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitClass {
    Escaped,
    BoundedUpToMaxIter,
}

impl std::fmt::Display for OrbitClass {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitClass::Escaped => write!(f, "escaped"),
            OrbitClass::BoundedUpToMaxIter => write!(f, "bounded-up-to-max-iter"),
        }
    }
}

/// A Green's function estimate with convergence metadata.
#[derive(Debug, Clone)]
pub struct GreenEstimate {
    pub value: f64,
    pub iterations: u32,
    pub converged: bool,
    pub classification: OrbitClass,
}

/// Fitted orbit-growth multiplier of a candidate root.
#[derive(Debug, Clone)]
pub struct MultiplierFit {
    pub multiplier: f64,
    pub residual: f64,
    pub samples: usize,
}

// ---------------------------------------------------------------------------
// scaled complex arithmetic
// ---------------------------------------------------------------------------

/// A complex number `m · e^E`. Zero is `E = -inf`.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Scaled {
    m: Complex64,
    e: f64,
}

impl Scaled {
    pub(crate) fn from_complex(c: Complex64) -> Self {
        Scaled { m: c, e: 0.0 }.normalized()
    }

    fn zero() -> Self {
        Scaled {
            m: Complex64::new(0.0, 0.0),
            e: f64::NEG_INFINITY,
        }
    }

    fn normalized(self) -> Self {
        let n = self.m.norm();
        if n == 0.0 {
            return Self::zero();
        }
        if !(1e-100..=1e100).contains(&n) {
            Scaled {
                m: self.m / n,
                e: self.e + n.ln(),
            }
        } else {
            self
        }
    }

    fn mul(self, other: Self) -> Self {
        if self.e == f64::NEG_INFINITY || other.e == f64::NEG_INFINITY {
            return Self::zero();
        }
        Scaled {
            m: self.m * other.m,
            e: self.e + other.e,
        }
        .normalized()
    }

    fn add(self, other: Self) -> Self {
        if self.e == f64::NEG_INFINITY {
            return other;
        }
        if other.e == f64::NEG_INFINITY {
            return self;
        }
        let top = self.e.max(other.e);
        Scaled {
            m: self.m * (self.e - top).exp() + other.m * (other.e - top).exp(),
            e: top,
        }
        .normalized()
    }

    fn scale(self, c: Complex64) -> Self {
        self.mul(Scaled::from_complex(c))
    }

    /// `ln|value|`; `-inf` for zero.
    pub(crate) fn ln_norm(self) -> f64 {
        if self.e == f64::NEG_INFINITY {
            f64::NEG_INFINITY
        } else {
            self.e + self.m.norm().ln()
        }
    }
}

/// Horner evaluation of a dense polynomial at a scaled argument.
fn eval_poly_scaled(coeffs: &[ApproxScalar], x: Scaled) -> Scaled {
    let mut acc = Scaled::zero();
    for c in coeffs.iter().rev() {
        acc = acc.mul(x).add(Scaled::from_complex(c.0));
    }
    acc
}

/// Evaluate a sparse bivariate polynomial at scaled arguments.
pub(crate) fn eval_bipoly_scaled(p: &BiPoly<ApproxScalar>, z: Scaled, w: Scaled) -> Scaled {
    let mut zp = vec![Scaled::from_complex(Complex64::new(1.0, 0.0))];
    for i in 1..=p.degree_z().unwrap_or(0) as usize {
        let next = zp[i - 1].mul(z);
        zp.push(next);
    }
    let mut wp = vec![Scaled::from_complex(Complex64::new(1.0, 0.0))];
    for j in 1..=p.degree_w().unwrap_or(0) as usize {
        let next = wp[j - 1].mul(w);
        wp.push(next);
    }
    let mut acc = Scaled::zero();
    for ((i, j), c) in p.terms() {
        acc = acc.add(zp[*i as usize].mul(wp[*j as usize]).scale(c.0));
    }
    acc
}

/// Iteration direction: forward applies the composition, backward its
/// inverse. The escape funnel swaps coordinates accordingly.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Backward,
}

fn step(
    h: &HenonComposition<ApproxScalar>,
    dir: Direction,
    pt: (Scaled, Scaled),
) -> (Scaled, Scaled) {
    let (mut z, mut w) = pt;
    match dir {
        Direction::Forward => {
            for factor in h.factors().iter().rev() {
                // (z, w) -> (w, p(w) - a z)
                let pw = eval_poly_scaled(factor.p().coeffs(), w);
                let az = z.scale(factor.a().0);
                let second = pw.add(az.scale(Complex64::new(-1.0, 0.0)));
                z = w;
                w = second;
            }
        }
        Direction::Backward => {
            for factor in h.factors().iter() {
                // (z, w) -> ((p(z) - w)/a, z)
                let pz = eval_poly_scaled(factor.p().coeffs(), z);
                let first = pz
                    .add(w.scale(Complex64::new(-1.0, 0.0)))
                    .scale(factor.a().0.inv());
                w = z;
                z = first;
            }
        }
    }
    (z, w)
}

/// The certified escape test: dominance of the expanding coordinate beyond
/// the escape radius.
fn escape_certificate(dir: Direction, pt: (Scaled, Scaled), ln_r: f64) -> bool {
    let (z, w) = pt;
    match dir {
        Direction::Forward => w.ln_norm() > ln_r && w.ln_norm() >= z.ln_norm(),
        Direction::Backward => z.ln_norm() > ln_r && z.ln_norm() >= w.ln_norm(),
    }
}

fn green_directed(
    pt: (Complex64, Complex64),
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
    dir: Direction,
) -> GreenEstimate {
    let d = h.degree() as f64;
    let ln_r = prm.escape_radius.ln();
    let mut state = (Scaled::from_complex(pt.0), Scaled::from_complex(pt.1));
    let mut escaped = escape_certificate(dir, state, ln_r);
    let mut d_pow = 1.0f64;
    let mut prev: Option<f64> = None;

    for n in 1..=prm.max_iter {
        state = step(h, dir, state);
        d_pow *= d;
        if !escaped && escape_certificate(dir, state, ln_r) {
            escaped = true;
        }
        let ln_norm = state.0.ln_norm().max(state.1.ln_norm());
        let g = ln_norm.max(0.0) / d_pow;
        if escaped {
            let frozen = ln_norm > prm.overflow_guard.ln();
            if frozen || prev.map(|p| (g - p).abs() < prm.tol).unwrap_or(false) {
                return GreenEstimate {
                    value: g,
                    iterations: n,
                    converged: true,
                    classification: OrbitClass::Escaped,
                };
            }
            prev = Some(g);
        }
    }

    if escaped {
        GreenEstimate {
            value: prev.unwrap_or(0.0),
            iterations: prm.max_iter,
            converged: false,
            classification: OrbitClass::Escaped,
        }
    } else {
        GreenEstimate {
            value: 0.0,
            iterations: prm.max_iter,
            converged: false,
            classification: OrbitClass::BoundedUpToMaxIter,
        }
    }
}

/// Forward Green's function estimate at a point.
pub fn green_plus(
    pt: (Complex64, Complex64),
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
) -> GreenEstimate {
    green_directed(pt, h, prm, Direction::Forward)
}

/// Backward Green's function estimate at a point.
pub fn green_minus(
    pt: (Complex64, Complex64),
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
) -> GreenEstimate {
    green_directed(pt, h, prm, Direction::Backward)
}

/// Forward-orbit membership classification for the bounded set.
pub fn in_kplus(
    pt: (Complex64, Complex64),
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
) -> OrbitClass {
    classify_directed(pt, h, prm, Direction::Forward)
}

/// Backward-orbit membership classification for the bounded set.
pub fn in_kminus(
    pt: (Complex64, Complex64),
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
) -> OrbitClass {
    classify_directed(pt, h, prm, Direction::Backward)
}

fn classify_directed(
    pt: (Complex64, Complex64),
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
    dir: Direction,
) -> OrbitClass {
    let ln_r = prm.escape_radius.ln();
    let mut state = (Scaled::from_complex(pt.0), Scaled::from_complex(pt.1));
    for _ in 0..=prm.max_iter {
        if escape_certificate(dir, state, ln_r) {
            return OrbitClass::Escaped;
        }
        state = step(h, dir, state);
    }
    OrbitClass::BoundedUpToMaxIter
}

/// Forward-orbit classification under an arbitrary polynomial map, using the
/// same dominance certificate. Sound for Hénon compositions and their
/// unit-modulus diagonal twists, which preserve coordinate magnitudes.
pub fn classify_map_orbit(
    pt: (Complex64, Complex64),
    m: &PolyMap2<ApproxScalar>,
    prm: &GreenParams,
) -> OrbitClass {
    let ln_r = prm.escape_radius.ln();
    let mut state = (Scaled::from_complex(pt.0), Scaled::from_complex(pt.1));
    for _ in 0..=prm.max_iter {
        if escape_certificate(Direction::Forward, state, ln_r) {
            return OrbitClass::Escaped;
        }
        state = (
            eval_bipoly_scaled(&m.first, state.0, state.1),
            eval_bipoly_scaled(&m.second, state.0, state.1),
        );
    }
    OrbitClass::BoundedUpToMaxIter
}

/// Empirical constants for the Green's function bounds.
#[derive(Debug, Clone, serde::Serialize)]
pub struct BoundsReport {
    /// max |G⁺ - log⁺|w|| over sampled points with dominant `w`.
    pub c_plus: f64,
    /// max |G⁻ - log⁺|z|| over sampled points with dominant `z`.
    pub c_minus: f64,
    /// max of G⁺ - max(log⁺|z|, log⁺|w|) over general points.
    pub max_defect: f64,
    pub samples: usize,
    /// Largest coordinate magnitude sampled.
    pub scale_max: f64,
    /// Number of sampled points classified bounded with nonzero estimate
    /// (always zero: bounded classification forces a zero estimate).
    pub bounded_nonzero: usize,
}

/// Measure the empirical constants in the two-sided bounds; this measures,
/// it never fails. Magnitudes are sampled log-uniformly: half from a fixed
/// near-field band `[1, 10²]` where the constants are attained, half up to
/// `scale_max` to confirm no far-field growth. The estimate is therefore
/// comparable across scale sweeps.
pub fn check_bounds_lemma(
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
    samples: usize,
    scale_max: f64,
    seed: u64,
) -> BoundsReport {
    assert!(samples >= 1);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut c_plus: f64 = 0.0;
    let mut c_minus: f64 = 0.0;
    let mut max_defect = f64::NEG_INFINITY;
    let mut bounded_nonzero = 0;

    let near_field = scale_max.min(1e2);
    for k in 0..samples {
        let (ln_lo, ln_hi) = if k % 2 == 0 || scale_max <= near_field {
            (0.0, near_field.ln())
        } else {
            (near_field.ln(), scale_max.ln())
        };
        // w-dominant sample for the G⁺ bound
        let wmag = (ln_lo + rng.random::<f64>() * (ln_hi - ln_lo)).exp();
        let wphase = rng.random::<f64>() * std::f64::consts::TAU;
        let w = Complex64::from_polar(wmag, wphase);
        let zmag = rng.random::<f64>() * wmag;
        let zphase = rng.random::<f64>() * std::f64::consts::TAU;
        let z = Complex64::from_polar(zmag, zphase);

        // the bound covers bounded points too: there G⁺ = 0 and the defect
        // is log⁺|w| itself
        let est = green_plus((z, w), h, prm);
        c_plus = c_plus.max((est.value - wmag.ln().max(0.0)).abs());
        if est.classification == OrbitClass::BoundedUpToMaxIter && est.value != 0.0 {
            bounded_nonzero += 1;
        }

        // z-dominant sample for the G⁻ bound
        let est_b = green_minus((w, z), h, prm);
        c_minus = c_minus.max((est_b.value - wmag.ln().max(0.0)).abs());

        // independent coordinates for the max-bound defect
        let z2mag = (ln_lo + rng.random::<f64>() * (ln_hi - ln_lo)).exp();
        let z2 = Complex64::from_polar(z2mag, rng.random::<f64>() * std::f64::consts::TAU);
        let est2 = green_plus((z2, w), h, prm);
        let defect = est2.value - wmag.ln().max(0.0).max(z2mag.ln().max(0.0));
        max_defect = max_defect.max(defect);
    }

    BoundsReport {
        c_plus,
        c_minus,
        max_defect,
        samples,
        scale_max,
        bounded_nonzero,
    }
}

/// Fit the orbit-growth multiplier `b` of a claimed root `f` of order `n`:
/// the median of `G⁺(f(pt))/G⁺(pt)` over escaping samples. For a true root,
/// `b^n = d`.
pub fn fit_multiplier(
    f: &PolyMap2<ApproxScalar>,
    h: &HenonComposition<ApproxScalar>,
    prm: &GreenParams,
    samples: usize,
    seed: u64,
) -> Result<MultiplierFit, GreenError> {
    let mut rng = StdRng::seed_from_u64(seed);
    let r = prm.escape_radius;
    let mut ratios = vec![];
    for _ in 0..samples {
        let wmag = 2.0 * r + rng.random::<f64>() * (1e4 - 2.0 * r);
        let w = Complex64::from_polar(wmag, rng.random::<f64>() * std::f64::consts::TAU);
        let z = Complex64::from_polar(
            rng.random::<f64>() * wmag / 2.0,
            rng.random::<f64>() * std::f64::consts::TAU,
        );
        let base = green_plus((z, w), h, prm);
        if base.classification != OrbitClass::Escaped || !base.converged || base.value <= 0.0 {
            continue;
        }
        let (fz, fw) = f.eval((&ApproxScalar(z), &ApproxScalar(w)));
        let image = green_plus((fz.0, fw.0), h, prm);
        if image.classification != OrbitClass::Escaped || !image.converged {
            continue;
        }
        ratios.push(image.value / base.value);
    }
    if ratios.len() < samples.div_ceil(2) {
        return Err(GreenError::InsufficientSamples {
            wanted: samples,
            found: ratios.len(),
        });
    }
    ratios.sort_by(|a, b| a.partial_cmp(b).unwrap());
    let b = ratios[ratios.len() / 2];
    let residual = ratios.iter().map(|x| (x - b).abs()).fold(0.0, f64::max);
    Ok(MultiplierFit {
        multiplier: b,
        residual,
        samples: ratios.len(),
    })
}
