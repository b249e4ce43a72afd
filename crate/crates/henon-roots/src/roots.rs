//! Compositional roots of Hénon compositions: admissible orders, exact
//! verification, the diagonal symmetry family, and numeric root search by
//! coefficient matching.
//!
//! Any root of a Hénon composition is itself a composition of Hénon maps up
//! to unit normalization, so the search space is the finite-dimensional
//! family `diagonal ∘ (monic factors)` and the admissible orders are exactly
//! the `n` with `d^{1/n}` an integer at least 2.

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::henon::{HenonComposition, HenonError, HenonFactor};
use crate::poly::{Axis, BiPoly, PolyError, PolyMap2, UniPoly};
use crate::scalar::{snap_to_exact, ApproxScalar, ExactScalar, Scalar};
use crate::word::WordError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum RootsError {
    #[error("order {order} is not admissible for degree {degree}")]
    OrderNotAdmissible { order: u32, degree: u64 },
    #[error("the provided map is not an exactly verified root of the target")]
    NotARoot,
    #[error("the diagonal constraint system does not pin down finitely many twists")]
    UnconstrainedSymmetry,
    #[error("symmetry solutions leave the recognized exact field: {0}")]
    ExactnessLoss(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Henon(#[from] HenonError),
    #[error(transparent)]
    Word(#[from] WordError),
}

/// Verification status of a candidate root.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RootStatus {
    VerifiedExact,
    VerifiedNumeric,
    Refuted,
}

impl std::fmt::Display for RootStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RootStatus::VerifiedExact => write!(f, "verified-exact"),
            RootStatus::VerifiedNumeric => write!(f, "verified-numeric"),
            RootStatus::Refuted => write!(f, "refuted"),
        }
    }
}

/// The map payload of a candidate: exact when snapping succeeded.
#[derive(Debug, Clone)]
pub enum RootMap {
    Exact(PolyMap2<ExactScalar>),
    Numeric(PolyMap2<ApproxScalar>),
}

impl RootMap {
    pub fn to_approx(&self) -> PolyMap2<ApproxScalar> {
        match self {
            RootMap::Exact(m) => m.to_approx(),
            RootMap::Numeric(m) => m.clone(),
        }
    }

    pub fn exact(&self) -> Option<&PolyMap2<ExactScalar>> {
        match self {
            RootMap::Exact(m) => Some(m),
            RootMap::Numeric(_) => None,
        }
    }
}

/// One candidate root of order `n`.
#[derive(Debug, Clone)]
pub struct RootCandidate {
    pub map: RootMap,
    pub order: u32,
    /// Ordered factor degrees of the ansatz, multiplying to `d^{1/n}`
    /// (empty when the candidate came from the symmetry family).
    pub shape: Vec<u32>,
    pub status: RootStatus,
    /// Sup-norm of the final coefficient residual (0 for exact verification).
    pub residual: f64,
    /// The diagonal twist `(σ, ρ)` when produced by the symmetry search.
    pub twist: Option<(ExactScalar, ExactScalar)>,
}

/// Search parameters for the numeric root search.
#[derive(Debug, Clone)]
pub struct RootSearchConfig {
    pub newton_starts: u32,
    pub newton_tol: f64,
    pub max_newton_iters: u32,
    pub snap_conductor: u32,
    pub snap_tol: f64,
    pub seed: u64,
}

impl Default for RootSearchConfig {
    fn default() -> Self {
        RootSearchConfig {
            newton_starts: 200,
            newton_tol: 1e-12,
            max_newton_iters: 60,
            snap_conductor: 24,
            snap_tol: 1e-8,
            seed: 0,
        }
    }
}

/// Orders `n >= 2` such that `d^{1/n}` is an integer at least 2.
pub fn root_orders_of_degree(d: u64) -> Vec<u32> {
    if d < 4 {
        return vec![];
    }
    let max_n = d.ilog2();
    // a perfect n-th power for composite n is also one for any prime factor,
    // so testing prime exponents rejects non-powers quickly
    const PRIMES: [u32; 18] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61,
    ];
    let hit = PRIMES
        .iter()
        .take_while(|&&p| p <= max_n)
        .any(|&p| integer_nth_root(d, p).is_some());
    if !hit {
        return vec![];
    }
    (2..=max_n)
        .filter(|&n| integer_nth_root(d, n).map(|e| e >= 2).unwrap_or(false))
        .collect()
}

/// Exact integer `n`-th root of `d`, when one exists.
fn integer_nth_root(d: u64, n: u32) -> Option<u64> {
    if n == 2 {
        let e = d.isqrt();
        return if e * e == d { Some(e) } else { None };
    }
    let guess = (d as f64).powf(1.0 / n as f64).round() as u64;
    (guess.saturating_sub(1)..=guess + 1).find(|&e| checked_pow(e, n) == Some(d))
}

fn checked_pow(e: u64, n: u32) -> Option<u64> {
    let mut acc: u64 = 1;
    for _ in 0..n {
        acc = acc.checked_mul(e)?;
    }
    Some(acc)
}

/// The set of admissible root orders for a composition.
pub fn possible_root_orders<S: Scalar>(h: &HenonComposition<S>) -> Vec<u32> {
    root_orders_of_degree(h.degree())
}

/// Check `f^n = h` at the regime's native precision.
pub fn verify_root<S: Scalar>(
    f: &PolyMap2<S>,
    n: u32,
    h: &HenonComposition<S>,
    tol: f64,
) -> Result<RootStatus, RootsError> {
    let target = h.as_map()?;
    // cheap refutation by degree arithmetic
    let deg_f = f.total_degree().unwrap_or(0) as u64;
    let mut bound: u64 = 1;
    for _ in 0..n {
        bound = bound.saturating_mul(deg_f.max(1));
    }
    if bound != h.degree() {
        return Ok(RootStatus::Refuted);
    }
    let power = f.iterate(n)?;
    if S::EXACT {
        if power == target {
            Ok(RootStatus::VerifiedExact)
        } else {
            Ok(RootStatus::Refuted)
        }
    } else if power.approx_eq(&target, tol) {
        Ok(RootStatus::VerifiedNumeric)
    } else {
        Ok(RootStatus::Refuted)
    }
}

// ---------------------------------------------------------------------------
// symmetry roots: polynomials in (z, w, σ, ρ) with exact coefficients
// ---------------------------------------------------------------------------

/// Coefficient polynomials in (σ, ρ) grouped by plane-variable exponents.
type TwistGroups = BTreeMap<(u32, u32), Vec<((u32, u32), ExactScalar)>>;

/// Sparse polynomial in `z, w, σ, ρ` used to carry a diagonal twist
/// symbolically through composition.
#[derive(Debug, Clone, PartialEq)]
struct TwistPoly {
    terms: BTreeMap<(u32, u32, u32, u32), ExactScalar>,
}

impl TwistPoly {
    fn zero() -> Self {
        TwistPoly {
            terms: BTreeMap::new(),
        }
    }

    fn constant(c: ExactScalar) -> Self {
        let mut out = Self::zero();
        out.add_term((0, 0, 0, 0), c);
        out
    }

    fn add_term(&mut self, key: (u32, u32, u32, u32), c: ExactScalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&key) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, c) in &other.terms {
            out.add_term(*k, c.clone());
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((z1, w1, s1, r1), c1) in &self.terms {
            for ((z2, w2, s2, r2), c2) in &other.terms {
                out.add_term((z1 + z2, w1 + w2, s1 + s2, r1 + r2), c1.mul(c2));
            }
        }
        out
    }

    fn scale(&self, c: &ExactScalar) -> Self {
        let mut out = Self::zero();
        for (k, x) in &self.terms {
            out.add_term(*k, x.mul(c));
        }
        out
    }

    /// Substitute polynomials for `z` and `w`, leaving σ, ρ untouched.
    fn substitute_zw(&self, a: &TwistPoly, b: &TwistPoly) -> Self {
        let max_i = self.terms.keys().map(|k| k.0).max().unwrap_or(0) as usize;
        let max_j = self.terms.keys().map(|k| k.1).max().unwrap_or(0) as usize;
        let mut a_pows = Vec::with_capacity(max_i + 1);
        a_pows.push(Self::constant(ExactScalar::one()));
        for i in 1..=max_i {
            let next = a_pows[i - 1].mul(a);
            a_pows.push(next);
        }
        let mut b_pows = Vec::with_capacity(max_j + 1);
        b_pows.push(Self::constant(ExactScalar::one()));
        for j in 1..=max_j {
            let next = b_pows[j - 1].mul(b);
            b_pows.push(next);
        }
        let mut acc = Self::zero();
        for ((i, j, s, r), c) in &self.terms {
            let mut term = a_pows[*i as usize].mul(&b_pows[*j as usize]).scale(c);
            if *s > 0 || *r > 0 {
                let mut twist = Self::zero();
                twist.add_term((0, 0, *s, *r), ExactScalar::one());
                term = term.mul(&twist);
            }
            acc = acc.add(&term);
        }
        acc
    }

    /// Group terms by `(z, w)` exponents: coefficient polynomials in σ, ρ.
    fn grouped_by_zw(&self) -> TwistGroups {
        let mut out: TwistGroups = BTreeMap::new();
        for ((i, j, s, r), c) in &self.terms {
            out.entry((*i, *j)).or_default().push(((*s, *r), c.clone()));
        }
        out
    }
}

/// Lift a plane-map component into the twist ring: a monomial `c z^i w^j`
/// of `f0 ∘ (σz, ρw)` becomes `c σ^i ρ^j z^i w^j`.
fn twisted_component(p: &BiPoly<ExactScalar>) -> TwistPoly {
    let mut out = TwistPoly::zero();
    for ((i, j), c) in p.terms() {
        out.add_term((*i, *j, *i, *j), c.clone());
    }
    out
}

/// All diagonal twists `s = (σz, ρw)` with `(f0 ∘ s)^n = h`, found by
/// extracting the monomial conditions the twist imposes on each coefficient
/// of the symbolic iterate, solving the resulting unit system exactly, and
/// verifying every solution by composition.
pub fn symmetry_roots(
    f0: &PolyMap2<ExactScalar>,
    n: u32,
    h: &HenonComposition<ExactScalar>,
) -> Result<Vec<RootCandidate>, RootsError> {
    if verify_root(f0, n, h, 0.0)? != RootStatus::VerifiedExact {
        return Err(RootsError::NotARoot);
    }
    let target = h.as_map()?;

    let twisted = (twisted_component(&f0.first), twisted_component(&f0.second));
    let mut acc = (TwistPoly::zero(), TwistPoly::zero());
    acc.0.add_term((1, 0, 0, 0), ExactScalar::one());
    acc.1.add_term((0, 1, 0, 0), ExactScalar::one());
    for _ in 0..n {
        acc = (
            twisted.0.substitute_zw(&acc.0, &acc.1),
            twisted.1.substitute_zw(&acc.0, &acc.1),
        );
    }

    // collect monomial equations σ^a ρ^b = u
    let mut equations: Vec<(i64, i64, ExactScalar)> = vec![];
    for (power, target_poly) in [(&acc.0, &target.first), (&acc.1, &target.second)] {
        let grouped = power.grouped_by_zw();
        for ((i, j), terms) in &grouped {
            let rhs = target_poly.coeff(*i, *j);
            if terms.len() == 1 {
                let ((s, r), c) = &terms[0];
                if rhs.is_zero() {
                    // a lone nonzero monomial cannot be killed by a diagonal
                    return Ok(vec![]);
                }
                let u = rhs.mul(&c.invert().expect("stored coefficients are nonzero"));
                if *s == 0 && *r == 0 {
                    if !u.is_one() {
                        return Ok(vec![]);
                    }
                } else {
                    equations.push((*s as i64, *r as i64, u));
                }
            }
        }
        for (key, c) in target_poly.terms() {
            if !c.is_zero() && !grouped.contains_key(key) {
                return Ok(vec![]);
            }
        }
    }

    let pairs = solve_unit_system(&equations)?;

    let mut out = vec![];
    for (sigma, rho) in pairs {
        let s_map = diagonal_map(&sigma, &rho);
        let candidate = f0.compose(&s_map)?;
        if verify_root(&candidate, n, h, 0.0)? == RootStatus::VerifiedExact {
            out.push(RootCandidate {
                map: RootMap::Exact(candidate),
                order: n,
                shape: vec![],
                status: RootStatus::VerifiedExact,
                residual: 0.0,
                twist: Some((sigma, rho)),
            });
        }
    }
    sort_candidates(&mut out);
    Ok(out)
}

fn diagonal_map(sigma: &ExactScalar, rho: &ExactScalar) -> PolyMap2<ExactScalar> {
    PolyMap2::new(
        BiPoly::monomial(sigma.clone(), 1, 0),
        BiPoly::monomial(rho.clone(), 0, 1),
    )
}

/// Solve `σ^{a_t} ρ^{b_t} = u_t` by integer row reduction to triangular form
/// and root enumeration in the exact field.
fn solve_unit_system(
    equations: &[(i64, i64, ExactScalar)],
) -> Result<Vec<(ExactScalar, ExactScalar)>, RootsError> {
    let mut rows: Vec<(i64, i64, ExactScalar)> = equations.to_vec();

    // eliminate the σ exponent down to a single row by gcd steps
    loop {
        let mut with_a: Vec<usize> = (0..rows.len()).filter(|&i| rows[i].0 != 0).collect();
        if with_a.len() <= 1 {
            break;
        }
        with_a.sort_by_key(|&i| rows[i].0.unsigned_abs());
        let pivot = with_a[0];
        let other = with_a[1];
        let q = rows[other].0 / rows[pivot].0;
        let (pa, pb, pu) = rows[pivot].clone();
        let (oa, ob, ou) = rows[other].clone();
        rows[other] = (
            oa - q * pa,
            ob - q * pb,
            ou.mul(
                &pu.pow_int(-q)
                    .ok_or_else(|| RootsError::ExactnessLoss("zero unit".into()))?,
            ),
        );
    }
    let sigma_row = rows.iter().find(|r| r.0 != 0).cloned();

    // gcd-eliminate the ρ-only rows down to a single row
    let mut rho_rows: Vec<(i64, ExactScalar)> = rows
        .iter()
        .filter(|r| r.0 == 0 && r.1 != 0)
        .map(|r| (r.1, r.2.clone()))
        .collect();
    while rho_rows.len() > 1 {
        rho_rows.sort_by_key(|r| r.0.unsigned_abs());
        let (pb, pu) = rho_rows[0].clone();
        let (ob, ou) = rho_rows[1].clone();
        let q = ob / pb;
        let nb = ob - q * pb;
        let nu = ou.mul(
            &pu.pow_int(-q)
                .ok_or_else(|| RootsError::ExactnessLoss("zero unit".into()))?,
        );
        if nb == 0 {
            if !nu.is_one() {
                return Ok(vec![]); // inconsistent system: no twists
            }
            rho_rows.remove(1);
        } else {
            rho_rows[1] = (nb, nu);
        }
    }

    for (a, b, u) in &rows {
        if *a == 0 && *b == 0 && !u.is_one() {
            return Ok(vec![]);
        }
    }

    let Some((g, b1, u1)) = sigma_row else {
        return Err(RootsError::UnconstrainedSymmetry);
    };
    let Some((h_exp, v)) = rho_rows.into_iter().next() else {
        return Err(RootsError::UnconstrainedSymmetry);
    };

    let (g, b1, u1) = if g < 0 {
        (
            -g,
            -b1,
            u1.invert()
                .ok_or_else(|| RootsError::ExactnessLoss("zero unit".into()))?,
        )
    } else {
        (g, b1, u1)
    };
    let (h_exp, v) = if h_exp < 0 {
        (
            -h_exp,
            v.invert()
                .ok_or_else(|| RootsError::ExactnessLoss("zero unit".into()))?,
        )
    } else {
        (h_exp, v)
    };

    let rho_candidates = v.nth_roots(h_exp as u32);
    if rho_candidates.is_empty() {
        return Err(RootsError::ExactnessLoss(format!(
            "no representable {h_exp}-th root of {v}"
        )));
    }
    let mut out: Vec<(ExactScalar, ExactScalar)> = vec![];
    for rho in rho_candidates {
        let rhs = u1.mul(
            &rho.pow_int(-b1)
                .ok_or_else(|| RootsError::ExactnessLoss("zero twist".into()))?,
        );
        let sigmas = rhs.nth_roots(g as u32);
        if sigmas.is_empty() {
            return Err(RootsError::ExactnessLoss(format!(
                "no representable {g}-th root of {rhs}"
            )));
        }
        for sigma in sigmas {
            if !out.iter().any(|(s, r)| s == &sigma && r == &rho) {
                out.push((sigma, rho.clone()));
            }
        }
    }
    Ok(out)
}

// ---------------------------------------------------------------------------
// numeric root search by coefficient matching
// ---------------------------------------------------------------------------

/// Ordered factorizations of `e` into integer parts >= 2.
pub fn ordered_factorizations(e: u64) -> Vec<Vec<u32>> {
    fn recurse(e: u64, acc: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if e == 1 {
            if !acc.is_empty() {
                out.push(acc.clone());
            }
            return;
        }
        for part in 2..=e {
            if e.is_multiple_of(part) {
                acc.push(part as u32);
                recurse(e / part, acc, out);
                acc.pop();
            }
        }
    }
    let mut out = vec![];
    recurse(e, &mut vec![], &mut out);
    out
}

/// The ansatz `diag(σ, ρ) ∘ K_1 ∘ … ∘ K_k` with `K_i = (w, p_i(w) - a_i z)`
/// and `p_i` monic of the shape degrees. Unknown layout:
/// `[σ, ρ, a_1, c_{1,0..d_1-1}, a_2, …]` with `K_1` outermost.
struct Ansatz {
    shape: Vec<u32>,
}

impl Ansatz {
    fn unknowns(&self) -> usize {
        2 + self.shape.iter().map(|&d| d as usize + 1).sum::<usize>()
    }

    fn build_approx(&self, x: &[Complex64]) -> PolyMap2<ApproxScalar> {
        let mut acc = PolyMap2::<ApproxScalar>::identity();
        let mut idx = 2;
        for &d in &self.shape {
            let a = ApproxScalar(x[idx]);
            let mut coeffs: Vec<ApproxScalar> = (0..d as usize)
                .map(|j| ApproxScalar(x[idx + 1 + j]))
                .collect();
            coeffs.push(ApproxScalar::one()); // monic
            idx += d as usize + 1;
            let p = UniPoly::new(coeffs, 'w');
            let factor = PolyMap2::new(
                BiPoly::var_w(),
                p.to_bipoly(Axis::W).sub(&BiPoly::monomial(a, 1, 0)),
            );
            // factors listed outermost-first: fold as acc = acc ∘ factor
            acc = if acc.is_identity() {
                factor
            } else {
                acc.compose(&factor).expect("shape degrees bounded")
            };
        }
        let diag = PolyMap2::new(
            BiPoly::monomial(ApproxScalar(x[0]), 1, 0),
            BiPoly::monomial(ApproxScalar(x[1]), 0, 1),
        );
        diag.compose(&acc).expect("degree-1 outer map")
    }

    fn build_exact(
        &self,
        x: &[ExactScalar],
    ) -> Option<(PolyMap2<ExactScalar>, HenonComposition<ExactScalar>)> {
        let sigma = &x[0];
        let rho = &x[1];
        if sigma.is_zero() || rho.is_zero() {
            return None;
        }
        let mut factors = vec![];
        let mut idx = 2;
        for &d in &self.shape {
            let a = x[idx].clone();
            let mut coeffs: Vec<ExactScalar> = x[idx + 1..idx + 1 + d as usize].to_vec();
            coeffs.push(ExactScalar::one());
            idx += d as usize + 1;
            let p = UniPoly::new(coeffs, 'w');
            factors.push(HenonFactor::new(p, a).ok()?);
        }
        let comp = HenonComposition::new(factors).ok()?;
        let map = diagonal_map(sigma, rho)
            .compose(&comp.as_map().ok()?)
            .ok()?;
        Some((map, comp))
    }
}

/// Residual of the coefficient-matching system over a fixed support.
fn residual(
    ansatz: &Ansatz,
    x: &[Complex64],
    n: u32,
    target: &PolyMap2<ApproxScalar>,
    support: &[(usize, u32, u32)],
) -> Option<Vec<Complex64>> {
    let m = ansatz.build_approx(x);
    let power = m.iterate(n).ok()?;
    let comps = [&power.first, &power.second];
    let targets = [&target.first, &target.second];
    let mut out = Vec::with_capacity(support.len());
    for &(c, i, j) in support {
        let v = comps[c].coeff(i, j).0 - targets[c].coeff(i, j).0;
        if !v.re.is_finite() || !v.im.is_finite() {
            return None;
        }
        out.push(v);
    }
    Some(out)
}

fn sup_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm()).fold(0.0, f64::max)
}

/// Damped Gauss-Newton with a finite-difference Jacobian on the holomorphic
/// residual.
fn newton_solve(
    ansatz: &Ansatz,
    start: Vec<Complex64>,
    n: u32,
    target: &PolyMap2<ApproxScalar>,
    support: &[(usize, u32, u32)],
    tol: f64,
    max_iters: u32,
) -> Option<Vec<Complex64>> {
    let mut x = start;
    let mut r = residual(ansatz, &x, n, target, support)?;
    for _ in 0..max_iters {
        let rnorm = sup_norm(&r);
        if rnorm < tol {
            return Some(x);
        }
        let ncols = x.len();
        let nrows = r.len();
        let mut jac = vec![vec![Complex64::new(0.0, 0.0); ncols]; nrows];
        for j in 0..ncols {
            let h = 1e-7 * (1.0 + x[j].norm());
            let mut xh = x.clone();
            xh[j] += Complex64::new(h, 0.0);
            let rh = residual(ansatz, &xh, n, target, support)?;
            for i in 0..nrows {
                jac[i][j] = (rh[i] - r[i]) / h;
            }
        }
        // normal equations JᴴJ δ = Jᴴ r
        let mut ata = vec![vec![Complex64::new(0.0, 0.0); ncols]; ncols];
        let mut atb = vec![Complex64::new(0.0, 0.0); ncols];
        for i in 0..ncols {
            for j in 0..ncols {
                let mut s = Complex64::new(0.0, 0.0);
                for row in &jac {
                    s += row[i].conj() * row[j];
                }
                ata[i][j] = s;
            }
            let mut s = Complex64::new(0.0, 0.0);
            for (row, rv) in jac.iter().zip(r.iter()) {
                s += row[i].conj() * rv;
            }
            atb[i] = s;
        }
        let delta = solve_dense(&mut ata, &mut atb)?;
        let mut step = 1.0;
        let mut accepted = false;
        for _ in 0..30 {
            let xt: Vec<Complex64> = x
                .iter()
                .zip(delta.iter())
                .map(|(xi, di)| xi - di * step)
                .collect();
            if let Some(rt) = residual(ansatz, &xt, n, target, support) {
                if sup_norm(&rt) < rnorm * (1.0 - 1e-4 * step) {
                    x = xt;
                    r = rt;
                    accepted = true;
                    break;
                }
            }
            step *= 0.5;
        }
        if !accepted {
            return None;
        }
    }
    if sup_norm(&r) < tol {
        Some(x)
    } else {
        None
    }
}

/// Gaussian elimination with partial pivoting over the complex numbers.
#[allow(clippy::needless_range_loop)]
fn solve_dense(a: &mut [Vec<Complex64>], b: &mut [Complex64]) -> Option<Vec<Complex64>> {
    let n = b.len();
    for col in 0..n {
        let mut pivot = col;
        let mut best = a[col][col].norm();
        for row in col + 1..n {
            let mag = a[row][col].norm();
            if mag > best {
                best = mag;
                pivot = row;
            }
        }
        if best < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..n {
            let factor = a[row][col] / a[col][col];
            for k in col..n {
                let t = a[col][k] * factor;
                a[row][k] -= t;
            }
            let t = b[col] * factor;
            b[row] -= t;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for row in (0..n).rev() {
        let mut s = b[row];
        for k in row + 1..n {
            s -= a[row][k] * x[k];
        }
        x[row] = s / a[row][row];
    }
    Some(x)
}

/// Numeric root search by coefficient matching: for every ordered shape of
/// `d^{1/n}`, run damped Newton from random starts, snap converged solutions
/// into the exact field, and keep verified candidates only. An empty result
/// means the search found nothing, not a proof of absence.
pub fn find_roots(
    h: &HenonComposition<ExactScalar>,
    n: u32,
    cfg: &RootSearchConfig,
) -> Result<Vec<RootCandidate>, RootsError> {
    let d = h.degree();
    if !possible_root_orders(h).contains(&n) {
        return Err(RootsError::OrderNotAdmissible {
            order: n,
            degree: d,
        });
    }
    let e = integer_nth_root(d, n).expect("admissible order");
    let target_exact = h.as_map()?;
    let target = target_exact.to_approx();

    // fixed residual support: all exponent pairs up to the total degree
    let mut support = vec![];
    for comp in 0..2usize {
        for i in 0..=(d as u32) {
            for j in 0..=(d as u32 - i) {
                support.push((comp, i, j));
            }
        }
    }

    let mut rng = StdRng::seed_from_u64(cfg.seed);
    let mut candidates: Vec<RootCandidate> = vec![];

    for shape in ordered_factorizations(e) {
        let ansatz = Ansatz {
            shape: shape.clone(),
        };
        let nu = ansatz.unknowns();
        for _ in 0..cfg.newton_starts {
            let start: Vec<Complex64> = (0..nu)
                .map(|_| {
                    let radius = 0.2 + 1.3 * rng.random::<f64>();
                    let theta = rng.random::<f64>() * std::f64::consts::TAU;
                    Complex64::from_polar(radius, theta)
                })
                .collect();
            let Some(solution) = newton_solve(
                &ansatz,
                start,
                n,
                &target,
                &support,
                cfg.newton_tol,
                cfg.max_newton_iters,
            ) else {
                continue;
            };

            // exact snapping and verification first
            let snapped: Option<Vec<ExactScalar>> = solution
                .iter()
                .map(|c| snap_to_exact(ApproxScalar(*c), cfg.snap_conductor, cfg.snap_tol).ok())
                .collect();
            if let Some((map, _)) = snapped.and_then(|xs| ansatz.build_exact(&xs)) {
                if map.iterate(n).map(|p| p == target_exact).unwrap_or(false) {
                    push_candidate(
                        &mut candidates,
                        RootCandidate {
                            map: RootMap::Exact(map),
                            order: n,
                            shape: shape.clone(),
                            status: RootStatus::VerifiedExact,
                            residual: 0.0,
                            twist: None,
                        },
                    );
                    continue;
                }
            }

            // numerically verified fallback, flagged by status
            let approx_map = ansatz.build_approx(&solution);
            if let Ok(power) = approx_map.iterate(n) {
                let dist = power
                    .first
                    .max_coeff_distance(&target.first)
                    .max(power.second.max_coeff_distance(&target.second));
                if dist < 1e-8 {
                    push_candidate(
                        &mut candidates,
                        RootCandidate {
                            map: RootMap::Numeric(approx_map),
                            order: n,
                            shape: shape.clone(),
                            status: RootStatus::VerifiedNumeric,
                            residual: dist,
                            twist: None,
                        },
                    );
                }
            }
        }
    }

    sort_candidates(&mut candidates);
    Ok(candidates)
}

/// Deduplicate by coefficientwise distance; exact candidates displace
/// numeric duplicates.
fn push_candidate(candidates: &mut Vec<RootCandidate>, new: RootCandidate) {
    const DEDUP_TOL: f64 = 1e-8;
    let new_approx = new.map.to_approx();
    for existing in candidates.iter_mut() {
        let ex_approx = existing.map.to_approx();
        let dist = ex_approx
            .first
            .max_coeff_distance(&new_approx.first)
            .max(ex_approx.second.max_coeff_distance(&new_approx.second));
        if dist < DEDUP_TOL {
            if existing.status == RootStatus::VerifiedNumeric
                && new.status == RootStatus::VerifiedExact
            {
                *existing = new;
            }
            return;
        }
    }
    candidates.push(new);
}

/// Stable presentation order, keyed by coefficient embeddings.
fn sort_candidates(candidates: &mut [RootCandidate]) {
    candidates.sort_by(|a, b| {
        candidate_key(a)
            .partial_cmp(&candidate_key(b))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
}

fn candidate_key(c: &RootCandidate) -> Vec<(u32, u32, f64, f64)> {
    let m = c.map.to_approx();
    let mut key = vec![];
    for p in [&m.first, &m.second] {
        for ((i, j), v) in p.terms() {
            let e = v.embed();
            key.push((
                *i,
                *j,
                (e.re * 1e9).round() / 1e9,
                (e.im * 1e9).round() / 1e9,
            ));
        }
    }
    key
}

#[cfg(test)]
mod tests {
    use super::*;

    type Q = ExactScalar;

    fn int(n: i64) -> Q {
        Q::from_int(n)
    }

    /// F = (w, z + w²): the square-root generator of the degree-4 example.
    fn map_f() -> PolyMap2<Q> {
        PolyMap2::new(
            BiPoly::var_w(),
            BiPoly::from_terms([((1, 0), int(1)), ((0, 2), int(1))]),
        )
    }

    /// H = F² as a Hénon composition: two factors (w, w² + z), a = -1.
    fn composition_h() -> HenonComposition<Q> {
        let factor =
            HenonFactor::new(UniPoly::new(vec![int(0), int(0), int(1)], 'w'), int(-1)).unwrap();
        HenonComposition::new(vec![factor.clone(), factor]).unwrap()
    }

    #[test]
    fn composition_h_is_f_squared() {
        let f = map_f();
        let ff = f.compose(&f).unwrap();
        assert_eq!(composition_h().as_map().unwrap(), ff);
    }

    #[test]
    fn order_arithmetic_examples() {
        assert_eq!(root_orders_of_degree(4), vec![2]);
        assert_eq!(root_orders_of_degree(64), vec![2, 3, 6]);
        assert!(root_orders_of_degree(6).is_empty());
        assert!(root_orders_of_degree(2).is_empty());
    }

    #[test]
    fn order_arithmetic_matches_brute_force_sample() {
        // independent oracle: mark d = e^n for every base e
        for d in 2..2000u64 {
            let mut brute = vec![];
            for n in 2..=20u32 {
                for e in 2..=44u64 {
                    if checked_pow(e, n) == Some(d) {
                        brute.push(n);
                        break;
                    }
                }
            }
            assert_eq!(root_orders_of_degree(d), brute, "degree {d}");
        }
    }

    #[test]
    fn verify_root_examples() {
        let h = composition_h();
        let f = map_f();
        assert_eq!(
            verify_root(&f, 2, &h, 0.0).unwrap(),
            RootStatus::VerifiedExact
        );
        // degree arithmetic refutes order 3 instantly
        assert_eq!(verify_root(&f, 3, &h, 0.0).unwrap(), RootStatus::Refuted);

        // the twisted root F∘s with s = (ω²z, ωw)
        let w3 = Q::primitive_root(3);
        let s = diagonal_map(&w3.mul(&w3), &w3);
        let fs = f.compose(&s).unwrap();
        assert_eq!(
            verify_root(&fs, 2, &h, 0.0).unwrap(),
            RootStatus::VerifiedExact
        );
    }

    #[test]
    fn symmetry_roots_of_the_degree_four_example() {
        let h = composition_h();
        let f = map_f();
        let roots = symmetry_roots(&f, 2, &h).unwrap();
        assert_eq!(roots.len(), 3, "exactly three square roots");

        let w3 = Q::primitive_root(3);
        let w3sq = w3.mul(&w3);
        let expected_twists = [
            (Q::one(), Q::one()),
            (w3sq.clone(), w3.clone()),
            (w3.clone(), w3sq.clone()),
        ];
        for (sigma, rho) in &expected_twists {
            assert!(
                roots
                    .iter()
                    .any(|c| c.twist.as_ref() == Some(&(sigma.clone(), rho.clone()))),
                "missing twist ({sigma}, {rho})"
            );
        }
        for c in &roots {
            assert_eq!(c.status, RootStatus::VerifiedExact);
        }
    }

    #[test]
    fn symmetry_roots_trivial_at_order_one() {
        let factor =
            HenonFactor::new(UniPoly::new(vec![int(0), int(0), int(1)], 'w'), int(1)).unwrap();
        let h = HenonComposition::single(factor);
        let f = h.as_map().unwrap();
        let roots = symmetry_roots(&f, 1, &h).unwrap();
        assert_eq!(roots.len(), 1);
        let (s, r) = roots[0].twist.clone().unwrap();
        assert!(s.is_one() && r.is_one());
    }

    #[test]
    fn ordered_factorizations_enumerate() {
        assert_eq!(ordered_factorizations(2), vec![vec![2]]);
        let mut f8 = ordered_factorizations(8);
        f8.sort();
        assert_eq!(f8, vec![vec![2, 2, 2], vec![2, 4], vec![4, 2], vec![8]]);
    }

    #[test]
    fn find_roots_rejects_inadmissible_order() {
        let factor =
            HenonFactor::new(UniPoly::new(vec![int(0), int(0), int(1)], 'w'), int(1)).unwrap();
        let h = HenonComposition::single(factor); // degree 2
        let err = find_roots(&h, 2, &RootSearchConfig::default()).unwrap_err();
        assert!(matches!(err, RootsError::OrderNotAdmissible { .. }));
    }

    #[test]
    fn degree_nine_composition_has_four_square_roots() {
        // F = (w, z + w³): the squares of its diagonal twists with
        // ρ⁴ = 1, σ = ρ⁻¹ all reproduce F², and nothing else does
        let factor = HenonFactor::new(
            UniPoly::new(vec![int(0), int(0), int(0), int(1)], 'w'),
            int(-1),
        )
        .unwrap();
        let h = HenonComposition::new(vec![factor.clone(), factor]).unwrap();
        assert_eq!(h.degree(), 9);
        let f = PolyMap2::new(
            BiPoly::var_w(),
            BiPoly::from_terms([((1, 0), int(1)), ((0, 3), int(1))]),
        );
        assert_eq!(h.as_map().unwrap(), f.compose(&f).unwrap());

        let family = symmetry_roots(&f, 2, &h).unwrap();
        assert_eq!(family.len(), 4);
        let i = Q::i();
        for rho in [Q::one(), i.clone(), i.neg(), Q::from_int(-1)] {
            let sigma = rho.invert().unwrap();
            assert!(
                family
                    .iter()
                    .any(|c| c.twist.as_ref() == Some(&(sigma.clone(), rho.clone()))),
                "missing twist with rho = {rho}"
            );
        }

        let found = find_roots(&h, 2, &RootSearchConfig::default()).unwrap();
        assert_eq!(found.len(), 4, "the search must find all four");
        for c in &found {
            assert_eq!(c.status, RootStatus::VerifiedExact);
            assert_eq!(c.shape, vec![3]);
        }
        for c in &family {
            let m = c.map.exact().unwrap();
            assert!(found
                .iter()
                .any(|d| d.map.exact().map(|x| x == m).unwrap_or(false)));
        }
    }

    #[test]
    fn find_roots_refinds_a_known_cube_root() {
        // h = G³ for a known degree-2 composition G; the search must find G
        let g_factor =
            HenonFactor::new(UniPoly::new(vec![int(1), int(0), int(1)], 'w'), int(2)).unwrap();
        let g = HenonComposition::single(g_factor);
        let h = g.power(3).unwrap(); // degree 8
        let g_map = g.as_map().unwrap();
        let cfg = RootSearchConfig {
            newton_starts: 80,
            ..Default::default()
        };
        let found = find_roots(&h, 3, &cfg).unwrap();
        assert!(
            found
                .iter()
                .any(|c| c.map.exact().map(|m| *m == g_map).unwrap_or(false)),
            "the generating cube root was not re-found"
        );
        for c in &found {
            assert_eq!(c.status, RootStatus::VerifiedExact);
        }
    }

    #[test]
    fn find_roots_recovers_the_three_square_roots() {
        let h = composition_h();
        let cfg = RootSearchConfig {
            newton_starts: 60,
            ..Default::default()
        };
        let found = find_roots(&h, 2, &cfg).unwrap();
        assert_eq!(found.len(), 3, "exactly three roots");
        for c in &found {
            assert_eq!(c.status, RootStatus::VerifiedExact);
        }
        // cross-check against the symmetry family
        let family = symmetry_roots(&map_f(), 2, &h).unwrap();
        for c in &family {
            let target = c.map.exact().unwrap();
            assert!(
                found
                    .iter()
                    .any(|f| f.map.exact().map(|m| m == target).unwrap_or(false)),
                "family member not found by the search"
            );
        }
    }
}
