//! Polynomial arithmetic: dense univariate polynomials, sparse bivariate
//! polynomials, and polynomial maps of the plane.
//!
//! Univariate polynomials are dense because the Hénon data `p`, `q`, `h` are;
//! bivariate polynomials are sparse maps from exponent pairs because n-fold
//! compositions are sparse relative to their total degree.

use std::collections::BTreeMap;
use std::fmt;

use crate::scalar::{ApproxScalar, Scalar};

/// Hard ceiling on total degree produced by composition, to keep CLI misuse
/// from going exponential.
pub const DEFAULT_DEGREE_CAP: u32 = 4096;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PolyError {
    #[error("composition degree {degree} exceeds cap {cap}")]
    DegreeCap { degree: u64, cap: u32 },
    #[error("floating overflow during polynomial operation")]
    Overflow,
}

/// Display variable for a univariate polynomial. Arithmetic ignores the tag;
/// it only matters for parsing and printing.
pub type Var = char;

/// Dense univariate polynomial, coefficients indexed by exponent, trailing
/// zeros trimmed.
#[derive(Debug, Clone)]
pub struct UniPoly<S: Scalar> {
    coeffs: Vec<S>,
    var: Var,
}

impl<S: Scalar> UniPoly<S> {
    pub fn new(mut coeffs: Vec<S>, var: Var) -> Self {
        while coeffs.last().map(|c| c.is_zero()).unwrap_or(false) {
            coeffs.pop();
        }
        UniPoly { coeffs, var }
    }

    pub fn zero(var: Var) -> Self {
        UniPoly {
            coeffs: vec![],
            var,
        }
    }

    pub fn constant(c: S, var: Var) -> Self {
        Self::new(vec![c], var)
    }

    pub fn variable(var: Var) -> Self {
        Self::new(vec![S::zero(), S::one()], var)
    }

    /// The monomial `c·x^k`.
    pub fn monomial(c: S, k: usize, var: Var) -> Self {
        let mut coeffs = vec![S::zero(); k + 1];
        coeffs[k] = c;
        Self::new(coeffs, var)
    }

    pub fn var(&self) -> Var {
        self.var
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> S {
        self.coeffs.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&S> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading()
            .map(|c| c.approx_eq(&S::one(), 1e-12))
            .unwrap_or(false)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).add(&other.coeff(k))).collect();
        Self::new(coeffs, self.var)
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k).sub(&other.coeff(k))).collect();
        Self::new(coeffs, self.var)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.neg()).collect(), self.var)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.var);
        }
        let mut out = vec![S::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(out, self.var)
    }

    pub fn scale(&self, c: &S) -> Self {
        Self::new(self.coeffs.iter().map(|x| x.mul(c)).collect(), self.var)
    }

    pub fn eval(&self, x: &S) -> S {
        let mut acc = S::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Substitution `self(q(x))`.
    pub fn compose(&self, q: &Self) -> Self {
        let mut acc = Self::zero(q.var);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(q).add(&Self::constant(c.clone(), q.var));
        }
        acc
    }

    /// Substitute `x ↦ c·x`: coefficient `k` picks up `c^k`.
    pub fn scale_argument(&self, c: &S) -> Self {
        let mut power = S::one();
        let coeffs = self
            .coeffs
            .iter()
            .map(|a| {
                let out = a.mul(&power);
                power = power.mul(c);
                out
            })
            .collect();
        Self::new(coeffs, self.var)
    }

    /// Substitute `x ↦ x^r` (exponent stretch).
    pub fn stretch(&self, r: usize) -> Self {
        assert!(r >= 1);
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![S::zero(); (self.coeffs.len() - 1) * r + 1];
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                coeffs[k * r] = c.clone();
            }
        }
        Self::new(coeffs, self.var)
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> UniPoly<T> {
        UniPoly::new(self.coeffs.iter().map(f).collect(), self.var)
    }

    pub fn to_approx(&self) -> UniPoly<ApproxScalar> {
        self.map_scalars(|c| ApproxScalar(c.embed()))
    }

    /// View as a bivariate polynomial in the chosen axis.
    pub fn to_bipoly(&self, axis: Axis) -> BiPoly<S> {
        let mut out = BiPoly::zero();
        for (k, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let (i, j) = match axis {
                    Axis::Z => (k as u32, 0),
                    Axis::W => (0, k as u32),
                };
                out.add_term(i, j, c.clone());
            }
        }
        out
    }
}

impl<S: Scalar> PartialEq for UniPoly<S> {
    fn eq(&self, other: &Self) -> bool {
        // the variable tag is display metadata only
        self.coeffs == other.coeffs
    }
}

impl<S: Scalar> fmt::Display for UniPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            write_term(f, c, &mono_str(self.var, k), first)?;
            first = false;
        }
        Ok(())
    }
}

fn mono_str(var: Var, k: usize) -> String {
    match k {
        0 => String::new(),
        1 => var.to_string(),
        _ => format!("{var}^{k}"),
    }
}

/// Shared term renderer: `coeff*mono` with sign folding when the scalar
/// prints as a simple possibly-negative atom.
fn write_term<S: Scalar>(
    f: &mut fmt::Formatter<'_>,
    c: &S,
    mono: &str,
    first: bool,
) -> fmt::Result {
    let body = format!("{c}");
    let simple = !body.contains(" + ") && !body.contains(" - ");
    let (neg, mag) = if simple && body.starts_with('-') {
        (true, body[1..].to_string())
    } else {
        (false, body)
    };
    let sep = match (first, neg) {
        (true, false) => "",
        (true, true) => "-",
        (false, false) => " + ",
        (false, true) => " - ",
    };
    write!(f, "{sep}")?;
    let coeff_atom = if simple {
        mag.clone()
    } else {
        format!("({mag})")
    };
    if mono.is_empty() {
        write!(f, "{coeff_atom}")
    } else if mag == "1" && simple {
        write!(f, "{mono}")
    } else {
        write!(f, "{coeff_atom}*{mono}")
    }
}

/// Axis selector when lifting univariate data into the plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axis {
    Z,
    W,
}

/// Sparse bivariate polynomial: exponent pairs `(i, j)` of `z^i w^j` mapped
/// to nonzero coefficients.
#[derive(Debug, Clone, PartialEq)]
pub struct BiPoly<S: Scalar> {
    terms: BTreeMap<(u32, u32), S>,
}

impl<S: Scalar> BiPoly<S> {
    pub fn zero() -> Self {
        BiPoly {
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(0, 0, c);
        out
    }

    pub fn var_z() -> Self {
        Self::monomial(S::one(), 1, 0)
    }

    pub fn var_w() -> Self {
        Self::monomial(S::one(), 0, 1)
    }

    pub fn monomial(c: S, i: u32, j: u32) -> Self {
        let mut out = Self::zero();
        out.add_term(i, j, c);
        out
    }

    pub fn from_terms(list: impl IntoIterator<Item = ((u32, u32), S)>) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in list {
            out.add_term(i, j, c);
        }
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &S)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, i: u32, j: u32) -> S {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(S::zero)
    }

    pub(crate) fn add_term(&mut self, i: u32, j: u32, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&(i, j)) {
            Some(existing) => {
                let sum = existing.add(&c);
                if sum.is_zero() {
                    self.terms.remove(&(i, j));
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.terms.insert((i, j), c);
            }
        }
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|(i, j)| i + j).max()
    }

    pub fn degree_z(&self) -> Option<u32> {
        self.terms.keys().map(|(i, _)| *i).max()
    }

    pub fn degree_w(&self) -> Option<u32> {
        self.terms.keys().map(|(_, j)| *j).max()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|&(i, j)| i == 0 && j == 0)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(0, 0)
    }

    /// The top-degree homogeneous part.
    pub fn leading_form(&self) -> Vec<((u32, u32), S)> {
        match self.total_degree() {
            None => vec![],
            Some(d) => self
                .terms
                .iter()
                .filter(|((i, j), _)| i + j == d)
                .map(|(k, c)| (*k, c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((i, j), c) in &other.terms {
            out.add_term(*i, *j, c.neg());
        }
        out
    }

    pub fn neg(&self) -> Self {
        BiPoly {
            terms: self.terms.iter().map(|(k, c)| (*k, c.neg())).collect(),
        }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero();
        for ((i1, j1), c1) in &self.terms {
            for ((i2, j2), c2) in &other.terms {
                out.add_term(i1 + i2, j1 + j2, c1.mul(c2));
            }
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        for ((i, j), x) in &self.terms {
            out.add_term(*i, *j, x.mul(c));
        }
        out
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::constant(S::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    pub fn eval(&self, z: &S, w: &S) -> S {
        let zs = power_table(z, self.degree_z().unwrap_or(0));
        let ws = power_table(w, self.degree_w().unwrap_or(0));
        let mut acc = S::zero();
        for ((i, j), c) in &self.terms {
            acc = acc.add(&c.mul(&zs[*i as usize]).mul(&ws[*j as usize]));
        }
        acc
    }

    pub fn d_z(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *i > 0 {
                out.add_term(i - 1, *j, c.mul(&S::from_int(*i as i64)));
            }
        }
        out
    }

    pub fn d_w(&self) -> Self {
        let mut out = Self::zero();
        for ((i, j), c) in &self.terms {
            if *j > 0 {
                out.add_term(*i, j - 1, c.mul(&S::from_int(*j as i64)));
            }
        }
        out
    }

    /// Substitute polynomials for the variables: `self(a(z,w), b(z,w))`.
    pub fn substitute(&self, a: &Self, b: &Self) -> Self {
        let max_i = self.degree_z().unwrap_or(0) as usize;
        let max_j = self.degree_w().unwrap_or(0) as usize;
        let a_pows = poly_power_table(a, max_i);
        let b_pows = poly_power_table(b, max_j);
        let mut acc = Self::zero();
        for ((i, j), c) in &self.terms {
            let term = a_pows[*i as usize].mul(&b_pows[*j as usize]).scale(c);
            acc = acc.add(&term);
        }
        acc
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T) -> BiPoly<T> {
        let mut out = BiPoly::zero();
        for ((i, j), c) in &self.terms {
            out.add_term(*i, *j, f(c));
        }
        out
    }

    pub fn to_approx(&self) -> BiPoly<ApproxScalar> {
        self.map_scalars(|c| ApproxScalar(c.embed()))
    }

    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        let keys: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        keys.iter()
            .all(|&(i, j)| self.coeff(i, j).approx_eq(&other.coeff(i, j), tol))
    }

    pub fn all_finite(&self) -> bool {
        self.terms.values().all(|c| c.is_finite_value())
    }

    /// Largest coefficient distance against `other`, over the embeddings.
    pub fn max_coeff_distance(&self, other: &Self) -> f64 {
        let keys: std::collections::BTreeSet<_> = self
            .terms
            .keys()
            .chain(other.terms.keys())
            .cloned()
            .collect();
        keys.iter()
            .map(|&(i, j)| (self.coeff(i, j).embed() - other.coeff(i, j).embed()).norm())
            .fold(0.0, f64::max)
    }
}

fn power_table<S: Scalar>(x: &S, max: u32) -> Vec<S> {
    let mut out = Vec::with_capacity(max as usize + 1);
    out.push(S::one());
    for k in 1..=max as usize {
        let next = out[k - 1].mul(x);
        out.push(next);
    }
    out
}

fn poly_power_table<S: Scalar>(p: &BiPoly<S>, max: usize) -> Vec<BiPoly<S>> {
    let mut out = Vec::with_capacity(max + 1);
    out.push(BiPoly::constant(S::one()));
    for k in 1..=max {
        let next = out[k - 1].mul(p);
        out.push(next);
    }
    out
}

impl<S: Scalar> fmt::Display for BiPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        // highest total degree first, then z-degree
        let mut keys: Vec<(u32, u32)> = self.terms.keys().cloned().collect();
        keys.sort_by_key(|k| std::cmp::Reverse((k.0 + k.1, k.0)));
        let mut first = true;
        for (i, j) in keys {
            let c = &self.terms[&(i, j)];
            let mono = match (i, j) {
                (0, 0) => String::new(),
                (i, 0) => mono_str('z', i as usize),
                (0, j) => mono_str('w', j as usize),
                (i, j) => format!(
                    "{}*{}",
                    mono_str('z', i as usize),
                    mono_str('w', j as usize)
                ),
            };
            write_term(f, c, &mono, first)?;
            first = false;
        }
        Ok(())
    }
}

/// A polynomial map of the plane, `pt ↦ (first(pt), second(pt))`.
///
/// Nothing is assumed about invertibility; automorphy is checked where it is
/// needed.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMap2<S: Scalar> {
    pub first: BiPoly<S>,
    pub second: BiPoly<S>,
}

impl<S: Scalar> PolyMap2<S> {
    pub fn new(first: BiPoly<S>, second: BiPoly<S>) -> Self {
        PolyMap2 { first, second }
    }

    pub fn identity() -> Self {
        PolyMap2 {
            first: BiPoly::var_z(),
            second: BiPoly::var_w(),
        }
    }

    pub fn is_identity(&self) -> bool {
        self.first == BiPoly::var_z() && self.second == BiPoly::var_w()
    }

    /// The coordinate swap `(z,w) ↦ (w,z)`.
    pub fn swap() -> Self {
        PolyMap2 {
            first: BiPoly::var_w(),
            second: BiPoly::var_z(),
        }
    }

    pub fn eval(&self, pt: (&S, &S)) -> (S, S) {
        (self.first.eval(pt.0, pt.1), self.second.eval(pt.0, pt.1))
    }

    /// Largest total degree of the two components.
    pub fn total_degree(&self) -> Option<u32> {
        match (self.first.total_degree(), self.second.total_degree()) {
            (None, d) | (d, None) => d,
            (Some(a), Some(b)) => Some(a.max(b)),
        }
    }

    /// Composition `self ∘ inner`, with the default degree cap.
    pub fn compose(&self, inner: &Self) -> Result<Self, PolyError> {
        self.compose_with_cap(inner, DEFAULT_DEGREE_CAP)
    }

    pub fn compose_with_cap(&self, inner: &Self, cap: u32) -> Result<Self, PolyError> {
        let outer_deg = self.total_degree().unwrap_or(0) as u64;
        let inner_deg = inner.total_degree().unwrap_or(0) as u64;
        let bound = outer_deg * inner_deg.max(1);
        if bound > cap as u64 {
            return Err(PolyError::DegreeCap { degree: bound, cap });
        }
        let first = self.first.substitute(&inner.first, &inner.second);
        let second = self.second.substitute(&inner.first, &inner.second);
        let out = PolyMap2 { first, second };
        if !S::EXACT && !(out.first.all_finite() && out.second.all_finite()) {
            return Err(PolyError::Overflow);
        }
        Ok(out)
    }

    /// `n`-fold self-composition; `iterate(m, 0)` is the identity.
    pub fn iterate(&self, n: u32) -> Result<Self, PolyError> {
        self.iterate_with_cap(n, DEFAULT_DEGREE_CAP)
    }

    pub fn iterate_with_cap(&self, n: u32, cap: u32) -> Result<Self, PolyError> {
        // the cap is enforced per composition step: triangular maps iterate
        // without degree growth, so a deg^n precheck would be far too coarse
        let mut acc = Self::identity();
        for _ in 0..n {
            acc = self.compose_with_cap(&acc, cap)?;
        }
        Ok(acc)
    }

    /// Coefficientwise equality within `tol` (supports differing supports).
    pub fn approx_eq(&self, other: &Self, tol: f64) -> bool {
        self.first.approx_eq(&other.first, tol) && self.second.approx_eq(&other.second, tol)
    }

    /// Jacobian determinant as a bivariate polynomial.
    pub fn jacobian_det(&self) -> BiPoly<S> {
        let fz = self.first.d_z();
        let fw = self.first.d_w();
        let gz = self.second.d_z();
        let gw = self.second.d_w();
        fz.mul(&gw).sub(&fw.mul(&gz))
    }

    pub fn map_scalars<T: Scalar>(&self, f: impl Fn(&S) -> T + Copy) -> PolyMap2<T> {
        PolyMap2 {
            first: self.first.map_scalars(f),
            second: self.second.map_scalars(f),
        }
    }

    pub fn to_approx(&self) -> PolyMap2<ApproxScalar> {
        self.map_scalars(|c| ApproxScalar(c.embed()))
    }
}

impl<S: Scalar> fmt::Display for PolyMap2<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.first, self.second)
    }
}
