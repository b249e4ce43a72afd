//! Roots of elementary maps that are not time-1 flow maps.
//!
//! These maps have the shape `F(z,w) = (β^μ(z + w^μ q(w^r)), βw)` with `β` a
//! primitive `r`-th root of unity and `q` monic of degree `k ≥ 1`. Dividing
//! the polynomial part by `lr+1` produces an `(lr+1)`-st root; a twisted-sum
//! identity is a necessary condition on triangular roots; and a cohomological
//! equation conjugates eligible triangular maps back to polynomial roots.
//! Everything here works in the exact regime.

use crate::poly::{Axis, BiPoly, PolyError, PolyMap2, UniPoly};
use crate::scalar::{ExactScalar, Scalar};

type Q = ExactScalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ElemError {
    #[error("beta must have exact multiplicative order {expected}, found {found:?}")]
    BetaOrder { expected: u32, found: Option<u32> },
    #[error("q must be monic of degree at least 1")]
    BadQ,
    #[error("scaling parameters must be nonzero")]
    ZeroParameter,
    #[error("resonance at exponent {exponent}: a^{exponent} = a^mu, the cohomological equation has no solution there")]
    Resonance { exponent: usize },
    #[error("constraint violation: {0}")]
    ConstraintViolation(String),
    #[error("exact verification failed: {0}")]
    VerificationFailed(String),
    #[error("map is not of the triangular form (c*z + h(w), a*w + b)")]
    NotTriangular,
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// An elementary map that is not the time-1 map of any flow:
/// `F(z,w) = (β^μ(z + w^μ q(w^r)), βw)`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementaryNonFlow {
    r: u32,
    mu: u32,
    q: UniPoly<Q>,
    beta: Q,
}

impl ElementaryNonFlow {
    pub fn new(r: u32, mu: u32, q: UniPoly<Q>, beta: Q) -> Result<Self, ElemError> {
        if q.degree().unwrap_or(0) < 1 || !q.is_monic() {
            return Err(ElemError::BadQ);
        }
        let order = beta.order();
        if order != Some(r) {
            return Err(ElemError::BetaOrder {
                expected: r,
                found: order,
            });
        }
        Ok(ElementaryNonFlow { r, mu, q, beta })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn mu(&self) -> u32 {
        self.mu
    }

    pub fn q(&self) -> &UniPoly<Q> {
        &self.q
    }

    pub fn beta(&self) -> &Q {
        &self.beta
    }

    pub fn k(&self) -> u32 {
        self.q.degree().unwrap_or(0) as u32
    }

    /// The polynomial part `w^μ q(w^r)`.
    pub fn polynomial_part(&self) -> UniPoly<Q> {
        shift_up(&self.q.stretch(self.r as usize), self.mu as usize)
    }

    pub fn as_map(&self) -> PolyMap2<Q> {
        let beta_mu = self.beta.pow_int(self.mu as i64).expect("beta nonzero");
        let first = self
            .polynomial_part()
            .scale(&beta_mu)
            .to_bipoly(Axis::W)
            .add(&BiPoly::monomial(beta_mu, 1, 0));
        let second = BiPoly::monomial(self.beta.clone(), 0, 1);
        PolyMap2::new(first, second)
    }

    /// The same map as triangular data.
    pub fn as_triangular(&self) -> TriangularMap {
        let beta_mu = self.beta.pow_int(self.mu as i64).expect("beta nonzero");
        TriangularMap {
            c: beta_mu.clone(),
            h: self.polynomial_part().scale(&beta_mu),
            a: self.beta.clone(),
            b: Q::zero(),
        }
    }
}

impl std::fmt::Display for ElementaryNonFlow {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "elem_nonflow(r={}, mu={}, q={}, beta={})",
            self.r, self.mu, self.q, self.beta
        )
    }
}

/// A triangular map `φ(z,w) = (c·z + h(w), a·w + b)` with `c, a ≠ 0`.
/// The translation `b` must vanish for root analysis; it is carried so the
/// rejection path can name it.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularMap {
    pub c: Q,
    pub h: UniPoly<Q>,
    pub a: Q,
    pub b: Q,
}

impl TriangularMap {
    pub fn new(c: Q, h: UniPoly<Q>, a: Q) -> Result<Self, ElemError> {
        if c.is_zero() || a.is_zero() {
            return Err(ElemError::ZeroParameter);
        }
        Ok(TriangularMap {
            c,
            h,
            a,
            b: Q::zero(),
        })
    }

    pub fn with_translation(c: Q, h: UniPoly<Q>, a: Q, b: Q) -> Result<Self, ElemError> {
        if c.is_zero() || a.is_zero() {
            return Err(ElemError::ZeroParameter);
        }
        Ok(TriangularMap { c, h, a, b })
    }

    pub fn as_map(&self) -> PolyMap2<Q> {
        let first = self
            .h
            .to_bipoly(Axis::W)
            .add(&BiPoly::monomial(self.c.clone(), 1, 0));
        let second = BiPoly::from_terms([((0, 1), self.a.clone()), ((0, 0), self.b.clone())]);
        PolyMap2::new(first, second)
    }

    /// Extract triangular data from a plane map of the right shape.
    pub fn from_map(m: &PolyMap2<Q>) -> Result<Self, ElemError> {
        if m.second.degree_z().unwrap_or(0) > 0 || m.second.degree_w().unwrap_or(0) > 1 {
            return Err(ElemError::NotTriangular);
        }
        let a = m.second.coeff(0, 1);
        let b = m.second.coeff(0, 0);
        let mut h_coeffs: Vec<Q> = vec![];
        let mut c = Q::zero();
        for ((i, j), v) in m.first.terms() {
            match (*i, *j) {
                (1, 0) => c = v.clone(),
                (0, j) => {
                    let j = j as usize;
                    if h_coeffs.len() <= j {
                        h_coeffs.resize(j + 1, Q::zero());
                    }
                    h_coeffs[j] = v.clone();
                }
                _ => return Err(ElemError::NotTriangular),
            }
        }
        if a.is_zero() || c.is_zero() {
            return Err(ElemError::NotTriangular);
        }
        Ok(TriangularMap {
            c,
            h: UniPoly::new(h_coeffs, 'w'),
            a,
            b,
        })
    }
}

fn shift_up(p: &UniPoly<Q>, by: usize) -> UniPoly<Q> {
    if p.is_zero() {
        return p.clone();
    }
    let mut coeffs = vec![Q::zero(); by];
    coeffs.extend(p.coeffs().iter().cloned());
    UniPoly::new(coeffs, p.var())
}

/// The `(lr+1)`-st root of `F` obtained by dividing the polynomial part by
/// `lr+1`. The construction is verified by exact composition before return.
pub fn construct_root(f: &ElementaryNonFlow, l: u32) -> Result<PolyMap2<Q>, ElemError> {
    assert!(l >= 1, "l must be at least 1");
    let m = l * f.r + 1;
    let divisor = Q::from_int(m as i64)
        .invert()
        .expect("lr+1 is a positive integer");
    let beta_mu = f.beta.pow_int(f.mu as i64).expect("beta nonzero");
    let first = f
        .polynomial_part()
        .scale(&divisor)
        .scale(&beta_mu)
        .to_bipoly(Axis::W)
        .add(&BiPoly::monomial(beta_mu, 1, 0));
    let root = PolyMap2::new(first, BiPoly::monomial(f.beta.clone(), 0, 1));

    let power = root.iterate(m)?;
    if power != f.as_map() {
        return Err(ElemError::VerificationFailed(format!(
            "candidate {m}-th root failed exact composition"
        )));
    }
    Ok(root)
}

/// The explicit square-root family of `F(z,w) = (-(z + w(w⁴+1)), -w)`:
/// `φ(z,w) = (i(z + w(w⁴+1)/2 + w³·k(w⁴)), iw)` squares to `F` for every
/// polynomial truncation of the entire function `k`. The cancellation is
/// termwise, so exactness is independent of the truncation degree.
pub fn nonpolynomial_root_example(
    k_trunc: &UniPoly<Q>,
) -> Result<(PolyMap2<Q>, PolyMap2<Q>), ElemError> {
    let i = Q::i();
    // F = (-(z + w⁵ + w), -w)
    let p = UniPoly::new(
        vec![
            Q::zero(),
            Q::from_int(-1),
            Q::zero(),
            Q::zero(),
            Q::zero(),
            Q::from_int(-1),
        ],
        'w',
    );
    let target = PolyMap2::new(
        p.to_bipoly(Axis::W)
            .add(&BiPoly::monomial(Q::from_int(-1), 1, 0)),
        BiPoly::monomial(Q::from_int(-1), 0, 1),
    );

    // φ first coordinate: i·z + i·(w⁵ + w)/2 + i·w³·k(w⁴)
    let half = Q::from_ratio(1, 2);
    let poly_part = UniPoly::new(
        vec![
            Q::zero(),
            half.clone(),
            Q::zero(),
            Q::zero(),
            Q::zero(),
            half,
        ],
        'w',
    );
    let k_part = shift_up(&k_trunc.stretch(4), 3);
    let first = poly_part
        .add(&k_part)
        .scale(&i)
        .to_bipoly(Axis::W)
        .add(&BiPoly::monomial(i.clone(), 1, 0));
    let phi = PolyMap2::new(first, BiPoly::monomial(i, 0, 1));

    let squared = phi.iterate(2)?;
    if squared != target {
        return Err(ElemError::VerificationFailed(
            "square of the explicit root did not reproduce the target".into(),
        ));
    }
    Ok((phi, target))
}

/// Evaluate the twisted sum `Σ_{j=0}^{rn-1} (a^μ)^{-j} h(a^j w)` and compare
/// it exactly with `a^μ · r · w^μ q(w^r)`.
///
/// This is a necessary identity for `φ^n = F` in triangular form. It is
/// blind to coboundary perturbations `f(aw) - a^μ f(w)` and sensitive to
/// resonant ones.
pub fn twisted_sum_check(phi: &TriangularMap, f: &ElementaryNonFlow, n: u32) -> bool {
    let a = &phi.a;
    let mu = f.mu as i64;
    let a_mu_inv = match a.pow_int(-mu) {
        Some(v) => v,
        None => return false,
    };
    let mut lhs = UniPoly::zero('w');
    let mut a_pow = Q::one(); // a^j
    let mut weight = Q::one(); // (a^μ)^{-j}
    for _ in 0..(f.r * n) {
        lhs = lhs.add(&phi.h.scale_argument(&a_pow).scale(&weight));
        a_pow = a_pow.mul(a);
        weight = weight.mul(&a_mu_inv);
    }
    let a_mu = a.pow_int(mu).expect("a nonzero");
    let rhs = f
        .polynomial_part()
        .scale(&Q::from_int(f.r as i64))
        .scale(&a_mu);
    lhs == rhs
}

/// Split `h` at the exponent threshold `μ + kr`: `h1` keeps the exponents of
/// the model root (at most the threshold), `h2` the strictly higher ones.
pub fn split_h(phi: &TriangularMap, f: &ElementaryNonFlow) -> (UniPoly<Q>, UniPoly<Q>) {
    let threshold = (f.mu + f.k() * f.r) as usize;
    let mut low = vec![];
    let mut high = vec![];
    for (t, c) in phi.h.coeffs().iter().enumerate() {
        if t <= threshold {
            low.resize(t + 1, Q::zero());
            low[t] = c.clone();
        } else {
            high.resize(t + 1, Q::zero());
            high[t] = c.clone();
        }
    }
    (UniPoly::new(low, 'w'), UniPoly::new(high, 'w'))
}

/// Solve `f(aw) - a^μ f(w) = h2(w)` coefficientwise: `f_t = h2_t/(a^t - a^μ)`.
/// Resonant exponents (`a^t = a^μ`) are an error naming the exponent; the
/// returned solution carries no kernel monomials.
pub fn solve_cohomological(h2: &UniPoly<Q>, a: &Q, mu: u32) -> Result<UniPoly<Q>, ElemError> {
    let a_mu = a.pow_int(mu as i64).expect("a nonzero");
    let mut coeffs = vec![Q::zero(); h2.coeffs().len()];
    for (t, c) in h2.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let denom = a.pow_int(t as i64).expect("a nonzero").sub(&a_mu);
        match denom.invert() {
            Some(inv) => coeffs[t] = c.mul(&inv),
            None => return Err(ElemError::Resonance { exponent: t }),
        }
    }
    Ok(UniPoly::new(coeffs, 'w'))
}

/// Conjugate a triangular map to a polynomial root of `F`: check the
/// structural constraints, split off the high part of `h`, solve the
/// cohomological equation for `f`, and return `ψ = (z + f(w), w)` together
/// with `ψ⁻¹ ∘ φ ∘ ψ`. The identity `ψ⁻¹ ∘ φ^n ∘ ψ = F` is verified exactly
/// before returning.
pub fn conjugate_to_polynomial(
    phi: &TriangularMap,
    f: &ElementaryNonFlow,
    n: u32,
) -> Result<(PolyMap2<Q>, PolyMap2<Q>), ElemError> {
    if !phi.b.is_zero() {
        return Err(ElemError::ConstraintViolation(
            "translation in the second coordinate: b(a^n - 1)/(a - 1) = 0 forces b = 0".into(),
        ));
    }
    let a_mu = phi.a.pow_int(f.mu as i64).expect("a nonzero");
    if phi.c != a_mu {
        return Err(ElemError::ConstraintViolation(format!(
            "c = {} must equal a^mu = {}",
            phi.c, a_mu
        )));
    }
    let a_n = phi.a.pow_int(n as i64).expect("a nonzero");
    if a_n != *f.beta() {
        return Err(ElemError::ConstraintViolation(format!(
            "a^n = {} must equal beta = {}",
            a_n,
            f.beta()
        )));
    }

    let (_, h2) = split_h(phi, f);
    let solution = solve_cohomological(&h2, &phi.a, f.mu)?;

    let psi = PolyMap2::new(
        solution.to_bipoly(Axis::W).add(&BiPoly::var_z()),
        BiPoly::var_w(),
    );
    let psi_inv = PolyMap2::new(
        BiPoly::var_z().sub(&solution.to_bipoly(Axis::W)),
        BiPoly::var_w(),
    );
    let conjugated = psi_inv.compose(&phi.as_map())?.compose(&psi)?;

    let phi_n = phi.as_map().iterate(n)?;
    let full = psi_inv.compose(&phi_n)?.compose(&psi)?;
    if full != f.as_map() {
        return Err(ElemError::VerificationFailed(
            "psi^-1 . phi^n . psi did not reproduce the target".into(),
        ));
    }
    Ok((psi, conjugated))
}

/// A random non-flow elementary map with small-height exact coefficients,
/// for randomized verification sweeps.
pub fn random_nonflow<R: rand::Rng>(
    rng: &mut R,
    max_r: u32,
    max_mu: u32,
    max_k: u32,
) -> ElementaryNonFlow {
    let r = rng.random_range(1..=max_r);
    let mu = rng.random_range(0..=max_mu);
    let k = rng.random_range(1..=max_k);
    let mut coeffs: Vec<Q> = (0..k)
        .map(|_| {
            let num = rng.random_range(-2..=2i64);
            let den = rng.random_range(1..=2i64);
            Q::from_ratio(num, den)
        })
        .collect();
    coeffs.push(Q::one()); // monic
    let q = UniPoly::new(coeffs, 't');
    // a primitive r-th root: ζ_r^j with gcd(j, r) = 1
    let beta = loop {
        let j = rng.random_range(1..=r);
        if num_integer::Integer::gcd(&j, &r) == 1 {
            break Q::primitive_root(r).pow_int(j as i64).unwrap();
        }
    };
    ElementaryNonFlow::new(r, mu, q, beta).expect("construction satisfies the invariants")
}
