//! Exact cyclotomic-rational arithmetic.
//!
//! An [`ExactScalar`] is an element of the `N`-th cyclotomic field, stored as
//! rational coordinates over the power basis `1, ζ, …, ζ^{φ(N)-1}` reduced
//! modulo the `N`-th cyclotomic polynomial. Binary operations lift both sides
//! to the least common multiple of the conductors first, so values from
//! different fields mix freely.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::{BigInt, BigUint};
use num_complex::Complex64;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::Scalar;

/// Euler's totient.
pub fn euler_phi(n: u32) -> u32 {
    let mut result = n as u64;
    let mut m = n as u64;
    let mut p: u64 = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            while m.is_multiple_of(p) {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result as u32
}

fn cyclotomic_cache() -> &'static Mutex<HashMap<u32, Arc<Vec<BigInt>>>> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<Vec<BigInt>>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// The `n`-th cyclotomic polynomial, ascending integer coefficients, monic of
/// degree `φ(n)`. Computed as `(x^n - 1) / ∏_{d|n, d<n} Φ_d` and cached.
pub fn cyclotomic_polynomial(n: u32) -> Arc<Vec<BigInt>> {
    if let Some(hit) = cyclotomic_cache().lock().unwrap().get(&n) {
        return hit.clone();
    }
    let result = Arc::new(compute_cyclotomic(n));
    cyclotomic_cache().lock().unwrap().insert(n, result.clone());
    result
}

fn compute_cyclotomic(n: u32) -> Vec<BigInt> {
    assert!(n >= 1, "conductor must be positive");
    if n == 1 {
        return vec![BigInt::from(-1), BigInt::one()];
    }
    // x^n - 1
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n.is_multiple_of(d) {
            let phi_d = cyclotomic_polynomial(d);
            num = int_poly_exact_div(&num, &phi_d);
        }
    }
    num
}

/// Exact division of integer polynomials with monic divisor.
fn int_poly_exact_div(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    debug_assert!(den.last().map(|c| c.is_one()).unwrap_or(false));
    let mut rem: Vec<BigInt> = num.to_vec();
    let dn = den.len() - 1;
    let qn = rem.len() - 1 - dn;
    let mut quot = vec![BigInt::zero(); qn + 1];
    for k in (0..=qn).rev() {
        let c = rem[k + dn].clone();
        if !c.is_zero() {
            for (j, d) in den.iter().enumerate() {
                rem[k + j] -= &c * d;
            }
        }
        quot[k] = c;
    }
    debug_assert!(rem.iter().all(|c| c.is_zero()));
    quot
}

fn trim(v: &mut Vec<BigRational>) {
    while v.last().map(|c| c.is_zero()).unwrap_or(false) {
        v.pop();
    }
}

/// Remainder of `poly` modulo the monic modulus, then padded to `phi` entries.
fn reduce_mod(mut poly: Vec<BigRational>, modulus: &[BigInt], phi: usize) -> Vec<BigRational> {
    let dn = modulus.len() - 1;
    while poly.len() > dn {
        let top = poly.len() - 1;
        let c = poly[top].clone();
        if !c.is_zero() {
            let shift = top - dn;
            for (j, m) in modulus.iter().enumerate() {
                let t = &c * BigRational::from_integer(m.clone());
                poly[shift + j] -= t;
            }
        }
        poly.pop();
    }
    poly.resize(phi, BigRational::zero());
    poly
}

fn poly_divmod(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut rem = a.to_vec();
    trim(&mut rem);
    let mut bb = b.to_vec();
    trim(&mut bb);
    assert!(!bb.is_empty(), "division by zero polynomial");
    let db = bb.len() - 1;
    if rem.len() <= db {
        return (vec![], rem);
    }
    let lead = bb[db].clone();
    let mut quot = vec![BigRational::zero(); rem.len() - db];
    while rem.len() > db {
        let top = rem.len() - 1;
        let c = &rem[top] / &lead;
        let shift = top - db;
        if !c.is_zero() {
            for (j, d) in bb.iter().enumerate() {
                let t = &c * d;
                rem[shift + j] -= t;
            }
        }
        quot[shift] = c;
        rem.pop();
        trim(&mut rem);
        if rem.is_empty() {
            break;
        }
    }
    (quot, rem)
}

fn poly_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return vec![];
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn poly_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    if out.len() < b.len() {
        out.resize(b.len(), BigRational::zero());
    }
    for (j, y) in b.iter().enumerate() {
        out[j] -= y;
    }
    trim(&mut out);
    out
}

/// Extended gcd over `Q[x]`: returns `(g, u)` with `u·a ≡ g (mod b)`.
fn poly_ext_gcd(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r0 = a.to_vec();
    let mut r1 = b.to_vec();
    trim(&mut r0);
    trim(&mut r1);
    let mut s0 = vec![BigRational::one()];
    let mut s1: Vec<BigRational> = vec![];
    while !r1.is_empty() {
        let (q, r) = poly_divmod(&r0, &r1);
        let s = poly_sub(&s0, &poly_mul(&q, &s1));
        r0 = r1;
        r1 = r;
        s0 = s1;
        s1 = s;
    }
    (r0, s0)
}

/// An element of the `conductor`-th cyclotomic field.
#[derive(Clone)]
pub struct ExactScalar {
    conductor: u32,
    coords: Vec<BigRational>,
}

impl ExactScalar {
    fn from_poly(poly: Vec<BigRational>, conductor: u32) -> Self {
        let modulus = cyclotomic_polynomial(conductor);
        let phi = euler_phi(conductor) as usize;
        ExactScalar {
            conductor,
            coords: reduce_mod(poly, &modulus, phi),
        }
    }

    pub fn from_rational(r: BigRational) -> Self {
        ExactScalar {
            conductor: 1,
            coords: vec![r],
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Self::from_rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    /// A primitive `n`-th root of unity, exact multiplicative order `n`.
    pub fn primitive_root(n: u32) -> Self {
        assert!(n >= 1, "order must be positive");
        Self::from_poly(vec![BigRational::zero(), BigRational::one()], n)
    }

    /// The imaginary unit.
    pub fn i() -> Self {
        Self::primitive_root(4)
    }

    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.coords
    }

    /// Reinterpret in the conductor `m` field; requires `conductor | m`.
    pub fn lift(&self, m: u32) -> Self {
        assert!(
            m.is_multiple_of(self.conductor),
            "lift target must be a multiple"
        );
        if m == self.conductor {
            return self.clone();
        }
        let k = (m / self.conductor) as usize;
        let mut poly = vec![BigRational::zero(); (self.coords.len() - 1) * k + 1];
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                poly[j * k] = c.clone();
            }
        }
        Self::from_poly(poly, m)
    }

    fn aligned(&self, other: &Self) -> (Self, Self, u32) {
        let m = (self.conductor as u64).lcm(&(other.conductor as u64)) as u32;
        (self.lift(m), other.lift(m), m)
    }

    pub fn is_rational(&self) -> bool {
        self.coords.iter().skip(1).all(|c| c.is_zero())
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        if self.is_rational() {
            Some(
                self.coords
                    .first()
                    .cloned()
                    .unwrap_or_else(BigRational::zero),
            )
        } else {
            None
        }
    }

    /// Complex conjugation (the Galois map ζ ↦ ζ^{N-1}).
    pub fn conj(&self) -> Self {
        let n = self.conductor as usize;
        let mut poly = vec![BigRational::zero(); n];
        for (j, c) in self.coords.iter().enumerate() {
            if !c.is_zero() {
                let e = (n - j) % n;
                poly[e] += c;
            }
        }
        Self::from_poly(poly, self.conductor)
    }

    /// Squared modulus, exact. Rational because conjugation is a field map.
    pub fn norm_sq(&self) -> Option<BigRational> {
        self.mul(&self.conj()).to_rational()
    }

    /// Multiplicative order when the value is a root of unity.
    pub fn order(&self) -> Option<u32> {
        if self.is_zero() {
            return None;
        }
        let bound = (2u64.lcm(&(self.conductor as u64))) as u32;
        let mut divisors: Vec<u32> = (1..=bound).filter(|m| bound.is_multiple_of(*m)).collect();
        divisors.sort_unstable();
        divisors
            .into_iter()
            .find(|&m| self.pow_int(m as i64).map(|p| p.is_one()).unwrap_or(false))
    }

    /// Height: the largest numerator or denominator magnitude over the coords.
    pub fn height(&self) -> BigUint {
        let mut h = BigUint::one();
        for c in &self.coords {
            let n = c.numer().magnitude();
            let d = c.denom().magnitude();
            if n > &h {
                h = n.clone();
            }
            if d > &h {
                h = d.clone();
            }
        }
        h
    }

    /// Decompose as `rational × root of unity` when possible.
    fn unit_factorization(&self) -> Option<(BigRational, u32, u32)> {
        // returns (r > 0, order m, exponent t) with self = r · ζ_m^t
        if self.is_zero() {
            return None;
        }
        let norm = self.norm_sq()?;
        let r = rational_sqrt(&norm)?;
        let unit = self.mul(&Self::from_rational(r.clone()).invert()?);
        let m = unit.order()?;
        let zeta = Self::primitive_root(m);
        // locate the exponent by direct comparison; m is small
        let mut pw = Self::one();
        for t in 0..m {
            if pw == unit {
                return Some((r, m, t));
            }
            pw = pw.mul(&zeta);
        }
        None
    }
}

/// Exact square root of a nonnegative rational, if it exists.
fn rational_sqrt(r: &BigRational) -> Option<BigRational> {
    if r.is_negative() {
        return None;
    }
    let n = r.numer().magnitude().sqrt();
    let d = r.denom().magnitude().sqrt();
    if &(&n * &n) == r.numer().magnitude() && &(&d * &d) == r.denom().magnitude() {
        Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
    } else {
        None
    }
}

/// Exact `k`-th root of a positive rational, if it exists.
fn rational_kth_root(r: &BigRational, k: u32) -> Option<BigRational> {
    if r.is_negative() || r.is_zero() {
        return None;
    }
    let n = r.numer().magnitude().nth_root(k);
    let d = r.denom().magnitude().nth_root(k);
    let nk = num_traits::pow::pow(n.clone(), k as usize);
    let dk = num_traits::pow::pow(d.clone(), k as usize);
    if &nk == r.numer().magnitude() && &dk == r.denom().magnitude() {
        Some(BigRational::new(BigInt::from(n), BigInt::from(d)))
    } else {
        None
    }
}

impl PartialEq for ExactScalar {
    fn eq(&self, other: &Self) -> bool {
        if self.conductor == other.conductor {
            return self.coords == other.coords;
        }
        let (a, b, _) = self.aligned(other);
        a.coords == b.coords
    }
}

impl Eq for ExactScalar {}

impl Scalar for ExactScalar {
    const EXACT: bool = true;

    fn zero() -> Self {
        Self::from_rational(BigRational::zero())
    }

    fn one() -> Self {
        Self::from_rational(BigRational::one())
    }

    fn from_int(n: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(n)))
    }

    fn add(&self, other: &Self) -> Self {
        let (mut a, b, _) = self.aligned(other);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x += y;
        }
        a
    }

    fn sub(&self, other: &Self) -> Self {
        let (mut a, b, _) = self.aligned(other);
        for (x, y) in a.coords.iter_mut().zip(b.coords.iter()) {
            *x -= y;
        }
        a
    }

    fn mul(&self, other: &Self) -> Self {
        let (a, b, m) = self.aligned(other);
        Self::from_poly(poly_mul(&a.coords, &b.coords), m)
    }

    fn neg(&self) -> Self {
        ExactScalar {
            conductor: self.conductor,
            coords: self.coords.iter().map(|c| -c).collect(),
        }
    }

    fn invert(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let modulus = cyclotomic_polynomial(self.conductor);
        let modulus_q: Vec<BigRational> = modulus
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let mut a = self.coords.clone();
        trim(&mut a);
        let (g, u) = poly_ext_gcd(&a, &modulus_q);
        // the cyclotomic polynomial is irreducible, so g is a nonzero constant
        debug_assert_eq!(g.len(), 1);
        let ginv = g[0].recip();
        let inv: Vec<BigRational> = u.iter().map(|c| c * &ginv).collect();
        Some(Self::from_poly(inv, self.conductor))
    }

    fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    fn embed(&self) -> Complex64 {
        let n = self.conductor as f64;
        let mut acc = Complex64::new(0.0, 0.0);
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let angle = 2.0 * std::f64::consts::PI * (k as f64) / n;
            let v = c.to_f64().unwrap_or(f64::INFINITY);
            acc += Complex64::new(angle.cos(), angle.sin()) * v;
        }
        acc
    }

    fn approx_eq(&self, other: &Self, _tol: f64) -> bool {
        self == other
    }

    fn is_finite_value(&self) -> bool {
        true
    }

    fn nth_roots(&self, n: u32) -> Vec<Self> {
        assert!(n >= 1);
        if self.is_zero() {
            return vec![Self::zero()];
        }
        if n == 1 {
            return vec![self.clone()];
        }
        let Some((r, m, t)) = self.unit_factorization() else {
            return vec![];
        };
        let Some(root_r) = rational_kth_root(&r, n) else {
            return vec![];
        };
        // roots: r^{1/n} · ζ_{mn}^t · ζ_n^j
        let base = Self::from_rational(root_r)
            .mul(&Self::primitive_root(m * n).pow_int(t as i64).unwrap());
        let omega = Self::primitive_root(n);
        let mut out = Vec::with_capacity(n as usize);
        let mut cur = base;
        for _ in 0..n {
            out.push(cur.clone());
            cur = cur.mul(&omega);
        }
        out
    }
}

macro_rules! forward_binop {
    ($trait:ident, $method:ident, $delegate:ident) => {
        impl std::ops::$trait for ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: ExactScalar) -> ExactScalar {
                Scalar::$delegate(&self, &rhs)
            }
        }
        impl std::ops::$trait for &ExactScalar {
            type Output = ExactScalar;
            fn $method(self, rhs: &ExactScalar) -> ExactScalar {
                Scalar::$delegate(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add, add);
forward_binop!(Sub, sub, sub);
forward_binop!(Mul, mul, mul);

impl std::ops::Div for ExactScalar {
    type Output = ExactScalar;
    fn div(self, rhs: ExactScalar) -> ExactScalar {
        Scalar::mul(&self, &rhs.invert().expect("division by zero"))
    }
}

impl std::ops::Neg for ExactScalar {
    type Output = ExactScalar;
    fn neg(self) -> ExactScalar {
        Scalar::neg(&self)
    }
}

impl fmt::Debug for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactScalar({self})")
    }
}

impl fmt::Display for ExactScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let (sign, mag) = if c.is_negative() {
                ("-", -c.clone())
            } else {
                ("+", c.clone())
            };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
                first = false;
            } else if sign == "-" {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            write_term(f, &mag, k, self.conductor)?;
        }
        Ok(())
    }
}

fn write_term(
    f: &mut fmt::Formatter<'_>,
    mag: &BigRational,
    k: usize,
    conductor: u32,
) -> fmt::Result {
    let unit = match (k, conductor) {
        (0, _) => None,
        (1, 4) => Some("i".to_string()),
        (k, n) => Some(if k == 1 {
            format!("zeta({n})")
        } else {
            format!("zeta({n})^{k}")
        }),
    };
    match unit {
        None => write!(f, "{}", fmt_rational(mag)),
        Some(u) => {
            if mag.is_one() {
                write!(f, "{u}")
            } else {
                write!(f, "{}*{}", fmt_rational(mag), u)
            }
        }
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
