//! The amalgamated product structure of plane polynomial automorphisms:
//! affine and elementary letters, reduced words, decomposition by degree
//! peeling, and the Hénon normal form.
//!
//! The letter convention: a word `g1 g2 … gk` denotes the composition with
//! `g1` outermost. Elementary maps preserve the lines `w = const` and have
//! the shape `(z,w) ↦ (α z + q(w), β w + γ)`; the intersection of the two
//! groups consists of the affine maps whose lower-left matrix entry is zero.

use std::fmt;

use crate::henon::{HenonComposition, HenonError, HenonFactor};
use crate::poly::{Axis, BiPoly, PolyError, PolyMap2, UniPoly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum WordError {
    #[error("not an automorphism: the Jacobian determinant is {0}")]
    NotAutomorphism(String),
    #[error("decomposition stuck: {0}")]
    Stuck(String),
    #[error("singular matrix in affine map")]
    Singular,
    #[error("zero scaling in elementary map")]
    ZeroScaling,
    #[error("normal form needs scalars outside the current exact field: {0}")]
    ExactnessLoss(String),
    #[error("internal normal-form verification failed: {0}")]
    Internal(String),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Henon(#[from] HenonError),
}

/// An invertible affine map `x ↦ Mx + t`.
#[derive(Debug, Clone, PartialEq)]
pub struct AffineMap<S: Scalar> {
    pub matrix: [[S; 2]; 2],
    pub translation: [S; 2],
}

impl<S: Scalar> AffineMap<S> {
    pub fn new(matrix: [[S; 2]; 2], translation: [S; 2]) -> Result<Self, WordError> {
        let m = AffineMap {
            matrix,
            translation,
        };
        if m.det().is_zero() {
            return Err(WordError::Singular);
        }
        Ok(m)
    }

    pub fn identity() -> Self {
        AffineMap {
            matrix: [[S::one(), S::zero()], [S::zero(), S::one()]],
            translation: [S::zero(), S::zero()],
        }
    }

    /// The coordinate swap τ(z,w) = (w,z).
    pub fn swap() -> Self {
        AffineMap {
            matrix: [[S::zero(), S::one()], [S::one(), S::zero()]],
            translation: [S::zero(), S::zero()],
        }
    }

    /// The diagonal map (σz, ρw).
    pub fn diagonal(sigma: S, rho: S) -> Result<Self, WordError> {
        Self::new(
            [[sigma, S::zero()], [S::zero(), rho]],
            [S::zero(), S::zero()],
        )
    }

    pub fn det(&self) -> S {
        self.matrix[0][0]
            .mul(&self.matrix[1][1])
            .sub(&self.matrix[0][1].mul(&self.matrix[1][0]))
    }

    /// In the intersection of the two groups: preserves `w = const` lines.
    pub fn is_elementary(&self) -> bool {
        self.matrix[1][0].is_zero()
    }

    pub fn is_identity(&self) -> bool {
        self.matrix[0][0].is_one()
            && self.matrix[1][1].is_one()
            && self.matrix[0][1].is_zero()
            && self.matrix[1][0].is_zero()
            && self.translation[0].is_zero()
            && self.translation[1].is_zero()
    }

    pub fn apply(&self, pt: (&S, &S)) -> (S, S) {
        let (z, w) = pt;
        (
            self.matrix[0][0]
                .mul(z)
                .add(&self.matrix[0][1].mul(w))
                .add(&self.translation[0]),
            self.matrix[1][0]
                .mul(z)
                .add(&self.matrix[1][1].mul(w))
                .add(&self.translation[1]),
        )
    }

    /// Composition `self ∘ other`.
    pub fn compose(&self, other: &Self) -> Self {
        let m = &self.matrix;
        let n = &other.matrix;
        let matrix = [
            [
                m[0][0].mul(&n[0][0]).add(&m[0][1].mul(&n[1][0])),
                m[0][0].mul(&n[0][1]).add(&m[0][1].mul(&n[1][1])),
            ],
            [
                m[1][0].mul(&n[0][0]).add(&m[1][1].mul(&n[1][0])),
                m[1][0].mul(&n[0][1]).add(&m[1][1].mul(&n[1][1])),
            ],
        ];
        let translation = [
            m[0][0]
                .mul(&other.translation[0])
                .add(&m[0][1].mul(&other.translation[1]))
                .add(&self.translation[0]),
            m[1][0]
                .mul(&other.translation[0])
                .add(&m[1][1].mul(&other.translation[1]))
                .add(&self.translation[1]),
        ];
        AffineMap {
            matrix,
            translation,
        }
    }

    pub fn inverse(&self) -> Self {
        let dinv = self.det().invert().expect("invertible by construction");
        let m = &self.matrix;
        let matrix = [
            [m[1][1].mul(&dinv), m[0][1].neg().mul(&dinv)],
            [m[1][0].neg().mul(&dinv), m[0][0].mul(&dinv)],
        ];
        let translation = [
            matrix[0][0]
                .mul(&self.translation[0])
                .add(&matrix[0][1].mul(&self.translation[1]))
                .neg(),
            matrix[1][0]
                .mul(&self.translation[0])
                .add(&matrix[1][1].mul(&self.translation[1]))
                .neg(),
        ];
        AffineMap {
            matrix,
            translation,
        }
    }

    pub fn as_map(&self) -> PolyMap2<S> {
        let first = BiPoly::from_terms([
            ((1, 0), self.matrix[0][0].clone()),
            ((0, 1), self.matrix[0][1].clone()),
            ((0, 0), self.translation[0].clone()),
        ]);
        let second = BiPoly::from_terms([
            ((1, 0), self.matrix[1][0].clone()),
            ((0, 1), self.matrix[1][1].clone()),
            ((0, 0), self.translation[1].clone()),
        ]);
        PolyMap2::new(first, second)
    }

    /// Extract an affine map from a degree-one polynomial map.
    pub fn from_map(m: &PolyMap2<S>) -> Option<Self> {
        if m.total_degree().unwrap_or(0) > 1 {
            return None;
        }
        let pick = |p: &BiPoly<S>| (p.coeff(1, 0), p.coeff(0, 1), p.coeff(0, 0));
        let (a, b, t0) = pick(&m.first);
        let (c, d, t1) = pick(&m.second);
        AffineMap::new([[a, b], [c, d]], [t0, t1]).ok()
    }

    /// View as elementary data; requires `is_elementary`.
    pub fn to_elementary(&self) -> ElementaryMap<S> {
        debug_assert!(self.is_elementary());
        ElementaryMap {
            alpha: self.matrix[0][0].clone(),
            q: UniPoly::new(
                vec![self.translation[0].clone(), self.matrix[0][1].clone()],
                'w',
            ),
            beta: self.matrix[1][1].clone(),
            gamma: self.translation[1].clone(),
        }
    }
}

/// An elementary map `(z,w) ↦ (α z + q(w), β w + γ)` with `α, β ≠ 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ElementaryMap<S: Scalar> {
    pub alpha: S,
    pub q: UniPoly<S>,
    pub beta: S,
    pub gamma: S,
}

impl<S: Scalar> ElementaryMap<S> {
    pub fn new(alpha: S, q: UniPoly<S>, beta: S, gamma: S) -> Result<Self, WordError> {
        if alpha.is_zero() || beta.is_zero() {
            return Err(WordError::ZeroScaling);
        }
        Ok(ElementaryMap {
            alpha,
            q,
            beta,
            gamma,
        })
    }

    /// The translation-free shear `(α z + q(w), w)`.
    pub fn shear(alpha: S, q: UniPoly<S>) -> Self {
        debug_assert!(!alpha.is_zero());
        ElementaryMap {
            alpha,
            q,
            beta: S::one(),
            gamma: S::zero(),
        }
    }

    /// In the intersection of the two groups: affine.
    pub fn is_affine(&self) -> bool {
        self.q.degree().unwrap_or(0) <= 1
    }

    pub fn is_identity(&self) -> bool {
        self.alpha.is_one() && self.beta.is_one() && self.gamma.is_zero() && self.q.is_zero()
    }

    /// Pure shear shape `(α z + q(w), w)`.
    pub fn is_shear(&self) -> bool {
        self.beta.is_one() && self.gamma.is_zero()
    }

    /// Composition `self ∘ other` of two elementary maps, elementary again.
    pub fn compose(&self, other: &Self) -> Self {
        let alpha = self.alpha.mul(&other.alpha);
        let inner_w = UniPoly::new(vec![other.gamma.clone(), other.beta.clone()], 'w');
        let q = other.q.scale(&self.alpha).add(&self.q.compose(&inner_w));
        let beta = self.beta.mul(&other.beta);
        let gamma = self.beta.mul(&other.gamma).add(&self.gamma);
        ElementaryMap {
            alpha,
            q,
            beta,
            gamma,
        }
    }

    pub fn inverse(&self) -> Self {
        let ainv = self.alpha.invert().expect("alpha nonzero");
        let binv = self.beta.invert().expect("beta nonzero");
        let gamma = self.gamma.mul(&binv).neg();
        // q'(w) = -q((w - γ)/β)/α
        let inner = UniPoly::new(vec![gamma.clone(), binv.clone()], 'w');
        let q = self.q.compose(&inner).scale(&ainv).neg();
        ElementaryMap {
            alpha: ainv,
            q,
            beta: binv,
            gamma,
        }
    }

    pub fn apply(&self, pt: (&S, &S)) -> (S, S) {
        let (z, w) = pt;
        (
            self.alpha.mul(z).add(&self.q.eval(w)),
            self.beta.mul(w).add(&self.gamma),
        )
    }

    pub fn as_map(&self) -> PolyMap2<S> {
        let first = self
            .q
            .to_bipoly(Axis::W)
            .add(&BiPoly::monomial(self.alpha.clone(), 1, 0));
        let second =
            BiPoly::from_terms([((0, 1), self.beta.clone()), ((0, 0), self.gamma.clone())]);
        PolyMap2::new(first, second)
    }

    /// Extract elementary data from a polynomial map of the right shape.
    pub fn from_map(m: &PolyMap2<S>) -> Option<Self> {
        if m.second.degree_z().unwrap_or(0) > 0 || m.second.degree_w().unwrap_or(0) > 1 {
            return None;
        }
        let beta = m.second.coeff(0, 1);
        let gamma = m.second.coeff(0, 0);
        if beta.is_zero() {
            return None;
        }
        let mut q_coeffs: Vec<S> = vec![];
        let mut alpha = S::zero();
        for ((i, j), c) in m.first.terms() {
            match (*i, *j) {
                (1, 0) => alpha = c.clone(),
                (0, j) => {
                    let j = j as usize;
                    if q_coeffs.len() <= j {
                        q_coeffs.resize(j + 1, S::zero());
                    }
                    q_coeffs[j] = c.clone();
                }
                _ => return None,
            }
        }
        if alpha.is_zero() {
            return None;
        }
        Some(ElementaryMap {
            alpha,
            q: UniPoly::new(q_coeffs, 'w'),
            beta,
            gamma,
        })
    }

    /// View as affine data; requires `is_affine`.
    pub fn to_affine(&self) -> AffineMap<S> {
        debug_assert!(self.is_affine());
        AffineMap {
            matrix: [
                [self.alpha.clone(), self.q.coeff(1)],
                [S::zero(), self.beta.clone()],
            ],
            translation: [self.q.coeff(0), self.gamma.clone()],
        }
    }
}

/// Which of the two amalgamated groups a letter belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LetterGroup {
    Affine,
    Elementary,
}

/// One letter of a word.
#[derive(Debug, Clone, PartialEq)]
pub enum WordLetter<S: Scalar> {
    Affine(AffineMap<S>),
    Elementary(ElementaryMap<S>),
}

impl<S: Scalar> WordLetter<S> {
    pub fn group(&self) -> LetterGroup {
        match self {
            WordLetter::Affine(_) => LetterGroup::Affine,
            WordLetter::Elementary(_) => LetterGroup::Elementary,
        }
    }

    /// Lies in the intersection of the two groups.
    pub fn in_intersection(&self) -> bool {
        match self {
            WordLetter::Affine(a) => a.is_elementary(),
            WordLetter::Elementary(e) => e.is_affine(),
        }
    }

    pub fn is_identity(&self) -> bool {
        match self {
            WordLetter::Affine(a) => a.is_identity(),
            WordLetter::Elementary(e) => e.is_identity(),
        }
    }

    pub fn as_map(&self) -> PolyMap2<S> {
        match self {
            WordLetter::Affine(a) => a.as_map(),
            WordLetter::Elementary(e) => e.as_map(),
        }
    }

    /// Degree contributed to the word: elementary letters multiply the total
    /// degree by `deg q`, affine ones by 1.
    pub fn degree(&self) -> u64 {
        match self {
            WordLetter::Affine(_) => 1,
            WordLetter::Elementary(e) => e.q.degree().unwrap_or(1).max(1) as u64,
        }
    }
}

impl<S: Scalar> fmt::Display for WordLetter<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WordLetter::Affine(a) => write!(
                f,
                "AFFINE{{[[{}, {}], [{}, {}]], ({}, {})}}",
                a.matrix[0][0],
                a.matrix[0][1],
                a.matrix[1][0],
                a.matrix[1][1],
                a.translation[0],
                a.translation[1]
            ),
            WordLetter::Elementary(e) => write!(
                f,
                "ELEM{{alpha={}, q={}, beta={}, gamma={}}}",
                e.alpha, e.q, e.beta, e.gamma
            ),
        }
    }
}

/// An alternating word of affine and elementary letters. The empty word is
/// the identity. Words of length at least 2 contain no letter from the
/// intersection of the two groups and never two adjacent letters from the
/// same group. A single-letter word may consist of one intersection element:
/// the amalgam base has no alternating representation, so it is carried as
/// its own letter.
#[derive(Debug, Clone, PartialEq)]
pub struct ReducedWord<S: Scalar> {
    letters: Vec<WordLetter<S>>,
}

impl<S: Scalar> ReducedWord<S> {
    pub fn identity() -> Self {
        ReducedWord { letters: vec![] }
    }

    pub fn from_letters(letters: Vec<WordLetter<S>>) -> Result<Self, WordError> {
        let w = ReducedWord { letters };
        w.validate()?;
        Ok(w)
    }

    pub fn letters(&self) -> &[WordLetter<S>] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn validate(&self) -> Result<(), WordError> {
        if self.letters.len() >= 2 {
            for letter in &self.letters {
                if letter.in_intersection() {
                    return Err(WordError::Stuck(
                        "letter lies in the intersection of the two groups".into(),
                    ));
                }
            }
            for pair in self.letters.windows(2) {
                if pair[0].group() == pair[1].group() {
                    return Err(WordError::Stuck(
                        "adjacent letters from the same group".into(),
                    ));
                }
            }
        }
        if let [only] = self.letters.as_slice() {
            if only.is_identity() {
                return Err(WordError::Stuck(
                    "identity letter in a nonempty word".into(),
                ));
            }
        }
        Ok(())
    }

    /// Compose the letters, left letter outermost.
    pub fn recompose(&self) -> Result<PolyMap2<S>, WordError> {
        let mut acc = PolyMap2::identity();
        for letter in self.letters.iter().rev() {
            acc = letter.as_map().compose(&acc)?;
        }
        Ok(acc)
    }

    /// Product of elementary-letter degrees: the total degree of the word.
    pub fn degree(&self) -> u64 {
        self.letters.iter().map(|l| l.degree()).product()
    }
}

impl<S: Scalar> fmt::Display for ReducedWord<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "IDENTITY");
        }
        for (k, letter) in self.letters.iter().enumerate() {
            if k > 0 {
                writeln!(f)?;
            }
            write!(f, "{letter}")?;
        }
        Ok(())
    }
}

/// Reduce a letter sequence to alternating form: drop identities, merge
/// adjacent same-group letters, absorb intersection letters into a neighbor.
/// The composed map is unchanged.
fn reduce_letters<S: Scalar>(mut letters: Vec<WordLetter<S>>) -> Vec<WordLetter<S>> {
    loop {
        let mut changed = false;

        letters.retain(|l| {
            if l.is_identity() {
                changed = true;
                false
            } else {
                true
            }
        });

        let mut i = 0;
        while i + 1 < letters.len() {
            if letters[i].group() == letters[i + 1].group() {
                let merged = merge_same_group(&letters[i], &letters[i + 1]);
                letters[i] = merged;
                letters.remove(i + 1);
                changed = true;
            } else {
                i += 1;
            }
        }

        if letters.len() >= 2 {
            let mut i = 0;
            while i < letters.len() && letters.len() >= 2 {
                if letters[i].in_intersection() {
                    if i > 0 {
                        let merged = absorb(&letters[i - 1], &letters[i], true);
                        letters[i - 1] = merged;
                        letters.remove(i);
                    } else {
                        let merged = absorb(&letters[i + 1], &letters[i], false);
                        letters[i] = merged;
                        letters.remove(i + 1);
                    }
                    changed = true;
                } else {
                    i += 1;
                }
            }
        }

        if !changed {
            return letters;
        }
    }
}

fn merge_same_group<S: Scalar>(left: &WordLetter<S>, right: &WordLetter<S>) -> WordLetter<S> {
    match (left, right) {
        (WordLetter::Affine(a), WordLetter::Affine(b)) => WordLetter::Affine(a.compose(b)),
        (WordLetter::Elementary(a), WordLetter::Elementary(b)) => {
            WordLetter::Elementary(a.compose(b))
        }
        _ => unreachable!("merge requires same-group letters"),
    }
}

/// Merge an intersection letter `c` into `neighbor`; `c_on_right` says
/// whether the product is `neighbor ∘ c` or `c ∘ neighbor`.
fn absorb<S: Scalar>(
    neighbor: &WordLetter<S>,
    c: &WordLetter<S>,
    c_on_right: bool,
) -> WordLetter<S> {
    match neighbor {
        WordLetter::Affine(a) => {
            let c_aff = as_affine(c);
            WordLetter::Affine(if c_on_right {
                a.compose(&c_aff)
            } else {
                c_aff.compose(a)
            })
        }
        WordLetter::Elementary(e) => {
            let c_el = as_elementary(c);
            WordLetter::Elementary(if c_on_right {
                e.compose(&c_el)
            } else {
                c_el.compose(e)
            })
        }
    }
}

fn as_affine<S: Scalar>(letter: &WordLetter<S>) -> AffineMap<S> {
    match letter {
        WordLetter::Affine(a) => a.clone(),
        WordLetter::Elementary(e) => e.to_affine(),
    }
}

fn as_elementary<S: Scalar>(letter: &WordLetter<S>) -> ElementaryMap<S> {
    match letter {
        WordLetter::Affine(a) => a.to_elementary(),
        WordLetter::Elementary(e) => e.clone(),
    }
}

/// Decompose a polynomial automorphism into a reduced word by degree
/// peeling: when the first component dominates, subtract the unique scalar
/// multiples of powers of the second component until its degree drops, which
/// peels one elementary letter; otherwise peel a swap and continue.
pub fn decompose<S: Scalar>(m: &PolyMap2<S>) -> Result<ReducedWord<S>, WordError> {
    let jac = m.jacobian_det();
    if !jac.is_constant() || jac.constant_term().is_zero() {
        return Err(WordError::NotAutomorphism(format!("{jac}")));
    }

    let mut letters: Vec<WordLetter<S>> = vec![];
    let mut cur = m.clone();
    let mut guard = 0u32;
    loop {
        guard += 1;
        if guard > 10_000 {
            return Err(WordError::Stuck("peeling did not terminate".into()));
        }
        if cur.is_identity() {
            break;
        }
        if let Some(aff) = AffineMap::from_map(&cur) {
            letters.push(WordLetter::Affine(aff));
            break;
        }
        if let Some(el) = ElementaryMap::from_map(&cur) {
            letters.push(WordLetter::Elementary(el));
            break;
        }
        let df = cur.first.total_degree().unwrap_or(0);
        let dg = cur.second.total_degree().unwrap_or(0);
        if df >= dg {
            if dg == 0 {
                return Err(WordError::Stuck(
                    "second component degenerated to a constant".into(),
                ));
            }
            let q = peel_shear(&cur.first, &cur.second)?;
            let first_reduced = cur.first.sub(&substitute_uni(&q, &cur.second));
            letters.push(WordLetter::Elementary(ElementaryMap::shear(S::one(), q)));
            cur = PolyMap2::new(first_reduced, cur.second);
        } else {
            letters.push(WordLetter::Affine(AffineMap::swap()));
            cur = PolyMap2::new(cur.second, cur.first);
        }
    }

    let reduced = reduce_letters(letters);
    let word = ReducedWord { letters: reduced };
    word.validate()?;
    Ok(word)
}

/// Find `q` with `deg(f - q(g)) < deg(g)` by matching leading forms.
fn peel_shear<S: Scalar>(f: &BiPoly<S>, g: &BiPoly<S>) -> Result<UniPoly<S>, WordError> {
    let dg = g.total_degree().expect("nonconstant");
    let g_top = BiPoly::from_terms(g.leading_form());
    let mut h = f.clone();
    let mut q = UniPoly::zero('w');
    while let Some(dh) = h.total_degree() {
        if dh < dg {
            break;
        }
        if dh % dg != 0 {
            return Err(WordError::Stuck(format!(
                "degree {dh} of the first component is not a multiple of {dg}"
            )));
        }
        let k = dh / dg;
        let h_top = BiPoly::from_terms(h.leading_form());
        let g_top_k = g_top.pow(k);
        let key = g_top_k
            .terms()
            .map(|(key, _)| *key)
            .max()
            .expect("nonzero leading form");
        let denom = g_top_k.coeff(key.0, key.1);
        let c = h_top.coeff(key.0, key.1).mul(
            &denom
                .invert()
                .ok_or_else(|| WordError::Stuck("zero leading coefficient".into()))?,
        );
        if c.is_zero() || g_top_k.scale(&c) != h_top {
            // At k = 1 a non-proportional top means the polynomial part in g
            // is exhausted and an affine mix remains: stop peeling, provided
            // something was peeled (otherwise no progress is possible).
            if k == 1 && !q.is_zero() {
                break;
            }
            return Err(WordError::Stuck(
                "leading form is not a scalar multiple of a power of the second component".into(),
            ));
        }
        h = h.sub(&g.pow(k).scale(&c));
        q = q.add(&UniPoly::monomial(c, k as usize, 'w'));
    }
    Ok(q)
}

/// Evaluate a univariate polynomial at a bivariate argument.
fn substitute_uni<S: Scalar>(q: &UniPoly<S>, arg: &BiPoly<S>) -> BiPoly<S> {
    let mut acc = BiPoly::zero();
    for c in q.coeffs().iter().rev() {
        acc = acc.mul(arg).add(&BiPoly::constant(c.clone()));
    }
    acc
}

/// Outcome of normal-form analysis.
#[derive(Debug, Clone)]
pub enum HenonNormalForm<S: Scalar> {
    /// `m = L⁻¹ ∘ composition ∘ L` with monic factors; `L` is affine.
    Henon {
        composition: HenonComposition<S>,
        conjugator: AffineMap<S>,
    },
    /// The map is conjugate to an elementary map (word length at most 1).
    /// The conjugator is `None` when producing it would require eigenvalues
    /// outside the working exact field.
    ConjugateToElementary { conjugator: Option<AffineMap<S>> },
    /// Cyclic reduction would require conjugating by an elementary letter;
    /// the map is polynomially but not affinely reducible to Hénon form.
    RequiresPolynomialConjugation { reduced_length: usize },
}

/// Bring an automorphism to Hénon normal form when an affine conjugation
/// suffices: returns the monic composition and the affine conjugator, or a
/// verdict describing why not.
pub fn henon_normal_form<S: Scalar>(m: &PolyMap2<S>) -> Result<HenonNormalForm<S>, WordError> {
    let word = decompose(m)?;
    let mut letters = word.letters.clone();
    // invariant: current letters compose to acc⁻¹ ∘ m ∘ acc
    let mut acc = AffineMap::<S>::identity();

    // cyclic reduction by affine rotations only
    let mut guard = 0u32;
    loop {
        guard += 1;
        if guard > 1000 {
            return Err(WordError::Internal(
                "cyclic reduction did not settle".into(),
            ));
        }
        if letters.len() <= 1 {
            return small_word_verdict(&letters, &acc);
        }
        let first_group = letters[0].group();
        let last_group = letters[letters.len() - 1].group();
        if first_group == last_group {
            if first_group == LetterGroup::Elementary {
                return Ok(HenonNormalForm::RequiresPolynomialConjugation {
                    reduced_length: letters.len(),
                });
            }
            let g1 = letters.remove(0);
            acc = acc.compose(&as_affine(&g1));
            letters.push(g1);
            letters = reduce_letters(letters);
        } else if first_group == LetterGroup::Elementary {
            let gk = letters.pop().expect("len >= 2");
            acc = acc.compose(&as_affine(&gk).inverse());
            letters.insert(0, gk);
            letters = reduce_letters(letters);
        } else {
            break;
        }
    }

    // letters = [A1, E1, A2, E2, …, Al, El]
    if letters.len() % 2 != 0 {
        return Err(WordError::Internal(format!(
            "unexpected alternating word shape of length {}",
            letters.len()
        )));
    }

    // split each affine letter as C·τ·D, folding C into the predecessor and
    // D into the successor, leaving junk ∘ τẼ₁ τẼ₂ ⋯ τẼl
    let mut junk = AffineMap::<S>::identity();
    let mut tau_letters: Vec<ElementaryMap<S>> = vec![];
    for (idx, chunk) in letters.chunks(2).enumerate() {
        let a = as_affine(&chunk[0]);
        let e = as_elementary(&chunk[1]);
        let (c_part, d_part) = split_affine_around_swap(&a)?;
        if idx == 0 {
            junk = c_part;
        } else {
            let prev = tau_letters.pop().expect("nonempty");
            tau_letters.push(prev.compose(&c_part.to_elementary()));
        }
        tau_letters.push(d_part.to_elementary().compose(&e));
    }

    // make every letter a pure shear by pushing the w-actions left
    let (mut junk, mut shears) = dissolve_w_actions(junk, tau_letters)?;

    // conjugate residual triangular junk away (it settles within a few rounds)
    let mut rounds = 0u32;
    while !junk.is_identity() {
        rounds += 1;
        if rounds > 8 {
            return Err(WordError::Internal("junk absorption did not settle".into()));
        }
        acc = acc.compose(&junk);
        let last = shears.pop().expect("nonempty");
        let absorbed = last.compose(&junk.to_elementary());
        shears.push(absorbed);
        let (j2, f2) = dissolve_w_actions(AffineMap::identity(), shears)?;
        junk = j2;
        shears = f2;
    }

    // τ∘(α z + q(w), w) = (w, q(w) + α z): Hénon factors need monic q
    let shear_data: Vec<(S, UniPoly<S>)> = shears
        .iter()
        .map(|f| (f.alpha.clone(), f.q.clone()))
        .collect();
    for (_, q) in &shear_data {
        if q.degree().unwrap_or(0) < 2 {
            return Err(WordError::Internal(
                "elementary letter degenerated below degree 2".into(),
            ));
        }
    }
    let (factors, delta) = monic_normalization(&shear_data)?;
    let composition = HenonComposition::new(factors)?;

    // m = L⁻¹ ∘ composition ∘ L with L = Δ ∘ acc⁻¹
    let conjugator = delta.compose(&acc.inverse());
    let check = conjugator
        .inverse()
        .as_map()
        .compose(&composition.as_map()?)?
        .compose(&conjugator.as_map())?;
    if &check != m {
        return Err(WordError::Internal(
            "conjugation identity failed exact verification".into(),
        ));
    }
    Ok(HenonNormalForm::Henon {
        composition,
        conjugator,
    })
}

fn small_word_verdict<S: Scalar>(
    letters: &[WordLetter<S>],
    acc: &AffineMap<S>,
) -> Result<HenonNormalForm<S>, WordError> {
    match letters {
        [] => Ok(HenonNormalForm::ConjugateToElementary {
            conjugator: Some(acc.clone()),
        }),
        [WordLetter::Elementary(_)] => Ok(HenonNormalForm::ConjugateToElementary {
            conjugator: Some(acc.clone()),
        }),
        [WordLetter::Affine(a)] if a.is_elementary() => {
            Ok(HenonNormalForm::ConjugateToElementary {
                conjugator: Some(acc.clone()),
            })
        }
        [WordLetter::Affine(a)] => match triangularize(a) {
            Some(p) => Ok(HenonNormalForm::ConjugateToElementary {
                conjugator: Some(acc.compose(&p)),
            }),
            None => Ok(HenonNormalForm::ConjugateToElementary { conjugator: None }),
        },
        _ => unreachable!("small word has length <= 1"),
    }
}

/// Split an affine map with nonzero lower-left entry as `C ∘ τ ∘ D` with `C`,
/// `D` upper triangular; the translation rides on `C`.
fn split_affine_around_swap<S: Scalar>(
    a: &AffineMap<S>,
) -> Result<(AffineMap<S>, AffineMap<S>), WordError> {
    let m = &a.matrix;
    let c = m[1][0].clone();
    let cinv = c
        .invert()
        .ok_or_else(|| WordError::Internal("affine letter lies in the intersection".into()))?;
    let det = a.det();
    let c_map = AffineMap::new(
        [
            [det.neg().mul(&cinv), m[0][0].clone()],
            [S::zero(), c.clone()],
        ],
        [a.translation[0].clone(), a.translation[1].clone()],
    )?;
    let d_map = AffineMap::new(
        [[S::one(), m[1][1].mul(&cinv)], [S::zero(), S::one()]],
        [S::zero(), S::zero()],
    )?;
    debug_assert_eq!(c_map.compose(&AffineMap::swap()).compose(&d_map), a.clone());
    Ok((c_map, d_map))
}

/// Given `junk ∘ τE₁ τE₂ ⋯ τEl`, push every letter's `w`-action leftward
/// through the swaps until all letters are pure shears `(α z + q(w), w)`.
fn dissolve_w_actions<S: Scalar>(
    junk: AffineMap<S>,
    letters: Vec<ElementaryMap<S>>,
) -> Result<(AffineMap<S>, Vec<ElementaryMap<S>>), WordError> {
    let mut out: Vec<ElementaryMap<S>> = Vec::with_capacity(letters.len());
    let mut new_junk = junk;
    for (idx, e) in letters.into_iter().enumerate() {
        // E = B ∘ F with B = (z, βw + γ), F = (α z + q(w), w)
        let f = ElementaryMap::shear(e.alpha.clone(), e.q.clone());
        // τ∘B = D∘τ with D = (βz + γ, w)
        let d = AffineMap::new(
            [[e.beta.clone(), S::zero()], [S::zero(), S::one()]],
            [e.gamma.clone(), S::zero()],
        )?;
        if idx == 0 {
            new_junk = new_junk.compose(&d);
        } else {
            let prev = out.pop().expect("nonempty");
            out.push(prev.compose(&d.to_elementary()));
        }
        out.push(f);
    }
    // merging a shear with (βz + γ, w) keeps it a shear
    debug_assert!(out.iter().all(|f| f.is_shear()));
    Ok((new_junk, out))
}

/// Solve the diagonal-conjugation system that makes every factor monic:
/// writing `K̃_i = S_{i-1} K_i S_i⁻¹` with diagonal `S_i` cyclically requires
/// `ρ_i^{d_i} = c_i ρ_{i-1}` and hence `x^{d-1} = ∏ c_i^{e_i}` for `x = ρ_l`.
fn monic_normalization<S: Scalar>(
    shears: &[(S, UniPoly<S>)],
) -> Result<(Vec<HenonFactor<S>>, AffineMap<S>), WordError> {
    let degrees: Vec<u32> = shears
        .iter()
        .map(|(_, q)| q.degree().unwrap_or(0) as u32)
        .collect();
    let leads: Vec<S> = shears
        .iter()
        .map(|(_, q)| q.leading().cloned().unwrap_or_else(S::zero))
        .collect();
    let total: u64 = degrees.iter().map(|&d| d as u64).product();

    let mut rhs = S::one();
    let mut exp: u64 = 1;
    for (c, d) in leads.iter().zip(&degrees) {
        rhs = rhs.mul(&c.pow_int(exp as i64).expect("positive power"));
        exp *= *d as u64;
    }
    debug_assert_eq!(exp, total);

    let root_order = (total - 1) as u32;
    let x_candidates = rhs.nth_roots(root_order);
    if x_candidates.is_empty() {
        return Err(WordError::ExactnessLoss(format!(
            "no representable {root_order}-th root of {rhs} for the monic rescaling; \
             rerun in the approximate regime"
        )));
    }

    for x in x_candidates {
        let mut acc = vec![x.clone()];
        if let Some(rhos) = propagate_rhos(&x, &leads, &degrees, 0, &mut acc) {
            return build_factors(shears, &rhos);
        }
    }
    Err(WordError::ExactnessLoss(
        "no consistent branch of the rescaling system stayed in the exact field".into(),
    ))
}

/// Depth-first branch search for `ρ_i` with `ρ_i^{d_i} = c_i ρ_{i-1}` and
/// wraparound `ρ_l = ρ_0`.
fn propagate_rhos<S: Scalar>(
    x: &S,
    leads: &[S],
    degrees: &[u32],
    i: usize,
    acc: &mut Vec<S>,
) -> Option<Vec<S>> {
    if i == leads.len() {
        return if &acc[leads.len()] == x {
            Some(acc.clone())
        } else {
            None
        };
    }
    let target = leads[i].mul(&acc[i]);
    for root in target.nth_roots(degrees[i]) {
        acc.push(root);
        if let Some(found) = propagate_rhos(x, leads, degrees, i + 1, acc) {
            return Some(found);
        }
        acc.pop();
    }
    None
}

fn build_factors<S: Scalar>(
    shears: &[(S, UniPoly<S>)],
    rhos: &[S],
) -> Result<(Vec<HenonFactor<S>>, AffineMap<S>), WordError> {
    let l = shears.len();
    let mut factors = Vec::with_capacity(l);
    for (i, (alpha, q)) in shears.iter().enumerate() {
        let rho_prev = &rhos[i];
        let rho_cur = &rhos[i + 1];
        let sigma_i = if i + 1 < l {
            rhos[i + 2].clone()
        } else {
            rhos[1].clone()
        };
        let rho_cur_inv = rho_cur
            .invert()
            .ok_or_else(|| WordError::Internal("zero rescaling".into()))?;
        let p = q.scale_argument(&rho_cur_inv).scale(rho_prev);
        let a = rho_prev
            .mul(alpha)
            .mul(
                &sigma_i
                    .invert()
                    .ok_or_else(|| WordError::Internal("zero rescaling".into()))?,
            )
            .neg();
        factors.push(HenonFactor::new(p, a)?);
    }
    // Δ = S_l = (σ_l z, ρ_l w) with σ_l = ρ_1
    let delta = AffineMap::diagonal(rhos[1].clone(), rhos[l].clone())?;
    Ok((factors, delta))
}

/// Exact triangularization of the linear part, when the eigenvalues stay in
/// the field: returns `P` with `P⁻¹ ∘ a ∘ P` elementary.
fn triangularize<S: Scalar>(a: &AffineMap<S>) -> Option<AffineMap<S>> {
    let m = &a.matrix;
    let tr = m[0][0].add(&m[1][1]);
    let det = a.det();
    let disc = tr.mul(&tr).sub(&det.mul(&S::from_int(4)));
    let sqrt = disc.nth_roots(2).into_iter().next()?;
    let two_inv = S::from_int(2).invert().expect("2 is invertible");
    let lambda = tr.add(&sqrt).mul(&two_inv);
    // eigenvector (λ - m11, m10); m10 ≠ 0 since a is not elementary
    let v = [lambda.sub(&m[1][1]), m[1][0].clone()];
    let p = AffineMap::new(
        [[v[0].clone(), S::one()], [v[1].clone(), S::zero()]],
        [S::zero(), S::zero()],
    )
    .ok()?;
    let conj = p.inverse().compose(a).compose(&p);
    if conj.is_elementary() {
        Some(p)
    } else {
        None
    }
}

/// A random alternating word for round-trip exercises: affine letters have a
/// nonzero lower-left entry, elementary letters have degree at least 2.
pub fn random_reduced_word<R: rand::Rng>(
    rng: &mut R,
    len: usize,
    max_degree: usize,
) -> ReducedWord<crate::scalar::ExactScalar> {
    use crate::scalar::ExactScalar;
    type Q = ExactScalar;

    let mut letters: Vec<WordLetter<Q>> = Vec::with_capacity(len);
    let mut make_affine = rng.random::<bool>();
    for _ in 0..len {
        if make_affine {
            let aff = loop {
                let entry = |rng: &mut R| Q::from_int(rng.random_range(-2..=2i64));
                let low =
                    Q::from_int(rng.random_range(1..=2i64) * if rng.random() { 1 } else { -1 });
                let m = [[entry(rng), entry(rng)], [low, entry(rng)]];
                let t = [entry(rng), entry(rng)];
                if let Ok(a) = AffineMap::new(m, t) {
                    break a;
                }
            };
            letters.push(WordLetter::Affine(aff));
        } else {
            let deg = rng.random_range(2..=max_degree.max(2));
            let mut coeffs: Vec<Q> = (0..deg)
                .map(|_| Q::from_int(rng.random_range(-2..=2i64)))
                .collect();
            coeffs.push(Q::from_int(
                rng.random_range(1..=2i64) * if rng.random() { 1 } else { -1 },
            ));
            let q = UniPoly::new(coeffs, 'w');
            let unit = |rng: &mut R| {
                Q::from_int(rng.random_range(1..=2i64) * if rng.random() { 1 } else { -1 })
            };
            let e = ElementaryMap::new(
                unit(rng),
                q,
                unit(rng),
                Q::from_int(rng.random_range(-2..=2i64)),
            )
            .expect("nonzero units");
            letters.push(WordLetter::Elementary(e));
        }
        make_affine = !make_affine;
    }
    ReducedWord::from_letters(letters).expect("alternating construction is reduced")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ExactScalar;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    type Q = ExactScalar;

    fn int(n: i64) -> Q {
        Q::from_int(n)
    }

    fn henon_map() -> PolyMap2<Q> {
        // (w, w² - z)
        PolyMap2::new(
            BiPoly::var_w(),
            BiPoly::from_terms([((0, 2), int(1)), ((1, 0), int(-1))]),
        )
    }

    #[test]
    fn recompose_empty_is_identity() {
        let w = ReducedWord::<Q>::identity();
        assert!(w.recompose().unwrap().is_identity());
    }

    #[test]
    fn recompose_hand_examples() {
        // e(z,w) = (-z + w², w)
        let e = ElementaryMap::new(
            int(-1),
            UniPoly::new(vec![int(0), int(0), int(1)], 'w'),
            int(1),
            int(0),
        )
        .unwrap();
        // [τ, e] composes to τ∘e = (w, -z + w²) = (w, w² - z)
        let w1 = ReducedWord::from_letters(vec![
            WordLetter::Affine(AffineMap::swap()),
            WordLetter::Elementary(e.clone()),
        ])
        .unwrap();
        assert_eq!(w1.recompose().unwrap(), henon_map());

        // [e, τ] composes to e∘τ = (-w + z², z)
        let w2 = ReducedWord::from_letters(vec![
            WordLetter::Elementary(e),
            WordLetter::Affine(AffineMap::swap()),
        ])
        .unwrap();
        let expected = PolyMap2::new(
            BiPoly::from_terms([((2, 0), int(1)), ((0, 1), int(-1))]),
            BiPoly::var_z(),
        );
        assert_eq!(w2.recompose().unwrap(), expected);
    }

    #[test]
    fn decompose_identity_is_empty() {
        let word = decompose(&PolyMap2::<Q>::identity()).unwrap();
        assert!(word.is_empty());
    }

    #[test]
    fn decompose_henon_is_length_two() {
        let word = decompose(&henon_map()).unwrap();
        assert_eq!(word.len(), 2);
        assert_eq!(word.letters()[0].group(), LetterGroup::Affine);
        assert_eq!(word.letters()[1].group(), LetterGroup::Elementary);
        assert_eq!(word.recompose().unwrap(), henon_map());
    }

    #[test]
    fn decompose_rejects_non_automorphism() {
        // (z², w) has Jacobian 2z, nonconstant
        let m = PolyMap2::new(BiPoly::from_terms([((2, 0), int(1))]), BiPoly::var_w());
        assert!(matches!(decompose(&m), Err(WordError::NotAutomorphism(_))));
    }

    #[test]
    fn decompose_elementary_is_single_letter() {
        // (z + w³, w)
        let m = PolyMap2::new(
            BiPoly::from_terms([((1, 0), int(1)), ((0, 3), int(1))]),
            BiPoly::var_w(),
        );
        let word = decompose(&m).unwrap();
        assert_eq!(word.len(), 1);
        assert_eq!(word.letters()[0].group(), LetterGroup::Elementary);
    }

    #[test]
    fn round_trip_random_words() {
        let mut rng = StdRng::seed_from_u64(42);
        for trial in 0..40 {
            let len = 1 + (trial % 6);
            let word = random_reduced_word(&mut rng, len, 3);
            let m = word.recompose().unwrap();
            let back = decompose(&m).unwrap();
            assert_eq!(back.recompose().unwrap(), m, "trial {trial}");
            assert_eq!(back.len(), word.len(), "length preserved, trial {trial}");
            back.validate().unwrap();
            // degree multiplicativity along the word
            assert_eq!(
                m.total_degree().unwrap_or(0) as u64,
                word.degree(),
                "degree formula, trial {trial}"
            );
        }
    }

    #[test]
    fn normal_form_of_henon_is_itself() {
        let nf = henon_normal_form(&henon_map()).unwrap();
        match nf {
            HenonNormalForm::Henon {
                composition,
                conjugator,
            } => {
                assert!(conjugator.is_identity());
                assert_eq!(composition.as_map().unwrap(), henon_map());
                assert_eq!(composition.factors().len(), 1);
            }
            other => panic!("expected Hénon form, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_of_twisted_root() {
        // F∘s with F = (w, z + w²), s = (ω²z, ωw): equals (ωw, ω²z + ω²w²)
        let w3 = Q::primitive_root(3);
        let w3sq = w3.mul(&w3);
        let m = PolyMap2::new(
            BiPoly::monomial(w3.clone(), 0, 1),
            BiPoly::from_terms([((1, 0), w3sq.clone()), ((0, 2), w3sq.clone())]),
        );
        let nf = henon_normal_form(&m).unwrap();
        match nf {
            HenonNormalForm::Henon {
                composition,
                conjugator,
            } => {
                assert_eq!(composition.factors().len(), 1);
                assert!(composition.factors()[0].p().is_monic());
                assert!(conjugator.matrix[0][1].is_zero());
                assert!(conjugator.matrix[1][0].is_zero());
                let lhs = conjugator
                    .inverse()
                    .as_map()
                    .compose(&composition.as_map().unwrap())
                    .unwrap()
                    .compose(&conjugator.as_map())
                    .unwrap();
                assert_eq!(lhs, m);
            }
            other => panic!("expected Hénon form, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_of_elementary_map() {
        let m = PolyMap2::new(
            BiPoly::from_terms([((1, 0), int(1)), ((0, 3), int(1))]),
            BiPoly::var_w(),
        );
        match henon_normal_form(&m).unwrap() {
            HenonNormalForm::ConjugateToElementary { conjugator } => {
                assert!(conjugator.unwrap().is_identity());
            }
            other => panic!("expected elementary verdict, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_of_affine_letter() {
        // τ itself: affine, not elementary; triangularizes over Q
        let m = PolyMap2::<Q>::swap();
        match henon_normal_form(&m).unwrap() {
            HenonNormalForm::ConjugateToElementary { conjugator } => {
                let p = conjugator.expect("eigenvalues ±1 stay rational");
                let conj = p.inverse().compose(&AffineMap::swap()).compose(&p);
                assert!(conj.is_elementary());
            }
            other => panic!("expected elementary verdict, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_recovers_affine_conjugations() {
        // conjugating a monic composition by a random affine map must come
        // back as an exactly verified Hénon form of the same factor count
        let mut rng = StdRng::seed_from_u64(77);
        for trial in 0..18 {
            let n_factors = 1 + (trial % 3);
            let mut factors = vec![];
            for _ in 0..n_factors {
                let deg = 2 + ((trial / 3) % 2);
                let mut coeffs: Vec<Q> =
                    (0..deg).map(|_| int(rng.random_range(-2..=2i64))).collect();
                coeffs.push(int(1));
                let a = int(rng.random_range(1..=2i64) * if rng.random() { 1 } else { -1 });
                factors.push(crate::henon::HenonFactor::new(UniPoly::new(coeffs, 'w'), a).unwrap());
            }
            let comp = HenonComposition::new(factors).unwrap();
            let conj = loop {
                let e = |rng: &mut StdRng| int(rng.random_range(-2..=2i64));
                let m = [[e(&mut rng), e(&mut rng)], [e(&mut rng), e(&mut rng)]];
                let t = [e(&mut rng), e(&mut rng)];
                if let Ok(l) = AffineMap::new(m, t) {
                    break l;
                }
            };
            let m = conj
                .inverse()
                .as_map()
                .compose(&comp.as_map().unwrap())
                .unwrap()
                .compose(&conj.as_map())
                .unwrap();
            match henon_normal_form(&m).unwrap() {
                HenonNormalForm::Henon {
                    composition,
                    conjugator,
                } => {
                    assert_eq!(
                        composition.factors().len(),
                        comp.factors().len(),
                        "trial {trial}: factor count preserved"
                    );
                    let back = conjugator
                        .inverse()
                        .as_map()
                        .compose(&composition.as_map().unwrap())
                        .unwrap()
                        .compose(&conjugator.as_map())
                        .unwrap();
                    assert_eq!(back, m, "trial {trial}: exact conjugation identity");
                }
                other => panic!("trial {trial}: expected Hénon form, got {other:?}"),
            }
        }
    }

    #[test]
    fn normal_form_with_cyclotomic_conjugator() {
        // conjugate by a diagonal with sixth-root entries mixed with a swap:
        // the rescaling system must solve inside the cyclotomic field
        let z6 = Q::primitive_root(6);
        let factor =
            crate::henon::HenonFactor::new(UniPoly::new(vec![int(1), int(0), int(1)], 'w'), int(2))
                .unwrap();
        let comp = HenonComposition::single(factor);
        let l = AffineMap::new(
            [[z6.clone(), Q::zero()], [Q::zero(), z6.mul(&z6)]],
            [int(1), int(-1)],
        )
        .unwrap()
        .compose(&AffineMap::swap());
        let m = l
            .inverse()
            .as_map()
            .compose(&comp.as_map().unwrap())
            .unwrap()
            .compose(&l.as_map())
            .unwrap();
        match henon_normal_form(&m).unwrap() {
            HenonNormalForm::Henon {
                composition,
                conjugator,
            } => {
                assert!(composition.factors()[0].p().is_monic());
                let back = conjugator
                    .inverse()
                    .as_map()
                    .compose(&composition.as_map().unwrap())
                    .unwrap()
                    .compose(&conjugator.as_map())
                    .unwrap();
                assert_eq!(back, m);
            }
            other => panic!("expected Hénon form, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_declines_elementary_sandwiches() {
        // E ∘ τ ∘ E' is cyclically reducible only through an elementary
        // letter, so no affine conjugation brings it to Hénon form
        let e1 = ElementaryMap::new(
            int(1),
            UniPoly::new(vec![int(0), int(0), int(1)], 'w'),
            int(1),
            int(0),
        )
        .unwrap();
        let e2 = ElementaryMap::new(
            int(1),
            UniPoly::new(vec![int(0), int(0), int(0), int(1)], 'w'),
            int(1),
            int(0),
        )
        .unwrap();
        let m = e1
            .as_map()
            .compose(&PolyMap2::swap())
            .unwrap()
            .compose(&e2.as_map())
            .unwrap();
        match henon_normal_form(&m).unwrap() {
            HenonNormalForm::RequiresPolynomialConjugation { reduced_length } => {
                assert_eq!(reduced_length, 3);
            }
            other => panic!("expected the polynomial-conjugation verdict, got {other:?}"),
        }
    }

    #[test]
    fn normal_form_of_two_factor_composition() {
        let h = henon_map();
        let hh = h.compose(&h).unwrap();
        match henon_normal_form(&hh).unwrap() {
            HenonNormalForm::Henon {
                composition,
                conjugator,
            } => {
                assert_eq!(composition.factors().len(), 2);
                assert!(conjugator.is_identity());
                assert_eq!(composition.as_map().unwrap(), hh);
            }
            other => panic!("expected Hénon form, got {other:?}"),
        }
    }
}
