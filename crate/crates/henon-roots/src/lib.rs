//! Compositional roots of generalized Hénon maps.
//!
//! A generalized Hénon map is `H(z,w) = (w, p(w) - a·z)` with `p` monic of
//! degree at least 2 and `a ≠ 0`; the finite compositions of such maps form
//! the interesting class of plane polynomial automorphisms. This crate
//! decides and constructs compositional roots `F` with `F^n = H`, builds the
//! root families of the elementary non-flow maps, and verifies every
//! construction either exactly (symbolic composition over cyclotomic-rational
//! coefficients) or numerically (escape-time Green's functions).
//!
//! ## Layout
//!
//! - [`scalar`] — the two coefficient regimes: exact elements of cyclotomic
//!   fields and double-precision complex numbers, plus exact recognition of
//!   floating values (`snap_to_exact`).
//! - [`poly`] — dense univariate and sparse bivariate polynomials, plane
//!   maps, composition and iteration with a degree cap.
//! - [`henon`] — Hénon factors and compositions: explicit maps, inverses,
//!   degrees, certified escape radii.
//! - [`word`] — the amalgamated product of affine and elementary maps:
//!   reduced words, decomposition by degree peeling, Hénon normal form.
//! - [`roots`] — admissible root orders, exact verification, the diagonal
//!   symmetry family, and numeric root search by coefficient matching.
//! - [`elementary`] — roots of elementary non-flow maps: the `(lr+1)`-st
//!   root construction, the explicit nonpolynomial square root, the
//!   twisted-sum check, and the cohomological conjugation pipeline.
//! - [`green`] — numerical Green's functions `G±`, bounded-set
//!   classification, empirical bound constants, multiplier fitting.
//! - [`grid`] — escape-time and Green's function grids over planar slices,
//!   with PGM/CSV emission.
//! - [`cli`] — the map-expression language shared by the examples and the
//!   `henon-roots` binary.
//!
//! ## Examples
//!
//! Each major capability has a runnable example:
//!
//! ```text
//! cargo run --release -p henon-roots --example three_square_roots
//! cargo run --release -p henon-roots --example root_orders
//! cargo run --release -p henon-roots --example elementary_roots
//! cargo run --release -p henon-roots --example nonpolynomial_square_root
//! cargo run --release -p henon-roots --example conjugate_perturbed_root
//! cargo run --release -p henon-roots --example word_round_trip
//! cargo run --release -p henon-roots --example green_functional_equation
//! cargo run --release -p henon-roots --example escape_time_grid
//! ```
//!
//! The thin `henon-roots` binary exposes the same operations as subcommands;
//! see the README or `henon-roots --help`.
//!
//! ## A taste
//!
//! ```
//! use henon_roots::cli::parse_map;
//! use henon_roots::roots::{find_roots, RootSearchConfig};
//!
//! // H = F² for F(z,w) = (w, z + w²); it has exactly three square roots
//! let h = parse_map("henon(p=w^2, a=-1)^2")
//!     .unwrap()
//!     .expr
//!     .to_henon_composition()
//!     .unwrap();
//! let roots = find_roots(&h, 2, &RootSearchConfig::default()).unwrap();
//! assert_eq!(roots.len(), 3);
//! ```

pub mod cli;
pub mod elementary;
pub mod green;
pub mod grid;
pub mod henon;
pub mod poly;
pub mod roots;
pub mod scalar;
pub mod word;

pub use elementary::{ElementaryNonFlow, TriangularMap};
pub use green::{GreenEstimate, GreenParams, MultiplierFit, OrbitClass};
pub use henon::{HenonComposition, HenonFactor};
pub use poly::{BiPoly, PolyMap2, UniPoly};
pub use roots::{RootCandidate, RootSearchConfig, RootStatus};
pub use scalar::{ApproxScalar, ExactScalar, Scalar};
pub use word::{AffineMap, ElementaryMap, ReducedWord, WordLetter};
