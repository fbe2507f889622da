//! Desk-scale pseudorandomness for Lipschitz functions of low-degree
//! polynomials, and short-code integrality-gap instances for the balanced
//! separator SDP.
//!
//! The crate is organized around five layers:
//!
//! * [`bits`], [`gf2p`], [`rm`] — GF(2) linear algebra and Reed-Muller
//!   codes: generator matrices, enumeration, duality, character coset
//!   degrees, and minimum-weight codeword samplers.
//! * [`prg`] — pairwise hash families, k-wise independent sign sources, the
//!   bounded-independence halfspace fooler, and the composed hashing
//!   generator together with its exact full-seed-space output law.
//! * [`poly`], [`dist`], [`fooling`] — sparse multilinear polynomials, exact
//!   one-dimensional transport distances, and the fooling-error lab
//!   (Wasserstein error, pruning/hybrid decomposition, tail bounds, the
//!   zeta invariance audit).
//! * [`graph`], [`stability`], [`gaussian`] — the short-code Cayley graph
//!   with its exact character spectrum, affine-shift folding, balanced
//!   separator search, influences and noise stability, and the Gaussian
//!   stability curve.
//! * [`clouds`] — the cloud system over folded graphs and the lifted
//!   SDP-feasible Gram, with balance/objective/gap evaluation.

pub mod bits;
pub mod clouds;
pub mod dist;
pub mod error;
pub mod fooling;
pub mod gaussian;
pub mod gf2p;
pub mod graph;
pub mod poly;
pub mod prg;
pub mod rm;
pub mod stability;

pub use bits::BitVector;
pub use dist::{kolmogorov, wasserstein1, DiscreteDistribution};
pub use error::{Error, Result};
pub use poly::MultilinearPolynomial;
pub use prg::{GeneratorOverrides, GeneratorParameters, HashingGenerator, KWiseSource, PairwiseHashFamily};
pub use rm::RmCode;
