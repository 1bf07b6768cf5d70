//! Medium-modified Casimir, Casimir-Polder and van der Waals forces for
//! planar magnetodielectric systems.
//!
//! Three planar configurations are covered, all at zero temperature and
//! evaluated on the imaginary-frequency axis:
//!
//! - a slab in front of a mirror, immersed in a magnetodielectric host
//!   ([`slab_forces`]): Minkowski force f, medium force f̃ and their sum;
//! - an atom embedded in the host near a mirror ([`atom_forces`]): f_A,
//!   f̃_A and the potential U_A(d);
//! - two atoms in a common host ([`pairwise`]): the generalized
//!   Feinberg-Sucher energy, its force, and the non-retarded/retarded
//!   limits.
//!
//! The modules cross-validate: the dilute-mirror route through the
//! atom-mirror force must agree with the half-space volume integral of the
//! pairwise energy ([`pairwise::mirror_consistency_check`]), and
//! [`validation`] bundles those oracles into a runnable suite.

pub mod atom_forces;
pub mod cli;
pub mod layers;
pub mod materials;
pub mod pairwise;
pub mod quadrature;
pub mod slab_forces;
pub mod units;
pub mod validation;
