//! Garment draping toolkit built around implicit surfaces.
//!
//! Garments are represented as inflated signed-distance fields decoded by a
//! latent-conditioned network, draped over an articulated body with a learned
//! skinning field, and recovered jointly with body parameters from silhouette
//! images. Everything runs on procedurally generated synthetic data.

pub mod autodiff;
pub mod body;
pub mod cli;
pub mod config;
pub mod fitting;
pub mod garment_sdf;
pub mod geometry;
pub mod rng;
pub mod skinning;
pub mod synthdata;
