//! Computational core for bigraded differential algebras over ℤ/p and ℤ/p²,
//! the mod 2 Steenrod algebra, and minimal resolutions computing
//! `Ext_𝒜(𝔽₂, 𝔽₂)`.

pub mod algebra;
pub mod bigraded;
pub mod coeffs;
pub mod gstar;
pub mod resolution;
pub mod steenrod;
