//! Flat Weyl-algebra model: Moyal product on polynomials in y₁…y₂ₙ and ħ,
//! and the γ-twisted Koszul complex computing twisted Hochschild cohomology.

pub mod koszul;
pub mod moyal;

pub use koszul::{
    check_psi_conjugation, check_psi_cup, class_equal_mod_exact, koszul_cohomology_dims, koszul_d, psi_generator, twisted_cup_koszul, KoszulChain,
    SpElement, SymplecticGroup,
};
pub use moyal::{moyal, Mono, WeylPoly};
