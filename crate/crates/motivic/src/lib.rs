//! Exact computer algebra for the mod-2 R-motivic Steenrod algebra `A^R`
//! over the ground ring `M = F₂[τ, ρ]`.
//!
//! The crate provides:
//!
//! * [`ground`] — the bigraded ring `M = F₂[τ,ρ]` and the Steenrod action on
//!   its elements (`Sq¹τ = ρ`, extended by the motivic Cartan formula).
//! * [`steenrod`] — elements of `A^R` with left `M`-coefficients, Adem
//!   normalization to admissible form, products, Milnor primitives
//!   `Q₀, Q₁, Q̃₂, Q₂`, bases of the subalgebras `A^R(1)` and `A^R(2)`, and
//!   the specializations to the C-motivic and classical Steenrod algebras.
//! * [`classical`] — an independent implementation of the classical mod-2
//!   Steenrod algebra and finite modules over it (used both as the target of
//!   the specialization functors and as a cross-check oracle).
//! * [`fmodule`] — finite free bigraded `M`-modules with `A^R`-action tables,
//!   Cartan evaluation, Adem-consistency validation, the enumeration of the
//!   128 `A^R`-module structures on `A^R(1)`, cofiber splittings, Margolis
//!   homology and freeness certificates.
//! * [`realize`] — the underlying (`τ↦1, ρ↦0`) and geometric-fixed-point
//!   (`τ↦0, ρ↦1`, `Sq^{2n} ↦ Sqⁿ`, degree `s−w`) specialization functors.
//! * [`smith`] — the Smith construction: the Young symmetrizer
//!   `ē ∈ F₂[Σ₆]`, the complex `K`, the tensor power `K^⊗6`, the module
//!   `A₂^R = Σ^{−5,−1} ē(K^⊗6)`, the `ι`-action table, and `B̃^R(2)`.
//! * [`obstruction`] — decidable May-E₁ vanishing-window scans for the
//!   Toda realization and uniqueness criteria.
//! * [`a1cls`] — orchestration: named end-to-end theorem verifications with
//!   machine-readable reports.
//! * [`text`] — the CLI text grammar for Steenrod expressions
//!   (`t^a r^b Sq4 Sq2 + …`).
//!
//! Grading convention: cohomological throughout, so `τ` has bidegree `(0,1)`,
//! `ρ` has bidegree `(1,1)`, `Sq^{2i}` has bidegree `(2i, i)` and `Sq^{2i+1}`
//! has bidegree `(2i+1, i)`.

pub mod a1cls;
pub mod classical;
pub mod fmodule;
pub mod ground;
pub mod linalg;
pub mod obstruction;
pub mod realize;
pub mod smith;
pub mod steenrod;
pub mod text;
