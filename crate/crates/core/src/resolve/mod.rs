//! Flag resolutions of differential modules and what they compute.

mod betti;
pub(crate) mod dense;
mod cone_flag;
mod deform;
mod degenerate;
mod flag;
mod lift;
mod mindm;
mod minimize;
mod stai;
mod structure;

pub use betti::{betti_counts, betti_dm, check_semicontinuity, homology_bound, BettiMethod, BettiTable};
pub use cone_flag::{flag_resolution_cone, flag_resolution_degreewise};
pub use deform::{closed_form_block, deformation_resolution, Deformation};
pub use degenerate::{degenerate, Degeneration, DeformationFamily, TValue};
pub use flag::{FlagResolution, FreeFlag, Provenance};
pub use lift::{compare_minimal, lift, Comparison, Lift};
pub use mindm::{minimal_free_resolution_dm, MinimalDM, MinimalMethod};
pub use minimize::{minimize, minimize_degreewise, Minimization};
pub use structure::{check_hilbert_burch, check_pfaffian_structure, determinant, pfaffian};
pub use stai::{flag_resolution_stai, Horseshoe};
