//! Values of `L(s, chi)`, `L(s, f x chi)` and `L(s, f)`.
//!
//! The production evaluators are the approximate functional equations; each
//! has an independent oracle (Hurwitz zeta for `L(s, chi)`, an extrapolated
//! exponentially smoothed series for the Maass twists). The Voronoi
//! validator compares both sides of the `GL(2)` Voronoi formula.

mod afe;
mod hurwitz;
mod smoothed;
mod voronoi;

pub use afe::{l_chi_afe, l_twisted_afe, AfeConfig, AfeResult, DirichletAfe, TwistedAfe};
pub use hurwitz::{hurwitz_zeta, l_chi_hurwitz, HurwitzValue};
pub use smoothed::{l_f, l_twisted_smoothed, LadderValue, LfMethod, LfValue, DEFAULT_LF_TOL};
pub use voronoi::{verify_voronoi, VoronoiCheck, VoronoiConfig, VoronoiKernels};

use crate::characters::Character;
use crate::error::{Error, Result};

/// The evaluators are stated for even primitive characters only.
pub(crate) fn require_even_primitive(chi: &Character) -> Result<()> {
    let kind = if chi.is_principal() {
        "principal"
    } else if !chi.is_even() {
        "odd"
    } else {
        return Ok(());
    };
    Err(Error::CharacterKind {
        index: chi.index(),
        q: chi.table().q(),
        kind,
        needed: "an even primitive",
    })
}
