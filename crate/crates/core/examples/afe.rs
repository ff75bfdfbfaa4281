//! L(s0, chi) by the approximate functional equation against Hurwitz zeta,
//! and the twisted value L(s0, f x chi).

use moment_forge::characters::{CharacterTable, Parity};
use moment_forge::lfunc::{l_chi_afe, l_chi_hurwitz, l_twisted_afe, AfeConfig};
use moment_forge::maass::bundled_form;
use moment_forge::special::EvaluationPoint;

fn main() -> moment_forge::Result<()> {
    let cfg = AfeConfig::default();
    let point = EvaluationPoint::new(0.6, 1.0)?;
    let table = CharacterTable::new(11)?;
    for j in table.enumerate(Parity::Even, true) {
        let chi = table.character(j);
        let afe = l_chi_afe(&point, &chi, &cfg)?;
        let hurwitz = l_chi_hurwitz(point.s0(), &chi)?;
        let twisted = l_twisted_afe(&point, bundled_form(), &chi, &cfg)?;
        println!(
            "chi_{j}: L = {:.10}, gap to Hurwitz {:.1e}, L(f x chi) = {:.8} ({} + {} terms)",
            afe.value,
            (afe.value - hurwitz.value).norm(),
            twisted.value,
            twisted.first_sum_terms,
            twisted.second_sum_terms
        );
    }
    Ok(())
}
