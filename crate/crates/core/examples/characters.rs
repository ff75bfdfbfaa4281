//! Even primitive characters mod 13, their Gauss sums, and a Kloosterman sum
//! against the Weil bound.

use moment_forge::characters::{CharacterTable, Parity};

fn main() -> moment_forge::Result<()> {
    let table = CharacterTable::new(13)?;
    println!("q = {}, generator {}, phi = {}", table.q(), table.modulus().generator(), table.phi());
    for j in table.enumerate(Parity::Even, true) {
        let chi = table.character(j);
        let tau = chi.gauss_sum();
        println!("chi_{j}: chi(2) = {:.6}, |tau| = {:.12}", chi.value(2), tau.norm());
    }
    let s = table.kloosterman(3, 5);
    println!("S(3, 5; 13) = {s:.6}, Weil bound {:.6}", 2.0 * 13f64.sqrt());
    Ok(())
}
