//! Hecke-Maass form data: the coefficient fixture format, Hecke-relation
//! validation, growth profiles and the remote-database client.

mod fetch;
mod fixture;
mod form;
mod profiles;

pub use fetch::{fetch_remote, FetchConfig, FetchOutcome, ENDPOINT_ENV, OFFLINE_ENV};
pub use fixture::{load_form, parse_fixture, render_fixture, write_fixture};
pub use form::{bundled_form, MaassForm, Parity, BUNDLED_LABEL};
pub use profiles::{rankin_selberg_profile, ramanujan_report, wilton_profile, RamanujanReport};
pub use fetch::{parse_payload, Origin};
