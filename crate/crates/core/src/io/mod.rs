//! Game-spec documents, built-in fixtures, candidate profiles and report rendering.

pub mod document;
pub mod fixtures;
pub mod profile;
pub mod report;

pub use document::{load_spec, parse_gamespec, GameSpecDocument};
pub use fixtures::{
    fixture, fixture_profile, fixture_spec, profile_names, FixtureParams, Miscoordination,
};
pub use profile::{parse_profile, ProfileDocument};
pub use report::{parse_report, Report, ReportDocument};
