//! Brute-force checks that tie the constructions to exact counts: every
//! gluing tuple is tried, every generating tuple is counted.

mod census;
mod descent;
mod enumerate;
mod glue;
mod random;
mod selftest;

pub use census::{census_text, quotient_census, CensusEntry};
pub use descent::{cross_check_descent, DescentReport, NegativeControl};
pub use enumerate::{
    count_generating_tuples, enumerate_connected_covers, enumerate_connected_covers_with, witness_cover, Enumeration, ENUMERATION_BOUND,
};
pub use glue::{glue_properties, GlueReport};
pub use random::{random_configuration, RandomConfigOptions};
pub use selftest::{nodal_line, selftest, Section, SelftestOptions, SelftestReport};
