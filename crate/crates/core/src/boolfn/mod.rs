//! Boolean functions on `Z_2^n`: truth tables, spectra, influences and
//! hidden shift instances.

mod families;
mod influence;
mod instance;
mod io;
mod spectrum;
mod truth_table;

pub use families::{make_bent, make_delta, make_random};
pub use influence::{
    influence_of, influence_profile, influence_spectral, self_shift, well_posed, InfluenceProfile,
};
pub use instance::{BhspInstance, QueryCounts};
pub use io::{format_truth_table, from_file, parse_truth_table};
pub use spectrum::{fwht_in_place, wht, wht_exact, Spectrum};
pub use truth_table::{inner, TruthTable, MAX_N};
