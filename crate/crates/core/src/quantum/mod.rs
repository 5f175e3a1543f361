//! Born-rule simulation of small networks of pure sources with local POVMs,
//! plus the explicit quantum constructions used elsewhere in the crate.

mod constructions;
mod measurement;
mod network;
mod state;

pub use constructions::{
    canonical_tripartite_state, central_basis, chain_realization, random_chain_spec, star_amplitude,
    star_network_distribution, star_network_spec, tripartite_spec, CanonicalFamily, StarMode, FOURIER_BLOCKS,
};
pub use measurement::{CMatrix, MeasurementSet, MEASUREMENT_TOL};
pub use network::{born_distribution, NetworkSpec, Party, MAX_NETWORK_DIM};
pub use state::{schmidt_decomposition, PureState, SchmidtDecomposition, SCHMIDT_RANK_TOL, STATE_TOL};
