//! Exact certification of periodic orbits of the three-worker map, and
//! floating-point scouting to propose them.

mod cert_io;
mod certify;
mod homogeneous;
mod scout;
mod search;

pub use cert_io::{
    certificate_from_json, certificate_to_json, read_certificate, write_certificate, CertificateFile,
    ParamsRecord,
};
pub use certify::{
    certify_cycle, compose_affine, CellItinerary, CertifyError, ComposedAffine, CycleCertificate,
    FULL_STATES_LIMIT,
};
pub use scout::{
    find_certified_cycle, float_itinerary, scout_orbit, FloatMap, FloatPoint, ScoutCandidate,
    SCOUT_EPSILON_EXP, SCOUT_PRECISION,
};
pub use search::{
    near_return_search, search_cycle_of_period, simplex_grid, NearReturn, NearReturnOptions,
    PeriodSearchOptions, PeriodSearchOutcome,
};
