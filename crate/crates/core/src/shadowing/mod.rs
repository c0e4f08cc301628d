//! Shadowing of pseudo-orbits by sets of at most two points.

pub mod construct;
pub mod params;
pub mod schedule;
pub mod search;
pub mod splice;
pub mod verify;

pub use construct::{
    construct_pair, construct_pair_mixing, construct_pair_mixing_forward, construct_pair_qft, Bridge, Method,
    ShadowPair,
};
pub use params::{BlockParams, BlockSchedule, IndexSchedule, PointTrack, ScheduleVariant};
pub use schedule::{construct_pair_schedule, required_delta, schedule_step};
pub use search::{search_shadow_sets, SearchOptions, SearchOutcome, SearchStats};
pub use splice::{
    two_loop_splice, four_vertex_crossing_splice, make_spliced_pseudo_orbit, random_point, random_splice, two_loop_recolorings, Splice,
};
pub use verify::{follows, verify_shadow_set, DiameterCheck, IndexMatch, ShadowCertificate, ShadowVerdict, VerifyOptions};
