//! Core and support of parabolic subgroups, faraway and nearest faraway
//! flats, and the counting identities built on them.

pub mod context;
pub mod counts;
pub mod nearest;
pub mod report;

pub use context::{
    core_support_by_geometry, core_support_by_roots, default_sample_rate, in_sample, BuildOptions,
    Context, CoreSupport,
};
pub use counts::{
    average_faraway, beta_equivalence, beta_of, chapoton, chapoton_refined, coincidental_average,
    coincidental_check, constant_ratio, core_label, cores_of_type, double_counting_check, g_set,
    g_type, nfw_se, nfw_se_core, nu_identity, reduce_reducible, support_identity, theorem_pairs,
};
pub use nearest::{
    associated_faces, faraway_planes, nearest_faraway_by_definition, nearest_faraway_flats,
};
pub use report::{exact, CountReport, Exact};
