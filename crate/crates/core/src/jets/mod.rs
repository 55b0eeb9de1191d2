//! Exact truncated-jet engine: exponential maps solved order by order from
//! their flow equations, the flat connection they induce, hats of vector
//! fields, and machine checks of the identities the construction obeys.

mod chart;
pub mod data;
mod exp;
mod gro;
mod hat;
pub mod rwhol;
mod t1m;

pub use chart::{
    BundleData, ConnectionData, JetChart, JetError, Orders, PolyMat, CLASS_GRADED, CLASS_XI,
    CLASS_Y,
};
pub use exp::{
    adopt, exp_geodesic, exp_graded, exp_orthonormal, exp_symplectic, geodesic_closed_form,
    graded_combo, map_matches_through, pullback_omega, sfr_tensor, JetMap,
};
pub use gro::{
    body_closed_form, bundle_curvature, check_flatness, graded_closed_form, grothendieck,
    nabla_f, FlatnessReport, GroConn,
};
pub use hat::{
    base_action, check_hat_closed_form, check_hat_variation, check_key_identity,
    check_variation_identity, hat, hat_closed_form, pushforward, variation_generator_bundle,
    variation_generator_metric, IdentityReport,
};
pub use t1m::{nabla_riemann, qhat_closed_form, qhat_t1m, t1m_connection, t1m_q};
pub use vf::VectorField;

mod vf;
