//! Protocols assembled from binding measurements: teleportation of a
//! sector-encoded qutrit, the `τ = 0` projection cascade, and binding
//! probabilities of singlet-linked Posner pairs.

mod binding;
mod cascade;
mod phi;
mod teleport;

pub use binding::{
    binding_probability, binding_probability_exact, bloch_image, haar_rotation, haar_unitary,
    random_rotation_average, rotated_binding_probability, RotationAverage, SingletPattern,
};
pub use cascade::{
    cascade_schedule, check_cascade_identity, table_tau_zero_projector, tau_zero_cascade, CascadeIdentityCheck,
    CascadeReport, CascadeStep,
};
pub use phi::{phi_theta_weights, prepare_phi_theta, TauQutritBasis, POSNER};
pub use teleport::{
    check_teleport_branches, failure_distribution, incoherent_teleport, random_coefficients, recover_input_weights,
    success_distribution, teleport_branches, TeleportCheck, TeleportResult, TeleportSummary,
};
