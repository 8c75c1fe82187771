//! Analyses over built games: complete cooperation, equilibrium partitions and
//! trajectory simulation, the K* stability criterion, and cooperative-game
//! cross-checks (characteristic function, core, Shapley value).

pub mod coop;
pub mod cooperation;
pub mod stability;
pub mod stochastic;

pub use coop::{
    characteristic_from_fn, core_empty, extract_characteristic, shapley_value,
    CharacteristicFunction, Convention, CoreVerdict, MAX_CORE_PLAYERS,
};
pub use cooperation::{cooperation_check, CooperationReport};
pub use stability::{stability_k_star, Policy, StabilityReport, StepVerdict};
pub use stochastic::{
    equilibrium_partitions, frequencies, is_stochastic, simulate, TrajectorySample,
};
