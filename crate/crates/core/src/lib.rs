//! Non-cooperative coalition structure formation games.
//!
//! Players simultaneously announce a desired coalition structure (and, in
//! action-augmented games, an action); a formation rule turns the announcements
//! into a realized partition, and payoffs depend on that partition and the
//! action profile. `Γ(K)` bounds the coalition size by `K`, giving a nested
//! family of games `Γ(1) ⊂ … ⊂ Γ(N)`.

pub mod analysis;
pub mod equilibrium;
pub mod error;
pub mod game;
pub mod io;
pub mod linalg;
pub mod lp;
pub mod partition;
pub mod rational;

pub use error::{Diagnostic, Error, Result};
