//! Deciding and computing coalition manipulations of sports competitions.
//!
//! A coalition of teams may throw games it would have won (or, under a
//! general scoring model, concede points it would have earned). This crate
//! answers whether that is enough to make a chosen team win, or a chosen team
//! lose, and finds plans that use as few thrown games as possible, for:
//!
//! - fixed single-elimination cups ([`cup`]),
//! - single round robins under Copeland or linear scoring ([`roundrobin`]),
//! - ranked-reseeding cups and double-elimination brackets with a bounded
//!   coalition ([`brackets`]).
//!
//! [`oracle`] holds exhaustive reference searches for small instances and
//! [`instance`] the plain-text instance format used by the command-line tool.

pub mod brackets;
pub mod cup;
pub mod error;
pub mod fixtures;
pub mod flow;
pub mod instance;
pub mod oracle;
pub mod roundrobin;
mod text;
pub mod tournament;

pub use error::{Error, InputError, Result};
pub use instance::{parse_instance, InstanceFile};
pub use tournament::{
    apply_plan, copeland_scores, manipulable_edges, normalize_scoring, validate_model_form, Coalition, Decision,
    ManipulableEdgeSet, ManipulationPlan, MinimalPlan, Move, Points, RestrictedGame, ScoringModel, Team,
    Tournament, TournamentBuilder,
};
