//! Relay selection for joint information and energy transfer over
//! Rayleigh-faded decode-and-forward relays.
//!
//! A source reaches a destination through one of `N` relays, and the
//! selected relay's transmission also charges an energy harvester. Which
//! relay is picked sets both the end-to-end SNR and the harvested energy.
//! The crate provides the selection policies that trade capacity or outage against
//! harvested energy, the analytic expressions of their tradeoff curves, the
//! Pareto frontiers of the two-relay case and a Monte-Carlo engine to check
//! all of them.
//!
//! The analytic layer is generic over [`Real`] (`f32` or `f64`); the
//! integrators and the simulator work in `f64`. Aliases for the common
//! instantiations live at the crate root.

pub mod closedform;
pub mod error;
pub mod frontier;
pub mod model;
pub mod quadrature;
pub mod scalar;
pub mod schemes;
pub mod simulate;
pub mod specfun;

pub use error::{Error, Result};
pub use scalar::Real;

/// Double-precision system configuration.
pub type Config = model::SystemConfig<f64>;
/// Single-precision system configuration.
pub type Config32 = model::SystemConfig<f32>;
/// Double-precision channel frame.
pub type Frame = model::ChannelFrame<f64>;
/// Double-precision scheme parameter.
pub type Scheme = schemes::SchemeParam<f64>;
/// Double-precision tradeoff point.
pub type Point = closedform::TradeoffPoint<f64>;
