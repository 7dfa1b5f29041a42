//! Two-user downlink multiple access over reconfigurable mmWave antennas.
//!
//! The crate models five schemes side by side:
//!
//! | scheme | transmitter | receiver |
//! |---|---|---|
//! | NOMA | superposition coding, one broadcast beam | SIC at the stronger user |
//! | reconfigurable NOMA | superposed signal power-divided over two beams | SIC |
//! | RAMA-I | one RF signal, equal division, per-beam phase rotation (PSK) | plain detection |
//! | RAMA-II | one RF signal, unequal division, amplitude and phase per beam (QAM) | plain detection |
//! | OMA | OFDMA bandwidth split | plain detection |
//!
//! Modules, bottom up:
//!
//! * [`constellations`]: unit-power PSK/QAM alphabets and symbol relations.
//! * [`channel`]: link budgets, user ordering, seeded Rayleigh fading.
//! * [`transceiver`]: symbol-level transmit chains and reception.
//! * [`rates`]: closed-form achievable rates and sum-rate comparisons.
//! * [`region`]: Pareto frontiers of the rate regions.
//! * [`montecarlo`]: sum-rate sweeps over SNR grids, optionally fading-averaged.
//! * [`cli`]: experiment configs, CSV output and the `rama-sim` command line.

pub mod channel;
pub mod cli;
pub mod constellations;
pub mod error;
pub mod montecarlo;
pub mod rates;
pub mod region;
pub mod transceiver;

pub use channel::{ChannelState, LinkBudget, RngState, User};
pub use constellations::{make_psk, make_qam, relate, Constellation, SymbolRelation};
pub use error::{Error, Result};
pub use rates::{RatePair, Scheme};
pub use region::{pareto_filter, r2_at_r1, trace_region, RateRegion};
pub use transceiver::{PowerAllocation, TxSignal};
