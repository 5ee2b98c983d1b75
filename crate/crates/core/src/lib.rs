//! Exact toolkit for piecewise-linear interval maps: composition and
//! iteration, periodic orbits and the Sharkovsky ordering, covering chains
//! and crossing growth, ReLU networks as PWL functions, and depth/width
//! lower-bound experiments.
//!
//! Everything is generic over a [`Scalar`] type; the aliases below fix it to
//! arbitrary-precision rationals, which is what the analysis code uses.
//!
//! ```
//! use sharkdepth::{maps, int, ratio};
//!
//! let t = maps::tent(int(2)).unwrap();
//! let cycles = sharkdepth::find_cycles(&t, 3, 1 << 16).unwrap();
//! assert_eq!(cycles[0].points(), &[ratio(2, 9), ratio(4, 9), ratio(8, 9)]);
//! ```

pub mod bounds;
pub mod covering;
pub mod dynamics;
pub mod error;
pub mod format;
pub mod maps;
pub mod pwl;
pub mod relu;
pub mod scalar;
pub mod spectral;

pub use bounds::{
    build_alternating_dataset, classification_error, oracle_min_error, tradeoff_table, verify_error_bound,
    BoundReport, LabeledDataset, TradeoffRow,
};
pub use covering::{
    build_covering_graph, crossing_vector, extract_chain, interval_crossings, ChainAnalysis, CoveringChain,
    CoveringGraph, CrossingVector,
};
pub use dynamics::{
    find_cycles, prime_period, sharkovsky_cmp, sharkovsky_precedes, verify_forcing, Cycle, SharkovskyKey,
};
pub use error::{Error, Result};
pub use pwl::{Interval, PwlFunction, DEFAULT_BREAKPOINT_CAP};
pub use relu::{compile_tent, extract_pwl, piece_bound, Activation, Layer, ReluNetwork};
pub use scalar::{format_rational, int, parse_rational, ratio, Rational, Scalar};
pub use spectral::{matrix_power_rowsum, rho, Matrix};

pub type Pwl = PwlFunction<Rational>;
pub type RatInterval = Interval<Rational>;
pub type RatCycle = Cycle<Rational>;
pub type Network = ReluNetwork<Rational>;
pub type Dataset = LabeledDataset<Rational>;
