//! Deletion-duplication channel (DDC) toolkit.
//!
//! The DDC deletes each input bit with probability `p_d` or emits it `r >= 1`
//! times with probability `p_t * p_i^(r-1)`, where `p_t = (1 - p_d)(1 - p_i)`.
//! The crate models it both as a per-symbol string channel and as a channel
//! driven by an integer drift (state) process, and evaluates analytical
//! capacity lower bounds for the binary deletion channel (`p_i = 0`) and the
//! sticky channel (`p_d = 0`).
//!
//! Module map:
//!
//! * [`channel`]: channel parameters, exact output distributions by both
//!   formulations, sampling, and the drift-process pmfs.
//! * [`subsequence`]: subsequence weights, the first-state posterior and the
//!   Markov-1 weight distribution.
//! * [`bdc`]: Proposition-style sandwich, the `L_i` ladder, the closed-form
//!   `L_2`, the single-deletion family and their Markov-1 variants.
//! * [`sticky`]: sticky-channel lower bound, exact Markov-1 rate and the
//!   `1 - p` scan.
//! * [`oracle`]: brute-force enumeration used to cross-check everything else.
//!
//! Grid sweeps and enumerations are data-parallel through [`exec::Exec`];
//! building without the `parallel` feature turns every parallel map into a
//! sequential loop.

pub mod bdc;
pub mod channel;
pub mod error;
pub mod exec;
pub mod math;
pub mod optimize;
pub mod oracle;
pub mod pmf;
pub mod seq;
pub mod series;
pub mod sticky;
pub mod subsequence;

pub use channel::ChannelParams;
pub use error::{Error, Result};
pub use exec::Exec;
pub use pmf::IntegerPmf;
pub use seq::BinarySeq;
pub use series::{SeriesSpec, SeriesValue};
