//! Quasilinearization (QLM) and WKB for the Riccati form of the Schrödinger
//! equation.
//!
//! * [`formal`]: exact differential-polynomial algebra and series in g.
//! * [`wkb`] / [`qlm`]: formal WKB series and QLM iterates, with the 2^p prefix law.
//! * [`numeric`]: QLM iterates on a grid for concrete potentials.
//! * [`spectra`]: exact, WKB and QLM energy levels for eleven solvable potentials.
//! * [`cli`]: the `qlmwkb` command set and the verification suite.

pub mod cli;
pub mod error;
pub mod fixtures;
pub mod formal;
pub mod numeric;
pub mod qlm;
pub mod spectra;
pub mod wkb;

pub use error::{Error, Result};
