//! Library side of the `sbcodes` binary: figure tables, CSV/SVG output,
//! the verification suite and command implementations.

pub mod commands;
pub mod figures;
pub mod table;
pub mod verify;
