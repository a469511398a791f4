//! Exact computation of every linear feedback Nash equilibrium of scalar
//! two-player discrete-time infinite-horizon LQ games.

pub mod degenerate;
pub mod exactalg;
pub mod game;
pub mod groebner;
pub mod oracle;
pub mod solver;
