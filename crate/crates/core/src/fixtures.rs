//! The three reference networks used across tests and examples.

use crate::document::parse_network;
use crate::graph::Network;

pub const K4_TEXT: &str = include_str!("../fixtures/fix-k4.json");
pub const PATH_TEXT: &str = include_str!("../fixtures/fix-path.json");
pub const WHEEL_TEXT: &str = include_str!("../fixtures/fix-wheel.json");

/// Complete graph on `a, b, m1, m2`.
pub fn k4() -> Network {
    parse_network(K4_TEXT).expect("k4 fixture")
}

/// The path `m1 - a - b - m2`.
pub fn path() -> Network {
    parse_network(PATH_TEXT).expect("path fixture")
}

/// Hub `h` joined to `c`, `d` and both monitors, with rim `c, m1, d, m2`.
pub fn wheel() -> Network {
    parse_network(WHEEL_TEXT).expect("wheel fixture")
}
