pub mod cli;
pub mod geometry;
pub mod knots;
pub mod par;
pub mod poly;
pub mod qholo;
pub mod tropical;
pub mod weyl;
