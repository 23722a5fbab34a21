pub mod error;
pub mod expr;
pub mod geometry;
pub mod linalg;
pub mod tripathi;
pub mod warped;
pub mod audit;
pub mod fixtures;
pub mod random;
pub mod report;
pub mod scenario;
pub mod cli;
