pub mod curve;
pub mod error;
pub mod expr;
pub mod numerics;
pub mod indicatrix;
pub mod direction;
pub mod catalog;
pub mod classify;
pub mod report;
pub mod svg;
pub mod cli;
