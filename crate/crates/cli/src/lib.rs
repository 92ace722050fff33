pub mod config;
pub mod figures;
pub mod output;
