//! Command-line front end: table and JSON rendering, the textual
//! polynomial/series grammar, and the subcommand driver.

pub mod app;
pub mod doc;
pub mod render;
pub mod textform;
