//! Library surface of the command-line front-end, exposed so integration
//! suites can drive the commands in-process.

pub mod presets;
pub mod problem;
pub mod report;
pub mod run;
