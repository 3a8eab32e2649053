//! Library surface of the `gfkit` command-line tool: the JSON report types,
//! shared with the integration tests.

pub mod report;
