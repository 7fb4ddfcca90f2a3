//! Job parsing and execution for the command-line tool.

pub mod jobspec;
pub mod run;

pub use jobspec::{parse_jobspec, Arg, Command, CommandKind, IdealSpec, JobSpec, Options, RingSpec};
pub use run::{canonical_strings, exit_code, run, Report};
