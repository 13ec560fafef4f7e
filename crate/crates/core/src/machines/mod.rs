//! Machine models whose traces compiled tilings must reproduce.

pub mod eca;
pub mod tag;
pub mod tm;

pub use eca::{eca_run, eca_step, format_bits, parse_bits, permutivity, Boundary, EcaRule, PermutivityClass};
pub use tag::{tag_run, tag_step, TagState, TagStep, TagSystem, TagTrace};
pub use tm::fixtures;
pub use tm::{tm_run, tm_step, HaltKind, Move, Rule, StepResult, TmConfig, TmError, TmTrace, TuringMachine, HALT};
