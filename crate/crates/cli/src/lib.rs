//! Scenario language, report format and numerical checks behind the
//! `liouville` command.

pub mod points;
pub mod report;
pub mod run;
pub mod scenario;
pub mod verify;

pub use report::{Line, Report, Status};
pub use run::{run_scenario, RunOutput};
pub use scenario::{parse_scenario, ErrorCode, Pos, Scenario, ScenarioError};
pub use verify::Settings;
