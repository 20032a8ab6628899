pub mod continue_path;
pub mod counterexample;
pub mod extend;
pub mod identities;
pub mod repr;
pub mod topology;

use crate::config::{CommandName, JobConfig};
use crate::error::CliResult;
use crate::report::Report;

pub fn dispatch(cmd: CommandName, cfg: &JobConfig) -> CliResult<Report> {
    match cmd {
        CommandName::VerifyIntertwine => identities::intertwine(cfg),
        CommandName::VerifyConjugation => identities::conjugation(cfg),
        CommandName::ReprEval => repr::run(cfg),
        CommandName::Extend => extend::run(cfg),
        CommandName::ContinuePath => continue_path::run(cfg),
        CommandName::Counterexample => counterexample::run(cfg),
        CommandName::Topology => topology::run(cfg),
    }
}
