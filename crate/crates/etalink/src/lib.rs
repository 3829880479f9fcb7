//! Batch front end: loads link files, runs the invariant pipelines and
//! renders reports as text or JSON.

mod error;
mod input;
mod plus;
mod report;

pub use error::CliError;
pub use input::{load, parse_input, read_list, Input, Presentation};
pub use plus::{eta_plus, reconstruct};
pub use report::{
    betas_report, chirality_report, compute_eta, eta_report, expr_report, invariants_report, parse_report, table_row,
    BetasReport, ChiralityReport, EtaReport, ExprReport, InvariantsReport, Options, ParseReport, Report, Role,
    TableReport, TableRow,
};

/// Per-link commands.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LinkCommand {
    Parse,
    Invariants,
    Eta,
    Betas,
    Chirality,
}

impl LinkCommand {
    pub fn name(self) -> &'static str {
        match self {
            LinkCommand::Parse => "parse",
            LinkCommand::Invariants => "invariants",
            LinkCommand::Eta => "eta",
            LinkCommand::Betas => "betas",
            LinkCommand::Chirality => "chirality",
        }
    }
}

/// Run one per-link command.
pub fn run_link(cmd: LinkCommand, input: &Input, opts: &Options) -> Result<Report, CliError> {
    Ok(match cmd {
        LinkCommand::Parse => Report::Parse(parse_report(input)?),
        LinkCommand::Invariants => Report::Invariants(invariants_report(input)?),
        LinkCommand::Eta => Report::Eta(eta_report(input, opts)?),
        LinkCommand::Betas => Report::Betas(betas_report(input, opts)?),
        LinkCommand::Chirality => Report::Chirality(chirality_report(input, opts)?),
    })
}
