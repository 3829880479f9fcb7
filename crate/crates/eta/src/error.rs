use thiserror::Error;

#[derive(Debug, Error)]
pub enum EtaError {
    #[error(transparent)]
    Diagram(#[from] diagram::DiagramError),
    #[error(transparent)]
    Laurent(#[from] laurent::LaurentError),
    #[error(transparent)]
    Conway(#[from] conway::ConwayError),
    #[error(transparent)]
    Cover(#[from] cover::CoverError),
    #[error("linking number of components {0} and {1} is {2}, not zero")]
    NonzeroLinking(usize, usize, i64),
    #[error("need two distinct components, got {0} and {1}")]
    BadRoles(usize, usize),
    #[error(
        "step at crossing {crossing} expects sign {expected_sign} and n = {expected_n}, diagram has {sign} and {n}"
    )]
    StepMismatch {
        crossing: usize,
        expected_sign: i32,
        expected_n: u64,
        sign: i32,
        n: u64,
    },
    #[error("the switched diagram could not be certified as split")]
    NotSeparated,
    #[error("no unknotting set of at most {max_switches} crossings found in {candidates} candidates")]
    SearchExhausted { max_switches: usize, candidates: usize },
    #[error("second component could not be drawn without self-crossings after {0} unknotting sets")]
    EncirclingUnreachable(usize),
    #[error("result {0} is not symmetric or does not vanish at t = 1")]
    Invalid(String),
}
