use clap::Args;
use lqnash::exactalg::{parse_rational, Rational};
use lqnash::game::GameParams;

use crate::CliError;

/// Game parameters as exact rational literals (`3`, `-0.25`, `1e-4`, `7/2`).
#[derive(Debug, Clone, Args)]
pub struct GameArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub q2: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r1: String,
    #[arg(long, allow_hyphen_values = true)]
    pub r2: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub b1: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub b2: String,
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    pub x0: String,
}

fn field(name: &str, s: &str) -> Result<Rational, CliError> {
    parse_rational(s).map_err(|e| CliError::Invalid(format!("--{name}: {e}")))
}

impl GameArgs {
    /// Parsed and validated parameters.
    pub fn params(&self) -> Result<GameParams, CliError> {
        let p = GameParams::new(
            field("a", &self.a)?,
            field("q1", &self.q1)?,
            field("r1", &self.r1)?,
            field("q2", &self.q2)?,
            field("r2", &self.r2)?,
        )
        .with_b(field("b1", &self.b1)?, field("b2", &self.b2)?)
        .with_x0(field("x0", &self.x0)?);
        p.validate().map_err(|e| CliError::Invalid(e.to_string()))?;
        Ok(p)
    }
}
