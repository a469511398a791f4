use std::io::Write;

use lqnash::game::{normalize, GameError};
use lqnash::groebner::groebner_check;
use lqnash::solver::solve_normalized;

use crate::report::SolveJson;
use crate::{CliError, GameArgs, OutputFormat};

pub fn cmd_solve(args: &GameArgs, format: OutputFormat, out: &mut dyn Write) -> Result<(), CliError> {
    let params = args.params()?;
    let doc = match normalize(&params) {
        Err(GameError::Trivial) => SolveJson::trivial(&params),
        Err(e) => return Err(CliError::Invalid(e.to_string())),
        Ok(norm) => SolveJson::from_report(&params, &solve_normalized(&norm)?),
    };
    let text = match format {
        OutputFormat::Json => doc.to_json(),
        OutputFormat::Table => doc.to_table(),
    };
    out.write_all(text.as_bytes())?;
    Ok(())
}

pub fn cmd_groebner_check(args: &GameArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let params = args.params()?;
    let norm = match normalize(&params) {
        Err(GameError::Trivial) => return Err(CliError::Invalid("a must be nonzero for groebner-check".into())),
        Err(e) => return Err(CliError::Invalid(e.to_string())),
        Ok(n) => n,
    };
    let check = groebner_check(&norm).map_err(|e| CliError::Internal(e.to_string()))?;
    writeln!(out, "reduced basis ({} members, lex k1 > k2):", check.basis.len())?;
    for p in &check.basis {
        writeln!(out, "  {p}")?;
    }
    writeln!(out, "eliminant (monic): {}", check.eliminant.display_with("k2"))?;
    writeln!(out, "g (monic):         {}", check.expected.display_with("k2"))?;
    if check.passed() {
        writeln!(out, "PASS")?;
        Ok(())
    } else {
        writeln!(out, "FAIL")?;
        Err(CliError::Disagreement("Buchberger eliminant differs from g".into()))
    }
}
