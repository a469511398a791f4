//! Agreement matrix between the solver and the brute-force oracles.

use std::io::Write;

use lqnash::game::{cost, normalize, GameError, NormalizedGame};
use lqnash::oracle::{br_iteration, grid_scan_with, resultant_contains_g_roots, simulate_cost, Fault};
use lqnash::solver::{solve_normalized, SolveReport};
use rand::{Rng, SeedableRng};

use crate::format::fmt_sig;
use crate::{CliError, GameArgs};

pub const EVEN_STARTS: usize = 8;
pub const RANDOM_STARTS: usize = 8;
pub const BR_MAX_ITER: usize = 10_000;
pub const BR_TOL: f64 = 1e-13;
pub const HORIZON: usize = 200;

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    pub grid_n: usize,
    pub tol: f64,
    pub seed: u64,
    pub inject_fault: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleRow {
    pub oracle: String,
    pub agrees: bool,
    pub detail: String,
}

fn close(x: (f64, f64), y: (f64, f64), tol: f64) -> bool {
    (x.0 - y.0).abs() <= tol && (x.1 - y.1).abs() <= tol
}

fn pairs(v: &[(f64, f64)]) -> String {
    let items: Vec<String> = v
        .iter()
        .map(|(a, b)| format!("({}, {})", fmt_sig(*a), fmt_sig(*b)))
        .collect();
    format!("[{}]", items.join(", "))
}

/// Runs every oracle against `rep` in normalized coordinates.
pub fn agreement_matrix(norm: &NormalizedGame, rep: &SolveReport, opts: &VerifyOptions) -> Vec<OracleRow> {
    let solved: Vec<(f64, f64)> = rep.equilibria.iter().map(|e| e.normalized).collect();
    let mut rows = Vec::new();

    let fault = opts.inject_fault.then_some(Fault::NegatedResidual);
    let grid = grid_scan_with(norm, opts.grid_n, fault);
    let same = grid.len() == solved.len() && grid.iter().zip(&solved).all(|(g, s)| close(*g, *s, opts.tol));
    rows.push(OracleRow {
        oracle: format!("grid_scan n={}", opts.grid_n),
        agrees: same,
        detail: if same {
            format!("{} pairs", grid.len())
        } else {
            format!("grid {} vs solve {}", pairs(&grid), pairs(&solved))
        },
    });

    let a = norm.float().a;
    let mut rng = rand::rngs::StdRng::seed_from_u64(opts.seed);
    let starts: Vec<f64> = (0..EVEN_STARTS)
        .map(|i| a * i as f64 / (EVEN_STARTS - 1) as f64)
        .chain((0..RANDOM_STARTS).map(|_| rng.gen_range(0.0..=a)))
        .collect();
    for (i, x) in starts.iter().enumerate() {
        let it = br_iteration(norm, *x, BR_MAX_ITER, BR_TOL);
        let kind = if i < EVEN_STARTS { "even" } else { "seeded" };
        let name = format!("br_iteration {kind} start {}", fmt_sig(*x));
        let row = if !it.converged {
            OracleRow {
                oracle: name,
                agrees: true,
                detail: format!("no convergence after {} steps (not a disagreement)", it.iterations),
            }
        } else {
            let p = (it.k1, it.k2);
            let hit = solved.iter().any(|s| close(p, *s, opts.tol));
            let detail = if hit {
                format!("fixed point {}", pairs(&[p]))
            } else {
                format!("fixed point {} not in solve {}", pairs(&[p]), pairs(&solved))
            };
            OracleRow {
                oracle: name,
                agrees: hit,
                detail,
            }
        };
        rows.push(row);
    }

    let contained = resultant_contains_g_roots(norm);
    rows.push(OracleRow {
        oracle: "resultant_elimination".into(),
        agrees: contained == Ok(true),
        detail: match contained {
            Ok(true) => "every root of g in (0, a) is a root of the resultant".into(),
            Ok(false) => "a root of g in (0, a) is missing from the resultant".into(),
            Err(e) => e.to_string(),
        },
    });

    for (i, (k1, k2)) in solved.iter().enumerate() {
        let c = cost(norm, *k1, *k2);
        let traj = simulate_cost(norm, *k1, *k2, HORIZON, 1.0);
        let last = traj.last().expect("horizon >= 1");
        let f = norm.float();
        let x2 = f.x0 * f.x0;
        let tail = |q: f64, r: f64, k: f64| (q + r * k * k) * c.a_cl.powi(2 * HORIZON as i32) / (1.0 - c.a_cl * c.a_cl);
        let e1 = (c.j1 / x2 - last.partial_cost_1 - tail(f.q1, f.r1, *k1)).abs();
        let e2 = (c.j2 / x2 - last.partial_cost_2 - tail(f.q2, f.r2, *k2)).abs();
        let slack = 1e-10 * (c.j1.max(c.j2) / x2).max(1.0);
        rows.push(OracleRow {
            oracle: format!("simulate_cost equilibrium {}", i + 1),
            agrees: e1 <= slack && e2 <= slack,
            detail: format!("T={HORIZON}, closed-form gap {} / {}", fmt_sig(e1), fmt_sig(e2)),
        });
    }
    rows
}

pub fn cmd_verify(args: &GameArgs, opts: &VerifyOptions, out: &mut dyn Write) -> Result<(), CliError> {
    if opts.grid_n < 16 {
        return Err(CliError::Invalid("--grid-n must be >= 16".into()));
    }
    if opts.tol.is_nan() || opts.tol <= 0.0 {
        return Err(CliError::Invalid("--tol must be > 0".into()));
    }
    let params = args.params()?;
    let norm = match normalize(&params) {
        Err(GameError::Trivial) => {
            writeln!(
                out,
                "trivial game (a = 0): the unique equilibrium is (0, 0); nothing to cross-check"
            )?;
            return Ok(());
        }
        Err(e) => return Err(CliError::Invalid(e.to_string())),
        Ok(n) => n,
    };
    let rep = solve_normalized(&norm)?;
    writeln!(out, "solve: {} equilibria (normalized coordinates):", rep.n_nash())?;
    for e in &rep.equilibria {
        writeln!(
            out,
            "  k1 = {}, k2 = {}",
            fmt_sig(e.normalized.0),
            fmt_sig(e.normalized.1)
        )?;
    }
    let rows = agreement_matrix(&norm, &rep, opts);
    let width = rows.iter().map(|r| r.oracle.len()).max().unwrap_or(0);
    for r in &rows {
        writeln!(
            out,
            "{:<width$}  {}  {}",
            r.oracle,
            if r.agrees { "agree   " } else { "DISAGREE" },
            r.detail
        )?;
    }
    let bad: Vec<&OracleRow> = rows.iter().filter(|r| !r.agrees).collect();
    if bad.is_empty() {
        writeln!(out, "all oracles agree")?;
        Ok(())
    } else {
        let first = bad[0];
        Err(CliError::Disagreement(format!(
            "{} oracle(s) disagree; first: {}: {}",
            bad.len(),
            first.oracle,
            first.detail
        )))
    }
}
