//! Parameter sweeps over `a` and `r2`.

use std::io::Write;
use std::path::{Path, PathBuf};

use lqnash::exactalg::rational::{from_f64_decimal, int, to_f64};
use lqnash::exactalg::{parse_rational, Rational};
use lqnash::game::{normalize, GameParams};
use lqnash::solver::{solve_normalized, DeltaSign, SolveReport};
use num_traits::Signed;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::format::{fmt_sig, sig};
use crate::report::finite_approx;
use crate::CliError;

/// A config number: a JSON number (read through its shortest decimal
/// form) or a string holding an exact rational literal such as `"98/27"`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Number(f64),
    Text(String),
}

impl Num {
    pub fn value(&self, what: &str) -> Result<Rational, CliError> {
        match self {
            Num::Number(x) => {
                from_f64_decimal(*x).ok_or_else(|| CliError::Invalid(format!("{what}: not a finite number")))
            }
            Num::Text(s) => parse_rational(s).map_err(|e| CliError::Invalid(format!("{what}: {e}"))),
        }
    }
}

fn one() -> Num {
    Num::Number(1.0)
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Spacing {
    #[default]
    Linear,
    Log,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AGrid {
    pub min: Num,
    pub max: Num,
    pub count: usize,
    #[serde(default)]
    pub spacing: Spacing,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Outputs {
    pub csv: PathBuf,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub svg: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub json: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepConfig {
    pub q1: Num,
    pub r1: Num,
    pub q2: Num,
    #[serde(default = "one")]
    pub b1: Num,
    #[serde(default = "one")]
    pub b2: Num,
    #[serde(default = "one")]
    pub x0: Num,
    pub a_grid: AGrid,
    pub r2_values: Vec<Num>,
    pub outputs: Outputs,
}

/// A validated sweep: exact grid points and `r2` values in ascending order.
#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub base: GameParams,
    pub a_values: Vec<Rational>,
    pub r2_values: Vec<Rational>,
}

impl SweepConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("sweep config: {e}")))
    }

    pub fn plan(&self) -> Result<SweepPlan, CliError> {
        let base = GameParams::new(
            int(1),
            self.q1.value("q1")?,
            self.r1.value("r1")?,
            self.q2.value("q2")?,
            int(1),
        )
        .with_b(self.b1.value("b1")?, self.b2.value("b2")?)
        .with_x0(self.x0.value("x0")?);
        base.validate().map_err(|e| CliError::Invalid(e.to_string()))?;

        let g = &self.a_grid;
        let (min, max) = (g.min.value("a_grid.min")?, g.max.value("a_grid.max")?);
        if !min.is_positive() {
            return Err(CliError::Invalid("a_grid.min must be > 0".into()));
        }
        // a single point is allowed only as the degenerate grid min == max
        let single = g.count == 1 && min == max;
        if g.count < 2 && !single {
            return Err(CliError::Invalid(
                "a_grid.count must be >= 2 (or 1 with min == max)".into(),
            ));
        }
        if !single && max <= min {
            return Err(CliError::Invalid("a_grid.max must be > a_grid.min".into()));
        }
        let a_values = if single {
            vec![min]
        } else {
            grid(&min, &max, g.count, g.spacing)
        };

        if self.r2_values.is_empty() {
            return Err(CliError::Invalid("r2_values must be nonempty".into()));
        }
        let mut r2_values = self
            .r2_values
            .iter()
            .enumerate()
            .map(|(i, v)| v.value(&format!("r2_values[{i}]")))
            .collect::<Result<Vec<_>, _>>()?;
        if r2_values.iter().any(|r| !r.is_positive()) {
            return Err(CliError::Invalid("r2_values must all be > 0".into()));
        }
        r2_values.sort();
        r2_values.dedup();
        Ok(SweepPlan {
            base,
            a_values,
            r2_values,
        })
    }
}

/// Exact points for linear spacing; log spacing goes through `f64` and
/// the shortest decimal of each point.
fn grid(min: &Rational, max: &Rational, count: usize, spacing: Spacing) -> Vec<Rational> {
    let n = (count - 1) as i64;
    match spacing {
        Spacing::Linear => (0..count as i64).map(|i| min + (max - min) * int(i) / int(n)).collect(),
        Spacing::Log => {
            let (lo, hi) = (to_f64(min).ln(), to_f64(max).ln());
            (0..count as i64)
                .map(|i| match i {
                    0 => min.clone(),
                    i if i == n => max.clone(),
                    i => {
                        from_f64_decimal(sig((lo + (hi - lo) * i as f64 / n as f64).exp())).expect("finite grid point")
                    }
                })
                .collect()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepEquilibrium {
    pub k1: f64,
    pub k2: f64,
    pub a_cl: f64,
    pub j1: f64,
    pub j2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepRow {
    pub a: f64,
    pub r2: f64,
    /// Float approximation of the exact discriminant (`None` if out of range).
    pub delta: Option<f64>,
    pub delta_sign: i8,
    pub n_real_roots_g: usize,
    pub n_nash: usize,
    pub equilibria: Vec<SweepEquilibrium>,
}

impl SweepRow {
    fn from_report(a: &Rational, r2: &Rational, rep: &SolveReport) -> Result<Self, CliError> {
        let n = rep.n_nash();
        let ok = (1..=3).contains(&n)
            && match rep.delta_sign {
                DeltaSign::Negative => n == 1,
                DeltaSign::Zero => n <= 2,
                DeltaSign::Positive => true,
            }
            && rep.theorem_flags.all();
        if !ok {
            return Err(CliError::Internal(format!(
                "row a = {a}, r2 = {r2} violates the structure theorem"
            )));
        }
        Ok(SweepRow {
            a: sig(to_f64(a)),
            r2: sig(to_f64(r2)),
            delta: finite_approx(&rep.delta),
            delta_sign: rep.delta_sign.as_i8(),
            n_real_roots_g: rep.real_roots_total,
            n_nash: n,
            equilibria: rep
                .equilibria
                .iter()
                .map(|e| SweepEquilibrium {
                    k1: sig(e.k1),
                    k2: sig(e.k2),
                    a_cl: sig(e.a_cl),
                    j1: sig(e.j1),
                    j2: sig(e.j2),
                })
                .collect(),
        })
    }
}

pub const CSV_HEADER: &str =
    "a,r2,delta,delta_sign,n_real_roots_g,n_nash,k1_1,k2_1,j1_1,j2_1,k1_2,k2_2,j1_2,j2_2,k1_3,k2_3,j1_3,j2_3";

pub fn to_csv(rows: &[SweepRow]) -> String {
    let mut s = String::with_capacity(rows.len() * 160);
    s.push_str(CSV_HEADER);
    s.push('\n');
    for r in rows {
        let mut fields = vec![
            fmt_sig(r.a),
            fmt_sig(r.r2),
            r.delta
                .map(fmt_sig)
                .unwrap_or_else(|| if r.delta_sign > 0 { "inf".into() } else { "-inf".into() }),
            r.delta_sign.to_string(),
            r.n_real_roots_g.to_string(),
            r.n_nash.to_string(),
        ];
        for i in 0..3 {
            match r.equilibria.get(i) {
                Some(e) => fields.extend([fmt_sig(e.k1), fmt_sig(e.k2), fmt_sig(e.j1), fmt_sig(e.j2)]),
                None => fields.extend(std::iter::repeat_n(String::new(), 4)),
            }
        }
        s.push_str(&fields.join(","));
        s.push('\n');
    }
    s
}

/// Solves every `(r2, a)` point of the plan on the current rayon pool.
/// Rows come back ordered by `(r2, a)` whatever the schedule.
pub fn run_plan(plan: &SweepPlan) -> Result<Vec<SweepRow>, CliError> {
    let points: Vec<(&Rational, &Rational)> = plan
        .r2_values
        .iter()
        .flat_map(|r2| plan.a_values.iter().map(move |a| (r2, a)))
        .collect();
    points
        .par_iter()
        .map(|(r2, a)| {
            let mut p = plan.base.clone();
            p.a = (*a).clone();
            p.r2 = (*r2).clone();
            let norm = normalize(&p).map_err(|e| CliError::Invalid(e.to_string()))?;
            let rep = solve_normalized(&norm)?;
            SweepRow::from_report(a, r2, &rep)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepJson {
    pub config: SweepConfig,
    pub rows: Vec<SweepRow>,
}

/// Writes through a temporary file in the destination directory, renamed
/// into place only once complete.
pub fn write_atomic(path: &Path, bytes: &[u8]) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p.to_path_buf(),
        _ => PathBuf::from("."),
    };
    std::fs::create_dir_all(&dir)?;
    let mut tmp = tempfile::NamedTempFile::new_in(&dir)?;
    tmp.write_all(bytes)?;
    tmp.as_file().sync_all()?;
    tmp.persist(path).map_err(|e| CliError::Io(e.error))?;
    Ok(())
}

/// `threads = None` uses every core.
pub fn cmd_sweep(config_path: &Path, threads: Option<usize>, quiet: bool, out: &mut dyn Write) -> Result<(), CliError> {
    let text = std::fs::read_to_string(config_path)
        .map_err(|e| CliError::Invalid(format!("cannot read {}: {e}", config_path.display())))?;
    let config = SweepConfig::from_json(&text)?;
    let plan = config.plan()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(threads.unwrap_or(0))
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))?;
    let rows = pool.install(|| run_plan(&plan))?;

    let csv = to_csv(&rows);
    let svg = config.outputs.svg.as_ref().map(|_| crate::svg::render(&rows));
    let json = config.outputs.json.as_ref().map(|_| {
        serde_json::to_string_pretty(&SweepJson {
            config: config.clone(),
            rows: rows.clone(),
        })
        .expect("serializable")
            + "\n"
    });

    write_atomic(&config.outputs.csv, csv.as_bytes())?;
    if let (Some(path), Some(svg)) = (&config.outputs.svg, &svg) {
        write_atomic(path, svg.as_bytes())?;
    }
    if let (Some(path), Some(json)) = (&config.outputs.json, &json) {
        write_atomic(path, json.as_bytes())?;
    }
    if !quiet {
        writeln!(out, "sweep: {} rows -> {}", rows.len(), config.outputs.csv.display())?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(extra: &str) -> String {
        format!(
            r#"{{"q1": 0.5, "r1": 1, "q2": 1, "a_grid": {{"min": 0.0001, "max": 4, "count": 5}},
                "r2_values": [2, "98/27"], "outputs": {{"csv": "x.csv"}}{extra}}}"#
        )
    }

    #[test]
    fn plan_is_exact() {
        let plan = SweepConfig::from_json(&cfg("")).unwrap().plan().unwrap();
        assert_eq!(plan.a_values.len(), 5);
        assert_eq!(plan.a_values[0], Rational::new(1.into(), 10_000.into()));
        assert_eq!(plan.a_values[4], int(4));
        assert_eq!(plan.r2_values, vec![int(2), Rational::new(98.into(), 27.into())]);
        assert_eq!(plan.base.q1, Rational::new(1.into(), 2.into()));
    }

    #[test]
    fn rejects_bad_configs() {
        for bad in [
            cfg(r#", "bogus": 1"#),
            cfg("").replace("\"min\": 0.0001", "\"min\": 0"),
            cfg("").replace("\"count\": 5", "\"count\": 1"),
            cfg("").replace("[2, \"98/27\"]", "[]"),
            cfg("").replace("[2, \"98/27\"]", "[-1]"),
            cfg("").replace("\"q1\": 0.5", "\"q1\": -0.5"),
            cfg("").replace("\"98/27\"", "\"pi\""),
        ] {
            let res = SweepConfig::from_json(&bad).and_then(|c| c.plan());
            assert!(matches!(res, Err(CliError::Invalid(_))), "{bad}");
        }
    }

    #[test]
    fn single_point_grid() {
        let c = cfg("").replace("\"max\": 4, \"count\": 5", "\"max\": 0.0001, \"count\": 1");
        assert_eq!(SweepConfig::from_json(&c).unwrap().plan().unwrap().a_values.len(), 1);
    }

    #[test]
    fn log_grid_is_increasing() {
        let c = cfg("").replace("\"count\": 5}", "\"count\": 7, \"spacing\": \"log\"}");
        let plan = SweepConfig::from_json(&c).unwrap().plan().unwrap();
        assert!(plan.a_values.windows(2).all(|w| w[0] < w[1]));
        assert_eq!(plan.a_values[6], int(4));
    }

    #[test]
    fn csv_layout() {
        let c = r#"{"q1": 1, "r1": 1, "q2": 1, "a_grid": {"min": 1, "max": 1, "count": 1},
                     "r2_values": [1], "outputs": {"csv": "x.csv"}}"#;
        let rows = run_plan(&SweepConfig::from_json(c).unwrap().plan().unwrap()).unwrap();
        let csv = to_csv(&rows);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0].split(',').count(), 18);
        assert!(lines[1].starts_with("1,1,-5056,-1,3,1,0.3554157"), "{}", lines[1]);
        assert!(lines[1].ends_with(",,,,,,,,"));
    }
}
