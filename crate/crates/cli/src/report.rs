//! JSON documents emitted by the CLI. Every float is rounded to 12
//! significant digits before serialization, so parsing a document and
//! writing it again reproduces it byte for byte.

use lqnash::exactalg::rational::to_f64;
use lqnash::exactalg::Rational;
use lqnash::game::GameParams;
use lqnash::solver::{NashEquilibrium, SolveReport, G_SCALE};
use serde::{Deserialize, Serialize};

use crate::format::sig;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsJson {
    pub a: String,
    pub q1: String,
    pub q2: String,
    pub r1: String,
    pub r2: String,
    pub b1: String,
    pub b2: String,
    pub x0: String,
}

impl From<&GameParams> for ParamsJson {
    fn from(p: &GameParams) -> Self {
        ParamsJson {
            a: p.a.to_string(),
            q1: p.q1.to_string(),
            q2: p.q2.to_string(),
            r1: p.r1.to_string(),
            r2: p.r2.to_string(),
            b1: p.b1.to_string(),
            b2: p.b2.to_string(),
            x0: p.x0.to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquilibriumJson {
    pub k1: f64,
    pub k2: f64,
    pub a_cl: f64,
    pub j1: f64,
    pub j2: f64,
    pub residual_norm: f64,
    pub root_multiplicity: usize,
}

impl From<&NashEquilibrium> for EquilibriumJson {
    fn from(e: &NashEquilibrium) -> Self {
        EquilibriumJson {
            k1: sig(e.k1),
            k2: sig(e.k2),
            a_cl: sig(e.a_cl),
            j1: sig(e.j1),
            j2: sig(e.j2),
            residual_norm: sig(e.residual_norm),
            root_multiplicity: e.root_multiplicity,
        }
    }
}

/// The scaled elimination polynomial in normalized coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyJson {
    /// The stored polynomial is `scale * g`.
    pub scale: i64,
    /// Exact coefficients, constant term first.
    pub coefficients: Vec<String>,
    pub text: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FlagsJson {
    pub existence: bool,
    pub at_most_three: bool,
    pub delta_consistent: bool,
    pub outer_roots: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveJson {
    pub trivial: bool,
    pub params: ParamsJson,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub g: Option<PolyJson>,
    /// Exact discriminant of the unscaled `g`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_approx: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_sign: Option<i8>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub real_roots_total: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots_below_zero: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub roots_above_a: Option<usize>,
    pub n_nash: usize,
    pub equilibria: Vec<EquilibriumJson>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub theorem_flags: Option<FlagsJson>,
}

/// Float approximation that survives JSON (`None` when out of range).
pub fn finite_approx(r: &Rational) -> Option<f64> {
    Some(sig(to_f64(r))).filter(|x| x.is_finite())
}

impl SolveJson {
    pub fn from_report(params: &GameParams, rep: &SolveReport) -> Self {
        let f = rep.theorem_flags;
        SolveJson {
            trivial: false,
            params: params.into(),
            g: Some(PolyJson {
                scale: G_SCALE,
                coefficients: rep.g.coeffs().iter().map(|c| c.to_string()).collect(),
                text: rep.g.display_with("k").to_string(),
            }),
            delta: Some(rep.delta.to_string()),
            delta_approx: finite_approx(&rep.delta),
            delta_sign: Some(rep.delta_sign.as_i8()),
            real_roots_total: Some(rep.real_roots_total),
            roots_below_zero: Some(rep.roots_below_zero),
            roots_above_a: Some(rep.roots_above_a),
            n_nash: rep.n_nash(),
            equilibria: rep.equilibria.iter().map(EquilibriumJson::from).collect(),
            theorem_flags: Some(FlagsJson {
                existence: f.existence,
                at_most_three: f.at_most_three,
                delta_consistent: f.delta_consistent,
                outer_roots: f.outer_roots,
            }),
        }
    }

    /// `a = 0`: the only equilibrium is `(0, 0)` with `J_i = q_i x0^2`.
    pub fn trivial(params: &GameParams) -> Self {
        let x0 = to_f64(&params.x0);
        let eq = EquilibriumJson {
            k1: 0.0,
            k2: 0.0,
            a_cl: 0.0,
            j1: sig(to_f64(&params.q1) * x0 * x0),
            j2: sig(to_f64(&params.q2) * x0 * x0),
            residual_norm: 0.0,
            root_multiplicity: 1,
        };
        SolveJson {
            trivial: true,
            params: params.into(),
            g: None,
            delta: None,
            delta_approx: None,
            delta_sign: None,
            real_roots_total: None,
            roots_below_zero: None,
            roots_above_a: None,
            n_nash: 1,
            equilibria: vec![eq],
            theorem_flags: None,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable") + "\n"
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let p = &self.params;
        s += &format!(
            "game: a={} q1={} r1={} q2={} r2={} b1={} b2={} x0={}\n",
            p.a, p.q1, p.r1, p.q2, p.r2, p.b1, p.b2, p.x0
        );
        if self.trivial {
            s += "trivial game (a = 0)\n";
        }
        if let Some(g) = &self.g {
            s += &format!("{}*g(k) = {}\n", g.scale, g.text);
        }
        if let (Some(d), Some(sign)) = (&self.delta, self.delta_sign) {
            s += &format!("delta = {d} (sign {sign:+})\n");
        }
        if let (Some(t), Some(b), Some(u)) = (self.real_roots_total, self.roots_below_zero, self.roots_above_a) {
            s += &format!("real roots of g: {t} ({b} below 0, {u} above a)\n");
        }
        s += &format!("equilibria: {}\n", self.n_nash);
        s += &format!(
            "{:>3}  {:>20}  {:>20}  {:>20}  {:>20}  {:>20}  {:>4}\n",
            "#", "k1", "k2", "a_cl", "j1", "j2", "mult"
        );
        for (i, e) in self.equilibria.iter().enumerate() {
            s += &format!(
                "{:>3}  {:>20}  {:>20}  {:>20}  {:>20}  {:>20}  {:>4}\n",
                i + 1,
                crate::format::fmt_sig(e.k1),
                crate::format::fmt_sig(e.k2),
                crate::format::fmt_sig(e.a_cl),
                crate::format::fmt_sig(e.j1),
                crate::format::fmt_sig(e.j2),
                e.root_multiplicity
            );
        }
        s
    }
}
