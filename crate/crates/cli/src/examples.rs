//! Replays the worked examples against the shipped fixtures.

use etalink::algebra::{LaurentPoly, RootOfUnity};
use etalink::eta::{abelian_rho, rho, sigma_f, EvalOptions, Value};
use num_bigint::BigInt;
use etalink::seifert::SeifertMatrix;
use serde::Serialize;

use crate::fixtures;
use crate::formats::{parse_forms, parse_rep, parse_seifert};
use crate::report::{certify_p_group, verdict, CERTIFY_BOUND};

#[derive(Clone, Debug, Serialize)]
pub struct ExampleLine {
    pub name: String,
    pub expected: String,
    pub got: String,
    pub matches: bool,
    pub note: String,
}

fn line(name: &str, expected: impl ToString, got: impl ToString, matches: bool, note: impl Into<String>) -> ExampleLine {
    ExampleLine {
        name: name.into(),
        expected: expected.to_string(),
        got: got.to_string(),
        matches,
        note: note.into(),
    }
}

pub fn seifert(name: &str, relaxed: bool) -> SeifertMatrix {
    parse_seifert(fixtures::get(name).expect("shipped fixture"), relaxed).expect("fixture parses")
}

/// `-(t1 t2 + t1^-1 t2^-1) - (t1^-1 t2 + t1 t2^-1) + 5`.
pub fn printed_delta() -> LaurentPoly {
    LaurentPoly::from_terms(
        2,
        [
            (vec![1, 1], -1),
            (vec![-1, -1], -1),
            (vec![-1, 1], -1),
            (vec![1, -1], -1),
            (vec![0, 0], 5),
        ]
        .into_iter()
        .map(|(e, c)| (e, BigInt::from(c))),
    )
}

/// Runs every worked example; `n_grid` is the abelian grid resolution.
pub fn run_examples(n_grid: u64) -> Vec<ExampleLine> {
    let opts = EvalOptions::default();
    let mut out = Vec::new();

    let ko = seifert("ko_10x10", false);
    let printed = parse_rep(fixtures::get("ko_rep").unwrap()).unwrap();
    let r = rho(&ko, &printed, Some(-1), &opts).unwrap();
    out.push(line(
        "ko rho, printed tuple",
        -2,
        &r.total,
        r.total == Value::from_int(-2),
        if r.singular { "tuple lies in the singular set" } else { "" },
    ));
    let pdp = parse_rep(fixtures::get("ko_pdp_rep").unwrap()).unwrap();
    let r = rho(&ko, &pdp, Some(-1), &opts).unwrap();
    let g = certify_p_group(&pdp, CERTIFY_BOUND);
    let v = verdict(r.total != Value::zero(), r.singular, g.as_ref());
    out.push(line(
        "ko rho, nonsingular PD_2(2) tuple",
        -2,
        &r.total,
        r.total == Value::from_int(-2) && !r.singular,
        format!("verdict {}", v.as_str()),
    ));

    let rep = parse_rep(fixtures::get("doubled_rep").unwrap()).unwrap();
    for (name, relaxed) in [("doubled_12x12", false), ("doubled_12x12_printed", true)] {
        let a = seifert(name, relaxed);
        let o = EvalOptions {
            hermitize: relaxed,
            ..opts
        };
        let r = rho(&a, &rep, Some(-1), &o).unwrap();
        let note = if relaxed { "printed matrix, hermitized" } else { "corrected matrix" };
        out.push(line(&format!("{name} rho"), -2, &r.total, r.total == Value::from_int(-2), note));
    }

    let delta = printed_delta();
    for name in ["example_6x6", "example_6x6_fix15", "example_6x6_fix51", "example_6x6_fixed"] {
        let a = seifert(name, true);
        let d = a.alexander();
        let unit = d.unit_ratio(&delta);
        let note = match &unit {
            Some((s, e)) => format!("differs by {s} * t^{e:?}"),
            None => "not a unit multiple".into(),
        };
        out.push(line(&format!("{name} alexander"), &delta, &d, unit.is_some(), note));
    }

    let a = seifert("doubled_12x12", false);
    let mut nonzero = 0;
    for j1 in 0..n_grid {
        for j2 in 0..n_grid {
            let z = [RootOfUnity::new(j1 as i64, n_grid), RootOfUnity::new(j2 as i64, n_grid)];
            if abelian_rho(&a, &z, &opts).unwrap().total != Value::zero() {
                nonzero += 1;
            }
        }
    }
    out.push(line(
        &format!("doubled abelian grid {n_grid}x{n_grid}"),
        "0 everywhere",
        format!("{nonzero} nonzero points"),
        nonzero == 0,
        "",
    ));

    let four = seifert("example_4x4", false);
    let f = parse_forms(fixtures::get("example_4x4_forms").unwrap()).unwrap();
    let s = sigma_f(&four, &f, &opts).unwrap();
    out.push(line("4x4 form signature", -2, s.sign, s.sign == -2, ""));

    let t = seifert("trivial", false);
    let r = rho(&t, &etalink::reps::UnitaryTuple::trivial(1, 1), None, &opts).unwrap();
    let d = t.alexander();
    out.push(line("trivial link rho", 0, &r.total, r.total == Value::zero(), ""));
    out.push(line("trivial link alexander", 1, &d, d == LaurentPoly::one(), ""));
    out
}
