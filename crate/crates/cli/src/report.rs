use etalink::eta::{RhoResult, SigmaResult, Value};
use etalink::reps::{closure, Closure, UnitaryTuple};
use etalink::Mode;
use serde::Serialize;

use crate::formats::{rep_to_file, RepFile};

/// Closure bound used when certifying that a tuple factors through a p-group.
pub const CERTIFY_BOUND: usize = 100_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    NoInformation,
    NotBoundarySlice,
    NotSlice,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::NoInformation => "no_information",
            Verdict::NotBoundarySlice => "not_boundary_slice",
            Verdict::NotSlice => "not_slice",
        }
    }

    pub fn is_obstruction(&self) -> bool {
        *self != Verdict::NoInformation
    }
}

/// Order of the image group and, when it is a prime power, the prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PGroup {
    pub order: usize,
    pub prime: Option<u64>,
}

impl PGroup {
    pub fn certified(&self) -> bool {
        self.order == 1 || self.prime.is_some()
    }
}

/// Enumerates the image of an exact tuple; `None` for float tuples or when
/// the image exceeds the bound.
pub fn certify_p_group(alpha: &UnitaryTuple, bound: usize) -> Option<PGroup> {
    let mats = alpha.exact_matrices()?;
    match closure(mats, bound) {
        Closure::Group(g) => Some(PGroup {
            order: g.order(),
            prime: g.p_group_prime(),
        }),
        Closure::Overflow { .. } => None,
    }
}

/// `not_slice` needs a certified p-group image; `not_boundary_slice` only a
/// nonzero value off the singular set.
pub fn verdict(nonzero: bool, singular: bool, group: Option<&PGroup>) -> Verdict {
    if !nonzero || singular {
        Verdict::NoInformation
    } else if group.is_some_and(PGroup::certified) {
        Verdict::NotSlice
    } else {
        Verdict::NotBoundarySlice
    }
}

/// Tolerance for calling a float invariant nonzero; the invariants are
/// integers off the singular set.
pub const NONZERO_TOL: f64 = 1e-6;

#[derive(Clone, Debug, Serialize)]
pub struct ObstructionReport {
    pub input_digest: String,
    pub invariant: &'static str,
    pub representation: Option<RepFile>,
    pub epsilon: i8,
    pub mode: String,
    pub value: String,
    pub value_f64: f64,
    pub exact: bool,
    pub singular: bool,
    pub relaxed: bool,
    pub hermitized: bool,
    pub p_group: Option<PGroup>,
    pub verdict: Verdict,
}

fn value_string(v: &Value) -> String {
    v.to_string()
}

impl ObstructionReport {
    pub fn from_rho(
        digest: &str,
        epsilon: i8,
        alpha: &UnitaryTuple,
        r: &RhoResult,
        group: Option<PGroup>,
    ) -> Self {
        let nonzero = !r.total.is_zero(NONZERO_TOL);
        Self {
            input_digest: digest.to_string(),
            invariant: "rho",
            representation: Some(rep_to_file(alpha)),
            epsilon,
            mode: r.mode.to_string(),
            value: value_string(&r.total),
            value_f64: r.total.to_f64(),
            exact: r.mode == Mode::Exact,
            singular: r.singular,
            relaxed: r.relaxed,
            hermitized: r.hermitized,
            p_group: group,
            verdict: verdict(nonzero, r.singular, group.as_ref()),
        }
    }

    pub fn from_sigma(
        digest: &str,
        epsilon: i8,
        relaxed: bool,
        alpha: Option<&UnitaryTuple>,
        s: &SigmaResult,
        group: Option<PGroup>,
    ) -> Self {
        Self {
            input_digest: digest.to_string(),
            invariant: "sigma",
            representation: alpha.map(rep_to_file),
            epsilon,
            mode: s.mode.to_string(),
            value: s.sign.to_string(),
            value_f64: s.sign as f64,
            exact: s.mode == Mode::Exact,
            singular: s.singular,
            relaxed,
            hermitized: s.hermitized,
            p_group: group,
            verdict: verdict(s.sign != 0, s.singular, group.as_ref()),
        }
    }

    pub fn text(&self) -> String {
        let mut stamps = Vec::new();
        if self.relaxed {
            stamps.push("relaxed");
        }
        if self.hermitized {
            stamps.push("hermitized");
        }
        if self.singular {
            stamps.push("singular");
        }
        let stamps = if stamps.is_empty() {
            String::new()
        } else {
            format!(" [{}]", stamps.join(", "))
        };
        let group = match &self.p_group {
            Some(g) => match g.prime {
                Some(p) => format!(", image order {} ({p}-group)", g.order),
                None if g.order == 1 => ", trivial image".to_string(),
                None => format!(", image order {} (not a p-group)", g.order),
            },
            None => String::new(),
        };
        format!(
            "{} = {} (eps = {}, {} mode{}){}\nverdict: {}",
            self.invariant,
            self.value,
            self.epsilon,
            self.mode,
            group,
            stamps,
            self.verdict.as_str()
        )
    }
}
