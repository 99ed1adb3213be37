//! Obstruction scans over families of representations.

use etalink::algebra::{ComplexF, Matrix, RootOfUnity};
use etalink::eta::{abelian_rho, rho, EvalOptions};
use etalink::reps::{is_prime_power_of, pdp_element, permutation_order, PdpSpec, UnitaryTuple, DEFAULT_UNITARY_TOL};
use etalink::seifert::SeifertMatrix;
use etalink::Mode;
use nalgebra::DMatrix;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::report::{certify_p_group, ObstructionReport, PGroup, Verdict, CERTIFY_BOUND, NONZERO_TOL};

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    /// `t_i -> e^{2 pi i j_i / n}` for all `0 <= j_i < n`.
    AbelianGrid { n: u64 },
    /// Tuples of `P D` with `P` of `p`-power order and `D` with entries of
    /// order dividing the largest power of `p` not above `max_order`.
    PdpEnumeration { p: u64, k: usize, max_order: u64, budget: usize, seed: u64 },
    /// Haar-random unitary tuples.
    RandomUnitary { k: usize, budget: usize, seed: u64 },
}

#[derive(Clone, Debug)]
pub struct ScanSpec {
    pub family: Family,
    pub epsilon: Option<i8>,
    pub mode: Mode,
    pub opts: EvalOptions,
    pub jobs: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanItem {
    pub index: usize,
    pub params: Vec<String>,
    pub report: Option<ObstructionReport>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct Summary {
    pub family_size: u128,
    pub evaluated: usize,
    pub errors: usize,
    pub zero: usize,
    pub nonzero: usize,
    pub singular: usize,
    pub min: Option<f64>,
    pub max: Option<f64>,
    pub not_slice: usize,
    pub not_boundary_slice: usize,
    /// Index of the first item with an obstruction verdict.
    pub first_certificate: Option<usize>,
}

impl Summary {
    fn absorb(&mut self, item: &ScanItem) {
        self.evaluated += 1;
        let Some(r) = &item.report else {
            self.errors += 1;
            return;
        };
        if r.value_f64.abs() <= NONZERO_TOL {
            self.zero += 1;
        } else {
            self.nonzero += 1;
        }
        self.singular += r.singular as usize;
        self.min = Some(self.min.map_or(r.value_f64, |m| m.min(r.value_f64)));
        self.max = Some(self.max.map_or(r.value_f64, |m| m.max(r.value_f64)));
        match r.verdict {
            Verdict::NotSlice => self.not_slice += 1,
            Verdict::NotBoundarySlice => self.not_boundary_slice += 1,
            Verdict::NoInformation => {}
        }
        if r.verdict.is_obstruction() && self.first_certificate.is_none() {
            self.first_certificate = Some(item.index);
        }
    }

    pub fn verdict(&self) -> Verdict {
        if self.not_slice > 0 {
            Verdict::NotSlice
        } else if self.not_boundary_slice > 0 {
            Verdict::NotBoundarySlice
        } else {
            Verdict::NoInformation
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct ScanOutcome {
    pub spec: Family,
    pub param_names: Vec<String>,
    pub items: Vec<ScanItem>,
    pub summary: Summary,
}

/// Permutations of `0..k` whose order is a power of `p`, in lexicographic order.
pub fn p_power_permutations(k: usize, p: u64) -> Vec<Vec<usize>> {
    fn rec(cur: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if cur.len() == used.len() {
            out.push(cur.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                cur.push(x);
                rec(cur, used, out);
                cur.pop();
                used[x] = false;
            }
        }
    }
    let mut all = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut all);
    all.retain(|perm| is_prime_power_of(permutation_order(perm), p));
    all
}

/// Largest power of `p` not exceeding `max_order` (at least 1).
pub fn root_order(p: u64, max_order: u64) -> u64 {
    let mut q = 1;
    while q * p <= max_order {
        q *= p;
    }
    q
}

/// Decodes item `index` of the pdp family for `m` components.
pub fn pdp_tuple(p: u64, k: usize, max_order: u64, m: usize, index: u128) -> (Vec<PdpSpec>, UnitaryTuple) {
    let perms = p_power_permutations(k, p);
    let q = root_order(p, max_order);
    let per = perms.len() as u128 * (q as u128).pow(k as u32);
    let mut rest = index;
    let mut specs = Vec::with_capacity(m);
    for _ in 0..m {
        let mut local = rest % per;
        rest /= per;
        let perm = perms[(local % perms.len() as u128) as usize].clone();
        local /= perms.len() as u128;
        let diag = (0..k)
            .map(|_| {
                let e = (local % q as u128) as i64;
                local /= q as u128;
                RootOfUnity::new(e, q)
            })
            .collect();
        specs.push(PdpSpec { perm, diag });
    }
    let mats = specs.iter().map(|s| pdp_element(p, s).expect("p-power data")).collect();
    (specs, UnitaryTuple::exact(mats).expect("monomial matrices are unitary"))
}

pub fn describe_pdp(spec: &PdpSpec) -> String {
    let perm: Vec<String> = spec.perm.iter().map(|x| x.to_string()).collect();
    let diag: Vec<String> = spec.diag.iter().map(|d| format!("{}", d.angle_rational())).collect();
    format!("perm={} diag={}", perm.join(" "), diag.join(" "))
}

/// Haar-distributed unitary from the QR factorization of a complex Gaussian matrix.
pub fn haar_unitary<R: Rng>(k: usize, rng: &mut R) -> Matrix<ComplexF> {
    let g = DMatrix::from_fn(k, k, |_, _| {
        ComplexF::new(rng.sample::<f64, _>(StandardNormal), rng.sample::<f64, _>(StandardNormal))
    });
    let qr = g.qr();
    let (q, r) = (qr.q(), qr.r());
    Matrix::from_fn(k, k, |i, j| {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ComplexF::new(1.0, 0.0) };
        q[(i, j)] * phase
    })
}

fn family_size(a: &SeifertMatrix, family: &Family) -> u128 {
    let m = a.components() as u32;
    match family {
        Family::AbelianGrid { n } => (*n as u128).pow(m),
        Family::PdpEnumeration { p, k, max_order, .. } => {
            let per = p_power_permutations(*k, *p).len() as u128 * (root_order(*p, *max_order) as u128).pow(*k as u32);
            per.checked_pow(m).unwrap_or(u128::MAX)
        }
        Family::RandomUnitary { budget, .. } => *budget as u128,
    }
}

/// Indices of the family members that are evaluated: everything when the
/// family fits in the budget, otherwise a seeded sample of `budget` of them.
fn selected_indices(size: u128, family: &Family) -> Vec<u128> {
    match family {
        Family::PdpEnumeration { budget, seed, .. } if size > *budget as u128 => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut picked = std::collections::BTreeSet::new();
            while picked.len() < *budget {
                picked.insert(rng.random_range(0..size));
            }
            picked.into_iter().collect()
        }
        _ => (0..size).collect(),
    }
}

fn param_names(a: &SeifertMatrix, family: &Family) -> Vec<String> {
    let m = a.components();
    match family {
        Family::AbelianGrid { .. } => (1..=m).map(|i| format!("j{i}")).collect(),
        Family::PdpEnumeration { .. } => (1..=m).map(|i| format!("u{i}")).collect(),
        Family::RandomUnitary { .. } => vec!["sample".into()],
    }
}

fn evaluate(a: &SeifertMatrix, digest: &str, spec: &ScanSpec, index: u128) -> (Vec<String>, Result<ObstructionReport, String>) {
    let eps = spec.epsilon.unwrap_or(a.epsilon());
    let m = a.components();
    let with_eps = || -> Result<SeifertMatrix, String> {
        if eps == a.epsilon() {
            Ok(a.clone())
        } else {
            a.with_epsilon(eps).map_err(|e| e.to_string())
        }
    };
    match &spec.family {
        Family::AbelianGrid { n } => {
            let mut rest = index;
            let js: Vec<u64> = (0..m)
                .map(|_| {
                    let j = (rest % *n as u128) as u64;
                    rest /= *n as u128;
                    j
                })
                .collect();
            let params = js.iter().map(|j| j.to_string()).collect();
            let z: Vec<RootOfUnity> = js.iter().map(|&j| RootOfUnity::new(j as i64, *n)).collect();
            let alpha = UnitaryTuple::scalars(&z);
            let res = (|| {
                let b = with_eps()?;
                let r = match spec.mode {
                    Mode::Exact => abelian_rho(&b, &z, &spec.opts),
                    Mode::Float => rho(&b, &alpha.to_float(), None, &spec.opts),
                }
                .map_err(|e| e.to_string())?;
                // the image is cyclic of order lcm(ord z_i)
                let order = z.iter().fold(1u64, |acc, x| lcm(acc, x.order()));
                let group = (spec.mode == Mode::Exact).then(|| PGroup {
                    order: order as usize,
                    prime: smallest_prime(order).filter(|&p| is_prime_power_of(order, p)),
                });
                let shown = if spec.mode == Mode::Exact { alpha.clone() } else { alpha.to_float() };
                Ok(ObstructionReport::from_rho(digest, eps, &shown, &r, group))
            })();
            (params, res)
        }
        Family::PdpEnumeration { p, k, max_order, .. } => {
            let (specs, alpha) = pdp_tuple(*p, *k, *max_order, m, index);
            let params = specs.iter().map(describe_pdp).collect();
            let res = (|| {
                let b = with_eps()?;
                let (alpha, group) = match spec.mode {
                    Mode::Exact => {
                        let g = certify_p_group(&alpha, CERTIFY_BOUND);
                        (alpha, g)
                    }
                    Mode::Float => (alpha.to_float(), None),
                };
                let r = rho(&b, &alpha, None, &spec.opts).map_err(|e| e.to_string())?;
                Ok(ObstructionReport::from_rho(digest, eps, &alpha, &r, group))
            })();
            (params, res)
        }
        Family::RandomUnitary { k, seed, .. } => {
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            rng.set_stream(index as u64);
            let mats = (0..m).map(|_| haar_unitary(*k, &mut rng)).collect();
            let res = (|| {
                let alpha = UnitaryTuple::float(mats, DEFAULT_UNITARY_TOL).map_err(|e| e.to_string())?;
                let b = with_eps()?;
                let r = rho(&b, &alpha, None, &spec.opts).map_err(|e| e.to_string())?;
                Ok(ObstructionReport::from_rho(digest, eps, &alpha, &r, None))
            })();
            (vec![index.to_string()], res)
        }
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    fn gcd(a: u64, b: u64) -> u64 {
        if b == 0 {
            a
        } else {
            gcd(b, a % b)
        }
    }
    a / gcd(a, b) * b
}

fn smallest_prime(n: u64) -> Option<u64> {
    (2..=n).find(|d| n % d == 0)
}

/// Evaluates every selected member of the family. Items are independent and
/// are evaluated on `jobs` workers; the output order is the index order.
pub fn run_scan(a: &SeifertMatrix, digest: &str, spec: &ScanSpec) -> ScanOutcome {
    let size = family_size(a, &spec.family);
    let indices = selected_indices(size, &spec.family);
    let work = || -> Vec<ScanItem> {
        indices
            .par_iter()
            .map(|&i| {
                let (params, res) = evaluate(a, digest, spec, i);
                let (report, error) = match res {
                    Ok(r) => (Some(r), None),
                    Err(e) => (None, Some(e)),
                };
                ScanItem {
                    index: i as usize,
                    params,
                    report,
                    error,
                }
            })
            .collect()
    };
    let items = match rayon::ThreadPoolBuilder::new().num_threads(spec.jobs.max(1)).build() {
        Ok(pool) => pool.install(work),
        Err(_) => work(),
    };
    let mut summary = Summary {
        family_size: size,
        ..Default::default()
    };
    for it in &items {
        summary.absorb(it);
    }
    ScanOutcome {
        spec: spec.family.clone(),
        param_names: param_names(a, &spec.family),
        items,
        summary,
    }
}

/// CSV with header `index,<params>,value,singular,verdict`.
pub fn to_csv(outcome: &ScanOutcome) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    let mut header = vec!["index".to_string()];
    header.extend(outcome.param_names.iter().cloned());
    header.extend(["value".into(), "singular".into(), "verdict".into()]);
    w.write_record(&header).expect("in-memory write");
    for it in &outcome.items {
        let mut row = vec![it.index.to_string()];
        row.extend(it.params.iter().cloned());
        match &it.report {
            Some(r) => row.extend([r.value.clone(), r.singular.to_string(), r.verdict.as_str().to_string()]),
            None => row.extend(["error".into(), String::new(), it.error.clone().unwrap_or_default()]),
        }
        w.write_record(&row).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("csv is utf-8")
}
