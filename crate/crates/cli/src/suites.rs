//! Verification suites behind `superjack verify`.
//!
//! Every suite produces a [`SuiteReport`] whose JSON form depends only on its
//! parameters, so repeated runs (with or without the χ cache, with any number
//! of jobs) are byte-identical.

use num_rational::BigRational;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Map, Value};
use superjack::cmsop::{eigenvalue_of, extract_eigenvalue, rho_norm};
use superjack::coeffs::{rational_to_f64, KValue};
use superjack::gauge::{
    conjugation_check, default_test_functions, residual_potentials, sample_points, sig15, Verdict,
};
use superjack::jack::{compute_chi_table, jack_in_monomial};
use superjack::oracles::{classical_eigenvalue, hook_schur_twisted, jack_eigenvector_oracle};
use superjack::partitions::{partitions_up_to, Partition};
use superjack::superjack::{eigenvalue, super_jack};
use superjack::sympoly::realize;
use superjack::RatK;

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: &'static str,
    pub params: Value,
    pub cases: Vec<Value>,
    pub passed: usize,
    pub failed: usize,
    pub verdict: Verdict,
}

impl SuiteReport {
    fn new(suite: &'static str, params: Value, cases: Vec<Value>) -> Self {
        let passed = cases
            .iter()
            .filter(|c| c["ok"] == Value::Bool(true))
            .count();
        let failed = cases.len() - passed;
        SuiteReport {
            suite,
            params,
            cases,
            passed,
            failed,
            verdict: if failed == 0 {
                Verdict::Pass
            } else {
                Verdict::Fail
            },
        }
    }

    pub fn passed_all(&self) -> bool {
        self.verdict == Verdict::Pass
    }

    /// One line per case plus a summary line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for c in &self.cases {
            let mut fields = c.as_object().cloned().unwrap_or_default();
            let ok = fields.remove("ok") == Some(Value::Bool(true));
            let rest: Vec<String> = fields
                .iter()
                .map(|(k, v)| match v {
                    Value::String(s) => format!("{k}={s}"),
                    other => format!("{k}={other}"),
                })
                .collect();
            out.push_str(&format!(
                "{} {} {}\n",
                if ok { "PASS" } else { "FAIL" },
                self.suite,
                rest.join(" ")
            ));
        }
        out.push_str(&format!(
            "{} {}: {} passed, {} failed\n",
            if self.passed_all() { "PASS" } else { "FAIL" },
            self.suite,
            self.passed,
            self.failed
        ));
        out
    }
}

/// Ordered parallel map over `items` on a pool of `jobs` threads.
fn run_cases<T, F>(items: &[T], jobs: usize, f: F) -> Vec<Value>
where
    T: Sync,
    F: Fn(&T) -> Value + Sync + Send,
{
    if jobs <= 1 {
        return items.iter().map(f).collect();
    }
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .expect("thread pool")
        .install(|| items.par_iter().map(f).collect())
}

fn case(ok: bool, fields: Value) -> Value {
    let mut obj: Map<String, Value> = fields.as_object().cloned().unwrap_or_default();
    obj.insert("ok".into(), Value::Bool(ok));
    Value::Object(obj)
}

fn ratk_json(c: &RatK) -> Value {
    serde_json::to_value(c).expect("serializable")
}

fn at_k(c: &RatK, k: &KValue) -> Value {
    match k {
        KValue::Generic => ratk_json(c),
        KValue::Rational(k0) => match c.specialize(k0) {
            Ok(v) => Value::String(v.to_string()),
            Err(e) => Value::String(format!("error: {e}")),
        },
    }
}

fn pairs_json(pairs: &[(usize, usize)]) -> Value {
    json!(pairs.iter().map(|(n, m)| [n, m]).collect::<Vec<_>>())
}

#[derive(Clone, Debug)]
pub struct Theorem1Params {
    pub pairs: Vec<(usize, usize)>,
    pub max_weight: u32,
    pub k: KValue,
}

impl Default for Theorem1Params {
    fn default() -> Self {
        Theorem1Params {
            pairs: vec![(2, 1), (1, 2), (2, 2), (3, 2)],
            max_weight: 6,
            k: KValue::Generic,
        }
    }
}

/// ℳP_λ = e·P_λ exactly in ℚ(k) for every hook partition, with e from the
/// operator compared against the closed form.
pub fn theorem1(p: &Theorem1Params, jobs: usize) -> SuiteReport {
    let items: Vec<(usize, usize, Partition)> = p
        .pairs
        .iter()
        .flat_map(|&(n, m)| {
            partitions_up_to(p.max_weight)
                .into_iter()
                .filter(move |l| l.in_hook(n, m))
                .map(move |l| (n, m, l))
        })
        .collect();
    let cases = run_cases(&items, jobs, |(n, m, lambda)| {
        let (n, m) = (*n, *m);
        let poly = super_jack(lambda, n, m).poly;
        let formula = eigenvalue(lambda, n, m);
        let base = json!({"lambda": lambda, "n": n, "m": m});
        match eigenvalue_of(lambda, &poly, n, m) {
            Ok(e) => {
                let matches = e == formula;
                let mut c = case(matches, base);
                c["eigenvalue"] = at_k(&e, &p.k);
                c["formula_matches"] = Value::Bool(matches);
                c
            }
            Err(err) => {
                let mut c = case(false, base);
                c["error"] = Value::String(err.to_string());
                c
            }
        }
    });
    let params = json!({
        "pairs": pairs_json(&p.pairs),
        "max_weight": p.max_weight,
        "k": p.k.to_string(),
    });
    SuiteReport::new("theorem1", params, cases)
}

#[derive(Clone, Debug)]
pub struct SchurParams {
    pub pairs: Vec<(usize, usize)>,
    pub max_weight: u32,
}

impl Default for SchurParams {
    fn default() -> Self {
        SchurParams {
            pairs: vec![(2, 2)],
            max_weight: 5,
        }
    }
}

/// At k = 1, P_λ(x, y; 1) equals the y ↦ −y twisted hook Schur polynomial.
pub fn schur(p: &SchurParams, jobs: usize) -> SuiteReport {
    let one = BigRational::from_integer(1.into());
    let items: Vec<(usize, usize, Partition)> = p
        .pairs
        .iter()
        .flat_map(|&(n, m)| {
            partitions_up_to(p.max_weight)
                .into_iter()
                .map(move |l| (n, m, l))
        })
        .collect();
    let cases = run_cases(&items, jobs, |(n, m, lambda)| {
        let (n, m) = (*n, *m);
        let base = json!({"lambda": lambda, "n": n, "m": m, "in_hook": lambda.in_hook(n, m)});
        match super_jack(lambda, n, m).poly.specialize_k(&one) {
            Ok(lhs) => {
                let equal = lhs == hook_schur_twisted(lambda, n, m);
                let mut c = case(equal, base);
                c["terms"] = json!(lhs.len());
                c
            }
            Err(e) => {
                let mut c = case(false, base);
                c["error"] = Value::String(e.to_string());
                c
            }
        }
    });
    let params = json!({"pairs": pairs_json(&p.pairs), "max_weight": p.max_weight, "k": "1"});
    SuiteReport::new("schur", params, cases)
}

#[derive(Clone, Debug)]
pub struct ClassicalParams {
    pub ns: Vec<usize>,
    pub max_weight: u32,
}

impl Default for ClassicalParams {
    fn default() -> Self {
        ClassicalParams {
            ns: vec![2, 3],
            max_weight: 6,
        }
    }
}

/// m = 0: reduction to classical Jack polynomials and the classical spectrum,
/// agreement with the eigenvector oracle, and integrality of z_μ·χ at k = 1.
pub fn classical(p: &ClassicalParams, jobs: usize) -> SuiteReport {
    #[derive(Clone)]
    enum Item {
        Reduction(usize, Partition),
        Oracle(Partition),
    }
    let parts = partitions_up_to(p.max_weight);
    let mut items: Vec<Item> = Vec::new();
    for &n in &p.ns {
        items.extend(parts.iter().cloned().map(|l| Item::Reduction(n, l)));
    }
    items.extend(parts.iter().cloned().map(Item::Oracle));

    let one = BigRational::from_integer(1.into());
    let cases = run_cases(&items, jobs, |item| match item {
        Item::Reduction(n, lambda) => {
            let n = *n;
            let sj = super_jack(lambda, n, 0).poly;
            let reduces = sj == realize(&jack_in_monomial(lambda), n);
            let mut c = json!({"check": "reduction", "lambda": lambda, "n": n, "reduces": reduces});
            let mut ok = reduces;
            if lambda.len() <= n {
                let classical = classical_eigenvalue(lambda, n);
                let formula_ok = eigenvalue(lambda, n, 0) == classical;
                match extract_eigenvalue(lambda, n, 0) {
                    Ok(e) => {
                        let spectrum_ok = e == classical;
                        c["eigenvalue"] = ratk_json(&e);
                        c["spectrum_matches"] = Value::Bool(spectrum_ok);
                        ok &= spectrum_ok;
                    }
                    Err(err) => {
                        c["error"] = Value::String(err.to_string());
                        ok = false;
                    }
                }
                c["formula_matches"] = Value::Bool(formula_ok);
                ok &= formula_ok;
            }
            case(ok, c)
        }
        Item::Oracle(lambda) => {
            let gs = jack_in_monomial(lambda);
            let oracle = jack_eigenvector_oracle(lambda);
            let agrees = oracle.as_ref().is_ok_and(|o| *o == gs);
            let chi = compute_chi_table(lambda);
            let integral = partitions_up_to(lambda.weight())
                .into_iter()
                .filter(|mu| mu.weight() == lambda.weight())
                .all(|mu| {
                    chi.get(&mu).specialize(&one).is_ok_and(|v| {
                        (v * BigRational::from_integer(mu.z_factor().into())).is_integer()
                    })
                });
            let mut c = json!({
                "check": "jack_oracle",
                "lambda": lambda,
                "oracle_agrees": agrees,
                "characters_integral": integral,
            });
            if let Err(e) = oracle {
                c["error"] = Value::String(e.to_string());
            }
            case(agrees && integral, c)
        }
    });
    let params = json!({"ns": p.ns, "max_weight": p.max_weight, "m": 0});
    SuiteReport::new("classical", params, cases)
}

#[derive(Clone, Debug)]
pub struct HooksParams {
    pub pairs: Vec<(usize, usize)>,
    pub max_weight: u32,
}

impl Default for HooksParams {
    fn default() -> Self {
        HooksParams {
            pairs: vec![(1, 1), (2, 1), (1, 2), (2, 2)],
            max_weight: 6,
        }
    }
}

/// P_λ vanishes exactly off the (n, m)-hook; nonzero ones are block-symmetric
/// and quasi-invariant.
pub fn hooks(p: &HooksParams, jobs: usize) -> SuiteReport {
    let items: Vec<(usize, usize, Partition)> = p
        .pairs
        .iter()
        .flat_map(|&(n, m)| {
            partitions_up_to(p.max_weight)
                .into_iter()
                .map(move |l| (n, m, l))
        })
        .collect();
    let cases = run_cases(&items, jobs, |(n, m, lambda)| {
        let (n, m) = (*n, *m);
        let sj = super_jack(lambda, n, m);
        let in_hook = lambda.in_hook(n, m);
        let vanishes = sj.poly.is_zero();
        let symmetric = sj.is_block_symmetric();
        let quasi = sj.is_quasi_invariant();
        case(
            vanishes != in_hook && symmetric && quasi,
            json!({
                "lambda": lambda, "n": n, "m": m,
                "in_hook": in_hook, "vanishes": vanishes,
                "symmetric": symmetric, "quasi_invariant": quasi,
            }),
        )
    });
    let params = json!({"pairs": pairs_json(&p.pairs), "max_weight": p.max_weight});
    SuiteReport::new("hooks", params, cases)
}

#[derive(Clone, Debug)]
pub struct GaugeParams {
    pub lambdas: Vec<Partition>,
    pub pairs: Vec<(usize, usize)>,
    pub ks: Vec<BigRational>,
    pub points: usize,
    pub seed: u64,
    pub tol: f64,
    /// Points for the first-order-freeness check.
    pub first_order_points: usize,
    pub first_order_tol: f64,
}

impl Default for GaugeParams {
    fn default() -> Self {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        GaugeParams {
            lambdas: ["", "1", "2", "1,1", "2,1"]
                .iter()
                .map(|s| s.parse().expect("valid partition"))
                .collect(),
            pairs: vec![(2, 0), (1, 1), (2, 1), (2, 2)],
            ks: vec![r(1, 2), r(1, 1), r(3, 2), r(7, 3)],
            points: 10,
            seed: 1,
            tol: 1e-8,
            first_order_points: 5,
            first_order_tol: 1e-7,
        }
    }
}

/// Numeric conjugation check 𝒮ℒ(δP_λ) = (e_λ + (ρ,ρ)_k)δP_λ, plus the check
/// that conjugating by δ leaves ℳ + (ρ,ρ)_k with no extra first-order part.
pub fn gauge(p: &GaugeParams, jobs: usize) -> SuiteReport {
    #[derive(Clone)]
    enum Item {
        Conjugation(usize, usize, BigRational, Partition),
        FirstOrder(usize, usize, BigRational),
    }
    let mut items = Vec::new();
    for &(n, m) in &p.pairs {
        for k0 in &p.ks {
            for l in &p.lambdas {
                items.push(Item::Conjugation(n, m, k0.clone(), l.clone()));
            }
            items.push(Item::FirstOrder(n, m, k0.clone()));
        }
    }
    let cases = run_cases(&items, jobs, |item| match item {
        Item::Conjugation(n, m, k0, lambda) => {
            let (n, m) = (*n, *m);
            let base = json!({"check": "conjugation", "lambda": lambda, "n": n, "m": m, "k": k0.to_string()});
            if !lambda.in_hook(n, m) {
                let mut c = case(true, base);
                c["skipped"] = Value::String("outside hook".into());
                return c;
            }
            match conjugation_check(lambda, n, m, k0, p.points, p.seed, p.tol) {
                Ok(r) => {
                    let mut c = case(r.verdict == Verdict::Pass, base);
                    c["report"] = serde_json::to_value(&r).expect("serializable");
                    c
                }
                Err(e) => {
                    let mut c = case(false, base);
                    c["error"] = Value::String(e.to_string());
                    c
                }
            }
        }
        Item::FirstOrder(n, m, k0) => {
            let (n, m) = (*n, *m);
            let base = json!({"check": "first_order_free", "n": n, "m": m, "k": k0.to_string()});
            let rho = rho_norm(n, m).specialize(k0).map(|r| rational_to_f64(&r));
            let tests = default_test_functions(n, m);
            let result = sample_points(n, m, p.first_order_points, p.seed.wrapping_add(1))
                .and_then(|pts| {
                    pts.iter()
                        .map(|pt| residual_potentials(&tests, pt, k0))
                        .collect::<Result<Vec<_>, _>>()
                });
            match (rho, result) {
                (Ok(rho), Ok(values)) => {
                    let mut spread: f64 = 0.0;
                    for vals in &values {
                        for v in vals {
                            spread = spread.max((v - rho).abs() / rho.abs().max(1.0));
                        }
                    }
                    let mut c = case(spread <= p.first_order_tol, base);
                    c["rho_norm"] = json!(sig15(rho));
                    c["max_deviation"] = json!(sig15(spread));
                    c
                }
                (Err(e), _) => {
                    let mut c = case(false, base);
                    c["error"] = Value::String(e.to_string());
                    c
                }
                (_, Err(e)) => {
                    let mut c = case(false, base);
                    c["error"] = Value::String(e.to_string());
                    c
                }
            }
        }
    });
    let params = json!({
        "lambdas": p.lambdas,
        "pairs": pairs_json(&p.pairs),
        "k": p.ks.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "points": p.points,
        "seed": p.seed,
        "tol": p.tol,
        "first_order_points": p.first_order_points,
        "first_order_tol": p.first_order_tol,
    });
    SuiteReport::new("gauge", params, cases)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_suites_pass() {
        let t = theorem1(
            &Theorem1Params {
                pairs: vec![(1, 1)],
                max_weight: 3,
                k: KValue::Generic,
            },
            1,
        );
        assert!(t.passed_all(), "{}", t.to_text());
        let h = hooks(
            &HooksParams {
                pairs: vec![(1, 1)],
                max_weight: 4,
            },
            2,
        );
        assert!(h.passed_all(), "{}", h.to_text());
    }

    #[test]
    fn jobs_do_not_change_reports() {
        let p = SchurParams {
            pairs: vec![(1, 1)],
            max_weight: 4,
        };
        let a = serde_json::to_string(&schur(&p, 1)).unwrap();
        let b = serde_json::to_string(&schur(&p, 3)).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn text_has_one_line_per_case() {
        let r = hooks(
            &HooksParams {
                pairs: vec![(1, 1)],
                max_weight: 2,
            },
            1,
        );
        let text = r.to_text();
        assert_eq!(text.lines().count(), r.cases.len() + 1);
        assert!(text.lines().all(|l| l.starts_with("PASS")));
    }
}
