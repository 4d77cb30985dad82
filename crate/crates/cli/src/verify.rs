//! Randomized verification suites. Every trial is generated from a
//! deterministic per-trial seed; failures dump replayable session scripts.

use eulerform_core::asymptotics;
use eulerform_core::field::Field;
use eulerform_core::homology::Functor;
use eulerform_core::instances::{self, InstanceParams, SplitMix64};
use eulerform_core::invariants::{self, GradeValue, LastTor, Outcome};
use eulerform_core::module::{GradedModule, Length};
use eulerform_core::poly::Polynomial;
use eulerform_core::ring::{PolyRing, Ring};
use serde_json::{json, Value as Json};

pub struct SuiteSummary {
    pub suite: String,
    pub attempted: usize,
    pub in_regime: usize,
    pub passed: usize,
    pub failed: usize,
    pub counterexamples: Vec<String>,
    pub extra: Json,
}

impl SuiteSummary {
    fn new(suite: &str) -> Self {
        SuiteSummary {
            suite: suite.to_string(),
            attempted: 0,
            in_regime: 0,
            passed: 0,
            failed: 0,
            counterexamples: Vec::new(),
            extra: Json::Null,
        }
    }

    pub fn headline(&self) -> String {
        format!(
            "attempted {}, in-regime {}, passed {}, failed {}",
            self.attempted, self.in_regime, self.passed, self.failed
        )
    }

    pub fn to_json(&self) -> Json {
        json!({
            "suite": self.suite,
            "attempted": self.attempted,
            "in_regime": self.in_regime,
            "passed": self.passed,
            "failed": self.failed,
            "counterexamples": self.counterexamples,
            "extra": self.extra,
        })
    }

    fn record(&mut self, pass: bool, dump: impl FnOnce() -> String) {
        self.in_regime += 1;
        if pass {
            self.passed += 1;
        } else {
            self.failed += 1;
            self.counterexamples.push(dump());
        }
    }
}

pub const SUITES: &[&str] = &[
    "chan",
    "graded-chan",
    "theorem-a",
    "serre-vanishing",
    "depth-formula",
    "hochster-lichtenbaum",
    "sign-trichotomy",
    "jorgensen",
    "herbrand",
];

pub fn run_suite(
    suite: &str,
    trials: usize,
    seed: u64,
    vars: usize,
    maxdeg: u32,
) -> Result<SuiteSummary, String> {
    if trials < 1 {
        return Err("trials must be at least 1".into());
    }
    if !(1..=4).contains(&vars) {
        return Err("vars must be between 1 and 4".into());
    }
    let params = InstanceParams {
        nvars: vars,
        max_degree: maxdeg.max(1),
    };
    match suite {
        "chan" => Ok(chan_suite(trials, seed, params, false)),
        "graded-chan" => Ok(chan_suite(trials, seed, params, true)),
        "theorem-a" => Ok(theorem_a_suite(trials, seed, params)),
        "serre-vanishing" => Ok(serre_vanishing_suite(trials, seed, params)),
        "depth-formula" => Ok(depth_formula_suite(trials, seed, params)),
        "hochster-lichtenbaum" => Ok(hochster_lichtenbaum_suite(trials, seed, params)),
        "sign-trichotomy" => Ok(sign_trichotomy_suite(trials, seed, params)),
        "jorgensen" => Ok(jorgensen_suite(trials, seed, params)),
        "herbrand" => Ok(herbrand_suite(trials, seed, params)),
        other => Err(format!(
            "unknown suite \"{other}\"; available: {}",
            SUITES.join(", ")
        )),
    }
}

fn ideal_of(m: &GradedModule) -> String {
    let gens: Vec<String> = m
        .relations()
        .iter()
        .map(|r| r.component(0).to_string())
        .collect();
    gens.join(", ")
}

fn dump_pair(vars: usize, m: &GradedModule, n: &GradedModule, call: &str) -> String {
    let names = ["x", "y", "z", "w"];
    format!(
        "ring R = QQ[{}];\nmodule M = R/({});\nmodule N = R/({});\ncompute {call};\n",
        names[..vars].join(","),
        ideal_of(m),
        ideal_of(n)
    )
}

fn dump_single(vars: usize, m: &GradedModule, call: &str) -> String {
    let names = ["x", "y", "z", "w"];
    format!(
        "ring R = QQ[{}];\nmodule M = R/({});\ncompute {call};\n",
        names[..vars].join(","),
        ideal_of(m)
    )
}

fn chan_suite(trials: usize, seed: u64, params: InstanceParams, both_sides: bool) -> SuiteSummary {
    let mut s = SuiteSummary::new(if both_sides { "graded-chan" } else { "chan" });
    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let (_, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        match invariants::chan_check(&m, &n, None) {
            Ok(Outcome::Checked(rep)) => {
                let pass = if both_sides {
                    rep.chi_side_holds && rep.xi_side_holds
                } else {
                    rep.chan_holds
                };
                s.record(pass, || dump_pair(params.nvars, &m, &n, "chan(M, N)"));
            }
            Ok(Outcome::Skipped { .. }) => {}
            Err(e) => {
                s.failed += 1;
                s.counterexamples.push(format!(
                    "# error: {e}\n{}",
                    dump_pair(params.nvars, &m, &n, "chan(M, N)")
                ));
            }
        }
    }
    s
}

fn theorem_a_suite(trials: usize, seed: u64, params: InstanceParams) -> SuiteSummary {
    let mut s = SuiteSummary::new("theorem-a");
    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let (_, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        let grade = match invariants::grade_of(&m, None) {
            Ok(GradeValue::Finite(g)) => g,
            _ => continue,
        };
        let mut any = false;
        let mut all_pass = true;
        let mut bad_j = 0;
        for j in 1..=grade {
            match invariants::vanishing_equivalence_check(j, &m, &n, None) {
                Ok(Outcome::Checked(rep)) => {
                    any = true;
                    if !(rep.equivalent && rep.xi_j_nonneg) {
                        all_pass = false;
                        bad_j = j;
                    }
                }
                Ok(Outcome::Skipped { .. }) => {}
                Err(_) => {
                    any = true;
                    all_pass = false;
                    bad_j = j;
                }
            }
        }
        if any {
            s.record(all_pass, || {
                dump_pair(params.nvars, &m, &n, &format!("theorem_a({bad_j}, M, N)"))
            });
        }
    }
    s
}

fn serre_vanishing_suite(trials: usize, seed: u64, params: InstanceParams) -> SuiteSummary {
    let mut s = SuiteSummary::new("serre-vanishing");
    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let (ring, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        let dim_sum = m.dimension().lower_bound() + n.dimension().lower_bound();
        if dim_sum >= ring.dimension() {
            continue;
        }
        let chi = invariants::chi_partial(0, &m, &n, None);
        let xi = invariants::xi_partial(0, &m, &n, None);
        match (chi, xi) {
            (Ok(chi), Ok(xi)) => {
                s.record(chi.value == 0 && xi.value == 0, || {
                    dump_pair(params.nvars, &m, &n, "xi(0, M, N)")
                });
            }
            _ => {
                s.record(false, || dump_pair(params.nvars, &m, &n, "xi(0, M, N)"));
            }
        }
    }
    s
}

fn depth_formula_suite(trials: usize, seed: u64, params: InstanceParams) -> SuiteSummary {
    let mut s = SuiteSummary::new("depth-formula");
    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let (ring, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        let depth_r = ring.nvars() as i64;
        let (dm, dn) = match (
            eulerform_core::homology::module_depth(&m, None),
            eulerform_core::homology::module_depth(&n, None),
        ) {
            (
                Ok(eulerform_core::homology::Depth::Finite(a)),
                Ok(eulerform_core::homology::Depth::Finite(b)),
            ) => (a as i64, b as i64),
            _ => continue,
        };
        let expected = depth_r - dm - dn;
        let q = match invariants::q_last_tor(&m, &n, None) {
            Ok(LastTor::Finite(q)) => q as i64,
            Ok(LastTor::MinusInfinity) => continue,
            Err(_) => {
                s.record(false, || dump_pair(params.nvars, &m, &n, "q(M, N)"));
                continue;
            }
        };
        s.record(q == expected, || dump_pair(params.nvars, &m, &n, "q(M, N)"));
    }
    s
}

fn hochster_lichtenbaum_suite(trials: usize, seed: u64, params: InstanceParams) -> SuiteSummary {
    let mut s = SuiteSummary::new("hochster-lichtenbaum");
    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let (_, m, n) = instances::random_pair(&mut rng, params);
        let all = match invariants::functor_lengths(Functor::Tor, &m, &n, None) {
            Ok(all) => all,
            Err(_) => continue,
        };
        if !all.complete {
            continue;
        }
        let mut any = false;
        let mut ok = true;
        let mut bad_j = 0;
        for j in 1..=all.lengths.len() {
            let tail = &all.lengths[j.min(all.lengths.len())..];
            if tail.iter().any(|l| matches!(l, Length::Infinite)) {
                continue;
            }
            any = true;
            let chi_j: i64 = tail
                .iter()
                .enumerate()
                .map(|(off, l)| {
                    let sign = if off % 2 == 0 { 1 } else { -1 };
                    sign * l.finite().unwrap() as i64
                })
                .sum();
            let all_zero = tail.iter().all(|l| l.finite() == Some(0));
            if (chi_j == 0) != all_zero {
                ok = false;
                bad_j = j;
            }
        }
        if any {
            s.record(ok, || {
                dump_pair(params.nvars, &m, &n, &format!("chi({bad_j}, M, N)"))
            });
        }
    }
    s
}

fn sign_trichotomy_suite(trials: usize, seed: u64, params: InstanceParams) -> SuiteSummary {
    let mut s = SuiteSummary::new("sign-trichotomy");
    let mut branch_low = 0usize; // dim M + dim N < dim R: ξⱼ ≥ 0, zero iff grade ≥ j
    let mut branch_even = 0usize; // dim sum = dim R, grade+j even: ξⱼ > 0
    let mut branch_odd = 0usize; // dim sum = dim R, odd, Ext^{j-1} = 0: ξⱼ < 0

    // fixed odd-case witnesses: ξ₁ = -3, 0, 1 on the three reference pairs
    let ring = Ring::polynomial(PolyRing::standard(Field::Rationals, &["x", "y", "z"]));
    let pr = ring.poly_ring().clone();
    let cyc = |gens: &[&str]| {
        GradedModule::cyclic(
            ring.clone(),
            gens.iter()
                .map(|g| Polynomial::parse(&pr, g).unwrap())
                .collect(),
        )
        .unwrap()
    };
    let witnesses = [
        (cyc(&["y^2", "z^2"]), cyc(&["x^2", "x*y", "x*z"]), -3),
        (cyc(&["y", "z"]), cyc(&["x^2", "x*y", "x*z"]), 0),
        (cyc(&["y", "z"]), cyc(&["x^3", "x*y", "x*z"]), 1),
    ];
    for (m, n, expected) in &witnesses {
        s.attempted += 1;
        match invariants::xi_partial(1, m, n, None) {
            Ok(sum) => s.record(sum.value == *expected, || dump_pair(3, m, n, "xi(1, M, N)")),
            Err(_) => s.record(false, || dump_pair(3, m, n, "xi(1, M, N)")),
        }
    }

    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let (ring, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        let dim_sum = m.dimension().lower_bound() + n.dimension().lower_bound();
        let dim_r = ring.dimension();
        let grade = match invariants::grade_of(&m, None) {
            Ok(GradeValue::Finite(g)) => g,
            _ => continue,
        };
        let mut any = false;
        let mut ok = true;
        let mut bad_j = 0;
        for j in 1..=grade {
            let xi_j = match invariants::xi_partial(j, &m, &n, None) {
                Ok(v) => v.value,
                Err(_) => continue,
            };
            if dim_sum < dim_r {
                any = true;
                branch_low += 1;
                let grade_mn = match invariants::grade_pair(&m, &n, None) {
                    Ok(g) => g,
                    Err(_) => continue,
                };
                if !(xi_j >= 0 && ((xi_j == 0) == grade_mn.at_least(j))) {
                    ok = false;
                    bad_j = j;
                }
            } else if dim_sum == dim_r {
                if (grade + j) % 2 == 0 {
                    any = true;
                    branch_even += 1;
                    if xi_j <= 0 {
                        ok = false;
                        bad_j = j;
                    }
                } else {
                    // odd: need Ext^{j-1}(M,N) = 0 for the negative branch
                    let prevding = match eulerform_core::homology::ext_module(j - 1, &m, &n, None) {
                        Ok(h) => h.module.is_zero(),
                        Err(_) => continue,
                    };
                    if prevding {
                        any = true;
                        branch_odd += 1;
                        if xi_j >= 0 {
                            ok = false;
                            bad_j = j;
                        }
                    }
                }
            }
        }
        if any {
            s.record(ok, || {
                dump_pair(params.nvars, &m, &n, &format!("xi({bad_j}, M, N)"))
            });
        }
    }
    s.extra = json!({
        "branch_low_dimension": branch_low,
        "branch_even_positive": branch_even,
        "branch_odd_negative": branch_odd,
    });
    s
}

fn jorgensen_suite(trials: usize, seed: u64, params: InstanceParams) -> SuiteSummary {
    let mut s = SuiteSummary::new("jorgensen");
    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let ring = instances::standard_ring(params.nvars);
        let m = instances::random_module(&mut rng, &ring, params);
        match invariants::self_ext_check(&m, None) {
            Ok(Outcome::Checked(rep)) => {
                s.record(rep.pass, || dump_single(params.nvars, &m, "jorgensen(M)"));
            }
            Ok(Outcome::Skipped { .. }) => {}
            Err(_) => s.record(false, || dump_single(params.nvars, &m, "jorgensen(M)")),
        }
    }
    s
}

fn herbrand_suite(trials: usize, seed: u64, params: InstanceParams) -> SuiteSummary {
    let mut s = SuiteSummary::new("herbrand");

    // fixed hypersurface instance: exact h₁ = η₁ = 0 with a period certificate
    let pr = PolyRing::standard(Field::Rationals, &["x"]);
    let x2 = Polynomial::parse(&pr, "x^2").unwrap();
    let hyper = Ring::quotient(pr, vec![x2]).unwrap();
    let k = GradedModule::residue_field(hyper);
    s.attempted += 1;
    let fixed_ok = match (
        asymptotics::herbrand_h(1, &k, &k, 8),
        asymptotics::eta(1, &k, &k, 8),
    ) {
        (Ok(h), Ok(e)) => h.certificate.is_some() && h.is_exact_zero() && e.is_exact_zero(),
        _ => false,
    };
    s.record(fixed_ok, || {
        "ring R = QQ[x]/(x^2);\nmodule M = R/(x);\ncompute h(1, M, M);\n".to_string()
    });

    for trial in 0..trials {
        s.attempted += 1;
        let mut rng = SplitMix64::for_trial(seed, trial as u64);
        let (_, m, n, _) = instances::random_finite_tensor_pair(&mut rng, params);
        let consistent = asymptotics::consistency_with_euler_forms(&m, &n, 12);
        let higher_zero = asymptotics::herbrand_h(2, &m, &n, 12)
            .map(|h| h.is_exact_zero())
            .unwrap_or(false);
        match consistent {
            Ok(okc) => {
                s.record(okc && higher_zero, || {
                    dump_pair(params.nvars, &m, &n, "h(0, M, N)")
                });
            }
            Err(_) => s.record(false, || dump_pair(params.nvars, &m, &n, "h(0, M, N)")),
        }
    }
    s
}
