//! The acceptance criteria as runnable checks. Every comparison is exact
//! integer or exact form equality; the only tolerances are the wall-clock
//! budgets below.

use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::artin_schreier::{artin_schreier_image, as_reduce, is_reduced, ASCharacter};
use crate::base_change::{
    check_frobenius_invariance, check_functoriality_sigma, check_functoriality_theta, check_thm_left,
    check_thm_right, transport, Conductors, ExtensionDesc, Status,
};
use crate::conductor::{cc_coefficients, char_form, total_dim};
use crate::corpus::{oracle_corpus, theorem_corpus};
use crate::curve_oracle::{oracle_conductor, OracleBounds};
use crate::error::Result;
use crate::field::FieldDesc;

pub const CORPUS_SEED: u64 = 0x5eed;
pub const THEOREM_CORPUS_SIZE: usize = 200;
pub const ORACLE_RANDOM_SIZE: usize = 50;
pub const ORACLE_DEG_MAX: u32 = 3;
pub const ORACLE_TRIALS: u32 = 32;
pub const PROPERTY_PERTURBATIONS: usize = 4;

/// Per-instance budget for the single-example criteria.
pub const INSTANCE_BUDGET: Duration = Duration::from_secs(1);
pub const THEOREM_CORPUS_BUDGET: Duration = Duration::from_secs(30);
pub const ORACLE_BUDGET: Duration = Duration::from_secs(60);
pub const PROPERTY_BUDGET: Duration = Duration::from_secs(60);

#[derive(Clone, Debug)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
    /// Notable instances (failures, degenerate squares).
    pub log: Vec<String>,
    pub elapsed: Duration,
}

impl CriterionOutcome {
    pub fn line(&self) -> String {
        format!(
            "criterion {} [{}] {}: {} ({:.2?})",
            self.id,
            if self.passed { "PASS" } else { "FAIL" },
            self.title,
            self.detail,
            self.elapsed
        )
    }
}

/// Collects failures and the slowest instance for one criterion.
struct Tally {
    failures: Vec<String>,
    log: Vec<String>,
    checks: usize,
    slowest: Duration,
}

impl Tally {
    fn new() -> Self {
        Tally { failures: Vec::new(), log: Vec::new(), checks: 0, slowest: Duration::ZERO }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }

    fn timed<T>(&mut self, f: impl FnOnce() -> T) -> T {
        let t = Instant::now();
        let out = f();
        self.slowest = self.slowest.max(t.elapsed());
        out
    }

    fn finish(self, id: u8, title: &'static str, started: Instant, budget: Duration, per_instance: bool) -> CriterionOutcome {
        let elapsed = started.elapsed();
        let over = if per_instance { self.slowest > budget } else { elapsed > budget };
        let mut log = self.log;
        log.extend(self.failures.iter().cloned());
        let passed = self.failures.is_empty() && !over;
        let detail = if !self.failures.is_empty() {
            format!("{} of {} checks failed; first: {}", self.failures.len(), self.checks, self.failures[0])
        } else if over {
            format!("{} checks exact, but over the {:?} budget", self.checks, budget)
        } else {
            format!("{} checks exact", self.checks)
        };
        CriterionOutcome { id, title, passed, detail, log, elapsed }
    }
}

fn k(p: u64, a: u32, b: u32) -> FieldDesc {
    FieldDesc::with_prime(p, 1, a, b).expect("small prime field")
}

fn pow(p: u64, e: u32) -> u64 {
    p.pow(e)
}

fn both(c: Result<Conductors>) -> Option<(u64, u64)> {
    c.ok().map(|c| (c.sw, c.dt))
}

/// The character `x / y^(p^(n+1))` over `K_{0,0}` and its pull-back to
/// `K_{n,0}`.
fn tower_example(p: u64, n: u32) -> (ASCharacter, ExtensionDesc) {
    let c = ASCharacter::parse(&k(p, 0, 0), &format!("x/y^{}", pow(p, n + 1))).expect("well-formed");
    (c, ExtensionDesc::over(&k(p, 0, 0), n, 0))
}

pub fn criterion_1() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [3, 5] {
        for n in [1, 2] {
            let got = t.timed(|| {
                let (c, ext) = tower_example(p, n);
                let down = both(Conductors::of(&c));
                let up = transport(&c, &ext).ok();
                let expected = ext.to().parse(&format!("x^(1/{})/y^{}", pow(p, n), p)).ok();
                let up_cond = up.as_ref().and_then(|u| both(Conductors::of(u)));
                (down, up.map(|u| u.f().clone()), expected, up_cond)
            });
            let q = pow(p, n + 1);
            t.check(got.0 == Some((q, q)), || format!("p={p} n={n}: K conductors {:?} != ({q},{q})", got.0));
            t.check(got.1.is_some() && got.1 == got.2, || format!("p={p} n={n}: reduced image {:?}", got.1.as_ref().map(|f| f.to_surface_string())));
            t.check(got.3 == Some((p, p)), || format!("p={p} n={n}: K_n conductors {:?} != ({p},{p})", got.3));
        }
    }
    t.finish(1, "tower example conductors", start, INSTANCE_BUDGET, true)
}

pub fn criterion_2() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [3, 5] {
        let (down, up) = t.timed(|| {
            let c = ASCharacter::parse(&k(p, 0, 0), &format!("x/y^{p}")).expect("well-formed");
            let up = transport(&c, &ExtensionDesc::over(&k(p, 0, 0), 0, 1)).ok();
            (both(Conductors::of(&c)), up.and_then(|u| both(Conductors::of(&u))))
        });
        t.check(down == Some((p, p)), || format!("p={p}: K conductors {down:?}"));
        t.check(up == Some((p * p, p * p)), || format!("p={p}: K' conductors {up:?}"));
    }
    t.finish(2, "ramified base change example", start, INSTANCE_BUDGET, true)
}

pub fn criterion_3() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [3, 5] {
        let r = t.timed(|| {
            let c = ASCharacter::parse(&k(p, 0, 0), &format!("x/y^{p}")).expect("well-formed");
            check_thm_right(&c, &ExtensionDesc::over(&k(p, 0, 0), 0, 1))
        });
        match r {
            Ok(r) => t.check(
                r.status == Status::Equality && r.factor == p && r.lhs == r.bound && r.lhs.sw == p * p,
                || format!("right p={p}: {:?} lhs {:?} bound {:?}", r.status, r.lhs, r.bound),
            ),
            Err(e) => t.check(false, || format!("right p={p}: {e}")),
        }
        for n in [1, 2] {
            let r = t.timed(|| {
                let ext = ExtensionDesc::over(&k(p, 0, 0), n, 0);
                let c = ASCharacter::parse(ext.to(), &format!("x^(1/{})/y^{}", pow(p, n), p)).expect("well-formed");
                check_thm_left(&c, &ext)
            });
            let q = pow(p, n + 1);
            match r {
                Ok(r) => t.check(
                    r.status == Status::Equality && r.factor == pow(p, n) && r.lhs == r.bound && r.lhs.sw == q,
                    || format!("left p={p} n={n}: {:?} lhs {:?} bound {:?}", r.status, r.lhs, r.bound),
                ),
                Err(e) => t.check(false, || format!("left p={p} n={n}: {e}")),
            }
        }
    }
    t.finish(3, "sharpness of both bounds", start, INSTANCE_BUDGET, true)
}

pub fn criterion_4() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for (i, e) in theorem_corpus(THEOREM_CORPUS_SIZE, CORPUS_SEED).iter().enumerate() {
        let reports = [
            check_thm_right(&e.base, &e.ext),
            check_thm_left(&e.top, &e.ext),
            check_frobenius_invariance(&e.base, e.frob_n),
        ];
        for r in reports {
            match r {
                Ok(r) => t.check(!r.status.is_fail(), || {
                    format!("#{i} {} over {}: lhs {:?} bound {:?}", r.theorem, e.ext, r.lhs, r.bound)
                }),
                Err(err) => t.check(false, || format!("#{i} over {}: {err}", e.ext)),
            }
        }
    }
    t.finish(4, "bounds on the random corpus", start, THEOREM_CORPUS_BUDGET, false)
}

pub fn criterion_5() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    for p in [3, 5] {
        for n in [1, 2] {
            let (down, up) = t.timed(|| {
                let (c, ext) = tower_example(p, n);
                let down = cc_coefficients(&c).ok();
                let up = transport(&c, &ext).ok().and_then(|u| cc_coefficients(&u).ok());
                (down, up)
            });
            let q = pow(p, n + 1) as i64;
            let shape = |cc: &Option<crate::conductor::CCReport>| {
                cc.as_ref().map(|cc| (cc.zero_section_coeff, cc.divisor_coeff, cc.direction()))
            };
            t.check(shape(&down) == Some((-1, -q, "du".into())), || format!("p={p} n={n}: {:?}", shape(&down)));
            t.check(shape(&up) == Some((-1, -(p as i64), "du".into())), || format!("p={p} n={n} pulled back: {:?}", shape(&up)));
        }
    }
    t.finish(5, "characteristic cycle coefficients", start, INSTANCE_BUDGET, true)
}

/// The worked examples fed to the oracle, as `(p, a, b, expression)`.
pub fn oracle_examples() -> Vec<(u64, u32, u32, &'static str)> {
    vec![
        (3, 0, 0, "x/y^9"),
        (3, 0, 0, "x/y^27"),
        (5, 0, 0, "x/y^25"),
        (5, 0, 0, "x/y^125"),
        (3, 1, 0, "x^(1/3)/y^3"),
        (3, 2, 0, "x^(1/9)/y^3"),
        (5, 1, 0, "x^(1/5)/y^5"),
        (3, 0, 0, "x/y^3"),
        (5, 0, 0, "x/y^5"),
        (3, 0, 1, "x/y^3"),
        (5, 0, 1, "x/y^5"),
        (3, 0, 0, "x/y"),
        (3, 0, 0, "y^-2"),
    ]
}

pub fn criterion_6() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut chars: Vec<ASCharacter> = oracle_examples()
        .into_iter()
        .map(|(p, a, b, s)| ASCharacter::parse(&k(p, a, b), s).expect("well-formed"))
        .collect();
    chars.extend(oracle_corpus(ORACLE_RANDOM_SIZE, CORPUS_SEED));
    for c in &chars {
        let p = c.field().p() as u32;
        let bounds = OracleBounds {
            mu_max: p,
            deg_max: ORACLE_DEG_MAX,
            trials: ORACLE_TRIALS,
            seed: CORPUS_SEED,
            ext_degree: None,
        };
        let sym = both(Conductors::of(c));
        let est = oracle_conductor(c.f(), &bounds);
        match (sym, est) {
            (Some((sw, dt)), Ok(est)) => {
                let bounded = est.sw_est <= num_rational::Ratio::from_integer(sw as i64)
                    && est.dt_est <= num_rational::Ratio::from_integer(dt as i64);
                t.check(bounded, || format!("{} over {}: a curve ratio exceeds ({sw},{dt})", c, c.field()));
                t.check(est.sw_ceiling() == sw && est.dt_ceiling() == dt, || {
                    format!(
                        "{} over {}: oracle ({}, {}) vs symbolic ({sw},{dt})",
                        c,
                        c.field(),
                        est.sw_ceiling(),
                        est.dt_ceiling()
                    )
                });
            }
            (sym, est) => t.check(false, || format!("{c}: symbolic {sym:?}, oracle {:?}", est.err())),
        }
    }
    t.finish(6, "curve oracle agreement", start, ORACLE_BUDGET, false)
}

pub fn criterion_7() -> CriterionOutcome {
    let start = Instant::now();
    let mut t = Tally::new();
    let mut rng = ChaCha8Rng::seed_from_u64(CORPUS_SEED ^ 0x7);
    let corpus = theorem_corpus(THEOREM_CORPUS_SIZE, CORPUS_SEED);
    let mut degenerate_theta = 0;
    let mut degenerate_sigma = 0;
    for (i, e) in corpus.iter().enumerate() {
        for c in [&e.base, &e.top] {
            let field = c.field();
            let f = c.f();
            let again = as_reduce(f);
            t.check(again.reduced == *f && again.witness.is_zero(), || format!("#{i} {c}: reduction not idempotent"));
            for _ in 0..PROPERTY_PERTURBATIONS {
                let unit = field.fq().element(rng.gen_range(1..field.fq().order())).expect("in range");
                let g = field.monomial(unit, rng.gen_range(-3..=6), rng.gen_range(-10..=2));
                let h = f.add(&artin_schreier_image(&g)).expect("same field");
                let r = as_reduce(&h);
                let sound = artin_schreier_image(&r.witness).add(&r.reduced).map(|x| x == h).unwrap_or(false);
                t.check(sound && is_reduced(&r.reduced), || format!("#{i} {c}: unsound reduction of {}", h.to_surface_string()));
                t.check(r.reduced.polar_part() == f.polar_part(), || {
                    format!("#{i} {c}: class representative moved under g = {}", g.to_surface_string())
                });
            }
            match (total_dim(c), char_form(c)) {
                (Ok(dt), Ok(cf)) => {
                    t.check(cf.level == dt as i64 && !cf.is_zero(), || format!("#{i} {c}: char form {cf}"));
                }
                (dt, cf) => t.check(false, || format!("#{i} {c}: {:?} {:?}", dt.err(), cf.err())),
            }
        }
        match check_functoriality_theta(&e.base, &e.ext) {
            Ok(r) => {
                t.check(r.status != Status::Fail, || format!("#{i} theta over {}: {} vs {}", e.ext, r.lhs, r.rhs));
                if r.status == Status::Degenerate {
                    degenerate_theta += 1;
                }
            }
            Err(err) => t.check(false, || format!("#{i} theta: {err}")),
        }
        match check_functoriality_sigma(&e.top, &e.ext) {
            Ok(r) => {
                t.check(r.status != Status::Fail, || format!("#{i} sigma over {}: {} vs {}", e.ext, r.lhs, r.rhs));
                if r.status == Status::Degenerate {
                    degenerate_sigma += 1;
                    t.log.push(format!(
                        "sigma degenerate #{i}: {} over {} (untwisted {}, killed {:?}, level {})",
                        e.top,
                        e.ext,
                        r.untwisted,
                        r.killed,
                        r.level
                    ));
                }
            }
            Err(err) => t.check(false, || format!("#{i} sigma: {err}")),
        }
    }
    let mut out = t.finish(7, "property suites", start, PROPERTY_BUDGET, false);
    out.detail = format!("{}; degenerate squares: theta {degenerate_theta}, sigma {degenerate_sigma}", out.detail);
    out
}

pub fn run_all() -> Vec<CriterionOutcome> {
    vec![criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(), criterion_6(), criterion_7()]
}
