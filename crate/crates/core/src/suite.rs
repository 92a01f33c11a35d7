//! Reproducible verification batteries, shared by the `verify-suite` command
//! and the acceptance tests.
//!
//! Every battery is deterministic: random instances come from a fixed seed.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use crate::classification::{
    classify, classify_f1, classify_f3, default_f2_samples, f1_representative, f2_representatives,
    f3_representatives, sqrt_two_over_n, tnil_hypothesis, verify_recurrence_ak,
    RepresentativeLabel,
};
use crate::combinatorics::{
    catalan, catalan_convolution_as_printed_sides, p_catalan, rothe, verify_catalan_convolution,
};
use crate::derivations::{
    derivation_space, f1_constraint_solutions, f1_derivation_matrix, f1_template_space,
    f2_template_space, is_characteristically_nilpotent, is_derivation, CharNilpotencyVerdict,
    F1DerivationAssignment, PairLocus, WitnessOptions,
};
use crate::error::Result;
use crate::exactlinalg::{Field, Scalar};
use crate::families::{
    build_example, build_f1, build_f2, build_f3, F1Params, F2Params, F3Params, FamilyParams,
};
use crate::isomorphism::{
    transform_f3, verify_criterion_f1, verify_criterion_f2, verify_criterion_f3, BasisChangeF1,
    BasisChangeF2, BasisChangeF3,
};

const SEED: u64 = 0x1e1b_2014;

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    /// Largest `n` any battery visits (each battery also has its own cap).
    pub n_max: usize,
    pub witness: WitnessOptions,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            n_max: 10,
            witness: WitnessOptions::default(),
        }
    }
}

impl SuiteConfig {
    /// The effort level the acceptance criteria are stated at.
    pub fn full() -> Self {
        SuiteConfig {
            n_max: 14,
            ..Default::default()
        }
    }

    fn cap(&self, hi: usize) -> usize {
        hi.min(self.n_max)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckOutcome {
    pub id: String,
    pub title: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
}

/// Collects sub-results of one battery.
struct Tally {
    ok: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new() -> Self {
        Tally {
            ok: 0,
            failures: Vec::new(),
        }
    }

    fn record(&mut self, passed: bool, what: impl FnOnce() -> String) {
        if passed {
            self.ok += 1;
        } else {
            self.failures.push(what());
        }
    }

    fn finish(self, id: &str, title: &str, started: Instant) -> CheckOutcome {
        let total = self.ok + self.failures.len();
        let mut detail = format!("{}/{} checks passed", self.ok, total);
        if !self.failures.is_empty() {
            let shown: Vec<_> = self.failures.iter().take(6).cloned().collect();
            detail.push_str("; failing: ");
            detail.push_str(&shown.join("; "));
            if self.failures.len() > shown.len() {
                detail.push_str(&format!("; ... {} more", self.failures.len() - shown.len()));
            }
        }
        CheckOutcome {
            id: id.into(),
            title: title.into(),
            passed: self.failures.is_empty() && total > 0,
            detail,
            elapsed: started.elapsed(),
        }
    }
}

fn errored(id: &str, title: &str, started: Instant, e: crate::error::Error) -> CheckOutcome {
    CheckOutcome {
        id: id.into(),
        title: title.into(),
        passed: false,
        detail: format!("error: {e}"),
        elapsed: started.elapsed(),
    }
}

fn run(id: &str, title: &str, body: impl FnOnce(&mut Tally) -> Result<()>) -> CheckOutcome {
    let started = Instant::now();
    let mut t = Tally::new();
    match body(&mut t) {
        Ok(()) => t.finish(id, title, started),
        Err(e) => errored(id, title, started, e),
    }
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_int(x)).collect()
}

fn fmt_scalars(v: &[Scalar]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(","))
}

/// Diagonal entries `(a_0, b_1)` of a witness.
fn witness_pair(v: &CharNilpotencyVerdict) -> Option<(Scalar, Scalar)> {
    v.witness
        .as_ref()
        .map(|w| (w.get(0, 0).clone(), w.get(1, 1).clone()))
}

/// Random first-family parameters with `theta != alpha_n` and some nonzero alpha.
pub fn random_f1_off_locus(rng: &mut StdRng, n: usize) -> F1Params {
    loop {
        let a: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-3..=3)).collect();
        let theta = rng.gen_range(-3..=3);
        if a.iter().any(|&x| x != 0) && theta != a[n - 3] {
            return F1Params::from_ints(n, &a, theta).expect("valid parameters");
        }
    }
}

pub fn random_f1(rng: &mut StdRng, n: usize, span: i64) -> F1Params {
    let a: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-span..=span)).collect();
    F1Params::from_ints(n, &a, rng.gen_range(-span..=span)).expect("valid parameters")
}

pub fn random_f2(rng: &mut StdRng, n: usize, span: i64) -> F2Params {
    let b: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-span..=span)).collect();
    F2Params::from_ints(n, &b, rng.gen_range(-span..=span)).expect("valid parameters")
}

fn nonzero(rng: &mut StdRng, span: i64) -> i64 {
    loop {
        let x = rng.gen_range(-span..=span);
        if x != 0 {
            return x;
        }
    }
}

/// Example table, its derivations and the refuted criterion.
pub fn check_example(cfg: &SuiteConfig) -> CheckOutcome {
    run("1", "example reproduction", |t| {
        let p = F1Params::from_ints(5, &[1, -2, 5], 5)?;
        let l = build_f1(&p)?;
        t.record(l == build_example(), || {
            "built table differs from printed table".into()
        });
        let der = derivation_space(&l);
        t.record(der.dim() == 6, || {
            format!("dim Der = {}, expected 6", der.dim())
        });
        let mut asn = F1DerivationAssignment::zero(5);
        asn.a[0] = Scalar::one();
        asn.a[1] = Scalar::one();
        let d = f1_derivation_matrix(&p, &asn)?;
        t.record(d.diagonal_entries() == ints(&[1, 2, 3, 4, 5, 6]), || {
            format!("diagonal {}", fmt_scalars(&d.diagonal_entries()))
        });
        t.record(is_derivation(&l, &d)?, || {
            "a0=a1=1 matrix is not a derivation".into()
        });
        t.record(!d.is_nilpotent()?, || {
            "a0=a1=1 derivation is nilpotent".into()
        });
        t.record(tnil_hypothesis(&p), || {
            "criterion hypothesis does not hold".into()
        });
        let v = is_characteristically_nilpotent(&l, &cfg.witness)?;
        t.record(!v.is_char_nilpotent && v.witness.is_some(), || {
            "Engel verdict: characteristically nilpotent".into()
        });
        Ok(())
    })
}

/// Closed-form representatives satisfy the coefficient recurrence.
pub fn check_catalan_representatives(cfg: &SuiteConfig) -> CheckOutcome {
    run("2", "Catalan closed form vs recurrence", |t| {
        for n in 5..=cfg.cap(14) {
            for s in 3..=n {
                let p = f1_representative(n, s)?;
                t.record(verify_recurrence_ak(&p, s), || {
                    format!("recurrence n={n} s={s}")
                });
                let tag = classify_f1(&p);
                t.record(tag.label == RepresentativeLabel::F1s { s }, || {
                    format!("classify n={n} s={s} gave {tag}")
                });
            }
        }
        Ok(())
    })
}

/// First-family members off the representative locus are characteristically nilpotent.
pub fn check_f1_off_locus(cfg: &SuiteConfig) -> CheckOutcome {
    run("3", "first family: theta != alpha_n", |t| {
        let mut rng = StdRng::seed_from_u64(SEED ^ 3);
        let hi = cfg.cap(9).max(4);
        for _ in 0..50 {
            let n = rng.gen_range(4..=hi);
            let p = random_f1_off_locus(&mut rng, n);
            let v = is_characteristically_nilpotent(&build_f1(&p)?, &cfg.witness)?;
            let locus = f1_constraint_solutions(&p)?;
            t.record(v.is_char_nilpotent && locus == PairLocus::Origin, || {
                format!(
                    "n={n} alpha={} theta={}: engel cn={} locus={locus:?}",
                    fmt_scalars(p.alphas()),
                    p.theta,
                    v.is_char_nilpotent
                )
            });
        }
        Ok(())
    })
}

/// Odd `n`, `gamma = 1`, some interior beta nonzero.
pub fn check_f2_odd(cfg: &SuiteConfig) -> CheckOutcome {
    run("4a", "second family, odd n, gamma = 1", |t| {
        let mut rng = StdRng::seed_from_u64(SEED ^ 0x4a);
        for n in [5usize, 7, 9]
            .into_iter()
            .filter(|&n| n <= cfg.n_max.max(5))
        {
            for _ in 0..8 {
                let mut b: Vec<i64> = (0..n - 2).map(|_| rng.gen_range(-3..=3)).collect();
                if b[..n - 3].iter().all(|&x| x == 0) {
                    let i = rng.gen_range(0..n - 3);
                    b[i] = nonzero(&mut rng, 3);
                }
                let p = F2Params::from_ints(n, &b, 1)?;
                let v = is_characteristically_nilpotent(&build_f2(&p)?, &cfg.witness)?;
                t.record(v.is_char_nilpotent, || {
                    format!(
                        "n={n} beta={}: not characteristically nilpotent",
                        fmt_scalars(p.betas())
                    )
                });
            }
        }
        Ok(())
    })
}

fn even_case(t: &mut Tally, cfg: &SuiteConfig, label: &str, p: &F2Params) -> Result<()> {
    let n = p.n();
    let v = is_characteristically_nilpotent(&build_f2(p)?, &cfg.witness)?;
    let on_line = witness_pair(&v).is_some_and(|(a0, b1)| b1 == &a0 * &Scalar::ratio(n as i64, 2));
    t.record(!v.is_char_nilpotent && on_line, || {
        if v.is_char_nilpotent {
            format!(
                "{label} n={n} beta={} gamma={}: characteristically nilpotent (dim Der = {})",
                fmt_scalars(p.betas()),
                p.gamma,
                v.der_dim
            )
        } else {
            format!("{label} n={n}: witness off the line b1 = n a0/2")
        }
    });
    Ok(())
}

/// Even `n = 8`: one-parameter samples and the isolated representative.
pub fn check_f2_even(cfg: &SuiteConfig) -> CheckOutcome {
    run("4b", "second family, n = 8 representatives", |t| {
        for (p, tag) in f2_representatives(8, &default_f2_samples())? {
            match tag.label {
                RepresentativeLabel::F2Even1 { .. } => even_case(t, cfg, "F2-even-1", &p)?,
                RepresentativeLabel::F2Even2 => even_case(t, cfg, "F2-even-2", &p)?,
                _ => {}
            }
        }
        Ok(())
    })
}

/// The isolated even representative over `Q(sqrt 3)` at `n = 6`.
pub fn check_f2_even_quadratic(cfg: &SuiteConfig) -> CheckOutcome {
    run("4c", "second family, n = 6 over Q(sqrt 3)", |t| {
        let (p, tag) = f2_representatives(6, &[])?
            .into_iter()
            .find(|(_, tag)| tag.label == RepresentativeLabel::F2Even2)
            .expect("even n has the isolated representative");
        let b4 = p.beta(4);
        let expected = Scalar::quadratic(
            BigRational::from_integer(BigInt::from(0)),
            BigRational::new(1.into(), 3.into()),
            3,
        )?;
        t.record(b4 == expected && sqrt_two_over_n(6)? == expected, || {
            format!("{tag}: beta_4 = {b4}")
        });
        t.record(build_f2(&p)?.field() == Field::Quadratic(3), || {
            "field is not Q(sqrt 3)".into()
        });
        even_case(t, cfg, "F2-even-2", &p)
    })
}

/// `gamma = 0`: a single nonzero beta.
pub fn check_f2_gamma_zero(cfg: &SuiteConfig) -> CheckOutcome {
    run("4d", "second family, gamma = 0", |t| {
        for n in 5..=cfg.cap(8).max(5) {
            for (p, tag) in f2_representatives(n, &[])? {
                let RepresentativeLabel::F2j { j } = tag.label else {
                    continue;
                };
                let v = is_characteristically_nilpotent(&build_f2(&p)?, &cfg.witness)?;
                let on_line = witness_pair(&v)
                    .is_some_and(|(a0, b1)| b1 == &a0 * &Scalar::from_int(j as i64 - 1));
                t.record(!v.is_char_nilpotent && on_line, || {
                    format!(
                        "n={n} j={j}: cn={} witness line ok={on_line}",
                        v.is_char_nilpotent
                    )
                });
            }
        }
        Ok(())
    })
}

/// Third-family representatives, a normalization and a nilpotent member.
pub fn check_f3(cfg: &SuiteConfig) -> CheckOutcome {
    run("5", "third family", |t| {
        for n in 4..=cfg.cap(8).max(4) {
            for (p, tag) in f3_representatives(n)? {
                let l = build_f3(&p)?;
                let v = is_characteristically_nilpotent(&l, &cfg.witness)?;
                t.record(!v.is_char_nilpotent && l.is_filiform()?, || {
                    format!("{tag} n={n}: characteristically nilpotent or not filiform")
                });
            }
            let p = F3Params::from_ints(n, [1, 2, 1], 0)?;
            let q = transform_f3(&p, &BasisChangeF3::from_ints(1, -1, 1))?;
            t.record(
                q.thetas() == [&Scalar::zero(), &Scalar::zero(), &Scalar::one()],
                || {
                    format!(
                        "n={n}: (1,2,1) maps to {}",
                        fmt_scalars(&q.thetas().map(Clone::clone))
                    )
                },
            );
            let tag = classify_f3(&p)?;
            t.record(tag.label == RepresentativeLabel::F3Three, || {
                format!("n={n}: (1,2,1) classified {tag}")
            });
            let r = F3Params::from_ints(n, [2, 2, 1], 0)?;
            let v = is_characteristically_nilpotent(&build_f3(&r)?, &cfg.witness)?;
            t.record(v.is_char_nilpotent, || {
                format!("n={n}: (2,2,1) not characteristically nilpotent")
            });
        }
        Ok(())
    })
}

/// Catalan, Fuss-Catalan and Rothe identities.
pub fn check_identities(_cfg: &SuiteConfig) -> CheckOutcome {
    run("6", "combinatorial identities", |t| {
        for n in 0..=30 {
            t.record(p_catalan(2, n)? == catalan(n)?, || {
                format!("C^2_{n} != C_{n}")
            });
        }
        for p in 2..=6i64 {
            let pq = BigRational::from_integer(p.into());
            for n in 0..=20 {
                let r = rothe(&BigRational::from_integer(1.into()), &pq, n)?;
                t.record(r == BigRational::from_integer(p_catalan(p, n)?), || {
                    format!("A_{n}(1,{p}) != C^{p}_{n}")
                });
            }
            t.record(verify_catalan_convolution(p, 30)?, || {
                format!("convolution fails for p={p}")
            });
        }
        let (l, r) = catalan_convolution_as_printed_sides(2, 2)?;
        t.record(l != r, || {
            "printed convolution unexpectedly holds at p=2, n=2".into()
        });
        Ok(())
    })
}

/// Basis changes on integer grids, checked through explicit isomorphisms.
pub fn check_isomorphisms(cfg: &SuiteConfig) -> CheckOutcome {
    run("7", "isomorphism criteria end to end", |t| {
        let mut rng = StdRng::seed_from_u64(SEED ^ 7);
        let hi = cfg.cap(8).max(3);
        for _ in 0..20 {
            let n = rng.gen_range(3..=hi);
            let p = random_f1(&mut rng, n, 2);
            let a = nonzero(&mut rng, 3);
            let b = loop {
                let b = rng.gen_range(-3..=3);
                if a + b != 0 {
                    break b;
                }
            };
            let chk = verify_criterion_f1(&p, &BasisChangeF1::from_ints(a, b))?;
            t.record(chk.ok() && chk.class_preserved, || {
                format!("F1 n={n} {} A={a} B={b}", fmt_scalars(p.alphas()))
            });
        }
        for _ in 0..20 {
            let n = rng.gen_range(3..=hi);
            let p = random_f2(&mut rng, n, 2);
            let (a, b, d) = (
                nonzero(&mut rng, 3),
                rng.gen_range(-3..=3),
                nonzero(&mut rng, 3),
            );
            let chk = verify_criterion_f2(&p, &BasisChangeF2::from_ints(a, b, d))?;
            t.record(chk.ok() && chk.class_preserved, || {
                format!("F2 n={n} {} A={a} B={b} D={d}", fmt_scalars(p.betas()))
            });
        }
        for _ in 0..20 {
            let n = rng.gen_range(3..=hi);
            let th = [0; 3].map(|_| rng.gen_range(-2..=2));
            let p = F3Params::from_ints(n, th, 0)?;
            let (a0, a1, b1) = (
                nonzero(&mut rng, 3),
                rng.gen_range(-3..=3),
                nonzero(&mut rng, 3),
            );
            let chk = verify_criterion_f3(&p, &BasisChangeF3::from_ints(a0, a1, b1))?;
            t.record(chk.ok() && chk.class_preserved, || {
                format!("F3 n={n} {th:?} A0={a0} A1={a1} B1={b1}")
            });
        }
        Ok(())
    })
}

/// General solver against the parametrized derivation templates.
pub fn check_templates(cfg: &SuiteConfig) -> CheckOutcome {
    run("8", "derivation solver vs templates", |t| {
        let mut rng = StdRng::seed_from_u64(SEED ^ 8);
        let hi = cfg.cap(9).max(3);
        for _ in 0..30 {
            let n = rng.gen_range(3..=hi);
            let p = random_f1(&mut rng, n, 3);
            let same = derivation_space(&build_f1(&p)?).same_span(&f1_template_space(&p)?)?;
            t.record(same, || {
                format!("F1 n={n} {} theta={}", fmt_scalars(p.alphas()), p.theta)
            });
        }
        for _ in 0..30 {
            let n = rng.gen_range(3..=hi);
            let p = random_f2(&mut rng, n, 3);
            let same = derivation_space(&build_f2(&p)?).same_span(&f2_template_space(&p)?)?;
            t.record(same, || {
                format!("F2 n={n} {} gamma={}", fmt_scalars(p.betas()), p.gamma)
            });
        }
        Ok(())
    })
}

/// The decision trees against the Engel verdict on representatives and random members.
pub fn check_classification_agreement(cfg: &SuiteConfig) -> CheckOutcome {
    run("tree", "decision trees vs Engel verdict", |t| {
        let mut rng = StdRng::seed_from_u64(SEED ^ 0x7ee);
        let mut instances: Vec<FamilyParams> = Vec::new();
        for n in 4..=cfg.n_max.max(4) {
            for s in 3..=n {
                instances.push(FamilyParams::F1(f1_representative(n, s)?));
            }
            for (p, _) in f2_representatives(n, &default_f2_samples())? {
                instances.push(FamilyParams::F2(p));
            }
            for (p, _) in f3_representatives(n)? {
                instances.push(FamilyParams::F3(p));
            }
            instances.push(FamilyParams::F1(random_f1(&mut rng, n, 2)));
            instances.push(FamilyParams::F2(random_f2(&mut rng, n, 2)));
            let th = [0; 3].map(|_| rng.gen_range(-2..=2));
            instances.push(FamilyParams::F3(F3Params::from_ints(n, th, 0)?));
        }
        for p in &instances {
            let tag = classify(p)?;
            let v = is_characteristically_nilpotent(&p.build()?, &cfg.witness)?;
            t.record(v.is_char_nilpotent == tag.label.is_char_nilpotent(), || {
                format!(
                    "family {} n={}: tree says {tag}, Engel cn={}",
                    p.family(),
                    p.n(),
                    v.is_char_nilpotent
                )
            });
        }
        Ok(())
    })
}

/// All batteries in a fixed order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CheckOutcome> {
    vec![
        check_example(cfg),
        check_catalan_representatives(cfg),
        check_f1_off_locus(cfg),
        check_f2_odd(cfg),
        check_f2_even(cfg),
        check_f2_even_quadratic(cfg),
        check_f2_gamma_zero(cfg),
        check_f3(cfg),
        check_identities(cfg),
        check_isomorphisms(cfg),
        check_templates(cfg),
        check_classification_agreement(cfg),
    ]
}
