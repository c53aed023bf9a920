//! Seeded invariant suites behind `rectadd proptest`.

use std::fmt::Debug;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};
use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rectadd_core::decompose::{check_geometric_decay, continued_fraction_counts};
use rectadd_core::{decompose, telescope, QNum, Rect};

use crate::report::{Finding, Report};
use crate::strategies;
use crate::HarnessError;

/// Steps taken when a suite decomposes a random rectangle.
pub const SUITE_MAX_STEPS: usize = 50;

/// Largest side in the exhaustive integer oracle.
pub const ORACLE_MAX_SIDE: i64 = 60;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Additivity,
    Tiling,
    Halving,
    Oracle,
    Telescope,
    Field,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Additivity,
        Suite::Tiling,
        Suite::Halving,
        Suite::Oracle,
        Suite::Telescope,
        Suite::Field,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Additivity => "additivity",
            Suite::Tiling => "tiling",
            Suite::Halving => "halving",
            Suite::Oracle => "oracle",
            Suite::Telescope => "telescope",
            Suite::Field => "field",
        }
    }
}

impl FromStr for Suite {
    type Err = HarnessError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| HarnessError::UnknownSuite(s.to_string()))
    }
}

/// Runner with a ChaCha generator keyed by `seed` and no failure files.
pub fn seeded_runner(cases: u32, seed: u64) -> TestRunner {
    let mut key = [0u8; 32];
    ChaCha8Rng::seed_from_u64(seed).fill_bytes(&mut key);
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &key))
}

fn run<S>(
    strategy: S,
    cases: u32,
    seed: u64,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S: Strategy,
    S::Value: Debug,
{
    let mut runner = seeded_runner(cases, seed);
    runner.run(&strategy, test).map_err(|e| match e {
        TestError::Fail(reason, minimal) => format!("{reason}; minimal input: {minimal:?}"),
        TestError::Abort(reason) => format!("aborted: {reason}"),
    })
}

fn zero_check(label: &str, value: QNum) -> Result<(), TestCaseError> {
    if value.is_zero() {
        Ok(())
    } else {
        Err(TestCaseError::fail(format!("{label} = {value}")))
    }
}

fn additivity(cases: u32, seed: u64) -> Result<(), String> {
    run(strategies::split_case(), cases, seed, |case| {
        let f = case.function.build(&case.pieces());
        let residual = f
            .check_additivity(&case.rect, case.axis, &case.at)
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        zero_check("F(I1) + F(I2) - F(I)", residual)
    })
}

fn tiling(cases: u32, seed: u64) -> Result<(), String> {
    run(strategies::rect(), cases, seed, |r| {
        let d = decompose(&r, SUITE_MAX_STEPS);
        let check = d.check_tiling();
        prop_assert!(check.contained, "piece escapes the rectangle");
        prop_assert!(check.disjoint, "pieces overlap");
        zero_check("area discrepancy", check.area_discrepancy)
    })
}

fn halving(cases: u32, seed: u64) -> Result<(), String> {
    run(strategies::rect(), cases, seed, |r| {
        let d = decompose(&r, SUITE_MAX_STEPS);
        let cert = d.verify_halving();
        if let Some(bad) = cert.checks.iter().find(|c| !c.holds) {
            return Err(TestCaseError::fail(format!(
                "{:?} at n = {}: {} > {}",
                bad.kind, bad.n, bad.lhs, bad.rhs
            )));
        }
        prop_assert!(check_geometric_decay(&d.sides), "geometric decay");
        prop_assert!(d.remainder_within_side_bound(), "remainder diameter bound");
        Ok(())
    })
}

/// Exhaustive: every `p x q` with `1 <= q < p <= ORACLE_MAX_SIDE`.
pub fn oracle() -> (usize, Result<(), String>) {
    let mut checked = 0;
    for p in 1..=ORACLE_MAX_SIDE {
        for q in 1..p {
            let r = Rect::new(QNum::zero(), QNum::from_integer(p), QNum::zero(), QNum::from_integer(q))
                .expect("p, q positive");
            let d = decompose(&r, 4 * ORACLE_MAX_SIDE as usize);
            let counts: Vec<BigUint> = d.counts().into_iter().map(BigUint::from).collect();
            let fail = if !d.terminated {
                Some("did not terminate")
            } else if counts != continued_fraction_counts(&r, counts.len() + 1) {
                Some("counts differ from continued fraction")
            } else if !d.check_tiling().holds() {
                Some("tiling check failed")
            } else if !d.verify_halving().holds {
                Some("halving check failed")
            } else {
                None
            };
            if let Some(reason) = fail {
                return (checked, Err(format!("{reason}; minimal input: {p}x{q}")));
            }
            checked += 1;
        }
    }
    (checked, Ok(()))
}

fn telescope_suite(cases: u32, seed: u64) -> Result<(), String> {
    run(strategies::telescope_case(), cases, seed, |(r, choice)| {
        let d = decompose(&r, SUITE_MAX_STEPS);
        let f = choice.build(d.pieces().chain(std::iter::once(&r)));
        zero_check("telescoped sum - F(rect)", telescope(&f, &d) - f.evaluate(&r))
    })
}

fn field(cases: u32, seed: u64) -> Result<(), String> {
    let triple = (strategies::qnum(), strategies::qnum(), strategies::qnum());
    run(triple, cases, seed, |(a, b, c)| {
        zero_check("(a+b)+c - (a+(b+c))", (&a + &b) + &c - (&a + &(&b + &c)))?;
        zero_check("(ab)c - a(bc)", (&a * &b) * &c - &a * &(&b * &c))?;
        zero_check("a+b - (b+a)", &a + &b - (&b + &a))?;
        zero_check("ab - ba", &a * &b - &b * &a)?;
        zero_check("a(b+c) - (ab+ac)", &a * &(&b + &c) - (&a * &b + &a * &c))?;
        zero_check("a + (-a)", &a + &(-&a))?;
        if !a.is_zero() {
            let inv = a.recip().map_err(|e| TestCaseError::fail(e.to_string()))?;
            zero_check("a * a^-1 - 1", &a * &inv - QNum::one())?;
        }
        prop_assert!((&a * &a).signum() >= 0, "squares are nonnegative");
        if a < b {
            prop_assert!(&a + &c < &b + &c, "order is translation invariant");
        }
        Ok(())
    })
}

pub fn cmd_proptest(suite: Suite, cases: u32, seed: u64) -> Report {
    let mut report = Report::new("proptest")
        .input("suite", suite.name())
        .input("cases", cases)
        .input("seed", seed);
    let (count, outcome) = match suite {
        Suite::Additivity => (cases as usize, additivity(cases, seed)),
        Suite::Tiling => (cases as usize, tiling(cases, seed)),
        Suite::Halving => (cases as usize, halving(cases, seed)),
        Suite::Oracle => oracle(),
        Suite::Telescope => (cases as usize, telescope_suite(cases, seed)),
        Suite::Field => (cases as usize, field(cases, seed)),
    };
    let claim = match &outcome {
        Ok(()) => format!("{} invariants hold on {count} cases", suite.name()),
        Err(reason) => format!("{} invariants fail: {reason}", suite.name()),
    };
    report.push(Finding::check(claim, outcome.is_ok()));
    report
}
