//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use algoprior::report::strip_wall_time;
use algoprior_core::putnam::diagonal_sequence;
use algoprior_core::*;
use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;
type Criterion = fn() -> Outcome;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn within(limit: Duration, start: Instant) -> Result<Duration, String> {
    let took = start.elapsed();
    if took < limit {
        Ok(took)
    } else {
        Err(format!("took {took:.2?}, limit {limit:?}"))
    }
}

fn bs(s: &str) -> BitString {
    s.parse().unwrap()
}

fn predictor(spec: PredictorSpec) -> Predictor {
    make_predictor(&spec).unwrap()
}

/// Runs every input of length <= `max_bits` from scratch and keeps those that
/// are minimal witnesses for `target`.
fn brute_force_witnesses(
    machine: MachineId,
    target: &BitString,
    max_bits: usize,
    max_steps: u64,
) -> Vec<String> {
    let mut found = Vec::new();
    for len in 0..=max_bits {
        for index in 0..1u32 << len {
            let input: Vec<u8> = (0..len)
                .map(|i| (index >> (len - 1 - i) & 1) as u8)
                .collect();
            // Two-bit opcodes: 00 emit 0, 01 emit 1, 10 replay stored program, 11 halt.
            let (mut program, mut pc, mut read, mut steps) = (Vec::new(), 0, 0, 0);
            let mut out: Vec<u8> = Vec::new();
            let mut witness = None;
            while steps < max_steps && out.len() < target.len() {
                let op = if pc < program.len() {
                    program[pc]
                } else if read + 2 <= len {
                    read += 2;
                    program.push(input[read - 2] * 2 + input[read - 1]);
                    program[pc]
                } else {
                    break;
                };
                steps += 1;
                match op {
                    0 | 1 => {
                        let swap = machine == MachineId::Gruesome && out.len() >= 10;
                        out.push(if swap { 1 - op } else { op });
                        pc += 1;
                        if out.len() == target.len() {
                            witness = Some(read);
                        }
                    }
                    2 => pc = 0,
                    _ => break,
                }
            }
            if target.is_empty() {
                witness = Some(0);
            }
            let matches = out.iter().zip(target.iter()).all(|(&o, t)| o == t as u8);
            if matches && witness == Some(len) {
                found.push(input.iter().map(|b| char::from(b'0' + b)).collect());
            }
        }
    }
    found
}

fn enumerator_exactness() -> Outcome {
    let start = Instant::now();
    let est = estimate_prior(MachineId::Natural, &bs("0"), Budget::new(8, 100));
    let took = within(Duration::from_secs(1), start)?;
    ensure!(
        est.lower_bound == Rational::new(1, 4),
        "lower bound {}",
        est.lower_bound
    );
    let got: Vec<String> = est.witness_set.iter().map(|w| w.to_string()).collect();
    ensure!(got == ["00"], "witness set {got:?}");
    let oracle = brute_force_witnesses(MachineId::Natural, &bs("0"), 8, 100);
    ensure!(oracle == got, "brute force found {oracle:?}");
    Ok(format!(
        "lower bound 1/4, witnesses {{00}}, matches brute force, {took:.2?}"
    ))
}

fn semi_measure_suite() -> Outcome {
    let start = Instant::now();
    let budget = Budget::new(16, 512);
    let mut strict = Vec::new();
    for machine in MachineId::ALL {
        let report = semi_measure_check(machine, budget, 6);
        ensure!(
            report.violations.is_empty(),
            "{machine}: violations at {:?}",
            report.violations
        );
        ensure!(!report.strict_sites.is_empty(), "{machine}: no strict site");
        if machine == MachineId::Natural {
            ensure!(
                report.strict_sites.contains(&BitString::empty()),
                "ε is not strict on natural"
            );
        }
        strict.push(format!("{machine} {}", report.strict_sites.len()));
    }
    let took = within(Duration::from_secs(30), start)?;
    Ok(format!(
        "no violations, strict sites: {}, {took:.2?}",
        strict.join(", ")
    ))
}

fn budget_monotonicity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut draw = |n: u64| rng.next_u64() % n;
    for case in 0..20 {
        let machine = MachineId::ALL[draw(2) as usize];
        let len = draw(7) as usize;
        let target: BitString = (0..len).map(|_| Bit::from(draw(2) == 1)).collect();
        let small = Budget::new(draw(13) as usize, draw(257));
        let large = Budget::new(
            small.max_input_bits + draw(5) as usize,
            small.max_steps + draw(257),
        );
        let before = estimate_prior(machine, &target, small);
        let after = refine(machine, &before, large).map_err(|e| format!("case {case}: {e}"))?;
        ensure!(
            before.lower_bound <= after.lower_bound,
            "case {case}: bound decreased"
        );
        ensure!(
            after == estimate_prior(machine, &target, large),
            "case {case}: refine differs from fresh"
        );
    }
    Ok("20 random refinements never decrease and equal fresh estimates".into())
}

fn normalization() -> Outcome {
    let model = SolomonoffModel::new(MachineId::Natural, Budget::new(16, 512));
    for k in 1..=6 {
        let total: Rational = strings_of_length(k)
            .iter()
            .map(|x| model.normalized_prior(x))
            .sum();
        ensure!(total == Rational::one(), "k = {k}: sum {total}");
    }
    Ok("normalized prior sums to exactly 1 for k = 1..6".into())
}

fn putnam_suite() -> Outcome {
    let start = Instant::now();
    let zoo = [
        PredictorSpec::Uniform,
        PredictorSpec::laplace(Rational::one()),
        PredictorSpec::laplace(Rational::from_integer(2)),
        PredictorSpec::mixture([
            (Rational::half(), PredictorSpec::Uniform),
            (Rational::half(), PredictorSpec::laplace(Rational::one())),
        ]),
        PredictorSpec::bounded_solomonoff(
            MachineId::Natural,
            Budget::new(12, 256),
            Variant::Normalized,
        ),
    ];
    for spec in zoo {
        let d = diagonal_sequence(&predictor(spec.clone()), 64)
            .map_err(|e| format!("{spec:?}: {e}"))?;
        ensure!(
            d.conditional_trace.iter().all(|c| *c <= Rational::half()),
            "{spec:?}: conditional above 1/2"
        );
        for (i, (mass, bound)) in d.mass_trace.iter().zip(d.envelope()).enumerate() {
            ensure!(
                *mass <= bound,
                "{spec:?}: mass {mass} above {bound} at {}",
                i + 1
            );
        }
    }
    let took = within(Duration::from_secs(60), start)?;
    Ok(format!(
        "5 predictors, n = 64, conditionals <= 1/2 and masses under envelope, {took:.2?}"
    ))
}

fn all_zeros_diagonal() -> Outcome {
    let d = diagonal_sequence(&predictor(PredictorSpec::Uniform), 32).map_err(|e| e.to_string())?;
    ensure!(
        d.diagonal == BitString::repeat(Bit::Zero, 32),
        "diagonal {}",
        d.diagonal
    );
    let mass = predictor(PredictorSpec::point_mass(SequenceGenerator::Zeros))
        .measure_of(&d.diagonal)
        .map_err(|e| e.to_string())?;
    ensure!(mass == Rational::one(), "point mass gives {mass}");
    Ok("uniform diagonal is 0^32 and the all-zeros point mass gives it 1".into())
}

fn polarization() -> Outcome {
    let p = predictor(PredictorSpec::point_mass(SequenceGenerator::Zeros));
    let q = predictor(PredictorSpec::Uniform);
    for n in 0..=20 {
        for k in 0..=10 {
            let tv =
                tv_depth(&p, &q, &BitString::repeat(Bit::Zero, n), k).map_err(|e| e.to_string())?;
            ensure!(
                tv == Rational::one() - Rational::pow2_neg(k),
                "n = {n}, k = {k}: {tv}"
            );
        }
    }
    Ok("tv = 1 - 2^-k exactly for n <= 20, k <= 10".into())
}

/// tv at n = 5 and n = 200 for each seed, from a reference run.
type Fraction = (i64, i64);

const MERGE_GOLDEN: [(u64, Fraction, Fraction); 10] = [
    (1, (20, 693), (2291616, 4836344297)),
    (2, (20, 693), (7661521, 24181721485)),
    (3, (20, 693), (2389400, 14509032891)),
    (4, (13, 165), (2304138, 5836967255)),
    (5, (29, 165), (2291616, 4836344297)),
    (6, (13, 165), (7661521, 24181721485)),
    (7, (20, 693), (7661521, 24181721485)),
    (8, (20, 693), (7661521, 24181721485)),
    (9, (13, 165), (2304138, 5836967255)),
    (10, (13, 165), (104, 2871435)),
];

fn merging_trend() -> Outcome {
    let p = predictor(PredictorSpec::laplace(Rational::one()));
    let q = predictor(PredictorSpec::laplace(Rational::from_integer(2)));
    let mut shrank = 0;
    let mut worst = Rational::zero();
    for (seed, early_golden, late_golden) in MERGE_GOLDEN {
        let source = DataSource::Sampled {
            generator: PredictorSpec::Uniform,
            seed,
        };
        let t = merging_trajectory(&p, &q, &source, 200, 4).map_err(|e| e.to_string())?;
        let (early, late) = (&t[4].tv, &t[199].tv);
        ensure!(
            *early == Rational::new(early_golden.0, early_golden.1),
            "seed {seed}: tv(5) = {early}"
        );
        ensure!(
            *late == Rational::new(late_golden.0, late_golden.1),
            "seed {seed}: tv(200) = {late}"
        );
        if late < early {
            shrank += 1;
        }
        if *late > worst {
            worst = late.clone();
        }
    }
    ensure!(shrank >= 9, "only {shrank} of 10 seeds shrank");
    ensure!(worst < Rational::new(1, 20), "max tv(200) = {worst}");
    Ok(format!(
        "{shrank}/10 seeds shrank, max tv(200) = {}",
        worst.to_decimal(6)
    ))
}

fn language_dependence() -> Outcome {
    let start = Instant::now();
    let budget = Budget::new(24, 400);
    let prefix = BitString::repeat(Bit::Zero, 10);
    let nine_tenths = Rational::new(9, 10);
    let mut summary = Vec::new();
    for (machine, favored) in [
        (MachineId::Natural, Bit::Zero),
        (MachineId::Gruesome, Bit::One),
    ] {
        for variant in [Variant::Raw, Variant::Normalized] {
            let p = predictor(PredictorSpec::bounded_solomonoff(machine, budget, variant));
            let prob = p.conditional(&prefix, favored).map_err(|e| e.to_string())?;
            ensure!(
                prob > nine_tenths,
                "{machine} {variant:?}: p({}) = {prob}",
                favored.as_char()
            );
            summary.push(format!(
                "{machine}/{variant:?} p({})={}",
                favored.as_char(),
                prob.to_decimal(8)
            ));
        }
    }
    let took = within(Duration::from_secs(300), start)?;
    Ok(format!("{}, {took:.2?}", summary.join(", ")))
}

const CLI_EXAMPLES: &[&[&str]] = &[
    &[
        "prior",
        "--machine",
        "natural",
        "--target",
        "0",
        "--max-bits",
        "8",
        "--max-steps",
        "100",
    ],
    &[
        "prior",
        "--machine",
        "natural",
        "--target",
        "",
        "--max-bits",
        "8",
        "--max-steps",
        "100",
    ],
    &[
        "prior",
        "--machine",
        "gruesome",
        "--target",
        "0000000000",
        "--max-bits",
        "8",
        "--max-steps",
        "200",
    ],
    &["grue", "--max-bits", "24", "--max-steps", "400"],
    &["grue", "--max-bits", "2", "--max-steps", "4"],
    &[
        "grue",
        "--max-bits",
        "24",
        "--max-steps",
        "400",
        "--variant",
        "normalized",
    ],
    &["diagonal", "--predictor", "uniform", "-n", "8"],
    &["diagonal", "--predictor", "laplace:1", "-n", "4"],
    &[
        "diagonal",
        "--predictor",
        "uniform",
        "--cross",
        "point_mass:zeros",
        "-n",
        "10",
    ],
    &[
        "merge",
        "--p",
        "laplace:1",
        "--q",
        "laplace:2",
        "--source",
        "sampled:uniform",
        "--seed",
        "42",
        "--horizon",
        "200",
        "--depth",
        "4",
        "--format",
        "csv",
    ],
    &[
        "merge",
        "--mode",
        "polarize",
        "--depth",
        "3",
        "--horizon",
        "10",
    ],
    &[
        "merge",
        "--p",
        "uniform",
        "--q",
        "uniform",
        "--horizon",
        "5",
        "--depth",
        "2",
    ],
];

fn run_cli(args: &[&str], threads: &str) -> (Option<i32>, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_algoprior"))
        .args(args)
        .env("ALGOPRIOR_THREADS", threads)
        .output()
        .expect("binary runs");
    let text = |b: &[u8]| String::from_utf8_lossy(b).into_owned();
    (
        out.status.code(),
        strip_wall_time(&text(&out.stdout)),
        text(&out.stderr),
    )
}

fn determinism() -> Outcome {
    for args in CLI_EXAMPLES {
        let one = run_cli(args, "1");
        let eight = run_cli(args, "8");
        ensure!(one == eight, "{args:?} differs between 1 and 8 threads");
    }
    Ok(format!(
        "{} examples identical at 1 and 8 threads",
        CLI_EXAMPLES.len()
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, Criterion); 10] = [
        ("enumerator exactness", enumerator_exactness),
        ("semi-measure suite", semi_measure_suite),
        ("budget monotonicity", budget_monotonicity),
        ("normalization", normalization),
        ("diagonal bounds", putnam_suite),
        ("all-zeros diagonal", all_zeros_diagonal),
        ("polarization", polarization),
        ("merging trend", merging_trend),
        ("language dependence", language_dependence),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("acceptance {:>2} PASS  {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("acceptance {:>2} FAIL  {name}: {detail}", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} passed, {failed} failed",
        criteria.len() - failed
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
