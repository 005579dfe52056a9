use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use kvpoly::diagram::{apply_move, parse, random_diagram, random_planar, Diagram, DiagramError, RandomParams};
use kvpoly::embedded::{one_crossing_family, Verdict};
use kvpoly::oracle::{bracket_statesum, kv_statesum_with_markers, OracleError};
use kvpoly::planar::{eval_planar_closed_form, Evaluator};
use kvpoly::ring::{specialize, RingElem, Specialization};

#[derive(Parser)]
#[command(name = "kvpoly", version, about = "Kauffman-Vogel polynomial of rigid-vertex graph diagrams")]
struct Cli {
    /// Worker threads for parallel work (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Print the polynomial of a diagram.
    Eval {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Spec::Generic)]
        spec: Spec,
    },
    /// Print the twisting number.
    Twist { file: PathBuf },
    /// Run the planarity obstruction.
    CheckPlanar { file: PathBuf },
    /// Compare the evaluator with the marker state sum.
    Oracle { file: PathBuf },
    /// Run randomized property checks.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        size: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Spec {
    Generic,
    PlanarTest,
    Bracket,
    Yamada,
}

impl Spec {
    fn specialization(self) -> Option<Specialization> {
        match self {
            Spec::Generic => None,
            Spec::PlanarTest => Some(Specialization::PlanarTest),
            Spec::Bracket => Some(Specialization::Bracket),
            Spec::Yamada => Some(Specialization::Yamada),
        }
    }
}

/// Errors that map to a fixed exit status.
#[derive(Debug, thiserror::Error)]
enum Input {
    #[error("{path}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}")]
    Parse { path: String, source: DiagramError },
}

fn load(path: &Path) -> Result<Diagram> {
    let shown = path.display().to_string();
    let text = std::fs::read_to_string(path).map_err(|source| Input::Read { path: shown.clone(), source })?;
    Ok(parse(&text).map_err(|source| Input::Parse { path: shown, source })?)
}

fn run(cli: Cli) -> Result<u8> {
    let ev = Evaluator::new();
    match cli.cmd {
        Cmd::Eval { file, spec } => {
            let d = load(&file)?;
            match spec.specialization() {
                None => println!("{}", ev.eval(&d)?),
                Some(s) => println!("{}", ev.specialized(&d, s)?),
            }
            Ok(0)
        }
        Cmd::Twist { file } => {
            println!("{}", load(&file)?.twist_number());
            Ok(0)
        }
        Cmd::CheckPlanar { file } => match ev.planarity_obstruction(&load(&file)?)? {
            Verdict::PossiblyPlanar => {
                println!("POSSIBLY_PLANAR");
                Ok(0)
            }
            Verdict::NotPlanar { computed, expected } => {
                println!("NOT_PLANAR");
                println!("computed: {computed}");
                println!("expected: {expected}");
                Ok(1)
            }
        },
        Cmd::Oracle { file } => {
            let d = load(&file)?;
            let fast = ev.eval(&d)?;
            let slow = kvpoly::oracle::kv_statesum(&d)?;
            if fast == slow {
                println!("AGREE");
                Ok(0)
            } else {
                println!("DISAGREE");
                println!("eval:     {fast}");
                println!("statesum: {slow}");
                Ok(1)
            }
        }
        Cmd::Selftest { seed, size } => {
            let report = selftest(seed, size)?;
            let failed = report.iter().filter(|c| c.passed < c.total).count();
            for c in &report {
                let tag = if c.passed == c.total { "PASS" } else { "FAIL" };
                println!("{tag} {} {}/{}", c.name, c.passed, c.total);
            }
            if failed == 0 {
                println!("selftest: all {} checks passed", report.len());
                Ok(0)
            } else {
                println!("selftest: {failed} of {} checks failed", report.len());
                Ok(1)
            }
        }
    }
}

struct Check {
    name: &'static str,
    passed: usize,
    total: usize,
}

fn tally(name: &'static str, results: Vec<Result<bool>>) -> Result<Check> {
    let total = results.len();
    let mut passed = 0;
    for r in results {
        passed += r? as usize;
    }
    Ok(Check { name, passed, total })
}

fn mix(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(0x9e37_79b9_7f4a_7c15).wrapping_add(i as u64)
}

fn selftest(seed: u64, size: usize) -> Result<Vec<Check>> {
    let idx: Vec<usize> = (0..size).collect();
    let mut out = Vec::new();

    let planar: Vec<Diagram> = idx.iter().map(|&i| random_planar(1 + i % 8, mix(seed, i))).collect();
    out.push(tally(
        "planar-seed-independence",
        planar
            .par_iter()
            .map(|d| {
                let base = Evaluator::seeded(0).planar(d)?;
                for s in 1..5 {
                    if Evaluator::seeded(s).planar(d)? != base {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect(),
    )?);
    out.push(tally(
        "planar-closed-form",
        planar
            .par_iter()
            .map(|d| Ok(specialize(&Evaluator::new().planar(d)?, Specialization::PlanarTest)? == eval_planar_closed_form(d)))
            .collect(),
    )?);

    let small: Vec<Diagram> = idx
        .iter()
        .map(|&i| random_diagram(RandomParams { vertices: i % 4, crossings: 1 + i % 3, seed: mix(seed, i) }))
        .collect();
    out.push(tally(
        "move-invariance",
        small
            .par_iter()
            .enumerate()
            .map(|(i, d)| {
                let ev = Evaluator::new();
                let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, i));
                let base = ev.eval(d)?;
                let norm = ev.normalized(d)?;
                for _ in 0..4 {
                    let m = d.random_move(&mut rng);
                    let e = apply_move(d, m)?;
                    let shift = RingElem::monomial(1, [0, 0, m.a_shift(d) as i32]);
                    let twist_ok = e.twist_number() == d.twist_number() + m.a_shift(d);
                    if ev.eval(&e)? != &shift * &base || ev.normalized(&e)? != norm || !twist_ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect(),
    )?);
    out.push(tally(
        "oracle-agreement",
        small
            .par_iter()
            .enumerate()
            .map(|(i, d)| {
                let fast = Evaluator::new().eval(d)?;
                let mut rng = ChaCha8Rng::seed_from_u64(mix(seed, i));
                for _ in 0..3 {
                    let markers: Vec<bool> = (0..d.vertex_count()).map(|_| rng.random()).collect();
                    if kv_statesum_with_markers(d, &markers)? != fast {
                        return Ok(false);
                    }
                }
                Ok(true)
            })
            .collect(),
    )?);

    out.push(tally(
        "one-crossing-vanishing",
        one_crossing_family(size, seed)
            .par_iter()
            .map(|d| {
                let ev = Evaluator::new();
                Ok(ev.specialized(d, Specialization::PlanarTest)?.is_zero() && ev.planarity_obstruction(d)?.is_not_planar())
            })
            .collect(),
    )?);

    let links: Vec<Diagram> = idx
        .iter()
        .map(|&i| random_diagram(RandomParams { vertices: 0, crossings: 1 + i % 5, seed: mix(seed, i) }))
        .collect();
    out.push(tally(
        "bracket-regression",
        links
            .par_iter()
            .map(|d| Ok(Evaluator::new().specialized(d, Specialization::Bracket)? == bracket_statesum(d)?))
            .collect(),
    )?);
    Ok(out)
}

fn exit_status(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Input>().is_some() {
        return 2;
    }
    match err.downcast_ref::<OracleError>() {
        Some(OracleError::DepthExceeded { .. }) => 3,
        _ => 4,
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global().context("thread pool") {
            eprintln!("error: {e:#}");
            return ExitCode::from(4);
        }
    }
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_status(&e))
        }
    }
}
