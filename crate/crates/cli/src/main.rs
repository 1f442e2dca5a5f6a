mod args;
mod artifact;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::Parser;
use serde::Serialize;

use args::{
    BasesCommand, BuildArgs, CertifyArgs, Cli, Command, DecomposeArgs, Family, MapsCommand,
    SearchArgs, UnitaryCommand, VerifyArgs, WitnessSource,
};
use artifact::{load, load_field, Writer};
use indecomp_core::criterion::certify_with;
use indecomp_core::maps::{
    antisymmetric_unitary, choi_map, extended_reduction_map, gellmann_basis,
    jamiolkowski_witness, piani_map, reduction_map, KrausPairMap, Witness,
};
use indecomp_core::optim::{decompose_witness, ppt_violation_search, verify_detection, SearchParams};
use indecomp_core::random::{complex_gaussian, random_orthogonal, seeded};
use indecomp_core::{BipartiteShape, Operator, ToleranceConfig, Verdict};

const EXIT_INVALID: u8 = 2;
const EXIT_NOT_SATISFIED: u8 = 3;
const EXIT_INAPPLICABLE: u8 = 4;
const EXIT_NO_RESULT: u8 = 5;

struct Session {
    writer: Writer,
    tol: ToleranceConfig,
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let ctx = Session {
        writer: Writer {
            seed: cli.seed,
            reproducible: cli.reproducible,
        },
        tol: cli.tolerances.config(),
        seed: cli.seed,
    };
    match run(&ctx, cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(EXIT_INVALID)
        }
    }
}

fn run(ctx: &Session, command: Command) -> Result<u8> {
    match command {
        Command::Maps(MapsCommand::Build(a)) => build(ctx, &a),
        Command::Certify(a) => certify(ctx, &a),
        Command::Decompose(a) => decompose(ctx, &a),
        Command::Search(a) => search(ctx, &a),
        Command::VerifyState(a) => verify_state(ctx, &a),
        Command::Bases(BasesCommand::Gellmann { dim, out }) => {
            let basis = gellmann_basis(dim)?;
            ctx.writer.emit("gellmann-basis", &basis, out.as_deref())?;
            Ok(0)
        }
        Command::Unitary(UnitaryCommand::Antisym {
            dim,
            phases,
            orthogonal,
            random,
            out,
        }) => {
            let u = make_unitary(ctx, dim, phases, orthogonal.as_deref(), random)?;
            ctx.writer.emit("antisymmetric-unitary", &u, out.as_deref())?;
            Ok(0)
        }
    }
}

fn make_unitary(
    ctx: &Session,
    dim: usize,
    phases: Option<Vec<f64>>,
    orthogonal: Option<&Path>,
    random: bool,
) -> Result<Operator> {
    if dim % 2 == 1 {
        // Let the library produce the canonical message.
        return Ok(antisymmetric_unitary(dim, &[], &Operator::identity(dim))?);
    }
    let (phases, o) = if random {
        let mut rng = seeded(ctx.seed);
        let o = random_orthogonal(&mut rng, dim);
        let phases = (0..dim / 2).map(|_| complex_gaussian(&mut rng).arg()).collect();
        (phases, o)
    } else {
        let o = match orthogonal {
            Some(path) => load(path)?,
            None => Operator::identity(dim),
        };
        (phases.unwrap_or_else(|| vec![0.0; dim / 2]), o)
    };
    Ok(antisymmetric_unitary(dim, &phases, &o)?)
}

fn build(ctx: &Session, a: &BuildArgs) -> Result<u8> {
    let need_dim = || a.dim.context("--dim is required for this family");
    let map = match a.family {
        Family::Reduction => reduction_map(need_dim()?)?,
        Family::ExtendedReduction => {
            let d = need_dim()?;
            let u = match &a.unitary {
                Some(path) => load(path)?,
                None => make_unitary(ctx, d, a.phases.clone(), a.orthogonal.as_deref(), a.random_unitary)?,
            };
            extended_reduction_map(d, &u)?
        }
        Family::Piani => {
            let lambda1 = a.lambda1.clone().unwrap_or_else(|| vec![1.0; a.d1 * a.d1]);
            let lambda2 = a.lambda2.clone().unwrap_or_else(|| {
                let mut l = vec![1.0; a.d2 * a.d2];
                if let Some(last) = l.last_mut() {
                    *last = -1.0;
                }
                l
            });
            piani_map(a.d1, a.d2, &lambda1, &lambda2)?
        }
        Family::Choi => choi_map()?,
    };
    let witness = jamiolkowski_witness(&map)?;
    let spectrum = witness.spectrum()?;
    let negatives = spectrum.iter().filter(|&&x| x < -ctx.tol.psd_cutoff).count();
    eprintln!(
        "witness spectrum: min {:.6}, max {:.6}, {} negative of {}",
        spectrum.last().copied().unwrap_or(0.0),
        spectrum.first().copied().unwrap_or(0.0),
        negatives,
        spectrum.len()
    );

    ctx.writer.emit("map", &map, a.out.as_deref())?;
    let witness_path = a.witness_out.clone().or_else(|| a.out.as_deref().map(witness_path_for));
    ctx.writer.emit("witness", &witness, witness_path.as_deref())?;
    Ok(0)
}

fn witness_path_for(out: &Path) -> PathBuf {
    let stem = out.file_stem().and_then(|s| s.to_str()).unwrap_or("map");
    out.with_file_name(format!("{stem}.witness.json"))
}

fn certify(ctx: &Session, a: &CertifyArgs) -> Result<u8> {
    let map: KrausPairMap = load(&a.map)?;
    let cert = certify_with(&map, a.trials, ctx.seed, &ctx.tol)?;
    cert.validate(&ctx.tol)?;
    eprintln!(
        "{:?}: family {}, min coefficient eigenvalue {:.6}, {} failures in {} trials",
        cert.verdict, cert.family, cert.min_l_eigenvalue, cert.failures, cert.trials
    );
    ctx.writer.emit("certificate", &cert, a.out.as_deref())?;
    Ok(match cert.verdict {
        Verdict::CertifiedIndecomposable => 0,
        Verdict::CriterionNotSatisfied => EXIT_NOT_SATISFIED,
        Verdict::Inapplicable => EXIT_INAPPLICABLE,
    })
}

fn load_witness(source: &WitnessSource) -> Result<Witness> {
    match (&source.witness, &source.map) {
        (Some(path), _) => load(path),
        (None, Some(path)) => Ok(jamiolkowski_witness(&load::<KrausPairMap>(path)?)?),
        (None, None) => bail!("one of --witness or --map is required"),
    }
}

fn decompose(ctx: &Session, a: &DecomposeArgs) -> Result<u8> {
    let w = load_witness(&a.source)?;
    let report = decompose_witness(&w, a.max_iter, a.tol)?;
    report.validate()?;
    if report.converged {
        eprintln!("decomposition found: residual {:.3e} after {} iterations", report.residual, report.iterations);
    } else {
        eprintln!(
            "no decomposition found (numerical): residual {:.6} after {} iterations ({:?})",
            report.residual, report.iterations, report.status
        );
    }
    ctx.writer.emit("decomposition-report", &report, a.out.as_deref())?;
    Ok(if report.converged { 0 } else { EXIT_NO_RESULT })
}

fn search(ctx: &Session, a: &SearchArgs) -> Result<u8> {
    let w = load_witness(&a.source)?;
    let params = SearchParams {
        restarts: a.restarts,
        max_iter: a.max_iter,
        step: a.step,
        dykstra_cycles: a.dykstra_cycles,
        seed: ctx.seed,
        tol: a.tol,
    };
    let report = ppt_violation_search(&w, &params)?;
    report.validate()?;
    eprintln!(
        "best Tr(Wρ) = {:.6} (restart {}), min eig ρ {:.2e}, min eig ρ^T_B {:.2e}, certified: {}",
        report.witness_value, report.best_restart, report.min_state_eig, report.min_ppt_eig, report.certified
    );
    ctx.writer.emit("violation-search-report", &report, a.out.as_deref())?;
    Ok(if report.certified { 0 } else { EXIT_NO_RESULT })
}

#[derive(Serialize)]
struct Detection {
    shape: BipartiteShape,
    min_eigenvalue: f64,
    detected: bool,
}

fn verify_state(ctx: &Session, a: &VerifyArgs) -> Result<u8> {
    let map: KrausPairMap = load(&a.map)?;
    let rho: Operator = load_field(&a.state, "state")?;
    let shape = BipartiteShape::new(a.dim_a.unwrap_or(map.dim_in()), map.dim_in());
    let min_eigenvalue = verify_detection(&map, &rho, shape)?;
    let detected = min_eigenvalue < -ctx.tol.psd_cutoff;
    eprintln!("min eigenvalue of (I⊗Λ)(ρ): {min_eigenvalue:.6e}, entangled: {detected}");
    let result = Detection {
        shape,
        min_eigenvalue,
        detected,
    };
    ctx.writer.emit("detection", &result, a.out.as_deref())?;
    Ok(if detected { 0 } else { EXIT_NO_RESULT })
}
