use std::io::Write;
use std::time::Instant;

use rand::Rng;
use rayon::prelude::*;
use sundial_core::castelnuovo::{
    check_inequality, replay_p3_case, replay_pn_case, Hyperplane, Hypersurface,
};
use sundial_core::expectations::{
    compute_trs, expected_ideal_dim, forms_dimension, verify_appendix_a1, verify_appendix_a2,
};
use sundial_core::geometry::{degeneration_fiber, make_generic_sundial, random_line, Line};
use sundial_core::scheme::{hilbert_function, ConditionBuilder};
use sundial_core::scheme_file::SchemeFile;
use sundial_core::{Error, Prime, Scheme, SchemeComponent};

use crate::args::{Command, Field, IntRange, Output};
use crate::error::CliError;
use crate::instance::{rng_for, sweep_cells, InstanceKey, Stream};
use crate::records::{
    AppendixRow, CastelnuovoRow, DimRow, Emitter, FamilyRow, ReplayRecord, VerificationReport,
};

pub const THREADS_VAR: &str = "HILBERT_SUNDIAL_THREADS";

type Outcome = Result<bool, CliError>;

/// Runs one command and returns the process exit code: 0 when every check
/// passes, 1 when some check fails, 2 for a rejected configuration.
pub fn run<W: Write>(command: Command, out: W) -> Result<i32, CliError> {
    configure_threads()?;
    let ok = match command {
        Command::Verify {
            n,
            d,
            sundials,
            lines,
            trials,
            field,
            output,
        } => verify(n, d, sundials, lines, trials, &field, &output, out)?,
        Command::Sweep {
            n,
            d,
            trials,
            field,
            output,
        } => sweep(n, d, trials, &field, &output, out)?,
        Command::Appendix { n, d, output } => appendix(n, d, &output, out)?,
        Command::Replay {
            p3,
            pn,
            field,
            output,
        } => replay(p3, pn, &field, &output, out)?,
        Command::Castelnuovo {
            random,
            field,
            output,
        } => castelnuovo(random, &field, &output, out)?,
        Command::Family {
            n,
            d,
            lambdas,
            field,
            output,
        } => family(n, d, lambdas, &field, &output, out)?,
        Command::Dim {
            scheme,
            d,
            prime,
            output,
        } => dim(&scheme, d, prime, &output, out)?,
    };
    Ok(if ok { 0 } else { 1 })
}

/// Sizes the global rayon pool from the environment; later calls in the
/// same process keep the first pool.
fn configure_threads() -> Result<(), CliError> {
    let threads = match std::env::var(THREADS_VAR) {
        Ok(v) => v.trim().parse::<usize>().map_err(|_| {
            CliError::Config(format!(
                "{THREADS_VAR} must be a non-negative integer, got {v:?}"
            ))
        })?,
        Err(_) => 0,
    };
    let _ = rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build_global();
    Ok(())
}

fn prime_for(value: u64, max_degree: u32) -> Result<Prime, CliError> {
    let p = Prime::new(value)?;
    p.check_degree(max_degree)?;
    Ok(p)
}

fn check_n(n: usize) -> Result<(), CliError> {
    if n < 3 {
        return Err(Error::DimensionTooSmall(n).into());
    }
    Ok(())
}

fn check_d(d: u32) -> Result<(), CliError> {
    if d < 1 {
        return Err(CliError::Config("degree must be at least 1".into()));
    }
    Ok(())
}

fn check_trials(trials: u32) -> Result<(), CliError> {
    if trials < 1 {
        return Err(CliError::Config("at least one trial is needed".into()));
    }
    Ok(())
}

fn to_u32(v: u64, what: &str) -> Result<u32, CliError> {
    u32::try_from(v).map_err(|_| CliError::Config(format!("{what} {v} is too large")))
}

fn to_usize(v: u64, what: &str) -> Result<usize, CliError> {
    usize::try_from(v).map_err(|_| CliError::Config(format!("{what} {v} is too large")))
}

fn elapsed(start: Instant, output: &Output) -> u64 {
    if output.timing {
        start.elapsed().as_millis() as u64
    } else {
        0
    }
}

/// Standalone trials `first..trials` of one instance, stopping at the first
/// match.
fn trials_of(
    key: InstanceKey,
    s: u64,
    l: u64,
    first: u32,
    trials: u32,
    output: &Output,
) -> Result<Vec<VerificationReport>, CliError> {
    let expected = expected_ideal_dim(key.n, key.d, s, l)?;
    let mut reports = Vec::new();
    for trial in first..trials {
        let key = InstanceKey { trial, ..key };
        let start = Instant::now();
        let computed = key.ideal_dimension(s, l)? as u64;
        let report = report_for(&key, s, l, computed, expected, elapsed(start, output));
        let done = report.matches;
        reports.push(report);
        if done {
            break;
        }
    }
    Ok(reports)
}

fn report_for(
    key: &InstanceKey,
    s: u64,
    l: u64,
    computed: u64,
    expected: u64,
    elapsed_ms: u64,
) -> VerificationReport {
    VerificationReport {
        cmd: "verify",
        n: key.n,
        d: key.d,
        s,
        l,
        prime: key.prime.value(),
        seed: key.seed,
        trial: key.trial,
        computed_dim: computed,
        expected_dim: expected,
        matches: computed == expected,
        elapsed_ms,
    }
}

#[allow(clippy::too_many_arguments)]
fn verify<W: Write>(
    n: usize,
    d: u32,
    s: u64,
    l: u64,
    trials: u32,
    field: &Field,
    output: &Output,
    out: W,
) -> Outcome {
    check_n(n)?;
    check_d(d)?;
    check_trials(trials)?;
    let prime = prime_for(field.prime, d)?;
    let key = InstanceKey {
        n,
        d,
        seed: field.seed,
        trial: 0,
        prime,
    };
    let reports = trials_of(key, s, l, 0, trials, output)?;
    let mut em = Emitter::new(output.format, out);
    for r in &reports {
        em.emit(r)?;
    }
    Ok(reports.last().is_some_and(|r| r.matches))
}

/// Every `(s, l)` with `2s + l <= t + 1` for one `(n, d)`, trial 0 computed
/// incrementally and later trials only for mismatches.
fn sweep_group(
    key: InstanceKey,
    trials: u32,
    output: &Output,
) -> Result<(Vec<VerificationReport>, bool), CliError> {
    let (t, _, _) = compute_trs(key.n, key.d)?;
    let mut reports = Vec::new();
    let mut all = true;
    for cell in sweep_cells(&key, t + 1)? {
        let expected = expected_ideal_dim(key.n, key.d, cell.s, cell.l)?;
        let ms = if output.timing { cell.elapsed_ms } else { 0 };
        let first = report_for(&key, cell.s, cell.l, cell.computed as u64, expected, ms);
        let matched = first.matches;
        reports.push(first);
        if !matched {
            let retries = trials_of(key, cell.s, cell.l, 1, trials, output)?;
            all &= retries.last().is_some_and(|r| r.matches);
            reports.extend(retries);
        }
    }
    Ok((reports, all))
}

fn sweep<W: Write>(
    n: IntRange,
    d: IntRange,
    trials: u32,
    field: &Field,
    output: &Output,
    out: W,
) -> Outcome {
    check_trials(trials)?;
    check_n(to_usize(n.start, "n")?)?;
    check_d(to_u32(d.start, "d")?)?;
    let prime = prime_for(field.prime, to_u32(d.end, "d")?)?;
    let mut groups = Vec::new();
    for n in n.iter() {
        for d in d.iter() {
            groups.push(InstanceKey {
                n: to_usize(n, "n")?,
                d: to_u32(d, "d")?,
                seed: field.seed,
                trial: 0,
                prime,
            });
        }
    }
    let results: Vec<_> = groups
        .par_iter()
        .map(|&key| sweep_group(key, trials, output))
        .collect();
    let mut em = Emitter::new(output.format, out);
    let mut all = true;
    for r in results {
        let (reports, ok) = r?;
        for rep in &reports {
            em.emit(rep)?;
        }
        all &= ok;
    }
    Ok(all)
}

fn appendix<W: Write>(n: IntRange, d: IntRange, output: &Output, out: W) -> Outcome {
    if n.start < 4 || d.start < 2 {
        return Err(CliError::Config(
            "the appendix grid needs n >= 4 and d >= 2".into(),
        ));
    }
    let mut em = Emitter::new(output.format, out);
    let mut all = true;
    for n in n.iter() {
        let n = to_usize(n, "n")?;
        for d in d.iter() {
            let d = to_u32(d, "d")?;
            let a2 = if d > 5 {
                Some(verify_appendix_a2(n, d)?)
            } else {
                None
            };
            let row = AppendixRow::new(verify_appendix_a1(n, d)?, a2);
            all &= row.holds;
            em.emit(&row)?;
        }
    }
    Ok(all)
}

fn replay<W: Write>(
    p3: Option<Vec<u32>>,
    pn: Option<Vec<u32>>,
    field: &Field,
    output: &Output,
    out: W,
) -> Outcome {
    let mut rng = rng_for(field.seed, 0, 0, 0, Stream::Castelnuovo, u64::MAX);
    let report = match (p3.as_deref(), pn.as_deref()) {
        (Some(&[h, case]), None) => {
            let case =
                u8::try_from(case).map_err(|_| CliError::Config(format!("no case {case}")))?;
            let prime = prime_for(field.prime, 3 * h + 2)?;
            (replay_p3_case(h, case, prime, &mut rng)?, prime)
        }
        (None, Some(&[n, d])) => {
            let prime = prime_for(field.prime, d)?;
            (replay_pn_case(n as usize, d, prime, &mut rng)?, prime)
        }
        _ => {
            return Err(CliError::Config(
                "give exactly one of --p3 H CASE or --pn N D".into(),
            ))
        }
    };
    let (report, prime) = report;
    let record = ReplayRecord {
        cmd: "replay",
        prime: prime.value(),
        seed: field.seed,
        mismatches: report.mismatches(),
        report,
    };
    Emitter::new(output.format, out).emit(&record)?;
    Ok(record.mismatches == 0)
}

const CASTELNUOVO_MAX_DEGREE: u32 = 5;

/// A random union in P^3 or P^4 and a random hyperplane avoiding the
/// positions the residual/trace rules do not cover.
fn castelnuovo_instance(seed: u64, trial: u32, prime: Prime) -> Result<CastelnuovoRow, CliError> {
    let mut rng = rng_for(seed, 0, 0, trial, Stream::Castelnuovo, 0);
    let n = rng.gen_range(3..=4usize);
    let d = rng.gen_range(2..=CASTELNUOVO_MAX_DEGREE);
    let s = rng.gen_range(0..=3u64);
    let l = rng.gen_range(0..=4u64);
    let mut x = Scheme::new(n);
    for _ in 0..s {
        x.push(SchemeComponent::Sundial(make_generic_sundial(
            n, prime, &mut rng,
        )?))?;
    }
    for _ in 0..l {
        x.push(SchemeComponent::Line(random_line(n, prime, &mut rng)))?;
    }
    loop {
        let h = Hyperplane::random(n, prime, &mut rng);
        match check_inequality(&x, &Hypersurface::Hyperplane(h.clone()), d, prime) {
            Ok(report) => {
                return Ok(CastelnuovoRow {
                    cmd: "castelnuovo",
                    trial,
                    n,
                    d,
                    s,
                    l,
                    prime: prime.value(),
                    seed,
                    hyperplane: h.coeffs().iter().map(|c| c.value()).collect(),
                    report,
                })
            }
            Err(Error::UnrecognizedPosition(_)) => continue,
            Err(e) => return Err(e.into()),
        }
    }
}

fn castelnuovo<W: Write>(random: u32, field: &Field, output: &Output, out: W) -> Outcome {
    let prime = prime_for(field.prime, CASTELNUOVO_MAX_DEGREE)?;
    let rows: Vec<_> = (0..random)
        .into_par_iter()
        .map(|i| castelnuovo_instance(field.seed, i, prime))
        .collect::<Result<_, _>>()?;
    let mut em = Emitter::new(output.format, out);
    for r in &rows {
        em.emit(r)?;
    }
    Ok(rows.iter().all(|r| r.report.inequality_holds))
}

fn skew_pair<R: Rng>(n: usize, p: Prime, rng: &mut R) -> (Line, Line) {
    loop {
        let (a, b) = (random_line(n, p, rng), random_line(n, p, rng));
        if a.subspace(p)
            .join(&b.subspace(p), p)
            .is_ok_and(|s| s.projective_dim() == 3)
        {
            return (a, b);
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn family<W: Write>(
    n: usize,
    d: u32,
    lambdas: u32,
    field: &Field,
    output: &Output,
    out: W,
) -> Outcome {
    check_n(n)?;
    check_d(d)?;
    let prime = prime_for(field.prime, d)?;
    let mut rng = rng_for(field.seed, n, d, 0, Stream::Family, 0);
    let (l1, m) = skew_pair(n, prime, &mut rng);
    let (g1, g2) = skew_pair(n, prime, &mut rng);
    let generic =
        Scheme::from_components(n, [SchemeComponent::Line(g1), SchemeComponent::Line(g2)])?;
    let generic_hf = hilbert_function(&generic, d, prime)?;
    let expected_hf = forms_dimension(n, d)?.min(2 * (d as u64 + 1));
    let mut params = vec![sundial_core::Fp::ZERO];
    params.extend((0..lambdas).map(|_| prime.random_nonzero(&mut rng)));
    let cb = ConditionBuilder::new(n, d, prime)?;
    let mut em = Emitter::new(output.format, out);
    let mut all = true;
    for lambda in params {
        let fiber_hf = cb.hilbert_function(&degeneration_fiber(&l1, &m, lambda, prime)?)?;
        let row = FamilyRow {
            cmd: "family",
            n,
            d,
            prime: prime.value(),
            seed: field.seed,
            lambda: lambda.value(),
            fiber_hf,
            generic_hf,
            expected_hf,
            semicontinuous: fiber_hf <= generic_hf,
            equal: fiber_hf == generic_hf,
        };
        all &= row.equal;
        em.emit(&row)?;
    }
    Ok(all)
}

fn dim<W: Write>(path: &std::path::Path, d: u32, prime: u64, output: &Output, out: W) -> Outcome {
    let text = std::fs::read_to_string(path)?;
    let file: SchemeFile = serde_json::from_str(&text)?;
    let p = file.prime_or(Prime::new(prime)?)?;
    p.check_degree(d)?;
    let x = file.to_scheme(p)?;
    let cb = ConditionBuilder::new(x.ambient_n(), d, p)?;
    let hf = cb.hilbert_function(&x)?;
    let row = DimRow {
        cmd: "dim",
        scheme: path.display().to_string(),
        n: x.ambient_n(),
        d,
        prime: p.value(),
        components: x.len(),
        hilbert_function: hf,
        computed_dim: cb.columns() - hf,
    };
    Emitter::new(output.format, out).emit(&row)?;
    Ok(true)
}
