use std::io::Write;
use std::path::{Path, PathBuf};

use fsq_core::export::{
    compression_table, eigenvalue_table, pseudospectrum_table, szego_table, trace_table, CsvTable, OutputMeta, Report,
};
use fsq_core::finite_section::{
    compression_trace_sequence, essential_points, hermitian_set_limits, pseudospectral_set_limits,
    solve_finite_section, stability_scan, szego_functional, truncation_spectra, EssentialOptions,
    PiecewisePolynomial, SetLimitOptions, StabilityOptions, Word,
};
use fsq_core::groups::{primes_up_to, trace_convergence_table, FreeWord};
use fsq_core::inductive::{plan_explicit, plan_stages, plan_stages_scaled, StagePlanJson};
use fsq_core::operators::truncate;
use fsq_core::verify::{run_suite, Suite, VerifyOptions};
use serde::Serialize;
use serde_json::json;

use crate::input::{self, parse_list};
use crate::{CliError, Command, ModelArgs};

struct Sink<'a> {
    out: Option<&'a Path>,
    meta: OutputMeta,
}

impl Sink<'_> {
    fn write(&self, path: Option<&Path>, text: &str) -> Result<(), CliError> {
        match path {
            Some(p) => std::fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
            None => std::io::stdout()
                .lock()
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Usage(format!("stdout: {e}"))),
        }
    }

    fn json<T: Serialize>(&self, data: T) -> Result<(), CliError> {
        let text = Report::new(self.meta.clone(), data).to_json()?;
        self.write(self.out, &text)
    }

    /// The table goes to `--out` (or stdout); with `--out`, the summary is
    /// written next to it with a `.json` extension.
    fn table<T: Serialize>(&self, table: &CsvTable, summary: T) -> Result<(), CliError> {
        self.write(self.out, &table.render(&self.meta)?)?;
        if let Some(p) = self.out {
            let side: PathBuf = p.with_extension("json");
            let text = Report::new(self.meta.clone(), summary).to_json()?;
            self.write(Some(&side), &text)?;
        }
        Ok(())
    }
}

fn load(m: &ModelArgs) -> Result<(fsq_core::operators::OperatorModel, fsq_core::operators::Filtration), CliError> {
    Ok((input::model(&m.model)?, input::filtration(&m.filtration)?))
}

fn positive(n: usize, what: &str) -> Result<usize, CliError> {
    if n == 0 {
        return Err(CliError::Usage(format!("{what} must be at least 1")));
    }
    Ok(n)
}

/// Runs one subcommand. `Ok(false)` means a verification suite failed.
pub fn dispatch(cmd: &Command, seed: u64, out: Option<&Path>) -> Result<bool, CliError> {
    let config = serde_json::to_value(cmd).map_err(|e| CliError::Usage(e.to_string()))?;
    let sink = Sink { out, meta: OutputMeta::new(Some(seed), config) };
    match cmd {
        Command::Pseudospec { model, n, eps, grid, grid_im } => {
            let (m, f) = load(model)?;
            let g = input::grid(grid, grid_im.as_deref())?;
            let t = truncate(&m, &f, positive(*n, "n")?)?;
            let ps = fsq_core::finite_section::pseudospectrum(&t.matrix, *eps, &g)?;
            sink.table(
                &pseudospectrum_table(&ps),
                json!({ "n": n, "dim": t.dim(), "epsilon": eps, "points": g.len(), "members": ps.member_count() }),
            )?;
        }
        Command::Verify { suite, trials, stages } => {
            let s: Suite = suite.parse()?;
            let mut opts = VerifyOptions::new(trials.unwrap_or(s.default_trials()), seed);
            opts.stages = *stages;
            let report = run_suite(s, &opts)?;
            let passed = report.passed;
            sink.json(report)?;
            return Ok(passed);
        }
        Command::Szego { model, n, poly, indicator } => {
            let (m, f) = load(model)?;
            let func = match indicator {
                Some(iv) => match parse_list::<f64>(iv, "indicator endpoint")?.as_slice() {
                    [a, b] => PiecewisePolynomial::indicator(*a, *b)?,
                    _ => return Err(CliError::Usage("indicator needs a,b".into())),
                },
                None => PiecewisePolynomial::polynomial(parse_list(poly, "coefficient")?),
            };
            let seq = szego_functional(&m, &f, &func, positive(*n, "n")?)?;
            sink.table(&szego_table(&seq), json!({ "limit_estimate": seq.limit_estimate, "rows": seq.rows.len() }))?;
        }
        Command::Stability { model, n, cap } => {
            let (m, f) = load(model)?;
            let opts = StabilityOptions { inverse_norm_cap: *cap, ..Default::default() };
            sink.json(stability_scan(&m, &f, *n, &opts)?)?;
        }
        Command::Solve { model, n, rhs } => {
            let (m, f) = load(model)?;
            let v = input::parse_rhs(rhs)?;
            sink.json(solve_finite_section(&m, &f, &v, positive(*n, "n")?)?)?;
        }
        Command::GroupTrace { words, max_len, max_prime } => {
            let list: Vec<FreeWord> = match words {
                Some(w) => parse_list(w, "word")?,
                None => std::iter::once(FreeWord::identity()).chain(FreeWord::all_up_to(*max_len)).collect(),
            };
            if list.is_empty() {
                return Err(CliError::Usage("no words given".into()));
            }
            let table = trace_convergence_table(&list, &primes_up_to(*max_prime))?;
            sink.table(&trace_table(&table), &table)?;
        }
        Command::Essential { model, n, candidates, radii, min_count } => {
            let (m, f) = load(model)?;
            let mut opts = EssentialOptions::defaults_for(positive(*n, "n")?);
            if let Some(r) = radii {
                opts.radii = parse_list(r, "radius")?;
            }
            opts.min_count = *min_count;
            let cands: Vec<f64> = parse_list(candidates, "candidate")?;
            sink.json(essential_points(&m, &f, &cands, &opts)?)?;
        }
        Command::Eigs { model, ns } => {
            let (m, f) = load(model)?;
            let ns: Vec<usize> = parse_list(ns, "index")?;
            let spectra = truncation_spectra(&m, &f, &ns)?;
            sink.table(&eigenvalue_table(&spectra), json!({ "ns": ns, "hermitian": m.is_hermitian() }))?;
        }
        Command::Limits { model, n, delta, tail_fraction, limsup_threshold, liminf_threshold, eps, grid } => {
            let (m, f) = load(model)?;
            let opts = SetLimitOptions {
                delta: *delta,
                tail_fraction: *tail_fraction,
                limsup_threshold: *limsup_threshold,
                liminf_threshold: *liminf_threshold,
            };
            let n = positive(*n, "n")?;
            let summary = match (eps, grid) {
                (Some(e), Some(g)) => {
                    let ns: Vec<usize> = (1..=n).collect();
                    pseudospectral_set_limits(&m, &f, &ns, *e, &input::grid(g, None)?, &opts)?
                }
                (None, None) => hermitian_set_limits(&m, &f, n, &opts)?,
                _ => return Err(CliError::Usage("--eps and --grid go together".into())),
            };
            sink.json(summary)?;
        }
        Command::Compress { model, ns, words } => {
            let (m, f) = load(model)?;
            let ns: Vec<usize> = parse_list(ns, "index")?;
            let words: Vec<Word> = words.split(',').map(|w| w.trim().parse()).collect::<Result<_, _>>()?;
            let report = compression_trace_sequence(&m, &f, &ns, &words)?;
            sink.table(&compression_table(&report), json!({ "last_increments": report.last_increments }))?;
        }
        Command::Plan { k, scaled, explicit, bit_bound } => {
            let k: Vec<u64> = parse_list(k, "dimension")?;
            let plan = match (scaled, explicit) {
                (Some(t), None) => plan_stages_scaled(&k, &parse_list::<f64>(t, "tolerance")?, *bit_bound)?,
                (None, Some(n)) => plan_explicit(&k, &parse_list::<u64>(n, "multiplicity")?)?,
                (None, None) => plan_stages(&k, *bit_bound)?,
                _ => return Err(CliError::Usage("--scaled and --explicit are exclusive".into())),
            };
            sink.json(StagePlanJson::from(&plan))?;
        }
    }
    Ok(true)
}
