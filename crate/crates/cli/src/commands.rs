use std::fmt::Write as _;

use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use alexlin::alexmod::{alexander_lin_polynomial, InvariantReport, Status};
use alexlin::covers::{cover_homology, mahler_growth_experiment};
use alexlin::groups::{kernel_presentation, normalize};
use alexlin::reps::{all_permutations, cyclic_reps_mod_p, enumerate_periodic, EnumerateOptions};
use alexlin::{alexander_lin, AugmentedGroupSystem, Error, KernelPresentation, PeriodicRep, PipelineOptions};

use crate::{read_source, Cli, Command, Failure, RepSource};

pub struct Output {
    pub text: String,
    pub failed_check: bool,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::RootFinding { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Input(e.to_string()),
        }
    }
}

type Run<T> = Result<T, Failure>;

fn load(input: &str) -> Run<(AugmentedGroupSystem, KernelPresentation)> {
    let sys = AugmentedGroupSystem::parse(&read_source(input)?)?;
    let kp = kernel_presentation(&normalize(&sys))?;
    Ok((sys, kp))
}

fn load_rep(spec: &str, kp: &KernelPresentation) -> Run<PeriodicRep> {
    let rep = PeriodicRep::from_json(&read_source(spec)?, kp)?;
    rep.verify(kp)?;
    Ok(rep)
}

fn options(limit: u64, raw: bool, allow_reducible: bool) -> EnumerateOptions {
    EnumerateOptions {
        limit: (limit > 0).then_some(limit),
        raw,
        allow_reducible,
    }
}

/// Reps from `--rep`, or every enumerated rep for `--N/--r`.
fn reps_for(src: &RepSource, kp: &KernelPresentation) -> Run<(Vec<PeriodicRep>, bool)> {
    match (&src.rep, src.n, src.r) {
        (Some(path), None, None) => Ok((vec![load_rep(path, kp)?], false)),
        (None, Some(n), Some(r)) => {
            let e = enumerate_periodic(kp, n, r, &options(src.limit, false, src.allow_reducible))?;
            Ok((e.reps, e.partial))
        }
        _ => Err(Failure::Input("give either --rep or both --N and --r".into())),
    }
}

fn trivial_or(rep: &Option<String>, kp: &KernelPresentation) -> Run<PeriodicRep> {
    match rep {
        Some(p) => load_rep(p, kp),
        None => Ok(PeriodicRep::trivial(kp, 1, 1)),
    }
}

fn render_json(cli: &Cli, command: &str, input: &str, result: Value) -> String {
    let mut doc = json!({ "command": command, "input": input, "result": result });
    if cli.timestamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        doc["generated_at"] = json!(secs);
    }
    serde_json::to_string_pretty(&doc).expect("json") + "\n"
}

pub fn run(cli: &Cli) -> Run<Output> {
    match &cli.command {
        Command::Enumerate {
            input,
            n,
            r,
            p,
            raw,
            allow_reducible,
            limit,
        } => {
            let (_, kp) = load(input)?;
            if let Some(p) = p {
                if n.is_some_and(|n| n as u64 != *p) {
                    return Err(Failure::Input("--N must equal --p for cyclic representations".into()));
                }
                let c = cyclic_reps_mod_p(&kp, *p, *r)?;
                let text = if cli.json {
                    render_json(cli, "enumerate", input, c.to_json(*p, *r))
                } else {
                    let mut t = format!("p = {p}, r = {r}, nullity {}, Res = {}\n", c.nullity, c.resultant);
                    if let Some(note) = &c.note {
                        let _ = writeln!(t, "note: {note}");
                    }
                    let _ = writeln!(t, "{} representations", c.reps.len());
                    for cr in &c.reps {
                        let _ = writeln!(t, "{:?}", cr.exponents);
                    }
                    t
                };
                return Ok(Output { text, failed_check: false });
            }
            let n = n.ok_or_else(|| Failure::Input("--N is required".into()))?;
            let e = enumerate_periodic(&kp, n, *r, &options(*limit, *raw, *allow_reducible))?;
            let reps: Vec<Value> = e.reps.iter().map(PeriodicRep::to_json).collect();
            let text = if cli.json {
                let result = json!({ "N": n, "r": r, "count": reps.len(), "partial": e.partial, "nodes": e.nodes, "reps": reps });
                render_json(cli, "enumerate", input, result)
            } else {
                let mut t = format!("{} representations (N = {n}, r = {r})", reps.len());
                if e.partial {
                    t.push_str(", search budget exhausted: partial list");
                }
                t.push('\n');
                for v in &reps {
                    let _ = writeln!(t, "{v}");
                }
                t
            };
            Ok(Output { text, failed_check: false })
        }
        Command::Invariant { input, source } | Command::Checks { input, source } => {
            let only_checks = matches!(cli.command, Command::Checks { .. });
            let (sys, kp) = load(input)?;
            let (reps, partial) = reps_for(source, &kp)?;
            let opts = PipelineOptions {
                allow_reducible: source.allow_reducible,
            };
            let reports = reps
                .iter()
                .map(|rep| alexander_lin(&sys, rep, &opts))
                .collect::<Result<Vec<_>, _>>()?;
            let failed = reports.iter().any(InvariantReport::any_failed);
            let name = if only_checks { "checks" } else { "invariant" };
            let text = if cli.json {
                let items: Vec<Value> = reps
                    .iter()
                    .zip(&reports)
                    .map(|(rep, r)| {
                        if only_checks {
                            json!({ "rep": rep.to_json(), "checks": r.checks })
                        } else {
                            json!({ "rep": rep.to_json(), "report": r.to_json() })
                        }
                    })
                    .collect();
                render_json(cli, name, input, json!({ "partial": partial, "reports": items }))
            } else {
                let mut t = String::new();
                if reports.is_empty() {
                    t.push_str("no representations\n");
                }
                for (k, (rep, r)) in reps.iter().zip(&reports).enumerate() {
                    if reps.len() > 1 || source.rep.is_none() {
                        let _ = writeln!(t, "rep {}: {}", k + 1, rep.to_json());
                    }
                    t.push_str(&render_report(r, only_checks));
                }
                if partial {
                    t.push_str("warning: search budget exhausted; list is partial\n");
                }
                t
            };
            Ok(Output { text, failed_check: failed })
        }
        Command::Torsion { input, rep, n } => {
            let (sys, kp) = load(input)?;
            let rep = trivial_or(rep, &kp)?;
            let h = cover_homology(&sys, &rep, *n)?;
            let text = if cli.json {
                render_json(cli, "torsion", input, serde_json::to_value(&h).expect("json"))
            } else {
                let fs: Vec<String> = h.factors.iter().map(ToString::to_string).collect();
                format!(
                    "n = {}: torsion {}, free rank {}, factors [{}]\n",
                    h.n,
                    h.torsion,
                    h.free_rank,
                    fs.join(", ")
                )
            };
            Ok(Output { text, failed_check: false })
        }
        Command::Mahler { input, rep, n_max, csv } => {
            let (sys, kp) = load(input)?;
            let rep = trivial_or(rep, &kp)?;
            let g = mahler_growth_experiment(&sys, &rep, *n_max)?;
            let text = if *csv {
                g.to_csv()
            } else if cli.json {
                render_json(cli, "mahler", input, serde_json::to_value(&g).expect("json"))
            } else {
                let mut t = format!("D = {}\nM(D) = {} (+- {:e})\n", g.d, g.mahler, g.mahler_error);
                for row in &g.rows {
                    let _ = writeln!(t, "n = {:>3}  b = {}  b^(1/n) = {}  free rank {}", row.n, row.b, row.b_pow, row.free_rank);
                }
                let _ = writeln!(t, "last three b^(1/n): {:?}", g.last_three);
                if let Some(e) = g.slope_exp {
                    let _ = writeln!(t, "exp(slope of ln b) = {e}");
                }
                let _ = writeln!(t, "|b^(1/n_max) - M| = {}", g.final_gap);
                if !g.excluded.is_empty() {
                    let _ = writeln!(t, "excluded from fit (positive free rank): {:?}", g.excluded);
                }
                t
            };
            Ok(Output { text, failed_check: false })
        }
        Command::Fuzz { input, n, r, cases, seed } => fuzz(cli, input, *n, *r, *cases, *seed),
        Command::Corpus { name } => {
            let text = match name {
                Some(name) => read_source(&format!("corpus:{name}"))?,
                None if cli.json => {
                    let names: Vec<&str> = alexlin::corpus::list().collect();
                    serde_json::to_string_pretty(&names).expect("json") + "\n"
                }
                None => alexlin::corpus::list().map(|n| format!("{n}\n")).collect(),
            };
            Ok(Output { text, failed_check: false })
        }
    }
}

fn render_report(r: &InvariantReport, only_checks: bool) -> String {
    let mut t = String::new();
    if !only_checks {
        let _ = writeln!(t, "N = {}, r = {}, matrix {} x {}", r.degree, r.r, r.matrix_rows, r.matrix_cols);
        let _ = writeln!(t, "D = {}", r.d_text);
        if let (Some(k), Some(c)) = (r.s_minus_one_power, &r.cofactor) {
            let _ = writeln!(t, "  = (s-1)^{k} * ({c})");
        }
        match &r.extension {
            Some(x) => {
                let cs: Vec<String> = x
                    .iter()
                    .map(|c| format!("({})", c.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")))
                    .collect();
                let shown = if cs.is_empty() { "()".to_string() } else { cs.concat() };
                let _ = writeln!(t, "extends over G: X = {shown}");
            }
            None => t.push_str("does not extend over G\n"),
        }
    }
    t.push_str("checks:\n");
    for c in &r.checks {
        let status = match c.status {
            Status::Pass => "pass",
            Status::Fail => "FAIL",
            Status::Skipped => "skipped",
        };
        let _ = write!(t, "  {:<9} {:<8} {}", c.id, status, c.statement);
        if !c.detail.is_empty() {
            let _ = write!(t, "; {}", c.detail);
        }
        t.push('\n');
    }
    t
}

fn fuzz(cli: &Cli, input: &str, n: usize, r: usize, cases: usize, seed: u64) -> Run<Output> {
    let (_, kp) = load(input)?;
    let reps = enumerate_periodic(&kp, n, r, &options(10_000_000, false, true))?.reps;
    if reps.is_empty() {
        return Err(Failure::Input(format!("no representations with N = {n}, r = {r}")));
    }
    let perms = all_permutations(n);
    let mut rng = StdRng::seed_from_u64(seed);
    let mut failures = Vec::new();
    for case in 0..cases {
        let rep = reps.choose(&mut rng).expect("nonempty");
        let d = alexander_lin_polynomial(&kp, rep)?;
        let c = perms.choose(&mut rng).expect("nonempty");
        let k = rng.gen_range(2..=3u32);
        let conj = alexander_lin_polynomial(&kp, &rep.conjugate(c))?;
        let shifted = alexander_lin_polynomial(&kp, &rep.sigma())?;
        let rescaled = alexander_lin_polynomial(&kp, &rep.with_period_multiple(k as usize))?;
        for (name, ok) in [
            ("conjugation", conj == d),
            ("shift", shifted == d),
            ("period", rescaled == d.power_transform(k)),
        ] {
            if !ok {
                failures.push(json!({ "case": case, "property": name, "rep": rep.to_json() }));
            }
        }
    }
    let text = if cli.json {
        render_json(cli, "fuzz", input, json!({ "seed": seed, "cases": cases, "failures": failures }))
    } else {
        let mut t = format!("{cases} cases, seed {seed}, {} failures\n", failures.len());
        for f in &failures {
            let _ = writeln!(t, "{f}");
        }
        t
    };
    Ok(Output {
        failed_check: !failures.is_empty(),
        text,
    })
}
