use std::fmt::Write as _;

use num_traits::ToPrimitive;
use powerexp::audit::{self, AuditRun, DomainOverride};
use powerexp::exact::{truncated_decimal, ExactInt};
use powerexp::exp_series::{exp_convergence_report, exp_partial};
use powerexp::expand::{expand_power, StrategyId};
use powerexp::findiff::difference_table;
use powerexp::oeis::{self, FetchMode, Fetcher, SUPPORTED};
use powerexp::triangle::{self, u_coeff, TriangleKind};
use serde_json::{json, Value};

use crate::{Cli, Command, Format, Mode, OeisAction};

/// Largest `x` accepted by `exp`.
const EXP_MAX_X: u32 = 1000;
/// Digits shown by `exp` when only `--terms` is given.
const EXP_DEFAULT_DIGITS: u32 = 20;

pub struct Outcome {
    pub stdout: String,
    pub code: u8,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome { stdout, code: 0 }
    }
}

type Res<T> = Result<T, String>;

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn json_doc(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

fn unsupported(command: &str, format: Format) -> String {
    let name = match format {
        Format::Text => "text",
        Format::Json => "json",
        Format::Csv => "csv",
    };
    format!("`{command}` does not support --format {name}")
}

fn parse_int(flag: &str, s: &str) -> Res<ExactInt> {
    s.trim().parse().map_err(|_| format!("--{flag}: `{s}` is not an integer"))
}

pub fn run(cli: &Cli) -> Res<Outcome> {
    let f = cli.format;
    match &cli.command {
        Command::Triangle { kind, rows } => {
            let kind: TriangleKind = kind.parse().map_err(err)?;
            let rows = triangle::triangle_rows(kind, *rows);
            Ok(Outcome::ok(match f {
                Format::Text => triangle::render_text(&rows),
                Format::Csv => triangle::render_csv(&rows),
                Format::Json => json_doc(&json!({ "kind": kind.to_string(), "rows": rows })),
            }))
        }
        Command::Expand { x, n, strategy, terms } => {
            let x = parse_int("x", x)?;
            let strategy: StrategyId = strategy.parse().map_err(err)?;
            let r = expand_power(&x, *n, strategy).map_err(err)?;
            match f {
                Format::Text => {
                    let mut out = format!("x: {}\nn: {}\nstrategy: {}\nvalue: {}\n", r.x, r.n, r.strategy, r.value);
                    if *terms {
                        let t: Vec<String> = r.terms.iter().map(ToString::to_string).collect();
                        let _ = writeln!(out, "terms: {}", t.join(","));
                    }
                    Ok(Outcome::ok(out))
                }
                Format::Json => {
                    let mut v = serde_json::to_value(&r).map_err(err)?;
                    if !*terms {
                        v.as_object_mut().expect("object").remove("terms");
                    }
                    Ok(Outcome::ok(json_doc(&v)))
                }
                Format::Csv => Err(unsupported("expand", f)),
            }
        }
        Command::Difftable { n, xmax, depth } => {
            let t = difference_table(*n, *xmax, *depth).map_err(err)?;
            Ok(Outcome::ok(match f {
                Format::Text => t.render_text(),
                Format::Csv => t.render_csv(),
                Format::Json => json_doc(&serde_json::to_value(&t).map_err(err)?),
            }))
        }
        Command::Audit { id, ranges } => run_audit(f, id.as_deref(), ranges),
        Command::Exp {
            x,
            digits,
            terms,
            strategy,
        } => run_exp(f, x, *digits, *terms, strategy),
        Command::Parabola { x } => {
            let points: Vec<(u64, ExactInt)> = (0..=*x).map(|k| (k, u_coeff(*x, k))).collect();
            Ok(Outcome::ok(match f {
                Format::Text | Format::Csv => {
                    let mut out = String::from("k,y\n");
                    for (k, y) in &points {
                        let _ = writeln!(out, "{k},{y}");
                    }
                    out
                }
                Format::Json => {
                    let pts: Vec<Value> = points
                        .iter()
                        .map(|(k, y)| json!({ "k": k, "y": y.to_string() }))
                        .collect();
                    json_doc(&json!({ "x": x, "points": pts }))
                }
            }))
        }
        Command::Oeis(args) => run_oeis(cli, &args.action),
    }
}

fn run_audit(f: Format, id: Option<&str>, ranges: &[String]) -> Res<Outcome> {
    if f == Format::Csv {
        return Err(unsupported("audit", f));
    }
    let run = match id {
        None => {
            if !ranges.is_empty() {
                return Err("--range needs --id".to_string());
            }
            audit::audit_all()
        }
        Some(id) => {
            let record = audit::find(id).ok_or_else(|| err(powerexp::Error::UnknownIdentity(id.to_string())))?;
            let report = if ranges.is_empty() {
                audit::report_for(record)
            } else {
                let overrides: Vec<DomainOverride> =
                    ranges.iter().map(|r| r.parse()).collect::<Result<_, _>>().map_err(err)?;
                audit::audit(id, &overrides).map_err(err)?
            };
            AuditRun::from_reports(vec![report])
        }
    };
    let stdout = match f {
        Format::Json => audit::render_json(&run),
        _ => audit::render_text(&run),
    };
    Ok(Outcome {
        stdout,
        code: run.exit_code() as u8,
    })
}

fn run_exp(f: Format, x: &str, digits: Option<u32>, terms: Option<u32>, strategy: &str) -> Res<Outcome> {
    let x = parse_int("x", x)?;
    match x.to_u32() {
        Some(v) if v <= EXP_MAX_X => {}
        _ => return Err(format!("--x must lie in [0, {EXP_MAX_X}]")),
    }
    let strategy: StrategyId = strategy.parse().map_err(err)?;
    let (n, shown) = match (digits, terms) {
        (_, Some(n)) => (n, EXP_DEFAULT_DIGITS),
        (Some(d), None) => (exp_convergence_report(&x, d), d),
        (None, None) => (exp_convergence_report(&x, 15), 15),
    };
    let p = exp_partial(&x, n, strategy).map_err(err)?;
    let decimal = truncated_decimal(&p.value, shown as usize);
    match f {
        Format::Text => Ok(Outcome::ok(format!(
            "x: {}\nstrategy: {}\nterms: 0..={}\nvalue: {}\ndecimal: {}\ntail bound: {}\n",
            p.x, p.strategy, p.terms_used, p.value, decimal, p.tail_bound
        ))),
        Format::Json => {
            let mut v = serde_json::to_value(&p).map_err(err)?;
            let obj = v.as_object_mut().expect("object");
            obj.insert("digits".into(), json!(shown));
            obj.insert("decimal".into(), json!(decimal));
            Ok(Outcome::ok(json_doc(&v)))
        }
        Format::Csv => Err(unsupported("exp", f)),
    }
}

fn fetcher(cli: &Cli) -> Fetcher {
    let f = Fetcher::from_env();
    match &cli.cache_dir {
        Some(dir) => f.with_cache_dir(dir),
        None => f,
    }
}

fn fetch_mode(cli: &Cli, mode: Mode) -> Res<FetchMode> {
    match (cli.offline, mode) {
        (_, Mode::Offline) => Ok(FetchMode::Offline),
        (true, _) => Err("--offline conflicts with a network --mode".to_string()),
        (false, Mode::Cached) => Ok(FetchMode::Cached),
        (false, Mode::Refresh) => Ok(FetchMode::Refresh),
    }
}

fn run_oeis(cli: &Cli, action: &OeisAction) -> Res<Outcome> {
    let f = cli.format;
    if f == Format::Csv {
        return Err(unsupported("oeis", f));
    }
    match action {
        OeisAction::Check { id, count, mode } => {
            let mode = fetch_mode(cli, *mode)?;
            let ids: Vec<&str> = match id {
                Some(id) => vec![id.as_str()],
                None => SUPPORTED.to_vec(),
            };
            let fetcher = fetcher(cli);
            let mut reports = Vec::new();
            for id in ids {
                reports.push(oeis::compare(&fetcher, id, *count, mode).map_err(err)?);
            }
            let passed = reports.iter().filter(|r| r.passed()).count();
            let stdout = match f {
                Format::Json => json_doc(&json!({ "passed": passed == reports.len(), "reports": reports })),
                _ => {
                    let mut out = String::new();
                    for r in &reports {
                        match &r.first_mismatch {
                            None => {
                                let _ = writeln!(out, "{} ok: {} terms match ({})", r.sequence_id, r.terms_compared, r.source);
                            }
                            Some(m) => {
                                let _ = writeln!(
                                    out,
                                    "{} MISMATCH at index {}: b-file {}, generated {} ({})",
                                    r.sequence_id, m.index, m.expected, m.actual, r.source
                                );
                            }
                        }
                    }
                    let _ = writeln!(out, "{passed} of {} sequences match", reports.len());
                    out
                }
            };
            Ok(Outcome {
                stdout,
                code: if passed == reports.len() { 0 } else { 1 },
            })
        }
        OeisAction::Fetch { id, count, mode } => {
            let mode = fetch_mode(cli, *mode)?;
            let b = fetcher(cli).fetch(id, mode).map_err(err)?;
            let shown: Vec<&(i64, ExactInt)> = b.entries.iter().take(*count).collect();
            Ok(Outcome::ok(match f {
                Format::Json => {
                    let values: Vec<String> = shown.iter().map(|(_, v)| v.to_string()).collect();
                    json_doc(&json!({
                        "sequence_id": b.sequence_id,
                        "source": b.source,
                        "offset": b.offset,
                        "terms": b.len(),
                        "values": values,
                    }))
                }
                _ => {
                    let mut out = format!(
                        "{} source={} offset={} terms={}\n",
                        b.sequence_id,
                        b.source,
                        b.offset,
                        b.len()
                    );
                    for (i, v) in shown {
                        let _ = writeln!(out, "{i} {v}");
                    }
                    out
                }
            }))
        }
        OeisAction::Gen { id, count } => {
            let values = oeis::generate(id, *count).map_err(err)?;
            Ok(Outcome::ok(match f {
                Format::Json => {
                    let values: Vec<String> = values.iter().map(ToString::to_string).collect();
                    json_doc(&json!({ "sequence_id": id, "offset": 0, "values": values }))
                }
                _ => values
                    .iter()
                    .enumerate()
                    .map(|(i, v)| format!("{i} {v}\n"))
                    .collect(),
            }))
        }
    }
}
