//! `winsum`: generate recurrence sequences, verify their window-sum
//! identities, search for fixed-multiple relations, compute periods under
//! a modulus, and run the acceptance sweep. Output is deterministic:
//! identical inputs produce byte-identical bytes.

use std::io::Write;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::{json, Value};

use winsum::error::Error;
use winsum::identities::{self, SweepBounds};
use winsum::relations::{self, RelationVerdict};
use winsum::sequences::{self, RecurrenceSpec};
use winsum::tilings::TilingConfig;
use winsum::{higher, pisano};

const TOOL_VERSION: &str = env!("CARGO_PKG_VERSION");
/// Term printing beyond this many decimal digits needs --force.
const DIGIT_GUARD: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Parser)]
#[command(
    name = "winsum",
    version,
    about = "Exact window-sum relation toolkit for integer linear recurrences"
)]
struct Cli {
    /// Output format; structured subcommands default to json, gen/sum to text
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// Write output to a file instead of standard output
    #[arg(long, global = true)]
    output: Option<std::path::PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args, Clone)]
struct SpecArgs {
    /// Sequence selector: pell, fibonacci, lucas, pellLucas, lucasU(r,s),
    /// lucasV(r,s), genPell(k,i), genFib(k)
    #[arg(long, conflicts_with_all = ["coeffs", "init"])]
    seq: Option<String>,
    /// Comma-separated coefficients c_1..c_d of a custom recurrence
    #[arg(long, requires = "init")]
    coeffs: Option<String>,
    /// Comma-separated initial values u(0)..u(d-1)
    #[arg(long, requires = "coeffs")]
    init: Option<String>,
    /// Label for a custom recurrence
    #[arg(long, default_value = "custom")]
    label: String,
}

impl SpecArgs {
    fn resolve(&self) -> Result<RecurrenceSpec, Error> {
        match (&self.seq, &self.coeffs, &self.init) {
            (Some(sel), None, None) => sequences::builtin(sel),
            (None, Some(c), Some(i)) => {
                let coeffs = parse_bigints(c)?;
                let init = parse_bigints(i)?;
                RecurrenceSpec::new(coeffs, init, self.label.clone())
            }
            _ => Err(Error::InvalidSpec(
                "pass either --seq or both --coeffs and --init".into(),
            )),
        }
    }

    fn describe(&self) -> String {
        match &self.seq {
            Some(s) => s.clone(),
            None => format!(
                "{} (coeffs {}, init {})",
                self.label,
                self.coeffs.as_deref().unwrap_or(""),
                self.init.as_deref().unwrap_or("")
            ),
        }
    }
}

fn parse_bigints(s: &str) -> Result<Vec<BigInt>, Error> {
    s.split(',')
        .map(|p| {
            BigInt::from_str(p.trim())
                .map_err(|_| Error::InvalidSpec(format!("`{p}` is not an integer")))
        })
        .collect()
}

#[derive(Subcommand)]
enum Cmd {
    /// Print consecutive terms of a sequence
    Gen {
        #[command(flatten)]
        spec: SpecArgs,
        /// First index to print (may be negative when |c_d| = 1)
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        from: i64,
        #[arg(long)]
        count: usize,
        /// Reduce every term modulo m
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Allow outputs past the digit guard
        #[arg(long)]
        force: bool,
    },
    /// Sum a window of consecutive terms
    Sum {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 0, allow_negative_numbers = true)]
        from: i64,
        #[arg(long)]
        window: u32,
    },
    /// Search one window length for a fixed integer-multiple relation
    Search {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long)]
        window: u32,
        /// First swept index; defaults past the leading zeros
        #[arg(long, allow_negative_numbers = true)]
        nmin: Option<i64>,
        #[arg(long, default_value_t = 200)]
        horizon: i64,
        /// Candidate offset range `lo..hi`; defaults to 0..window+2
        #[arg(long)]
        offsets: Option<String>,
    },
    /// Relation tables over window lengths or parameter families
    Classify {
        #[command(subcommand)]
        what: ClassifyCmd,
    },
    /// Periods, parity certificates, and window divisibility under a modulus
    Pisano {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long = "mod")]
        modulus: Option<u64>,
        /// Sweep moduli from this value (JSON-lines output)
        #[arg(long)]
        mod_from: Option<u64>,
        #[arg(long)]
        mod_to: Option<u64>,
        /// Attach the determinant-based parity certificate
        #[arg(long)]
        parity: bool,
        /// Check that every sum of this window length vanishes mod m
        #[arg(long)]
        window_div: Option<u32>,
        #[arg(long, default_value_t = 100)]
        horizon: i64,
    },
    /// Run an identity verifier by id, or all of them
    Verify {
        /// One of the verifier ids, or `all`
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 100)]
        nmax: i64,
        #[arg(long = "Nmax", default_value_t = 10)]
        big_nmax: i64,
        #[arg(long, default_value_t = 10)]
        kmax: i64,
        #[arg(long, default_value_t = 6)]
        rmax: i64,
        /// List the available verifier ids and exit
        #[arg(long)]
        list: bool,
    },
    /// Board-tiling counts, listings, and block-sum checks
    Tilings {
        #[command(subcommand)]
        what: TilingsCmd,
    },
    /// Higher-order scans: window searches, odd-window reports, growth bounds
    Conjecture {
        #[command(subcommand)]
        what: ConjectureCmd,
    },
    /// Run the full acceptance sweep; nonzero exit on any failure
    Accept,
}

#[derive(Subcommand)]
enum ClassifyCmd {
    /// Windows 1..=nmax of one sequence
    Seq {
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, allow_negative_numbers = true)]
        nmin: Option<i64>,
        #[arg(long, default_value_t = 150)]
        horizon: i64,
    },
    /// Window 4 across the seeds f(n) = r f(n-1) + f(n-2), r = 1..=rmax
    R4 {
        #[arg(long, default_value_t = 10)]
        rmax: i64,
        #[arg(long, allow_negative_numbers = true)]
        nmin: Option<i64>,
        #[arg(long, default_value_t = 150)]
        horizon: i64,
    },
    /// Windows 2..=nmax across (r, s) with s in {-1, +1}
    Family {
        #[arg(long, default_value_t = 1)]
        rmin: i64,
        #[arg(long, default_value_t = 4)]
        rmax: i64,
        /// Comma-separated s values from {-1, 1}
        #[arg(long, default_value = "-1,1", allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value_t = 12)]
        nmax: u32,
        #[arg(long, default_value_t = 150)]
        horizon: i64,
    },
}

#[derive(Subcommand)]
enum TilingsCmd {
    /// Count boards by the weighted recurrence
    Count {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
    },
    /// Count boards by exhaustive walk; optionally list every tiling
    Enumerate {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 2)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long)]
        list: bool,
    },
    /// Verify the block-sum identities up to an index bound
    Blocksum {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 120)]
        nmax: u32,
        #[arg(long, default_value_t = 2)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
    },
}

#[derive(Subcommand)]
enum ConjectureCmd {
    /// Scan window lengths 2..=nmax of the (k, i) seed; `--kmax` sweeps
    /// k = 2..=kmax instead and prints a k-by-N grid
    Scan {
        #[arg(long, conflicts_with = "kmax")]
        k: Option<u32>,
        #[arg(long)]
        kmax: Option<u32>,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long)]
        nmax: Option<u32>,
        #[arg(long, default_value_t = 200)]
        horizon: i64,
    },
    /// Verify the 2k+2 window identity for the (k, i) seed
    SumCheck {
        #[arg(long)]
        k: u32,
        #[arg(long)]
        i: Option<u32>,
        #[arg(long, default_value_t = 150)]
        nmax: i64,
    },
    /// Odd-window report for the (k, k-1) seed (either parity of k)
    OddPell {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 15)]
        nmax: u32,
        #[arg(long, default_value_t = 200)]
        horizon: i64,
    },
    /// Growth bounds for the order-k sum-of-previous-terms family
    GenfibGrowth {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 150)]
        rmax: i64,
    },
    /// Odd-window scan for the order-k family, k even
    GenfibOdd {
        #[arg(long)]
        k: u32,
        #[arg(long, default_value_t = 15)]
        nmax: u32,
        #[arg(long, default_value_t = 200)]
        horizon: i64,
    },
}

struct Output {
    format: Format,
    sink: Box<dyn Write>,
}

impl Output {
    fn emit(&mut self, subcommand: &str, params: Value, result: Value, text: String) {
        match self.format {
            Format::Json => {
                let envelope = json!({
                    "tool_version": TOOL_VERSION,
                    "subcommand": subcommand,
                    "params": params,
                    "result": result,
                });
                writeln!(
                    self.sink,
                    "{}",
                    serde_json::to_string_pretty(&envelope).unwrap()
                )
                .expect("write output");
            }
            Format::Csv | Format::Text => {
                writeln!(self.sink, "{text}").expect("write output");
            }
        }
    }

    fn emit_lines(&mut self, lines: &[String]) {
        for l in lines {
            writeln!(self.sink, "{l}").expect("write output");
        }
    }
}

fn verdict_table_text(rows: &[RelationVerdict]) -> String {
    let mut out = String::from("label\tN\tfound\tC\tk\thorizon");
    for v in rows {
        let c = v
            .constant
            .as_ref()
            .map(|c| c.to_string())
            .unwrap_or_else(|| "-".into());
        let k = v
            .offset
            .map(|k| k.to_string())
            .unwrap_or_else(|| "-".into());
        out.push_str(&format!(
            "\n{}\t{}\t{}\t{}\t{}\t{}",
            v.label, v.window, v.found, c, k, v.horizon
        ));
    }
    out
}

fn verdict_table_csv(rows: &[RelationVerdict]) -> String {
    let mut out = String::from("label,N,found,C,k,horizon");
    for v in rows {
        out.push('\n');
        out.push_str(&v.csv_row());
    }
    out
}

fn report_text(rep: &winsum::VerificationReport) -> String {
    match &rep.counterexample {
        None => format!("{}: PASS ({})", rep.identity, rep.rectangle),
        Some(c) => format!(
            "{}: FAIL at {} (lhs {} != rhs {})",
            rep.identity, c.params, c.lhs, c.rhs
        ),
    }
}

fn emit_verdicts(out: &mut Output, subcommand: &str, params: Value, rows: Vec<RelationVerdict>) {
    let text = match out.format {
        Format::Csv => verdict_table_csv(&rows),
        _ => verdict_table_text(&rows),
    };
    out.emit(
        subcommand,
        params,
        serde_json::to_value(&rows).unwrap(),
        text,
    );
}

fn decimal_digits(v: &BigInt) -> u64 {
    (v.bits() as f64 * std::f64::consts::LOG10_2) as u64 + 1
}

fn run(cli: Cli) -> Result<u8, Error> {
    let default_format = match &cli.cmd {
        Cmd::Gen { .. } | Cmd::Sum { .. } | Cmd::Accept => Format::Text,
        _ => Format::Json,
    };
    let sink: Box<dyn Write> = match &cli.output {
        Some(path) => Box::new(
            std::fs::File::create(path)
                .map_err(|e| Error::InvalidRange(format!("cannot open {}: {e}", path.display())))?,
        ),
        None => Box::new(std::io::stdout().lock()),
    };
    let mut out = Output {
        format: cli.format.unwrap_or(default_format),
        sink,
    };

    match cli.cmd {
        Cmd::Gen {
            spec,
            from,
            count,
            modulus,
            force,
        } => {
            let s = spec.resolve()?;
            let params = json!({
                "seq": spec.describe(), "from": from, "count": count, "mod": modulus,
            });
            let values: Vec<String> = match modulus {
                Some(m) => {
                    if from < 0 {
                        return Err(Error::InvalidRange(
                            "modular printing starts at index 0".into(),
                        ));
                    }
                    let res = s.residues(from as usize + count, m)?;
                    res[from as usize..].iter().map(|v| v.to_string()).collect()
                }
                None => {
                    let terms = s.terms(from, count)?;
                    if !force {
                        if let Some(worst) = terms.iter().map(decimal_digits).max() {
                            if worst > DIGIT_GUARD {
                                return Err(Error::OutputTooLarge { digits: worst });
                            }
                        }
                    }
                    terms.iter().map(|v| v.to_string()).collect()
                }
            };
            let text = values.join(" ");
            out.emit("gen", params, json!({ "terms": values }), text);
        }
        Cmd::Sum { spec, from, window } => {
            let s = spec.resolve()?;
            let params = json!({ "seq": spec.describe(), "from": from, "window": window });
            let sum = s.window_sum(from, window)?;
            out.emit(
                "sum",
                params,
                json!({ "sum": sum.to_string() }),
                sum.to_string(),
            );
        }
        Cmd::Search {
            spec,
            window,
            nmin,
            horizon,
            offsets,
        } => {
            let s = spec.resolve()?;
            let range = match &offsets {
                Some(text) => Some(parse_range(text)?),
                None => None,
            };
            let params = json!({
                "seq": spec.describe(), "window": window, "nmin": nmin,
                "horizon": horizon, "offsets": offsets,
            });
            let v = relations::search_relation(&s, window, nmin, horizon, range)?;
            let text = match out.format {
                Format::Csv => verdict_table_csv(std::slice::from_ref(&v)),
                _ => verdict_table_text(std::slice::from_ref(&v)),
            };
            out.emit("search", params, serde_json::to_value(&v).unwrap(), text);
        }
        Cmd::Classify { what } => match what {
            ClassifyCmd::Seq {
                spec,
                nmax,
                nmin,
                horizon,
            } => {
                let s = spec.resolve()?;
                let params = json!({
                    "seq": spec.describe(), "nmax": nmax, "nmin": nmin, "horizon": horizon,
                });
                let rows = relations::classify(&s, nmax, nmin, horizon)?;
                emit_verdicts(&mut out, "classify", params, rows);
            }
            ClassifyCmd::R4 {
                rmax,
                nmin,
                horizon,
            } => {
                let params = json!({ "rmax": rmax, "nmin": nmin, "horizon": horizon });
                let rows = relations::scan_r4(rmax, nmin, horizon)?;
                emit_verdicts(&mut out, "classify", params, rows);
            }
            ClassifyCmd::Family {
                rmin,
                rmax,
                s,
                nmax,
                horizon,
            } => {
                let s_values: Vec<i64> = s
                    .split(',')
                    .map(|p| {
                        p.trim()
                            .parse::<i64>()
                            .map_err(|_| Error::InvalidRange(format!("bad s value `{p}`")))
                    })
                    .collect::<Result<_, _>>()?;
                let params = json!({
                    "rmin": rmin, "rmax": rmax, "s": s_values, "nmax": nmax, "horizon": horizon,
                });
                let rows = relations::lucas_family_scan(rmin..=rmax, &s_values, nmax, horizon)?;
                emit_verdicts(&mut out, "classify", params, rows);
            }
        },
        Cmd::Pisano {
            spec,
            modulus,
            mod_from,
            mod_to,
            parity,
            window_div,
            horizon,
        } => {
            let s = spec.resolve()?;
            if let Some(w) = window_div {
                let m = modulus
                    .ok_or_else(|| Error::InvalidRange("--window-div needs --mod".into()))?;
                let ok = pisano::window_divisibility(&s, w, m, horizon)?;
                let params = json!({
                    "seq": spec.describe(), "mod": m, "window": w, "horizon": horizon,
                });
                out.emit(
                    "pisano",
                    params,
                    json!({ "window_divisible": ok }),
                    format!("window {w} sums divisible by {m}: {ok}"),
                );
            } else if let (Some(lo), Some(hi)) = (mod_from, mod_to) {
                // sweep: one JSON line per modulus
                let mut lines = Vec::new();
                for m in lo..=hi {
                    let r = pisano::pisano(&s, m)?;
                    let par = if r.period % 2 == 0 { "even" } else { "odd" };
                    match out.format {
                        Format::Json => lines.push(
                            serde_json::to_string(&json!({
                                "m": m, "preperiod": r.preperiod, "period": r.period, "parity": par,
                            }))
                            .unwrap(),
                        ),
                        Format::Csv => {
                            lines.push(format!("{m},{},{},{par}", r.preperiod, r.period))
                        }
                        Format::Text => lines.push(format!(
                            "m={m} preperiod={} period={} parity={par}",
                            r.preperiod, r.period
                        )),
                    }
                }
                if out.format == Format::Csv {
                    lines.insert(0, "m,preperiod,period,parity".into());
                }
                out.emit_lines(&lines);
            } else {
                let m = modulus.ok_or_else(|| {
                    Error::InvalidRange("pass --mod, or --mod-from with --mod-to".into())
                })?;
                let params = json!({ "seq": spec.describe(), "mod": m, "parity": parity });
                if parity {
                    let cert = pisano::parity_certificate(&s, m)?;
                    let par = match cert.parity {
                        pisano::Parity::Even => "even",
                        pisano::Parity::Odd => "odd",
                    };
                    let text = format!(
                        "m={m} period={} parity={par} det_mod={} forced_even={}",
                        cert.period, cert.det_mod, cert.forced_even
                    );
                    out.emit("pisano", params, serde_json::to_value(&cert).unwrap(), text);
                } else {
                    let r = pisano::pisano(&s, m)?;
                    let text = format!("m={m} preperiod={} period={}", r.preperiod, r.period);
                    out.emit("pisano", params, serde_json::to_value(r).unwrap(), text);
                }
            }
        }
        Cmd::Verify {
            id,
            nmax,
            big_nmax,
            kmax,
            rmax,
            list,
        } => {
            if list {
                out.emit_lines(
                    &identities::VERIFIER_IDS
                        .iter()
                        .map(|s| s.to_string())
                        .collect::<Vec<_>>(),
                );
                return Ok(0);
            }
            let bounds = SweepBounds {
                n_max: nmax,
                nn_max: big_nmax,
                k_max: kmax,
                r_max: rmax,
            };
            let params = json!({
                "id": id, "nmax": nmax, "Nmax": big_nmax, "kmax": kmax, "rmax": rmax,
            });
            let reports: Vec<winsum::VerificationReport> = if id == "all" {
                identities::VERIFIER_IDS
                    .iter()
                    .map(|vid| identities::run_verifier(vid, bounds))
                    .collect::<Result<_, _>>()?
            } else {
                vec![identities::run_verifier(&id, bounds)?]
            };
            let all_passed = reports.iter().all(|r| r.passed);
            let text = reports
                .iter()
                .map(report_text)
                .collect::<Vec<_>>()
                .join("\n");
            out.emit(
                "verify",
                params,
                serde_json::to_value(&reports).unwrap(),
                text,
            );
            return Ok(if all_passed { 0 } else { 1 });
        }
        Cmd::Tilings { what } => match what {
            TilingsCmd::Count { k, n, a, b } => {
                let cfg = TilingConfig::new(k, n, a, b)?;
                let count = winsum::tilings::count_dp(&cfg);
                let params = json!({ "k": k, "n": n, "a": a, "b": b });
                out.emit(
                    "tilings",
                    params,
                    json!({ "count": count.to_string() }),
                    count.to_string(),
                );
            }
            TilingsCmd::Enumerate { k, n, a, b, list } => {
                let cfg = TilingConfig::new(k, n, a, b)?;
                let params = json!({ "k": k, "n": n, "a": a, "b": b, "list": list });
                if list {
                    let lines = winsum::tilings::enumerate_listing(&cfg)?;
                    let text = format!("{}\n{}", lines.len(), lines.join("\n"));
                    out.emit(
                        "tilings",
                        params,
                        json!({ "count": lines.len(), "tilings": lines }),
                        text,
                    );
                } else {
                    let count = winsum::tilings::enumerate(&cfg)?;
                    out.emit(
                        "tilings",
                        params,
                        json!({ "count": count.to_string() }),
                        count.to_string(),
                    );
                }
            }
            TilingsCmd::Blocksum { k, nmax, a, b } => {
                let rep = winsum::tilings::block_sum_check(k, nmax, a, b)?;
                let params = json!({ "k": k, "nmax": nmax, "a": a, "b": b });
                let passed = rep.passed;
                out.emit(
                    "tilings",
                    params,
                    serde_json::to_value(&rep).unwrap(),
                    report_text(&rep),
                );
                return Ok(if passed { 0 } else { 1 });
            }
        },
        Cmd::Conjecture { what } => match what {
            ConjectureCmd::Scan {
                k,
                kmax,
                i,
                nmax,
                horizon,
            } => match (k, kmax) {
                (Some(k), None) => {
                    let i = i.unwrap_or(k.saturating_sub(1));
                    let nmax = nmax.unwrap_or(2 * k + 8);
                    let scan = higher::conjecture_scan(k, i, nmax, horizon)?;
                    let params = json!({ "k": k, "i": i, "nmax": nmax, "horizon": horizon });
                    let mut text = format!(
                        "k={k} i={i} windows 2..={nmax} horizon {horizon} (verified up to horizon)"
                    );
                    for w in 2..=nmax {
                        let hit = scan.found_windows.iter().find(|f| f.window == w);
                        text.push_str(&match hit {
                            Some(f) => format!("\nN={w}: found C={} k={}", f.constant, f.offset),
                            None => format!("\nN={w}: none"),
                        });
                    }
                    out.emit(
                        "conjecture",
                        params,
                        serde_json::to_value(&scan).unwrap(),
                        text,
                    );
                }
                (None, Some(kmax)) => {
                    let nmax = nmax.unwrap_or(2 * kmax + 8);
                    let mut scans = Vec::new();
                    let mut text = String::from("k\\N");
                    for w in 2..=nmax {
                        text.push_str(&format!(" {w:>3}"));
                    }
                    for k in 2..=kmax {
                        let scan = higher::conjecture_scan(k, k - 1, nmax, horizon)?;
                        text.push_str(&format!("\n{k:>3}"));
                        for w in 2..=nmax {
                            let hit = scan.found_windows.iter().any(|f| f.window == w);
                            text.push_str(if hit { "   +" } else { "   ." });
                        }
                        scans.push(scan);
                    }
                    text.push_str("\n(+ = relation certified up to the horizon)");
                    let params = json!({ "kmax": kmax, "nmax": nmax, "horizon": horizon });
                    out.emit(
                        "conjecture",
                        params,
                        serde_json::to_value(&scans).unwrap(),
                        text,
                    );
                }
                _ => {
                    return Err(Error::InvalidRange(
                        "pass exactly one of --k or --kmax".into(),
                    ))
                }
            },
            ConjectureCmd::SumCheck { k, i, nmax } => {
                let i = i.unwrap_or(k.saturating_sub(1));
                let rep = higher::gen_pell_sum_check(k, i, nmax)?;
                let params = json!({ "k": k, "i": i, "nmax": nmax });
                let passed = rep.passed;
                out.emit(
                    "conjecture",
                    params,
                    serde_json::to_value(&rep).unwrap(),
                    report_text(&rep),
                );
                return Ok(if passed { 0 } else { 1 });
            }
            ConjectureCmd::OddPell { k, nmax, horizon } => {
                let rep = if k % 2 == 0 {
                    higher::odd_window_constraints(k, nmax, horizon)?
                } else {
                    higher::gen_pell_odd_window(k, nmax, horizon)?
                };
                let params = json!({ "k": k, "nmax": nmax, "horizon": horizon });
                let healthy = rep.early_terms_ok != Some(false)
                    && rep.mod2_ok != Some(false)
                    && rep.constraint_violations.is_empty();
                let text = format!(
                    "k={k}: {} odd windows scanned, {} relations found (verified up to horizon {horizon})",
                    rep.windows.len(),
                    rep.relations_found.len()
                );
                out.emit(
                    "conjecture",
                    params,
                    serde_json::to_value(&rep).unwrap(),
                    text,
                );
                return Ok(if healthy { 0 } else { 1 });
            }
            ConjectureCmd::GenfibGrowth { k, rmax } => {
                let rep = higher::gen_fib_checks(k, rmax)?;
                let params = json!({ "k": k, "rmax": rmax });
                let passed = rep.passed;
                out.emit(
                    "conjecture",
                    params,
                    serde_json::to_value(&rep).unwrap(),
                    report_text(&rep),
                );
                return Ok(if passed { 0 } else { 1 });
            }
            ConjectureCmd::GenfibOdd { k, nmax, horizon } => {
                let scan = higher::gen_fib_odd_window_scan(k, nmax, horizon)?;
                let params = json!({ "k": k, "nmax": nmax, "horizon": horizon });
                let healthy = scan.violations.is_empty();
                let text = format!(
                    "k={k}: {} violations, {} small-window findings (verified up to horizon {horizon})",
                    scan.violations.len(),
                    scan.small_window_findings.len()
                );
                out.emit(
                    "conjecture",
                    params,
                    serde_json::to_value(&scan).unwrap(),
                    text,
                );
                return Ok(if healthy { 0 } else { 1 });
            }
        },
        Cmd::Accept => {
            let outcomes = winsum::acceptance::run_all();
            let all_passed = outcomes.iter().all(|o| o.passed);
            match out.format {
                Format::Json => {
                    let params = json!({});
                    out.emit(
                        "accept",
                        params,
                        serde_json::to_value(&outcomes).unwrap(),
                        String::new(),
                    );
                }
                _ => {
                    let lines: Vec<String> = outcomes
                        .iter()
                        .map(|o| {
                            format!(
                                "criterion {:02} [{}] {}: {}",
                                o.id,
                                if o.passed { "PASS" } else { "FAIL" },
                                o.label,
                                o.detail
                            )
                        })
                        .collect();
                    out.emit_lines(&lines);
                }
            }
            return Ok(if all_passed { 0 } else { 1 });
        }
    }
    Ok(0)
}

fn parse_range(text: &str) -> Result<std::ops::RangeInclusive<i64>, Error> {
    let (lo, hi) = text
        .split_once("..")
        .ok_or_else(|| Error::InvalidRange(format!("offset range `{text}` is not lo..hi")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|_| Error::InvalidRange(format!("bad offset bound `{lo}`")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|_| Error::InvalidRange(format!("bad offset bound `{hi}`")))?;
    Ok(lo..=hi)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
