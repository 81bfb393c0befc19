use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use cremona_core::birmap::{self, PlaneRationalMap};
use cremona_core::bounds::{minkowski_report, pgl_bound, torus_bound, BoundReport};
use cremona_core::oracle::{cremona_has_order, order7_conjugacy_certificate, Witness};
use cremona_core::selftest;
use cremona_core::toric::{enumerate_descent_cases, hexagon_fan, minimal_order_action, quadrangle_fan, Fan2D};
use cremona_core::weyl::{
    automorph_group, geiser_pairing, order7_invariants, weyl_group_order, weyl_orbit, BinaryFormGram, Order7Detail,
    PicVector,
};
use cremona_core::{cyclotomic_invariants, Error, FieldDescriptor};

#[derive(Parser)]
#[command(name = "cremona", version, about = "Prime orders in the plane Cremona group, computed exactly")]
struct Cli {
    /// Emit one JSON object {command, inputs, result, citations}.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldEll {
    /// Q, F<q> or Q(zeta<n>).
    #[arg(long)]
    field: String,
    #[arg(long)]
    ell: u64,
}

#[derive(Subcommand)]
enum Command {
    /// t and m for the ell-th cyclotomic extension.
    Invariants(FieldEll),
    #[command(subcommand)]
    Bounds(BoundsCommand),
    /// Does Cr2(k) contain an element of order ell?
    Oracle(FieldEll),
    #[command(subcommand)]
    Dp6(Dp6Command),
    #[command(subcommand)]
    Weyl(WeylCommand),
    #[command(subcommand)]
    Birmap(BirmapCommand),
    /// Transitivity certificate for elements of order 7.
    Conjugacy7 {
        #[arg(long)]
        field: String,
    },
    /// Run the acceptance checks.
    Selftest,
}

#[derive(Subcommand)]
enum BoundsCommand {
    Minkowski {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        ell: u64,
    },
    /// Bound for PGL_{n+1}(k).
    Pgl {
        #[arg(long)]
        n: u64,
        #[command(flatten)]
        fe: FieldEll,
    },
    Torus {
        #[arg(long)]
        dim: u64,
        #[command(flatten)]
        fe: FieldEll,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FanChoice {
    Hexagon,
    Quadrangle,
}

impl FanChoice {
    fn fan(self) -> Fan2D {
        match self {
            FanChoice::Hexagon => hexagon_fan(),
            FanChoice::Quadrangle => quadrangle_fan(),
        }
    }
}

#[derive(Subcommand)]
enum Dp6Command {
    /// Descent cases with their Picard ranks.
    Cases {
        #[arg(long, value_enum, default_value = "hexagon")]
        fan: FanChoice,
    },
    /// Which descent carries a minimal automorphism of order ell.
    Minimal {
        #[command(flatten)]
        fe: FieldEll,
        #[arg(long, value_enum, default_value = "hexagon")]
        fan: FanChoice,
    },
}

#[derive(Subcommand)]
enum WeylCommand {
    /// Orbit of e1 + ... + e_count in the Picard lattice of the blow-up of r points.
    Orbit {
        #[arg(long, default_value_t = 7)]
        r: usize,
        #[arg(long)]
        count: Option<usize>,
    },
    /// Geiser pairing of disjoint seven-tuples of (-1)-classes.
    Pairs,
    /// Invariants of an order-7 element (r = 7 or 8).
    Invariants {
        #[arg(long, default_value_t = 8)]
        r: usize,
    },
    /// Automorphs of the binary form with Gram [[a, b], [b, c]].
    Automorphs {
        #[arg(long, default_value = "-4,1,-2", allow_hyphen_values = true)]
        form: String,
    },
}

#[derive(Subcommand)]
enum BirmapCommand {
    /// Least k with f^k projectively the identity.
    Order {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 12)]
        max_k: u32,
    },
}

struct Output {
    command: &'static str,
    inputs: Value,
    result: Value,
    citations: Vec<String>,
    plain: String,
}

fn to_value<T: Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("reports serialize")
}

fn parse_field(s: &str) -> Result<FieldDescriptor, Error> {
    s.parse()
}

/// Right-aligned keys, one row per line.
fn kv_table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:>width$}: {v}\n")).collect()
}

/// Column table with a header row.
fn table(header: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: Vec<String>| {
        let padded: Vec<String> = cells.iter().zip(&widths).map(|(c, w)| format!("{c:<w$}")).collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.iter().map(|h| h.to_string()).collect());
    for row in rows {
        out += &line(row.clone());
    }
    out
}

fn bound_output(command: &'static str, report: BoundReport) -> Output {
    let mut rows = vec![("bound", report.bound.to_string()), ("dimension", report.dimension.to_string())];
    if let Some(f) = report.field {
        rows.push(("field", f.to_string()));
    }
    rows.push(("ell", report.ell.to_string()));
    if let Some(c) = &report.certificate {
        rows.push(("certificate", c.clone()));
    }
    Output {
        command,
        inputs: json!({ "dimension": report.dimension, "field": report.field, "ell": report.ell }),
        result: to_value(&report),
        citations: Vec::new(),
        plain: kv_table(&rows),
    }
}

fn run(cli: &Cli) -> Result<(Output, bool), Error> {
    let out = match &cli.command {
        Command::Invariants(fe) => {
            let field = parse_field(&fe.field)?;
            let inv = cyclotomic_invariants(&field, fe.ell)?;
            Output {
                command: "invariants",
                inputs: json!({ "field": field, "ell": fe.ell }),
                result: to_value(&inv),
                citations: Vec::new(),
                plain: kv_table(&[("t", inv.t.to_string()), ("m", inv.m.to_string())]),
            }
        }
        Command::Bounds(b) => match b {
            BoundsCommand::Minkowski { n, ell } => bound_output("bounds minkowski", minkowski_report(*n, *ell)?),
            BoundsCommand::Pgl { n, fe } => {
                bound_output("bounds pgl", pgl_bound(*n, &parse_field(&fe.field)?, fe.ell)?)
            }
            BoundsCommand::Torus { dim, fe } => {
                bound_output("bounds torus", torus_bound(*dim, &parse_field(&fe.field)?, fe.ell)?)
            }
        },
        Command::Oracle(fe) => {
            let field = parse_field(&fe.field)?;
            let report = cremona_has_order(&field, fe.ell)?;
            let mut rows = vec![
                ("field", field.to_string()),
                ("ell", fe.ell.to_string()),
                ("exists", report.exists.to_string()),
                ("mechanism", report.mechanism.to_string()),
            ];
            if let Some(inv) = report.invariants {
                rows.push(("t", inv.t.to_string()));
                rows.push(("m", inv.m.to_string()));
            }
            if !report.also.is_empty() {
                let also: Vec<String> = report.also.iter().map(ToString::to_string).collect();
                rows.push(("also", also.join(", ")));
            }
            for w in &report.witnesses {
                let (key, text) = match w {
                    Witness::ProjectiveMatrix { matrix, order } => ("witness", format!("{matrix} of order {order}")),
                    Witness::CremonaMap { map, order, .. } => ("witness", format!("{map} of order {order}")),
                    Witness::NormQuotientTorus { torus } => {
                        ("torus", format!("{}, Psi_t(c) prime to ell: {}", torus.torus.label, torus.witness.passes))
                    }
                    Witness::MinimalAction { fan, verdict } => ("minimal action", format!("{fan}: {}", verdict.reason)),
                };
                rows.push((key, text));
            }
            for n in &report.notes {
                rows.push(("note", n.clone()));
            }
            for c in &report.citations {
                rows.push(("cites", c.clone()));
            }
            Output {
                command: "oracle",
                inputs: json!({ "field": field, "ell": fe.ell }),
                citations: report.citations.clone(),
                result: to_value(&report),
                plain: kv_table(&rows),
            }
        }
        Command::Dp6(Dp6Command::Cases { fan }) => {
            let cases = enumerate_descent_cases(&fan.fan());
            let rows: Vec<Vec<String>> = cases
                .iter()
                .map(|c| {
                    vec![
                        c.label.clone(),
                        c.structure.clone(),
                        c.order().to_string(),
                        c.cyclic.to_string(),
                        c.ray_orbits.to_string(),
                        c.picard_rank.to_string(),
                        c.anisotropic.to_string(),
                    ]
                })
                .collect();
            let header = ["case", "group", "order", "cyclic", "ray orbits", "Picard rank", "anisotropic"];
            Output {
                command: "dp6 cases",
                inputs: json!({ "fan": fan_name(*fan) }),
                result: to_value(&cases),
                citations: Vec::new(),
                plain: table(&header, &rows),
            }
        }
        Command::Dp6(Dp6Command::Minimal { fe, fan }) => {
            let field = parse_field(&fe.field)?;
            let v = minimal_order_action(&fan.fan(), &field, fe.ell)?;
            let mut rows = vec![
                ("realizable", v.realizable.to_string()),
                ("t", v.t.to_string()),
                ("case", v.required_case.clone().unwrap_or_else(|| "-".into())),
                ("reason", v.reason.clone()),
            ];
            for r in &v.rejected {
                rows.push(("rejected", format!("{}: {}", r.label, r.reason)));
            }
            Output {
                command: "dp6 minimal",
                inputs: json!({ "field": field, "ell": fe.ell, "fan": fan_name(*fan) }),
                result: to_value(&v),
                citations: Vec::new(),
                plain: kv_table(&rows),
            }
        }
        Command::Weyl(w) => weyl(w)?,
        Command::Birmap(BirmapCommand::Order { map, max_k }) => {
            let f: PlaneRationalMap = map.parse()?;
            let order = birmap::projective_order(&f, *max_k)?;
            let shown = order.map_or_else(|| format!("exceeds {max_k}"), |k| k.to_string());
            Output {
                command: "birmap order",
                inputs: json!({ "map": map, "max_k": max_k }),
                result: json!({ "map": f.to_string(), "degree": f.degree(), "order": order }),
                citations: Vec::new(),
                plain: kv_table(&[("map", f.to_string()), ("degree", f.degree().to_string()), ("order", shown)]),
            }
        }
        Command::Conjugacy7 { field } => {
            let field = parse_field(field)?;
            let cert = order7_conjugacy_certificate(&field)?;
            let opt = |x: Option<u64>| x.map_or_else(|| "-".to_string(), |v| v.to_string());
            let mut rows = vec![
                ("hypotheses ok", cert.hypotheses_ok.to_string()),
                ("hypotheses", cert.hypotheses.clone()),
                ("fixed 7-torsion", opt(cert.fixed_torsion_order)),
                ("multiplier", opt(cert.multiplier)),
                ("multiplier order", opt(cert.multiplier_order)),
                ("transitive", cert.transitive.to_string()),
            ];
            for a in &cert.assumptions {
                rows.push(("assumes", a.clone()));
            }
            Output {
                command: "conjugacy7",
                inputs: json!({ "field": field }),
                citations: cert.citations.clone(),
                result: to_value(&cert),
                plain: kv_table(&rows),
            }
        }
        Command::Selftest => {
            let outcomes = selftest::run_all();
            let passed = outcomes.iter().all(|o| o.passed);
            let plain = outcomes
                .iter()
                .map(|o| {
                    let mark = if o.passed { "PASS" } else { "FAIL" };
                    format!("{mark} {:>2} {}: {}\n", o.id, o.title, o.detail)
                })
                .collect();
            let out = Output {
                command: "selftest",
                inputs: json!({}),
                result: to_value(&outcomes),
                citations: Vec::new(),
                plain,
            };
            return Ok((out, passed));
        }
    };
    Ok((out, true))
}

fn fan_name(f: FanChoice) -> &'static str {
    match f {
        FanChoice::Hexagon => "hexagon",
        FanChoice::Quadrangle => "quadrangle",
    }
}

fn parse_form(s: &str) -> Result<BinaryFormGram, Error> {
    let parts: Vec<i64> = s
        .split(',')
        .map(|p| p.trim().parse::<i64>())
        .collect::<Result<_, _>>()
        .map_err(|e| Error::Parse(format!("form `{s}`: {e}")))?;
    match parts[..] {
        [a, b, c] => Ok(BinaryFormGram::new(a, b, c)),
        _ => Err(Error::Parse(format!("form `{s}` needs three integers a,b,c"))),
    }
}

fn weyl(cmd: &WeylCommand) -> Result<Output, Error> {
    Ok(match cmd {
        WeylCommand::Orbit { r, count } => {
            let count = count.unwrap_or(*r);
            if count > *r || !(2..=8).contains(r) {
                return Err(Error::InvalidArgument(format!(
                    "need 2 <= r <= 8 and count <= r (r = {r}, count = {count})"
                )));
            }
            let start = PicVector::exceptional_sum(count, *r);
            let orbit = weyl_orbit(&start)?;
            let order = weyl_group_order(*r)?;
            let index = (order % orbit.len() as u64 == 0).then(|| order / orbit.len() as u64);
            Output {
                command: "weyl orbit",
                inputs: json!({ "r": r, "count": count }),
                result: json!({
                    "start": start.to_string(),
                    "orbit_size": orbit.len(),
                    "group_order": order,
                    "stabilizer_order": index,
                }),
                citations: Vec::new(),
                plain: kv_table(&[
                    ("start", start.to_string()),
                    ("orbit size", orbit.len().to_string()),
                    ("|W|", order.to_string()),
                    ("stabilizer", index.map_or_else(|| "-".into(), |i| i.to_string())),
                ]),
            }
        }
        WeylCommand::Pairs => {
            let p = geiser_pairing();
            Output {
                command: "weyl pairs",
                inputs: json!({}),
                result: to_value(&p),
                citations: Vec::new(),
                plain: kv_table(&[
                    ("seven-tuples", p.tuples.to_string()),
                    ("pairs", p.pairs.to_string()),
                    ("fixed", p.fixed_tuples.to_string()),
                    ("pairs mod 7", p.pairs_mod_7.to_string()),
                ]),
            }
        }
        WeylCommand::Invariants { r } => {
            let inv = order7_invariants(*r)?;
            let basis: Vec<String> = inv.basis.iter().map(ToString::to_string).collect();
            let mut rows = vec![
                ("rank", inv.rank.to_string()),
                ("basis", basis.join(", ")),
                ("Gram", format!("{:?}", inv.gram)),
                ("det", inv.gram_det.to_string()),
                ("negative definite", inv.negative_definite.to_string()),
            ];
            match &inv.detail {
                Order7Detail::DegreeTwo { two_e_plus_7k, multiple } => {
                    rows.push(("2e + 7K", format!("{two_e_plus_7k} = {multiple} * basis[0]")));
                }
                Order7Detail::DegreeOne { v, w, vw_gram, equivalent_to_reference_up_to_sign, .. } => {
                    rows.push(("v", v.to_string()));
                    rows.push(("w", w.to_string()));
                    rows.push(("(v, w) Gram", format!("{vw_gram:?}")));
                    rows.push(("matches [[-4,1],[1,-2]] up to sign", equivalent_to_reference_up_to_sign.to_string()));
                }
            }
            Output {
                command: "weyl invariants",
                inputs: json!({ "r": r }),
                result: to_value(&inv),
                citations: Vec::new(),
                plain: kv_table(&rows),
            }
        }
        WeylCommand::Automorphs { form } => {
            let gram = parse_form(form)?;
            let a = automorph_group(&gram)?;
            let show = |v: &[cremona_core::matrix::IntMatrix]| {
                v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
            };
            Output {
                command: "weyl automorphs",
                inputs: json!({ "form": [gram.a, gram.b, gram.c] }),
                result: to_value(&a),
                citations: Vec::new(),
                plain: kv_table(&[
                    ("full order", a.full.len().to_string()),
                    ("proper", show(&a.proper)),
                    ("improper", show(&a.improper)),
                ]),
            }
        }
    })
}

/// Writes to stdout; a closed pipe is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(text.as_bytes()).and_then(|_| out.flush());
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok((out, passed)) => {
            if cli.json {
                let doc = json!({
                    "command": out.command,
                    "inputs": out.inputs,
                    "result": out.result,
                    "citations": out.citations,
                });
                emit(&format!("{doc}\n"));
            } else {
                emit(&out.plain);
            }
            ExitCode::from(if passed { 0 } else { 1 })
        }
        Err(e) => {
            if cli.json {
                emit(&format!("{}\n", json!({ "error": e.to_string(), "exit_code": e.exit_code() })));
            }
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
