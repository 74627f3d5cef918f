use std::io::{self, Write};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use kummer_core::closure::{self, is_minimal_in_fiber, semigroup_box};
use kummer_core::oracle::{pure_gaps_box, MAX_SCAN_POINTS};
use kummer_core::sweep::{self, SweepConfig, SweepReport};
use kummer_core::{
    gamma, gaps_at, genus, verify_witness, CurveParams, Error, GammaSet, PlaceId, PlaceTuple, PoleVector,
};

const SCHEMA_VERSION: u32 = 1;

#[derive(Parser)]
#[command(
    name = "kummer",
    version,
    about = "Weierstrass semigroups of Kummer extensions y^m = f(x)^lambda"
)]
struct Cli {
    /// Output format.
    #[arg(
        long,
        value_enum,
        global = true,
        env = "KUMMER_FORMAT",
        default_value = "table"
    )]
    format: Format,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Table,
    Json,
    Csv,
}

#[derive(Args)]
struct Curve {
    /// Degree of f.
    #[arg(short = 'r')]
    r: i64,
    /// Degree of the extension.
    #[arg(short = 'm')]
    m: i64,
    /// Exponent of f.
    #[arg(short = 'l', long = "lambda", default_value_t = 1)]
    lambda: i64,
    /// Characteristic of the constant field, if positive.
    #[arg(long = "char")]
    characteristic: Option<i64>,
}

impl Curve {
    fn params(&self) -> Result<CurveParams, Error> {
        CurveParams::new(self.r, self.m, self.lambda, self.characteristic)
    }
}

#[derive(Args)]
struct Places {
    /// Place tuple, e.g. `1,2` or `inf,1,2`.
    #[arg(long)]
    places: String,
}

#[derive(Subcommand)]
enum Command {
    /// Genus of the curve.
    Genus {
        #[command(flatten)]
        curve: Curve,
    },
    /// Gap sequence at one place.
    Gaps {
        #[command(flatten)]
        curve: Curve,
        /// `inf` or a finite place index.
        #[arg(long, default_value = "inf")]
        place: String,
    },
    /// Minimal generating set of the semigroup at a tuple of places.
    Gamma {
        #[command(flatten)]
        curve: Curve,
        #[command(flatten)]
        places: Places,
    },
    /// All semigroup members in the box [0, bound]^l.
    Semigroup {
        #[command(flatten)]
        curve: Curve,
        #[command(flatten)]
        places: Places,
        #[arg(long)]
        bound: u64,
    },
    /// Whether a pole vector lies in the semigroup.
    Member {
        #[command(flatten)]
        curve: Curve,
        #[command(flatten)]
        places: Places,
        /// Pole vector, e.g. `1,21`.
        #[arg(long)]
        vector: String,
    },
    /// Whether a member is minimal in its fiber at a coordinate.
    Minimal {
        #[command(flatten)]
        curve: Curve,
        #[command(flatten)]
        places: Places,
        #[arg(long)]
        vector: String,
        /// Zero-based coordinate fixing the fiber.
        #[arg(long, default_value_t = 0)]
        coordinate: usize,
    },
    /// Pure gaps found by an exhaustive dimension scan.
    PureGaps {
        #[command(flatten)]
        curve: Curve,
        #[command(flatten)]
        places: Places,
    },
    /// Explicit function realizing a generating-set element.
    Witness {
        #[command(flatten)]
        curve: Curve,
        #[command(flatten)]
        places: Places,
        #[arg(long)]
        vector: String,
    },
    /// Compare every closed form against the brute-force oracle.
    Verify {
        #[arg(long, default_value_t = 7)]
        max_r: u32,
        #[arg(long, default_value_t = 7)]
        max_m: u32,
        #[arg(long, value_delimiter = ',', default_value = "1")]
        lambdas: Vec<u32>,
        /// Largest tuple length, counting the infinite place.
        #[arg(long, default_value_t = 3)]
        max_l: usize,
        /// Worker threads (0 = all cores).
        #[arg(long, default_value_t = 0)]
        jobs: usize,
        /// Corrupt the closed form for one case: `r,m,lambda,l`.
        #[arg(long, hide = true, value_delimiter = ',')]
        inject_mismatch: Option<Vec<u32>>,
    },
}

/// A computed result ready to render in any format.
struct Report {
    command: &'static str,
    params: Option<CurveParams>,
    tuple: Option<String>,
    fields: Map<String, Value>,
    columns: Vec<String>,
    rows: Vec<Vec<String>>,
    summary: Option<String>,
    success: bool,
}

impl Report {
    fn new(command: &'static str, params: Option<CurveParams>, tuple: Option<&PlaceTuple>) -> Self {
        Report {
            command,
            params,
            tuple: tuple.map(|t| t.to_string()),
            fields: Map::new(),
            columns: Vec::new(),
            rows: Vec::new(),
            summary: None,
            success: true,
        }
    }

    fn field(mut self, key: &str, value: Value) -> Self {
        self.fields.insert(key.to_string(), value);
        self
    }

    fn table(mut self, columns: &[&str], rows: Vec<Vec<String>>) -> Self {
        self.columns = columns.iter().map(|c| c.to_string()).collect();
        self.rows = rows;
        self
    }

    fn vectors(self, tuple: &PlaceTuple, vectors: &[PoleVector]) -> Self {
        let columns = place_columns(tuple);
        let columns: Vec<&str> = columns.iter().map(String::as_str).collect();
        let rows = vectors
            .iter()
            .map(|v| v.coords().iter().map(u64::to_string).collect())
            .collect();
        self.table(&columns, rows)
    }

    fn render(&self, format: Format) -> String {
        match format {
            Format::Json => self.render_json(),
            Format::Csv => self.render_csv(),
            Format::Table => self.render_table(),
        }
    }

    fn render_json(&self) -> String {
        let mut doc = Map::new();
        doc.insert("schema_version".into(), json!(SCHEMA_VERSION));
        doc.insert("command".into(), json!(self.command));
        doc.insert("tool_version".into(), json!(env!("CARGO_PKG_VERSION")));
        if let Some(params) = &self.params {
            doc.insert("params".into(), json!(params));
        }
        if let Some(tuple) = &self.tuple {
            doc.insert("tuple".into(), json!(tuple));
        }
        doc.extend(self.fields.clone());
        let mut out = serde_json::to_string_pretty(&Value::Object(doc)).expect("json rendering");
        out.push('\n');
        out
    }

    fn render_csv(&self) -> String {
        let mut out = self.columns.join(",");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|c| csv_cell(c)).collect();
            out.push_str(&cells.join(","));
            out.push('\n');
        }
        out
    }

    fn render_table(&self) -> String {
        if self.columns.len() == 1 {
            let values: Vec<&str> = self.rows.iter().map(|r| r[0].as_str()).collect();
            return if values.is_empty() {
                "(empty)\n".to_string()
            } else {
                format!("{}\n", values.join(" "))
            };
        }
        if self.rows.is_empty() {
            return "(empty)\n".to_string();
        }
        let mut widths: Vec<usize> = self.columns.iter().map(String::len).collect();
        for row in &self.rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let line = |cells: &[String]| {
            let padded: Vec<String> = cells
                .iter()
                .zip(&widths)
                .map(|(c, &w)| format!("{c:>w$}"))
                .collect();
            format!("{}\n", padded.join("  ").trim_end())
        };
        let mut out = line(&self.columns);
        for row in &self.rows {
            out.push_str(&line(row));
        }
        out
    }
}

fn csv_cell(cell: &str) -> String {
    if cell.contains([',', '"', '\n']) {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}

fn place_columns(tuple: &PlaceTuple) -> Vec<String> {
    tuple
        .places()
        .into_iter()
        .map(|p| match p {
            PlaceId::Infinity => "inf".to_string(),
            PlaceId::Finite(i) => format!("p{i}"),
        })
        .collect()
}

fn vectors_json(vectors: &[PoleVector]) -> Value {
    json!(vectors.iter().map(PoleVector::coords).collect::<Vec<_>>())
}

fn parse_place(params: &CurveParams, spec: &str) -> Result<PlaceId, Error> {
    let tuple = PlaceTuple::parse(params, spec)?;
    if tuple.len() != 1 {
        return Err(Error::InvalidTupleLength {
            len: tuple.len(),
            expected: "a single place".into(),
        });
    }
    Ok(tuple.place(0))
}

fn parse_vector(tuple: &PlaceTuple, spec: &str) -> Result<PoleVector, Error> {
    let v = PoleVector::parse(spec)?;
    tuple.check_vector(&v)?;
    Ok(v)
}

fn run(command: Command) -> Result<Report, Error> {
    match command {
        Command::Genus { curve } => {
            let params = curve.params()?;
            let g = genus(&params);
            Ok(Report::new("genus", Some(params), None)
                .field("genus", json!(g))
                .table(&["genus"], vec![vec![g.to_string()]]))
        }
        Command::Gaps { curve, place } => {
            let params = curve.params()?;
            let place = parse_place(&params, &place)?;
            let gaps = gaps_at(&params, place);
            let rows = gaps.gaps.iter().map(|n| vec![n.to_string()]).collect();
            Ok(Report::new("gaps", Some(params), None)
                .field("place", json!(place.to_string()))
                .field("count", json!(gaps.len()))
                .field("gaps", json!(gaps.gaps))
                .table(&["gap"], rows))
        }
        Command::Gamma { curve, places } => {
            let params = curve.params()?;
            let tuple = PlaceTuple::parse(&params, &places.places)?;
            let set = gamma(&params, &tuple)?;
            Ok(Report::new("gamma", Some(params), Some(&tuple))
                .field("shape", json!(set.shape.to_string()))
                .field("truncated_at", json!(set.truncated_at))
                .field("count", json!(set.len()))
                .field("elements", vectors_json(&set.elements))
                .vectors(&tuple, &set.elements))
        }
        Command::Semigroup { curve, places, bound } => {
            let params = curve.params()?;
            let tuple = PlaceTuple::parse(&params, &places.places)?;
            let size = bound
                .checked_add(1)
                .and_then(|side| side.checked_pow(tuple.len() as u32))
                .filter(|&n| n <= MAX_SCAN_POINTS as u64);
            if size.is_none() {
                return Err(Error::Overflow("semigroup box size"));
            }
            let sbox = semigroup_box(&params, &tuple, bound)?;
            Ok(Report::new("semigroup", Some(params), Some(&tuple))
                .field("bound", json!(bound))
                .field("count", json!(sbox.members.len()))
                .field("members", vectors_json(&sbox.members))
                .vectors(&tuple, &sbox.members))
        }
        Command::Member {
            curve,
            places,
            vector,
        } => {
            let params = curve.params()?;
            let tuple = PlaceTuple::parse(&params, &places.places)?;
            let v = parse_vector(&tuple, &vector)?;
            let member = closure::contains(&params, &tuple, &v)?;
            Ok(Report::new("member", Some(params), Some(&tuple))
                .field("vector", json!(v.coords()))
                .field("member", json!(member))
                .table(&["member"], vec![vec![member.to_string()]]))
        }
        Command::Minimal {
            curve,
            places,
            vector,
            coordinate,
        } => {
            let params = curve.params()?;
            let tuple = PlaceTuple::parse(&params, &places.places)?;
            let v = parse_vector(&tuple, &vector)?;
            let minimal = is_minimal_in_fiber(&params, &tuple, &v, coordinate)?;
            Ok(Report::new("minimal", Some(params), Some(&tuple))
                .field("vector", json!(v.coords()))
                .field("coordinate", json!(coordinate))
                .field("minimal", json!(minimal))
                .table(&["minimal"], vec![vec![minimal.to_string()]]))
        }
        Command::PureGaps { curve, places } => {
            let params = curve.params()?;
            let tuple = PlaceTuple::parse(&params, &places.places)?;
            let pure = pure_gaps_box(&params, &tuple)?;
            Ok(Report::new("pure-gaps", Some(params), Some(&tuple))
                .field("bound", json!(pure.bound))
                .field("count", json!(pure.elements.len()))
                .field("pure_gaps", vectors_json(&pure.elements))
                .vectors(&tuple, &pure.elements))
        }
        Command::Witness {
            curve,
            places,
            vector,
        } => {
            let params = curve.params()?;
            let tuple = PlaceTuple::parse(&params, &places.places)?;
            let v = parse_vector(&tuple, &vector)?;
            let (mono, divisor) = verify_witness(&params, &tuple, &v)?;
            let mut rows = vec![vec!["monomial".into(), "z".into(), mono.z_exp.to_string()]];
            for (i, e) in mono.linear_exps.iter().enumerate() {
                rows.push(vec!["monomial".into(), format!("x-a{}", i + 1), e.to_string()]);
            }
            for (place, c) in divisor.iter() {
                rows.push(vec!["divisor".into(), place.to_string(), c.to_string()]);
            }
            Ok(Report::new("witness", Some(params), Some(&tuple))
                .field("vector", json!(v.coords()))
                .field(
                    "monomial",
                    json!({
                        "z_exp": mono.z_exp,
                        "linear_exps": mono.linear_exps,
                        "text": mono.to_string(),
                    }),
                )
                .field(
                    "divisor",
                    json!({
                        "infinity": divisor.coeff_infinity,
                        "finite": divisor.coeff_finite,
                        "text": divisor.to_string(),
                    }),
                )
                .table(&["part", "factor", "value"], rows))
        }
        Command::Verify {
            max_r,
            max_m,
            lambdas,
            max_l,
            jobs,
            inject_mismatch,
        } => {
            if max_r < 3 || max_m < 2 || lambdas.is_empty() || lambdas.contains(&0) || max_l < 1 {
                return Err(Error::InvalidTuple(
                    "verify needs max-r >= 3, max-m >= 2, max-l >= 1 and positive lambdas".into(),
                ));
            }
            let config = SweepConfig {
                max_r,
                max_m,
                lambdas,
                max_len: max_l,
                jobs,
            };
            let report = match inject_mismatch {
                None => sweep::run(&config)?,
                Some(target) if target.len() != 4 => {
                    return Err(Error::InvalidTuple(
                        "--inject-mismatch expects r,m,lambda,l".into(),
                    ));
                }
                Some(target) => {
                    let faulty = move |params: &CurveParams, tuple: &PlaceTuple| {
                        let mut set = gamma(params, tuple)?;
                        let key = [
                            params.r(),
                            params.m(),
                            params.lambda(),
                            tuple.shape().finite_len as u32,
                        ];
                        if key[..] == target[..] && !tuple.includes_infinity() {
                            corrupt(&mut set);
                        }
                        Ok(set)
                    };
                    sweep::run_with(&config, &faulty)?
                }
            };
            Ok(verify_report(&report))
        }
    }
}

fn corrupt(set: &mut GammaSet) {
    if set.elements.pop().is_none() {
        set.elements.push(PoleVector::new(vec![0; set.shape.len()]));
    }
}

fn verify_report(report: &SweepReport) -> Report {
    let rows = report
        .rows
        .iter()
        .map(|row| {
            vec![
                if row.ok { "PASS" } else { "FAIL" }.to_string(),
                row.r.to_string(),
                row.m.to_string(),
                row.lambda.to_string(),
                row.shape.clone(),
                row.l.to_string(),
                row.expected.to_string(),
                row.got.to_string(),
                row.detail.clone().unwrap_or_default(),
            ]
        })
        .collect();
    let failures = report.mismatches().count();
    let mut out = Report::new("verify", None, None)
        .field("cases", json!(report.cases))
        .field("checks", json!(report.rows.len()))
        .field("failures", json!(failures))
        .field("rows", json!(report.rows))
        .table(
            &[
                "status", "r", "m", "lambda", "shape", "l", "oracle", "formula", "detail",
            ],
            rows,
        );
    out.summary = Some(format!(
        "{} cases, {} checks, {} failures",
        report.cases,
        report.rows.len(),
        failures
    ));
    out.success = failures == 0;
    out
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(report) => {
            let text = report.render(cli.format);
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            if let Some(summary) = &report.summary {
                eprintln!("{summary}");
            }
            if report.success {
                ExitCode::SUCCESS
            } else {
                eprintln!("error: verification found mismatches");
                ExitCode::FAILURE
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::FAILURE
        }
    }
}
