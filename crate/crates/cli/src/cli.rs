//! Argument parsing and command implementations.

use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use convcode::behavior::{arma_to_kernel, splice, Axis, Behavior, Window};
use convcode::code::{ConvCode, Framework};
use convcode::crc::{crc_check, crc_encode, crc_miss_rate, Corruption, CrcMode, CrcSpec};
use convcode::distance::{behavior_free_distance, free_distance, free_distance_oracle, DistanceResult};
use convcode::duality::{annihilator_of_behavior, annihilator_of_code, behavior_dual, module_dual};
use convcode::field::Field;
use convcode::matrix::{AnyMatrix, ConstMatrix, PolyMatrix};
use convcode::poly::Poly;
use convcode::realization::{behavior_pencil, code_pencil, is_minimal, realize_code, Realization};
use serde_json::{json, Value};
use thiserror::Error;

use crate::pmat::{parse_pmat, poly_to_pmat};

#[derive(Debug, Error)]
pub enum CliError {
    /// Bad flag combinations; exit status 2.
    #[error("{0}")]
    Usage(String),
    /// Anything the input itself gets wrong; exit status 1.
    #[error(transparent)]
    Domain(#[from] anyhow::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Domain(_) => 1,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

fn domain(e: impl std::fmt::Display) -> CliError {
    CliError::Domain(anyhow::anyhow!("{e}"))
}

#[derive(Debug, Parser)]
#[command(name = "convcode", version, about = "Convolutional codes and behaviors over finite fields")]
pub struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
    /// Write the report to this file instead of stdout.
    #[arg(long, short, global = true, value_name = "FILE")]
    pub output: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

fn parse_framework(s: &str) -> std::result::Result<Framework, String> {
    Framework::parse(s).ok_or_else(|| format!("unknown framework `{s}` (expected a, aprime, b, d or dprime)"))
}

fn parse_axis(s: &str) -> std::result::Result<Axis, String> {
    Axis::parse(s).ok_or_else(|| format!("unknown axis `{s}` (expected z or zplus)"))
}

fn parse_mode(s: &str) -> std::result::Result<CrcMode, String> {
    CrcMode::parse(s).ok_or_else(|| format!("unknown mode `{s}` (expected multiplicative or systematic)"))
}

/// A generator file read as a code, or a kernel file read as a behavior
/// when `--axis` is given.
#[derive(Debug, Args)]
pub struct Target {
    /// Matrix file (`-` for stdin).
    pub file: PathBuf,
    /// Framework of the code: a, aprime, b, d or dprime.
    #[arg(long, default_value = "a", value_parser = parse_framework)]
    pub framework: Framework,
    /// Read the file as the kernel of a behavior on this time axis: z or zplus.
    #[arg(long, value_parser = parse_axis)]
    pub axis: Option<Axis>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Form {
    /// State-space matrices (A, B, C, D).
    Abcd,
    /// Code pencil (K, L, M).
    Klm,
    /// Behavior pencil (G, F, H).
    Gfh,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Indices, degree, memories and structural properties.
    Analyze(Target),
    /// Minimal basic encoder of a code.
    Reduce(Target),
    /// Parity-check matrix of an observable code.
    Parity(Target),
    /// Dual code or dual behavior.
    Dualize {
        #[command(flatten)]
        target: Target,
        /// Output the annihilator (behavior of a code, code of a behavior).
        #[arg(long)]
        annihilator: bool,
    },
    /// Move a code to another framework.
    Convert {
        #[command(flatten)]
        target: Target,
        /// Target framework.
        #[arg(long, value_parser = parse_framework)]
        to: Framework,
    },
    /// First-order realization.
    Realize {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "abcd")]
        form: Form,
    },
    /// Free distance with a minimum-weight codeword.
    Distance {
        #[command(flatten)]
        target: Target,
        /// Also run the exhaustive search over messages of degree at most this.
        #[arg(long, value_name = "DEGREE")]
        oracle_bound: Option<usize>,
    },
    /// Membership of a word in a code, or of a window in a behavior.
    Member {
        #[command(flatten)]
        target: Target,
        /// Word file: an n x 1 column.
        #[arg(long)]
        word: PathBuf,
    },
    /// Join two codewords of a module code.
    Splice {
        #[command(flatten)]
        target: Target,
        /// Message of the past codeword (k x 1).
        #[arg(long)]
        a: PathBuf,
        /// Message of the future codeword (k x 1).
        #[arg(long)]
        b: PathBuf,
        /// Last message degree taken from `a`.
        #[arg(long)]
        at: usize,
    },
    /// Cyclic redundancy checks.
    Crc {
        #[command(subcommand)]
        command: CrcCommand,
    },
    /// Eliminate the latent variable of P(σ)w = G(σ)m.
    Arma {
        /// Matrix P.
        #[arg(long)]
        p: PathBuf,
        /// Matrix G.
        #[arg(long)]
        g: PathBuf,
        #[arg(long, default_value = "z", value_parser = parse_axis)]
        axis: Axis,
    },
}

#[derive(Debug, Args)]
pub struct CrcArgs {
    /// Generator polynomial file (1 x 1).
    #[arg(long = "gen", value_name = "FILE")]
    pub generator: PathBuf,
    #[arg(long, default_value = "multiplicative", value_parser = parse_mode)]
    pub mode: CrcMode,
}

#[derive(Debug, Subcommand)]
pub enum CrcCommand {
    /// Encode a message polynomial.
    Encode {
        #[command(flatten)]
        crc: CrcArgs,
        #[arg(long)]
        message: PathBuf,
    },
    /// Check a received word.
    Check {
        #[command(flatten)]
        crc: CrcArgs,
        #[arg(long)]
        word: PathBuf,
    },
    /// Monte-Carlo rate of undetected corruptions.
    Missrate {
        #[command(flatten)]
        crc: CrcArgs,
        #[arg(long, default_value_t = 100_000)]
        trials: usize,
        /// Message length in symbols.
        #[arg(long, default_value_t = 32)]
        length: usize,
        /// Corrupt a random block of this many symbols instead of the whole word.
        #[arg(long)]
        burst: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// A finished report in both renderings.
pub struct Report {
    pub text: String,
    pub json: Value,
}

fn read_input(path: &Path) -> Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).map_err(|e| domain(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| domain(format!("{}: {e}", path.display())))
    }
}

fn load(path: &Path) -> Result<AnyMatrix> {
    let text = read_input(path)?;
    parse_pmat(&text).map_err(|e| domain(format!("{}: {e}", path.display())))
}

fn load_poly(path: &Path) -> Result<PolyMatrix> {
    match load(path)? {
        AnyMatrix::Poly(p) => Ok(p),
        _ => Err(domain(format!("{}: expected a polynomial matrix", path.display()))),
    }
}

fn load_scalar(path: &Path, field: &Field) -> Result<Poly> {
    let m = load_poly(path)?;
    if m.shape() != (1, 1) {
        return Err(domain(format!("{}: expected a 1 x 1 matrix", path.display())));
    }
    if m.field() != field {
        return Err(domain(format!("{}: field differs from the generator's", path.display())));
    }
    Ok(m[(0, 0)].clone())
}

fn load_code(t: &Target) -> Result<ConvCode> {
    ConvCode::from_generator(&load(&t.file)?, t.framework).map_err(domain)
}

fn load_behavior(t: &Target, axis: Axis) -> Result<Behavior> {
    Behavior::from_kernel(&load(&t.file)?, axis).map_err(domain)
}

fn field_name(f: &Field) -> String {
    format!("GF({})", f.order())
}

fn list(v: &[usize]) -> String {
    if v.is_empty() {
        "-".into()
    } else {
        v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
    }
}

fn table(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter().map(|(k, v)| format!("{k:<width$}  {v}\n")).collect()
}

fn poly_json(p: &Poly) -> Value {
    json!(p.coeffs())
}

/// Matrices in JSON: `{"ring", "rows", "cols", "entries"}` with entries
/// nested by row; polynomial entries are ascending coefficient lists.
pub fn matrix_json(m: &AnyMatrix) -> Value {
    let (rows, cols) = m.shape();
    let (ring, entries): (&str, Vec<Value>) = match m {
        AnyMatrix::Poly(p) => ("poly", p.entries().iter().map(poly_json).collect()),
        AnyMatrix::Laurent(l) => (
            "laurent",
            l.entries().iter().map(|e| json!({"low": e.low(), "coeffs": e.body().coeffs()})).collect(),
        ),
        AnyMatrix::Rational(r) => (
            "rational",
            r.entries().iter().map(|e| json!({"num": e.num().coeffs(), "den": e.den().coeffs()})).collect(),
        ),
    };
    let nested: Vec<Value> = (0..rows).map(|i| Value::Array(entries[i * cols..(i + 1) * cols].to_vec())).collect();
    json!({"ring": ring, "rows": rows, "cols": cols, "entries": nested})
}

fn poly_matrix_json(m: &PolyMatrix) -> Value {
    matrix_json(&AnyMatrix::Poly(m.clone()))
}

fn const_json(m: &ConstMatrix) -> Value {
    json!((0..m.rows()).map(|i| m.row(i)).collect::<Vec<_>>())
}

fn const_text(name: &str, m: &ConstMatrix) -> String {
    let mut s = format!("{name} ({} x {})\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|c| c.to_string()).collect();
        writeln!(s, "  {}", row.join(" ")).unwrap();
    }
    s
}

fn matrix_report(key: &str, m: &PolyMatrix, extra: Value) -> Report {
    let mut j = json!({ key: poly_matrix_json(m) });
    if let (Value::Object(a), Value::Object(b)) = (&mut j, extra) {
        a.extend(b);
    }
    Report { text: poly_to_pmat(m), json: j }
}

fn analyze(t: &Target) -> Result<Report> {
    if let Some(axis) = t.axis {
        let b = load_behavior(t, axis)?;
        let inv = b.invariants();
        let rate = format!("{}/{}", inv.rate.0, inv.rate.1);
        let text = table(&[
            ("axis", axis.to_string()),
            ("field", field_name(b.field())),
            ("n", b.n().to_string()),
            ("equations", b.r().to_string()),
            ("rate", rate),
            ("kronecker_indices", list(&inv.kronecker_indices)),
            ("mcmillan_degree", inv.mcmillan_degree.to_string()),
            ("lag", b.lag().to_string()),
            ("controllable", inv.controllable.to_string()),
            ("autonomous", inv.autonomous.to_string()),
        ]);
        let json = json!({
            "axis": axis.to_string(),
            "field": b.field().order(),
            "n": b.n(),
            "equations": b.r(),
            "rate": [inv.rate.0, inv.rate.1],
            "kronecker_indices": inv.kronecker_indices,
            "mcmillan_degree": inv.mcmillan_degree,
            "lag": b.lag(),
            "controllable": inv.controllable,
            "autonomous": inv.autonomous,
        });
        return Ok(Report { text, json });
    }
    let c = load_code(t)?;
    let inv = c.invariants();
    let text = table(&[
        ("framework", c.framework().to_string()),
        ("field", field_name(c.field())),
        ("n", inv.n.to_string()),
        ("k", inv.k.to_string()),
        ("rate", format!("{}/{}", inv.k, inv.n)),
        ("indices", list(&inv.forney_indices)),
        ("degree", inv.degree.to_string()),
        ("controller_memory", inv.controller_memory.to_string()),
        ("observer_memory", inv.observer_memory.map_or("-".into(), |m| m.to_string())),
        ("observable", inv.observable.to_string()),
    ]);
    let json = json!({
        "framework": c.framework().to_string(),
        "field": c.field().order(),
        "n": inv.n,
        "k": inv.k,
        "rate": [inv.k, inv.n],
        "indices": inv.forney_indices,
        "degree": inv.degree,
        "controller_memory": inv.controller_memory,
        "observer_memory": inv.observer_memory,
        "observable": inv.observable,
        "generator": poly_matrix_json(c.generator()),
    });
    Ok(Report { text, json })
}

fn code_only(t: &Target, what: &str) -> Result<ConvCode> {
    if t.axis.is_some() {
        return Err(CliError::Usage(format!("{what} takes a code, not a behavior (drop --axis)")));
    }
    load_code(t)
}

fn dualize(t: &Target, annihilator: bool) -> Result<Report> {
    if let Some(axis) = t.axis {
        let b = load_behavior(t, axis)?;
        if annihilator {
            let c = annihilator_of_behavior(&b);
            let fw = json!(c.framework().to_string());
            return Ok(matrix_report("generator", c.generator(), json!({"kind": "annihilator", "framework": fw})));
        }
        let d = behavior_dual(&b).map_err(domain)?;
        return Ok(matrix_report("kernel", d.kernel(), json!({"kind": "behavior_dual", "axis": "z"})));
    }
    let c = load_code(t)?;
    if annihilator {
        let b = annihilator_of_code(&c);
        return Ok(matrix_report("kernel", b.kernel(), json!({"kind": "annihilator", "axis": b.axis().to_string()})));
    }
    let d = module_dual(&c);
    Ok(matrix_report("generator", d.generator(), json!({"kind": "module_dual", "framework": d.framework().to_string()})))
}

fn convert(t: &Target, to: Framework) -> Result<Report> {
    let c = code_only(t, "convert")?;
    let conv = c.convert(to);
    if conv.lost_information {
        eprintln!("warning: converting from {} to {to} loses information", c.framework());
    }
    Ok(matrix_report(
        "generator",
        conv.code.generator(),
        json!({"from": c.framework().to_string(), "to": to.to_string(), "lost_information": conv.lost_information}),
    ))
}

fn realization_parts(r: &Realization) -> (String, Value) {
    let (ctrl, obs) = is_minimal(r);
    let mut text = String::new();
    for (name, m) in [("A", &r.a), ("B", &r.b), ("C", &r.c), ("D", &r.d)] {
        text.push_str(&const_text(name, m));
    }
    text.push_str(&table(&[
        ("state_dim", r.state_dim().to_string()),
        ("controllable", ctrl.to_string()),
        ("observable", obs.to_string()),
    ]));
    let json = json!({
        "a": const_json(&r.a),
        "b": const_json(&r.b),
        "c": const_json(&r.c),
        "d": const_json(&r.d),
        "state_dim": r.state_dim(),
        "controllable": ctrl,
        "observable": obs,
    });
    (text, json)
}

fn realize(t: &Target, form: Form) -> Result<Report> {
    match (form, t.axis) {
        (Form::Abcd, None) => {
            let (text, json) = realization_parts(&realize_code(&load_code(t)?));
            Ok(Report { text, json })
        }
        (Form::Klm, None) => {
            let c = load_code(t)?;
            let p = code_pencil(&c).map_err(domain)?;
            let [k_full, km_full, prime] = p.minimality();
            let (rtext, rjson) = realization_parts(&p.realization);
            let mut text = String::new();
            for (name, m) in [("K", &p.k), ("L", &p.l), ("M", &p.m)] {
                text.push_str(&const_text(name, m));
            }
            text.push_str(&table(&[
                ("input_rows", list(&p.input_rows)),
                ("k_full_column_rank", k_full.to_string()),
                ("km_full_row_rank", km_full.to_string()),
                ("pencil_left_prime", prime.to_string()),
            ]));
            text.push_str("realization of Y U^-1\n");
            text.push_str(&rtext);
            let json = json!({
                "k": const_json(&p.k),
                "l": const_json(&p.l),
                "m": const_json(&p.m),
                "input_rows": p.input_rows,
                "minimality": [k_full, km_full, prime],
                "realization": rjson,
            });
            Ok(Report { text, json })
        }
        (Form::Gfh, Some(axis)) => {
            let b = load_behavior(t, axis)?;
            let p = behavior_pencil(&b).map_err(domain)?;
            let shape = p.shape();
            let flags = p.minimality();
            let mut text = String::new();
            for (name, m) in [("G", &p.g), ("F", &p.f), ("H", &p.h)] {
                text.push_str(&const_text(name, m));
            }
            text.push_str(&table(&[
                ("output_cols", list(&p.output_cols)),
                ("state_dim", shape.state_dim.to_string()),
                ("free", shape.free.to_string()),
                ("minimality", format!("{} {} {}", flags[0], flags[1], flags[2])),
            ]));
            let json = json!({
                "g": const_json(&p.g),
                "f": const_json(&p.f),
                "h": const_json(&p.h),
                "output_cols": p.output_cols,
                "state_dim": shape.state_dim,
                "free": shape.free,
                "minimality": flags,
            });
            Ok(Report { text, json })
        }
        (Form::Abcd, Some(axis)) => {
            let b = load_behavior(t, axis)?;
            let p = behavior_pencil(&b).map_err(domain)?;
            let (text, json) = realization_parts(&p.realization);
            Ok(Report { text, json })
        }
        (Form::Gfh, None) => Err(CliError::Usage("--form gfh needs a behavior (pass --axis)".into())),
        (Form::Klm, Some(_)) => Err(CliError::Usage("--form klm needs a code (drop --axis)".into())),
    }
}

fn distance_report(res: &DistanceResult, oracle: Option<(usize, Option<usize>)>) -> Report {
    let d = res.d_free.map_or("infinity".to_string(), |d| d.to_string());
    let mut text = format!("d_free = {d}");
    if let Some(w) = &res.witness {
        write!(text, ", witness = {w}").unwrap();
    }
    text.push('\n');
    if let Some(m) = &res.message {
        writeln!(text, "message = {m}").unwrap();
    }
    if let Some((bound, o)) = oracle {
        writeln!(text, "oracle (bound {bound}) = {}", o.map_or("infinity".to_string(), |d| d.to_string())).unwrap();
    }
    let json = json!({
        "d_free": res.d_free,
        "witness": res.witness.as_ref().map(poly_matrix_json),
        "message": res.message.as_ref().map(poly_matrix_json),
        "states_expanded": res.states_expanded,
        "oracle": oracle.map(|(bound, o)| json!({"bound": bound, "d_free": o})),
    });
    Report { text, json }
}

fn distance(t: &Target, oracle_bound: Option<usize>) -> Result<Report> {
    if let Some(axis) = t.axis {
        if oracle_bound.is_some() {
            return Err(CliError::Usage("--oracle-bound applies to codes only".into()));
        }
        let res = behavior_free_distance(&load_behavior(t, axis)?).map_err(domain)?;
        return Ok(distance_report(&res, None));
    }
    let c = load_code(t)?;
    let res = free_distance(&c).map_err(domain)?;
    let oracle = match oracle_bound {
        Some(b) => Some((b, free_distance_oracle(&c, b).map_err(domain)?)),
        None => None,
    };
    Ok(distance_report(&res, oracle))
}

fn member(t: &Target, word: &Path) -> Result<Report> {
    let w = load(word)?;
    if let Some(axis) = t.axis {
        let b = load_behavior(t, axis)?;
        let AnyMatrix::Poly(p) = &w else {
            return Err(domain(format!("{}: a window is written as a polynomial column", word.display())));
        };
        if p.cols() != 1 || p.rows() != b.n() {
            return Err(domain(format!("{}: expected a {} x 1 column", word.display(), b.n())));
        }
        let ok = b.window_membership(&Window::from_poly_vector(p));
        let text = if ok { "member\n" } else { "not a member\n" }.to_string();
        return Ok(Report { text, json: json!({"member": ok}) });
    }
    let c = load_code(t)?;
    if w.field() != c.field() {
        return Err(domain(format!("{}: field differs from the generator's", word.display())));
    }
    match c.membership(&w).map_err(domain)? {
        Some(m) => {
            let shown = match &m {
                AnyMatrix::Poly(p) => p.to_string(),
                AnyMatrix::Laurent(l) => l.to_string(),
                AnyMatrix::Rational(r) => r.to_string(),
            };
            Ok(Report { text: format!("member, message = {shown}\n"), json: json!({"member": true, "message": matrix_json(&m)}) })
        }
        None => Ok(Report { text: "not a member\n".into(), json: json!({"member": false, "message": null}) }),
    }
}

fn splice_cmd(t: &Target, a: &Path, b: &Path, at: usize) -> Result<Report> {
    let c = code_only(t, "splice")?;
    let (a, b) = (load_poly(a)?, load_poly(b)?);
    let s = splice(c.generator(), &a, &b, at).map_err(domain)?;
    let text = format!("gap = {}\nmessage = {}\ncodeword = {}\n", s.gap, s.message, s.codeword);
    let json = json!({"gap": s.gap, "message": poly_matrix_json(&s.message), "codeword": poly_matrix_json(&s.codeword)});
    Ok(Report { text, json })
}

fn crc_spec(args: &CrcArgs) -> Result<CrcSpec> {
    let m = load_poly(&args.generator)?;
    if m.shape() != (1, 1) {
        return Err(domain(format!("{}: expected a 1 x 1 matrix", args.generator.display())));
    }
    CrcSpec::new(m[(0, 0)].clone(), args.mode).map_err(domain)
}

fn crc(cmd: &CrcCommand) -> Result<Report> {
    match cmd {
        CrcCommand::Encode { crc, message } => {
            let spec = crc_spec(crc)?;
            let m = load_scalar(message, spec.field())?;
            let c = crc_encode(&spec, &m);
            let one = PolyMatrix::from_fn(spec.field(), 1, 1, |_, _| c.clone());
            Ok(Report { text: poly_to_pmat(&one), json: json!({"codeword": poly_json(&c)}) })
        }
        CrcCommand::Check { crc, word } => {
            let spec = crc_spec(crc)?;
            let w = load_scalar(word, spec.field())?;
            let r = crc_check(&spec, &w);
            let text = match &r.message {
                Some(m) => format!("accept, message = {m}\n"),
                None => "reject\n".into(),
            };
            Ok(Report { text, json: json!({"accepted": r.accepted, "message": r.message.as_ref().map(poly_json)}) })
        }
        CrcCommand::Missrate { crc, trials, length, burst, seed } => {
            let spec = crc_spec(crc)?;
            let corruption = match burst {
                Some(len) => Corruption::Burst { len: *len },
                None => Corruption::Uniform,
            };
            let r = crc_miss_rate(&spec, *trials, *length, corruption, *seed).map_err(domain)?;
            let predicted = (spec.field().order() as f64).powi(-(spec.degree() as i32));
            let text = table(&[
                ("corruption", burst.map_or("uniform".into(), |b| format!("burst {b}"))),
                ("word_len", r.word_len.to_string()),
                ("trials", r.trials.to_string()),
                ("accepted", r.accepted.to_string()),
                ("estimate", format!("{:.6}", r.estimate)),
                ("expected", r.expected.map_or("-".into(), |p| format!("{p:.6}"))),
                ("sigma", format!("{:.6}", r.sigma)),
                ("z_score", r.z_score().map_or("-".into(), |z| format!("{z:.2}"))),
                ("q^-degree", format!("{predicted:.6e}")),
            ]);
            let json = json!({
                "corruption": corruption,
                "word_len": r.word_len,
                "trials": r.trials,
                "accepted": r.accepted,
                "estimate": r.estimate,
                "expected": r.expected,
                "sigma": r.sigma,
                "z_score": r.z_score(),
                "predicted": predicted,
                "seed": seed,
            });
            Ok(Report { text, json })
        }
    }
}

fn arma(p: &Path, g: &Path, axis: Axis) -> Result<Report> {
    let (p, g) = (load(p)?, load(g)?);
    if p.field() != g.field() {
        return Err(domain("P and G are over different fields"));
    }
    let b = arma_to_kernel(&p, &g, axis).map_err(domain)?;
    Ok(matrix_report("kernel", b.kernel(), json!({"axis": axis.to_string()})))
}

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Analyze(t) => analyze(t),
        Command::Reduce(t) => {
            let c = code_only(t, "reduce")?;
            Ok(matrix_report("encoder", &c.minimal_basic_encoder(), json!({})))
        }
        Command::Parity(t) => {
            let c = code_only(t, "parity")?;
            let h = c.parity_check().map_err(domain)?;
            Ok(matrix_report("parity_check", &h, json!({})))
        }
        Command::Dualize { target, annihilator } => dualize(target, *annihilator),
        Command::Convert { target, to } => convert(target, *to),
        Command::Realize { target, form } => realize(target, *form),
        Command::Distance { target, oracle_bound } => distance(target, *oracle_bound),
        Command::Member { target, word } => member(target, word),
        Command::Splice { target, a, b, at } => splice_cmd(target, a, b, *at),
        Command::Crc { command } => crc(command),
        Command::Arma { p, g, axis } => arma(p, g, *axis),
    }
}

/// Renders a report the way the binary prints it.
pub fn render(cli: &Cli, report: &Report) -> String {
    if cli.json {
        let mut s = serde_json::to_string_pretty(&report.json).expect("reports are valid JSON");
        s.push('\n');
        s
    } else {
        report.text.clone()
    }
}
