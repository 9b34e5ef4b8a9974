use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use reality_lab::algebra::parse_rational;
use reality_lab::elliptic::{collinearity_scan, lift_x, paper_example, ScanConfig, WeierstrassCurve};
use reality_lab::gates::{
    catalan_count, classification_check, critical_count, evaluate_gates, lattice_pushforward_check, system_dim,
};
use reality_lab::moebius::{check_reality, critical_points, image_bidegree, RationalMap};
use reality_lab::plane::{
    classify_singularity, paper_quartic, singular_points, verify_quartic, PlaneCurve, ProjPoint,
};
use reality_lab::{BigRational, Error, ErrorClass, GaussianRational};

#[derive(Parser)]
#[command(name = "reality-lab", version, about = "Reality of rational maps, plane cusps and elliptic tangent scans")]
struct Cli {
    #[arg(long, value_enum, default_value = "json", global = true)]
    format: Format,
    /// Decimal digits for floating-point work (elliptic-scan).
    #[arg(long, default_value_t = 50, global = true)]
    precision: usize,
    /// Write the result here instead of stdout. For elliptic-scan this is
    /// the sample CSV and the summary still goes to stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
    Text,
}

#[derive(clap::Args)]
struct MapInput {
    /// JSON file with {"deg", "P", "Q"}; `-` reads stdin.
    input: Option<PathBuf>,
    /// Numerator written in z, e.g. "z^3 + i*z".
    #[arg(long, conflicts_with = "input")]
    num: Option<String>,
    /// Denominator written in z (default 1).
    #[arg(long, requires = "num")]
    den: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether a Moebius change of the target makes the map real.
    Check(MapInput),
    /// Bidegree (δ, δ) of the image of z ↦ (f(z), conj f(conj z)).
    Image(MapInput),
    /// Critical points of the map, with a certified real count.
    Crit(MapInput),
    /// Genus and degree gates; with K also the classification check.
    Gate { d: u32, g: u32, k: Option<u32> },
    /// Catalan count for degree D and, with G, critical and dimension counts.
    Count { d: u32, g: Option<u32> },
    /// Whether multiplication by MU on C/Z[i] respects conjugation.
    Lattice { mu: String },
    /// Tangent-determinant scan along the real branch of y² = x³ + ax + b.
    EllipticScan(ScanArgs),
    /// Plane curve analysis.
    #[command(subcommand)]
    Curve(CurveCommand),
}

#[derive(clap::Args)]
struct ScanArgs {
    #[arg(long, value_enum)]
    preset: Option<Preset>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    /// JSON file: [{"x": "1/20", "sign": "+"}, ...] with three entries.
    #[arg(long)]
    points: Option<PathBuf>,
    #[arg(long, default_value_t = 10_000)]
    samples: usize,
    /// Parameter window "LO,HI" inside (-π/2, π/2).
    #[arg(long, allow_hyphen_values = true)]
    window: Option<String>,
    /// Determinants up to this size count as zero.
    #[arg(long, default_value = "1e-20")]
    tolerance: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum Preset {
    /// y² = x³ + x with x(P0, P1, P2) = 100.35, 0.05, 0.4.
    PaperExample,
    /// Same with P1 replaced by P0.
    PaperDegenerate,
}

#[derive(Subcommand)]
enum CurveCommand {
    /// Singular points, tangent cones and types.
    Analyze {
        /// JSON file with {"degree", "monomials"} or {"form"}; `-` reads stdin.
        input: Option<PathBuf>,
        #[arg(long, conflicts_with = "input")]
        form: Option<String>,
        /// Classify only this point, "x,y,z".
        #[arg(long, allow_hyphen_values = true)]
        point: Option<String>,
    },
    /// Check the claims about the two-cusp quartic x z³ - y z³ + x y z² + x² y².
    VerifyPaperQuartic {
        /// Run the same checks on another quartic.
        #[arg(long)]
        form: Option<String>,
    },
}

#[derive(Debug)]
enum Failure {
    Lib(Error),
    Usage(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Lib(e) => match e.class() {
                ErrorClass::Parse => 2,
                ErrorClass::Precondition => 3,
                ErrorClass::Internal => 4,
            },
            Failure::Usage(_) => 2,
            Failure::Io(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Lib(e) => e.to_string(),
            Failure::Usage(s) | Failure::Io(s) => s.clone(),
        }
    }
}

type Outcome = std::result::Result<Output, Failure>;

enum Output {
    Value(Value),
    /// Summary plus CSV rows for the scan.
    Scan(Value, Vec<u8>),
}

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(|e| Failure::Io(format!("stdin: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Io(format!("{}: {e}", path.display())))
}

fn read_json(path: &Path) -> std::result::Result<Value, Failure> {
    serde_json::from_str(&read_input(path)?).map_err(|e| Failure::Lib(Error::Parse(format!("{}: {e}", path.display()))))
}

fn load_map(m: &MapInput) -> std::result::Result<RationalMap, Failure> {
    match (&m.input, &m.num) {
        (_, Some(num)) => Ok(RationalMap::parse(num, m.den.as_deref())?),
        (Some(path), None) => Ok(RationalMap::from_json(&read_json(path)?)?),
        (None, None) => Err(Failure::Usage("give an input file or --num".into())),
    }
}

fn to_value<T: serde::Serialize>(x: &T) -> Value {
    serde_json::to_value(x).expect("report types serialize")
}

fn with_map(f: &RationalMap, report: Value) -> Value {
    let mut obj = match report {
        Value::Object(o) => o,
        other => {
            let mut o = Map::new();
            o.insert("result".into(), other);
            o
        }
    };
    obj.insert("map".into(), f.to_json());
    Value::Object(obj)
}

fn parse_point(s: &str) -> std::result::Result<ProjPoint, Failure> {
    let parts: Vec<&str> = s.split(',').collect();
    if parts.len() != 3 {
        return Err(Failure::Lib(Error::Parse(format!("point '{s}' needs three coordinates"))));
    }
    let coords = parts.iter().map(|p| p.trim().parse::<GaussianRational>()).collect::<reality_lab::Result<Vec<_>>>()?;
    if coords.iter().all(|c| *c == GaussianRational::from_int(0)) {
        return Err(Failure::Lib(Error::Precondition("the zero vector is not a point".into())));
    }
    Ok([coords[0].clone(), coords[1].clone(), coords[2].clone()])
}

fn load_curve(input: &Option<PathBuf>, form: &Option<String>) -> std::result::Result<PlaneCurve, Failure> {
    match (input, form) {
        (_, Some(f)) => Ok(PlaneCurve::parse(f)?),
        (Some(path), None) => Ok(PlaneCurve::from_json(&read_json(path)?)?),
        (None, None) => Err(Failure::Usage("give an input file or --form".into())),
    }
}

fn run_curve(cmd: &CurveCommand) -> Outcome {
    match cmd {
        CurveCommand::Analyze { input, form, point } => {
            let c = load_curve(input, form)?;
            if let Some(p) = point {
                let r = classify_singularity(&c, &parse_point(p)?)?;
                return Ok(Output::Value(json!({ "curve": c.to_string(), "point": to_value(&r) })));
            }
            let locus = singular_points(&c)?;
            Ok(Output::Value(json!({
                "curve": c.to_string(),
                "degree": c.degree(),
                "arithmetic_genus": c.arithmetic_genus(),
                "geometric_genus": locus.geometric_genus(&c),
                "singular_locus": to_value(&locus),
            })))
        }
        CurveCommand::VerifyPaperQuartic { form } => {
            let c = match form {
                Some(f) => PlaneCurve::parse(f)?,
                None => paper_quartic(),
            };
            Ok(Output::Value(to_value(&verify_quartic(&c))))
        }
    }
}

fn parse_decimal_rational(s: &str) -> std::result::Result<BigRational, Failure> {
    // accepts 1/20, 0.05 and 1e-20
    if let Some((m, e)) = s.to_ascii_lowercase().split_once('e') {
        let m = parse_rational(m)?;
        let e: i32 = e.parse().map_err(|_| Failure::Lib(Error::Parse(format!("invalid exponent in '{s}'"))))?;
        let ten = BigRational::from_integer(10.into());
        let scale = (0..e.unsigned_abs()).fold(BigRational::from_integer(1.into()), |acc, _| acc * &ten);
        return Ok(if e < 0 { m / scale } else { m * scale });
    }
    Ok(parse_rational(s)?)
}

fn run_scan(args: &ScanArgs, precision: usize) -> Outcome {
    if precision < 15 {
        return Err(Failure::Lib(Error::Precondition("--precision must be at least 15".into())));
    }
    let mut cfg = ScanConfig { samples: args.samples, precision, ..ScanConfig::default() };
    cfg.tolerance = parse_decimal_rational(&args.tolerance)?;
    if let Some(w) = &args.window {
        let (lo, hi) = w
            .split_once(',')
            .ok_or_else(|| Failure::Lib(Error::Parse(format!("window '{w}' must be LO,HI"))))?;
        cfg.window = (parse_decimal_rational(lo.trim())?, parse_decimal_rational(hi.trim())?);
    }
    let (curve, points, label) = match args.preset {
        Some(preset) => {
            if args.a.is_some() || args.b.is_some() || args.points.is_some() {
                return Err(Failure::Usage("--preset cannot be combined with --a, --b or --points".into()));
            }
            let (c, [p0, p1, p2]) = paper_example(precision)?;
            match preset {
                Preset::PaperExample => (c, [p0, p1, p2], "paper-example"),
                Preset::PaperDegenerate => (c, [p0.clone(), p0, p2], "paper-degenerate"),
            }
        }
        None => {
            let a = parse_decimal_rational(args.a.as_deref().unwrap_or("1"))?;
            let b = parse_decimal_rational(args.b.as_deref().unwrap_or("0"))?;
            let c = WeierstrassCurve::new(a, b)?;
            let path = args.points.as_ref().ok_or_else(|| Failure::Usage("give --preset or --points".into()))?;
            let v = read_json(path)?;
            let arr = v
                .as_array()
                .filter(|a| a.len() == 3)
                .ok_or_else(|| Failure::Lib(Error::Parse("points file must hold a list of three points".into())))?;
            let mut pts = Vec::new();
            for p in arr {
                let x = p
                    .get("x")
                    .and_then(Value::as_str)
                    .ok_or_else(|| Failure::Lib(Error::Parse("each point needs an \"x\" string".into())))?;
                let positive = match p.get("sign").and_then(Value::as_str).unwrap_or("+") {
                    "+" => true,
                    "-" => false,
                    s => return Err(Failure::Lib(Error::Parse(format!("sign must be + or -, got '{s}'")))),
                };
                pts.push(lift_x(&c, &parse_decimal_rational(x)?, positive, precision)?);
            }
            let [p0, p1, p2]: [_; 3] = pts.try_into().unwrap_or_else(|_| unreachable!());
            (c, [p0, p1, p2], "custom")
        }
    };
    let result = collinearity_scan(&curve, &points, &cfg)?;
    let mut summary = match to_value(&result.summary(&cfg.tolerance)) {
        Value::Object(o) => o,
        _ => unreachable!(),
    };
    summary.insert("configuration".into(), label.into());
    summary.insert("curve".into(), json!({ "a": curve.a().to_string(), "b": curve.b().to_string() }));
    summary.insert("points".into(), points.iter().map(|p| p.to_json()).collect::<Vec<_>>().into());
    summary.insert("window".into(), json!([cfg.window.0.to_string(), cfg.window.1.to_string()]));
    summary.insert("tolerance".into(), cfg.tolerance.to_string().into());
    let mut csv = Vec::new();
    result.write_csv(&mut csv).map_err(|e| Failure::Io(e.to_string()))?;
    Ok(Output::Scan(Value::Object(summary), csv))
}

fn run(cli: &Cli) -> Outcome {
    let v = match &cli.command {
        Command::Check(m) => {
            let f = load_map(m)?;
            with_map(&f, to_value(&check_reality(&f)?))
        }
        Command::Image(m) => {
            let f = load_map(m)?;
            with_map(&f, to_value(&image_bidegree(&f)?))
        }
        Command::Crit(m) => {
            let f = load_map(m)?;
            with_map(&f, to_value(&critical_points(&f)?))
        }
        Command::Gate { d, g, k } => {
            let mut r = evaluate_gates(*d, *g)?;
            if let Some(k) = k {
                r.classification = Some(classification_check(*d, *g, *k)?);
            }
            to_value(&r)
        }
        Command::Count { d, g } => {
            let mut o = Map::new();
            o.insert("degree".into(), (*d).into());
            o.insert("catalan".into(), catalan_count(*d)?.to_string().into());
            if let Some(g) = g {
                o.insert("genus".into(), (*g).into());
                o.insert("critical_count".into(), critical_count(*d, *g)?.into());
                o.insert("system_dim".into(), system_dim(*d, *g)?.into());
            }
            Value::Object(o)
        }
        Command::Lattice { mu } => {
            let m: GaussianRational = mu.parse()?;
            let r = lattice_pushforward_check(&m)?;
            let mut v = to_value(&r);
            v["multiplier"] = m.to_string().into();
            v["witness_fraction"] = r.witness.to_fraction_string().into();
            v
        }
        Command::EllipticScan(args) => return run_scan(args, cli.precision),
        Command::Curve(c) => return run_curve(c),
    };
    Ok(Output::Value(v))
}

fn render_text(v: &Value, indent: usize, out: &mut String) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(o) => {
            for (k, x) in o {
                match x {
                    Value::Object(_) | Value::Array(_) if !is_flat(x) => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        render_text(x, indent + 1, out);
                    }
                    _ => out.push_str(&format!("{pad}{k}: {}\n", inline(x))),
                }
            }
        }
        Value::Array(a) => {
            for x in a {
                if is_flat(x) {
                    out.push_str(&format!("{pad}- {}\n", inline(x)));
                } else {
                    out.push_str(&format!("{pad}-\n"));
                    render_text(x, indent + 1, out);
                }
            }
        }
        other => out.push_str(&format!("{pad}{}\n", inline(other))),
    }
}

fn is_flat(v: &Value) -> bool {
    match v {
        Value::Array(a) => a.iter().all(|x| !x.is_object() && !x.is_array()),
        Value::Object(_) => false,
        _ => true,
    }
}

fn inline(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Array(a) => format!("[{}]", a.iter().map(inline).collect::<Vec<_>>().join(", ")),
        other => other.to_string(),
    }
}

fn emit(cli: &Cli, out: Output) -> std::result::Result<(), Failure> {
    let write = |path: Option<&PathBuf>, bytes: &[u8]| -> std::result::Result<(), Failure> {
        match path {
            Some(p) => fs::write(p, bytes).map_err(|e| Failure::Io(format!("{}: {e}", p.display()))),
            None => io::stdout().write_all(bytes).map_err(|e| Failure::Io(e.to_string())),
        }
    };
    let render = |v: &Value| -> Vec<u8> {
        match cli.format {
            Format::Text => {
                let mut s = String::new();
                render_text(v, 0, &mut s);
                s.into_bytes()
            }
            _ => {
                let mut s = serde_json::to_string_pretty(v).expect("json");
                s.push('\n');
                s.into_bytes()
            }
        }
    };
    match out {
        Output::Value(v) => {
            if cli.format == Format::Csv {
                return Err(Failure::Usage("csv output is only available for elliptic-scan".into()));
            }
            write(cli.out.as_ref(), &render(&v))
        }
        Output::Scan(summary, csv) => match (&cli.out, cli.format) {
            (Some(p), _) => {
                write(Some(p), &csv)?;
                if cli.format != Format::Csv {
                    write(None, &render(&summary))?;
                }
                Ok(())
            }
            (None, Format::Csv) => write(None, &csv),
            (None, _) => write(None, &render(&summary)),
        },
    }
}

fn thread_pool() -> std::result::Result<Option<rayon::ThreadPool>, Failure> {
    let Ok(v) = std::env::var("REALITY_LAB_THREADS") else { return Ok(None) };
    let n: usize = v
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
        .ok_or_else(|| Failure::Usage(format!("REALITY_LAB_THREADS must be a positive integer, got '{v}'")))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build()
        .map(Some)
        .map_err(|e| Failure::Lib(Error::Internal(e.to_string())))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = thread_pool().and_then(|pool| {
        let job = || std::panic::catch_unwind(|| run(&cli));
        let r = match pool {
            Some(p) => p.install(job),
            None => job(),
        };
        r.unwrap_or_else(|_| Err(Failure::Lib(Error::Internal("unexpected panic".into()))))
    });
    match result.and_then(|out| emit(&cli, out)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
