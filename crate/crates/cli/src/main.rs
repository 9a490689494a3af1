use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Value};

use mvretract::fixtures;
use mvretract::format::{
    pwl_map_from_json, pwl_map_value, report_value, to_canonical_string, triangulation_from_json,
    triangulation_value,
};
use mvretract::geometry::{interior_connected, is_closed_domain};
use mvretract::mcnaughton::find_counterexample;
use mvretract::retract::{
    index_bounds, multiplicity, same_algebra, same_range, UpperBound,
};
use mvretract::{
    parse, verify_z_retraction, Error, MultiplicityReport, MvTerm, PwlMap, RationalPoint, Triangulation,
    ZRetraction,
};

#[derive(Parser)]
#[command(name = "mvretract", version, about = "Exact analysis of Z-retractions of the unit cube")]
struct Cli {
    /// Output style.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    /// Worker threads for the parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum, PartialEq, Eq)]
enum Format {
    Human,
    Structured,
}

/// A retraction given as terms, as a map file, or by fixture name.
#[derive(Args)]
struct Source {
    /// One term per output coordinate.
    terms: Vec<String>,
    /// Map file in the JSON map format.
    #[arg(long, conflicts_with_all = ["terms", "fixture"])]
    file: Option<PathBuf>,
    /// Fixture name (see `fixture --help`).
    #[arg(long, conflicts_with = "terms")]
    fixture: Option<String>,
}

/// A polyhedron given as a triangulation file or as the range of a retraction.
#[derive(Args)]
struct Polyhedron {
    #[arg(long, conflicts_with_all = ["terms", "file", "fixture"])]
    triangulation: Option<PathBuf>,
    #[command(flatten)]
    source: Source,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a term at a point of the cube, e.g. `eval "x1 (+) x2" 1/2 1/3`.
    Eval { term: String, coords: Vec<String> },
    /// Decide whether a term is a tautology.
    Tautology { term: String },
    /// Check that the terms define an idempotent map of the cube.
    CheckRetraction(Source),
    /// Print the range of a retraction.
    Range(Source),
    /// Decide whether a polyhedron is the closure of its interior.
    ClosedDomain(Polyhedron),
    /// Decide whether the interior of a polyhedron is connected.
    InteriorConnected(Polyhedron),
    /// Count the Z-homeomorphism domains of a retraction.
    Multiplicity(Source),
    /// Bounds for the index of the range of a retraction.
    IndexBounds {
        #[command(flatten)]
        source: Source,
        /// Candidate copy of the range, as a map file (repeatable).
        #[arg(long = "copy")]
        copies: Vec<PathBuf>,
    },
    /// Compare the ranges of two retractions, each given as `t1; t2; ...`.
    SameRange { left: String, right: String },
    /// Compare the algebras generated by two retractions, each given as `t1; t2; ...`.
    SameAlgebra { left: String, right: String },
    /// Build a named construction: half_meet, half_tau, half_join, cyl_proj,
    /// L_fold, fibonacci:N, wp:P, L, interval:R.
    Fixture { name: String },
    /// Draw a planar triangulation (or the domain of a retraction) as SVG.
    RenderSvg {
        #[command(flatten)]
        input: Polyhedron,
        /// Shade the Z-homeomorphism domains of the retraction.
        #[arg(long)]
        certificates: bool,
        /// Output path (default: standard output).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
}

enum Outcome {
    Yes(String, Value),
    No(String, Value),
}

type Run = Result<Outcome, Error>;

fn read(path: &PathBuf) -> Result<String, Error> {
    fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))
}

fn parse_terms<S: AsRef<str>>(srcs: &[S]) -> Result<Vec<MvTerm>, Error> {
    srcs.iter().map(|s| parse(s.as_ref())).collect()
}

fn fixture_retraction(name: &str) -> Result<ZRetraction, Error> {
    if let Some(n) = name.strip_prefix("fibonacci:") {
        let n = n.parse().map_err(|_| Error::UnknownFixture(name.into()))?;
        return Ok(fixtures::fibonacci_stage(n)?.sigma);
    }
    if let Some(r) = name.strip_prefix("interval:") {
        let r: BigRational = r.parse().map_err(|_| Error::UnknownFixture(name.into()))?;
        return fixtures::interval_retraction(r);
    }
    fixtures::canonical(name)
}

impl Source {
    fn is_empty(&self) -> bool {
        self.terms.is_empty() && self.file.is_none() && self.fixture.is_none()
    }

    fn retraction(&self) -> Result<ZRetraction, Error> {
        if let Some(path) = &self.file {
            return ZRetraction::from_map(pwl_map_from_json(&read(path)?)?);
        }
        if let Some(name) = &self.fixture {
            return fixture_retraction(name);
        }
        if self.terms.is_empty() {
            return Err(Error::Format("no retraction given: pass terms, --file or --fixture".into()));
        }
        verify_z_retraction(&parse_terms(&self.terms)?)
    }
}

impl Polyhedron {
    fn triangulation(&self) -> Result<Triangulation, Error> {
        match &self.triangulation {
            Some(path) => triangulation_from_json(&read(path)?),
            None if self.source.is_empty() => Err(Error::Format(
                "no polyhedron given: pass --triangulation or a retraction".into(),
            )),
            None => Ok(self.source.retraction()?.range().clone()),
        }
    }
}

fn split_side(side: &str) -> Result<ZRetraction, Error> {
    let parts: Vec<&str> = side.split(';').map(str::trim).filter(|s| !s.is_empty()).collect();
    verify_z_retraction(&parse_terms(&parts)?)
}

fn describe_triangulation(t: &Triangulation) -> String {
    if t.is_empty() {
        return "(empty)".into();
    }
    (0..t.len()).map(|i| t.simplex(i).to_string()).collect::<Vec<_>>().join("\n")
}

fn point_text(p: &RationalPoint) -> String {
    let c: Vec<String> = p.coords().iter().map(ToString::to_string).collect();
    format!("({})", c.join(", "))
}

fn point_value(p: &RationalPoint) -> Value {
    serde_json::from_str(&p.to_homogeneous().to_string()).expect("homogeneous vectors are JSON arrays")
}

fn decision(yes: bool, word: &str, key: &str) -> Outcome {
    let v = json!({ key: yes });
    if yes {
        Outcome::Yes(word.to_string(), v)
    } else {
        Outcome::No(format!("not {word}"), v)
    }
}

fn eval(term: &str, coords: &[String]) -> Run {
    let t = parse(term)?;
    let values = coords
        .iter()
        .map(|c| c.parse::<BigRational>().map_err(|_| Error::Format(format!("`{c}` is not a rational number"))))
        .collect::<Result<Vec<_>, _>>()?;
    let p = RationalPoint::in_cube(values)?;
    let v = t.evaluate(&p)?;
    Ok(Outcome::Yes(v.to_string(), json!({ "value": v.to_string() })))
}

fn tautology(term: &str) -> Run {
    let t = parse(term)?;
    Ok(match find_counterexample(&t)? {
        None => Outcome::Yes("tautology".into(), json!({ "tautology": true })),
        Some(p) => Outcome::No(
            format!("not a tautology; counterexample {}", point_text(&p)),
            json!({ "tautology": false, "counterexample": point_value(&p) }),
        ),
    })
}

fn check_retraction(src: &Source) -> Run {
    match src.retraction() {
        Ok(s) => Ok(Outcome::Yes(
            format!("Z-retraction with range\n{}", describe_triangulation(s.range())),
            json!({ "retraction": true, "range": triangulation_value(s.range()) }),
        )),
        Err(Error::NotIdempotent { witness }) => Ok(Outcome::No(
            format!("not idempotent at {}", point_text(&witness)),
            json!({ "retraction": false, "witness": point_value(&witness) }),
        )),
        Err(e) => Err(e),
    }
}

fn report_text(r: &MultiplicityReport) -> String {
    match r {
        MultiplicityReport::Finite { count, certificates } => {
            let mut s = format!("FINITE {count}");
            for (k, c) in certificates.iter().enumerate() {
                s.push_str(&format!("\ndomain {}:\n{}", k + 1, describe_triangulation(c)));
            }
            s
        }
        MultiplicityReport::Infinite { witness } => format!("INFINITE\nwitness {witness}"),
    }
}

fn index(src: &Source, copies: &[PathBuf]) -> Run {
    let s = src.retraction()?;
    let copies = copies
        .iter()
        .map(|p| pwl_map_from_json(&read(p)?))
        .collect::<Result<Vec<PwlMap>, _>>()?;
    let b = index_bounds(&s, &copies)?;
    let upper = match &b.upper {
        UpperBound::Finite(u) => u.to_string(),
        UpperBound::Unbounded => "unbounded".into(),
    };
    let upper_value = match &b.upper {
        UpperBound::Finite(u) => serde_json::from_str(&u.to_string()).expect("integer"),
        UpperBound::Unbounded => json!("unbounded"),
    };
    Ok(Outcome::Yes(
        format!(
            "{} <= index <= {upper}\nsmallest component measure {}, {} components",
            b.lower, b.lambda, b.components
        ),
        json!({
            "lower": serde_json::from_str::<Value>(&b.lower.to_string()).expect("integer"),
            "upper": upper_value,
            "lambda": b.lambda.to_string(),
            "components": b.components,
        }),
    ))
}

fn fixture(name: &str) -> Run {
    if let Some(p) = name.strip_prefix("wp:") {
        let p: u32 = p.parse().map_err(|_| Error::UnknownFixture(name.into()))?;
        let t = fixtures::wp_domain(p)?;
        return Ok(Outcome::Yes(describe_triangulation(&t), triangulation_value(&t)));
    }
    if name == "L" {
        let t = fixtures::l_shape();
        return Ok(Outcome::Yes(describe_triangulation(&t), triangulation_value(&t)));
    }
    let s = fixture_retraction(name)?;
    let f = s.map();
    let mut human = String::new();
    for i in 0..f.domain().len() {
        let rows: Vec<String> = f.pieces()[i].iter().map(ToString::to_string).collect();
        human.push_str(&format!("{} -> ({})\n", f.domain().simplex(i), rows.join(", ")));
    }
    human.push_str(&format!("range\n{}", describe_triangulation(s.range())));
    Ok(Outcome::Yes(human, pwl_map_value(f)))
}

fn render(input: &Polyhedron, certificates: bool, output: &Option<PathBuf>) -> Run {
    let (t, highlight) = match &input.triangulation {
        Some(_) => (input.triangulation()?, Vec::new()),
        None => {
            let s = input.source.retraction()?;
            let highlight = match (certificates, multiplicity(&s)?) {
                (true, MultiplicityReport::Finite { certificates, .. }) => certificates,
                _ => Vec::new(),
            };
            (s.map().domain().clone(), highlight)
        }
    };
    let svg = mvretract::svg::render_svg(&t, &highlight)?;
    match output {
        Some(path) => {
            fs::write(path, &svg).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
            Ok(Outcome::Yes(
                format!("wrote {}", path.display()),
                json!({ "written": path.display().to_string() }),
            ))
        }
        None => Ok(Outcome::Yes(svg.trim_end().to_string(), json!({ "svg": svg }))),
    }
}

fn run(cli: &Cli) -> Run {
    match &cli.command {
        Command::Eval { term, coords } => eval(term, coords),
        Command::Tautology { term } => tautology(term),
        Command::CheckRetraction(src) => check_retraction(src),
        Command::Range(src) => {
            let s = src.retraction()?;
            Ok(Outcome::Yes(describe_triangulation(s.range()), triangulation_value(s.range())))
        }
        Command::ClosedDomain(p) => {
            Ok(decision(is_closed_domain(&p.triangulation()?), "a closed domain", "closed_domain"))
        }
        Command::InteriorConnected(p) => Ok(decision(
            interior_connected(&p.triangulation()?)?,
            "interior-connected",
            "interior_connected",
        )),
        Command::Multiplicity(src) => {
            let r = multiplicity(&src.retraction()?)?;
            Ok(Outcome::Yes(report_text(&r), report_value(&r)))
        }
        Command::IndexBounds { source, copies } => index(source, copies),
        Command::SameRange { left, right } => Ok(decision(
            same_range(&split_side(left)?, &split_side(right)?)?,
            "the same range",
            "same_range",
        )),
        Command::SameAlgebra { left, right } => Ok(decision(
            same_algebra(&split_side(left)?, &split_side(right)?)?,
            "the same algebra",
            "same_algebra",
        )),
        Command::Fixture { name } => fixture(name),
        Command::RenderSvg {
            input,
            certificates,
            output,
        } => render(input, *certificates, output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    let emit = |human: String, value: Value| match cli.format {
        Format::Human => println!("{human}"),
        Format::Structured => println!("{}", to_canonical_string(&value)),
    };
    match run(&cli) {
        Ok(Outcome::Yes(h, v)) => {
            emit(h, v);
            ExitCode::SUCCESS
        }
        Ok(Outcome::No(h, v)) => {
            emit(h, v);
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
