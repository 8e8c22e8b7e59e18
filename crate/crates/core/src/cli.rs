//! Command-line front end: one binary with subcommands `mod`, `poly`,
//! `field`, `search`, `plane`, `design`, and `code`, canonical text/JSON/DOT
//! serialization, and bundled fixtures.
//!
//! Exit statuses: 0 on success, 1 on domain errors (one-line diagnostic on
//! stderr), 2 on usage errors.

use crate::codes::{self, Code};
use crate::designs::{self, BlockDesign};
use crate::fingeo::{self, IncidenceStructure};
use crate::gfield::{self, Field, FieldOps};
use crate::modarith::{self, Residue, RingOp};
use crate::polyring::{self, PrimePoly};
use crate::tablesearch::{self, SearchOptions};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Deserialize;
use serde::Serialize;
use std::ffi::OsString;
use std::io::Write;

const NINE_POINT_DESIGN: &str = include_str!("../fixtures/nine-point-design.json");
const REP3_TRANSMISSION: &str = include_str!("../fixtures/rep3-transmission.txt");

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Mod(#[from] modarith::ModError),
    #[error("{0}")]
    Poly(#[from] polyring::PolyError),
    #[error("{0}")]
    Field(#[from] gfield::FieldError),
    #[error("{0}")]
    Table(#[from] gfield::TableError),
    #[error("{0}")]
    Search(#[from] tablesearch::SearchError),
    #[error("{0}")]
    Geo(#[from] fingeo::GeoError),
    #[error("{0}")]
    Design(#[from] designs::DesignError),
    #[error("{0}")]
    Code(#[from] codes::CodeError),
    #[error("unknown fixture {0:?}")]
    UnknownFixture(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("invalid input: {0}")]
    Invalid(String),
}

#[derive(Parser, Debug)]
#[command(
    name = "fieldlab",
    version,
    about = "Finite fields, finite geometries, block designs and error-correcting codes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Modular arithmetic in Z_n
    #[command(name = "mod")]
    Modular(ModArgs),
    /// Polynomials over Z_p
    Poly(PolyArgs),
    /// Finite fields Z_p[z]/<f>
    Field(FieldArgs),
    /// Exhaustive search for field tables on n labels
    Search(SearchArgs),
    /// Affine and projective planes over F_q
    Plane(PlaneArgs),
    /// Block designs
    Design(DesignArgs),
    /// Error-correcting codes
    Code(CodeArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum OpName {
    Add,
    Sub,
    Mul,
}

#[derive(Args, Debug)]
struct ModArgs {
    #[command(subcommand)]
    action: ModAction,
}

#[derive(Subcommand, Debug)]
enum ModAction {
    /// Residue arithmetic: a op b mod n
    Op {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
        #[arg(long)]
        b: u64,
        #[arg(long, value_enum)]
        op: OpName,
    },
    /// Multiplicative inverse of a mod n
    Inverse {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
    },
    /// All x with x^2 = a mod n
    SolveSquare {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        a: u64,
    },
    /// Smallest k with k*x = 0 mod n
    AdditiveOrder {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        x: u64,
    },
    /// The unit group of Z_n
    Units {
        #[arg(long)]
        n: u64,
    },
    /// Validity of the base-b digit-sum divisibility rule for m
    DigitRule {
        #[arg(long)]
        base: u64,
        #[arg(long)]
        m: u64,
    },
    /// Units of the product ring Z_n1 x Z_n2
    ProductUnits {
        #[arg(long)]
        n1: u64,
        #[arg(long)]
        n2: u64,
    },
}

#[derive(Args, Debug)]
struct PolyArgs {
    #[command(subcommand)]
    action: PolyAction,
}

#[derive(Subcommand, Debug)]
enum PolyAction {
    /// f op g over Z_p
    Op {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
        #[arg(long, value_enum)]
        op: OpName,
    },
    /// Long division f = q*g + r
    Divmod {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
        #[arg(long)]
        g: String,
    },
    /// Roots of f in Z_p
    Roots {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
    },
    /// Irreducibility of f over Z_p
    Irreducible {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
    },
    /// Factorization into monic irreducibles times a unit
    Factor {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        f: String,
    },
    /// All monic irreducibles of a given degree
    Irreducibles {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        degree: usize,
    },
}

#[derive(Args, Debug)]
struct FieldArgs {
    /// Characteristic p (with --f)
    #[arg(long)]
    p: Option<u64>,
    /// Modulus polynomial, e.g. "[1,1,1]" or "1+z+z^2" (with --p)
    #[arg(long)]
    f: Option<String>,
    /// Field descriptor "p=2,f=[1,1,1]" as an alternative to --p/--f
    #[arg(long)]
    field: Option<String>,
    #[command(subcommand)]
    action: FieldAction,
}

#[derive(Subcommand, Debug)]
enum FieldAction {
    /// The full addition and multiplication tables
    Tables {
        #[arg(long)]
        json: bool,
    },
    /// Multiplicative inverse of an element
    Inverse {
        #[arg(long)]
        elem: String,
    },
    /// Multiplicative order of an element
    Order {
        #[arg(long)]
        elem: String,
    },
    /// Characteristic, by repeated addition of 1
    Char,
}

#[derive(Args, Debug)]
struct SearchArgs {
    /// Table size n
    #[arg(long)]
    order: usize,
    /// Stop after this many solutions
    #[arg(long)]
    max_solutions: Option<usize>,
    #[arg(long)]
    json: bool,
    /// Allow sizes 8..=12 (slower)
    #[arg(long)]
    allow_large: bool,
    /// Include the full solution tables in the output
    #[arg(long)]
    tables: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum PlaneFormat {
    Text,
    Json,
    Dot,
}

#[derive(Args, Debug)]
struct PlaneArgs {
    /// Field order q (prime power); the first irreducible modulus is used
    #[arg(long)]
    q: Option<u64>,
    /// Explicit field descriptor "p=2,f=[1,1,1]"
    #[arg(long)]
    field: Option<String>,
    /// Construct the affine plane instead of the projective plane
    #[arg(long)]
    affine: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: PlaneFormat,
}

#[derive(Args, Debug)]
struct DesignArgs {
    #[command(subcommand)]
    action: DesignAction,
}

#[derive(Args, Debug)]
struct DesignSource {
    /// Design file: {"v": 9, "blocks": [[0,1,2], ...]}
    #[arg(long)]
    file: Option<String>,
    /// Bundled fixture name (e.g. nine-point-design)
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Subcommand, Debug)]
enum DesignAction {
    /// Verify the t-design property
    Verify {
        #[command(flatten)]
        source: DesignSource,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        json: bool,
    },
    /// Block count and point replication
    Counts {
        #[command(flatten)]
        source: DesignSource,
        #[arg(long, default_value = "2")]
        t: usize,
        #[arg(long)]
        json: bool,
    },
    /// Partition the blocks into parallel classes, if possible
    Resolve {
        #[command(flatten)]
        source: DesignSource,
        #[arg(long, default_value = "2")]
        t: usize,
        #[arg(long)]
        json: bool,
    },
    /// Derive a 2-design from a plane
    FromPlane {
        #[arg(long)]
        q: Option<u64>,
        #[arg(long)]
        field: Option<String>,
        #[arg(long)]
        affine: bool,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate all designs with block size equal to the strength
    SearchKt {
        #[arg(long)]
        v: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args, Debug)]
struct CodeArgs {
    #[command(subcommand)]
    action: CodeAction,
}

#[derive(Subcommand, Debug)]
enum CodeAction {
    /// Nearest-codeword decode a whitespace-separated transmission
    Decode {
        #[arg(long)]
        code: String,
        #[arg(long)]
        word: String,
    },
    /// Build the incidence code of a design
    FromDesign {
        #[command(flatten)]
        source: DesignSource,
        #[arg(long, default_value = "2")]
        t: usize,
        #[arg(long)]
        extended: bool,
        #[arg(long)]
        json: bool,
    },
    /// Minimum distance and capabilities
    MinDistance {
        #[arg(long)]
        code: String,
    },
    /// Exact sphere-packing perfection test
    Perfect {
        #[arg(long)]
        code: String,
    },
    /// Seeded noisy-channel simulation
    Simulate {
        #[arg(long)]
        code: String,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Canonical JSON: object keys sorted, newline-terminated.
pub fn to_canonical_json<T: Serialize>(value: &T) -> String {
    let v = serde_json::to_value(value).expect("serializable");
    let mut s = serde_json::to_string(&v).expect("valid json");
    s.push('\n');
    s
}

/// DOT export of the bipartite point-line incidence graph.
pub fn to_dot(s: &IncidenceStructure) -> String {
    let mut out = String::from("graph incidence {\n");
    for (i, label) in s.points.iter().enumerate() {
        out.push_str(&format!("  p{i} [label=\"{label}\"];\n"));
    }
    for i in 0..s.lines.len() {
        out.push_str(&format!("  l{i} [shape=box,label=\"L{i}\"];\n"));
    }
    for (i, line) in s.lines.iter().enumerate() {
        for &p in line {
            out.push_str(&format!("  p{p} -- l{i};\n"));
        }
    }
    out.push_str("}\n");
    out
}

/// A bundled fixture object.
pub enum Fixture {
    Design(BlockDesign),
    Transmission(String),
    Plane(IncidenceStructure),
}

/// File schema for designs: strength defaults to 2 unless given.
#[derive(Deserialize)]
struct DesignFile {
    v: usize,
    blocks: Vec<Vec<usize>>,
}

fn parse_design(text: &str, t: usize) -> Result<BlockDesign, CliError> {
    let file: DesignFile =
        serde_json::from_str(text).map_err(|e| CliError::Invalid(format!("design file: {e}")))?;
    Ok(BlockDesign::new(file.v, file.blocks, t)?)
}

/// Loads a bundled fixture by name: `nine-point-design`,
/// `rep3-transmission`, or `fano`.
pub fn load_fixture(name: &str) -> Result<Fixture, CliError> {
    match name {
        "nine-point-design" => Ok(Fixture::Design(parse_design(NINE_POINT_DESIGN, 2)?)),
        "rep3-transmission" => Ok(Fixture::Transmission(
            REP3_TRANSMISSION.trim().to_string(),
        )),
        "fano" => {
            let plane = fingeo::projective_plane(&gfield::prime_field(2)?)?;
            Ok(Fixture::Plane(plane))
        }
        other => Err(CliError::UnknownFixture(other.to_string())),
    }
}

fn field_from_order(q: u64) -> Result<Field, CliError> {
    // factor q as p^r
    let mut p = 2;
    while p * p <= q {
        if q % p == 0 {
            break;
        }
        p += 1;
    }
    if q % p != 0 {
        p = q;
    }
    let mut r = 0usize;
    let mut rest = q;
    while rest % p == 0 {
        rest /= p;
        r += 1;
    }
    if rest != 1 {
        return Err(CliError::Invalid(format!("{q} is not a prime power")));
    }
    let modulus = if r == 1 {
        PrimePoly::var(p)?
    } else {
        polyring::monic_irreducibles(p, r)?
            .into_iter()
            .next()
            .expect("irreducibles exist in every degree")
    };
    Ok(gfield::make_field(p, &modulus)?)
}

fn resolve_field(
    p: Option<u64>,
    f: Option<&str>,
    descriptor: Option<&str>,
    q: Option<u64>,
) -> Result<Field, CliError> {
    match (p, f, descriptor, q) {
        (Some(p), Some(f), None, None) => {
            let poly = PrimePoly::parse(p, f)?;
            Ok(gfield::make_field(p, &poly)?)
        }
        (None, None, Some(d), None) => Ok(gfield::parse_field_descriptor(d)?),
        (None, None, None, Some(q)) => field_from_order(q),
        _ => Err(CliError::Invalid(
            "specify exactly one of --p/--f, --field, or --q".to_string(),
        )),
    }
}

fn load_design(source: &DesignSource, t: usize) -> Result<BlockDesign, CliError> {
    match (&source.file, &source.fixture) {
        (Some(path), None) => parse_design(&std::fs::read_to_string(path)?, t),
        (None, Some(name)) => match load_fixture(name)? {
            Fixture::Design(d) => {
                if d.t == t {
                    Ok(d)
                } else {
                    Ok(BlockDesign::new(d.v, d.blocks, t)?)
                }
            }
            Fixture::Plane(p) => Ok(designs::design_from_plane(&p)?),
            Fixture::Transmission(_) => Err(CliError::Invalid(format!(
                "fixture {name:?} is not a design"
            ))),
        },
        _ => Err(CliError::Invalid(
            "specify exactly one of --file or --fixture".to_string(),
        )),
    }
}

fn named_code(name: &str) -> Result<Code, CliError> {
    if let Some(r) = name.strip_prefix("rep") {
        let r: usize = r
            .parse()
            .map_err(|_| CliError::Invalid(format!("unknown code {name:?}")))?;
        if r < 1 {
            return Err(CliError::Invalid("repetition count must be >= 1".into()));
        }
        return Ok(codes::repetition_code(r));
    }
    match name {
        "fano" | "fano-extended" => {
            let plane = fingeo::projective_plane(&gfield::prime_field(2)?)?;
            let d = designs::design_from_plane(&plane)?;
            Ok(codes::code_from_design(&d, name == "fano-extended")?)
        }
        other => Err(CliError::Invalid(format!("unknown code {other:?}"))),
    }
}

fn design_param_lines(d: &BlockDesign) -> String {
    format!(
        "{}-({},{},{}), b={}\n(v, t, r) = ({}, {}, {})\n",
        d.t,
        d.v,
        d.k,
        d.lambda,
        d.b(),
        d.v,
        d.t,
        d.lambda
    )
}

fn ring_op(op: OpName) -> RingOp {
    match op {
        OpName::Add => RingOp::Add,
        OpName::Sub => RingOp::Sub,
        OpName::Mul => RingOp::Mul,
    }
}

fn table_grid(name: &str, table: &[Vec<usize>]) -> String {
    let n = table.len();
    let mut out = String::new();
    out.push_str(&format!("{name} |"));
    for j in 0..n {
        out.push_str(&format!(" {j}"));
    }
    out.push('\n');
    out.push_str(&format!("--+{}\n", "--".repeat(n)));
    for (i, row) in table.iter().enumerate() {
        out.push_str(&format!("{i} |"));
        for v in row {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
    }
    out
}

/// Parses the argument list and runs a command, writing results to `out`.
/// Returns the process exit status: 0 success, 1 domain error, 2 usage.
pub fn parse_and_dispatch<I, T>(argv: I, out: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            if e.use_stderr() {
                eprint!("{e}");
                return 2;
            }
            let _ = write!(out, "{e}");
            return 0;
        }
    };
    match dispatch(cli, out) {
        Ok(()) => 0,
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            1
        }
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn dispatch(cli: Cli, out: &mut impl Write) -> Result<(), CliError> {
    match cli.command {
        Command::Modular(args) => run_mod(args, out),
        Command::Poly(args) => run_poly(args, out),
        Command::Field(args) => run_field(args, out),
        Command::Search(args) => run_search(args, out),
        Command::Plane(args) => run_plane(args, out),
        Command::Design(args) => run_design(args, out),
        Command::Code(args) => run_code(args, out),
    }
}

fn run_mod(args: ModArgs, out: &mut impl Write) -> Result<(), CliError> {
    match args.action {
        ModAction::Op { n, a, b, op } => {
            let r = modarith::residue_op(Residue::new(a, n)?, Residue::new(b, n)?, ring_op(op))?;
            writeln!(out, "{r}")?;
        }
        ModAction::Inverse { n, a } => {
            let r = modarith::mod_inverse(Residue::new(a, n)?)?;
            writeln!(out, "{r}")?;
        }
        ModAction::SolveSquare { n, a } => {
            let roots = modarith::solve_square(Residue::new(a, n)?);
            let parts: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
            writeln!(out, "{{{}}}", parts.join(", "))?;
        }
        ModAction::AdditiveOrder { n, x } => {
            writeln!(out, "{}", modarith::additive_order(Residue::new(x, n)?))?;
        }
        ModAction::Units { n } => {
            let units = modarith::unit_group(n)?;
            let parts: Vec<String> = units.iter().map(|r| r.value.to_string()).collect();
            writeln!(out, "{{{}}}", parts.join(", "))?;
        }
        ModAction::DigitRule { base, m } => {
            let q = modarith::DigitRuleQuery::new(base, m)?;
            writeln!(out, "{}", modarith::digit_sum_rule_valid(q))?;
        }
        ModAction::ProductUnits { n1, n2 } => {
            let units = modarith::product_ring_units(n1, n2)?;
            let parts: Vec<String> = units
                .iter()
                .map(|(a, b)| format!("({},{})", a.value, b.value))
                .collect();
            writeln!(out, "{{{}}}", parts.join(", "))?;
        }
    }
    Ok(())
}

fn poly_ring_op(op: OpName) -> polyring::PolyOp {
    match op {
        OpName::Add => polyring::PolyOp::Add,
        OpName::Sub => polyring::PolyOp::Sub,
        OpName::Mul => polyring::PolyOp::Mul,
    }
}

fn run_poly(args: PolyArgs, out: &mut impl Write) -> Result<(), CliError> {
    match args.action {
        PolyAction::Op { p, f, g, op } => {
            let f = PrimePoly::parse(p, &f)?;
            let g = PrimePoly::parse(p, &g)?;
            writeln!(out, "{}", polyring::poly_op(&f, &g, poly_ring_op(op))?)?;
        }
        PolyAction::Divmod { p, f, g } => {
            let f = PrimePoly::parse(p, &f)?;
            let g = PrimePoly::parse(p, &g)?;
            let (q, r) = polyring::poly_divmod(&f, &g)?;
            writeln!(out, "q = {q}")?;
            writeln!(out, "r = {r}")?;
        }
        PolyAction::Roots { p, f } => {
            let f = PrimePoly::parse(p, &f)?;
            let roots = polyring::poly_roots(&f)?;
            let parts: Vec<String> = roots.iter().map(|r| r.to_string()).collect();
            writeln!(out, "{{{}}}", parts.join(", "))?;
        }
        PolyAction::Irreducible { p, f } => {
            let f = PrimePoly::parse(p, &f)?;
            writeln!(out, "{}", polyring::is_irreducible(&f)?)?;
        }
        PolyAction::Factor { p, f } => {
            let f = PrimePoly::parse(p, &f)?;
            let fac = polyring::factor_poly(&f)?;
            let parts: Vec<String> = fac.factors.iter().map(|g| format!("({g})")).collect();
            writeln!(out, "{} * {}", fac.unit, parts.join(""))?;
        }
        PolyAction::Irreducibles { p, degree } => {
            for f in polyring::monic_irreducibles(p, degree)? {
                writeln!(out, "{f}")?;
            }
        }
    }
    Ok(())
}

fn run_field(args: FieldArgs, out: &mut impl Write) -> Result<(), CliError> {
    let field = resolve_field(args.p, args.f.as_deref(), args.field.as_deref(), None)?;
    match args.action {
        FieldAction::Tables { json } => {
            let tables = gfield::build_op_tables(&field)?;
            if json {
                write!(out, "{}", to_canonical_json(&tables))?;
            } else {
                write!(out, "{}", table_grid("+", &tables.add))?;
                write!(out, "{}", table_grid("*", &tables.mul))?;
            }
        }
        FieldAction::Inverse { elem } => {
            let a = field.elem(&PrimePoly::parse(field.char_p(), &elem)?)?;
            writeln!(out, "{}", gfield::elem_inverse(&a)?)?;
        }
        FieldAction::Order { elem } => {
            let a = field.elem(&PrimePoly::parse(field.char_p(), &elem)?)?;
            writeln!(out, "{}", gfield::multiplicative_order(&a)?)?;
        }
        FieldAction::Char => {
            writeln!(out, "{}", gfield::characteristic(&field))?;
        }
    }
    Ok(())
}

fn run_search(args: SearchArgs, out: &mut impl Write) -> Result<(), CliError> {
    let result = tablesearch::enumerate_field_tables_with(
        args.order,
        SearchOptions {
            max_solutions: args.max_solutions,
            reversed_branching: false,
            allow_extended: args.allow_large,
        },
    )?;
    if args.json {
        write!(out, "{}", to_canonical_json(&result))?;
    } else {
        writeln!(out, "{} solutions", result.raw_count)?;
        writeln!(out, "iso classes: {}", result.iso_classes)?;
        if args.tables {
            for (i, s) in result.solutions.iter().enumerate() {
                writeln!(out, "solution {i}:")?;
                write!(out, "{}", table_grid("+", &s.add))?;
                write!(out, "{}", table_grid("*", &s.mul))?;
            }
        }
    }
    Ok(())
}

fn run_plane(args: PlaneArgs, out: &mut impl Write) -> Result<(), CliError> {
    let field = resolve_field(None, None, args.field.as_deref(), args.q)?;
    let plane = if args.affine {
        fingeo::affine_plane(&field)?
    } else {
        fingeo::projective_plane(&field)?
    };
    match args.format {
        PlaneFormat::Json => write!(out, "{}", to_canonical_json(&plane))?,
        PlaneFormat::Dot => write!(out, "{}", to_dot(&plane))?,
        PlaneFormat::Text => {
            writeln!(
                out,
                "{} points, {} lines",
                plane.points.len(),
                plane.lines.len()
            )?;
            for (i, line) in plane.lines.iter().enumerate() {
                let labels: Vec<String> =
                    line.iter().map(|&p| plane.points[p].clone()).collect();
                writeln!(out, "L{i}: {}", labels.join(" "))?;
            }
        }
    }
    Ok(())
}

fn run_design(args: DesignArgs, out: &mut impl Write) -> Result<(), CliError> {
    match args.action {
        DesignAction::Verify { source, t, json } => {
            let d = load_design(&source, t)?;
            if json {
                write!(out, "{}", to_canonical_json(&d))?;
            } else {
                write!(out, "{}", design_param_lines(&d))?;
            }
        }
        DesignAction::Counts { source, t, json } => {
            let d = load_design(&source, t)?;
            let c = designs::design_counts(&d)?;
            if json {
                write!(out, "{}", to_canonical_json(&c))?;
            } else {
                writeln!(out, "b = {}, point replication = {}", c.b, c.point_replication)?;
            }
        }
        DesignAction::Resolve { source, t, json } => {
            let d = load_design(&source, t)?;
            match designs::find_resolution(&d)? {
                Some(r) => {
                    if json {
                        write!(out, "{}", to_canonical_json(&r))?;
                    } else {
                        for (i, class) in r.classes.iter().enumerate() {
                            let parts: Vec<String> =
                                class.iter().map(|b| format!("{:?}", d.blocks[*b])).collect();
                            writeln!(out, "class {i}: {}", parts.join(" "))?;
                        }
                    }
                }
                None => writeln!(out, "no resolution")?,
            }
        }
        DesignAction::FromPlane {
            q,
            field,
            affine,
            json,
        } => {
            let spec = resolve_field(None, None, field.as_deref(), q)?;
            let plane = if affine {
                fingeo::affine_plane(&spec)?
            } else {
                fingeo::projective_plane(&spec)?
            };
            let d = designs::design_from_plane(&plane)?;
            if json {
                write!(out, "{}", to_canonical_json(&d))?;
            } else {
                write!(out, "{}", design_param_lines(&d))?;
            }
        }
        DesignAction::SearchKt { v, t, json } => {
            let results = designs::k_equals_t_designs(v, t)?;
            if json {
                write!(out, "{}", to_canonical_json(&results))?;
            } else {
                writeln!(out, "{} designs", results.len())?;
                for d in &results {
                    write!(out, "{}", design_param_lines(d))?;
                }
            }
        }
    }
    Ok(())
}

fn run_code(args: CodeArgs, out: &mut impl Write) -> Result<(), CliError> {
    match args.action {
        CodeAction::Decode { code, word } => {
            let c = named_code(&code)?;
            writeln!(out, "{}", codes::decode_transmission(&c, &word)?)?;
        }
        CodeAction::FromDesign {
            source,
            t,
            extended,
            json,
        } => {
            let d = load_design(&source, t)?;
            let c = codes::code_from_design(&d, extended)?;
            if json {
                write!(out, "{}", to_canonical_json(&c))?;
            } else {
                writeln!(
                    out,
                    "{} codewords of length {} over alphabet {}",
                    c.codewords.len(),
                    c.length,
                    c.alphabet_size
                )?;
                for w in &c.codewords {
                    let s: String = w.iter().map(|b| b.to_string()).collect();
                    writeln!(out, "{s}")?;
                }
            }
        }
        CodeAction::MinDistance { code } => {
            let c = named_code(&code)?;
            let r = codes::min_distance(&c)?;
            writeln!(
                out,
                "d = {}, detect = {}, correct = {}",
                r.min_distance, r.detect, r.correct
            )?;
        }
        CodeAction::Perfect { code } => {
            let c = named_code(&code)?;
            writeln!(out, "{}", codes::is_perfect(&c)?)?;
        }
        CodeAction::Simulate {
            code,
            p,
            trials,
            seed,
            json,
        } => {
            let c = named_code(&code)?;
            let report = codes::channel_simulate(&c, p, trials, seed)?;
            if json {
                write!(out, "{}", to_canonical_json(&report))?;
            } else {
                writeln!(
                    out,
                    "success rate {:.6} over {} trials (p = {}, seed = {})",
                    report.per_letter_success_rate, report.trials, report.flip_probability,
                    report.seed
                )?;
            }
        }
    }
    Ok(())
}
