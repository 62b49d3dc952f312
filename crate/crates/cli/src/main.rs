use std::error::Error;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};

use exalg::albert::{AlbertCtx, AlbertElem};
use exalg::brown::{u_apply, BrownAlgebra, BrownCtx, BrownElem, QuadBrown, TripleSystem, DIM};
use exalg::flags::{classify_e6, classify_e7, incident, Geometry, IncidenceRules, SpaceType};
use exalg::ideals::{inner_closure, is_inner_ideal};
use exalg::linalg::Subspace;
use exalg::scalar::{QuadField, Rational, RationalField, ScalarField};
use exalg::textio::{format_rows, format_vector, parse_rows, parse_vector};
use exalg::verify::{self, Suite};

const ALBERT_DIM: usize = 27;

type Res<T> = Result<T, Box<dyn Error>>;

#[derive(Parser, Debug)]
#[command(name = "exalg", version, about = "Exact computations in Albert and Brown algebras")]
struct Cli {
    /// The Brown algebra parameter; must be 1 with --quad-d.
    #[arg(long, global = true)]
    zeta: Option<String>,

    /// Albert algebra parameters as g0,g1,g2.
    #[arg(long, global = true, default_value = "1,1,1")]
    gamma: String,

    /// Work in the quadratic variant over Q(sqrt d).
    #[arg(long, global = true, allow_hyphen_values = true)]
    quad_d: Option<i64>,

    /// Seed for randomized checks.
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,

    /// Use the stricter stated incidence thresholds instead of the ones computed from the chamber.
    #[arg(long, global = true)]
    strict_paper_incidence: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run a property suite and print one line per check.
    Verify {
        #[arg(long, default_value = "all", value_parser = Suite::from_str)]
        suite: Suite,
        /// Bound on numerators and denominators of random scalars.
        #[arg(long, default_value_t = 9)]
        height: i64,
    },
    /// Evaluate an operation on element files.
    Eval {
        expr: Expr,
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Inner ideal queries on a subspace file, or closure of a generator file.
    Ideal { action: IdealAction, file: PathBuf },
    /// Classify a subspace as a point of an E6 or E7 geometry.
    ClassifySpace {
        #[arg(long)]
        geometry: GeometryArg,
        file: PathBuf,
    },
    /// Decide whether two subspaces are incident.
    Incidence {
        #[arg(long)]
        geometry: GeometryArg,
        first: PathBuf,
        second: PathBuf,
    },
    /// The duality map on a subspace of the Albert algebra.
    Dual { file: PathBuf },
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum Expr {
    Sharp,
    Norm,
    Cross,
    Trace,
    Bracket,
    Brownmul,
    B,
    T,
    Q,
    Nu,
    Ueval,
}

impl Expr {
    fn arity(self) -> &'static [usize] {
        match self {
            Expr::Sharp | Expr::Norm | Expr::Nu => &[1],
            Expr::Trace => &[1, 2],
            Expr::Cross | Expr::Brownmul | Expr::B | Expr::Ueval => &[2],
            Expr::Bracket | Expr::T => &[3],
            Expr::Q => &[4],
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum IdealAction {
    Check,
    Closure,
    Classify,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
enum GeometryArg {
    E6,
    E7,
}

impl From<GeometryArg> for Geometry {
    fn from(g: GeometryArg) -> Self {
        match g {
            GeometryArg::E6 => Geometry::E6,
            GeometryArg::E7 => Geometry::E7,
        }
    }
}

/// Usage problems detected after argument parsing.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
struct Usage(String);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Outcome {
    Pass,
    Fail,
}

impl Outcome {
    fn from_bool(ok: bool) -> Self {
        if ok {
            Outcome::Pass
        } else {
            Outcome::Fail
        }
    }
}

fn read(path: &Path) -> Res<String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()).into())
}

fn space_type(t: Option<SpaceType>) -> String {
    match t {
        Some(t) => format!("type={}:{}", t.geometry, t.index),
        None => "type=none".into(),
    }
}

fn parse_gamma(s: &str) -> Res<[Rational; 3]> {
    let parts: Vec<Rational> = s.split(',').map(|p| p.trim().parse()).collect::<Result<_, _>>()?;
    <[Rational; 3]>::try_from(parts).map_err(|_| Usage("--gamma takes three comma-separated scalars".into()).into())
}

struct Session<'a, A: BrownAlgebra, F: ScalarField<Elem = A::Up>> {
    alg: &'a A,
    field: F,
    rules: IncidenceRules,
}

impl<A: BrownAlgebra, F: ScalarField<Elem = A::Up>> Session<'_, A, F> {
    fn albert_elem(&self, path: &Path) -> Res<AlbertElem<A::Up>> {
        Ok(AlbertElem::from_coords(parse_vector(&self.field, &read(path)?, ALBERT_DIM)?)?)
    }

    fn brown_elem(&self, path: &Path) -> Res<BrownElem<A::Up>> {
        Ok(BrownElem::from_coords(&parse_vector(&self.field, &read(path)?, DIM)?)?)
    }

    fn albert_space(&self, path: &Path) -> Res<Subspace<A::Up>> {
        let (ambient, rows) = parse_rows(&self.field, &read(path)?)?;
        if ambient != ALBERT_DIM {
            return Err(Usage(format!("expected a subspace of the {ALBERT_DIM}-dimensional Albert algebra, got ambient {ambient}")).into());
        }
        Ok(Subspace::span(ambient, rows)?)
    }

    /// Rows are Brown algebra elements; in the quadratic variant they must be fixed.
    fn brown_rows(&self, path: &Path) -> Res<Vec<BrownElem<A::Up>>> {
        let (ambient, rows) = parse_rows(&self.field, &read(path)?)?;
        if ambient != DIM {
            return Err(Usage(format!("expected rows of {DIM} scalars, got ambient {ambient}")).into());
        }
        rows.iter().map(|r| Ok(BrownElem::from_coords(r)?)).collect()
    }

    fn brown_space(&self, path: &Path) -> Res<Subspace<A::Field>> {
        let rows = self.brown_rows(path)?;
        let coords = rows.iter().map(|e| self.alg.coords(e)).collect::<Result<Vec<_>, _>>()?;
        Ok(Subspace::span(DIM, coords)?)
    }

    fn print_brown_space(&self, w: &Subspace<A::Field>) -> Res<()> {
        let rows = w
            .basis_vectors()
            .iter()
            .map(|v| Ok(self.alg.from_coords(v)?.coords()))
            .collect::<Res<Vec<_>>>()?;
        print!("{}", format_rows(DIM, &rows));
        Ok(())
    }

    fn eval(&self, expr: Expr, files: &[PathBuf]) -> Res<Outcome> {
        if !expr.arity().contains(&files.len()) {
            return Err(Usage(format!("{expr:?} takes {:?} input files, got {}", expr.arity(), files.len()).to_lowercase()).into());
        }
        let a = self.alg.albert();
        match expr {
            Expr::Sharp | Expr::Norm | Expr::Cross | Expr::Trace | Expr::Bracket => {
                let xs = files.iter().map(|f| self.albert_elem(f)).collect::<Res<Vec<_>>>()?;
                match (expr, &xs[..]) {
                    (Expr::Sharp, [x]) => println!("{}", format_vector(&a.sharp(x).into_coords())),
                    (Expr::Norm, [x]) => println!("{}", a.norm(x)?),
                    (Expr::Cross, [x, y]) => println!("{}", format_vector(&a.cross(x, y).into_coords())),
                    (Expr::Trace, [x]) => println!("{}", a.trace(x)),
                    (Expr::Trace, [x, y]) => println!("{}", a.trace_form(x, y)),
                    (Expr::Bracket, [x, y, j]) => println!("{}", format_vector(&a.bracket_apply(x, y, j).into_coords())),
                    _ => unreachable!("arity checked"),
                }
            }
            _ => {
                let xs = files.iter().map(|f| self.brown_elem(f)).collect::<Res<Vec<_>>>()?;
                let ts = || TripleSystem::new(self.alg);
                match (expr, &xs[..]) {
                    (Expr::Brownmul, [x, y]) => println!("{}", format_vector(&self.alg.mul(x, y).coords())),
                    (Expr::Ueval, [e, x]) => println!("{}", format_vector(&u_apply(self.alg, e, x).coords())),
                    (Expr::B, [x, y]) => println!("{}", ts()?.b(x, y)?),
                    (Expr::T, [x, y, z]) => println!("{}", format_vector(&ts()?.t(x, y, z)?.coords())),
                    (Expr::Q, [x, y, z, w]) => println!("{}", ts()?.q(x, y, z, w)?),
                    (Expr::Nu, [x]) => println!("{}", ts()?.nu(x)?),
                    _ => unreachable!("arity checked"),
                }
            }
        }
        Ok(Outcome::Pass)
    }

    fn ideal(&self, action: IdealAction, file: &Path) -> Res<Outcome> {
        if action == IdealAction::Closure {
            let gens = self.brown_rows(file)?;
            self.print_brown_space(&inner_closure(self.alg, &gens)?)?;
            return Ok(Outcome::Pass);
        }
        let ts = TripleSystem::new(self.alg)?;
        let i = self.brown_space(file)?;
        let rep = is_inner_ideal(&ts, &i)?;
        println!("inner={} singular={} dim={}", rep.is_inner, rep.is_singular, rep.dim);
        if let Some(w) = &rep.witness {
            println!("witness {}", format_vector(&w.coords()));
        }
        if action == IdealAction::Check {
            return Ok(Outcome::from_bool(rep.is_inner));
        }
        let t = classify_e7(&ts, &i)?;
        println!("{}", space_type(t));
        Ok(Outcome::from_bool(t.is_some()))
    }

    fn classify(&self, g: Geometry, file: &Path) -> Res<Option<SpaceType>> {
        Ok(match g {
            Geometry::E6 => classify_e6(self.alg.albert(), &self.albert_space(file)?),
            Geometry::E7 => classify_e7(&TripleSystem::new(self.alg)?, &self.brown_space(file)?)?,
        })
    }

    fn classify_space(&self, g: Geometry, file: &Path) -> Res<Outcome> {
        let t = self.classify(g, file)?;
        println!("{}", space_type(t));
        Ok(Outcome::from_bool(t.is_some()))
    }

    fn incidence(&self, g: Geometry, first: &Path, second: &Path) -> Res<Outcome> {
        let (t1, t2) = (self.classify(g, first)?, self.classify(g, second)?);
        let (Some(t1), Some(t2)) = (t1, t2) else {
            println!("{} {}", space_type(t1), space_type(t2));
            return Ok(Outcome::Fail);
        };
        let ok = match g {
            Geometry::E6 => {
                let (w1, w2) = (self.albert_space(first)?, self.albert_space(second)?);
                incident(&self.rules, (t1, &w1), (t2, &w2))?
            }
            Geometry::E7 => {
                let (w1, w2) = (self.brown_space(first)?, self.brown_space(second)?);
                incident(&self.rules, (t1, &w1), (t2, &w2))?
            }
        };
        println!("incident={ok}");
        Ok(Outcome::from_bool(ok))
    }

    fn dual(&self, file: &Path) -> Res<Outcome> {
        let w = self.alg.albert().duality_map(&self.albert_space(file)?)?;
        print!("{}", format_rows(ALBERT_DIM, &w.basis_vectors()));
        Ok(Outcome::Pass)
    }

    fn run(&self, cmd: &Command) -> Res<Outcome> {
        match cmd {
            Command::Eval { expr, files } => self.eval(*expr, files),
            Command::Ideal { action, file } => self.ideal(*action, file),
            Command::ClassifySpace { geometry, file } => self.classify_space((*geometry).into(), file),
            Command::Incidence { geometry, first, second } => self.incidence((*geometry).into(), first, second),
            Command::Dual { file } => self.dual(file),
            Command::Verify { .. } => unreachable!("handled before building a context"),
        }
    }
}

fn run(cli: &Cli) -> Res<Outcome> {
    let rules = if cli.strict_paper_incidence { IncidenceRules::strict() } else { IncidenceRules::computed() };
    if let Command::Verify { suite, height } = &cli.command {
        let mut opts = verify::Options::new(cli.seed);
        opts.height = *height;
        opts.rules = rules;
        let report = verify::run(*suite, &opts);
        print!("{report}");
        return Ok(Outcome::from_bool(report.all_ok()));
    }
    let gamma = parse_gamma(&cli.gamma)?;
    let zeta: Rational = cli.zeta.as_deref().unwrap_or("1").parse()?;
    match cli.quad_d {
        Some(d) => {
            if zeta != Rational::from_integer(1) {
                return Err(Usage("--zeta must be 1 with --quad-d".into()).into());
            }
            let alg = QuadBrown::new(gamma, d)?;
            let field = QuadField::new(d)?;
            Session { alg: &alg, field, rules }.run(&cli.command)
        }
        None => {
            let alg = BrownCtx::new(AlbertCtx::new(gamma)?, zeta)?;
            Session { alg: &alg, field: RationalField, rules }.run(&cli.command)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(Outcome::Pass) => ExitCode::SUCCESS,
        Ok(Outcome::Fail) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
