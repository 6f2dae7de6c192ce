mod analysis;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use crkit::grassmann::{duality_catalog, enumerate_orbits, orbit_reports, OrbitDescriptor};
use crkit::mostow::{jacobian_probe, ProbeConfig};
use crkit::CrError;

use analysis::{AlgebraSource, CheckFlags};
use output::Emit;

#[derive(Parser, Debug)]
#[command(name = "crkit", version, about = "CR invariants of SU(p,q)-orbits in Grassmannians")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Pretty,
}

#[derive(Args, Debug, Clone)]
struct Family {
    #[arg(short = 'p')]
    p: usize,
    #[arg(short = 'q')]
    q: usize,
    #[arg(short = 'm')]
    m: usize,
}

#[derive(Args, Debug, Clone, Default)]
struct AlgebraArgs {
    /// `grassmann:p,q,m,a,b`
    #[arg(long)]
    preset: Option<String>,
    /// JSON `{context:{p,q}, v_basis:[...]}`, inline or a file path
    #[arg(long)]
    v_spec: Option<String>,
    #[arg(short = 'p')]
    p: Option<usize>,
    #[arg(short = 'q')]
    q: Option<usize>,
    #[arg(short = 'm')]
    m: Option<usize>,
    #[arg(short = 'a')]
    a: Option<usize>,
    #[arg(short = 'b')]
    b: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Catalog of orbit reports for Gr_m(C^{p+q})
    Orbits {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Full analysis of one CR algebra
    Analyze {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Selected verdicts for one CR algebra (all when no flag is given)
    Check {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long)]
        n_reductive: bool,
        #[arg(long)]
        hnr: bool,
        #[arg(long)]
        levi: bool,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 32)]
        samples: usize,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Matsuki pairs M+(a,b) <-> M-(a,b) with base-point certificates
    Duality {
        #[command(flatten)]
        family: Family,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Jacobian rank probe of the Mostow map
    MostowProbe {
        #[command(flatten)]
        algebra: AlgebraArgs,
        #[arg(long, default_value_t = 0.5)]
        radius: f64,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Formula-versus-oracle discrepancy report
    Report {
        #[command(flatten)]
        family: Family,
        #[arg(long)]
        output: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
}

pub enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<CrError> for Failure {
    fn from(e: CrError) -> Self {
        match e {
            CrError::Inconsistent(_) => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, Failure>;

fn validate_family(f: &Family) -> CliResult<()> {
    if f.p == 0 || f.p > f.q {
        return Err(Failure::Invalid(format!("need 1 <= p <= q (got p={}, q={})", f.p, f.q)));
    }
    if f.m == 0 || f.m >= f.p + f.q {
        return Err(Failure::Invalid(format!("need 1 <= m < p+q (got m={}, p+q={})", f.m, f.p + f.q)));
    }
    Ok(())
}

fn resolve_source(args: &AlgebraArgs, default: Option<&str>) -> CliResult<AlgebraSource> {
    let numeric = [args.p, args.q, args.m, args.a, args.b];
    let given = [args.preset.is_some(), args.v_spec.is_some(), numeric.iter().any(Option::is_some)];
    if given.iter().filter(|&&g| g).count() > 1 {
        return Err(Failure::Invalid("give exactly one of --preset, --v-spec or -p/-q/-m/-a/-b".into()));
    }
    if let Some(spec) = &args.v_spec {
        let text = if spec.trim_start().starts_with('{') {
            spec.clone()
        } else {
            std::fs::read_to_string(spec).map_err(|e| Failure::Invalid(format!("cannot read {spec}: {e}")))?
        };
        return Ok(AlgebraSource::Spec(text));
    }
    let descriptor = if let Some(preset) = args.preset.as_deref().or(if given[2] { None } else { default }) {
        parse_preset(preset)?
    } else if let [Some(p), Some(q), Some(m), Some(a), Some(b)] = numeric {
        (p, q, m, a, b)
    } else if given[2] {
        return Err(Failure::Invalid("-p, -q, -m, -a and -b must all be given".into()));
    } else {
        return Err(Failure::Invalid("no algebra given: use --preset, --v-spec or -p/-q/-m/-a/-b".into()));
    };
    let (p, q, m, a, b) = descriptor;
    validate_family(&Family { p, q, m })?;
    Ok(AlgebraSource::Family(OrbitDescriptor::new(p, q, m, a, b)?))
}

fn parse_preset(preset: &str) -> CliResult<(usize, usize, usize, usize, usize)> {
    let body = preset
        .strip_prefix("grassmann:")
        .ok_or_else(|| Failure::Invalid(format!("unknown preset '{preset}' (expected grassmann:p,q,m,a,b)")))?;
    let nums: Vec<usize> = body
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .map_err(|_| Failure::Invalid(format!("malformed preset '{preset}'")))?;
    match nums.as_slice() {
        &[p, q, m, a, b] => Ok((p, q, m, a, b)),
        _ => Err(Failure::Invalid(format!("preset '{preset}' needs five integers"))),
    }
}

fn configure_threads() -> CliResult<()> {
    if let Ok(v) = std::env::var("CRKIT_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Invalid(format!("CRKIT_THREADS must be a positive integer (got '{v}')")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Failure::Internal(e.to_string()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<String> {
    configure_threads()?;
    match cli.command {
        Command::Orbits { family, format } => {
            validate_family(&family)?;
            let reports = orbit_reports(family.p, family.q, family.m)?;
            reports.emit(format)
        }
        Command::Analyze { algebra, seed, samples, format } => {
            let source = resolve_source(&algebra, None)?;
            analysis::analyze(&source, CheckFlags::all(), seed, samples)?.emit(format)
        }
        Command::Check { algebra, n_reductive, hnr, levi, seed, samples, format } => {
            let source = resolve_source(&algebra, None)?;
            let flags = if n_reductive || hnr || levi {
                CheckFlags { n_reductive, hnr, levi }
            } else {
                CheckFlags::all()
            };
            analysis::analyze(&source, flags, seed, samples)?.emit(format)
        }
        Command::Duality { family, format } => {
            validate_family(&family)?;
            enumerate_orbits(family.p, family.q, family.m)?;
            duality_catalog(family.p, family.q, family.m)?.emit(format)
        }
        Command::MostowProbe { algebra, radius, samples, seed, format } => {
            if !(radius.is_finite() && radius > 0.0) {
                return Err(Failure::Invalid(format!("radius must be positive (got {radius})")));
            }
            if samples == 0 {
                return Err(Failure::Invalid("samples must be positive".into()));
            }
            let source = resolve_source(&algebra, Some("grassmann:1,2,1,0,0"))?;
            let alg = source.build()?;
            let cfg = ProbeConfig { radius, samples, seed, ..ProbeConfig::default() };
            jacobian_probe(&alg, &cfg)?.emit(format)
        }
        Command::Report { family, output, format } => {
            validate_family(&family)?;
            let report = analysis::discrepancy_report(family.p, family.q, family.m)?;
            let text = report.emit(format)?;
            match output {
                Some(path) => {
                    std::fs::write(&path, &text)
                        .map_err(|e| Failure::Invalid(format!("cannot write {}: {e}", path.display())))?;
                    Ok(String::new())
                }
                None => Ok(text),
            }
        }
    }
}

fn one_line(s: &str) -> String {
    s.lines().map(str::trim).filter(|l| !l.is_empty()).collect::<Vec<_>>().join(" ")
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let rendered = e.render().to_string();
            let first = rendered.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("crkit: {}", one_line(first));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("crkit: {}", one_line(&msg));
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("crkit: internal inconsistency: {}", one_line(&msg));
            ExitCode::from(2)
        }
    }
}
