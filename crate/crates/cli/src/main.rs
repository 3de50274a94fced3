use std::fs::File;
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use barcode_strata::metrics::{self, Norm};
use barcode_strata::random::random_barcode;
use barcode_strata::strata::{compare, stratum_of, DEFAULT_DOUBLE_COSET_CAP};
use barcode_strata::{Barcode, CoxeterComplex, Error, Format, Permutation};
use clap::{Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const CAP_ENV: &str = "BARCODE_STRATA_CAP";

/// Coxeter coordinates, strata and matching distances for barcodes.
///
/// Barcode files hold one `birth,death` pair per line (`#` comments allowed)
/// or, with a `.json` extension, a JSON array of `[birth, death]` pairs.
#[derive(Parser)]
#[command(name = "barcode-strata", version)]
struct Cli {
    /// Values closer than this count as tied.
    #[arg(long, global = true, default_value_t = 0.0)]
    tol: f64,

    /// Cap on double coset sizes for enumeration.
    #[arg(long, global = true, env = CAP_ENV, default_value_t = DEFAULT_DOUBLE_COSET_CAP)]
    cap: u128,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Permutation invariants, coordinates and stratum of a barcode.
    Analyze {
        file: PathBuf,
        /// Also list the elements of the double coset.
        #[arg(long)]
        enumerate_dc: bool,
    },
    /// Distance between two barcodes with the same number of bars.
    Dist {
        #[arg(long, value_enum, default_value_t = Metric::Bottleneck)]
        metric: Metric,
        a: PathBuf,
        b: PathBuf,
    },
    /// Pairwise distances between the barcode files of a directory.
    DistMatrix {
        #[arg(long, value_enum, default_value_t = Metric::Bottleneck)]
        metric: Metric,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
        dir: PathBuf,
    },
    /// The lowest-dimensional stratum containing a barcode.
    Stratum { file: PathBuf },
    /// Order relation between the strata of two barcodes.
    StratumCompare { a: PathBuf, b: PathBuf },
    /// Faces and covering relations of the Coxeter complex of S_n.
    Complex {
        #[arg(long)]
        n: usize,
    },
    /// A random barcode.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Redraw until births and deaths are each distinct.
        #[arg(long)]
        strict: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Csv)]
        format: OutputFormat,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Metric {
    Bottleneck,
    Wasserstein,
}

impl From<Metric> for Norm {
    fn from(m: Metric) -> Self {
        match m {
            Metric::Bottleneck => Norm::LInf,
            Metric::Wasserstein => Norm::L2,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug)]
enum Failure {
    Core(Error),
    Usage(String),
    File(PathBuf, Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn kind(&self) -> &'static str {
        match self {
            Failure::Usage(_) => "usage",
            Failure::Core(_) => "invalid",
            Failure::File(_, Error::Io(_)) => "io",
            Failure::File(..) => "parse",
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Core(e) => e.to_string(),
            Failure::Usage(m) => m.clone(),
            Failure::File(path, e) => format!("{}: {e}", path.display()),
        }
    }
}

type Outcome = std::result::Result<String, Failure>;

#[derive(Serialize)]
struct Analysis {
    n: usize,
    mean_birth: f64,
    mean_death: f64,
    dev_birth: f64,
    dev_death: f64,
    tau_b: Permutation,
    tau_d: Permutation,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma: Option<Permutation>,
    #[serde(rename = "P_b")]
    p_b: Vec<usize>,
    #[serde(rename = "P_d")]
    p_d: Vec<usize>,
    double_coset_rep: Permutation,
    #[serde(skip_serializing_if = "Option::is_none")]
    double_coset_elements: Option<Vec<Permutation>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    double_coset_size: Option<String>,
    strict: bool,
}

#[derive(Serialize)]
struct ComplexReport<'a> {
    n: usize,
    f_vector: Vec<usize>,
    euler_characteristic: i64,
    faces: &'a [barcode_strata::Face],
    relations: Vec<(usize, usize)>,
}

fn read_barcode(path: &Path) -> std::result::Result<Barcode, Failure> {
    let format = match path.extension().and_then(|e| e.to_str()) {
        Some(ext) if ext.eq_ignore_ascii_case("json") => Format::Json,
        _ => Format::Csv,
    };
    let file = File::open(path).map_err(|e| Failure::File(path.into(), e.into()))?;
    Barcode::parse(BufReader::new(file), format).map_err(|e| Failure::File(path.into(), e))
}

fn json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("report types serialize");
    s.push('\n');
    s
}

fn analyze(path: &Path, tol: f64, cap: u128, enumerate: bool) -> Outcome {
    let b = read_barcode(path)?;
    let region = b.region(tol);
    let stratum = region.stratum;
    let (elements, size) = if enumerate {
        match stratum.elements(cap) {
            Ok(e) => (Some(e), None),
            Err(Error::CapExceeded { size, cap }) => (
                None,
                Some(format!("at most {size} elements, over the cap {cap}")),
            ),
            Err(e) => return Err(e.into()),
        }
    } else {
        (None, None)
    };
    Ok(json(&Analysis {
        n: b.len(),
        mean_birth: region.mean_birth,
        mean_death: region.mean_death,
        dev_birth: region.dev_birth,
        dev_death: region.dev_death,
        tau_b: b.tau_b(tol),
        tau_d: b.tau_d(tol),
        sigma: b.sigma(tol).ok(),
        p_b: stratum.left().generators(),
        p_d: stratum.right().generators(),
        double_coset_rep: stratum.rep().clone(),
        double_coset_elements: elements,
        double_coset_size: size,
        strict: b.is_strict(tol),
    }))
}

fn barcode_files(dir: &Path) -> std::result::Result<Vec<PathBuf>, Failure> {
    let entries = std::fs::read_dir(dir).map_err(|e| Failure::File(dir.into(), e.into()))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry
            .map_err(|e| Failure::File(dir.into(), e.into()))?
            .path();
        let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
        if path.is_file() && (ext.eq_ignore_ascii_case("csv") || ext.eq_ignore_ascii_case("json")) {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        return Err(Failure::Usage(format!(
            "{}: no .csv or .json barcode files",
            dir.display()
        )));
    }
    Ok(files)
}

fn dist_matrix(dir: &Path, norm: Norm, format: OutputFormat) -> Outcome {
    let files = barcode_files(dir)?;
    let barcodes = files
        .iter()
        .map(|f| read_barcode(f))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    let matrix = metrics::distance_matrix(&barcodes, norm)?;
    let names: Vec<String> = files
        .iter()
        .map(|f| f.file_name().unwrap().to_string_lossy().into_owned())
        .collect();
    Ok(match format {
        OutputFormat::Json => json(&serde_json::json!({ "files": names, "matrix": matrix })),
        OutputFormat::Csv => {
            let mut out = String::from("file");
            for name in &names {
                out.push(',');
                out.push_str(&csv_field(name));
            }
            out.push('\n');
            for (name, row) in names.iter().zip(&matrix) {
                out.push_str(&csv_field(name));
                for d in row {
                    out.push_str(&format!(",{d}"));
                }
                out.push('\n');
            }
            out
        }
    })
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn complex(n: usize) -> Outcome {
    let c = CoxeterComplex::enumerate(n)?;
    Ok(json(&ComplexReport {
        n,
        f_vector: c.f_vector(),
        euler_characteristic: c.euler_characteristic(),
        faces: c.faces(),
        relations: c.covering_relations(),
    }))
}

fn generate(n: usize, seed: u64, strict: bool, format: OutputFormat) -> Outcome {
    if n == 0 {
        return Err(Failure::Usage("--n must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let b = random_barcode(&mut rng, n, strict);
    Ok(match format {
        OutputFormat::Csv => b.to_csv(),
        OutputFormat::Json => b.to_json() + "\n",
    })
}

fn run(cli: Cli) -> Outcome {
    let tol = cli.tol;
    if !(tol.is_finite() && tol >= 0.0) {
        return Err(Failure::Usage(format!(
            "--tol must be finite and >= 0, got {tol}"
        )));
    }
    if cli.cap == 0 {
        return Err(Failure::Usage(
            "the enumeration cap must be at least 1".into(),
        ));
    }
    match cli.command {
        Command::Analyze { file, enumerate_dc } => analyze(&file, tol, cli.cap, enumerate_dc),
        Command::Dist { metric, a, b } => {
            let r =
                metrics::modified_distance(&read_barcode(&a)?, &read_barcode(&b)?, metric.into())?;
            Ok(json(&r))
        }
        Command::DistMatrix {
            metric,
            format,
            dir,
        } => dist_matrix(&dir, metric.into(), format),
        Command::Stratum { file } => Ok(json(&stratum_of(&read_barcode(&file)?, tol))),
        Command::StratumCompare { a, b } => {
            let (a, b) = (read_barcode(&a)?, read_barcode(&b)?);
            if a.len() != b.len() {
                return Err(Error::SizeMismatch {
                    left: a.len(),
                    right: b.len(),
                }
                .into());
            }
            Ok(format!(
                "{}\n",
                compare(&stratum_of(&a, tol), &stratum_of(&b, tol)).as_str()
            ))
        }
        Command::Complex { n } => complex(n),
        Command::Gen {
            n,
            seed,
            strict,
            format,
        } => generate(n, seed, strict, format),
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(out) => {
            let mut stdout = io::stdout().lock();
            if stdout
                .write_all(out.as_bytes())
                .and_then(|_| stdout.flush())
                .is_err()
            {
                return ExitCode::FAILURE;
            }
            ExitCode::SUCCESS
        }
        Err(f) => {
            let report = serde_json::json!({ "error": f.kind(), "message": f.message() });
            eprintln!("{report}");
            ExitCode::FAILURE
        }
    }
}
