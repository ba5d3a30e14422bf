use std::fs;
use std::io::Write;
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use split_spline::{
    hermite_interpolate, quasi_interpolate, Basis64, FunctionOracle, HermiteData64, MultiIndex, QiKind, Spline64,
};
use split_spline_harness::data_file::read_hermite_data;
use split_spline_harness::report::{to_csv, to_markdown};
use split_spline_harness::{data_count, run_experiment, ExperimentConfig, OutputFormat, PhiPattern, TestFunction};

/// Hermite splines on refined partitions, their B-spline-like basis and quasi-interpolants.
///
/// Sampled values at a shared breakpoint come from the piece on its left,
/// except at the left end of the domain.
#[derive(Parser)]
#[command(name = "split-spline", version, about, long_about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Hermite interpolant of a test function or of a data file, sampled.
    Interp {
        #[command(flatten)]
        setup: Setup,
        /// CSV with header `vertex_index,deriv_order,value`.
        #[arg(long)]
        data: Option<PathBuf>,
    },
    /// One quasi-interpolant, sampled along with the function and the error.
    Qi {
        #[command(flatten)]
        setup: Setup,
    },
    /// Errors and convergence orders over a sequence of refinements.
    Convergence {
        #[command(flatten)]
        setup: Setup,
    },
    /// Samples of every basis function, or their Bernstein ordinates.
    BasisDump {
        #[command(flatten)]
        setup: Setup,
        #[arg(long)]
        ordinates: bool,
    },
    /// Space dimension and operator data counts for each n.
    Dim {
        #[command(flatten)]
        setup: Setup,
    },
}

#[derive(Args)]
struct Setup {
    /// JSON experiment configuration; flags given on the command line take precedence.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long, num_args = 2, value_names = ["A", "B"], allow_negative_numbers = true)]
    interval: Option<Vec<f64>>,
    #[arg(long, value_delimiter = ',')]
    n: Option<Vec<usize>>,
    /// alternating:3,4 | constant:K | list:K0,K1,...
    #[arg(long)]
    phi: Option<PhiPattern>,
    /// differential | point-value | polarization
    #[arg(long)]
    kind: Option<QiKind>,
    /// f1 | f2 | f3 | g1 | g2 | g3
    #[arg(long)]
    function: Option<TestFunction>,
    /// Equally spaced sample points, endpoints included [default: 201]
    #[arg(long)]
    samples: Option<usize>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<OutputFormat>,
}

impl Setup {
    fn resolve(&self) -> Result<ExperimentConfig> {
        let mut config = match &self.config {
            Some(path) => {
                let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
                serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?
            }
            None => ExperimentConfig::alternating_3_4(QiKind::Differential, TestFunction::F1, vec![16]),
        };
        if let Some(v) = &self.interval {
            config.interval = [v[0], v[1]];
        }
        if let Some(n) = &self.n {
            config.n = n.clone();
        }
        if let Some(phi) = &self.phi {
            config.phi = phi.clone();
        }
        if let Some(kind) = self.kind {
            config.kind = kind;
        }
        if let Some(function) = self.function {
            config.function = function;
        }
        if let Some(samples) = self.samples {
            config.samples = samples;
        }
        if let Some(out) = &self.out {
            config.out = Some(out.clone());
        }
        if let Some(format) = self.format {
            config.format = format;
        }
        config.validate()?;
        Ok(config)
    }
}

fn single_n(config: &ExperimentConfig) -> Result<usize> {
    match config.n.as_slice() {
        [n] => Ok(*n),
        other => bail!("this subcommand takes a single n, got {other:?}"),
    }
}

fn emit(config: &ExperimentConfig, text: &str) -> Result<()> {
    match &config.out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).context("writing to stdout"),
    }
}

fn sample_points(config: &ExperimentConfig) -> Vec<f64> {
    let [a, b] = config.interval;
    let last = config.samples - 1;
    (0..config.samples).map(|l| if l == last { b } else { a + (b - a) * l as f64 / last as f64 }).collect()
}

fn sampled_csv(config: &ExperimentConfig, spline: &Spline64, f: Option<&TestFunction>) -> Result<String> {
    let mut out = String::from(if f.is_some() { "x,value,f,error\n" } else { "x,value\n" });
    for x in sample_points(config) {
        let value = spline.value(x)?;
        match f {
            Some(f) => {
                let exact = FunctionOracle::eval(f, x);
                out.push_str(&format!("{x:e},{value:e},{exact:e},{:e}\n", (value - exact).abs()));
            }
            None => out.push_str(&format!("{x:e},{value:e}\n")),
        }
    }
    Ok(out)
}

fn interp(config: &ExperimentConfig, data: Option<&PathBuf>) -> Result<String> {
    let partition = config.partition(single_n(config)?)?;
    let hermite = match data {
        Some(path) => {
            let file = fs::File::open(path).with_context(|| format!("opening {}", path.display()))?;
            read_hermite_data(file, &partition)?
        }
        None => {
            let f = config.function;
            let rows = (0..=partition.n())
                .map(|i| (0..partition.phi()[i]).map(|j| f.eval(partition.vertex(i), j)).collect())
                .collect::<std::result::Result<Vec<Vec<f64>>, _>>()?;
            HermiteData64::new(rows)
        }
    };
    let spline = hermite_interpolate(&partition, &hermite)?;
    sampled_csv(config, &spline, data.is_none().then_some(&config.function))
}

fn qi(config: &ExperimentConfig) -> Result<String> {
    let basis = Basis64::new(&config.partition(single_n(config)?)?)?;
    let spline = quasi_interpolate(&basis, config.kind, &config.function)?;
    sampled_csv(config, &spline, Some(&config.function))
}

fn convergence(config: &ExperimentConfig) -> Result<String> {
    let rows = run_experiment(config)?;
    for pair in rows.windows(2) {
        if pair[1].error >= pair[0].error {
            eprintln!("warning: error did not decrease from n={} to n={}", pair[0].n, pair[1].n);
        }
    }
    Ok(match config.format {
        OutputFormat::Csv => to_csv(&rows),
        OutputFormat::Markdown => to_markdown(config, &rows),
    })
}

fn basis_dump(config: &ExperimentConfig, ordinates: bool) -> Result<String> {
    let basis = Basis64::new(&config.partition(single_n(config)?)?)?;
    let mut out = String::new();
    if ordinates {
        out.push_str("vertex_index,alpha1,alpha2,piece,k,ordinate\n");
        for (i, alpha, spline) in basis.iter() {
            for (piece_index, piece) in spline.pieces().iter().enumerate() {
                for (k, c) in piece.ordinates().iter().enumerate() {
                    out.push_str(&format!("{i},{},{},{piece_index},{k},{c:e}\n", alpha.a1, alpha.a2));
                }
            }
        }
    } else {
        let xs = sample_points(config);
        out.push_str("vertex_index,alpha1,alpha2,x,value\n");
        for (i, alpha, spline) in basis.iter() {
            let MultiIndex { a1, a2 } = alpha;
            for &x in &xs {
                out.push_str(&format!("{i},{a1},{a2},{x:e},{:e}\n", spline.value(x)?));
            }
        }
    }
    Ok(out)
}

fn dim(config: &ExperimentConfig) -> Result<String> {
    let mut table = vec![vec!["n".to_string(), "dimension".into()]];
    table[0].extend(QiKind::ALL.iter().map(|k| k.to_string()));
    for &n in &config.n {
        let mut row = vec![n.to_string(), config.partition(n)?.dimension().to_string()];
        for kind in QiKind::ALL {
            let probe = ExperimentConfig { kind, ..config.clone() };
            row.push(data_count(&probe, n).map(|c| c.to_string()).unwrap_or_else(|_| "-".into()));
        }
        table.push(row);
    }
    Ok(match config.format {
        OutputFormat::Csv => table.iter().map(|r| r.join(",") + "\n").collect(),
        OutputFormat::Markdown => {
            let mut out = format!("| {} |\n|{}\n", table[0].join(" | "), "---|".repeat(table[0].len()));
            for r in &table[1..] {
                out.push_str(&format!("| {} |\n", r.join(" | ")));
            }
            out
        }
    })
}

fn main() -> Result<()> {
    let cli = Cli::parse();
    let (config, text) = match &cli.command {
        Command::Interp { setup, data } => {
            let config = setup.resolve()?;
            let text = interp(&config, data.as_ref())?;
            (config, text)
        }
        Command::Qi { setup } => {
            let config = setup.resolve()?;
            let text = qi(&config)?;
            (config, text)
        }
        Command::Convergence { setup } => {
            let config = setup.resolve()?;
            let text = convergence(&config)?;
            (config, text)
        }
        Command::BasisDump { setup, ordinates } => {
            let config = setup.resolve()?;
            let text = basis_dump(&config, *ordinates)?;
            (config, text)
        }
        Command::Dim { setup } => {
            let config = setup.resolve()?;
            let text = dim(&config)?;
            (config, text)
        }
    };
    emit(&config, &text)
}
