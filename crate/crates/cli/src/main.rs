use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use spectral_core::algebra::{RingMode, Scalar};
use spectral_core::bridge::{elsv_hurwitz, vertex_class, wp_volume, Partition};
use spectral_core::curve::load_curve_spec;
use spectral_core::harness::{crosscheck, cut_join_oracle, run_fixtures};
use spectral_core::intersect::cache::{clear_memory, file_stats, load_cache, memory_stats, save_cache, LoadOutcome};
use spectral_core::intersect::{boundary_class_correlator, hodge_class_correlator, kappa_psi_correlator, Prefactor};
use spectral_core::toprec::{compute_fg, correlator, sorted_tuples, CorrelatorTensor};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

/// Exact topological recursion and intersection numbers.
#[derive(Parser)]
#[command(name = "spectral", version)]
struct Cli {
    /// Intersection-number cache: loaded before the command and written back after it.
    #[arg(long, global = true, value_name = "PATH")]
    cache: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Correlator tensor W_n^(g) of a curve-spec file, in the dxi basis.
    Correlators {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Symplectic invariant F_g of a curve-spec file.
    Fg {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        g: usize,
    },
    /// <kappa_k1 .. kappa_km tau_d1 .. tau_dn>_g; list every tau_0 explicitly.
    Intersect {
        #[arg(long)]
        g: usize,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        psi: Vec<usize>,
        #[arg(long, value_delimiter = ',', num_args = 0..)]
        kappa: Vec<usize>,
    },
    /// Weil-Petersson volume polynomial V_{g,n}(L).
    WpVolumes {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Simple Hurwitz number through ELSV.
    Hurwitz {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        mu: Partition,
        /// Also count transposition factorizations and compare.
        #[arg(long)]
        oracle: bool,
    },
    /// Framed-vertex class data and correlators, checked against the triple Hodge integral.
    Vertex {
        /// Rational number, or a rational function of the formal q.
        #[arg(long, allow_hyphen_values = true)]
        framing: String,
        #[arg(long)]
        g: usize,
        #[arg(long)]
        n: usize,
    },
    /// Recursion against the intersection formula for every 2g-2+n <= max-chi.
    Crosscheck {
        #[arg(long)]
        curve: PathBuf,
        #[arg(long)]
        max_chi: usize,
        #[arg(long)]
        verbose: bool,
    },
    /// Evaluate the fixture corpus.
    Fixtures,
    /// Inspect or remove a cache file.
    Cache {
        #[arg(value_enum)]
        action: CacheAction,
        #[arg(long)]
        path: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum CacheAction {
    Stats,
    Clear,
}

fn stable(g: usize, n: usize) -> Result<()> {
    if 2 * g + n < 3 {
        bail!("(g, n) = ({g}, {n}) is unstable");
    }
    Ok(())
}

fn write_tensor(t: &CorrelatorTensor, format: Format, out: Option<&Path>) -> Result<()> {
    let text = match format {
        Format::Json => t.to_json() + "\n",
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let mut header: Vec<String> = (1..=t.n()).map(|i| format!("d{i}")).collect();
            header.push("value".into());
            w.write_record(&header)?;
            for (k, v) in t.entries() {
                let mut row: Vec<String> = k.iter().map(|d| d.to_string()).collect();
                row.push(v.to_canonical());
                w.write_record(&row)?;
            }
            String::from_utf8(w.into_inner()?)?
        }
    };
    match out {
        Some(p) => std::fs::write(p, text).with_context(|| format!("writing {}", p.display()))?,
        None => std::io::stdout().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn vertex(framing: &str, g: usize, n: usize) -> Result<bool> {
    stable(g, n)?;
    if n == 0 {
        bail!("the vertex correlators need n >= 1");
    }
    let f = Scalar::parse(framing, &RingMode::RatFun).map_err(anyhow::Error::msg)?;
    let dim = 3 * g + n - 3;
    let data = vertex_class(&f, dim.max(1))?;
    println!("provenance {}", data.provenance);
    match &data.class.prefactor {
        Prefactor::P(p) => println!("p = {p}"),
        Prefactor::PSquared(p2) => println!("p^2 = {p2}"),
    }
    for (i, t) in data.class.times().iter().enumerate().filter(|(_, t)| !t.is_zero()) {
        println!("t~{} = {t}", i + 1);
    }
    for (k, l, b) in data.class.bhat_entries() {
        println!("B^[{k},{l}] = {b}");
    }
    let class = data.weighted();
    let alphas = [Scalar::one(), f.clone(), -&f - Scalar::one()];
    let mut ok = true;
    for key in sorted_tuples(n, dim) {
        let v = boundary_class_correlator(g, &key, &class);
        let h = hodge_class_correlator(g, &key, &alphas)?;
        let mark = if v == h { "" } else { "  MISMATCH with the Hodge integral" };
        ok &= v == h;
        println!("{key:?} {v}{mark}");
    }
    Ok(ok)
}

fn cache_command(action: CacheAction, path: &Path) -> Result<bool> {
    match action {
        CacheAction::Stats => {
            let mem = memory_stats();
            println!("in memory: {} psi, {} kappa", mem.psi, mem.kappa);
            match file_stats(path) {
                LoadOutcome::Missing => println!("{}: no such file", path.display()),
                LoadOutcome::Loaded(s) => println!("{}: {} psi, {} kappa", path.display(), s.psi, s.kappa),
                LoadOutcome::Discarded(why) => {
                    println!("{}: unusable ({why})", path.display());
                    return Ok(false);
                }
            }
        }
        CacheAction::Clear => {
            clear_memory();
            match std::fs::remove_file(path) {
                Ok(()) => println!("removed {}", path.display()),
                Err(e) if e.kind() == std::io::ErrorKind::NotFound => println!("{}: nothing to remove", path.display()),
                Err(e) => return Err(e).with_context(|| format!("removing {}", path.display())),
            }
        }
    }
    Ok(true)
}

fn execute(command: Command) -> Result<bool> {
    match command {
        Command::Correlators { curve, g, n, out, format } => {
            let c = load_curve_spec(&curve)?;
            let t = if n == 0 {
                stable(g, 0)?;
                let mut t = CorrelatorTensor::new(g, 0);
                t.set(&[], compute_fg(&c, g)?);
                t
            } else {
                (*correlator(&c, g, n)?).clone()
            };
            write_tensor(&t, format, out.as_deref())?;
        }
        Command::Fg { curve, g } => {
            let c = load_curve_spec(&curve)?;
            println!("{}", compute_fg(&c, g)?);
        }
        Command::Intersect { g, psi, kappa } => {
            stable(g, psi.len())?;
            println!("{}", kappa_psi_correlator(g, &psi, &kappa)?);
        }
        Command::WpVolumes { g, n, json } => {
            let v = wp_volume(g, n)?;
            if json {
                println!("{}", v.to_json());
            } else {
                println!("{v}");
            }
        }
        Command::Hurwitz { g, mu, oracle } => {
            let h = elsv_hurwitz(g, &mu)?;
            println!("{h}");
            if oracle {
                let o = cut_join_oracle(g, &mu)?;
                println!("oracle {o}");
                if o != h {
                    eprintln!("ELSV and the transposition count disagree");
                    return Ok(false);
                }
            }
        }
        Command::Vertex { framing, g, n } => return vertex(&framing, g, n),
        Command::Crosscheck { curve, max_chi, verbose } => {
            let c = load_curve_spec(&curve)?;
            let r = crosscheck(&c, max_chi)?;
            print!("{}", r.render(verbose));
            return Ok(r.passed());
        }
        Command::Fixtures => {
            let r = run_fixtures();
            print!("{}", r.render());
            return Ok(r.passed());
        }
        Command::Cache { action, path } => return cache_command(action, &path),
    }
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let keep_cache = !matches!(cli.command, Command::Cache { .. });
    if let (Some(p), true) = (&cli.cache, keep_cache) {
        if let LoadOutcome::Discarded(why) = load_cache(p) {
            eprintln!("ignoring cache {}: {why}", p.display());
        }
    }
    let result = execute(cli.command);
    if let (Some(p), true) = (&cli.cache, keep_cache) {
        if let Err(e) = save_cache(p) {
            eprintln!("could not write cache {}: {e}", p.display());
        }
    }
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
