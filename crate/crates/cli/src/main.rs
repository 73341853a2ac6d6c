use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use indgrass::extension_ledger::{build_ledger, ledger_tsv, theorem_f_from_ledger, Partition};
use indgrass::quadric::{h_ideal, h_line, BiDegree, FiberPointSet};
use indgrass::ratlinalg::{parse_rational, same_span, Rational};
use indgrass::sampling::{Sampler, DEFAULT_SEED};
use indgrass::segre_curves::{
    chain_of_lines, curve_degree, embed_chain, plucker_curve, plucker_point, same_plucker_point,
    segre_plane, standard_config, two_chain_config, CurveParam,
};
use indgrass::twist_bound::{flag_sections_dim, schur_dimension, sufficiently_twisted, triviality_threshold};
use indgrass::{Error, IndGrassSpec};

#[derive(Parser)]
#[command(name = "indgrass", version, about = "Exact checks for bundles on twisted ind-Grassmannians")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Tsv, global = true)]
    format: Format,
    /// Seed for sampled points and curve parameters.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Tsv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology of line bundles and twisted ideal sheaves on P1 x P1.
    Cohomology {
        #[command(subcommand)]
        what: CohomologyKind,
    },
    /// Extension-bundle ledger for a partition, with sampled points.
    Ledger {
        #[arg(long)]
        partition: String,
    },
    /// Segre curve in G(r, 3r) through the standard configuration.
    Segre {
        #[arg(long)]
        r: usize,
        /// t_2,...,t_r (nonzero rationals); sampled when omitted.
        #[arg(long, allow_hyphen_values = true)]
        t: Option<String>,
    },
    /// Chain of rational normal curves of the given degrees.
    ChainEmbed {
        #[arg(long)]
        degrees: String,
    },
    /// Two Segre curves meeting only at V''.
    TwoChain {
        #[arg(long)]
        r: usize,
    },
    /// Threshold after which the degree inequality forces D_m = 0.
    Bound {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long = "max-m", default_value_t = 20)]
        max_m: u64,
    },
    /// Finite-horizon check of r_m / deg Phi_m -> 0.
    TwistedCheck {
        #[arg(long)]
        spec: PathBuf,
        #[arg(long, default_value = "1/10")]
        epsilon: String,
        #[arg(long = "max-m", default_value_t = 20)]
        max_m: u64,
    },
    /// Dimension of a Schur module, or of the flag-variety section space.
    Schur {
        #[arg(long)]
        n: u64,
        #[arg(long, conflicts_with_all = ["r", "k"])]
        lambda: Option<String>,
        #[arg(long, requires = "k")]
        r: Option<u64>,
        #[arg(long, requires = "r")]
        k: Option<u64>,
    },
}

#[derive(Subcommand)]
enum CohomologyKind {
    Line {
        #[arg(short, allow_negative_numbers = true)]
        a: i64,
        #[arg(short, allow_negative_numbers = true)]
        b: i64,
    },
    Ideal {
        #[arg(long)]
        points: PathBuf,
        #[arg(short, allow_negative_numbers = true)]
        a: i64,
        #[arg(short, allow_negative_numbers = true)]
        b: i64,
    },
}

fn read(path: &Path) -> anyhow::Result<String> {
    std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn parse_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>, Error> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad entry {x:?} in {s:?}"))))
        .collect()
}

fn emit(format: Format, tsv: String, value: serde_json::Value) -> String {
    match format {
        Format::Tsv => tsv,
        Format::Json => serde_json::to_string_pretty(&value).expect("JSON values serialize") + "\n",
    }
}

fn run(cli: Cli) -> anyhow::Result<String> {
    let mut sampler = Sampler::new(cli.seed);
    let fmt = cli.format;
    Ok(match cli.command {
        Command::Cohomology { what } => {
            let (bd, h) = match what {
                CohomologyKind::Line { a, b } => {
                    let bd = BiDegree::new(a, b);
                    (bd, h_line(bd))
                }
                CohomologyKind::Ideal { points, a, b } => {
                    let z = FiberPointSet::from_json(&read(&points)?)?;
                    let bd = BiDegree::new(a, b);
                    (bd, h_ideal(&z, bd)?)
                }
            };
            if !h.is_consistent() {
                return Err(Error::InvariantBreach(format!("inconsistent triple {h}")).into());
            }
            emit(
                fmt,
                format!("twist\th0\th1\th2\tchi\n{bd}\t{h}\n"),
                json!({ "twist": bd, "cohomology": h }),
            )
        }
        Command::Ledger { partition } => {
            let p: Partition = partition.parse()?;
            let z = p.sample_points(&mut sampler);
            let ledger = build_ledger(&p, &z)?;
            let f = theorem_f_from_ledger(&p, &ledger)?;
            let mut tsv = ledger_tsv(&ledger);
            let _ = writeln!(tsv, "h0(F(-1,-1))\t{}", f.h0_f_m1_m1);
            let _ = writeln!(tsv, "h0(F(-1,0))\t{}", f.h0_f_m1_0);
            let _ = writeln!(tsv, "h0(F)\t{}", f.h0_f);
            emit(
                fmt,
                tsv,
                json!({ "points": serde_json::from_str::<serde_json::Value>(&z.to_json())?, "ledger": ledger, "F": f }),
            )
        }
        Command::Segre { r, t } => {
            let cfg = standard_config(r)?;
            let ts: Vec<Rational> = match t {
                Some(s) => s.split(',').map(|x| parse_rational(x.trim())).collect::<Result<_, _>>()?,
                None => (1..r).map(|_| sampler.nonzero_rational()).collect(),
            };
            let pc = plucker_curve(&cfg, &ts)?;
            let degree = curve_degree(&pc);
            let y0 = plucker_point(cfg.v_prime())?;
            let through_y0 = same_plucker_point(&pc.eval(&Rational::from_integer(0.into())), &y0);
            let at_inf = same_span(&segre_plane(&cfg, &ts, &CurveParam::Infinity)?, cfg.v_second())?;
            let lines = chain_of_lines(&cfg)?;
            if degree != r || !through_y0 || !at_inf {
                return Err(Error::InvariantBreach(format!(
                    "Segre curve has degree {degree}, through y0: {through_y0}, V'' at infinity: {at_inf}"
                ))
                .into());
            }
            let t_strs: Vec<String> = ts.iter().map(|x| x.to_string()).collect();
            emit(
                fmt,
                format!(
                    "t: {}\ndegree: {degree}\nthrough y0: yes\nchain of lines: {} lines, path\n",
                    t_strs.join(","),
                    lines.lines.len()
                ),
                json!({ "r": r, "t": t_strs, "degree": degree, "plucker": pc.to_json(), "chain_of_lines": lines.is_path() }),
            )
        }
        Command::ChainEmbed { degrees } => {
            let rep = embed_chain(&parse_list::<u64>(&degrees)?)?;
            if !rep.linearly_normal() || !rep.incidences_ok() {
                return Err(Error::InvariantBreach(format!(
                    "chain spans {} of {} dimensions, incidences ok: {}",
                    rep.span_dim,
                    rep.n + 1,
                    rep.incidences_ok()
                ))
                .into());
            }
            emit(
                fmt,
                format!("span: {}, incidences: ok\n", rep.span_dim),
                serde_json::to_value(&rep)?,
            )
        }
        Command::TwoChain { r } => {
            let tc = two_chain_config(r)?;
            emit(
                fmt,
                format!(
                    "cap: 0\nambient intersection: V'' (dim {})\ncommon points: V'' only\n",
                    tc.ambient_meet_dim
                ),
                json!({ "r": r, "cap_zero": tc.cap_zero, "ambient_meet_dim": tc.ambient_meet_dim, "meet_is_v_second": tc.ambient_meet_is_v_second }),
            )
        }
        Command::Bound { spec, max_m } => {
            let spec = IndGrassSpec::from_json(&read(&spec)?)?;
            let rep = triviality_threshold(&spec, max_m)?;
            emit(fmt, rep.to_tsv(), rep.to_json())
        }
        Command::TwistedCheck { spec, epsilon, max_m } => {
            let spec = IndGrassSpec::from_json(&read(&spec)?)?;
            let v = sufficiently_twisted(&spec, &parse_rational(&epsilon)?, max_m)?;
            let mut tsv = String::from("m\tratio\n");
            for (m, q) in &v.trace {
                let _ = writeln!(tsv, "{m}\t{q}");
            }
            let finite = match v.m0 {
                Some(m0) => format!("holds at horizon {max_m} from m = {m0}"),
                None => format!("fails at horizon {max_m}"),
            };
            let symbolic = match v.symbolic {
                Some(true) => "limit is 0",
                Some(false) => "limit is not 0",
                None => "undecided (explicit list)",
            };
            let _ = writeln!(tsv, "finite: {finite}\nsymbolic: {symbolic}");
            emit(fmt, tsv, serde_json::to_value(&v)?)
        }
        Command::Schur { n, lambda, r, k } => {
            let dim = match (lambda, r, k) {
                (Some(l), None, None) => schur_dimension(&parse_list::<u64>(&l)?, n)?,
                (None, Some(r), Some(k)) => flag_sections_dim(n, r, k)?,
                _ => return Err(Error::InvalidInput("give either --lambda or both --r and --k".into()).into()),
            };
            emit(fmt, format!("dimension: {dim}\n"), json!({ "dimension": dim.to_string() }))
        }
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            match e.downcast_ref::<Error>() {
                Some(err) if err.is_invariant_breach() => ExitCode::from(3),
                _ => ExitCode::from(2),
            }
        }
    }
}
