use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use liouville::points::parse_points;
use liouville::report::Report;
use liouville::{parse_scenario, run_scenario, verify, Settings};
use liouville_core::geom::ChartId;
use liouville_core::kirby::{branched_cover_diagram, lens_l21_base, serialize_diagram, surgery_cobordism_diagram};
use liouville_core::surgery::{
    branched_cover, catalog_M_nk, contact_surgery, fibered_manifold, open_book_descriptor, surgery_compose,
    Composition, Hypersurface, MonodromyWord, OpenBook, PageSpec,
};

/// Contact-surgery calculus on open books, with numerical checks of the
/// model forms and generalized Dehn twists.
#[derive(Parser)]
#[command(name = "liouville", version)]
struct Cli {
    /// Seed for every random sample.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Replace the residual tolerances of numerical checks.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Replace the sample counts of numerical checks.
    #[arg(long, global = true)]
    samples: Option<usize>,
    /// Output file; for `run`, the directory receiving diagram files.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Numerical checks.
    #[command(subcommand)]
    Verify(VerifyCmd),
    /// Combine successive 1/k surgeries on push-offs.
    Compose {
        #[arg(required = true, allow_negative_numbers = true)]
        ks: Vec<i64>,
    },
    /// Contact (1/k)-surgery on a sphere of M_{n,m}; prints the descriptor.
    Surgery {
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        /// Monodromy exponent m of the manifold operated on.
        #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
        m: i64,
        #[arg(long, default_value = "L")]
        sphere: String,
        #[arg(long, default_value = "I")]
        param: String,
    },
    /// Cyclic cover of an open book branched along its binding.
    Cover {
        #[command(flatten)]
        ob: OpenBookArgs,
        #[arg(long)]
        q: u32,
    },
    /// The manifold M_(page, phi, psi).
    Fibered {
        #[arg(long, default_value = "genus-one")]
        page: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        psi: String,
    },
    /// Kirby diagrams as text.
    #[command(subcommand)]
    Kirby(KirbyCmd),
    /// Replay a scenario file.
    Run { file: PathBuf },
}

#[derive(Subcommand)]
enum VerifyCmd {
    /// Model forms and the rounding curve, or a catalog form on given points.
    Forms {
        /// Catalog form, e.g. `weinstein` or `handle_form:1`.
        #[arg(long, requires_all = ["chart", "points"])]
        form: Option<String>,
        /// Chart, e.g. `handle-convex:2:1`.
        #[arg(long)]
        chart: Option<String>,
        /// File with one point per line.
        #[arg(long)]
        points: Option<PathBuf>,
    },
    /// The generalized Dehn twist and, for n = 2, 6, its square isotopy.
    Twist {
        #[arg(long = "n", default_values_t = [1usize, 2, 3, 6])]
        ns: Vec<usize>,
    },
}

#[derive(Subcommand)]
enum KirbyCmd {
    /// Cobordism to the q-fold cyclic branched cover along a page.
    Cover {
        #[arg(long, default_value = "genus-one")]
        page: String,
        #[arg(long)]
        q: u32,
        /// `l21` or `none`.
        #[arg(long, default_value = "l21")]
        base: String,
    },
    /// Cobordism of contact (1/k)-surgery on the standard unknot.
    Surgery {
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
    },
}

#[derive(Args)]
struct OpenBookArgs {
    /// `genus-one`, `dstar:<n>` or `ball:<n>`.
    #[arg(long, default_value = "genus-one")]
    page: String,
    /// Monodromy such as `a^2 b^-1`, or `id`.
    #[arg(long, default_value = "id")]
    word: String,
}

fn page(name: &str) -> Result<PageSpec> {
    let num = |s: &str| s.parse::<u32>().with_context(|| format!("bad page {name}"));
    Ok(match name.split_once(':') {
        None if name == "genus-one" => PageSpec::genus_one(),
        Some(("dstar", n)) => PageSpec::cotangent_disk(num(n)?)?,
        Some(("ball", n)) => PageSpec::ball(num(n)?)?,
        _ => bail!("unknown page {name}; use genus-one, dstar:<n> or ball:<n>"),
    })
}

fn word(s: &str) -> Result<MonodromyWord> {
    s.parse().with_context(|| format!("bad word {s:?}"))
}

fn emit(text: &str, out: Option<&Path>) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit_report(rep: &Report, out: Option<&Path>) -> Result<u8> {
    emit(&rep.to_text(), out)?;
    Ok(u8::from(rep.failed()))
}

fn execute(cli: Cli) -> Result<u8> {
    let settings = Settings {
        seed: cli.seed,
        samples: cli.samples,
        tol: cli.tol,
    };
    let out = cli.out.as_deref();
    match cli.command {
        Command::Verify(VerifyCmd::Forms {
            form: Some(form),
            chart,
            points,
        }) => {
            let chart: ChartId = chart.expect("required by clap").parse()?;
            let path = points.expect("required by clap");
            let text = fs::read_to_string(&path).with_context(|| format!("reading {}", path.display()))?;
            let pts = parse_points(&text, chart.ambient_dim()).with_context(|| path.display().to_string())?;
            emit_report(&verify::contact_on_points(&form, chart, &pts)?, out)
        }
        Command::Verify(VerifyCmd::Forms { .. }) => emit_report(&verify::forms_all(&settings)?, out),
        Command::Verify(VerifyCmd::Twist { ns }) => {
            let mut rep = Report::new();
            for n in ns {
                if n == 0 {
                    bail!("n must be positive");
                }
                rep.extend(verify::twist_all(n, &settings)?);
            }
            emit_report(&rep, out)
        }
        Command::Compose { ks } => {
            let text = match surgery_compose(&ks)? {
                Composition::Single(k) if k == 1 || k == -1 => format!("{k}\n"),
                Composition::Single(k) => format!("1/{k}\n"),
                Composition::NoSurgery => "no surgery\n".to_string(),
            };
            emit(&text, out)?;
            Ok(0)
        }
        Command::Surgery { n, k, m, sphere, param } => {
            let d = contact_surgery(&catalog_M_nk(n, m)?, &sphere, k, &param)?;
            emit(&(d.to_text() + "\n"), out)?;
            Ok(0)
        }
        Command::Cover { ob, q } => {
            let d = open_book_descriptor(OpenBook::new(page(&ob.page)?, word(&ob.word)?)?)?;
            let c = branched_cover(&d, &Hypersurface::Page, q)?;
            emit(&(c.to_text() + "\n"), out)?;
            Ok(0)
        }
        Command::Fibered { page: p, phi, psi } => {
            let d = fibered_manifold(&page(&p)?, &word(&phi)?, &word(&psi)?)?;
            emit(&(d.to_text() + "\n"), out)?;
            Ok(0)
        }
        Command::Kirby(k) => {
            let d = match k {
                KirbyCmd::Cover { page: p, q, base } => {
                    let base = match base.as_str() {
                        "l21" => lens_l21_base(),
                        "none" => Vec::new(),
                        _ => bail!("base must be l21 or none"),
                    };
                    branched_cover_diagram(&page(&p)?, &base, q)?
                }
                KirbyCmd::Surgery { k } => surgery_cobordism_diagram(k)?,
            };
            emit(&serialize_diagram(&d), out)?;
            Ok(0)
        }
        Command::Run { file } => {
            let text = fs::read_to_string(&file).with_context(|| format!("reading {}", file.display()))?;
            let scenario = parse_scenario(&text).map_err(|e| anyhow::anyhow!("{}:{e}", file.display()))?;
            let res = run_scenario(&scenario, &settings).map_err(|e| anyhow::anyhow!("{}:{e}", file.display()))?;
            if let Some(dir) = out {
                fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
                for (name, body) in &res.files {
                    let p = dir.join(name);
                    fs::write(&p, body).with_context(|| format!("writing {}", p.display()))?;
                }
            }
            print!("{}", res.report.to_text());
            Ok(res.exit_code() as u8)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
