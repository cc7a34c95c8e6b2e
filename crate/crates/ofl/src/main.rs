//! Command-line front end: series expression evaluation, the prime series,
//! gap probes, pathological-map sampling, and the Cauchy-limit demo.

use std::io::Write as _;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use ofl::cex::PiecewiseLinearMap;
use ofl::cuts::{ivp_failure_witness, sqrt2_convergent_fn, CutSpec};
use ofl::expr;
use ofl::poly::parse_poly;
use ofl::rat::{format_decimal, format_rat, parse_rat, Rat};
use ofl::scott::{gamma_from_cauchy, CauchyFunctional};
use ofl::series::{format_series, parse_series, ComparisonResult, Series};
use ofl::AlgebraicNumber;

fn rat_arg(s: &str) -> Result<Rat, String> {
    parse_rat(s).ok_or_else(|| format!("not a rational number: {s}"))
}

#[derive(Parser)]
#[command(name = "ofl", version, about = "exact arithmetic on truncated series, cuts, and pathological maps")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a series expression.
    Eval {
        expr: String,
        /// Working order for division, sqrt, and negative powers.
        #[arg(long, value_parser = rat_arg)]
        order: Option<Rat>,
    },
    /// Print the prime series 1 + sum of t^(-1/k), k = 1..terms.
    Prime {
        #[arg(long)]
        terms: u32,
        /// Also print its square root.
        #[arg(long)]
        sqrt: bool,
        /// Square the root back and compare.
        #[arg(long)]
        check: bool,
        #[arg(long, value_parser = rat_arg)]
        order: Option<Rat>,
    },
    /// Probe a cut of the rationals.
    Gap {
        #[command(subcommand)]
        which: GapCmd,
    },
    /// Sample a pathological piecewise-linear map and write a CSV.
    Cex(CexArgs),
    /// Finite-horizon limit of a functional Cauchy at infinity.
    ScottDemo {
        /// inv-shift | constant | oscillator
        #[arg(long)]
        functional: String,
        /// Shift series s0 (for inv-shift and constant).
        #[arg(long)]
        target: Option<String>,
        #[arg(long, default_value_t = 16)]
        theta_max: u64,
        /// Comma-separated exponents to track, e.g. "0,1,-1".
        #[arg(long)]
        exponents: String,
        #[arg(long, default_value_t = 4)]
        window: u64,
    },
}

#[derive(Subcommand)]
enum GapCmd {
    /// The cut of rationals below a real algebraic number.
    Algebraic {
        #[arg(long)]
        poly: String,
        /// Which real root (sorted increasingly).
        #[arg(long, default_value_t = 0)]
        root_index: usize,
        /// Translate the cut by this amount.
        #[arg(long, value_parser = rat_arg)]
        shift: Option<Rat>,
        /// Test membership of a rational.
        #[arg(long, value_parser = rat_arg)]
        contains: Option<Rat>,
        /// Decide whether the cut is a gap.
        #[arg(long)]
        is_gap: bool,
        /// Find a regularity witness for --eps.
        #[arg(long)]
        probe_regularity: bool,
        #[arg(long, value_parser = rat_arg)]
        eps: Option<Rat>,
        /// Bracket the supremum to --tol.
        #[arg(long)]
        sup: bool,
        #[arg(long, value_parser = rat_arg)]
        tol: Option<Rat>,
    },
    /// The cut induced by the sqrt(2)-convergent function at a horizon.
    Psi {
        #[arg(long, default_value_t = 50)]
        horizon: u32,
        #[arg(long, value_parser = rat_arg)]
        contains: Option<Rat>,
        #[arg(long)]
        sup: bool,
        #[arg(long, value_parser = rat_arg)]
        tol: Option<Rat>,
    },
    /// Endpoint signs and rational roots of a polynomial on [a, b].
    Ivp {
        #[arg(long)]
        poly: String,
        #[arg(long, value_parser = rat_arg)]
        a: Rat,
        #[arg(long, value_parser = rat_arg)]
        b: Rat,
    },
}

#[derive(Args)]
struct CexArgs {
    /// thm12 | thm21i | thm21ii
    kind: String,
    #[arg(long, value_parser = rat_arg)]
    a: Rat,
    #[arg(long, value_parser = rat_arg)]
    b: Rat,
    /// Fixed point (thm12 and thm21ii).
    #[arg(long, value_parser = rat_arg)]
    c: Option<Rat>,
    #[arg(long, default_value_t = 1000)]
    samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// CSV destination; "-" writes to stdout.
    #[arg(long)]
    out: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(()) => ExitCode::SUCCESS,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn order_or_default(order: Option<Rat>) -> Rat {
    order.unwrap_or_else(expr::default_order)
}

fn run(cmd: Cmd) -> Result<(), String> {
    match cmd {
        Cmd::Eval { expr: text, order } => {
            let s = expr::eval(&text, &order_or_default(order)).map_err(|e| e.to_string())?;
            println!("{}", format_series(&s));
            Ok(())
        }
        Cmd::Prime {
            terms,
            sqrt,
            check,
            order,
        } => {
            let p = Series::pitteloud_prime(terms);
            println!("prime={}", format_series(&p));
            if sqrt || check {
                let order = order_or_default(order);
                let root = p.sqrt(&order).map_err(|e| e.to_string())?;
                if sqrt {
                    println!("sqrt={}", format_series(&root));
                }
                if check {
                    let squared = root.mul(&root);
                    let ok = matches!(
                        squared.compare(&p),
                        ComparisonResult::Equal | ComparisonResult::EqualUpToTruncation(_)
                    );
                    println!("check: {}", if ok { "ok" } else { "mismatch" });
                    if !ok {
                        return Err("square of sqrt does not match".into());
                    }
                }
            }
            Ok(())
        }
        Cmd::Gap { which } => run_gap(which),
        Cmd::Cex(args) => run_cex(args),
        Cmd::ScottDemo {
            functional,
            target,
            theta_max,
            exponents,
            window,
        } => {
            let s0 = || -> Result<Series, String> {
                let text = target
                    .as_deref()
                    .ok_or("--target is required for this functional")?;
                parse_series(text).map_err(|e| e.to_string())
            };
            let f = match functional.as_str() {
                "inv-shift" => CauchyFunctional::inv_shift(s0()?),
                "constant" => CauchyFunctional::constant(s0()?),
                "oscillator" => CauchyFunctional::oscillator(),
                other => return Err(format!("unknown functional: {other}")),
            };
            let exps: Result<Vec<Rat>, String> = exponents
                .split(',')
                .map(|s| rat_arg(s.trim()))
                .collect();
            let report = gamma_from_cauchy(&f, &exps?, theta_max, window)
                .map_err(|e| e.to_string())?;
            println!("functional={}", f.description());
            println!("{report}");
            Ok(())
        }
    }
}

fn run_gap(cmd: GapCmd) -> Result<(), String> {
    match cmd {
        GapCmd::Algebraic {
            poly,
            root_index,
            shift,
            contains,
            is_gap,
            probe_regularity,
            eps,
            sup,
            tol,
        } => {
            let p = parse_poly(&poly).map_err(|e| e.to_string())?;
            let r = AlgebraicNumber::root_of(p, root_index).map_err(|e| e.to_string())?;
            let mut cut = CutSpec::algebraic(r);
            if let Some(shift) = shift {
                cut = cut.translate(shift);
            }
            report_cut(&cut, contains, is_gap, probe_regularity, eps, sup, tol)
        }
        GapCmd::Psi {
            horizon,
            contains,
            sup,
            tol,
        } => {
            let cut = CutSpec::function(sqrt2_convergent_fn(), horizon);
            report_cut(&cut, contains, false, false, None, sup, tol)
        }
        GapCmd::Ivp { poly, a, b } => {
            if a >= b {
                return Err("need a < b".into());
            }
            let p = parse_poly(&poly).map_err(|e| e.to_string())?;
            println!("{}", ivp_failure_witness(&p, &a, &b));
            Ok(())
        }
    }
}

const BISECTION_BUDGET: u32 = 4096;

fn report_cut(
    cut: &CutSpec,
    contains: Option<Rat>,
    is_gap: bool,
    probe_regularity: bool,
    eps: Option<Rat>,
    sup: bool,
    tol: Option<Rat>,
) -> Result<(), String> {
    if let Some(q) = contains {
        let m = cut.contains(&q).map_err(|e| e.to_string())?;
        println!("contains[{}]={}", format_rat(&q), m);
    }
    if is_gap {
        println!("is_gap={}", cut.is_gap().map_err(|e| e.to_string())?);
    }
    if probe_regularity {
        let eps = eps.ok_or("--probe-regularity requires --eps")?;
        let w = cut
            .regularity_probe(&eps, BISECTION_BUDGET)
            .map_err(|e| e.to_string())?;
        println!(
            "regularity_witness: eps={} x={}",
            format_rat(&w.epsilon),
            format_rat(&w.x)
        );
    }
    if sup {
        let tol = tol.ok_or("--sup requires --tol")?;
        let (m, n) = cut
            .sup_approx(&tol, BISECTION_BUDGET)
            .map_err(|e| e.to_string())?;
        println!("sup_lo={}", format_rat(&m));
        println!("sup_hi={}", format_rat(&n));
    }
    Ok(())
}

fn run_cex(args: CexArgs) -> Result<(), String> {
    let need_c = || args.c.clone().ok_or("this map kind requires --c");
    let map = match args.kind.as_str() {
        "thm12" => PiecewiseLinearMap::theorem12(args.a.clone(), args.b.clone(), need_c()?),
        "thm21i" => PiecewiseLinearMap::theorem21i(args.a.clone(), args.b.clone()),
        "thm21ii" => PiecewiseLinearMap::theorem21ii(args.a.clone(), args.b.clone(), need_c()?),
        other => return Err(format!("unknown map kind: {other}")),
    }
    .map_err(|e| e.to_string())?;

    if let Some(out) = &args.out {
        let points = ofl::cex::sample_domain(&map, args.samples, args.seed);
        let mut rows = String::from("x,f_x,x_dec,f_dec\n");
        for x in &points {
            let y = map.eval(x).map_err(|e| e.to_string())?;
            rows.push_str(&format!(
                "{},{},{},{}\n",
                format_rat(x),
                format_rat(&y),
                format_decimal(x, 20),
                format_decimal(&y, 20)
            ));
        }
        if out == "-" {
            print!("{rows}");
        } else {
            write_atomically(out, rows.as_bytes()).map_err(|e| e.to_string())?;
        }
    }

    let report = map
        .probe_pathologies(args.samples, args.seed)
        .map_err(|e| e.to_string())?;
    print!("{report}");
    Ok(())
}

/// Writes next to the destination and renames, so no partial file survives
/// an error.
fn write_atomically(path: &str, bytes: &[u8]) -> std::io::Result<()> {
    let dest = std::path::Path::new(path);
    let dir = dest.parent().filter(|p| !p.as_os_str().is_empty());
    let tmp = match dir {
        Some(d) => d.join(format!(
            ".{}.tmp",
            dest.file_name().unwrap_or_default().to_string_lossy()
        )),
        None => std::path::PathBuf::from(format!(".{path}.tmp")),
    };
    {
        let mut f = std::fs::File::create(&tmp)?;
        f.write_all(bytes)?;
        f.sync_all()?;
    }
    std::fs::rename(&tmp, dest)
}
