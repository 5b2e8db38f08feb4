//! `hitlab` — a workbench for the mod-2 hit problem: admissible bases,
//! Steenrod reductions, doubling maps, symmetry invariants, and a verifier
//! for the published tables.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use hitlab_core::action::{invariants, invariants_lifted, Group};
use hitlab_core::arith::{alpha, mu, mu_decomposition, t_threshold, tower_degree, zeta};
use hitlab_core::hit::{EngineOptions, Quotient};
use hitlab_core::kameko::{check_stabilization, KamekoMap};
use hitlab_core::mono::{Monomial, Part, Polynomial};
use hitlab_core::steenrod::sq;

use hitlab_cli::output::{emit_json, print_csv, Format};
use hitlab_cli::verify::Status;
use hitlab_cli::{
    cache, ensure_budget, monomial_rows, parse_degrees, parse_weight, polynomial_rows,
    verify,
};

#[derive(Parser)]
#[command(
    name = "hitlab",
    version,
    about = "Hit-problem workbench: admissible bases over the Steenrod algebra at p = 2"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,

    /// Directory for cached eliminations (HITLAB_CACHE works too).
    #[arg(long, global = true, value_name = "DIR")]
    cache_dir: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true, value_name = "N")]
    threads: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Allow extended-tier instances (degree-35 scale; budget < 4 GiB).
    #[arg(long, global = true)]
    extended: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Admissible monomials of one degree (optionally one part or stratum).
    Basis(BasisArgs),
    /// Dimension table over a degree range, with per-weight breakdown.
    Dim(DimArgs),
    /// Invariants of the quotient under the symmetry action.
    Invariants(InvariantsArgs),
    /// The squaring map down from degree 2d + k, or its whole tower.
    Kameko(KamekoArgs),
    /// Numeric invariants of a degree: alpha, zeta, mu, spike decomposition.
    Mu { n: u64 },
    /// The stabilization threshold t(k, d) and the degrees of its tower.
    Tkd {
        k: u32,
        d: u64,
        /// How many tower levels to print.
        #[arg(long, default_value_t = 6, value_name = "S")]
        levels: u32,
    },
    /// Apply a Steenrod square to a polynomial.
    Steenrod {
        /// Operation degree i of Sq^i.
        i: u64,
        /// Polynomial, e.g. "x1^2 x2 + x3^3" or "(2,1,0) + (0,0,3)".
        poly: String,
        #[arg(long)]
        k: usize,
    },
    /// Decide whether a homogeneous polynomial is hit; print its residue.
    CheckHit {
        poly: String,
        #[arg(long)]
        k: usize,
    },
    /// Recompute the published tables and diff them, exactly.
    Verify {
        /// Only targets whose id contains this substring.
        filter: Option<String>,
    },
    /// Pre-compute, list, or clear cached eliminations.
    Cache {
        #[command(subcommand)]
        action: CacheCmd,
    },
}

#[derive(Args)]
struct BasisArgs {
    k: usize,
    degree: u64,
    /// Restrict to one weight vector, e.g. --weight 3,2,2.
    #[arg(long)]
    weight: Option<String>,
    #[arg(long, value_enum, default_value_t = PartArg::All)]
    part: PartArg,
    /// Print only the count.
    #[arg(long)]
    count_only: bool,
}

#[derive(Args)]
struct DimArgs {
    k: usize,
    /// One degree, a comma list, or an inclusive range like 1..20.
    degrees: String,
}

#[derive(Args)]
struct InvariantsArgs {
    k: usize,
    degree: u64,
    #[arg(long, value_enum, default_value_t = GroupArg::Gl)]
    group: GroupArg,
    /// Solve in one weight stratum instead of the whole degree.
    #[arg(long)]
    weight: Option<String>,
    /// Assemble through the squaring map (degree must be of the form
    /// 2d + k) instead of solving at full width; same answer, less work.
    #[arg(long)]
    lifted: bool,
}

#[derive(Args)]
struct KamekoArgs {
    k: usize,
    /// Target degree d; the map comes down from 2d + k.
    d: u64,
    /// Walk the whole tower up to this level and report stabilization.
    #[arg(long, value_name = "S_MAX")]
    tower: Option<u32>,
}

#[derive(Subcommand)]
enum CacheCmd {
    /// Build and store eliminations for the given degrees.
    Warm { k: usize, degrees: String },
    /// Remove stored eliminations (all of them by default).
    Evict {
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        degree: Option<u64>,
    },
    /// List stored eliminations with their keys and ranks.
    Inspect,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PartArg {
    All,
    Zero,
    Positive,
}

impl From<PartArg> for Part {
    fn from(p: PartArg) -> Part {
        match p {
            PartArg::All => Part::All,
            PartArg::Zero => Part::Zero,
            PartArg::Positive => Part::Positive,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum GroupArg {
    Sigma,
    Gl,
}

impl From<GroupArg> for Group {
    fn from(g: GroupArg) -> Group {
        match g {
            GroupArg::Sigma => Group::Sigma,
            GroupArg::Gl => Group::Gl,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(n) = cli.threads {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .context("configuring the thread pool")?;
    }
    let opts = EngineOptions {
        cache_dir: cache::resolve_dir(cli.cache_dir.clone()),
        ..EngineOptions::default()
    };
    let fmt = cli.format;
    let extended = cli.extended;

    match cli.cmd {
        Cmd::Basis(args) => cmd_basis(args, fmt, extended, &opts),
        Cmd::Dim(args) => cmd_dim(args, fmt, extended, &opts),
        Cmd::Invariants(args) => cmd_invariants(args, fmt, extended, &opts),
        Cmd::Kameko(args) => cmd_kameko(args, fmt, extended, &opts),
        Cmd::Mu { n } => cmd_mu(n, fmt),
        Cmd::Tkd { k, d, levels } => cmd_tkd(k, d, levels, fmt),
        Cmd::Steenrod { i, poly, k } => cmd_steenrod(i, &poly, k, fmt),
        Cmd::CheckHit { poly, k } => cmd_check_hit(&poly, k, fmt, extended, &opts),
        Cmd::Verify { filter } => cmd_verify(filter.as_deref(), fmt, extended, &opts),
        Cmd::Cache { action } => cmd_cache(action, fmt, extended, &opts),
    }
}

// ---------------------------------------------------------------------------
// basis

#[derive(Serialize)]
struct BasisOut {
    k: usize,
    degree: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<Vec<u32>>,
    count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    monomials: Option<Vec<Vec<u32>>>,
}

fn cmd_basis(args: BasisArgs, fmt: Format, extended: bool, opts: &EngineOptions) -> Result<ExitCode> {
    ensure_budget(args.k, args.degree, extended)?;
    let weight = args.weight.as_deref().map(parse_weight).transpose()?;
    let q = Quotient::build(args.k, args.degree, opts)?;
    let part: Part = args.part.into();
    let list: Vec<Monomial> = match &weight {
        Some(w) => q.basis_of_weight(w).into_iter().filter(|m| part.admits(m)).collect(),
        None => q.basis_in_part(part),
    };
    let out = BasisOut {
        k: args.k,
        degree: args.degree,
        weight: weight.map(|w| w.entries().to_vec()),
        count: list.len(),
        monomials: (!args.count_only).then(|| monomial_rows(&list)),
    };
    match fmt {
        Format::Json => emit_json(&out)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = list
                .iter()
                .map(|m| {
                    vec![
                        m.exponents().iter().map(u32::to_string).collect::<Vec<_>>().join(" "),
                        m.to_string(),
                        m.weight_vector().to_string(),
                    ]
                })
                .collect();
            print_csv(&["exponents", "monomial", "weight"], &rows);
        }
        Format::Text => {
            let mut header =
                format!("{} admissible monomials, k = {}, degree {}", out.count, args.k, args.degree);
            if let Some(w) = &out.weight {
                let entries: Vec<String> = w.iter().map(u32::to_string).collect();
                header.push_str(&format!(", weight ({})", entries.join(",")));
            }
            match part {
                Part::All => {}
                Part::Zero => header.push_str(", zero part"),
                Part::Positive => header.push_str(", positive part"),
            }
            println!("{header}");
            if !args.count_only {
                for m in &list {
                    println!("  {m}");
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// dim

#[derive(Serialize)]
struct StratumOut {
    weight: Vec<u32>,
    dim: usize,
}

#[derive(Serialize)]
struct DimRow {
    degree: u64,
    monomials: u64,
    hit_rank: u64,
    dim: usize,
    dim_zero: usize,
    dim_positive: usize,
    strata: Vec<StratumOut>,
}

fn cmd_dim(args: DimArgs, fmt: Format, extended: bool, opts: &EngineOptions) -> Result<ExitCode> {
    let degrees = parse_degrees(&args.degrees)?;
    let mut rows = Vec::new();
    for &n in &degrees {
        ensure_budget(args.k, n, extended)?;
        let q = Quotient::build(args.k, n, opts)?;
        rows.push(DimRow {
            degree: n,
            monomials: q.monomial_count(),
            hit_rank: q.hit_rank(),
            dim: q.dim(),
            dim_zero: q.basis_in_part(Part::Zero).len(),
            dim_positive: q.basis_in_part(Part::Positive).len(),
            strata: q
                .dims_by_weight()
                .into_iter()
                .map(|(w, d)| StratumOut { weight: w.entries().to_vec(), dim: d })
                .collect(),
        });
    }
    match fmt {
        Format::Json => emit_json(&rows)?,
        Format::Csv => {
            let table: Vec<Vec<String>> = rows
                .iter()
                .map(|r| {
                    vec![
                        r.degree.to_string(),
                        r.monomials.to_string(),
                        r.hit_rank.to_string(),
                        r.dim.to_string(),
                        r.dim_zero.to_string(),
                        r.dim_positive.to_string(),
                        r.strata
                            .iter()
                            .map(|s| {
                                format!(
                                    "({}):{}",
                                    s.weight.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                                    s.dim
                                )
                            })
                            .collect::<Vec<_>>()
                            .join(";"),
                    ]
                })
                .collect();
            print_csv(
                &["degree", "monomials", "hit_rank", "dim", "dim_zero", "dim_positive", "strata"],
                &table,
            );
        }
        Format::Text => {
            println!("k = {}", args.k);
            println!("{:>7} {:>10} {:>10} {:>6} {:>6} {:>6}  strata", "degree", "monomials", "hit_rank", "dim", "zero", "pos");
            for r in &rows {
                let strata = r
                    .strata
                    .iter()
                    .map(|s| {
                        format!(
                            "({}):{}",
                            s.weight.iter().map(u32::to_string).collect::<Vec<_>>().join(","),
                            s.dim
                        )
                    })
                    .collect::<Vec<_>>()
                    .join(" ");
                println!(
                    "{:>7} {:>10} {:>10} {:>6} {:>6} {:>6}  {}",
                    r.degree, r.monomials, r.hit_rank, r.dim, r.dim_zero, r.dim_positive, strata
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// invariants

#[derive(Serialize)]
struct InvariantsOut {
    k: usize,
    degree: u64,
    group: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    weight: Option<Vec<u32>>,
    dim: usize,
    basis: Vec<Vec<Vec<u32>>>,
}

fn cmd_invariants(
    args: InvariantsArgs,
    fmt: Format,
    extended: bool,
    opts: &EngineOptions,
) -> Result<ExitCode> {
    ensure_budget(args.k, args.degree, extended)?;
    let group: Group = args.group.into();
    let weight = args.weight.as_deref().map(parse_weight).transpose()?;
    let report = if args.lifted {
        if weight.is_some() {
            bail!("--lifted solves the whole degree; drop --weight");
        }
        let d = args
            .degree
            .checked_sub(args.k as u64)
            .filter(|r| r % 2 == 0)
            .map(|r| r / 2)
            .ok_or_else(|| anyhow!("degree {} is not of the form 2d + k", args.degree))?;
        invariants_lifted(args.k, d, group, opts)?
    } else {
        invariants(args.k, args.degree, group, weight.as_ref(), opts)?
    };
    let out = InvariantsOut {
        k: report.k,
        degree: report.degree,
        group: group.id(),
        weight: report.weight.as_ref().map(|w| w.entries().to_vec()),
        dim: report.dim,
        basis: report.basis.iter().map(polynomial_rows).collect(),
    };
    match fmt {
        Format::Json => emit_json(&out)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = report
                .basis
                .iter()
                .enumerate()
                .map(|(i, p)| vec![format!("g{}", i + 1), p.len().to_string(), p.to_string()])
                .collect();
            print_csv(&["name", "terms", "polynomial"], &rows);
        }
        Format::Text => {
            let stratum = out
                .weight
                .as_ref()
                .map(|w| {
                    format!(
                        ", stratum ({})",
                        w.iter().map(u32::to_string).collect::<Vec<_>>().join(",")
                    )
                })
                .unwrap_or_default();
            println!(
                "{}-invariants: k = {}, degree {}{}: dimension {}",
                group.id(),
                out.k,
                out.degree,
                stratum,
                out.dim
            );
            for (i, p) in report.basis.iter().enumerate() {
                println!("  g{} = {p}", i + 1);
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// kameko

#[derive(Serialize)]
struct KamekoOut {
    k: usize,
    d: u64,
    source_degree: u64,
    dim_source: usize,
    dim_target: usize,
    rank: usize,
    surjective: bool,
    injective: bool,
    bijective: bool,
    kernel_dim: usize,
}

#[derive(Serialize)]
struct TowerStepOut {
    s: u32,
    degree_from: u64,
    degree_to: u64,
    dim_from: usize,
    dim_to: usize,
    bijective: bool,
}

#[derive(Serialize)]
struct TowerOut {
    k: usize,
    d: u64,
    steps: Vec<TowerStepOut>,
    settles_at: u32,
    predicted: u32,
}

fn cmd_kameko(args: KamekoArgs, fmt: Format, extended: bool, opts: &EngineOptions) -> Result<ExitCode> {
    if let Some(s_max) = args.tower {
        ensure_budget(args.k, tower_degree(args.k as u32, args.d, s_max), extended)?;
        let rep = check_stabilization(args.k, args.d, s_max, opts)?;
        let out = TowerOut {
            k: rep.k,
            d: rep.d,
            steps: rep
                .steps
                .iter()
                .map(|s| TowerStepOut {
                    s: s.s,
                    degree_from: s.degree_from,
                    degree_to: s.degree_to,
                    dim_from: s.dim_from,
                    dim_to: s.dim_to,
                    bijective: s.bijective,
                })
                .collect(),
            settles_at: rep.settles_at,
            predicted: rep.predicted,
        };
        match fmt {
            Format::Json => emit_json(&out)?,
            Format::Csv => {
                let rows: Vec<Vec<String>> = out
                    .steps
                    .iter()
                    .map(|s| {
                        vec![
                            s.s.to_string(),
                            s.degree_from.to_string(),
                            s.degree_to.to_string(),
                            s.dim_from.to_string(),
                            s.dim_to.to_string(),
                            s.bijective.to_string(),
                        ]
                    })
                    .collect();
                print_csv(&["s", "degree_from", "degree_to", "dim_from", "dim_to", "bijective"], &rows);
            }
            Format::Text => {
                println!("tower over k = {}, d = {}", out.k, out.d);
                for s in &out.steps {
                    println!(
                        "  s = {}: {} -> {}  dim {} -> {}  {}",
                        s.s,
                        s.degree_from,
                        s.degree_to,
                        s.dim_from,
                        s.dim_to,
                        if s.bijective { "bijective" } else { "collapses" }
                    );
                }
                println!("settles at s = {} (threshold predicts {})", out.settles_at, out.predicted);
            }
        }
        return Ok(ExitCode::SUCCESS);
    }

    ensure_budget(args.k, 2 * args.d + args.k as u64, extended)?;
    let map = KamekoMap::build(args.k, args.d, opts)?;
    let out = KamekoOut {
        k: map.k(),
        d: map.d(),
        source_degree: map.source_degree(),
        dim_source: map.domain().dim(),
        dim_target: map.codomain().dim(),
        rank: map.rank(),
        surjective: map.is_surjective(),
        injective: map.is_injective(),
        bijective: map.is_bijective(),
        kernel_dim: map.kernel_dim(),
    };
    match fmt {
        Format::Json => emit_json(&out)?,
        Format::Csv => print_csv(
            &["k", "d", "source_degree", "dim_source", "dim_target", "rank", "surjective", "injective", "bijective", "kernel_dim"],
            &[vec![
                out.k.to_string(),
                out.d.to_string(),
                out.source_degree.to_string(),
                out.dim_source.to_string(),
                out.dim_target.to_string(),
                out.rank.to_string(),
                out.surjective.to_string(),
                out.injective.to_string(),
                out.bijective.to_string(),
                out.kernel_dim.to_string(),
            ]],
        ),
        Format::Text => {
            println!(
                "squaring map: degree {} -> {} (k = {})",
                out.source_degree, out.d, out.k
            );
            println!("  dim {} -> {}, rank {}", out.dim_source, out.dim_target, out.rank);
            let kind = match (out.bijective, out.surjective) {
                (true, _) => "bijective".to_string(),
                (false, true) => format!("surjective, kernel dimension {}", out.kernel_dim),
                _ => "neither injective nor surjective".to_string(),
            };
            println!("  {kind}");
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// mu / tkd

#[derive(Serialize)]
struct MuOut {
    n: u64,
    alpha: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    zeta: Option<u32>,
    mu: u32,
    #[serde(skip_serializing_if = "Option::is_none")]
    decomposition: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    spike_exponents: Option<Vec<u64>>,
}

fn cmd_mu(n: u64, fmt: Format) -> Result<ExitCode> {
    let decomposition = (n > 0).then(|| mu_decomposition(n)).transpose()?;
    let out = MuOut {
        n,
        alpha: alpha(n),
        zeta: zeta(n).ok(),
        mu: mu(n),
        spike_exponents: decomposition
            .as_ref()
            .map(|d| d.iter().map(|&v| (1u64 << v) - 1).collect()),
        decomposition,
    };
    match fmt {
        Format::Json => emit_json(&out)?,
        Format::Csv => print_csv(
            &["n", "alpha", "zeta", "mu", "decomposition"],
            &[vec![
                out.n.to_string(),
                out.alpha.to_string(),
                out.zeta.map(|z| z.to_string()).unwrap_or_default(),
                out.mu.to_string(),
                out.decomposition
                    .as_ref()
                    .map(|d| d.iter().map(u32::to_string).collect::<Vec<_>>().join(" "))
                    .unwrap_or_default(),
            ]],
        ),
        Format::Text => {
            println!("n = {}: alpha = {}, mu = {}", out.n, out.alpha, out.mu);
            if let Some(z) = out.zeta {
                println!("  zeta = {z}");
            }
            if let (Some(d), Some(s)) = (&out.decomposition, &out.spike_exponents) {
                let sum: Vec<String> = s.iter().map(u64::to_string).collect();
                let pows: Vec<String> = d.iter().map(|v| format!("2^{v} - 1")).collect();
                println!(
                    "  minimal spike decomposition: {} ({})",
                    sum.join(" + "),
                    pows.join(" + ")
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct TkdOut {
    k: u32,
    d: u64,
    threshold: u32,
    tower_degrees: Vec<u64>,
}

fn cmd_tkd(k: u32, d: u64, levels: u32, fmt: Format) -> Result<ExitCode> {
    let out = TkdOut {
        k,
        d,
        threshold: t_threshold(k, d),
        tower_degrees: (0..=levels).map(|s| tower_degree(k, d, s)).collect(),
    };
    match fmt {
        Format::Json => emit_json(&out)?,
        Format::Csv => print_csv(
            &["k", "d", "threshold", "tower_degrees"],
            &[vec![
                out.k.to_string(),
                out.d.to_string(),
                out.threshold.to_string(),
                out.tower_degrees.iter().map(u64::to_string).collect::<Vec<_>>().join(" "),
            ]],
        ),
        Format::Text => {
            println!("t({k}, {d}) = {}", out.threshold);
            let degs: Vec<String> = out.tower_degrees.iter().map(u64::to_string).collect();
            println!("  tower degrees: {}", degs.join(", "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// steenrod / check-hit

#[derive(Serialize)]
struct SteenrodOut {
    k: usize,
    operation: u64,
    count: usize,
    monomials: Vec<Vec<u32>>,
}

fn cmd_steenrod(i: u64, poly: &str, k: usize, fmt: Format) -> Result<ExitCode> {
    let p = Polynomial::parse(poly, k)?;
    let image = sq(i, &p);
    let out = SteenrodOut {
        k,
        operation: i,
        count: image.len(),
        monomials: polynomial_rows(&image),
    };
    match fmt {
        Format::Json => emit_json(&out)?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = out
                .monomials
                .iter()
                .map(|e| vec![e.iter().map(u32::to_string).collect::<Vec<_>>().join(" ")])
                .collect();
            print_csv(&["exponents"], &rows);
        }
        Format::Text => println!("Sq^{i}({p}) = {image}"),
    }
    Ok(ExitCode::SUCCESS)
}

#[derive(Serialize)]
struct CheckHitOut {
    k: usize,
    degree: u64,
    hit: bool,
    residue_count: usize,
    residue: Vec<Vec<u32>>,
}

fn cmd_check_hit(
    poly: &str,
    k: usize,
    fmt: Format,
    extended: bool,
    opts: &EngineOptions,
) -> Result<ExitCode> {
    let p = Polynomial::parse(poly, k)?;
    let degree = p
        .homogeneous_degree()?
        .ok_or_else(|| anyhow!("the zero polynomial is trivially hit; nothing to check"))?;
    ensure_budget(k, degree, extended)?;
    let q = Quotient::build(k, degree, opts)?;
    let residue = q.normal_form(&p)?;
    let out = CheckHitOut {
        k,
        degree,
        hit: residue.is_zero(),
        residue_count: residue.len(),
        residue: polynomial_rows(&residue),
    };
    match fmt {
        Format::Json => emit_json(&out)?,
        Format::Csv => print_csv(
            &["k", "degree", "hit", "residue_terms"],
            &[vec![
                out.k.to_string(),
                out.degree.to_string(),
                out.hit.to_string(),
                out.residue_count.to_string(),
            ]],
        ),
        Format::Text => {
            if out.hit {
                println!("hit: every term reduces away (degree {degree})");
            } else {
                let plural = if out.residue_count == 1 { "term" } else { "terms" };
                println!("not hit: residue has {} admissible {plural}", out.residue_count);
                println!("  {residue}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

// ---------------------------------------------------------------------------
// verify / cache

#[derive(Serialize)]
struct VerifyOut {
    ok: bool,
    targets: Vec<hitlab_cli::verify::TargetReport>,
}

fn cmd_verify(
    filter: Option<&str>,
    fmt: Format,
    extended: bool,
    opts: &EngineOptions,
) -> Result<ExitCode> {
    let outcome = verify::run(filter, extended, opts)?;
    let ok = outcome.all_ok();
    match fmt {
        Format::Json => emit_json(&VerifyOut { ok, targets: outcome.reports })?,
        Format::Csv => {
            let rows: Vec<Vec<String>> = outcome
                .reports
                .iter()
                .map(|r| {
                    vec![
                        r.id.clone(),
                        r.kind.to_string(),
                        format!("{:?}", r.status).to_lowercase(),
                        r.expected.to_string(),
                        r.computed.to_string(),
                        r.detail.clone(),
                    ]
                })
                .collect();
            print_csv(&["id", "kind", "status", "expected", "computed", "detail"], &rows);
        }
        Format::Text => {
            for r in &outcome.reports {
                for w in &r.warnings {
                    println!("warning: {w}");
                }
                match r.status {
                    Status::Ok => println!("ok    {:28} {:>5}/{}", r.id, r.computed, r.expected),
                    Status::Skipped => println!("skip  {:28} ({})", r.id, r.detail),
                    Status::Mismatch => {
                        println!("FAIL  {:28} {:>5}/{}: {}", r.id, r.computed, r.expected, r.detail)
                    }
                }
            }
            let failed = outcome.reports.iter().filter(|r| r.status == Status::Mismatch).count();
            let skipped = outcome.reports.iter().filter(|r| r.status == Status::Skipped).count();
            let passed = outcome.reports.len() - failed - skipped;
            println!("{passed} verified, {failed} failed, {skipped} skipped");
        }
    }
    Ok(if ok { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

#[derive(Serialize)]
struct WarmOut {
    k: usize,
    warmed: Vec<WarmRow>,
}

#[derive(Serialize)]
struct WarmRow {
    degree: u64,
    dim: usize,
}

fn cmd_cache(action: CacheCmd, fmt: Format, extended: bool, opts: &EngineOptions) -> Result<ExitCode> {
    let dir = opts
        .cache_dir
        .clone()
        .ok_or_else(|| anyhow!("no cache directory; pass --cache-dir or set HITLAB_CACHE"))?;
    match action {
        CacheCmd::Warm { k, degrees } => {
            let degrees = parse_degrees(&degrees)?;
            for &n in &degrees {
                ensure_budget(k, n, extended)?;
            }
            let warmed = cache::warm(k, &degrees, opts)?;
            let out = WarmOut {
                k,
                warmed: warmed.iter().map(|&(degree, dim)| WarmRow { degree, dim }).collect(),
            };
            match fmt {
                Format::Json => emit_json(&out)?,
                Format::Csv => print_csv(
                    &["degree", "dim"],
                    &out.warmed
                        .iter()
                        .map(|r| vec![r.degree.to_string(), r.dim.to_string()])
                        .collect::<Vec<_>>(),
                ),
                Format::Text => {
                    for r in &out.warmed {
                        println!("warmed k = {k}, degree {}: dim {}", r.degree, r.dim);
                    }
                }
            }
        }
        CacheCmd::Evict { k, degree } => {
            let removed = cache::evict(&dir, k, degree)?;
            match fmt {
                Format::Json => emit_json(&serde_json::json!({ "removed": removed }))?,
                Format::Csv => print_csv(&["removed"], &[vec![removed.to_string()]]),
                Format::Text => println!("removed {removed} cached eliminations"),
            }
        }
        CacheCmd::Inspect => {
            let files = cache::inspect(&dir)?;
            match fmt {
                Format::Json => emit_json(&files)?,
                Format::Csv => {
                    let rows: Vec<Vec<String>> = files
                        .iter()
                        .map(|f| {
                            vec![
                                f.name.clone(),
                                f.bytes.to_string(),
                                f.k.map(|v| v.to_string()).unwrap_or_default(),
                                f.degree.map(|v| v.to_string()).unwrap_or_default(),
                                f.part.clone().unwrap_or_default(),
                                f.policy.clone().unwrap_or_default(),
                                f.rank.map(|v| v.to_string()).unwrap_or_default(),
                            ]
                        })
                        .collect();
                    print_csv(&["name", "bytes", "k", "degree", "part", "policy", "rank"], &rows);
                }
                Format::Text => {
                    if files.is_empty() {
                        println!("cache at {} is empty", dir.display());
                    }
                    for f in &files {
                        match (f.k, f.degree) {
                            (Some(k), Some(d)) => println!(
                                "{:48} {:>9} bytes  k={k} degree={d} part={} policy={} rank={}",
                                f.name,
                                f.bytes,
                                f.part.as_deref().unwrap_or("?"),
                                f.policy.as_deref().unwrap_or("?"),
                                f.rank.map(|r| r.to_string()).unwrap_or_default(),
                            ),
                            _ => println!("{:48} {:>9} bytes  (unreadable or failed checksum)", f.name, f.bytes),
                        }
                    }
                }
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
