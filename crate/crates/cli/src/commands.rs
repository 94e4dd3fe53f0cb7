//! Command-line surface: argument parsing and one function per subcommand.

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};

use chtube::groups::{
    combination_bisectors, combination_precondition, pingpong_check, verify_distance_realization_with_budget,
    CombinationOptions, DiscretenessReport, DEFAULT_WORD_BUDGET,
};
use chtube::measure::{mc_wedge_volume, wedge_volume, WedgeParams};
use chtube::tubes::{
    collar_width_area, eigenvalue_bound_explicit, tube_function_bounds, two_surface_width, volume_lower_bound,
    SurfaceData,
};

use crate::config;
use crate::error::CliError;
use crate::report::{self, Format, Report, Status};
use crate::suites;

#[derive(Debug, Parser)]
#[command(name = "chtube", version, about = "Tubes around complex geodesic surfaces in complex hyperbolic 2-space")]
pub struct Cli {
    /// Output format of the report.
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Seed for every random stream.
    #[arg(long, global = true, env = "CHTUBE_SEED", default_value_t = 0)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Collar width of an embedded complex geodesic surface, and of a pair.
    #[command(allow_negative_numbers = true)]
    TubeWidth {
        #[arg(long, conflicts_with = "area", required_unless_present = "area")]
        chi: Option<i64>,
        #[arg(long)]
        area: Option<f64>,
    },
    /// Lower volume bound for a complex hyperbolic surface containing `n`
    /// disjoint totally geodesic surfaces.
    #[command(allow_negative_numbers = true)]
    VolumeBound {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        chi: i64,
    },
    /// Lower bound on the first nonzero Laplace eigenvalue.
    #[command(allow_negative_numbers = true)]
    EigenvalueBound {
        #[arg(long)]
        vol: f64,
        #[arg(long)]
        chi: i64,
    },
    /// Lower and upper bounds on the optimal tube width.
    #[command(allow_negative_numbers = true)]
    TubeBounds {
        #[arg(long)]
        chi: i64,
    },
    /// Volume of a wedge, optionally with a Monte Carlo estimate.
    #[command(allow_negative_numbers = true)]
    WedgeVolume {
        #[arg(long)]
        s: f64,
        #[arg(long)]
        eps: f64,
        #[arg(long)]
        psi: f64,
        /// Number of Monte Carlo samples.
        #[arg(long)]
        mc: Option<usize>,
    },
    /// Combine two C-Fuchsian groups described by a TOML file.
    Combine {
        /// TOML file describing `[group1]`, `[group2]` and `[placement]`.
        config: PathBuf,
        /// Maximum word length for the distance certificate.
        #[arg(long, default_value_t = 4)]
        depth: usize,
        /// Ping-pong samples per generator.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        /// Word length used for injectivity radii.
        #[arg(long, default_value_t = 3)]
        injectivity_depth: usize,
    },
    /// Run a seeded property suite.
    Verify {
        #[arg(long)]
        suite: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::TubeWidth { .. } => "tube-width",
            Command::VolumeBound { .. } => "volume-bound",
            Command::EigenvalueBound { .. } => "eigenvalue-bound",
            Command::TubeBounds { .. } => "tube-bounds",
            Command::WedgeVolume { .. } => "wedge-volume",
            Command::Combine { .. } => "combine",
            Command::Verify { .. } => "verify",
        }
    }
}

/// Run the command and time it.
pub fn execute(cli: &Cli) -> Result<Report, CliError> {
    let start = Instant::now();
    let mut r = Report::new(cli.command.name(), cli.seed);
    match &cli.command {
        Command::TubeWidth { chi, area } => tube_width(&mut r, *chi, *area)?,
        Command::VolumeBound { n, chi } => volume_bound(&mut r, *n, *chi)?,
        Command::EigenvalueBound { vol, chi } => eigenvalue_bound(&mut r, *vol, *chi)?,
        Command::TubeBounds { chi } => tube_bounds(&mut r, *chi)?,
        Command::WedgeVolume { s, eps, psi, mc } => wedge(&mut r, *s, *eps, *psi, *mc, cli.seed)?,
        Command::Combine { config, depth, samples, injectivity_depth } => {
            let opts = CombinationOptions {
                injectivity_depth: *injectivity_depth,
                word_depth: *depth,
                samples: *samples,
                seed: cli.seed,
                word_budget: DEFAULT_WORD_BUDGET,
            };
            r.input("config", config.display().to_string());
            combine(&mut r, &config::load(config)?, &opts)?
        }
        Command::Verify { suite } => verify(&mut r, suite, cli.seed)?,
    }
    r.wall_clock_seconds = start.elapsed().as_secs_f64();
    Ok(r)
}

pub fn tube_width(r: &mut Report, chi: Option<i64>, area: Option<f64>) -> Result<(), CliError> {
    let surface = match (chi, area) {
        (Some(c), None) => SurfaceData::EulerCharacteristic(c),
        (None, Some(a)) => SurfaceData::Area(a),
        _ => return Err(CliError::Usage("give exactly one of --chi, --area".into())),
    };
    let a = surface.area().map_err(CliError::usage)?;
    match surface {
        SurfaceData::EulerCharacteristic(c) => {
            r.input("chi", c).output("area", a, report::AREA).formula("A = 2 pi |chi|")
        }
        SurfaceData::Area(a) => r.input("area", a),
    };
    r.output("collar_width", collar_width_area(a).map_err(CliError::usage)?, report::LENGTH)
        .output("two_surface_width", two_surface_width(a, a).map_err(CliError::usage)?, report::LENGTH)
        .formula("collar_width = (1/4) log(2/A + 1)")
        .formula("two_surface_width = (1/8) log(2/max(A1, A2) + 1), A1 = A2 = A");
    Ok(())
}

pub fn volume_bound(r: &mut Report, n: u64, chi: i64) -> Result<(), CliError> {
    let v = volume_lower_bound(n, chi).map_err(CliError::usage)?;
    r.input("n", n)
        .input("chi", chi)
        .output("volume_lower_bound", v, report::VOLUME)
        .formula("vol(X) >= 4 pi^2 n |chi| [cosh^4((1/16) log(1/(pi |chi|) + 1)) - 1]");
    Ok(())
}

pub fn eigenvalue_bound(r: &mut Report, vol: f64, chi: i64) -> Result<(), CliError> {
    let v = eigenvalue_bound_explicit(vol, chi).map_err(CliError::usage)?;
    r.input("vol", vol)
        .input("chi", chi)
        .output("eigenvalue_lower_bound", v, report::DIMENSIONLESS)
        .formula("lambda_1 >= 64 pi^2 |chi| [cosh^4(l/8) - 1] / (l^2 (vol - 4 pi^2 |chi| [cosh^4(l/8) - 1])), l = log(1/(pi |chi|) + 1)");
    Ok(())
}

pub fn tube_bounds(r: &mut Report, chi: i64) -> Result<(), CliError> {
    let b = tube_function_bounds(chi).map_err(CliError::usage)?;
    r.input("chi", chi)
        .output("lower", b.lower, report::LENGTH)
        .output("upper", b.upper, report::LENGTH)
        .formula("lower = (1/4) log(1/(pi |chi|) + 1)")
        .formula("upper = s(acosh(cot((pi/2)/(|chi| + 2)))), s(d) = 2 asinh(1/sinh(d/2))");
    Ok(())
}

pub fn wedge(r: &mut Report, s: f64, eps: f64, psi: f64, mc: Option<usize>, seed: u64) -> Result<(), CliError> {
    let w = WedgeParams::new(s, eps, psi).map_err(CliError::usage)?;
    r.input("s", s)
        .input("eps", eps)
        .input("psi", psi)
        .output("wedge_volume", wedge_volume(&w), report::VOLUME)
        .formula("vol W(s, eps, psi) = psi (cosh^4(eps/2) - 1) 4 pi sinh^2(s/2)");
    if let Some(samples) = mc {
        let e = mc_wedge_volume(&w, samples, seed).map_err(CliError::usage)?;
        r.input("mc_samples", samples)
            .output("mc_estimate", e.estimate, report::VOLUME)
            .output("mc_std_error", e.std_error, report::VOLUME)
            .formula("Monte Carlo: density 16/(1 - |z|^2)^3 over the wedge, sharded by (seed, shard)");
    }
    Ok(())
}

pub fn combine(r: &mut Report, cfg: &config::Config, opts: &CombinationOptions) -> Result<(), CliError> {
    r.input("groups", serde_json::json!({ "group1": cfg.group1, "group2": cfg.group2 }))
        .input("placement", &cfg.placement)
        .input("depth", opts.word_depth)
        .input("samples", opts.samples)
        .input("injectivity_depth", opts.injectivity_depth);
    let placed = cfg.build(opts.injectivity_depth)?;
    let (g1, g2) = (&placed.group1, &placed.group2);
    let pre = combination_precondition(g1, g2, opts.injectivity_depth).map_err(CliError::numeric)?;
    let walls = combination_bisectors(g1, g2, &pre).map_err(CliError::numeric)?;
    let pp = pingpong_check(g1, g2, &walls, opts.samples, opts.seed);
    let (min, words) = verify_distance_realization_with_budget(g1, g2, opts.word_depth, opts.word_budget)
        .map_err(CliError::numeric)?;
    let d = DiscretenessReport::assemble(&pre, &walls, &pp, min, words, opts);
    r.output("placement_distance", placed.distance, report::LENGTH)
        .output("line_distance", d.line_distance, report::LENGTH)
        .output("precondition_satisfied", d.precondition_satisfied, report::DIMENSIONLESS)
        .output("margin", d.margin, report::LENGTH)
        .output("injectivity_radii", d.injectivity_radii, report::LENGTH)
        .output("projection_radii", pre.projection_radii, report::LENGTH)
        .output("wall_positions", d.wall_positions, report::LENGTH)
        .output("pingpong_samples_passed", d.pingpong_samples_passed, report::DIMENSIONLESS)
        .output("pingpong_samples_total", d.pingpong_samples_total, report::DIMENSIONLESS)
        .output("pingpong_failures", &pp.failures, report::DIMENSIONLESS)
        .output("min_distance_over_words", d.min_distance_over_words, report::LENGTH)
        .output("words_checked", d.words_checked, report::DIMENSIONLESS)
        .output("distance_certificate", d.distance_certificate, report::DIMENSIONLESS)
        .output("all_passed", d.all_passed(), report::DIMENSIONLESS)
        .formula("precondition: d(L1, L2) > s(inj1) + s(inj2), s(d) = 2 asinh(1/sinh(d/2))")
        .formula("walls: bisectors over the common perpendicular at s(inj1), midpoint, d - s(inj2)")
        .formula("ping-pong: g(U) inside the region of the other factor for each generator g")
        .formula("distance: min over words of d(L1, gamma L2) = d(L1, L2)");
    if !pre.ok {
        r.output("error", format!("precondition failed: margin {} is not positive", pre.margin), report::DIMENSIONLESS);
    }
    if !d.all_passed() {
        r.status = Status::Failed;
    }
    Ok(())
}

pub fn verify(r: &mut Report, suite: &str, seed: u64) -> Result<(), CliError> {
    r.input("suite", suite);
    let results = suites::run(suite, seed)?;
    let passed = results.iter().all(|s| s.passed);
    let failed: Vec<String> = results
        .iter()
        .flat_map(|s| {
            s.parts.iter().flat_map(move |p| {
                p.checks.iter().filter(|c| !c.passed).map(move |c| format!("{}.{}.{}", s.suite, p.part, c.name))
            })
        })
        .collect();
    for s in &results {
        for p in &s.parts {
            for c in &p.checks {
                r.formula(&c.statement);
            }
        }
    }
    r.output("suites", &results, report::DIMENSIONLESS).output("failed_checks", &failed, report::DIMENSIONLESS).output(
        "passed",
        passed,
        report::DIMENSIONLESS,
    );
    if !passed {
        r.status = Status::Failed;
    }
    Ok(())
}
