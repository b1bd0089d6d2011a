//! Command line front end: inspect a tensor file, query region
//! membership, render regions, run the nonsingularity certificates, run
//! the eigenpair oracle, and verify the localization theorems end to
//! end.
//!
//! Exit codes: 0 success, 1 a theorem-backed check failed (verify), 2
//! input error, 3 inconclusive (no eigenpairs, or no certificate fired).

use std::fmt::Write as _;
use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use tenloc::certify::{certify_brauer, certify_gersgorin, Branch, Certificate, Target};
use tenloc::oracle::{eigen_solve, to_jsonl, OracleConfig, SolveMethod, SolveOutcome};
use tenloc::raster::{emit, rasterize, GridSpec, ImageFormat, Layer};
use tenloc::region::{
    bounding_window, delta_ij_contains, gamma_contains, k_contains, lambda_ip_contains,
    omega_contains, theta_contains, Region, RegionQuery, Window,
};
use tenloc::{RowSums, Tensor};

#[derive(Parser)]
#[command(name = "tenloc", version, about = "Eigenvalue localization sets for complex tensors")]
struct Cli {
    /// Suppress the version banner on stderr.
    #[arg(long, global = true)]
    quiet: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print order, dimension, and the row sum tables.
    Info {
        /// Tensor file.
        tensor: PathBuf,
    },
    /// Test whether a point lies in a region.
    Member {
        /// Tensor file.
        tensor: PathBuf,
        /// Region name: gamma, omega, k, theta, or an indexed form such
        /// as gamma_2 or delta_1_4.
        #[arg(long)]
        set: String,
        /// First region index, appended to --set.
        #[arg(long)]
        i: Option<usize>,
        /// Second region index, appended to --set.
        #[arg(long)]
        j: Option<usize>,
        /// Point as re,im.
        #[arg(long, value_parser = parse_complex, allow_hyphen_values = true)]
        z: Complex64,
        /// Boundary tolerance; widens inclusion sets and shrinks
        /// exclusion sets.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tol: f64,
    },
    /// Rasterize one or more regions to SVG, PPM, or CSV.
    Region {
        /// Tensor file.
        tensor: PathBuf,
        /// Region name; repeat for layered output, first at the bottom.
        #[arg(long, required = true)]
        set: Vec<String>,
        /// Output resolution as WIDTHxHEIGHT.
        #[arg(long, default_value = "800x600", value_parser = parse_resolution)]
        resolution: (usize, usize),
        /// Window as re_min,re_max,im_min,im_max. Defaults to a window
        /// around all inclusion disks with a five percent margin.
        #[arg(long, value_parser = parse_window, allow_hyphen_values = true)]
        window: Option<Window>,
        /// Boundary tolerance.
        #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
        tol: f64,
        #[arg(long, value_enum, default_value_t = FormatArg::Svg)]
        format: FormatArg,
        /// Run the oracle and mark each eigenvalue with a cross.
        #[arg(long)]
        mark_eigenvalues: bool,
        /// Oracle starts when marking eigenvalues.
        #[arg(long)]
        starts: Option<usize>,
        /// Oracle seed when marking eigenvalues.
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the nonsingularity certificates.
    Certify {
        /// Tensor file.
        tensor: PathBuf,
        #[arg(long, value_enum, default_value_t = MethodArg::Both)]
        method: MethodArg,
    },
    /// Compute eigenpairs and print them as JSON lines.
    Eig {
        /// Tensor file.
        tensor: PathBuf,
        /// Newton start count; defaults to 200 * n * (m - 1).
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Use multi-start Newton even where a closed form exists.
        #[arg(long)]
        force_newton: bool,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the oracle and check every localization claim against it.
    Verify {
        /// Tensor file.
        tensor: PathBuf,
        /// Newton start count; defaults to 200 * n * (m - 1).
        #[arg(long)]
        starts: Option<usize>,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// Membership tolerance for eigenvalue checks.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Side length of the grid for the set inclusion checks.
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Svg,
    Ppm,
    Csv,
}

#[derive(Clone, Copy, PartialEq, ValueEnum)]
enum MethodArg {
    Gersgorin,
    Brauer,
    Both,
}

/// Everything that should terminate with exit code 2.
struct InputError(String);

impl From<tenloc::Error> for InputError {
    fn from(e: tenloc::Error) -> Self {
        InputError(e.to_string())
    }
}

impl From<std::io::Error> for InputError {
    fn from(e: std::io::Error) -> Self {
        InputError(e.to_string())
    }
}

fn parse_complex(text: &str) -> Result<Complex64, String> {
    let parts: Vec<&str> = text.split(',').collect();
    if parts.len() != 2 {
        return Err("expected re,im".into());
    }
    let re: f64 = parts[0].trim().parse().map_err(|_| "bad real part")?;
    let im: f64 = parts[1].trim().parse().map_err(|_| "bad imaginary part")?;
    Ok(Complex64::new(re, im))
}

fn parse_resolution(text: &str) -> Result<(usize, usize), String> {
    let parts: Vec<&str> = text.split('x').collect();
    if parts.len() != 2 {
        return Err("expected WIDTHxHEIGHT".into());
    }
    let w: usize = parts[0].parse().map_err(|_| "bad width")?;
    let h: usize = parts[1].parse().map_err(|_| "bad height")?;
    Ok((w, h))
}

fn parse_window(text: &str) -> Result<Window, String> {
    let parts: Result<Vec<f64>, _> = text.split(',').map(|p| p.trim().parse()).collect();
    let parts = parts.map_err(|_| "expected four numbers".to_string())?;
    if parts.len() != 4 {
        return Err("expected re_min,re_max,im_min,im_max".into());
    }
    let w = Window {
        re_min: parts[0],
        re_max: parts[1],
        im_min: parts[2],
        im_max: parts[3],
    };
    w.validate().map_err(|e| e.to_string())?;
    Ok(w)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if !cli.quiet {
        eprintln!("tenloc {}", env!("CARGO_PKG_VERSION"));
    }
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(InputError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(2)
        }
    }
}

fn run(command: Command) -> Result<u8, InputError> {
    match command {
        Command::Info { tensor } => cmd_info(&load(&tensor)?),
        Command::Member {
            tensor,
            set,
            i,
            j,
            z,
            tol,
        } => cmd_member(&load(&tensor)?, &set, i, j, z, tol),
        Command::Region {
            tensor,
            set,
            resolution,
            window,
            tol,
            format,
            mark_eigenvalues,
            starts,
            seed,
            out,
        } => cmd_region(
            &load(&tensor)?,
            &set,
            resolution,
            window,
            tol,
            format,
            mark_eigenvalues,
            starts,
            seed,
            out.as_deref(),
        ),
        Command::Certify { tensor, method } => cmd_certify(&load(&tensor)?, method),
        Command::Eig {
            tensor,
            starts,
            seed,
            force_newton,
            out,
        } => cmd_eig(&load(&tensor)?, starts, seed, force_newton, out.as_deref()),
        Command::Verify {
            tensor,
            starts,
            seed,
            tol,
            grid,
        } => cmd_verify(&load(&tensor)?, starts, seed, tol, grid),
    }
}

fn load(path: &Path) -> Result<Tensor, InputError> {
    let text = fs::read_to_string(path)
        .map_err(|e| InputError(format!("{}: {e}", path.display())))?;
    Tensor::from_text(&text).map_err(|e| InputError(format!("{}: {e}", path.display())))
}

fn write_output(out: Option<&Path>, bytes: &[u8]) -> Result<(), InputError> {
    match out {
        Some(path) => fs::write(path, bytes)
            .map_err(|e| InputError(format!("{}: {e}", path.display()))),
        None => {
            std::io::stdout().write_all(bytes)?;
            Ok(())
        }
    }
}

fn cmd_info(a: &Tensor) -> Result<u8, InputError> {
    let s = a.row_sums();
    let n = s.dim();
    let mut text = format!(
        "order {}  dimension {}  stored entries {}\n\n",
        a.order(),
        n,
        a.nnz()
    );
    text.push_str("row  diagonal                 radius\n");
    for i in 1..=n {
        let _ = writeln!(text, "{:<4} {:<24} {}", i, s.diag(i).to_string(), s.radius(i));
    }
    text.push_str("\npartial radii (row i with the coupling toward j removed)\n");
    text.push_str("  i\\j");
    for j in 1..=n {
        let _ = write!(text, " {j:>20}");
    }
    text.push('\n');
    for i in 1..=n {
        let _ = write!(text, "{i:>5}");
        for j in 1..=n {
            if i == j {
                let _ = write!(text, " {:>20}", "-");
            } else {
                let _ = write!(text, " {:>20}", s.partial_radius(i, j));
            }
        }
        text.push('\n');
    }
    write_output(None, text.as_bytes())?;
    Ok(0)
}

fn cmd_member(
    a: &Tensor,
    set: &str,
    i: Option<usize>,
    j: Option<usize>,
    z: Complex64,
    tol: f64,
) -> Result<u8, InputError> {
    let mut name = set.to_string();
    if let Some(i) = i {
        let _ = write!(name, "_{i}");
    }
    if let Some(j) = j {
        let _ = write!(name, "_{j}");
    }
    let region: Region = name
        .parse()
        .map_err(|e: tenloc::Error| InputError(e.to_string()))?;
    let q = RegionQuery::new(region, tol)?;
    let s = a.row_sums();
    q.validate(s.dim())?;
    let inside = tenloc::region::region_contains(&s, &q, z)?;
    write_output(None, if inside { b"true\n" } else { b"false\n" })?;
    Ok(0)
}

#[allow(clippy::too_many_arguments)]
fn cmd_region(
    a: &Tensor,
    sets: &[String],
    resolution: (usize, usize),
    window: Option<Window>,
    tol: f64,
    format: FormatArg,
    mark_eigenvalues: bool,
    starts: Option<usize>,
    seed: u64,
    out: Option<&Path>,
) -> Result<u8, InputError> {
    let s = a.row_sums();
    let window = match window {
        Some(w) => w,
        None => default_window(&s)?,
    };
    let g = GridSpec {
        window,
        width: resolution.0,
        height: resolution.1,
    };
    const PALETTE: [(u8, u8, u8); 6] = [
        (69, 117, 180),
        (244, 165, 60),
        (102, 189, 99),
        (171, 93, 171),
        (215, 78, 66),
        (120, 120, 120),
    ];
    let mut layers = Vec::new();
    for (at, name) in sets.iter().enumerate() {
        let region: Region = name
            .parse()
            .map_err(|e: tenloc::Error| InputError(e.to_string()))?;
        let q = RegionQuery::new(region, tol)?;
        layers.push(Layer {
            grid: rasterize(&s, &q, &g)?,
            color: PALETTE[at % PALETTE.len()],
        });
    }
    let mut markers = Vec::new();
    if mark_eigenvalues {
        let cfg = OracleConfig {
            starts,
            seed,
            ..OracleConfig::default()
        };
        cfg.validate()?;
        let outcome = eigen_solve(a, &cfg)?;
        markers = outcome.pairs.iter().map(|p| p.lambda).collect();
    }
    let format = match format {
        FormatArg::Svg => ImageFormat::Svg,
        FormatArg::Ppm => ImageFormat::Ppm,
        FormatArg::Csv => ImageFormat::Csv,
    };
    let bytes = emit(&layers, format, &markers)?;
    write_output(out, &bytes)?;
    Ok(0)
}

fn default_window(s: &RowSums) -> Result<Window, InputError> {
    let base = bounding_window(s, 0.0)?;
    let extent = base.re_extent().max(base.im_extent());
    // all disks can be points, leaving nothing to take a percentage of
    let margin = if extent > 0.0 { 0.05 * extent } else { 1.0 };
    Ok(bounding_window(s, margin)?)
}

fn cmd_certify(a: &Tensor, method: MethodArg) -> Result<u8, InputError> {
    let s = a.row_sums();
    let mut text = String::new();
    let mut any_nonsingular = false;
    if method != MethodArg::Brauer {
        let cert = certify_gersgorin(&s);
        any_nonsingular |= cert.is_nonsingular();
        describe_certificate(&mut text, "gersgorin-exclusion", &cert);
    }
    if method != MethodArg::Gersgorin {
        let cert = certify_brauer(&s)?;
        any_nonsingular |= cert.is_nonsingular();
        describe_certificate(&mut text, "brauer-exclusion", &cert);
    }
    write_output(None, text.as_bytes())?;
    Ok(if any_nonsingular { 0 } else { 3 })
}

fn describe_certificate(text: &mut String, name: &str, cert: &Certificate) {
    let verdict = if cert.is_nonsingular() {
        "NONSINGULAR"
    } else {
        "UNKNOWN"
    };
    let _ = writeln!(text, "{name}: {verdict}");
    for w in &cert.witnesses {
        let target = match w.target {
            Target::Row(i) => format!("row {i}"),
            Target::Pair(i, j) => format!("pair ({i},{j})"),
        };
        match w.branch {
            Branch::OutsideInclusion { lhs, rhs } => {
                let _ = writeln!(
                    text,
                    "  {target}: zero outside the inclusion set ({lhs} > {rhs})"
                );
            }
            Branch::InsideExclusion { via, lhs, rhs } => {
                let _ = writeln!(
                    text,
                    "  {target}: zero inside the exclusion set via {via} ({lhs} < {rhs})"
                );
            }
        }
    }
}

fn cmd_eig(
    a: &Tensor,
    starts: Option<usize>,
    seed: u64,
    force_newton: bool,
    out: Option<&Path>,
) -> Result<u8, InputError> {
    let cfg = OracleConfig {
        starts,
        seed,
        force_newton,
        ..OracleConfig::default()
    };
    cfg.validate()?;
    let outcome = eigen_solve(a, &cfg)?;
    write_output(out, to_jsonl(&outcome.pairs).as_bytes())?;
    Ok(if outcome.pairs.is_empty() { 3 } else { 0 })
}

fn cmd_verify(
    a: &Tensor,
    starts: Option<usize>,
    seed: u64,
    tol: f64,
    grid: usize,
) -> Result<u8, InputError> {
    if !tol.is_finite() || tol < 0.0 {
        return Err(InputError("tol must be finite and nonnegative".into()));
    }
    let s = a.row_sums();
    let n = s.dim();
    let cfg = OracleConfig {
        starts,
        seed,
        ..OracleConfig::default()
    };
    cfg.validate()?;
    let outcome = eigen_solve(a, &cfg)?;
    let mut text = describe_outcome(&outcome);
    if outcome.pairs.is_empty() {
        text.push_str("inconclusive: no start converged; raise --starts\n");
        write_output(None, text.as_bytes())?;
        return Ok(3);
    }

    let mut all_pass = true;
    let mut report = |label: String, violations: Vec<String>| {
        if violations.is_empty() {
            let _ = writeln!(text, "PASS {label}");
        } else {
            all_pass = false;
            let _ = writeln!(
                text,
                "FAIL {label}: {} violation(s), first: {}",
                violations.len(),
                violations[0]
            );
        }
    };

    type MemberFn = fn(&RowSums, Complex64, f64) -> tenloc::Result<bool>;
    let mut inclusion_checks: Vec<(&str, MemberFn)> = vec![
        ("gamma", gamma_contains as MemberFn),
        ("omega", omega_contains as MemberFn),
    ];
    if n >= 2 {
        inclusion_checks.push(("k", k_contains as MemberFn));
        inclusion_checks.push(("theta", theta_contains as MemberFn));
    }
    for (name, contains) in inclusion_checks {
        let mut violations = Vec::new();
        for p in &outcome.pairs {
            if !contains(&s, p.lambda, tol)? {
                violations.push(p.lambda.to_string());
            }
        }
        report(
            format!("every eigenvalue lies in {name} (tol {tol:?})"),
            violations,
        );
    }

    // the exclusion theorems are anchored at the row holding the
    // eigenvector's largest component; other rows' exclusion sets may
    // legitimately contain eigenvalues
    let mut disk_violations = Vec::new();
    let mut oval_violations = Vec::new();
    for p in &outcome.pairs {
        let t = p
            .x
            .iter()
            .enumerate()
            .max_by(|(_, a), (_, b)| a.norm().total_cmp(&b.norm()))
            .map(|(at, _)| at + 1)
            .unwrap();
        for j in 1..=n {
            if j == t {
                continue;
            }
            if delta_ij_contains(&s, t, j, p.lambda, tol)? {
                disk_violations.push(format!("{} in delta_{t}_{j}", p.lambda));
            }
            if lambda_ip_contains(&s, t, j, p.lambda, tol)? {
                oval_violations.push(format!("{} in lambda_{t}_{j}", p.lambda));
            }
        }
    }
    report(
        format!("exclusion disks at dominant rows avoid all eigenvalues (tol {tol:?})"),
        disk_violations,
    );
    if n >= 2 {
        report(
            format!("exclusion ovals at dominant rows avoid all eigenvalues (tol {tol:?})"),
            oval_violations,
        );
    }

    let g = GridSpec {
        window: default_window(&s)?,
        width: grid,
        height: grid,
    };
    let grid_of = |r: Region| -> Result<_, InputError> {
        Ok(rasterize(&s, &RegionQuery::new(r, 0.0)?, &g)?)
    };
    let mut pairs: Vec<(&str, tenloc::raster::RasterGrid, tenloc::raster::RasterGrid)> = vec![(
        "omega inside gamma",
        grid_of(Region::Omega)?,
        grid_of(Region::Gamma)?,
    )];
    if n >= 2 {
        pairs.push((
            "theta inside k",
            grid_of(Region::Theta)?,
            grid_of(Region::K)?,
        ));
        pairs.push((
            "k inside gamma",
            grid_of(Region::K)?,
            grid_of(Region::Gamma)?,
        ));
    }
    for (label, inner, outer) in pairs {
        let mut violations = Vec::new();
        for row in 0..grid {
            for col in 0..grid {
                if inner.get(col, row) && !outer.get(col, row) {
                    violations.push(format!("pixel ({col},{row})"));
                }
            }
        }
        report(format!("{label} on the {grid}x{grid} grid"), violations);
    }

    if all_pass {
        text.push_str("verify: PASS\n");
        write_output(None, text.as_bytes())?;
        Ok(0)
    } else {
        text.push_str(
            "verify: FAIL (an unconditional theorem was violated; this means a bug \
             or a --tol set too tight for the oracle residuals)\n",
        );
        write_output(None, text.as_bytes())?;
        Ok(1)
    }
}

fn describe_outcome(outcome: &SolveOutcome) -> String {
    let method = match outcome.method {
        SolveMethod::Diagonal => "diagonal",
        SolveMethod::CharPoly => "characteristic polynomial",
        SolveMethod::Newton => "multi-start newton",
    };
    format!(
        "oracle: {} eigenpair(s) via {method} ({} of {} starts converged, {} discarded)\n",
        outcome.pairs.len(),
        outcome.converged_starts,
        outcome.starts_attempted,
        outcome.discarded
    )
}
