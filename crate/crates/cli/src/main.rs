//! Batch driver: basis dumps, bijection tables, verification sweeps, and
//! determinant certification runs.
//!
//! Exit codes: 0 success, 2 usage error, 3 resource limit, 4 verification
//! failure. With a fixed configuration (including the seed) the output is
//! byte-identical across runs; `--timings` adds wall-clock fields and is
//! the one deliberate exception.

use std::cmp::Ordering;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use monobij::bijection::{marker_monomial, multiplier_of, phi, prec_compare_r};
use monobij::blocks::block_index_of;
use monobij::error::Error;
use monobij::fp::DEFAULT_PRIME;
use monobij::linalg::{
    det_mod_p, low_degree_member_check, symbolic_det, verify_conjecture, FormCoeffs,
};
use monobij::monomial::{
    classify_region_r, enumerate_basis, Monomial, Region, Side, WeightConstants,
};
use monobij::verify::{
    block_family_check, check_noncancellation, check_uniqueness, multiset_of, phi_table,
    VerificationReport, DEFAULT_NODE_CAP,
};

#[derive(Parser)]
#[command(
    name = "monobij",
    version,
    about = "Monomial bijections and determinant certificates for weighted quotient rings"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum SideArg {
    R,
    M,
    Rprime,
    Mprime,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
    Md,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    /// Bijectivity, weight/t preservation, divisibility of phi.
    Phi,
    /// The multiplier multiset of phi is realized by exactly one bijection.
    Uniqueness,
    /// All bijections realizing the multiset have uniform parity.
    Noncancel,
    /// Block families are exactly the shifted bijections, parity-uniform.
    Blocks,
}

#[derive(Args)]
struct WeightArgs {
    /// Model parameter (m >= 2).
    #[arg(long)]
    m: i64,
    /// Weight selection: an integer, an inclusive range `a..b`, or `all`
    /// (the reduced range `0..=6m-9`).
    #[arg(long, default_value = "all")]
    w: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Dump a monomial basis slice as JSON.
    Basis {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, value_enum, default_value = "rprime")]
        side: SideArg,
    },
    /// Emit the bijection table (u, phi(u), multiplier) with region,
    /// block, and marker annotations.
    Table {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Run a verification oracle over weight slices.
    Verify {
        #[command(flatten)]
        weights: WeightArgs,
        #[arg(long, value_enum)]
        mode: ModeArg,
        /// Backtracking node cap for the matching oracle.
        #[arg(long, default_value_t = DEFAULT_NODE_CAP)]
        cap_nodes: u64,
        /// Include wall-clock timings (breaks byte-for-byte determinism).
        #[arg(long)]
        timings: bool,
    },
    /// Certify nonsingularity of every reduced A_w at a random form.
    Conjecture {
        /// Model parameter (m >= 2).
        #[arg(long)]
        m: i64,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Also run the direct low-degree ideal-membership oracle
        /// (feasible for m <= 6).
        #[arg(long)]
        low_degree: bool,
    },
    /// Determinant of a single slice, modular by default.
    Det {
        /// Model parameter (m >= 2).
        #[arg(long)]
        m: i64,
        #[arg(long)]
        w: i64,
        /// Exact symbolic expansion instead of a modular evaluation.
        #[arg(long)]
        symbolic: bool,
        #[arg(long, default_value_t = DEFAULT_PRIME)]
        prime: u64,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Use the full bases R_w, M_{w+3m} instead of the reduced ones.
        #[arg(long)]
        full: bool,
        /// Symbolic expansion dimension cap.
        #[arg(long, default_value_t = 8)]
        cap_dim: usize,
    },
}

fn usage_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(2)
}

fn parse_weights(m: i64, spec: &str) -> Result<Vec<i64>, String> {
    let reduced_max = 6 * m - 9;
    if spec == "all" {
        return Ok((0..=reduced_max).collect());
    }
    if let Some((lo, hi)) = spec.split_once("..") {
        let lo: i64 = lo
            .parse()
            .map_err(|_| format!("invalid weight range start {lo:?}"))?;
        let hi: i64 = hi
            .parse()
            .map_err(|_| format!("invalid weight range end {hi:?}"))?;
        if lo > hi {
            return Err(format!("empty weight range {lo}..{hi}"));
        }
        return Ok((lo..=hi).collect());
    }
    let w: i64 = spec
        .parse()
        .map_err(|_| format!("invalid weight {spec:?}"))?;
    Ok(vec![w])
}

#[derive(Serialize)]
struct BasisDump {
    m: i64,
    w: i64,
    side: Side,
    monomials: Vec<[i64; 3]>,
}

#[derive(Serialize)]
struct TableRow {
    u: [i64; 3],
    v: [i64; 3],
    multiplier: [i64; 3],
    region: Region,
    block: Option<i64>,
    marker: Option<i64>,
}

#[derive(Serialize)]
struct TableDump {
    m: i64,
    w: i64,
    rows: Vec<TableRow>,
}

/// Rows in presentation order: the rectangular part ordered by the slice
/// order, then the triangular part by increasing j and decreasing i of
/// the image.
fn table_rows(m: i64, w: i64) -> Result<Vec<TableRow>, Error> {
    let slice = enumerate_basis(m, w, Side::Rprime)?;
    let mut rect = Vec::new();
    let mut tri = Vec::new();
    for u in slice {
        match classify_region_r(&u, m)? {
            Region::Rectangular => rect.push(u),
            Region::Triangular => tri.push(u),
        }
    }
    rect.sort_by(|x, y| prec_compare_r(m, x, y).unwrap_or(Ordering::Equal));
    let mut tri: Vec<(Monomial, Monomial)> = tri
        .into_iter()
        .map(|u| phi(m, &u).map(|v| (u, v)))
        .collect::<Result<_, _>>()?;
    tri.sort_by_key(|(_, v)| (v.b, -v.a));

    let wc = WeightConstants::new(m, w);
    let mut markers: Vec<(Monomial, i64)> = Vec::new();
    if 3 * (m - 1) <= w && w <= 6 * m - 9 {
        for r in 0..=wc.delta.div_euclid(2) {
            markers.push((marker_monomial(m, w, r)?, r));
        }
    }

    let mut rows = Vec::new();
    let mut push = |u: Monomial| -> Result<(), Error> {
        let v = phi(m, &u)?;
        let q = multiplier_of(m, &u)?;
        rows.push(TableRow {
            u: u.as_triple(),
            v: v.as_triple(),
            multiplier: q.as_triple(),
            region: classify_region_r(&u, m)?,
            block: block_index_of(m, w, &u)?,
            marker: markers.iter().find(|(x, _)| *x == u).map(|(_, r)| *r),
        });
        Ok(())
    };
    for u in rect {
        push(u)?;
    }
    for (u, _) in tri {
        push(u)?;
    }
    Ok(rows)
}

fn fmt_opt(x: Option<i64>) -> String {
    x.map(|v| v.to_string()).unwrap_or_default()
}

fn region_name(region: Region) -> &'static str {
    match region {
        Region::Rectangular => "rectangular",
        Region::Triangular => "triangular",
    }
}

fn emit_tables(m: i64, weights: &[i64], format: FormatArg) -> Result<(), Error> {
    match format {
        FormatArg::Json => {
            for &w in weights {
                let dump = TableDump {
                    m,
                    w,
                    rows: table_rows(m, w)?,
                };
                println!("{}", serde_json::to_string(&dump).expect("serializable"));
            }
        }
        FormatArg::Csv => {
            println!("u_a,u_b,u_c,v_i,v_j,v_k,q_a,q_b,q_c,region,block,marker");
            for &w in weights {
                for row in table_rows(m, w)? {
                    println!(
                        "{},{},{},{},{},{},{},{},{},{},{},{}",
                        row.u[0],
                        row.u[1],
                        row.u[2],
                        row.v[0],
                        row.v[1],
                        row.v[2],
                        row.multiplier[0],
                        row.multiplier[1],
                        row.multiplier[2],
                        region_name(row.region),
                        fmt_opt(row.block),
                        fmt_opt(row.marker)
                    );
                }
            }
        }
        FormatArg::Md => {
            for &w in weights {
                println!("### m = {m}, w = {w}");
                println!();
                println!("| u | phi(u) | multiplier | region | block | marker |");
                println!("|---|--------|------------|--------|-------|--------|");
                for row in table_rows(m, w)? {
                    println!(
                        "| ({}, {}, {}) | ({}, {}, {}) | ({}, {}, {}) | {} | {} | {} |",
                        row.u[0],
                        row.u[1],
                        row.u[2],
                        row.v[0],
                        row.v[1],
                        row.v[2],
                        row.multiplier[0],
                        row.multiplier[1],
                        row.multiplier[2],
                        region_name(row.region),
                        fmt_opt(row.block),
                        fmt_opt(row.marker)
                    );
                }
                println!();
            }
        }
    }
    Ok(())
}

fn run_verify(m: i64, weights: &[i64], mode: ModeArg, cap_nodes: u64, timings: bool) -> ExitCode {
    let mut any_fail = false;
    let mut any_resource = false;
    for &w in weights {
        let start = Instant::now();
        let outcome: Result<VerificationReport, Error> = (|| {
            let mut report = VerificationReport {
                m,
                w,
                mode: match mode {
                    ModeArg::Phi => "phi",
                    ModeArg::Uniqueness => "uniqueness",
                    ModeArg::Noncancel => "noncancel",
                    ModeArg::Blocks => "blocks",
                }
                .to_string(),
                pass: false,
                multiset: None,
                count: None,
                signed: None,
                parity_uniform: None,
                elapsed_ms: None,
            };
            match mode {
                ModeArg::Phi => {
                    report.pass = monobij::bijection::phi_is_bijection_on_slice(m, w)?;
                }
                ModeArg::Uniqueness => {
                    report.multiset = Some(multiset_of(&phi_table(m, w)?)?.to_triples());
                    let sc = check_noncancellation(m, w, cap_nodes)?;
                    report.count = Some(sc.count);
                    report.signed = Some(sc.signed);
                    report.parity_uniform = Some(sc.parity_uniform);
                    report.pass = check_uniqueness(m, w, cap_nodes)?;
                }
                ModeArg::Noncancel => {
                    report.multiset = Some(multiset_of(&phi_table(m, w)?)?.to_triples());
                    let sc = check_noncancellation(m, w, cap_nodes)?;
                    report.count = Some(sc.count);
                    report.signed = Some(sc.signed);
                    report.parity_uniform = Some(sc.parity_uniform);
                    report.pass = sc.parity_uniform && sc.signed != 0;
                }
                ModeArg::Blocks => {
                    let wc = WeightConstants::new(m, w);
                    let has_blocks = w.rem_euclid(3) != 0 && wc.tau >= 0 && w <= 6 * m - 10;
                    let mut pass = true;
                    if has_blocks {
                        for n in 0..=wc.n_max {
                            pass &= block_family_check(m, w, n, cap_nodes)?;
                        }
                        report.count = Some((wc.n_max + 1) as usize);
                    } else {
                        report.count = Some(0);
                    }
                    report.pass = pass;
                }
            }
            Ok(report)
        })();
        match outcome {
            Ok(mut report) => {
                if timings {
                    report.elapsed_ms = Some(start.elapsed().as_millis() as u64);
                }
                any_fail |= !report.pass;
                println!("{}", serde_json::to_string(&report).expect("serializable"));
            }
            Err(Error::Resource(msg)) => {
                any_resource = true;
                eprintln!("error: m={m} w={w}: resource limit: {msg}");
            }
            Err(Error::Domain(msg)) => {
                return usage_error(&format!("m={m} w={w}: {msg}"));
            }
        }
    }
    if any_resource {
        ExitCode::from(3)
    } else if any_fail {
        ExitCode::from(4)
    } else {
        ExitCode::SUCCESS
    }
}

#[derive(Serialize)]
struct DetDump {
    m: i64,
    w: i64,
    prime: u64,
    seed: u64,
    reduced: bool,
    det: u64,
    det_nonzero: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.cmd {
        Cmd::Basis { weights, side } => {
            if weights.m < 2 {
                return usage_error("m >= 2 is required");
            }
            let ws = match parse_weights(weights.m, &weights.w) {
                Ok(ws) => ws,
                Err(msg) => return usage_error(&msg),
            };
            let side = match side {
                SideArg::R => Side::R,
                SideArg::M => Side::M,
                SideArg::Rprime => Side::Rprime,
                SideArg::Mprime => Side::Mprime,
            };
            for w in ws {
                match enumerate_basis(weights.m, w, side) {
                    Ok(monomials) => {
                        let dump = BasisDump {
                            m: weights.m,
                            w,
                            side,
                            monomials: monomials.iter().map(Monomial::as_triple).collect(),
                        };
                        println!("{}", serde_json::to_string(&dump).expect("serializable"));
                    }
                    Err(Error::Domain(msg)) => return usage_error(&msg),
                    Err(Error::Resource(msg)) => {
                        eprintln!("error: {msg}");
                        return ExitCode::from(3);
                    }
                }
            }
            ExitCode::SUCCESS
        }
        Cmd::Table { weights, format } => {
            if weights.m < 2 {
                return usage_error("m >= 2 is required");
            }
            let ws = match parse_weights(weights.m, &weights.w) {
                Ok(ws) => ws,
                Err(msg) => return usage_error(&msg),
            };
            match emit_tables(weights.m, &ws, format) {
                Ok(()) => ExitCode::SUCCESS,
                Err(Error::Domain(msg)) => usage_error(&msg),
                Err(Error::Resource(msg)) => {
                    eprintln!("error: {msg}");
                    ExitCode::from(3)
                }
            }
        }
        Cmd::Verify {
            weights,
            mode,
            cap_nodes,
            timings,
        } => {
            if weights.m < 2 {
                return usage_error("m >= 2 is required");
            }
            let ws = match parse_weights(weights.m, &weights.w) {
                Ok(ws) => ws,
                Err(msg) => return usage_error(&msg),
            };
            run_verify(weights.m, &ws, mode, cap_nodes, timings)
        }
        Cmd::Conjecture {
            m,
            prime,
            seed,
            low_degree,
        } => {
            if m < 2 {
                return usage_error("m >= 2 is required");
            }
            let report = match verify_conjecture(m, prime, seed) {
                Ok(report) => report,
                Err(Error::Domain(msg)) => return usage_error(&msg),
                Err(Error::Resource(msg)) => {
                    eprintln!("error: {msg}");
                    return ExitCode::from(3);
                }
            };
            println!("{}", serde_json::to_string(&report).expect("serializable"));
            let mut pass = report.verdict;
            if low_degree {
                let coeffs = match FormCoeffs::random(m, prime, seed) {
                    Ok(c) => c,
                    Err(e) => return usage_error(&e.to_string()),
                };
                match low_degree_member_check(m, &coeffs, 6) {
                    Ok(ok) => {
                        println!(
                            "{}",
                            serde_json::json!({
                                "m": m, "prime": prime, "seed": seed,
                                "low_degree_free": ok,
                            })
                        );
                        pass &= ok;
                    }
                    Err(Error::Resource(msg)) => {
                        eprintln!("error: {msg}");
                        return ExitCode::from(3);
                    }
                    Err(Error::Domain(msg)) => return usage_error(&msg),
                }
            }
            if pass {
                ExitCode::SUCCESS
            } else {
                for slice in report.slices.iter().filter(|s| !s.det_nonzero) {
                    eprintln!(
                        "verification failure: det(A_w) = 0 at m={m} w={} (prime={prime}, seed={seed})",
                        slice.w
                    );
                }
                ExitCode::from(4)
            }
        }
        Cmd::Det {
            m,
            w,
            symbolic,
            prime,
            seed,
            full,
            cap_dim,
        } => {
            if m < 2 {
                return usage_error("m >= 2 is required");
            }
            if w < 0 {
                return usage_error("w >= 0 is required");
            }
            if symbolic {
                if full {
                    return usage_error("--symbolic supports only the reduced bases");
                }
                match symbolic_det(m, w, cap_dim) {
                    Ok(det) => {
                        for (name, var) in det.var_names().iter().zip(&det.vars) {
                            println!("var {name} = {:?}", var.as_triple());
                        }
                        println!("det = {}", det.render());
                        ExitCode::SUCCESS
                    }
                    Err(Error::Resource(msg)) => {
                        eprintln!("error: {msg}");
                        ExitCode::from(3)
                    }
                    Err(Error::Domain(msg)) => usage_error(&msg),
                }
            } else {
                match det_mod_p(m, w, prime, seed, !full) {
                    Ok(det) => {
                        let dump = DetDump {
                            m,
                            w,
                            prime,
                            seed,
                            reduced: !full,
                            det,
                            det_nonzero: det != 0,
                        };
                        println!("{}", serde_json::to_string(&dump).expect("serializable"));
                        ExitCode::SUCCESS
                    }
                    Err(Error::Resource(msg)) => {
                        eprintln!("error: {msg}");
                        ExitCode::from(3)
                    }
                    Err(Error::Domain(msg)) => usage_error(&msg),
                }
            }
        }
    }
}
