//! Command-line front end. Usage errors exit 2 (clap); domain errors exit 1
//! with a machine-readable {"error": {...}} envelope on stdout. Identical
//! inputs produce identical output bytes.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num::complex::Complex64;
use serde_json::json;

use vvsiegel::cycles::{
    enumerate_admissible, expand_ordinary, expand_primitive, symbol, verify_inversion, CycleKind,
    FormalCycleSum,
};
use vvsiegel::doubling::{enumerate_st, orbit_classes, setofrep_check};
use vvsiegel::error::Error;
use vvsiegel::jsonio::{
    self, c64_matrix_json, cyc_matrix_json, expansion_from_json, expansion_to_json, fmt_f64,
    imat_json, rat_mat_from_value, rat_mat_json, read_json_arg, word_from_value,
};
use vvsiegel::lattice::{discriminant_group, DiscTuple};
use vvsiegel::metaplectic::word_to_element;
use vvsiegel::rat::{format_rat, parse_rat};
use vvsiegel::selftest::run_selftest;
use vvsiegel::series::{
    cone_integral_check, eisenstein_coeffs_genus1, fj_degeneration_check, petersson_constant,
    unfolding_discrepancy, SeriesConfig,
};
use vvsiegel::session::{Backend, Session, SessionConfig};
use vvsiegel::weilrep::WeilData;
use vvsiegel::Result;

#[derive(Parser)]
#[command(name = "vvsiegel", version, about = "vector-valued Siegel modular form toolkit")]
struct Cli {
    /// seed for the randomized checks
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
    /// worker threads for the sampling loops (output is thread-count independent)
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// write the JSON report here instead of stdout
    #[arg(short, long, global = true)]
    output: Option<PathBuf>,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Lattice and discriminant-form information
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Weil representation matrices
    Weilrep {
        #[command(subcommand)]
        cmd: WeilrepCmd,
    },
    /// Truncated Fourier expansions
    Expansion {
        #[command(subcommand)]
        cmd: ExpansionCmd,
    },
    /// Eisenstein/Poincare series and Petersson machinery
    Series {
        #[command(subcommand)]
        cmd: SeriesCmd,
    },
    /// Coprime symmetric pairs and their strata
    Doubling {
        #[command(subcommand)]
        cmd: DoublingCmd,
    },
    /// Special-cycle symbol algebra
    Cycles {
        #[command(subcommand)]
        cmd: CyclesCmd,
    },
    /// Run the built-in invariant battery
    Selftest {
        /// skip the slower numeric checks
        #[arg(long)]
        quick: bool,
    },
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Report rank, signature, discriminant group, level
    Info {
        /// inline gram matrix JSON, e.g. '[[2]]'
        #[arg(long, conflicts_with = "lattice")]
        gram: Option<String>,
        /// lattice file {"gram": [[...]], "name": "..."}
        #[arg(long)]
        lattice: Option<String>,
    },
}

#[derive(Subcommand)]
enum WeilrepCmd {
    /// Evaluate rho_L(word) as an exact or floating matrix
    Matrix {
        #[arg(long)]
        lattice: String,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        /// word file or inline JSON: {"letters": [...], "branch_flip": b}
        #[arg(long)]
        word: String,
        /// emit cyclotomic coefficient vectors (default)
        #[arg(long, conflicts_with = "float")]
        exact: bool,
        /// emit complex doubles instead
        #[arg(long)]
        float: bool,
    },
}

#[derive(Subcommand)]
enum ExpansionCmd {
    /// Parse an expansion file, re-validating every key
    Check {
        #[arg(long)]
        file: String,
        #[arg(long)]
        lattice: String,
    },
    /// Apply the Siegel lowering operator against beta
    Phi {
        #[arg(long)]
        file: String,
        #[arg(long)]
        lattice: String,
        /// beta as generator coordinates, e.g. '[1]' (default: 0)
        #[arg(long)]
        beta: Option<String>,
    },
}

#[derive(Args)]
struct SeriesOpts {
    /// coset height bound H
    #[arg(long, default_value_t = 40)]
    height: i64,
    /// abscissas per x-period / Petersson rows
    #[arg(long, default_value_t = 48)]
    quad: usize,
    /// fundamental-domain y cutoff
    #[arg(long, default_value_t = 6.0)]
    ycut: f64,
    /// row height for coefficient extraction
    #[arg(long, default_value_t = 2.0)]
    ycoeff: f64,
}

impl SeriesOpts {
    fn config(&self, threads: usize) -> SeriesConfig {
        SeriesConfig {
            height: self.height,
            quad_points: self.quad,
            y_cutoff: self.ycut,
            y_coeff: self.ycoeff,
            tol: 1e-6,
            threads,
        }
    }
}

#[derive(Subcommand)]
enum SeriesCmd {
    /// Genus-1 Eisenstein Fourier coefficients by row quadrature
    Eis1 {
        #[arg(long)]
        lattice: String,
        #[arg(short = 'k', long)]
        weight: String,
        /// largest index trace to report
        #[arg(long)]
        mmax: String,
        #[command(flatten)]
        opts: SeriesOpts,
    },
    /// The Petersson constant c_{k,g}, optionally checked by a cone integral
    PetConst {
        #[arg(short = 'k', long)]
        weight: String,
        #[arg(short = 'g', long, default_value_t = 1)]
        genus: usize,
        /// index matrix file or inline JSON to run the cone-integral check
        #[arg(long)]
        check: Option<String>,
    },
    /// Pair E_k against the normalized Poincare series and against its own
    /// m-th coefficient; the two sides demonstrate the unfolding discrepancy
    UnfoldDemo {
        #[arg(short = 'k', long)]
        weight: String,
        #[arg(short = 'm', long, default_value = "1")]
        index: String,
        #[command(flatten)]
        opts: SeriesOpts,
    },
}

#[derive(Subcommand)]
enum DoublingCmd {
    /// Enumerate coprime symmetric pairs up to a height
    Enum {
        #[arg(long, default_value_t = 2)]
        genus: usize,
        #[arg(long, default_value_t = 2)]
        height: i64,
        /// group by rank of C and reduce to left-GL classes
        #[arg(long)]
        stratify: bool,
        /// CSV rows instead of JSON
        #[arg(long)]
        csv: bool,
    },
    /// Verify the stratum representative construction
    SetofrepCheck {
        #[arg(long)]
        nu: usize,
        #[arg(long, default_value_t = 2)]
        height: i64,
        #[arg(long, default_value_t = 2)]
        cover: i64,
    },
    /// Compare the genus-2 class sum against its Fourier-Jacobi degeneration
    FjCheck {
        #[arg(short = 'k', long)]
        weight: String,
        /// lattice file (default: the trivial-discriminant U+U+E8 session)
        #[arg(long)]
        lattice: Option<String>,
        #[arg(long, default_value_t = 2)]
        height: i64,
        #[arg(long, default_value_t = 8.0)]
        ycut: f64,
    },
}

#[derive(Subcommand)]
enum CyclesCmd {
    /// Expand a cycle symbol into the other family
    Expand {
        /// prim | ord
        #[arg(long)]
        kind: String,
        /// index matrix file or inline JSON (entries integer or "p/q")
        #[arg(short = 'T', long = "T")]
        t: String,
        /// tuple of generator coordinates, e.g. '[[1]]'
        #[arg(long)]
        alpha: Option<String>,
        #[arg(long)]
        lattice: String,
    },
    /// Exhaustively verify the Moebius inversion on a trace window
    Verify {
        #[arg(long, default_value_t = 6)]
        trace_bound: i64,
        #[arg(long, default_value_t = 1)]
        genus: usize,
        #[arg(long)]
        lattice: String,
    },
}

fn emit(out: &Option<PathBuf>, body: &str) -> Result<()> {
    match out {
        Some(path) => {
            std::fs::write(path, format!("{body}\n"))?;
        }
        None => println!("{body}"),
    }
    Ok(())
}

fn load_lattice(arg: &str) -> Result<vvsiegel::lattice::EvenLattice> {
    let text = read_json_arg(arg)?;
    jsonio::lattice_from_str(&text)
}

fn parse_tuple(w: &WeilData, genus: usize, arg: Option<&str>) -> Result<DiscTuple> {
    match arg {
        None => Ok(w.dg.zero_tuple(genus)),
        Some(s) => {
            let text = read_json_arg(s)?;
            let coords: Vec<Vec<i64>> = serde_json::from_str(&text)?;
            if coords.len() != genus {
                return Err(Error::GenusMismatch { expected: genus, got: coords.len() });
            }
            let elems: Result<Vec<_>> = coords.iter().map(|c| w.dg.elem(c)).collect();
            Ok(w.dg.tuple(elems?))
        }
    }
}

fn cycle_sum_json(dg: &vvsiegel::lattice::DiscriminantGroup, s: &FormalCycleSum) -> serde_json::Value {
    let terms: Vec<serde_json::Value> = s
        .terms
        .iter()
        .map(|(sym, c)| {
            json!({
                "kind": match sym.kind { CycleKind::Ordinary => "ord", CycleKind::Primitive => "prim" },
                "T": rat_mat_json(&sym.t),
                "alpha": sym.alpha.0.iter().map(|e| e.coords.clone()).collect::<Vec<_>>(),
                "canonical": sym.canonical,
                "coeff": c,
            })
        })
        .collect();
    let _ = dg;
    json!({ "terms": terms, "len": s.len() })
}

fn run(cli: Cli) -> Result<()> {
    let out = cli.output.clone();
    match cli.cmd {
        Cmd::Lattice { cmd: LatticeCmd::Info { gram, lattice } } => {
            let lat = match (&gram, &lattice) {
                (Some(g), None) => {
                    let v: serde_json::Value = serde_json::from_str(&read_json_arg(g)?)?;
                    jsonio::lattice_from_value(&v)?
                }
                (None, Some(l)) => load_lattice(l)?,
                _ => {
                    return Err(Error::BadInput("provide exactly one of --gram, --lattice".into()));
                }
            };
            let dg = discriminant_group(&lat)?;
            let (p, q) = lat.signature();
            let report = json!({
                "name": lat.name(),
                "rank": lat.rank(),
                "gram": imat_json(lat.gram()),
                "det": lat.det().to_string(),
                "signature": [p, q],
                "sig_mod_8": lat.sig().rem_euclid(8),
                "disc_order": dg.order().to_string(),
                "disc_orders": dg.orders(),
                "level": dg.level(),
            });
            emit(&out, &serde_json::to_string(&report)?)
        }
        Cmd::Weilrep { cmd: WeilrepCmd::Matrix { lattice, genus, word, exact, float } } => {
            let _ = exact;
            let lat = load_lattice(&lattice)?;
            let w = WeilData::new(lat)?;
            let v: serde_json::Value = serde_json::from_str(&read_json_arg(&word)?)?;
            let wd = word_from_value(&v)?;
            let _ = word_to_element(genus, &wd)?;
            let rho = w.rho_of_word(genus, &wd)?;
            let body = if float {
                c64_matrix_json(&rho.map(|e| w.field.embed(e)))
            } else {
                cyc_matrix_json(&w.field, &rho)
            };
            emit(&out, &body)
        }
        Cmd::Expansion { cmd } => match cmd {
            ExpansionCmd::Check { file, lattice } => {
                let lat = load_lattice(&lattice)?;
                let dg = discriminant_group(&lat)?;
                let f = expansion_from_json(&dg, &read_json_arg(&file)?)?;
                let report = json!({
                    "genus": f.genus,
                    "weight": format_rat(&f.weight),
                    "cutoff": format_rat(&f.cutoff),
                    "keys": f.table.len(),
                    "valid": true,
                });
                emit(&out, &serde_json::to_string(&report)?)
            }
            ExpansionCmd::Phi { file, lattice, beta } => {
                let lat = load_lattice(&lattice)?;
                let w = WeilData::new(lat)?;
                let f = expansion_from_json(&w.dg, &read_json_arg(&file)?)?;
                let beta = parse_tuple(&w, 1, beta.as_deref())?;
                let phi = vvsiegel::expansion::siegel_phi(&f, &w.dg, &beta)?;
                emit(&out, &expansion_to_json(&w.dg, &phi))
            }
        },
        Cmd::Series { cmd } => match cmd {
            SeriesCmd::Eis1 { lattice, weight, mmax, opts } => {
                let cfg = opts.config(cli.threads);
                let session = Session::open(SessionConfig {
                    lattice_path: PathBuf::from(&lattice),
                    genus: 1,
                    weight: parse_rat(&weight)?,
                    backend: Backend::Numeric,
                    series: cfg.clone(),
                    output: out.clone(),
                })?;
                let coeffs = eisenstein_coeffs_genus1(
                    &session.weil,
                    &session.config.weight,
                    &cfg,
                    &parse_rat(&mmax)?,
                )?;
                let table = expansion_to_json(&session.weil.dg, &coeffs.exp);
                let errs: Vec<String> = coeffs.err.values().map(|e| fmt_f64(*e)).collect();
                let body = format!(
                    "{{\"table\":{table},\"error_estimates\":[{}],\"config\":{}}}",
                    errs.join(","),
                    config_json(&cfg)
                );
                emit(&out, &body)
            }
            SeriesCmd::PetConst { weight, genus, check } => {
                let k = parse_rat(&weight)?;
                let c = petersson_constant(&k, genus)?;
                let mut body = format!(
                    "{{\"k\":\"{}\",\"genus\":{},\"pi_pow\":\"{}\",\"four_pi_pow\":\"{}\",\"gamma_args\":[{}],\"value\":{}",
                    format_rat(&c.k),
                    c.genus,
                    format_rat(&c.pi_pow),
                    format_rat(&c.four_pi_pow),
                    c.gamma_args.iter().map(|a| format!("\"{}\"", format_rat(a))).collect::<Vec<_>>().join(","),
                    fmt_f64(c.value()),
                );
                if let Some(tfile) = check {
                    let v: serde_json::Value = serde_json::from_str(&read_json_arg(&tfile)?)?;
                    let t = rat_mat_from_value(&v)?;
                    let rep = cone_integral_check(&k, genus, &t)?;
                    body.push_str(&format!(
                        ",\"cone_integral\":{},\"predicted\":{},\"rel_err\":{}",
                        fmt_f64(rep.numeric),
                        fmt_f64(rep.predicted),
                        fmt_f64(rep.rel_err),
                    ));
                }
                body.push('}');
                emit(&out, &body)
            }
            SeriesCmd::UnfoldDemo { weight, index, opts } => {
                let cfg = opts.config(cli.threads);
                let w = WeilData::new(
                    vvsiegel::lattice::hyperbolic()
                        .direct_sum(&vvsiegel::lattice::hyperbolic())
                        .direct_sum(&vvsiegel::lattice::e8()),
                )?;
                let rep = unfolding_discrepancy(&w, &parse_rat(&weight)?, &parse_rat(&index)?, &cfg)?;
                let body = format!(
                    "{{\"c0\":{},\"pairing_side\":{},\"pairing_err\":{},\"coefficient_side\":{},\"coefficient_err\":{},\"config\":{}}}",
                    fmt_f64(rep.c0),
                    c64_json(rep.pairing_side),
                    fmt_f64(rep.pairing_err),
                    c64_json(rep.coefficient_side),
                    fmt_f64(rep.coefficient_err),
                    config_json(&cfg),
                );
                emit(&out, &body)
            }
        },
        Cmd::Doubling { cmd } => match cmd {
            DoublingCmd::Enum { genus, height, stratify, csv } => {
                let pairs = enumerate_st(genus, height)?;
                if csv {
                    let mut lines = vec!["index,nu,c,d".to_string()];
                    for (i, p) in pairs.iter().enumerate() {
                        lines.push(format!(
                            "{i},{},{:?},{:?}",
                            p.rank_c(),
                            p.c.rows(),
                            p.d.rows()
                        ));
                    }
                    return emit(&out, &lines.join("\n"));
                }
                let body = if stratify {
                    let strata: Vec<serde_json::Value> = (0..=genus)
                        .map(|nu| {
                            let classes = orbit_classes(&pairs, nu);
                            json!({
                                "nu": nu,
                                "pairs": pairs.iter().filter(|p| p.rank_c() == nu).count(),
                                "classes": classes.len(),
                                "representatives": classes
                                    .iter()
                                    .map(|p| json!({"c": p.c.rows(), "d": p.d.rows()}))
                                    .collect::<Vec<_>>(),
                            })
                        })
                        .collect();
                    json!({ "genus": genus, "height": height, "total": pairs.len(), "strata": strata })
                } else {
                    json!({
                        "genus": genus,
                        "height": height,
                        "total": pairs.len(),
                        "pairs": pairs
                            .iter()
                            .map(|p| json!({"nu": p.rank_c(), "c": p.c.rows(), "d": p.d.rows()}))
                            .collect::<Vec<_>>(),
                    })
                };
                emit(&out, &serde_json::to_string(&body)?)
            }
            DoublingCmd::SetofrepCheck { nu, height, cover } => {
                let rep = setofrep_check(2, nu, height, cover)?;
                let body = json!({
                    "nu": rep.nu,
                    "candidates": rep.candidates,
                    "not_in_stratum": rep.not_in_stratum,
                    "duplicates": rep.duplicates,
                    "uncovered": rep.uncovered.iter()
                        .map(|p| json!({"c": p.c.rows(), "d": p.d.rows()}))
                        .collect::<Vec<_>>(),
                    "pass": rep.pass(),
                });
                emit(&out, &serde_json::to_string(&body)?)
            }
            DoublingCmd::FjCheck { weight, lattice, height, ycut } => {
                let lat = match lattice {
                    Some(l) => load_lattice(&l)?,
                    None => vvsiegel::lattice::hyperbolic()
                        .direct_sum(&vvsiegel::lattice::hyperbolic())
                        .direct_sum(&vvsiegel::lattice::e8()),
                };
                let w = WeilData::new(lat)?;
                let taus = [
                    Complex64::new(0.1, 1.2),
                    Complex64::new(-0.2, 1.5),
                    Complex64::new(0.0, 2.0),
                ];
                let rep = fj_degeneration_check(&w, &parse_rat(&weight)?, &taus, ycut, height)?;
                let points: Vec<String> = rep
                    .points
                    .iter()
                    .map(|(tau, e2, e1, rel)| {
                        format!(
                            "{{\"tau\":{},\"genus2\":{},\"genus1\":{},\"rel_dev\":{}}}",
                            c64_json(*tau),
                            c64_json(*e2),
                            c64_json(*e1),
                            fmt_f64(*rel)
                        )
                    })
                    .collect();
                let body = format!(
                    "{{\"points\":[{}],\"max_rel_dev\":{}}}",
                    points.join(","),
                    fmt_f64(rep.max_rel_dev)
                );
                emit(&out, &body)
            }
        },
        Cmd::Cycles { cmd } => match cmd {
            CyclesCmd::Expand { kind, t, alpha, lattice } => {
                let lat = load_lattice(&lattice)?;
                let w = WeilData::new(lat)?;
                let kind = match kind.as_str() {
                    "prim" => CycleKind::Primitive,
                    "ord" => CycleKind::Ordinary,
                    other => {
                        return Err(Error::BadInput(format!(
                            "unknown cycle kind {other:?} (use prim|ord)"
                        )));
                    }
                };
                let v: serde_json::Value = serde_json::from_str(&read_json_arg(&t)?)?;
                let t = rat_mat_from_value(&v)?;
                let g = t.nrows;
                let alpha = parse_tuple(&w, g, alpha.as_deref())?;
                let s = symbol(&w.dg, kind, t, alpha)?;
                let expanded = match kind {
                    CycleKind::Primitive => expand_primitive(&w.dg, &s)?,
                    CycleKind::Ordinary => expand_ordinary(&w.dg, &s)?,
                };
                emit(&out, &serde_json::to_string(&cycle_sum_json(&w.dg, &expanded))?)
            }
            CyclesCmd::Verify { trace_bound, genus, lattice } => {
                let lat = load_lattice(&lattice)?;
                let dg = discriminant_group(&lat)?;
                let rep = verify_inversion(&dg, genus, trace_bound)?;
                let admissible = enumerate_admissible(&dg, genus, trace_bound)?.len();
                let body = json!({
                    "genus": rep.genus,
                    "trace_bound": rep.trace_bound,
                    "admissible": admissible,
                    "checked": rep.checked,
                    "failures": rep.failures.len(),
                    "pass": rep.pass(),
                });
                emit(&out, &serde_json::to_string(&body)?)
            }
        },
        Cmd::Selftest { quick } => {
            let results = run_selftest(quick, cli.seed);
            let mut failed = 0usize;
            for r in &results {
                if r.pass {
                    println!("ok   {} - {}", r.name, r.detail);
                } else {
                    failed += 1;
                    println!("FAIL {} - {}", r.name, r.detail);
                }
            }
            println!("{} checks, {} failed", results.len(), failed);
            if failed > 0 {
                return Err(Error::BadInput(format!("{failed} selftest checks failed")));
            }
            Ok(())
        }
    }
}

fn c64_json(z: Complex64) -> String {
    format!("[{},{}]", fmt_f64(z.re), fmt_f64(z.im))
}

fn config_json(cfg: &SeriesConfig) -> String {
    format!(
        "{{\"height\":{},\"quad_points\":{},\"y_cutoff\":{},\"y_coeff\":{}}}",
        cfg.height,
        cfg.quad_points,
        fmt_f64(cfg.y_cutoff),
        fmt_f64(cfg.y_coeff)
    )
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => {}
        Err(e) => {
            let envelope = json!({ "error": { "kind": e.kind(), "message": e.to_string() } });
            println!("{envelope}");
            std::process::exit(1);
        }
    }
}
