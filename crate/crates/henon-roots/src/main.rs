//! Command-line surface over the library: map expressions in, reports out.
//! All numeric tolerances are flags; every report echoes the effective
//! configuration. Exit codes: 0 success, 1 diagnostic error, 2 verification
//! refuted.

use std::fs::File;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::json;

use henon_roots::cli::{parse_map, parse_point, parse_scalar};
use henon_roots::elementary::{conjugate_to_polynomial, construct_root, TriangularMap};
use henon_roots::green::{
    check_bounds_lemma, fit_multiplier, green_minus, green_plus, GreenParams,
};
use henon_roots::grid::{emit_grid, write_csv, write_pgm, GridQuantity, Slice};
use henon_roots::henon::HenonComposition;
use henon_roots::roots::{
    find_roots, possible_root_orders, symmetry_roots, verify_root, RootCandidate, RootMap,
    RootSearchConfig, RootStatus,
};
use henon_roots::scalar::{ApproxScalar, ExactScalar, Scalar};
use henon_roots::word::{decompose, henon_normal_form, HenonNormalForm};

#[derive(Parser)]
#[command(
    name = "henon-roots",
    about = "Compositional roots of generalized Hénon maps: exact symbolic \
             verification and numerical Green's functions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Run numeric-capable commands in double precision.
    #[arg(long, global = true)]
    approx: bool,

    /// Run in the exact cyclotomic-rational regime (the default).
    #[arg(long, global = true)]
    exact: bool,

    /// Seed for every randomized procedure.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write the report (or grid) to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Pgm,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a map at a point.
    Eval {
        map: String,
        #[arg(long)]
        point: String,
    },
    /// Compose two maps and print the result.
    Compose { outer: String, inner: String },
    /// Decompose an automorphism into a reduced word.
    Decompose { map: String },
    /// Hénon normal form of an automorphism, or the elementary verdict.
    NormalForm { map: String },
    /// Admissible compositional root orders of a Hénon composition.
    RootOrders { map: String },
    /// Search for roots of the given order by coefficient matching.
    FindRoots {
        map: String,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 200)]
        starts: u32,
        #[arg(long, default_value_t = 1e-12)]
        newton_tol: f64,
        #[arg(long, default_value_t = 60)]
        max_newton_iters: u32,
        #[arg(long, default_value_t = 24)]
        snap_conductor: u32,
        #[arg(long, default_value_t = 1e-8)]
        snap_tol: f64,
    },
    /// Verify that a candidate map is a compositional root.
    VerifyRoot {
        map: String,
        #[arg(long)]
        root: String,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// The diagonal symmetry family of a verified root.
    SymmetryRoots {
        map: String,
        #[arg(long)]
        root: String,
        #[arg(long)]
        order: u32,
    },
    /// Construct the (l·r+1)-st root of an elementary non-flow map.
    ElemRoot {
        map: String,
        #[arg(long, default_value_t = 1)]
        l: u32,
    },
    /// Conjugate a triangular root candidate to polynomial form.
    Conjugate {
        map: String,
        #[arg(long)]
        phi: String,
        #[arg(long)]
        order: u32,
    },
    /// Green's function estimate at a point.
    Green {
        map: String,
        #[arg(long)]
        point: String,
        /// Estimate the backward function instead of the forward one.
        #[arg(long)]
        minus: bool,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: u32,
    },
    /// Render a Green's function or escape mask over a planar slice.
    EscapeGrid {
        map: String,
        #[arg(long, value_enum, default_value_t = Quantity::KplusMask)]
        what: Quantity,
        /// Grid size as NXxNY.
        #[arg(long, default_value = "256x256")]
        resolution: String,
        #[arg(long, value_enum, default_value_t = SliceKind::Conj)]
        slice: SliceKind,
        /// Slice center (a scalar; the w-coordinate of the center).
        #[arg(long, default_value = "0")]
        center: String,
        #[arg(long, default_value_t = 3.0)]
        half_width: f64,
        #[arg(long, default_value_t = 200)]
        max_iter: u32,
    },
    /// Measure the empirical constants of the Green's function bounds.
    CheckBounds {
        map: String,
        #[arg(long, default_value_t = 1000)]
        samples: usize,
        #[arg(long, default_value_t = 1e8)]
        scale: f64,
    },
    /// Fit the orbit-growth multiplier of a claimed root.
    FitMultiplier {
        map: String,
        #[arg(long)]
        root: String,
        #[arg(long)]
        order: u32,
        #[arg(long, default_value_t = 200)]
        samples: usize,
    },
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Quantity {
    GreenPlus,
    GreenMinus,
    KplusMask,
    KminusMask,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum SliceKind {
    /// The plane z = conj(w).
    Conj,
    /// The complex line z = 0, varying w around the center.
    WLine,
    /// The complex line w = 0, varying z around the center.
    ZLine,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    let approx_mode = cli.approx && !cli.exact;
    match &cli.command {
        Command::Eval { map, point } => {
            let parsed = parse_map(map).map_err(|e| e.to_string())?;
            let m = parsed.expr.to_poly_map().map_err(|e| e.to_string())?;
            let (z, w) = parse_point(point).map_err(|e| e.to_string())?;
            let result = if approx_mode {
                let (rz, rw) = m
                    .to_approx()
                    .eval((&ApproxScalar(z.embed()), &ApproxScalar(w.embed())));
                format!("({rz}, {rw})")
            } else {
                let (rz, rw) = m.eval((&z, &w));
                format!("({rz}, {rw})")
            };
            let text = format!(
                "map: {}\npoint: ({z}, {w})\nregime: {}\nresult: {result}",
                parsed.expr,
                regime(approx_mode),
            );
            let value = json!({
                "command": "eval",
                "map": format!("{}", parsed.expr),
                "point": { "z": format!("{z}"), "w": format!("{w}") },
                "regime": regime(approx_mode),
                "result": result,
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Compose { outer, inner } => {
            let a = parse_map(outer).map_err(|e| e.to_string())?;
            let b = parse_map(inner).map_err(|e| e.to_string())?;
            let ma = a.expr.to_poly_map().map_err(|e| e.to_string())?;
            let mb = b.expr.to_poly_map().map_err(|e| e.to_string())?;
            let result = ma.compose(&mb).map_err(|e| e.to_string())?;
            let text = format!(
                "outer: {}\ninner: {}\nresult: {result}\ntotal degree: {}",
                a.expr,
                b.expr,
                result.total_degree().unwrap_or(0)
            );
            let value = json!({
                "command": "compose",
                "outer": format!("{}", a.expr),
                "inner": format!("{}", b.expr),
                "result": format!("{result}"),
                "total_degree": result.total_degree().unwrap_or(0),
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Decompose { map } => {
            let parsed = parse_map(map).map_err(|e| e.to_string())?;
            let m = parsed.expr.to_poly_map().map_err(|e| e.to_string())?;
            let word = decompose(&m).map_err(|e| e.to_string())?;
            let letters: Vec<String> = word.letters().iter().map(|l| format!("{l}")).collect();
            let text = format!(
                "map: {}\nword length: {}\nword degree: {}\n{}",
                parsed.expr,
                word.len(),
                word.degree(),
                if letters.is_empty() {
                    "IDENTITY".to_string()
                } else {
                    letters.join("\n")
                }
            );
            let value = json!({
                "command": "decompose",
                "map": format!("{}", parsed.expr),
                "length": word.len(),
                "degree": word.degree(),
                "letters": letters,
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::NormalForm { map } => {
            let parsed = parse_map(map).map_err(|e| e.to_string())?;
            let m = parsed.expr.to_poly_map().map_err(|e| e.to_string())?;
            let nf = henon_normal_form(&m).map_err(|e| e.to_string())?;
            let (text, value) = match nf {
                HenonNormalForm::Henon {
                    composition,
                    conjugator,
                } => {
                    let conj = conjugator.as_map();
                    (
                        format!(
                            "verdict: henon\ncomposition: {composition}\nconjugator: {conj}\n\
                             identity: map = conjugator^-1 . composition . conjugator"
                        ),
                        json!({
                            "command": "normal-form",
                            "verdict": "henon",
                            "composition": format!("{composition}"),
                            "conjugator": format!("{conj}"),
                        }),
                    )
                }
                HenonNormalForm::ConjugateToElementary { conjugator } => (
                    format!(
                        "verdict: conjugate-to-elementary\nconjugator: {}",
                        conjugator
                            .as_ref()
                            .map(|c| format!("{}", c.as_map()))
                            .unwrap_or_else(|| "unavailable in the exact field".into())
                    ),
                    json!({
                        "command": "normal-form",
                        "verdict": "conjugate-to-elementary",
                        "conjugator": conjugator.map(|c| format!("{}", c.as_map())),
                    }),
                ),
                HenonNormalForm::RequiresPolynomialConjugation { reduced_length } => (
                    format!(
                        "verdict: requires-polynomial-conjugation\nreduced length: {reduced_length}"
                    ),
                    json!({
                        "command": "normal-form",
                        "verdict": "requires-polynomial-conjugation",
                        "reduced_length": reduced_length,
                    }),
                ),
            };
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::RootOrders { map } => {
            let comp = henon_composition_arg(map)?;
            let orders = possible_root_orders(&comp);
            let text = format!(
                "map: {comp}\ndegree: {}\nadmissible orders: {}",
                comp.degree(),
                if orders.is_empty() {
                    "none".to_string()
                } else {
                    orders
                        .iter()
                        .map(|o| o.to_string())
                        .collect::<Vec<_>>()
                        .join(", ")
                }
            );
            let value = json!({
                "command": "root-orders",
                "map": format!("{comp}"),
                "degree": comp.degree(),
                "orders": orders,
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FindRoots {
            map,
            order,
            starts,
            newton_tol,
            max_newton_iters,
            snap_conductor,
            snap_tol,
        } => {
            let comp = henon_composition_arg(map)?;
            let cfg = RootSearchConfig {
                newton_starts: *starts,
                newton_tol: *newton_tol,
                max_newton_iters: *max_newton_iters,
                snap_conductor: *snap_conductor,
                snap_tol: *snap_tol,
                seed: cli.seed,
            };
            let roots = find_roots(&comp, *order, &cfg).map_err(|e| e.to_string())?;
            let mut lines = vec![format!(
                "map: {comp}\norder: {order}\nconfig: starts={} newton_tol={} max_iters={} \
                 snap_conductor={} snap_tol={} seed={}\nroots found: {}",
                cfg.newton_starts,
                cfg.newton_tol,
                cfg.max_newton_iters,
                cfg.snap_conductor,
                cfg.snap_tol,
                cfg.seed,
                roots.len()
            )];
            for (k, c) in roots.iter().enumerate() {
                lines.push(root_line(k, c));
            }
            lines.push(format!(
                "search exhausted {} starts per shape",
                cfg.newton_starts
            ));
            let value = json!({
                "command": "find-roots",
                "map": format!("{comp}"),
                "order": order,
                "config": {
                    "starts": cfg.newton_starts,
                    "newton_tol": cfg.newton_tol,
                    "max_newton_iters": cfg.max_newton_iters,
                    "snap_conductor": cfg.snap_conductor,
                    "snap_tol": cfg.snap_tol,
                    "seed": cfg.seed,
                },
                "roots": roots.iter().map(root_json).collect::<Vec<_>>(),
            });
            emit(&cli, lines.join("\n"), value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::VerifyRoot {
            map,
            root,
            order,
            tol,
        } => {
            let comp = henon_composition_arg(map)?;
            let f = parse_map(root)
                .map_err(|e| e.to_string())?
                .expr
                .to_poly_map()
                .map_err(|e| e.to_string())?;
            let status = if approx_mode {
                verify_root(&f.to_approx(), *order, &comp.to_approx(), *tol)
            } else {
                verify_root(&f, *order, &comp, *tol)
            }
            .map_err(|e| e.to_string())?;
            let text = format!(
                "map: {comp}\nroot candidate: {f}\norder: {order}\nregime: {}\ntol: {tol}\n\
                 status: {status}",
                regime(approx_mode)
            );
            let value = json!({
                "command": "verify-root",
                "map": format!("{comp}"),
                "root": format!("{f}"),
                "order": order,
                "regime": regime(approx_mode),
                "tol": tol,
                "status": format!("{status}"),
            });
            emit(&cli, text, value)?;
            Ok(if status == RootStatus::Refuted {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::SymmetryRoots { map, root, order } => {
            let comp = henon_composition_arg(map)?;
            let f = parse_map(root)
                .map_err(|e| e.to_string())?
                .expr
                .to_poly_map()
                .map_err(|e| e.to_string())?;
            let roots = symmetry_roots(&f, *order, &comp).map_err(|e| e.to_string())?;
            let mut lines = vec![format!(
                "map: {comp}\nbase root: {f}\norder: {order}\nsymmetry roots: {}",
                roots.len()
            )];
            for (k, c) in roots.iter().enumerate() {
                let twist = c
                    .twist
                    .as_ref()
                    .map(|(s, r)| format!(" twist=({s}, {r})"))
                    .unwrap_or_default();
                lines.push(format!("{}{}", root_line(k, c), twist));
            }
            let value = json!({
                "command": "symmetry-roots",
                "map": format!("{comp}"),
                "root": format!("{f}"),
                "order": order,
                "roots": roots.iter().map(|c| {
                    let mut v = root_json(c);
                    if let Some((s, r)) = &c.twist {
                        v["twist"] = json!({ "sigma": format!("{s}"), "rho": format!("{r}") });
                    }
                    v
                }).collect::<Vec<_>>(),
            });
            emit(&cli, lines.join("\n"), value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::ElemRoot { map, l } => {
            let parsed = parse_map(map).map_err(|e| e.to_string())?;
            let e = parsed
                .expr
                .to_elem_nonflow()
                .ok_or("elem-root expects an elem_nonflow(...) expression")?;
            let g = construct_root(e, *l).map_err(|err| err.to_string())?;
            let order = l * e.r() + 1;
            let text = format!(
                "map: {e}\nl: {l}\nroot order: {order}\nroot: {g}\nverified: exact composition"
            );
            let value = json!({
                "command": "elem-root",
                "map": format!("{e}"),
                "l": l,
                "order": order,
                "root": format!("{g}"),
                "verified": "exact",
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Conjugate { map, phi, order } => {
            let parsed = parse_map(map).map_err(|e| e.to_string())?;
            let e = parsed
                .expr
                .to_elem_nonflow()
                .ok_or("conjugate expects an elem_nonflow(...) target")?;
            let phi_map = parse_map(phi)
                .map_err(|err| err.to_string())?
                .expr
                .to_poly_map()
                .map_err(|err| err.to_string())?;
            let tri = TriangularMap::from_map(&phi_map).map_err(|err| err.to_string())?;
            let (psi, conjugated) =
                conjugate_to_polynomial(&tri, e, *order).map_err(|err| err.to_string())?;
            let text = format!(
                "target: {e}\nphi: {phi_map}\norder: {order}\npsi: {psi}\nconjugated: {conjugated}\n\
                 verified: psi^-1 . phi^{order} . psi equals the target exactly"
            );
            let value = json!({
                "command": "conjugate",
                "target": format!("{e}"),
                "phi": format!("{phi_map}"),
                "order": order,
                "psi": format!("{psi}"),
                "conjugated": format!("{conjugated}"),
                "verified": "exact",
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Green {
            map,
            point,
            minus,
            tol,
            max_iter,
        } => {
            let comp = henon_composition_arg(map)?.to_approx();
            let (z, w) = parse_point(point).map_err(|e| e.to_string())?;
            let mut prm = GreenParams::for_composition(&comp);
            prm.tol = *tol;
            prm.max_iter = *max_iter;
            let pt = (z.embed(), w.embed());
            let est = if *minus {
                green_minus(pt, &comp, &prm)
            } else {
                green_plus(pt, &comp, &prm)
            };
            let text = format!(
                "point: ({z}, {w})\ndirection: {}\nescape radius: {}\nmax iter: {}\ntol: {}\n\
                 value: {}\niterations: {}\nconverged: {}\nclassification: {}",
                if *minus { "backward" } else { "forward" },
                prm.escape_radius,
                prm.max_iter,
                prm.tol,
                est.value,
                est.iterations,
                est.converged,
                est.classification
            );
            let value = json!({
                "command": "green",
                "point": { "z": format!("{z}"), "w": format!("{w}") },
                "direction": if *minus { "backward" } else { "forward" },
                "params": {
                    "escape_radius": prm.escape_radius,
                    "max_iter": prm.max_iter,
                    "tol": prm.tol,
                },
                "value": est.value,
                "iterations": est.iterations,
                "converged": est.converged,
                "classification": format!("{}", est.classification),
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::EscapeGrid {
            map,
            what,
            resolution,
            slice,
            center,
            half_width,
            max_iter,
        } => {
            let comp = henon_composition_arg(map)?.to_approx();
            let (nx, ny) = parse_resolution(resolution)?;
            let center_scalar = parse_scalar(center).map_err(|e| e.to_string())?.embed();
            let the_slice = match slice {
                SliceKind::Conj => Slice::conjugate_plane(center_scalar, *half_width),
                SliceKind::WLine => {
                    Slice::w_line(Complex64::new(0.0, 0.0), center_scalar, *half_width)
                }
                SliceKind::ZLine => {
                    Slice::z_line(Complex64::new(0.0, 0.0), center_scalar, *half_width)
                }
            };
            let mut prm = GreenParams::for_composition(&comp);
            prm.max_iter = *max_iter;
            let quantity = match what {
                Quantity::GreenPlus => GridQuantity::GreenPlus,
                Quantity::GreenMinus => GridQuantity::GreenMinus,
                Quantity::KplusMask => GridQuantity::KPlusMask,
                Quantity::KminusMask => GridQuantity::KMinusMask,
            };
            let grid = emit_grid(&comp, &the_slice, (nx, ny), &prm, quantity);
            match cli.format {
                Format::Pgm => {
                    let path = cli.out.as_ref().ok_or("--out is required for pgm output")?;
                    let mut file = File::create(path).map_err(|e| e.to_string())?;
                    write_pgm(&grid, &mut file, true).map_err(|e| e.to_string())?;
                    eprintln!("wrote {}x{} pgm to {}", nx, ny, path.display());
                }
                Format::Csv => match &cli.out {
                    Some(path) => {
                        let mut file = File::create(path).map_err(|e| e.to_string())?;
                        write_csv(&grid, &mut file).map_err(|e| e.to_string())?;
                        eprintln!("wrote {}x{} csv to {}", nx, ny, path.display());
                    }
                    None => {
                        let mut stdout = std::io::stdout();
                        write_csv(&grid, &mut stdout).map_err(|e| e.to_string())?;
                    }
                },
                _ => {
                    return Err("escape-grid emits --format pgm or --format csv".into());
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CheckBounds {
            map,
            samples,
            scale,
        } => {
            let comp = henon_composition_arg(map)?.to_approx();
            let prm = GreenParams::for_composition(&comp);
            let report = check_bounds_lemma(&comp, &prm, *samples, *scale, cli.seed);
            let text = format!(
                "samples: {}\nmagnitude scale: {}\nseed: {}\nempirical C+ : {}\n\
                 empirical C- : {}\nmax-bound defect: {}\nbounded points with nonzero value: {}\n\
                 note: constants are empirical estimates, not proven bounds",
                report.samples,
                report.scale_max,
                cli.seed,
                report.c_plus,
                report.c_minus,
                report.max_defect,
                report.bounded_nonzero
            );
            let value = json!({
                "command": "check-bounds",
                "seed": cli.seed,
                "report": report,
                "note": "constants are empirical estimates, not proven bounds",
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::FitMultiplier {
            map,
            root,
            order,
            samples,
        } => {
            let comp = henon_composition_arg(map)?;
            let f = parse_map(root)
                .map_err(|e| e.to_string())?
                .expr
                .to_poly_map()
                .map_err(|e| e.to_string())?;
            let prm = GreenParams::for_composition(&comp);
            let fit = fit_multiplier(&f.to_approx(), &comp.to_approx(), &prm, *samples, cli.seed)
                .map_err(|e| e.to_string())?;
            let d = comp.degree() as f64;
            let b_pow = fit.multiplier.powi(*order as i32);
            let text = format!(
                "map: {comp}\nroot: {f}\norder: {order}\nsamples used: {}\nseed: {}\n\
                 multiplier b: {}\nresidual: {}\nb^order: {}\ndegree d: {}\n|b^order - d|: {}",
                fit.samples,
                cli.seed,
                fit.multiplier,
                fit.residual,
                b_pow,
                d,
                (b_pow - d).abs()
            );
            let value = json!({
                "command": "fit-multiplier",
                "map": format!("{comp}"),
                "root": format!("{f}"),
                "order": order,
                "seed": cli.seed,
                "multiplier": fit.multiplier,
                "residual": fit.residual,
                "samples": fit.samples,
                "b_pow_order": b_pow,
                "degree": d,
            });
            emit(&cli, text, value)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn regime(approx: bool) -> &'static str {
    if approx {
        "approx"
    } else {
        "exact"
    }
}

fn henon_composition_arg(src: &str) -> Result<HenonComposition<ExactScalar>, String> {
    let parsed = parse_map(src).map_err(|e| e.to_string())?;
    parsed.expr.to_henon_composition().ok_or_else(|| {
        format!(
            "'{}' is not a composition of henon(...) factors; this command needs one",
            parsed.expr
        )
    })
}

fn root_line(k: usize, c: &RootCandidate) -> String {
    let map_str = match &c.map {
        RootMap::Exact(m) => format!("{m}"),
        RootMap::Numeric(m) => format!("{m}"),
    };
    format!(
        "root {}: status={} shape={:?} residual={} map={}",
        k + 1,
        c.status,
        c.shape,
        c.residual,
        map_str
    )
}

fn root_json(c: &RootCandidate) -> serde_json::Value {
    let (kind, map_str) = match &c.map {
        RootMap::Exact(m) => ("exact", format!("{m}")),
        RootMap::Numeric(m) => ("numeric", format!("{m}")),
    };
    json!({
        "status": format!("{}", c.status),
        "shape": c.shape,
        "residual": c.residual,
        "coefficients": kind,
        "map": map_str,
    })
}

fn parse_resolution(s: &str) -> Result<(usize, usize), String> {
    let (a, b) = s
        .split_once(['x', 'X'])
        .ok_or("resolution must look like 256x256")?;
    let nx = a.parse().map_err(|_| "bad resolution width")?;
    let ny = b.parse().map_err(|_| "bad resolution height")?;
    if nx == 0 || ny == 0 {
        return Err("resolution must be at least 1x1".into());
    }
    Ok((nx, ny))
}

fn emit(cli: &Cli, text: String, value: serde_json::Value) -> Result<(), String> {
    let body = match cli.format {
        Format::Json => serde_json::to_string_pretty(&value).map_err(|e| e.to_string())?,
        Format::Text => text,
        Format::Pgm | Format::Csv => {
            return Err("this command emits --format text or --format json".into());
        }
    };
    match &cli.out {
        Some(path) => {
            let mut f = File::create(path).map_err(|e| e.to_string())?;
            writeln!(f, "{body}").map_err(|e| e.to_string())?;
        }
        None => println!("{body}"),
    }
    Ok(())
}
