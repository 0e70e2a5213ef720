//! Batch command-line surface: JSON in, deterministic reports out.
//! Exit codes: 0 on Pass, 1 on Fail, 2 on usage or input errors.

use crate::error::{Error, Result};
use crate::json::*;
use crate::lattice::{self, Lattice};
use crate::num::{format_rational, parse_rational, Quad};
use crate::period::{self, K0Verdict};
use crate::polytope::{self, LatticePolytope};
use crate::report::{Report, Status};
use crate::subdivision;
use crate::verify;
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;
use std::sync::Arc;
use std::time::Instant;

#[derive(Parser)]
#[command(
    name = "k3moduli",
    about = "Exact lattice, modular-group, polytope and Novikov-field computations for K3 mirror families",
    version
)]
struct Cli {
    /// Output format for the report.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Include wall-clock timing in the report (reports stop being
    /// byte-reproducible).
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Plain,
}

#[derive(Subcommand)]
enum Command {
    /// Integral lattice computations.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Period-domain and puncture computations for U + <2n>.
    Period {
        #[command(subcommand)]
        cmd: PeriodCmd,
    },
    /// Fricke group actions and orbit checks.
    Fricke {
        #[command(subcommand)]
        cmd: FrickeCmd,
    },
    /// Free-product word algebra and obstructions.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Reflexive polytopes, subdivisions and pencil checks.
    Polytope {
        #[command(subcommand)]
        cmd: PolytopeCmd,
    },
    /// Truncated Novikov series arithmetic.
    Novikov {
        #[command(subcommand)]
        cmd: NovikovCmd,
    },
    /// Run the full verification suite.
    Verify {
        /// all | n1 | n2 | quartic (eg1) | double-plane (eg2)
        #[arg(long, default_value = "all")]
        profile: String,
    },
}

#[derive(Args)]
struct InArg {
    /// Path to a JSON input file, or inline JSON.
    #[arg(long = "in")]
    input: String,
}

#[derive(Subcommand)]
enum LatticeCmd {
    /// Sylvester signature of a lattice.
    Sig(InArg),
    /// Invariant factors of the discriminant group.
    Disc(InArg),
    /// Enumerate (-2)-classes up to a coordinate height.
    Roots {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        height: u32,
        /// Keep one representative per {v, -v} pair.
        #[arg(long)]
        mod_pm: bool,
    },
    /// Saturated orthogonal complement of a vector set.
    Complement {
        #[command(flatten)]
        input: InArg,
        /// JSON {"vectors": [{"coords": [...]}, ...]}.
        #[arg(long)]
        vectors: String,
    },
}

#[derive(Subcommand)]
enum PeriodCmd {
    /// Punctures (b, c) with b <= bmax, |c| <= cmax.
    Punctures {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        bmax: u64,
        #[arg(long)]
        cmax: i64,
        /// Write an SVG plot of the punctured region.
        #[arg(long)]
        svg: Option<std::path::PathBuf>,
        #[arg(long, default_value_t = 2.0)]
        xmax: f64,
        #[arg(long, default_value_t = 2.0)]
        ymax: f64,
    },
    /// Cross-check the root/puncture correspondence on boxes.
    CheckBijection {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        height: u32,
        #[arg(long)]
        bmax: u64,
        #[arg(long)]
        cmax: i64,
    },
    /// Bounded scan for roots orthogonal to both Omega and kappa.
    K0Check {
        #[command(flatten)]
        input: InArg,
        #[arg(long)]
        height: u32,
    },
}

#[derive(Subcommand)]
enum FrickeCmd {
    /// Apply a group element to an upper half-plane point.
    Act {
        #[arg(long)]
        n: u32,
        /// Element JSON {"m": [[a,b],[c,d]], "fricke": bool}.
        #[arg(long)]
        elem: String,
        /// Rational x coordinate (p/q).
        #[arg(long)]
        x: String,
        /// Rational y coordinate (p/q), positive.
        #[arg(long)]
        y: String,
    },
    /// The 3x3 isometry of U + <2n> induced by an element.
    ToIsometry {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        elem: String,
    },
    /// BFS transitivity check on root classes.
    OrbitCheck {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        height: u32,
        /// Generators JSON {"generators": [...]}; defaults to {T, W_n}.
        #[arg(long)]
        gens: Option<String>,
        #[arg(long, default_value_t = 4)]
        slack: u32,
    },
}

#[derive(Subcommand)]
enum GroupCmd {
    /// Dehn-twist generation and cube-root obstructions for Z (+) Z/p.
    Obstruction {
        #[arg(long)]
        p: u32,
    },
    /// Normal form, abelianization and Z/2-projection of a word.
    Reduce {
        /// Word JSON {"p": p, "letters": [{"t": k} | {"s": e}, ...]}.
        #[arg(long)]
        word: String,
    },
}

#[derive(Subcommand)]
enum PolytopeCmd {
    /// Polar dual of a reflexive polytope.
    Dual(InArg),
    /// Lattice-point census by smallest face.
    Points(InArg),
    /// Boundary points not interior to a facet.
    Xi0(InArg),
    /// Condition (*) for a weight vector on Xi0.
    StarCheck {
        #[command(flatten)]
        input: InArg,
        /// Weights JSON {"values": [{"a": "p/q", "b": "p/q", "s": n}, ...]}.
        #[arg(long)]
        lambda: String,
    },
    /// Toric Picard rank of the resolved Batyrev hypersurface.
    PicardRank(InArg),
    /// Assemble the mirror equation from Novikov coefficients.
    MirrorEq {
        #[command(flatten)]
        input: InArg,
        /// Coefficients JSON {"series": [...]}, indexed by Xi0.
        #[arg(long)]
        d: String,
    },
    /// Diagonal root-of-unity invariance of a pencil member.
    Invariance {
        /// dwork | double-plane
        #[arg(long)]
        pencil: String,
        /// Rational pencil parameter.
        #[arg(long, default_value = "1")]
        lambda_value: String,
        /// Optional extra group element "a0,a1,a2,a3 mod m".
        #[arg(long)]
        element: Option<String>,
    },
    /// Exact singularity test of a pencil member at a point.
    SingularAt {
        #[arg(long)]
        pencil: String,
        #[arg(long, default_value = "1")]
        lambda_value: String,
        /// Point JSON {"coords": [[{"c": "p/q", "k": j}, ...], ...]}.
        #[arg(long)]
        point: String,
    },
}

#[derive(Subcommand)]
enum NovikovCmd {
    /// Valuation of a series.
    Val(InArg),
    /// Product of two series.
    Mul {
        #[arg(long)]
        a: String,
        #[arg(long)]
        b: String,
    },
    /// The exponent-scaling automorphism q -> q^a.
    Scale {
        #[arg(long)]
        a: String,
        #[command(flatten)]
        input: InArg,
    },
    /// Exact avoidance of rational hyperplanes by a quadratic vector.
    Avoid {
        /// Lambda JSON {"lambda": [{"a": ..., "b": ..., "s": ...}, ...]}.
        #[arg(long)]
        lambda: String,
        /// Hyperplanes JSON {"hyperplanes": [["p/q", ...], ...]}.
        #[arg(long)]
        hyperplanes: String,
    },
}

/// Read inline JSON or a file path.
fn read_input(spec: &str) -> Result<String> {
    let trimmed = spec.trim_start();
    if trimmed.starts_with('{') || trimmed.starts_with('[') {
        Ok(spec.to_string())
    } else {
        Ok(std::fs::read_to_string(spec)?)
    }
}

fn parse_json<T: serde::de::DeserializeOwned>(spec: &str) -> Result<T> {
    let text = read_input(spec)?;
    serde_json::from_str(&text).map_err(|e| Error::Json(e.to_string()))
}

fn load_lattice(spec: &str) -> Result<Arc<Lattice>> {
    parse_json::<LatticeJson>(spec)?.to_lattice()
}

fn load_polytope(spec: &str) -> Result<LatticePolytope> {
    parse_json::<PolytopeJson>(spec)?.to_polytope()
}

fn quad_json_value(q: &Quad) -> serde_json::Value {
    serde_json::to_value(QuadJson::from_quad(q)).expect("quad serializes")
}

fn run_command(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::Lattice { cmd } => run_lattice(cmd),
        Command::Period { cmd } => run_period(cmd),
        Command::Fricke { cmd } => run_fricke(cmd),
        Command::Group { cmd } => run_group(cmd),
        Command::Polytope { cmd } => run_polytope(cmd),
        Command::Novikov { cmd } => run_novikov(cmd),
        Command::Verify { profile } => run_verify(profile),
    }
}

fn run_lattice(cmd: &LatticeCmd) -> Result<Report> {
    match cmd {
        LatticeCmd::Sig(arg) => {
            let l = load_lattice(&arg.input)?;
            let (p, q) = lattice::signature(&l);
            Ok(Report::new(
                "lattice sig",
                json!({"rank": l.rank()}),
                json!({"p": p, "q": q}),
                Status::Pass,
            ))
        }
        LatticeCmd::Disc(arg) => {
            let l = load_lattice(&arg.input)?;
            let factors: Vec<String> =
                lattice::discriminant_group(&l).iter().map(|x| x.to_string()).collect();
            Ok(Report::new(
                "lattice disc",
                json!({"rank": l.rank()}),
                json!({"factors": factors, "order": lattice::discriminant_order(&l).to_string()}),
                Status::Pass,
            ))
        }
        LatticeCmd::Roots { input, height, mod_pm } => {
            let l = load_lattice(&input.input)?;
            let roots = lattice::enumerate_roots(&l, *height, *mod_pm);
            let coords: Vec<Vec<i64>> = roots.iter().map(|r| r.coords_i64()).collect();
            Ok(Report::new(
                "lattice roots",
                json!({"rank": l.rank(), "height": height, "mod_pm": mod_pm}),
                json!({"count": coords.len(), "roots": coords}),
                Status::Pass,
            ))
        }
        LatticeCmd::Complement { input, vectors } => {
            let l = load_lattice(&input.input)?;
            let vecs: VectorListJson = parse_json(vectors)?;
            let vs: Result<Vec<_>> = vecs.vectors.iter().map(|v| v.to_vector(&l)).collect();
            let (basis, gram) = lattice::orthogonal_complement(&l, &vs?)?;
            let basis_i: Vec<Vec<String>> =
                basis.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            let gram_i: Vec<Vec<String>> =
                gram.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            Ok(Report::new(
                "lattice complement",
                json!({"rank": l.rank(), "vectors": vecs.vectors.len()}),
                json!({"basis": basis_i, "gram": gram_i, "rank": basis.len()}),
                Status::Pass,
            ))
        }
    }
}

fn run_period(cmd: &PeriodCmd) -> Result<Report> {
    match cmd {
        PeriodCmd::Punctures { n, bmax, cmax, svg, xmax, ymax } => {
            let punctures = period::punctures_in_box(*n, *bmax, *cmax)?;
            if let Some(path) = svg {
                let content = crate::svg::punctures_svg(*n, &punctures, *xmax, *ymax);
                std::fs::write(path, content)?;
            }
            let list: Vec<serde_json::Value> =
                punctures.iter().map(|p| json!({"b": p.b, "c": p.c})).collect();
            Ok(Report::new(
                "period punctures",
                json!({"n": n, "bmax": bmax, "cmax": cmax}),
                json!({"count": list.len(), "punctures": list}),
                Status::Pass,
            ))
        }
        PeriodCmd::CheckBijection { n, height, bmax, cmax } => {
            let report = period::roots_punctures_bijection_check(*n, *height, *bmax, *cmax)?;
            let status = if report.passed() { Status::Pass } else { Status::Fail };
            Ok(Report::new(
                "period check-bijection",
                json!({"n": n, "height": height, "bmax": bmax, "cmax": cmax}),
                serde_json::to_value(&report)?,
                status,
            ))
        }
        PeriodCmd::K0Check { input, height } => {
            let data: K0InputJson = parse_json(&input.input)?;
            let l = data.lattice.to_lattice()?;
            let re: Result<Vec<Quad>> = data.re.iter().map(|q| q.to_quad()).collect();
            let im: Result<Vec<Quad>> = data.im.iter().map(|q| q.to_quad()).collect();
            let scale = match &data.im_scale_sq {
                Some(q) => q.to_quad()?,
                None => Quad::one(),
            };
            let omega = period::PeriodVector::with_scale(Arc::clone(&l), re?, im?, scale)?;
            let kappa = l.vector(data.kappa.clone())?;
            let verdict = period::is_in_k0_bounded(&omega, &kappa, *height)?;
            let (status, results) = match verdict {
                K0Verdict::PassesUpToBound(h) => {
                    (Status::Pass, json!({"verdict": "passes_up_to_bound", "height": h}))
                }
                K0Verdict::Fails(delta) => {
                    (Status::Fail, json!({"verdict": "fails", "witness": delta}))
                }
            };
            Ok(Report::new(
                "period k0-check",
                json!({"height": height, "rank": l.rank()}),
                results,
                status,
            ))
        }
    }
}

fn run_fricke(cmd: &FrickeCmd) -> Result<Report> {
    match cmd {
        FrickeCmd::Act { n, elem, x, y } => {
            let e inner: FrickeElementJson = parse_json(elem)?;
            let g = inner.to_element(*n)?;
            let z = crate::period::HPoint::from_rational(
                *n,
                parse_rational(x).map_err(Error::Json)?,
                parse_rational(y).map_err(Error::Json)?,
            )?;
            let gz = crate::fricke::fricke_act(&g, &z)?;
            Ok(Report::new(
                "fricke act",
                json!({"n": n, "x": x, "y": y}),
                json!({"x": quad_json_value(gz.x()), "y": quad_json_value(gz.y())}),
                Status::Pass,
            ))
        }
        FrickeCmd::ToIsometry { n, elem } => {
            let inner: FrickeElementJson = parse_json(elem)?;
            let g = inner.to_element(*n)?;
            let m = crate::fricke::fricke_to_isometry(&g);
            let rows: Vec<Vec<String>> =
                m.iter().map(|r| r.iter().map(|x| x.to_string()).collect()).collect();
            Ok(Report::new(
                "fricke to-isometry",
                json!({"n": n}),
                json!({"matrix": rows}),
                Status::Pass,
            ))
        }
        FrickeCmd::OrbitCheck { n, height, gens, slack } => {
            let generators = match gens {
                Some(spec) => {
                    let g: GeneratorsJson = parse_json(spec)?;
                    g.generators
                        .iter()
                        .map(|e| e.to_element(*n))
                        .collect::<Result<Vec<_>>>()?
                }
                None => crate::fricke::default_generators(*n),
            };
            let report =
                crate::fricke::orbit_transitivity_check(*n, &generators, *height, *slack)?;
            let status = if report.transitive() { Status::Pass } else { Status::Fail };
            Ok(Report::new(
                "fricke orbit-check",
                json!({"n": n, "height": height, "slack": report.slack, "generators": generators.len()}),
                json!({
                    "classes": report.classes,
                    "reached": report.reached,
                    "unreached": report.unreached,
                }),
                status,
            ))
        }
    }
}

fn run_group(cmd: &GroupCmd) -> Result<Report> {
    match cmd {
        GroupCmd::Obstruction { p } => {
            let twist = crate::words::FreeProductWord::t_power(*p, 1)?;
            let verdict = crate::words::dehn_twist_generation_obstruction(*p, &[twist])?;
            let cube = crate::words::cube_root_obstruction(*p, (1, 0));
            Ok(Report::new(
                "group obstruction",
                json!({"p": p}),
                json!({"dehn_generates": verdict.can_generate, "cube_root_of_twist": cube}),
                Status::Pass,
            ))
        }
        GroupCmd::Reduce { word } => {
            let wj: WordJson = parse_json(word)?;
            let w = wj.to_word()?;
            let (t, s) = crate::words::abelianize(&w);
            let reduced: Vec<serde_json::Value> = w
                .letters()
                .iter()
                .map(|l| match l {
                    crate::words::Letter::T(k) => json!({"t": k}),
                    crate::words::Letter::S(e) => json!({"s": e}),
                })
                .collect();
            let z2 = crate::words::project_to_z2_free_product(&w);
            let z2_letters: Vec<serde_json::Value> = z2
                .letters()
                .iter()
                .map(|l| match l {
                    crate::words::Letter::T(k) => json!({"t": k}),
                    crate::words::Letter::S(e) => json!({"s": e}),
                })
                .collect();
            Ok(Report::new(
                "group reduce",
                json!({"p": wj.p}),
                json!({
                    "normal_form": reduced,
                    "abelianization": {"t": t, "s": s},
                    "z2_projection": z2_letters,
                }),
                Status::Pass,
            ))
        }
    }
}

fn run_polytope(cmd: &PolytopeCmd) -> Result<Report> {
    match cmd {
        PolytopeCmd::Dual(arg) => {
            let p = load_polytope(&arg.input)?;
            let dual = polytope::polar_dual(&p)?;
            Ok(Report::new(
                "polytope dual",
                json!({"vertices": p.vertices().len()}),
                serde_json::to_value(PolytopeJson::from_polytope(&dual))?,
                Status::Pass,
            ))
        }
        PolytopeCmd::Points(arg) => {
            let p = load_polytope(&arg.input)?;
            let census = polytope::lattice_points_by_face(&p);
            Ok(Report::new(
                "polytope points",
                json!({"vertices": p.vertices().len()}),
                json!({
                    "total": census.total(),
                    "interior": census.interior,
                    "facet_interior": census.facet_interior,
                    "edge_interior": census.edge_interior,
                    "vertex": census.vertex,
                }),
                Status::Pass,
            ))
        }
        PolytopeCmd::Xi0(arg) => {
            let p = load_polytope(&arg.input)?;
            let xi = polytope::xi0(&p)?;
            Ok(Report::new(
                "polytope xi0",
                json!({"vertices": p.vertices().len()}),
                json!({"count": xi.len(), "points": xi}),
                Status::Pass,
            ))
        }
        PolytopeCmd::StarCheck { input, lambda } => {
            let delta = load_polytope(&input.input)?;
            let p_dual = polytope::polar_dual(&delta)?;
            let weights: WeightsJson = parse_json(lambda)?;
            let lam = weights.to_weights(&p_dual)?;
            let sub = subdivision::support_subdivision(&p_dual, &lam)?;
            let verdict = subdivision::check_condition_star(&delta, &lam)?;
            let cells: Vec<Vec<usize>> =
                sub.cells().iter().map(|c| c.members.clone()).collect();
            let (status, verdict_json) = match &verdict {
                subdivision::StarVerdict::Pass => (Status::Pass, json!({"pass": true})),
                subdivision::StarVerdict::Fail(reason) => {
                    (Status::Fail, json!({"pass": false, "reason": reason}))
                }
            };
            Ok(Report::new(
                "polytope star-check",
                json!({"xi0": lam.points().len()}),
                json!({"verdict": verdict_json, "cells": cells}),
                status,
            ))
        }
        PolytopeCmd::PicardRank(arg) => {
            let p = load_polytope(&arg.input)?;
            let rank = polytope::batyrev_picard_rank(&p)?;
            Ok(Report::new(
                "polytope picard-rank",
                json!({"vertices": p.vertices().len()}),
                json!({"rank": rank}),
                Status::Pass,
            ))
        }
        PolytopeCmd::MirrorEq { input, d } => {
            let delta_dual = load_polytope(&input.input)?;
            let series: SeriesListJson = parse_json(d)?;
            let coeffs: Result<Vec<_>> =
                series.series.iter().map(|s| s.to_series()).collect();
            let eq = crate::mpoly::mirror_equation(&delta_dual, &coeffs?)?;
            let terms: Vec<serde_json::Value> = eq
                .polynomial
                .terms()
                .map(|(e, c)| {
                    json!({"expo": e, "coeff": SeriesJson::from_series(c)})
                })
                .collect();
            let vals: Vec<String> = eq
                .valuations
                .iter()
                .map(|v| match v {
                    crate::novikov::Valuation::Finite(r) => format_rational(r),
                    crate::novikov::Valuation::Infinity => "inf".to_string(),
                    crate::novikov::Valuation::Unknown(b) => {
                        format!(">={}", format_rational(b))
                    }
                })
                .collect();
            Ok(Report::new(
                "polytope mirror-eq",
                json!({"xi0": eq.valuations.len()}),
                json!({"terms": eq.polynomial.term_count(), "polynomial": terms, "valuations": vals}),
                Status::Pass,
            ))
        }
        PolytopeCmd::Invariance { pencil, lambda_value, element } => {
            let lam = parse_rational(lambda_value).map_err(Error::Json)?;
            let (poly, weights, group) = match pencil.as_str() {
                "dwork" => (
                    crate::mpoly::dwork_quartic(lam),
                    vec![1i64, 1, 1, 1],
                    crate::mpoly::dwork_group(),
                ),
                "double-plane" => (
                    crate::mpoly::double_plane_sextic(lam),
                    vec![1i64, 1, 1, 3],
                    crate::mpoly::double_plane_group(),
                ),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown pencil {other:?} (dwork | double-plane)"
                    )))
                }
            };
            let group = match element {
                Some(spec) => vec![parse_element(spec)?],
                None => group,
            };
            let invariant =
                crate::mpoly::diagonal_invariance_check(&poly, &weights, &group)?;
            Ok(Report::new(
                "polytope invariance",
                json!({"pencil": pencil, "lambda": lambda_value, "elements": group.len()}),
                json!({"invariant": invariant}),
                if invariant { Status::Pass } else { Status::Fail },
            ))
        }
        PolytopeCmd::SingularAt { pencil, lambda_value, point } => {
            let lam = parse_rational(lambda_value).map_err(Error::Json)?;
            let poly = match pencil.as_str() {
                "dwork" => crate::mpoly::dwork_quartic(lam),
                "double-plane" => crate::mpoly::double_plane_sextic(lam),
                other => {
                    return Err(Error::InvalidParameter(format!(
                        "unknown pencil {other:?} (dwork | double-plane)"
                    )))
                }
            };
            let pj: CycPointJson = parse_json(point)?;
            let coords: Result<Vec<_>> = pj.coords.iter().map(cyc_from_json).collect();
            let singular = crate::mpoly::is_singular_at(&poly, &coords?)?;
            Ok(Report::new(
                "polytope singular-at",
                json!({"pencil": pencil, "lambda": lambda_value}),
                json!({"singular": singular}),
                Status::Pass,
            ))
        }
    }
}

fn parse_element(spec: &str) -> Result<crate::mpoly::DiagonalElement> {
    // "a0,a1,a2,a3 mod m"
    let (body, modulus) = spec
        .split_once(" mod ")
        .ok_or_else(|| Error::InvalidParameter("element format: \"a0,a1,... mod m\"".into()))?;
    let exps: std::result::Result<Vec<i64>, _> =
        body.split(',').map(|s| s.trim().parse::<i64>()).collect();
    let exponents =
        exps.map_err(|e| Error::InvalidParameter(format!("bad exponent list: {e}")))?;
    let modulus = modulus
        .trim()
        .parse::<u64>()
        .map_err(|e| Error::InvalidParameter(format!("bad modulus: {e}")))?;
    Ok(crate::mpoly::DiagonalElement { exponents, modulus })
}

fn run_novikov(cmd: &NovikovCmd) -> Result<Report> {
    match cmd {
        NovikovCmd::Val(arg) => {
            let s: SeriesJson = parse_json(&arg.input)?;
            let series = s.to_series()?;
            let val = match crate::novikov::nov_val(&series) {
                crate::novikov::Valuation::Finite(r) => json!({"finite": format_rational(&r)}),
                crate::novikov::Valuation::Infinity => json!({"infinite": true}),
                crate::novikov::Valuation::Unknown(b) => {
                    json!({"unknown_at_least": format_rational(&b)})
                }
            };
            Ok(Report::new("novikov val", json!({}), json!({"val": val}), Status::Pass))
        }
        NovikovCmd::Mul { a, b } => {
            let sa: SeriesJson = parse_json(a)?;
            let sb: SeriesJson = parse_json(b)?;
            let p = crate::novikov::nov_mul(&sa.to_series()?, &sb.to_series()?);
            Ok(Report::new(
                "novikov mul",
                json!({}),
                serde_json::to_value(SeriesJson::from_series(&p))?,
                Status::Pass,
            ))
        }
        NovikovCmd::Scale { a, input } => {
            let factor = parse_rational(a).map_err(Error::Json)?;
            let s: SeriesJson = parse_json(&input.input)?;
            let scaled = crate::novikov::nov_scale_exponents(&factor, &s.to_series()?)?;
            Ok(Report::new(
                "novikov scale",
                json!({"a": a}),
                serde_json::to_value(SeriesJson::from_series(&scaled))?,
                Status::Pass,
            ))
        }
        NovikovCmd::Avoid { lambda, hyperplanes } => {
            let lj: LambdaJson = parse_json(lambda)?;
            let lam: Result<Vec<Quad>> = lj.lambda.iter().map(|q| q.to_quad()).collect();
            let hj: HyperplanesJson = parse_json(hyperplanes)?;
            let rows = hj.to_rows()?;
            let avoided = crate::novikov::avoids_rational_hyperplanes(&lam?, &rows)?;
            Ok(Report::new(
                "novikov avoid",
                json!({"hyperplanes": rows.len()}),
                json!({"avoids": avoided}),
                if avoided { Status::Pass } else { Status::Fail },
            ))
        }
    }
}

fn run_verify(profile: &str) -> Result<Report> {
    let p = verify::parse_profile(profile)
        .ok_or_else(|| Error::InvalidParameter(format!("unknown profile {profile:?}")))?;
    let reports = verify::verify_all(p);
    let all_pass = reports.iter().all(|r| r.passed);
    eprint!("{}", verify::format_report_lines(&reports));
    let results: Vec<serde_json::Value> = reports
        .iter()
        .map(|r| {
            json!({
                "id": r.id,
                "name": r.name,
                "passed": r.passed,
                "details": r.details,
            })
        })
        .collect();
    Ok(Report::new(
        "verify",
        json!({"profile": profile}),
        json!({"criteria": results, "all_passed": all_pass}),
        if all_pass { Status::Pass } else { Status::Fail },
    ))
}

/// CLI entry point; returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // clap handles --help/--version as "errors" with exit code 0
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let start = Instant::now();
    match run_command(&cli) {
        Ok(mut report) => {
            if cli.timing {
                report.elapsed_ms = Some(start.elapsed().as_millis());
            }
            match cli.format {
                Format::Json => println!("{}", report.to_json_string()),
                Format::Plain => print!("{}", report.to_plain_string()),
            }
            report.exit_code()
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
