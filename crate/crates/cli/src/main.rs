//! `wallkit`: walls, chambers, stability, wall-crossing and Uhlenbeck-side
//! reports for rank-2 moduli problems on algebraic surfaces, with exact
//! arithmetic and deterministic JSON output.
//!
//! Exit codes: 0 success, 1 domain error (bad input, precondition failure),
//! 2 internal invariant violation.

mod render;
mod surface;

use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use wallkit_core::lattice::{NumClass, PolarizationPoint, SurfaceModel};
use wallkit_core::riemann_roch::chi_pair;
use wallkit_core::sheaves::{classify_pair, make_extension, PairClass, RankOneData, ZeroCycle};
use wallkit_core::stability::{unique_destabilizer, verdict, UniquenessStatus};
use wallkit_core::uhlenbeck::{
    commutativity_check, fiber_description, phibar, sigma_image, strata_witnesses, BundlePart,
    UhlenbeckPoint,
};
use wallkit_core::wallcross::{classify_crossing, min_c2_unstable, nonsplit_side_exists, H0Status,
    MapStatus, SideExistence};
use wallkit_core::walls::{chambers_on_segment, enumerate_walls};
use wallkit_core::{Int, Rat};

#[derive(Parser)]
#[command(name = "wallkit", version, about = "wall-and-chamber computations for rank-2 moduli")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct SurfaceArg {
    /// Path to a surface file, or a bundled model name (p1xp1, p2,
    /// hyperbolic).
    #[arg(allow_hyphen_values = true, long)]
    surface: String,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ChamberFormat {
    Json,
    Svg,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate a surface model and report every check.
    Validate {
        #[command(flatten)]
        surface: SurfaceArg,
    },
    /// The chi-pairing record of a rank-1 pair.
    Pair {
        #[command(flatten)]
        surface: SurfaceArg,
        /// First rank-1 sheaf, as c1:colength (e.g. 1,-1:0).
        #[arg(allow_hyphen_values = true, long = "L")]
        l: String,
        /// Second rank-1 sheaf.
        #[arg(allow_hyphen_values = true, long = "Lp")]
        lp: String,
    },
    /// Enumerate the walls for Chern data (c1, c2).
    Walls {
        #[command(flatten)]
        surface: SurfaceArg,
        /// First Chern class, comma-separated (defaults to 0).
        #[arg(allow_hyphen_values = true, long)]
        c1: Option<String>,
        #[arg(allow_hyphen_values = true, long)]
        c2: i64,
    },
    /// Decompose a polarization segment into chambers.
    Chambers {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(allow_hyphen_values = true, long)]
        c1: Option<String>,
        #[arg(allow_hyphen_values = true, long)]
        c2: i64,
        /// Segment endpoints A:B, each a comma-separated rational vector
        /// (e.g. 3,1:1,3).
        #[arg(allow_hyphen_values = true, long)]
        segment: String,
        #[arg(allow_hyphen_values = true, long, value_enum, default_value = "json")]
        format: ChamberFormat,
    },
    /// Stability verdict for an extension-presented sheaf.
    Stability {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(allow_hyphen_values = true, long)]
        sub: String,
        #[arg(allow_hyphen_values = true, long)]
        quot: String,
        #[arg(long)]
        split: bool,
        #[arg(allow_hyphen_values = true, long = "H")]
        h: String,
        /// Additional candidate subsheaf shapes to test, c1:colength.
        #[arg(allow_hyphen_values = true, long)]
        extra: Vec<String>,
        /// Also report the destabilizer-uniqueness check.
        #[arg(long)]
        uniqueness: bool,
    },
    /// The wall-crossing case table for an NU pair.
    ClassifyPair {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(allow_hyphen_values = true, long = "L")]
        l: String,
        #[arg(allow_hyphen_values = true, long = "Lp")]
        lp: String,
        #[arg(allow_hyphen_values = true, long = "H")]
        h: String,
        #[arg(allow_hyphen_values = true, long = "H0")]
        h0: String,
        #[arg(allow_hyphen_values = true, long = "Hp")]
        hp: String,
    },
    /// Least c2' at which the chamber-stable, wall-unstable construction is
    /// certified.
    MinC2 {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(allow_hyphen_values = true, long = "L")]
        l: String,
        #[arg(allow_hyphen_values = true, long)]
        c1: Option<String>,
        #[arg(allow_hyphen_values = true, long = "H0")]
        h0: String,
        #[arg(allow_hyphen_values = true, long = "H")]
        h: String,
    },
    /// Uhlenbeck-side operations.
    Uhlenbeck {
        #[command(subcommand)]
        cmd: UCmd,
    },
}

#[derive(Subcommand)]
enum UCmd {
    /// Image of a semistable sheaf in the Uhlenbeck compactification.
    Map {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(allow_hyphen_values = true, long)]
        sub: String,
        #[arg(allow_hyphen_values = true, long)]
        quot: String,
        #[arg(long)]
        split: bool,
        /// Explicit zero-cycle of the sub, p:mult pairs (e.g. p:1,q:2).
        #[arg(allow_hyphen_values = true, long)]
        sub_cycle: Option<String>,
        #[arg(allow_hyphen_values = true, long)]
        quot_cycle: Option<String>,
        #[arg(allow_hyphen_values = true, long = "H")]
        h: String,
        /// Torsion cycle of the double-dual quotient for the stable branch.
        #[arg(allow_hyphen_values = true, long)]
        torsion: Option<String>,
    },
    /// Fiber of the descent map over a split point.
    Fiber {
        #[command(flatten)]
        surface: SurfaceArg,
        /// The split class L, comma-separated.
        #[arg(allow_hyphen_values = true, long = "L")]
        l: String,
        #[arg(allow_hyphen_values = true, long)]
        c2: i64,
        /// The target's zero-cycle, p:mult pairs.
        #[arg(allow_hyphen_values = true, long)]
        cycle: Option<String>,
        #[arg(allow_hyphen_values = true, long = "H0")]
        h0: String,
    },
    /// Per-stratum surjectivity certificates.
    Strata {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(allow_hyphen_values = true, long = "H")]
        h: String,
        #[arg(allow_hyphen_values = true, long)]
        c2: i64,
    },
    /// Check the descent square on a concrete sheaf.
    Commute {
        #[command(flatten)]
        surface: SurfaceArg,
        #[arg(allow_hyphen_values = true, long)]
        sub: String,
        #[arg(allow_hyphen_values = true, long)]
        quot: String,
        #[arg(long)]
        split: bool,
        #[arg(allow_hyphen_values = true, long)]
        sub_cycle: Option<String>,
        #[arg(allow_hyphen_values = true, long)]
        quot_cycle: Option<String>,
        #[arg(allow_hyphen_values = true, long = "H")]
        h: String,
        #[arg(allow_hyphen_values = true, long = "H0")]
        h0: String,
        #[arg(allow_hyphen_values = true, long)]
        torsion: Option<String>,
    },
}

/// A failure with its exit tier: 1 for domain errors, 2 for invariant
/// violations.
struct Failure {
    code: u8,
    message: String,
}

impl From<wallkit_core::Error> for Failure {
    fn from(e: wallkit_core::Error) -> Self {
        Failure {
            code: if e.is_invariant_violation() { 2 } else { 1 },
            message: e.to_string(),
        }
    }
}

fn fail(message: impl Into<String>) -> Failure {
    Failure {
        code: 1,
        message: message.into(),
    }
}

type CliResult = Result<Value, Failure>;

fn parse_class(s: &str) -> Result<NumClass, Failure> {
    let coords: Result<Vec<Int>, _> = s.split(',').map(|t| t.trim().parse::<Int>()).collect();
    coords
        .map(NumClass::new)
        .map_err(|_| fail(format!("`{s}` is not a comma-separated integer vector")))
}

fn parse_rat(s: &str) -> Result<Rat, Failure> {
    if s.contains('.') {
        return Err(fail(format!(
            "`{s}`: float literals are not accepted, use exact rationals like 3/2"
        )));
    }
    Rat::from_str(s).map_err(|_| fail(format!("`{s}` is not an exact rational")))
}

fn parse_rats(s: &str) -> Result<Vec<Rat>, Failure> {
    s.split(',').map(|t| parse_rat(t.trim())).collect()
}

fn parse_polarization(model: &SurfaceModel, s: &str) -> Result<PolarizationPoint, Failure> {
    Ok(model.polarization(parse_rats(s)?)?)
}

/// c1:colength, e.g. `1,-1:0`.
fn parse_rank_one(s: &str) -> Result<RankOneData, Failure> {
    let (c1, ell) = s
        .rsplit_once(':')
        .ok_or_else(|| fail(format!("`{s}`: expected c1:colength")))?;
    let colength: u64 = ell
        .trim()
        .parse()
        .map_err(|_| fail(format!("`{ell}` is not a non-negative integer colength")))?;
    Ok(RankOneData::new(parse_class(c1)?, colength))
}

/// p:mult pairs, e.g. `p:1,q:2`; empty string is the empty cycle.
fn parse_cycle(s: &str) -> Result<ZeroCycle, Failure> {
    let mut z = ZeroCycle::empty();
    if s.trim().is_empty() {
        return Ok(z);
    }
    for part in s.split(',') {
        let (p, m) = part
            .trim()
            .rsplit_once(':')
            .ok_or_else(|| fail(format!("`{part}`: expected point:multiplicity")))?;
        let mult: u64 = m
            .trim()
            .parse()
            .map_err(|_| fail(format!("`{m}` is not a positive multiplicity")))?;
        if mult == 0 {
            return Err(fail("cycle multiplicities must be positive"));
        }
        z.insert(p.trim(), mult);
    }
    Ok(z)
}

fn rank_one_with_cycle(spec: &str, cycle: Option<&str>) -> Result<RankOneData, Failure> {
    let base = parse_rank_one(spec)?;
    match cycle {
        None => Ok(base),
        Some(c) => {
            let z = parse_cycle(c)?;
            if z.length() != base.colength {
                return Err(fail(format!(
                    "cycle length {} disagrees with declared colength {}",
                    z.length(),
                    base.colength
                )));
            }
            Ok(RankOneData::with_cycle(base.c1, z))
        }
    }
}

fn load(surface: &SurfaceArg) -> Result<SurfaceModel, Failure> {
    let model = surface::resolve_surface(&surface.surface).map_err(fail)?;
    let report = model.validate();
    if !report.passed() {
        return Err(fail(format!(
            "surface model failed validation: {}",
            report.failures().join("; ")
        )));
    }
    Ok(model)
}

fn default_c1(model: &SurfaceModel, c1: Option<&str>) -> Result<NumClass, Failure> {
    match c1 {
        Some(s) => parse_class(s),
        None => Ok(NumClass::zero(model.rank)),
    }
}

fn run(cmd: Cmd) -> CliResult {
    match cmd {
        Cmd::Validate { surface } => {
            let model = surface::resolve_surface(&surface.surface).map_err(fail)?;
            let report = model.validate();
            let checks: Vec<Value> = report
                .checks
                .iter()
                .map(|c| {
                    json!({
                        "name": c.name,
                        "passed": c.passed,
                        "detail": c.detail,
                    })
                })
                .collect();
            let out = json!({
                "schema": render::SCHEMA,
                "command": "validate",
                "surface": model.name,
                "checks": checks,
                "signature": report.signature.map(|(p, n, z)| format!("({p},{n},{z})")),
                "passed": report.passed(),
            });
            if report.passed() {
                Ok(out)
            } else {
                println!("{}", to_pretty(&out));
                Err(fail("surface model failed validation"))
            }
        }
        Cmd::Pair { surface, l, lp } => {
            let model = load(&surface)?;
            let l = parse_rank_one(&l)?;
            let lp = parse_rank_one(&lp)?;
            let rec = chi_pair(&l, &lp, &model)?;
            let tau = l.c1.sub(&lp.c1);
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "pair",
                "surface": model.name,
                "pair_class": pair_class_str(classify_pair(&l, &lp, &model)?),
                "tau": render::class(&tau),
                "chi": render::chi_record(&rec),
            }))
        }
        Cmd::Walls { surface, c1, c2 } => {
            let model = load(&surface)?;
            let c1 = default_c1(&model, c1.as_deref())?;
            let ws = enumerate_walls(&model, &c1, &Int::from(c2))?;
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "walls",
                "surface": model.name,
                "c1": render::class(&c1),
                "c2": render::num(&Int::from(c2)),
                "walls": ws.walls.iter().map(render::wall).collect::<Vec<_>>(),
                "boundary_only": ws.boundary_only.iter().map(render::class).collect::<Vec<_>>(),
            }))
        }
        Cmd::Chambers {
            surface,
            c1,
            c2,
            segment,
            format,
        } => {
            let model = load(&surface)?;
            let c1 = default_c1(&model, c1.as_deref())?;
            let (a_str, b_str) = segment
                .split_once(':')
                .ok_or_else(|| fail("--segment expects A:B"))?;
            let a = parse_polarization(&model, a_str)?;
            let b = parse_polarization(&model, b_str)?;
            let d = chambers_on_segment(&a, &b, &c1, &Int::from(c2), &model)?;
            if format == ChamberFormat::Svg {
                return Ok(Value::String(render::chamber_svg(&d)));
            }
            let crossings: Vec<Value> = d
                .crossings
                .iter()
                .map(|(t, ws)| {
                    json!({
                        "t": render::num(t),
                        "walls": ws.iter().map(render::wall).collect::<Vec<_>>(),
                    })
                })
                .collect();
            let intervals: Vec<Value> = d
                .intervals
                .iter()
                .map(|(lo, hi)| Value::Array(vec![render::num(lo), render::num(hi)]))
                .collect();
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "chambers",
                "surface": model.name,
                "c1": render::class(&c1),
                "c2": render::num(&Int::from(c2)),
                "segment": { "a": render::point(&a), "b": render::point(&b) },
                "crossings": crossings,
                "intervals": intervals,
                "chamber_count": d.intervals.len(),
            }))
        }
        Cmd::Stability {
            surface,
            sub,
            quot,
            split,
            h,
            extra,
            uniqueness,
        } => {
            let model = load(&surface)?;
            let v = make_extension(
                parse_rank_one(&sub)?,
                parse_rank_one(&quot)?,
                split,
                &model,
            )?;
            let h = parse_polarization(&model, &h)?;
            let extras: Result<Vec<RankOneData>, Failure> =
                extra.iter().map(|e| parse_rank_one(e)).collect();
            let vd = verdict(&v, &h, &extras?, &model)?;
            let (cert, tag) = render::certification(&vd.certification);
            let mut out = json!({
                "schema": render::SCHEMA,
                "command": "stability",
                "surface": model.name,
                "c1v": render::class(&v.c1v),
                "c2v": render::num(&v.c2v),
                "mt": render::level(vd.mt),
                "gieseker": render::level(vd.gieseker),
                "witness": vd.witness.as_ref().map(render::comparison),
                "certification": cert,
                "certificate": tag,
            });
            if uniqueness {
                let r = unique_destabilizer(&v, &h, &model)?;
                out["uniqueness"] = match r.status {
                    UniquenessStatus::Unique(w) => json!({
                        "status": "unique",
                        "destabilizer": render::comparison(&w),
                    }),
                    UniquenessStatus::SplitPair(ws) => json!({
                        "status": "split_pair",
                        "destabilizers": ws.iter().map(render::comparison).collect::<Vec<_>>(),
                    }),
                    UniquenessStatus::StableVacuous => json!({ "status": "stable_vacuous" }),
                };
            }
            Ok(out)
        }
        Cmd::ClassifyPair {
            surface,
            l,
            lp,
            h,
            h0,
            hp,
        } => {
            let model = load(&surface)?;
            let l = parse_rank_one(&l)?;
            let lp = parse_rank_one(&lp)?;
            let h = parse_polarization(&model, &h)?;
            let h0 = parse_polarization(&model, &h0)?;
            let hp = parse_polarization(&model, &hp)?;
            let r = classify_crossing(&l, &lp, &h, &h0, &hp, &model)?;
            let side = nonsplit_side_exists(&l, &lp, &model)?;
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "classify_pair",
                "surface": model.name,
                "pair_class": pair_class_str(r.pair_class),
                "wall": render::wall(&r.wall),
                "h0_status": match r.h0_status {
                    H0Status::H0Stable => "h0_stable",
                    H0Status::H0StrictlySemistable => "h0_strictly_semistable",
                    H0Status::H0Unstable => "h0_unstable",
                },
                "phi": map_status_str(r.phi),
                "psi": map_status_str(r.psi),
                "fiber_fwd_vdim": render::num(&r.fiber_fwd_vdim),
                "fiber_bwd_vdim": render::num(&r.fiber_bwd_vdim),
                "exclusivity_witness": {
                    "tau_dot_h": render::num(&r.exclusivity_witness.0),
                    "tau_dot_hp": render::num(&r.exclusivity_witness.1),
                },
                "nonsplit_side": match side {
                    SideExistence::ForwardOnly => "forward_only",
                    SideExistence::BackwardOnly => "backward_only",
                    SideExistence::Both => "both",
                },
                "chi": render::chi_record(&r.chi),
            }))
        }
        Cmd::MinC2 {
            surface,
            l,
            c1,
            h0,
            h,
        } => {
            let model = load(&surface)?;
            let l = parse_rank_one(&l)?;
            let c1 = default_c1(&model, c1.as_deref())?;
            let h0 = parse_polarization(&model, &h0)?;
            let h = parse_polarization(&model, &h)?;
            let c2 = min_c2_unstable(&l, &c1, &h0, &h, &model)?;
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "min_c2",
                "surface": model.name,
                "l_c1": render::class(&l.c1),
                "c1": render::class(&c1),
                "min_c2": render::num(&c2),
            }))
        }
        Cmd::Uhlenbeck { cmd } => run_uhlenbeck(cmd),
    }
}

fn run_uhlenbeck(cmd: UCmd) -> CliResult {
    match cmd {
        UCmd::Map {
            surface,
            sub,
            quot,
            split,
            sub_cycle,
            quot_cycle,
            h,
            torsion,
        } => {
            let model = load(&surface)?;
            let v = make_extension(
                rank_one_with_cycle(&sub, sub_cycle.as_deref())?,
                rank_one_with_cycle(&quot, quot_cycle.as_deref())?,
                split,
                &model,
            )?;
            let h = parse_polarization(&model, &h)?;
            let t = torsion.as_deref().map(parse_cycle).transpose()?;
            let pt = sigma_image(&v, &h, t.as_ref(), &model)?;
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "uhlenbeck_map",
                "surface": model.name,
                "point": render::uhlenbeck_point(&pt),
            }))
        }
        UCmd::Fiber {
            surface,
            l,
            c2,
            cycle,
            h0,
        } => {
            let model = load(&surface)?;
            let l = parse_class(&l)?;
            let z = cycle.as_deref().map(parse_cycle).transpose()?.unwrap_or_default();
            let h0 = parse_polarization(&model, &h0)?;
            let j = -model.self_pair(&l)?;
            let target = UhlenbeckPoint::new(
                Int::from(c2),
                j,
                BundlePart::SplitPart(l),
                z,
                &model,
            )?;
            let f = fiber_description(&target, &h0, &model)?;
            let components: Vec<Value> = f
                .components
                .iter()
                .map(|c| {
                    json!({
                        "jp": render::num(&c.jp),
                        "subcycle": render::cycle(&c.subcycle),
                        "sub_c1": render::class(&c.sub_c1),
                        "quot_c1": render::class(&c.quot_c1),
                        "quot_cycle_red": render::cycle(&c.quot_cycle_red),
                        "vdim": render::num(&c.vdim),
                        "vanishing_assumed": c.vanishing_assumed,
                    })
                })
                .collect();
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "uhlenbeck_fiber",
                "surface": model.name,
                "target": render::uhlenbeck_point(&f.target),
                "components": components,
            }))
        }
        UCmd::Strata { surface, h, c2 } => {
            let model = load(&surface)?;
            let h = parse_polarization(&model, &h)?;
            let ws = strata_witnesses(&model, &h, &Int::from(c2))?;
            let strata: Vec<Value> = ws
                .iter()
                .map(|w| {
                    json!({
                        "j": render::num(&w.j),
                        "certificate": render::stratum_certificate(&w.certificate),
                    })
                })
                .collect();
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "uhlenbeck_strata",
                "surface": model.name,
                "c2": render::num(&Int::from(c2)),
                "strata": strata,
            }))
        }
        UCmd::Commute {
            surface,
            sub,
            quot,
            split,
            sub_cycle,
            quot_cycle,
            h,
            h0,
            torsion,
        } => {
            let model = load(&surface)?;
            let v = make_extension(
                rank_one_with_cycle(&sub, sub_cycle.as_deref())?,
                rank_one_with_cycle(&quot, quot_cycle.as_deref())?,
                split,
                &model,
            )?;
            let h = parse_polarization(&model, &h)?;
            let h0 = parse_polarization(&model, &h0)?;
            let t = torsion.as_deref().map(parse_cycle).transpose()?;
            let commutes = commutativity_check(&v, &h, &h0, t.as_ref(), &model)?;
            let lhs = phibar(&v, &h, &h0, t.as_ref(), &model)?;
            let rhs = sigma_image(&v, &h0, t.as_ref(), &model)?;
            Ok(json!({
                "schema": render::SCHEMA,
                "command": "uhlenbeck_commute",
                "surface": model.name,
                "commutes": commutes,
                "descended": render::uhlenbeck_point(&lhs),
                "direct": render::uhlenbeck_point(&rhs),
            }))
        }
    }
}

fn pair_class_str(p: PairClass) -> &'static str {
    match p {
        PairClass::U => "U",
        PairClass::NU => "NU",
    }
}

fn map_status_str(m: MapStatus) -> &'static str {
    match m {
        MapStatus::DefinedInjective => "defined_injective",
        MapStatus::DefinedCollapsing => "defined_collapsing",
        MapStatus::Undefined => "undefined",
    }
}

fn to_pretty(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("serializable report")
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.cmd) {
        Ok(Value::String(raw)) => {
            // SVG output is emitted verbatim.
            print!("{raw}");
            ExitCode::SUCCESS
        }
        Ok(v) => {
            println!("{}", to_pretty(&v));
            ExitCode::SUCCESS
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
