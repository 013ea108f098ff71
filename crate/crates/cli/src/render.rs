//! Deterministic report rendering: JSON values with exact-string numerics
//! (keys are sorted by the serializer) and the SVG segment plot.

use serde_json::{json, Value};

use wallkit_core::lattice::{NumClass, PolarizationPoint};
use wallkit_core::riemann_roch::ChiRecord;
use wallkit_core::sheaves::ZeroCycle;
use wallkit_core::stability::{CertTag, Certification, ChiComparison, StabilityLevel};
use wallkit_core::uhlenbeck::{BundlePart, StratumCertificate, UhlenbeckPoint};
use wallkit_core::walls::{ChamberDecomposition, Wall};
use wallkit_core::{Int, Rat};

pub const SCHEMA: &str = "wallcross/1";

/// Exact decimal string of an integer or rational.
pub fn num<T: std::fmt::Display>(x: &T) -> Value {
    Value::String(x.to_string())
}

pub fn class(c: &NumClass) -> Value {
    Value::Array(c.coords().iter().map(|x| num(x)).collect())
}

pub fn rats(coords: &[Rat]) -> Value {
    Value::Array(coords.iter().map(|x| num(x)).collect())
}

pub fn point(h: &PolarizationPoint) -> Value {
    rats(h.coords())
}

pub fn cycle(z: &ZeroCycle) -> Value {
    let mut map = serde_json::Map::new();
    for (p, m) in z.iter() {
        map.insert(p.to_string(), Value::String(m.to_string()));
    }
    Value::Object(map)
}

pub fn wall(w: &Wall) -> Value {
    let mut v = json!({
        "tau": class(&w.tau),
        "tau_sq": num(&w.tau_sq),
        "witnesses": Value::Array(w.witnesses.iter().map(class).collect()),
    });
    if let Some(t) = &w.segment_crossing {
        v["segment_crossing"] = num(t);
    }
    v
}

pub fn chi_record(r: &ChiRecord) -> Value {
    json!({
        "chi_l": num(&r.chi_l),
        "chi_lp": num(&r.chi_lp),
        "chi_pair_fwd": num(&r.chi_pair_fwd),
        "chi_pair_bwd": num(&r.chi_pair_bwd),
        "tau_sq": num(&r.tau_sq),
        "k_dot_tau": num(&r.k_dot_tau),
        "d": num(&r.d),
        "ext_sum": num(&r.ext_sum),
    })
}

pub fn level(l: StabilityLevel) -> Value {
    Value::String(
        match l {
            StabilityLevel::Stable => "stable",
            StabilityLevel::StrictlySemistable => "strictly_semistable",
            StabilityLevel::Unstable => "unstable",
        }
        .to_string(),
    )
}

pub fn certification(c: &Certification) -> (Value, Value) {
    match c {
        Certification::Certified(tag) => (
            Value::String("certified".into()),
            Value::String(
                match tag {
                    CertTag::SubsheafWitness => "subsheaf_witness",
                    CertTag::NonsplitOffWallStable => "nonsplit_off_wall_stable",
                    CertTag::OnWallChiCompare => "on_wall_chi_compare",
                    CertTag::SplitPair => "split_pair",
                    CertTag::UniversalFamily => "universal_family",
                }
                .to_string(),
            ),
        ),
        Certification::CandidateRelative => {
            (Value::String("candidate_relative".into()), Value::Null)
        }
    }
}

pub fn comparison(w: &ChiComparison) -> Value {
    json!({
        "candidate_c1": class(&w.candidate_c1),
        "colength": Value::String(w.colength.to_string()),
        "tau": class(&w.tau),
        "slope": num(&w.slope),
        "two_chi_l": num(&w.two_chi_l),
        "chi_v": num(&w.chi_v),
    })
}

pub fn uhlenbeck_point(p: &UhlenbeckPoint) -> Value {
    let bundle = match &p.bundle_part {
        BundlePart::SplitPart(l) => json!({
            "kind": "split",
            "l": class(l),
        }),
        BundlePart::StableBundleTag { c2, id } => json!({
            "kind": "stable",
            "c2": num(c2),
            "id": Value::String(id.clone()),
        }),
    };
    json!({
        "total_c2": num(&p.total_c2),
        "stratum_j": num(&p.stratum_j),
        "bundle_part": bundle,
        "cycle": cycle(&p.cycle),
    })
}

pub fn stratum_certificate(c: &StratumCertificate) -> Value {
    match c {
        StratumCertificate::LowestStratumExtension { ext_dim } => json!({
            "kind": "lowest_stratum_extension",
            "ext_dim": num(ext_dim),
        }),
        StratumCertificate::ElementaryTransformation { assumption } => json!({
            "kind": "elementary_transformation",
            "assumption": Value::String(assumption.clone()),
        }),
        StratumCertificate::OnWallSplit { l, ext_bound } => json!({
            "kind": "on_wall_split",
            "l": class(l),
            "ext_bound": num(ext_bound),
        }),
        StratumCertificate::SplitLocusEmpty { reason } => json!({
            "kind": "split_locus_empty",
            "reason": Value::String(reason.clone()),
        }),
    }
}

/// Fixed-point decimal string of a rational with two places, truncated
/// toward zero; used only for SVG geometry, never for report numerics.
fn dec2(r: &Rat) -> String {
    let scaled = (r * Rat::from_integer(Int::from(100))).floor().to_integer();
    let whole = &scaled / Int::from(100);
    let frac = (&scaled % Int::from(100)).magnitude().clone();
    format!("{whole}.{frac:02}")
}

/// A byte-deterministic SVG number-line plot of a chamber decomposition:
/// crossing ticks labeled by the parameter and wall classes, chambers shaded
/// alternately.
pub fn chamber_svg(d: &ChamberDecomposition) -> String {
    let width = 800;
    let height = 160;
    let x0 = Rat::from_integer(Int::from(60));
    let span = Rat::from_integer(Int::from(680));
    let x_at = |t: &Rat| dec2(&(&x0 + &span * t));

    let mut out = String::new();
    out.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{width}\" height=\"{height}\" viewBox=\"0 0 {width} {height}\">\n"
    ));
    out.push_str("  <style>text { font-family: monospace; font-size: 12px; }</style>\n");
    for (i, (lo, hi)) in d.intervals.iter().enumerate() {
        let fill = if i % 2 == 0 { "#e8e8f4" } else { "#c8c8e0" };
        let xl = x_at(lo);
        let w = dec2(&(&span * &(hi - lo)));
        out.push_str(&format!(
            "  <rect x=\"{xl}\" y=\"60\" width=\"{w}\" height=\"20\" fill=\"{fill}\"/>\n"
        ));
    }
    out.push_str("  <line x1=\"60\" y1=\"70\" x2=\"740\" y2=\"70\" stroke=\"#333\" stroke-width=\"1\"/>\n");
    out.push_str("  <text x=\"56\" y=\"100\">0</text>\n");
    out.push_str("  <text x=\"736\" y=\"100\">1</text>\n");
    for (t, walls) in &d.crossings {
        let x = x_at(t);
        out.push_str(&format!(
            "  <line x1=\"{x}\" y1=\"54\" x2=\"{x}\" y2=\"86\" stroke=\"#a00\" stroke-width=\"1.5\"/>\n"
        ));
        out.push_str(&format!("  <text x=\"{x}\" y=\"46\" text-anchor=\"middle\">{t}</text>\n"));
        let taus: Vec<String> = walls.iter().map(|w| w.tau.to_string()).collect();
        out.push_str(&format!(
            "  <text x=\"{x}\" y=\"116\" text-anchor=\"middle\">{}</text>\n",
            taus.join(" ")
        ));
    }
    out.push_str("</svg>\n");
    out
}
