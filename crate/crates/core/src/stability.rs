//! Mumford-Takemoto and Gieseker stability verdicts for extension-presented
//! rank-2 sheaves, universal semistability, and uniqueness of the
//! destabilizing subsheaf on a wall.
//!
//! The engine evaluates the slope/chi criterion against a finite candidate
//! set of numerically admissible rank-1 subsheaf shapes. A verdict is
//! `Certified` only when the hypotheses of a global theorem are mechanically
//! verified; otherwise it is `CandidateRelative` — true for the candidates
//! examined, not quantified over all subsheaves.

use num_traits::{Signed, Zero};

use crate::lattice::{ConeLocation, NumClass, PolarizationPoint, SurfaceModel};
use crate::riemann_roch::{chi_rank_one, chi_rank_two};
use crate::sheaves::{ExtensionData, RankOneData};
use crate::walls::enumerate_walls;
use crate::{Error, Int, Rat, Result};

/// Three-valued stability level, used for both the MT and Gieseker columns.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StabilityLevel {
    Stable,
    StrictlySemistable,
    Unstable,
}

/// Which verified hypothesis backs a certified verdict.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CertTag {
    /// The destabilizer is an actual factor of the given presentation.
    SubsheafWitness,
    /// Nonsplit NU extension, polarization off the wall on the stable side,
    /// in the chamber adjacent to the wall.
    NonsplitOffWallStable,
    /// Polarization exactly on the presentation's wall, no other wall through
    /// it; verdict decided by the chi comparison.
    OnWallChiCompare,
    /// Split presentation: the factors exhaust the relevant subsheaves.
    SplitPair,
    /// Numerically trivial difference class with the chi bound: semistable
    /// for every polarization.
    UniversalFamily,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Certification {
    Certified(CertTag),
    CandidateRelative,
}

/// The comparison record for one candidate subsheaf shape against V.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChiComparison {
    pub candidate_c1: NumClass,
    pub colength: u64,
    /// tau = 2 c1(candidate) - c1(V).
    pub tau: NumClass,
    /// tau . h, the slope comparison.
    pub slope: Rat,
    pub two_chi_l: Int,
    pub chi_v: Int,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityVerdict {
    pub mt: StabilityLevel,
    pub gieseker: StabilityLevel,
    pub witness: Option<ChiComparison>,
    pub certification: Certification,
}

/// d.g >= 0 against every declared cone generator.
fn nef_on_cone(model: &SurfaceModel, d: &NumClass) -> Result<bool> {
    for g in &model.ample_generators {
        if model.pair(d, g)?.is_negative() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A candidate subsheaf shape: class, minimal admissible colength, and
/// whether it is an actual factor of the presentation.
#[derive(Debug, Clone)]
struct Candidate {
    l: RankOneData,
    genuine: bool,
}

/// Minimal admissible colength for a rank-1 subsheaf of V with class m, or
/// `None` if no colength is admissible.
///
/// A rank-1 subsheaf maps nontrivially to the sub or the quotient of the
/// presentation, so c1(sub) - m or c1(quot) - m must pair non-negatively with
/// the ample cone. Equal classes force colength inequalities: a subsheaf with
/// c1 = c1(sub) factors through the sub (colength >= colength(sub)); one with
/// c1 = c1(quot) injects into the quotient, and an isomorphism would split
/// the extension, so nonsplit presentations force colength(quot) + 1.
fn min_admissible_colength(
    v: &ExtensionData,
    m: &NumClass,
    model: &SurfaceModel,
) -> Result<Option<u64>> {
    let mut best: Option<u64> = None;
    let mut offer = |l: u64| {
        best = Some(best.map_or(l, |b| b.min(l)));
    };
    if *m == v.sub.c1 {
        offer(v.sub.colength);
    } else if nef_on_cone(model, &v.sub.c1.sub(m))? {
        offer(0);
    }
    if *m == v.quot.c1 {
        // The quotient injects back only when the extension splits; for a
        // nonsplit extension a map onto the quotient class need not lift,
        // so it is not a structural candidate.
        if v.split {
            offer(v.quot.colength);
        }
    } else if nef_on_cone(model, &v.quot.c1.sub(m))? {
        offer(0);
    }
    Ok(best)
}

/// Colength ceiling for class m: the quotient colength
/// c2(V) - m.(c1(V) - m) - ell must stay non-negative.
fn colength_budget(v: &ExtensionData, m: &NumClass, model: &SurfaceModel) -> Result<Option<u64>> {
    let b = &v.c2v - model.pair(m, &v.c1v.sub(m))?;
    if b.is_negative() {
        return Ok(None);
    }
    Ok(Some(u64::try_from(&b).map_err(|_| {
        Error::pre("candidate colength budget exceeds the supported range")
    })?))
}

/// Build the candidate set for V: the presentation's factors, wall
/// witnesses for (c1(V), c2(V)), the numerically trivial family, and any
/// caller-supplied extras — each admitted at its minimal admissible colength.
fn candidate_set(
    v: &ExtensionData,
    extra: &[RankOneData],
    model: &SurfaceModel,
) -> Result<Vec<Candidate>> {
    let mut classes: Vec<NumClass> = vec![v.sub.c1.clone()];
    if !classes.contains(&v.quot.c1) {
        classes.push(v.quot.c1.clone());
    }
    let walls = enumerate_walls(model, &v.c1v, &v.c2v)?;
    for w in &walls.walls {
        for m in &w.witnesses {
            if !classes.contains(m) {
                classes.push(m.clone());
            }
        }
    }
    if let Some(half) = v.c1v.half() {
        if !classes.contains(&half) {
            classes.push(half);
        }
    }

    let mut out: Vec<Candidate> = Vec::new();
    let mut push = |l: RankOneData, genuine: bool| {
        if !out.iter().any(|c| c.l.c1 == l.c1 && c.l.colength == l.colength) {
            out.push(Candidate { l, genuine });
        }
    };

    // The sub is always a genuine subsheaf; the quotient injects back only
    // for split presentations.
    push(v.sub.clone(), true);
    if v.split {
        push(v.quot.clone(), true);
    }
    for m in classes {
        let Some(lo) = min_admissible_colength(v, &m, model)? else {
            continue;
        };
        let Some(hi) = colength_budget(v, &m, model)? else {
            continue;
        };
        if lo > hi {
            continue;
        }
        // Only the minimal colength matters: chi decreases with colength, so
        // the minimal one dominates every comparison.
        push(RankOneData::new(m, lo), false);
    }
    for l in extra {
        let Some(lo) = min_admissible_colength(v, &l.c1, model)? else {
            continue;
        };
        let Some(hi) = colength_budget(v, &l.c1, model)? else {
            continue;
        };
        if l.colength < lo || l.colength > hi {
            continue;
        }
        push(l.clone(), false);
    }
    Ok(out)
}

fn comparison(
    v: &ExtensionData,
    l: &RankOneData,
    h: &PolarizationPoint,
    chi_v: &Int,
    model: &SurfaceModel,
) -> Result<ChiComparison> {
    let tau = l.c1.scale(2).sub(&v.c1v);
    let slope = model.pair_with_point(&tau, h)?;
    Ok(ChiComparison {
        candidate_c1: l.c1.clone(),
        colength: l.colength,
        tau,
        slope,
        two_chi_l: Int::from(2) * chi_rank_one(l, model)?,
        chi_v: chi_v.clone(),
    })
}

/// Stability of V at the polarization h, evaluated over the candidate set.
pub fn verdict(
    v: &ExtensionData,
    h: &PolarizationPoint,
    extra_candidates: &[RankOneData],
    model: &SurfaceModel,
) -> Result<StabilityVerdict> {
    let chi_v = chi_rank_two(v, model)?;
    let candidates = candidate_set(v, extra_candidates, model)?;

    let mut slope_witness: Option<(ChiComparison, bool)> = None;
    let mut tie_unstable: Option<(ChiComparison, bool)> = None;
    let mut tie_equal: Option<(ChiComparison, bool)> = None;
    let mut any_on_wall = false;
    for c in &candidates {
        let cmp = comparison(v, &c.l, h, &chi_v, model)?;
        if cmp.slope.is_positive() {
            // Prefer a genuine witness for certification.
            if slope_witness.as_ref().map_or(true, |(_, g)| !g && c.genuine) {
                slope_witness = Some((cmp, c.genuine));
            }
        } else if cmp.slope.is_zero() {
            any_on_wall = true;
            if cmp.two_chi_l > cmp.chi_v {
                if tie_unstable.as_ref().map_or(true, |(_, g)| !g && c.genuine) {
                    tie_unstable = Some((cmp, c.genuine));
                }
            } else if cmp.two_chi_l == cmp.chi_v
                && tie_equal.as_ref().map_or(true, |(_, g)| !g && c.genuine)
            {
                tie_equal = Some((cmp, c.genuine));
            }
        }
    }

    let (mt, gieseker, witness, genuine) = if let Some((w, g)) = slope_witness {
        (
            StabilityLevel::Unstable,
            StabilityLevel::Unstable,
            Some(w),
            g,
        )
    } else if let Some((w, g)) = tie_unstable {
        (
            StabilityLevel::StrictlySemistable,
            StabilityLevel::Unstable,
            Some(w),
            g,
        )
    } else if let Some((w, g)) = tie_equal {
        (
            StabilityLevel::StrictlySemistable,
            StabilityLevel::StrictlySemistable,
            Some(w),
            g,
        )
    } else if any_on_wall {
        // Slope ties exist but every tied candidate loses the chi comparison.
        (
            StabilityLevel::StrictlySemistable,
            StabilityLevel::Stable,
            None,
            false,
        )
    } else {
        (StabilityLevel::Stable, StabilityLevel::Stable, None, false)
    };

    let certification = certify(v, h, mt, gieseker, witness.as_ref(), genuine, model)?;
    Ok(StabilityVerdict {
        mt,
        gieseker,
        witness,
        certification,
    })
}

fn certify(
    v: &ExtensionData,
    h: &PolarizationPoint,
    _mt: StabilityLevel,
    gieseker: StabilityLevel,
    witness: Option<&ChiComparison>,
    genuine: bool,
    model: &SurfaceModel,
) -> Result<Certification> {
    // An unstable verdict whose witness is an actual factor of the
    // presentation is unconditionally sound.
    if gieseker == StabilityLevel::Unstable && witness.is_some() && genuine {
        return Ok(Certification::Certified(CertTag::SubsheafWitness));
    }
    if v.split {
        return Ok(Certification::Certified(CertTag::SplitPair));
    }
    if model.numerically_trivial(&v.tau)? {
        if universal_semistability(v, model)? == UniversalVerdict::UniversallySemistable
            && gieseker != StabilityLevel::Unstable
        {
            return Ok(Certification::Certified(CertTag::UniversalFamily));
        }
        return Ok(Certification::CandidateRelative);
    }

    // Nonsplit NU presentation. Its own wall must be a wall of the Chern
    // data; other walls control chamber adjacency.
    let tau_sq = model.self_pair(&v.tau)?;
    let c = v.wall_parameter(model)?;
    if !tau_sq.is_negative() || tau_sq < -&c {
        return Ok(Certification::CandidateRelative);
    }
    let tau_norm = v.tau.sign_normalized();
    let walls = enumerate_walls(model, &v.c1v, &v.c2v)?;
    if !walls.walls.iter().any(|w| w.tau == tau_norm) {
        return Ok(Certification::CandidateRelative);
    }
    let slope = model.pair_with_point(&v.tau, h)?;

    if slope.is_zero() {
        // On-wall chi comparison is decisive when no other wall passes
        // through h.
        for w in &walls.walls {
            if w.tau == tau_norm {
                continue;
            }
            if model.pair_with_point(&w.tau, h)?.is_zero() {
                return Ok(Certification::CandidateRelative);
            }
        }
        if gieseker != StabilityLevel::Unstable {
            return Ok(Certification::Certified(CertTag::OnWallChiCompare));
        }
        return Ok(Certification::CandidateRelative);
    }

    if slope.is_negative() && gieseker == StabilityLevel::Stable {
        // h must lie in the chamber adjacent to the presentation's wall:
        // the orthogonal projection h0 of h onto the wall stays in the cone
        // interior and the segment h -> h0 crosses no other wall.
        let tau_sq_r = Rat::from_integer(tau_sq);
        let f = &slope / &tau_sq_r;
        let h0: Vec<Rat> = h
            .coords()
            .iter()
            .zip(v.tau.to_rat())
            .map(|(hc, tc)| hc - &f * tc)
            .collect();
        if model.locate_in_cone(&h0)? != ConeLocation::Interior {
            return Ok(Certification::CandidateRelative);
        }
        for w in &walls.walls {
            if w.tau == tau_norm {
                continue;
            }
            let sa = model.pair_with_point(&w.tau, h)?;
            let sb = model.pair_rat(&w.tau.to_rat(), &h0)?;
            if sa.is_zero() || sb.is_zero() || sa.is_positive() != sb.is_positive() {
                return Ok(Certification::CandidateRelative);
            }
        }
        return Ok(Certification::Certified(CertTag::NonsplitOffWallStable));
    }

    Ok(Certification::CandidateRelative)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum UniversalVerdict {
    UniversallySemistable,
    Not,
    /// Unreachable for extension-presented sheaves: the dichotomy below is
    /// decidable from the presentation. Kept to document the boundary of
    /// what is mechanically known.
    Unknown,
}

/// Universal (all-polarization) semistability: requires a numerically
/// trivial difference class and the chi bound on the sub (both factors when
/// split).
pub fn universal_semistability(
    v: &ExtensionData,
    model: &SurfaceModel,
) -> Result<UniversalVerdict> {
    if !model.numerically_trivial(&v.tau)? {
        return Ok(UniversalVerdict::Not);
    }
    let chi_v = chi_rank_two(v, model)?;
    let ok_sub = Int::from(2) * chi_rank_one(&v.sub, model)? <= chi_v;
    let ok_quot = !v.split || Int::from(2) * chi_rank_one(&v.quot, model)? <= chi_v;
    Ok(if ok_sub && ok_quot {
        UniversalVerdict::UniversallySemistable
    } else {
        UniversalVerdict::Not
    })
}

/// Outcome of the destabilizer-uniqueness check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UniquenessStatus {
    /// The single equality-achieving candidate on the wall.
    Unique(ChiComparison),
    /// Split presentation: both factors reported.
    SplitPair(Vec<ChiComparison>),
    /// No candidate achieves equality: the sheaf is stable here and the
    /// uniqueness statement is vacuous.
    StableVacuous,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniquenessReport {
    pub status: UniquenessStatus,
    pub verdict: StabilityVerdict,
}

/// Report the equality-achieving candidates (tau.h = 0 and 2 chi = chi(V))
/// and assert there is at most one for nonsplit presentations.
pub fn unique_destabilizer(
    v: &ExtensionData,
    h: &PolarizationPoint,
    model: &SurfaceModel,
) -> Result<UniquenessReport> {
    let vd = verdict(v, h, &[], model)?;
    if vd.gieseker == StabilityLevel::Unstable {
        return Err(Error::NotSemistable);
    }
    let chi_v = chi_rank_two(v, model)?;
    let candidates = candidate_set(v, &[], model)?;
    let mut equalizers: Vec<ChiComparison> = Vec::new();
    for c in &candidates {
        let cmp = comparison(v, &c.l, h, &chi_v, model)?;
        if cmp.slope.is_zero() && cmp.two_chi_l == cmp.chi_v {
            equalizers.push(cmp);
        }
    }
    if v.split {
        return Ok(UniquenessReport {
            status: UniquenessStatus::SplitPair(equalizers),
            verdict: vd,
        });
    }
    let mut classes: Vec<&NumClass> = equalizers.iter().map(|e| &e.candidate_c1).collect();
    classes.dedup();
    let status = match classes.len() {
        0 => UniquenessStatus::StableVacuous,
        1 => UniquenessStatus::Unique(equalizers.into_iter().next().expect("nonempty")),
        _ => {
            return Err(Error::Invariant(format!(
                "{} independent equality-achieving destabilizers on a nonsplit sheaf",
                classes.len()
            )))
        }
    };
    Ok(UniquenessReport {
        status,
        verdict: vd,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;
    use crate::sheaves::make_extension;

    fn nu_pair(c2_extra: u64) -> (SurfaceModel, ExtensionData) {
        let m = presets::p1xp1();
        let v = make_extension(
            RankOneData::of(&[1, -1], 0),
            RankOneData::of(&[-1, 1], c2_extra),
            false,
            &m,
        )
        .unwrap();
        (m, v)
    }

    #[test]
    fn nonsplit_pair_stable_off_wall() {
        let (m, v) = nu_pair(0);
        let h = m.polarization_i64(&[2, 1]).unwrap();
        let vd = verdict(&v, &h, &[], &m).unwrap();
        assert_eq!(vd.mt, StabilityLevel::Stable);
        assert_eq!(vd.gieseker, StabilityLevel::Stable);
        assert_eq!(
            vd.certification,
            Certification::Certified(CertTag::NonsplitOffWallStable)
        );
    }

    #[test]
    fn nonsplit_pair_strictly_semistable_on_wall() {
        let (m, v) = nu_pair(0);
        let h = m.polarization_i64(&[1, 1]).unwrap();
        let vd = verdict(&v, &h, &[], &m).unwrap();
        assert_eq!(vd.mt, StabilityLevel::StrictlySemistable);
        assert_eq!(vd.gieseker, StabilityLevel::StrictlySemistable);
        assert_eq!(
            vd.certification,
            Certification::Certified(CertTag::OnWallChiCompare)
        );
        let w = vd.witness.unwrap();
        assert_eq!(w.two_chi_l, Int::from(0));
        assert_eq!(w.chi_v, Int::from(0));
    }

    #[test]
    fn nonsplit_pair_unstable_other_side() {
        let (m, v) = nu_pair(0);
        let h = m.polarization_i64(&[1, 2]).unwrap();
        let vd = verdict(&v, &h, &[], &m).unwrap();
        assert_eq!(vd.mt, StabilityLevel::Unstable);
        assert_eq!(vd.gieseker, StabilityLevel::Unstable);
        assert_eq!(
            vd.certification,
            Certification::Certified(CertTag::SubsheafWitness)
        );
        assert_eq!(vd.witness.unwrap().candidate_c1, NumClass::of(&[1, -1]));
    }

    #[test]
    fn split_pair_unstable_for_unequal_chi() {
        let m = presets::p1xp1();
        // O (+) I_Z with ell = 1: the structure-sheaf factor destabilizes.
        let v = make_extension(
            RankOneData::of(&[0, 0], 1),
            RankOneData::of(&[0, 0], 0),
            true,
            &m,
        )
        .unwrap();
        for h in [
            m.polarization_i64(&[2, 1]).unwrap(),
            m.polarization_i64(&[1, 1]).unwrap(),
        ] {
            let vd = verdict(&v, &h, &[], &m).unwrap();
            assert_eq!(vd.gieseker, StabilityLevel::Unstable);
            let w = vd.witness.unwrap();
            assert_eq!(w.candidate_c1, NumClass::of(&[0, 0]));
            assert_eq!(w.colength, 0);
            assert_eq!(w.two_chi_l, Int::from(2));
            assert_eq!(w.chi_v, Int::from(1));
            assert_eq!(
                vd.certification,
                Certification::Certified(CertTag::SubsheafWitness)
            );
        }
    }

    #[test]
    fn universal_family_detected() {
        let m = presets::p1xp1();
        // Nonsplit I_Z -> V -> O with ell = 2.
        let v = make_extension(
            RankOneData::of(&[0, 0], 2),
            RankOneData::of(&[0, 0], 0),
            false,
            &m,
        )
        .unwrap();
        assert_eq!(
            universal_semistability(&v, &m).unwrap(),
            UniversalVerdict::UniversallySemistable
        );
        for h in [
            m.polarization_i64(&[2, 1]).unwrap(),
            m.polarization_i64(&[5, 3]).unwrap(),
        ] {
            let vd = verdict(&v, &h, &[], &m).unwrap();
            // Relative to the structural candidate set the comparison is
            // strict, while the slope tie keeps the coarser verdict at
            // strictly semistable.
            assert_eq!(vd.mt, StabilityLevel::StrictlySemistable);
            assert_eq!(vd.gieseker, StabilityLevel::Stable);
            assert_eq!(
                vd.certification,
                Certification::Certified(CertTag::UniversalFamily)
            );
        }
    }

    #[test]
    fn universal_rejects_nu_and_failing_chi() {
        let m = presets::p1xp1();
        let (_, nu) = nu_pair(0);
        assert_eq!(universal_semistability(&nu, &m).unwrap(), UniversalVerdict::Not);
        let split = make_extension(
            RankOneData::of(&[0, 0], 1),
            RankOneData::of(&[0, 0], 0),
            true,
            &m,
        )
        .unwrap();
        assert_eq!(
            universal_semistability(&split, &m).unwrap(),
            UniversalVerdict::Not
        );
    }

    #[test]
    fn refinement_between_mt_and_gieseker() {
        let (m, v) = nu_pair(1);
        for coords in [[2i64, 1], [1, 1], [1, 2], [3, 2], [5, 1]] {
            let h = m.polarization_i64(&coords).unwrap();
            let vd = verdict(&v, &h, &[], &m).unwrap();
            if vd.mt == StabilityLevel::Stable {
                assert_eq!(vd.gieseker, StabilityLevel::Stable);
            }
            if vd.gieseker == StabilityLevel::Stable {
                assert_ne!(vd.mt, StabilityLevel::Unstable);
            }
            if vd.gieseker == StabilityLevel::Unstable {
                assert!(vd.witness.is_some());
            }
        }
    }

    #[test]
    fn unique_destabilizer_on_wall() {
        let (m, v) = nu_pair(0);
        let h = m.polarization_i64(&[1, 1]).unwrap();
        let r = unique_destabilizer(&v, &h, &m).unwrap();
        match r.status {
            UniquenessStatus::Unique(w) => {
                assert_eq!(w.candidate_c1, NumClass::of(&[1, -1]));
            }
            other => panic!("expected unique destabilizer, got {other:?}"),
        }
    }

    #[test]
    fn unique_destabilizer_split_reports_both() {
        let m = presets::p1xp1();
        // O(1,-1) (+) O(-1,1) at the wall polarization: equal chi on both
        // factors.
        let v = make_extension(
            RankOneData::of(&[1, -1], 0),
            RankOneData::of(&[-1, 1], 0),
            true,
            &m,
        )
        .unwrap();
        let h = m.polarization_i64(&[1, 1]).unwrap();
        let r = unique_destabilizer(&v, &h, &m).unwrap();
        match r.status {
            UniquenessStatus::SplitPair(ws) => {
                let mut c1s: Vec<NumClass> = ws.iter().map(|w| w.candidate_c1.clone()).collect();
                c1s.sort();
                assert_eq!(c1s, vec![NumClass::of(&[-1, 1]), NumClass::of(&[1, -1])]);
            }
            other => panic!("expected split pair, got {other:?}"),
        }
    }

    #[test]
    fn unique_destabilizer_vacuous_when_stable() {
        let m = presets::p1xp1();
        // Nonsplit I_Z -> V -> O with ell = 1: stable at every polarization.
        let v = make_extension(
            RankOneData::of(&[0, 0], 1),
            RankOneData::of(&[0, 0], 0),
            false,
            &m,
        )
        .unwrap();
        let h = m.polarization_i64(&[2, 1]).unwrap();
        let r = unique_destabilizer(&v, &h, &m).unwrap();
        assert_eq!(r.status, UniquenessStatus::StableVacuous);
        assert_eq!(r.verdict.gieseker, StabilityLevel::Stable);
    }

    #[test]
    fn unique_destabilizer_rejects_unstable() {
        let (m, v) = nu_pair(0);
        let h = m.polarization_i64(&[1, 2]).unwrap();
        assert!(matches!(
            unique_destabilizer(&v, &h, &m),
            Err(Error::NotSemistable)
        ));
    }

    #[test]
    fn exclusivity_across_the_wall() {
        // Nonsplit non-universal V strictly semistable on the wall: exactly
        // one adjacent chamber gives a stable verdict.
        let (m, v) = nu_pair(0);
        let below = verdict(&v, &m.polarization_i64(&[2, 1]).unwrap(), &[], &m).unwrap();
        let above = verdict(&v, &m.polarization_i64(&[1, 2]).unwrap(), &[], &m).unwrap();
        let stable = [below.gieseker, above.gieseker]
            .iter()
            .filter(|&&g| g == StabilityLevel::Stable)
            .count();
        assert_eq!(stable, 1);
    }

    #[test]
    fn extra_candidates_are_filtered() {
        let (m, v) = nu_pair(0);
        let h = m.polarization_i64(&[2, 1]).unwrap();
        // The quotient class at its own colength is inadmissible for a
        // nonsplit presentation and must not flip the verdict.
        let vd = verdict(&v, &h, &[RankOneData::of(&[-1, 1], 0)], &m).unwrap();
        assert_eq!(vd.gieseker, StabilityLevel::Stable);
    }
}
