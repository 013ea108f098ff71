//! Behavior of moduli across one wall: the case table for the two canonical
//! rational maps phi/psi attached to a crossing, guaranteed existence of
//! nonsplit extensions on at least one side, and the least second Chern class
//! at which a chamber-stable sheaf becomes unstable on the wall.
//!
//! Orientation convention: the "forward" stratum of a pair (L, L') consists
//! of nonsplit extensions with sub-object L (classified by Ext^1 in the
//! forward direction of `ChiRecord`); "backward" swaps the roles.

use num_traits::{Signed, Zero};

use crate::lattice::{NumClass, PolarizationPoint, SurfaceModel};
use crate::riemann_roch::{chi_pair, chi_rank_one, ChiRecord};
use crate::sheaves::{classify_pair, make_extension, PairClass, RankOneData};
use crate::walls::{enumerate_walls, Wall};
use crate::{Error, Int, Rat, Result};

/// Status of a crossing map on one extension stratum.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapStatus {
    /// Defined and injective on the stratum.
    DefinedInjective,
    /// Defined but collapsing: the whole stratum maps to the s-equivalence
    /// class of gr V (the equal-chi case).
    DefinedCollapsing,
    /// Undefined: the stratum lies in the undefinedness locus.
    Undefined,
}

/// H0-stability of a nonsplit extension with sub-object L, keyed by the
/// integer comparison chi(L) vs chi(L').
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum H0Status {
    H0Stable,
    H0StrictlySemistable,
    H0Unstable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    pub pair_class: PairClass,
    pub wall: Wall,
    /// Status at H0 of forward-stratum extensions (sub-object L).
    pub h0_status: H0Status,
    /// Map status on the forward stratum (extensions with sub L).
    pub phi: MapStatus,
    /// Map status on the backward stratum (extensions with sub L').
    pub psi: MapStatus,
    /// Virtual dimension -chi - 1 of the forward projective extension space;
    /// exact only under vanishing of Ext^0 and Ext^2.
    pub fiber_fwd_vdim: Int,
    pub fiber_bwd_vdim: Int,
    /// The side signs (tau.H, tau.H') witnessing that H and H' straddle the
    /// wall.
    pub exclusivity_witness: (Rat, Rat),
    pub chi: ChiRecord,
}

/// Classify the crossing of the wall of the NU-pair (L, L') along
/// H -> H0 -> H'.
pub fn classify_crossing(
    l: &RankOneData,
    lp: &RankOneData,
    h: &PolarizationPoint,
    h0: &PolarizationPoint,
    hp: &PolarizationPoint,
    model: &SurfaceModel,
) -> Result<CrossingReport> {
    let pair_class = classify_pair(l, lp, model)?;
    if pair_class == PairClass::U {
        return Err(Error::pre(
            "numerically trivial pair: wall crossing does not apply, use universal_semistability",
        ));
    }
    let tau = l.c1.sub(&lp.c1);
    if !model.pair_with_point(&tau, h0)?.is_zero() {
        return Err(Error::pre("H0 does not lie on the wall of the pair"));
    }
    let sh = model.pair_with_point(&tau, h)?;
    let shp = model.pair_with_point(&tau, hp)?;
    if sh.is_zero() || shp.is_zero() || sh.is_positive() == shp.is_positive() {
        return Err(Error::pre(
            "H and H' must lie strictly on opposite sides of the wall",
        ));
    }

    let c1v = l.c1.add(&lp.c1);
    let c2v = model.pair(&l.c1, &lp.c1)? + Int::from(l.colength) + Int::from(lp.colength);
    let walls = enumerate_walls(model, &c1v, &c2v)?;
    let tau_norm = tau.sign_normalized();
    let Some(wall) = walls.walls.iter().find(|w| w.tau == tau_norm).cloned() else {
        return Err(Error::pre(
            "the difference class of the pair is not a wall for its Chern data",
        ));
    };
    for w in &walls.walls {
        for p in [h, hp] {
            if model.pair_with_point(&w.tau, p)?.is_zero() {
                return Err(Error::EndpointOnWall(w.tau.clone()));
            }
        }
    }

    let chi = chi_pair(l, lp, model)?;
    let (h0_status, phi, psi) = match chi.chi_l.cmp(&chi.chi_lp) {
        std::cmp::Ordering::Greater => (
            H0Status::H0Unstable,
            MapStatus::Undefined,
            MapStatus::DefinedInjective,
        ),
        std::cmp::Ordering::Less => (
            H0Status::H0Stable,
            MapStatus::DefinedInjective,
            MapStatus::Undefined,
        ),
        std::cmp::Ordering::Equal => (
            H0Status::H0StrictlySemistable,
            MapStatus::DefinedCollapsing,
            MapStatus::DefinedCollapsing,
        ),
    };
    Ok(CrossingReport {
        pair_class,
        wall,
        h0_status,
        phi,
        psi,
        fiber_fwd_vdim: -&chi.chi_pair_fwd - Int::from(1),
        fiber_bwd_vdim: -&chi.chi_pair_bwd - Int::from(1),
        exclusivity_witness: (sh, shp),
        chi,
    })
}

/// Which extension directions are guaranteed nonempty on the wall.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideExistence {
    ForwardOnly,
    BackwardOnly,
    Both,
}

/// Positivity of the ext sum guarantees a nonsplit extension in at least one
/// direction; report which directions have a positive lower bound.
pub fn nonsplit_side_exists(
    l: &RankOneData,
    lp: &RankOneData,
    model: &SurfaceModel,
) -> Result<SideExistence> {
    if model.q != 0 {
        return Err(Error::pre("side-existence requires irregularity q = 0"));
    }
    if classify_pair(l, lp, model)? == PairClass::U {
        return Err(Error::pre("side-existence requires an NU pair"));
    }
    let chi = chi_pair(l, lp, model)?;
    if chi.d.is_negative() {
        return Err(Error::pre("side-existence requires d >= 0"));
    }
    if !chi.tau_sq.is_negative() {
        return Err(Error::pre("the pair does not lie on a wall"));
    }
    let fwd = (-&chi.chi_pair_fwd).is_positive();
    let bwd = (-&chi.chi_pair_bwd).is_positive();
    match (fwd, bwd) {
        (true, true) => Ok(SideExistence::Both),
        (true, false) => Ok(SideExistence::ForwardOnly),
        (false, true) => Ok(SideExistence::BackwardOnly),
        (false, false) => Err(Error::Invariant(format!(
            "ext sum {} fails the guaranteed positivity on an NU wall pair",
            chi.ext_sum
        ))),
    }
}

/// Least c2' at which the construction "L-extension stable in the chamber,
/// unstable on the wall" is certified: the quotient colength is
/// non-negative, 2 chi(L) > chi(V), and a nonsplit extension with sub L
/// exists (positive forward ext bound).
pub fn min_c2_unstable(
    l: &RankOneData,
    c1: &NumClass,
    h0: &PolarizationPoint,
    h: &PolarizationPoint,
    model: &SurfaceModel,
) -> Result<Int> {
    let tau = l.c1.scale(2).sub(c1);
    if tau.is_zero() {
        return Err(Error::ZeroTau);
    }
    if !model.pair_with_point(&tau, h0)?.is_zero() {
        return Err(Error::pre("H0 must lie on the wall of L"));
    }
    if !model.pair_with_point(&tau, h)?.is_negative() {
        return Err(Error::pre("H must lie on the side where L does not destabilize"));
    }
    let quot_c1 = c1.sub(&l.c1);
    let cross = model.pair(&l.c1, &quot_c1)?;
    let two_chi_l = Int::from(2) * chi_rank_one(l, model)?;
    // chi(V) at c2' = (c1^2 - c1.K)/2 - c2' + 2 chi(O).
    let chi_v_const = (model.self_pair(c1)? - model.pair(c1, &model.canonical)?) / Int::from(2)
        + Int::from(2) * model.chi_o();

    let mut c2p = (&cross + Int::from(l.colength)).max(Int::zero());
    let cap = &c2p + Int::from(100_000);
    while c2p <= cap {
        let ellp = &c2p - Int::from(l.colength) - &cross;
        if !ellp.is_negative() {
            let chi_v = &chi_v_const - &c2p;
            if two_chi_l > chi_v {
                let ellp_u = u64::try_from(&ellp)
                    .map_err(|_| Error::pre("quotient colength exceeds the supported range"))?;
                let lp = RankOneData::new(quot_c1.clone(), ellp_u);
                let chi = chi_pair(l, &lp, model)?;
                if (-&chi.chi_pair_fwd).is_positive() {
                    // Sanity: the extension shape is well-formed at this c2'.
                    make_extension(l.clone(), lp, false, model)?;
                    return Ok(c2p);
                }
            }
        }
        c2p += 1;
    }
    Err(Error::Invariant(
        "no certifying second Chern class found within the search cap".into(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::presets;

    fn setup() -> (
        SurfaceModel,
        PolarizationPoint,
        PolarizationPoint,
        PolarizationPoint,
    ) {
        let m = presets::p1xp1();
        let h = m.polarization_i64(&[2, 1]).unwrap();
        let h0 = m.polarization_i64(&[1, 1]).unwrap();
        let hp = m.polarization_i64(&[1, 2]).unwrap();
        (m, h, h0, hp)
    }

    #[test]
    fn equal_chi_case_collapses_both_maps() {
        let (m, h, h0, hp) = setup();
        let l = RankOneData::of(&[1, -1], 0);
        let lp = RankOneData::of(&[-1, 1], 0);
        let r = classify_crossing(&l, &lp, &h, &h0, &hp, &m).unwrap();
        assert_eq!(r.h0_status, H0Status::H0StrictlySemistable);
        assert_eq!(r.phi, MapStatus::DefinedCollapsing);
        assert_eq!(r.psi, MapStatus::DefinedCollapsing);
        assert_eq!(r.fiber_fwd_vdim, Int::from(2));
        assert_eq!(r.fiber_bwd_vdim, Int::from(2));
        assert_eq!(r.wall.tau, NumClass::of(&[2, -2]));
    }

    #[test]
    fn unequal_chi_case_b1() {
        let (m, h, h0, hp) = setup();
        let l = RankOneData::of(&[1, -1], 0);
        let lp = RankOneData::of(&[-1, 1], 1);
        let r = classify_crossing(&l, &lp, &h, &h0, &hp, &m).unwrap();
        assert_eq!(r.chi.chi_l, Int::from(0));
        assert_eq!(r.chi.chi_lp, Int::from(-1));
        assert_eq!(r.h0_status, H0Status::H0Unstable);
        assert_eq!(r.phi, MapStatus::Undefined);
        assert_eq!(r.psi, MapStatus::DefinedInjective);
        assert_eq!(r.fiber_bwd_vdim, Int::from(3));
    }

    #[test]
    fn unequal_chi_case_b2_is_mirror() {
        let (m, h, h0, hp) = setup();
        let l = RankOneData::of(&[1, -1], 1);
        let lp = RankOneData::of(&[-1, 1], 0);
        let r = classify_crossing(&l, &lp, &h, &h0, &hp, &m).unwrap();
        assert_eq!(r.h0_status, H0Status::H0Stable);
        assert_eq!(r.phi, MapStatus::DefinedInjective);
        assert_eq!(r.psi, MapStatus::Undefined);
        let swapped = classify_crossing(&lp, &l, &h, &h0, &hp, &m).unwrap();
        assert_eq!(swapped.phi, MapStatus::Undefined);
        assert_eq!(swapped.psi, MapStatus::DefinedInjective);
    }

    #[test]
    fn u_pair_rejected() {
        let (m, h, h0, hp) = setup();
        let l = RankOneData::of(&[0, 0], 2);
        let lp = RankOneData::of(&[0, 0], 0);
        assert!(matches!(
            classify_crossing(&l, &lp, &h, &h0, &hp, &m),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn wrong_sides_rejected() {
        let (m, h, h0, _) = setup();
        let l = RankOneData::of(&[1, -1], 0);
        let lp = RankOneData::of(&[-1, 1], 0);
        // Both polarizations on the same side of the wall.
        let h_same = m.polarization_i64(&[3, 1]).unwrap();
        assert!(matches!(
            classify_crossing(&l, &lp, &h, &h0, &h_same, &m),
            Err(Error::Precondition(_))
        ));
        // H0 off the wall.
        let h_off = m.polarization_i64(&[2, 1]).unwrap();
        assert!(matches!(
            classify_crossing(&l, &lp, &h, &h_off, &h_same, &m),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn side_existence_both_directions() {
        let m = presets::p1xp1();
        assert_eq!(
            nonsplit_side_exists(
                &RankOneData::of(&[1, -1], 0),
                &RankOneData::of(&[-1, 1], 0),
                &m
            )
            .unwrap(),
            SideExistence::Both
        );
        assert_eq!(
            nonsplit_side_exists(
                &RankOneData::of(&[1, -1], 0),
                &RankOneData::of(&[-1, 1], 1),
                &m
            )
            .unwrap(),
            SideExistence::Both
        );
    }

    #[test]
    fn side_existence_rejects_u_pair() {
        let m = presets::p1xp1();
        assert!(nonsplit_side_exists(
            &RankOneData::of(&[0, 0], 1),
            &RankOneData::of(&[0, 0], 0),
            &m
        )
        .is_err());
    }

    #[test]
    fn min_c2_for_small_wall() {
        let m = presets::p1xp1();
        let h0 = m.polarization_i64(&[1, 1]).unwrap();
        let h = m.polarization_i64(&[2, 1]).unwrap();
        let c2 = min_c2_unstable(
            &RankOneData::of(&[1, -1], 0),
            &NumClass::of(&[0, 0]),
            &h0,
            &h,
            &m,
        )
        .unwrap();
        assert_eq!(c2, Int::from(3));
    }

    #[test]
    fn min_c2_for_deeper_wall() {
        let m = presets::p1xp1();
        let h0 = m.polarization_i64(&[1, 1]).unwrap();
        let h = m.polarization_i64(&[2, 1]).unwrap();
        let c2 = min_c2_unstable(
            &RankOneData::of(&[2, -2], 0),
            &NumClass::of(&[0, 0]),
            &h0,
            &h,
            &m,
        )
        .unwrap();
        assert_eq!(c2, Int::from(9));
    }

    #[test]
    fn min_c2_rejects_trivial_class() {
        let m = presets::p1xp1();
        let h0 = m.polarization_i64(&[1, 1]).unwrap();
        let h = m.polarization_i64(&[2, 1]).unwrap();
        assert!(matches!(
            min_c2_unstable(
                &RankOneData::of(&[0, 0], 0),
                &NumClass::of(&[0, 0]),
                &h0,
                &h,
                &m
            ),
            Err(Error::ZeroTau)
        ));
    }

    #[test]
    fn min_c2_instance_is_stable_off_wall_unstable_on() {
        use crate::stability::{verdict, StabilityLevel};
        let m = presets::p1xp1();
        let h0 = m.polarization_i64(&[1, 1]).unwrap();
        let h = m.polarization_i64(&[2, 1]).unwrap();
        // The certified instance at c2' = 3: sub ((1,-1), 0), quot
        // ((-1,1), 1).
        let v = make_extension(
            RankOneData::of(&[1, -1], 0),
            RankOneData::of(&[-1, 1], 1),
            false,
            &m,
        )
        .unwrap();
        assert_eq!(
            verdict(&v, &h, &[], &m).unwrap().gieseker,
            StabilityLevel::Stable
        );
        assert_eq!(
            verdict(&v, &h0, &[], &m).unwrap().gieseker,
            StabilityLevel::Unstable
        );
    }
}
