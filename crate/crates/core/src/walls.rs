//! Walls of type tau in the ample cone for fixed Chern data (c1, c2), side
//! decisions, and chamber decompositions of one-parameter polarization
//! segments.
//!
//! A wall class tau satisfies tau = 2m - c1 for an integral class m,
//! -c <= tau^2 < 0 with c = 4c2 - c1^2, and its hyperplane meets the interior
//! of the declared ample subcone.

use std::collections::BTreeSet;

use num_traits::{Signed, ToPrimitive, Zero};

use crate::lattice::{gram_inverse_column, ConeLocation, NumClass, PolarizationPoint, SurfaceModel};
use crate::{Error, Int, Rat, Result};

/// A single wall, stored through its sign-normalized class tau.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Wall {
    pub tau: NumClass,
    pub tau_sq: Int,
    /// Realizable first Chern classes m with 2m = +-tau + c1, present when the
    /// colength budget (tau^2 + c)/4 is a non-negative integer.
    pub witnesses: Vec<NumClass>,
    /// Filled by `chambers_on_segment` for walls the segment crosses.
    pub segment_crossing: Option<Rat>,
}

impl Wall {
    /// Re-check every invariant of the type against the Chern data.
    pub fn check_invariants(&self, model: &SurfaceModel, c1: &NumClass, c2: &Int) -> Result<()> {
        let c = Int::from(4) * c2 - model.self_pair(c1)?;
        if self.tau_sq != model.self_pair(&self.tau)? {
            return Err(Error::Invariant("stored tau^2 disagrees with the form".into()));
        }
        if !self.tau_sq.is_negative() || self.tau_sq < -&c {
            return Err(Error::Invariant(format!(
                "tau^2 = {} outside [-c, 0) for c = {c}",
                self.tau_sq
            )));
        }
        if !self.tau.sub(c1).is_even() {
            return Err(Error::Invariant("tau is not congruent to c1 mod 2".into()));
        }
        if cone_sign_pattern(model, &self.tau)? != SignPattern::Mixed {
            return Err(Error::Invariant(
                "wall hyperplane does not meet the cone interior".into(),
            ));
        }
        for m in &self.witnesses {
            let half_tau = m.scale(2).sub(c1);
            if half_tau != self.tau && half_tau != self.tau.neg() {
                return Err(Error::Invariant("witness does not lie on the wall".into()));
            }
        }
        Ok(())
    }
}

/// How the linear form tau.(-) behaves on the declared cone generators.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum SignPattern {
    /// Both strict signs occur: the hyperplane meets the cone interior.
    Mixed,
    /// One-sided with at least one zero: the hyperplane meets only a face.
    Face,
    /// Strictly one-sided: the hyperplane misses the cone.
    Disjoint,
}

fn cone_sign_pattern(model: &SurfaceModel, tau: &NumClass) -> Result<SignPattern> {
    let (mut pos, mut neg, mut zero) = (false, false, false);
    for g in &model.ample_generators {
        let v = model.pair(tau, g)?;
        if v.is_positive() {
            pos = true;
        } else if v.is_negative() {
            neg = true;
        } else {
            zero = true;
        }
    }
    Ok(if pos && neg {
        SignPattern::Mixed
    } else if zero {
        SignPattern::Face
    } else {
        SignPattern::Disjoint
    })
}

/// Result of wall enumeration: the walls proper, plus classes whose
/// hyperplane only touches a face of the declared cone (excluded from the
/// wall list but reported for diagnostics).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallSet {
    pub walls: Vec<Wall>,
    pub boundary_only: Vec<NumClass>,
}

impl WallSet {
    pub fn taus(&self) -> Vec<&NumClass> {
        self.walls.iter().map(|w| &w.tau).collect()
    }
}

/// Least integer r with r >= sqrt(b) for a non-negative rational b.
fn sqrt_ceil(b: &Rat) -> Int {
    let n = b.ceil().to_integer();
    if n.is_negative() {
        return Int::zero();
    }
    let s = n.sqrt();
    if &s * &s < n {
        s + 1
    } else {
        s
    }
}

/// Enumerate every wall for the Chern data (c1, c2).
///
/// Completeness: an admissible tau takes both strict signs on the cone
/// generators, so some ordered generator pair (a, b) has v_a = tau.a > 0 and
/// v_b = tau.b < 0. With D = (a.b)^2 - a^2 b^2 > 0, the Hodge-index
/// decomposition of tau against span(a, b) gives
///     b^2 v_a^2 - 2(a.b) v_a v_b + a^2 v_b^2 <= c D,
/// every term on the left being non-negative; this bounds (v_a, -v_b) by
/// c D / (2 a.b). Each pair of values pins the span(a, b) component of tau,
/// and the component orthogonal to the pair lies in a negative-definite space
/// of norm < c, which bounds each coordinate of tau around that center. The
/// resulting finite integer boxes are scanned with every wall condition
/// checked exactly, so the output is both sound and complete. This bound
/// remains finite when generators lie on the light cone of the form (where a
/// cross-section ellipsoid bound would degenerate).
pub fn enumerate_walls(model: &SurfaceModel, c1: &NumClass, c2: &Int) -> Result<WallSet> {
    if c1.len() != model.rank {
        return Err(Error::DimensionMismatch {
            expected: model.rank,
            got: c1.len(),
        });
    }
    let c = Int::from(4) * c2 - model.self_pair(c1)?;
    let mut out = WallSet {
        walls: Vec::new(),
        boundary_only: Vec::new(),
    };
    if !c.is_positive() || model.rank < 2 {
        // No tau can satisfy -c <= tau^2 < 0: the window is empty (c <= 0) or
        // the form is positive definite (rank 1).
        return Ok(out);
    }
    let c_rat = Rat::from_integer(c.clone());

    // Dual-basis vectors w_i = Q^{-1} e_i, so that tau_i = tau.w_i.
    let duals: Vec<Vec<Rat>> = (0..model.rank)
        .map(|i| gram_inverse_column(model, i))
        .collect();

    let mut seen: BTreeSet<NumClass> = BTreeSet::new();
    let mut taus: Vec<NumClass> = Vec::new();
    let mut faces: BTreeSet<NumClass> = BTreeSet::new();

    let gens = &model.ample_generators;
    for (ia, a) in gens.iter().enumerate() {
        for (ib, b) in gens.iter().enumerate() {
            if ia == ib {
                continue;
            }
            let a2 = model.self_pair(a)?;
            let b2 = model.self_pair(b)?;
            let ab = model.pair(a, b)?;
            let delta = &ab * &ab - &a2 * &b2;
            if !delta.is_positive() {
                continue; // proportional generators span no hyperbolic plane
            }
            let vmax = (&c * &delta) / (Int::from(2) * &ab);
            let Some(vmax) = vmax.to_u64() else {
                return Err(Error::pre("wall search bound exceeds the supported range"));
            };
            let cd = Rat::from_integer(&c * &delta);
            let delta_r = Rat::from_integer(delta.clone());

            // Per-coordinate radius for the component of tau orthogonal to
            // span(a, b): |tau_i - center_i| <= sqrt(c . (-(w_i^c)^2)).
            let mut radii: Vec<Int> = Vec::with_capacity(model.rank);
            let mut w_pair: Vec<(Rat, Rat)> = Vec::with_capacity(model.rank);
            for w in &duals {
                let wa = model.pair_rat(w, &a.to_rat())?;
                let wb = model.pair_rat(w, &b.to_rat())?;
                // Projection of w onto span(a, b) has norm
                // -(b^2 wa^2 - 2ab wa wb + a^2 wb^2)/delta; subtract from w^2.
                let proj_sq = -(Rat::from_integer(b2.clone()) * &wa * &wa
                    - Rat::from_integer(Int::from(2) * &ab) * &wa * &wb
                    + Rat::from_integer(a2.clone()) * &wb * &wb)
                    / &delta_r;
                let w_sq = model.pair_rat(w, w)?;
                let comp_sq = w_sq - proj_sq;
                // comp_sq <= 0 in the orthocomplement of a hyperbolic plane.
                radii.push(sqrt_ceil(&(&c_rat * -comp_sq)));
                w_pair.push((wa, wb));
            }

            for va in 1..=vmax {
                for vnb in 1..=vmax {
                    let va_i = Int::from(va);
                    let vnb_i = Int::from(vnb);
                    let lhs = &b2 * &va_i * &va_i
                        + Int::from(2) * &ab * &va_i * &vnb_i
                        + &a2 * &vnb_i * &vnb_i;
                    if Rat::from_integer(lhs) > cd {
                        continue;
                    }
                    // Center of the search box: the span(a, b) component of
                    // tau, coordinate i given by
                    // -(b^2 v_a - ab v_b) wa_i/delta ... computed via
                    // tau_par.w = [v_a v_b] G^{-1} [wa; wb].
                    let va_r = Rat::from_integer(va_i.clone());
                    let vb_r = Rat::from_integer(-vnb_i.clone());
                    let centers: Vec<Rat> = w_pair
                        .iter()
                        .map(|(wa, wb)| {
                            -(Rat::from_integer(b2.clone()) * &va_r * wa
                                - Rat::from_integer(ab.clone()) * (&va_r * wb + &vb_r * wa)
                                + Rat::from_integer(a2.clone()) * &vb_r * wb)
                                / &delta_r
                        })
                        .collect();
                    scan_box(&centers, &radii, &mut |coords| {
                        let tau = NumClass::new(coords.to_vec());
                        if tau.is_zero() {
                            return Ok(());
                        }
                        if !tau.sub(c1).is_even() {
                            return Ok(());
                        }
                        let tau_sq = model.self_pair(&tau)?;
                        if !tau_sq.is_negative() || tau_sq < -&c {
                            return Ok(());
                        }
                        let norm = tau.sign_normalized();
                        match cone_sign_pattern(model, &norm)? {
                            SignPattern::Mixed => {
                                if seen.insert(norm.clone()) {
                                    taus.push(norm);
                                }
                            }
                            SignPattern::Face => {
                                faces.insert(norm);
                            }
                            SignPattern::Disjoint => {}
                        }
                        Ok(())
                    })?;
                }
            }
        }
    }

    taus.sort();
    for tau in taus {
        let tau_sq = model.self_pair(&tau)?;
        // Colength budget ell + ell' = (tau^2 + c)/4; the parity constraint
        // makes it an integer and -c <= tau^2 keeps it >= 0, but both are
        // re-checked so unrealizable walls are flagged with no witnesses.
        let budget4 = &tau_sq + &c;
        let realizable = !budget4.is_negative() && (&budget4 % Int::from(4)).is_zero();
        let witnesses = if realizable {
            let mut ws: Vec<NumClass> = [tau.clone(), tau.neg()]
                .iter()
                .filter_map(|t| t.add(c1).half())
                .collect();
            ws.sort();
            ws.dedup();
            ws
        } else {
            Vec::new()
        };
        let wall = Wall {
            tau,
            tau_sq,
            witnesses,
            segment_crossing: None,
        };
        wall.check_invariants(model, c1, c2)?;
        out.walls.push(wall);
    }
    out.boundary_only = faces.into_iter().collect();
    Ok(out)
}

/// Recursively scan the integer box |x_i - center_i| <= radius_i.
fn scan_box(
    centers: &[Rat],
    radii: &[Int],
    f: &mut dyn FnMut(&[Int]) -> Result<()>,
) -> Result<()> {
    fn rec(
        centers: &[Rat],
        radii: &[Int],
        i: usize,
        coords: &mut Vec<Int>,
        f: &mut dyn FnMut(&[Int]) -> Result<()>,
    ) -> Result<()> {
        if i == centers.len() {
            return f(coords);
        }
        let r = Rat::from_integer(radii[i].clone());
        let lo = (&centers[i] - &r).ceil().to_integer();
        let hi = (&centers[i] + &r).floor().to_integer();
        let mut x = lo;
        while x <= hi {
            coords.push(x.clone());
            rec(centers, radii, i + 1, coords, f)?;
            coords.pop();
            x += 1;
        }
        Ok(())
    }
    rec(centers, radii, 0, &mut Vec::new(), f)
}

/// Which side of the hyperplane tau-perp a polarization lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SideSign {
    Upper,
    On,
    Lower,
}

/// Sign of tau.h: positive is Upper, negative is Lower.
pub fn wall_side(model: &SurfaceModel, tau: &NumClass, h: &PolarizationPoint) -> Result<SideSign> {
    if tau.is_zero() {
        return Err(Error::ZeroTau);
    }
    let v = model.pair_with_point(tau, h)?;
    Ok(if v.is_positive() {
        SideSign::Upper
    } else if v.is_negative() {
        SideSign::Lower
    } else {
        SideSign::On
    })
}

/// A segment A -> B through the ample cone, cut by walls into chambers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChamberDecomposition {
    pub segment: (PolarizationPoint, PolarizationPoint),
    /// Crossing parameters t* in (0, 1), strictly increasing, each with the
    /// walls met there.
    pub crossings: Vec<(Rat, Vec<Wall>)>,
    /// The open intervals of (0, 1) between consecutive crossings.
    pub intervals: Vec<(Rat, Rat)>,
}

impl ChamberDecomposition {
    /// The point A + t (B - A) as exact rational coordinates.
    pub fn point_at(&self, t: &Rat) -> Vec<Rat> {
        self.segment
            .0
            .coords()
            .iter()
            .zip(self.segment.1.coords())
            .map(|(a, b)| a + t * (b - a))
            .collect()
    }
}

/// Decompose the segment from A to B into chambers for the Chern data
/// (c1, c2). Endpoints must be interior to the cone and off every wall.
pub fn chambers_on_segment(
    a: &PolarizationPoint,
    b: &PolarizationPoint,
    c1: &NumClass,
    c2: &Int,
    model: &SurfaceModel,
) -> Result<ChamberDecomposition> {
    if a == b {
        return Err(Error::DegenerateSegment);
    }
    for p in [a, b] {
        if p.location() != ConeLocation::Interior {
            return Err(Error::pre("segment endpoints must be interior to the cone"));
        }
    }
    let walls = enumerate_walls(model, c1, c2)?;
    let mut crossings: Vec<(Rat, Vec<Wall>)> = Vec::new();
    for wall in &walls.walls {
        let sa = model.pair_with_point(&wall.tau, a)?;
        let sb = model.pair_with_point(&wall.tau, b)?;
        if sa.is_zero() || sb.is_zero() {
            return Err(Error::EndpointOnWall(wall.tau.clone()));
        }
        if sa.is_positive() == sb.is_positive() {
            continue;
        }
        let t = &sa / (&sa - &sb);
        let mut crossed = wall.clone();
        crossed.segment_crossing = Some(t.clone());
        match crossings.iter_mut().find(|(t0, _)| *t0 == t) {
            Some((_, group)) => group.push(crossed),
            None => crossings.push((t, vec![crossed])),
        }
    }
    crossings.sort_by(|(s, _), (t, _)| s.cmp(t));
    let mut cuts: Vec<Rat> = vec![Rat::zero()];
    cuts.extend(crossings.iter().map(|(t, _)| t.clone()));
    cuts.push(Rat::from_integer(Int::from(1)));
    let intervals = cuts.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    Ok(ChamberDecomposition {
        segment: (a.clone(), b.clone()),
        crossings,
        intervals,
    })
}
