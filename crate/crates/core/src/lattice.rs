//! Exact arithmetic on the Neron-Severi lattice Num(X): intersection pairing,
//! signature validation and polyhedral-cone geometry for polarizations.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::{Error, Int, Rat, Result};

/// An integral class in Num(X), stored in the coordinates of the model's
/// chosen basis.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct NumClass {
    coords: Vec<Int>,
}

impl NumClass {
    pub fn new(coords: Vec<Int>) -> Self {
        NumClass { coords }
    }

    pub fn of(coords: &[i64]) -> Self {
        NumClass::new(coords.iter().map(|&c| Int::from(c)).collect())
    }

    pub fn zero(rank: usize) -> Self {
        NumClass::new(vec![Int::zero(); rank])
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }

    pub fn len(&self) -> usize {
        self.coords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn add(&self, other: &NumClass) -> NumClass {
        NumClass::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn sub(&self, other: &NumClass) -> NumClass {
        NumClass::new(
            self.coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }

    pub fn neg(&self) -> NumClass {
        NumClass::new(self.coords.iter().map(|a| -a).collect())
    }

    pub fn scale(&self, k: i64) -> NumClass {
        let k = Int::from(k);
        NumClass::new(self.coords.iter().map(|a| a * &k).collect())
    }

    /// Representative of {v, -v} with the first nonzero coordinate positive.
    pub fn sign_normalized(&self) -> NumClass {
        match self.coords.iter().find(|c| !c.is_zero()) {
            Some(c) if c.is_negative() => self.neg(),
            _ => self.clone(),
        }
    }

    /// True iff every coordinate is even, i.e. the class is divisible by 2.
    pub fn is_even(&self) -> bool {
        let two = Int::from(2);
        self.coords.iter().all(|c| (c % &two).is_zero())
    }

    /// Exact halving; `None` unless every coordinate is even.
    pub fn half(&self) -> Option<NumClass> {
        if !self.is_even() {
            return None;
        }
        let two = Int::from(2);
        Some(NumClass::new(self.coords.iter().map(|c| c / &two).collect()))
    }

    pub fn to_rat(&self) -> Vec<Rat> {
        self.coords
            .iter()
            .map(|c| Rat::from_integer(c.clone()))
            .collect()
    }
}

impl fmt::Display for NumClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Where a rational point sits relative to the declared ample subcone.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConeLocation {
    Interior,
    Boundary,
    Outside,
}

/// An ample polarization given by exact rational coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolarizationPoint {
    coords: Vec<Rat>,
    location: ConeLocation,
}

impl PolarizationPoint {
    pub fn coords(&self) -> &[Rat] {
        &self.coords
    }

    pub fn location(&self) -> ConeLocation {
        self.location
    }
}

/// The numerical shadow of an algebraic surface: lattice rank, intersection
/// form, canonical class, basic invariants, and a polyhedral subcone of the
/// ample cone declared by the user.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurfaceModel {
    pub name: String,
    pub rank: usize,
    /// Symmetric intersection matrix on Num(X).
    pub gram: Vec<Vec<Int>>,
    /// Class of the canonical divisor K_X.
    pub canonical: NumClass,
    /// Irregularity q.
    pub q: u32,
    /// Geometric genus p_g.
    pub p_g: u32,
    /// Integer classes spanning a full-dimensional subcone declared ample.
    pub ample_generators: Vec<NumClass>,
}

/// Outcome of one validation check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// Structured pass/fail report; `validate_surface` never aborts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub checks: Vec<ValidationCheck>,
    pub signature: Option<(usize, usize, usize)>,
}

impl ValidationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn failures(&self) -> Vec<String> {
        self.checks
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("{}: {}", c.name, c.detail))
            .collect()
    }
}

impl SurfaceModel {
    /// chi(O_X) = 1 - q + p_g.
    pub fn chi_o(&self) -> Int {
        Int::from(1) - Int::from(self.q) + Int::from(self.p_g)
    }

    fn check_len(&self, v: &[Int]) -> Result<()> {
        if v.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: v.len(),
            });
        }
        Ok(())
    }

    /// Intersection pairing a.b = a^T Q b of two integral classes.
    pub fn pair(&self, a: &NumClass, b: &NumClass) -> Result<Int> {
        self.check_len(a.coords())?;
        self.check_len(b.coords())?;
        let mut acc = Int::zero();
        for (i, ai) in a.coords().iter().enumerate() {
            for (j, bj) in b.coords().iter().enumerate() {
                acc += ai * &self.gram[i][j] * bj;
            }
        }
        Ok(acc)
    }

    /// Pairing of two rational vectors.
    pub fn pair_rat(&self, a: &[Rat], b: &[Rat]) -> Result<Rat> {
        if a.len() != self.rank || b.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: if a.len() != self.rank { a.len() } else { b.len() },
            });
        }
        let mut acc = Rat::zero();
        for (i, ai) in a.iter().enumerate() {
            for (j, bj) in b.iter().enumerate() {
                acc += ai * Rat::from_integer(self.gram[i][j].clone()) * bj;
            }
        }
        Ok(acc)
    }

    /// Pairing of an integral class with a polarization point.
    pub fn pair_with_point(&self, a: &NumClass, h: &PolarizationPoint) -> Result<Rat> {
        self.pair_rat(&a.to_rat(), h.coords())
    }

    pub fn self_pair(&self, a: &NumClass) -> Result<Int> {
        self.pair(a, a)
    }

    /// True iff Qa = 0. Since the form is nondegenerate on Num(X) (signature
    /// (1, rank-1) is enforced by validation), this is equivalent to a = 0;
    /// we nonetheless test Qa = 0 literally.
    pub fn numerically_trivial(&self, a: &NumClass) -> Result<bool> {
        self.check_len(a.coords())?;
        for row in &self.gram {
            let mut acc = Int::zero();
            for (c, q) in a.coords().iter().zip(row) {
                acc += c * q;
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Signature (positive, negative, zero) of the intersection form, by
    /// exact symmetric diagonalization over the rationals.
    pub fn signature(&self) -> (usize, usize, usize) {
        let n = self.rank;
        let mut m: Vec<Vec<Rat>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| Rat::from_integer(self.gram[i][j].clone()))
                    .collect()
            })
            .collect();
        let (mut pos, mut neg, mut zero) = (0usize, 0usize, 0usize);
        for k in 0..n {
            if m[k][k].is_zero() {
                // Try to bring a nonzero diagonal entry into position k.
                if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                    m.swap(k, j);
                    for row in m.iter_mut() {
                        row.swap(k, j);
                    }
                } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                    // All remaining diagonal entries vanish; fold row/col j
                    // into k, which makes m[k][k] = 2 m[k][j] nonzero.
                    for i in 0..n {
                        let t = m[j][i].clone();
                        m[k][i] += t;
                    }
                    for row in m.iter_mut() {
                        let t = row[j].clone();
                        row[k] += t;
                    }
                } else {
                    zero += 1;
                    continue;
                }
            }
            let pivot = m[k][k].clone();
            if pivot.is_positive() {
                pos += 1;
            } else {
                neg += 1;
            }
            for i in k + 1..n {
                if m[i][k].is_zero() {
                    continue;
                }
                let f = &m[i][k] / &pivot;
                for c in 0..n {
                    let t = &m[k][c] * &f;
                    m[i][c] -= t;
                }
                for row in m.iter_mut() {
                    let t = &row[k] * &f;
                    row[i] -= t;
                }
            }
        }
        (pos, neg, zero)
    }

    /// Check every model invariant and report pass/fail per item.
    pub fn validate(&self) -> ValidationReport {
        let mut checks = Vec::new();
        let mut push = |name: &str, passed: bool, detail: String| {
            checks.push(ValidationCheck {
                name: name.to_string(),
                passed,
                detail,
            });
        };

        let shape_ok = self.gram.len() == self.rank
            && self.gram.iter().all(|r| r.len() == self.rank)
            && self.canonical.len() == self.rank
            && self.ample_generators.iter().all(|g| g.len() == self.rank);
        push(
            "shape",
            shape_ok,
            if shape_ok {
                format!("rank {}", self.rank)
            } else {
                "gram / canonical / generator dimensions disagree with rank".into()
            },
        );
        if !shape_ok {
            return ValidationReport {
                checks,
                signature: None,
            };
        }

        let symmetric = (0..self.rank)
            .all(|i| (0..self.rank).all(|j| self.gram[i][j] == self.gram[j][i]));
        push(
            "symmetric",
            symmetric,
            if symmetric {
                "Q = Q^T".into()
            } else {
                "intersection matrix is not symmetric".into()
            },
        );

        let sig = self.signature();
        let hodge = sig == (1, self.rank - 1, 0);
        push(
            "hodge_signature",
            hodge,
            format!("signature ({}, {}), {} null directions", sig.0, sig.1, sig.2),
        );

        let have_gens = !self.ample_generators.is_empty();
        push(
            "generators_present",
            have_gens,
            format!("{} generators", self.ample_generators.len()),
        );

        // Positivity of the declared subcone. The closure of the ample cone
        // may touch the light cone of Q (nef classes of square zero), so we
        // accept g.g >= 0 on generators but demand strictly positive pairwise
        // products; interior points then have positive square.
        let mut cone_ok = true;
        let mut cone_msg = String::from("g.g >= 0 and g_i.g_j > 0 for i != j");
        'outer: for (i, g) in self.ample_generators.iter().enumerate() {
            for (j, h) in self.ample_generators.iter().enumerate() {
                let p = self.pair(g, h).expect("validated shape");
                let bad = if i == j { p.is_negative() } else { !p.is_positive() };
                if bad {
                    cone_ok = false;
                    cone_msg = format!("generator pair ({g}, {h}) has product {p}");
                    break 'outer;
                }
            }
        }
        push("cone_positivity", cone_ok, cone_msg);

        let full = have_gens && rational_rank(&self.ample_generators) == self.rank;
        push(
            "cone_full_dimensional",
            full,
            if full {
                "generators span Num(X) x R".into()
            } else {
                "generators do not span a full-dimensional cone".into()
            },
        );

        ValidationReport {
            checks,
            signature: Some(sig),
        }
    }

    /// Validate and refuse the model on any failure.
    pub fn validated(self) -> Result<SurfaceModel> {
        let report = self.validate();
        if report.passed() {
            Ok(self)
        } else {
            Err(Error::InvalidModel(report.failures()))
        }
    }

    /// Classify a rational point relative to the declared ample subcone.
    pub fn locate_in_cone(&self, h: &[Rat]) -> Result<ConeLocation> {
        if h.len() != self.rank {
            return Err(Error::DimensionMismatch {
                expected: self.rank,
                got: h.len(),
            });
        }
        if self.rank == 1 {
            let g = &self.ample_generators[0].coords()[0];
            let v = &h[0];
            return Ok(if v.is_zero() {
                ConeLocation::Boundary
            } else if v.is_positive() == g.is_positive() {
                ConeLocation::Interior
            } else {
                ConeLocation::Outside
            });
        }
        let facets = self.facet_normals()?;
        let mut on_boundary = false;
        for n in &facets {
            let mut acc = Rat::zero();
            for (ni, hi) in n.iter().zip(h) {
                acc += ni * hi;
            }
            if acc.is_negative() {
                return Ok(ConeLocation::Outside);
            }
            if acc.is_zero() {
                on_boundary = true;
            }
        }
        Ok(if on_boundary {
            ConeLocation::Boundary
        } else {
            ConeLocation::Interior
        })
    }

    /// Build a polarization point, checking cone membership and positivity of
    /// the self-intersection.
    pub fn polarization(&self, coords: Vec<Rat>) -> Result<PolarizationPoint> {
        let location = self.locate_in_cone(&coords)?;
        if location == ConeLocation::Outside {
            return Err(Error::OutsideCone);
        }
        if !self.pair_rat(&coords, &coords)?.is_positive() {
            return Err(Error::NonPositiveSquare);
        }
        Ok(PolarizationPoint { coords, location })
    }

    pub fn polarization_i64(&self, coords: &[i64]) -> Result<PolarizationPoint> {
        self.polarization(
            coords
                .iter()
                .map(|&c| Rat::from_integer(Int::from(c)))
                .collect(),
        )
    }

    /// Outward-facing facet normals of the cone spanned by the generators, in
    /// the standard coordinate pairing. Only used for rank >= 2.
    fn facet_normals(&self) -> Result<Vec<Vec<Rat>>> {
        let gens: Vec<&NumClass> = self.ample_generators.iter().collect();
        if rational_rank(&self.ample_generators) != self.rank {
            return Err(Error::DegenerateCone);
        }
        let mut normals: Vec<Vec<Rat>> = Vec::new();
        for subset in subsets_of_size(gens.len(), self.rank - 1) {
            let rows: Vec<Vec<Rat>> = subset
                .iter()
                .map(|&i| gens[i].to_rat())
                .collect();
            let Some(n) = hyperplane_normal(&rows, self.rank) else {
                continue;
            };
            // Orient the normal so the whole cone sits on the >= 0 side.
            let mut pos = false;
            let mut neg = false;
            for g in &gens {
                let mut acc = Rat::zero();
                for (ni, gi) in n.iter().zip(g.to_rat().iter()) {
                    acc += ni * gi;
                }
                if acc.is_positive() {
                    pos = true;
                }
                if acc.is_negative() {
                    neg = true;
                }
            }
            let oriented = match (pos, neg) {
                (true, false) => n,
                (false, true) => n.iter().map(|x| -x).collect(),
                // Mixed signs: not a supporting hyperplane. All zero: the
                // generators would be degenerate, excluded above.
                _ => continue,
            };
            if !normals.contains(&oriented) {
                normals.push(oriented);
            }
        }
        if normals.is_empty() {
            return Err(Error::DegenerateCone);
        }
        Ok(normals)
    }
}

/// Rank of the span of a set of integer vectors, over the rationals.
fn rational_rank(vecs: &[NumClass]) -> usize {
    if vecs.is_empty() {
        return 0;
    }
    let cols = vecs[0].len();
    let mut m: Vec<Vec<Rat>> = vecs.iter().map(|v| v.to_rat()).collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = &m[r][c] / &pivot;
                for cc in 0..cols {
                    let t = &m[rank][cc] * &f;
                    m[r][cc] -= t;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// A normal vector of the hyperplane spanned by `rows` (each of length
/// `dim`), or `None` if the rows do not span a (dim-1)-dimensional space.
fn hyperplane_normal(rows: &[Vec<Rat>], dim: usize) -> Option<Vec<Rat>> {
    // Solve rows * n = 0 for a one-dimensional nullspace.
    let mut m: Vec<Vec<Rat>> = rows.to_vec();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rank = 0;
    for c in 0..dim {
        let Some(p) = (rank..m.len()).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, p);
        let pivot = m[rank][c].clone();
        for cc in 0..dim {
            m[rank][cc] /= pivot.clone();
        }
        for r in 0..m.len() {
            if r != rank && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..dim {
                    let t = &m[rank][cc] * &f;
                    m[r][cc] -= t;
                }
            }
        }
        pivots.push(c);
        rank += 1;
    }
    if rank != dim - 1 {
        return None;
    }
    let free = (0..dim).find(|c| !pivots.contains(c))?;
    let mut n = vec![Rat::zero(); dim];
    n[free] = Rat::one();
    for (r, &pc) in pivots.iter().enumerate() {
        n[pc] = -m[r][free].clone();
    }
    Some(n)
}

fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(0, n, k, &mut current, &mut out);
    out
}

/// Solve Q x = e_i exactly; used for the wall enumeration bound.
pub(crate) fn gram_inverse_column(model: &SurfaceModel, i: usize) -> Vec<Rat> {
    let n = model.rank;
    let mut m: Vec<Vec<Rat>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rat> = (0..n)
                .map(|c| Rat::from_integer(model.gram[r][c].clone()))
                .collect();
            row.push(if r == i { Rat::one() } else { Rat::zero() });
            row
        })
        .collect();
    for c in 0..n {
        let p = (c..n)
            .find(|&r| !m[r][c].is_zero())
            .expect("nondegenerate form");
        m.swap(c, p);
        let pivot = m[c][c].clone();
        for cc in 0..=n {
            m[c][cc] /= pivot.clone();
        }
        for r in 0..n {
            if r != c && !m[r][c].is_zero() {
                let f = m[r][c].clone();
                for cc in 0..=n {
                    let t = &m[c][cc] * &f;
                    m[r][cc] -= t;
                }
            }
        }
    }
    (0..n).map(|r| m[r][n].clone()).collect()
}
