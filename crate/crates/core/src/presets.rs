//! Bundled surface models used throughout the tests and shipped as example
//! configs with the CLI.

use crate::lattice::{NumClass, SurfaceModel};
use crate::Int;

/// Numerical P^1 x P^1: rank 2, hyperbolic form [[0,1],[1,0]], K = (-2,-2),
/// ample subcone the closed positive quadrant.
pub fn p1xp1() -> SurfaceModel {
    SurfaceModel {
        name: "p1xp1".into(),
        rank: 2,
        gram: vec![
            vec![Int::from(0), Int::from(1)],
            vec![Int::from(1), Int::from(0)],
        ],
        canonical: NumClass::of(&[-2, -2]),
        q: 0,
        p_g: 0,
        ample_generators: vec![NumClass::of(&[1, 0]), NumClass::of(&[0, 1])],
    }
}

/// Numerical P^2: rank 1, Q = [[1]], K = (-3).
pub fn p2() -> SurfaceModel {
    SurfaceModel {
        name: "p2".into(),
        rank: 1,
        gram: vec![vec![Int::from(1)]],
        canonical: NumClass::of(&[-3]),
        q: 0,
        p_g: 0,
        ample_generators: vec![NumClass::of(&[1])],
    }
}

/// A rank-2 model with diagonal form diag(1,-1) and K = (-3,1); the declared
/// ample subcone is spanned by (2,1) and (2,-1).
pub fn hyperbolic() -> SurfaceModel {
    SurfaceModel {
        name: "hyperbolic".into(),
        rank: 2,
        gram: vec![
            vec![Int::from(1), Int::from(0)],
            vec![Int::from(0), Int::from(-1)],
        ],
        canonical: NumClass::of(&[-3, 1]),
        q: 0,
        p_g: 0,
        ample_generators: vec![NumClass::of(&[2, 1]), NumClass::of(&[2, -1])],
    }
}

/// All bundled models.
pub fn all() -> Vec<SurfaceModel> {
    vec![p1xp1(), p2(), hyperbolic()]
}
