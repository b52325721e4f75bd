//! The Poisson structures used throughout the examples and test suites.

use num_rational::BigRational;

use crate::algebra::hseries::integer;
use crate::algebra::{HSeries, PoissonBivector, SymPoly};
use crate::error::Result;

/// Standard symplectic structure on a 2n-dimensional space:
/// π_{i, i+n} = 1 for i = 1..n.
pub fn weyl(n: usize) -> Result<PoissonBivector> {
    let upper: Vec<((usize, usize), BigRational)> =
        (0..n).map(|i| ((i, i + n), integer(1))).collect();
    PoissonBivector::constant(2 * n, &upper)
}

/// Heisenberg algebra: [x1, x2] = x3.
pub fn heisenberg() -> PoissonBivector {
    PoissonBivector::linear(3, &[(0, 1, 2, integer(1))]).expect("heisenberg")
}

/// sl2 ≅ so(3) in the cyclic basis: [x1,x2] = x3, [x2,x3] = x1, [x3,x1] = x2.
pub fn sl2() -> PoissonBivector {
    PoissonBivector::linear(
        3,
        &[
            (0, 1, 2, integer(1)),
            (1, 2, 0, integer(1)),
            (2, 0, 1, integer(1)),
        ],
    )
    .expect("sl2")
}

/// The non-abelian two-dimensional Lie algebra: [x1, x2] = x1.
pub fn solvable2() -> PoissonBivector {
    PoissonBivector::linear(2, &[(0, 1, 0, integer(1))]).expect("solvable2")
}

/// Abelian Lie algebra of dimension `dim` (π = 0).
pub fn abelian(dim: usize) -> PoissonBivector {
    PoissonBivector::zero(dim)
}

/// A linear bivector violating Jacobi: [x1,x2] = x3, [x2,x3] = x1, [x3,x1] = x1.
pub fn broken_jacobi() -> PoissonBivector {
    PoissonBivector::linear(
        3,
        &[
            (0, 1, 2, integer(1)),
            (1, 2, 0, integer(1)),
            (2, 0, 0, integer(1)),
        ],
    )
    .expect("broken_jacobi")
}

/// Quantum plane: π_12 = x1 x2.
pub fn quantum_plane() -> PoissonBivector {
    let x1 = SymPoly::var(2, 0, 0);
    let x2 = SymPoly::var(2, 0, 1);
    PoissonBivector::from_upper(2, [((0, 1), &x1 * &x2)]).expect("quantum plane")
}

/// Quadratic structure π_12 = x1².
pub fn x1_squared() -> PoissonBivector {
    let x1 = SymPoly::var(2, 0, 0);
    PoissonBivector::from_upper(2, [((0, 1), &x1 * &x1)]).expect("x1 squared")
}

/// A constant bivector with π_12 = c on a 2-dimensional space.
pub fn plane(c: BigRational) -> PoissonBivector {
    PoissonBivector::from_upper(2, [((0, 1), SymPoly::constant(2, HSeries::constant(c, 0)))])
        .expect("plane")
}
