//! Fixed inputs shared by the benchmarks.

use filippov_core::catalog::{dim4_nonsimple, dim4_simple, dim4_simple_der, random_map};
use filippov_core::{adjoint_rep, Field, Matrix, NLieAlgebra, Representation, Scalar};

pub struct Fixture {
    pub algebra: NLieAlgebra,
    pub derivation: Matrix,
    pub dense: Matrix,
    pub adjoint: Representation,
}

fn ints(values: &[i64]) -> Vec<Scalar> {
    values.iter().map(|&v| Scalar::from_i64(Field::Rational, v)).collect()
}

pub fn simple() -> Fixture {
    let algebra = dim4_simple(Field::Rational);
    let adjoint = adjoint_rep(&algebra);
    Fixture {
        derivation: dim4_simple_der(&ints(&[1, 2, 3, 4, 5, 6])),
        dense: random_map(4, Field::Rational, 5, 1),
        adjoint,
        algebra,
    }
}

pub fn nonsimple() -> Fixture {
    let algebra = dim4_nonsimple(Field::Rational);
    let adjoint = adjoint_rep(&algebra);
    Fixture {
        derivation: Matrix::identity(Field::Rational, 4),
        dense: random_map(4, Field::Rational, 5, 2),
        adjoint,
        algebra,
    }
}
