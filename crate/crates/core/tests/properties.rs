//! Cross-module invariants over small random integer data.

use proptest::prelude::*;

use filippov_core::catalog::{dim3_nonabelian, dim4_simple, dim4_simple_der};
use filippov_core::constructions::{bracket_d1_d2, det3, det3_expansion_check};
use filippov_core::{
    deformed_bracket, is_nijenhuis, is_nijenhuis_unshuffle, json, CommAssocAlgebra, Field, Matrix, Scalar, Vector,
};

const Q: Field = Field::Rational;

fn small() -> impl Strategy<Value = i64> {
    -4i64..=4
}

fn ints(n: usize) -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(small(), n)
}

fn scalars(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::from_i64(Q, x)).collect()
}

fn square(v: &[i64], dim: usize) -> Matrix {
    let rows: Vec<Vec<Scalar>> = v.chunks(dim).map(scalars).collect();
    Matrix::from_rows(Q, rows).unwrap()
}

fn triple(v: &[i64], dim: usize) -> [Vector; 3] {
    let mut it = v.chunks(dim).map(|c| Vector::from_i64(Q, c));
    [it.next().unwrap(), it.next().unwrap(), it.next().unwrap()]
}

/// F[x, y]/(x², y²) with basis `1, x, y, xy`.
fn dual_numbers() -> CommAssocAlgebra {
    CommAssocAlgebra::trunc_poly(&[2, 2], Q).unwrap()
}

/// Multiplication by `c`; Nijenhuis on any commutative associative algebra.
fn mult(a: &CommAssocAlgebra, c: &Vector) -> Matrix {
    let images: Vec<Vector> = (0..a.dim()).map(|j| a.mul(c, &Vector::basis(Q, a.dim(), j))).collect();
    Matrix::from_images(Q, &images).unwrap()
}

/// `α x∂x + β y∂y`, diagonal on the monomial basis.
fn euler(alpha: i64, beta: i64) -> Matrix {
    Matrix::from_i64_rows(
        Q,
        &[
            &[0, 0, 0, 0],
            &[0, alpha, 0, 0],
            &[0, 0, beta, 0],
            &[0, 0, 0, alpha + beta],
        ],
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn det3_alternates_in_its_columns(v in ints(36)) {
        let a = dual_numbers();
        let [x, y, z] = [triple(&v[..12], 4), triple(&v[12..24], 4), triple(&v[24..], 4)];
        let base = det3(&a, &x, &y, &z);
        let swapped = det3(&a, &x, &z, &y);
        prop_assert_eq!(base.scale(&Scalar::from_i64(Q, -1)), swapped);
        let cycled = det3(&a, &y, &z, &x);
        prop_assert_eq!(det3(&a, &x, &y, &z), cycled);
    }

    #[test]
    fn det3_expansion_for_multiplication_operators(c in ints(4), shift in small(), v in ints(36)) {
        let a = dual_numbers();
        let n = &mult(&a, &Vector::from_i64(Q, &c)) + &Matrix::scalar(Q, 4, &Scalar::from_i64(Q, shift));
        let [x, y, z] = [triple(&v[..12], 4), triple(&v[12..24], 4), triple(&v[24..], 4)];
        prop_assert!(det3_expansion_check(&a, &n, &x, &y, &z).unwrap().ok);
    }

    #[test]
    fn determinant_bracket_of_euler_derivations_is_filippov(d in ints(4)) {
        let a = dual_numbers();
        let alg = bracket_d1_d2(&a, &euler(d[0], d[1]), &euler(d[2], d[3])).unwrap();
        prop_assert!(alg.check_filippov().ok);
    }

    #[test]
    fn every_map_on_the_3_dimensional_algebra_is_nijenhuis(v in ints(9)) {
        let alg = dim3_nonabelian(Q);
        let n = square(&v, 3);
        prop_assert!(is_nijenhuis(&alg, &n).unwrap().ok);
        prop_assert!(is_nijenhuis_unshuffle(&alg, &n).unwrap().ok);
        for j in 1..=2 {
            let deformed = deformed_bracket(&alg, &n, j).unwrap();
            prop_assert!(deformed.check_filippov().ok);
        }
    }

    #[test]
    fn simple_derivation_family_is_closed(v in ints(6), w in ints(6)) {
        let alg = dim4_simple(Q);
        let (d, e) = (dim4_simple_der(&scalars(&v)), dim4_simple_der(&scalars(&w)));
        prop_assert!(alg.is_derivation(&d).unwrap().ok);
        prop_assert!(alg.is_derivation(&d.commutator(&e)).unwrap().ok);
    }

    #[test]
    fn maps_survive_json(v in ints(16)) {
        let m = square(&v, 4);
        prop_assert_eq!(json::parse_linear_map(&json::linear_map_to_json(&m), Q).unwrap(), m);
    }
}
