//! Weight-zero Rota-Baxter operators, O-operators relative to a
//! representation, their square-zero lift to the semidirect product, and the
//! derivation / Rota-Baxter / Nijenhuis classification of a linear map.

use serde::Serialize;

use crate::algebra::NLieAlgebra;
use crate::cohomology::{adjoint_rep, check_representation, Representation};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::nijenhuis::is_nijenhuis;
use crate::report::Report;
use crate::tuples::{combinations, without};

/// `[Tv_1, …, Tv_n] = Σ_i (−1)^{n−i} T(ρ(Tv_1, .., \widehat{Tv_i}, .., Tv_n) v_i)`
/// on strictly increasing basis tuples of `V`. `T` has `dim g` rows and `dim V` columns.
pub fn is_o_operator(alg: &NLieAlgebra, rep: &Representation, t: &Matrix) -> Result<Report> {
    if t.rows() != alg.dim() || t.cols() != rep.vdim() {
        return Err(Error::ShapeMismatch {
            expected_rows: alg.dim(),
            expected_cols: rep.vdim(),
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let valid = check_representation(alg, rep)?;
    if let (false, Some(w)) = (valid.ok, valid.witness) {
        return Err(Error::InvalidRepresentation(Box::new(w)));
    }
    Ok(o_operator_report(alg, rep, t))
}

fn o_operator_report(alg: &NLieAlgebra, rep: &Representation, t: &Matrix) -> Report {
    let n = alg.arity();
    let field = alg.field();
    let images: Vec<Vector> = (0..rep.vdim()).map(|i| t.column(i)).collect();
    let mut report = Report::new("o_operator");
    for key in combinations(rep.vdim(), n) {
        let args: Vec<&Vector> = key.iter().map(|&k| &images[k]).collect();
        let lhs = alg.bracket_refs(&args);
        let mut rhs = Vector::zeros(field, alg.dim());
        for i in 0..n {
            let others: Vec<Vector> = without(&key, i).iter().map(|&k| images[k].clone()).collect();
            let acted = rep.of_vectors(&others).apply(&Vector::basis(field, rep.vdim(), key[i]));
            let term = t.apply(&acted);
            // 1-based exponent n − (i+1)
            if (n - i - 1).is_multiple_of(2) {
                rhs.add_assign(&term);
            } else {
                rhs.sub_assign(&term);
            }
        }
        if !report.compare(&key, &lhs, &rhs, "[Tv] vs Σ (−1)^{n−i} T(ρ(..)v_i)") {
            break;
        }
    }
    report
}

/// Rota-Baxter operator of weight zero. For ternary brackets this is
/// `[Px,Py,Pz] = P([Px,Py,z] + [Px,y,Pz] + [x,Py,Pz])`; for other arities it
/// is the O-operator condition for the adjoint representation.
pub fn is_rota_baxter(alg: &NLieAlgebra, p: &Matrix) -> Result<Report> {
    check_square(alg, p)?;
    if alg.arity() != 3 {
        return is_rota_baxter_via_o_operator(alg, p);
    }
    let field = alg.field();
    let images: Vec<Vector> = (0..alg.dim()).map(|i| p.column(i)).collect();
    let mut report = Report::new("rota_baxter");
    for key in combinations(alg.dim(), 3) {
        let x: Vec<Vector> = key.iter().map(|&k| Vector::basis(field, alg.dim(), k)).collect();
        let px: Vec<&Vector> = key.iter().map(|&k| &images[k]).collect();
        let lhs = alg.bracket_refs(&px);
        let mut inner = alg.bracket_refs(&[px[0], px[1], &x[2]]);
        inner.add_assign(&alg.bracket_refs(&[px[0], &x[1], px[2]]));
        inner.add_assign(&alg.bracket_refs(&[&x[0], px[1], px[2]]));
        let rhs = p.apply(&inner);
        if !report.compare(&key, &lhs, &rhs, "[Px,Py,Pz] vs P(...)") {
            break;
        }
    }
    Ok(report)
}

/// The O-operator condition with the adjoint representation, at any arity.
pub fn is_rota_baxter_via_o_operator(alg: &NLieAlgebra, p: &Matrix) -> Result<Report> {
    check_square(alg, p)?;
    Ok(is_o_operator(alg, &adjoint_rep(alg), p)?.named("rota_baxter"))
}

fn check_square(alg: &NLieAlgebra, m: &Matrix) -> Result<()> {
    if m.rows() != alg.dim() || m.cols() != alg.dim() {
        return Err(Error::ShapeMismatch {
            expected_rows: alg.dim(),
            expected_cols: alg.dim(),
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    Ok(())
}

/// `T̄(x + v) = Tv` on `g ⊕ V`, i.e. the block matrix `[[0, T], [0, 0]]`.
pub fn lift_o_operator(alg: &NLieAlgebra, rep: &Representation, t: &Matrix) -> Result<Matrix> {
    if t.rows() != alg.dim() || t.cols() != rep.vdim() {
        return Err(Error::ShapeMismatch {
            expected_rows: alg.dim(),
            expected_cols: rep.vdim(),
            rows: t.rows(),
            cols: t.cols(),
        });
    }
    let f = alg.field();
    Ok(Matrix::block(
        &Matrix::zeros(f, alg.dim(), alg.dim()),
        t,
        &Matrix::zeros(f, rep.vdim(), alg.dim()),
        &Matrix::zeros(f, rep.vdim(), rep.vdim()),
    ))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Classification {
    pub derivation: bool,
    pub rota_baxter: bool,
    pub nijenhuis: bool,
}

/// All three verdicts with their reports (derivation, Rota-Baxter, Nijenhuis).
pub fn classify_reports(alg: &NLieAlgebra, n: &Matrix) -> Result<[Report; 3]> {
    Ok([alg.is_derivation(n)?, is_rota_baxter(alg, n)?, is_nijenhuis(alg, n)?])
}

pub fn classify_map(alg: &NLieAlgebra, n: &Matrix) -> Result<Classification> {
    let [d, r, nij] = classify_reports(alg, n)?;
    Ok(Classification {
        derivation: d.ok,
        rota_baxter: r.ok,
        nijenhuis: nij.ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cohomology::semidirect_product;
    use crate::scalar::{Field, Scalar};

    const Q: Field = Field::Rational;

    fn e(dim: usize, i: usize) -> Vector {
        Vector::basis(Q, dim, i - 1)
    }

    fn dim4_simple() -> NLieAlgebra {
        NLieAlgebra::new(3, 4, Q)
            .unwrap()
            .with_bracket(&[2, 3, 4], e(4, 1))
            .unwrap()
            .with_bracket(&[1, 2, 4], e(4, 3))
            .unwrap()
            .with_bracket(&[1, 3, 4], e(4, 2))
            .unwrap()
            .with_bracket(&[1, 2, 3], e(4, 4))
            .unwrap()
    }

    #[test]
    fn zero_and_identity() {
        let g = dim4_simple();
        let ad = adjoint_rep(&g);
        assert!(is_rota_baxter(&g, &Matrix::zeros(Q, 4, 4)).unwrap().ok);
        assert!(is_o_operator(&g, &ad, &Matrix::zeros(Q, 4, 4)).unwrap().ok);
        let id = Matrix::identity(Q, 4);
        let r = is_o_operator(&g, &ad, &id).unwrap();
        assert!(!r.ok);
        // [e1,e2,e3] = e4 on the left, 3e4 on the right
        let w = r.witness.unwrap();
        assert_eq!(w.at, vec![1, 2, 3]);
        assert_eq!(w.rhs, e(4, 4).scale(&Scalar::from_i64(Q, 3)).coords());
        let c = classify_map(&g, &Matrix::zeros(Q, 4, 4)).unwrap();
        assert!(c.derivation && c.rota_baxter && c.nijenhuis);
    }

    #[test]
    fn lift_is_square_zero() {
        let g = dim4_simple();
        let ad = adjoint_rep(&g);
        let t = Matrix::from_i64_rows(Q, &[&[1, 2, 0, 0], &[0, 1, 0, 3], &[0, 0, 0, 0], &[5, 0, 0, 1]]);
        let lift = lift_o_operator(&g, &ad, &t).unwrap();
        assert!(lift.matmul(&lift).is_zero());
        let s = semidirect_product(&g, &ad).unwrap();
        let lifted_id = lift_o_operator(&g, &ad, &Matrix::identity(Q, 4)).unwrap();
        assert!(!is_nijenhuis(&s, &lifted_id).unwrap().ok);
        let lifted_zero = lift_o_operator(&g, &ad, &Matrix::zeros(Q, 4, 4)).unwrap();
        assert!(lifted_zero.is_zero());
        assert!(is_nijenhuis(&s, &lifted_zero).unwrap().ok);
    }

    #[test]
    fn shape_errors() {
        let g = dim4_simple();
        let ad = adjoint_rep(&g);
        assert!(matches!(
            is_o_operator(&g, &ad, &Matrix::zeros(Q, 3, 4)),
            Err(Error::ShapeMismatch { .. })
        ));
        assert!(matches!(
            is_rota_baxter(&g, &Matrix::zeros(Q, 4, 3)),
            Err(Error::ShapeMismatch { .. })
        ));
    }
}
