//! Deformed brackets `[·]_N^j`, the two Nijenhuis criteria, (n−1)-order
//! deformations generated by a Nijenhuis operator, and the power identity.

use std::collections::BTreeMap;

use crate::algebra::{BracketCandidate, NLieAlgebra};
use crate::cohomology::{adjoint_rep, coboundary, nr_bracket, Cochain};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::report::{Report, Witness};
use crate::scalar::Scalar;
use crate::tuples::{combinations, one_based, unshuffles};

fn check_map(alg: &NLieAlgebra, n: &Matrix) -> Result<()> {
    if n.rows() != alg.dim() || n.cols() != alg.dim() {
        return Err(Error::ShapeMismatch {
            expected_rows: alg.dim(),
            expected_cols: alg.dim(),
            rows: n.rows(),
            cols: n.cols(),
        });
    }
    if n.field() != alg.field() {
        return Err(Error::FieldMismatch {
            expected: alg.field().to_string(),
            found: n.field().to_string(),
        });
    }
    Ok(())
}

/// Values of `[e_K]_N^0 = [e_K], [e_K]_N^1, …, [e_K]_N^upto` on one basis tuple.
fn levels_at(alg: &NLieAlgebra, n: &Matrix, images: &[Vector], key: &[usize], upto: usize) -> Vec<Vector> {
    let arity = alg.arity();
    let field = alg.field();
    let basis: Vec<Vector> = key.iter().map(|&k| Vector::basis(field, alg.dim(), k)).collect();
    let mut levels = vec![alg.basis_bracket(key)];
    for j in 1..=upto {
        let mut value = Vector::zeros(field, alg.dim());
        for subset in combinations(arity, j) {
            let args: Vec<&Vector> = (0..arity)
                .map(|i| {
                    if subset.contains(&i) {
                        &images[key[i]]
                    } else {
                        &basis[i]
                    }
                })
                .collect();
            value.add_assign(&alg.bracket_refs(&args));
        }
        value.sub_assign(&n.apply(&levels[j - 1]));
        levels.push(value);
    }
    levels
}

/// `[x]_N^1 = Σ_i [.., Nx_i, ..] − N[x]` and
/// `[x]_N^j = Σ_{i_1<…<i_j} [.., Nx_{i_1}, .., Nx_{i_j}, ..] − N[x]_N^{j−1}`.
pub fn deformed_bracket(alg: &NLieAlgebra, n: &Matrix, j: usize) -> Result<BracketCandidate> {
    check_map(alg, n)?;
    if j == 0 || j >= alg.arity() {
        return Err(Error::IndexOutOfRange {
            index: j,
            max: alg.arity() - 1,
        });
    }
    let images: Vec<Vector> = (0..alg.dim()).map(|i| n.column(i)).collect();
    NLieAlgebra::from_fn(alg.arity(), alg.dim(), alg.field(), |key| {
        levels_at(alg, n, &images, key, j).pop().expect("at least one level")
    })
}

/// `[Nx_1, …, Nx_n] = N [x_1, …, x_n]_N^{n−1}` on basis tuples.
pub fn is_nijenhuis(alg: &NLieAlgebra, n: &Matrix) -> Result<Report> {
    check_map(alg, n)?;
    let mut report = Report::new("nijenhuis");
    let images: Vec<Vector> = (0..alg.dim()).map(|i| n.column(i)).collect();
    for key in combinations(alg.dim(), alg.arity()) {
        let args: Vec<&Vector> = key.iter().map(|&k| &images[k]).collect();
        let lhs = alg.bracket_refs(&args);
        let top = levels_at(alg, n, &images, &key, alg.arity() - 1).pop().expect("levels");
        let rhs = n.apply(&top);
        if !report.compare(&key, &lhs, &rhs, "[Nx] vs N[x]_N^{n-1}") {
            break;
        }
    }
    Ok(report)
}

pub(crate) fn require_nijenhuis(alg: &NLieAlgebra, n: &Matrix) -> Result<()> {
    let r = is_nijenhuis(alg, n)?;
    match r.witness {
        Some(w) if !r.ok => Err(Error::NotNijenhuis(Box::new(w))),
        _ => Ok(()),
    }
}

/// Sign `(−1)^{p(p−1)/2 + Σ_{j≤p} σ(j)}` with 1-based `σ` values; the empty
/// sum at `p = 0` is zero.
fn unshuffle_sign(sigma: &[usize], p: usize) -> bool {
    let sum: usize = sigma[..p].iter().map(|&s| s + 1).sum();
    (p * p.saturating_sub(1) / 2 + sum).is_multiple_of(2)
}

/// Shared body of the unshuffle criterion and the power identity:
/// `Σ_p Σ_σ ± N^{Σ_{j≤p} α_σ(j)} [x_σ(1..p), N^{α_σ(p+1)} x_σ(p+1), …]` on one tuple.
fn unshuffle_sum(alg: &NLieAlgebra, key: &[usize], exps: &[i64], powers: &BTreeMap<i64, Matrix>) -> Vector {
    let arity = alg.arity();
    let field = alg.field();
    let mut total = Vector::zeros(field, alg.dim());
    for p in 0..=arity {
        for sigma in unshuffles(arity, p) {
            let args: Vec<Vector> = sigma
                .iter()
                .enumerate()
                .map(|(pos, &s)| {
                    let e = Vector::basis(field, alg.dim(), key[s]);
                    if pos < p {
                        e
                    } else {
                        powers[&exps[s]].apply(&e)
                    }
                })
                .collect();
            let refs: Vec<&Vector> = args.iter().collect();
            let outer: i64 = sigma[..p].iter().map(|&s| exps[s]).sum();
            let term = powers[&outer].apply(&alg.bracket_refs(&refs));
            if unshuffle_sign(&sigma, p) {
                total.add_assign(&term);
            } else {
                total.sub_assign(&term);
            }
        }
    }
    total
}

fn powers_for(n: &Matrix, exps: &[i64]) -> Result<BTreeMap<i64, Matrix>> {
    let mut needed: Vec<i64> = exps.to_vec();
    // every partial sum over a subset may appear as an outer power
    for p in 0..=exps.len() {
        for subset in combinations(exps.len(), p) {
            needed.push(subset.iter().map(|&i| exps[i]).sum());
        }
    }
    needed.sort_unstable();
    needed.dedup();
    let inverse = if needed.iter().any(|&k| k < 0) {
        Some(n.inverse()?)
    } else {
        None
    };
    let mut out = BTreeMap::new();
    for k in needed {
        let m = if k < 0 {
            inverse.as_ref().expect("inverse computed").pow(-k)?
        } else {
            n.pow(k)?
        };
        out.insert(k, m);
    }
    Ok(out)
}

/// The unshuffle form of the Nijenhuis condition:
/// `Σ_{p=0}^n Σ_σ (−1)^{p(p−1)/2 + Σσ(j)} N^p [x_σ(1..p), Nx_σ(p+1..n)] = 0`.
pub fn is_nijenhuis_unshuffle(alg: &NLieAlgebra, n: &Matrix) -> Result<Report> {
    check_map(alg, n)?;
    let exps = vec![1i64; alg.arity()];
    let powers = powers_for(n, &exps)?;
    let mut report = Report::new("nijenhuis_unshuffle");
    let zero = Vector::zeros(alg.field(), alg.dim());
    for key in combinations(alg.dim(), alg.arity()) {
        let total = unshuffle_sum(alg, &key, &exps, &powers);
        if !report.compare(&key, &total, &zero, "unshuffle sum vs 0") {
            break;
        }
    }
    Ok(report)
}

/// The unshuffle sum with `N^{α_i}` on the arguments and the matching total
/// power outside; vanishes for Nijenhuis `N` (negative `α_i` need invertible `N`).
pub fn power_identity(alg: &NLieAlgebra, n: &Matrix, exponents: &[i64]) -> Result<Report> {
    check_map(alg, n)?;
    if exponents.len() != alg.arity() {
        return Err(Error::ArityMismatch {
            expected: alg.arity(),
            found: exponents.len(),
        });
    }
    require_nijenhuis(alg, n)?;
    let powers = powers_for(n, exponents)?;
    let mut report = Report::new("power_identity");
    let zero = Vector::zeros(alg.field(), alg.dim());
    for key in combinations(alg.dim(), alg.arity()) {
        let total = unshuffle_sum(alg, &key, exponents, &powers);
        if !report.compare(&key, &total, &zero, "power unshuffle sum vs 0") {
            break;
        }
    }
    Ok(report)
}

/// `[·]_λ = [·] + Σ_{i=1}^{n−1} λ^i ω_i`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeformationFamily {
    pub base: NLieAlgebra,
    pub omegas: Vec<BracketCandidate>,
}

impl DeformationFamily {
    pub fn new(base: NLieAlgebra, omegas: Vec<BracketCandidate>) -> Result<Self> {
        if omegas.len() + 1 != base.arity() {
            return Err(Error::InvalidParam {
                param: "omegas".into(),
                reason: format!("expected {} maps, found {}", base.arity() - 1, omegas.len()),
            });
        }
        for w in &omegas {
            if w.arity() != base.arity() {
                return Err(Error::ArityMismatch {
                    expected: base.arity(),
                    found: w.arity(),
                });
            }
            Error::check_dim(base.dim(), w.dim())?;
            if w.field() != base.field() {
                return Err(Error::FieldMismatch {
                    expected: base.field().to_string(),
                    found: w.field().to_string(),
                });
            }
        }
        Ok(Self { base, omegas })
    }

    /// The bracket at a fixed parameter value, together with its Filippov report.
    pub fn evaluate_at(&self, lambda: &Scalar) -> Result<(NLieAlgebra, Report)> {
        lambda.check_field(self.base.field())?;
        let alg = NLieAlgebra::from_fn(self.base.arity(), self.base.dim(), self.base.field(), |key| {
            let mut v = self.base.basis_bracket(key);
            let mut power = Scalar::one(self.base.field());
            for w in &self.omegas {
                power = &power * lambda;
                v.add_scaled(&power, &w.basis_bracket(key));
            }
            v
        })?;
        let report = alg.check_filippov().named(format!("filippov at λ = {lambda}"));
        Ok((alg, report))
    }
}

/// `ω_i = [·]_N^i` for `i = 1..n−1`; requires `N` Nijenhuis.
pub fn omega_family(alg: &NLieAlgebra, n: &Matrix) -> Result<DeformationFamily> {
    require_nijenhuis(alg, n)?;
    let omegas = (1..alg.arity())
        .map(|j| deformed_bracket(alg, n, j))
        .collect::<Result<Vec<_>>>()?;
    DeformationFamily::new(alg.clone(), omegas)
}

/// `δω_1 = 0`, `δω_l + ½ Σ_{i=1}^{l−1} [ω_i, ω_{l−i}] = 0` for `2 ≤ l ≤ n−1`,
/// and `½ Σ_{i=l−n+1}^{n−1} [ω_i, ω_{l−i}] = 0` for `n ≤ l ≤ 2n−2`, with `δ`
/// the coboundary of the adjoint representation.
pub fn check_deformation_conditions(fam: &DeformationFamily) -> Result<Report> {
    let base = &fam.base;
    base.require_filippov()?;
    let n = base.arity();
    let field = base.field();
    let ad = adjoint_rep(base);
    let cochains: Vec<Cochain> = fam.omegas.iter().map(Cochain::from_bracket).collect();
    let half = Scalar::from_ratio(field, 1, 2);
    let mut brackets: BTreeMap<(usize, usize), Cochain> = BTreeMap::new();
    let mut report = Report::new("deformation_conditions");
    for l in 1..=2 * n - 2 {
        let mut total = Cochain::zero(base, base.dim(), 3)?;
        if l < n {
            total = total.add(&coboundary(base, &ad, &cochains[l - 1])?)?;
        }
        let lo = if l >= n { l + 1 - n } else { 1 };
        let hi = (l - 1).min(n - 1);
        let mut sum = Cochain::zero(base, base.dim(), 3)?;
        for i in lo..=hi {
            let j = l - i;
            let key = (i.min(j), i.max(j));
            if let std::collections::btree_map::Entry::Vacant(e) = brackets.entry(key) {
                let b = nr_bracket(&cochains[key.0 - 1], &cochains[key.1 - 1])?;
                e.insert(b);
            }
            sum = sum.add(&brackets[&key])?;
        }
        total = total.add(&sum.scale(&half))?;
        report.cases += 1;
        if let Some((at, v)) = total.first_nonzero() {
            report.note(format!("condition l = {l} fails"));
            report.fail(Witness::new(
                one_based(&at),
                v.coords().to_vec(),
                vec![Scalar::zero(field); v.dim()],
                format!("deformation condition l = {l} evaluated at (X, Y, z)"),
            ));
        }
    }
    Ok(report)
}

/// `T_λ = Id + λN` intertwines the deformed and the original bracket:
/// `T_λ [x]_λ = [T_λ x_1, …, T_λ x_n]`.
pub fn check_trivial(alg: &NLieAlgebra, n: &Matrix, lambda: &Scalar) -> Result<Report> {
    let fam = omega_family(alg, n)?;
    let (deformed, _) = fam.evaluate_at(lambda)?;
    let t = &Matrix::identity(alg.field(), alg.dim()) + &n.scale(lambda);
    let images: Vec<Vector> = (0..alg.dim()).map(|i| t.column(i)).collect();
    let mut report = Report::new(format!("trivial at λ = {lambda}"));
    for key in combinations(alg.dim(), alg.arity()) {
        let lhs = t.apply(&deformed.basis_bracket(&key));
        let args: Vec<&Vector> = key.iter().map(|&k| &images[k]).collect();
        let rhs = alg.bracket_refs(&args);
        if !report.compare(&key, &lhs, &rhs, "T[x]_λ vs [Tx]") {
            break;
        }
    }
    Ok(report)
}

/// `Σ_i c_i N^{min_exponent + i}`; negative powers need an invertible `N`.
pub fn polynomial_map(n: &Matrix, coeffs: &[Scalar], min_exponent: i64) -> Result<Matrix> {
    let field = n.field();
    let mut out = Matrix::zeros(field, n.rows(), n.cols());
    if coeffs.iter().all(Scalar::is_zero) {
        return Ok(out);
    }
    let inverse = if min_exponent < 0 { Some(n.inverse()?) } else { None };
    for (i, c) in coeffs.iter().enumerate() {
        c.check_field(field)?;
        if c.is_zero() {
            continue;
        }
        let k = min_exponent + i as i64;
        let power = if k < 0 {
            inverse.as_ref().expect("inverse computed").pow(-k)?
        } else {
            n.pow(k)?
        };
        out = &out + &power.scale(c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    const Q: Field = Field::Rational;

    fn e(dim: usize, i: usize) -> Vector {
        Vector::basis(Q, dim, i - 1)
    }

    fn dim3_nonabelian() -> NLieAlgebra {
        NLieAlgebra::new(3, 3, Q)
            .unwrap()
            .with_bracket(&[1, 2, 3], e(3, 1))
            .unwrap()
    }

    fn diag(values: &[i64]) -> Matrix {
        let mut m = Matrix::zeros(Q, values.len(), values.len());
        for (i, &v) in values.iter().enumerate() {
            m.set(i, i, Scalar::from_i64(Q, v));
        }
        m
    }

    #[test]
    fn identity_levels_are_binomial() {
        let g = dim3_nonabelian();
        let id = Matrix::identity(Q, 3);
        // C(2,1) = 2, C(2,2) = 1
        assert_eq!(
            deformed_bracket(&g, &id, 1).unwrap().basis_bracket(&[0, 1, 2]),
            e(3, 1).scale(&Scalar::from_i64(Q, 2))
        );
        assert_eq!(deformed_bracket(&g, &id, 2).unwrap().basis_bracket(&[0, 1, 2]), e(3, 1));
        assert!(matches!(
            deformed_bracket(&g, &id, 3),
            Err(Error::IndexOutOfRange { .. })
        ));
        assert!(matches!(
            deformed_bracket(&g, &id, 0),
            Err(Error::IndexOutOfRange { .. })
        ));
    }

    #[test]
    fn diagonal_example() {
        let g = dim3_nonabelian();
        let n = diag(&[2, 3, 5]);
        let fam = omega_family(&g, &n).unwrap();
        let w2 = fam.omegas[1].basis_bracket(&[0, 1, 2]);
        assert_eq!(w2, e(3, 1).scale(&Scalar::from_i64(Q, 15)));
        assert_eq!(n.apply(&w2), e(3, 1).scale(&Scalar::from_i64(Q, 30)));
        assert!(check_deformation_conditions(&fam).unwrap().ok);
    }

    #[test]
    fn zero_map() {
        let g = dim3_nonabelian();
        let z = Matrix::zeros(Q, 3, 3);
        assert!(is_nijenhuis_unshuffle(&g, &z).unwrap().ok);
        let fam = omega_family(&g, &z).unwrap();
        assert!(fam.omegas.iter().all(NLieAlgebra::is_abelian));
        assert!(check_deformation_conditions(&fam).unwrap().ok);
    }

    #[test]
    fn lambda_zero_is_base() {
        let g = dim3_nonabelian();
        let fam = omega_family(&g, &diag(&[1, -1, 4])).unwrap();
        let (alg, report) = fam.evaluate_at(&Scalar::zero(Q)).unwrap();
        assert_eq!(alg, g);
        assert!(report.ok);
        assert!(check_trivial(&g, &diag(&[1, -1, 4]), &Scalar::zero(Q)).unwrap().ok);
    }

    #[test]
    fn laurent_polynomial() {
        let n = diag(&[2, 3, 5]);
        let p = polynomial_map(&n, &[Scalar::one(Q)], -1).unwrap();
        assert_eq!(p, n.inverse().unwrap());
        let singular = diag(&[0, 1, 1]);
        assert_eq!(
            polynomial_map(&singular, &[Scalar::one(Q)], -1),
            Err(Error::SingularMatrix)
        );
        let c = polynomial_map(&n, &[Scalar::from_i64(Q, 7)], 0).unwrap();
        assert_eq!(c, Matrix::scalar(Q, 3, &Scalar::from_i64(Q, 7)));
    }

    #[test]
    fn non_cocycle_fails() {
        // abelian base, ω_1 a bracket violating the Filippov identity: [ω_1, ω_1] ≠ 0
        let base = NLieAlgebra::abelian(3, 4, Q).unwrap();
        let w1 = NLieAlgebra::new(3, 4, Q)
            .unwrap()
            .with_bracket(&[2, 3, 4], e(4, 1))
            .unwrap()
            .with_bracket(&[1, 2, 4], e(4, 3))
            .unwrap()
            .with_bracket(&[1, 3, 4], e(4, 2))
            .unwrap()
            .with_bracket(&[1, 2, 3], e(4, 1))
            .unwrap();
        let w2 = NLieAlgebra::abelian(3, 4, Q).unwrap();
        let fam = DeformationFamily::new(base, vec![w1, w2]).unwrap();
        let conds = check_deformation_conditions(&fam).unwrap();
        let (_, filippov) = fam.evaluate_at(&Scalar::one(Q)).unwrap();
        assert!(!filippov.ok);
        assert!(!conds.ok);
        assert_eq!(conds.notes, vec!["condition l = 2 fails".to_string()]);
    }
}
