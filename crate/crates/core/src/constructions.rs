//! Building new n-Lie algebras: the (n+1)-ary extension by a functional
//! vanishing on brackets, and the ternary brackets induced on a commutative
//! associative algebra by a derivation with a functional, by two commuting
//! derivations, or by three.

use std::collections::BTreeMap;

use crate::algebra::{LinearFunctional, NLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{nullspace, Matrix, Vector};
use crate::nijenhuis::{is_nijenhuis, require_nijenhuis};
use crate::report::{Report, Witness};
use crate::scalar::{Field, Scalar};
use crate::tuples::{combinations, without};

/// Commutative product given on basis pairs `i ≤ j`; associativity is checked,
/// not assumed.
#[derive(Clone, Debug, PartialEq)]
pub struct CommAssocAlgebra {
    dim: usize,
    field: Field,
    products: BTreeMap<(usize, usize), Vector>,
}

impl CommAssocAlgebra {
    pub fn new(dim: usize, field: Field) -> Self {
        Self {
            dim,
            field,
            products: BTreeMap::new(),
        }
    }

    /// `A = F[t_1..t_k] / (t_1^{b_1}, …, t_k^{b_k})` on the monomial basis,
    /// ordered mixed-radix with the first variable fastest.
    pub fn trunc_poly(bounds: &[usize], field: Field) -> Result<Self> {
        if bounds.is_empty() || bounds.contains(&0) {
            return Err(Error::InvalidParam {
                param: "bounds".into(),
                reason: "need at least one variable and every bound ≥ 1".into(),
            });
        }
        let dim: usize = bounds.iter().product();
        let exps = |mut i: usize| -> Vec<usize> {
            bounds
                .iter()
                .map(|&b| {
                    let e = i % b;
                    i /= b;
                    e
                })
                .collect()
        };
        let index = |e: &[usize]| -> usize { e.iter().zip(bounds).rev().fold(0, |acc, (&x, &b)| acc * b + x) };
        let mut alg = Self::new(dim, field);
        for i in 0..dim {
            for j in i..dim {
                let sum: Vec<usize> = exps(i).iter().zip(exps(j)).map(|(a, b)| a + b).collect();
                if sum.iter().zip(bounds).all(|(&s, &b)| s < b) {
                    alg.products.insert((i, j), Vector::basis(field, dim, index(&sum)));
                }
            }
        }
        Ok(alg)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn products(&self) -> impl Iterator<Item = (&(usize, usize), &Vector)> {
        self.products.iter()
    }

    /// Sets `e_i · e_j = e_j · e_i = value` (0-based).
    pub fn set_product(&mut self, i: usize, j: usize, value: Vector) -> Result<()> {
        for k in [i, j] {
            if k >= self.dim {
                return Err(Error::IndexOutOfRange {
                    index: k + 1,
                    max: self.dim,
                });
            }
        }
        Error::check_dim(self.dim, value.dim())?;
        if value.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: value.field().to_string(),
            });
        }
        let key = (i.min(j), i.max(j));
        if value.is_zero() {
            self.products.remove(&key);
        } else {
            self.products.insert(key, value);
        }
        Ok(())
    }

    pub fn basis_product(&self, i: usize, j: usize) -> Vector {
        self.products
            .get(&(i.min(j), i.max(j)))
            .cloned()
            .unwrap_or_else(|| Vector::zeros(self.field, self.dim))
    }

    pub fn mul(&self, x: &Vector, y: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim);
        for (i, a) in x.support() {
            for (j, b) in y.support() {
                if let Some(v) = self.products.get(&(i.min(j), i.max(j))) {
                    out.add_scaled(&(a * b), v);
                }
            }
        }
        out
    }

    fn basis(&self, i: usize) -> Vector {
        Vector::basis(self.field, self.dim, i)
    }
}

/// `(e_i·e_j)·e_k = e_i·(e_j·e_k)` for all basis triples.
pub fn check_comm_assoc(a: &CommAssocAlgebra) -> Report {
    let mut report = Report::new("associative");
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let lhs = a.mul(&a.basis_product(i, j), &a.basis(k));
                let rhs = a.mul(&a.basis(i), &a.basis_product(j, k));
                if !report.compare(&[i, j, k], &lhs, &rhs, "(xy)z vs x(yz)") {
                    return report;
                }
            }
        }
    }
    report
}

fn require_assoc(a: &CommAssocAlgebra) -> Result<()> {
    let r = check_comm_assoc(a);
    match r.witness {
        Some(w) if !r.ok => Err(Error::NotAssociative(Box::new(w))),
        _ => Ok(()),
    }
}

fn check_square(a: &CommAssocAlgebra, m: &Matrix) -> Result<()> {
    if m.rows() != a.dim || m.cols() != a.dim {
        return Err(Error::ShapeMismatch {
            expected_rows: a.dim,
            expected_cols: a.dim,
            rows: m.rows(),
            cols: m.cols(),
        });
    }
    if m.field() != a.field {
        return Err(Error::FieldMismatch {
            expected: a.field.to_string(),
            found: m.field().to_string(),
        });
    }
    Ok(())
}

/// `D(xy) = D(x)y + xD(y)` on basis pairs.
pub fn is_assoc_derivation(a: &CommAssocAlgebra, d: &Matrix) -> Result<Report> {
    check_square(a, d)?;
    let mut report = Report::new("assoc_derivation");
    for i in 0..a.dim {
        for j in i..a.dim {
            let lhs = d.apply(&a.basis_product(i, j));
            let mut rhs = a.mul(&d.column(i), &a.basis(j));
            rhs.add_assign(&a.mul(&a.basis(i), &d.column(j)));
            if !report.compare(&[i, j], &lhs, &rhs, "D(xy) vs D(x)y + xD(y)") {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Basis of the derivations of `A`, by exact elimination on the `d²` entries
/// (unknown `D[r][c]` has index `r·d + c`).
pub fn assoc_derivation_space(a: &CommAssocAlgebra) -> Vec<Matrix> {
    let d = a.dim;
    let f = a.field;
    let mut rows = Vec::new();
    for i in 0..d {
        for j in i..d {
            let prod = a.basis_product(i, j);
            let right: Vec<Vector> = (0..d).map(|r| a.basis_product(r, j)).collect();
            let left: Vec<Vector> = (0..d).map(|r| a.basis_product(i, r)).collect();
            for m in 0..d {
                let mut row = vec![Scalar::zero(f); d * d];
                for r in 0..d {
                    row[m * d + r] += &prod[r];
                    row[r * d + i] -= &right[r][m];
                    row[r * d + j] -= &left[r][m];
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    nullspace(f, &rows, d * d)
        .into_iter()
        .map(|v| Matrix::from_rows(f, v.chunks(d).map(<[Scalar]>::to_vec).collect()).expect("square"))
        .collect()
}

/// Basis of the maps commuting with every given square matrix (unknown
/// `N[r][c]` has index `r·d + c`).
pub fn commutant(field: Field, dim: usize, maps: &[&Matrix]) -> Vec<Matrix> {
    let d = dim;
    let mut rows = Vec::new();
    for m in maps {
        // (N M − M N)[r][c] = Σ_k N[r][k] M[k][c] − M[r][k] N[k][c]
        for r in 0..d {
            for c in 0..d {
                let mut row = vec![Scalar::zero(field); d * d];
                for k in 0..d {
                    row[r * d + k] += m.get(k, c);
                    row[k * d + c] -= m.get(r, k);
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
    }
    nullspace(field, &rows, d * d)
        .into_iter()
        .map(|v| Matrix::from_rows(field, v.chunks(d).map(<[Scalar]>::to_vec).collect()).expect("square"))
        .collect()
}

/// Basis of the functionals with `f(D(x)y) = f(xD(y))` on basis pairs.
pub fn symmetric_functionals(a: &CommAssocAlgebra, d: &Matrix) -> Result<Vec<LinearFunctional>> {
    check_square(a, d)?;
    let mut rows = Vec::new();
    for i in 0..a.dim {
        for j in (i + 1)..a.dim {
            let diff = &a.mul(&d.column(i), &a.basis(j)) - &a.mul(&a.basis(i), &d.column(j));
            if !diff.is_zero() {
                rows.push(diff.into_coords());
            }
        }
    }
    nullspace(a.field, &rows, a.dim)
        .into_iter()
        .map(|v| LinearFunctional::new(a.field, v))
        .collect()
}

fn require_derivation(a: &CommAssocAlgebra, d: &Matrix, name: &str) -> Result<()> {
    let r = is_assoc_derivation(a, d)?;
    match r.witness {
        Some(w) if !r.ok => Err(Error::NotADerivation {
            name: name.into(),
            witness: Box::new(w),
        }),
        _ => Ok(()),
    }
}

/// `{x_1..x_{n+1}} = Σ_i (−1)^{i−1} f(x_i) [x_1..x̂_i..x_{n+1}]`; requires
/// `f` to vanish on every basis bracket.
pub fn extend_by_functional(alg: &NLieAlgebra, f: &LinearFunctional) -> Result<NLieAlgebra> {
    Error::check_dim(alg.dim(), f.dim())?;
    if f.field() != alg.field() {
        return Err(Error::FieldMismatch {
            expected: alg.field().to_string(),
            found: f.field().to_string(),
        });
    }
    for key in combinations(alg.dim(), alg.arity()) {
        let value = f.apply(&alg.basis_bracket(&key));
        if !value.is_zero() {
            return Err(Error::FunctionalNotVanishingOnDerived(Box::new(Witness::new(
                crate::tuples::one_based(&key),
                vec![value],
                vec![Scalar::zero(alg.field())],
                "f([x]) vs 0",
            ))));
        }
    }
    NLieAlgebra::from_fn(alg.arity() + 1, alg.dim(), alg.field(), |key| {
        let mut v = Vector::zeros(alg.field(), alg.dim());
        for i in 0..key.len() {
            let c = &f.values()[key[i]];
            if c.is_zero() {
                continue;
            }
            let term = alg.basis_bracket(&without(key, i));
            if i % 2 == 0 {
                v.add_scaled(c, &term);
            } else {
                v.add_scaled(&-c, &term);
            }
        }
        v
    })
}

/// `N` Nijenhuis on `g` stays Nijenhuis on the extension by `f`.
pub fn check_nijenhuis_persistence(alg: &NLieAlgebra, f: &LinearFunctional, n: &Matrix) -> Result<Report> {
    require_nijenhuis(alg, n)?;
    let ext = extend_by_functional(alg, f)?;
    Ok(is_nijenhuis(&ext, n)?.named("nijenhuis_on_extension"))
}

/// `Nx·Ny = N(Nx·y + x·Ny − N(x·y))` on basis pairs.
pub fn is_nijenhuis_assoc(a: &CommAssocAlgebra, n: &Matrix) -> Result<Report> {
    check_square(a, n)?;
    require_assoc(a)?;
    let mut report = Report::new("nijenhuis_assoc");
    for i in 0..a.dim {
        for j in 0..a.dim {
            let (nx, ny) = (n.column(i), n.column(j));
            let lhs = a.mul(&nx, &ny);
            let mut inner = a.mul(&nx, &a.basis(j));
            inner.add_assign(&a.mul(&a.basis(i), &ny));
            inner.sub_assign(&n.apply(&a.basis_product(i, j)));
            let rhs = n.apply(&inner);
            if !report.compare(&[i, j], &lhs, &rhs, "Nx·Ny vs N(Nx·y + x·Ny − N(xy))") {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

fn require_nijenhuis_assoc(a: &CommAssocAlgebra, n: &Matrix) -> Result<()> {
    let r = is_nijenhuis_assoc(a, n)?;
    match r.witness {
        Some(w) if !r.ok => Err(Error::NotNijenhuisAssoc(Box::new(w))),
        _ => Ok(()),
    }
}

/// `⟦x,y,z⟧ = f(x)(D(y)z − D(z)y) + f(y)(D(z)x − D(x)z) + f(z)(D(x)y − D(y)x)`.
pub fn bracket_f_d(a: &CommAssocAlgebra, f: &LinearFunctional, d: &Matrix) -> Result<NLieAlgebra> {
    Error::check_dim(a.dim, f.dim())?;
    require_assoc(a)?;
    require_derivation(a, d, "D")?;
    for i in 0..a.dim {
        for j in 0..a.dim {
            let lhs = f.apply(&a.mul(&d.column(i), &a.basis(j)));
            let rhs = f.apply(&a.mul(&a.basis(i), &d.column(j)));
            if lhs != rhs {
                return Err(Error::FunctionalSymmetryViolated(Box::new(Witness::new(
                    vec![i + 1, j + 1],
                    vec![lhs],
                    vec![rhs],
                    "f(D(x)y) vs f(xD(y))",
                ))));
            }
        }
    }
    NLieAlgebra::from_fn(3, a.dim, a.field, |key| {
        let x: Vec<Vector> = key.iter().map(|&k| a.basis(k)).collect();
        let dx: Vec<Vector> = key.iter().map(|&k| d.column(k)).collect();
        let mut v = Vector::zeros(a.field, a.dim);
        for c in 0..3 {
            let (p, q, r) = (c, (c + 1) % 3, (c + 2) % 3);
            let fp = f.apply(&x[p]);
            if fp.is_zero() {
                continue;
            }
            let mut t = a.mul(&dx[q], &x[r]);
            t.sub_assign(&a.mul(&dx[r], &x[q]));
            v.add_scaled(&fp, &t);
        }
        v
    })
}

/// `|x⃗ y⃗ z⃗| = x_1(y_2z_3 − y_3z_2) − x_2(y_1z_3 − y_3z_1) + x_3(y_1z_2 − y_2z_1)`
/// with products taken in `A`.
pub fn det3(a: &CommAssocAlgebra, x: &[Vector; 3], y: &[Vector; 3], z: &[Vector; 3]) -> Vector {
    let minor = |p: usize, q: usize| -> Vector { &a.mul(&y[p], &z[q]) - &a.mul(&y[q], &z[p]) };
    let mut out = a.mul(&x[0], &minor(1, 2));
    out.sub_assign(&a.mul(&x[1], &minor(0, 2)));
    out.add_assign(&a.mul(&x[2], &minor(0, 1)));
    out
}

fn commuting(d1: &Matrix, d2: &Matrix, first: &str, second: &str) -> Result<()> {
    if d1.matmul(d2) != d2.matmul(d1) {
        return Err(Error::DerivationsDoNotCommute {
            first: first.into(),
            second: second.into(),
        });
    }
    Ok(())
}

/// Determinant bracket with rows `(x, y, z)`, `D_1(·)`, `D_2(·)`.
pub fn bracket_d1_d2(a: &CommAssocAlgebra, d1: &Matrix, d2: &Matrix) -> Result<NLieAlgebra> {
    require_assoc(a)?;
    require_derivation(a, d1, "D1")?;
    require_derivation(a, d2, "D2")?;
    commuting(d1, d2, "D1", "D2")?;
    let id = Matrix::identity(a.field, a.dim);
    determinant_bracket(a, [&id, d1, d2])
}

/// Determinant bracket with rows `D_1(·)`, `D_2(·)`, `D_3(·)`.
pub fn bracket_d1_d2_d3(a: &CommAssocAlgebra, d1: &Matrix, d2: &Matrix, d3: &Matrix) -> Result<NLieAlgebra> {
    require_assoc(a)?;
    for (d, name) in [(d1, "D1"), (d2, "D2"), (d3, "D3")] {
        require_derivation(a, d, name)?;
    }
    commuting(d1, d2, "D1", "D2")?;
    commuting(d1, d3, "D1", "D3")?;
    commuting(d2, d3, "D2", "D3")?;
    determinant_bracket(a, [d1, d2, d3])
}

fn column(rows: [&Matrix; 3], i: usize) -> [Vector; 3] {
    [rows[0].column(i), rows[1].column(i), rows[2].column(i)]
}

fn determinant_bracket(a: &CommAssocAlgebra, rows: [&Matrix; 3]) -> Result<NLieAlgebra> {
    NLieAlgebra::from_fn(3, a.dim, a.field, |key| {
        det3(a, &column(rows, key[0]), &column(rows, key[1]), &column(rows, key[2]))
    })
}

fn apply3(n: &Matrix, v: &[Vector; 3]) -> [Vector; 3] {
    [n.apply(&v[0]), n.apply(&v[1]), n.apply(&v[2])]
}

/// Both sides of
/// `|Nx⃗ Ny⃗ Nz⃗| = N(|Nx⃗ Ny⃗ z⃗| + c.p.) − N²(|Nx⃗ y⃗ z⃗| + c.p.) + N³|x⃗ y⃗ z⃗|`,
/// where `c.p.` cycles the three column arguments.
fn det3_sides(a: &CommAssocAlgebra, n: &Matrix, x: &[Vector; 3], y: &[Vector; 3], z: &[Vector; 3]) -> (Vector, Vector) {
    let (nx, ny, nz) = (apply3(n, x), apply3(n, y), apply3(n, z));
    let lhs = det3(a, &nx, &ny, &nz);
    let mut two = det3(a, &nx, &ny, z);
    two.add_assign(&det3(a, x, &ny, &nz));
    two.add_assign(&det3(a, &nx, y, &nz));
    let mut one = det3(a, &nx, y, z);
    one.add_assign(&det3(a, x, &ny, z));
    one.add_assign(&det3(a, x, y, &nz));
    let n2 = n.matmul(n);
    let n3 = n2.matmul(n);
    let mut rhs = n.apply(&two);
    rhs.sub_assign(&n2.apply(&one));
    rhs.add_assign(&n3.apply(&det3(a, x, y, z)));
    (lhs, rhs)
}

/// The determinant expansion identity for one choice of column vectors.
pub fn det3_expansion_check(
    a: &CommAssocAlgebra,
    n: &Matrix,
    x: &[Vector; 3],
    y: &[Vector; 3],
    z: &[Vector; 3],
) -> Result<Report> {
    require_nijenhuis_assoc(a, n)?;
    let mut report = Report::new("det3_expansion");
    let (lhs, rhs) = det3_sides(a, n, x, y, z);
    report.compare(&[], &lhs, &rhs, "|Nx Ny Nz| vs expansion");
    Ok(report)
}

/// The determinant expansion identity on every basis triple `(e_i, e_j, e_k)`,
/// with column vectors `(R_1 e, R_2 e, R_3 e)` built from the given row maps.
pub fn det3_expansion_basis(a: &CommAssocAlgebra, n: &Matrix, rows: [&Matrix; 3]) -> Result<Report> {
    require_nijenhuis_assoc(a, n)?;
    for r in rows {
        check_square(a, r)?;
    }
    let mut report = Report::new("det3_expansion");
    for i in 0..a.dim {
        for j in 0..a.dim {
            for k in 0..a.dim {
                let (lhs, rhs) = det3_sides(a, n, &column(rows, i), &column(rows, j), &column(rows, k));
                if !report.compare(&[i, j, k], &lhs, &rhs, "|Nx Ny Nz| vs expansion") {
                    return Ok(report);
                }
            }
        }
    }
    Ok(report)
}

/// The three associative-algebra constructions of ternary brackets.
#[derive(Clone, Debug, PartialEq)]
pub enum Construction {
    FD { f: LinearFunctional, d: Matrix },
    D1D2 { d1: Matrix, d2: Matrix },
    D1D2D3 { d1: Matrix, d2: Matrix, d3: Matrix },
}

impl Construction {
    pub fn build(&self, a: &CommAssocAlgebra) -> Result<NLieAlgebra> {
        match self {
            Construction::FD { f, d } => bracket_f_d(a, f, d),
            Construction::D1D2 { d1, d2 } => bracket_d1_d2(a, d1, d2),
            Construction::D1D2D3 { d1, d2, d3 } => bracket_d1_d2_d3(a, d1, d2, d3),
        }
    }

    pub fn derivations(&self) -> Vec<(&'static str, &Matrix)> {
        match self {
            Construction::FD { d, .. } => vec![("D", d)],
            Construction::D1D2 { d1, d2 } => vec![("D1", d1), ("D2", d2)],
            Construction::D1D2D3 { d1, d2, d3 } => vec![("D1", d1), ("D2", d2), ("D3", d3)],
        }
    }
}

/// A Nijenhuis operator of `A` commuting with the construction's derivations
/// is Nijenhuis on the constructed 3-Lie algebra.
pub fn check_nijenhuis_persistence_assoc(
    a: &CommAssocAlgebra,
    n: &Matrix,
    construction: &Construction,
) -> Result<Report> {
    require_nijenhuis_assoc(a, n)?;
    for (name, d) in construction.derivations() {
        check_square(a, d)?;
        if n.matmul(d) != d.matmul(n) {
            return Err(Error::CommutationViolated(name.into()));
        }
    }
    let alg = construction.build(a)?;
    Ok(is_nijenhuis(&alg, n)?.named("nijenhuis_on_construction"))
}
