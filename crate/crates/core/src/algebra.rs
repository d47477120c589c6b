//! n-Lie algebras given by structure constants on strictly increasing basis
//! tuples, together with the calculus of fundamental objects (elements of
//! `∧^{n−1} g`) and derivations.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{determinant, nullspace, Matrix, Vector};
use crate::report::{Report, Witness};
use crate::scalar::{Field, Scalar};
use crate::tuples::{combinations, is_strictly_increasing, one_based, sort_with_sign};

/// An `n`-ary totally antisymmetric bracket on a `d`-dimensional space.
///
/// Keys of `constants` are strictly increasing 0-based tuples; absent keys
/// are zero brackets. The Filippov identity is not an invariant of the type.
#[derive(Clone, Debug, PartialEq)]
pub struct NLieAlgebra {
    arity: usize,
    dim: usize,
    field: Field,
    constants: BTreeMap<Vec<usize>, Vector>,
}

/// An `n`-ary bracket that has not (yet) been checked against the Filippov
/// identity. Same storage as [`NLieAlgebra`].
pub type BracketCandidate = NLieAlgebra;

impl NLieAlgebra {
    pub fn new(arity: usize, dim: usize, field: Field) -> Result<Self> {
        if arity < 2 {
            return Err(Error::InvalidParam {
                param: "arity".into(),
                reason: format!("arity must be at least 2, got {arity}"),
            });
        }
        Ok(Self {
            arity,
            dim,
            field,
            constants: BTreeMap::new(),
        })
    }

    pub fn abelian(arity: usize, dim: usize, field: Field) -> Result<Self> {
        Self::new(arity, dim, field)
    }

    /// Builds a bracket by evaluating `value` on every strictly increasing tuple.
    pub fn from_fn(arity: usize, dim: usize, field: Field, mut value: impl FnMut(&[usize]) -> Vector) -> Result<Self> {
        let mut alg = Self::new(arity, dim, field)?;
        for key in combinations(dim, arity) {
            let v = value(&key);
            if !v.is_zero() {
                alg.constants.insert(key, v);
            }
        }
        Ok(alg)
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn constants(&self) -> impl Iterator<Item = (&Vec<usize>, &Vector)> {
        self.constants.iter()
    }

    pub fn constant(&self, key: &[usize]) -> Option<&Vector> {
        self.constants.get(key)
    }

    pub fn is_abelian(&self) -> bool {
        self.constants.is_empty()
    }

    /// Sets `[e_{t_1}, …, e_{t_n}] = value` for distinct 0-based indices in
    /// any order; the stored constant is normalized by the sorting sign.
    pub fn set_bracket(&mut self, tuple: &[usize], value: Vector) -> Result<()> {
        if tuple.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: tuple.len(),
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                max: self.dim,
            });
        }
        Error::check_dim(self.dim, value.dim())?;
        if value.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: value.field().to_string(),
            });
        }
        let (key, sign) = sort_with_sign(tuple).ok_or_else(|| Error::InvalidTuple {
            tuple: one_based(tuple),
            reason: "repeated index".into(),
        })?;
        let value = if sign < 0 { -&value } else { value };
        if value.is_zero() {
            self.constants.remove(&key);
        } else {
            self.constants.insert(key, value);
        }
        Ok(())
    }

    /// Builder form of [`set_bracket`](Self::set_bracket) taking 1-based indices.
    pub fn with_bracket(mut self, one_based_tuple: &[usize], value: Vector) -> Result<Self> {
        let tuple: Vec<usize> = one_based_tuple
            .iter()
            .map(|&i| {
                i.checked_sub(1).ok_or(Error::IndexOutOfRange {
                    index: 0,
                    max: self.dim,
                })
            })
            .collect::<Result<_>>()?;
        self.set_bracket(&tuple, value)?;
        Ok(self)
    }

    /// Bracket of basis vectors given by 0-based indices in any order.
    pub fn basis_bracket(&self, indices: &[usize]) -> Vector {
        let Some((key, sign)) = sort_with_sign(indices) else {
            return Vector::zeros(self.field, self.dim);
        };
        match self.constants.get(&key) {
            None => Vector::zeros(self.field, self.dim),
            Some(v) if sign > 0 => v.clone(),
            Some(v) => -v,
        }
    }

    /// `[x_1, …, x_n]` for arbitrary vectors.
    pub fn bracket(&self, args: &[Vector]) -> Result<Vector> {
        if args.len() != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity,
                found: args.len(),
            });
        }
        for a in args {
            Error::check_dim(self.dim, a.dim())?;
            a.coords().iter().try_for_each(|c| c.check_field(self.field))?;
        }
        let refs: Vec<&Vector> = args.iter().collect();
        Ok(self.bracket_refs(&refs))
    }

    /// Unchecked bracket. Expands multilinearly over the argument supports or
    /// sums `det(X_K)·c_K` over stored keys, whichever is cheaper.
    pub fn bracket_refs(&self, args: &[&Vector]) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim);
        if self.constants.is_empty() {
            return out;
        }
        let supports: Vec<Vec<(usize, &Scalar)>> = args.iter().map(|a| a.support().collect()).collect();
        if supports.iter().any(Vec::is_empty) {
            return out;
        }
        let expand_cost = supports.iter().fold(1usize, |acc, s| acc.saturating_mul(s.len()));
        let det_cost = self.constants.len().saturating_mul((1..=self.arity).product::<usize>());
        if expand_cost <= det_cost {
            let mut chosen = Vec::with_capacity(self.arity);
            self.expand(&supports, &mut chosen, Scalar::one(self.field), &mut out);
        } else {
            for (key, value) in &self.constants {
                let m: Vec<Vec<Scalar>> = args
                    .iter()
                    .map(|a| key.iter().map(|&k| a[k].clone()).collect())
                    .collect();
                let det = determinant(self.field, &m);
                out.add_scaled(&det, value);
            }
        }
        out
    }

    fn expand(&self, supports: &[Vec<(usize, &Scalar)>], chosen: &mut Vec<usize>, coeff: Scalar, out: &mut Vector) {
        let depth = chosen.len();
        if depth == supports.len() {
            if let Some((key, sign)) = sort_with_sign(chosen) {
                if let Some(v) = self.constants.get(&key) {
                    let c = if sign > 0 { coeff } else { -coeff };
                    out.add_scaled(&c, v);
                }
            }
            return;
        }
        for &(i, c) in &supports[depth] {
            if chosen.contains(&i) {
                continue;
            }
            chosen.push(i);
            self.expand(supports, chosen, &coeff * c, out);
            chosen.pop();
        }
    }

    /// Bracket of basis vectors `base` with position `slot` replaced by `v`.
    pub fn bracket_with_slot(&self, base: &[usize], slot: usize, v: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim);
        let mut idx = base.to_vec();
        for (m, c) in v.support() {
            idx[slot] = m;
            out.add_scaled(c, &self.basis_bracket(&idx));
        }
        out
    }

    /// `ad_X y = [x_1, …, x_{n−1}, y]`.
    pub fn ad_action(&self, x: &[Vector], y: &Vector) -> Result<Vector> {
        if x.len() + 1 != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity - 1,
                found: x.len(),
            });
        }
        let mut args = x.to_vec();
        args.push(y.clone());
        self.bracket(&args)
    }

    /// `ad_{e_K} z` for a basis (n−1)-tuple `key`.
    pub fn ad_basis(&self, key: &[usize], z: &Vector) -> Vector {
        let mut idx = key.to_vec();
        idx.push(0);
        self.bracket_with_slot(&idx, key.len(), z)
    }

    /// Action of a fundamental object on a vector, extended linearly.
    pub fn act(&self, x: &FundamentalObject, z: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.dim);
        for (key, c) in x.terms() {
            out.add_scaled(c, &self.ad_basis(key, z));
        }
        out
    }

    /// `X∘Y = Σ_i y_1 ∧ … ∧ ad_X y_i ∧ … ∧ y_{n−1}`, extended bilinearly.
    pub fn circle_product(&self, x: &FundamentalObject, y: &FundamentalObject) -> FundamentalObject {
        let mut out = FundamentalObject::new();
        for (key, d) in y.terms() {
            for slot in 0..key.len() {
                let v = self.act(x, &Vector::basis(self.field, self.dim, key[slot]));
                out.add_replaced(key, slot, &v.scale(d));
            }
        }
        out
    }

    /// Basis of `∧^{n−1} g` as strictly increasing tuples.
    pub fn fundamental_basis(&self) -> Vec<Vec<usize>> {
        combinations(self.dim, self.arity - 1)
    }

    /// Exhaustive check of the Filippov identity
    /// `[x, [y_1..y_n]] = Σ_i [y_1, .., [x, y_i], .., y_n]` on basis vectors.
    pub fn check_filippov(&self) -> Report {
        let mut report = Report::new("filippov");
        let n = self.arity;
        for x in combinations(self.dim, n - 1) {
            for y in combinations(self.dim, n) {
                let lhs = self.ad_basis(&x, &self.basis_bracket(&y));
                let mut rhs = Vector::zeros(self.field, self.dim);
                for i in 0..n {
                    let inner = self.ad_basis(&x, &Vector::basis(self.field, self.dim, y[i]));
                    rhs.add_assign(&self.bracket_with_slot(&y, i, &inner));
                }
                let at: Vec<usize> = x.iter().chain(&y).copied().collect();
                if !report.compare(&at, &lhs, &rhs, "[x,[y]] vs sum [..,[x,y_i],..]") {
                    return report;
                }
            }
        }
        report
    }

    /// Errors with the Filippov witness unless the identity holds.
    pub fn require_filippov(&self) -> Result<()> {
        let r = self.check_filippov();
        match r.witness {
            Some(w) if !r.ok => Err(Error::NotAnNLieAlgebra(Box::new(w))),
            _ => Ok(()),
        }
    }

    /// Leibniz identity `X∘(Y∘Z) = (X∘Y)∘Z + Y∘(X∘Z)` on basis fundamental objects.
    pub fn check_leibniz_fundamental(&self) -> Result<Report> {
        self.require_filippov()?;
        let mut report = Report::new("leibniz");
        let basis = self.fundamental_basis();
        let objects: Vec<FundamentalObject> = basis.iter().map(|k| FundamentalObject::basis(k, self.field)).collect();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                let xy = self.circle_product(x, y);
                for (k, z) in objects.iter().enumerate() {
                    let lhs = self.circle_product(x, &self.circle_product(y, z));
                    let mut rhs = self.circle_product(&xy, z);
                    rhs.add(&self.circle_product(y, &self.circle_product(x, z)));
                    report.cases += 1;
                    if lhs != rhs {
                        let at: Vec<usize> = [&basis[i], &basis[j], &basis[k]]
                            .iter()
                            .flat_map(|t| one_based(t))
                            .collect();
                        report.fail(Witness::new(
                            at,
                            lhs.coords(&basis, self.field),
                            rhs.coords(&basis, self.field),
                            "X∘(Y∘Z) vs (X∘Y)∘Z + Y∘(X∘Z)",
                        ));
                        return Ok(report);
                    }
                }
            }
        }
        Ok(report)
    }

    /// `X∘(Y∘z) − Y∘(X∘z) = (X∘Y)∘z` on basis `X, Y ∈ ∧^{n−1} g`, `z ∈ g`.
    pub fn check_fi3(&self) -> Report {
        let mut report = Report::new("fi3");
        let basis = self.fundamental_basis();
        let objects: Vec<FundamentalObject> = basis.iter().map(|k| FundamentalObject::basis(k, self.field)).collect();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                let xy = self.circle_product(x, y);
                for m in 0..self.dim {
                    let z = Vector::basis(self.field, self.dim, m);
                    let lhs = &self.act(x, &self.act(y, &z)) - &self.act(y, &self.act(x, &z));
                    let rhs = self.act(&xy, &z);
                    let at: Vec<usize> = basis[i].iter().chain(&basis[j]).chain([&m]).copied().collect();
                    if !report.compare(&at, &lhs, &rhs, "X∘(Y∘z) − Y∘(X∘z) vs (X∘Y)∘z") {
                        return report;
                    }
                }
            }
        }
        report
    }

    fn check_square(&self, map: &Matrix) -> Result<()> {
        if map.rows() != self.dim || map.cols() != self.dim {
            return Err(Error::ShapeMismatch {
                expected_rows: self.dim,
                expected_cols: self.dim,
                rows: map.rows(),
                cols: map.cols(),
            });
        }
        if map.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: map.field().to_string(),
            });
        }
        Ok(())
    }

    /// `D[x_1..x_n] = Σ_i [x_1, .., Dx_i, .., x_n]` on basis tuples.
    pub fn is_derivation(&self, d: &Matrix) -> Result<Report> {
        self.check_square(d)?;
        let mut report = Report::new("derivation");
        for key in combinations(self.dim, self.arity) {
            let lhs = d.apply(&self.basis_bracket(&key));
            let mut rhs = Vector::zeros(self.field, self.dim);
            for i in 0..self.arity {
                rhs.add_assign(&self.bracket_with_slot(&key, i, &d.column(key[i])));
            }
            if !report.compare(&key, &lhs, &rhs, "D[x] vs sum [..,Dx_i,..]") {
                break;
            }
        }
        Ok(report)
    }

    /// Basis of the derivation algebra, from the nullspace of the linear
    /// system in the `d²` matrix entries (unknown `D[r][c]` has index `r·d + c`).
    pub fn derivation_space(&self) -> Vec<Matrix> {
        let d = self.dim;
        let mut rows = Vec::new();
        for key in combinations(d, self.arity) {
            let value = self.basis_bracket(&key);
            let mut replaced = Vec::with_capacity(self.arity);
            for i in 0..self.arity {
                let mut idx = key.clone();
                replaced.push(
                    (0..d)
                        .map(|r| {
                            idx[i] = r;
                            self.basis_bracket(&idx)
                        })
                        .collect::<Vec<_>>(),
                );
            }
            for m in 0..d {
                let mut row = vec![Scalar::zero(self.field); d * d];
                for r in 0..d {
                    row[m * d + r] += &value[r];
                }
                for (i, &ki) in key.iter().enumerate() {
                    for r in 0..d {
                        row[r * d + ki] -= &replaced[i][r][m];
                    }
                }
                if row.iter().any(|x| !x.is_zero()) {
                    rows.push(row);
                }
            }
        }
        nullspace(self.field, &rows, d * d)
            .into_iter()
            .map(|v| {
                let entries = v.chunks(d).map(<[Scalar]>::to_vec).collect();
                Matrix::from_rows(self.field, entries).expect("square chunks")
            })
            .map(|m| if d == 0 { Matrix::zeros(self.field, 0, 0) } else { m })
            .collect()
    }
}

/// `F[x_1..x_n]_src = [Fx_1, .., Fx_n]_dst` on basis tuples of `src`.
pub fn is_homomorphism(f: &Matrix, src: &NLieAlgebra, dst: &NLieAlgebra) -> Result<Report> {
    if src.arity != dst.arity {
        return Err(Error::ArityMismatch {
            expected: src.arity,
            found: dst.arity,
        });
    }
    if f.rows() != dst.dim || f.cols() != src.dim {
        return Err(Error::ShapeMismatch {
            expected_rows: dst.dim,
            expected_cols: src.dim,
            rows: f.rows(),
            cols: f.cols(),
        });
    }
    let mut report = Report::new("homomorphism");
    let images: Vec<Vector> = (0..src.dim).map(|i| f.column(i)).collect();
    for key in combinations(src.dim, src.arity) {
        let lhs = f.apply(&src.basis_bracket(&key));
        let args: Vec<&Vector> = key.iter().map(|&k| &images[k]).collect();
        let rhs = dst.bracket_refs(&args);
        if !report.compare(&key, &lhs, &rhs, "F[x] vs [Fx]") {
            break;
        }
    }
    Ok(report)
}

/// A dual vector `f(e_i) = values[i]`.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearFunctional {
    field: Field,
    values: Vec<Scalar>,
}

impl LinearFunctional {
    pub fn new(field: Field, values: Vec<Scalar>) -> Result<Self> {
        for v in &values {
            v.check_field(field)?;
        }
        Ok(Self { field, values })
    }

    pub fn from_i64(field: Field, values: &[i64]) -> Self {
        Self {
            field,
            values: values.iter().map(|&v| Scalar::from_i64(field, v)).collect(),
        }
    }

    /// The coordinate functional `e_{index+1}^*`.
    pub fn coordinate(field: Field, dim: usize, index: usize) -> Self {
        let mut values = vec![Scalar::zero(field); dim];
        values[index] = Scalar::one(field);
        Self { field, values }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[Scalar] {
        &self.values
    }

    pub fn apply(&self, v: &Vector) -> Scalar {
        let mut acc = Scalar::zero(self.field);
        for (i, c) in v.support() {
            acc += &(c * &self.values[i]);
        }
        acc
    }
}

/// An element of `∧^{n−1} g`: strictly increasing tuples with nonzero coefficients.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct FundamentalObject {
    terms: BTreeMap<Vec<usize>, Scalar>,
}

impl FundamentalObject {
    pub fn new() -> Self {
        Self::default()
    }

    /// `e_{k_1} ∧ … ∧ e_{k_m}` for distinct indices in any order.
    pub fn basis(indices: &[usize], field: Field) -> Self {
        let mut out = Self::new();
        out.add_term(indices, &Scalar::one(field));
        out
    }

    /// `x_1 ∧ … ∧ x_m` expanded in the wedge basis.
    pub fn from_vectors(vectors: &[Vector]) -> Self {
        let mut out = Self::new();
        let Some(first) = vectors.first() else {
            return out;
        };
        let mut chosen = Vec::new();
        wedge_expand(vectors, &mut chosen, Scalar::one(first.field()), &mut out);
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<usize>, &Scalar)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, key: &[usize]) -> Option<&Scalar> {
        self.terms.get(key)
    }

    /// Adds `coeff · e_{indices}` after normalizing the wedge order.
    pub fn add_term(&mut self, indices: &[usize], coeff: &Scalar) {
        if coeff.is_zero() {
            return;
        }
        let Some((key, sign)) = sort_with_sign(indices) else {
            return;
        };
        let c = if sign > 0 { coeff.clone() } else { -coeff };
        match self.terms.get_mut(&key) {
            Some(existing) => {
                *existing += &c;
                if existing.is_zero() {
                    self.terms.remove(&key);
                }
            }
            None => {
                self.terms.insert(key, c);
            }
        }
    }

    /// Adds `e_{base with slot replaced by v}`, expanded over `v`'s support.
    pub fn add_replaced(&mut self, base: &[usize], slot: usize, v: &Vector) {
        let mut idx = base.to_vec();
        for (m, c) in v.support() {
            idx[slot] = m;
            self.add_term(&idx, c);
        }
    }

    pub fn add(&mut self, other: &FundamentalObject) {
        for (k, c) in &other.terms {
            self.add_term(k, c);
        }
    }

    pub fn sub(&mut self, other: &FundamentalObject) {
        for (k, c) in &other.terms {
            self.add_term(k, &-c);
        }
    }

    pub fn scale(&self, s: &Scalar) -> FundamentalObject {
        let mut out = Self::new();
        for (k, c) in &self.terms {
            out.add_term(k, &(c * s));
        }
        out
    }

    /// Coordinates in the given ordered wedge basis.
    pub fn coords(&self, basis: &[Vec<usize>], field: Field) -> Vec<Scalar> {
        basis
            .iter()
            .map(|k| self.terms.get(k).cloned().unwrap_or_else(|| Scalar::zero(field)))
            .collect()
    }
}

fn wedge_expand(vectors: &[Vector], chosen: &mut Vec<usize>, coeff: Scalar, out: &mut FundamentalObject) {
    let depth = chosen.len();
    if depth == vectors.len() {
        out.add_term(chosen, &coeff);
        return;
    }
    for (i, c) in vectors[depth].support() {
        if chosen.contains(&i) {
            continue;
        }
        chosen.push(i);
        wedge_expand(vectors, chosen, &coeff * c, out);
        chosen.pop();
    }
}

/// Checks a 1-based index tuple and converts it to 0-based.
pub fn zero_based_tuple(tuple: &[usize], dim: usize, require_increasing: bool) -> Result<Vec<usize>> {
    let mut out = Vec::with_capacity(tuple.len());
    for &i in tuple {
        if i == 0 || i > dim {
            return Err(Error::IndexOutOfRange { index: i, max: dim });
        }
        out.push(i - 1);
    }
    if require_increasing && !is_strictly_increasing(&out) {
        return Err(Error::InvalidTuple {
            tuple: tuple.to_vec(),
            reason: "indices must be strictly increasing".into(),
        });
    }
    Ok(out)
}
