//! Representations, semidirect products, cochains, the coboundary operator
//! and the Nijenhuis–Richardson bracket of n-ary cochains.

use std::collections::BTreeMap;

use crate::algebra::{FundamentalObject, NLieAlgebra};
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::report::{Report, Witness};
use crate::scalar::{Field, Scalar};
use crate::tuples::{combinations, one_based, sort_with_sign, without};

/// `ρ: ∧^{n−1} g → gl(V)`, stored on strictly increasing (n−1)-tuples.
#[derive(Clone, Debug, PartialEq)]
pub struct Representation {
    arity: usize,
    dim: usize,
    vdim: usize,
    field: Field,
    rho: BTreeMap<Vec<usize>, Matrix>,
}

impl Representation {
    /// The zero representation of an algebra of this shape on `V = F^vdim`.
    pub fn zero(alg: &NLieAlgebra, vdim: usize) -> Self {
        Self {
            arity: alg.arity(),
            dim: alg.dim(),
            vdim,
            field: alg.field(),
            rho: BTreeMap::new(),
        }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn entries(&self) -> impl Iterator<Item = (&Vec<usize>, &Matrix)> {
        self.rho.iter()
    }

    /// Sets `ρ(e_{t_1}, …, e_{t_{n−1}})` for distinct 0-based indices in any order.
    pub fn set(&mut self, tuple: &[usize], matrix: Matrix) -> Result<()> {
        if tuple.len() + 1 != self.arity {
            return Err(Error::ArityMismatch {
                expected: self.arity - 1,
                found: tuple.len(),
            });
        }
        if let Some(&bad) = tuple.iter().find(|&&i| i >= self.dim) {
            return Err(Error::IndexOutOfRange {
                index: bad + 1,
                max: self.dim,
            });
        }
        if matrix.rows() != self.vdim || matrix.cols() != self.vdim {
            return Err(Error::ShapeMismatch {
                expected_rows: self.vdim,
                expected_cols: self.vdim,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        if matrix.field() != self.field {
            return Err(Error::FieldMismatch {
                expected: self.field.to_string(),
                found: matrix.field().to_string(),
            });
        }
        let (key, sign) = sort_with_sign(tuple).ok_or_else(|| Error::InvalidTuple {
            tuple: one_based(tuple),
            reason: "repeated index".into(),
        })?;
        let m = if sign < 0 {
            matrix.scale(&Scalar::from_i64(self.field, -1))
        } else {
            matrix
        };
        if m.is_zero() {
            self.rho.remove(&key);
        } else {
            self.rho.insert(key, m);
        }
        Ok(())
    }

    fn zero_matrix(&self) -> Matrix {
        Matrix::zeros(self.field, self.vdim, self.vdim)
    }

    /// `ρ` on basis vectors given by 0-based indices in any order.
    pub fn basis(&self, indices: &[usize]) -> Matrix {
        let Some((key, sign)) = sort_with_sign(indices) else {
            return self.zero_matrix();
        };
        match self.rho.get(&key) {
            None => self.zero_matrix(),
            Some(m) if sign > 0 => m.clone(),
            Some(m) => m.scale(&Scalar::from_i64(self.field, -1)),
        }
    }

    /// `ρ(e_{indices}) v` without materializing sign-flipped matrices.
    pub fn apply_basis(&self, indices: &[usize], v: &Vector) -> Vector {
        let Some((key, sign)) = sort_with_sign(indices) else {
            return Vector::zeros(self.field, self.vdim);
        };
        match self.rho.get(&key) {
            None => Vector::zeros(self.field, self.vdim),
            Some(m) if sign > 0 => m.apply(v),
            Some(m) => -&m.apply(v),
        }
    }

    /// `ρ` on a fundamental object, extended linearly.
    pub fn of_fundamental(&self, x: &FundamentalObject) -> Matrix {
        let mut out = self.zero_matrix();
        for (key, c) in x.terms() {
            if let Some(m) = self.rho.get(key) {
                out = &out + &m.scale(c);
            }
        }
        out
    }

    /// `ρ(x_1, …, x_{n−1})` for arbitrary vectors.
    pub fn of_vectors(&self, xs: &[Vector]) -> Matrix {
        self.of_fundamental(&FundamentalObject::from_vectors(xs))
    }

    fn check_shape(&self, alg: &NLieAlgebra) -> Result<()> {
        if self.arity != alg.arity() {
            return Err(Error::ArityMismatch {
                expected: alg.arity(),
                found: self.arity,
            });
        }
        Error::check_dim(alg.dim(), self.dim)?;
        if self.field != alg.field() {
            return Err(Error::FieldMismatch {
                expected: alg.field().to_string(),
                found: self.field.to_string(),
            });
        }
        Ok(())
    }
}

/// `ρ(X) = ad_X` on `V = g`.
pub fn adjoint_rep(alg: &NLieAlgebra) -> Representation {
    let mut rep = Representation::zero(alg, alg.dim());
    for key in alg.fundamental_basis() {
        let images: Vec<Vector> = (0..alg.dim())
            .map(|m| {
                let mut idx = key.clone();
                idx.push(m);
                alg.basis_bracket(&idx)
            })
            .collect();
        let m = Matrix::from_images(alg.field(), &images).expect("square images");
        if !m.is_zero() {
            rep.rho.insert(key, m);
        }
    }
    rep
}

/// Both representation axioms on basis tuples, without first requiring the
/// Filippov identity of `alg`:
/// `[ρ(X), ρ(Y)] = ρ(X∘Y)` and
/// `ρ(x_1..x_{n−2}, [y_1..y_n]) = Σ_i (−1)^{n−i} ρ(y_1..ŷ_i..y_n) ρ(x_1..x_{n−2}, y_i)`.
pub fn check_representation_axioms(alg: &NLieAlgebra, rep: &Representation) -> Result<Report> {
    rep.check_shape(alg)?;
    let mut report = Report::new("representation");
    let n = alg.arity();
    let field = alg.field();
    let basis = alg.fundamental_basis();
    for x in &basis {
        let fx = FundamentalObject::basis(x, field);
        let rx = rep.basis(x);
        for y in &basis {
            let lhs = rx.commutator(&rep.basis(y));
            let rhs = rep.of_fundamental(&alg.circle_product(&fx, &FundamentalObject::basis(y, field)));
            let at: Vec<usize> = x.iter().chain(y).copied().collect();
            if !report.compare_matrices(&at, &lhs, &rhs, "[ρ(X),ρ(Y)] vs ρ(X∘Y)") {
                return Ok(report);
            }
        }
    }
    for x in combinations(alg.dim(), n - 2) {
        for y in combinations(alg.dim(), n) {
            let inner = alg.basis_bracket(&y);
            let mut lhs = rep.zero_matrix();
            let mut idx = x.clone();
            idx.push(0);
            for (m, c) in inner.support() {
                idx[n - 2] = m;
                lhs = &lhs + &rep.basis(&idx).scale(c);
            }
            let mut rhs = rep.zero_matrix();
            for i in 0..n {
                let mut xi = x.clone();
                xi.push(y[i]);
                let term = rep.basis(&without(&y, i)).matmul(&rep.basis(&xi));
                // 1-based exponent n − (i+1)
                if (n - i - 1).is_multiple_of(2) {
                    rhs = &rhs + &term;
                } else {
                    rhs = &rhs - &term;
                }
            }
            let at: Vec<usize> = x.iter().chain(&y).copied().collect();
            if !report.compare_matrices(&at, &lhs, &rhs, "ρ(x,[y]) vs Σ (−1)^{n−i} ρ(ŷ_i)ρ(x,y_i)") {
                return Ok(report);
            }
        }
    }
    Ok(report)
}

/// Representation check; the algebra must satisfy the Filippov identity.
pub fn check_representation(alg: &NLieAlgebra, rep: &Representation) -> Result<Report> {
    alg.require_filippov()?;
    check_representation_axioms(alg, rep)
}

fn require_representation(alg: &NLieAlgebra, rep: &Representation) -> Result<()> {
    let r = check_representation(alg, rep)?;
    match r.witness {
        Some(w) if !r.ok => Err(Error::InvalidRepresentation(Box::new(w))),
        _ => Ok(()),
    }
}

/// `g ⋉ V` on `g ⊕ V`: g-tuples keep their bracket, `[x_1..x_{n−1}, v] = ρ(x)v`,
/// and any bracket with two or more V-entries vanishes.
pub fn semidirect_product(alg: &NLieAlgebra, rep: &Representation) -> Result<NLieAlgebra> {
    require_representation(alg, rep)?;
    Ok(semidirect_unchecked(alg, rep))
}

fn semidirect_unchecked(alg: &NLieAlgebra, rep: &Representation) -> NLieAlgebra {
    let d = alg.dim();
    let total = d + rep.vdim();
    let n = alg.arity();
    NLieAlgebra::from_fn(n, total, alg.field(), |key| {
        let v_count = key.iter().filter(|&&k| k >= d).count();
        match v_count {
            0 => Vector::zeros(alg.field(), rep.vdim()).concat_front(&alg.basis_bracket(key)),
            1 => {
                // sorted keys put the V-index last
                let v = Vector::basis(alg.field(), rep.vdim(), key[n - 1] - d);
                let image = rep.apply_basis(&key[..n - 1], &v);
                Vector::zeros(alg.field(), d).concat(&image)
            }
            _ => Vector::zeros(alg.field(), total),
        }
    })
    .expect("arity already validated")
}

impl Vector {
    /// `front ⊕ self`.
    fn concat_front(&self, front: &Vector) -> Vector {
        front.concat(self)
    }
}

/// A `p`-cochain: `p−1` fundamental-object slots plus one vector slot, with
/// values in `V`. Keys store each slot as a strictly increasing tuple.
#[derive(Clone, Debug, PartialEq)]
pub struct Cochain {
    arity: usize,
    dim: usize,
    vdim: usize,
    field: Field,
    degree: usize,
    values: BTreeMap<(Vec<Vec<usize>>, usize), Vector>,
}

impl Cochain {
    pub fn zero(alg: &NLieAlgebra, vdim: usize, degree: usize) -> Result<Self> {
        if degree == 0 {
            return Err(Error::DegreeMismatch { expected: 1, found: 0 });
        }
        Ok(Self {
            arity: alg.arity(),
            dim: alg.dim(),
            vdim,
            field: alg.field(),
            degree,
            values: BTreeMap::new(),
        })
    }

    /// An n-ary map `g^n → g` viewed as the degree-2 cochain `(X, z) ↦ ω(x_1..x_{n−1}, z)`.
    pub fn from_bracket(bracket: &NLieAlgebra) -> Self {
        let mut c = Self::zero(bracket, bracket.dim(), 2).expect("degree 2");
        for key in bracket.fundamental_basis() {
            for z in 0..bracket.dim() {
                let mut idx = key.clone();
                idx.push(z);
                let v = bracket.basis_bracket(&idx);
                if !v.is_zero() {
                    c.values.insert((vec![key.clone()], z), v);
                }
            }
        }
        c
    }

    /// A linear map `g → V` as a 1-cochain (`map` has `vdim` rows, `dim` columns).
    pub fn from_linear_map(alg: &NLieAlgebra, map: &Matrix) -> Result<Self> {
        if map.cols() != alg.dim() {
            return Err(Error::dim(alg.dim(), map.cols()));
        }
        let mut c = Self::zero(alg, map.rows(), 1)?;
        for z in 0..alg.dim() {
            let v = map.column(z);
            if !v.is_zero() {
                c.values.insert((Vec::new(), z), v);
            }
        }
        Ok(c)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn vdim(&self) -> usize {
        self.vdim
    }

    pub fn is_zero(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> impl Iterator<Item = (&(Vec<Vec<usize>>, usize), &Vector)> {
        self.values.iter()
    }

    /// Sets the value on basis slots (any order inside each slot) and `z`.
    pub fn set(&mut self, slots: &[Vec<usize>], z: usize, value: Vector) -> Result<()> {
        if slots.len() + 1 != self.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: slots.len() + 1,
            });
        }
        Error::check_dim(self.vdim, value.dim())?;
        if z >= self.dim {
            return Err(Error::IndexOutOfRange {
                index: z + 1,
                max: self.dim,
            });
        }
        let mut sign = 1i8;
        let mut keys = Vec::with_capacity(slots.len());
        for s in slots {
            if s.len() + 1 != self.arity {
                return Err(Error::ArityMismatch {
                    expected: self.arity - 1,
                    found: s.len(),
                });
            }
            if let Some(&bad) = s.iter().find(|&&i| i >= self.dim) {
                return Err(Error::IndexOutOfRange {
                    index: bad + 1,
                    max: self.dim,
                });
            }
            let (k, sg) = sort_with_sign(s).ok_or_else(|| Error::InvalidTuple {
                tuple: one_based(s),
                reason: "repeated index".into(),
            })?;
            sign *= sg;
            keys.push(k);
        }
        let v = if sign < 0 { -&value } else { value };
        if v.is_zero() {
            self.values.remove(&(keys, z));
        } else {
            self.values.insert((keys, z), v);
        }
        Ok(())
    }

    /// Value on basis slots; slot order inside each tuple may be arbitrary.
    pub fn basis_value(&self, slots: &[&[usize]], z: usize) -> Vector {
        let mut sign = 1i8;
        let mut keys = Vec::with_capacity(slots.len());
        for s in slots {
            let Some((k, sg)) = sort_with_sign(s) else {
                return Vector::zeros(self.field, self.vdim);
            };
            sign *= sg;
            keys.push(k);
        }
        match self.values.get(&(keys, z)) {
            None => Vector::zeros(self.field, self.vdim),
            Some(v) if sign > 0 => v.clone(),
            Some(v) => -v,
        }
    }

    /// Multilinear evaluation on fundamental objects and a vector.
    pub fn eval(&self, slots: &[&FundamentalObject], z: &Vector) -> Vector {
        let mut out = Vector::zeros(self.field, self.vdim);
        if self.values.is_empty() || z.is_zero() || slots.iter().any(|s| s.is_zero()) {
            return out;
        }
        let mut chosen: Vec<&[usize]> = Vec::with_capacity(slots.len());
        self.eval_rec(slots, z, &mut chosen, Scalar::one(self.field), &mut out);
        out
    }

    fn eval_rec<'a>(
        &self,
        slots: &[&'a FundamentalObject],
        z: &Vector,
        chosen: &mut Vec<&'a [usize]>,
        coeff: Scalar,
        out: &mut Vector,
    ) {
        let depth = chosen.len();
        if depth == slots.len() {
            for (m, c) in z.support() {
                let keys: Vec<Vec<usize>> = chosen.iter().map(|k| k.to_vec()).collect();
                if let Some(v) = self.values.get(&(keys, m)) {
                    out.add_scaled(&(&coeff * c), v);
                }
            }
            return;
        }
        for (key, c) in slots[depth].terms() {
            chosen.push(key);
            self.eval_rec(slots, z, chosen, &coeff * c, out);
            chosen.pop();
        }
    }

    /// Every basis argument `(X_1..X_{p−1}, z)` of a cochain of this shape.
    fn arguments(dim: usize, arity: usize, degree: usize) -> Vec<(Vec<Vec<usize>>, usize)> {
        let basis = combinations(dim, arity - 1);
        let mut prefixes: Vec<Vec<Vec<usize>>> = vec![Vec::new()];
        for _ in 1..degree {
            prefixes = prefixes
                .into_iter()
                .flat_map(|p| {
                    basis.iter().map(move |b| {
                        let mut q = p.clone();
                        q.push(b.clone());
                        q
                    })
                })
                .collect();
        }
        prefixes
            .into_iter()
            .flat_map(|p| (0..dim).map(move |z| (p.clone(), z)))
            .collect()
    }

    /// One cochain per basis argument and target coordinate.
    pub fn basis_cochains(alg: &NLieAlgebra, vdim: usize, degree: usize) -> Result<Vec<Cochain>> {
        let zero = Self::zero(alg, vdim, degree)?;
        let mut out = Vec::new();
        for arg in Self::arguments(alg.dim(), alg.arity(), degree) {
            for j in 0..vdim {
                let mut c = zero.clone();
                c.values.insert(arg.clone(), Vector::basis(alg.field(), vdim, j));
                out.push(c);
            }
        }
        Ok(out)
    }

    pub fn scale(&self, s: &Scalar) -> Cochain {
        let mut out = self.clone();
        out.values = self
            .values
            .iter()
            .map(|(k, v)| (k.clone(), v.scale(s)))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        out
    }

    pub fn add(&self, other: &Cochain) -> Result<Cochain> {
        if self.degree != other.degree {
            return Err(Error::DegreeMismatch {
                expected: self.degree,
                found: other.degree,
            });
        }
        Error::check_dim(self.vdim, other.vdim)?;
        let mut out = self.clone();
        for (k, v) in &other.values {
            let entry = out
                .values
                .entry(k.clone())
                .or_insert_with(|| Vector::zeros(self.field, self.vdim));
            entry.add_assign(v);
            if entry.is_zero() {
                out.values.remove(k);
            }
        }
        Ok(out)
    }

    /// The first nonzero value, used as a witness for "should vanish" checks.
    pub fn first_nonzero(&self) -> Option<(Vec<usize>, &Vector)> {
        self.values.iter().next().map(|((slots, z), v)| {
            let mut at: Vec<usize> = slots.iter().flatten().copied().collect();
            at.push(*z);
            (at, v)
        })
    }
}

/// Basis-level data reused by every coboundary of one `(alg, rep)` pair:
/// circle products of basis fundamental objects and `ad_X e_z`.
struct Tables {
    basis: Vec<Vec<usize>>,
    objects: Vec<FundamentalObject>,
    circle: Vec<Vec<FundamentalObject>>,
    ad: Vec<Vec<Vector>>,
}

impl Tables {
    fn new(alg: &NLieAlgebra) -> Self {
        let field = alg.field();
        let basis = alg.fundamental_basis();
        let objects: Vec<FundamentalObject> = basis.iter().map(|x| FundamentalObject::basis(x, field)).collect();
        let circle = objects
            .iter()
            .map(|x| objects.iter().map(|y| alg.circle_product(x, y)).collect())
            .collect();
        let ad = basis
            .iter()
            .map(|x| {
                (0..alg.dim())
                    .map(|z| alg.ad_basis(x, &Vector::basis(field, alg.dim(), z)))
                    .collect()
            })
            .collect();
        Self {
            basis,
            objects,
            circle,
            ad,
        }
    }

    fn index(&self, tuple: &[usize]) -> usize {
        self.basis
            .binary_search_by(|b| b.as_slice().cmp(tuple))
            .expect("basis tuple")
    }
}

/// The coboundary `δ: C^p → C^{p+1}`, computed term by term from
/// `δα(X_1..X_p, z) = Σ_{i<k} (−1)^i α(..X̂_i.., X_i∘X_k, .., z)
///                  + Σ_i (−1)^i α(..X̂_i.., X_i∘z)
///                  + Σ_i (−1)^{i+1} ρ(X_i) α(..X̂_i.., z)
///                  + Σ_{i=1}^{n−1} (−1)^{n+p−i+1} ρ(x_p^1..x̂_p^i..x_p^{n−1}, z) α(X_1..X_{p−1}, x_p^i)`
/// with 1-based `i` and `X_p = (x_p^1..x_p^{n−1})`.
pub fn coboundary(alg: &NLieAlgebra, rep: &Representation, c: &Cochain) -> Result<Cochain> {
    check_cochain_shape(alg, rep, c)?;
    Ok(coboundary_with(alg, rep, &Tables::new(alg), c))
}

fn check_cochain_shape(alg: &NLieAlgebra, rep: &Representation, c: &Cochain) -> Result<()> {
    rep.check_shape(alg)?;
    if c.arity != alg.arity() {
        return Err(Error::ArityMismatch {
            expected: alg.arity(),
            found: c.arity,
        });
    }
    Error::check_dim(alg.dim(), c.dim)?;
    Error::check_dim(rep.vdim(), c.vdim)
}

fn coboundary_with(alg: &NLieAlgebra, rep: &Representation, tables: &Tables, c: &Cochain) -> Cochain {
    let mut out = Cochain {
        degree: c.degree + 1,
        values: BTreeMap::new(),
        ..c.clone()
    };
    if c.is_zero() {
        return out;
    }
    let field = alg.field();
    let n = alg.arity();
    let p = c.degree;
    for (xs, z) in Cochain::arguments(alg.dim(), n, p + 1) {
        let ids: Vec<usize> = xs.iter().map(|x| tables.index(x)).collect();
        let fos: Vec<&FundamentalObject> = ids.iter().map(|&i| &tables.objects[i]).collect();
        let ez = Vector::basis(field, alg.dim(), z);
        let mut value = Vector::zeros(field, c.vdim);
        for i in 0..p {
            let odd = (i + 1) % 2 == 1;
            let rest: Vec<&FundamentalObject> = (0..p).filter(|&j| j != i).map(|j| fos[j]).collect();
            for k in i + 1..p {
                let prod = &tables.circle[ids[i]][ids[k]];
                if prod.is_zero() {
                    continue;
                }
                let slots: Vec<&FundamentalObject> = (0..p)
                    .filter(|&j| j != i)
                    .map(|j| if j == k { prod } else { fos[j] })
                    .collect();
                let t = c.eval(&slots, &ez);
                if odd {
                    value.sub_assign(&t);
                } else {
                    value.add_assign(&t);
                }
            }
            let t2 = c.eval(&rest, &tables.ad[ids[i]][z]);
            let inner = c.eval(&rest, &ez);
            let t3 = if inner.is_zero() {
                inner
            } else {
                rep.apply_basis(&xs[i], &inner)
            };
            if odd {
                value.sub_assign(&t2);
                value.add_assign(&t3);
            } else {
                value.add_assign(&t2);
                value.sub_assign(&t3);
            }
        }
        let last = &xs[p - 1];
        let head: Vec<&[usize]> = xs[..p - 1].iter().map(Vec::as_slice).collect();
        for i in 0..n - 1 {
            let inner = c.basis_value(&head, last[i]);
            if inner.is_zero() {
                continue;
            }
            let mut idx = without(last, i);
            idx.push(z);
            let t = rep.apply_basis(&idx, &inner);
            // 1-based exponent n + p − (i+1) + 1
            if (n + p - i).is_multiple_of(2) {
                value.add_assign(&t);
            } else {
                value.sub_assign(&t);
            }
        }
        if !value.is_zero() {
            out.values.insert((xs, z), value);
        }
    }
    out
}

/// `δ(δc) = 0` for every basis cochain of degree `p ∈ {1, 2}`.
pub fn check_d_squared(alg: &NLieAlgebra, rep: &Representation, p: usize) -> Result<Report> {
    if !(1..=2).contains(&p) {
        return Err(Error::DegreeMismatch { expected: 2, found: p });
    }
    require_representation(alg, rep)?;
    let tables = Tables::new(alg);
    let mut report = Report::new(format!("d_squared_p{p}"));
    for c in Cochain::basis_cochains(alg, rep.vdim(), p)? {
        let dd = coboundary_with(alg, rep, &tables, &coboundary_with(alg, rep, &tables, &c));
        report.cases += 1;
        if let Some((at, v)) = dd.first_nonzero() {
            let (src, _) = c.first_nonzero().expect("basis cochain is nonzero");
            report.fail(Witness::new(
                one_based(&at),
                v.coords().to_vec(),
                vec![Scalar::zero(alg.field()); v.dim()],
                format!("δδ of the basis cochain supported at {:?}", one_based(&src)),
            ));
            break;
        }
    }
    Ok(report)
}

/// `a(X, ·)∘Y = Σ_k y_1 ∧ .. ∧ a(X, y_k) ∧ .. ∧ y_{n−1}` for basis `Y`.
fn partial_circle(a: &Cochain, x: &FundamentalObject, y: &[usize]) -> FundamentalObject {
    let mut out = FundamentalObject::new();
    for (k, &yk) in y.iter().enumerate() {
        let v = a.eval(&[x], &Vector::basis(a.field, a.dim, yk));
        out.add_replaced(y, k, &v);
    }
    out
}

/// Nijenhuis–Richardson bracket of two n-ary cochains (degree 2, values in g):
/// `[a,b](X,Y,z) = a(X,b(Y,z)) − a(Y,b(X,z)) + b(X,a(Y,z)) − b(Y,a(X,z))
///               − a(b(X,·)∘Y, z) − b(a(X,·)∘Y, z)`.
pub fn nr_bracket(a: &Cochain, b: &Cochain) -> Result<Cochain> {
    for c in [a, b] {
        if c.degree != 2 {
            return Err(Error::DegreeMismatch {
                expected: 2,
                found: c.degree,
            });
        }
        Error::check_dim(c.dim, c.vdim)?;
    }
    Error::check_dim(a.dim, b.dim)?;
    if a.arity != b.arity {
        return Err(Error::ArityMismatch {
            expected: a.arity,
            found: b.arity,
        });
    }
    let mut out = Cochain {
        degree: 3,
        values: BTreeMap::new(),
        ..a.clone()
    };
    if a.is_zero() || b.is_zero() {
        return Ok(out);
    }
    let field = a.field;
    for (xs, z) in Cochain::arguments(a.dim, a.arity, 3) {
        let x = FundamentalObject::basis(&xs[0], field);
        let y = FundamentalObject::basis(&xs[1], field);
        let ez = Vector::basis(field, a.dim, z);
        let mut value = a.eval(&[&x], &b.eval(&[&y], &ez));
        value.sub_assign(&a.eval(&[&y], &b.eval(&[&x], &ez)));
        value.add_assign(&b.eval(&[&x], &a.eval(&[&y], &ez)));
        value.sub_assign(&b.eval(&[&y], &a.eval(&[&x], &ez)));
        value.sub_assign(&a.eval(&[&partial_circle(b, &x, &xs[1])], &ez));
        value.sub_assign(&b.eval(&[&partial_circle(a, &x, &xs[1])], &ez));
        if !value.is_zero() {
            out.values.insert((xs, z), value);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn adjoint_values() {
        let g = dim3_nonabelian();
        let ad = adjoint_rep(&g);
        // [e2,e3,e1] is a cyclic shift of [e1,e2,e3]
        assert_eq!(ad.apply_basis(&[1, 2], &e(3, 1)), e(3, 1));
        assert!(ad.apply_basis(&[1, 2], &e(3, 2)).is_zero());
        assert_eq!(ad.apply_basis(&[0, 1], &e(3, 3)), e(3, 1));
        assert_eq!(adjoint_rep(&dim4_simple()).apply_basis(&[1, 2], &e(4, 4)), e(4, 1));
        assert_eq!(
            adjoint_rep(&NLieAlgebra::abelian(3, 4, Q).unwrap()).entries().count(),
            0
        );
    }

    #[test]
    fn representation_checks() {
        let g = dim3_nonabelian();
        assert!(check_representation(&g, &adjoint_rep(&g)).unwrap().ok);
        assert!(check_representation(&g, &Representation::zero(&g, 2)).unwrap().ok);
        let bad = dim4_simple().with_bracket(&[1, 2, 3], e(4, 1)).unwrap();
        let axioms = check_representation_axioms(&bad, &adjoint_rep(&bad)).unwrap();
        assert!(!axioms.ok);
        assert!(axioms.witness.is_some());
        assert!(matches!(
            check_representation(&bad, &adjoint_rep(&bad)),
            Err(Error::NotAnNLieAlgebra(_))
        ));
    }

    #[test]
    fn semidirect_examples() {
        let g = dim3_nonabelian();
        let s = semidirect_product(&g, &adjoint_rep(&g)).unwrap();
        assert_eq!(s.dim(), 6);
        // [e1, e2, v3] = ρ(e1,e2) e3 = v1
        assert_eq!(s.basis_bracket(&[0, 1, 5]), e(6, 4));
        assert!(s.basis_bracket(&[0, 3, 4]).is_zero());
        assert!(s.check_filippov().ok);
        let direct = semidirect_product(&g, &Representation::zero(&g, 2)).unwrap();
        assert!(direct.constants().all(|(k, _)| k.iter().all(|&i| i < 3)));
    }

    #[test]
    fn derivation_cocycles() {
        // δα = 0 for α a derivation, nonzero for the identity on dim3_nonabelian
        let g = dim3_nonabelian();
        let ad = adjoint_rep(&g);
        let id = Cochain::from_linear_map(&g, &Matrix::identity(Q, 3)).unwrap();
        let d = coboundary(&g, &ad, &id).unwrap();
        // (X=(e1,e2), z=e3): −α([e1,e2,e3]) + [e1,e2,α e3] + [α e1,e2,e3] + [e1,α e2,e3] = 2e1
        assert_eq!(d.basis_value(&[&[0, 1]], 2), e(3, 1).scale(&Scalar::from_i64(Q, 2)));
        for der in g.derivation_space() {
            let c = Cochain::from_linear_map(&g, &der).unwrap();
            assert!(coboundary(&g, &ad, &c).unwrap().is_zero());
        }
        let zero = Cochain::zero(&g, 3, 2).unwrap();
        assert!(coboundary(&g, &ad, &zero).unwrap().is_zero());
    }

    #[test]
    fn nr_bracket_of_bracket_vanishes() {
        for g in [dim3_nonabelian(), dim4_simple()] {
            let c = Cochain::from_bracket(&g);
            assert!(nr_bracket(&c, &c).unwrap().is_zero());
            let zero = Cochain::zero(&g, g.dim(), 2).unwrap();
            assert!(nr_bracket(&zero, &c).unwrap().is_zero());
        }
        let bad = dim4_simple().with_bracket(&[1, 2, 3], e(4, 1)).unwrap();
        let c = Cochain::from_bracket(&bad);
        assert!(!nr_bracket(&c, &c).unwrap().is_zero());
    }

    #[test]
    fn d_squared_small() {
        let g = dim3_nonabelian();
        assert!(check_d_squared(&g, &adjoint_rep(&g), 1).unwrap().ok);
        assert!(check_d_squared(&g, &Representation::zero(&g, 2), 2).unwrap().ok);
    }
}
