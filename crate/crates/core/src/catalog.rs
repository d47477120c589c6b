//! Named algebras, operator families and associative algebras, plus the
//! seeded generators used to build test corpora.
//!
//! Operator families are written as printed layouts whose row `i` lists the
//! coordinates of `N e_i`; the stored matrix is the transpose (column-action).

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::NLieAlgebra;
use crate::constructions::CommAssocAlgebra;
use crate::error::{Error, Result};
use crate::linalg::{Matrix, Vector};
use crate::scalar::{parse_scalar, Field, Rational, Scalar};

pub type Params = BTreeMap<String, Scalar>;

#[derive(Clone, Debug, PartialEq)]
pub enum Builtin {
    Algebra(NLieAlgebra),
    Map(Matrix),
    CommAssoc(CommAssocAlgebra),
}

/// A catalog name with its parameter names in positional order and an
/// instantiation that `builtin` accepts.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Entry {
    pub name: &'static str,
    pub params: &'static [&'static str],
    pub example: &'static str,
    pub summary: &'static str,
}

const SIX: &[&str] = &["a", "b", "c", "d", "e", "f"];

const ENTRIES: &[Entry] = &[
    Entry {
        name: "abelian",
        params: &["n", "d"],
        example: "abelian(3,5)",
        summary: "n-ary bracket identically zero on a d-dimensional space",
    },
    Entry {
        name: "dim3_nonabelian",
        params: &[],
        example: "dim3_nonabelian",
        summary: "3-Lie algebra [e1,e2,e3] = e1",
    },
    Entry {
        name: "dim4_simple",
        params: &[],
        example: "dim4_simple",
        summary: "simple 4-dimensional 3-Lie algebra",
    },
    Entry {
        name: "dim4_nonsimple",
        params: &[],
        example: "dim4_nonsimple",
        summary: "dim4_simple without [e1,e2,e3] = e4",
    },
    Entry {
        name: "dim4_simple_der",
        params: SIX,
        example: "dim4_simple_der(1,2,3,4,5,6)",
        summary: "derivation of dim4_simple",
    },
    Entry {
        name: "dim4_nonsimple_der",
        params: &["h", "a", "b", "c", "d", "e", "f"],
        example: "dim4_nonsimple_der(1,2,3,4,5,6,7)",
        summary: "derivation of dim4_nonsimple",
    },
    Entry {
        name: "T1",
        params: SIX,
        example: "T1(1,2,3,4,5,6)",
        summary: "traceless part of the dim4_nonsimple derivations",
    },
    Entry {
        name: "T2",
        params: &["a", "b", "c", "d"],
        example: "T2(1,2,3,4)",
        summary: "scalar part of the dim4_nonsimple derivations",
    },
    Entry {
        name: "trunc_poly",
        params: &[],
        example: "trunc_poly(2,2)",
        summary: "F[t1..tk]/(t1^b1, .., tk^bk) from bounds b1, b2, ..",
    },
    Entry {
        name: "lie_ex1",
        params: &[],
        example: "lie_ex1",
        summary: "4-dimensional Lie algebra [e1,e2] = e1",
    },
];

pub fn list() -> &'static [Entry] {
    ENTRIES
}

fn entry(name: &str) -> Result<&'static Entry> {
    ENTRIES
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::UnknownName(name.into()))
}

/// `name`, `name(1,2,..)` or `name(a=1,d=1/2,..)`; positional values follow
/// the entry's parameter order (`b1, b2, ..` for `trunc_poly`), omitted
/// keyed values default to 0 only when at least one is given.
pub fn parse_call(text: &str) -> Result<(String, Params)> {
    let text = text.trim();
    let Some(open) = text.find('(') else {
        entry(text)?;
        return Ok((text.into(), Params::new()));
    };
    let name = text[..open].trim();
    let inner = text[open + 1..].strip_suffix(')').ok_or_else(|| Error::Parse {
        position: text.len(),
        message: "expected `)`".into(),
    })?;
    let e = entry(name)?;
    let mut params = Params::new();
    let mut keyed = false;
    let mut offset = open + 1;
    for (pos, item) in inner.split(',').enumerate() {
        let at = offset;
        offset += item.len() + 1;
        if item.trim().is_empty() && inner.trim().is_empty() {
            break;
        }
        let (key, value) = match item.split_once('=') {
            Some((k, v)) => {
                keyed = true;
                (k.trim().to_string(), v)
            }
            None if e.name == "trunc_poly" => (format!("b{}", pos + 1), item),
            None => match e.params.get(pos) {
                Some(k) => (k.to_string(), item),
                None => {
                    return Err(Error::Parse {
                        position: at,
                        message: format!("`{name}` takes {} parameters", e.params.len()),
                    })
                }
            },
        };
        let value = parse_scalar(value, Field::Gaussian).map_err(|err| match err {
            Error::Parse { position, message } => Error::Parse {
                position: at + position,
                message,
            },
            other => other,
        })?;
        params.insert(key, value.coerce(Field::Rational).unwrap_or(value));
    }
    if keyed {
        for p in e.params {
            params
                .entry(p.to_string())
                .or_insert_with(|| Scalar::zero(Field::Rational));
        }
    }
    Ok((name.into(), params))
}

/// ℚ unless some parameter is non-real.
fn params_field(params: &Params) -> Field {
    if params.values().any(|v| v.coerce(Field::Rational).is_err()) {
        Field::Gaussian
    } else {
        Field::Rational
    }
}

pub fn builtin(name: &str, params: &Params) -> Result<Builtin> {
    builtin_in(name, params, params_field(params))
}

/// As [`builtin`] with every scalar taken in `field`.
pub fn builtin_in(name: &str, params: &Params, field: Field) -> Result<Builtin> {
    let e = entry(name)?;
    let get = |p: &str| -> Result<Scalar> {
        params
            .get(p)
            .ok_or_else(|| Error::MissingParam {
                name: name.into(),
                param: p.into(),
            })?
            .coerce(field)
    };
    let size = |p: &str| -> Result<usize> {
        let v = get(p)?;
        let r = v.real_part();
        let bad = || Error::InvalidParam {
            param: p.into(),
            reason: format!("expected a positive integer, found {v}"),
        };
        if !r.is_integer() || v.imag_part().is_some_and(|im| *im != Rational::from_integer(0.into())) {
            return Err(bad());
        }
        usize::try_from(r.to_integer()).ok().filter(|&u| u >= 1).ok_or_else(bad)
    };
    let values = |names: &[&str]| -> Result<Vec<Scalar>> { names.iter().map(|p| get(p)).collect() };
    Ok(match e.name {
        "abelian" => {
            let n = size("n")?;
            if n < 2 {
                return Err(Error::InvalidParam {
                    param: "n".into(),
                    reason: "arity must be at least 2".into(),
                });
            }
            Builtin::Algebra(NLieAlgebra::abelian(n, size("d")?, field)?)
        }
        "dim3_nonabelian" => Builtin::Algebra(dim3_nonabelian(field)),
        "dim4_simple" => Builtin::Algebra(dim4_simple(field)),
        "dim4_nonsimple" => Builtin::Algebra(dim4_nonsimple(field)),
        "lie_ex1" => Builtin::Algebra(lie_ex1(field)),
        "dim4_simple_der" => Builtin::Map(dim4_simple_der(&values(SIX)?)),
        "dim4_nonsimple_der" => {
            let v = values(&["h", "a", "b", "c", "d", "e", "f"])?;
            Builtin::Map(dim4_nonsimple_der(&v[0], &v[1..]))
        }
        "T1" => Builtin::Map(dim4_nonsimple_der(&Scalar::zero(field), &values(SIX)?)),
        "T2" => Builtin::Map(t2(&values(&["a", "b", "c", "d"])?)),
        "trunc_poly" => {
            let mut bounds = Vec::new();
            while params.contains_key(&format!("b{}", bounds.len() + 1)) {
                bounds.push(size(&format!("b{}", bounds.len() + 1))?);
            }
            if bounds.is_empty() {
                return Err(Error::MissingParam {
                    name: name.into(),
                    param: "b1".into(),
                });
            }
            Builtin::CommAssoc(CommAssocAlgebra::trunc_poly(&bounds, field)?)
        }
        _ => unreachable!("every entry is handled"),
    })
}

fn e(field: Field, dim: usize, i: usize) -> Vector {
    Vector::basis(field, dim, i - 1)
}

fn with(alg: NLieAlgebra, relations: &[(&[usize], usize)]) -> NLieAlgebra {
    let (f, d) = (alg.field(), alg.dim());
    relations.iter().fold(alg, |acc, (on, to)| {
        acc.with_bracket(on, e(f, d, *to)).expect("valid relation")
    })
}

pub fn dim3_nonabelian(field: Field) -> NLieAlgebra {
    with(NLieAlgebra::new(3, 3, field).expect("arity 3"), &[(&[1, 2, 3], 1)])
}

pub fn dim4_nonsimple(field: Field) -> NLieAlgebra {
    with(
        NLieAlgebra::new(3, 4, field).expect("arity 3"),
        &[(&[2, 3, 4], 1), (&[1, 2, 4], 3), (&[1, 3, 4], 2)],
    )
}

pub fn dim4_simple(field: Field) -> NLieAlgebra {
    with(dim4_nonsimple(field), &[(&[1, 2, 3], 4)])
}

pub fn lie_ex1(field: Field) -> NLieAlgebra {
    with(NLieAlgebra::new(2, 4, field).expect("arity 2"), &[(&[1, 2], 1)])
}

/// Row `i` of `printed` holds the coordinates of `N e_i`.
fn from_printed(printed: Vec<Vec<Scalar>>) -> Matrix {
    let field = printed[0][0].field();
    Matrix::from_rows(field, printed).expect("square layout").transpose()
}

/// `v = [a, b, c, d, e, f]`.
pub fn dim4_simple_der(v: &[Scalar]) -> Matrix {
    let [a, b, c, d, e, f] = v else {
        panic!("six parameters")
    };
    let z = Scalar::zero(a.field());
    from_printed(vec![
        vec![z.clone(), a.clone(), b.clone(), c.clone()],
        vec![a.clone(), z.clone(), d.clone(), e.clone()],
        vec![-b, d.clone(), z.clone(), f.clone()],
        vec![c.clone(), -e, f.clone(), z],
    ])
}

/// `v = [a, b, c, d, e, f]`; `h = 0` gives the `T1` family.
pub fn dim4_nonsimple_der(h: &Scalar, v: &[Scalar]) -> Matrix {
    let [a, b, c, d, e, f] = v else {
        panic!("six parameters")
    };
    let z = Scalar::zero(a.field());
    from_printed(vec![
        vec![h.clone(), a.clone(), b.clone(), z.clone()],
        vec![a.clone(), h.clone(), c.clone(), z.clone()],
        vec![-b, c.clone(), h.clone(), z],
        vec![d.clone(), e.clone(), f.clone(), -h],
    ])
}

/// `v = [a, b, c, d]`.
pub fn t2(v: &[Scalar]) -> Matrix {
    let [a, b, c, d] = v else { panic!("four parameters") };
    let z = Scalar::zero(a.field());
    from_printed(vec![
        vec![a.clone(), z.clone(), z.clone(), z.clone()],
        vec![z.clone(), a.clone(), z.clone(), z.clone()],
        vec![z.clone(), z.clone(), a.clone(), z],
        vec![b.clone(), c.clone(), d.clone(), -a],
    ])
}

/// Deterministic source of exact random data: rationals `p/q` with
/// `|p| ≤ bound` and `1 ≤ q ≤ bound`, Gaussian values with both parts so drawn.
#[derive(Clone, Debug)]
pub struct Sampler {
    rng: ChaCha8Rng,
    bound: i64,
}

impl Sampler {
    pub fn new(seed: u64, bound: i64) -> Self {
        assert!(bound >= 1, "bound must be at least 1");
        Self {
            rng: ChaCha8Rng::seed_from_u64(seed),
            bound,
        }
    }

    fn rational(&mut self) -> Rational {
        let p = self.rng.random_range(-self.bound..=self.bound);
        let q = self.rng.random_range(1..=self.bound);
        Rational::new(p.into(), q.into())
    }

    pub fn scalar(&mut self, field: Field) -> Scalar {
        match field {
            Field::Rational => Scalar::Rational(self.rational()),
            Field::Gaussian => {
                let re = self.rational();
                Scalar::gaussian(re, self.rational())
            }
        }
    }

    /// A scalar drawn until nonzero.
    pub fn nonzero(&mut self, field: Field) -> Scalar {
        loop {
            let s = self.scalar(field);
            if !s.is_zero() {
                return s;
            }
        }
    }

    pub fn scalars(&mut self, field: Field, count: usize) -> Vec<Scalar> {
        (0..count).map(|_| self.scalar(field)).collect()
    }

    pub fn vector(&mut self, field: Field, dim: usize) -> Vector {
        Vector::from_scalars(field, self.scalars(field, dim)).expect("matching field")
    }

    pub fn rect(&mut self, field: Field, rows: usize, cols: usize) -> Matrix {
        let entries = (0..rows).map(|_| self.scalars(field, cols)).collect();
        Matrix::from_rows(field, entries).expect("rectangular")
    }

    pub fn map(&mut self, field: Field, dim: usize) -> Matrix {
        self.rect(field, dim, dim)
    }

    /// Uniform integer in `lo..=hi`.
    pub fn int(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.random_range(lo..=hi)
    }

    /// True with probability one half.
    pub fn coin(&mut self) -> bool {
        self.rng.random()
    }
}

pub fn random_map(dim: usize, field: Field, bound: i64, seed: u64) -> Matrix {
    Sampler::new(seed, bound).map(field, dim)
}
