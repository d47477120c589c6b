//! Verification reports. A failing report carries the first violating basis
//! tuple together with both sides of the identity.

use std::fmt;

use serde::ser::{Serialize, SerializeStruct, Serializer};

use crate::linalg::{Matrix, Vector};
use crate::scalar::Scalar;

/// A counterexample: 1-based basis indices plus the two sides that disagree.
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub at: Vec<usize>,
    pub lhs: Vec<Scalar>,
    pub rhs: Vec<Scalar>,
    pub context: String,
}

impl Witness {
    pub fn new(at: Vec<usize>, lhs: Vec<Scalar>, rhs: Vec<Scalar>, context: impl Into<String>) -> Self {
        Self {
            at,
            lhs,
            rhs,
            context: context.into(),
        }
    }

    pub fn vectors(at: Vec<usize>, lhs: &Vector, rhs: &Vector, context: impl Into<String>) -> Self {
        Self::new(at, lhs.coords().to_vec(), rhs.coords().to_vec(), context)
    }

    pub fn matrices(at: Vec<usize>, lhs: &Matrix, rhs: &Matrix, context: impl Into<String>) -> Self {
        Self::new(at, lhs.flatten(), rhs.flatten(), context)
    }
}

fn join(values: &[Scalar]) -> String {
    let cells: Vec<String> = values.iter().map(ToString::to_string).collect();
    format!("[{}]", cells.join(", "))
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} at {:?}: lhs {} vs rhs {}",
            self.context,
            self.at,
            join(&self.lhs),
            join(&self.rhs)
        )
    }
}

impl Serialize for Witness {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let strings = |v: &[Scalar]| v.iter().map(ToString::to_string).collect::<Vec<_>>();
        let mut s = serializer.serialize_struct("Witness", 4)?;
        s.serialize_field("at", &self.at)?;
        s.serialize_field("lhs", &strings(&self.lhs))?;
        s.serialize_field("rhs", &strings(&self.rhs))?;
        s.serialize_field("context", &self.context)?;
        s.end()
    }
}

/// Outcome of one exhaustive check.
#[derive(Clone, Debug, PartialEq, serde::Serialize)]
pub struct Report {
    pub name: String,
    pub ok: bool,
    /// Number of cases examined before stopping.
    pub cases: usize,
    pub witness: Option<Witness>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(name: impl Into<String>) -> Self {
        Self {
            name: name.into(),
            ok: true,
            cases: 0,
            witness: None,
            notes: Vec::new(),
        }
    }

    /// Counts one case; on the first mismatch records the witness and turns
    /// the report red. Returns whether the case passed.
    pub fn compare(&mut self, at: &[usize], lhs: &Vector, rhs: &Vector, context: &str) -> bool {
        self.cases += 1;
        if lhs == rhs {
            return true;
        }
        self.fail(Witness::vectors(crate::tuples::one_based(at), lhs, rhs, context));
        false
    }

    pub fn compare_matrices(&mut self, at: &[usize], lhs: &Matrix, rhs: &Matrix, context: &str) -> bool {
        self.cases += 1;
        if lhs == rhs {
            return true;
        }
        self.fail(Witness::matrices(crate::tuples::one_based(at), lhs, rhs, context));
        false
    }

    pub fn fail(&mut self, witness: Witness) {
        self.ok = false;
        if self.witness.is_none() {
            self.witness = Some(witness);
        }
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Renames a report, e.g. when a sub-check is surfaced under another name.
    pub fn named(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.ok { "ok" } else { "FAILED" };
        write!(f, "{}: {} ({} cases)", self.name, verdict, self.cases)?;
        if let Some(w) = &self.witness {
            write!(f, "\n  witness: {w}")?;
        }
        for n in &self.notes {
            write!(f, "\n  note: {n}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Field;

    #[test]
    fn first_witness_is_kept() {
        let q = Field::Rational;
        let mut r = Report::new("demo");
        assert!(r.compare(&[0, 1], &Vector::basis(q, 2, 0), &Vector::basis(q, 2, 0), "x"));
        assert!(!r.compare(&[0, 1], &Vector::basis(q, 2, 0), &Vector::basis(q, 2, 1), "first"));
        assert!(!r.compare(&[1, 0], &Vector::basis(q, 2, 1), &Vector::basis(q, 2, 0), "second"));
        assert!(!r.ok);
        assert_eq!(r.cases, 3);
        let w = r.witness.unwrap();
        assert_eq!(w.at, vec![1, 2]);
        assert_eq!(w.context, "first");
    }

    #[test]
    fn witness_json_uses_scalar_strings() {
        let q = Field::Rational;
        let w = Witness::new(vec![1], vec![Scalar::from_ratio(q, 1, 2)], vec![Scalar::zero(q)], "c");
        let json = serde_json::to_value(&w).unwrap();
        assert_eq!(json["lhs"][0], "1/2");
        assert_eq!(json["rhs"][0], "0");
    }
}
