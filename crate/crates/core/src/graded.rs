//! Graded vector spaces over Q with exact degree and weight bookkeeping.
//!
//! A [`GradedBasisSpace`] is a finite ordered basis where every element
//! carries a cohomological degree, a weight and a sign parity. Degrees and
//! weights are exact rationals: models built from dg algebras have integer
//! degrees equal to their weights, while capped polynomial models carry
//! fractional ones. Parity (used for every Koszul sign) is always an integer
//! and is validated against `deg - 2*wt` up to a declared shift.

use crate::error::{Error, Result, Witness};
use crate::scalar::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// One basis element: a name plus (degree, weight, parity).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BasisElt {
    pub name: String,
    pub deg: Q,
    pub wt: Q,
    /// Sign parity in {0, 1}; all Koszul signs use this.
    pub par: u8,
}

impl BasisElt {
    pub fn new(name: impl Into<String>, deg: Q, wt: Q, par: u8) -> Self {
        BasisElt { name: name.into(), deg, wt, par: par % 2 }
    }
}

/// A finite graded basis space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedBasisSpace {
    pub label: String,
    pub basis: Vec<BasisElt>,
}

impl GradedBasisSpace {
    pub fn new(label: impl Into<String>, basis: Vec<BasisElt>) -> Result<Self> {
        let label = label.into();
        let mut seen = std::collections::BTreeSet::new();
        for b in &basis {
            if !seen.insert(b.name.clone()) {
                return Err(Error::Invalid {
                    stage: "graded",
                    message: format!("duplicate basis name {:?} in space {label:?}", b.name),
                });
            }
        }
        Ok(GradedBasisSpace { label, basis })
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.basis.iter().position(|b| b.name == name)
    }

    pub fn deg(&self, i: usize) -> &Q {
        &self.basis[i].deg
    }

    pub fn wt(&self, i: usize) -> &Q {
        &self.basis[i].wt
    }

    pub fn par(&self, i: usize) -> u8 {
        self.basis[i].par
    }

    pub fn name(&self, i: usize) -> &str {
        &self.basis[i].name
    }

    /// Basis vector e_i.
    pub fn unit_vector(&self, i: usize) -> Vector {
        let mut v = Vector::zero();
        v.set(i, Q::one());
        v
    }

    /// Indices grouped by (wt, deg), in lexicographic pivot order.
    pub fn blocks(&self) -> BTreeMap<(Q, Q), Vec<usize>> {
        let mut m: BTreeMap<(Q, Q), Vec<usize>> = BTreeMap::new();
        for (i, b) in self.basis.iter().enumerate() {
            m.entry((b.wt.clone(), b.deg.clone())).or_default().push(i);
        }
        m
    }
}

/// Sparse vector over a graded basis space.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct Vector {
    pub entries: BTreeMap<usize, Q>,
}

impl Vector {
    pub fn zero() -> Self {
        Vector { entries: BTreeMap::new() }
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Vector::zero();
        v.set(i, Q::one());
        v
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, i: usize) -> Q {
        self.entries.get(&i).cloned().unwrap_or_else(Q::zero)
    }

    pub fn set(&mut self, i: usize, c: Q) {
        if c.is_zero() {
            self.entries.remove(&i);
        } else {
            self.entries.insert(i, c);
        }
    }

    pub fn add_scaled(&mut self, other: &Vector, c: &Q) {
        if c.is_zero() {
            return;
        }
        for (&i, x) in &other.entries {
            let v = self.get(i) + x * c;
            self.set(i, v);
        }
    }

    pub fn scale(&mut self, c: &Q) {
        if c.is_zero() {
            self.entries.clear();
            return;
        }
        for x in self.entries.values_mut() {
            *x = &*x * c;
        }
    }

    pub fn scaled(&self, c: &Q) -> Vector {
        let mut v = self.clone();
        v.scale(c);
        v
    }

    pub fn plus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(other, &Q::one());
        v
    }

    pub fn minus(&self, other: &Vector) -> Vector {
        let mut v = self.clone();
        v.add_scaled(other, &Q::from_int(-1));
        v
    }

    pub fn dot(&self, other: &Vector) -> Q {
        let mut acc = Q::zero();
        for (i, x) in &self.entries {
            if let Some(y) = other.entries.get(i) {
                acc += x * y;
            }
        }
        acc
    }

    /// Pretty-print against a space's basis names.
    pub fn display<'a>(&'a self, space: &'a GradedBasisSpace) -> VectorDisplay<'a> {
        VectorDisplay { v: self, space }
    }

    /// Checks (deg, wt) homogeneity; returns the common (deg, wt) of the
    /// support, or None for the zero vector.
    pub fn homogeneous_bidegree(&self, space: &GradedBasisSpace) -> Result<Option<(Q, Q)>> {
        let mut found: Option<(Q, Q)> = None;
        for (&i, _) in &self.entries {
            let bd = (space.deg(i).clone(), space.wt(i).clone());
            match &found {
                None => found = Some(bd),
                Some(prev) if *prev == bd => {}
                Some(prev) => {
                    return Err(Error::Invalid {
                        stage: "graded",
                        message: format!(
                            "inhomogeneous vector in {}: {:?} vs {:?}",
                            space.label, prev, bd
                        ),
                    })
                }
            }
        }
        Ok(found)
    }
}

pub struct VectorDisplay<'a> {
    v: &'a Vector,
    space: &'a GradedBasisSpace,
}

impl fmt::Display for VectorDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.v.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&i, c) in &self.v.entries {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})*{}", c, self.space.name(i))?;
        }
        Ok(())
    }
}

/// A graded linear map between basis spaces, stored column-sparse.
///
/// Invariant: entries respect (deg, wt) homogeneity — column `j` of bidegree
/// `(p, w)` only hits rows of bidegree `(p + map_deg, w + map_wt)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinMap {
    pub source: GradedBasisSpace,
    pub target: GradedBasisSpace,
    pub map_deg: Q,
    pub map_wt: Q,
    /// cols[j] = image of source basis vector j.
    pub cols: Vec<Vector>,
}

impl LinMap {
    pub fn zero(source: &GradedBasisSpace, target: &GradedBasisSpace, map_deg: Q, map_wt: Q) -> Self {
        LinMap {
            source: source.clone(),
            target: target.clone(),
            map_deg,
            map_wt,
            cols: vec![Vector::zero(); source.dim()],
        }
    }

    pub fn identity(space: &GradedBasisSpace) -> Self {
        let mut m = LinMap::zero(space, space, Q::zero(), Q::zero());
        for j in 0..space.dim() {
            m.cols[j] = Vector::basis(j);
        }
        m
    }

    pub fn from_cols(
        source: &GradedBasisSpace,
        target: &GradedBasisSpace,
        map_deg: Q,
        map_wt: Q,
        cols: Vec<Vector>,
    ) -> Result<Self> {
        assert_eq!(cols.len(), source.dim());
        let m = LinMap {
            source: source.clone(),
            target: target.clone(),
            map_deg,
            map_wt,
            cols,
        };
        m.check_homogeneity()?;
        Ok(m)
    }

    pub fn set(&mut self, row: usize, col: usize, c: Q) {
        self.cols[col].set(row, c);
    }

    pub fn apply(&self, v: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&j, c) in &v.entries {
            out.add_scaled(&self.cols[j], c);
        }
        out
    }

    pub fn compose(&self, inner: &LinMap) -> LinMap {
        // self ∘ inner
        let cols = inner.cols.iter().map(|c| self.apply(c)).collect();
        LinMap {
            source: inner.source.clone(),
            target: self.target.clone(),
            map_deg: &self.map_deg + &inner.map_deg,
            map_wt: &self.map_wt + &inner.map_wt,
            cols,
        }
    }

    pub fn plus(&self, other: &LinMap) -> LinMap {
        let mut m = self.clone();
        for j in 0..m.cols.len() {
            m.cols[j].add_scaled(&other.cols[j], &Q::one());
        }
        m
    }

    pub fn scaled(&self, c: &Q) -> LinMap {
        let mut m = self.clone();
        for col in &mut m.cols {
            col.scale(c);
        }
        m
    }

    pub fn minus(&self, other: &LinMap) -> LinMap {
        self.plus(&other.scaled(&Q::from_int(-1)))
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    pub fn check_homogeneity(&self) -> Result<()> {
        for (j, col) in self.cols.iter().enumerate() {
            let sd = self.source.deg(j) + &self.map_deg;
            let sw = self.source.wt(j) + &self.map_wt;
            for (&i, _) in &col.entries {
                if *self.target.deg(i) != sd || *self.target.wt(i) != sw {
                    return Err(Error::Invalid {
                        stage: "graded",
                        message: format!(
                            "map {} -> {} not homogeneous at column {} row {}: expected ({}, {}), found ({}, {})",
                            self.source.label,
                            self.target.label,
                            self.source.name(j),
                            self.target.name(i),
                            sd,
                            sw,
                            self.target.deg(i),
                            self.target.wt(i)
                        ),
                    });
                }
            }
        }
        Ok(())
    }

    /// Graded commutator [self, other] = self∘other - (-1)^{|self||other|} other∘self,
    /// with operator parities supplied by the caller.
    pub fn graded_commutator(&self, self_par: u8, other: &LinMap, other_par: u8) -> LinMap {
        let a = self.compose(other);
        let b = other.compose(self);
        let sign = if (self_par & 1) == 1 && (other_par & 1) == 1 {
            Q::one()
        } else {
            Q::from_int(-1)
        };
        // [a,b] = ab - (-1)^{|a||b|} ba  =>  ab + sign' ba where sign' = -(-1)^{|a||b|}
        a.plus(&b.scaled(&sign))
    }

    pub fn width_witness(&self) -> Witness {
        Witness::detail(format!("{} -> {}", self.source.label, self.target.label))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{q, qq};

    fn space2() -> GradedBasisSpace {
        GradedBasisSpace::new(
            "V",
            vec![
                BasisElt::new("a", q(0), q(0), 0),
                BasisElt::new("b", q(1), q(1), 1),
            ],
        )
        .unwrap()
    }

    #[test]
    fn homogeneity_enforced() {
        let v = space2();
        let mut m = LinMap::zero(&v, &v, q(1), q(1));
        m.set(1, 0, q(2));
        assert!(LinMap::from_cols(&v, &v, q(1), q(1), m.cols.clone()).is_ok());
        // degree-0 map hitting b from a is inhomogeneous
        let mut bad = LinMap::zero(&v, &v, q(0), q(0));
        bad.set(1, 0, q(1));
        assert!(LinMap::from_cols(&v, &v, q(0), q(0), bad.cols.clone()).is_err());
    }

    #[test]
    fn rational_bidegrees_allowed() {
        let v = GradedBasisSpace::new(
            "W",
            vec![BasisElt::new("x", qq(2, 3), qq(1, 3), 0)],
        )
        .unwrap();
        assert_eq!(*v.deg(0), qq(2, 3));
    }

    #[test]
    fn commutator_signs() {
        let v = space2();
        let id = LinMap::identity(&v);
        // [id, id] with both odd: ab + ba = 2 id
        let c = id.graded_commutator(1, &id, 1);
        assert_eq!(c.apply(&Vector::basis(0)).get(0), q(2));
        // both even: ab - ba = 0
        let c = id.graded_commutator(0, &id, 0);
        assert!(c.is_zero());
    }
}
