//! Truncated formal series arithmetic.
//!
//! Three layers, all exact over Q with explicit truncation metadata:
//!
//! * [`TPoly`] — polynomials in deformation coordinates t_1..t_n truncated at
//!   total order N (the t-adic cap). Coefficients beyond the cap are absent,
//!   never silently zero.
//! * [`ULaurent`] — finite Laurent polynomials in the degree-two variable u.
//! * [`UTSeries`] — vectors over a graded basis space with coefficients
//!   indexed by (u power, t multi-index), windowed in u and capped in t.

use crate::error::{Error, Result};
use crate::graded::{GradedBasisSpace, Vector};
use crate::scalar::Q;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt;

/// Exponent multi-index for t-coordinates.
pub type MultiIndex = Vec<u32>;

pub fn mi_total(mi: &MultiIndex) -> u32 {
    mi.iter().sum()
}

pub fn mi_zero(n: usize) -> MultiIndex {
    vec![0; n]
}

pub fn mi_unit(n: usize, i: usize) -> MultiIndex {
    let mut m = vec![0; n];
    m[i] = 1;
    m
}

pub fn mi_add(a: &MultiIndex, b: &MultiIndex) -> MultiIndex {
    a.iter().zip(b.iter()).map(|(x, y)| x + y).collect()
}

/// Multi-indexes of total order exactly `k` in `n` variables, lexicographic.
pub fn mi_of_order(n: usize, k: u32) -> Vec<MultiIndex> {
    fn rec(n: usize, k: u32, acc: &mut MultiIndex, out: &mut Vec<MultiIndex>) {
        if n == 1 {
            let mut m = acc.clone();
            m.push(k);
            out.push(m);
            return;
        }
        for first in (0..=k).rev() {
            acc.push(first);
            rec(n - 1, k - first, acc, out);
            acc.pop();
        }
    }
    if n == 0 {
        return if k == 0 { vec![vec![]] } else { vec![] };
    }
    let mut out = Vec::new();
    rec(n, k, &mut Vec::new(), &mut out);
    out.sort();
    out
}

/// A polynomial in t_1..t_n truncated at total order `cap`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TPoly {
    pub n_vars: usize,
    pub cap: u32,
    pub terms: BTreeMap<MultiIndex, Q>,
}

impl TPoly {
    pub fn zero(n_vars: usize, cap: u32) -> Self {
        TPoly { n_vars, cap, terms: BTreeMap::new() }
    }

    pub fn constant(n_vars: usize, cap: u32, c: Q) -> Self {
        let mut p = TPoly::zero(n_vars, cap);
        p.add_term(mi_zero(n_vars), c);
        p
    }

    pub fn var(n_vars: usize, cap: u32, i: usize) -> Self {
        let mut p = TPoly::zero(n_vars, cap);
        p.add_term(mi_unit(n_vars, i), Q::one());
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, mi: &MultiIndex) -> Q {
        self.terms.get(mi).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, mi: MultiIndex, c: Q) {
        assert_eq!(mi.len(), self.n_vars);
        if mi_total(&mi) > self.cap || c.is_zero() {
            return;
        }
        let v = self.get(&mi) + c;
        if v.is_zero() {
            self.terms.remove(&mi);
        } else {
            self.terms.insert(mi, v);
        }
    }

    pub fn plus(&self, other: &TPoly) -> Result<TPoly> {
        self.check_caps(other)?;
        let mut p = self.clone();
        for (mi, c) in &other.terms {
            p.add_term(mi.clone(), c.clone());
        }
        Ok(p)
    }

    pub fn scaled(&self, c: &Q) -> TPoly {
        let mut p = TPoly::zero(self.n_vars, self.cap);
        for (mi, x) in &self.terms {
            p.add_term(mi.clone(), x * c);
        }
        p
    }

    pub fn times(&self, other: &TPoly) -> Result<TPoly> {
        self.check_caps(other)?;
        let mut p = TPoly::zero(self.n_vars, self.cap);
        for (a, x) in &self.terms {
            for (b, y) in &other.terms {
                let mi = mi_add(a, b);
                if mi_total(&mi) <= self.cap {
                    p.add_term(mi, x * y);
                }
            }
        }
        Ok(p)
    }

    /// ∂/∂t_i.
    pub fn d_dt(&self, i: usize) -> TPoly {
        let mut p = TPoly::zero(self.n_vars, self.cap);
        for (mi, c) in &self.terms {
            if mi[i] > 0 {
                let mut m = mi.clone();
                m[i] -= 1;
                p.add_term(m, c * &Q::from_int(mi[i] as i64));
            }
        }
        p
    }

    /// Terms of exact total order k.
    pub fn order_part(&self, k: u32) -> TPoly {
        let mut p = TPoly::zero(self.n_vars, self.cap);
        for (mi, c) in &self.terms {
            if mi_total(mi) == k {
                p.add_term(mi.clone(), c.clone());
            }
        }
        p
    }

    fn check_caps(&self, other: &TPoly) -> Result<()> {
        if self.n_vars != other.n_vars || self.cap != other.cap {
            return Err(Error::CapMismatch(format!(
                "t-poly caps differ: ({}, {}) vs ({}, {})",
                self.n_vars, self.cap, other.n_vars, other.cap
            )));
        }
        Ok(())
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (mi, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({})", c)?;
            for (i, &e) in mi.iter().enumerate() {
                if e == 1 {
                    write!(f, "*t{}", i + 1)?;
                } else if e > 1 {
                    write!(f, "*t{}^{}", i + 1, e)?;
                }
            }
        }
        Ok(())
    }
}

/// Finite Laurent polynomial in u.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct ULaurent {
    pub terms: BTreeMap<i64, Q>,
}

impl ULaurent {
    pub fn zero() -> Self {
        ULaurent { terms: BTreeMap::new() }
    }

    pub fn constant(c: Q) -> Self {
        let mut p = ULaurent::zero();
        p.add_term(0, c);
        p
    }

    pub fn monomial(k: i64, c: Q) -> Self {
        let mut p = ULaurent::zero();
        p.add_term(k, c);
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, k: i64) -> Q {
        self.terms.get(&k).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, k: i64, c: Q) {
        if c.is_zero() {
            return;
        }
        let v = self.get(k) + c;
        if v.is_zero() {
            self.terms.remove(&k);
        } else {
            self.terms.insert(k, v);
        }
    }

    pub fn plus(&self, other: &ULaurent) -> ULaurent {
        let mut p = self.clone();
        for (&k, c) in &other.terms {
            p.add_term(k, c.clone());
        }
        p
    }

    pub fn scaled(&self, c: &Q) -> ULaurent {
        let mut p = ULaurent::zero();
        for (&k, x) in &self.terms {
            p.add_term(k, x * c);
        }
        p
    }

    pub fn times(&self, other: &ULaurent) -> ULaurent {
        let mut p = ULaurent::zero();
        for (&a, x) in &self.terms {
            for (&b, y) in &other.terms {
                p.add_term(a + b, x * y);
            }
        }
        p
    }

    /// u ↦ -u.
    pub fn flip_u(&self) -> ULaurent {
        let mut p = ULaurent::zero();
        for (&k, c) in &self.terms {
            let s = if k.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
            p.add_term(k, s);
        }
        p
    }

    /// u d/du.
    pub fn u_ddu(&self) -> ULaurent {
        let mut p = ULaurent::zero();
        for (&k, c) in &self.terms {
            p.add_term(k, c * &Q::from_int(k));
        }
        p
    }

    pub fn min_pow(&self) -> Option<i64> {
        self.terms.keys().next().copied()
    }

    pub fn max_pow(&self) -> Option<i64> {
        self.terms.keys().next_back().copied()
    }
}

impl fmt::Display for ULaurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&k, c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({})", c)?,
                1 => write!(f, "({})*u", c)?,
                _ => write!(f, "({})*u^{}", c, k)?,
            }
        }
        Ok(())
    }
}

/// Scalar series in u and t together: coefficients in Q indexed by
/// (u power, t multi-index).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UTScalar {
    pub n_vars: usize,
    pub t_cap: u32,
    pub terms: BTreeMap<(i64, MultiIndex), Q>,
}

impl UTScalar {
    pub fn zero(n_vars: usize, t_cap: u32) -> Self {
        UTScalar { n_vars, t_cap, terms: BTreeMap::new() }
    }

    pub fn one(n_vars: usize, t_cap: u32) -> Self {
        let mut s = Self::zero(n_vars, t_cap);
        s.add_term(0, mi_zero(n_vars), Q::one());
        s
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn get(&self, u: i64, mi: &MultiIndex) -> Q {
        self.terms.get(&(u, mi.clone())).cloned().unwrap_or_else(Q::zero)
    }

    pub fn add_term(&mut self, u: i64, mi: MultiIndex, c: Q) {
        if c.is_zero() || mi_total(&mi) > self.t_cap {
            return;
        }
        let key = (u, mi);
        let v = self.terms.get(&key).cloned().unwrap_or_else(Q::zero) + c;
        if v.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, v);
        }
    }

    pub fn plus(&self, other: &UTScalar) -> UTScalar {
        let mut s = self.clone();
        for ((u, mi), c) in &other.terms {
            s.add_term(*u, mi.clone(), c.clone());
        }
        s
    }

    pub fn scaled(&self, c: &Q) -> UTScalar {
        let mut s = UTScalar::zero(self.n_vars, self.t_cap);
        for ((u, mi), x) in &self.terms {
            s.add_term(*u, mi.clone(), x * c);
        }
        s
    }

    pub fn times(&self, other: &UTScalar) -> UTScalar {
        let mut s = UTScalar::zero(self.n_vars, self.t_cap);
        for ((ua, ma), x) in &self.terms {
            for ((ub, mb), y) in &other.terms {
                let mi = mi_add(ma, mb);
                if mi_total(&mi) <= self.t_cap {
                    s.add_term(ua + ub, mi, x * y);
                }
            }
        }
        s
    }

    /// u ↦ -u on the u-variable.
    pub fn flip_u(&self) -> UTScalar {
        let mut s = UTScalar::zero(self.n_vars, self.t_cap);
        for ((u, mi), c) in &self.terms {
            let v = if u.rem_euclid(2) == 0 { c.clone() } else { -c.clone() };
            s.add_term(*u, mi.clone(), v);
        }
        s
    }

    pub fn u_ddu(&self) -> UTScalar {
        let mut s = UTScalar::zero(self.n_vars, self.t_cap);
        for ((u, mi), c) in &self.terms {
            s.add_term(*u, mi.clone(), c * &Q::from_int(*u));
        }
        s
    }

    pub fn t_order_part(&self, k: u32) -> UTScalar {
        let mut s = UTScalar::zero(self.n_vars, self.t_cap);
        for ((u, mi), c) in &self.terms {
            if mi_total(mi) == k {
                s.add_term(*u, mi.clone(), c.clone());
            }
        }
        s
    }

    /// Keep only u-powers >= 0.
    pub fn nonneg_u_part(&self) -> UTScalar {
        let mut s = UTScalar::zero(self.n_vars, self.t_cap);
        for ((u, mi), c) in &self.terms {
            if *u >= 0 {
                s.add_term(*u, mi.clone(), c.clone());
            }
        }
        s
    }

    /// Keep only u-powers < 0.
    pub fn neg_u_part(&self) -> UTScalar {
        let mut s = UTScalar::zero(self.n_vars, self.t_cap);
        for ((u, mi), c) in &self.terms {
            if *u < 0 {
                s.add_term(*u, mi.clone(), c.clone());
            }
        }
        s
    }

    pub fn from_tpoly(p: &TPoly) -> UTScalar {
        let mut s = UTScalar::zero(p.n_vars, p.cap);
        for (mi, c) in &p.terms {
            s.add_term(0, mi.clone(), c.clone());
        }
        s
    }
}

/// Truncated Laurent series in u whose coefficients are truncated t-series
/// with values in a graded basis space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UTSeries {
    pub space: GradedBasisSpace,
    pub n_vars: usize,
    pub t_cap: u32,
    /// u window [u_min, u_max]: coefficients outside are absent by contract.
    pub u_window: (i64, i64),
    pub coeffs: BTreeMap<(i64, MultiIndex), Vector>,
}

impl UTSeries {
    pub fn zero(space: &GradedBasisSpace, n_vars: usize, t_cap: u32, u_window: (i64, i64)) -> Self {
        UTSeries { space: space.clone(), n_vars, t_cap, u_window, coeffs: BTreeMap::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, u: i64, mi: MultiIndex, v: Vector) -> Result<()> {
        if v.is_zero() || mi_total(&mi) > self.t_cap {
            return Ok(());
        }
        if u < self.u_window.0 || u > self.u_window.1 {
            return Err(Error::CapMismatch(format!(
                "u power {} outside window [{}, {}]",
                u, self.u_window.0, self.u_window.1
            )));
        }
        let key = (u, mi);
        let cur = self.coeffs.entry(key.clone()).or_insert_with(Vector::zero);
        cur.add_scaled(&v, &Q::one());
        if cur.is_zero() {
            self.coeffs.remove(&key);
        }
        Ok(())
    }

    pub fn get(&self, u: i64, mi: &MultiIndex) -> Vector {
        self.coeffs.get(&(u, mi.clone())).cloned().unwrap_or_else(Vector::zero)
    }

    pub fn plus(&self, other: &UTSeries) -> Result<UTSeries> {
        self.check_caps(other)?;
        let mut s = self.clone();
        for ((u, mi), v) in &other.coeffs {
            s.add_term(*u, mi.clone(), v.clone())?;
        }
        Ok(s)
    }

    pub fn scaled(&self, c: &Q) -> UTSeries {
        let mut s = UTSeries::zero(&self.space, self.n_vars, self.t_cap, self.u_window);
        if c.is_zero() {
            return s;
        }
        for ((u, mi), v) in &self.coeffs {
            s.coeffs.insert((*u, mi.clone()), v.scaled(c));
        }
        s
    }

    /// Multiplication by a scalar series. The result is truncated to the
    /// intersection of validity windows; homogeneity is preserved by
    /// construction since scalars carry no basis-space grading.
    pub fn scalar_multiply(&self, a: &UTScalar) -> Result<UTSeries> {
        if a.n_vars != self.n_vars || a.t_cap != self.t_cap {
            return Err(Error::CapMismatch(format!(
                "scalar caps ({}, {}) vs series caps ({}, {})",
                a.n_vars, a.t_cap, self.n_vars, self.t_cap
            )));
        }
        let mut s = UTSeries::zero(&self.space, self.n_vars, self.t_cap, self.u_window);
        for ((ua, ma), x) in &a.terms {
            for ((ub, mb), v) in &self.coeffs {
                let mi = mi_add(ma, mb);
                let u = ua + ub;
                if mi_total(&mi) <= self.t_cap {
                    if u < self.u_window.0 || u > self.u_window.1 {
                        return Err(Error::CapMismatch(format!(
                            "scalar multiplication pushes u power {u} outside window [{}, {}]",
                            self.u_window.0, self.u_window.1
                        )));
                    }
                    s.add_term(u, mi, v.scaled(x))?;
                }
            }
        }
        Ok(s)
    }

    /// Checks that every stored term has the same total degree, where u has
    /// degree 2 and the t-variables have the supplied degrees.
    pub fn homogeneous_total_degree(&self, t_degs: &[Q]) -> Result<Option<Q>> {
        let mut found: Option<Q> = None;
        for ((u, mi), v) in &self.coeffs {
            let bid = v.homogeneous_bidegree(&self.space)?;
            if let Some((d, _)) = bid {
                let mut total = d + Q::from_int(2 * *u);
                for (i, &e) in mi.iter().enumerate() {
                    total = total + t_degs[i].clone() * Q::from_int(e as i64);
                }
                match &found {
                    None => found = Some(total),
                    Some(p) if *p == total => {}
                    Some(p) => {
                        return Err(Error::Invalid {
                            stage: "series",
                            message: format!("inhomogeneous series: {} vs {}", p, total),
                        })
                    }
                }
            }
        }
        Ok(found)
    }

    fn check_caps(&self, other: &UTSeries) -> Result<()> {
        if self.n_vars != other.n_vars
            || self.t_cap != other.t_cap
            || self.u_window != other.u_window
        {
            return Err(Error::CapMismatch("series caps differ".into()));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graded::BasisElt;
    use crate::scalar::{q, Q};

    fn space1() -> GradedBasisSpace {
        GradedBasisSpace::new("V", vec![BasisElt::new("v", q(0), q(0), 0)]).unwrap()
    }

    #[test]
    fn unit_scalar_is_identity() {
        let sp = space1();
        let mut s = UTSeries::zero(&sp, 1, 3, (-2, 2));
        s.add_term(-1, vec![1], Vector::basis(0)).unwrap();
        let one = UTScalar::one(1, 3);
        assert_eq!(s.scalar_multiply(&one).unwrap(), s);
    }

    #[test]
    fn exponent_arithmetic() {
        // (u * t1) * (u^{-1} * v) = t1 * v
        let sp = space1();
        let mut s = UTSeries::zero(&sp, 1, 3, (-2, 2));
        s.add_term(-1, vec![0], Vector::basis(0)).unwrap();
        let mut a = UTScalar::zero(1, 3);
        a.add_term(1, vec![1], Q::one());
        let r = s.scalar_multiply(&a).unwrap();
        assert_eq!(r.get(0, &vec![1]), Vector::basis(0));
        assert_eq!(r.coeffs.len(), 1);
    }

    #[test]
    fn truncated_geometric_cancellation() {
        // (1 + t)(1 - t + t^2) truncated at N=2 is exactly 1.
        let mut a = TPoly::zero(1, 2);
        a.add_term(vec![0], q(1));
        a.add_term(vec![1], q(1));
        let mut b = TPoly::zero(1, 2);
        b.add_term(vec![0], q(1));
        b.add_term(vec![1], q(-1));
        b.add_term(vec![2], q(1));
        let p = a.times(&b).unwrap();
        assert_eq!(p, TPoly::constant(1, 2, q(1)));
    }

    #[test]
    fn cap_mismatch_detected() {
        let a = TPoly::zero(1, 2);
        let b = TPoly::zero(1, 3);
        assert!(a.times(&b).is_err());
    }

    #[test]
    fn flip_u_signs() {
        let mut l = ULaurent::zero();
        l.add_term(1, q(1));
        l.add_term(2, q(1));
        let f = l.flip_u();
        assert_eq!(f.get(1), q(-1));
        assert_eq!(f.get(2), q(1));
    }

    #[test]
    fn multi_index_enumeration() {
        let v = mi_of_order(2, 2);
        assert_eq!(v, vec![vec![0, 2], vec![1, 1], vec![2, 0]]);
    }
}
