//! The finite calculus package: two graded spaces (polyvector-type T and
//! form-type O) with differential, product, bracket, cyclic operator B,
//! contraction and Lie tables, plus the distinguished classes (unit, degree
//! class, potential class) and the Calabi-Yau data (dimension, volume class,
//! trace functional).
//!
//! Packages either come from the hochschild module or are supplied directly.
//! Capped models declare a certified weight window; identity checks evaluate
//! a tuple only when every intermediate stays inside the window and report
//! the rest as skipped, never as passes. Packages induced from truncated
//! bar complexes declare a length budget with the same contract.

use crate::error::{Error, Result, Witness};
use crate::graded::{BasisElt, GradedBasisSpace, LinMap, Vector};
use crate::homology::Splitting;
use crate::report::{CheckResult, Report};
use crate::scalar::Q;
use crate::sign::neg_one_pow;
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;

/// Bilinear operation table; all signs live inside the entries.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct OpTable {
    pub entries: Vec<Vec<Vector>>,
}

impl OpTable {
    pub fn zero(s1: &GradedBasisSpace, s2: &GradedBasisSpace, _target: &GradedBasisSpace) -> Self {
        OpTable { entries: vec![vec![Vector::zero(); s2.dim()]; s1.dim()] }
    }

    pub fn set(&mut self, i: usize, j: usize, v: Vector) {
        self.entries[i][j] = v;
    }

    pub fn get(&self, i: usize, j: usize) -> &Vector {
        &self.entries[i][j]
    }

    pub fn apply(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, x) in &a.entries {
            for (&j, y) in &b.entries {
                out.add_scaled(&self.entries[i][j], &(x * y));
            }
        }
        out
    }
}

/// Length budget for packages induced from truncated bar complexes: each
/// class carries the tensor length of its representative; operations whose
/// honest result could involve lengths beyond the cap are untrusted.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LengthData {
    pub t_min_arity: Vec<usize>,
    pub t_max_arity: Vec<usize>,
    pub o_len: Vec<usize>,
    pub cap: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CalculusPackage {
    pub t_space: GradedBasisSpace,
    pub o_space: GradedBasisSpace,
    /// Differential on T (degree +1, weight +1).
    pub d_t: LinMap,
    /// Differential on O (degree +1, weight +1).
    pub d_o: LinMap,
    /// Product on T (degree 0, weight 0, graded commutative).
    pub prod: OpTable,
    /// Bracket on T (degree -1, weight 0 in the bilinear sense).
    pub bracket: OpTable,
    /// Cyclic operator on O (degree -1, weight 0).
    pub b_op: LinMap,
    /// Contraction T x O -> O (degree additive, weight additive).
    pub i_tbl: OpTable,
    /// Lie action T x O -> O (degree additive -1, weight additive).
    pub l_tbl: OpTable,
    /// Distinguished degree-2 weight-1 class with d = [f, -].
    pub f_class: Vector,
    /// Distinguished degree-1 weight-0 class with f = [deg, f].
    pub deg_class: Vector,
    /// Class of the algebra unit.
    pub unit_class: Vector,
    /// Calabi-Yau dimension (rational for capped polynomial models).
    pub w: Q,
    /// Certified weight window for homology-level statements.
    pub wt_window: Option<(Q, Q)>,
    /// Completeness bound for raw table lookups: a lookup whose expected
    /// result weight is <= this bound is exact; the model is complete at the
    /// bottom, so results below the weight support are honestly zero.
    pub complete_below: Option<Q>,
    /// Length budget for induced packages.
    pub length_data: Option<LengthData>,
}

/// Calabi-Yau data: dimension, volume class, trace functional on the
/// top-contracted piece.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CyData {
    pub w: Q,
    pub v1: Vector,
    /// Sparse functional on the o-space: list of (basis index, value).
    pub trace: Vec<(usize, Q)>,
    /// Enforce integer exponents and dimension.
    pub strict: bool,
}

impl CyData {
    pub fn trace_apply(&self, v: &Vector) -> Q {
        let mut acc = Q::zero();
        for (i, c) in &self.trace {
            acc += v.get(*i) * c.clone();
        }
        acc
    }
}

fn vec_wt(space: &GradedBasisSpace, v: &Vector) -> Option<Q> {
    v.entries.keys().next().map(|&i| space.wt(i).clone())
}

fn vec_max<'a>(lens: &[usize], v: &Vector) -> usize {
    v.entries.keys().map(|&i| lens[i]).max().unwrap_or(0)
}

fn vec_min(lens: &[usize], v: &Vector) -> usize {
    v.entries.keys().map(|&i| lens[i]).min().unwrap_or(0)
}

impl CalculusPackage {
    fn trust_wt(&self, wt: &Q) -> bool {
        match &self.complete_below {
            Some(t) => wt <= t,
            None => true,
        }
    }

    /// Guarded product: None when the honest result may fall outside the model.
    pub fn g_prod(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        if a.is_zero() || b.is_zero() {
            return Some(Vector::zero());
        }
        if let Some(ld) = &self.length_data {
            if vec_max(&ld.t_max_arity, a) + vec_max(&ld.t_max_arity, b) > ld.cap {
                return None;
            }
        } else if self.wt_window.is_some() {
            let wa = vec_wt(&self.t_space, a)?;
            let wb = vec_wt(&self.t_space, b)?;
            if !self.trust_wt(&(wa + wb)) {
                return None;
            }
        }
        Some(self.prod.apply(a, b))
    }

    pub fn g_bracket(&self, a: &Vector, b: &Vector) -> Option<Vector> {
        if a.is_zero() || b.is_zero() {
            return Some(Vector::zero());
        }
        if let Some(ld) = &self.length_data {
            let s = vec_max(&ld.t_max_arity, a) + vec_max(&ld.t_max_arity, b);
            if s > 0 && s - 1 > ld.cap {
                return None;
            }
        } else if self.wt_window.is_some() {
            let wa = vec_wt(&self.t_space, a)?;
            let wb = vec_wt(&self.t_space, b)?;
            if !self.trust_wt(&(wa + wb)) {
                return None;
            }
        }
        Some(self.bracket.apply(a, b))
    }

    pub fn g_i(&self, x: &Vector, o: &Vector) -> Option<Vector> {
        if x.is_zero() || o.is_zero() {
            return Some(Vector::zero());
        }
        if self.length_data.is_some() {
            // contraction consumes slots, always within the budget
        } else if self.wt_window.is_some() {
            let wx = vec_wt(&self.t_space, x)?;
            let wo = vec_wt(&self.o_space, o)?;
            if !self.trust_wt(&(wx + wo)) {
                return None;
            }
        }
        Some(self.i_tbl.apply(x, o))
    }

    pub fn g_l(&self, x: &Vector, o: &Vector) -> Option<Vector> {
        if x.is_zero() || o.is_zero() {
            return Some(Vector::zero());
        }
        if let Some(ld) = &self.length_data {
            if vec_min(&ld.t_min_arity, x) == 0 && vec_max(&ld.o_len, o) + 1 > ld.cap {
                return None;
            }
        } else if self.wt_window.is_some() {
            let wx = vec_wt(&self.t_space, x)?;
            let wo = vec_wt(&self.o_space, o)?;
            if !self.trust_wt(&(wx + wo)) {
                return None;
            }
        }
        Some(self.l_tbl.apply(x, o))
    }

    pub fn g_b(&self, o: &Vector) -> Option<Vector> {
        if o.is_zero() {
            return Some(Vector::zero());
        }
        if let Some(ld) = &self.length_data {
            if vec_max(&ld.o_len, o) + 1 > ld.cap {
                return None;
            }
        } else if self.wt_window.is_some() {
            let wo = vec_wt(&self.o_space, o)?;
            if !self.trust_wt(&wo) {
                return None;
            }
        }
        Some(self.b_op.apply(o))
    }

    pub fn g_dt(&self, a: &Vector) -> Option<Vector> {
        if a.is_zero() {
            return Some(Vector::zero());
        }
        if self.wt_window.is_some() && self.length_data.is_none() {
            let wa = vec_wt(&self.t_space, a)?;
            if !self.trust_wt(&(wa + Q::one())) {
                return None;
            }
        }
        Some(self.d_t.apply(a))
    }

    pub fn g_do(&self, o: &Vector) -> Option<Vector> {
        if o.is_zero() {
            return Some(Vector::zero());
        }
        if self.wt_window.is_some() && self.length_data.is_none() {
            let wo = vec_wt(&self.o_space, o)?;
            if !self.trust_wt(&(wo + Q::one())) {
                return None;
            }
        }
        Some(self.d_o.apply(o))
    }

    pub fn t_par(&self, v: &Vector) -> u8 {
        v.entries.keys().next().map(|&i| self.t_space.par(i)).unwrap_or(0)
    }

    /// Is the (wt, deg) stratum certified for homology-level conclusions?
    pub fn stratum_certified(&self, wt: &Q) -> bool {
        match &self.wt_window {
            Some((lo, hi)) => wt >= lo && wt <= hi,
            None => true,
        }
    }

    /// Full identity suite. Every check lists skipped tuples separately.
    pub fn validate(&self) -> Report {
        let mut rep = Report::new("calculus");
        let tn = self.t_space.dim();
        let on = self.o_space.dim();
        let tb = |i: usize| Vector::basis(i);

        // homogeneity of all stored data
        for (name, ok) in [
            ("d_t-homogeneous", self.d_t.check_homogeneity().is_ok()),
            ("d_o-homogeneous", self.d_o.check_homogeneity().is_ok()),
            ("b-homogeneous", self.b_op.check_homogeneity().is_ok()),
        ] {
            rep.push(CheckResult::new(name, ok, if ok { "" } else { "inhomogeneous entries" }));
        }

        // d^2 = 0 on both sides, B^2 = 0, dB + Bd = 0
        let mut run_op_sq = |name: &str, f: &dyn Fn(&Vector) -> Option<Vector>, dim: usize| {
            let mut skipped = 0;
            let mut pass = true;
            let mut wit = String::new();
            for i in 0..dim {
                let step = f(&Vector::basis(i)).and_then(|v| f(&v));
                match step {
                    None => skipped += 1,
                    Some(v) => {
                        if !v.is_zero() {
                            pass = false;
                            wit = format!("fails on basis index {i}");
                            break;
                        }
                    }
                }
            }
            rep.push(CheckResult::new(name, pass, wit).with_skipped(skipped));
        };
        run_op_sq("d_t-squares-to-zero", &|v| self.g_dt(v), tn);
        run_op_sq("d_o-squares-to-zero", &|v| self.g_do(v), on);
        run_op_sq("b-squares-to-zero", &|v| self.g_b(v), on);
        {
            let mut skipped = 0;
            let mut pass = true;
            let mut wit = String::new();
            for i in 0..on {
                let e = Vector::basis(i);
                let lhs = self.g_do(&e).and_then(|v| self.g_b(&v));
                let rhs = self.g_b(&e).and_then(|v| self.g_do(&v));
                match (lhs, rhs) {
                    (Some(a), Some(b)) => {
                        if !a.plus(&b).is_zero() {
                            pass = false;
                            wit = format!("fails on {}", self.o_space.name(i));
                            break;
                        }
                    }
                    _ => skipped += 1,
                }
            }
            rep.push(CheckResult::new("d_o-b-anticommute", pass, wit).with_skipped(skipped));
        }

        // unit class acts as identity under product and contraction
        {
            let mut pass = true;
            let mut wit = String::new();
            for i in 0..tn {
                match self.g_prod(&self.unit_class, &tb(i)) {
                    Some(v) if v == tb(i) => {}
                    Some(_) => {
                        pass = false;
                        wit = format!("unit*{} wrong", self.t_space.name(i));
                        break;
                    }
                    None => {}
                }
            }
            rep.push(CheckResult::new("product-unit", pass, wit));
            let mut pass = true;
            let mut wit = String::new();
            for j in 0..on {
                match self.g_i(&self.unit_class, &Vector::basis(j)) {
                    Some(v) if v == Vector::basis(j) => {}
                    Some(_) => {
                        pass = false;
                        wit = format!("i_unit wrong on {}", self.o_space.name(j));
                        break;
                    }
                    None => {}
                }
            }
            rep.push(CheckResult::new("contraction-unit", pass, wit));
        }

        // graded commutativity of the product
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'cc: for i in 0..tn {
                for j in 0..tn {
                    let s = neg_one_pow((self.t_space.par(i) as i64) * (self.t_space.par(j) as i64));
                    match (self.g_prod(&tb(i), &tb(j)), self.g_prod(&tb(j), &tb(i))) {
                        (Some(a), Some(b)) => {
                            if a != b.scaled(&s) {
                                pass = false;
                                wit = format!("({}, {})", self.t_space.name(i), self.t_space.name(j));
                                break 'cc;
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
            rep.push(CheckResult::new("product-graded-commutative", pass, wit).with_skipped(skipped));
        }

        // associativity
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'assoc: for i in 0..tn {
                for j in 0..tn {
                    for k in 0..tn {
                        let lhs = self.g_prod(&tb(i), &tb(j)).and_then(|v| self.g_prod(&v, &tb(k)));
                        let rhs = self.g_prod(&tb(j), &tb(k)).and_then(|v| self.g_prod(&tb(i), &v));
                        match (lhs, rhs) {
                            (Some(a), Some(b)) => {
                                if a != b {
                                    pass = false;
                                    wit = format!(
                                        "({}, {}, {})",
                                        self.t_space.name(i),
                                        self.t_space.name(j),
                                        self.t_space.name(k)
                                    );
                                    break 'assoc;
                                }
                            }
                            _ => skipped += 1,
                        }
                    }
                }
            }
            rep.push(CheckResult::new("product-associative", pass, wit).with_skipped(skipped));
        }

        // bracket graded antisymmetry with the shifted parity
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'anti: for i in 0..tn {
                for j in 0..tn {
                    let s = neg_one_pow(
                        ((self.t_space.par(i) as i64) - 1) * ((self.t_space.par(j) as i64) - 1),
                    );
                    match (self.g_bracket(&tb(i), &tb(j)), self.g_bracket(&tb(j), &tb(i))) {
                        (Some(a), Some(b)) => {
                            if a != b.scaled(&(-s)) {
                                pass = false;
                                wit = format!("({}, {})", self.t_space.name(i), self.t_space.name(j));
                                break 'anti;
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
            rep.push(CheckResult::new("bracket-antisymmetric", pass, wit).with_skipped(skipped));
        }

        // Poisson rule [X, Y∘Z] = [X,Y]∘Z + (-1)^{(|X|+1)|Y|} Y∘[X,Z]
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'poisson: for i in 0..tn {
                for j in 0..tn {
                    for k in 0..tn {
                        let lhs = self.g_prod(&tb(j), &tb(k)).and_then(|v| self.g_bracket(&tb(i), &v));
                        let r1 = self.g_bracket(&tb(i), &tb(j)).and_then(|v| self.g_prod(&v, &tb(k)));
                        let r2 = self.g_bracket(&tb(i), &tb(k)).and_then(|v| self.g_prod(&tb(j), &v));
                        match (lhs, r1, r2) {
                            (Some(l), Some(a), Some(b)) => {
                                let s = neg_one_pow(
                                    ((self.t_space.par(i) as i64) + 1) * (self.t_space.par(j) as i64),
                                );
                                let rhs = a.plus(&b.scaled(&s));
                                if l != rhs {
                                    pass = false;
                                    wit = format!(
                                        "({}, {}, {})",
                                        self.t_space.name(i),
                                        self.t_space.name(j),
                                        self.t_space.name(k)
                                    );
                                    break 'poisson;
                                }
                            }
                            _ => skipped += 1,
                        }
                    }
                }
            }
            rep.push(CheckResult::new("bracket-poisson-rule", pass, wit).with_skipped(skipped));
        }

        // d = [f, -] on T
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            for i in 0..tn {
                match (self.g_dt(&tb(i)), self.g_bracket(&self.f_class, &tb(i))) {
                    (Some(a), Some(b)) => {
                        if a != b {
                            pass = false;
                            wit = self.t_space.name(i).to_string();
                            break;
                        }
                    }
                    _ => skipped += 1,
                }
            }
            rep.push(CheckResult::new("differential-is-bracket-with-f", pass, wit).with_skipped(skipped));
        }

        // d is a derivation of the product
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'der: for i in 0..tn {
                for j in 0..tn {
                    let lhs = self.g_prod(&tb(i), &tb(j)).and_then(|v| self.g_dt(&v));
                    let r1 = self.g_dt(&tb(i)).and_then(|v| self.g_prod(&v, &tb(j)));
                    let r2 = self.g_dt(&tb(j)).and_then(|v| self.g_prod(&tb(i), &v));
                    match (lhs, r1, r2) {
                        (Some(l), Some(a), Some(b)) => {
                            let s = neg_one_pow(self.t_space.par(i) as i64);
                            if l != a.plus(&b.scaled(&s)) {
                                pass = false;
                                wit = format!("({}, {})", self.t_space.name(i), self.t_space.name(j));
                                break 'der;
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
            rep.push(CheckResult::new("differential-leibniz-product", pass, wit).with_skipped(skipped));
        }

        // Euler identity f = [deg, f]
        {
            let ok = match self.g_bracket(&self.deg_class, &self.f_class) {
                Some(v) => v == self.f_class,
                None => false,
            };
            rep.push(CheckResult::new("euler-identity-f", ok, if ok { "" } else { "f != [deg, f]" }));
        }

        // distinguished class gradings
        {
            let f_ok = self
                .f_class
                .homogeneous_bidegree(&self.t_space)
                .map(|b| b.map(|(d, w)| d == Q::from_int(2) && w == Q::one()).unwrap_or(true))
                .unwrap_or(false);
            rep.push(CheckResult::new("f-class-grading", f_ok, if f_ok { "" } else { "f not (2, 1)" }));
            let g_ok = self
                .deg_class
                .homogeneous_bidegree(&self.t_space)
                .map(|b| b.map(|(d, w)| d == Q::one() && w.is_zero()).unwrap_or(true))
                .unwrap_or(false);
            rep.push(CheckResult::new("deg-class-grading", g_ok, if g_ok { "" } else { "deg not (1, 0)" }));
        }

        // Cartan identity suite
        self.validate_cartan(&mut rep);

        rep
    }

    fn validate_cartan(&self, rep: &mut Report) {
        let tn = self.t_space.dim();
        let on = self.o_space.dim();
        let tb = |i: usize| Vector::basis(i);
        let ob = |i: usize| Vector::basis(i);

        // i_X i_Y = i_{Y∘X}: contraction consumes the leading slots, so the
        // composite contracts by the product in reading order; on the
        // graded-commutative homology product this is the usual statement.
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c1: for x in 0..tn {
                for y in 0..tn {
                    for o in 0..on {
                        let lhs = self.g_i(&tb(y), &ob(o)).and_then(|v| self.g_i(&tb(x), &v));
                        let rhs = self.g_prod(&tb(x), &tb(y)).and_then(|v| self.g_i(&v, &ob(o)));
                        match (lhs, rhs) {
                            (Some(a), Some(b)) => {
                                if a != b {
                                    pass = false;
                                    wit = format!(
                                        "({}, {}, {})",
                                        self.t_space.name(x),
                                        self.t_space.name(y),
                                        self.o_space.name(o)
                                    );
                                    break 'c1;
                                }
                            }
                            _ => skipped += 1,
                        }
                    }
                }
            }
            rep.push(CheckResult::new("cartan-contraction-composes", pass, wit).with_skipped(skipped));
        }

        // [L_X, L_Y] = L_{[X,Y]}  (operator parities: par(L_X) = par(X) + 1)
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c2: for x in 0..tn {
                for y in 0..tn {
                    let px = (self.t_space.par(x) as i64 + 1).rem_euclid(2);
                    let py = (self.t_space.par(y) as i64 + 1).rem_euclid(2);
                    let sign = neg_one_pow(px * py);
                    for o in 0..on {
                        let ab = self.g_l(&tb(y), &ob(o)).and_then(|v| self.g_l(&tb(x), &v));
                        let ba = self.g_l(&tb(x), &ob(o)).and_then(|v| self.g_l(&tb(y), &v));
                        let rhs = self.g_bracket(&tb(x), &tb(y)).and_then(|v| self.g_l(&v, &ob(o)));
                        match (ab, ba, rhs) {
                            (Some(a), Some(b), Some(r)) => {
                                let lhs = a.minus(&b.scaled(&sign));
                                if lhs != r {
                                    pass = false;
                                    wit = format!(
                                        "({}, {}, {})",
                                        self.t_space.name(x),
                                        self.t_space.name(y),
                                        self.o_space.name(o)
                                    );
                                    break 'c2;
                                }
                            }
                            _ => skipped += 1,
                        }
                    }
                }
            }
            rep.push(CheckResult::new("cartan-lie-homomorphism", pass, wit).with_skipped(skipped));
        }

        // L_X i_Y + (-1)^{|X|} i_X L_Y = L_{X∘Y}
        // (with i_X L_Y, not i_Y L_X: the latter forces L to vanish on
        // specializing X to the unit class, so it cannot be the intended
        // reading; this form is the module-derivation axiom.)
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c3: for x in 0..tn {
                for y in 0..tn {
                    let s = neg_one_pow(self.t_space.par(x) as i64);
                    for o in 0..on {
                        let t1 = self.g_i(&tb(y), &ob(o)).and_then(|v| self.g_l(&tb(x), &v));
                        let t2 = self.g_l(&tb(y), &ob(o)).and_then(|v| self.g_i(&tb(x), &v));
                        let rhs = self.g_prod(&tb(x), &tb(y)).and_then(|v| self.g_l(&v, &ob(o)));
                        match (t1, t2, rhs) {
                            (Some(a), Some(b), Some(r)) => {
                                if a.plus(&b.scaled(&s)) != r {
                                    pass = false;
                                    wit = format!(
                                        "({}, {}, {})",
                                        self.t_space.name(x),
                                        self.t_space.name(y),
                                        self.o_space.name(o)
                                    );
                                    break 'c3;
                                }
                            }
                            _ => skipped += 1,
                        }
                    }
                }
            }
            rep.push(CheckResult::new("cartan-lie-contraction-mixed", pass, wit).with_skipped(skipped));
        }

        // [i_X, L_Y] = i_{[X,Y]}  (par(i_X) = par X, par(L_Y) = par Y + 1)
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c4: for x in 0..tn {
                for y in 0..tn {
                    let px = self.t_space.par(x) as i64;
                    let py = (self.t_space.par(y) as i64 + 1).rem_euclid(2);
                    let sign = neg_one_pow(px * py);
                    for o in 0..on {
                        let ab = self.g_l(&tb(y), &ob(o)).and_then(|v| self.g_i(&tb(x), &v));
                        let ba = self.g_i(&tb(x), &ob(o)).and_then(|v| self.g_l(&tb(y), &v));
                        let rhs = self.g_bracket(&tb(x), &tb(y)).and_then(|v| self.g_i(&v, &ob(o)));
                        match (ab, ba, rhs) {
                            (Some(a), Some(b), Some(r)) => {
                                if a.minus(&b.scaled(&sign)) != r {
                                    pass = false;
                                    wit = format!(
                                        "({}, {}, {})",
                                        self.t_space.name(x),
                                        self.t_space.name(y),
                                        self.o_space.name(o)
                                    );
                                    break 'c4;
                                }
                            }
                            _ => skipped += 1,
                        }
                    }
                }
            }
            rep.push(CheckResult::new("cartan-contraction-lie-bracket", pass, wit).with_skipped(skipped));
        }

        // [B, i_X] = -L_X
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c5: for x in 0..tn {
                let sx = neg_one_pow(self.t_space.par(x) as i64);
                for o in 0..on {
                    let bi = self.g_i(&tb(x), &ob(o)).and_then(|v| self.g_b(&v));
                    let ib = self.g_b(&ob(o)).and_then(|v| self.g_i(&tb(x), &v));
                    let l = self.g_l(&tb(x), &ob(o));
                    match (bi, ib, l) {
                        (Some(a), Some(b), Some(lv)) => {
                            // [B, i_X] = B i_X - (-1)^{1·|X|} i_X B
                            let comm = a.minus(&b.scaled(&sx));
                            if comm != lv.scaled(&Q::from_int(-1)) {
                                pass = false;
                                wit = format!("({}, {})", self.t_space.name(x), self.o_space.name(o));
                                break 'c5;
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
            rep.push(CheckResult::new("cartan-cyclic-contraction", pass, wit).with_skipped(skipped));
        }

        // [B, L_X] = 0
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c6: for x in 0..tn {
                let s = neg_one_pow((self.t_space.par(x) as i64 + 1).rem_euclid(2));
                for o in 0..on {
                    let bl = self.g_l(&tb(x), &ob(o)).and_then(|v| self.g_b(&v));
                    let lb = self.g_b(&ob(o)).and_then(|v| self.g_l(&tb(x), &v));
                    match (bl, lb) {
                        (Some(a), Some(b)) => {
                            if !a.minus(&b.scaled(&s)).is_zero() {
                                pass = false;
                                wit = format!("({}, {})", self.t_space.name(x), self.o_space.name(o));
                                break 'c6;
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
            rep.push(CheckResult::new("cartan-cyclic-lie-commute", pass, wit).with_skipped(skipped));
        }

        // L_f = -d_O
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            for o in 0..on {
                match (self.g_l(&self.f_class, &ob(o)), self.g_do(&ob(o))) {
                    (Some(a), Some(b)) => {
                        if a != b.scaled(&Q::from_int(-1)) {
                            pass = false;
                            wit = self.o_space.name(o).to_string();
                            break;
                        }
                    }
                    _ => skipped += 1,
                }
            }
            rep.push(CheckResult::new("cartan-lie-of-f-is-minus-d", pass, wit).with_skipped(skipped));
        }

        // [d, i_X] = i_{dX} and [d, L_X] = L_{-dX}
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c8: for x in 0..tn {
                let sx = neg_one_pow(self.t_space.par(x) as i64);
                for o in 0..on {
                    let di = self.g_i(&tb(x), &ob(o)).and_then(|v| self.g_do(&v));
                    let id = self.g_do(&ob(o)).and_then(|v| self.g_i(&tb(x), &v));
                    let rhs = self.g_dt(&tb(x)).and_then(|v| self.g_i(&v, &ob(o)));
                    match (di, id, rhs) {
                        (Some(a), Some(b), Some(r)) => {
                            if a.minus(&b.scaled(&sx)) != r {
                                pass = false;
                                wit = format!("({}, {})", self.t_space.name(x), self.o_space.name(o));
                                break 'c8;
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
            rep.push(CheckResult::new("differential-contraction-morphism", pass, wit).with_skipped(skipped));
        }
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            'c9: for x in 0..tn {
                let s = neg_one_pow((self.t_space.par(x) as i64 + 1).rem_euclid(2));
                for o in 0..on {
                    let dl = self.g_l(&tb(x), &ob(o)).and_then(|v| self.g_do(&v));
                    let ld = self.g_do(&ob(o)).and_then(|v| self.g_l(&tb(x), &v));
                    let rhs = self
                        .g_dt(&tb(x))
                        .and_then(|v| self.g_l(&v, &ob(o)))
                        .map(|v| v.scaled(&Q::from_int(-1)));
                    match (dl, ld, rhs) {
                        (Some(a), Some(b), Some(r)) => {
                            if a.minus(&b.scaled(&s)) != r {
                                pass = false;
                                wit = format!("({}, {})", self.t_space.name(x), self.o_space.name(o));
                                break 'c9;
                            }
                        }
                        _ => skipped += 1,
                    }
                }
            }
            rep.push(CheckResult::new("differential-lie-morphism", pass, wit).with_skipped(skipped));
        }

        // operator identity [L_deg, d_O] = d_O
        {
            let (mut pass, mut skipped, mut wit) = (true, 0usize, String::new());
            for o in 0..on {
                let ld = self.g_do(&ob(o)).and_then(|v| self.g_l(&self.deg_class, &v));
                let dl = self.g_l(&self.deg_class, &ob(o)).and_then(|v| self.g_do(&v));
                match (ld, dl) {
                    (Some(a), Some(b)) => {
                        // deg class is odd as an element, L_deg is even: plain
                        // commutator L∘d - d∘L
                        let comm = a.minus(&b);
                        match self.g_do(&ob(o)) {
                            Some(d) => {
                                if comm != d {
                                    pass = false;
                                    wit = self.o_space.name(o).to_string();
                                    break;
                                }
                            }
                            None => skipped += 1,
                        }
                    }
                    _ => skipped += 1,
                }
            }
            rep.push(CheckResult::new("weight-operator-commutator", pass, wit).with_skipped(skipped));
        }
    }

    pub fn validate_strict(&self) -> Result<Report> {
        let rep = self.validate();
        if let Some(c) = rep.first_failure() {
            return Err(Error::GateFailed {
                stage: "calculus",
                witness: Witness::detail(format!("{}: {}", c.name, c.witness)),
            });
        }
        Ok(rep)
    }
}

/// The graded Jacobian ring: homology of (T, d) with induced product.
#[derive(Debug, Clone)]
pub struct JacobianRing {
    pub splitting: Splitting,
    /// Class vectors in T, unit first.
    pub class_reps: Vec<Vector>,
    pub space: GradedBasisSpace,
    /// Structure constants: product[i][j] = coordinates of class i ∘ class j.
    pub product: OpTable,
    pub l_a: usize,
    /// Degrees d_i and weights q_i (weights relative to the unit class).
    pub degs: Vec<Q>,
    pub wts: Vec<Q>,
}

/// Certificate that contraction with the volume class is a quasi-isomorphism.
#[derive(Debug, Clone)]
pub struct IsoCertificate {
    /// v_i = i_{X_i} v1 as vectors in O, indexed like the Jacobian basis.
    pub v_basis: Vec<Vector>,
    /// Coordinates of [v_i] in the O-homology basis (invertible square matrix).
    pub matrix: Vec<Vector>,
    pub o_splitting: Splitting,
    /// Indices of certified O-homology classes.
    pub o_classes: Vec<usize>,
}

pub fn jacobian_ring(pkg: &CalculusPackage) -> Result<JacobianRing> {
    let split = Splitting::new(&pkg.d_t, "calculus")?;
    // certified classes only
    let mut class_idx: Vec<usize> = (0..split.reps.len())
        .filter(|&k| pkg.stratum_certified(split.homology_space.wt(k)))
        .collect();
    // put the unit class first
    let unit_coords = split.coords.apply(&pkg.unit_class);
    if unit_coords.is_zero() {
        return Err(Error::Invalid { stage: "calculus", message: "unit class is a boundary".into() });
    }
    let lead = *unit_coords.entries.keys().next().unwrap();
    class_idx.retain(|&k| k != lead);
    // representative vectors: unit first, then the rest
    let mut class_reps = vec![pkg.unit_class.clone()];
    for &k in &class_idx {
        class_reps.push(split.reps[k].clone());
    }
    let l_a = class_reps.len();
    let mut degs = Vec::with_capacity(l_a);
    let mut wts = Vec::with_capacity(l_a);
    let mut basis = Vec::with_capacity(l_a);
    for (n, v) in class_reps.iter().enumerate() {
        let (d, w) = v
            .homogeneous_bidegree(&pkg.t_space)?
            .ok_or_else(|| Error::Invalid { stage: "calculus", message: "zero class representative".into() })?;
        let par = pkg.t_par(v);
        basis.push(BasisElt::new(format!("X{}", n + 1), d.clone(), w.clone(), par));
        degs.push(d);
        wts.push(w);
    }
    let space = GradedBasisSpace::new("Jac", basis)?;

    // change of coordinates: homology coords -> class coords
    // build matrix: coords of each class rep, solve for products
    let rep_coords: Vec<Vector> = class_reps.iter().map(|v| split.coords.apply(v)).collect();

    let mut product = OpTable::zero(&space, &space, &space);
    for i in 0..l_a {
        for j in 0..l_a {
            let prod_vec = pkg
                .g_prod(&class_reps[i], &class_reps[j])
                .ok_or_else(|| Error::TruncationUnstable {
                    stage: "calculus",
                    witness: Witness::detail(format!("class product X{} X{} leaves the window", i + 1, j + 1)),
                })?;
            let (coords, _prim) = split.reduce(&prod_vec, "calculus")?;
            // express coords over the class-rep coordinate vectors
            let sol = solve_coords(&rep_coords, &coords).ok_or_else(|| Error::ProductNotDescending {
                witness: Witness::detail(format!(
                    "product X{} X{} involves uncertified classes",
                    i + 1,
                    j + 1
                )),
            })?;
            let mut v = Vector::zero();
            for (k, c) in sol.into_iter().enumerate() {
                v.set(k, c);
            }
            product.set(i, j, v);
        }
    }

    Ok(JacobianRing { splitting: split, class_reps, space, product, l_a, degs, wts })
}

/// Solve v = Σ c_k basis_k in the homology-coordinate space (sparse, exact).
fn solve_coords(basis: &[Vector], v: &Vector) -> Option<Vec<Q>> {
    // collect all indices
    let mut rows: Vec<usize> = v.entries.keys().copied().collect();
    for b in basis {
        rows.extend(b.entries.keys().copied());
    }
    rows.sort_unstable();
    rows.dedup();
    let dense: Vec<Vec<Q>> = basis
        .iter()
        .map(|b| rows.iter().map(|&r| b.get(r)).collect())
        .collect();
    let target: Vec<Q> = rows.iter().map(|&r| v.get(r)).collect();
    // small dense solve by elimination
    let n = basis.len();
    let m = rows.len();
    let mut a = dense;
    let mut t = target;
    let mut coef = vec![Q::zero(); n];
    let mut used = vec![false; m];
    let mut piv: Vec<Option<usize>> = vec![None; n];
    for j in 0..n {
        for pj in 0..j {
            if let Some(p) = piv[pj] {
                let f = a[j][p].clone();
                if !f.is_zero() {
                    let s = f / a[pj][p].clone();
                    let pc = a[pj].clone();
                    for r in 0..m {
                        let x = a[j][r].clone() - &s * &pc[r];
                        a[j][r] = x;
                    }
                }
            }
        }
        piv[j] = (0..m).find(|&r| !used[r] && !a[j][r].is_zero());
        if let Some(p) = piv[j] {
            used[p] = true;
        }
    }
    // triangular solve on the reduced columns, then convert: we redo with
    // explicit tracking for exactness
    let mut a2: Vec<Vec<Q>> = basis
        .iter()
        .map(|b| rows.iter().map(|&r| b.get(r)).collect())
        .collect();
    let mut trans: Vec<Vec<Q>> = (0..n)
        .map(|j| {
            let mut e = vec![Q::zero(); n];
            e[j] = Q::one();
            e
        })
        .collect();
    let mut piv2: Vec<Option<usize>> = vec![None; n];
    let mut used2 = vec![false; m];
    for j in 0..n {
        for pj in 0..j {
            if let Some(p) = piv2[pj] {
                let f = a2[j][p].clone();
                if !f.is_zero() {
                    let s = f / a2[pj][p].clone();
                    let pc = a2[pj].clone();
                    let pt = trans[pj].clone();
                    for r in 0..m {
                        let x = a2[j][r].clone() - &s * &pc[r];
                        a2[j][r] = x;
                    }
                    for r in 0..n {
                        let x = trans[j][r].clone() - &s * &pt[r];
                        trans[j][r] = x;
                    }
                }
            }
        }
        piv2[j] = (0..m).find(|&r| !used2[r] && !a2[j][r].is_zero());
        if let Some(p) = piv2[j] {
            used2[p] = true;
        }
    }
    for j in 0..n {
        if let Some(p) = piv2[j] {
            let f = t[p].clone();
            if !f.is_zero() {
                let s = &f / &a2[j][p].clone();
                for r in 0..m {
                    let x = t[r].clone() - &s * &a2[j][r];
                    t[r] = x;
                }
                for r in 0..n {
                    let x = coef[r].clone() + &s * &trans[j][r];
                    coef[r] = x;
                }
            }
        }
    }
    if t.iter().any(|x| !x.is_zero()) {
        return None;
    }
    Some(coef)
}

pub fn contraction_iso_check(pkg: &CalculusPackage, cy: &CyData, jac: &JacobianRing) -> Result<IsoCertificate> {
    // chain map: d_O(i_X v1) = i_{d_T X} v1 on T-basis (where trusted)
    for x in 0..pkg.t_space.dim() {
        let e = Vector::basis(x);
        let lhs = pkg.g_i(&e, &cy.v1).and_then(|v| pkg.g_do(&v));
        let rhs = pkg.g_dt(&e).and_then(|v| pkg.g_i(&v, &cy.v1));
        if let (Some(a), Some(b)) = (lhs, rhs) {
            if a != b {
                return Err(Error::NotChainMap {
                    witness: Witness::new(&[pkg.t_space.name(x)], "d(i_X v1) != i_{dX} v1"),
                });
            }
        }
    }
    let o_split = Splitting::new(&pkg.d_o, "calculus")?;
    let o_classes: Vec<usize> = (0..o_split.reps.len())
        .filter(|&k| pkg.stratum_certified(o_split.homology_space.wt(k)))
        .collect();
    if o_classes.len() != jac.l_a {
        return Err(Error::NotQuasiIso {
            witness: Witness::detail(format!(
                "certified form-side homology rank {} != Jacobian rank {}",
                o_classes.len(),
                jac.l_a
            )),
        });
    }
    // v_i = i_{X_i} v1, reduce to O-homology coordinates
    let mut v_basis = Vec::new();
    let mut matrix = Vec::new();
    for (n, rep) in jac.class_reps.iter().enumerate() {
        let v = pkg.g_i(rep, &cy.v1).ok_or_else(|| Error::TruncationUnstable {
            stage: "calculus",
            witness: Witness::detail(format!("i_(X{}) v1 leaves the window", n + 1)),
        })?;
        let (coords, _) = o_split.reduce(&v, "calculus")?;
        // restrict to certified classes; reject leakage
        let mut dense = Vector::zero();
        for (&k, c) in &coords.entries {
            match o_classes.iter().position(|&kk| kk == k) {
                Some(pos) => dense.set(pos, c.clone()),
                None => {
                    return Err(Error::NotQuasiIso {
                        witness: Witness::detail(format!("i_(X{}) v1 hits an uncertified class", n + 1)),
                    })
                }
            }
        }
        v_basis.push(v);
        matrix.push(dense);
    }
    // invertibility of the square matrix
    if solve_rank(&matrix) != jac.l_a {
        return Err(Error::NotQuasiIso {
            witness: Witness::detail("contraction map is not an isomorphism on homology"),
        });
    }
    Ok(IsoCertificate { v_basis, matrix, o_splitting: o_split, o_classes })
}

fn solve_rank(cols: &[Vector]) -> usize {
    let mut rows: Vec<usize> = Vec::new();
    for c in cols {
        rows.extend(c.entries.keys().copied());
    }
    rows.sort_unstable();
    rows.dedup();
    let mut reduced: Vec<Vec<Q>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    for c in cols {
        let mut dense: Vec<Q> = rows.iter().map(|&r| c.get(r)).collect();
        for (k, rc) in reduced.iter().enumerate() {
            let p = pivots[k];
            if !dense[p].is_zero() {
                let s = &dense[p] / &rc[p].clone();
                for r in 0..dense.len() {
                    let x = dense[r].clone() - &s * &rc[r];
                    dense[r] = x;
                }
            }
        }
        if let Some(p) = dense.iter().position(|x| !x.is_zero()) {
            pivots.push(p);
            reduced.push(dense);
        }
    }
    reduced.len()
}

/// The residue-type pairing on the Jacobian ring, realized through the trace.
#[derive(Debug, Clone)]
pub struct EtaPairing {
    /// matrix[i][j] = η(X_i, X_j).
    pub matrix: Vec<Vec<Q>>,
    pub report: Report,
}

pub fn eta_pairing(pkg: &CalculusPackage, cy: &CyData, jac: &JacobianRing) -> Result<EtaPairing> {
    let l = jac.l_a;
    let mut matrix = vec![vec![Q::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            let prod = pkg
                .g_prod(&jac.class_reps[i], &jac.class_reps[j])
                .ok_or_else(|| Error::TruncationUnstable {
                    stage: "calculus",
                    witness: Witness::detail("η product outside window"),
                })?;
            let contracted = pkg.g_i(&prod, &cy.v1).ok_or_else(|| Error::TruncationUnstable {
                stage: "calculus",
                witness: Witness::detail("η contraction outside window"),
            })?;
            matrix[i][j] = cy.trace_apply(&contracted);
        }
    }
    let mut report = Report::new("eta");
    // graded symmetry
    let mut sym = true;
    let mut wit = String::new();
    'sym: for i in 0..l {
        for j in 0..l {
            let s = neg_one_pow((jac.space.par(i) as i64) * (jac.space.par(j) as i64));
            if matrix[i][j] != &matrix[j][i] * &s {
                sym = false;
                wit = format!("(X{}, X{})", i + 1, j + 1);
                break 'sym;
            }
        }
    }
    report.push(CheckResult::new("eta-graded-symmetric", sym, wit));
    // Frobenius property via structure constants
    let mut frob = true;
    let mut wit = String::new();
    'frob: for i in 0..l {
        for j in 0..l {
            for k in 0..l {
                let mut lhs = Q::zero();
                for (&m, c) in &jac.product.get(i, j).entries {
                    lhs += c * &matrix[m][k];
                }
                let mut rhs = Q::zero();
                for (&m, c) in &jac.product.get(j, k).entries {
                    rhs += c * &matrix[i][m];
                }
                if lhs != rhs {
                    frob = false;
                    wit = format!("(X{}, X{}, X{})", i + 1, j + 1, k + 1);
                    break 'frob;
                }
            }
        }
    }
    report.push(CheckResult::new("eta-frobenius", frob, wit));
    // nondegeneracy
    let cols: Vec<Vector> = (0..l)
        .map(|j| {
            let mut v = Vector::zero();
            for i in 0..l {
                v.set(i, matrix[i][j].clone());
            }
            v
        })
        .collect();
    let nondeg = solve_rank(&cols) == l;
    report.push(CheckResult::new("eta-nondegenerate", nondeg, if nondeg { "" } else { "rank drop" }));
    if !nondeg {
        return Err(Error::Degenerate { witness: Witness::detail("trace functional inadmissible") });
    }
    if !sym || !frob {
        return Err(Error::GateFailed {
            stage: "calculus",
            witness: Witness::detail(report.first_failure().map(|c| c.name.clone()).unwrap_or_default()),
        });
    }
    Ok(EtaPairing { matrix, report })
}

/// Hodge-type bigrading data on the form-side homology.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct HodgeData {
    /// (p, q) per class, in the Jacobian/iso basis order.
    pub pq: Vec<(Q, Q)>,
    /// Hodge numbers per (p, q).
    pub h: BTreeMap<(String, String), usize>,
    /// Exponents multiset (q_i with multiplicity), sorted.
    pub exponents: Vec<Q>,
    /// Weight-normalization shift of the model (eigenvalue of the weight
    /// operator on the volume class).
    pub sigma: Q,
    pub report_names: Vec<String>,
}

pub fn hodge_data(pkg: &CalculusPackage, cy: &CyData, jac: &JacobianRing, iso: &IsoCertificate) -> Result<HodgeData> {
    let l = jac.l_a;
    // exponents: q_i = wt(v_i) - wt(v1); v_i = i_{X_i} v1 has wt = wt(X_i) + wt(v1)
    let wt_v1 = cy
        .v1
        .homogeneous_bidegree(&pkg.o_space)?
        .map(|(_, w)| w)
        .ok_or_else(|| Error::CyHypothesis {
            stage: "calculus",
            check: "volume-class-nonzero",
            witness: Witness::detail("v1 = 0"),
        })?;
    if !wt_v1.is_zero() {
        return Err(Error::CyHypothesis {
            stage: "calculus",
            check: "volume-class-weight-zero",
            witness: Witness::detail(format!("wt(v1) = {wt_v1}")),
        });
    }
    let deg_v1 = cy.v1.homogeneous_bidegree(&pkg.o_space)?.map(|(d, _)| d).unwrap();
    if deg_v1 != cy.w {
        return Err(Error::CyHypothesis {
            stage: "calculus",
            check: "volume-class-degree-w",
            witness: Witness::detail(format!("deg(v1) = {deg_v1}, w = {}", cy.w)),
        });
    }

    // weight operator via the Lie action of the degree class: on v_i it must
    // act (mod exact) by q_i + sigma; sigma is its eigenvalue on v1.
    let o_split = &iso.o_splitting;
    let eig = |v: &Vector| -> Result<Option<Q>> {
        let lv = match pkg.g_l(&pkg.deg_class, v) {
            Some(x) => x,
            None => return Ok(None),
        };
        let (c_v, _) = o_split.reduce(v, "calculus")?;
        let (c_lv, _) = o_split.reduce(&lv, "calculus")?;
        // c_lv must be proportional to c_v
        if c_v.is_zero() {
            return Ok(None);
        }
        let (&k0, a0) = c_v.entries.iter().next().unwrap();
        let lam = &c_lv.get(k0) / a0;
        let mut expect = c_v.clone();
        expect.scale(&lam);
        if expect == c_lv {
            Ok(Some(lam))
        } else {
            Err(Error::HodgePropertyViolated {
                property: "weight-operator-diagonalizable",
                witness: Witness::detail("weight operator not diagonal on a homology class"),
            })
        }
    };
    let sigma = eig(&cy.v1)?.ok_or_else(|| Error::CyHypothesis {
        stage: "calculus",
        check: "weight-operator-on-v1",
        witness: Witness::detail("cannot evaluate the weight operator on v1"),
    })?;

    let mut pq = Vec::with_capacity(l);
    let mut exponents = Vec::with_capacity(l);
    for i in 0..l {
        let v = &iso.v_basis[i];
        let (deg, wt) = v
            .homogeneous_bidegree(&pkg.o_space)?
            .ok_or_else(|| Error::Invalid { stage: "calculus", message: "zero iso image".into() })?;
        let qi = wt; // weights on O are normalized so that wt(v1) = 0
        // operator consistency: L_deg acts by q_i + sigma
        if let Some(lam) = eig(v)? {
            if lam != &qi + &sigma {
                return Err(Error::HodgePropertyViolated {
                    property: "weight-operator-eigenvalues",
                    witness: Witness::detail(format!(
                        "class {}: operator eigenvalue {} vs declared {}",
                        i + 1,
                        lam,
                        &qi + &sigma
                    )),
                });
            }
        }
        if cy.strict && (!qi.is_integer() || !cy.w.is_integer()) {
            return Err(Error::HodgePropertyViolated {
                property: "strict-integer-exponents",
                witness: Witness::detail(format!("q = {qi}, w = {}", cy.w)),
            });
        }
        let p = &(&cy.w + &cy.w) + &qi - &deg + Q::zero();
        pq.push((p, qi.clone()));
        exponents.push(qi);
    }
    exponents.sort();

    // Hodge numbers
    let mut h: BTreeMap<(String, String), usize> = BTreeMap::new();
    for (p, q) in &pq {
        *h.entry((p.to_string(), q.to_string())).or_insert(0) += 1;
    }

    // property (1): h^{p,q} = 0 for p < 0 or q < 0
    for (p, q) in &pq {
        if p.is_negative() || q.is_negative() {
            return Err(Error::HodgePropertyViolated {
                property: "nonnegative-bigrading",
                witness: Witness::detail(format!("(p, q) = ({p}, {q})")),
            });
        }
    }
    // property (2): h^{w,0} = 1
    let count_w0 = pq.iter().filter(|(p, q)| *p == cy.w && q.is_zero()).count();
    if count_w0 != 1 {
        return Err(Error::HodgePropertyViolated {
            property: "top-piece-one-dimensional",
            witness: Witness::detail(format!("h^(w,0) = {count_w0}")),
        });
    }
    // property (3): h^{w-p,q} = h^{p,w-q}
    for (p, q) in &pq {
        let a = pq.iter().filter(|(pp, qq)| *pp == &cy.w - p && qq == q).count();
        let b = pq.iter().filter(|(pp, qq)| pp == p && *qq == &cy.w - q).count();
        if a != b {
            return Err(Error::HodgePropertyViolated {
                property: "hodge-duality",
                witness: Witness::detail(format!("at (p, q) = ({p}, {q}): {a} vs {b}")),
            });
        }
    }
    // exponents duality: multiset {q} = {w - q}
    let mut dual: Vec<Q> = exponents.iter().map(|q| &cy.w - q).collect();
    dual.sort();
    if dual != exponents {
        return Err(Error::HodgePropertyViolated {
            property: "exponent-duality",
            witness: Witness::detail("exponents are not symmetric under q -> w - q"),
        });
    }

    Ok(HodgeData {
        pq,
        h,
        exponents,
        sigma,
        report_names: vec![
            "nonnegative-bigrading".into(),
            "top-piece-one-dimensional".into(),
            "hodge-duality".into(),
            "exponent-duality".into(),
        ],
    })
}

/// The pairing on the form-side classes induced from η through the iso.
#[derive(Debug, Clone)]
pub struct JPairing {
    /// matrix[i][j] = J(v_i, v_j) in the iso basis.
    pub matrix: Vec<Vec<Q>>,
}

pub fn j_pairing(pkg: &CalculusPackage, cy: &CyData, jac: &JacobianRing, eta: &EtaPairing, hodge: &HodgeData) -> Result<JPairing> {
    let l = jac.l_a;
    let mut matrix = vec![vec![Q::zero(); l]; l];
    for i in 0..l {
        for j in 0..l {
            // sign (-1)^{w·|Y|}: must be an integer exponent
            let e = &cy.w * &Q::from_int(jac.space.par(j) as i64);
            let s = match e.pow_sign() {
                Some(1) => Q::one(),
                Some(_) => Q::from_int(-1),
                None => {
                    return Err(Error::Invalid {
                        stage: "calculus",
                        message: format!("pairing sign exponent {e} is not an integer"),
                    })
                }
            };
            matrix[i][j] = &eta.matrix[i][j] * &s;
        }
    }
    // perfectness on the bigraded pieces: J(v_i, v_j) != 0 requires
    // (p_j, q_j) = (w - p_i, w - q_i); and the pairing must be nondegenerate.
    for i in 0..l {
        for j in 0..l {
            if !matrix[i][j].is_zero() {
                let (pi, qi) = &hodge.pq[i];
                let (pj, qj) = &hodge.pq[j];
                if *pj != &cy.w - pi || *qj != &cy.w - qi {
                    return Err(Error::NotPerfect {
                        witness: Witness::detail(format!(
                            "nonzero pairing between ({pi}, {qi}) and ({pj}, {qj})"
                        )),
                    });
                }
            }
        }
    }
    let cols: Vec<Vector> = (0..l)
        .map(|j| {
            let mut v = Vector::zero();
            for i in 0..l {
                v.set(i, matrix[i][j].clone());
            }
            v
        })
        .collect();
    if solve_rank(&cols) != l {
        return Err(Error::NotPerfect { witness: Witness::detail("pairing matrix is singular") });
    }
    let _ = pkg;
    Ok(JPairing { matrix })
}
