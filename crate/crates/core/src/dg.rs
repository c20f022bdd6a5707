//! Finite-basis presentations of graded dg algebras.
//!
//! A [`DgAlgebraSpec`] is structure constants, a differential, a unit index
//! and a Calabi-Yau dimension. Validation checks each axiom separately and
//! reports witnesses; the equivalence of the axiom checks with vanishing of
//! the self-bracket of the multiplication cochain is an integration test in
//! the hochschild module.

use crate::error::{Error, Result};
use crate::graded::{GradedBasisSpace, LinMap, Vector};
use crate::report::{CheckResult, Report};
use crate::scalar::Q;
use crate::sign::neg_one_pow_q;
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DgAlgebraSpec {
    pub space: GradedBasisSpace,
    /// mult[i][j] = e_i * e_j expanded in the basis.
    pub mult: Vec<Vec<Vector>>,
    /// Differential of degree +1 (and weight +1 in the degree-equals-weight
    /// convention used for algebras).
    pub diff: LinMap,
    pub unit_index: usize,
    /// Calabi-Yau dimension; integer for honest dg algebras.
    pub cy_dimension: Q,
    pub connected: bool,
}

impl DgAlgebraSpec {
    pub fn product(&self, a: &Vector, b: &Vector) -> Vector {
        let mut out = Vector::zero();
        for (&i, x) in &a.entries {
            for (&j, y) in &b.entries {
                out.add_scaled(&self.mult[i][j], &(x * y));
            }
        }
        out
    }

    pub fn unit_vector(&self) -> Vector {
        Vector::basis(self.unit_index)
    }

    pub fn d(&self, v: &Vector) -> Vector {
        self.diff.apply(v)
    }

    pub fn dim(&self) -> usize {
        self.space.dim()
    }

    /// Indices of the augmentation complement (all non-unit basis elements).
    pub fn reduced_indices(&self) -> Vec<usize> {
        (0..self.dim()).filter(|&i| i != self.unit_index).collect()
    }

    /// Full axiom validation; every check is reported, nothing is assumed.
    pub fn validate(&self) -> Report {
        let mut report = Report::new("dg-algebra");
        let n = self.dim();
        let sp = &self.space;

        // grading sanity: weights equal degrees, parities match
        let mut ok = true;
        let mut wit = String::new();
        for b in &sp.basis {
            if b.wt != b.deg || (b.par as i64).rem_euclid(2) != b.deg.as_int().map(|d| d.rem_euclid(2)).unwrap_or(-1) {
                ok = false;
                wit = format!("basis element {} has (deg, wt, par) = ({}, {}, {})", b.name, b.deg, b.wt, b.par);
                break;
            }
        }
        report.push(CheckResult::new("grading-integer-weights-match-degrees", ok, wit));

        let nonneg = sp.basis.iter().all(|b| !b.deg.is_negative());
        report.push(CheckResult::new(
            "non-negatively-graded",
            nonneg,
            if nonneg { String::new() } else { "negative degree present".into() },
        ));

        // unit axioms
        let mut ok = true;
        let mut wit = String::new();
        if !sp.deg(self.unit_index).is_zero() {
            ok = false;
            wit = "unit has nonzero degree".into();
        }
        for i in 0..n {
            let e = Vector::basis(i);
            if self.product(&self.unit_vector(), &e) != e || self.product(&e, &self.unit_vector()) != e {
                ok = false;
                wit = format!("unit axiom fails on {}", sp.name(i));
                break;
            }
        }
        report.push(CheckResult::new("two-sided-unit", ok, wit));

        let du = self.d(&self.unit_vector());
        report.push(CheckResult::new(
            "unit-closed",
            du.is_zero(),
            if du.is_zero() { String::new() } else { "d(1) != 0".into() },
        ));

        // multiplication degree homogeneity
        let mut ok = true;
        let mut wit = String::new();
        'outer: for i in 0..n {
            for j in 0..n {
                let expect = sp.deg(i) + sp.deg(j);
                for (&k, _) in &self.mult[i][j].entries {
                    if *sp.deg(k) != expect {
                        ok = false;
                        wit = format!("deg({} * {}) inhomogeneous", sp.name(i), sp.name(j));
                        break 'outer;
                    }
                }
            }
        }
        report.push(CheckResult::new("product-degree-homogeneous", ok, wit));

        // d^2 = 0
        let dd = self.diff.compose(&self.diff);
        let ok = dd.is_zero();
        let wit = if ok {
            String::new()
        } else {
            let j = dd.cols.iter().position(|c| !c.is_zero()).unwrap();
            format!("d(d({})) != 0", sp.name(j))
        };
        report.push(CheckResult::new("differential-squares-to-zero", ok, wit));

        // Leibniz rule d(ab) = (da)b + (-1)^{|a|} a (db)
        let mut ok = true;
        let mut wit = String::new();
        'leib: for i in 0..n {
            for j in 0..n {
                let lhs = self.d(&self.mult[i][j]);
                let mut rhs = self.product(&self.d(&Vector::basis(i)), &Vector::basis(j));
                let sign = neg_one_pow_q(sp.deg(i));
                rhs.add_scaled(&self.product(&Vector::basis(i), &self.d(&Vector::basis(j))), &sign);
                if lhs != rhs {
                    ok = false;
                    wit = format!("Leibniz fails on ({}, {})", sp.name(i), sp.name(j));
                    break 'leib;
                }
            }
        }
        report.push(CheckResult::new("leibniz-rule", ok, wit));

        // associativity
        let mut ok = true;
        let mut wit = String::new();
        'assoc: for i in 0..n {
            for j in 0..n {
                for k in 0..n {
                    let lhs = self.product(&self.mult[i][j], &Vector::basis(k));
                    let rhs = self.product(&Vector::basis(i), &self.mult[j][k]);
                    if lhs != rhs {
                        ok = false;
                        wit = format!("associativity fails on ({}, {}, {})", sp.name(i), sp.name(j), sp.name(k));
                        break 'assoc;
                    }
                }
            }
        }
        report.push(CheckResult::new("associativity", ok, wit));

        // connectedness: H^0(A, d) = k·[1]
        if self.connected {
            let h0 = self.h0_dim();
            report.push(CheckResult::new(
                "connected",
                h0 == Some(1),
                match h0 {
                    Some(1) => String::new(),
                    Some(k) => format!("H^0 has dimension {k}"),
                    None => "H^0 undefined (d not a complex)".into(),
                },
            ));
        }

        report
    }

    fn h0_dim(&self) -> Option<usize> {
        let s = crate::homology::Splitting::new(&self.diff, "dg-algebra").ok()?;
        Some(
            s.homology_space
                .basis
                .iter()
                .filter(|b| b.deg.is_zero())
                .count(),
        )
    }

    pub fn validate_strict(&self) -> Result<()> {
        let r = self.validate();
        if let Some(c) = r.first_failure() {
            return Err(Error::GateFailed {
                stage: "dg-algebra",
                witness: crate::error::Witness::detail(format!("{}: {}", c.name, c.witness)),
            });
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn valid_specs_pass_all_axioms() {
        for a in [
            models::trivial_algebra(),
            models::exterior_algebra(1),
            models::exterior_algebra(2),
            models::truncated_polynomial_algebra(),
            models::two_stage_acyclic_algebra(),
        ] {
            let r = a.validate();
            assert!(r.all_pass(), "{:?}", r.first_failure());
        }
    }

    #[test]
    fn corrupted_d2_detected() {
        let a = models::corrupted_d_squared();
        let r = a.validate();
        assert!(r.passes("leibniz-rule"));
        assert!(r.passes("associativity"));
        assert!(!r.passes("differential-squares-to-zero"));
    }

    #[test]
    fn corrupted_leibniz_detected() {
        let a = models::corrupted_leibniz();
        let r = a.validate();
        assert!(r.passes("differential-squares-to-zero"));
        assert!(r.passes("associativity"));
        assert!(!r.passes("leibniz-rule"));
    }

    #[test]
    fn corrupted_associativity_detected() {
        let a = models::corrupted_associativity();
        let r = a.validate();
        assert!(r.passes("differential-squares-to-zero"));
        assert!(r.passes("leibniz-rule"));
        assert!(!r.passes("associativity"));
        // witness names the offending triple
        let c = r.first_failure().unwrap();
        assert!(c.witness.contains("a") && c.witness.contains("b"));
    }
}
