//! Gate tests for the calculus layer on the bundled packages: the full
//! identity suite, Jacobian rings, the residue pairing and the Hodge data.

use dgfrob_core::calculus::{self, CalculusPackage, CyData};
use dgfrob_core::graded::Vector;
use dgfrob_core::models;
use dgfrob_core::scalar::{q, qq, Q};

fn lg() -> (CalculusPackage, CyData) {
    models::lg_cubic_package(10)
}

#[test]
fn trivial_package_validates() {
    let (pkg, _) = models::trivial_package();
    let rep = pkg.validate();
    assert!(rep.all_pass(), "failed: {:?}", rep.first_failure());
}

#[test]
fn lg_cubic_package_validates() {
    let (pkg, _) = lg();
    let rep = pkg.validate();
    assert!(rep.all_pass(), "failed: {:?}", rep.first_failure());
}

#[test]
fn corrupting_the_cyclic_operator_is_detected_with_witness() {
    // flip the sign of B: the [B, i_X] = -L_X identity must fail and name a witness
    let (mut pkg, _) = lg();
    pkg.b_op = pkg.b_op.scaled(&q(-1));
    let rep = pkg.validate();
    assert!(!rep.all_pass());
    let fail = rep
        .checks
        .iter()
        .find(|c| c.name == "cartan-cyclic-contraction")
        .unwrap();
    assert!(!fail.pass);
    assert!(!fail.witness.is_empty());
}

#[test]
fn trivial_jacobian_ring() {
    let (pkg, cy) = models::trivial_package();
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    assert_eq!(jac.l_a, 1);
    assert_eq!(jac.wts, vec![q(0)]);
    // unit is a unit of the induced product
    assert_eq!(jac.product.get(0, 0), &Vector::basis(0));
    let iso = calculus::contraction_iso_check(&pkg, &cy, &jac).unwrap();
    assert_eq!(iso.v_basis.len(), 1);
    // [1] maps to v1
    assert_eq!(iso.v_basis[0], cy.v1);
}

#[test]
fn lg_jacobian_ring_has_rank_two() {
    // classical two-dimensional Jacobian ring of the cubic member
    let (pkg, cy) = lg();
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    assert_eq!(jac.l_a, 2);
    // X1 = [1], X2 = [x]; X2∘X2 = [x^2] = 0 in the ring (it is exact)
    let sq = jac.product.get(1, 1);
    assert!(sq.is_zero(), "x∘x should vanish in the Jacobian ring, got {:?}", sq);
    // weights are the exponents 0 and 1/3
    assert_eq!(jac.wts, vec![q(0), qq(1, 3)]);
    let iso = calculus::contraction_iso_check(&pkg, &cy, &jac).unwrap();
    assert_eq!(iso.o_classes.len(), 2);
}

#[test]
fn lg_iso_rejects_exact_volume_class() {
    // replace v1 by an exact form: the contraction map dies on homology
    let (pkg, mut cy) = lg();
    // d_O(g_0) = 3 f_2, so f_2 is exact; it also has nonzero weight so the
    // volume-class gates catch it; use the iso check directly on a doctored
    // package with weight window via jacobian ring to reach NotQuasiIso:
    // easiest honest check: v1 := f_2 fails weight-zero in hodge_data and
    // fails span in the iso (image lands in the zero class).
    let f2 = pkg.o_space.index_of("f2").unwrap();
    cy.v1 = Vector::basis(f2);
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    let res = calculus::contraction_iso_check(&pkg, &cy, &jac);
    assert!(res.is_err(), "exact volume class must be rejected");
}

#[test]
fn lg_eta_is_antidiagonal() {
    let (pkg, cy) = lg();
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    let eta = calculus::eta_pairing(&pkg, &cy, &jac).unwrap();
    assert!(eta.report.all_pass());
    assert_eq!(eta.matrix[0][0], q(0));
    assert_eq!(eta.matrix[0][1], q(1));
    assert_eq!(eta.matrix[1][0], q(1));
    assert_eq!(eta.matrix[1][1], q(0));
}

#[test]
fn trivial_eta_is_the_trace_of_the_volume() {
    let (pkg, cy) = models::trivial_package();
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    let eta = calculus::eta_pairing(&pkg, &cy, &jac).unwrap();
    assert_eq!(eta.matrix, vec![vec![q(1)]]);
}

#[test]
fn lg_hodge_data_exponents_and_duality() {
    let (pkg, cy) = lg();
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    let iso = calculus::contraction_iso_check(&pkg, &cy, &jac).unwrap();
    let hodge = calculus::hodge_data(&pkg, &cy, &jac, &iso).unwrap();
    assert_eq!(hodge.exponents, vec![q(0), qq(1, 3)]);
    // v1 sits in the (w, 0) piece
    assert_eq!(hodge.pq[0], (qq(1, 3), q(0)));
    // its dual sits in (0, w)
    assert_eq!(hodge.pq[1], (q(0), qq(1, 3)));
    // the weight normalization shift of this model
    assert_eq!(hodge.sigma, qq(1, 3));
}

#[test]
fn trivial_hodge_data() {
    let (pkg, cy) = models::trivial_package();
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    let iso = calculus::contraction_iso_check(&pkg, &cy, &jac).unwrap();
    let hodge = calculus::hodge_data(&pkg, &cy, &jac, &iso).unwrap();
    assert_eq!(hodge.exponents, vec![q(0)]);
    assert_eq!(hodge.pq, vec![(q(0), q(0))]);
}

#[test]
fn strict_mode_rejects_fractional_exponents() {
    let (pkg, mut cy) = lg();
    cy.strict = true;
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    let iso = calculus::contraction_iso_check(&pkg, &cy, &jac).unwrap();
    assert!(calculus::hodge_data(&pkg, &cy, &jac, &iso).is_err());
}

#[test]
fn j_pairing_perfect_and_volume_rescale_invariant() {
    let (pkg, cy) = lg();
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    let iso = calculus::contraction_iso_check(&pkg, &cy, &jac).unwrap();
    let hodge = calculus::hodge_data(&pkg, &cy, &jac, &iso).unwrap();
    let eta = calculus::eta_pairing(&pkg, &cy, &jac).unwrap();
    let j = calculus::j_pairing(&pkg, &cy, &jac, &eta, &hodge).unwrap();
    assert_eq!(j.matrix[0][1], q(1));

    // rescale v1 by 7 (the trace co-rescales: it is a square-of-volume datum)
    let mut cy7 = cy.clone();
    cy7.v1 = cy.v1.scaled(&q(7));
    cy7.trace = cy.trace.iter().map(|(i, c)| (*i, c * &q(7))).collect();
    let eta7 = calculus::eta_pairing(&pkg, &cy7, &jac).unwrap();
    // η rescales quadratically ...
    assert_eq!(eta7.matrix[0][1], q(49));
    // ... while J on the rescaled iso basis is unchanged: J(i_X v1', i_Y v1')
    // = 49 J(i_X v1, i_Y v1) and the basis vectors absorbed 7 each.
    let iso7 = calculus::contraction_iso_check(&pkg, &cy7, &jac).unwrap();
    let hodge7 = calculus::hodge_data(&pkg, &cy7, &jac, &iso7).unwrap();
    let j7 = calculus::j_pairing(&pkg, &cy7, &jac, &eta7, &hodge7).unwrap();
    let scale = q(49);
    for i in 0..2 {
        for jj in 0..2 {
            // matrix entries are J(v_i', v_j') = 49 J(v_i, v_j): as a form on
            // fixed elements of the form space J is unchanged since v' = 7v.
            assert_eq!(j7.matrix[i][jj], &j.matrix[i][jj] * &scale);
        }
    }
}

#[test]
fn degenerate_trace_rejected() {
    let (pkg, mut cy) = lg();
    cy.trace = vec![]; // zero functional
    let jac = calculus::jacobian_ring(&pkg).unwrap();
    assert!(matches!(
        calculus::eta_pairing(&pkg, &cy, &jac),
        Err(dgfrob_core::Error::Degenerate { .. })
    ));
}
