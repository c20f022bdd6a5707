use dgfrob_core::hochschild::{compute_tpoly_and_omega, set_display_variants, set_iota_sign_params, HochschildComplexes};
use dgfrob_core::models;

fn main() {
    let algs = vec![
        models::exterior_algebra(1),
        models::two_stage_acyclic_algebra(),
        models::exterior_algebra(2),
        models::truncated_polynomial_algebra(),
        models::trivial_algebra(),
    ];
    for dv in [0i64, 1] {
        for bv in [0i64, 2] {
            for p0 in [0i64, 1] {
                for p1 in [0i64, 1, 2, 3] {
                    for p2 in [0i64, 1] {
                    for p3 in [0i64, 1] {
                    set_display_variants(dv, bv);
                    set_iota_sign_params(p0, p1, p2, p3);
                    // quick boundary identities first
                    let mut ok = true;
                    let mut msg = String::new();
                    for a in &algs {
                        let hc = HochschildComplexes::new(a, 3).unwrap();
                        let rep = hc.boundary_identities();
                        if !rep.all_pass() {
                            ok = false;
                            msg = format!("{} boundary: {}", a.space.label, rep.first_failure().unwrap().name);
                            break;
                        }
                    }
                    if ok {
                        'outer: for a in &algs {
                            match compute_tpoly_and_omega(a, 3) {
                                Ok(ind) => {
                                    let rep = ind.package.validate();
                                    if !rep.all_pass() {
                                        ok = false;
                                        msg = format!("{}: {}", a.space.label, rep.first_failure().unwrap().name);
                                        break 'outer;
                                    }
                                }
                                Err(e) => {
                                    ok = false;
                                    msg = format!("{}: {e}", a.space.label);
                                    break 'outer;
                                }
                            }
                        }
                    }
                    println!("dv={dv} bv={bv} iota=({p0},{p1},{p2},{p3}): {}", if ok { "ALL PASS".into() } else { msg });
                    }
                    }
                }
            }
        }
    }
}
