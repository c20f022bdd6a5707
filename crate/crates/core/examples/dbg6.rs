use dgfrob_core::hochschild::{compute_tpoly_and_omega, set_iota_sign_params, HochschildComplexes};
use dgfrob_core::models;
use dgfrob_core::scalar::q;
use dgfrob_core::graded::Vector;

fn main() {
    set_iota_sign_params(0, 0, 0, 0);
    let alg = models::exterior_algebra(1);
    let ind = compute_tpoly_and_omega(&alg, 3).unwrap();
    let hc = HochschildComplexes::new(&alg, 4).unwrap();
    let pkg = &ind.package;
    let rep = pkg.validate();
    for c in rep.checks.iter().filter(|c| !c.pass) {
        println!("FAIL {}: {} (skipped {})", c.name, c.witness, c.skipped);
    }
    // decode witness classes
    let tr = |pk: usize| &ind.t_split.reps[ind.t_classes[pk]];
    let or = |pk: usize| &ind.o_split.reps[ind.o_classes[pk]];
    let show = |nm: &str, v: &Vector, is_t: bool| {
        print!("{nm}: ");
        for (&i, c) in &v.entries {
            if is_t {
                let (n, w, out) = &hc.cochain_meta[i];
                print!("{c}*({n},{w:?},{}) ", alg.space.name(*out));
            } else {
                let (a0, w) = &hc.chain_meta[i];
                print!("{c}*({};{w:?}) ", alg.space.name(*a0));
            }
        }
        println!();
    };
    // first failing tuple of lie-homomorphism, discovered by scanning
    'outer: for x in 0..pkg.t_space.dim() {
        for y in 0..pkg.t_space.dim() {
            for o in 0..pkg.o_space.dim() {
                let px = (pkg.t_space.par(x) as i64 + 1).rem_euclid(2);
                let py = (pkg.t_space.par(y) as i64 + 1).rem_euclid(2);
                let sign = if (px * py).rem_euclid(2) == 1 { q(-1) } else { q(1) };
                let ab = pkg.g_l(&Vector::basis(y), &Vector::basis(o)).and_then(|v| pkg.g_l(&Vector::basis(x), &v));
                let ba = pkg.g_l(&Vector::basis(x), &Vector::basis(o)).and_then(|v| pkg.g_l(&Vector::basis(y), &v));
                let rhs = pkg.g_bracket(&Vector::basis(x), &Vector::basis(y)).and_then(|v| pkg.g_l(&v, &Vector::basis(o)));
                if let (Some(a), Some(b), Some(r)) = (ab, ba, rhs) {
                    let lhs = a.minus(&b.scaled(&sign));
                    if lhs != r {
                        println!("fail at T{x} T{y} O{o}: lhs {:?} rhs {:?}", lhs.entries, r.entries);
                        show("X", tr(x), true);
                        show("Y", tr(y), true);
                        show("O", or(o), false);
                        // chain level
                        let (xv, yv, ov) = (tr(x), tr(y), or(o));
                        let lx = hc.lie_map(xv);
                        let ly = hc.lie_map(yv);
                        let br = hc.gerstenhaber(xv, yv);
                        show("[X,Y]", &br, true);
                        let lbr = hc.lie_map(&br);
                        let chain_lhs = lx.apply(&ly.apply(ov)).minus(&ly.apply(&lx.apply(ov)).scaled(&sign));
                        let chain_rhs = lbr.apply(ov);
                        let diff = chain_lhs.minus(&chain_rhs);
                        println!("chain equal? {}; diff:", diff.is_zero());
                        show("diff", &diff, false);
                        break 'outer;
                    }
                }
            }
        }
    }
}
