use dgfrob_core::hochschild::{compute_tpoly_and_omega, HochschildComplexes};
use dgfrob_core::models;
use dgfrob_core::scalar::q;
use dgfrob_core::graded::Vector;

fn main() {
    let alg = models::exterior_algebra(2);
    let ind = compute_tpoly_and_omega(&alg, 3).unwrap();
    let hc = HochschildComplexes::new(&alg, 4).unwrap();
    let pkg = &ind.package;
    let tr = |pk: usize| &ind.t_split.reps[ind.t_classes[pk]];
    let or = |pk: usize| &ind.o_split.reps[ind.o_classes[pk]];
    // chain-level [L_X, L_Y] vs L_{[X,Y]} on (T0, T37, O13), then project
    let (x, y, o) = (tr(0), tr(37), or(13));
    for (nm, v) in [("T0", x), ("T37", y)] {
        for (&i, c) in &v.entries {
            let (n, w, out) = &hc.cochain_meta[i];
            println!("{nm}: {c}*({n},{w:?},{})", alg.space.name(*out));
        }
    }
    for (&i, c) in &o.entries {
        let (a0, w) = &hc.chain_meta[i];
        println!("O13: {c}*({};{w:?})", alg.space.name(*a0));
    }
    let lx = hc.lie_map(x);
    let ly = hc.lie_map(y);
    let br = hc.gerstenhaber(x, y);
    println!("bracket [T0,T37] chain-level zero? {}", br.is_zero());
    let lbr = hc.lie_map(&br);
    // parities: p(L_X) = q(X)+1
    let qx = hc.cochain_degree(x).unwrap();
    let qy = hc.cochain_degree(y).unwrap();
    let sgn = if ((qx + 1) * (qy + 1)).rem_euclid(2) == 1 { q(-1) } else { q(1) };
    let lhs = lx.apply(&ly.apply(o)).minus(&ly.apply(&lx.apply(o)).scaled(&sgn));
    let rhs = lbr.apply(o);
    let diff = lhs.minus(&rhs);
    println!("chain-level equal? {}", diff.is_zero());
    if !diff.is_zero() {
        let closed = hc.chain_delta(&diff).is_zero();
        println!("diff closed? {closed}");
        if closed {
            let (coords, _) = ind.o_split.reduce(&diff, "dbg").unwrap();
            println!("diff class coords: {:?}", coords.entries);
        }
        for (&i, c) in diff.entries.iter().take(8) {
            let (a0, w) = &hc.chain_meta[i];
            println!("  diff {c} * ({};{w:?})", alg.space.name(*a0));
        }
    }
    // also check the table-route
    let e0 = Vector::basis(0);
    let e37 = Vector::basis(37);
    let o13 = Vector::basis(13);
    let t1 = pkg.g_l(&e37, &o13).and_then(|v| pkg.g_l(&e0, &v));
    let t2 = pkg.g_l(&e0, &o13).and_then(|v| pkg.g_l(&e37, &v));
    let t3 = pkg.g_bracket(&e0, &e37).and_then(|v| pkg.g_l(&v, &o13));
    println!("table: {:?} {:?} {:?}", t1, t2, t3);
}
