use dgfrob_core::hochschild::{compute_tpoly_and_omega, HochschildComplexes};
use dgfrob_core::models;
use dgfrob_core::scalar::q;

fn main() {
    let alg = models::exterior_algebra(2);
    let ind = compute_tpoly_and_omega(&alg, 3).unwrap();
    let hc = HochschildComplexes::new(&alg, 4).unwrap();
    let pkg = &ind.package;
    let rep = pkg.validate();
    for c in rep.checks.iter().filter(|c| !c.pass) {
        println!("FAIL {}: {} (skipped {})", c.name, c.witness, c.skipped);
    }
    let tr = |pk: usize| &ind.t_split.reps[ind.t_classes[pk]];
    let or = |pk: usize| &ind.o_split.reps[ind.o_classes[pk]];
    let show_t = |pk: usize| {
        print!("T{pk} (deg {} wt {}): ", pkg.t_space.deg(pk), pkg.t_space.wt(pk));
        for (&i, c) in &tr(pk).entries {
            let (n, w, out) = &hc.cochain_meta[i];
            print!("{c}*({n},{w:?},{}) ", alg.space.name(*out));
        }
        println!();
    };
    let show_o = |pk: usize| {
        print!("O{pk} (deg {} wt {}): ", pkg.o_space.deg(pk), pkg.o_space.wt(pk));
        for (&i, c) in &or(pk).entries {
            let (a0, w) = &hc.chain_meta[i];
            print!("{c}*({};{w:?}) ", alg.space.name(*a0));
        }
        println!();
    };
    // cyclic-contraction is the most constrained: [B, i_X] = -L_X on (T32, O5)
    show_t(32);
    show_o(5);
    let x = tr(32);
    let o = or(5);
    let ix = hc.iota_map(x);
    let lx = hc.lie_map(x);
    let px = pkg.t_space.par(32) as i64;
    let s = if px.rem_euclid(2) == 1 { q(-1) } else { q(1) };
    let lhs = hc.connes_b(&ix.apply(o)).minus(&ix.apply(&hc.connes_b(o)).scaled(&s));
    let rhs = lx.apply(o).scaled(&q(-1));
    println!("[B,iX] == -L_X raw: {}", lhs == rhs);
    let diff = lhs.minus(&rhs);
    for (&i, c) in diff.entries.iter() {
        let (a0, w) = &hc.chain_meta[i];
        println!("  diff {c} * ({};{w:?})", alg.space.name(*a0));
    }
    let (coords, _) = ind.o_split.reduce(&diff, "dbg").unwrap();
    println!("diff class coords: {:?}", coords.entries);
}
