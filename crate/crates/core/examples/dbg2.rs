use dgfrob_core::hochschild::{compute_tpoly_and_omega, HochschildComplexes};
use dgfrob_core::models;
use dgfrob_core::graded::Vector;

fn main() {
    let alg = models::two_stage_acyclic_algebra();
    let ind = compute_tpoly_and_omega(&alg, 3).unwrap();
    let pkg = &ind.package;
    for (i, b) in pkg.o_space.basis.iter().enumerate() {
        println!("O{i}: deg {} wt {}", b.deg, b.wt);
    }
    let hc = HochschildComplexes::new(&alg, 4).unwrap();
    // f_class rep as raw cochain vector
    let fv = ind.t_split.projector.apply(&hc.m_cochain());
    println!("m-bar proj = m-bar? {}", fv == hc.m_cochain());
    // O1 rep
    let o1 = &ind.o_split.reps[ind.package.o_space.index_of("O1").map(|_| 0).unwrap_or(0)];
    let _ = o1;
    // print reps of certified O classes
    for (n, r) in ind.o_split.reps.iter().enumerate().take(8) {
        println!("o-rep {n}: {:?} deg {} wt {}", r.entries, ind.o_split.homology_space.deg(n), ind.o_split.homology_space.wt(n));
    }
    // chain-level check: L_m vs -d on each o-rep; project and compare
    let lm = hc.lie_map(&fv);
    for (n, r) in ind.o_split.reps.iter().enumerate().take(6) {
        let lhs = lm.apply(r);
        let rhs = hc.chain_d(r).scaled(&dgfrob_core::scalar::q(-1));
        let diff = lhs.minus(&rhs);
        let (coords, _) = ind.o_split.reduce(&diff, "dbg").unwrap_or((Vector::zero(), Vector::zero()));
        println!("class {n}: raw-equal={} diff-class-coords={:?}", lhs == rhs, coords.entries);
    }
}
