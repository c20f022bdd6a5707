use dgfrob_core::hochschild::compute_tpoly_and_omega;
use dgfrob_core::models;

fn main() {
    let ind = compute_tpoly_and_omega(&models::exterior_algebra(1), 3).unwrap();
    let rep = ind.package.validate();
    for c in &rep.checks {
        println!("{}: pass={} skipped={} {}", c.name, c.pass, c.skipped, c.witness);
    }
    // inspect T-space and O-space
    let p = &ind.package;
    for (i, b) in p.t_space.basis.iter().enumerate() {
        println!("T{i}: deg {} wt {} par {}", b.deg, b.wt, b.par);
    }
    for (i, b) in p.o_space.basis.iter().enumerate() {
        println!("O{i}: deg {} wt {} par {}", b.deg, b.wt, b.par);
    }
    let ld = &p.length_data.as_ref().unwrap();
    println!("t_arities: {:?} {:?}, o_len {:?}", ld.t_min_arity, ld.t_max_arity, ld.o_len);
}
