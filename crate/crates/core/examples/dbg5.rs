use dgfrob_core::hochschild::{set_iota_sign_params, HochschildComplexes};
use dgfrob_core::models;
use dgfrob_core::scalar::q;
use dgfrob_core::graded::Vector;

fn main() {
    // find the sign rule making [δ, ι_f] = ± ι_{δf} hold chain-level
    for alg in [models::two_stage_acyclic_algebra(), models::exterior_algebra(2)] {
        for (p0, p1) in [(1i64, 0i64), (1, 1), (0, 0), (0, 1)] {
            set_iota_sign_params(p0, p1, 0, 0);
            let hc = HochschildComplexes::new(&alg, 3).unwrap();
            let mut best: Option<(i64, i64)> = None;
            // candidates: δ∘ι_f − (−1)^{e} ι_f∘δ = s·ι_{δf} with e ∈ {q, q+1}, s ∈ {±1}
            'cand: for e_off in [0i64, 1] {
                for s in [1i64, -1] {
                    for fi in 0..hc.cochain_space.dim() {
                        let (nf, _, _) = hc.cochain_meta[fi];
                        if nf + 1 > 2 {
                            continue; // keep δf inside stored arity
                        }
                        let f = Vector::basis(fi);
                        let qd = hc.cochain_space.deg(fi).as_int().unwrap();
                        let iota = hc.iota_map(&f);
                        let df = hc.cochain_delta(&f);
                        let idf = hc.iota_map(&df);
                        let lhs = hc
                            .delta_chain
                            .compose(&iota)
                            .minus(&iota.compose(&hc.delta_chain).scaled(&if (qd + e_off).rem_euclid(2) == 1 { q(-1) } else { q(1) }));
                        let rhs = idf.scaled(&q(s));
                        // compare on words where both sides live in stored lengths
                        let okk = (0..hc.chain_space.dim()).all(|ci| {
                            lhs.cols[ci] == rhs.cols[ci]
                        });
                        if !okk {
                            continue 'cand;
                        }
                    }
                    best = Some((e_off, s));
                    break 'cand;
                }
            }
            println!("{}: iota params ({p0},{p1}): delta-compat {:?}", alg.space.label, best);
        }
    }
}
