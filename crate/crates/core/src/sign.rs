//! Koszul sign bookkeeping.

use crate::scalar::Q;

/// Sign of permuting homogeneous elements of the given parities under the
/// Koszul rule: each transposition of adjacent elements with parities p, q
/// contributes (-1)^{pq}.
///
/// `perm[i]` is the index (into `pars`) of the element placed at position i.
pub fn koszul_sign(perm: &[usize], pars: &[u8]) -> i8 {
    assert_eq!(perm.len(), pars.len(), "length mismatch");
    // count inversions between odd elements
    let mut sign = 1i8;
    for i in 0..perm.len() {
        for j in (i + 1)..perm.len() {
            if perm[i] > perm[j] && pars[perm[i]] % 2 == 1 && pars[perm[j]] % 2 == 1 {
                sign = -sign;
            }
        }
    }
    sign
}

/// Same, taking integer degrees (the usual case for chain formulas).
pub fn koszul_sign_degs(perm: &[usize], degs: &[i64]) -> i8 {
    let pars: Vec<u8> = degs.iter().map(|d| (d.rem_euclid(2)) as u8).collect();
    koszul_sign(perm, &pars)
}

/// (-1)^n for integer n.
pub fn neg_one_pow(n: i64) -> Q {
    if n.rem_euclid(2) == 0 {
        Q::one()
    } else {
        Q::from_int(-1)
    }
}

/// (-1)^e for a rational exponent that must be an integer; panics otherwise.
/// Rational gradings may only enter signs through integer parities.
pub fn neg_one_pow_q(e: &Q) -> Q {
    match e.pow_sign() {
        Some(1) => Q::one(),
        Some(_) => Q::from_int(-1),
        None => panic!("non-integer sign exponent {e}"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_plus_one() {
        assert_eq!(koszul_sign_degs(&[0, 1, 2], &[1, 1, 1]), 1);
    }

    #[test]
    fn swap_of_two_odds_is_minus_one() {
        assert_eq!(koszul_sign_degs(&[1, 0], &[1, 1]), -1);
        assert_eq!(koszul_sign_degs(&[1, 0], &[3, 5]), -1);
    }

    #[test]
    fn swap_of_degrees_2_3_is_plus_one() {
        // (-1)^{2*3} = +1
        assert_eq!(koszul_sign_degs(&[1, 0], &[2, 3]), 1);
    }

    #[test]
    fn even_elements_never_contribute() {
        assert_eq!(koszul_sign_degs(&[2, 1, 0], &[2, 4, 6]), 1);
    }

    #[test]
    fn homomorphism_for_all_odd() {
        // composing two swaps = product of signs
        let degs = [1, 1, 1];
        // perm (1 0 2) then relabel: full check on S3
        let perms: Vec<Vec<usize>> = vec![
            vec![0, 1, 2],
            vec![1, 0, 2],
            vec![0, 2, 1],
            vec![2, 1, 0],
            vec![1, 2, 0],
            vec![2, 0, 1],
        ];
        for p in &perms {
            // parity of permutation = sign for all-odd degrees
            let mut inv = 0;
            for i in 0..3 {
                for j in (i + 1)..3 {
                    if p[i] > p[j] {
                        inv += 1;
                    }
                }
            }
            let expected = if inv % 2 == 0 { 1 } else { -1 };
            assert_eq!(koszul_sign_degs(p, &degs), expected);
        }
    }
}
