use std::collections::BTreeSet;

use crate::gf::{Felt, Field};
use crate::poly::{uni_distinct_roots, UPoly};
use crate::rscode::RSCode;

use super::WitnessError;

/// Witness that `T^{k+d}` is not a deep hole when `p | (k + d)`.
///
/// `g = Π(T^p - T - b_i)` has `p·l` distinct roots in `F_q^*` and
/// `g = T^{k+d} + h` with `deg h <= k - 1`, so the word of `T^{k+d}` agrees with
/// the codeword of `-h` at every root of `g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ASWitness {
    pub k: usize,
    pub d: usize,
    pub b_list: Vec<Felt>,
    pub g: UPoly,
    pub h: UPoly,
    pub roots: BTreeSet<Felt>,
    pub root_count: usize,
    /// Agreements between the words of `T^{k+d}` and `-h`.
    pub agreements: usize,
    /// `n - agreements`.
    pub distance: usize,
}

/// Nonzero trace-zero elements in canonical order, at most `limit` of them.
pub fn trace_zero_elements(field: &Field, limit: usize) -> Vec<Felt> {
    field
        .elements()
        .filter(|&a| !a.is_zero() && field.trace(a).is_zero())
        .take(limit)
        .collect()
}

pub fn artin_schreier_witness(field: &Field, k: usize, d: usize) -> Result<ASWitness, WitnessError> {
    let p = field.p() as usize;
    let q = field.q() as usize;
    if p <= d + 1 {
        return Err(WitnessError::HypothesisViolated("p>d+1"));
    }
    if (k + d) % p != 0 {
        return Err(WitnessError::HypothesisViolated("p|(k+d)"));
    }
    if q <= k + d {
        return Err(WitnessError::HypothesisViolated("q>k+d"));
    }
    if k <= d {
        return Err(WitnessError::HypothesisViolated("k>d"));
    }
    let l = (k + d) / p;
    let b_list = trace_zero_elements(field, l);
    if b_list.len() < l {
        return Err(WitnessError::InsufficientTraceZeroElements {
            needed: l,
            found: b_list.len(),
        });
    }

    let mut g = UPoly::constant(Felt::ONE);
    for &b in &b_list {
        let mut c = vec![Felt::ZERO; p + 1];
        c[0] = field.neg(b);
        c[1] = field.neg(Felt::ONE);
        c[p] = Felt::ONE;
        g = g.mul(field, &UPoly::new(c));
    }
    let h = g.sub(field, &UPoly::monomial(Felt::ONE, k + d));
    if h.degree().is_some_and(|e| e + 1 > k) {
        return Err(WitnessError::HypothesisViolated("deg h<=k-1"));
    }
    let roots = uni_distinct_roots(field, &g).expect("g is monic");
    let code = RSCode::new(field, k)?;
    let word = code.word_from_poly(&UPoly::monomial(Felt::ONE, k + d))?;
    let codeword = code.word_from_poly(&h.neg(field))?;
    let agreements = word.agreements(&codeword);
    Ok(ASWitness {
        k,
        d,
        b_list,
        g,
        h,
        root_count: roots.len(),
        roots,
        agreements,
        distance: code.n() - agreements,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_over_f25() {
        let f25 = Field::new(5, 2, None).unwrap();
        let w = artin_schreier_witness(&f25, 7, 3).unwrap();
        assert_eq!(w.b_list.len(), 2);
        assert!(w.b_list.iter().all(|&b| f25.trace(b).is_zero() && !b.is_zero()));
        assert_eq!(w.root_count, 10);
        assert!(!w.roots.contains(&Felt::ZERO));
        assert_eq!(w.h.degree(), Some(6));
        assert_eq!(w.agreements, 10);
        assert_eq!(w.distance, 14);
        assert!(w.distance < 24 - 7);
    }

    #[test]
    fn factor_roots_are_disjoint() {
        let f25 = Field::new(5, 2, None).unwrap();
        let w = artin_schreier_witness(&f25, 7, 3).unwrap();
        let per_factor: Vec<BTreeSet<Felt>> = w
            .b_list
            .iter()
            .map(|&b| {
                let mut c = vec![Felt::ZERO; 6];
                c[0] = f25.neg(b);
                c[1] = f25.neg(Felt::ONE);
                c[5] = Felt::ONE;
                uni_distinct_roots(&f25, &UPoly::new(c)).unwrap()
            })
            .collect();
        assert!(per_factor.iter().all(|r| r.len() == 5));
        assert!(per_factor[0].is_disjoint(&per_factor[1]));
    }

    #[test]
    fn hypotheses_are_named() {
        let f25 = Field::new(5, 2, None).unwrap();
        assert_eq!(
            artin_schreier_witness(&f25, 6, 4),
            Err(WitnessError::HypothesisViolated("p>d+1"))
        );
        assert_eq!(
            artin_schreier_witness(&f25, 7, 2),
            Err(WitnessError::HypothesisViolated("p|(k+d)"))
        );
        let f7 = Field::prime(7).unwrap();
        assert_eq!(
            artin_schreier_witness(&f7, 5, 2),
            Err(WitnessError::HypothesisViolated("q>k+d"))
        );
        let f49 = Field::new(7, 2, None).unwrap();
        assert_eq!(
            artin_schreier_witness(&f49, 2, 5),
            Err(WitnessError::HypothesisViolated("k>d"))
        );
    }
}
