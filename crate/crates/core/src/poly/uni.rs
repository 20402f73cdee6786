use std::collections::BTreeSet;

use crate::gf::{Felt, Field};

use super::PolyError;

/// Dense univariate polynomial, low degree first, with no trailing zeros.
/// The zero polynomial has no coefficients.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct UPoly {
    coeffs: Vec<Felt>,
}

impl UPoly {
    pub fn zero() -> UPoly {
        UPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: Felt) -> UPoly {
        UPoly::new(vec![c])
    }

    /// `c * T^e`.
    pub fn monomial(c: Felt, e: usize) -> UPoly {
        let mut coeffs = vec![Felt::ZERO; e + 1];
        coeffs[e] = c;
        UPoly::new(coeffs)
    }

    pub fn new(mut coeffs: Vec<Felt>) -> UPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UPoly { coeffs }
    }

    /// `(T - r_1)(T - r_2)...`.
    pub fn from_roots(field: &Field, roots: &[Felt]) -> UPoly {
        let mut coeffs = Vec::with_capacity(roots.len() + 1);
        coeffs.push(Felt::ONE);
        for &r in roots {
            let neg_r = field.neg(r);
            coeffs.push(Felt::ZERO);
            for i in (0..coeffs.len()).rev() {
                let lower = if i == 0 { Felt::ZERO } else { coeffs[i - 1] };
                coeffs[i] = field.add(lower, field.mul(neg_r, coeffs[i]));
            }
        }
        UPoly::new(coeffs)
    }

    pub fn coeffs(&self) -> &[Felt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Felt> {
        self.coeffs
    }

    /// Coefficient of `T^i`, zero past the degree.
    pub fn coeff(&self, i: usize) -> Felt {
        self.coeffs.get(i).copied().unwrap_or(Felt::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<Felt> {
        self.coeffs.last().copied()
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(Felt::ONE)
    }

    pub fn eval(&self, field: &Field, x: Felt) -> Felt {
        self.coeffs
            .iter()
            .rev()
            .fold(Felt::ZERO, |acc, &c| field.add(field.mul(acc, x), c))
    }

    pub fn add(&self, field: &Field, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new(
            (0..n)
                .map(|i| field.add(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn sub(&self, field: &Field, other: &UPoly) -> UPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        UPoly::new(
            (0..n)
                .map(|i| field.sub(self.coeff(i), other.coeff(i)))
                .collect(),
        )
    }

    pub fn neg(&self, field: &Field) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|&c| field.neg(c)).collect())
    }

    pub fn scale(&self, field: &Field, c: Felt) -> UPoly {
        UPoly::new(self.coeffs.iter().map(|&a| field.mul(a, c)).collect())
    }

    pub fn mul(&self, field: &Field, other: &UPoly) -> UPoly {
        if self.is_zero() || other.is_zero() {
            return UPoly::zero();
        }
        let mut out = vec![Felt::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = field.add(out[i + j], field.mul(a, b));
            }
        }
        UPoly::new(out)
    }

    /// Quotient and remainder by a monic divisor of degree at least one.
    pub fn div_rem(&self, field: &Field, divisor: &UPoly) -> Result<(UPoly, UPoly), PolyError> {
        let dq = match divisor.degree() {
            Some(d) if d >= 1 && divisor.is_monic() => d,
            _ => return Err(PolyError::NonMonicDivisor),
        };
        let mut rem = self.coeffs.clone();
        if rem.len() <= dq {
            return Ok((UPoly::zero(), self.clone()));
        }
        let mut quot = vec![Felt::ZERO; rem.len() - dq];
        for top in (dq..rem.len()).rev() {
            let c = rem[top];
            if c.is_zero() {
                continue;
            }
            let shift = top - dq;
            quot[shift] = c;
            for (i, &m) in divisor.coeffs.iter().enumerate() {
                rem[shift + i] = field.sub(rem[shift + i], field.mul(c, m));
            }
        }
        rem.truncate(dq);
        Ok((UPoly::new(quot), UPoly::new(rem)))
    }

    /// Exact roots in `F_q` by evaluation at every element, ascending.
    /// Costs `O(q * deg)` field operations.
    pub fn distinct_roots(&self, field: &Field) -> Result<BTreeSet<Felt>, PolyError> {
        if self.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        Ok(field
            .elements()
            .filter(|&a| self.eval(field, a).is_zero())
            .collect())
    }
}

/// Remainder of `f` modulo a monic `q` with `deg q >= 1`.
pub fn uni_rem(field: &Field, f: &UPoly, q: &UPoly) -> Result<UPoly, PolyError> {
    f.div_rem(field, q).map(|(_, r)| r)
}

pub fn uni_distinct_roots(field: &Field, f: &UPoly) -> Result<BTreeSet<Felt>, PolyError> {
    f.distinct_roots(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn fe(field: &Field, v: &[i64]) -> UPoly {
        UPoly::new(v.iter().map(|&c| field.from_int(c)).collect())
    }

    #[test]
    fn remainder_examples() {
        let f7 = Field::prime(7).unwrap();
        let r = uni_rem(&f7, &fe(&f7, &[0, 0, 0, 1]), &fe(&f7, &[-2, 1])).unwrap();
        assert_eq!(r, UPoly::constant(Felt::ONE));

        let small = fe(&f7, &[3, 4]);
        let q = fe(&f7, &[1, 0, 1]);
        assert_eq!(uni_rem(&f7, &small, &q).unwrap(), small);

        let f5 = Field::prime(5).unwrap();
        let r = uni_rem(&f5, &fe(&f5, &[-1, 0, 1]), &fe(&f5, &[-1, 1])).unwrap();
        assert!(r.is_zero());
    }

    #[test]
    fn non_monic_divisor_rejected() {
        let f7 = Field::prime(7).unwrap();
        let f = fe(&f7, &[1, 1, 1]);
        assert_eq!(
            uni_rem(&f7, &f, &fe(&f7, &[1, 2])),
            Err(PolyError::NonMonicDivisor)
        );
        assert_eq!(
            uni_rem(&f7, &f, &fe(&f7, &[1])),
            Err(PolyError::NonMonicDivisor)
        );
    }

    #[test]
    fn root_examples() {
        let f7 = Field::prime(7).unwrap();
        let roots = fe(&f7, &[-1, 0, 1]).distinct_roots(&f7).unwrap();
        assert_eq!(roots.into_iter().collect::<Vec<_>>(), vec![Felt::ONE, f7.from_int(6)]);
        // -1 is a non-residue mod 7.
        assert!((0..7).all(|x| (x * x + 1) % 7 != 0));
        assert!(fe(&f7, &[1, 0, 1]).distinct_roots(&f7).unwrap().is_empty());
        let as_kernel = fe(&f7, &[0, -1, 0, 0, 0, 0, 0, 1]);
        assert_eq!(as_kernel.distinct_roots(&f7).unwrap().len(), 7);
        assert_eq!(
            UPoly::zero().distinct_roots(&f7),
            Err(PolyError::ZeroPolynomial)
        );
    }

    #[test]
    fn from_roots_vanishes_exactly_there() {
        let f = Field::with_order(9).unwrap();
        let roots = [Felt::ONE, f.elem(4).unwrap(), f.elem(8).unwrap()];
        let q = UPoly::from_roots(&f, &roots);
        assert_eq!(q.degree(), Some(3));
        assert!(q.is_monic());
        let found: Vec<_> = q.distinct_roots(&f).unwrap().into_iter().collect();
        assert_eq!(found, roots.to_vec());
    }

    #[test]
    fn long_division_identity_seeded() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        let fields: Vec<Field> = [2u64, 3, 4, 7, 9, 13, 25]
            .iter()
            .map(|&q| Field::with_order(q).unwrap())
            .collect();
        for trial in 0..100 {
            let field = &fields[trial % fields.len()];
            let q = field.q();
            let df = rng.gen_range(0..12);
            let dq = rng.gen_range(1..6);
            let f = UPoly::new((0..=df).map(|_| field.elem(rng.gen_range(0..q) as u64).unwrap()).collect());
            let mut qc: Vec<Felt> = (0..dq).map(|_| field.elem(rng.gen_range(0..q) as u64).unwrap()).collect();
            qc.push(Felt::ONE);
            let divisor = UPoly::new(qc);
            let (quot, rem) = f.div_rem(field, &divisor).unwrap();
            assert!(rem.degree().map_or(true, |d| d < dq));
            assert_eq!(quot.mul(field, &divisor).add(field, &rem), f);
        }
    }
}
