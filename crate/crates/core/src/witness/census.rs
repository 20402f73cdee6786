use rayon::prelude::*;

use crate::rscode::RSCode;
use crate::symmetric::{hf_unchecked, TopPoly};

use super::singular::{check_exhaustive, check_k, for_each_point_with_first};
use super::{distinct_count, WitnessError};

/// Exhaustive counts of ordered rational zeros of `H_f` in `F_q^{k+1}`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PointCensus {
    /// `#V_f(F_q)`.
    pub total: u64,
    /// Zeros with at least one zero coordinate.
    pub with_zero: u64,
    /// Zeros with at least two equal coordinates.
    pub with_repeat: u64,
    /// Zeros with nonzero pairwise-distinct coordinates.
    pub good: u64,
}

impl PointCensus {
    fn merge(self, other: PointCensus) -> PointCensus {
        PointCensus {
            total: self.total + other.total,
            with_zero: self.with_zero + other.with_zero,
            with_repeat: self.with_repeat + other.with_repeat,
            good: self.good + other.good,
        }
    }
}

pub fn count_points(f: &TopPoly, code: &RSCode) -> Result<PointCensus, WitnessError> {
    check_k(f, code)?;
    let field = code.field();
    let nvars = f.k() + 1;
    check_exhaustive(field, nvars)?;
    Ok((0..field.q())
        .into_par_iter()
        .map(|first| {
            let mut c = PointCensus::default();
            for_each_point_with_first(field, nvars, first, |x| {
                if !hf_unchecked(f, field, x).is_zero() {
                    return;
                }
                c.total += 1;
                let zero = x.iter().any(|v| v.is_zero());
                let repeat = distinct_count(x) < nvars;
                c.with_zero += zero as u64;
                c.with_repeat += repeat as u64;
                c.good += (!zero && !repeat) as u64;
            });
            c
        })
        .reduce(PointCensus::default, PointCensus::merge))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::{Felt, Field};

    #[test]
    fn linear_counts() {
        // H = Π_1 + f_0 over F_5 with k + 1 = 3: q^2 zeros.
        let f5 = Field::prime(5).unwrap();
        let code = RSCode::new(&f5, 2).unwrap();
        let c = count_points(&TopPoly::new(2, vec![f5.from_int(1)]), &code).unwrap();
        assert_eq!(c.total, 25);
        // Ordered triples of distinct units summing to -1.
        let brute = f5
            .units()
            .into_iter()
            .flat_map(|a| f5.units().into_iter().map(move |b| (a, b)))
            .flat_map(|(a, b)| f5.units().into_iter().map(move |c| (a, b, c)))
            .filter(|&(a, b, c)| a != b && b != c && a != c)
            .filter(|&(a, b, c)| f5.add(f5.add(a, b), f5.add(c, Felt::ONE)).is_zero())
            .count() as u64;
        assert_eq!(c.good, brute);
    }
}
