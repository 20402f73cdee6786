//! The standard Reed–Solomon code `C(F_q^*, k)` and brute-force distances.
//!
//! Positions are the units of the field in canonical order. The distance of a
//! word to the code is `n` minus the best agreement with any codeword. The
//! search fixes the message coefficients `m_1, ..., m_{k-1}` with an odometer
//! and handles `m_0` with a histogram of `w(x) - Σ_{j≥1} m_j x^j`, so each
//! outer step costs `O(n)` instead of `O(q·n)`.

use std::cell::RefCell;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use thiserror::Error;

use crate::gf::{Felt, Field};
use crate::poly::UPoly;
use crate::symmetric::TopPoly;

/// Largest codebook `q^k` that brute-force distance computations accept.
pub const BRUTE_FORCE_LIMIT: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RsError {
    #[error("dimension k = {k} must satisfy 1 <= k <= n = {n}")]
    InvalidDimension { k: usize, n: usize },
    #[error("degree {degree} exceeds n - 1 = {max}")]
    DegreeTooHigh { degree: usize, max: usize },
    #[error("degree {degree:?} outside [k, n - 1] = [{k}, {max}]")]
    DegreeOutOfRange {
        degree: Option<usize>,
        k: usize,
        max: usize,
    },
    #[error("word has length {got}, code length is {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("message has {got} symbols, expected k = {expected}")]
    MessageLength { expected: usize, got: usize },
    #[error("brute force over q^k = {size} codewords exceeds the limit {limit}")]
    TooLargeForBruteForce { size: u128, limit: u64 },
}

/// A received word; `symbols[i]` sits at the `i`-th unit in canonical order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Word {
    symbols: Vec<Felt>,
}

impl Word {
    pub fn new(symbols: Vec<Felt>) -> Word {
        Word { symbols }
    }

    pub fn symbols(&self) -> &[Felt] {
        &self.symbols
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }

    pub fn add(&self, field: &Field, other: &Word) -> Word {
        Word::new(
            self.symbols
                .iter()
                .zip(&other.symbols)
                .map(|(&a, &b)| field.add(a, b))
                .collect(),
        )
    }

    /// Number of positions where the two words agree.
    pub fn agreements(&self, other: &Word) -> usize {
        self.symbols
            .iter()
            .zip(&other.symbols)
            .filter(|(a, b)| a == b)
            .count()
    }
}

#[derive(Debug, Clone)]
pub struct RSCode {
    field: Field,
    k: usize,
    eval_order: Vec<Felt>,
}

impl RSCode {
    pub fn new(field: &Field, k: usize) -> Result<RSCode, RsError> {
        let eval_order = field.units();
        let n = eval_order.len();
        if k == 0 || k > n {
            return Err(RsError::InvalidDimension { k, n });
        }
        Ok(RSCode {
            field: field.clone(),
            k,
            eval_order,
        })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.eval_order.len()
    }

    pub fn eval_order(&self) -> &[Felt] {
        &self.eval_order
    }

    /// `n - k + 1`.
    pub fn min_distance(&self) -> usize {
        self.n() - self.k + 1
    }

    /// `n - k`.
    pub fn covering_radius(&self) -> usize {
        self.n() - self.k
    }

    /// `(f(x))` over the evaluation order.
    pub fn word_from_poly(&self, f: &UPoly) -> Result<Word, RsError> {
        if let Some(degree) = f.degree() {
            if degree > self.n() - 1 {
                return Err(RsError::DegreeTooHigh {
                    degree,
                    max: self.n() - 1,
                });
            }
        }
        Ok(Word::new(
            self.eval_order.iter().map(|&x| f.eval(&self.field, x)).collect(),
        ))
    }

    /// The word generated by `T^{k+d} + Σ f_j T^{k+j}`.
    pub fn word_from_top(&self, f: &TopPoly) -> Result<Word, RsError> {
        self.word_from_poly(&f.to_upoly())
    }

    /// Codeword of the message `m_0 + m_1 T + ... + m_{k-1} T^{k-1}`.
    pub fn encode(&self, message: &[Felt]) -> Result<Word, RsError> {
        if message.len() != self.k {
            return Err(RsError::MessageLength {
                expected: self.k,
                got: message.len(),
            });
        }
        self.word_from_poly(&UPoly::new(message.to_vec()))
    }

    fn check_word(&self, w: &Word) -> Result<(), RsError> {
        if w.len() != self.n() {
            return Err(RsError::LengthMismatch {
                expected: self.n(),
                got: w.len(),
            });
        }
        Ok(())
    }

    fn check_brute_force(&self) -> Result<(), RsError> {
        let size = (self.field.q() as u128).checked_pow(self.k as u32).unwrap_or(u128::MAX);
        if size > BRUTE_FORCE_LIMIT as u128 {
            return Err(RsError::TooLargeForBruteForce {
                size,
                limit: BRUTE_FORCE_LIMIT,
            });
        }
        Ok(())
    }

    /// Exact `min_c d(w, c)` over all `q^k` codewords.
    pub fn distance_to_code(&self, w: &Word) -> Result<usize, RsError> {
        self.check_word(w)?;
        self.check_brute_force()?;
        Ok(self.n() - self.max_agreement(w, self.n()))
    }

    /// `distance_to_code(w) == n - k`; stops at the first codeword agreeing
    /// with `w` in `k + 1` positions.
    pub fn is_deep_hole(&self, w: &Word) -> Result<bool, RsError> {
        self.check_word(w)?;
        self.check_brute_force()?;
        Ok(self.max_agreement(w, self.k + 1) <= self.k)
    }

    /// Best agreement, or any value `>= stop_at` as soon as one is reached.
    fn max_agreement(&self, w: &Word, stop_at: usize) -> usize {
        let field = &self.field;
        let q = field.q() as usize;
        let n = self.n();
        let outer = self.k - 1;
        // powers[j-1][c][t] = c · x_t^j for j = 1..k-1.
        let elements: Vec<Felt> = field.elements().collect();
        let powers: Vec<Vec<Vec<Felt>>> = (1..=outer)
            .map(|j| {
                let xj: Vec<Felt> = self.eval_order.iter().map(|&x| field.pow(x, j as u64)).collect();
                elements
                    .iter()
                    .map(|&c| xj.iter().map(|&v| field.mul(c, v)).collect())
                    .collect()
            })
            .collect();

        if outer == 0 {
            return histogram_max(field, w.symbols(), &vec![Felt::ZERO; n], q);
        }

        let best = AtomicUsize::new(0);
        let scan_top = |top: usize| {
            let mut local = 0usize;
            // partial[j] = Σ_{i >= j} m_i x^i for the current odometer state,
            // indexed by outer digit j = 0..outer-1 (digit j is m_{j+1}).
            let mut digits = vec![0usize; outer];
            digits[outer - 1] = top;
            let mut partial = vec![vec![Felt::ZERO; n]; outer + 1];
            let rebuild = |partial: &mut Vec<Vec<Felt>>, digits: &[usize], from: usize| {
                for j in (0..=from).rev() {
                    let (lower, upper) = partial.split_at_mut(j + 1);
                    let row = &powers[j][digits[j]];
                    for t in 0..n {
                        lower[j][t] = field.add(upper[0][t], row[t]);
                    }
                }
            };
            rebuild(&mut partial, &digits, outer - 1);
            loop {
                let m = histogram_max(field, w.symbols(), &partial[0], q);
                local = local.max(m);
                if local >= stop_at || best.load(Ordering::Relaxed) >= stop_at {
                    break;
                }
                // Advance digits 0..outer-2; the top digit is fixed per task.
                let mut j = 0;
                while j + 1 < outer {
                    digits[j] += 1;
                    if digits[j] < q {
                        break;
                    }
                    digits[j] = 0;
                    j += 1;
                }
                if j + 1 >= outer {
                    break;
                }
                rebuild(&mut partial, &digits, j);
            }
            best.fetch_max(local, Ordering::Relaxed);
        };
        if rayon::current_num_threads() > 1 {
            (0..q).into_par_iter().for_each(scan_top);
        } else {
            for top in 0..q {
                scan_top(top);
                if best.load(Ordering::Relaxed) >= stop_at {
                    break;
                }
            }
        }
        best.into_inner()
    }

    /// Monic top part of `f` divided by its leading coefficient, with every
    /// monomial of degree below `k` removed.
    pub fn canonical_top(&self, f: &UPoly) -> Result<TopPoly, RsError> {
        let max = self.n() - 1;
        let degree = f.degree();
        let deg = match degree {
            Some(deg) if deg >= self.k && deg <= max => deg,
            _ => {
                return Err(RsError::DegreeOutOfRange {
                    degree,
                    k: self.k,
                    max,
                })
            }
        };
        let lead = f.leading().expect("nonzero polynomial");
        let inv = self.field.inv(lead).expect("leading coefficient is nonzero");
        let lows = (self.k..deg)
            .map(|i| self.field.mul(f.coeff(i), inv))
            .collect();
        Ok(TopPoly::new(self.k, lows))
    }
}

/// `max_c #{t : w[t] - s[t] = c}`.
fn histogram_max(field: &Field, w: &[Felt], s: &[Felt], q: usize) -> usize {
    thread_local! {
        static COUNTS: RefCell<Vec<u32>> = const { RefCell::new(Vec::new()) };
    }
    COUNTS.with(|cell| {
        let mut counts = cell.borrow_mut();
        if counts.len() < q {
            counts.resize(q, 0);
        }
        let mut best = 0u32;
        for (&a, &b) in w.iter().zip(s) {
            let slot = &mut counts[field.sub(a, b).rep() as usize];
            *slot += 1;
            best = best.max(*slot);
        }
        for (&a, &b) in w.iter().zip(s) {
            counts[field.sub(a, b).rep() as usize] = 0;
        }
        best as usize
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn poly(field: &Field, c: &[i64]) -> UPoly {
        UPoly::new(c.iter().map(|&v| field.from_int(v)).collect())
    }

    /// Distance by listing every codeword.
    fn naive_distance(code: &RSCode, w: &Word) -> usize {
        let field = code.field();
        let q = field.q() as u64;
        let total = q.pow(code.k() as u32);
        (0..total)
            .map(|mut idx| {
                let msg: Vec<Felt> = (0..code.k())
                    .map(|_| {
                        let r = idx % q;
                        idx /= q;
                        field.elem(r).unwrap()
                    })
                    .collect();
                code.n() - code.encode(&msg).unwrap().agreements(w)
            })
            .min()
            .unwrap()
    }

    fn random_word(code: &RSCode, rng: &mut ChaCha8Rng) -> Word {
        let q = code.field().q() as u64;
        Word::new(
            (0..code.n())
                .map(|_| code.field().elem(rng.gen_range(0..q)).unwrap())
                .collect(),
        )
    }

    #[test]
    fn word_examples() {
        let f5 = Field::prime(5).unwrap();
        let code = RSCode::new(&f5, 2).unwrap();
        assert_eq!(code.word_from_poly(&UPoly::zero()).unwrap(), Word::new(vec![Felt::ZERO; 4]));
        assert_eq!(
            code.word_from_poly(&poly(&f5, &[0, 1])).unwrap(),
            Word::new((1..5).map(|v| f5.from_int(v)).collect())
        );
        assert_eq!(
            code.word_from_poly(&poly(&f5, &[0, 0, 0, 0, 1])),
            Err(RsError::DegreeTooHigh { degree: 4, max: 3 })
        );
        assert_eq!((code.min_distance(), code.covering_radius()), (3, 2));
        assert_eq!(RSCode::new(&f5, 5).unwrap_err(), RsError::InvalidDimension { k: 5, n: 4 });
    }

    #[test]
    fn distance_examples() {
        let f7 = Field::prime(7).unwrap();
        let code = RSCode::new(&f7, 2).unwrap();
        let cw = code.word_from_poly(&poly(&f7, &[3, 5])).unwrap();
        assert_eq!(code.distance_to_code(&cw).unwrap(), 0);
        assert!(!code.is_deep_hole(&cw).unwrap());
        let sq = code.word_from_poly(&poly(&f7, &[0, 0, 1])).unwrap();
        assert_eq!(code.distance_to_code(&sq).unwrap(), 4);
        assert_eq!(naive_distance(&code, &sq), 4);
        assert!(code.is_deep_hole(&sq).unwrap());
    }

    #[test]
    fn matches_naive_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for (q, k) in [(4u64, 1usize), (4, 2), (5, 2), (7, 3), (8, 2), (9, 3), (11, 1), (11, 2)] {
            let field = Field::with_order(q).unwrap();
            let code = RSCode::new(&field, k).unwrap();
            for _ in 0..20 {
                let w = random_word(&code, &mut rng);
                let d = code.distance_to_code(&w).unwrap();
                assert_eq!(d, naive_distance(&code, &w), "q={q} k={k}");
                assert!(d <= code.covering_radius());
                assert_eq!(code.is_deep_hole(&w).unwrap(), d == code.covering_radius());
            }
        }
    }

    #[test]
    fn guard_trips() {
        let field = Field::prime(101).unwrap();
        let code = RSCode::new(&field, 4).unwrap();
        let w = Word::new(vec![Felt::ZERO; 100]);
        assert!(matches!(
            code.distance_to_code(&w),
            Err(RsError::TooLargeForBruteForce { .. })
        ));
        let small = RSCode::new(&field, 3).unwrap();
        assert_eq!(small.distance_to_code(&w).unwrap(), 0);
        assert!(matches!(
            small.distance_to_code(&Word::new(vec![Felt::ZERO; 3])),
            Err(RsError::LengthMismatch { .. })
        ));
    }

    #[test]
    fn canonical_top_examples() {
        let f7 = Field::prime(7).unwrap();
        let code = RSCode::new(&f7, 2).unwrap();
        let junk = poly(&f7, &[4, 6, 0, 1]);
        assert_eq!(code.canonical_top(&junk).unwrap(), TopPoly::new(2, vec![Felt::ZERO]));
        let top = TopPoly::new(2, vec![f7.from_int(3), f7.from_int(1)]);
        assert_eq!(code.canonical_top(&top.to_upoly()).unwrap(), top);
        let scaled = poly(&f7, &[0, 0, 1, 3]);
        assert_eq!(code.canonical_top(&scaled).unwrap(), TopPoly::new(2, vec![f7.from_int(5)]));
        assert!(matches!(
            code.canonical_top(&poly(&f7, &[1, 1])),
            Err(RsError::DegreeOutOfRange { .. })
        ));
        assert!(matches!(
            code.canonical_top(&UPoly::zero()),
            Err(RsError::DegreeOutOfRange { degree: None, .. })
        ));
    }

    #[test]
    fn top_part_and_scaling_preserve_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for q in [5u64, 7] {
            let field = Field::prime(q).unwrap();
            for k in 1..=3usize {
                let code = RSCode::new(&field, k).unwrap();
                for _ in 0..25 {
                    let deg = rng.gen_range(k..code.n());
                    let mut c: Vec<Felt> = (0..deg).map(|_| field.elem(rng.gen_range(0..q)).unwrap()).collect();
                    c.push(field.elem(rng.gen_range(1..q)).unwrap());
                    let f = UPoly::new(c);
                    let g = code.canonical_top(&f).unwrap().to_upoly();
                    let df = code.distance_to_code(&code.word_from_poly(&f).unwrap()).unwrap();
                    let dg = code.distance_to_code(&code.word_from_poly(&g).unwrap()).unwrap();
                    assert_eq!(df, dg);
                }
            }
        }
    }

    #[test]
    fn adding_a_codeword_preserves_distance() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let field = Field::with_order(9).unwrap();
        let code = RSCode::new(&field, 3).unwrap();
        for _ in 0..30 {
            let w = random_word(&code, &mut rng);
            let msg: Vec<Felt> = (0..3).map(|_| field.elem(rng.gen_range(0..9)).unwrap()).collect();
            let c = code.encode(&msg).unwrap();
            assert_eq!(
                code.distance_to_code(&w).unwrap(),
                code.distance_to_code(&w.add(&field, &c)).unwrap()
            );
        }
    }
}
