use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};

use rayon::prelude::*;

use crate::gf::Felt;
use crate::poly::{uni_rem, UPoly};
use crate::rscode::RSCode;
use crate::symmetric::{eval_hf, hf_unchecked, TopPoly};

use super::{distinct_count, WitnessError};

/// Certificate that the word of `f` is not a deep hole.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessCert {
    /// Zero of `H_f`, nonzero pairwise-distinct coordinates.
    pub point: Vec<Felt>,
    /// `f mod Π(T - x_i)`, degree at most `k - 1`.
    pub r: UPoly,
    /// Positions where the words of `f` and `r` agree; at least `k + 1`.
    pub agreements: usize,
    /// `n - agreements`.
    pub distance_bound: usize,
}

impl WitnessCert {
    /// Re-derives every field of the certificate from `f` and the point.
    pub fn verify(&self, f: &TopPoly, code: &RSCode) -> bool {
        certificate_from_point(f, code, &self.point).is_ok_and(|c| c == *self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Maximum number of `H_f` evaluations; `None` is unlimited.
    pub budget: Option<u64>,
    /// Single-threaded canonical-order search; the first witness found is
    /// then the lexicographically smallest.
    pub deterministic: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: None,
            deterministic: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(WitnessCert),
    /// Every increasing `(k+1)`-subset of units was evaluated; none is a zero.
    Exhausted { evaluated: u64 },
    BudgetExceeded { evaluated: u64 },
}

impl SearchOutcome {
    pub fn cert(&self) -> Option<&WitnessCert> {
        match self {
            SearchOutcome::Found(c) => Some(c),
            _ => None,
        }
    }
}

fn check_dimensions(f: &TopPoly, code: &RSCode) -> Result<(), WitnessError> {
    let n = code.n();
    if f.k() != code.k() {
        return Err(WitnessError::InvalidDimensions(format!(
            "polynomial has k = {} but the code has k = {}",
            f.k(),
            code.k()
        )));
    }
    if f.k() + 1 > n {
        return Err(WitnessError::InvalidDimensions(format!(
            "k + 1 = {} distinct nonzero coordinates do not fit in q - 1 = {n}",
            f.k() + 1
        )));
    }
    if f.k() + f.d() > n - 1 {
        return Err(WitnessError::InvalidDimensions(format!(
            "deg f = {} exceeds n - 1 = {}",
            f.k() + f.d(),
            n - 1
        )));
    }
    Ok(())
}

/// Packages a zero of `H_f` as a certificate after re-checking it.
pub fn certificate_from_point(f: &TopPoly, code: &RSCode, x: &[Felt]) -> Result<WitnessCert, WitnessError> {
    check_dimensions(f, code)?;
    let field = code.field();
    if x.len() != f.k() + 1 {
        return Err(WitnessError::NotAWitness(format!(
            "point has {} coordinates, expected {}",
            x.len(),
            f.k() + 1
        )));
    }
    if x.iter().any(|c| c.is_zero()) {
        return Err(WitnessError::NotAWitness("a coordinate is zero".into()));
    }
    if distinct_count(x) != x.len() {
        return Err(WitnessError::NotAWitness("coordinates repeat".into()));
    }
    if !eval_hf(f, field, x)?.is_zero() {
        return Err(WitnessError::NotAWitness("H_f does not vanish".into()));
    }
    let full = f.to_upoly();
    let r = uni_rem(field, &full, &UPoly::from_roots(field, x)).expect("monic divisor");
    if r.degree().is_some_and(|d| d + 1 > f.k()) {
        return Err(WitnessError::NotAWitness("remainder has degree k".into()));
    }
    let agreements = code.word_from_poly(&full)?.agreements(&code.word_from_poly(&r)?);
    debug_assert!(agreements > f.k());
    Ok(WitnessCert {
        point: x.to_vec(),
        r,
        agreements,
        distance_bound: code.n() - agreements,
    })
}

/// Advances `idx` to the next strictly increasing tuple below `n`, keeping
/// `idx[..fixed]` untouched. Returns false when exhausted.
fn next_combination(idx: &mut [usize], n: usize, fixed: usize) -> bool {
    let m = idx.len();
    let mut i = m;
    while i > fixed {
        i -= 1;
        if idx[i] < n - (m - i) {
            idx[i] += 1;
            for j in i + 1..m {
                idx[j] = idx[j - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Enumerates increasing `(k+1)`-subsets of units in canonical order and
/// returns the first zero of `H_f`. Ordered search is complete because `H_f`
/// is symmetric.
pub fn search_good_point(f: &TopPoly, code: &RSCode, options: SearchOptions) -> Result<SearchOutcome, WitnessError> {
    check_dimensions(f, code)?;
    let field = code.field();
    let units = code.eval_order();
    let n = units.len();
    let m = f.k() + 1;
    let budget = options.budget.unwrap_or(u64::MAX);

    if options.deterministic {
        let mut idx: Vec<usize> = (0..m).collect();
        let mut x = vec![Felt::ZERO; m];
        let mut evaluated = 0u64;
        loop {
            if evaluated >= budget {
                return Ok(SearchOutcome::BudgetExceeded { evaluated });
            }
            for (slot, &i) in x.iter_mut().zip(&idx) {
                *slot = units[i];
            }
            evaluated += 1;
            if hf_unchecked(f, field, &x).is_zero() {
                return Ok(SearchOutcome::Found(certificate_from_point(f, code, &x)?));
            }
            if !next_combination(&mut idx, n, 0) {
                return Ok(SearchOutcome::Exhausted { evaluated });
            }
        }
    }

    // Partition by the first coordinate; any partition's witness wins.
    let evaluated = AtomicU64::new(0);
    let over_budget = AtomicBool::new(false);
    let found = (0..=n - m).into_par_iter().find_map_any(|first| {
        let mut idx: Vec<usize> = (first..first + m).collect();
        let mut x = vec![Felt::ZERO; m];
        loop {
            if evaluated.fetch_add(1, Ordering::Relaxed) >= budget {
                over_budget.store(true, Ordering::Relaxed);
                return None;
            }
            for (slot, &i) in x.iter_mut().zip(&idx) {
                *slot = units[i];
            }
            if hf_unchecked(f, field, &x).is_zero() {
                return Some(x);
            }
            if !next_combination(&mut idx, n, 1) {
                return None;
            }
        }
    });
    let evaluated = evaluated.into_inner().min(budget);
    match found {
        Some(x) => Ok(SearchOutcome::Found(certificate_from_point(f, code, &x)?)),
        None if over_budget.into_inner() => Ok(SearchOutcome::BudgetExceeded { evaluated }),
        None => Ok(SearchOutcome::Exhausted { evaluated }),
    }
}
