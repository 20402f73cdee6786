use std::collections::BTreeMap;

use crate::gf::{Felt, Field};

use super::PolyError;

/// Exponent vector of a monomial.
pub type Monomial = Vec<u32>;

/// Sparse multivariate polynomial: a map from exponent vectors to nonzero
/// coefficients. Terms are kept in a `BTreeMap` so iteration order, and
/// anything printed from it, is deterministic.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MVPoly {
    nvars: usize,
    terms: BTreeMap<Monomial, Felt>,
}

impl MVPoly {
    pub fn zero(nvars: usize) -> MVPoly {
        MVPoly {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: Felt) -> MVPoly {
        let mut p = MVPoly::zero(nvars);
        if !c.is_zero() {
            p.terms.insert(vec![0; nvars], c);
        }
        p
    }

    pub fn one(nvars: usize) -> MVPoly {
        MVPoly::constant(nvars, Felt::ONE)
    }

    /// The variable `X_{index}` (zero based).
    pub fn var(nvars: usize, index: usize) -> Result<MVPoly, PolyError> {
        if index >= nvars {
            return Err(PolyError::IndexOutOfRange { index, bound: nvars });
        }
        let mut e = vec![0; nvars];
        e[index] = 1;
        let mut p = MVPoly::zero(nvars);
        p.terms.insert(e, Felt::ONE);
        Ok(p)
    }

    /// Builds from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(
        field: &Field,
        nvars: usize,
        terms: impl IntoIterator<Item = (Monomial, Felt)>,
    ) -> Result<MVPoly, PolyError> {
        let mut p = MVPoly::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(PolyError::ArityMismatch {
                    expected: nvars,
                    got: e.len(),
                });
            }
            p.add_term(field, e, c);
        }
        Ok(p)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, Felt> {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, e: &[u32]) -> Felt {
        self.terms.get(e).copied().unwrap_or(Felt::ZERO)
    }

    fn add_term(&mut self, field: &Field, e: Monomial, c: Felt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = field.add(*o.get(), c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    /// `None` for the zero polynomial.
    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// True when every term has total degree `deg` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous_of_degree(&self, deg: u32) -> bool {
        self.terms.keys().all(|e| e.iter().sum::<u32>() == deg)
    }

    pub fn add(&self, field: &Field, other: &MVPoly) -> MVPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut out = self.clone();
        for (e, &c) in &other.terms {
            out.add_term(field, e.clone(), c);
        }
        out
    }

    pub fn neg(&self, field: &Field) -> MVPoly {
        MVPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &c)| (e.clone(), field.neg(c)))
                .collect(),
        }
    }

    pub fn sub(&self, field: &Field, other: &MVPoly) -> MVPoly {
        self.add(field, &other.neg(field))
    }

    pub fn scale(&self, field: &Field, c: Felt) -> MVPoly {
        if c.is_zero() {
            return MVPoly::zero(self.nvars);
        }
        MVPoly {
            nvars: self.nvars,
            terms: self
                .terms
                .iter()
                .map(|(e, &a)| (e.clone(), field.mul(a, c)))
                .collect(),
        }
    }

    pub fn mul(&self, field: &Field, other: &MVPoly) -> MVPoly {
        debug_assert_eq!(self.nvars, other.nvars);
        let mut acc: std::collections::HashMap<Monomial, Felt> = std::collections::HashMap::new();
        for (ea, &ca) in &self.terms {
            for (eb, &cb) in &other.terms {
                let e: Monomial = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                let c = field.mul(ca, cb);
                let slot = acc.entry(e).or_insert(Felt::ZERO);
                *slot = field.add(*slot, c);
            }
        }
        MVPoly {
            nvars: self.nvars,
            terms: acc.into_iter().filter(|(_, c)| !c.is_zero()).collect(),
        }
    }

    pub fn pow(&self, field: &Field, e: u32) -> MVPoly {
        let mut result = MVPoly::one(self.nvars);
        for _ in 0..e {
            result = result.mul(field, self);
        }
        result
    }

    pub fn eval(&self, field: &Field, x: &[Felt]) -> Result<Felt, PolyError> {
        if x.len() != self.nvars {
            return Err(PolyError::ArityMismatch {
                expected: self.nvars,
                got: x.len(),
            });
        }
        let mut total = Felt::ZERO;
        for (e, &c) in &self.terms {
            let mut term = c;
            for (&xi, &ei) in x.iter().zip(e) {
                if ei > 0 {
                    term = field.mul(term, field.pow(xi, ei as u64));
                }
            }
            total = field.add(total, term);
        }
        Ok(total)
    }

    /// Formal partial derivative. The exponent multiplier is reduced in the
    /// field, so terms whose exponent is divisible by `p` disappear.
    pub fn partial(&self, field: &Field, var: usize) -> Result<MVPoly, PolyError> {
        if var >= self.nvars {
            return Err(PolyError::IndexOutOfRange {
                index: var,
                bound: self.nvars,
            });
        }
        let mut out = MVPoly::zero(self.nvars);
        for (e, &c) in &self.terms {
            let k = e[var];
            if k == 0 {
                continue;
            }
            let mut de = e.clone();
            de[var] -= 1;
            out.add_term(field, de, field.scale_int(c, k as u64));
        }
        Ok(out)
    }

    /// Applies a permutation of the variables: variable `i` becomes
    /// variable `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> MVPoly {
        let mut terms = BTreeMap::new();
        for (e, &c) in &self.terms {
            let mut ne = vec![0; self.nvars];
            for (i, &ei) in e.iter().enumerate() {
                ne[perm[i]] = ei;
            }
            terms.insert(ne, c);
        }
        MVPoly {
            nvars: self.nvars,
            terms,
        }
    }
}

/// The elementary symmetric polynomial `Π_i` in `nvars` variables, with
/// `Π_0 = 1`.
pub fn elementary_symmetric(field: &Field, i: usize, nvars: usize) -> Result<MVPoly, PolyError> {
    if i > nvars {
        return Err(PolyError::IndexOutOfRange {
            index: i,
            bound: nvars + 1,
        });
    }
    let mut p = MVPoly::zero(nvars);
    let mut chosen = Vec::with_capacity(i);
    subsets(nvars, i, 0, &mut chosen, &mut |set| {
        let mut e = vec![0u32; nvars];
        for &j in set {
            e[j] = 1;
        }
        p.add_term(field, e, Felt::ONE);
    });
    Ok(p)
}

fn subsets(n: usize, k: usize, start: usize, chosen: &mut Vec<usize>, f: &mut impl FnMut(&[usize])) {
    if chosen.len() == k {
        f(chosen);
        return;
    }
    let need = k - chosen.len();
    for j in start..=n.saturating_sub(need) {
        chosen.push(j);
        subsets(n, k, j + 1, chosen, f);
        chosen.pop();
    }
}

pub fn mv_eval(field: &Field, p: &MVPoly, x: &[Felt]) -> Result<Felt, PolyError> {
    p.eval(field, x)
}

pub fn mv_partial(field: &Field, p: &MVPoly, var: usize) -> Result<MVPoly, PolyError> {
    p.partial(field, var)
}
