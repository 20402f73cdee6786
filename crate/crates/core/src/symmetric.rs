//! `H_d` and `H_f` in the elementary-symmetric basis.
//!
//! For `f = T^{k+d} + f_{d-1} T^{k+d-1} + ... + f_0 T^k` and
//! `Q = (T - X_1)...(T - X_{k+1})`, `H_f` is the coefficient of `T^k` in
//! `f mod Q`. It is a symmetric polynomial, `H_f = G_f(Π_1, ..., Π_d)`, with
//! `G_f = H_d + f_{d-1} H_{d-1} + ... + f_1 H_1 + f_0` and `H_j` the polynomial
//! attached to the monomial `T^{k+j}`.
//!
//! A [`SymPoly`] stores a polynomial in `Y_1, ..., Y_d` (to be composed with
//! `Π_1, ..., Π_d`) keyed by exponent tuples `(i_1, ..., i_d)`.
//!
//! The remainder route in [`eval_hf`] is the ground-truth definition of
//! `H_f(x)`; the symbolic constructions and expansions are cross-checked
//! against it.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use crate::gf::{Felt, Field};
use crate::poly::{elementary_symmetric, MVPoly, PolyError, UPoly};

/// Default term cap for [`expand_to_vars`].
pub const EXPANSION_TERM_CAP: usize = 200_000;

/// Largest `k + 1` accepted by [`jacobian_identities`].
pub const IDENTITY_MAX_VARS: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymmetricError {
    #[error("point has {got} coordinates, expected k + 1 = {expected}")]
    ArityMismatch { expected: usize, got: usize },
    #[error("expansion would exceed {cap} terms")]
    TooManyVariables { cap: usize },
    #[error("symbolic identity checks support 2 <= k + 1 <= {max}, got {got}")]
    CapExceeded { max: usize, got: usize },
    #[error("top polynomial has {got} low coefficients but d = {d}")]
    BadTopPoly { d: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// The top part `T^{k+d} + Σ_{j<d} f_j T^{k+j}` of a word-generating polynomial.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TopPoly {
    k: usize,
    lows: Vec<Felt>,
}

impl TopPoly {
    /// `lows` is `(f_0, ..., f_{d-1})`; `d` is its length.
    pub fn new(k: usize, lows: Vec<Felt>) -> TopPoly {
        TopPoly { k, lows }
    }

    /// `T^{k+d}`.
    pub fn monomial(k: usize, d: usize) -> TopPoly {
        TopPoly {
            k,
            lows: vec![Felt::ZERO; d],
        }
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn d(&self) -> usize {
        self.lows.len()
    }

    pub fn lows(&self) -> &[Felt] {
        &self.lows
    }

    pub fn is_monomial(&self) -> bool {
        self.lows.iter().all(|c| c.is_zero())
    }

    /// The full polynomial `f` as a [`UPoly`].
    pub fn to_upoly(&self) -> UPoly {
        let mut coeffs = vec![Felt::ZERO; self.k];
        coeffs.extend_from_slice(&self.lows);
        coeffs.push(Felt::ONE);
        UPoly::new(coeffs)
    }

    /// Every top polynomial with the given `k` and `d`, lows enumerated in
    /// lexicographic rep order with `f_0` varying fastest.
    pub fn all(field: &Field, k: usize, d: usize) -> impl Iterator<Item = TopPoly> + '_ {
        let q = field.q() as u64;
        let count = q.pow(d as u32);
        (0..count).map(move |mut index| {
            let lows = (0..d)
                .map(|_| {
                    let rep = index % q;
                    index /= q;
                    field.elem(rep).expect("rep below q")
                })
                .collect();
            TopPoly { k, lows }
        })
    }
}

/// Polynomial in `Y_1, ..., Y_d` keyed by exponent tuples `(i_1, ..., i_d)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SymPoly {
    d: usize,
    terms: BTreeMap<Vec<u32>, Felt>,
}

impl SymPoly {
    pub fn zero(d: usize) -> SymPoly {
        SymPoly {
            d,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(d: usize, c: Felt) -> SymPoly {
        let mut s = SymPoly::zero(d);
        s.add_term_raw(vec![0; d], c, None);
        s
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, Felt> {
        &self.terms
    }

    pub fn coeff(&self, tuple: &[u32]) -> Felt {
        self.terms.get(tuple).copied().unwrap_or(Felt::ZERO)
    }

    /// `Σ_j j·i_j` of an exponent tuple.
    pub fn weight(tuple: &[u32]) -> u32 {
        tuple
            .iter()
            .enumerate()
            .map(|(j, &i)| (j as u32 + 1) * i)
            .sum()
    }

    /// `"(i_1,...,i_d)"`, the key format used in JSON output.
    pub fn tuple_key(tuple: &[u32]) -> String {
        let mut s = String::from("(");
        for (n, i) in tuple.iter().enumerate() {
            if n > 0 {
                s.push(',');
            }
            let _ = write!(s, "{i}");
        }
        s.push(')');
        s
    }

    fn add_term_raw(&mut self, tuple: Vec<u32>, c: Felt, field: Option<&Field>) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&tuple) {
            Some(slot) => {
                let field = field.expect("merging terms needs a field");
                let sum = field.add(*slot, c);
                if sum.is_zero() {
                    self.terms.remove(&tuple);
                } else {
                    *slot = sum;
                }
            }
            None => {
                self.terms.insert(tuple, c);
            }
        }
    }

    pub fn add(&self, field: &Field, other: &SymPoly) -> SymPoly {
        let mut out = self.clone();
        for (t, &c) in &other.terms {
            out.add_term_raw(t.clone(), c, Some(field));
        }
        out
    }

    pub fn scale(&self, field: &Field, c: Felt) -> SymPoly {
        let mut out = SymPoly::zero(self.d);
        for (t, &a) in &self.terms {
            out.add_term_raw(t.clone(), field.mul(a, c), Some(field));
        }
        out
    }

    /// Multiplies by `c·Y_j` (`j` one based).
    fn mul_y(&self, field: &Field, j: usize, c: Felt) -> SymPoly {
        let mut out = SymPoly::zero(self.d);
        for (t, &a) in &self.terms {
            let mut nt = t.clone();
            nt[j - 1] += 1;
            out.add_term_raw(nt, field.mul(a, c), Some(field));
        }
        out
    }

    /// Value at `y = (y_1, ..., y_d)`.
    pub fn eval(&self, field: &Field, y: &[Felt]) -> Felt {
        debug_assert_eq!(y.len(), self.d);
        let mut total = Felt::ZERO;
        for (t, &c) in &self.terms {
            let mut term = c;
            for (&yj, &ij) in y.iter().zip(t) {
                if ij > 0 {
                    term = field.mul(term, field.pow(yj, ij as u64));
                }
            }
            total = field.add(total, term);
        }
        total
    }

    /// `∂/∂Y_j` (`j` one based); exponent multipliers are reduced mod `p`.
    pub fn partial(&self, field: &Field, j: usize) -> SymPoly {
        let mut out = SymPoly::zero(self.d);
        for (t, &c) in &self.terms {
            let e = t[j - 1];
            if e == 0 {
                continue;
            }
            let mut nt = t.clone();
            nt[j - 1] -= 1;
            out.add_term_raw(nt, field.scale_int(c, e as u64), Some(field));
        }
        out
    }
}

/// `H_d` built from `H_0 = 1` and
/// `H_m = Π_1 H_{m-1} - Π_2 H_{m-2} + ... + (-1)^{m-1} Π_m H_0`.
pub fn h_basis_recursive(d: usize, field: &Field) -> SymPoly {
    recursive_basis(d, field).pop().expect("basis is never empty")
}

/// `[H_0, ..., H_d]`, all as tuples of length `d`.
fn recursive_basis(d: usize, field: &Field) -> Vec<SymPoly> {
    let mut basis: Vec<SymPoly> = vec![SymPoly::constant(d, Felt::ONE)];
    for m in 1..=d {
        let mut hm = SymPoly::zero(d);
        for i in 1..=m {
            let sign = if i % 2 == 1 { Felt::ONE } else { field.neg(Felt::ONE) };
            hm = hm.add(field, &basis[m - i].mul_y(field, i, sign));
        }
        basis.push(hm);
    }
    basis
}

/// `H_d` from the closed form
/// `Σ_{i_1 + 2 i_2 + ... + d i_d = d} (-1)^{i_2 + i_4 + ...} (i_1+...+i_d)! / (i_1!...i_d!) Y^i`.
/// Multinomials are computed over the integers and then reduced mod `p`.
pub fn h_basis_explicit(d: usize, field: &Field) -> SymPoly {
    let mut out = SymPoly::zero(d);
    let mut tuple = vec![0u32; d];
    weighted_compositions(d, d, &mut tuple, &mut |t| {
        let total: u32 = t.iter().sum();
        let mut num = factorial(total);
        for &i in t {
            num /= factorial(i);
        }
        let residue = (num % BigUint::from(field.p())).to_u64().unwrap_or(0);
        let mut c = field.from_int(residue as i64);
        let delta: u32 = t.iter().skip(1).step_by(2).sum();
        if delta % 2 == 1 {
            c = field.neg(c);
        }
        out.add_term_raw(t.to_vec(), c, Some(field));
    });
    out
}

fn factorial(n: u32) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Calls `f` on every tuple with `Σ_j j·t_j = target` over parts `1..=max_part`.
fn weighted_compositions(target: usize, max_part: usize, t: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    fn go(rest: usize, part: usize, t: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
        if part == 0 {
            if rest == 0 {
                f(t);
            }
            return;
        }
        for count in 0..=rest / part {
            t[part - 1] = count as u32;
            go(rest - count * part, part - 1, t, f);
        }
        t[part - 1] = 0;
    }
    go(target, max_part, t, f);
}

type BasisKey = (u32, u32, Vec<u32>, usize);

/// `[H_0, ..., H_d]` for `(d, field)`, built once per process and shared.
pub fn h_basis_cached(d: usize, field: &Field) -> Arc<Vec<SymPoly>> {
    static CACHE: OnceLock<Mutex<HashMap<BasisKey, Arc<Vec<SymPoly>>>>> = OnceLock::new();
    let key = (
        field.p(),
        field.s(),
        field.modulus().map(<[u32]>::to_vec).unwrap_or_default(),
        d,
    );
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(hit) = cache.lock().expect("basis cache poisoned").get(&key) {
        return Arc::clone(hit);
    }
    let built = Arc::new(recursive_basis(d, field));
    cache
        .lock()
        .expect("basis cache poisoned")
        .entry(key)
        .or_insert(built)
        .clone()
}

/// `G_f = H_d + f_{d-1} H_{d-1} + ... + f_1 H_1 + f_0` in the `Y` basis.
pub fn g_f(f: &TopPoly, field: &Field) -> SymPoly {
    let basis = h_basis_cached(f.d(), field);
    let mut g = basis[f.d()].clone();
    for (j, &c) in f.lows().iter().enumerate() {
        g = g.add(field, &basis[j].scale(field, c));
    }
    g
}

/// Substitutes `Π_j` (in `nvars` variables) for `Y_j`. When `nvars < d`,
/// `Π_j` for `j > nvars` is the zero polynomial. Fails with
/// `TooManyVariables` once the expansion passes `cap` terms.
pub fn expand_to_vars(g: &SymPoly, nvars: usize, field: &Field, cap: usize) -> Result<MVPoly, SymmetricError> {
    let pis: Vec<MVPoly> = (0..=g.d().min(nvars))
        .map(|i| elementary_symmetric(field, i, nvars))
        .collect::<Result<_, _>>()?;
    let mut powers: HashMap<(usize, u32), MVPoly> = HashMap::new();
    let mut out = MVPoly::zero(nvars);
    'terms: for (t, &c) in g.terms() {
        let mut term = MVPoly::constant(nvars, c);
        for (idx, &e) in t.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let j = idx + 1;
            if j > nvars {
                continue 'terms;
            }
            let power = powers
                .entry((j, e))
                .or_insert_with(|| pis[j].pow(field, e))
                .clone();
            term = term.mul(field, &power);
            if term.num_terms() > cap {
                return Err(SymmetricError::TooManyVariables { cap });
            }
        }
        out = out.add(field, &term);
        if out.num_terms() > cap {
            return Err(SymmetricError::TooManyVariables { cap });
        }
    }
    Ok(out)
}

/// `H_f` as a polynomial in `X_1, ..., X_{k+1}`.
pub fn expand_hf(f: &TopPoly, field: &Field) -> Result<MVPoly, SymmetricError> {
    expand_to_vars(&g_f(f, field), f.k() + 1, field, EXPANSION_TERM_CAP)
}

fn check_arity(f: &TopPoly, x: &[Felt]) -> Result<(), SymmetricError> {
    if x.len() != f.k() + 1 {
        return Err(SymmetricError::ArityMismatch {
            expected: f.k() + 1,
            got: x.len(),
        });
    }
    Ok(())
}

/// `H_f(x)` by the remainder route: the `T^k` coefficient of `f mod Q_x` with
/// `Q_x = Π(T - x_i)`. Only the entries that can reach the `T^k` slot are
/// updated during the division, so the cost is `O(k^2 + d·min(d, k))`.
pub fn eval_hf(f: &TopPoly, field: &Field, x: &[Felt]) -> Result<Felt, SymmetricError> {
    check_arity(f, x)?;
    Ok(hf_unchecked(f, field, x))
}

pub(crate) fn hf_unchecked(f: &TopPoly, field: &Field, x: &[Felt]) -> Felt {
    let k = f.k();
    let d = f.d();
    let q = UPoly::from_roots(field, x);
    let qc = q.coeffs();
    // rem[i] holds the coefficient of T^{k+i}.
    let mut rem: Vec<Felt> = Vec::with_capacity(d + 1);
    rem.extend_from_slice(f.lows());
    rem.push(Felt::ONE);
    for top in (1..=d).rev() {
        let c = rem[top];
        if c.is_zero() {
            continue;
        }
        // Subtract c·T^{top-1}·Q; entries below T^k never feed back upward.
        for (i, &qi) in qc.iter().enumerate() {
            let pos = top as isize - 1 + i as isize - k as isize;
            if pos < 0 {
                continue;
            }
            let pos = pos as usize;
            rem[pos] = field.sub(rem[pos], field.mul(c, qi));
        }
    }
    rem[0]
}

/// `Π_0(x), ..., Π_upto(x)`; entries past `x.len()` are zero.
pub fn pi_values(field: &Field, x: &[Felt], upto: usize) -> Vec<Felt> {
    let mut e = vec![Felt::ZERO; upto.max(x.len()) + 1];
    e[0] = Felt::ONE;
    for (n, &xi) in x.iter().enumerate() {
        for i in (1..=n + 1).rev() {
            e[i] = field.add(e[i], field.mul(e[i - 1], xi));
        }
    }
    e.truncate(upto + 1);
    e
}

/// `H_0(x), ..., H_upto(x)` for a point with `k + 1 = x.len()` coordinates,
/// read off the `T^k` coefficients of `T^{k+j} mod Q_x`.
pub fn h_values(field: &Field, x: &[Felt], upto: usize) -> Vec<Felt> {
    let n = x.len();
    let q = UPoly::from_roots(field, x);
    let qc = q.coeffs();
    // r = T^{n-1} mod Q_x, stored as n coefficients.
    assert!(n > 0, "h_values needs at least one coordinate");
    let mut r = vec![Felt::ZERO; n];
    r[n - 1] = Felt::ONE;
    let mut out = Vec::with_capacity(upto + 1);
    out.push(Felt::ONE);
    for _ in 0..upto {
        let top = r[n - 1];
        for i in (1..n).rev() {
            r[i] = field.sub(r[i - 1], field.mul(top, qc[i]));
        }
        r[0] = field.neg(field.mul(top, qc[0]));
        out.push(r[n - 1]);
    }
    out
}

/// Row `i` (1 based) of `A(x) = (∂Π_i/∂X_j)(x)`, via
/// `∂Π_i/∂X_j = Π_{i-1} - X_j ∂Π_{i-1}/∂X_j`.
fn pi_jacobian(field: &Field, x: &[Felt], rows: usize) -> Vec<Vec<Felt>> {
    let pis = pi_values(field, x, rows);
    let mut a = vec![vec![Felt::ZERO; x.len()]; rows];
    for (j, &xj) in x.iter().enumerate() {
        let mut prev = Felt::ZERO;
        for i in 1..=rows {
            let v = field.sub(pis[i - 1], field.mul(xj, prev));
            a[i - 1][j] = v;
            prev = v;
        }
    }
    a
}

/// `∇H_f(x)` by the chain rule `∇G_f(Π(x))·A(x)`.
pub fn grad_hf(f: &TopPoly, field: &Field, x: &[Felt]) -> Result<Vec<Felt>, SymmetricError> {
    check_arity(f, x)?;
    let d = f.d();
    let g = g_f(f, field);
    let y = pi_values(field, x, d);
    let grad_g: Vec<Felt> = (1..=d).map(|j| g.partial(field, j).eval(field, &y[1..])).collect();
    let a = pi_jacobian(field, x, d);
    Ok((0..x.len())
        .map(|col| {
            grad_g
                .iter()
                .zip(&a)
                .fold(Felt::ZERO, |acc, (&gj, row)| field.add(acc, field.mul(gj, row[col])))
        })
        .collect())
}

/// Precomputed chain-rule data for repeated gradient evaluation of one `H_f`.
#[derive(Debug, Clone)]
pub struct GradientKernel {
    d: usize,
    partials: Vec<SymPoly>,
}

impl GradientKernel {
    pub fn new(f: &TopPoly, field: &Field) -> GradientKernel {
        let g = g_f(f, field);
        GradientKernel {
            d: f.d(),
            partials: (1..=f.d()).map(|j| g.partial(field, j)).collect(),
        }
    }

    pub fn eval(&self, field: &Field, x: &[Felt]) -> Vec<Felt> {
        let y = pi_values(field, x, self.d);
        let grad_g: Vec<Felt> = self.partials.iter().map(|p| p.eval(field, &y[1..])).collect();
        let a = pi_jacobian(field, x, self.d);
        (0..x.len())
            .map(|col| {
                grad_g
                    .iter()
                    .zip(&a)
                    .fold(Felt::ZERO, |acc, (&gj, row)| field.add(acc, field.mul(gj, row[col])))
            })
            .collect()
    }

    /// True when the gradient vanishes; exits at the first nonzero entry.
    pub fn vanishes(&self, field: &Field, x: &[Felt]) -> bool {
        let y = pi_values(field, x, self.d);
        let grad_g: Vec<Felt> = self.partials.iter().map(|p| p.eval(field, &y[1..])).collect();
        if grad_g.iter().all(|g| g.is_zero()) {
            return true;
        }
        let a = pi_jacobian(field, x, self.d);
        (0..x.len()).all(|col| {
            grad_g
                .iter()
                .zip(&a)
                .fold(Felt::ZERO, |acc, (&gj, row)| field.add(acc, field.mul(gj, row[col])))
                .is_zero()
        })
    }
}

/// `∇H_f(x)` from `∂H_j/∂X_i = H_{j-1} + H_{j-2} X_i + ... + X_i^{j-1}`.
pub fn grad_hf_lemma(f: &TopPoly, field: &Field, x: &[Felt]) -> Result<Vec<Felt>, SymmetricError> {
    check_arity(f, x)?;
    let d = f.d();
    let h = h_values(field, x, d);
    let mut weights = f.lows().to_vec();
    weights.push(Felt::ONE);
    Ok(x
        .iter()
        .map(|&xi| {
            let mut total = Felt::ZERO;
            for (j, &wj) in weights.iter().enumerate().skip(1) {
                if wj.is_zero() {
                    continue;
                }
                // Horner in x_i over H_{j-1}, ..., H_0.
                let mut dj = Felt::ZERO;
                for &hm in &h[..j] {
                    dj = field.add(field.mul(dj, xi), hm);
                }
                total = field.add(total, field.mul(wj, dj));
            }
            total
        })
        .collect())
}

type PolyMatrix = Vec<Vec<MVPoly>>;

fn mat_mul(field: &Field, a: &PolyMatrix, b: &PolyMatrix, nvars: usize) -> PolyMatrix {
    let inner = b.len();
    let cols = b.first().map_or(0, Vec::len);
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|c| {
                    (0..inner).fold(MVPoly::zero(nvars), |acc, t| {
                        if row[t].is_zero() || b[t][c].is_zero() {
                            acc
                        } else {
                            acc.add(field, &row[t].mul(field, &b[t][c]))
                        }
                    })
                })
                .collect()
        })
        .collect()
}

/// Determinant by Laplace expansion over column subsets, row by row.
fn mat_det(field: &Field, m: &PolyMatrix, nvars: usize) -> MVPoly {
    let n = m.len();
    let mut minors: HashMap<u32, MVPoly> = HashMap::new();
    minors.insert(0, MVPoly::one(nvars));
    for (r, row) in m.iter().enumerate() {
        let mut next: HashMap<u32, MVPoly> = HashMap::new();
        for (&set, minor) in &minors {
            if minor.is_zero() {
                continue;
            }
            for (c, entry) in row.iter().enumerate() {
                if set & (1 << c) != 0 || entry.is_zero() {
                    continue;
                }
                let new_set = set | (1 << c);
                // Laplace sign along the last row: number of chosen columns after c.
                let after = (set >> (c + 1)).count_ones();
                let mut term = minor.mul(field, entry);
                if after % 2 == 1 {
                    term = term.neg(field);
                }
                let slot = next.entry(new_set).or_insert_with(|| MVPoly::zero(nvars));
                *slot = slot.add(field, &term);
            }
        }
        minors = next;
        debug_assert!(minors.keys().all(|s| s.count_ones() as usize == r + 1));
    }
    minors.remove(&((1u32 << n) - 1)).unwrap_or_else(|| MVPoly::zero(nvars))
}

/// One named symbolic identity and whether it held exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityReport {
    pub kplus1: usize,
    pub checks: Vec<IdentityCheck>,
    /// Whether `det(∂Π_i/∂X_j) = (-1)^{k(k+1)/2} Π_{i<j}(X_i - X_j)` holds with
    /// the product oriented as `X_i - X_j`. Informational: the identity that
    /// is actually asserted uses the Vandermonde orientation `X_j - X_i`.
    pub determinant_with_reversed_orientation: bool,
}

impl IdentityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

/// Exact symbolic checks in `k + 1` variables:
/// - `jacobian_factorization`: `(∂Π_i/∂X_j) = B·A` with `B_{ic} = (-1)^{c-1} Π_{i-c}`
///   and `A` the Vandermonde matrix `(X_j^{c-1})`;
/// - `jacobian_determinant`: its determinant is `(-1)^{k(k+1)/2} Π_{i<j}(X_j - X_i)`;
/// - `h_jacobian_factorization`: `(∂H_i/∂X_j) = (H_{i-c})·A`;
/// - `b_inverse`: `B·B'` is the identity for `B'_{ic} = (-1)^{c-1} H_{i-c}`;
/// - `h_derivative_lemma`: `∂H_j/∂X_i = Σ_{m=1}^{j} H_{j-m} X_i^{m-1}` for `j <= 6`.
pub fn jacobian_identities(kplus1: usize, field: &Field) -> Result<IdentityReport, SymmetricError> {
    if !(2..=IDENTITY_MAX_VARS).contains(&kplus1) {
        return Err(SymmetricError::CapExceeded {
            max: IDENTITY_MAX_VARS,
            got: kplus1,
        });
    }
    let n = kplus1;
    let k = n - 1;
    let lemma_max = IDENTITY_MAX_VARS.max(n);
    let minus_one = field.neg(Felt::ONE);
    let signed = |p: &MVPoly, c: usize| if c % 2 == 0 { p.neg(field) } else { p.clone() };

    let pis: Vec<MVPoly> = (0..=n)
        .map(|i| elementary_symmetric(field, i, n))
        .collect::<Result<_, _>>()?;
    let hs: Vec<MVPoly> = (0..=lemma_max)
        .map(|j| expand_to_vars(&h_basis_cached(j, field)[j], n, field, EXPANSION_TERM_CAP))
        .collect::<Result<_, _>>()?;
    let xs: Vec<MVPoly> = (0..n).map(|j| MVPoly::var(n, j)).collect::<Result<_, _>>()?;

    let vandermonde: PolyMatrix = (0..n)
        .map(|c| xs.iter().map(|x| x.pow(field, c as u32)).collect())
        .collect();
    let lower = |entry: &dyn Fn(usize, usize) -> MVPoly| -> PolyMatrix {
        (1..=n)
            .map(|i| {
                (1..=n)
                    .map(|c| if c <= i { entry(i, c) } else { MVPoly::zero(n) })
                    .collect()
            })
            .collect()
    };
    let b = lower(&|i, c| signed(&pis[i - c], c));
    let b_inv = lower(&|i, c| signed(&hs[i - c], c));
    let h_lower = lower(&|i, c| hs[i - c].clone());

    let jac_pi: PolyMatrix = (1..=n)
        .map(|i| (0..n).map(|j| pis[i].partial(field, j)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;
    let jac_h: PolyMatrix = (1..=n)
        .map(|i| (0..n).map(|j| hs[i].partial(field, j)).collect::<Result<_, _>>())
        .collect::<Result<_, _>>()?;

    let factorization = mat_mul(field, &b, &vandermonde, n) == jac_pi;

    let det = mat_det(field, &jac_pi, n);
    let sign = if (k * (k + 1) / 2) % 2 == 1 { minus_one } else { Felt::ONE };
    let mut vdm = MVPoly::constant(n, sign);
    let mut reversed = MVPoly::constant(n, sign);
    for i in 0..n {
        for j in i + 1..n {
            vdm = vdm.mul(field, &xs[j].sub(field, &xs[i]));
            reversed = reversed.mul(field, &xs[i].sub(field, &xs[j]));
        }
    }
    let determinant = det == vdm && mat_det(field, &vandermonde, n) == vdm.scale(field, sign);

    let h_factorization = mat_mul(field, &h_lower, &vandermonde, n) == jac_h;

    let identity: PolyMatrix = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i == j { MVPoly::one(n) } else { MVPoly::zero(n) })
                .collect()
        })
        .collect();
    let inverse = mat_mul(field, &b, &b_inv, n) == identity;

    let mut lemma = true;
    for j in 1..=lemma_max {
        for (i, xi) in xs.iter().enumerate() {
            let mut rhs = MVPoly::zero(n);
            for m in 1..=j {
                rhs = rhs.add(field, &hs[j - m].mul(field, &xi.pow(field, (m - 1) as u32)));
            }
            if hs[j].partial(field, i)? != rhs {
                lemma = false;
            }
        }
    }

    Ok(IdentityReport {
        kplus1,
        checks: vec![
            IdentityCheck {
                name: "jacobian_factorization",
                holds: factorization,
            },
            IdentityCheck {
                name: "jacobian_determinant",
                holds: determinant,
            },
            IdentityCheck {
                name: "h_jacobian_factorization",
                holds: h_factorization,
            },
            IdentityCheck {
                name: "b_inverse",
                holds: inverse,
            },
            IdentityCheck {
                name: "h_derivative_lemma",
                holds: lemma,
            },
        ],
        determinant_with_reversed_orientation: det == reversed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::uni_rem;

    fn pt(field: &Field, v: &[i64]) -> Vec<Felt> {
        v.iter().map(|&c| field.from_int(c)).collect()
    }

    fn sym(field: &Field, d: usize, terms: &[(&[u32], i64)]) -> SymPoly {
        let mut s = SymPoly::zero(d);
        for (t, c) in terms {
            s.add_term_raw(t.to_vec(), field.from_int(*c), Some(field));
        }
        s
    }

    #[test]
    fn recursive_small_cases() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(h_basis_recursive(0, &f7), SymPoly::constant(0, Felt::ONE));
        assert_eq!(h_basis_recursive(1, &f7), sym(&f7, 1, &[(&[1], 1)]));
        assert_eq!(
            h_basis_recursive(2, &f7),
            sym(&f7, 2, &[(&[2, 0], 1), (&[0, 1], -1)])
        );
        assert_eq!(
            h_basis_recursive(3, &f7),
            sym(&f7, 3, &[(&[3, 0, 0], 1), (&[1, 1, 0], -2), (&[0, 0, 1], 1)])
        );
    }

    #[test]
    fn explicit_small_cases() {
        let f7 = Field::prime(7).unwrap();
        let h2 = h_basis_explicit(2, &f7);
        assert_eq!(h2.coeff(&[2, 0]), Felt::ONE);
        assert_eq!(h2.coeff(&[0, 1]), f7.from_int(-1));
        assert_eq!(h_basis_explicit(3, &f7).coeff(&[1, 1, 0]), f7.from_int(-2));
        assert_eq!(h_basis_explicit(4, &f7).coeff(&[0, 0, 0, 1]), f7.from_int(-1));
    }

    #[test]
    fn constructions_agree_and_are_weight_homogeneous() {
        for p in [2u64, 3, 5, 7, 13] {
            let field = Field::prime(p).unwrap();
            for d in 0..=8 {
                let rec = h_basis_recursive(d, &field);
                let exp = h_basis_explicit(d, &field);
                assert_eq!(rec, exp, "p={p} d={d}");
                assert!(rec.terms().keys().all(|t| SymPoly::weight(t) as usize == d));
                if d >= 1 {
                    let mut pure = vec![0u32; d];
                    pure[d - 1] = 1;
                    let expected = if d % 2 == 1 { Felt::ONE } else { field.neg(Felt::ONE) };
                    assert_eq!(rec.coeff(&pure), expected);
                }
            }
        }
    }

    #[test]
    fn g_f_examples() {
        let f7 = Field::prime(7).unwrap();
        let mono = TopPoly::monomial(4, 3);
        assert_eq!(g_f(&mono, &f7), h_basis_recursive(3, &f7));

        let (c, e) = (f7.from_int(3), f7.from_int(5));
        let f = TopPoly::new(3, vec![e, c]);
        let g = g_f(&f, &f7);
        assert_eq!(
            g,
            sym(&f7, 2, &[(&[2, 0], 1), (&[0, 1], -1), (&[1, 0], 3), (&[0, 0], 5)])
        );
        assert_eq!(g.coeff(&[0, 0]), e);
    }

    #[test]
    fn expansion_examples() {
        let f7 = Field::prime(7).unwrap();
        let y1 = sym(&f7, 1, &[(&[1], 1)]);
        assert_eq!(
            expand_to_vars(&y1, 3, &f7, EXPANSION_TERM_CAP).unwrap(),
            elementary_symmetric(&f7, 1, 3).unwrap()
        );
        let h2 = expand_to_vars(&h_basis_recursive(2, &f7), 2, &f7, EXPANSION_TERM_CAP).unwrap();
        let expected = MVPoly::from_terms(
            &f7,
            2,
            [(vec![2, 0], Felt::ONE), (vec![1, 1], Felt::ONE), (vec![0, 2], Felt::ONE)],
        )
        .unwrap();
        assert_eq!(h2, expected);
        for d in 0..=5 {
            let e = expand_to_vars(&h_basis_recursive(d, &f7), 4, &f7, EXPANSION_TERM_CAP).unwrap();
            assert!(e.is_homogeneous_of_degree(d as u32));
        }
        assert_eq!(
            expand_to_vars(&h_basis_recursive(6, &f7), 6, &f7, 10),
            Err(SymmetricError::TooManyVariables { cap: 10 })
        );
    }

    #[test]
    fn eval_examples() {
        let f7 = Field::prime(7).unwrap();
        let x = pt(&f7, &[1, 2, 3]);
        assert_eq!(eval_hf(&TopPoly::monomial(2, 2), &f7, &x).unwrap(), f7.from_int(4));
        let lin = TopPoly::monomial(2, 1);
        assert_eq!(eval_hf(&lin, &f7, &x).unwrap(), f7.from_int(6));
        assert_eq!(
            eval_hf(&lin, &f7, &x[..2]),
            Err(SymmetricError::ArityMismatch { expected: 3, got: 2 })
        );
    }

    #[test]
    fn remainder_route_matches_full_division() {
        let f = Field::with_order(9).unwrap();
        let x: Vec<Felt> = [1u64, 3, 4, 8].iter().map(|&r| f.elem(r).unwrap()).collect();
        for top in TopPoly::all(&f, 3, 2) {
            let q = UPoly::from_roots(&f, &x);
            let full = uni_rem(&f, &top.to_upoly(), &q).unwrap();
            assert_eq!(eval_hf(&top, &f, &x).unwrap(), full.coeff(3));
        }
    }

    #[test]
    fn h_values_match_monomials() {
        let f = Field::with_order(13).unwrap();
        let x = pt(&f, &[2, 5, 7, 11]);
        let hv = h_values(&f, &x, 6);
        for (j, &v) in hv.iter().enumerate() {
            assert_eq!(v, eval_hf(&TopPoly::monomial(3, j), &f, &x).unwrap());
        }
    }

    #[test]
    fn gradient_examples() {
        let f7 = Field::prime(7).unwrap();
        let x = pt(&f7, &[1, 2, 5, 6]);
        assert_eq!(
            grad_hf(&TopPoly::monomial(3, 1), &f7, &x).unwrap(),
            vec![Felt::ONE; 4]
        );
        // dH_2/dX_j = H_1 + X_j
        let g = grad_hf(&TopPoly::monomial(3, 2), &f7, &x).unwrap();
        let h1 = eval_hf(&TopPoly::monomial(3, 1), &f7, &x).unwrap();
        for (j, &xj) in x.iter().enumerate() {
            assert_eq!(g[j], f7.add(h1, xj));
        }
    }

    #[test]
    fn determinant_at_a_point() {
        // 3x3 Jacobian of (Π_1, Π_2, Π_3) at (1, 2, 3), expanded by cofactors.
        let f7 = Field::prime(7).unwrap();
        let rows = [[1i64, 1, 1], [5, 4, 3], [6, 3, 2]];
        let det = rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
            - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
            + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0]);
        assert_eq!(det, -2);
        let x = pt(&f7, &[1, 2, 3]);
        let jac = pi_jacobian(&f7, &x, 3);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(jac[r], pt(&f7, row));
        }
        // (-1)^{k(k+1)/2} Π_{i<j}(x_j - x_i) with k = 2: -(1)(2)(1) = -2.
        assert_eq!(f7.from_int(det), f7.from_int(-2));
        let m: PolyMatrix = rows
            .iter()
            .map(|r| r.iter().map(|&v| MVPoly::constant(1, f7.from_int(v))).collect())
            .collect();
        assert_eq!(mat_det(&f7, &m, 1), MVPoly::constant(1, f7.from_int(-2)));
        // Repeated coordinate: determinant vanishes.
        let degenerate = pi_jacobian(&f7, &pt(&f7, &[4, 4, 1]), 3);
        let m: PolyMatrix = degenerate
            .iter()
            .map(|r| r.iter().map(|&v| MVPoly::constant(1, v)).collect())
            .collect();
        assert!(mat_det(&f7, &m, 1).is_zero());
    }

    #[test]
    fn identities_for_two_variables() {
        let f7 = Field::prime(7).unwrap();
        let report = jacobian_identities(2, &f7).unwrap();
        assert!(report.all_hold(), "{report:?}");
        assert!(matches!(
            jacobian_identities(7, &f7),
            Err(SymmetricError::CapExceeded { .. })
        ));
        assert!(matches!(
            jacobian_identities(1, &f7),
            Err(SymmetricError::CapExceeded { .. })
        ));
    }

    #[test]
    fn reversed_orientation_only_matches_for_even_sign() {
        let f7 = Field::prime(7).unwrap();
        for n in 2..=4 {
            let k = n - 1;
            let report = jacobian_identities(n, &f7).unwrap();
            assert_eq!(report.determinant_with_reversed_orientation, (k * (k + 1) / 2) % 2 == 0);
        }
    }
}
