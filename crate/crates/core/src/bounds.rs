//! Exact evaluation of the point-count bounds and the nonexistence thresholds.
//!
//! Every quantity is a [`Surd`] `a + b·√q` with rational `a` and `b`, so the
//! half-integer powers `q^{m/2}` never leave exact arithmetic. Signs are decided
//! by comparing `a²` with `b²q`.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Pow, Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::gf::prime_power_parts;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
}

fn invalid(msg: impl Into<String>) -> BoundsError {
    BoundsError::InvalidParams(msg.into())
}

/// `a + b·√radicand`, normalized so that `b = 0` whenever the radicand is a
/// perfect square.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Surd {
    rational: BigRational,
    sqrt_coeff: BigRational,
    radicand: BigInt,
}

impl Surd {
    pub fn new(radicand: u64, rational: BigRational, sqrt_coeff: BigRational) -> Surd {
        let radicand = BigInt::from(radicand);
        let root = radicand.sqrt();
        if &root * &root == radicand {
            let rational = rational + sqrt_coeff * BigRational::from_integer(root);
            return Surd {
                rational,
                sqrt_coeff: BigRational::zero(),
                radicand,
            };
        }
        Surd {
            rational,
            sqrt_coeff,
            radicand,
        }
    }

    pub fn integer(radicand: u64, n: impl Into<BigInt>) -> Surd {
        Surd::new(radicand, BigRational::from_integer(n.into()), BigRational::zero())
    }

    pub fn zero(radicand: u64) -> Surd {
        Surd::integer(radicand, 0)
    }

    /// `q^{m/2}`.
    pub fn half_power(q: u64, m: u32) -> Surd {
        let base = BigInt::from(q).pow(m / 2);
        if m % 2 == 0 {
            Surd::new(q, BigRational::from_integer(base), BigRational::zero())
        } else {
            Surd::new(q, BigRational::zero(), BigRational::from_integer(base))
        }
    }

    pub fn rational_part(&self) -> &BigRational {
        &self.rational
    }

    pub fn sqrt_coeff(&self) -> &BigRational {
        &self.sqrt_coeff
    }

    pub fn radicand(&self) -> &BigInt {
        &self.radicand
    }

    fn same_radicand(&self, other: &Surd) {
        assert_eq!(self.radicand, other.radicand, "surds over different radicands");
    }

    pub fn add(&self, other: &Surd) -> Surd {
        self.same_radicand(other);
        Surd {
            rational: &self.rational + &other.rational,
            sqrt_coeff: &self.sqrt_coeff + &other.sqrt_coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn sub(&self, other: &Surd) -> Surd {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Surd {
        Surd {
            rational: -&self.rational,
            sqrt_coeff: -&self.sqrt_coeff,
            radicand: self.radicand.clone(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Surd {
        Surd {
            rational: &self.rational * c,
            sqrt_coeff: &self.sqrt_coeff * c,
            radicand: self.radicand.clone(),
        }
    }

    pub fn scale_int(&self, c: impl Into<BigInt>) -> Surd {
        self.scale(&BigRational::from_integer(c.into()))
    }

    /// Sign of the value, decided without irrational arithmetic.
    pub fn signum(&self) -> Ordering {
        let a = self.rational.cmp(&BigRational::zero());
        let b = self.sqrt_coeff.cmp(&BigRational::zero());
        match (a, b) {
            (x, Ordering::Equal) => x,
            (Ordering::Equal, y) => y,
            (x, y) if x == y => x,
            (x, _) => {
                // Opposite signs: the sign of a wins when a² > b²·radicand.
                let a2 = &self.rational * &self.rational;
                let b2q = &self.sqrt_coeff * &self.sqrt_coeff * BigRational::from_integer(self.radicand.clone());
                match a2.cmp(&b2q) {
                    Ordering::Greater => x,
                    Ordering::Less => x.reverse(),
                    Ordering::Equal => Ordering::Equal,
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    /// Exact comparison; `None` when the radicands differ.
    pub fn compare(&self, other: &Surd) -> Option<Ordering> {
        (self.radicand == other.radicand).then(|| self.sub(other).signum())
    }

    /// Largest integer not above the value.
    pub fn floor(&self) -> BigInt {
        let b = &self.sqrt_coeff;
        // b·√r = sign(b)·√(b²r); floor via integer square roots of scaled values.
        let den = self.rational.denom() * b.denom();
        let den_r = BigRational::from_integer(den.clone());
        let a_scaled = (&self.rational * &den_r).to_integer();
        let b_scaled = (b * &den_r).to_integer();
        // value·den = a_scaled + b_scaled·√r, with den > 0.
        let b2r = &b_scaled * &b_scaled * &self.radicand;
        let root = b2r.sqrt();
        let exact = &root * &root == b2r;
        // floor(b_scaled·√r) for either sign of b_scaled.
        let s = if b_scaled.is_negative() {
            if exact {
                -root
            } else {
                -root - 1
            }
        } else {
            root
        };
        // floor((a + s + frac) / den) where frac in [0, 1); a + s is an integer.
        (a_scaled + s).div_floor(&den)
    }

    /// Floating approximation, for display only.
    pub fn approx(&self) -> f64 {
        let a = self.rational.to_f64().unwrap_or(f64::NAN);
        let b = self.sqrt_coeff.to_f64().unwrap_or(f64::NAN);
        let r = self.radicand.to_f64().unwrap_or(f64::NAN);
        a + b * r.sqrt()
    }
}

impl PartialOrd for Surd {
    fn partial_cmp(&self, other: &Surd) -> Option<Ordering> {
        self.compare(other)
    }
}

impl fmt::Display for Surd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let b = &self.sqrt_coeff;
        match (self.rational.is_zero(), b.is_zero()) {
            (_, true) => write!(f, "{}", self.rational),
            (true, false) => write!(f, "{}*sqrt({})", b, self.radicand),
            (false, false) if b.is_negative() => {
                write!(f, "{} - {}*sqrt({})", self.rational, -b, self.radicand)
            }
            (false, false) => write!(f, "{} + {}*sqrt({})", self.rational, b, self.radicand),
        }
    }
}

/// A rational `a/b` in lowest terms, `a, b > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Epsilon {
    num: u64,
    den: u64,
}

impl Epsilon {
    pub fn new(num: u64, den: u64) -> Result<Epsilon, BoundsError> {
        if num == 0 || den == 0 {
            return Err(invalid("epsilon must be a positive rational a/b"));
        }
        let g = num.gcd(&den);
        Ok(Epsilon {
            num: num / g,
            den: den / g,
        })
    }

    pub fn num(&self) -> u64 {
        self.num
    }

    pub fn den(&self) -> u64 {
        self.den
    }

    /// `0 < ε < 1`.
    pub fn in_unit_interval(&self) -> bool {
        self.num < self.den
    }
}

impl fmt::Display for Epsilon {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

impl FromStr for Epsilon {
    type Err = BoundsError;

    fn from_str(s: &str) -> Result<Epsilon, BoundsError> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u64>()
                .map_err(|_| invalid(format!("cannot parse epsilon {s:?}; expected a/b")))
        };
        match s.split_once('/') {
            Some((a, b)) => Epsilon::new(parse(a)?, parse(b)?),
            None => Epsilon::new(parse(s)?, 1),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    ConditionsMet,
    ConditionsNotMet(Vec<String>),
    NotApplicable(Vec<String>),
}

impl Verdict {
    pub fn label(&self) -> &'static str {
        match self {
            Verdict::ConditionsMet => "conditions_met",
            Verdict::ConditionsNotMet(_) => "conditions_not_met",
            Verdict::NotApplicable(_) => "not_applicable",
        }
    }

    pub fn reasons(&self) -> &[String] {
        match self {
            Verdict::ConditionsMet => &[],
            Verdict::ConditionsNotMet(r) | Verdict::NotApplicable(r) => r,
        }
    }

    fn from_checks(checks: &[ConditionCheck]) -> Verdict {
        let failed: Vec<String> = checks.iter().filter(|c| !c.holds).map(|c| c.name.clone()).collect();
        if failed.is_empty() {
            Verdict::ConditionsMet
        } else {
            Verdict::ConditionsNotMet(failed)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionCheck {
    pub name: String,
    pub holds: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct BoundParams {
    pub q: u64,
    pub k: Option<u64>,
    pub d: u64,
    pub m: Option<u64>,
    pub s: Option<u64>,
    pub epsilon: Option<Epsilon>,
    pub large_char: bool,
    pub p: Option<u64>,
}

/// Named exact terms of one bound, its value, and a verdict.
///
/// For lower bounds the verdict records positivity of the value; for upper
/// bounds and estimates it is `ConditionsMet` once the parameters are valid.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundReport {
    pub name: &'static str,
    pub params: BoundParams,
    pub terms: BTreeMap<String, Surd>,
    pub checks: Vec<ConditionCheck>,
    pub value: Option<Surd>,
    pub verdict: Verdict,
}

impl BoundReport {
    pub fn term(&self, name: &str) -> Option<&Surd> {
        self.terms.get(name)
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

/// `c·q^{m/2}` as a surd over `q`.
fn term(q: u64, c: impl Into<BigInt>, half_exp: u32) -> Surd {
    Surd::half_power(q, half_exp).scale_int(c)
}

/// `p_m = q^m + ... + q + 1`.
pub fn projective_count(q: u64, m: u64) -> BigInt {
    (0..=m).map(|i| big(q).pow(i as u32)).sum()
}

fn positivity(value: &Surd) -> Verdict {
    if value.is_positive() {
        Verdict::ConditionsMet
    } else {
        Verdict::ConditionsNotMet(vec!["bound is not positive".into()])
    }
}

fn check_q(q: u64) -> Result<(), BoundsError> {
    if q < 2 {
        return Err(invalid("q must be at least 2"));
    }
    Ok(())
}

fn check_kd(q: u64, k: u64, d: u64) -> Result<(), BoundsError> {
    check_q(q)?;
    if d < 2 || k <= d {
        return Err(invalid(format!("need k > d >= 2, got k = {k}, d = {d}")));
    }
    if q - 1 <= k + d {
        return Err(invalid(format!("need q - 1 > k + d, got q = {q}, k + d = {}", k + d)));
    }
    Ok(())
}

fn to_u32(n: u64) -> Result<u32, BoundsError> {
    u32::try_from(n).map_err(|_| invalid(format!("exponent {n} too large")))
}

/// `p_m` and both deviation terms `(d-1)^{m-s} q^{(m+s+1)/2}` and
/// `6(d+2)^{m+2} q^{(m+s)/2}` of the explicit estimate for a hypersurface of
/// `P^{m+1}` with singular locus of dimension at most `s`.
pub fn gl_estimate_terms(m: u64, s: u64, d: u64, q: u64) -> Result<BoundReport, BoundsError> {
    check_q(q)?;
    if d < 2 || m <= s {
        return Err(invalid(format!("need d >= 2 and m > s, got m = {m}, s = {s}, d = {d}")));
    }
    let (mu, su) = (to_u32(m)?, to_u32(s)?);
    let gap = mu - su;
    let p_m = Surd::integer(q, projective_count(q, m));
    let betti_power = big(d - 1).pow(gap);
    let sign = if gap % 2 == 0 { BigInt::one() } else { -BigInt::one() };
    let betti_bound = BigRational::new(big(d - 1), big(d)) * BigRational::from_integer(&betti_power - sign);
    let t1 = term(q, betti_power.clone(), mu + su + 1);
    let t2 = term(q, big(6) * big(d + 2).pow(mu + 2), mu + su);
    let deviation = t1.add(&t2);
    let mut terms = BTreeMap::new();
    terms.insert("p_m".into(), p_m.clone());
    terms.insert("betti_bound".into(), Surd::new(q, betti_bound, BigRational::zero()));
    terms.insert("betti_power".into(), Surd::integer(q, betti_power));
    terms.insert("gl_term1".into(), t1);
    terms.insert("gl_term2".into(), t2);
    terms.insert("lower".into(), p_m.sub(&deviation));
    terms.insert("upper".into(), p_m.add(&deviation));
    terms.insert("deviation".into(), deviation.clone());
    Ok(BoundReport {
        name: "gl_estimate",
        params: BoundParams {
            q,
            d,
            m: Some(m),
            s: Some(s),
            ..BoundParams::default()
        },
        terms,
        checks: Vec::new(),
        value: Some(deviation),
        verdict: Verdict::ConditionsMet,
    })
}

/// Katz-sum bookkeeping behind `C_{s,m} <= 6(d+2)^{m+2}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CsmBound {
    pub m: u64,
    pub d: u64,
    /// `E(n, d+1) = 2(d+2)^n` for `n = 1, ..., m+2`.
    pub e_values: Vec<BigUint>,
    /// `A(n, d+1)` for `n = 2, ..., m+2`.
    pub a_values: Vec<BigUint>,
    /// `1 + Σ_{n=1}^{m+1} (1 + A(n+1, d+1))`.
    pub katz_sum: BigUint,
    /// `6(d+2)^{m+2}`.
    pub closed_form: BigUint,
    pub holds: bool,
}

/// `E(n, d) = 2(d+1)^n`.
pub fn euler_bound(n: u64, d: u64) -> BigUint {
    BigUint::from(2u32) * BigUint::from(d + 1).pow(n as u32)
}

/// `A(n, d) = E(n, d) + 2 + 2 Σ_{j=1}^{n-1} E(j, d)`.
pub fn katz_a(n: u64, d: u64) -> BigUint {
    let tail: BigUint = (1..n).map(|j| euler_bound(j, d)).sum();
    euler_bound(n, d) + BigUint::from(2u32) + BigUint::from(2u32) * tail
}

pub fn c_sm_bound(m: u64, d: u64) -> Result<CsmBound, BoundsError> {
    if m < 1 || d < 2 {
        return Err(invalid(format!("need m >= 1 and d >= 2, got m = {m}, d = {d}")));
    }
    let e_values = (1..=m + 2).map(|n| euler_bound(n, d + 1)).collect();
    let a_values: Vec<BigUint> = (2..=m + 2).map(|n| katz_a(n, d + 1)).collect();
    let katz_sum = BigUint::one() + a_values.iter().map(|a| BigUint::one() + a).sum::<BigUint>();
    let closed_form = BigUint::from(6u32) * BigUint::from(d + 2).pow(to_u32(m + 2)?);
    Ok(CsmBound {
        m,
        d,
        e_values,
        a_values,
        holds: katz_sum <= closed_form,
        katz_sum,
        closed_form,
    })
}

fn lower_bound_report(
    name: &'static str,
    q: u64,
    k: u64,
    d: u64,
    large_char: bool,
    main: Surd,
    subtracted: Vec<(&str, Surd)>,
) -> BoundReport {
    let mut value = main.clone();
    let mut terms = BTreeMap::new();
    terms.insert("main_term".to_string(), main);
    for (n, t) in subtracted {
        value = value.sub(&t);
        terms.insert(n.to_string(), t);
    }
    BoundReport {
        name,
        params: BoundParams {
            q,
            k: Some(k),
            d,
            large_char,
            ..BoundParams::default()
        },
        terms,
        checks: Vec::new(),
        verdict: positivity(&value),
        value: Some(value),
    }
}

/// `q^k - 2(d-1)^{k-d+1} q^{(k+d)/2} - 7(d+2)^{k+2} q^{(k+d-1)/2}`.
pub fn affine_lower_bound(q: u64, k: u64, d: u64) -> Result<BoundReport, BoundsError> {
    check_kd(q, k, d)?;
    let (ku, du) = (to_u32(k)?, to_u32(d)?);
    Ok(lower_bound_report(
        "affine_lower_bound",
        q,
        k,
        d,
        false,
        term(q, 1, 2 * ku),
        vec![
            ("betti_term", term(q, big(2) * big(d - 1).pow(ku - du + 1), ku + du)),
            ("csm_term", term(q, big(7) * big(d + 2).pow(ku + 2), ku + du - 1)),
        ],
    ))
}

/// Variant for `char > d + 1` and singular locus of dimension at most `d - 2`:
/// `q^k - 2(d-1)^{k-d+2} q^{(k+d-1)/2} - 7(d+2)^{k+2} q^{(k+d-2)/2}`.
pub fn affine_lower_bound_large_char(q: u64, k: u64, d: u64) -> Result<BoundReport, BoundsError> {
    check_kd(q, k, d)?;
    let (ku, du) = (to_u32(k)?, to_u32(d)?);
    Ok(lower_bound_report(
        "affine_lower_bound_large_char",
        q,
        k,
        d,
        true,
        term(q, 1, 2 * ku),
        vec![
            ("betti_term", term(q, big(2) * big(d - 1).pow(ku - du + 2), ku + du - 1)),
            ("csm_term", term(q, big(7) * big(d + 2).pow(ku + 2), ku + du - 2)),
        ],
    ))
}

/// `factor · (q^{k-1} + 2(d-1)^{betti_exp} q^{e/2} + 7(d+2)^{k+1} q^{(e-1)/2})`.
fn hyperplane_bound(
    name: &'static str,
    q: u64,
    k: u64,
    d: u64,
    factor: BigInt,
    large_char: bool,
) -> Result<BoundReport, BoundsError> {
    check_kd(q, k, d)?;
    let (ku, du) = (to_u32(k)?, to_u32(d)?);
    let (betti_exp, half) = if large_char {
        (ku - du + 1, ku + du - 2)
    } else {
        (ku - du, ku + du - 1)
    };
    let point_term = term(q, 1, 2 * (ku - 1));
    let betti_term = term(q, big(2) * big(d - 1).pow(betti_exp), half);
    let csm_term = term(q, big(7) * big(d + 2).pow(ku + 1), half - 1);
    let per_hyperplane = point_term.add(&betti_term).add(&csm_term);
    let value = per_hyperplane.scale_int(factor.clone());
    let mut terms = BTreeMap::new();
    terms.insert("point_term".into(), point_term);
    terms.insert("betti_term".into(), betti_term);
    terms.insert("csm_term".into(), csm_term);
    terms.insert("per_hyperplane".into(), per_hyperplane);
    terms.insert("factor".into(), Surd::integer(q, factor));
    Ok(BoundReport {
        name,
        params: BoundParams {
            q,
            k: Some(k),
            d,
            large_char,
            ..BoundParams::default()
        },
        terms,
        checks: Vec::new(),
        value: Some(value),
        verdict: Verdict::ConditionsMet,
    })
}

/// Upper bound on zeros of `H_f` with a zero coordinate.
pub fn n1_bound(q: u64, k: u64, d: u64) -> Result<BoundReport, BoundsError> {
    hyperplane_bound("n1_bound", q, k, d, big(k + 1), false)
}

/// Upper bound on zeros of `H_f` with two equal coordinates.
pub fn n2_bound(q: u64, k: u64, d: u64) -> Result<BoundReport, BoundsError> {
    hyperplane_bound("n2_bound", q, k, d, big((k + 1) * k / 2), false)
}

/// Upper bound, for `char > d + 1`, on zeros with a zero coordinate or two
/// equal coordinates.
pub fn exceptional_bound_large_char(q: u64, k: u64, d: u64) -> Result<BoundReport, BoundsError> {
    hyperplane_bound("exceptional_bound_large_char", q, k, d, big((k + 1) * (k + 2) / 2), true)
}

/// Lower bound on zeros of `H_f` with nonzero pairwise-distinct coordinates.
/// A positive value means no `f` of this shape generates a deep hole.
pub fn useful_points_lower_bound(q: u64, k: u64, d: u64, large_char: bool) -> Result<BoundReport, BoundsError> {
    check_kd(q, k, d)?;
    let (ku, du) = (to_u32(k)?, to_u32(d)?);
    let t = big((k + 1) * (k + 2) / 2);
    let (betti_exp, half) = if large_char {
        (ku - du + 1, ku + du - 1)
    } else {
        (ku - du, ku + du)
    };
    let betti = big(2) * big(d - 1).pow(betti_exp);
    let csm = big(7) * big(d + 2).pow(ku + 1);
    Ok(lower_bound_report(
        if large_char {
            "useful_points_lower_bound_large_char"
        } else {
            "useful_points_lower_bound"
        },
        q,
        k,
        d,
        large_char,
        term(q, 1, 2 * ku),
        vec![
            ("vandermonde_defect", term(q, t.clone(), 2 * (ku - 1))),
            ("betti_term", term(q, &betti * big(d - 1), half)),
            ("betti_cross", term(q, &betti * &t, half - 1)),
            ("csm_term", term(q, &csm * big(d + 2), half - 1)),
            ("csm_cross", term(q, &csm * &t, half - 2)),
        ],
    ))
}

/// Hypotheses of the nonexistence theorems, one check per inequality.
///
/// Standard: `q > (k+1)^2`, `q > 14 d^{2+ε}`, `k >= d(2/ε + 1)`.
/// Large characteristic: `q > (k+1)^2`, `q > 20 d^{2+ε}`,
/// `k >= (d-1)(2/ε + 1)` and `char(F_q) > d + 1`.
/// With `ε = a/b`, `q > c·d^{2+ε}` is decided as `q^b > c^b d^{2b+a}`.
pub fn theorem_conditions(
    q: u64,
    k: u64,
    d: u64,
    epsilon: Epsilon,
    large_char: bool,
    p: Option<u64>,
) -> Result<BoundReport, BoundsError> {
    check_q(q)?;
    if !epsilon.in_unit_interval() {
        return Err(invalid(format!("epsilon = {epsilon} must satisfy 0 < epsilon < 1")));
    }
    let params = BoundParams {
        q,
        k: Some(k),
        d,
        epsilon: Some(epsilon),
        large_char,
        p,
        ..BoundParams::default()
    };
    if d < 3 {
        let reason = match d {
            0 => "d = 0: the word is generated by a polynomial of degree k and is a deep hole",
            1 => "d = 1: outside the theorem; degree k+1 is settled separately for k > 2 and q > k + 3",
            _ => "d = 2: outside the theorem; the analogous statement needs an unspecified constant M_1 > 14",
        };
        return Ok(BoundReport {
            name: "theorem_conditions",
            params,
            terms: BTreeMap::new(),
            checks: Vec::new(),
            value: None,
            verdict: Verdict::NotApplicable(vec![reason.to_string()]),
        });
    }
    if k <= d {
        return Err(invalid(format!("need k > d, got k = {k}, d = {d}")));
    }
    if q - 1 <= k + d {
        return Err(invalid(format!("need q - 1 > k + d, got q = {q}, k + d = {}", k + d)));
    }
    let derived_p = prime_power_parts(q).ok().map(|(p, _)| p as u64);
    if let (Some(given), Some(actual)) = (p, derived_p) {
        if given != actual {
            return Err(invalid(format!("p = {given} is not the characteristic of q = {q}")));
        }
    }
    let (a, b) = (epsilon.num(), epsilon.den());
    let c: u64 = if large_char { 20 } else { 14 };
    let dk = if large_char { d - 1 } else { d };

    let mut terms = BTreeMap::new();
    let mut checks = Vec::new();
    let mut record = |name: &str, holds: bool| {
        checks.push(ConditionCheck {
            name: name.to_string(),
            holds,
        })
    };

    record("q is a prime power", derived_p.is_some());
    let square = big(k + 1).pow(2u32);
    record("q>(k+1)^2", big(q) > square);
    let qb = big(q).pow(to_u32(b)?);
    let rhs = big(c).pow(to_u32(b)?) * big(d).pow(to_u32(2 * b + a)?);
    record(&format!("q>{c}*d^(2+eps)"), qb > rhs);
    let k_lhs = big(k) * big(a);
    let k_rhs = big(dk) * big(2 * b + a);
    let k_name = if large_char { "k>=(d-1)(2/eps+1)" } else { "k>=d(2/eps+1)" };
    record(k_name, k_lhs >= k_rhs);
    if large_char {
        let char_ok = derived_p.or(p).is_some_and(|p| p > d + 1);
        record("char(F_q)>d+1", char_ok);
    }

    terms.insert("(k+1)^2".to_string(), Surd::integer(q, square));
    terms.insert("q^b".to_string(), Surd::integer(q, qb));
    terms.insert(format!("{c}^b*d^(2b+a)"), Surd::integer(q, rhs));
    terms.insert("k*a".to_string(), Surd::integer(q, k_lhs));
    terms.insert("d_eff*(2b+a)".to_string(), Surd::integer(q, k_rhs));

    let verdict = Verdict::from_checks(&checks);
    Ok(BoundReport {
        name: "theorem_conditions",
        params,
        terms,
        checks,
        value: None,
        verdict,
    })
}
