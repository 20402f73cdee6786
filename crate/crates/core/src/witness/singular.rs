use std::collections::HashSet;

use rayon::prelude::*;

use crate::gf::{Felt, Field};
use crate::rscode::RSCode;
use crate::symmetric::{h_values, hf_unchecked, GradientKernel, TopPoly};

use super::{distinct_count, WitnessError};

/// Largest `q^{k+1}` that exhaustive scans accept.
pub const EXHAUSTIVE_LIMIT: u64 = 100_000_000;

/// A rational point with the number of distinct values among its coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SingularPoint {
    pub point: Vec<Felt>,
    pub distinct: usize,
}

/// A partition `I` of the coordinates whose linear variety
/// `L_I = {x : x constant on every block}` lies entirely in a point set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearFamily {
    pub blocks: Vec<Vec<usize>>,
}

pub(super) fn check_exhaustive(field: &Field, nvars: usize) -> Result<(), WitnessError> {
    let size = (field.q() as u128).checked_pow(nvars as u32).unwrap_or(u128::MAX);
    if size > EXHAUSTIVE_LIMIT as u128 {
        return Err(WitnessError::TooLargeForExhaustive {
            size,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    Ok(())
}

pub(super) fn check_k(f: &TopPoly, code: &RSCode) -> Result<(), WitnessError> {
    if f.k() != code.k() {
        return Err(WitnessError::InvalidDimensions(format!(
            "polynomial has k = {} but the code has k = {}",
            f.k(),
            code.k()
        )));
    }
    Ok(())
}

/// Calls `visit` on every point of `F_q^{nvars}` whose first coordinate has
/// rep `first`, in lexicographic rep order.
pub(super) fn for_each_point_with_first(field: &Field, nvars: usize, first: u32, mut visit: impl FnMut(&[Felt])) {
    let q = field.q();
    let elements: Vec<Felt> = field.elements().collect();
    let mut digits = vec![0u32; nvars];
    digits[0] = first;
    let mut x: Vec<Felt> = digits.iter().map(|&r| elements[r as usize]).collect();
    loop {
        visit(&x);
        let mut i = nvars;
        loop {
            if i == 1 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < q {
                x[i] = elements[digits[i] as usize];
                break;
            }
            digits[i] = 0;
            x[i] = elements[0];
        }
    }
}

/// Runs `scan` once per first coordinate, concurrently, and concatenates the
/// results in canonical order.
fn scan_points(field: &Field, nvars: usize, keep: impl Fn(&[Felt]) -> bool + Sync) -> Vec<SingularPoint> {
    let per_first: Vec<Vec<SingularPoint>> = (0..field.q())
        .into_par_iter()
        .map(|first| {
            let mut out = Vec::new();
            for_each_point_with_first(field, nvars, first, |x| {
                if keep(x) {
                    out.push(SingularPoint {
                        point: x.to_vec(),
                        distinct: distinct_count(x),
                    });
                }
            });
            out
        })
        .collect();
    per_first.into_iter().flatten().collect()
}

/// Every `x ∈ F_q^{k+1}` with `H_f(x) = 0` and `∇H_f(x) = 0`.
pub fn scan_rational_singular_points(f: &TopPoly, code: &RSCode) -> Result<Vec<SingularPoint>, WitnessError> {
    check_k(f, code)?;
    let field = code.field();
    let nvars = f.k() + 1;
    check_exhaustive(field, nvars)?;
    let kernel = GradientKernel::new(f, field);
    Ok(scan_points(field, nvars, |x| {
        hf_unchecked(f, field, x).is_zero() && kernel.vanishes(field, x)
    }))
}

/// Rational solutions of `H_d = 0`, `f_{d-1} H_{d-1} = 0`, `∇H_d = 0`: the
/// affine cone over the singular points at infinity.
pub fn scan_infinity_singular(f: &TopPoly, code: &RSCode) -> Result<Vec<SingularPoint>, WitnessError> {
    check_k(f, code)?;
    let field = code.field();
    let nvars = f.k() + 1;
    check_exhaustive(field, nvars)?;
    let d = f.d();
    let monomial = TopPoly::monomial(f.k(), d);
    let kernel = GradientKernel::new(&monomial, field);
    let lead = if d == 0 { Felt::ZERO } else { f.lows()[d - 1] };
    Ok(scan_points(field, nvars, |x| {
        if d == 0 {
            // H_0 = 1 never vanishes.
            return false;
        }
        let h = h_values(field, x, d);
        h[d].is_zero() && (lead.is_zero() || h[d - 1].is_zero()) && kernel.vanishes(field, x)
    }))
}

/// Set partitions of `{0, ..., n-1}` into exactly `blocks` nonempty blocks,
/// each block sorted and blocks ordered by their least element.
pub fn set_partitions(n: usize, blocks: usize) -> Vec<Vec<Vec<usize>>> {
    fn go(i: usize, n: usize, blocks: usize, labels: &mut Vec<usize>, used: usize, out: &mut Vec<Vec<Vec<usize>>>) {
        if n - i < blocks - used {
            return;
        }
        if i == n {
            let mut parts = vec![Vec::new(); blocks];
            for (pos, &b) in labels.iter().enumerate() {
                parts[b].push(pos);
            }
            out.push(parts);
            return;
        }
        for b in 0..=used.min(blocks - 1) {
            labels.push(b);
            go(i + 1, n, blocks, labels, used.max(b + 1), out);
            labels.pop();
        }
    }
    let mut out = Vec::new();
    if blocks == 0 || blocks > n {
        return out;
    }
    go(0, n, blocks, &mut Vec::new(), 0, &mut out);
    out
}

/// Partitions into `d - 1` blocks whose whole variety `L_I(F_q)` lies in
/// `points`. Rational containment is evidence only: a variety can have all of
/// its `F_q`-points in a set without being contained in it over the closure.
pub fn flag_linear_families(field: &Field, nvars: usize, d: usize, points: &[SingularPoint]) -> Vec<LinearFamily> {
    if d < 2 {
        return Vec::new();
    }
    let set: HashSet<&[Felt]> = points.iter().map(|p| p.point.as_slice()).collect();
    let elements: Vec<Felt> = field.elements().collect();
    let q = elements.len();
    set_partitions(nvars, d - 1)
        .into_iter()
        .filter(|parts| {
            let mut values = vec![0usize; parts.len()];
            let mut x = vec![Felt::ZERO; nvars];
            loop {
                for (part, &v) in parts.iter().zip(&values) {
                    for &i in part {
                        x[i] = elements[v];
                    }
                }
                if !set.contains(x.as_slice()) {
                    return false;
                }
                let mut j = 0;
                loop {
                    if j == values.len() {
                        return true;
                    }
                    values[j] += 1;
                    if values[j] < q {
                        break;
                    }
                    values[j] = 0;
                    j += 1;
                }
            }
        })
        .map(|blocks| LinearFamily { blocks })
        .collect()
}
