//! Enumeration of monomial bases.

use super::{Factor, Monomial, Var};
use crate::weight::HalfInt;

/// Multiset of variables of a monomial, sorted.
pub type Content = Vec<(Var, u32)>;

/// All monomials of exactly the given weight in the given variables.
/// Every variable must have positive weight.
pub fn monomials_of_weight(vars: &[Var], w: HalfInt) -> Vec<Monomial> {
    if w < HalfInt::ZERO {
        return Vec::new();
    }
    let mut factors = Vec::new();
    for v in vars {
        assert!(v.weight > HalfInt::ZERO, "variables must have positive weight");
        let mut n = 0;
        while v.weight + HalfInt::from_int(n as i64) <= w {
            factors.push(Factor::new(*v, n));
            n += 1;
        }
    }
    factors.sort();
    factors.dedup();
    let mut out = Vec::new();
    let mut current = Vec::new();
    weight_rec(&factors, 0, w, &mut current, &mut out);
    out.sort();
    out
}

fn weight_rec(
    factors: &[Factor],
    idx: usize,
    remaining: HalfInt,
    current: &mut Vec<(Factor, u32)>,
    out: &mut Vec<Monomial>,
) {
    if remaining == HalfInt::ZERO {
        out.push(Monomial(current.clone()));
        return;
    }
    if idx == factors.len() {
        return;
    }
    let f = factors[idx];
    let fw = f.weight();
    let max = if f.odd() {
        1
    } else {
        (remaining.twice() / fw.twice()) as u32
    };
    for p in (0..=max).rev() {
        let used = fw.times(p as i64);
        if used > remaining {
            continue;
        }
        if p > 0 {
            current.push((f, p));
        }
        weight_rec(factors, idx + 1, remaining - used, current, out);
        if p > 0 {
            current.pop();
        }
    }
}

/// All monomials with the given variable content and total derivative order.
pub fn monomials_of_content(content: &[(Var, u32)], order: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    content_rec(content, 0, order, &mut current, &mut out);
    out.sort();
    out
}

fn content_rec(
    content: &[(Var, u32)],
    idx: usize,
    remaining: u32,
    current: &mut Vec<(Factor, u32)>,
    out: &mut Vec<Monomial>,
) {
    if idx == content.len() {
        if remaining == 0 {
            out.push(Monomial(current.clone()));
        }
        return;
    }
    let (v, m) = content[idx];
    for s in 0..=remaining {
        for orders in order_multisets(m, s, s, v.odd) {
            let mark = current.len();
            let mut i = 0;
            while i < orders.len() {
                let mut j = i;
                while j < orders.len() && orders[j] == orders[i] {
                    j += 1;
                }
                current.push((Factor::new(v, orders[i]), (j - i) as u32));
                i = j;
            }
            content_rec(content, idx + 1, remaining - s, current, out);
            current.truncate(mark);
        }
    }
}

/// Non-increasing sequences of length `m`, entries at most `max`, sum `s`;
/// strictly decreasing when `strict`.
fn order_multisets(m: u32, s: u32, max: u32, strict: bool) -> Vec<Vec<u32>> {
    if m == 0 {
        return if s == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in (0..=max.min(s)).rev() {
        if first * m < s {
            break;
        }
        let next_max = if strict {
            match first.checked_sub(1) {
                Some(x) => x,
                None if m == 1 => 0,
                None => continue,
            }
        } else {
            first
        };
        for mut rest in order_multisets(m - 1, s - first, next_max, strict) {
            let mut seq = vec![first];
            seq.append(&mut rest);
            out.push(seq);
        }
    }
    out
}
