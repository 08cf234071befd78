use std::collections::BTreeMap;
use std::ops::AddAssign;

use crate::construction::{Construction, Digit};
use crate::error::{Error, Result};
use crate::measure::ApproxSquare;

use super::{check_guard, StableMap};

/// Mixed-radix numerators of the lower-left corner of an approximate square:
/// `x = column / (n_1 ... n_l)` and `y = row / (m_1 ... m_k)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareKey {
    pub column: u128,
    pub row: u128,
}

impl SquareKey {
    /// Digit prefixes `(i_1..i_l, j_1..j_k)` of this key.
    pub fn to_square(self, c: &Construction, k: usize) -> ApproxSquare {
        let l = c.l_of_k(k).l;
        let mut column = self.column;
        let mut i_prefix = vec![0; l];
        for h in (1..=l).rev() {
            let n = u128::from(c.level_at(h).n());
            i_prefix[h - 1] = (column % n) as u32;
            column /= n;
        }
        let mut row = self.row;
        let mut j_prefix = vec![0; k];
        for h in (1..=k).rev() {
            let m = u128::from(c.level_at(h).m());
            j_prefix[h - 1] = (row % m) as u32;
            row /= m;
        }
        ApproxSquare {
            k,
            l,
            i_prefix,
            j_prefix,
        }
    }
}

fn push_digit(acc: u128, base: u32, digit: u32, depth: usize) -> Result<u128> {
    acc.checked_mul(u128::from(base))
        .and_then(|v| v.checked_add(u128::from(digit)))
        .ok_or(Error::Overflow { depth })
}

/// Walks all words of length `max(k, l(k))` level by level, merging words
/// that fix the same column and row digits, and folds a weight along each
/// word. Returns every depth-`k` square with the summed weight of its words.
pub(crate) fn square_frontier<W, F>(
    c: &Construction,
    k: usize,
    guard: u128,
    start: W,
    weight: F,
) -> Result<StableMap<SquareKey, W>>
where
    W: Clone + AddAssign,
    F: Fn(usize, Digit, &W) -> W,
{
    let l = c.l_of_k(k).l;
    let mut frontier = StableMap::default();
    frontier.insert(SquareKey { column: 0, row: 0 }, start);
    for h in 1..=k.max(l) {
        let level = c.level_at(h);
        check_guard(frontier.len() as u128 * level.len() as u128, guard)?;
        let mut next: StableMap<SquareKey, W> = StableMap::default();
        next.reserve(frontier.len() * level.len());
        for (key, w) in &frontier {
            for &(i, j) in level.digits() {
                let column = if h <= l {
                    push_digit(key.column, level.n(), i, h)?
                } else {
                    key.column
                };
                let row = if h <= k {
                    push_digit(key.row, level.m(), j, h)?
                } else {
                    key.row
                };
                let w2 = weight(h, (i, j), w);
                match next.entry(SquareKey { column, row }) {
                    std::collections::hash_map::Entry::Occupied(mut e) => *e.get_mut() += w2,
                    std::collections::hash_map::Entry::Vacant(e) => {
                        e.insert(w2);
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(frontier)
}

/// Number of distinct column/row prefix tuples realised by words of
/// `Sigma^max(k, l)`.
pub fn census_approx_squares(c: &Construction, k: usize, guard: u128) -> Result<u128> {
    let frontier = square_frontier(c, k, guard, 1u128, |_, _, w| *w)?;
    Ok(frontier.len() as u128)
}

fn product_between(a: usize, b: usize, base: impl Fn(usize) -> u32) -> u128 {
    (a + 1..=b).map(|h| u128::from(base(h))).product()
}

/// For each depth-`k` square, the number of depth-`k2` squares whose prefix
/// tuples extend its own; returns the min and max over depth-`k` squares.
pub fn gamma_census(c: &Construction, k: usize, k2: usize, guard: u128) -> Result<(u128, u128)> {
    if k >= k2 {
        return Err(Error::BadRange { k, k2 });
    }
    let l = c.l_of_k(k).l;
    let l2 = c.l_of_k(k2).l;
    let children = square_frontier(c, k2, guard, 1u128, |_, _, w| *w)?;
    let col_div = product_between(l, l2, |h| c.level_at(h).n());
    let row_div = product_between(k, k2, |h| c.level_at(h).m());
    let mut per_parent: BTreeMap<SquareKey, u128> = BTreeMap::new();
    for key in children.keys() {
        let parent = SquareKey {
            column: key.column / col_div,
            row: key.row / row_div,
        };
        *per_parent.entry(parent).or_default() += 1;
    }
    let min = per_parent.values().copied().min().unwrap_or(0);
    let max = per_parent.values().copied().max().unwrap_or(0);
    Ok((min, max))
}
