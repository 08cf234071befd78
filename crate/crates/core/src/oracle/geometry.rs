use std::collections::HashSet;
use std::fmt::Write as _;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::construction::{ratio_to_f64, Construction, Digit};
use crate::counting::Stat;
use crate::error::{Error, Result};

use super::check_guard;

/// A level-`k` basic rectangle `[x0, x0 + width] x [y0, y0 + height]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rect {
    pub x0: BigRational,
    pub y0: BigRational,
    pub width: BigRational,
    pub height: BigRational,
}

struct GridLevel {
    n: u32,
    m: u32,
    digits: Vec<Digit>,
}

/// Odometer over words of the given levels, yielding the mixed-radix
/// numerators `(X, Y)` of each rectangle's lower-left corner.
struct Cells {
    levels: Vec<GridLevel>,
    idx: Vec<usize>,
    xs: Vec<u128>,
    ys: Vec<u128>,
    done: bool,
}

impl Cells {
    fn new(levels: Vec<GridLevel>, x0: u128, y0: u128) -> Self {
        let depth = levels.len();
        let mut cells = Cells {
            levels,
            idx: vec![0; depth],
            xs: vec![x0; depth + 1],
            ys: vec![y0; depth + 1],
            done: false,
        };
        cells.refresh(0);
        cells
    }

    fn refresh(&mut self, from: usize) {
        for h in from..self.levels.len() {
            let level = &self.levels[h];
            let (i, j) = level.digits[self.idx[h]];
            self.xs[h + 1] = self.xs[h] * u128::from(level.n) + u128::from(i);
            self.ys[h + 1] = self.ys[h] * u128::from(level.m) + u128::from(j);
        }
    }
}

impl Iterator for Cells {
    type Item = (u128, u128);

    fn next(&mut self) -> Option<(u128, u128)> {
        if self.done {
            return None;
        }
        let depth = self.levels.len();
        let out = (self.xs[depth], self.ys[depth]);
        let mut h = depth;
        loop {
            if h == 0 {
                self.done = true;
                break;
            }
            h -= 1;
            self.idx[h] += 1;
            if self.idx[h] < self.levels[h].digits.len() {
                self.refresh(h);
                break;
            }
            self.idx[h] = 0;
        }
        Some(out)
    }
}

/// Prefractal at depth `k`: grid denominators and the level list, after the
/// guard and 128-bit checks.
struct Prefractal {
    width_den: u128,
    height_den: u128,
    levels: Vec<GridLevel>,
}

impl Prefractal {
    fn new(c: &Construction, k: usize, guard: u128) -> Result<Self> {
        let count = c.stat_product(Stat::R, 0, k);
        check_guard(count.to_u128().unwrap_or(u128::MAX), guard)?;
        let fits = |v: BigUint| v.to_u128().filter(|&v| v < 1u128 << 100);
        let width_den = fits(c.n_product(k)).ok_or(Error::Overflow { depth: k })?;
        let height_den = fits(c.m_product(k)).ok_or(Error::Overflow { depth: k })?;
        let levels = (1..=k)
            .map(|h| {
                let level = c.level_at(h);
                GridLevel {
                    n: level.n(),
                    m: level.m(),
                    digits: level.digits().iter().copied().collect(),
                }
            })
            .collect();
        Ok(Prefractal {
            width_den,
            height_den,
            levels,
        })
    }

    fn cells(&self) -> Cells {
        Cells::new(self.levels_clone(0), 0, 0)
    }

    fn levels_clone(&self, from: usize) -> Vec<GridLevel> {
        self.levels[from..]
            .iter()
            .map(|l| GridLevel {
                n: l.n,
                m: l.m,
                digits: l.digits.clone(),
            })
            .collect()
    }

    /// One independent cell stream per first-level digit.
    fn partitions(&self) -> Vec<Cells> {
        match self.levels.first() {
            None => vec![self.cells()],
            Some(first) => first
                .digits
                .iter()
                .map(|&(i, j)| Cells::new(self.levels_clone(1), u128::from(i), u128::from(j)))
                .collect(),
        }
    }
}

/// All level-`k` basic rectangles in lexicographic word order.
pub fn enumerate_rects(c: &Construction, k: usize, guard: u128) -> Result<impl Iterator<Item = Rect>> {
    let pf = Prefractal::new(c, k, guard)?;
    let (wd, hd) = (BigInt::from(pf.width_den), BigInt::from(pf.height_den));
    let width = BigRational::new(BigInt::one(), wd.clone());
    let height = BigRational::new(BigInt::one(), hd.clone());
    Ok(pf.cells().map(move |(x, y)| Rect {
        x0: BigRational::new(BigInt::from(x), wd.clone()),
        y0: BigRational::new(BigInt::from(y), hd.clone()),
        width: width.clone(),
        height: height.clone(),
    }))
}

/// Inclusive range of half-open grid cells `[a delta, (a + 1) delta)` met by
/// the closed interval `[lo/den, (lo + 1)/den]`, with the last cell closed
/// at 1. `delta = dp/dq`.
fn cell_span(lo: u128, den: u128, dp: u128, dq: u128, cells: u128) -> Option<(u128, u128)> {
    let scale = den.checked_mul(dp)?;
    let first = lo.checked_mul(dq)? / scale;
    let last = (lo + 1).checked_mul(dq)? / scale;
    Some((first.min(cells - 1), last.min(cells - 1)))
}

/// Number of `delta`-mesh cells meeting the level-`k_geom` prefractal.
/// Rectangles are closed and cells half-open, with exact integer tests.
pub fn box_count(c: &Construction, k_geom: usize, delta: &BigRational, guard: u128) -> Result<u128> {
    if *delta <= BigRational::zero() || *delta >= BigRational::one() {
        return Err(Error::DomainError(ratio_to_f64(delta)));
    }
    let pf = Prefractal::new(c, k_geom, guard)?;
    let overflow = Error::Overflow { depth: k_geom };
    let dp = delta.numer().to_u128().ok_or_else(|| overflow.clone())?;
    let dq = delta.denom().to_u128().ok_or_else(|| overflow.clone())?;
    let cells = dq.div_ceil(dp);
    let (wd, hd) = (pf.width_den, pf.height_den);
    let parts: Vec<Result<HashSet<(u128, u128)>>> = pf
        .partitions()
        .into_par_iter()
        .map(|stream| {
            let mut hit = HashSet::new();
            for (x, y) in stream {
                let (a0, a1) = cell_span(x, wd, dp, dq, cells).ok_or_else(|| overflow.clone())?;
                let (b0, b1) = cell_span(y, hd, dp, dq, cells).ok_or_else(|| overflow.clone())?;
                for a in a0..=a1 {
                    for b in b0..=b1 {
                        hit.insert((a, b));
                    }
                }
            }
            Ok(hit)
        })
        .collect();
    let mut all = HashSet::new();
    for part in parts {
        all.extend(part?);
    }
    Ok(all.len() as u128)
}

/// Plain-text PPM (`P3`) of the level-`k` prefractal on a `width x width`
/// canvas: black rectangles on white, y axis pointing up. A rectangle at
/// `[x0, x1]` covers pixel columns `floor(x0 w) .. floor(x1 w)`, and at
/// least one pixel in each direction.
pub fn render_ppm(c: &Construction, k: usize, width: u32, guard: u128) -> Result<String> {
    let pf = Prefractal::new(c, k, guard)?;
    let w = width as usize;
    check_guard((w as u128) * (w as u128), guard.max(1 << 26))?;
    let mut black = vec![false; w * w];
    let span = |lo: u128, den: u128| -> (usize, usize) {
        let wide = u128::from(width);
        let start = (lo * wide / den) as usize;
        let end = ((lo + 1) * wide / den) as usize;
        (start.min(w), end.max(start + 1).min(w))
    };
    for (x, y) in pf.cells() {
        let (c0, c1) = span(x, pf.width_den);
        // image rows count down from the top edge
        let (r0, r1) = span(pf.height_den - y - 1, pf.height_den);
        for row in r0..r1 {
            black[row * w + c0..row * w + c1].fill(true);
        }
    }
    let mut out = String::with_capacity(w * w * 12 + 32);
    let _ = write!(out, "P3\n{width} {width}\n255\n");
    for row in black.chunks(w.max(1)) {
        // plain PPM lines stay under 70 characters
        for chunk in row.chunks(5) {
            let line: Vec<&str> = chunk
                .iter()
                .map(|&b| if b { "0 0 0" } else { "255 255 255" })
                .collect();
            out.push_str(&line.join(" "));
            out.push('\n');
        }
    }
    Ok(out)
}
