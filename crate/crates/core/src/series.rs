//! Per-level sequences over an eventually periodic index set.
//!
//! Levels are 1-indexed. Stored values cover the preperiod followed by one
//! copy of the period; every query is answered in O(1) regardless of depth.

use num_bigint::BigUint;
use num_traits::One;

/// Neumaier-compensated running sum.
#[derive(Debug, Clone, Copy, Default)]
pub(crate) struct CompensatedSum {
    sum: f64,
    compensation: f64,
}

impl CompensatedSum {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.compensation += (self.sum - t) + x;
        } else {
            self.compensation += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.compensation
    }
}

impl FromIterator<f64> for CompensatedSum {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = CompensatedSum::default();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Real-valued per-level series with prefix sums.
#[derive(Debug, Clone)]
pub(crate) struct LevelSeries {
    pre_cum: Vec<f64>,
    period_cum: Vec<f64>,
}

impl LevelSeries {
    pub(crate) fn new(values: &[f64], pre_len: usize) -> Self {
        let prefix = |vals: &[f64]| {
            let mut acc = CompensatedSum::default();
            let mut out = Vec::with_capacity(vals.len() + 1);
            out.push(0.0);
            for &v in vals {
                acc.add(v);
                out.push(acc.value());
            }
            out
        };
        LevelSeries {
            pre_cum: prefix(&values[..pre_len]),
            period_cum: prefix(&values[pre_len..]),
        }
    }

    fn pre_len(&self) -> usize {
        self.pre_cum.len() - 1
    }

    fn period_len(&self) -> usize {
        self.period_cum.len() - 1
    }

    pub(crate) fn period_total(&self) -> f64 {
        self.period_cum[self.period_len()]
    }

    pub(crate) fn period_mean(&self) -> f64 {
        self.period_total() / self.period_len() as f64
    }

    /// Value at level `k` (k >= 1).
    #[cfg(test)]
    pub(crate) fn at(&self, k: usize) -> f64 {
        self.sum(k - 1, k)
    }

    /// Sum over levels 1..=k.
    pub(crate) fn cum(&self, k: usize) -> f64 {
        let pre = self.pre_len();
        if k <= pre {
            return self.pre_cum[k];
        }
        let (q, r) = ((k - pre) / self.period_len(), (k - pre) % self.period_len());
        self.pre_cum[pre] + q as f64 * self.period_total() + self.period_cum[r]
    }

    /// Sum over levels a < i <= b; zero when the range is empty.
    pub(crate) fn sum(&self, a: usize, b: usize) -> f64 {
        if b <= a {
            return 0.0;
        }
        let pre = self.pre_len();
        if a < pre {
            return self.cum(b) - self.cum(a);
        }
        let p = self.period_len();
        let (qa, ra) = ((a - pre) / p, (a - pre) % p);
        let (qb, rb) = ((b - pre) / p, (b - pre) % p);
        (qb - qa) as f64 * self.period_total() + (self.period_cum[rb] - self.period_cum[ra])
    }

    /// Smallest `l` with `cum(l) >= x`, up to floating-point slack. Callers
    /// refine the answer with exact comparisons.
    pub(crate) fn invert(&self, x: f64) -> usize {
        let pre = self.pre_len();
        if x <= 0.0 {
            return 0;
        }
        if x <= self.pre_cum[pre] {
            return self.pre_cum.partition_point(|&c| c < x);
        }
        let rest = x - self.pre_cum[pre];
        let p = self.period_len();
        let q = (rest / self.period_total()).floor().max(0.0) as usize;
        let base = self.pre_cum[pre] + q as f64 * self.period_total();
        let r = self.period_cum.partition_point(|&c| base + c < x);
        pre + q * p + r.min(p)
    }
}

/// Integer per-level series supporting exact products.
#[derive(Debug, Clone)]
pub(crate) struct IntSeries {
    values: Vec<u32>,
    pre_len: usize,
    pre_prod: BigUint,
    period_prod: BigUint,
    period_prefix: Vec<BigUint>,
    pre_prefix: Vec<BigUint>,
}

impl IntSeries {
    pub(crate) fn new(values: Vec<u32>, pre_len: usize) -> Self {
        let prefix = |vals: &[u32]| {
            let mut out = vec![BigUint::one()];
            for &v in vals {
                let next = out.last().unwrap() * BigUint::from(v);
                out.push(next);
            }
            out
        };
        let pre_prefix = prefix(&values[..pre_len]);
        let period_prefix = prefix(&values[pre_len..]);
        IntSeries {
            pre_prod: pre_prefix.last().unwrap().clone(),
            period_prod: period_prefix.last().unwrap().clone(),
            pre_prefix,
            period_prefix,
            values,
            pre_len,
        }
    }

    fn period_len(&self) -> usize {
        self.values.len() - self.pre_len
    }

    pub(crate) fn at(&self, k: usize) -> u32 {
        if k <= self.pre_len {
            self.values[k - 1]
        } else {
            self.values[self.pre_len + (k - self.pre_len - 1) % self.period_len()]
        }
    }

    /// Exact product over levels 1..=k.
    pub(crate) fn cum_product(&self, k: usize) -> BigUint {
        if k <= self.pre_len {
            return self.pre_prefix[k].clone();
        }
        let p = self.period_len();
        let (q, r) = ((k - self.pre_len) / p, (k - self.pre_len) % p);
        &self.pre_prod * self.period_prod.pow(q as u32) * &self.period_prefix[r]
    }

    /// Exact product over levels a < i <= b.
    pub(crate) fn product(&self, a: usize, b: usize) -> BigUint {
        if b <= a {
            return BigUint::one();
        }
        if b - a <= 256 {
            return (a + 1..=b).fold(BigUint::one(), |acc, i| acc * BigUint::from(self.at(i)));
        }
        self.cum_product(b) / self.cum_product(a)
    }

    pub(crate) fn period_product(&self) -> &BigUint {
        &self.period_prod
    }
}
