//! Named constructions used by the examples, the tests and the CLI docs,
//! plus a seeded generator of random periodic constructions.

use rand::seq::index;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::construction::{Construction, Level};

fn level(n: u32, m: u32, digits: &[(u32, u32)]) -> Level {
    Level::new(n, m, digits.iter().copied()).expect("corpus level is valid")
}

/// The classic carpet: `n = 3`, `m = 2`, digits `(0,0), (1,1), (2,0)`.
pub fn bedford_mcmullen() -> Construction {
    Construction::constant(level(3, 2, &[(0, 0), (1, 1), (2, 0)]))
}

/// Transpose of [`bedford_mcmullen`]: `n = 2 < m = 3`.
pub fn tall() -> Construction {
    Construction::constant(level(2, 3, &[(0, 0), (1, 1), (0, 2)]))
}

/// Two digits in each of two rows on a 3x2 grid.
pub fn uniform_fibres() -> Construction {
    Construction::constant(level(3, 2, &[(0, 0), (1, 0), (0, 1), (1, 1)]))
}

/// Every cell of a 2x2 grid: the attractor is the unit square.
pub fn full_grid() -> Construction {
    Construction::constant(Level::full_grid(2, 2).expect("valid"))
}

/// The diagonal `{(0,0), (1,1)}` on a 2x2 grid.
pub fn diagonal() -> Construction {
    Construction::constant(level(2, 2, &[(0, 0), (1, 1)]))
}

/// Preperiod `[A]`, period `[B, C]`, mixing wide and tall levels.
pub fn alternating() -> Construction {
    Construction::new(
        vec![level(3, 2, &[(0, 0), (1, 1), (2, 0)])],
        vec![
            level(2, 3, &[(0, 0), (1, 1), (0, 2)]),
            level(4, 2, &[(0, 0), (1, 0), (3, 0), (2, 1)]),
        ],
    )
    .expect("valid")
}

/// The six-construction test corpus.
pub fn all() -> Vec<Construction> {
    vec![
        bedford_mcmullen(),
        tall(),
        uniform_fibres(),
        full_grid(),
        diagonal(),
        alternating(),
    ]
}

/// The three digit sets drawn in the usual level-3 illustration, on the
/// smallest grids containing them: `n = (3, 2, 4)`, `m = (2, 4, 3)`.
pub fn figure_one() -> Construction {
    Construction::new(
        vec![
            level(3, 2, &[(0, 0), (2, 0), (2, 1)]),
            level(2, 4, &[(0, 0), (0, 2), (0, 3), (1, 2)]),
        ],
        vec![level(4, 3, &[(0, 2), (1, 0), (1, 2), (3, 2)])],
    )
    .expect("valid")
}

/// Length of the block-structured preperiod of [`oscillating`].
pub const OSCILLATING_PREPERIOD: usize = 398;

/// Full 2x2 levels and diagonal 2x2 levels in runs `(2^j, 2^{j+1}]` of
/// alternating type, up to level 398, then the period `[full, diagonal]`.
///
/// Both level types have constant row counts, so under the uniform
/// assignment every approximate square at depth `k` has the same mass and
/// the local ratio at depth `k` is the same for every point.
pub fn oscillating() -> Construction {
    let full = Level::full_grid(2, 2).expect("valid");
    let diag = level(2, 2, &[(0, 0), (1, 1)]);
    let pre = (1..=OSCILLATING_PREPERIOD)
        .map(|h| {
            let run = usize::BITS - 1 - h.leading_zeros();
            if run % 2 == 0 {
                full.clone()
            } else {
                diag.clone()
            }
        })
        .collect();
    Construction::new(pre, vec![full, diag]).expect("valid")
}

/// A random level with `2 <= n, m <= max_base` and at least two digits.
pub fn random_level<R: Rng>(rng: &mut R, max_base: u32) -> Level {
    let n = rng.gen_range(2..=max_base);
    let m = rng.gen_range(2..=max_base);
    let cells = (n * m) as usize;
    let count = rng.gen_range(2..=cells);
    let digits = index::sample(rng, cells, count)
        .into_iter()
        .map(|c| ((c as u32) % n, (c as u32) / n));
    Level::new(n, m, digits).expect("valid")
}

/// Reproducible random construction number `index` for `seed`: preperiod of
/// up to two levels and period of length 1 to `max_period`.
pub fn random_periodic(seed: u64, index: u64, max_period: usize, max_base: u32) -> Construction {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let pre_len = rng.gen_range(0..=2);
    let per_len = rng.gen_range(1..=max_period);
    let pre = (0..pre_len).map(|_| random_level(&mut rng, max_base)).collect();
    let per = (0..per_len).map(|_| random_level(&mut rng, max_base)).collect();
    Construction::new(pre, per).expect("nonempty period")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oscillating_runs() {
        let c = oscillating();
        let full = Level::full_grid(2, 2).unwrap();
        assert_eq!(c.level_at(1), &full);
        assert_ne!(c.level_at(2), &full);
        assert_ne!(c.level_at(3), &full);
        assert_eq!(c.level_at(4), &full);
        assert_ne!(c.level_at(255), &full);
        assert_eq!(c.level_at(256), &full);
        assert_eq!(c.level_at(OSCILLATING_PREPERIOD + 1), &full);
    }

    #[test]
    fn random_constructions_are_reproducible() {
        for i in 0..10 {
            let a = random_periodic(7, i, 3, 5);
            let b = random_periodic(7, i, 3, 5);
            assert_eq!(a.preperiod(), b.preperiod());
            assert_eq!(a.period(), b.period());
            assert!(a.n_plus() <= 5 && a.period().len() <= 3);
        }
    }
}
