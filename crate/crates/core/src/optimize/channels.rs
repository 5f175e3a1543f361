use std::f64::consts::{FRAC_PI_2, PI};

use rayon::prelude::*;

use super::simplex::nelder_mead;
use super::{reduce, Direction, ExtremumResult, OptimizerConfig};
use crate::probtab::{Channel, JointDistribution};
use crate::shannon::{entropy_of, tripartite_of, Bits};
use crate::{Error, Result};

/// Maps an angle to the representative in `[0, pi/2]` giving the same mixer.
pub fn fold_angle(g: f64) -> f64 {
    let r = g.rem_euclid(PI);
    if r > FRAC_PI_2 {
        PI - r
    } else {
        r
    }
}

/// `I(X;Y;Z)` after the mixer with angle `gammas[i]` acts on variable `i`.
pub fn mixed_tripartite(p: &JointDistribution, gammas: [f64; 3]) -> Result<f64> {
    let mut q = p.clone();
    for (name, g) in p.names().iter().zip(gammas) {
        q = q.apply_channel(name, &Channel::binary_mixer(g))?;
    }
    tripartite_of(&q)
}

/// Same quantity on a raw `2 x 2 x 2` table, without allocation.
fn fast_tripartite(p: &[f64; 8], gammas: &[f64]) -> f64 {
    let mut q = *p;
    for (axis, g) in gammas.iter().enumerate() {
        let (c, s) = (g.cos().powi(2), g.sin().powi(2));
        let stride = 4 >> axis;
        for i in 0..8 {
            if i & stride == 0 {
                let (a, b) = (q[i], q[i | stride]);
                q[i] = c * a + s * b;
                q[i | stride] = s * a + c * b;
            }
        }
    }
    let m = |keep: usize| {
        let mut out = [0.0; 8];
        for (i, v) in q.iter().enumerate() {
            out[i & keep] += v;
        }
        entropy_of(&out)
    };
    m(0b100) + m(0b010) + m(0b001) - m(0b110) - m(0b101) - m(0b011) + entropy_of(&q)
}

/// Extremum of `I(X;Y;Z)` over the three local mixers, each angle in
/// `[0, pi/2]`. A coarse grid seeds `cfg.restarts` simplex refinements from
/// its best cells; restarts run in parallel and are reduced in index order.
pub fn extremize_under_local_channels(
    p: &JointDistribution,
    direction: Direction,
    cfg: &OptimizerConfig,
) -> Result<ExtremumResult> {
    cfg.validate()?;
    if p.num_vars() != 3 || p.cards().iter().any(|&c| c != 2) {
        return Err(Error::NotApplicable(format!(
            "local channel search needs three binary variables, got cardinalities {:?}",
            p.cards()
        )));
    }
    let table: [f64; 8] = p.probs().try_into().expect("eight entries");
    let r = cfg.grid_resolution;
    let h = FRAC_PI_2 / (r - 1) as f64;
    let point = |k: usize| [(k / (r * r)) as f64 * h, ((k / r) % r) as f64 * h, (k % r) as f64 * h];
    let sign = direction.sign();
    let grid: Vec<f64> = (0..r * r * r)
        .into_par_iter()
        .map(|k| sign * fast_tripartite(&table, &point(k)))
        .collect();
    let mut order: Vec<usize> = (0..grid.len()).collect();
    order.sort_by(|&a, &b| grid[a].total_cmp(&grid[b]).then(a.cmp(&b)));
    let starts: Vec<[f64; 3]> = order.iter().take(cfg.restarts).map(|&k| point(k)).collect();

    let results = starts
        .par_iter()
        .map(|x0| {
            let (x, _) = nelder_mead(|x| sign * fast_tripartite(&table, x), x0, cfg.simplex(h));
            let folded = [fold_angle(x[0]), fold_angle(x[1]), fold_angle(x[2])];
            let value = mixed_tripartite(p, folded)?;
            Ok((folded.to_vec(), value))
        })
        .collect::<Result<Vec<_>>>()?;
    let (argument, value, trace) = reduce(results, direction);
    Ok(ExtremumResult {
        value: Bits(value),
        argument,
        trace,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probtab::{families, random};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn quick() -> OptimizerConfig {
        OptimizerConfig {
            restarts: 3,
            grid_resolution: 9,
            ..Default::default()
        }
    }

    #[test]
    fn fast_path_matches_table_algebra() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for _ in 0..20 {
            let p = random::random_distribution(&mut rng, &["X", "Y", "Z"], &[2, 2, 2]).unwrap();
            let g = [0.3, 1.1, 0.7];
            let table: [f64; 8] = p.probs().try_into().unwrap();
            assert!((fast_tripartite(&table, &g) - mixed_tripartite(&p, g).unwrap()).abs() < 1e-12);
        }
    }

    #[test]
    fn folding() {
        for g in [-2.0, -0.3, 0.0, 0.4, 1.9, 3.5, 7.0] {
            let f = fold_angle(g);
            assert!((0.0..=FRAC_PI_2).contains(&f));
            assert!((g.cos().powi(2) - f.cos().powi(2)).abs() < 1e-12);
        }
    }

    #[test]
    fn min_reaches_identity_value_for_w() {
        let p = families::w_type(1.0 / 3.0, 1.0 / 3.0).unwrap();
        let r = extremize_under_local_channels(&p, Direction::Min, &quick()).unwrap();
        let i_w = tripartite_of(&p).unwrap();
        assert!(r.value.value() <= i_w + 1e-12);
        assert!((r.value.value() - i_w).abs() < 1e-3);
    }

    #[test]
    fn feasibility_bounds_and_reevaluation() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..5 {
            let p = random::random_distribution(&mut rng, &["X", "Y", "Z"], &[2, 2, 2]).unwrap();
            let i = tripartite_of(&p).unwrap();
            let lo = extremize_under_local_channels(&p, Direction::Min, &quick()).unwrap();
            let hi = extremize_under_local_channels(&p, Direction::Max, &quick()).unwrap();
            assert!(lo.value.value() <= i + 1e-12 && i <= hi.value.value() + 1e-12);
            for r in [&lo, &hi] {
                let g: [f64; 3] = r.argument.clone().try_into().unwrap();
                assert!(g.iter().all(|x| (0.0..=FRAC_PI_2).contains(x)));
                assert!((mixed_tripartite(&p, g).unwrap() - r.value.value()).abs() <= 1e-10);
            }
        }
    }

    #[test]
    fn deterministic_and_monotone_in_restarts() {
        let p = families::w_type(0.2, 0.5).unwrap();
        let a = extremize_under_local_channels(&p, Direction::Max, &quick()).unwrap();
        let b = extremize_under_local_channels(&p, Direction::Max, &quick()).unwrap();
        assert_eq!(a, b);
        let more = OptimizerConfig { restarts: 6, ..quick() };
        let c = extremize_under_local_channels(&p, Direction::Max, &more).unwrap();
        assert!(c.value.value() >= a.value.value());
        assert_eq!(&c.trace[..3], &a.trace[..]);
    }

    #[test]
    fn rejects_non_binary() {
        assert!(extremize_under_local_channels(&families::eq14(), Direction::Min, &quick()).is_err());
    }
}
