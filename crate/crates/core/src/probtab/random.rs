//! Random samplers for distributions with known structure.

use rand::Rng;
use rand_distr::Exp1;

use super::{JointDistribution, OutcomeIter};
use crate::Result;

/// Flat Dirichlet sample of length `n` (normalised exponentials).
pub fn dirichlet<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<f64> {
    loop {
        let w: Vec<f64> = (0..n).map(|_| rng.sample::<f64, _>(Exp1)).collect();
        let s: f64 = w.iter().sum();
        if s > 0.0 {
            return w.into_iter().map(|x| x / s).collect();
        }
    }
}

/// Flat Dirichlet sample over the full product space of `cards`.
pub fn random_distribution<R: Rng + ?Sized>(rng: &mut R, names: &[&str], cards: &[usize]) -> Result<JointDistribution> {
    let len = cards.iter().product();
    JointDistribution::new(
        names.iter().map(|s| s.to_string()).collect(),
        cards.to_vec(),
        dirichlet(rng, len),
    )
}

/// `X -> Y -> Z` with alphabets drawn from `2..=max_card` and random kernels.
pub fn markov_chain<R: Rng + ?Sized>(rng: &mut R, max_card: usize) -> Result<JointDistribution> {
    let cx = rng.random_range(2..=max_card);
    let cy = rng.random_range(2..=max_card);
    let cz = rng.random_range(2..=max_card);
    let px = dirichlet(rng, cx);
    let py_x: Vec<Vec<f64>> = (0..cx).map(|_| dirichlet(rng, cy)).collect();
    let pz_y: Vec<Vec<f64>> = (0..cy).map(|_| dirichlet(rng, cz)).collect();
    let mut probs = Vec::with_capacity(cx * cy * cz);
    for x in 0..cx {
        for y in 0..cy {
            for z in 0..cz {
                probs.push(px[x] * py_x[x][y] * pz_y[y][z]);
            }
        }
    }
    JointDistribution::new(
        vec!["X".into(), "Y".into(), "Z".into()],
        vec![cx, cy, cz],
        probs,
    )
}

/// Independent `X`, `Y` with a random conditional `p(z | x, y)`: the
/// independent-inputs-then-post-processing recipe. Alphabets in `2..=max_card`.
pub fn case_one<R: Rng + ?Sized>(rng: &mut R, max_card: usize) -> Result<JointDistribution> {
    let cx = rng.random_range(2..=max_card);
    let cy = rng.random_range(2..=max_card);
    let cz = rng.random_range(2..=max_card);
    let px = dirichlet(rng, cx);
    let py = dirichlet(rng, cy);
    let mut probs = Vec::with_capacity(cx * cy * cz);
    for &a in &px {
        for &b in &py {
            let q = dirichlet(rng, cz);
            probs.extend(q.into_iter().map(|c| a * b * c));
        }
    }
    JointDistribution::new(
        vec!["X".into(), "Y".into(), "Z".into()],
        vec![cx, cy, cz],
        probs,
    )
}

/// Classical triangle: uniform latents `alpha` (Y-Z), `beta` (X-Z) and
/// `gamma` (X-Y) with cardinalities in `2..=max_latent`, and uniformly random
/// deterministic responses `X = f(beta, gamma)`, `Y = g(gamma, alpha)`,
/// `Z = h(alpha, beta)` onto `out_card` values.
pub fn classical_triangle<R: Rng + ?Sized>(rng: &mut R, max_latent: usize, out_card: usize) -> Result<JointDistribution> {
    let la = rng.random_range(2..=max_latent);
    let lb = rng.random_range(2..=max_latent);
    let lg = rng.random_range(2..=max_latent);
    let mut table = |n: usize| -> Vec<usize> { (0..n).map(|_| rng.random_range(0..out_card)).collect() };
    let f = table(lb * lg);
    let g = table(lg * la);
    let h = table(la * lb);
    let w = 1.0 / (la * lb * lg) as f64;
    let mut probs = vec![0.0; out_card.pow(3)];
    for l in OutcomeIter::new(&[la, lb, lg]) {
        let (a, b, c) = (l[0], l[1], l[2]);
        let x = f[b * lg + c];
        let y = g[c * la + a];
        let z = h[a * lb + b];
        probs[(x * out_card + y) * out_card + z] += w;
    }
    JointDistribution::new(
        vec!["X".into(), "Y".into(), "Z".into()],
        vec![out_card; 3],
        probs,
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::shannon::{conditional_mutual_information, mutual_information};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn samplers_have_their_defining_independences() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let chain = markov_chain(&mut rng, 4).unwrap();
            let cmi = conditional_mutual_information(&chain, &["X"], &["Z"], &["Y"]).unwrap();
            assert!(cmi.value().abs() < 1e-9);
            let c1 = case_one(&mut rng, 3).unwrap();
            assert!(mutual_information(&c1, &["X"], &["Y"]).unwrap().value().abs() < 1e-9);
            let t = classical_triangle(&mut rng, 3, 2).unwrap();
            assert_eq!(t.cards(), &[2, 2, 2]);
        }
    }

    #[test]
    fn dirichlet_is_normalised() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let d = dirichlet(&mut rng, 5);
        assert!((d.iter().sum::<f64>() - 1.0).abs() < 1e-12);
        assert!(d.iter().all(|&x| x >= 0.0));
    }
}
