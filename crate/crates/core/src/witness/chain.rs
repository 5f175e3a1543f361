use serde_json::{json, Value};

use crate::probtab::{io, Channel, JointDistribution};
use crate::shannon::{expect_tripartite, EntropyProfile};
use crate::{Error, Result};

/// Two-source chain model: `X` shares `Z1` with the middle node, `Y` shares
/// `Z2`, and the middle node post-processes `(z1, z2)` into `Z`.
#[derive(Debug, Clone, PartialEq)]
pub struct ChainRealizationPlan {
    names: [String; 3],
    left: JointDistribution,
    right: JointDistribution,
    post: Channel,
}

impl ChainRealizationPlan {
    /// `P_{X Z1} = sum_x p_x [x, x]`.
    pub fn left(&self) -> &JointDistribution {
        &self.left
    }

    /// `P_{Y Z2} = sum_y p_y [y, y]`.
    pub fn right(&self) -> &JointDistribution {
        &self.right
    }

    /// Channel from the merged index `z1 |Y| + z2` to `Z`.
    pub fn post(&self) -> &Channel {
        &self.post
    }

    /// Rebuilds the tripartite distribution from the two sources and `post`.
    pub fn simulate(&self) -> Result<JointDistribution> {
        let [x, y, z] = &self.names;
        let z1 = self.left.names()[1].clone();
        let z2 = self.right.names()[1].clone();
        let cards = self.left.cards()[1] * self.right.cards()[1];
        let table: Vec<usize> = (0..cards).collect();
        self.left
            .product(&self.right)?
            .relabel(&[&z1, &z2], z, cards, &table)?
            .apply_channel(z, &self.post)?
            .permute(&[x, y, z])
    }

    /// `l_inf` distance between [`Self::simulate`] and `p`.
    pub fn round_trip_error(&self, p: &JointDistribution) -> Result<f64> {
        self.simulate()?.linf_distance(p)
    }

    /// Circulant doubly stochastic lift of every column of `post`, whose
    /// action on the first basis value is that column.
    pub fn doubly_stochastic_lifts(&self) -> Result<Vec<Channel>> {
        (0..self.post.in_card())
            .map(|c| Channel::doubly_stochastic_lift(&self.post.column(c)))
            .collect()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "left": io::to_json_value(&self.left),
            "right": io::to_json_value(&self.right),
            "post": {
                "in_card": self.post.in_card(),
                "out_card": self.post.out_card(),
                "rows": self.post.rows(),
            },
        })
    }
}

/// Constructs the chain model for a distribution with `I(X;Y) <= tol`.
/// Pairs `(x, y)` of zero probability are sent to a point mass on `z = 0`.
pub fn chain_compatible(p: &JointDistribution, tol: f64) -> Result<ChainRealizationPlan> {
    expect_tripartite(p)?;
    let i_xy = EntropyProfile::of(p)?.i_xy();
    if i_xy > tol {
        return Err(Error::NotApplicable(format!("I(X;Y) = {i_xy} exceeds {tol}")));
    }
    let names: [String; 3] = [p.names()[0].clone(), p.names()[1].clone(), p.names()[2].clone()];
    let [cx, cy, cz] = [p.cards()[0], p.cards()[1], p.cards()[2]];
    let diagonal = |var: &str, copy: String, card: usize, marginal: &[f64]| {
        let mut probs = vec![0.0; card * card];
        for (v, &m) in marginal.iter().enumerate() {
            probs[v * card + v] = m;
        }
        JointDistribution::new(vec![var.to_string(), copy], vec![card, card], probs)
    };
    let (_, px) = p.marginal_by_index(&[0]);
    let (_, py) = p.marginal_by_index(&[1]);
    let left = diagonal(&names[0], format!("{}1", names[2]), cx, &px)?;
    let right = diagonal(&names[1], format!("{}2", names[2]), cy, &py)?;
    let mut rows = vec![vec![0.0; cx * cy]; cz];
    let probs = p.probs();
    for xy in 0..cx * cy {
        let block = &probs[xy * cz..(xy + 1) * cz];
        let mass: f64 = block.iter().sum();
        if mass > 0.0 {
            let mut col: Vec<f64> = block.iter().map(|q| q / mass).collect();
            // absorb rounding so the column is stochastic to 1e-12
            let s: f64 = col.iter().sum();
            col.iter_mut().for_each(|q| *q /= s);
            for (z, q) in col.into_iter().enumerate() {
                rows[z][xy] = q;
            }
        } else {
            rows[0][xy] = 1.0;
        }
    }
    Ok(ChainRealizationPlan {
        names,
        left,
        right,
        post: Channel::new(rows)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probtab::{birkhoff_decomposition, families, random};
    use crate::shannon::mutual_information;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn fig1_post_is_xor() {
        let plan = chain_compatible(&families::fig1(), 1e-9).unwrap();
        let xor = Channel::deterministic(&[0, 1, 1, 0], 2).unwrap();
        assert_eq!(plan.post(), &xor);
        assert!(plan.round_trip_error(&families::fig1()).unwrap() < 1e-15);
    }

    #[test]
    fn merged_pair_gives_identity_post() {
        let p = families::xor_chain_factor();
        let plan = chain_compatible(&p, 1e-9).unwrap();
        assert_eq!(plan.post().rows(), Channel::identity(4).rows());
    }

    #[test]
    fn dependent_pairs_are_rejected() {
        assert!(matches!(chain_compatible(&families::eq14(), 1e-9), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn random_case_one_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..50 {
            let p = random::case_one(&mut rng, 4).unwrap();
            let plan = chain_compatible(&p, 1e-9).unwrap();
            assert!(plan.round_trip_error(&p).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn any_post_channel_keeps_ends_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..30 {
            let p = random::case_one(&mut rng, 3).unwrap();
            let plan = chain_compatible(&p, 1e-9).unwrap();
            let n = plan.post().in_card();
            let cz = rng.random_range(2..5);
            let rows: Vec<Vec<f64>> = {
                let cols: Vec<Vec<f64>> = (0..n).map(|_| random::dirichlet(&mut rng, cz)).collect();
                (0..cz).map(|z| cols.iter().map(|c| c[z]).collect()).collect()
            };
            let other = ChainRealizationPlan {
                post: Channel::new(rows).unwrap(),
                ..plan
            };
            let q = other.simulate().unwrap();
            assert!(mutual_information(&q, &["X"], &["Y"]).unwrap().value() <= 1e-9);
        }
    }

    #[test]
    fn lifts_decompose_into_permutations() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let p = random::case_one(&mut rng, 3).unwrap();
        let plan = chain_compatible(&p, 1e-9).unwrap();
        for (c, lift) in plan.doubly_stochastic_lifts().unwrap().iter().enumerate() {
            assert_eq!(lift.column(0), plan.post().column(c));
            let parts = birkhoff_decomposition(lift).unwrap();
            let total: f64 = parts.iter().map(|(w, _)| w).sum();
            assert!((total - 1.0).abs() < 1e-9);
        }
    }
}
