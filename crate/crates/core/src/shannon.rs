//! Shannon information quantities in bits.

use std::fmt;
use std::ops::{Add, Neg, Sub};

use serde::Serialize;

use crate::probtab::JointDistribution;
use crate::{Error, Result};

/// An information quantity measured in bits (base-2 logarithms).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize)]
#[serde(transparent)]
pub struct Bits(pub f64);

impl Bits {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for Bits {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} bits", self.0)
    }
}

impl Neg for Bits {
    type Output = Bits;
    fn neg(self) -> Bits {
        Bits(-self.0)
    }
}

impl Add for Bits {
    type Output = Bits;
    fn add(self, rhs: Bits) -> Bits {
        Bits(self.0 + rhs.0)
    }
}

impl Sub for Bits {
    type Output = Bits;
    fn sub(self, rhs: Bits) -> Bits {
        Bits(self.0 - rhs.0)
    }
}

/// `-sum p log2 p` with `0 log 0 = 0`.
pub fn entropy_of(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// Binary entropy `h(a) = -a log a - (1-a) log(1-a)`.
pub fn binary_entropy(a: f64) -> f64 {
    entropy_of(&[a, 1.0 - a])
}

pub(crate) fn entropy_by_index(p: &JointDistribution, idx: &[usize]) -> f64 {
    if idx.is_empty() {
        return 0.0;
    }
    entropy_of(&p.marginal_by_index(idx).1)
}

/// `H(subset)`.
pub fn entropy(p: &JointDistribution, subset: &[&str]) -> Result<Bits> {
    if subset.is_empty() {
        return Err(Error::EmptySelection);
    }
    Ok(Bits(entropy_by_index(p, &p.indices_of(subset)?)))
}

/// `H(a | b) = H(a, b) - H(b)`.
pub fn conditional_entropy(p: &JointDistribution, a: &[&str], b: &[&str]) -> Result<Bits> {
    let sets = disjoint(p, &[a, b], &[true, false])?;
    let ab: Vec<usize> = sets.concat();
    Ok(Bits(entropy_by_index(p, &ab) - entropy_by_index(p, &sets[1])))
}

/// `I(A; B) = H(A) + H(B) - H(A, B)`.
pub fn mutual_information(p: &JointDistribution, a: &[&str], b: &[&str]) -> Result<Bits> {
    conditional_mutual_information(p, a, b, &[])
}

/// `I(A; B | C) = H(A, C) + H(B, C) - H(C) - H(A, B, C)`.
pub fn conditional_mutual_information(p: &JointDistribution, a: &[&str], b: &[&str], c: &[&str]) -> Result<Bits> {
    let s = disjoint(p, &[a, b, c], &[true, true, false])?;
    let h = |parts: &[&Vec<usize>]| {
        let idx: Vec<usize> = parts.iter().flat_map(|v| v.iter().copied()).collect();
        entropy_by_index(p, &idx)
    };
    Ok(Bits(
        h(&[&s[0], &s[2]]) + h(&[&s[1], &s[2]]) - h(&[&s[2]]) - h(&[&s[0], &s[1], &s[2]]),
    ))
}

/// `I(X; Y; Z) = I(X; Y) - I(X; Y | Z)`.
pub fn tripartite_information(p: &JointDistribution, x: &[&str], y: &[&str], z: &[&str]) -> Result<Bits> {
    disjoint(p, &[x, y, z], &[true, true, true])?;
    Ok(mutual_information(p, x, y)? - conditional_mutual_information(p, x, y, z)?)
}

/// Inclusion-exclusion interaction information
/// `sum over non-empty S of (-1)^(|S|+1) H(union S | cond)`.
pub fn multivariate_information(p: &JointDistribution, blocks: &[&[&str]], cond: &[&str]) -> Result<Bits> {
    if blocks.is_empty() {
        return Err(Error::EmptySelection);
    }
    if blocks.len() > 20 {
        return Err(Error::InvalidParameter("too many blocks".into()));
    }
    let mut all: Vec<&[&str]> = blocks.to_vec();
    all.push(cond);
    let mut nonempty = vec![true; blocks.len()];
    nonempty.push(false);
    let sets = disjoint(p, &all, &nonempty)?;
    let (blocks, cond) = sets.split_at(blocks.len());
    let cond = &cond[0];
    let h_cond = entropy_by_index(p, cond);
    let mut total = 0.0;
    for mask in 1u32..(1 << blocks.len()) {
        let mut idx: Vec<usize> = cond.clone();
        for (i, b) in blocks.iter().enumerate() {
            if mask & (1 << i) != 0 {
                idx.extend_from_slice(b);
            }
        }
        let sign = if mask.count_ones() % 2 == 1 { 1.0 } else { -1.0 };
        total += sign * (entropy_by_index(p, &idx) - h_cond);
    }
    Ok(Bits(total))
}

/// The seven joint entropies of a tripartite distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropyProfile {
    pub h_x: f64,
    pub h_y: f64,
    pub h_z: f64,
    pub h_xy: f64,
    pub h_xz: f64,
    pub h_yz: f64,
    pub h_xyz: f64,
}

impl EntropyProfile {
    /// Profile of the first three variables of a three-variable distribution.
    pub fn of(p: &JointDistribution) -> Result<Self> {
        expect_tripartite(p)?;
        let h = |idx: &[usize]| entropy_by_index(p, idx);
        Ok(Self {
            h_x: h(&[0]),
            h_y: h(&[1]),
            h_z: h(&[2]),
            h_xy: h(&[0, 1]),
            h_xz: h(&[0, 2]),
            h_yz: h(&[1, 2]),
            h_xyz: h(&[0, 1, 2]),
        })
    }

    pub fn i_xy(&self) -> f64 {
        self.h_x + self.h_y - self.h_xy
    }

    pub fn i_xy_given_z(&self) -> f64 {
        self.h_xz + self.h_yz - self.h_z - self.h_xyz
    }

    pub fn tripartite(&self) -> f64 {
        self.h_x + self.h_y + self.h_z - self.h_xy - self.h_xz - self.h_yz + self.h_xyz
    }
}

/// Tripartite information of a three-variable distribution in its own variable order.
pub fn tripartite_of(p: &JointDistribution) -> Result<f64> {
    Ok(EntropyProfile::of(p)?.tripartite())
}

pub(crate) fn expect_tripartite(p: &JointDistribution) -> Result<()> {
    if p.num_vars() == 3 {
        Ok(())
    } else {
        Err(Error::Arity {
            expected: 3,
            found: p.num_vars(),
        })
    }
}

/// Resolves label sets to indices and checks pairwise disjointness.
fn disjoint(p: &JointDistribution, sets: &[&[&str]], nonempty: &[bool]) -> Result<Vec<Vec<usize>>> {
    let mut out: Vec<Vec<usize>> = Vec::with_capacity(sets.len());
    for (s, &must) in sets.iter().zip(nonempty) {
        if must && s.is_empty() {
            return Err(Error::EmptySelection);
        }
        let idx = p.indices_of(s)?;
        for (&i, name) in idx.iter().zip(s.iter()) {
            if out.iter().any(|prev| prev.contains(&i)) {
                return Err(Error::Overlap(name.to_string()));
            }
        }
        out.push(idx);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probtab::{families, random, JointDistribution};
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    const X: &[&str] = &["X"];
    const Y: &[&str] = &["Y"];
    const Z: &[&str] = &["Z"];

    #[test]
    fn entropy_basics() {
        let bit = JointDistribution::uniform(&["A"], &[2]).unwrap();
        assert_eq!(entropy(&bit, &["A"]).unwrap().value(), 1.0);
        let pm = JointDistribution::point_mass(&["A"], &[3], &[1]).unwrap();
        assert_eq!(entropy(&pm, &["A"]).unwrap().value(), 0.0);
        let w = families::w_type(1.0 / 3.0, 1.0 / 3.0).unwrap();
        let h = entropy(&w, &["X", "Y", "Z"]).unwrap().value();
        assert!((h - 3f64.log2()).abs() < 1e-12);
        assert!(entropy(&w, &[]).is_err());
        assert!(entropy(&w, &["Q"]).is_err());
    }

    #[test]
    fn fig1_triple() {
        let p = families::fig1();
        assert!(mutual_information(&p, X, Y).unwrap().value().abs() < 1e-12);
        assert!((conditional_mutual_information(&p, X, Y, Z).unwrap().value() - 1.0).abs() < 1e-12);
        assert!((tripartite_information(&p, X, Y, Z).unwrap().value() + 1.0).abs() < 1e-12);
        assert!(matches!(mutual_information(&p, X, &["X", "Y"]), Err(Error::Overlap(_))));
    }

    #[test]
    fn eq14_values() {
        // brute force over the 8 support points: X, Y share their high bit,
        // and given Z the low bits are determined jointly
        let p = families::eq14();
        assert!((mutual_information(&p, X, Y).unwrap().value() - 1.0).abs() < 1e-12);
        assert!((conditional_mutual_information(&p, X, Y, Z).unwrap().value() - 1.0).abs() < 1e-12);
        assert!(tripartite_information(&p, X, Y, Z).unwrap().value().abs() < 1e-12);
    }

    #[test]
    fn eq11_joint_entropy_of_x_and_pair() {
        let p = families::eq11();
        assert!((entropy(&p, &["X", "Z1", "Z2"]).unwrap().value() - 2.0).abs() < 1e-12);
    }

    #[test]
    fn ghz_and_w_values() {
        let g = families::ghz_type(0.5).unwrap();
        assert!((tripartite_information(&g, X, Y, Z).unwrap().value() - 1.0).abs() < 1e-12);
        let w = families::w_type(1.0 / 3.0, 1.0 / 3.0).unwrap();
        let i = tripartite_information(&w, X, Y, Z).unwrap().value();
        assert!((i - (3f64.log2() - 2.0)).abs() < 1e-12);
    }

    #[test]
    fn multivariate_reductions() {
        let p = families::fig1();
        let mi = mutual_information(&p, X, Y).unwrap();
        assert!((multivariate_information(&p, &[X, Y], &[]).unwrap().value() - mi.value()).abs() < 1e-12);
        let i3 = multivariate_information(&p, &[X, Y, Z], &[]).unwrap().value();
        assert!((i3 + 1.0).abs() < 1e-12);
        let cmi = multivariate_information(&p, &[X, Y], Z).unwrap().value();
        assert!((cmi - 1.0).abs() < 1e-12);
        let u = JointDistribution::uniform(&["A", "B", "C", "D"], &[2, 3, 2, 2]).unwrap();
        let v = multivariate_information(&u, &[&["A"], &["B", "C"], &["D"]], &[]).unwrap();
        assert!(v.value().abs() < 1e-12);
    }

    #[test]
    fn conditional_entropy_chain_rule() {
        let p = families::w_type(0.2, 0.5).unwrap();
        let hxy = entropy(&p, &["X", "Y"]).unwrap();
        let hy = entropy(&p, Y).unwrap();
        let c = conditional_entropy(&p, X, Y).unwrap();
        assert!((c.value() - (hxy - hy).value()).abs() < 1e-15);
    }

    #[test]
    fn markov_chains_are_nonnegative() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let p = random::markov_chain(&mut rng, 4).unwrap();
            assert!(tripartite_of(&p).unwrap() >= -1e-9);
        }
    }

    fn arb_tripartite() -> impl Strategy<Value = JointDistribution> {
        (2usize..4, 2usize..4, 2usize..4)
            .prop_flat_map(|(a, b, c)| {
                (Just([a, b, c]), proptest::collection::vec(0.0f64..1.0, a * b * c))
            })
            .prop_filter_map("zero mass", |(cards, w)| {
                let s: f64 = w.iter().sum();
                (s > 1e-6).then(|| {
                    let probs = w.iter().map(|x| x / s).collect();
                    JointDistribution::new(vec!["X".into(), "Y".into(), "Z".into()], cards.to_vec(), probs).unwrap()
                })
            })
    }

    proptest! {
        #[test]
        fn mutual_information_is_nonnegative(p in arb_tripartite()) {
            prop_assert!(mutual_information(&p, X, Y).unwrap().value() >= -1e-9);
            prop_assert!(mutual_information(&p, &["X", "Y"], Z).unwrap().value() >= -1e-9);
            prop_assert!(conditional_mutual_information(&p, X, Y, Z).unwrap().value() >= -1e-9);
        }

        #[test]
        fn tripartite_is_symmetric(p in arb_tripartite()) {
            let base = tripartite_information(&p, X, Y, Z).unwrap().value();
            let perms: [[&[&str]; 3]; 6] = [[X, Y, Z], [X, Z, Y], [Y, X, Z], [Y, Z, X], [Z, X, Y], [Z, Y, X]];
            for [a, b, c] in perms {
                let v = tripartite_information(&p, a, b, c).unwrap().value();
                prop_assert!((v - base).abs() < 1e-12);
            }
        }

        #[test]
        fn tripartite_matches_seven_term_expansion(p in arb_tripartite()) {
            let h = |s: &[&str]| entropy(&p, s).unwrap().value();
            let seven = h(X) + h(Y) + h(Z) - h(&["X", "Y"]) - h(&["X", "Z"]) - h(&["Y", "Z"]) + h(&["X", "Y", "Z"]);
            let via_cmi = tripartite_information(&p, X, Y, Z).unwrap().value();
            prop_assert!((seven - via_cmi).abs() < 1e-12);
            prop_assert!((EntropyProfile::of(&p).unwrap().tripartite() - seven).abs() < 1e-12);
        }

        #[test]
        fn nested_marginals_agree(p in arb_tripartite()) {
            let once = p.marginalize(&["Z"]).unwrap();
            let twice = p.marginalize(&["Z", "X"]).unwrap().marginalize(&["Z"]).unwrap();
            prop_assert!(once.linf_distance(&twice).unwrap() < 1e-15);
        }

        #[test]
        fn channels_preserve_mass(p in arb_tripartite(), g in 0.0f64..1.6) {
            let q = p.marginalize(&["X", "Y"]).unwrap();
            let bin = JointDistribution::uniform(&["B"], &[2]).unwrap();
            let r = q.product(&bin).unwrap().apply_channel("B", &crate::probtab::Channel::binary_mixer(g)).unwrap();
            prop_assert!((r.probs().iter().sum::<f64>() - 1.0).abs() < 1e-12);
        }

        #[test]
        fn is_product_ignores_block_order(p in arb_tripartite()) {
            let a = p.is_product(&[vec!["X"], vec!["Y", "Z"]], 1e-9).unwrap();
            let b = p.is_product(&[vec!["Y", "Z"], vec!["X"]], 1e-9).unwrap();
            prop_assert_eq!(a, b);
        }

        #[test]
        fn w_type_closed_form(a in 0.01f64..0.98, frac in 0.01f64..0.99) {
            let b = (1.0 - a) * frac;
            let c = 1.0 - a - b;
            prop_assume!(c > 1e-6);
            let xlx = |t: f64| t * t.log2();
            let closed = xlx(a) + xlx(b) + xlx(c) - xlx(1.0 - a) - xlx(1.0 - b) - xlx(1.0 - c);
            let p = families::w_type(a, b).unwrap();
            let i = tripartite_of(&p).unwrap();
            prop_assert!((i - closed).abs() < 1e-12);
            prop_assert!(i < 0.0);
        }
    }
}
