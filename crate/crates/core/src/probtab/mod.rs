//! Dense joint probability tables over finite product sample spaces.
//!
//! Entries are stored row-major over outcome tuples: the last variable varies
//! fastest. All operations are pure and return new tables.

mod channel;
pub mod families;
pub mod io;
pub mod random;

pub use channel::{birkhoff_decomposition, Channel};

use crate::{Error, Result};

/// Tolerance for distribution-level equalities (normalisation, products).
pub const DIST_TOL: f64 = 1e-9;

/// A joint event: one value index per variable.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Outcome(pub Vec<usize>);

impl Outcome {
    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// Checks the outcome against the cardinalities of a distribution.
    pub fn validate(&self, dist: &JointDistribution) -> Result<()> {
        if self.0.len() != dist.num_vars() {
            return Err(Error::Arity {
                expected: dist.num_vars(),
                found: self.0.len(),
            });
        }
        for (i, (&v, &c)) in self.0.iter().zip(dist.cards()).enumerate() {
            if v >= c {
                return Err(Error::OutOfRange {
                    var: dist.names()[i].clone(),
                    value: v,
                    card: c,
                });
            }
        }
        Ok(())
    }
}

/// Finite joint distribution `P(X_1, ..., X_n)`.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    names: Vec<String>,
    cards: Vec<usize>,
    probs: Vec<f64>,
}

impl JointDistribution {
    /// Builds a table, checking non-negativity and normalisation within [`DIST_TOL`].
    pub fn new(names: Vec<String>, cards: Vec<usize>, probs: Vec<f64>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidDistribution("no variables".into()));
        }
        if names.len() != cards.len() {
            return Err(Error::InvalidDistribution(format!(
                "{} names but {} cardinalities",
                names.len(),
                cards.len()
            )));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        if let Some(i) = cards.iter().position(|&c| c == 0) {
            return Err(Error::InvalidDistribution(format!(
                "variable `{}` has cardinality 0",
                names[i]
            )));
        }
        let len: usize = cards.iter().product();
        if probs.len() != len {
            return Err(Error::InvalidDistribution(format!(
                "expected {len} entries, found {}",
                probs.len()
            )));
        }
        if let Some(p) = probs.iter().find(|p| !p.is_finite() || **p < 0.0) {
            return Err(Error::InvalidDistribution(format!("invalid entry {p}")));
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > DIST_TOL {
            return Err(Error::InvalidDistribution(format!(
                "entries sum to {total}, expected 1"
            )));
        }
        Ok(Self {
            names,
            cards,
            probs,
        })
    }

    /// Builds a table from a sparse list of `(outcome, probability)` pairs.
    /// Repeated outcomes accumulate.
    pub fn from_support(names: &[&str], cards: &[usize], support: &[(&[usize], f64)]) -> Result<Self> {
        let len: usize = cards.iter().product();
        let mut probs = vec![0.0; len];
        for (outcome, p) in support {
            if outcome.len() != cards.len() {
                return Err(Error::Arity {
                    expected: cards.len(),
                    found: outcome.len(),
                });
            }
            let idx = flat_index(cards, outcome).ok_or_else(|| {
                Error::InvalidDistribution(format!("outcome {outcome:?} out of range"))
            })?;
            probs[idx] += p;
        }
        Self::new(names.iter().map(|s| s.to_string()).collect(), cards.to_vec(), probs)
    }

    /// Point mass on a single outcome.
    pub fn point_mass(names: &[&str], cards: &[usize], outcome: &[usize]) -> Result<Self> {
        Self::from_support(names, cards, &[(outcome, 1.0)])
    }

    /// Uniform distribution over the full product space.
    pub fn uniform(names: &[&str], cards: &[usize]) -> Result<Self> {
        let len: usize = cards.iter().product();
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            cards.to_vec(),
            vec![1.0 / len as f64; len],
        )
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn cards(&self) -> &[usize] {
        &self.cards
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn card_of(&self, name: &str) -> Result<usize> {
        Ok(self.cards[self.index_of(name)?])
    }

    /// Resolves labels to positions, rejecting duplicates.
    pub fn indices_of(&self, names: &[&str]) -> Result<Vec<usize>> {
        let mut out = Vec::with_capacity(names.len());
        for n in names {
            let i = self.index_of(n)?;
            if out.contains(&i) {
                return Err(Error::DuplicateVariable(n.to_string()));
            }
            out.push(i);
        }
        Ok(out)
    }

    /// Probability of a full outcome; out-of-range outcomes have probability 0.
    pub fn prob(&self, outcome: &[usize]) -> f64 {
        if outcome.len() != self.cards.len() {
            return 0.0;
        }
        flat_index(&self.cards, outcome).map_or(0.0, |i| self.probs[i])
    }

    /// Iterates `(outcome, probability)` over every cell, zero cells included.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        OutcomeIter::new(&self.cards).zip(self.probs.iter().copied())
    }

    /// Iterates over cells with strictly positive probability.
    pub fn support(&self) -> impl Iterator<Item = (Vec<usize>, f64)> + '_ {
        self.iter().filter(|(_, p)| *p > 0.0)
    }

    /// Marginal table over variable positions `keep`, in that order.
    pub(crate) fn marginal_by_index(&self, keep: &[usize]) -> (Vec<usize>, Vec<f64>) {
        let cards: Vec<usize> = keep.iter().map(|&i| self.cards[i]).collect();
        let len: usize = cards.iter().product();
        let mut out = vec![0.0; len];
        if keep.iter().copied().eq(0..self.cards.len()) {
            out.copy_from_slice(&self.probs);
            return (cards, out);
        }
        // strides of the kept variables inside the marginal table
        let mut strides = vec![0usize; self.cards.len()];
        let mut s = 1;
        for (k, &i) in keep.iter().enumerate().rev() {
            strides[i] = s;
            s *= cards[k];
        }
        let mut digits = vec![0usize; self.cards.len()];
        let mut target = 0usize;
        for &p in &self.probs {
            out[target] += p;
            // odometer increment, tracking the target offset incrementally
            for v in (0..digits.len()).rev() {
                digits[v] += 1;
                target += strides[v];
                if digits[v] < self.cards[v] {
                    break;
                }
                target -= strides[v] * digits[v];
                digits[v] = 0;
            }
        }
        (cards, out)
    }

    /// Marginal distribution over `keep`, in the given order.
    pub fn marginalize(&self, keep: &[&str]) -> Result<Self> {
        if keep.is_empty() {
            return Err(Error::EmptySelection);
        }
        let idx = self.indices_of(keep)?;
        let (cards, probs) = self.marginal_by_index(&idx);
        Ok(Self {
            names: keep.iter().map(|s| s.to_string()).collect(),
            cards,
            probs,
        })
    }

    /// Conditional distribution of the remaining variables given `var = value`.
    pub fn condition(&self, var: &str, value: usize) -> Result<Self> {
        let vi = self.index_of(var)?;
        let card = self.cards[vi];
        if value >= card {
            return Err(Error::OutOfRange {
                var: var.to_string(),
                value,
                card,
            });
        }
        if self.num_vars() == 1 {
            return Err(Error::EmptySelection);
        }
        let rest: Vec<usize> = (0..self.num_vars()).filter(|&i| i != vi).collect();
        let cards: Vec<usize> = rest.iter().map(|&i| self.cards[i]).collect();
        let mut probs = Vec::with_capacity(cards.iter().product());
        for (o, p) in self.iter() {
            if o[vi] == value {
                probs.push(p);
            }
        }
        let mass: f64 = probs.iter().sum();
        if mass <= 0.0 {
            return Err(Error::ZeroProbability {
                var: var.to_string(),
                value,
            });
        }
        probs.iter_mut().for_each(|p| *p /= mass);
        Ok(Self {
            names: rest.iter().map(|&i| self.names[i].clone()).collect(),
            cards,
            probs,
        })
    }

    /// Product distribution of independent `self` and `other`; variables are
    /// concatenated with `self`'s first.
    pub fn product(&self, other: &Self) -> Result<Self> {
        if let Some(n) = other.names.iter().find(|n| self.names.contains(n)) {
            return Err(Error::Overlap(n.clone()));
        }
        let mut probs = Vec::with_capacity(self.probs.len() * other.probs.len());
        for &p in &self.probs {
            for &q in &other.probs {
                probs.push(p * q);
            }
        }
        let mut names = self.names.clone();
        names.extend(other.names.iter().cloned());
        let mut cards = self.cards.clone();
        cards.extend(other.cards.iter().copied());
        Ok(Self {
            names,
            cards,
            probs,
        })
    }

    /// Pushes variable `var` through a stochastic channel.
    pub fn apply_channel(&self, var: &str, ch: &Channel) -> Result<Self> {
        let vi = self.index_of(var)?;
        if ch.in_card() != self.cards[vi] {
            return Err(Error::CardinalityMismatch {
                expected: self.cards[vi],
                found: ch.in_card(),
            });
        }
        let mut cards = self.cards.clone();
        cards[vi] = ch.out_card();
        let outer: usize = self.cards[..vi].iter().product();
        let inner: usize = self.cards[vi + 1..].iter().product();
        let (cin, cout) = (ch.in_card(), ch.out_card());
        let mut probs = vec![0.0; outer * cout * inner];
        for a in 0..outer {
            for old in 0..cin {
                let src = (a * cin + old) * inner;
                for new in 0..cout {
                    let w = ch.entry(new, old);
                    if w == 0.0 {
                        continue;
                    }
                    let dst = (a * cout + new) * inner;
                    for b in 0..inner {
                        probs[dst + b] += w * self.probs[src + b];
                    }
                }
            }
        }
        Ok(Self {
            names: self.names.clone(),
            cards,
            probs,
        })
    }

    /// Replaces `vars` by one new variable `new_name` whose value is
    /// `table[row-major index of the selected values]`. The new variable sits at
    /// the position of the first selected variable.
    pub fn relabel(&self, vars: &[&str], new_name: &str, out_card: usize, table: &[usize]) -> Result<Self> {
        if vars.is_empty() {
            return Err(Error::EmptySelection);
        }
        let idx = self.indices_of(vars)?;
        let sel_cards: Vec<usize> = idx.iter().map(|&i| self.cards[i]).collect();
        let domain: usize = sel_cards.iter().product();
        if table.len() != domain {
            return Err(Error::InvalidParameter(format!(
                "relabel table has {} entries, domain has {domain}",
                table.len()
            )));
        }
        if out_card == 0 {
            return Err(Error::InvalidParameter("relabel output cardinality 0".into()));
        }
        if let Some(&v) = table.iter().find(|&&v| v >= out_card) {
            return Err(Error::InvalidParameter(format!(
                "relabel value {v} outside output cardinality {out_card}"
            )));
        }
        let first = *idx.iter().min().expect("non-empty");
        let clash = self
            .names
            .iter()
            .enumerate()
            .any(|(i, n)| n == new_name && !idx.contains(&i));
        if clash {
            return Err(Error::DuplicateVariable(new_name.to_string()));
        }
        let mut new_names = Vec::new();
        let mut new_cards = Vec::new();
        let mut source_of = Vec::new(); // Some(i) = old variable i, None = the merged variable
        for i in 0..self.num_vars() {
            if i == first {
                new_names.push(new_name.to_string());
                new_cards.push(out_card);
                source_of.push(None);
            } else if !idx.contains(&i) {
                new_names.push(self.names[i].clone());
                new_cards.push(self.cards[i]);
                source_of.push(Some(i));
            }
        }
        let mut probs = vec![0.0; new_cards.iter().product()];
        let mut target = vec![0usize; new_cards.len()];
        for (o, p) in self.iter() {
            if p == 0.0 {
                continue;
            }
            let sel: Vec<usize> = idx.iter().map(|&i| o[i]).collect();
            let f = table[flat_index(&sel_cards, &sel).expect("in range")];
            for (t, src) in target.iter_mut().zip(&source_of) {
                *t = match src {
                    Some(i) => o[*i],
                    None => f,
                };
            }
            probs[flat_index(&new_cards, &target).expect("in range")] += p;
        }
        Ok(Self {
            names: new_names,
            cards: new_cards,
            probs,
        })
    }

    /// Splits one variable into several via the mixed-radix bijection
    /// `v = ((d_0 * c_1 + d_1) * c_2 + d_2) ...`.
    pub fn split_variable(&self, var: &str, new_names: &[&str], new_cards: &[usize]) -> Result<Self> {
        let vi = self.index_of(var)?;
        if new_names.is_empty() || new_names.len() != new_cards.len() {
            return Err(Error::InvalidParameter("split needs matching names and cardinalities".into()));
        }
        let prod: usize = new_cards.iter().product();
        if prod != self.cards[vi] {
            return Err(Error::CardinalityMismatch {
                expected: self.cards[vi],
                found: prod,
            });
        }
        let mut names = Vec::new();
        let mut cards = Vec::new();
        for i in 0..self.num_vars() {
            if i == vi {
                names.extend(new_names.iter().map(|s| s.to_string()));
                cards.extend_from_slice(new_cards);
            } else {
                names.push(self.names[i].clone());
                cards.push(self.cards[i]);
            }
        }
        // row-major layout is unchanged by a mixed-radix split
        Self::new(names, cards, self.probs.clone())
    }

    /// Reorders variables to `order` (a permutation of the current labels).
    pub fn permute(&self, order: &[&str]) -> Result<Self> {
        if order.len() != self.num_vars() {
            return Err(Error::Arity {
                expected: self.num_vars(),
                found: order.len(),
            });
        }
        self.marginalize(order)
    }

    /// Renames all variables, keeping the table.
    pub fn rename(&self, names: &[&str]) -> Result<Self> {
        if names.len() != self.num_vars() {
            return Err(Error::Arity {
                expected: self.num_vars(),
                found: names.len(),
            });
        }
        Self::new(
            names.iter().map(|s| s.to_string()).collect(),
            self.cards.clone(),
            self.probs.clone(),
        )
    }

    /// Largest absolute cell difference. Both tables must share labels and shape.
    pub fn linf_distance(&self, other: &Self) -> Result<f64> {
        if self.names != other.names {
            return Err(Error::InvalidParameter(format!(
                "variable mismatch {:?} vs {:?}",
                self.names, other.names
            )));
        }
        if self.cards != other.cards {
            return Err(Error::InvalidParameter(format!(
                "cardinality mismatch {:?} vs {:?}",
                self.cards, other.cards
            )));
        }
        Ok(self
            .probs
            .iter()
            .zip(&other.probs)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max))
    }

    /// True iff `self` equals the product of its block marginals within `tol` (ℓ∞).
    pub fn is_product(&self, partition: &[Vec<&str>], tol: f64) -> Result<bool> {
        let mut seen = Vec::new();
        for block in partition {
            if block.is_empty() {
                return Err(Error::InvalidParameter("empty block in partition".into()));
            }
            for v in block {
                let i = self.index_of(v)?;
                if seen.contains(&i) {
                    return Err(Error::Overlap(v.to_string()));
                }
                seen.push(i);
            }
        }
        if seen.len() != self.num_vars() {
            return Err(Error::InvalidParameter("partition does not cover all variables".into()));
        }
        let mut prod: Option<Self> = None;
        for block in partition {
            let m = self.marginalize(block)?;
            prod = Some(match prod {
                None => m,
                Some(acc) => acc.product(&m)?,
            });
        }
        let names: Vec<&str> = self.names.iter().map(String::as_str).collect();
        let prod = prod.expect("non-empty partition").permute(&names)?;
        Ok(self.linf_distance(&prod)? <= tol)
    }
}

/// Row-major flat index of `outcome`, or `None` when out of range.
pub(crate) fn flat_index(cards: &[usize], outcome: &[usize]) -> Option<usize> {
    let mut idx = 0;
    for (&v, &c) in outcome.iter().zip(cards) {
        if v >= c {
            return None;
        }
        idx = idx * c + v;
    }
    Some(idx)
}

/// Odometer over all outcomes of a product space, last variable fastest.
pub(crate) struct OutcomeIter {
    cards: Vec<usize>,
    next: Option<Vec<usize>>,
}

impl OutcomeIter {
    pub(crate) fn new(cards: &[usize]) -> Self {
        let next = if cards.iter().all(|&c| c > 0) {
            Some(vec![0; cards.len()])
        } else {
            None
        };
        Self {
            cards: cards.to_vec(),
            next,
        }
    }
}

impl Iterator for OutcomeIter {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut carry = true;
        for v in (0..succ.len()).rev() {
            succ[v] += 1;
            if succ[v] < self.cards[v] {
                carry = false;
                break;
            }
            succ[v] = 0;
        }
        if !carry {
            self.next = Some(succ);
        }
        Some(current)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use families::{eq11, fig1};

    fn approx_eq(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn marginal_of_fig1_is_uniform() {
        let p = fig1();
        let x = p.marginalize(&["X"]).unwrap();
        assert_eq!(x.probs(), &[0.5, 0.5]);
        let xy = p.marginalize(&["X", "Y"]).unwrap();
        // brute-force: sum over z of the four 1/4 support points
        let mut oracle = [0.0; 4];
        for (o, q) in [([0, 0, 0], 0.25), ([0, 1, 1], 0.25), ([1, 0, 1], 0.25), ([1, 1, 0], 0.25)] {
            oracle[o[0] * 2 + o[1]] += q;
        }
        for (a, b) in xy.probs().iter().zip(oracle) {
            assert!(approx_eq(*a, b));
        }
        assert_eq!(p.marginalize(&["X", "Y", "Z"]).unwrap(), p);
    }

    #[test]
    fn marginalize_errors() {
        let p = fig1();
        assert!(matches!(p.marginalize(&[]), Err(Error::EmptySelection)));
        assert!(matches!(p.marginalize(&["W"]), Err(Error::UnknownVariable(_))));
        assert!(matches!(p.marginalize(&["X", "X"]), Err(Error::DuplicateVariable(_))));
    }

    #[test]
    fn marginal_respects_requested_order() {
        let p = families::w_type(0.2, 0.3).unwrap();
        let zx = p.marginalize(&["Z", "X"]).unwrap();
        // w_type: a[001] b[010] c[100]; (z,x): (1,0)=a, (0,0)=b, (0,1)=c
        assert!(approx_eq(zx.prob(&[1, 0]), 0.2));
        assert!(approx_eq(zx.prob(&[0, 0]), 0.3));
        assert!(approx_eq(zx.prob(&[0, 1]), 0.5));
    }

    #[test]
    fn condition_fig1_on_z() {
        let p = fig1();
        let c = p.condition("Z", 0).unwrap();
        assert_eq!(c.names(), &["X".to_string(), "Y".to_string()]);
        assert!(approx_eq(c.prob(&[0, 0]), 0.5));
        assert!(approx_eq(c.prob(&[1, 1]), 0.5));
        assert!(approx_eq(c.prob(&[0, 1]), 0.0));
        assert!(matches!(p.condition("Z", 2), Err(Error::OutOfRange { .. })));
    }

    #[test]
    fn condition_point_mass_and_zero_event() {
        let p = JointDistribution::point_mass(&["A", "B"], &[2, 3], &[1, 2]).unwrap();
        let c = p.condition("A", 1).unwrap();
        assert_eq!(c.probs(), &[0.0, 0.0, 1.0]);
        assert!(matches!(p.condition("A", 0), Err(Error::ZeroProbability { .. })));
    }

    #[test]
    fn product_of_bits_is_uniform() {
        let a = JointDistribution::uniform(&["A"], &[2]).unwrap();
        let b = JointDistribution::uniform(&["B"], &[2]).unwrap();
        let ab = a.product(&b).unwrap();
        assert_eq!(ab.probs(), &[0.25; 4]);
        assert!(matches!(a.product(&a), Err(Error::Overlap(_))));
        let pm = JointDistribution::point_mass(&["F"], &[3], &[2]).unwrap();
        let fa = pm.product(&ab).unwrap();
        assert_eq!(fa.marginalize(&["A", "B"]).unwrap(), ab);
        assert_eq!(fa.marginalize(&["F"]).unwrap(), pm);
    }

    #[test]
    fn product_builds_eight_point() {
        let pair = JointDistribution::from_support(&["X1", "Y1"], &[2, 2], &[(&[0, 0], 0.5), (&[1, 1], 0.5)]).unwrap();
        let chain = families::xor_chain_factor();
        let joint = pair.product(&chain).unwrap();
        let joint = joint.permute(&["X1", "X2", "Y1", "Y2", "Z"]).unwrap();
        let expected: [[usize; 5]; 8] = [
            [0, 0, 0, 0, 0],
            [0, 0, 0, 1, 1],
            [0, 1, 0, 0, 2],
            [0, 1, 0, 1, 3],
            [1, 0, 1, 0, 0],
            [1, 0, 1, 1, 1],
            [1, 1, 1, 0, 2],
            [1, 1, 1, 1, 3],
        ];
        for o in expected {
            assert!(approx_eq(joint.prob(&o), 0.125), "{o:?}");
        }
        assert_eq!(joint.support().count(), 8);
    }

    #[test]
    fn channel_application_cases() {
        let p = families::ghz_type(0.7).unwrap();
        let id = Channel::identity(2);
        assert_eq!(p.apply_channel("X", &id).unwrap(), p);
        let t = Channel::uniformizer(2, 2).unwrap();
        let u = p
            .apply_channel("X", &t)
            .and_then(|q| q.apply_channel("Y", &t))
            .and_then(|q| q.apply_channel("Z", &t))
            .unwrap();
        for &q in u.probs() {
            assert!(approx_eq(q, 0.125));
        }
        let swap = Channel::binary_mixer(std::f64::consts::FRAC_PI_2);
        let s = p.apply_channel("X", &swap).unwrap();
        assert!((s.prob(&[1, 0, 0]) - 0.7).abs() < 1e-12);
        assert!((s.prob(&[0, 1, 1]) - 0.3).abs() < 1e-12);
        let three = Channel::identity(3);
        assert!(matches!(p.apply_channel("X", &three), Err(Error::CardinalityMismatch { .. })));
    }

    #[test]
    fn relabel_xor_recovers_fig1() {
        let p = eq11();
        let xor = p.relabel(&["Z1", "Z2"], "Z", 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(xor, fig1());
        let id = fig1().relabel(&["Y"], "Y", 2, &[0, 1]).unwrap();
        assert_eq!(id, fig1());
        assert!(p.relabel(&["Z1", "Z2"], "Z", 2, &[0, 1, 1]).is_err());
        assert!(p.relabel(&[], "Z", 2, &[]).is_err());
    }

    #[test]
    fn relabel_matches_enumeration_of_eq11() {
        // brute force over the 16 outcomes of (x, y, z1, z2)
        let p = eq11();
        let mut oracle = [0.0; 8];
        for x in 0..2 {
            for y in 0..2 {
                for z1 in 0..2 {
                    for z2 in 0..2 {
                        oracle[x * 4 + y * 2 + (z1 ^ z2)] += p.prob(&[x, y, z1, z2]);
                    }
                }
            }
        }
        let r = p.relabel(&["Z1", "Z2"], "Z", 2, &[0, 1, 1, 0]).unwrap();
        for (a, b) in r.probs().iter().zip(oracle) {
            assert!(approx_eq(*a, b));
        }
        let xz = r.marginalize(&["X", "Z"]).unwrap();
        assert!(approx_eq(xz.prob(&[1, 1]), oracle[5] + oracle[7]));
    }

    #[test]
    fn star_example_relabels_into_correlated_pairs() {
        let p = families::star_example(&[0.3, 0.7], &[0.6, 0.4]).unwrap();
        // z_ij -> (x_i, y_j) is already the mixed-radix encoding i * |q| + j
        let split = p.split_variable("Z", &["Za", "Zb"], &[2, 2]).unwrap();
        assert!(split.is_product(&[vec!["X", "Za"], vec!["Y", "Zb"]], 1e-12).unwrap());
        let xa = split.marginalize(&["X", "Za"]).unwrap();
        assert!(approx_eq(xa.prob(&[0, 0]), 0.3));
        assert!(approx_eq(xa.prob(&[1, 1]), 0.7));
    }

    #[test]
    fn product_checks() {
        let p = fig1();
        assert!(!p.is_product(&[vec!["X"], vec!["Y"], vec!["Z"]], 1e-9).unwrap());
        let xy = p.marginalize(&["X", "Y"]).unwrap();
        assert!(xy.is_product(&[vec!["X"], vec!["Y"]], 1e-9).unwrap());
        let u = JointDistribution::uniform(&["A", "B", "C"], &[2, 2, 2]).unwrap();
        assert!(u.is_product(&[vec!["A"], vec!["B"], vec!["C"]], 1e-12).unwrap());
        assert!(p.is_product(&[vec!["X"], vec!["Y"]], 1e-9).is_err());
        assert!(p.is_product(&[vec!["X", "Y"], vec!["Y", "Z"]], 1e-9).is_err());
    }

    #[test]
    fn constructor_rejects_bad_tables() {
        let names = vec!["A".to_string()];
        assert!(JointDistribution::new(names.clone(), vec![2], vec![0.5, 0.4]).is_err());
        assert!(JointDistribution::new(names.clone(), vec![2], vec![1.5, -0.5]).is_err());
        assert!(JointDistribution::new(names.clone(), vec![3], vec![0.5, 0.5]).is_err());
        assert!(JointDistribution::new(names, vec![0], vec![]).is_err());
        assert!(JointDistribution::new(vec![], vec![], vec![1.0]).is_err());
    }

    #[test]
    fn outcome_validation() {
        let p = fig1();
        assert!(Outcome(vec![1, 0, 1]).validate(&p).is_ok());
        assert!(Outcome(vec![1, 0]).validate(&p).is_err());
        assert!(Outcome(vec![1, 0, 2]).validate(&p).is_err());
    }
}
