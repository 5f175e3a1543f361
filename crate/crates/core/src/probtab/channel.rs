use crate::{Error, Result};

/// Tolerance for column and row stochasticity.
pub const CHANNEL_TOL: f64 = 1e-12;

/// A finite stochastic map `p(new | old)`, stored as an `out_card x in_card`
/// column-stochastic matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct Channel {
    in_card: usize,
    out_card: usize,
    /// row-major, `matrix[new * in_card + old]`
    matrix: Vec<f64>,
    doubly_stochastic: bool,
}

impl Channel {
    /// Builds a channel from its rows (`rows[new][old]`).
    pub fn new(rows: Vec<Vec<f64>>) -> Result<Self> {
        let out_card = rows.len();
        let in_card = rows.first().map_or(0, Vec::len);
        if out_card == 0 || in_card == 0 {
            return Err(Error::InvalidChannel("empty matrix".into()));
        }
        if rows.iter().any(|r| r.len() != in_card) {
            return Err(Error::InvalidChannel("ragged matrix".into()));
        }
        let matrix: Vec<f64> = rows.into_iter().flatten().collect();
        if let Some(x) = matrix.iter().find(|x| !x.is_finite() || **x < 0.0) {
            return Err(Error::InvalidChannel(format!("invalid entry {x}")));
        }
        for old in 0..in_card {
            let s: f64 = (0..out_card).map(|new| matrix[new * in_card + old]).sum();
            if (s - 1.0).abs() > CHANNEL_TOL {
                return Err(Error::InvalidChannel(format!("column {old} sums to {s}")));
            }
        }
        Ok(Self {
            in_card,
            out_card,
            matrix,
            doubly_stochastic: false,
        })
    }

    /// Builds a square channel and additionally checks that every row sums to 1.
    pub fn doubly_stochastic(rows: Vec<Vec<f64>>) -> Result<Self> {
        let mut ch = Self::new(rows)?;
        if ch.in_card != ch.out_card {
            return Err(Error::InvalidChannel(format!(
                "doubly stochastic matrix must be square, got {}x{}",
                ch.out_card, ch.in_card
            )));
        }
        for new in 0..ch.out_card {
            let s: f64 = ch.row(new).iter().sum();
            if (s - 1.0).abs() > CHANNEL_TOL {
                return Err(Error::InvalidChannel(format!("row {new} sums to {s}")));
            }
        }
        ch.doubly_stochastic = true;
        Ok(ch)
    }

    pub fn identity(n: usize) -> Self {
        let mut matrix = vec![0.0; n * n];
        for i in 0..n {
            matrix[i * n + i] = 1.0;
        }
        Self {
            in_card: n,
            out_card: n,
            matrix,
            doubly_stochastic: true,
        }
    }

    /// The map sending every input to the uniform distribution on `out_card` values.
    pub fn uniformizer(in_card: usize, out_card: usize) -> Result<Self> {
        if in_card == 0 || out_card == 0 {
            return Err(Error::InvalidChannel("zero cardinality".into()));
        }
        Ok(Self {
            in_card,
            out_card,
            matrix: vec![1.0 / out_card as f64; in_card * out_card],
            doubly_stochastic: in_card == out_card,
        })
    }

    /// `[[cos^2 g, sin^2 g], [sin^2 g, cos^2 g]]`: identity at 0, bit flip at pi/2.
    pub fn binary_mixer(gamma: f64) -> Self {
        let c = gamma.cos().powi(2);
        let s = gamma.sin().powi(2);
        Self {
            in_card: 2,
            out_card: 2,
            matrix: vec![c, s, s, c],
            doubly_stochastic: true,
        }
    }

    /// Deterministic relabelling `old -> perm[old]`.
    pub fn permutation(perm: &[usize]) -> Result<Self> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in perm {
            if p >= n || seen[p] {
                return Err(Error::InvalidChannel(format!("{perm:?} is not a permutation")));
            }
            seen[p] = true;
        }
        let mut matrix = vec![0.0; n * n];
        for (old, &new) in perm.iter().enumerate() {
            matrix[new * n + old] = 1.0;
        }
        Ok(Self {
            in_card: n,
            out_card: n,
            matrix,
            doubly_stochastic: true,
        })
    }

    /// Deterministic (not necessarily invertible) map `old -> table[old]`.
    pub fn deterministic(table: &[usize], out_card: usize) -> Result<Self> {
        if table.is_empty() || out_card == 0 {
            return Err(Error::InvalidChannel("empty deterministic map".into()));
        }
        let n = table.len();
        let mut matrix = vec![0.0; n * out_card];
        for (old, &new) in table.iter().enumerate() {
            if new >= out_card {
                return Err(Error::InvalidChannel(format!("value {new} >= {out_card}")));
            }
            matrix[new * n + old] = 1.0;
        }
        Ok(Self {
            in_card: n,
            out_card,
            matrix,
            doubly_stochastic: false,
        })
    }

    /// Circulant doubly stochastic matrix whose column `c` is `v` shifted down
    /// by `c`; in particular column 0 is `v`.
    pub fn doubly_stochastic_lift(v: &[f64]) -> Result<Self> {
        let n = v.len();
        let rows = (0..n)
            .map(|r| (0..n).map(|c| v[(r + n - c) % n]).collect())
            .collect();
        Self::doubly_stochastic(rows)
    }

    pub fn in_card(&self) -> usize {
        self.in_card
    }

    pub fn out_card(&self) -> usize {
        self.out_card
    }

    pub fn is_doubly_stochastic(&self) -> bool {
        self.doubly_stochastic
    }

    /// `p(new | old)`.
    pub fn entry(&self, new: usize, old: usize) -> f64 {
        self.matrix[new * self.in_card + old]
    }

    pub fn row(&self, new: usize) -> &[f64] {
        &self.matrix[new * self.in_card..(new + 1) * self.in_card]
    }

    /// Output distribution for input value `old`.
    pub fn column(&self, old: usize) -> Vec<f64> {
        (0..self.out_card).map(|new| self.entry(new, old)).collect()
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        (0..self.out_card).map(|r| self.row(r).to_vec()).collect()
    }

    /// Sequential composition: first `self`, then `next`.
    pub fn then(&self, next: &Channel) -> Result<Self> {
        if next.in_card != self.out_card {
            return Err(Error::CardinalityMismatch {
                expected: self.out_card,
                found: next.in_card,
            });
        }
        let mut matrix = vec![0.0; next.out_card * self.in_card];
        for new in 0..next.out_card {
            for old in 0..self.in_card {
                matrix[new * self.in_card + old] = (0..self.out_card)
                    .map(|mid| next.entry(new, mid) * self.entry(mid, old))
                    .sum();
            }
        }
        Ok(Self {
            in_card: self.in_card,
            out_card: next.out_card,
            matrix,
            doubly_stochastic: self.doubly_stochastic && next.doubly_stochastic,
        })
    }
}

/// Greedy Birkhoff–von Neumann decomposition of a doubly stochastic channel
/// into weighted permutations (`perm[old] = new`). Weights sum to 1.
pub fn birkhoff_decomposition(ch: &Channel) -> Result<Vec<(f64, Vec<usize>)>> {
    if !ch.is_doubly_stochastic() {
        return Err(Error::InvalidChannel("not doubly stochastic".into()));
    }
    let n = ch.in_card();
    let mut rest: Vec<Vec<f64>> = ch.rows();
    let mut out = Vec::new();
    let mut remaining = 1.0;
    // each step zeroes at least one entry, so n^2 steps suffice
    for _ in 0..=n * n {
        if remaining <= 1e-12 {
            break;
        }
        let Some(matching) = perfect_matching(&rest, 1e-13) else {
            break;
        };
        let w = matching
            .iter()
            .enumerate()
            .map(|(old, &new)| rest[new][old])
            .fold(f64::INFINITY, f64::min);
        for (old, &new) in matching.iter().enumerate() {
            rest[new][old] -= w;
        }
        remaining -= w;
        out.push((w, matching));
    }
    if remaining.abs() > 1e-9 {
        return Err(Error::InvalidChannel(format!(
            "Birkhoff decomposition left residual weight {remaining}"
        )));
    }
    Ok(out)
}

/// Perfect matching column -> row on entries above `eps` (Kuhn's algorithm).
fn perfect_matching(m: &[Vec<f64>], eps: f64) -> Option<Vec<usize>> {
    let n = m.len();
    let mut row_owner: Vec<Option<usize>> = vec![None; n];

    fn augment(col: usize, m: &[Vec<f64>], eps: f64, seen: &mut [bool], owner: &mut [Option<usize>]) -> bool {
        for row in 0..m.len() {
            if m[row][col] > eps && !seen[row] {
                seen[row] = true;
                if owner[row].is_none_or(|c| augment(c, m, eps, seen, owner)) {
                    owner[row] = Some(col);
                    return true;
                }
            }
        }
        false
    }

    for col in 0..n {
        let mut seen = vec![false; n];
        if !augment(col, m, eps, &mut seen, &mut row_owner) {
            return None;
        }
    }
    let mut perm = vec![0; n];
    for (row, c) in row_owner.iter().enumerate() {
        perm[c.expect("perfect matching")] = row;
    }
    Some(perm)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn constructors_validate() {
        assert!(Channel::new(vec![vec![0.5, 1.0], vec![0.5, 0.0]]).is_ok());
        assert!(Channel::new(vec![vec![0.5, 1.0], vec![0.4, 0.0]]).is_err());
        assert!(Channel::doubly_stochastic(vec![vec![0.5, 1.0], vec![0.5, 0.0]]).is_err());
        assert!(Channel::permutation(&[0, 0]).is_err());
        assert!(Channel::deterministic(&[0, 3], 2).is_err());
    }

    #[test]
    fn mixer_endpoints() {
        let id = Channel::binary_mixer(0.0);
        assert_eq!(id.rows(), vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let swap = Channel::binary_mixer(std::f64::consts::FRAC_PI_2);
        assert!((swap.entry(1, 0) - 1.0).abs() < 1e-15);
        assert!(swap.entry(0, 0).abs() < 1e-15);
    }

    #[test]
    fn lift_has_v_as_first_column() {
        let v = [0.2, 0.5, 0.3];
        let ch = Channel::doubly_stochastic_lift(&v).unwrap();
        assert_eq!(ch.column(0), v.to_vec());
        assert!(ch.is_doubly_stochastic());
    }

    #[test]
    fn birkhoff_of_permutation_is_itself() {
        let p = Channel::permutation(&[2, 0, 1]).unwrap();
        let d = birkhoff_decomposition(&p).unwrap();
        assert_eq!(d, vec![(1.0, vec![2, 0, 1])]);
    }

    fn reassemble(n: usize, parts: &[(f64, Vec<usize>)]) -> Vec<Vec<f64>> {
        let mut m = vec![vec![0.0; n]; n];
        for (w, perm) in parts {
            for (old, &new) in perm.iter().enumerate() {
                m[new][old] += w;
            }
        }
        m
    }

    proptest! {
        #[test]
        fn birkhoff_reassembles_circulants(v in proptest::collection::vec(0.01f64..1.0, 2..6)) {
            let s: f64 = v.iter().sum();
            let v: Vec<f64> = v.iter().map(|x| x / s).collect();
            let ch = Channel::doubly_stochastic_lift(&v).unwrap();
            let parts = birkhoff_decomposition(&ch).unwrap();
            let m = reassemble(v.len(), &parts);
            for (r, row) in ch.rows().iter().enumerate() {
                for (c, x) in row.iter().enumerate() {
                    prop_assert!((m[r][c] - x).abs() < 1e-9);
                }
            }
        }

        #[test]
        fn mixers_compose_to_doubly_stochastic(a in 0.0f64..1.6, b in 0.0f64..1.6) {
            let c = Channel::binary_mixer(a).then(&Channel::binary_mixer(b)).unwrap();
            prop_assert!(c.is_doubly_stochastic());
            for r in 0..2 {
                let s: f64 = c.row(r).iter().sum();
                prop_assert!((s - 1.0).abs() < 1e-12);
            }
        }
    }
}
