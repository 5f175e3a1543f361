use serde_json::{json, Value};

use super::{label, CaseLabel};
use crate::probtab::{io, JointDistribution};
use crate::shannon::{expect_tripartite, EntropyProfile};
use crate::{Error, Result};

/// Largest `|X|` or `|Y|` the decomposition search accepts.
pub const MAX_SEARCH_CARD: usize = 12;

const NODE_BUDGET: usize = 5_000_000;
const MINOR_TOL: f64 = 1e-12;

/// A split `x <-> (x1, x2)`, `y <-> (y1, y2)` under which
/// `P(x1 x2 y1 y2 z) = P(x1 y1) P(x2 y2 z)` and the second factor has
/// independent `X2`, `Y2`.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleDecomposition {
    /// `x_grid[x1][x2]` is the original symbol of `X`.
    pub x_grid: Vec<Vec<usize>>,
    /// `y_grid[y1][y2]` is the original symbol of `Y`.
    pub y_grid: Vec<Vec<usize>>,
    /// Factor over `(X1, Y1)`.
    pub first: JointDistribution,
    /// Factor over `(X2, Y2, Z)`.
    pub second: JointDistribution,
    /// Case label of the second factor.
    pub second_case: CaseLabel,
    /// `l_inf` error of the product against the relabelled input.
    pub residual: f64,
}

impl TriangleDecomposition {
    /// `(x1, x2)` for an original symbol `x`.
    pub fn split_x(&self, x: usize) -> Option<(usize, usize)> {
        locate(&self.x_grid, x)
    }

    pub fn split_y(&self, y: usize) -> Option<(usize, usize)> {
        locate(&self.y_grid, y)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "x_grid": self.x_grid,
            "y_grid": self.y_grid,
            "first": io::to_json_value(&self.first),
            "second": io::to_json_value(&self.second),
            "second_case": self.second_case,
            "residual": self.residual,
        })
    }
}

fn locate(grid: &[Vec<usize>], v: usize) -> Option<(usize, usize)> {
    grid.iter()
        .enumerate()
        .find_map(|(r, row)| row.iter().position(|&s| s == v).map(|c| (r, c)))
}

/// Exhaustive search over bijective splits of `X` and `Y`, smallest first
/// factor first. Returns `Ok(None)` when no split within the bounds works.
pub fn triangle_decomposition_search(
    p: &JointDistribution,
    max_factor_card: usize,
    tol: f64,
) -> Result<Option<TriangleDecomposition>> {
    expect_tripartite(p)?;
    let [cx, cy] = [p.cards()[0], p.cards()[1]];
    if cx > MAX_SEARCH_CARD || cy > MAX_SEARCH_CARD {
        return Err(Error::SearchBound(format!(
            "|X| = {cx}, |Y| = {cy}; the search handles at most {MAX_SEARCH_CARD}"
        )));
    }
    let splits = |n: usize| -> Vec<(usize, usize)> {
        (1..=n)
            .filter(|c| n.is_multiple_of(*c) && *c <= max_factor_card && n / c <= max_factor_card)
            .map(|c| (c, n / c))
            .collect()
    };
    let mut budget = NODE_BUDGET;
    for &(c1, c2) in &splits(cx) {
        let x_grids = grids(p, 0, c1, c2, &mut budget)?;
        if x_grids.is_empty() {
            continue;
        }
        for &(d1, d2) in &splits(cy) {
            let y_grids = grids(p, 1, d1, d2, &mut budget)?;
            for xg in &x_grids {
                for yg in &y_grids {
                    if let Some(d) = try_pair(p, xg, yg, tol)? {
                        return Ok(Some(d));
                    }
                }
            }
        }
    }
    Ok(None)
}

fn try_pair(p: &JointDistribution, xg: &[Vec<usize>], yg: &[Vec<usize>], tol: f64) -> Result<Option<TriangleDecomposition>> {
    let (c1, c2) = (xg.len(), xg[0].len());
    let (d1, d2) = (yg.len(), yg[0].len());
    let cz = p.cards()[2];
    let names: Vec<String> = p.names().to_vec();
    let n = |base: &str, k: u8| format!("{base}{k}");
    let labels = [n(&names[0], 1), n(&names[0], 2), n(&names[1], 1), n(&names[1], 2), names[2].clone()];
    let mut probs = Vec::with_capacity(c1 * c2 * d1 * d2 * cz);
    for row in xg {
        for &x in row {
            for yrow in yg {
                for &y in yrow {
                    for z in 0..cz {
                        probs.push(p.prob(&[x, y, z]));
                    }
                }
            }
        }
    }
    // cells in (x1, x2, y1, y2, z) order
    let t = JointDistribution::new(labels.to_vec(), vec![c1, c2, d1, d2, cz], probs)?;
    let first = t.marginalize(&[&labels[0], &labels[2]])?;
    let second = t.marginalize(&[&labels[1], &labels[3], &labels[4]])?;
    let prod = first
        .product(&second)?
        .permute(&[&labels[0], &labels[1], &labels[2], &labels[3], &labels[4]])?;
    let residual = prod.linf_distance(&t)?;
    if residual > tol {
        return Ok(None);
    }
    let h = EntropyProfile::of(&second)?;
    if h.i_xy() > tol {
        return Ok(None);
    }
    Ok(Some(TriangleDecomposition {
        x_grid: xg.to_vec(),
        y_grid: yg.to_vec(),
        first,
        second_case: label(h.i_xy(), h.i_xy_given_z(), tol),
        second,
        residual,
    }))
}

/// All canonical `rows x cols` grids of the symbols of variable `axis` (0 or 1)
/// such that, for every value of the other two variables, the grid of
/// probabilities has rank at most one.
///
/// Canonical form: column 0 is increasing top to bottom and each column
/// contains the smallest symbol not used by earlier columns.
fn grids(p: &JointDistribution, axis: usize, rows: usize, cols: usize, budget: &mut usize) -> Result<Vec<Vec<Vec<usize>>>> {
    let n = rows * cols;
    let other = 1 - axis;
    let (co, cz) = (p.cards()[other], p.cards()[2]);
    // slices[s] = P(symbol s, other, z) over all (other, z)
    let slices: Vec<Vec<f64>> = (0..n)
        .map(|s| {
            let mut v = Vec::with_capacity(co * cz);
            for o in 0..co {
                for z in 0..cz {
                    let mut key = [0; 3];
                    key[axis] = s;
                    key[other] = o;
                    key[2] = z;
                    v.push(p.prob(&key));
                }
            }
            v
        })
        .collect();
    let mut search = GridSearch {
        rows,
        cols,
        slices: &slices,
        grid: vec![vec![usize::MAX; cols]; rows],
        used: vec![false; n],
        out: Vec::new(),
        budget,
    };
    search.fill(0, 0)?;
    Ok(search.out)
}

struct GridSearch<'a> {
    rows: usize,
    cols: usize,
    slices: &'a [Vec<f64>],
    grid: Vec<Vec<usize>>,
    used: Vec<bool>,
    out: Vec<Vec<Vec<usize>>>,
    budget: &'a mut usize,
}

impl GridSearch<'_> {
    fn fill(&mut self, r: usize, c: usize) -> Result<()> {
        if c == self.cols {
            self.out.push(self.grid.clone());
            return Ok(());
        }
        if r == self.rows {
            return self.fill(0, c + 1);
        }
        if *self.budget == 0 {
            return Err(Error::SearchBound("decomposition search exceeded its node budget".into()));
        }
        *self.budget -= 1;
        let candidates: Vec<usize> = if c == 0 {
            if r == 0 {
                vec![0]
            } else {
                ((self.grid[r - 1][0] + 1)..self.used.len()).filter(|&s| !self.used[s]).collect()
            }
        } else {
            (0..self.used.len()).filter(|&s| !self.used[s]).collect()
        };
        let floor = self.column_floor(c);
        for s in candidates {
            // each column holds the smallest symbol free at its start
            if c > 0 && r == self.rows - 1 && s != floor && !(0..r).any(|rr| self.grid[rr][c] == floor) {
                continue;
            }
            if !self.rank_one_with(r, c, s) {
                continue;
            }
            self.grid[r][c] = s;
            self.used[s] = true;
            self.fill(r + 1, c)?;
            self.used[s] = false;
            self.grid[r][c] = usize::MAX;
        }
        Ok(())
    }

    /// Smallest symbol not placed in columns `0..c`.
    fn column_floor(&self, c: usize) -> usize {
        let mut taken = vec![false; self.used.len()];
        for row in &self.grid {
            for &s in &row[..c] {
                taken[s] = true;
            }
        }
        taken.iter().position(|t| !t).expect("symbols remain")
    }

    /// Every 2x2 minor formed by the new cell `(r, c) = s` with filled cells
    /// `(r', c')`, `r' < r`, `c' < c` vanishes on every slice.
    fn rank_one_with(&self, r: usize, c: usize, s: usize) -> bool {
        for rr in 0..r {
            for cc in 0..c {
                let a = &self.slices[s];
                let b = &self.slices[self.grid[rr][cc]];
                let ac = &self.slices[self.grid[r][cc]];
                let bc = &self.slices[self.grid[rr][c]];
                for k in 0..a.len() {
                    if (a[k] * b[k] - ac[k] * bc[k]).abs() > MINOR_TOL {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probtab::families;

    #[test]
    fn eq14_splits_into_binary_halves() {
        let p = families::eq14();
        let d = triangle_decomposition_search(&p, 4, 1e-9).unwrap().expect("found");
        assert_eq!(d.x_grid.len(), 2);
        assert_eq!(d.y_grid.len(), 2);
        assert!(d.residual < 1e-12);
        // the second factor is the chain factor of fig1 with a merged Z
        let chain = families::xor_chain_factor();
        let second = d.second.rename(&["X2", "Y2", "Z"]).unwrap();
        assert!(second.linf_distance(&chain).unwrap() < 1e-12);
        // Z = (z1, z2) pins both ends, so I(X2;Y2|Z) = 0 as well
        assert_eq!(d.second_case, CaseLabel::Degenerate);
        let first = d.first.probs();
        assert_eq!(first, &[0.5, 0.0, 0.0, 0.5]);
    }

    #[test]
    fn fig1_has_trivial_first_factor() {
        let d = triangle_decomposition_search(&families::fig1(), 2, 1e-9).unwrap().expect("found");
        assert_eq!(d.x_grid, vec![vec![0, 1]]);
        assert_eq!(d.first.probs(), &[1.0]);
        assert_eq!(d.second_case, CaseLabel::CaseOne);
    }

    #[test]
    fn triangle_example_factors_into_pairs() {
        let p = families::triangle_example(&[0.3, 0.7], &[0.6, 0.4], &[0.2, 0.8]).unwrap();
        let d = triangle_decomposition_search(&p, 4, 1e-9).unwrap().expect("found");
        // x1 = y1 carries the shared middle index with weights q
        let a = &d.first;
        assert!((a.prob(&[0, 0]) - 0.6).abs() < 1e-12);
        assert!((a.prob(&[1, 1]) - 0.4).abs() < 1e-12);
        // Z determines both X2 and Y2, so the conditional term vanishes too
        assert_eq!(d.second_case, CaseLabel::Degenerate);
        let s = &d.second;
        assert!(s.marginalize(&["X2", "Y2"]).unwrap().is_product(&[vec!["X2"], vec!["Y2"]], 1e-12).unwrap());
        let h = crate::shannon::conditional_entropy(s, &["X2", "Y2"], &["Z"]).unwrap();
        assert!(h.value().abs() < 1e-12);
    }

    #[test]
    fn ghz_has_no_decomposition() {
        let p = families::ghz_type(0.5).unwrap();
        assert!(triangle_decomposition_search(&p, 2, 1e-9).unwrap().is_none());
    }

    #[test]
    fn oversized_inputs_are_rejected() {
        let p = JointDistribution::uniform(&["X", "Y", "Z"], &[13, 2, 2]).unwrap();
        assert!(matches!(triangle_decomposition_search(&p, 13, 1e-9), Err(Error::SearchBound(_))));
    }

    #[test]
    fn split_lookup() {
        let d = triangle_decomposition_search(&families::eq14(), 4, 1e-9).unwrap().unwrap();
        for x in 0..4 {
            let (r, c) = d.split_x(x).unwrap();
            assert_eq!(d.x_grid[r][c], x);
        }
        assert!(d.split_y(9).is_none());
    }
}
