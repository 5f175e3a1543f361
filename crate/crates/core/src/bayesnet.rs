//! Bayesian DAGs built from minimal predecessor sets, and Markov compatibility.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::probtab::{flat_index, JointDistribution, OutcomeIter};
use crate::shannon::conditional_mutual_information;
use crate::{Error, Result};

/// Default tolerance for conditional-independence tests.
pub const CI_TOL: f64 = 1e-9;

/// Directed acyclic graph over variable labels. Edges are `(parent, child)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dag {
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
}

#[derive(Deserialize)]
struct DagRepr {
    nodes: Vec<String>,
    edges: Vec<(String, String)>,
}

impl Dag {
    /// Validates labels, rejects self-loops, duplicate edges and cycles.
    pub fn new(nodes: Vec<String>, edges: Vec<(String, String)>) -> Result<Self> {
        for (i, n) in nodes.iter().enumerate() {
            if nodes[..i].contains(n) {
                return Err(Error::DuplicateVariable(n.clone()));
            }
        }
        let mut seen = BTreeSet::new();
        for (a, b) in &edges {
            for v in [a, b] {
                if !nodes.contains(v) {
                    return Err(Error::InvalidGraph(format!("edge endpoint `{v}` is not a node")));
                }
            }
            if a == b {
                return Err(Error::InvalidGraph(format!("self-loop on `{a}`")));
            }
            if !seen.insert((a.clone(), b.clone())) {
                return Err(Error::InvalidGraph(format!("duplicate edge {a} -> {b}")));
            }
        }
        let dag = Self { nodes, edges };
        if dag.topological_order().is_none() {
            return Err(Error::InvalidGraph("graph has a directed cycle".into()));
        }
        Ok(dag)
    }

    pub fn nodes(&self) -> &[String] {
        &self.nodes
    }

    pub fn edges(&self) -> &[(String, String)] {
        &self.edges
    }

    /// Parents of `node` in insertion order.
    pub fn parents(&self, node: &str) -> Vec<&str> {
        self.edges
            .iter()
            .filter(|(_, c)| c == node)
            .map(|(p, _)| p.as_str())
            .collect()
    }

    /// Kahn's algorithm; `None` if a cycle exists.
    pub fn topological_order(&self) -> Option<Vec<&str>> {
        let mut indegree: Vec<usize> = self.nodes.iter().map(|n| self.parents(n).len()).collect();
        let mut ready: Vec<usize> = (0..self.nodes.len()).filter(|&i| indegree[i] == 0).collect();
        let mut order = Vec::with_capacity(self.nodes.len());
        while let Some(i) = ready.pop() {
            order.push(self.nodes[i].as_str());
            for (p, c) in &self.edges {
                if *p == self.nodes[i] {
                    let ci = self.nodes.iter().position(|n| n == c).expect("validated");
                    indegree[ci] -= 1;
                    if indegree[ci] == 0 {
                        ready.push(ci);
                    }
                }
            }
        }
        (order.len() == self.nodes.len()).then_some(order)
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::to_value(self).expect("plain data serializes")
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("plain data serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let r: DagRepr = serde_json::from_str(text).map_err(|e| Error::Format {
            context: format!("line {} column {}", e.line(), e.column()),
            message: e.to_string(),
        })?;
        Self::new(r.nodes, r.edges)
    }
}

fn check_ordering(p: &JointDistribution, ordering: &[&str]) -> Result<Vec<usize>> {
    if ordering.len() != p.num_vars() {
        return Err(Error::InvalidParameter(format!(
            "ordering names {} variables, distribution has {}",
            ordering.len(),
            p.num_vars()
        )));
    }
    p.indices_of(ordering)
}

/// True iff `p(x_j | s) = p(x_j | preds)` on every predecessor configuration of
/// positive probability, within `tol`.
fn screens_off(p: &JointDistribution, preds: &[usize], s: &[usize], j: usize, tol: f64) -> bool {
    let mut full = preds.to_vec();
    full.push(j);
    let (full_cards, full_t) = p.marginal_by_index(&full);
    let mut sub = s.to_vec();
    sub.push(j);
    let (sub_cards, sub_t) = p.marginal_by_index(&sub);
    let cj = p.cards()[j];
    let pos: Vec<usize> = s.iter().map(|v| preds.iter().position(|q| q == v).expect("subset")).collect();
    let pred_cards = &full_cards[..preds.len()];
    let mut key = vec![0usize; s.len() + 1];
    for (row, cfg) in OutcomeIter::new(pred_cards).enumerate() {
        let block = &full_t[row * cj..(row + 1) * cj];
        let mass: f64 = block.iter().sum();
        if mass <= 0.0 {
            continue;
        }
        for (k, &q) in pos.iter().enumerate() {
            key[k] = cfg[q];
        }
        key[s.len()] = 0;
        let base = flat_index(&sub_cards, &key).expect("in range");
        let sub_block = &sub_t[base..base + cj];
        let sub_mass: f64 = sub_block.iter().sum();
        for v in 0..cj {
            if (block[v] / mass - sub_block[v] / sub_mass).abs() > tol {
                return false;
            }
        }
    }
    true
}

/// Minimal set of predecessors of `ordering[j]` (0-based) that screens it off
/// from the remaining predecessors. Candidates are tried by increasing size,
/// then by the lexicographic order of their sorted labels; the first passing
/// set is returned, sorted.
pub fn markovian_parents(p: &JointDistribution, ordering: &[&str], j: usize, tol: f64) -> Result<Vec<String>> {
    let idx = check_ordering(p, ordering)?;
    if j >= idx.len() {
        return Err(Error::InvalidParameter(format!(
            "position {j} outside ordering of length {}",
            idx.len()
        )));
    }
    let preds = &idx[..j];
    let mut candidates: Vec<Vec<usize>> = (0u64..(1 << preds.len()))
        .map(|mask| {
            (0..preds.len())
                .filter(|b| mask & (1 << b) != 0)
                .map(|b| preds[b])
                .collect()
        })
        .collect();
    let label = |v: &Vec<usize>| -> Vec<&str> {
        let mut l: Vec<&str> = v.iter().map(|&i| p.names()[i].as_str()).collect();
        l.sort_unstable();
        l
    };
    candidates.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| label(a).cmp(&label(b))));
    let found = candidates
        .into_iter()
        .find(|s| screens_off(p, preds, s, idx[j], tol))
        .expect("the full predecessor set always screens off");
    let mut names: Vec<String> = found.iter().map(|&i| p.names()[i].clone()).collect();
    names.sort();
    Ok(names)
}

/// Draws an arrow from every Markovian parent to its child, for each position.
pub fn build_dag(p: &JointDistribution, ordering: &[&str], tol: f64) -> Result<Dag> {
    check_ordering(p, ordering)?;
    let mut edges = Vec::new();
    for (j, child) in ordering.iter().enumerate() {
        for parent in markovian_parents(p, ordering, j, tol)? {
            edges.push((parent, child.to_string()));
        }
    }
    Dag::new(ordering.iter().map(|s| s.to_string()).collect(), edges)
}

/// True iff `p = prod_j p(x_j | pa_j)` cell by cell within `tol`.
pub fn is_markov_compatible(p: &JointDistribution, g: &Dag, tol: f64) -> Result<bool> {
    let mut a: Vec<&str> = p.names().iter().map(String::as_str).collect();
    let mut b: Vec<&str> = g.nodes().iter().map(String::as_str).collect();
    a.sort_unstable();
    b.sort_unstable();
    if a != b {
        return Err(Error::InvalidGraph(format!("DAG nodes {b:?} differ from variables {a:?}")));
    }
    struct Factor {
        family: Vec<usize>,
        cards: Vec<usize>,
        joint: Vec<f64>,
    }
    let mut factors = Vec::new();
    for (j, name) in p.names().iter().enumerate() {
        let mut family = p.indices_of(&g.parents(name))?;
        family.push(j);
        let (cards, joint) = p.marginal_by_index(&family);
        factors.push(Factor { family, cards, joint });
    }
    let mut key = Vec::new();
    for (o, q) in p.iter() {
        let mut prod = 1.0;
        for f in &factors {
            key.clear();
            key.extend(f.family.iter().map(|&i| o[i]));
            let cj = *f.cards.last().expect("child present");
            let at = flat_index(&f.cards, &key).expect("in range");
            let start = at - key[key.len() - 1];
            let mass: f64 = f.joint[start..start + cj].iter().sum();
            if mass <= 0.0 {
                prod = 0.0;
                break;
            }
            prod *= f.joint[at] / mass;
        }
        if (q - prod).abs() > tol {
            return Ok(false);
        }
    }
    Ok(true)
}

/// True iff `I(A; C | B) <= tol` for `ordering = (A, B, C)`.
pub fn is_markov_chain(p: &JointDistribution, ordering: &[&str], tol: f64) -> Result<bool> {
    let [a, b, c] = ordering else {
        return Err(Error::Arity {
            expected: 3,
            found: ordering.len(),
        });
    };
    Ok(conditional_mutual_information(p, &[a], &[c], &[b])?.value() <= tol)
}
