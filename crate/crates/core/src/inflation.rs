//! Support-based certificates of incompatibility with the triangle network,
//! from a second-order spiral inflation with copies `X1, Y1, Z1, X2, Y2, Z2`.
//!
//! Each copy is tied to one original variable by a bipartite marginal
//! equality; when the original support forces a value, a copy value forces
//! an original value. A set of copy values with positive probability that
//! forces a zero-probability event on `(X, Y, Z)` is a contradiction.

use std::fmt;

use serde::Serialize;
use serde_json::{json, Value};

use crate::probtab::JointDistribution;
use crate::{Error, Result};

/// Support threshold: probabilities at or below this are treated as zero.
pub const SUPPORT_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum OrigVar {
    X,
    Y,
    Z,
}

impl OrigVar {
    pub const ALL: [OrigVar; 3] = [OrigVar::X, OrigVar::Y, OrigVar::Z];

    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum CopyVar {
    X1,
    Y1,
    Z1,
    X2,
    Y2,
    Z2,
}

impl CopyVar {
    /// Enumeration order of the certificate search.
    pub const ALL: [CopyVar; 6] = [CopyVar::X1, CopyVar::Y1, CopyVar::Z1, CopyVar::X2, CopyVar::Y2, CopyVar::Z2];

    pub fn original(self) -> OrigVar {
        match self {
            CopyVar::X1 | CopyVar::X2 => OrigVar::X,
            CopyVar::Y1 | CopyVar::Y2 => OrigVar::Y,
            CopyVar::Z1 | CopyVar::Z2 => OrigVar::Z,
        }
    }
}

impl fmt::Display for CopyVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl fmt::Display for OrigVar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// `(copy, partner)` has the same distribution as `(copy.original(), partner)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct MarginalEquality {
    pub copy: CopyVar,
    pub partner: OrigVar,
}

/// The bipartite constraints of the inflation, one per copy.
pub const MARGINAL_EQUALITIES: [MarginalEquality; 6] = [
    MarginalEquality { copy: CopyVar::Z1, partner: OrigVar::X },
    MarginalEquality { copy: CopyVar::Y1, partner: OrigVar::Z },
    MarginalEquality { copy: CopyVar::X1, partner: OrigVar::Y },
    MarginalEquality { copy: CopyVar::Z2, partner: OrigVar::Y },
    MarginalEquality { copy: CopyVar::Y2, partner: OrigVar::X },
    MarginalEquality { copy: CopyVar::X2, partner: OrigVar::Z },
];

/// Copies that share a source in the inflated network, with the original
/// pair whose distribution they reproduce.
pub const SOURCE_PAIRS: [(CopyVar, CopyVar); 3] = [
    (CopyVar::X1, CopyVar::Y2),
    (CopyVar::X2, CopyVar::Z1),
    (CopyVar::Y1, CopyVar::Z2),
];

/// `copy = value` forces `target = forced`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Implication {
    pub copy: CopyVar,
    pub value: usize,
    pub target: OrigVar,
    pub forced: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Certificate {
    /// Copy values, each of positive marginal probability.
    pub assignment: Vec<(CopyVar, usize)>,
    /// The event on the original variables forced by the assignment.
    pub forced: Vec<(OrigVar, usize)>,
    /// Implications used, in assignment order.
    pub implications: Vec<Implication>,
    /// Probability of `forced` under the matching marginal of `P`; zero.
    pub event_probability: f64,
}

impl Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "assignment": self.assignment.iter().map(|(c, v)| json!({"copy": c, "value": v})).collect::<Vec<_>>(),
            "forced": self.forced.iter().map(|(o, v)| json!({"variable": o, "value": v})).collect::<Vec<_>>(),
            "marginal": self.forced.iter().map(|(o, _)| o.to_string()).collect::<Vec<_>>(),
            "event_probability": self.event_probability,
            "implications": self.implications,
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InflationVerdict {
    Certificate(Certificate),
    Inconclusive,
}

impl InflationVerdict {
    pub fn certificate(&self) -> Option<&Certificate> {
        match self {
            InflationVerdict::Certificate(c) => Some(c),
            InflationVerdict::Inconclusive => None,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            InflationVerdict::Certificate(c) => json!({"verdict": "incompatible", "certificate": c.to_json()}),
            InflationVerdict::Inconclusive => json!({"verdict": "inconclusive"}),
        }
    }
}

fn expect_binary_tripartite(p: &JointDistribution) -> Result<()> {
    if p.num_vars() != 3 {
        return Err(Error::Arity {
            expected: 3,
            found: p.num_vars(),
        });
    }
    if p.cards().iter().any(|&c| c != 2) {
        return Err(Error::NotApplicable(format!(
            "inflation certificates need binary variables, got cardinalities {:?}",
            p.cards()
        )));
    }
    Ok(())
}

fn pair_table(p: &JointDistribution, a: OrigVar, b: OrigVar) -> [[f64; 2]; 2] {
    let (_, t) = p.marginal_by_index(&[a.index(), b.index()]);
    [[t[0], t[1]], [t[2], t[3]]]
}

/// Implications from every marginal equality, in constraint order then value order.
pub fn extract_implications(p: &JointDistribution) -> Result<Vec<Implication>> {
    expect_binary_tripartite(p)?;
    let mut out = Vec::new();
    for eq in MARGINAL_EQUALITIES {
        let t = pair_table(p, eq.copy.original(), eq.partner);
        for v in 0..2 {
            let support: Vec<usize> = (0..2).filter(|&w| t[v][w] > SUPPORT_EPS).collect();
            if let [w] = support[..] {
                out.push(Implication {
                    copy: eq.copy,
                    value: v,
                    target: eq.partner,
                    forced: w,
                });
            }
        }
    }
    Ok(out)
}

/// How the positivity of a joint copy assignment is judged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Positivity {
    /// All six copies treated as mutually independent.
    Independent,
    /// Copies independent across [`SOURCE_PAIRS`], each pair jointly
    /// distributed as its original pair.
    Paired,
}

/// Enumerates all `3^6` partial assignments (unset < 0 < 1, `X1` most
/// significant) and returns the first certificate, treating the six copies as
/// mutually independent so that an assignment is possible as soon as every
/// copy value has positive marginal probability.
pub fn certify_triangle_incompatibility(p: &JointDistribution) -> Result<InflationVerdict> {
    certify(p, Positivity::Independent)
}

/// As [`certify_triangle_incompatibility`], but an assignment counts as
/// possible only if each source-sharing copy pair in [`SOURCE_PAIRS`] takes
/// its values with positive probability under the original pair marginal.
/// Copies sharing a source are correlated, so this variant never relies on
/// independence between them.
pub fn certify_triangle_incompatibility_paired(p: &JointDistribution) -> Result<InflationVerdict> {
    certify(p, Positivity::Paired)
}

fn certify(p: &JointDistribution, mode: Positivity) -> Result<InflationVerdict> {
    let implications = extract_implications(p)?;
    let singles: Vec<[f64; 2]> = (0..3)
        .map(|i| {
            let (_, t) = p.marginal_by_index(&[i]);
            [t[0], t[1]]
        })
        .collect();
    for code in 0..3usize.pow(6) {
        // digit 0 = unset, 1 = value 0, 2 = value 1; X1 is the leading digit
        let mut assign: [Option<usize>; 6] = [None; 6];
        let mut rest = code;
        for k in (0..6).rev() {
            assign[k] = match rest % 3 {
                0 => None,
                d => Some(d - 1),
            };
            rest /= 3;
        }
        if assign.iter().all(Option::is_none) {
            continue;
        }
        if !possible(p, &assign, &singles, mode) {
            continue;
        }
        if let Some(cert) = forced_contradiction(p, &assign, &implications) {
            return Ok(InflationVerdict::Certificate(cert));
        }
    }
    Ok(InflationVerdict::Inconclusive)
}

fn possible(p: &JointDistribution, assign: &[Option<usize>; 6], singles: &[[f64; 2]], mode: Positivity) -> bool {
    match mode {
        Positivity::Independent => CopyVar::ALL.iter().zip(assign).all(|(c, v)| match v {
            Some(v) => singles[c.original().index()][*v] > SUPPORT_EPS,
            None => true,
        }),
        Positivity::Paired => SOURCE_PAIRS.iter().all(|&(a, b)| {
            let t = pair_table(p, a.original(), b.original());
            let va = assign[a as usize];
            let vb = assign[b as usize];
            let mass: f64 = (0..2)
                .filter(|&i| va.is_none_or(|v| v == i))
                .flat_map(|i| (0..2).map(move |j| (i, j)))
                .filter(|&(_, j)| vb.is_none_or(|v| v == j))
                .map(|(i, j)| t[i][j])
                .sum();
            mass > SUPPORT_EPS
        }),
    }
}

fn forced_contradiction(p: &JointDistribution, assign: &[Option<usize>; 6], implications: &[Implication]) -> Option<Certificate> {
    let mut forced: [Option<usize>; 3] = [None; 3];
    let mut used = Vec::new();
    for (k, c) in CopyVar::ALL.iter().enumerate() {
        let Some(v) = assign[k] else { continue };
        for imp in implications.iter().filter(|i| i.copy == *c && i.value == v) {
            let slot = &mut forced[imp.target.index()];
            match slot {
                Some(w) if *w != imp.forced => return None,
                _ => *slot = Some(imp.forced),
            }
            used.push(*imp);
        }
    }
    let vars: Vec<usize> = (0..3).filter(|&i| forced[i].is_some()).collect();
    if vars.is_empty() {
        return None;
    }
    let prob = event_probability(p, &forced);
    (prob <= SUPPORT_EPS).then(|| Certificate {
        assignment: CopyVar::ALL
            .iter()
            .zip(assign)
            .filter_map(|(c, v)| v.map(|v| (*c, v)))
            .collect(),
        forced: vars.iter().map(|&i| (OrigVar::ALL[i], forced[i].expect("set"))).collect(),
        implications: used,
        event_probability: prob,
    })
}

fn event_probability(p: &JointDistribution, forced: &[Option<usize>; 3]) -> f64 {
    p.iter()
        .filter(|(o, _)| (0..3).all(|i| forced[i].is_none_or(|v| o[i] == v)))
        .map(|(_, q)| q)
        .sum()
}

/// Recomputes every field of `cert` from `p`; the reason on failure.
pub fn validate_certificate(p: &JointDistribution, cert: &Certificate) -> Result<()> {
    let implications = extract_implications(p)?;
    let bad = |m: String| Err(Error::InvalidParameter(m));
    let mut assign: [Option<usize>; 6] = [None; 6];
    for &(c, v) in &cert.assignment {
        if v > 1 {
            return bad(format!("{c} = {v} is not binary"));
        }
        if assign[c as usize].replace(v).is_some() {
            return bad(format!("{c} assigned twice"));
        }
        let (_, t) = p.marginal_by_index(&[c.original().index()]);
        if t[v] <= SUPPORT_EPS {
            return bad(format!("{c} = {v} has zero marginal probability"));
        }
    }
    let Some(recomputed) = forced_contradiction(p, &assign, &implications) else {
        return bad("assignment does not force a zero-probability event".into());
    };
    if recomputed.forced != cert.forced {
        return bad(format!(
            "assignment forces {:?}, certificate states {:?}",
            recomputed.forced, cert.forced
        ));
    }
    if recomputed.event_probability > SUPPORT_EPS {
        return bad(format!("forced event has probability {}", recomputed.event_probability));
    }
    Ok(())
}
