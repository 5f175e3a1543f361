use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::{label, CaseLabel};
use crate::probtab::families::ghz_w_mixture;
use crate::probtab::JointDistribution;
use crate::shannon::{expect_tripartite, EntropyProfile};
use crate::{Error, Result};

/// Exactness guard for the strict inequalities: a slack at or below this
/// value counts as a violation.
pub const STRICT_GUARD: f64 = 1e-9;

const FINNER_EPS: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum NetworkVerdict {
    #[serde(rename = "compatible-not-excluded")]
    NotExcluded,
    #[serde(rename = "excluded")]
    Excluded,
}

/// Entropic and Finner-type witnesses for the two three-node networks: the
/// triangle with three bipartite sources and the single tripartite source.
/// Positive slack means the inequality holds.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WitnessReport {
    pub case: CaseLabel,
    pub tripartite: f64,
    /// `min H(V | others) - I(X;Y;Z)`.
    pub slack19: f64,
    /// `I(X;Y;Z) - [3/2 (H(X)+H(Y)+H(Z)) - H(XY) - H(XZ) - H(YZ)]`.
    pub slack20: f64,
    /// `4 H(XYZ) - H(XY) - H(XZ) - H(YZ) - I(X;Y;Z)`.
    pub slack22: f64,
    /// `I(X;Y;Z) - [4/3 (H(X)+H(Y)+H(Z)) - H(XY) - H(XZ) - H(YZ)]`.
    pub slack23: f64,
    /// `p(xyz) <= sqrt(p(x) p(y) p(z))` everywhere.
    pub finner_ok: bool,
    /// `p(xyz) <= (p(x) p(y) p(z))^(1/3)` everywhere.
    pub finner13_ok: bool,
    pub triangle: NetworkVerdict,
    pub triangle_reasons: Vec<String>,
    pub single_source: NetworkVerdict,
    pub single_source_reasons: Vec<String>,
}

impl WitnessReport {
    pub fn any_excluded(&self) -> bool {
        self.triangle == NetworkVerdict::Excluded || self.single_source == NetworkVerdict::Excluded
    }
}

struct Slacks {
    i3: f64,
    s19: f64,
    s20: f64,
    s22: f64,
    s23: f64,
}

fn slacks(h: &EntropyProfile) -> Slacks {
    let i3 = h.tripartite();
    let singles = h.h_x + h.h_y + h.h_z;
    let pairs = h.h_xy + h.h_xz + h.h_yz;
    let cond_min = (h.h_xyz - h.h_yz).min(h.h_xyz - h.h_xz).min(h.h_xyz - h.h_xy);
    Slacks {
        i3,
        s19: cond_min - i3,
        s20: i3 - (1.5 * singles - pairs),
        s22: 4.0 * h.h_xyz - pairs - i3,
        s23: i3 - (4.0 / 3.0 * singles - pairs),
    }
}

fn finner(p: &JointDistribution, exponent: f64) -> bool {
    let (_, px) = p.marginal_by_index(&[0]);
    let (_, py) = p.marginal_by_index(&[1]);
    let (_, pz) = p.marginal_by_index(&[2]);
    p.iter().all(|(o, q)| q <= (px[o[0]] * py[o[1]] * pz[o[2]]).powf(exponent) + FINNER_EPS)
}

/// Evaluates every witness. `tol` is the violation margin for the
/// non-strict inequalities; strict ones use [`STRICT_GUARD`].
pub fn evaluate_inequalities(p: &JointDistribution, tol: f64) -> Result<WitnessReport> {
    expect_tripartite(p)?;
    let h = EntropyProfile::of(p)?;
    let s = slacks(&h);
    let finner_ok = finner(p, 0.5);
    let finner13_ok = finner(p, 1.0 / 3.0);
    let mut triangle_reasons = Vec::new();
    if s.s19 < -tol {
        triangle_reasons.push(format!("slack19 = {} < 0", s.s19));
    }
    if s.s20 <= STRICT_GUARD {
        triangle_reasons.push(format!("slack20 = {} <= 0", s.s20));
    }
    if !finner_ok {
        triangle_reasons.push("finner bound violated".to_string());
    }
    let mut single_source_reasons = Vec::new();
    if s.s22 < -tol {
        single_source_reasons.push(format!("slack22 = {} < 0", s.s22));
    }
    if s.s23 <= STRICT_GUARD {
        single_source_reasons.push(format!("slack23 = {} <= 0", s.s23));
    }
    if !finner13_ok {
        single_source_reasons.push("cube-root finner bound violated".to_string());
    }
    let verdict = |r: &[String]| {
        if r.is_empty() {
            NetworkVerdict::NotExcluded
        } else {
            NetworkVerdict::Excluded
        }
    };
    Ok(WitnessReport {
        case: label(h.i_xy(), h.i_xy_given_z(), tol),
        tripartite: s.i3,
        slack19: s.s19,
        slack20: s.s20,
        slack22: s.s22,
        slack23: s.s23,
        finner_ok,
        finner13_ok,
        triangle: verdict(&triangle_reasons),
        triangle_reasons,
        single_source: verdict(&single_source_reasons),
        single_source_reasons,
    })
}

/// What [`scan_mixture_threshold`] looks for along the GHZ/W mixture.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanKind {
    /// Largest `p` with `I(X;Y;Z) <= 0`.
    InfoSign,
    /// Smallest `p` at which any entropic witness is violated.
    Witness,
}

impl FromStr for ScanKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "info_sign" | "info-sign" => Ok(ScanKind::InfoSign),
            "witness" => Ok(ScanKind::Witness),
            other => Err(Error::InvalidParameter(format!("unknown scan kind `{other}`"))),
        }
    }
}

impl fmt::Display for ScanKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ScanKind::InfoSign => "info_sign",
            ScanKind::Witness => "witness",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MixtureThreshold {
    pub kind: ScanKind,
    /// `None` when the grid shows no sign change.
    pub threshold: Option<f64>,
    /// For [`ScanKind::Witness`], the inequality violated first.
    pub binding: Option<String>,
    pub steps: usize,
    pub tol: f64,
}

/// Grid scan over `p in [0, 1]` with `steps` intervals, refined by bisection
/// to width `tol`.
pub fn scan_mixture_threshold(kind: ScanKind, steps: usize, tol: f64) -> Result<MixtureThreshold> {
    if steps < 100 {
        return Err(Error::InvalidParameter(format!("steps = {steps}; at least 100 required")));
    }
    if !(tol > 0.0 && tol < 0.1) {
        return Err(Error::InvalidParameter(format!("tol = {tol} outside (0, 0.1)")));
    }
    let at = |p: f64| -> Result<Slacks> { Ok(slacks(&EntropyProfile::of(&ghz_w_mixture(p)?)?)) };
    let grid: Vec<f64> = (0..=steps).map(|i| i as f64 / steps as f64).collect();
    match kind {
        ScanKind::InfoSign => {
            let ok = |p: f64| -> Result<bool> { Ok(at(p)?.i3 <= 0.0) };
            let mut last = None;
            for w in grid.windows(2).rev() {
                if ok(w[0])? && !ok(w[1])? {
                    last = Some((w[0], w[1]));
                    break;
                }
            }
            let threshold = match last {
                Some((lo, hi)) => Some(bisect(lo, hi, tol, &ok)?),
                None => None,
            };
            Ok(MixtureThreshold {
                kind,
                threshold,
                binding: None,
                steps,
                tol,
            })
        }
        ScanKind::Witness => {
            type Test = fn(&Slacks) -> bool;
            let tests: [(&str, Test); 4] = [
                ("slack19", |s| s.s19 < -STRICT_GUARD),
                ("slack20", |s| s.s20 <= STRICT_GUARD),
                ("slack22", |s| s.s22 < -STRICT_GUARD),
                ("slack23", |s| s.s23 <= STRICT_GUARD),
            ];
            let mut best: Option<(f64, &str)> = None;
            for (name, violated) in tests {
                let holds = |p: f64| -> Result<bool> { Ok(!violated(&at(p)?)) };
                let mut first = None;
                for w in grid.windows(2) {
                    if holds(w[0])? && !holds(w[1])? {
                        first = Some((w[0], w[1]));
                        break;
                    }
                }
                if let Some((lo, hi)) = first {
                    // smallest violating p: bisect on the last holding point, report the upper edge
                    let edge = bisect(lo, hi, tol, &holds)?;
                    let t = (edge + tol).min(hi);
                    if best.is_none_or(|(b, _)| t < b) {
                        best = Some((t, name));
                    }
                }
            }
            Ok(MixtureThreshold {
                kind,
                threshold: best.map(|b| b.0),
                binding: best.map(|b| b.1.to_string()),
                steps,
                tol,
            })
        }
    }
}

/// Given `ok(lo)` and `!ok(hi)`, narrows the bracket to width `tol` and
/// returns its lower end.
fn bisect(mut lo: f64, mut hi: f64, tol: f64, ok: &dyn Fn(f64) -> Result<bool>) -> Result<f64> {
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if ok(mid)? {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probtab::families;
    use crate::shannon::{binary_entropy, entropy};

    #[test]
    fn ghz_half_is_excluded_from_triangle() {
        let r = evaluate_inequalities(&families::ghz_type(0.5).unwrap(), 1e-9).unwrap();
        assert!((r.tripartite - 1.0).abs() < 1e-12);
        assert!((r.slack19 + 1.0).abs() < 1e-12);
        assert!(!r.finner_ok);
        assert_eq!(r.triangle, NetworkVerdict::Excluded);
    }

    #[test]
    fn w_third_is_not_excluded() {
        let r = evaluate_inequalities(&families::w_type(1.0 / 3.0, 1.0 / 3.0).unwrap(), 1e-9).unwrap();
        assert!(r.slack19 > 0.0 && r.slack20 > 0.0 && r.finner_ok);
        assert_eq!(r.triangle, NetworkVerdict::NotExcluded);
    }

    #[test]
    fn uniform_product_passes_everything() {
        let u = JointDistribution::uniform(&["X", "Y", "Z"], &[2, 2, 2]).unwrap();
        let r = evaluate_inequalities(&u, 1e-9).unwrap();
        assert!(r.tripartite.abs() < 1e-12);
        assert!(r.slack19 >= 0.0 && r.slack20 >= 0.0 && r.slack22 >= 0.0 && r.slack23 >= 0.0);
        assert!(r.finner_ok && r.finner13_ok);
        assert!(!r.any_excluded());
    }

    #[test]
    fn slacks_match_scratch_entropies() {
        let p = families::ghz_w_mixture(0.4).unwrap();
        let h = |s: &[&str]| entropy(&p, s).unwrap().value();
        let (hx, hy, hz) = (h(&["X"]), h(&["Y"]), h(&["Z"]));
        let (hxy, hxz, hyz, hxyz) = (h(&["X", "Y"]), h(&["X", "Z"]), h(&["Y", "Z"]), h(&["X", "Y", "Z"]));
        let i = hx + hy + hz - hxy - hxz - hyz + hxyz;
        let r = evaluate_inequalities(&p, 1e-9).unwrap();
        let m = (hxyz - hyz).min(hxyz - hxz).min(hxyz - hxy);
        assert!((r.slack19 - (m - i)).abs() < 1e-12);
        assert!((r.slack20 - (i - 1.5 * (hx + hy + hz) + hxy + hxz + hyz)).abs() < 1e-12);
        assert!((r.slack22 - (4.0 * hxyz - hxy - hxz - hyz - i)).abs() < 1e-12);
        assert!((r.slack23 - (i - 4.0 / 3.0 * (hx + hy + hz) + hxy + hxz + hyz)).abs() < 1e-12);
    }

    #[test]
    fn ghz_family_violates_the_lower_bound() {
        for k in 1..10 {
            let a = k as f64 / 10.0;
            let r = evaluate_inequalities(&families::ghz_type(a).unwrap(), 1e-9).unwrap();
            assert!((r.tripartite - binary_entropy(a)).abs() < 1e-12);
            assert!(r.slack20 <= 0.0);
            assert!(!r.finner_ok);
        }
    }

    #[test]
    fn mixture_scans() {
        let info = scan_mixture_threshold(ScanKind::InfoSign, 200, 1e-5).unwrap();
        let t = info.threshold.unwrap();
        // oracle: direct sign checks on either side of the reported point
        let i3 = |p: f64| EntropyProfile::of(&families::ghz_w_mixture(p).unwrap()).unwrap().tripartite();
        assert!(i3(t) <= 0.0 && i3(t + 2e-5) > 0.0);
        assert!((t - 0.7457).abs() < 1e-3);
        let w = scan_mixture_threshold(ScanKind::Witness, 200, 1e-5).unwrap();
        assert_eq!(w.binding.as_deref(), Some("slack19"));
        assert!((w.threshold.unwrap() - 0.8353).abs() < 1e-3);
        assert!(i3(1.0) > 0.0);
        assert!(scan_mixture_threshold(ScanKind::InfoSign, 10, 1e-4).is_err());
    }
}
