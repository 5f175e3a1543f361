//! End-to-end reproduction checks, one per numbered criterion. Each check
//! carries its own reference computation (closed forms, brute-force sums) so
//! that the library code under test is compared against something independent.

use std::collections::HashMap;
use std::f64::consts::FRAC_PI_3;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::inflation::{certify_triangle_incompatibility, certify_triangle_incompatibility_paired, InflationVerdict};
use crate::optimize::{extremize_under_local_channels, i_min_network, Direction, NetworkFamily, OptimizerConfig};
use crate::probtab::families::{self, W4Kind};
use crate::probtab::{random, JointDistribution};
use crate::quantum::{born_distribution, chain_realization, random_chain_spec, star_network_distribution, CanonicalFamily, PureState, StarMode};
use crate::shannon::{multivariate_information, tripartite_of, EntropyProfile};
use crate::witness::{evaluate_inequalities, scan_mixture_threshold, ScanKind};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "criterion {:>2} {verdict}  {}: {}", self.id, self.title, self.detail)
    }
}

pub const CRITERIA: [(u8, &str); 13] = [
    (1, "xor triple"),
    (2, "Markov chains are non-negative"),
    (3, "W-type closed form"),
    (4, "GHZ-type excluded from the triangle"),
    (5, "GHZ/W mixture thresholds"),
    (6, "W-type: entropic witnesses silent, inflation certifies"),
    (7, "inflation over four-point families and classical triangles"),
    (8, "chain rigidity in both directions"),
    (9, "local-channel extrema of W-type"),
    (10, "minimal tripartite information of quantum networks"),
    (11, "star networks"),
    (12, "eight-point distribution"),
    (13, "four-point closed forms"),
];

/// Runs one criterion; errors surface as a failing report.
pub fn run_criterion(id: u8) -> CriterionReport {
    let title = CRITERIA
        .iter()
        .find(|(i, _)| *i == id)
        .map(|(_, t)| *t)
        .unwrap_or("unknown criterion");
    let outcome = match id {
        1 => c1(),
        2 => c2(),
        3 => c3(),
        4 => c4(),
        5 => c5(),
        6 => c6(),
        7 => c7(),
        8 => c8(),
        9 => c9(),
        10 => c10(),
        11 => c11(),
        12 => c12(),
        13 => c13(),
        _ => Err(Error::InvalidParameter(format!("no criterion {id}"))),
    };
    let (passed, detail) = outcome.unwrap_or_else(|e| (false, format!("error: {e}")));
    CriterionReport {
        id,
        title,
        passed,
        detail,
    }
}

pub fn run_all() -> Vec<CriterionReport> {
    CRITERIA.iter().map(|(id, _)| run_criterion(*id)).collect()
}

type Check = Result<(bool, String)>;

/// `-p log2 p` with `0 log 0 = 0`.
fn h(p: f64) -> f64 {
    if p > 0.0 {
        -p * p.log2()
    } else {
        0.0
    }
}

/// Brute-force `I(A;B|C)` from the support, with variable index groups.
fn oracle_cmi(p: &JointDistribution, a: &[usize], b: &[usize], c: &[usize]) -> f64 {
    let key = |o: &[usize], vars: &[&[usize]]| -> Vec<usize> { vars.iter().flat_map(|v| v.iter().map(|&i| o[i])).collect() };
    let mut pc: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut pac: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut pbc: HashMap<Vec<usize>, f64> = HashMap::new();
    let mut pabc: HashMap<Vec<usize>, f64> = HashMap::new();
    for (o, q) in p.support() {
        *pc.entry(key(&o, &[c])).or_default() += q;
        *pac.entry(key(&o, &[a, c])).or_default() += q;
        *pbc.entry(key(&o, &[b, c])).or_default() += q;
        *pabc.entry(key(&o, &[a, b, c])).or_default() += q;
    }
    pabc.iter()
        .map(|(k, &q)| {
            let o = {
                // rebuild a full outcome to reuse `key`
                let mut full = vec![0; p.num_vars()];
                for (slot, &i) in a.iter().chain(b).chain(c).enumerate() {
                    full[i] = k[slot];
                }
                full
            };
            q * (q * pc[&key(&o, &[c])] / (pac[&key(&o, &[a, c])] * pbc[&key(&o, &[b, c])])).log2()
        })
        .sum()
}

fn c1() -> Check {
    let p = families::fig1();
    let e = EntropyProfile::of(&p)?;
    let (i, ic, i3) = (e.i_xy(), e.i_xy_given_z(), e.tripartite());
    let ok = i.abs() <= 1e-12 && (ic - 1.0).abs() <= 1e-12 && (i3 + 1.0).abs() <= 1e-12;
    let oracle = oracle_cmi(&p, &[0], &[1], &[]) - oracle_cmi(&p, &[0], &[1], &[2]);
    Ok((
        ok && (oracle + 1.0).abs() <= 1e-12,
        format!("I(X;Y) = {i:.3e}, I(X;Y|Z) = {ic:.15}, I(X;Y;Z) = {i3:.15}"),
    ))
}

fn c2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = f64::INFINITY;
    for _ in 0..1000 {
        let p = random::markov_chain(&mut rng, 4)?;
        worst = worst.min(tripartite_of(&p)?);
    }
    Ok((worst >= -1e-9, format!("min I(X;Y;Z) over 1000 chains = {worst:.3e}")))
}

fn w_closed_form(a: f64, b: f64) -> f64 {
    let c = 1.0 - a - b;
    h(1.0 - a) + h(1.0 - b) + h(1.0 - c) - h(a) - h(b) - h(c)
}

fn interior_grid() -> Vec<(f64, f64)> {
    let mut out = Vec::new();
    for i in 1..20 {
        for j in 1..20 {
            if i + j < 20 {
                out.push((i as f64 * 0.05, j as f64 * 0.05));
            }
        }
    }
    out
}

fn c3() -> Check {
    let mut worst_gap = 0.0f64;
    let mut max_value = f64::NEG_INFINITY;
    let grid = interior_grid();
    for &(a, b) in &grid {
        let v = tripartite_of(&families::w_type(a, b)?)?;
        worst_gap = worst_gap.max((v - w_closed_form(a, b)).abs());
        max_value = max_value.max(v);
    }
    Ok((
        worst_gap <= 1e-12 && max_value < 0.0,
        format!("{} grid points, max |I - closed form| = {worst_gap:.2e}, max I = {max_value:.4}", grid.len()),
    ))
}

fn c4() -> Check {
    let mut ok = true;
    let mut worst = 0.0f64;
    for k in 1..10 {
        let a = k as f64 / 10.0;
        let p = families::ghz_type(a)?;
        let r = evaluate_inequalities(&p, 1e-9)?;
        let gap = (r.tripartite - (h(a) + h(1.0 - a))).abs();
        worst = worst.max(gap);
        ok &= gap <= 1e-12 && r.slack20 <= 0.0 && !r.finner_ok;
    }
    Ok((ok, format!("a = 0.1..0.9: max |I - h(a)| = {worst:.2e}; slack20 <= 0 and Finner violated at every a")))
}

fn c5() -> Check {
    let sign = scan_mixture_threshold(ScanKind::InfoSign, 1000, 1e-4)?;
    let wit = scan_mixture_threshold(ScanKind::Witness, 1000, 1e-4)?;
    let ts = sign.threshold.unwrap_or(f64::NAN);
    let tw = wit.threshold.unwrap_or(f64::NAN);
    let ok_sign = (ts - 0.814).abs() <= 0.005;
    let ok_wit = (tw - 0.836).abs() <= 0.005;
    Ok((
        ok_sign && ok_wit,
        format!(
            "info_sign = {ts:.4} (target 0.814 +- 0.005: {}), witness = {tw:.4} via {} (target 0.836 +- 0.005: {})",
            pass(ok_sign),
            wit.binding.as_deref().unwrap_or("-"),
            pass(ok_wit)
        ),
    ))
}

fn pass(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn c6() -> Check {
    let grid = interior_grid();
    let mut silent = 0;
    let mut certified = 0;
    for &(a, b) in &grid {
        let p = families::w_type(a, b)?;
        let r = evaluate_inequalities(&p, 1e-9)?;
        if r.slack19 >= -1e-9 && r.slack20 >= -1e-9 && r.finner_ok {
            silent += 1;
        }
        if certify_triangle_incompatibility(&p)?.certificate().is_some() {
            certified += 1;
        }
    }
    let n = grid.len();
    Ok((
        silent == n && certified == n,
        format!("{n} grid points: witnesses silent at {silent}, certificate at {certified}"),
    ))
}

const PERMUTATIONS: [[&str; 3]; 6] = [
    ["X", "Y", "Z"],
    ["X", "Z", "Y"],
    ["Y", "X", "Z"],
    ["Y", "Z", "X"],
    ["Z", "X", "Y"],
    ["Z", "Y", "X"],
];

fn c7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut certified = 0;
    let mut total = 0;
    for kind in W4Kind::ALL {
        for perm in PERMUTATIONS {
            for _ in 0..100 {
                let w = random::dirichlet(&mut rng, 4);
                let p = families::w4(kind, [w[0], w[1], w[2], w[3]])?
                    .permute(&perm)?
                    .rename(&["X", "Y", "Z"])?;
                total += 1;
                if certify_triangle_incompatibility(&p)?.certificate().is_some() {
                    certified += 1;
                }
            }
        }
    }
    let mut false_cert = 0;
    let mut false_cert_paired = 0;
    for _ in 0..500 {
        let p = random::classical_triangle(&mut rng, 3, 2)?;
        if certify_triangle_incompatibility(&p)? != InflationVerdict::Inconclusive {
            false_cert += 1;
        }
        if certify_triangle_incompatibility_paired(&p)? != InflationVerdict::Inconclusive {
            false_cert_paired += 1;
        }
    }
    Ok((
        certified == total && false_cert == 0,
        format!(
            "four-point families: {certified}/{total} certified; classical triangles: {false_cert}/500 certified \
             (source-paired certifier: {false_cert_paired}/500)"
        ),
    ))
}

fn c8() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst_i = 0.0f64;
    for _ in 0..200 {
        let p = born_distribution(&random_chain_spec(&mut rng))?;
        worst_i = worst_i.max(oracle_cmi(&p, &[0], &[1], &[]));
    }
    let mut worst_rt = 0.0f64;
    for _ in 0..50 {
        let p = random::case_one(&mut rng, 4)?;
        let q = born_distribution(&chain_realization(&p, 1e-9)?)?;
        worst_rt = worst_rt.max(q.linf_distance(&p)?);
    }
    Ok((
        worst_i <= 1e-9 && worst_rt <= 1e-9,
        format!("max I(X;Y) over 200 quantum chains = {worst_i:.2e}; max round-trip error over 50 = {worst_rt:.2e}"),
    ))
}

fn sample_std(v: &[f64]) -> f64 {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
}

fn c9() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let cfg = OptimizerConfig::default();
    let mut maxima = Vec::new();
    let mut worst_min_gap = 0.0f64;
    for _ in 0..20 {
        let w = random::dirichlet(&mut rng, 3);
        let p = families::w_type(w[0], w[1])?;
        maxima.push(extremize_under_local_channels(&p, Direction::Max, &cfg)?.value.value());
        let lo = extremize_under_local_channels(&p, Direction::Min, &cfg)?.value.value();
        worst_min_gap = worst_min_gap.max((lo - w_closed_form(w[0], w[1])).abs());
    }
    let std = sample_std(&maxima);
    let (lo, hi) = maxima.iter().fold((f64::INFINITY, f64::NEG_INFINITY), |(l, u), &x| (l.min(x), u.max(x)));
    let ok_max = maxima.iter().all(|m| (m - 0.5307).abs() <= 0.01) && std <= 1e-2;
    let ok_min = worst_min_gap <= 1e-3;
    Ok((
        ok_max && ok_min,
        format!(
            "I1 in [{lo:.4}, {hi:.4}], std {std:.2e} (target 0.5307 +- 0.01: {}); max |I2 - I_w| = {worst_min_gap:.2e} ({})",
            pass(ok_max),
            pass(ok_min)
        ),
    ))
}

fn c10() -> Check {
    let cfg = OptimizerConfig::default();
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut max_all = f64::NEG_INFINITY;
    let mut worst_product = 0.0f64;
    for _ in 0..3 {
        let s = PureState::random(&mut rng, vec![2]).tensor(&PureState::random(&mut rng, vec![2, 2]));
        let spec = crate::quantum::tripartite_spec(&s, std::array::from_fn(|_| crate::quantum::MeasurementSet::computational(vec![2])))?;
        let v = i_min_network(&NetworkFamily::Custom(spec), &cfg)?.value.value();
        worst_product = worst_product.max(v.abs());
        max_all = max_all.max(v);
    }
    let mut worst_e4 = f64::NEG_INFINITY;
    for k in 1..10 {
        let l1 = (k as f64 / 10.0).sqrt();
        let l2 = (1.0 - k as f64 / 10.0).sqrt();
        let fam = NetworkFamily::Canonical {
            family: CanonicalFamily::E4,
            params: vec![l1, l2],
        };
        let v = i_min_network(&fam, &cfg)?.value.value();
        worst_e4 = worst_e4.max(v);
        max_all = max_all.max(v);
    }
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let others = [
        NetworkFamily::Canonical {
            family: CanonicalFamily::E5,
            params: vec![0.6, 0.8, 0.48, 0.6, 0.64],
        },
        NetworkFamily::Canonical {
            family: CanonicalFamily::E6,
            params: vec![0.6, 0.8, r, r, 0.6, 0.0, 0.8],
        },
        NetworkFamily::Chain { seed: 1 },
        NetworkFamily::Chain { seed: 2 },
    ];
    for fam in &others {
        max_all = max_all.max(i_min_network(fam, &cfg)?.value.value());
    }
    Ok((
        max_all <= 1e-9 && worst_product <= 1e-9 && worst_e4 < -1e-3,
        format!(
            "max I_min over all specs = {max_all:.3e}; product states |I_min| <= {worst_product:.2e}; \
             E4 worst I_min = {worst_e4:.4}"
        ),
    ))
}

fn c11() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let blocks: [&[&str]; 3] = [&["X1"], &["X2"], &["X3"]];
    let mut ok = true;
    let mut lines = Vec::new();
    for _ in 0..5 {
        let t = rng.random_range(0.05..=FRAC_PI_3);
        let t2 = rng.random_range(0.05..=FRAC_PI_3);
        let thetas = [t, t2, t];
        let f = star_network_distribution(thetas, StarMode::Fourier)?;
        let f_un = multivariate_information(&f, &blocks, &[])?.value();
        let f_co = multivariate_information(&f, &blocks, &["Y"])?.value();
        let g = star_network_distribution(thetas, StarMode::GhzSwap)?;
        let g_un = multivariate_information(&g, &blocks, &[])?.value();
        let g_co = multivariate_information(&g, &blocks, &["Y"])?.value();
        ok &= f_un.abs() <= 1e-9 && f_co < 0.0 && g_un.abs() <= 1e-9 && g_co > 0.0;
        lines.push(format!("({t:.3},{t2:.3}): fourier {f_co:.4}, ghz_swap {g_co:.4}"));
    }
    Ok((ok, format!("conditional informations {}", lines.join("; "))))
}

fn c12() -> Check {
    let p = families::eq14();
    let e = EntropyProfile::of(&p)?;
    let oracle_i = oracle_cmi(&p, &[0], &[1], &[]);
    let oracle_ic = oracle_cmi(&p, &[0], &[1], &[2]);
    let ok = (e.i_xy() - 1.0).abs() <= 1e-12
        && (oracle_i - 1.0).abs() <= 1e-12
        && (e.i_xy_given_z() - oracle_ic).abs() <= 1e-12;
    Ok((
        ok,
        format!(
            "I(X;Y) = {:.12}, I(X;Y|Z) = {:.12} (brute force {oracle_ic:.12}; stated value 2 differs)",
            e.i_xy(),
            e.i_xy_given_z()
        ),
    ))
}

/// Four-point family `a[001] + b[010] + c[100] + d[011]`.
fn ws_closed_form(a: f64, b: f64, c: f64) -> f64 {
    h(1.0 - c) + h(a + c) + h(b + c) - h(a) - h(b) - h(c)
}

/// Four-point family `a[010] + b[011] + c[100] + d[101]`.
fn wd_closed_form(a: f64, b: f64, c: f64, d: f64) -> f64 {
    let hx = h(a + b) + h(c + d);
    let hz = h(a + c) + h(b + d);
    hx + hz - (h(a) + h(b) + h(c) + h(d))
}

fn c13() -> Check {
    let mut gap = 0.0f64;
    let steps = 10;
    for i in 0..=steps {
        for j in 0..=steps - i {
            for k in 0..=steps - i - j {
                let (a, b, c) = (i as f64 / 10.0, j as f64 / 10.0, k as f64 / 10.0);
                let d = (1.0 - a - b - c).max(0.0);
                let pa = families::w4(W4Kind::EE0a, [a, b, c, d])?;
                gap = gap.max((tripartite_of(&pa)? - ws_closed_form(a, b, c)).abs());
                let pd = families::w4(W4Kind::EE0d, [a, b, c, d])?;
                gap = gap.max((tripartite_of(&pd)? - wd_closed_form(a, b, c, d)).abs());
            }
        }
    }
    // a = c and b = c subfamilies on a 0.05 grid
    let mut worst = f64::NEG_INFINITY;
    let mut worst_at = (0.0, 0.0);
    for i in 1..10 {
        for j in 1..20 {
            let (s, t) = (i as f64 * 0.05, j as f64 * 0.05);
            if 2.0 * s + t > 1.0 + 1e-12 {
                continue;
            }
            for v in [ws_closed_form(s, t, s), ws_closed_form(t, s, s)] {
                if v > worst {
                    worst = v;
                    worst_at = (s, t);
                }
            }
        }
    }
    let ok_forms = gap <= 1e-12;
    let ok_sign = worst <= 0.0;
    Ok((
        ok_forms && ok_sign,
        format!(
            "max |closed form - direct| = {gap:.2e} ({}); max I_ws on a=c / b=c subfamilies = {worst:.4} at \
             (shared, other) = ({:.2}, {:.2}) ({})",
            pass(ok_forms),
            worst_at.0,
            worst_at.1,
            pass(ok_sign)
        ),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn oracle_agrees_with_library() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..10 {
            let p = random::random_distribution(&mut rng, &["X", "Y", "Z"], &[2, 3, 2]).unwrap();
            let e = EntropyProfile::of(&p).unwrap();
            assert!((oracle_cmi(&p, &[0], &[1], &[2]) - e.i_xy_given_z()).abs() < 1e-12);
            assert!((oracle_cmi(&p, &[0], &[1], &[]) - e.i_xy()).abs() < 1e-12);
        }
    }

    #[test]
    fn report_lines() {
        let r = run_criterion(1);
        assert!(r.passed);
        assert!(r.to_string().starts_with("criterion  1 PASS"));
        assert!(!run_criterion(99).passed);
    }
}
