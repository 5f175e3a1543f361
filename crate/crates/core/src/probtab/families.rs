//! Named distribution families. Tripartite families use the labels `X`, `Y`, `Z`.

use std::fmt;
use std::str::FromStr;

use super::{JointDistribution, DIST_TOL};
use crate::{Error, Result};

const XYZ: [&str; 3] = ["X", "Y", "Z"];

/// `1/4` on each of `000, 011, 101, 110` (`Z = X xor Y`).
pub fn fig1() -> JointDistribution {
    JointDistribution::from_support(
        &XYZ,
        &[2, 2, 2],
        &[(&[0, 0, 0], 0.25), (&[0, 1, 1], 0.25), (&[1, 0, 1], 0.25), (&[1, 1, 0], 0.25)],
    )
    .expect("valid table")
}

/// Four-variable lift of [`fig1`] over `(X, Y, Z1, Z2)` with `Z1 = X`, `Z2 = Y`.
pub fn eq11() -> JointDistribution {
    JointDistribution::from_support(
        &["X", "Y", "Z1", "Z2"],
        &[2, 2, 2, 2],
        &[
            (&[0, 0, 0, 0], 0.25),
            (&[0, 1, 0, 1], 0.25),
            (&[1, 0, 1, 0], 0.25),
            (&[1, 1, 1, 1], 0.25),
        ],
    )
    .expect("valid table")
}

/// [`eq11`] with `(Z1, Z2)` merged into a 4-valued `Z = 2 z1 + z2`, over `(X2, Y2, Z)`.
pub fn xor_chain_factor() -> JointDistribution {
    eq11()
        .relabel(&["Z1", "Z2"], "Z", 4, &[0, 1, 2, 3])
        .and_then(|p| p.rename(&["X2", "Y2", "Z"]))
        .expect("valid relabel")
}

/// Eight equiprobable points over 4-valued `X, Y, Z`: a perfectly correlated
/// high bit times the chain factor on the low bits.
pub fn eq14() -> JointDistribution {
    let support: [[usize; 3]; 8] = [
        [0, 0, 0],
        [0, 1, 1],
        [1, 0, 2],
        [1, 1, 3],
        [2, 2, 0],
        [2, 3, 1],
        [3, 2, 2],
        [3, 3, 3],
    ];
    let entries: Vec<(&[usize], f64)> = support.iter().map(|o| (&o[..], 0.125)).collect();
    JointDistribution::from_support(&XYZ, &[4, 4, 4], &entries).expect("valid table")
}

/// `a[000] + (1-a)[111]`.
pub fn ghz_type(a: f64) -> Result<JointDistribution> {
    check_unit("a", a)?;
    JointDistribution::from_support(&XYZ, &[2, 2, 2], &[(&[0, 0, 0], a), (&[1, 1, 1], 1.0 - a)])
}

/// `a[001] + b[010] + (1-a-b)[100]`.
pub fn w_type(a: f64, b: f64) -> Result<JointDistribution> {
    check_unit("a", a)?;
    check_unit("b", b)?;
    if a + b > 1.0 + DIST_TOL {
        return Err(Error::InvalidParameter(format!("a + b = {} exceeds 1", a + b)));
    }
    let c = (1.0 - a - b).max(0.0);
    JointDistribution::from_support(
        &XYZ,
        &[2, 2, 2],
        &[(&[0, 0, 1], a), (&[0, 1, 0], b), (&[1, 0, 0], c)],
    )
}

/// `p (1/2[000] + 1/2[111]) + (1-p) (1/3[001] + 1/3[010] + 1/3[100])`.
pub fn ghz_w_mixture(p: f64) -> Result<JointDistribution> {
    check_unit("p", p)?;
    let g = p / 2.0;
    let w = (1.0 - p) / 3.0;
    JointDistribution::from_support(
        &XYZ,
        &[2, 2, 2],
        &[
            (&[0, 0, 0], g),
            (&[1, 1, 1], g),
            (&[0, 0, 1], w),
            (&[0, 1, 0], w),
            (&[1, 0, 0], w),
        ],
    )
}

/// The six four-point W-type families.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum W4Kind {
    EE0a,
    EE0b,
    EE0c,
    EE0d,
    EE0e,
    EE0f,
}

impl W4Kind {
    pub const ALL: [W4Kind; 6] = [
        W4Kind::EE0a,
        W4Kind::EE0b,
        W4Kind::EE0c,
        W4Kind::EE0d,
        W4Kind::EE0e,
        W4Kind::EE0f,
    ];

    /// Outcomes weighted by `a, b, c, d` respectively.
    pub fn support(self) -> [[usize; 3]; 4] {
        match self {
            W4Kind::EE0a => [[0, 0, 1], [0, 1, 0], [1, 0, 0], [0, 1, 1]],
            W4Kind::EE0b => [[0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 0, 1]],
            W4Kind::EE0c => [[0, 0, 1], [0, 1, 0], [1, 0, 0], [1, 1, 0]],
            W4Kind::EE0d => [[0, 1, 0], [0, 1, 1], [1, 0, 0], [1, 0, 1]],
            W4Kind::EE0e => [[0, 0, 1], [0, 1, 0], [1, 0, 1], [1, 1, 0]],
            W4Kind::EE0f => [[0, 0, 1], [0, 1, 1], [1, 0, 0], [1, 1, 0]],
        }
    }
}

impl fmt::Display for W4Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for W4Kind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        W4Kind::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownFamily(format!("w4 kind `{s}`")))
    }
}

/// `a, b, c, d` placed on the four support points of `kind`.
pub fn w4(kind: W4Kind, weights: [f64; 4]) -> Result<JointDistribution> {
    check_simplex("w4 weights", &weights)?;
    let support = kind.support();
    let entries: Vec<(&[usize], f64)> = support.iter().zip(weights).map(|(o, w)| (&o[..], w)).collect();
    JointDistribution::from_support(&XYZ, &[2, 2, 2], &entries)
}

/// `sum_ij p_i q_j [x_i y_j z_ij]` with `X` over `|p|` values, `Y` over `|q|`
/// values and `Z` over `|p| |q|` values, `z_ij = i |q| + j`.
pub fn star_example(p: &[f64], q: &[f64]) -> Result<JointDistribution> {
    check_simplex("p", p)?;
    check_simplex("q", q)?;
    let (np, nq) = (p.len(), q.len());
    let mut probs = vec![0.0; np * nq * np * nq];
    for i in 0..np {
        for j in 0..nq {
            let z = i * nq + j;
            probs[(i * nq + j) * np * nq + z] = p[i] * q[j];
        }
    }
    JointDistribution::new(names(&XYZ), vec![np, nq, np * nq], probs)
}

/// `sum_ijk p_i q_j r_k [x_ij y_jk z_ki]` with `x_ij = i |q| + j`,
/// `y_jk = j |r| + k` and `z_ki = k |p| + i`.
pub fn triangle_example(p: &[f64], q: &[f64], r: &[f64]) -> Result<JointDistribution> {
    check_simplex("p", p)?;
    check_simplex("q", q)?;
    check_simplex("r", r)?;
    let (np, nq, nr) = (p.len(), q.len(), r.len());
    let cards = [np * nq, nq * nr, nr * np];
    let mut probs = vec![0.0; cards.iter().product()];
    for i in 0..np {
        for j in 0..nq {
            for k in 0..nr {
                let (x, y, z) = (i * nq + j, j * nr + k, k * np + i);
                probs[(x * cards[1] + y) * cards[2] + z] += p[i] * q[j] * r[k];
            }
        }
    }
    JointDistribution::new(names(&XYZ), cards.to_vec(), probs)
}

/// Names accepted by [`generate`].
pub const FAMILIES: [&str; 9] = [
    "fig1",
    "eq11",
    "eq14",
    "ghz_type",
    "w_type",
    "ghz_w_mixture",
    "w4",
    "star_example",
    "triangle_example",
];

/// Dispatches a family by name. Parameter conventions:
/// `ghz_type [a]`, `w_type [a, b]`, `ghz_w_mixture [p]`, `w4 [a, b, c, d]`
/// (with `kind`), `star_example` splits `params` into two equal halves `p, q`,
/// `triangle_example` into three equal thirds. Missing parameters default to
/// uniform binary choices.
pub fn generate(family: &str, params: &[f64], kind: Option<&str>) -> Result<JointDistribution> {
    let need = |n: usize| -> Result<()> {
        if params.len() == n {
            Ok(())
        } else {
            Err(Error::InvalidParameter(format!(
                "{family} expects {n} parameters, got {}",
                params.len()
            )))
        }
    };
    match family {
        "fig1" => Ok(fig1()),
        "eq11" => Ok(eq11()),
        "eq14" => Ok(eq14()),
        "ghz_type" => {
            if params.is_empty() {
                return ghz_type(0.5);
            }
            need(1)?;
            ghz_type(params[0])
        }
        "w_type" => {
            if params.is_empty() {
                return w_type(1.0 / 3.0, 1.0 / 3.0);
            }
            need(2)?;
            w_type(params[0], params[1])
        }
        "ghz_w_mixture" => {
            need(1)?;
            ghz_w_mixture(params[0])
        }
        "w4" => {
            let kind: W4Kind = kind.unwrap_or("EE0a").parse()?;
            if params.is_empty() {
                return w4(kind, [0.25; 4]);
            }
            need(4)?;
            w4(kind, [params[0], params[1], params[2], params[3]])
        }
        "star_example" => {
            let halves = split_even(params, 2, family)?;
            star_example(&halves[0], &halves[1])
        }
        "triangle_example" => {
            let thirds = split_even(params, 3, family)?;
            triangle_example(&thirds[0], &thirds[1], &thirds[2])
        }
        other => Err(Error::UnknownFamily(other.to_string())),
    }
}

fn split_even(params: &[f64], parts: usize, family: &str) -> Result<Vec<Vec<f64>>> {
    if params.is_empty() {
        return Ok(vec![vec![0.5, 0.5]; parts]);
    }
    if !params.len().is_multiple_of(parts) {
        return Err(Error::InvalidParameter(format!(
            "{family} parameters must split into {parts} equal distributions"
        )));
    }
    Ok(params.chunks(params.len() / parts).map(<[f64]>::to_vec).collect())
}

fn names(labels: &[&str]) -> Vec<String> {
    labels.iter().map(|s| s.to_string()).collect()
}

fn check_unit(name: &str, x: f64) -> Result<()> {
    if (0.0..=1.0).contains(&x) {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!("{name} = {x} outside [0, 1]")))
    }
}

fn check_simplex(name: &str, v: &[f64]) -> Result<()> {
    if v.is_empty() {
        return Err(Error::InvalidParameter(format!("{name} is empty")));
    }
    for &x in v {
        check_unit(name, x)?;
    }
    let s: f64 = v.iter().sum();
    if (s - 1.0).abs() > DIST_TOL {
        return Err(Error::InvalidParameter(format!("{name} sums to {s}")));
    }
    Ok(())
}
