use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_2};
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use rand::Rng;

use super::measurement::{CMatrix, MeasurementSet};
use super::network::{born_distribution, NetworkSpec, Party};
use super::state::PureState;
use crate::probtab::JointDistribution;
use crate::shannon::{expect_tripartite, EntropyProfile};
use crate::{Error, Result};

const PARAM_TOL: f64 = 1e-9;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Householder reflection taking `e_0` to the real unit vector `v`.
fn householder_from_e0(v: &[f64]) -> CMatrix {
    let n = v.len();
    let mut w: Vec<f64> = v.iter().map(|x| -x).collect();
    w[0] += 1.0;
    let ww: f64 = w.iter().map(|x| x * x).sum();
    if ww < 1e-30 {
        return CMatrix::identity(n, n);
    }
    CMatrix::from_fn(n, n, |i, j| {
        let delta = if i == j { 1.0 } else { 0.0 };
        c(delta - 2.0 * w[i] * w[j] / ww)
    })
}

/// Quantum chain model of a distribution with `I(X;Y) <= tol`.
///
/// Sources `sum sqrt(p_x)|x,x>` and `sum sqrt(p_y)|y,y>` plus an ancilla in
/// `|0>` held by the middle party. The middle party's measurement is the
/// pull-back of the computational ancilla basis through the controlled
/// preparation `|xy>|0> -> |xy> sum_z sqrt(p(z|xy)) |z>`, so it reports `z` only.
pub fn chain_realization(p: &JointDistribution, tol: f64) -> Result<NetworkSpec> {
    expect_tripartite(p)?;
    let i_xy = EntropyProfile::of(p)?.i_xy();
    if i_xy > tol {
        return Err(Error::NotApplicable(format!("I(X;Y) = {i_xy} exceeds {tol}")));
    }
    let [cx, cy, cz] = [p.cards()[0], p.cards()[1], p.cards()[2]];
    let copy_state = |marginal: &[f64]| {
        let n = marginal.len();
        let mut amps = vec![0.0; n * n];
        for (v, m) in marginal.iter().enumerate() {
            amps[v * n + v] = m.sqrt();
        }
        PureState::normalized(vec![n, n], amps.into_iter().map(c).collect())
    };
    let (_, px) = p.marginal_by_index(&[0]);
    let (_, py) = p.marginal_by_index(&[1]);
    let ancilla = PureState::basis(vec![cz], 0)?;

    let d = cx * cy * cz;
    let mut elements = vec![CMatrix::zeros(d, d); cz];
    for xy in 0..cx * cy {
        let block = &p.probs()[xy * cz..(xy + 1) * cz];
        let mass: f64 = block.iter().sum();
        let phi: Vec<f64> = if mass > 0.0 {
            block.iter().map(|q| (q / mass).sqrt()).collect()
        } else {
            (0..cz).map(|z| if z == 0 { 1.0 } else { 0.0 }).collect()
        };
        let u = householder_from_e0(&phi);
        for (z, element) in elements.iter_mut().enumerate() {
            // U^† |z><z| U restricted to the ancilla block of |xy>
            let row = u.row(z);
            for a in 0..cz {
                for b in 0..cz {
                    element[(xy * cz + a, xy * cz + b)] = row[a].conj() * row[b];
                }
            }
        }
    }
    let names = p.names();
    NetworkSpec::new(
        vec![copy_state(&px)?, copy_state(&py)?, ancilla],
        vec![
            Party::new(&names[0], vec![(0, 0)], MeasurementSet::computational(vec![cx])),
            Party::new(&names[1], vec![(1, 0)], MeasurementSet::computational(vec![cy])),
            Party::new(&names[2], vec![(0, 1), (1, 1), (2, 0)], MeasurementSet::new(vec![cx, cy, cz], elements)?),
        ],
    )
}

/// Random chain: two random two-qubit sources, one random POVM per party.
/// `X` holds half of the first source, `Y` half of the second, `Z` the rest.
pub fn random_chain_spec<R: Rng + ?Sized>(rng: &mut R) -> NetworkSpec {
    let s1 = PureState::random(rng, vec![2, 2]);
    let s2 = PureState::random(rng, vec![2, 2]);
    let (kx, ky, kz) = (rng.random_range(2..=3), rng.random_range(2..=3), rng.random_range(2..=4));
    NetworkSpec::new(
        vec![s1, s2],
        vec![
            Party::new("X", vec![(0, 0)], MeasurementSet::random(rng, vec![2], kx)),
            Party::new("Y", vec![(1, 1)], MeasurementSet::random(rng, vec![2], ky)),
            Party::new("Z", vec![(0, 1), (1, 0)], MeasurementSet::random(rng, vec![2, 2], kz)),
        ],
    )
    .expect("consistent wiring")
}

/// Three-qubit families reachable from a Schmidt-rank-two state by local unitaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CanonicalFamily {
    /// `l1|000> + l2|111>`; params `[l1, l2]`.
    E4,
    /// `l1|000> + l2|1>(g1|01> + g2|10> + g3|11>)`; params `[l1, l2, g1, g2, g3]`.
    E5,
    /// `l1|0>(a|00> + b|11>) + l2|1>(g b|00> - g a|11> + g1|01> + g2|10>)`;
    /// params `[l1, l2, a, b, g, g1, g2]`.
    E6,
}

impl CanonicalFamily {
    pub const ALL: [CanonicalFamily; 3] = [CanonicalFamily::E4, CanonicalFamily::E5, CanonicalFamily::E6];

    pub fn param_count(self) -> usize {
        match self {
            CanonicalFamily::E4 => 2,
            CanonicalFamily::E5 => 5,
            CanonicalFamily::E6 => 7,
        }
    }
}

impl fmt::Display for CanonicalFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for CanonicalFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "E4" => Ok(CanonicalFamily::E4),
            "E5" => Ok(CanonicalFamily::E5),
            "E6" => Ok(CanonicalFamily::E6),
            _ => Err(Error::UnknownFamily(s.to_string())),
        }
    }
}

fn check_unit(label: &str, parts: &[f64]) -> Result<()> {
    let n: f64 = parts.iter().map(|x| x * x).sum();
    if (n - 1.0).abs() > PARAM_TOL {
        return Err(Error::InvalidParameter(format!("{label}: squares sum to {n}, expected 1")));
    }
    Ok(())
}

pub fn canonical_tripartite_state(family: CanonicalFamily, params: &[f64]) -> Result<PureState> {
    if params.len() != family.param_count() {
        return Err(Error::InvalidParameter(format!(
            "{family} takes {} parameters, got {}",
            family.param_count(),
            params.len()
        )));
    }
    check_unit("lambda", &params[..2])?;
    let (l1, l2) = (params[0], params[1]);
    let mut a = [0.0; 8];
    match family {
        CanonicalFamily::E4 => {
            a[0b000] = l1;
            a[0b111] = l2;
        }
        CanonicalFamily::E5 => {
            let g = &params[2..5];
            check_unit("gamma", g)?;
            a[0b000] = l1;
            a[0b101] = l2 * g[0];
            a[0b110] = l2 * g[1];
            a[0b111] = l2 * g[2];
        }
        CanonicalFamily::E6 => {
            let (al, be, g, g1, g2) = (params[2], params[3], params[4], params[5], params[6]);
            check_unit("alpha, beta", &[al, be])?;
            check_unit("gamma, gamma1, gamma2", &[g, g1, g2])?;
            a[0b000] = l1 * al;
            a[0b011] = l1 * be;
            a[0b100] = l2 * g * be;
            a[0b111] = -l2 * g * al;
            a[0b101] = l2 * g1;
            a[0b110] = l2 * g2;
        }
    }
    PureState::normalized(vec![2, 2, 2], a.into_iter().map(c).collect())
}

/// One three-qubit source, parties `X`, `Y`, `Z` holding one qubit each.
pub fn tripartite_spec(state: &PureState, measurements: [MeasurementSet; 3]) -> Result<NetworkSpec> {
    if state.dims().len() != 3 {
        return Err(Error::InvalidState(format!("expected three subsystems, found {:?}", state.dims())));
    }
    let [mx, my, mz] = measurements;
    NetworkSpec::new(
        vec![state.clone()],
        vec![
            Party::new("X", vec![(0, 0)], mx),
            Party::new("Y", vec![(0, 1)], my),
            Party::new("Z", vec![(0, 2)], mz),
        ],
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StarMode {
    /// Central qubits measured in two four-dimensional Fourier bases.
    Fourier,
    /// Central qubits measured in the GHZ-diagonal basis `|b> +- |~b>`.
    GhzSwap,
}

impl FromStr for StarMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('-', "_").as_str() {
            "fourier" => Ok(StarMode::Fourier),
            "ghz_swap" | "ghz" => Ok(StarMode::GhzSwap),
            _ => Err(Error::InvalidParameter(format!("unknown star mode `{s}`"))),
        }
    }
}

/// Supports of the two Fourier blocks, in phase order.
pub const FOURIER_BLOCKS: [[usize; 4]; 2] = [[0b001, 0b010, 0b100, 0b011], [0b110, 0b101, 0b000, 0b111]];

/// Orthonormal basis of the central party: `y < 4` uses the first block,
/// `y >= 4` the second, each `sum_k i^{k (y mod 4 + 1)} |s_k> / 2`.
pub fn central_basis(mode: StarMode) -> Vec<Vec<Complex64>> {
    let zero = Complex64::new(0.0, 0.0);
    match mode {
        StarMode::Fourier => FOURIER_BLOCKS
            .iter()
            .flat_map(|block| {
                (1..=4).map(move |i| {
                    let mut v = vec![zero; 8];
                    for (k, &s) in block.iter().enumerate() {
                        v[s] = Complex64::i().powu((k * i) as u32) * 0.5;
                    }
                    v
                })
            })
            .collect(),
        StarMode::GhzSwap => (0..4)
            .flat_map(|b| {
                [1.0, -1.0].map(|sign| {
                    let mut v = vec![zero; 8];
                    v[b] = c(FRAC_1_SQRT_2);
                    v[7 - b] = c(sign * FRAC_1_SQRT_2);
                    v
                })
            })
            .collect(),
    }
}

/// `a_{i1 i2 i3} = prod_j cos^{1-i_j}(t_j) sin^{i_j}(t_j)`, indexed by `i1 i2 i3` as bits.
pub fn star_amplitude(thetas: [f64; 3], index: usize) -> f64 {
    (0..3)
        .map(|j| {
            let bit = (index >> (2 - j)) & 1;
            if bit == 1 {
                thetas[j].sin()
            } else {
                thetas[j].cos()
            }
        })
        .product()
}

/// Three leaves `X1, X2, X3` each share `cos t|00> + sin t|11>` with a central
/// party `Y`; leaves measure computationally.
pub fn star_network_spec(thetas: [f64; 3], mode: StarMode) -> Result<NetworkSpec> {
    if let Some(t) = thetas.iter().find(|t| !(**t > 0.0 && **t < FRAC_PI_2)) {
        return Err(Error::InvalidParameter(format!("angle {t} outside (0, pi/2)")));
    }
    let sources = thetas
        .iter()
        .map(|t| PureState::from_real(vec![2, 2], &[t.cos(), 0.0, 0.0, t.sin()]))
        .collect::<Result<Vec<_>>>()?;
    let comp = || MeasurementSet::computational(vec![2]);
    NetworkSpec::new(
        sources,
        vec![
            Party::new("X1", vec![(0, 0)], comp()),
            Party::new("X2", vec![(1, 0)], comp()),
            Party::new("X3", vec![(2, 0)], comp()),
            Party::new(
                "Y",
                vec![(0, 1), (1, 1), (2, 1)],
                MeasurementSet::from_basis(vec![2, 2, 2], &central_basis(mode))?,
            ),
        ],
    )
}

/// Joint distribution over `(X1, X2, X3, Y)`.
pub fn star_network_distribution(thetas: [f64; 3], mode: StarMode) -> Result<JointDistribution> {
    born_distribution(&star_network_spec(thetas, mode)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probtab::{families, Channel};
    use crate::shannon::{multivariate_information, tripartite_of};
    use crate::witness::classify_case;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;
    use std::f64::consts::FRAC_PI_4;

    fn computational3() -> [MeasurementSet; 3] {
        std::array::from_fn(|_| MeasurementSet::computational(vec![2]))
    }

    #[test]
    fn fig1_chain_round_trip() {
        let p = families::fig1();
        let q = born_distribution(&chain_realization(&p, 1e-9).unwrap()).unwrap();
        assert!(q.linf_distance(&p).unwrap() < 1e-12);
    }

    #[test]
    fn deterministic_chain_round_trip() {
        let p = JointDistribution::point_mass(&["X", "Y", "Z"], &[2, 3, 2], &[1, 2, 1]).unwrap();
        let q = born_distribution(&chain_realization(&p, 1e-9).unwrap()).unwrap();
        assert!(q.linf_distance(&p).unwrap() < 1e-12);
    }

    #[test]
    fn random_case_one_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let p = crate::probtab::random::case_one(&mut rng, 3).unwrap();
            let q = born_distribution(&chain_realization(&p, 1e-9).unwrap()).unwrap();
            assert!(q.linf_distance(&p).unwrap() <= 1e-9);
        }
    }

    #[test]
    fn chain_realization_rejects_dependent_ends() {
        assert!(matches!(chain_realization(&families::ghz_type(0.5).unwrap(), 1e-9), Err(Error::NotApplicable(_))));
    }

    #[test]
    fn quantum_chains_keep_ends_independent() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        for _ in 0..50 {
            let p = born_distribution(&random_chain_spec(&mut rng)).unwrap();
            assert!(EntropyProfile::of(&p).unwrap().i_xy() <= 1e-9);
        }
    }

    #[test]
    fn e4_is_ghz_and_gives_ghz_type() {
        let r = FRAC_1_SQRT_2;
        let s = canonical_tripartite_state(CanonicalFamily::E4, &[r, r]).unwrap();
        assert!((s.amplitudes()[0].re - r).abs() < 1e-15 && (s.amplitudes()[7].re - r).abs() < 1e-15);
        let l1 = 0.3f64.sqrt();
        let s = canonical_tripartite_state(CanonicalFamily::E4, &[l1, (1.0 - 0.3f64).sqrt()]).unwrap();
        let p = born_distribution(&tripartite_spec(&s, computational3()).unwrap()).unwrap();
        assert!(p.linf_distance(&families::ghz_type(0.3).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn e5_four_point_distribution() {
        let (l1, l2) = (0.6, 0.8);
        let g = [0.48, 0.6, 0.64];
        let s = canonical_tripartite_state(CanonicalFamily::E5, &[l1, l2, g[0], g[1], g[2]]).unwrap();
        let p = born_distribution(&tripartite_spec(&s, computational3()).unwrap()).unwrap();
        let want = JointDistribution::from_support(
            &["X", "Y", "Z"],
            &[2, 2, 2],
            &[
                (&[0, 0, 0], l1 * l1),
                (&[1, 0, 1], l2 * l2 * g[0] * g[0]),
                (&[1, 1, 0], l2 * l2 * g[1] * g[1]),
                (&[1, 1, 1], l2 * l2 * g[2] * g[2]),
            ],
        )
        .unwrap();
        assert!(p.linf_distance(&want).unwrap() < 1e-12);
    }

    #[test]
    fn parameters_must_be_normalised() {
        assert!(canonical_tripartite_state(CanonicalFamily::E4, &[0.5, 0.5]).is_err());
        assert!(canonical_tripartite_state(CanonicalFamily::E5, &[0.6, 0.8, 1.0, 1.0, 0.0]).is_err());
        assert!(canonical_tripartite_state(CanonicalFamily::E6, &[0.6, 0.8]).is_err());
        assert!("e7".parse::<CanonicalFamily>().is_err());
    }

    #[test]
    fn uniformizer_erases_tripartite_information() {
        let t = Channel::uniformizer(2, 2).unwrap();
        let r = FRAC_1_SQRT_2;
        let states = [
            canonical_tripartite_state(CanonicalFamily::E4, &[0.6, 0.8]).unwrap(),
            canonical_tripartite_state(CanonicalFamily::E5, &[0.6, 0.8, 0.48, 0.6, 0.64]).unwrap(),
            canonical_tripartite_state(CanonicalFamily::E6, &[0.6, 0.8, r, r, 0.6, 0.0, 0.8]).unwrap(),
        ];
        for s in &states {
            let mut p = born_distribution(&tripartite_spec(s, computational3()).unwrap()).unwrap();
            for v in ["X", "Y", "Z"] {
                p = p.apply_channel(v, &t).unwrap();
            }
            assert!(tripartite_of(&p).unwrap().abs() < 1e-12);
        }
    }

    #[test]
    fn central_bases_are_orthonormal() {
        for mode in [StarMode::Fourier, StarMode::GhzSwap] {
            MeasurementSet::from_basis(vec![2, 2, 2], &central_basis(mode)).unwrap();
        }
    }

    fn conditional(p: &JointDistribution, y: usize) -> JointDistribution {
        p.condition("Y", y).unwrap().marginalize(&["X1", "X2", "X3"]).unwrap()
    }

    #[test]
    fn fourier_conditionals_match_tables() {
        let thetas = [0.4, 0.9, 1.2];
        let p = star_network_distribution(thetas, StarMode::Fourier).unwrap();
        let a2 = |s: usize| star_amplitude(thetas, s).powi(2);
        let bits = |s: usize| [s >> 2 & 1, s >> 1 & 1, s & 1];
        for y in 0..8 {
            let mut q = conditional(&p, y);
            let block = FOURIER_BLOCKS[y / 4];
            if y >= 4 {
                // compare after flipping the first leaf
                q = q.apply_channel("X1", &Channel::permutation(&[1, 0]).unwrap()).unwrap();
            }
            let norm: f64 = block.iter().map(|&s| a2(s)).sum();
            let support: Vec<([usize; 3], f64)> = block
                .iter()
                .map(|&s| {
                    let b = bits(s);
                    let b = if y >= 4 { [1 - b[0], b[1], b[2]] } else { b };
                    (b, a2(s) / norm)
                })
                .collect();
            let sup: Vec<(&[usize], f64)> = support.iter().map(|(b, w)| (&b[..], *w)).collect();
            let want = JointDistribution::from_support(&["X1", "X2", "X3"], &[2, 2, 2], &sup).unwrap();
            assert!(q.linf_distance(&want).unwrap() < 1e-12, "y = {y}");
        }
    }

    #[test]
    fn fourier_at_quarter_pi() {
        let p = star_network_distribution([FRAC_PI_4; 3], StarMode::Fourier).unwrap();
        for y in 0..8 {
            let q = conditional(&p, y).rename(&["X", "Y", "Z"]).unwrap();
            assert!((tripartite_of(&q).unwrap() + 0.188721875540867).abs() < 1e-9);
        }
        let leaves = p.marginalize(&["X1", "X2", "X3"]).unwrap();
        assert!(leaves.is_product(&[vec!["X1"], vec!["X2"], vec!["X3"]], 1e-12).unwrap());
        let cond = multivariate_information(&p, &[&["X1"], &["X2"], &["X3"]], &["Y"]).unwrap();
        assert!(cond.value() < 0.0);
    }

    #[test]
    fn fourier_negativity_breaks_at_large_equal_angles() {
        let p = star_network_distribution([1.35, 1.35, 1.35], StarMode::Fourier).unwrap();
        let cond = multivariate_information(&p, &[&["X1"], &["X2"], &["X3"]], &["Y"]).unwrap();
        assert!(cond.value() > 0.0);
    }

    #[test]
    fn ghz_swap_conditionals_are_ghz() {
        let thetas = [0.3, 0.7, 1.1];
        let p = star_network_distribution(thetas, StarMode::GhzSwap).unwrap();
        let leaves = p.marginalize(&["X1", "X2", "X3"]).unwrap();
        let i = multivariate_information(&leaves, &[&["X1"], &["X2"], &["X3"]], &[]).unwrap();
        assert!(i.value().abs() < 1e-9);
        let cond = multivariate_information(&p, &[&["X1"], &["X2"], &["X3"]], &["Y"]).unwrap();
        assert!(cond.value() > 0.0);
        for y in 0..8 {
            let q = conditional(&p, y);
            assert_eq!(q.support().count(), 2);
            let q = q.rename(&["X", "Y", "Z"]).unwrap();
            assert_ne!(classify_case(&q, 1e-9).unwrap(), crate::witness::CaseLabel::CaseOne);
        }
    }

    #[test]
    fn angles_out_of_range() {
        assert!(star_network_spec([0.0, 0.5, 0.5], StarMode::Fourier).is_err());
        assert!(star_network_spec([0.5, FRAC_PI_2, 0.5], StarMode::GhzSwap).is_err());
    }
}
