use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::measurement::{CMatrix, MeasurementSet};
use super::state::{permute_axes, PureState};
use crate::probtab::JointDistribution;
use crate::{Error, Result};

/// Largest joint Hilbert-space dimension the simulator accepts.
pub const MAX_NETWORK_DIM: usize = 1 << 16;

/// A node owning some subsystems of the sources and one measurement on them.
#[derive(Debug, Clone, PartialEq)]
pub struct Party {
    pub name: String,
    /// `(source, subsystem)` pairs, in the order the measurement sees them.
    pub slots: Vec<(usize, usize)>,
    pub measurement: MeasurementSet,
}

impl Party {
    pub fn new(name: impl Into<String>, slots: Vec<(usize, usize)>, measurement: MeasurementSet) -> Self {
        Self {
            name: name.into(),
            slots,
            measurement,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NetworkSpec {
    sources: Vec<PureState>,
    parties: Vec<Party>,
}

impl NetworkSpec {
    pub fn new(sources: Vec<PureState>, parties: Vec<Party>) -> Result<Self> {
        if sources.is_empty() || parties.is_empty() {
            return Err(Error::InvalidNetwork("need at least one source and one party".into()));
        }
        let mut owner: Vec<Vec<Option<usize>>> = sources.iter().map(|s| vec![None; s.dims().len()]).collect();
        for (pi, party) in parties.iter().enumerate() {
            if parties[..pi].iter().any(|q| q.name == party.name) {
                return Err(Error::InvalidNetwork(format!("duplicate party `{}`", party.name)));
            }
            if party.slots.is_empty() {
                return Err(Error::InvalidNetwork(format!("party `{}` owns no subsystem", party.name)));
            }
            let mut dim = 1;
            for &(s, k) in &party.slots {
                let slot = owner
                    .get_mut(s)
                    .and_then(|o| o.get_mut(k))
                    .ok_or_else(|| Error::InvalidNetwork(format!("party `{}`: no subsystem ({s}, {k})", party.name)))?;
                if let Some(prev) = slot.replace(pi) {
                    return Err(Error::InvalidNetwork(format!(
                        "subsystem ({s}, {k}) owned by both `{}` and `{}`",
                        parties[prev].name, party.name
                    )));
                }
                dim *= sources[s].dims()[k];
            }
            if party.measurement.dim() != dim {
                return Err(Error::InvalidNetwork(format!(
                    "party `{}` owns dimension {dim} but measures dimension {}",
                    party.name,
                    party.measurement.dim()
                )));
            }
        }
        for (s, o) in owner.iter().enumerate() {
            if let Some(k) = o.iter().position(Option::is_none) {
                return Err(Error::InvalidNetwork(format!("subsystem ({s}, {k}) has no owner")));
            }
        }
        let total: usize = sources.iter().map(PureState::dim).product();
        if total > MAX_NETWORK_DIM {
            return Err(Error::InvalidNetwork(format!(
                "joint dimension {total} exceeds {MAX_NETWORK_DIM}"
            )));
        }
        Ok(Self { sources, parties })
    }

    pub fn sources(&self) -> &[PureState] {
        &self.sources
    }

    pub fn parties(&self) -> &[Party] {
        &self.parties
    }

    /// Replaces party `index`'s measurement, keeping the wiring.
    pub fn with_measurement(&self, index: usize, measurement: MeasurementSet) -> Result<Self> {
        let mut parties = self.parties.clone();
        let party = parties
            .get_mut(index)
            .ok_or_else(|| Error::InvalidNetwork(format!("no party {index}")))?;
        party.measurement = measurement;
        Self::new(self.sources.clone(), parties)
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string(&RawSpec::from(self)).expect("plain data")
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let raw: RawSpec = serde_json::from_str(text).map_err(|e| Error::Format {
            context: format!("network spec (line {}, column {})", e.line(), e.column()),
            message: e.to_string(),
        })?;
        raw.build()
    }
}

/// `p(o) = <psi| (M_{o_1} (x) ... (x) M_{o_n}) |psi>` with `psi` the product of
/// sources reordered to party-slot order. Outcomes become variables named after
/// the parties; rounding below zero is clipped and the table renormalised.
pub fn born_distribution(spec: &NetworkSpec) -> Result<JointDistribution> {
    let mut dims = Vec::new();
    let mut offsets = Vec::new();
    let mut psi = vec![Complex64::new(1.0, 0.0)];
    for s in &spec.sources {
        offsets.push(dims.len());
        dims.extend_from_slice(s.dims());
        psi = psi.iter().flat_map(|a| s.amplitudes().iter().map(move |b| a * b)).collect();
    }
    let order: Vec<usize> = spec
        .parties
        .iter()
        .flat_map(|p| p.slots.iter().map(|&(s, k)| offsets[s] + k))
        .collect();
    let psi = permute_axes(&dims, &psi, &order);
    let party_dims: Vec<usize> = spec.parties.iter().map(|p| p.measurement.dim()).collect();
    let cards: Vec<usize> = spec.parties.iter().map(|p| p.measurement.outcomes()).collect();
    let mut probs = Vec::with_capacity(cards.iter().product());
    descend(&psi, &psi, &party_dims, spec, 0, &mut probs);

    let total: f64 = probs.iter().sum();
    if let Some(bad) = probs.iter().find(|&&p| p < -1e-10) {
        return Err(Error::InvalidMeasurement(format!("negative Born probability {bad:e}")));
    }
    if (total - 1.0).abs() > 1e-10 {
        return Err(Error::InvalidMeasurement(format!("Born probabilities sum to {total}")));
    }
    probs.iter_mut().for_each(|p| *p = p.max(0.0));
    let total: f64 = probs.iter().sum();
    probs.iter_mut().for_each(|p| *p /= total);
    let names = spec.parties.iter().map(|p| p.name.clone()).collect();
    JointDistribution::new(names, cards, probs)
}

fn descend(
    psi: &[Complex64],
    phi: &[Complex64],
    party_dims: &[usize],
    spec: &NetworkSpec,
    level: usize,
    out: &mut Vec<f64>,
) {
    if level == party_dims.len() {
        let v: Complex64 = psi.iter().zip(phi).map(|(a, b)| a.conj() * b).sum();
        out.push(v.re);
        return;
    }
    for m in spec.parties[level].measurement.elements() {
        let next = apply_on_axis(phi, party_dims, level, m);
        descend(psi, &next, party_dims, spec, level + 1, out);
    }
}

fn apply_on_axis(v: &[Complex64], dims: &[usize], axis: usize, m: &CMatrix) -> Vec<Complex64> {
    let d = dims[axis];
    let right: usize = dims[axis + 1..].iter().product();
    let left = v.len() / (d * right);
    let mut out = vec![Complex64::new(0.0, 0.0); v.len()];
    for l in 0..left {
        let base = l * d * right;
        for i in 0..d {
            for j in 0..d {
                let mij = m[(i, j)];
                if mij.re == 0.0 && mij.im == 0.0 {
                    continue;
                }
                for r in 0..right {
                    out[base + i * right + r] += mij * v[base + j * right + r];
                }
            }
        }
    }
    out
}

type RawComplex = [f64; 2];

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSource {
    dims: Vec<usize>,
    amplitudes: Vec<RawComplex>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawParty {
    name: String,
    slots: Vec<(usize, usize)>,
    dims: Vec<usize>,
    elements: Vec<Vec<Vec<RawComplex>>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    sources: Vec<RawSource>,
    parties: Vec<RawParty>,
}

impl From<&NetworkSpec> for RawSpec {
    fn from(spec: &NetworkSpec) -> Self {
        let sources = spec
            .sources
            .iter()
            .map(|s| RawSource {
                dims: s.dims().to_vec(),
                amplitudes: s.amplitudes().iter().map(|a| [a.re, a.im]).collect(),
            })
            .collect();
        let parties = spec
            .parties
            .iter()
            .map(|p| RawParty {
                name: p.name.clone(),
                slots: p.slots.clone(),
                dims: p.measurement.dims().to_vec(),
                elements: p
                    .measurement
                    .elements()
                    .iter()
                    .map(|m| {
                        (0..m.nrows())
                            .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                            .collect()
                    })
                    .collect(),
            })
            .collect();
        RawSpec { sources, parties }
    }
}

impl RawSpec {
    fn build(self) -> Result<NetworkSpec> {
        let sources = self
            .sources
            .into_iter()
            .map(|s| PureState::new(s.dims, s.amplitudes.iter().map(|a| Complex64::new(a[0], a[1])).collect()))
            .collect::<Result<Vec<_>>>()?;
        let parties = self
            .parties
            .into_iter()
            .map(|p| {
                let d: usize = p.dims.iter().product();
                let elements = p
                    .elements
                    .iter()
                    .enumerate()
                    .map(|(k, rows)| {
                        if rows.len() != d || rows.iter().any(|r| r.len() != d) {
                            return Err(Error::Format {
                                context: format!("party `{}` element {k}", p.name),
                                message: format!("expected a {d}x{d} matrix"),
                            });
                        }
                        Ok(CMatrix::from_fn(d, d, |i, j| Complex64::new(rows[i][j][0], rows[i][j][1])))
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(Party::new(p.name, p.slots, MeasurementSet::new(p.dims, elements)?))
            })
            .collect::<Result<Vec<_>>>()?;
        NetworkSpec::new(sources, parties)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::probtab::families;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn two_epr_network() -> NetworkSpec {
        let comp = MeasurementSet::computational;
        NetworkSpec::new(
            vec![PureState::epr(), PureState::epr()],
            vec![
                Party::new("X", vec![(0, 0)], comp(vec![2])),
                Party::new("Y", vec![(1, 1)], comp(vec![2])),
                Party::new("Z", vec![(0, 1), (1, 0)], comp(vec![2, 2])),
            ],
        )
        .unwrap()
    }

    #[test]
    fn two_epr_pairs_give_copied_bits() {
        let p = born_distribution(&two_epr_network()).unwrap();
        let want = families::eq11()
            .relabel(&["Z1", "Z2"], "Z", 4, &[0, 1, 2, 3])
            .unwrap()
            .permute(&["X", "Y", "Z"])
            .unwrap();
        assert!(p.linf_distance(&want).unwrap() < 1e-12);
    }

    #[test]
    fn product_states_give_product_distributions() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let spec = NetworkSpec::new(
                vec![PureState::random(&mut rng, vec![2]), PureState::random(&mut rng, vec![3])],
                vec![
                    Party::new("A", vec![(0, 0)], MeasurementSet::random(&mut rng, vec![2], 3)),
                    Party::new("B", vec![(1, 0)], MeasurementSet::random(&mut rng, vec![3], 2)),
                ],
            )
            .unwrap();
            let p = born_distribution(&spec).unwrap();
            assert!(p.is_product(&[vec!["A"], vec!["B"]], 1e-12).unwrap());
        }
    }

    #[test]
    fn wiring_is_validated() {
        let comp = MeasurementSet::computational;
        let s = || vec![PureState::epr()];
        assert!(NetworkSpec::new(s(), vec![Party::new("A", vec![(0, 0)], comp(vec![2]))]).is_err());
        assert!(NetworkSpec::new(
            s(),
            vec![
                Party::new("A", vec![(0, 0)], comp(vec![2])),
                Party::new("B", vec![(0, 0)], comp(vec![2]))
            ]
        )
        .is_err());
        assert!(NetworkSpec::new(s(), vec![Party::new("A", vec![(0, 0), (0, 1)], comp(vec![2]))]).is_err());
        assert!(NetworkSpec::new(s(), vec![Party::new("A", vec![(0, 2)], comp(vec![2]))]).is_err());
    }

    #[test]
    fn json_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        let spec = two_epr_network()
            .with_measurement(0, MeasurementSet::random(&mut rng, vec![2], 3))
            .unwrap();
        let back = NetworkSpec::from_json_str(&spec.to_json_string()).unwrap();
        assert_eq!(back, spec);
        assert!(NetworkSpec::from_json_str("{\"sources\": []}").is_err());
    }
}
