//! Born-rule statistics of two EPR pairs measured by three parties, a
//! round trip through the JSON network format and a Schmidt decomposition.

use infonet::probtab::io;
use infonet::quantum::{born_distribution, schmidt_decomposition, MeasurementSet, NetworkSpec, Party, PureState};

fn main() -> infonet::Result<()> {
    let comp = MeasurementSet::computational;
    let spec = NetworkSpec::new(
        vec![PureState::epr(), PureState::epr()],
        vec![
            Party::new("X", vec![(0, 0)], comp(vec![2])),
            Party::new("Y", vec![(1, 1)], comp(vec![2])),
            Party::new("Z", vec![(0, 1), (1, 0)], comp(vec![2, 2])),
        ],
    )?;
    let p = born_distribution(&spec)?;
    println!("{}", io::to_json_string(&p));

    let again = NetworkSpec::from_json_str(&spec.to_json_string())?;
    assert_eq!(born_distribution(&again)?, p);

    let s = schmidt_decomposition(&PureState::epr(), &[0])?;
    println!("EPR Schmidt coefficients {:?}, rank {}", s.coefficients, s.rank());
    Ok(())
}
