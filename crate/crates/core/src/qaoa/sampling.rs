use std::collections::BTreeMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use serde::{Deserialize, Serialize};

use super::circuit::{QaoaCircuit, QaoaParams, Statevector};
use crate::error::{Error, Result};
use crate::graph::{is_independent, Graph, Solution};
use crate::rng::rng_from;

/// Measurement outcomes keyed by basis-state index (bit `i` = `x_i`).
///
/// In JSON the keys are rendered as `x_0 x_1 ... x_{n-1}` bitstrings.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleSet {
    pub n: usize,
    pub shots: usize,
    pub seed: u64,
    pub outcomes: BTreeMap<u64, usize>,
}

/// Renders a basis state as `x_0 x_1 ... x_{n-1}`.
pub fn bitstring(n: usize, bits: u64) -> String {
    (0..n)
        .map(|i| if bits >> i & 1 == 1 { '1' } else { '0' })
        .collect()
}

pub fn parse_bitstring(s: &str) -> Option<u64> {
    s.chars().enumerate().try_fold(0u64, |acc, (i, c)| match c {
        '0' => Some(acc),
        '1' if i < 64 => Some(acc | 1 << i),
        _ => None,
    })
}

#[derive(Serialize, Deserialize)]
struct SampleSetRepr {
    n: usize,
    shots: usize,
    seed: u64,
    outcomes: BTreeMap<String, usize>,
}

impl Serialize for SampleSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SampleSetRepr {
            n: self.n,
            shots: self.shots,
            seed: self.seed,
            outcomes: self
                .outcomes
                .iter()
                .map(|(&b, &c)| (bitstring(self.n, b), c))
                .collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for SampleSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let repr = SampleSetRepr::deserialize(d)?;
        let outcomes = repr
            .outcomes
            .into_iter()
            .map(|(k, v)| match parse_bitstring(&k) {
                Some(b) if k.len() == repr.n => Ok((b, v)),
                _ => Err(serde::de::Error::custom(format!("bad bitstring `{k}`"))),
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(SampleSet {
            n: repr.n,
            shots: repr.shots,
            seed: repr.seed,
            outcomes,
        })
    }
}

/// Draws `shots` i.i.d. outcomes from `|amplitude|^2`.
pub fn sample_statevector(psi: &Statevector, shots: usize, seed: u64) -> SampleSet {
    let n = psi.amplitudes.len().trailing_zeros() as usize;
    let mut outcomes = BTreeMap::new();
    if shots > 0 {
        let dist = WeightedIndex::new(psi.probabilities()).expect("normalized state");
        let mut rng = rng_from(seed);
        for _ in 0..shots {
            *outcomes.entry(dist.sample(&mut rng) as u64).or_insert(0) += 1;
        }
    }
    SampleSet {
        n,
        shots,
        seed,
        outcomes,
    }
}

impl QaoaCircuit {
    pub fn sample(&self, params: &QaoaParams, shots: usize, seed: u64) -> SampleSet {
        sample_statevector(&self.evolve(params), shots, seed)
    }
}

pub fn sample(
    q: &super::QuboModel,
    params: &QaoaParams,
    shots: usize,
    seed: u64,
) -> Result<SampleSet> {
    Ok(QaoaCircuit::new(q, super::DEFAULT_QUBIT_CAP)?.sample(params, shots, seed))
}

/// How the sampled outcomes split between feasible and infeasible states.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibleSummary {
    pub shots: usize,
    pub feasible_shots: usize,
    pub distinct_feasible: usize,
    /// Number of shots that landed on the returned state.
    pub best_count: usize,
}

/// Largest independent set among the sampled outcomes. Ties go to the
/// lexicographically smallest bitstring; with no feasible outcome the empty
/// set is returned.
pub fn best_feasible(g: &Graph, samples: &SampleSet) -> Result<(Solution, FeasibleSummary)> {
    if samples.n != g.n() {
        return Err(Error::DimensionMismatch {
            expected: g.n(),
            got: samples.n,
        });
    }
    let masks: Vec<u64> = g
        .edges()
        .iter()
        .map(|&(u, v)| 1u64 << u | 1u64 << v)
        .collect();
    let mut summary = FeasibleSummary {
        shots: samples.shots,
        feasible_shots: 0,
        distinct_feasible: 0,
        best_count: 0,
    };
    let mut best: Option<(u32, u64)> = None;
    for (&bits, &count) in &samples.outcomes {
        if masks.iter().any(|&m| (bits & m).count_ones() == 2) {
            continue;
        }
        summary.feasible_shots += count;
        summary.distinct_feasible += 1;
        let size = bits.count_ones();
        // Lexicographic order on x_0 x_1 ... equals numeric order of the
        // bit-reversed index.
        let better = match best {
            None => true,
            Some((bs, bb)) => size > bs || (size == bs && bits.reverse_bits() < bb.reverse_bits()),
        };
        if better {
            best = Some((size, bits));
            summary.best_count = count;
        }
    }
    let solution = best.map_or_else(
        || Solution::empty(g.n()),
        |(_, b)| Solution::from_bits(g.n(), b),
    );
    debug_assert!(is_independent(g, &solution));
    Ok((solution, summary))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{complete, path};
    use crate::qaoa::build_qubo;

    fn set(n: usize, strings: &[&str]) -> SampleSet {
        SampleSet {
            n,
            shots: strings.len(),
            seed: 0,
            outcomes: strings
                .iter()
                .map(|s| (parse_bitstring(s).unwrap(), 1))
                .collect(),
        }
    }

    #[test]
    fn best_feasible_examples() {
        let p3 = path(3);
        let (s, summary) = best_feasible(&p3, &set(3, &["000", "101"])).unwrap();
        assert_eq!(s.members(), vec![0, 2]);
        assert_eq!(summary.feasible_shots, 2);

        let (s, summary) = best_feasible(&complete(3), &set(3, &["111"])).unwrap();
        assert_eq!(s.cardinality(), 0);
        assert_eq!(summary.feasible_shots, 0);

        let (s, _) = best_feasible(&p3, &set(3, &["100", "010"])).unwrap();
        assert_eq!(s.members(), vec![1], "010 sorts before 100");

        assert!(best_feasible(&p3, &set(2, &["10"])).is_err());
    }

    #[test]
    fn sampling_is_seeded() {
        let q = build_qubo(&path(4), 2.0).unwrap();
        let params = QaoaParams::new(vec![0.5], vec![0.3]).unwrap();
        let a = sample(&q, &params, 500, 9).unwrap();
        let b = sample(&q, &params, 500, 9).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.outcomes.values().sum::<usize>(), 500);
        assert_ne!(a, sample(&q, &params, 500, 10).unwrap());
        assert!(sample(&q, &params, 0, 9).unwrap().outcomes.is_empty());
    }

    #[test]
    fn bitstrings_round_trip() {
        assert_eq!(bitstring(4, 0b0110), "0110");
        assert_eq!(bitstring(3, 0b001), "100");
        assert_eq!(parse_bitstring("100"), Some(1));
        assert_eq!(parse_bitstring("1x"), None);
        let s = set(3, &["100", "011"]);
        let json = serde_json::to_string(&s).unwrap();
        let back: SampleSet = serde_json::from_str(&json).unwrap();
        assert_eq!(back, s);
    }
}
