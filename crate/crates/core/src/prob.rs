//! Probabilities over admissible completions.
//!
//! The measure is uniform over the admissible completions of the given
//! inputs. Every number is an exact rational.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{Signed, Zero};

use crate::analysis::{hidden_state_set, InputTriple};
use crate::assignment::{Assignment, EdgeId};
use crate::error::{Error, Result};
use crate::flavor::{production_completions, Flavor, FlavorPermutation, HiddenState};
use crate::solver::Solver;
use crate::structure::{Role, Scenario};

pub type Probability = Ratio<i64>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompletionDistribution {
    /// Admissible completions in ascending order, each with its weight.
    pub support: Vec<(Assignment, Probability)>,
}

impl CompletionDistribution {
    pub fn permuted(&self, p: &FlavorPermutation) -> CompletionDistribution {
        let mut support: Vec<_> = self
            .support
            .iter()
            .map(|(a, w)| (crate::flavor::apply_permutation(p, a), *w))
            .collect();
        support.sort();
        CompletionDistribution { support }
    }
}

/// Probabilities for each flavor; all three are always present.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FlavorDistribution(pub BTreeMap<Flavor, Probability>);

impl FlavorDistribution {
    pub fn get(&self, f: Flavor) -> Probability {
        self.0.get(&f).copied().unwrap_or_else(Probability::zero)
    }

    pub fn permuted(&self, p: &FlavorPermutation) -> FlavorDistribution {
        FlavorDistribution(self.0.iter().map(|(f, w)| (p.apply(*f), *w)).collect())
    }

    /// Half the L1 distance.
    pub fn total_variation(&self, other: &FlavorDistribution) -> Probability {
        Flavor::ALL
            .into_iter()
            .map(|f| (self.get(f) - other.get(f)).abs())
            .sum::<Probability>()
            / 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EpistemicState {
    /// For each hidden state compatible with the center input, the fraction
    /// of wing-setting pairs consistent with what is known under which it is
    /// admissible.
    pub weights: BTreeMap<HiddenState, Probability>,
}

fn check_inputs(s: &Scenario, inputs: &Assignment) -> Result<()> {
    for edge in inputs.keys() {
        if s.roles.get(edge) != Some(&Role::Intervention) {
            return Err(Error::contract(format!("{edge} is not an intervention edge")));
        }
    }
    if let Some(missing) = s.interventions().into_iter().find(|e| !inputs.contains_key(e)) {
        return Err(Error::contract(format!("intervention edge {missing} has no value")));
    }
    Ok(())
}

/// The uniform distribution over admissible completions of `inputs`, which
/// must assign every intervention edge and nothing else.
pub fn completion_distribution(s: &Scenario, inputs: &Assignment) -> Result<CompletionDistribution> {
    check_inputs(s, inputs)?;
    let solutions = Solver::new(&s.structure)?.complete(inputs)?.solutions;
    if solutions.is_empty() {
        return Err(Error::EmptySupport(format!(
            "no admissible completion of {}",
            crate::assignment::display_assignment(inputs)
        )));
    }
    let weight = Probability::new(1, solutions.len() as i64);
    Ok(CompletionDistribution {
        support: solutions.into_iter().map(|a| (a, weight)).collect(),
    })
}

pub fn marginal(d: &CompletionDistribution, edge: &EdgeId) -> Result<FlavorDistribution> {
    let mut out: BTreeMap<Flavor, Probability> =
        Flavor::ALL.into_iter().map(|f| (f, Probability::zero())).collect();
    for (a, w) in &d.support {
        let f = a
            .get(edge)
            .ok_or_else(|| Error::contract(format!("edge {edge} is not in the distribution")))?;
        *out.get_mut(f).unwrap() += *w;
    }
    Ok(FlavorDistribution(out))
}

/// The largest total-variation distance between `target` marginals over any
/// two values of the `remote` intervention, with the other interventions
/// fixed by `context`. Zero iff the target marginal ignores the remote input.
pub fn signalling_score(
    s: &Scenario,
    target: &EdgeId,
    remote: &EdgeId,
    context: &Assignment,
) -> Result<Probability> {
    if s.roles.get(target) != Some(&Role::Observation) {
        return Err(Error::contract(format!("{target} is not an observation edge")));
    }
    if s.roles.get(remote) != Some(&Role::Intervention) {
        return Err(Error::contract(format!("{remote} is not an intervention edge")));
    }
    if context.contains_key(remote) {
        return Err(Error::contract(format!("context must leave {remote} free")));
    }
    let mut marginals = Vec::with_capacity(3);
    for v in Flavor::ALL {
        let mut inputs = context.clone();
        inputs.insert(remote.clone(), v);
        let d = completion_distribution(s, &inputs).map_err(|e| match e {
            Error::EmptySupport(_) => {
                Error::EmptySupport(format!("no admissible completion with {remote}={v}"))
            }
            other => other,
        })?;
        marginals.push(marginal(&d, target)?);
    }
    let mut best = Probability::zero();
    for (i, a) in marginals.iter().enumerate() {
        for b in &marginals[i + 1..] {
            best = best.max(a.total_variation(b));
        }
    }
    Ok(best)
}

/// Weighted hidden states for a center input, averaging uniformly over the
/// wing settings not fixed by `known_left` / `known_right`.
pub fn epistemic_state(
    center_in: Flavor,
    known_left: Option<Flavor>,
    known_right: Option<Flavor>,
) -> EpistemicState {
    let lefts: Vec<Flavor> = known_left.map_or(Flavor::ALL.to_vec(), |f| vec![f]);
    let rights: Vec<Flavor> = known_right.map_or(Flavor::ALL.to_vec(), |f| vec![f]);
    let cases = (lefts.len() * rights.len()) as i64;
    let mut counts: BTreeMap<HiddenState, i64> = production_completions(center_in)
        .into_iter()
        .map(|(l, r)| (HiddenState::new(l, r), 0))
        .collect();
    for &l in &lefts {
        for &r in &rights {
            for h in hidden_state_set(InputTriple::new(l, center_in, r)) {
                *counts.get_mut(&h).expect("hidden states follow the center input") += 1;
            }
        }
    }
    EpistemicState {
        weights: counts
            .into_iter()
            .map(|(h, n)| (h, Probability::new(n, cases)))
            .collect(),
    }
}
