//! State table, symmetry classes, counterfactual witnesses and the
//! consistency sweep, all computed by exhaustive solving on the h-cell and
//! its chains.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::OnceLock;

use serde::{Serialize, Serializer};

use crate::assignment::{Assignment, EdgeId};
use crate::error::Result;
use crate::flavor::{production_completions, Flavor, FlavorPermutation, HiddenState};
use crate::solver::Solver;
use crate::structure::{build_chain, build_h_cell, Scenario};

pub(crate) fn h_cell_solver() -> &'static Solver {
    static SOLVER: OnceLock<Solver> = OnceLock::new();
    SOLVER.get_or_init(|| Solver::new(&build_h_cell().structure).expect("h-cell is valid"))
}

/// Values on `l_in`, `c_in` and `r_in` of the h-cell, written `L_C_R`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputTriple {
    pub left: Flavor,
    pub center: Flavor,
    pub right: Flavor,
}

impl InputTriple {
    pub fn new(left: Flavor, center: Flavor, right: Flavor) -> Self {
        InputTriple {
            left,
            center,
            right,
        }
    }

    /// All 27 triples in ascending order.
    pub fn all() -> impl Iterator<Item = InputTriple> {
        Flavor::ALL.into_iter().flat_map(|l| {
            Flavor::ALL
                .into_iter()
                .flat_map(move |c| Flavor::ALL.into_iter().map(move |r| InputTriple::new(l, c, r)))
        })
    }

    pub fn permuted(self, p: &FlavorPermutation) -> Self {
        InputTriple::new(p.apply(self.left), p.apply(self.center), p.apply(self.right))
    }

    /// Left and right swapped.
    pub fn reflected(self) -> Self {
        InputTriple::new(self.right, self.center, self.left)
    }

    pub fn wing(self, side: Wing) -> Flavor {
        match side {
            Wing::Left => self.left,
            Wing::Right => self.right,
        }
    }

    pub fn with_wing(mut self, side: Wing, value: Flavor) -> Self {
        match side {
            Wing::Left => self.left = value,
            Wing::Right => self.right = value,
        }
        self
    }

    pub fn to_assignment(self) -> Assignment {
        [
            (EdgeId::from("l_in"), self.left),
            (EdgeId::from("c_in"), self.center),
            (EdgeId::from("r_in"), self.right),
        ]
        .into_iter()
        .collect()
    }
}

impl fmt::Display for InputTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}_{}_{}", self.left, self.center, self.right)
    }
}

impl Serialize for InputTriple {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Wing {
    Left,
    Right,
}

impl Wing {
    pub fn opposite(self) -> Wing {
        match self {
            Wing::Left => Wing::Right,
            Wing::Right => Wing::Left,
        }
    }

    pub fn output_edge(self) -> EdgeId {
        match self {
            Wing::Left => EdgeId::from("l_out"),
            Wing::Right => EdgeId::from("r_out"),
        }
    }
}

impl fmt::Display for Wing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Wing::Left => "left",
            Wing::Right => "right",
        })
    }
}

/// h-cell solutions for a choice of the three inputs.
pub fn h_cell_solutions(t: InputTriple) -> Vec<Assignment> {
    h_cell_solver()
        .complete(&t.to_assignment())
        .expect("h-cell inputs are h-cell edges")
        .solutions
}

pub(crate) fn hidden_of(a: &Assignment) -> HiddenState {
    HiddenState::new(a[&EdgeId::from("h_left")], a[&EdgeId::from("h_right")])
}

/// Hidden states compatible with the given inputs.
pub fn hidden_state_set(t: InputTriple) -> BTreeSet<HiddenState> {
    h_cell_solutions(t).iter().map(hidden_of).collect()
}

/// Flavors the edge `edge` takes across the h-cell solutions for `t`.
pub fn output_set(t: InputTriple, edge: &EdgeId) -> BTreeSet<Flavor> {
    h_cell_solutions(t).iter().map(|a| a[edge]).collect()
}

/// A flavor relabeling, optionally followed by a left/right swap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Transform {
    #[serde(serialize_with = "serialize_display")]
    pub permutation: FlavorPermutation,
    pub reflected: bool,
}

impl Transform {
    pub fn apply(&self, t: InputTriple) -> InputTriple {
        let image = t.permuted(&self.permutation);
        if self.reflected {
            image.reflected()
        } else {
            image
        }
    }
}

fn serialize_display<T: fmt::Display, S: Serializer>(v: &T, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

/// The orbit representative of `t`: among its images with center `A`, the
/// least by `(left, right)`. Also returns the first transform (permutations
/// in [`FlavorPermutation::all`] order, unreflected first) that produces it.
pub fn canonicalize_inputs(t: InputTriple) -> (InputTriple, Transform) {
    let mut best: Option<(InputTriple, Transform)> = None;
    for permutation in FlavorPermutation::all() {
        for reflected in [false, true] {
            let transform = Transform {
                permutation,
                reflected,
            };
            let image = transform.apply(t);
            if image.center != Flavor::A {
                continue;
            }
            if best.is_none_or(|(b, _)| (image.left, image.right) < (b.left, b.right)) {
                best = Some((image, transform));
            }
        }
    }
    best.expect("some permutation sends the center to A")
}

/// The distinct canonical forms of all 27 input triples, ascending.
pub fn input_classes() -> Vec<InputTriple> {
    let classes: BTreeSet<_> = InputTriple::all().map(|t| canonicalize_inputs(t).0).collect();
    classes.into_iter().collect()
}

/// Which hidden states each input class admits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StateTable {
    pub columns: [HiddenState; 3],
    pub rows: Vec<(InputTriple, [bool; 3])>,
}

impl StateTable {
    pub fn allowed(&self, inputs: InputTriple, hidden: HiddenState) -> Option<bool> {
        let col = self.columns.iter().position(|h| *h == hidden)?;
        self.rows
            .iter()
            .find(|(t, _)| *t == inputs)
            .map(|(_, cells)| cells[col])
    }
}

pub fn state_table() -> StateTable {
    let columns = production_completions(Flavor::A).map(|(l, r)| HiddenState::new(l, r));
    let rows = input_classes()
        .into_iter()
        .map(|t| {
            let admitted = hidden_state_set(t);
            (t, columns.map(|h| admitted.contains(&h)))
        })
        .collect();
    StateTable { columns, rows }
}

/// A single wing-input change that alters the admissible hidden states.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RetroWitness {
    pub base: InputTriple,
    pub changed_input: Wing,
    pub new_value: Flavor,
    pub lost_hidden: BTreeSet<HiddenState>,
    pub gained_hidden: BTreeSet<HiddenState>,
}

fn single_changes() -> impl Iterator<Item = (InputTriple, Wing, Flavor)> {
    input_classes().into_iter().flat_map(|base| {
        [Wing::Left, Wing::Right].into_iter().flat_map(move |side| {
            Flavor::ALL
                .into_iter()
                .filter(move |v| *v != base.wing(side))
                .map(move |v| (base, side, v))
        })
    })
}

/// Every change of one wing input, from each canonical input class, that
/// changes the admissible hidden states. Ordered by base, wing, new value.
pub fn retro_witnesses() -> Vec<RetroWitness> {
    single_changes()
        .filter_map(|(base, side, new_value)| {
            let before = hidden_state_set(base);
            let after = hidden_state_set(base.with_wing(side, new_value));
            let lost: BTreeSet<_> = before.difference(&after).copied().collect();
            let gained: BTreeSet<_> = after.difference(&before).copied().collect();
            (!lost.is_empty() || !gained.is_empty()).then_some(RetroWitness {
                base,
                changed_input: side,
                new_value,
                lost_hidden: lost,
                gained_hidden: gained,
            })
        })
        .collect()
}

/// A wing-input change that alters the admissible outputs on the other wing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NonlocalityWitness {
    pub base: InputTriple,
    pub changed_input: Wing,
    pub new_value: Flavor,
    pub remote_output: EdgeId,
    pub before: BTreeSet<Flavor>,
    pub after: BTreeSet<Flavor>,
}

pub fn nonlocality_witnesses() -> Vec<NonlocalityWitness> {
    single_changes()
        .filter_map(|(base, side, new_value)| {
            let remote_output = side.opposite().output_edge();
            let before = output_set(base, &remote_output);
            let after = output_set(base.with_wing(side, new_value), &remote_output);
            (before != after).then_some(NonlocalityWitness {
                base,
                changed_input: side,
                new_value,
                remote_output,
                before,
                after,
            })
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub scenario: Scenario,
    /// Intervention values (plus any background constraints) that admit no
    /// completion.
    pub inputs: Assignment,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub family: String,
    /// Largest chain length swept; `None` for a single user structure.
    pub max_cells: Option<usize>,
    /// Intervention assignments examined.
    pub checked: u64,
    pub counterexample: Option<Counterexample>,
}

impl ConsistencyReport {
    pub fn is_consistent(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Visits every total assignment of `edges` in ascending order until `f`
/// returns `false`.
pub fn for_each_assignment(edges: &[EdgeId], mut f: impl FnMut(&Assignment) -> Result<bool>) -> Result<()> {
    let mut digits = vec![0usize; edges.len()];
    loop {
        let a: Assignment = edges
            .iter()
            .zip(&digits)
            .map(|(e, d)| (e.clone(), Flavor::from_index(*d)))
            .collect();
        if !f(&a)? {
            return Ok(());
        }
        // odometer, last edge fastest
        let mut i = digits.len();
        loop {
            if i == 0 {
                return Ok(());
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < 3 {
                break;
            }
            digits[i] = 0;
        }
    }
}

/// Checks every intervention assignment of `scenario` (combined with the
/// fixed `background` values) for at least one admissible completion.
/// Returns the number checked and the least failing assignment, if any.
pub fn sweep_scenario(
    scenario: &Scenario,
    background: &Assignment,
) -> Result<(u64, Option<Assignment>)> {
    let solver = Solver::new(&scenario.structure)?;
    let interventions: Vec<EdgeId> = scenario
        .interventions()
        .into_iter()
        .filter(|e| !background.contains_key(e))
        .collect();
    let mut checked = 0;
    let mut failure = None;
    for_each_assignment(&interventions, |inputs| {
        checked += 1;
        let mut partial = background.clone();
        partial.extend(inputs.iter().map(|(e, f)| (e.clone(), *f)));
        if solver.satisfiable(&partial)? {
            Ok(true)
        } else {
            failure = Some(partial);
            Ok(false)
        }
    })?;
    Ok((checked, failure))
}

/// Sweeps `build_chain(k)` for `k = 1..=max_cells`, stopping at the first
/// counterexample.
pub fn consistency_sweep(max_cells: usize) -> Result<ConsistencyReport> {
    if max_cells == 0 {
        return Err(crate::error::Error::contract("max_cells must be at least 1"));
    }
    let mut checked = 0;
    for k in 1..=max_cells {
        let chain = build_chain(k)?;
        let (n, failure) = sweep_scenario(&chain, &Assignment::new())?;
        checked += n;
        if let Some(inputs) = failure {
            return Ok(ConsistencyReport {
                family: format!("chain(1..={max_cells})"),
                max_cells: Some(max_cells),
                checked,
                counterexample: Some(Counterexample {
                    scenario: chain,
                    inputs,
                }),
            });
        }
    }
    Ok(ConsistencyReport {
        family: format!("chain(1..={max_cells})"),
        max_cells: Some(max_cells),
        checked,
        counterexample: None,
    })
}

/// Sweeps one user-supplied scenario, holding `background` fixed.
pub fn consistency_of(
    family: impl Into<String>,
    scenario: &Scenario,
    background: &Assignment,
) -> Result<ConsistencyReport> {
    let (checked, failure) = sweep_scenario(scenario, background)?;
    Ok(ConsistencyReport {
        family: family.into(),
        max_cells: None,
        checked,
        counterexample: failure.map(|inputs| Counterexample {
            scenario: scenario.clone(),
            inputs,
        }),
    })
}
