//! A classical channel from the left output back to the right input of the
//! h-cell, treated as a consistency filter on the cell's solutions.
//!
//! The channel is external to the structure: no node or edge is added, the
//! solutions are simply those h-cell completions whose right input equals
//! the channel's image of the left output.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Serialize, Serializer};

use crate::analysis::{h_cell_solver, hidden_of, hidden_state_set, InputTriple};
use crate::assignment::{Assignment, EdgeId};
use crate::error::{Error, Result};
use crate::flavor::{Flavor, FlavorPermutation, HiddenState};

/// A total map `Flavor -> Flavor`, written as the images of A, B and C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Channel([Flavor; 3]);

impl Channel {
    pub fn new(images: [Flavor; 3]) -> Self {
        Channel(images)
    }

    pub fn constant(f: Flavor) -> Self {
        Channel([f; 3])
    }

    pub fn identity() -> Self {
        Channel(Flavor::ALL)
    }

    /// All 27 channels in ascending order.
    pub fn all() -> impl Iterator<Item = Channel> {
        (0..27).map(|code| {
            Channel([code / 9, (code / 3) % 3, code % 3].map(Flavor::from_index))
        })
    }

    pub fn apply(&self, f: Flavor) -> Flavor {
        self.0[f.index()]
    }

    /// `p ∘ self ∘ p⁻¹`, the channel seen after relabeling flavors by `p`.
    pub fn conjugated(&self, p: &FlavorPermutation) -> Channel {
        let inv = p.inverse();
        Channel(Flavor::ALL.map(|f| p.apply(self.apply(inv.apply(f)))))
    }
}

impl fmt::Display for Channel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Channel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Channel> {
        let flavors: Vec<Flavor> = s.chars().filter_map(Flavor::from_char).collect();
        match flavors.as_slice() {
            [a, b, c] if s.chars().count() == 3 => Ok(Channel([*a, *b, *c])),
            _ => Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("channel {s:?} must be three of A, B, C (images of A, B, C)"),
            }),
        }
    }
}

impl Serialize for Channel {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct LoopSolution {
    pub hidden: HiddenState,
    pub left_out: Flavor,
    pub right_in: Flavor,
    pub right_out: Flavor,
}

impl LoopSolution {
    /// The full h-cell assignment this solution stands for.
    pub fn to_assignment(&self, left_in: Flavor, center_in: Flavor) -> Assignment {
        [
            ("c_in", center_in),
            ("l_in", left_in),
            ("h_left", self.hidden.left),
            ("h_right", self.hidden.right),
            ("l_out", self.left_out),
            ("r_in", self.right_in),
            ("r_out", self.right_out),
        ]
        .into_iter()
        .map(|(e, f)| (EdgeId::from(e), f))
        .collect()
    }

    pub fn permuted(&self, p: &FlavorPermutation) -> LoopSolution {
        LoopSolution {
            hidden: self.hidden.permuted(p),
            left_out: p.apply(self.left_out),
            right_in: p.apply(self.right_in),
            right_out: p.apply(self.right_out),
        }
    }
}

/// h-cell solutions with the given left and center inputs whose right input
/// is `channel(left output)`, ordered by hidden state.
pub fn solve_loop(left_in: Flavor, center_in: Flavor, channel: &Channel) -> Vec<LoopSolution> {
    let partial: Assignment = [(EdgeId::from("l_in"), left_in), (EdgeId::from("c_in"), center_in)]
        .into_iter()
        .collect();
    let solutions = h_cell_solver()
        .complete(&partial)
        .expect("h-cell inputs are h-cell edges")
        .solutions;
    let mut out: Vec<LoopSolution> = solutions
        .iter()
        .map(|a| LoopSolution {
            hidden: hidden_of(a),
            left_out: a[&EdgeId::from("l_out")],
            right_in: a[&EdgeId::from("r_in")],
            right_out: a[&EdgeId::from("r_out")],
        })
        .filter(|s| s.right_in == channel.apply(s.left_out))
        .collect();
    out.sort();
    out
}

/// Hidden states some free right input would admit but the channel rules
/// out.
pub fn loop_exclusions(left_in: Flavor, center_in: Flavor, channel: &Channel) -> BTreeSet<HiddenState> {
    let baseline: BTreeSet<HiddenState> = Flavor::ALL
        .into_iter()
        .flat_map(|r| hidden_state_set(InputTriple::new(left_in, center_in, r)))
        .collect();
    let kept: BTreeSet<HiddenState> = solve_loop(left_in, center_in, channel)
        .iter()
        .map(|s| s.hidden)
        .collect();
    baseline.difference(&kept).copied().collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopCase {
    pub channel: Channel,
    pub left_in: Flavor,
    pub center_in: Flavor,
    pub solutions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LoopUniversality {
    pub total: usize,
    pub cases: Vec<LoopCase>,
    /// Cases with no loop solution.
    pub failures: Vec<LoopCase>,
}

/// Solves every channel against every left/center input pair.
pub fn loop_universality() -> LoopUniversality {
    let mut cases = Vec::with_capacity(243);
    for channel in Channel::all() {
        for left_in in Flavor::ALL {
            for center_in in Flavor::ALL {
                cases.push(LoopCase {
                    channel,
                    left_in,
                    center_in,
                    solutions: solve_loop(left_in, center_in, &channel).len(),
                });
            }
        }
    }
    let failures = cases.iter().filter(|c| c.solutions == 0).cloned().collect();
    LoopUniversality {
        total: cases.len(),
        cases,
        failures,
    }
}
