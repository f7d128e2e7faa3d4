//! Local rules of the model: the three-letter flavor alphabet, node
//! admissibility, and the flavor symmetry group.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::assignment::Assignment;
use crate::error::{Error, Result};

/// Edge label. The derived order `A < B < C` is used for every canonical
/// ordering in the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Flavor {
    A,
    B,
    C,
}

impl Flavor {
    pub const ALL: [Flavor; 3] = [Flavor::A, Flavor::B, Flavor::C];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Flavor {
        Flavor::ALL[i]
    }

    pub fn as_char(self) -> char {
        match self {
            Flavor::A => 'A',
            Flavor::B => 'B',
            Flavor::C => 'C',
        }
    }

    pub fn from_char(c: char) -> Option<Flavor> {
        match c {
            'A' => Some(Flavor::A),
            'B' => Some(Flavor::B),
            'C' => Some(Flavor::C),
            _ => None,
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_char())
    }
}

impl FromStr for Flavor {
    type Err = Error;

    fn from_str(s: &str) -> Result<Flavor> {
        let mut chars = s.chars();
        match (chars.next().and_then(Flavor::from_char), chars.next()) {
            (Some(f), None) => Ok(f),
            _ => Err(Error::Parse {
                line: 0,
                column: 0,
                message: format!("unknown flavor {s:?} (expected A, B or C)"),
            }),
        }
    }
}

impl Serialize for Flavor {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Flavor::A => "A",
            Flavor::B => "B",
            Flavor::C => "C",
        })
    }
}

impl<'de> Deserialize<'de> for Flavor {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Flavor, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(|_| {
            serde::de::Error::custom(format!("unknown flavor {s:?} (expected A, B or C)"))
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NodeKind {
    /// One input, two outputs.
    Production,
    /// Two inputs, one output.
    Annihilation,
}

impl NodeKind {
    /// The kind seen under time reflection.
    pub fn reflected(self) -> NodeKind {
        match self {
            NodeKind::Production => NodeKind::Annihilation,
            NodeKind::Annihilation => NodeKind::Production,
        }
    }
}

impl fmt::Display for NodeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(match self {
            NodeKind::Production => "production",
            NodeKind::Annihilation => "annihilation",
        })
    }
}

/// The pair of flavors on the two hidden edges of an h-cell, left first.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HiddenState {
    pub left: Flavor,
    pub right: Flavor,
}

impl HiddenState {
    pub fn new(left: Flavor, right: Flavor) -> Self {
        HiddenState { left, right }
    }

    pub fn swapped(self) -> Self {
        HiddenState::new(self.right, self.left)
    }

    pub fn permuted(self, p: &FlavorPermutation) -> Self {
        HiddenState::new(p.apply(self.left), p.apply(self.right))
    }
}

impl fmt::Display for HiddenState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}{}>", self.left, self.right)
    }
}

impl Serialize for HiddenState {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&format!("{}{}", self.left, self.right))
    }
}

/// The three flavors on a node must be all equal or all distinct.
pub fn node_admissible(flavors: &[Flavor]) -> Result<bool> {
    match flavors {
        [x, y, z] => Ok(admissible3(*x, *y, *z)),
        _ => Err(Error::contract(format!(
            "a node has exactly 3 incident flavors, got {}",
            flavors.len()
        ))),
    }
}

#[inline]
pub(crate) fn admissible3(x: Flavor, y: Flavor, z: Flavor) -> bool {
    (x == y && y == z) || (x != y && y != z && x != z)
}

#[inline]
pub(crate) fn homogeneous3(x: Flavor, y: Flavor, z: Flavor) -> bool {
    x == y && y == z
}

/// The flavor that completes two annihilation inputs.
pub fn annihilation_output(in1: Flavor, in2: Flavor) -> Flavor {
    if in1 == in2 {
        in1
    } else {
        // the indices sum to 3 when all three are distinct
        Flavor::from_index(3 - in1.index() - in2.index())
    }
}

/// The three ordered `(left, right)` output pairs a production may emit,
/// sorted under `A < B < C`.
pub fn production_completions(input: Flavor) -> [(Flavor, Flavor); 3] {
    let mut out = [(input, input); 3];
    let mut i = 0;
    for l in Flavor::ALL {
        for r in Flavor::ALL {
            if admissible3(input, l, r) {
                out[i] = (l, r);
                i += 1;
            }
        }
    }
    debug_assert_eq!(i, 3);
    out
}

/// A bijection on `{A, B, C}`, stored as the images of A, B and C.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct FlavorPermutation([Flavor; 3]);

impl FlavorPermutation {
    pub const IDENTITY: FlavorPermutation = FlavorPermutation([Flavor::A, Flavor::B, Flavor::C]);

    pub fn new(images: [Flavor; 3]) -> Result<Self> {
        let mut seen = [false; 3];
        for f in images {
            if std::mem::replace(&mut seen[f.index()], true) {
                return Err(Error::contract(format!(
                    "{}{}{} is not a bijection",
                    images[0], images[1], images[2]
                )));
            }
        }
        Ok(FlavorPermutation(images))
    }

    /// All six permutations, identity first.
    pub fn all() -> [FlavorPermutation; 6] {
        use Flavor::*;
        [
            FlavorPermutation([A, B, C]),
            FlavorPermutation([A, C, B]),
            FlavorPermutation([B, A, C]),
            FlavorPermutation([B, C, A]),
            FlavorPermutation([C, A, B]),
            FlavorPermutation([C, B, A]),
        ]
    }

    pub fn apply(&self, f: Flavor) -> Flavor {
        self.0[f.index()]
    }

    pub fn images(&self) -> [Flavor; 3] {
        self.0
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &FlavorPermutation) -> FlavorPermutation {
        FlavorPermutation(other.0.map(|f| self.apply(f)))
    }

    pub fn inverse(&self) -> FlavorPermutation {
        let mut inv = [Flavor::A; 3];
        for f in Flavor::ALL {
            inv[self.apply(f).index()] = f;
        }
        FlavorPermutation(inv)
    }
}

impl fmt::Display for FlavorPermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}{}", self.0[0], self.0[1], self.0[2])
    }
}

pub fn apply_permutation(p: &FlavorPermutation, a: &Assignment) -> Assignment {
    a.iter().map(|(e, f)| (e.clone(), p.apply(*f))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::assignment::EdgeId;
    use Flavor::*;

    #[test]
    fn admissibility() {
        assert!(node_admissible(&[A, A, A]).unwrap());
        assert!(node_admissible(&[A, B, C]).unwrap());
        assert!(!node_admissible(&[A, A, B]).unwrap());
        assert!(matches!(node_admissible(&[A, B]), Err(Error::Contract(_))));
        assert!(matches!(node_admissible(&[A, B, C, A]), Err(Error::Contract(_))));
    }

    #[test]
    fn annihilation() {
        assert_eq!(annihilation_output(A, A), A);
        assert_eq!(annihilation_output(A, B), C);
        assert_eq!(annihilation_output(C, B), A);
        for x in Flavor::ALL {
            for y in Flavor::ALL {
                let z = annihilation_output(x, y);
                assert_eq!(z, annihilation_output(y, x));
                assert!(admissible3(x, y, z));
                let unique = Flavor::ALL.iter().filter(|&&w| admissible3(x, y, w)).count();
                assert_eq!(unique, 1);
            }
        }
    }

    #[test]
    fn productions() {
        assert_eq!(production_completions(A), [(A, A), (B, C), (C, B)]);
        assert_eq!(production_completions(B), [(A, C), (B, B), (C, A)]);
        assert_eq!(production_completions(C), [(A, B), (B, A), (C, C)]);
        for x in Flavor::ALL {
            let pairs = production_completions(x);
            assert_eq!(pairs.iter().filter(|(l, r)| l == r).count(), 1);
            assert!(pairs.iter().all(|&(l, r)| admissible3(x, l, r)));
        }
    }

    #[test]
    fn permutation_construction() {
        assert!(FlavorPermutation::new([A, A, C]).is_err());
        let p = FlavorPermutation::new([B, C, A]).unwrap();
        assert_eq!(p.compose(&p.inverse()), FlavorPermutation::IDENTITY);
        assert_eq!(p.to_string(), "BCA");
    }

    #[test]
    fn permuting_assignments() {
        let a: Assignment = [(EdgeId::from("e1"), A), (EdgeId::from("e2"), C)]
            .into_iter()
            .collect();
        assert_eq!(apply_permutation(&FlavorPermutation::IDENTITY, &a), a);

        let swap_ab = FlavorPermutation::new([B, A, C]).unwrap();
        let expected: Assignment = [(EdgeId::from("e1"), B), (EdgeId::from("e2"), C)]
            .into_iter()
            .collect();
        assert_eq!(apply_permutation(&swap_ab, &a), expected);

        let cycle = FlavorPermutation::new([B, C, A]).unwrap();
        let single: Assignment = [(EdgeId::from("e1"), A)].into_iter().collect();
        assert_eq!(apply_permutation(&cycle, &single)[&EdgeId::from("e1")], B);
    }

    #[test]
    fn equivariance_and_composition() {
        let a: Assignment = Flavor::ALL
            .iter()
            .enumerate()
            .map(|(i, f)| (EdgeId::from(format!("e{i}").as_str()), *f))
            .collect();
        for p in FlavorPermutation::all() {
            for q in FlavorPermutation::all() {
                assert_eq!(
                    apply_permutation(&p, &apply_permutation(&q, &a)),
                    apply_permutation(&p.compose(&q), &a)
                );
            }
            for x in Flavor::ALL {
                for y in Flavor::ALL {
                    assert_eq!(
                        annihilation_output(p.apply(x), p.apply(y)),
                        p.apply(annihilation_output(x, y))
                    );
                }
            }
        }
    }
}
