//! Enumeration of admissible flavor assignments.
//!
//! The search walks edges in a topological order of their source nodes, so
//! a node's inputs are always assigned before its outputs. A node is checked
//! the moment its last edge is assigned: an annihilation output then has one
//! surviving candidate and a production's second output likewise. A fully
//! assigned homogeneous node is rejected when a neighbor across an internal
//! edge is already fully assigned and homogeneous.
//! [`reference::naive_solutions`] is the definitional oracle the search is
//! tested against.

use crate::assignment::{Assignment, EdgeId};
use crate::error::{Error, Result};
use crate::flavor::{admissible3, homogeneous3, Flavor};
use crate::structure::{validate_topology, Endpoint, Side, Structure};

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveResult {
    /// Total admissible assignments in ascending order.
    pub solutions: Vec<Assignment>,
    /// Candidate flavors tried during the search.
    pub explored: u64,
}

const UNSET: u8 = u8::MAX;

/// A structure compiled to index form for repeated solving.
#[derive(Clone, Debug)]
pub struct Solver {
    edge_ids: Vec<EdgeId>,
    /// Incident edge indices per node.
    nodes: Vec<[usize; 3]>,
    /// Nodes touching each edge.
    edge_nodes: Vec<Vec<usize>>,
    /// Nodes joined to each node by an internal edge.
    neighbors: Vec<Vec<usize>>,
    /// Edge visiting order.
    order: Vec<usize>,
}

impl Solver {
    /// Compiles `s`, which must pass [`validate_topology`].
    pub fn new(s: &Structure) -> Result<Solver> {
        validate_topology(s).into_result()?;

        let edge_ids: Vec<EdgeId> = s.edges().keys().cloned().collect();
        let edge_index = |id: &EdgeId| edge_ids.binary_search(id).expect("edge of structure");
        let node_ids: Vec<_> = s.nodes().keys().cloned().collect();
        let node_index = |id: &crate::assignment::NodeId| {
            node_ids.binary_search(id).expect("node of structure")
        };

        let nodes: Vec<[usize; 3]> = s
            .incident_edges()
            .values()
            .map(|slots| slots.clone().map(|e| edge_index(&e.expect("valid port coverage"))))
            .collect();

        let mut edge_nodes = vec![Vec::new(); edge_ids.len()];
        for (n, slots) in nodes.iter().enumerate() {
            for &e in slots {
                edge_nodes[e].push(n);
            }
        }

        let mut neighbors = vec![Vec::new(); nodes.len()];
        for (_, a, b) in s.adjacency() {
            let (a, b) = (node_index(&a), node_index(&b));
            neighbors[a].push(b);
            neighbors[b].push(a);
        }

        // past terminals first, then each node's outgoing edges in
        // topological order
        let mut order: Vec<usize> = s
            .edges()
            .iter()
            .filter(|(_, e)| e.from.side() == Some(Side::Past))
            .map(|(id, _)| edge_index(id))
            .collect();
        let topo = s.topological_nodes().expect("validated acyclic");
        for node in &topo {
            for (id, e) in s.edges() {
                if matches!(&e.from, Endpoint::Node { node: n, .. } if n == node) {
                    order.push(edge_index(id));
                }
            }
        }
        debug_assert_eq!(order.len(), edge_ids.len());

        Ok(Solver {
            edge_ids,
            nodes,
            edge_nodes,
            neighbors,
            order,
        })
    }

    pub fn edge_ids(&self) -> &[EdgeId] {
        &self.edge_ids
    }

    fn seed(&self, partial: &Assignment) -> Result<Vec<u8>> {
        let mut fixed = vec![UNSET; self.edge_ids.len()];
        for (edge, flavor) in partial {
            let i = self.edge_ids.binary_search(edge).map_err(|_| {
                Error::contract(format!("edge {edge} is not part of the structure"))
            })?;
            fixed[i] = flavor.index() as u8;
        }
        Ok(fixed)
    }

    /// Depth-first search; `visit` returns `false` to stop early.
    fn search(&self, partial: &Assignment, mut visit: impl FnMut(&[u8]) -> bool) -> Result<u64> {
        let fixed = self.seed(partial)?;
        let mut values = vec![UNSET; self.edge_ids.len()];
        let mut explored = 0;
        self.descend(0, &fixed, &mut values, &mut explored, &mut visit);
        Ok(explored)
    }

    fn descend(
        &self,
        depth: usize,
        fixed: &[u8],
        values: &mut [u8],
        explored: &mut u64,
        visit: &mut impl FnMut(&[u8]) -> bool,
    ) -> bool {
        let Some(&edge) = self.order.get(depth) else {
            return visit(values);
        };
        let candidates: &[u8] = if fixed[edge] == UNSET {
            &[0, 1, 2]
        } else {
            std::slice::from_ref(&fixed[edge])
        };
        for &f in candidates {
            *explored += 1;
            values[edge] = f;
            if self.consistent(edge, values) && !self.descend(depth + 1, fixed, values, explored, visit)
            {
                values[edge] = UNSET;
                return false;
            }
        }
        values[edge] = UNSET;
        true
    }

    /// Checks the nodes touching `edge` after it was just assigned.
    fn consistent(&self, edge: usize, values: &[u8]) -> bool {
        for &n in &self.edge_nodes[edge] {
            let [x, y, z] = self.nodes[n].map(|e| values[e]);
            // fewer than three assigned edges always extend to an admissible triple
            if x == UNSET || y == UNSET || z == UNSET {
                continue;
            }
            let (x, y, z) = (fl(x), fl(y), fl(z));
            if !admissible3(x, y, z) {
                return false;
            }
            if homogeneous3(x, y, z) && self.neighbors[n].iter().any(|&m| self.homogeneous(m, values))
            {
                return false;
            }
        }
        true
    }

    fn homogeneous(&self, node: usize, values: &[u8]) -> bool {
        let [x, y, z] = self.nodes[node].map(|e| values[e]);
        x != UNSET && x == y && y == z
    }

    fn to_assignment(&self, values: &[u8]) -> Assignment {
        self.edge_ids
            .iter()
            .zip(values)
            .map(|(e, v)| (e.clone(), fl(*v)))
            .collect()
    }

    pub fn complete(&self, partial: &Assignment) -> Result<SolveResult> {
        let mut solutions = Vec::new();
        let explored = self.search(partial, |values| {
            solutions.push(self.to_assignment(values));
            true
        })?;
        solutions.sort();
        Ok(SolveResult {
            solutions,
            explored,
        })
    }

    pub fn count(&self, partial: &Assignment) -> Result<u64> {
        let mut n = 0;
        self.search(partial, |_| {
            n += 1;
            true
        })?;
        Ok(n)
    }

    /// Whether at least one admissible completion exists.
    pub fn satisfiable(&self, partial: &Assignment) -> Result<bool> {
        let mut found = false;
        self.search(partial, |_| {
            found = true;
            false
        })?;
        Ok(found)
    }

    /// The admissibility predicate on a full value vector indexed like
    /// [`Solver::edge_ids`].
    fn admissible_values(&self, values: &[Flavor]) -> bool {
        let homogeneous = |n: usize| {
            let [x, y, z] = self.nodes[n].map(|e| values[e]);
            homogeneous3(x, y, z)
        };
        self.nodes.iter().enumerate().all(|(n, slots)| {
            let [x, y, z] = slots.map(|e| values[e]);
            admissible3(x, y, z)
                && !(homogeneous(n) && self.neighbors[n].iter().any(|&m| homogeneous(m)))
        })
    }
}

fn fl(v: u8) -> Flavor {
    Flavor::from_index(v as usize)
}

/// True iff every node is admissible and no internal edge joins two
/// homogeneous nodes. `a` must assign every edge of `s`.
pub fn is_admissible(s: &Structure, a: &Assignment) -> Result<bool> {
    let solver = Solver::new(s)?;
    admissible_with(&solver, a)
}

fn admissible_with(solver: &Solver, a: &Assignment) -> Result<bool> {
    let values = solver
        .edge_ids
        .iter()
        .map(|e| {
            a.get(e)
                .copied()
                .ok_or_else(|| Error::contract(format!("assignment leaves edge {e} unassigned")))
        })
        .collect::<Result<Vec<_>>>()?;
    if let Some(extra) = a.keys().find(|e| solver.edge_ids.binary_search(e).is_err()) {
        return Err(Error::contract(format!("edge {extra} is not part of the structure")));
    }
    Ok(solver.admissible_values(&values))
}

/// Every total admissible assignment extending `partial`, ascending.
pub fn complete(s: &Structure, partial: &Assignment) -> Result<SolveResult> {
    Solver::new(s)?.complete(partial)
}

pub fn count_completions(s: &Structure, partial: &Assignment) -> Result<u64> {
    Solver::new(s)?.count(partial)
}

/// Brute-force enumeration kept as the semantic definition of the solver.
pub mod reference {
    use super::*;

    /// Filters all `3^|edges|` total assignments through the admissibility
    /// predicate, keeping those that agree with `partial`.
    pub fn naive_solutions(s: &Structure, partial: &Assignment) -> Result<Vec<Assignment>> {
        let all = naive_admissible(s)?;
        Ok(all
            .into_iter()
            .filter(|a| partial.iter().all(|(e, f)| a.get(e) == Some(f)))
            .collect())
    }

    /// All admissible total assignments, ascending.
    pub fn naive_admissible(s: &Structure) -> Result<Vec<Assignment>> {
        let solver = Solver::new(s)?;
        let n = solver.edge_ids.len();
        let total = 3usize
            .checked_pow(n as u32)
            .filter(|t| *t <= 3usize.pow(16))
            .ok_or_else(|| Error::contract(format!("{n} edges is too many to enumerate naively")))?;
        let mut out = Vec::new();
        let mut values = vec![Flavor::A; n];
        for mut code in 0..total {
            // most significant digit on the first edge keeps output ascending
            for v in values.iter_mut().rev() {
                *v = Flavor::from_index(code % 3);
                code /= 3;
            }
            if solver.admissible_values(&values) {
                out.push(solver.edge_ids.iter().cloned().zip(values.iter().copied()).collect());
            }
        }
        Ok(out)
    }
}
