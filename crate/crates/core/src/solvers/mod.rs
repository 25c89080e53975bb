//! Certified backtracking solvers for pair partitions with prescribed
//! differences (in `Z/(n)` and in `(F_p)^k`) and for translate packing.
//!
//! Every solver is complete: `Infeasible` is only reported after the whole
//! search tree has been exhausted, and the node count is returned with it.
//! Solutions are re-checked by the independent `verify_*` functions.

mod packing;
mod pairs;
mod vectors;

use serde::{Deserialize, Serialize};

pub use packing::{
    check_packing_hypotheses, packing_to_partition, partition_as_packing, solve_translate_packing,
    verify_packing, Ambient, Guarantee, HypothesisReport, PackingInstance,
};
pub use pairs::{
    solve_pair_partition, verify_pair_partition, PairPartition, PartitionInstance, Universe,
};
pub use vectors::{
    solve_vector_pairing, solve_vector_partition, verify_vector_partition, VectorPartition,
    VectorPartitionInstance,
};

/// Result of a complete search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum Outcome<T> {
    Feasible { solution: T, nodes: u64 },
    Infeasible { nodes: u64 },
}

impl<T> Outcome<T> {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Outcome::Feasible { .. })
    }

    pub fn solution(&self) -> Option<&T> {
        match self {
            Outcome::Feasible { solution, .. } => Some(solution),
            Outcome::Infeasible { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            Outcome::Feasible { nodes, .. } | Outcome::Infeasible { nodes } => *nodes,
        }
    }
}

/// Groups equal values, keeping first-appearance order of the input indices.
/// Returns the distinct values in ascending order with their index queues.
pub(crate) fn multiset_classes<T: Ord + Clone>(items: &[T]) -> Vec<(T, Vec<usize>)> {
    let mut classes: Vec<(T, Vec<usize>)> = Vec::new();
    for (i, item) in items.iter().enumerate() {
        match classes.binary_search_by(|(v, _)| v.cmp(item)) {
            Ok(pos) => classes[pos].1.push(i),
            Err(pos) => classes.insert(pos, (item.clone(), vec![i])),
        }
    }
    classes
}
