//! Polynomial-time solvers for the tractable topology combinations.

mod hungarian;
pub mod line_line;
pub mod line_tree;
pub mod oversub_tree;
pub mod star_pn;
pub mod star_vn;

use serde::Serialize;

use crate::model::Embedding;

pub use hungarian::{min_cost_assignment, Assignment};
pub use line_line::solve_weighted_line_on_uniform_line;
pub use line_tree::solve_uniform_line_on_tree_wcvne;
pub use oversub_tree::solve_oversub_2star_on_tree_wcvne;
pub use star_pn::solve_on_star_pn_wcvne;
pub use star_vn::solve_star_vn_wvne;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Solution {
    pub cost: u64,
    pub witness: Embedding,
}

/// Outcome of a solver or the oracle.
///
/// `Feasible` is used for capacity-only problems, where any embedding that
/// respects capacities answers the question and cost is only informational.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveResult {
    Optimal(Solution),
    Feasible(Solution),
    Infeasible,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Optimal,
    Feasible,
    Infeasible,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Optimal => "optimal",
            Status::Feasible => "feasible",
            Status::Infeasible => "infeasible",
        }
    }
}

impl SolveResult {
    pub fn status(&self) -> Status {
        match self {
            SolveResult::Optimal(_) => Status::Optimal,
            SolveResult::Feasible(_) => Status::Feasible,
            SolveResult::Infeasible => Status::Infeasible,
        }
    }

    pub fn solution(&self) -> Option<&Solution> {
        match self {
            SolveResult::Optimal(s) | SolveResult::Feasible(s) => Some(s),
            SolveResult::Infeasible => None,
        }
    }

    pub fn into_solution(self) -> Option<Solution> {
        match self {
            SolveResult::Optimal(s) | SolveResult::Feasible(s) => Some(s),
            SolveResult::Infeasible => None,
        }
    }

    pub fn cost(&self) -> Option<u64> {
        self.solution().map(|s| s.cost)
    }

    pub fn witness(&self) -> Option<&Embedding> {
        self.solution().map(|s| &s.witness)
    }

    pub fn is_feasible(&self) -> bool {
        !matches!(self, SolveResult::Infeasible)
    }
}
