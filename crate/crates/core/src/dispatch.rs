//! Complexity tables and solver selection.
//!
//! Two tables cover the known cases: one for the cost-only variant and one
//! shared by the two capacitated variants. An instance is placed in a row by
//! its virtual topology and in a column by its physical topology.

use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::model::{Instance, Variant};
use crate::solvers::{
    solve_on_star_pn_wcvne, solve_oversub_2star_on_tree_wcvne, solve_star_vn_wvne,
    solve_uniform_line_on_tree_wcvne, solve_weighted_line_on_uniform_line, SolveResult,
};
use crate::topology::{classify_topology, star_center, TopologyClass, TopologyKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SolverKind {
    StarVn,
    StarPn,
    LineTree,
    OversubTree,
    LineLine,
}

impl SolverKind {
    pub const ALL: [SolverKind; 5] = [
        SolverKind::StarVn,
        SolverKind::StarPn,
        SolverKind::LineTree,
        SolverKind::OversubTree,
        SolverKind::LineLine,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SolverKind::StarVn => "star-vn",
            SolverKind::StarPn => "star-pn",
            SolverKind::LineTree => "line-tree",
            SolverKind::OversubTree => "oversub-tree",
            SolverKind::LineLine => "line-line",
        }
    }

    pub fn from_name(name: &str) -> Option<SolverKind> {
        SolverKind::ALL.into_iter().find(|k| k.as_str() == name)
    }

    pub fn run(self, instance: &Instance) -> Result<SolveResult> {
        match self {
            SolverKind::StarVn => solve_star_vn_wvne(instance),
            SolverKind::StarPn => solve_on_star_pn_wcvne(instance),
            SolverKind::LineTree => solve_uniform_line_on_tree_wcvne(instance),
            SolverKind::OversubTree => solve_oversub_2star_on_tree_wcvne(instance),
            SolverKind::LineLine => solve_weighted_line_on_uniform_line(instance),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Status of one table cell.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Cell {
    Poly(SolverKind),
    /// Polynomial by an algorithm not implemented here.
    External,
    NpComplete,
    Open,
}

impl fmt::Display for Cell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Poly(k) => write!(f, "P: {k}"),
            Cell::External => f.write_str("P: external"),
            Cell::NpComplete => f.write_str("NP-complete"),
            Cell::Open => f.write_str("open"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VnRow {
    UniLine,
    Line,
    UniStar,
    Star,
    Oversub,
    TwoStar,
}

impl VnRow {
    pub const ALL: [VnRow; 6] = [
        VnRow::UniLine,
        VnRow::Line,
        VnRow::UniStar,
        VnRow::Star,
        VnRow::Oversub,
        VnRow::TwoStar,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VnRow::UniLine => "Uni. line",
            VnRow::Line => "Line",
            VnRow::UniStar => "Uni. star",
            VnRow::Star => "Star",
            VnRow::Oversub => "Overs. 2-star",
            VnRow::TwoStar => "2-star",
        }
    }

    pub fn of(class: &TopologyClass) -> Option<VnRow> {
        Some(match (class.kind, class.is_uniform) {
            (TopologyKind::Line, true) => VnRow::UniLine,
            (TopologyKind::Line, false) => VnRow::Line,
            (TopologyKind::Star, true) => VnRow::UniStar,
            (TopologyKind::Star, false) => VnRow::Star,
            (TopologyKind::OversubTwoStar, _) => VnRow::Oversub,
            (TopologyKind::TwoStar, _) => VnRow::TwoStar,
            (TopologyKind::Tree | TopologyKind::Generic, _) => return None,
        })
    }
}

/// Columns of the cost-only table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CostColumn {
    Generic,
    Tree,
    Line,
    UniGeneric,
    UniTree,
    UniLine,
}

impl CostColumn {
    pub const ALL: [CostColumn; 6] = [
        CostColumn::Generic,
        CostColumn::Tree,
        CostColumn::Line,
        CostColumn::UniGeneric,
        CostColumn::UniTree,
        CostColumn::UniLine,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CostColumn::Generic => "Generic PN",
            CostColumn::Tree => "Tree PN",
            CostColumn::Line => "Line PN",
            CostColumn::UniGeneric => "Uni. PN",
            CostColumn::UniTree => "Uni. Tree PN",
            CostColumn::UniLine => "Uni. Line PN",
        }
    }

    pub fn of(class: &TopologyClass) -> CostColumn {
        match (class.kind, class.is_uniform) {
            (TopologyKind::Generic, false) => CostColumn::Generic,
            (TopologyKind::Generic, true) => CostColumn::UniGeneric,
            (TopologyKind::Line, false) => CostColumn::Line,
            (TopologyKind::Line, true) => CostColumn::UniLine,
            (_, false) => CostColumn::Tree,
            (_, true) => CostColumn::UniTree,
        }
    }
}

/// Columns of the capacitated table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CapColumn {
    Generic,
    Tree,
    Line,
    Star,
}

impl CapColumn {
    pub const ALL: [CapColumn; 4] = [
        CapColumn::Generic,
        CapColumn::Tree,
        CapColumn::Line,
        CapColumn::Star,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CapColumn::Generic => "Generic PN",
            CapColumn::Tree => "Tree PN",
            CapColumn::Line => "Line PN",
            CapColumn::Star => "Star PN",
        }
    }

    pub fn of(class: &TopologyClass) -> CapColumn {
        match class.kind {
            TopologyKind::Generic => CapColumn::Generic,
            TopologyKind::Line => CapColumn::Line,
            TopologyKind::Star => CapColumn::Star,
            _ => CapColumn::Tree,
        }
    }
}

pub fn cost_cell(row: VnRow, col: CostColumn) -> Cell {
    use CostColumn as C;
    use SolverKind::*;
    match row {
        VnRow::UniLine => match col {
            C::Generic | C::UniGeneric => Cell::NpComplete,
            _ => Cell::Poly(LineTree),
        },
        VnRow::Line => match col {
            C::UniLine => Cell::Poly(LineLine),
            _ => Cell::NpComplete,
        },
        VnRow::UniStar | VnRow::Star => Cell::Poly(StarVn),
        VnRow::Oversub => match col {
            C::Generic | C::UniGeneric => Cell::NpComplete,
            _ => Cell::Poly(OversubTree),
        },
        VnRow::TwoStar => match col {
            C::UniLine => Cell::Open,
            _ => Cell::NpComplete,
        },
    }
}

pub fn cap_cell(row: VnRow, col: CapColumn) -> Cell {
    use CapColumn as C;
    use SolverKind::*;
    if col == C::Star {
        return Cell::Poly(StarPn);
    }
    match row {
        VnRow::UniLine => match col {
            C::Generic => Cell::NpComplete,
            _ => Cell::Poly(LineTree),
        },
        VnRow::UniStar => match col {
            C::Generic => Cell::External,
            _ => Cell::Poly(OversubTree),
        },
        VnRow::Oversub => match col {
            C::Generic => Cell::NpComplete,
            _ => Cell::Poly(OversubTree),
        },
        VnRow::Line | VnRow::Star | VnRow::TwoStar => Cell::NpComplete,
    }
}

/// What to do with an instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Solver(SolverKind),
    NpHard,
    Open,
    External,
    /// The virtual topology is not covered by either table.
    Uncovered,
}

impl Verdict {
    pub fn solver(self) -> Option<SolverKind> {
        match self {
            Verdict::Solver(k) => Some(k),
            _ => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Solver(k) => write!(f, "{k}"),
            Verdict::NpHard => f.write_str("np-hard (oracle only)"),
            Verdict::Open => f.write_str("open"),
            Verdict::External => f.write_str("external (oracle only)"),
            Verdict::Uncovered => f.write_str("uncovered (oracle only)"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Dispatch {
    pub vn: TopologyClass,
    pub pn: TopologyClass,
    pub row: Option<VnRow>,
    /// Column label in the table that applies to the variant.
    pub column: &'static str,
    pub cell: Option<Cell>,
    pub verdict: Verdict,
}

/// Looks up the table cell for an instance and picks a solver.
///
/// A physical star admits the assignment solver for every virtual topology
/// and every variant, so a star network overrides a non-polynomial cell.
pub fn dispatch(instance: &Instance) -> Dispatch {
    let vn = classify_topology(&instance.vn);
    let pn = classify_topology(&instance.pn);
    let row = VnRow::of(&vn);
    let (column, cell) = match instance.variant {
        Variant::Wvne => {
            let col = CostColumn::of(&pn);
            (col.as_str(), row.map(|r| cost_cell(r, col)))
        }
        Variant::Cvne | Variant::Wcvne => {
            let col = CapColumn::of(&pn);
            (col.as_str(), row.map(|r| cap_cell(r, col)))
        }
    };
    let mut verdict = match cell {
        None => Verdict::Uncovered,
        Some(Cell::Poly(k)) => Verdict::Solver(k),
        Some(Cell::External) => Verdict::External,
        Some(Cell::NpComplete) => Verdict::NpHard,
        Some(Cell::Open) => Verdict::Open,
    };
    if verdict.solver().is_none() && star_center(&instance.pn).is_some() {
        verdict = Verdict::Solver(SolverKind::StarPn);
    }
    Dispatch {
        vn,
        pn,
        row,
        column,
        cell,
        verdict,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct MatrixCell {
    pub table: &'static str,
    pub row: &'static str,
    pub column: &'static str,
    pub cell: String,
}

pub const COST_TABLE: &str = "wvne";
pub const CAP_TABLE: &str = "cvne/wcvne";

/// Every cell of both tables, row-major.
pub fn matrix() -> Vec<MatrixCell> {
    let mut out = Vec::new();
    for row in VnRow::ALL {
        for col in CostColumn::ALL {
            out.push(MatrixCell {
                table: COST_TABLE,
                row: row.as_str(),
                column: col.as_str(),
                cell: cost_cell(row, col).to_string(),
            });
        }
    }
    for row in VnRow::ALL {
        for col in CapColumn::ALL {
            out.push(MatrixCell {
                table: CAP_TABLE,
                row: row.as_str(),
                column: col.as_str(),
                cell: cap_cell(row, col).to_string(),
            });
        }
    }
    out
}

fn render_table(
    out: &mut String,
    title: &str,
    columns: &[&str],
    cell: impl Fn(VnRow, usize) -> Cell,
) {
    let width = 16;
    out.push_str(title);
    out.push('\n');
    out.push_str(&format!("{:<width$}", "VN"));
    for c in columns {
        out.push_str(&format!(" | {c:<width$}"));
    }
    out.push('\n');
    for row in VnRow::ALL {
        out.push_str(&format!("{:<width$}", row.as_str()));
        for i in 0..columns.len() {
            out.push_str(&format!(" | {:<width$}", cell(row, i).to_string()));
        }
        out.push('\n');
    }
}

/// Both tables as aligned plain text.
pub fn render_matrix() -> String {
    let mut out = String::new();
    let cost_cols: Vec<&str> = CostColumn::ALL.iter().map(|c| c.as_str()).collect();
    render_table(&mut out, "wVNE", &cost_cols, |r, i| {
        cost_cell(r, CostColumn::ALL[i])
    });
    out.push('\n');
    let cap_cols: Vec<&str> = CapColumn::ALL.iter().map(|c| c.as_str()).collect();
    render_table(&mut out, "cVNE / wcVNE", &cap_cols, |r, i| {
        cap_cell(r, CapColumn::ALL[i])
    });
    out.lines()
        .map(|l| l.trim_end().to_owned() + "\n")
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Capacity, PhysicalNetwork, VirtualNetwork};

    fn pn(n: usize, edges: &[(usize, usize)], cost: u64) -> PhysicalNetwork {
        let e: Vec<_> = edges
            .iter()
            .map(|&(u, v)| (u, v, cost, Capacity::Unbounded))
            .collect();
        PhysicalNetwork::from_tuples(n, &e).unwrap()
    }

    #[test]
    fn uniform_line_on_tree_uses_line_tree() {
        // spider with legs 1-2, 3-4, 5
        let tree = pn(6, &[(0, 1), (1, 2), (0, 3), (3, 4), (0, 5)], 2);
        let inst = Instance::new(
            Variant::Wcvne,
            None,
            VirtualNetwork::uniform_line(6).unwrap(),
            tree,
        )
        .unwrap();
        assert_eq!(
            dispatch(&inst).verdict,
            Verdict::Solver(SolverKind::LineTree)
        );
    }

    #[test]
    fn weighted_star_on_cycle_is_hard_for_capacities() {
        let vn = VirtualNetwork::from_tuples(4, &[(0, 1, 2), (0, 2, 1), (0, 3, 1)]).unwrap();
        let cycle = pn(4, &[(0, 1), (1, 2), (2, 3), (0, 3)], 1);
        let inst = Instance::new(Variant::Cvne, None, vn, cycle).unwrap();
        let d = dispatch(&inst);
        assert_eq!(d.verdict, Verdict::NpHard);
        assert_eq!(d.verdict.to_string(), "np-hard (oracle only)");
        assert_eq!(
            dispatch(&inst.with_variant(Variant::Wvne)).verdict,
            Verdict::Solver(SolverKind::StarVn)
        );
    }

    #[test]
    fn two_star_on_uniform_line_is_open() {
        let vn = VirtualNetwork::from_tuples(
            6,
            &[(0, 1, 1), (1, 2, 1), (0, 3, 1), (3, 4, 1), (3, 5, 1)],
        )
        .unwrap();
        let line = pn(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)], 1);
        let inst = Instance::new(Variant::Wvne, None, vn, line).unwrap();
        assert_eq!(dispatch(&inst).verdict, Verdict::Open);
    }

    #[test]
    fn star_pn_overrides_hard_cells() {
        let vn = VirtualNetwork::from_tuples(4, &[(0, 1, 3), (1, 2, 1), (2, 3, 2)]).unwrap();
        let star = pn(4, &[(0, 1), (0, 2), (0, 3)], 2);
        let inst = Instance::new(Variant::Wvne, None, vn, star).unwrap();
        let d = dispatch(&inst);
        assert_eq!(d.cell, Some(Cell::NpComplete));
        assert_eq!(d.verdict, Verdict::Solver(SolverKind::StarPn));
    }

    #[test]
    fn matrix_has_sixty_cells_and_one_open() {
        let m = matrix();
        assert_eq!(m.len(), 60);
        assert_eq!(m.iter().filter(|c| c.cell == "open").count(), 1);
        assert!(render_matrix().contains("P: line-tree"));
    }
}
