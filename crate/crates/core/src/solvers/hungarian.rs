//! Exact minimum-cost perfect assignment with shortest augmenting paths.

/// Optimal assignment: `row_to_col[r]` is the column matched to row `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Assignment {
    pub row_to_col: Vec<usize>,
    pub cost: u64,
}

/// Minimum-cost perfect matching on a square matrix; `None` entries are forbidden.
///
/// Forbidden cells are replaced by a constant larger than any permitted
/// total, so the optimum avoids them whenever possible; the result is
/// `None` when every perfect matching needs one. Runs in `O(n^3)`.
pub fn min_cost_assignment(costs: &[Vec<Option<u64>>]) -> Option<Assignment> {
    let n = costs.len();
    assert!(
        costs.iter().all(|row| row.len() == n),
        "cost matrix must be square"
    );
    if n == 0 {
        return Some(Assignment {
            row_to_col: Vec::new(),
            cost: 0,
        });
    }
    let big: i128 = 1 + costs
        .iter()
        .map(|row| row.iter().flatten().copied().max().unwrap_or(0) as i128)
        .sum::<i128>();
    let a = |i: usize, j: usize| costs[i][j].map_or(big, |c| c as i128);

    // 1-indexed potentials; column 0 is the virtual source
    let mut u = vec![0i128; n + 1];
    let mut v = vec![0i128; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for row in 1..=n {
        owner[0] = row;
        let mut j0 = 0;
        let mut minv = vec![i128::MAX; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = i128::MAX;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = a(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < minv[j] {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if minv[j] < delta {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[owner[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if owner[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            owner[j0] = owner[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut row_to_col = vec![0; n];
    for j in 1..=n {
        row_to_col[owner[j] - 1] = j - 1;
    }
    let mut cost = 0u64;
    for (r, &c) in row_to_col.iter().enumerate() {
        cost += costs[r][c]?;
    }
    Some(Assignment { row_to_col, cost })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(costs: &[Vec<Option<u64>>]) -> Option<u64> {
        fn rec(costs: &[Vec<Option<u64>>], row: usize, used: &mut Vec<bool>) -> Option<u64> {
            if row == costs.len() {
                return Some(0);
            }
            let mut best = None;
            for c in 0..costs.len() {
                if used[c] {
                    continue;
                }
                let Some(x) = costs[row][c] else { continue };
                used[c] = true;
                if let Some(rest) = rec(costs, row + 1, used) {
                    best = Some(best.map_or(x + rest, |b: u64| b.min(x + rest)));
                }
                used[c] = false;
            }
            best
        }
        rec(costs, 0, &mut vec![false; costs.len()])
    }

    #[test]
    fn classic_three_by_three() {
        let m = vec![
            vec![Some(4), Some(1), Some(3)],
            vec![Some(2), Some(0), Some(5)],
            vec![Some(3), Some(2), Some(2)],
        ];
        let a = min_cost_assignment(&m).unwrap();
        assert_eq!(a.cost, 5);
    }

    #[test]
    fn all_forbidden_column_is_infeasible() {
        let m = vec![vec![Some(1), None], vec![Some(1), None]];
        assert_eq!(min_cost_assignment(&m), None);
    }

    proptest! {
        #[test]
        fn matches_permutation_search(
            n in 1usize..=6,
            cells in proptest::collection::vec(proptest::option::weighted(0.8, 0u64..50), 36),
        ) {
            let m: Vec<Vec<Option<u64>>> = (0..n).map(|r| cells[r * 6..r * 6 + n].to_vec()).collect();
            let got = min_cost_assignment(&m);
            prop_assert_eq!(got.as_ref().map(|a| a.cost), brute(&m));
            if let Some(a) = got {
                let mut cols = a.row_to_col.clone();
                cols.sort_unstable();
                prop_assert_eq!(cols, (0..n).collect::<Vec<_>>());
            }
        }
    }
}
