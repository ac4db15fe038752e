use super::{compensated_sum, CostTable, Matching};
use crate::error::{Error, Result};

/// Exact min-sum perfect matching (Hungarian method with potentials,
/// O(n^3)). `total_cost` is the compensated sum of the chosen edge costs.
pub fn min_cost_perfect_matching<F>(left: usize, right: usize, cost: F) -> Result<Matching>
where
    F: Fn(usize, usize) -> f64,
{
    if left != right {
        return Err(Error::SizeMismatch { left, right });
    }
    let n = left;
    let table = CostTable::new(n, n, cost);

    // 1-based rows/columns; column 0 is the virtual root.
    let mut u = vec![0.0f64; n + 1];
    let mut v = vec![0.0f64; n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    let mut min_slack = vec![f64::INFINITY; n + 1];
    let mut used = vec![false; n + 1];

    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0usize;
        min_slack.iter_mut().for_each(|s| *s = f64::INFINITY);
        used.iter_mut().for_each(|b| *b = false);
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0usize;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = table.get(i0 - 1, j - 1) - u[i0] - v[j];
                if cur < min_slack[j] {
                    min_slack[j] = cur;
                    way[j] = j0;
                }
                if min_slack[j] < delta {
                    delta = min_slack[j];
                    j1 = j;
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[row_of[j]] += delta;
                    v[j] -= delta;
                } else {
                    min_slack[j] -= delta;
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0usize; n];
    for j in 1..=n {
        assignment[row_of[j] - 1] = j - 1;
    }
    let total = compensated_sum(assignment.iter().enumerate().map(|(i, &j)| table.get(i, j)));
    let mut m = Matching::from_assignment(assignment);
    m.total_cost = Some(total);
    Ok(m)
}
