//! Minimum-cost assignment by shortest augmenting paths with potentials
//! (the Hungarian method), `O(n³)`.

pub(crate) struct Assignment {
    pub row_to_col: Vec<usize>,
    /// Row and column potentials; `cost[i][j] − u[i] − v[j] ≥ 0` with
    /// equality on the assignment, up to rounding.
    pub u: Vec<f64>,
    pub v: Vec<f64>,
}

pub(crate) fn solve(cost: &[Vec<f64>]) -> Assignment {
    let n = cost.len();
    // 1-based internally; index 0 is the virtual start column
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut owner = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        owner[0] = i;
        let mut j0 = 0;
        let mut minv = vec![f64::INFINITY; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = owner[j0];
            let mut delta = f64::INFINITY;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                let cur = cost[i0 - 1][j - 1] - u[i0] - v[j];
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
    Assignment {
        row_to_col,
        u: u[1..].to_vec(),
        v: v[1..].to_vec(),
    }
}
