//! Bipartite perfect matchings on `n × n` graphs given by a predicate.

use std::collections::VecDeque;

const NONE: usize = usize::MAX;

/// Maximum matching by Hopcroft–Karp; `Some(row → column)` when perfect.
pub(crate) fn perfect_matching(
    n: usize,
    allowed: impl Fn(usize, usize) -> bool,
) -> Option<Vec<usize>> {
    let adj: Vec<Vec<usize>> = (0..n)
        .map(|i| (0..n).filter(|&j| allowed(i, j)).collect())
        .collect();
    let mut row_to_col = vec![NONE; n];
    let mut col_to_row = vec![NONE; n];
    let mut dist = vec![0usize; n];
    let mut matched = 0;
    loop {
        // BFS layers from the free rows
        let mut queue = VecDeque::new();
        for i in 0..n {
            if row_to_col[i] == NONE {
                dist[i] = 0;
                queue.push_back(i);
            } else {
                dist[i] = NONE;
            }
        }
        let mut found = false;
        while let Some(i) = queue.pop_front() {
            for &j in &adj[i] {
                let r = col_to_row[j];
                if r == NONE {
                    found = true;
                } else if dist[r] == NONE {
                    dist[r] = dist[i] + 1;
                    queue.push_back(r);
                }
            }
        }
        if !found {
            break;
        }
        for i in 0..n {
            if row_to_col[i] == NONE
                && augment(i, &adj, &mut dist, &mut row_to_col, &mut col_to_row)
            {
                matched += 1;
            }
        }
    }
    (matched == n).then_some(row_to_col)
}

fn augment(
    i: usize,
    adj: &[Vec<usize>],
    dist: &mut [usize],
    row_to_col: &mut [usize],
    col_to_row: &mut [usize],
) -> bool {
    for &j in &adj[i] {
        let r = col_to_row[j];
        if r == NONE || (dist[r] == dist[i] + 1 && augment(r, adj, dist, row_to_col, col_to_row)) {
            row_to_col[i] = j;
            col_to_row[j] = i;
            return true;
        }
    }
    dist[i] = NONE;
    false
}

/// Turns a perfect matching into the lexicographically smallest one of the
/// same graph by fixing rows in order, each to its smallest column that
/// still extends to a perfect matching.
pub(crate) fn lex_smallest(
    n: usize,
    allowed: impl Fn(usize, usize) -> bool,
    mut row_to_col: Vec<usize>,
) -> Vec<usize> {
    let mut col_to_row = vec![NONE; n];
    for (i, &j) in row_to_col.iter().enumerate() {
        col_to_row[j] = i;
    }
    for i in 0..n {
        for j in 0..n {
            if row_to_col[i] == j {
                break;
            }
            // columns owned by rows before i are fixed
            if !allowed(i, j) || col_to_row[j] < i {
                continue;
            }
            let (old_rows, old_cols) = (row_to_col.clone(), col_to_row.clone());
            let freed = row_to_col[i];
            let orphan = col_to_row[j];
            row_to_col[i] = j;
            col_to_row[j] = i;
            col_to_row[freed] = NONE;
            row_to_col[orphan] = NONE;
            let mut seen = vec![false; n];
            if repair(
                orphan,
                i,
                &allowed,
                &mut seen,
                &mut row_to_col,
                &mut col_to_row,
            ) {
                break;
            }
            row_to_col = old_rows;
            col_to_row = old_cols;
        }
    }
    row_to_col
}

fn repair(
    r: usize,
    fixed_upto: usize,
    allowed: &impl Fn(usize, usize) -> bool,
    seen: &mut [bool],
    row_to_col: &mut [usize],
    col_to_row: &mut [usize],
) -> bool {
    for k in 0..seen.len() {
        let owner = col_to_row[k];
        if seen[k] || !allowed(r, k) || (owner != NONE && owner <= fixed_upto) {
            continue;
        }
        seen[k] = true;
        if owner == NONE || repair(owner, fixed_upto, allowed, seen, row_to_col, col_to_row) {
            row_to_col[r] = k;
            col_to_row[k] = r;
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::permutation::Permutation;
    use proptest::prelude::*;

    fn is_perfect(n: usize, allowed: &dyn Fn(usize, usize) -> bool, m: &[usize]) -> bool {
        let mut cols = m.to_vec();
        cols.sort_unstable();
        cols == (0..n).collect::<Vec<_>>() && m.iter().enumerate().all(|(i, &j)| allowed(i, j))
    }

    #[test]
    fn small_graphs() {
        assert_eq!(perfect_matching(0, |_, _| true), Some(vec![]));
        assert_eq!(perfect_matching(2, |i, _| i == 0), None);
        let m = perfect_matching(3, |i, j| i != j).unwrap();
        assert_eq!(lex_smallest(3, |i, j| i != j, m), vec![1, 2, 0]);
    }

    proptest! {
        #[test]
        fn agrees_with_exhaustive_search(n in 1usize..7, bits in any::<u64>()) {
            let allowed = |i: usize, j: usize| bits >> (i * 7 + j) & 1 == 1 || (bits >> 60) as usize % n == (i + j) % n;
            let first = Permutation::all(n)
                .map(|p| p.zero_based().to_vec())
                .find(|m| m.iter().enumerate().all(|(i, &j)| allowed(i, j)));
            let got = perfect_matching(n, allowed);
            prop_assert_eq!(got.is_some(), first.is_some());
            if let Some(m) = got {
                prop_assert!(is_perfect(n, &allowed, &m));
                prop_assert_eq!(Some(lex_smallest(n, allowed, m)), first);
            }
        }
    }
}
