#![allow(dead_code)]

use hypermotive::{Arrangement, Field};

/// Integer rows `[constant, a_1, ..., a_N]` of the test corpus.
pub fn corpus_rows() -> Vec<(&'static str, usize, Vec<Vec<i64>>)> {
    vec![
        ("gm", 1, vec![vec![0, 1]]),
        ("p", 1, vec![vec![0, 1], vec![-1, 1]]),
        ("three_points", 1, vec![vec![0, 1], vec![-1, 1], vec![1, 1]]),
        ("boolean_2", 2, vec![vec![0, 1, 0], vec![0, 0, 1]]),
        ("t", 2, vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, -1]]),
        ("l2", 2, vec![vec![0, 1, 0], vec![-1, 1, 0]]),
        (
            "generic_4_lines",
            2,
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![-1, 1, 1], vec![3, 1, -2]],
        ),
        ("braid_3", 3, vec![vec![0, 1, -1, 0], vec![0, 0, 1, -1], vec![0, 1, 0, -1]]),
        ("boolean_3", 3, vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1]]),
        (
            "square_grid_diagonal",
            2,
            vec![vec![0, 1, 0], vec![-1, 1, 0], vec![0, 0, 1], vec![-1, 0, 1], vec![0, 1, 1]],
        ),
        (
            "pencil_4",
            2,
            vec![vec![0, 1, 0], vec![0, 0, 1], vec![0, 1, -1], vec![0, 1, 1]],
        ),
        (
            "parallel_family",
            2,
            vec![vec![0, 1, 0], vec![-1, 1, 0], vec![-2, 1, 0], vec![0, 0, 1]],
        ),
        (
            "generic_3_space",
            3,
            vec![vec![0, 1, 0, 0], vec![0, 0, 1, 0], vec![0, 0, 0, 1], vec![-1, 1, 1, 1]],
        ),
        (
            "braid_with_coordinate",
            3,
            vec![vec![0, 1, -1, 0], vec![0, 0, 1, -1], vec![0, 1, 0, -1], vec![0, 1, 0, 0]],
        ),
        (
            "simplex_4",
            4,
            vec![
                vec![0, 1, 0, 0, 0],
                vec![0, 0, 1, 0, 0],
                vec![0, 0, 0, 1, 0],
                vec![0, 0, 0, 0, 1],
                vec![-1, 1, 1, 1, 1],
            ],
        ),
        (
            "mixed_3_space",
            3,
            vec![
                vec![0, 1, 0, 0],
                vec![-1, 1, 0, 0],
                vec![0, 0, 1, 0],
                vec![0, 1, 1, 0],
                vec![-1, 0, 0, 1],
            ],
        ),
    ]
}

pub fn build(field: &Field, dimension: usize, rows: &[Vec<i64>]) -> hypermotive::Result<Arrangement> {
    let rows: Vec<&[i64]> = rows.iter().map(|r| r.as_slice()).collect();
    Arrangement::from_integer_rows(field.clone(), dimension, &rows)
}

/// The corpus over the rationals.
pub fn corpus() -> Vec<(&'static str, Arrangement)> {
    corpus_rows()
        .into_iter()
        .map(|(name, n, rows)| (name, build(&Field::Rationals, n, &rows).expect("corpus arrangement")))
        .collect()
}

/// The corpus over another field, skipping rows that collapse there.
pub fn corpus_over(field: &Field) -> Vec<(&'static str, Arrangement)> {
    corpus_rows()
        .into_iter()
        .filter_map(|(name, n, rows)| build(field, n, &rows).ok().map(|a| (name, a)))
        .collect()
}

pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}
