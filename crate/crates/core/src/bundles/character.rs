//! Formal characters of the Levi `GL_r x GL_{n-r}`. Used for Schur functors
//! of irreducible bundles that have no closed form (plethysm cases): take the
//! weight multiset, apply the Schur polynomial, and peel off highest weights.

use std::collections::BTreeMap;

use crate::weights::{GLWeight, Partition};

/// Weight (first `r` entries for `S^∨`, the rest for `Q`) to multiplicity.
pub(crate) type Character = BTreeMap<Vec<i64>, u64>;

/// Calls `f` with the content vector of every semistandard tableau of shape
/// `shape` with entries in `0..alphabet`.
fn for_each_ssyt_content(shape: &Partition, alphabet: usize, mut f: impl FnMut(&[u32])) {
    let cells: Vec<(usize, usize)> = (0..shape.len())
        .flat_map(|i| (0..shape.part(i) as usize).map(move |j| (i, j)))
        .collect();
    let width = shape.part(0) as usize;
    let mut grid = vec![vec![0usize; width]; shape.len()];
    let mut content = vec![0u32; alphabet];

    #[allow(clippy::too_many_arguments)]
    fn rec(
        k: usize,
        cells: &[(usize, usize)],
        grid: &mut Vec<Vec<usize>>,
        content: &mut Vec<u32>,
        alphabet: usize,
        f: &mut dyn FnMut(&[u32]),
    ) {
        if k == cells.len() {
            f(content);
            return;
        }
        let (i, j) = cells[k];
        let lo_row = if j > 0 { grid[i][j - 1] } else { 0 };
        let lo_col = if i > 0 { grid[i - 1][j] + 1 } else { 0 };
        for v in lo_row.max(lo_col)..alphabet {
            grid[i][j] = v;
            content[v] += 1;
            rec(k + 1, cells, grid, content, alphabet, f);
            content[v] -= 1;
        }
    }

    if shape.len() > alphabet {
        return;
    }
    rec(0, &cells, &mut grid, &mut content, alphabet, &mut f);
}

/// Weights of the irreducible `GL_m` module with highest weight `w`.
fn block_character(w: &GLWeight) -> BTreeMap<Vec<i64>, u64> {
    let shift = w.last();
    let shape = w.shift(-shift).to_partition().unwrap();
    let mut out = BTreeMap::new();
    for_each_ssyt_content(&shape, w.len(), |c| {
        let weight: Vec<i64> = c.iter().map(|&x| x as i64 + shift).collect();
        *out.entry(weight).or_insert(0) += 1;
    });
    out
}

pub(crate) fn irreducible_character(alpha: &GLWeight, beta: &GLWeight) -> Character {
    let a = block_character(alpha);
    let b = block_character(beta);
    let mut out = Character::new();
    for (wa, ma) in &a {
        for (wb, mb) in &b {
            let mut w = wa.clone();
            w.extend_from_slice(wb);
            *out.entry(w).or_insert(0) += ma * mb;
        }
    }
    out
}

/// `s_lambda` evaluated on the weight multiset of `chi`.
pub(crate) fn schur_of_character(lambda: &Partition, chi: &Character, len: usize) -> Character {
    let basis: Vec<&Vec<i64>> = chi
        .iter()
        .flat_map(|(w, &m)| std::iter::repeat_n(w, m as usize))
        .collect();
    let mut out = Character::new();
    for_each_ssyt_content(lambda, basis.len(), |c| {
        let mut w = vec![0i64; len];
        for (idx, &times) in c.iter().enumerate() {
            if times > 0 {
                for (acc, x) in w.iter_mut().zip(basis[idx]) {
                    *acc += x * times as i64;
                }
            }
        }
        *out.entry(w).or_insert(0) += 1;
    });
    out
}

/// Splits a character into irreducibles by repeatedly removing the
/// character of its lexicographically largest weight, which is always a
/// highest weight.
pub(crate) fn decompose(mut chi: Character, r: usize) -> Vec<(GLWeight, GLWeight, u64)> {
    let mut out = Vec::new();
    while let Some((top, &mult)) = chi.iter().next_back() {
        let top = top.clone();
        let alpha = GLWeight::new(top[..r].to_vec()).expect("highest weight is dominant");
        let beta = GLWeight::new(top[r..].to_vec()).expect("highest weight is dominant");
        for (w, m) in irreducible_character(&alpha, &beta) {
            let slot = chi.get_mut(&w).expect("character is a sum of irreducibles");
            *slot -= m * mult;
            if *slot == 0 {
                chi.remove(&w);
            }
        }
        out.push((alpha, beta, mult));
    }
    out
}
