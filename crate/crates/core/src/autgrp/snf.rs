//! Smith normal form over the integers, tracking the column transform.

use super::AutError;

/// `S = U·A·V` with `S` diagonal (`s_1 | s_2 | …`), `U`, `V` unimodular.
/// Only `V` is kept; callers never need `U`.
#[derive(Debug, Clone)]
pub struct Smith {
    pub diag: Vec<i128>,
    pub v: Vec<Vec<i128>>,
}

fn ck(x: Option<i128>) -> Result<i128, AutError> {
    x.ok_or(AutError::Overflow)
}

pub fn smith(a: &[Vec<i128>], cols: usize) -> Result<Smith, AutError> {
    let rows = a.len();
    let mut a: Vec<Vec<i128>> = a.to_vec();
    let mut v: Vec<Vec<i128>> = (0..cols).map(|i| (0..cols).map(|j| i128::from(i == j)).collect()).collect();
    let mut diag = Vec::new();

    let swap_cols = |m: &mut Vec<Vec<i128>>, i: usize, j: usize| {
        for row in m.iter_mut() {
            row.swap(i, j);
        }
    };
    // col_j -= q * col_t
    fn col_sub(m: &mut [Vec<i128>], j: usize, t: usize, q: i128) -> Result<(), AutError> {
        for row in m.iter_mut() {
            row[j] = ck(row[j].checked_sub(ck(q.checked_mul(row[t]))?))?;
        }
        Ok(())
    }

    for t in 0..rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for (i, row) in a.iter().enumerate().skip(t) {
            for (j, &x) in row.iter().enumerate().skip(t) {
                if x != 0 && best.is_none_or(|(bi, bj)| x.abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap(t, pi);
        swap_cols(&mut a, t, pj);
        swap_cols(&mut v, t, pj);
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t] / a[t][t];
                    let pivot = a[t].clone();
                    for (x, &y) in a[i][t..].iter_mut().zip(&pivot[t..]) {
                        *x = ck(x.checked_sub(ck(q.checked_mul(y))?))?;
                    }
                    if a[i][t] != 0 {
                        a.swap(t, i);
                        clean = false;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j] / a[t][t];
                    col_sub(&mut a, j, t, q)?;
                    col_sub(&mut v, j, t, q)?;
                    if a[t][j] != 0 {
                        swap_cols(&mut a, t, j);
                        swap_cols(&mut v, t, j);
                        clean = false;
                    }
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold an offending row into row t and go again.
            let p = a[t][t];
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0));
            match bad {
                Some(i) => {
                    let other = a[i].clone();
                    for (x, &y) in a[t][t..].iter_mut().zip(&other[t..]) {
                        *x = ck(x.checked_add(y))?;
                    }
                }
                None => break,
            }
        }
        diag.push(a[t][t].abs());
    }
    Ok(Smith { diag, v })
}
