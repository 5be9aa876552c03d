//! Exact linear algebra over ℚ.

use num_rational::BigRational;
use num_traits::Zero;

/// Rank of a rational matrix given as rows, by Gaussian elimination.
pub fn rank(rows: &[Vec<BigRational>]) -> usize {
    let mut m: Vec<Vec<BigRational>> = rows
        .iter()
        .filter(|r| r.iter().any(|x| !x.is_zero()))
        .cloned()
        .collect();
    if m.is_empty() {
        return 0;
    }
    let cols = m.iter().map(Vec::len).max().unwrap_or(0);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| c < m[i].len() && !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        let prow: Vec<BigRational> = m[r].iter().map(|x| x / &pivot).collect();
        for row in m.iter_mut().skip(r + 1) {
            if c < row.len() && !row[c].is_zero() {
                let f = row[c].clone();
                for (j, pv) in prow.iter().enumerate().skip(c) {
                    if j < row.len() {
                        let v = &row[j] - &f * pv;
                        row[j] = v;
                    }
                }
            }
        }
        m[r] = prow;
        r += 1;
        if r == m.len() {
            break;
        }
    }
    r
}
