//! Determinants of upper Hessenberg matrices by expansion along the last
//! column:
//!
//! ```text
//! det H_m = h_{m,m} det H_{m-1}
//!         + Σ_{j=1}^{m-1} (-1)^(m-j) h_{j,m} (Π_{l=j}^{m-1} h_{l+1,l}) det H_{j-1}
//! ```
//!
//! with `H_s` the leading principal `s × s` block and `det H_0 = 1`.

use num_traits::{One, Zero};

use crate::exact::ExactScalar;

/// Determinants of all leading principal blocks `H_0, ..., H_m` of the
/// `m × m` upper Hessenberg matrix whose (1-based) entries are produced by
/// `entry(row, col)`. Entries below the subdiagonal are never requested.
pub fn leading_minors<F>(m: usize, mut entry: F) -> Vec<ExactScalar>
where
    F: FnMut(usize, usize) -> ExactScalar,
{
    let mut dets = Vec::with_capacity(m + 1);
    dets.push(ExactScalar::one());
    // subdiag[l] = h_{l+1,l}, 1-based l
    let mut subdiag = vec![ExactScalar::zero()];
    for s in 1..=m {
        if s >= 2 {
            subdiag.push(entry(s, s - 1));
        }
        let mut det = &entry(s, s) * &dets[s - 1];
        // Walk j downward so the subdiagonal product grows one factor at a time.
        let mut chain = ExactScalar::one();
        for j in (1..s).rev() {
            chain = &chain * &subdiag[j];
            if chain.is_zero() {
                break;
            }
            let h = entry(j, s);
            if h.is_zero() || dets[j - 1].is_zero() {
                continue;
            }
            let term = &(&h * &chain) * &dets[j - 1];
            if (s - j) % 2 == 0 {
                det += &term;
            } else {
                det -= &term;
            }
        }
        dets.push(det);
    }
    dets
}

/// Determinant of an upper Hessenberg matrix given by rows.
pub fn determinant(matrix: &[Vec<ExactScalar>]) -> ExactScalar {
    let m = matrix.len();
    leading_minors(m, |r, c| matrix[r - 1][c - 1].clone())
        .pop()
        .expect("minors include H_0")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> ExactScalar {
        ExactScalar::from(v)
    }

    /// Cofactor expansion along the first row; exponential, test sizes only.
    fn cofactor_det(m: &[Vec<ExactScalar>]) -> ExactScalar {
        if m.is_empty() {
            return ExactScalar::one();
        }
        let mut total = ExactScalar::zero();
        for c in 0..m.len() {
            let minor: Vec<Vec<ExactScalar>> = m[1..]
                .iter()
                .map(|row| {
                    row.iter()
                        .enumerate()
                        .filter(|&(j, _)| j != c)
                        .map(|(_, v)| v.clone())
                        .collect()
                })
                .collect();
            let term = &m[0][c] * &cofactor_det(&minor);
            if c % 2 == 0 {
                total += &term;
            } else {
                total -= &term;
            }
        }
        total
    }

    #[test]
    fn matches_cofactor_expansion() {
        let mut seed = 7i64;
        let mut next = || {
            seed = (seed * 1103515245 + 12345) % 2147483648;
            ExactScalar::ratio(seed % 19 - 9, seed % 5 + 1)
        };
        for m in 0..=6 {
            let matrix: Vec<Vec<ExactScalar>> = (0..m)
                .map(|r| {
                    (0..m)
                        .map(|c| if r > c + 1 { ExactScalar::zero() } else { next() })
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&matrix), cofactor_det(&matrix), "m={m}");
        }
    }

    #[test]
    fn small_cases() {
        assert_eq!(determinant(&[]), int(1));
        assert_eq!(determinant(&[vec![int(5)]]), int(5));
        let m = vec![vec![int(1), int(2)], vec![int(-1), int(3)]];
        assert_eq!(determinant(&m), int(5));
    }
}
