//! Matrix permanent by Ryser's inclusion–exclusion formula.

use std::ops::Neg;

use num_traits::Num;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Default largest matrix side accepted by [`permanent`].
pub const DEFAULT_PERMANENT_CAP: usize = 20;

/// `Per(M)` with the default size cap.
pub fn permanent<E>(m: &Matrix<E>) -> Result<E>
where
    E: Num + Copy + Neg<Output = E>,
{
    permanent_capped(m, DEFAULT_PERMANENT_CAP)
}

/// `Per(M)` via Ryser's formula, visiting column subsets in Gray-code order
/// so each step updates the row sums by a single column: `O(2ⁿ·n)`.
///
/// `Per(A) = (−1)ⁿ Σ_{S ⊆ cols} (−1)^{|S|} Π_i Σ_{j∈S} a_ij`
pub fn permanent_capped<E>(m: &Matrix<E>, cap: usize) -> Result<E>
where
    E: Num + Copy + Neg<Output = E>,
{
    if !m.is_square() {
        return Err(Error::Dimension(format!(
            "permanent of non-square {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n > cap || n >= 64 {
        return Err(Error::Size {
            what: "permanent side",
            size: n,
            cap: cap.min(63),
        });
    }
    if n == 1 {
        return Ok(m[(0, 0)]);
    }

    let mut row_sums = vec![E::zero(); n];
    let mut total = E::zero();
    let mut gray: u64 = 0;
    for k in 1u64..(1u64 << n) {
        let j = k.trailing_zeros() as usize;
        let bit = 1u64 << j;
        gray ^= bit;
        if gray & bit != 0 {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s = *s + m[(i, j)];
            }
        } else {
            for (i, s) in row_sums.iter_mut().enumerate() {
                *s = *s - m[(i, j)];
            }
        }
        let prod = row_sums.iter().fold(E::one(), |acc, &s| acc * s);
        if gray.count_ones().is_multiple_of(2) {
            total = total + prod;
        } else {
            total = total - prod;
        }
    }
    Ok(if n.is_multiple_of(2) { total } else { -total })
}
