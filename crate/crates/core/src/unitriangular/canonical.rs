use super::UniMatrix;
use crate::algebra::PrimeField;

/// Brings the strictly-upper part of the dense `n × n` matrix `x` (row-major,
/// position coordinates) to the row/column-sparse member of its superclass.
/// Only legal moves are used: adding a multiple of a lower row to a higher
/// one, and of an earlier column to a later one.
pub fn canonical_superclass_rep_dense(n: usize, f: &PrimeField, x: &mut [u8]) {
    loop {
        let mut changed = false;
        let mut pivot_rows = 0u64;
        for c in 0..n {
            let Some(r) = (0..c).rev().find(|&r| x[r * n + c] != 0 && pivot_rows >> r & 1 == 0) else {
                continue;
            };
            let inv = f.inv(x[r * n + c]);
            for above in 0..r {
                let v = x[above * n + c];
                if v != 0 {
                    let a = f.mul(v, inv);
                    for k in r + 1..n {
                        x[above * n + k] = f.sub(x[above * n + k], f.mul(a, x[r * n + k]));
                    }
                    changed = true;
                }
            }
            for right in c + 1..n {
                let v = x[r * n + right];
                if v != 0 {
                    let a = f.mul(v, inv);
                    for k in 0..c {
                        x[k * n + right] = f.sub(x[k * n + right], f.mul(a, x[k * n + c]));
                    }
                    x[r * n + right] = 0;
                    changed = true;
                }
            }
            pivot_rows |= 1 << r;
        }
        if !changed {
            break;
        }
    }
}

/// The unique member of the superclass of `u` with at most one nonzero
/// off-diagonal entry in each row and each column.
pub fn canonical_superclass_rep(u: &UniMatrix) -> UniMatrix {
    let n = u.n();
    let f = PrimeField::new(u.p()).expect("prime");
    let mut d = u.dense();
    canonical_superclass_rep_dense(n, &f, &mut d);
    UniMatrix::from_dense(u.order().clone(), u.p() as u8, &d)
}
