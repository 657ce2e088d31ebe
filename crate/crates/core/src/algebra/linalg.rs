//! Dense Gaussian elimination over a [`FieldOps`] field.

use alloc::vec::Vec;

use super::FieldOps;

/// Row-echelon reduction in place; returns the rank.
///
/// The pivot in each column is the first nonzero entry at or below the
/// current row. `entries` is row-major with `cols` columns.
pub fn rank_in_place<F: FieldOps>(field: &F, entries: &mut [F::Elem], cols: usize) -> usize {
    if cols == 0 {
        return 0;
    }
    let rows = entries.len() / cols;
    let mut rank = 0;
    for col in 0..cols {
        if rank == rows {
            break;
        }
        let pivot = match (rank..rows).find(|&r| !field.is_zero(entries[r * cols + col])) {
            Some(r) => r,
            None => continue,
        };
        if pivot != rank {
            for c in col..cols {
                entries.swap(pivot * cols + c, rank * cols + c);
            }
        }
        let inv = field
            .inv(entries[rank * cols + col])
            .expect("pivot is nonzero");
        let (head, tail) = entries.split_at_mut((rank + 1) * cols);
        let pivot_row = &head[rank * cols..];
        for row in tail.chunks_exact_mut(cols) {
            let lead = row[col];
            if field.is_zero(lead) {
                continue;
            }
            let factor = field.mul(lead, inv);
            for c in col..cols {
                let pc = pivot_row[c];
                if !field.is_zero(pc) {
                    row[c] = field.sub(row[c], field.mul(factor, pc));
                }
            }
        }
        rank += 1;
    }
    rank
}

pub fn rank<F: FieldOps>(field: &F, entries: &[F::Elem], cols: usize) -> usize {
    let mut work: Vec<F::Elem> = entries.to_vec();
    rank_in_place(field, &mut work, cols)
}

/// Determinant of a square row-major matrix.
pub fn determinant<F: FieldOps>(field: &F, entries: &[F::Elem], n: usize) -> F::Elem {
    assert_eq!(entries.len(), n * n, "determinant of a non-square matrix");
    let mut m: Vec<F::Elem> = entries.to_vec();
    let mut det = field.one();
    for col in 0..n {
        let pivot = match (col..n).find(|&r| !field.is_zero(m[r * n + col])) {
            Some(r) => r,
            None => return field.zero(),
        };
        if pivot != col {
            for c in 0..n {
                m.swap(pivot * n + c, col * n + c);
            }
            det = field.neg(det);
        }
        let p = m[col * n + col];
        det = field.mul(det, p);
        let inv = field.inv(p).expect("pivot is nonzero");
        for r in col + 1..n {
            let factor = field.mul(m[r * n + col], inv);
            if field.is_zero(factor) {
                continue;
            }
            for c in col..n {
                let v = field.mul(factor, m[col * n + c]);
                m[r * n + c] = field.sub(m[r * n + c], v);
            }
        }
    }
    det
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PrimeField;
    use alloc::vec;

    #[test]
    fn rank_of_basic_shapes() {
        let f = PrimeField::new(5).unwrap();
        let n = 6;
        let ones = vec![1u32; n * n];
        assert_eq!(rank(&f, &ones, n), 1);
        let mut id = vec![0u32; n * n];
        for i in 0..n {
            id[i * n + i] = 1;
        }
        assert_eq!(rank(&f, &id, n), n);
        assert_eq!(rank(&f, &vec![0u32; n * n], n), 0);
    }

    #[test]
    fn determinant_matches_cofactor_expansion() {
        let f = PrimeField::new(7).unwrap();
        let m = [2u32, 3, 1, 4, 0, 5, 6, 1, 1];
        // 2(0-5) - 3(4-30) + 1(4-0) = -10 + 78 + 4 = 72 = 2 mod 7
        assert_eq!(determinant(&f, &m, 3), 2);
        let singular = [1u32, 2, 2, 4];
        assert_eq!(determinant(&f, &singular, 2), 0);
    }
}
