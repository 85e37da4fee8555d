use super::field::Scalar;

/// Rank of a dense scalar matrix by Gaussian elimination.
pub fn rank(mut rows: Vec<Vec<Scalar>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut rank = 0;
    for col in 0..ncols {
        let Some(pivot) = (rank..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot is nonzero");
        let prow: Vec<Scalar> = rows[rank].iter().map(|x| x * &inv).collect();
        for row in rows.iter_mut().skip(rank + 1) {
            if row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow).skip(col) {
                if !p.is_zero() {
                    *x = &*x - &(&factor * p);
                }
            }
        }
        rows[rank] = prow;
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ScalarField;

    #[test]
    fn small_ranks() {
        let q = ScalarField::rationals();
        let s = |n| Scalar::from_int(&q, n);
        assert_eq!(rank(vec![]), 0);
        assert_eq!(rank(vec![vec![s(0), s(0)]]), 0);
        assert_eq!(rank(vec![vec![s(1), s(2)], vec![s(2), s(4)]]), 1);
        assert_eq!(rank(vec![vec![s(0), s(1)], vec![s(1), s(0)], vec![s(1), s(1)]]), 2);
    }
}
