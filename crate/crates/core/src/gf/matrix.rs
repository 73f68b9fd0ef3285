//! Dense matrices over a [`GfTable`], stored row-major as `Vec<Vec<u32>>`.

use super::table::GfTable;

pub type Matrix = Vec<Vec<u32>>;

pub fn identity(n: usize) -> Matrix {
    (0..n)
        .map(|i| (0..n).map(|j| u32::from(i == j)).collect())
        .collect()
}

pub fn transpose(a: &Matrix) -> Matrix {
    if a.is_empty() {
        return Vec::new();
    }
    (0..a[0].len())
        .map(|j| a.iter().map(|row| row[j]).collect())
        .collect()
}

pub fn mul_vec(f: &GfTable, a: &Matrix, v: &[u32]) -> Vec<u32> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| f.add(acc, f.mul(x, y)))
        })
        .collect()
}

pub fn mul(f: &GfTable, a: &Matrix, b: &Matrix) -> Matrix {
    let bt = transpose(b);
    a.iter().map(|row| mul_vec(f, &bt, row)).collect()
}

/// Reduced row echelon form and its pivot columns.
pub fn rref(f: &GfTable, a: &Matrix) -> (Matrix, Vec<usize>) {
    let mut m = a.clone();
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(pr) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pr);
        let inv = f.inv(m[r][c]).unwrap();
        for x in m[r].iter_mut() {
            *x = f.mul(*x, inv);
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && row[c] != 0 {
                let factor = row[c];
                for (x, &p) in row.iter_mut().zip(&pivot) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (m, pivots)
}

pub fn rank(f: &GfTable, a: &Matrix) -> usize {
    rref(f, a).1.len()
}

/// Basis of `{x : a x = 0}`.
pub fn nullspace(f: &GfTable, a: &Matrix) -> Vec<Vec<u32>> {
    let cols = a.first().map_or(0, Vec::len);
    let (m, pivots) = rref(f, a);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                v[pc] = f.neg(m[r][fc]);
            }
            v
        })
        .collect()
}

pub fn inverse(f: &GfTable, a: &Matrix) -> Option<Matrix> {
    let n = a.len();
    let aug: Matrix = a
        .iter()
        .zip(identity(n))
        .map(|(row, id)| row.iter().copied().chain(id).collect())
        .collect();
    let (m, pivots) = rref(f, &aug);
    if pivots.len() < n || pivots[n - 1] >= n {
        return None;
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Determinant by elimination.
pub fn determinant(f: &GfTable, a: &Matrix) -> u32 {
    let n = a.len();
    let mut m = a.clone();
    let mut det = 1;
    for c in 0..n {
        let Some(pr) = (c..n).find(|&i| m[i][c] != 0) else {
            return 0;
        };
        if pr != c {
            m.swap(pr, c);
            det = f.neg(det);
        }
        det = f.mul(det, m[c][c]);
        let inv = f.inv(m[c][c]).unwrap();
        let pivot = m[c].clone();
        for row in m.iter_mut().skip(c + 1) {
            if row[c] != 0 {
                let factor = f.mul(row[c], inv);
                for (x, &p) in row.iter_mut().zip(&pivot).skip(c) {
                    *x = f.sub(*x, f.mul(factor, p));
                }
            }
        }
    }
    det
}

/// Solves `a x = rhs` for square invertible `a`.
pub fn solve(f: &GfTable, a: &Matrix, rhs: &[u32]) -> Option<Vec<u32>> {
    inverse(f, a).map(|inv| mul_vec(f, &inv, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Leibniz expansion; independent of the elimination routine.
    fn det_leibniz(f: &GfTable, a: &Matrix) -> u32 {
        fn perms(n: usize) -> Vec<(Vec<usize>, bool)> {
            if n == 0 {
                return vec![(vec![], true)];
            }
            let mut out = Vec::new();
            for (p, even) in perms(n - 1) {
                for pos in 0..n {
                    let mut q = p.clone();
                    q.insert(pos, n - 1);
                    // inserting at pos moves n-1 past (n-1-pos) entries
                    let flips = (n - 1 - pos) % 2 == 1;
                    out.push((q, even ^ flips));
                }
            }
            out
        }
        let n = a.len();
        perms(n).into_iter().fold(0, |acc, (p, even)| {
            let term = (0..n).fold(1, |t, i| f.mul(t, a[i][p[i]]));
            if even {
                f.add(acc, term)
            } else {
                f.sub(acc, term)
            }
        })
    }

    #[test]
    fn determinant_matches_leibniz() {
        let f5 = GfTable::prime(5);
        let mut seed = 7u32;
        for _ in 0..200 {
            let a: Matrix = (0..3)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            seed = seed.wrapping_mul(1103515245).wrapping_add(12345);
                            (seed >> 16) % 5
                        })
                        .collect()
                })
                .collect();
            assert_eq!(determinant(&f5, &a), det_leibniz(&f5, &a));
            let inv = inverse(&f5, &a);
            assert_eq!(inv.is_some(), determinant(&f5, &a) != 0);
            if let Some(inv) = inv {
                assert_eq!(mul(&f5, &a, &inv), identity(3));
            }
        }
    }

    #[test]
    fn rank_nullity() {
        let f3 = GfTable::prime(3);
        let a = vec![vec![1, 2, 0], vec![2, 1, 0]];
        let ns = nullspace(&f3, &a);
        assert_eq!(rank(&f3, &a) + ns.len(), 3);
        for v in ns {
            assert!(mul_vec(&f3, &a, &v).iter().all(|&x| x == 0));
        }
    }
}
