//! Fraction-free integer linear algebra: echelon reduction, rank, kernel
//! bases and determinants. Matrices are row-major `Vec<Vec<T>>`.


use crate::scalar::{content, Rational, Scalar};

pub type IntMatrix<T> = Vec<Vec<T>>;

/// Result of an integer Gauss-Jordan sweep.
#[derive(Debug, Clone)]
pub struct Echelon<T> {
    /// Nonzero rows only; row `i` has a positive pivot in column `pivots[i]`
    /// and zeros in every other pivot column.
    pub rows: IntMatrix<T>,
    pub pivots: Vec<usize>,
    pub ncols: usize,
}

fn divide_out_content<T: Scalar>(row: &mut [T]) {
    let c = content(row);
    if !c.is_zero() && !c.is_one() {
        for x in row.iter_mut() {
            *x = x.clone() / c.clone();
        }
    }
}

/// Integer Gauss-Jordan elimination. Rows are kept primitive after every
/// update so intermediate growth stays bounded by the input size.
pub fn echelon<T: Scalar>(mat: &[Vec<T>], ncols: usize) -> Echelon<T> {
    let mut rows: IntMatrix<T> = mat.iter().filter(|r| r.iter().any(|x| !x.is_zero())).cloned().collect();
    for r in &rows {
        assert_eq!(r.len(), ncols, "ragged matrix");
    }
    let mut pivots = Vec::new();
    let mut top = 0;
    for col in 0..ncols {
        if top == rows.len() {
            break;
        }
        // smallest nonzero magnitude keeps numbers small
        let Some(best) = (top..rows.len())
            .filter(|&i| !rows[i][col].is_zero())
            .min_by(|&a, &b| rows[a][col].abs().cmp(&rows[b][col].abs()))
        else {
            continue;
        };
        rows.swap(top, best);
        if rows[top][col].is_negative() {
            for x in rows[top].iter_mut() {
                *x = -x.clone();
            }
        }
        divide_out_content(&mut rows[top]);
        let pivot_row = rows[top].clone();
        let p = pivot_row[col].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == top || row[col].is_zero() {
                continue;
            }
            let a = row[col].clone();
            let g = p.gcd(&a);
            let (mp, ma) = (p.clone() / g.clone(), a / g);
            for (x, y) in row.iter_mut().zip(&pivot_row) {
                *x = x.clone() * mp.clone() - y.clone() * ma.clone();
            }
            divide_out_content(row);
        }
        pivots.push(col);
        top += 1;
    }
    rows.truncate(top);
    rows.retain(|r| r.iter().any(|x| !x.is_zero()));
    Echelon { rows, pivots, ncols }
}

pub fn rank<T: Scalar>(mat: &[Vec<T>], ncols: usize) -> usize {
    echelon(mat, ncols).pivots.len()
}

/// A basis of the rational kernel `{x : mat * x = 0}` made of primitive
/// integer vectors, one per free column.
pub fn kernel_basis<T: Scalar>(mat: &[Vec<T>], ncols: usize) -> Vec<Vec<T>> {
    let ech = echelon(mat, ncols);
    let lcm = ech
        .rows
        .iter()
        .zip(&ech.pivots)
        .fold(T::one(), |acc, (row, &c)| acc.lcm(&row[c]));
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !ech.pivots.contains(c)) {
        let mut x = vec![T::zero(); ncols];
        x[free] = lcm.clone();
        for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
            x[c] = -(lcm.clone() / row[c].clone()) * row[free].clone();
        }
        divide_out_content(&mut x);
        basis.push(x);
    }
    basis
}

/// Exact determinant by Bareiss elimination.
pub fn determinant<T: Scalar>(mat: &[Vec<T>]) -> T {
    let n = mat.len();
    let mut a: IntMatrix<T> = mat.to_vec();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(k, i);
                    sign = -sign;
                }
                None => return T::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                a[i][j] = v / prev.clone();
            }
        }
        prev = a[k][k].clone();
    }
    if n == 0 {
        T::one()
    } else {
        sign * a[n - 1][n - 1].clone()
    }
}

/// Scales each row of a rational matrix by the lcm of its denominators.
/// Row scaling leaves the kernel unchanged.
pub fn clear_denominators<T: Scalar>(mat: &[Vec<Rational<T>>]) -> IntMatrix<T> {
    mat.iter()
        .map(|row| {
            let l = row.iter().fold(T::one(), |acc, q| acc.lcm(q.denom()));
            row.iter()
                .map(|q| q.numer().clone() * (l.clone() / q.denom().clone()))
                .collect()
        })
        .collect()
}

pub fn mat_vec<T: Scalar>(mat: &[Vec<T>], v: &[T]) -> Vec<T> {
    mat.iter()
        .map(|row| row.iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone()))
        .collect()
}
