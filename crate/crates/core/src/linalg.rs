//! Dense Gaussian elimination over an arbitrary [`Field`].

use crate::field::Field;

/// Row-major dense matrix over a field's element type.
#[derive(Debug, Clone, PartialEq)]
pub struct Matrix<E> {
    rows: usize,
    cols: usize,
    data: Vec<E>,
}

impl<E: Clone> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        let n = rows.len();
        Self {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: E) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[E] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<E>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

/// Reduces `m` in place to reduced row-echelon form and returns the pivot
/// columns in increasing order.
pub fn rref<F: Field>(field: &F, m: &mut Matrix<F::Elem>) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let Some(pr) = (r..m.rows).find(|&i| !field.is_zero(m.get(i, c))) else {
            continue;
        };
        m.swap_rows(r, pr);
        let inv = field.inv(m.get(r, c)).expect("nonzero pivot");
        for j in c..m.cols {
            let v = field.mul(m.get(r, j), &inv);
            m.set(r, j, v);
        }
        for i in 0..m.rows {
            if i == r || field.is_zero(m.get(i, c)) {
                continue;
            }
            let factor = m.get(i, c).clone();
            for j in c..m.cols {
                let v = field.sub(m.get(i, j), &field.mul(&factor, m.get(r, j)));
                m.set(i, j, v);
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(field: &F, m: &Matrix<F::Elem>) -> usize {
    rref(field, &mut m.clone()).len()
}

/// A basis of `{ v : m v = 0 }`, one vector per free column.
pub fn null_space<F: Field>(field: &F, m: &Matrix<F::Elem>) -> Vec<Vec<F::Elem>> {
    let mut r = m.clone();
    let pivots = rref(field, &mut r);
    (0..m.cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![field.zero(); m.cols];
            v[free] = field.one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = field.neg(r.get(row, free));
            }
            v
        })
        .collect()
}

/// Canonical basis of the row space spanned by `vectors`: nonzero rows of
/// the reduced row-echelon form.
pub fn canonical_span<F: Field>(
    field: &F,
    vectors: &[Vec<F::Elem>],
    dim: usize,
) -> Vec<Vec<F::Elem>> {
    let mut m = Matrix::from_rows(vectors.to_vec(), dim);
    let k = rref(field, &mut m).len();
    m.to_rows().into_iter().take(k).collect()
}

pub fn mat_vec<F: Field>(field: &F, m: &Matrix<F::Elem>, v: &[F::Elem]) -> Vec<F::Elem> {
    assert_eq!(v.len(), m.cols);
    (0..m.rows)
        .map(|i| {
            m.row(i).iter().zip(v).fold(field.zero(), |acc, (a, b)| {
                field.add(&acc, &field.mul(a, b))
            })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    #[test]
    fn rref_small_example() {
        let f = PrimeField::new(5);
        let mut m = Matrix::from_rows(vec![vec![2, 4, 1], vec![1, 2, 4], vec![0, 0, 0]], 3);
        let piv = rref(&f, &mut m);
        assert_eq!(piv, vec![0, 2]);
        assert_eq!(
            m.to_rows(),
            vec![vec![1, 2, 0], vec![0, 0, 1], vec![0, 0, 0]]
        );
    }

    #[test]
    fn null_space_is_annihilated() {
        let f = PrimeField::new(7);
        let m = Matrix::from_rows(vec![vec![1, 2, 3, 4], vec![2, 4, 6, 1]], 4);
        let ns = null_space(&f, &m);
        assert_eq!(ns.len(), 4 - rank(&f, &m));
        for v in &ns {
            assert!(mat_vec(&f, &m, v).iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn canonical_span_ignores_generating_set() {
        let f = PrimeField::new(3);
        let a = canonical_span(&f, &[vec![0, 1, 0, 0, 2, 0], vec![2, 0, 1, 1, 0, 1]], 6);
        let b = canonical_span(
            &f,
            &[
                vec![2, 1, 1, 1, 2, 1],
                vec![1, 0, 2, 2, 0, 2],
                vec![0, 2, 0, 0, 1, 0],
            ],
            6,
        );
        assert_eq!(a, b);
        assert_eq!(a, vec![vec![1, 0, 2, 2, 0, 2], vec![0, 1, 0, 0, 2, 0]]);
    }
}
