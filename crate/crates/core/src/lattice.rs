//! The Néron–Severi group of `A = E × E` as the module of Hermitian 2×2
//! matrices over the maximal order: integer diagonal, conjugate off-diagonal.
//!
//! A class `L` is stored as `(a, d, beta)` for the matrix
//!
//! ```text
//! j(L) = [ a           beta ]
//!        [ conj(beta)  d    ]
//! ```
//!
//! so that `j(Δ_{x1,x2})` has `beta = conj(x1)·x2` and the basis divisor
//! `Δ_x = Δ_{1,x}` has `beta = x`.

use std::ops::{Add, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::quat::{AlgebraParams, OrderElement, QuatElement};

/// Names of the NS basis, in coordinate order.
pub const BASIS_NAMES: [&str; 6] = [
    "E₁",
    "E₂",
    "Δ",
    "Δ_{(1+α)/2}",
    "Δ_{F(1+α)/2}",
    "Δ_{(a+F)α/q}",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DivisorMatrix {
    /// Upper-left entry, equal to `L·E₁`.
    pub a: BigInt,
    /// Lower-right entry, equal to `L·E₂`.
    pub d: BigInt,
    /// Upper-right entry; the lower-left is always `conj(beta)`.
    pub beta: OrderElement,
}

impl DivisorMatrix {
    pub fn new(a: BigInt, d: BigInt, beta: OrderElement) -> Self {
        Self { a, d, beta }
    }

    pub fn params(&self) -> AlgebraParams {
        self.beta.params()
    }

    pub fn zero(params: AlgebraParams) -> Self {
        Self::new(BigInt::zero(), BigInt::zero(), OrderElement::zero(params))
    }

    /// `j(E₁)`.
    pub fn e1(params: AlgebraParams) -> Self {
        Self::new(BigInt::zero(), BigInt::one(), OrderElement::zero(params))
    }

    /// `j(E₂)`.
    pub fn e2(params: AlgebraParams) -> Self {
        Self::new(BigInt::one(), BigInt::zero(), OrderElement::zero(params))
    }

    pub fn scale(&self, n: &BigInt) -> Self {
        let beta = OrderElement::new(self.params(), self.beta.coords().clone().map(|c| c * n));
        Self::new(&self.a * n, &self.d * n, beta)
    }

    /// The full matrix over `B`.
    pub fn entries(&self) -> [[QuatElement; 2]; 2] {
        let params = self.params();
        let beta = self.beta.to_quat();
        [
            [
                QuatElement::from_integer(params, self.a.clone()),
                beta.clone(),
            ],
            [
                beta.conj(),
                QuatElement::from_integer(params, self.d.clone()),
            ],
        ]
    }

    /// `L² = 2 det j(L) = 2(a d - nrd(beta))`.
    pub fn self_intersection(&self) -> BigInt {
        (&self.a * &self.d - self.beta.nrd()) * 2
    }
}

impl Add for &DivisorMatrix {
    type Output = DivisorMatrix;

    fn add(self, rhs: Self) -> DivisorMatrix {
        DivisorMatrix::new(&self.a + &rhs.a, &self.d + &rhs.d, &self.beta + &rhs.beta)
    }
}

impl Sub for &DivisorMatrix {
    type Output = DivisorMatrix;

    fn sub(self, rhs: Self) -> DivisorMatrix {
        DivisorMatrix::new(&self.a - &rhs.a, &self.d - &rhs.d, &self.beta - &rhs.beta)
    }
}

impl Neg for &DivisorMatrix {
    type Output = DivisorMatrix;

    fn neg(self) -> DivisorMatrix {
        self.scale(&BigInt::from(-1))
    }
}

/// Integer coordinates with respect to [`BASIS_NAMES`].
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorCoords(pub [BigInt; 6]);

impl DivisorCoords {
    pub fn from_ints(c: [i64; 6]) -> Self {
        Self(c.map(BigInt::from))
    }
}

/// `j(Δ_{x1,x2})` for the pullback of `Δ` under `x1 × x2`.
pub fn j_of_delta(x1: &OrderElement, x2: &OrderElement) -> DivisorMatrix {
    DivisorMatrix::new(x1.nrd(), x2.nrd(), &x1.conj() * x2)
}

/// `j(E₁), j(E₂), j(Δ), j(Δ_{w1}), j(Δ_{w2}), j(Δ_{w3})`.
pub fn basis_divisors(params: AlgebraParams) -> [DivisorMatrix; 6] {
    let one = OrderElement::one(params);
    let delta = |i| j_of_delta(&one, &OrderElement::basis(params, i));
    [
        DivisorMatrix::e1(params),
        DivisorMatrix::e2(params),
        delta(0),
        delta(1),
        delta(2),
        delta(3),
    ]
}

pub fn coords_to_matrix(params: AlgebraParams, v: &DivisorCoords) -> DivisorMatrix {
    basis_divisors(params)
        .iter()
        .zip(&v.0)
        .fold(DivisorMatrix::zero(params), |acc, (b, c)| {
            &acc + &b.scale(c)
        })
}

/// Inverse of [`coords_to_matrix`].
///
/// The transition matrix is unitriangular: the `Δ_{w_i}` coefficients are
/// the order coordinates of `beta`, after which `E₂` and `E₁` absorb the
/// remaining diagonal entries.
pub fn matrix_to_coords(m: &DivisorMatrix) -> DivisorCoords {
    let params = m.params();
    let [y0, y1, y2, y3] = m.beta.coords().clone();
    let norms: Vec<BigInt> = (0..4)
        .map(|i| OrderElement::basis(params, i).nrd())
        .collect();
    let ys = [&y0, &y1, &y2, &y3];
    let c_e2 = &m.a - (&y0 + &y1 + &y2 + &y3);
    let c_e1 = &m.d - ys.iter().zip(&norms).map(|(y, n)| *y * n).sum::<BigInt>();
    DivisorCoords([c_e1, c_e2, y0, y1, y2, y3])
}

/// `L₁·L₂ = α₂δ₁ + α₁δ₂ - γ₁β₂ - γ₂β₁`, evaluated in `B`.
pub fn intersect(l1: &DivisorMatrix, l2: &DivisorMatrix) -> Result<BigInt> {
    if l1.params() != l2.params() {
        return Err(Error::MismatchedParams(l1.params(), l2.params()));
    }
    let [[a1, b1], [g1, d1]] = l1.entries();
    let [[a2, b2], [g2, d2]] = l2.entries();
    let sum = &(&(&a2 * &d1) + &(&a1 * &d2)) - &(&(&g1 * &b2) + &(&g2 * &b1));
    let value = sum
        .as_rational()
        .and_then(|r| r.is_integer().then(|| r.to_integer()))
        .ok_or_else(|| {
            Error::Inconsistent(format!("intersection number {sum} is not an integer"))
        })?;
    Ok(value)
}

pub fn self_int(l: &DivisorMatrix) -> BigInt {
    l.self_intersection()
}

/// A 2×2 matrix over the order, acting on `A = E × E`.
pub type OrderMatrix = [[OrderElement; 2]; 2];

pub fn identity_matrix(params: AlgebraParams) -> OrderMatrix {
    [
        [OrderElement::one(params), OrderElement::zero(params)],
        [OrderElement::zero(params), OrderElement::one(params)],
    ]
}

pub fn matmul(g: &OrderMatrix, h: &OrderMatrix) -> OrderMatrix {
    let entry = |i: usize, j: usize| &(&g[i][0] * &h[0][j]) + &(&g[i][1] * &h[1][j]);
    [[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]]
}

/// `j(g*L) = ᵗconj(g) · j(L) · g`.
pub fn pullback(g: &OrderMatrix, l: &DivisorMatrix) -> Result<DivisorMatrix> {
    let params = l.params();
    if let Some(bad) = g.iter().flatten().find(|x| x.params() != params) {
        return Err(Error::MismatchedParams(params, bad.params()));
    }
    let m = l.entries();
    let gq = g.clone().map(|row| row.map(|x| x.to_quat()));
    let entry = |i: usize, j: usize| {
        let mut acc = QuatElement::zero(params);
        for k in 0..2 {
            for l in 0..2 {
                let term = &(&gq[k][i].conj() * &m[k][l]) * &gq[l][j];
                acc = &acc + &term;
            }
        }
        acc
    };
    let diag = |x: QuatElement| -> Result<BigInt> {
        x.as_rational()
            .filter(|r| r.is_integer())
            .map(BigRational::to_integer)
            .ok_or_else(|| Error::NonIntegralDiagonal(x.to_string()))
    };
    let upper = entry(0, 1);
    let lower = entry(1, 0);
    if lower != upper.conj() {
        return Err(Error::Inconsistent("pullback is not Hermitian".into()));
    }
    Ok(DivisorMatrix::new(
        diag(entry(0, 0))?,
        diag(entry(1, 1))?,
        upper.to_order_element()?,
    ))
}

/// Gram matrix of the NS basis with its exact invariants.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GramAnalysis {
    pub matrix: Vec<Vec<BigInt>>,
    pub rank: usize,
    /// Number of positive and negative eigenvalues.
    pub signature: (usize, usize),
    pub determinant: BigInt,
}

pub fn gram_matrix(params: AlgebraParams) -> GramAnalysis {
    let basis = basis_divisors(params);
    let matrix: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| intersect(x, y).expect("same algebra"))
                .collect()
        })
        .collect();
    let (pivots, determinant) = congruence_diagonal(&matrix);
    let pos = pivots.iter().filter(|d| d.is_positive()).count();
    let neg = pivots.iter().filter(|d| d.is_negative()).count();
    GramAnalysis {
        matrix,
        rank: pos + neg,
        signature: (pos, neg),
        determinant,
    }
}

/// Diagonalizes a symmetric integer matrix by congruence over `Q` and
/// returns the nonzero diagonal entries together with the determinant.
///
/// Row/column swaps come in pairs and row additions are unimodular, so the
/// determinant is the product of the final diagonal. A zero diagonal with a
/// nonzero off-diagonal `m[i][j]` is fixed by adding row and column `j` to
/// `i`, which puts `2 m[i][j]` on the diagonal.
#[allow(clippy::needless_range_loop)]
pub fn congruence_diagonal(m: &[Vec<BigInt>]) -> (Vec<BigRational>, BigInt) {
    let n = m.len();
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .map(|r| r.iter().cloned().map(BigRational::from_integer).collect())
        .collect();
    let mut diag = Vec::with_capacity(n);
    for k in 0..n {
        if let Some(i) = (k..n).find(|&i| !a[i][i].is_zero()) {
            sym_swap(&mut a, k, i);
        } else if let Some((i, j)) = (k..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .find(|&(i, j)| !a[i][j].is_zero())
        {
            for c in 0..n {
                let v = a[j][c].clone();
                a[i][c] += v;
            }
            for r in 0..n {
                let v = a[r][j].clone();
                a[r][i] += v;
            }
            sym_swap(&mut a, k, i);
        } else {
            return (diag, BigInt::zero());
        }
        let pivot = a[k][k].clone();
        for r in k + 1..n {
            if a[r][k].is_zero() {
                continue;
            }
            let f = &a[r][k] / &pivot;
            for c in 0..n {
                let v = &f * &a[k][c];
                a[r][c] -= v;
            }
            for c in 0..n {
                let v = &f * &a[c][k];
                a[c][r] -= v;
            }
        }
        diag.push(pivot);
    }
    let det = diag.iter().fold(BigRational::one(), |acc, d| acc * d);
    debug_assert!(det.is_integer());
    (diag, det.to_integer())
}

fn sym_swap(a: &mut [Vec<BigRational>], i: usize, j: usize) {
    if i == j {
        return;
    }
    a.swap(i, j);
    for row in a.iter_mut() {
        row.swap(i, j);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn params3() -> AlgebraParams {
        AlgebraParams::new(3, 19, 4).unwrap()
    }

    fn int(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn delta_examples() {
        let pr = params3();
        let one = OrderElement::one(pr);
        let d = j_of_delta(&one, &one);
        assert_eq!((d.a.clone(), d.d.clone()), (int(1), int(1)));
        assert_eq!(d.beta, one);
        assert_eq!(
            j_of_delta(&one, &OrderElement::zero(pr)),
            DivisorMatrix::e2(pr)
        );
        let w1 = OrderElement::basis(pr, 1);
        let d1 = j_of_delta(&one, &w1);
        assert_eq!(d1.a, int(1));
        assert_eq!(d1.d, int(20 / 4));
        assert_eq!(d1.beta, w1);
    }

    #[test]
    fn basis_examples() {
        let pr = params3();
        let b = basis_divisors(pr);
        assert_eq!(
            b[0],
            DivisorMatrix::new(int(0), int(1), OrderElement::zero(pr))
        );
        assert_eq!(
            b[2],
            DivisorMatrix::new(int(1), int(1), OrderElement::one(pr))
        );
        assert_eq!(
            b[5],
            DivisorMatrix::new(int(1), int(1), OrderElement::basis(pr, 3))
        );
    }

    #[test]
    fn coordinate_examples() {
        let pr = params3();
        let e1 = coords_to_matrix(pr, &DivisorCoords::from_ints([1, 0, 0, 0, 0, 0]));
        assert_eq!(e1, DivisorMatrix::e1(pr));
        let delta = coords_to_matrix(pr, &DivisorCoords::from_ints([0, 0, 1, 0, 0, 0]));
        assert_eq!(
            delta,
            DivisorMatrix::new(int(1), int(1), OrderElement::one(pr))
        );
        let m = DivisorMatrix::new(int(2), int(1), OrderElement::one(pr));
        assert_eq!(
            matrix_to_coords(&m),
            DivisorCoords::from_ints([0, 1, 1, 0, 0, 0])
        );
    }

    #[test]
    fn intersection_examples() {
        let pr = params3();
        let b = basis_divisors(pr);
        assert_eq!(intersect(&b[0], &b[1]).unwrap(), int(1));
        assert_eq!(intersect(&b[2], &b[0]).unwrap(), int(1));
        assert_eq!(intersect(&b[2], &b[2]).unwrap(), int(0));
        let other = DivisorMatrix::e1(AlgebraParams::find(5).unwrap());
        assert!(matches!(
            intersect(&b[0], &other),
            Err(Error::MismatchedParams(..))
        ));
    }

    #[test]
    fn self_intersection_examples() {
        let pr = params3();
        assert_eq!(self_int(&DivisorMatrix::e1(pr)), int(0));
        assert_eq!(self_int(&basis_divisors(pr)[2]), int(0));
        let sum = &DivisorMatrix::e1(pr) + &DivisorMatrix::e2(pr);
        assert_eq!(self_int(&sum), int(2));
        assert_eq!(intersect(&sum, &sum).unwrap(), int(2));
    }

    #[test]
    fn pullback_examples() {
        let pr = params3();
        let zero = OrderElement::zero(pr);
        let one = OrderElement::one(pr);
        let swap = [[zero.clone(), one.clone()], [one.clone(), zero.clone()]];
        assert_eq!(
            pullback(&swap, &DivisorMatrix::e1(pr)).unwrap(),
            DivisorMatrix::e2(pr)
        );
        let b = basis_divisors(pr);
        for l in &b {
            assert_eq!(&pullback(&identity_matrix(pr), l).unwrap(), l);
        }
        let x1 = OrderElement::from_ints(pr, [1, 2, -1, 3]);
        let x2 = OrderElement::from_ints(pr, [0, -1, 1, 1]);
        let diag = [[x1.clone(), zero.clone()], [zero, x2.clone()]];
        assert_eq!(pullback(&diag, &b[2]).unwrap(), j_of_delta(&x1, &x2));
    }

    #[test]
    fn gram_rows_at_three() {
        let g = gram_matrix(params3());
        let row = |i: usize| {
            g.matrix[i]
                .iter()
                .map(|x| i64::try_from(x).unwrap())
                .collect::<Vec<_>>()
        };
        assert_eq!(row(0), vec![0, 1, 1, 1, 1, 1]);
        assert_eq!(row(1), vec![1, 0, 1, 5, 15, 1]);
        // Δ·Δ_{F(1+α)/2} = nrd(1 - F(1+α)/2) = 1 + p(1+q)/4
        assert_eq!(g.matrix[2][4], int(16));
        assert_eq!(g.rank, 6);
        assert_eq!(g.signature, (1, 5));
    }

    #[test]
    fn congruence_handles_zero_diagonal() {
        // Hyperbolic plane: no diagonal pivot exists.
        let h = vec![vec![int(0), int(1)], vec![int(1), int(0)]];
        let (d, det) = congruence_diagonal(&h);
        assert_eq!(det, int(-1));
        assert_eq!(d.iter().filter(|x| x.is_positive()).count(), 1);
        let z = vec![vec![int(0), int(0)], vec![int(0), int(0)]];
        assert_eq!(congruence_diagonal(&z), (vec![], int(0)));
    }
}
