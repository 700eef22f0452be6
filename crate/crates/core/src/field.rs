//! Prime fields `F_p` and the quadratic extension `F_{p²} = F_p[t]/(t² + q)`.
//!
//! Elements are plain values; all arithmetic goes through a field context so
//! that the same elimination code runs over either field.

use std::fmt;
use std::fmt::Debug;

use crate::arith::{inv_mod, is_prime, legendre, mul_mod, neg_mod, reduce_i128};
use crate::error::{Error, Result};
use crate::quat::AlgebraParams;

pub trait Field {
    type Elem: Clone + PartialEq + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn neg(&self, x: &Self::Elem) -> Self::Elem;
    fn mul(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn inv(&self, x: &Self::Elem) -> Result<Self::Elem>;

    fn sub(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem {
        self.add(x, &self.neg(y))
    }

    fn is_zero(&self, x: &Self::Elem) -> bool {
        *x == self.zero()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        assert!(is_prime(p), "{p} is not prime");
        Self { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn from_i128(&self, n: i128) -> u64 {
        reduce_i128(n, self.p)
    }
}

impl Field for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1
    }

    fn add(&self, x: &u64, y: &u64) -> u64 {
        ((*x as u128 + *y as u128) % self.p as u128) as u64
    }

    fn neg(&self, x: &u64) -> u64 {
        neg_mod(*x, self.p)
    }

    fn mul(&self, x: &u64, y: &u64) -> u64 {
        mul_mod(*x, *y, self.p)
    }

    fn inv(&self, x: &u64) -> Result<u64> {
        inv_mod(*x, self.p).ok_or(Error::NotInvertible)
    }
}

/// `c0 + c1·t` with canonical residues in `0..p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp2 {
    pub c0: u64,
    pub c1: u64,
}

impl Fp2 {
    pub const fn new(c0: u64, c1: u64) -> Self {
        Self { c0, c1 }
    }
}

impl fmt::Display for Fp2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c0, self.c1) {
            (c0, 0) => write!(f, "{c0}"),
            (0, 1) => f.write_str("t"),
            (0, c1) => write!(f, "{c1}t"),
            (c0, 1) => write!(f, "{c0}+t"),
            (c0, c1) => write!(f, "{c0}+{c1}t"),
        }
    }
}

/// `F_p[t]/(t² - t_sq)` where `t_sq = -q mod p` is a non-residue.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fp2Field {
    base: PrimeField,
    t_sq: u64,
}

impl Fp2Field {
    pub fn new(params: &AlgebraParams) -> Self {
        let p = params.p;
        debug_assert_eq!(legendre(-(params.q as i128), p), -1);
        Self {
            base: PrimeField::new(p),
            t_sq: reduce_i128(-(params.q as i128), p),
        }
    }

    pub fn base(&self) -> &PrimeField {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.base.p
    }

    /// The value of `t²` in `F_p`.
    pub fn t_squared(&self) -> u64 {
        self.t_sq
    }

    pub fn t(&self) -> Fp2 {
        Fp2::new(0, 1)
    }

    pub fn from_base(&self, c: u64) -> Fp2 {
        Fp2::new(c % self.p(), 0)
    }

    pub fn from_i128(&self, n: i128) -> Fp2 {
        Fp2::new(self.base.from_i128(n), 0)
    }

    /// Multiplication by a base field scalar.
    pub fn scale(&self, s: u64, x: &Fp2) -> Fp2 {
        Fp2::new(self.base.mul(&s, &x.c0), self.base.mul(&s, &x.c1))
    }

    /// The nontrivial automorphism `c0 + c1 t ↦ c0 - c1 t`.
    pub fn frobenius(&self, x: &Fp2) -> Fp2 {
        Fp2::new(x.c0, self.base.neg(&x.c1))
    }

    pub fn pow(&self, x: &Fp2, mut exp: u64) -> Fp2 {
        let mut base = *x;
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// Norm to `F_p`: `x · frobenius(x) = c0² - t_sq c1²`.
    pub fn norm(&self, x: &Fp2) -> u64 {
        let f = &self.base;
        f.sub(
            &f.mul(&x.c0, &x.c0),
            &f.mul(&self.t_sq, &f.mul(&x.c1, &x.c1)),
        )
    }
}

impl Field for Fp2Field {
    type Elem = Fp2;

    fn zero(&self) -> Fp2 {
        Fp2::new(0, 0)
    }

    fn one(&self) -> Fp2 {
        Fp2::new(1, 0)
    }

    fn add(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        Fp2::new(self.base.add(&x.c0, &y.c0), self.base.add(&x.c1, &y.c1))
    }

    fn neg(&self, x: &Fp2) -> Fp2 {
        Fp2::new(self.base.neg(&x.c0), self.base.neg(&x.c1))
    }

    fn mul(&self, x: &Fp2, y: &Fp2) -> Fp2 {
        let f = &self.base;
        let c0 = f.add(
            &f.mul(&x.c0, &y.c0),
            &f.mul(&self.t_sq, &f.mul(&x.c1, &y.c1)),
        );
        let c1 = f.add(&f.mul(&x.c0, &y.c1), &f.mul(&x.c1, &y.c0));
        Fp2::new(c0, c1)
    }

    fn inv(&self, x: &Fp2) -> Result<Fp2> {
        let n_inv = self.base.inv(&self.norm(x))?;
        Ok(self.scale(n_inv, &self.frobenius(x)))
    }
}
