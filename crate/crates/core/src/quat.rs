//! The quaternion algebra `B = Q + QF + Qα + QFα` with `F² = -p`, `α² = -q`,
//! `Fα = -αF`, ramified exactly at `p` and infinity, and its maximal order
//!
//! ```text
//! O = Z + Z(1+α)/2 + ZF(1+α)/2 + Z(a+F)α/q
//! ```
//!
//! where `q ≡ 3 (mod 8)` is a prime with `(-q | p) = -1` and `a² ≡ -p (mod q)`.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::arith::{is_prime, legendre};
use crate::error::{Error, ParamsViolation, Result};

pub const DEFAULT_Q_CAP: u64 = 100_000;

/// Defining data `(p, q, a)` of the algebra and its maximal order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct AlgebraParams {
    pub p: u64,
    pub q: u64,
    pub a: u64,
}

impl AlgebraParams {
    /// Validates every invariant; the only way to build params by hand.
    pub fn new(p: u64, q: u64, a: u64) -> Result<Self> {
        let fail = |reason| Err(Error::InvalidParams { p, q, a, reason });
        if p < 3 || !is_prime(p) {
            return fail(ParamsViolation::PNotPrime);
        }
        if !is_prime(q) {
            return fail(ParamsViolation::QNotPrime);
        }
        if q % 8 != 3 {
            return fail(ParamsViolation::QNotThreeModEight);
        }
        if q == p {
            return fail(ParamsViolation::QEqualsP);
        }
        if legendre(-(q as i128), p) != -1 {
            return fail(ParamsViolation::LegendreNotMinusOne);
        }
        if a >= q {
            return fail(ParamsViolation::AOutOfRange);
        }
        if !(a as u128 * a as u128 + p as u128).is_multiple_of(q as u128) {
            return fail(ParamsViolation::ANotSquareRoot);
        }
        Ok(Self { p, q, a })
    }

    /// Smallest admissible `q`, then smallest `a`, with the default cap on `q`.
    pub fn find(p: u64) -> Result<Self> {
        find_params(p, DEFAULT_Q_CAP)
    }
}

impl fmt::Display for AlgebraParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "p={} q={} a={}", self.p, self.q, self.a)
    }
}

/// Deterministic parameter search: increasing `q < q_cap`, then increasing `a`.
pub fn find_params(p: u64, q_cap: u64) -> Result<AlgebraParams> {
    if p < 3 || !is_prime(p) {
        return Err(Error::InvalidPrime(p));
    }
    // q ≡ 3 (mod 8) rules out q = 2, so start at 3 and step by 8.
    let mut q = 3u64;
    while q < q_cap {
        if q != p && is_prime(q) && legendre(-(q as i128), p) == -1 {
            let target = (q - p % q) % q;
            // q is prime and -p is a nonzero residue, so a root exists iff found here.
            if let Some(a) = (0..q).find(|&a| (a as u128 * a as u128) % q as u128 == target as u128)
            {
                return Ok(AlgebraParams { p, q, a });
            }
        }
        q += 8;
    }
    Err(Error::SearchExhausted { p, cap: q_cap })
}

/// An element `x0 + x1 F + x2 α + x3 Fα` of `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuatElement {
    params: AlgebraParams,
    coeffs: [BigRational; 4],
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

impl QuatElement {
    pub fn new(params: AlgebraParams, coeffs: [BigRational; 4]) -> Self {
        Self { params, coeffs }
    }

    pub fn from_ints(params: AlgebraParams, coeffs: [i64; 4]) -> Self {
        Self::new(params, coeffs.map(rat))
    }

    pub fn zero(params: AlgebraParams) -> Self {
        Self::from_ints(params, [0, 0, 0, 0])
    }

    pub fn one(params: AlgebraParams) -> Self {
        Self::from_ints(params, [1, 0, 0, 0])
    }

    pub fn f(params: AlgebraParams) -> Self {
        Self::from_ints(params, [0, 1, 0, 0])
    }

    pub fn alpha(params: AlgebraParams) -> Self {
        Self::from_ints(params, [0, 0, 1, 0])
    }

    pub fn f_alpha(params: AlgebraParams) -> Self {
        Self::from_ints(params, [0, 0, 0, 1])
    }

    pub fn from_integer(params: AlgebraParams, n: BigInt) -> Self {
        let mut x = Self::zero(params);
        x.coeffs[0] = BigRational::from_integer(n);
        x
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn coeffs(&self) -> &[BigRational; 4] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    /// Scalar part, or `None` if the element has an imaginary component.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[0])
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.params, self.coeffs.clone().map(|c| c * s))
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.params != rhs.params {
            return Err(Error::MismatchedParams(self.params, rhs.params));
        }
        let p = rat(self.params.p as i64);
        let q = rat(self.params.q as i64);
        let pq = &p * &q;
        let [x0, x1, x2, x3] = &self.coeffs;
        let [y0, y1, y2, y3] = &rhs.coeffs;
        let c0 = x0 * y0 - &p * x1 * y1 - &q * x2 * y2 - &pq * x3 * y3;
        let c1 = x0 * y1 + x1 * y0 + &q * x2 * y3 - &q * x3 * y2;
        let c2 = x0 * y2 + x2 * y0 - &p * x1 * y3 + &p * x3 * y1;
        let c3 = x0 * y3 + x3 * y0 + x1 * y2 - x2 * y1;
        Ok(Self::new(self.params, [c0, c1, c2, c3]))
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        if self.params != rhs.params {
            return Err(Error::MismatchedParams(self.params, rhs.params));
        }
        let mut out = self.clone();
        for (c, d) in out.coeffs.iter_mut().zip(&rhs.coeffs) {
            *c += d;
        }
        Ok(out)
    }

    /// Canonical involution `x0 - x1 F - x2 α - x3 Fα`.
    pub fn conj(&self) -> Self {
        let [x0, x1, x2, x3] = self.coeffs.clone();
        Self::new(self.params, [x0, -x1, -x2, -x3])
    }

    /// Reduced norm `x conj(x) = x0² + p x1² + q x2² + pq x3²`.
    pub fn nrd(&self) -> BigRational {
        let p = rat(self.params.p as i64);
        let q = rat(self.params.q as i64);
        let [x0, x1, x2, x3] = &self.coeffs;
        x0 * x0 + &p * x1 * x1 + &q * x2 * x2 + &p * &q * x3 * x3
    }

    /// Reduced trace `x + conj(x) = 2 x0`.
    pub fn trd(&self) -> BigRational {
        &self.coeffs[0] * rat(2)
    }

    /// Coordinates in the order basis `w0..w3`, exact over `Q`.
    pub fn order_coords_rational(&self) -> [BigRational; 4] {
        let q = rat(self.params.q as i64);
        let a = rat(self.params.a as i64);
        let two = rat(2);
        let [x0, x1, x2, x3] = &self.coeffs;
        let y2 = &two * x1;
        let y3 = &q * (x3 - x1);
        let y1 = &two * (x2 - &a * (x3 - x1));
        let y0 = x0 - &y1 / &two;
        [y0, y1, y2, y3]
    }

    /// Integral coordinates in the order basis; fails if `self ∉ O`.
    pub fn to_order_coords(&self) -> Result<[BigInt; 4]> {
        let ys = self.order_coords_rational();
        if ys.iter().all(|y| y.is_integer()) {
            Ok(ys.map(|y| y.to_integer()))
        } else {
            Err(Error::NotInOrder {
                coords: ys.map(|y| y.to_string()),
            })
        }
    }

    pub fn to_order_element(&self) -> Result<OrderElement> {
        self.to_order_coords()
            .map(|coords| OrderElement::new(self.params, coords))
    }
}

impl fmt::Display for QuatElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = ["", "F", "α", "Fα"];
        let mut first = true;
        for (c, name) in self.coeffs.iter().zip(names) {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match (name, mag.is_one()) {
                ("", _) => write!(f, "{mag}")?,
                (_, true) => f.write_str(name)?,
                _ => write!(f, "({mag}){name}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Operator impls panic on mismatched algebras; use the `checked_*`
/// methods where that can happen.
impl Mul for &QuatElement {
    type Output = QuatElement;

    fn mul(self, rhs: Self) -> QuatElement {
        self.checked_mul(rhs).expect("quaternion product")
    }
}

impl Add for &QuatElement {
    type Output = QuatElement;

    fn add(self, rhs: Self) -> QuatElement {
        self.checked_add(rhs).expect("quaternion sum")
    }
}

impl Neg for &QuatElement {
    type Output = QuatElement;

    fn neg(self) -> QuatElement {
        QuatElement::new(self.params, self.coeffs.clone().map(|c| -c))
    }
}

impl Sub for &QuatElement {
    type Output = QuatElement;

    fn sub(self, rhs: Self) -> QuatElement {
        self + &(-rhs)
    }
}

/// An element `y0 w0 + y1 w1 + y2 w2 + y3 w3` of the maximal order, with
/// `w0 = 1`, `w1 = (1+α)/2`, `w2 = F(1+α)/2`, `w3 = (a+F)α/q`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct OrderElement {
    params: AlgebraParams,
    coords: [BigInt; 4],
}

impl OrderElement {
    pub fn new(params: AlgebraParams, coords: [BigInt; 4]) -> Self {
        Self { params, coords }
    }

    pub fn from_ints(params: AlgebraParams, coords: [i64; 4]) -> Self {
        Self::new(params, coords.map(BigInt::from))
    }

    pub fn zero(params: AlgebraParams) -> Self {
        Self::from_ints(params, [0, 0, 0, 0])
    }

    pub fn one(params: AlgebraParams) -> Self {
        Self::from_ints(params, [1, 0, 0, 0])
    }

    /// The `i`-th order basis element.
    pub fn basis(params: AlgebraParams, i: usize) -> Self {
        let mut c = [0i64; 4];
        c[i] = 1;
        Self::from_ints(params, c)
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn coords(&self) -> &[BigInt; 4] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn to_quat(&self) -> QuatElement {
        let params = self.params;
        order_basis(params)
            .iter()
            .zip(&self.coords)
            .fold(QuatElement::zero(params), |acc, (w, y)| {
                &acc + &w.scale(&BigRational::from_integer(y.clone()))
            })
    }

    pub fn conj(&self) -> Self {
        self.to_quat()
            .conj()
            .to_order_element()
            .expect("O is stable under conjugation")
    }

    /// Reduced norm as an integer.
    pub fn nrd(&self) -> BigInt {
        let n = self.to_quat().nrd();
        debug_assert!(n.is_integer());
        n.to_integer()
    }

    pub fn trd(&self) -> BigInt {
        self.to_quat().trd().to_integer()
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        self.to_quat()
            .checked_mul(&rhs.to_quat())?
            .to_order_element()
    }
}

impl Mul for &OrderElement {
    type Output = OrderElement;

    fn mul(self, rhs: Self) -> OrderElement {
        self.checked_mul(rhs).expect("order product")
    }
}

impl Add for &OrderElement {
    type Output = OrderElement;

    fn add(self, rhs: Self) -> OrderElement {
        assert_eq!(
            self.params, rhs.params,
            "order elements from different algebras"
        );
        let mut out = self.clone();
        for (c, d) in out.coords.iter_mut().zip(&rhs.coords) {
            *c += d;
        }
        out
    }
}

impl Sub for &OrderElement {
    type Output = OrderElement;

    fn sub(self, rhs: Self) -> OrderElement {
        assert_eq!(
            self.params, rhs.params,
            "order elements from different algebras"
        );
        let mut out = self.clone();
        for (c, d) in out.coords.iter_mut().zip(&rhs.coords) {
            *c -= d;
        }
        out
    }
}

/// The order basis `1, (1+α)/2, F(1+α)/2, (a+F)α/q` as elements of `B`.
pub fn order_basis(params: AlgebraParams) -> [QuatElement; 4] {
    let half = BigRational::new(1.into(), 2.into());
    let q = BigInt::from(params.q);
    let w3 = [
        BigRational::zero(),
        BigRational::zero(),
        BigRational::new(BigInt::from(params.a), q.clone()),
        BigRational::new(BigInt::one(), q),
    ];
    [
        QuatElement::one(params),
        QuatElement::new(
            params,
            [
                half.clone(),
                BigRational::zero(),
                half.clone(),
                BigRational::zero(),
            ],
        ),
        QuatElement::new(
            params,
            [BigRational::zero(), half.clone(), BigRational::zero(), half],
        ),
        QuatElement::new(params, w3),
    ]
}

/// Human-readable names of the order basis elements.
pub const ORDER_BASIS_NAMES: [&str; 4] = ["1", "(1+α)/2", "F(1+α)/2", "(a+F)α/q"];
