//! The Chern class map `c₁ : NS(A)/p → H¹(A, Ω¹)` over `F_{p²}`.
//!
//! `H¹(A, Ω¹)` is written in the basis `Ω₁..Ω₄` with `c₁(E₂) = Ω₁`,
//! `c₁(E₁) = Ω₄`, `c₁(Δ) = Ω₁ + Ω₂ + Ω₃ + Ω₄`. An endomorphism `x ∈ O`
//! acts on `H⁰(E, Ω¹)` through the reduction `φ : O → F_{p²}` (`F ↦ 0`,
//! `α ↦ t`) and on `H¹(E, O_E)` through its Frobenius conjugate, which
//! gives the closed form
//!
//! ```text
//! c₁([a, beta; conj(beta), d]) = (a, φ(beta), φ(beta)^p, d)  mod p
//! ```

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::arith::{inv_mod, mul_mod, reduce_big, reduce_i128, reduce_rational};
use crate::error::{Error, Result};
use crate::field::{Field, Fp2, Fp2Field, PrimeField};
use crate::lattice::{basis_divisors, coords_to_matrix, DivisorCoords, DivisorMatrix, BASIS_NAMES};
use crate::linalg::{canonical_span, null_space, rank, rref, Matrix};
use crate::quat::{AlgebraParams, OrderElement, QuatElement};

/// A class in `H¹(A, Ω¹)`, coordinates on `Ω₁..Ω₄`.
pub type H11Class = [Fp2; 4];

/// A residue vector in `NS(A)/p`, coordinates on [`BASIS_NAMES`].
pub type NsResidue = [u64; 6];

/// Which square root of `-q` the action of `α` on invariant differentials
/// is identified with.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TConvention {
    #[default]
    AlphaIsT,
    AlphaIsMinusT,
}

#[derive(Debug, Clone, Copy)]
pub struct ChernMap {
    params: AlgebraParams,
    field: Fp2Field,
    convention: TConvention,
}

impl ChernMap {
    pub fn new(params: AlgebraParams) -> Self {
        Self::with_convention(params, TConvention::default())
    }

    pub fn with_convention(params: AlgebraParams, convention: TConvention) -> Self {
        Self {
            params,
            field: Fp2Field::new(&params),
            convention,
        }
    }

    pub fn params(&self) -> AlgebraParams {
        self.params
    }

    pub fn field(&self) -> &Fp2Field {
        &self.field
    }

    fn fp(&self) -> &PrimeField {
        self.field.base()
    }

    /// The image of `α`, i.e. `±t`.
    fn alpha_image(&self) -> Fp2 {
        match self.convention {
            TConvention::AlphaIsT => self.field.t(),
            TConvention::AlphaIsMinusT => self.field.neg(&self.field.t()),
        }
    }

    /// `φ(y0 + y1 w1 + y2 w2 + y3 w3) = y0 + y1 (1+t)/2 + y3 a t / q`.
    pub fn phi(&self, x: &OrderElement) -> Fp2 {
        let k = &self.field;
        let p = self.params.p;
        let half = inv_mod(2, p).expect("p is odd");
        let q_inv = inv_mod(self.params.q, p).expect("q != p");
        let s = self.alpha_image();
        let w1 = k.scale(half, &k.add(&k.one(), &s));
        let w3 = k.scale(mul_mod(self.params.a % p, q_inv, p), &s);
        let [y0, y1, _, y3] = x.coords();
        let term = |y: &BigInt, w: &Fp2| k.scale(reduce_big(y, p), w);
        k.add(&k.add(&term(y0, &k.one()), &term(y1, &w1)), &term(y3, &w3))
    }

    /// `φ` evaluated on `B`-coordinates (`F ↦ 0`, `α ↦ t`); `None` when a
    /// coefficient is not `p`-integral.
    pub fn phi_quat(&self, x: &QuatElement) -> Option<Fp2> {
        let k = &self.field;
        let p = self.params.p;
        let [x0, _, x2, _] = x.coeffs();
        let c0 = reduce_rational(x0, p)?;
        let c2 = reduce_rational(x2, p)?;
        Some(k.add(&k.from_base(c0), &k.scale(c2, &self.alpha_image())))
    }

    pub fn c1(&self, m: &DivisorMatrix) -> H11Class {
        let k = &self.field;
        let p = self.params.p;
        let b = self.phi(&m.beta);
        [
            k.from_base(reduce_big(&m.a, p)),
            b,
            k.frobenius(&b),
            k.from_base(reduce_big(&m.d, p)),
        ]
    }

    pub fn matrix(&self) -> ChernMatrix {
        let columns = basis_divisors(self.params).map(|d| self.c1(&d));
        ChernMatrix {
            field: self.field,
            columns,
        }
    }

    /// `c₁` of a residue vector, computed through the lattice rather than
    /// through the Chern matrix.
    pub fn c1_of_residue(&self, v: &NsResidue) -> H11Class {
        let coords = DivisorCoords(v.map(BigInt::from));
        self.c1(&coords_to_matrix(self.params, &coords))
    }

    pub fn kernel(&self) -> KernelBasis {
        let fp = self.fp();
        let system = self.matrix().flatten();
        let ns = null_space(fp, &system);
        let vectors: Vec<NsResidue> = canonical_span(fp, &ns, 6)
            .into_iter()
            .map(|v| v.try_into().expect("six coordinates"))
            .collect();
        KernelBasis {
            dimension: vectors.len(),
            image_dimension: 6 - vectors.len(),
            vectors,
        }
    }
}

/// The 4×6 matrix of `c₁` on the NS basis; column `j` is `u_{j+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChernMatrix {
    field: Fp2Field,
    pub columns: [H11Class; 6],
}

impl ChernMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Fp2 {
        self.columns[col][row]
    }

    pub fn rows(&self) -> [[Fp2; 6]; 4] {
        std::array::from_fn(|r| std::array::from_fn(|c| self.entry(r, c)))
    }

    /// The `F_p`-linear system: each row splits into its constant part and
    /// its `t`-part.
    pub fn flatten(&self) -> Matrix<u64> {
        let rows = (0..8)
            .map(|i| {
                (0..6)
                    .map(|c| {
                        let e = self.entry(i / 2, c);
                        if i % 2 == 0 {
                            e.c0
                        } else {
                            e.c1
                        }
                    })
                    .collect()
            })
            .collect();
        Matrix::from_rows(rows, 6)
    }

    pub fn rank_over_fp2(&self) -> usize {
        let rows = self.rows().iter().map(|r| r.to_vec()).collect();
        rank(&self.field, &Matrix::from_rows(rows, 6))
    }

    pub fn apply(&self, v: &NsResidue) -> H11Class {
        let k = &self.field;
        std::array::from_fn(|r| {
            (0..6).fold(k.zero(), |acc, c| {
                k.add(&acc, &k.scale(v[c], &self.entry(r, c)))
            })
        })
    }

    pub fn annihilates(&self, v: &NsResidue) -> bool {
        self.apply(v).iter().all(|e| *e == Fp2::new(0, 0))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KernelBasis {
    pub dimension: usize,
    pub image_dimension: usize,
    /// Rows of the reduced row-echelon form of the kernel, entries in `0..p`.
    pub vectors: Vec<NsResidue>,
}

pub fn kernel_basis(params: AlgebraParams) -> KernelBasis {
    ChernMap::new(params).kernel()
}

pub fn chern_matrix(params: AlgebraParams) -> ChernMatrix {
    ChernMap::new(params).matrix()
}

/// The six vectors `u₁..u₆` as written in closed form, reduced mod `p`:
/// `(0,0,0,1)`, `(1,0,0,0)`, `(1,1,1,1)`, `(1, (1+t)/2, (1-t)/2, (1+q)/4)`,
/// `(1,0,0,0)`, `(1, a t/q, -a t/q, a²/q)`.
pub fn displayed_u_vectors(params: AlgebraParams) -> [H11Class; 6] {
    let k = Fp2Field::new(&params);
    let p = params.p;
    let fp = k.base();
    let inv = |n: u64| inv_mod(n, p).expect("invertible mod p");
    let half = inv(2);
    let q_inv = inv(params.q);
    let a = params.a % p;
    let c = |x: u64, y: u64| Fp2::new(x, y);
    let e2 = c(1, 0);
    let at_q = mul_mod(a, q_inv, p);
    let one_plus_q_over_4 = mul_mod(reduce_i128(1 + params.q as i128, p), inv(4), p);
    [
        [c(0, 0), c(0, 0), c(0, 0), c(1, 0)],
        [e2, c(0, 0), c(0, 0), c(0, 0)],
        [c(1, 0); 4],
        [
            c(1, 0),
            c(half, half),
            c(half, fp.neg(&half)),
            c(one_plus_q_over_4, 0),
        ],
        [e2, c(0, 0), c(0, 0), c(0, 0)],
        [
            c(1, 0),
            c(0, at_q),
            c(0, fp.neg(&at_q)),
            c(mul_mod(mul_mod(a, a, p), q_inv, p), 0),
        ],
    ]
}

/// `ℓ ≡ a / 2q (mod p)`.
pub fn ell(params: AlgebraParams) -> u64 {
    let p = params.p;
    let two_q = mul_mod(2, params.q % p, p);
    mul_mod(params.a % p, inv_mod(two_q, p).expect("p ∤ 2q"), p)
}

/// Solves `u₆ = c₄u₄ + c₃u₃ + c₂u₂ + c₁u₁` over `F_p` by elimination and
/// returns `(-c₁, -c₂, -c₃, -c₄, 0, 1)`.
pub fn second_kernel_vector(params: AlgebraParams) -> Result<NsResidue> {
    let chern = chern_matrix(params);
    let flat = chern.flatten();
    let fp = PrimeField::new(params.p);
    // Augmented 8×5 system [u₁ u₂ u₃ u₄ | u₆].
    let rows = (0..8)
        .map(|i| [0, 1, 2, 3, 5].iter().map(|&c| *flat.get(i, c)).collect())
        .collect();
    let mut aug = Matrix::from_rows(rows, 5);
    let pivots = rref(&fp, &mut aug);
    if pivots != [0, 1, 2, 3] {
        return Err(Error::Inconsistent(format!(
            "u₆ is not a unique F_p-combination of u₁..u₄ at p = {} (pivots {pivots:?})",
            params.p
        )));
    }
    let coeff = |i: usize| fp.neg(aug.get(i, 4));
    let v = [coeff(0), coeff(1), coeff(2), coeff(3), 0, 1];
    if !chern.annihilates(&v) {
        return Err(Error::Inconsistent(
            "recomputed kernel vector is not in the kernel".into(),
        ));
    }
    Ok(v)
}

/// One audited kernel candidate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub label: String,
    pub description: String,
    pub vector: NsResidue,
    pub member: bool,
    /// `c₁` of the candidate; present only when it is nonzero.
    pub residual: Option<H11Class>,
}

/// Status of the printed subscript `(2+Fα)/q` as an endomorphism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralSubscript {
    pub expression: String,
    pub in_order: bool,
    /// Coordinates in the order basis `1, (1+α)/2, F(1+α)/2, (a+F)α/q`.
    pub order_coords: [String; 4],
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Audit {
    pub ell: u64,
    pub literal_subscript: LiteralSubscript,
    pub candidates: Vec<Candidate>,
    /// Derived from elimination, not copied from a formula.
    pub corrected_second_vector: NsResidue,
}

impl Audit {
    pub fn candidate(&self, label: &str) -> Option<&Candidate> {
        self.candidates.iter().find(|c| c.label == label)
    }
}

/// Checks the printed kernel vectors against the computed Chern matrix.
///
/// * `(i)`   `Δ_{F(1+α)/2} - E₂`
/// * `(ii)`  `Δ_{(a+F)α/q} - ℓΔ_{(1+α)/2} + 2ℓΔ - (ℓ+1)E₂ - (1-q+2a)ℓE₁`
/// * `(iii)` `u₆ - (2a/q)u₄ + (a/q)u₃ - (a/2q + 1)u₂ - (a/2q - a/2 + a²/q)u₁`
pub fn audit_printed_basis(params: AlgebraParams) -> Result<Audit> {
    let chern = chern_matrix(params);
    let p = params.p;
    let fp = PrimeField::new(p);
    let (a, q) = (params.a as i128, params.q as i128);
    let l = ell(params);
    let li = l as i128;
    let r = |n: i128| reduce_i128(n, p);
    let frac = |num: i128, den: i128| mul_mod(r(num), inv_mod(r(den), p).expect("unit mod p"), p);

    let first = [0, r(-1), 0, 0, 1, 0];
    let second = [
        r(-(1 - q + 2 * a) * li),
        r(-(li + 1)),
        r(2 * li),
        r(-li),
        0,
        1,
    ];
    let c2_printed = fp.add(&frac(a, 2 * q), &1);
    let c1_printed = fp.add(&fp.sub(&frac(a, 2 * q), &frac(a, 2)), &frac(a * a, q));
    let third = [
        fp.neg(&c1_printed),
        fp.neg(&c2_printed),
        frac(a, q),
        fp.neg(&frac(2 * a, q)),
        0,
        1,
    ];

    let judge = |label: &str, description: &str, vector: NsResidue| {
        let image = chern.apply(&vector);
        let member = image.iter().all(|e| *e == Fp2::new(0, 0));
        Candidate {
            label: label.into(),
            description: description.into(),
            vector,
            member,
            residual: (!member).then_some(image),
        }
    };
    let candidates = vec![
        judge("i", "Δ_{F(1+α)/2} - E₂", first),
        judge(
            "ii",
            "Δ_{(a+F)α/q} - ℓΔ_{(1+α)/2} + 2ℓΔ - (ℓ+1)E₂ - (1-q+2a)ℓE₁",
            second,
        ),
        judge(
            "iii",
            "u₆ - (2a/q)u₄ + (a/q)u₃ - (a/2q + 1)u₂ - (a/2q - a/2 + a²/q)u₁",
            third,
        ),
    ];

    let over_q = |n: i64| BigRational::new(n.into(), params.q.into());
    let literal = QuatElement::new(params, [over_q(2), over_q(0), over_q(0), over_q(1)]);
    let order_coords = literal.order_coords_rational().map(|c| c.to_string());
    let literal_subscript = LiteralSubscript {
        expression: "(2+Fα)/q".into(),
        in_order: literal.to_order_coords().is_ok(),
        order_coords,
    };

    Ok(Audit {
        ell: l,
        literal_subscript,
        candidates,
        corrected_second_vector: second_kernel_vector(params)?,
    })
}

/// Dimension bookkeeping for the Kummer surface `Km(A)` of `A`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KummerReport {
    pub p: u64,
    pub ns_rank_abelian: usize,
    /// Exceptional curves over the 2-torsion points.
    pub exceptional_curves: usize,
    /// Rank of `NS` of the blow-up, equal to `b₂ = 22`.
    pub ns_rank_kummer: usize,
    pub kernel_dimension_abelian: usize,
    /// `NS(Ã)/p ≅ NS(Km(A))/p` for odd `p`, so the kernel transfers.
    pub kernel_dimension_kummer: usize,
    pub artin_invariant: u32,
}

pub fn kummer_report(params: AlgebraParams) -> KummerReport {
    let kernel = kernel_basis(params);
    KummerReport {
        p: params.p,
        ns_rank_abelian: 6,
        exceptional_curves: 16,
        ns_rank_kummer: 6 + 16,
        kernel_dimension_abelian: kernel.dimension,
        kernel_dimension_kummer: kernel.dimension,
        artin_invariant: 1,
    }
}

/// Signed divisor combination such as `-E₂ + Δ_{F(1+α)/2}`, using the
/// residue representatives in `(-p/2, p/2]`.
pub fn format_combination(v: &NsResidue, p: u64) -> String {
    let mut out = String::new();
    for (c, name) in v.iter().zip(BASIS_NAMES) {
        let c = *c % p;
        if c == 0 {
            continue;
        }
        let signed: i128 = if c > p / 2 {
            c as i128 - p as i128
        } else {
            c as i128
        };
        let mag = signed.unsigned_abs();
        let neg = signed < 0;
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        if mag != 1 {
            out.push_str(&mag.to_string());
        }
        out.push_str(name);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
