//! p-characters, the forms `b_theta`, and the distinguished classes of
//! regular semisimple and regular nilpotent characters.

use num_bigint::BigUint;
use rand::Rng;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::field::{Field, FieldElement as Fe};
use crate::linalg::Matrix;
use crate::superalg::{AlgebraError, Family, LieSuperalgebra, Parity, Slot, StructureTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PCharError {
    #[error("weights violate the separation constraint at ({i}, {j}): {reason}")]
    Constraint { i: usize, j: usize, reason: String },
    #[error("expected {expected} weights, got {got}")]
    WrongLength { expected: usize, got: usize },
    #[error("family {0} has no regular nilpotent generator")]
    UnsupportedFamily(Family),
    #[error("empty collection of p-characters")]
    Empty,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// A linear functional on the even part, stored as its values on the even basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PChar {
    pub values: Vec<Fe>,
}

impl PChar {
    pub fn zero(dim_even: usize) -> Self {
        PChar {
            values: vec![Fe::ZERO; dim_even],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|v| v.is_zero())
    }

    /// `theta(x)` for a sparse element; odd coordinates are ignored.
    pub fn eval_sparse(&self, f: &Field, x: &[(u32, Fe)]) -> Fe {
        x.iter()
            .filter(|(i, _)| (*i as usize) < self.values.len())
            .fold(f.zero(), |acc, &(i, c)| {
                f.mul_add(c, self.values[i as usize], acc)
            })
    }

    pub fn format(&self, f: &Field) -> Vec<String> {
        self.values.iter().map(|&v| f.format(v)).collect()
    }

    pub fn random<R: Rng + ?Sized>(f: &Field, dim_even: usize, rng: &mut R) -> Self {
        PChar {
            values: (0..dim_even).map(|_| f.random(rng)).collect(),
        }
    }
}

/// Weight values on the even Cartan basis of an algebra.
pub type WeightVector = Vec<Fe>;

fn serialize_decimal<S: Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_str_radix(10))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsotropyReport {
    pub b0: usize,
    pub b1: usize,
    pub centralizer_even: usize,
    pub centralizer_odd: usize,
    pub iso_even: usize,
    pub iso_odd: usize,
    /// `p^{b0/2} * 2^{ceil(b1/2)}`.
    #[serde(serialize_with = "serialize_decimal")]
    pub skw_term: BigUint,
}

/// Gram matrix `theta([x_i, x_j])` on one parity block.
pub fn gram_matrix(t: &StructureTable, theta: &PChar, part: Parity) -> Matrix {
    let f = &**t.field();
    let range = match part {
        Parity::Even => 0..t.dim_even(),
        Parity::Odd => t.dim_even()..t.dim(),
    };
    let m = range.len();
    let mut out = Matrix::zeros(m, m);
    for (a, i) in range.clone().enumerate() {
        for (b, j) in range.clone().enumerate() {
            out[(a, b)] = theta.eval_sparse(f, t.bracket_basis(i, j));
        }
    }
    out
}

pub fn skw_term(p: u32, b0: usize, b1: usize) -> BigUint {
    BigUint::from(p).pow((b0 / 2) as u32) * BigUint::from(2u32).pow(b1.div_ceil(2) as u32)
}

pub fn b_values(t: &StructureTable, theta: &PChar) -> IsotropyReport {
    let f = &**t.field();
    let d0 = t.dim_even();
    let d1 = t.dim_odd();
    let b0 = gram_matrix(t, theta, Parity::Even).rank(f);
    let b1 = gram_matrix(t, theta, Parity::Odd).rank(f);
    let c0 = d0 - b0;
    let c1 = d1 - b1;
    IsotropyReport {
        b0,
        b1,
        centralizer_even: c0,
        centralizer_odd: c1,
        iso_even: (d0 + c0) / 2,
        iso_odd: (d1 + c1) / 2,
        skw_term: skw_term(f.characteristic(), b0, b1),
    }
}

/// Maximum `skw_term` over a collection of reports.
pub fn skw_bound<'a, I>(reports: I) -> Result<BigUint, PCharError>
where
    I: IntoIterator<Item = &'a IsotropyReport>,
{
    reports
        .into_iter()
        .map(|r| r.skw_term.clone())
        .max()
        .ok_or(PCharError::Empty)
}

/// `theta o Ad(g)^{-1}`.
pub fn coadjoint(g: &LieSuperalgebra, gmat: &Matrix, theta: &PChar) -> Result<PChar, AlgebraError> {
    let f = &**g.field();
    let ginv = gmat.inverse(f).ok_or(AlgebraError::Singular)?;
    let a = g.adjoint_matrix(&ginv)?;
    let d0 = g.dim_even();
    let values = (0..d0)
        .map(|j| {
            (0..d0).fold(f.zero(), |acc, i| {
                f.mul_add(a[(i, j)], theta.values[i], acc)
            })
        })
        .collect();
    Ok(PChar { values })
}

/// All F_p-rational functionals on the even part, in base-`p` counting order.
pub fn rational_duals(g: &StructureTable) -> impl Iterator<Item = PChar> + '_ {
    let f = g.field().clone();
    let p = f.characteristic() as u64;
    let d0 = g.dim_even();
    let total = p.pow(d0 as u32);
    (0..total).map(move |mut idx| {
        let values = (0..d0)
            .map(|_| {
                let digit = idx % p;
                idx /= p;
                f.from_int(digit as i64)
            })
            .collect();
        PChar { values }
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Regularity {
    Regular,
    StronglyRegular,
}

/// Integer coefficients of a Cartan basis vector on `H_1..H_n` (or `J_1..J_n`).
pub fn cartan_coefficients(g: &LieSuperalgebra) -> Vec<Vec<i64>> {
    let f = g.field();
    let p = f.characteristic() as i64;
    let n = g.rank();
    g.cartan_even()
        .iter()
        .map(|&h| {
            let m = &g.basis()[h].matrix;
            (0..n)
                .map(|i| {
                    let c = f.coeffs(m[(i, i)])[0] as i64;
                    if c > p / 2 {
                        c - p
                    } else {
                        c
                    }
                })
                .collect()
        })
        .collect()
}

/// Value of `lambda` (given on `eps_1..eps_n`) on each even Cartan basis vector.
pub fn restrict_weights(g: &LieSuperalgebra, eps: &[Fe]) -> WeightVector {
    let f = g.field();
    cartan_coefficients(g)
        .iter()
        .map(|row| {
            row.iter()
                .zip(eps)
                .fold(f.zero(), |acc, (&c, &l)| f.mul_add(f.from_int(c), l, acc))
        })
        .collect()
}

fn as_value(f: &Field, lambda: Fe) -> Fe {
    f.frobenius_inverse(f.sub(f.frobenius(lambda), lambda))
}

/// Weights-first construction of a semisimple character in standard form.
///
/// `weights` are the values `lambda_i = lambda(H_i)` (or `lambda(J_i)`); the
/// returned weight vector holds the values on the algebra's own Cartan basis.
pub fn gen_regular_semisimple(
    g: &LieSuperalgebra,
    weights: &[Fe],
    kind: Regularity,
) -> Result<(PChar, WeightVector), PCharError> {
    let f = g.field();
    let n = g.rank();
    if weights.len() != n {
        return Err(PCharError::WrongLength {
            expected: n,
            got: weights.len(),
        });
    }
    for i in 0..n {
        if g.family().is_queer() && f.in_prime_field(weights[i]) {
            return Err(PCharError::Constraint {
                i,
                j: i,
                reason: "lambda_i lies in the prime field".into(),
            });
        }
        for j in i + 1..n {
            if f.in_prime_field(f.sub(weights[i], weights[j])) {
                return Err(PCharError::Constraint {
                    i,
                    j,
                    reason: "lambda_i - lambda_j lies in the prime field".into(),
                });
            }
            if g.family().is_queer()
                && kind == Regularity::StronglyRegular
                && f.in_prime_field(f.add(weights[i], weights[j]))
            {
                return Err(PCharError::Constraint {
                    i,
                    j,
                    reason: "lambda_i + lambda_j lies in the prime field".into(),
                });
            }
        }
    }
    let lambda = restrict_weights(g, weights);
    Ok((semisimple_character(g, &lambda), lambda))
}

/// The character with `lambda` in `Lambda(chi)` that vanishes off the Cartan.
pub fn semisimple_character(g: &LieSuperalgebra, lambda: &[Fe]) -> PChar {
    let f = g.field();
    let mut chi = PChar::zero(g.dim_even());
    for (&h, &l) in g.cartan_even().iter().zip(lambda) {
        chi.values[h] = as_value(f, l);
    }
    chi
}

/// `chi(X_{-alpha}) = 1` on the negative simple roots, zero elsewhere.
pub fn gen_regular_nilpotent(g: &LieSuperalgebra) -> Result<PChar, PCharError> {
    if !g.family().is_periplectic() {
        return Err(PCharError::UnsupportedFamily(g.family()));
    }
    let n = g.rank();
    let mut chi = PChar::zero(g.dim_even());
    for i in 0..n - 1 {
        let mut root = vec![0; n];
        root[i] = -1;
        root[i + 1] = 1;
        let idx = g
            .root_vector(&root, Parity::Even)
            .expect("negative simple root vector exists");
        chi.values[idx] = Fe::ONE;
    }
    Ok(chi)
}

/// `chi` vanishes on the even positive nilpotent part.
pub fn vanishes_on_pos(g: &LieSuperalgebra, chi: &PChar) -> bool {
    g.slot_indices(Slot::PosEven)
        .iter()
        .all(|&i| chi.values[i].is_zero())
}

/// `Lambda(chi)`: per Cartan coordinate the Artin-Schreier roots of `chi(h)^p`.
pub fn lambda_set(g: &LieSuperalgebra, chi: &PChar) -> Vec<WeightVector> {
    let f = g.field();
    let mut out: Vec<WeightVector> = vec![Vec::new()];
    for &h in &g.cartan_even() {
        debug_assert_eq!(g.table().pmap_basis(h), &vec![(h as u32, Fe::ONE)]);
        let roots = f.artin_schreier_roots(f.frobenius(chi.values[h]));
        out = out
            .into_iter()
            .flat_map(|w| {
                roots.iter().map(move |&r| {
                    let mut w = w.clone();
                    w.push(r);
                    w
                })
            })
            .collect();
    }
    out
}

/// Whether `lambda` lies in `Lambda(chi)`; returns the failing coordinate.
pub fn check_weight(g: &LieSuperalgebra, chi: &PChar, lambda: &[Fe]) -> Result<(), usize> {
    let f = g.field();
    let cartan = g.cartan_even();
    if lambda.len() != cartan.len() {
        return Err(lambda.len().min(cartan.len()));
    }
    for (pos, (&h, &l)) in cartan.iter().zip(lambda).enumerate() {
        if f.sub(f.frobenius(l), l) != f.frobenius(chi.values[h]) {
            return Err(pos);
        }
    }
    Ok(())
}
