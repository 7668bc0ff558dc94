//! Irreducibility and graded simplicity of explicit matrix representations.
//!
//! The test is Norton's: pick an algebra element `B` with a nonzero kernel.
//! If every nonzero kernel vector spins to the whole space and one kernel
//! vector of `B^T` spins to the whole dual space under the transposed
//! generators, the representation is irreducible. Otherwise a spin produces
//! a proper invariant subspace, which is returned as the witness.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::envmod::InducedModule;
use crate::field::{Field, FieldElement as Fe};
use crate::linalg::{Matrix, SparseMatrix, SparseVec, Subspace};
use crate::superalg::{Parity, StructureTable};

/// Random words tried before falling back to higher-degree factors.
pub const WORD_BUDGET: usize = 200;
/// Further words tried for a nullity-one kernel once some kernel is known.
/// Modules that stay irreducible over a larger field never produce one.
pub const PATIENCE: usize = 6;
/// Largest factor degree searched for in each word's characteristic polynomial.
pub const MAX_FACTOR_DEGREE: usize = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MeatAxeError {
    #[error("seed vector is zero")]
    ZeroSeed,
    #[error("seed vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
}

/// A representation given by one matrix per algebra basis vector.
#[derive(Clone, Debug)]
pub struct GradedRep {
    field: Arc<Field>,
    parity: Vec<Parity>,
    gens: Vec<SparseMatrix>,
    gen_parity: Vec<Parity>,
    spin_gens: Vec<usize>,
    pub provenance: String,
}

impl GradedRep {
    pub fn new(
        field: Arc<Field>,
        parity: Vec<Parity>,
        gens: Vec<SparseMatrix>,
        gen_parity: Vec<Parity>,
        provenance: String,
    ) -> Self {
        assert_eq!(gens.len(), gen_parity.len());
        let spin_gens = (0..gens.len()).collect();
        GradedRep {
            field,
            parity,
            gens,
            gen_parity,
            spin_gens,
            provenance,
        }
    }

    /// Generators are the action matrices of the algebra basis; spinning uses
    /// a subset that generates the algebra under brackets.
    pub fn from_module(m: &InducedModule, provenance: &str) -> Self {
        let t = m.table();
        let mut rep = GradedRep::new(
            m.field().clone(),
            m.parity().to_vec(),
            m.actions().to_vec(),
            t.parities().to_vec(),
            provenance.into(),
        );
        rep.spin_gens = lie_generators(t);
        rep
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    pub fn generators(&self) -> &[SparseMatrix] {
        &self.gens
    }

    pub fn generator_parity(&self) -> &[Parity] {
        &self.gen_parity
    }

    pub fn spin_generators(&self) -> &[usize] {
        &self.spin_gens
    }

    pub fn set_spin_generators(&mut self, idx: Vec<usize>) {
        self.spin_gens = idx;
    }

    /// Each generator maps homogeneous vectors to homogeneous vectors of the
    /// right parity.
    pub fn parity_consistent(&self) -> bool {
        self.gens.iter().zip(&self.gen_parity).all(|(g, &pg)| {
            (0..self.dim()).all(|j| {
                g.column(j)
                    .iter()
                    .all(|&(i, _)| self.parity[i as usize] == self.parity[j].add(pg))
            })
        })
    }

    /// The parity involution `P`, `+1` on even and `-1` on odd vectors.
    pub fn parity_operator(&self) -> SparseMatrix {
        let f = &self.field;
        SparseMatrix::diagonal(
            &self
                .parity
                .iter()
                .map(|p| if p.is_odd() { f.neg(f.one()) } else { f.one() })
                .collect::<Vec<_>>(),
        )
    }

    /// The same representation with `P` appended as an extra generator; its
    /// invariant subspaces are exactly the homogeneous ones.
    pub fn with_parity_operator(&self) -> GradedRep {
        let mut r = self.clone();
        r.gens.push(self.parity_operator());
        r.gen_parity.push(Parity::Even);
        r.spin_gens.push(r.gens.len() - 1);
        r
    }

    /// Direct sum with another representation of the same algebra.
    pub fn direct_sum(&self, other: &GradedRep) -> GradedRep {
        let d1 = self.dim();
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut cols: Vec<SparseVec> = (0..d1).map(|j| a.column(j).clone()).collect();
                cols.extend((0..b.dim()).map(|j| {
                    b.column(j)
                        .iter()
                        .map(|&(i, c)| (i + d1 as u32, c))
                        .collect()
                }));
                SparseMatrix::from_columns(cols)
            })
            .collect();
        let mut parity = self.parity.clone();
        parity.extend(&other.parity);
        let mut r = GradedRep::new(
            self.field.clone(),
            parity,
            gens,
            self.gen_parity.clone(),
            format!("{} + {}", self.provenance, other.provenance),
        );
        r.spin_gens = self.spin_gens.clone();
        r
    }

    /// The parity-shifted copy.
    pub fn parity_shift(&self) -> GradedRep {
        let mut r = self.clone();
        r.parity = self.parity.iter().map(|p| p.add(Parity::Odd)).collect();
        r
    }
}

/// A small subset of basis indices generating the whole table under brackets.
pub fn lie_generators(t: &StructureTable) -> Vec<usize> {
    let f = &**t.field();
    let d = t.dim();
    let generated = |gens: &[usize]| -> usize {
        let mut span = Subspace::new(d);
        let mut elems: Vec<Vec<Fe>> = Vec::new();
        for &g in gens {
            let mut e = vec![Fe::ZERO; d];
            e[g] = Fe::ONE;
            if span.insert(f, e.clone()) {
                elems.push(e);
            }
        }
        let mut k = 0;
        while k < elems.len() {
            for &g in gens {
                let mut e = vec![Fe::ZERO; d];
                e[g] = Fe::ONE;
                let b = t.bracket(&e, &elems[k]).expect("length matches");
                if span.insert(f, b.clone()) {
                    elems.push(b);
                }
            }
            k += 1;
        }
        span.dim()
    };
    // odd vectors first: their brackets reach most of the even part
    let order: Vec<usize> = (t.dim_even()..d).chain(0..t.dim_even()).collect();
    let mut gens: Vec<usize> = Vec::new();
    let mut current = 0;
    for &c in &order {
        if current == d {
            break;
        }
        let mut trial = gens.clone();
        trial.push(c);
        let g = generated(&trial);
        if g > current {
            gens = trial;
            current = g;
        }
    }
    let mut i = 0;
    while i < gens.len() {
        let mut trial = gens.clone();
        trial.remove(i);
        if generated(&trial) == d {
            gens = trial;
        } else {
            i += 1;
        }
    }
    gens.sort_unstable();
    gens
}

fn spin_matrices(
    f: &Field,
    gens: &[&SparseMatrix],
    seeds: &[Vec<Fe>],
    transpose: bool,
    dim: usize,
) -> Subspace {
    let mut space = Subspace::new(dim);
    let mut queue: Vec<Vec<Fe>> = Vec::new();
    for s in seeds {
        if space.insert(f, s.clone()) {
            queue.push(s.clone());
        }
    }
    let mut k = 0;
    while k < queue.len() && !space.is_full() {
        for g in gens {
            let img = if transpose {
                g.apply_transpose(f, &queue[k])
            } else {
                g.apply(f, &queue[k])
            };
            if space.insert(f, img.clone()) {
                queue.push(img);
                if space.is_full() {
                    break;
                }
            }
        }
        k += 1;
    }
    space
}

/// Smallest invariant subspace containing the seeds (spin generators only).
pub fn spin(rep: &GradedRep, seeds: &[Vec<Fe>]) -> Result<Subspace, MeatAxeError> {
    for s in seeds {
        if s.len() != rep.dim() {
            return Err(MeatAxeError::WrongLength {
                expected: rep.dim(),
                got: s.len(),
            });
        }
        if s.iter().all(|c| c.is_zero()) {
            return Err(MeatAxeError::ZeroSeed);
        }
    }
    let gens: Vec<&SparseMatrix> = rep.spin_gens.iter().map(|&i| &rep.gens[i]).collect();
    Ok(spin_matrices(&rep.field, &gens, seeds, false, rep.dim()))
}

fn spin_dual(rep: &GradedRep, seed: &[Fe]) -> Subspace {
    let gens: Vec<&SparseMatrix> = rep.spin_gens.iter().map(|&i| &rep.gens[i]).collect();
    spin_matrices(&rep.field, &gens, &[seed.to_vec()], true, rep.dim())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Irreducible,
    GradedSimpleTypeQ,
    Reducible,
}

/// `sum c * (product of letters)`, each letter a linear combination of the
/// generators; words are applied rightmost first.
#[derive(Clone, Debug, Serialize)]
pub struct AlgebraWord {
    pub letters: Vec<Vec<(usize, Fe)>>,
    pub terms: Vec<(Fe, Vec<usize>)>,
}

/// Data that proves irreducibility without repeating the search.
#[derive(Clone, Debug, Serialize)]
pub struct NortonData {
    pub element: AlgebraWord,
    /// `B = poly(A)`, coefficients constant term first.
    pub poly: Vec<Fe>,
    pub nullspace: Vec<Vec<Fe>>,
    /// `poly` is irreducible and the kernel has dimension `deg poly`, so the
    /// kernel is cyclic under `A` and one spin covers every kernel vector.
    pub cyclic: bool,
    pub dual_vector: Vec<Fe>,
    /// Dimensions reached by the nullspace spins and the dual spin.
    pub spin_dims: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SimplicityCertificate {
    pub verdict: Verdict,
    pub dimension: usize,
    pub seed: u64,
    /// Whether the parity operator was part of the generating set.
    pub graded: bool,
    pub generators: Vec<usize>,
    /// Basis of a proper invariant subspace when reducible.
    pub witness: Option<Vec<Vec<Fe>>>,
    pub norton: Option<NortonData>,
    pub words_tried: usize,
}

fn letter_matrices(rep: &GradedRep, w: &AlgebraWord) -> Vec<SparseMatrix> {
    let f = &*rep.field;
    w.letters
        .iter()
        .map(|combo| {
            combo
                .iter()
                .fold(SparseMatrix::zeros(rep.dim()), |acc, &(g, c)| {
                    acc.lin_comb(f, Fe::ONE, &rep.gens[g], c)
                })
        })
        .collect()
}

fn word_matrix(rep: &GradedRep, w: &AlgebraWord) -> Matrix {
    let f = &*rep.field;
    let d = rep.dim();
    let letters = letter_matrices(rep, w);
    let mut a = Matrix::zeros(d, d);
    for j in 0..d {
        let mut col = vec![Fe::ZERO; d];
        for (c, word) in &w.terms {
            let mut v = vec![Fe::ZERO; d];
            v[j] = *c;
            for &l in word.iter().rev() {
                v = letters[l].apply(f, &v);
            }
            for (x, y) in col.iter_mut().zip(v) {
                *x = f.add(*x, y);
            }
        }
        for (i, x) in col.into_iter().enumerate() {
            a[(i, j)] = x;
        }
    }
    a
}

fn poly_eval_matrix(f: &Field, poly: &[Fe], a: &Matrix) -> Matrix {
    let d = a.rows();
    let mut acc = Matrix::zeros(d, d);
    for &c in poly.iter().rev() {
        acc = acc.mul(f, a);
        for i in 0..d {
            acc[(i, i)] = f.add(acc[(i, i)], c);
        }
    }
    acc
}

mod upoly {
    //! Univariate polynomials over a finite field, constant term first.
    use crate::field::{Field, FieldElement as Fe};

    pub fn trim(mut a: Vec<Fe>) -> Vec<Fe> {
        while a.last().is_some_and(|c| c.is_zero()) {
            a.pop();
        }
        a
    }

    pub fn rem(f: &Field, a: &[Fe], m: &[Fe]) -> Vec<Fe> {
        let mut r = trim(a.to_vec());
        let lead_inv = f.inv(*m.last().unwrap()).unwrap();
        while r.len() >= m.len() {
            let c = f.mul(*r.last().unwrap(), lead_inv);
            let shift = r.len() - m.len();
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
            }
            r = trim(r);
        }
        r
    }

    pub fn mul_mod(f: &Field, a: &[Fe], b: &[Fe], m: &[Fe]) -> Vec<Fe> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![Fe::ZERO; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = f.mul_add(x, y, out[i + j]);
            }
        }
        rem(f, &out, m)
    }

    pub fn pow_mod(f: &Field, base: &[Fe], mut e: u64, m: &[Fe]) -> Vec<Fe> {
        let mut result = rem(f, &[f.one()], m);
        let mut b = rem(f, base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(f, &result, &b, m);
            }
            b = mul_mod(f, &b, &b, m);
            e >>= 1;
        }
        result
    }

    pub fn gcd(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let mut a = trim(a.to_vec());
        let mut b = trim(b.to_vec());
        while !b.is_empty() {
            let r = rem(f, &a, &b);
            a = b;
            b = r;
        }
        let inv = f.inv(*a.last().unwrap()).unwrap();
        a.iter().map(|&c| f.mul(c, inv)).collect()
    }

    pub fn sub(f: &Field, a: &[Fe], b: &[Fe]) -> Vec<Fe> {
        let n = a.len().max(b.len());
        trim(
            (0..n)
                .map(|i| {
                    f.sub(
                        a.get(i).copied().unwrap_or(Fe::ZERO),
                        b.get(i).copied().unwrap_or(Fe::ZERO),
                    )
                })
                .collect(),
        )
    }

    pub fn divrem(f: &Field, a: &[Fe], m: &[Fe]) -> (Vec<Fe>, Vec<Fe>) {
        let mut r = trim(a.to_vec());
        if r.len() < m.len() {
            return (Vec::new(), r);
        }
        let lead_inv = f.inv(*m.last().unwrap()).unwrap();
        let mut q = vec![Fe::ZERO; r.len() - m.len() + 1];
        while r.len() >= m.len() {
            let c = f.mul(*r.last().unwrap(), lead_inv);
            let shift = r.len() - m.len();
            q[shift] = c;
            for (i, &mc) in m.iter().enumerate() {
                r[shift + i] = f.sub(r[shift + i], f.mul(c, mc));
            }
            r = trim(r);
        }
        (q, r)
    }

    /// Multiplicity of `g` as a factor of `a`.
    pub fn multiplicity(f: &Field, a: &[Fe], g: &[Fe]) -> usize {
        let mut a = trim(a.to_vec());
        let mut k = 0;
        loop {
            let (q, r) = divrem(f, &a, g);
            if !r.is_empty() || q.is_empty() {
                return k;
            }
            a = q;
            k += 1;
        }
    }

    fn x_power_frobenius(f: &Field, m: &[Fe], e: usize) -> Vec<Fe> {
        let mut xq = vec![Fe::ZERO, f.one()];
        for _ in 0..e {
            xq = pow_mod(f, &xq, f.order() as u64, m);
        }
        xq
    }

    /// Irreducibility over the base field (Rabin's criterion).
    pub fn is_irreducible(f: &Field, g: &[Fe]) -> bool {
        let g = trim(g.to_vec());
        let n = g.len().saturating_sub(1);
        if n == 0 {
            return false;
        }
        let x = vec![Fe::ZERO, f.one()];
        if !rem(f, &sub(f, &x_power_frobenius(f, &g, n), &x), &g).is_empty() {
            return false;
        }
        (2..=n)
            .filter(|&r| n % r == 0 && (2..r).all(|t| r % t != 0))
            .all(|r| {
                let h = sub(f, &x_power_frobenius(f, &g, n / r), &x);
                gcd(f, &g, &h).len() == 1
            })
    }

    /// Monic irreducible factors of `h`, which must be a product of distinct
    /// irreducibles of degree `e`. Requires odd characteristic.
    pub fn equal_degree_split<R: rand::Rng>(
        f: &Field,
        h: &[Fe],
        e: usize,
        rng: &mut R,
    ) -> Vec<Vec<Fe>> {
        let deg = h.len() - 1;
        if deg == e {
            return vec![h.to_vec()];
        }
        let half = (f.order() as u64 - 1) / 2;
        loop {
            let a: Vec<Fe> = trim((0..deg).map(|_| f.random(rng)).collect());
            if a.len() < 2 {
                continue;
            }
            let b = pow_mod(f, &a, half, h);
            let mut c = b.clone();
            let mut t = b;
            for _ in 1..e {
                c = pow_mod(f, &c, f.order() as u64, h);
                t = mul_mod(f, &t, &c, h);
            }
            let d = gcd(f, h, &sub(f, &t, &[f.one()]));
            if d.len() > 1 && d.len() < h.len() {
                let (other, _) = divrem(f, h, &d);
                let inv = f.inv(*other.last().unwrap()).unwrap();
                let other: Vec<Fe> = other.iter().map(|&c| f.mul(c, inv)).collect();
                let mut out = equal_degree_split(f, &d, e, rng);
                out.extend(equal_degree_split(f, &other, e, rng));
                return out;
            }
        }
    }

    /// Irreducible factors of smallest degree `e <= max_degree`, each with its
    /// multiplicity in `a`.
    pub fn smallest_factors<R: rand::Rng>(
        f: &Field,
        a: &[Fe],
        max_degree: usize,
        rng: &mut R,
    ) -> Option<(usize, Vec<(Vec<Fe>, usize)>)> {
        let x = vec![Fe::ZERO, f.one()];
        let mut xq = x.clone();
        for e in 1..=max_degree.min(a.len() - 1) {
            xq = pow_mod(f, &xq, f.order() as u64, a);
            let h = gcd(f, a, &sub(f, &xq, &x));
            if h.len() > 1 {
                let factors = equal_degree_split(f, &h, e, rng)
                    .into_iter()
                    .map(|g| {
                        let m = multiplicity(f, a, &g);
                        (g, m)
                    })
                    .collect();
                return Some((e, factors));
            }
        }
        None
    }
}

fn random_word<R: Rng>(f: &Field, ngens: usize, rng: &mut R) -> AlgebraWord {
    let letters = (0..2)
        .map(|_| (0..ngens).map(|g| (g, f.random(rng))).collect())
        .collect();
    let terms = (0..3)
        .map(|_| {
            let len = rng.gen_range(2..=6);
            let word = (0..len).map(|_| rng.gen_range(0..2)).collect();
            (f.random_nonzero(rng), word)
        })
        .collect();
    AlgebraWord { letters, terms }
}

/// Nonzero vectors of the span of `basis` up to scalars.
fn projective_points(f: &Field, basis: &[Vec<Fe>]) -> Vec<Vec<Fe>> {
    let d = basis.len();
    let q = f.order() as usize;
    let n = basis[0].len();
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let total = q.pow(free as u32);
        for idx in 0..total {
            let mut v = basis[lead].clone();
            let mut t = idx;
            for b in &basis[lead + 1..] {
                let c = f.element(t % q);
                t /= q;
                crate::linalg::axpy(f, c, b, &mut v);
            }
            debug_assert_eq!(v.len(), n);
            out.push(v);
        }
    }
    out
}

fn reducible(
    rep: &GradedRep,
    seed: u64,
    graded: bool,
    witness: &Subspace,
    words: usize,
) -> SimplicityCertificate {
    SimplicityCertificate {
        verdict: Verdict::Reducible,
        dimension: rep.dim(),
        seed,
        graded,
        generators: rep.spin_gens.clone(),
        witness: Some(witness.basis().to_vec()),
        norton: None,
        words_tried: words,
    }
}

/// Annihilator of a subspace of the dual: an invariant subspace of the module.
fn annihilator(f: &Field, dual: &Subspace, dim: usize) -> Subspace {
    let rows = Matrix::from_rows(dual.basis().to_vec());
    let mut s = Subspace::new(dim);
    for v in rows.nullspace(f) {
        s.insert(f, v);
    }
    s
}

/// Run Norton's test with `B = poly(A)`; `None` when the kernel is trivial.
fn norton(
    rep: &GradedRep,
    element: AlgebraWord,
    poly: Vec<Fe>,
    b: &Matrix,
    seed: u64,
    graded: bool,
    words: usize,
) -> Option<SimplicityCertificate> {
    let f = &*rep.field;
    let d = rep.dim();
    let null = b.nullspace(f);
    if null.is_empty() {
        return None;
    }
    let cyclic = null.len() == poly.len() - 1 && upoly::is_irreducible(f, &poly);
    let seeds = if cyclic {
        vec![null[0].clone()]
    } else {
        projective_points(f, &null)
    };
    let mut spin_dims = Vec::new();
    for v in seeds {
        let s = spin(rep, &[v]).expect("nonzero");
        spin_dims.push(s.dim());
        if !s.is_full() {
            return Some(reducible(rep, seed, graded, &s, words));
        }
    }
    let dual_null = b.transpose().nullspace(f);
    let w = dual_null[0].clone();
    let s = spin_dual(rep, &w);
    spin_dims.push(s.dim());
    if !s.is_full() {
        let witness = annihilator(f, &s, d);
        return Some(reducible(rep, seed, graded, &witness, words));
    }
    Some(SimplicityCertificate {
        verdict: Verdict::Irreducible,
        dimension: d,
        seed,
        graded,
        generators: rep.spin_gens.clone(),
        witness: None,
        norton: Some(NortonData {
            element,
            poly,
            nullspace: null,
            cyclic,
            dual_vector: w,
            spin_dims,
        }),
        words_tried: words,
    })
}

fn decide(rep: &GradedRep, seed: u64, graded: bool) -> SimplicityCertificate {
    let f = &*rep.field;
    let d = rep.dim();
    let trivial = |verdict, witness| SimplicityCertificate {
        verdict,
        dimension: d,
        seed,
        graded,
        generators: rep.spin_gens.clone(),
        witness,
        norton: None,
        words_tried: 0,
    };
    if d == 1 {
        return trivial(Verdict::Irreducible, None);
    }
    if rep.spin_gens.is_empty() {
        let mut e = vec![Fe::ZERO; d];
        e[0] = Fe::ONE;
        return trivial(Verdict::Reducible, Some(vec![e]));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // best candidate: (kernel dimension over the residue field, word, factor)
    let mut best: Option<(usize, AlgebraWord, Vec<Fe>)> = None;
    let mut first_kernel = None;
    let mut factor_candidate: Option<(AlgebraWord, Vec<Fe>)> = None;
    let mut tried = 0;
    for words in 1..=WORD_BUDGET {
        if first_kernel.is_some_and(|w| words > w + PATIENCE) {
            break;
        }
        tried = words;
        let word = random_word(f, rep.gens.len(), &mut rng);
        let a = word_matrix(rep, &word);
        let cp = a.charpoly(f);
        let Some((e, mut factors)) = upoly::smallest_factors(f, &cp, MAX_FACTOR_DEGREE, &mut rng)
        else {
            if factor_candidate.is_none() {
                factor_candidate = Some((word, cp));
            }
            continue;
        };
        factors.sort_by_key(|g| g.1);
        let (g, mult) = factors.swap_remove(0);
        let b = poly_eval_matrix(f, &g, &a);
        if mult == 1 {
            return norton(rep, word, g, &b, seed, graded, words)
                .expect("a simple factor has a kernel");
        }
        let nullity = (d - b.rank(f)) / e;
        if nullity == 1 {
            return norton(rep, word, g, &b, seed, graded, words).expect("factor has a kernel");
        }
        first_kernel.get_or_insert(words);
        if best.as_ref().map_or(true, |b| nullity * e < b.0) {
            best = Some((nullity * e, word, g));
        }
    }
    if let Some((_, word, g)) = best {
        let a = word_matrix(rep, &word);
        let b = poly_eval_matrix(f, &g, &a);
        return norton(rep, word, g, &b, seed, graded, tried).expect("factor has a kernel");
    }
    // no word had a small factor: use the distinct-degree factors of the first one
    let (word, cp) = factor_candidate.expect("at least one word was tried");
    let a = word_matrix(rep, &word);
    let x = vec![Fe::ZERO, f.one()];
    let mut xq = x.clone();
    for _e in 1..=d {
        xq = upoly::pow_mod(f, &xq, f.order() as u64, &cp);
        let g = upoly::gcd(f, &cp, &upoly::sub(f, &xq, &x));
        if g.len() > 1 {
            let b = poly_eval_matrix(f, &g, &a);
            if let Some(cert) = norton(rep, word.clone(), g, &b, seed, graded, WORD_BUDGET) {
                return cert;
            }
        }
    }
    unreachable!("the characteristic polynomial splits over some extension of degree <= D")
}

/// Ungraded irreducibility with a replayable certificate.
pub fn is_irreducible(rep: &GradedRep, seed: u64) -> SimplicityCertificate {
    decide(rep, seed, false)
}

/// Graded simplicity: irreducible (type M), simple only among homogeneous
/// subspaces (type Q), or reducible with a homogeneous witness.
pub fn is_graded_simple(rep: &GradedRep, seed: u64) -> SimplicityCertificate {
    let ungraded = decide(rep, seed, false);
    if ungraded.verdict == Verdict::Irreducible {
        return ungraded;
    }
    let mut cert = decide(&rep.with_parity_operator(), seed, true);
    if cert.verdict == Verdict::Irreducible {
        cert.verdict = Verdict::GradedSimpleTypeQ;
    }
    cert
}

/// Re-check a certificate from its stored data.
pub fn replay(rep: &GradedRep, cert: &SimplicityCertificate) -> Result<(), String> {
    let rep = if cert.graded {
        rep.with_parity_operator()
    } else {
        rep.clone()
    };
    let mut rep = rep;
    rep.spin_gens = cert.generators.clone();
    let rep = rep;
    let f = &*rep.field;
    let d = rep.dim();
    if d != cert.dimension {
        return Err("dimension mismatch".into());
    }
    match cert.verdict {
        Verdict::Reducible => {
            let basis = cert.witness.as_ref().ok_or("reducible without witness")?;
            let mut s = Subspace::new(d);
            for v in basis {
                s.insert(f, v.clone());
            }
            if s.dim() == 0 || s.is_full() {
                return Err("witness is not a proper nonzero subspace".into());
            }
            for g in &rep.gens {
                for v in basis {
                    if !s.contains(f, &g.apply(f, v)) {
                        return Err("witness is not invariant".into());
                    }
                }
            }
            Ok(())
        }
        Verdict::Irreducible | Verdict::GradedSimpleTypeQ => {
            if d == 1 {
                return Ok(());
            }
            let nd = cert
                .norton
                .as_ref()
                .ok_or("irreducible without Norton data")?;
            let a = word_matrix(&rep, &nd.element);
            let b = poly_eval_matrix(f, &nd.poly, &a);
            let null = b.nullspace(f);
            if null.len() != nd.nullspace.len() {
                return Err("kernel dimension differs".into());
            }
            for v in &nd.nullspace {
                if b.mul_vec(f, v).iter().any(|c| !c.is_zero()) {
                    return Err("stored kernel vector is not in the kernel".into());
                }
            }
            if Matrix::from_rows(nd.nullspace.clone()).rank(f) != null.len() {
                return Err("stored kernel vectors are dependent".into());
            }
            let seeds = if nd.cyclic {
                if nd.nullspace.len() != nd.poly.len() - 1 || !upoly::is_irreducible(f, &nd.poly) {
                    return Err("cyclic kernel claim does not hold".into());
                }
                vec![nd.nullspace[0].clone()]
            } else {
                projective_points(f, &nd.nullspace)
            };
            for v in seeds {
                if !spin(&rep, &[v]).map_err(|e| e.to_string())?.is_full() {
                    return Err("a kernel vector spins to a proper subspace".into());
                }
            }
            if b.transpose()
                .mul_vec(f, &nd.dual_vector)
                .iter()
                .any(|c| !c.is_zero())
                || nd.dual_vector.iter().all(|c| c.is_zero())
            {
                return Err("dual vector is not a nonzero kernel vector of B^T".into());
            }
            if !spin_dual(&rep, &nd.dual_vector).is_full() {
                return Err("dual spin is proper".into());
            }
            Ok(())
        }
    }
}
