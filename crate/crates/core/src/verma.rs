//! Baby Verma modules, Kac modules and Cartan modules for the four families,
//! and the closed-form quantities `Omega(lambda)` and `Phi(lambda)`.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::envmod::{induce, InduceError, InducedModule, InducingModule};
use crate::field::{Field, FieldDescriptor, FieldElement as Fe};
use crate::linalg::{Matrix, SparseMatrix, SparseVec, Subspace};
use crate::meataxe::{is_graded_simple, is_irreducible, GradedRep, Verdict};
use crate::pchar::{check_weight, lambda_set, vanishes_on_pos, PChar, WeightVector};
use crate::superalg::{build_algebra, Family, LieSuperalgebra, Parity, Slot, StructureTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VermaError {
    #[error("operation needs family {expected}, got {got}")]
    WrongFamily { expected: String, got: Family },
    #[error("lambda is not in Lambda(chi): coordinate {0} fails the Artin-Schreier identity")]
    NotInLambda(usize),
    #[error("chi does not vanish on the positive even nilpotent part")]
    NotStandard,
    #[error("chi(E) must vanish")]
    ChiOnE,
    #[error("Lambda(chi) is empty over this field; raise the extension degree")]
    EmptyLambda,
    #[error("the form f_lambda has no isotropic subspace of the expected size over this field")]
    FieldTooSmall,
    #[error("x y v is not a scalar multiple of v")]
    NotScalar,
    #[error(transparent)]
    Induce(#[from] InduceError),
}

fn one_dim_on(subalg: &[usize], cartan: &[usize], lambda: &[Fe]) -> InducingModule {
    let scalars: Vec<Fe> = subalg
        .iter()
        .map(|i| {
            cartan
                .iter()
                .position(|h| h == i)
                .map(|k| lambda[k])
                .unwrap_or(Fe::ZERO)
        })
        .collect();
    InducingModule::one_dimensional(&scalars)
}

fn require_standard(g: &LieSuperalgebra, chi: &PChar, lambda: &[Fe]) -> Result<(), VermaError> {
    if !vanishes_on_pos(g, chi) {
        return Err(VermaError::NotStandard);
    }
    check_weight(g, chi, lambda).map_err(VermaError::NotInLambda)
}

/// Baby Verma module of the even part of `g` (a copy of `gl(n)` or `sl(n)`).
pub fn even_baby_verma(
    g: &LieSuperalgebra,
    chi: &PChar,
    lambda: &[Fe],
) -> Result<InducedModule, VermaError> {
    require_standard(g, chi, lambda)?;
    let d0 = g.dim_even();
    let even: Vec<usize> = (0..d0).collect();
    let table = g
        .table()
        .restrict(&even)
        .expect("even part is a subalgebra");
    let cartan = g.cartan_even();
    let mut sub = cartan.clone();
    sub.extend(g.slot_indices(Slot::PosEven));
    let v = one_dim_on(&sub, &cartan, lambda);
    Ok(induce(Arc::new(table), &sub, &v, chi)?)
}

/// `Z^0_chi(lambda)` for `gl(n)`, realized as the even part of `p~(n)`.
pub fn gl_baby_verma(
    n: usize,
    field: Arc<FieldDescriptor>,
    chi: &PChar,
    lambda: &[Fe],
) -> Result<InducedModule, VermaError> {
    let g = build_algebra(Family::Ptilde, n, field).map_err(|_| VermaError::WrongFamily {
        expected: "rank >= 2".into(),
        got: Family::Ptilde,
    })?;
    even_baby_verma(&g, chi, lambda)
}

/// `Z_chi(lambda)` induced from `b_0 + g_1` for the periplectic families.
pub fn ptilde_baby_verma(
    g: &LieSuperalgebra,
    chi: &PChar,
    lambda: &[Fe],
) -> Result<InducedModule, VermaError> {
    if !g.family().is_periplectic() {
        return Err(VermaError::WrongFamily {
            expected: "ptilde or pder".into(),
            got: g.family(),
        });
    }
    require_standard(g, chi, lambda)?;
    let cartan = g.cartan_even();
    let mut sub = cartan.clone();
    sub.extend(g.slot_indices(Slot::PosEven));
    sub.extend(g.slot_indices(Slot::PosOdd));
    let v = one_dim_on(&sub, &cartan, lambda);
    Ok(induce(Arc::new(g.table().clone()), &sub, &v, chi)?)
}

/// `chi(p_0) = 0` for `p~(2)`: `chi` vanishes on `E`, `F` and `H = H_1 - H_2`.
pub fn chi_vanishes_on_p0(g: &LieSuperalgebra, chi: &PChar) -> bool {
    let f = g.field();
    let (h1, h2) = (0, 1);
    g.slot_indices(Slot::PosEven)
        .iter()
        .chain(&g.slot_indices(Slot::NegEven))
        .all(|&i| chi.values[i].is_zero())
        && f.sub(chi.values[h1], chi.values[h2]).is_zero()
}

/// Kac module `K_chi(lambda)` of `p~(2)` together with its case data.
#[derive(Clone, Debug)]
pub struct KacModule {
    pub module: InducedModule,
    /// `chi(p_0) = 0` and `lambda(H) = 0`: induced from a one-dimensional module.
    pub one_dimensional_case: bool,
}

impl KacModule {
    /// Basis index of `Y (x) v` in the one-dimensional case.
    pub fn y_vector(&self) -> usize {
        self.module.index_of(&[1], 0).expect("Y has exponent 1")
    }
}

pub fn kac_module_p2(
    g: &LieSuperalgebra,
    chi: &PChar,
    lambda: &[Fe],
) -> Result<KacModule, VermaError> {
    if g.family() != Family::Ptilde || g.rank() != 2 {
        return Err(VermaError::WrongFamily {
            expected: "ptilde(2)".into(),
            got: g.family(),
        });
    }
    let e = g.slot_indices(Slot::PosEven)[0];
    if !chi.values[e].is_zero() {
        return Err(VermaError::ChiOnE);
    }
    check_weight(g, chi, lambda).map_err(VermaError::NotInLambda)?;
    let f = g.field();
    let d0 = g.dim_even();
    let lambda_h = f.sub(lambda[0], lambda[1]);
    let one_dimensional_case = chi_vanishes_on_p0(g, chi) && lambda_h.is_zero();
    let cartan = g.cartan_even();
    let inner = if one_dimensional_case {
        let sub: Vec<usize> = (0..d0).collect();
        one_dim_on(&sub, &cartan, lambda)
    } else {
        even_baby_verma(g, chi, lambda)?.as_inducing()
    };
    let mut sub: Vec<usize> = (0..d0).collect();
    let pos_odd = g.slot_indices(Slot::PosOdd);
    sub.extend(&pos_odd);
    let mut actions = inner.actions;
    actions.extend(
        pos_odd
            .iter()
            .map(|_| SparseMatrix::zeros(inner.parity.len())),
    );
    let v = InducingModule {
        parity: inner.parity,
        actions,
    };
    let module = induce(Arc::new(g.table().clone()), &sub, &v, chi)?;
    Ok(KacModule {
        module,
        one_dimensional_case,
    })
}

/// `prod_{i<j} (lambda_i - lambda_j + j - i - 1)`.
pub fn omega(lambda: &[Fe], field: &Field) -> Fe {
    let n = lambda.len();
    let mut acc = field.one();
    for i in 0..n {
        for j in i + 1..n {
            let shift = field.from_int((j - i - 1) as i64);
            acc = field.mul(acc, field.add(field.sub(lambda[i], lambda[j]), shift));
        }
    }
    acc
}

/// `prod_{i<j} phi(lambda_i, lambda_j)` with
/// `phi(x, y) = (x + y)(x - y - 1)...(x - y - (p - 1))`.
pub fn phi(lambda: &[Fe], field: &Field) -> Fe {
    let n = lambda.len();
    let p = field.characteristic() as i64;
    let mut acc = field.one();
    for i in 0..n {
        for j in i + 1..n {
            acc = field.mul(acc, field.add(lambda[i], lambda[j]));
            let d = field.sub(lambda[i], lambda[j]);
            for k in 1..p {
                acc = field.mul(acc, field.sub(d, field.from_int(k)));
            }
        }
    }
    acc
}

/// Indices of `X_{eps_i + eps_j}` and `X_{-(eps_i + eps_j)}` for `i < j`, lex order.
pub fn xy_factors(g: &LieSuperalgebra) -> (Vec<usize>, Vec<usize>) {
    let n = g.rank();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            let mut r = vec![0; n];
            r[i] = 1;
            r[j] = 1;
            xs.push(g.root_vector(&r, Parity::Odd).expect("odd positive root"));
            r[i] = -1;
            r[j] = -1;
            ys.push(g.root_vector(&r, Parity::Odd).expect("odd negative root"));
        }
    }
    (xs, ys)
}

/// The scalar `c` with `x y v = c v` on the generator of a periplectic baby Verma.
pub fn xy_scalar(g: &LieSuperalgebra, z: &InducedModule) -> Result<Fe, VermaError> {
    let (xs, ys) = xy_factors(g);
    let mut word = xs;
    word.extend(ys);
    let out = z.apply_word(&word, &vec![(0, Fe::ONE)]);
    match out.as_slice() {
        [] => Ok(Fe::ZERO),
        [(0, c)] => Ok(*c),
        _ => Err(VermaError::NotScalar),
    }
}

/// The vector `y (x) v` of the top graded piece (order of `xy_factors`).
pub fn top_vector(g: &LieSuperalgebra, z: &InducedModule) -> SparseVec {
    let (_, ys) = xy_factors(g);
    z.apply_word(&ys, &vec![(0, Fe::ONE)])
}

/// Cartan module `V_chi(lambda)` of a queer algebra.
#[derive(Clone, Debug)]
pub struct CartanModule {
    /// `f_lambda(J'_a, J'_b) = lambda([J'_a, J'_b])` on the odd Cartan basis.
    pub gram: Matrix,
    /// Basis of the maximal isotropic subspace `h_1^lambda` (odd Cartan coordinates).
    pub isotropic: Vec<Vec<Fe>>,
    /// Complement `h^_1^lambda`.
    pub complement: Vec<Vec<Fe>>,
    /// The module over `U_chi(h)` in the adapted basis of `h`.
    pub module: InducedModule,
    /// Action of `h_0` then `h_1` in the algebra's own basis.
    pub actions: Vec<SparseMatrix>,
}

impl CartanModule {
    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    pub fn graded_rep(&self) -> GradedRep {
        let t = self.module.table();
        GradedRep::new(
            self.module.field().clone(),
            self.module.parity().to_vec(),
            self.actions.clone(),
            (0..t.dim()).map(|i| t.parity(i)).collect(),
            "cartan module".into(),
        )
    }
}

fn bilinear(f: &Field, gram: &Matrix, u: &[Fe], v: &[Fe]) -> Fe {
    crate::linalg::dot(f, u, &gram.mul_vec(f, v))
}

/// Maximal totally isotropic subspace of a symmetric form: the radical,
/// then greedy extension by vectors orthogonal to everything chosen so far.
/// Candidates are enumerated exhaustively when the search space is small and
/// probed with a seeded generator otherwise.
pub fn maximal_isotropic(f: &Field, gram: &Matrix, seed: u64) -> Vec<Vec<Fe>> {
    let m = gram.rows();
    let mut chosen = Subspace::new(m);
    let mut basis: Vec<Vec<Fe>> = Vec::new();
    for v in gram.nullspace(f) {
        if chosen.insert(f, v.clone()) {
            basis.push(v);
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        // orthogonal complement of the chosen vectors
        let constraints: Vec<Vec<Fe>> = basis.iter().map(|b| gram.mul_vec(f, b)).collect();
        let perp = if constraints.is_empty() {
            Matrix::identity(m).to_rows()
        } else {
            Matrix::from_rows(constraints).nullspace(f)
        };
        let k = perp.len();
        let ok = |c: &[Fe], chosen: &Subspace| -> Option<Vec<Fe>> {
            let mut v = vec![Fe::ZERO; m];
            for (coef, b) in c.iter().zip(&perp) {
                crate::linalg::axpy(f, *coef, b, &mut v);
            }
            (!chosen.contains(f, &v) && bilinear(f, gram, &v, &v).is_zero()).then_some(v)
        };
        let q = f.order() as u64;
        let mut found = None;
        if (q as f64).powi(k as i32) <= 1e6 {
            let total = q.pow(k as u32);
            for idx in 1..total {
                let mut t = idx;
                let c: Vec<Fe> = (0..k)
                    .map(|_| {
                        let e = f.element((t % q) as usize);
                        t /= q;
                        e
                    })
                    .collect();
                if let Some(v) = ok(&c, &chosen) {
                    found = Some(v);
                    break;
                }
            }
        } else {
            for _ in 0..100_000 {
                let c: Vec<Fe> = (0..k).map(|_| f.random(&mut rng)).collect();
                if let Some(v) = ok(&c, &chosen) {
                    found = Some(v);
                    break;
                }
            }
        }
        match found {
            Some(v) => {
                chosen.insert(f, v.clone());
                basis.push(v);
            }
            None => return basis,
        }
    }
}

/// `V_chi(lambda) = U_chi(h) (x)_{U_chi(h_0 + h_1^lambda)} k_lambda`.
pub fn queer_cartan_module(
    g: &LieSuperalgebra,
    chi: &PChar,
    lambda: &[Fe],
    seed: u64,
) -> Result<CartanModule, VermaError> {
    if !g.family().is_queer() {
        return Err(VermaError::WrongFamily {
            expected: "q or sq".into(),
            got: g.family(),
        });
    }
    check_weight(g, chi, lambda).map_err(VermaError::NotInLambda)?;
    let f = &**g.field();
    let t = g.table();
    let h0 = g.cartan_even();
    let h1 = g.cartan_odd();
    let m = h1.len();
    let lam = |v: &SparseVec| {
        v.iter().fold(f.zero(), |acc, &(i, c)| {
            let k = h0
                .iter()
                .position(|&h| h == i as usize)
                .expect("lands in h_0");
            f.mul_add(c, lambda[k], acc)
        })
    };
    let mut gram = Matrix::zeros(m, m);
    for (a, &x) in h1.iter().enumerate() {
        for (b, &y) in h1.iter().enumerate() {
            gram[(a, b)] = lam(t.bracket_basis(x, y));
        }
    }
    let isotropic = maximal_isotropic(f, &gram, seed);
    let rank = gram.rank(f);
    let radical = m - rank;
    if isotropic.len() < radical + rank / 2 {
        return Err(VermaError::FieldTooSmall);
    }
    let mut span = Subspace::new(m);
    for v in &isotropic {
        span.insert(f, v.clone());
    }
    let mut complement = Vec::new();
    for i in 0..m {
        let mut e = vec![Fe::ZERO; m];
        e[i] = Fe::ONE;
        if span.insert(f, e.clone()) {
            complement.push(e);
        }
    }
    let new_odd: Vec<Vec<Fe>> = isotropic.iter().chain(&complement).cloned().collect();

    // structure table of h in the basis h_0, then the adapted odd basis
    let n0 = h0.len();
    let dim = n0 + m;
    let mut brackets = vec![Vec::new(); dim * dim];
    for a in 0..m {
        for b in 0..m {
            let mut terms = Vec::new();
            for (k, &x) in h1.iter().enumerate() {
                for (l, &y) in h1.iter().enumerate() {
                    let c = f.mul(new_odd[a][k], new_odd[b][l]);
                    if c.is_zero() {
                        continue;
                    }
                    for &(i, e) in t.bracket_basis(x, y) {
                        let pos = h0.iter().position(|&h| h == i as usize).unwrap();
                        terms.push((pos as u32, f.mul(c, e)));
                    }
                }
            }
            brackets[(n0 + a) * dim + n0 + b] = crate::linalg::sparse_combine(f, &mut terms);
        }
    }
    let pmap = (0..n0).map(|i| vec![(i as u32, Fe::ONE)]).collect();
    let mut parity = vec![Parity::Even; n0];
    parity.extend(vec![Parity::Odd; m]);
    let htable = StructureTable::new(g.field().clone(), parity, brackets, pmap);
    let hchi = PChar {
        values: h0.iter().map(|&h| chi.values[h]).collect(),
    };
    let sub: Vec<usize> = (0..n0 + isotropic.len()).collect();
    let mut scalars = lambda.to_vec();
    scalars.extend(vec![Fe::ZERO; isotropic.len()]);
    let v = InducingModule::one_dimensional(&scalars);
    let module = induce(Arc::new(htable), &sub, &v, &hchi)?;

    // J'_l = sum_k (M^{-1})_{lk} u_k where u_k = sum_l M_{kl} J'_l
    let mmat = Matrix::from_rows(new_odd);
    let minv = mmat.inverse(f).expect("adapted basis is a basis");
    let mut actions: Vec<SparseMatrix> = (0..n0).map(|i| module.action(i).clone()).collect();
    for l in 0..m {
        let acc = (0..m).fold(SparseMatrix::zeros(module.dim()), |acc, k| {
            acc.lin_comb(f, Fe::ONE, module.action(n0 + k), minv[(l, k)])
        });
        actions.push(acc);
    }
    Ok(CartanModule {
        gram,
        isotropic,
        complement,
        module,
        actions,
    })
}

/// `Z^q_chi(lambda) = U_chi(g) (x)_{U_chi(b)} V_chi(lambda)` with `b = h + n^+`.
pub fn queer_baby_verma(
    g: &LieSuperalgebra,
    chi: &PChar,
    lambda: &[Fe],
    seed: u64,
) -> Result<(InducedModule, CartanModule), VermaError> {
    require_standard(g, chi, lambda)?;
    let cm = queer_cartan_module(g, chi, lambda, seed)?;
    let mut sub = g.cartan_even();
    sub.extend(g.slot_indices(Slot::PosEven));
    let mut actions: Vec<SparseMatrix> = cm.actions[..g.cartan_even().len()].to_vec();
    actions.extend(
        g.slot_indices(Slot::PosEven)
            .iter()
            .map(|_| SparseMatrix::zeros(cm.dim())),
    );
    sub.extend(g.cartan_odd());
    actions.extend(cm.actions[g.cartan_even().len()..].iter().cloned());
    let pos_odd = g.slot_indices(Slot::PosOdd);
    sub.extend(&pos_odd);
    actions.extend(pos_odd.iter().map(|_| SparseMatrix::zeros(cm.dim())));
    let v = InducingModule {
        parity: cm.module.parity().to_vec(),
        actions,
    };
    let z = induce(Arc::new(g.table().clone()), &sub, &v, chi)?;
    Ok((z, cm))
}

/// One `(chi, lambda)` case of the `p~(2)` classification.
#[derive(Clone, Debug, Serialize)]
pub struct P2Case {
    pub lambda: Vec<String>,
    pub lambda_h: String,
    pub dim: usize,
    pub one_dimensional_case: bool,
    pub irreducible: bool,
    pub graded_simple: bool,
    /// `Y (x) v` spans a one-dimensional submodule.
    pub y_submodule: bool,
    /// Outcome predicted by the simplicity case split.
    pub expected_irreducible: bool,
    pub matches: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct P2Classification {
    pub cases: Vec<P2Case>,
    /// Dimensions of the irreducible modules found.
    pub irreducible_dims: Vec<usize>,
}

/// Build `K_chi(lambda)` for every `lambda in Lambda(chi)` and test simplicity.
pub fn classify_p2(
    g: &LieSuperalgebra,
    chi: &PChar,
    seed: u64,
) -> Result<P2Classification, VermaError> {
    let f = g.field();
    let lambdas = lambda_set(g, chi);
    if lambdas.is_empty() {
        return Err(VermaError::EmptyLambda);
    }
    let p0_zero = chi_vanishes_on_p0(g, chi);
    let mut cases = Vec::new();
    let mut dims = Vec::new();
    for lambda in lambdas {
        let k = kac_module_p2(g, chi, &lambda)?;
        let rep = GradedRep::from_module(&k.module, "kac module");
        let cert = is_irreducible(&rep, seed);
        let irreducible = cert.verdict == Verdict::Irreducible;
        let graded_simple =
            irreducible || is_graded_simple(&rep, seed).verdict != Verdict::Reducible;
        let y_submodule = k.one_dimensional_case && {
            let y = k.y_vector();
            k.module
                .actions()
                .iter()
                .all(|a| a.column(y).iter().all(|&(i, _)| i as usize == y))
        };
        let lambda_h = f.sub(lambda[0], lambda[1]);
        let expected_irreducible = !p0_zero || !lambda_h.is_zero();
        let matches = if expected_irreducible {
            irreducible && k.module.dim() == 2 * f.characteristic() as usize
        } else {
            !irreducible && k.module.dim() == 2 && y_submodule
        };
        if irreducible {
            dims.push(k.module.dim());
        }
        if y_submodule {
            dims.push(1);
        }
        cases.push(P2Case {
            lambda: lambda.iter().map(|&x| f.format(x)).collect(),
            lambda_h: f.format(lambda_h),
            dim: k.module.dim(),
            one_dimensional_case: k.one_dimensional_case,
            irreducible,
            graded_simple,
            y_submodule,
            expected_irreducible,
            matches,
        });
    }
    dims.sort_unstable();
    dims.dedup();
    Ok(P2Classification {
        cases,
        irreducible_dims: dims,
    })
}

/// Graded-simplicity verdict of a queer baby Verma, used by the criterion sweeps.
pub fn queer_verdict(z: &InducedModule, seed: u64) -> Verdict {
    let rep = GradedRep::from_module(z, "queer baby verma");
    is_graded_simple(&rep, seed).verdict
}

/// Random weights with a given separation predicate, for sampling sweeps.
pub fn sample_weights<R: Rng>(
    f: &Field,
    n: usize,
    rng: &mut R,
    accept: impl Fn(&[Fe]) -> bool,
    tries: usize,
) -> Option<WeightVector> {
    (0..tries)
        .map(|_| (0..n).map(|_| f.random(rng)).collect::<Vec<_>>())
        .find(|w| accept(w))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    #[test]
    fn omega_small_cases() {
        let f = make_field(3, 1).unwrap();
        let l = [f.from_int(2), f.from_int(1)];
        assert_eq!(omega(&l, &f), f.one());
        assert!(omega(&[f.zero(); 3], &f).is_zero());
    }

    #[test]
    fn phi_vanishing() {
        let f = make_field(3, 1).unwrap();
        assert!(phi(&[f.one(), f.zero()], &f).is_zero());
        let f9 = make_field(3, 2).unwrap();
        let t = f9.gen();
        assert!(phi(&[t, f9.neg(t)], &f9).is_zero());
    }

    #[test]
    fn isotropic_of_zero_form_is_everything() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(maximal_isotropic(&f, &Matrix::zeros(3, 3), 0).len(), 3);
    }

    #[test]
    fn hyperbolic_plane_has_isotropic_line() {
        let f = make_field(5, 1).unwrap();
        let g = Matrix::from_rows(vec![vec![f.zero(), f.one()], vec![f.one(), f.zero()]]);
        assert_eq!(maximal_isotropic(&f, &g, 0).len(), 1);
    }
}
