//! Induced modules `U_chi(g) (x)_{U_chi(s)} V` built by straightening.
//!
//! The module basis is `x^a (x) v_j` where `x^a` runs over PBW monomials in
//! the complement of the subalgebra `s`, taken in the algebra's basis order.
//! An element `x` acts on a basis vector by the rewriting rules
//!
//! * prepend `x` when it precedes the first factor of the monomial,
//! * raise the exponent when it equals the first factor, replacing `x^p` by
//!   `x^[p] + chi(x)^p` and an odd square `y^2` by `[y, y] / 2`,
//! * otherwise `x y m = (-1)^{|x||y|} y (x m) + [x, y] m`,
//! * and elements of `s` reaching `1 (x) v` act through `V`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;
use thiserror::Error;

use crate::field::{Field, FieldElement as Fe};
use crate::linalg::{sparse_combine, SparseMatrix, SparseVec};
use crate::pchar::PChar;
use crate::superalg::{koszul_sign, Parity, StructureTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InduceError {
    #[error("subalgebra is not closed: [x_{0}, x_{1}] leaves it")]
    NotSubalgebra(usize, usize),
    #[error("inducing module data has the wrong shape: {0}")]
    Shape(String),
    #[error("inducing module is not compatible with chi at x_{x}: {reason}")]
    Incompatible { x: usize, reason: String },
}

/// A module over a subalgebra: one action matrix per subalgebra basis vector,
/// listed in the order of the subalgebra index set.
#[derive(Clone, Debug)]
pub struct InducingModule {
    pub parity: Vec<Parity>,
    pub actions: Vec<SparseMatrix>,
}

impl InducingModule {
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    /// One-dimensional even module on which `subalg[i]` acts by `scalars[i]`.
    pub fn one_dimensional(scalars: &[Fe]) -> Self {
        InducingModule {
            parity: vec![Parity::Even],
            actions: scalars
                .iter()
                .map(|&c| SparseMatrix::diagonal(&[c]))
                .collect(),
        }
    }
}

/// `p^{#even}` times `2^{#odd}` PBW monomials over the complement, tensored
/// with the inducing module, together with the action of every basis vector.
#[derive(Clone, Debug)]
pub struct InducedModule {
    table: Arc<StructureTable>,
    chi: PChar,
    subalg: Vec<usize>,
    complement: Vec<usize>,
    v_dim: usize,
    monomials: Vec<Vec<u8>>,
    parity: Vec<Parity>,
    actions: Vec<SparseMatrix>,
}

impl InducedModule {
    pub fn table(&self) -> &Arc<StructureTable> {
        &self.table
    }

    pub fn field(&self) -> &Arc<Field> {
        self.table.field()
    }

    pub fn chi(&self) -> &PChar {
        &self.chi
    }

    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    pub fn subalgebra(&self) -> &[usize] {
        &self.subalg
    }

    /// Ordered complement ("negative part") used for the PBW monomials.
    pub fn complement(&self) -> &[usize] {
        &self.complement
    }

    pub fn inducing_dim(&self) -> usize {
        self.v_dim
    }

    pub fn parity(&self) -> &[Parity] {
        &self.parity
    }

    /// Action matrix of algebra basis vector `x`.
    pub fn action(&self, x: usize) -> &SparseMatrix {
        &self.actions[x]
    }

    pub fn actions(&self) -> &[SparseMatrix] {
        &self.actions
    }

    /// Replace an action matrix; used to build negative controls.
    pub fn set_action(&mut self, x: usize, m: SparseMatrix) {
        self.actions[x] = m;
    }

    /// Exponent vector and inducing-module index of basis vector `b`.
    pub fn decompose(&self, b: usize) -> (&[u8], usize) {
        (&self.monomials[b / self.v_dim], b % self.v_dim)
    }

    pub fn index_of(&self, exponents: &[u8], j: usize) -> Option<usize> {
        self.monomials
            .iter()
            .position(|m| m == exponents)
            .map(|m| m * self.v_dim + j)
    }

    /// Number of odd PBW factors in basis vector `b`.
    pub fn odd_degree(&self, b: usize) -> usize {
        let (mono, _) = self.decompose(b);
        self.complement
            .iter()
            .zip(mono)
            .filter(|(&x, &a)| a > 0 && self.table.parity(x).is_odd())
            .count()
    }

    /// Basis indices of the piece spanned by monomials with `k` odd factors.
    pub fn graded_piece(&self, k: usize) -> Vec<usize> {
        (0..self.dim())
            .filter(|&b| self.odd_degree(b) == k)
            .collect()
    }

    /// Apply `x_{w_0} x_{w_1} ... x_{w_r}` to a vector (rightmost first).
    pub fn apply_word(&self, word: &[usize], v: &SparseVec) -> SparseVec {
        let f = self.field();
        word.iter()
            .rev()
            .fold(v.clone(), |acc, &x| self.actions[x].apply_sparse(f, &acc))
    }
}

/// The rewriting engine. Results of `act` are memoized per `(x, b)` unless
/// memoization is switched off.
pub struct Straightener<'a> {
    table: &'a StructureTable,
    f: &'a Field,
    chi: &'a PChar,
    v: &'a InducingModule,
    comp: Vec<usize>,
    comp_pos: Vec<Option<usize>>,
    sub_pos: Vec<Option<usize>>,
    monomials: Vec<Vec<u8>>,
    mono_index: HashMap<Vec<u8>, u32>,
    memo: Option<HashMap<(u32, u32), SparseVec>>,
    half: Fe,
}

impl<'a> Straightener<'a> {
    pub fn new(
        table: &'a StructureTable,
        subalg: &[usize],
        v: &'a InducingModule,
        chi: &'a PChar,
        memoize: bool,
    ) -> Self {
        let f = &**table.field();
        let d = table.dim();
        let mut sub_pos = vec![None; d];
        for (k, &i) in subalg.iter().enumerate() {
            sub_pos[i] = Some(k);
        }
        let comp: Vec<usize> = (0..d).filter(|&i| sub_pos[i].is_none()).collect();
        let mut comp_pos = vec![None; d];
        for (k, &i) in comp.iter().enumerate() {
            comp_pos[i] = Some(k);
        }
        let p = f.characteristic() as u8;
        let bounds: Vec<u8> = comp
            .iter()
            .map(|&x| if table.parity(x).is_odd() { 1 } else { p - 1 })
            .collect();
        let monomials = enumerate_monomials(&bounds);
        let mono_index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i as u32))
            .collect();
        Straightener {
            table,
            f,
            chi,
            v,
            comp,
            comp_pos,
            sub_pos,
            monomials,
            mono_index,
            memo: memoize.then(HashMap::new),
            half: f.inv(f.from_int(2)).expect("odd characteristic"),
        }
    }

    pub fn dim(&self) -> usize {
        self.monomials.len() * self.v.dim()
    }

    fn basis_index(&self, mono: &[u8], j: usize) -> u32 {
        self.mono_index[mono] * self.v.dim() as u32 + j as u32
    }

    fn scaled_into(&self, out: &mut Vec<(u32, Fe)>, v: &[(u32, Fe)], c: Fe) {
        if c.is_zero() {
            return;
        }
        out.extend(v.iter().map(|&(i, a)| (i, self.f.mul(a, c))));
    }

    /// `z . b` for an algebra element `z` given sparsely.
    pub fn act_element(&mut self, z: &[(u32, Fe)], b: u32) -> SparseVec {
        let mut terms = Vec::new();
        for &(x, c) in z {
            let r = self.act(x as usize, b);
            self.scaled_into(&mut terms, &r, c);
        }
        sparse_combine(self.f, &mut terms)
    }

    /// `x . w` for a module vector `w` given sparsely.
    pub fn act_vector(&mut self, x: usize, w: &[(u32, Fe)]) -> SparseVec {
        let mut terms = Vec::new();
        for &(b, c) in w {
            let r = self.act(x, b);
            self.scaled_into(&mut terms, &r, c);
        }
        sparse_combine(self.f, &mut terms)
    }

    /// Normal form of `x_{w_0} ... x_{w_r} . b`.
    pub fn straighten(&mut self, word: &[usize], b: u32) -> SparseVec {
        let mut v: SparseVec = vec![(b, Fe::ONE)];
        for &x in word.iter().rev() {
            v = self.act_vector(x, &v);
        }
        v
    }

    /// `x . b` for basis vectors.
    pub fn act(&mut self, x: usize, b: u32) -> SparseVec {
        if let Some(memo) = &self.memo {
            if let Some(r) = memo.get(&(x as u32, b)) {
                return r.clone();
            }
        }
        let r = self.act_uncached(x, b);
        if let Some(memo) = &mut self.memo {
            memo.insert((x as u32, b), r.clone());
        }
        r
    }

    fn act_uncached(&mut self, x: usize, b: u32) -> SparseVec {
        let f = self.f;
        let vd = self.v.dim();
        let mono = self.monomials[b as usize / vd].clone();
        let j = b as usize % vd;
        let first = mono.iter().position(|&a| a > 0);

        if let Some(t) = self.comp_pos[x] {
            match first {
                Some(t0) if t0 == t => {
                    let mut rest = mono.clone();
                    let a = mono[t];
                    if self.table.parity(x).is_odd() {
                        rest[t] = 0;
                        let rb = self.basis_index(&rest, j);
                        let sq = self.table.bracket_basis(x, x).clone();
                        let r = self.act_element(&sq, rb);
                        return r
                            .into_iter()
                            .map(|(i, c)| (i, f.mul(c, self.half)))
                            .collect();
                    }
                    if (a as u32) + 1 < f.characteristic() {
                        rest[t] = a + 1;
                        return vec![(self.basis_index(&rest, j), Fe::ONE)];
                    }
                    rest[t] = 0;
                    let rb = self.basis_index(&rest, j);
                    let pm = self.table.pmap_basis(x).clone();
                    let mut r = self.act_element(&pm, rb);
                    let c = f.frobenius(self.chi.values[x]);
                    if !c.is_zero() {
                        r.push((rb, c));
                        r = sparse_combine(f, &mut r);
                    }
                    return r;
                }
                Some(t0) if t0 < t => {}
                _ => {
                    let mut m = mono;
                    m[t] = 1;
                    return vec![(self.basis_index(&m, j), Fe::ONE)];
                }
            }
        } else if first.is_none() {
            let k = self.sub_pos[x].expect("x is in the subalgebra");
            let col = self.v.actions[k].column(j);
            let base = self.basis_index(&mono, 0);
            return col.iter().map(|&(i, c)| (base + i, c)).collect();
        }

        // x y m' = (-1)^{|x||y|} y (x m') + [x, y] m'
        let t0 = first.unwrap();
        let y = self.comp[t0];
        let mut rest = mono;
        rest[t0] -= 1;
        let rb = self.basis_index(&rest, j);
        let xm = self.act(x, rb);
        let s = koszul_sign(f, self.table.parity(x), self.table.parity(y));
        let mut terms = Vec::new();
        for &(bb, c) in &xm {
            let r = self.act(y, bb);
            self.scaled_into(&mut terms, &r, f.mul(s, c));
        }
        let br = self.table.bracket_basis(x, y).clone();
        let r = self.act_element(&br, rb);
        terms.extend(r);
        sparse_combine(f, &mut terms)
    }
}

/// All exponent vectors below the bounds, in graded-lexicographic order.
fn enumerate_monomials(bounds: &[u8]) -> Vec<Vec<u8>> {
    let mut out: Vec<Vec<u8>> = vec![Vec::new()];
    for &b in bounds {
        out = out
            .into_iter()
            .flat_map(|m| {
                (0..=b).map(move |a| {
                    let mut m = m.clone();
                    m.push(a);
                    m
                })
            })
            .collect();
    }
    out.sort_by(|a, b| {
        let da: u32 = a.iter().map(|&x| x as u32).sum();
        let db: u32 = b.iter().map(|&x| x as u32).sum();
        da.cmp(&db).then_with(|| b.cmp(a))
    });
    out
}

fn check_inducing(
    table: &StructureTable,
    subalg: &[usize],
    v: &InducingModule,
    chi: &PChar,
) -> Result<(), InduceError> {
    let f = &**table.field();
    if v.actions.len() != subalg.len() {
        return Err(InduceError::Shape(format!(
            "{} action matrices for a {}-dimensional subalgebra",
            v.actions.len(),
            subalg.len()
        )));
    }
    if v.actions.iter().any(|m| m.dim() != v.dim()) {
        return Err(InduceError::Shape("action matrix of the wrong size".into()));
    }
    if chi.values.len() != table.dim_even() {
        return Err(InduceError::Shape(
            "p-character has the wrong length".into(),
        ));
    }
    table
        .is_subalgebra(subalg)
        .map_err(|(i, j)| InduceError::NotSubalgebra(i, j))?;
    let mut pos = vec![usize::MAX; table.dim()];
    for (k, &i) in subalg.iter().enumerate() {
        pos[i] = k;
    }
    let rho = |z: &SparseVec| -> SparseMatrix {
        z.iter().fold(SparseMatrix::zeros(v.dim()), |acc, &(m, c)| {
            acc.lin_comb(f, Fe::ONE, &v.actions[pos[m as usize]], c)
        })
    };
    let parity_ok = |m: &SparseMatrix, px: Parity| {
        (0..v.dim()).all(|j| {
            m.column(j)
                .iter()
                .all(|&(i, _)| v.parity[i as usize] == v.parity[j].add(px))
        })
    };
    for (a, &x) in subalg.iter().enumerate() {
        if !parity_ok(&v.actions[a], table.parity(x)) {
            return Err(InduceError::Incompatible {
                x,
                reason: "action does not respect parity".into(),
            });
        }
        for (b, &y) in subalg.iter().enumerate() {
            let s = koszul_sign(f, table.parity(x), table.parity(y));
            let lhs = v.actions[a].mul(f, &v.actions[b]).lin_comb(
                f,
                Fe::ONE,
                &v.actions[b].mul(f, &v.actions[a]),
                f.neg(s),
            );
            if lhs != rho(table.bracket_basis(x, y)) {
                return Err(InduceError::Incompatible {
                    x,
                    reason: format!("bracket with x_{y} is not represented"),
                });
            }
        }
        if !table.parity(x).is_odd() {
            let c = f.frobenius(chi.values[x]);
            let lhs = v.actions[a].pow(f, f.characteristic() as u64).lin_comb(
                f,
                Fe::ONE,
                &rho(table.pmap_basis(x)),
                f.neg(Fe::ONE),
            );
            if lhs != SparseMatrix::diagonal(&vec![c; v.dim()]) {
                return Err(InduceError::Incompatible {
                    x,
                    reason: "x^p - x^[p] does not act by chi(x)^p".into(),
                });
            }
        }
    }
    Ok(())
}

/// Runs `job` on a thread with a large stack; straightening recurses deeply.
pub(crate) fn with_big_stack<T: Send>(job: impl FnOnce() -> T + Send) -> T {
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(1 << 28)
            .spawn_scoped(s, job)
            .expect("spawn worker thread")
            .join()
            .expect("worker thread panicked")
    })
}

/// Induce `v` from the subalgebra spanned by `subalg` up to the whole table.
pub fn induce(
    table: Arc<StructureTable>,
    subalg: &[usize],
    v: &InducingModule,
    chi: &PChar,
) -> Result<InducedModule, InduceError> {
    check_inducing(&table, subalg, v, chi)?;
    let (monomials, complement, actions) = with_big_stack(|| {
        let mut eng = Straightener::new(&table, subalg, v, chi, true);
        let dim = eng.dim();
        let actions: Vec<SparseMatrix> = (0..table.dim())
            .map(|x| SparseMatrix::from_columns((0..dim as u32).map(|b| eng.act(x, b)).collect()))
            .collect();
        (eng.monomials, eng.comp, actions)
    });
    let parity = monomials
        .iter()
        .flat_map(|m| {
            let odd = complement
                .iter()
                .zip(m)
                .filter(|(&x, &a)| a > 0 && table.parity(x).is_odd())
                .count();
            let mp = if odd % 2 == 1 {
                Parity::Odd
            } else {
                Parity::Even
            };
            v.parity.iter().map(move |&pv| mp.add(pv))
        })
        .collect();
    Ok(InducedModule {
        table,
        chi: chi.clone(),
        subalg: subalg.to_vec(),
        complement,
        v_dim: v.dim(),
        monomials,
        parity,
        actions,
    })
}

impl InducedModule {
    /// This module as inducing data, one action per basis vector of its
    /// own algebra.
    pub fn as_inducing(&self) -> InducingModule {
        InducingModule {
            parity: self.parity.clone(),
            actions: self.actions.clone(),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct RepCheck {
    pub check: String,
    pub passed: bool,
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct RepReport {
    pub checks: Vec<RepCheck>,
}

impl RepReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }
}

/// Representation axioms of an explicit module.
pub fn verify_actions(
    table: &StructureTable,
    chi: &PChar,
    parity: &[Parity],
    actions: &[SparseMatrix],
) -> RepReport {
    let f = &**table.field();
    let d = table.dim();
    let dim = parity.len();
    let rho = |z: &SparseVec| -> SparseMatrix {
        z.iter().fold(SparseMatrix::zeros(dim), |acc, &(m, c)| {
            acc.lin_comb(f, Fe::ONE, &actions[m as usize], c)
        })
    };
    let mut checks = Vec::new();

    let mut w = None;
    'par: for (x, a) in actions.iter().enumerate() {
        for j in 0..dim {
            if a.column(j)
                .iter()
                .any(|&(i, _)| parity[i as usize] != parity[j].add(table.parity(x)))
            {
                w = Some(vec![x, j]);
                break 'par;
            }
        }
    }
    checks.push(RepCheck {
        check: "parity".into(),
        passed: w.is_none(),
        witness: w,
    });

    let mut w = None;
    'br: for x in 0..d {
        for y in x..d {
            let s = koszul_sign(f, table.parity(x), table.parity(y));
            let lhs = actions[x].mul(f, &actions[y]).lin_comb(
                f,
                Fe::ONE,
                &actions[y].mul(f, &actions[x]),
                f.neg(s),
            );
            if lhs != rho(table.bracket_basis(x, y)) {
                w = Some(vec![x, y]);
                break 'br;
            }
        }
    }
    checks.push(RepCheck {
        check: "bracket".into(),
        passed: w.is_none(),
        witness: w,
    });

    let half = f.inv(f.from_int(2)).unwrap();
    let mut w = None;
    for y in table.dim_even()..d {
        let lhs = actions[y].mul(f, &actions[y]);
        let rhs = rho(table.bracket_basis(y, y));
        if lhs != rhs.lin_comb(f, half, &SparseMatrix::zeros(dim), Fe::ZERO) {
            w = Some(vec![y]);
            break;
        }
    }
    checks.push(RepCheck {
        check: "odd_square".into(),
        passed: w.is_none(),
        witness: w,
    });

    let mut w = None;
    for x in 0..table.dim_even() {
        let c = f.frobenius(chi.values[x]);
        let lhs = actions[x].pow(f, f.characteristic() as u64).lin_comb(
            f,
            Fe::ONE,
            &rho(table.pmap_basis(x)),
            f.neg(Fe::ONE),
        );
        if lhs != SparseMatrix::diagonal(&vec![c; dim]) {
            w = Some(vec![x]);
            break;
        }
    }
    checks.push(RepCheck {
        check: "p_character".into(),
        passed: w.is_none(),
        witness: w,
    });
    RepReport { checks }
}

pub fn verify_representation(m: &InducedModule) -> RepReport {
    verify_actions(m.table(), m.chi(), m.parity(), m.actions())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;
    use crate::superalg::{build_algebra, Family, Slot};

    #[test]
    fn monomials_are_graded() {
        let m = enumerate_monomials(&[2, 1]);
        assert_eq!(m.len(), 6);
        assert_eq!(m[0], vec![0, 0]);
        let degs: Vec<u32> = m
            .iter()
            .map(|v| v.iter().map(|&x| x as u32).sum())
            .collect();
        assert!(degs.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn induction_from_whole_algebra_is_identity() {
        let g = build_algebra(Family::Ptilde, 2, Arc::new(make_field(3, 1).unwrap())).unwrap();
        let t = Arc::new(g.table().clone());
        let all: Vec<usize> = (0..g.dim()).collect();
        let v = InducingModule::one_dimensional(&vec![Fe::ZERO; g.dim()]);
        let m = induce(t, &all, &v, &PChar::zero(4)).unwrap();
        assert_eq!(m.dim(), 1);
        assert!(verify_representation(&m).passed());
    }

    #[test]
    fn rejects_non_subalgebra() {
        let g = build_algebra(Family::Ptilde, 2, Arc::new(make_field(3, 1).unwrap())).unwrap();
        let t = Arc::new(g.table().clone());
        let sub = vec![
            g.slot_indices(Slot::PosEven)[0],
            g.slot_indices(Slot::NegEven)[0],
        ];
        let v = InducingModule::one_dimensional(&[Fe::ZERO, Fe::ZERO]);
        assert!(matches!(
            induce(t, &sub, &v, &PChar::zero(4)),
            Err(InduceError::NotSubalgebra(..))
        ));
    }

    #[test]
    fn rejects_incompatible_character() {
        let g = build_algebra(Family::Ptilde, 2, Arc::new(make_field(3, 1).unwrap())).unwrap();
        let t = Arc::new(g.table().clone());
        let mut sub = g.cartan_even();
        sub.extend(g.slot_indices(Slot::PosEven));
        // H_1 acting by 1 needs chi(H_1)^p = 1 - 1 = 0, but E acting by 1 is not allowed
        let v = InducingModule::one_dimensional(&[Fe::ONE, Fe::ZERO, Fe::ONE]);
        let err = induce(t, &sub, &v, &PChar::zero(4)).unwrap_err();
        assert!(matches!(err, InduceError::Incompatible { .. }));
    }
}
