//! The strange classical families as explicit supermatrix algebras.
//!
//! Every algebra lives inside `gl(n|n)` over a finite field. The basis order
//! is fixed: even Cartan, even positive root vectors, even negative root
//! vectors, then the odd part (odd Cartan for the queer families, then
//! positive and negative odd root vectors). Within each block vectors are
//! ordered lexicographically by their index pair. PBW monomial indices and
//! cache files depend on this order.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::field::{Field, FieldElement as Fe};
use crate::linalg::{sparse_combine, Matrix, SparseVec};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("rank {0} is below the supported minimum 2")]
    RankTooSmall(usize),
    #[error("coefficient vector has length {got}, expected {expected}")]
    WrongLength { expected: usize, got: usize },
    #[error("conjugating matrix is singular or has the wrong size")]
    Singular,
    #[error("matrix does not lie in the algebra")]
    NotInAlgebra,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `p~(n)`: `[[A, B], [C, -A^T]]` with `B = B^T`, `C = -C^T`.
    Ptilde,
    /// `p(n) = [p~(n), p~(n)]`, trace-free `A`.
    Pder,
    /// `q(n)`: `[[A, B], [B, A]]`.
    Q,
    /// `q~(n) = [q(n), q(n)]`, trace-free `B`.
    Sq,
}

impl Family {
    pub fn is_periplectic(self) -> bool {
        matches!(self, Family::Ptilde | Family::Pder)
    }

    pub fn is_queer(self) -> bool {
        !self.is_periplectic()
    }

    pub fn all() -> [Family; 4] {
        [Family::Ptilde, Family::Pder, Family::Q, Family::Sq]
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Ptilde => "ptilde",
            Family::Pder => "pder",
            Family::Q => "q",
            Family::Sq => "sq",
        })
    }
}

impl std::str::FromStr for Family {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ptilde" => Ok(Family::Ptilde),
            "pder" | "p" => Ok(Family::Pder),
            "q" => Ok(Family::Q),
            "sq" | "qtilde" => Ok(Family::Sq),
            other => Err(format!("unknown family `{other}`")),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    #[inline]
    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }

    #[inline]
    pub fn add(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

/// Sign `(-1)^{|x||y|}` as a field element.
#[inline]
pub fn koszul_sign(f: &Field, a: Parity, b: Parity) -> Fe {
    if a.is_odd() && b.is_odd() {
        f.neg(f.one())
    } else {
        f.one()
    }
}

/// Which block of the fixed basis order a vector belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Slot {
    CartanEven,
    PosEven,
    NegEven,
    CartanOdd,
    PosOdd,
    NegOdd,
}

#[derive(Clone, Debug)]
pub struct BasisVector {
    pub index: usize,
    pub parity: Parity,
    /// `Z`-degree for the periplectic families.
    pub z_degree: Option<i8>,
    pub label: String,
    pub slot: Slot,
    /// Root as coefficients on `eps_1..eps_n`; `None` on the Cartan.
    pub root: Option<Vec<i32>>,
    pub matrix: Matrix,
}

/// Structure constants, parities and `p`-map of a finite-dimensional
/// restricted Lie superalgebra in a fixed basis whose even vectors come first.
#[derive(Clone, Debug)]
pub struct StructureTable {
    field: Arc<Field>,
    parity: Vec<Parity>,
    dim_even: usize,
    brackets: Vec<SparseVec>,
    pmap: Vec<SparseVec>,
}

impl StructureTable {
    /// Build from raw data. `brackets[i * dim + j]` is `[x_i, x_j]`;
    /// `pmap[i]` is `x_i^{[p]}` for the even vectors.
    pub fn new(
        field: Arc<Field>,
        parity: Vec<Parity>,
        brackets: Vec<SparseVec>,
        pmap: Vec<SparseVec>,
    ) -> Self {
        let dim = parity.len();
        let dim_even = parity.iter().take_while(|p| !p.is_odd()).count();
        assert!(
            parity[dim_even..].iter().all(|p| p.is_odd()),
            "even basis vectors must precede odd ones"
        );
        assert_eq!(brackets.len(), dim * dim);
        assert_eq!(pmap.len(), dim_even);
        StructureTable {
            field,
            parity,
            dim_even,
            brackets,
            pmap,
        }
    }

    #[inline]
    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    #[inline]
    pub fn dim(&self) -> usize {
        self.parity.len()
    }

    #[inline]
    pub fn dim_even(&self) -> usize {
        self.dim_even
    }

    #[inline]
    pub fn dim_odd(&self) -> usize {
        self.dim() - self.dim_even
    }

    #[inline]
    pub fn parity(&self, i: usize) -> Parity {
        self.parity[i]
    }

    pub fn parities(&self) -> &[Parity] {
        &self.parity
    }

    /// `[x_i, x_j]` in basis coordinates.
    #[inline]
    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec {
        &self.brackets[i * self.dim() + j]
    }

    /// `x_i^{[p]}` for an even basis vector.
    #[inline]
    pub fn pmap_basis(&self, i: usize) -> &SparseVec {
        &self.pmap[i]
    }

    pub fn set_bracket(&mut self, i: usize, j: usize, v: SparseVec) {
        let d = self.dim();
        self.brackets[i * d + j] = v;
    }

    fn check_len(&self, x: &[Fe]) -> Result<(), AlgebraError> {
        if x.len() != self.dim() {
            return Err(AlgebraError::WrongLength {
                expected: self.dim(),
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Bilinear extension of the structure constants.
    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        self.check_len(x)?;
        self.check_len(y)?;
        let f = &*self.field;
        let mut out = vec![Fe::ZERO; self.dim()];
        for (i, &a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = f.mul(a, b);
                for &(m, c) in self.bracket_basis(i, j) {
                    out[m as usize] = f.mul_add(ab, c, out[m as usize]);
                }
            }
        }
        Ok(out)
    }

    /// `[x_i, v]` for sparse `v`.
    pub fn bracket_basis_sparse(&self, i: usize, v: &[(u32, Fe)]) -> SparseVec {
        let f = &*self.field;
        let mut terms = Vec::new();
        for &(j, b) in v {
            for &(m, c) in self.bracket_basis(i, j as usize) {
                terms.push((m, f.mul(b, c)));
            }
        }
        sparse_combine(f, &mut terms)
    }

    /// Matrix of `ad(x_i)` on the algebra (columns are images of basis vectors).
    pub fn ad_matrix(&self, i: usize) -> Matrix {
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for j in 0..d {
            for &(r, c) in self.bracket_basis(i, j) {
                m[(r as usize, j)] = c;
            }
        }
        m
    }

    pub fn ad_matrix_of(&self, x: &[(u32, Fe)]) -> Matrix {
        let f = &*self.field;
        let d = self.dim();
        let mut m = Matrix::zeros(d, d);
        for &(i, a) in x {
            m = m.add(f, &self.ad_matrix(i as usize).scale(f, a));
        }
        m
    }

    /// Table of the subalgebra spanned by `idx`, reindexed in the given order.
    /// The indices must list even vectors before odd ones.
    pub fn restrict(&self, idx: &[usize]) -> Result<StructureTable, (usize, usize)> {
        self.is_subalgebra(idx)?;
        let mut pos = vec![u32::MAX; self.dim()];
        for (k, &i) in idx.iter().enumerate() {
            pos[i] = k as u32;
        }
        let remap = |v: &SparseVec| -> SparseVec {
            let mut w: SparseVec = v.iter().map(|&(m, c)| (pos[m as usize], c)).collect();
            w.sort_by_key(|t| t.0);
            w
        };
        let mut brackets = Vec::with_capacity(idx.len() * idx.len());
        for &i in idx {
            for &j in idx {
                brackets.push(remap(self.bracket_basis(i, j)));
            }
        }
        let parity: Vec<Parity> = idx.iter().map(|&i| self.parity(i)).collect();
        let pmap = idx
            .iter()
            .filter(|&&i| !self.parity(i).is_odd())
            .map(|&i| remap(&self.pmap[i]))
            .collect();
        Ok(StructureTable::new(
            self.field.clone(),
            parity,
            brackets,
            pmap,
        ))
    }

    /// Whether the span of `idx` is closed under the bracket and the `p`-map.
    pub fn is_subalgebra(&self, idx: &[usize]) -> Result<(), (usize, usize)> {
        let mut inside = vec![false; self.dim()];
        for &i in idx {
            inside[i] = true;
        }
        for &i in idx {
            for &j in idx {
                if self
                    .bracket_basis(i, j)
                    .iter()
                    .any(|&(m, _)| !inside[m as usize])
                {
                    return Err((i, j));
                }
            }
            if i < self.dim_even && self.pmap[i].iter().any(|&(m, _)| !inside[m as usize]) {
                return Err((i, i));
            }
        }
        Ok(())
    }
}

/// A root vector entry of the root data.
#[derive(Clone, Debug, Serialize)]
pub struct RootEntry {
    pub root: Vec<i32>,
    pub parity: Parity,
    pub index: usize,
}

/// An explicit member of one of the four families.
#[derive(Clone, Debug)]
pub struct LieSuperalgebra {
    family: Family,
    n: usize,
    basis: Vec<BasisVector>,
    table: StructureTable,
    coords: CoordinateSolver,
    /// `p | n` for the derived periplectic family: the trace form degenerates.
    degenerate: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct AlgebraSummary {
    pub family: Family,
    pub n: usize,
    pub p: u32,
    pub k: u32,
    pub modulus: Vec<u32>,
    pub superdimension: (usize, usize),
    pub roots: Vec<String>,
    pub basis_labels: Vec<String>,
    pub degenerate: bool,
}

fn root_label(root: &[i32]) -> String {
    let mut s = String::new();
    for (i, &c) in root.iter().enumerate() {
        if c == 0 {
            continue;
        }
        let sign = if c < 0 {
            "-"
        } else if s.is_empty() {
            ""
        } else {
            "+"
        };
        let mag = c.unsigned_abs();
        if mag == 1 {
            s.push_str(&format!("{sign}e{}", i + 1));
        } else {
            s.push_str(&format!("{sign}{mag}e{}", i + 1));
        }
    }
    s
}

struct Raw {
    label: String,
    parity: Parity,
    z: Option<i8>,
    slot: Slot,
    root: Option<Vec<i32>>,
    matrix: Matrix,
}

fn raw_basis(family: Family, n: usize, f: &Field) -> Vec<Raw> {
    let s = 2 * n;
    let one = f.one();
    let minus = f.neg(one);
    let comb = |terms: &[(usize, usize, Fe)]| {
        let mut m = Matrix::zeros(s, s);
        for &(i, j, c) in terms {
            m[(i, j)] = f.add(m[(i, j)], c);
        }
        m
    };
    let eps = |i: usize, a: i32, j: usize, b: i32| {
        let mut r = vec![0i32; n];
        r[i] += a;
        r[j] += b;
        r
    };
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .collect();
    let mut out = Vec::new();
    let periplectic = family.is_periplectic();
    let z_even = periplectic.then_some(0i8);

    // even Cartan
    match family {
        Family::Ptilde => {
            for i in 0..n {
                out.push(Raw {
                    label: format!("H{}", i + 1),
                    parity: Parity::Even,
                    z: z_even,
                    slot: Slot::CartanEven,
                    root: None,
                    matrix: comb(&[(i, i, one), (n + i, n + i, minus)]),
                });
            }
        }
        Family::Pder => {
            for i in 0..n - 1 {
                out.push(Raw {
                    label: format!("H{}-H{}", i + 1, i + 2),
                    parity: Parity::Even,
                    z: z_even,
                    slot: Slot::CartanEven,
                    root: None,
                    matrix: comb(&[
                        (i, i, one),
                        (n + i, n + i, minus),
                        (i + 1, i + 1, minus),
                        (n + i + 1, n + i + 1, one),
                    ]),
                });
            }
        }
        Family::Q | Family::Sq => {
            for i in 0..n {
                out.push(Raw {
                    label: format!("J{}", i + 1),
                    parity: Parity::Even,
                    z: None,
                    slot: Slot::CartanEven,
                    root: None,
                    matrix: comb(&[(i, i, one), (n + i, n + i, one)]),
                });
            }
        }
    }

    // even root vectors
    for (slot, positive) in [(Slot::PosEven, true), (Slot::NegEven, false)] {
        for &(i, j) in &pairs {
            let (a, b) = if positive { (i, j) } else { (j, i) };
            let matrix = if periplectic {
                comb(&[(a, b, one), (n + b, n + a, minus)])
            } else {
                comb(&[(a, b, one), (n + a, n + b, one)])
            };
            let root = eps(a, 1, b, -1);
            out.push(Raw {
                label: format!("X[{}]", root_label(&root)),
                parity: Parity::Even,
                z: z_even,
                slot,
                root: Some(root),
                matrix,
            });
        }
    }

    if periplectic {
        for i in 0..n {
            for j in i..n {
                let (matrix, root) = if i == j {
                    (comb(&[(i, n + i, one)]), eps(i, 1, i, 1))
                } else {
                    (comb(&[(i, n + j, one), (j, n + i, one)]), eps(i, 1, j, 1))
                };
                out.push(Raw {
                    label: format!("X[{}]", root_label(&root)),
                    parity: Parity::Odd,
                    z: Some(1),
                    slot: Slot::PosOdd,
                    root: Some(root),
                    matrix,
                });
            }
        }
        for &(i, j) in &pairs {
            let root = eps(i, -1, j, -1);
            out.push(Raw {
                label: format!("X[{}]", root_label(&root)),
                parity: Parity::Odd,
                z: Some(-1),
                slot: Slot::NegOdd,
                root: Some(root),
                matrix: comb(&[(n + i, j, one), (n + j, i, minus)]),
            });
        }
    } else {
        match family {
            Family::Q => {
                for i in 0..n {
                    out.push(Raw {
                        label: format!("J'{}", i + 1),
                        parity: Parity::Odd,
                        z: None,
                        slot: Slot::CartanOdd,
                        root: None,
                        matrix: comb(&[(i, n + i, one), (n + i, i, one)]),
                    });
                }
            }
            _ => {
                for i in 0..n - 1 {
                    out.push(Raw {
                        label: format!("J'{}-J'{}", i + 1, i + 2),
                        parity: Parity::Odd,
                        z: None,
                        slot: Slot::CartanOdd,
                        root: None,
                        matrix: comb(&[
                            (i, n + i, one),
                            (n + i, i, one),
                            (i + 1, n + i + 1, minus),
                            (n + i + 1, i + 1, minus),
                        ]),
                    });
                }
            }
        }
        for (slot, positive) in [(Slot::PosOdd, true), (Slot::NegOdd, false)] {
            for &(i, j) in &pairs {
                let (a, b) = if positive { (i, j) } else { (j, i) };
                let root = eps(a, 1, b, -1);
                out.push(Raw {
                    label: format!("X'[{}]", root_label(&root)),
                    parity: Parity::Odd,
                    z: None,
                    slot,
                    root: Some(root),
                    matrix: comb(&[(a, n + b, one), (n + a, b, one)]),
                });
            }
        }
    }
    out
}

/// Expresses `2n x 2n` matrices in a fixed linearly independent basis.
#[derive(Clone, Debug)]
struct CoordinateSolver {
    size: usize,
    /// Flattened matrix positions that determine the coordinates.
    positions: Vec<usize>,
    /// Inverse of the basis restricted to `positions`.
    inverse: Matrix,
    flat: Vec<Vec<Fe>>,
}

impl CoordinateSolver {
    fn new(f: &Field, basis: &[Matrix]) -> Self {
        let size = basis[0].rows();
        let flat: Vec<Vec<Fe>> = basis
            .iter()
            .map(|m| m.to_rows().into_iter().flatten().collect())
            .collect();
        let mut rows = Matrix::from_rows(flat.clone());
        let positions = rows.rref(f);
        assert_eq!(positions.len(), basis.len(), "basis is linearly dependent");
        let d = basis.len();
        let mut sub = Matrix::zeros(d, d);
        for (r, &pos) in positions.iter().enumerate() {
            for (c, v) in flat.iter().enumerate() {
                sub[(r, c)] = v[pos];
            }
        }
        let inverse = sub
            .inverse(f)
            .expect("pivot positions give an invertible minor");
        CoordinateSolver {
            size,
            positions,
            inverse,
            flat,
        }
    }

    fn solve(&self, f: &Field, m: &Matrix) -> Option<Vec<Fe>> {
        assert_eq!(m.rows(), self.size);
        let flat_m: Vec<Fe> = m.to_rows().into_iter().flatten().collect();
        let rhs: Vec<Fe> = self.positions.iter().map(|&p| flat_m[p]).collect();
        let x = self.inverse.mul_vec(f, &rhs);
        let mut recon = vec![Fe::ZERO; flat_m.len()];
        for (c, v) in x.iter().zip(&self.flat) {
            crate::linalg::axpy(f, *c, v, &mut recon);
        }
        (recon == flat_m).then_some(x)
    }
}

fn supercommutator(f: &Field, a: &Matrix, pa: Parity, b: &Matrix, pb: Parity) -> Matrix {
    let ab = a.mul(f, b);
    let ba = b.mul(f, a);
    if pa.is_odd() && pb.is_odd() {
        ab.add(f, &ba)
    } else {
        ab.sub(f, &ba)
    }
}

/// Build one of the four families over `field`.
pub fn build_algebra(
    family: Family,
    n: usize,
    field: Arc<Field>,
) -> Result<LieSuperalgebra, AlgebraError> {
    if n < 2 {
        return Err(AlgebraError::RankTooSmall(n));
    }
    let f = &*field;
    let raw = raw_basis(family, n, f);
    let matrices: Vec<Matrix> = raw.iter().map(|r| r.matrix.clone()).collect();
    let coords = CoordinateSolver::new(f, &matrices);
    let dim = raw.len();
    let mut brackets = Vec::with_capacity(dim * dim);
    for a in &raw {
        for b in &raw {
            let c = supercommutator(f, &a.matrix, a.parity, &b.matrix, b.parity);
            let x = coords
                .solve(f, &c)
                .expect("supercommutator of basis vectors stays in the algebra");
            brackets.push(crate::linalg::dense_to_sparse(&x));
        }
    }
    let p = f.characteristic() as u64;
    let pmap = raw
        .iter()
        .filter(|r| !r.parity.is_odd())
        .map(|r| {
            let power = r.matrix.pow(f, p);
            let x = coords
                .solve(f, &power)
                .expect("p-th power of an even basis vector stays in the algebra");
            crate::linalg::dense_to_sparse(&x)
        })
        .collect();
    let parity = raw.iter().map(|r| r.parity).collect();
    let table = StructureTable::new(field.clone(), parity, brackets, pmap);
    let basis = raw
        .into_iter()
        .enumerate()
        .map(|(index, r)| BasisVector {
            index,
            parity: r.parity,
            z_degree: r.z,
            label: r.label,
            slot: r.slot,
            root: r.root,
            matrix: r.matrix,
        })
        .collect();
    let degenerate = family == Family::Pder && n as u64 % p == 0;
    Ok(LieSuperalgebra {
        family,
        n,
        basis,
        table,
        coords,
        degenerate,
    })
}

impl LieSuperalgebra {
    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Arc<Field> {
        self.table.field()
    }

    pub fn table(&self) -> &StructureTable {
        &self.table
    }

    pub fn table_mut(&mut self) -> &mut StructureTable {
        &mut self.table
    }

    pub fn basis(&self) -> &[BasisVector] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn dim_even(&self) -> usize {
        self.table.dim_even()
    }

    pub fn dim_odd(&self) -> usize {
        self.table.dim_odd()
    }

    pub fn is_degenerate(&self) -> bool {
        self.degenerate
    }

    pub fn slot_indices(&self, slot: Slot) -> Vec<usize> {
        self.basis
            .iter()
            .filter(|b| b.slot == slot)
            .map(|b| b.index)
            .collect()
    }

    pub fn cartan_even(&self) -> Vec<usize> {
        self.slot_indices(Slot::CartanEven)
    }

    pub fn cartan_odd(&self) -> Vec<usize> {
        self.slot_indices(Slot::CartanOdd)
    }

    /// Positive nilpotent part: `n_0^+` plus `g_1` (periplectic) or `n_1^+` (queer).
    pub fn pos_nilpotent(&self) -> Vec<usize> {
        let mut v = self.slot_indices(Slot::PosEven);
        v.extend(self.slot_indices(Slot::PosOdd));
        v
    }

    /// Negative nilpotent part: `n_0^-` plus `g_{-1}` or `n_1^-`.
    pub fn neg_nilpotent(&self) -> Vec<usize> {
        let mut v = self.slot_indices(Slot::NegEven);
        v.extend(self.slot_indices(Slot::NegOdd));
        v
    }

    pub fn roots(&self) -> Vec<RootEntry> {
        self.basis
            .iter()
            .filter_map(|b| {
                b.root.as_ref().map(|r| RootEntry {
                    root: r.clone(),
                    parity: b.parity,
                    index: b.index,
                })
            })
            .collect()
    }

    /// Index of the root vector with the given root and parity.
    pub fn root_vector(&self, root: &[i32], parity: Parity) -> Option<usize> {
        self.basis
            .iter()
            .find(|b| b.parity == parity && b.root.as_deref() == Some(root))
            .map(|b| b.index)
    }

    pub fn label(&self, i: usize) -> &str {
        &self.basis[i].label
    }

    pub fn bracket(&self, x: &[Fe], y: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        self.table.bracket(x, y)
    }

    /// `sum x_i M_i` as a `2n x 2n` matrix.
    pub fn to_matrix(&self, x: &[Fe]) -> Result<Matrix, AlgebraError> {
        if x.len() != self.dim() {
            return Err(AlgebraError::WrongLength {
                expected: self.dim(),
                got: x.len(),
            });
        }
        let f = &**self.field();
        let s = 2 * self.n;
        let mut m = Matrix::zeros(s, s);
        for (c, b) in x.iter().zip(&self.basis) {
            if !c.is_zero() {
                m = m.add(f, &b.matrix.scale(f, *c));
            }
        }
        Ok(m)
    }

    pub fn coordinates(&self, m: &Matrix) -> Result<Vec<Fe>, AlgebraError> {
        if m.rows() != 2 * self.n || m.cols() != 2 * self.n {
            return Err(AlgebraError::NotInAlgebra);
        }
        self.coords
            .solve(self.field(), m)
            .ok_or(AlgebraError::NotInAlgebra)
    }

    /// The block-diagonal lift of `g in GL(n)` used for conjugation.
    fn lift(&self, gmat: &Matrix) -> Result<(Matrix, Matrix), AlgebraError> {
        let f = &**self.field();
        let n = self.n;
        if gmat.rows() != n || gmat.cols() != n {
            return Err(AlgebraError::Singular);
        }
        let g_inv = gmat.inverse(f).ok_or(AlgebraError::Singular)?;
        let lower = if self.family.is_periplectic() {
            g_inv.transpose()
        } else {
            gmat.clone()
        };
        let lower_inv = if self.family.is_periplectic() {
            gmat.transpose()
        } else {
            g_inv.clone()
        };
        let mut big = Matrix::zeros(2 * n, 2 * n);
        let mut big_inv = Matrix::zeros(2 * n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                big[(i, j)] = gmat[(i, j)];
                big[(n + i, n + j)] = lower[(i, j)];
                big_inv[(i, j)] = g_inv[(i, j)];
                big_inv[(n + i, n + j)] = lower_inv[(i, j)];
            }
        }
        Ok((big, big_inv))
    }

    /// `Ad g (x) = g~ x g~^{-1}` with `g~ = diag(g, g^{-T})` (periplectic) or
    /// `diag(g, g)` (queer).
    pub fn adjoint_conjugate(&self, gmat: &Matrix, x: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        let f = &**self.field();
        let (big, big_inv) = self.lift(gmat)?;
        let m = self.to_matrix(x)?;
        self.coordinates(&big.mul(f, &m).mul(f, &big_inv))
    }

    /// Matrix of `Ad g` on the algebra; columns are images of basis vectors.
    pub fn adjoint_matrix(&self, gmat: &Matrix) -> Result<Matrix, AlgebraError> {
        let f = &**self.field();
        let (big, big_inv) = self.lift(gmat)?;
        let d = self.dim();
        let mut out = Matrix::zeros(d, d);
        for (j, b) in self.basis.iter().enumerate() {
            let img = self.coordinates(&big.mul(f, &b.matrix).mul(f, &big_inv))?;
            for (i, c) in img.into_iter().enumerate() {
                out[(i, j)] = c;
            }
        }
        Ok(out)
    }

    /// `p`-map of an arbitrary even element, computed as the matrix power.
    pub fn pmap(&self, x: &[Fe]) -> Result<Vec<Fe>, AlgebraError> {
        let f = &**self.field();
        let m = self.to_matrix(x)?;
        if x[self.dim_even()..].iter().any(|c| !c.is_zero()) {
            return Err(AlgebraError::NotInAlgebra);
        }
        self.coordinates(&m.pow(f, f.characteristic() as u64))
    }

    pub fn summary(&self) -> AlgebraSummary {
        let f = self.field();
        AlgebraSummary {
            family: self.family,
            n: self.n,
            p: f.characteristic(),
            k: f.degree(),
            modulus: f.modulus().to_vec(),
            superdimension: (self.dim_even(), self.dim_odd()),
            roots: self
                .roots()
                .iter()
                .map(|r| {
                    format!(
                        "{}{}",
                        root_label(&r.root),
                        if r.parity.is_odd() { " (odd)" } else { "" }
                    )
                })
                .collect(),
            basis_labels: self.basis.iter().map(|b| b.label.clone()).collect(),
            degenerate: self.degenerate,
        }
    }
}

/// Outcome of one axiom check.
#[derive(Clone, Debug, Serialize)]
pub struct AxiomCheck {
    pub axiom: String,
    pub passed: bool,
    /// Offending basis indices when the check failed.
    pub witness: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub checks: Vec<AxiomCheck>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn check(&self, axiom: &str) -> Option<&AxiomCheck> {
        self.checks.iter().find(|c| c.axiom == axiom)
    }
}

fn check(axiom: &str, witness: Option<Vec<usize>>) -> AxiomCheck {
    AxiomCheck {
        axiom: axiom.into(),
        passed: witness.is_none(),
        witness,
    }
}

/// Axioms that only need the structure table.
pub fn verify_table(t: &StructureTable) -> Vec<AxiomCheck> {
    let f = &**t.field();
    let d = t.dim();
    let mut out = Vec::new();

    let mut w = None;
    'skew: for i in 0..d {
        for j in 0..d {
            let s = koszul_sign(f, t.parity(i), t.parity(j));
            let lhs = t.bracket_basis(i, j);
            let rhs: SparseVec = t
                .bracket_basis(j, i)
                .iter()
                .map(|&(m, c)| (m, f.neg(f.mul(s, c))))
                .collect();
            if *lhs != rhs {
                w = Some(vec![i, j]);
                break 'skew;
            }
        }
    }
    out.push(check("super_skew_symmetry", w));

    let mut w = None;
    'par: for i in 0..d {
        for j in 0..d {
            let par = t.parity(i).add(t.parity(j));
            if t.bracket_basis(i, j)
                .iter()
                .any(|&(m, _)| t.parity(m as usize) != par)
            {
                w = Some(vec![i, j]);
                break 'par;
            }
        }
    }
    out.push(check("parity_compatibility", w));

    // [x,[y,z]] = [[x,y],z] + (-1)^{|x||y|} [y,[x,z]]
    let mut w = None;
    'jac: for x in 0..d {
        for y in 0..d {
            let s = koszul_sign(f, t.parity(x), t.parity(y));
            let xy = t.bracket_basis(x, y);
            for z in 0..d {
                let lhs = t.bracket_basis_sparse(x, t.bracket_basis(y, z));
                let mut terms = Vec::new();
                for &(m, c) in xy {
                    for &(r, e) in t.bracket_basis(m as usize, z) {
                        terms.push((r, f.mul(c, e)));
                    }
                }
                for &(r, e) in &t.bracket_basis_sparse(y, t.bracket_basis(x, z)) {
                    terms.push((r, f.mul(s, e)));
                }
                if lhs != sparse_combine(f, &mut terms) {
                    w = Some(vec![x, y, z]);
                    break 'jac;
                }
            }
        }
    }
    out.push(check("super_jacobi", w));

    let p = f.characteristic() as u64;
    let mut w = None;
    for x in 0..t.dim_even() {
        let lhs = t.ad_matrix_of(t.pmap_basis(x));
        let rhs = t.ad_matrix(x).pow(f, p);
        if lhs != rhs {
            w = Some(vec![x]);
            break;
        }
    }
    out.push(check("restrictedness", w));
    out
}

/// Every axiom, with a witness for each failure.
pub fn verify_algebra(g: &LieSuperalgebra) -> AxiomReport {
    let t = g.table();
    let f = &**g.field();
    let mut checks = verify_table(t);

    // stored p-map equals the matrix power and stays even
    let mut w = None;
    for x in 0..g.dim_even() {
        let mut e = vec![Fe::ZERO; g.dim()];
        e[x] = Fe::ONE;
        let stored = crate::linalg::sparse_to_dense(t.pmap_basis(x), g.dim());
        match g.pmap(&e) {
            Ok(v) if v == stored && v[g.dim_even()..].iter().all(|c| c.is_zero()) => {}
            _ => {
                w = Some(vec![x]);
                break;
            }
        }
    }
    checks.push(check("pmap_closure", w));

    let mut w = None;
    if g.family().is_periplectic() {
        'grad: for (i, a) in g.basis().iter().enumerate() {
            for (j, b) in g.basis().iter().enumerate() {
                let deg = a.z_degree.unwrap() + b.z_degree.unwrap();
                let br = t.bracket_basis(i, j);
                let bad = if deg.abs() > 1 {
                    !br.is_empty()
                } else {
                    br.iter()
                        .any(|&(m, _)| g.basis()[m as usize].z_degree != Some(deg))
                };
                if bad {
                    w = Some(vec![i, j]);
                    break 'grad;
                }
            }
        }
    }
    checks.push(check("grading_compatibility", w));

    // the table must reproduce the matrix supercommutators
    let mut w = None;
    'mat: for (i, a) in g.basis().iter().enumerate() {
        for (j, b) in g.basis().iter().enumerate() {
            let c = supercommutator(f, &a.matrix, a.parity, &b.matrix, b.parity);
            let stored = crate::linalg::sparse_to_dense(t.bracket_basis(i, j), g.dim());
            if g.to_matrix(&stored).map(|m| m != c).unwrap_or(true) {
                w = Some(vec![i, j]);
                break 'mat;
            }
        }
    }
    checks.push(check("matrix_realization", w));

    AxiomReport { checks }
}

/// Expected `(dim g_0, dim g_1)` from the closed-form dimension table.
pub fn expected_superdimension(family: Family, n: usize) -> (usize, usize) {
    match family {
        Family::Ptilde => (n * n, n * n),
        Family::Pder => (n * n - 1, n * n),
        Family::Q => (n * n, n * n),
        Family::Sq => (n * n, n * n - 1),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::make_field;

    fn alg(family: Family, n: usize, p: u32) -> LieSuperalgebra {
        build_algebra(family, n, Arc::new(make_field(p, 1).unwrap())).unwrap()
    }

    fn unit(g: &LieSuperalgebra, i: usize) -> Vec<Fe> {
        let mut v = vec![Fe::ZERO; g.dim()];
        v[i] = Fe::ONE;
        v
    }

    #[test]
    fn rejects_rank_one() {
        let f = Arc::new(make_field(3, 1).unwrap());
        assert_eq!(
            build_algebra(Family::Q, 1, f).unwrap_err(),
            AlgebraError::RankTooSmall(1)
        );
    }

    #[test]
    fn ptilde2_grading_dims() {
        let g = alg(Family::Ptilde, 2, 3);
        assert_eq!((g.dim_even(), g.dim_odd()), (4, 4));
        assert_eq!(g.slot_indices(Slot::PosOdd).len(), 3);
        assert_eq!(g.slot_indices(Slot::NegOdd).len(), 1);
    }

    #[test]
    fn sq3_odd_cartan() {
        assert_eq!(alg(Family::Sq, 3, 3).cartan_odd().len(), 2);
    }

    #[test]
    fn q2_odd_square_is_twice_even() {
        // [J'_1, J'_1] = 2 J_1 from the explicit matrices
        let g = alg(Family::Q, 2, 5);
        let j1 = g.cartan_even()[0];
        let jp1 = g.cartan_odd()[0];
        let f = g.field().clone();
        let m = g.basis()[jp1].matrix.clone();
        let direct = m.mul(&f, &m).add(&f, &m.mul(&f, &m));
        let mut expect = unit(&g, j1);
        expect[j1] = f.from_int(2);
        assert_eq!(g.coordinates(&direct).unwrap(), expect);
        assert_eq!(g.bracket(&unit(&g, jp1), &unit(&g, jp1)).unwrap(), expect);
    }

    #[test]
    fn ptilde2_g1_is_abelian() {
        let g = alg(Family::Ptilde, 2, 3);
        for &i in &g.slot_indices(Slot::PosOdd) {
            for &j in &g.slot_indices(Slot::PosOdd) {
                assert!(g.table().bracket_basis(i, j).is_empty());
            }
        }
    }

    #[test]
    fn bracket_rejects_bad_length() {
        let g = alg(Family::Q, 2, 3);
        assert!(matches!(
            g.bracket(&[Fe::ZERO; 3], &unit(&g, 0)),
            Err(AlgebraError::WrongLength {
                expected: 8,
                got: 3
            })
        ));
    }

    #[test]
    fn even_bracket_alternates() {
        let g = alg(Family::Pder, 3, 5);
        for i in 0..g.dim_even() {
            assert!(g
                .bracket(&unit(&g, i), &unit(&g, i))
                .unwrap()
                .iter()
                .all(|c| c.is_zero()));
        }
    }

    #[test]
    fn toral_and_root_pmap() {
        let g = alg(Family::Ptilde, 3, 3);
        for &h in &g.cartan_even() {
            assert_eq!(g.table().pmap_basis(h), &vec![(h as u32, Fe::ONE)]);
        }
        for &x in &g.slot_indices(Slot::PosEven) {
            assert!(g.table().pmap_basis(x).is_empty());
        }
    }

    #[test]
    fn corrupted_constant_breaks_jacobi() {
        let mut g = alg(Family::Ptilde, 2, 3);
        let f = g.field().clone();
        let (i, j) = (
            g.slot_indices(Slot::PosEven)[0],
            g.slot_indices(Slot::NegEven)[0],
        );
        let mut v = g.table().bracket_basis(i, j).clone();
        v[0].1 = f.add(v[0].1, f.one());
        let w: SparseVec = v.iter().map(|&(m, c)| (m, f.neg(c))).collect();
        g.table_mut().set_bracket(i, j, v);
        g.table_mut().set_bracket(j, i, w);
        let report = verify_algebra(&g);
        let jac = report.check("super_jacobi").unwrap();
        assert!(!jac.passed);
        assert_eq!(jac.witness.as_ref().unwrap().len(), 3);
        assert!(report.check("super_skew_symmetry").unwrap().passed);
    }

    #[test]
    fn root_space_decomposition() {
        for family in Family::all() {
            let g = alg(family, 3, 5);
            let f = g.field().clone();
            let n = g.rank();
            for r in g.roots() {
                for &h in &g.cartan_even() {
                    // value of the root on the Cartan element from its diagonal
                    let hm = &g.basis()[h].matrix;
                    let mut val = f.zero();
                    for i in 0..n {
                        let d = hm[(i, i)];
                        val = f.add(val, f.mul(f.from_int(r.root[i] as i64), d));
                    }
                    let br = g.bracket(&unit(&g, h), &unit(&g, r.index)).unwrap();
                    let mut expect = vec![Fe::ZERO; g.dim()];
                    expect[r.index] = val;
                    assert_eq!(br, expect, "{family} root {:?}", r.root);
                }
            }
        }
    }
}
