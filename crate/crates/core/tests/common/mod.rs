//! Independent reference implementations used as test oracles.
//!
//! Nothing here calls into the library's arithmetic or linear algebra: the
//! field is rebuilt from its modulus by schoolbook polynomial arithmetic and
//! all elimination is done on plain index vectors.

#![allow(dead_code)]

use skwlab::field::{Field, FieldElement as Fe};
use skwlab::linalg::SparseMatrix;

/// Table-driven `F_{p^k}`; element `i` has base-`p` digits as coefficients,
/// constant term first.
pub struct Gf {
    pub p: u32,
    pub k: u32,
    pub q: usize,
    add: Vec<u16>,
    mul: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

impl Gf {
    pub fn new(p: u32, modulus: &[u32]) -> Self {
        let k = (modulus.len() - 1) as u32;
        let q = (p as usize).pow(k);
        let digits = |x: usize| -> Vec<u32> {
            let mut x = x;
            (0..k)
                .map(|_| {
                    let d = (x % p as usize) as u32;
                    x /= p as usize;
                    d
                })
                .collect()
        };
        let pack = |d: &[u32]| -> usize {
            d.iter()
                .rev()
                .fold(0, |acc, &c| acc * p as usize + c as usize)
        };
        let mut add = vec![0u16; q * q];
        let mut mul = vec![0u16; q * q];
        for a in 0..q {
            let da = digits(a);
            for b in 0..q {
                let db = digits(b);
                let s: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = pack(&s) as u16;
                // schoolbook product, then reduce by the monic modulus
                let mut prod = vec![0u32; 2 * k as usize];
                for (i, x) in da.iter().enumerate() {
                    for (j, y) in db.iter().enumerate() {
                        prod[i + j] = (prod[i + j] + x * y) % p;
                    }
                }
                for top in (k as usize..prod.len()).rev() {
                    let c = prod[top];
                    if c == 0 {
                        continue;
                    }
                    for (i, &m) in modulus.iter().enumerate() {
                        let idx = top - k as usize + i;
                        prod[idx] = (prod[idx] + p * p - c * m % p) % p;
                    }
                }
                mul[a * q + b] = pack(&prod[..k as usize]) as u16;
            }
        }
        let neg = (0..q)
            .map(|a| (0..q).find(|&b| add[a * q + b] == 0).unwrap() as u16)
            .collect();
        let inv = (0..q)
            .map(|a| (0..q).find(|&b| mul[a * q + b] == 1).unwrap_or(0) as u16)
            .collect();
        Gf {
            p,
            k,
            q,
            add,
            mul,
            neg,
            inv,
        }
    }

    /// Same field as the library's, sharing only the modulus.
    pub fn like(f: &Field) -> Self {
        Gf::new(f.characteristic(), f.modulus())
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b] as usize
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg[b] as usize)
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b] as usize
    }

    pub fn neg(&self, a: usize) -> usize {
        self.neg[a] as usize
    }

    pub fn inv(&self, a: usize) -> usize {
        assert!(a != 0, "inverse of zero");
        self.inv[a] as usize
    }

    pub fn pow(&self, a: usize, e: u64) -> usize {
        (0..e).fold(1, |acc, _| self.mul(acc, a))
    }

    pub fn int(&self, n: i64) -> usize {
        n.rem_euclid(self.p as i64) as usize
    }

    /// Order of a nonzero element, by repeated multiplication.
    pub fn order(&self, a: usize) -> usize {
        let mut x = a;
        let mut n = 1;
        while x != 1 {
            x = self.mul(x, a);
            n += 1;
        }
        n
    }

    pub fn in_prime_field(&self, a: usize) -> bool {
        a < self.p as usize
    }

    pub fn from_lib(&self, f: &Field, x: Fe) -> usize {
        f.coeffs(x)
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.p as usize + c as usize)
    }

    pub fn to_lib(&self, f: &Field, a: usize) -> Fe {
        let mut x = a;
        let d: Vec<u32> = (0..self.k)
            .map(|_| {
                let c = (x % self.p as usize) as u32;
                x /= self.p as usize;
                c
            })
            .collect();
        f.from_coeffs(&d).unwrap()
    }
}

pub type Mat = Vec<Vec<usize>>;

pub fn dense(gf: &Gf, f: &Field, m: &SparseMatrix) -> Mat {
    let d = m.dim();
    (0..d)
        .map(|i| (0..d).map(|j| gf.from_lib(f, m.get(i, j))).collect())
        .collect()
}

pub fn mat_mul(gf: &Gf, a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    (0..n)
        .map(|i| {
            (0..m)
                .map(|j| (0..b.len()).fold(0, |acc, l| gf.add(acc, gf.mul(a[i][l], b[l][j]))))
                .collect()
        })
        .collect()
}

pub fn mat_vec(gf: &Gf, a: &Mat, v: &[usize]) -> Vec<usize> {
    a.iter()
        .map(|row| {
            row.iter()
                .zip(v)
                .fold(0, |acc, (&x, &y)| gf.add(acc, gf.mul(x, y)))
        })
        .collect()
}

/// Reduced row echelon form in place; returns pivot columns.
pub fn rref(gf: &Gf, m: &mut Mat) -> Vec<usize> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let s = gf.inv(m[r][c]);
        for x in m[r].iter_mut() {
            *x = gf.mul(*x, s);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let factor = m[i][c];
                for j in 0..cols {
                    let t = gf.mul(factor, m[r][j]);
                    m[i][j] = gf.sub(m[i][j], t);
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(gf: &Gf, m: &Mat) -> usize {
    let mut m = m.clone();
    rref(gf, &mut m).len()
}

pub fn nullspace(gf: &Gf, m: &Mat) -> Vec<Vec<usize>> {
    let cols = m[0].len();
    let mut r = m.clone();
    let pivots = rref(gf, &mut r);
    let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
    free.iter()
        .map(|&fc| {
            let mut v = vec![0; cols];
            v[fc] = 1;
            for (i, &pc) in pivots.iter().enumerate() {
                v[pc] = gf.neg(r[i][fc]);
            }
            v
        })
        .collect()
}

/// Dimension of the smallest subspace containing `seed` and stable under `gens`.
pub fn spin_dim(gf: &Gf, gens: &[Mat], seed: &[usize]) -> usize {
    let mut basis: Mat = Vec::new();
    let mut queue = vec![seed.to_vec()];
    while let Some(v) = queue.pop() {
        let mut trial = basis.clone();
        trial.push(v.clone());
        if rank(gf, &trial) > basis.len() {
            basis.push(v.clone());
            for g in gens {
                queue.push(mat_vec(gf, g, &v));
            }
        }
    }
    basis.len()
}

/// All products of at most `len` generators.
pub fn words(gf: &Gf, gens: &[Mat], len: usize) -> Vec<Mat> {
    let mut out: Vec<Mat> = gens.to_vec();
    let mut layer: Vec<Mat> = gens.to_vec();
    for _ in 1..len {
        let mut next = Vec::new();
        for w in &layer {
            for g in gens {
                next.push(mat_mul(gf, g, w));
            }
        }
        out.extend(next.iter().cloned());
        layer = next;
    }
    out
}

/// Brute-force search for a proper nonzero invariant subspace.
///
/// Seeds are every vector with entries in `{0, 1, -1}` when the dimension is at
/// most 8 (otherwise those with support at most 2), together with bases of the
/// eigenspaces `ker(w - c)` of every word `w` of length at most 3 and every
/// `c` in the field. When `parity` is given only homogeneous seeds are spun,
/// which finds exactly the graded submodules among those seeds.
pub fn find_invariant_subspace(gf: &Gf, gens: &[Mat], parity: Option<&[bool]>) -> Option<usize> {
    let d = gens[0].len();
    let mut seeds: Vec<Vec<usize>> = Vec::new();
    let vals = [0, 1, gf.neg(1)];
    let full = d <= 8;
    let total = 3usize.pow(d as u32);
    if full {
        for idx in 1..total {
            let mut t = idx;
            seeds.push(
                (0..d)
                    .map(|_| {
                        let c = vals[t % 3];
                        t /= 3;
                        c
                    })
                    .collect(),
            );
        }
    } else {
        for i in 0..d {
            let mut v = vec![0; d];
            v[i] = 1;
            seeds.push(v.clone());
            for j in i + 1..d {
                for &c in &vals[1..] {
                    let mut w = v.clone();
                    w[j] = c;
                    seeds.push(w);
                }
            }
        }
    }
    for w in words(gf, gens, 3) {
        for c in 0..gf.q {
            let shifted: Mat = (0..d)
                .map(|i| {
                    (0..d)
                        .map(|j| if i == j { gf.sub(w[i][j], c) } else { w[i][j] })
                        .collect()
                })
                .collect();
            if rank(gf, &shifted) < d {
                seeds.extend(nullspace(gf, &shifted));
            }
        }
    }
    let seeds: Vec<Vec<usize>> = match parity {
        None => seeds,
        Some(odd) => seeds
            .into_iter()
            .flat_map(|v| {
                let even: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if odd[i] { 0 } else { x })
                    .collect();
                let oddp: Vec<usize> = v
                    .iter()
                    .enumerate()
                    .map(|(i, &x)| if odd[i] { x } else { 0 })
                    .collect();
                [even, oddp]
            })
            .filter(|v| v.iter().any(|&x| x != 0))
            .collect(),
    };
    seeds
        .iter()
        .map(|s| spin_dim(gf, gens, s))
        .find(|&dim| dim < d)
}
