//! Exact arithmetic in `F_{p^k}` for odd primes `p`.
//!
//! Elements are stored as their coefficient vector with respect to the
//! power basis `1, t, ..., t^{k-1}` of `F_p[t]/(modulus)`, packed into a
//! base-`p` integer (constant coefficient least significant). Packing keeps
//! elements `Copy`, hashable and always reduced; multiplication goes through
//! discrete log tables and addition through a table for small fields.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest field order supported by the table representation.
pub const MAX_ORDER: u32 = 1 << 16;
const ADD_TABLE_LIMIT: u32 = 1024;
const EXHAUSTIVE_MODULUS_DEGREE: u32 = 4;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("characteristic {0} is not an odd prime below 256")]
    BadCharacteristic(u32),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of order {p}^{k} exceeds the supported order {MAX_ORDER}")]
    TooLarge { p: u32, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("coefficient encoding has wrong length or an unreduced residue")]
    BadEncoding,
    #[error("cannot parse `{0}` as a field element")]
    Parse(String),
}

/// An element of a fixed finite field. Only meaningful together with the
/// [`Field`] that produced it.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
#[serde(transparent)]
pub struct FieldElement(u16);

impl FieldElement {
    pub const ZERO: FieldElement = FieldElement(0);
    pub const ONE: FieldElement = FieldElement(1);

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    /// Packed base-`p` index in `[0, q)`.
    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// The field `F_p[t]/(modulus)` together with its arithmetic tables.
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    exp: Vec<u16>,
    log: Vec<u32>,
    add: Vec<u16>,
    neg: Vec<u16>,
    inv: Vec<u16>,
}

/// Name used by the external interfaces for the field data.
pub type FieldDescriptor = Field;

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Build `F_{p^k}` with the deterministic modulus: the irreducible monic
/// polynomial whose lower coefficients, read as a base-`p` number with the
/// constant term least significant, are smallest.
pub fn make_field(p: u32, k: u32) -> Result<Field, FieldError> {
    if p == 2 || p >= 256 || !is_prime(p) {
        return Err(FieldError::BadCharacteristic(p));
    }
    if k == 0 {
        return Err(FieldError::ZeroDegree);
    }
    let q = (p as u64).checked_pow(k).filter(|&q| q <= MAX_ORDER as u64);
    let Some(q) = q else {
        return Err(FieldError::TooLarge { p, k });
    };
    let modulus = find_modulus(p, k, q as u32);
    Ok(Field::with_modulus(p, k, modulus))
}

fn find_modulus(p: u32, k: u32, q: u32) -> Vec<u32> {
    let candidate = |m: u32| {
        let mut c = digits(m, p, k);
        c.push(1);
        c
    };
    if k <= EXHAUSTIVE_MODULUS_DEGREE {
        for m in 0..q {
            let f = candidate(m);
            if poly::is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(((p as u64) << 32) | k as u64);
    loop {
        let f = candidate(rng.gen_range(0..q));
        if poly::is_irreducible(&f, p) {
            return f;
        }
    }
}

fn digits(mut m: u32, p: u32, k: u32) -> Vec<u32> {
    let mut out = Vec::with_capacity(k as usize + 1);
    for _ in 0..k {
        out.push(m % p);
        m /= p;
    }
    out
}

impl Field {
    fn with_modulus(p: u32, k: u32, modulus: Vec<u32>) -> Field {
        let q = p.pow(k);
        let pack = |c: &[u32]| c.iter().rev().fold(0u32, |acc, &d| acc * p + d);
        let mul_raw = |a: u32, b: u32| -> u32 {
            let prod = poly::mul_mod(&digits(a, p, k), &digits(b, p, k), &modulus, p);
            let mut c = prod;
            c.resize(k as usize, 0);
            pack(&c)
        };

        // primitive element by direct order computation
        let mut exp = Vec::new();
        for g in 1..q {
            exp.clear();
            let mut x = 1u32;
            loop {
                exp.push(x as u16);
                x = mul_raw(x, g);
                if x == 1 {
                    break;
                }
            }
            if exp.len() as u32 == q - 1 {
                break;
            }
        }
        let mut log = vec![0u32; q as usize];
        for (i, &x) in exp.iter().enumerate() {
            log[x as usize] = i as u32;
        }
        let cycle = exp.clone();
        exp.extend_from_slice(&cycle);

        let add_digits = |a: u32, b: u32| -> u32 {
            let (mut a, mut b, mut pw, mut r) = (a, b, 1u32, 0u32);
            for _ in 0..k {
                r += ((a % p + b % p) % p) * pw;
                a /= p;
                b /= p;
                pw *= p;
            }
            r
        };
        let neg: Vec<u16> = (0..q)
            .map(|a| {
                let c: Vec<u32> = digits(a, p, k).iter().map(|&d| (p - d) % p).collect();
                pack(&c) as u16
            })
            .collect();
        let add = if q <= ADD_TABLE_LIMIT {
            let mut t = vec![0u16; (q * q) as usize];
            for a in 0..q {
                for b in 0..q {
                    t[(a * q + b) as usize] = add_digits(a, b) as u16;
                }
            }
            t
        } else {
            Vec::new()
        };
        let mut inv = vec![0u16; q as usize];
        for a in 1..q as usize {
            let l = log[a];
            inv[a] = exp[((q - 1 - l) % (q - 1)) as usize];
        }
        Field {
            p,
            k,
            q,
            modulus,
            exp,
            log,
            add,
            neg,
            inv,
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Number of elements `p^k`.
    #[inline]
    pub fn order(&self) -> u32 {
        self.q
    }

    /// Monic modulus, constant coefficient first (length `k + 1`).
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    #[inline]
    pub fn zero(&self) -> FieldElement {
        FieldElement::ZERO
    }

    #[inline]
    pub fn one(&self) -> FieldElement {
        FieldElement::ONE
    }

    /// Image of an integer under `Z -> F_p -> F_{p^k}`.
    pub fn from_int(&self, n: i64) -> FieldElement {
        FieldElement(n.rem_euclid(self.p as i64) as u16)
    }

    /// The generator `t` of the power basis (equal to the constant `0` when `k = 1`).
    pub fn gen(&self) -> FieldElement {
        if self.k == 1 {
            // t is the root of the linear modulus
            self.neg(FieldElement(self.modulus[0] as u16))
        } else {
            FieldElement(self.p as u16)
        }
    }

    /// Element with packed index `i`; panics when `i >= q`.
    pub fn element(&self, i: usize) -> FieldElement {
        assert!(i < self.q as usize, "index {i} outside F_{}", self.q);
        FieldElement(i as u16)
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.q).map(|i| FieldElement(i as u16))
    }

    pub fn coeffs(&self, x: FieldElement) -> Vec<u32> {
        digits(x.0 as u32, self.p, self.k)
    }

    pub fn from_coeffs(&self, c: &[u32]) -> Result<FieldElement, FieldError> {
        if c.len() != self.k as usize || c.iter().any(|&d| d >= self.p) {
            return Err(FieldError::BadEncoding);
        }
        Ok(FieldElement(
            c.iter().rev().fold(0u32, |acc, &d| acc * self.p + d) as u16,
        ))
    }

    /// `k` bytes, one residue per byte, constant coefficient first.
    pub fn encode(&self, x: FieldElement, out: &mut Vec<u8>) {
        let mut v = x.0 as u32;
        for _ in 0..self.k {
            out.push((v % self.p) as u8);
            v /= self.p;
        }
    }

    pub fn decode(&self, bytes: &[u8]) -> Result<FieldElement, FieldError> {
        let c: Vec<u32> = bytes.iter().map(|&b| b as u32).collect();
        self.from_coeffs(&c)
    }

    #[inline]
    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if !self.add.is_empty() {
            return FieldElement(self.add[a.0 as usize * self.q as usize + b.0 as usize]);
        }
        let (p, mut x, mut y) = (self.p, a.0 as u32, b.0 as u32);
        let (mut pw, mut r) = (1u32, 0u32);
        for _ in 0..self.k {
            r += ((x % p + y % p) % p) * pw;
            x /= p;
            y /= p;
            pw *= p;
        }
        FieldElement(r as u16)
    }

    #[inline]
    pub fn neg(&self, a: FieldElement) -> FieldElement {
        FieldElement(self.neg[a.0 as usize])
    }

    #[inline]
    pub fn sub(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        if a.0 == 0 || b.0 == 0 {
            return FieldElement::ZERO;
        }
        FieldElement(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// `a * b + c`, the inner step of every elimination loop.
    #[inline]
    pub fn mul_add(&self, a: FieldElement, b: FieldElement, c: FieldElement) -> FieldElement {
        self.add(self.mul(a, b), c)
    }

    #[inline]
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a.0 != 0).then(|| FieldElement(self.inv[a.0 as usize]))
    }

    pub fn div(&self, a: FieldElement, b: FieldElement) -> Result<FieldElement, FieldError> {
        let b_inv = self.inv(b).ok_or(FieldError::DivisionByZero)?;
        Ok(self.mul(a, b_inv))
    }

    pub fn pow(&self, a: FieldElement, e: u64) -> FieldElement {
        if e == 0 {
            return FieldElement::ONE;
        }
        if a.0 == 0 {
            return FieldElement::ZERO;
        }
        let l = (self.log[a.0 as usize] as u64 * (e % (self.q as u64 - 1))) % (self.q as u64 - 1);
        FieldElement(self.exp[l as usize])
    }

    /// `x -> x^p`.
    pub fn frobenius(&self, x: FieldElement) -> FieldElement {
        self.pow(x, self.p as u64)
    }

    /// `x -> x^{p^{k-1}}`, the inverse of [`Field::frobenius`].
    pub fn frobenius_inverse(&self, x: FieldElement) -> FieldElement {
        self.pow(x, (self.p as u64).pow(self.k - 1))
    }

    /// Whether `x` lies in the prime subfield.
    pub fn in_prime_field(&self, x: FieldElement) -> bool {
        (x.0 as u32) < self.p
    }

    /// All solutions of `x^p - x = c` in this field. The result is empty or
    /// a coset `x0 + F_p`, listed as `x0, x0 + 1, ..., x0 + (p - 1)`.
    pub fn artin_schreier_roots(&self, c: FieldElement) -> Vec<FieldElement> {
        let (p, k) = (self.p as u64, self.k as usize);
        // columns: images of the power basis under x -> x^p - x
        let mut aug = vec![vec![0u64; k + 1]; k];
        for j in 0..k {
            let basis = FieldElement(self.p.pow(j as u32) as u16);
            let img = self.sub(self.frobenius(basis), basis);
            for (i, d) in self.coeffs(img).into_iter().enumerate() {
                aug[i][j] = d as u64;
            }
        }
        for (i, d) in self.coeffs(c).into_iter().enumerate() {
            aug[i][k] = d as u64;
        }
        let Some(x0) = solve_mod_p(aug, p) else {
            return Vec::new();
        };
        let x0 = self
            .from_coeffs(&x0.iter().map(|&d| d as u32).collect::<Vec<_>>())
            .expect("reduced solution");
        (0..self.p as i64)
            .map(|a| self.add(x0, self.from_int(a)))
            .collect()
    }

    pub fn random<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(0..self.q) as u16)
    }

    pub fn random_nonzero<R: Rng + ?Sized>(&self, rng: &mut R) -> FieldElement {
        FieldElement(rng.gen_range(1..self.q) as u16)
    }

    /// Human readable form, e.g. `2+t^2`.
    pub fn format(&self, x: FieldElement) -> String {
        if x.is_zero() {
            return "0".into();
        }
        let mut terms = Vec::new();
        for (i, d) in self.coeffs(x).into_iter().enumerate() {
            if d == 0 {
                continue;
            }
            terms.push(match (i, d) {
                (0, d) => d.to_string(),
                (1, 1) => "t".into(),
                (1, d) => format!("{d}t"),
                (i, 1) => format!("t^{i}"),
                (i, d) => format!("{d}t^{i}"),
            });
        }
        terms.join("+")
    }
}

impl Field {
    /// Inverse of [`Field::format`]: a sum of terms `c`, `ct`, `t^i`, `ct^i`.
    /// Integer coefficients are reduced mod `p` and may be negative.
    pub fn parse(&self, s: &str) -> Result<FieldElement, FieldError> {
        let bad = || FieldError::Parse(s.to_string());
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(bad());
        }
        let mut acc = self.zero();
        for term in compact
            .replace('-', "+-")
            .split('+')
            .filter(|t| !t.is_empty())
        {
            let (coef, power) = match term.split_once('t') {
                None => (term, 0u32),
                Some((c, rest)) => {
                    let power = match rest.strip_prefix('^') {
                        Some(e) => e.parse().map_err(|_| bad())?,
                        None if rest.is_empty() => 1,
                        None => return Err(bad()),
                    };
                    (c, power)
                }
            };
            let c: i64 = match coef {
                "" => 1,
                "-" => -1,
                c => c.parse().map_err(|_| bad())?,
            };
            let x = self.mul(self.from_int(c), self.pow(self.gen(), power as u64));
            acc = self.add(acc, x);
        }
        Ok(acc)
    }
}

/// Particular solution of an augmented system over `F_p` (free variables set to 0).
fn solve_mod_p(mut aug: Vec<Vec<u64>>, p: u64) -> Option<Vec<u64>> {
    let rows = aug.len();
    let cols = aug.first().map_or(0, |r| r.len() - 1);
    let inv = |a: u64| {
        let mut r = 1u64;
        let (mut b, mut e) = (a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p;
            }
            b = b * b % p;
            e >>= 1;
        }
        r
    };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| aug[i][c] != 0) else {
            continue;
        };
        aug.swap(r, piv);
        let s = inv(aug[r][c]);
        for x in aug[r].iter_mut() {
            *x = *x * s % p;
        }
        for i in 0..rows {
            if i != r && aug[i][c] != 0 {
                let f = aug[i][c];
                for j in 0..=cols {
                    aug[i][j] = (aug[i][j] + p * p - f * aug[r][j] % p) % p;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    if aug[r..].iter().any(|row| row[cols] != 0) {
        return None;
    }
    let mut x = vec![0u64; cols];
    for (i, &c) in pivots.iter().enumerate() {
        x[c] = aug[i][cols];
    }
    Some(x)
}

/// Dense polynomials over `F_p`, constant coefficient first. Only what the
/// modulus search needs.
pub(crate) mod poly {
    pub fn trim(mut a: Vec<u32>) -> Vec<u32> {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u32, p: u32) -> u32 {
        let (mut r, mut b, mut e) = (1u64, a as u64 % p as u64, p as u64 - 2);
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % p as u64;
            }
            b = b * b % p as u64;
            e >>= 1;
        }
        r as u32
    }

    pub fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        let m = trim(m.to_vec());
        let mut a = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv_mod(m[dm], p);
        while a.len() > dm {
            let da = a.len() - 1;
            let f = a[da] * lead_inv % p;
            for i in 0..=dm {
                let t = a[da - dm + i] + p - f * m[i] % p;
                a[da - dm + i] = t % p;
            }
            a = trim(a);
        }
        a
    }

    pub fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u32; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(&out, m, p)
    }

    pub fn pow_mod(base: &[u32], mut e: u64, m: &[u32], p: u32) -> Vec<u32> {
        let mut result = vec![1u32];
        let mut b = rem(base, m, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mul_mod(&result, &b, m, p);
            }
            b = mul_mod(&b, &b, m, p);
            e >>= 1;
        }
        trim(result)
    }

    pub fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    fn sub(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
        let n = a.len().max(b.len());
        let out = (0..n)
            .map(|i| {
                let x = a.get(i).copied().unwrap_or(0);
                let y = b.get(i).copied().unwrap_or(0);
                (x + p - y) % p
            })
            .collect();
        trim(out)
    }

    /// `X^{p^j} mod f`, by repeated `p`-th powering.
    fn frob_power(f: &[u32], j: u32, p: u32) -> Vec<u32> {
        let mut x = rem(&[0, 1], f, p);
        for _ in 0..j {
            x = pow_mod(&x, p as u64, f, p);
        }
        x
    }

    /// Rabin's test: `f | X^{p^k} - X` and `gcd(f, X^{p^{k/r}} - X) = 1`
    /// for every prime `r | k`.
    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let f = trim(f.to_vec());
        let k = f.len() as u32 - 1;
        if k == 0 {
            return false;
        }
        if k == 1 {
            return true;
        }
        let x = [0u32, 1];
        if !sub(&frob_power(&f, k, p), &x, p).is_empty() {
            return false;
        }
        for r in (2..=k).filter(|&r| k % r == 0 && super::is_prime(r)) {
            let h = sub(&frob_power(&f, k / r, p), &x, p);
            if gcd(&f, &h, p).len() != 1 {
                return false;
            }
        }
        true
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_bad_parameters() {
        assert_eq!(
            make_field(2, 1).unwrap_err(),
            FieldError::BadCharacteristic(2)
        );
        assert_eq!(
            make_field(9, 1).unwrap_err(),
            FieldError::BadCharacteristic(9)
        );
        assert_eq!(make_field(3, 0).unwrap_err(), FieldError::ZeroDegree);
        assert!(matches!(
            make_field(3, 11),
            Err(FieldError::TooLarge { .. })
        ));
    }

    #[test]
    fn prime_field_modulus_is_x() {
        let f = make_field(3, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        assert_eq!(f.order(), 3);
    }

    #[test]
    fn deterministic_moduli() {
        assert_eq!(make_field(3, 2).unwrap().modulus(), &[1, 0, 1]);
        assert_eq!(make_field(3, 3).unwrap().modulus(), &[1, 2, 0, 1]);
        assert_eq!(make_field(5, 2).unwrap().modulus(), &[2, 0, 1]);
    }

    #[test]
    fn division_by_zero_is_distinct() {
        let f = make_field(5, 2).unwrap();
        assert_eq!(f.div(f.one(), f.zero()), Err(FieldError::DivisionByZero));
    }

    #[test]
    fn field_axioms_exhaustive_f9() {
        let f = make_field(3, 2).unwrap();
        for a in f.elements() {
            assert_eq!(f.add(a, f.zero()), a);
            assert_eq!(f.add(a, f.neg(a)), f.zero());
            if !a.is_zero() {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
            }
            for b in f.elements() {
                assert_eq!(f.add(a, b), f.add(b, a));
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                }
            }
        }
    }

    #[test]
    fn large_field_uses_digitwise_addition() {
        let f = make_field(3, 7).unwrap();
        assert!(f.add.is_empty());
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let (a, b) = (f.random(&mut rng), f.random(&mut rng));
            let ca = f.coeffs(a);
            let cb = f.coeffs(b);
            let sum: Vec<u32> = ca.iter().zip(&cb).map(|(x, y)| (x + y) % 3).collect();
            assert_eq!(f.coeffs(f.add(a, b)), sum);
        }
    }

    #[test]
    fn encoding_round_trip() {
        let f = make_field(5, 3).unwrap();
        let mut buf = Vec::new();
        for x in f.elements() {
            buf.clear();
            f.encode(x, &mut buf);
            assert_eq!(buf.len(), 3);
            assert_eq!(f.decode(&buf).unwrap(), x);
        }
        assert_eq!(f.decode(&[5, 0, 0]), Err(FieldError::BadEncoding));
        assert_eq!(f.decode(&[1, 0]), Err(FieldError::BadEncoding));
    }

    #[test]
    fn frobenius_identity_on_prime_field() {
        let f = make_field(3, 1).unwrap();
        for x in f.elements() {
            assert_eq!(f.frobenius(x), x);
        }
    }

    #[test]
    fn artin_schreier_over_f3() {
        let f = make_field(3, 1).unwrap();
        let mut roots = f.artin_schreier_roots(f.zero());
        roots.sort();
        assert_eq!(roots, vec![f.from_int(0), f.from_int(1), f.from_int(2)]);
        assert!(f.artin_schreier_roots(f.one()).is_empty());
    }

    #[test]
    fn parse_inverts_format() {
        for (p, k) in [(3, 1), (3, 3), (5, 2)] {
            let f = make_field(p, k).unwrap();
            for x in f.elements() {
                assert_eq!(f.parse(&f.format(x)).unwrap(), x);
            }
        }
        let f = make_field(5, 1).unwrap();
        assert_eq!(f.parse("-1").unwrap(), f.from_int(4));
        assert!(f.parse("2x").is_err());
    }
}
