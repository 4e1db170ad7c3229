//! The ambient field F_{q^n}, q = p^e, realised as F_p[x]/(modulus).
//!
//! Elements are stored by their integer encoding: the base-p digits of the
//! value, little-endian, are the coefficients of the residue polynomial.
//! Arithmetic goes through discrete-log tables (Zech logarithms for odd p),
//! so every operation including q-power Frobenius is a table lookup.
//!
//! F_q is the fixed field of z -> z^q inside F_{q^n}. F_q-coordinates are taken
//! with respect to the power basis 1, gamma, ..., gamma^{n-1} and recovered
//! through the trace-dual basis.

mod embed;
pub(crate) mod prime_poly;

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::Mat;

pub use embed::Embedding;

/// Largest supported field order p^{e n}.
pub const MAX_FIELD_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

/// An element of F_{q^n} by its integer encoding.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(transparent)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn value(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Parsed form of the `p^e^n[/modulus]` field spec.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldSpec {
    pub p: u32,
    pub e: u32,
    pub n: u32,
    pub modulus: Option<u64>,
}

impl FromStr for FieldSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::MalformedFieldSpec(s.to_string());
        let (head, modulus) = match s.trim().split_once('/') {
            Some((h, m)) => (h, Some(m.trim().parse::<u64>().map_err(|_| bad())?)),
            None => (s.trim(), None),
        };
        let parts: Vec<&str> = head.split('^').collect();
        if parts.len() != 3 {
            return Err(bad());
        }
        let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
        Ok(FieldSpec { p: num(parts[0])?, e: num(parts[1])?, n: num(parts[2])?, modulus })
    }
}

impl FieldSpec {
    pub fn build(&self) -> Result<FieldCtx> {
        let modulus = self.modulus.map(|code| prime_poly::decode(code, self.p.max(2)));
        FieldCtx::new(self.p, self.e, self.n, modulus.as_deref())
    }
}

/// F_{q^n} together with its lookup tables and cached F_q structure.
#[derive(Clone)]
pub struct FieldCtx {
    p: u32,
    e: u32,
    n: u32,
    q: u32,
    order: u32,
    modulus: Vec<u32>,
    /// exp[i] = g^i for i in 0..2N, N = order - 1
    exp: Vec<u32>,
    log: Vec<u32>,
    /// zech[i] = log(1 + g^i), NO_LOG when 1 + g^i = 0; empty for p = 2
    zech: Vec<u32>,
    /// q^j mod N for j in 0..n
    q_pows: Vec<u64>,
    gamma: Elem,
    basis: Vec<Elem>,
    dual_basis: Vec<Elem>,
}

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FieldCtx({})", self.spec_string())
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.e == other.e && self.n == other.n && self.modulus == other.modulus
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    /// Builds F_{q^n} with q = p^e. Without an explicit modulus the first monic
    /// irreducible of degree e n in integer-encoding order is used.
    pub fn new(p: u32, e: u32, n: u32, modulus: Option<&[u32]>) -> Result<Self> {
        if !prime_poly::is_prime(p as u64) {
            return Err(Error::NotPrime(p as u64));
        }
        if e == 0 || n == 0 {
            return Err(Error::InvalidDegree { e, n });
        }
        let degree = e.checked_mul(n).ok_or(Error::FieldTooLarge { p, degree: u32::MAX })?;
        let order = (p as u64)
            .checked_pow(degree)
            .filter(|&o| o <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge { p, degree })?;
        let modulus = match modulus {
            Some(m) => {
                let mut m = m.to_vec();
                while m.last() == Some(&0) {
                    m.pop();
                }
                if m.iter().any(|&c| c >= p) {
                    return Err(Error::MalformedFieldSpec(format!("modulus coefficient out of range for p = {p}")));
                }
                let got = m.len().saturating_sub(1) as u32;
                if m.is_empty() || got != degree {
                    return Err(Error::ModulusDegree { expected: degree, got });
                }
                if m[degree as usize] != 1 {
                    return Err(Error::ModulusNotMonic);
                }
                if !prime_poly::is_irreducible(&m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m
            }
            None => prime_poly::first_irreducible(p, degree),
        };
        let order = order as u32;
        let (exp, log) = build_log_tables(p, &modulus, order)?;
        let group = (order - 1) as u64;
        let zech = if p == 2 {
            Vec::new()
        } else {
            (0..group as usize)
                .map(|i| {
                    let z = exp[i];
                    // adding 1 only touches the constant digit
                    let one_plus = if z % p == p - 1 { z - (p - 1) } else { z + 1 };
                    if one_plus == 0 {
                        NO_LOG
                    } else {
                        log[one_plus as usize]
                    }
                })
                .collect()
        };
        let q = p.pow(e);
        let mut q_pows = Vec::with_capacity(n as usize);
        let mut acc = 1u64 % group.max(1);
        for _ in 0..n {
            q_pows.push(acc);
            acc = acc * q as u64 % group.max(1);
        }
        let mut ctx = FieldCtx {
            p,
            e,
            n,
            q,
            order,
            modulus,
            exp,
            log,
            zech,
            q_pows,
            gamma: Elem::ZERO,
            basis: Vec::new(),
            dual_basis: Vec::new(),
        };
        ctx.gamma = ctx.find_gamma()?;
        ctx.basis = (0..n as u64).map(|i| ctx.pow(ctx.gamma, i)).collect();
        ctx.dual_basis = ctx.compute_dual_basis()?;
        Ok(ctx)
    }

    pub fn from_spec(spec: &str) -> Result<Self> {
        spec.parse::<FieldSpec>()?.build()
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn e(&self) -> u32 {
        self.e
    }

    /// Extension degree over F_q.
    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    /// Number of elements, q^n.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Defining polynomial over F_p, ascending coefficients.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn modulus_code(&self) -> u64 {
        prime_poly::encode(&self.modulus, self.p)
    }

    /// `p^e^n/modulus`, which parses back to this field.
    pub fn spec_string(&self) -> String {
        format!("{}^{}^{}/{}", self.p, self.e, self.n, self.modulus_code())
    }

    pub fn gamma(&self) -> Elem {
        self.gamma
    }

    /// The power basis 1, gamma, ..., gamma^{n-1} of F_{q^n} over F_q.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    /// A generator of the multiplicative group (the base of the log tables).
    pub fn primitive(&self) -> Elem {
        Elem(self.exp[1 % self.exp.len()])
    }

    pub fn elem(&self, value: u64) -> Result<Elem> {
        if value < self.order as u64 {
            Ok(Elem(value as u32))
        } else {
            Err(Error::ElementOutOfRange { value, order: self.order as u64 })
        }
    }

    /// The constant c mod p, as an element of the prime field.
    pub fn from_int(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.p as i64) as u32)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (0..self.order).map(Elem)
    }

    pub fn nonzero_elements(&self) -> impl Iterator<Item = Elem> + '_ {
        (1..self.order).map(Elem)
    }

    /// Base-p digits of `z`, i.e. its residue polynomial coefficients.
    pub fn coeffs(&self, z: Elem) -> Vec<u32> {
        let mut v = z.0;
        (0..self.e * self.n)
            .map(|_| {
                let d = v % self.p;
                v /= self.p;
                d
            })
            .collect()
    }

    pub fn from_coeffs(&self, coeffs: &[u32]) -> Result<Elem> {
        if coeffs.len() != (self.e * self.n) as usize || coeffs.iter().any(|&c| c >= self.p) {
            return Err(Error::MalformedTuple(format!("expected {} digits below {}", self.e * self.n, self.p)));
        }
        Ok(Elem(coeffs.iter().rev().fold(0u32, |acc, &c| acc * self.p + c)))
    }

    #[inline]
    fn group_order(&self) -> u64 {
        (self.order - 1) as u64
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let n = self.group_order() as u32;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let d = if lb >= la { lb - la } else { lb + n - la };
        match self.zech[d as usize] {
            NO_LOG => Elem::ZERO,
            z => Elem(self.exp[(la + z) as usize]),
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        let half = (self.group_order() / 2) as u32;
        Elem(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    /// Multiplicative inverse; panics on zero.
    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        assert!(!a.is_zero(), "inverse of zero");
        let n = self.group_order() as u32;
        let l = self.log[a.0 as usize];
        Elem(self.exp[((n - l) % n.max(1)) as usize])
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, exp: u64) -> Elem {
        if exp == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let n = self.group_order();
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (exp % n)) % n) as usize])
    }

    /// z^{q^j}; j is taken modulo n, so negative j gives inverse Frobenius powers.
    #[inline]
    pub fn frobenius_q(&self, z: Elem, j: i64) -> Elem {
        if z.0 == 0 {
            return z;
        }
        let j = j.rem_euclid(self.n as i64) as usize;
        let n = self.group_order();
        let l = self.log[z.0 as usize] as u64;
        Elem(self.exp[((l * self.q_pows[j]) % n) as usize])
    }

    fn check_divisor(&self, m: u32) -> Result<()> {
        if m == 0 || !self.n.is_multiple_of(m) {
            return Err(Error::NotADivisor { m, n: self.n });
        }
        Ok(())
    }

    /// Relative norm N_{q^n/q^m}(z) = z^{1 + q^m + ... + q^{n-m}}.
    pub fn norm_to(&self, z: Elem, m: u32) -> Result<Elem> {
        self.check_divisor(m)?;
        Ok((0..self.n / m).fold(Elem::ONE, |acc, i| self.mul(acc, self.frobenius_q(z, (m * i) as i64))))
    }

    /// Relative trace Tr_{q^n/q^m}(z) = sum of z^{q^{m i}}, i < n/m.
    pub fn trace_to(&self, z: Elem, m: u32) -> Result<Elem> {
        self.check_divisor(m)?;
        Ok((0..self.n / m).fold(Elem::ZERO, |acc, i| self.add(acc, self.frobenius_q(z, (m * i) as i64))))
    }

    /// N_{q^n/q}.
    pub fn norm(&self, z: Elem) -> Elem {
        self.norm_to(z, 1).expect("1 divides n")
    }

    /// Tr_{q^n/q}.
    pub fn trace(&self, z: Elem) -> Elem {
        self.trace_to(z, 1).expect("1 divides n")
    }

    /// Whether z lies in F_{q^m}, the fixed field of z -> z^{q^m}.
    pub fn in_subfield(&self, z: Elem, m: u32) -> bool {
        self.frobenius_q(z, m as i64) == z
    }

    /// Elements of F_{q^m} (m | n), in encoding order.
    pub fn subfield_elements(&self, m: u32) -> Result<Vec<Elem>> {
        self.check_divisor(m)?;
        let sub_group = (self.q as u64).pow(m) - 1;
        let step = self.group_order() / sub_group;
        let mut out: Vec<Elem> = std::iter::once(Elem::ZERO)
            .chain((0..sub_group).map(|i| Elem(self.exp[(i * step) as usize])))
            .collect();
        out.sort();
        Ok(out)
    }

    /// Multiplicative order of a nonzero element.
    pub fn element_order(&self, z: Elem) -> u64 {
        assert!(!z.is_zero(), "order of zero");
        let n = self.group_order();
        let l = self.log[z.0 as usize] as u64;
        n / gcd(n, l)
    }

    /// Coordinates (c_0, ..., c_{n-1}) in F_q with z = sum c_i gamma^i.
    pub fn fq_coordinates(&self, z: Elem) -> Vec<Elem> {
        let mut out = vec![Elem::ZERO; self.n as usize];
        self.fq_coordinates_into(z, &mut out);
        out
    }

    /// Allocation-free variant of [`FieldCtx::fq_coordinates`].
    pub fn fq_coordinates_into(&self, z: Elem, out: &mut [Elem]) {
        for (slot, &d) in out.iter_mut().zip(&self.dual_basis) {
            *slot = self.trace(self.mul(z, d));
        }
    }

    /// Inverse of [`FieldCtx::fq_coordinates`].
    pub fn from_fq_coordinates(&self, coords: &[Elem]) -> Elem {
        coords
            .iter()
            .zip(&self.basis)
            .fold(Elem::ZERO, |acc, (&c, &b)| self.add(acc, self.mul(c, b)))
    }

    pub fn embedding_into(&self, big: &FieldCtx) -> Result<Embedding> {
        Embedding::new(self, big)
    }

    fn find_gamma(&self) -> Result<Elem> {
        let proper: Vec<u32> = (1..self.n).filter(|d| self.n.is_multiple_of(*d)).collect();
        self.elements()
            .find(|&z| proper.iter().all(|&d| self.frobenius_q(z, d as i64) != z))
            .ok_or_else(|| Error::Internal("no element of full degree".into()))
    }

    fn compute_dual_basis(&self) -> Result<Vec<Elem>> {
        let n = self.n as usize;
        let mut gram = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                gram.set(i, j, self.trace(self.mul(self.basis[i], self.basis[j])));
            }
        }
        let inv = gram
            .inverse(self)
            .ok_or_else(|| Error::Internal("trace form is degenerate on the power basis".into()))?;
        Ok((0..n)
            .map(|i| {
                (0..n).fold(Elem::ZERO, |acc, l| self.add(acc, self.mul(inv.get(i, l), self.basis[l])))
            })
            .collect())
    }
}

pub(crate) fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Multiplication by x on digit vectors, reducing by the (monic) modulus.
fn mul_by_x(p: u32, modulus: &[u32]) -> impl Fn(&mut [u32]) + '_ {
    let d = modulus.len() - 1;
    move |v: &mut [u32]| {
        let top = v[d - 1] as u64;
        for i in (1..d).rev() {
            v[i] = v[i - 1];
        }
        v[0] = 0;
        if top != 0 {
            for i in 0..d {
                let sub = top * modulus[i] as u64 % p as u64;
                v[i] = ((v[i] as u64 + p as u64 - sub) % p as u64) as u32;
            }
        }
    }
}

fn digits_to_code(v: &[u32], p: u32) -> u32 {
    v.iter().rev().fold(0u32, |acc, &c| acc * p + c)
}

fn code_to_digits(mut code: u32, p: u32, d: usize) -> Vec<u32> {
    (0..d)
        .map(|_| {
            let c = code % p;
            code /= p;
            c
        })
        .collect()
}

/// Multiplies two digit vectors modulo the modulus.
fn slow_mul(a: &[u32], b: &[u32], p: u32, modulus: &[u32]) -> Vec<u32> {
    let d = modulus.len() - 1;
    let shift = mul_by_x(p, modulus);
    let mut acc = vec![0u64; d];
    let mut term = a.to_vec();
    for &c in b {
        if c != 0 {
            for i in 0..d {
                acc[i] = (acc[i] + c as u64 * term[i] as u64) % p as u64;
            }
        }
        shift(&mut term);
    }
    acc.into_iter().map(|c| c as u32).collect()
}

fn slow_pow(a: &[u32], mut exp: u64, p: u32, modulus: &[u32]) -> Vec<u32> {
    let d = modulus.len() - 1;
    let mut result = vec![0u32; d];
    result[0] = 1;
    let mut base = a.to_vec();
    while exp > 0 {
        if exp & 1 == 1 {
            result = slow_mul(&result, &base, p, modulus);
        }
        base = slow_mul(&base, &base, p, modulus);
        exp >>= 1;
    }
    result
}

fn build_log_tables(p: u32, modulus: &[u32], order: u32) -> Result<(Vec<u32>, Vec<u32>)> {
    let d = modulus.len() - 1;
    let group = (order - 1) as u64;
    let factors = prime_poly::prime_factors(group);
    let mut one = vec![0u32; d];
    one[0] = 1;
    let generator = (1..order)
        .map(|c| code_to_digits(c, p, d))
        .find(|g| {
            slow_pow(g, group, p, modulus) == one
                && factors.iter().all(|&r| slow_pow(g, group / r, p, modulus) != one)
        })
        .ok_or_else(|| Error::Internal("no primitive element found".into()))?;

    // Multiplication by the generator as a d x d digit matrix.
    let cols: Vec<Vec<u32>> = (0..d)
        .map(|j| {
            let mut xj = vec![0u32; d];
            xj[j] = 1;
            slow_mul(&generator, &xj, p, modulus)
        })
        .collect();
    let mut exp = Vec::with_capacity(2 * group as usize + 1);
    let mut log = vec![NO_LOG; order as usize];
    let mut cur = one.clone();
    let mut next = vec![0u32; d];
    for i in 0..group as u32 {
        let code = digits_to_code(&cur, p);
        exp.push(code);
        log[code as usize] = i;
        next.iter_mut().for_each(|x| *x = 0);
        for (j, col) in cols.iter().enumerate() {
            let c = cur[j];
            if c == 0 {
                continue;
            }
            for i in 0..d {
                next[i] = ((next[i] as u64 + c as u64 * col[i] as u64) % p as u64) as u32;
            }
        }
        std::mem::swap(&mut cur, &mut next);
    }
    let first = exp.clone();
    exp.extend_from_slice(&first);
    // exp[2N] is never read by add/mul but keeps the table non-empty for F_2
    exp.push(1);
    Ok((exp, log))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let ctx = FieldCtx::new(2, 1, 1, None).unwrap();
        assert_eq!(ctx.order(), 2);
        assert_eq!(ctx.q(), 2);
        assert_eq!(ctx.modulus().len(), 2);
        assert_eq!(ctx.mul(Elem::ONE, Elem::ONE), Elem::ONE);
        assert_eq!(ctx.add(Elem::ONE, Elem::ONE), Elem::ZERO);
        assert_eq!(ctx.inv(Elem::ONE), Elem::ONE);
    }

    #[test]
    fn default_modulus_for_f16_is_x4_x_1() {
        let ctx = FieldCtx::new(2, 1, 4, None).unwrap();
        assert_eq!(ctx.modulus_code(), 19);
        assert_eq!(ctx.spec_string(), "2^1^4/19");
    }

    #[test]
    fn user_modulus_f9() {
        let ctx = FieldCtx::new(3, 1, 2, Some(&[1, 0, 1])).unwrap();
        assert_eq!(ctx.order(), 9);
        // x^2 = -1
        let x = ctx.elem(3).unwrap();
        assert_eq!(ctx.mul(x, x), ctx.from_int(-1));
    }

    #[test]
    fn rejects_bad_inputs() {
        assert_eq!(FieldCtx::new(4, 1, 2, None).unwrap_err(), Error::NotPrime(4));
        assert!(matches!(FieldCtx::new(2, 0, 2, None), Err(Error::InvalidDegree { .. })));
        assert_eq!(FieldCtx::new(2, 1, 4, Some(&[1, 0, 1, 0, 1])).unwrap_err(), Error::ReducibleModulus(2));
        assert!(matches!(FieldCtx::new(2, 1, 4, Some(&[1, 1, 1])), Err(Error::ModulusDegree { expected: 4, got: 2 })));
        assert!(matches!(FieldCtx::new(2, 1, 40, None), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(FieldCtx::new(3, 1, 2, Some(&[1, 0, 2])), Err(Error::ModulusNotMonic)));
    }

    #[test]
    fn frobenius_in_f4() {
        let ctx = FieldCtx::new(2, 1, 2, None).unwrap();
        let w = ctx.elem(2).unwrap();
        assert_eq!(ctx.frobenius_q(w, 1), ctx.elem(3).unwrap());
        assert_eq!(ctx.frobenius_q(w, 0), w);
        assert_eq!(ctx.frobenius_q(w, 2), w);
    }

    #[test]
    fn norm_and_trace_in_f4() {
        let ctx = FieldCtx::new(2, 1, 2, None).unwrap();
        let w = ctx.elem(2).unwrap();
        assert_eq!(ctx.norm_to(w, 1).unwrap(), Elem::ONE);
        assert_eq!(ctx.trace_to(w, 1).unwrap(), Elem::ONE);
        assert_eq!(ctx.norm_to(Elem::ONE, 1).unwrap(), Elem::ONE);
        assert_eq!(ctx.trace_to(Elem::ZERO, 2).unwrap(), Elem::ZERO);
        assert_eq!(ctx.norm_to(w, 3).unwrap_err(), Error::NotADivisor { m: 3, n: 2 });
    }

    #[test]
    fn norm_of_generator_of_f9_is_minus_one() {
        let ctx = FieldCtx::new(3, 1, 2, Some(&[1, 0, 1])).unwrap();
        let g = ctx.nonzero_elements().find(|&z| ctx.element_order(z) == 8).unwrap();
        assert_eq!(ctx.norm(g), ctx.from_int(-1));
    }

    #[test]
    fn trace_of_prime_field_element_is_n_times() {
        let ctx = FieldCtx::new(3, 1, 4, None).unwrap();
        for z in ctx.subfield_elements(1).unwrap() {
            let expected = ctx.mul(ctx.from_int(4), z);
            assert_eq!(ctx.trace(z), expected);
        }
    }

    #[test]
    fn coordinates_of_gamma_and_zero() {
        let ctx = FieldCtx::new(2, 1, 5, None).unwrap();
        let c = ctx.fq_coordinates(ctx.gamma());
        assert_eq!(c, vec![Elem::ZERO, Elem::ONE, Elem::ZERO, Elem::ZERO, Elem::ZERO]);
        assert!(ctx.fq_coordinates(Elem::ZERO).iter().all(|z| z.is_zero()));
    }

    #[test]
    fn fq_is_nonprime_subfield_for_e_gt_1() {
        // q = 4, n = 2: F_q has four elements, all fixed by z -> z^4.
        let ctx = FieldCtx::new(2, 2, 2, None).unwrap();
        assert_eq!(ctx.q(), 4);
        let fq = ctx.subfield_elements(1).unwrap();
        assert_eq!(fq.len(), 4);
        assert!(fq.iter().all(|&z| ctx.pow(z, 4) == z));
        for z in ctx.elements() {
            let c = ctx.fq_coordinates(z);
            assert!(c.iter().all(|&x| ctx.in_subfield(x, 1)));
            assert_eq!(ctx.from_fq_coordinates(&c), z);
        }
    }

    #[test]
    fn spec_parsing() {
        let s: FieldSpec = "2^1^4/19".parse().unwrap();
        assert_eq!(s, FieldSpec { p: 2, e: 1, n: 4, modulus: Some(19) });
        let s: FieldSpec = "3^1^2".parse().unwrap();
        assert_eq!(s.modulus, None);
        assert!("2^4".parse::<FieldSpec>().is_err());
        assert!("2^1^4/x".parse::<FieldSpec>().is_err());
        let ctx = FieldCtx::from_spec("3^1^2/10").unwrap(); // 10 = x^2 + 1 in base 3
        assert_eq!(ctx.modulus(), &[1, 0, 1]);
        assert_eq!(FieldCtx::from_spec(&ctx.spec_string()).unwrap(), ctx);
    }
}
