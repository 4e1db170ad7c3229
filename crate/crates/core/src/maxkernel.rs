//! Maximum-kernel criteria.
//!
//! For f = a_0 x + ... + a_{k-1} x^{σ^{k-1}} - x^{σ^k} with σ = q^s, let A be
//! the k x k companion matrix with ones on the subdiagonal and last column
//! (a_0, ..., a_{k-1}), and τ(v) = A v^σ the associated semilinear map on
//! F_{q^n}^k. Then dim ker f = k iff B = A A^σ ... A^{σ^{n-1}} = I_k, iff B
//! fixes e_0, iff τ^n(e_0) = e_0. All of these are exposed separately, along
//! with the plain linear-algebra oracle, so they can be checked against each
//! other.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::linalg::Mat;
use crate::linpoly::{check_coprime, LinearizedPoly};

/// Default iteration cap for matrix order computations.
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    /// B = I_k
    Matrix,
    /// B e_0 = e_0
    E0,
    /// Q_{0,n} = 1 and Q_{j,n} = 0 for j >= 1
    Recursion,
    /// dim ker f = k by row reduction
    Oracle,
}

impl Method {
    pub const ALL: [Method; 4] = [Method::Matrix, Method::E0, Method::Recursion, Method::Oracle];
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Matrix => "matrix",
            Method::E0 => "e0",
            Method::Recursion => "recursion",
            Method::Oracle => "oracle",
        })
    }
}

impl FromStr for Method {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "matrix" => Ok(Method::Matrix),
            "e0" => Ok(Method::E0),
            "recursion" => Ok(Method::Recursion),
            "oracle" => Ok(Method::Oracle),
            other => Err(Error::Precondition(format!("unknown method {other:?}"))),
        }
    }
}

/// The companion matrix of a monic q^s-polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompanionMatrix {
    ctx: Arc<FieldCtx>,
    s: u32,
    lower: Vec<Elem>,
    matrix: Mat,
}

impl CompanionMatrix {
    /// Companion matrix of f after rescaling to leading coefficient -1. A is
    /// singular exactly when a_0 = 0.
    pub fn from_poly(f: &LinearizedPoly) -> Result<Self> {
        let monic = f.monic()?;
        let coeffs = monic.sigma_coeffs();
        let lower = &coeffs[..coeffs.len() - 1];
        Self::from_lower(f.ctx(), monic.s() as i64, lower)
    }

    /// Strips leading zero coefficients first (same kernel), so the result is
    /// invertible. Returns the number of stripped σ-powers alongside.
    pub fn from_poly_stripped(f: &LinearizedPoly) -> Result<(Self, usize)> {
        let (g, j) = f.strip_low_zeros()?;
        Ok((Self::from_poly(&g)?, j))
    }

    /// Builds A directly from (a_0, ..., a_{k-1}).
    pub fn from_lower(ctx: &Arc<FieldCtx>, s: i64, lower: &[Elem]) -> Result<Self> {
        let s = check_coprime(s, ctx.n())?;
        let k = lower.len();
        let mut matrix = Mat::zeros(k, k);
        for i in 1..k {
            matrix.set(i, i - 1, Elem::ONE);
        }
        for (i, &a) in lower.iter().enumerate() {
            matrix.set(i, k - 1, a);
        }
        Ok(CompanionMatrix { ctx: Arc::clone(ctx), s, lower: lower.to_vec(), matrix })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    pub fn k(&self) -> usize {
        self.lower.len()
    }

    pub fn matrix(&self) -> &Mat {
        &self.matrix
    }

    /// (a_0, ..., a_{k-1}).
    pub fn lower(&self) -> &[Elem] {
        &self.lower
    }

    pub fn is_invertible(&self) -> bool {
        self.lower.first().is_none_or(|a| !a.is_zero())
    }

    /// B = A A^σ ... A^{σ^{n-1}} for σ = q^s.
    pub fn semilinear_product(&self, s: i64) -> Result<Mat> {
        let s = check_coprime(s, self.ctx.n())? as i64;
        let mut b = Mat::identity(self.k());
        for i in 0..self.ctx.n() as i64 {
            b = b.mul(&self.ctx, &self.matrix.frobenius(&self.ctx, s * i));
        }
        Ok(b)
    }

    /// B for the matrix's own s.
    pub fn product(&self) -> Mat {
        self.semilinear_product(self.s as i64).expect("s was validated at construction")
    }

    /// τ(v) = A v^σ.
    pub fn tau(&self, v: &[Elem]) -> Vec<Elem> {
        let lifted: Vec<Elem> = v.iter().map(|&z| self.ctx.frobenius_q(z, self.s as i64)).collect();
        self.matrix.mul_vec(&self.ctx, &lifted)
    }

    /// B e_0 evaluated right to left as A (A^σ (... (A^{σ^{n-1}} e_0))).
    pub fn product_times_e0(&self) -> Vec<Elem> {
        let k = self.k();
        let mut v = vec![Elem::ZERO; k];
        if k == 0 {
            return v;
        }
        v[0] = Elem::ONE;
        for i in (0..self.ctx.n() as i64).rev() {
            v = self.matrix.frobenius(&self.ctx, self.s as i64 * i).mul_vec(&self.ctx, &v);
        }
        v
    }

    /// F_q-basis of Fix(τ) = {v : A v^σ = v}, which requires B = I_k. The
    /// returned k vectors are also an F_{q^n}-basis of F_{q^n}^k.
    pub fn fixed_space(&self) -> Result<Vec<Vec<Elem>>> {
        if !self.product().is_identity() {
            return Err(Error::NotOrderN);
        }
        self.fixed_points_basis()
    }

    /// F_q-basis of the fixed points of τ for any A (no order requirement).
    /// Solves the kn x kn F_q-system A v^σ - v = 0 in gamma coordinates.
    pub fn fixed_points_basis(&self) -> Result<Vec<Vec<Elem>>> {
        let ctx = &*self.ctx;
        let n = ctx.n() as usize;
        let k = self.k();
        let dim = n * k;
        let mut m = Mat::zeros(dim, dim);
        let mut coords = vec![Elem::ZERO; n];
        for slot in 0..k {
            for (bi, &b) in ctx.basis().iter().enumerate() {
                let mut v = vec![Elem::ZERO; k];
                v[slot] = b;
                let image = self.tau(&v);
                let col = slot * n + bi;
                for (r, (&t, &x)) in image.iter().zip(&v).enumerate() {
                    ctx.fq_coordinates_into(ctx.sub(t, x), &mut coords);
                    for (i, &c) in coords.iter().enumerate() {
                        m.set(r * n + i, col, c);
                    }
                }
            }
        }
        Ok(m
            .nullspace(ctx)
            .into_iter()
            .map(|w| (0..k).map(|slot| ctx.from_fq_coordinates(&w[slot * n..(slot + 1) * n])).collect())
            .collect())
    }
}

/// Whether k vectors of F_{q^n}^k form an F_{q^n}-basis.
pub fn spans_full_space(ctx: &FieldCtx, vectors: &[Vec<Elem>]) -> bool {
    let k = vectors.len();
    if vectors.iter().any(|v| v.len() != k) {
        return false;
    }
    k == 0 || !Mat::from_columns(vectors).determinant(ctx).is_zero()
}

/// Whether vectors of F_{q^n}^k are linearly independent over F_q.
pub fn fq_independent(ctx: &FieldCtx, vectors: &[Vec<Elem>]) -> bool {
    if vectors.is_empty() {
        return true;
    }
    let cols: Vec<Vec<Elem>> = vectors
        .iter()
        .map(|v| v.iter().flat_map(|&z| ctx.fq_coordinates(z)).collect())
        .collect();
    Mat::from_columns(&cols).rank(ctx) == vectors.len()
}

/// State (Q_{0,i}, ..., Q_{k-1,i}) = τ^i(e_0) of the coefficient recursion
/// Q_{0,i+1} = a_0 Q_{k-1,i}^σ, Q_{j,i+1} = Q_{j-1,i}^σ + a_j Q_{k-1,i}^σ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QState {
    ctx: Arc<FieldCtx>,
    s: u32,
    lower: Vec<Elem>,
    step: usize,
    values: Vec<Elem>,
}

impl QState {
    /// Starts at i = 0 with e_0; `f` is rescaled to leading coefficient -1.
    pub fn new(f: &LinearizedPoly) -> Result<Self> {
        let monic = f.monic()?;
        let coeffs = monic.sigma_coeffs();
        let lower = coeffs[..coeffs.len() - 1].to_vec();
        let mut values = vec![Elem::ZERO; lower.len()];
        if let Some(v) = values.first_mut() {
            *v = Elem::ONE;
        }
        Ok(QState { ctx: Arc::clone(f.ctx()), s: monic.s(), lower, step: 0, values })
    }

    pub fn step_index(&self) -> usize {
        self.step
    }

    pub fn values(&self) -> &[Elem] {
        &self.values
    }

    pub fn advance(&mut self) {
        let k = self.lower.len();
        if k == 0 {
            self.step += 1;
            return;
        }
        let ctx = &*self.ctx;
        let s = self.s as i64;
        let last = ctx.frobenius_q(self.values[k - 1], s);
        let mut next = Vec::with_capacity(k);
        next.push(ctx.mul(self.lower[0], last));
        for j in 1..k {
            let prev = ctx.frobenius_q(self.values[j - 1], s);
            next.push(ctx.add(prev, ctx.mul(self.lower[j], last)));
        }
        self.values = next;
        self.step += 1;
    }

    pub fn advance_to(&mut self, i: usize) {
        while self.step < i {
            self.advance();
        }
    }
}

/// (Q_{0,n}, ..., Q_{k-1,n}) = τ^n(e_0), the first column of B.
pub fn q_sequence(f: &LinearizedPoly) -> Result<Vec<Elem>> {
    let mut state = QState::new(f)?;
    state.advance_to(f.ctx().n() as usize);
    Ok(state.values)
}

fn is_e0(v: &[Elem]) -> bool {
    v.iter().enumerate().all(|(i, &z)| z == if i == 0 { Elem::ONE } else { Elem::ZERO })
}

/// Decides dim ker f = σ-degree(f) by the chosen route. The three matrix routes
/// run on the monic form of f; with a_0 = 0 the matrix B is singular and each of
/// them returns false, in agreement with the kernel bound for the stripped
/// polynomial.
pub fn is_maximum_kernel(f: &LinearizedPoly, method: Method) -> Result<bool> {
    let k = f.sigma_degree().ok_or(Error::ZeroPolynomial)?;
    Ok(match method {
        Method::Oracle => f.kernel_dim() == k,
        Method::Matrix => CompanionMatrix::from_poly(f)?.product().is_identity(),
        Method::E0 => is_e0(&CompanionMatrix::from_poly(f)?.product_times_e0()),
        Method::Recursion => is_e0(&q_sequence(f)?),
    })
}

/// Necessary condition N(a_0) = (-1)^{n(k+1)} for the monic form of f.
pub fn norm_necessary(f: &LinearizedPoly) -> Result<bool> {
    let monic = f.monic()?;
    let ctx = monic.ctx();
    let k = monic.sigma_degree().expect("monic polynomial is nonzero") as u64;
    let sign = ctx.from_int(if (ctx.n() as u64 * (k + 1)).is_multiple_of(2) { 1 } else { -1 });
    Ok(ctx.norm(monic.sigma_coeff(0)) == sign)
}

/// Multiplicative order of an invertible matrix, by iteration up to `cap`.
pub fn matrix_order(ctx: &FieldCtx, b: &Mat, cap: u64) -> Result<u64> {
    if b.rows() > 0 && b.determinant(ctx).is_zero() {
        return Err(Error::Precondition("matrix is singular".into()));
    }
    let mut power = b.clone();
    let mut m = 1u64;
    while !power.is_identity() {
        if m >= cap {
            return Err(Error::OrderCapExceeded { cap });
        }
        power = power.mul(ctx, b);
        m += 1;
    }
    Ok(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SplittingDegree {
    /// Multiplicative order of B = A A^σ ... A^{σ^{n-1}}.
    pub m: u64,
    /// [splitting field : F_{q^n}] = s m. For s = 1 this is m.
    pub extension_degree: u64,
    /// Set when s != 1: the degree formula is only established for q-polynomials.
    pub extension_beyond_q_polynomials: bool,
}

/// m = ord(A A^σ ... A^{σ^{n-1}}). Requires a_0 != 0.
///
/// Over F_{q^{sn}} the polynomial is a q^s-polynomial in the classical sense
/// with the same product B, so it splits over F_{q^{snm}}.
pub fn splitting_field_degree(f: &LinearizedPoly, cap: u64) -> Result<SplittingDegree> {
    let a = CompanionMatrix::from_poly(f)?;
    if !a.is_invertible() {
        return Err(Error::ZeroConstantTerm);
    }
    let m = matrix_order(a.ctx(), &a.product(), cap)?;
    Ok(SplittingDegree { m, extension_degree: a.s() as u64 * m, extension_beyond_q_polynomials: a.s() != 1 })
}

/// Number of roots of f = sum a_j x^{q^{sj}} (exponents taken literally, not
/// reduced modulo x^{q^n} - x) in an extension field `big` of f's field.
pub fn count_roots_in_extension(f: &LinearizedPoly, big: &FieldCtx) -> Result<u64> {
    let emb = f.ctx().embedding_into(big)?;
    let s = f.s() as i64;
    let terms: Vec<(i64, Elem)> = f
        .sigma_coeffs()
        .iter()
        .enumerate()
        .filter(|(_, a)| !a.is_zero())
        .map(|(j, &a)| (s * j as i64, emb.apply(a)))
        .collect();
    Ok(big
        .elements()
        .filter(|&z| {
            terms
                .iter()
                .fold(Elem::ZERO, |acc, &(e, a)| big.add(acc, big.mul(a, big.frobenius_q(z, e))))
                .is_zero()
        })
        .count() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TransferOutcome {
    pub f_max_kernel: bool,
    pub g_max_kernel: bool,
    pub agree: bool,
}

/// Over `ctx` = F_{q^{nm}}, compares the maximum-kernel status of the q^s- and
/// q^t-polynomials sharing the monic lower coefficients `lower` ⊂ F_{q^m}.
pub fn transfer_check(ctx: &Arc<FieldCtx>, m: u32, lower: &[Elem], s: i64, t: i64) -> Result<TransferOutcome> {
    let total = ctx.n();
    if m == 0 || !total.is_multiple_of(m) {
        return Err(Error::NotADivisor { m, n: total });
    }
    if (s - t).rem_euclid(m as i64) != 0 {
        return Err(Error::Precondition(format!("{s} is not congruent to {t} modulo {m}")));
    }
    if let Some(a) = lower.iter().find(|&&a| !ctx.in_subfield(a, m)) {
        return Err(Error::Precondition(format!("coefficient {a} is not in the subfield of degree {m}")));
    }
    let f = LinearizedPoly::monic_from_lower(ctx, s, lower)?;
    let g = LinearizedPoly::monic_from_lower(ctx, t, lower)?;
    let f_max = is_maximum_kernel(&f, Method::Oracle)?;
    let g_max = is_maximum_kernel(&g, Method::Oracle)?;
    Ok(TransferOutcome { f_max_kernel: f_max, g_max_kernel: g_max, agree: f_max == g_max })
}

/// JSON result object for a maximum-kernel query.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub method: Method,
    pub max_kernel: bool,
    #[serde(rename = "B_is_identity")]
    pub b_is_identity: bool,
    pub kernel_dim: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting_degree: Option<u64>,
}

pub fn check_report(f: &LinearizedPoly, method: Method, order_cap: Option<u64>) -> Result<CheckReport> {
    let max_kernel = is_maximum_kernel(f, method)?;
    let b_is_identity = CompanionMatrix::from_poly(f)?.product().is_identity();
    let splitting_degree = match order_cap {
        Some(cap) => Some(splitting_field_degree(f, cap)?.m),
        None => None,
    };
    Ok(CheckReport { method, max_kernel, b_is_identity, kernel_dim: f.kernel_dim(), splitting_degree })
}
