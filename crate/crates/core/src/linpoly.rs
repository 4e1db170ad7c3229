//! q^s-polynomials over F_{q^n} as F_q-linear maps.
//!
//! Storage is always the q^1 grid reduced modulo x^{q^n} - x: entry i is the
//! coefficient of x^{q^i}. The q^s view (a_0, ..., a_k) with a_j the
//! coefficient of x^{q^{sj}} is computed on demand; since gcd(s, n) = 1 the
//! map j -> sj mod n permutes the grid, so both views carry the same data.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{gcd, Elem, FieldCtx};
use crate::linalg::Mat;

/// Normalises s into 1..=n.
pub(crate) fn normalize_s(s: i64, n: u32) -> u32 {
    ((s - 1).rem_euclid(n as i64) + 1) as u32
}

pub(crate) fn check_coprime(s: i64, n: u32) -> Result<u32> {
    let s_norm = normalize_s(s, n);
    if gcd(s_norm as u64, n as u64) != 1 {
        return Err(Error::NotCoprime { s: s.unsigned_abs() as u32, n });
    }
    Ok(s_norm)
}

#[derive(Clone)]
pub struct LinearizedPoly {
    ctx: Arc<FieldCtx>,
    s: u32,
    grid: Vec<Elem>,
}

impl PartialEq for LinearizedPoly {
    fn eq(&self, other: &Self) -> bool {
        self.s == other.s && self.grid == other.grid && *self.ctx == *other.ctx
    }
}

impl Eq for LinearizedPoly {}

impl fmt::Debug for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LinearizedPoly({self} over {})", self.ctx.spec_string())
    }
}

/// `s=<int>;a=[a_0,...,a_k]` with elements in integer encoding.
impl fmt::Display for LinearizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let coeffs = self.sigma_coeffs();
        let body = if coeffs.is_empty() {
            "0".to_string()
        } else {
            coeffs.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(",")
        };
        write!(f, "s={};a=[{}]", self.s, body)
    }
}

impl LinearizedPoly {
    /// Builds sum a_j x^{q^{sj}}; exponents beyond the grid are reduced modulo x^{q^n} - x.
    pub fn new(ctx: &Arc<FieldCtx>, s: i64, sigma_coeffs: &[Elem]) -> Result<Self> {
        let n = ctx.n();
        let s = check_coprime(s, n)?;
        let mut grid = vec![Elem::ZERO; n as usize];
        for (j, &a) in sigma_coeffs.iter().enumerate() {
            if a.value() >= ctx.order() {
                return Err(Error::ElementOutOfRange { value: a.value() as u64, order: ctx.order() as u64 });
            }
            let idx = (s as u64 * j as u64 % n as u64) as usize;
            grid[idx] = ctx.add(grid[idx], a);
        }
        Ok(LinearizedPoly { ctx: Arc::clone(ctx), s, grid })
    }

    /// Monic form a_0 x + ... + a_{k-1} x^{σ^{k-1}} - x^{σ^k} from the lower coefficients.
    pub fn monic_from_lower(ctx: &Arc<FieldCtx>, s: i64, lower: &[Elem]) -> Result<Self> {
        let mut coeffs = lower.to_vec();
        coeffs.push(ctx.from_int(-1));
        if coeffs.len() > ctx.n() as usize {
            return Err(Error::Precondition(format!(
                "σ-degree {} exceeds n - 1 = {}",
                coeffs.len() - 1,
                ctx.n() - 1
            )));
        }
        Self::new(ctx, s, &coeffs)
    }

    /// Builds from the q^1 grid directly.
    pub fn from_grid(ctx: &Arc<FieldCtx>, s: i64, grid: Vec<Elem>) -> Result<Self> {
        let n = ctx.n();
        let s = check_coprime(s, n)?;
        if grid.len() != n as usize {
            return Err(Error::MalformedTuple(format!("grid must have {n} entries")));
        }
        Ok(LinearizedPoly { ctx: Arc::clone(ctx), s, grid })
    }

    pub fn zero(ctx: &Arc<FieldCtx>, s: i64) -> Result<Self> {
        Self::from_grid(ctx, s, vec![Elem::ZERO; ctx.n() as usize])
    }

    /// The identity map x.
    pub fn identity(ctx: &Arc<FieldCtx>) -> Self {
        Self::new(ctx, 1, &[Elem::ONE]).expect("s = 1 is coprime to n")
    }

    /// Parses the `s=<int>;a=[...]` text format.
    pub fn parse(ctx: &Arc<FieldCtx>, text: &str) -> Result<Self> {
        let bad = |why: &str| Error::MalformedPolySpec(format!("{why}: {text:?}"));
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        let mut s = None;
        let mut coeffs = None;
        for part in compact.split(';').filter(|p| !p.is_empty()) {
            if let Some(v) = part.strip_prefix("s=") {
                s = Some(v.parse::<i64>().map_err(|_| bad("bad s"))?);
            } else if let Some(v) = part.strip_prefix("a=") {
                let inner = v
                    .strip_prefix('[')
                    .and_then(|v| v.strip_suffix(']'))
                    .ok_or_else(|| bad("coefficients must be bracketed"))?;
                let list = inner
                    .split(',')
                    .map(|t| t.parse::<u64>().map_err(|_| bad("bad coefficient")).and_then(|v| ctx.elem(v)))
                    .collect::<Result<Vec<Elem>>>()?;
                coeffs = Some(list);
            } else {
                return Err(bad("unknown field"));
            }
        }
        let coeffs = coeffs.ok_or_else(|| bad("missing a=[...]"))?;
        Self::new(ctx, s.unwrap_or(1), &coeffs)
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// Coefficients on the q^1 grid, entry i for x^{q^i}.
    pub fn grid(&self) -> &[Elem] {
        &self.grid
    }

    fn grid_index(&self, j: usize) -> usize {
        (self.s as u64 * j as u64 % self.ctx.n() as u64) as usize
    }

    /// a_j, the coefficient of x^{q^{sj}}, for j in 0..n.
    pub fn sigma_coeff(&self, j: usize) -> Elem {
        self.grid[self.grid_index(j)]
    }

    pub fn is_zero(&self) -> bool {
        self.grid.iter().all(|z| z.is_zero())
    }

    /// Largest k with a_k != 0; `None` for the zero polynomial.
    pub fn sigma_degree(&self) -> Option<usize> {
        (0..self.ctx.n() as usize).rev().find(|&j| !self.sigma_coeff(j).is_zero())
    }

    /// (a_0, ..., a_k); empty for the zero polynomial.
    pub fn sigma_coeffs(&self) -> Vec<Elem> {
        match self.sigma_degree() {
            Some(k) => (0..=k).map(|j| self.sigma_coeff(j)).collect(),
            None => Vec::new(),
        }
    }

    pub fn leading(&self) -> Option<Elem> {
        self.sigma_degree().map(|k| self.sigma_coeff(k))
    }

    /// Same map viewed as a q^t-polynomial.
    pub fn with_s(&self, t: i64) -> Result<Self> {
        Self::from_grid(&self.ctx, t, self.grid.clone())
    }

    pub fn scale(&self, c: Elem) -> Self {
        LinearizedPoly {
            ctx: Arc::clone(&self.ctx),
            s: self.s,
            grid: self.grid.iter().map(|&a| self.ctx.mul(c, a)).collect(),
        }
    }

    /// Rescales so the leading coefficient is -1; scaling leaves the kernel unchanged.
    pub fn monic(&self) -> Result<Self> {
        let lead = self.leading().ok_or(Error::ZeroPolynomial)?;
        let c = self.ctx.neg(self.ctx.inv(lead));
        Ok(self.scale(c))
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(self.ctx.from_int(-1))
    }

    /// If a_0 = ... = a_{j-1} = 0 != a_j, returns (g, j) with g(x)^{σ^j} = f(x):
    /// g has coefficients a_{i+j}^{σ^{-j}} and the same kernel as f.
    pub fn strip_low_zeros(&self) -> Result<(Self, usize)> {
        let coeffs = self.sigma_coeffs();
        let j = coeffs.iter().position(|z| !z.is_zero()).ok_or(Error::ZeroPolynomial)?;
        if j == 0 {
            return Ok((self.clone(), 0));
        }
        let shift = -(self.s as i64) * j as i64;
        let lowered: Vec<Elem> = coeffs[j..].iter().map(|&a| self.ctx.frobenius_q(a, shift)).collect();
        Ok((Self::new(&self.ctx, self.s as i64, &lowered)?, j))
    }

    #[inline]
    pub fn evaluate(&self, z: Elem) -> Elem {
        let ctx = &*self.ctx;
        self.grid.iter().enumerate().fold(Elem::ZERO, |acc, (i, &a)| {
            if a.is_zero() {
                acc
            } else {
                ctx.add(acc, ctx.mul(a, ctx.frobenius_q(z, i as i64)))
            }
        })
    }

    /// n x n matrix over F_q of z -> f(z) in the gamma power basis (column j = image of gamma^j).
    pub fn fq_matrix(&self) -> Mat {
        let n = self.ctx.n() as usize;
        let mut m = Mat::zeros(n, n);
        let mut coords = vec![Elem::ZERO; n];
        for (j, &b) in self.ctx.basis().iter().enumerate() {
            self.ctx.fq_coordinates_into(self.evaluate(b), &mut coords);
            for (i, &c) in coords.iter().enumerate() {
                m.set(i, j, c);
            }
        }
        m
    }

    /// F_q-basis of {z : f(z) = 0}, from the reduced row echelon nullspace.
    pub fn kernel_basis(&self) -> SubspaceBasis {
        let elems = self
            .fq_matrix()
            .nullspace(&self.ctx)
            .iter()
            .map(|v| self.ctx.from_fq_coordinates(v))
            .collect();
        SubspaceBasis { ctx: Arc::clone(&self.ctx), elems }
    }

    pub fn kernel_dim(&self) -> usize {
        self.ctx.n() as usize - self.rank()
    }

    pub fn rank(&self) -> usize {
        self.fq_matrix().rank(&self.ctx)
    }

    /// Adjoint under <x, y> = Tr(xy): sum a_i^{q^{n-i}} x^{q^{n-i}}, a q^{n-s}-polynomial.
    pub fn adjoint(&self) -> Self {
        let n = self.ctx.n() as usize;
        let mut grid = vec![Elem::ZERO; n];
        for (i, &a) in self.grid.iter().enumerate() {
            let target = (n - i) % n;
            grid[target] = self.ctx.frobenius_q(a, target as i64);
        }
        LinearizedPoly {
            ctx: Arc::clone(&self.ctx),
            s: normalize_s(n as i64 - self.s as i64, n as u32),
            grid,
        }
    }

    /// f ∘ g reduced modulo x^{q^n} - x. Keeps s when both operands share it, else s = 1.
    pub fn compose_mod(&self, g: &LinearizedPoly) -> Result<Self> {
        if *self.ctx != *g.ctx {
            return Err(Error::ContextMismatch);
        }
        let n = self.ctx.n() as usize;
        let ctx = &*self.ctx;
        let mut grid = vec![Elem::ZERO; n];
        for (i, &c) in self.grid.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (j, &d) in g.grid.iter().enumerate() {
                let term = ctx.mul(c, ctx.frobenius_q(d, i as i64));
                let idx = (i + j) % n;
                grid[idx] = ctx.add(grid[idx], term);
            }
        }
        let s = if self.s == g.s { self.s } else { 1 };
        Ok(LinearizedPoly { ctx: Arc::clone(&self.ctx), s, grid })
    }

    /// Pointwise equality of the two maps on F_{q^n}.
    pub fn same_map(&self, other: &LinearizedPoly) -> bool {
        *self.ctx == *other.ctx && self.grid == other.grid
    }
}

/// An F_q-linearly independent tuple of elements of F_{q^n}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ctx: Arc<FieldCtx>,
    elems: Vec<Elem>,
}

impl SubspaceBasis {
    pub fn new(ctx: &Arc<FieldCtx>, elems: Vec<Elem>) -> Result<Self> {
        let cols: Vec<Vec<Elem>> = elems.iter().map(|&u| ctx.fq_coordinates(u)).collect();
        if !elems.is_empty() && Mat::from_columns(&cols).rank(ctx) != elems.len() {
            return Err(Error::DependentBasis);
        }
        Ok(SubspaceBasis { ctx: Arc::clone(ctx), elems })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn dim(&self) -> usize {
        self.elems.len()
    }

    /// All q^k elements of the span, in no particular order.
    pub fn span(&self) -> Vec<Elem> {
        let fq = self.ctx.subfield_elements(1).expect("1 divides n");
        let mut out = vec![Elem::ZERO];
        for &u in &self.elems {
            let mut next = Vec::with_capacity(out.len() * fq.len());
            for &c in &fq {
                let cu = self.ctx.mul(c, u);
                next.extend(out.iter().map(|&z| self.ctx.add(z, cu)));
            }
            out = next;
        }
        out
    }

    pub fn contains(&self, z: Elem) -> bool {
        let mut cols: Vec<Vec<Elem>> = self.elems.iter().map(|&u| self.ctx.fq_coordinates(u)).collect();
        cols.push(self.ctx.fq_coordinates(z));
        Mat::from_columns(&cols).rank(&self.ctx) == self.elems.len()
    }

    /// Whether both bases span the same F_q-subspace.
    pub fn same_span(&self, other: &SubspaceBasis) -> bool {
        self.dim() == other.dim() && other.elems.iter().all(|&z| self.contains(z))
    }

    /// The q-polynomial with kernel exactly this span, as the Moore determinant
    /// det[[x, x^q, ..., x^{q^k}], [u_i, u_i^q, ..., u_i^{q^k}]] expanded along
    /// its first row and rescaled to leading coefficient -1.
    pub fn annihilator(&self) -> Result<LinearizedPoly> {
        let ctx = &*self.ctx;
        let k = self.elems.len();
        if k >= ctx.n() as usize {
            return Err(Error::Precondition(format!("subspace dimension {k} must be below n = {}", ctx.n())));
        }
        let moore: Vec<Vec<Elem>> = self
            .elems
            .iter()
            .map(|&u| (0..=k).map(|j| ctx.frobenius_q(u, j as i64)).collect())
            .collect();
        let coeffs: Vec<Elem> = (0..=k)
            .map(|j| {
                let minor: Vec<Vec<Elem>> = moore
                    .iter()
                    .map(|row| row.iter().enumerate().filter(|&(c, _)| c != j).map(|(_, &v)| v).collect())
                    .collect();
                let det = if k == 0 { Elem::ONE } else { Mat::from_rows(minor).determinant(ctx) };
                if j % 2 == 1 {
                    ctx.neg(det)
                } else {
                    det
                }
            })
            .collect();
        if coeffs[k].is_zero() {
            return Err(Error::DependentBasis);
        }
        LinearizedPoly::new(&self.ctx, 1, &coeffs)?.monic()
    }
}
