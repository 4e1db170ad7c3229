//! Generalized Gabidulin codes and exhaustive MRD verification.

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::for_each_tuple;
use crate::gf::{Elem, FieldCtx};
use crate::linalg::Mat;
use crate::linpoly::{check_coprime, LinearizedPoly};

/// F_{q^n}-span of linearized polynomials sharing one σ = q^s.
#[derive(Clone, Debug)]
pub struct LinearCode {
    ctx: Arc<FieldCtx>,
    s: u32,
    generators: Vec<LinearizedPoly>,
}

impl LinearCode {
    pub fn new(ctx: &Arc<FieldCtx>, s: i64, generators: Vec<LinearizedPoly>) -> Result<Self> {
        let s = check_coprime(s, ctx.n())?;
        if generators.iter().any(|g| g.ctx().as_ref() != ctx.as_ref()) {
            return Err(Error::ContextMismatch);
        }
        let rows: Vec<Vec<Elem>> = generators.iter().map(|g| g.grid().to_vec()).collect();
        if !rows.is_empty() && Mat::from_rows(rows).rank(ctx) != generators.len() {
            return Err(Error::DependentBasis);
        }
        let generators = generators.into_iter().map(|g| g.with_s(s as i64)).collect::<Result<_>>()?;
        Ok(LinearCode { ctx: Arc::clone(ctx), s, generators })
    }

    pub fn ctx(&self) -> &Arc<FieldCtx> {
        &self.ctx
    }

    pub fn s(&self) -> u32 {
        self.s
    }

    /// F_{q^n}-dimension of the code.
    pub fn k(&self) -> usize {
        self.generators.len()
    }

    pub fn generators(&self) -> &[LinearizedPoly] {
        &self.generators
    }

    /// Number of codewords, q^{nk}.
    pub fn size(&self) -> u128 {
        (self.ctx.order() as u128).checked_pow(self.k() as u32).unwrap_or(u128::MAX)
    }

    /// Σ c_i g_i.
    pub fn codeword(&self, coeffs: &[Elem]) -> LinearizedPoly {
        let n = self.ctx.n() as usize;
        let mut grid = vec![Elem::ZERO; n];
        for (&c, g) in coeffs.iter().zip(&self.generators) {
            for (slot, &a) in grid.iter_mut().zip(g.grid()) {
                *slot = self.ctx.add(*slot, self.ctx.mul(c, a));
            }
        }
        LinearizedPoly::from_grid(&self.ctx, self.s as i64, grid).expect("s was validated")
    }
}

/// G_{k,s} = <x, x^{σ}, ..., x^{σ^{k-1}}> over F_{q^n}.
pub fn gabidulin_code(ctx: &Arc<FieldCtx>, k: usize, s: i64) -> Result<LinearCode> {
    let n = ctx.n() as usize;
    if k == 0 || k > n {
        return Err(Error::Precondition(format!("Gabidulin dimension must lie in 1..={n}")));
    }
    let s = check_coprime(s, ctx.n())? as i64;
    let generators = (0..k)
        .map(|j| {
            let mut coeffs = vec![Elem::ZERO; j + 1];
            coeffs[j] = Elem::ONE;
            LinearizedPoly::new(ctx, s, &coeffs)
        })
        .collect::<Result<Vec<_>>>()?;
    LinearCode::new(ctx, s, generators)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MrdReport {
    pub field: String,
    pub k: usize,
    pub s: u32,
    pub nonzero_codewords: u128,
    pub min_rank: usize,
    pub max_kernel_dim: usize,
    /// Every nonzero codeword has kernel dimension at most k - 1.
    pub is_mrd: bool,
    /// Every nonzero codeword f has dim ker f <= σ-degree(f).
    pub degree_bound_holds: bool,
    /// First codeword (in coefficient order) attaining `max_kernel_dim`.
    pub worst: Option<String>,
}

/// Computes the kernel of every nonzero codeword.
pub fn verify_mrd(code: &LinearCode, budget: u128) -> Result<MrdReport> {
    let needed = code.size();
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let n = code.ctx.n() as usize;
    let mut count = 0u128;
    let mut max_dim = 0usize;
    let mut worst = None;
    let mut bound = true;
    for_each_tuple(&code.ctx, code.k(), |coeffs| {
        if coeffs.iter().all(|c| c.is_zero()) {
            return;
        }
        count += 1;
        let f = code.codeword(coeffs);
        let dim = f.kernel_dim();
        if dim > f.sigma_degree().expect("nonzero codeword") {
            bound = false;
        }
        if worst.is_none() || dim > max_dim {
            max_dim = dim;
            worst = Some(f.to_string());
        }
    });
    let k = code.k();
    Ok(MrdReport {
        field: code.ctx.spec_string(),
        k,
        s: code.s,
        nonzero_codewords: count,
        min_rank: n - max_dim,
        max_kernel_dim: max_dim,
        is_mrd: count > 0 && max_dim < k,
        degree_bound_holds: bound,
        worst,
    })
}
