//! Closed-form maximum-kernel families, the σ-degree n-2 system, the
//! cross-coefficient relations, and exhaustive enumeration.

pub mod chains;
mod expr;
pub mod tables;

use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::{gcd, Elem, FieldCtx};
use crate::linpoly::{check_coprime, LinearizedPoly};
use crate::maxkernel::{is_maximum_kernel, CompanionMatrix, Method};

use expr::V;

pub use tables::{table_condition, table_rows, verify_table, RowForm, TableId, TableReport};

/// Default cap on the number of coefficient tuples an enumeration may visit.
pub const DEFAULT_BUDGET: u128 = 1 << 22;

/// Enumeration budget from `MAXKER_BUDGET`, falling back to [`DEFAULT_BUDGET`].
pub fn budget_from_env() -> u128 {
    std::env::var("MAXKER_BUDGET").ok().and_then(|v| v.trim().parse().ok()).unwrap_or(DEFAULT_BUDGET)
}

/// α · Tr_{q^n/q^m}(β x) as a q-polynomial.
pub fn trace_family(ctx: &Arc<FieldCtx>, alpha: Elem, beta: Elem, m: u32) -> Result<LinearizedPoly> {
    let n = ctx.n();
    if m == 0 || !n.is_multiple_of(m) {
        return Err(Error::NotADivisor { m, n });
    }
    if alpha.is_zero() || beta.is_zero() {
        return Err(Error::Precondition("trace family needs nonzero alpha and beta".into()));
    }
    let mut grid = vec![Elem::ZERO; n as usize];
    for i in (0..n).step_by(m as usize) {
        grid[i as usize] = ctx.mul(alpha, ctx.frobenius_q(beta, i as i64));
    }
    LinearizedPoly::from_grid(ctx, 1, grid)
}

/// Whether a_0 x - x^{σ^k} has maximum kernel: k | n and N_{q^n/q^k}(a_0) = 1.
pub fn binomial_has_max_kernel(ctx: &FieldCtx, a0: Elem, k: u32, s: i64) -> Result<bool> {
    let n = ctx.n();
    check_coprime(s, n)?;
    if k == 0 || k >= n {
        return Err(Error::Precondition(format!("binomial degree must lie in 1..{n}")));
    }
    Ok(n.is_multiple_of(k) && ctx.norm_to(a0, k)? == Elem::ONE)
}

/// Free parameters (a_0, a_{n-3}) of a σ-degree n-2 polynomial.
#[derive(Clone, Debug)]
pub struct DegreeN2Seed {
    pub ctx: Arc<FieldCtx>,
    pub s: i64,
    pub a0: Elem,
    pub a_top: Elem,
}

/// Builds a_j = g_j(a_0, a_{n-3}) for 1 <= j <= n-4 and reports whether the
/// two closing conditions hold, which is equivalent to maximum kernel.
pub fn derive_degree_n_minus_2(seed: &DegreeN2Seed) -> Result<(LinearizedPoly, bool)> {
    let ctx = &*seed.ctx;
    let n = ctx.n() as usize;
    if n < 4 {
        return Err(Error::Precondition("σ-degree n-2 families need n >= 4".into()));
    }
    check_coprime(seed.s, ctx.n())?;
    let v = |z| V::new(ctx, seed.s, z);
    let a0 = v(seed.a0);
    let top = v(seed.a_top);
    // g[j] for 0 <= j <= n-3
    let mut g = vec![a0, -a0.pw(&[1, 0]) * top.fr(2)];
    for j in 2..=n - 3 {
        let next = -g[j - 2].fr(2) * a0 - top.fr(2) * g[j - 1].fr(1) * a0;
        g.push(next);
    }
    let closes = (a0 * (g[n - 4].fr(2) + top.pw(&[2, 1]))).is_int(1) && top.is(g[n - 3]);
    let mut lower: Vec<Elem> = Vec::with_capacity(n - 2);
    lower.push(seed.a0);
    for gj in &g[1..n - 3] {
        lower.push(gj.value().expect("no division in the recursion"));
    }
    lower.push(seed.a_top);
    Ok((LinearizedPoly::monic_from_lower(&seed.ctx, seed.s, &lower)?, closes))
}

/// All maximum-kernel monic polynomials of σ-degree n-2 obtained by sweeping the
/// seeds (a_0, a_{n-3}), in coefficient-lexicographic order.
pub fn enumerate_degree_n_minus_2(ctx: &Arc<FieldCtx>, s: i64) -> Result<Vec<LinearizedPoly>> {
    let mut out = Vec::new();
    for a0 in ctx.elements() {
        for a_top in ctx.elements() {
            let seed = DegreeN2Seed { ctx: Arc::clone(ctx), s, a0, a_top };
            let (f, ok) = derive_degree_n_minus_2(&seed)?;
            if ok {
                out.push(f);
            }
        }
    }
    out.sort_by_key(lower_key);
    Ok(out)
}

fn lower_key(f: &LinearizedPoly) -> Vec<u32> {
    f.sigma_coeffs().iter().map(|z| z.value()).collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RelationReport {
    pub t: u32,
    pub s: u32,
    pub nonzero: bool,
    pub first: bool,
    pub second: bool,
    pub norm_first: bool,
    pub norm_second: bool,
}

impl RelationReport {
    pub fn holds(&self) -> bool {
        self.nonzero && self.first && self.second && self.norm_first && self.norm_second
    }
}

/// Admissible t for the cross-coefficient relations: 2 <= t <= n, gcd(t-1, n) = 1.
pub fn admissible_t(n: u32) -> Vec<u32> {
    (2..=n).filter(|&t| gcd(u64::from(t - 1), u64::from(n)) == 1).collect()
}

/// Evaluates the cross-coefficient relations for a maximum-kernel q-polynomial
/// of q-degree n-2, with relation exponent s = n - t + 1 and indices mod n.
pub fn newrelt_report(f: &LinearizedPoly, t: u32) -> Result<RelationReport> {
    let ctx = &**f.ctx();
    let n = ctx.n();
    if f.s() != 1 {
        return Err(Error::Precondition("cross-coefficient relations are stated for q-polynomials".into()));
    }
    if f.sigma_degree() != Some(n as usize - 2) {
        return Err(Error::Precondition(format!("expected q-degree {}", n - 2)));
    }
    if t < 2 || gcd(u64::from(t - 1), u64::from(n)) != 1 {
        return Err(Error::NotCoprime { s: t.saturating_sub(1), n });
    }
    if !is_maximum_kernel(f, Method::Recursion)? {
        return Err(Error::Precondition("polynomial does not have maximum kernel".into()));
    }
    let monic = f.monic()?;
    let s = (n as i64 - t as i64 + 1).rem_euclid(n as i64);
    let a = |i: i64| V::new(ctx, s, monic.grid()[i.rem_euclid(n as i64) as usize]);
    let (n_, t_) = (n as i64, t as i64);
    let a_tm2 = a(t_ - 2);
    let a_nmt = a(n_ - t_);
    let a_n2t1 = a(n_ - 2 * t_ + 1);
    let a_2t3 = a(2 * t_ - 3);
    let a_3t4 = a(3 * t_ - 4);
    let sign = if n.is_multiple_of(2) { 1 } else { -1 };
    Ok(RelationReport {
        t,
        s: s as u32,
        nonzero: !a_tm2.is_int(0) && !a_nmt.is_int(0),
        first: (a_n2t1 * a_tm2.pw(&[2, 1])).is(-a_nmt.pw(&[1, 0]) * a_2t3.fr(2)),
        second: (-a_nmt * (-a_tm2.fr(1) * a_3t4.fr(2) + a_2t3.pw(&[2, 1]))).is(a_tm2.pw(&[2, 1, 0])),
        norm_first: a_nmt.norm().is(a_tm2.norm() * a_tm2.int(sign)),
        norm_second: a_n2t1.norm().is(a_2t3.norm() * a_2t3.int(sign)),
    })
}

pub fn newrelt_check(f: &LinearizedPoly, t: u32) -> Result<bool> {
    Ok(newrelt_report(f, t)?.holds())
}

/// For a maximum-kernel f of σ-degree n-2 whose x^σ coefficient vanishes,
/// returns (α, β) with f = α Tr_{q^n/q^2}(β x), where β = λ satisfies
/// a_0 = -λ^{1 - σ^{n-2}} and α = -λ^{-σ^{n-2}} (the monic form has leading
/// coefficient -1, so the sign matters in odd characteristic).
pub fn trace2_classify(f: &LinearizedPoly) -> Result<(Elem, Elem)> {
    let ctx = f.ctx();
    let n = ctx.n();
    if n < 4 || f.sigma_degree() != Some(n as usize - 2) {
        return Err(Error::Precondition(format!("expected σ-degree {}", n.saturating_sub(2))));
    }
    let monic = f.monic()?;
    if !monic.sigma_coeff(1).is_zero() {
        return Err(Error::Precondition("coefficient of x^σ is nonzero".into()));
    }
    if !is_maximum_kernel(f, Method::Recursion)? {
        return Err(Error::Precondition("polynomial does not have maximum kernel".into()));
    }
    if n % 2 == 1 {
        return Err(Error::Internal("odd n admits no such polynomial".into()));
    }
    let top = monic.s() as i64 * (n as i64 - 2);
    let a0 = monic.sigma_coeff(0);
    for lambda in ctx.nonzero_elements() {
        let lifted = ctx.frobenius_q(lambda, top);
        if ctx.neg(ctx.div(lambda, lifted)) != a0 {
            continue;
        }
        let alpha = ctx.neg(ctx.inv(lifted));
        if trace_family(ctx, alpha, lambda, 2)?.same_map(&monic) {
            return Ok((alpha, lambda));
        }
    }
    Err(Error::Internal("no λ reconstructs the polynomial".into()))
}

/// Gaussian binomial coefficient [n choose k]_q.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> u128 {
    if k > n {
        return 0;
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}

/// Number of coefficient tuples an exhaustive σ-degree k sweep visits.
pub fn sweep_size(ctx: &FieldCtx, k: usize) -> u128 {
    (ctx.order() as u128).checked_pow(k as u32).unwrap_or(u128::MAX)
}

/// Visits all tuples (a_0, ..., a_{k-1}) in lexicographic encoding order with
/// a_0 outermost.
pub fn for_each_tuple(ctx: &FieldCtx, k: usize, mut visit: impl FnMut(&[Elem])) {
    let order = ctx.order();
    let mut digits = vec![0u32; k];
    let mut tuple = vec![Elem::ZERO; k];
    loop {
        visit(&tuple);
        let mut i = k;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < order {
                tuple[i] = Elem(digits[i]);
                break;
            }
            digits[i] = 0;
            tuple[i] = Elem::ZERO;
        }
    }
}

/// All monic maximum-kernel q^s-polynomials of σ-degree k, deduplicated, in
/// lexicographic coefficient order with a_0 outermost.
pub fn enumerate_max_kernel(ctx: &Arc<FieldCtx>, s: i64, k: usize, budget: u128) -> Result<Vec<LinearizedPoly>> {
    let s = check_coprime(s, ctx.n())? as i64;
    let needed = sweep_size(ctx, k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut out = Vec::new();
    let mut failure = None;
    for_each_tuple(ctx, k, |lower| {
        if failure.is_some() || lower.first().is_some_and(|a| a.is_zero()) {
            return;
        }
        match CompanionMatrix::from_lower(ctx, s, lower) {
            Ok(a) if !is_e0(&a.product_times_e0()) => {}
            Ok(_) => match LinearizedPoly::monic_from_lower(ctx, s, lower) {
                Ok(f) => out.push(f),
                Err(e) => failure = Some(e),
            },
            Err(e) => failure = Some(e),
        }
    });
    match failure {
        Some(e) => Err(e),
        None => Ok(out),
    }
}

fn is_e0(v: &[Elem]) -> bool {
    v.iter().enumerate().all(|(i, &z)| z == if i == 0 { Elem::ONE } else { Elem::ZERO })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u32, n: u32) -> Arc<FieldCtx> {
        Arc::new(FieldCtx::new(p, 1, n, None).unwrap())
    }

    #[test]
    fn full_trace_over_f16() {
        let ctx = field(2, 4);
        let f = trace_family(&ctx, Elem::ONE, Elem::ONE, 1).unwrap();
        assert_eq!(f.grid(), &[Elem::ONE; 4]);
        assert_eq!(f.kernel_dim(), 3);
    }

    #[test]
    fn relative_trace_kernel_dimensions() {
        let ctx = field(2, 6);
        let w = ctx.primitive();
        for m in [1, 2, 3, 6] {
            let f = trace_family(&ctx, w, ctx.pow(w, 5), m).unwrap();
            assert_eq!(f.kernel_dim(), (6 - m) as usize);
        }
        let f = trace_family(&ctx, w, w, 6).unwrap();
        assert_eq!(f.sigma_coeffs(), vec![ctx.mul(w, w)]);
        assert!(trace_family(&ctx, Elem::ZERO, w, 1).is_err());
        assert!(trace_family(&ctx, w, w, 4).is_err());
    }

    #[test]
    fn binomial_examples() {
        let ctx = field(2, 4);
        assert!(binomial_has_max_kernel(&ctx, Elem::ONE, 2, 1).unwrap());
        assert!(!binomial_has_max_kernel(&ctx, ctx.primitive(), 2, 1).unwrap());
        let ctx5 = field(2, 5);
        for a0 in ctx5.elements() {
            assert!(!binomial_has_max_kernel(&ctx5, a0, 2, 1).unwrap());
        }
    }

    #[test]
    fn degree_two_seed_example() {
        let ctx = field(2, 4);
        let seed = DegreeN2Seed { ctx: Arc::clone(&ctx), s: 1, a0: Elem::ONE, a_top: Elem::ZERO };
        let (f, ok) = derive_degree_n_minus_2(&seed).unwrap();
        assert!(ok);
        assert_eq!(f.grid(), &[Elem::ONE, Elem::ZERO, Elem::ONE, Elem::ZERO]);
        assert_eq!(f.kernel_dim(), 2);
    }

    #[test]
    fn gaussian_values() {
        assert_eq!(gaussian_binomial(4, 1, 2), 15);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(5, 2, 2), 155);
        assert_eq!(gaussian_binomial(6, 4, 2), 651);
        assert_eq!(gaussian_binomial(4, 2, 3), 130);
        assert_eq!(gaussian_binomial(3, 0, 7), 1);
        assert_eq!(gaussian_binomial(3, 4, 7), 0);
    }

    #[test]
    fn tuple_order_has_a0_outermost() {
        let ctx = field(2, 1);
        let mut seen = Vec::new();
        for_each_tuple(&ctx, 2, |t| seen.push((t[0].value(), t[1].value())));
        assert_eq!(seen, vec![(0, 0), (0, 1), (1, 0), (1, 1)]);
        let mut count = 0;
        for_each_tuple(&ctx, 0, |t| {
            assert!(t.is_empty());
            count += 1;
        });
        assert_eq!(count, 1);
    }

    #[test]
    fn enumeration_budget() {
        let ctx = field(2, 4);
        let err = enumerate_max_kernel(&ctx, 1, 3, 100).unwrap_err();
        assert_eq!(err, Error::BudgetExceeded { needed: 4096, budget: 100 });
        assert_eq!(enumerate_max_kernel(&ctx, 1, 2, DEFAULT_BUDGET).unwrap().len(), 35);
    }

    #[test]
    fn trivial_t_relation() {
        let ctx = field(2, 4);
        let f = LinearizedPoly::monic_from_lower(&ctx, 1, &[Elem::ONE, Elem::ZERO]).unwrap();
        assert!(newrelt_check(&f, 2).unwrap());
        assert!(newrelt_check(&f, 3).is_err());
        assert_eq!(admissible_t(6), vec![2, 6]);
        assert_eq!(admissible_t(5), vec![2, 3, 4, 5]);
    }

    #[test]
    fn classify_x_plus_x4() {
        let ctx = field(2, 4);
        let f = LinearizedPoly::monic_from_lower(&ctx, 1, &[Elem::ONE, Elem::ZERO]).unwrap();
        let (alpha, beta) = trace2_classify(&f).unwrap();
        let g = trace_family(&ctx, alpha, beta, 2).unwrap();
        assert!(ctx.elements().all(|z| g.evaluate(z) == f.evaluate(z)));
    }
}
