//! Condition tables for maximum-kernel polynomials over F_{q^n}, n = 4, 5, 6.
//!
//! Table 1 covers n = 4 (s = 1), table 2 covers n = 5 (s in {1, 2}) and table 3
//! covers n = 6 (s = 1). Each row describes a family of monic polynomials
//! (leading coefficient -1) of a fixed σ-degree by a polynomial form and a
//! system of conditions on the coefficients.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::expr::V;
use super::{enumerate_degree_n_minus_2, enumerate_max_kernel, for_each_tuple, gaussian_binomial, sweep_size, trace_family};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};
use crate::linpoly::{check_coprime, LinearizedPoly};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "form", rename_all = "lowercase")]
pub enum RowForm {
    /// Monic multiples of Tr_{q^n/q^m}(λ x), λ != 0.
    Trace { m: u32 },
    /// a_0 x - x^{σ^k} with N_{q^n/q^k}(a_0) = 1.
    Binomial,
    /// The explicit coefficient system of the row.
    General,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct TableId {
    pub table: u8,
    pub n: u32,
    pub s: u32,
    pub k: usize,
    pub row: RowForm,
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let form = match self.row {
            RowForm::Trace { m: 1 } => "Tr(λx)".to_string(),
            RowForm::Trace { m } => format!("Tr_{{q^{}/q^{}}}(λx)", self.n, m),
            RowForm::Binomial => "binomial".to_string(),
            RowForm::General => "general".to_string(),
        };
        write!(f, "table {} k={} {}", self.table, self.k, form)
    }
}

/// n for a table index.
pub fn table_n(table: u8) -> Result<u32> {
    match table {
        1 => Ok(4),
        2 => Ok(5),
        3 => Ok(6),
        _ => Err(Error::Precondition(format!("no condition table {table}; expected 1, 2 or 3"))),
    }
}

/// Values of s covered by a table.
pub fn table_s_values(table: u8) -> Result<&'static [u32]> {
    table_n(table)?;
    Ok(if table == 2 { &[1, 2] } else { &[1] })
}

/// All rows of a table for a given s, in table order.
pub fn table_rows(table: u8, s: u32) -> Result<Vec<TableId>> {
    let n = table_n(table)?;
    if !table_s_values(table)?.contains(&s) {
        return Err(Error::Precondition(format!("table {table} does not cover s = {s}")));
    }
    use RowForm::*;
    let rows: &[(usize, RowForm)] = match table {
        1 => &[(3, Trace { m: 1 }), (2, Binomial), (2, General), (1, Binomial)],
        2 => &[(4, Trace { m: 1 }), (3, General), (2, General), (1, Binomial)],
        _ => &[
            (5, Trace { m: 1 }),
            (4, General),
            (4, Trace { m: 2 }),
            (3, General),
            (3, Trace { m: 3 }),
            (2, General),
            (2, Binomial),
            (1, Binomial),
        ],
    };
    Ok(rows.iter().map(|&(k, row)| TableId { table, n, s, k, row }).collect())
}

fn validate(ctx: &FieldCtx, id: &TableId, lower: &[Elem]) -> Result<()> {
    if ctx.n() != id.n {
        return Err(Error::Precondition(format!("table {} needs n = {}, field has n = {}", id.table, id.n, ctx.n())));
    }
    if !table_rows(id.table, id.s)?.contains(id) {
        return Err(Error::Precondition(format!("{id} is not a row of table {}", id.table)));
    }
    if lower.len() != id.k {
        return Err(Error::MalformedTuple(format!("{id} takes {} coefficients, got {}", id.k, lower.len())));
    }
    Ok(())
}

/// Whether the monic polynomial with lower coefficients `lower` = (a_0, ...,
/// a_{k-1}) belongs to the row. Tuples that do not have the row's polynomial
/// form (a nonzero coefficient where the form has none) are not members.
pub fn table_condition(ctx: &Arc<FieldCtx>, id: &TableId, lower: &[Elem]) -> Result<bool> {
    validate(ctx, id, lower)?;
    Ok(match id.row {
        RowForm::Trace { m } => {
            let f = LinearizedPoly::monic_from_lower(ctx, id.s as i64, lower)?;
            trace_row_members(ctx, id.s, m)?.contains(&lower_key(&f))
        }
        RowForm::Binomial => {
            lower[1..].iter().all(|a| a.is_zero())
                && id.n.is_multiple_of(id.k as u32)
                && ctx.norm_to(lower[0], id.k as u32)? == Elem::ONE
        }
        RowForm::General => general_row(ctx, id, lower),
    })
}

fn general_row(ctx: &FieldCtx, id: &TableId, lower: &[Elem]) -> bool {
    let v = |z| V::new(ctx, id.s as i64, z);
    let a: Vec<V> = lower.iter().map(|&z| v(z)).collect();
    match (id.table, id.k) {
        (1, 2) => {
            let (a0, a1) = (a[0], a[1]);
            a0.norm().is_int(1) && a1.pw(&[1, 0]).is(a0.pw(&[2, 1, 0]) - a0.fr(1))
        }
        (2, 3) => {
            let (a0, a1, a2) = (a[0], a[1], a[2]);
            a0.norm().is_int(1)
                && a1.is(-a0.pw(&[1, 0]) * a2.fr(2))
                && (-a0.pw(&[3, 2, 0]) * a2.fr(4) + a0 * a2.pw(&[2, 1])).is_int(1)
        }
        (2, 2) => {
            let (a0, a1) = (a[0], a[1]);
            a0.norm().is_int(-1) && (a1.pw(&[1, 0]) + a0.fr(1)).is(a1.fr(3) * a0.pw(&[2, 1, 0]))
        }
        (3, 4) => {
            let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
            !lower[1].is_zero()
                && a0.norm().is_int(1)
                && (a0 * (-a0.pw(&[4, 2]) + a3.pw(&[5, 4]) * a0.pw(&[4, 3, 2]) + a3.pw(&[2, 1]))).is_int(1)
                && a1.is(-a0.pw(&[1, 0]) * a3.fr(2))
                && a2.is(-a0.pw(&[2, 0]) + a3.pw(&[3, 2]) * a0.pw(&[2, 1, 0]))
                && a3.is(a3.fr(4) * a0.pw(&[3, 2, 0]) + a3.fr(2) * a0.pw(&[3, 1, 0])
                    - a0.pw(&[3, 2, 1, 0]) * a3.pw(&[4, 3, 2]))
        }
        (3, 3) => {
            let (a0, a1, a2) = (a[0], a[1], a[2]);
            a0.norm().is_int(1)
                && (a0.pw(&[3, 1, 0]) + a2.fr(3) * a1.fr(2) * a0.pw(&[1, 0]) - a2.fr(1) * a1).is(a0.fr(1))
                && a2.pw(&[1, 0]).is(-a0.pw(&[3, 2, 1, 0]) * a1.fr(4) - a1.fr(1))
                && a1.pw(&[1, 0]).is(a2 * a0.fr(1) + a0.pw(&[2, 1, 0]) * a2.fr(3))
        }
        (3, 2) => {
            let (a0, a1) = (a[0], a[1]);
            let base = a0.fr(1) + a1.pw(&[1, 0]);
            !lower[1].is_zero()
                && a0.norm().is_int(1)
                && base.fr(3).is(a0.pw(&[5, 4, 3]) * base)
                && (a1.fr(4) * a0.fr(3) + a1.fr(2) * (a0.fr(4) + a1.pw(&[4, 3]))).is(-a1 / a0.pw(&[1, 0]))
        }
        _ => unreachable!("validated rows"),
    }
}

fn lower_key(f: &LinearizedPoly) -> Vec<u32> {
    let coeffs = f.sigma_coeffs();
    coeffs[..coeffs.len() - 1].iter().map(|z| z.value()).collect()
}

/// Lower-coefficient tuples of the monic multiples of Tr_{q^n/q^m}(λ x) as
/// q^s-polynomials.
fn trace_row_members(ctx: &Arc<FieldCtx>, s: u32, m: u32) -> Result<BTreeSet<Vec<u32>>> {
    let mut out = BTreeSet::new();
    for lambda in ctx.nonzero_elements() {
        let f = trace_family(ctx, Elem::ONE, lambda, m)?.with_s(s as i64)?.monic()?;
        out.insert(lower_key(&f));
    }
    Ok(out)
}

/// Solution set of a row as lower-coefficient tuples in encoding order.
pub fn row_solutions(ctx: &Arc<FieldCtx>, id: &TableId, budget: u128) -> Result<BTreeSet<Vec<u32>>> {
    validate(ctx, id, &vec![Elem::ZERO; id.k])?;
    match id.row {
        RowForm::Trace { m } => {
            let members = trace_row_members(ctx, id.s, m)?;
            Ok(members.into_iter().filter(|t| t.len() == id.k).collect())
        }
        RowForm::Binomial => {
            let mut out = BTreeSet::new();
            for a0 in ctx.elements() {
                let mut lower = vec![Elem::ZERO; id.k];
                lower[0] = a0;
                if table_condition(ctx, id, &lower)? {
                    out.insert(lower.iter().map(|z| z.value()).collect());
                }
            }
            Ok(out)
        }
        RowForm::General if sweep_size(ctx, id.k) <= budget => {
            let mut out = BTreeSet::new();
            for_each_tuple(ctx, id.k, |lower| {
                if general_row(ctx, id, lower) {
                    out.insert(lower.iter().map(|z| z.value()).collect());
                }
            });
            Ok(out)
        }
        RowForm::General if (id.table, id.k) == (3, 4) => {
            // The row pins a_1 and a_2 as functions of (a_0, a_3).
            let mut out = BTreeSet::new();
            for a0 in ctx.elements() {
                for a3 in ctx.elements() {
                    let (x0, x3) = (V::new(ctx, 1, a0), V::new(ctx, 1, a3));
                    let a1 = (-x0.pw(&[1, 0]) * x3.fr(2)).value().expect("defined");
                    let a2 = (-x0.pw(&[2, 0]) + x3.pw(&[3, 2]) * x0.pw(&[2, 1, 0])).value().expect("defined");
                    let lower = [a0, a1, a2, a3];
                    if general_row(ctx, id, &lower) {
                        out.insert(lower.iter().map(|z| z.value()).collect());
                    }
                }
            }
            Ok(out)
        }
        RowForm::General => Err(Error::BudgetExceeded { needed: sweep_size(ctx, id.k), budget }),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RowResult {
    pub row: String,
    pub id: TableId,
    pub solutions: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeResult {
    pub k: usize,
    /// "exhaustive" or "seeds" (σ-degree n-2 parameterized by (a_0, a_{n-3})).
    pub method: &'static str,
    pub max_kernel: usize,
    pub gaussian_binomial: u128,
    pub rows: Vec<RowResult>,
    pub union: usize,
    /// Maximum-kernel tuples not covered by any row.
    pub missing: Vec<Vec<u32>>,
    /// Row solutions without maximum kernel.
    pub extra: Vec<Vec<u32>>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableReport {
    pub table: u8,
    pub field: String,
    pub s: u32,
    pub degrees: Vec<DegreeResult>,
    /// σ-degrees left out because neither route fits the budget.
    pub skipped: Vec<usize>,
    pub pass: bool,
}

/// Compares the union of row solutions with the maximum-kernel set, per σ-degree.
/// `ks = None` checks every σ-degree listed in the table that fits the budget.
pub fn verify_table(ctx: &Arc<FieldCtx>, table: u8, s: u32, ks: Option<&[usize]>, budget: u128) -> Result<TableReport> {
    let rows = table_rows(table, s)?;
    let n = table_n(table)?;
    if ctx.n() != n {
        return Err(Error::Precondition(format!("table {table} needs n = {n}, field has n = {}", ctx.n())));
    }
    check_coprime(s as i64, n)?;
    let mut degrees: Vec<usize> = rows.iter().map(|r| r.k).collect();
    degrees.dedup();
    if let Some(ks) = ks {
        if let Some(k) = ks.iter().find(|k| !degrees.contains(k)) {
            return Err(Error::Precondition(format!("table {table} has no rows of σ-degree {k}")));
        }
        degrees.retain(|k| ks.contains(k));
    }
    let mut results = Vec::new();
    let mut skipped = Vec::new();
    for k in degrees {
        let (method, found) = if sweep_size(ctx, k) <= budget {
            ("exhaustive", enumerate_max_kernel(ctx, s as i64, k, budget)?)
        } else if k + 2 == n as usize {
            ("seeds", enumerate_degree_n_minus_2(ctx, s as i64)?)
        } else if ks.is_some() {
            return Err(Error::BudgetExceeded { needed: sweep_size(ctx, k), budget });
        } else {
            skipped.push(k);
            continue;
        };
        let max_set: BTreeSet<Vec<u32>> = found.iter().map(lower_key).collect();
        let mut union = BTreeSet::new();
        let mut row_results = Vec::new();
        for id in rows.iter().filter(|r| r.k == k) {
            let sols = row_solutions(ctx, id, budget)?;
            row_results.push(RowResult { row: id.to_string(), id: *id, solutions: sols.len() });
            union.extend(sols);
        }
        let missing: Vec<Vec<u32>> = max_set.difference(&union).cloned().collect();
        let extra: Vec<Vec<u32>> = union.difference(&max_set).cloned().collect();
        let gauss = gaussian_binomial(n, k as u32, ctx.q() as u64);
        let pass = missing.is_empty() && extra.is_empty() && max_set.len() as u128 == gauss;
        results.push(DegreeResult {
            k,
            method,
            max_kernel: max_set.len(),
            gaussian_binomial: gauss,
            rows: row_results,
            union: union.len(),
            missing,
            extra,
            pass,
        });
    }
    let pass = results.iter().all(|d| d.pass);
    Ok(TableReport { table, field: ctx.spec_string(), s, degrees: results, skipped, pass })
}
