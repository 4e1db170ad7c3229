//! Step-by-step reductions of the maximum-kernel systems behind the condition
//! tables. Each reduction is a chain of systems, starting from the raw
//! Q-recursion equations and ending at the row conditions; consecutive stages
//! are claimed to have the same solution set, which `check_reduction` tests by
//! exhaustive comparison.

use std::sync::Arc;

use serde::Serialize;

use super::expr::V;
use super::{for_each_tuple, sweep_size};
use crate::error::{Error, Result};
use crate::gf::{Elem, FieldCtx};

type System = for<'a> fn(&[V<'a>]) -> bool;

#[derive(Clone, Copy)]
pub struct Stage {
    pub name: &'static str,
    system: System,
}

impl Stage {
    pub fn holds(&self, ctx: &FieldCtx, s: i64, lower: &[Elem]) -> bool {
        let a: Vec<V> = lower.iter().map(|&z| V::new(ctx, s, z)).collect();
        (self.system)(&a)
    }
}

#[derive(Clone)]
pub struct Reduction {
    pub name: &'static str,
    pub n: u32,
    pub k: usize,
    pub s_values: &'static [i64],
    /// Only tuples with a_1 != 0 are compared (the chain divides by a_1).
    pub needs_a1_nonzero: bool,
    pub stages: Vec<Stage>,
}

fn st(name: &'static str, system: System) -> Stage {
    Stage { name, system }
}

fn n4_k2() -> Reduction {
    Reduction {
        name: "n4_k2",
        n: 4,
        k: 2,
        s_values: &[1],
        needs_a1_nonzero: true,
        stages: vec![
            st("raw", |a| {
                let (a0, a1) = (a[0], a[1]);
                (a0 * (a0.fr(2) + a1.pw(&[2, 1]))).is_int(1) && a1.is(-a0.pw(&[1, 0]) * a1.fr(2))
            }),
            st("with_norm", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(1)
                    && (a0 * (a0.fr(2) + a1.pw(&[2, 1]))).is_int(1)
                    && a1.is(-a0.pw(&[1, 0]) * a1.fr(2))
            }),
            st("rewritten", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(1)
                    && (a1.fr(2) / a1).is(-a0.int(1) / a0.pw(&[1, 0]))
                    && a1.pw(&[1, 0]).is(a0.pw(&[2, 1, 0]) - a0.fr(1))
            }),
            st("reduced", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(1) && a1.pw(&[1, 0]).is(a0.pw(&[2, 1, 0]) - a0.fr(1))
            }),
        ],
    }
}

fn n5_k3() -> Reduction {
    Reduction {
        name: "n5_k3",
        n: 5,
        k: 3,
        s_values: &[1, 2],
        needs_a1_nonzero: false,
        stages: vec![
            st("raw", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                (a0 * (a1.fr(2) + a2.pw(&[2, 1]))).is_int(1)
                    && a1.is(-a0.pw(&[1, 0]) * a2.fr(2))
                    && a2.is(-a0.pw(&[2, 0]) - a2.fr(2) * a1.fr(1) * a0)
            }),
            st("with_norm", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                a0.norm().is_int(1)
                    && (a0 * (a1.fr(2) + a2.pw(&[2, 1]))).is_int(1)
                    && a1.is(-a0.pw(&[1, 0]) * a2.fr(2))
                    && a2.is(-a0.pw(&[2, 0]) - a2.fr(2) * a1.fr(1) * a0)
            }),
            st("rewritten", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                a0.norm().is_int(1)
                    && a1.is(-a0.pw(&[1, 0]) * a2.fr(2))
                    && (-a0.pw(&[3, 2, 0]) * a2.fr(4) + a2.pw(&[2, 1]) * a0).is_int(1)
                    && a2.is(-a0.pw(&[2, 0]) + a2.pw(&[3, 2]) * a0.pw(&[2, 1, 0]))
            }),
            st("reduced", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                a0.norm().is_int(1)
                    && a1.is(-a0.pw(&[1, 0]) * a2.fr(2))
                    && (-a0.pw(&[3, 2, 0]) * a2.fr(4) + a0 * a2.pw(&[2, 1])).is_int(1)
            }),
        ],
    }
}

fn n5_k2() -> Reduction {
    Reduction {
        name: "n5_k2",
        n: 5,
        k: 2,
        s_values: &[1, 2],
        needs_a1_nonzero: false,
        stages: vec![
            st("raw", |a| {
                let (a0, a1) = (a[0], a[1]);
                let inner = a0.fr(3) + a1.pw(&[3, 2]);
                let w = a0.fr(2) * a1.fr(3) + a1.fr(1) * inner;
                (a0 * w).is_int(1) && (a0.fr(1) * inner + a1 * w).is_int(0)
            }),
            st("with_norm", |a| {
                let (a0, a1) = (a[0], a[1]);
                let inner = a0.fr(3) + a1.pw(&[3, 2]);
                let w = a0.fr(2) * a1.fr(3) + a1.fr(1) * inner;
                a0.norm().is_int(-1) && (a0 * w).is_int(1) && (a0.pw(&[1, 0]) * inner + a1).is_int(0)
            }),
            st("rewritten", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(-1)
                    && (a0.fr(3) + a1.pw(&[3, 2])).is(-a1 / a0.pw(&[1, 0]))
                    && (a1.fr(3) * a0.pw(&[2, 1, 0]) - a1.pw(&[1, 0])).is(a0.fr(1))
            }),
            st("rearranged", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(-1)
                    && (a1.pw(&[1, 0]) + a0.fr(1)).is(a1.fr(3) * a0.pw(&[2, 1, 0]))
                    && (a1 * a0.pw(&[4, 3, 2])).is(-a1 / a0.pw(&[1, 0]))
            }),
            st("reduced", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(-1) && (a1.pw(&[1, 0]) + a0.fr(1)).is(a1.fr(3) * a0.pw(&[2, 1, 0]))
            }),
        ],
    }
}

fn n6_k2() -> Reduction {
    fn x<'a>(a0: V<'a>, a1: V<'a>) -> V<'a> {
        a0.fr(2) * (a0.fr(4) + a1.pw(&[4, 3])) + a1.fr(1) * y(a0, a1)
    }
    fn y<'a>(a0: V<'a>, a1: V<'a>) -> V<'a> {
        a0.fr(3) * a1.fr(4) + a1.fr(2) * (a0.fr(4) + a1.pw(&[4, 3]))
    }
    Reduction {
        name: "n6_k2",
        n: 6,
        k: 2,
        s_values: &[1],
        needs_a1_nonzero: false,
        stages: vec![
            st("raw", |a| {
                let (a0, a1) = (a[0], a[1]);
                (a0 * x(a0, a1)).is_int(1)
                    && (a0.fr(2) * a1 * (a0.fr(4) + a1.pw(&[4, 3])) + (a1.pw(&[1, 0]) + a0.fr(1)) * y(a0, a1))
                        .is_int(0)
            }),
            st("divided", |a| {
                let (a0, a1) = (a[0], a[1]);
                x(a0, a1).is(a0.int(1) / a0) && (a1 / a0 + a0.fr(1) * y(a0, a1)).is_int(0)
            }),
            st("solved", |a| {
                let (a0, a1) = (a[0], a[1]);
                x(a0, a1).is(a0.int(1) / a0) && y(a0, a1).is(-a1 / a0.pw(&[1, 0]))
            }),
            st("with_norm", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(1) && x(a0, a1).is(a0.int(1) / a0) && y(a0, a1).is(-a1 / a0.pw(&[1, 0]))
            }),
            st("substituted", |a| {
                let (a0, a1) = (a[0], a[1]);
                a0.norm().is_int(1)
                    && (a0.fr(2) * (a0.fr(1) + a1.pw(&[1, 0])).fr(3) - a1.pw(&[1, 0]) / a0.pw(&[1, 0]))
                        .is(a0.int(1) / a0)
                    && y(a0, a1).is(-a1 / a0.pw(&[1, 0]))
            }),
            st("reduced", |a| {
                let (a0, a1) = (a[0], a[1]);
                let base = a0.fr(1) + a1.pw(&[1, 0]);
                a0.norm().is_int(1)
                    && base.fr(3).is(a0.pw(&[5, 4, 3]) * base)
                    && (a1.fr(4) * a0.fr(3) + a1.fr(2) * (a0.fr(4) + a1.pw(&[4, 3]))).is(-a1 / a0.pw(&[1, 0]))
            }),
        ],
    }
}

fn n6_k3() -> Reduction {
    fn q0<'a>(a: &[V<'a>]) -> V<'a> {
        a[0] * (a[1].fr(2) + a[2].pw(&[2, 1]))
    }
    fn q1<'a>(a: &[V<'a>]) -> V<'a> {
        a[0].fr(1) * a[2].fr(2) + a[1] * (a[1].fr(2) + a[2].pw(&[2, 1]))
    }
    fn q2<'a>(a: &[V<'a>]) -> V<'a> {
        a[0].fr(2) + a[2].fr(2) * a[1].fr(1) + a[2] * (a[1].fr(2) + a[2].pw(&[2, 1]))
    }
    fn c<'a>(a: &[V<'a>]) -> V<'a> {
        a[1].fr(3) + a[2].pw(&[3, 2])
    }
    Reduction {
        name: "n6_k3",
        n: 6,
        k: 3,
        s_values: &[1],
        needs_a1_nonzero: false,
        stages: vec![
            st("raw", |a| {
                (a[0] * q2(a).fr(1)).is_int(1)
                    && (q0(a).fr(1) + a[1] * q2(a).fr(1)).is_int(0)
                    && (q1(a).fr(1) + a[2] * q2(a).fr(1)).is_int(0)
            }),
            st("expanded", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                (a0 * (a0.fr(3) + a2.fr(3) * a1.fr(2) + a2.fr(1) * c(a))).is_int(1)
                    && (a1 / a0 + a0.fr(1) * c(a)).is_int(0)
                    && (a2 / a0 + a2.fr(3) * a0.fr(2) + a1.fr(1) * c(a)).is_int(0)
            }),
            st("with_norm", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                a0.norm().is_int(1)
                    && (a0 * (a0.fr(3) + a2.fr(3) * a1.fr(2) + a2.fr(1) * c(a))).is_int(1)
                    && c(a).is(-a1 / a0.pw(&[0, 1]))
                    && (a2 / a0 + a2.fr(3) * a0.fr(2) + a1.fr(1) * c(a)).is_int(0)
            }),
            st("substituted", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                a0.norm().is_int(1)
                    && (a0 * (a0.fr(3) + a2.fr(3) * a1.fr(2) - a2.fr(1) * a1 / a0.pw(&[0, 1]))).is_int(1)
                    && c(a).is(-a1 / a0.pw(&[0, 1]))
                    && (a2 / a0 + a2.fr(3) * a0.fr(2) - a1.pw(&[1, 0]) / a0.pw(&[0, 1])).is_int(0)
            }),
            st("reduced", |a| {
                let (a0, a1, a2) = (a[0], a[1], a[2]);
                a0.norm().is_int(1)
                    && (a0.pw(&[3, 1, 0]) + a2.fr(3) * a1.fr(2) * a0.pw(&[1, 0]) - a2.fr(1) * a1).is(a0.fr(1))
                    && a2.pw(&[1, 0]).is(-a0.pw(&[3, 2, 1, 0]) * a1.fr(4) - a1.fr(1))
                    && a1.pw(&[1, 0]).is(a2 * a0.fr(1) + a0.pw(&[2, 1, 0]) * a2.fr(3))
            }),
        ],
    }
}

fn n6_k4() -> Reduction {
    fn c<'a>(a: &[V<'a>]) -> V<'a> {
        a[2].fr(2) + a[3].pw(&[2, 1])
    }
    Reduction {
        name: "n6_k4",
        n: 6,
        k: 4,
        s_values: &[1],
        needs_a1_nonzero: false,
        stages: vec![
            st("raw", |a| {
                let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
                (a0 * c(a)).is_int(1)
                    && (a0.fr(1) * a3.fr(2) + a1 * c(a)).is_int(0)
                    && (a0.fr(2) + a3.fr(2) * a1.fr(1) + a2 * c(a)).is_int(0)
                    && (a1.fr(2) + a3.fr(2) * a2.fr(1) + a3 * c(a)).is_int(0)
            }),
            st("with_norm", |a| {
                let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
                a0.norm().is_int(1)
                    && (a0 * c(a)).is_int(1)
                    && (a0.fr(1) * a3.fr(2) + a1 * c(a)).is_int(0)
                    && (a0.fr(2) + a3.fr(2) * a1.fr(1) + a2 * c(a)).is_int(0)
                    && (a1.fr(2) + a3.fr(2) * a2.fr(1) + a3 * c(a)).is_int(0)
            }),
            st("divided", |a| {
                let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
                a0.norm().is_int(1)
                    && c(a).is(a0.int(1) / a0)
                    && (a0.fr(1) * a3.fr(2) + a1 / a0).is_int(0)
                    && (a0.fr(2) + a3.fr(2) * a1.fr(1) + a2 / a0).is_int(0)
                    && (a1.fr(2) + a3.fr(2) * a2.fr(1) + a3 / a0).is_int(0)
            }),
            st("solved", |a| {
                let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
                a0.norm().is_int(1)
                    && (a0 * c(a)).is_int(1)
                    && a1.is(-a0.pw(&[1, 0]) * a3.fr(2))
                    && a2.is(-a0.pw(&[2, 0]) - a3.fr(2) * a1.fr(1) * a0)
                    && a3.is(-a1.fr(2) * a0 - a3.fr(2) * a2.fr(1) * a0)
            }),
            st("reduced", |a| {
                let (a0, a1, a2, a3) = (a[0], a[1], a[2], a[3]);
                a0.norm().is_int(1)
                    && (a0 * (-a0.pw(&[4, 2]) + a3.pw(&[5, 4]) * a0.pw(&[4, 3, 2]) + a3.pw(&[2, 1]))).is_int(1)
                    && a1.is(-a0.pw(&[1, 0]) * a3.fr(2))
                    && a2.is(-a0.pw(&[2, 0]) + a3.pw(&[3, 2]) * a0.pw(&[2, 1, 0]))
                    && a3.is(a3.fr(4) * a0.pw(&[3, 2, 0]) + a3.fr(2) * a0.pw(&[3, 1, 0])
                        - a0.pw(&[3, 2, 1, 0]) * a3.pw(&[4, 3, 2]))
            }),
        ],
    }
}

/// All reduction chains, ordered by (n, k).
pub fn reductions() -> Vec<Reduction> {
    vec![n4_k2(), n5_k2(), n5_k3(), n6_k2(), n6_k3(), n6_k4()]
}

pub fn reduction(name: &str) -> Result<Reduction> {
    reductions()
        .into_iter()
        .find(|r| r.name == name)
        .ok_or_else(|| Error::Precondition(format!("unknown reduction {name:?}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StageCount {
    pub stage: &'static str,
    pub solutions: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ReductionReport {
    pub reduction: &'static str,
    pub field: String,
    pub s: i64,
    pub tuples: u64,
    pub stages: Vec<StageCount>,
    /// Tuples on which some stage disagrees with the raw system.
    pub disagreements: u64,
    /// Example (stage, tuple) for the first disagreement.
    pub first_disagreement: Option<(&'static str, Vec<u32>)>,
    pub equivalent: bool,
}

/// Exhaustively compares every stage with the raw system over all tuples
/// (restricted to a_1 != 0 where the chain requires it).
pub fn check_reduction(ctx: &Arc<FieldCtx>, red: &Reduction, s: i64, budget: u128) -> Result<ReductionReport> {
    if ctx.n() != red.n {
        return Err(Error::Precondition(format!("{} needs n = {}", red.name, red.n)));
    }
    if !red.s_values.contains(&s) {
        return Err(Error::Precondition(format!("{} is stated for s in {:?}", red.name, red.s_values)));
    }
    let needed = sweep_size(ctx, red.k);
    if needed > budget {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let mut counts = vec![0u64; red.stages.len()];
    let mut tuples = 0u64;
    let mut disagreements = 0u64;
    let mut first = None;
    let mut vals: Vec<V> = Vec::with_capacity(red.k);
    for_each_tuple(ctx, red.k, |lower| {
        if red.needs_a1_nonzero && lower[1].is_zero() {
            return;
        }
        tuples += 1;
        vals.clear();
        vals.extend(lower.iter().map(|&z| V::new(ctx, s, z)));
        let raw = (red.stages[0].system)(&vals);
        let mut bad = false;
        for (i, stage) in red.stages.iter().enumerate() {
            let holds = if i == 0 { raw } else { (stage.system)(&vals) };
            if holds {
                counts[i] += 1;
            }
            if holds != raw {
                bad = true;
                if first.is_none() {
                    first = Some((stage.name, lower.iter().map(|z| z.value()).collect()));
                }
            }
        }
        if bad {
            disagreements += 1;
        }
    });
    Ok(ReductionReport {
        reduction: red.name,
        field: ctx.spec_string(),
        s,
        tuples,
        stages: red.stages.iter().zip(&counts).map(|(st, &c)| StageCount { stage: st.name, solutions: c }).collect(),
        disagreements,
        first_disagreement: first,
        equivalent: disagreements == 0,
    })
}
