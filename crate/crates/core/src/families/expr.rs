//! Tiny expression layer for writing coefficient identities.
//!
//! Values carry the field and the automorphism σ = q^s. Division by zero yields
//! an undefined value, and any identity involving an undefined value is false.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::gf::{Elem, FieldCtx};

#[derive(Clone, Copy)]
pub(crate) struct V<'a> {
    ctx: &'a FieldCtx,
    s: i64,
    z: Option<Elem>,
}

impl<'a> V<'a> {
    pub(crate) fn new(ctx: &'a FieldCtx, s: i64, z: Elem) -> Self {
        V { ctx, s, z: Some(z) }
    }

    pub(crate) fn value(self) -> Option<Elem> {
        self.z
    }

    pub(crate) fn int(self, c: i64) -> Self {
        V { z: Some(self.ctx.from_int(c)), ..self }
    }

    /// z^{σ^j}
    pub(crate) fn fr(self, j: i64) -> Self {
        V { z: self.z.map(|z| self.ctx.frobenius_q(z, self.s * j)), ..self }
    }

    /// z^{σ^{j_1} + σ^{j_2} + ...}
    pub(crate) fn pw(self, js: &[i64]) -> Self {
        js.iter().fold(self.int(1), |acc, &j| acc * self.fr(j))
    }

    /// N_{q^n/q}(z)
    pub(crate) fn norm(self) -> Self {
        V { z: self.z.map(|z| self.ctx.norm(z)), ..self }
    }

    pub(crate) fn is(self, other: V<'_>) -> bool {
        matches!((self.z, other.z), (Some(a), Some(b)) if a == b)
    }

    pub(crate) fn is_int(self, c: i64) -> bool {
        self.is(self.int(c))
    }
}

impl<'a> Add for V<'a> {
    type Output = V<'a>;
    fn add(self, o: V<'a>) -> V<'a> {
        V { z: self.z.zip(o.z).map(|(a, b)| self.ctx.add(a, b)), ..self }
    }
}

impl<'a> Sub for V<'a> {
    type Output = V<'a>;
    fn sub(self, o: V<'a>) -> V<'a> {
        V { z: self.z.zip(o.z).map(|(a, b)| self.ctx.sub(a, b)), ..self }
    }
}

impl<'a> Mul for V<'a> {
    type Output = V<'a>;
    fn mul(self, o: V<'a>) -> V<'a> {
        V { z: self.z.zip(o.z).map(|(a, b)| self.ctx.mul(a, b)), ..self }
    }
}

impl<'a> Div for V<'a> {
    type Output = V<'a>;
    fn div(self, o: V<'a>) -> V<'a> {
        let z = match (self.z, o.z) {
            (Some(a), Some(b)) if !b.is_zero() => Some(self.ctx.div(a, b)),
            _ => None,
        };
        V { z, ..self }
    }
}

impl<'a> Neg for V<'a> {
    type Output = V<'a>;
    fn neg(self) -> V<'a> {
        V { z: self.z.map(|a| self.ctx.neg(a)), ..self }
    }
}
