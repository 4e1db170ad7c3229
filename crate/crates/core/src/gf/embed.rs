use super::{Elem, FieldCtx};
use crate::error::{Error, Result};

/// Field embedding F_{q^n} -> F_{q^{nm}} fixing F_p, realised as a lookup table.
#[derive(Clone, Debug)]
pub struct Embedding {
    image: Vec<Elem>,
}

impl Embedding {
    /// Sends the residue class of x to the first root (in encoding order) of the
    /// small field's modulus inside the matching subfield of `big`.
    pub(crate) fn new(small: &FieldCtx, big: &FieldCtx) -> Result<Self> {
        if small.p != big.p || small.e != big.e || !big.n.is_multiple_of(small.n) {
            return Err(Error::Precondition(format!(
                "cannot embed {} into {}",
                small.spec_string(),
                big.spec_string()
            )));
        }
        let candidates = big.subfield_elements(small.n)?;
        let root = candidates
            .into_iter()
            .find(|&r| {
                small
                    .modulus
                    .iter()
                    .rev()
                    .fold(Elem::ZERO, |acc, &c| big.add(big.mul(acc, r), big.from_int(c as i64)))
                    .is_zero()
            })
            .ok_or_else(|| Error::Internal("modulus has no root in the target subfield".into()))?;
        let d = small.modulus.len() - 1;
        let powers: Vec<Elem> = (0..d as u64).map(|i| big.pow(root, i)).collect();
        let image = small
            .elements()
            .map(|z| {
                small
                    .coeffs(z)
                    .iter()
                    .zip(&powers)
                    .fold(Elem::ZERO, |acc, (&c, &r)| big.add(acc, big.mul(big.from_int(c as i64), r)))
            })
            .collect();
        Ok(Embedding { image })
    }

    pub fn apply(&self, z: Elem) -> Elem {
        self.image[z.0 as usize]
    }
}
