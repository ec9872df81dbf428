use std::sync::Arc;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::monomial::Monomial;
use crate::poly::{DegreeOf, Polynomial, Term};

/// Element of a free module S^rank: one polynomial per basis position.
/// Grading shifts of the ambient basis are carried by the caller (complexes
/// store them per module); `degree_with_shifts` evaluates against them.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VectorElement {
    pub components: Vec<Polynomial>,
}

impl VectorElement {
    pub fn zero(desc: &Arc<RingDescriptor>, rank: usize) -> Self {
        VectorElement { components: vec![Polynomial::zero(desc); rank] }
    }

    pub fn from_poly(f: Polynomial) -> Self {
        VectorElement { components: vec![f] }
    }

    /// f * e_pos in a rank-`rank` module.
    pub fn unit(desc: &Arc<RingDescriptor>, rank: usize, pos: usize, f: Polynomial) -> Self {
        let mut v = Self::zero(desc, rank);
        v.components[pos] = f;
        v
    }

    pub fn rank(&self) -> usize {
        self.components.len()
    }

    pub fn is_zero(&self) -> bool {
        self.components.iter().all(|c| c.is_zero())
    }

    /// Leading (position, term) under position-over-term: the first nonzero
    /// component dominates, so its leading term is the vector's leading term.
    pub fn lead(&self) -> Option<(usize, &Term)> {
        self.components
            .iter()
            .enumerate()
            .find(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p, c.leading().unwrap()))
    }

    pub fn add(&self, other: &VectorElement) -> Result<VectorElement> {
        self.zip(other, Polynomial::add)
    }

    pub fn sub(&self, other: &VectorElement) -> Result<VectorElement> {
        self.zip(other, Polynomial::sub)
    }

    fn zip(
        &self,
        other: &VectorElement,
        op: impl Fn(&Polynomial, &Polynomial) -> Result<Polynomial>,
    ) -> Result<VectorElement> {
        if self.rank() != other.rank() {
            return Err(Error::DescriptorMismatch(format!(
                "module ranks differ: {} vs {}",
                self.rank(),
                other.rank()
            )));
        }
        let components = self
            .components
            .iter()
            .zip(other.components.iter())
            .map(|(a, b)| op(a, b))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorElement { components })
    }

    pub fn mul_term(&self, c: u64, mu: &Monomial) -> Result<VectorElement> {
        let components = self
            .components
            .iter()
            .map(|f| f.mul_term(c, mu))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorElement { components })
    }

    pub fn mul_poly(&self, f: &Polynomial) -> Result<VectorElement> {
        let components = self
            .components
            .iter()
            .map(|g| g.mul(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorElement { components })
    }

    pub fn scale(&self, c: u64) -> VectorElement {
        VectorElement { components: self.components.iter().map(|f| f.scale(c)).collect() }
    }

    pub fn neg(&self) -> VectorElement {
        VectorElement { components: self.components.iter().map(|f| f.neg()).collect() }
    }

    /// Homogeneous vector degree against basis shifts: every nonzero
    /// component i must be homogeneous with degree + shift_i constant.
    pub fn degree_with_shifts(&self, shifts: &[i64]) -> Result<Option<i64>> {
        let mut deg: Option<i64> = None;
        for (i, c) in self.components.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            match c.weighted_degree()? {
                DegreeOf::Inhomogeneous => return Ok(None),
                DegreeOf::Homogeneous(d) => {
                    let total = d as i64 + shifts[i];
                    match deg {
                        None => deg = Some(total),
                        Some(existing) if existing == total => {}
                        Some(_) => return Ok(None),
                    }
                }
            }
        }
        Ok(deg)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;

    #[test]
    fn pot_lead_is_first_nonzero_component() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let v = VectorElement {
            components: vec![
                Polynomial::zero(&d),
                parse_polynomial(&d, "x^2 + y").unwrap(),
                parse_polynomial(&d, "x^9").unwrap(),
            ],
        };
        let (pos, t) = v.lead().unwrap();
        assert_eq!(pos, 1);
        assert_eq!(t.mon.exps.as_slice(), &[2, 0]);
    }

    #[test]
    fn homogeneous_degree_with_shifts() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let v = VectorElement {
            components: vec![
                parse_polynomial(&d, "y").unwrap(),
                parse_polynomial(&d, "-x").unwrap(),
            ],
        };
        assert_eq!(v.degree_with_shifts(&[1, 1]).unwrap(), Some(2));
        assert_eq!(v.degree_with_shifts(&[1, 2]).unwrap(), None);
    }
}
