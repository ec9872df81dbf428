use std::cmp::Ordering;

use smallvec::SmallVec;

use crate::descriptor::{MonomialOrder, RingDescriptor};
use crate::error::{Error, Result};

/// Exponent vector with its weighted degree cached. The weighted degree is
/// always recomputable from the exponents and the descriptor weights.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    pub exps: SmallVec<[u32; 6]>,
    pub deg: u64,
}

impl Monomial {
    pub fn one(n: usize) -> Self {
        Monomial { exps: smallvec::smallvec![0; n], deg: 0 }
    }

    pub fn var(desc: &RingDescriptor, j: usize) -> Self {
        let mut exps: SmallVec<[u32; 6]> = smallvec::smallvec![0; desc.nvars()];
        exps[j] = 1;
        Monomial { exps, deg: desc.weights[j] }
    }

    pub fn from_exps(desc: &RingDescriptor, exps: &[u32]) -> Result<Self> {
        assert_eq!(exps.len(), desc.nvars());
        let deg = weighted_degree_of(exps, &desc.weights)?;
        Ok(Monomial { exps: SmallVec::from_slice(exps), deg })
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Result<Monomial> {
        let mut exps = self.exps.clone();
        for (a, b) in exps.iter_mut().zip(other.exps.iter()) {
            *a = a
                .checked_add(*b)
                .ok_or_else(|| Error::Capacity("monomial exponent overflow".into()))?;
        }
        let deg = self
            .deg
            .checked_add(other.deg)
            .ok_or_else(|| Error::Capacity("monomial degree overflow".into()))?;
        Ok(Monomial { exps, deg })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// other / self; caller must ensure divisibility.
    pub fn quotient(&self, other: &Monomial) -> Monomial {
        debug_assert!(self.divides(other));
        let exps: SmallVec<[u32; 6]> =
            other.exps.iter().zip(self.exps.iter()).map(|(b, a)| b - a).collect();
        Monomial { exps, deg: other.deg - self.deg }
    }

    pub fn lcm(&self, other: &Monomial, weights: &[u64]) -> Result<Monomial> {
        let exps: SmallVec<[u32; 6]> =
            self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        let deg = weighted_degree_of(&exps, weights)?;
        Ok(Monomial { exps, deg })
    }

    pub fn gcd_is_one(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Scales every exponent by q (the Frobenius action on monomials).
    pub fn power(&self, q: u64, weights: &[u64]) -> Result<Monomial> {
        let mut exps: SmallVec<[u32; 6]> = SmallVec::with_capacity(self.exps.len());
        for &a in &self.exps {
            let scaled = (a as u64)
                .checked_mul(q)
                .ok_or_else(|| Error::Capacity("frobenius exponent overflow".into()))?;
            if scaled > u32::MAX as u64 {
                return Err(Error::Capacity(format!(
                    "frobenius exponent {scaled} exceeds the u32 exponent capacity"
                )));
            }
            exps.push(scaled as u32);
        }
        let deg = weighted_degree_of(&exps, weights)?;
        Ok(Monomial { exps, deg })
    }

    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j)
    }
}

pub fn weighted_degree_of(exps: &[u32], weights: &[u64]) -> Result<u64> {
    let mut deg: u64 = 0;
    for (&e, &w) in exps.iter().zip(weights.iter()) {
        let t = (e as u64)
            .checked_mul(w)
            .ok_or_else(|| Error::Capacity("weighted degree overflow".into()))?;
        deg = deg
            .checked_add(t)
            .ok_or_else(|| Error::Capacity("weighted degree overflow".into()))?;
    }
    Ok(deg)
}

/// Total order on monomials of one ring. Grevlex compares the cached weighted
/// degree first; lex ignores degree entirely.
pub fn order_compare(a: &Monomial, b: &Monomial, order: MonomialOrder) -> Ordering {
    match order {
        MonomialOrder::Grevlex => match a.deg.cmp(&b.deg) {
            Ordering::Equal => {
                for j in (0..a.exps.len()).rev() {
                    match a.exps[j].cmp(&b.exps[j]) {
                        Ordering::Equal => continue,
                        // smaller exponent in the last differing slot wins
                        Ordering::Less => return Ordering::Greater,
                        Ordering::Greater => return Ordering::Less,
                    }
                }
                Ordering::Equal
            }
            other => other,
        },
        MonomialOrder::Lex => {
            for j in 0..a.exps.len() {
                match a.exps[j].cmp(&b.exps[j]) {
                    Ordering::Equal => continue,
                    other => return other,
                }
            }
            Ordering::Equal
        }
    }
}

/// Position-over-term order on (position, monomial) pairs: a smaller position
/// index dominates, ties fall through to the ring order.
pub fn pot_compare(
    a: (usize, &Monomial),
    b: (usize, &Monomial),
    order: MonomialOrder,
) -> Ordering {
    match a.0.cmp(&b.0) {
        Ordering::Equal => order_compare(a.1, b.1, order),
        Ordering::Less => Ordering::Greater,
        Ordering::Greater => Ordering::Less,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(desc: &RingDescriptor, exps: &[u32]) -> Monomial {
        Monomial::from_exps(desc, exps).unwrap()
    }

    #[test]
    fn grevlex_examples() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        // x^2 vs x*y
        assert_eq!(order_compare(&m(&d, &[2, 0]), &m(&d, &[1, 1]), MonomialOrder::Grevlex), Ordering::Greater);
        let mm = m(&d, &[3, 1]);
        assert_eq!(order_compare(&mm, &mm, MonomialOrder::Grevlex), Ordering::Equal);
    }

    #[test]
    fn lex_dominance() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        // x*y^2 vs y^5 under lex with x > y
        assert_eq!(order_compare(&m(&d, &[1, 2]), &m(&d, &[0, 5]), MonomialOrder::Lex), Ordering::Greater);
    }

    #[test]
    fn weighted_degree() {
        let d = RingDescriptor::new(
            5,
            vec!["x".into(), "y".into()],
            Some(vec![2, 3]),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert_eq!(m(&d, &[3, 0]).deg, 6);
        assert_eq!(m(&d, &[0, 2]).deg, 6);
    }

    #[test]
    fn divisibility_and_quotient() {
        let d = RingDescriptor::simple(5, &["x", "y", "z"]);
        let a = m(&d, &[1, 2, 0]);
        let b = m(&d, &[2, 2, 1]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient(&b), m(&d, &[1, 0, 1]));
        assert_eq!(a.lcm(&m(&d, &[0, 3, 1]), &d.weights).unwrap(), m(&d, &[1, 3, 1]));
    }

    #[test]
    fn frobenius_power_on_monomials() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let a = m(&d, &[1, 2]);
        assert_eq!(a.power(5, &d.weights).unwrap(), m(&d, &[5, 10]));
    }
}
