use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::fp;
use crate::monomial::{order_compare, Monomial};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Term {
    pub coeff: u64,
    pub mon: Monomial,
}

/// Exact multivariate polynomial over F_p, terms strictly descending in the
/// descriptor's monomial order, no zero coefficients, no duplicate monomials.
/// The zero polynomial is the empty term list.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    desc: Arc<RingDescriptor>,
    terms: Vec<Term>,
}

/// Result of `weighted_degree`: either the common degree of a homogeneous
/// polynomial or the explicit inhomogeneity marker.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DegreeOf {
    Homogeneous(u64),
    Inhomogeneous,
}

impl Polynomial {
    pub fn zero(desc: &Arc<RingDescriptor>) -> Self {
        Polynomial { desc: desc.clone(), terms: Vec::new() }
    }

    pub fn constant(desc: &Arc<RingDescriptor>, c: u64) -> Self {
        let c = c % desc.p;
        if c == 0 {
            return Self::zero(desc);
        }
        Polynomial {
            desc: desc.clone(),
            terms: vec![Term { coeff: c, mon: Monomial::one(desc.nvars()) }],
        }
    }

    pub fn one(desc: &Arc<RingDescriptor>) -> Self {
        Self::constant(desc, 1)
    }

    pub fn var(desc: &Arc<RingDescriptor>, j: usize) -> Self {
        Polynomial {
            desc: desc.clone(),
            terms: vec![Term { coeff: 1, mon: Monomial::var(desc, j) }],
        }
    }

    pub fn monomial(desc: &Arc<RingDescriptor>, coeff: u64, mon: Monomial) -> Self {
        let coeff = coeff % desc.p;
        if coeff == 0 {
            return Self::zero(desc);
        }
        Polynomial { desc: desc.clone(), terms: vec![Term { coeff, mon }] }
    }

    /// Builds a polynomial from unnormalized (coefficient, monomial) pairs:
    /// sorts, merges duplicates, drops zeros.
    pub fn from_terms(desc: &Arc<RingDescriptor>, terms: Vec<(u64, Monomial)>) -> Self {
        let p = desc.p;
        let mut acc: HashMap<Monomial, u64> = HashMap::with_capacity(terms.len());
        for (c, m) in terms {
            let c = c % p;
            if c == 0 {
                continue;
            }
            let slot = acc.entry(m).or_insert(0);
            *slot = fp::add(*slot, c, p);
        }
        let mut out: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(mon, coeff)| Term { coeff, mon })
            .collect();
        out.sort_by(|a, b| order_compare(&b.mon, &a.mon, desc.order));
        Polynomial { desc: desc.clone(), terms: out }
    }

    pub fn descriptor(&self) -> &Arc<RingDescriptor> {
        &self.desc
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading(&self) -> Option<&Term> {
        self.terms.first()
    }

    /// The coefficient of the degree-0 monomial, 0 if absent.
    pub fn constant_coeff(&self) -> u64 {
        self.terms.iter().find(|t| t.mon.is_one()).map(|t| t.coeff).unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.len() <= 1 && self.terms.iter().all(|t| t.mon.is_one())
    }

    fn check_same(&self, other: &Polynomial) -> Result<()> {
        if self.desc != other.desc {
            return Err(Error::DescriptorMismatch(format!(
                "{} vs {}",
                self.desc.canonical(),
                other.desc.canonical()
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        let p = self.desc.p;
        let order = self.desc.order;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0usize, 0usize);
        while i < self.terms.len() && j < other.terms.len() {
            let a = &self.terms[i];
            let b = &other.terms[j];
            match order_compare(&a.mon, &b.mon, order) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other { fp::neg(b.coeff, p) } else { b.coeff };
                    out.push(Term { coeff: c, mon: b.mon.clone() });
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        fp::sub(a.coeff, b.coeff, p)
                    } else {
                        fp::add(a.coeff, b.coeff, p)
                    };
                    if c != 0 {
                        out.push(Term { coeff: c, mon: a.mon.clone() });
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.terms[i..]);
        for b in &other.terms[j..] {
            let c = if negate_other { fp::neg(b.coeff, p) } else { b.coeff };
            out.push(Term { coeff: c, mon: b.mon.clone() });
        }
        Polynomial { desc: self.desc.clone(), terms: out }
    }

    pub fn neg(&self) -> Polynomial {
        let p = self.desc.p;
        Polynomial {
            desc: self.desc.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: fp::neg(t.coeff, p), mon: t.mon.clone() })
                .collect(),
        }
    }

    pub fn mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_same(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.desc));
        }
        let p = self.desc.p;
        let mut acc: HashMap<Monomial, u64> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for a in &self.terms {
            for b in &other.terms {
                let m = a.mon.mul(&b.mon)?;
                let c = fp::mul(a.coeff, b.coeff, p);
                let slot = acc.entry(m).or_insert(0);
                *slot = fp::add(*slot, c, p);
            }
        }
        let mut out: Vec<Term> = acc
            .into_iter()
            .filter(|(_, c)| *c != 0)
            .map(|(mon, coeff)| Term { coeff, mon })
            .collect();
        out.sort_by(|a, b| order_compare(&b.mon, &a.mon, self.desc.order));
        Ok(Polynomial { desc: self.desc.clone(), terms: out })
    }

    /// self * c*mu for a scalar c and monomial mu.
    pub fn mul_term(&self, c: u64, mu: &Monomial) -> Result<Polynomial> {
        let p = self.desc.p;
        let c = c % p;
        if c == 0 || self.is_zero() {
            return Ok(Self::zero(&self.desc));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term { coeff: fp::mul(t.coeff, c, p), mon: t.mon.mul(mu)? });
        }
        // multiplying by a fixed monomial preserves the term order
        Ok(Polynomial { desc: self.desc.clone(), terms })
    }

    pub fn scale(&self, c: u64) -> Polynomial {
        let p = self.desc.p;
        let c = c % p;
        if c == 0 {
            return Self::zero(&self.desc);
        }
        Polynomial {
            desc: self.desc.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| Term { coeff: fp::mul(t.coeff, c, p), mon: t.mon.clone() })
                .collect(),
        }
    }

    /// f^(p^e) by scaling every exponent vector by q = p^e and keeping the
    /// coefficients fixed; valid over the prime field in characteristic p.
    pub fn frobenius_power(&self, e: u32) -> Result<Polynomial> {
        let q = self.desc.q(e)?;
        if q == 1 {
            return Ok(self.clone());
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            terms.push(Term { coeff: t.coeff, mon: t.mon.power(q, &self.desc.weights)? });
        }
        // exponent scaling by q >= 1 preserves both orders
        Ok(Polynomial { desc: self.desc.clone(), terms })
    }

    /// Plain q-th power by repeated multiplication (test oracle for
    /// `frobenius_power`; also used for non-Frobenius exponents).
    pub fn pow(&self, mut n: u64) -> Result<Polynomial> {
        let mut acc = Self::one(&self.desc);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Common weighted degree of a homogeneous nonzero polynomial, or the
    /// inhomogeneity marker. Zero polynomial is an error.
    pub fn weighted_degree(&self) -> Result<DegreeOf> {
        let first = self.terms.first().ok_or(Error::UndefinedDegree)?;
        let d = first.mon.deg;
        if self.terms.iter().all(|t| t.mon.deg == d) {
            Ok(DegreeOf::Homogeneous(d))
        } else {
            Ok(DegreeOf::Inhomogeneous)
        }
    }

    /// Substitutes `replacement` for variable j in self.
    pub fn substitute(&self, j: usize, replacement: &Polynomial) -> Result<Polynomial> {
        let desc = &self.desc;
        let mut out = Self::zero(desc);
        // cache powers of the replacement
        let mut powers: Vec<Polynomial> = vec![Self::one(desc)];
        for t in &self.terms {
            let e = t.mon.exps[j] as usize;
            while powers.len() <= e {
                let next = powers.last().unwrap().mul(replacement)?;
                powers.push(next);
            }
            let mut rest_exps = t.mon.exps.clone();
            rest_exps[j] = 0;
            let rest = Monomial::from_exps(desc, &rest_exps)?;
            let piece = powers[e].mul_term(t.coeff, &rest)?;
            out = out.add(&piece)?;
        }
        Ok(out)
    }
}

impl fmt::Display for Polynomial {
    /// Canonical text form; re-parses to the identical polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, t) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " + ")?;
            }
            let mut factors: Vec<String> = Vec::new();
            for (j, &e) in t.mon.exps.iter().enumerate() {
                if e == 1 {
                    factors.push(self.desc.names[j].clone());
                } else if e > 1 {
                    factors.push(format!("{}^{}", self.desc.names[j], e));
                }
            }
            if factors.is_empty() {
                write!(f, "{}", t.coeff)?;
            } else if t.coeff == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{}*{}", t.coeff, factors.join("*"))?;
            }
        }
        Ok(())
    }
}
