use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fp;

/// Monomial order tag. Both orders refine the weighted degree where stated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken reverse-lexicographically on the
    /// last differing exponent (smaller exponent wins).
    Grevlex,
    /// Pure lexicographic, first variable dominant.
    Lex,
}

impl MonomialOrder {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "grevlex" => Ok(MonomialOrder::Grevlex),
            "lex" => Ok(MonomialOrder::Lex),
            other => Err(Error::Input(format!(
                "unknown monomial order '{other}' (expected grevlex or lex)"
            ))),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MonomialOrder::Grevlex => "grevlex",
            MonomialOrder::Lex => "lex",
        }
    }
}

/// The ambient polynomial ring S = F_p[x_1..x_n] with a positive weight per
/// variable and a fixed monomial order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RingDescriptor {
    pub p: u64,
    pub names: Vec<String>,
    pub weights: Vec<u64>,
    pub order: MonomialOrder,
}

impl RingDescriptor {
    pub fn new(
        p: u64,
        names: Vec<String>,
        weights: Option<Vec<u64>>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        if !fp::is_prime(p) {
            return Err(Error::Input(format!("p must be prime, got {p}")));
        }
        if p >= 1 << 31 {
            return Err(Error::Capacity(format!("p = {p} too large (need p < 2^31)")));
        }
        if names.is_empty() {
            return Err(Error::Input("at least one variable is required".into()));
        }
        for (i, a) in names.iter().enumerate() {
            if a.is_empty()
                || !a.chars().next().unwrap().is_ascii_alphabetic() && !a.starts_with('_')
                || !a.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            {
                return Err(Error::Input(format!("invalid variable name '{a}'")));
            }
            for b in names.iter().skip(i + 1) {
                if a == b {
                    return Err(Error::Input(format!("duplicate variable name '{a}'")));
                }
            }
        }
        let weights = weights.unwrap_or_else(|| vec![1; names.len()]);
        if weights.len() != names.len() {
            return Err(Error::Input(format!(
                "{} weights for {} variables",
                weights.len(),
                names.len()
            )));
        }
        if weights.iter().any(|&w| w == 0) {
            return Err(Error::Input("weights must be positive".into()));
        }
        Ok(Arc::new(RingDescriptor { p, names, weights, order }))
    }

    /// Shorthand used throughout the tests: weight-1 grevlex ring.
    pub fn simple(p: u64, names: &[&str]) -> Arc<Self> {
        Self::new(p, names.iter().map(|s| s.to_string()).collect(), None, MonomialOrder::Grevlex)
            .expect("valid descriptor")
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// q = p^e, with an explicit capacity error instead of silent overflow.
    pub fn q(&self, e: u32) -> Result<u64> {
        let mut q: u64 = 1;
        for _ in 0..e {
            q = q
                .checked_mul(self.p)
                .ok_or_else(|| Error::Capacity(format!("p^{e} overflows u64")))?;
        }
        Ok(q)
    }

    /// Canonical one-line presentation used for cache keys and report hashes.
    pub fn canonical(&self) -> String {
        let mut s = format!("p={};vars={}", self.p, self.names.join(","));
        s.push_str(&format!(
            ";weights={}",
            self.weights.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(",")
        ));
        s.push_str(&format!(";order={}", self.order.name()));
        s
    }
}

impl fmt::Display for RingDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}[{}]", self.p, self.names.join(","))
    }
}
