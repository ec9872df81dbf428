//! Counting and bounding standard monomials of monomial ideals.
//!
//! The counting recursion splits on a variable x occurring in a non-pure
//! generator: the standard monomials of J partition into those with x-degree
//! zero (counted by J + (x)) and x times the standard monomials of J : x.
//! This route is independent of the inclusion-exclusion staircase counter in
//! the oracle module, which cross-checks it.

use std::collections::HashMap;

use smallvec::SmallVec;

type Exps = SmallVec<[u32; 6]>;

/// Removes generators divisible by another generator (and duplicates).
pub fn minimalize(gens: &[Exps]) -> Vec<Exps> {
    let mut mins: Vec<Exps> = Vec::new();
    let mut sorted: Vec<&Exps> = gens.iter().collect();
    sorted.sort_by_key(|g| g.iter().map(|&e| e as u64).sum::<u64>());
    'outer: for g in sorted {
        for m in &mins {
            if divides(m, g) {
                continue 'outer;
            }
        }
        mins.push(g.clone());
    }
    mins.sort();
    mins
}

fn divides(a: &Exps, b: &Exps) -> bool {
    a.iter().zip(b.iter()).all(|(x, y)| x <= y)
}

/// True when every variable admits a pure power among the generators,
/// which is exactly finite colength for a monomial ideal.
pub fn has_all_pure_powers(mins: &[Exps], nvars: usize) -> bool {
    (0..nvars).all(|j| {
        mins.iter().any(|g| g[j] > 0 && g.iter().enumerate().all(|(k, &e)| k == j || e == 0))
    })
}

pub struct StaircaseCounter {
    count_memo: HashMap<Vec<Exps>, u64>,
    topdeg_memo: HashMap<Vec<Exps>, u64>,
}

impl StaircaseCounter {
    pub fn new() -> Self {
        StaircaseCounter { count_memo: HashMap::new(), topdeg_memo: HashMap::new() }
    }

    /// Number of standard monomials of the monomial ideal generated by
    /// `gens`, or None when infinite.
    pub fn colength(&mut self, gens: &[Exps], nvars: usize) -> Option<u64> {
        let mins = minimalize(gens);
        if !has_all_pure_powers(&mins, nvars) {
            // covers the empty ideal for nvars >= 1
            return if mins.iter().any(|g| g.iter().all(|&e| e == 0)) { Some(0) } else { None };
        }
        Some(self.colength_finite(mins))
    }

    fn colength_finite(&mut self, mins: Vec<Exps>) -> u64 {
        if mins.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return 0;
        }
        if let Some(&c) = self.count_memo.get(&mins) {
            return c;
        }
        let result = match pick_split(&mins) {
            None => {
                // all generators are pure powers x_j^{a_j}; box count
                let mut prod: u64 = 1;
                for g in &mins {
                    let a = *g.iter().find(|&&e| e > 0).unwrap() as u64;
                    prod = prod.saturating_mul(a);
                }
                prod
            }
            Some(j) => {
                let plus = self.colength_finite(minimalize(&add_variable(&mins, j)));
                let colon = self.colength_finite(minimalize(&colon_by_var(&mins, j)));
                plus + colon
            }
        };
        self.count_memo.insert(mins, result);
        result
    }

    /// Max weighted degree over the standard monomials (finite colength
    /// assumed; returns 0 for the zero-count ideal).
    pub fn topdeg(&mut self, gens: &[Exps], nvars: usize, weights: &[u64]) -> Option<u64> {
        let mins = minimalize(gens);
        if !has_all_pure_powers(&mins, nvars) {
            return if mins.iter().any(|g| g.iter().all(|&e| e == 0)) { Some(0) } else { None };
        }
        Some(self.topdeg_finite(mins, weights))
    }

    fn topdeg_finite(&mut self, mins: Vec<Exps>, weights: &[u64]) -> u64 {
        if mins.iter().any(|g| g.iter().all(|&e| e == 0)) {
            return 0;
        }
        if let Some(&d) = self.topdeg_memo.get(&mins) {
            return d;
        }
        let result = match pick_split(&mins) {
            None => {
                let mut top: u64 = 0;
                for g in &mins {
                    let (j, &a) = g.iter().enumerate().find(|(_, &e)| e > 0).unwrap();
                    top += (a as u64 - 1) * weights[j];
                }
                top
            }
            Some(j) => {
                let plus = self.topdeg_finite(minimalize(&add_variable(&mins, j)), weights);
                let colon =
                    weights[j] + self.topdeg_finite(minimalize(&colon_by_var(&mins, j)), weights);
                plus.max(colon)
            }
        };
        self.topdeg_memo.insert(mins, result);
        result
    }
}

/// Index of a variable occurring in some non-pure-power generator, or None
/// when every generator is a pure power.
fn pick_split(mins: &[Exps]) -> Option<usize> {
    for g in mins {
        let support: Vec<usize> =
            g.iter().enumerate().filter(|(_, &e)| e > 0).map(|(j, _)| j).collect();
        if support.len() > 1 {
            return Some(support[0]);
        }
    }
    None
}

fn add_variable(mins: &[Exps], j: usize) -> Vec<Exps> {
    let mut out: Vec<Exps> = mins.iter().filter(|g| g[j] == 0).cloned().collect();
    let mut xj: Exps = smallvec::smallvec![0; mins[0].len()];
    xj[j] = 1;
    out.push(xj);
    out
}

fn colon_by_var(mins: &[Exps], j: usize) -> Vec<Exps> {
    mins.iter()
        .map(|g| {
            let mut h = g.clone();
            if h[j] > 0 {
                h[j] -= 1;
            }
            h
        })
        .collect()
}

/// All monomial exponent vectors of exact weighted degree `target` avoiding
/// divisibility by any of `mins` (standard monomials of a fixed degree).
pub fn standard_monomials_of_degree(
    mins: &[Exps],
    nvars: usize,
    weights: &[u64],
    target: u64,
) -> Vec<Exps> {
    let mut out = Vec::new();
    let mut current: Exps = smallvec::smallvec![0; nvars];
    rec_enumerate(mins, weights, target, 0, &mut current, &mut out);
    out
}

fn rec_enumerate(
    mins: &[Exps],
    weights: &[u64],
    remaining: u64,
    j: usize,
    current: &mut Exps,
    out: &mut Vec<Exps>,
) {
    if j == current.len() {
        if remaining == 0 && !mins.iter().any(|g| divides(g, current)) {
            out.push(current.clone());
        }
        return;
    }
    if j == current.len() - 1 {
        if remaining % weights[j] == 0 {
            let e = remaining / weights[j];
            if e <= u32::MAX as u64 {
                current[j] = e as u32;
                rec_enumerate(mins, weights, 0, j + 1, current, out);
                current[j] = 0;
            }
        }
        return;
    }
    let max_e = remaining / weights[j];
    for e in 0..=max_e.min(u32::MAX as u64) {
        current[j] = e as u32;
        rec_enumerate(mins, weights, remaining - e * weights[j], j + 1, current, out);
    }
    current[j] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ex(v: &[u32]) -> Exps {
        SmallVec::from_slice(v)
    }

    #[test]
    fn box_count() {
        let mut c = StaircaseCounter::new();
        // (x^2, y^3): 2x3 box
        assert_eq!(c.colength(&[ex(&[2, 0]), ex(&[0, 3])], 2), Some(6));
        assert_eq!(c.topdeg(&[ex(&[2, 0]), ex(&[0, 3])], 2, &[1, 1]), Some(3));
    }

    #[test]
    fn node_staircase() {
        let mut c = StaircaseCounter::new();
        // (xy, x^q, y^q) has colength 2q-1
        for q in [5u32, 25, 125] {
            let gens = vec![ex(&[1, 1]), ex(&[q, 0]), ex(&[0, q])];
            assert_eq!(c.colength(&gens, 2), Some(2 * q as u64 - 1));
            assert_eq!(c.topdeg(&gens, 2, &[1, 1]), Some(q as u64 - 1));
        }
    }

    #[test]
    fn infinite_flags() {
        let mut c = StaircaseCounter::new();
        assert_eq!(c.colength(&[ex(&[1, 1])], 2), None);
        assert_eq!(c.colength(&[], 2), None);
        // unit ideal
        assert_eq!(c.colength(&[ex(&[0, 0])], 2), Some(0));
    }

    #[test]
    fn degree_enumeration() {
        let mins = vec![ex(&[1, 1])];
        // degree 3 monomials avoiding xy: x^3 and y^3
        let found = standard_monomials_of_degree(&mins, 2, &[1, 1], 3);
        assert_eq!(found.len(), 2);
    }
}
