//! Independent brute-force engine: dense degreewise linear algebra over F_p
//! and inclusion-exclusion staircase counting. Validates every exact length
//! the Groebner path produces.

use smallvec::SmallVec;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::fp;
use crate::groebner::normal_form;
use crate::homology::homology_presentation;
use crate::monomial::Monomial;
use crate::staircase::{minimalize, standard_monomials_of_degree};
use crate::vector::VectorElement;

type Exps = SmallVec<[u32; 6]>;

/// Rank of a dense matrix over F_p by Gaussian elimination.
pub fn gf_rank(mut m: Vec<Vec<u64>>, p: u64) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut rank = 0;
    let mut pivot_row = 0;
    for col in 0..cols {
        let mut sel = None;
        for r in pivot_row..rows {
            if m[r][col] % p != 0 {
                sel = Some(r);
                break;
            }
        }
        let Some(sel) = sel else { continue };
        m.swap(pivot_row, sel);
        let inv = fp::inv(m[pivot_row][col] % p, p);
        for c in col..cols {
            m[pivot_row][c] = fp::mul(m[pivot_row][c] % p, inv, p);
        }
        for r in 0..rows {
            if r != pivot_row && m[r][col] % p != 0 {
                let factor = m[r][col] % p;
                for c in col..cols {
                    let t = fp::mul(factor, m[pivot_row][c], p);
                    m[r][c] = fp::sub(m[r][c] % p, t, p);
                }
            }
        }
        rank += 1;
        pivot_row += 1;
        if pivot_row == rows {
            break;
        }
    }
    rank
}

/// Counts lattice points outside the staircase of a monomial ideal by
/// inclusion-exclusion over generator lcms with divisibility pruning;
/// None flags an infinite count (some variable has no pure-power bound).
pub fn staircase_length(gens: &[Monomial], nvars: usize) -> Option<u64> {
    let exps: Vec<Exps> = gens.iter().map(|m| m.exps.clone()).collect();
    let mins = minimalize(&exps);
    if mins.iter().any(|g| g.iter().all(|&e| e == 0)) {
        return Some(0);
    }
    // pure-power bound per variable
    let mut bounds: Vec<u64> = vec![0; nvars];
    for j in 0..nvars {
        let pure = mins
            .iter()
            .filter(|g| g[j] > 0 && g.iter().enumerate().all(|(k, &e)| k == j || e == 0))
            .map(|g| g[j] as u64)
            .min();
        match pure {
            Some(b) => bounds[j] = b,
            None => return None,
        }
    }
    // #standard = sum over subsets T of gens of (-1)^|T| * #multiples of
    // lcm(T) inside the bound box
    let box_count = |lcm: &[u64]| -> u64 {
        let mut prod: u64 = 1;
        for j in 0..nvars {
            if lcm[j] >= bounds[j] {
                return 0;
            }
            prod = prod.saturating_mul(bounds[j] - lcm[j]);
        }
        prod
    };
    let mut total: i128 = 0;
    let mut stack: Vec<(usize, Vec<u64>, i32)> = vec![(0, vec![0; nvars], 1)];
    while let Some((start, lcm, sign)) = stack.pop() {
        total += sign as i128 * box_count(&lcm) as i128;
        for k in start..mins.len() {
            let mut next = lcm.clone();
            let mut changed = false;
            for j in 0..nvars {
                let e = mins[k][j] as u64;
                if e > next[j] {
                    next[j] = e;
                    changed = true;
                }
            }
            // pruning: a generator dividing the current lcm flips the sign of
            // an identical box and is skipped by requiring a strict change
            if !changed && start > 0 {
                continue;
            }
            if next.iter().zip(bounds.iter()).any(|(l, b)| l >= b) {
                continue;
            }
            stack.push((k + 1, next, -sign));
        }
    }
    Some(total as u64)
}

/// Per-degree dims of H_i(C) up to weighted degree `bound`, by dense rank
/// computations over the standard-monomial bases of R in each degree.
pub struct DenseHomology {
    pub per_degree: Vec<(i64, u64)>,
    pub total: u64,
    pub bound: i64,
}

pub fn dense_degreewise_homology(
    c: &FreeComplex,
    i: usize,
    bound: i64,
) -> Result<DenseHomology> {
    if i > c.length() {
        return Err(Error::Precondition(format!(
            "spot {i} beyond complex length {}",
            c.length()
        )));
    }
    let ring = &c.ring;
    let desc = &ring.desc;
    let p = desc.p;
    let n = desc.nvars();
    let ring_leads: Vec<Exps> = ring.gb.leads_at(0);

    // basis of F_j in degree t: (position b, standard monomial mu) with
    // deg(mu) + shift_j[b] = t
    let basis_of = |j: usize, t: i64| -> Vec<(usize, Exps)> {
        let mut out = Vec::new();
        if j > c.length() {
            return out;
        }
        for b in 0..c.rank(j) {
            let need = t - c.shifts[j][b];
            if need < 0 {
                continue;
            }
            for m in standard_monomials_of_degree(&ring_leads, n, &desc.weights, need as u64) {
                out.push((b, m));
            }
        }
        out
    };

    // expands matrix-times-basis-vector into coordinates over basis_prev
    let column_coords = |mat: &crate::complex::Mat,
                         b: usize,
                         mu: &Exps,
                         basis_prev: &[(usize, Exps)]|
     -> Result<Vec<u64>> {
        let mon = Monomial::from_exps(desc, mu)?;
        let mut coords = vec![0u64; basis_prev.len()];
        for a in 0..mat.rows {
            let entry = mat.at(a, b);
            if entry.is_zero() {
                continue;
            }
            let moved = entry.mul_term(1, &mon)?;
            let nf = if ring.ideal_gens.is_empty() {
                moved
            } else {
                let v = VectorElement::from_poly(moved);
                normal_form(&v, &ring.gb, false)?.0.components.into_iter().next().unwrap()
            };
            for term in nf.terms() {
                let idx = basis_prev
                    .iter()
                    .position(|(bp, mp)| *bp == a && mp == &term.mon.exps)
                    .ok_or_else(|| {
                        Error::Internal("standard monomial missing from dense basis".into())
                    })?;
                coords[idx] = fp::add(coords[idx], term.coeff, p);
            }
        }
        Ok(coords)
    };

    let mut per_degree = Vec::new();
    let mut total: u64 = 0;
    for t in 0..=bound {
        let basis_i = basis_of(i, t);
        if basis_i.is_empty() {
            continue;
        }
        let rank_out = if i >= 1 {
            let basis_prev = basis_of(i - 1, t);
            let mat = c.matrix(i).expect("i >= 1 within length");
            let mut cols = Vec::with_capacity(basis_i.len());
            for (b, mu) in &basis_i {
                cols.push(column_coords(mat, *b, mu, &basis_prev)?);
            }
            // transpose into rows over basis_prev
            let rows = basis_prev.len();
            let m: Vec<Vec<u64>> =
                (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
            gf_rank(m, p)
        } else {
            0
        };
        let rank_in = if i + 1 <= c.length() {
            let basis_next = basis_of(i + 1, t);
            if basis_next.is_empty() {
                0
            } else {
                let mat = c.matrix(i + 1).unwrap();
                let mut cols = Vec::with_capacity(basis_next.len());
                for (b, mu) in &basis_next {
                    cols.push(column_coords(mat, *b, mu, &basis_i)?);
                }
                let rows = basis_i.len();
                let m: Vec<Vec<u64>> =
                    (0..rows).map(|r| cols.iter().map(|c| c[r]).collect()).collect();
                gf_rank(m, p)
            }
        } else {
            0
        };
        let dim = basis_i.len() as u64 - rank_out as u64 - rank_in as u64;
        if dim > 0 {
            per_degree.push((t, dim));
        }
        total += dim;
    }
    Ok(DenseHomology { per_degree, total, bound })
}

#[derive(Debug, Clone)]
pub struct CrosscheckReport {
    pub spot: usize,
    pub gb_finite: bool,
    pub gb_length: Option<u64>,
    pub dense_total: u64,
    pub bound: i64,
    pub equal: bool,
}

/// Runs both length paths on one instance. The dense bound comes from the
/// GB path's certified support degree, padded by a trailing verification
/// window so an all-zero certificate is still probed.
pub fn oracle_crosscheck(c: &FreeComplex, i: usize) -> Result<CrosscheckReport> {
    let pres = homology_presentation(c, i)?;
    if !pres.finite {
        return Err(Error::Precondition(
            "dense crosscheck needs finite homology length".into(),
        ));
    }
    let window = trailing_window(c);
    let bound = pres.support_topdeg.unwrap_or(0) + window;
    let dense = dense_degreewise_homology(c, i, bound)?;
    let gb_len = pres.length;
    Ok(CrosscheckReport {
        spot: i,
        gb_finite: pres.finite,
        gb_length: gb_len,
        dense_total: dense.total,
        bound,
        equal: gb_len == Some(dense.total),
    })
}

/// Width of the trailing-zero verification window: the top degree of R/m
/// (zero in the graded-local dictionary) plus one, scaled by the largest
/// variable weight so weighted gradings advance at least one step.
fn trailing_window(c: &FreeComplex) -> i64 {
    c.ring.desc.weights.iter().copied().max().unwrap_or(1) as i64
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::koszul_complex;
    use crate::descriptor::RingDescriptor;
    use crate::homology::{cyclic_presentation, frobenius_complex};
    use crate::parse::parse_polynomial;
    use crate::poly::Polynomial;
    use crate::quotient::{make_quotient_ring, QuotientRing};
    use std::sync::Arc;

    fn pring(p: u64, vars: &[&str]) -> Arc<QuotientRing> {
        QuotientRing::polynomial_ring(&RingDescriptor::simple(p, vars))
    }

    fn qring(p: u64, vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
        let d = RingDescriptor::simple(p, vars);
        let polys = gens.iter().map(|s| parse_polynomial(&d, s).unwrap()).collect();
        make_quotient_ring(&d, polys).unwrap()
    }

    fn vars(ring: &Arc<QuotientRing>) -> Vec<Polynomial> {
        (0..ring.desc.nvars()).map(|j| Polynomial::var(&ring.desc, j)).collect()
    }

    fn mono(desc: &Arc<RingDescriptor>, exps: &[u32]) -> Monomial {
        Monomial::from_exps(desc, exps).unwrap()
    }

    #[test]
    fn gf_rank_basics() {
        assert_eq!(gf_rank(vec![vec![1, 2], vec![2, 4]], 5), 1);
        assert_eq!(gf_rank(vec![vec![1, 0], vec![0, 1]], 5), 2);
        assert_eq!(gf_rank(vec![vec![0, 0]], 5), 0);
        // 2x2 singular mod 3 but not over Q
        assert_eq!(gf_rank(vec![vec![1, 2], vec![2, 1]], 3), 1);
    }

    #[test]
    fn staircase_examples() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        assert_eq!(staircase_length(&[mono(&d, &[2, 0]), mono(&d, &[0, 3])], 2), Some(6));
        let q = 25;
        assert_eq!(
            staircase_length(&[mono(&d, &[1, 1]), mono(&d, &[q, 0]), mono(&d, &[0, q])], 2),
            Some(49)
        );
        assert_eq!(staircase_length(&[mono(&d, &[1, 1])], 2), None);
    }

    #[test]
    fn staircase_agrees_with_box_enumeration() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(23);
        for _ in 0..40 {
            let n = rng.random_range(1..=3usize);
            let names: Vec<String> = (0..n).map(|k| format!("v{k}")).collect();
            let d = RingDescriptor::new(5, names, None, crate::descriptor::MonomialOrder::Grevlex)
                .unwrap();
            let mut gens: Vec<Monomial> = Vec::new();
            // pure powers guarantee finiteness
            for j in 0..n {
                let mut e = vec![0u32; n];
                e[j] = rng.random_range(1..=12u32);
                gens.push(mono(&d, &e));
            }
            for _ in 0..rng.random_range(0..=3usize) {
                let e: Vec<u32> = (0..n).map(|_| rng.random_range(0..6u32)).collect();
                gens.push(mono(&d, &e));
            }
            let fast = staircase_length(&gens, n).unwrap();
            // dense enumeration over the bounding box
            let bounds: Vec<u32> = (0..n)
                .map(|j| {
                    gens.iter()
                        .filter(|g| {
                            g.exps[j] > 0
                                && g.exps.iter().enumerate().all(|(k, &e)| k == j || e == 0)
                        })
                        .map(|g| g.exps[j])
                        .min()
                        .unwrap()
                })
                .collect();
            let mut slow = 0u64;
            let mut idx = vec![0u32; n];
            'enumerate: loop {
                let covered = gens
                    .iter()
                    .any(|g| g.exps.iter().zip(idx.iter()).all(|(a, b)| a <= b));
                if !covered {
                    slow += 1;
                }
                let mut j = 0;
                loop {
                    if j == n {
                        break 'enumerate;
                    }
                    idx[j] += 1;
                    if idx[j] < bounds[j] {
                        break;
                    }
                    idx[j] = 0;
                    j += 1;
                }
            }
            assert_eq!(fast, slow);
        }
    }

    #[test]
    fn dense_homology_on_exact_koszul() {
        let r = pring(5, &["x", "y"]);
        let k = koszul_complex(&r, &vars(&r)).unwrap();
        let dense = dense_degreewise_homology(&k, 1, 10).unwrap();
        assert_eq!(dense.total, 0);
    }

    #[test]
    fn dense_homology_matches_node_h0() {
        let node = qring(5, &["x", "y"], &["x*y"]);
        let c = cyclic_presentation(&node, &vars(&node)).unwrap();
        let f1 = frobenius_complex(&c, 1).unwrap();
        let dense = dense_degreewise_homology(&f1, 0, 10).unwrap();
        assert_eq!(dense.total, 9);
    }

    #[test]
    fn crosscheck_on_small_corpus() {
        use crate::resolution::{minimal_free_resolution, ResolutionRequest};
        let node = qring(5, &["x", "y"], &["x*y"]);
        let res =
            minimal_free_resolution(&ResolutionRequest::residue_field(node, 3)).unwrap();
        for e in 0..=1u32 {
            let fe = frobenius_complex(&res, e).unwrap();
            for i in 0..=2usize {
                let rep = oracle_crosscheck(&fe, i).unwrap();
                assert!(rep.equal, "e={e} {rep:?}");
            }
        }
        let reg = pring(5, &["x", "y"]);
        let k = koszul_complex(&reg, &vars(&reg)).unwrap();
        for i in 0..=2usize {
            let rep = oracle_crosscheck(&k, i).unwrap();
            assert!(rep.equal, "{rep:?}");
            if i > 0 {
                assert_eq!(rep.gb_length, Some(0));
            }
        }
    }

    #[test]
    fn crosscheck_survives_minimization() {
        use crate::complex::{mapping_cone, ChainMap};
        use crate::homology::homology_length;
        use crate::resolution::minimize_complex;
        let node = qring(5, &["x", "y"], &["x*y"]);
        let c = cyclic_presentation(&node, &vars(&node)).unwrap();
        let id = ChainMap::identity(&c).unwrap();
        let cone = mapping_cone(&id).unwrap();
        let small = minimize_complex(&cone).unwrap();
        for i in 0..=1usize {
            let a = homology_length(&cone, i).unwrap();
            let b = homology_length(&small, i).unwrap();
            assert_eq!(a, b);
        }
    }
}
