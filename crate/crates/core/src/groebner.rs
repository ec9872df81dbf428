//! Buchberger-style Groebner engine for submodules of free S-modules under
//! the position-over-term order, with normal forms, Schreyer syzygies, Krull
//! dimension and standard-monomial counting.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::sync::Arc;

use smallvec::SmallVec;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::fp;
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::staircase::StaircaseCounter;
use crate::vector::VectorElement;

type Exps = SmallVec<[u32; 6]>;

/// Reduced Groebner basis of a submodule of S^rank. Generators are monic,
/// fully tail-reduced, with pairwise non-divisible leading terms, sorted by
/// leading term descending; identical inputs yield bit-identical bases.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    pub desc: Arc<RingDescriptor>,
    pub rank: usize,
    pub gens: Vec<VectorElement>,
    pub leads: Vec<(usize, Monomial)>,
    pub reduced: bool,
}

impl GroebnerBasis {
    pub fn leading_module(&self) -> &[(usize, Monomial)] {
        &self.leads
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.rank == 1 && self.leads.iter().any(|(_, m)| m.is_one())
    }

    /// Lead exponent vectors at one basis position.
    pub fn leads_at(&self, pos: usize) -> Vec<Exps> {
        self.leads
            .iter()
            .filter(|(p, _)| *p == pos)
            .map(|(_, m)| m.exps.clone())
            .collect()
    }

    pub fn contains(&self, v: &VectorElement) -> Result<bool> {
        Ok(normal_form(v, self, false)?.0.is_zero())
    }

    /// Re-asserts the Buchberger criterion post hoc: every S-pair of
    /// generators reduces to zero.
    pub fn buchberger_criterion_holds(&self) -> Result<bool> {
        for i in 0..self.gens.len() {
            for j in (i + 1)..self.gens.len() {
                if self.leads[i].0 != self.leads[j].0 {
                    continue;
                }
                let s = spair(&self.desc, &self.gens[i], &self.gens[j])?;
                if !normal_form(&s, self, false)?.0.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

fn monicize(v: &VectorElement, p: u64) -> VectorElement {
    match v.lead() {
        None => v.clone(),
        Some((_, t)) => v.scale(fp::inv(t.coeff, p)),
    }
}

/// S-vector of two elements with the same leading position (both monic).
fn spair(
    desc: &Arc<RingDescriptor>,
    u: &VectorElement,
    v: &VectorElement,
) -> Result<VectorElement> {
    let (pu, tu) = u.lead().expect("nonzero");
    let (pv, tv) = v.lead().expect("nonzero");
    debug_assert_eq!(pu, pv);
    let l = tu.mon.lcm(&tv.mon, &desc.weights)?;
    let a = u.mul_term(fp::inv(tu.coeff, desc.p), &tu.mon.quotient(&l))?;
    let b = v.mul_term(fp::inv(tv.coeff, desc.p), &tv.mon.quotient(&l))?;
    a.sub(&b)
}

/// Division core over borrowed generators; `skip` masks one generator out
/// (used by tail reduction).
fn normal_form_raw(
    v: &VectorElement,
    gens: &[VectorElement],
    leads: &[(usize, Monomial)],
    desc: &Arc<RingDescriptor>,
    with_quotients: bool,
    skip: Option<usize>,
) -> Result<(VectorElement, Option<Vec<Polynomial>>)> {
    let p = desc.p;
    let mut work = v.clone();
    let mut rem = VectorElement::zero(desc, v.rank());
    let mut quots: Vec<Vec<(u64, Monomial)>> =
        if with_quotients { vec![Vec::new(); gens.len()] } else { Vec::new() };
    'outer: while let Some((pos, t)) = work.lead() {
        let (t_coeff, t_mon) = (t.coeff, t.mon.clone());
        for (gi, (gpos, gmon)) in leads.iter().enumerate() {
            if Some(gi) == skip {
                continue;
            }
            if *gpos == pos && gmon.divides(&t_mon) {
                let mu = gmon.quotient(&t_mon);
                let glead = gens[gi].lead().unwrap().1.coeff;
                let c = fp::mul(t_coeff, fp::inv(glead, p), p);
                work = work.sub(&gens[gi].mul_term(c, &mu)?)?;
                if with_quotients {
                    quots[gi].push((c, mu));
                }
                continue 'outer;
            }
        }
        // no reducer applies: move the leading term into the remainder
        let single = Polynomial::monomial(desc, t_coeff, t_mon.clone());
        rem.components[pos] = rem.components[pos].add(&single)?;
        work.components[pos] = work.components[pos].sub(&single)?;
    }
    let quotients = if with_quotients {
        Some(quots.into_iter().map(|ts| Polynomial::from_terms(desc, ts)).collect())
    } else {
        None
    };
    Ok((rem, quotients))
}

/// Full division: the remainder has no term divisible by any leading term of
/// G; with quotients, v = sum(q_i * G_i) + remainder exactly.
pub fn normal_form(
    v: &VectorElement,
    g: &GroebnerBasis,
    with_quotients: bool,
) -> Result<(VectorElement, Option<Vec<Polynomial>>)> {
    normal_form_raw(v, &g.gens, &g.leads, &g.desc, with_quotients, None)
}

#[derive(PartialEq, Eq, PartialOrd, Ord)]
struct PairKey {
    deg: u64,
    i: usize,
    j: usize,
}

/// Buchberger with normal selection strategy (lowest lcm degree first, ties
/// by insertion index) and the Gebauer-Moller pair eliminations; the coprime
/// criterion applies only in the rank-1 case, where it is valid.
pub fn buchberger(
    gens: &[VectorElement],
    desc: &Arc<RingDescriptor>,
    rank: usize,
) -> Result<GroebnerBasis> {
    let p = desc.p;
    let mut basis: Vec<VectorElement> = Vec::new();
    let mut leads: Vec<(usize, Monomial)> = Vec::new();
    let mut queue: BinaryHeap<Reverse<PairKey>> = BinaryHeap::new();
    // alive pairs with their lcm; queue entries not present here are stale
    let mut pending: HashMap<(usize, usize), Monomial> = HashMap::new();

    let push_element = |v: VectorElement,
                        basis: &mut Vec<VectorElement>,
                        leads: &mut Vec<(usize, Monomial)>,
                        queue: &mut BinaryHeap<Reverse<PairKey>>,
                        pending: &mut HashMap<(usize, usize), Monomial>|
     -> Result<()> {
        let t = basis.len();
        let (pos, lt) = {
            let (pos, term) = v.lead().expect("nonzero element");
            (pos, term.mon.clone())
        };

        // eliminate old pairs strictly superseded by the new lead
        let mut dead: Vec<(usize, usize)> = Vec::new();
        for (&(i, j), l) in pending.iter() {
            if leads[i].0 != pos || !lt.divides(l) {
                continue;
            }
            let lit = leads[i].1.lcm(&lt, &desc.weights)?;
            let ljt = leads[j].1.lcm(&lt, &desc.weights)?;
            if &lit != l && &ljt != l {
                dead.push((i, j));
            }
        }
        for key in dead {
            pending.remove(&key);
        }

        // candidate pairs with the new element
        let mut cand: Vec<(usize, Monomial)> = Vec::new();
        for (i, (ipos, imon)) in leads.iter().enumerate() {
            if *ipos == pos {
                cand.push((i, imon.lcm(&lt, &desc.weights)?));
            }
        }
        // M: drop (i,t) when another candidate lcm properly divides its lcm
        let mut keep_m: Vec<(usize, Monomial)> = Vec::new();
        'm_loop: for (i, l) in &cand {
            for (j, l2) in &cand {
                if j != i && l2 != l && l2.divides(l) {
                    continue 'm_loop;
                }
            }
            keep_m.push((*i, l.clone()));
        }
        // F: one representative per lcm value; B: in rank 1, a coprime
        // member discharges its whole class
        let mut survivors: Vec<(usize, Monomial)> = Vec::new();
        let mut seen: Vec<Monomial> = Vec::new();
        for (i, l) in &keep_m {
            if seen.iter().any(|s| s == l) {
                continue;
            }
            seen.push(l.clone());
            let class_coprime = rank == 1
                && keep_m
                    .iter()
                    .any(|(j, l2)| l2 == l && leads[*j].1.gcd_is_one(&lt));
            if class_coprime {
                continue;
            }
            survivors.push((*i, l.clone()));
        }
        for (i, l) in survivors {
            queue.push(Reverse(PairKey { deg: l.deg, i, j: t }));
            pending.insert((i, t), l);
        }
        basis.push(v);
        leads.push((pos, lt));
        Ok(())
    };

    for g in gens {
        if g.rank() != rank {
            return Err(Error::DescriptorMismatch(format!(
                "generator rank {} in a rank-{} module",
                g.rank(),
                rank
            )));
        }
        let (nf, _) = normal_form_raw(g, &basis, &leads, desc, false, None)?;
        if !nf.is_zero() {
            push_element(monicize(&nf, p), &mut basis, &mut leads, &mut queue, &mut pending)?;
        }
    }

    while let Some(Reverse(PairKey { i, j, .. })) = queue.pop() {
        if pending.remove(&(i, j)).is_none() {
            continue; // eliminated earlier
        }
        let s = spair(desc, &basis[i], &basis[j])?;
        let (nf, _) = normal_form_raw(&s, &basis, &leads, desc, false, None)?;
        if !nf.is_zero() {
            push_element(monicize(&nf, p), &mut basis, &mut leads, &mut queue, &mut pending)?;
        }
    }

    Ok(reduce_basis(basis, desc, rank))
}

/// Inter-reduction: drop generators with redundant leads, tail-reduce the
/// rest, sort by leading term descending.
fn reduce_basis(
    mut basis: Vec<VectorElement>,
    desc: &Arc<RingDescriptor>,
    rank: usize,
) -> GroebnerBasis {
    use crate::monomial::pot_compare;

    // ascending by lead so smaller leads are kept first
    basis.sort_by(|a, b| {
        let (pa, ta) = a.lead().unwrap();
        let (pb, tb) = b.lead().unwrap();
        pot_compare((pa, &ta.mon), (pb, &tb.mon), desc.order)
    });
    let mut kept: Vec<VectorElement> = Vec::new();
    let mut kept_leads: Vec<(usize, Monomial)> = Vec::new();
    'outer: for v in basis {
        let (pos, t) = v.lead().unwrap();
        for (kp, km) in &kept_leads {
            if *kp == pos && km.divides(&t.mon) {
                continue 'outer;
            }
        }
        kept_leads.push((pos, t.mon.clone()));
        kept.push(v);
    }

    // tail-reduce each against all the others
    let mut reduced_gens: Vec<VectorElement> = Vec::with_capacity(kept.len());
    for i in 0..kept.len() {
        let (nf, _) = normal_form_raw(&kept[i], &kept, &kept_leads, desc, false, Some(i))
            .expect("tail reduction");
        debug_assert!(!nf.is_zero());
        reduced_gens.push(nf);
    }

    let mut order: Vec<usize> = (0..reduced_gens.len()).collect();
    order.sort_by(|&a, &b| {
        let (pa, ta) = reduced_gens[a].lead().unwrap();
        let (pb, tb) = reduced_gens[b].lead().unwrap();
        pot_compare((pb, &tb.mon), (pa, &ta.mon), desc.order)
    });
    let gens: Vec<VectorElement> = order.iter().map(|&k| reduced_gens[k].clone()).collect();
    let leads: Vec<(usize, Monomial)> =
        gens.iter().map(|v| {
            let (p, t) = v.lead().unwrap();
            (p, t.mon.clone())
        }).collect();
    GroebnerBasis { desc: desc.clone(), rank, gens, leads, reduced: true }
}

/// Schreyer syzygies of the generators of a Groebner basis: one syzygy per
/// same-position S-pair, corrected by the division quotients. Every returned
/// vector u satisfies sum(u_k * G_k) = 0 exactly.
pub fn module_syzygies(g: &GroebnerBasis) -> Result<Vec<VectorElement>> {
    let desc = &g.desc;
    let s = g.gens.len();
    let mut out = Vec::new();
    for i in 0..s {
        for j in (i + 1)..s {
            if g.leads[i].0 != g.leads[j].0 {
                continue;
            }
            let mi = &g.leads[i].1;
            let mj = &g.leads[j].1;
            let l = mi.lcm(mj, &desc.weights)?;
            let sp = spair(desc, &g.gens[i], &g.gens[j])?;
            let (rem, quots) = normal_form(&sp, g, true)?;
            if !rem.is_zero() {
                return Err(Error::Internal(
                    "S-pair of a Groebner basis did not reduce to zero".into(),
                ));
            }
            let quots = quots.unwrap();
            let mut syz = VectorElement::zero(desc, s);
            let ci = g.gens[i].lead().unwrap().1.coeff;
            let cj = g.gens[j].lead().unwrap().1.coeff;
            syz.components[i] =
                Polynomial::monomial(desc, fp::inv(ci, desc.p), mi.quotient(&l));
            syz.components[j] = syz.components[j]
                .sub(&Polynomial::monomial(desc, fp::inv(cj, desc.p), mj.quotient(&l)))?;
            for (k, q) in quots.iter().enumerate() {
                syz.components[k] = syz.components[k].sub(q)?;
            }
            if !syz.is_zero() {
                out.push(syz);
            }
        }
    }
    Ok(out)
}

/// Krull dimension of S/ideal from the initial ideal: the largest variable
/// subset Y such that no leading monomial is supported inside Y. Returns
/// (unit_ideal, dim); the unit ideal reports dimension -1.
pub fn krull_dimension(g: &GroebnerBasis) -> Result<(bool, i64)> {
    if g.rank != 1 {
        return Err(Error::Precondition("krull_dimension needs a rank-1 (ideal) basis".into()));
    }
    if g.is_unit_ideal() {
        return Ok((true, -1));
    }
    let n = g.desc.nvars();
    if n > 20 {
        return Err(Error::Capacity(format!(
            "combinatorial dimension over {n} variables exceeds the subset guard"
        )));
    }
    let supports: Vec<u32> = g
        .leads
        .iter()
        .map(|(_, m)| {
            let mut mask = 0u32;
            for j in m.support() {
                mask |= 1 << j;
            }
            mask
        })
        .collect();
    let mut best: i64 = 0;
    for subset in 0u32..(1 << n) {
        let card = subset.count_ones() as i64;
        if card <= best {
            continue;
        }
        if supports.iter().all(|&s| s & !subset != 0) {
            best = card;
        }
    }
    Ok((false, best))
}

/// Finiteness and cardinality of the standard monomials of a submodule GB:
/// finite iff every basis position has a pure power of every variable in the
/// leading module; the count is the F_p-dimension (= length) of the quotient.
pub fn standard_monomial_count(g: &GroebnerBasis) -> (bool, Option<u64>) {
    let n = g.desc.nvars();
    let mut counter = StaircaseCounter::new();
    let mut total: u64 = 0;
    for pos in 0..g.rank {
        match counter.colength(&g.leads_at(pos), n) {
            Some(c) => total += c,
            None => return (false, None),
        }
    }
    (true, Some(total))
}

/// Max weighted degree of a standard monomial per position (finite case).
pub fn standard_monomial_topdeg_at(g: &GroebnerBasis, pos: usize) -> Option<u64> {
    let mut counter = StaircaseCounter::new();
    counter.topdeg(&g.leads_at(pos), g.desc.nvars(), &g.desc.weights)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::MonomialOrder;
    use crate::parse::parse_polynomial;

    fn ideal_gb(desc: &Arc<RingDescriptor>, gens: &[&str]) -> GroebnerBasis {
        let vs: Vec<VectorElement> = gens
            .iter()
            .map(|s| VectorElement::from_poly(parse_polynomial(desc, s).unwrap()))
            .collect();
        buchberger(&vs, desc, 1).unwrap()
    }

    #[test]
    fn monomial_ideals_are_self_gb() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let gb = ideal_gb(&d, &["x^2", "y^3"]);
        assert_eq!(gb.gens.len(), 2);
        assert!(gb.buchberger_criterion_holds().unwrap());
    }

    #[test]
    fn empty_input_gives_empty_basis() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let gb = buchberger(&[], &d, 1).unwrap();
        assert!(gb.gens.is_empty());
    }

    #[test]
    fn twisted_cubic_lex() {
        let d = RingDescriptor::new(
            5,
            vec!["x".into(), "y".into(), "z".into()],
            None,
            MonomialOrder::Lex,
        )
        .unwrap();
        let gb = ideal_gb(&d, &["y - x^2", "z - x^3"]);
        assert!(gb.buchberger_criterion_holds().unwrap());
        // x^2 - y has lead x^2 under lex
        assert!(gb.leads.iter().any(|(_, m)| m.exps.as_slice() == [2, 0, 0]));
        // independent membership check: every S-pair lands in the ideal
        let f = parse_polynomial(&d, "y^3 - z^2").unwrap();
        assert!(gb.contains(&VectorElement::from_poly(f)).unwrap());
    }

    #[test]
    fn normal_form_examples() {
        let d = RingDescriptor::simple(5, &["x", "y", "z"]);
        let gb = ideal_gb(&d, &["x*y - z"]);
        let v = VectorElement::from_poly(parse_polynomial(&d, "x^2*y").unwrap());
        let (rem, _) = normal_form(&v, &gb, false).unwrap();
        assert_eq!(rem.components[0], parse_polynomial(&d, "x*z").unwrap());

        // membership reduces to zero
        let w = VectorElement::from_poly(parse_polynomial(&d, "x^2*y - x*z").unwrap());
        assert!(normal_form(&w, &gb, false).unwrap().0.is_zero());

        // a unit stays untouched by a basis inside the irrelevant ideal
        let gbm = ideal_gb(&d, &["x", "y"]);
        let one = VectorElement::from_poly(Polynomial::one(&d));
        assert_eq!(normal_form(&one, &gbm, false).unwrap().0, one);
    }

    #[test]
    fn normal_form_idempotent_and_exact_quotients() {
        let d = RingDescriptor::simple(5, &["x", "y", "z"]);
        let gb = ideal_gb(&d, &["x*y - z", "y^2 - x"]);
        let v = VectorElement::from_poly(parse_polynomial(&d, "x^3*y^2 + z^3 + y").unwrap());
        let (rem, quots) = normal_form(&v, &gb, true).unwrap();
        let (rem2, _) = normal_form(&rem, &gb, false).unwrap();
        assert_eq!(rem, rem2);
        // v = sum q_i g_i + rem
        let mut acc = rem.clone();
        for (q, g) in quots.unwrap().iter().zip(gb.gens.iter()) {
            acc = acc.add(&g.mul_poly(q).unwrap()).unwrap();
        }
        assert_eq!(acc, v);
    }

    #[test]
    fn koszul_syzygy_of_two_variables() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let gb = ideal_gb(&d, &["x", "y"]);
        let syz = module_syzygies(&gb).unwrap();
        assert_eq!(syz.len(), 1);
        // up to sign/scale: (y, -x) against basis sorted lead-descending
        let evaluated: Polynomial = syz[0]
            .components
            .iter()
            .zip(gb.gens.iter())
            .map(|(q, g)| q.mul(&g.components[0]).unwrap())
            .fold(Polynomial::zero(&d), |acc, t| acc.add(&t).unwrap());
        assert!(evaluated.is_zero());
        assert!(syz[0].components.iter().all(|c| !c.is_zero()));
    }

    #[test]
    fn principal_ideal_has_no_syzygies() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let gb = ideal_gb(&d, &["x^2"]);
        assert!(module_syzygies(&gb).unwrap().is_empty());
    }

    #[test]
    fn whisker_syzygy() {
        let d = RingDescriptor::simple(5, &["x", "y", "z"]);
        let gb = ideal_gb(&d, &["x*y", "x*z"]);
        let syz = module_syzygies(&gb).unwrap();
        assert_eq!(syz.len(), 1);
        // z * xy - y * xz = 0: the syzygy components are +-z and +-y
        let mons: Vec<&Monomial> =
            syz[0].components.iter().map(|c| &c.leading().unwrap().mon).collect();
        let mut degs: Vec<u64> = mons.iter().map(|m| m.deg).collect();
        degs.sort();
        assert_eq!(degs, vec![1, 1]);
    }

    #[test]
    fn krull_dimension_cases() {
        let d3 = RingDescriptor::simple(5, &["x", "y", "z"]);
        let zero = buchberger(&[], &d3, 1).unwrap();
        assert_eq!(krull_dimension(&zero).unwrap(), (false, 3));

        let d3b = RingDescriptor::simple(3, &["x", "y", "z"]);
        let gb = ideal_gb(&d3b, &["x*y", "x*z"]);
        assert_eq!(krull_dimension(&gb).unwrap(), (false, 2));

        let d2 = RingDescriptor::simple(5, &["x", "y"]);
        let art = ideal_gb(&d2, &["x^2", "y^3"]);
        assert_eq!(krull_dimension(&art).unwrap(), (false, 0));

        let unit = ideal_gb(&d2, &["x + 1", "x"]);
        assert_eq!(krull_dimension(&unit).unwrap(), (true, -1));
    }

    #[test]
    fn krull_dimension_matches_brute_force_on_monomial_ideals() {
        // brute force re-derivation over all variable subsets, n <= 6
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.random_range(1..=4usize);
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let desc = RingDescriptor::new(5, names, None, MonomialOrder::Grevlex).unwrap();
            let ngens = rng.random_range(0..=4usize);
            let gens: Vec<VectorElement> = (0..ngens)
                .map(|_| {
                    let exps: Vec<u32> =
                        (0..n).map(|_| rng.random_range(0..3u32)).collect();
                    let m = Monomial::from_exps(&desc, &exps).unwrap();
                    VectorElement::from_poly(Polynomial::monomial(&desc, 1, m))
                })
                .filter(|v| !v.is_zero())
                .collect();
            let gb = buchberger(&gens, &desc, 1).unwrap();
            let (unit, dim) = krull_dimension(&gb).unwrap();
            if unit {
                continue;
            }
            let mut brute: i64 = 0;
            for subset in 0u32..(1 << n) {
                let ok = gb.leads.iter().all(|(_, m)| {
                    m.support().any(|j| subset & (1 << j) == 0)
                });
                if ok {
                    brute = brute.max(subset.count_ones() as i64);
                }
            }
            assert_eq!(dim, brute);
        }
    }

    #[test]
    fn standard_monomial_counts() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        assert_eq!(standard_monomial_count(&ideal_gb(&d, &["x^2", "y^3"])), (true, Some(6)));
        assert_eq!(standard_monomial_count(&ideal_gb(&d, &["x*y"])), (false, None));
        assert_eq!(
            standard_monomial_count(&ideal_gb(&d, &["x*y", "x^5", "y^5"])),
            (true, Some(9))
        );
    }

    #[test]
    fn syzygies_evaluate_to_zero_on_random_ideals() {
        use rand::{Rng, SeedableRng};
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        for _ in 0..25 {
            let ngens = rng.random_range(1..=3usize);
            let gens: Vec<VectorElement> = (0..ngens)
                .map(|_| {
                    let nterms = rng.random_range(1..=3usize);
                    let terms: Vec<(u64, Monomial)> = (0..nterms)
                        .map(|_| {
                            let e = [rng.random_range(0..4u32), rng.random_range(0..4u32)];
                            (rng.random_range(1..5u64), Monomial::from_exps(&d, &e).unwrap())
                        })
                        .collect();
                    VectorElement::from_poly(Polynomial::from_terms(&d, terms))
                })
                .filter(|v| !v.is_zero())
                .collect();
            let gb = buchberger(&gens, &d, 1).unwrap();
            assert!(gb.buchberger_criterion_holds().unwrap());
            for syz in module_syzygies(&gb).unwrap() {
                let eval = syz
                    .components
                    .iter()
                    .zip(gb.gens.iter())
                    .map(|(q, g)| q.mul(&g.components[0]).unwrap())
                    .fold(Polynomial::zero(&d), |acc, t| acc.add(&t).unwrap());
                assert!(eval.is_zero());
            }
        }
    }

    #[test]
    fn deterministic_output() {
        let d = RingDescriptor::simple(7, &["x", "y", "z"]);
        let gens = ["x^2 + y*z", "y^2 - x*z", "z^3 - x*y"];
        let a = ideal_gb(&d, &gens);
        let b = ideal_gb(&d, &gens);
        assert_eq!(a.gens, b.gens);
    }
}
