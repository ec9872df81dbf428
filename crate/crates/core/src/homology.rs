//! The Frobenius functor on free complexes, exact homology lengths over
//! R = S/I, and the annihilation tests behind empirical phantom homology.
//!
//! Kernels and relation modules are computed by elimination: the submodule
//! generated by {(column_j, e_j)} in F_{i-1} (+) F_i is intersected with the
//! second block by taking the Groebner elements whose first block vanishes
//! (position-over-term makes the first block dominant).

use std::sync::Arc;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::groebner::{
    buchberger, normal_form, standard_monomial_count, standard_monomial_topdeg_at, GroebnerBasis,
};
use crate::monomial::Monomial;
use crate::poly::Polynomial;
use crate::quotient::QuotientRing;
use crate::vector::VectorElement;

/// Applies F^e: every matrix entry is raised to the q-th power, grading
/// shifts scale by q. The output is again a complex since Frobenius is a
/// ring map.
pub fn frobenius_complex(c: &FreeComplex, e: u32) -> Result<FreeComplex> {
    if e == 0 {
        return Ok(c.clone());
    }
    let q = c.ring.desc.q(e)?;
    let mats = c
        .mats
        .iter()
        .map(|m| m.map_entries(|f| f.frobenius_power(e)))
        .collect::<Result<Vec<_>>>()?;
    let shifts = c
        .shifts
        .iter()
        .map(|row| {
            row.iter()
                .map(|&s| {
                    s.checked_mul(q as i64)
                        .ok_or_else(|| Error::Capacity("shift overflow under Frobenius".into()))
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    FreeComplex::new(c.ring.clone(), c.ranks.clone(), shifts, mats)
}

/// Generators of ker d_i over R, with their homogeneous degrees when the
/// complex is graded.
pub struct CycleModule {
    pub spot: usize,
    pub gens: Vec<VectorElement>,
    pub degrees: Vec<Option<i64>>,
}

pub fn cycles(c: &FreeComplex, i: usize) -> Result<CycleModule> {
    if i > c.length() {
        return Err(Error::Precondition(format!(
            "spot {i} beyond complex length {}",
            c.length()
        )));
    }
    let ring = &c.ring;
    let desc = &ring.desc;
    let r_i = c.rank(i);
    let gens: Vec<VectorElement> = if i == 0 {
        (0..r_i)
            .map(|b| VectorElement::unit(desc, r_i, b, Polynomial::one(desc)))
            .collect()
    } else {
        let m = c.matrix(i).expect("1 <= i <= L");
        let r_prev = c.rank(i - 1);
        let big = r_prev + r_i;
        let mut egens: Vec<VectorElement> = Vec::new();
        for j in 0..r_i {
            let mut v = VectorElement::zero(desc, big);
            for a in 0..r_prev {
                v.components[a] = m.at(a, j).clone();
            }
            v.components[r_prev + j] = Polynomial::one(desc);
            egens.push(v);
        }
        for f in &ring.ideal_gens {
            for a in 0..r_prev {
                egens.push(VectorElement::unit(desc, big, a, f.clone()));
            }
        }
        let gb = buchberger(&egens, desc, big)?;
        let mut out = Vec::new();
        for g in &gb.gens {
            if g.components[..r_prev].iter().all(|f| f.is_zero()) {
                let tail = VectorElement {
                    components: g.components[r_prev..].to_vec(),
                };
                let reduced = ring.reduce_vector(&tail)?;
                if !reduced.is_zero() {
                    out.push(reduced);
                }
            }
        }
        // the kernel GB can be far from minimal; presenting the homology on
        // a minimal generating set keeps the relation module small
        crate::quotient::minimal_module_generators(ring, r_i, &c.shifts[i], out)?
            .into_iter()
            .map(|(v, _)| v)
            .collect()
    };
    let degrees = gens
        .iter()
        .map(|z| z.degree_with_shifts(&c.shifts[i]))
        .collect::<Result<Vec<_>>>()?;
    Ok(CycleModule { spot: i, gens, degrees })
}

/// GB over S of im d_{i+1} + I*F_i inside S^{r_i}.
pub fn boundary_gb(c: &FreeComplex, i: usize) -> Result<GroebnerBasis> {
    let cols = match c.matrix(i + 1) {
        Some(m) => m.columns(),
        None => Vec::new(),
    };
    c.ring.submodule_gb(&cols, c.rank(i))
}

/// Presentation of H_i = ker d_i / im d_{i+1}: cycle generators, boundary
/// lifts expressed in the cycle generators, the full relation matrix, and
/// the exact length with its finiteness certificate.
pub struct HomologyPresentation {
    pub spot: usize,
    pub cycle_gens: Vec<VectorElement>,
    pub cycle_degrees: Vec<Option<i64>>,
    pub boundary_lifts: Vec<VectorElement>,
    pub relations: Vec<VectorElement>,
    pub finite: bool,
    pub length: Option<u64>,
    /// Max degree (in F_i, shifts included) of a standard monomial of the
    /// presentation; drives the dense oracle's certified bound.
    pub support_topdeg: Option<i64>,
}

pub fn homology_presentation(c: &FreeComplex, i: usize) -> Result<HomologyPresentation> {
    let ring = &c.ring;
    let desc = &ring.desc;
    let z = cycles(c, i)?;
    let t = z.gens.len();
    let r_i = c.rank(i);
    if t == 0 {
        return Ok(HomologyPresentation {
            spot: i,
            cycle_gens: vec![],
            cycle_degrees: vec![],
            boundary_lifts: vec![],
            relations: vec![],
            finite: true,
            length: Some(0),
            support_topdeg: None,
        });
    }

    // elimination module F_i (+) S^t for lifting into the cycle generators
    let big = r_i + t;
    let mut egens: Vec<VectorElement> = Vec::new();
    for (k, zk) in z.gens.iter().enumerate() {
        let mut v = VectorElement::zero(desc, big);
        for a in 0..r_i {
            v.components[a] = zk.components[a].clone();
        }
        v.components[r_i + k] = Polynomial::one(desc);
        egens.push(v);
    }
    for f in &ring.ideal_gens {
        for a in 0..r_i {
            egens.push(VectorElement::unit(desc, big, a, f.clone()));
        }
    }
    let gb_a = buchberger(&egens, desc, big)?;

    let boundary_cols = match c.matrix(i + 1) {
        Some(m) => m.columns(),
        None => Vec::new(),
    };
    let mut lifts = Vec::with_capacity(boundary_cols.len());
    for col in &boundary_cols {
        let mut v = VectorElement::zero(desc, big);
        for a in 0..r_i {
            v.components[a] = col.components[a].clone();
        }
        let (rem, _) = normal_form(&v, &gb_a, false)?;
        if rem.components[..r_i].iter().any(|f| !f.is_zero()) {
            return Err(Error::Internal(
                "boundary column is not a cycle: d d != 0".into(),
            ));
        }
        let lift = VectorElement {
            components: rem.components[r_i..].to_vec(),
        }
        .neg();
        lifts.push(lift);
    }

    let mut relations: Vec<VectorElement> = Vec::new();
    for g in &gb_a.gens {
        if g.components[..r_i].iter().all(|f| f.is_zero()) {
            let tail = VectorElement { components: g.components[r_i..].to_vec() };
            if !tail.is_zero() {
                relations.push(tail);
            }
        }
    }
    let mut all_relations = lifts.clone();
    all_relations.extend(relations.iter().cloned());
    for f in &ring.ideal_gens {
        for k in 0..t {
            all_relations.push(VectorElement::unit(desc, t, k, f.clone()));
        }
    }
    let gb_rel = buchberger(&all_relations, desc, t)?;
    let (finite, length) = standard_monomial_count(&gb_rel);

    let support_topdeg = if finite {
        let mut top: Option<i64> = None;
        for k in 0..t {
            let pos_top = standard_monomial_topdeg_at(&gb_rel, k);
            if let (Some(ptop), Some(zdeg)) = (pos_top, z.degrees[k]) {
                // positions with zero standard monomials report topdeg 0 and
                // still contribute nothing: colength 0 means no monomials
                let candidate = ptop as i64 + zdeg;
                top = Some(top.map_or(candidate, |t0: i64| t0.max(candidate)));
            }
        }
        top
    } else {
        None
    };

    Ok(HomologyPresentation {
        spot: i,
        cycle_gens: z.gens,
        cycle_degrees: z.degrees,
        boundary_lifts: lifts,
        relations,
        finite,
        length,
        support_topdeg,
    })
}

/// Exact length of H_i(C) with its finiteness flag; a faster route than the
/// full presentation (one elimination instead of two), checked against it in
/// the test suite.
pub fn homology_length(c: &FreeComplex, i: usize) -> Result<(bool, Option<u64>)> {
    let ring = &c.ring;
    let desc = &ring.desc;
    let z = cycles(c, i)?;
    let t = z.gens.len();
    if t == 0 {
        return Ok((true, Some(0)));
    }
    let r_i = c.rank(i);
    let big = r_i + t;
    let mut egens: Vec<VectorElement> = Vec::new();
    for (k, zk) in z.gens.iter().enumerate() {
        let mut v = VectorElement::zero(desc, big);
        for a in 0..r_i {
            v.components[a] = zk.components[a].clone();
        }
        v.components[r_i + k] = Polynomial::one(desc);
        egens.push(v);
    }
    if let Some(m) = c.matrix(i + 1) {
        for col in m.columns() {
            let mut v = VectorElement::zero(desc, big);
            for a in 0..r_i {
                v.components[a] = col.components[a].clone();
            }
            egens.push(v);
        }
    }
    for f in &ring.ideal_gens {
        for a in 0..r_i {
            egens.push(VectorElement::unit(desc, big, a, f.clone()));
        }
    }
    let gb = buchberger(&egens, desc, big)?;
    let mut rel_leads: Vec<(usize, Monomial)> = Vec::new();
    let mut rel_gens: Vec<VectorElement> = Vec::new();
    for g in &gb.gens {
        if g.components[..r_i].iter().all(|f| f.is_zero()) {
            let tail = VectorElement { components: g.components[r_i..].to_vec() };
            if let Some((pos, term)) = tail.lead() {
                rel_leads.push((pos, term.mon.clone()));
                rel_gens.push(tail);
            }
        }
    }
    let rel_gb = GroebnerBasis {
        desc: desc.clone(),
        rank: t,
        gens: rel_gens,
        leads: rel_leads,
        reduced: false,
    };
    Ok(standard_monomial_count(&rel_gb))
}

/// True iff c * z lies in im d_{i+1} + I*F_i for every cycle generator z.
/// The multiplier must be nonzero in the quotient ring.
pub fn annihilates_homology(mult: &Polynomial, c: &FreeComplex, i: usize) -> Result<bool> {
    if c.ring.is_zero_mod(mult)? {
        return Err(Error::InvalidMultiplier(format!(
            "'{mult}' is zero in the quotient ring"
        )));
    }
    annihilates_homology_unchecked(mult, c, i)
}

/// Same membership test without the multiplier validation; a multiplier that
/// is zero mod I annihilates trivially. Used by module-arithmetic invariants
/// like the m^[q] twist-annihilation law.
pub fn annihilates_homology_unchecked(
    mult: &Polynomial,
    c: &FreeComplex,
    i: usize,
) -> Result<bool> {
    let z = cycles(c, i)?;
    if z.gens.is_empty() {
        return Ok(true);
    }
    let gb_b = boundary_gb(c, i)?;
    for zk in &z.gens {
        let moved = zk.mul_poly(mult)?;
        if !normal_form(&moved, &gb_b, false)?.0.is_zero() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// One-directional evidence for stably phantom homology: reports, for each
/// e <= e_max, whether the candidate multiplier annihilates H_i(F^e(C)).
/// Never claims tight-closure membership.
#[derive(Debug, Clone)]
pub struct PhantomReport {
    pub spot: usize,
    pub multiplier: String,
    pub e_max: u32,
    pub rows: Vec<(u32, bool)>,
    pub empirically_stably_phantom: bool,
    /// c not in any minimal prime (c in R degree-zero complement) is the
    /// user's responsibility; only c != 0 mod I is checked here.
    pub multiplier_in_r_circ_unverified: bool,
}

pub fn empirical_stably_phantom(
    c: &FreeComplex,
    i: usize,
    mult: &Polynomial,
    e_max: u32,
) -> Result<PhantomReport> {
    if c.ring.is_zero_mod(mult)? {
        return Err(Error::InvalidMultiplier(format!(
            "'{mult}' is zero in the quotient ring"
        )));
    }
    let mut rows = Vec::with_capacity(e_max as usize + 1);
    let mut all = true;
    for e in 0..=e_max {
        let twisted = frobenius_complex(c, e)?;
        let ok = annihilates_homology(mult, &twisted, i)?;
        all &= ok;
        rows.push((e, ok));
    }
    Ok(PhantomReport {
        spot: i,
        multiplier: mult.to_string(),
        e_max,
        rows,
        empirically_stably_phantom: all,
        multiplier_in_r_circ_unverified: true,
    })
}

/// Helper shared by the asymptotics layer: presentation of the residue-field
/// or cyclic quotient as a length-zero-ready complex R^1 <- R^k.
pub fn cyclic_presentation(
    ring: &Arc<QuotientRing>,
    gens: &[Polynomial],
) -> Result<FreeComplex> {
    use crate::complex::Mat;
    let reduced: Vec<Polynomial> = gens
        .iter()
        .map(|f| ring.reduce(f))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|f| !f.is_zero())
        .collect();
    let shifts1: Vec<i64> = reduced
        .iter()
        .map(|f| match f.weighted_degree() {
            Ok(crate::poly::DegreeOf::Homogeneous(d)) => d as i64,
            _ => 0,
        })
        .collect();
    let k = reduced.len();
    let mat = Mat { rows: 1, cols: k, entries: reduced };
    FreeComplex::new(ring.clone(), vec![1, k], vec![vec![0], shifts1], vec![mat])
}
