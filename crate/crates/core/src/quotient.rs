//! Presentations R = S/I with cached Groebner basis and Krull dimension, the
//! bracket power I^[q], and the standard trick that represents submodules
//! over R by appending I-multiples of the free basis over S.

use std::sync::Arc;

use crate::descriptor::RingDescriptor;
use crate::error::{Error, Result};
use crate::groebner::{buchberger, krull_dimension, normal_form, standard_monomial_count, GroebnerBasis};
use crate::poly::{DegreeOf, Polynomial};
use crate::vector::VectorElement;

#[derive(Debug, Clone)]
pub struct QuotientRing {
    pub desc: Arc<RingDescriptor>,
    pub ideal_gens: Vec<Polynomial>,
    pub gb: GroebnerBasis,
    pub dim: i64,
    pub embdim: usize,
    /// Asserted by the user; the tool never computes primary decompositions.
    pub equidimensional: bool,
}

impl QuotientRing {
    pub fn polynomial_ring(desc: &Arc<RingDescriptor>) -> Arc<Self> {
        make_quotient_ring(desc, Vec::new()).expect("zero ideal is always valid")
    }

    pub fn is_polynomial_ring(&self) -> bool {
        self.ideal_gens.is_empty()
    }

    /// Normal form mod I (the canonical representative of a class in R).
    pub fn reduce(&self, f: &Polynomial) -> Result<Polynomial> {
        if self.ideal_gens.is_empty() {
            return Ok(f.clone());
        }
        let v = VectorElement::from_poly(f.clone());
        Ok(normal_form(&v, &self.gb, false)?.0.components.into_iter().next().unwrap())
    }

    pub fn reduce_vector(&self, v: &VectorElement) -> Result<VectorElement> {
        let components = v
            .components
            .iter()
            .map(|f| self.reduce(f))
            .collect::<Result<Vec<_>>>()?;
        Ok(VectorElement { components })
    }

    pub fn is_zero_mod(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reduce(f)?.is_zero())
    }

    /// Generators of I * S^rank, the relations that present S^rank -> R^rank.
    pub fn ideal_times_basis(&self, rank: usize) -> Vec<VectorElement> {
        let mut out = Vec::with_capacity(self.ideal_gens.len() * rank);
        for pos in 0..rank {
            for f in &self.ideal_gens {
                out.push(VectorElement::unit(&self.desc, rank, pos, f.clone()));
            }
        }
        out
    }

    /// GB over S of an R-submodule of R^rank: the given generators together
    /// with I-multiples of every basis vector.
    pub fn submodule_gb(&self, gens: &[VectorElement], rank: usize) -> Result<GroebnerBasis> {
        let mut all = gens.to_vec();
        all.extend(self.ideal_times_basis(rank));
        buchberger(&all, &self.desc, rank)
    }

    /// Length of R / (ideal generated by gens), via GB + staircase count.
    pub fn colength_of_ideal(&self, gens: &[Polynomial]) -> Result<(bool, Option<u64>)> {
        let vs: Vec<VectorElement> =
            gens.iter().map(|f| VectorElement::from_poly(f.clone())).collect();
        let gb = self.submodule_gb(&vs, 1)?;
        Ok(standard_monomial_count(&gb))
    }

    /// m = (x_1..x_n) raised to the bracket power [q], q = p^e.
    pub fn irrelevant_bracket(&self, e: u32) -> Result<Vec<Polynomial>> {
        let vars: Vec<Polynomial> =
            (0..self.desc.nvars()).map(|j| Polynomial::var(&self.desc, j)).collect();
        bracket_power(&vars, e)
    }

    pub fn canonical(&self) -> String {
        let gens: Vec<String> = self.ideal_gens.iter().map(|f| f.to_string()).collect();
        format!("{};ideal=[{}]", self.desc.canonical(), gens.join(","))
    }
}

/// Validates grading and non-degeneracy, caches the GB and the dimension.
pub fn make_quotient_ring(
    desc: &Arc<RingDescriptor>,
    ideal_gens: Vec<Polynomial>,
) -> Result<Arc<QuotientRing>> {
    let mut gens = Vec::new();
    for f in ideal_gens {
        if f.descriptor() != desc {
            return Err(Error::DescriptorMismatch("ideal generator from another ring".into()));
        }
        if f.is_zero() {
            continue;
        }
        match f.weighted_degree()? {
            DegreeOf::Inhomogeneous => {
                return Err(Error::Grading(format!(
                    "ideal generator '{f}' is not homogeneous for the declared weights"
                )))
            }
            DegreeOf::Homogeneous(0) => return Err(Error::DegenerateRing),
            DegreeOf::Homogeneous(_) => {}
        }
        gens.push(f);
    }
    let vs: Vec<VectorElement> =
        gens.iter().map(|f| VectorElement::from_poly(f.clone())).collect();
    let gb = buchberger(&vs, desc, 1)?;
    let (unit, dim) = krull_dimension(&gb)?;
    if unit {
        return Err(Error::DegenerateRing);
    }
    Ok(Arc::new(QuotientRing {
        desc: desc.clone(),
        ideal_gens: gens,
        gb,
        dim,
        embdim: desc.nvars(),
        equidimensional: false,
    }))
}

/// {f^q : f in gens} with q = p^e; the composition law
/// (I^[q1])^[q2] = I^[q1 q2] holds generator-wise.
pub fn bracket_power(gens: &[Polynomial], e: u32) -> Result<Vec<Polynomial>> {
    gens.iter().map(|f| f.frobenius_power(e)).collect()
}

/// Greedy minimal generating set of a graded R-submodule of R^rank: the
/// candidates are sorted by degree and kept only when not an R-combination
/// of the generators kept so far (graded Nakayama). Falls back to the full
/// candidate list when a candidate is not homogeneous for the shifts.
pub fn minimal_module_generators(
    ring: &QuotientRing,
    rank: usize,
    shifts: &[i64],
    candidates: Vec<VectorElement>,
) -> Result<Vec<(VectorElement, Option<i64>)>> {
    let desc = &ring.desc;
    let mut graded: Vec<(VectorElement, i64)> = Vec::new();
    let mut cleaned: Vec<VectorElement> = Vec::new();
    let mut all_graded = true;
    for v in candidates {
        let v = ring.reduce_vector(&v)?;
        if v.is_zero() {
            continue;
        }
        match v.degree_with_shifts(shifts)? {
            Some(d) => graded.push((v.clone(), d)),
            None => all_graded = false,
        }
        cleaned.push(v);
    }
    if !all_graded {
        return Ok(cleaned.into_iter().map(|v| (v, None)).collect());
    }
    graded.sort_by(|a, b| {
        a.1.cmp(&b.1).then_with(|| {
            let (pa, ta) = a.0.lead().unwrap();
            let (pb, tb) = b.0.lead().unwrap();
            crate::monomial::pot_compare((pb, &tb.mon), (pa, &ta.mon), desc.order)
        })
    });
    let mut kept: Vec<(VectorElement, Option<i64>)> = Vec::new();
    let mut kept_raw: Vec<VectorElement> = ring.ideal_times_basis(rank);
    let mut gb = buchberger(&kept_raw, desc, rank)?;
    for (v, d) in graded {
        if normal_form(&v, &gb, false)?.0.is_zero() {
            continue;
        }
        kept_raw.push(v.clone());
        gb = buchberger(&kept_raw, desc, rank)?;
        kept.push((v, Some(d)));
    }
    Ok(kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::MonomialOrder;
    use crate::parse::parse_polynomial;

    fn ring(desc: &Arc<RingDescriptor>, gens: &[&str]) -> Arc<QuotientRing> {
        let polys = gens.iter().map(|s| parse_polynomial(desc, s).unwrap()).collect();
        make_quotient_ring(desc, polys).unwrap()
    }

    #[test]
    fn regular_node_cusp_dimensions() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        assert_eq!(ring(&d, &[]).dim, 2);
        assert_eq!(ring(&d, &["x*y"]).dim, 1);

        let dw = RingDescriptor::new(
            5,
            vec!["x".into(), "y".into()],
            Some(vec![2, 3]),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        assert_eq!(ring(&dw, &["y^2 - x^3"]).dim, 1);
    }

    #[test]
    fn rejects_inhomogeneous_and_unit_ideals() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let bad = parse_polynomial(&d, "x + x^2").unwrap();
        assert!(matches!(make_quotient_ring(&d, vec![bad]), Err(Error::Grading(_))));
        let unit = parse_polynomial(&d, "3").unwrap();
        assert!(matches!(make_quotient_ring(&d, vec![unit]), Err(Error::DegenerateRing)));
    }

    #[test]
    fn bracket_power_examples() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let gens = vec![
            parse_polynomial(&d, "x").unwrap(),
            parse_polynomial(&d, "y").unwrap(),
        ];
        let b = bracket_power(&gens, 1).unwrap();
        assert_eq!(b[0], parse_polynomial(&d, "x^5").unwrap());
        assert_eq!(b[1], parse_polynomial(&d, "y^5").unwrap());

        assert_eq!(bracket_power(&gens, 0).unwrap(), gens);

        let mixed = vec![
            parse_polynomial(&d, "x + y").unwrap(),
            parse_polynomial(&d, "x*y").unwrap(),
        ];
        let b1 = bracket_power(&mixed, 1).unwrap();
        assert_eq!(b1[0], parse_polynomial(&d, "x^5 + y^5").unwrap());
        assert_eq!(b1[1], parse_polynomial(&d, "x^5*y^5").unwrap());
    }

    #[test]
    fn bracket_composition_law() {
        let d = RingDescriptor::simple(3, &["x", "y"]);
        let gens = vec![
            parse_polynomial(&d, "x^2 + x*y").unwrap(),
            parse_polynomial(&d, "y^3 + 2*x^3").unwrap(),
        ];
        let twice = bracket_power(&bracket_power(&gens, 1).unwrap(), 2).unwrap();
        let once = bracket_power(&gens, 3).unwrap();
        assert_eq!(twice, once);
    }

    #[test]
    fn colengths_over_quotients() {
        let d = RingDescriptor::simple(5, &["x", "y"]);
        let node = ring(&d, &["x*y"]);
        // lambda(R/m^[5]) over the node = 2*5 - 1
        let mq = node.irrelevant_bracket(1).unwrap();
        assert_eq!(node.colength_of_ideal(&mq).unwrap(), (true, Some(9)));
        // the ring itself has infinite length
        assert_eq!(node.colength_of_ideal(&[]).unwrap(), (false, None));
    }
}
