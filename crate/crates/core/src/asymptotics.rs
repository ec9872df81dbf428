//! Length sequences e -> lambda(H_i(F^e(G.))), Hilbert-Kunz multiplicity,
//! limit estimation against the c*q^d + b*q^(d-1) growth form, tight-closure
//! evidence, the R-vs-R^eq comparison, and the regularity verdict.

use std::sync::Arc;

use num_rational::Ratio;
use rayon::prelude::*;

use crate::complex::FreeComplex;
use crate::error::{Error, Result};
use crate::groebner::normal_form;
use crate::homology::{frobenius_complex, homology_length};
use crate::poly::Polynomial;
use crate::quotient::{make_quotient_ring, QuotientRing};
use crate::resolution::{minimal_free_resolution, ResolutionRequest};
use crate::vector::VectorElement;

pub type Rational = Ratio<i128>;

pub fn rational_to_f64(r: &Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact rational from a plain decimal literal like "0.01" or "-2.5".
pub fn rational_from_decimal(s: &str) -> Result<Rational> {
    let t = s.trim();
    let (neg, t) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = match t.split_once('.') {
        Some((a, b)) => (a, b),
        None => (t, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(Error::Input(format!("bad decimal literal '{s}'")));
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(Error::Input(format!("bad decimal literal '{s}'")));
    }
    let mut numer: i128 = if int_part.is_empty() { 0 } else { int_part.parse().map_err(|_| Error::Input(format!("decimal '{s}' too large")))? };
    let mut denom: i128 = 1;
    for c in frac_part.chars() {
        numer = numer
            .checked_mul(10)
            .and_then(|n| n.checked_add((c as u8 - b'0') as i128))
            .ok_or_else(|| Error::Input(format!("decimal '{s}' too large")))?;
        denom = denom
            .checked_mul(10)
            .ok_or_else(|| Error::Input(format!("decimal '{s}' too large")))?;
    }
    let r = Rational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

/// q^k as an exact rational; k may be negative.
fn q_pow(q: u64, k: i64) -> Rational {
    let mut acc = Rational::from_integer(1);
    let qr = Rational::from_integer(q as i128);
    for _ in 0..k.unsigned_abs() {
        acc *= qr;
    }
    if k < 0 {
        Rational::from_integer(1) / acc
    } else {
        acc
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SeqEntry {
    pub e: u32,
    pub q: u64,
    pub lambda: u64,
}

/// Table e -> lambda with the normalization dimension d; entries strictly
/// increasing in e with q = p^e exactly.
#[derive(Debug, Clone)]
pub struct LengthSequence {
    pub ring: String,
    pub spot: usize,
    pub d: i64,
    pub entries: Vec<SeqEntry>,
}

impl LengthSequence {
    pub fn normalized(&self, entry: &SeqEntry) -> Rational {
        Rational::from_integer(entry.lambda as i128) / q_pow(entry.q, self.d)
    }

    pub fn all_zero_for_positive_e(&self) -> bool {
        self.entries.iter().filter(|en| en.e >= 1).all(|en| en.lambda == 0)
    }
}

/// Fitted leading coefficient of lambda(e) against {q^d, q^(d-1)} with exact
/// rational least squares; two usable points degenerate to interpolation.
#[derive(Debug, Clone)]
pub struct LimitEstimate {
    pub c: Rational,
    pub b: Rational,
    pub relative_residual: Rational,
    pub method: String,
    pub e_range: (u32, u32),
    pub low_confidence: bool,
}

pub fn limit_estimate(seq: &LengthSequence) -> Result<LimitEstimate> {
    let mut usable: Vec<&SeqEntry> = seq.entries.iter().filter(|en| en.e >= 2).collect();
    let mut method = String::from("ls{q^d,q^(d-1)};e>=2");
    if usable.len() < 2 {
        // small-table fallback: admit e = 1 so two-point runs interpolate
        usable = seq.entries.iter().filter(|en| en.e >= 1).collect();
        method = String::from("ls{q^d,q^(d-1)};e>=1-fallback");
    }
    if usable.len() < 2 {
        return Err(Error::InsufficientData(format!(
            "limit estimation needs at least 2 entries with e >= 1, have {}",
            usable.len()
        )));
    }
    let d = seq.d;
    let mut sxx = Rational::from_integer(0);
    let mut sxy = Rational::from_integer(0);
    let mut syy = Rational::from_integer(0);
    let mut sxl = Rational::from_integer(0);
    let mut syl = Rational::from_integer(0);
    for en in &usable {
        let x = q_pow(en.q, d);
        let y = q_pow(en.q, d - 1);
        let l = Rational::from_integer(en.lambda as i128);
        sxx += x * x;
        sxy += x * y;
        syy += y * y;
        sxl += x * l;
        syl += y * l;
    }
    let det = sxx * syy - sxy * sxy;
    if det == Rational::from_integer(0) {
        return Err(Error::InsufficientData("degenerate fit design".into()));
    }
    let mut c = (sxl * syy - syl * sxy) / det;
    let b = (sxx * syl - sxy * sxl) / det;
    if c < Rational::from_integer(0) {
        method.push_str(";c-clamped");
        c = Rational::from_integer(0);
    }
    let mut abs_err = Rational::from_integer(0);
    let mut abs_data = Rational::from_integer(0);
    for en in &usable {
        let x = q_pow(en.q, d);
        let y = q_pow(en.q, d - 1);
        let l = Rational::from_integer(en.lambda as i128);
        let diff = l - (c * x + b * y);
        abs_err += if diff < Rational::from_integer(0) { -diff } else { diff };
        abs_data += l;
    }
    let relative_residual = if abs_data == Rational::from_integer(0) {
        Rational::from_integer(0)
    } else {
        abs_err / abs_data
    };
    let e_min = usable.iter().map(|en| en.e).min().unwrap();
    let e_max = usable.iter().map(|en| en.e).max().unwrap();
    Ok(LimitEstimate {
        c,
        b,
        relative_residual,
        method,
        e_range: (e_min, e_max),
        low_confidence: usable.len() == 2,
    })
}

/// Resolves k once to length l, then tabulates lambda(H_i(F^e(G.))) for all
/// requested spots; per-(spot, e) computations run independently.
pub fn tor_sequences(
    ring: &Arc<QuotientRing>,
    spots: &[usize],
    e_max: u32,
    l: usize,
) -> Result<Vec<LengthSequence>> {
    for &i in spots {
        if l < i + 1 {
            return Err(Error::Precondition(format!(
                "resolution length {l} too short for spot {i} (need l >= i+1)"
            )));
        }
    }
    let res = minimal_free_resolution(&ResolutionRequest::residue_field(ring.clone(), l))?;
    tor_sequences_from(ring, &res, spots, e_max)
}

/// Same tables over an already-built resolution-like complex.
pub fn tor_sequences_from(
    ring: &Arc<QuotientRing>,
    res: &FreeComplex,
    spots: &[usize],
    e_max: u32,
) -> Result<Vec<LengthSequence>> {
    let twisted: Vec<FreeComplex> = (0..=e_max)
        .map(|e| frobenius_complex(res, e))
        .collect::<Result<Vec<_>>>()?;
    let mut jobs: Vec<(usize, u32)> = Vec::new();
    for &i in spots {
        for e in 0..=e_max {
            jobs.push((i, e));
        }
    }
    let computed: Vec<((usize, u32), (bool, Option<u64>))> = jobs
        .par_iter()
        .map(|&(i, e)| {
            let r = homology_length(&twisted[e as usize], i);
            r.map(|v| ((i, e), v))
        })
        .collect::<Result<Vec<_>>>()?;
    let mut out = Vec::with_capacity(spots.len());
    for &i in spots {
        let mut entries = Vec::with_capacity(e_max as usize + 1);
        for e in 0..=e_max {
            let (finite, len) = computed
                .iter()
                .find(|(k, _)| *k == (i, e))
                .map(|(_, v)| *v)
                .unwrap();
            if !finite {
                return Err(Error::Precondition(format!(
                    "infinite homology length at spot {i}, e = {e}"
                )));
            }
            entries.push(SeqEntry { e, q: ring.desc.q(e)?, lambda: len.unwrap() });
        }
        out.push(LengthSequence {
            ring: ring.canonical(),
            spot: i,
            d: ring.dim,
            entries,
        });
    }
    Ok(out)
}

pub fn tor_length_sequence(
    ring: &Arc<QuotientRing>,
    i: usize,
    e_max: u32,
    l: usize,
) -> Result<LengthSequence> {
    Ok(tor_sequences(ring, &[i], e_max, l)?.pop().unwrap())
}

/// lambda(R/m^[q]) per e (straight GB colength, no resolution) plus the
/// normalized limit estimate; the i = 0 member of the t_i family.
pub fn hilbert_kunz(
    ring: &Arc<QuotientRing>,
    e_max: u32,
) -> Result<(LengthSequence, LimitEstimate)> {
    if e_max < 2 {
        return Err(Error::Precondition("hilbert_kunz needs e_max >= 2".into()));
    }
    let mut entries = Vec::with_capacity(e_max as usize + 1);
    for e in 0..=e_max {
        let mq = ring.irrelevant_bracket(e)?;
        let (finite, len) = ring.colength_of_ideal(&mq)?;
        if !finite {
            return Err(Error::Internal("R/m^[q] must have finite length".into()));
        }
        entries.push(SeqEntry { e, q: ring.desc.q(e)?, lambda: len.unwrap() });
    }
    let seq = LengthSequence {
        ring: ring.canonical(),
        spot: 0,
        d: ring.dim,
        entries,
    };
    let est = limit_estimate(&seq)?;
    Ok((seq, est))
}

/// Evidence for W inside the tight closure of N (free-module case M = R):
/// lambda(W^[q]/N^[q]) per e with its normalized limit estimate.
#[derive(Debug, Clone)]
pub struct TightClosureReport {
    pub sequence: LengthSequence,
    pub estimate: LimitEstimate,
    pub tol: Rational,
    pub evidence_for_containment: bool,
}

pub fn tight_closure_evidence(
    ring: &Arc<QuotientRing>,
    n_gens: &[Polynomial],
    w_gens: &[Polynomial],
    e_max: u32,
    tol: Rational,
) -> Result<TightClosureReport> {
    let desc = &ring.desc;
    // N must sit inside W
    let w_vecs: Vec<VectorElement> =
        w_gens.iter().map(|f| VectorElement::from_poly(f.clone())).collect();
    let gb_w = ring.submodule_gb(&w_vecs, 1)?;
    for f in n_gens {
        if !normal_form(&VectorElement::from_poly(f.clone()), &gb_w, false)?.0.is_zero() {
            return Err(Error::Precondition(format!(
                "N generator '{f}' does not lie in W"
            )));
        }
    }
    let lam = |e: u32| -> Result<(bool, Option<u64>)> {
        let nq = crate::quotient::bracket_power(n_gens, e)?;
        let wq = crate::quotient::bracket_power(w_gens, e)?;
        let (fin_n, len_n) = ring.colength_of_ideal(&nq)?;
        let (fin_w, len_w) = ring.colength_of_ideal(&wq)?;
        if fin_n && fin_w {
            return Ok((true, Some(len_n.unwrap() - len_w.unwrap())));
        }
        // quotient presentation: relations of the classes of w_j^q modulo
        // N^[q] + I inside R
        let t = wq.len();
        let big = 1 + t;
        let mut gens: Vec<VectorElement> = Vec::new();
        for (j, w) in wq.iter().enumerate() {
            let mut v = VectorElement::zero(desc, big);
            v.components[0] = w.clone();
            v.components[1 + j] = Polynomial::one(desc);
            gens.push(v);
        }
        for f in nq.iter().chain(ring.ideal_gens.iter()) {
            gens.push(VectorElement::unit(desc, big, 0, f.clone()));
        }
        let gb = crate::groebner::buchberger(&gens, desc, big)?;
        let mut rel_gens = Vec::new();
        let mut rel_leads = Vec::new();
        for g in &gb.gens {
            if g.components[0].is_zero() {
                let tail = VectorElement { components: g.components[1..].to_vec() };
                if let Some((pos, term)) = tail.lead() {
                    rel_leads.push((pos, term.mon.clone()));
                    rel_gens.push(tail);
                }
            }
        }
        let rel_gb = crate::groebner::GroebnerBasis {
            desc: desc.clone(),
            rank: t,
            gens: rel_gens,
            leads: rel_leads,
            reduced: false,
        };
        Ok(crate::groebner::standard_monomial_count(&rel_gb))
    };

    // finite-length precondition on W/N itself (e = 0)
    let (fin0, len0) = lam(0)?;
    if !fin0 {
        return Err(Error::Precondition("W/N does not have finite length".into()));
    }
    let mut entries =
        vec![SeqEntry { e: 0, q: 1, lambda: len0.unwrap() }];
    for e in 1..=e_max {
        let (finite, len) = lam(e)?;
        if !finite {
            return Err(Error::Precondition(format!(
                "W^[q]/N^[q] has infinite length at e = {e}"
            )));
        }
        entries.push(SeqEntry { e, q: desc.q(e)?, lambda: len.unwrap() });
    }
    let seq = LengthSequence {
        ring: ring.canonical(),
        spot: 0,
        d: ring.dim,
        entries,
    };
    let estimate = limit_estimate(&seq)?;
    let evidence = estimate.c <= tol;
    Ok(TightClosureReport {
        sequence: seq,
        estimate,
        tol,
        evidence_for_containment: evidence,
    })
}

/// Per-e comparison of normalized homology lengths over R and over the
/// user-supplied equidimensional quotient R^eq.
#[derive(Debug, Clone)]
pub struct CompareReqRow {
    pub e: u32,
    pub q: u64,
    pub lambda_r: u64,
    pub lambda_req: u64,
    pub gap: Rational,
}

#[derive(Debug, Clone)]
pub struct CompareReqReport {
    pub spot: usize,
    pub d: i64,
    pub rows: Vec<CompareReqRow>,
    pub seq_r: LengthSequence,
    pub seq_req: LengthSequence,
    pub est_r: LimitEstimate,
    pub est_req: LimitEstimate,
    pub tol: Rational,
    pub consistent: bool,
}

pub fn compare_req(
    ring: &Arc<QuotientRing>,
    req_gens: Vec<Polynomial>,
    i: usize,
    e_max: u32,
    l: usize,
    tol: Rational,
) -> Result<CompareReqReport> {
    if l < i + 1 {
        return Err(Error::Precondition(format!(
            "resolution length {l} too short for spot {i}"
        )));
    }
    let res = minimal_free_resolution(&ResolutionRequest::residue_field(ring.clone(), l))?;
    compare_req_from(ring, &res, req_gens, i, e_max, tol)
}

/// Same comparison over an already-built resolution of k.
pub fn compare_req_from(
    ring: &Arc<QuotientRing>,
    res: &FreeComplex,
    req_gens: Vec<Polynomial>,
    i: usize,
    e_max: u32,
    tol: Rational,
) -> Result<CompareReqReport> {
    let ring_req = make_quotient_ring(&ring.desc, req_gens)?;
    for f in &ring.ideal_gens {
        if !ring_req.is_zero_mod(f)? {
            return Err(Error::Input(format!(
                "the R^eq ideal must contain the defining ideal; '{f}' is missing"
            )));
        }
    }
    if res.length() < i + 1 {
        return Err(Error::Precondition(format!(
            "resolution length {} too short for spot {i}",
            res.length()
        )));
    }
    let res_req = FreeComplex::new(
        ring_req.clone(),
        res.ranks.clone(),
        res.shifts.clone(),
        res.mats.clone(),
    )?;
    let seq_r = tor_sequences_from(ring, res, &[i], e_max)?.pop().unwrap();
    let mut seq_req = tor_sequences_from(&ring_req, &res_req, &[i], e_max)?.pop().unwrap();
    // both sides normalize by q^dim(R), the paper's d
    seq_req.d = ring.dim;
    let d = ring.dim;
    let mut rows = Vec::with_capacity(e_max as usize + 1);
    for (a, b) in seq_r.entries.iter().zip(seq_req.entries.iter()) {
        let gr = Rational::from_integer(a.lambda as i128) / q_pow(a.q, d);
        let gq = Rational::from_integer(b.lambda as i128) / q_pow(b.q, d);
        let gap = if gr >= gq { gr - gq } else { gq - gr };
        rows.push(CompareReqRow { e: a.e, q: a.q, lambda_r: a.lambda, lambda_req: b.lambda, gap });
    }
    let est_r = limit_estimate(&seq_r)?;
    let est_req = limit_estimate(&seq_req)?;
    let diff = est_r.c - est_req.c;
    let consistent = (if diff < Rational::from_integer(0) { -diff } else { diff }) <= tol;
    Ok(CompareReqReport {
        spot: i,
        d,
        rows,
        seq_r,
        seq_req,
        est_r,
        est_req,
        tol,
        consistent,
    })
}

/// Syntactic regularity: eliminates variables occurring linearly (as a bare
/// term) from the defining ideal; R is regular iff nothing is left.
pub fn direct_regularity_oracle(ring: &QuotientRing) -> Result<bool> {
    let desc = &ring.desc;
    let p = desc.p;
    let mut gens: Vec<Polynomial> = ring
        .ideal_gens
        .iter()
        .cloned()
        .filter(|f| !f.is_zero())
        .collect();
    loop {
        let mut eliminated = false;
        'search: for gi in 0..gens.len() {
            for j in 0..desc.nvars() {
                let bare = gens[gi]
                    .terms()
                    .iter()
                    .find(|t| t.mon.exps[j] == 1 && t.mon.deg == desc.weights[j]
                        && t.mon.exps.iter().enumerate().all(|(k, &e)| k == j || e == 0));
                if let Some(term) = bare {
                    let c = term.coeff;
                    // g = c x_j + h with h free of x_j; substitute x_j = -h/c
                    let cxj = Polynomial::monomial(desc, c, term.mon.clone());
                    let h = gens[gi].sub(&cxj)?;
                    let replacement = h.neg().scale(crate::fp::inv(c, p));
                    let mut next = Vec::with_capacity(gens.len() - 1);
                    for (k, g) in gens.iter().enumerate() {
                        if k == gi {
                            continue;
                        }
                        let s = g.substitute(j, &replacement)?;
                        if !s.is_zero() {
                            next.push(s);
                        }
                    }
                    gens = next;
                    eliminated = true;
                    break 'search;
                }
            }
        }
        if !eliminated {
            break;
        }
    }
    Ok(gens.is_empty())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VerdictKind {
    RegularCertified,
    RegularEvidence,
    NonRegularEvidence,
    Inconclusive,
}

impl VerdictKind {
    pub fn name(&self) -> &'static str {
        match self {
            VerdictKind::RegularCertified => "RegularCertified",
            VerdictKind::RegularEvidence => "RegularEvidence",
            VerdictKind::NonRegularEvidence => "NonRegularEvidence",
            VerdictKind::Inconclusive => "Inconclusive",
        }
    }
}

#[derive(Debug, Clone)]
pub struct SpotEvidence {
    pub spot: usize,
    pub sequence: LengthSequence,
    pub estimate: Option<LimitEstimate>,
}

#[derive(Debug, Clone)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub witness_spot: Option<usize>,
    pub e_max: u32,
    pub length: usize,
    pub tol: Rational,
    pub per_spot: Vec<SpotEvidence>,
    pub oracle_regular: bool,
    /// Set when the length data and the syntactic oracle contradict each
    /// other; such a report is an internal error, not evidence.
    pub inconsistency: bool,
    pub notes: Vec<String>,
}

/// Verdict logic: a spot with identically zero lengths certifies regularity
/// when the syntactic oracle concurs; positive estimates at every spot are
/// evidence of non-regularity; thin data stays inconclusive.
pub fn regularity_verdict(
    ring: &Arc<QuotientRing>,
    spots: &[usize],
    e_max: u32,
    l: usize,
    tol: Rational,
) -> Result<Verdict> {
    for &i in spots {
        if l < i + 1 {
            return Err(Error::Precondition(format!(
                "resolution length {l} too short for spot {i}"
            )));
        }
    }
    let res = minimal_free_resolution(&ResolutionRequest::residue_field(ring.clone(), l))?;
    regularity_verdict_from(ring, &res, spots, e_max, tol)
}

/// Verdict over an already-built resolution of k.
pub fn regularity_verdict_from(
    ring: &Arc<QuotientRing>,
    res: &FreeComplex,
    spots: &[usize],
    e_max: u32,
    tol: Rational,
) -> Result<Verdict> {
    let l = res.length();
    if spots.is_empty() {
        return Err(Error::Precondition("at least one spot i > 0 is required".into()));
    }
    if spots.iter().any(|&i| i == 0) {
        return Err(Error::Precondition("verdict spots must be positive".into()));
    }
    if spots.iter().any(|&i| l < i + 1) {
        return Err(Error::Precondition(format!(
            "resolution length {l} too short for the requested spots"
        )));
    }
    if tol <= Rational::from_integer(0) {
        return Err(Error::Precondition("tolerance must be positive".into()));
    }
    let oracle_regular = direct_regularity_oracle(ring)?;
    let seqs = tor_sequences_from(ring, res, spots, e_max)?;

    let mut per_spot: Vec<SpotEvidence> = Vec::with_capacity(spots.len());
    let mut zero_spot: Option<usize> = None;
    for seq in seqs {
        if seq.all_zero_for_positive_e() && zero_spot.is_none() {
            zero_spot = Some(seq.spot);
        }
        let estimate = limit_estimate(&seq).ok();
        per_spot.push(SpotEvidence { spot: seq.spot, sequence: seq, estimate });
    }

    let mut notes = Vec::new();
    let (kind, witness, inconsistency) = if let Some(w) = zero_spot {
        if oracle_regular {
            (VerdictKind::RegularCertified, Some(w), false)
        } else {
            notes.push(format!(
                "internal error: lambda identically zero at spot {w} but the \
                 syntactic oracle reports a singular presentation"
            ));
            (VerdictKind::Inconclusive, Some(w), true)
        }
    } else if e_max < 2 {
        notes.push("insufficient data: the growth fit needs e_max >= 2".into());
        (VerdictKind::Inconclusive, None, false)
    } else {
        let cs: Vec<(usize, Option<Rational>)> = per_spot
            .iter()
            .map(|s| (s.spot, s.estimate.as_ref().map(|e| e.c)))
            .collect();
        if cs.iter().all(|(_, c)| matches!(c, Some(c) if *c > tol)) {
            (VerdictKind::NonRegularEvidence, Some(cs[0].0), false)
        } else if let Some((w, _)) =
            cs.iter().find(|(_, c)| matches!(c, Some(c) if *c <= tol))
        {
            (VerdictKind::RegularEvidence, Some(*w), false)
        } else {
            notes.push("some spots lack a usable growth fit".into());
            (VerdictKind::Inconclusive, None, false)
        }
    };
    Ok(Verdict {
        kind,
        witness_spot: witness,
        e_max,
        length: l,
        tol,
        per_spot,
        oracle_regular,
        inconsistency,
        notes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::descriptor::{MonomialOrder, RingDescriptor};
    use crate::parse::parse_polynomial;

    fn pring(p: u64, vars: &[&str]) -> Arc<QuotientRing> {
        QuotientRing::polynomial_ring(&RingDescriptor::simple(p, vars))
    }

    fn qring(p: u64, vars: &[&str], gens: &[&str]) -> Arc<QuotientRing> {
        let d = RingDescriptor::simple(p, vars);
        let polys = gens.iter().map(|s| parse_polynomial(&d, s).unwrap()).collect();
        make_quotient_ring(&d, polys).unwrap()
    }

    fn rat(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn decimal_parsing() {
        assert_eq!(rational_from_decimal("0.01").unwrap(), rat(1, 100));
        assert_eq!(rational_from_decimal("2").unwrap(), rat(2, 1));
        assert_eq!(rational_from_decimal("-1.5").unwrap(), rat(-3, 2));
        assert!(rational_from_decimal("abc").is_err());
    }

    #[test]
    fn two_point_interpolation_of_node_data() {
        let seq = LengthSequence {
            ring: "test".into(),
            spot: 0,
            d: 1,
            entries: vec![
                SeqEntry { e: 1, q: 5, lambda: 9 },
                SeqEntry { e: 2, q: 25, lambda: 49 },
            ],
        };
        let est = limit_estimate(&seq).unwrap();
        assert_eq!(est.c, rat(2, 1));
        assert_eq!(est.b, rat(-1, 1));
        assert_eq!(est.relative_residual, rat(0, 1));
        assert!(est.low_confidence);
    }

    #[test]
    fn exact_square_growth() {
        let entries = [1u32, 2, 3]
            .iter()
            .map(|&e| {
                let q = 3u64.pow(e);
                SeqEntry { e, q, lambda: q * q }
            })
            .collect();
        let seq = LengthSequence { ring: "t".into(), spot: 0, d: 2, entries };
        let est = limit_estimate(&seq).unwrap();
        assert_eq!(est.c, rat(1, 1));
        assert_eq!(est.b, rat(0, 1));
        assert_eq!(est.relative_residual, rat(0, 1));
    }

    #[test]
    fn all_zero_sequence() {
        let entries = (1..=3u32)
            .map(|e| SeqEntry { e, q: 5u64.pow(e), lambda: 0 })
            .collect();
        let seq = LengthSequence { ring: "t".into(), spot: 1, d: 2, entries };
        let est = limit_estimate(&seq).unwrap();
        assert_eq!(est.c, rat(0, 1));
        assert_eq!(est.b, rat(0, 1));
        assert_eq!(est.relative_residual, rat(0, 1));
    }

    #[test]
    fn synthetic_rational_recovery() {
        // lambda = (1/2) q^2 + (3/2) q over p = 2 stays integral
        let entries = (2..=5u32)
            .map(|e| {
                let q = 2u64.pow(e);
                SeqEntry { e, q, lambda: (q * q) / 2 + 3 * q / 2 }
            })
            .collect();
        let seq = LengthSequence { ring: "t".into(), spot: 0, d: 2, entries };
        let est = limit_estimate(&seq).unwrap();
        assert_eq!(est.c, rat(1, 2));
        assert_eq!(est.b, rat(3, 2));
        assert_eq!(est.relative_residual, rat(0, 1));
        assert!(!est.low_confidence);
    }

    #[test]
    fn insufficient_data() {
        let seq = LengthSequence {
            ring: "t".into(),
            spot: 0,
            d: 1,
            entries: vec![SeqEntry { e: 1, q: 5, lambda: 9 }],
        };
        assert!(matches!(limit_estimate(&seq), Err(Error::InsufficientData(_))));
    }

    #[test]
    fn hk_regular_plane() {
        let r = pring(5, &["x", "y"]);
        let (seq, est) = hilbert_kunz(&r, 3).unwrap();
        for en in &seq.entries {
            assert_eq!(en.lambda, en.q * en.q);
        }
        assert_eq!(est.c, rat(1, 1));
        assert_eq!(est.b, rat(0, 1));
    }

    #[test]
    fn hk_node() {
        let node = qring(5, &["x", "y"], &["x*y"]);
        let (seq, est) = hilbert_kunz(&node, 3).unwrap();
        for en in seq.entries.iter().filter(|en| en.e >= 1) {
            assert_eq!(en.lambda, 2 * en.q - 1);
        }
        assert_eq!(est.c, rat(2, 1));
        assert_eq!(est.b, rat(-1, 1));
    }

    #[test]
    fn hk_whisker_line() {
        // F_3[x,y,z]/(xy,xz): lambda = q^2 + q - 1, d = 2, c = 1
        let r = qring(3, &["x", "y", "z"], &["x*y", "x*z"]);
        assert_eq!(r.dim, 2);
        let (seq, est) = hilbert_kunz(&r, 3).unwrap();
        for en in seq.entries.iter().filter(|en| en.e >= 1) {
            assert_eq!(en.lambda, en.q * en.q + en.q - 1);
        }
        assert!((est.c - rat(1, 1)) < rat(1, 100));
    }

    #[test]
    fn tor_sequences_regular_and_node() {
        let r = pring(5, &["x", "y"]);
        let seq = tor_length_sequence(&r, 1, 2, 3).unwrap();
        assert!(seq.all_zero_for_positive_e());
        assert_eq!(seq.entries[0].lambda, 0);

        let node = qring(5, &["x", "y"], &["x*y"]);
        let seq0 = tor_length_sequence(&node, 0, 2, 2).unwrap();
        for en in seq0.entries.iter().filter(|en| en.e >= 1) {
            assert_eq!(en.lambda, 2 * en.q - 1);
        }
        // e = 0 at positive spots: resolution exactness
        let seq1 = tor_length_sequence(&node, 1, 2, 3).unwrap();
        assert_eq!(seq1.entries[0].lambda, 0);
        assert!(seq1.entries[1].lambda > 0);
    }

    #[test]
    fn direct_oracle_cases() {
        assert!(direct_regularity_oracle(&pring(5, &["x", "y", "z"])).unwrap());
        assert!(direct_regularity_oracle(&qring(5, &["x", "y"], &["x - y"])).unwrap());
        assert!(!direct_regularity_oracle(&qring(5, &["x", "y"], &["x*y"])).unwrap());
        assert!(!direct_regularity_oracle(&qring(5, &["x", "y", "z"], &["x^2+y^2+z^2"])).unwrap());
        // cascading elimination
        let d = RingDescriptor::new(
            5,
            vec!["x".into(), "y".into(), "z".into()],
            Some(vec![2, 1, 2]),
            MonomialOrder::Grevlex,
        )
        .unwrap();
        let gens = vec![
            parse_polynomial(&d, "x - y^2").unwrap(),
            parse_polynomial(&d, "z - x").unwrap(),
        ];
        let r = make_quotient_ring(&d, gens).unwrap();
        assert!(direct_regularity_oracle(&r).unwrap());
    }

    #[test]
    fn verdict_regular_certified() {
        let r = pring(5, &["x", "y"]);
        let v = regularity_verdict(&r, &[1, 2], 2, 3, rat(1, 100)).unwrap();
        assert_eq!(v.kind, VerdictKind::RegularCertified);
        assert!(v.oracle_regular);
        assert!(!v.inconsistency);
    }

    #[test]
    fn verdict_node_nonregular() {
        let node = qring(5, &["x", "y"], &["x*y"]);
        let v = regularity_verdict(&node, &[1], 3, 2, rat(1, 100)).unwrap();
        assert_eq!(v.kind, VerdictKind::NonRegularEvidence);
        let est = v.per_spot[0].estimate.as_ref().unwrap();
        assert!(est.c > rat(1, 20));
    }

    #[test]
    fn verdict_inconclusive_on_thin_data() {
        let node = qring(5, &["x", "y"], &["x*y"]);
        let v = regularity_verdict(&node, &[1], 1, 2, rat(1, 100)).unwrap();
        assert_eq!(v.kind, VerdictKind::Inconclusive);
    }

    #[test]
    fn tight_closure_negative_control() {
        // regular ring: tight closure is trivial, normalized sequence sits at 2
        let r = pring(5, &["x", "y"]);
        let d = &r.desc;
        let n = vec![
            parse_polynomial(d, "x^2").unwrap(),
            parse_polynomial(d, "y^2").unwrap(),
        ];
        let mut w = n.clone();
        w.push(parse_polynomial(d, "x").unwrap());
        let rep = tight_closure_evidence(&r, &n, &w, 2, rat(1, 100)).unwrap();
        for en in rep.sequence.entries.iter().filter(|en| en.e >= 1) {
            assert_eq!(en.lambda, 2 * en.q * en.q);
        }
        assert!(!rep.evidence_for_containment);
        assert_eq!(rep.estimate.c, rat(2, 1));
    }

    #[test]
    fn tight_closure_w_equals_n() {
        let r = qring(5, &["x", "y"], &["x*y"]);
        let d = &r.desc;
        let n = vec![
            parse_polynomial(d, "x^2").unwrap(),
            parse_polynomial(d, "y^2").unwrap(),
        ];
        let rep = tight_closure_evidence(&r, &n, &n, 2, rat(1, 100)).unwrap();
        assert!(rep.sequence.entries.iter().all(|en| en.lambda == 0));
        assert!(rep.evidence_for_containment);
    }

    #[test]
    fn tight_closure_rejects_bad_inputs() {
        let r = pring(5, &["x", "y"]);
        let d = &r.desc;
        let n = vec![parse_polynomial(d, "x^2").unwrap()];
        let w = vec![parse_polynomial(d, "y").unwrap()];
        // N not inside W
        assert!(tight_closure_evidence(&r, &n, &w, 2, rat(1, 100)).is_err());
        // W/N infinite length: W = (x), N = (x^2) leaves a 1-dim quotient
        let n2 = vec![parse_polynomial(d, "x^2").unwrap()];
        let w2 = vec![parse_polynomial(d, "x").unwrap()];
        assert!(matches!(
            tight_closure_evidence(&r, &n2, &w2, 2, rat(1, 100)),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn compare_req_trivial_when_req_is_the_ideal() {
        let node = qring(5, &["x", "y"], &["x*y"]);
        let req = vec![parse_polynomial(&node.desc, "x*y").unwrap()];
        let rep = compare_req(&node, req, 0, 2, 2, rat(1, 1000)).unwrap();
        for row in &rep.rows {
            assert_eq!(row.gap, rat(0, 1));
        }
        assert!(rep.consistent);
    }

    #[test]
    fn compare_req_whisker_spot_zero() {
        let r = qring(3, &["x", "y", "z"], &["x*y", "x*z"]);
        let req = vec![parse_polynomial(&r.desc, "x").unwrap()];
        let rep = compare_req(&r, req, 0, 3, 2, rat(1, 10)).unwrap();
        for row in rep.rows.iter().filter(|r| r.e >= 1) {
            assert_eq!(row.lambda_r, row.q * row.q + row.q - 1);
            assert_eq!(row.lambda_req, row.q * row.q);
            let expect = Rational::new((row.q - 1) as i128, (row.q * row.q) as i128);
            assert_eq!(row.gap, expect);
        }
        assert!(rep.consistent);
    }

    #[test]
    fn compare_req_requires_containment() {
        let node = qring(5, &["x", "y"], &["x*y"]);
        let req = vec![parse_polynomial(&node.desc, "x^2").unwrap()];
        assert!(matches!(
            compare_req(&node, req, 0, 2, 2, rat(1, 100)),
            Err(Error::Input(_))
        ));
    }
}
