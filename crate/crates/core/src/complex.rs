//! Free complexes over R = S/I: dense polynomial matrices, Koszul complexes,
//! chain maps, mapping cones and complex verification.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poly::{DegreeOf, Polynomial};
use crate::quotient::QuotientRing;
use crate::vector::VectorElement;

/// Dense row-major matrix of polynomials. Ranks in scope are small; sparsity
/// lives inside the polynomials, not the matrix shell.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mat {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<Polynomial>,
}

impl Mat {
    pub fn zero(ring: &QuotientRing, rows: usize, cols: usize) -> Self {
        Mat { rows, cols, entries: vec![Polynomial::zero(&ring.desc); rows * cols] }
    }

    pub fn from_rows(rows_of: Vec<Vec<Polynomial>>) -> Self {
        let rows = rows_of.len();
        let cols = rows_of.first().map(|r| r.len()).unwrap_or(0);
        let mut entries = Vec::with_capacity(rows * cols);
        for r in rows_of {
            assert_eq!(r.len(), cols);
            entries.extend(r);
        }
        Mat { rows, cols, entries }
    }

    pub fn at(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i * self.cols + j]
    }

    pub fn at_mut(&mut self, i: usize, j: usize) -> &mut Polynomial {
        &mut self.entries[i * self.cols + j]
    }

    pub fn column(&self, j: usize) -> VectorElement {
        VectorElement {
            components: (0..self.rows).map(|i| self.at(i, j).clone()).collect(),
        }
    }

    pub fn columns(&self) -> Vec<VectorElement> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        assert_eq!(self.cols, other.rows);
        let desc = self
            .entries
            .first()
            .or_else(|| other.entries.first())
            .map(|f| f.descriptor().clone());
        let desc = match desc {
            Some(d) => d,
            None => {
                return Ok(Mat { rows: self.rows, cols: other.cols, entries: Vec::new() })
            }
        };
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let mut acc = Polynomial::zero(&desc);
                for k in 0..self.cols {
                    acc = acc.add(&self.at(i, k).mul(other.at(k, j))?)?;
                }
                entries.push(acc);
            }
        }
        Ok(Mat { rows: self.rows, cols: other.cols, entries })
    }

    pub fn map_entries(
        &self,
        f: impl Fn(&Polynomial) -> Result<Polynomial>,
    ) -> Result<Mat> {
        Ok(Mat {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect::<Result<Vec<_>>>()?,
        })
    }
}

/// Finite left complex of graded free R-modules:
/// F_L -> ... -> F_1 -> F_0, with matrices d_1..d_L in normal form mod I.
#[derive(Debug, Clone)]
pub struct FreeComplex {
    pub ring: Arc<QuotientRing>,
    pub ranks: Vec<usize>,
    pub shifts: Vec<Vec<i64>>,
    pub mats: Vec<Mat>,
}

impl FreeComplex {
    /// Normalizes all entries mod I and checks shape consistency.
    pub fn new(
        ring: Arc<QuotientRing>,
        ranks: Vec<usize>,
        shifts: Vec<Vec<i64>>,
        mats: Vec<Mat>,
    ) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Precondition("a complex needs at least F_0".into()));
        }
        if shifts.len() != ranks.len() || mats.len() + 1 != ranks.len() {
            return Err(Error::Precondition("ranks/shifts/matrices lengths disagree".into()));
        }
        for (i, s) in shifts.iter().enumerate() {
            if s.len() != ranks[i] {
                return Err(Error::Precondition(format!("shift count at module {i}")));
            }
        }
        let mut reduced = Vec::with_capacity(mats.len());
        for (i, m) in mats.into_iter().enumerate() {
            if m.rows != ranks[i] || m.cols != ranks[i + 1] {
                return Err(Error::Precondition(format!(
                    "matrix d_{} is {}x{}, expected {}x{}",
                    i + 1,
                    m.rows,
                    m.cols,
                    ranks[i],
                    ranks[i + 1]
                )));
            }
            reduced.push(m.map_entries(|f| ring.reduce(f))?);
        }
        Ok(FreeComplex { ring, ranks, shifts, mats: reduced })
    }

    /// Homological length L (index of the leftmost module).
    pub fn length(&self) -> usize {
        self.ranks.len() - 1
    }

    pub fn rank(&self, i: usize) -> usize {
        self.ranks.get(i).copied().unwrap_or(0)
    }

    /// d_i for 1 <= i <= L; anything outside is the zero map.
    pub fn matrix(&self, i: usize) -> Option<&Mat> {
        if i >= 1 && i <= self.length() {
            Some(&self.mats[i - 1])
        } else {
            None
        }
    }

    pub fn same_ring(&self, other: &FreeComplex) -> bool {
        self.ring.canonical() == other.ring.canonical()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComplexReport {
    pub is_complex: bool,
    pub is_minimal: bool,
    pub homogeneous: bool,
}

/// Checks d d = 0 mod I, minimality (no entry with a nonzero constant term)
/// and graded consistency of the shifts.
pub fn verify_complex(c: &FreeComplex) -> Result<ComplexReport> {
    let mut is_complex = true;
    for i in 1..c.length() {
        let prod = c.mats[i - 1].mul(&c.mats[i])?;
        for e in &prod.entries {
            if !c.ring.is_zero_mod(e)? {
                is_complex = false;
            }
        }
    }
    let mut is_minimal = true;
    let mut homogeneous = true;
    for i in 1..=c.length() {
        let m = &c.mats[i - 1];
        for r in 0..m.rows {
            for col in 0..m.cols {
                let f = m.at(r, col);
                if f.is_zero() {
                    continue;
                }
                if f.constant_coeff() != 0 {
                    is_minimal = false;
                }
                match f.weighted_degree()? {
                    DegreeOf::Homogeneous(d) => {
                        if d as i64 + c.shifts[i - 1][r] != c.shifts[i][col] {
                            homogeneous = false;
                        }
                    }
                    DegreeOf::Inhomogeneous => homogeneous = false,
                }
            }
        }
    }
    Ok(ComplexReport { is_complex, is_minimal, homogeneous })
}

/// Koszul complex on elements of m with the standard sign convention:
/// d(e_T) = sum_k (-1)^k f_{t_k} e_{T minus t_k} over T = {t_0 < t_1 < ...}.
pub fn koszul_complex(ring: &Arc<QuotientRing>, elements: &[Polynomial]) -> Result<FreeComplex> {
    let mut elems = Vec::with_capacity(elements.len());
    for f in elements {
        let g = ring.reduce(f)?;
        if g.constant_coeff() != 0 {
            return Err(Error::Precondition(format!(
                "koszul element '{g}' is not in the irrelevant maximal ideal"
            )));
        }
        elems.push(g);
    }
    let k = elems.len();
    if k == 0 {
        return FreeComplex::new(ring.clone(), vec![1], vec![vec![0]], vec![]);
    }
    let elem_degs: Vec<Option<u64>> = elems
        .iter()
        .map(|f| {
            if f.is_zero() {
                return None;
            }
            match f.weighted_degree().ok()? {
                DegreeOf::Homogeneous(d) => Some(d),
                DegreeOf::Inhomogeneous => None,
            }
        })
        .collect();
    let graded = elem_degs.iter().all(|d| d.is_some());

    // subsets of {0..k-1} of size i, lexicographic
    let mut levels: Vec<Vec<Vec<usize>>> = Vec::with_capacity(k + 1);
    for i in 0..=k {
        levels.push(combinations(k, i));
    }
    let ranks: Vec<usize> = levels.iter().map(|l| l.len()).collect();
    let shifts: Vec<Vec<i64>> = levels
        .iter()
        .map(|l| {
            l.iter()
                .map(|t| {
                    if graded {
                        t.iter().map(|&j| elem_degs[j].unwrap() as i64).sum()
                    } else {
                        0
                    }
                })
                .collect()
        })
        .collect();

    let mut mats = Vec::with_capacity(k);
    for i in 1..=k {
        let rows = &levels[i - 1];
        let cols = &levels[i];
        let mut m = Mat::zero(ring, rows.len(), cols.len());
        for (cj, t) in cols.iter().enumerate() {
            for (pos, &j) in t.iter().enumerate() {
                let mut t_minus: Vec<usize> = t.clone();
                t_minus.remove(pos);
                let ri = rows.iter().position(|r| r == &t_minus).unwrap();
                let signed =
                    if pos % 2 == 0 { elems[j].clone() } else { elems[j].neg() };
                *m.at_mut(ri, cj) = signed;
            }
        }
        mats.push(m);
    }
    FreeComplex::new(ring.clone(), ranks, shifts, mats)
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(n: usize, k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for j in start..n {
            cur.push(j);
            rec(n, k, j + 1, cur, out);
            cur.pop();
        }
    }
    rec(n, k, 0, &mut cur, &mut out);
    out
}

/// Per-degree maps alpha_i: source_i -> target_i with the commutation
/// invariant d_target alpha_i = alpha_{i-1} d_source mod I.
#[derive(Debug, Clone)]
pub struct ChainMap {
    pub source: FreeComplex,
    pub target: FreeComplex,
    pub maps: Vec<Mat>,
}

impl ChainMap {
    pub fn new(source: FreeComplex, target: FreeComplex, maps: Vec<Mat>) -> Result<Self> {
        if !source.same_ring(&target) {
            return Err(Error::DescriptorMismatch(
                "chain map between complexes over different rings".into(),
            ));
        }
        let upto = source.length().min(target.length());
        if maps.len() != upto + 1 {
            return Err(Error::Precondition(format!(
                "expected {} chain-map matrices, got {}",
                upto + 1,
                maps.len()
            )));
        }
        for (i, m) in maps.iter().enumerate() {
            if m.rows != target.rank(i) || m.cols != source.rank(i) {
                return Err(Error::Precondition(format!("chain map shape at degree {i}")));
            }
        }
        let cm = ChainMap { source, target, maps };
        if !cm.commutes()? {
            return Err(Error::Precondition("chain map squares do not commute".into()));
        }
        Ok(cm)
    }

    pub fn commutes(&self) -> Result<bool> {
        let ring = &self.source.ring;
        let upto = self.source.length().min(self.target.length());
        for i in 1..=upto {
            let lhs = self.target.mats[i - 1].mul(&self.maps[i])?;
            let rhs = self.maps[i - 1].mul(&self.source.mats[i - 1])?;
            for (a, b) in lhs.entries.iter().zip(rhs.entries.iter()) {
                if !ring.is_zero_mod(&a.sub(b)?)? {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Identity chain map on a complex.
    pub fn identity(c: &FreeComplex) -> Result<Self> {
        let maps = (0..=c.length())
            .map(|i| {
                let mut m = Mat::zero(&c.ring, c.rank(i), c.rank(i));
                for j in 0..c.rank(i) {
                    *m.at_mut(j, j) = Polynomial::one(&c.ring.desc);
                }
                m
            })
            .collect();
        ChainMap::new(c.clone(), c.clone(), maps)
    }

    /// Multiplication by a ring element, as a chain self-map.
    pub fn scalar(c: &FreeComplex, f: &Polynomial) -> Result<Self> {
        let maps = (0..=c.length())
            .map(|i| {
                let mut m = Mat::zero(&c.ring, c.rank(i), c.rank(i));
                for j in 0..c.rank(i) {
                    *m.at_mut(j, j) = f.clone();
                }
                m
            })
            .collect();
        ChainMap::new(c.clone(), c.clone(), maps)
    }
}

/// Mapping cone: module i is target_i + source_{i-1}, differential
/// [[d_target, alpha], [0, -d_source]].
pub fn mapping_cone(alpha: &ChainMap) -> Result<FreeComplex> {
    let s = &alpha.source;
    let t = &alpha.target;
    let ring = t.ring.clone();
    let len = t.length().max(s.length() + 1);
    let mut ranks = Vec::with_capacity(len + 1);
    let mut shifts = Vec::with_capacity(len + 1);
    for i in 0..=len {
        let tr = t.rank(i);
        let sr = if i >= 1 { s.rank(i - 1) } else { 0 };
        ranks.push(tr + sr);
        let mut sh = Vec::with_capacity(tr + sr);
        if i <= t.length() {
            sh.extend_from_slice(&t.shifts[i]);
        }
        if i >= 1 && i - 1 <= s.length() {
            sh.extend_from_slice(&s.shifts[i - 1]);
        }
        shifts.push(sh);
    }
    let mut mats = Vec::with_capacity(len);
    for i in 1..=len {
        let rows = ranks[i - 1];
        let cols = ranks[i];
        let t_rows = t.rank(i - 1);
        let t_cols = t.rank(i);
        let mut m = Mat {
            rows,
            cols,
            entries: vec![Polynomial::zero(&ring.desc); rows * cols],
        };
        if let Some(dt) = t.matrix(i) {
            for r in 0..dt.rows {
                for c in 0..dt.cols {
                    *m.at_mut(r, c) = dt.at(r, c).clone();
                }
            }
        }
        // alpha_{i-1}: source_{i-1} -> target_{i-1} lands in the top-right block
        if i - 1 <= s.length().min(t.length()) {
            let a = &alpha.maps[i - 1];
            for r in 0..a.rows {
                for c in 0..a.cols {
                    *m.at_mut(r, t_cols + c) = a.at(r, c).clone();
                }
            }
        }
        if i >= 2 {
            if let Some(ds) = s.matrix(i - 1) {
                for r in 0..ds.rows {
                    for c in 0..ds.cols {
                        *m.at_mut(t_rows + r, t_cols + c) = ds.at(r, c).neg();
                    }
                }
            }
        }
        mats.push(m);
    }
    FreeComplex::new(ring, ranks, shifts, mats)
}
