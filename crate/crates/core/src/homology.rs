//! Integral chain complexes, normalized chains of a truncated simplicial
//! set, mapping cones, and homology via Smith normal form.
//!
//! Truncation discipline: a complex tabulated through degree T has reliable
//! homology only in degrees q <= T-1, since H_q needs the boundary out of
//! degree q+1. Certificates below track this bookkeeping explicitly.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::IntMat;
use crate::report::CheckReport;
use crate::simplicial::{SimplicialMap, TruncatedDihedralSet};

/// Non-negatively graded chain complex of finitely generated free abelian
/// groups. `boundaries[q]` maps degree q to degree q-1; `boundaries[0]` is
/// a 0-row matrix kept for uniform indexing.
#[derive(Clone, Debug)]
pub struct ChainComplex {
    pub ranks: Vec<usize>,
    pub boundaries: Vec<IntMat>,
}

/// One homology group: free rank plus invariant factors > 1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn free(betti: usize) -> Self {
        HomologyGroup { betti, torsion: Vec::new() }
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

impl std::fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.betti {
            0 => {}
            1 => parts.push("Z".to_string()),
            b => parts.push(format!("Z^{b}")),
        }
        for t in &self.torsion {
            parts.push(format!("Z/{t}"));
        }
        if parts.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", parts.join(" + "))
        }
    }
}

/// Homology in a range of degrees, JSON-serializable and printable as an
/// aligned table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyTable {
    pub rows: Vec<HomologyRow>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyRow {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl std::fmt::Display for HomologyTable {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "{:>6}  {:<}", "degree", "homology")?;
        for r in &self.rows {
            let g = HomologyGroup { betti: r.betti, torsion: r.torsion.clone() };
            writeln!(f, "{:>6}  {:<}", r.degree, g)?;
        }
        Ok(())
    }
}

impl ChainComplex {
    pub fn max_degree(&self) -> usize {
        self.ranks.len() - 1
    }

    /// Checks boundary shapes and that consecutive boundaries compose to 0.
    pub fn validate(&self) -> Result<()> {
        if self.boundaries.len() != self.ranks.len() {
            return Err(Error::InvalidInput("boundary count mismatch".into()));
        }
        if self.boundaries[0].rows != 0 || self.boundaries[0].cols != self.ranks[0] {
            return Err(Error::InvalidInput("degree-0 boundary must have no rows".into()));
        }
        for q in 1..self.ranks.len() {
            let b = &self.boundaries[q];
            if b.rows != self.ranks[q - 1] || b.cols != self.ranks[q] {
                return Err(Error::InvalidInput(format!("boundary {q} has wrong shape")));
            }
        }
        for q in 2..self.ranks.len() {
            let prod = self.boundaries[q - 1].mul(&self.boundaries[q]);
            if !prod.is_zero() {
                return Err(Error::InvalidInput(format!(
                    "boundaries {q} and {} do not compose to zero",
                    q - 1
                )));
            }
        }
        Ok(())
    }

    /// Homology in degree q; requires the boundary out of degree q+1, so
    /// q must be strictly below the truncation depth.
    pub fn homology(&self, q: usize) -> Result<HomologyGroup> {
        if q + 1 > self.max_degree() {
            return Err(Error::InvalidInput(format!(
                "homology in degree {q} needs chains in degree {}",
                q + 1
            )));
        }
        let rank_out = crate::matrix::rank(&self.boundaries[q]);
        let snf_in = crate::matrix::smith_normal_form(
            &self.boundaries[q + 1],
            crate::matrix::PivotStrategy::MinAbs,
        );
        let factors = snf_in.invariant_factors();
        let rank_in = factors.len();
        let mut torsion = Vec::new();
        for v in &factors {
            let a = v.abs();
            if !a.is_one() {
                torsion.push(
                    u64::try_from(&a).map_err(|_| Error::Overflow("torsion coefficient"))?,
                );
            }
        }
        let betti = self.ranks[q] - rank_out - rank_in;
        Ok(HomologyGroup { betti, torsion })
    }

    pub fn homology_table(&self, up_to: usize) -> Result<HomologyTable> {
        let mut rows = Vec::new();
        for q in 0..=up_to {
            let h = self.homology(q)?;
            rows.push(HomologyRow { degree: q, betti: h.betti, torsion: h.torsion });
        }
        Ok(HomologyTable { rows })
    }
}

/// Basis bookkeeping for normalized chains: which cell indices of each
/// degree survive (non-degenerate, not the basepoint), and the inverse map.
#[derive(Clone, Debug)]
pub struct ChainBasis {
    pub cells: Vec<Vec<usize>>,
    pub index: Vec<HashMap<usize, usize>>,
}

/// Normalized chains: one generator per non-degenerate cell, boundary the
/// alternating face sum with degenerate targets suppressed. With `reduced`
/// the basepoint cell is suppressed as well (the set must be pointed).
/// Fails if a face of a surviving cell escapes the tabulated window.
pub fn normalized_chains(
    x: &TruncatedDihedralSet,
    reduced: bool,
) -> Result<(ChainComplex, ChainBasis)> {
    let bp = match (&x.basepoint, reduced) {
        (Some(bp), true) => Some(bp.clone()),
        (None, true) => {
            return Err(Error::InvalidInput("reduced chains need a basepoint".into()))
        }
        _ => None,
    };
    let n = x.max_degree;
    let flags = x.degenerate_flags();
    let mut cells: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
    let mut index: Vec<HashMap<usize, usize>> = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let mut keep = Vec::new();
        let mut inv = HashMap::new();
        for idx in 0..x.degrees[q].len() {
            let skip = flags[q][idx] || bp.as_ref().is_some_and(|b| b[q] == idx);
            if !skip {
                inv.insert(idx, keep.len());
                keep.push(idx);
            }
        }
        cells.push(keep);
        index.push(inv);
    }
    let ranks: Vec<usize> = cells.iter().map(|k| k.len()).collect();
    let mut boundaries = Vec::with_capacity(n + 1);
    boundaries.push(IntMat::zero(0, ranks[0]));
    for q in 1..=n {
        let mut b = IntMat::zero(ranks[q - 1], ranks[q]);
        for (col, &idx) in cells[q].iter().enumerate() {
            for i in 0..=q {
                let tgt = x.d(q, i, idx).ok_or_else(|| {
                    Error::InvalidInput(format!(
                        "face {i} of cell {} in degree {q} leaves the window",
                        x.cell(q, idx)
                    ))
                })?;
                if let Some(&row) = index[q - 1].get(&tgt) {
                    let sign = if i % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                    let cur = b[(row, col)].clone();
                    b[(row, col)] = cur + sign;
                }
            }
        }
        boundaries.push(b);
    }
    let cx = ChainComplex { ranks, boundaries };
    cx.validate()?;
    Ok((cx, ChainBasis { cells, index }))
}

/// Chain map induced on normalized chains by a simplicial map. Cells sent
/// to degenerate or suppressed cells map to zero; the map must be defined
/// on every surviving source cell.
pub fn chain_map(
    f: &SimplicialMap,
    src: &TruncatedDihedralSet,
    src_basis: &ChainBasis,
    tgt_basis: &ChainBasis,
) -> Result<Vec<IntMat>> {
    let n = src_basis.cells.len().min(tgt_basis.cells.len()) - 1;
    let mut out = Vec::with_capacity(n + 1);
    for q in 0..=n {
        let mut m = IntMat::zero(tgt_basis.cells[q].len(), src_basis.cells[q].len());
        for (col, &idx) in src_basis.cells[q].iter().enumerate() {
            let img = f.apply(q, idx).ok_or_else(|| {
                Error::InvalidInput(format!(
                    "map undefined on cell {} in degree {q}",
                    src.cell(q, idx)
                ))
            })?;
            if let Some(&row) = tgt_basis.index[q].get(&img) {
                m[(row, col)] = BigInt::one();
            }
        }
        out.push(m);
    }
    Ok(out)
}

/// Mapping cone of a chain map: degree q is C_{q-1} + D_q with boundary
/// (-dc, dx - f(c)). Acyclicity of the cone through degree n+1 certifies
/// that f is a homology isomorphism through degree n.
pub fn mapping_cone(c: &ChainComplex, d: &ChainComplex, f: &[IntMat]) -> Result<ChainComplex> {
    let n = (c.max_degree() + 1).min(d.max_degree()).min(f.len());
    for q in 0..f.len().min(c.ranks.len()) {
        if q < d.ranks.len() && (f[q].rows != d.ranks[q] || f[q].cols != c.ranks[q]) {
            return Err(Error::InvalidInput(format!("chain map degree {q} has wrong shape")));
        }
    }
    let rank_c = |q: isize| -> usize {
        if q < 0 || q as usize >= c.ranks.len() { 0 } else { c.ranks[q as usize] }
    };
    let ranks: Vec<usize> = (0..=n).map(|q| rank_c(q as isize - 1) + d.ranks[q]).collect();
    let mut boundaries = Vec::with_capacity(n + 1);
    boundaries.push(IntMat::zero(0, ranks[0]));
    for q in 1..=n {
        let rc_top = rank_c(q as isize - 2);
        let rc = rank_c(q as isize - 1);
        let mut b = IntMat::zero(ranks[q - 1], ranks[q]);
        if rc > 0 {
            let dc = &c.boundaries[q - 1];
            for i in 0..rc_top {
                for j in 0..rc {
                    b[(i, j)] = -dc[(i, j)].clone();
                }
            }
            let fm = &f[q - 1];
            for i in 0..d.ranks[q - 1] {
                for j in 0..rc {
                    b[(rc_top + i, j)] = -fm[(i, j)].clone();
                }
            }
        }
        let dd = &d.boundaries[q];
        for i in 0..d.ranks[q - 1] {
            for j in 0..d.ranks[q] {
                b[(rc_top + i, rc + j)] = dd[(i, j)].clone();
            }
        }
        boundaries.push(b);
    }
    let cone = ChainComplex { ranks, boundaries };
    cone.validate()?;
    Ok(cone)
}

pub(crate) fn restrict_to_fixed(
    f: &SimplicialMap,
    src: &TruncatedDihedralSet,
    src_fix: &TruncatedDihedralSet,
    tgt: &TruncatedDihedralSet,
    tgt_fix: &TruncatedDihedralSet,
) -> SimplicialMap {
    // subdivision degree q carries the original degree 2q+1 cells, so the
    // original map tables restrict directly
    let n = src_fix.max_degree.min(tgt_fix.max_degree);
    let maps: Vec<Vec<Option<usize>>> = (0..=n)
        .map(|q| {
            let orig_q = 2 * q + 1;
            src_fix.degrees[q]
                .cells
                .iter()
                .map(|cell| {
                    let src_idx = src.degrees[orig_q].lookup(cell)?;
                    let img = f.apply(orig_q, src_idx)?;
                    tgt_fix.degrees[q].lookup(tgt.cell(orig_q, img))
                })
                .collect()
        })
        .collect();
    SimplicialMap { maps }
}

/// Result of the two-level equivalence certificate: which degrees were
/// certified on underlying chains and on subdivision-fixed chains.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct EquivalenceCertificate {
    pub requested_degree: usize,
    pub underlying_certified_through: usize,
    pub fixed_certified_through: Option<usize>,
    pub complete: bool,
}

/// Certifies that a map of truncated sets with involution induces homology
/// isomorphisms through degree n, both on underlying chains and on the
/// chains of subdivision fixed points. Requires truncation depth at least
/// 2n+1; depth 2n+5 certifies the full range, anything less downgrades a
/// clean run to inconclusive over the uncovered degrees.
pub fn z2_equivalence_certificate(
    x: &TruncatedDihedralSet,
    y: &TruncatedDihedralSet,
    f: &SimplicialMap,
    n: usize,
) -> Result<CheckReport> {
    let name = "z2-equivalence";
    let depth = x.max_degree.min(y.max_degree);
    if depth < 2 * n + 1 {
        return Err(Error::InvalidInput(format!(
            "certifying degree {n} needs truncation depth at least {}, have {depth}",
            2 * n + 1
        )));
    }
    let reduced = x.basepoint.is_some() && y.basepoint.is_some();

    // underlying comparison
    let (cx, bx) = normalized_chains(x, reduced)?;
    let (cy, by) = normalized_chains(y, reduced)?;
    let fm = chain_map(f, x, &bx, &by)?;
    let cone = mapping_cone(&cx, &cy, &fm)?;
    // H_q(cone) is reliable for q <= cone depth - 1; certified iso range is
    // one below the acyclic range
    let top_cone = (cone.max_degree() - 1).min(n + 1);
    for q in 0..=top_cone {
        let h = cone.homology(q)?;
        if !h.is_zero() {
            return Ok(CheckReport::fail(
                name,
                serde_json::json!({
                    "level": "underlying",
                    "cone_degree": q,
                    "homology": h,
                }),
            ));
        }
    }
    let underlying_through = if top_cone >= 1 { (top_cone - 1).min(n) } else { 0 };

    // fixed points of the subdivision
    let sx = x.segal_subdivide()?;
    let sy = y.segal_subdivide()?;
    let fx = sx.fixed_points()?;
    let fy = sy.fixed_points()?;
    let ff = restrict_to_fixed(f, x, &fx, y, &fy);
    let (cfx, bfx) = normalized_chains(&fx, reduced && fx.basepoint.is_some())?;
    let (cfy, bfy) = normalized_chains(&fy, reduced && fy.basepoint.is_some())?;
    let ffm = chain_map(&ff, &fx, &bfx, &bfy)?;
    let fcone = mapping_cone(&cfx, &cfy, &ffm)?;
    let fixed_depth = fcone.max_degree();
    let mut fixed_through: Option<usize> = None;
    if fixed_depth >= 1 {
        let top = (fixed_depth - 1).min(n + 1);
        for q in 0..=top {
            let h = fcone.homology(q)?;
            if !h.is_zero() {
                return Ok(CheckReport::fail(
                    name,
                    serde_json::json!({
                        "level": "fixed",
                        "cone_degree": q,
                        "homology": h,
                    }),
                ));
            }
        }
        if top >= 1 {
            fixed_through = Some((top - 1).min(n));
        }
    }

    let complete = underlying_through >= n && fixed_through == Some(n);
    let cert = EquivalenceCertificate {
        requested_degree: n,
        underlying_certified_through: underlying_through,
        fixed_certified_through: fixed_through,
        complete,
    };
    let witness = serde_json::to_value(&cert).expect("certificate serializes");
    if complete {
        Ok(CheckReport::pass(name).with_witness(witness))
    } else {
        Ok(CheckReport::inconclusive(name, witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::AffineMonoid;
    use crate::nerves::{
        dihedral_nerve, interval_sigma, sum_map, two_gon, WindowSpec,
    };
    use crate::simplicial::point;

    #[test]
    fn point_homology() {
        let p = point(5);
        let (cx, _) = normalized_chains(&p, false).unwrap();
        assert_eq!(cx.homology(0).unwrap(), HomologyGroup::free(1));
        for q in 1..=4 {
            assert!(cx.homology(q).unwrap().is_zero());
        }
        let (red, _) = normalized_chains(&p, true).unwrap();
        assert!(red.homology(0).unwrap().is_zero());
    }

    #[test]
    fn two_gon_is_a_circle() {
        let s = two_gon(6);
        let (cx, _) = normalized_chains(&s, false).unwrap();
        assert_eq!(cx.homology(0).unwrap(), HomologyGroup::free(1));
        assert_eq!(cx.homology(1).unwrap(), HomologyGroup::free(1));
        for q in 2..=5 {
            assert!(cx.homology(q).unwrap().is_zero());
        }
    }

    #[test]
    fn interval_and_its_subdivision_are_contractible() {
        let i = interval_sigma(9);
        let (cx, _) = normalized_chains(&i, false).unwrap();
        assert_eq!(cx.homology(0).unwrap(), HomologyGroup::free(1));
        for q in 1..=8 {
            assert!(cx.homology(q).unwrap().is_zero());
        }
        let sd = i.segal_subdivide().unwrap();
        let (cs, _) = normalized_chains(&sd, false).unwrap();
        assert_eq!(cs.homology(0).unwrap(), HomologyGroup::free(1));
        for q in 1..=3 {
            assert!(cs.homology(q).unwrap().is_zero());
        }
        // fixed points of the subdivision: a single point
        let fp = sd.fixed_points().unwrap();
        let (cf, _) = normalized_chains(&fp, false).unwrap();
        assert_eq!(cf.homology(0).unwrap(), HomologyGroup::free(1));
    }

    #[test]
    fn torsion_shows_up() {
        // Z --2--> Z in degrees 1, 0 gives H_0 = Z/2
        let cx = ChainComplex {
            ranks: vec![1, 1, 0],
            boundaries: vec![
                IntMat::zero(0, 1),
                IntMat::from_rows_i64(&[vec![2]]),
                IntMat::zero(1, 0),
            ],
        };
        cx.validate().unwrap();
        let h = cx.homology(0).unwrap();
        assert_eq!(h.betti, 0);
        assert_eq!(h.torsion, vec![2]);
        assert_eq!(h.to_string(), "Z/2");
    }

    #[test]
    fn nerve_weight_pieces_of_nat_are_circles() {
        // each positive weight piece of the cyclic-style nerve of the free
        // rank-1 monoid is a circle; weight 0 is a point
        let m = AffineMonoid::free(1);
        let zero = dihedral_nerve(&m, 5, &WindowSpec::Weights(vec![vec![0]])).unwrap();
        let (cz, _) = normalized_chains(&zero, false).unwrap();
        assert_eq!(cz.homology(0).unwrap(), HomologyGroup::free(1));
        for q in 1..=4 {
            assert!(cz.homology(q).unwrap().is_zero());
        }
        for wt in 1..4i64 {
            let x = dihedral_nerve(&m, 5, &WindowSpec::Weights(vec![vec![wt]])).unwrap();
            let (cx, _) = normalized_chains(&x, false).unwrap();
            assert_eq!(cx.homology(0).unwrap(), HomologyGroup::free(1));
            assert_eq!(cx.homology(1).unwrap(), HomologyGroup::free(1), "weight {wt}");
            for q in 2..=4 {
                assert!(cx.homology(q).unwrap().is_zero(), "weight {wt} degree {q}");
            }
        }
    }

    #[test]
    fn cone_detects_non_equivalence() {
        // collapsing the weight-2 circle to its image point leaves the
        // circle's H_1 in the cone one degree up
        let m = AffineMonoid::free(1);
        let x = dihedral_nerve(&m, 7, &WindowSpec::Weights(vec![vec![2]])).unwrap();
        let (tgt, f) = sum_map(&x, &m, 0).unwrap();
        let (cx, bx) = normalized_chains(&x, false).unwrap();
        let (cy, by) = normalized_chains(&tgt, false).unwrap();
        let fm = chain_map(&f, &x, &bx, &by).unwrap();
        let cone = mapping_cone(&cx, &cy, &fm).unwrap();
        assert!(cone.homology(0).unwrap().is_zero());
        assert!(cone.homology(1).unwrap().is_zero());
        assert_eq!(cone.homology(2).unwrap(), HomologyGroup::free(1));
    }

    #[test]
    fn certificate_on_identity() {
        let s = two_gon(9);
        let id = SimplicialMap::from_fn(&s, &s, &|_, c| c.clone());
        let rep = z2_equivalence_certificate(&s, &s, &id, 2).unwrap();
        assert_eq!(rep.status, crate::report::Status::Pass);
        // depth 7 only certifies partially for n = 2
        let s7 = two_gon(7);
        let id7 = SimplicialMap::from_fn(&s7, &s7, &|_, c| c.clone());
        let rep7 = z2_equivalence_certificate(&s7, &s7, &id7, 2).unwrap();
        assert_eq!(rep7.status, crate::report::Status::Inconclusive);
        // depth below 2n+1 is an error
        assert!(z2_equivalence_certificate(&s7, &s7, &id7, 4).is_err());
    }
}
