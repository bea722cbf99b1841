//! Cubical diagrams of chain complexes, their total cofiber/fiber, and the
//! projective-line invariance cube built from 2-gon circle factors.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::{Error, Result};
use crate::homology::{chain_map, normalized_chains, ChainComplex};
use crate::matrix::IntMat;
use crate::report::CheckReport;
use crate::simplicial::{point, SimplicialMap, TruncatedDihedralSet};

/// An m-dimensional cube of complexes: vertex per subset of directions
/// (bitmask), one chain map per edge toward the larger subset.
pub struct CubeOfComplexes {
    pub directions: usize,
    /// indexed by bitmask, length 2^directions
    pub vertices: Vec<ChainComplex>,
    /// (mask, dir) -> chain map vertex(mask) -> vertex(mask | 1<<dir)
    pub edges: HashMap<(usize, usize), Vec<IntMat>>,
}

impl CubeOfComplexes {
    pub fn depth(&self) -> usize {
        self.vertices.iter().map(|v| v.max_degree()).min().unwrap_or(0)
    }

    /// Checks edge shapes, the chain map property, and commutativity of
    /// every square face.
    pub fn validate(&self) -> Result<()> {
        let m = self.directions;
        if self.vertices.len() != 1 << m {
            return Err(Error::InvalidInput("vertex count must be 2^directions".into()));
        }
        let depth = self.depth();
        for mask in 0..1usize << m {
            for dir in 0..m {
                if mask & (1 << dir) != 0 {
                    continue;
                }
                let f = self
                    .edges
                    .get(&(mask, dir))
                    .ok_or_else(|| Error::InvalidInput(format!("missing edge {mask}/{dir}")))?;
                let src = &self.vertices[mask];
                let tgt = &self.vertices[mask | (1 << dir)];
                if f.len() < depth + 1 {
                    return Err(Error::InvalidInput(format!("edge {mask}/{dir} too short")));
                }
                for q in 0..=depth {
                    if f[q].rows != tgt.ranks[q] || f[q].cols != src.ranks[q] {
                        return Err(Error::InvalidInput(format!(
                            "edge {mask}/{dir} degree {q} has wrong shape"
                        )));
                    }
                    if q >= 1 {
                        let lhs = tgt.boundaries[q].mul(&f[q]);
                        let rhs = f[q - 1].mul(&src.boundaries[q]);
                        if lhs != rhs {
                            return Err(Error::InvalidInput(format!(
                                "edge {mask}/{dir} is not a chain map in degree {q}"
                            )));
                        }
                    }
                }
            }
        }
        // square faces commute
        for mask in 0..1usize << m {
            for i in 0..m {
                for j in (i + 1)..m {
                    if mask & (1 << i) != 0 || mask & (1 << j) != 0 {
                        continue;
                    }
                    let fi = &self.edges[&(mask, i)];
                    let fj = &self.edges[&(mask, j)];
                    let fi_then_j = &self.edges[&(mask | (1 << i), j)];
                    let fj_then_i = &self.edges[&(mask | (1 << j), i)];
                    for q in 0..=depth {
                        if fi_then_j[q].mul(&fi[q]) != fj_then_i[q].mul(&fj[q]) {
                            return Err(Error::InvalidInput(format!(
                                "square {mask}/{i},{j} does not commute in degree {q}"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Total cofiber: vertex with c directions missing sits shifted up by c.
    /// Acyclicity certifies the cube is homotopy cocartesian in the checked
    /// range.
    pub fn total_cofiber(&self) -> Result<ChainComplex> {
        self.totalize(true)
    }

    /// Total fiber: the same total complex graded so the full vertex sits in
    /// its own degree; acyclicity certifies homotopy cartesian-ness.
    pub fn total_fiber(&self) -> Result<ChainComplex> {
        self.totalize(false)
    }

    fn totalize(&self, cofiber: bool) -> Result<ChainComplex> {
        self.validate()?;
        let m = self.directions;
        let depth = self.depth();
        let top = if cofiber { depth } else { depth.saturating_sub(m) };
        // vertex degree within total degree k
        let shift = |mask: usize| -> usize {
            if cofiber {
                m - (mask as u32).count_ones() as usize
            } else {
                (mask as u32).count_ones() as usize
            }
        };
        let inner_deg = |k: usize, mask: usize| -> Option<usize> {
            if cofiber {
                k.checked_sub(shift(mask))
            } else {
                Some(k + shift(mask))
            }
        };
        let mut offsets: Vec<HashMap<usize, usize>> = Vec::with_capacity(top + 1);
        let mut ranks: Vec<usize> = Vec::with_capacity(top + 1);
        for k in 0..=top {
            let mut off = HashMap::new();
            let mut total = 0usize;
            for mask in 0..1usize << m {
                if let Some(d) = inner_deg(k, mask) {
                    if d <= depth {
                        off.insert(mask, total);
                        total += self.vertices[mask].ranks[d];
                    }
                }
            }
            offsets.push(off);
            ranks.push(total);
        }
        let mut boundaries = Vec::with_capacity(top + 1);
        boundaries.push(IntMat::zero(0, ranks[0]));
        for k in 1..=top {
            let mut b = IntMat::zero(ranks[k - 1], ranks[k]);
            for (&mask, &col0) in &offsets[k] {
                let d = inner_deg(k, mask).unwrap();
                let v = &self.vertices[mask];
                let par = if cofiber {
                    m - (mask as u32).count_ones() as usize
                } else {
                    (mask as u32).count_ones() as usize
                };
                // internal differential, with parity sign
                if d >= 1 {
                    if let Some(&row0) = offsets[k - 1].get(&mask) {
                        let dm = &v.boundaries[d];
                        for i in 0..dm.rows {
                            for j in 0..dm.cols {
                                let val = if par % 2 == 0 {
                                    dm[(i, j)].clone()
                                } else {
                                    -dm[(i, j)].clone()
                                };
                                b[(row0 + i, col0 + j)] = val;
                            }
                        }
                    }
                }
                // edge components with Koszul signs over missing directions
                for dir in 0..m {
                    if mask & (1 << dir) != 0 {
                        continue;
                    }
                    let tgt_mask = mask | (1 << dir);
                    if let Some(&row0) = offsets[k - 1].get(&tgt_mask) {
                        let missing_below =
                            (0..dir).filter(|i| mask & (1 << i) == 0).count();
                        let sign = if missing_below % 2 == 0 { BigInt::one() } else { -BigInt::one() };
                        let fm = &self.edges[&(mask, dir)][d];
                        for i in 0..fm.rows {
                            for j in 0..fm.cols {
                                if fm[(i, j)] != BigInt::from(0) {
                                    b[(row0 + i, col0 + j)] = &sign * &fm[(i, j)];
                                }
                            }
                        }
                    }
                }
            }
            boundaries.push(b);
        }
        let total = ChainComplex { ranks, boundaries };
        total.validate()?;
        Ok(total)
    }
}

/// Cube of truncated sets with one simplicial map per edge.
pub struct CubeOfSets {
    pub directions: usize,
    pub vertices: Vec<TruncatedDihedralSet>,
    pub edges: HashMap<(usize, usize), SimplicialMap>,
}

impl CubeOfSets {
    /// Reduced or unreduced normalized chains of every vertex, with induced
    /// edge chain maps.
    pub fn chains(&self, reduced: bool) -> Result<CubeOfComplexes> {
        let mut complexes = Vec::with_capacity(self.vertices.len());
        let mut bases = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            let (c, b) = normalized_chains(v, reduced)?;
            complexes.push(c);
            bases.push(b);
        }
        let mut edges = HashMap::new();
        for (&(mask, dir), f) in &self.edges {
            let tgt = mask | (1 << dir);
            let fm = chain_map(f, &self.vertices[mask], &bases[mask], &bases[tgt])?;
            edges.insert((mask, dir), fm);
        }
        Ok(CubeOfComplexes { directions: self.directions, vertices: complexes, edges })
    }

    /// Applies subdivision fixed points to every vertex and restricts every
    /// edge map.
    pub fn subdivision_fixed_points(&self) -> Result<CubeOfSets> {
        let mut vertices = Vec::with_capacity(self.vertices.len());
        for v in &self.vertices {
            vertices.push(v.segal_subdivide()?.fixed_points()?);
        }
        let mut edges = HashMap::new();
        for (&(mask, dir), f) in &self.edges {
            let tgt = mask | (1 << dir);
            edges.insert(
                (mask, dir),
                crate::homology::restrict_to_fixed(
                    f,
                    &self.vertices[mask],
                    &vertices[mask],
                    &self.vertices[tgt],
                    &vertices[tgt],
                ),
            );
        }
        Ok(CubeOfSets { directions: self.directions, vertices, edges })
    }
}

fn identity_map(x: &TruncatedDihedralSet) -> SimplicialMap {
    let maps = (0..=x.max_degree).map(|q| (0..x.degrees[q].len()).map(Some).collect()).collect();
    SimplicialMap { maps }
}

fn basepoint_map(src: &TruncatedDihedralSet, tgt: &TruncatedDihedralSet) -> SimplicialMap {
    let bp = tgt.basepoint.as_ref().expect("basepoint map needs a pointed target");
    let maps = (0..=src.max_degree.min(tgt.max_degree))
        .map(|q| vec![Some(bp[q]); src.degrees[q].len()])
        .collect();
    SimplicialMap { maps }
}

fn fold_product(factors: &[TruncatedDihedralSet]) -> Result<TruncatedDihedralSet> {
    let mut it = factors.iter();
    let mut acc = it.next().expect("at least one factor").clone();
    for f in it {
        acc = acc.product(f)?;
    }
    Ok(acc)
}

/// Product of factorwise maps under the left-fold pairing convention used by
/// `TruncatedDihedralSet::product`.
fn fold_product_map(
    maps: &[SimplicialMap],
    srcs: &[TruncatedDihedralSet],
    tgts: &[TruncatedDihedralSet],
) -> SimplicialMap {
    let n = srcs[0].max_degree;
    let out_maps: Vec<Vec<Option<usize>>> = (0..=n)
        .map(|q| {
            let src_radix: Vec<usize> = srcs.iter().map(|s| s.degrees[q].len()).collect();
            let tgt_radix: Vec<usize> = tgts.iter().map(|t| t.degrees[q].len()).collect();
            let total: usize = src_radix.iter().product();
            (0..total)
                .map(|idx| {
                    // decode left-fold mixed radix: last factor varies fastest
                    let mut digits = vec![0usize; src_radix.len()];
                    let mut rest = idx;
                    for i in (0..src_radix.len()).rev() {
                        digits[i] = rest % src_radix[i];
                        rest /= src_radix[i];
                    }
                    let mut enc = 0usize;
                    for i in 0..digits.len() {
                        enc = enc * tgt_radix[i] + maps[i].apply(q, digits[i])?;
                    }
                    Some(enc)
                })
                .collect()
        })
        .collect();
    SimplicialMap { maps: out_maps }
}

/// The invariance cube for a lattice point x in Z^n, n in {1, 2}, tabulated
/// through `max_degree`. Directions are 0..=n; direction j >= 1 carries the
/// constraint x_j >= 0 and direction 0 the constraint sum(x) <= 0. The
/// vertex at a subset I is a point unless x satisfies every constraint
/// outside I, in which case it is a product over i = 1..n of a 2-gon circle,
/// degenerated to a point in the factors with x_i = 0 and i in I.
pub fn build_invariance_cube(
    n: usize,
    x: &[i64],
    max_degree: usize,
) -> Result<CubeOfSets> {
    if n == 0 || n > 2 || x.len() != n {
        return Err(Error::InvalidInput("cube dimension must be 1 or 2".into()));
    }
    let m = n + 1;
    let satisfied = |j: usize| -> bool {
        if j == 0 {
            x.iter().sum::<i64>() <= 0
        } else {
            x[j - 1] >= 0
        }
    };
    let nonempty = |mask: usize| -> bool { (0..m).all(|j| mask & (1 << j) != 0 || satisfied(j)) };
    let circle = crate::nerves::two_gon(max_degree);
    let pt = point(max_degree);
    let factor_is_point =
        |mask: usize, i: usize| -> bool { x[i - 1] == 0 && mask & (1 << i) != 0 };
    let factors_of = |mask: usize| -> Vec<TruncatedDihedralSet> {
        (1..=n)
            .map(|i| if factor_is_point(mask, i) { pt.clone() } else { circle.clone() })
            .collect()
    };
    let mut vertices = Vec::with_capacity(1 << m);
    for mask in 0..1usize << m {
        if nonempty(mask) {
            vertices.push(fold_product(&factors_of(mask))?);
        } else {
            vertices.push(pt.clone());
        }
    }
    let mut edges = HashMap::new();
    for mask in 0..1usize << m {
        for dir in 0..m {
            if mask & (1 << dir) != 0 {
                continue;
            }
            let tmask = mask | (1 << dir);
            let map = if !nonempty(mask) {
                basepoint_map(&vertices[mask], &vertices[tmask])
            } else {
                let srcs = factors_of(mask);
                let tgts = factors_of(tmask);
                let fmaps: Vec<SimplicialMap> = (1..=n)
                    .map(|i| {
                        if factor_is_point(mask, i) == factor_is_point(tmask, i) {
                            identity_map(&srcs[i - 1])
                        } else {
                            basepoint_map(&srcs[i - 1], &tgts[i - 1])
                        }
                    })
                    .collect();
                fold_product_map(&fmaps, &srcs, &tgts)
            };
            edges.insert((mask, dir), map);
        }
    }
    Ok(CubeOfSets { directions: m, vertices, edges })
}

/// Per-point verdict for the invariance check.
#[derive(Clone, Debug, serde::Serialize)]
pub struct InvariancePointReport {
    pub point: Vec<i64>,
    pub underlying_ok: bool,
    pub fixed_ok: bool,
    pub first_failure: Option<(String, usize)>,
}

/// Checks that the total cofiber of the invariance cube is acyclic through
/// `max_homology_degree` for every x with coordinates bounded by
/// `coord_bound`, on underlying chains and on subdivision-fixed chains.
/// `sabotage` replaces one edge with a collapse to expose the detector.
pub fn invariance_check(
    n: usize,
    coord_bound: i64,
    max_homology_degree: usize,
    sabotage: bool,
) -> Result<CheckReport> {
    let name = format!("projective-invariance-n{n}");
    let depth = 2 * max_homology_degree + 3;
    let mut points: Vec<Vec<i64>> = vec![Vec::new()];
    for _ in 0..n {
        points = points
            .into_iter()
            .flat_map(|p| {
                (-coord_bound..=coord_bound).map(move |v| {
                    let mut q = p.clone();
                    q.push(v);
                    q
                })
            })
            .collect();
    }
    let mut reports = Vec::new();
    let mut all_ok = true;
    for x in points {
        let mut cube = build_invariance_cube(n, &x, depth)?;
        if sabotage {
            // break one edge out of a non-trivial vertex
            let mask = 0usize;
            let dir = 0usize;
            cube.edges.insert(
                (mask, dir),
                basepoint_map(&cube.vertices[mask], &cube.vertices[mask | (1 << dir)]),
            );
        }
        let mut first_failure = None;
        let tc = cube.chains(true)?.total_cofiber()?;
        let mut underlying_ok = true;
        for q in 0..=max_homology_degree {
            let h = tc.homology(q)?;
            if !h.is_zero() {
                underlying_ok = false;
                first_failure.get_or_insert(("underlying".to_string(), q));
                break;
            }
        }
        let fcube = cube.subdivision_fixed_points()?;
        let ftc = fcube.chains(true)?.total_cofiber()?;
        let mut fixed_ok = true;
        let fixed_top = max_homology_degree.min(ftc.max_degree().saturating_sub(1));
        for q in 0..=fixed_top {
            let h = ftc.homology(q)?;
            if !h.is_zero() {
                fixed_ok = false;
                first_failure.get_or_insert(("fixed".to_string(), q));
                break;
            }
        }
        all_ok &= underlying_ok && fixed_ok;
        reports.push(InvariancePointReport { point: x, underlying_ok, fixed_ok, first_failure });
    }
    let witness = serde_json::json!({
        "coord_bound": coord_bound,
        "max_degree": max_homology_degree,
        "points": reports,
    });
    if all_ok {
        Ok(CheckReport::pass(name).with_witness(witness))
    } else {
        Ok(CheckReport::fail(name, witness))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::HomologyGroup;
    use crate::nerves::two_gon;
    use crate::report::Status;

    fn one_edge_cube(f_is_identity: bool) -> CubeOfSets {
        let s = two_gon(6);
        let edge = if f_is_identity {
            identity_map(&s)
        } else {
            basepoint_map(&s, &s)
        };
        CubeOfSets {
            directions: 1,
            vertices: vec![s.clone(), s],
            edges: HashMap::from([((0, 0), edge)]),
        }
    }

    #[test]
    fn cofiber_of_identity_is_acyclic() {
        let tc = one_edge_cube(true).chains(true).unwrap().total_cofiber().unwrap();
        for q in 0..=5 {
            assert!(tc.homology(q).unwrap().is_zero(), "degree {q}");
        }
    }

    #[test]
    fn cofiber_of_collapse_sees_the_circle() {
        // cofiber of (circle -> point-like collapse) into circle keeps the
        // circle classes: H(cone on constant map)
        let tc = one_edge_cube(false).chains(true).unwrap().total_cofiber().unwrap();
        // reduced chains of the 2-gon: H_1 = Z; collapse kills it, so the
        // cofiber carries Z in degrees 1 and 2
        assert_eq!(tc.homology(1).unwrap(), HomologyGroup::free(1));
        assert_eq!(tc.homology(2).unwrap(), HomologyGroup::free(1));
    }

    #[test]
    fn fiber_grading_matches_cofiber() {
        let cube = one_edge_cube(false).chains(true).unwrap();
        let tc = cube.total_cofiber().unwrap();
        // gradings agree off the bottom edge, where the fiber complex is cut
        let tf = cube.total_fiber().unwrap();
        for q in 1..tf.max_degree() {
            assert_eq!(tf.homology(q).unwrap(), tc.homology(q + 1).unwrap());
        }
    }

    #[test]
    fn invariance_cube_square_n1() {
        for x in [-2i64, -1, 0, 1, 2] {
            let cube = build_invariance_cube(1, &[x], 5).unwrap();
            let chains = cube.chains(true).unwrap();
            chains.validate().unwrap();
            let tc = chains.total_cofiber().unwrap();
            for q in 0..=3 {
                assert!(tc.homology(q).unwrap().is_zero(), "x={x} degree {q}");
            }
        }
    }

    #[test]
    fn invariance_check_small() {
        let rep = invariance_check(1, 2, 1, false).unwrap();
        assert_eq!(rep.status, Status::Pass);
        let bad = invariance_check(1, 0, 1, true).unwrap();
        assert_eq!(bad.status, Status::Fail);
    }
}
