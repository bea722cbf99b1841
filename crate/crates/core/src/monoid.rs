//! Finitely generated commutative submonoids of integer lattices, optionally
//! carrying an order-2 lattice automorphism, together with the operations the
//! rest of the crate is built from: exact membership, group completion,
//! units, sharpening, saturation, face localization, integral pushouts,
//! doubling, and exactification.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lp;
use crate::matrix::{self, IntMat};

/// Finitely generated submonoid of `Z^ambient_rank`, described by its
/// generators. `involution`, if present, is a `d x d` integer matrix squaring
/// to the identity and mapping the monoid into itself.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AffineMonoid {
    pub ambient_rank: usize,
    pub generators: Vec<Vec<i64>>,
    pub involution: Option<Vec<Vec<i64>>>,
}

/// Apply a matrix given as rows to a vector, with i128 intermediates.
pub fn mat_apply(m: &[Vec<i64>], x: &[i64]) -> Vec<i64> {
    m.iter()
        .map(|row| {
            let s: i128 = row.iter().zip(x).map(|(&a, &b)| a as i128 * b as i128).sum();
            i64::try_from(s).expect("overflow in matrix application")
        })
        .collect()
}

/// Multiply matrices given as rows: (a * b).
pub fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = if b.is_empty() { 0 } else { b[0].len() };
    a.iter()
        .map(|row| {
            (0..n)
                .map(|j| {
                    let s: i128 =
                        row.iter().zip(b).map(|(&x, brow)| x as i128 * brow[j] as i128).sum();
                    i64::try_from(s).expect("overflow in matrix product")
                })
                .collect()
        })
        .collect()
}

pub fn identity_rows(n: usize) -> Vec<Vec<i64>> {
    (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect()
}

pub fn add_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x.checked_add(*y).expect("overflow")).collect()
}

pub fn sub_vec(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x.checked_sub(*y).expect("overflow")).collect()
}

pub fn neg_vec(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

impl AffineMonoid {
    /// Validated constructor.
    pub fn new(
        ambient_rank: usize,
        generators: Vec<Vec<i64>>,
        involution: Option<Vec<Vec<i64>>>,
    ) -> Result<Self> {
        let m = AffineMonoid { ambient_rank, generators, involution };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        for g in &self.generators {
            if g.len() != self.ambient_rank {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_rank,
                    got: g.len(),
                });
            }
        }
        if let Some(w) = &self.involution {
            if w.len() != self.ambient_rank
                || w.iter().any(|row| row.len() != self.ambient_rank)
            {
                return Err(Error::DimensionMismatch {
                    expected: self.ambient_rank,
                    got: w.len(),
                });
            }
            if mat_mul(w, w) != identity_rows(self.ambient_rank) {
                return Err(Error::InvolutionNotInvolutive);
            }
            let oracle = self.membership();
            for (i, g) in self.generators.iter().enumerate() {
                if !oracle.contains(&mat_apply(w, g))? {
                    return Err(Error::InvolutionNotPreserved { index: i });
                }
            }
        }
        Ok(())
    }

    /// Free commutative monoid `N^n` with no involution.
    pub fn free(n: usize) -> Self {
        AffineMonoid { ambient_rank: n, generators: identity_rows(n), involution: None }
    }

    /// The lattice `Z^n` as a monoid (generators plus their negatives).
    pub fn lattice(n: usize) -> Self {
        let mut gens = identity_rows(n);
        gens.extend(identity_rows(n).iter().map(|g| neg_vec(g)));
        AffineMonoid { ambient_rank: n, generators: gens, involution: None }
    }

    /// `N^2` with the coordinate swap involution.
    pub fn free2_swap() -> Self {
        AffineMonoid {
            ambient_rank: 2,
            generators: vec![vec![1, 0], vec![0, 1]],
            involution: Some(vec![vec![0, 1], vec![1, 0]]),
        }
    }

    /// The zero monoid on a given ambient lattice.
    pub fn zero(n: usize) -> Self {
        AffineMonoid { ambient_rank: n, generators: vec![], involution: None }
    }

    pub fn apply_involution(&self, x: &[i64]) -> Vec<i64> {
        match &self.involution {
            Some(w) => mat_apply(w, x),
            None => x.to_vec(),
        }
    }

    fn gen_matrix(&self) -> IntMat {
        IntMat::from_cols_i64(&self.generators, self.ambient_rank)
    }

    /// Indices of generators `g` with `-g` in the rational cone of the
    /// generators; these are exactly the generators that are units.
    pub fn unit_generator_indices(&self) -> Vec<usize> {
        (0..self.generators.len())
            .filter(|&i| lp::in_cone(&self.generators, &neg_vec(&self.generators[i])))
            .collect()
    }

    /// Reusable membership oracle. Building it runs the one-time lattice and
    /// LP setup; `contains` on the oracle is then a bounded search.
    pub fn membership(&self) -> Membership {
        let d = self.ambient_rank;
        let unit_idx = self.unit_generator_indices();
        let unit_set: std::collections::HashSet<usize> = unit_idx.iter().copied().collect();
        let unit_gens: Vec<Vec<i64>> =
            unit_idx.iter().map(|&i| self.generators[i].clone()).collect();
        let rest: Vec<Vec<i64>> = (0..self.generators.len())
            .filter(|i| !unit_set.contains(i))
            .map(|i| self.generators[i].clone())
            .collect();
        let unit_basis = matrix::column_hnf(&IntMat::from_cols_i64(&unit_gens, d));
        let unit_sat = matrix::saturate_lattice(&unit_basis);
        let (proj, _) = matrix::quotient_projection(&unit_sat, d);
        let proj_rest: Vec<Vec<i64>> = rest
            .iter()
            .map(|t| matrix::to_i64_vec(&proj.mul_vec_i64(t)).expect("overflow"))
            .collect();
        let lambda = if rest.is_empty() {
            Some(vec![0; proj.rows])
        } else {
            lp::positive_functional(&proj_rest, proj.rows)
        };
        Membership {
            dim: d,
            all_gens: self.generators.clone(),
            gp_basis: matrix::column_hnf(&self.gen_matrix()),
            unit_basis,
            rest,
            proj,
            lambda,
        }
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        self.membership().contains(x)
    }

    /// Hermite basis (columns) of the subgroup of `Z^d` generated by the
    /// generators.
    pub fn group_completion(&self) -> IntMat {
        matrix::column_hnf(&self.gen_matrix())
    }

    /// The subgroup of invertible elements, as an affine monoid (a lattice).
    pub fn units(&self) -> AffineMonoid {
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for &i in &self.unit_generator_indices() {
            let g = self.generators[i].clone();
            let ng = neg_vec(&g);
            if !gens.contains(&g) {
                gens.push(g);
            }
            if !gens.contains(&ng) {
                gens.push(ng);
            }
        }
        AffineMonoid {
            ambient_rank: self.ambient_rank,
            generators: gens,
            involution: self.involution.clone(),
        }
    }

    pub fn is_sharp(&self) -> bool {
        self.unit_generator_indices().is_empty()
    }

    pub fn is_group(&self) -> bool {
        self.unit_generator_indices().len() == self.generators.len()
    }

    /// Quotient by the unit subgroup, realized on a complement lattice,
    /// together with the projection. The kernel of the projection meets the
    /// monoid exactly in its units, so the image is the sharp quotient.
    pub fn sharpen(&self) -> Result<(AffineMonoid, MonoidHom)> {
        let d = self.ambient_rank;
        let unit_idx = self.unit_generator_indices();
        let unit_gens: Vec<Vec<i64>> =
            unit_idx.iter().map(|&i| self.generators[i].clone()).collect();
        let unit_sat =
            matrix::saturate_lattice(&IntMat::from_cols_i64(&unit_gens, d));
        let (proj, sect) = matrix::quotient_projection(&unit_sat, d);
        let qdim = proj.rows;
        let proj_rows: Vec<Vec<i64>> = (0..qdim)
            .map(|i| {
                (0..d)
                    .map(|j| i64::try_from(&proj[(i, j)]).expect("overflow"))
                    .collect()
            })
            .collect();
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for g in &self.generators {
            let pg = mat_apply(&proj_rows, g);
            if pg.iter().any(|&v| v != 0) && !gens.contains(&pg) {
                gens.push(pg);
            }
        }
        let involution = match &self.involution {
            None => None,
            Some(w) => {
                // Induced map: project, lift through the section, apply w.
                let sect_rows: Vec<Vec<i64>> = (0..d)
                    .map(|i| {
                        (0..qdim)
                            .map(|j| i64::try_from(&sect[(i, j)]).expect("overflow"))
                            .collect()
                    })
                    .collect();
                Some(mat_mul(&proj_rows, &mat_mul(w, &sect_rows)))
            }
        };
        let sharp = AffineMonoid::new(qdim, gens, involution)?;
        let hom = MonoidHom::new(self.clone(), sharp.clone(), proj_rows)?;
        Ok((sharp, hom))
    }

    /// Saturation test by bounded enumeration: every lattice point of the
    /// rational cone lies in the monoid iff every such point inside the
    /// generator zonotope does, since any cone point decomposes as a monoid
    /// element plus a cone point inside the zonotope.
    pub fn is_saturated(&self, rank_cap: usize) -> Result<bool> {
        let d = self.ambient_rank;
        if d > rank_cap {
            return Err(Error::RankCapExceeded { rank: d, cap: rank_cap });
        }
        if self.generators.is_empty() {
            return Ok(true);
        }
        let bounds: Vec<i64> = (0..d)
            .map(|j| self.generators.iter().map(|g| g[j].abs()).sum())
            .collect();
        let gp = self.group_completion();
        let oracle = self.membership();
        let mut x = vec![0i64; d];
        self.saturation_scan(&bounds, &gp, &oracle, &mut x, 0)
    }

    fn saturation_scan(
        &self,
        bounds: &[i64],
        gp: &IntMat,
        oracle: &Membership,
        x: &mut Vec<i64>,
        pos: usize,
    ) -> Result<bool> {
        if pos == bounds.len() {
            if matrix::in_lattice(gp, x)
                && lp::in_cone(&self.generators, x)
                && !oracle.contains(x)?
            {
                return Ok(false);
            }
            return Ok(true);
        }
        for v in -bounds[pos]..=bounds[pos] {
            x[pos] = v;
            if !self.saturation_scan(bounds, gp, oracle, x, pos + 1)? {
                return Ok(false);
            }
        }
        x[pos] = 0;
        Ok(true)
    }

    /// Localize at the face spanned by the given generator indices: adjoin
    /// negatives of every generator lying in the face span. Validates that
    /// the span really cuts out a face of the cone.
    pub fn face_localization(&self, face: &[usize]) -> Result<AffineMonoid> {
        for &i in face {
            if i >= self.generators.len() {
                return Err(Error::InvalidInput(format!("generator index {i} out of range")));
            }
        }
        if face.is_empty() {
            return Ok(self.clone());
        }
        let span: Vec<Vec<i64>> = face.iter().map(|&i| self.generators[i].clone()).collect();
        // Extend to all generators inside the rational span of the face.
        let in_face: Vec<usize> = (0..self.generators.len())
            .filter(|&i| lp::in_rational_span(&span, &self.generators[i]))
            .collect();
        // A supporting functional vanishes on the face and is >= 1 on the
        // remaining generators; existence certifies the face property.
        let d = self.ambient_rank;
        let outside: Vec<usize> = (0..self.generators.len())
            .filter(|i| !in_face.contains(i))
            .collect();
        if !outside.is_empty() {
            let k = outside.len();
            let n = 2 * d + k;
            let mut rows = Vec::new();
            let mut b = Vec::new();
            for &i in &in_face {
                let mut row = vec![lp::Rat::from_integer(BigInt::from(0)); n];
                for j in 0..d {
                    row[j] = lp::Rat::from_integer(BigInt::from(self.generators[i][j]));
                    row[d + j] = lp::Rat::from_integer(BigInt::from(-self.generators[i][j]));
                }
                rows.push(row);
                b.push(lp::Rat::from_integer(BigInt::from(0)));
            }
            for (si, &i) in outside.iter().enumerate() {
                let mut row = vec![lp::Rat::from_integer(BigInt::from(0)); n];
                for j in 0..d {
                    row[j] = lp::Rat::from_integer(BigInt::from(self.generators[i][j]));
                    row[d + j] = lp::Rat::from_integer(BigInt::from(-self.generators[i][j]));
                }
                row[2 * d + si] = -lp::Rat::from_integer(BigInt::from(1));
                rows.push(row);
                b.push(lp::Rat::from_integer(BigInt::from(1)));
            }
            if lp::feasible_nonneg(&rows, &b).is_none() {
                return Err(Error::InvalidInput(
                    "selected generators do not span a face".into(),
                ));
            }
        }
        let mut gens = self.generators.clone();
        for &i in &in_face {
            let ng = neg_vec(&self.generators[i]);
            if !gens.contains(&ng) {
                gens.push(ng);
            }
        }
        AffineMonoid::new(self.ambient_rank, gens, self.involution.clone())
    }

    /// Block coproduct on the direct sum of the ambient lattices.
    pub fn direct_sum(&self, other: &AffineMonoid) -> AffineMonoid {
        let d1 = self.ambient_rank;
        let d2 = other.ambient_rank;
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut v = g.clone();
            v.extend(std::iter::repeat(0).take(d2));
            gens.push(v);
        }
        for g in &other.generators {
            let mut v = vec![0; d1];
            v.extend_from_slice(g);
            gens.push(v);
        }
        let involution = match (&self.involution, &other.involution) {
            (None, None) => None,
            (w1, w2) => {
                let w1 = w1.clone().unwrap_or_else(|| identity_rows(d1));
                let w2 = w2.clone().unwrap_or_else(|| identity_rows(d2));
                let mut w = Vec::new();
                for i in 0..d1 {
                    let mut row = w1[i].clone();
                    row.extend(std::iter::repeat(0).take(d2));
                    w.push(row);
                }
                for i in 0..d2 {
                    let mut row = vec![0; d1];
                    row.extend_from_slice(&w2[i]);
                    w.push(row);
                }
                Some(w)
            }
        };
        AffineMonoid { ambient_rank: d1 + d2, generators: gens, involution }
    }

    /// `M x M` with the block swap involution, twisted by the involution of
    /// `M` when present: (x, y) goes to (w(y), w(x)).
    pub fn double(&self) -> AffineMonoid {
        let d = self.ambient_rank;
        let w = self.involution.clone().unwrap_or_else(|| identity_rows(d));
        let mut gens = Vec::new();
        for g in &self.generators {
            let mut v = g.clone();
            v.extend(std::iter::repeat(0).take(d));
            gens.push(v);
            let mut v = vec![0; d];
            v.extend_from_slice(g);
            gens.push(v);
        }
        let mut invol = Vec::new();
        for i in 0..d {
            let mut row = vec![0; d];
            row.extend_from_slice(&w[i]);
            invol.push(row);
        }
        for i in 0..d {
            let mut row = w[i].clone();
            row.extend(std::iter::repeat(0).take(d));
            invol.push(row);
        }
        AffineMonoid { ambient_rank: 2 * d, generators: gens, involution: Some(invol) }
    }

    /// Exactification of the counit: carrier `M + M^gp` with the twisted
    /// involution (x, y) -> (w(x), w(x) - w(y)).
    pub fn exactify(&self) -> Result<ExactifiedMonoid> {
        let d = self.ambient_rank;
        let w = self
            .involution
            .clone()
            .ok_or_else(|| Error::InvalidInput("exactification requires an involution".into()))?;
        let gp = self.group_completion();
        let mut gens: Vec<Vec<i64>> = Vec::new();
        for g in &self.generators {
            let mut v = g.clone();
            v.extend(std::iter::repeat(0).take(d));
            gens.push(v);
        }
        for j in 0..gp.cols {
            let col = gp.col_i64(j).ok_or(Error::Overflow("group completion basis"))?;
            for sign in [1i64, -1] {
                let mut v = vec![0; d];
                v.extend(col.iter().map(|&c| sign * c));
                gens.push(v);
            }
        }
        let mut invol = Vec::new();
        for i in 0..d {
            let mut row = w[i].clone();
            row.extend(std::iter::repeat(0).take(d));
            invol.push(row);
        }
        for i in 0..d {
            let mut row = w[i].clone();
            row.extend(w[i].iter().map(|&v| -v));
            invol.push(row);
        }
        let carrier = AffineMonoid::new(2 * d, gens, Some(invol))?;
        let dbl = self.double();
        let id = identity_rows(d);
        // theta: double -> M, (x, y) -> x + y
        let theta_mat: Vec<Vec<i64>> =
            (0..d).map(|i| { let mut r = id[i].clone(); r.extend_from_slice(&id[i]); r }).collect();
        // theta_ex: carrier -> M, (x, y) -> x
        let theta_ex_mat: Vec<Vec<i64>> =
            (0..d).map(|i| { let mut r = id[i].clone(); r.extend(std::iter::repeat(0).take(d)); r }).collect();
        // eta: double -> carrier, (x, y) -> (x + y, y)
        let mut eta_mat: Vec<Vec<i64>> = Vec::new();
        for i in 0..d {
            let mut r = id[i].clone();
            r.extend_from_slice(&id[i]);
            eta_mat.push(r);
        }
        for i in 0..d {
            let mut r = vec![0; d];
            r.extend_from_slice(&id[i]);
            eta_mat.push(r);
        }
        let theta = MonoidHom::new(dbl.clone(), self.clone(), theta_mat)?;
        let theta_ex = MonoidHom::new(carrier.clone(), self.clone(), theta_ex_mat)?;
        let eta = MonoidHom::new(dbl, carrier.clone(), eta_mat)?;
        Ok(ExactifiedMonoid { base: self.clone(), carrier, theta, theta_ex, eta })
    }

    /// Is every element of `other` an element of `self`? Exact, via the
    /// membership decision procedure on generators. Requires equal ambient
    /// rank.
    pub fn contains_monoid(&self, other: &AffineMonoid) -> Result<bool> {
        if self.ambient_rank != other.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                got: other.ambient_rank,
            });
        }
        let oracle = self.membership();
        for g in &other.generators {
            if !oracle.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Do the two generator lists define the same submonoid of the shared
    /// ambient lattice?
    pub fn same_submonoid(&self, other: &AffineMonoid) -> Result<bool> {
        Ok(self.contains_monoid(other)? && other.contains_monoid(self)?)
    }
}

/// Membership decision data for one monoid. The search splits off the unit
/// subgroup, projects the remaining generators to a pointed cone, and bounds
/// coefficient vectors by a strictly positive functional.
pub struct Membership {
    dim: usize,
    all_gens: Vec<Vec<i64>>,
    gp_basis: IntMat,
    unit_basis: IntMat,
    rest: Vec<Vec<i64>>,
    proj: IntMat,
    lambda: Option<Vec<i64>>,
}

impl Membership {
    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, got: x.len() });
        }
        if !matrix::in_lattice(&self.gp_basis, x) {
            return Ok(false);
        }
        if !lp::in_cone(&self.all_gens, x) {
            return Ok(false);
        }
        if self.rest.is_empty() {
            return Ok(matrix::in_lattice(&self.unit_basis, x));
        }
        let lambda = self
            .lambda
            .as_ref()
            .expect("projected non-unit generators always span a pointed cone");
        let px = matrix::to_i64_vec(&self.proj.mul_vec_i64(x))
            .ok_or(Error::Overflow("membership projection"))?;
        let budget: i64 = lambda.iter().zip(&px).map(|(&a, &b)| a * b).sum();
        if budget < 0 {
            return Ok(false);
        }
        let costs: Vec<i64> = self
            .rest
            .iter()
            .map(|t| {
                let pt = matrix::to_i64_vec(&self.proj.mul_vec_i64(t)).unwrap();
                lambda.iter().zip(&pt).map(|(&a, &b)| a * b).sum()
            })
            .collect();
        let mut acc = vec![0i64; self.dim];
        Ok(self.search(x, &costs, budget, 0, &mut acc))
    }

    fn search(&self, x: &[i64], costs: &[i64], budget: i64, pos: usize, acc: &mut Vec<i64>) -> bool {
        if pos == self.rest.len() {
            let diff = sub_vec(x, acc);
            return matrix::in_lattice(&self.unit_basis, &diff);
        }
        let step = costs[pos];
        debug_assert!(step >= 1);
        let max_c = budget / step;
        for c in 0..=max_c {
            if c > 0 {
                for (a, g) in acc.iter_mut().zip(&self.rest[pos]) {
                    *a += g;
                }
            }
            if self.search(x, costs, budget - c * step, pos + 1, acc) {
                for (a, g) in acc.iter_mut().zip(&self.rest[pos]) {
                    *a -= c * g;
                }
                return true;
            }
        }
        for (a, g) in acc.iter_mut().zip(&self.rest[pos]) {
            *a -= max_c * g;
        }
        false
    }
}

/// Monoid homomorphism induced by an integer matrix between the ambient
/// lattices. Validated to map generators into the target and to commute with
/// involutions when both are present.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidHom {
    pub source: AffineMonoid,
    pub target: AffineMonoid,
    pub matrix: Vec<Vec<i64>>,
}

impl MonoidHom {
    pub fn new(source: AffineMonoid, target: AffineMonoid, matrix: Vec<Vec<i64>>) -> Result<Self> {
        if matrix.len() != target.ambient_rank
            || matrix.iter().any(|r| r.len() != source.ambient_rank)
        {
            return Err(Error::DimensionMismatch {
                expected: target.ambient_rank,
                got: matrix.len(),
            });
        }
        let oracle = target.membership();
        for (i, g) in source.generators.iter().enumerate() {
            if !oracle.contains(&mat_apply(&matrix, g))? {
                return Err(Error::NotAHomomorphism { index: i });
            }
        }
        if let (Some(_), Some(wt)) = (&source.involution, &target.involution) {
            for (i, g) in source.generators.iter().enumerate() {
                let a = mat_apply(&matrix, &source.apply_involution(g));
                let b = mat_apply(wt, &mat_apply(&matrix, g));
                if a != b {
                    return Err(Error::NotEquivariant { index: i });
                }
            }
        }
        Ok(MonoidHom { source, target, matrix })
    }

    pub fn identity(m: &AffineMonoid) -> Self {
        MonoidHom {
            source: m.clone(),
            target: m.clone(),
            matrix: identity_rows(m.ambient_rank),
        }
    }

    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        mat_apply(&self.matrix, x)
    }

    /// other after self (self's target must be other's source lattice).
    pub fn then(&self, other: &MonoidHom) -> Result<MonoidHom> {
        MonoidHom::new(
            self.source.clone(),
            other.target.clone(),
            mat_mul(&other.matrix, &self.matrix),
        )
    }
}

/// Exactification package: the double of the base, the carrier realizing
/// base + base^gp, and the three structure maps.
#[derive(Clone, Debug)]
pub struct ExactifiedMonoid {
    pub base: AffineMonoid,
    pub carrier: AffineMonoid,
    pub theta: MonoidHom,
    pub theta_ex: MonoidHom,
    pub eta: MonoidHom,
}

/// Pushout of integral monoids along group completions: the image of
/// `P + Q` in `(P^gp + Q^gp) / K` with `K` spanned by `(f(r), -g(r))`.
/// Errors when the quotient would introduce torsion on the completion
/// lattice, since the result then has no affine carrier.
pub fn integral_pushout(
    f: &MonoidHom,
    g: &MonoidHom,
) -> Result<(AffineMonoid, MonoidHom, MonoidHom)> {
    if f.source != g.source {
        return Err(Error::InvalidInput("pushout legs must share their source".into()));
    }
    let dp = f.target.ambient_rank;
    let dq = g.target.ambient_rank;
    let dd = dp + dq;
    let r_gens = &f.source.generators;
    let k_cols: Vec<Vec<i64>> = r_gens
        .iter()
        .map(|r| {
            let mut v = f.apply(r);
            v.extend(neg_vec(&g.apply(r)));
            v
        })
        .collect();
    let k_mat = IntMat::from_cols_i64(&k_cols, dd);
    // Torsion test: coordinates of K inside the completion lattice of P + Q
    // must have unit invariant factors.
    let lp_basis = f.target.group_completion();
    let lq_basis = g.target.group_completion();
    let mut l_cols: Vec<Vec<i64>> = Vec::new();
    for j in 0..lp_basis.cols {
        let mut v = lp_basis.col_i64(j).ok_or(Error::Overflow("pushout lattice"))?;
        v.extend(std::iter::repeat(0).take(dq));
        l_cols.push(v);
    }
    for j in 0..lq_basis.cols {
        let mut v = vec![0; dp];
        v.extend(lq_basis.col_i64(j).ok_or(Error::Overflow("pushout lattice"))?);
        l_cols.push(v);
    }
    let l_mat = IntMat::from_cols_i64(&l_cols, dd);
    if !k_cols.is_empty() {
        let mut coord_cols: Vec<Vec<BigInt>> = Vec::new();
        for col in &k_cols {
            let b: Vec<BigInt> = col.iter().map(|&v| BigInt::from(v)).collect();
            let sol = matrix::solve_integer(&l_mat, &b)
                .ok_or_else(|| Error::InvalidInput("pushout relation escapes the lattice".into()))?;
            coord_cols.push(sol);
        }
        let mut coord = IntMat::zero(l_mat.cols, coord_cols.len());
        for (j, col) in coord_cols.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                coord[(i, j)] = v.clone();
            }
        }
        let snf = matrix::smith_normal_form(&coord, matrix::PivotStrategy::MinAbs);
        if snf.invariant_factors().iter().any(|v| v != &BigInt::from(1)) {
            return Err(Error::TorsionPushout);
        }
    }
    let k_sat = matrix::saturate_lattice(&k_mat);
    let (proj, sect) = matrix::quotient_projection(&k_sat, dd);
    let qdim = proj.rows;
    let proj_rows: Vec<Vec<i64>> = (0..qdim)
        .map(|i| (0..dd).map(|j| i64::try_from(&proj[(i, j)]).expect("overflow")).collect())
        .collect();
    let mut gens: Vec<Vec<i64>> = Vec::new();
    let mut push = |v: Vec<i64>| {
        if v.iter().any(|&c| c != 0) && !gens.contains(&v) {
            gens.push(v);
        }
    };
    let mut inc_p_rows: Vec<Vec<i64>> = Vec::new();
    let mut inc_q_rows: Vec<Vec<i64>> = Vec::new();
    for i in 0..qdim {
        inc_p_rows.push(proj_rows[i][..dp].to_vec());
        inc_q_rows.push(proj_rows[i][dp..].to_vec());
    }
    for gp in &f.target.generators {
        push(mat_apply(&inc_p_rows, gp));
    }
    for gq in &g.target.generators {
        push(mat_apply(&inc_q_rows, gq));
    }
    let involution = match (&f.target.involution, &g.target.involution) {
        (Some(wp), Some(wq)) => {
            let sect_rows: Vec<Vec<i64>> = (0..dd)
                .map(|i| {
                    (0..qdim).map(|j| i64::try_from(&sect[(i, j)]).expect("overflow")).collect()
                })
                .collect();
            let mut w_block: Vec<Vec<i64>> = Vec::new();
            for i in 0..dp {
                let mut row = wp[i].clone();
                row.extend(std::iter::repeat(0).take(dq));
                w_block.push(row);
            }
            for i in 0..dq {
                let mut row = vec![0; dp];
                row.extend_from_slice(&wq[i]);
                w_block.push(row);
            }
            Some(mat_mul(&proj_rows, &mat_mul(&w_block, &sect_rows)))
        }
        _ => None,
    };
    let pushout = AffineMonoid::new(qdim, gens, involution)?;
    let into_p = MonoidHom::new(f.target.clone(), pushout.clone(), inc_p_rows)?;
    let into_q = MonoidHom::new(g.target.clone(), pushout.clone(), inc_q_rows)?;
    Ok((pushout, into_p, into_q))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p0_n2() -> AffineMonoid {
        // {x : x1 + x2 <= 0} in Z^2
        AffineMonoid::new(
            2,
            vec![vec![-1, 0], vec![0, -1], vec![1, -1], vec![-1, 1]],
            None,
        )
        .unwrap()
    }

    #[test]
    fn contains_basic() {
        let n2 = AffineMonoid::free(2);
        assert!(n2.contains(&[2, 3]).unwrap());
        assert!(!n2.contains(&[-1, 0]).unwrap());

        let p0 = p0_n2();
        assert!(!p0.contains(&[1, 0]).unwrap());
        assert!(p0.contains(&[-2, 1]).unwrap());
        assert!(p0.contains(&[3, -3]).unwrap());

        let numeric = AffineMonoid::new(1, vec![vec![2], vec![3]], None).unwrap();
        assert!(!numeric.contains(&[1]).unwrap());
        assert!(numeric.contains(&[5]).unwrap());
        assert!(numeric.contains(&[0]).unwrap());
    }

    #[test]
    fn contains_with_unit_sublattice() {
        // Units are 2Z x 0; the quotient trick must respect the index-2
        // sublattice, not its saturation.
        let m = AffineMonoid::new(2, vec![vec![2, 0], vec![-2, 0], vec![1, 1]], None).unwrap();
        assert!(!m.contains(&[1, 0]).unwrap());
        assert!(m.contains(&[3, 1]).unwrap());
        assert!(m.contains(&[-1, 1]).unwrap());
        assert!(!m.contains(&[0, -1]).unwrap());
    }

    #[test]
    fn group_completion_examples() {
        let numeric = AffineMonoid::new(1, vec![vec![2], vec![3]], None).unwrap();
        let gp = numeric.group_completion();
        assert_eq!(gp.cols, 1);
        assert_eq!(gp[(0, 0)], BigInt::from(1));

        let diag = AffineMonoid::new(2, vec![vec![1, 1]], None).unwrap();
        let gp = diag.group_completion();
        assert_eq!(gp.cols, 1);
        assert_eq!(gp.col_i64(0).unwrap(), vec![1, 1]);
    }

    #[test]
    fn units_examples() {
        let nz = AffineMonoid::new(2, vec![vec![1, 0], vec![0, 1], vec![0, -1]], None).unwrap();
        let u = nz.units();
        let expected = AffineMonoid::new(2, vec![vec![0, 1], vec![0, -1]], None).unwrap();
        assert!(u.same_submonoid(&expected).unwrap());

        let p0 = p0_n2();
        let f0 = AffineMonoid::new(2, vec![vec![1, -1], vec![-1, 1]], None).unwrap();
        assert!(p0.units().same_submonoid(&f0).unwrap());

        assert!(AffineMonoid::free(2).units().generators.is_empty());
    }

    #[test]
    fn sharpen_examples() {
        let nz = AffineMonoid::new(2, vec![vec![1, 0], vec![0, 1], vec![0, -1]], None).unwrap();
        let (sharp, proj) = nz.sharpen().unwrap();
        assert_eq!(sharp.ambient_rank, 1);
        assert!(sharp.is_sharp());
        assert_eq!(sharp.generators.len(), 1);
        assert_eq!(proj.apply(&[5, 7]).len(), 1);

        let p0 = p0_n2();
        let (sharp, _) = p0.sharpen().unwrap();
        assert_eq!(sharp.ambient_rank, 1);
        assert!(sharp.is_sharp());
        assert_eq!(sharp.generators.len(), 1);

        let n2 = AffineMonoid::free(2);
        let (sharp, _) = n2.sharpen().unwrap();
        assert_eq!(sharp.ambient_rank, 2);
        assert!(sharp.same_submonoid(&n2).unwrap());
    }

    #[test]
    fn saturation_examples() {
        assert!(AffineMonoid::free(2).is_saturated(4).unwrap());
        let numeric = AffineMonoid::new(1, vec![vec![2], vec![3]], None).unwrap();
        assert!(!numeric.is_saturated(4).unwrap());
        assert!(p0_n2().is_saturated(4).unwrap());
        let m = AffineMonoid::new(5, vec![], None);
        assert!(matches!(m.unwrap().is_saturated(4), Err(Error::RankCapExceeded { .. })));
    }

    #[test]
    fn face_localization_examples() {
        let n2 = AffineMonoid::free(2);
        let loc = n2.face_localization(&[0]).unwrap();
        assert!(loc.contains(&[-3, 0]).unwrap());
        assert!(!loc.contains(&[0, -1]).unwrap());

        let id = AffineMonoid::free(1).face_localization(&[]).unwrap();
        assert_eq!(id, AffineMonoid::free(1));

        let all = n2.face_localization(&[0, 1]).unwrap();
        assert!(all.same_submonoid(&AffineMonoid::lattice(2)).unwrap());

        // The diagonal of N^2 is not a face.
        let m = AffineMonoid::new(2, vec![vec![1, 0], vec![0, 1], vec![1, 1]], None).unwrap();
        assert!(m.face_localization(&[2]).is_err());
    }

    #[test]
    fn direct_sum_and_double() {
        let s = AffineMonoid::free(1).direct_sum(&AffineMonoid::free(1));
        assert!(s.same_submonoid(&AffineMonoid::free(2)).unwrap());

        let d = AffineMonoid::free(1).double();
        assert_eq!(d.ambient_rank, 2);
        assert_eq!(d.involution.as_ref().unwrap(), &vec![vec![0, 1], vec![1, 0]]);
        assert!(d.same_submonoid(&AffineMonoid::free(2)).unwrap());
        assert_eq!(AffineMonoid::zero(0).double().generators.len(), 0);
    }

    #[test]
    fn exactify_shape() {
        let mut n = AffineMonoid::free(1);
        n.involution = Some(vec![vec![1]]);
        let ex = n.exactify().unwrap();
        assert_eq!(ex.carrier.ambient_rank, 2);
        assert_eq!(ex.carrier.involution.as_ref().unwrap(), &vec![vec![1, 0], vec![1, -1]]);
        assert_eq!(ex.eta.apply(&[1, 1]), vec![2, 1]);
        // triangle: theta_ex . eta = theta
        for x in -3i64..=3 {
            for y in -3i64..=3 {
                let via = ex.theta_ex.apply(&ex.eta.apply(&[x, y]));
                assert_eq!(via, ex.theta.apply(&[x, y]));
            }
        }
    }

    #[test]
    fn pushout_over_zero_is_direct_sum() {
        let z = AffineMonoid::zero(0);
        let p = AffineMonoid::free(1);
        let q = AffineMonoid::free(2);
        let f = MonoidHom::new(z.clone(), p.clone(), vec![vec![]]).unwrap();
        let g = MonoidHom::new(z, q.clone(), vec![vec![], vec![]]).unwrap();
        let (po, ip, iq) = integral_pushout(&f, &g).unwrap();
        assert_eq!(po.ambient_rank, 3);
        assert!(po.same_submonoid(&AffineMonoid::free(3)).unwrap());
        assert_eq!(ip.apply(&[1]).len(), 3);
        assert_eq!(iq.apply(&[0, 1]).len(), 3);
    }

    #[test]
    fn pushout_glues_along_shared_sub() {
        // N <- N (x2 into first leg as x -> 2x) pushed out along identity.
        let n = AffineMonoid::free(1);
        let f = MonoidHom::new(n.clone(), n.clone(), vec![vec![2]]).unwrap();
        let g = MonoidHom::new(n.clone(), n.clone(), vec![vec![1]]).unwrap();
        // K spanned by (2, -1): saturated in Z^2, quotient is Z with
        // images 1 and 2; pushout monoid generated by {1, 2} = N.
        let (po, ip, iq) = integral_pushout(&f, &g).unwrap();
        assert_eq!(po.ambient_rank, 1);
        let im_p = ip.apply(&[1])[0];
        let im_q = iq.apply(&[1])[0];
        assert_eq!(im_p.abs(), 1);
        assert_eq!(im_q.abs(), 2);
    }

    #[test]
    fn pushout_torsion_detected() {
        // Z <- Z (x2) -> 0 would give Z/2.
        let z = AffineMonoid::lattice(1);
        let zero = AffineMonoid::zero(0);
        let f = MonoidHom::new(z.clone(), z.clone(), vec![vec![2]]).unwrap();
        let g = MonoidHom::new(z, zero, vec![]).unwrap();
        assert!(matches!(integral_pushout(&f, &g), Err(Error::TorsionPushout)));
    }

    #[test]
    fn involution_validation() {
        let bad = AffineMonoid::new(2, identity_rows(2), Some(vec![vec![0, 1], vec![0, 1]]));
        assert!(matches!(bad, Err(Error::InvolutionNotInvolutive)));
        // Swap involution does not preserve N x Z_{>=0 in first coord only}.
        let escapes = AffineMonoid::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![0, -1]],
            Some(vec![vec![0, 1], vec![1, 0]]),
        );
        assert!(matches!(escapes, Err(Error::InvolutionNotPreserved { .. })));
        assert!(AffineMonoid::free2_swap().validate().is_ok());
    }

    #[test]
    fn hom_validation() {
        let n = AffineMonoid::free(1);
        let z = AffineMonoid::lattice(1);
        assert!(MonoidHom::new(n.clone(), z.clone(), vec![vec![-1]]).is_ok());
        assert!(matches!(
            MonoidHom::new(z, n.clone(), vec![vec![1]]),
            Err(Error::NotAHomomorphism { .. })
        ));
        let id = MonoidHom::identity(&n);
        assert_eq!(id.then(&id).unwrap().apply(&[4]), vec![4]);
    }

    #[test]
    fn monoid_json_round_trip() {
        let m = AffineMonoid::free2_swap();
        let s = serde_json::to_string(&m).unwrap();
        assert!(s.contains("\"ambient_rank\":2"));
        let back: AffineMonoid = serde_json::from_str(&s).unwrap();
        assert_eq!(m, back);
    }
}
