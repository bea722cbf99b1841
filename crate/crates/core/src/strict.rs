//! Checks for maps that are isomorphisms after sharpening: base change of
//! the unit group, the pushout squares relating a monoid to its
//! exactification, the conjugation-fixed submonoid of a group completion,
//! and chart surjectivity.

use num_bigint::BigInt;
use serde_json::json;

use crate::error::{Error, Result};
use crate::matrix::{self, IntMat};
use crate::monoid::{
    identity_rows, integral_pushout, mat_mul, AffineMonoid, MonoidHom,
};
use crate::nerves::{self, l1, norm_w};
use crate::report::CheckReport;

/// Forget the involution.
fn strip(m: &AffineMonoid) -> AffineMonoid {
    AffineMonoid { involution: None, ..m.clone() }
}

/// Integral right inverse of a surjective matrix with a unimodular-completable
/// row span, found by solving column by column.
fn right_inverse_rows(rows: &[Vec<i64>]) -> Option<Vec<Vec<i64>>> {
    let m = IntMat::from_rows_i64(rows);
    let mut cols: Vec<Vec<i64>> = Vec::with_capacity(m.rows);
    for j in 0..m.rows {
        let mut e = vec![BigInt::from(0); m.rows];
        e[j] = BigInt::from(1);
        let sol = matrix::solve_integer(&m, &e)?;
        cols.push(matrix::to_i64_vec(&sol)?);
    }
    Some((0..m.cols).map(|i| (0..m.rows).map(|j| cols[j][i]).collect()).collect())
}

/// Is the map injective on the group completion of its source?
fn hom_injective_on_gp(f: &MonoidHom) -> bool {
    let src_gp = f.source.group_completion();
    let image = IntMat::from_rows_i64(&f.matrix).mul(&src_gp);
    matrix::rank(&image) == src_gp.cols
}

/// A preimage of `y` inside the source monoid, if one exists. Decisive when
/// the map is injective on the group completion (the lattice solve is then
/// unique); callers establish injectivity first.
fn hom_preimage(f: &MonoidHom, y: &[i64]) -> Result<Option<Vec<i64>>> {
    let src_gp = f.source.group_completion();
    let image = IntMat::from_rows_i64(&f.matrix).mul(&src_gp);
    let b: Vec<BigInt> = y.iter().map(|&v| BigInt::from(v)).collect();
    let Some(c) = matrix::solve_integer(&image, &b) else {
        return Ok(None);
    };
    let x_big: Vec<BigInt> = (0..src_gp.rows)
        .map(|i| (0..src_gp.cols).map(|j| &src_gp[(i, j)] * &c[j]).sum())
        .collect();
    let x = matrix::to_i64_vec(&x_big).ok_or(Error::Overflow("preimage lift"))?;
    if f.source.contains(&x)? {
        Ok(Some(x))
    } else {
        Ok(None)
    }
}

/// The induced map of sharp quotients.
pub fn sharpened_hom(theta: &MonoidHom) -> Result<MonoidHom> {
    let (ps, ph) = strip(&theta.source).sharpen()?;
    let (qs, qh) = strip(&theta.target).sharpen()?;
    let sect = right_inverse_rows(&ph.matrix)
        .ok_or_else(|| Error::InvalidInput("sharpening projection has no integral section".into()))?;
    let mat = mat_mul(&qh.matrix, &mat_mul(&theta.matrix, &sect));
    MonoidHom::new(ps, qs, mat)
}

/// Is the induced map of sharp quotients an isomorphism? Exact: injectivity
/// on the completion lattice plus preimages of every target generator.
pub fn sharpened_iso(theta: &MonoidHom) -> Result<std::result::Result<(), serde_json::Value>> {
    let sharp = match sharpened_hom(theta) {
        Ok(h) => h,
        Err(e) => return Ok(Err(json!({"reason": e.to_string()}))),
    };
    if !hom_injective_on_gp(&sharp) {
        return Ok(Err(json!({"reason": "sharpened map is not injective"})));
    }
    for g in &sharp.target.generators {
        if hom_preimage(&sharp, g)?.is_none() {
            return Ok(Err(json!({
                "reason": "sharpened map misses a generator",
                "generator": g,
            })));
        }
    }
    Ok(Ok(()))
}

/// The submonoid of the group completion fixed by conjugation: all `y` with
/// `y + w(y)` in the monoid. Generated from an invariant-norm window, so the
/// result is exact only up to that window.
pub fn conjugation_fixed_monoid(q: &AffineMonoid, window: i64) -> Result<AffineMonoid> {
    let w = q
        .involution
        .clone()
        .ok_or_else(|| Error::InvalidInput("conjugation-fixed submonoid requires an involution".into()))?;
    let d = q.ambient_rank;
    let gp = q.group_completion();
    let oracle = q.membership();
    let mut candidates: Vec<Vec<i64>> = Vec::new();
    for y in nerves::box_lattice_points(&gp, d, window) {
        if norm_w(q, &y) > window || y.iter().all(|&v| v == 0) {
            continue;
        }
        let s: Vec<i64> = (0..d).map(|i| y[i] + q.apply_involution(&y)[i]).collect();
        if oracle.contains(&s)? {
            candidates.push(y);
        }
    }
    candidates.sort_by_key(|v| (l1(v), v.clone()));
    let mut gens: Vec<Vec<i64>> = Vec::new();
    for y in candidates {
        let current = AffineMonoid::new(d, gens.clone(), None)?;
        if !current.contains(&y)? {
            gens.push(y);
        }
    }
    AffineMonoid::new(d, gens, Some(w))
}

/// Given a commuting square (A -> B, A -> C, B -> D, C -> D), decide whether
/// it is cocartesian in integral monoids: form the pushout of the two legs
/// and test that the induced map to D is injective on the completion lattice
/// and hits every generator of D.
fn cocartesian(
    ab: &MonoidHom,
    ac: &MonoidHom,
    bd: &MonoidHom,
    cd: &MonoidHom,
) -> Result<std::result::Result<(), serde_json::Value>> {
    for g in &ab.source.generators {
        if bd.apply(&ab.apply(g)) != cd.apply(&ac.apply(g)) {
            return Ok(Err(json!({"reason": "square does not commute", "generator": g})));
        }
    }
    let (po, into_b, into_c) = match integral_pushout(ab, ac) {
        Ok(x) => x,
        Err(e) => return Ok(Err(json!({"reason": e.to_string()}))),
    };
    let proj: Vec<Vec<i64>> = into_b
        .matrix
        .iter()
        .zip(&into_c.matrix)
        .map(|(a, b)| {
            let mut r = a.clone();
            r.extend(b.iter().cloned());
            r
        })
        .collect();
    let sect = right_inverse_rows(&proj)
        .ok_or_else(|| Error::InvalidInput("pushout projection has no integral section".into()))?;
    let mut h: Vec<Vec<i64>> = Vec::with_capacity(bd.matrix.len());
    for (a, b) in bd.matrix.iter().zip(&cd.matrix) {
        let mut r = a.clone();
        r.extend(b.iter().cloned());
        h.push(r);
    }
    let induced = MonoidHom::new(po, bd.target.clone(), mat_mul(&h, &sect))?;
    if !hom_injective_on_gp(&induced) {
        return Ok(Err(json!({"reason": "induced map from pushout is not injective"})));
    }
    for g in &bd.target.generators {
        if hom_preimage(&induced, g)?.is_none() {
            return Ok(Err(json!({
                "reason": "induced map from pushout misses a generator",
                "generator": g,
            })));
        }
    }
    Ok(Ok(()))
}

/// Base change along the unit groups: the canonical map from the pushout of
/// P over its units along the target's units must be an isomorphism onto the
/// target whenever the sharpened map is one. Injectivity is certified
/// exactly; surjectivity on an invariant-norm window.
pub fn check_unit_base_change(theta: &MonoidHom, window: i64) -> Result<CheckReport> {
    let name = "unit-base-change";
    if let Err(w) = sharpened_iso(theta)? {
        return Ok(CheckReport::precondition_failed(name, w));
    }
    let p = strip(&theta.source);
    let q = strip(&theta.target);
    let pu = p.units();
    let qu = q.units();
    let incl = MonoidHom::new(pu.clone(), p.clone(), identity_rows(p.ambient_rank))?;
    let to_units = match MonoidHom::new(pu, qu, theta.matrix.clone()) {
        Ok(h) => h,
        Err(e) => {
            return Ok(CheckReport::precondition_failed(name, json!({"reason": e.to_string()})))
        }
    };
    let (po, into_p, into_q) = match integral_pushout(&incl, &to_units) {
        Ok(x) => x,
        Err(e) => return Ok(CheckReport::fail(name, json!({"reason": e.to_string()}))),
    };
    let proj: Vec<Vec<i64>> = into_p
        .matrix
        .iter()
        .zip(&into_q.matrix)
        .map(|(a, b)| {
            let mut r = a.clone();
            r.extend(b.iter().cloned());
            r
        })
        .collect();
    let sect = right_inverse_rows(&proj)
        .ok_or_else(|| Error::InvalidInput("pushout projection has no integral section".into()))?;
    let id_q = identity_rows(q.ambient_rank);
    let mut h: Vec<Vec<i64>> = Vec::with_capacity(q.ambient_rank);
    for (a, b) in theta.matrix.iter().zip(&id_q) {
        let mut r = a.clone();
        r.extend(b.iter().cloned());
        h.push(r);
    }
    let eta = MonoidHom::new(po, q.clone(), mat_mul(&h, &sect))?;
    if !hom_injective_on_gp(&eta) {
        return Ok(CheckReport::fail(name, json!({"reason": "comparison map is not injective"})));
    }
    let targets = nerves::monoid_window(&q, window)?;
    if targets.len() <= 1 {
        return Ok(CheckReport::inconclusive(
            name,
            json!({"reason": "window contains no nonzero target elements", "window": window}),
        ));
    }
    for y in &targets {
        if hom_preimage(&eta, y)?.is_none() {
            return Ok(CheckReport::fail(name, json!({"missed": y})));
        }
    }
    Ok(CheckReport::pass(name)
        .with_witness(json!({"window": window, "elements_checked": targets.len()})))
}

/// Block-diagonal matrix applying `m` to each of two stacked copies.
fn diag2(m: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = m.len();
    let cols = m[0].len();
    let mut out = Vec::with_capacity(2 * d);
    for row in m {
        let mut r = row.clone();
        r.extend(std::iter::repeat(0).take(cols));
        out.push(r);
    }
    for row in m {
        let mut r = vec![0; cols];
        r.extend(row.iter().cloned());
        out.push(r);
    }
    out
}

/// The two pushout squares relating a monoid to its exactification, plus the
/// conjugation-fixed comparison. All squares live over the underlying
/// (involution-forgotten) monoids.
pub fn check_strict3_squares(theta: &MonoidHom, window: i64) -> Result<CheckReport> {
    let name = "exactification-squares";
    if theta.source.involution.is_none() || theta.target.involution.is_none() {
        return Ok(CheckReport::precondition_failed(
            name,
            json!({"reason": "both monoids need an involution"}),
        ));
    }
    if let Err(w) = sharpened_iso(theta)? {
        return Ok(CheckReport::precondition_failed(name, w));
    }
    let p = strip(&theta.source);
    let q = strip(&theta.target);
    let dp = p.ambient_rank;

    // Square 1: units-doubled over monoid-doubled, compared along theta.
    let a = p.units().direct_sum(&p.units());
    let b = p.direct_sum(&p);
    let c = q.units().direct_sum(&q.units());
    let dmon = q.direct_sum(&q);
    let ab = MonoidHom::new(a.clone(), b.clone(), identity_rows(2 * dp))?;
    let ac = MonoidHom::new(a.clone(), c.clone(), diag2(&theta.matrix))?;
    let bd = MonoidHom::new(b.clone(), dmon.clone(), diag2(&theta.matrix))?;
    let cd = MonoidHom::new(c.clone(), dmon.clone(), identity_rows(2 * q.ambient_rank))?;
    if let Err(w) = cocartesian(&ab, &ac, &bd, &cd)? {
        return Ok(CheckReport::fail(name, json!({"square": "doubled-units", "witness": w})));
    }

    // Square 2: units-doubled into the exactified carrier, which shears the
    // second summand into the group completion.
    let ex_p = theta.source.exactify()?;
    let ex_q = theta.target.exactify()?;
    let carrier_p = strip(&ex_p.carrier);
    let carrier_q = strip(&ex_q.carrier);
    let ab2 = MonoidHom::new(a.clone(), carrier_p.clone(), ex_p.eta.matrix.clone())?;
    let bd2 = MonoidHom::new(carrier_p, carrier_q.clone(), diag2(&theta.matrix))?;
    let cd2 = MonoidHom::new(c.clone(), carrier_q, ex_q.eta.matrix.clone())?;
    if let Err(w) = cocartesian(&ab2, &ac, &bd2, &cd2)? {
        return Ok(CheckReport::fail(name, json!({"square": "exactified-carrier", "witness": w})));
    }

    // Square 3: conjugation-fixed submonoids. Their generating windows must
    // cover the generators of P, Q and the image of the source's window, so
    // the comparison maps are well defined.
    let wl = window.max(
        theta.source.generators.iter().map(|g| norm_w(&theta.source, g)).max().unwrap_or(0),
    );
    let lmon = conjugation_fixed_monoid(&theta.source, wl)?;
    let wm = window
        .max(theta.target.generators.iter().map(|g| norm_w(&theta.target, g)).max().unwrap_or(0))
        .max(lmon.generators.iter().map(|g| norm_w(&theta.target, &theta.apply(g))).max().unwrap_or(0));
    let mmon = conjugation_fixed_monoid(&theta.target, wm)?;
    let lmon = strip(&lmon);
    let mmon = strip(&mmon);
    let ab3 = MonoidHom::new(p.clone(), lmon.clone(), identity_rows(dp))?;
    let ac3 = MonoidHom::new(p, q.clone(), theta.matrix.clone())?;
    let bd3 = MonoidHom::new(lmon, mmon.clone(), theta.matrix.clone())?;
    let cd3 = MonoidHom::new(q, mmon, identity_rows(theta.target.ambient_rank))?;
    if let Err(w) = cocartesian(&ab3, &ac3, &bd3, &cd3)? {
        return Ok(CheckReport::fail(name, json!({"square": "conjugation-fixed", "witness": w})));
    }

    Ok(CheckReport::pass(name).with_witness(json!({
        "squares": ["doubled-units", "exactified-carrier", "conjugation-fixed"],
        "window": window,
    })))
}

/// Does the map become surjective after sharpening both sides?
pub fn chart_surjective(theta: &MonoidHom) -> Result<CheckReport> {
    let name = "chart-surjectivity";
    let sharp = sharpened_hom(theta)?;
    let images: Vec<Vec<i64>> = sharp
        .source
        .generators
        .iter()
        .map(|g| sharp.apply(g))
        .filter(|v| v.iter().any(|&c| c != 0))
        .collect();
    let image_monoid = AffineMonoid::new(sharp.target.ambient_rank, images, None)?;
    for g in &sharp.target.generators {
        if !image_monoid.contains(g)? {
            return Ok(CheckReport::fail(name, json!({"missed": g})));
        }
    }
    Ok(CheckReport::pass(name))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::monoid::identity_rows;

    fn nat() -> AffineMonoid {
        AffineMonoid::new(1, vec![vec![1]], Some(vec![vec![1]])).unwrap()
    }

    fn nat_plus_z() -> AffineMonoid {
        AffineMonoid::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![0, -1]],
            Some(identity_rows(2)),
        )
        .unwrap()
    }

    #[test]
    fn conjugation_fixed_examples() {
        // trivial involution on the free monoid: y + y in N iff y >= 0
        let l = conjugation_fixed_monoid(&nat(), 3).unwrap();
        assert!(l.same_submonoid(&AffineMonoid::free(1)).unwrap());

        // swap involution on the free rank-2 monoid: condition a + b >= 0
        let l = conjugation_fixed_monoid(&AffineMonoid::free2_swap(), 3).unwrap();
        let expected = AffineMonoid::new(
            2,
            vec![vec![1, 0], vec![0, 1], vec![1, -1], vec![-1, 1]],
            None,
        )
        .unwrap();
        assert!(strip(&l).same_submonoid(&expected).unwrap());

        // a group is fixed by conjugation everywhere
        let z = AffineMonoid::new(1, vec![vec![1], vec![-1]], Some(vec![vec![-1]])).unwrap();
        let l = conjugation_fixed_monoid(&z, 3).unwrap();
        assert!(strip(&l).same_submonoid(&AffineMonoid::lattice(1)).unwrap());
    }

    #[test]
    fn unit_base_change_instances() {
        // inclusion of N into N + Z is an isomorphism after sharpening
        let theta =
            MonoidHom::new(nat(), nat_plus_z(), vec![vec![1], vec![0]]).unwrap();
        assert_eq!(check_unit_base_change(&theta, 5).unwrap().status, crate::Status::Pass);

        // the identity passes
        let id = MonoidHom::identity(&nat());
        assert_eq!(check_unit_base_change(&id, 5).unwrap().status, crate::Status::Pass);

        // multiplication by 2 on the free monoid is not an isomorphism after
        // sharpening
        let dbl = MonoidHom::new(nat(), nat(), vec![vec![2]]).unwrap();
        assert_eq!(
            check_unit_base_change(&dbl, 5).unwrap().status,
            crate::Status::PreconditionFailed
        );
    }

    #[test]
    fn strict_squares_instances() {
        let theta =
            MonoidHom::new(nat(), nat_plus_z(), vec![vec![1], vec![0]]).unwrap();
        assert_eq!(check_strict3_squares(&theta, 4).unwrap().status, crate::Status::Pass);

        let id = MonoidHom::identity(&AffineMonoid::free2_swap());
        assert_eq!(check_strict3_squares(&id, 3).unwrap().status, crate::Status::Pass);

        let dbl = MonoidHom::new(nat(), nat(), vec![vec![2]]).unwrap();
        assert_eq!(
            check_strict3_squares(&dbl, 4).unwrap().status,
            crate::Status::PreconditionFailed
        );
    }

    #[test]
    fn chart_surjectivity_detects_both_ways() {
        let theta =
            MonoidHom::new(nat(), nat_plus_z(), vec![vec![1], vec![0]]).unwrap();
        assert!(chart_surjective(&theta).unwrap().status.is_pass());

        let dbl = MonoidHom::new(nat(), nat(), vec![vec![2]]).unwrap();
        assert_eq!(chart_surjective(&dbl).unwrap().status, crate::Status::Fail);
    }
}
