//! Finite families of free orbits over an acting monoid, with an involution
//! permuting the orbit tags. Base change along a monoid map replaces the
//! acting monoid; the canonical-form check below certifies that the base
//! change of a two-orbit swap family is again a two-orbit swap family.

use serde_json::json;

use crate::error::{Error, Result};
use crate::monoid::{add_vec, AffineMonoid, MonoidHom};
use crate::nerves;
use crate::report::CheckReport;

/// A disjoint union of free orbits of the acting monoid. Element `(tag, x)`
/// is the translate of basepoint `tag` by the monoid element `x`. The
/// involution acts by `swap` on tags and by the monoid involution inside
/// each orbit.
#[derive(Clone, Debug)]
pub struct MonoidSet {
    pub monoid: AffineMonoid,
    pub swap: Vec<usize>,
}

impl MonoidSet {
    pub fn new(monoid: AffineMonoid, swap: Vec<usize>) -> Result<Self> {
        let n = swap.len();
        for (i, &j) in swap.iter().enumerate() {
            if j >= n || swap[j] != i {
                return Err(Error::InvalidInput("tag involution must be a self-inverse permutation".into()));
            }
        }
        Ok(MonoidSet { monoid, swap })
    }

    /// Two free orbits exchanged by the involution.
    pub fn free_double(monoid: AffineMonoid) -> Self {
        MonoidSet { monoid, swap: vec![1, 0] }
    }

    pub fn orbits(&self) -> usize {
        self.swap.len()
    }

    /// Translate an element by a monoid element.
    pub fn act(&self, x: &[i64], elem: &(usize, Vec<i64>)) -> (usize, Vec<i64>) {
        (elem.0, add_vec(x, &elem.1))
    }

    pub fn apply_involution(&self, elem: &(usize, Vec<i64>)) -> (usize, Vec<i64>) {
        (self.swap[elem.0], self.monoid.apply_involution(&elem.1))
    }

    /// Elements with invariant norm within the budget.
    pub fn elements(&self, budget: i64) -> Result<Vec<(usize, Vec<i64>)>> {
        let pts = nerves::monoid_window(&self.monoid, budget)?;
        let mut out = Vec::new();
        for tag in 0..self.orbits() {
            for x in &pts {
                out.push((tag, x.clone()));
            }
        }
        Ok(out)
    }

    /// Base change along a map out of the acting monoid: each free orbit of
    /// the source becomes a free orbit of the target, and the canonical form
    /// of `(q, (tag, p))` in the balanced product is `(tag, q + theta(p))`.
    pub fn base_change(&self, theta: &MonoidHom) -> Result<MonoidSet> {
        if theta.source != self.monoid {
            return Err(Error::InvalidInput("base change requires a map out of the acting monoid".into()));
        }
        MonoidSet::new(theta.target.clone(), self.swap.clone())
    }
}

/// Base change of the two-orbit swap family: verify on a window that the
/// balanced-product reduction is consistent (acting through the source before
/// or after reducing gives the same canonical form) and that the involution
/// transports to the tag swap with the target involution inside each orbit.
pub fn check_coproduct_base_change(theta: &MonoidHom, window: i64) -> Result<CheckReport> {
    let name = "coproduct-base-change";
    let src = MonoidSet::free_double(theta.source.clone());
    let tgt = src.base_change(theta)?;
    if tgt.orbits() != 2 || tgt.swap != vec![1, 0] {
        return Ok(CheckReport::fail(name, json!({"reason": "orbit structure not preserved"})));
    }
    let ps = nerves::monoid_window(&theta.source, window)?;
    let qs = nerves::monoid_window(&theta.target, window)?;
    for elem in src.elements(window)? {
        for q in &qs {
            // reduce, then act by q in the target
            let reduced = tgt.act(&theta.apply(&elem.1), &(elem.0, vec![0; theta.target.ambient_rank]));
            let lhs = tgt.act(q, &reduced);
            // act by p in the source inside the balanced product, then reduce
            let rhs = (elem.0, add_vec(q, &theta.apply(&elem.1)));
            if lhs != rhs {
                return Ok(CheckReport::fail(name, json!({"tag": elem.0, "p": elem.1, "q": q})));
            }
        }
        // involution transport: reducing the flipped element matches flipping
        // the reduced element
        let flip_then_reduce = {
            let f = src.apply_involution(&elem);
            (f.0, theta.apply(&f.1))
        };
        let reduce_then_flip = tgt.apply_involution(&(elem.0, theta.apply(&elem.1)));
        if flip_then_reduce != reduce_then_flip {
            return Ok(CheckReport::fail(
                name,
                json!({"reason": "involution does not transport", "tag": elem.0, "p": elem.1}),
            ));
        }
    }
    Ok(CheckReport::pass(name).with_witness(json!({
        "window": window,
        "source_points": ps.len(),
        "target_points": qs.len(),
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn double_base_change_is_double() {
        let p = AffineMonoid::new(1, vec![vec![1]], Some(vec![vec![1]])).unwrap();
        let q = AffineMonoid::free2_swap();
        let theta = MonoidHom::new(p, q, vec![vec![1], vec![1]]).unwrap();
        let r = check_coproduct_base_change(&theta, 3).unwrap();
        assert!(r.status.is_pass());
    }

    #[test]
    fn swap_must_be_involutive() {
        assert!(MonoidSet::new(AffineMonoid::free(1), vec![1, 2, 0]).is_err());
    }
}
