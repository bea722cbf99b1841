//! Nerve-style constructions attached to an affine monoid: the cyclic-style
//! nerve with involution, its replete variant over the group completion, the
//! bar-style nerve of a group, the interval tensor, the contractible
//! resolution, and small hand-built models (2-gon circle, interval).
//!
//! Infinite objects are tabulated through weight pieces (sharp monoids) or
//! through a total coordinate budget: a cell qualifies when the sum of its
//! entry norms stays within the budget, where the norm of an entry is the
//! larger of its own l1 size and that of its involution image. Both notions
//! are stable under every operator except where noted, so the tabulated
//! operators are total on their windows.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::{self, IntMat};
use crate::monoid::{add_vec, mat_apply, sub_vec, AffineMonoid, Membership};
use crate::simplicial::{Cell, SetSpec, SimplicialMap, TruncatedDihedralSet, constant_set};

/// Window for nerve tabulation: either a list of target weights (closed
/// under the involution) or a total norm budget.
#[derive(Clone, Debug)]
pub enum WindowSpec {
    Weights(Vec<Vec<i64>>),
    Budget(i64),
}

pub fn l1(v: &[i64]) -> i64 {
    v.iter().map(|x| x.abs()).sum()
}

/// Involution-invariant size of a lattice vector.
pub fn norm_w(m: &AffineMonoid, v: &[i64]) -> i64 {
    match &m.involution {
        None => l1(v),
        Some(w) => l1(v).max(l1(&mat_apply(w, v))),
    }
}

/// All points of the column lattice of `basis` whose coordinates are bounded
/// by `bound` in absolute value.
pub(crate) fn box_lattice_points(basis: &IntMat, dim: usize, bound: i64) -> Vec<Vec<i64>> {
    let mut out = Vec::new();
    let mut x = vec![0i64; dim];
    fn rec(
        basis: &IntMat,
        bound: i64,
        x: &mut Vec<i64>,
        pos: usize,
        out: &mut Vec<Vec<i64>>,
    ) {
        if pos == x.len() {
            if matrix::in_lattice(basis, x) {
                out.push(x.clone());
            }
            return;
        }
        for v in -bound..=bound {
            x[pos] = v;
            rec(basis, bound, x, pos + 1, out);
        }
        x[pos] = 0;
    }
    rec(basis, bound, &mut x, 0, &mut out);
    out
}

/// Elements of the monoid with invariant norm at most `b`.
pub fn monoid_window(m: &AffineMonoid, b: i64) -> Result<Vec<Vec<i64>>> {
    let oracle = m.membership();
    let mut out = Vec::new();
    for x in box_lattice_points(&m.group_completion(), m.ambient_rank, b) {
        if norm_w(m, &x) <= b && oracle.contains(&x)? {
            out.push(x);
        }
    }
    Ok(out)
}

/// Elements `x` of a sharp monoid with `weight - x` also in the monoid.
pub fn weight_parts(m: &AffineMonoid, weight: &[i64]) -> Result<Vec<Vec<i64>>> {
    if !m.is_sharp() {
        return Err(Error::InvalidInput(
            "weight enumeration requires a sharp monoid; supply a budget instead".into(),
        ));
    }
    let oracle = m.membership();
    if !oracle.contains(weight)? {
        return Ok(Vec::new());
    }
    if m.generators.is_empty() {
        return Ok(vec![vec![0; m.ambient_rank]]);
    }
    let lambda = crate::lp::positive_functional(&m.generators, m.ambient_rank)
        .expect("sharp monoid generators span a pointed cone");
    let budget: i64 = lambda.iter().zip(weight).map(|(&a, &b)| a * b).sum();
    let costs: Vec<i64> =
        m.generators.iter().map(|g| lambda.iter().zip(g).map(|(&a, &b)| a * b).sum()).collect();
    let mut sums: BTreeSet<Vec<i64>> = BTreeSet::new();
    fn rec(
        gens: &[Vec<i64>],
        costs: &[i64],
        budget: i64,
        pos: usize,
        acc: &mut Vec<i64>,
        sums: &mut BTreeSet<Vec<i64>>,
    ) {
        if pos == gens.len() {
            sums.insert(acc.clone());
            return;
        }
        let max_c = budget / costs[pos];
        for c in 0..=max_c {
            if c > 0 {
                for (a, g) in acc.iter_mut().zip(&gens[pos]) {
                    *a += g;
                }
            }
            rec(gens, costs, budget - c * costs[pos], pos + 1, acc, sums);
        }
        for (a, g) in acc.iter_mut().zip(&gens[pos]) {
            *a -= max_c * g;
        }
    }
    let mut acc = vec![0i64; m.ambient_rank];
    rec(&m.generators, &costs, budget, 0, &mut acc, &mut sums);
    let mut out = Vec::new();
    for x in sums {
        if oracle.contains(&sub_vec(weight, &x))? {
            out.push(x);
        }
    }
    Ok(out)
}

pub(crate) fn orbit_close(m: &AffineMonoid, weights: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let mut set: BTreeSet<Vec<i64>> = BTreeSet::new();
    for w in weights {
        set.insert(w.clone());
        set.insert(m.apply_involution(w));
    }
    set.into_iter().collect()
}

/// Ordered tuples with a fixed number of slots whose entries come from the
/// pool, subject to a remainder predicate at every prefix (weight mode) or a
/// shared budget (budget mode).
fn tuples_with_weight(
    pool: &[Vec<i64>],
    oracle: &Membership,
    weight: &[i64],
    slots: usize,
) -> Result<Vec<Vec<Vec<i64>>>> {
    fn rec(
        pool: &[Vec<i64>],
        oracle: &Membership,
        remaining: &[i64],
        slots: usize,
        cur: &mut Vec<Vec<i64>>,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) -> Result<()> {
        if slots == 0 {
            if remaining.iter().all(|&v| v == 0) {
                out.push(cur.clone());
            }
            return Ok(());
        }
        for p in pool {
            let rest = sub_vec(remaining, p);
            if oracle.contains(&rest)? {
                cur.push(p.clone());
                rec(pool, oracle, &rest, slots - 1, cur, out)?;
                cur.pop();
            }
        }
        Ok(())
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(pool, oracle, weight, slots, &mut cur, &mut out)?;
    Ok(out)
}

pub(crate) fn tuples_with_budget(
    pool: &[(Vec<i64>, i64)],
    slots: usize,
    budget: i64,
    leaf_filter: &dyn Fn(&[Vec<i64>]) -> bool,
) -> Vec<Vec<Vec<i64>>> {
    fn rec(
        pool: &[(Vec<i64>, i64)],
        slots: usize,
        budget: i64,
        cur: &mut Vec<Vec<i64>>,
        leaf_filter: &dyn Fn(&[Vec<i64>]) -> bool,
        out: &mut Vec<Vec<Vec<i64>>>,
    ) {
        if slots == 0 {
            if leaf_filter(cur) {
                out.push(cur.clone());
            }
            return;
        }
        for (p, cost) in pool {
            if *cost <= budget {
                cur.push(p.clone());
                rec(pool, slots - 1, budget - cost, cur, leaf_filter, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    let mut cur = Vec::new();
    rec(pool, slots, budget, &mut cur, leaf_filter, &mut out);
    out
}

pub(crate) fn flat(parts: &[Vec<i64>]) -> Cell {
    Cell::Ints(parts.concat())
}

pub(crate) fn split(c: &Cell, parts: usize, d: usize) -> Vec<Vec<i64>> {
    match c {
        Cell::Ints(v) => {
            assert_eq!(v.len(), parts * d, "cell arity mismatch");
            (0..parts).map(|i| v[i * d..(i + 1) * d].to_vec()).collect()
        }
        _ => panic!("expected an integer tuple cell"),
    }
}

/// Shared cyclic-style operator formulas for tuple cells of arity q+1.
fn cyclic_face(d: usize, q: usize, i: usize, c: &Cell) -> Cell {
    let xs = split(c, q + 1, d);
    let mut out: Vec<Vec<i64>>;
    if i < q {
        out = Vec::with_capacity(q);
        for (j, x) in xs.iter().enumerate() {
            if j == i {
                out.push(add_vec(x, &xs[i + 1]));
            } else if j != i + 1 {
                out.push(x.clone());
            }
        }
    } else {
        // last face wraps: x_q merges into x_0
        out = Vec::with_capacity(q);
        out.push(add_vec(&xs[q], &xs[0]));
        out.extend(xs[1..q].iter().cloned());
    }
    flat(&out)
}

fn cyclic_degen(d: usize, q: usize, i: usize, c: &Cell) -> Cell {
    let xs = split(c, q + 1, d);
    let mut out = Vec::with_capacity(q + 2);
    out.extend(xs[..=i].iter().cloned());
    out.push(vec![0; d]);
    out.extend(xs[i + 1..].iter().cloned());
    flat(&out)
}

fn cyclic_t(d: usize, q: usize, c: &Cell) -> Cell {
    let xs = split(c, q + 1, d);
    let mut out = Vec::with_capacity(q + 1);
    out.push(xs[q].clone());
    out.extend(xs[..q].iter().cloned());
    flat(&out)
}

pub(crate) fn cyclic_w(m: &AffineMonoid, d: usize, q: usize, c: &Cell) -> Cell {
    let xs = split(c, q + 1, d);
    let mut out = Vec::with_capacity(q + 1);
    out.push(m.apply_involution(&xs[0]));
    for j in (1..=q).rev() {
        out.push(m.apply_involution(&xs[j]));
    }
    flat(&out)
}

/// Cyclic-style nerve of the monoid itself: degree-q cells are (q+1)-tuples
/// of monoid elements, with adjacent-sum faces (the last face wrapping),
/// zero-insertion degeneracies, rotation, and the reversal involution.
pub fn dihedral_nerve(
    m: &AffineMonoid,
    max_degree: usize,
    window: &WindowSpec,
) -> Result<TruncatedDihedralSet> {
    let d = m.ambient_rank;
    let oracle = m.membership();
    let cells: Vec<Vec<Cell>> = match window {
        WindowSpec::Weights(ws) => {
            let ws = orbit_close(m, ws);
            let mut per_degree = Vec::with_capacity(max_degree + 1);
            for q in 0..=max_degree {
                let mut cs = Vec::new();
                for wt in &ws {
                    let pool = weight_parts(m, wt)?;
                    for t in tuples_with_weight(&pool, &oracle, wt, q + 1)? {
                        cs.push(flat(&t));
                    }
                }
                per_degree.push(cs);
            }
            per_degree
        }
        WindowSpec::Budget(b) => {
            let pool: Vec<(Vec<i64>, i64)> =
                monoid_window(m, *b)?.into_iter().map(|x| { let n = norm_w(m, &x); (x, n) }).collect();
            (0..=max_degree)
                .map(|q| {
                    tuples_with_budget(&pool, q + 1, *b, &|_| true)
                        .iter()
                        .map(|t| flat(t))
                        .collect()
                })
                .collect()
        }
    };
    let face = |q: usize, i: usize, c: &Cell| cyclic_face(d, q, i, c);
    let degen = |q: usize, i: usize, c: &Cell| cyclic_degen(d, q, i, c);
    let w = |q: usize, c: &Cell| cyclic_w(m, d, q, c);
    let t = |q: usize, c: &Cell| cyclic_t(d, q, c);
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells,
        face: &face,
        degen: &degen,
        invol: Some(&w),
        cyclic: Some(&t),
        basepoint: None,
    })
}

/// Replete variant: cells are tuples over the group completion whose total
/// lies in the monoid, within a norm budget. Operators are those of the
/// cyclic-style nerve of the completion.
pub fn replete_nerve(
    m: &AffineMonoid,
    max_degree: usize,
    budget: i64,
) -> Result<TruncatedDihedralSet> {
    let d = m.ambient_rank;
    let oracle = m.membership();
    let gp = m.group_completion();
    let pool: Vec<(Vec<i64>, i64)> = box_lattice_points(&gp, d, budget)
        .into_iter()
        .filter(|x| norm_w(m, x) <= budget)
        .map(|x| { let n = norm_w(m, &x); (x, n) })
        .collect();
    let sum_in_m = |parts: &[Vec<i64>]| -> bool {
        let mut s = vec![0i64; d];
        for p in parts {
            s = add_vec(&s, p);
        }
        oracle.contains(&s).unwrap_or(false)
    };
    let cells: Vec<Vec<Cell>> = (0..=max_degree)
        .map(|q| {
            tuples_with_budget(&pool, q + 1, budget, &sum_in_m)
                .iter()
                .map(|t| flat(t))
                .collect()
        })
        .collect();
    let face = |q: usize, i: usize, c: &Cell| cyclic_face(d, q, i, c);
    let degen = |q: usize, i: usize, c: &Cell| cyclic_degen(d, q, i, c);
    let w = |q: usize, c: &Cell| cyclic_w(m, d, q, c);
    let t = |q: usize, c: &Cell| cyclic_t(d, q, c);
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells,
        face: &face,
        degen: &degen,
        invol: Some(&w),
        cyclic: Some(&t),
        basepoint: None,
    })
}

/// Bar-style nerve of a group object: degree-q cells are q-tuples, the outer
/// faces drop an entry, inner faces merge neighbours, and the involution
/// reverses with the group involution applied entrywise. No cyclic layer.
pub fn real_nerve(
    g: &AffineMonoid,
    max_degree: usize,
    budget: i64,
) -> Result<TruncatedDihedralSet> {
    if !g.is_group() {
        return Err(Error::NotAGroup);
    }
    let d = g.ambient_rank;
    let pool: Vec<(Vec<i64>, i64)> = monoid_window(g, budget)?
        .into_iter()
        .map(|x| { let n = norm_w(g, &x); (x, n) })
        .collect();
    let cells: Vec<Vec<Cell>> = (0..=max_degree)
        .map(|q| tuples_with_budget(&pool, q, budget, &|_| true).iter().map(|t| flat(t)).collect())
        .collect();
    let face = |q: usize, i: usize, c: &Cell| -> Cell {
        let xs = split(c, q, d);
        let out: Vec<Vec<i64>> = if i == 0 {
            xs[1..].to_vec()
        } else if i == q {
            xs[..q - 1].to_vec()
        } else {
            let mut v: Vec<Vec<i64>> = xs[..i - 1].to_vec();
            v.push(add_vec(&xs[i - 1], &xs[i]));
            v.extend(xs[i + 1..].iter().cloned());
            v
        };
        flat(&out)
    };
    let degen = |q: usize, i: usize, c: &Cell| -> Cell {
        let xs = split(c, q, d);
        let mut out: Vec<Vec<i64>> = xs[..i].to_vec();
        out.push(vec![0; d]);
        out.extend(xs[i..].iter().cloned());
        flat(&out)
    };
    let w = |q: usize, c: &Cell| -> Cell {
        // plain reversal; inversion enters only through the group involution
        let xs = split(c, q, d);
        let out: Vec<Vec<i64>> = xs.iter().rev().map(|x| g.apply_involution(x)).collect();
        flat(&out)
    };
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells,
        face: &face,
        degen: &degen,
        invol: Some(&w),
        cyclic: None,
        basepoint: None,
    })
}

/// Interval tensor: degree-q cells are (q+2)-tuples indexed by the simplices
/// of the 1-simplex, faces merge the two entries straddling the dropped
/// vertex, degeneracies insert a zero, and the involution reverses the tuple
/// with the monoid involution applied entrywise.
pub fn tensor_interval(
    m: &AffineMonoid,
    max_degree: usize,
    window: &WindowSpec,
) -> Result<TruncatedDihedralSet> {
    let d = m.ambient_rank;
    let oracle = m.membership();
    let cells: Vec<Vec<Cell>> = match window {
        WindowSpec::Weights(ws) => {
            let ws = orbit_close(m, ws);
            let mut per_degree = Vec::with_capacity(max_degree + 1);
            for q in 0..=max_degree {
                let mut cs = Vec::new();
                for wt in &ws {
                    let pool = weight_parts(m, wt)?;
                    for t in tuples_with_weight(&pool, &oracle, wt, q + 2)? {
                        cs.push(flat(&t));
                    }
                }
                per_degree.push(cs);
            }
            per_degree
        }
        WindowSpec::Budget(b) => {
            let pool: Vec<(Vec<i64>, i64)> =
                monoid_window(m, *b)?.into_iter().map(|x| { let n = norm_w(m, &x); (x, n) }).collect();
            (0..=max_degree)
                .map(|q| {
                    tuples_with_budget(&pool, q + 2, *b, &|_| true)
                        .iter()
                        .map(|t| flat(t))
                        .collect()
                })
                .collect()
        }
    };
    let face = |q: usize, i: usize, c: &Cell| -> Cell {
        // entries q-i and q+1-i straddle the dropped vertex
        let xs = split(c, q + 2, d);
        let k = q - i;
        let mut out: Vec<Vec<i64>> = xs[..k].to_vec();
        out.push(add_vec(&xs[k], &xs[k + 1]));
        out.extend(xs[k + 2..].iter().cloned());
        flat(&out)
    };
    let degen = |q: usize, i: usize, c: &Cell| -> Cell {
        let xs = split(c, q + 2, d);
        let k = q + 1 - i;
        let mut out: Vec<Vec<i64>> = xs[..k].to_vec();
        out.push(vec![0; d]);
        out.extend(xs[k..].iter().cloned());
        flat(&out)
    };
    let w = |q: usize, c: &Cell| -> Cell {
        let xs = split(c, q + 2, d);
        let out: Vec<Vec<i64>> = xs.iter().rev().map(|x| m.apply_involution(x)).collect();
        flat(&out)
    };
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells,
        face: &face,
        degen: &degen,
        invol: Some(&w),
        cyclic: None,
        basepoint: None,
    })
}

/// Resolution carrier: cells (x, g_0, ..., g_q) with x in the monoid and
/// g_i in the completion; faces delete an entry, degeneracies repeat one,
/// and the involution is (w(x), w(x)-w(g_q), ..., w(x)-w(g_0)). The window
/// demands that entries and their involution partners fit the budget, which
/// makes every operator total on the table.
pub fn repletion_resolution(
    m: &AffineMonoid,
    max_degree: usize,
    budget: i64,
) -> Result<TruncatedDihedralSet> {
    let d = m.ambient_rank;
    let gp = m.group_completion();
    let xs_pool: Vec<Vec<i64>> = monoid_window(m, budget)?;
    let g_pool: Vec<Vec<i64>> = box_lattice_points(&gp, d, 2 * budget)
        .into_iter()
        .filter(|g| l1(g) <= budget)
        .collect();
    let mut cells: Vec<Vec<Cell>> = Vec::with_capacity(max_degree + 1);
    for q in 0..=max_degree {
        let mut cs = Vec::new();
        for x in &xs_pool {
            let wx = m.apply_involution(x);
            let admissible: Vec<&Vec<i64>> =
                g_pool.iter().filter(|g| l1(&sub_vec(&wx, &m.apply_involution(g))) <= budget).collect();
            let mut stack: Vec<Vec<Vec<i64>>> = vec![Vec::new()];
            for _ in 0..=q {
                let mut next = Vec::new();
                for partial in &stack {
                    for g in &admissible {
                        let mut p = partial.clone();
                        p.push((*g).clone());
                        next.push(p);
                    }
                }
                stack = next;
            }
            for gs in stack {
                let mut v = x.clone();
                for g in gs {
                    v.extend(g);
                }
                cs.push(Cell::Ints(v));
            }
        }
        cells.push(cs);
    }
    let split_res = move |c: &Cell, q: usize| -> (Vec<i64>, Vec<Vec<i64>>) {
        let parts = split(c, q + 2, d);
        (parts[0].clone(), parts[1..].to_vec())
    };
    let face = move |q: usize, i: usize, c: &Cell| -> Cell {
        let (x, gs) = split_res(c, q);
        let mut v = x;
        for (j, g) in gs.iter().enumerate() {
            if j != i {
                v.extend(g.iter());
            }
        }
        Cell::Ints(v)
    };
    let degen = move |q: usize, i: usize, c: &Cell| -> Cell {
        let (x, gs) = split_res(c, q);
        let mut v = x;
        for (j, g) in gs.iter().enumerate() {
            v.extend(g.iter());
            if j == i {
                v.extend(g.iter());
            }
        }
        Cell::Ints(v)
    };
    let w = move |q: usize, c: &Cell| -> Cell {
        let (x, gs) = split_res(c, q);
        let wx = m.apply_involution(&x);
        let mut v = wx.clone();
        for g in gs.iter().rev() {
            v.extend(sub_vec(&wx, &m.apply_involution(g)));
        }
        Cell::Ints(v)
    };
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells,
        face: &face,
        degen: &degen,
        invol: Some(&w),
        cyclic: None,
        basepoint: None,
    })
}

/// Total-sum map to the constant set on the occurring totals. Returns the
/// target together with the map.
pub fn sum_map(
    x: &TruncatedDihedralSet,
    m: &AffineMonoid,
    arity_offset: usize,
) -> Result<(TruncatedDihedralSet, SimplicialMap)> {
    let d = m.ambient_rank;
    let total = |q: usize, c: &Cell| -> Cell {
        let parts = split(c, q + 1 + arity_offset, d);
        let mut s = vec![0i64; d];
        for p in &parts {
            s = add_vec(&s, p);
        }
        Cell::Ints(s)
    };
    let mut sums: BTreeSet<Vec<i64>> = BTreeSet::new();
    for q in 0..=x.max_degree {
        for c in &x.degrees[q].cells {
            if let Cell::Ints(s) = total(q, c) {
                sums.insert(s);
            }
        }
    }
    let cells: Vec<Cell> = sums.into_iter().map(Cell::Ints).collect();
    let wfn = |c: &Cell| -> Cell {
        match c {
            Cell::Ints(v) => Cell::Ints(m.apply_involution(v)),
            _ => unreachable!(),
        }
    };
    let target = constant_set(x.max_degree, cells, Some(&wfn), x.cyclic.is_some())?;
    let map = SimplicialMap::from_fn(x, &target, &|q, c| total(q, c));
    Ok((target, map))
}

/// The 2-gon circle model: two vertices, two non-degenerate edges, with the
/// involution swapping the edges with reversed parametrization. Degree-q
/// cells: 2 vertex cells plus, for each edge, the surjective degeneracies
/// parametrized by their transition position 1..q. Pointed at one vertex.
pub fn two_gon(max_degree: usize) -> TruncatedDihedralSet {
    let vertex = |j: i64| Cell::tag("v", vec![j]);
    let edge = |j: i64, t: i64| Cell::tag("e", vec![j, t]);
    let cells: Vec<Vec<Cell>> = (0..=max_degree)
        .map(|q| {
            let mut cs = vec![vertex(0), vertex(1)];
            for j in 0..2 {
                for t in 1..=q as i64 {
                    cs.push(edge(j, t));
                }
            }
            cs
        })
        .collect();
    let face = |q: usize, i: usize, c: &Cell| -> Cell {
        match c {
            Cell::Tag(name, v) if name == "v" => Cell::tag("v", v.clone()),
            Cell::Tag(name, v) if name == "e" => {
                // edge j runs from vertex j to vertex 1-j
                let (j, t) = (v[0], v[1]);
                let tp = if (i as i64) < t { t - 1 } else { t };
                if tp == 0 {
                    vertex(1 - j)
                } else if tp > q as i64 - 1 {
                    vertex(j)
                } else {
                    edge(j, tp)
                }
            }
            _ => unreachable!(),
        }
    };
    let degen = |_q: usize, i: usize, c: &Cell| -> Cell {
        match c {
            Cell::Tag(name, v) if name == "v" => Cell::tag("v", v.clone()),
            Cell::Tag(name, v) if name == "e" => {
                let (j, t) = (v[0], v[1]);
                edge(j, if (i as i64) < t { t + 1 } else { t })
            }
            _ => unreachable!(),
        }
    };
    let w = |q: usize, c: &Cell| -> Cell {
        match c {
            Cell::Tag(name, v) if name == "v" => Cell::tag("v", v.clone()),
            Cell::Tag(name, v) if name == "e" => edge(1 - v[0], q as i64 + 1 - v[1]),
            _ => unreachable!(),
        }
    };
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells,
        face: &face,
        degen: &degen,
        invol: Some(&w),
        cyclic: None,
        basepoint: Some(vec![vertex(0); max_degree + 1]),
    })
    .expect("2-gon construction is total")
}

/// The 1-simplex with the flip involution: degree-q cells are the
/// monotone maps to the 1-simplex, encoded by their number of ones.
pub fn interval_sigma(max_degree: usize) -> TruncatedDihedralSet {
    let cells: Vec<Vec<Cell>> = (0..=max_degree)
        .map(|q| (0..=q as i64 + 1).map(|k| Cell::tag("i", vec![k])).collect())
        .collect();
    let get = |c: &Cell| -> i64 {
        match c {
            Cell::Tag(_, v) => v[0],
            _ => unreachable!(),
        }
    };
    let face = |q: usize, i: usize, c: &Cell| -> Cell {
        let k = get(c);
        Cell::tag("i", vec![if k <= (q - i) as i64 { k } else { k - 1 }])
    };
    let degen = |q: usize, i: usize, c: &Cell| -> Cell {
        let k = get(c);
        Cell::tag("i", vec![if k <= (q - i) as i64 { k } else { k + 1 }])
    };
    let w = |q: usize, c: &Cell| Cell::tag("i", vec![q as i64 + 1 - get(c)]);
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells,
        face: &face,
        degen: &degen,
        invol: Some(&w),
        cyclic: None,
        basepoint: None,
    })
    .expect("interval construction is total")
}

/// Map collapsing every cell to the basepoint of the target.
pub fn collapse_to_point(
    src: &TruncatedDihedralSet,
    tgt: &TruncatedDihedralSet,
) -> SimplicialMap {
    let bp = tgt.basepoint.as_ref().expect("collapse target must be pointed");
    let maps = (0..=src.max_degree.min(tgt.max_degree))
        .map(|q| vec![Some(bp[q]); src.degrees[q].len()])
        .collect();
    SimplicialMap { maps }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat() -> AffineMonoid {
        AffineMonoid::free(1)
    }

    #[test]
    fn nerve_weight_one_degree_one() {
        let x = dihedral_nerve(&nat(), 3, &WindowSpec::Weights(vec![vec![1]])).unwrap();
        x.verify_relations().unwrap();
        let cells: BTreeSet<String> =
            x.degrees[1].cells.iter().map(|c| c.to_string()).collect();
        assert_eq!(cells, BTreeSet::from(["[0, 1]".to_string(), "[1, 0]".to_string()]));
        // rotation swaps them, involution fixes each
        let a = x.degrees[1].lookup(&Cell::Ints(vec![0, 1])).unwrap();
        let b = x.degrees[1].lookup(&Cell::Ints(vec![1, 0])).unwrap();
        assert_eq!(x.t(1, a), Some(b));
        assert_eq!(x.w(1, a), Some(a));
    }

    #[test]
    fn nerve_cell_counts_are_compositions() {
        // weight d, degree q: C(d+q, q) cells
        let binom = |n: i64, k: i64| -> i64 {
            let mut r = 1i64;
            for i in 0..k {
                r = r * (n - i) / (i + 1);
            }
            r
        };
        for d in 0..4i64 {
            let x = dihedral_nerve(&nat(), 4, &WindowSpec::Weights(vec![vec![d]])).unwrap();
            for q in 0..=4usize {
                assert_eq!(x.degrees[q].len() as i64, binom(d + q as i64, q as i64));
            }
        }
    }

    #[test]
    fn nerve_of_zero_monoid() {
        let z = AffineMonoid::zero(1);
        let x = dihedral_nerve(&z, 3, &WindowSpec::Weights(vec![vec![2]])).unwrap();
        assert!(x.degrees.iter().all(|t| t.is_empty()));
        let y = dihedral_nerve(&z, 3, &WindowSpec::Weights(vec![vec![0]])).unwrap();
        assert!(y.degrees.iter().all(|t| t.len() == 1));
    }

    #[test]
    fn replete_nerve_contains_negative_coordinates() {
        let x = replete_nerve(&nat(), 3, 2).unwrap();
        x.verify_relations().unwrap();
        assert!(x.degrees[1].lookup(&Cell::Ints(vec![-1, 1])).is_some());
        assert!(x.degrees[1].lookup(&Cell::Ints(vec![1, -1])).is_some());
        // sum must lie in the monoid
        assert!(x.degrees[1].lookup(&Cell::Ints(vec![-1, 0])).is_none());
    }

    #[test]
    fn replete_nerve_of_group_matches_dihedral() {
        let z = AffineMonoid::lattice(1);
        let a = replete_nerve(&z, 3, 2).unwrap();
        let b = dihedral_nerve(&z, 3, &WindowSpec::Budget(2)).unwrap();
        for q in 0..=3 {
            let sa: BTreeSet<String> = a.degrees[q].cells.iter().map(|c| c.to_string()).collect();
            let sb: BTreeSet<String> = b.degrees[q].cells.iter().map(|c| c.to_string()).collect();
            assert_eq!(sa, sb);
        }
    }

    #[test]
    fn real_nerve_of_integers() {
        // the integers with the negation involution: the sign-circle model
        let z = AffineMonoid::new(1, vec![vec![1], vec![-1]], Some(vec![vec![-1]])).unwrap();
        let x = real_nerve(&z, 3, 1).unwrap();
        x.verify_relations().unwrap();
        let cells: BTreeSet<String> = x.degrees[1].cells.iter().map(|c| c.to_string()).collect();
        assert_eq!(
            cells,
            BTreeSet::from(["[-1]".to_string(), "[0]".to_string(), "[1]".to_string()])
        );
        let a = x.degrees[1].lookup(&Cell::Ints(vec![1])).unwrap();
        let b = x.degrees[1].lookup(&Cell::Ints(vec![-1])).unwrap();
        assert_eq!(x.w(1, a), Some(b));
        assert!(real_nerve(&nat(), 2, 1).is_err());
    }

    #[test]
    fn tensor_interval_shape() {
        let zero = tensor_interval(&nat(), 4, &WindowSpec::Weights(vec![vec![0]])).unwrap();
        zero.verify_relations().unwrap();
        assert!(zero.degrees.iter().all(|t| t.len() == 1));

        let one = tensor_interval(&nat(), 4, &WindowSpec::Weights(vec![vec![1]])).unwrap();
        one.verify_relations().unwrap();
        assert_eq!(one.degrees[0].len(), 2);
        let a = one.degrees[0].lookup(&Cell::Ints(vec![1, 0])).unwrap();
        let b = one.degrees[0].lookup(&Cell::Ints(vec![0, 1])).unwrap();
        assert_eq!(one.w(0, a), Some(b));
    }

    #[test]
    fn sum_maps_are_simplicial() {
        let m = nat();
        let nerve = dihedral_nerve(&m, 4, &WindowSpec::Weights(vec![vec![2]])).unwrap();
        let (tgt, f) = sum_map(&nerve, &m, 0).unwrap();
        assert!(f.is_total());
        f.verify(&nerve, &tgt).unwrap();

        let tens = tensor_interval(&m, 4, &WindowSpec::Weights(vec![vec![2]])).unwrap();
        let (tgt2, f2) = sum_map(&tens, &m, 1).unwrap();
        assert!(f2.is_total());
        f2.verify(&tens, &tgt2).unwrap();

        let rep = replete_nerve(&m, 3, 2).unwrap();
        let (tgt3, f3) = sum_map(&rep, &m, 0).unwrap();
        assert!(f3.is_total());
        f3.verify(&rep, &tgt3).unwrap();
    }

    #[test]
    fn two_gon_structure() {
        let s = two_gon(7);
        s.verify_relations().unwrap();
        for q in 0..=7 {
            assert_eq!(s.degrees[q].len(), 2 + 2 * q);
        }
        // non-degenerate cells: the 2 vertices in degree 0, 2 edges in degree 1
        let flags = s.degenerate_flags();
        assert_eq!(flags[0].iter().filter(|f| !**f).count(), 2);
        assert_eq!(flags[1].iter().filter(|f| !**f).count(), 2);
        assert_eq!(flags[2].iter().filter(|f| !**f).count(), 0);
        // fixed cells: only the vertices in every degree
        let fp = s.fixed_points().unwrap();
        for q in 0..=7 {
            assert_eq!(fp.degrees[q].len(), 2);
        }
        // fixed points of the subdivision are two points
        let sdfp = s.segal_subdivide().unwrap().fixed_points().unwrap();
        sdfp.verify_relations().unwrap();
        for q in 0..=sdfp.max_degree {
            assert_eq!(sdfp.degrees[q].len(), 2);
        }
    }

    #[test]
    fn interval_subdivision_counts() {
        let i = interval_sigma(9);
        i.verify_relations().unwrap();
        let sd = i.segal_subdivide().unwrap();
        sd.verify_relations().unwrap();
        for q in 0..=sd.max_degree {
            assert_eq!(sd.degrees[q].len(), 2 * q + 3);
        }
        // one fixed cell per degree: the middle
        let fp = sd.fixed_points().unwrap();
        for q in 0..=fp.max_degree {
            assert_eq!(fp.degrees[q].len(), 1);
        }
    }

    #[test]
    fn resolution_involution_order_two() {
        let m = AffineMonoid::free2_swap();
        let x = repletion_resolution(&m, 2, 1).unwrap();
        x.verify_relations().unwrap();
        assert!(x.degrees[0].len() > 0);
    }
}
