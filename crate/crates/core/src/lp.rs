//! Exact rational linear algebra and linear-programming feasibility used by
//! the monoid layer: cone membership, strictly positive functionals on
//! pointed cones, and face validation.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

fn rat(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Phase-1 simplex with Bland's rule: is `{x >= 0 : a x = b}` nonempty?
/// Returns a feasible point if so. `a` is given as rows.
pub fn feasible_nonneg(a: &[Vec<Rat>], b: &[Rat]) -> Option<Vec<Rat>> {
    let m = a.len();
    let n = if m == 0 { 0 } else { a[0].len() };
    if m == 0 {
        return Some(vec![]);
    }
    // Tableau: columns 0..n are x, n..n+m artificials, last is rhs.
    let width = n + m + 1;
    let mut t: Vec<Vec<Rat>> = Vec::with_capacity(m);
    for i in 0..m {
        let mut row: Vec<Rat> = Vec::with_capacity(width);
        let flip = b[i].is_negative();
        for j in 0..n {
            row.push(if flip { -a[i][j].clone() } else { a[i][j].clone() });
        }
        for j in 0..m {
            row.push(if i == j { Rat::one() } else { Rat::zero() });
        }
        row.push(if flip { -b[i].clone() } else { b[i].clone() });
        t.push(row);
    }
    let mut basis: Vec<usize> = (n..n + m).collect();
    // Reduced cost row for minimizing the sum of artificials:
    // obj[j] = c_j - sum_i c_B[i] * t[i][j], with c_j = 1 on artificials.
    let mut obj = vec![Rat::zero(); width];
    for j in 0..width {
        let mut s = Rat::zero();
        for row in t.iter() {
            s += row[j].clone();
        }
        let c_j = if (n..n + m).contains(&j) { Rat::one() } else { Rat::zero() };
        obj[j] = c_j - s;
    }

    loop {
        // Bland: smallest-index column with negative reduced cost.
        let enter = (0..n + m).find(|&j| obj[j].is_negative());
        let Some(enter) = enter else { break };
        // Ratio test, Bland tie-break on basis variable index.
        let mut leave: Option<usize> = None;
        let mut best_ratio: Option<Rat> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = t[i][width - 1].clone() / t[i][enter].clone();
                let better = match &best_ratio {
                    None => true,
                    Some(r) => {
                        ratio < *r || (ratio == *r && basis[i] < basis[leave.unwrap()])
                    }
                };
                if better {
                    best_ratio = Some(ratio);
                    leave = Some(i);
                }
            }
        }
        let Some(leave) = leave else {
            // Unbounded in phase 1 cannot happen (objective bounded below by 0),
            // but guard anyway.
            return None;
        };
        // Pivot on (leave, enter).
        let piv = t[leave][enter].clone();
        for j in 0..width {
            t[leave][j] = t[leave][j].clone() / piv.clone();
        }
        for i in 0..m {
            if i != leave && !t[i][enter].is_zero() {
                let f = t[i][enter].clone();
                for j in 0..width {
                    let delta = f.clone() * t[leave][j].clone();
                    t[i][j] = t[i][j].clone() - delta;
                }
            }
        }
        if !obj[enter].is_zero() {
            let f = obj[enter].clone();
            for j in 0..width {
                let delta = f.clone() * t[leave][j].clone();
                obj[j] = obj[j].clone() - delta;
            }
        }
        basis[leave] = enter;
    }

    // Feasible iff all basic artificials have value zero.
    let mut x = vec![Rat::zero(); n];
    for i in 0..m {
        let val = t[i][width - 1].clone();
        if basis[i] >= n {
            if !val.is_zero() {
                return None;
            }
        } else {
            x[basis[i]] = val;
        }
    }
    Some(x)
}

/// Is `target` a nonnegative rational combination of `gens`?
pub fn in_cone(gens: &[Vec<i64>], target: &[i64]) -> bool {
    let d = target.len();
    if gens.is_empty() {
        return target.iter().all(|&v| v == 0);
    }
    let rows: Vec<Vec<Rat>> = (0..d)
        .map(|i| gens.iter().map(|g| rat(g[i])).collect())
        .collect();
    let b: Vec<Rat> = target.iter().map(|&v| rat(v)).collect();
    feasible_nonneg(&rows, &b).is_some()
}

/// Integer functional `lambda` with `lambda . v >= 1` for every `v` in `vs`.
/// Exists iff the vectors generate a pointed cone (no nonneg combination is 0
/// except trivially). Returns `None` when infeasible.
pub fn positive_functional(vs: &[Vec<i64>], dim: usize) -> Option<Vec<i64>> {
    if vs.is_empty() {
        return Some(vec![0; dim]);
    }
    // Variables: lambda+ (dim), lambda- (dim), slack per vector.
    let k = vs.len();
    let n = 2 * dim + k;
    let mut rows: Vec<Vec<Rat>> = Vec::with_capacity(k);
    let mut b = Vec::with_capacity(k);
    for (i, v) in vs.iter().enumerate() {
        let mut row = vec![Rat::zero(); n];
        for j in 0..dim {
            row[j] = rat(v[j]);
            row[dim + j] = -rat(v[j]);
        }
        row[2 * dim + i] = -Rat::one();
        rows.push(row);
        b.push(Rat::one());
    }
    let x = feasible_nonneg(&rows, &b)?;
    let lam_rat: Vec<Rat> = (0..dim).map(|j| x[j].clone() - x[dim + j].clone()).collect();
    // Scale to integers.
    let mut lcm = BigInt::one();
    for r in &lam_rat {
        let den = r.denom().clone();
        lcm = num_integer::lcm(lcm, den);
    }
    let lam: Vec<BigInt> = lam_rat.iter().map(|r| r.numer() * (&lcm / r.denom())).collect();
    lam.iter().map(|v| i64::try_from(v).ok()).collect()
}

/// Reduced row echelon form in place; returns pivot columns.
fn rref(rows: &mut Vec<Vec<Rat>>) -> Vec<usize> {
    let m = rows.len();
    let n = if m == 0 { 0 } else { rows[0].len() };
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..n {
        if r >= m {
            break;
        }
        let Some(p) = (r..m).find(|&i| !rows[i][c].is_zero()) else { continue };
        rows.swap(r, p);
        let piv = rows[r][c].clone();
        for j in 0..n {
            rows[r][j] = rows[r][j].clone() / piv.clone();
        }
        for i in 0..m {
            if i != r && !rows[i][c].is_zero() {
                let f = rows[i][c].clone();
                for j in 0..n {
                    let delta = f.clone() * rows[r][j].clone();
                    rows[i][j] = rows[i][j].clone() - delta;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

/// Basis of `{y in Q^dim : y . v = 0 for all v in vs}`.
pub fn orthogonal_complement(vs: &[Vec<i64>], dim: usize) -> Vec<Vec<Rat>> {
    let mut rows: Vec<Vec<Rat>> = vs
        .iter()
        .map(|v| v.iter().map(|&x| rat(x)).collect())
        .collect();
    let pivots = rref(&mut rows);
    let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for free in 0..dim {
        if pivot_set.contains(&free) {
            continue;
        }
        let mut y = vec![Rat::zero(); dim];
        y[free] = Rat::one();
        for (ri, &pc) in pivots.iter().enumerate() {
            y[pc] = -rows[ri][free].clone();
        }
        basis.push(y);
    }
    basis
}

/// Is `g` in the rational span of `vs`?
pub fn in_rational_span(vs: &[Vec<i64>], g: &[i64]) -> bool {
    orthogonal_complement(vs, g.len())
        .iter()
        .all(|y| {
            let mut s = Rat::zero();
            for (a, &b) in y.iter().zip(g.iter()) {
                s += a.clone() * rat(b);
            }
            s.is_zero()
        })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cone_membership_plane() {
        let gens = vec![vec![1, 0], vec![0, 1]];
        assert!(in_cone(&gens, &[3, 5]));
        assert!(!in_cone(&gens, &[-1, 0]));
        assert!(in_cone(&gens, &[0, 0]));
    }

    #[test]
    fn cone_membership_with_lineality() {
        let gens = vec![vec![1, 1], vec![-1, -1], vec![1, 0]];
        // cone is the halfplane x >= y
        assert!(in_cone(&gens, &[5, -7]));
        assert!(in_cone(&gens, &[-3, -3]));
        assert!(!in_cone(&gens, &[0, 1]));
    }

    #[test]
    fn positive_functional_pointed() {
        let vs = vec![vec![1, 0], vec![-1, 1]];
        let lam = positive_functional(&vs, 2).unwrap();
        for v in &vs {
            let dot: i64 = lam.iter().zip(v).map(|(a, b)| a * b).sum();
            assert!(dot >= 1);
        }
    }

    #[test]
    fn positive_functional_infeasible_on_line() {
        let vs = vec![vec![1], vec![-1]];
        assert!(positive_functional(&vs, 1).is_none());
    }

    #[test]
    fn complement_and_span() {
        let vs = vec![vec![1, 1, 0]];
        let comp = orthogonal_complement(&vs, 3);
        assert_eq!(comp.len(), 2);
        assert!(in_rational_span(&vs, &[2, 2, 0]));
        assert!(!in_rational_span(&vs, &[1, 0, 0]));
    }
}
