//! Dense integer matrices over arbitrary-precision integers, with Hermite and
//! Smith normal forms tracking unimodular transforms and their inverses.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of `BigInt` entries, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

/// Pivot selection used by the Smith normal form elimination.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PivotStrategy {
    /// Pick the entry of minimal nonzero absolute value in the active block.
    MinAbs,
    /// Pick the first nonzero entry in the active block, scanning row by row.
    FirstNonzero,
}

impl IntMat {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMat { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = IntMat::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows_i64(rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let mut m = IntMat::zero(r, c);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), c, "ragged rows");
            for (j, v) in row.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_cols_i64(cols: &[Vec<i64>], dim: usize) -> Self {
        let mut m = IntMat::zero(dim, cols.len());
        for (j, col) in cols.iter().enumerate() {
            assert_eq!(col.len(), dim, "column length mismatch");
            for (i, v) in col.iter().enumerate() {
                m[(i, j)] = BigInt::from(*v);
            }
        }
        m
    }

    pub fn col_i64(&self, j: usize) -> Option<Vec<i64>> {
        (0..self.rows).map(|i| i64::try_from(&self[(i, j)]).ok()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|v| v.is_zero())
    }

    pub fn transpose(&self) -> IntMat {
        let mut t = IntMat::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMat) -> IntMat {
        assert_eq!(self.cols, other.rows, "shape mismatch in mul");
        let mut out = IntMat::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec_i64(&self, v: &[i64]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| &self[(i, j)] * BigInt::from(v[j])).sum())
            .collect()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ai = a * self.cols + j;
            let bi = b * self.cols + j;
            self.data.swap(ai, bi);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row a += c * row b
    pub fn add_row_multiple(&mut self, a: usize, b: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = &self[(b, j)] * c;
            self[(a, j)] += v;
        }
    }

    /// col a += c * col b
    pub fn add_col_multiple(&mut self, a: usize, b: usize, c: &BigInt) {
        if c.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = &self[(i, b)] * c;
            self[(i, a)] += v;
        }
    }

    pub fn negate_row(&mut self, a: usize) {
        for j in 0..self.cols {
            let v = -self[(a, j)].clone();
            self[(a, j)] = v;
        }
    }

    pub fn negate_col(&mut self, a: usize) {
        for i in 0..self.rows {
            let v = -self[(i, a)].clone();
            self[(i, a)] = v;
        }
    }
}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Result of a Smith normal form computation: `u * a * v = d` with `u`, `v`
/// unimodular. `u_inv` and `v_inv` are the tracked inverses, so
/// `u_inv * d * v_inv = a`.
#[derive(Clone, Debug)]
pub struct Snf {
    pub u: IntMat,
    pub u_inv: IntMat,
    pub d: IntMat,
    pub v: IntMat,
    pub v_inv: IntMat,
}

impl Snf {
    /// Diagonal entries of `d` that are nonzero, in divisibility order.
    pub fn invariant_factors(&self) -> Vec<BigInt> {
        let n = self.d.rows.min(self.d.cols);
        (0..n).map(|i| self.d[(i, i)].clone()).filter(|x| !x.is_zero()).collect()
    }

    pub fn rank(&self) -> usize {
        self.invariant_factors().len()
    }
}

fn find_pivot(m: &IntMat, from: usize, strategy: PivotStrategy) -> Option<(usize, usize)> {
    match strategy {
        PivotStrategy::FirstNonzero => {
            for i in from..m.rows {
                for j in from..m.cols {
                    if !m[(i, j)].is_zero() {
                        return Some((i, j));
                    }
                }
            }
            None
        }
        PivotStrategy::MinAbs => {
            let mut best: Option<(usize, usize)> = None;
            for i in from..m.rows {
                for j in from..m.cols {
                    let v = &m[(i, j)];
                    if v.is_zero() {
                        continue;
                    }
                    match best {
                        None => best = Some((i, j)),
                        Some((bi, bj)) => {
                            if v.abs() < m[(bi, bj)].abs() {
                                best = Some((i, j));
                            }
                        }
                    }
                }
            }
            best
        }
    }
}

/// Smith normal form with full transform tracking.
pub fn smith_normal_form(a: &IntMat, strategy: PivotStrategy) -> Snf {
    let mut d = a.clone();
    let mut u = IntMat::identity(a.rows);
    let mut u_inv = IntMat::identity(a.rows);
    let mut v = IntMat::identity(a.cols);
    let mut v_inv = IntMat::identity(a.cols);

    // Row op on d is mirrored on u; the inverse op (applied on the other
    // side) is mirrored on u_inv columns. Likewise for columns and v.
    let n = a.rows.min(a.cols);
    let mut k = 0;
    while k < n {
        let Some((pi, pj)) = find_pivot(&d, k, strategy) else { break };
        d.swap_rows(k, pi);
        u.swap_rows(k, pi);
        u_inv.swap_cols(k, pi);
        d.swap_cols(k, pj);
        v.swap_cols(k, pj);
        v_inv.swap_rows(k, pj);

        loop {
            // Re-center the pivot on the smallest nonzero entry of the pivot
            // cross before every pass. The strategy only chooses the initial
            // pivot; without this re-centering a large pivot makes quotients
            // feed their own growth and entry sizes explode.
            let mut best: Option<(usize, usize)> = None;
            for i in k..d.rows {
                if !d[(i, k)].is_zero() {
                    match best {
                        Some(b) if d[b].abs() <= d[(i, k)].abs() => {}
                        _ => best = Some((i, k)),
                    }
                }
            }
            for j in k..d.cols {
                if !d[(k, j)].is_zero() {
                    match best {
                        Some(b) if d[b].abs() <= d[(k, j)].abs() => {}
                        _ => best = Some((k, j)),
                    }
                }
            }
            let (bi, bj) = best.expect("pivot cross cannot be entirely zero");
            if bi != k {
                d.swap_rows(k, bi);
                u.swap_rows(k, bi);
                u_inv.swap_cols(k, bi);
            } else if bj != k {
                d.swap_cols(k, bj);
                v.swap_cols(k, bj);
                v_inv.swap_rows(k, bj);
            }
            // One floor-division pass down the column and along the row;
            // remainders left behind are strictly smaller than the pivot, so
            // the cross minimum decreases until both legs are clear.
            for i in (k + 1)..d.rows {
                if d[(i, k)].is_zero() {
                    continue;
                }
                let q = d[(i, k)].div_floor(&d[(k, k)]);
                let negq = -q.clone();
                d.add_row_multiple(i, k, &negq);
                u.add_row_multiple(i, k, &negq);
                u_inv.add_col_multiple(k, i, &q);
            }
            for j in (k + 1)..d.cols {
                if d[(k, j)].is_zero() {
                    continue;
                }
                let q = d[(k, j)].div_floor(&d[(k, k)]);
                let negq = -q.clone();
                d.add_col_multiple(j, k, &negq);
                v.add_col_multiple(j, k, &negq);
                v_inv.add_row_multiple(k, j, &q);
            }
            let col_clear = ((k + 1)..d.rows).all(|i| d[(i, k)].is_zero());
            let row_clear = ((k + 1)..d.cols).all(|j| d[(k, j)].is_zero());
            if col_clear && row_clear {
                break;
            }
        }
        if d[(k, k)].is_negative() {
            d.negate_row(k);
            u.negate_row(k);
            u_inv.negate_col(k);
        }
        k += 1;
    }

    // Fix the divisibility chain d[i] | d[i+1].
    let r = (0..n).take_while(|&i| !d[(i, i)].is_zero()).count();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..r.saturating_sub(1) {
            let (a_i, a_j) = (d[(i, i)].clone(), d[(i + 1, i + 1)].clone());
            if (&a_j % &a_i).is_zero() {
                continue;
            }
            changed = true;
            // col i += col i+1, creating entry a_j in position (i+1, i)
            d.add_col_multiple(i, i + 1, &BigInt::one());
            v.add_col_multiple(i, i + 1, &BigInt::one());
            v_inv.add_row_multiple(i + 1, i, &(-BigInt::one()));
            // clear the 2x2 block [[a_i, 0], [a_j, a_j]] back to diagonal
            loop {
                if d[(i + 1, i)].is_zero() && d[(i, i + 1)].is_zero() {
                    break;
                }
                if !d[(i + 1, i)].is_zero() {
                    let q = d[(i + 1, i)].div_floor(&d[(i, i)]);
                    let negq = -q.clone();
                    d.add_row_multiple(i + 1, i, &negq);
                    u.add_row_multiple(i + 1, i, &negq);
                    u_inv.add_col_multiple(i, i + 1, &q);
                    if !d[(i + 1, i)].is_zero() {
                        d.swap_rows(i, i + 1);
                        u.swap_rows(i, i + 1);
                        u_inv.swap_cols(i, i + 1);
                    }
                }
                if !d[(i, i + 1)].is_zero() {
                    let q = d[(i, i + 1)].div_floor(&d[(i, i)]);
                    let negq = -q.clone();
                    d.add_col_multiple(i + 1, i, &negq);
                    v.add_col_multiple(i + 1, i, &negq);
                    v_inv.add_row_multiple(i, i + 1, &q);
                    if !d[(i, i + 1)].is_zero() {
                        d.swap_cols(i, i + 1);
                        v.swap_cols(i, i + 1);
                        v_inv.swap_rows(i, i + 1);
                    }
                }
            }
            if d[(i, i)].is_negative() {
                d.negate_row(i);
                u.negate_row(i);
                u_inv.negate_col(i);
            }
            if d[(i + 1, i + 1)].is_negative() {
                d.negate_row(i + 1);
                u.negate_row(i + 1);
                u_inv.negate_col(i + 1);
            }
        }
    }

    Snf { u, u_inv, d, v, v_inv }
}

pub fn rank(a: &IntMat) -> usize {
    smith_normal_form(a, PivotStrategy::MinAbs).rank()
}

/// Column-style Hermite normal form of the lattice spanned by the columns of
/// `a`. Returns the matrix of basis columns (pivots positive, entries right of
/// a pivot reduced), with zero columns dropped.
pub fn column_hnf(a: &IntMat) -> IntMat {
    let mut m = a.clone();
    let mut pivot_row = 0;
    let mut pivot_col = 0;
    while pivot_row < m.rows && pivot_col < m.cols {
        // Find a column with nonzero entry in pivot_row among cols >= pivot_col,
        // and reduce all of them via gcd steps.
        loop {
            let mut best: Option<usize> = None;
            for j in pivot_col..m.cols {
                if !m[(pivot_row, j)].is_zero() {
                    best = match best {
                        None => Some(j),
                        Some(b) => {
                            if m[(pivot_row, j)].abs() < m[(pivot_row, b)].abs() {
                                Some(j)
                            } else {
                                Some(b)
                            }
                        }
                    };
                }
            }
            let Some(b) = best else { break };
            m.swap_cols(pivot_col, b);
            let mut all_clear = true;
            for j in (pivot_col + 1)..m.cols {
                if m[(pivot_row, j)].is_zero() {
                    continue;
                }
                let q = m[(pivot_row, j)].div_floor(&m[(pivot_row, pivot_col)]);
                let negq = -q;
                m.add_col_multiple(j, pivot_col, &negq);
                if !m[(pivot_row, j)].is_zero() {
                    all_clear = false;
                }
            }
            if all_clear {
                break;
            }
        }
        if m[(pivot_row, pivot_col)].is_zero() {
            pivot_row += 1;
            continue;
        }
        if m[(pivot_row, pivot_col)].is_negative() {
            m.negate_col(pivot_col);
        }
        // Reduce entries to the left of the pivot in this row (columns with
        // earlier pivots) so the form is canonical.
        for j in 0..pivot_col {
            let q = m[(pivot_row, j)].div_floor(&m[(pivot_row, pivot_col)]);
            if !q.is_zero() {
                let negq = -q;
                m.add_col_multiple(j, pivot_col, &negq);
            }
        }
        pivot_row += 1;
        pivot_col += 1;
    }
    // Drop zero columns.
    let keep: Vec<usize> = (0..m.cols).filter(|&j| (0..m.rows).any(|i| !m[(i, j)].is_zero())).collect();
    let mut out = IntMat::zero(m.rows, keep.len());
    for (jj, &j) in keep.iter().enumerate() {
        for i in 0..m.rows {
            out[(i, jj)] = m[(i, j)].clone();
        }
    }
    out
}

/// Solve `a x = b` over the integers. Returns one solution if any exists.
pub fn solve_integer(a: &IntMat, b: &[BigInt]) -> Option<Vec<BigInt>> {
    assert_eq!(a.rows, b.len());
    let snf = smith_normal_form(a, PivotStrategy::MinAbs);
    // u a v = d  =>  a (v y) = b with d y = u b
    let ub: Vec<BigInt> = (0..snf.u.rows)
        .map(|i| (0..snf.u.cols).map(|j| &snf.u[(i, j)] * &b[j]).sum())
        .collect();
    let n = a.cols;
    let mut y = vec![BigInt::zero(); n];
    for i in 0..a.rows {
        let di = if i < n { snf.d[(i, i)].clone() } else { BigInt::zero() };
        if di.is_zero() {
            if !ub[i].is_zero() {
                return None;
            }
        } else {
            let (q, r) = ub[i].div_rem(&di);
            if !r.is_zero() {
                return None;
            }
            y[i] = q;
        }
    }
    let x: Vec<BigInt> = (0..n)
        .map(|i| (0..n).map(|j| &snf.v[(i, j)] * &y[j]).sum())
        .collect();
    Some(x)
}

/// Does `x` lie in the lattice spanned by the columns of `basis`?
pub fn in_lattice(basis: &IntMat, x: &[i64]) -> bool {
    let b: Vec<BigInt> = x.iter().map(|&v| BigInt::from(v)).collect();
    solve_integer(basis, &b).is_some()
}

/// Saturation of the column lattice of `a` inside the ambient `Z^rows`:
/// basis for `(Q-span of columns) ∩ Z^rows`.
pub fn saturate_lattice(a: &IntMat) -> IntMat {
    if a.cols == 0 {
        return IntMat::zero(a.rows, 0);
    }
    let snf = smith_normal_form(a, PivotStrategy::MinAbs);
    let r = snf.rank();
    // a = u_inv d v_inv; Q-span of columns = Q-span of first r columns of u_inv.
    let mut out = IntMat::zero(a.rows, r);
    for j in 0..r {
        for i in 0..a.rows {
            out[(i, j)] = snf.u_inv[(i, j)].clone();
        }
    }
    out
}

/// Quotient projection data for `Z^d / sat(L)` where `L` is the column lattice
/// of `basis_sat` (must be saturated). Returns a matrix `P` with `d - r` rows
/// such that `P x` gives quotient coordinates, plus a section `S` (`d` by
/// `d - r`) with `P S = I`.
pub fn quotient_projection(basis_sat: &IntMat, dim: usize) -> (IntMat, IntMat) {
    if basis_sat.cols == 0 {
        return (IntMat::identity(dim), IntMat::identity(dim));
    }
    assert_eq!(basis_sat.rows, dim);
    let snf = smith_normal_form(basis_sat, PivotStrategy::MinAbs);
    let r = snf.rank();
    debug_assert!(snf.invariant_factors().iter().all(|f| f.is_one()), "basis not saturated");
    // u * basis = d(v_inv...): the last dim - r rows of u kill the lattice.
    let mut proj = IntMat::zero(dim - r, dim);
    for i in 0..(dim - r) {
        for j in 0..dim {
            proj[(i, j)] = snf.u[(r + i, j)].clone();
        }
    }
    let mut sect = IntMat::zero(dim, dim - r);
    for i in 0..dim {
        for j in 0..(dim - r) {
            sect[(i, j)] = snf.u_inv[(i, r + j)].clone();
        }
    }
    (proj, sect)
}

pub fn to_i64_vec(v: &[BigInt]) -> Option<Vec<i64>> {
    v.iter().map(|x| i64::try_from(x).ok()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMat {
        IntMat::from_rows_i64(rows)
    }

    #[test]
    fn snf_diag_2_3() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        for strat in [PivotStrategy::MinAbs, PivotStrategy::FirstNonzero] {
            let s = smith_normal_form(&a, strat);
            assert_eq!(s.d[(0, 0)], BigInt::from(1));
            assert_eq!(s.d[(1, 1)], BigInt::from(6));
            assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
            assert_eq!(s.u_inv.mul(&s.d).mul(&s.v_inv), a);
        }
    }

    #[test]
    fn snf_zero() {
        let a = IntMat::zero(3, 2);
        let s = smith_normal_form(&a, PivotStrategy::MinAbs);
        assert!(s.d.is_zero());
        assert_eq!(s.u, IntMat::identity(3));
        assert_eq!(s.v, IntMat::identity(2));
    }

    #[test]
    fn hnf_gcd() {
        let a = IntMat::from_cols_i64(&[vec![2], vec![3]], 1);
        let h = column_hnf(&a);
        assert_eq!(h.cols, 1);
        assert_eq!(h[(0, 0)], BigInt::from(1));
    }

    #[test]
    fn hnf_diagonal_line() {
        let a = IntMat::from_cols_i64(&[vec![1, 1]], 2);
        let h = column_hnf(&a);
        assert_eq!(h.cols, 1);
        assert_eq!(h[(0, 0)], BigInt::from(1));
        assert_eq!(h[(1, 0)], BigInt::from(1));
    }

    #[test]
    fn solve_and_lattice() {
        let a = m(&[vec![2, 0], vec![0, 3]]);
        assert!(solve_integer(&a, &[BigInt::from(4), BigInt::from(9)]).is_some());
        assert!(solve_integer(&a, &[BigInt::from(1), BigInt::from(0)]).is_none());
        let basis = IntMat::from_cols_i64(&[vec![2, 0], vec![0, 3]], 2);
        assert!(in_lattice(&basis, &[4, 3]));
        assert!(!in_lattice(&basis, &[1, 3]));
    }

    #[test]
    fn saturation_of_doubled_line() {
        let a = IntMat::from_cols_i64(&[vec![2, 2]], 2);
        let s = saturate_lattice(&a);
        assert_eq!(s.cols, 1);
        assert!(in_lattice(&s, &[1, 1]));
        assert!(!in_lattice(&s, &[1, 0]));
    }

    #[test]
    fn quotient_projection_kills_lattice() {
        let sat = IntMat::from_cols_i64(&[vec![1, 1]], 2);
        let (p, s) = quotient_projection(&sat, 2);
        assert_eq!(p.rows, 1);
        let img = p.mul_vec_i64(&[1, 1]);
        assert!(img[0].is_zero());
        assert_eq!(p.mul(&s), IntMat::identity(1));
    }
}
