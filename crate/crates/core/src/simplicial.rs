//! Truncated simplicial machinery: finite degree-by-degree cell tables with
//! face, degeneracy, cyclic, and involution operators. Operators are stored
//! as partial maps; an operator value is absent exactly when the formula
//! leaves the enumeration window. Relation checking, Segal subdivision,
//! involution fixed points, products, and cellwise maps live here.

use std::collections::HashMap;

use serde::Serialize;

use crate::error::{Error, Result};

/// A cell of a truncated set: an integer tuple, a pair (for products), or a
/// labelled tuple for hand-built models.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Cell {
    Ints(Vec<i64>),
    Pair(Box<Cell>, Box<Cell>),
    Tag(String, Vec<i64>),
}

impl Cell {
    pub fn ints(v: Vec<i64>) -> Cell {
        Cell::Ints(v)
    }

    pub fn tag(name: &str, v: Vec<i64>) -> Cell {
        Cell::Tag(name.to_string(), v)
    }

    pub fn pair(a: Cell, b: Cell) -> Cell {
        Cell::Pair(Box::new(a), Box::new(b))
    }
}

impl std::fmt::Display for Cell {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Cell::Ints(v) => write!(f, "{v:?}"),
            Cell::Pair(a, b) => write!(f, "({a}, {b})"),
            Cell::Tag(t, v) => write!(f, "{t}{v:?}"),
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct DegreeTable {
    pub cells: Vec<Cell>,
    index: HashMap<Cell, usize>,
}

impl DegreeTable {
    pub fn new(cells: Vec<Cell>) -> Self {
        let mut index = HashMap::with_capacity(cells.len());
        for (i, c) in cells.iter().enumerate() {
            let prev = index.insert(c.clone(), i);
            assert!(prev.is_none(), "duplicate cell {c}");
        }
        DegreeTable { cells, index }
    }

    pub fn lookup(&self, c: &Cell) -> Option<usize> {
        self.index.get(c).copied()
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }
}

/// Construction recipe: cell tables plus total formulas for the operators.
/// Partiality enters only through table membership of the computed cell.
pub struct SetSpec<'a> {
    pub max_degree: usize,
    pub cells: Vec<Vec<Cell>>,
    pub face: &'a dyn Fn(usize, usize, &Cell) -> Cell,
    pub degen: &'a dyn Fn(usize, usize, &Cell) -> Cell,
    pub invol: Option<&'a dyn Fn(usize, &Cell) -> Cell>,
    pub cyclic: Option<&'a dyn Fn(usize, &Cell) -> Cell>,
    pub basepoint: Option<Vec<Cell>>,
}

/// Degree-by-degree finite approximation of a (real, dihedral, or plain)
/// simplicial set. `invol` and `cyclic` are optional layers over the same
/// carrier.
#[derive(Clone, Debug)]
pub struct TruncatedDihedralSet {
    pub max_degree: usize,
    pub degrees: Vec<DegreeTable>,
    /// face[q][i][cell], defined for 1 <= q <= N, 0 <= i <= q.
    pub face: Vec<Vec<Vec<Option<usize>>>>,
    /// degen[q][i][cell]: s_i into degree q+1, for 0 <= q < N, 0 <= i <= q.
    pub degen: Vec<Vec<Vec<Option<usize>>>>,
    pub invol: Option<Vec<Vec<Option<usize>>>>,
    /// Whether the involution reverses operator indices (d_i w = w d_{q-i})
    /// or commutes with them plainly. Subdivision turns the first kind into
    /// the second.
    pub invol_flips: bool,
    pub cyclic: Option<Vec<Vec<Option<usize>>>>,
    pub basepoint: Option<Vec<usize>>,
}

impl TruncatedDihedralSet {
    pub fn from_spec(spec: SetSpec<'_>) -> Result<Self> {
        let n = spec.max_degree;
        if spec.cells.len() != n + 1 {
            return Err(Error::InvalidInput(format!(
                "expected {} degree tables, got {}",
                n + 1,
                spec.cells.len()
            )));
        }
        let degrees: Vec<DegreeTable> = spec.cells.into_iter().map(DegreeTable::new).collect();
        let mut face = vec![Vec::new(); n + 1];
        for q in 1..=n {
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let col: Vec<Option<usize>> = degrees[q]
                    .cells
                    .iter()
                    .map(|c| degrees[q - 1].lookup(&(spec.face)(q, i, c)))
                    .collect();
                per_i.push(col);
            }
            face[q] = per_i;
        }
        let mut degen = vec![Vec::new(); n + 1];
        for q in 0..n {
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let col: Vec<Option<usize>> = degrees[q]
                    .cells
                    .iter()
                    .map(|c| degrees[q + 1].lookup(&(spec.degen)(q, i, c)))
                    .collect();
                per_i.push(col);
            }
            degen[q] = per_i;
        }
        let invol = spec.invol.map(|wf| {
            (0..=n)
                .map(|q| {
                    degrees[q]
                        .cells
                        .iter()
                        .map(|c| degrees[q].lookup(&wf(q, c)))
                        .collect()
                })
                .collect()
        });
        let cyclic = spec.cyclic.map(|tf| {
            (0..=n)
                .map(|q| {
                    degrees[q]
                        .cells
                        .iter()
                        .map(|c| degrees[q].lookup(&tf(q, c)))
                        .collect()
                })
                .collect()
        });
        let basepoint = match spec.basepoint {
            None => None,
            Some(cells) => {
                if cells.len() != n + 1 {
                    return Err(Error::InvalidInput("basepoint list length mismatch".into()));
                }
                let mut idx = Vec::with_capacity(n + 1);
                for (q, c) in cells.iter().enumerate() {
                    idx.push(degrees[q].lookup(c).ok_or_else(|| {
                        Error::InvalidInput(format!("basepoint {c} missing in degree {q}"))
                    })?);
                }
                Some(idx)
            }
        };
        Ok(TruncatedDihedralSet {
            max_degree: n,
            degrees,
            face,
            degen,
            invol,
            invol_flips: true,
            cyclic,
            basepoint,
        })
    }

    pub fn cell(&self, q: usize, idx: usize) -> &Cell {
        &self.degrees[q].cells[idx]
    }

    pub fn d(&self, q: usize, i: usize, idx: usize) -> Option<usize> {
        self.face[q][i][idx]
    }

    pub fn s(&self, q: usize, i: usize, idx: usize) -> Option<usize> {
        self.degen[q][i][idx]
    }

    pub fn w(&self, q: usize, idx: usize) -> Option<usize> {
        self.invol.as_ref().and_then(|w| w[q][idx])
    }

    pub fn t(&self, q: usize, idx: usize) -> Option<usize> {
        self.cyclic.as_ref().and_then(|t| t[q][idx])
    }

    pub fn forget_involution(&self) -> Self {
        let mut x = self.clone();
        x.invol = None;
        x
    }

    pub fn forget_cyclic(&self) -> Self {
        let mut x = self.clone();
        x.cyclic = None;
        x
    }

    /// Per-degree flags marking cells hit by some degeneracy.
    pub fn degenerate_flags(&self) -> Vec<Vec<bool>> {
        let mut flags: Vec<Vec<bool>> =
            (0..=self.max_degree).map(|q| vec![false; self.degrees[q].len()]).collect();
        for q in 0..self.max_degree {
            for col in &self.degen[q] {
                for tgt in col.iter().flatten() {
                    flags[q + 1][*tgt] = true;
                }
            }
        }
        flags
    }

    fn rel_err(&self, q: usize, what: &str, idx: usize) -> String {
        format!("degree {q}, cell {}: {what}", self.cell(q, idx))
    }

    /// Check every crossed-simplicial relation on all tabulated cells. With
    /// partial operators a relation instance is checked only when both sides
    /// are fully defined.
    pub fn verify_relations(&self) -> std::result::Result<(), String> {
        let n = self.max_degree;
        let eq = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        };
        for q in 0..=n {
            for idx in 0..self.degrees[q].len() {
                // d_i d_j = d_{j-1} d_i for i < j
                if q >= 2 {
                    for j in 1..=q {
                        for i in 0..j {
                            let lhs = self.d(q, j, idx).and_then(|x| self.d(q - 1, i, x));
                            let rhs = self.d(q, i, idx).and_then(|x| self.d(q - 1, j - 1, x));
                            if !eq(lhs, rhs) {
                                return Err(self.rel_err(q, &format!("d{i} d{j} mismatch"), idx));
                            }
                        }
                    }
                }
                // s_i s_j = s_{j+1} s_i for i <= j
                if q + 2 <= n {
                    for j in 0..=q {
                        for i in 0..=j {
                            let lhs = self.s(q, j, idx).and_then(|x| self.s(q + 1, i, x));
                            let rhs = self.s(q, i, idx).and_then(|x| self.s(q + 1, j + 1, x));
                            if !eq(lhs, rhs) {
                                return Err(self.rel_err(q, &format!("s{i} s{j} mismatch"), idx));
                            }
                        }
                    }
                }
                // d_i s_j relations
                if q + 1 <= n {
                    for j in 0..=q {
                        for i in 0..=q + 1 {
                            let lhs = self.s(q, j, idx).and_then(|x| self.d(q + 1, i, x));
                            let rhs = if i < j {
                                if q >= 1 {
                                    self.d(q, i, idx).and_then(|x| self.s(q - 1, j - 1, x))
                                } else {
                                    None
                                }
                            } else if i == j || i == j + 1 {
                                Some(idx)
                            } else if q >= 1 {
                                self.d(q, i - 1, idx).and_then(|x| self.s(q - 1, j, x))
                            } else {
                                None
                            };
                            if !eq(lhs, rhs) {
                                return Err(self.rel_err(q, &format!("d{i} s{j} mismatch"), idx));
                            }
                        }
                    }
                }
                if self.invol.is_some() {
                    // w w = id
                    let ww = self.w(q, idx).and_then(|x| self.w(q, x));
                    if !eq(ww, Some(idx)) {
                        return Err(self.rel_err(q, "w not an involution", idx));
                    }
                    // d_i w = w d_{q-i} (index-flipping) or d_i w = w d_i
                    if q >= 1 {
                        for i in 0..=q {
                            let j = if self.invol_flips { q - i } else { i };
                            let lhs = self.w(q, idx).and_then(|x| self.d(q, i, x));
                            let rhs = self.d(q, j, idx).and_then(|x| self.w(q - 1, x));
                            if !eq(lhs, rhs) {
                                return Err(self.rel_err(q, &format!("d{i} w mismatch"), idx));
                            }
                        }
                    }
                    // s_i w = w s_{q-i} (index-flipping) or s_i w = w s_i
                    if q + 1 <= n {
                        for i in 0..=q {
                            let j = if self.invol_flips { q - i } else { i };
                            let lhs = self.w(q, idx).and_then(|x| self.s(q, i, x));
                            let rhs = self.s(q, j, idx).and_then(|x| self.w(q + 1, x));
                            if !eq(lhs, rhs) {
                                return Err(self.rel_err(q, &format!("s{i} w mismatch"), idx));
                            }
                        }
                    }
                }
                if self.cyclic.is_some() {
                    // t^{q+1} = id
                    let mut cur = Some(idx);
                    for _ in 0..=q {
                        cur = cur.and_then(|x| self.t(q, x));
                    }
                    if !eq(cur, Some(idx)) {
                        return Err(self.rel_err(q, "t order mismatch", idx));
                    }
                    if q >= 1 {
                        // d_0 t = d_q
                        let lhs = self.t(q, idx).and_then(|x| self.d(q, 0, x));
                        if !eq(lhs, self.d(q, q, idx)) {
                            return Err(self.rel_err(q, "d0 t mismatch", idx));
                        }
                        // d_i t = t d_{i-1}, i >= 1
                        for i in 1..=q {
                            let lhs = self.t(q, idx).and_then(|x| self.d(q, i, x));
                            let rhs = self.d(q, i - 1, idx).and_then(|x| self.t(q - 1, x));
                            if !eq(lhs, rhs) {
                                return Err(self.rel_err(q, &format!("d{i} t mismatch"), idx));
                            }
                        }
                    }
                    if q + 1 <= n {
                        // s_i t = t s_{i-1}, i >= 1
                        for i in 1..=q {
                            let lhs = self.t(q, idx).and_then(|x| self.s(q, i, x));
                            let rhs = self.s(q, i - 1, idx).and_then(|x| self.t(q + 1, x));
                            if !eq(lhs, rhs) {
                                return Err(self.rel_err(q, &format!("s{i} t mismatch"), idx));
                            }
                        }
                        // s_0 t = t t s_q
                        let lhs = self.t(q, idx).and_then(|x| self.s(q, 0, x));
                        let rhs = self
                            .s(q, q, idx)
                            .and_then(|x| self.t(q + 1, x))
                            .and_then(|x| self.t(q + 1, x));
                        if !eq(lhs, rhs) {
                            return Err(self.rel_err(q, "s0 t mismatch", idx));
                        }
                    }
                    if self.invol.is_some() {
                        // w t w t = id
                        let lhs = self
                            .t(q, idx)
                            .and_then(|x| self.w(q, x))
                            .and_then(|x| self.t(q, x))
                            .and_then(|x| self.w(q, x));
                        if !eq(lhs, Some(idx)) {
                            return Err(self.rel_err(q, "w t w t mismatch", idx));
                        }
                    }
                }
                // basepoint stability
                if let Some(bp) = &self.basepoint {
                    if idx == bp[q] {
                        if q >= 1 {
                            for i in 0..=q {
                                if !eq(self.d(q, i, idx), Some(bp[q - 1])) {
                                    return Err(self.rel_err(q, "basepoint face escapes", idx));
                                }
                            }
                        }
                        if q + 1 <= n {
                            for i in 0..=q {
                                if !eq(self.s(q, i, idx), Some(bp[q + 1])) {
                                    return Err(self.rel_err(q, "basepoint degeneracy escapes", idx));
                                }
                            }
                        }
                        if self.invol.is_some() && !eq(self.w(q, idx), Some(bp[q])) {
                            return Err(self.rel_err(q, "basepoint not involution fixed", idx));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Segal subdivision: degree q of the result is degree 2q+1 of the
    /// input, with faces d_i d_{2q+1-i}, degeneracies s_i s_{2q+1-i}, and
    /// the input involution. The cyclic layer is dropped.
    pub fn segal_subdivide(&self) -> Result<Self> {
        if self.max_degree == 0 {
            return Err(Error::InvalidInput(
                "subdivision requires truncation depth at least 1".into(),
            ));
        }
        let n = (self.max_degree - 1) / 2;
        let degrees: Vec<DegreeTable> =
            (0..=n).map(|q| DegreeTable::new(self.degrees[2 * q + 1].cells.clone())).collect();
        let mut face = vec![Vec::new(); n + 1];
        for q in 1..=n {
            let src = 2 * q + 1;
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let col: Vec<Option<usize>> = (0..degrees[q].len())
                    .map(|idx| {
                        self.d(src, src - i, idx).and_then(|x| self.d(src - 1, i, x))
                    })
                    .collect();
                per_i.push(col);
            }
            face[q] = per_i;
        }
        let mut degen = vec![Vec::new(); n + 1];
        for q in 0..n {
            let src = 2 * q + 1;
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let col: Vec<Option<usize>> = (0..degrees[q].len())
                    .map(|idx| {
                        self.s(src, src - i, idx).and_then(|x| self.s(src + 1, i, x))
                    })
                    .collect();
                per_i.push(col);
            }
            degen[q] = per_i;
        }
        let invol = self.invol.as_ref().map(|w| (0..=n).map(|q| w[2 * q + 1].clone()).collect());
        let basepoint = self.basepoint.as_ref().map(|bp| (0..=n).map(|q| bp[2 * q + 1]).collect());
        Ok(TruncatedDihedralSet {
            max_degree: n,
            degrees,
            face,
            degen,
            invol,
            invol_flips: false,
            cyclic: None,
            basepoint,
        })
    }

    /// Degreewise involution-fixed cells, with the simplicial structure
    /// restricted; an operator value escaping the fixed part becomes
    /// undefined.
    pub fn fixed_points(&self) -> Result<Self> {
        let w = self
            .invol
            .as_ref()
            .ok_or_else(|| Error::InvalidInput("fixed points need an involution".into()))?;
        let n = self.max_degree;
        let mut keep: Vec<Vec<usize>> = Vec::with_capacity(n + 1);
        let mut old_to_new: Vec<HashMap<usize, usize>> = Vec::with_capacity(n + 1);
        for q in 0..=n {
            let mut k = Vec::new();
            let mut m = HashMap::new();
            for idx in 0..self.degrees[q].len() {
                if w[q][idx] == Some(idx) {
                    m.insert(idx, k.len());
                    k.push(idx);
                }
            }
            keep.push(k);
            old_to_new.push(m);
        }
        let degrees: Vec<DegreeTable> = (0..=n)
            .map(|q| {
                DegreeTable::new(keep[q].iter().map(|&i| self.cell(q, i).clone()).collect())
            })
            .collect();
        let restrict = |q_to: usize, v: Option<usize>| -> Option<usize> {
            v.and_then(|x| old_to_new[q_to].get(&x).copied())
        };
        let mut face = vec![Vec::new(); n + 1];
        for q in 1..=n {
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                per_i.push(
                    keep[q]
                        .iter()
                        .map(|&idx| restrict(q - 1, self.d(q, i, idx)))
                        .collect::<Vec<_>>(),
                );
            }
            face[q] = per_i;
        }
        let mut degen = vec![Vec::new(); n + 1];
        for q in 0..n {
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                per_i.push(
                    keep[q]
                        .iter()
                        .map(|&idx| restrict(q + 1, self.s(q, i, idx)))
                        .collect::<Vec<_>>(),
                );
            }
            degen[q] = per_i;
        }
        let basepoint = match &self.basepoint {
            None => None,
            Some(bp) => {
                let mut out = Vec::with_capacity(n + 1);
                for q in 0..=n {
                    out.push(old_to_new[q].get(&bp[q]).copied().ok_or_else(|| {
                        Error::InvalidInput("basepoint is not involution fixed".into())
                    })?);
                }
                Some(out)
            }
        };
        Ok(TruncatedDihedralSet {
            max_degree: n,
            degrees,
            face,
            degen,
            invol: None,
            invol_flips: false,
            cyclic: None,
            basepoint,
        })
    }

    /// Degreewise cartesian product with diagonal operators. Both layers
    /// must agree in truncation depth; optional layers survive only when
    /// present on both sides.
    pub fn product(&self, other: &TruncatedDihedralSet) -> Result<Self> {
        if self.max_degree != other.max_degree {
            return Err(Error::DimensionMismatch {
                expected: self.max_degree,
                got: other.max_degree,
            });
        }
        let n = self.max_degree;
        let mut degrees = Vec::with_capacity(n + 1);
        // pair index = a * other_len + b
        for q in 0..=n {
            let mut cells = Vec::with_capacity(self.degrees[q].len() * other.degrees[q].len());
            for a in &self.degrees[q].cells {
                for b in &other.degrees[q].cells {
                    cells.push(Cell::pair(a.clone(), b.clone()));
                }
            }
            degrees.push(DegreeTable::new(cells));
        }
        let combine = |q_to: usize, a: Option<usize>, b: Option<usize>| -> Option<usize> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x * other.degrees[q_to].len() + y),
                _ => None,
            }
        };
        let mut face = vec![Vec::new(); n + 1];
        for q in 1..=n {
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let mut col = Vec::with_capacity(degrees[q].len());
                for a in 0..self.degrees[q].len() {
                    for b in 0..other.degrees[q].len() {
                        col.push(combine(q - 1, self.d(q, i, a), other.d(q, i, b)));
                    }
                }
                per_i.push(col);
            }
            face[q] = per_i;
        }
        let mut degen = vec![Vec::new(); n + 1];
        for q in 0..n {
            let mut per_i = Vec::with_capacity(q + 1);
            for i in 0..=q {
                let mut col = Vec::with_capacity(degrees[q].len());
                for a in 0..self.degrees[q].len() {
                    for b in 0..other.degrees[q].len() {
                        col.push(combine(q + 1, self.s(q, i, a), other.s(q, i, b)));
                    }
                }
                per_i.push(col);
            }
            degen[q] = per_i;
        }
        let invol = if self.invol.is_some() && other.invol.is_some() {
            let mut out = Vec::with_capacity(n + 1);
            for q in 0..=n {
                let mut col = Vec::with_capacity(degrees[q].len());
                for a in 0..self.degrees[q].len() {
                    for b in 0..other.degrees[q].len() {
                        col.push(combine(q, self.w(q, a), other.w(q, b)));
                    }
                }
                out.push(col);
            }
            Some(out)
        } else {
            None
        };
        let cyclic = if self.cyclic.is_some() && other.cyclic.is_some() {
            let mut out = Vec::with_capacity(n + 1);
            for q in 0..=n {
                let mut col = Vec::with_capacity(degrees[q].len());
                for a in 0..self.degrees[q].len() {
                    for b in 0..other.degrees[q].len() {
                        col.push(combine(q, self.t(q, a), other.t(q, b)));
                    }
                }
                out.push(col);
            }
            Some(out)
        } else {
            None
        };
        let basepoint = match (&self.basepoint, &other.basepoint) {
            (Some(a), Some(b)) => {
                Some((0..=n).map(|q| a[q] * other.degrees[q].len() + b[q]).collect())
            }
            _ => None,
        };
        Ok(TruncatedDihedralSet {
            max_degree: n,
            degrees,
            face,
            degen,
            invol,
            invol_flips: self.invol_flips,
            cyclic,
            basepoint,
        })
    }

    /// Debug/golden dump: cells and operator tables per degree.
    pub fn dump_json(&self) -> serde_json::Value {
        let degrees: Vec<serde_json::Value> = (0..=self.max_degree)
            .map(|q| {
                serde_json::json!({
                    "degree": q,
                    "cells": self.degrees[q].cells.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                    "face": if q >= 1 { serde_json::json!(self.face[q]) } else { serde_json::json!([]) },
                    "degen": if q < self.max_degree { serde_json::json!(self.degen[q]) } else { serde_json::json!([]) },
                    "invol": self.invol.as_ref().map(|w| serde_json::json!(w[q])),
                    "cyclic": self.cyclic.as_ref().map(|t| serde_json::json!(t[q])),
                })
            })
            .collect();
        serde_json::json!({
            "max_degree": self.max_degree,
            "basepoint": self.basepoint,
            "degrees": degrees,
        })
    }
}

/// The constant (dihedral) set on a finite set of cells, with an optional
/// involution permutation given by a cell map.
pub fn constant_set(
    max_degree: usize,
    cells: Vec<Cell>,
    invol: Option<&dyn Fn(&Cell) -> Cell>,
    with_cyclic: bool,
) -> Result<TruncatedDihedralSet> {
    let id = |_: usize, _: usize, c: &Cell| c.clone();
    let idw = invol.map(|f| move |_: usize, c: &Cell| f(c));
    let idt = |_: usize, c: &Cell| c.clone();
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells: vec![cells; max_degree + 1],
        face: &id,
        degen: &id,
        invol: match &idw {
            Some(f) => Some(f),
            None => None,
        },
        cyclic: if with_cyclic { Some(&idt) } else { None },
        basepoint: None,
    })
}

/// One-point set in every degree, pointed, with trivial involution and
/// cyclic structure.
pub fn point(max_degree: usize) -> TruncatedDihedralSet {
    let pt = Cell::tag("pt", vec![]);
    let id = |_: usize, _: usize, c: &Cell| c.clone();
    let idu = |_: usize, c: &Cell| c.clone();
    TruncatedDihedralSet::from_spec(SetSpec {
        max_degree,
        cells: vec![vec![pt.clone()]; max_degree + 1],
        face: &id,
        degen: &id,
        invol: Some(&idu),
        cyclic: Some(&idu),
        basepoint: Some(vec![pt; max_degree + 1]),
    })
    .expect("point construction is total")
}

/// Cellwise map between truncated sets, stored as partial index tables.
#[derive(Clone, Debug)]
pub struct SimplicialMap {
    pub maps: Vec<Vec<Option<usize>>>,
}

impl SimplicialMap {
    pub fn from_fn(
        src: &TruncatedDihedralSet,
        tgt: &TruncatedDihedralSet,
        f: &dyn Fn(usize, &Cell) -> Cell,
    ) -> Self {
        let maps = (0..=src.max_degree.min(tgt.max_degree))
            .map(|q| {
                src.degrees[q]
                    .cells
                    .iter()
                    .map(|c| tgt.degrees[q].lookup(&f(q, c)))
                    .collect()
            })
            .collect();
        SimplicialMap { maps }
    }

    pub fn apply(&self, q: usize, idx: usize) -> Option<usize> {
        self.maps[q][idx]
    }

    pub fn is_total(&self) -> bool {
        self.maps.iter().all(|col| col.iter().all(|v| v.is_some()))
    }

    pub fn injective_where_defined(&self) -> bool {
        for col in &self.maps {
            let mut seen = std::collections::HashSet::new();
            for v in col.iter().flatten() {
                if !seen.insert(*v) {
                    return false;
                }
            }
        }
        true
    }

    pub fn surjective_onto(&self, tgt: &TruncatedDihedralSet) -> bool {
        for (q, col) in self.maps.iter().enumerate() {
            let hit: std::collections::HashSet<usize> = col.iter().flatten().copied().collect();
            if hit.len() != tgt.degrees[q].len() {
                return false;
            }
        }
        true
    }

    /// Commutation with every operator present on both sides, under partial
    /// semantics: an instance is checked when both composites are defined.
    pub fn verify(
        &self,
        src: &TruncatedDihedralSet,
        tgt: &TruncatedDihedralSet,
    ) -> std::result::Result<(), String> {
        let n = self.maps.len() - 1;
        let eq = |a: Option<usize>, b: Option<usize>| match (a, b) {
            (Some(x), Some(y)) => x == y,
            _ => true,
        };
        for q in 0..=n {
            for idx in 0..src.degrees[q].len() {
                if q >= 1 {
                    for i in 0..=q {
                        let lhs = self.apply(q, idx).and_then(|x| tgt.d(q, i, x));
                        let rhs = src.d(q, i, idx).and_then(|x| self.apply(q - 1, x));
                        if !eq(lhs, rhs) {
                            return Err(format!(
                                "map does not commute with d{i} at degree {q}, cell {}",
                                src.cell(q, idx)
                            ));
                        }
                    }
                }
                if q + 1 <= n {
                    for i in 0..=q {
                        let lhs = self.apply(q, idx).and_then(|x| tgt.s(q, i, x));
                        let rhs = src.s(q, i, idx).and_then(|x| self.apply(q + 1, x));
                        if !eq(lhs, rhs) {
                            return Err(format!(
                                "map does not commute with s{i} at degree {q}, cell {}",
                                src.cell(q, idx)
                            ));
                        }
                    }
                }
                if src.invol.is_some() && tgt.invol.is_some() {
                    let lhs = self.apply(q, idx).and_then(|x| tgt.w(q, x));
                    let rhs = src.w(q, idx).and_then(|x| self.apply(q, x));
                    if !eq(lhs, rhs) {
                        return Err(format!(
                            "map does not commute with w at degree {q}, cell {}",
                            src.cell(q, idx)
                        ));
                    }
                }
                if src.cyclic.is_some() && tgt.cyclic.is_some() {
                    let lhs = self.apply(q, idx).and_then(|x| tgt.t(q, x));
                    let rhs = src.t(q, idx).and_then(|x| self.apply(q, x));
                    if !eq(lhs, rhs) {
                        return Err(format!(
                            "map does not commute with t at degree {q}, cell {}",
                            src.cell(q, idx)
                        ));
                    }
                }
            }
        }
        if let (Some(bs), Some(bt)) = (&src.basepoint, &tgt.basepoint) {
            for q in 0..=n {
                if let Some(img) = self.apply(q, bs[q]) {
                    if img != bt[q] {
                        return Err(format!("map moves the basepoint at degree {q}"));
                    }
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn point_is_consistent() {
        let p = point(5);
        p.verify_relations().unwrap();
        assert_eq!(p.degrees[3].len(), 1);
        let flags = p.degenerate_flags();
        assert!(!flags[0][0]);
        assert!(flags[1][0]);
    }

    #[test]
    fn product_with_point() {
        let p = point(4);
        let prod = p.product(&p).unwrap();
        prod.verify_relations().unwrap();
        assert_eq!(prod.degrees[2].len(), 1);
    }

    #[test]
    fn constant_two_element_swap() {
        let a = Cell::tag("a", vec![]);
        let b = Cell::tag("b", vec![]);
        let swap = |c: &Cell| -> Cell {
            if *c == Cell::tag("a", vec![]) { Cell::tag("b", vec![]) } else { Cell::tag("a", vec![]) }
        };
        let x = constant_set(3, vec![a, b], Some(&swap), true).unwrap();
        x.verify_relations().unwrap();
        let fp = x.fixed_points().unwrap();
        assert!(fp.degrees.iter().all(|t| t.is_empty()));
    }

    #[test]
    fn subdivision_of_point() {
        let p = point(7);
        let sd = p.segal_subdivide().unwrap();
        assert_eq!(sd.max_degree, 3);
        sd.verify_relations().unwrap();
        let fp = sd.fixed_points().unwrap();
        assert_eq!(fp.degrees[0].len(), 1);
        fp.verify_relations().unwrap();
    }
}
