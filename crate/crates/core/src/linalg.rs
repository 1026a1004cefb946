//! Exact dense linear algebra over the rationals.

use std::fmt;

use crate::error::{Error, Result};
use crate::exact::Rational;

#[derive(Clone, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::precondition("ragged matrix rows"));
        }
        Ok(Matrix {
            rows: rows.len(),
            cols,
            data: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| Rational::from(x)).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    /// Reduces in place to reduced row echelon form, pivoting only in the
    /// first `upto_col` columns; returns the pivot columns.
    fn rref(&mut self, upto_col: usize) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..upto_col {
            if row == self.rows {
                break;
            }
            let Some(p) = (row..self.rows).find(|&i| !self.get(i, col).is_zero()) else {
                continue;
            };
            self.swap_rows(p, row);
            let inv = self.get(row, col).recip().expect("pivot is non-zero");
            for j in col..self.cols {
                let v = self.get(row, j) * &inv;
                self.set(row, j, v);
            }
            for i in 0..self.rows {
                if i == row || self.get(i, col).is_zero() {
                    continue;
                }
                let factor = self.get(i, col).clone();
                for j in col..self.cols {
                    let v = self.get(i, j) - &factor * self.get(row, j);
                    self.set(i, j, v);
                }
            }
            pivots.push(col);
            row += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().rref(self.cols).len()
    }

    /// Determinant by fraction-exact elimination.
    pub fn determinant(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::precondition("determinant of a non-square matrix"));
        }
        let mut m = self.clone();
        let mut det = Rational::one();
        for col in 0..m.cols {
            let Some(p) = (col..m.rows).find(|&i| !m.get(i, col).is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                m.swap_rows(p, col);
                det = -det;
            }
            let pivot = m.get(col, col).clone();
            det *= &pivot;
            for i in col + 1..m.rows {
                if m.get(i, col).is_zero() {
                    continue;
                }
                let factor = m.get(i, col) / &pivot;
                for j in col..m.cols {
                    let v = m.get(i, j) - &factor * m.get(col, j);
                    m.set(i, j, v);
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.to_rows()).finish()
    }
}

/// One equation `Σ coeffs[j]·x_j = rhs`, labelled for error reporting.
#[derive(Clone, Debug)]
pub struct Equation {
    pub label: String,
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

/// Solves an over-determined system exactly. Succeeds only when the system
/// is consistent and the solution is unique; otherwise reports the first
/// contradicting equation or a basis of the free directions.
pub fn solve_exact(unknowns: &[String], equations: &[Equation]) -> Result<Vec<Rational>> {
    let n = unknowns.len();
    let mut aug = Matrix::zeros(equations.len(), n + 1);
    for (i, eq) in equations.iter().enumerate() {
        if eq.coeffs.len() != n {
            return Err(Error::precondition(format!(
                "equation {} has {} coefficients, expected {n}",
                eq.label,
                eq.coeffs.len()
            )));
        }
        for (j, c) in eq.coeffs.iter().enumerate() {
            aug.set(i, j, c.clone());
        }
        aug.set(i, n, eq.rhs.clone());
    }

    let inconsistent = {
        let mut probe = aug.clone();
        let pivots = probe.rref(n + 1);
        pivots.last() == Some(&n)
    };
    if inconsistent {
        let label = first_inconsistent(&aug, n, equations);
        return Err(Error::Inconsistent { equation: label });
    }

    let pivots = aug.rref(n);
    if pivots.len() < n {
        let free: Vec<usize> = (0..n).filter(|j| !pivots.contains(j)).collect();
        let directions = free
            .iter()
            .map(|&f| {
                let mut v: Vec<String> = Vec::new();
                for (row, &pc) in pivots.iter().enumerate() {
                    let c = -aug.get(row, f);
                    if !c.is_zero() {
                        v.push(format!("{}:{}", unknowns[pc], c));
                    }
                }
                v.push(format!("{}:1", unknowns[f]));
                format!("[{}]", v.join(", "))
            })
            .collect::<Vec<_>>()
            .join("; ");
        return Err(Error::RankDeficient { directions });
    }
    Ok((0..n).map(|i| aug.get(i, n).clone()).collect())
}

// Smallest prefix of the equations that is already inconsistent; its last
// member is reported.
fn first_inconsistent(aug: &Matrix, n: usize, equations: &[Equation]) -> String {
    for k in 1..=aug.rows() {
        let mut prefix = Matrix::from_rows(aug.to_rows()[..k].to_vec()).expect("rectangular");
        let pivots = prefix.rref(n + 1);
        if pivots.last() == Some(&n) {
            return equations[k - 1].label.clone();
        }
    }
    "<unknown>".to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eq(label: &str, coeffs: &[i64], rhs: i64) -> Equation {
        Equation {
            label: label.into(),
            coeffs: coeffs.iter().map(|&c| Rational::from(c)).collect(),
            rhs: rhs.into(),
        }
    }

    fn names(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("x{i}")).collect()
    }

    #[test]
    fn determinant_small() {
        let m = Matrix::from_i64(&[&[5, 0, 0], &[-1, 1, 3], &[0, -1, 2]]).unwrap();
        assert_eq!(m.determinant().unwrap(), Rational::from(25));
        let s = Matrix::from_i64(&[&[0, 1], &[1, 0]]).unwrap();
        assert_eq!(s.determinant().unwrap(), Rational::from(-1));
        let z = Matrix::from_i64(&[&[1, 2], &[2, 4]]).unwrap();
        assert!(z.determinant().unwrap().is_zero());
        assert_eq!(z.rank(), 1);
    }

    #[test]
    fn overdetermined_consistent() {
        let eqs = [eq("a", &[1, 1], 3), eq("b", &[1, -1], 1), eq("c", &[2, 0], 4)];
        let x = solve_exact(&names(2), &eqs).unwrap();
        assert_eq!(x, vec![Rational::from(2), Rational::from(1)]);
    }

    #[test]
    fn overdetermined_inconsistent_names_equation() {
        let eqs = [eq("a", &[1, 1], 3), eq("b", &[1, -1], 1), eq("c", &[2, 0], 5)];
        match solve_exact(&names(2), &eqs) {
            Err(Error::Inconsistent { equation }) => assert_eq!(equation, "c"),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn rank_deficient_reports_direction() {
        let eqs = [eq("a", &[1, 1, 0], 3), eq("b", &[0, 0, 1], 1)];
        match solve_exact(&names(3), &eqs) {
            Err(Error::RankDeficient { directions }) => {
                assert_eq!(directions, "[x0:-1, x1:1]")
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
