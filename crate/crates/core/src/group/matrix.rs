use std::fmt;

use crate::algebra::{same_spec, QuadElement, SpecRef};
use crate::error::{Error, Result};

/// Dense square matrix over `R_L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    dim: usize,
    spec: SpecRef,
    entries: Vec<QuadElement>,
}

impl Matrix {
    pub fn zero(spec: &SpecRef, dim: usize) -> Self {
        Matrix {
            dim,
            spec: spec.clone(),
            entries: vec![QuadElement::zero(spec); dim * dim],
        }
    }

    pub fn identity(spec: &SpecRef, dim: usize) -> Self {
        let mut m = Self::zero(spec, dim);
        for i in 0..dim {
            m.entries[i * dim + i] = QuadElement::one(spec);
        }
        m
    }

    pub fn from_rows(spec: &SpecRef, rows: Vec<Vec<QuadElement>>) -> Result<Self> {
        let dim = rows.len();
        let mut entries = Vec::with_capacity(dim * dim);
        for (i, row) in rows.into_iter().enumerate() {
            if row.len() != dim {
                return Err(Error::NotMember(format!(
                    "row {} has {} entries, expected {dim}",
                    i + 1,
                    row.len()
                )));
            }
            for x in row {
                if !same_spec(x.spec(), spec) {
                    return Err(Error::SpecMismatch(format!("entry over {}", x.spec())));
                }
                entries.push(x);
            }
        }
        Ok(Matrix {
            dim,
            spec: spec.clone(),
            entries,
        })
    }

    /// Diagonal matrix with the given entries.
    pub fn diagonal(spec: &SpecRef, diag: Vec<QuadElement>) -> Self {
        let dim = diag.len();
        let mut m = Self::zero(spec, dim);
        for (i, x) in diag.into_iter().enumerate() {
            m.entries[i * dim + i] = x;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn spec(&self) -> &SpecRef {
        &self.spec
    }

    pub fn get(&self, i: usize, j: usize) -> &QuadElement {
        &self.entries[i * self.dim + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: QuadElement) {
        self.entries[i * self.dim + j] = x;
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &QuadElement)> {
        self.entries
            .iter()
            .enumerate()
            .map(move |(k, x)| (k / self.dim, k % self.dim, x))
    }

    pub fn is_identity(&self) -> bool {
        self.entries().all(|(i, j, x)| {
            if i == j {
                x.is_one()
            } else {
                x.is_zero()
            }
        })
    }

    pub fn is_real(&self) -> bool {
        self.entries.iter().all(QuadElement::is_real)
    }

    pub fn map(&self, spec: &SpecRef, f: impl Fn(&QuadElement) -> QuadElement) -> Matrix {
        Matrix {
            dim: self.dim,
            spec: spec.clone(),
            entries: self.entries.iter().map(f).collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].clone();
            }
        }
        out
    }

    /// `X* = (x̄_ji)`.
    pub fn conj_transpose(&self) -> Matrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for j in 0..n {
                out.entries[j * n + i] = self.entries[i * n + j].conj();
            }
        }
        out
    }

    /// Column operation `col[dst] += col[src]·y` (right multiplication by `1 + y·E_src,dst`).
    pub(crate) fn add_col_multiple(&mut self, src: usize, dst: usize, y: &QuadElement) {
        let n = self.dim;
        for r in 0..n {
            let a = &self.entries[r * n + src];
            if a.is_zero() {
                continue;
            }
            let term = a * y;
            let e = &mut self.entries[r * n + dst];
            *e = &*e + &term;
        }
    }

    /// Row operation `row[dst] += y·row[src]` (left multiplication by `1 + y·E_dst,src`).
    pub(crate) fn add_row_multiple(&mut self, src: usize, dst: usize, y: &QuadElement) {
        let n = self.dim;
        for c in 0..n {
            let a = &self.entries[src * n + c];
            if a.is_zero() {
                continue;
            }
            let term = y * a;
            let e = &mut self.entries[dst * n + c];
            *e = &*e + &term;
        }
    }

    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        assert_eq!(self.dim, rhs.dim, "dimension mismatch");
        assert!(same_spec(&self.spec, &rhs.spec), "algebra mismatch");
        let n = self.dim;
        let mut out: Vec<Option<QuadElement>> = vec![None; n * n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i * n + k];
                if a.is_zero() {
                    continue;
                }
                let a_one = a.is_one();
                for j in 0..n {
                    let b = &rhs.entries[k * n + j];
                    if b.is_zero() {
                        continue;
                    }
                    let term = if a_one { b.clone() } else { a * b };
                    let slot = &mut out[i * n + j];
                    *slot = Some(match slot.take() {
                        Some(acc) => &acc + &term,
                        None => term,
                    });
                }
            }
        }
        let zero = QuadElement::zero(&self.spec);
        Matrix {
            dim: n,
            spec: self.spec.clone(),
            entries: out
                .into_iter()
                .map(|x| x.unwrap_or_else(|| zero.clone()))
                .collect(),
        }
    }

    pub fn sub(&self, rhs: &Matrix) -> Matrix {
        Matrix {
            dim: self.dim,
            spec: self.spec.clone(),
            entries: self
                .entries
                .iter()
                .zip(&rhs.entries)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// `H·X` for the block form `H = diag([[0,−1],[1,0]], …)`.
    pub(crate) fn form_left(&self) -> Matrix {
        let n = self.dim;
        let mut out = self.clone();
        for p in (0..n).step_by(2) {
            for j in 0..n {
                out.entries[p * n + j] = -&self.entries[(p + 1) * n + j];
                out.entries[(p + 1) * n + j] = self.entries[p * n + j].clone();
            }
        }
        out
    }

    /// `X·H`.
    pub(crate) fn form_right(&self) -> Matrix {
        let n = self.dim;
        let mut out = self.clone();
        for i in 0..n {
            for p in (0..n).step_by(2) {
                out.entries[i * n + p] = self.entries[i * n + p + 1].clone();
                out.entries[i * n + p + 1] = -&self.entries[i * n + p];
            }
        }
        out
    }

    /// Determinant over the commutative ring `R_L`: fraction-free Bareiss
    /// elimination with unit pivots, falling back to a division-free
    /// cofactor expansion when a column has no unit pivot.
    pub fn det(&self) -> QuadElement {
        self.det_bareiss().unwrap_or_else(|| self.det_cofactor())
    }

    pub(crate) fn det_bareiss(&self) -> Option<QuadElement> {
        let n = self.dim;
        if n == 0 {
            return Some(QuadElement::one(&self.spec));
        }
        let mut m: Vec<Vec<QuadElement>> = (0..n)
            .map(|i| self.entries[i * n..(i + 1) * n].to_vec())
            .collect();
        let mut negate = false;
        let mut prev_inv = QuadElement::one(&self.spec);
        for k in 0..n - 1 {
            if !m[k][k].is_unit() {
                let r = (k + 1..n).find(|&r| m[r][k].is_unit())?;
                m.swap(k, r);
                negate = !negate;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                    m[i][j] = &v * &prev_inv;
                }
            }
            prev_inv = m[k][k].invert().ok()?;
        }
        let d = m[n - 1][n - 1].clone();
        Some(if negate { -d } else { d })
    }

    /// Laplace expansion along rows, memoised over column subsets.
    pub(crate) fn det_cofactor(&self) -> QuadElement {
        let n = self.dim;
        assert!(n <= 20, "cofactor expansion limited to small matrices");
        let mut dp: Vec<Option<QuadElement>> = vec![None; 1 << n];
        dp[0] = Some(QuadElement::one(&self.spec));
        for mask in 0usize..(1 << n) {
            let Some(val) = dp[mask].clone() else { continue };
            if val.is_zero() {
                continue;
            }
            let row = mask.count_ones() as usize;
            if row == n {
                continue;
            }
            for c in 0..n {
                if mask & (1 << c) != 0 {
                    continue;
                }
                let a = &self.entries[row * n + c];
                if a.is_zero() {
                    continue;
                }
                // sign of placing column c after the already-used columns above it
                let above = (mask >> (c + 1)).count_ones();
                let mut term = a * &val;
                if above % 2 == 1 {
                    term = -term;
                }
                let slot = &mut dp[mask | (1 << c)];
                *slot = Some(match slot.take() {
                    Some(acc) => &acc + &term,
                    None => term,
                });
            }
        }
        dp[(1 << n) - 1]
            .take()
            .unwrap_or_else(|| QuadElement::zero(&self.spec))
    }

    /// Row-per-line text, whitespace-separated `re;im` entries.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.dim {
            let row: Vec<String> = (0..self.dim)
                .map(|j| crate::algebra::format_entry(self.get(i, j)))
                .collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }

    /// Inverse of [`Matrix::to_text`]. Blank lines and `#` comments are skipped.
    pub fn parse(spec: &SpecRef, text: &str) -> Result<Matrix> {
        let mut rows = Vec::new();
        for (ln, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut row = Vec::new();
            for (col, tok) in split_entries(line) {
                row.push(crate::algebra::parse_quad_at(spec, tok, ln + 1, col)?);
            }
            rows.push((ln + 1, row));
        }
        let dim = rows.len();
        if dim == 0 {
            return Err(Error::parse(1, 1, "empty matrix"));
        }
        for (ln, row) in &rows {
            if row.len() != dim {
                return Err(Error::parse(
                    *ln,
                    1,
                    format!("row has {} entries, expected {dim}", row.len()),
                ));
            }
        }
        Matrix::from_rows(spec, rows.into_iter().map(|(_, r)| r).collect())
    }
}

/// Splits a row on whitespace outside brackets, returning 1-based columns.
fn split_entries(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start: Option<usize> = None;
    let mut start_col = 0;
    for (col, (b, c)) in line.char_indices().enumerate() {
        match c {
            '[' => depth += 1,
            ']' => depth -= 1,
            _ => {}
        }
        if c.is_whitespace() && depth == 0 {
            if let Some(s) = start.take() {
                out.push((start_col, &line[s..b]));
            }
        } else if start.is_none() {
            start = Some(b);
            start_col = col + 1;
        }
    }
    if let Some(s) = start {
        out.push((start_col, &line[s..]));
    }
    out
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{int, rat, AlgebraElement, AlgebraSpec};

    fn q(spec: &SpecRef, a: i64, b: i64) -> QuadElement {
        QuadElement::from_rationals(spec, int(a), int(b))
    }

    #[test]
    fn det_agrees_between_methods() {
        let s = AlgebraSpec::rational(int(5)).unwrap();
        let m = Matrix::from_rows(
            &s,
            vec![
                vec![q(&s, 0, 1), q(&s, 2, 0), q(&s, 1, 1)],
                vec![q(&s, 3, -1), q(&s, 0, 0), q(&s, 1, 0)],
                vec![q(&s, 1, 0), q(&s, 4, 2), q(&s, -2, 1)],
            ],
        )
        .unwrap();
        assert_eq!(m.det_bareiss().unwrap(), m.det_cofactor());
    }

    #[test]
    fn det_with_nilpotent_column_uses_fallback() {
        let s = AlgebraSpec::new(vec![3], int(2)).unwrap();
        let t = QuadElement::real(AlgebraElement::t(&s, 0));
        let m = Matrix::diagonal(&s, vec![t.clone(), t.clone()]);
        assert!(m.det_bareiss().is_none());
        assert_eq!(m.det(), &t * &t);
        assert!(!m.det().is_zero());
    }

    #[test]
    fn det_2x2_by_hand() {
        let s = AlgebraSpec::rational(int(3)).unwrap();
        // [[a,b],[c,e]] with a=1+√3, b=2, c=1/2, e=√3 ; det = √3+3 − 1
        let a = QuadElement::from_rationals(&s, int(1), int(1));
        let b = q(&s, 2, 0);
        let c = QuadElement::from_rationals(&s, rat(1, 2), int(0));
        let e = q(&s, 0, 1);
        let m = Matrix::from_rows(&s, vec![vec![a, b], vec![c, e]]).unwrap();
        assert_eq!(m.det(), q(&s, 2, 1));
        assert_eq!(m.det_cofactor(), q(&s, 2, 1));
    }

    #[test]
    fn text_roundtrip_general_ring() {
        let s = AlgebraSpec::new(vec![1, 2], int(5)).unwrap();
        let mut m = Matrix::identity(&s, 2);
        let x = QuadElement::new(
            AlgebraElement::parse(&s, "[1/2 | 1 - t]").unwrap(),
            AlgebraElement::parse(&s, "[0 | 3t]").unwrap(),
        );
        m.set(0, 1, x);
        let text = m.to_text();
        assert_eq!(Matrix::parse(&s, &text).unwrap(), m);
    }

    #[test]
    fn text_roundtrip_over_q() {
        let s = AlgebraSpec::rational(int(5)).unwrap();
        let mut m = Matrix::identity(&s, 2);
        m.set(1, 0, QuadElement::from_rationals(&s, rat(-3, 2), int(1)));
        assert_eq!(m.to_text(), "1;0 0;0\n-3/2;1 1;0\n");
        assert_eq!(Matrix::parse(&s, &m.to_text()).unwrap(), m);
    }

    #[test]
    fn parse_reports_position() {
        let s = AlgebraSpec::rational(int(5)).unwrap();
        match Matrix::parse(&s, "1;0 0;0\n0;0 1;x\n") {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(line, 2);
                assert_eq!(column, 7);
            }
            other => panic!("unexpected {other:?}"),
        }
        assert!(Matrix::parse(&s, "1;0 0;0\n0;0\n").is_err());
    }
}
