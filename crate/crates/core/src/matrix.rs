use std::fmt;
use std::ops::Mul;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactmath::{GaussInt, QSymbol};

/// Dense square matrix over ℤ[i], row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GaussMatrix {
    order: usize,
    data: Vec<GaussInt>,
}

impl GaussMatrix {
    pub fn zeros(order: usize) -> Self {
        GaussMatrix { order, data: vec![GaussInt::ZERO; order * order] }
    }

    pub fn identity(order: usize) -> Self {
        let mut m = Self::zeros(order);
        for k in 0..order {
            m.set(k, k, GaussInt::ONE);
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<GaussInt>>) -> Result<Self> {
        let order = rows.len();
        let mut data = Vec::with_capacity(order * order);
        for (r, row) in rows.into_iter().enumerate() {
            if row.len() != order {
                return Err(Error::InvalidArgument(format!("row {r} has {} entries, expected {order}", row.len())));
            }
            data.extend(row);
        }
        Ok(GaussMatrix { order, data })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> GaussInt {
        self.data[r * self.order + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: GaussInt) {
        self.data[r * self.order + c] = v;
    }

    pub fn row(&self, r: usize) -> &[GaussInt] {
        &self.data[r * self.order..(r + 1) * self.order]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[GaussInt]> {
        self.data.chunks(self.order.max(1)).take(self.order)
    }

    pub fn entries(&self) -> &[GaussInt] {
        &self.data
    }

    pub fn map(&self, f: impl Fn(GaussInt) -> GaussInt) -> Self {
        GaussMatrix { order: self.order, data: self.data.iter().map(|&z| f(z)).collect() }
    }

    pub fn transpose(&self) -> Self {
        let n = self.order;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out.set(c, r, self.get(r, c));
            }
        }
        out
    }

    pub fn conj_transpose(&self) -> Self {
        self.transpose().map(GaussInt::conj)
    }

    /// Copy `block` into this matrix with its top-left corner at `(r0, c0)`.
    pub fn put_block(&mut self, r0: usize, c0: usize, block: &GaussMatrix) {
        for r in 0..block.order {
            for c in 0..block.order {
                self.set(r0 + r, c0 + c, block.get(r, c));
            }
        }
    }

    /// `self · conj(self)ᵀ`; row pairs are independent and computed in parallel.
    pub fn gram(&self) -> GaussMatrix {
        let n = self.order;
        let data: Vec<GaussInt> = (0..n)
            .into_par_iter()
            .flat_map_iter(|r| {
                let a = self.row(r);
                (0..n).map(move |c| {
                    let b = self.row(c);
                    a.iter().zip(b).map(|(&x, &y)| x * y.conj()).sum()
                })
            })
            .collect();
        GaussMatrix { order: n, data }
    }

    /// `true` iff the matrix equals `k·I`.
    pub fn is_scalar(&self, k: GaussInt) -> bool {
        let n = self.order;
        (0..n).all(|r| (0..n).all(|c| self.get(r, c) == if r == c { k } else { GaussInt::ZERO }))
    }

    /// Every entry is one of `1, -1, i, -i`.
    pub fn is_quaternary(&self) -> bool {
        self.data.iter().all(|z| z.is_unit())
    }

    pub fn is_binary(&self) -> bool {
        self.data.iter().all(|z| z.im == 0 && z.re.abs() == 1)
    }

    /// One row per line, entries space separated. Only defined for matrices
    /// with unit entries.
    pub fn to_text(&self) -> Result<String> {
        let mut out = String::new();
        for row in self.rows() {
            let line: Result<Vec<String>> = row
                .iter()
                .map(|&z| {
                    QSymbol::try_from_gauss(z)
                        .map(|s| s.to_string())
                        .ok_or_else(|| Error::InvalidArgument(format!("entry {z} is not a unit")))
                })
                .collect();
            out.push_str(&line?.join(" "));
            out.push('\n');
        }
        Ok(out)
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let rows = text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|l| l.split_whitespace().map(|t| t.parse::<QSymbol>().map(QSymbol::value)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(rows)
    }
}

impl Mul for &GaussMatrix {
    type Output = GaussMatrix;

    fn mul(self, rhs: &GaussMatrix) -> GaussMatrix {
        assert_eq!(self.order, rhs.order, "matrix orders differ");
        let n = self.order;
        let mut out = GaussMatrix::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..n {
                    let idx = r * n + c;
                    out.data[idx] += a * rhs.get(k, c);
                }
            }
        }
        out
    }
}

impl fmt::Display for GaussMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(|z| z.to_string()).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MatrixKind {
    Quaternary,
    Binary,
}

/// JSON form: `{"order": n, "kind": "quaternary"|"binary", "rows": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixRecord {
    pub order: usize,
    pub kind: MatrixKind,
    pub rows: Vec<Vec<GaussInt>>,
}

impl MatrixRecord {
    pub fn new(matrix: &GaussMatrix, kind: MatrixKind) -> Self {
        MatrixRecord { order: matrix.order(), kind, rows: matrix.rows().map(|r| r.to_vec()).collect() }
    }

    pub fn to_matrix(&self) -> Result<GaussMatrix> {
        let m = GaussMatrix::from_rows(self.rows.clone())?;
        if m.order() != self.order {
            return Err(Error::InvalidArgument(format!("declared order {} but found {} rows", self.order, m.order())));
        }
        Ok(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(re: i64, im: i64) -> GaussInt {
        GaussInt::new(re, im)
    }

    #[test]
    fn product_and_gram() {
        let m = GaussMatrix::from_rows(vec![vec![g(1, 0), g(0, 1)], vec![g(0, 1), g(1, 0)]]).unwrap();
        assert_eq!(m.gram(), &m * &m.conj_transpose());
        assert!(m.gram().is_scalar(g(2, 0)));
        assert_eq!(&m * &GaussMatrix::identity(2), m);
    }

    #[test]
    fn text_round_trip() {
        let m = GaussMatrix::from_rows(vec![vec![g(1, 0), g(0, -1)], vec![g(-1, 0), g(0, 1)]]).unwrap();
        let text = m.to_text().unwrap();
        assert_eq!(text, "1 -i\n-1 i\n");
        assert_eq!(GaussMatrix::from_text(&text).unwrap(), m);
        assert!(GaussMatrix::from_text("1 1\n1").is_err());
    }

    #[test]
    fn json_round_trip() {
        let m = GaussMatrix::from_rows(vec![vec![g(1, 0), g(1, 0)], vec![g(1, 0), g(-1, 0)]]).unwrap();
        let rec = MatrixRecord::new(&m, MatrixKind::Binary);
        let json = serde_json::to_string(&rec).unwrap();
        assert_eq!(json, r#"{"order":2,"kind":"binary","rows":[["1","1"],["1","-1"]]}"#);
        let back: MatrixRecord = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }
}
