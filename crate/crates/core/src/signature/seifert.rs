//! Seifert matrices of braid closures.
//!
//! Seifert's algorithm on a closed `n`-braid diagram gives `n` stacked disks
//! joined by one half-twisted band per letter. In column `i` (between
//! strands `i` and `i+1`) the bands sit at word positions `p_1 < … < p_m`;
//! each consecutive pair `(p_k, p_{k+1})` bounds a "brick" and the bricks form
//! a basis of first homology, so the matrix has size `c − n + 1` for a word
//! with `c` letters whose closure is connected.
//!
//! Linking rules, with `ε` the sign of a band:
//!
//! | pair                                     | `V(g, h)` | `V(h, g)` |
//! |------------------------------------------|-----------|-----------|
//! | `g = h` spanning bands `ε, ε'`            | `−(ε + ε')/2` |       |
//! | consecutive in a column, shared band `+` | `1`       | `0`       |
//! | consecutive in a column, shared band `−` | `0`       | `−1`      |
//! | `g` in column `i` spanning `(a, b)`, `h` in column `i+1` spanning `(c, d)`, `a < c < b < d` | `1` | `0` |
//! | same columns, `c < a < d < b`             | `−1`      | `0`       |
//!
//! All other entries vanish.

use crate::braid::BraidWord;
use crate::error::{Error, Result};

use super::modular::int_det_mod;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    entries: Vec<Vec<i64>>,
    source: BraidWord,
}

struct Brick {
    column: usize,
    start: usize,
    end: usize,
    start_sign: i64,
    end_sign: i64,
}

impl SeifertMatrix {
    pub fn from_braid(b: &BraidWord) -> Result<Self> {
        if !b.closes_to_knot() {
            return Err(Error::Unsupported(format!(
                "the closure of `{b}` has {} components; only knots are supported",
                b.closure_components()
            )));
        }
        let mut bricks: Vec<Brick> = Vec::new();
        for column in 1..b.strands() {
            let bands: Vec<(usize, i64)> = b
                .letters()
                .iter()
                .enumerate()
                .filter(|(_, l)| l.unsigned_abs() as usize == column)
                .map(|(pos, l)| (pos, l.signum() as i64))
                .collect();
            for pair in bands.windows(2) {
                bricks.push(Brick {
                    column,
                    start: pair[0].0,
                    end: pair[1].0,
                    start_sign: pair[0].1,
                    end_sign: pair[1].1,
                });
            }
        }
        // ordered along the word, so that the matrix is banded
        bricks.sort_by_key(|g| (g.start, g.column));

        let n = bricks.len();
        let mut v = vec![vec![0i64; n]; n];
        for (x, g) in bricks.iter().enumerate() {
            v[x][x] = -(g.start_sign + g.end_sign) / 2;
            if let Some(y) = bricks.iter().position(|h| h.column == g.column && h.start == g.end) {
                if g.end_sign > 0 {
                    v[x][y] = 1;
                } else {
                    v[y][x] = -1;
                }
            }
        }
        for (x, g) in bricks.iter().enumerate() {
            for (y, h) in bricks.iter().enumerate().filter(|(_, h)| h.column == g.column + 1) {
                let (a, b, c, d) = (g.start, g.end, h.start, h.end);
                if a < c && c < b && b < d {
                    v[x][y] = 1;
                } else if c < a && a < d && d < b {
                    v[x][y] = -1;
                }
            }
        }
        let m = SeifertMatrix { entries: v, source: b.clone() };
        m.validate()?;
        Ok(m)
    }

    fn validate(&self) -> Result<()> {
        let expected = self.source.len() + 1 - self.source.strands();
        if self.size() != expected {
            return Err(Error::Internal(format!(
                "Seifert matrix of size {} for a word with c - n + 1 = {expected}",
                self.size()
            )));
        }
        if int_det_mod(&self.symmetrized(), 2) != 1 {
            return Err(Error::Internal("det(V + Vᵀ) is even for a knot".into()));
        }
        Ok(())
    }

    pub fn size(&self) -> usize {
        self.entries.len()
    }

    pub fn entries(&self) -> &[Vec<i64>] {
        &self.entries
    }

    pub fn source(&self) -> &BraidWord {
        &self.source
    }

    /// `V + Vᵀ`.
    pub fn symmetrized(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[i][j] + self.entries[j][i]).collect())
            .collect()
    }

    /// `Vᵀ − V`.
    pub fn skew(&self) -> Vec<Vec<i64>> {
        let n = self.size();
        (0..n)
            .map(|i| (0..n).map(|j| self.entries[j][i] - self.entries[i][j]).collect())
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trefoil() {
        let v = SeifertMatrix::from_braid(&BraidWord::parse("1 1 1", None).unwrap()).unwrap();
        assert_eq!(v.entries(), &[vec![-1, 1], vec![0, -1]]);
        assert_eq!(v.symmetrized(), vec![vec![-2, 1], vec![1, -2]]);
    }

    #[test]
    fn sizes() {
        let unknot = SeifertMatrix::from_braid(&BraidWord::parse("1", None).unwrap()).unwrap();
        assert_eq!(unknot.size(), 0);
        let t34 = SeifertMatrix::from_braid(&BraidWord::torus_braid(3, 4).unwrap()).unwrap();
        assert_eq!(t34.size(), 6);
        let mixed = SeifertMatrix::from_braid(&BraidWord::parse("1 -2 1 -2 3 -3 3", None).unwrap()).unwrap();
        assert_eq!(mixed.size(), 4);
    }

    #[test]
    fn links_are_rejected() {
        let hopf = BraidWord::parse("1 1", None).unwrap();
        assert!(matches!(SeifertMatrix::from_braid(&hopf), Err(Error::Unsupported(_))));
    }

    #[test]
    fn skew_part_is_unimodular() {
        use super::super::modular::int_det_mod;
        let b = BraidWord::parse("1 -2 1 1 -2 -2 2 2 -1 -1", None).unwrap();
        let v = SeifertMatrix::from_braid(&b).unwrap();
        let d = int_det_mod(&v.skew(), 1_000_003);
        assert_eq!(d, 1);
    }
}
