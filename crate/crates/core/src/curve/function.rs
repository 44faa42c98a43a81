use std::fmt;

use super::field::{trim, PrimeField};

/// A polynomial function `Σ c[i][j] xⁱyʲ` on an Artin–Schreier curve, in
/// reduced form (`0 ≤ j < p`).
///
/// Reduced forms are unique because `1, y, …, y^{p−1}` is a basis of the
/// coordinate ring over `F_p[x]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveFunction {
    p: u64,
    /// `rows[j]` is the coefficient of `yʲ`, a polynomial in `x`.
    rows: Vec<Vec<u64>>,
}

impl CurveFunction {
    pub fn zero(p: u64) -> Self {
        CurveFunction {
            p,
            rows: vec![Vec::new(); p as usize],
        }
    }

    pub fn constant(p: u64, c: u64) -> Self {
        Self::monomial(p, c, 0, 0)
    }

    /// `c·xⁱyʲ`. Panics if `j ≥ p`.
    pub fn monomial(p: u64, c: u64, i: usize, j: usize) -> Self {
        assert!((j as u64) < p, "y-degree {j} not reduced for p = {p}");
        let mut f = Self::zero(p);
        let c = c % p;
        if c != 0 {
            f.rows[j] = vec![0; i + 1];
            f.rows[j][i] = c;
        }
        f
    }

    pub fn x(p: u64) -> Self {
        Self::monomial(p, 1, 1, 0)
    }

    pub fn y(p: u64) -> Self {
        Self::monomial(p, 1, 0, 1)
    }

    /// Builds from `(coefficient, i, j)` terms; repeated monomials add up.
    pub fn from_terms(p: u64, terms: &[(u64, usize, usize)]) -> Self {
        terms
            .iter()
            .fold(Self::zero(p), |acc, &(c, i, j)| acc.add(&Self::monomial(p, c, i, j)))
    }

    pub(crate) fn from_rows(p: u64, mut rows: Vec<Vec<u64>>) -> Self {
        rows.resize(p as usize, Vec::new());
        for r in rows.iter_mut() {
            trim(r);
        }
        CurveFunction { p, rows }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// Nonzero terms as `(coefficient, i, j)`, ordered by `(j, i)`.
    pub fn terms(&self) -> impl Iterator<Item = (u64, usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(j, row)| {
            row.iter()
                .enumerate()
                .filter(|(_, &c)| c != 0)
                .map(move |(i, &c)| (c, i, j))
        })
    }

    /// Whether the function is a constant (possibly zero).
    pub fn is_constant(&self) -> bool {
        self.terms().all(|(_, i, j)| i == 0 && j == 0)
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.p, other.p);
        let fp = PrimeField::new(self.p);
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| {
                let n = a.len().max(b.len());
                (0..n)
                    .map(|i| fp.add(*a.get(i).unwrap_or(&0), *b.get(i).unwrap_or(&0)))
                    .collect()
            })
            .collect();
        Self::from_rows(self.p, rows)
    }

    pub fn scale(&self, c: u64) -> Self {
        let fp = PrimeField::new(self.p);
        let c = c % self.p;
        let rows = self
            .rows
            .iter()
            .map(|r| r.iter().map(|&v| fp.mul(c, v)).collect())
            .collect();
        Self::from_rows(self.p, rows)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(self.p - 1))
    }

    /// `∂/∂x` of the representative.
    pub fn partial_x(&self) -> Self {
        let fp = PrimeField::new(self.p);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .skip(1)
                    .map(|(i, &c)| fp.mul(fp.from_u64(i as u64), c))
                    .collect()
            })
            .collect();
        Self::from_rows(self.p, rows)
    }

    /// `∂/∂y` of the representative.
    pub fn partial_y(&self) -> Self {
        let fp = PrimeField::new(self.p);
        let mut rows = vec![Vec::new(); self.p as usize];
        for j in 1..self.rows.len() {
            rows[j - 1] = self.rows[j].iter().map(|&c| fp.mul(j as u64 % self.p, c)).collect();
        }
        Self::from_rows(self.p, rows)
    }

    /// Multiplies by a polynomial in `x` alone (keeps the form reduced).
    pub fn mul_x_poly(&self, q: &[u64]) -> Self {
        let fp = PrimeField::new(self.p);
        let rows = self
            .rows
            .iter()
            .map(|r| {
                if r.is_empty() || q.is_empty() {
                    return Vec::new();
                }
                let mut out = vec![0u64; r.len() + q.len() - 1];
                for (i, &a) in r.iter().enumerate() {
                    for (k, &b) in q.iter().enumerate() {
                        out[i + k] = fp.add(out[i + k], fp.mul(a, b));
                    }
                }
                out
            })
            .collect();
        Self::from_rows(self.p, rows)
    }

    /// The Galois conjugate under `y ↦ y + c`.
    pub fn shift_y(&self, c: u64) -> Self {
        let fp = PrimeField::new(self.p);
        let c = c % self.p;
        let n = self.p as usize;
        // binomial coefficients mod p
        let mut binom = vec![vec![0u64; n]; n];
        for a in 0..n {
            binom[a][0] = 1;
            for b in 1..=a {
                binom[a][b] = fp.add(binom[a - 1][b - 1], if b < a { binom[a - 1][b] } else { 0 });
            }
        }
        let mut rows = vec![Vec::new(); n];
        for (j, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            // (y + c)^j = Σ_b C(j,b) c^{j-b} y^b
            for (b, slot) in rows.iter_mut().enumerate().take(j + 1) {
                let w = fp.mul(binom[j][b], fp.pow(c, (j - b) as u64));
                if w == 0 {
                    continue;
                }
                slot.resize(slot.len().max(row.len()), 0);
                for (i, &v) in row.iter().enumerate() {
                    slot[i] = fp.add(slot[i], fp.mul(w, v));
                }
            }
        }
        Self::from_rows(self.p, rows)
    }
}

impl fmt::Display for CurveFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms: Vec<(u64, usize, usize)> = self.terms().collect();
        if terms.is_empty() {
            return f.write_str("0");
        }
        // descending x-degree, then y-degree
        terms.sort_by_key(|&(_, i, j)| std::cmp::Reverse((i, j)));
        let parts: Vec<String> = terms
            .into_iter()
            .map(|(c, i, j)| {
                let mut factors = Vec::new();
                if c != 1 || (i == 0 && j == 0) {
                    factors.push(c.to_string());
                }
                match i {
                    0 => {}
                    1 => factors.push("x".into()),
                    _ => factors.push(format!("x^{i}")),
                }
                match j {
                    0 => {}
                    1 => factors.push("y".into()),
                    _ => factors.push(format!("y^{j}")),
                }
                factors.join("*")
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}
