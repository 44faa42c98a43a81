//! Point-enumeration oracle for the affine zero divisor of a polynomial
//! function.
//!
//! Every affine point `(a, b)` with coordinates in `F_{p^e}`, `e ≤ bound`, is
//! visited once per geometric point; at each, `x − a` is a uniformizer (the
//! curve is étale over the `x`-line away from infinity) and `y` expands as a
//! power series `b + u(t)` with `uᵖ − u = f(a + t) − f(a)`. Summing vanishing
//! orders over geometric points whose field of definition is exactly
//! `F_{p^e}` counts each closed point of degree `e` with weight `e`.

use rayon::prelude::*;
use serde::Serialize;

use super::field::{ExtElem, ExtField};
use super::{ArtinSchreierCurve, CurveError, CurveFunction};

/// Outcome of the enumeration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BruteForceReport {
    /// Sum of local degrees found over extensions up to the bound.
    pub degree: u64,
    /// Degree of the zero divisor, from `deg N(h)`.
    pub expected: u64,
    /// Whether every zero was found, i.e. `degree == expected`.
    pub conclusive: bool,
    /// `(e, degree found at points of exact field F_{p^e})`.
    pub by_extension: Vec<(usize, u64)>,
}

/// Enumerates zeros of `h` over `F_{p^e}` for `e ≤ field_ext_bound`.
pub fn brute_force_divisor_degree(
    curve: &ArtinSchreierCurve,
    h: &CurveFunction,
    field_ext_bound: usize,
) -> Result<BruteForceReport, CurveError> {
    if h.is_zero() {
        return Err(CurveError::ZeroFunction);
    }
    if field_ext_bound == 0 {
        return Err(CurveError::ZeroExtensionBound);
    }
    let norm = curve.norm(h)?;
    let expected = (norm.len() - 1) as u64;
    let mut by_extension = Vec::with_capacity(field_ext_bound);
    let mut degree = 0;
    for e in 1..=field_ext_bound {
        let found = if degree == expected {
            0
        } else {
            degree_over_exact_field(curve, h, e, expected)
        };
        degree += found;
        by_extension.push((e, found));
    }
    Ok(BruteForceReport {
        degree,
        expected,
        conclusive: degree == expected,
        by_extension,
    })
}

fn degree_over_exact_field(curve: &ArtinSchreierCurve, h: &CurveFunction, e: usize, cap: u64) -> u64 {
    let field = ExtField::new(curve.p(), e);
    let elems = field.elements();
    // b ↦ bᵖ − b is additive with kernel F_p; bucket its fibres
    let mut fibres: std::collections::HashMap<ExtElem, Vec<ExtElem>> = Default::default();
    for b in &elems {
        let v = field.sub(&field.frobenius(b), b);
        fibres.entry(v).or_default().push(b.clone());
    }
    let proper: Vec<usize> = (1..e).filter(|d| e.is_multiple_of(*d)).collect();
    elems
        .par_iter()
        .map(|a| {
            let fa = field.eval_prime_poly(curve.f(), a);
            let Some(bs) = fibres.get(&fa) else { return 0 };
            bs.iter()
                .filter(|b| {
                    !proper
                        .iter()
                        .any(|&d| field.in_subfield(a, d) && field.in_subfield(b, d))
                })
                .map(|b| local_order(curve, &field, h, a, b, cap))
                .sum::<u64>()
        })
        .sum()
}

/// Truncated power series in `t` over an extension field.
struct Series<'a> {
    field: &'a ExtField,
    n: usize,
}

impl Series<'_> {
    fn zero(&self) -> Vec<ExtElem> {
        vec![self.field.zero(); self.n]
    }

    fn add(&self, a: &[ExtElem], b: &[ExtElem]) -> Vec<ExtElem> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    fn mul(&self, a: &[ExtElem], b: &[ExtElem]) -> Vec<ExtElem> {
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if self.field.is_zero(x) {
                continue;
            }
            for (k, y) in b.iter().take(self.n - i).enumerate() {
                out[i + k] = self.field.add(&out[i + k], &self.field.mul(x, y));
            }
        }
        out
    }

    /// `s(t)ᵖ = Σ cᵢᵖ t^{ip}`.
    fn frobenius(&self, s: &[ExtElem], p: usize) -> Vec<ExtElem> {
        let mut out = self.zero();
        for (i, c) in s.iter().enumerate() {
            if i * p >= self.n {
                break;
            }
            out[i * p] = self.field.frobenius(c);
        }
        out
    }

    /// A prime-field polynomial evaluated at `a + t`.
    fn compose_shift(&self, poly: &[u64], a: &ExtElem) -> Vec<ExtElem> {
        let mut acc = self.zero();
        for &c in poly.iter().rev() {
            // acc·(a + t), shifting from the top so each slot is read first
            for i in (0..self.n).rev() {
                let mut v = self.field.mul(&acc[i], a);
                if i > 0 {
                    v = self.field.add(&v, &acc[i - 1]);
                }
                acc[i] = v;
            }
            acc[0] = self.field.add(&acc[0], &self.field.embed(c));
        }
        acc
    }
}

/// Vanishing order of `h` at `(a, b)`, with precision doubled until a nonzero
/// coefficient appears. The order never exceeds the total zero degree `cap`.
fn local_order(
    curve: &ArtinSchreierCurve,
    field: &ExtField,
    h: &CurveFunction,
    a: &ExtElem,
    b: &ExtElem,
    cap: u64,
) -> u64 {
    if !field.is_zero(&evaluate(field, h, a, b)) {
        return 0;
    }
    let mut n = 8usize;
    loop {
        let s = Series { field, n };
        let y = y_expansion(curve, &s, a, b);
        let mut value = s.zero();
        let mut y_pow = s.zero();
        y_pow[0] = field.one();
        for row in h.rows() {
            if !row.is_empty() {
                value = s.add(&value, &s.mul(&s.compose_shift(row, a), &y_pow));
            }
            y_pow = s.mul(&y_pow, &y);
        }
        if let Some(ord) = value.iter().position(|c| !field.is_zero(c)) {
            return ord as u64;
        }
        assert!((n as u64) <= cap, "h vanishes beyond its total zero degree at a point");
        n *= 2;
    }
}

fn evaluate(field: &ExtField, h: &CurveFunction, a: &ExtElem, b: &ExtElem) -> ExtElem {
    h.rows().iter().rev().fold(field.zero(), |acc, row| {
        field.add(&field.mul(&acc, b), &field.eval_prime_poly(row, a))
    })
}

/// `y = b + u(t)` where `u = uᵖ − g(t)`, `g(t) = f(a + t) − f(a)`, iterated to
/// its fixed point; `g(0) = 0` makes the map a contraction in `t`.
fn y_expansion(curve: &ArtinSchreierCurve, s: &Series<'_>, a: &ExtElem, b: &ExtElem) -> Vec<ExtElem> {
    let field = s.field;
    let mut g = s.compose_shift(curve.f(), a);
    g[0] = field.zero();
    let neg_g: Vec<ExtElem> = g.iter().map(|c| field.sub(&field.zero(), c)).collect();
    let p = curve.p() as usize;
    let mut u = s.zero();
    loop {
        let next = s.add(&s.frobenius(&u, p), &neg_g);
        if next == u {
            break;
        }
        u = next;
    }
    u[0] = field.add(&u[0], b);
    u
}

#[cfg(test)]
mod tests {
    use super::*;

    fn xm(p: u64, m: usize) -> ArtinSchreierCurve {
        let mut f = vec![0; m + 1];
        f[m] = 1;
        ArtinSchreierCurve::new(p, f).unwrap()
    }

    #[test]
    fn constant_has_no_zeros() {
        let r = brute_force_divisor_degree(&xm(3, 5), &CurveFunction::constant(3, 1), 1).unwrap();
        assert_eq!((r.degree, r.expected, r.conclusive), (0, 0, true));
    }

    #[test]
    fn x_vanishes_on_three_rational_points() {
        let r = brute_force_divisor_degree(&xm(3, 5), &CurveFunction::x(3), 1).unwrap();
        assert_eq!((r.degree, r.conclusive), (3, true));
    }

    #[test]
    fn x_to_the_fourth() {
        let h = CurveFunction::monomial(3, 2, 4, 0);
        let r = brute_force_divisor_degree(&xm(3, 5), &h, 1).unwrap();
        assert_eq!((r.degree, r.conclusive), (12, true));
    }

    #[test]
    fn y_has_a_high_order_zero_at_the_origin() {
        // y = 0 forces x⁵ = 0; at the origin y ~ -t⁵, and at the other two
        // points over x = 0 it is a unit
        let r = brute_force_divisor_degree(&xm(3, 5), &CurveFunction::y(3), 1).unwrap();
        assert_eq!((r.degree, r.expected, r.conclusive), (5, 5, true));
    }

    #[test]
    fn zeros_in_extensions_are_counted_by_degree() {
        // x² + 1 is irreducible over F_3: its zeros lie over F_9
        let c = xm(3, 5);
        let h = CurveFunction::from_terms(3, &[(1, 2, 0), (1, 0, 0)]);
        let r = brute_force_divisor_degree(&c, &h, 1).unwrap();
        assert!(!r.conclusive);
        let r = brute_force_divisor_degree(&c, &h, 2).unwrap();
        assert_eq!((r.degree, r.expected, r.conclusive), (6, 6, true));
        assert_eq!(r.by_extension, vec![(1, 0), (2, 6)]);
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(
            brute_force_divisor_degree(&xm(2, 3), &CurveFunction::zero(2), 2).unwrap_err(),
            CurveError::ZeroFunction
        );
    }
}
