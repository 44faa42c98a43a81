//! Artin–Schreier curves `yᵖ − y = f(x)` over `F_p`.
//!
//! With `m = deg f` prime to `p`, the curve has a single place `P∞` over
//! `x = ∞`, totally ramified, with `v∞(x) = −p` and `v∞(y) = −m`. The map to
//! the `x`-line is étale on the affine part, so `(dx) = (2g − 2)·P∞`.
//!
//! Justifications `η` are polynomial functions and the divisors `D` are
//! supported at `P∞`: `D = d·P∞`.

pub mod brute;
pub mod field;
mod function;

pub use brute::{brute_force_divisor_degree, BruteForceReport};

use std::collections::BTreeMap;

use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::arith::is_prime;
use field::{trim, PrimeField};
pub use function::CurveFunction;

/// Largest characteristic accepted; keeps products of residues in `u64`.
pub const MAX_PRIME: u64 = 1 << 16;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("p = {0} is not prime")]
    NotPrime(u64),
    #[error("p = {0} exceeds the supported bound {MAX_PRIME}")]
    PrimeTooLarge(u64),
    #[error("f must be a nonconstant polynomial")]
    ConstantPolynomial,
    #[error("coefficient {value} at index {index} is not a residue mod {p}")]
    CoefficientOutOfRange { index: usize, value: u64, p: u64 },
    #[error("deg f = {m} is divisible by p = {p}; need gcd(m,p)=1")]
    DegreeNotCoprime { m: usize, p: u64 },
    #[error("function is zero")]
    ZeroFunction,
    #[error("function is defined for p = {got}, curve has p = {expected}")]
    FieldMismatch { expected: u64, got: u64 },
    #[error("family with p = {p}, l = {l} has deg D = l(p-1)-2 = {deg_d} < 1")]
    FamilyPrecondition { p: u64, l: u64, deg_d: i64 },
    #[error("d must be at least 1")]
    ZeroDivisorDegree,
    #[error("field extension bound must be at least 1")]
    ZeroExtensionBound,
}

/// Wire form of a curve: `{"p": 3, "f": [0,0,0,0,0,1]}`, coefficients from the
/// constant term up.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveSpec {
    pub p: u64,
    pub f: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ArtinSchreierCurve {
    p: u64,
    f: Vec<u64>,
    m: usize,
}

impl ArtinSchreierCurve {
    pub fn new(p: u64, f: Vec<u64>) -> Result<Self, CurveError> {
        if !is_prime(p) {
            return Err(CurveError::NotPrime(p));
        }
        if p > MAX_PRIME {
            return Err(CurveError::PrimeTooLarge(p));
        }
        if let Some((index, &value)) = f.iter().enumerate().find(|(_, &c)| c >= p) {
            return Err(CurveError::CoefficientOutOfRange { index, value, p });
        }
        let mut f = f;
        trim(&mut f);
        if f.len() < 2 {
            return Err(CurveError::ConstantPolynomial);
        }
        let m = f.len() - 1;
        if (m as u64).is_multiple_of(p) {
            return Err(CurveError::DegreeNotCoprime { m, p });
        }
        Ok(ArtinSchreierCurve { p, f, m })
    }

    pub fn from_spec(spec: &CurveSpec) -> Result<Self, CurveError> {
        Self::new(spec.p, spec.f.clone())
    }

    pub fn spec(&self) -> CurveSpec {
        CurveSpec {
            p: self.p,
            f: self.f.clone(),
        }
    }

    /// `yᵖ − y = x^{ℓp−1}`, which carries the Tango structure
    /// `D = (ℓ(p−1) − 2)·P∞` justified by `η = x`.
    pub fn raynaud_family(p: u64, l: u64) -> Result<Self, CurveError> {
        if !is_prime(p) {
            return Err(CurveError::NotPrime(p));
        }
        let deg_d = l as i64 * (p as i64 - 1) - 2;
        if l == 0 || deg_d < 1 {
            return Err(CurveError::FamilyPrecondition { p, l, deg_d });
        }
        let m = (l * p - 1) as usize;
        let mut f = vec![0; m + 1];
        f[m] = 1;
        Self::new(p, f)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn f(&self) -> &[u64] {
        &self.f
    }

    /// `m = deg f`.
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn genus(&self) -> u64 {
        (self.p - 1) * (self.m as u64 - 1) / 2
    }

    /// `2g − 2 = pm − p − m − 1`.
    pub fn canonical_degree(&self) -> i64 {
        let (p, m) = (self.p as i64, self.m as i64);
        p * m - p - m - 1
    }

    fn fp(&self) -> PrimeField {
        PrimeField::new(self.p)
    }

    fn check(&self, h: &CurveFunction) -> Result<(), CurveError> {
        if h.p() != self.p {
            Err(CurveError::FieldMismatch {
                expected: self.p,
                got: h.p(),
            })
        } else {
            Ok(())
        }
    }

    /// `f'(x)`.
    pub fn f_derivative(&self) -> Vec<u64> {
        let fp = self.fp();
        let mut d: Vec<u64> = self
            .f
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| fp.mul(fp.from_u64(i as u64), c))
            .collect();
        trim(&mut d);
        d
    }

    /// Pole order of `xⁱyʲ` at `P∞`: `p·i + m·j`.
    pub fn weight(&self, i: usize, j: usize) -> u64 {
        self.p * i as u64 + self.m as u64 * j as u64
    }

    /// Reduced monomials `xⁱyʲ` with `p·i + m·j ≤ bound`, by increasing weight.
    pub fn monomials_up_to_weight(&self, bound: u64) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 0..self.p as usize {
            let wj = self.m as u64 * j as u64;
            if wj > bound {
                break;
            }
            for i in 0..=((bound - wj) / self.p) as usize {
                out.push((i, j));
            }
        }
        out.sort_by_key(|&(i, j)| (self.weight(i, j), j));
        out
    }

    /// Product in the coordinate ring, reduced with `yᵖ = y + f(x)`.
    pub fn mul(&self, a: &CurveFunction, b: &CurveFunction) -> CurveFunction {
        let fp = self.fp();
        let p = self.p as usize;
        let mut rows: Vec<Vec<u64>> = vec![Vec::new(); 2 * p - 1];
        for (ja, ra) in a.rows().iter().enumerate() {
            for (jb, rb) in b.rows().iter().enumerate() {
                if ra.is_empty() || rb.is_empty() {
                    continue;
                }
                let slot = &mut rows[ja + jb];
                slot.resize(slot.len().max(ra.len() + rb.len() - 1), 0);
                for (i, &x) in ra.iter().enumerate() {
                    if x == 0 {
                        continue;
                    }
                    for (k, &y) in rb.iter().enumerate() {
                        slot[i + k] = fp.add(slot[i + k], fp.mul(x, y));
                    }
                }
            }
        }
        // y^{p+t} = y^{t+1} + f(x) y^t
        for top in (p..rows.len()).rev() {
            let row = std::mem::take(&mut rows[top]);
            if row.is_empty() {
                continue;
            }
            let t = top - p;
            add_into(&fp, &mut rows[t + 1], &row);
            let shifted = poly_mul(&fp, &row, &self.f);
            add_into(&fp, &mut rows[t], &shifted);
        }
        rows.truncate(p);
        CurveFunction::from_rows(self.p, rows)
    }

    /// `h` with `dη = h·dx`: `h = ∂η/∂x − f'(x)·∂η/∂y`, using
    /// `dy = −f'(x)dx` from differentiating `yᵖ − y = f(x)`.
    pub fn differential_of(&self, eta: &CurveFunction) -> Result<CurveFunction, CurveError> {
        self.check(eta)?;
        let neg_fprime: Vec<u64> = self.f_derivative().iter().map(|&c| self.fp().neg(c)).collect();
        Ok(eta.partial_x().add(&eta.partial_y().mul_x_poly(&neg_fprime)))
    }

    /// `v∞(h)`, or `v∞(h·dx)` when `as_differential` is set.
    ///
    /// Distinct reduced monomials have distinct pole orders (`p·i + m·j`
    /// determines `j` mod `p` because `(m,p)=1`), so the valuation is read off
    /// the unique heaviest monomial.
    pub fn infinity_valuation(&self, h: &CurveFunction, as_differential: bool) -> Result<i64, CurveError> {
        self.check(h)?;
        let w = self.max_weight(h).ok_or(CurveError::ZeroFunction)?;
        let v = -(w as i64);
        Ok(if as_differential {
            v + self.canonical_degree()
        } else {
            v
        })
    }

    fn max_weight(&self, h: &CurveFunction) -> Option<u64> {
        h.terms().map(|(_, i, j)| self.weight(i, j)).max()
    }

    /// Divisor data of `dη` split into the part at `P∞` and the affine part.
    pub fn differential_report(&self, eta: &CurveFunction) -> Result<DifferentialReport, CurveError> {
        let h = self.differential_of(eta)?;
        let v_infinity = self.infinity_valuation(&h, true)?;
        // h is a polynomial: its only pole is at P∞, so its affine zeros
        // have total degree equal to that pole order.
        let finite_part_degree = -self.infinity_valuation(&h, false)?;
        Ok(DifferentialReport {
            eta: eta.to_string(),
            h: h.to_string(),
            v_infinity,
            finite_part_degree: finite_part_degree as u64,
            total_degree: v_infinity + finite_part_degree,
            witness: h,
        })
    }

    /// `N(h) = Π_{c ∈ F_p} h(x, y + c)`, a polynomial in `x`.
    pub fn norm(&self, h: &CurveFunction) -> Result<Vec<u64>, CurveError> {
        self.check(h)?;
        let mut acc = CurveFunction::constant(self.p, 1);
        for c in 0..self.p {
            acc = self.mul(&acc, &h.shift_y(c));
        }
        debug_assert!(acc.rows()[1..].iter().all(|r| r.is_empty()));
        Ok(acc.rows()[0].clone())
    }

    /// The differential search space of polynomial `η` with
    /// `p·i + m·j ≤ weight_bound`, reduced to an echelon basis of `dη/dx`.
    pub fn differential_space(&self, weight_bound: u64) -> DifferentialSpace {
        DifferentialSpace::build(self, weight_bound)
    }

    /// `η` with `(dη) = pd·P∞` exactly: `dη/dx` a nonzero constant and
    /// `pd = 2g − 2`. Polynomial `η` only.
    pub fn is_tango(&self, d: u64) -> Result<Option<CurveFunction>, CurveError> {
        if d == 0 {
            return Err(CurveError::ZeroDivisorDegree);
        }
        if self.p as i64 * d as i64 != self.canonical_degree() {
            return Ok(None);
        }
        let space = self.differential_space(self.p);
        Ok(space.best().filter(|b| b.h_weight == 0).map(|b| b.eta.clone()))
    }

    /// `η` with `(dη) ≥ pd·P∞`, searched over polynomials of weighted degree
    /// at most `weight_bound` modulo the kernel of `d`. `None` means no such
    /// `η` exists in that space; larger spaces may still contain one.
    pub fn pre_tango_search(&self, d: u64, weight_bound: u64) -> Result<Option<CurveFunction>, CurveError> {
        if d == 0 {
            return Err(CurveError::ZeroDivisorDegree);
        }
        let target = self.p as i64 * d as i64;
        let space = self.differential_space(weight_bound);
        Ok(space
            .best()
            .filter(|b| self.canonical_degree() - b.h_weight as i64 >= target)
            .map(|b| b.eta.clone()))
    }

    /// Bounds on the Tango invariant from polynomial justifications with
    /// divisors supported at `P∞`.
    pub fn tango_invariant_bounds(&self, weight_bound: u64) -> TangoBounds {
        let space = self.differential_space(weight_bound);
        let upper = BigRational::new((2 * (self.genus() as i64 - 1)).into(), (self.p as i64).into());
        let (lower, witness) = match space.best() {
            Some(b) => {
                let v = self.canonical_degree() - b.h_weight as i64;
                (v.div_euclid(self.p as i64).max(0), Some(b.eta.to_string()))
            }
            None => (0, None),
        };
        TangoBounds {
            exact: BigRational::from_integer(lower.into()) == upper,
            lower,
            upper: upper.to_string(),
            witness,
        }
    }
}

fn add_into(fp: &PrimeField, acc: &mut Vec<u64>, v: &[u64]) {
    acc.resize(acc.len().max(v.len()), 0);
    for (a, &b) in acc.iter_mut().zip(v) {
        *a = fp.add(*a, b);
    }
}

fn poly_mul(fp: &PrimeField, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (k, &y) in b.iter().enumerate() {
            out[i + k] = fp.add(out[i + k], fp.mul(x, y));
        }
    }
    out
}

/// Divisor of `dη = h·dx`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DifferentialReport {
    pub eta: String,
    pub h: String,
    /// `v∞(dη)`.
    pub v_infinity: i64,
    /// Degree of the affine zero divisor of `h`.
    pub finite_part_degree: u64,
    /// Equals `2g − 2`.
    pub total_degree: i64,
    #[serde(skip)]
    pub witness: CurveFunction,
}

/// Tango invariant bounds `lower ≤ n(C) ≤ upper`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TangoBounds {
    pub lower: i64,
    /// `2(g−1)/p` as a lowest-terms rational.
    pub upper: String,
    pub exact: bool,
    pub witness: Option<String>,
}

/// A basis vector of the image of `d` with a distinct leading monomial.
#[derive(Clone, Debug)]
pub struct EchelonEntry {
    /// Pole order of the leading term of `h`.
    pub h_weight: u64,
    pub h: CurveFunction,
    pub eta: CurveFunction,
}

/// Echelon basis of `{dη/dx : η polynomial, weight(η) ≤ bound}` with respect
/// to pole order at `P∞`.
///
/// Because pivots have distinct leading monomials, the leading pole order of
/// any nonzero combination is the largest among the pivots involved; the
/// smallest pivot weight is therefore the smallest pole order of any nonzero
/// `dη/dx` in the space, i.e. the largest `v∞(dη)`.
#[derive(Clone, Debug)]
pub struct DifferentialSpace {
    pivots: BTreeMap<u64, EchelonEntry>,
}

impl DifferentialSpace {
    fn build(curve: &ArtinSchreierCurve, weight_bound: u64) -> Self {
        let p = curve.p;
        let fp = curve.fp();
        let mut pivots: BTreeMap<u64, EchelonEntry> = BTreeMap::new();
        for (i, j) in curve.monomials_up_to_weight(weight_bound) {
            let mut eta = CurveFunction::monomial(p, 1, i, j);
            let mut h = curve.differential_of(&eta).expect("monomial built for this curve");
            while let Some(w) = curve.max_weight(&h) {
                let Some(piv) = pivots.get(&w) else { break };
                let c = leading_coeff(curve, &h, w);
                let pc = leading_coeff(curve, &piv.h, w);
                let factor = fp.mul(c, fp.inv(pc));
                h = h.sub(&piv.h.scale(factor));
                eta = eta.sub(&piv.eta.scale(factor));
            }
            if let Some(w) = curve.max_weight(&h) {
                pivots.insert(w, EchelonEntry { h_weight: w, h, eta });
            }
        }
        DifferentialSpace { pivots }
    }

    /// The entry with the smallest leading pole order.
    pub fn best(&self) -> Option<&EchelonEntry> {
        self.pivots.values().next()
    }

    /// Dimension of the image of `d` on the search space.
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn entries(&self) -> impl Iterator<Item = &EchelonEntry> {
        self.pivots.values()
    }
}

fn leading_coeff(curve: &ArtinSchreierCurve, h: &CurveFunction, w: u64) -> u64 {
    h.terms()
        .find(|&(_, i, j)| curve.weight(i, j) == w)
        .map(|(c, _, _)| c)
        .expect("leading term present")
}
