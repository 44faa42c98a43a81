//! Prime fields and their small extensions `F_{p^d}`.
//!
//! Extension fields are `F_p[z]/(c(z))` for a fixed irreducible `c`. For
//! `p ≤ 7` and `d ≤ 6` the modulus comes from the embedded table of Conway
//! polynomials; otherwise the lexicographically least monic irreducible
//! polynomial of degree `d` is used.

/// Arithmetic modulo a prime `p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Self {
        debug_assert!(crate::arith::is_prime(p));
        PrimeField { p }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    #[inline]
    pub fn reduce(&self, a: i64) -> u64 {
        a.rem_euclid(self.p as i64) as u64
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        (a + b) % self.p
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        (a + self.p - b) % self.p
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        (self.p - a) % self.p
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        a * b % self.p
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.p;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        assert!(!a.is_multiple_of(self.p), "inverse of zero");
        self.pow(a, self.p - 2)
    }

    /// Image of an integer (possibly large) in the field.
    pub fn from_u64(&self, n: u64) -> u64 {
        n % self.p
    }
}

/// Conway polynomials, constant term first, for `p ∈ {2,3,5,7}`, `d ≤ 6`.
const CONWAY: &[(u64, &[&[u64]])] = &[
    (
        2,
        &[
            &[1, 1],
            &[1, 1, 1],
            &[1, 1, 0, 1],
            &[1, 1, 0, 0, 1],
            &[1, 0, 1, 0, 0, 1],
            &[1, 1, 0, 1, 1, 0, 1],
        ],
    ),
    (
        3,
        &[
            &[1, 1],
            &[2, 2, 1],
            &[1, 2, 0, 1],
            &[2, 0, 0, 2, 1],
            &[1, 2, 0, 0, 0, 1],
            &[2, 2, 1, 0, 2, 0, 1],
        ],
    ),
    (
        5,
        &[
            &[3, 1],
            &[2, 4, 1],
            &[3, 3, 0, 1],
            &[2, 4, 4, 0, 1],
            &[3, 4, 0, 0, 0, 1],
            &[2, 0, 1, 4, 1, 0, 1],
        ],
    ),
    (
        7,
        &[
            &[4, 1],
            &[3, 6, 1],
            &[4, 0, 6, 1],
            &[3, 4, 5, 0, 1],
            &[4, 1, 0, 0, 0, 1],
            &[3, 6, 4, 5, 1, 0, 1],
        ],
    ),
];

/// The tabulated modulus for `F_{p^d}`, if present.
pub fn conway_polynomial(p: u64, d: usize) -> Option<&'static [u64]> {
    CONWAY
        .iter()
        .find(|(q, _)| *q == p)
        .and_then(|(_, polys)| polys.get(d.checked_sub(1)?))
        .copied()
}

// Dense univariate polynomials over F_p, constant term first, no trailing zeros.

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn poly_mulmod(fp: &PrimeField, a: &[u64], b: &[u64], m: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut prod = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = fp.add(prod[i + j], fp.mul(x, y));
        }
    }
    poly_rem(fp, prod, m)
}

fn poly_rem(fp: &PrimeField, mut a: Vec<u64>, m: &[u64]) -> Vec<u64> {
    trim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = fp.inv(m[dm]);
    while a.len() > dm {
        let top = a.len() - 1;
        let c = fp.mul(a[top], lead_inv);
        if c != 0 {
            for (i, &mi) in m.iter().enumerate() {
                let idx = top - dm + i;
                a[idx] = fp.sub(a[idx], fp.mul(c, mi));
            }
        }
        trim(&mut a);
    }
    a
}

fn poly_gcd(fp: &PrimeField, mut a: Vec<u64>, mut b: Vec<u64>) -> Vec<u64> {
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = poly_rem(fp, a, &b);
        a = b;
        b = r;
    }
    a
}

/// Rabin-style check: `m` (monic, degree `d`) is irreducible iff it has no
/// common factor with `z^{p^i} − z` for `1 ≤ i ≤ d/2`.
pub fn is_irreducible(p: u64, m: &[u64]) -> bool {
    let fp = PrimeField::new(p);
    let d = m.len() - 1;
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let z = vec![0, 1];
    let mut zp = z.clone();
    for _ in 1..=d / 2 {
        // zp <- zp^p mod m
        let mut acc = vec![1u64];
        let mut base = zp.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                acc = poly_mulmod(&fp, &acc, &base, m);
            }
            base = poly_mulmod(&fp, &base, &base, m);
            e >>= 1;
        }
        zp = acc;
        let mut diff = zp.clone();
        diff.resize(diff.len().max(2), 0);
        diff[1] = fp.sub(diff[1], 1);
        trim(&mut diff);
        let g = poly_gcd(&fp, m.to_vec(), diff);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// Least monic irreducible of degree `d`, in lexicographic order of the
/// coefficient vector read from the constant term.
fn least_irreducible(p: u64, d: usize) -> Vec<u64> {
    let total = p.pow(d as u32);
    for n in 0..total {
        let mut c = Vec::with_capacity(d + 1);
        let mut r = n;
        for _ in 0..d {
            c.push(r % p);
            r /= p;
        }
        c.push(1);
        if is_irreducible(p, &c) {
            return c;
        }
    }
    unreachable!("an irreducible polynomial of every degree exists")
}

/// Element of `F_{p^d}`: coefficients of a polynomial of degree `< d`.
pub type ExtElem = Vec<u64>;

/// The finite field `F_{p^d}`.
#[derive(Clone, Debug)]
pub struct ExtField {
    fp: PrimeField,
    d: usize,
    modulus: Vec<u64>,
}

impl ExtField {
    pub fn new(p: u64, d: usize) -> Self {
        assert!(d >= 1);
        let modulus = conway_polynomial(p, d)
            .map(|c| c.to_vec())
            .unwrap_or_else(|| least_irreducible(p, d));
        ExtField {
            fp: PrimeField::new(p),
            d,
            modulus,
        }
    }

    pub fn prime_field(&self) -> PrimeField {
        self.fp
    }

    pub fn degree(&self) -> usize {
        self.d
    }

    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn order(&self) -> u64 {
        self.fp.p().pow(self.d as u32)
    }

    pub fn zero(&self) -> ExtElem {
        vec![0; self.d]
    }

    pub fn one(&self) -> ExtElem {
        self.embed(1)
    }

    pub fn embed(&self, c: u64) -> ExtElem {
        let mut v = self.zero();
        v[0] = self.fp.from_u64(c);
        v
    }

    pub fn is_zero(&self, a: &ExtElem) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn add(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.fp.add(x, y)).collect()
    }

    pub fn sub(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        a.iter().zip(b).map(|(&x, &y)| self.fp.sub(x, y)).collect()
    }

    pub fn scale(&self, c: u64, a: &ExtElem) -> ExtElem {
        a.iter().map(|&x| self.fp.mul(c, x)).collect()
    }

    pub fn mul(&self, a: &ExtElem, b: &ExtElem) -> ExtElem {
        let mut r = poly_mulmod(&self.fp, a, b, &self.modulus);
        r.resize(self.d, 0);
        r
    }

    pub fn pow(&self, a: &ExtElem, mut e: u64) -> ExtElem {
        let mut r = self.one();
        let mut base = a.clone();
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(&r, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        r
    }

    /// `a^p`.
    pub fn frobenius(&self, a: &ExtElem) -> ExtElem {
        self.pow(a, self.fp.p())
    }

    /// Whether `a` lies in the subfield `F_{p^e}`.
    pub fn in_subfield(&self, a: &ExtElem, e: usize) -> bool {
        let mut x = a.clone();
        for _ in 0..e {
            x = self.frobenius(&x);
        }
        &x == a
    }

    /// All `p^d` elements, in counting order.
    pub fn elements(&self) -> Vec<ExtElem> {
        let p = self.fp.p();
        (0..self.order())
            .map(|mut n| {
                (0..self.d)
                    .map(|_| {
                        let c = n % p;
                        n /= p;
                        c
                    })
                    .collect()
            })
            .collect()
    }

    /// Evaluates a polynomial with prime-field coefficients at `a`.
    pub fn eval_prime_poly(&self, coeffs: &[u64], a: &ExtElem) -> ExtElem {
        coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, &c| self.add(&self.mul(&acc, a), &self.embed(c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_ops() {
        let f = PrimeField::new(5);
        assert_eq!(f.mul(3, 4), 2);
        assert_eq!(f.inv(2), 3);
        assert_eq!(f.neg(0), 0);
        assert_eq!(f.reduce(-1), 4);
        assert_eq!(f.pow(2, 4), 1);
    }

    #[test]
    fn table_entries_are_irreducible_and_primitive() {
        for p in [2u64, 3, 5, 7] {
            for d in 1..=6 {
                let c = conway_polynomial(p, d).unwrap();
                assert_eq!(c.len(), d + 1);
                assert_eq!(*c.last().unwrap(), 1);
                assert!(is_irreducible(p, c), "p={p} d={d} not irreducible");
                // z generates the multiplicative group
                let field = ExtField::new(p, d);
                let q = field.order();
                let mut z = field.zero();
                if d == 1 {
                    z[0] = (p - c[0]) % p;
                } else {
                    z[1] = 1;
                }
                assert_eq!(field.pow(&z, q - 1), field.one());
                let mut n = q - 1;
                let mut primes = Vec::new();
                let mut f = 2;
                while f * f <= n {
                    if n.is_multiple_of(f) {
                        primes.push(f);
                        while n.is_multiple_of(f) {
                            n /= f;
                        }
                    }
                    f += 1;
                }
                if n > 1 {
                    primes.push(n);
                }
                for r in primes {
                    assert_ne!(field.pow(&z, (q - 1) / r), field.one(), "p={p} d={d}");
                }
            }
        }
    }

    #[test]
    fn fallback_modulus_for_untabulated_prime() {
        let f = ExtField::new(11, 2);
        assert!(is_irreducible(11, f.modulus()));
        assert_eq!(f.elements().len(), 121);
    }

    #[test]
    fn reducible_polynomials_detected() {
        assert!(!is_irreducible(2, &[1, 0, 1])); // (z+1)^2
        assert!(!is_irreducible(3, &[2, 0, 1])); // z^2 - 1
        assert!(!is_irreducible(2, &[1, 0, 1, 0, 1])); // (z^2+z+1)^2
    }

    #[test]
    fn frobenius_fixes_prime_subfield() {
        let f = ExtField::new(3, 4);
        let fixed = f.elements().into_iter().filter(|a| f.in_subfield(a, 1)).count();
        assert_eq!(fixed, 3);
        let sub2 = f.elements().into_iter().filter(|a| f.in_subfield(a, 2)).count();
        assert_eq!(sub2, 9);
    }

    #[test]
    fn inverse_via_power() {
        let f = ExtField::new(2, 3);
        for a in f.elements().into_iter().filter(|a| !f.is_zero(a)) {
            let inv = f.pow(&a, f.order() - 2);
            assert_eq!(f.mul(&a, &inv), f.one());
        }
    }
}
