//! Exact arithmetic in cyclotomic fields Q(zeta_N).
//!
//! Elements are polynomials in zeta_N reduced modulo the N-th cyclotomic
//! polynomial Phi_N, so every value has a unique coefficient vector of
//! length phi(N). Equality, hashing and serialization all work on that
//! canonical form.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational; always stored reduced with a positive
/// denominator.
pub type Rational = BigRational;

/// Convenience constructor for small rationals.
pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Descriptor of Q(zeta_N): the order N and Phi_N.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycField {
    order: u64,
    /// Coefficients of Phi_N, ascending degree, monic.
    min_poly: Vec<BigInt>,
    /// Row m holds the coefficients of x^(phi+m) mod Phi_N, for
    /// m = 0 .. phi-2. Used to fold products back into degree < phi.
    reductions: Vec<Vec<BigInt>>,
}

impl CycField {
    pub fn order(&self) -> u64 {
        self.order
    }

    /// Degree of the extension, phi(N).
    pub fn degree(&self) -> usize {
        self.min_poly.len() - 1
    }

    pub fn min_poly(&self) -> &[BigInt] {
        &self.min_poly
    }

    pub(crate) fn reduction_row(&self, m: usize) -> &[BigInt] {
        &self.reductions[m]
    }
}

/// x^n - 1 over BigInt, ascending.
fn x_pow_minus_one(n: u64) -> Vec<BigInt> {
    let mut c = vec![BigInt::zero(); n as usize + 1];
    c[0] = -BigInt::one();
    c[n as usize] = BigInt::one();
    c
}

/// Exact division of integer polynomials; panics if not exact (callers
/// only divide x^n - 1 by known factors).
fn poly_div_exact(num: &[BigInt], den: &[BigInt]) -> Vec<BigInt> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    assert!(den[dd].is_one(), "divisor must be monic");
    let nd = rem.len() - 1;
    assert!(nd >= dd);
    let mut quot = vec![BigInt::zero(); nd - dd + 1];
    for i in (0..=nd - dd).rev() {
        let c = rem[i + dd].clone();
        if !c.is_zero() {
            for (j, dj) in den.iter().enumerate() {
                rem[i + j] -= &c * dj;
            }
        }
        quot[i] = c;
    }
    assert!(rem.iter().all(|c| c.is_zero()), "division not exact");
    quot
}

fn divisors(n: u64) -> Vec<u64> {
    let mut d: Vec<u64> = (1..=n).filter(|k| n % k == 0).collect();
    d.sort_unstable();
    d
}

fn cyclotomic_poly(n: u64) -> Vec<BigInt> {
    if n == 1 {
        return vec![-BigInt::one(), BigInt::one()];
    }
    let mut quot = x_pow_minus_one(n);
    for d in divisors(n) {
        if d < n {
            quot = poly_div_exact(&quot, &cyclotomic_poly(d));
        }
    }
    quot
}

fn field_cache() -> &'static Mutex<HashMap<u64, Arc<CycField>>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<CycField>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Build (or fetch) the field descriptor for Q(zeta_N).
pub fn field_create(n: u64) -> Arc<CycField> {
    assert!(n >= 1, "field order must be positive");
    if let Some(f) = field_cache().lock().unwrap().get(&n) {
        return f.clone();
    }
    let min_poly = cyclotomic_poly(n);
    let phi = min_poly.len() - 1;
    // x^(phi+m) mod Phi: start from x^phi = -(lower part of Phi), then
    // shift. Products need degrees up to 2*phi-2 and raw root powers up
    // to N-1, so cover both.
    let rows_needed = (phi.saturating_sub(1)).max((n as usize).saturating_sub(phi));
    let mut reductions: Vec<Vec<BigInt>> = Vec::new();
    if phi >= 1 {
        let base: Vec<BigInt> = min_poly[..phi].iter().map(|c| -c).collect();
        reductions.push(base);
        for m in 1..rows_needed {
            let prev = reductions[m - 1].clone();
            let mut next = vec![BigInt::zero(); phi];
            // multiply prev by x, folding the overflow term through x^phi
            let top = prev[phi - 1].clone();
            for j in (1..phi).rev() {
                next[j] = prev[j - 1].clone();
            }
            if !top.is_zero() {
                for j in 0..phi {
                    next[j] += &top * &reductions[0][j];
                }
            }
            reductions.push(next);
        }
    }
    let field = Arc::new(CycField {
        order: n,
        min_poly,
        reductions,
    });
    field_cache().lock().unwrap().insert(n, field.clone());
    field
}

/// Element of Q(zeta_N) in canonical reduced form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycNum {
    field: Arc<CycField>,
    coeffs: Vec<Rational>,
}

impl std::hash::Hash for CycNum {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.field.order().hash(state);
        self.coeffs.hash(state);
    }
}

impl CycNum {
    pub fn zero(field: &Arc<CycField>) -> Self {
        CycNum {
            field: field.clone(),
            coeffs: vec![Rational::zero(); field.degree()],
        }
    }

    pub fn one(field: &Arc<CycField>) -> Self {
        Self::from_rational(field, Rational::one())
    }

    pub fn from_rational(field: &Arc<CycField>, r: Rational) -> Self {
        let mut v = Self::zero(field);
        v.coeffs[0] = r;
        v
    }

    pub fn from_int(field: &Arc<CycField>, k: i64) -> Self {
        Self::from_rational(field, rat(k, 1))
    }

    /// Build from an unreduced polynomial in zeta_N (any length).
    pub fn from_poly(field: &Arc<CycField>, poly: &[Rational]) -> Self {
        let phi = field.degree();
        let mut work: Vec<Rational> = poly.to_vec();
        // fold powers >= phi down using x^m = x^(m mod N) first (cheap), then
        // the precomputed reduction rows
        let n = field.order() as usize;
        if work.len() > n {
            let mut folded = vec![Rational::zero(); n.max(phi)];
            for (i, c) in work.iter().enumerate() {
                folded[i % n] += c;
            }
            work = folded;
        }
        while work.len() > phi {
            let m = work.len() - 1;
            let c = work.pop().unwrap();
            if c.is_zero() {
                continue;
            }
            if m == phi {
                for (j, r) in field.reduction_row(0).iter().enumerate() {
                    work[j] += &c * Rational::from(r.clone());
                }
            } else {
                // x^m = x * x^(m-1); push down one step at a time
                let row = field.reduction_row(m - phi);
                for (j, r) in row.iter().enumerate() {
                    work[j] += &c * Rational::from(r.clone());
                }
            }
        }
        work.resize(phi, Rational::zero());
        CycNum {
            field: field.clone(),
            coeffs: work,
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(|c| c.is_zero())
    }

    /// The rational value, if this element lies in Q.
    pub fn as_rational(&self) -> Option<&Rational> {
        if self.coeffs[1..].iter().all(|c| c.is_zero()) {
            Some(&self.coeffs[0])
        } else {
            None
        }
    }

    fn check_same_field(&self, other: &CycNum) -> Result<()> {
        if self.field.order() != other.field.order() {
            return Err(Error::FieldMismatch(
                self.field.order(),
                other.field.order(),
            ));
        }
        Ok(())
    }

    pub fn add(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same_field(other)?;
        let coeffs = self
            .coeffs
            .iter()
            .zip(&other.coeffs)
            .map(|(a, b)| a + b)
            .collect();
        Ok(CycNum {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn sub(&self, other: &CycNum) -> Result<CycNum> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }

    pub fn mul(&self, other: &CycNum) -> Result<CycNum> {
        self.check_same_field(other)?;
        let phi = self.field.degree();
        let mut conv = vec![Rational::zero(); 2 * phi.max(1) - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    conv[i + j] += a * b;
                }
            }
        }
        Ok(CycNum::from_poly(&self.field, &conv))
    }

    pub fn scale(&self, r: &Rational) -> CycNum {
        CycNum {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * r).collect(),
        }
    }

    /// Multiplicative inverse via the extended Euclidean algorithm on
    /// (self, Phi_N) over Q[x].
    pub fn inv(&self) -> Result<CycNum> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let phi_poly: Vec<Rational> = self
            .field
            .min_poly()
            .iter()
            .map(|c| Rational::from(c.clone()))
            .collect();
        let (g, s) = poly_ext_gcd(&trim(&self.coeffs), &trim(&phi_poly));
        // Phi_N is irreducible, so gcd is a nonzero constant.
        debug_assert_eq!(g.len(), 1);
        let c = &g[0];
        let s_scaled: Vec<Rational> = s.iter().map(|x| x / c).collect();
        Ok(CycNum::from_poly(&self.field, &s_scaled))
    }

    pub fn div(&self, other: &CycNum) -> Result<CycNum> {
        self.mul(&other.inv()?)
    }

    pub fn pow(&self, e: i64) -> Result<CycNum> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let mut base = self.clone();
        let mut acc = CycNum::one(&self.field);
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// Image under zeta_N -> zeta_M^(M/N); requires N | M.
    pub fn embed(&self, target: &Arc<CycField>) -> Result<CycNum> {
        let n = self.field.order();
        let m = target.order();
        if m % n != 0 {
            return Err(Error::NotASubfield(n, m));
        }
        let step = m / n;
        let mut acc = CycNum::zero(target);
        for (i, c) in self.coeffs.iter().enumerate() {
            if !c.is_zero() {
                let term = from_root_power(target, (i as u64 * step) as i64).scale(c);
                acc = acc.add(&term)?;
            }
        }
        Ok(acc)
    }

    /// Smallest q >= 1 with self^q = 1, or None when self is not a root
    /// of unity. Tests self against every power of zeta_N.
    pub fn root_order(&self) -> Option<u64> {
        let n = self.field.order();
        for k in 0..n {
            if *self == from_root_power(&self.field, k as i64) {
                let g = num::integer::gcd(n, k);
                return Some(n / g);
            }
        }
        None
    }

    /// True when this element equals -1.
    pub fn is_minus_one(&self) -> bool {
        self.coeffs[0] == rat(-1, 1) && self.coeffs[1..].iter().all(|c| c.is_zero())
    }
}

fn trim(p: &[Rational]) -> Vec<Rational> {
    let mut v = p.to_vec();
    while v.len() > 1 && v.last().unwrap().is_zero() {
        v.pop();
    }
    v
}

fn poly_is_zero(p: &[Rational]) -> bool {
    p.iter().all(|c| c.is_zero())
}

fn poly_sub_scaled(a: &[Rational], b: &[Rational], c: &Rational, shift: usize) -> Vec<Rational> {
    let len = a.len().max(b.len() + shift);
    let mut out = vec![Rational::zero(); len];
    out[..a.len()].clone_from_slice(a);
    for (j, bj) in b.iter().enumerate() {
        out[j + shift] -= c * bj;
    }
    trim(&out)
}

/// Returns (gcd, s) with s*a = gcd mod b.
fn poly_ext_gcd(a: &[Rational], b: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
    let mut r0 = trim(a);
    let mut r1 = trim(b);
    let mut s0 = vec![Rational::one()];
    let mut s1 = vec![Rational::zero()];
    while !poly_is_zero(&r1) {
        // divide r0 by r1
        let mut rem = r0.clone();
        let mut quo: Vec<Rational> = vec![];
        let d1 = r1.len() - 1;
        let lead = r1[d1].clone();
        while rem.len() > 1 || !rem[0].is_zero() {
            let d0 = rem.len() - 1;
            if d0 < d1 && !(d0 == 0 && d1 == 0) {
                break;
            }
            if rem.len() < r1.len() {
                break;
            }
            let shift = d0 - d1;
            let c = &rem[d0] / &lead;
            if quo.len() < shift + 1 {
                quo.resize(shift + 1, Rational::zero());
            }
            quo[shift] = c.clone();
            rem = poly_sub_scaled(&rem, &r1, &c, shift);
            if poly_is_zero(&rem) {
                break;
            }
        }
        // (r0, r1) <- (r1, rem); (s0, s1) <- (s1, s0 - q*s1)
        let mut s_next = s0.clone();
        for (shift, c) in quo.iter().enumerate() {
            if !c.is_zero() {
                s_next = poly_sub_scaled(&s_next, &s1, c, shift);
            }
        }
        r0 = r1;
        r1 = trim(&rem);
        s0 = s1;
        s1 = s_next;
    }
    (r0, s0)
}

/// The element zeta_N^k in canonical form (k taken mod N).
pub fn from_root_power(field: &Arc<CycField>, k: i64) -> CycNum {
    let n = field.order() as i64;
    let k = k.rem_euclid(n) as usize;
    let mut poly = vec![Rational::zero(); k + 1];
    poly[k] = Rational::one();
    CycNum::from_poly(field, &poly)
}

impl fmt::Display for CycNum {
    /// Text form: sum of "p/q*z^k" terms, zero written as "0".
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "{}/{}*z^{}", c.numer(), c.denom(), k)?;
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

/// Parse the `Display` text form back into an element of `field`.
pub fn parse_cycnum(field: &Arc<CycField>, s: &str) -> Result<CycNum> {
    let s = s.trim();
    if s == "0" {
        return Ok(CycNum::zero(field));
    }
    let mut coeffs = vec![Rational::zero(); field.degree()];
    for term in s.split(" + ") {
        let (frac, pow) = term
            .split_once("*z^")
            .ok_or_else(|| Error::Parse(term.to_string()))?;
        let (p, q) = frac
            .split_once('/')
            .ok_or_else(|| Error::Parse(frac.to_string()))?;
        let p: BigInt = p.parse().map_err(|_| Error::Parse(p.to_string()))?;
        let q: BigInt = q.parse().map_err(|_| Error::Parse(q.to_string()))?;
        let k: usize = pow.parse().map_err(|_| Error::Parse(pow.to_string()))?;
        if k >= coeffs.len() || q.is_zero() {
            return Err(Error::Parse(term.to_string()));
        }
        coeffs[k] = Rational::new(p, q);
    }
    Ok(CycNum {
        field: field.clone(),
        coeffs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi_1_is_x_minus_1() {
        let f = field_create(1);
        assert_eq!(f.min_poly(), &[-BigInt::one(), BigInt::one()]);
        assert_eq!(f.degree(), 1);
    }

    #[test]
    fn phi_4_is_x2_plus_1() {
        let f = field_create(4);
        assert_eq!(
            f.min_poly(),
            &[BigInt::one(), BigInt::zero(), BigInt::one()]
        );
    }

    #[test]
    fn phi_12_has_degree_4() {
        assert_eq!(field_create(12).degree(), 4);
    }

    #[test]
    fn root_powers() {
        let f2 = field_create(2);
        assert!(from_root_power(&f2, 1).is_minus_one());

        let f3 = field_create(3);
        let z = from_root_power(&f3, 1);
        // zeta_3^2 + zeta_3 + 1 = 0
        let sum = z.mul(&z).unwrap().add(&z).unwrap();
        assert!(sum.add(&CycNum::one(&f3)).unwrap().is_zero());

        let f6 = field_create(6);
        assert!(from_root_power(&f6, 3).is_minus_one());
    }

    #[test]
    fn arithmetic_examples() {
        let f3 = field_create(3);
        let z = from_root_power(&f3, 1);
        let z2 = from_root_power(&f3, 2);
        assert!(z.mul(&z2).unwrap().is_one());
        assert_eq!(z.add(&z2).unwrap(), CycNum::from_int(&f3, -1));

        let f5 = field_create(5);
        let z5 = from_root_power(&f5, 1);
        assert_eq!(z5.inv().unwrap(), from_root_power(&f5, 4));

        assert_eq!(
            CycNum::zero(&f5).inv().unwrap_err(),
            Error::DivisionByZero
        );
    }

    #[test]
    fn embed_examples() {
        let f2 = field_create(2);
        let f6 = field_create(6);
        let m1 = from_root_power(&f2, 1);
        assert_eq!(m1.embed(&f6).unwrap(), from_root_power(&f6, 3));

        let f3 = field_create(3);
        let f15 = field_create(15);
        assert_eq!(
            from_root_power(&f3, 1).embed(&f15).unwrap(),
            from_root_power(&f15, 5)
        );

        let f4 = field_create(4);
        assert_eq!(
            from_root_power(&f4, 1).embed(&f6).unwrap_err(),
            Error::NotASubfield(4, 6)
        );
    }

    #[test]
    fn root_order_examples() {
        let f6 = field_create(6);
        assert_eq!(CycNum::one(&f6).root_order(), Some(1));
        assert_eq!(from_root_power(&f6, 2).root_order(), Some(3));

        let f1 = field_create(1);
        assert_eq!(CycNum::from_rational(&f1, rat(1, 2)).root_order(), None);
    }

    #[test]
    fn embeds_are_ring_homomorphisms() {
        // deterministic "random" pairs via a simple LCG
        let f6 = field_create(6);
        let f12 = field_create(12);
        let mut state: u64 = 0x9e3779b97f4a7c15;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 7) as i64 - 3
        };
        for _ in 0..50 {
            let a = CycNum::from_poly(&f6, &[rat(next(), 1), rat(next(), 2)]);
            let b = CycNum::from_poly(&f6, &[rat(next(), 3), rat(next(), 1)]);
            let lhs = a.mul(&b).unwrap().embed(&f12).unwrap();
            let rhs = a.embed(&f12).unwrap().mul(&b.embed(&f12).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
            let lhs = a.add(&b).unwrap().embed(&f12).unwrap();
            let rhs = a.embed(&f12).unwrap().add(&b.embed(&f12).unwrap()).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn field_axioms_on_random_triples() {
        let f12 = field_create(12);
        let mut state: u64 = 42;
        let mut next = move || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 33) % 9) as i64 - 4
        };
        for _ in 0..40 {
            let mk = |next: &mut dyn FnMut() -> i64| {
                CycNum::from_poly(
                    &f12,
                    &[rat(next(), 1), rat(next(), 2), rat(next(), 1), rat(next(), 3)],
                )
            };
            let a = mk(&mut next);
            let b = mk(&mut next);
            let c = mk(&mut next);
            let ab_c = a.mul(&b).unwrap().mul(&c).unwrap();
            let a_bc = a.mul(&b.mul(&c).unwrap()).unwrap();
            assert_eq!(ab_c, a_bc);
            assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
            let dist_l = a.mul(&b.add(&c).unwrap()).unwrap();
            let dist_r = a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap();
            assert_eq!(dist_l, dist_r);
            if !a.is_zero() {
                assert!(a.mul(&a.inv().unwrap()).unwrap().is_one());
            }
        }
    }

    #[test]
    fn powers_of_roots_return_to_one() {
        for n in 1..=16u64 {
            let f = field_create(n);
            for k in 0..n {
                let z = from_root_power(&f, k as i64);
                assert!(z.pow(n as i64).unwrap().is_one());
                let q = z.root_order().unwrap();
                assert_eq!(n % q, 0);
            }
        }
    }

    #[test]
    fn text_roundtrip_is_canonical() {
        let f12 = field_create(12);
        let x = CycNum::from_poly(&f12, &[rat(3, 7), rat(0, 1), rat(-5, 2), rat(1, 1)]);
        let s = x.to_string();
        let y = parse_cycnum(&f12, &s).unwrap();
        assert_eq!(x, y);
        assert_eq!(x.coeffs(), y.coeffs());
        assert_eq!(parse_cycnum(&f12, "0").unwrap(), CycNum::zero(&f12));
    }
}
