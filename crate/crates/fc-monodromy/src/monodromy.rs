//! Monodromy generators of the F_C system.
//!
//! From rational parameters (a, b, c_1..c_n) this module builds the
//! circuit matrices M_0, M_1, ..., M_n acting on the 2^n-dimensional
//! solution space, in the basis ordered by the little-endian index
//! order (for n = 3: e_000, e_100, e_010, e_110, e_001, e_101, e_011,
//! e_111). The tensor convention has the LEFT factor varying fastest;
//! see [`crate::linalg::kron_paper`].

use std::sync::Arc;

use num::integer::lcm;
use num::{BigInt, One, ToPrimitive, Zero};

use crate::cyclotomic::{field_create, from_root_power, CycField, CycNum, Rational};
use crate::error::Result;
use crate::linalg::{kron_paper, CycMatrix};

/// Multi-index I = (i_1, ..., i_n) with entries in {0, 1}.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndexI {
    pub bits: Vec<u8>,
}

impl IndexI {
    pub fn from_rank(n: usize, rank: usize) -> Self {
        IndexI {
            bits: (0..n).map(|k| ((rank >> k) & 1) as u8).collect(),
        }
    }

    /// Position of this index in the basis order: sum of i_k * 2^(k-1).
    pub fn rank(&self) -> usize {
        self.bits
            .iter()
            .enumerate()
            .map(|(k, &b)| (b as usize) << k)
            .sum()
    }

    pub fn weight(&self) -> usize {
        self.bits.iter().filter(|&&b| b == 1).count()
    }
}

/// Exact exponentials of the rational parameters: alpha = e^(2 pi i a)
/// and so on, realized as powers of zeta_N.
#[derive(Debug, Clone)]
pub struct ParamSet {
    pub n: usize,
    pub a: Rational,
    pub b: Rational,
    pub c: Vec<Rational>,
    pub field: Arc<CycField>,
    pub alpha: CycNum,
    pub beta: CycNum,
    pub gamma: Vec<CycNum>,
}

/// Reduce a rational modulo 1 into [0, 1).
fn frac_part(r: &Rational) -> Rational {
    let f = r.floor();
    r - f
}

fn denom_u64(r: &Rational) -> u64 {
    r.denom().to_u64().expect("denominator fits in u64")
}

/// Zeta_N raised to N*r, for r with denominator dividing N.
pub fn unit_from_rational(field: &Arc<CycField>, r: &Rational) -> CycNum {
    let n = BigInt::from(field.order());
    let e = r * Rational::from(n);
    assert!(e.denom().is_one());
    let k = (e.numer() % BigInt::from(field.order() as i64))
        .to_i64()
        .expect("exponent fits in i64");
    from_root_power(field, k)
}

/// Build the parameter set; the field order N is the lcm of 2 and all
/// parameter denominators, so -1 and every needed root of unity exist.
pub fn params_create(n: usize, a: Rational, b: Rational, c: Vec<Rational>) -> ParamSet {
    assert!(n >= 1);
    assert_eq!(c.len(), n);
    let a = frac_part(&a);
    let b = frac_part(&b);
    let c: Vec<Rational> = c.iter().map(frac_part).collect();
    let mut order = 2u64;
    order = lcm(order, denom_u64(&a));
    order = lcm(order, denom_u64(&b));
    for ck in &c {
        order = lcm(order, denom_u64(ck));
    }
    let field = field_create(order);
    let alpha = unit_from_rational(&field, &a);
    let beta = unit_from_rational(&field, &b);
    let gamma = c.iter().map(|ck| unit_from_rational(&field, ck)).collect();
    ParamSet {
        n,
        a,
        b,
        c,
        field,
        alpha,
        beta,
        gamma,
    }
}

/// G(gamma) = [[1, -gamma^-1], [0, gamma^-1]].
pub fn g_matrix(field: &Arc<CycField>, gamma: &CycNum) -> Result<CycMatrix> {
    let ginv = gamma.inv()?;
    Ok(CycMatrix::from_rows(
        field,
        vec![
            vec![CycNum::one(field), ginv.neg()],
            vec![CycNum::zero(field), ginv],
        ],
    ))
}

/// M_k = E_2 (x) ... (x) G(gamma_k) (x) ... (x) E_2, k-th slot (1-based).
pub fn build_mk(p: &ParamSet, k: usize) -> Result<CycMatrix> {
    assert!(1 <= k && k <= p.n);
    let e2 = CycMatrix::identity(&p.field, 2);
    let mut m: Option<CycMatrix> = None;
    for slot in 1..=p.n {
        let factor = if slot == k {
            g_matrix(&p.field, &p.gamma[k - 1])?
        } else {
            e2.clone()
        };
        m = Some(match m {
            None => factor,
            Some(acc) => kron_paper(&acc, &factor)?,
        });
    }
    Ok(m.unwrap())
}

/// The I-th entry of the vector v defining M_0.
pub fn v_entry(p: &ParamSet, index: &IndexI) -> Result<CycNum> {
    let field = &p.field;
    let ab = p.alpha.mul(&p.beta)?;
    let n = p.n;
    if index.weight() == 0 {
        // (-1)^n (alpha - 1)(beta - 1) prod(gamma_k) / (alpha beta)
        let one = CycNum::one(field);
        let mut val = p.alpha.sub(&one)?.mul(&p.beta.sub(&one)?)?;
        for g in &p.gamma {
            val = val.mul(g)?;
        }
        val = val.div(&ab)?;
        if n % 2 == 1 {
            val = val.neg();
        }
        Ok(val)
    } else {
        let w = index.weight();
        // prod gamma_k^(i_k) and prod gamma_k^(1 - i_k)
        let mut prod_in = CycNum::one(field);
        let mut prod_out = CycNum::one(field);
        for (k, g) in p.gamma.iter().enumerate() {
            if index.bits[k] == 1 {
                prod_in = prod_in.mul(g)?;
            } else {
                prod_out = prod_out.mul(g)?;
            }
        }
        let signed = if w % 2 == 0 {
            prod_in
        } else {
            prod_in.neg()
        };
        let mut val = ab.add(&signed)?.mul(&prod_out)?.div(&ab)?;
        if (n + w) % 2 == 1 {
            val = val.neg();
        }
        Ok(val)
    }
}

/// M_0 = E - (matrix whose only nonzero row is the last, equal to v).
pub fn build_m0(p: &ParamSet) -> Result<CycMatrix> {
    let dim = 1usize << p.n;
    let mut m = CycMatrix::identity(&p.field, dim);
    for rank in 0..dim {
        let idx = IndexI::from_rank(p.n, rank);
        let v = v_entry(p, &idx)?;
        let cur = m.get(dim - 1, rank).sub(&v)?;
        m.set(dim - 1, rank, cur);
    }
    Ok(m)
}

/// delta_0 = (-1)^(n+1) gamma_1...gamma_n / (alpha beta), the special
/// eigenvalue of M_0 (and its determinant).
pub fn delta0(p: &ParamSet) -> Result<CycNum> {
    let mut prod = CycNum::one(&p.field);
    for g in &p.gamma {
        prod = prod.mul(g)?;
    }
    let mut d = prod.div(&p.alpha.mul(&p.beta)?)?;
    if p.n % 2 == 0 {
        d = d.neg();
    }
    Ok(d)
}

/// The full representation: M_0 plus M_1..M_n and delta_0.
#[derive(Debug, Clone)]
pub struct MonodromyRep {
    pub params: ParamSet,
    pub m0: CycMatrix,
    pub mk: Vec<CycMatrix>,
    pub delta0: CycNum,
}

pub fn build_rep(p: &ParamSet) -> Result<MonodromyRep> {
    let m0 = build_m0(p)?;
    let mk = (1..=p.n).map(|k| build_mk(p, k)).collect::<Result<_>>()?;
    let delta0 = delta0(p)?;
    Ok(MonodromyRep {
        params: p.clone(),
        m0,
        mk,
        delta0,
    })
}

/// Check the defining relations of the fundamental group on the
/// representation matrices:
/// - M_i M_j = M_j M_i for i, j >= 1,
/// - (M_0 M_k)^2 = (M_k M_0)^2,
/// - for n >= 3, conjugates of M_0 by products over disjoint nonempty
///   index sets I, J with |I| + |J| <= n - 1 commute.
pub fn check_relations(p: &ParamSet) -> Result<bool> {
    let rep = build_rep(p)?;
    let n = p.n;
    for i in 0..n {
        for j in i + 1..n {
            let ij = rep.mk[i].mat_mul(&rep.mk[j])?;
            let ji = rep.mk[j].mat_mul(&rep.mk[i])?;
            if ij != ji {
                return Ok(false);
            }
        }
    }
    if n >= 2 {
        // for n = 1 the fundamental group is free, so no relations apply
        for k in 0..n {
            let a = rep.m0.mat_mul(&rep.mk[k])?;
            let b = rep.mk[k].mat_mul(&rep.m0)?;
            if a.mat_mul(&a)? != b.mat_mul(&b)? {
                return Ok(false);
            }
        }
    }
    if n >= 3 {
        // enumerate disjoint nonempty subsets I, J of {1..n} with
        // |I| + |J| <= n - 1
        let subsets: Vec<u32> = (1u32..(1 << n)).collect();
        for &si in &subsets {
            for &sj in &subsets {
                if si & sj != 0 {
                    continue;
                }
                let total = si.count_ones() + sj.count_ones();
                if total as usize > n - 1 {
                    continue;
                }
                let conj = |s: u32| -> Result<CycMatrix> {
                    let mut prod = CycMatrix::identity(&p.field, 1 << n);
                    for k in 0..n {
                        if s & (1 << k) != 0 {
                            prod = prod.mat_mul(&rep.mk[k])?;
                        }
                    }
                    prod.mat_mul(&rep.m0)?.mat_mul(&prod.mat_inv()?)
                };
                let ci = conj(si)?;
                let cj = conj(sj)?;
                if ci.mat_mul(&cj)? != cj.mat_mul(&ci)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// True when r is congruent to 1/2 modulo 1.
pub fn is_half(r: &Rational) -> bool {
    let two = BigInt::from(2);
    frac_part(r) == Rational::new(BigInt::one(), two)
}

/// Sign-aware frac helper re-exported for the classifier.
pub fn normalize_mod_one(r: &Rational) -> Rational {
    frac_part(r)
}

/// True iff the rational is an integer (gamma = 1 after exponential).
pub fn is_integer(r: &Rational) -> bool {
    frac_part(r).is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::rat;

    fn ps(n: usize, a: (i64, i64), b: (i64, i64), c: &[(i64, i64)]) -> ParamSet {
        params_create(
            n,
            rat(a.0, a.1),
            rat(b.0, b.1),
            c.iter().map(|&(p, q)| rat(p, q)).collect(),
        )
    }

    #[test]
    fn params_examples() {
        let p = ps(1, (1, 2), (1, 2), &[(1, 2)]);
        assert_eq!(p.field.order(), 2);
        assert!(p.alpha.is_minus_one());
        assert!(p.beta.is_minus_one());
        assert!(p.gamma[0].is_minus_one());

        let p = ps(2, (1, 3), (2, 3), &[(1, 2), (1, 2)]);
        assert_eq!(p.field.order(), 6);
        assert_eq!(p.alpha, from_root_power(&p.field, 2)); // zeta_3
        assert_eq!(p.beta, from_root_power(&p.field, 4)); // zeta_3^2
        assert!(p.gamma[0].is_minus_one());
        assert!(p.gamma[1].is_minus_one());

        let p = ps(3, (1, 4), (3, 4), &[(1, 2), (1, 2), (1, 2)]);
        let ba = p.beta.div(&p.alpha).unwrap();
        assert!(ba.is_minus_one());
    }

    #[test]
    fn index_order_matches_display() {
        let expect = [
            [0, 0, 0],
            [1, 0, 0],
            [0, 1, 0],
            [1, 1, 0],
            [0, 0, 1],
            [1, 0, 1],
            [0, 1, 1],
            [1, 1, 1],
        ];
        for (rank, bits) in expect.iter().enumerate() {
            let idx = IndexI::from_rank(3, rank);
            assert_eq!(idx.bits, bits.to_vec());
            assert_eq!(idx.rank(), rank);
        }
    }

    #[test]
    fn mk_matches_displayed_n2_matrices() {
        let p = ps(2, (1, 3), (2, 3), &[(1, 3), (1, 2)]);
        let g1inv = p.gamma[0].inv().unwrap();
        let g2inv = p.gamma[1].inv().unwrap();
        let f = &p.field;
        let o = CycNum::one(f);
        let z = CycNum::zero(f);

        let m1 = build_mk(&p, 1).unwrap();
        let expect1 = CycMatrix::from_rows(
            f,
            vec![
                vec![o.clone(), g1inv.neg(), z.clone(), z.clone()],
                vec![z.clone(), g1inv.clone(), z.clone(), z.clone()],
                vec![z.clone(), z.clone(), o.clone(), g1inv.neg()],
                vec![z.clone(), z.clone(), z.clone(), g1inv.clone()],
            ],
        );
        assert_eq!(m1, expect1);

        let m2 = build_mk(&p, 2).unwrap();
        let expect2 = CycMatrix::from_rows(
            f,
            vec![
                vec![o.clone(), z.clone(), g2inv.neg(), z.clone()],
                vec![z.clone(), o.clone(), z.clone(), g2inv.neg()],
                vec![z.clone(), z.clone(), g2inv.clone(), z.clone()],
                vec![z.clone(), z.clone(), z.clone(), g2inv.clone()],
            ],
        );
        assert_eq!(m2, expect2);
    }

    #[test]
    fn mk_n1_with_gamma_minus_one() {
        let p = ps(1, (1, 3), (2, 3), &[(1, 2)]);
        let m = build_mk(&p, 1).unwrap();
        let f = &p.field;
        let expect = CycMatrix::from_rows(
            f,
            vec![
                vec![CycNum::one(f), CycNum::one(f)],
                vec![CycNum::zero(f), CycNum::from_int(f, -1)],
            ],
        );
        assert_eq!(m, expect);
    }

    #[test]
    fn m0_matches_displayed_n2_matrix() {
        let p = ps(2, (1, 5), (2, 5), &[(1, 3), (1, 4)]);
        let f = &p.field;
        let m0 = build_m0(&p).unwrap();
        let one = CycNum::one(f);
        let ab = p.alpha.mul(&p.beta).unwrap();
        let g1 = &p.gamma[0];
        let g2 = &p.gamma[1];
        // row 3 of the displayed 4x4 M_0
        let e30 = p
            .alpha
            .sub(&one)
            .unwrap()
            .mul(&p.beta.sub(&one).unwrap())
            .unwrap()
            .mul(g1)
            .unwrap()
            .mul(g2)
            .unwrap()
            .div(&ab)
            .unwrap()
            .neg();
        let e31 = ab.sub(g1).unwrap().mul(g2).unwrap().div(&ab).unwrap();
        let e32 = ab.sub(g2).unwrap().mul(g1).unwrap().div(&ab).unwrap();
        let e33 = g1.mul(g2).unwrap().div(&ab).unwrap().neg();
        assert_eq!(m0.get(3, 0), &e30);
        assert_eq!(m0.get(3, 1), &e31);
        assert_eq!(m0.get(3, 2), &e32);
        assert_eq!(m0.get(3, 3), &e33);
        for i in 0..3 {
            for j in 0..4 {
                if i == j {
                    assert!(m0.get(i, j).is_one());
                } else {
                    assert!(m0.get(i, j).is_zero());
                }
            }
        }
        // rank(M_0 - E) = 1
        let e = CycMatrix::identity(f, 4);
        assert_eq!(m0.sub(&e).unwrap().mat_rank(), 1);
        // delta_0 = det(M_0) = eigenvalue on e_{1,1}
        let d = delta0(&p).unwrap();
        assert_eq!(m0.mat_det(), d);
        assert_eq!(&d, &e33);
    }

    #[test]
    fn m0_n1_special_case() {
        // beta = -alpha, gamma = alpha^2 gives M_0 = [[1,0],[gamma-1,-1]]
        let p = ps(1, (1, 3), (5, 6), &[(2, 3)]);
        assert_eq!(p.beta, p.alpha.neg());
        assert_eq!(p.gamma[0], p.alpha.pow(2).unwrap());
        let m0 = build_m0(&p).unwrap();
        let f = &p.field;
        let gm1 = p.gamma[0].sub(&CycNum::one(f)).unwrap();
        assert!(m0.get(0, 0).is_one());
        assert!(m0.get(0, 1).is_zero());
        assert_eq!(m0.get(1, 0), &gm1);
        assert!(m0.get(1, 1).is_minus_one());
    }

    #[test]
    fn v_entry_examples() {
        let p = ps(2, (1, 5), (2, 5), &[(1, 3), (1, 4)]);
        let ab = p.alpha.mul(&p.beta).unwrap();
        let v11 = v_entry(&p, &IndexI { bits: vec![1, 1] }).unwrap();
        assert_eq!(
            v11,
            ab.add(&p.gamma[0].mul(&p.gamma[1]).unwrap())
                .unwrap()
                .div(&ab)
                .unwrap()
        );
        let p1 = ps(1, (1, 3), (1, 4), &[(1, 5)]);
        let ab1 = p1.alpha.mul(&p1.beta).unwrap();
        let v1 = v_entry(&p1, &IndexI { bits: vec![1] }).unwrap();
        assert_eq!(v1, ab1.sub(&p1.gamma[0]).unwrap().div(&ab1).unwrap());
    }

    #[test]
    fn delta0_examples() {
        let p = ps(1, (1, 2), (1, 2), &[(1, 2)]);
        assert!(delta0(&p).unwrap().is_minus_one());
        let p = ps(2, (1, 3), (2, 3), &[(1, 2), (1, 2)]);
        let ab = p.alpha.mul(&p.beta).unwrap();
        let expect = p.gamma[0]
            .mul(&p.gamma[1])
            .unwrap()
            .div(&ab)
            .unwrap()
            .neg();
        assert_eq!(delta0(&p).unwrap(), expect);
    }

    #[test]
    fn det_and_order_of_mk() {
        let p = ps(2, (1, 5), (2, 5), &[(1, 3), (1, 2)]);
        for k in 1..=2 {
            let m = build_mk(&p, k).unwrap();
            // det(G) = gamma^-1; the other 2^(n-1) - 1 tensor slots each
            // contribute another copy of that factor
            assert_eq!(m.mat_det(), p.gamma[k - 1].pow(-2).unwrap());
            let q = p.gamma[k - 1].root_order().unwrap();
            assert!(m.mat_pow(q as i64).unwrap().is_identity());
            for e in 1..q {
                assert!(!m.mat_pow(e as i64).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn g_of_one_has_infinite_order() {
        let f = field_create(2);
        let g = g_matrix(&f, &CycNum::one(&f)).unwrap();
        let mut acc = g.clone();
        for _ in 0..50 {
            assert!(!acc.is_identity());
            acc = acc.mat_mul(&g).unwrap();
        }
    }

    #[test]
    fn relations_hold_on_random_parameters() {
        // deterministic pseudo-random rationals, n in 1..=4
        let mut state: u64 = 7;
        let mut next = move |m: u64| {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            (state >> 33) % m
        };
        for trial in 0..100 {
            let n = (trial % 4) + 1;
            let r = |next: &mut dyn FnMut(u64) -> u64| {
                let den = next(5) + 1;
                rat(next(2 * den) as i64, den as i64)
            };
            let a = r(&mut next);
            let b = r(&mut next);
            let c: Vec<_> = (0..n).map(|_| r(&mut next)).collect();
            // gamma_k = 1 makes M_k non-diagonalizable but relations
            // must still hold; only gamma_k = 0 is impossible here.
            let c = c
                .into_iter()
                .map(|ck| if ck.is_zero() { rat(1, 2) } else { ck })
                .collect();
            let p = params_create(n, a, b, c);
            assert!(check_relations(&p).unwrap(), "relations failed: {:?}", p);
        }
    }

    #[test]
    fn eigenvector_of_m0() {
        let p = ps(3, (1, 6), (5, 6), &[(1, 2), (1, 2), (1, 2)]);
        let m0 = build_m0(&p).unwrap();
        let dim = 8;
        let mut e_last = CycMatrix::zero(&p.field, dim, 1);
        e_last.set(dim - 1, 0, CycNum::one(&p.field));
        let image = m0.mat_mul(&e_last).unwrap();
        let d = delta0(&p).unwrap();
        for i in 0..dim {
            let expect = if i == dim - 1 {
                d.clone()
            } else {
                CycNum::zero(&p.field)
            };
            assert_eq!(image.get(i, 0), &expect);
        }
        let e = CycMatrix::identity(&p.field, dim);
        assert_eq!(m0.sub(&e).unwrap().mat_rank(), 1);
    }
}
