//! Finite matrix-group enumeration over cyclotomic fields.
//!
//! The engine behind all cardinality and membership results. Elements
//! are enumerated by breadth-first closure under the generators; since
//! the groups of interest are finite, each generator's inverse is one of
//! its positive powers and forward multiplication suffices.
//!
//! For speed, matrices are packed into an exact integer form: every
//! entry is written as a vector of integer coefficients over the power
//! basis of Q(zeta_N), with one shared denominator per matrix, reduced
//! so the representation is canonical. Canonical byte encodings serve
//! as set keys, so equality is exact — a hash hit is confirmed by byte
//! equality, never accepted probabilistically. Products use 128-bit
//! accumulators and report `Error::Overflow` instead of wrapping.

use std::sync::Arc;

use indexmap::IndexSet;
use num::{BigInt, One, ToPrimitive};

use crate::cyclotomic::{CycField, CycNum, Rational};
use crate::error::{Error, Result};
use crate::linalg::CycMatrix;

/// Default element cap: an order of magnitude above the largest group
/// cardinality appearing in the tables (144,000).
pub const DEFAULT_CAP: usize = 2_000_000;

/// Shared packing context: dimension, field degree, and the integer
/// reduction rows for x^m mod Phi_N (m = phi .. 2 phi - 2).
#[derive(Debug, Clone)]
pub struct PackCtx {
    field: Arc<CycField>,
    dim: usize,
    phi: usize,
    reds: Vec<Vec<i64>>,
}

impl PackCtx {
    pub fn new(field: &Arc<CycField>, dim: usize) -> Self {
        let phi = field.degree();
        let reds = (0..phi.saturating_sub(1))
            .map(|m| {
                field
                    .reduction_row(m)
                    .iter()
                    .map(|c| c.to_i64().expect("reduction coefficient fits i64"))
                    .collect()
            })
            .collect();
        PackCtx {
            field: field.clone(),
            dim,
            phi,
            reds,
        }
    }

    pub fn field(&self) -> &Arc<CycField> {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// Exact matrix: integer coefficient vectors per entry over the power
/// basis, one shared positive denominator, gcd-reduced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PackedMatrix {
    den: i64,
    coeffs: Vec<i64>, // dim * dim * phi, entry-major
}

fn gcd_i64(a: i64, b: i64) -> i64 {
    num::integer::gcd(a.unsigned_abs(), b.unsigned_abs()) as i64
}

impl PackedMatrix {
    pub fn identity(ctx: &PackCtx) -> Self {
        let mut coeffs = vec![0i64; ctx.dim * ctx.dim * ctx.phi];
        for i in 0..ctx.dim {
            coeffs[(i * ctx.dim + i) * ctx.phi] = 1;
        }
        PackedMatrix { den: 1, coeffs }
    }

    pub fn is_identity(&self, ctx: &PackCtx) -> bool {
        self == &Self::identity(ctx)
    }

    /// Pack an exact matrix. Works for any rational coefficients by
    /// pulling out the lcm of denominators; fails with `Overflow` if
    /// any value exceeds i64.
    pub fn pack(ctx: &PackCtx, m: &CycMatrix) -> Result<Self> {
        if m.rows() != ctx.dim || m.cols() != ctx.dim {
            return Err(Error::DimensionMismatch(m.rows(), m.cols(), ctx.dim, ctx.dim));
        }
        if m.field().order() != ctx.field.order() {
            return Err(Error::FieldMismatch(m.field().order(), ctx.field.order()));
        }
        let mut den = BigInt::one();
        for i in 0..ctx.dim {
            for j in 0..ctx.dim {
                for c in m.get(i, j).coeffs() {
                    den = num::integer::lcm(den, c.denom().clone());
                }
            }
        }
        let mut coeffs = Vec::with_capacity(ctx.dim * ctx.dim * ctx.phi);
        for i in 0..ctx.dim {
            for j in 0..ctx.dim {
                for c in m.get(i, j).coeffs() {
                    let v = c.numer() * (&den / c.denom());
                    coeffs.push(v.to_i64().ok_or(Error::Overflow)?);
                }
            }
        }
        let den = den.to_i64().ok_or(Error::Overflow)?;
        let mut p = PackedMatrix { den, coeffs };
        p.normalize();
        Ok(p)
    }

    /// Decode back into an exact `CycMatrix`.
    pub fn unpack(&self, ctx: &PackCtx) -> CycMatrix {
        let mut m = CycMatrix::zero(&ctx.field, ctx.dim, ctx.dim);
        let den = BigInt::from(self.den);
        for i in 0..ctx.dim {
            for j in 0..ctx.dim {
                let base = (i * ctx.dim + j) * ctx.phi;
                let poly: Vec<Rational> = (0..ctx.phi)
                    .map(|t| Rational::new(BigInt::from(self.coeffs[base + t]), den.clone()))
                    .collect();
                m.set(i, j, CycNum::from_poly(&ctx.field, &poly));
            }
        }
        m
    }

    fn normalize(&mut self) {
        let mut g = self.den;
        for &c in &self.coeffs {
            g = gcd_i64(g, c);
            if g == 1 {
                break;
            }
        }
        if g > 1 {
            self.den /= g;
            for c in self.coeffs.iter_mut() {
                *c /= g;
            }
        }
        debug_assert!(self.den > 0);
    }

    /// Matrix product with exact reduction modulo Phi_N.
    pub fn mul(&self, other: &PackedMatrix, ctx: &PackCtx) -> Result<PackedMatrix> {
        let dim = ctx.dim;
        let phi = ctx.phi;
        let conv_len = 2 * phi.max(1) - 1;
        let mut out = vec![0i64; dim * dim * phi];
        let mut conv = vec![0i128; conv_len];
        for i in 0..dim {
            for j in 0..dim {
                conv.iter_mut().for_each(|c| *c = 0);
                for k in 0..dim {
                    let a = &self.coeffs[(i * dim + k) * phi..(i * dim + k) * phi + phi];
                    let b = &other.coeffs[(k * dim + j) * phi..(k * dim + j) * phi + phi];
                    for (s, &av) in a.iter().enumerate() {
                        if av == 0 {
                            continue;
                        }
                        let av = av as i128;
                        for (t, &bv) in b.iter().enumerate() {
                            if bv != 0 {
                                conv[s + t] = conv[s + t]
                                    .checked_add(av.checked_mul(bv as i128).ok_or(Error::Overflow)?)
                                    .ok_or(Error::Overflow)?;
                            }
                        }
                    }
                }
                // fold degrees >= phi down using the reduction rows
                for m in (phi..conv_len).rev() {
                    let c = conv[m];
                    if c != 0 {
                        conv[m] = 0;
                        for (t, &r) in ctx.reds[m - phi].iter().enumerate() {
                            if r != 0 {
                                conv[t] = conv[t]
                                    .checked_add(c.checked_mul(r as i128).ok_or(Error::Overflow)?)
                                    .ok_or(Error::Overflow)?;
                            }
                        }
                    }
                }
                let base = (i * dim + j) * phi;
                for t in 0..phi {
                    out[base + t] = i64::try_from(conv[t]).map_err(|_| Error::Overflow)?;
                }
            }
        }
        let den = self
            .den
            .checked_mul(other.den)
            .ok_or(Error::Overflow)?;
        let mut p = PackedMatrix { den, coeffs: out };
        p.normalize();
        Ok(p)
    }

    /// Canonical byte key: zigzag varints of denominator then coefficients.
    pub fn encode(&self) -> Box<[u8]> {
        let mut buf = Vec::with_capacity(self.coeffs.len() + 8);
        push_varint(&mut buf, self.den);
        for &c in &self.coeffs {
            push_varint(&mut buf, c);
        }
        buf.into_boxed_slice()
    }

    pub fn decode(ctx: &PackCtx, bytes: &[u8]) -> PackedMatrix {
        let mut pos = 0;
        let den = read_varint(bytes, &mut pos);
        let n = ctx.dim * ctx.dim * ctx.phi;
        let coeffs = (0..n).map(|_| read_varint(bytes, &mut pos)).collect();
        PackedMatrix { den, coeffs }
    }
}

fn push_varint(buf: &mut Vec<u8>, v: i64) {
    let mut z = ((v << 1) ^ (v >> 63)) as u64;
    loop {
        let byte = (z & 0x7f) as u8;
        z >>= 7;
        if z == 0 {
            buf.push(byte);
            break;
        }
        buf.push(byte | 0x80);
    }
}

fn read_varint(buf: &[u8], pos: &mut usize) -> i64 {
    let mut z: u64 = 0;
    let mut shift = 0;
    loop {
        let byte = buf[*pos];
        *pos += 1;
        z |= ((byte & 0x7f) as u64) << shift;
        if byte & 0x80 == 0 {
            break;
        }
        shift += 7;
    }
    ((z >> 1) as i64) ^ -((z & 1) as i64)
}

/// Enumeration status: either the closure reached a fixpoint or the
/// element cap was exceeded (evidence of probable infiniteness, never a
/// proof — the classifier owns infiniteness claims).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupStatus {
    Complete,
    ExceededCap(usize),
}

/// An enumerated matrix group: generators, the canonical-key element
/// set, and the completion status.
#[derive(Debug, Clone)]
pub struct MatrixGroupEnum {
    generators: Vec<CycMatrix>,
    ctx: PackCtx,
    elements: IndexSet<Box<[u8]>>,
    status: GroupStatus,
}

impl MatrixGroupEnum {
    pub fn status(&self) -> &GroupStatus {
        &self.status
    }

    pub fn is_complete(&self) -> bool {
        self.status == GroupStatus::Complete
    }

    pub fn cardinality(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[CycMatrix] {
        &self.generators
    }

    pub fn ctx(&self) -> &PackCtx {
        &self.ctx
    }

    /// Exact membership: canonical-key lookup.
    pub fn is_member(&self, m: &CycMatrix) -> Result<bool> {
        if !self.is_complete() {
            return Err(Error::IncompleteEnumeration);
        }
        let key = PackedMatrix::pack(&self.ctx, m)?.encode();
        Ok(self.elements.contains(&key))
    }

    fn contains_key(&self, key: &[u8]) -> bool {
        self.elements.contains(key)
    }

    /// Iterate all elements as exact matrices (Complete groups only).
    pub fn elements(&self) -> impl Iterator<Item = CycMatrix> + '_ {
        self.elements
            .iter()
            .map(|k| PackedMatrix::decode(&self.ctx, k).unpack(&self.ctx))
    }
}

/// Breadth-first closure of the generated group, up to `cap` elements.
pub fn closure(gens: &[CycMatrix], cap: usize) -> Result<MatrixGroupEnum> {
    assert!(!gens.is_empty());
    let field = gens[0].field().clone();
    let dim = gens[0].rows();
    for g in gens {
        if g.rows() != dim || g.cols() != dim {
            return Err(Error::DimensionMismatch(g.rows(), g.cols(), dim, dim));
        }
        if g.mat_det().is_zero() {
            return Err(Error::SingularMatrix);
        }
    }
    let ctx = PackCtx::new(&field, dim);
    let packed_gens: Vec<PackedMatrix> = gens
        .iter()
        .map(|g| PackedMatrix::pack(&ctx, g))
        .collect::<Result<_>>()?;
    let mut elements: IndexSet<Box<[u8]>> = IndexSet::new();
    elements.insert(PackedMatrix::identity(&ctx).encode());
    let mut next = 0usize;
    let mut status = GroupStatus::Complete;
    'bfs: while next < elements.len() {
        let m = PackedMatrix::decode(&ctx, &elements[next]);
        next += 1;
        for g in &packed_gens {
            let prod = m.mul(g, &ctx)?;
            elements.insert(prod.encode());
            if elements.len() > cap {
                status = GroupStatus::ExceededCap(cap);
                break 'bfs;
            }
        }
    }
    Ok(MatrixGroupEnum {
        generators: gens.to_vec(),
        ctx,
        elements,
        status,
    })
}

/// Smallest normal subgroup of the group generated by `ambient_gens`
/// that contains `seed`: grow the conjugate generating set until the
/// closure is stable under conjugation by every ambient generator.
pub fn normal_closure(
    ambient_gens: &[CycMatrix],
    seed: &CycMatrix,
    cap: usize,
) -> Result<MatrixGroupEnum> {
    let mut t: Vec<CycMatrix> = vec![seed.clone()];
    loop {
        let h = closure(&t, cap)?;
        if !h.is_complete() {
            return Ok(h);
        }
        let mut grew = false;
        let mut additions: Vec<CycMatrix> = Vec::new();
        for g in ambient_gens {
            let ginv = g.mat_inv()?;
            for ti in &t {
                let conj = g.mat_mul(ti)?.mat_mul(&ginv)?;
                if !h.is_member(&conj)? {
                    additions.push(conj);
                    grew = true;
                }
            }
        }
        if !grew {
            return Ok(h);
        }
        t.extend(additions);
    }
}

/// Least q >= 1 with m^q = E, or None when q would exceed `cap`.
pub fn element_order(m: &CycMatrix, cap: usize) -> Result<Option<usize>> {
    let ctx = PackCtx::new(m.field(), m.rows());
    let packed = PackedMatrix::pack(&ctx, m)?;
    let mut acc = packed.clone();
    for q in 1..=cap {
        if acc.is_identity(&ctx) {
            return Ok(Some(q));
        }
        acc = acc.mul(&packed, &ctx)?;
    }
    Ok(None)
}

/// Elements common to two Complete enumerations over the same ambient
/// space. Generators of the result are the intersection elements.
pub fn subgroup_intersection(
    a: &MatrixGroupEnum,
    b: &MatrixGroupEnum,
) -> Result<MatrixGroupEnum> {
    if !a.is_complete() || !b.is_complete() {
        return Err(Error::IncompleteEnumeration);
    }
    if a.ctx.dim != b.ctx.dim || a.ctx.field.order() != b.ctx.field.order() {
        return Err(Error::FieldMismatch(
            a.ctx.field.order(),
            b.ctx.field.order(),
        ));
    }
    let (small, large) = if a.cardinality() <= b.cardinality() {
        (a, b)
    } else {
        (b, a)
    };
    let mut elements: IndexSet<Box<[u8]>> = IndexSet::new();
    for key in &small.elements {
        if large.contains_key(key) {
            elements.insert(key.clone());
        }
    }
    let generators: Vec<CycMatrix> = elements
        .iter()
        .map(|k| PackedMatrix::decode(&small.ctx, k).unpack(&small.ctx))
        .collect();
    Ok(MatrixGroupEnum {
        generators,
        ctx: small.ctx.clone(),
        elements,
        status: GroupStatus::Complete,
    })
}

/// Reflection-membership certificate: given Q with Q^q = E, if
/// (Q M0^j)^(qr+1) = E for some integers j, r then Q lies in the normal
/// closure of M0.
pub fn str_order_check(
    q_mat: &CycMatrix,
    m0: &CycMatrix,
    q: usize,
    j: i64,
    r: i64,
) -> Result<bool> {
    if !q_mat.mat_pow(q as i64)?.is_identity() {
        return Err(Error::PreconditionViolated(format!(
            "Q^{} is not the identity",
            q
        )));
    }
    let base = q_mat.mat_mul(&m0.mat_pow(j)?)?;
    let e = (q as i64) * r + 1;
    Ok(base.mat_pow(e)?.is_identity())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cyclotomic::{field_create, rat, CycNum};
    use crate::monodromy::{build_m0, build_mk, g_matrix, params_create, ParamSet};

    fn ps(n: usize, a: (i64, i64), b: (i64, i64), c: &[(i64, i64)]) -> ParamSet {
        params_create(
            n,
            rat(a.0, a.1),
            rat(b.0, b.1),
            c.iter().map(|&(p, q)| rat(p, q)).collect(),
        )
    }

    #[test]
    fn closure_of_identity_is_trivial() {
        let f = field_create(2);
        let e = CycMatrix::identity(&f, 2);
        let g = closure(&[e], 100).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.cardinality(), 1);
    }

    #[test]
    fn pack_round_trip() {
        let p = ps(2, (1, 5), (2, 5), &[(1, 3), (1, 2)]);
        let m0 = build_m0(&p).unwrap();
        let ctx = PackCtx::new(&p.field, 4);
        let packed = PackedMatrix::pack(&ctx, &m0).unwrap();
        assert_eq!(packed.unpack(&ctx), m0);
        let key = packed.encode();
        assert_eq!(PackedMatrix::decode(&ctx, &key), packed);
        // packed products agree with exact products
        let m1 = build_mk(&p, 1).unwrap();
        let p1 = PackedMatrix::pack(&ctx, &m1).unwrap();
        let prod = packed.mul(&p1, &ctx).unwrap();
        assert_eq!(prod.unpack(&ctx), m0.mat_mul(&m1).unwrap());
    }

    #[test]
    fn closure_m1_m2_order_six() {
        // gamma_1 = zeta_3, gamma_2 = -1: <M1, M2> = Z/3 x Z/2
        let p = ps(2, (1, 5), (2, 5), &[(1, 3), (1, 2)]);
        let m1 = build_mk(&p, 1).unwrap();
        let m2 = build_mk(&p, 2).unwrap();
        let g = closure(&[m1, m2], 1000).unwrap();
        assert!(g.is_complete());
        assert_eq!(g.cardinality(), 6);
    }

    #[test]
    fn closure_mon2_1152() {
        // Table 1 row gamma_1 = zeta_3, beta/alpha = zeta_3:
        // gamma_2 = -1, delta_0 = -1 forces alpha*beta = -gamma_1.
        // alpha^2 = -gamma_1 (beta/alpha)^(-1) = -zeta_3 zeta_3^2 = -1,
        // so alpha = zeta_4 works: a = 1/4, b = 1/4 + 1/3 = 7/12.
        let p = ps(2, (1, 4), (7, 12), &[(1, 3), (1, 2)]);
        let ba = p.beta.div(&p.alpha).unwrap();
        assert_eq!(ba.root_order(), Some(3));
        let d = crate::monodromy::delta0(&p).unwrap();
        assert!(d.is_minus_one());
        let m0 = build_m0(&p).unwrap();
        let m1 = build_mk(&p, 1).unwrap();
        let m2 = build_mk(&p, 2).unwrap();
        let mon = closure(&[m0.clone(), m1.clone(), m2.clone()], 10_000).unwrap();
        assert!(mon.is_complete());
        assert_eq!(mon.cardinality(), 1152);
        // Ref is the normal closure of M0, cardinality 192 (Table 1)
        let re = normal_closure(&[m0.clone(), m1, m2], &m0, 10_000).unwrap();
        assert!(re.is_complete());
        assert_eq!(re.cardinality(), 192);
        assert_eq!(mon.cardinality() % re.cardinality(), 0);
        assert_eq!(mon.cardinality() / re.cardinality(), 6);
    }

    #[test]
    fn normal_closure_of_identity() {
        let p = ps(1, (1, 3), (2, 3), &[(1, 2)]);
        let m0 = build_m0(&p).unwrap();
        let m1 = build_mk(&p, 1).unwrap();
        let e = CycMatrix::identity(&p.field, 2);
        let g = normal_closure(&[m0, m1], &e, 100).unwrap();
        assert_eq!(g.cardinality(), 1);
    }

    #[test]
    fn normal_closure_is_normal() {
        let p = ps(2, (1, 4), (7, 12), &[(1, 3), (1, 2)]);
        let m0 = build_m0(&p).unwrap();
        let m1 = build_mk(&p, 1).unwrap();
        let m2 = build_mk(&p, 2).unwrap();
        let ambient = [m0.clone(), m1, m2];
        let re = normal_closure(&ambient, &m0, 10_000).unwrap();
        // conjugating sampled elements stays inside
        for (i, t) in re.elements().enumerate() {
            if i % 2 != 0 {
                continue; // spot-check half the elements
            }
            for g in &ambient {
                let conj = g.mat_mul(&t).unwrap().mat_mul(&g.mat_inv().unwrap()).unwrap();
                assert!(re.is_member(&conj).unwrap());
            }
        }
    }

    #[test]
    fn element_order_examples() {
        let f = field_create(2);
        let e = CycMatrix::identity(&f, 2);
        assert_eq!(element_order(&e, 10).unwrap(), Some(1));
        // G(1) has infinite order
        let g1 = g_matrix(&f, &CycNum::one(&f)).unwrap();
        assert_eq!(element_order(&g1, 500).unwrap(), None);
        // M1 M0 in case I-2-1 style parameters: gamma = -1, beta =
        // alpha^-1, alpha a primitive 3rd root -> finite order
        let p = ps(1, (1, 3), (2, 3), &[(1, 2)]);
        let m0 = build_m0(&p).unwrap();
        let m1 = build_mk(&p, 1).unwrap();
        let m1m0 = m1.mat_mul(&m0).unwrap();
        let q = element_order(&m1m0, 100).unwrap().unwrap();
        assert!(m1m0.mat_pow(q as i64).unwrap().is_identity());
        // the minimal polynomial divides x^q - 1 with q = ord(alpha)
        assert_eq!(q % 3, 0);
    }

    #[test]
    fn intersection_examples() {
        let p = ps(2, (1, 4), (7, 12), &[(1, 3), (1, 2)]);
        let m0 = build_m0(&p).unwrap();
        let m1 = build_mk(&p, 1).unwrap();
        let m2 = build_mk(&p, 2).unwrap();
        let mon = closure(&[m0.clone(), m1.clone(), m2.clone()], 10_000).unwrap();
        let self_cap = subgroup_intersection(&mon, &mon).unwrap();
        assert_eq!(self_cap.cardinality(), mon.cardinality());

        // Lemma 5.3 case II-1: gamma_2 = -1, beta/alpha != -1,
        // delta_0 = -1, gamma_1 != -1 -> Ref meets <M1, M2> trivially
        let re = normal_closure(&[m0.clone(), m1.clone(), m2.clone()], &m0, 10_000).unwrap();
        let sub = closure(&[m1, m2], 10_000).unwrap();
        let cap = subgroup_intersection(&re, &sub).unwrap();
        assert_eq!(cap.cardinality(), 1);
    }

    #[test]
    fn str_order_check_examples() {
        let f = field_create(2);
        let e = CycMatrix::identity(&f, 2);
        assert!(str_order_check(&e, &e, 1, 0, 0).unwrap());

        // II-2-3 parameters: gamma_1 = zeta_3, gamma_2 = zeta_3^2,
        // beta/alpha = -1, delta_0 = -1. alpha*beta = gamma_1 gamma_2
        // = 1 and beta = -alpha gives alpha^2 = -1: a = 1/4, b = 3/4.
        let p = ps(2, (1, 4), (3, 4), &[(1, 3), (2, 3)]);
        assert!(p.beta.div(&p.alpha).unwrap().is_minus_one());
        assert!(crate::monodromy::delta0(&p).unwrap().is_minus_one());
        let m0 = build_m0(&p).unwrap();
        let m1 = build_mk(&p, 1).unwrap();
        let m2 = build_mk(&p, 2).unwrap();
        let q_mat = m1.mat_mul(&m2).unwrap();
        // (M1 M2 M0)^4 = E with q = 3, j = 1, r = 1
        assert!(str_order_check(&q_mat, &m0, 3, 1, 1).unwrap());

        // wrong q -> precondition violated
        assert!(matches!(
            str_order_check(&q_mat, &m0, 2, 1, 1),
            Err(Error::PreconditionViolated(_))
        ));
    }

    #[test]
    fn str_order_check_fifth_roots() {
        // (gamma_1, gamma_2) = (zeta_5, zeta_5^2) with beta/alpha = -1,
        // delta_0 = -1: alpha*beta = gamma_1 gamma_2 = zeta_5^3 and
        // alpha^2 = -zeta_5^3. With zeta_20 = e^(2 pi i/20):
        // alpha^2 = zeta_20^10 zeta_20^12 = zeta_20^22 -> alpha = zeta_20^11,
        // i.e. a = 11/20, b = a + 1/2 = 1/20 (mod 1).
        let p = ps(2, (11, 20), (1, 20), &[(1, 5), (2, 5)]);
        assert!(p.beta.div(&p.alpha).unwrap().is_minus_one());
        assert!(crate::monodromy::delta0(&p).unwrap().is_minus_one());
        let m0 = build_m0(&p).unwrap();
        let m1 = build_mk(&p, 1).unwrap();
        let m2 = build_mk(&p, 2).unwrap();
        // (M1^3 M2 M0)^6 = E with q = 5, r = 1
        let q_mat = m1.mat_pow(3).unwrap().mat_mul(&m2).unwrap();
        assert!(str_order_check(&q_mat, &m0, 5, 1, 1).unwrap());
    }

    #[test]
    fn exceeded_cap_status() {
        // gamma = 1 gives an infinite group
        let f = field_create(2);
        let g1 = g_matrix(&f, &CycNum::one(&f)).unwrap();
        let g = closure(&[g1], 50).unwrap();
        assert_eq!(*g.status(), GroupStatus::ExceededCap(50));
        assert!(matches!(
            g.is_member(&CycMatrix::identity(&f, 2)),
            Err(Error::IncompleteEnumeration)
        ));
    }

    #[test]
    fn singular_generator_rejected() {
        let f = field_create(2);
        let z = CycMatrix::zero(&f, 2, 2);
        assert!(matches!(closure(&[z], 10), Err(Error::SingularMatrix)));
    }

    #[test]
    fn varint_round_trip() {
        let mut buf = Vec::new();
        let values = [0i64, 1, -1, 63, -64, 64, 127, -128, 300, -300, i64::MAX, i64::MIN];
        for &v in &values {
            push_varint(&mut buf, v);
        }
        let mut pos = 0;
        for &v in &values {
            assert_eq!(read_varint(&buf, &mut pos), v);
        }
        assert_eq!(pos, buf.len());
    }
}
