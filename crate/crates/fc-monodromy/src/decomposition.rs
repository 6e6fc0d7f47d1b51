//! Invariant-subspace decompositions of the reflection subgroup.
//!
//! When gamma_(n-1) = gamma_n = -1 (the "red-1" setting) or gamma_n =
//! beta/alpha = -1 ("red-2"), the ambient space splits as W+ (+) W- and
//! the reflection subgroup factors as a direct product of two copies of
//! the (n-1)-variable reflection subgroup. This module materializes the
//! W+/- bases, restricts matrices to them exactly, verifies every claim
//! of the two reduction lemmas constructively, and exploits the
//! recursion for a fast exact membership test in Ref without
//! enumerating the (often huge) full group.

use serde::Serialize;
use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use crate::cyclotomic::{rat, CycField, CycNum, Rational};
use crate::error::{Error, Result};
use crate::groupkit::{closure, normal_closure, MatrixGroupEnum};
use crate::linalg::CycMatrix;
use crate::monodromy::{
    build_m0, build_mk, build_rep, params_create, IndexI, ParamSet,
};

/// Ordered basis of one of the invariant subspaces W+ or W-.
#[derive(Debug, Clone)]
pub struct SubspaceBasis {
    pub ambient_dim: usize,
    pub vectors: Vec<CycMatrix>,
    pub label: &'static str,
}

impl SubspaceBasis {
    /// Stack the basis vectors as columns of one matrix.
    pub fn as_matrix(&self, field: &Arc<CycField>) -> CycMatrix {
        let r = self.vectors.len();
        let mut m = CycMatrix::zero(field, self.ambient_dim, r);
        for (j, v) in self.vectors.iter().enumerate() {
            for i in 0..self.ambient_dim {
                m.set(i, j, v.get(i, 0).clone());
            }
        }
        m
    }

    pub fn rank(&self, field: &Arc<CycField>) -> usize {
        self.as_matrix(field).mat_rank()
    }
}

/// Tensor of column vectors in the `kron_paper` block convention (left
/// factor varies fastest): (u (x) w)[j*len(u) + i] = u[i] * w[j].
fn tensor_col(field: &Arc<CycField>, u: &[CycNum], w: &[CycNum]) -> Vec<CycNum> {
    let mut out = Vec::with_capacity(u.len() * w.len());
    for wj in w {
        for ui in u {
            out.push(ui.mul(wj).unwrap());
        }
    }
    let _ = field;
    out
}

fn col_matrix(field: &Arc<CycField>, v: Vec<CycNum>) -> CycMatrix {
    let mut m = CycMatrix::zero(field, v.len(), 1);
    for (i, x) in v.into_iter().enumerate() {
        m.set(i, 0, x);
    }
    m
}

/// Basic 2-vectors: e0, e1, and d = 2 e1 - e0.
fn e0(field: &Arc<CycField>) -> Vec<CycNum> {
    vec![CycNum::one(field), CycNum::zero(field)]
}
fn e1(field: &Arc<CycField>) -> Vec<CycNum> {
    vec![CycNum::zero(field), CycNum::one(field)]
}
fn dvec(field: &Arc<CycField>) -> Vec<CycNum> {
    vec![CycNum::from_int(field, -1), CycNum::from_int(field, 2)]
}

fn prefix_tensor(field: &Arc<CycField>, bits: &[u8]) -> Vec<CycNum> {
    let mut v = vec![CycNum::one(field)];
    for &b in bits {
        let f = if b == 0 { e0(field) } else { e1(field) };
        v = tensor_col(field, &v, &f);
    }
    v
}

fn add_vecs(a: &[CycNum], b: &[CycNum], sign: i64) -> Vec<CycNum> {
    a.iter()
        .zip(b)
        .map(|(x, y)| {
            if sign >= 0 {
                x.add(y).unwrap()
            } else {
                x.sub(y).unwrap()
            }
        })
        .collect()
}

/// True when the red-1 hypothesis gamma_(n-1) = gamma_n = -1 holds.
pub fn red1_applies(p: &ParamSet) -> bool {
    p.n >= 2 && p.gamma[p.n - 2].is_minus_one() && p.gamma[p.n - 1].is_minus_one()
}

/// True when the red-2 hypothesis gamma_n = beta alpha^-1 = -1 holds.
pub fn red2_applies(p: &ParamSet) -> bool {
    p.n >= 2
        && p.gamma[p.n - 1].is_minus_one()
        && p.beta.div(&p.alpha).map(|v| v.is_minus_one()).unwrap_or(false)
}

/// Parameters of the (n-1)-variable factor in the red-1 decomposition:
/// gamma' = (gamma_1, ..., gamma_(n-2), -1).
pub fn reduced_params_red1(p: &ParamSet) -> ParamSet {
    let mut c: Vec<Rational> = p.c[..p.n - 2].to_vec();
    c.push(rat(1, 2));
    params_create(p.n - 1, p.a.clone(), p.b.clone(), c)
}

/// Parameters of the (n-1)-variable factor in the red-2 decomposition:
/// gamma' = (gamma_1, ..., gamma_(n-1)).
pub fn reduced_params_red2(p: &ParamSet) -> ParamSet {
    params_create(p.n - 1, p.a.clone(), p.b.clone(), p.c[..p.n - 1].to_vec())
}

/// Bases of W+ and W- in the red-1 setting, ordered by the index order
/// on (i_1, ..., i_(n-1)). The vectors are the re-based f~ family:
/// f~ = f14 when i_(n-1) = 0, (f14 + f23)/2 when i_(n-1) = 1.
pub fn basis_red1(p: &ParamSet) -> Result<(SubspaceBasis, SubspaceBasis)> {
    if !red1_applies(p) {
        return Err(Error::PreconditionViolated(
            "basis_red1 needs gamma_(n-1) = gamma_n = -1".into(),
        ));
    }
    let field = &p.field;
    let n = p.n;
    let dim = 1 << n;
    let half = rat(1, 2);
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for rank in 0..(1 << (n - 1)) {
        let idx = IndexI::from_rank(n - 1, rank);
        let prefix = &idx.bits[..n - 2];
        let last = idx.bits[n - 2];
        let pre = prefix_tensor(field, prefix);
        let g00 = tensor_col(field, &tensor_col(field, &pre, &e0(field)), &e0(field));
        let g10 = tensor_col(field, &tensor_col(field, &pre, &dvec(field)), &e0(field));
        let g01 = tensor_col(field, &tensor_col(field, &pre, &e0(field)), &dvec(field));
        let g11 = tensor_col(field, &tensor_col(field, &pre, &dvec(field)), &dvec(field));
        for (sign, out) in [(1i64, &mut plus), (-1i64, &mut minus)] {
            let f14 = add_vecs(&g00, &g11, sign);
            let f23 = add_vecs(&g10, &g01, sign);
            let v = if last == 0 {
                f14
            } else {
                add_vecs(&f14, &f23, 1)
                    .into_iter()
                    .map(|x| x.scale(&half))
                    .collect()
            };
            out.push(col_matrix(field, v));
        }
    }
    Ok((
        SubspaceBasis {
            ambient_dim: dim,
            vectors: plus,
            label: "W+",
        },
        SubspaceBasis {
            ambient_dim: dim,
            vectors: minus,
            label: "W-",
        },
    ))
}

/// Bases of W+ and W- in the red-2 setting: f12(+/-) vectors ordered by
/// the index order on (i_1, ..., i_(n-1)).
pub fn basis_red2(p: &ParamSet) -> Result<(SubspaceBasis, SubspaceBasis)> {
    if !red2_applies(p) {
        return Err(Error::PreconditionViolated(
            "basis_red2 needs gamma_n = beta alpha^-1 = -1".into(),
        ));
    }
    let field = &p.field;
    let n = p.n;
    let dim = 1 << n;
    let mut plus = Vec::new();
    let mut minus = Vec::new();
    for rank in 0..(1 << (n - 1)) {
        let idx = IndexI::from_rank(n - 1, rank);
        let pre = prefix_tensor(field, &idx.bits);
        let h0 = tensor_col(field, &pre, &e0(field));
        let h1 = tensor_col(field, &pre, &dvec(field));
        plus.push(col_matrix(field, add_vecs(&h0, &h1, 1)));
        minus.push(col_matrix(field, add_vecs(&h0, &h1, -1)));
    }
    Ok((
        SubspaceBasis {
            ambient_dim: dim,
            vectors: plus,
            label: "W+",
        },
        SubspaceBasis {
            ambient_dim: dim,
            vectors: minus,
            label: "W-",
        },
    ))
}

/// Representation matrix R of `m` on the span of `basis`: the unique
/// solution of m * B = B * R, computed by exact elimination. Returns
/// `NotInvariant` when the image leaves the span.
pub fn restrict_action(m: &CycMatrix, basis: &SubspaceBasis) -> Result<CycMatrix> {
    let field = m.field();
    let b = basis.as_matrix(field);
    let mb = m.mat_mul(&b)?;
    let r = b.cols();
    // pick r independent rows of B by elimination
    let mut work = b.clone();
    let mut pivot_rows = Vec::with_capacity(r);
    let mut used = vec![false; b.rows()];
    for col in 0..r {
        let mut pivot = None;
        for row in 0..b.rows() {
            if !used[row] && !work.get(row, col).is_zero() {
                pivot = Some(row);
                break;
            }
        }
        let pivot = pivot.ok_or(Error::SingularMatrix)?;
        used[pivot] = true;
        pivot_rows.push(pivot);
        let pinv = work.get(pivot, col).inv()?;
        for row in 0..b.rows() {
            if row != pivot && !work.get(row, col).is_zero() {
                let f = work.get(row, col).mul(&pinv)?;
                for j in 0..r {
                    let t = work.get(pivot, j).mul(&f)?;
                    let v = work.get(row, j).sub(&t)?;
                    work.set(row, j, v);
                }
            }
        }
    }
    let take_rows = |src: &CycMatrix| {
        let mut out = CycMatrix::zero(field, r, r);
        for (i, &row) in pivot_rows.iter().enumerate() {
            for j in 0..r {
                out.set(i, j, src.get(row, j).clone());
            }
        }
        out
    };
    let rep = take_rows(&b).solve(&take_rows(&mb))?;
    // confirm invariance on every row, not just the pivots
    if b.mat_mul(&rep)? != mb {
        return Err(Error::NotInvariant);
    }
    Ok(rep)
}

/// One named assertion in a lemma-verification report.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

/// Constructive verification report for one reduction lemma.
#[derive(Debug, Clone, Serialize)]
pub struct DecompositionReport {
    pub lemma: String,
    pub checks: Vec<CheckResult>,
    pub cardinalities: BTreeMap<String, usize>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    fn check(&mut self, name: &str, pass: bool, detail: String) {
        self.checks.push(CheckResult {
            name: name.to_string(),
            pass,
            detail,
        });
    }

    fn check_eq(&mut self, name: &str, got: &CycMatrix, expect: &CycMatrix) {
        let pass = got == expect;
        self.check(
            name,
            pass,
            if pass {
                "matrices equal".into()
            } else {
                "matrices differ".into()
            },
        );
    }
}

/// Reflection subgroup of the parameter set: normal closure of M0 in
/// Mon, with all generators embedded into `field` (which the parameter
/// field must divide).
pub fn reflection_subgroup(
    p: &ParamSet,
    field: &Arc<CycField>,
    cap: usize,
) -> Result<MatrixGroupEnum> {
    let rep = build_rep(p)?;
    let mut gens: Vec<CycMatrix> = vec![rep.m0.embed(field)?];
    for m in &rep.mk {
        gens.push(m.embed(field)?);
    }
    let seed = gens[0].clone();
    normal_closure(&gens, &seed, cap)
}

fn verify_common(
    report: &mut DecompositionReport,
    p: &ParamSet,
    reduced: &ParamSet,
    plus: &SubspaceBasis,
    minus: &SubspaceBasis,
    cap: usize,
) -> Result<()> {
    let field = &p.field;
    let half_dim = 1 << (p.n - 1);
    report.check(
        "w_plus_dimension",
        plus.rank(field) == half_dim,
        format!("rank {} of {}", plus.rank(field), half_dim),
    );
    report.check(
        "w_minus_dimension",
        minus.rank(field) == half_dim,
        format!("rank {} of {}", minus.rank(field), half_dim),
    );
    // W+ (+) W- spans everything
    let mut stacked = CycMatrix::zero(field, 1 << p.n, 1 << p.n);
    for (j, v) in plus.vectors.iter().chain(minus.vectors.iter()).enumerate() {
        for i in 0..(1 << p.n) {
            stacked.set(i, j, v.get(i, 0).clone());
        }
    }
    report.check(
        "direct_sum",
        stacked.mat_rank() == 1 << p.n,
        format!("stacked rank {}", stacked.mat_rank()),
    );

    // cardinality identity |Ref^(n)| = |Ref^(n-1)|^2
    let ref_n = reflection_subgroup(p, field, cap)?;
    let ref_n1 = reflection_subgroup(reduced, &reduced.field, cap)?;
    let complete = ref_n.is_complete() && ref_n1.is_complete();
    report.check(
        "cardinality_product",
        complete && ref_n.cardinality() == ref_n1.cardinality() * ref_n1.cardinality(),
        format!(
            "|Ref(n)| = {} vs |Ref(n-1)|^2 = {}^2",
            ref_n.cardinality(),
            ref_n1.cardinality()
        ),
    );
    report
        .cardinalities
        .insert("ref_n".into(), ref_n.cardinality());
    report
        .cardinalities
        .insert("ref_n_minus_1".into(), ref_n1.cardinality());
    Ok(())
}

/// Verify every claim of the red-1 decomposition lemma.
pub fn verify_red1(p: &ParamSet, cap: usize) -> Result<DecompositionReport> {
    let mut report = DecompositionReport {
        lemma: "red1".into(),
        checks: Vec::new(),
        cardinalities: BTreeMap::new(),
    };
    let (plus, minus) = basis_red1(p)?;
    let reduced = reduced_params_red1(p);
    let field = &p.field;
    let n = p.n;
    verify_common(&mut report, p, &reduced, &plus, &minus, cap)?;

    let rep = build_rep(p)?;
    let m0 = &rep.m0;
    let mn = &rep.mk[n - 1];
    let mn1 = &rep.mk[n - 2];
    let red_rep = build_rep(&reduced)?;
    let e_half = CycMatrix::identity(field, 1 << (n - 1));

    // M_k (k <= n-2) restricts to M_k^(n-1) on both subspaces
    for k in 1..=n.saturating_sub(2) {
        let expect = red_rep.mk[k - 1].embed(field)?;
        for basis in [&plus, &minus] {
            let got = restrict_action(&rep.mk[k - 1], basis)?;
            report.check_eq(&format!("restrict_m{}_{}", k, basis.label), &got, &expect);
        }
    }
    // M_(n-1) M_n restricts to M_(n-1)^(n-1)
    let mprod = mn1.mat_mul(mn)?;
    let expect = red_rep.mk[n - 2].embed(field)?;
    for basis in [&plus, &minus] {
        let got = restrict_action(&mprod, basis)?;
        report.check_eq(
            &format!("restrict_m(n-1)m(n)_{}", basis.label),
            &got,
            &expect,
        );
    }
    // M_0 on W+ and M_n M_0 M_n^-1 on W- give M_0^(n-1)
    let expect_m0 = red_rep.m0.embed(field)?;
    let got = restrict_action(m0, &plus)?;
    report.check_eq("restrict_m0_W+", &got, &expect_m0);
    let conj_n = mn.mat_mul(m0)?.mat_mul(&mn.mat_inv()?)?;
    let got = restrict_action(&conj_n, &minus)?;
    report.check_eq("restrict_mn_m0_mn_W-", &got, &expect_m0);

    // trivial actions
    let conj_prod = mprod.mat_mul(m0)?.mat_mul(&mprod.mat_inv()?)?;
    let conj_n1 = mn1.mat_mul(m0)?.mat_mul(&mn1.mat_inv()?)?;
    report.check_eq("m0_trivial_W-", &restrict_action(m0, &minus)?, &e_half);
    report.check_eq(
        "conj_prod_trivial_W-",
        &restrict_action(&conj_prod, &minus)?,
        &e_half,
    );
    report.check_eq(
        "conj_n_trivial_W+",
        &restrict_action(&conj_n, &plus)?,
        &e_half,
    );
    report.check_eq(
        "conj_n1_trivial_W+",
        &restrict_action(&conj_n1, &plus)?,
        &e_half,
    );
    Ok(report)
}

/// Verify every claim of the red-2 decomposition lemma.
pub fn verify_red2(p: &ParamSet, cap: usize) -> Result<DecompositionReport> {
    let mut report = DecompositionReport {
        lemma: "red2".into(),
        checks: Vec::new(),
        cardinalities: BTreeMap::new(),
    };
    let (plus, minus) = basis_red2(p)?;
    let reduced = reduced_params_red2(p);
    let field = &p.field;
    let n = p.n;
    verify_common(&mut report, p, &reduced, &plus, &minus, cap)?;

    let rep = build_rep(p)?;
    let m0 = &rep.m0;
    let mn = &rep.mk[n - 1];
    let red_rep = build_rep(&reduced)?;
    let e_half = CycMatrix::identity(field, 1 << (n - 1));

    // M_k (k <= n-1) restricts to M_k^(n-1) on both subspaces
    for k in 1..=n - 1 {
        let expect = red_rep.mk[k - 1].embed(field)?;
        for basis in [&plus, &minus] {
            let got = restrict_action(&rep.mk[k - 1], basis)?;
            report.check_eq(&format!("restrict_m{}_{}", k, basis.label), &got, &expect);
        }
    }
    // M_0 on W+ and M_n M_0 M_n^-1 on W- give M_0^(n-1)
    let expect_m0 = red_rep.m0.embed(field)?;
    report.check_eq("restrict_m0_W+", &restrict_action(m0, &plus)?, &expect_m0);
    let conj_n = mn.mat_mul(m0)?.mat_mul(&mn.mat_inv()?)?;
    report.check_eq(
        "restrict_mn_m0_mn_W-",
        &restrict_action(&conj_n, &minus)?,
        &expect_m0,
    );
    // trivial actions
    report.check_eq("m0_trivial_W-", &restrict_action(m0, &minus)?, &e_half);
    report.check_eq(
        "conj_n_trivial_W+",
        &restrict_action(&conj_n, &plus)?,
        &e_half,
    );
    // M_n swaps the W+ and W- bases elementwise
    let mut swap_ok = true;
    for (vp, vm) in plus.vectors.iter().zip(&minus.vectors) {
        if &mn.mat_mul(vp)? != vm || &mn.mat_mul(vm)? != vp {
            swap_ok = false;
        }
    }
    report.check("mn_swaps_bases", swap_ok, "M_n f+/- = f-/+".into());

    // the (0,...,0) entry identity -lambda_0...0 = v^(n-1)_0...0,
    // which uses alpha + beta = 0
    let ab = p.alpha.mul(&p.beta)?;
    let mut prod = CycNum::one(field);
    for g in &p.gamma[..n - 1] {
        prod = prod.mul(g)?;
    }
    let mut lambda00 = ab.add(&CycNum::one(field))?.mul(&prod)?.div(&ab)?;
    if n % 2 == 1 {
        lambda00 = lambda00.neg();
    }
    let v00 = crate::monodromy::v_entry(
        &reduced,
        &IndexI {
            bits: vec![0; n - 1],
        },
    )?
    .embed(field)?;
    report.check(
        "lambda_zero_identity",
        lambda00.neg() == v00,
        "-lambda_(0..0) = v^(n-1)_(0..0)".into(),
    );
    Ok(report)
}

/// Exact membership test in Ref without enumerating Ref itself when a
/// reduction lemma applies: an element lies in Ref = R+ x R- iff it
/// preserves both W+ and W- and each restriction lies in the
/// (n-1)-variable reflection subgroup. Assumes the irreducibility
/// condition, under which the direct-product decompositions hold.
pub fn ref_contains(p: &ParamSet, m: &CycMatrix, cap: usize) -> Result<bool> {
    if p.n >= 2 && red2_applies(p) {
        let (plus, minus) = basis_red2(p)?;
        let reduced = reduced_params_red2(p);
        return ref_contains_via(&reduced, m, &plus, &minus, cap);
    }
    if p.n >= 2 && red1_applies(p) {
        let (plus, minus) = basis_red1(p)?;
        let reduced = reduced_params_red1(p);
        return ref_contains_via(&reduced, m, &plus, &minus, cap);
    }
    let re = reflection_subgroup_cached(p, m.field(), cap)?;
    re.is_member(m)
}

type RefCacheKey = (usize, Rational, Rational, Vec<Rational>, u64);

fn ref_cache() -> &'static Mutex<HashMap<RefCacheKey, Arc<MatrixGroupEnum>>> {
    static CACHE: OnceLock<Mutex<HashMap<RefCacheKey, Arc<MatrixGroupEnum>>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Cached variant of `reflection_subgroup` for the base cases of the
/// membership recursion; only complete enumerations are cached.
pub fn reflection_subgroup_cached(
    p: &ParamSet,
    field: &Arc<CycField>,
    cap: usize,
) -> Result<Arc<MatrixGroupEnum>> {
    let key = (
        p.n,
        p.a.clone(),
        p.b.clone(),
        p.c.clone(),
        field.order(),
    );
    if let Some(hit) = ref_cache().lock().unwrap().get(&key) {
        if hit.is_complete() || hit.cardinality() >= cap {
            return Ok(hit.clone());
        }
    }
    let re = Arc::new(reflection_subgroup(p, field, cap)?);
    if re.is_complete() {
        ref_cache().lock().unwrap().insert(key, re.clone());
    }
    Ok(re)
}

fn ref_contains_via(
    reduced: &ParamSet,
    m: &CycMatrix,
    plus: &SubspaceBasis,
    minus: &SubspaceBasis,
    cap: usize,
) -> Result<bool> {
    let rp = match restrict_action(m, plus) {
        Ok(r) => r,
        Err(Error::NotInvariant) => return Ok(false),
        Err(e) => return Err(e),
    };
    let rm = match restrict_action(m, minus) {
        Ok(r) => r,
        Err(Error::NotInvariant) => return Ok(false),
        Err(e) => return Err(e),
    };
    Ok(ref_contains(reduced, &rp, cap)? && ref_contains(reduced, &rm, cap)?)
}

/// Cardinality of Ref computed through the decomposition recursion:
/// |Ref^(n)| = |Ref^(n-1)|^2 whenever a lemma applies, enumerating only
/// at the base of the recursion.
pub fn ref_cardinality(p: &ParamSet, cap: usize) -> Result<Option<usize>> {
    if p.n >= 2 && red2_applies(p) {
        let r = ref_cardinality(&reduced_params_red2(p), cap)?;
        return Ok(r.map(|x| x * x));
    }
    if p.n >= 2 && red1_applies(p) {
        let r = ref_cardinality(&reduced_params_red1(p), cap)?;
        return Ok(r.map(|x| x * x));
    }
    let re = reflection_subgroup(p, &p.field, cap)?;
    Ok(if re.is_complete() {
        Some(re.cardinality())
    } else {
        None
    })
}

/// Mon = Ref . <M_1 .. M_n>; the generated subgroup of the M_k's.
pub fn mk_subgroup(p: &ParamSet, cap: usize) -> Result<MatrixGroupEnum> {
    let gens: Vec<CycMatrix> = (1..=p.n).map(|k| build_mk(p, k)).collect::<Result<_>>()?;
    closure(&gens, cap)
}

/// Sanity export used by tests: build M0 once.
pub fn m0_of(p: &ParamSet) -> Result<CycMatrix> {
    build_m0(p)
}
