//! Classical parameters, intersection arrays and the negative-type
//! hypothesis filter.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::ops::RangeInclusive;

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::exactla::{fmt_rat, integer_spectrum, is_integer, rat, RatMatrix};
use crate::{Error, Rat, Result};

/// `[j] = 1 + b + ... + b^(j-1)`.
pub fn gauss_bracket(j: u32, b: i64) -> BigInt {
    let b = BigInt::from(b);
    let mut sum = BigInt::zero();
    let mut pw = BigInt::one();
    for _ in 0..j {
        sum += &pw;
        pw *= &b;
    }
    sum
}

fn bracket(j: usize, b: i64) -> Rat {
    Rat::from_integer(gauss_bracket(j as u32, b))
}

/// `(D, b, alpha, beta)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ClassicalParameters {
    pub d: usize,
    pub b: i64,
    pub alpha: Rat,
    pub beta: Rat,
}

impl ClassicalParameters {
    pub fn new(d: usize, b: i64, alpha: Rat, beta: Rat) -> Result<Self> {
        if d == 0 {
            return Err(Error::InvalidParameters("diameter D must be at least 1".into()));
        }
        if b == 0 || b == -1 {
            return Err(Error::InvalidParameters(format!("b ∉ {{0,−1}} violated (b = {b})")));
        }
        Ok(Self { d, b, alpha, beta })
    }

    pub fn c(&self, i: usize) -> Rat {
        bracket(i, self.b) * (Rat::one() + &self.alpha * bracket(i.saturating_sub(1), self.b))
    }

    pub fn b_at(&self, i: usize) -> Rat {
        (bracket(self.d, self.b) - bracket(i, self.b)) * (&self.beta - &self.alpha * bracket(i, self.b))
    }
}

/// Intersection numbers of a distance-regular graph or a parameter set.
///
/// `c`, `a` and `b` are indexed `0..=D` with the conventions `c[0] = 0` and
/// `b[D] = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntersectionArray {
    pub d: usize,
    pub c: Vec<Rat>,
    pub a: Vec<Rat>,
    pub b: Vec<Rat>,
    pub k: Rat,
    pub k_i: Vec<Rat>,
    /// `p1[i][j] = p^1_{ij}`.
    pub p1: Vec<Vec<Rat>>,
}

fn require_integer(what: &str, v: &Rat) -> Result<()> {
    if is_integer(v) {
        Ok(())
    } else {
        Err(Error::NonIntegral { what: what.into(), value: fmt_rat(v) })
    }
}

fn require_positive(what: &str, v: &Rat) -> Result<()> {
    if v.is_positive() {
        Ok(())
    } else {
        Err(Error::NonPositive { what: what.into(), value: fmt_rat(v) })
    }
}

impl IntersectionArray {
    /// Builds the array from `b_0..b_{D-1}` and `c_1..c_D`.
    pub fn from_sequences(b_seq: &[Rat], c_seq: &[Rat]) -> Result<Self> {
        let d = b_seq.len();
        if d == 0 || c_seq.len() != d {
            return Err(Error::InvalidParameters(format!(
                "need D >= 1 values of b and c (got {} and {})",
                b_seq.len(),
                c_seq.len()
            )));
        }
        let mut c = vec![Rat::zero()];
        c.extend(c_seq.iter().cloned());
        let mut b: Vec<Rat> = b_seq.to_vec();
        b.push(Rat::zero());
        let k = b[0].clone();
        for i in 0..=d {
            if i >= 1 {
                require_integer(&format!("c_{i}"), &c[i])?;
                require_positive(&format!("c_{i}"), &c[i])?;
            }
            if i < d {
                require_integer(&format!("b_{i}"), &b[i])?;
                require_positive(&format!("b_{i}"), &b[i])?;
            }
        }
        let a: Vec<Rat> = (0..=d).map(|i| &k - &c[i] - &b[i]).collect();
        for (i, ai) in a.iter().enumerate() {
            require_integer(&format!("a_{i}"), ai)?;
            if ai.is_negative() {
                return Err(Error::NonPositive { what: format!("a_{i} (must be >= 0)"), value: fmt_rat(ai) });
            }
        }
        let mut k_i = vec![Rat::one()];
        for i in 1..=d {
            let ki = &k_i[i - 1] * &b[i - 1] / &c[i];
            require_integer(&format!("k_{i}"), &ki)?;
            k_i.push(ki);
        }
        let p1 = (0..=d)
            .map(|i| {
                (0..=d)
                    .map(|j| {
                        if j + 1 == i {
                            &c[i] * &k_i[i] / &k
                        } else if j == i {
                            &a[i] * &k_i[i] / &k
                        } else if j == i + 1 {
                            &b[i] * &k_i[i] / &k
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect()
            })
            .collect();
        Ok(Self { d, c, a, b, k, k_i, p1 })
    }

    pub fn a1(&self) -> Rat {
        self.a.get(1).cloned().unwrap_or_else(Rat::zero)
    }

    pub fn b1(&self) -> Rat {
        self.b.get(1).cloned().unwrap_or_else(Rat::zero)
    }

    /// Number of vertices, `sum k_i`.
    pub fn order(&self) -> Rat {
        self.k_i.iter().sum()
    }

    /// `c_1..c_D`.
    pub fn c_seq(&self) -> &[Rat] {
        &self.c[1..]
    }

    /// `b_0..b_{D-1}`.
    pub fn b_seq(&self) -> &[Rat] {
        &self.b[..self.d]
    }

    /// Tridiagonal matrix of `A` acting on `A_0, ..., A_D`.
    pub fn intersection_matrix(&self) -> RatMatrix {
        let d = self.d;
        RatMatrix::from_fn(d + 1, d + 1, |i, j| {
            if j + 1 == i {
                self.b[j].clone()
            } else if i == j {
                self.a[i].clone()
            } else if j == i + 1 {
                self.c[j].clone()
            } else {
                Rat::zero()
            }
        })
    }
}

pub fn classical_to_array(p: &ClassicalParameters) -> Result<IntersectionArray> {
    let b_seq: Vec<Rat> = (0..p.d).map(|i| p.b_at(i)).collect();
    let c_seq: Vec<Rat> = (1..=p.d).map(|i| p.c(i)).collect();
    IntersectionArray::from_sequences(&b_seq, &c_seq)
}

/// Sizes of the two halves of `D^i_i` for `1 <= i <= D`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartitionSizes {
    pub i: usize,
    /// `|D^i_i(1)| = a_1 c_i k_i / k`
    pub one: Rat,
    /// `|D^i_i(0)| = (a_i - a_1 c_i) k_i / k`
    pub zero: Rat,
}

pub fn partition_sizes(arr: &IntersectionArray) -> Vec<PartitionSizes> {
    let a1 = arr.a1();
    (1..=arr.d)
        .map(|i| PartitionSizes {
            i,
            one: &a1 * &arr.c[i] * &arr.k_i[i] / &arr.k,
            zero: (&arr.a[i] - &a1 * &arr.c[i]) * &arr.k_i[i] / &arr.k,
        })
        .collect()
}

/// Distinct eigenvalues of the intersection matrix, `k` first, then
/// descending.
pub fn spectrum_from_array(arr: &IntersectionArray) -> Result<Vec<Rat>> {
    let sp = integer_spectrum(&arr.intersection_matrix())?;
    let mut vals: Vec<Rat> = sp.into_iter().map(|e| e.value).collect();
    vals.sort_by(|x, y| y.cmp(x));
    Ok(vals)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HypothesisReport {
    pub diameter_at_least_3: bool,
    pub negative_type: bool,
    pub a1_nonzero: bool,
    pub not_near_polygon: bool,
    /// `a_i > a_1 c_i` for `2 <= i <= D`.
    pub strict_inequalities: bool,
    /// `k_i`, `p^1_ij`, both halves of every `D^i_i`, and the clique count
    /// `k / (a_1 + 1)` are nonnegative integers.
    pub integrality: bool,
    pub failures: Vec<String>,
    pub note: String,
}

impl HypothesisReport {
    pub fn passes(&self) -> bool {
        self.diameter_at_least_3
            && self.negative_type
            && self.a1_nonzero
            && self.not_near_polygon
            && self.strict_inequalities
            && self.integrality
    }

    fn failed(failure: String) -> Self {
        Self {
            diameter_at_least_3: false,
            negative_type: false,
            a1_nonzero: false,
            not_near_polygon: false,
            strict_inequalities: false,
            integrality: false,
            failures: vec![failure],
            note: String::from("no valid intersection array"),
        }
    }
}

pub const FEASIBLE_NOTE: &str = "synthetic: arithmetically feasible only, no graph with these parameters is claimed to exist";

pub fn check_hypotheses(p: &ClassicalParameters) -> HypothesisReport {
    let arr = match classical_to_array(p) {
        Ok(arr) => arr,
        Err(e) => return HypothesisReport::failed(format!("{e}")),
    };
    check_array(&arr, p.b)
}

/// The hypothesis filter on an array, with `b` taken from a classical fit.
pub fn check_array(arr: &IntersectionArray, b: i64) -> HypothesisReport {
    let mut failures = Vec::new();
    let d = arr.d;
    let diameter_at_least_3 = d >= 3;
    if !diameter_at_least_3 {
        failures.push(format!("D >= 3 required (D = {d})"));
    }
    let negative_type = b < -1;
    if !negative_type {
        failures.push(format!("not negative type (b = {b} is not < -1)"));
    }
    let a1 = arr.a1();
    let a1_nonzero = !a1.is_zero();
    if !a1_nonzero {
        failures.push(String::from("a1 = 0"));
    }
    let near = (1..d).all(|i| arr.a[i] == &a1 * &arr.c[i]);
    let not_near_polygon = !near;
    if near {
        failures.push(String::from("near polygon: a_i = a1 c_i for 1 <= i <= D-1"));
    }
    let mut strict_inequalities = true;
    for i in 2..=d {
        let rhs = &a1 * &arr.c[i];
        if arr.a[i] <= rhs {
            strict_inequalities = false;
            failures.push(format!("a_{i} = {} is not > a1 c_{i} = {}", arr.a[i], rhs));
        }
    }
    let mut integrality = true;
    let mut need = |what: String, v: &Rat| {
        if !is_integer(v) || v.is_negative() {
            integrality = false;
            failures.push(format!("{what} = {v} is not a nonnegative integer"));
        }
    };
    for (i, ki) in arr.k_i.iter().enumerate() {
        need(format!("k_{i}"), ki);
    }
    for i in 0..=d {
        for j in 0..=d {
            need(format!("p1_{i}{j}"), &arr.p1[i][j]);
        }
    }
    for s in partition_sizes(arr) {
        need(format!("|D_{0}^{0}(1)|", s.i), &s.one);
        need(format!("|D_{0}^{0}(0)|", s.i), &s.zero);
    }
    need(String::from("k/(a1+1)"), &(&arr.k / (&a1 + Rat::one())));
    HypothesisReport {
        diameter_at_least_3,
        negative_type,
        a1_nonzero,
        not_near_polygon,
        strict_inequalities,
        integrality,
        failures,
        note: String::from(FEASIBLE_NOTE),
    }
}

/// Every `(D, b, alpha, beta)` with integer `b` that reproduces `arr`.
///
/// `alpha` and `beta` are forced by `c_2` and `b_0` once `b` is fixed, so the
/// search is over `b` alone. For `D >= 3`, `c_3 = (1 + b + b^2)(c_2 - b)`
/// makes `b` an integer root of a cubic, so only divisors of its constant
/// term are tried; otherwise `|b| <= k + 1` is scanned. Arrays of diameter 1
/// fit every `b` and yield an empty list.
pub fn classical_fits(arr: &IntersectionArray) -> Vec<ClassicalParameters> {
    let d = arr.d;
    if d < 2 {
        return Vec::new();
    }
    let candidates = cubic_candidates(arr).unwrap_or_else(|| {
        let bound = arr.k.to_integer().to_i64().unwrap_or(i64::MAX - 2).saturating_add(1);
        (-bound..=bound).collect()
    });
    let mut out = Vec::new();
    for b in candidates {
        if b == 0 || b == -1 {
            continue;
        }
        let db = bracket(d, b);
        if db.is_zero() {
            continue;
        }
        let beta = &arr.k / db;
        let alpha = &arr.c[2] / rat(1 + b) - Rat::one();
        let Ok(p) = ClassicalParameters::new(d, b, alpha, beta) else { continue };
        let ok = (1..=d).all(|i| p.c(i) == arr.c[i]) && (0..d).all(|i| p.b_at(i) == arr.b[i]);
        if ok {
            out.push(p);
        }
    }
    out
}

/// Nonzero integer roots of `(1 + b + b^2)(c_2 - b) - c_3`, ascending.
fn cubic_candidates(arr: &IntersectionArray) -> Option<Vec<i64>> {
    if arr.d < 3 || !is_integer(&arr.c[2]) || !is_integer(&arr.c[3]) {
        return None;
    }
    let c2 = arr.c[2].to_integer().to_i64()?;
    let c3 = arr.c[3].to_integer().to_i64()?;
    // With b != 0 a root divides c_3 - c_2, or c_2 - 1 when that vanishes.
    let m = if c3 != c2 { c3.checked_sub(c2)? } else { c2.checked_sub(1)? };
    let m = m.unsigned_abs();
    let f = |b: i128| {
        let q = b.checked_mul(b)?.checked_add(b + 1)?;
        q.checked_mul(i128::from(c2) - b).map(|v| v - i128::from(c3))
    };
    let mut out = Vec::new();
    let mut q: u64 = 1;
    while q.saturating_mul(q) <= m {
        if m % q == 0 {
            for e in [q, m / q] {
                let e = i64::try_from(e).ok()?;
                out.extend([e, -e]);
            }
        }
        q += 1;
    }
    out.sort_unstable();
    out.dedup();
    out.retain(|&b| f(i128::from(b)) == Some(0));
    Some(out)
}

/// Every integer parameter set `(D, b, alpha, beta)` in the given ranges
/// that passes [`check_hypotheses`], in lexicographic order.
///
/// For fixed `(D, b, alpha)` the sign conditions on `b_i`, `a_i`, `a_1` and
/// `a_i - a_1 c_i` are linear in `beta`, so only the integer interval they
/// cut out of `betas` is scanned. Integrality of the `k_i` is screened in
/// fixed width before the exact check.
pub fn search_feasible(
    ds: RangeInclusive<usize>,
    bs: RangeInclusive<i64>,
    alphas: RangeInclusive<i64>,
    betas: RangeInclusive<i64>,
) -> Vec<ClassicalParameters> {
    let mut out = Vec::new();
    for d in ds {
        if d < 3 {
            continue;
        }
        for b in bs.clone() {
            if b == 0 || b == -1 {
                continue;
            }
            let br: Vec<i128> = (0..=d).map(|j| (0..j).map(|e| i128::from(b).pow(e as u32)).sum()).collect();
            for alpha in alphas.clone() {
                let Some((lo, hi)) = beta_interval(&br, d, i128::from(alpha), &betas) else { continue };
                for beta in lo..=hi {
                    if !screen_integrality(&br, d, i128::from(alpha), i128::from(beta)) {
                        continue;
                    }
                    let Ok(p) = ClassicalParameters::new(d, b, rat(alpha), rat(beta)) else { continue };
                    if check_hypotheses(&p).passes() {
                        out.push(p);
                    }
                }
            }
        }
    }
    out
}

/// Integer `beta` range satisfying `b_i >= 1`, `a_i >= 0`, `a_1 >= 1` and
/// `a_i - a_1 c_i >= 1` (`i >= 2`), intersected with `betas`.
fn beta_interval(br: &[i128], d: usize, al: i128, betas: &RangeInclusive<i64>) -> Option<(i64, i64)> {
    let c: Vec<i128> = (0..=d).map(|i| if i == 0 { 0 } else { br[i] * (1 + al * br[i - 1]) }).collect();
    if c[1..].iter().any(|&x| x < 1) {
        return None;
    }
    // Each constraint reads p * beta + q >= 0.
    let mut cons: Vec<(i128, i128)> = Vec::new();
    for i in 0..d {
        cons.push((br[d] - br[i], -(br[d] - br[i]) * al * br[i] - 1));
    }
    for i in 1..=d {
        cons.push((br[i], al * br[i] * (br[d] - br[i]) - c[i]));
    }
    let (a1p, a1q) = (1, al * (br[d] - 1) - 1);
    cons.push((a1p, a1q - 1));
    for i in 2..=d {
        cons.push((br[i] - a1p * c[i], al * br[i] * (br[d] - br[i]) - c[i] - a1q * c[i] - 1));
    }
    let mut lo = i128::from(*betas.start());
    let mut hi = i128::from(*betas.end());
    for (p, q) in cons {
        match p.signum() {
            1 => lo = lo.max(ceil_div(-q, p)),
            -1 => hi = hi.min(q.div_euclid(-p)),
            _ if q < 0 => return None,
            _ => {}
        }
    }
    (lo <= hi).then_some((lo as i64, hi as i64))
}

fn ceil_div(a: i128, b: i128) -> i128 {
    -((-a).div_euclid(b))
}

/// `k_{i+1} = k_i b_i / c_{i+1}` stays integral, as does `k / (a_1 + 1)`.
/// Overflow defers to the exact check.
fn screen_integrality(br: &[i128], d: usize, al: i128, be: i128) -> bool {
    let bi = |i: usize| (br[d] - br[i]) * (be - al * br[i]);
    let ci = |i: usize| br[i] * (1 + al * br[i - 1]);
    let k = bi(0);
    let a1 = k - bi(1) - 1;
    if k % (a1 + 1) != 0 {
        return false;
    }
    let mut ki: i128 = 1;
    for i in 0..d {
        let Some(num) = ki.checked_mul(bi(i)) else { return true };
        if num % ci(i + 1) != 0 {
            return false;
        }
        ki = num / ci(i + 1);
    }
    true
}
