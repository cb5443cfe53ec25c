//! Closed-form models of the two irreducible endpoint-1 T-modules of a
//! negative-type parameter set: local eigenvalue `-1` (dimension `D`) and
//! local eigenvalue `a_1` (dimension `2D - 2`).
//!
//! A model is built from parameters alone. With `w` the normalised vector
//! spanning `E*_1 W`, the basis is `u_i = E*_i A_{i-1} w` for `1 <= i <= D`
//! and, for `eta = a_1` only, `s_i = E*_i A_{i+1} w` for `2 <= i <= D-1`.
//! Basis vectors are ordered by grade, `u_i` before `s_i`. Matrices act on
//! coordinate columns: column `j` holds the image of basis vector `j`.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Signed, Zero};

use crate::exactla::{charpoly, determinant, fmt_rat, is_integer, rat, Poly};
use crate::local::{gate, GateMode};
use crate::params::{check_hypotheses, classical_to_array, spectrum_from_array, ClassicalParameters, IntersectionArray};
use crate::tmodules::{find_isomorphism, Decomposition, GradedRep};
use crate::{Error, Rat, RatMatrix, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Endpoint1Model {
    pub eta: Rat,
    pub d: usize,
    pub dim: usize,
    pub basis_labels: Vec<String>,
    /// Grade `i` of each basis vector.
    pub grades: Vec<usize>,
    pub l: RatMatrix,
    pub f: RatMatrix,
    pub r: RatMatrix,
    pub a: RatMatrix,
    pub gram: RatMatrix,
    pub multiplicity: Rat,
}

impl Endpoint1Model {
    /// The model as a graded representation over grades `0..=D`.
    pub fn graded_rep(&self) -> GradedRep {
        let mut dims = vec![0; self.d + 1];
        for &g in &self.grades {
            dims[g] += 1;
        }
        GradedRep::new(dims, self.a.clone()).expect("model dimensions are consistent")
    }
}

/// The scalar products of the formal vectors at grade `i`, with `||w|| = 1`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradeProducts {
    pub i: usize,
    /// `||E*_i A_{i-1} w||^2`
    pub back_norm: Rat,
    /// `||E*_i A_{i+1} w||^2`, for `i <= D-1`.
    pub forward_norm: Option<Rat>,
    /// `<E*_i A_{i-1} w, E*_i A_{i+1} w>`, for `i <= D-1`.
    pub cross: Option<Rat>,
}

fn check_eta(arr: &IntersectionArray, eta: &Rat) -> Result<bool> {
    if *eta == rat(-1) {
        Ok(false)
    } else if *eta == arr.a1() {
        Ok(true)
    } else {
        Err(Error::InvalidParameters(format!("eta must be -1 or a1 = {}, got {eta}", arr.a1())))
    }
}

fn gate_params(arr: &IntersectionArray, p: &ClassicalParameters) -> Result<()> {
    let report = check_hypotheses(p);
    if !report.passes() {
        return Err(Error::HypothesisFailure(report.failures));
    }
    if classical_to_array(p)? != *arr {
        return Err(Error::Inconsistent(String::from("intersection array does not match the classical parameters")));
    }
    Ok(())
}

/// Scalar products for every grade, before any vector is discarded.
pub fn scalar_products(arr: &IntersectionArray, eta: &Rat) -> Vec<GradeProducts> {
    let one_eta = Rat::one() + eta;
    let (k, b1) = (&arr.k, arr.b1());
    (1..=arr.d)
        .map(|i| {
            let (ci, bi, ki) = (&arr.c[i], &arr.b[i], &arr.k_i[i]);
            let scale = ki / (k * &b1);
            let back_norm = (&b1 - (ci - Rat::one()) * &one_eta) * ci * &scale;
            let (forward_norm, cross) = if i < arr.d {
                (Some((k - bi) * &one_eta * bi * &scale), Some(-(&one_eta * ci * bi * &scale)))
            } else {
                (None, None)
            };
            GradeProducts { i, back_norm, forward_norm, cross }
        })
        .collect()
}

fn labels(d: usize, with_forward: bool) -> (Vec<String>, Vec<usize>) {
    let mut names = Vec::new();
    let mut grades = Vec::new();
    for i in 1..=d {
        names.push(format!("E*_{i} A_{} w", i - 1));
        grades.push(i);
        if with_forward && (2..d).contains(&i) {
            names.push(format!("E*_{i} A_{} w", i + 1));
            grades.push(i);
        }
    }
    (names, grades)
}

/// Gram matrix of the model basis, with `||w|| = 1`.
///
/// For `eta = -1` the forward norms and cross terms are required to vanish
/// exactly before those vectors are dropped.
pub fn build_gram(arr: &IntersectionArray, p: &ClassicalParameters, eta: &Rat) -> Result<RatMatrix> {
    gate_params(arr, p)?;
    let second = check_eta(arr, eta)?;
    gram_from_products(arr.d, &scalar_products(arr, eta), second)
}

fn gram_from_products(d: usize, products: &[GradeProducts], second: bool) -> Result<RatMatrix> {
    let (names, _) = labels(d, second);
    let mut g = RatMatrix::zeros(names.len(), names.len());
    let mut pos = 0;
    for gp in products {
        g[(pos, pos)] = gp.back_norm.clone();
        let keep_forward = second && (2..d).contains(&gp.i);
        if keep_forward {
            let fwd = gp.forward_norm.clone().expect("i < D");
            let cross = gp.cross.clone().expect("i < D");
            g[(pos + 1, pos + 1)] = fwd;
            g[(pos, pos + 1)] = cross.clone();
            g[(pos + 1, pos)] = cross;
            pos += 2;
        } else {
            if !second {
                let zero = |x: &Option<Rat>| x.as_ref().is_none_or(Zero::is_zero);
                if !zero(&gp.forward_norm) || !zero(&gp.cross) {
                    return Err(Error::Inconsistent(format!("E*_{} A_{} w does not vanish", gp.i, gp.i + 1)));
                }
            }
            pos += 1;
        }
    }
    Ok(g)
}

/// `b^e` for possibly negative `e`.
fn bpow(b: i64, e: isize) -> Rat {
    let base = rat(b);
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        Rat::one() / num_traits::pow(base, (-e) as usize)
    }
}

pub fn build_model(arr: &IntersectionArray, p: &ClassicalParameters, eta: &Rat) -> Result<Endpoint1Model> {
    gate_params(arr, p)?;
    let second = check_eta(arr, eta)?;
    let d = arr.d;
    let (basis_labels, grades) = labels(d, second);
    let dim = basis_labels.len();
    // Position of u_i and s_i in the basis.
    let mut u = vec![usize::MAX; d + 2];
    let mut s = vec![usize::MAX; d + 2];
    {
        let mut pos = 0;
        for i in 1..=d {
            u[i] = pos;
            pos += 1;
            if second && (2..d).contains(&i) {
                s[i] = pos;
                pos += 1;
            }
        }
    }
    let c = |i: usize| arr.c[i].clone();
    let a = |i: usize| arr.a[i].clone();
    let bb = |i: usize| arr.b[i].clone();
    let a1 = arr.a1();
    let k = arr.k.clone();
    let mut l = RatMatrix::zeros(dim, dim);
    let mut f = RatMatrix::zeros(dim, dim);
    let mut r = RatMatrix::zeros(dim, dim);
    if !second {
        for i in 1..=d {
            if i >= 2 {
                l[(u[i - 1], u[i])] = bb(i - 1);
            }
            f[(u[i], u[i])] = a(i - 1) + c(i - 1) - c(i);
            if i < d {
                r[(u[i + 1], u[i])] = c(i);
            }
        }
    } else {
        let b = p.b;
        let one = a1.clone() + Rat::one();
        // (b^i - b^{i-2}) / (b^i - 1)
        let beta = |i: usize| {
            let i = i as isize;
            (bpow(b, i) - bpow(b, i - 2)) / (bpow(b, i) - Rat::one())
        };
        // (b^{i-2} - 1) / (b^i - 1)
        let rho = |i: usize| {
            let i = i as isize;
            (bpow(b, i - 2) - Rat::one()) / (bpow(b, i) - Rat::one())
        };
        f[(u[1], u[1])] = a1.clone();
        for i in 2..=d {
            if i == 2 {
                l[(u[1], u[2])] = &k - c(2) * &one;
            } else {
                l[(u[i - 1], u[i])] = bb(i - 1);
                l[(s[i - 1], u[i])] = c(i) - c(i - 1);
            }
            f[(u[i], u[i])] = a(i - 1) + &a1 * (c(i) - c(i - 1)) - c(i) * &one * beta(i);
            if i < d {
                f[(s[i], u[i])] = -(c(i) * beta(i));
                f[(s[i], s[i])] = a(i);
                if i == 2 {
                    l[(u[1], s[2])] = -(bb(2) * &one);
                } else {
                    l[(s[i - 1], s[i])] = bb(i);
                }
                let coeff = c(i + 1) * rho(i + 1);
                r[(u[i + 1], s[i])] = &one * (&coeff - c(i));
                if i + 1 < d {
                    r[(s[i + 1], s[i])] = coeff;
                }
            }
        }
        for i in 1..d {
            r[(u[i + 1], u[i])] = c(i);
        }
    }
    let a_rep = &(&l + &f) + &r;
    let gram = gram_from_products(d, &scalar_products(arr, eta), second)?;
    let (mu_minus, mu_a1) = multiplicities(arr)?;
    Ok(Endpoint1Model {
        eta: eta.clone(),
        d,
        dim,
        basis_labels,
        grades,
        l,
        f,
        r,
        a: a_rep,
        gram,
        multiplicity: if second { mu_a1 } else { mu_minus },
    })
}

/// `(k a_1 / (a_1 + 1), b_1 / (a_1 + 1))`, the multiplicities of the
/// local-eigenvalue `-1` and `a_1` modules.
pub fn multiplicities(arr: &IntersectionArray) -> Result<(Rat, Rat)> {
    let a1 = arr.a1();
    let one = &a1 + Rat::one();
    let mu_minus = &arr.k * &a1 / &one;
    let mu_a1 = arr.b1() / &one;
    for (which, v) in [("mu_-1", &mu_minus), ("mu_a1", &mu_a1)] {
        if !is_integer(v) || v.is_negative() {
            return Err(Error::NonIntegralMultiplicity { which: which.into(), value: fmt_rat(v) });
        }
    }
    Ok((mu_minus, mu_a1))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub charpoly: Poly,
    /// Roots of the characteristic polynomial with multiplicities, descending.
    pub spectrum: Vec<(Rat, usize)>,
    /// Every root is rational and one of `theta_1, ..., theta_D`, and the
    /// multiplicities add up to the dimension.
    pub spectrum_contained: bool,
    /// `trace F = trace A = ` sum of eigenvalues.
    pub trace_consistent: bool,
    pub leading_minors: Vec<Rat>,
    pub gram_positive_definite: bool,
    /// `G A = A^T G`.
    pub self_adjoint: bool,
    /// `L` lowers, `F` keeps and `R` raises the grade by one, and `A = L + F + R`.
    pub grading: bool,
    /// `E*_1 A_2 w = -(1 + eta) w`, with `A_2 = (A^2 - a_1 A - k I) / c_2`.
    pub e1a2_on_w: bool,
    /// Each 2x2 Gram block has determinant
    /// `c_i b_i (a_1+1)(a_i - a_1 c_i) k_i^2 / (k b_1^2)`, and its sign agrees
    /// with `a_i > a_1 c_i`.
    pub block_determinants: bool,
}

impl ConsistencyReport {
    pub fn passes(&self) -> bool {
        self.spectrum_contained
            && self.trace_consistent
            && self.gram_positive_definite
            && self.self_adjoint
            && self.grading
            && self.e1a2_on_w
            && self.block_determinants
    }
}

pub fn consistency_report(model: &Endpoint1Model, arr: &IntersectionArray) -> Result<ConsistencyReport> {
    let m = model.dim;
    let cp = charpoly(&model.a)?;
    let roots = cp.rational_roots()?;
    let mut spectrum: Vec<(Rat, usize)> = roots.iter().map(|r| (r.clone(), cp.root_multiplicity(r))).collect();
    spectrum.sort_by(|x, y| y.0.cmp(&x.0));
    let theta = spectrum_from_array(arr)?;
    let allowed = &theta[1..];
    let total: usize = spectrum.iter().map(|(_, mult)| mult).sum();
    let spectrum_contained = total == m && spectrum.iter().all(|(r, _)| allowed.contains(r));
    let eig_sum = spectrum.iter().fold(Rat::zero(), |acc, (r, mult)| acc + r * rat(*mult as i64));
    let trace_consistent = model.f.trace() == model.a.trace() && (total != m || eig_sum == model.a.trace());

    let leading_minors = (1..=m)
        .map(|t| {
            let idx: Vec<usize> = (0..t).collect();
            determinant(&model.gram.select(&idx, &idx))
        })
        .collect::<Result<Vec<_>>>()?;
    let gram_positive_definite = leading_minors.iter().all(Signed::is_positive);
    let self_adjoint = &model.gram * &model.a == &model.a.transpose() * &model.gram;

    let shifted_ok = |mat: &RatMatrix, shift: isize| {
        (0..m).all(|row| {
            (0..m).all(|col| {
                mat[(row, col)].is_zero() || model.grades[row] as isize == model.grades[col] as isize + shift
            })
        })
    };
    let grading = shifted_ok(&model.l, -1)
        && shifted_ok(&model.f, 0)
        && shifted_ok(&model.r, 1)
        && &(&model.l + &model.f) + &model.r == model.a;

    let a1 = arr.a1();
    let mut w = vec![Rat::zero(); m];
    w[0] = Rat::one();
    let aw = model.a.mul_vec(&w)?;
    let aaw = model.a.mul_vec(&aw)?;
    let a2w: Vec<Rat> = (0..m).map(|j| (&aaw[j] - &a1 * &aw[j] - &arr.k * &w[j]) / &arr.c[2]).collect();
    let e1a2_on_w = a2w[0] == -(Rat::one() + &model.eta);

    let mut block_determinants = true;
    let mut pos = 0;
    while pos < m {
        let i = model.grades[pos];
        if pos + 1 < m && model.grades[pos + 1] == i {
            let det = determinant(&model.gram.select(&[pos, pos + 1], &[pos, pos + 1]))?;
            let (ci, bi, ai, ki) = (&arr.c[i], &arr.b[i], &arr.a[i], &arr.k_i[i]);
            let b1 = arr.b1();
            let closed = ci * bi * (&a1 + Rat::one()) * (ai - &a1 * ci) * ki * ki / (&arr.k * &b1 * &b1);
            block_determinants &= det == closed && det.is_positive() == (*ai > &a1 * ci);
            pos += 2;
        } else {
            pos += 1;
        }
    }

    Ok(ConsistencyReport {
        charpoly: cp,
        spectrum,
        spectrum_contained,
        trace_consistent,
        leading_minors,
        gram_positive_definite,
        self_adjoint,
        grading,
        e1a2_on_w,
        block_determinants,
    })
}

/// An invertible grade-preserving intertwiner from the model to an observed
/// module representation, if one exists.
pub fn match_module(model: &Endpoint1Model, observed: &GradedRep) -> Option<RatMatrix> {
    find_isomorphism(&model.graded_rep(), observed)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrosscheckReport {
    /// Number of isomorphism classes of modules with endpoint 1.
    pub endpoint1_classes: usize,
    /// `(dimension, multiplicity)` of each endpoint-1 class.
    pub observed: Vec<(usize, usize)>,
    /// For each model, the class it intertwines with.
    pub matched_class: Vec<Option<usize>>,
    pub multiplicities_match: bool,
}

impl CrosscheckReport {
    pub fn passes(&self) -> bool {
        self.endpoint1_classes == 2 && self.matched_class.iter().all(Option::is_some) && self.multiplicities_match
    }
}

/// Compares the models with the endpoint-1 modules of an actual
/// decomposition. Requires the graph's array to pass the hypothesis filter.
pub fn crosscheck_with_graph(
    arr: &IntersectionArray,
    models: &[Endpoint1Model],
    dec: &Decomposition,
) -> Result<CrosscheckReport> {
    let g = gate(arr, GateMode::Auto);
    if !g.applicable {
        let reason = g.reason.unwrap_or_default();
        return Err(Error::HypothesisFailure(reason.split("; ").map(String::from).collect()));
    }
    let classes: Vec<&Vec<usize>> =
        dec.multiplicity_classes.iter().filter(|c| dec.modules[c[0]].endpoint == 1).collect();
    let observed: Vec<(usize, usize)> = classes.iter().map(|c| (dec.modules[c[0]].dim(), c.len())).collect();
    let mut matched_class = Vec::with_capacity(models.len());
    let mut multiplicities_match = true;
    for model in models {
        let hit = classes.iter().position(|c| match_module(model, &dec.modules[c[0]].rep).is_some());
        if let Some(idx) = hit {
            multiplicities_match &= rat(classes[idx].len() as i64) == model.multiplicity;
        }
        matched_class.push(hit);
    }
    Ok(CrosscheckReport { endpoint1_classes: classes.len(), observed, matched_class, multiplicities_match })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::rat;

    fn example() -> (IntersectionArray, ClassicalParameters) {
        let p = ClassicalParameters::new(3, -3, rat(-2), rat(14)).unwrap();
        (classical_to_array(&p).unwrap(), p)
    }

    fn ints(xs: &[i64]) -> Vec<Rat> {
        xs.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn minus_one_model() {
        let (arr, p) = example();
        let m = build_model(&arr, &p, &rat(-1)).unwrap();
        assert_eq!(m.dim, 3);
        assert_eq!(m.f, RatMatrix::diagonal(&ints(&[-1, 0, -27])));
        assert_eq!((m.l[(0, 1)].clone(), m.l[(1, 2)].clone()), (rat(96), rat(90)));
        assert_eq!((m.r[(1, 0)].clone(), m.r[(2, 1)].clone()), (rat(1), rat(2)));
        assert_eq!(m.gram, RatMatrix::diagonal(&ints(&[1, 96, 4320])));
        assert_eq!(m.multiplicity, rat(49));
        let rep = consistency_report(&m, &arr).unwrap();
        assert!(rep.passes(), "{rep:?}");
        assert_eq!(rep.spectrum, vec![(rat(12), 1), (rat(-7), 1), (rat(-33), 1)]);
        assert_eq!(m.a.trace(), rat(-28));
        // <A v1, v2> = <v1, A v2> = 96.
        let ga = &m.gram * &m.a;
        assert_eq!((ga[(1, 0)].clone(), ga[(0, 1)].clone()), (rat(96), rat(96)));
    }

    #[test]
    fn a1_model() {
        let (arr, p) = example();
        let m = build_model(&arr, &p, &rat(1)).unwrap();
        assert_eq!(m.dim, 4);
        assert_eq!(m.basis_labels, ["E*_1 A_0 w", "E*_2 A_1 w", "E*_2 A_3 w", "E*_3 A_2 w"]);
        assert_eq!((m.l[(0, 1)].clone(), m.l[(0, 2)].clone()), (rat(94), rat(-180)));
        let block = m.gram.select(&[1, 2], &[1, 2]);
        assert_eq!(block, RatMatrix::from_i64_rows(&[&[94, -180], &[-180, 720]]));
        assert_eq!(determinant(&block).unwrap(), rat(35280));
        let rep = consistency_report(&m, &arr).unwrap();
        assert!(rep.passes(), "{rep:?}");
        assert_eq!(rep.charpoly, Poly::from_roots(&ints(&[12, 12, -7, -33])));
        assert_eq!(m.a.trace(), rat(-16));
        assert_eq!(m.multiplicity, rat(48));
    }

    #[test]
    fn gram_products_vanish_for_minus_one() {
        let (arr, _) = example();
        for gp in scalar_products(&arr, &rat(-1)) {
            assert_eq!(gp.back_norm, &arr.c[gp.i] * &arr.k_i[gp.i] / &arr.k);
            assert!(gp.forward_norm.is_none_or(|x| x.is_zero()));
            assert!(gp.cross.is_none_or(|x| x.is_zero()));
        }
    }

    #[test]
    fn rejections() {
        let (arr, p) = example();
        assert!(matches!(build_model(&arr, &p, &rat(5)), Err(Error::InvalidParameters(_))));
        let bad = ClassicalParameters::new(3, -2, rat(-3), rat(7)).unwrap();
        let bad_arr = classical_to_array(&bad).unwrap();
        assert!(matches!(build_model(&bad_arr, &bad, &rat(-1)), Err(Error::HypothesisFailure(_))));
        assert_eq!(multiplicities(&arr).unwrap(), (rat(49), rat(48)));
    }

    #[test]
    fn model_matches_itself_but_not_a_regraded_copy() {
        let (arr, p) = example();
        let m = build_model(&arr, &p, &rat(1)).unwrap();
        assert!(match_module(&m, &m.graded_rep()).is_some());
        let swapped = GradedRep::new(vec![0, 2, 1, 1], m.a.clone()).unwrap();
        assert!(match_module(&m, &swapped).is_none());
        let other = build_model(&arr, &p, &rat(-1)).unwrap();
        assert!(match_module(&other, &m.graded_rep()).is_none());
    }
}
