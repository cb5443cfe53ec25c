//! Decomposition of the standard module `V = Q^n` into irreducible
//! T-modules, where T is generated by `A` and the dual idempotents `E*_i`
//! of a base vertex.
//!
//! The decomposition peels modules off grade by grade. At grade `r` it takes
//! a seeded random vector `p` of `E*_r V` orthogonal to everything found so
//! far and closes it under T. The closure is then split until each piece is
//! certified irreducible: its T-endomorphism algebra (the commutant) is one
//! dimensional. A commutant element with a rational eigenvalue of proper
//! multiplicity yields a splitting, since its eigenspaces are T-invariant.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::exactla::{charpoly, determinant, inner, invariant_closure, nullspace, orthogonal_complement, rat};
use crate::local::BaseContext;
use crate::{Error, Rat, RatMatrix, Result, Subspace};

/// The action of `A` on a module, in a basis that is a concatenation of
/// bases of the slices `E*_0 W, E*_1 W, ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedRep {
    per_grade_dims: Vec<usize>,
    a: RatMatrix,
}

impl GradedRep {
    pub fn new(per_grade_dims: Vec<usize>, a: RatMatrix) -> Result<Self> {
        let m = a.ensure_square()?;
        let total: usize = per_grade_dims.iter().sum();
        if total != m {
            return Err(Error::DimensionMismatch { expected: total, found: m });
        }
        Ok(Self { per_grade_dims, a })
    }

    pub fn per_grade_dims(&self) -> &[usize] {
        &self.per_grade_dims
    }

    pub fn a(&self) -> &RatMatrix {
        &self.a
    }

    pub fn dim(&self) -> usize {
        self.a.rows()
    }

    /// Grade of each basis position.
    fn grades(&self) -> Vec<usize> {
        self.per_grade_dims.iter().enumerate().flat_map(|(g, &d)| core::iter::repeat_n(g, d)).collect()
    }
}

/// Basis of the grade-preserving maps `X` with `X A_from = A_to X`.
pub fn intertwiners(from: &GradedRep, to: &GradedRep) -> Vec<RatMatrix> {
    if from.per_grade_dims != to.per_grade_dims {
        return Vec::new();
    }
    let m = from.dim();
    let grades = from.grades();
    let vars: Vec<(usize, usize)> =
        (0..m).flat_map(|u| (0..m).map(move |v| (u, v))).filter(|&(u, v)| grades[u] == grades[v]).collect();
    let mut sys = RatMatrix::zeros(m * m, vars.len());
    for (col, &(u, v)) in vars.iter().enumerate() {
        // X[u][v] appears in (X A_from)[u][q] and (A_to X)[p][v].
        for q in 0..m {
            sys[(u * m + q, col)] += &from.a[(v, q)];
        }
        for p in 0..m {
            sys[(p * m + v, col)] -= &to.a[(p, u)];
        }
    }
    nullspace(&sys)
        .into_iter()
        .map(|sol| {
            let mut x = RatMatrix::zeros(m, m);
            for (value, &(u, v)) in sol.into_iter().zip(&vars) {
                x[(u, v)] = value;
            }
            x
        })
        .collect()
}

/// An invertible intertwiner from `from` to `to`, if one exists.
pub fn find_isomorphism(from: &GradedRep, to: &GradedRep) -> Option<RatMatrix> {
    let space = intertwiners(from, to);
    if space.is_empty() {
        return None;
    }
    let m = from.dim();
    let invertible = |x: &RatMatrix| !determinant(x).expect("square").is_zero();
    if let Some(x) = space.iter().find(|x| invertible(x)) {
        return Some(x.clone());
    }
    // Points on the curve t -> sum_j t^j X_j; the determinant is a nonzero
    // polynomial in t of degree below m * |space| when any combination works.
    for t in 2..=(m * space.len() + 1) as i64 {
        let mut x = RatMatrix::zeros(m, m);
        let mut coeff = Rat::one();
        for s in &space {
            x = &x + &s.scale(&coeff);
            coeff *= rat(t);
        }
        if invertible(&x) {
            return Some(x);
        }
    }
    None
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TModuleDescriptor {
    /// Graded basis: a basis of `E*_0 W`, then `E*_1 W`, and so on.
    pub basis: Subspace,
    pub endpoint: usize,
    pub diameter: usize,
    pub per_grade_dims: Vec<usize>,
    /// Eigenvalue of `E*_1 A E*_1` on `E*_1 W`, for endpoint-1 modules.
    pub local_eigenvalue: Option<Rat>,
    pub is_primary: bool,
    /// `J W = 0`.
    pub jw_zero: bool,
    /// The action of `A` in the graded basis.
    pub rep: GradedRep,
    /// Index into [`Decomposition::multiplicity_classes`].
    pub multiplicity_class: Option<usize>,
}

impl TModuleDescriptor {
    pub fn dim(&self) -> usize {
        self.basis.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition {
    pub modules: Vec<TModuleDescriptor>,
    /// Module indices grouped by isomorphism, in order of first appearance.
    pub multiplicity_classes: Vec<Vec<usize>>,
}

impl Decomposition {
    pub fn dims(&self) -> Vec<usize> {
        self.modules.iter().map(TModuleDescriptor::dim).collect()
    }

    /// Checks the structural claims: dimensions add up to `n`, modules are
    /// mutually orthogonal and T-invariant, and exactly one has endpoint 0.
    pub fn validate(&self, ctx: &BaseContext<'_>) -> core::result::Result<(), String> {
        let total: usize = self.dims().iter().sum();
        if total != ctx.n() {
            return Err(format!("dimensions sum to {total}, not {}", ctx.n()));
        }
        let primaries = self.modules.iter().filter(|m| m.is_primary).count();
        if primaries != 1 {
            return Err(format!("{primaries} modules with endpoint 0"));
        }
        let gens = ctx.generators();
        for (i, m) in self.modules.iter().enumerate() {
            if !gens.iter().all(|g| m.basis.is_invariant(g)) {
                return Err(format!("module {i} is not T-invariant"));
            }
            for (j, other) in self.modules.iter().enumerate().skip(i + 1) {
                if !m.basis.is_orthogonal_to(&other.basis) {
                    return Err(format!("modules {i} and {j} are not orthogonal"));
                }
            }
        }
        Ok(())
    }
}

fn mask(ctx: &BaseContext<'_>, v: &[Rat], grade: usize) -> Vec<Rat> {
    v.iter()
        .enumerate()
        .map(|(y, x)| if ctx.grade(y) == grade { x.clone() } else { Rat::zero() })
        .collect()
}

/// Regraded basis of a T-invariant subspace, with the slice dimensions.
fn graded(ctx: &BaseContext<'_>, w: &Subspace) -> (Subspace, Vec<usize>) {
    let n = ctx.n();
    let mut basis = Vec::with_capacity(w.dim());
    let mut dims = Vec::with_capacity(ctx.diameter() + 1);
    for i in 0..=ctx.diameter() {
        let slice = Subspace::from_vectors(n, w.basis().iter().map(|v| mask(ctx, v, i)));
        dims.push(slice.dim());
        basis.extend(slice.into_basis());
    }
    (Subspace::from_independent(n, basis), dims)
}

fn descriptor(ctx: &BaseContext<'_>, w: &Subspace) -> Result<TModuleDescriptor> {
    let (basis, dims) = graded(ctx, w);
    if basis.dim() != w.dim() {
        return Err(Error::Inconsistent(String::from("subspace is not the sum of its grade slices")));
    }
    let rep = GradedRep::new(dims.clone(), basis.restrict(ctx.adjacency()))?;
    let support: Vec<usize> = dims.iter().enumerate().filter(|(_, &d)| d > 0).map(|(i, _)| i).collect();
    let endpoint = *support.first().ok_or(Error::ZeroVector)?;
    let desc = TModuleDescriptor {
        basis,
        endpoint,
        diameter: support.len() - 1,
        per_grade_dims: dims,
        local_eigenvalue: None,
        is_primary: endpoint == 0,
        jw_zero: false,
        rep,
        multiplicity_class: None,
    };
    Ok(describe(&desc, ctx))
}

/// Fills in the local eigenvalue (endpoint 1 only) and the `J W = 0` flag.
pub fn describe(w: &TModuleDescriptor, ctx: &BaseContext<'_>) -> TModuleDescriptor {
    let mut out = w.clone();
    out.jw_zero = w.basis.basis().iter().all(|v| v.iter().fold(Rat::zero(), |s, x| s + x).is_zero());
    out.local_eigenvalue = None;
    if w.endpoint == 1 && w.per_grade_dims.get(1) == Some(&1) {
        let v = &w.basis.basis()[w.per_grade_dims[0]];
        let n1 = ctx.project(1, ctx.adjacency(), 1);
        let image = n1.mul_vec(v).expect("lengths match");
        if let Some(j) = v.iter().position(|x| !x.is_zero()) {
            let lambda = &image[j] / &v[j];
            if image.iter().zip(v).all(|(a, b)| *a == &lambda * b) {
                out.local_eigenvalue = Some(lambda);
            }
        }
    }
    out
}

pub fn isomorphic(w1: &TModuleDescriptor, w2: &TModuleDescriptor, _ctx: &BaseContext<'_>) -> bool {
    w1.endpoint == w2.endpoint && find_isomorphism(&w1.rep, &w2.rep).is_some()
}

/// Splits a T-invariant subspace into irreducible T-invariant pieces.
fn split(ctx: &BaseContext<'_>, w: Subspace, rng: &mut ChaCha8Rng) -> Result<Vec<Subspace>> {
    let (basis, dims) = graded(ctx, &w);
    let rep = GradedRep::new(dims, basis.restrict(ctx.adjacency()))?;
    let comm = intertwiners(&rep, &rep);
    if comm.len() <= 1 {
        return Ok(vec![basis]);
    }
    let m = rep.dim();
    let mut candidates = comm.clone();
    for _ in 0..4 {
        let mut x = RatMatrix::zeros(m, m);
        for c in &comm {
            x = &x + &c.scale(&rat(rng.random_range(-50..=50)));
        }
        candidates.push(x);
    }
    let b = basis.matrix();
    for c in &candidates {
        for lambda in charpoly(c)?.rational_roots()? {
            let mut shifted = c.clone();
            for i in 0..m {
                shifted[(i, i)] -= &lambda;
            }
            let ker = nullspace(&shifted);
            if ker.is_empty() || ker.len() == m {
                continue;
            }
            let piece = Subspace::from_independent(ctx.n(), ker.iter().map(|k| b.mul_vec(k).expect("lengths match")).collect());
            let rest = orthogonal_complement(&piece, &basis)?;
            let mut out = split(ctx, piece, rng)?;
            out.extend(split(ctx, rest, rng)?);
            return Ok(out);
        }
    }
    Err(Error::Unsplittable)
}

fn random_combination(space: &Subspace, rng: &mut ChaCha8Rng) -> Vec<Rat> {
    let mut p = vec![Rat::zero(); space.ambient()];
    for v in space.basis() {
        let mut c = rng.random_range(1..=1000i64);
        if rng.random_bool(0.5) {
            c = -c;
        }
        let c = rat(c);
        for (acc, x) in p.iter_mut().zip(v) {
            *acc += &c * x;
        }
    }
    p
}

fn classify(ctx: &BaseContext<'_>, modules: &mut [TModuleDescriptor]) -> Vec<Vec<usize>> {
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..modules.len() {
        let class = classes.iter().position(|c| isomorphic(&modules[c[0]], &modules[i], ctx));
        let idx = match class {
            Some(idx) => {
                classes[idx].push(i);
                idx
            }
            None => {
                classes.push(vec![i]);
                classes.len() - 1
            }
        };
        modules[i].multiplicity_class = Some(idx);
    }
    classes
}

/// Orthogonal decomposition of `V` into irreducible T-modules, sorted by
/// endpoint and then by decreasing dimension. Deterministic for a fixed seed.
pub fn decompose(ctx: &BaseContext<'_>, seed: u64) -> Result<Decomposition> {
    let n = ctx.n();
    let gens = ctx.generators();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut found = Vec::new();
    let mut covered = Subspace::zero(n);
    for r in 0..=ctx.diameter() {
        let shell = Subspace::from_independent(n, ctx.shell(r).into_iter().map(|y| unit(n, y)).collect());
        loop {
            let seen = Subspace::from_vectors(n, covered.basis().iter().map(|v| mask(ctx, v, r)));
            let fresh = orthogonal_complement(&seen, &shell)?;
            if fresh.is_zero() {
                break;
            }
            let p = random_combination(&fresh, &mut rng);
            let w = invariant_closure(&Subspace::from_vectors(n, [p]), &gens)?;
            for piece in split(ctx, w, &mut rng)? {
                for v in piece.basis() {
                    covered.push(v.clone());
                }
                found.push(piece);
            }
        }
    }
    let mut modules = found.iter().map(|w| descriptor(ctx, w)).collect::<Result<Vec<_>>>()?;
    modules.sort_by(|a, b| a.endpoint.cmp(&b.endpoint).then(b.dim().cmp(&a.dim())));
    let multiplicity_classes = classify(ctx, &mut modules);
    Ok(Decomposition { modules, multiplicity_classes })
}

fn unit(n: usize, i: usize) -> Vec<Rat> {
    let mut v = vec![Rat::zero(); n];
    v[i] = Rat::one();
    v
}

/// Result of closing a single vector under T.
#[derive(Clone, Debug)]
pub struct Generated {
    /// Irreducible constituents of the closure; one entry when irreducible.
    pub modules: Vec<TModuleDescriptor>,
    pub irreducible: bool,
    /// The vector lies in `E*_1 V`, is orthogonal to the all-ones vector on
    /// `Gamma(x)`, and is an eigenvector of `E*_1 A E*_1`. For graphs meeting
    /// the negative-type hypotheses the closure is then irreducible with
    /// endpoint 1.
    pub endpoint_one_precondition: bool,
}

impl Generated {
    pub fn module(&self) -> Option<&TModuleDescriptor> {
        if self.irreducible {
            self.modules.first()
        } else {
            None
        }
    }
}

pub fn generate_from_vector(ctx: &BaseContext<'_>, w: &[Rat]) -> Result<Generated> {
    let n = ctx.n();
    if w.len() != n {
        return Err(Error::DimensionMismatch { expected: n, found: w.len() });
    }
    if w.iter().all(Zero::is_zero) {
        return Err(Error::ZeroVector);
    }
    let closure = invariant_closure(&Subspace::from_vectors(n, [w.to_vec()]), &ctx.generators())?;
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let pieces = split(ctx, closure, &mut rng)?;
    let modules = pieces.iter().map(|p| descriptor(ctx, p)).collect::<Result<Vec<_>>>()?;
    Ok(Generated { irreducible: modules.len() == 1, modules, endpoint_one_precondition: endpoint_one_precondition(ctx, w) })
}

fn endpoint_one_precondition(ctx: &BaseContext<'_>, w: &[Rat]) -> bool {
    if (0..ctx.n()).any(|y| ctx.grade(y) != 1 && !w[y].is_zero()) {
        return false;
    }
    let ones = mask(ctx, &vec![Rat::one(); ctx.n()], 1);
    if !inner(w, &ones).is_zero() {
        return false;
    }
    let image = ctx.project(1, ctx.adjacency(), 1).mul_vec(w).expect("lengths match");
    Subspace::from_vectors(ctx.n(), [w.to_vec()]).contains(&image)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{fixtures, verify_drg, Graph, VerifiedDrg};

    fn setup(g: &Graph) -> VerifiedDrg {
        verify_drg(g).unwrap()
    }

    #[test]
    fn cube() {
        let g = fixtures::hypercube(3);
        let v = setup(&g);
        let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
        let dec = decompose(&ctx, 0).unwrap();
        dec.validate(&ctx).unwrap();
        assert_eq!(dec.dims(), vec![4, 2, 2]);
        let primary = &dec.modules[0];
        assert!(primary.is_primary && !primary.jw_zero);
        assert_eq!(primary.per_grade_dims, vec![1, 1, 1, 1]);
        for m in &dec.modules[1..] {
            assert_eq!((m.endpoint, m.diameter), (1, 1));
            assert_eq!(m.local_eigenvalue, Some(rat(0)));
            assert!(m.jw_zero);
        }
        assert!(isomorphic(&dec.modules[1], &dec.modules[2], &ctx));
        assert!(!isomorphic(&dec.modules[0], &dec.modules[1], &ctx));
        assert!(isomorphic(&dec.modules[0], &dec.modules[0], &ctx));
        assert_eq!(dec.multiplicity_classes, vec![vec![0], vec![1, 2]]);
    }

    #[test]
    fn johnson() {
        let g = fixtures::johnson(6, 3);
        let v = setup(&g);
        let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
        let dec = decompose(&ctx, 0).unwrap();
        dec.validate(&ctx).unwrap();
        assert_eq!(dec.dims().iter().sum::<usize>(), 20);
        assert_eq!(dec.modules[0].dim(), 4);
    }

    #[test]
    fn seed_does_not_change_the_shape() {
        let g = fixtures::hypercube(4);
        let v = setup(&g);
        let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
        let a = decompose(&ctx, 0).unwrap();
        let b = decompose(&ctx, 7).unwrap();
        assert_eq!(a.dims(), b.dims());
        assert_eq!(
            a.multiplicity_classes.iter().map(Vec::len).collect::<Vec<_>>(),
            b.multiplicity_classes.iter().map(Vec::len).collect::<Vec<_>>()
        );
        assert_eq!(decompose(&ctx, 3).unwrap().modules, decompose(&ctx, 3).unwrap().modules);
    }

    #[test]
    fn generated_modules() {
        let g = fixtures::hypercube(3);
        let v = setup(&g);
        let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
        let x = unit(8, 0);
        let gen = generate_from_vector(&ctx, &x).unwrap();
        assert!(gen.irreducible && gen.module().unwrap().is_primary);
        let nb = g.neighbors(0);
        let mut diff = vec![Rat::zero(); 8];
        diff[nb[0]] = rat(1);
        diff[nb[1]] = rat(-1);
        let gen = generate_from_vector(&ctx, &diff).unwrap();
        assert!(gen.endpoint_one_precondition);
        let m = gen.module().unwrap();
        assert_eq!((m.endpoint, m.dim()), (1, 2));
        let ones = mask(&ctx, &vec![Rat::one(); 8], 1);
        let gen = generate_from_vector(&ctx, &ones).unwrap();
        assert!(!gen.endpoint_one_precondition);
        assert!(gen.module().unwrap().is_primary);
        assert!(matches!(generate_from_vector(&ctx, &vec![Rat::zero(); 8]), Err(Error::ZeroVector)));
    }

    #[test]
    fn reducible_closure_is_split() {
        let g = fixtures::hypercube(3);
        let v = setup(&g);
        let ctx = BaseContext::new(&g, &v, 0, None).unwrap();
        let mut w = unit(8, 0);
        w[g.neighbors(0)[0]] = rat(1);
        let gen = generate_from_vector(&ctx, &w).unwrap();
        assert!(!gen.irreducible);
        let mut dims: Vec<usize> = gen.modules.iter().map(TModuleDescriptor::dim).collect();
        dims.sort_unstable();
        assert_eq!(dims, vec![2, 4]);
    }

    #[test]
    fn mock_reps() {
        let a = RatMatrix::from_i64_rows(&[&[0, 2], &[1, 0]]);
        let r = GradedRep::new(vec![1, 1], a.clone()).unwrap();
        let x = find_isomorphism(&r, &r).unwrap();
        assert_eq!(&x * r.a(), r.a() * &x);
        assert_eq!(intertwiners(&r, &r).len(), 1);
        let scaled = GradedRep::new(vec![1, 1], RatMatrix::from_i64_rows(&[&[0, 1], &[2, 0]])).unwrap();
        assert!(find_isomorphism(&r, &scaled).is_some());
        let swapped = GradedRep::new(vec![2, 0], a).unwrap();
        assert!(find_isomorphism(&r, &swapped).is_none());
        assert!(GradedRep::new(vec![1], RatMatrix::identity(2)).is_err());
    }
}
