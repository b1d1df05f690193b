//! Cohomology of the abelian nilpotent radicals `n_B ⊂ sl2`, `n_P = n_B × n_B`
//! and the Siegel radical `n_Q ⊂ sp4`, by an exact Chevalley–Eilenberg solver
//! and by Kostant's theorem.
//!
//! Sp4 acts on `Q^4` with basis `e1, e2, f1, f2` and form `ω(e_i, f_j) = δ_ij`;
//! its Lie algebra is `[[A, B], [C, −Aᵀ]]` with `B`, `C` symmetric. The Siegel
//! radical is the `B` block: `E13` (root `2e1`), `E14 + E23` (`e1 + e2`), `E24` (`2e2`).

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use serde::Serialize;

use crate::char_ring::{weyl_group, DominantWeight, POSITIVE_ROOTS, RHO};
use crate::error::{Error, Result};
use crate::facts::{gl2z_cohomology_dims, keys};
use crate::linalg::{extend_basis, q, Matrix, Q};
use crate::weights::WeightTable;

pub type TorusWeight = Vec<i32>;

/// Sparse vector: basis index -> coefficient.
pub type SparseVec = BTreeMap<usize, Q>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum NilpotentAlgebra {
    /// Upper-triangular radical of the Borel of `SL2`.
    #[serde(rename = "n_B")]
    NB,
    /// `n_B × n_B` inside `SL2 × SL2`.
    #[serde(rename = "n_P")]
    NP,
    /// Radical of the Siegel parabolic of Sp4.
    #[serde(rename = "n_Q")]
    NQ,
}

impl NilpotentAlgebra {
    pub fn dimension(self) -> usize {
        self.root_weights().len()
    }

    /// Torus weights of the basis; all brackets vanish.
    pub fn root_weights(self) -> Vec<TorusWeight> {
        match self {
            NilpotentAlgebra::NB => vec![vec![2]],
            NilpotentAlgebra::NP => vec![vec![2, 0], vec![0, 2]],
            NilpotentAlgebra::NQ => vec![vec![2, 0], vec![1, 1], vec![0, 2]],
        }
    }
}

/// A finite-dimensional module over an abelian Lie algebra, graded by a torus
/// that acts compatibly.
#[derive(Clone, Debug)]
pub struct AbelianModule {
    pub root_weights: Vec<TorusWeight>,
    pub basis_weights: Vec<TorusWeight>,
    /// `actions[i][j]` is the image of basis vector `j` under generator `i`.
    pub actions: Vec<Vec<SparseVec>>,
    pub labels: Vec<String>,
}

fn add_weights(a: &[i32], b: &[i32]) -> TorusWeight {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

impl AbelianModule {
    pub fn dimension(&self) -> usize {
        self.basis_weights.len()
    }

    fn apply(&self, i: usize, v: &SparseVec) -> SparseVec {
        let mut out = SparseVec::new();
        for (j, c) in v {
            for (k, d) in &self.actions[i][*j] {
                let e = out.entry(*k).or_insert_with(Q::zero);
                *e += c * d;
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// Generators commute and shift torus weights by their roots.
    pub fn validate(&self) -> Result<()> {
        let n = self.root_weights.len();
        for i in 0..n {
            for (j, image) in self.actions[i].iter().enumerate() {
                let target = add_weights(&self.basis_weights[j], &self.root_weights[i]);
                if image.keys().any(|k| self.basis_weights[*k] != target) {
                    return Err(Error::InvalidArgument(format!("generator {i} does not shift weights by its root")));
                }
            }
            for k in (i + 1)..n {
                for j in 0..self.dimension() {
                    let unit: SparseVec = [(j, Q::one())].into();
                    if self.apply(i, &self.apply(k, &unit)) != self.apply(k, &self.apply(i, &unit)) {
                        return Err(Error::InvalidArgument(format!("generators {i} and {k} do not commute")));
                    }
                }
            }
        }
        Ok(())
    }

    /// `V* ⊗ Λ^top n`: the dual action `−Eᵀ`, weights negated and shifted by
    /// the sum of the roots. `H^l(n, V)` is dual to `H^{dim n − l}` of this module,
    /// weight by weight, because the cup pairing lands in `H^{top}(n, Q) = Λ^top n*`.
    pub fn dual_twisted_by_top(&self) -> AbelianModule {
        let top: TorusWeight = self.root_weights.iter().fold(vec![0; self.root_weights[0].len()], |acc, r| add_weights(&acc, r));
        let basis_weights = self.basis_weights.iter().map(|w| w.iter().zip(&top).map(|(x, t)| t - x).collect()).collect();
        let actions = self
            .actions
            .iter()
            .map(|action| {
                let mut transposed = vec![SparseVec::new(); self.dimension()];
                for (j, image) in action.iter().enumerate() {
                    for (k, c) in image {
                        transposed[*k].insert(j, -c.clone());
                    }
                }
                transposed
            })
            .collect();
        let labels = self.labels.iter().map(|l| format!("{l}*")).collect();
        AbelianModule { root_weights: self.root_weights.clone(), basis_weights, actions, labels }
    }
}

/// `H_m` as an `n_B`-module: basis `X^{m−i} Y^i`, torus weight `m − 2i`, and
/// the generator acting as `X ∂/∂Y`, the derivative of `P(X, tX + Y)` at `t = 0`.
pub fn sl2_module(m: u32) -> AbelianModule {
    let basis_weights = (0..=m).map(|i| vec![m as i32 - 2 * i as i32]).collect();
    let action = (0..=m as usize)
        .map(|i| if i == 0 { SparseVec::new() } else { [(i - 1, q(i as i64))].into() })
        .collect();
    let labels = (0..=m).map(|i| monomial_label(m - i, i)).collect();
    AbelianModule { root_weights: NilpotentAlgebra::NB.root_weights(), basis_weights, actions: vec![action], labels }
}

fn monomial_label(x: u32, y: u32) -> String {
    let part = |v: &str, e: u32| match e {
        0 => String::new(),
        1 => v.to_string(),
        _ => format!("{v}^{e}"),
    };
    let s = format!("{}{}", part("X", x), part("Y", y));
    if s.is_empty() {
        "1".into()
    } else {
        s
    }
}

/// `H_c ⊠ H_d` as an `n_P`-module.
pub fn product_module(c: u32, d: u32) -> AbelianModule {
    let (left, right) = (sl2_module(c), sl2_module(d));
    let index = |i: usize, j: usize| i * (d as usize + 1) + j;
    let mut basis_weights = Vec::new();
    let mut labels = Vec::new();
    let mut first = Vec::new();
    let mut second = Vec::new();
    for i in 0..=c as usize {
        for j in 0..=d as usize {
            basis_weights.push(vec![left.basis_weights[i][0], right.basis_weights[j][0]]);
            labels.push(format!("{}⊗{}", left.labels[i], right.labels[j]));
            first.push(left.actions[0][i].iter().map(|(k, v)| (index(*k, j), v.clone())).collect());
            second.push(right.actions[0][j].iter().map(|(k, v)| (index(i, *k), v.clone())).collect());
        }
    }
    AbelianModule { root_weights: NilpotentAlgebra::NP.root_weights(), basis_weights, actions: vec![first, second], labels }
}

// ---- the Sp4 module V_{a+b} ------------------------------------------------

/// Variables `x1..x4, p12, p13, p14, p23, p24, p34` with `p_ij = x_i ∧ x_j`.
const VARS: usize = 10;
type Mono = [u8; VARS];
type Poly = BTreeMap<Mono, Q>;

const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
const VECTOR_WEIGHTS: [[i32; 2]; 4] = [[1, 0], [0, 1], [-1, 0], [0, -1]];

fn pair_var(i: usize, j: usize) -> Option<(usize, i64)> {
    if i == j {
        return None;
    }
    let (lo, hi, sign) = if i < j { (i, j, 1) } else { (j, i, -1) };
    PAIRS.iter().position(|&p| p == (lo, hi)).map(|k| (4 + k, sign))
}

/// A `gl4` element as a list of `(i, j, c)` meaning `c E_ij`, acting by derivations.
type GlElement = &'static [(usize, usize, i64)];

const F1: GlElement = &[(1, 0, 1), (2, 3, -1)];
const F2: GlElement = &[(3, 1, 1)];
const NQ_BASIS: [GlElement; 3] = [&[(0, 2, 1)], &[(0, 3, 1), (1, 2, 1)], &[(1, 3, 1)]];

/// Image of a single variable: a linear combination of variables.
fn act_on_var(x: GlElement, var: usize) -> Vec<(usize, i64)> {
    let mut out = Vec::new();
    for &(i, j, c) in x {
        if var < 4 {
            if var == j {
                out.push((i, c));
            }
        } else {
            let (k, l) = PAIRS[var - 4];
            if k == j {
                if let Some((v, s)) = pair_var(i, l) {
                    out.push((v, c * s));
                }
            }
            if l == j {
                if let Some((v, s)) = pair_var(k, i) {
                    out.push((v, c * s));
                }
            }
        }
    }
    out
}

fn act(x: GlElement, p: &Poly) -> Poly {
    let mut out = Poly::new();
    for (mono, c) in p {
        for var in 0..VARS {
            let e = mono[var];
            if e == 0 {
                continue;
            }
            for (target, coeff) in act_on_var(x, var) {
                let mut m = *mono;
                m[var] -= 1;
                m[target] += 1;
                let entry = out.entry(m).or_insert_with(Q::zero);
                *entry += c * q(i64::from(e) * coeff);
            }
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn mono_weight(m: &Mono) -> [i32; 2] {
    let mut w = [0, 0];
    for (v, &e) in m.iter().enumerate() {
        let vw = if v < 4 {
            VECTOR_WEIGHTS[v]
        } else {
            let (i, j) = PAIRS[v - 4];
            [VECTOR_WEIGHTS[i][0] + VECTOR_WEIGHTS[j][0], VECTOR_WEIGHTS[i][1] + VECTOR_WEIGHTS[j][1]]
        };
        w[0] += i32::from(e) * vw[0];
        w[1] += i32::from(e) * vw[1];
    }
    w
}

/// Weight space with a reduced echelon basis: `pivots[i]` is a monomial where
/// `basis[i]` has coefficient 1 and every other basis vector has 0.
struct WeightSpace {
    basis: Vec<Poly>,
    pivots: Vec<Mono>,
}

impl WeightSpace {
    fn from_candidates(candidates: Vec<Poly>) -> Self {
        let monos: Vec<Mono> = candidates.iter().flat_map(|p| p.keys().copied()).collect::<BTreeSet<_>>().into_iter().collect();
        let col: BTreeMap<Mono, usize> = monos.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let rows = candidates
            .iter()
            .map(|p| {
                let mut r = vec![Q::zero(); monos.len()];
                for (m, c) in p {
                    r[col[m]] = c.clone();
                }
                r
            })
            .collect();
        let mut mat = Matrix::from_rows(rows);
        let pivot_cols = mat.rref();
        let basis = (0..pivot_cols.len())
            .map(|r| mat.row(r).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, c)| (monos[i], c.clone())).collect())
            .collect();
        WeightSpace { basis, pivots: pivot_cols.iter().map(|&c| monos[c]).collect() }
    }

    fn coordinates(&self, p: &Poly) -> Vec<Q> {
        let coords: Vec<Q> = self.pivots.iter().map(|m| p.get(m).cloned().unwrap_or_else(Q::zero)).collect();
        debug_assert!({
            let mut rest = p.clone();
            for (b, c) in self.basis.iter().zip(&coords) {
                for (m, v) in b {
                    let e = rest.entry(*m).or_insert_with(Q::zero);
                    *e -= c * v;
                }
            }
            rest.values().all(Zero::is_zero)
        });
        coords
    }
}

/// `V_{a+b}` as the cyclic submodule generated by the highest weight vector
/// `x1^{a−b} p12^b` of `Sym^{a−b}(Q^4) ⊗ Sym^b(Λ² Q^4)`, restricted to `n_Q`.
/// The vector is killed by every raising operator, so the submodule it
/// generates under the lowering operators is irreducible.
pub fn siegel_module(w: DominantWeight) -> AbelianModule {
    let (a, b) = (w.a(), w.b());
    let mut top = [0u8; VARS];
    top[0] = (a - b) as u8;
    top[4] = b as u8;
    let top_poly: Poly = [(top, Q::one())].into();
    let mut spaces: BTreeMap<[i32; 2], WeightSpace> = BTreeMap::new();
    spaces.insert(mono_weight(&top), WeightSpace { basis: vec![top_poly], pivots: vec![top] });
    let mut frontier: BTreeSet<[i32; 2]> = [mono_weight(&top)].into();
    while !frontier.is_empty() {
        let mut candidates: BTreeMap<[i32; 2], Vec<Poly>> = BTreeMap::new();
        for mu in &frontier {
            for (op, root) in [(F1, [1, -1]), (F2, [0, 2])] {
                let target = [mu[0] - root[0], mu[1] - root[1]];
                for v in &spaces[mu].basis {
                    let image = act(op, v);
                    if !image.is_empty() {
                        candidates.entry(target).or_default().push(image);
                    }
                }
            }
        }
        frontier.clear();
        for (mu, cands) in candidates {
            spaces.insert(mu, WeightSpace::from_candidates(cands));
            frontier.insert(mu);
        }
    }
    let mut offsets = BTreeMap::new();
    let mut basis_weights = Vec::new();
    let mut labels = Vec::new();
    for (mu, space) in &spaces {
        offsets.insert(*mu, basis_weights.len());
        for i in 0..space.basis.len() {
            basis_weights.push(mu.to_vec());
            labels.push(format!("v[{},{}]#{i}", mu[0], mu[1]));
        }
    }
    let roots = NilpotentAlgebra::NQ.root_weights();
    let actions = NQ_BASIS
        .iter()
        .zip(&roots)
        .map(|(op, root)| {
            let mut columns = Vec::new();
            for (mu, space) in &spaces {
                let target = [mu[0] + root[0], mu[1] + root[1]];
                for v in &space.basis {
                    let image = act(op, v);
                    let mut col = SparseVec::new();
                    if !image.is_empty() {
                        let t = &spaces[&target];
                        for (i, c) in t.coordinates(&image).into_iter().enumerate() {
                            if !c.is_zero() {
                                col.insert(offsets[&target] + i, c);
                            }
                        }
                    }
                    columns.push(col);
                }
            }
            columns
        })
        .collect();
    AbelianModule { root_weights: roots, basis_weights, actions, labels }
}

// ---- Chevalley–Eilenberg ---------------------------------------------------

/// A cohomology class: a cocycle `Σ c ε_S ⊗ v_j` not in the image of `d`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassRepresentative {
    pub weight: TorusWeight,
    /// `(subset of generators, basis label, coefficient as a string)`.
    pub terms: Vec<(Vec<usize>, String, String)>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CohomologyResult {
    pub algebra_dimension: usize,
    /// Degree `l` -> torus weight -> dimension.
    pub by_degree: Vec<BTreeMap<TorusWeight, u64>>,
    pub representatives: Vec<Vec<ClassRepresentative>>,
}

impl CohomologyResult {
    pub fn dimension(&self, l: usize) -> u64 {
        self.by_degree[l].values().sum()
    }

    pub fn euler_characteristic(&self) -> i64 {
        (0..self.by_degree.len()).map(|l| if l % 2 == 0 { self.dimension(l) as i64 } else { -(self.dimension(l) as i64) }).sum()
    }
}

fn subsets(n: usize, l: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize == l).map(|m| (0..n).filter(|i| m >> i & 1 == 1).collect()).collect()
}

struct Cochains {
    cells: Vec<(Vec<usize>, usize)>,
    by_weight: BTreeMap<TorusWeight, Vec<usize>>,
}

fn cochains(module: &AbelianModule, l: usize) -> Cochains {
    let n = module.root_weights.len();
    let mut cells = Vec::new();
    let mut by_weight: BTreeMap<TorusWeight, Vec<usize>> = BTreeMap::new();
    for s in subsets(n, l) {
        for j in 0..module.dimension() {
            let mut w = module.basis_weights[j].clone();
            for i in &s {
                for (x, r) in w.iter_mut().zip(&module.root_weights[*i]) {
                    *x -= r;
                }
            }
            by_weight.entry(w).or_default().push(cells.len());
            cells.push((s.clone(), j));
        }
    }
    Cochains { cells, by_weight }
}

/// Matrix of `d: C^l_μ -> C^{l+1}_μ`, with `d(ε_S ⊗ v) = Σ_{i ∉ S} ε_i ∧ ε_S ⊗ E_i v`.
fn differential_block(module: &AbelianModule, src: &Cochains, dst: &Cochains, mu: &TorusWeight) -> Matrix {
    let empty = Vec::new();
    let cols = src.by_weight.get(mu).unwrap_or(&empty);
    let rows = dst.by_weight.get(mu).unwrap_or(&empty);
    let row_index: BTreeMap<(Vec<usize>, usize), usize> = rows.iter().enumerate().map(|(r, &c)| (dst.cells[c].clone(), r)).collect();
    let mut m = Matrix::zeros(rows.len(), cols.len());
    for (col, &cell) in cols.iter().enumerate() {
        let (s, j) = &src.cells[cell];
        for i in 0..module.root_weights.len() {
            if s.contains(&i) {
                continue;
            }
            let sign = if s.iter().filter(|&&x| x < i).count() % 2 == 0 { 1 } else { -1 };
            let mut t = s.clone();
            t.push(i);
            t.sort_unstable();
            for (k, c) in &module.actions[i][*j] {
                let r = row_index[&(t.clone(), *k)];
                let v = m.get(r, col) + c * q(sign);
                m.set(r, col, v);
            }
        }
    }
    m
}

/// Exact cohomology of an abelian Lie algebra with coefficients in `module`,
/// block by torus weight. Representatives are computed when requested.
pub fn ce_cohomology(module: &AbelianModule, with_representatives: bool) -> CohomologyResult {
    let n = module.root_weights.len();
    let complexes: Vec<Cochains> = (0..=n + 1).map(|l| if l <= n { cochains(module, l) } else { Cochains { cells: vec![], by_weight: BTreeMap::new() } }).collect();
    let mut by_degree = Vec::new();
    let mut representatives = Vec::new();
    for l in 0..=n {
        let mut dims = BTreeMap::new();
        let mut reps = Vec::new();
        for (mu, cells) in &complexes[l].by_weight {
            let d_out = differential_block(module, &complexes[l], &complexes[l + 1], mu);
            let incoming = if l == 0 { None } else { Some(differential_block(module, &complexes[l - 1], &complexes[l], mu)) };
            let rank_in = incoming.as_ref().map_or(0, Matrix::rank);
            let dim = cells.len() - d_out.rank() - rank_in;
            if dim == 0 {
                continue;
            }
            dims.insert(mu.clone(), dim as u64);
            if with_representatives {
                let kernel = if d_out.rows() == 0 {
                    (0..cells.len()).map(|i| (0..cells.len()).map(|k| if k == i { Q::one() } else { Q::zero() }).collect()).collect()
                } else {
                    d_out.kernel()
                };
                let image: Vec<Vec<Q>> = incoming
                    .map(|m| m.transpose())
                    .map(|t| (0..t.rows()).map(|r| t.row(r).to_vec()).filter(|r: &Vec<Q>| r.iter().any(|x| !x.is_zero())).collect())
                    .unwrap_or_default();
                for v in extend_basis(&image, &kernel) {
                    let terms = v
                        .iter()
                        .enumerate()
                        .filter(|(_, c)| !c.is_zero())
                        .map(|(i, c)| {
                            let (s, j) = &complexes[l].cells[cells[i]];
                            (s.clone(), module.labels[*j].clone(), c.to_string())
                        })
                        .collect();
                    reps.push(ClassRepresentative { weight: mu.clone(), terms });
                }
            }
        }
        by_degree.push(dims);
        representatives.push(reps);
    }
    CohomologyResult { algebra_dimension: n, by_degree, representatives }
}

/// `d ∘ d` on every weight block; used by tests.
pub fn differential_squares_to_zero(module: &AbelianModule) -> bool {
    let n = module.root_weights.len();
    let cs: Vec<Cochains> = (0..=n).map(|l| cochains(module, l)).collect();
    for l in 0..n.saturating_sub(1) {
        for mu in cs[l].by_weight.keys() {
            let d1 = differential_block(module, &cs[l], &cs[l + 1], mu);
            let d2 = differential_block(module, &cs[l + 1], &cs[l + 2], mu);
            if d2.rows() > 0 && d1.cols() > 0 && d1.rows() > 0 && !d2.mul(&d1).is_zero() {
                return false;
            }
        }
    }
    true
}

// ---- Kostant -----------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Parabolic {
    /// Borel subgroup of Sp4; Levi quotient is the maximal torus.
    #[serde(rename = "B")]
    Borel,
    /// Siegel parabolic; Levi quotient `GL2`, radical `n_Q`.
    #[serde(rename = "Q")]
    Siegel,
}

impl Parabolic {
    pub fn radical_dimension(self) -> usize {
        match self {
            Parabolic::Borel => 4,
            Parabolic::Siegel => 3,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KostantTerm {
    pub length: usize,
    /// `w(λ + ρ) − ρ`, a Levi-dominant weight.
    pub highest_weight: [i32; 2],
    /// For the Siegel parabolic: the `SL2` label `μ1 − μ2` of the derived Levi.
    pub sl2_label: Option<u32>,
}

fn is_positive_root(r: [i32; 2]) -> bool {
    POSITIVE_ROOTS.contains(&r)
}

/// Number of positive roots sent to negative roots.
fn weyl_length(f: fn([i32; 2]) -> [i32; 2]) -> usize {
    POSITIVE_ROOTS.iter().filter(|r| !is_positive_root(f(**r))).count()
}

/// `H^l(n, V_λ) = ⊕ F_{w(λ+ρ)−ρ}` over minimal coset representatives `w` of length `l`.
/// Since `λ + ρ` is regular, those are exactly the `w` for which the shifted
/// weight is Levi-dominant.
pub fn kostant_cohomology(parabolic: Parabolic, w: DominantWeight, l: usize) -> Result<Vec<KostantTerm>> {
    let max = parabolic.radical_dimension();
    if l > max {
        return Err(Error::DegreeOutOfRange { degree: l, max });
    }
    let lr = w.exponent();
    let shifted = [lr[0] + RHO[0], lr[1] + RHO[1]];
    let mut out = Vec::new();
    for (f, _) in weyl_group() {
        if weyl_length(f) != l {
            continue;
        }
        let image = f(shifted);
        let mu = [image[0] - RHO[0], image[1] - RHO[1]];
        match parabolic {
            Parabolic::Borel => out.push(KostantTerm { length: l, highest_weight: mu, sl2_label: None }),
            Parabolic::Siegel if mu[0] >= mu[1] => {
                out.push(KostantTerm { length: l, highest_weight: mu, sl2_label: Some((mu[0] - mu[1]) as u32) })
            }
            Parabolic::Siegel => {}
        }
    }
    out.sort_by_key(|t| t.highest_weight);
    Ok(out)
}

/// Kostant for the Siegel parabolic: the `SL2` label of `H^l(n_Q, V_λ)`.
pub fn kostant_siegel_label(w: DominantWeight, l: usize) -> Result<u32> {
    let terms = kostant_cohomology(Parabolic::Siegel, w, l)?;
    debug_assert_eq!(terms.len(), 1);
    Ok(terms[0].sl2_label.expect("Siegel terms carry a label"))
}

/// Torus character of the `GL2` irrep with highest weight `μ`.
pub fn gl2_character(mu: [i32; 2]) -> BTreeMap<TorusWeight, u64> {
    (0..=(mu[0] - mu[1])).map(|i| (vec![mu[0] - i, mu[1] + i], 1)).collect()
}

// ---- boundary stalks -----------------------------------------------------

/// One line of the source stalk `H^1(n_P, H_{a−b} ⊠ H_0)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkLine {
    pub representative: String,
    pub torus_weight: TorusWeight,
    pub hodge_weight: i64,
}

/// One Harder term `H^l(GL2(Z), H^{3−l}(n_Q, V))`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HarderTerm {
    pub l: usize,
    pub radical_degree: usize,
    pub coefficient_label: u32,
    pub dimension: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StalkTable {
    pub weight: DominantWeight,
    pub source_lines: Vec<StalkLine>,
    pub source: WeightTable,
    pub target_terms: Vec<HarderTerm>,
    /// `2 s_{a+b+4}` cuspidal dimensions of `H^1(SL2(Z), H_{a+b+2})`.
    pub target_cuspidal: u64,
    pub target_eisenstein: u64,
    /// Dimension after taking `σ`-invariants.
    pub target_dimension: u64,
    pub facts: Vec<&'static str>,
}

/// Hodge weight of a class: each `SL2` factor contributes its label minus its
/// torus weight, so `X` has weight 0, `Y` weight 2 and `η` weight 2.
fn hodge_weight(labels: &[u32], torus: &[i32]) -> i64 {
    labels.iter().zip(torus).map(|(m, t)| i64::from(*m) - i64::from(*t)).sum()
}

pub fn stalk_dimensions(w: DominantWeight) -> Result<StalkTable> {
    let (a, b) = (w.a(), w.b());
    if (a + b) % 2 == 1 {
        return Err(Error::OddParity(a + b));
    }
    if a <= b {
        return Err(Error::InvalidArgument(format!("stalks are computed for a > b, got ({a},{b})")));
    }
    let m = a - b;
    let ce = ce_cohomology(&product_module(m, 0), true);
    let mut source = WeightTable::new();
    let mut source_lines = Vec::new();
    for rep in &ce.representatives[1] {
        let hw = hodge_weight(&[m, 0], &rep.weight);
        source.add(hw, 1);
        let text = rep
            .terms
            .iter()
            .map(|(s, v, c)| {
                let eta = s.iter().map(|i| format!("η{}", i + 1)).collect::<Vec<_>>().join("∧");
                let coeff = if c == "1" { String::new() } else { format!("{c}·") };
                format!("{coeff}{v}⊗{eta}")
            })
            .collect::<Vec<_>>()
            .join(" + ");
        source_lines.push(StalkLine { representative: text, torus_weight: rep.weight.clone(), hodge_weight: hw });
    }
    let mut target_terms = Vec::new();
    for l in 0..=3 {
        let label = kostant_siegel_label(w, 3 - l)?;
        let dims = gl2z_cohomology_dims(label);
        let dimension = if l < 2 { dims[l] } else { 0 };
        target_terms.push(HarderTerm { l, radical_degree: 3 - l, coefficient_label: label, dimension });
    }
    let s = crate::modular::dim_cusp_forms(i64::from(a + b) + 4);
    let target_dimension = target_terms.iter().map(|t| t.dimension).sum();
    Ok(StalkTable {
        weight: w,
        source_lines,
        source,
        target_terms,
        target_cuspidal: 2 * s,
        target_eisenstein: 1,
        target_dimension,
        facts: vec![keys::HARDER, keys::EICHLER_SHIMURA, keys::PERIOD_PARITY, keys::GL2Z_INVARIANTS],
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(a: i64, b: i64) -> DominantWeight {
        DominantWeight::new(a, b).unwrap()
    }

    #[test]
    fn nb_closed_form_small() {
        let r = ce_cohomology(&sl2_module(3), true);
        assert_eq!(r.by_degree[0], [(vec![3], 1)].into());
        assert_eq!(r.by_degree[1], [(vec![-5], 1)].into());
        assert_eq!(r.representatives[0][0].terms, vec![(vec![], "X^3".to_string(), "1".to_string())]);
        assert_eq!(r.representatives[1][0].terms, vec![(vec![0], "Y^3".to_string(), "1".to_string())]);
    }

    #[test]
    fn trivial_coefficients() {
        let r = ce_cohomology(&sl2_module(0), false);
        assert_eq!(r.dimension(0), 1);
        assert_eq!(r.dimension(1), 1);
    }

    #[test]
    fn siegel_module_dimensions() {
        for (a, b) in [(0, 0), (1, 0), (1, 1), (2, 2), (3, 1)] {
            let m = siegel_module(w(a, b));
            assert_eq!(m.dimension() as u128, w(a, b).dimension(), "({a},{b})");
            m.validate().unwrap();
        }
    }

    #[test]
    fn kostant_table() {
        assert_eq!(kostant_siegel_label(w(2, 2), 1).unwrap(), 6);
        assert_eq!(kostant_siegel_label(w(2, 2), 0).unwrap(), 0);
        assert_eq!(kostant_siegel_label(w(5, 3), 2).unwrap(), 10);
        assert!(matches!(kostant_cohomology(Parabolic::Siegel, w(1, 0), 4), Err(Error::DegreeOutOfRange { degree: 4, max: 3 })));
        assert_eq!(kostant_cohomology(Parabolic::Borel, w(0, 0), 2).unwrap().len(), 2);
    }

    #[test]
    fn stalk_examples() {
        let t = stalk_dimensions(w(3, 1)).unwrap();
        assert_eq!(t.source.nonzero(), [(2, 1), (6, 1)].into());
        let t = stalk_dimensions(w(5, 3)).unwrap();
        assert_eq!((t.target_cuspidal, t.target_eisenstein, t.target_dimension), (2, 1, 2));
        assert!(matches!(stalk_dimensions(w(2, 2)), Err(Error::InvalidArgument(_))));
        assert!(matches!(stalk_dimensions(w(2, 1)), Err(Error::OddParity(3))));
    }
}
