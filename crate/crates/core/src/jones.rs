//! The basic construction `A ⊆ A₁ = ⟨A, e₁⟩` on `L²(A, τ)`.
//!
//! `L²(A, τ)` has the orthonormal basis `ξ_{iab} = e^{(i)}_{ab} / √(n_i/D)`,
//! `D = Σ n_i²`, indexed `Σ_{x<i} n_x² + a n_i + b`. Left multiplication
//! fixes the column `b`; writing `b = pos(i, j, k, l)` and regrouping the
//! basis by `(j, i, k, a, l)` turns every operator commuting with right
//! multiplication by `B` into `⊕_j X_j ⊗ I_{m_j}`. The blocks `X_j` live in
//! `M_{N_j}`, `N = Aᵗñ`, laid out like the super-algebra of
//! `spec.transposed()`; this is the canonical form used for `A₁`.

use nalgebra::DVector;
use num_complex::Complex64;

use crate::algebra::{BlockOperator, CMatrix, MultiMatrixAlgebra, Phase, TracialState};
use crate::basis::{Provenance, Side, UnitaryBasis};
use crate::error::{Error, Result};
use crate::expectation::{ConditionalExpectation, Expectation};
use crate::inclusion::{check_spectral_condition, Embedding, InclusionSpec, Label};

/// Default bound on `dim L²(A, τ)`.
pub const GNS_CAP: usize = 256;

/// Partition-of-unity tolerance for [`basic_construction_basis`].
pub const PARTITION_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct BasicConstruction {
    embedding: Embedding,
    tau: TracialState,
    d: u64,
    tower: Embedding,
    gns_dim: usize,
    gns_offsets: Vec<usize>,
    /// Canonical index ↦ GNS index.
    from_canon: Vec<usize>,
    canon_offsets: Vec<usize>,
    /// Orthonormal columns spanning `L²(B)`.
    frame: CMatrix,
    e1_canonical: BlockOperator,
}

impl BasicConstruction {
    pub fn build(spec: &InclusionSpec) -> Result<Self> {
        Self::build_with_cap(spec, GNS_CAP)
    }

    pub fn build_with_cap(spec: &InclusionSpec, cap: usize) -> Result<Self> {
        let embedding = spec.validate()?;
        let d = check_spectral_condition(spec)?
            .d
            .ok_or(Error::SpectralConditionFailed)?;
        let n: Vec<usize> = spec.super_dims().iter().map(|&x| x as usize).collect();
        let m: Vec<usize> = spec.sub_dims().iter().map(|&x| x as usize).collect();
        let gns_dim: usize = n.iter().map(|x| x * x).sum();
        if gns_dim > cap {
            return Err(Error::GnsTooLarge { dim: gns_dim, cap });
        }
        let tau = TracialState::integer(spec.super_algebra(), spec.super_dims().to_vec())?;
        let tower = spec.transposed().validate()?;

        let mut gns_offsets = Vec::with_capacity(n.len());
        let mut acc = 0;
        for &ni in &n {
            gns_offsets.push(acc);
            acc += ni * ni;
        }
        let big_n = tower.super_algebra().blocks().to_vec();
        let mut canon_offsets = Vec::with_capacity(m.len());
        let mut acc = 0;
        for (j, &mj) in m.iter().enumerate() {
            canon_offsets.push(acc);
            acc += big_n[j] * mj;
        }
        let mut to_canon = vec![0; gns_dim];
        for (i, &ni) in n.iter().enumerate() {
            for (b, lab) in embedding.labels(i).into_iter().enumerate() {
                for a in 0..ni {
                    let p = tower.position(Label {
                        i: lab.j,
                        j: i,
                        k: lab.k,
                        l: a,
                    });
                    to_canon[gns_offsets[i] + a * ni + b] = canon_offsets[lab.j] + p * m[lab.j] + lab.l;
                }
            }
        }
        let mut from_canon = vec![0; gns_dim];
        for (g, &c) in to_canon.iter().enumerate() {
            from_canon[c] = g;
        }

        let mut bc = Self {
            embedding,
            tau,
            d,
            tower,
            gns_dim,
            gns_offsets,
            from_canon,
            canon_offsets,
            frame: CMatrix::zeros(0, 0),
            e1_canonical: BlockOperator::zero(&MultiMatrixAlgebra::full(1)),
        };
        bc.frame = bc.orthonormal_frame()?;
        let (e1c, _) = bc.to_canonical(&bc.e1())?;
        bc.e1_canonical = e1c;
        Ok(bc)
    }

    /// Gram–Schmidt with one reorthogonalization pass over `embed(B)`.
    fn orthonormal_frame(&self) -> Result<CMatrix> {
        let mut cols: Vec<DVector<Complex64>> = Vec::new();
        for u in self.embedding.sub_units() {
            let mut v = self.gns_vector(&u);
            for _ in 0..2 {
                for q in &cols {
                    let c = q.dotc(&v);
                    v -= q * c;
                }
            }
            let norm = v.norm();
            if norm < 1e-12 {
                return Err(Error::SingularGram(f64::INFINITY));
            }
            cols.push(v / Complex64::new(norm, 0.0));
        }
        let frame = CMatrix::from_columns(&cols);
        let defect =
            crate::algebra::matrix::max_abs(&(frame.adjoint() * &frame - CMatrix::identity(cols.len(), cols.len())));
        if defect > 1e-12 {
            return Err(Error::SingularGram(defect));
        }
        Ok(frame)
    }

    pub fn spec(&self) -> &InclusionSpec {
        self.embedding.spec()
    }

    pub fn embedding(&self) -> &Embedding {
        &self.embedding
    }

    /// `A ⊆ A₁`, the transposed inclusion.
    pub fn tower_spec(&self) -> &InclusionSpec {
        self.tower.spec()
    }

    pub fn tower_embedding(&self) -> &Embedding {
        &self.tower
    }

    /// `A₁` in canonical form.
    pub fn algebra(&self) -> &MultiMatrixAlgebra {
        self.tower.super_algebra()
    }

    pub fn tau(&self) -> &TracialState {
        &self.tau
    }

    pub fn d(&self) -> u64 {
        self.d
    }

    pub fn gns_dim(&self) -> usize {
        self.gns_dim
    }

    fn gns_index(&self, i: usize, a: usize, b: usize) -> usize {
        let ni = self.embedding.super_algebra().blocks()[i];
        self.gns_offsets[i] + a * ni + b
    }

    /// Coordinates of `x` in the basis `ξ`.
    pub fn gns_vector(&self, x: &BlockOperator) -> DVector<Complex64> {
        let mut v = DVector::zeros(self.gns_dim);
        let big_d = self.gns_dim as f64;
        for (i, xi) in x.blocks().iter().enumerate() {
            let ni = xi.nrows();
            let w = (ni as f64 / big_d).sqrt();
            for a in 0..ni {
                for b in 0..ni {
                    v[self.gns_index(i, a, b)] = xi[(a, b)] * w;
                }
            }
        }
        v
    }

    /// Left multiplication by `x` on `L²(A, τ)`.
    pub fn left_rep(&self, x: &BlockOperator) -> CMatrix {
        let mut out = CMatrix::zeros(self.gns_dim, self.gns_dim);
        for (i, xi) in x.blocks().iter().enumerate() {
            let ni = xi.nrows();
            for c in 0..ni {
                for a in 0..ni {
                    let z = xi[(c, a)];
                    if z == Complex64::new(0.0, 0.0) {
                        continue;
                    }
                    for b in 0..ni {
                        out[(self.gns_index(i, c, b), self.gns_index(i, a, b))] = z;
                    }
                }
            }
        }
        out
    }

    /// Orthogonal projection onto `L²(B)`.
    pub fn e1(&self) -> CMatrix {
        &self.frame * self.frame.adjoint()
    }

    pub fn e1_frame(&self) -> &CMatrix {
        &self.frame
    }

    /// `e₁` in canonical form.
    pub fn e1_canonical(&self) -> &BlockOperator {
        &self.e1_canonical
    }

    /// Normalized trace on the GNS space.
    pub fn tr1(&self, x: &CMatrix) -> Complex64 {
        x.trace() / self.gns_dim as f64
    }

    /// Canonical form of `X`, read from the `l = l' = 0` entries, together
    /// with the distance from `X` to the reconstructed operator.
    pub fn to_canonical(&self, x: &CMatrix) -> Result<(BlockOperator, f64)> {
        self.check_gns(x)?;
        let m = self.spec().sub_dims();
        let blocks = self
            .algebra()
            .blocks()
            .iter()
            .enumerate()
            .map(|(j, &nj)| {
                let mj = m[j] as usize;
                CMatrix::from_fn(nj, nj, |p, q| {
                    let gp = self.from_canon[self.canon_offsets[j] + p * mj];
                    let gq = self.from_canon[self.canon_offsets[j] + q * mj];
                    x[(gp, gq)]
                })
            })
            .collect();
        let y = BlockOperator::in_algebra(self.algebra(), blocks)?;
        let back = self.from_canonical(&y)?;
        Ok((y, crate::algebra::matrix::max_abs(&(x - back))))
    }

    /// `⊕_j Y_j ⊗ I_{m_j}` on the GNS space.
    pub fn from_canonical(&self, y: &BlockOperator) -> Result<CMatrix> {
        y.check_algebra(self.algebra())?;
        let m = self.spec().sub_dims();
        let mut out = CMatrix::zeros(self.gns_dim, self.gns_dim);
        for (j, yj) in y.blocks().iter().enumerate() {
            let mj = m[j] as usize;
            for p in 0..yj.nrows() {
                for q in 0..yj.ncols() {
                    for l in 0..mj {
                        let gp = self.from_canon[self.canon_offsets[j] + p * mj + l];
                        let gq = self.from_canon[self.canon_offsets[j] + q * mj + l];
                        out[(gp, gq)] = yj[(p, q)];
                    }
                }
            }
        }
        Ok(out)
    }

    fn check_gns(&self, x: &CMatrix) -> Result<()> {
        if x.nrows() != self.gns_dim || x.ncols() != self.gns_dim {
            return Err(Error::LengthMismatch {
                what: "GNS operator",
                expected: self.gns_dim,
                actual: x.nrows().max(x.ncols()),
            });
        }
        Ok(())
    }

    /// `E₁(X)` as an element of `A`: the normalized partial trace over the
    /// column index of each block.
    pub fn dual_expectation_compressed(&self, x: &CMatrix) -> Result<BlockOperator> {
        self.check_gns(x)?;
        let blocks = self
            .embedding
            .super_algebra()
            .blocks()
            .iter()
            .enumerate()
            .map(|(i, &ni)| {
                CMatrix::from_fn(ni, ni, |a, c| {
                    let mut acc = Complex64::new(0.0, 0.0);
                    for b in 0..ni {
                        acc += x[(self.gns_index(i, a, b), self.gns_index(i, c, b))];
                    }
                    acc / ni as f64
                })
            })
            .collect();
        BlockOperator::in_algebra(self.embedding.super_algebra(), blocks)
    }

    /// `max ‖e₁ L(x) e₁ − L(E(x)) e₁‖` over the matrix units of `A`,
    /// evaluated on the frame of `e₁`.
    pub fn jones_relation_defect(&self) -> f64 {
        let ce = ConditionalExpectation::new(self.spec(), self.tau.clone()).expect("validated");
        let v = &self.frame;
        let vs = v.adjoint();
        BlockOperator::matrix_units(self.embedding.super_algebra())
            .iter()
            .map(|x| {
                let lx = self.left_rep(x);
                let lhs = v * (&vs * &lx * v);
                let rhs = self.left_rep(&ce.apply(x)) * v;
                crate::algebra::matrix::max_abs(&(lhs - rhs))
            })
            .fold(0.0, f64::max)
    }

    /// `max |tr₁(L(x)) − τ(x)|` over the matrix units of `A`.
    pub fn markov_defect(&self) -> f64 {
        BlockOperator::matrix_units(self.embedding.super_algebra())
            .iter()
            .map(|x| (self.tr1(&self.left_rep(x)) - self.tau.eval_unchecked(x)).norm())
            .fold(0.0, f64::max)
    }

    /// `‖E₁(e₁) − I/d‖`.
    pub fn e1_expectation_defect(&self) -> f64 {
        let e = self.dual_expectation_compressed(&self.e1()).expect("GNS shape");
        let target = BlockOperator::scalar(self.embedding.super_algebra(), Complex64::new(1.0 / self.d as f64, 0.0));
        (&e - &target).max_abs()
    }

    /// `‖Σ_k U_k e₁ U_k* − I‖` in canonical form.
    pub fn partition_defect(&self, units: &[BlockOperator]) -> Result<f64> {
        let mut acc = BlockOperator::zero(self.algebra());
        for p in self.twisted_terms(units)? {
            acc = &acc + &p;
        }
        Ok((&acc - &BlockOperator::identity(self.algebra())).max_abs())
    }

    /// `L(U_k) e₁ L(U_k)*` in canonical form.
    fn twisted_terms(&self, units: &[BlockOperator]) -> Result<Vec<BlockOperator>> {
        units
            .iter()
            .map(|u| {
                let lu = self.tower.embed(u)?;
                Ok(&(&lu * &self.e1_canonical) * &lu.adjoint())
            })
            .collect()
    }
}

/// `L(E₁(X))` for an operator `X` on the GNS space.
pub fn dual_expectation(bc: &BasicConstruction, x: &CMatrix) -> Result<CMatrix> {
    Ok(bc.left_rep(&bc.dual_expectation_compressed(x)?))
}

/// The dual expectation `A₁ → A` on canonical forms, computed through the
/// GNS space.
#[derive(Debug, Clone, Copy)]
pub struct DualExpectation<'a> {
    bc: &'a BasicConstruction,
}

impl<'a> DualExpectation<'a> {
    pub fn new(bc: &'a BasicConstruction) -> Self {
        Self { bc }
    }
}

impl Expectation for DualExpectation<'_> {
    fn algebra(&self) -> &MultiMatrixAlgebra {
        self.bc.algebra()
    }

    fn apply(&self, y: &BlockOperator) -> BlockOperator {
        let x = self.bc.from_canonical(y).expect("canonical shape");
        let e = self.bc.dual_expectation_compressed(&x).expect("GNS shape");
        self.bc.tower.embed(&e).expect("shape of A")
    }

    fn range_units(&self) -> Vec<BlockOperator> {
        self.bc.tower.sub_units()
    }
}

/// `W_t = Σ_k ε(tk/d) U_k e₁ U_k*` for a right basis `{U_k}` of `B ⊆ A`;
/// the result is a basis of `A ⊆ A₁` on `spec.transposed()`.
pub fn basic_construction_basis(bc: &BasicConstruction, b: &UnitaryBasis) -> Result<UnitaryBasis> {
    if b.spec() != bc.spec() {
        return Err(Error::Malformed("basis belongs to a different inclusion".into()));
    }
    if b.side() != Side::Right {
        return Err(Error::Malformed("expected a right basis".into()));
    }
    let terms = bc.twisted_terms(b.elements())?;
    let mut partition = BlockOperator::zero(bc.algebra());
    for p in &terms {
        partition = &partition + p;
    }
    let defect = (&partition - &BlockOperator::identity(bc.algebra())).max_abs();
    if defect > PARTITION_TOLERANCE {
        return Err(Error::PartitionOfUnityFailed(defect));
    }
    let d = terms.len() as u64;
    let elements = (0..d)
        .map(|t| {
            let mut w = BlockOperator::zero(bc.algebra());
            for (k, p) in terms.iter().enumerate() {
                w = &w + &p.scale(Phase::new((t * k as u64) as i64, d).epsilon());
            }
            w
        })
        .collect();
    UnitaryBasis::new(bc.tower_spec().clone(), elements, Provenance::BasicConstruction)
}
