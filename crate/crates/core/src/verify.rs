//! Independent checks of the defining properties of a unitary orthonormal
//! basis and of a conditional expectation.
//!
//! Checkers only use [`BlockOperator`] arithmetic and the supplied
//! [`Expectation`]. Residuals are entry-wise maximum moduli.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{BlockOperator, TracialState};
use crate::basis::{Side, UnitaryBasis};
use crate::expectation::Expectation;

/// Default number of random samples per check.
pub const DEFAULT_SAMPLES: usize = 10;
pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Tolerances {
    pub structural: f64,
    pub reconstruction: f64,
    pub trace: f64,
    /// Smallest eigenvalue accepted in the positivity check.
    pub positivity_floor: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Self {
            structural: 1e-9,
            reconstruction: 1e-8,
            trace: 1e-10,
            positivity_floor: -1e-9,
        }
    }
}

impl Tolerances {
    /// Scales every default tolerance so that the structural one becomes
    /// `structural`.
    pub fn scaled(structural: f64) -> Self {
        let f = structural / 1e-9;
        let d = Self::default();
        Self {
            structural,
            reconstruction: d.reconstruction * f,
            trace: d.trace * f,
            positivity_floor: d.positivity_floor * f,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    pub residual: f64,
    pub tolerance: f64,
    /// Indices locating the worst violation.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub witness: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl Check {
    pub fn new(name: impl Into<String>, residual: f64, tolerance: f64, witness: Vec<usize>) -> Self {
        Self {
            name: name.into(),
            pass: residual <= tolerance,
            residual,
            tolerance,
            witness,
            seed: None,
        }
    }

    fn seeded(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }
}

#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, other: VerificationReport) {
        self.checks.extend(other.checks);
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("plain data")
    }
}

/// `(residual, witness)` maximum; NaN counts as infinitely bad.
fn worst(items: impl ParallelIterator<Item = (f64, Vec<usize>)>) -> (f64, Vec<usize>) {
    items
        .map(|(r, w)| (if r.is_nan() { f64::INFINITY } else { r }, w))
        .reduce(
            || (0.0, Vec::new()),
            |a, b| {
                if b.0 > a.0 || (b.0 == a.0 && a.1.is_empty()) {
                    b
                } else {
                    a
                }
            },
        )
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `max_j ‖W_j W_j* − I‖`.
pub fn verify_unitary(b: &UnitaryBasis, tol: &Tolerances) -> Check {
    let (r, w) = worst(
        b.elements()
            .par_iter()
            .enumerate()
            .map(|(j, x)| (x.unitarity_defect(), vec![j])),
    );
    Check::new("unitary", r, tol.structural, w)
}

/// `max_{j,k} ‖E(W_j* W_k) − δ_jk I‖` (or `E(W_j W_k*)` for a left basis).
pub fn verify_orthonormality(b: &UnitaryBasis, e: &dyn Expectation, tol: &Tolerances) -> Check {
    let id = BlockOperator::identity(e.algebra());
    let d = b.d();
    let (r, w) = worst((0..d * d).into_par_iter().map(|idx| {
        let (j, k) = (idx / d, idx % d);
        let (wj, wk) = (&b.elements()[j], &b.elements()[k]);
        let prod = match b.side() {
            Side::Right => &wj.adjoint() * wk,
            Side::Left => wj * &wk.adjoint(),
        };
        let mut g = e.apply(&prod);
        if j == k {
            g = &g - &id;
        }
        (g.max_abs(), vec![j, k])
    }));
    Check::new("orthonormality", r, tol.structural, w)
}

/// `X = Σ W_j E(W_j* X)` (or `Σ E(X W_j*) W_j`) over all matrix units of the
/// algebra and `samples` seeded random operators.
pub fn verify_reconstruction(
    b: &UnitaryBasis,
    e: &dyn Expectation,
    tol: &Tolerances,
    seed: u64,
    samples: usize,
) -> Check {
    let mut probes = e.domain_units();
    let mut g = rng(seed);
    probes.extend((0..samples).map(|_| e.random_element(&mut g)));
    let (r, w) = worst(probes.par_iter().enumerate().map(|(p, x)| {
        let mut acc = BlockOperator::zero(e.algebra());
        for wj in b.elements() {
            let term = match b.side() {
                Side::Right => wj * &e.apply(&(&wj.adjoint() * x)),
                Side::Left => &e.apply(&(x * &wj.adjoint())) * wj,
            };
            acc = &acc + &term;
        }
        ((&acc - x).max_abs(), vec![p])
    }));
    Check::new("reconstruction", r, tol.reconstruction, w).seeded(seed)
}

/// Idempotence, unitality, positivity, `φ`-preservation and the bimodule
/// property on seeded samples.
pub fn verify_expectation_axioms(
    phi: &TracialState,
    e: &dyn Expectation,
    tol: &Tolerances,
    seed: u64,
    samples: usize,
) -> VerificationReport {
    let mut g = rng(seed);
    let xs: Vec<BlockOperator> = (0..samples).map(|_| e.random_element(&mut g)).collect();
    let ys: Vec<BlockOperator> = (0..samples).map(|_| e.random_range_element(&mut g)).collect();
    let zs: Vec<BlockOperator> = (0..samples).map(|_| e.random_range_element(&mut g)).collect();
    let mut report = VerificationReport::default();

    let (r, w) = worst(xs.par_iter().enumerate().map(|(p, x)| {
        let ex = e.apply(x);
        ((&e.apply(&ex) - &ex).max_abs(), vec![p])
    }));
    report.push(Check::new("expectation.idempotent", r, tol.structural, w).seeded(seed));

    let id = BlockOperator::identity(e.algebra());
    report.push(Check::new(
        "expectation.unital",
        (&e.apply(&id) - &id).max_abs(),
        tol.structural,
        vec![],
    ));

    let (r, w) = worst(xs.par_iter().enumerate().map(|(p, x)| {
        let ex = e.apply(&(&x.adjoint() * x));
        let min = ex
            .blocks()
            .iter()
            .map(|blk| {
                let h = (blk + blk.adjoint()) * num_complex::Complex64::new(0.5, 0.0);
                nalgebra::SymmetricEigen::new(h)
                    .eigenvalues
                    .iter()
                    .cloned()
                    .fold(f64::INFINITY, f64::min)
            })
            .fold(f64::INFINITY, f64::min);
        ((-min).max(0.0), vec![p])
    }));
    report.push(Check::new("expectation.positive", r, -tol.positivity_floor, w).seeded(seed));

    let (r, w) = worst(xs.par_iter().enumerate().map(|(p, x)| {
        let diff = match (phi.eval(&e.apply(x)), phi.eval(x)) {
            (Ok(u), Ok(v)) => (u - v).norm(),
            _ => f64::INFINITY,
        };
        (diff, vec![p])
    }));
    report.push(Check::new("expectation.state_preserving", r, tol.trace, w).seeded(seed));

    let (r, w) = worst(xs.par_iter().enumerate().map(|(p, x)| {
        let (y, z) = (&ys[p], &zs[p]);
        let lhs = e.apply(&(&(y * x) * z));
        let rhs = &(y * &e.apply(x)) * z;
        ((&lhs - &rhs).max_abs(), vec![p])
    }));
    report.push(Check::new("expectation.bimodule", r, tol.structural, w).seeded(seed));
    report
}

/// The necessary conditions on a basis of `B ⊆ A`: `Aᵗñ = d m̃` and
/// `Σ n_i² = d Σ m_j²` exactly, preservation of the trace with vector `ñ`,
/// and orthonormality as precondition.
pub fn verify_theorem_a(b: &UnitaryBasis, e: &dyn Expectation, tol: &Tolerances) -> VerificationReport {
    let spec = b.spec();
    let d = b.d() as u64;
    let mut report = VerificationReport::default();

    let at_n = spec.at_times_n();
    let (mut r, mut w) = (0.0f64, Vec::new());
    for (j, (&x, &m)) in at_n.iter().zip(spec.sub_dims()).enumerate() {
        let gap = x.abs_diff(d * m) as f64;
        if gap > r {
            r = gap;
            w = vec![j];
        }
    }
    report.push(Check::new("theorem_a.dimension_identity", r, 0.0, w));

    let lhs: u64 = spec.super_dims().iter().map(|n| n * n).sum();
    let rhs: u64 = d * spec.sub_dims().iter().map(|m| m * m).sum::<u64>();
    report.push(Check::new(
        "theorem_a.quadratic_identity",
        lhs.abs_diff(rhs) as f64,
        0.0,
        vec![],
    ));

    let tau = TracialState::integer(spec.super_algebra(), spec.super_dims().to_vec()).expect("positive dimensions");
    let units = BlockOperator::matrix_units(e.algebra());
    let (r, w) = worst(units.par_iter().enumerate().map(|(p, x)| {
        let diff = match (tau.eval(&e.apply(x)), tau.eval(x)) {
            (Ok(u), Ok(v)) => (u - v).norm(),
            _ => f64::INFINITY,
        };
        (diff, vec![p])
    }));
    report.push(Check::new("theorem_a.markov_trace_preserved", r, tol.trace, w));

    let mut ortho = verify_orthonormality(b, e, tol);
    ortho.name = "theorem_a.orthonormality".into();
    report.push(ortho);
    report
}

/// Unitarity, orthonormality, reconstruction and the Theorem A conditions.
pub fn run_all(
    b: &UnitaryBasis,
    e: &dyn Expectation,
    tol: &Tolerances,
    seed: u64,
    samples: usize,
) -> VerificationReport {
    let mut report = VerificationReport::default();
    report.push(verify_unitary(b, tol));
    report.push(verify_orthonormality(b, e, tol));
    report.push(verify_reconstruction(b, e, tol, seed, samples));
    report.extend(verify_theorem_a(b, e, tol));
    report
}
