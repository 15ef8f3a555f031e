//! Randomized certification of sv-genericity.
//!
//! A tuple `A ∈ M_d(C)^g` is sv-generic when there are points `alpha^1..alpha^{d+1}` with
//! `||Lambda_A(alpha^j)|| = 1` whose defect kernels `ker(I - Lambda^* Lambda)` are
//! one-dimensional and form a hyperbasis of `C^d`, and points `beta^1..beta^d` whose
//! adjoint-side kernels `ker(I - Lambda Lambda^*)` form a basis.
//!
//! Sampling can only certify. Absence of a certificate after the trial budget is
//! reported as inconclusive; a joint kernel, joint cokernel or nilpotency rules the
//! property out outright.

use nalgebra::DVector;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{self, lambda_eval, stack_columns, svd_full, DEFAULT_RANK_TOL};
use crate::sampling;
use crate::tuple::MatrixTuple;
use crate::C64;

/// Minimum gap `sigma_1 - sigma_2` for an accepted sample.
pub const DEFAULT_GAP_TOL: f64 = 1e-6;
/// Minimum smallest singular value for hyperbasis and basis subsets.
pub const DEFAULT_MARGIN_TOL: f64 = 1e-8;
/// Nilpotency threshold on normalized words.
const NILPOTENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "reason", rename_all = "kebab-case")]
pub enum Obstruction {
    JointKernel { dimension: usize },
    JointCokernel { dimension: usize },
    Nilpotent,
}

impl std::fmt::Display for Obstruction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Obstruction::JointKernel { dimension } => write!(f, "joint-kernel (dimension {dimension})"),
            Obstruction::JointCokernel { dimension } => write!(f, "joint-cokernel (dimension {dimension})"),
            Obstruction::Nilpotent => f.write_str("nilpotent"),
        }
    }
}

/// Fast rejections: every obstruction found. An empty list means the screen passed.
pub fn necessary_conditions(a: &MatrixTuple, tol: f64) -> Result<Vec<Obstruction>> {
    a.ensure_square()?;
    let mut out = Vec::new();
    let k = linalg::joint_kernel(a, tol)?;
    if !k.is_empty() {
        out.push(Obstruction::JointKernel { dimension: k.len() });
    }
    let ck = linalg::joint_kernel(&a.adjoint(), tol)?;
    if !ck.is_empty() {
        out.push(Obstruction::JointCokernel { dimension: ck.len() });
    }
    if linalg::is_nilpotent(a, NILPOTENT_TOL)? {
        out.push(Obstruction::Nilpotent);
    }
    Ok(out)
}

/// Smallest singular value over the `d + 1` omit-one subsets of `d + 1` vectors in `C^d`.
pub fn hyperbasis_check(vectors: &[DVector<C64>]) -> Result<f64> {
    let d = vectors.len().checked_sub(1).filter(|&d| d >= 1).ok_or_else(|| {
        Error::ShapeMismatch("hyperbasis check needs at least two vectors".into())
    })?;
    if vectors.iter().any(|v| v.len() != d) {
        return Err(Error::ShapeMismatch(format!("expected {} vectors of length {d}", d + 1)));
    }
    let mut margin = f64::INFINITY;
    for omit in 0..=d {
        let subset: Vec<DVector<C64>> =
            vectors.iter().enumerate().filter(|&(i, _)| i != omit).map(|(_, v)| v.clone()).collect();
        margin = margin.min(basis_margin(&subset));
    }
    Ok(margin)
}

/// Smallest singular value of the square matrix with the given columns.
pub fn basis_margin(vectors: &[DVector<C64>]) -> f64 {
    linalg::singular_values(&stack_columns(vectors)).last().copied().unwrap_or(0.0)
}

#[derive(Debug, Clone, PartialEq)]
pub struct KernelWitness {
    /// Point in `C^g` with `||Lambda_A(point)|| = 1`.
    pub point: DVector<C64>,
    /// Unit vector spanning the defect kernel at `point`.
    pub kernel: DVector<C64>,
    pub trial: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct GenericityCertificate {
    pub alphas: Vec<KernelWitness>,
    pub betas: Vec<KernelWitness>,
    pub hyperbasis_margin: f64,
    pub basis_margin: f64,
    pub trials_used: usize,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq)]
pub enum ProbeOutcome {
    Certified(GenericityCertificate),
    Inconclusive { trials_used: usize },
    Rejected(Vec<Obstruction>),
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ProbeOptions {
    pub trials: usize,
    pub seed: u64,
    pub gap_tol: f64,
    pub margin_tol: f64,
}

impl Default for ProbeOptions {
    fn default() -> Self {
        Self { trials: 10_000, seed: sampling::DEFAULT_SEED, gap_tol: DEFAULT_GAP_TOL, margin_tol: DEFAULT_MARGIN_TOL }
    }
}

/// One sample: the point, its top right and left singular vectors, and the gap.
struct Sample {
    point: DVector<C64>,
    right: DVector<C64>,
    left: DVector<C64>,
    gap: f64,
}

fn point_tuple(p: &DVector<C64>) -> MatrixTuple {
    MatrixTuple::scalar(p.as_slice()).expect("finite point")
}

/// Normalize `gamma` onto the unit sphere of `Lambda_A` and read off the top singular pair.
fn sample_at(a: &MatrixTuple, gamma: &DVector<C64>) -> Result<Option<Sample>> {
    let lam = lambda_eval(a, &point_tuple(gamma))?;
    let norm = linalg::operator_norm(&lam);
    if !(norm > 0.0) {
        return Ok(None);
    }
    let point = gamma / C64::new(norm, 0.0);
    let (sigma, u, v) = svd_full(&(lam / C64::new(norm, 0.0)));
    let gap = sigma[0] - sigma.get(1).copied().unwrap_or(0.0);
    Ok(Some(Sample { point, right: v.column(0).into_owned(), left: u.column(0).into_owned(), gap }))
}

/// Calls `f` on each `k`-subset of `0..n` in lexicographic order until it returns true.
fn find_combination<F: FnMut(&[usize]) -> bool>(n: usize, k: usize, mut f: F) -> Option<Vec<usize>> {
    if k > n {
        return None;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        if f(&idx) {
            return Some(idx);
        }
        let mut i = k;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
        }
        idx[i] += 1;
        for j in (i + 1)..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

/// Search a pool for a `size`-subset containing its newest element with margin above `tol`.
fn search_pool<M>(pool: &[KernelWitness], size: usize, tol: f64, margin: M) -> Option<(Vec<KernelWitness>, f64)>
where
    M: Fn(&[DVector<C64>]) -> f64,
{
    let newest = pool.len().checked_sub(1)?;
    let mut found = None;
    find_combination(newest, size - 1, |others| {
        let mut members: Vec<usize> = others.to_vec();
        members.push(newest);
        let vecs: Vec<DVector<C64>> = members.iter().map(|&i| pool[i].kernel.clone()).collect();
        let m = margin(&vecs);
        if m > tol {
            found = Some((members.iter().map(|&i| pool[i].clone()).collect(), m));
            true
        } else {
            false
        }
    });
    found
}

/// Sample `alpha = gamma / ||Lambda_A(gamma)||` for Gaussian `gamma` and assemble a certificate.
///
/// Trial `t` draws from a generator seeded with `seed + t`. A sample is accepted when the
/// top singular value is simple; its right singular vector feeds the hyperbasis pool and
/// its left singular vector the basis pool. Pools hold at most `4 (d + 1)` candidates.
pub fn sv_probe(a: &MatrixTuple, opts: &ProbeOptions) -> Result<ProbeOutcome> {
    if opts.trials == 0 {
        return Err(Error::Invalid("trials must be at least 1".into()));
    }
    let obstructions = necessary_conditions(a, DEFAULT_RANK_TOL)?;
    if !obstructions.is_empty() {
        return Ok(ProbeOutcome::Rejected(obstructions));
    }
    let d = a.rows();
    let g = a.g();
    let cap = 4 * (d + 1);
    let mut alpha_pool: Vec<KernelWitness> = Vec::new();
    let mut beta_pool: Vec<KernelWitness> = Vec::new();
    let mut alphas: Option<(Vec<KernelWitness>, f64)> = None;
    let mut betas: Option<(Vec<KernelWitness>, f64)> = None;

    for trial in 0..opts.trials {
        let mut rng = sampling::rng(opts.seed.wrapping_add(trial as u64));
        let gamma = sampling::gaussian_vector(&mut rng, g);
        let Some(s) = sample_at(a, &gamma)? else { continue };
        if s.gap <= opts.gap_tol {
            continue;
        }
        if alphas.is_none() && alpha_pool.len() < cap {
            alpha_pool.push(KernelWitness { point: s.point.clone(), kernel: s.right, trial });
            if alpha_pool.len() > d {
                alphas = search_pool(&alpha_pool, d + 1, opts.margin_tol, |v| hyperbasis_check(v).unwrap_or(0.0));
            }
        }
        if betas.is_none() && beta_pool.len() < cap {
            beta_pool.push(KernelWitness { point: s.point, kernel: s.left, trial });
            if beta_pool.len() >= d {
                betas = search_pool(&beta_pool, d, opts.margin_tol, basis_margin);
            }
        }
        if let (Some((al, hm)), Some((be, bm))) = (&alphas, &betas) {
            return Ok(ProbeOutcome::Certified(GenericityCertificate {
                alphas: al.clone(),
                betas: be.clone(),
                hyperbasis_margin: *hm,
                basis_margin: *bm,
                trials_used: trial + 1,
                seed: opts.seed,
            }));
        }
        let alpha_stuck = alphas.is_none() && alpha_pool.len() >= cap;
        let beta_stuck = betas.is_none() && beta_pool.len() >= cap;
        if alpha_stuck || beta_stuck {
            return Ok(ProbeOutcome::Inconclusive { trials_used: trial + 1 });
        }
    }
    Ok(ProbeOutcome::Inconclusive { trials_used: opts.trials })
}

/// Independent re-check of a certificate against its tuple.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CertificateCheck {
    /// Max `| ||Lambda_A(point)|| - 1 |` over all certificate points.
    pub max_scale_error: f64,
    pub min_gap: f64,
    /// Min `|<recomputed, stored>|` over kernel vectors.
    pub min_overlap: f64,
    pub hyperbasis_margin: f64,
    pub basis_margin: f64,
    pub valid: bool,
}

impl GenericityCertificate {
    pub fn revalidate(&self, a: &MatrixTuple, opts: &ProbeOptions) -> Result<CertificateCheck> {
        let d = a.rows();
        if self.alphas.len() != d + 1 || self.betas.len() != d {
            return Err(Error::ShapeMismatch(format!(
                "certificate for d = {d} needs {} alphas and {d} betas",
                d + 1
            )));
        }
        let mut max_scale_error: f64 = 0.0;
        let mut min_gap = f64::INFINITY;
        let mut min_overlap = f64::INFINITY;
        let mut check = |w: &KernelWitness, right: bool| -> Result<()> {
            let lam = lambda_eval(a, &point_tuple(&w.point))?;
            let (sigma, u, v) = svd_full(&lam);
            max_scale_error = max_scale_error.max((sigma[0] - 1.0).abs());
            min_gap = min_gap.min(sigma[0] - sigma.get(1).copied().unwrap_or(0.0));
            let fresh = if right { v.column(0).into_owned() } else { u.column(0).into_owned() };
            min_overlap = min_overlap.min(fresh.dotc(&w.kernel).norm());
            Ok(())
        };
        for w in &self.alphas {
            check(w, true)?;
        }
        for w in &self.betas {
            check(w, false)?;
        }
        let alpha_vecs: Vec<DVector<C64>> = self.alphas.iter().map(|w| w.kernel.clone()).collect();
        let beta_vecs: Vec<DVector<C64>> = self.betas.iter().map(|w| w.kernel.clone()).collect();
        let hyperbasis_margin = hyperbasis_check(&alpha_vecs)?;
        let basis_margin = basis_margin(&beta_vecs);
        let valid = max_scale_error <= 1e-10
            && min_gap > opts.gap_tol
            && min_overlap > 1.0 - 1e-8
            && hyperbasis_margin > opts.margin_tol
            && basis_margin > opts.margin_tol;
        Ok(CertificateCheck { max_scale_error, min_gap, min_overlap, hyperbasis_margin, basis_margin, valid })
    }
}
