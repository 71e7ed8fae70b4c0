//! Damped least-squares search for zeros (or prescribed levels) of the
//! moment map over the reals.
//!
//! The unknowns are all edge matrices of the doubled shape, flattened into
//! one vector; the residual stacks `mu_v - lambda_v * Id` over regular
//! vertices. Steps come from the normal equations with additive damping:
//! start at 1e-3, divide by 10 on an accepted step, multiply by 10 on a
//! rejected one. The Jacobian is analytic.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::moment::{build_moment_map, lambda_obstructed, MomentExpr};
use crate::quiver::FramingFn;
use crate::rep::Rep;
use crate::scalar::{Ring, Scalar};
use crate::sset::SSet2;

#[derive(Clone, Debug)]
pub struct SolveConfig {
    /// Level per regular vertex.
    pub lambda: BTreeMap<String, f64>,
    /// Convergence threshold on the worst per-vertex Frobenius deviation.
    pub tol: f64,
    pub max_iter: usize,
    pub seed: u64,
    /// Independent random starts; the best result wins.
    pub starts: usize,
}

impl SolveConfig {
    pub fn new(lambda: BTreeMap<String, f64>) -> SolveConfig {
        SolveConfig {
            lambda,
            tol: 1e-10,
            max_iter: 200,
            seed: 0,
            starts: 1,
        }
    }
}

/// The same level at every regular vertex.
pub fn uniform_lambda(framed: &SSet2, f: &FramingFn, value: f64) -> BTreeMap<String, f64> {
    framed
        .vertices()
        .iter()
        .filter(|v| !f.is_framing(v))
        .map(|v| (v.clone(), value))
        .collect()
}

#[derive(Clone, Debug)]
pub struct SolveResult {
    /// Representation of the doubled shape over the float ring.
    pub rep: Rep,
    /// Worst per-vertex Frobenius deviation at the final point.
    pub residual: f64,
    /// Accepted steps taken.
    pub iterations: usize,
    pub converged: bool,
    /// Numerical rank of the Jacobian at the final point.
    pub jacobian_rank: usize,
    /// Seed of the start that produced this result.
    pub seed: u64,
}

struct EdgeSlot {
    id: String,
    rows: usize,
    cols: usize,
    offset: usize,
}

struct CompiledTerm {
    sign: f64,
    /// Slot index of the leaving edge (matrix `mid x d`).
    a: usize,
    /// Slot index of the returning edge (matrix `d x mid`).
    b: usize,
    mid: usize,
}

struct VertexBlock {
    dim: usize,
    lambda: f64,
    row_offset: usize,
    terms: Vec<CompiledTerm>,
}

struct Problem {
    slots: Vec<EdgeSlot>,
    blocks: Vec<VertexBlock>,
    n_vars: usize,
    n_rows: usize,
}

fn compile(
    shape: &SSet2,
    expr: &MomentExpr,
    dims: &BTreeMap<String, usize>,
    lambda: &BTreeMap<String, f64>,
) -> Result<Problem> {
    let mut slots = Vec::new();
    let mut slot_of = BTreeMap::new();
    let mut offset = 0;
    for e in shape.edges() {
        let rows = *dims
            .get(&e.tgt)
            .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {:?}", e.tgt)))?;
        let cols = *dims
            .get(&e.src)
            .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {:?}", e.src)))?;
        slot_of.insert(e.id.clone(), slots.len());
        slots.push(EdgeSlot {
            id: e.id.clone(),
            rows,
            cols,
            offset,
        });
        offset += rows * cols;
    }

    let mut blocks = Vec::new();
    let mut row_offset = 0;
    for (v, terms) in expr.components() {
        let d = dims[v.as_str()];
        let l = *lambda
            .get(v)
            .ok_or_else(|| Error::Invalid(format!("no level assigned to vertex {v:?}")))?;
        let compiled = terms
            .iter()
            .map(|t| {
                let a = slot_of[&t.first];
                let b = slot_of[&t.second];
                CompiledTerm {
                    sign: t.sign as f64,
                    a,
                    b,
                    mid: slots[a].rows,
                }
            })
            .collect();
        blocks.push(VertexBlock {
            dim: d,
            lambda: l,
            row_offset,
            terms: compiled,
        });
        row_offset += d * d;
    }
    Ok(Problem {
        slots,
        blocks,
        n_vars: offset,
        n_rows: row_offset,
    })
}

impl Problem {
    fn residual(&self, x: &[f64], out: &mut [f64]) {
        out.fill(0.0);
        for block in &self.blocks {
            let d = block.dim;
            for t in &block.terms {
                let xa = &x[self.slots[t.a].offset..self.slots[t.a].offset + t.mid * d];
                let xb = &x[self.slots[t.b].offset..self.slots[t.b].offset + d * t.mid];
                for i in 0..d {
                    for j in 0..d {
                        let mut acc = 0.0;
                        for k in 0..t.mid {
                            acc += xb[i * t.mid + k] * xa[k * d + j];
                        }
                        out[block.row_offset + i * d + j] += t.sign * acc;
                    }
                }
            }
            for i in 0..d {
                out[block.row_offset + i * d + i] -= block.lambda;
            }
        }
    }

    fn jacobian(&self, x: &[f64]) -> Vec<f64> {
        let mut jac = vec![0.0; self.n_rows * self.n_vars];
        for block in &self.blocks {
            let d = block.dim;
            for t in &block.terms {
                let off_a = self.slots[t.a].offset;
                let off_b = self.slots[t.b].offset;
                let xa = &x[off_a..off_a + t.mid * d];
                let xb = &x[off_b..off_b + d * t.mid];
                for i in 0..d {
                    for j in 0..d {
                        let row = block.row_offset + i * d + j;
                        for k in 0..t.mid {
                            jac[row * self.n_vars + off_b + i * t.mid + k] +=
                                t.sign * xa[k * d + j];
                            jac[row * self.n_vars + off_a + k * d + j] +=
                                t.sign * xb[i * t.mid + k];
                        }
                    }
                }
            }
        }
        jac
    }

    /// Worst per-vertex Frobenius deviation, the convergence metric.
    fn metric(&self, r: &[f64]) -> f64 {
        let mut worst = 0.0f64;
        for block in &self.blocks {
            let d = block.dim;
            let mut sq = 0.0;
            for k in 0..d * d {
                let v = r[block.row_offset + k];
                sq += v * v;
            }
            worst = worst.max(sq.sqrt());
        }
        worst
    }

    fn to_rep(&self, shape: &SSet2, dims: &BTreeMap<String, usize>, x: &[f64]) -> Rep {
        let mut mats = BTreeMap::new();
        for s in &self.slots {
            let m = Matrix::from_fn(Ring::Float, s.rows, s.cols, |i, j| {
                Scalar::Float(x[s.offset + i * s.cols + j])
            })
            .unwrap();
            mats.insert(s.id.clone(), m);
        }
        Rep::from_mats(shape.clone(), dims.clone(), mats).expect("slots match the shape")
    }
}

/// Solves `L y = b` then `L^T x = y` after a Cholesky factorization of the
/// symmetric matrix `a` (row-major `n x n`). None when not positive
/// definite.
fn cholesky_solve(a: &[f64], b: &[f64], n: usize) -> Option<Vec<f64>> {
    let mut l = vec![0.0; n * n];
    for i in 0..n {
        for j in 0..=i {
            let mut sum = a[i * n + j];
            for k in 0..j {
                sum -= l[i * n + k] * l[j * n + k];
            }
            if i == j {
                if sum <= 0.0 {
                    return None;
                }
                l[i * n + i] = sum.sqrt();
            } else {
                l[i * n + j] = sum / l[j * n + j];
            }
        }
    }
    let mut y = vec![0.0; n];
    for i in 0..n {
        let mut sum = b[i];
        for k in 0..i {
            sum -= l[i * n + k] * y[k];
        }
        y[i] = sum / l[i * n + i];
    }
    let mut xv = vec![0.0; n];
    for i in (0..n).rev() {
        let mut sum = y[i];
        for k in (i + 1)..n {
            sum -= l[k * n + i] * xv[k];
        }
        xv[i] = sum / l[i * n + i];
    }
    Some(xv)
}

/// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
fn symmetric_eigenvalues(mut a: Vec<f64>, n: usize) -> Vec<f64> {
    if n == 0 {
        return Vec::new();
    }
    let scale: f64 = (0..n * n).map(|k| a[k] * a[k]).sum::<f64>().sqrt().max(1e-300);
    for _sweep in 0..100 {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += a[i * n + j] * a[i * n + j];
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[p * n + q];
                if apq.abs() <= 1e-300 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let akp = a[k * n + p];
                    let akq = a[k * n + q];
                    a[k * n + p] = c * akp - s * akq;
                    a[k * n + q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let apk = a[p * n + k];
                    let aqk = a[q * n + k];
                    a[p * n + k] = c * apk - s * aqk;
                    a[q * n + k] = s * apk + c * aqk;
                }
            }
        }
    }
    (0..n).map(|i| a[i * n + i]).collect()
}

/// Rank of the Jacobian: singular values above `1e-8` times the largest.
fn numerical_rank(jac: &[f64], rows: usize, cols: usize) -> usize {
    if rows == 0 || cols == 0 {
        return 0;
    }
    let mut jtj = vec![0.0; cols * cols];
    for i in 0..cols {
        for j in 0..cols {
            let mut acc = 0.0;
            for r in 0..rows {
                acc += jac[r * cols + i] * jac[r * cols + j];
            }
            jtj[i * cols + j] = acc;
        }
    }
    let eigs = symmetric_eigenvalues(jtj, cols);
    let sigma_max = eigs.iter().cloned().fold(0.0f64, f64::max).max(0.0).sqrt();
    if sigma_max == 0.0 {
        return 0;
    }
    eigs.iter()
        .filter(|&&e| e.max(0.0).sqrt() > 1e-8 * sigma_max)
        .count()
}

fn solve_single(
    problem: &Problem,
    shape: &SSet2,
    dims: &BTreeMap<String, usize>,
    tol: f64,
    max_iter: usize,
    seed: u64,
) -> SolveResult {
    let n = problem.n_vars;
    let m = problem.n_rows;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();

    let mut r = vec![0.0; m];
    problem.residual(&x, &mut r);
    let mut cost: f64 = r.iter().map(|v| v * v).sum();
    let mut damping = 1e-3;
    let mut iterations = 0;

    while iterations < max_iter && problem.metric(&r) > tol {
        let jac = problem.jacobian(&x);
        // Normal equations: (J^T J + damping I) delta = -J^T r.
        let mut jtj = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0.0;
                for row in 0..m {
                    acc += jac[row * n + i] * jac[row * n + j];
                }
                jtj[i * n + j] = acc;
            }
        }
        let mut g = vec![0.0; n];
        for i in 0..n {
            let mut acc = 0.0;
            for row in 0..m {
                acc += jac[row * n + i] * r[row];
            }
            g[i] = -acc;
        }

        let mut stepped = false;
        while damping <= 1e16 {
            let mut a = jtj.clone();
            for i in 0..n {
                a[i * n + i] += damping;
            }
            if let Some(delta) = cholesky_solve(&a, &g, n) {
                let trial: Vec<f64> = x.iter().zip(&delta).map(|(xi, di)| xi + di).collect();
                let mut r_trial = vec![0.0; m];
                problem.residual(&trial, &mut r_trial);
                let cost_trial: f64 = r_trial.iter().map(|v| v * v).sum();
                if cost_trial < cost {
                    x = trial;
                    r = r_trial;
                    cost = cost_trial;
                    damping = (damping / 10.0).max(1e-15);
                    stepped = true;
                    break;
                }
            }
            damping *= 10.0;
        }
        if !stepped {
            break;
        }
        iterations += 1;
    }

    let residual = problem.metric(&r);
    let jac = problem.jacobian(&x);
    SolveResult {
        rep: problem.to_rep(shape, dims, &x),
        residual,
        iterations,
        converged: residual <= tol,
        jacobian_rank: numerical_rank(&jac, m, n),
        seed,
    }
}

fn with_thread_cap<T: Send>(work: impl FnOnce() -> T + Send) -> T {
    match std::env::var("QSTACK_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
    {
        Some(cap) if cap >= 1 => rayon::ThreadPoolBuilder::new()
            .num_threads(cap)
            .build()
            .expect("thread pool")
            .install(work),
        _ => work(),
    }
}

/// Assembles the moment map of the framed shape and searches for a float
/// representation of the doubled shape meeting the level. Multiple starts
/// run in parallel; the winner is the converged result with the smallest
/// residual, ties broken by seed.
pub fn solve_moment_zero(
    framed: &SSet2,
    f: &FramingFn,
    dims: &BTreeMap<String, usize>,
    config: &SolveConfig,
) -> Result<SolveResult> {
    let lambda_scalars: BTreeMap<String, Scalar> = config
        .lambda
        .iter()
        .map(|(k, v)| (k.clone(), Scalar::Float(*v)))
        .collect();
    if lambda_obstructed(framed, f, dims, &lambda_scalars)? {
        return Err(Error::Invalid(
            "level is unreachable: without framing the moment map is trace-free, \
             but the level has nonzero weighted trace"
                .to_string(),
        ));
    }
    let (doubled, expr) = build_moment_map(framed, f)?;
    let problem = compile(&doubled.shape, &expr, dims, &config.lambda)?;
    let starts: Vec<u64> = (0..config.starts.max(1))
        .map(|k| config.seed.wrapping_add(k as u64))
        .collect();
    let results: Vec<SolveResult> = with_thread_cap(|| {
        starts
            .par_iter()
            .map(|&s| solve_single(&problem, &doubled.shape, dims, config.tol, config.max_iter, s))
            .collect()
    });
    results
        .into_iter()
        .min_by(|a, b| {
            (!a.converged, a.residual, a.seed)
                .partial_cmp(&(!b.converged, b.residual, b.seed))
                .expect("residuals are finite")
        })
        .ok_or_else(|| Error::Invalid("no starts requested".to_string()))
}
