//! Exhaustive enumeration of representations over a prime field.
//!
//! Assignments run in lexicographic order over the free entries: edges
//! sorted by id, entries row-major within each edge, last entry moving
//! fastest. Identity edges are pinned to identity matrices and contribute
//! no free entries.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::rep::Rep;
use crate::scalar::{Ring, Scalar};
use crate::sset::SSet2;

/// Hard ceiling on the number of assignments an exhaustive pass may visit.
pub const ENUMERATION_BUDGET: u128 = 1 << 24;

/// Number of free matrix entries for `shape` at `dims`.
pub fn free_entry_count(shape: &SSet2, dims: &BTreeMap<String, usize>) -> Result<usize> {
    let mut total = 0usize;
    for e in shape.edges() {
        if e.identity {
            continue;
        }
        let rows = *dims
            .get(&e.tgt)
            .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {:?}", e.tgt)))?;
        let cols = *dims
            .get(&e.src)
            .ok_or_else(|| Error::Invalid(format!("no dimension assigned to vertex {:?}", e.src)))?;
        total += rows * cols;
    }
    Ok(total)
}

struct Assignments {
    p: u64,
    /// One digit per free entry, most significant first.
    digits: Vec<u64>,
    /// (edge index in shape order, row, col) per digit.
    slots: Vec<(usize, usize, usize)>,
    /// Current matrices, aligned with shape edge order.
    mats: Vec<Matrix>,
    /// (first, second, long) as edge indices.
    triangles: Vec<(usize, usize, usize)>,
    exhausted: bool,
}

impl Assignments {
    fn new(shape: &SSet2, dims: &BTreeMap<String, usize>, p: u64) -> Result<Assignments> {
        let ring = Ring::prime_field(p)?;
        let problems = shape.validate();
        if !problems.is_empty() {
            return Err(Error::Shape(problems.join("; ")));
        }
        let entries = free_entry_count(shape, dims)?;
        let mut budget = 1u128;
        for _ in 0..entries {
            budget = budget.saturating_mul(p as u128);
            if budget > ENUMERATION_BUDGET {
                return Err(Error::Guard(format!(
                    "p^{entries} assignments at p={p} exceed the {ENUMERATION_BUDGET} budget"
                )));
            }
        }

        let mut mats = Vec::with_capacity(shape.edges().len());
        for e in shape.edges() {
            let rows = dims[&e.tgt];
            let cols = dims[&e.src];
            mats.push(if e.identity {
                Matrix::identity(ring, rows)
            } else {
                Matrix::zeros(ring, rows, cols)
            });
        }

        let mut order: Vec<usize> = (0..shape.edges().len())
            .filter(|&i| !shape.edges()[i].identity)
            .collect();
        order.sort_by(|&a, &b| shape.edges()[a].id.cmp(&shape.edges()[b].id));
        let mut slots = Vec::with_capacity(entries);
        for &ei in &order {
            let e = &shape.edges()[ei];
            for r in 0..dims[&e.tgt] {
                for c in 0..dims[&e.src] {
                    slots.push((ei, r, c));
                }
            }
        }

        let triangles = shape
            .triangles()
            .iter()
            .map(|t| {
                (
                    shape.edge_index(&t.first).expect("validated shape"),
                    shape.edge_index(&t.second).expect("validated shape"),
                    shape.edge_index(&t.long).expect("validated shape"),
                )
            })
            .collect();

        Ok(Assignments {
            p,
            digits: vec![0; slots.len()],
            slots,
            mats,
            triangles,
            exhausted: false,
        })
    }

    /// Moves to the lexicographic successor; false when wrapped around.
    fn advance(&mut self) -> bool {
        for i in (0..self.digits.len()).rev() {
            let (ei, r, c) = self.slots[i];
            if self.digits[i] + 1 < self.p {
                self.digits[i] += 1;
                self.mats[ei].set(r, c, Scalar::fp(self.p, self.digits[i]));
                return true;
            }
            self.digits[i] = 0;
            self.mats[ei].set(r, c, Scalar::fp(self.p, 0));
        }
        false
    }

    fn satisfies_triangles(&self) -> bool {
        self.triangles.iter().all(|&(f, s, l)| {
            let composite = self.mats[s].mul(&self.mats[f]).expect("validated shape");
            composite == self.mats[l]
        })
    }
}

/// Streams every representation of `shape` over `F_p` at the given
/// dimensions, in lexicographic assignment order.
pub struct RepEnumeration {
    shape: SSet2,
    dims: BTreeMap<String, usize>,
    state: Assignments,
    fresh: bool,
}

impl Iterator for RepEnumeration {
    type Item = Rep;

    fn next(&mut self) -> Option<Rep> {
        if self.state.exhausted {
            return None;
        }
        loop {
            if self.fresh {
                self.fresh = false;
            } else if !self.state.advance() {
                self.state.exhausted = true;
                return None;
            }
            if self.state.satisfies_triangles() {
                let mut mats = BTreeMap::new();
                for (e, m) in self.shape.edges().iter().zip(&self.state.mats) {
                    mats.insert(e.id.clone(), m.clone());
                }
                let rep = Rep::from_mats(self.shape.clone(), self.dims.clone(), mats)
                    .expect("enumerated matrices match the shape");
                return Some(rep);
            }
        }
    }
}

/// Sets up an exhaustive scan, refusing when `p^entries` exceeds
/// [`ENUMERATION_BUDGET`].
pub fn enumerate_reps(
    shape: &SSet2,
    dims: &BTreeMap<String, usize>,
    p: u64,
) -> Result<RepEnumeration> {
    Ok(RepEnumeration {
        shape: shape.clone(),
        dims: dims.clone(),
        state: Assignments::new(shape, dims, p)?,
        fresh: true,
    })
}

/// Counts valid representations without materializing them.
pub fn count_reps(shape: &SSet2, dims: &BTreeMap<String, usize>, p: u64) -> Result<u64> {
    let mut state = Assignments::new(shape, dims, p)?;
    let mut count = 0u64;
    loop {
        if state.satisfies_triangles() {
            count += 1;
        }
        if !state.advance() {
            return Ok(count);
        }
    }
}
