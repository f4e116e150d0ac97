use crate::error::{Error, Result};
use crate::groebner::AlgebraRef;
use crate::linalg::{Matrix, Subspace};

use super::cover::{FreeCover, ModuleElement};
use super::graded::{GradedModule, ModulePresentation};

/// `(⊕ g_i A) / (relations)` computed degree by degree on `[min d_i, hi]`.
///
/// If the quotient vanishes on `max weight` consecutive degrees above every generator,
/// it vanishes from there on; the result is then marked bounded.
pub fn present_module(
    algebra: &AlgebraRef,
    generators: Vec<i64>,
    relations: Vec<ModuleElement>,
    hi: i64,
) -> Result<GradedModule> {
    let a = algebra;
    let field = a.field();
    let g = a.num_generators();
    let pres_rel = relations.clone();
    let cover = FreeCover::new(generators.clone());
    if generators.is_empty() {
        let m = GradedModule::zero(a.clone());
        m.set_presentation(ModulePresentation {
            generators,
            generator_vectors: Vec::new(),
            relations,
            certified_through: None,
        });
        return Ok(m);
    }
    let lo = *generators.iter().min().expect("nonempty");
    let dmax = *generators.iter().max().expect("nonempty");
    cover.check(a, hi)?;
    let mut by_degree: std::collections::BTreeMap<i64, Vec<Vec<crate::linalg::Scalar>>> = Default::default();
    for r in &relations {
        if r.components.len() != generators.len() {
            return Err(Error::DimensionMismatch {
                expected: generators.len(),
                found: r.components.len(),
            });
        }
        if r.degree < lo || r.degree > hi {
            if r.degree < lo && !r.is_zero() {
                return Err(Error::InhomogeneousRelation(format!("relation of degree {} below all generators", r.degree)));
            }
            continue;
        }
        by_degree.entry(r.degree).or_default().push(cover.from_element(a, r)?);
    }
    let hi = hi.max(lo);
    let mut spans: Vec<Subspace> = Vec::new();
    for e in lo..=hi {
        let mut rel = Subspace::zero(field, cover.dim(a, e)?);
        for x in 0..g as u16 {
            let src = e - a.weight(x);
            if src < lo {
                continue;
            }
            for r in spans[(src - lo) as usize].basis() {
                rel.insert(cover.right_mul(a, src, r, x)?);
            }
        }
        for v in by_degree.remove(&e).unwrap_or_default() {
            rel.insert(v);
        }
        spans.push(rel);
    }
    let dims: Vec<usize> = spans.iter().map(|s| s.ambient() - s.dim()).collect();
    // vanishing run certifies boundedness
    let w = a.max_weight();
    let mut top = hi;
    let mut bounded = false;
    for e0 in dmax..=hi - w {
        if (e0 + 1..=e0 + w).all(|e| dims[(e - lo) as usize] == 0) {
            bounded = true;
            top = (lo..=e0).rev().find(|&e| dims[(e - lo) as usize] != 0).unwrap_or(lo);
            break;
        }
    }
    let mut actions = Vec::new();
    for e in lo..=top {
        let src = &spans[(e - lo) as usize];
        let mut row = Vec::with_capacity(g);
        for x in 0..g as u16 {
            let t = e + a.weight(x);
            if t > top {
                row.push(None);
                continue;
            }
            let dst = &spans[(t - lo) as usize];
            let rows = src
                .complement_columns()
                .into_iter()
                .map(|c| {
                    let unit = crate::linalg::unit_vec(field, src.ambient(), c);
                    Ok(dst.quotient_coords(&cover.right_mul(a, e, &unit, x)?))
                })
                .collect::<Result<Vec<_>>>()?;
            row.push(Some(Matrix::from_rows(field, dst.ambient() - dst.dim(), rows)?));
        }
        actions.push(row);
    }
    let m = GradedModule::from_data(a.clone(), lo, top, bounded, dims[..=(top - lo) as usize].to_vec(), actions)?;
    let generator_vectors = (0..generators.len())
        .map(|i| {
            let d = generators[i];
            Ok(spans[(d - lo) as usize].quotient_coords(&cover.generator_vector(a, i)?))
        })
        .collect::<Result<Vec<_>>>()?;
    m.set_presentation(ModulePresentation {
        generators,
        generator_vectors,
        relations: pres_rel,
        certified_through: None,
    });
    Ok(m)
}

/// The regular module `A`, certified on `[0, hi]`.
pub fn regular_module(algebra: &AlgebraRef, hi: i64) -> Result<GradedModule> {
    present_module(algebra, vec![0], Vec::new(), hi)
}

/// `A(p)`: one generator in degree `-p`.
pub fn free_module(algebra: &AlgebraRef, degrees: &[i64], hi: i64) -> Result<GradedModule> {
    present_module(algebra, degrees.to_vec(), Vec::new(), hi)
}
