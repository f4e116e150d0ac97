use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::free::{FreePoly, GeneratorInfo, Presentation};
use crate::groebner::{AlgebraRef, GradedAlgebra};
use crate::linalg::{left_kernel_basis, Matrix, Scalar, Subspace};
use crate::morphism::AlgebraMorphism;

/// `A⁽ⁿ⁾ = ⊕_i A_{ni}` with a computed presentation and its inclusion into `A`.
///
/// Generators in degree `i` are normal words of `A_{ni}` spanning a complement of the
/// products of lower generators; relations are found degree by degree as the kernel of
/// evaluation on the normal words of the presentation built so far.
#[derive(Clone, Debug)]
pub struct VeroneseAlgebra {
    n: i64,
    base: AlgebraRef,
    algebra: AlgebraRef,
    embedding: AlgebraMorphism,
}

struct Evaluator<'a> {
    base: &'a AlgebraRef,
    n: i64,
    images: Vec<FreePoly>,
    weights: Vec<u32>,
    cache: HashMap<(i64, u16), Matrix>,
}

impl Evaluator<'_> {
    fn eval(&mut self, letters: &[u16]) -> Result<Vec<Scalar>> {
        let field = self.base.field();
        let mut v = vec![field.one()];
        let mut deg = 0;
        for &l in letters {
            let k = self.n * self.weights[l as usize] as i64;
            if !self.cache.contains_key(&(deg, l)) {
                let m = self.base.right_mul_poly(deg, &self.images[l as usize], k)?;
                self.cache.insert((deg, l), m);
            }
            v = self.cache[&(deg, l)].left_apply(&v);
            deg += k;
        }
        Ok(v)
    }
}

fn generator_name(base: &Presentation, letters: &[u16], taken: &[GeneratorInfo]) -> String {
    let stem = letters
        .iter()
        .map(|&l| base.names()[l as usize].as_str())
        .collect::<Vec<_>>()
        .join("_");
    let used = |s: &str| taken.iter().any(|g| g.name == s);
    if !used(&stem) {
        return stem;
    }
    (2..)
        .map(|i| format!("{stem}_{i}"))
        .find(|s| !used(s))
        .expect("infinitely many candidates")
}

impl VeroneseAlgebra {
    /// Builds `A⁽ⁿ⁾` through degree `⌊D/n⌋`, where `D` is the bound of `base`.
    pub fn new(base: &AlgebraRef, n: i64) -> Result<Self> {
        if n < 1 {
            return Err(Error::InvalidArgument(format!("Veronese index {n} must be positive")));
        }
        let field = base.field();
        let bp = base.presentation();
        let top = base.bound() / n;
        let mut infos: Vec<GeneratorInfo> = Vec::new();
        let mut images: Vec<FreePoly> = Vec::new();
        for i in 1..=top {
            let e = n * i;
            let mut products = Subspace::zero(field, base.dim(e)?);
            for (info, img) in infos.iter().zip(&images) {
                let j = info.weight as i64;
                if j >= i {
                    continue;
                }
                let m = base.left_mul_poly(n * (i - j), img, n * j)?;
                for r in m.row_vecs() {
                    products.insert(r);
                }
            }
            for c in products.complement_columns() {
                let w = base.basis(e)?[c].clone();
                let name = generator_name(bp, w.letters(), &infos);
                infos.push(GeneratorInfo::new(name, i as u32));
                images.push(FreePoly::word(field, w));
            }
        }
        let mut pres = Presentation::new(field, infos.clone(), Vec::new())?;
        let mut ev = Evaluator {
            base,
            n,
            images: images.clone(),
            weights: infos.iter().map(|g| g.weight).collect(),
            cache: HashMap::new(),
        };
        for i in 1..=top {
            let partial = GradedAlgebra::new(&pres, i)?;
            let words = partial.basis(i)?.to_vec();
            if words.is_empty() {
                continue;
            }
            let rows = words
                .iter()
                .map(|w| ev.eval(w.letters()))
                .collect::<Result<Vec<_>>>()?;
            let m = Matrix::from_rows(field, base.dim(n * i)?, rows)?;
            let kernel = left_kernel_basis(&m)?;
            let new_rels: Vec<FreePoly> = kernel
                .row_vecs()
                .into_iter()
                .map(|k| {
                    FreePoly::from_terms(
                        field,
                        words.iter().cloned().zip(k).filter(|(_, c)| !c.is_zero()),
                    )
                })
                .collect();
            if !new_rels.is_empty() {
                pres = pres.with_relations(new_rels)?;
            }
        }
        let algebra = GradedAlgebra::new(&pres, top)?;
        for i in 0..=top {
            if algebra.dim(i)? != base.dim(n * i)? {
                return Err(Error::Inconsistent(format!(
                    "Veronese presentation has the wrong dimension in degree {i}"
                )));
            }
        }
        let embedding = AlgebraMorphism::new(algebra.clone(), base.clone(), images, n)?;
        Ok(VeroneseAlgebra {
            n,
            base: base.clone(),
            algebra,
            embedding,
        })
    }

    pub fn n(&self) -> i64 {
        self.n
    }

    pub fn base(&self) -> &AlgebraRef {
        &self.base
    }

    pub fn algebra(&self) -> &AlgebraRef {
        &self.algebra
    }

    /// `A⁽ⁿ⁾ → A`, degree `i` into degree `n·i`.
    pub fn embedding(&self) -> &AlgebraMorphism {
        &self.embedding
    }

    pub fn presentation(&self) -> &Presentation {
        self.algebra.presentation()
    }
}
