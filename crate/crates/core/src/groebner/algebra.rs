use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::free::{FreePoly, Presentation, Word};
use crate::linalg::{axpy, Field, Matrix, Scalar};

use super::automaton::WordAutomaton;
use super::gb::{complete, TruncatedGB};

pub type AlgebraRef = Arc<GradedAlgebra>;

/// `F / (relations)` with everything certified in degrees `0..=bound`.
///
/// Bases and multiplication matrices are memoized on first use.
pub struct GradedAlgebra {
    gb: TruncatedGB,
    bound: i64,
    bases: Vec<OnceLock<Vec<Word>>>,
    index: Vec<OnceLock<HashMap<Vec<u16>, usize>>>,
    right: Vec<Vec<OnceLock<Matrix>>>,
    left: Vec<Vec<OnceLock<Matrix>>>,
    hilbert: OnceLock<Vec<usize>>,
}

impl fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("presentation", &self.presentation().to_string())
            .field("bound", &self.bound)
            .finish()
    }
}

impl GradedAlgebra {
    pub fn new(p: &Presentation, bound: i64) -> Result<AlgebraRef> {
        if bound < 0 {
            return Err(Error::InvalidArgument(format!("degree bound {bound} is negative")));
        }
        let gb = complete(p, bound);
        Ok(Arc::new(Self::from_gb(gb)))
    }

    fn from_gb(gb: TruncatedGB) -> Self {
        let bound = gb.bound();
        let n = bound as usize + 1;
        let g = gb.presentation().num_generators();
        let cells = |_| (0..g).map(|_| OnceLock::new()).collect();
        GradedAlgebra {
            gb,
            bound,
            bases: (0..n).map(|_| OnceLock::new()).collect(),
            index: (0..n).map(|_| OnceLock::new()).collect(),
            right: (0..n).map(cells).collect(),
            left: (0..n).map(cells).collect(),
            hilbert: OnceLock::new(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        self.gb.presentation()
    }

    pub fn gb(&self) -> &TruncatedGB {
        &self.gb
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn field(&self) -> Field {
        self.presentation().field()
    }

    pub fn num_generators(&self) -> usize {
        self.presentation().num_generators()
    }

    pub fn weight(&self, x: u16) -> i64 {
        self.presentation().weights()[x as usize] as i64
    }

    pub fn max_weight(&self) -> i64 {
        self.presentation().max_weight() as i64
    }

    pub fn check_degree(&self, e: i64) -> Result<()> {
        if e > self.bound {
            return Err(Error::DegreeAboveBound {
                degree: e,
                bound: self.bound,
            });
        }
        Ok(())
    }

    /// Normal words of degree `e`, ascending in the term order. Empty for `e < 0`.
    pub fn basis(&self, e: i64) -> Result<&[Word]> {
        self.check_degree(e)?;
        if e < 0 {
            return Ok(&[]);
        }
        Ok(self.bases[e as usize].get_or_init(|| self.build_basis(e)))
    }

    fn build_basis(&self, e: i64) -> Vec<Word> {
        if e == 0 {
            return vec![Word::empty()];
        }
        let weights = self.presentation().weights();
        let maxlen = self.gb.max_lead_len();
        let mut out = Vec::new();
        for (x, &w) in weights.iter().enumerate() {
            let w = w as i64;
            if w > e {
                continue;
            }
            for u in self.basis(e - w).expect("below bound") {
                let mut v = u.clone();
                v.push(x as u16, w as u32);
                let l = v.letters();
                let normal = (1..=maxlen.min(l.len())).all(|k| !self.gb.is_lead(&l[l.len() - k..]));
                if normal {
                    out.push(v);
                }
            }
        }
        out.sort();
        out
    }

    pub fn dim(&self, e: i64) -> Result<usize> {
        self.check_degree(e)?;
        if e < 0 {
            return Ok(0);
        }
        Ok(self.hilbert_all()[e as usize])
    }

    fn hilbert_all(&self) -> &[usize] {
        self.hilbert.get_or_init(|| {
            let leads: Vec<&[u16]> = self.gb.leading_words().map(|w| w.letters()).collect();
            let aut = WordAutomaton::new(leads, self.num_generators());
            aut.count(self.presentation().weights(), self.bound)
                .into_iter()
                .map(|c| usize::try_from(c).expect("dimension fits in usize"))
                .collect()
        })
    }

    /// `dim A_0, …, dim A_top`.
    pub fn hilbert(&self, top: i64) -> Result<Vec<usize>> {
        self.check_degree(top)?;
        if top < 0 {
            return Ok(Vec::new());
        }
        Ok(self.hilbert_all()[..=top as usize].to_vec())
    }

    pub fn index_of(&self, w: &Word) -> Option<usize> {
        let e = w.degree();
        if e < 0 || e > self.bound {
            return None;
        }
        let map = self.index[e as usize].get_or_init(|| {
            self.basis(e)
                .expect("checked")
                .iter()
                .enumerate()
                .map(|(i, w)| (w.letters().to_vec(), i))
                .collect()
        });
        map.get(w.letters()).copied()
    }

    pub fn normal_form(&self, f: &FreePoly) -> Result<FreePoly> {
        self.gb.normal_form(f)
    }

    /// Coordinates in the normal-word basis of `A_e` of an element of degree `e`.
    pub fn coords(&self, e: i64, f: &FreePoly) -> Result<Vec<Scalar>> {
        let nf = self.normal_form(f)?;
        let mut v = vec![self.field().zero(); self.dim(e)?];
        for (w, c) in nf.terms() {
            if w.degree() != e {
                return Err(Error::InvalidArgument(format!(
                    "term of degree {} where degree {e} was expected",
                    w.degree()
                )));
            }
            v[self.index_of(w).expect("normal word")] = c.clone();
        }
        Ok(v)
    }

    pub fn element(&self, e: i64, coords: &[Scalar]) -> Result<FreePoly> {
        let basis = self.basis(e)?;
        Ok(FreePoly::from_terms(
            self.field(),
            basis.iter().cloned().zip(coords.iter().cloned()),
        ))
    }

    fn mul_matrix(&self, e: i64, x: u16, on_right: bool) -> Result<&Matrix> {
        let w = self.weight(x);
        self.check_degree(e + w)?;
        if e < 0 {
            return Err(Error::InvalidArgument(format!("negative degree {e}")));
        }
        let table = if on_right { &self.right } else { &self.left };
        Ok(table[e as usize][x as usize].get_or_init(|| {
            let letter = Word::letter(x, w as u32);
            let rows = self
                .basis(e)
                .expect("checked")
                .iter()
                .map(|u| {
                    let prod = if on_right { u.concat(&letter) } else { letter.concat(u) };
                    self.coords(e + w, &FreePoly::word(self.field(), prod)).expect("checked")
                })
                .collect();
            Matrix::from_rows(self.field(), self.dim(e + w).expect("checked"), rows).expect("shape")
        }))
    }

    /// `A_e → A_{e+w}`, `a ↦ a·x`.
    pub fn right_mul(&self, e: i64, x: u16) -> Result<&Matrix> {
        self.mul_matrix(e, x, true)
    }

    /// `A_e → A_{e+w}`, `a ↦ x·a`.
    pub fn left_mul(&self, e: i64, x: u16) -> Result<&Matrix> {
        self.mul_matrix(e, x, false)
    }

    /// `v · w` for `v ∈ A_e` and a word `w`.
    pub fn apply_word_right(&self, e: i64, v: &[Scalar], w: &[u16]) -> Result<Vec<Scalar>> {
        let mut cur = v.to_vec();
        let mut d = e;
        for &x in w {
            cur = self.right_mul(d, x)?.left_apply(&cur);
            d += self.weight(x);
        }
        Ok(cur)
    }

    /// `w · v` for `v ∈ A_e` and a word `w`.
    pub fn apply_word_left(&self, e: i64, v: &[Scalar], w: &[u16]) -> Result<Vec<Scalar>> {
        let mut cur = v.to_vec();
        let mut d = e;
        for &x in w.iter().rev() {
            cur = self.left_mul(d, x)?.left_apply(&cur);
            d += self.weight(x);
        }
        Ok(cur)
    }

    /// `a · b` in coordinates, `a ∈ A_ea`, `b ∈ A_eb`.
    pub fn multiply(&self, ea: i64, a: &[Scalar], eb: i64, b: &[Scalar]) -> Result<Vec<Scalar>> {
        let mut out = vec![self.field().zero(); self.dim(ea + eb)?];
        for (w, c) in self.basis(eb)?.iter().zip(b) {
            if c.is_zero() {
                continue;
            }
            let p = self.apply_word_right(ea, a, w.letters())?;
            axpy(&mut out, c, &p);
        }
        Ok(out)
    }

    /// Matrix of `a ↦ a·f` from `A_e` to `A_{e+k}` for homogeneous `f` of degree `k`.
    pub fn right_mul_poly(&self, e: i64, f: &FreePoly, k: i64) -> Result<Matrix> {
        self.mul_poly(e, f, k, true)
    }

    /// Matrix of `a ↦ f·a` from `A_e` to `A_{e+k}`.
    pub fn left_mul_poly(&self, e: i64, f: &FreePoly, k: i64) -> Result<Matrix> {
        self.mul_poly(e, f, k, false)
    }

    fn mul_poly(&self, e: i64, f: &FreePoly, k: i64, on_right: bool) -> Result<Matrix> {
        self.check_degree(e + k)?;
        let n = self.dim(e)?;
        let m = self.dim(e + k)?;
        let mut rows = vec![vec![self.field().zero(); m]; n];
        for (i, row) in rows.iter_mut().enumerate() {
            let mut unit = vec![self.field().zero(); n];
            unit[i] = self.field().one();
            for (w, c) in f.terms() {
                if w.degree() != k {
                    return Err(Error::InvalidArgument("multiplier is not homogeneous".into()));
                }
                let img = if on_right {
                    self.apply_word_right(e, &unit, w.letters())?
                } else {
                    self.apply_word_left(e, &unit, w.letters())?
                };
                axpy(row, c, &img);
            }
        }
        Matrix::from_rows(self.field(), m, rows)
    }

    pub fn generator_coords(&self, x: u16) -> Result<Vec<Scalar>> {
        let w = self.weight(x);
        self.coords(w, &self.presentation().generator_poly(x))
    }

    pub fn display(&self, f: &FreePoly) -> String {
        self.presentation().display_poly(f)
    }
}
