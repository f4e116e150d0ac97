use std::collections::{BTreeMap, HashMap};

use crate::error::{Error, Result};
use crate::linalg::Scalar;
use crate::free::{FreePoly, Presentation, Word};

/// Gröbner basis of the relation ideal, complete for every degree up to `bound`.
///
/// Elements are monic, inter-reduced and listed by increasing leading word.
#[derive(Clone, Debug)]
pub struct TruncatedGB {
    presentation: Presentation,
    bound: i64,
    elements: Vec<FreePoly>,
    leads: HashMap<Vec<u16>, usize>,
    lead_lens: Vec<usize>,
}

impl TruncatedGB {
    fn empty(p: &Presentation, bound: i64) -> Self {
        TruncatedGB {
            presentation: p.clone(),
            bound,
            elements: Vec::new(),
            leads: HashMap::new(),
            lead_lens: Vec::new(),
        }
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    pub fn bound(&self) -> i64 {
        self.bound
    }

    pub fn elements(&self) -> &[FreePoly] {
        &self.elements
    }

    pub fn leading_words(&self) -> impl Iterator<Item = &Word> {
        self.elements.iter().map(|g| g.leading_word().expect("nonzero"))
    }

    pub(crate) fn is_lead(&self, letters: &[u16]) -> bool {
        self.leads.contains_key(letters)
    }

    pub(crate) fn max_lead_len(&self) -> usize {
        self.lead_lens.last().copied().unwrap_or(0)
    }

    fn push(&mut self, g: FreePoly) {
        let lead = g.leading_word().expect("nonzero").letters().to_vec();
        let len = lead.len();
        self.leads.insert(lead, self.elements.len());
        if let Err(at) = self.lead_lens.binary_search(&len) {
            self.lead_lens.insert(at, len);
        }
        self.elements.push(g);
    }

    /// A divisor of `w`: (element index, start position of its leading word in `w`).
    fn find_divisor(&self, w: &[u16]) -> Option<(usize, usize)> {
        for start in 0..w.len() {
            for &len in &self.lead_lens {
                if start + len > w.len() {
                    break;
                }
                if let Some(&i) = self.leads.get(&w[start..start + len]) {
                    return Some((i, start));
                }
            }
        }
        None
    }

    /// Whether a leading word occurs in `w` other than as a prefix or a suffix.
    fn has_inner_lead(&self, w: &[u16]) -> bool {
        for start in 1..w.len() {
            for &len in &self.lead_lens {
                if start + len >= w.len() {
                    break;
                }
                if self.leads.contains_key(&w[start..start + len]) {
                    return true;
                }
            }
        }
        false
    }

    pub fn is_normal(&self, w: &[u16]) -> bool {
        self.find_divisor(w).is_none()
    }

    /// Fully reduced remainder of `f`; no term of the result contains a leading word.
    pub fn normal_form(&self, f: &FreePoly) -> Result<FreePoly> {
        if let Some((w, _)) = f.terms().find(|(w, _)| w.degree() > self.bound) {
            return Err(Error::DegreeAboveBound {
                degree: w.degree(),
                bound: self.bound,
            });
        }
        Ok(self.reduce_unchecked(f.clone()))
    }

    fn reduce_unchecked(&self, mut rem: FreePoly) -> FreePoly {
        let weights = self.presentation.weights();
        let mut out = FreePoly::zero(rem.field());
        while let Some((w, c)) = rem.pop_leading() {
            match self.find_divisor(w.letters()) {
                Some((i, start)) => {
                    let g = &self.elements[i];
                    let glen = g.leading_word().expect("nonzero").len();
                    let u = w.sub(0, start, weights);
                    let v = w.sub(start + glen, w.len(), weights);
                    let m = -&c;
                    for (gw, gc) in g.terms().rev().skip(1) {
                        rem.add_owned(u.concat(gw).concat(&v), &m * gc);
                    }
                }
                None => out.add_term(w, &c),
            }
        }
        out
    }
}

/// Eliminates within one degree: returns monic, fully inter-reduced polynomials with
/// distinct leading words, sorted by leading word. The batch is kept in reduced echelon
/// form throughout, so each incoming row is cleared in one pass.
fn echelon_batch(polys: Vec<FreePoly>) -> Vec<FreePoly> {
    let mut batch: BTreeMap<Word, FreePoly> = BTreeMap::new();
    for mut p in polys {
        let hits: Vec<(Word, Scalar)> = p
            .terms()
            .filter(|(w, _)| batch.contains_key(*w))
            .map(|(w, c)| (w.clone(), c.clone()))
            .collect();
        for (w, c) in hits {
            p.add_scaled(&-&c, &batch[&w]);
        }
        let Some(lw) = p.leading_word().cloned() else {
            continue;
        };
        let p = p.monic();
        for row in batch.values_mut() {
            let c = row.coefficient(&lw);
            if !c.is_zero() {
                row.add_scaled(&-&c, &p);
            }
        }
        batch.insert(lw, p);
    }
    batch.into_values().collect()
}

/// S-polynomials of the overlaps of `lm(f)` followed by `lm(g)`. An overlap word with a
/// leading word strictly inside it is skipped: its S-polynomial is a combination of word
/// multiples of overlaps of lower degree, which are resolved first.
fn overlaps(
    gb: &TruncatedGB,
    f: &FreePoly,
    g: &FreePoly,
    weights: &[u32],
    bound: i64,
    out: &mut BTreeMap<i64, Vec<FreePoly>>,
) {
    let a = f.leading_word().expect("nonzero");
    let b = g.leading_word().expect("nonzero");
    let (al, bl) = (a.letters(), b.letters());
    for k in 1..al.len().min(bl.len()) {
        if al[al.len() - k..] != bl[..k] {
            continue;
        }
        let overlap_deg = Word::new(bl[..k].to_vec(), weights).degree();
        let deg = a.degree() + b.degree() - overlap_deg;
        if deg > bound {
            continue;
        }
        let mut word = al.to_vec();
        word.extend_from_slice(&bl[k..]);
        if gb.has_inner_lead(&word) {
            continue;
        }
        let right = b.sub(k, bl.len(), weights);
        let left = a.sub(0, al.len() - k, weights);
        let s = f
            .mul_words(&Word::empty(), &right)
            .sub(&g.mul_words(&left, &Word::empty()))
            .expect("same field");
        if !s.is_zero() {
            out.entry(deg).or_default().push(s);
        }
    }
}

/// Homogeneous two-sided Buchberger completion, processing obstructions degree by degree
/// and discarding everything above `bound`.
pub fn complete(p: &Presentation, bound: i64) -> TruncatedGB {
    let mut gb = TruncatedGB::empty(p, bound);
    let weights = p.weights().to_vec();
    let mut pending: BTreeMap<i64, Vec<FreePoly>> = BTreeMap::new();
    for r in p.relations() {
        let d = r.degree().expect("validated relation");
        if d <= bound {
            pending.entry(d).or_default().push(r.clone());
        }
    }
    while let Some((d, polys)) = pending.pop_first() {
        let reduced: Vec<FreePoly> = polys
            .into_iter()
            .map(|f| gb.reduce_unchecked(f))
            .filter(|f| !f.is_zero())
            .collect();
        let fresh = echelon_batch(reduced);
        let _ = d;
        for g in fresh {
            let j = gb.elements.len();
            gb.push(g);
            let g = &gb.elements[j];
            for i in 0..=j {
                let f = &gb.elements[i];
                overlaps(&gb, f, g, &weights, bound, &mut pending);
                if i != j {
                    overlaps(&gb, g, f, &weights, bound, &mut pending);
                }
            }
        }
    }
    gb
}
