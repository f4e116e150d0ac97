use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::linalg::{Field, Scalar};

use super::word::Word;

/// Noncommutative polynomial: words with nonzero coefficients. The leading term is the
/// largest word under the term order, i.e. the last map entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePoly {
    field: Field,
    terms: BTreeMap<Word, Scalar>,
}

impl FreePoly {
    pub fn zero(field: Field) -> Self {
        FreePoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::monomial(field.one(), Word::empty())
    }

    pub fn word(field: Field, w: Word) -> Self {
        Self::monomial(field.one(), w)
    }

    pub fn monomial(c: Scalar, w: Word) -> Self {
        let mut p = Self::zero(c.field());
        if !c.is_zero() {
            p.terms.insert(w, c);
        }
        p
    }

    pub fn from_terms<I: IntoIterator<Item = (Word, Scalar)>>(field: Field, terms: I) -> Self {
        let mut p = Self::zero(field);
        for (w, c) in terms {
            p.add_term(w, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> {
        self.terms.iter()
    }

    pub fn into_terms(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub fn coefficient(&self, w: &Word) -> Scalar {
        self.terms.get(w).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn leading(&self) -> Option<(&Word, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_word(&self) -> Option<&Word> {
        self.terms.keys().next_back()
    }

    pub fn pop_leading(&mut self) -> Option<(Word, Scalar)> {
        self.terms.pop_last()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut it = self.terms.keys().map(Word::degree);
        match it.next() {
            Some(d) => it.all(|e| e == d),
            None => true,
        }
    }

    /// Common degree of all terms; `None` for zero or inhomogeneous polynomials.
    pub fn degree(&self) -> Option<i64> {
        if self.is_zero() || !self.is_homogeneous() {
            return None;
        }
        self.leading_word().map(Word::degree)
    }

    pub fn add_term(&mut self, w: Word, c: &Scalar) {
        if !c.is_zero() {
            self.add_owned(w, c.clone());
        }
    }

    pub(crate) fn add_owned(&mut self, w: Word, c: Scalar) {
        match self.terms.entry(w) {
            Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    /// `self += c · other`
    pub fn add_scaled(&mut self, c: &Scalar, other: &FreePoly) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_owned(w.clone(), c * a);
        }
    }

    /// `self += c · u · other · v`
    pub fn add_scaled_product(&mut self, c: &Scalar, u: &Word, other: &FreePoly, v: &Word) {
        if c.is_zero() {
            return;
        }
        for (w, a) in &other.terms {
            self.add_owned(u.concat(w).concat(v), c * a);
        }
    }

    fn check(&self, other: &FreePoly) -> Result<()> {
        if self.field != other.field {
            return Err(Error::ContextMismatch(format!(
                "coefficients over {} and {}",
                self.field, other.field
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check(other)?;
        let mut out = self.clone();
        for (w, c) in &other.terms {
            out.add_term(w.clone(), c);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check(other)?;
        Ok(self.add(&other.neg())?)
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, c)| (w.clone(), -c)).collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> FreePoly {
        if c.is_zero() {
            return Self::zero(self.field);
        }
        FreePoly {
            field: self.field,
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// Product by word concatenation, extended bilinearly.
    pub fn mul(&self, other: &FreePoly) -> Result<FreePoly> {
        self.check(other)?;
        let mut out = Self::zero(self.field);
        for (u, a) in &self.terms {
            for (v, b) in &other.terms {
                out.add_term(u.concat(v), &(a * b));
            }
        }
        Ok(out)
    }

    pub fn mul_words(&self, left: &Word, right: &Word) -> FreePoly {
        let mut out = Self::zero(self.field);
        out.add_scaled_product(&self.field.one(), left, self, right);
        out
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> FreePoly {
        match self.leading() {
            Some((_, c)) if !c.is_one() => self.scale(&c.inv().expect("nonzero leading coefficient")),
            _ => self.clone(),
        }
    }

    /// Renders in the presentation syntax, leading term first.
    pub fn display(&self, names: &[String]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = if neg { -c } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let word: Vec<&str> = w.letters().iter().map(|&l| names[l as usize].as_str()).collect();
            if word.is_empty() {
                out.push_str(&abs.to_string());
            } else {
                if !abs.is_one() {
                    out.push_str(&abs.to_string());
                    out.push('*');
                }
                out.push_str(&word.join("*"));
            }
        }
        out
    }
}
