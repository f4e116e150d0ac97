use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::linalg::Field;

use super::poly::FreePoly;
use super::word::Word;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GeneratorInfo {
    pub name: String,
    pub weight: u32,
}

impl GeneratorInfo {
    pub fn new(name: impl Into<String>, weight: u32) -> Self {
        GeneratorInfo {
            name: name.into(),
            weight,
        }
    }
}

pub fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Generators with positive weights and homogeneous relations over a fixed field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    field: Field,
    generators: Vec<GeneratorInfo>,
    relations: Vec<FreePoly>,
    weights: Vec<u32>,
    names: Vec<String>,
    index: HashMap<String, u16>,
}

impl Presentation {
    pub fn new(field: Field, generators: Vec<GeneratorInfo>, relations: Vec<FreePoly>) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, g) in generators.iter().enumerate() {
            if !is_identifier(&g.name) {
                return Err(Error::InvalidArgument(format!("`{}` is not an identifier", g.name)));
            }
            if g.weight == 0 {
                return Err(Error::ZeroWeight(g.name.clone()));
            }
            if index.insert(g.name.clone(), i as u16).is_some() {
                return Err(Error::DuplicateGenerator(g.name.clone()));
            }
        }
        if generators.len() > u16::MAX as usize {
            return Err(Error::InvalidArgument("too many generators".into()));
        }
        let weights: Vec<u32> = generators.iter().map(|g| g.weight).collect();
        let names: Vec<String> = generators.iter().map(|g| g.name.clone()).collect();
        let mut p = Presentation {
            field,
            generators,
            relations: Vec::new(),
            weights,
            names,
            index,
        };
        for r in relations {
            p.push_relation(r)?;
        }
        Ok(p)
    }

    fn push_relation(&mut self, r: FreePoly) -> Result<()> {
        if r.field() != self.field {
            return Err(Error::FieldMismatch(self.field, r.field()));
        }
        for (w, _) in r.terms() {
            if let Some(&l) = w.letters().iter().find(|&&l| l as usize >= self.generators.len()) {
                return Err(Error::UnknownGenerator(format!("#{l}")));
            }
            if Word::new(w.letters().to_vec(), &self.weights).degree() != w.degree() {
                return Err(Error::Inconsistent("word degree does not match generator weights".into()));
            }
        }
        match r.degree() {
            Some(d) if d >= 1 => {
                self.relations.push(r);
                Ok(())
            }
            _ => Err(Error::InhomogeneousRelation(r.display(&self.names))),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn generators(&self) -> &[GeneratorInfo] {
        &self.generators
    }

    pub fn relations(&self) -> &[FreePoly] {
        &self.relations
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn num_generators(&self) -> usize {
        self.generators.len()
    }

    pub fn max_weight(&self) -> u32 {
        self.weights.iter().copied().max().unwrap_or(1)
    }

    pub fn index_of(&self, name: &str) -> Option<u16> {
        self.index.get(name).copied()
    }

    pub fn word(&self, letters: &[u16]) -> Word {
        Word::new(letters.to_vec(), &self.weights)
    }

    pub fn generator_poly(&self, i: u16) -> FreePoly {
        FreePoly::word(self.field, Word::letter(i, self.weights[i as usize]))
    }

    pub fn display_poly(&self, p: &FreePoly) -> String {
        p.display(&self.names)
    }

    pub fn display_word(&self, w: &Word) -> String {
        if w.is_empty() {
            return "1".into();
        }
        let parts: Vec<&str> = w.letters().iter().map(|&l| self.names[l as usize].as_str()).collect();
        parts.join("*")
    }

    /// Same generators, additional relations appended.
    pub fn with_relations<I: IntoIterator<Item = FreePoly>>(&self, extra: I) -> Result<Presentation> {
        let mut p = self.clone();
        for r in extra {
            p.push_relation(r)?;
        }
        Ok(p)
    }

    /// Name not yet used, starting from `base`.
    pub fn fresh_name(&self, base: &str) -> String {
        if self.index_of(base).is_none() {
            return base.to_string();
        }
        (1..)
            .map(|i| format!("{base}{i}"))
            .find(|n| self.index_of(n).is_none())
            .expect("infinitely many candidates")
    }
}

impl fmt::Display for Presentation {
    /// Canonical form in the presentation language; parsing it gives back `self`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.field {
            Field::Rationals => writeln!(f, "field Q")?,
            Field::Prime(p) => writeln!(f, "field F {p}")?,
        }
        for g in &self.generators {
            writeln!(f, "gen {} {}", g.name, g.weight)?;
        }
        for r in &self.relations {
            writeln!(f, "rel {}", r.display(&self.names))?;
        }
        Ok(())
    }
}
