use crate::error::{Error, Result};
use crate::free::parse::{parse_poly_tokens, statements, Alphabet};
use crate::free::{is_identifier, FreePoly, Presentation};
use crate::groebner::AlgebraRef;

use super::cover::{default_generator_names, ModuleElement};
use super::graded::GradedModule;
use super::present::present_module;

/// Parsed `gen <name> <degree>` / `rel <poly>` text; each relation term starts with a
/// module generator, e.g. `rel g1*x - g2*y`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModuleSpec {
    pub names: Vec<String>,
    pub generators: Vec<i64>,
    pub relations: Vec<ModuleElement>,
}

struct Extended<'a> {
    algebra: &'a Presentation,
    names: &'a [String],
}

impl Alphabet for Extended<'_> {
    fn resolve(&self, name: &str) -> Option<(u16, u32)> {
        if let Some(x) = self.algebra.index_of(name) {
            return Some((x, self.algebra.weights()[x as usize]));
        }
        let n = self.algebra.num_generators();
        self.names
            .iter()
            .position(|g| g == name)
            .map(|i| ((n + i) as u16, 0))
    }
}

impl ModuleSpec {
    /// Free module on generators of the given degrees.
    pub fn free(generators: Vec<i64>) -> Self {
        ModuleSpec {
            names: default_generator_names(generators.len()),
            generators,
            relations: Vec::new(),
        }
    }

    /// Default top degree: the lowest generator plus `d`.
    pub fn default_hi(&self, d: i64) -> i64 {
        self.generators.iter().min().copied().unwrap_or(0) + d
    }

    pub fn build(&self, algebra: &AlgebraRef, hi: i64) -> Result<GradedModule> {
        present_module(algebra, self.generators.clone(), self.relations.clone(), hi)
    }

    pub fn display(&self, algebra: &AlgebraRef) -> String {
        let mut s = String::new();
        for (n, d) in self.names.iter().zip(&self.generators) {
            s.push_str(&format!("gen {n} {d}\n"));
        }
        for r in &self.relations {
            s.push_str(&format!("rel {}\n", r.display(algebra, &self.names)));
        }
        s
    }
}

pub fn parse_module_spec(text: &str, algebra: &AlgebraRef) -> Result<ModuleSpec> {
    let pres = algebra.presentation();
    let field = pres.field();
    let sts = statements(text)?;
    let mut names: Vec<String> = Vec::new();
    let mut generators = Vec::new();
    for st in &sts {
        if st.keyword() == Some("gen") {
            let name = st.ident(1, "a generator name")?;
            if !is_identifier(&name) {
                return Err(st.error_at(1, "invalid generator name"));
            }
            if names.contains(&name) || pres.index_of(&name).is_some() {
                return Err(Error::DuplicateGenerator(name));
            }
            let d = st.int(2, "an integer degree")?;
            st.expect_end(st.int_end(2))?;
            let d = i64::try_from(&d).map_err(|_| st.error_at(2, "degree out of range"))?;
            names.push(name);
            generators.push(d);
        }
    }
    let alphabet = Extended {
        algebra: pres,
        names: &names,
    };
    let mut relations = Vec::new();
    for st in &sts {
        match st.keyword() {
            Some("gen") => {}
            Some("rel") => {
                let p = parse_poly_tokens(st, 1, field, &alphabet)?;
                relations.push(split_relation(st, &p, pres, &generators)?);
            }
            _ => return Err(st.error_at(0, "expected `gen` or `rel`")),
        }
    }
    Ok(ModuleSpec {
        names,
        generators,
        relations,
    })
}

fn split_relation(
    st: &crate::free::parse::Statement,
    p: &FreePoly,
    pres: &Presentation,
    generators: &[i64],
) -> Result<ModuleElement> {
    let n_alg = pres.num_generators();
    let field = pres.field();
    let mut components = vec![FreePoly::zero(field); generators.len()];
    let mut degree = None;
    for (w, c) in p.terms() {
        let letters = w.letters();
        let head = letters.first().copied().unwrap_or(0) as usize;
        if letters.is_empty() || head < n_alg || letters[1..].iter().any(|&l| l as usize >= n_alg) {
            return Err(st.error_at(1, "each term must be a module generator times algebra generators"));
        }
        let i = head - n_alg;
        let word = pres.word(&letters[1..]);
        let d = generators[i] + word.degree();
        if *degree.get_or_insert(d) != d {
            return Err(Error::InhomogeneousRelation(st.rest_text(1)));
        }
        components[i].add_term(word, c);
    }
    Ok(ModuleElement {
        degree: degree.unwrap_or(0),
        components,
    })
}
