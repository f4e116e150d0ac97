//! Brute-force reference computations shared by integration tests. Nothing here uses the
//! Gröbner engine.
#![allow(dead_code)]

use std::collections::{BTreeMap, HashMap};

use ncproj_core::free::{FreePoly, GeneratorInfo, Presentation, Word};
use ncproj_core::linalg::{Field, Scalar};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// All words (as letter lists) of weighted degree `e`.
pub fn words_of_degree(weights: &[u32], e: i64) -> Vec<Vec<u16>> {
    if e < 0 {
        return Vec::new();
    }
    let mut table: Vec<Vec<Vec<u16>>> = vec![vec![Vec::new()]];
    for d in 1..=e {
        let mut cur = Vec::new();
        for (x, &w) in weights.iter().enumerate() {
            let w = w as i64;
            if w <= d {
                for u in &table[(d - w) as usize] {
                    let mut v = u.clone();
                    v.push(x as u16);
                    cur.push(v);
                }
            }
        }
        table.push(cur);
    }
    table.pop().unwrap()
}

/// Sparse echelon basis keyed by pivot column.
pub struct SparseEchelon {
    field: Field,
    rows: HashMap<usize, BTreeMap<usize, Scalar>>,
}

impl SparseEchelon {
    pub fn new(field: Field) -> Self {
        SparseEchelon {
            field,
            rows: HashMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn insert(&mut self, mut v: BTreeMap<usize, Scalar>) -> bool {
        v.retain(|_, c| !c.is_zero());
        while let Some((&col, c)) = v.iter().next_back() {
            let c = c.clone();
            match self.rows.get(&col) {
                Some(row) => {
                    for (&j, a) in row {
                        let cur = v.get(&j).cloned().unwrap_or_else(|| self.field.zero());
                        let new = &cur - &(&c * a);
                        if new.is_zero() {
                            v.remove(&j);
                        } else {
                            v.insert(j, new);
                        }
                    }
                }
                None => {
                    let inv = c.inv().unwrap();
                    let row = v.into_iter().map(|(j, a)| (j, &a * &inv)).collect();
                    self.rows.insert(col, row);
                    return true;
                }
            }
        }
        false
    }
}

/// `dim F_e − dim span{u·r·v}`, by direct elimination over the word basis of `F_e`.
pub fn quotient_dim(p: &Presentation, e: i64) -> usize {
    let weights = p.weights();
    let words = words_of_degree(weights, e);
    let index: HashMap<&[u16], usize> = words.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
    let mut ech = SparseEchelon::new(p.field());
    for r in p.relations() {
        let d = r.degree().unwrap();
        if d > e {
            continue;
        }
        for k in 0..=(e - d) {
            for u in words_of_degree(weights, k) {
                for v in words_of_degree(weights, e - d - k) {
                    let mut vec = BTreeMap::new();
                    for (w, c) in r.terms() {
                        let mut full = u.clone();
                        full.extend_from_slice(w.letters());
                        full.extend_from_slice(&v);
                        vec.insert(index[full.as_slice()], c.clone());
                    }
                    ech.insert(vec);
                }
            }
        }
    }
    words.len() - ech.rank()
}

/// Coefficients of `∏ 1/(1 − t^{q_i})` up to `t^top`.
pub fn weighted_polynomial_series(weights: &[u32], top: usize) -> Vec<usize> {
    let mut c = vec![0usize; top + 1];
    c[0] = 1;
    for &q in weights {
        let q = q as usize;
        for i in q..=top {
            c[i] += c[i - q];
        }
    }
    c
}

pub fn poly_in(p: &Presentation, text: &str) -> FreePoly {
    ncproj_core::free::parse_poly(p, text).unwrap()
}

/// Up to 3 generators of weight ≤ 2 and up to 2 random homogeneous relations of degree 2..=4.
pub fn random_presentation(rng: &mut ChaCha8Rng, field: Field) -> Presentation {
    let ngens = rng.gen_range(1..=3);
    let gens: Vec<GeneratorInfo> = (0..ngens)
        .map(|i| GeneratorInfo::new(format!("x{i}"), rng.gen_range(1..=2)))
        .collect();
    let weights: Vec<u32> = gens.iter().map(|g| g.weight).collect();
    let mut rels = Vec::new();
    for _ in 0..rng.gen_range(0..=2) {
        let d = rng.gen_range(2..=4);
        let words = words_of_degree(&weights, d);
        if words.is_empty() {
            continue;
        }
        let mut r = FreePoly::zero(field);
        for _ in 0..rng.gen_range(1..=4) {
            let w = &words[rng.gen_range(0..words.len())];
            r.add_term(Word::new(w.clone(), &weights), &field.from_i64(rng.gen_range(-3..=3)));
        }
        if !r.is_zero() {
            rels.push(r);
        }
    }
    Presentation::new(field, gens, rels).unwrap()
}
