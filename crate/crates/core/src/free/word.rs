use std::cmp::Ordering;

/// A monomial of the free algebra: generator indices plus the cached weighted degree.
///
/// The derived order is the term order: weighted degree, then length, then
/// left-lexicographic with earlier-declared generators smaller.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word {
    degree: i64,
    letters: Vec<u16>,
}

impl Word {
    pub fn empty() -> Self {
        Word {
            degree: 0,
            letters: Vec::new(),
        }
    }

    pub fn new(letters: Vec<u16>, weights: &[u32]) -> Self {
        let degree = letters.iter().map(|&l| weights[l as usize] as i64).sum();
        Word { degree, letters }
    }

    pub fn letter(l: u16, weight: u32) -> Self {
        Word {
            degree: weight as i64,
            letters: vec![l],
        }
    }

    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn letters(&self) -> &[u16] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.letters);
        letters.extend_from_slice(&other.letters);
        Word {
            degree: self.degree + other.degree,
            letters,
        }
    }

    pub fn push(&mut self, l: u16, weight: u32) {
        self.letters.push(l);
        self.degree += weight as i64;
    }

    pub fn sub(&self, start: usize, end: usize, weights: &[u32]) -> Word {
        Word::new(self.letters[start..end].to_vec(), weights)
    }

    /// Position of the first occurrence of `pattern` as a contiguous subword.
    pub fn find(&self, pattern: &[u16]) -> Option<usize> {
        if pattern.is_empty() {
            return Some(0);
        }
        self.letters.windows(pattern.len()).position(|w| w == pattern)
    }

    pub fn term_cmp(&self, other: &Word) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then(self.letters.len().cmp(&other.letters.len()))
            .then_with(|| self.letters.cmp(&other.letters))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.term_cmp(other)
    }
}

/// `u` and `v` under the fixed term order; `weights` gives generator weights.
pub fn term_compare(u: &[u16], v: &[u16], weights: &[u32]) -> Ordering {
    Word::new(u.to_vec(), weights).cmp(&Word::new(v.to_vec(), weights))
}
