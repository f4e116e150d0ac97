use std::collections::{HashMap, VecDeque};

/// Aho–Corasick automaton over the leading words; counts normal words without listing them.
pub(crate) struct WordAutomaton {
    delta: Vec<Vec<usize>>,
    dead: Vec<bool>,
}

impl WordAutomaton {
    pub(crate) fn new<'a, I: IntoIterator<Item = &'a [u16]>>(patterns: I, alphabet: usize) -> Self {
        let mut children: Vec<HashMap<u16, usize>> = vec![HashMap::new()];
        let mut dead = vec![false];
        for p in patterns {
            let mut s = 0;
            for &l in p {
                s = match children[s].get(&l) {
                    Some(&t) => t,
                    None => {
                        children.push(HashMap::new());
                        dead.push(false);
                        let t = children.len() - 1;
                        children[s].insert(l, t);
                        t
                    }
                };
            }
            dead[s] = true;
        }
        let n = children.len();
        let mut fail = vec![0usize; n];
        let mut delta = vec![vec![0usize; alphabet]; n];
        let mut queue = VecDeque::new();
        for l in 0..alphabet {
            if let Some(&t) = children[0].get(&(l as u16)) {
                delta[0][l] = t;
                queue.push_back(t);
            }
        }
        while let Some(s) = queue.pop_front() {
            dead[s] = dead[s] || dead[fail[s]];
            for l in 0..alphabet {
                match children[s].get(&(l as u16)) {
                    Some(&t) => {
                        fail[t] = delta[fail[s]][l];
                        delta[s][l] = t;
                        queue.push_back(t);
                    }
                    None => delta[s][l] = delta[fail[s]][l],
                }
            }
        }
        WordAutomaton { delta, dead }
    }

    /// Number of words of each degree 0..=top avoiding every pattern as a subword.
    pub(crate) fn count(&self, weights: &[u32], top: i64) -> Vec<u128> {
        let n = self.delta.len();
        let top = top.max(0) as usize;
        let mut cnt = vec![vec![0u128; n]; top + 1];
        cnt[0][0] = 1;
        for e in 0..=top {
            for s in 0..n {
                let c = cnt[e][s];
                if c == 0 {
                    continue;
                }
                for (l, &w) in weights.iter().enumerate() {
                    let f = e + w as usize;
                    if f > top {
                        continue;
                    }
                    let t = self.delta[s][l];
                    if !self.dead[t] {
                        cnt[f][t] += c;
                    }
                }
            }
        }
        cnt.iter().map(|row| row.iter().sum()).collect()
    }
}
