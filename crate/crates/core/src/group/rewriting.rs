//! Shortlex Knuth–Bendix completion for group presentations.
//!
//! Letters are encoded as `2i` for generator i and `2i + 1` for its inverse.
//! A completed system is confluent, so irreducible words are canonical.

use std::cmp::Ordering;
use std::collections::HashSet;

use crate::error::{Error, Result};

pub type Rule = (Vec<u16>, Vec<u16>);

pub fn inverse_letter(x: u16) -> u16 {
    x ^ 1
}

pub fn inverse_word(w: &[u16]) -> Vec<u16> {
    w.iter().rev().map(|&x| inverse_letter(x)).collect()
}

fn shortlex(a: &[u16], b: &[u16]) -> Ordering {
    a.len().cmp(&b.len()).then_with(|| a.cmp(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RewritingSystem {
    generators: usize,
    rules: Vec<Rule>,
}

impl RewritingSystem {
    /// Complete ⟨generators | relators⟩ under shortlex; gives up once the
    /// rule count exceeds `max_rules`.
    pub fn complete(generators: usize, relators: &[Vec<u16>], max_rules: usize) -> Result<Self> {
        let mut kb = Completion {
            rules: Vec::new(),
            ids: Vec::new(),
            next_id: 0,
            checked: HashSet::new(),
        };
        let mut pending: Vec<Rule> = Vec::new();
        for g in 0..generators as u16 {
            pending.push((vec![2 * g, 2 * g + 1], vec![]));
            pending.push((vec![2 * g + 1, 2 * g], vec![]));
        }
        for r in relators {
            pending.push((r.clone(), vec![]));
        }
        loop {
            if !kb.absorb(&mut pending, max_rules) {
                return Err(Error::Unsupported(format!(
                    "rewriting system exceeded {max_rules} rules without completing"
                )));
            }
            let pairs = kb.critical_pairs();
            if pairs.is_empty() {
                break;
            }
            pending = pairs;
        }
        let mut rules = kb.rules;
        rules.sort_by(|a, b| shortlex(&a.0, &b.0));
        Ok(RewritingSystem { generators, rules })
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn reduce(&self, word: &[u16]) -> Vec<u16> {
        reduce_with(&self.rules, word)
    }
}

fn reduce_with(rules: &[Rule], word: &[u16]) -> Vec<u16> {
    // Stack-based left-to-right rewriting: after each push, test rules whose
    // left side ends at the top of the stack.
    let mut out: Vec<u16> = Vec::with_capacity(word.len());
    let mut input: Vec<u16> = word.iter().rev().copied().collect();
    while let Some(x) = input.pop() {
        out.push(x);
        if let Some((l, r)) = rules.iter().find(|(l, _)| out.ends_with(l)) {
            out.truncate(out.len() - l.len());
            input.extend(r.iter().rev());
        }
    }
    out
}

struct Completion {
    rules: Vec<Rule>,
    ids: Vec<u64>,
    next_id: u64,
    checked: HashSet<(u64, u64)>,
}

impl Completion {
    fn absorb(&mut self, pending: &mut Vec<Rule>, max_rules: usize) -> bool {
        while let Some((u, v)) = pending.pop() {
            if self.rules.len() > max_rules || pending.len() > 50 * max_rules {
                return false;
            }
            let u = reduce_with(&self.rules, &u);
            let v = reduce_with(&self.rules, &v);
            let (l, r) = match shortlex(&u, &v) {
                Ordering::Equal => continue,
                Ordering::Greater => (u, v),
                Ordering::Less => (v, u),
            };
            // Rules whose left side contains the new one are re-queued.
            let mut i = 0;
            while i < self.rules.len() {
                if contains(&self.rules[i].0, &l) {
                    pending.push(self.rules.remove(i));
                    self.ids.remove(i);
                } else {
                    i += 1;
                }
            }
            self.rules.push((l, r));
            self.ids.push(self.next_id);
            self.next_id += 1;
            let snapshot = self.rules.clone();
            for rule in &mut self.rules {
                rule.1 = reduce_with(&snapshot, &rule.1);
            }
        }
        true
    }

    fn critical_pairs(&mut self) -> Vec<Rule> {
        let mut out = Vec::new();
        for i in 0..self.rules.len() {
            for j in 0..self.rules.len() {
                if !self.checked.insert((self.ids[i], self.ids[j])) {
                    continue;
                }
                let (l1, r1) = &self.rules[i];
                let (l2, r2) = &self.rules[j];
                for k in 1..l1.len().min(l2.len()) {
                    if l1[l1.len() - k..] != l2[..k] {
                        continue;
                    }
                    let mut a = r1.clone();
                    a.extend_from_slice(&l2[k..]);
                    let mut b = l1[..l1.len() - k].to_vec();
                    b.extend_from_slice(r2);
                    let a = reduce_with(&self.rules, &a);
                    let b = reduce_with(&self.rules, &b);
                    if a != b {
                        out.push((a, b));
                    }
                }
            }
        }
        out
    }
}

fn contains(hay: &[u16], needle: &[u16]) -> bool {
    hay.windows(needle.len()).any(|w| w == needle)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn free_abelian_rank_two_completes() {
        // ⟨a, b | a b A B⟩
        let sys = RewritingSystem::complete(2, &[vec![0, 2, 1, 3]], 100).unwrap();
        // b a reduces to a b
        assert_eq!(sys.reduce(&[2, 0]), vec![0, 2]);
        assert_eq!(sys.reduce(&[3, 0, 2, 1]), Vec::<u16>::new());
    }

    #[test]
    fn cyclic_group_completes() {
        let sys = RewritingSystem::complete(1, &[vec![0, 0, 0]], 50).unwrap();
        let reduced: HashSet<Vec<u16>> = [vec![], vec![0], vec![1], vec![0, 0], vec![1, 1]]
            .iter()
            .map(|w| sys.reduce(w))
            .collect();
        assert_eq!(reduced.len(), 3);
    }
}
