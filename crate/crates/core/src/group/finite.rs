use std::collections::VecDeque;

use crate::error::{invalid, Result};
use crate::group::word::Letter;

/// A finite group given by its full multiplication table. Element `0` is the
/// identity; `generators` lists the element indices of the designated
/// generating set.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    table: Vec<Vec<usize>>,
    generators: Vec<usize>,
    inverses: Vec<usize>,
    spellings: Vec<Vec<Letter>>,
}

impl FiniteGroup {
    pub fn new(table: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<Self> {
        let n = table.len();
        if n == 0 {
            return invalid("finite group table is empty");
        }
        for row in &table {
            if row.len() != n {
                return invalid("finite group table is not square");
            }
            if row.iter().any(|&x| x >= n) {
                return invalid("finite group table entry out of range");
            }
        }
        for x in 0..n {
            if table[0][x] != x || table[x][0] != x {
                return invalid("element 0 of a finite group table must be the identity");
            }
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return invalid(format!("finite group table is not associative at ({a},{b},{c})"));
                    }
                }
            }
        }
        let mut inverses = vec![usize::MAX; n];
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == 0) {
                Some(b) if table[b][a] == 0 => inverses[a] = b,
                _ => return invalid(format!("element {a} has no two-sided inverse")),
            }
        }
        if generators.iter().any(|&g| g >= n) {
            return invalid("finite group generator out of range");
        }
        let mut group = FiniteGroup {
            table,
            generators,
            inverses,
            spellings: Vec::new(),
        };
        group.spellings = group.shortest_spellings()?;
        Ok(group)
    }

    /// Z/n as a table, generated by 1.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return invalid("cyclic order must be at least 1");
        }
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let gens = if n > 1 { vec![1] } else { vec![] };
        FiniteGroup::new(table, gens)
    }

    /// The symmetric group on three letters; elements are the permutations
    /// of (0,1,2) in lexicographic order, generated by the transposition (0 1)
    /// and the 3-cycle (0 1 2).
    pub fn symmetric3() -> Self {
        let perms: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
        let index = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
        let table = perms
            .iter()
            .map(|p| {
                perms
                    .iter()
                    // (p q)(i) = p(q(i))
                    .map(|q| index([p[q[0]], p[q[1]], p[q[2]]]))
                    .collect()
            })
            .collect();
        FiniteGroup::new(table, vec![index([1, 0, 2]), index([1, 2, 0])]).expect("S3 table is valid")
    }

    pub fn order(&self) -> usize {
        self.table.len()
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn pow(&self, a: usize, k: i64) -> usize {
        let base = if k < 0 { self.inv(a) } else { a };
        let mut acc = 0;
        for _ in 0..k.unsigned_abs() % self.order() as u64 {
            acc = self.mul(acc, base);
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// A shortest word for `a` over the designated generators (local indices).
    pub fn spell(&self, a: usize) -> &[Letter] {
        &self.spellings[a]
    }

    fn shortest_spellings(&self) -> Result<Vec<Vec<Letter>>> {
        let n = self.order();
        let mut words: Vec<Option<Vec<Letter>>> = vec![None; n];
        words[0] = Some(Vec::new());
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for (gi, &g) in self.generators.iter().enumerate() {
                for (step, e) in [(g, 1i64), (self.inv(g), -1)] {
                    let y = self.mul(x, step);
                    if words[y].is_none() {
                        let mut w = words[x].clone().unwrap();
                        w.push(Letter::new(gi, e));
                        words[y] = Some(crate::group::word::collect_letters(w));
                        queue.push_back(y);
                    }
                }
            }
        }
        words
            .into_iter()
            .map(|w| {
                w.ok_or_else(|| {
                    crate::error::Error::Invalid("finite group generators do not generate the table".into())
                })
            })
            .collect()
    }

    /// All subgroups, each as a sorted element list, smallest first.
    pub fn subgroups(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        let mut found: Vec<Vec<usize>> = Vec::new();
        let mut frontier: Vec<Vec<usize>> = vec![vec![0]];
        found.push(vec![0]);
        while let Some(h) = frontier.pop() {
            for x in 0..n {
                if h.binary_search(&x).is_ok() {
                    continue;
                }
                let mut gens = h.clone();
                gens.push(x);
                let k = self.closure(&gens);
                if !found.contains(&k) {
                    found.push(k.clone());
                    frontier.push(k);
                }
            }
        }
        found.sort_by_key(|s| (s.len(), s.clone()));
        found
    }

    /// Subgroup generated by `gens`, as a sorted element list.
    pub fn closure(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&x| seen[x]).collect()
    }

    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&z| (0..self.order()).all(|x| self.mul(z, x) == self.mul(x, z)))
            .collect()
    }
}
