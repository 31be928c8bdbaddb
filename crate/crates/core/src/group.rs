//! Finite groups given by multiplication tables.
//!
//! Elements are indices `0..order`; subsets and subgroups are sorted index
//! vectors.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteGroup {
    labels: Vec<String>,
    table: Vec<usize>,
    identity: usize,
    inverses: Vec<usize>,
}

impl FiniteGroup {
    /// Validates a Latin-square table with identity and associativity.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>, identity: usize) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Validation("empty group".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Validation("group table is not square".into()));
        }
        if identity >= n {
            return Err(Error::Validation("identity out of range".into()));
        }
        let mut seen = std::collections::HashSet::new();
        for l in &labels {
            if !seen.insert(l.as_str()) {
                return Err(Error::Validation(format!("duplicate group label {l}")));
            }
        }
        for i in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for j in 0..n {
                let (a, b) = (table[i][j], table[j][i]);
                if a >= n || b >= n || row[a] || col[b] {
                    return Err(Error::Validation("group table is not a Latin square".into()));
                }
                row[a] = true;
                col[b] = true;
            }
        }
        for i in 0..n {
            if table[identity][i] != i || table[i][identity] != i {
                return Err(Error::Validation("identity does not act trivially".into()));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = table[a][b];
                for c in 0..n {
                    if table[ab][c] != table[a][table[b][c]] {
                        return Err(Error::Validation("group table is not associative".into()));
                    }
                }
            }
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let inverses = (0..n)
            .map(|a| (0..n).find(|&b| flat[a * n + b] == identity).expect("latin square"))
            .collect();
        Ok(FiniteGroup { labels, table: flat, identity, inverses })
    }

    pub fn trivial() -> Self {
        Self::cyclic(1)
    }

    /// `C_n` with labels `e, c, c2, ...`.
    pub fn cyclic(n: usize) -> Self {
        assert!(n >= 1);
        let labels = (0..n).map(cyclic_label).collect();
        let table = (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect();
        Self::from_table(labels, table, 0).expect("cyclic table")
    }

    /// Direct product; labels are concatenated with identities dropped.
    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (na, nb) = (a.order(), b.order());
        let mut labels = Vec::with_capacity(na * nb);
        for i in 0..na {
            for j in 0..nb {
                labels.push(match (i == a.identity, j == b.identity) {
                    (true, true) => "e".to_string(),
                    (true, false) => b.labels[j].clone(),
                    (false, true) => a.labels[i].clone(),
                    (false, false) => format!("{}{}", a.labels[i], b.labels[j]),
                });
            }
        }
        let idx = |i: usize, j: usize| i * nb + j;
        let table = (0..na * nb)
            .map(|x| {
                (0..na * nb)
                    .map(|y| idx(a.mul(x / nb, y / nb), b.mul(x % nb, y % nb)))
                    .collect()
            })
            .collect();
        Self::from_table(labels, table, idx(a.identity, b.identity)).expect("product table")
    }

    /// Klein four-group with labels `e, a, b, ab`.
    pub fn klein() -> Self {
        let mut a = Self::cyclic(2);
        a.labels[1] = "a".into();
        let mut b = Self::cyclic(2);
        b.labels[1] = "b".into();
        Self::direct_product(&a, &b)
    }

    /// Symmetric group on three points: `r` of order 3, `s` of order 2,
    /// with `s r = r2 s`.
    pub fn s3() -> Self {
        // element r^i s^j stored at index 2i + j
        let labels = ["e", "s", "r", "rs", "r2", "r2s"].iter().map(|s| s.to_string()).collect();
        let mul = |x: usize, y: usize| {
            let (i1, j1, i2, j2) = (x / 2, x % 2, y / 2, y % 2);
            let i = if j1 == 0 { (i1 + i2) % 3 } else { (i1 + 3 - i2) % 3 };
            2 * i + (j1 + j2) % 2
        };
        let table = (0..6).map(|x| (0..6).map(|y| mul(x, y)).collect()).collect();
        Self::from_table(labels, table, 0).expect("s3 table")
    }

    /// Names accepted: `C<n>`, `V4`, `S3`, `C<n>xC<m>`, `trivial`.
    pub fn named(name: &str) -> Result<Self> {
        let lower = name.trim();
        match lower {
            "trivial" | "C1" => return Ok(Self::trivial()),
            "V4" | "K4" | "C2xC2" => return Ok(Self::klein()),
            "S3" => return Ok(Self::s3()),
            _ => {}
        }
        let parts: Vec<&str> = lower.split('x').collect();
        let mut g: Option<FiniteGroup> = None;
        for (k, part) in parts.iter().enumerate() {
            let n: usize = part
                .strip_prefix('C')
                .and_then(|s| s.parse().ok())
                .filter(|&n| n >= 1)
                .ok_or_else(|| Error::Validation(format!("unknown group {name}")))?;
            let mut c = Self::cyclic(n);
            if parts.len() > 1 {
                // distinguish factors: a, b, d, ...
                let letter = ['a', 'b', 'd', 'f'][k.min(3)];
                for i in 1..n {
                    c.labels[i] = if i == 1 { letter.to_string() } else { format!("{letter}{i}") };
                }
            }
            g = Some(match g {
                None => c,
                Some(h) => Self::direct_product(&h, &c),
            });
        }
        g.ok_or_else(|| Error::Validation(format!("unknown group {name}")))
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.labels.len()
    }

    #[inline]
    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverses[a]
    }

    pub fn mul3(&self, a: usize, b: usize, c: usize) -> usize {
        self.mul(self.mul(a, b), c)
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn find(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn parse_element(&self, label: &str) -> Result<usize> {
        self.find(label.trim())
            .ok_or_else(|| Error::Validation(format!("unknown group element {label}")))
    }

    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        let n = self.order();
        (0..n).map(|i| self.table[i * n..(i + 1) * n].to_vec()).collect()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn subgroup_generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut inside = vec![false; self.order()];
        inside[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if !inside[y] {
                    inside[y] = true;
                    frontier.push(y);
                }
            }
        }
        (0..self.order()).filter(|&i| inside[i]).collect()
    }

    pub fn is_subgroup(&self, set: &[usize]) -> bool {
        !set.is_empty()
            && set.contains(&self.identity)
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    /// `x H`, sorted.
    pub fn left_coset(&self, x: usize, h: &[usize]) -> Vec<usize> {
        sorted(h.iter().map(|&y| self.mul(x, y)))
    }

    /// `H x`, sorted.
    pub fn right_coset(&self, h: &[usize], x: usize) -> Vec<usize> {
        sorted(h.iter().map(|&y| self.mul(y, x)))
    }

    /// Canonical (lowest index) representative of `x H`.
    pub fn left_coset_rep(&self, x: usize, h: &[usize]) -> usize {
        h.iter().map(|&y| self.mul(x, y)).min().expect("nonempty subgroup")
    }

    /// Canonical (lowest index) representative of `H x`.
    pub fn right_coset_rep(&self, h: &[usize], x: usize) -> usize {
        h.iter().map(|&y| self.mul(y, x)).min().expect("nonempty subgroup")
    }

    /// Lowest-index representatives of the left cosets of `h`.
    pub fn left_transversal(&self, h: &[usize]) -> Vec<usize> {
        let mut reps: Vec<usize> = (0..self.order()).map(|x| self.left_coset_rep(x, h)).collect();
        reps.sort_unstable();
        reps.dedup();
        reps
    }

    /// `x H x^{-1}`, sorted.
    pub fn conjugate(&self, x: usize, h: &[usize]) -> Vec<usize> {
        sorted(h.iter().map(|&y| self.mul3(x, y, self.inv(x))))
    }

    pub fn labels_of(&self, set: &[usize]) -> Vec<String> {
        set.iter().map(|&x| self.labels[x].clone()).collect()
    }

    pub fn all(&self) -> Vec<usize> {
        (0..self.order()).collect()
    }
}

fn cyclic_label(i: usize) -> String {
    match i {
        0 => "e".into(),
        1 => "c".into(),
        _ => format!("c{i}"),
    }
}

fn sorted(it: impl Iterator<Item = usize>) -> Vec<usize> {
    let mut v: Vec<usize> = it.collect();
    v.sort_unstable();
    v.dedup();
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn named_groups_have_expected_orders() {
        for (name, n) in [("C4", 4), ("V4", 4), ("S3", 6), ("C2xC4", 8), ("trivial", 1)] {
            assert_eq!(FiniteGroup::named(name).unwrap().order(), n);
        }
        assert!(FiniteGroup::named("Z9").is_err());
    }

    #[test]
    fn s3_is_nonabelian() {
        let g = FiniteGroup::s3();
        assert!(!g.is_abelian());
        let r = g.find("r").unwrap();
        let s = g.find("s").unwrap();
        assert_eq!(g.mul(s, r), g.mul(g.mul(r, r), s));
    }

    #[test]
    fn cosets_partition() {
        let g = FiniteGroup::cyclic(4);
        let h = g.subgroup_generated(&[2]);
        assert_eq!(h, vec![0, 2]);
        assert!(g.is_subgroup(&h));
        assert_eq!(g.left_transversal(&h), vec![0, 1]);
    }

    #[test]
    fn rejects_non_latin() {
        let labels = vec!["e".into(), "a".into()];
        let bad = vec![vec![0, 1], vec![1, 1]];
        assert!(FiniteGroup::from_table(labels, bad, 0).is_err());
    }
}
