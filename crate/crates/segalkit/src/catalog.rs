//! A generated corpus of small categories and named presets.

use std::sync::OnceLock;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::FinCat;

/// A named category of the corpus.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Entry {
    pub name: String,
    pub category: FinCat,
}

impl Entry {
    fn new(name: impl Into<String>, category: FinCat) -> Self {
        Self {
            name: name.into(),
            category,
        }
    }
}

pub const DEFAULT_SEED: u64 = 0x5e6a1;
pub const DEFAULT_SIZE: usize = 56;
/// Largest number of arrows, identities included, of a generated category.
pub const MAX_ARROWS: usize = 5;

fn associative(n: usize, mul: &[Vec<usize>]) -> bool {
    (0..n).all(|a| (0..n).all(|b| (0..n).all(|c| mul[mul[a][b]][c] == mul[a][mul[b][c]])))
}

fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for (i, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(i);
        for mut p in permutations(&rest) {
            p.insert(0, x);
            out.push(p);
        }
    }
    out
}

/// Monoid tables of order `n` up to isomorphism, unit at 0, in a canonical order.
pub fn monoid_tables(n: usize) -> Vec<Vec<Vec<usize>>> {
    if n == 0 {
        return vec![];
    }
    let free = (n - 1) * (n - 1);
    let perms: Vec<Vec<usize>> = permutations(&(1..n).collect::<Vec<_>>())
        .into_iter()
        .map(|p| std::iter::once(0).chain(p).collect())
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    let mut cells = vec![0usize; free];
    loop {
        let mul: Vec<Vec<usize>> = (0..n)
            .map(|a| {
                (0..n)
                    .map(|b| match (a, b) {
                        (0, b) => b,
                        (a, 0) => a,
                        (a, b) => cells[(a - 1) * (n - 1) + b - 1],
                    })
                    .collect()
            })
            .collect();
        if associative(n, &mul) {
            let canonical = perms
                .iter()
                .map(|p| {
                    let mut inv = vec![0; n];
                    for (i, &x) in p.iter().enumerate() {
                        inv[x] = i;
                    }
                    (0..n)
                        .map(|a| (0..n).map(|b| inv[mul[p[a]][p[b]]]).collect::<Vec<_>>())
                        .collect::<Vec<_>>()
                })
                .min()
                .expect("at least one permutation");
            seen.insert(canonical);
        }
        let mut i = 0;
        loop {
            if i == free {
                return seen.into_iter().collect();
            }
            cells[i] += 1;
            if cells[i] < n {
                break;
            }
            cells[i] = 0;
            i += 1;
        }
    }
}

/// `BZn` or `BV4` when the table is a group.
fn group_name(n: usize, mul: &[Vec<usize>]) -> Option<String> {
    if !(0..n).all(|a| (0..n).any(|b| mul[a][b] == 0)) {
        return None;
    }
    let order = |a: usize| {
        let (mut x, mut k) = (a, 1);
        while x != 0 {
            x = mul[x][a];
            k += 1;
        }
        k
    };
    Some(if (0..n).any(|a| order(a) == n) { format!("BZ{n}") } else { format!("BV{n}") })
}

fn monoid(n: usize, mul: &[Vec<usize>]) -> FinCat {
    let names: Vec<String> = (0..n).map(|i| if i == 0 { "1".into() } else { format!("m{i}") }).collect();
    let refs: Vec<&str> = names.iter().map(String::as_str).collect();
    FinCat::monoid(&refs, mul).expect("associative table with unit")
}

/// Connected, pairwise non-isomorphic pieces with at most [`MAX_ARROWS`] arrows.
pub fn blocks() -> &'static [Entry] {
    static BLOCKS: OnceLock<Vec<Entry>> = OnceLock::new();
    BLOCKS.get_or_init(|| {
        let mut out = vec![Entry::new("pt", FinCat::terminal())];
        for n in 2..=4 {
            let mut others = 0;
            for mul in monoid_tables(n) {
                let name = match group_name(n, &mul) {
                    Some(g) => g,
                    None => {
                        others += 1;
                        format!("M{n}.{}", others - 1)
                    }
                };
                out.push(Entry::new(name, monoid(n, &mul)));
            }
        }
        out.push(Entry::new("BZ5", FinCat::cyclic_group(5)));
        out.push(Entry::new("[1]", FinCat::chain(1)));
        out.push(Entry::new("I[1]", FinCat::free_groupoid(1)));
        out.push(Entry::new("pair", FinCat::parallel_pair()));
        out.push(Entry::new("cospan", cospan()));
        out.push(Entry::new("span", cospan().opposite()));
        out
    })
}

/// `0 -> 2 <- 1`.
pub fn cospan() -> FinCat {
    FinCat::preorder(3, |i, j| i == j || j == 2)
}

/// Every finite coproduct of blocks with at most [`MAX_ARROWS`] arrows, including the empty category.
pub fn generated() -> &'static [Entry] {
    static ALL: OnceLock<Vec<Entry>> = OnceLock::new();
    ALL.get_or_init(|| {
        let blocks = blocks();
        let mut out = Vec::new();
        let mut chosen = Vec::new();
        multisets(blocks, 0, MAX_ARROWS, &mut chosen, &mut out);
        out
    })
}

fn multisets(blocks: &[Entry], from: usize, room: usize, chosen: &mut Vec<usize>, out: &mut Vec<Entry>) {
    if !chosen.is_empty() {
        let name = chosen.iter().map(|&i| blocks[i].name.as_str()).collect::<Vec<_>>().join("+");
        let parts: Vec<FinCat> = chosen.iter().map(|&i| blocks[i].category.clone()).collect();
        out.push(Entry::new(name, FinCat::coproduct(&parts)));
    }
    for i in from..blocks.len() {
        let a = blocks[i].category.arrow_count();
        if a <= room {
            chosen.push(i);
            multisets(blocks, i, room - a, chosen, out);
            chosen.pop();
        }
    }
}

/// Names that every sampled corpus contains.
pub const REQUIRED: &[&str] = &["pt", "pt+pt", "[1]", "cospan", "span", "BZ2", "BZ3", "M2.0", "I[1]", "pair", "pt+[1]", "pt+pt+pt"];

/// The required entries together with a seeded sample of the rest, `size` in total.
pub fn corpus(seed: u64, size: usize) -> Vec<Entry> {
    let all = generated();
    let mut out: Vec<Entry> = REQUIRED
        .iter()
        .map(|n| all.iter().find(|e| e.name == *n).cloned().expect("required entry is generated"))
        .collect();
    let mut rest: Vec<&Entry> = all.iter().filter(|e| !REQUIRED.contains(&e.name.as_str())).collect();
    rest.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));
    out.extend(rest.into_iter().take(size.saturating_sub(out.len())).cloned());
    out
}

/// The seed from `SEGALKIT_SEED`, or the default.
pub fn seed_from_env() -> u64 {
    std::env::var("SEGALKIT_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

/// A category named by `shape` or `shape:n`, or by a corpus entry name.
pub fn preset(name: &str) -> Result<FinCat> {
    let (shape, arg) = match name.split_once(':') {
        Some((s, a)) => {
            let n = a
                .parse::<usize>()
                .map_err(|_| Error::Malformed(format!("preset argument in {name:?} is not a number")))?;
            (s, Some(n))
        }
        None => (name, None),
    };
    let c = match (shape, arg) {
        ("terminal", None) => FinCat::terminal(),
        ("discrete", Some(n)) => FinCat::discrete(n),
        ("chain", Some(n)) => FinCat::chain(n),
        ("indiscrete", Some(n)) => FinCat::indiscrete(n),
        ("free_groupoid", Some(n)) => FinCat::free_groupoid(n),
        ("cyclic", Some(n)) if n > 0 => FinCat::cyclic_group(n),
        ("parallel_pair", None) => FinCat::parallel_pair(),
        ("cospan", None) => cospan(),
        ("span", None) => cospan().opposite(),
        _ => {
            return generated()
                .iter()
                .find(|e| e.name == name)
                .map(|e| e.category.clone())
                .ok_or_else(|| Error::Malformed(format!("unknown preset {name:?}")))
        }
    };
    Ok(c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::find_isomorphism;

    #[test]
    fn monoid_counts() {
        let counts: Vec<usize> = (1..=4).map(|n| monoid_tables(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 7, 35]);
    }

    #[test]
    fn generated_entries_are_distinct() {
        let all = generated();
        assert!(all.len() >= 100);
        for e in all {
            assert!(e.category.arrow_count() <= MAX_ARROWS);
            e.category.validate().unwrap();
        }
        let small: Vec<&Entry> = all.iter().filter(|e| e.category.arrow_count() <= 3).collect();
        for (i, a) in small.iter().enumerate() {
            for b in &small[i + 1..] {
                assert!(find_isomorphism(&a.category, &b.category, 100_000).unwrap().is_none(), "{} {}", a.name, b.name);
            }
        }
    }

    #[test]
    fn corpus_is_reproducible() {
        let a = corpus(7, DEFAULT_SIZE);
        let b = corpus(7, DEFAULT_SIZE);
        assert_eq!(a.len(), DEFAULT_SIZE);
        assert_eq!(
            a.iter().map(|e| &e.name).collect::<Vec<_>>(),
            b.iter().map(|e| &e.name).collect::<Vec<_>>()
        );
    }

    #[test]
    fn presets_resolve() {
        assert_eq!(preset("chain:2").unwrap().arrow_count(), 6);
        assert_eq!(preset("M2.0").unwrap().arrow_count(), 2);
        assert!(preset("BZ2").unwrap().is_groupoid());
        assert!(preset("BV4").unwrap().is_groupoid());
        assert!(preset("nonsense").is_err());
    }
}
