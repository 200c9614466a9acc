use serde::{Deserialize, Serialize};

use crate::delta::{self, enumerate_monotone, monotone_rank, MonotoneMap};
use crate::error::{Error, Result};
use crate::fincat::{FinSetBase, Presheaf, SetMap};

/// How a truncated object continues above its top level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Extension {
    /// Nothing is known above the truncation.
    Truncated,
    /// Determined by matching objects above the given level.
    Coskeletal(usize),
}

impl Extension {
    /// The weaker of two policies, as inherited by products.
    pub fn meet(self, other: Extension) -> Extension {
        match (self, other) {
            (Extension::Coskeletal(a), Extension::Coskeletal(b)) => Extension::Coskeletal(a.max(b)),
            _ => Extension::Truncated,
        }
    }
}

/// A `k`-truncated simplicial set with finite levels.
///
/// Only faces `d_i : X_n -> X_{n-1}` and degeneracies `s_i : X_n -> X_{n+1}` are
/// stored; every other operator acts through its epi-mono factorization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "TruncSSetData", try_from = "TruncSSetData")]
pub struct TruncSSet {
    levels: Vec<usize>,
    faces: Vec<Vec<Vec<usize>>>,
    degeneracies: Vec<Vec<Vec<usize>>>,
    extension: Extension,
}

/// The serialized form of a [`TruncSSet`]; checked on the way in.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TruncSSetData {
    pub levels: Vec<usize>,
    pub faces: Vec<Vec<Vec<usize>>>,
    pub degeneracies: Vec<Vec<Vec<usize>>>,
    pub extension: Extension,
}

impl From<TruncSSet> for TruncSSetData {
    fn from(s: TruncSSet) -> Self {
        Self {
            levels: s.levels,
            faces: s.faces,
            degeneracies: s.degeneracies,
            extension: s.extension,
        }
    }
}

impl TryFrom<TruncSSetData> for TruncSSet {
    type Error = Error;

    fn try_from(d: TruncSSetData) -> Result<Self> {
        Self::from_operators(d.levels, d.faces, d.degeneracies, d.extension)
    }
}

impl TruncSSet {
    /// Builds from elementary operator tables and checks the simplicial identities.
    ///
    /// `faces[n][i]` is `d_i` on level `n` (with `faces[0]` empty) and
    /// `degeneracies[n][i]` is `s_i` on level `n < k`.
    pub fn from_operators(
        levels: Vec<usize>,
        faces: Vec<Vec<Vec<usize>>>,
        degeneracies: Vec<Vec<Vec<usize>>>,
        extension: Extension,
    ) -> Result<Self> {
        if levels.is_empty() {
            return Err(Error::Malformed("a simplicial set needs level 0".into()));
        }
        let k = levels.len() - 1;
        if faces.len() != k + 1 || degeneracies.len() != k + 1 {
            return Err(Error::Malformed("operator tables do not match the truncation".into()));
        }
        for n in 0..=k {
            let expected_faces = if n == 0 { 0 } else { n + 1 };
            let expected_degens = if n == k { 0 } else { n + 1 };
            if faces[n].len() != expected_faces || degeneracies[n].len() != expected_degens {
                return Err(Error::Malformed(format!("wrong number of operators on level {n}")));
            }
            for t in &faces[n] {
                if t.len() != levels[n] || t.iter().any(|&y| y >= levels[n - 1]) {
                    return Err(Error::Malformed(format!("face table on level {n} is ill-typed")));
                }
            }
            for t in &degeneracies[n] {
                if t.len() != levels[n] || t.iter().any(|&y| y >= levels[n + 1]) {
                    return Err(Error::Malformed(format!("degeneracy table on level {n} is ill-typed")));
                }
            }
        }
        let s = Self {
            levels,
            faces,
            degeneracies,
            extension,
        };
        s.validate()?;
        Ok(s)
    }

    /// Builds from an action of monotone maps, sampled on elementary operators.
    pub fn from_action(
        levels: Vec<usize>,
        extension: Extension,
        act: impl Fn(&MonotoneMap, usize) -> usize,
    ) -> Result<Self> {
        let k = levels.len() - 1;
        let mut faces = vec![Vec::new(); k + 1];
        let mut degeneracies = vec![Vec::new(); k + 1];
        for n in 0..=k {
            if n > 0 {
                faces[n] = (0..=n)
                    .map(|i| {
                        let d = MonotoneMap::face(n, i);
                        (0..levels[n]).map(|x| act(&d, x)).collect()
                    })
                    .collect();
            }
            if n < k {
                degeneracies[n] = (0..=n)
                    .map(|i| {
                        let s = MonotoneMap::degeneracy(n, i);
                        (0..levels[n]).map(|x| act(&s, x)).collect()
                    })
                    .collect();
            }
        }
        Self::from_operators(levels, faces, degeneracies, extension)
    }

    /// Exhaustive check of the simplicial identities.
    pub fn validate(&self) -> Result<()> {
        let k = self.truncation();
        let fail = |what: String| Err(Error::NotSimplicial(what));
        for n in 2..=k {
            for j in 1..=n {
                for i in 0..j {
                    // d_i d_j = d_{j-1} d_i
                    for x in 0..self.levels[n] {
                        if self.faces[n - 1][i][self.faces[n][j][x]] != self.faces[n - 1][j - 1][self.faces[n][i][x]] {
                            return fail(format!("d{i} d{j} = d{} d{i} fails on level {n}", j - 1));
                        }
                    }
                }
            }
        }
        for n in 0..k {
            for j in 0..=n {
                for x in 0..self.levels[n] {
                    let sx = self.degeneracies[n][j][x];
                    for i in 0..=n + 1 {
                        let lhs = self.faces[n + 1][i][sx];
                        let rhs = if i < j {
                            self.degeneracies[n - 1][j - 1][self.faces[n][i][x]]
                        } else if i == j || i == j + 1 {
                            x
                        } else {
                            self.degeneracies[n - 1][j][self.faces[n][i - 1][x]]
                        };
                        if lhs != rhs {
                            return fail(format!("d{i} s{j} relation fails on level {n}"));
                        }
                    }
                }
            }
        }
        for n in 0..k.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    // s_i s_j = s_{j+1} s_i
                    for x in 0..self.levels[n] {
                        let lhs = self.degeneracies[n + 1][i][self.degeneracies[n][j][x]];
                        let rhs = self.degeneracies[n + 1][j + 1][self.degeneracies[n][i][x]];
                        if lhs != rhs {
                            return fail(format!("s{i} s{j} = s{} s{i} fails on level {n}", j + 1));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn truncation(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn levels(&self) -> &[usize] {
        &self.levels
    }

    pub fn level(&self, n: usize) -> usize {
        self.levels[n]
    }

    pub fn extension(&self) -> Extension {
        self.extension
    }

    pub fn with_extension(mut self, extension: Extension) -> Self {
        self.extension = extension;
        self
    }

    /// `d_i : X_n -> X_{n-1}`.
    pub fn face(&self, n: usize, i: usize) -> &[usize] {
        &self.faces[n][i]
    }

    /// `s_i : X_n -> X_{n+1}`.
    pub fn degeneracy(&self, n: usize, i: usize) -> &[usize] {
        &self.degeneracies[n][i]
    }

    /// `x·θ` for `θ : [m] -> [n]` and `x ∈ X_n`.
    pub fn act(&self, theta: &MonotoneMap, x: usize) -> usize {
        let (surj, inj) = theta.factor();
        let mut y = x;
        let mut level = inj.target();
        for &v in inj.missing().iter().rev() {
            y = self.faces[level][v][y];
            level -= 1;
        }
        for j in surj.repeats() {
            y = self.degeneracies[level][j][y];
            level += 1;
        }
        y
    }

    /// The function `X(θ) : X_n -> X_m`.
    pub fn action_table(&self, theta: &MonotoneMap) -> SetMap {
        SetMap {
            codomain: self.levels[theta.source()],
            table: (0..self.levels[theta.target()]).map(|x| self.act(theta, x)).collect(),
        }
    }

    /// Whether `x ∈ X_n` is a degeneracy of a lower simplex.
    pub fn is_degenerate(&self, n: usize, x: usize) -> bool {
        n > 0 && (0..n).any(|i| self.degeneracies[n - 1][i][self.faces[n][i][x]] == x)
    }

    /// The standard simplex `Δ^n`; level `m` lists monotone maps `[m] -> [n]` in lexicographic order.
    pub fn standard_simplex(n: usize, k: usize) -> Self {
        let levels = (0..=k).map(|m| delta::count_monotone(m, n)).collect();
        let simplices: Vec<Vec<MonotoneMap>> = (0..=k).map(|m| enumerate_monotone(m, n)).collect();
        Self::from_action(levels, Extension::Coskeletal(1), |theta, x| {
            monotone_rank(&simplices[theta.target()][x].after(theta))
        })
        .expect("standard simplex")
    }

    /// The simplex of `Δ^n` given by a monotone map.
    pub fn simplex_index(f: &MonotoneMap) -> usize {
        monotone_rank(f)
    }

    /// The subobject of `Δ^n` on simplices accepted by `keep`, with its inclusion.
    pub fn simplex_subobject(
        n: usize,
        k: usize,
        keep: impl Fn(&MonotoneMap) -> bool,
    ) -> Result<(Self, SimplicialMap)> {
        let full = Self::standard_simplex(n, k);
        let simplices: Vec<Vec<MonotoneMap>> = (0..=k).map(|m| enumerate_monotone(m, n)).collect();
        full.subobject(|m, x| keep(&simplices[m][x]))
    }

    /// The boundary `∂Δ^n`: all non-surjective simplices.
    pub fn boundary(n: usize, k: usize) -> Self {
        Self::simplex_subobject(n, k, |f| !f.is_surjective())
            .expect("boundary is a subobject")
            .0
    }

    /// The spine `S_n`: simplices lying on one edge `{i, i+1}`.
    pub fn spine(n: usize, k: usize) -> Self {
        Self::simplex_subobject(n, k, |f| f.values()[f.source()] <= f.values()[0] + 1)
            .expect("spine is a subobject")
            .0
    }

    /// The constant simplicial set on a set with `size` elements.
    pub fn constant(size: usize, k: usize) -> Self {
        Self::from_action(vec![size; k + 1], Extension::Coskeletal(1), |_, x| x).expect("constant")
    }

    /// The subobject on the simplices accepted by `keep`, which must be closed under operators.
    pub fn subobject(&self, keep: impl Fn(usize, usize) -> bool) -> Result<(Self, SimplicialMap)> {
        let k = self.truncation();
        let kept: Vec<Vec<usize>> = (0..=k)
            .map(|n| (0..self.levels[n]).filter(|&x| keep(n, x)).collect())
            .collect();
        let mut position: Vec<Vec<usize>> = self.levels.iter().map(|&l| vec![usize::MAX; l]).collect();
        for n in 0..=k {
            for (i, &x) in kept[n].iter().enumerate() {
                position[n][x] = i;
            }
        }
        let restrict = |table: &[usize], from: usize, to: usize| -> Result<Vec<usize>> {
            kept[from]
                .iter()
                .map(|&x| match position[to][table[x]] {
                    usize::MAX => Err(Error::NotSimplicial("subobject is not closed under operators".into())),
                    p => Ok(p),
                })
                .collect()
        };
        let mut faces = vec![Vec::new(); k + 1];
        let mut degeneracies = vec![Vec::new(); k + 1];
        for n in 0..=k {
            if n > 0 {
                faces[n] = self.faces[n].iter().map(|t| restrict(t, n, n - 1)).collect::<Result<_>>()?;
            }
            if n < k {
                degeneracies[n] = self.degeneracies[n]
                    .iter()
                    .map(|t| restrict(t, n, n + 1))
                    .collect::<Result<_>>()?;
            }
        }
        let levels = kept.iter().map(Vec::len).collect();
        let sub = Self::from_operators(levels, faces, degeneracies, Extension::Truncated)?;
        Ok((sub, SimplicialMap { levels: kept }))
    }

    /// Level-wise product; the pair `(a, b)` has index `a * |B_n| + b`.
    pub fn product(&self, other: &TruncSSet, base: &FinSetBase) -> Result<Self> {
        let k = self.truncation().min(other.truncation());
        let levels = (0..=k)
            .map(|n| base.check("product level", self.levels[n] * other.levels[n]))
            .collect::<Result<Vec<_>>>()?;
        Self::from_action(levels, self.extension.meet(other.extension), |theta, x| {
            let w = other.levels[theta.target()];
            let (a, b) = (x / w, x % w);
            self.act(theta, a) * other.levels[theta.source()] + other.act(theta, b)
        })
    }

    /// Level-wise disjoint union, summands laid out consecutively.
    pub fn coproduct(parts: &[TruncSSet], base: &FinSetBase) -> Result<Self> {
        let k = parts.iter().map(TruncSSet::truncation).min().unwrap_or(0);
        let levels = (0..=k)
            .map(|n| base.check("coproduct level", parts.iter().map(|p| p.levels[n]).sum()))
            .collect::<Result<Vec<_>>>()?;
        let extension = parts
            .iter()
            .fold(Extension::Coskeletal(1), |e, p| e.meet(p.extension));
        Self::from_action(levels, extension, |theta, mut x| {
            let (n, m) = (theta.target(), theta.source());
            let mut offset = 0;
            for p in parts {
                if x < p.levels[n] {
                    return offset + p.act(theta, x);
                }
                x -= p.levels[n];
                offset += p.levels[m];
            }
            unreachable!("element outside the coproduct")
        })
    }

    /// Precomposition with order reversal.
    pub fn opposite(&self) -> Self {
        Self::from_action(self.levels.clone(), self.extension, |theta, x| self.act(&theta.op(), x))
            .expect("opposite of a simplicial set")
    }

    /// The same data truncated at a lower level.
    pub fn truncate(&self, k: usize) -> Self {
        assert!(k <= self.truncation());
        let mut degeneracies = self.degeneracies[..=k].to_vec();
        degeneracies[k].clear();
        Self {
            levels: self.levels[..=k].to_vec(),
            faces: self.faces[..=k].to_vec(),
            degeneracies,
            extension: self.extension,
        }
    }

    /// Adds level `k + 1` as the matching object `{∂Δ^{k+1}, X}` of compatible facets.
    pub fn extend(&self, base: &FinSetBase) -> Result<Self> {
        let k = self.truncation();
        match self.extension {
            Extension::Coskeletal(c) if c <= k && k >= 1 => {}
            _ => {
                return Err(Error::Unrepresentable(
                    "extension above the truncation needs a coskeletal object of truncation at least 1".into(),
                ))
            }
        }
        let n = k + 1;
        let mut diagram = crate::fincat::SetDiagram::new();
        for _ in 0..=n {
            diagram.add_node(self.levels[k]);
        }
        for j in 1..=n {
            for i in 0..j {
                // d_i x_j = d_{j-1} x_i
                let y = diagram.add_node(self.levels[k - 1]);
                let a = diagram.add_map(self.faces[k][i].as_slice());
                let b = diagram.add_map(self.faces[k][j - 1].as_slice());
                diagram.add_arrow(j, y, a);
                diagram.add_arrow(i, y, b);
            }
        }
        let limit = crate::fincat::diagram_limit(&diagram, base, "matching object", None)?;
        let size = limit.len();
        let mut faces = self.faces.clone();
        faces.push(
            (0..=n)
                .map(|j| (0..size).map(|e| limit.value(e, j)).collect())
                .collect(),
        );
        let mut degeneracies = self.degeneracies.clone();
        degeneracies[k] = (0..=k)
            .map(|i| {
                (0..self.levels[k])
                    .map(|x| {
                        let family: Vec<usize> = (0..=n)
                            .map(|j| {
                                if j < i {
                                    self.degeneracies[k - 1][i - 1][self.faces[k][j][x]]
                                } else if j == i || j == i + 1 {
                                    x
                                } else {
                                    self.degeneracies[k - 1][i][self.faces[k][j - 1][x]]
                                }
                            })
                            .collect();
                        limit
                            .find_by(|v| family.get(v).copied().unwrap_or(0))
                            .expect("degenerate simplices have compatible facets")
                    })
                    .collect()
            })
            .collect();
        degeneracies.push(Vec::new());
        let mut levels = self.levels.clone();
        levels.push(size);
        Self::from_operators(levels, faces, degeneracies, self.extension)
    }

    /// Extends with matching objects until the truncation reaches `k`.
    pub fn extend_to(&self, k: usize, base: &FinSetBase) -> Result<Self> {
        let mut x = self.clone();
        while x.truncation() < k {
            x = x.extend(base)?;
        }
        Ok(x)
    }

    /// The presheaf on `Δ≤k` with `[n] ↦ X_n`.
    pub fn as_presheaf(&self) -> Presheaf {
        let d = delta::truncated(self.truncation());
        let maps = d.maps().iter().map(|f| self.action_table(f)).collect();
        Presheaf {
            shape: d.to_fincat(),
            sets: self.levels.clone(),
            maps,
        }
    }
}

/// A level-wise map of truncated simplicial sets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SimplicialMap {
    pub levels: Vec<Vec<usize>>,
}

impl SimplicialMap {
    pub fn identity(x: &TruncSSet) -> Self {
        Self {
            levels: x.levels().iter().map(|&l| (0..l).collect()).collect(),
        }
    }

    /// `self` then `next`.
    pub fn then(&self, next: &SimplicialMap) -> Self {
        Self {
            levels: self
                .levels
                .iter()
                .zip(&next.levels)
                .map(|(a, b)| a.iter().map(|&x| b[x]).collect())
                .collect(),
        }
    }

    pub fn apply(&self, n: usize, x: usize) -> usize {
        self.levels[n][x]
    }

    /// Exhaustive check that the level maps commute with faces and degeneracies.
    pub fn validate(&self, src: &TruncSSet, tgt: &TruncSSet) -> Result<()> {
        let k = src.truncation();
        if self.levels.len() != k + 1 || tgt.truncation() < k {
            return Err(Error::NotSimplicial("map has the wrong truncation".into()));
        }
        for n in 0..=k {
            if self.levels[n].len() != src.level(n) || self.levels[n].iter().any(|&y| y >= tgt.level(n)) {
                return Err(Error::NotSimplicial(format!("level {n} table is ill-typed")));
            }
        }
        for n in 1..=k {
            for i in 0..=n {
                for x in 0..src.level(n) {
                    if self.levels[n - 1][src.face(n, i)[x]] != tgt.face(n, i)[self.levels[n][x]] {
                        return Err(Error::NotSimplicial(format!("face d{i} on level {n} does not commute")));
                    }
                }
            }
        }
        for n in 0..k {
            for i in 0..=n {
                for x in 0..src.level(n) {
                    if self.levels[n + 1][src.degeneracy(n, i)[x]] != tgt.degeneracy(n, i)[self.levels[n][x]] {
                        return Err(Error::NotSimplicial(format!(
                            "degeneracy s{i} on level {n} does not commute"
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn is_isomorphism(&self, tgt: &TruncSSet) -> bool {
        self.levels
            .iter()
            .enumerate()
            .all(|(n, t)| crate::fincat::is_bijection(t, tgt.level(n)))
    }
}
