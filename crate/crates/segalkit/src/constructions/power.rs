use crate::delta::{count_monotone, enumerate_monotone, monotone_rank, MonotoneMap};
use crate::error::{Error, Result};
use crate::fincat::{finite_coproduct, Coproduct, FinSetBase};
use crate::internal::InternalCategory;
use crate::sset::{sset_hom, Extension, HomSet, TruncSSet};

/// The simplicial set `n ↦ Hom(A × Δ^n, Y)`, with `A × Δ^n` cut at a weight truncation.
///
/// Level `n` element `h` is a map whose value at the weight simplex `(a, b)` of level
/// `l` sits at index `a * |Δ^n_l| + b`.
#[derive(Clone, Debug)]
pub struct Power {
    pub sset: TruncSSet,
    pub weight_truncation: usize,
    homs: Vec<HomSet>,
}

impl Power {
    pub fn hom(&self, n: usize) -> &HomSet {
        &self.homs[n]
    }

    /// The value of the level-`n` element `h` at the weight simplex `(a, b)` of level `l`.
    pub fn value(&self, n: usize, h: usize, l: usize, a: usize, b: &MonotoneMap) -> usize {
        self.homs[n].value(h, l, a * count_monotone(l, n) + monotone_rank(b))
    }

    pub fn internal(&self, base: &FinSetBase) -> Result<InternalCategory> {
        InternalCategory::new(self.sset.clone(), base)
    }
}

/// The weight truncation at which maps into `y` are already determined.
pub fn determining_truncation(y: &TruncSSet) -> usize {
    match y.extension() {
        Extension::Coskeletal(c) => c.min(y.truncation()),
        Extension::Truncated => y.truncation(),
    }
}

/// `n ↦ Hom(tr_j(A × Δ^n), Y)` for `n ≤ k`.
pub fn power(y: &TruncSSet, a: &TruncSSet, k: usize, j: usize, base: &FinSetBase) -> Result<Power> {
    let j = j.min(a.truncation());
    let a = a.truncate(j);
    let homs = (0..=k)
        .map(|n| {
            let w = a.product(&TruncSSet::standard_simplex(n, j), base)?;
            sset_hom(&w, y, base)
        })
        .collect::<Result<Vec<_>>>()?;
    let simplices: Vec<Vec<Vec<MonotoneMap>>> = (0..=k)
        .map(|m| (0..=j).map(|l| enumerate_monotone(l, m)).collect())
        .collect();
    let levels = homs
        .iter()
        .map(|h| base.check("power level", h.len()))
        .collect::<Result<Vec<_>>>()?;
    let sset = TruncSSet::from_action(levels, y.extension(), |theta, h| {
        let (m, n) = (theta.source(), theta.target());
        homs[m]
            .find_with(|l, w| {
                let size = simplices[m][l].len();
                let (ai, bi) = (w / size, w % size);
                let b = theta.after(&simplices[m][l][bi]);
                homs[n].value(h, l, ai * count_monotone(l, n) + monotone_rank(&b))
            })
            .expect("precomposition with a weight map is a cone")
    })?;
    Ok(Power {
        sset,
        weight_truncation: j,
        homs,
    })
}

/// `∐_S C` with its injections.
pub fn copower(s: usize, c: usize, base: &FinSetBase) -> Result<Coproduct> {
    finite_coproduct(&vec![c; s], base)
}

/// `(K ⊗ X)_n = ∐_{K_n} X_n`; the copy of `x` at `k` has index `k * |X_n| + x`.
pub fn tensor(k: &TruncSSet, x: &TruncSSet, base: &FinSetBase) -> Result<TruncSSet> {
    let t = k.truncation().min(x.truncation());
    let copowers = (0..=t)
        .map(|n| copower(k.level(n), x.level(n), base))
        .collect::<Result<Vec<_>>>()?;
    let levels = copowers.iter().map(|c| c.total).collect();
    TruncSSet::from_action(levels, k.extension().meet(x.extension()), |theta, e| {
        let (i, z) = copowers[theta.target()].tag(e);
        copowers[theta.source()].offsets[k.act(theta, i)] + x.act(theta, z)
    })
}

/// `X^K` with `(X^K)_n = {K × Δ^n, X}`, to the truncation of `X`.
pub fn cotensor(x: &InternalCategory, k: &TruncSSet, base: &FinSetBase) -> Result<Power> {
    let y = x.sset();
    power(y, k, y.truncation(), determining_truncation(y), base)
}

/// `Y^X` stored to level 2; its level `n` is `Hom(tr_2(X × Δ^n), Y)`.
pub fn exponential(y: &InternalCategory, x: &InternalCategory, base: &FinSetBase) -> Result<(Power, InternalCategory)> {
    exponential_at(y, x, 2, base)
}

/// `Y^X` with the end taken over `Δ≤j`.
pub fn exponential_at(
    y: &InternalCategory,
    x: &InternalCategory,
    j: usize,
    base: &FinSetBase,
) -> Result<(Power, InternalCategory)> {
    if j > x.sset().truncation() {
        return Err(Error::MissingExponential(format!("the exponent stops below level {j}")));
    }
    let p = power(y.sset(), x.sset(), 2, j, base)?;
    let c = p.internal(base)?;
    Ok((p, c))
}
