use std::borrow::Cow;
use std::collections::HashMap;

use super::category::FinCat;
use crate::error::{Error, Result};

/// Finite sets `{0, .., n-1}` with `n` at most `bound`, and function tables between them.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FinSetBase {
    pub bound: usize,
}

impl FinSetBase {
    pub const DEFAULT_BOUND: usize = 64;

    pub fn new(bound: usize) -> Self {
        Self { bound }
    }

    pub fn check(&self, what: &str, size: usize) -> Result<usize> {
        if size > self.bound {
            Err(Error::bound(what, size, self.bound))
        } else {
            Ok(size)
        }
    }
}

impl Default for FinSetBase {
    fn default() -> Self {
        Self::new(Self::DEFAULT_BOUND)
    }
}

/// A function between finite sets given by its table.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, serde::Serialize, serde::Deserialize)]
pub struct SetMap {
    pub codomain: usize,
    pub table: Vec<usize>,
}

impl SetMap {
    pub fn new(codomain: usize, table: Vec<usize>) -> Result<Self> {
        if let Some(&x) = table.iter().find(|&&x| x >= codomain) {
            return Err(Error::Malformed(format!("value {x} outside a set of size {codomain}")));
        }
        Ok(Self { codomain, table })
    }

    pub fn identity(n: usize) -> Self {
        Self {
            codomain: n,
            table: (0..n).collect(),
        }
    }

    pub fn constant(domain: usize, codomain: usize, value: usize) -> Self {
        Self {
            codomain,
            table: vec![value; domain],
        }
    }

    pub fn domain(&self) -> usize {
        self.table.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `self` then `next`.
    pub fn then(&self, next: &SetMap) -> SetMap {
        SetMap {
            codomain: next.codomain,
            table: self.table.iter().map(|&x| next.table[x]).collect(),
        }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        self.table.iter().all(|&x| !std::mem::replace(&mut seen[x], true))
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.codomain];
        for &x in &self.table {
            seen[x] = true;
        }
        seen.into_iter().all(|b| b)
    }

    pub fn is_bijective(&self) -> bool {
        self.domain() == self.codomain && self.is_injective()
    }

    /// Every function `domain -> codomain`, with the first point varying slowest.
    pub fn all(domain: usize, codomain: usize) -> impl Iterator<Item = SetMap> {
        let total = if domain == 0 { 1 } else { codomain.checked_pow(domain as u32).unwrap_or(usize::MAX) };
        (0..total).map(move |mut code| {
            let mut table = vec![0; domain];
            for slot in table.iter_mut().rev() {
                *slot = code % codomain.max(1);
                code /= codomain.max(1);
            }
            SetMap { codomain, table }
        })
    }
}

/// An arrow of a set-valued diagram: `map` sends the source set to the target set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct DiagramArrow {
    pub source: usize,
    pub target: usize,
    pub map: usize,
}

/// A diagram of finite sets on a directed graph, possibly borrowing its tables.
///
/// The limit of a functor out of a category equals the limit of its
/// underlying graph, so generating arrows are enough.
#[derive(Clone, Debug, Default)]
pub struct SetDiagram<'a> {
    pub sizes: Vec<usize>,
    pub arrows: Vec<DiagramArrow>,
    pub maps: Vec<Cow<'a, [usize]>>,
}

impl<'a> SetDiagram<'a> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_node(&mut self, size: usize) -> usize {
        self.sizes.push(size);
        self.sizes.len() - 1
    }

    pub fn add_map(&mut self, table: impl Into<Cow<'a, [usize]>>) -> usize {
        self.maps.push(table.into());
        self.maps.len() - 1
    }

    pub fn add_arrow(&mut self, source: usize, target: usize, map: usize) {
        debug_assert_eq!(self.maps[map].len(), self.sizes[source]);
        self.arrows.push(DiagramArrow { source, target, map });
    }

    pub fn apply(&self, arrow: &DiagramArrow, x: usize) -> usize {
        self.maps[arrow.map][x]
    }

    /// The diagram underlying a set-valued functor on a finite category.
    pub fn from_functor(diagram: &'a SetFunctor) -> Self {
        let mut d = Self::new();
        for &s in &diagram.sets {
            d.add_node(s);
        }
        for (f, a) in diagram.shape.arrows().iter().enumerate() {
            if diagram.shape.is_identity(f) {
                continue;
            }
            let m = d.add_map(diagram.maps[f].table.as_slice());
            d.add_arrow(a.source, a.target, m);
        }
        d
    }
}

/// A functor from a finite category to finite sets.
#[derive(Clone, Debug)]
pub struct SetFunctor {
    pub shape: FinCat,
    pub sets: Vec<usize>,
    pub maps: Vec<SetMap>,
}

impl SetFunctor {
    pub fn validate(&self) -> Result<()> {
        let c = &self.shape;
        if self.sets.len() != c.object_count() || self.maps.len() != c.arrow_count() {
            return Err(Error::NotAFunctor("table sizes do not match the shape".into()));
        }
        for (f, a) in c.arrows().iter().enumerate() {
            let m = &self.maps[f];
            if m.domain() != self.sets[a.source] || m.codomain != self.sets[a.target] {
                return Err(Error::NotAFunctor(format!("{} has the wrong type", a.name)));
            }
        }
        for o in 0..c.object_count() {
            if self.maps[c.identity(o)] != SetMap::identity(self.sets[o]) {
                return Err(Error::NotAFunctor("identity not preserved".into()));
            }
        }
        for (f, g) in c.composable_pairs() {
            let h = c.compose(f, g).unwrap();
            if self.maps[f].then(&self.maps[g]) != self.maps[h] {
                return Err(Error::NotAFunctor("composition not preserved".into()));
            }
        }
        Ok(())
    }
}

#[derive(Debug)]
struct Step {
    node: usize,
    constraints: Vec<usize>,
    forced: Vec<usize>,
    checks: Vec<usize>,
}

/// A static enumeration plan: free nodes, the arrows that force other nodes, and the
/// arrows left to check.
#[derive(Debug)]
struct Plan {
    steps: Vec<Step>,
}

impl Plan {
    fn new(diagram: &SetDiagram<'_>, order: &[usize]) -> Self {
        let n = diagram.sizes.len();
        let mut outgoing = vec![Vec::new(); n];
        for (i, a) in diagram.arrows.iter().enumerate() {
            outgoing[a.source].push(i);
        }
        let mut assigned = vec![false; n];
        let mut steps = Vec::new();
        for &v in order {
            if assigned[v] {
                continue;
            }
            let constraints: Vec<usize> = outgoing[v]
                .iter()
                .copied()
                .filter(|&a| assigned[diagram.arrows[a].target])
                .collect();
            assigned[v] = true;
            let mut forced = Vec::new();
            let mut checks = Vec::new();
            let mut queue = std::collections::VecDeque::from([v]);
            while let Some(u) = queue.pop_front() {
                for &a in &outgoing[u] {
                    let w = diagram.arrows[a].target;
                    if !assigned[w] {
                        assigned[w] = true;
                        forced.push(a);
                        queue.push_back(w);
                    } else if !(u == v && constraints.contains(&a)) {
                        checks.push(a);
                    }
                }
            }
            steps.push(Step {
                node: v,
                constraints,
                forced,
                checks,
            });
        }
        Self { steps }
    }
}

/// A search order that keeps each new node of `preferred` as constrained as possible.
///
/// Nodes of `preferred` come first, each chosen to have the most arrows into nodes
/// already fixed by earlier choices; the remaining nodes follow in index order.
pub fn connected_order(diagram: &SetDiagram<'_>, preferred: &[usize]) -> Vec<usize> {
    let n = diagram.sizes.len();
    let mut outgoing = vec![Vec::new(); n];
    let mut incoming = vec![Vec::new(); n];
    for a in &diagram.arrows {
        outgoing[a.source].push(a.target);
        incoming[a.target].push(a.source);
    }
    let mut assigned = vec![false; n];
    let mut score = vec![0usize; n];
    let mut taken = vec![false; preferred.len()];
    let mut order = Vec::with_capacity(n);
    for _ in 0..preferred.len() {
        let Some(i) = (0..preferred.len())
            .filter(|&i| !taken[i])
            .max_by_key(|&i| (score[preferred[i]], std::cmp::Reverse(i)))
        else {
            break;
        };
        taken[i] = true;
        let v = preferred[i];
        order.push(v);
        if assigned[v] {
            continue;
        }
        let mut queue = std::collections::VecDeque::from([v]);
        assigned[v] = true;
        while let Some(u) = queue.pop_front() {
            for &s in &incoming[u] {
                score[s] += 1;
            }
            for &w in &outgoing[u] {
                if !assigned[w] {
                    assigned[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order.extend(0..n);
    order
}

/// The limit of a finite set-valued diagram, as the list of compatible families.
#[derive(Clone, Debug)]
pub struct Limit {
    node_count: usize,
    tuples: Vec<u32>,
    free: Vec<usize>,
    index: HashMap<Vec<u32>, u32>,
}

impl Limit {
    pub fn len(&self) -> usize {
        if self.node_count == 0 {
            self.index.len()
        } else {
            self.tuples.len() / self.node_count
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// The component of element `e` at `node`.
    pub fn value(&self, e: usize, node: usize) -> usize {
        self.tuples[e * self.node_count + node] as usize
    }

    pub fn tuple(&self, e: usize) -> &[u32] {
        &self.tuples[e * self.node_count..(e + 1) * self.node_count]
    }

    /// Nodes whose values determine an element.
    pub fn free_nodes(&self) -> &[usize] {
        &self.free
    }

    /// Looks up the element with the given components; only free nodes are read.
    pub fn find_by(&self, mut component: impl FnMut(usize) -> usize) -> Option<usize> {
        let key: Vec<u32> = self.free.iter().map(|&v| component(v) as u32).collect();
        self.index.get(&key).map(|&e| e as usize)
    }

    /// Looks up a full family and checks every component.
    pub fn find(&self, family: &[usize]) -> Option<usize> {
        let e = self.find_by(|v| family[v])?;
        (0..self.node_count)
            .all(|v| self.value(e, v) == family[v])
            .then_some(e)
    }

    /// The projection onto `node`.
    pub fn leg(&self, node: usize, size: usize) -> SetMap {
        SetMap {
            codomain: size,
            table: (0..self.len()).map(|e| self.value(e, node)).collect(),
        }
    }
}

/// Enumerates the limit in the given node order (all nodes when `order` is `None`).
pub fn diagram_limit(diagram: &SetDiagram<'_>, base: &FinSetBase, what: &str, order: Option<&[usize]>) -> Result<Limit> {
    let n = diagram.sizes.len();
    let default: Vec<usize>;
    let order = match order {
        Some(o) => o,
        None => {
            default = (0..n).collect();
            &default
        }
    };
    let plan = Plan::new(diagram, order);
    debug_assert!(plan.steps.iter().map(|s| 1 + s.forced.len()).sum::<usize>() == n);
    let mut indexes: HashMap<(usize, Vec<usize>), HashMap<Vec<u32>, Vec<u32>>> = HashMap::new();
    for step in &plan.steps {
        let maps: Vec<usize> = step.constraints.iter().map(|&a| diagram.arrows[a].map).collect();
        let key = (step.node_size(diagram), maps);
        indexes.entry(key.clone()).or_insert_with(|| {
            let mut idx: HashMap<Vec<u32>, Vec<u32>> = HashMap::new();
            for x in 0..key.0 {
                let sig = key.1.iter().map(|&m| diagram.maps[m][x] as u32).collect();
                idx.entry(sig).or_default().push(x as u32);
            }
            idx
        });
    }
    let step_index: Vec<&HashMap<Vec<u32>, Vec<u32>>> = plan
        .steps
        .iter()
        .map(|s| {
            let maps = s.constraints.iter().map(|&a| diagram.arrows[a].map).collect();
            &indexes[&(s.node_size(diagram), maps)]
        })
        .collect();
    let free: Vec<usize> = plan.steps.iter().map(|s| s.node).collect();
    let mut out = Limit {
        node_count: n,
        tuples: Vec::new(),
        free: free.clone(),
        index: HashMap::new(),
    };
    let mut values = vec![u32::MAX; n];
    let mut count = 0usize;
    search(diagram, &plan, &step_index, 0, &mut values, &mut |vals: &[u32]| {
        count += 1;
        if count > base.bound {
            return Err(Error::bound(what, count, base.bound));
        }
        out.tuples.extend_from_slice(vals);
        let key = free.iter().map(|&v| vals[v]).collect();
        out.index.insert(key, (count - 1) as u32);
        Ok(())
    })?;
    Ok(out)
}

impl Step {
    fn node_size(&self, diagram: &SetDiagram<'_>) -> usize {
        diagram.sizes[self.node]
    }
}

fn search(
    diagram: &SetDiagram<'_>,
    plan: &Plan,
    indexes: &[&HashMap<Vec<u32>, Vec<u32>>],
    depth: usize,
    values: &mut [u32],
    emit: &mut dyn FnMut(&[u32]) -> Result<()>,
) -> Result<()> {
    let Some(step) = plan.steps.get(depth) else {
        return emit(values);
    };
    let key: Vec<u32> = step
        .constraints
        .iter()
        .map(|&a| values[diagram.arrows[a].target])
        .collect();
    let Some(candidates) = indexes[depth].get(&key) else {
        return Ok(());
    };
    'next: for &x in candidates {
        values[step.node] = x;
        for &a in &step.forced {
            let arr = &diagram.arrows[a];
            values[arr.target] = diagram.maps[arr.map][values[arr.source] as usize] as u32;
        }
        for &a in &step.checks {
            let arr = &diagram.arrows[a];
            if diagram.maps[arr.map][values[arr.source] as usize] as u32 != values[arr.target] {
                continue 'next;
            }
        }
        search(diagram, plan, indexes, depth + 1, values, emit)?;
    }
    Ok(())
}

/// A limit cone with its universality certificate.
#[derive(Clone, Debug)]
pub struct LimitCone {
    pub apex: usize,
    pub legs: Vec<SetMap>,
    pub limit: Limit,
    pub certificate: crate::oracle::Certificate,
}

/// Limit of a set-valued functor, certified by the independent cone enumeration.
pub fn finite_limit(diagram: &SetFunctor, base: &FinSetBase, budget: usize) -> Result<LimitCone> {
    diagram.validate()?;
    let graph = SetDiagram::from_functor(diagram);
    let limit = diagram_limit(&graph, base, "finite limit", None)?;
    let legs: Vec<SetMap> = diagram
        .sets
        .iter()
        .enumerate()
        .map(|(v, &s)| limit.leg(v, s))
        .collect();
    let certificate = crate::oracle::verify_limit(&legs, &graph, budget)?;
    Ok(LimitCone {
        apex: limit.len(),
        legs,
        limit,
        certificate,
    })
}

/// A tagged disjoint union with its injections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coproduct {
    pub total: usize,
    pub offsets: Vec<usize>,
    pub injections: Vec<SetMap>,
}

impl Coproduct {
    /// The summand and position of an element.
    pub fn tag(&self, x: usize) -> (usize, usize) {
        let k = self
            .offsets
            .iter()
            .zip(&self.injections)
            .position(|(&o, inj)| o <= x && x < o + inj.domain())
            .expect("element outside the coproduct");
        (k, x - self.offsets[k])
    }

    /// The unique map out of the coproduct restricting to `maps` on the summands.
    pub fn copair(&self, maps: &[SetMap]) -> Result<SetMap> {
        if maps.len() != self.injections.len() {
            return Err(Error::Malformed("one map per summand is required".into()));
        }
        let codomain = maps.first().map_or(0, |m| m.codomain);
        let mut table = Vec::with_capacity(self.total);
        for (m, inj) in maps.iter().zip(&self.injections) {
            if m.domain() != inj.domain() || m.codomain != codomain {
                return Err(Error::Malformed("copairing maps disagree on types".into()));
            }
            table.extend_from_slice(&m.table);
        }
        Ok(SetMap { codomain, table })
    }
}

pub fn finite_coproduct(parts: &[usize], base: &FinSetBase) -> Result<Coproduct> {
    let total = base.check("finite coproduct", parts.iter().sum())?;
    let mut offsets = Vec::with_capacity(parts.len());
    let mut injections = Vec::with_capacity(parts.len());
    let mut acc = 0;
    for &p in parts {
        offsets.push(acc);
        injections.push(SetMap {
            codomain: total,
            table: (acc..acc + p).collect(),
        });
        acc += p;
    }
    Ok(Coproduct {
        total,
        offsets,
        injections,
    })
}
