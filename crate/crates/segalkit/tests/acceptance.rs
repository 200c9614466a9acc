//! Acceptance criteria 1 to 9, one PASS/FAIL line each.
//!
//! The process fails when a criterion's status differs from `EXPECTED`.

use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use segalkit::catalog::{corpus, preset, seed_from_env, Entry, DEFAULT_SIZE, MAX_ARROWS};
use segalkit::constructions::{constant_adjunction, core, curry_is_natural, exponential, nonpreservation_demo, power, tensor, tensor_adjunction};
use segalkit::delta::{monotone_rank, MonotoneMap};
use segalkit::externalize::{externalize, Externalization};
use segalkit::fincat::{functor_category, FinCat, FinSetBase};
use segalkit::internal::InternalCategory;
use segalkit::oracle::{certify_equivalent, certify_isomorphic, find_isomorphism, nontrivial_isomorphism, verify_corepresentation};
use segalkit::sset::{as_nerve, k_core, nerve, sset_hom, TruncSSet};
use segalkit::yoneda::{hom_agreement, left_kan_check, yoneda_bijection, HomAgreement};
use segalkit::Error;

const BASE_BOUND: usize = 1 << 16;
const PROBE: usize = 2;
const TRUNCATION: usize = 3;
const PAIR_LIMIT: Duration = Duration::from_secs(10);
const MIN_CORPUS: usize = 50;
const MAX_ADJUNCTION_DEGREE: usize = 3;
const MAX_CONSTANT_SIZE: usize = 2;
const ADJUNCTION_PARTNERS: &[&str] = &["pt", "[1]", "BZ2"];
const REVERSE_BOUND: usize = 1 << 12;
const FUNCTOR_CATEGORY_CAP: usize = 200;
const ORACLE_BUDGET: usize = 1 << 22;
const KAN_BUDGET: usize = 4096;
const KAN_COVERAGE: f64 = 0.6;
const STABILITY_SAMPLE: usize = 20;

/// Criteria whose stated form does not hold; see the decisions ledger.
const EXPECTED_FAIL: &[usize] = &[2, 4];

struct Outcome {
    pass: bool,
    detail: String,
}

impl Outcome {
    fn new(pass: bool, detail: impl Into<String>) -> Self {
        Self { pass, detail: detail.into() }
    }
}

struct Context {
    base: FinSetBase,
    entries: Vec<Entry>,
    internal: Vec<InternalCategory>,
    agreements: Vec<Vec<Result<HomAgreement, Error>>>,
}

fn cat(c: &FinCat, base: &FinSetBase) -> InternalCategory {
    InternalCategory::from_fincat(c, base).expect("corpus entries are categories")
}

fn criterion_1(ctx: &mut Context) -> Outcome {
    let n = ctx.entries.len();
    let small = ctx.entries.iter().all(|e| e.category.object_count() <= MAX_ARROWS && e.category.arrow_count() <= MAX_ARROWS);
    let (mut agree, mut slowest, mut over, mut failures) = (0, Duration::ZERO, 0, Vec::new());
    for i in 0..n {
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            let start = Instant::now();
            let r = hom_agreement(&ctx.internal[i], &ctx.internal[j], PROBE, TRUNCATION, &ctx.base);
            let dt = start.elapsed();
            slowest = slowest.max(dt);
            if dt >= PAIR_LIMIT {
                over += 1;
            }
            match &r {
                Ok(a) if a.agrees() => agree += 1,
                _ => failures.push(format!("{} -> {}", ctx.entries[i].name, ctx.entries[j].name)),
            }
            row.push(r);
        }
        ctx.agreements.push(row);
    }
    let pass = n >= MIN_CORPUS && small && agree == n * n && over == 0;
    Outcome::new(
        pass,
        format!(
            "{agree}/{} pairs agree over {n} categories, slowest {:.2}s, {over} over {}s{}",
            n * n,
            slowest.as_secs_f64(),
            PAIR_LIMIT.as_secs(),
            failures.first().map(|f| format!(", first failure {f}")).unwrap_or_default()
        ),
    )
}

fn criterion_2(ctx: &Context) -> Outcome {
    let d = nonpreservation_demo(2, &ctx.base).expect("demo");
    let claimed = FinCat::coproduct(&[FinCat::chain(1), FinCat::terminal(), FinCat::terminal()]);
    let equivalent = certify_equivalent(&d.externalized, &claimed, ORACLE_BUDGET).expect("oracle").passed;
    let clauses = [
        ("4 objects", d.externalized.object_count() == 4),
        ("tensored side has 2 objects", d.tensored.object_count() == 2),
        ("1 non-identity morphism", d.non_identity_arrows == 1),
        ("1 morphism (incl,incl) -> (incr,incr)", d.arrows_between_constants == 1),
        ("equivalent to Δ¹⊔Δ⁰⊔Δ⁰", equivalent),
    ];
    let failed: Vec<&str> = clauses.iter().filter(|c| !c.1).map(|c| c.0).collect();
    Outcome::new(
        failed.is_empty(),
        format!(
            "{} objects, {} non-identity morphisms, {} between the constant families, [1]^2: {}; failed clauses: {:?}",
            d.externalized.object_count(),
            d.non_identity_arrows,
            d.arrows_between_constants,
            d.is_power_of_arrow,
            failed
        ),
    )
}

fn criterion_3(ctx: &Context) -> Outcome {
    let base = &ctx.base;
    let reverse_base = FinSetBase::new(REVERSE_BOUND);
    let partners: Vec<InternalCategory> = ADJUNCTION_PARTNERS.iter().map(|p| cat(&preset(p).unwrap(), base)).collect();
    let (mut checked, mut bad, mut squares, mut skipped) = (0, Vec::new(), 0, 0);
    let mut run = |x: &InternalCategory, y: &InternalCategory, label: String, base: &FinSetBase, gating: bool| {
        let xs = x.sset().truncate(2);
        let adj: Result<Vec<_>, _> = (0..=MAX_ADJUNCTION_DEGREE).map(|n| tensor_adjunction(n, &xs, y, base)).collect();
        let adj = match adj {
            Ok(adj) => adj,
            Err(e) if e.is_budget() && !gating => {
                skipped += 1;
                return;
            }
            Err(e) => {
                bad.push(format!("{label}: {e}"));
                return;
            }
        };
        checked += 1;
        if adj.iter().any(|a| !a.curry.is_bijective()) {
            bad.push(format!("{label}: currying is not bijective"));
        }
        for n in 1..=MAX_ADJUNCTION_DEGREE {
            let thetas = (0..=n).map(|i| MonotoneMap::face(n, i)).chain((0..n).map(|i| MonotoneMap::degeneracy(n - 1, i)));
            for theta in thetas {
                squares += 1;
                if !curry_is_natural(&theta, &adj[theta.target()], &adj[theta.source()], &xs) {
                    bad.push(format!("{label}: square for {:?} fails", theta));
                }
            }
        }
    };
    // every corpus entry as the tensored object; as the target, cotensors may exceed the cap
    for (e, x) in ctx.entries.iter().zip(&ctx.internal) {
        for (p, name) in partners.iter().zip(ADJUNCTION_PARTNERS) {
            run(x, p, format!("{} ⊗ -> {name}", e.name), base, true);
            run(p, x, format!("{name} ⊗ -> {}", e.name), &reverse_base, false);
        }
    }
    let mut constant = 0;
    for (e, y) in ctx.entries.iter().zip(&ctx.internal) {
        for n in 0..=MAX_ADJUNCTION_DEGREE {
            for c in 0..=MAX_CONSTANT_SIZE {
                constant += 1;
                let k = y.sset().truncation().max(n);
                let direct = constant_adjunction(n, c, y, base);
                let oracle = tensor(&TruncSSet::standard_simplex(n, k), &TruncSSet::constant(c, k), base)
                    .and_then(|t| sset_hom(&t, y.sset(), base))
                    .and_then(|homs| {
                        let id = monotone_rank(&MonotoneMap::identity(n));
                        let eval = |h: &segalkit::sset::SimplicialMap| (0..c).map(|i| h.levels[n][id * c + i]).collect();
                        verify_corepresentation(n, c, y.sset(), &homs, &eval, ORACLE_BUDGET)
                    });
                match (direct, oracle) {
                    (Ok(b), Ok(cert)) if b.is_bijective() && cert.passed => {}
                    (d, o) => bad.push(format!("{}: constant n={n} C={c}: {:?} {:?}", e.name, d.map(|b| b.is_bijective()), o.map(|c| c.passed))),
                }
            }
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!(
            "{checked} pairs curried for n ≤ {MAX_ADJUNCTION_DEGREE} ({skipped} with a corpus target skipped over the cap {REVERSE_BOUND}), {squares} naturality squares, {constant} constant cases oracle-checked, {} problems{}",
            bad.len(),
            bad.first().map(|b| format!(", first: {b}")).unwrap_or_default()
        ),
    )
}

fn criterion_4(ctx: &Context) -> Outcome {
    let base = &ctx.base;
    let (mut in_scope, mut certified, mut ends_equal, mut problems) = (0, 0, 0, Vec::new());
    for (ec, x) in ctx.entries.iter().zip(&ctx.internal) {
        for (ed, y) in ctx.entries.iter().zip(&ctx.internal) {
            let Ok(fun) = functor_category(&ec.category, &ed.category, FUNCTOR_CATEGORY_CAP) else { continue };
            if fun.category.arrow_count() > FUNCTOR_CATEGORY_CAP {
                continue;
            }
            in_scope += 1;
            let label = format!("{}^{}", ed.name, ec.name);
            match exponential(y, x, base) {
                Ok((_, e)) => match certify_isomorphic(e.underlying(), &fun.category, ORACLE_BUDGET) {
                    Ok(c) if c.passed => certified += 1,
                    other => problems.push(format!("{label}: not certified ({:?})", other.map(|c| c.passed))),
                },
                Err(err) => problems.push(format!("{label}: {err}")),
            }
            let levels = |j: usize| power(y.sset(), x.sset(), 1, j, base).map(|p| p.sset.levels().to_vec());
            match (levels(1), levels(3)) {
                (Ok(a), Ok(b)) if a == b => ends_equal += 1,
                (a, b) => {
                    if problems.len() < 1000 {
                        problems.push(format!("{label}: Δ≤1 end {:?} vs Δ≤3 end {:?}", a.ok(), b.ok()))
                    }
                }
            }
        }
    }
    let pass = in_scope > 0 && certified == in_scope && ends_equal == in_scope;
    let first_end = problems.iter().find(|p| p.contains("Δ≤1")).cloned().unwrap_or_default();
    Outcome::new(
        pass,
        format!(
            "{in_scope} pairs with |Fun| ≤ {FUNCTOR_CATEGORY_CAP}: {certified} exponentials certified isomorphic, Δ≤1 and Δ≤3 ends agree on {ends_equal}; e.g. {first_end}"
        ),
    )
}

fn criterion_5(ctx: &Context) -> Outcome {
    let base = &ctx.base;
    let mut disagreements = Vec::new();
    let mut check = |name: &str, c: &FinCat, x: &InternalCategory| match x.is_complete(base) {
        Ok(r) if r.holds == nontrivial_isomorphism(c).is_none() => {}
        other => disagreements.push(format!("{name}: {:?}", other.map(|r| r.holds))),
    };
    for (e, x) in ctx.entries.iter().zip(&ctx.internal) {
        check(&e.name, &e.category, x);
    }
    let posets = ["chain:3", "cospan", "span", "discrete:3"];
    let groups = ["cyclic:2", "cyclic:3", "cyclic:4", "indiscrete:2"];
    let posets_pass = posets.iter().all(|p| cat(&preset(p).unwrap(), base).is_complete(base).unwrap().holds);
    let groups_fail = groups.iter().all(|p| !cat(&preset(p).unwrap(), base).is_complete(base).unwrap().holds);
    let gaunt = ctx.entries.iter().filter(|e| e.category.is_gaunt()).count();
    Outcome::new(
        disagreements.is_empty() && posets_pass && groups_fail,
        format!(
            "{} disagreements over {} categories ({gaunt} gaunt), posets complete: {posets_pass}, groups incomplete: {groups_fail}",
            disagreements.len(),
            ctx.entries.len()
        ),
    )
}

fn criterion_6(ctx: &Context) -> Outcome {
    let base = &ctx.base;
    let round_trips = ctx.agreements.iter().flatten().filter(|r| matches!(r, Ok(a) if a.round_trips)).count();
    let total = ctx.agreements.iter().map(Vec::len).sum::<usize>();
    let mut classical = Vec::new();
    for c in 1..=PROBE {
        for d in 1..=3usize {
            let x = InternalCategory::constant(c, base).unwrap();
            let y = InternalCategory::constant(d, base).unwrap();
            let f = Externalization::new(&y, base);
            let (b, nat, tot) = yoneda_bijection(&f, &x, PROBE, TRUNCATION, base).unwrap();
            let ext_x = externalize(&x, PROBE, base).unwrap();
            let ext_y = externalize(&y, PROBE, base).unwrap();
            let id: Vec<usize> = (0..c).collect();
            let at_id = ext_x.object_labels[c].iter().position(|l| *l == id).unwrap();
            // α ↦ α_C(1_C), read off the family directly
            let agrees = nat.families.iter().enumerate().all(|(i, alpha)| {
                let classical = &ext_y.object_labels[c][alpha[c].objects[at_id]];
                b.forward_objects[i].is_some_and(|w| tot.objects[w].0 == *classical)
            });
            let count = d.pow(c as u32);
            classical.push(b.round_trips() && agrees && nat.families.len() == count && tot.objects.len() == count);
        }
    }
    let classical_ok = classical.iter().all(|&b| b);
    Outcome::new(
        round_trips == total && classical_ok,
        format!("{round_trips}/{total} pairs round-trip element-wise, classical Yoneda on {} constant pairs: {classical_ok}", classical.len()),
    )
}

fn criterion_7(ctx: &Context) -> Outcome {
    let base = &ctx.base;
    let (mut checked, mut bad) = (0, Vec::new());
    for (e, x) in ctx.entries.iter().zip(&ctx.internal) {
        let result = (|| -> Result<Vec<bool>, Error> {
            let (k, _) = core(x, base)?;
            let ext_core = externalize(&k, PROBE, base)?;
            let ext = externalize(x, PROBE, base)?;
            (0..=PROBE)
                .map(|p| {
                    let n = nerve(ext.value(p), 2, base)?;
                    let cored = as_nerve(&k_core(&n, base)?, base)?.category;
                    Ok(find_isomorphism(ext_core.value(p), &cored, ORACLE_BUDGET)?.is_some())
                })
                .collect()
        })();
        match result {
            Ok(v) if v.iter().all(|&b| b) => checked += v.len(),
            other => bad.push(format!("{}: {:?}", e.name, other)),
        }
    }
    Outcome::new(
        bad.is_empty(),
        format!("{checked} probe objects isomorphic over {} categories, {} failures", ctx.entries.len(), bad.len()),
    )
}

fn criterion_8(ctx: &Context) -> Outcome {
    let (mut agree, mut skipped, mut bad) = (0, Vec::new(), Vec::new());
    for (e, x) in ctx.entries.iter().zip(&ctx.internal) {
        match left_kan_check(x, PROBE, KAN_BUDGET, &ctx.base) {
            Ok(v) if v.iter().all(|c| c.agrees) => agree += 1,
            Ok(_) => bad.push(e.name.clone()),
            Err(err) if err.is_budget() => skipped.push(e.name.clone()),
            Err(err) => bad.push(format!("{}: {err}", e.name)),
        }
    }
    let n = ctx.entries.len();
    let coverage = (n - skipped.len()) as f64 / n as f64;
    Outcome::new(
        bad.is_empty() && coverage >= KAN_COVERAGE,
        format!(
            "{agree} agree, {} disagree, {} skipped {:?}, coverage {:.0}% (target {:.0}%)",
            bad.len(),
            skipped.len(),
            skipped,
            coverage * 100.0,
            KAN_COVERAGE * 100.0
        ),
    )
}

fn criterion_9(ctx: &Context) -> Outcome {
    let n = ctx.entries.len();
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut ChaCha8Rng::seed_from_u64(seed_from_env()));
    let mut changed = Vec::new();
    for &(i, j) in pairs.iter().take(STABILITY_SAMPLE) {
        let raised = hom_agreement(&ctx.internal[i], &ctx.internal[j], PROBE + 1, TRUNCATION + 1, &ctx.base);
        if raised != ctx.agreements[i][j] {
            changed.push(format!("{} -> {}", ctx.entries[i].name, ctx.entries[j].name));
        }
    }
    Outcome::new(
        changed.is_empty(),
        format!("{STABILITY_SAMPLE} pairs at probe {} and truncation {}: {} changed {:?}", PROBE + 1, TRUNCATION + 1, changed.len(), changed),
    )
}

fn main() {
    let base = FinSetBase::new(BASE_BOUND);
    let entries = corpus(seed_from_env(), DEFAULT_SIZE);
    let internal = entries.iter().map(|e| cat(&e.category, &base)).collect();
    let mut ctx = Context { base, entries, internal, agreements: Vec::new() };
    let total = Instant::now();
    let mut unexpected = Vec::new();
    // SEGALKIT_CRITERIA=3,4 runs a subset
    let selected: Vec<usize> = std::env::var("SEGALKIT_CRITERIA")
        .ok()
        .map(|v| v.split(',').filter_map(|k| k.trim().parse().ok()).collect())
        .unwrap_or_else(|| (1..=9).collect());
    if !selected.contains(&1) && selected.iter().any(|k| [6, 9].contains(k)) {
        criterion_1(&mut ctx);
    }
    for k in selected {
        let start = Instant::now();
        let outcome = match k {
            1 => criterion_1(&mut ctx),
            2 => criterion_2(&ctx),
            3 => criterion_3(&ctx),
            4 => criterion_4(&ctx),
            5 => criterion_5(&ctx),
            6 => criterion_6(&ctx),
            7 => criterion_7(&ctx),
            8 => criterion_8(&ctx),
            _ => criterion_9(&ctx),
        };
        let status = if outcome.pass { "PASS" } else { "FAIL" };
        println!("criterion {k}: {status} ({:.1}s) {}", start.elapsed().as_secs_f64(), outcome.detail);
        if outcome.pass == EXPECTED_FAIL.contains(&k) {
            unexpected.push(k);
        }
    }
    println!("total {:.1}s", total.elapsed().as_secs_f64());
    if !unexpected.is_empty() {
        eprintln!("criteria with unexpected status: {unexpected:?}");
        std::process::exit(1);
    }
}
