use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use serde_json::{json, Value};

use segalkit::constructions::{core, cotensor, determining_truncation, exponential, nonpreservation_demo, tensor, tensor_adjunction};
use segalkit::externalize::externalize;
use segalkit::fincat::{functor_category, FinCat, FinSetBase};
use segalkit::internal::{is_segal, InternalCategory};
use segalkit::oracle::{certify_isomorphic, find_isomorphism, nontrivial_isomorphism, Certificate};
use segalkit::schema::{load, Expected, Loaded};
use segalkit::sset::{as_nerve, TruncSSet};
use segalkit::yoneda::{hom_agreement, left_kan_check};
use segalkit::{Error, Result};

use crate::report::{command_name, Measures, Report};
use crate::{Caps, Command};

struct Input {
    loaded: Loaded,
    expected: BTreeMap<String, Expected>,
}

fn read(path: &Path, base: &FinSetBase) -> Result<Input> {
    let file = load(path)?;
    let loaded = file.instance.resolve(base).map_err(|e| match e {
        Error::Malformed(m) => Error::Malformed(format!("{}: {m}", path.display())),
        other => other,
    })?;
    Ok(Input { loaded, expected: file.expected })
}

fn category_counts(c: &FinCat) -> Measures {
    Measures {
        objects: Some(c.object_count()),
        arrows: Some(c.arrow_count()),
        levels: None,
    }
}

fn iso_certificate(claim: &str, a: &FinCat, b: &FinCat, budget: usize) -> Result<Certificate> {
    let mut c = certify_isomorphic(a, b, budget)?;
    c.claim = format!("{claim}: {}", c.claim);
    Ok(c)
}

pub fn run(command: &Command, caps: &Caps) -> Result<Report> {
    let (mut report, expected) = execute(command, caps)?;
    if let Some(e) = expected {
        report.expect(&e);
    }
    Ok(report)
}

/// Runs a command, returning the expectation its input file holds for it.
fn execute(command: &Command, caps: &Caps) -> Result<(Report, Option<Expected>)> {
    let base = FinSetBase::new(caps.base_bound);
    let (k, m) = (caps.truncation, caps.probe_size);
    let mut expected = BTreeMap::new();
    let mut one = |file: &PathBuf| -> Result<Loaded> {
        let input = read(file, &base)?;
        expected = input.expected;
        Ok(input.loaded)
    };
    let report = match command {
        Command::CheckSegal { file } => {
            let s = one(file)?.sset(k, &base)?;
            let segal = is_segal(&s, &base)?;
            let mut r = Report::new(command, segal, levels(&s), json!({ "segal": segal }));
            if caps.oracle {
                // an independent route: rebuild the category from spines
                let rebuilt = as_nerve(&s, &base).is_ok();
                let claim = "Segal maps bijective iff the simplices are chains of a category";
                r.certify(if rebuilt == segal {
                    Certificate::pass(claim, vec![format!("spine reconstruction {}", if rebuilt { "succeeds" } else { "fails" })])
                } else {
                    Certificate::fail(claim, vec![], json!({ "segal": segal, "rebuilt": rebuilt }))
                });
            }
            r
        }
        Command::CheckComplete { file } | Command::CheckGroupoid { file } => {
            let complete = matches!(command, Command::CheckComplete { .. });
            let x = one(file)?.internal(&base)?;
            let check = if complete { x.is_complete(&base)? } else { x.is_groupoid(&base)? };
            let mut r = Report::new(command, check.holds, levels(x.sset()), json!({ "holds": check.holds, "witness": check.witness }));
            if caps.oracle {
                let c = x.underlying();
                let direct = if complete { nontrivial_isomorphism(c).is_none() } else { c.is_groupoid() };
                let claim = if complete { "no non-identity isomorphisms" } else { "every morphism is invertible" };
                r.certify(if direct == check.holds {
                    Certificate::pass(claim, vec![format!("searched {} morphisms", c.arrow_count())])
                } else {
                    Certificate::fail(claim, vec![], json!({ "internal": check.holds, "direct": direct }))
                });
            }
            r
        }
        Command::Externalize { file } => {
            let x = one(file)?.internal(&base)?;
            let ext = externalize(&x, m, &base)?;
            let values: Vec<Value> = (0..=m)
                .map(|p| {
                    let c = ext.value(p);
                    json!({ "size": p, "objects": c.object_count(), "arrows": c.arrow_count(),
                        "summary": format!("Ext(X)({p}): {} objects, {} arrows", c.object_count(), c.arrow_count()) })
                })
                .collect();
            let mut r = Report::new(command, true, category_counts(ext.value(m)), Value::Array(values));
            if caps.oracle {
                let claim = "restrictions are functors, contravariantly functorial in the probe";
                r.certify(match ext.validate() {
                    Ok(()) => Certificate::pass(claim, vec![format!("probe sizes 0..={m}")]),
                    Err(e) => Certificate::fail(claim, vec![], json!({ "error": e.to_string() })),
                });
            }
            r
        }
        Command::Exponential { target, source } => {
            let (d, c) = (read(target, &base)?.loaded, read(source, &base)?.loaded);
            let (y, x) = (d.internal(&base)?, c.internal(&base)?);
            let (power, e) = exponential(&y, &x, &base)?;
            let mut measures = category_counts(e.underlying());
            measures.levels = Some(power.sset.levels().to_vec());
            let mut r = Report::new(command, true, measures, json!({ "weight_truncation": power.weight_truncation }));
            if caps.oracle {
                let fun = functor_category(x.underlying(), y.underlying(), base.bound)?;
                r.certify(iso_certificate("the exponential is the functor category", e.underlying(), &fun.category, caps.budget)?);
            }
            r
        }
        Command::Tensor { file, degree } => {
            let input = one(file)?;
            let s = input.sset(k, &base)?;
            let t = tensor(&TruncSSet::standard_simplex(*degree, s.truncation()), &s, &base)?;
            let mut r = Report::new(command, true, levels(&t), json!({ "degree": degree }));
            if caps.oracle {
                let y = input.internal(&base)?;
                let adj = tensor_adjunction(*degree, &s.truncate(2.min(s.truncation())), &y, &base)?;
                let claim = format!("maps Δ^{degree} ⊗ X -> X curry bijectively");
                r.certify(if adj.curry.is_bijective() {
                    Certificate::pass(claim, vec![format!("{} maps on each side", adj.curry.left)])
                } else {
                    Certificate::fail(claim, vec![], json!({ "left": adj.curry.left, "right": adj.curry.right }))
                });
            }
            r
        }
        Command::Cotensor { file, degree } => {
            let x = one(file)?.internal(&base)?;
            // maps into a c-coskeletal object are determined below level max(c, 2)
            let t = determining_truncation(x.sset()).max(2).min(x.sset().truncation());
            let x = InternalCategory::new(x.sset().truncate(t), &base)?;
            let p = cotensor(&x, &TruncSSet::standard_simplex(*degree, t), &base)?;
            let c = p.internal(&base)?;
            let mut measures = category_counts(c.underlying());
            measures.levels = Some(p.sset.levels().to_vec());
            let mut r = Report::new(command, true, measures, json!({ "degree": degree }));
            if caps.oracle {
                let fun = functor_category(&FinCat::chain(*degree), x.underlying(), base.bound)?;
                r.certify(iso_certificate("the cotensor is the category of chains", c.underlying(), &fun.category, caps.budget)?);
            }
            r
        }
        Command::Core { file } => {
            let x = one(file)?.internal(&base)?;
            let (kx, _) = core(&x, &base)?;
            let mut measures = category_counts(kx.underlying());
            measures.levels = Some(kx.sset().levels().to_vec());
            let mut r = Report::new(command, true, measures, json!({ "groupoid": kx.underlying().is_groupoid() }));
            if caps.oracle {
                let expected = x.underlying().core().0;
                let found = find_isomorphism(kx.underlying(), &expected, caps.budget)?.is_some();
                let claim = "the internal core is the maximal subgroupoid";
                r.certify(if found {
                    Certificate::pass(claim, vec![])
                } else {
                    Certificate::fail(claim, vec![], json!({ "objects": expected.object_count(), "arrows": expected.arrow_count() }))
                });
            }
            r
        }
        Command::Yoneda { source, target } => {
            let x = read(source, &base)?.loaded.internal(&base)?;
            let y = read(target, &base)?.loaded.internal(&base)?;
            let a = hom_agreement(&x, &y, m, k, &base)?;
            let summary = format!(
                "functors: {} internal, {} natural families, {} wedges; transformations: {} internal, {} modifications, {} wedge morphisms",
                a.internal_functors, a.natural_families, a.wedges, a.internal_transformations, a.modifications, a.wedge_morphisms
            );
            let measures = Measures { objects: Some(a.wedges), arrows: Some(a.wedge_morphisms), levels: None };
            let mut details = serde_json::to_value(&a).expect("serializes");
            details["summary"] = Value::String(summary);
            Report::new(command, a.agrees(), measures, details)
        }
        Command::KanCheck { file } => {
            let x = one(file)?.internal(&base)?;
            let comparisons = left_kan_check(&x, m, caps.budget, &base)?;
            let agrees = comparisons.iter().all(|c| c.agrees);
            let details: Vec<Value> = comparisons
                .iter()
                .map(|c| {
                    json!({ "size": c.size, "objects": c.colimit.object_count(), "arrows": c.colimit.arrow_count(),
                        "classes_defined": c.classes_defined, "agrees": c.agrees,
                        "summary": format!("colimit at {}: {} objects, {} arrows, {}", c.size, c.colimit.object_count(),
                            c.colimit.arrow_count(), if c.agrees { "agrees" } else { "differs" }) })
                })
                .collect();
            let last = comparisons.last().map(|c| category_counts(&c.colimit)).unwrap_or_default();
            Report::new(command, agrees, last, Value::Array(details))
        }
        Command::CounterexampleDemo { size } => {
            let d = nonpreservation_demo(*size, &base)?;
            let summary = format!(
                "Ext(Δ^1 ⊗ c(1))({size}) has {} objects, Δ^1 ⊗ Ext(c(1))({size}) has {}",
                d.externalized.object_count(),
                d.tensored.object_count()
            );
            let details = json!({
                "externalized": { "objects": d.externalized.object_count(), "arrows": d.externalized.arrow_count() },
                "tensored": { "objects": d.tensored.object_count(), "arrows": d.tensored.arrow_count() },
                "non_identity_arrows": d.non_identity_arrows,
                "arrows_between_constants": d.arrows_between_constants,
                "is_power_of_arrow": d.is_power_of_arrow,
                "summary": summary,
            });
            let mut r = Report::new(command, d.differ(), category_counts(&d.externalized), details);
            if caps.oracle {
                let cube = (0..*size).fold(FinCat::terminal(), |acc, _| acc.product(&FinCat::chain(1)));
                r.certify(iso_certificate(&format!("the externalization is [1]^{size}"), &d.externalized, &cube, caps.budget)?);
            }
            r
        }
        Command::Suite { file } => suite(command, file, caps)?,
    };
    Ok((report, expected.remove(command_name(command))))
}

fn levels(s: &TruncSSet) -> Measures {
    Measures { objects: None, arrows: None, levels: Some(s.levels().to_vec()) }
}

fn item_command(name: &str, inputs: &[PathBuf], degree: Option<usize>, dir: &Path) -> Result<Command> {
    let paths: Vec<PathBuf> = inputs.iter().map(|p| dir.join(p)).collect();
    let arity = |n: usize| {
        if paths.len() == n {
            Ok(())
        } else {
            Err(Error::Malformed(format!("{name} takes {n} inputs, got {}", paths.len())))
        }
    };
    let first = || paths[0].clone();
    Ok(match name {
        "check-segal" => arity(1).map(|_| Command::CheckSegal { file: first() })?,
        "check-complete" => arity(1).map(|_| Command::CheckComplete { file: first() })?,
        "check-groupoid" => arity(1).map(|_| Command::CheckGroupoid { file: first() })?,
        "externalize" => arity(1).map(|_| Command::Externalize { file: first() })?,
        "exponential" => arity(2).map(|_| Command::Exponential { target: first(), source: paths[1].clone() })?,
        "tensor" => arity(1).map(|_| Command::Tensor { file: first(), degree: degree.unwrap_or(1) })?,
        "cotensor" => arity(1).map(|_| Command::Cotensor { file: first(), degree: degree.unwrap_or(1) })?,
        "core" => arity(1).map(|_| Command::Core { file: first() })?,
        "yoneda" => arity(2).map(|_| Command::Yoneda { source: first(), target: paths[1].clone() })?,
        "kan-check" => arity(1).map(|_| Command::KanCheck { file: first() })?,
        "counterexample-demo" => arity(0).map(|_| Command::CounterexampleDemo { size: degree.unwrap_or(2) })?,
        other => return Err(Error::Malformed(format!("unknown suite command {other:?}"))),
    })
}

fn suite(command: &Command, file: &Path, caps: &Caps) -> Result<Report> {
    let Loaded::Suite(items) = read(file, &FinSetBase::new(caps.base_bound))?.loaded else {
        return Err(Error::Malformed(format!("{} is not a suite", file.display())));
    };
    let dir = file.parent().unwrap_or(Path::new("."));
    let mut all = true;
    let mut details = Vec::with_capacity(items.len());
    for item in &items {
        let c = item_command(&item.command, &item.inputs, item.degree, dir)?;
        let r = match execute(&c, caps) {
            Ok((mut r, from_file)) => {
                if let Some(e) = item.expected.as_ref().or(from_file.as_ref()) {
                    r.expect(e);
                }
                r
            }
            Err(e) => Report::error(&c, &e),
        };
        all &= r.passed();
        let summary = r.summary().lines().next().unwrap_or_default().to_string();
        details.push(json!({ "summary": summary, "report": r }));
    }
    let measures = Measures { objects: None, arrows: None, levels: None };
    Ok(Report::new(command, all, measures, Value::Array(details)))
}
