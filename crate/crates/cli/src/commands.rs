//! One function per subcommand, each producing a [`Report`].

use std::path::Path;

use anyhow::{bail, Context, Result};
use serde_json::{json, Value};

use coverlab_core::bounds::{bound_report, check_q_bound};
use coverlab_core::gcover::{
    check_thm_3_2, check_thm_4_1, check_thm_4_3_bounds, check_union_lower_bound, enumerate_uniform_covers,
    probe_conjecture_4_1, search_distinct_index_partition, union_bound_sweep, weight_profile, CosetEntry,
    CosetSystem, EnumerationBudget, GcoverError, UnionSweepReport,
};
use coverlab_core::group::{
    catalog, catalog_group, fingerprint, is_pyramidal, is_solvable, is_subnormal, normal_subgroups, run_lemma_suite,
    FiniteGroup, Subgroup,
};
use coverlab_core::io::{read_coset_file, read_cover_file, read_group_file, subgroup_generators};
use coverlab_core::zcover::{
    check_lemma_3_4, check_rogers, check_simpson, check_thm_4_2, check_thm_4_2_all, classify, density_union,
    largest_modulus_multiplicity, mu_of_divisor_closure, random_system, two_largest_moduli_equal, PeriodBudget,
    ResidueSystem, DEFAULT_PERIOD_BUDGET,
};
use coverlab_core::{seeded_rng, ExactRational};

use crate::report::{rat, Report};
use crate::{Cli, Command, CoverOrRandom, GroupSelect};

/// Environment variable overriding the default budgets.
pub const BUDGET_ENV: &str = "COVERLAB_BUDGET";
/// Catalog order limit for `hs-search` and `enumerate-covers` without a group.
const DEFAULT_SEARCH_MAX_ORDER: usize = 12;
/// Largest ℤ/N covered by `thm31 --sweep`.
const CYCLIC_SWEEP_MAX: usize = 36;
/// Class count and modulus limits for random ℤ instances.
const RANDOM_CLASSES: usize = 6;
const RANDOM_MODULUS: u64 = 30;

pub fn run(cli: &Cli) -> Result<Report> {
    match &cli.command {
        Command::VerifyCover(a) => verify_cover(cli, &a.file),
        Command::Density(a) => density(cli, &a.file),
        Command::Mu { set, scale } => mu(set, *scale),
        Command::Lemma34(a) => lemma34(cli, a),
        Command::Rogers(a) => rogers(cli, a),
        Command::Thm42 { file, prime, alpha } => thm42(cli, file, *prime, *alpha),
        Command::Simpson(a) => simpson(cli, &a.file),
        Command::Bounds { m } => bounds(*m),
        Command::Qbound { q, m } => qbound(*q, *m),
        Command::GroupInfo { select, subgroups } => group_info(select, *subgroups),
        Command::LemmaSuite(select) => lemma_suite(select),
        Command::Thm31 { file, h, sweep, k } => {
            if *sweep {
                thm31_sweep(*k)
            } else {
                thm31(file.as_deref().expect("clap requires a file"), h)
            }
        }
        Command::Thm32(a) => thm32(&a.file, &a.h),
        Command::Thm41 { file } => thm41(file),
        Command::HsSearch(select) => hs_search(select),
        Command::EnumerateCovers { select, k, m, list } => enumerate(cli, select, *k, *m, *list),
        Command::Conjecture41 { file, select, k, m } => conjecture41(cli, file.as_deref(), select, *k, *m),
    }
}

/// The requested budget (flag, then environment, then `cap`) clamped to `cap`.
fn budget(cli: &Cli, cap: u64, report: &mut Report) -> Result<u64> {
    let requested = match cli.budget {
        Some(b) => Some(b),
        None => match std::env::var(BUDGET_ENV) {
            Ok(s) => Some(s.trim().parse::<u64>().with_context(|| format!("{BUDGET_ENV} must be an integer"))?),
            Err(_) => None,
        },
    };
    let value = requested.unwrap_or(cap);
    if value > cap {
        report.warn(format!("budget {value} lowered to the built-in cap {cap}"));
        return Ok(cap);
    }
    Ok(value)
}

fn period_budget(cli: &Cli, report: &mut Report) -> Result<PeriodBudget> {
    Ok(PeriodBudget(budget(cli, DEFAULT_PERIOD_BUDGET, report)?))
}

fn cover_json(sys: &ResidueSystem) -> Value {
    json!(sys.classes().iter().map(|c| c.to_string()).collect::<Vec<_>>())
}

fn load_cover(path: &Path) -> Result<ResidueSystem> {
    read_cover_file(path).with_context(|| format!("reading {}", path.display()))
}

fn verify_cover(cli: &Cli, path: &Path) -> Result<Report> {
    let sys = load_cover(path)?;
    let mut r = Report::new("verify-cover", json!({ "file": path.display().to_string(), "classes": cover_json(&sys) }));
    let b = period_budget(cli, &mut r)?;
    let c = classify(&sys, b)?;
    r.assert("cover", c.is_cover, json!(c.is_cover));
    r.inform("exact-cover", Some(c.is_exact_cover), json!(c.is_exact_cover));
    r.inform("uniform-multiplicity", None, json!(c.uniform_m));
    r.inform("trivial", Some(c.is_trivial), json!(c.is_trivial));
    r.inform("period", None, json!(sys.period(b)?));
    Ok(r)
}

fn density(cli: &Cli, path: &Path) -> Result<Report> {
    let sys = load_cover(path)?;
    let mut r = Report::new("density", json!({ "file": path.display().to_string(), "classes": cover_json(&sys) }));
    let b = period_budget(cli, &mut r)?;
    let d = density_union(&sys, b)?;
    r.inform("density", None, rat(&d));
    let zeroed = density_union(&sys.zeroed(), b)?;
    r.inform("density-through-zero", None, rat(&zeroed));
    Ok(r)
}

fn mu(set: &[u64], scale: Option<u64>) -> Result<Report> {
    let mut r = Report::new("mu", json!({ "set": set, "scale": scale }));
    let value = mu_of_divisor_closure(set)?;
    r.inform("mu", None, json!(value));
    if let Some(k) = scale {
        let scaled: Vec<u64> = set.iter().map(|&x| x.checked_mul(k).context("scaled element overflows"))
            .collect::<Result<_>>()?;
        let lhs = mu_of_divisor_closure(&scaled)?;
        let rhs = value.checked_mul(k).context("scaled value overflows")?;
        r.assert("scaling", lhs == rhs, json!({ "scaled": lhs, "k_times": rhs }));
    }
    Ok(r)
}

/// The file's system, or `count` seeded random systems.
fn systems(cli: &Cli, a: &CoverOrRandom, r: &mut Report) -> Result<Vec<ResidueSystem>> {
    match (&a.file, a.random) {
        (Some(path), _) => Ok(vec![load_cover(path)?]),
        (None, Some(count)) => {
            let seed = cli.seed.unwrap_or(0);
            r.seed = Some(seed);
            let mut rng = seeded_rng(seed);
            Ok((0..count).map(|_| random_system(&mut rng, RANDOM_CLASSES, RANDOM_MODULUS)).collect())
        }
        (None, None) => bail!("a cover file or --random is required"),
    }
}

fn inputs_of(a: &CoverOrRandom) -> Value {
    json!({ "file": a.file.as_ref().map(|p| p.display().to_string()), "random": a.random })
}

fn lemma34(cli: &Cli, a: &CoverOrRandom) -> Result<Report> {
    let mut r = Report::new("lemma34", inputs_of(a));
    let b = period_budget(cli, &mut r)?;
    let all = systems(cli, a, &mut r)?;
    let single = all.len() == 1 && a.file.is_some();
    let mut failures = 0;
    for sys in &all {
        let rep = check_lemma_3_4(&sys.moduli(), b)?;
        if single {
            r.assert("density-identity", rep.holds, json!({ "lhs": rat(&rep.lhs), "rhs": rat(&rep.rhs), "primes": rep.primes }));
        } else if !rep.holds {
            failures += 1;
            if failures == 1 {
                r.warn(format!("first failure on moduli {:?}", sys.moduli()));
            }
        }
    }
    if !single {
        r.assert("density-identity", failures == 0, json!({ "checked": all.len(), "violations": failures }));
    }
    Ok(r)
}

fn rogers(cli: &Cli, a: &CoverOrRandom) -> Result<Report> {
    let mut r = Report::new("rogers", inputs_of(a));
    let b = period_budget(cli, &mut r)?;
    let all = systems(cli, a, &mut r)?;
    let single = all.len() == 1 && a.file.is_some();
    let mut failures = 0;
    for sys in &all {
        let rep = check_rogers(sys, b)?;
        if single {
            r.assert(
                "shifted-covers-at-least-zeroed",
                rep.holds,
                json!({ "period": rep.period, "shifted": rep.shifted_count, "zeroed": rep.zeroed_count }),
            );
        } else if !rep.holds {
            failures += 1;
            if failures == 1 {
                r.warn(format!("first failure on {}", cover_json(sys)));
            }
        }
    }
    if !single {
        r.assert("shifted-covers-at-least-zeroed", failures == 0, json!({ "checked": all.len(), "violations": failures }));
    }
    Ok(r)
}

fn thm42(cli: &Cli, path: &Path, prime: Option<u64>, alpha: Option<u32>) -> Result<Report> {
    let sys = load_cover(path)?;
    let mut r = Report::new(
        "thm42",
        json!({ "file": path.display().to_string(), "classes": cover_json(&sys), "prime": prime, "alpha": alpha }),
    );
    let b = period_budget(cli, &mut r)?;
    let reports = match (prime, alpha) {
        (_, Some(a)) => vec![check_thm_4_2(&sys, a, prime, b)?],
        (Some(p), None) => {
            let all = check_thm_4_2_all(&sys, b)?;
            let chosen: Vec<_> = all.into_iter().filter(|x| x.prime == p).collect();
            if chosen.is_empty() {
                bail!("prime {p} does not divide the lcm of the moduli");
            }
            chosen
        }
        (None, None) => check_thm_4_2_all(&sys, b)?,
    };
    for rep in reports {
        let tag = format!("p={} alpha={}", rep.prime, rep.alpha);
        r.assert(
            &format!("index-bound[{tag}]"),
            rep.holds_4_8,
            json!({ "lhs": rat(&rep.lhs), "rhs": rat(&rep.rhs), "beta": rep.beta, "epsilon": rat(&rep.epsilon),
                    "multiplicity": rep.multiplicity }),
        );
        r.assert(
            &format!("top-power-multiplicity[{tag}]"),
            rep.holds_4_10,
            json!({ "top_multiplicity": rep.top_multiplicity, "bound": rat(&rep.top_bound),
                    "weak_bound": rat(&rep.top_bound_weak) }),
        );
    }
    Ok(r)
}

fn simpson(cli: &Cli, path: &Path) -> Result<Report> {
    let sys = load_cover(path)?;
    let mut r = Report::new("simpson", json!({ "file": path.display().to_string(), "classes": cover_json(&sys) }));
    let b = period_budget(cli, &mut r)?;
    let s = check_simpson(&sys, b)?;
    r.assert(
        "largest-prime-bound",
        s.holds,
        json!({ "largest_prime": s.largest_prime, "rhs": rat(&s.rhs), "multiplicity": s.multiplicity, "primes": s.primes }),
    );
    let eq = two_largest_moduli_equal(&sys);
    r.assert("two-largest-moduli-equal", eq, json!(eq));
    let l = largest_modulus_multiplicity(&sys)?;
    r.assert(
        "largest-modulus-multiplicity",
        l.holds,
        json!({ "largest": l.largest, "multiplicity": l.multiplicity, "least_prime": l.least_prime }),
    );
    Ok(r)
}

fn bounds(m: u64) -> Result<Report> {
    let mut r = Report::new("bounds", json!({ "M": m }));
    let b = bound_report(m)?;
    r.inform("c", None, json!(b.c));
    r.inform("pi_c", None, json!(b.pi_c));
    r.inform("theta_c", None, json!(b.theta_c));
    r.inform("alpha", None, json!({ "value": b.alpha, "exact_escalation": b.alpha_escalated }));
    r.inform("alpha_theta", None, json!(b.alpha_theta));
    r.inform("l_value", None, json!(b.l_value));
    r.inform("prime_bound_float", None, json!(b.prime_bound_float));
    r.inform("c_ratio", None, json!(b.c_ratio));
    r.inform("log_index_leading", None, json!(b.log_index_leading));
    for n in b.notes {
        r.warn(n);
    }
    Ok(r)
}

fn qbound(q: u64, m: u64) -> Result<Report> {
    let mut r = Report::new("qbound", json!({ "q": q, "M": m }));
    let rep = check_q_bound(q, m)?;
    r.assert(
        "implication",
        rep.implication_holds,
        json!({ "c": rep.c, "premise": rep.premise_holds, "conclusion": rep.conclusion_holds }),
    );
    Ok(r)
}

/// Groups named by the selector, or catalog groups up to `max_order` (default `default_max`).
fn select_groups(select: &GroupSelect, default_max: usize) -> Result<Vec<(String, FiniteGroup)>> {
    if let Some(name) = &select.group {
        return Ok(vec![(name.clone(), catalog_group(name)?.clone())]);
    }
    if let Some(path) = &select.group_file {
        let (record, g) = read_group_file(path).with_context(|| format!("reading {}", path.display()))?;
        return Ok(vec![(record.name, g)]);
    }
    let max = select.max_order.unwrap_or(default_max);
    Ok(catalog()?
        .iter()
        .filter(|e| e.group.order() <= max)
        .map(|e| (e.record.name.clone(), e.group.clone()))
        .collect())
}

fn select_json(select: &GroupSelect) -> Value {
    json!({
        "group": select.group,
        "group_file": select.group_file.as_ref().map(|p| p.display().to_string()),
        "max_order": select.max_order,
    })
}

fn subgroup_json(g: &FiniteGroup, h: &Subgroup) -> Value {
    json!({ "order": h.size(), "index": h.index(), "generators": subgroup_generators(g, h) })
}

fn group_info(select: &GroupSelect, list_subgroups: bool) -> Result<Report> {
    let groups = select_groups(select, usize::MAX)?;
    let mut r = Report::new("group-info", select_json(select));
    for (name, g) in &groups {
        let f = fingerprint(g)?;
        let pyramidal = is_pyramidal(g)?;
        let mut info = json!({
            "order": g.order(),
            "abelian": f.abelian,
            "solvable": is_solvable(g),
            "pyramidal": pyramidal.pyramidal,
            "subgroups": f.subgroup_count,
            "normal_subgroups": normal_subgroups(g)?.len(),
            "element_orders": f.element_orders.iter().map(|(k, v)| format!("{k}:{v}")).collect::<Vec<_>>(),
        });
        if groups.len() == 1 {
            info["elements"] = json!(g
                .elements()
                .map(|x| json!({ "id": x, "label": g.label(x), "order": g.element_order(x) }))
                .collect::<Vec<_>>());
        }
        if list_subgroups {
            let mut subs = Vec::new();
            for h in g.subgroups()? {
                let mut s = subgroup_json(g, h);
                s["normal"] = json!(g.is_normal(h));
                s["subnormal"] = json!(is_subnormal(g, h)?.subnormal);
                subs.push(s);
            }
            info["subgroup_list"] = json!(subs);
        }
        r.inform(name, None, info);
    }
    Ok(r)
}

fn lemma_suite(select: &GroupSelect) -> Result<Report> {
    let groups = select_groups(select, usize::MAX)?;
    let mut r = Report::new("lemma-suite", select_json(select));
    for (name, g) in &groups {
        let suite = run_lemma_suite(g)?;
        for (check, tally) in suite.gating() {
            let v = r.assert(
                &format!("{name}/{check}"),
                tally.holds(),
                json!({ "checked": tally.checked, "violations": tally.violations }),
            );
            if let Some(w) = &tally.first_violation {
                v.with_witness(json!(w));
            }
        }
        let h = &suite.pyramidal_heredity;
        r.inform(
            &format!("{name}/pyramidal_heredity"),
            Some(h.holds()),
            json!({ "checked": h.checked, "violations": h.violations }),
        );
    }
    Ok(r)
}

fn entries_json(g: &FiniteGroup, entries: &[CosetEntry]) -> Value {
    json!(entries
        .iter()
        .map(|e| json!({ "rep": e.rep, "subgroup": subgroup_json(g, &e.subgroup) }))
        .collect::<Vec<_>>())
}

fn coset_inputs(path: &Path, g: &FiniteGroup, entries: &[CosetEntry], group_ref: String) -> Value {
    json!({ "file": path.display().to_string(), "group": group_ref, "order": g.order(), "entries": entries_json(g, entries) })
}

fn thm31(path: &Path, h_gens: &[u32]) -> Result<Report> {
    let f = read_coset_file(path).with_context(|| format!("reading {}", path.display()))?;
    let g = &f.group;
    check_ids(g, h_gens)?;
    let h = g.generate(h_gens);
    let mut inputs = coset_inputs(path, g, &f.entries, f.group_ref.to_string());
    inputs["h"] = subgroup_json(g, &h);
    let mut r = Report::new("thm31", inputs);
    let rep = check_union_lower_bound(g, &h, &f.entries)?;
    let value = json!({
        "lhs": rep.lhs,
        "rhs": rep.rhs,
        "all_subnormal": rep.hypothesis.all_subnormal,
        "prime_series": rep.hypothesis.prime_series,
    });
    if rep.hypothesis.applies() {
        r.assert("coset-count-bound", rep.holds, value);
    } else {
        r.inform("coset-count-bound", Some(rep.holds), value);
        r.warn("no hypothesis applies; the comparison is informational");
    }
    Ok(r)
}

fn thm31_sweep(k: usize) -> Result<Report> {
    let mut r = Report::new("thm31", json!({ "sweep": true, "k": k, "cyclic_max": CYCLIC_SWEEP_MAX }));
    let mut cyclic = UnionSweepReport::default();
    for n in 1..=CYCLIC_SWEEP_MAX {
        cyclic.merge(union_bound_sweep(&coverlab_core::group::cyclic_group(n), k, true)?);
    }
    let mut cat = UnionSweepReport::default();
    for e in catalog()? {
        cat.merge(union_bound_sweep(&e.group, k, false)?);
    }
    for (name, s) in [("cyclic-sweep", cyclic), ("catalog-sweep", cat)] {
        let v = r.assert(
            name,
            s.violations == 0,
            json!({ "instances": s.instances, "asserted": s.asserted, "violations": s.violations,
                    "informational_failures": s.informational_failures }),
        );
        if let Some(w) = s.first_violation {
            v.with_witness(json!(w));
        }
    }
    Ok(r)
}

fn check_ids(g: &FiniteGroup, ids: &[u32]) -> Result<()> {
    if let Some(&x) = ids.iter().find(|&&x| x as usize >= g.order()) {
        bail!("element id {x} out of range for order {}", g.order());
    }
    Ok(())
}

fn thm32(path: &Path, h_gens: &[u32]) -> Result<Report> {
    let f = read_coset_file(path).with_context(|| format!("reading {}", path.display()))?;
    let g = &f.group;
    check_ids(g, h_gens)?;
    let h = g.generate(h_gens);
    let mut inputs = coset_inputs(path, g, &f.entries, f.group_ref.to_string());
    inputs["h"] = subgroup_json(g, &h);
    let mut r = Report::new("thm32", inputs);
    let rep = check_thm_3_2(g, &h, &f.entries)?;
    let value = json!({
        "lhs": rat(&rep.lhs),
        "rhs": rat(&rep.rhs),
        "sup_multiplicity": rep.sup_multiplicity,
        "cases": rep.cases.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
        "case": rep.case.map(|c| c.to_string()),
        "d_both_branches": rep.d_both_branches,
    });
    if rep.case.is_some() {
        r.assert("gcd-bound", rep.holds, value);
    } else {
        r.inform("gcd-bound", Some(rep.holds), value);
        r.warn("no case applies; the comparison is informational");
    }
    Ok(r)
}

fn ratio_value(lhs: &ExactRational, rhs: &ExactRational) -> Value {
    json!({ "lhs": rat(lhs), "rhs": rat(rhs) })
}

/// Asserted and informational verdicts for one uniform cover.
fn uniform_verdicts(r: &mut Report, prefix: &str, sys: &CosetSystem) -> Result<()> {
    let rep = check_thm_4_1(sys)?;
    let mut v = ratio_value(&rep.lhs, &rep.rhs);
    v["prime"] = json!(rep.prime);
    v["beta"] = json!(rep.beta);
    v["epsilon"] = rat(&rep.epsilon);
    v["m_r"] = json!(rep.m_r);
    v["conditions"] = json!({
        "a": rep.condition_a, "a_vacuous": rep.condition_a_vacuous, "b": rep.condition_b, "c": rep.condition_c,
        "justified_by": rep.justified_by,
    });
    if rep.conditions_apply() {
        r.assert(&format!("{prefix}index-inequality"), rep.holds, v);
    } else {
        r.inform(&format!("{prefix}index-inequality"), Some(rep.holds), v);
    }
    if let Some(sf) = &rep.squarefree {
        r.assert(
            &format!("{prefix}squarefree-bound"),
            sf.holds,
            json!({ "best_count": sf.best_count, "bound": rat(&sf.bound), "floor_bound": rat(&sf.floor_bound) }),
        );
    }
    let p = &rep.equal_index_pair;
    let pv = json!({ "prime": p.prime, "hypothesis": p.hypothesis_holds, "pair": p.pair });
    if p.hypothesis_holds {
        r.assert(&format!("{prefix}equal-index-pair"), p.holds, pv);
    } else {
        r.inform(&format!("{prefix}equal-index-pair"), Some(p.pair.is_some()), pv);
    }
    let mr = &rep.multiplicity;
    let mv = json!({
        "M": mr.multiplicity_bound, "least_prime": mr.least_prime, "largest_prime": mr.largest_prime,
        "required": mr.required, "best_multiple_count": mr.best_multiple_count,
    });
    if mr.hypothesis_holds {
        r.assert(&format!("{prefix}multiplicity"), mr.holds, mv);
    } else {
        r.inform(&format!("{prefix}multiplicity"), Some(mr.holds), mv);
    }
    match check_thm_4_3_bounds(sys) {
        Ok(b) => {
            r.assert(
                &format!("{prefix}least-index-bounds"),
                b.holds(),
                json!({
                    "M": b.multiplicity_bound, "c": b.c, "pi_c": b.pi_c, "largest_index_prime": b.largest_index_prime,
                    "distinct_primes": b.distinct_primes, "log_least_index": b.log_least_index,
                    "alpha_theta": b.alpha_theta,
                }),
            );
        }
        Err(GcoverError::MultiplicityTooSmall(m)) => {
            r.warn(format!("{prefix}multiplicity bound {m} is below 2; least-index bounds skipped"));
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

fn thm41(path: &Path) -> Result<Report> {
    let f = read_coset_file(path).with_context(|| format!("reading {}", path.display()))?;
    let sys = f.system()?;
    let mut r = Report::new("thm41", coset_inputs(path, &f.group, &f.entries, f.group_ref.to_string()));
    let profile = weight_profile(&sys);
    r.inform("uniform-multiplicity", None, json!(profile.uniform_m));
    uniform_verdicts(&mut r, "", &sys)?;
    Ok(r)
}

fn hs_search(select: &GroupSelect) -> Result<Report> {
    let groups = select_groups(select, DEFAULT_SEARCH_MAX_ORDER)?;
    let mut r = Report::new("hs-search", select_json(select));
    let mut found = 0;
    for (name, g) in &groups {
        let res = search_distinct_index_partition(g)?;
        let v = r.assert(
            &format!("{name}/no-distinct-index-partition"),
            res.found.is_none(),
            json!({ "order": res.group_order, "index_sets": res.index_sets_tried, "nodes": res.nodes_explored }),
        );
        if let Some(entries) = &res.found {
            found += 1;
            v.with_witness(entries_json(g, entries));
        }
    }
    r.inform(
        "summary",
        Some(found == 0),
        json!(if found == 0 { "no counterexample".to_string() } else { format!("{found} counterexamples") }),
    );
    Ok(r)
}

fn enumerate(cli: &Cli, select: &GroupSelect, k: usize, m: u32, list: bool) -> Result<Report> {
    let groups = select_groups(select, DEFAULT_SEARCH_MAX_ORDER)?;
    let mut inputs = select_json(select);
    inputs["k"] = json!(k);
    inputs["m"] = json!(m);
    let mut r = Report::new("enumerate-covers", inputs);
    let cap = EnumerationBudget::default().0;
    let b = EnumerationBudget(budget(cli, cap, &mut r)?);
    for (name, g) in &groups {
        let res = enumerate_uniform_covers(g, k, m, b)?;
        if res.truncated {
            r.truncated = true;
            r.warn(format!("{name}: node budget {} exhausted", b.0));
        }
        let mut violations = 0;
        let mut asserted = 0;
        for sys in &res.covers {
            let mut sub = Report::new("", Value::Null);
            uniform_verdicts(&mut sub, "", sys)?;
            asserted += sub.verdicts.iter().filter(|v| v.asserted).count();
            if sub.exit_code() != 0 {
                violations += 1;
                if violations == 1 {
                    r.warn(format!("{name}: first violating cover {sys}"));
                }
            }
        }
        let v = r.assert(
            &format!("{name}/uniform-cover-checks"),
            violations == 0,
            json!({ "covers": res.covers.len(), "asserted_checks": asserted, "violating_covers": violations,
                    "nodes": res.nodes }),
        );
        if list {
            v.with_witness(json!(res.covers.iter().map(|c| c.to_string()).collect::<Vec<_>>()));
        }
    }
    Ok(r)
}

fn conjecture_value(c: &coverlab_core::gcover::Conjecture41Report) -> Value {
    json!({ "n_max": c.n_max, "multiplicity": c.multiplicity, "least_prime": c.least_prime,
            "precondition_met": c.precondition_met, "notes": c.notes })
}

fn conjecture41(cli: &Cli, file: Option<&Path>, select: &GroupSelect, k: usize, m: u32) -> Result<Report> {
    if let Some(path) = file {
        let f = read_coset_file(path).with_context(|| format!("reading {}", path.display()))?;
        let sys = f.system()?;
        let mut r = Report::new("conjecture41", coset_inputs(path, &f.group, &f.entries, f.group_ref.to_string()));
        let c = probe_conjecture_4_1(&sys)?;
        r.inform("largest-index-multiplicity", Some(c.holds), conjecture_value(&c));
        return Ok(r);
    }
    let groups = select_groups(select, DEFAULT_SEARCH_MAX_ORDER)?;
    let mut inputs = select_json(select);
    inputs["k"] = json!(k);
    inputs["m"] = json!(m);
    let mut r = Report::new("conjecture41", inputs);
    let b = EnumerationBudget(budget(cli, EnumerationBudget::default().0, &mut r)?);
    for (name, g) in &groups {
        let (mut probed, mut failing) = (0usize, 0usize);
        let mut first = None;
        for mm in 1..=m {
            let res = enumerate_uniform_covers(g, k, mm, b)?;
            if res.truncated {
                r.truncated = true;
                r.warn(format!("{name}: node budget {} exhausted", b.0));
            }
            for sys in &res.covers {
                let c = probe_conjecture_4_1(sys)?;
                if c.precondition_met {
                    probed += 1;
                    if !c.holds {
                        failing += 1;
                        first.get_or_insert_with(|| sys.to_string());
                    }
                }
            }
        }
        let v = r.inform(
            &format!("{name}/largest-index-multiplicity"),
            Some(failing == 0),
            json!({ "probed": probed, "failing": failing }),
        );
        if let Some(w) = first {
            v.with_witness(json!(w));
        }
    }
    Ok(r)
}
