//! Runnable registry of the library's consistency checks.
//!
//! Every structural fact the other modules rely on is packaged here as a
//! named check, so a single call can exercise one group end to end: the
//! Coxeter layer, the biHecke monoid closure, blocks and the cutting poset,
//! translation modules, the Borel submonoid, and the composition-multiplicity
//! layer.  Checks that need the full monoid closure degrade to `Skipped` when
//! the closure budget rules the enumeration out, so the registry stays usable
//! on groups of any size.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::Arc;

use crate::blocks::{
    blocks_bijection_check, conjecture_report, cutting_point, is_left_block, is_right_block,
    lw_family, minimal_nontrivial_blocks, reduced_left_blocks, tiling_check, CuttingPoset,
};
use crate::borel::{
    agrees_with_filtered, borel_closure, cartan_matrix, fixes, idempotent_pair_relation,
    jorder_leq, minimal_generators, minimal_generators_match_prediction, BorelClosure,
};
use crate::coxeter::{subset_text, CoxeterGroup, Elem, Family, Order, Side, Subset};
use crate::error::{Error, Result};
use crate::heckeops::{
    analyze, bihecke_monoid, e_idempotent, idempotent_ideal_leq, omega, ClosureOptions,
    MonoidClosure,
};
use crate::linalg::QMat;
use crate::reptheory::{
    check_column_dims, decomposition_matrix, fixed_point_criterion, m1_of_module, m1_of_simple,
    subquotient_multiplicities,
};
use crate::transmod::{
    p_submodule, simple_dims, trans_of, translation_module, whecke_dim_closure, whecke_dim_count,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Passed,
    Failed,
    Skipped,
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Copy)]
pub struct CheckOptions {
    /// Hard cap on monoid closure sizes.
    pub closure_budget: usize,
    /// Dimension cap for operator-span computations on translation modules.
    pub module_dim_bound: usize,
    /// Worker threads for closure enumeration.
    pub threads: usize,
}

impl Default for CheckOptions {
    fn default() -> CheckOptions {
        CheckOptions {
            closure_budget: 1_000_000,
            module_dim_bound: 64,
            threads: 1,
        }
    }
}

/// Exhaustive pairwise checks on full closures stay affordable only while
/// the closure is small; above this size the pairwise checks are skipped.
const PAIRWISE_CLOSURE_BOUND: usize = 100;

/// Translation modules larger than this are excluded from the subquotient
/// multiplicity checks (the per-idempotent traces grow cubically).
const SUBQUOTIENT_DIM_BOUND: usize = 12;

fn run(results: &mut Vec<CheckResult>, name: &'static str, body: impl FnOnce() -> Result<String>) {
    let result = match body() {
        Ok(detail) => CheckResult {
            name,
            status: CheckStatus::Passed,
            detail,
        },
        Err(Error::Resource {
            context,
            partial,
            budget,
        }) => CheckResult {
            name,
            status: CheckStatus::Skipped,
            detail: format!("{context} ({partial} over budget {budget})"),
        },
        Err(e) => CheckResult {
            name,
            status: CheckStatus::Failed,
            detail: e.to_string(),
        },
    };
    results.push(result);
}

fn skip(results: &mut Vec<CheckResult>, name: &'static str, why: &str) {
    results.push(CheckResult {
        name,
        status: CheckStatus::Skipped,
        detail: why.to_string(),
    });
}

fn violation(message: String) -> Error {
    Error::InvariantViolation(message)
}

/// Proper subsets of `j`, in decreasing mask order.
fn proper_subsets(j: Subset) -> Vec<Subset> {
    let mut out = Vec::new();
    let mut sub = j.wrapping_sub(1) & j;
    loop {
        out.push(sub);
        if sub == 0 {
            break;
        }
        sub = sub.wrapping_sub(1) & j;
    }
    out
}

/// `J` is left-reduced for `w` when no proper subset yields the same minimal
/// coset representative `^Jw`.
fn is_left_reduced(group: &CoxeterGroup, w: Elem, j: Subset) -> bool {
    let rep = group.parabolic_decompose(w, j, Side::Left).representative;
    proper_subsets(j)
        .into_iter()
        .all(|sub| group.parabolic_decompose(w, sub, Side::Left).representative != rep)
}

/// Render results as one line per check.
pub fn text_report(results: &[CheckResult]) -> String {
    let mut out = String::new();
    for r in results {
        let status = match r.status {
            CheckStatus::Passed => "ok",
            CheckStatus::Failed => "FAILED",
            CheckStatus::Skipped => "skipped",
        };
        out.push_str(&format!("{:<38} {:<8} {}\n", r.name, status, r.detail));
    }
    out
}

pub fn count(results: &[CheckResult], status: CheckStatus) -> usize {
    results.iter().filter(|r| r.status == status).count()
}

/// Run every registered check for one group.
pub fn run_all(group: &Arc<CoxeterGroup>, options: &CheckOptions) -> Vec<CheckResult> {
    let mut results = Vec::new();
    let n = group.order();

    // ----- Coxeter layer -------------------------------------------------

    run(&mut results, "coxeter-group-laws", || {
        for u in group.elements() {
            let e = group.identity();
            if group.multiply(u, e) != u || group.multiply(e, u) != u {
                return Err(violation(format!("identity law fails at {u}")));
            }
            let ui = group.inverse(u);
            if group.multiply(u, ui) != e || group.multiply(ui, u) != e {
                return Err(violation(format!("inverse law fails at {u}")));
            }
        }
        for u in group.elements() {
            for v in group.elements() {
                for x in group.elements() {
                    if group.multiply(group.multiply(u, v), x)
                        != group.multiply(u, group.multiply(v, x))
                    {
                        return Err(violation(format!("associativity fails at ({u},{v},{x})")));
                    }
                }
            }
        }
        if group.multiply(group.w0(), group.w0()) != group.identity() {
            return Err(violation("w0 is not an involution".to_string()));
        }
        Ok(format!("{} associativity triples", n * n * n))
    });

    run(&mut results, "coxeter-descent-length", || {
        for w in group.elements() {
            for i in 1..=group.rank() as u32 {
                let descent = group.right_descents(w) & (1 << (i - 1)) != 0;
                let shorter = group.length(group.right_mult_gen(w, i)) < group.length(w);
                if descent != shorter {
                    return Err(violation(format!(
                        "descent/length mismatch at w={}, i={i}",
                        group.format_elem(w)
                    )));
                }
                let s = group.right_mult_gen(group.identity(), i);
                let left_descent =
                    group.right_descents(group.inverse(w)) & (1 << (i - 1)) != 0;
                let left_shorter = group.length(group.multiply(s, w)) < group.length(w);
                if left_descent != left_shorter {
                    return Err(violation(format!(
                        "left descent mismatch at w={}, i={i}",
                        group.format_elem(w)
                    )));
                }
            }
        }
        Ok(format!("{} elements x {} generators", n, group.rank()))
    });

    run(&mut results, "coxeter-weak-implies-bruhat", || {
        for u in group.elements() {
            for v in group.elements() {
                for order in [Order::LeftWeak, Order::RightWeak, Order::LeftRightWeak] {
                    if group.leq(order, u, v) && !group.leq(Order::Bruhat, u, v) {
                        return Err(violation(format!(
                            "{} ≤ {} in {order:?} but not in Bruhat order",
                            group.format_elem(u),
                            group.format_elem(v)
                        )));
                    }
                }
            }
        }
        Ok(format!("{} pairs x 3 orders", n * n))
    });

    run(&mut results, "coxeter-word-concatenation", || {
        for u in group.elements() {
            for v in group.elements() {
                let product = group.multiply(u, v);
                if group.length(product) > group.length(u) + group.length(v) {
                    return Err(violation(format!(
                        "length superadditive at ({}, {})",
                        group.format_elem(u),
                        group.format_elem(v)
                    )));
                }
                let mut x = group.identity();
                for &letter in group.reduced_word(u).iter().chain(group.reduced_word(v)) {
                    x = group.right_mult_gen(x, letter as u32);
                }
                if x != product {
                    return Err(violation(format!(
                        "concatenated words evaluate to {} instead of {}",
                        group.format_elem(x),
                        group.format_elem(product)
                    )));
                }
            }
        }
        Ok(format!("{} pairs", n * n))
    });

    run(&mut results, "coxeter-parabolic-bijection", || {
        for j in group.subsets() {
            for side in [Side::Left, Side::Right] {
                let mut pairs = HashSet::new();
                let mut parts = BTreeSet::new();
                let mut reps = BTreeSet::new();
                for w in group.elements() {
                    let d = group.parabolic_decompose(w, j, side);
                    let product = match side {
                        Side::Left => group.multiply(d.parabolic_part, d.representative),
                        Side::Right => group.multiply(d.representative, d.parabolic_part),
                    };
                    if product != w {
                        return Err(violation(format!(
                            "decomposition of {} does not multiply back",
                            group.format_elem(w)
                        )));
                    }
                    if !group.in_parabolic(d.parabolic_part, j) {
                        return Err(violation(format!(
                            "parabolic part of {} leaves W_{}",
                            group.format_elem(w),
                            subset_text(j)
                        )));
                    }
                    let descents = match side {
                        Side::Left => group.right_descents(group.inverse(d.representative)),
                        Side::Right => group.right_descents(d.representative),
                    };
                    if descents & j != 0 {
                        return Err(violation(format!(
                            "representative of {} has a descent inside {}",
                            group.format_elem(w),
                            subset_text(j)
                        )));
                    }
                    pairs.insert((d.parabolic_part, d.representative));
                    parts.insert(d.parabolic_part);
                    reps.insert(d.representative);
                }
                if pairs.len() != n || parts.len() * reps.len() != n {
                    return Err(violation(format!(
                        "(part, representative) pairs do not tile W for J = {}",
                        subset_text(j)
                    )));
                }
            }
        }
        Ok(format!("{} subsets x 2 sides", 1usize << group.rank()))
    });

    run(&mut results, "coxeter-bruhat-subword", || {
        for v in group.elements() {
            let word = group.reduced_word(v);
            if word.len() > 20 {
                return Err(Error::Resource {
                    context: "subword enumeration".to_string(),
                    partial: word.len(),
                    budget: 20,
                });
            }
            let mut reachable = vec![false; n];
            for mask in 0..(1usize << word.len()) {
                let mut x = group.identity();
                for (pos, &letter) in word.iter().enumerate() {
                    if mask & (1 << pos) != 0 {
                        x = group.right_mult_gen(x, letter as u32);
                    }
                }
                reachable[x as usize] = true;
            }
            for u in group.elements() {
                if group.leq(Order::Bruhat, u, v) != reachable[u as usize] {
                    return Err(violation(format!(
                        "Bruhat order disagrees with subword search at ({}, {})",
                        group.format_elem(u),
                        group.format_elem(v)
                    )));
                }
            }
        }
        Ok(format!("{} pairs against subword oracle", n * n))
    });

    run(&mut results, "coxeter-interval-symmetry", || {
        for w in group.elements() {
            let right = group.weak_interval(w, Side::Right).len();
            let left = group.weak_interval(group.inverse(w), Side::Left).len();
            if right != left {
                return Err(violation(format!(
                    "|[1,{}]_R| = {right} but |[1,{}]_L| = {left}",
                    group.format_elem(w),
                    group.format_elem(group.inverse(w))
                )));
            }
        }
        Ok(format!("{n} elements"))
    });

    // ----- biHecke monoid closure ----------------------------------------

    let closure_options = ClosureOptions {
        budget: options.closure_budget,
        threads: options.threads,
    };
    let mut monoid: Option<MonoidClosure> = None;
    run(&mut results, "hecke-monoid-closure", || {
        let m = bihecke_monoid(group, closure_options)?;
        let detail = format!(
            "{} elements, diameter {}, {} idempotents",
            m.size(),
            m.diameter(),
            m.idempotents().len()
        );
        monoid = Some(m);
        Ok(detail)
    });
    let closure_note = "needs the full monoid closure";

    match &monoid {
        None => skip(&mut results, "hecke-left-order-preservation", closure_note),
        Some(m) => run(&mut results, "hecke-left-order-preservation", || {
            for f in 0..m.size() as u32 {
                let table = m.element(f);
                for u in group.elements() {
                    for v in group.elements() {
                        if group.leq(Order::LeftWeak, u, v)
                            && !group.leq(Order::LeftWeak, table.apply(u), table.apply(v))
                        {
                            return Err(violation(format!(
                                "element {f} breaks left order at ({}, {})",
                                group.format_elem(u),
                                group.format_elem(v)
                            )));
                        }
                    }
                }
            }
            Ok(format!("{} functions x {} pairs", m.size(), n * n))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-bruhat-preservation", closure_note),
        Some(m) => run(&mut results, "hecke-bruhat-preservation", || {
            for f in 0..m.size() as u32 {
                let table = m.element(f);
                for u in group.elements() {
                    for v in group.elements() {
                        if group.leq(Order::Bruhat, u, v)
                            && !group.leq(Order::Bruhat, table.apply(u), table.apply(v))
                        {
                            return Err(violation(format!(
                                "element {f} breaks Bruhat order at ({}, {})",
                                group.format_elem(u),
                                group.format_elem(v)
                            )));
                        }
                    }
                }
            }
            Ok(format!("{} functions x {} pairs", m.size(), n * n))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-bruhat-contraction", closure_note),
        Some(m) => run(&mut results, "hecke-bruhat-contraction", || {
            let mut fixers = 0usize;
            for f in 0..m.size() as u32 {
                if !m.fixes_one(f) {
                    continue;
                }
                fixers += 1;
                let table = m.element(f);
                for w in group.elements() {
                    if !group.leq(Order::Bruhat, table.apply(w), w) {
                        return Err(violation(format!(
                            "identity-fixing element {f} is not contracting at {}",
                            group.format_elem(w)
                        )));
                    }
                }
            }
            Ok(format!("{fixers} identity-fixing functions"))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-single-step", closure_note),
        Some(m) => run(&mut results, "hecke-single-step", || {
            for f in 0..m.size() as u32 {
                let table = m.element(f);
                for w in group.elements() {
                    for i in 1..=group.rank() as u32 {
                        let s = group.right_mult_gen(group.identity(), i);
                        let sw = group.multiply(s, w);
                        let image = table.apply(sw);
                        let base = table.apply(w);
                        if image != base && image != group.multiply(s, base) {
                            return Err(violation(format!(
                                "single-step fails for element {f} at (s_{i}, {})",
                                group.format_elem(w)
                            )));
                        }
                    }
                }
            }
            Ok(format!(
                "{} functions x {} (element, generator) pairs",
                m.size(),
                n * group.rank()
            ))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-fiber-contraction", closure_note),
        Some(m) => run(&mut results, "hecke-fiber-contraction", || {
            let left_covers = group.order_poset(Order::LeftWeak).covers();
            for f in 0..m.size() as u32 {
                let table = m.element(f);
                let image = analyze(table).image;
                let mut contracted: BTreeSet<(Elem, Elem)> = BTreeSet::new();
                for &(u, v) in &left_covers {
                    let yu = table.apply(u as Elem);
                    let yv = table.apply(v as Elem);
                    if yu != yv {
                        contracted.insert((yu, yv));
                    }
                }
                let mut restricted: BTreeSet<(Elem, Elem)> = BTreeSet::new();
                for &y1 in &image {
                    for &y2 in &image {
                        if y1 == y2 || !group.leq(Order::LeftWeak, y1, y2) {
                            continue;
                        }
                        let blocked = image.iter().any(|&z| {
                            z != y1
                                && z != y2
                                && group.leq(Order::LeftWeak, y1, z)
                                && group.leq(Order::LeftWeak, z, y2)
                        });
                        if !blocked {
                            restricted.insert((y1, y2));
                        }
                    }
                }
                if contracted != restricted {
                    return Err(violation(format!(
                        "contracted Hasse diagram differs from the image poset for element {f}"
                    )));
                }
            }
            Ok(format!("{} functions", m.size()))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-fiber-image-characterization", closure_note),
        Some(m) => run(&mut results, "hecke-fiber-image-characterization", || {
            let mut seen: HashMap<(Vec<Vec<Elem>>, Vec<Elem>), u32> = HashMap::new();
            for f in 0..m.size() as u32 {
                let analysis = analyze(m.element(f));
                let key = (analysis.fibers, analysis.image);
                if let Some(&other) = seen.get(&key) {
                    return Err(violation(format!(
                        "elements {other} and {f} share fibers and image"
                    )));
                }
                seen.insert(key, f);
            }
            Ok(format!("{} functions, all distinct", m.size()))
        }),
    }

    run(&mut results, "hecke-e-idempotent-suite", || {
        for w in group.elements() {
            let e = e_idempotent(group, w);
            if !e.is_idempotent() {
                return Err(violation(format!(
                    "e_{} is not idempotent",
                    group.format_elem(w)
                )));
            }
            let analysis = analyze(&e);
            let mut interval = group.weak_interval(w, Side::Left);
            interval.sort_unstable();
            if analysis.image != interval {
                return Err(violation(format!(
                    "image of e_{} is not the left interval",
                    group.format_elem(w)
                )));
            }
            if analysis.type_elem != w {
                return Err(violation(format!(
                    "type of e_{} is {}",
                    group.format_elem(w),
                    group.format_elem(analysis.type_elem)
                )));
            }
            for u in group.elements() {
                let value = e.apply(u);
                let members: Vec<Elem> = group
                    .elements()
                    .filter(|&x| {
                        group.leq(Order::Bruhat, x, u) && group.leq(Order::LeftWeak, x, w)
                    })
                    .collect();
                if !members.contains(&value)
                    || members.iter().any(|&x| !group.leq(Order::Bruhat, x, value))
                {
                    return Err(violation(format!(
                        "e_{}({}) is not the Bruhat maximum of the intersection",
                        group.format_elem(w),
                        group.format_elem(u)
                    )));
                }
            }
        }
        Ok(format!("{n} idempotents x {n} arguments"))
    });

    match &monoid {
        None => skip(&mut results, "hecke-unique-idempotent-image", closure_note),
        Some(m) => run(&mut results, "hecke-unique-idempotent-image", || {
            let idempotents = m.idempotents();
            for w in group.elements() {
                let mut interval = group.weak_interval(w, Side::Left);
                interval.sort_unstable();
                let matching: Vec<u32> = idempotents
                    .iter()
                    .copied()
                    .filter(|&i| analyze(m.element(i)).image == interval)
                    .collect();
                if matching.len() != 1 || m.element(matching[0]) != &e_idempotent(group, w) {
                    return Err(violation(format!(
                        "{} idempotents share the image [1, {}]_L",
                        matching.len(),
                        group.format_elem(w)
                    )));
                }
            }
            Ok(format!(
                "{} idempotents, one per interval image",
                idempotents.len()
            ))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-idempotent-conjugacy", closure_note),
        Some(m) => run(&mut results, "hecke-idempotent-conjugacy", || {
            let classes = m.idempotent_conjugacy_classes()?;
            if classes.len() != n {
                return Err(violation(format!(
                    "{} conjugacy classes, expected {n}",
                    classes.len()
                )));
            }
            let keys: Vec<Elem> = classes.iter().map(|(k, _)| *k).collect();
            let expected: Vec<Elem> = group.elements().collect();
            if keys != expected {
                return Err(violation("class keys do not enumerate W".to_string()));
            }
            let total: usize = classes.iter().map(|(_, members)| members.len()).sum();
            if total != m.idempotents().len() {
                return Err(violation("classes do not partition the idempotents".to_string()));
            }
            for (w, members) in &classes {
                let e = e_idempotent(group, *w);
                if !members.iter().any(|&i| m.element(i) == &e) {
                    return Err(violation(format!(
                        "class of {} does not contain e_{}",
                        group.format_elem(*w),
                        group.format_elem(*w)
                    )));
                }
            }
            Ok(format!("{n} classes over {total} idempotents"))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-ideal-criterion", closure_note),
        Some(m) if m.size() > PAIRWISE_CLOSURE_BOUND => skip(
            &mut results,
            "hecke-ideal-criterion",
            &format!("closure size {} over pairwise bound", m.size()),
        ),
        Some(m) => run(&mut results, "hecke-ideal-criterion", || {
            let idempotents = m.idempotents();
            for &i in &idempotents {
                for &j in &idempotents {
                    let by_type = idempotent_ideal_leq(m.element(i), m.element(j))?;
                    let literal = m.ideal_membership(i, j);
                    if by_type != literal {
                        return Err(violation(format!(
                            "interval-type criterion disagrees with ideal membership at ({i}, {j})"
                        )));
                    }
                }
            }
            Ok(format!("{} idempotent pairs", idempotents.len() * idempotents.len()))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-type-constant-on-orbit", closure_note),
        Some(m) => run(&mut results, "hecke-type-constant-on-orbit", || {
            for f in 0..m.size() as u32 {
                let base = analyze(m.element(f));
                for h in m.right_orbit(f) {
                    let other = analyze(m.element(h));
                    if other.rank == base.rank && other.type_elem != base.type_elem {
                        return Err(violation(format!(
                            "full-rank elements {f} and {h} of one right ideal differ in type"
                        )));
                    }
                }
            }
            Ok(format!("{} right ideals", m.size()))
        }),
    }

    match &monoid {
        None => skip(&mut results, "hecke-omega-idempotent", closure_note),
        Some(m) => run(&mut results, "hecke-omega-idempotent", || {
            for f in 0..m.size() as u32 {
                let limit = omega(m.element(f))?;
                if !limit.is_idempotent() {
                    return Err(violation(format!("omega power of element {f} is not idempotent")));
                }
            }
            Ok(format!("{} functions", m.size()))
        }),
    }

    // ----- Blocks and the cutting poset ----------------------------------

    run(&mut results, "blocks-union-intersection", || {
        for w in group.elements() {
            for (is_block, side) in [
                (is_right_block as fn(&CoxeterGroup, Elem, Subset) -> bool, "right"),
                (is_left_block, "left"),
            ] {
                let blocks: Vec<Subset> =
                    group.subsets().filter(|&k| is_block(group, w, k)).collect();
                for &a in &blocks {
                    for &b in &blocks {
                        if !is_block(group, w, a | b) || !is_block(group, w, a & b) {
                            return Err(violation(format!(
                                "{side} blocks of {} are not closed under union/intersection",
                                group.format_elem(w)
                            )));
                        }
                    }
                }
            }
        }
        Ok(format!("{n} elements x 2 sides"))
    });

    let mut cutting: Option<CuttingPoset> = None;
    run(&mut results, "blocks-cutting-poset", || {
        let poset = CuttingPoset::new(group)?;
        let relations: usize = (0..n)
            .map(|v| (0..n).filter(|&w| poset.leq(v as Elem, w as Elem)).count())
            .sum();
        let detail = format!("{relations} relations, Möbius closed form verified inside");
        cutting = Some(poset);
        Ok(detail)
    });
    let cutting_note = "needs the cutting poset";

    match &cutting {
        None => skip(&mut results, "blocks-poset-refines-weak-orders", cutting_note),
        Some(c) => run(&mut results, "blocks-poset-refines-weak-orders", || {
            for v in group.elements() {
                for w in group.elements() {
                    if c.leq(v, w)
                        && !(group.leq(Order::LeftWeak, v, w) && group.leq(Order::RightWeak, v, w))
                    {
                        return Err(violation(format!(
                            "{} ⊑ {} is not below in both weak orders",
                            group.format_elem(v),
                            group.format_elem(w)
                        )));
                    }
                }
            }
            Ok(format!("{} pairs", n * n))
        }),
    }

    match &cutting {
        None => skip(&mut results, "blocks-lower-covers", cutting_note),
        Some(c) => run(&mut results, "blocks-lower-covers", || {
            for w in group.elements() {
                let from_poset: BTreeSet<Elem> = c
                    .covers()
                    .iter()
                    .filter(|&&(_, upper)| upper == w)
                    .map(|&(lower, _)| lower)
                    .collect();
                let mut predicted: BTreeSet<Elem> = BTreeSet::new();
                for k in minimal_nontrivial_blocks(group, w) {
                    predicted.insert(cutting_point(group, w, k)?);
                }
                if from_poset != predicted {
                    return Err(violation(format!(
                        "lower covers of {} differ from minimal-block cutting points",
                        group.format_elem(w)
                    )));
                }
            }
            Ok(format!("{n} elements"))
        }),
    }

    run(&mut results, "blocks-lw-freeness", || {
        let mut entries = 0usize;
        for w in group.elements() {
            entries += lw_family(group, w)?.len();
        }
        Ok(format!("{entries} signed union entries"))
    });

    run(&mut results, "blocks-tiling", || {
        let mut pairs = 0usize;
        for w in group.elements() {
            for j in group.subsets() {
                if !is_left_reduced(group, w, j) {
                    continue;
                }
                pairs += 1;
                if tiling_check(group, w, j)? != is_left_block(group, w, j) {
                    return Err(violation(format!(
                        "tiling disagrees with the block property at ({}, {})",
                        group.format_elem(w),
                        subset_text(j)
                    )));
                }
            }
        }
        Ok(format!("{pairs} left-reduced (w, J) pairs"))
    });

    match &cutting {
        None => skip(&mut results, "blocks-conjecture-report", cutting_note),
        Some(c) => run(&mut results, "blocks-conjecture-report", || {
            let report = conjecture_report(c);
            let verdict = match (&report.counterexample, report.meet_semilattice) {
                (None, _) => "holds".to_string(),
                (Some(witness), _) => format!("fails: {witness}"),
            };
            Ok(format!(
                "meet-semilattice: {}, distributive intervals: {} ({verdict})",
                report.meet_semilattice, report.intervals_distributive
            ))
        }),
    }

    if group.descriptor().family == Family::A {
        run(&mut results, "blocks-matrix-bijection", || {
            for w in group.elements() {
                let perm: Vec<u8> = group
                    .format_elem(w)
                    .bytes()
                    .map(|b| b - b'0')
                    .collect();
                let (ok, note) = blocks_bijection_check(&perm)?;
                if !ok {
                    return Err(violation(format!(
                        "matrix-block bijection fails at {}: {note}",
                        group.format_elem(w)
                    )));
                }
            }
            Ok(format!("{n} permutations"))
        });
    } else {
        skip(
            &mut results,
            "blocks-matrix-bijection",
            "matrix blocks are defined for permutations only",
        );
    }

    // ----- Translation modules -------------------------------------------

    run(&mut results, "transmod-whecke-dimensions", || {
        let mut verified = 0usize;
        let mut oversize = 0usize;
        for w in group.elements() {
            let count = whecke_dim_count(group, w)?;
            match whecke_dim_closure(group, w, options.module_dim_bound) {
                Ok(dim) => {
                    if dim != count {
                        return Err(violation(format!(
                            "span dimension {dim} but pair count {count} at {}",
                            group.format_elem(w)
                        )));
                    }
                    verified += 1;
                }
                Err(Error::Resource { .. }) => oversize += 1,
                Err(e) => return Err(e),
            }
        }
        if verified == 0 {
            return Err(Error::Resource {
                context: "every module exceeds the dimension bound".to_string(),
                partial: oversize,
                budget: options.module_dim_bound,
            });
        }
        Ok(format!("{verified} modules verified, {oversize} over the bound"))
    });

    run(&mut results, "transmod-s-involution", || {
        for w in group.elements() {
            let module = translation_module(group, w);
            let identity = QMat::identity(module.dim());
            for (pi, pibar) in module.pi_q().iter().zip(module.pibar_q().iter()) {
                let s = pi.add(pibar).sub(&identity);
                if s.mul(&s) != identity {
                    return Err(violation(format!(
                        "π + π̄ − 1 is not an involution on T_{}",
                        group.format_elem(w)
                    )));
                }
            }
        }
        Ok(format!("{} matrices", n * group.rank()))
    });

    run(&mut results, "transmod-p-stability", || {
        let mut pairs = 0usize;
        for w in group.elements() {
            let module = translation_module(group, w);
            let blocks = reduced_left_blocks(group, w);
            for j in group.subsets() {
                if !is_left_reduced(group, w, j) {
                    continue;
                }
                pairs += 1;
                let stable = p_submodule(&module, j).is_stable();
                if stable != blocks.contains(&j) {
                    return Err(violation(format!(
                        "P_{} of {} is {}",
                        subset_text(j),
                        group.format_elem(w),
                        if stable { "stable but not a block" } else { "a block but unstable" }
                    )));
                }
            }
        }
        Ok(format!("{pairs} left-reduced (w, J) pairs"))
    });

    run(&mut results, "transmod-simple-dims", || {
        for w in group.elements() {
            let dims = simple_dims(group, w)?;
            let interval = group.weak_interval(w, Side::Right).len();
            let total: usize = dims.classes().iter().map(|(_, class)| class.len()).sum();
            if total != interval {
                return Err(violation(format!(
                    "codescent classes of {} cover {total} of {interval} elements",
                    group.format_elem(w)
                )));
            }
            let keys: BTreeSet<Subset> = dims.classes().iter().map(|&(j, _)| j).collect();
            let blocks: BTreeSet<Subset> = reduced_left_blocks(group, w).into_iter().collect();
            if keys != blocks {
                return Err(violation(format!(
                    "codescent classes of {} are not keyed by the reduced left blocks",
                    group.format_elem(w)
                )));
            }
        }
        Ok(format!("{n} elements, class counting and Möbius agree inside"))
    });

    match &monoid {
        None => skip(&mut results, "transmod-trans-classification", closure_note),
        Some(m) if m.size() > PAIRWISE_CLOSURE_BOUND => skip(
            &mut results,
            "transmod-trans-classification",
            &format!("closure size {} over pairwise bound", m.size()),
        ),
        Some(m) => run(&mut results, "transmod-trans-classification", || {
            let mut modules = Vec::new();
            for f in 0..m.size() as u32 {
                let module = trans_of(m.element(f), m)?;
                let signature = (module.dim(), module.pi_q(), module.pibar_q());
                modules.push((analyze(m.element(f)).type_elem, signature));
            }
            for (ta, sa) in &modules {
                for (tb, sb) in &modules {
                    if (ta == tb) != (sa == sb) {
                        return Err(violation(format!(
                            "translation modules of types {} and {} do not classify by type",
                            group.format_elem(*ta),
                            group.format_elem(*tb)
                        )));
                    }
                }
            }
            Ok(format!("{} modules classified by type", modules.len()))
        }),
    }

    // ----- Borel submonoid ------------------------------------------------

    let mut borel: Option<BorelClosure> = None;
    run(&mut results, "borel-closure", || {
        let b = borel_closure(group, closure_options)?;
        let detail = format!(
            "{} elements, order preservation and contraction verified inside",
            b.size()
        );
        borel = Some(b);
        Ok(detail)
    });
    let borel_note = "needs the Borel closure";

    match (&borel, &monoid) {
        (Some(b), Some(m)) => run(&mut results, "borel-direct-vs-filtered", || {
            if !agrees_with_filtered(b, m) {
                return Err(violation(
                    "closure over the e_w differs from filtering the full monoid".to_string(),
                ));
            }
            Ok(format!("{} identity-fixing elements", b.size()))
        }),
        _ => skip(
            &mut results,
            "borel-direct-vs-filtered",
            "needs both the Borel and the full closure",
        ),
    }

    match &borel {
        None => skip(&mut results, "borel-jorder", borel_note),
        Some(b) => run(&mut results, "borel-jorder", || {
            let size = b.size();
            let mut leq = vec![false; size * size];
            for f in 0..size {
                for g in 0..size {
                    leq[f * size + g] =
                        jorder_leq(b.monoid().element(f as u32), b.monoid().element(g as u32))?;
                }
            }
            for f in 0..size {
                if !leq[f * size + f] {
                    return Err(violation(format!("jorder is not reflexive at {f}")));
                }
                for g in 0..size {
                    if f != g && leq[f * size + g] && leq[g * size + f] {
                        return Err(violation(format!("jorder is not antisymmetric at ({f}, {g})")));
                    }
                    for h in 0..size {
                        if leq[f * size + g] && leq[g * size + h] && !leq[f * size + h] {
                            return Err(violation(format!(
                                "jorder is not transitive at ({f}, {g}, {h})"
                            )));
                        }
                    }
                }
            }
            for f in 0..size as u32 {
                for g in 0..size as u32 {
                    let fg = b.monoid().product(f, g) as usize;
                    if !leq[fg * size + f as usize] || !leq[fg * size + g as usize] {
                        return Err(violation(format!(
                            "product of ({f}, {g}) is not below both factors"
                        )));
                    }
                }
            }
            Ok(format!("{size} elements, order laws and fg ≤ f, g"))
        }),
    }

    match &borel {
        None => skip(&mut results, "borel-fixers", borel_note),
        Some(b) => run(&mut results, "borel-fixers", || {
            for i in 0..b.size() as u32 {
                let pair = fixes(b, i)?;
                let left = b.e_index(pair.lfix);
                let right = b.e_index(pair.rfix);
                if b.monoid().product(left, i) != i || b.monoid().product(i, right) != i {
                    return Err(violation(format!("reported fixers do not fix element {i}")));
                }
            }
            Ok(format!("{} elements, minima unique and up-closed inside", b.size()))
        }),
    }

    match &borel {
        None => skip(&mut results, "borel-minimal-generators", borel_note),
        Some(b) => run(&mut results, "borel-minimal-generators", || {
            if !minimal_generators_match_prediction(b) {
                return Err(violation(
                    "irreducible elements differ from the Grassmannian prediction".to_string(),
                ));
            }
            let generators = minimal_generators(b);
            Ok(format!(
                "{} generators with the identity, {} without",
                generators.with_identity, generators.without_identity
            ))
        }),
    }

    match &borel {
        None => skip(&mut results, "borel-cartan", borel_note),
        Some(b) => run(&mut results, "borel-cartan", || {
            let table = cartan_matrix(b)?;
            if table.total() != b.size() as i64 {
                return Err(violation(format!(
                    "Cartan entries total {} but the monoid has {} elements",
                    table.total(),
                    b.size()
                )));
            }
            Ok(format!("entries total {}", table.total()))
        }),
    }

    run(&mut results, "borel-idempotent-limits", || {
        for u in group.elements() {
            for v in group.elements() {
                let relation = idempotent_pair_relation(group, u, v)?;
                if !relation.limit_is_meet {
                    return Err(violation(format!(
                        "(e_u e_v)^∞ is not e of the left-order meet at ({}, {})",
                        group.format_elem(u),
                        group.format_elem(v)
                    )));
                }
                if relation.absorbs_right != relation.absorbs_left
                    || relation.absorbs_right != relation.u_below_v
                {
                    return Err(violation(format!(
                        "absorption does not match left order at ({}, {})",
                        group.format_elem(u),
                        group.format_elem(v)
                    )));
                }
            }
        }
        Ok(format!("{} idempotent pairs", n * n))
    });

    // ----- Composition multiplicities --------------------------------------

    run(&mut results, "rep-fixed-point-criterion", || {
        fixed_point_criterion(group)?;
        Ok(format!("{} (v, u) pairs", n * n))
    });

    run(&mut results, "rep-decomposition", || {
        let table = decomposition_matrix(group)?;
        check_column_dims(group, &table)?;
        let columns: HashSet<Vec<i64>> = (0..n)
            .map(|c| (0..n).map(|r| table.get(r, c)).collect())
            .collect();
        if columns.len() != n {
            return Err(violation("simple modules share a multiplicity vector".to_string()));
        }
        Ok(format!(
            "{n} columns: uni-triangular, 0/1, column sums match, all distinct"
        ))
    });

    run(&mut results, "rep-subquotient-simples", || {
        let mut pairs = 0usize;
        let mut oversize = 0usize;
        for w in group.elements() {
            let module = translation_module(group, w);
            if module.dim() > SUBQUOTIENT_DIM_BOUND {
                oversize += 1;
                continue;
            }
            for j in reduced_left_blocks(group, w) {
                pairs += 1;
                let factor = subquotient_multiplicities(&module, j)?;
                let rep = group.parabolic_decompose(w, j, Side::Left).representative;
                let simple = crate::transmod::simple_module_action(group, rep)?;
                if factor != m1_of_simple(group, &simple)? {
                    return Err(violation(format!(
                        "filtration factor of T_{} at {} differs from the simple module of {}",
                        group.format_elem(w),
                        subset_text(j),
                        group.format_elem(rep)
                    )));
                }
            }
        }
        Ok(format!("{pairs} (w, J) factors matched, {oversize} modules over the bound"))
    });

    run(&mut results, "rep-filtration-additivity", || {
        let mut modules = 0usize;
        let mut oversize = 0usize;
        for w in group.elements() {
            let module = translation_module(group, w);
            if module.dim() > SUBQUOTIENT_DIM_BOUND {
                oversize += 1;
                continue;
            }
            modules += 1;
            let whole = m1_of_module(&module)?;
            let mut sum = vec![0i64; n];
            for j in reduced_left_blocks(group, w) {
                for (acc, x) in sum.iter_mut().zip(subquotient_multiplicities(&module, j)?) {
                    *acc += x;
                }
            }
            if sum != whole {
                return Err(violation(format!(
                    "filtration factors of T_{} do not add up",
                    group.format_elem(w)
                )));
            }
        }
        Ok(format!("{modules} modules, {oversize} over the bound"))
    });

    results
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::create_group;

    #[test]
    fn rank_one_registry_is_all_green() {
        let group = create_group("A1").unwrap();
        let results = run_all(&group, &CheckOptions::default());
        for r in &results {
            assert_ne!(r.status, CheckStatus::Failed, "{}: {}", r.name, r.detail);
        }
        assert!(count(&results, CheckStatus::Passed) > 25);
    }

    #[test]
    fn dihedral_registry_skips_only_type_a_checks() {
        let group = create_group("I2(4)").unwrap();
        let results = run_all(&group, &CheckOptions::default());
        for r in &results {
            assert_ne!(r.status, CheckStatus::Failed, "{}: {}", r.name, r.detail);
        }
        let skipped: Vec<&str> = results
            .iter()
            .filter(|r| r.status == CheckStatus::Skipped)
            .map(|r| r.name)
            .collect();
        assert_eq!(skipped, ["blocks-matrix-bijection"]);
    }

    #[test]
    fn tiny_budget_degrades_to_skips() {
        let group = create_group("A2").unwrap();
        let options = CheckOptions {
            closure_budget: 5,
            ..CheckOptions::default()
        };
        let results = run_all(&group, &options);
        for r in &results {
            assert_ne!(r.status, CheckStatus::Failed, "{}: {}", r.name, r.detail);
        }
        let by_name: std::collections::HashMap<&str, CheckStatus> =
            results.iter().map(|r| (r.name, r.status)).collect();
        assert_eq!(by_name["hecke-monoid-closure"], CheckStatus::Skipped);
        assert_eq!(by_name["hecke-left-order-preservation"], CheckStatus::Skipped);
        assert_eq!(by_name["borel-closure"], CheckStatus::Skipped);
        // Closure-free checks still run.
        assert_eq!(by_name["coxeter-group-laws"], CheckStatus::Passed);
        assert_eq!(by_name["rep-decomposition"], CheckStatus::Passed);
    }

    #[test]
    fn report_renders_one_line_per_check() {
        let group = create_group("A1").unwrap();
        let results = run_all(&group, &CheckOptions::default());
        let report = text_report(&results);
        assert_eq!(report.lines().count(), results.len());
        assert!(report.contains("coxeter-group-laws"));
    }
}
