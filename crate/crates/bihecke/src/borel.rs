//! The Borel submonoid of the biHecke monoid.
//!
//! `M1` is the set of biHecke monoid elements fixing the group identity.  It
//! is generated by the idempotents `e_w`, carries a J-trivial partial order
//! (the pointwise Bruhat comparison), and each element has a unique minimal
//! left fixer and right fixer among the `e_u`.  Counting elements by their
//! `(lfix, rfix)` pair yields the Cartan matrix of `M1`.

use std::sync::Arc;

use crate::coxeter::{CoxeterGroup, Elem, Order};
use crate::error::{Error, Result};
use crate::heckeops::{
    closure, e_idempotent, omega, ClosureOptions, FunctionTable, MonoidClosure,
};
use crate::reptheory::MultiplicityTable;

/// The fully enumerated Borel submonoid, generated by `{e_w : w in W}`.
pub struct BorelClosure {
    monoid: MonoidClosure,
    /// Monoid index of `e_w`, per group element.
    e_index: Vec<u32>,
}

impl BorelClosure {
    pub fn group(&self) -> &Arc<CoxeterGroup> {
        self.monoid.group()
    }

    pub fn monoid(&self) -> &MonoidClosure {
        &self.monoid
    }

    pub fn size(&self) -> usize {
        self.monoid.size()
    }

    /// Monoid index of the generator `e_w`.
    pub fn e_index(&self, w: Elem) -> u32 {
        self.e_index[w as usize]
    }

    pub fn element(&self, i: u32) -> &FunctionTable {
        self.monoid.element(i)
    }

    /// Sorted image sequences of all elements, for comparing enumeration
    /// routes.
    pub fn sorted_images(&self) -> Vec<Vec<Elem>> {
        let mut images: Vec<Vec<Elem>> = self
            .monoid
            .elements()
            .iter()
            .map(|t| t.images().to_vec())
            .collect();
        images.sort_unstable();
        images
    }
}

/// The generator list `e_w` for all `w`, in canonical element order.
pub fn borel_generators(group: &Arc<CoxeterGroup>) -> Vec<(String, FunctionTable)> {
    group
        .elements()
        .map(|w| (format!("e_{}", group.format_elem(w)), e_idempotent(group, w)))
        .collect()
}

/// Enumerates the Borel submonoid directly from its idempotent generators
/// and verifies the membership invariants: every element fixes the group
/// identity, preserves Bruhat order, and is contracting for Bruhat order.
pub fn borel_closure(group: &Arc<CoxeterGroup>, options: ClosureOptions) -> Result<BorelClosure> {
    let monoid = closure(&borel_generators(group), options)?;
    for i in 0..monoid.size() as u32 {
        let f = monoid.element(i);
        if !f.fixes_identity() {
            return Err(Error::InvariantViolation(format!(
                "Borel closure element {i} does not fix the identity"
            )));
        }
        for w in group.elements() {
            if !group.leq(Order::Bruhat, f.apply(w), w) {
                return Err(Error::InvariantViolation(format!(
                    "Borel closure element {i} is not contracting at {}",
                    group.format_elem(w)
                )));
            }
            for v in group.elements() {
                if group.leq(Order::Bruhat, v, w)
                    && !group.leq(Order::Bruhat, f.apply(v), f.apply(w))
                {
                    return Err(Error::InvariantViolation(format!(
                        "Borel closure element {i} does not preserve Bruhat order \
                         on ({}, {})",
                        group.format_elem(v),
                        group.format_elem(w)
                    )));
                }
            }
        }
    }
    let e_index = group
        .elements()
        .map(|w| {
            monoid
                .index_of(&e_idempotent(group, w))
                .expect("generators are members")
        })
        .collect();
    Ok(BorelClosure { monoid, e_index })
}

/// Indices of the elements of a full biHecke closure that fix the identity —
/// the filtered route to the Borel submonoid.
pub fn borel_from_full(full: &MonoidClosure) -> Vec<u32> {
    (0..full.size() as u32).filter(|&i| full.fixes_one(i)).collect()
}

/// Whether the directly generated Borel closure and the fixing-1 filter of a
/// full biHecke closure enumerate the same set of functions.
pub fn agrees_with_filtered(borel: &BorelClosure, full: &MonoidClosure) -> bool {
    let mut filtered: Vec<Vec<Elem>> = borel_from_full(full)
        .into_iter()
        .map(|i| full.element(i).images().to_vec())
        .collect();
    filtered.sort_unstable();
    filtered == borel.sorted_images()
}

/// The unique minimal generating set of the Borel submonoid, by brute force:
/// an element is irreducible when it is not a product of two elements both
/// different from it.  The identity is irreducible under this definition
/// (the monoid has no non-trivial units), so it is always a member; the
/// reported counts cover both the convention that includes it and the one
/// that does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalGenerators {
    /// Sorted monoid indices of the irreducible elements.
    pub indices: Vec<u32>,
    /// Count including the identity element.
    pub with_identity: usize,
    /// Count excluding the identity element.
    pub without_identity: usize,
}

pub fn minimal_generators(borel: &BorelClosure) -> MinimalGenerators {
    let n = borel.size() as u32;
    let mut reducible = vec![false; n as usize];
    for y in 0..n {
        for z in 0..n {
            let x = borel.monoid.product(y, z);
            if x != y && x != z {
                reducible[x as usize] = true;
            }
        }
    }
    let indices: Vec<u32> = (0..n).filter(|&x| !reducible[x as usize]).collect();
    let with_identity = indices.len();
    MinimalGenerators {
        indices,
        with_identity,
        without_identity: with_identity - 1,
    }
}

/// Group elements `w` whose associated `e_w` the structure theory predicts as
/// minimal generators: those where `w0 w^{-1}` has at most one right descent.
pub fn grassmannian_generator_elements(group: &Arc<CoxeterGroup>) -> Vec<Elem> {
    group
        .elements()
        .filter(|&w| {
            let x = group.multiply(group.w0(), group.inverse(w));
            group.right_descents(x).count_ones() <= 1
        })
        .collect()
}

/// Whether the brute-force minimal generating set is exactly
/// `{e_w : w0 w^{-1} has at most one right descent}`.
pub fn minimal_generators_match_prediction(borel: &BorelClosure) -> bool {
    let predicted: std::collections::BTreeSet<u32> = grassmannian_generator_elements(borel.group())
        .into_iter()
        .map(|w| borel.e_index(w))
        .collect();
    let actual: std::collections::BTreeSet<u32> =
        minimal_generators(borel).indices.into_iter().collect();
    predicted == actual
}

/// The J-trivial partial order on the Borel submonoid: `f <= g` when
/// `w.f <=_B w.g` for every `w`.  Both arguments must fix the identity.
pub fn jorder_leq(f: &FunctionTable, g: &FunctionTable) -> Result<bool> {
    if !f.fixes_identity() || !g.fixes_identity() {
        return Err(Error::Precondition(
            "jorder_leq compares Borel submonoid elements only".to_string(),
        ));
    }
    let group = f.group();
    Ok(group
        .elements()
        .all(|w| group.leq(Order::Bruhat, f.apply(w), g.apply(w))))
}

/// An element of the Borel submonoid together with its minimal left and
/// right idempotent fixers.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FixPair {
    /// Monoid index of the element.
    pub element: u32,
    /// The unique left-order-minimal `u` with `e_u . x = x`.
    pub lfix: Elem,
    /// The unique left-order-minimal `u` with `x . e_u = x`.
    pub rfix: Elem,
}

fn minimal_fixer(group: &Arc<CoxeterGroup>, fixers: &[Elem], side: &str, i: u32) -> Result<Elem> {
    // Up-closure in left order is a prerequisite for the minimum to be
    // meaningful; verify it before looking for the minimum.
    for &u in fixers {
        for v in group.elements() {
            if group.leq(Order::LeftWeak, u, v) && !fixers.contains(&v) {
                return Err(Error::InvariantViolation(format!(
                    "{side} fixer set of element {i} is not up-closed: contains {} \
                     but not {}",
                    group.format_elem(u),
                    group.format_elem(v)
                )));
            }
        }
    }
    let minima: Vec<Elem> = fixers
        .iter()
        .copied()
        .filter(|&u| {
            !fixers
                .iter()
                .any(|&v| v != u && group.leq(Order::LeftWeak, v, u))
        })
        .collect();
    match minima.as_slice() {
        [unique] => Ok(*unique),
        _ => Err(Error::InvariantViolation(format!(
            "{side} fixer set of element {i} has {} minimal elements",
            minima.len()
        ))),
    }
}

/// Minimal left and right idempotent fixers of the element at monoid index
/// `i`.  Each fixer set is verified to be up-closed in left weak order, and
/// each minimum to be unique.
pub fn fixes(borel: &BorelClosure, i: u32) -> Result<FixPair> {
    let group = borel.group();
    let x = i;
    let mut left = Vec::new();
    let mut right = Vec::new();
    for u in group.elements() {
        let e = borel.e_index(u);
        if borel.monoid.product(e, x) == x {
            left.push(u);
        }
        if borel.monoid.product(x, e) == x {
            right.push(u);
        }
    }
    Ok(FixPair {
        element: i,
        lfix: minimal_fixer(group, &left, "left", i)?,
        rfix: minimal_fixer(group, &right, "right", i)?,
    })
}

/// The Cartan matrix of the Borel submonoid: entry `(u, v)` counts the
/// elements with `lfix = u` and `rfix = v`.  The entries always total the
/// monoid size, since every element contributes to exactly one cell.
pub fn cartan_matrix(borel: &BorelClosure) -> Result<MultiplicityTable> {
    let group = borel.group();
    let n = group.order();
    let mut entries = vec![0i64; n * n];
    for i in 0..borel.size() as u32 {
        let pair = fixes(borel, i)?;
        entries[pair.lfix as usize * n + pair.rfix as usize] += 1;
    }
    let labels: Vec<String> = group.elements().map(|e| group.format_elem(e)).collect();
    let table = MultiplicityTable::new(labels.clone(), labels, entries)?;
    if table.total() != borel.size() as i64 {
        return Err(Error::InvariantViolation(format!(
            "Cartan entries total {} but the monoid has {} elements",
            table.total(),
            borel.size()
        )));
    }
    Ok(table)
}

/// How a pair of idempotents `e_u`, `e_v` multiply, and where the iterated
/// product stabilizes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairRelation {
    pub u: Elem,
    pub v: Elem,
    /// `e_u e_v = e_u`.
    pub absorbs_right: bool,
    /// `e_v e_u = e_u`.
    pub absorbs_left: bool,
    /// `u <=_L v`.
    pub u_below_v: bool,
    /// `v <=_L u`.
    pub v_below_u: bool,
    /// The `x` with `(e_u e_v)^infinity = e_x`.
    pub limit: Elem,
    /// `limit` is the left-order meet of `u` and `v`.
    pub limit_is_meet: bool,
    /// `limit` is the left-order join of `u` and `v`.
    pub limit_is_join: bool,
}

/// Evaluates the products of `e_u` and `e_v`, locates the idempotent limit
/// `(e_u e_v)^infinity = e_x`, and reports how `x` relates to the left-order
/// meet and join of `u` and `v`.  Errors if the limit is not of the form
/// `e_x`.
pub fn idempotent_pair_relation(
    group: &Arc<CoxeterGroup>,
    u: Elem,
    v: Elem,
) -> Result<PairRelation> {
    let eu = e_idempotent(group, u);
    let ev = e_idempotent(group, v);
    let uv = eu.compose(&ev)?;
    let vu = ev.compose(&eu)?;
    let stable = omega(&uv)?;
    let limit = group
        .elements()
        .find(|&x| e_idempotent(group, x).images() == stable.images())
        .ok_or_else(|| {
            Error::InvariantViolation(format!(
                "(e_{} e_{})^infinity is not of the form e_x",
                group.format_elem(u),
                group.format_elem(v)
            ))
        })?;
    let poset = group.order_poset(Order::LeftWeak);
    let meet = poset.meet(u as usize, v as usize);
    let join = poset.join(u as usize, v as usize);
    Ok(PairRelation {
        u,
        v,
        absorbs_right: uv.images() == eu.images(),
        absorbs_left: vu.images() == eu.images(),
        u_below_v: group.leq(Order::LeftWeak, u, v),
        v_below_u: group.leq(Order::LeftWeak, v, u),
        limit,
        limit_is_meet: meet == Some(limit as usize),
        limit_is_join: join == Some(limit as usize),
    })
}
