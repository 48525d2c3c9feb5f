//! Blocks of a Coxeter group element, cutting points, the cutting poset with
//! its closed-form Möbius function, codescent sets, and the type-A
//! specialization to permutation-matrix blocks.
//!
//! A subset `K` of the generator index set is a *right block* of `w` when
//! there is a `J` with `w W_K = W_J w`; the *cutting point* `w^K` is the
//! minimal coset representative.  The block test used everywhere is the
//! conjugation criterion: `J := { j : w^{-1} s_j w ∈ W_K }` always generates a
//! subgroup of `w W_K w^{-1}`, and `K` is a block exactly when `|W_J| = |W_K|`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::coxeter::{subset_labels, CoxeterGroup, Elem, Side, Subset};
use crate::error::{Error, Result};
use crate::poset::{hasse_dot, ExplicitPoset};

/// One tested subset `K` for a fixed `w`, with its partner and flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BlockRecord {
    pub w: Elem,
    pub k: Subset,
    pub j: Subset,
    pub cutting_point: Elem,
    /// `K ∉ {∅, I}`.
    pub proper: bool,
    /// `w^K ≠ w`.
    pub nontrivial: bool,
    /// No proper subset of `K` has the same cutting point.
    pub reduced: bool,
}

/// `J = { j : w^{-1} s_j w ∈ W_K }` if `K` is a right block of `w`, else None.
pub fn right_block_partner(group: &CoxeterGroup, w: Elem, k: Subset) -> Option<Subset> {
    let winv = group.inverse(w);
    let mut j: Subset = 0;
    for label in 1..=group.rank() as u32 {
        let conj = group.multiply(group.multiply(winv, group.generator(label).expect("label")), w);
        if group.in_parabolic(conj, k) {
            j |= 1 << (label - 1);
        }
    }
    // W_J is always a subgroup of w W_K w^{-1}; equality iff the sizes match.
    (group.parabolic_subgroup(j).len() == group.parabolic_subgroup(k).len()).then_some(j)
}

/// `K = { k : w s_k w^{-1} ∈ W_J }` if `J` is a left block of `w`, else None.
pub fn left_block_partner(group: &CoxeterGroup, w: Elem, j: Subset) -> Option<Subset> {
    let winv = group.inverse(w);
    let mut k: Subset = 0;
    for label in 1..=group.rank() as u32 {
        let conj = group.multiply(group.multiply(w, group.generator(label).expect("label")), winv);
        if group.in_parabolic(conj, j) {
            k |= 1 << (label - 1);
        }
    }
    (group.parabolic_subgroup(k).len() == group.parabolic_subgroup(j).len()).then_some(k)
}

pub fn is_right_block(group: &CoxeterGroup, w: Elem, k: Subset) -> bool {
    right_block_partner(group, w, k).is_some()
}

pub fn is_left_block(group: &CoxeterGroup, w: Elem, j: Subset) -> bool {
    left_block_partner(group, w, j).is_some()
}

/// The minimal coset representative `w^K`, defined for every subset `K`.
fn coset_min(group: &CoxeterGroup, w: Elem, k: Subset) -> Elem {
    group.parabolic_decompose(w, k, Side::Right).representative
}

/// Every right block of `w`, in increasing bitmask order of `K`.
pub fn all_blocks(group: &CoxeterGroup, w: Elem) -> Vec<BlockRecord> {
    let full = group.full_subset();
    group
        .subsets()
        .filter_map(|k| {
            let j = right_block_partner(group, w, k)?;
            let cutting_point = coset_min(group, w, k);
            let reduced = proper_submasks(k).all(|sub| coset_min(group, w, sub) != cutting_point);
            Some(BlockRecord {
                w,
                k,
                j,
                cutting_point,
                proper: k != 0 && k != full,
                nontrivial: cutting_point != w,
                reduced,
            })
        })
        .collect()
}

/// Proper submasks of `mask` (excluding `mask` itself, including 0).
fn proper_submasks(mask: Subset) -> impl Iterator<Item = Subset> {
    let mut current = Some(mask);
    std::iter::from_fn(move || {
        let value = current?;
        current = if value == 0 {
            None
        } else {
            Some((value - 1) & mask)
        };
        Some(value)
    })
    .skip(1)
}

/// Cutting point `w^K` of a right block `K`.
pub fn cutting_point(group: &CoxeterGroup, w: Elem, k: Subset) -> Result<Elem> {
    if !is_right_block(group, w, k) {
        return Err(Error::Domain(format!(
            "{} is not a right block of {}",
            crate::coxeter::subset_text(k),
            group.format_elem(w)
        )));
    }
    Ok(coset_min(group, w, k))
}

/// Reduced left blocks of `w` ("reduced" on the left side: no proper subset
/// of `J` yields the same cutting point `^Jw`).
pub fn reduced_left_blocks(group: &CoxeterGroup, w: Elem) -> Vec<Subset> {
    group
        .subsets()
        .filter(|&j| {
            if !is_left_block(group, w, j) {
                return false;
            }
            let cp = group.parabolic_decompose(w, j, Side::Left).representative;
            proper_submasks(j)
                .all(|sub| group.parabolic_decompose(w, sub, Side::Left).representative != cp)
        })
        .collect()
}

/// The w-codescent sets of `u`: the unique maximal reduced right block `K`
/// of `w` with `u <=_R w^K`, together with its left partner `J`.
pub fn codescents(group: &CoxeterGroup, w: Elem, u: Elem) -> Result<(Subset, Subset)> {
    if !group.leq(crate::coxeter::Order::RightWeak, u, w) {
        return Err(Error::Domain(format!(
            "{} is not below {} in right order",
            group.format_elem(u),
            group.format_elem(w)
        )));
    }
    let candidates: Vec<BlockRecord> = all_blocks(group, w)
        .into_iter()
        .filter(|b| b.reduced && group.leq(crate::coxeter::Order::RightWeak, u, b.cutting_point))
        .collect();
    let union = candidates.iter().fold(0, |acc, b| acc | b.k);
    match candidates.iter().find(|b| b.k == union) {
        Some(top) => Ok((top.k, top.j)),
        None => Err(Error::InvariantViolation(format!(
            "reduced blocks dominating {} have no maximum",
            group.format_elem(u)
        ))),
    }
}

/// Inclusion-minimal nontrivial blocks of `w`.
pub fn minimal_nontrivial_blocks(group: &CoxeterGroup, w: Elem) -> Vec<Subset> {
    let nontrivial: Vec<Subset> = all_blocks(group, w)
        .into_iter()
        .filter(|b| b.nontrivial)
        .map(|b| b.k)
        .collect();
    nontrivial
        .iter()
        .copied()
        .filter(|&k| !nontrivial.iter().any(|&k2| k2 != k && k2 & k == k2))
        .collect()
}

/// One member of the family `L_w`: the union of a subset of the minimal
/// nontrivial blocks, its cutting point, and the Boolean-lattice sign.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LwEntry {
    pub union: Subset,
    pub cutting_point: Elem,
    /// `(-1)^(number of minimal blocks in the union)`.
    pub sign: i64,
}

/// The family `L_w` indexing the nonzero Möbius values `μ(·, w)` of the
/// cutting poset.  Errors if the family is not free (two distinct subsets of
/// the minimal nontrivial blocks reaching the same cutting point).
pub fn lw_family(group: &CoxeterGroup, w: Elem) -> Result<Vec<LwEntry>> {
    let minimal = minimal_nontrivial_blocks(group, w);
    let mut entries: Vec<LwEntry> = Vec::with_capacity(1 << minimal.len());
    let mut seen: HashMap<Elem, Subset> = HashMap::new();
    for choice in 0u32..(1 << minimal.len()) {
        let union = minimal
            .iter()
            .enumerate()
            .filter(|(pos, _)| choice & (1 << pos) != 0)
            .fold(0, |acc, (_, &k)| acc | k);
        let cp = coset_min(group, w, union);
        if let Some(&other) = seen.get(&cp) {
            if other != union {
                return Err(Error::InvariantViolation(format!(
                    "L_{} is not free: unions {} and {} share cutting point {}",
                    group.format_elem(w),
                    crate::coxeter::subset_text(other),
                    crate::coxeter::subset_text(union),
                    group.format_elem(cp)
                )));
            }
            continue;
        }
        seen.insert(cp, union);
        entries.push(LwEntry {
            union,
            cutting_point: cp,
            sign: if choice.count_ones() % 2 == 0 { 1 } else { -1 },
        });
    }
    Ok(entries)
}

/// Closed-form Möbius column `μ(·, w)` of the cutting poset: `±1` on `L_w`,
/// `0` elsewhere.
pub fn cutting_mobius_column(group: &CoxeterGroup, w: Elem) -> Result<Vec<i64>> {
    let mut column = vec![0i64; group.order()];
    for entry in lw_family(group, w)? {
        column[entry.cutting_point as usize] = entry.sign;
    }
    Ok(column)
}

/// The cutting poset `(W, ⊑)`: `v ⊑ w` when `v` is a cutting point of `w`.
/// Construction validates that the relation is a poset and that the
/// closed-form Möbius function matches the brute-force oracle on every pair.
pub struct CuttingPoset {
    group: Arc<CoxeterGroup>,
    poset: ExplicitPoset,
    covers: Vec<(Elem, Elem)>,
    mobius: Vec<i64>,
    lw: Vec<Vec<LwEntry>>,
}

impl CuttingPoset {
    pub fn new(group: &Arc<CoxeterGroup>) -> Result<CuttingPoset> {
        let n = group.order();
        let mut leq = vec![false; n * n];
        for w in group.elements() {
            for block in all_blocks(group, w) {
                leq[block.cutting_point as usize * n + w as usize] = true;
            }
        }
        let poset = ExplicitPoset::new(n, leq)?;
        let covers: Vec<(Elem, Elem)> = poset
            .covers()
            .into_iter()
            .map(|(u, v)| (u as Elem, v as Elem))
            .collect();

        let mut mobius = vec![0i64; n * n];
        let mut lw = Vec::with_capacity(n);
        for w in group.elements() {
            let family = lw_family(group, w)?;
            for entry in &family {
                mobius[entry.cutting_point as usize * n + w as usize] = entry.sign;
            }
            lw.push(family);
        }
        // Closed form against the generic recursive oracle, every pair.
        for w in 0..n {
            for u in 0..n {
                if poset.leq(u, w) {
                    let oracle = poset.mobius(u, w)?;
                    if oracle != mobius[u * n + w] {
                        return Err(Error::InvariantViolation(format!(
                            "cutting-poset Möbius mismatch at ({}, {}): closed form {}, oracle {}",
                            group.format_elem(u as Elem),
                            group.format_elem(w as Elem),
                            mobius[u * n + w],
                            oracle
                        )));
                    }
                }
            }
        }
        Ok(CuttingPoset {
            group: Arc::clone(group),
            poset,
            covers,
            mobius,
            lw,
        })
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn poset(&self) -> &ExplicitPoset {
        &self.poset
    }

    pub fn leq(&self, v: Elem, w: Elem) -> bool {
        self.poset.leq(v as usize, w as usize)
    }

    pub fn covers(&self) -> &[(Elem, Elem)] {
        &self.covers
    }

    pub fn mobius(&self, v: Elem, w: Elem) -> Result<i64> {
        if !self.leq(v, w) {
            return Err(Error::Domain(format!(
                "{} is not below {} in the cutting poset",
                self.group.format_elem(v),
                self.group.format_elem(w)
            )));
        }
        Ok(self.mobius[v as usize * self.group.order() + w as usize])
    }

    pub fn lw(&self, w: Elem) -> &[LwEntry] {
        &self.lw[w as usize]
    }

    /// Sorted cutting points of `w` (the down-set of `w` under `⊑`).
    pub fn cutting_points(&self, w: Elem) -> Vec<Elem> {
        self.group.elements().filter(|&v| self.leq(v, w)).collect()
    }

    /// Hasse diagram of `⊑` in DOT format.
    pub fn dot(&self) -> String {
        let labels: Vec<String> = self
            .group
            .elements()
            .map(|e| self.group.format_elem(e))
            .collect();
        let covers: Vec<(usize, usize)> = self
            .covers
            .iter()
            .map(|&(u, v)| (u as usize, v as usize))
            .collect();
        let none = vec![false; labels.len()];
        hasse_dot(
            &format!("{} cutting poset", self.group.descriptor()),
            &covers,
            &labels,
            &none,
        )
    }
}

/// Hasse diagram of the interval `[1, w]_R` with the cutting points of `w`
/// drawn circled.
pub fn interval_figure_dot(group: &CoxeterGroup, w: Elem) -> String {
    let interval = group.weak_interval(w, Side::Right);
    let position: HashMap<Elem, usize> = interval
        .iter()
        .enumerate()
        .map(|(pos, &e)| (e, pos))
        .collect();
    let mut covers: Vec<(usize, usize)> = Vec::new();
    for &u in &interval {
        for i in 1..=group.rank() as u32 {
            let v = group.right_mult_gen(u, i);
            if group.length(v) > group.length(u) {
                if let Some(&vp) = position.get(&v) {
                    covers.push((position[&u], vp));
                }
            }
        }
    }
    covers.sort_unstable();
    covers.dedup();
    let cutting: Vec<Elem> = all_blocks(group, w)
        .into_iter()
        .map(|b| b.cutting_point)
        .collect();
    let emphasized: Vec<bool> = interval.iter().map(|e| cutting.contains(e)).collect();
    let labels: Vec<String> = interval.iter().map(|&e| group.format_elem(e)).collect();
    hasse_dot(
        &format!("interval below {}", group.format_elem(w)),
        &covers,
        &labels,
        &emphasized,
    )
}

#[derive(Serialize)]
struct BlockEntry {
    #[serde(rename = "K")]
    k: Vec<u32>,
    #[serde(rename = "J")]
    j: Vec<u32>,
    cutting_point: String,
    reduced: bool,
    trivial: bool,
}

#[derive(Serialize)]
struct BlocksReport {
    w: String,
    blocks: Vec<BlockEntry>,
}

/// JSON block report for one element.
pub fn blocks_report_json(group: &CoxeterGroup, w: Elem) -> String {
    let report = BlocksReport {
        w: group.format_elem(w),
        blocks: all_blocks(group, w)
            .into_iter()
            .map(|b| BlockEntry {
                k: subset_labels(b.k),
                j: subset_labels(b.j),
                cutting_point: group.format_elem(b.cutting_point),
                reduced: b.reduced,
                trivial: !b.nontrivial,
            })
            .collect(),
    };
    serde_json::to_string_pretty(&report).expect("serializable report")
}

/// Checks that left-multiplication restricts to a bijection
/// `[1, w_J]_R × [1, ^Jw]_R -> [1, w]_R`.  Precondition: `J` must be
/// left-reduced with respect to `w` (no proper subset gives the same `^Jw`).
/// By the tiling property the result is equivalent to "`J` is a left block".
pub fn tiling_check(group: &CoxeterGroup, w: Elem, j: Subset) -> Result<bool> {
    let decomposition = group.parabolic_decompose(w, j, Side::Left);
    let rep = decomposition.representative;
    for sub in proper_submasks(j) {
        if group.parabolic_decompose(w, sub, Side::Left).representative == rep {
            return Err(Error::Precondition(format!(
                "{} is not left-reduced for {}: subset {} has the same cutting point",
                crate::coxeter::subset_text(j),
                group.format_elem(w),
                crate::coxeter::subset_text(sub)
            )));
        }
    }
    let left_part = group.weak_interval(decomposition.parabolic_part, Side::Right);
    let right_part = group.weak_interval(rep, Side::Right);
    let interval = group.weak_interval(w, Side::Right);
    if left_part.len() * right_part.len() != interval.len() {
        return Ok(false);
    }
    let mut hit = vec![false; group.order()];
    for &u in &left_part {
        for &v in &right_part {
            let product = group.multiply(u, v);
            if hit[product as usize]
                || !group.leq(crate::coxeter::Order::RightWeak, product, w)
            {
                return Ok(false);
            }
            hit[product as usize] = true;
        }
    }
    Ok(true)
}

/// Report of the meet-semilattice / distributive-interval conjecture on the
/// cutting poset of one group.
#[derive(Debug, Clone, Serialize)]
pub struct ConjectureReport {
    pub group: String,
    pub meet_semilattice: bool,
    pub intervals_distributive: bool,
    pub counterexample: Option<String>,
}

pub fn conjecture_report(cutting: &CuttingPoset) -> ConjectureReport {
    let group = cutting.group();
    let poset = cutting.poset();
    let n = poset.len();
    let mut meet_semilattice = true;
    let mut intervals_distributive = true;
    let mut counterexample = None;

    'meet: for u in 0..n {
        for v in 0..n {
            if poset.meet(u, v).is_none() {
                meet_semilattice = false;
                counterexample = Some(format!(
                    "no meet for ({}, {})",
                    group.format_elem(u as Elem),
                    group.format_elem(v as Elem)
                ));
                break 'meet;
            }
        }
    }

    'dist: for lo in 0..n {
        for hi in 0..n {
            if !poset.leq(lo, hi) {
                continue;
            }
            let members = poset.interval(lo, hi);
            let sub = poset.restrict(&members).expect("interval is a poset");
            let m = sub.len();
            // An interval must be a lattice before distributivity makes sense.
            for x in 0..m {
                for y in 0..m {
                    if sub.meet(x, y).is_none() || sub.join(x, y).is_none() {
                        intervals_distributive = false;
                        counterexample.get_or_insert(format!(
                            "interval [{}, {}] is not a lattice",
                            group.format_elem(lo as Elem),
                            group.format_elem(hi as Elem)
                        ));
                        break 'dist;
                    }
                }
            }
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        let lhs = sub.meet(x, sub.join(y, z).expect("lattice"));
                        let xy = sub.meet(x, y).expect("lattice");
                        let xz = sub.meet(x, z).expect("lattice");
                        let rhs = sub.join(xy, xz);
                        if lhs != rhs {
                            intervals_distributive = false;
                            counterexample.get_or_insert(format!(
                                "distributivity fails in [{}, {}]",
                                group.format_elem(lo as Elem),
                                group.format_elem(hi as Elem)
                            ));
                            break 'dist;
                        }
                    }
                }
            }
        }
    }

    ConjectureReport {
        group: group.descriptor().to_string(),
        meet_semilattice,
        intervals_distributive,
        counterexample,
    }
}

// ---------------------------------------------------------------------------
// Type-A specialization on raw one-line permutations (no group construction,
// so large symmetric groups like S_8 are fine).
// ---------------------------------------------------------------------------

/// A column interval mapped bijectively onto a row interval.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatrixBlock {
    /// 1-based inclusive column range.
    pub col_start: usize,
    pub col_end: usize,
    /// 1-based inclusive row (value) range.
    pub row_start: usize,
    pub row_end: usize,
    /// Values standardized to `1..=len`.
    pub associated: Vec<u8>,
    /// Neither a singleton nor the full interval.
    pub proper: bool,
}

fn validate_one_line(perm: &[u8]) -> Result<()> {
    let n = perm.len();
    let mut seen = vec![false; n + 1];
    for &v in perm {
        if v == 0 || v as usize > n || seen[v as usize] {
            return Err(Error::Domain(format!(
                "{perm:?} is not a permutation in one-line notation"
            )));
        }
        seen[v as usize] = true;
    }
    Ok(())
}

/// All matrix-blocks of a permutation, sorted by column interval; singletons
/// and the full interval are included but flagged non-proper.
pub fn matrix_blocks(perm: &[u8]) -> Result<Vec<MatrixBlock>> {
    validate_one_line(perm)?;
    let n = perm.len();
    let mut out = Vec::new();
    for start in 0..n {
        let mut min = perm[start];
        let mut max = perm[start];
        for end in start..n {
            min = min.min(perm[end]);
            max = max.max(perm[end]);
            if (max - min) as usize == end - start {
                out.push(MatrixBlock {
                    col_start: start + 1,
                    col_end: end + 1,
                    row_start: min as usize,
                    row_end: max as usize,
                    associated: perm[start..=end].iter().map(|&v| v - min + 1).collect(),
                    proper: !(start == end || (start == 0 && end == n - 1)),
                });
            }
        }
    }
    Ok(out)
}

/// A permutation is simple when it has no proper matrix-blocks.
pub fn is_simple_permutation(perm: &[u8]) -> Result<bool> {
    Ok(matrix_blocks(perm)?.iter().all(|b| !b.proper))
}

/// Right-block record computed on a raw permutation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermBlockRecord {
    pub k: Subset,
    pub j: Subset,
    pub cutting_point: Vec<u8>,
    pub nontrivial: bool,
    pub reduced: bool,
}

fn compose_perm(u: &[u8], v: &[u8]) -> Vec<u8> {
    v.iter().map(|&p| u[p as usize - 1]).collect()
}

fn inverse_perm(u: &[u8]) -> Vec<u8> {
    let mut inv = vec![0u8; u.len()];
    for (pos, &val) in u.iter().enumerate() {
        inv[val as usize - 1] = pos as u8 + 1;
    }
    inv
}

/// Component id per point `1..=n` of the Young subgroup `W_K`.
fn young_components(n: usize, k: Subset) -> Vec<usize> {
    let mut comp = vec![0usize; n];
    for x in 1..n {
        comp[x] = if k & (1 << (x - 1)) != 0 {
            comp[x - 1]
        } else {
            comp[x - 1] + 1
        };
    }
    comp
}

fn in_young(perm: &[u8], comp: &[usize]) -> bool {
    perm.iter()
        .enumerate()
        .all(|(pos, &val)| comp[pos] == comp[val as usize - 1])
}

fn young_order(n: usize, k: Subset) -> u64 {
    let comp = young_components(n, k);
    let mut sizes = vec![0u64; n];
    for &c in &comp {
        sizes[c] += 1;
    }
    sizes
        .iter()
        .filter(|&&s| s > 0)
        .map(|&s| (1..=s).product::<u64>())
        .product()
}

/// Sorts the values within every `K`-run of positions: the minimal coset
/// representative of `w W_K`.
fn perm_coset_min(perm: &[u8], k: Subset) -> Vec<u8> {
    let mut out = perm.to_vec();
    let n = perm.len();
    let mut start = 0;
    while start < n {
        let mut end = start;
        while end + 1 < n && k & (1 << end) != 0 {
            end += 1;
        }
        out[start..=end].sort_unstable();
        start = end + 1;
    }
    out
}

/// All right blocks of a raw permutation via the conjugation criterion.
pub fn perm_right_blocks(perm: &[u8]) -> Result<Vec<PermBlockRecord>> {
    validate_one_line(perm)?;
    let n = perm.len();
    let inv = inverse_perm(perm);
    let mut cutting: HashMap<Subset, Vec<u8>> = HashMap::new();
    let mut records = Vec::new();
    for k in 0u32..(1 << (n - 1)) {
        cutting.insert(k, perm_coset_min(perm, k));
    }
    for k in 0u32..(1 << (n - 1)) {
        let comp = young_components(n, k);
        let mut j: Subset = 0;
        for label in 1..n {
            // w^{-1} s_label w.
            let mut s: Vec<u8> = (1..=n as u8).collect();
            s.swap(label - 1, label);
            let conj = compose_perm(&inv, &compose_perm(&s, perm));
            if in_young(&conj, &comp) {
                j |= 1 << (label - 1);
            }
        }
        if young_order(n, j) != young_order(n, k) {
            continue;
        }
        let cp = cutting[&k].clone();
        let reduced = proper_submasks(k).all(|sub| cutting[&sub] != cp);
        records.push(PermBlockRecord {
            k,
            j,
            nontrivial: cp != perm,
            reduced,
            cutting_point: cp,
        });
    }
    Ok(records)
}

/// A permutation is plus-indecomposable ("connected") when no proper prefix
/// of it is a permutation of `1..=k`.
fn plus_indecomposable(perm: &[u8]) -> bool {
    let mut max = 0;
    for (pos, &v) in perm.iter().enumerate().take(perm.len() - 1) {
        max = max.max(v as usize);
        if max == pos + 1 {
            return false;
        }
    }
    true
}

/// Verifies the bijection between right blocks of `perm` and disjoint unions
/// of non-singleton matrix-blocks, including the trivial/identity and
/// reduced/connected correspondences.  Returns `(true, "")` on success or
/// `(false, report)` with the first counterexample found.
pub fn blocks_bijection_check(perm: &[u8]) -> Result<(bool, String)> {
    let blocks: Vec<MatrixBlock> = matrix_blocks(perm)?
        .into_iter()
        .filter(|b| b.col_end > b.col_start)
        .collect();
    let records = perm_right_blocks(perm)?;

    // Enumerate families of pairwise column-disjoint blocks.
    let mut families: Vec<(Subset, bool, bool)> = Vec::new(); // (K, all identity, all connected)
    let mut chosen: Vec<usize> = Vec::new();
    enumerate_families(&blocks, 0, &mut chosen, &mut families);

    let mut from_unions: Vec<(Subset, bool, bool)> = families;
    from_unions.sort_unstable();
    for window in from_unions.windows(2) {
        if window[0].0 == window[1].0 {
            return Ok((
                false,
                format!("two disjoint unions produce the same subset {}", window[0].0),
            ));
        }
    }

    let mut from_blocks: Vec<(Subset, bool, bool)> = records
        .iter()
        .map(|r| (r.k, !r.nontrivial, r.reduced))
        .collect();
    from_blocks.sort_unstable();

    if from_unions.len() != from_blocks.len() {
        return Ok((
            false,
            format!(
                "{} disjoint unions vs {} right blocks",
                from_unions.len(),
                from_blocks.len()
            ),
        ));
    }
    for (union, block) in from_unions.iter().zip(from_blocks.iter()) {
        if union.0 != block.0 {
            return Ok((
                false,
                format!("subset mismatch: union {} vs block {}", union.0, block.0),
            ));
        }
        if union.1 != block.1 {
            return Ok((
                false,
                format!(
                    "K = {}: identity-union flag {} but trivial flag {}",
                    crate::coxeter::subset_text(union.0),
                    union.1,
                    block.1
                ),
            ));
        }
        if union.2 != block.2 {
            return Ok((
                false,
                format!(
                    "K = {}: connected-union flag {} but reduced flag {}",
                    crate::coxeter::subset_text(union.0),
                    union.2,
                    block.2
                ),
            ));
        }
    }
    Ok((true, String::new()))
}

fn enumerate_families(
    blocks: &[MatrixBlock],
    from: usize,
    chosen: &mut Vec<usize>,
    out: &mut Vec<(Subset, bool, bool)>,
) {
    let mut k: Subset = 0;
    let mut all_identity = true;
    let mut all_connected = true;
    for &idx in chosen.iter() {
        let b = &blocks[idx];
        for col in b.col_start..b.col_end {
            k |= 1 << (col - 1);
        }
        if b.associated.iter().enumerate().any(|(p, &v)| v as usize != p + 1) {
            all_identity = false;
        }
        if !plus_indecomposable(&b.associated) {
            all_connected = false;
        }
    }
    out.push((k, all_identity, all_connected));
    for idx in from..blocks.len() {
        let candidate = &blocks[idx];
        let disjoint = chosen.iter().all(|&c| {
            let other = &blocks[c];
            candidate.col_start > other.col_end || candidate.col_end < other.col_start
        });
        if disjoint {
            chosen.push(idx);
            enumerate_families(blocks, idx + 1, chosen, out);
            chosen.pop();
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{create_group, subset_from_labels, Order};

    fn a3() -> Arc<CoxeterGroup> {
        create_group("A3").unwrap()
    }

    fn elem(group: &CoxeterGroup, text: &str) -> Elem {
        group.parse_elem(text).unwrap()
    }

    #[test]
    fn blocks_of_4312() {
        let g = a3();
        let w = elem(&g, "4312");
        let blocks = all_blocks(&g, w);
        let ks: Vec<Subset> = blocks.iter().map(|b| b.k).collect();
        assert_eq!(
            ks,
            vec![
                0,
                subset_from_labels(&[1]),
                subset_from_labels(&[3]),
                subset_from_labels(&[1, 3]),
                subset_from_labels(&[2, 3]),
                subset_from_labels(&[1, 2, 3]),
            ]
        );
        let reduced: Vec<Subset> = blocks.iter().filter(|b| b.reduced).map(|b| b.k).collect();
        assert_eq!(
            reduced,
            vec![
                0,
                subset_from_labels(&[1]),
                subset_from_labels(&[2, 3]),
                subset_from_labels(&[1, 2, 3]),
            ]
        );
        let partners: Vec<Subset> = blocks
            .iter()
            .filter(|b| b.reduced)
            .map(|b| b.j)
            .collect();
        assert_eq!(
            partners,
            vec![
                0,
                subset_from_labels(&[3]),
                subset_from_labels(&[1, 2]),
                subset_from_labels(&[1, 2, 3]),
            ]
        );
        let cutting: Vec<String> = blocks
            .iter()
            .filter(|b| b.reduced)
            .map(|b| g.format_elem(b.cutting_point))
            .collect();
        assert_eq!(cutting, vec!["4312", "3412", "4123", "1234"]);
        let trivial: Vec<Subset> = blocks.iter().filter(|b| !b.nontrivial).map(|b| b.k).collect();
        assert_eq!(trivial, vec![0, subset_from_labels(&[3])]);
        // {2} is not a block at all.
        assert!(!is_right_block(&g, w, subset_from_labels(&[2])));
    }

    #[test]
    fn partner_examples() {
        let g = a3();
        let w = elem(&g, "4312");
        assert_eq!(
            right_block_partner(&g, w, subset_from_labels(&[1])),
            Some(subset_from_labels(&[3]))
        );
        assert_eq!(right_block_partner(&g, w, 0), Some(0));
        for k in g.subsets() {
            assert!(right_block_partner(&g, g.w0(), k).is_some());
        }
    }

    #[test]
    fn left_and_right_partners_are_inverse_on_blocks() {
        let g = a3();
        for w in g.elements() {
            for record in all_blocks(&g, w) {
                assert_eq!(left_block_partner(&g, w, record.j), Some(record.k));
                // Same cutting point from the left side.
                let left_cp = g.parabolic_decompose(w, record.j, Side::Left).representative;
                assert_eq!(left_cp, record.cutting_point);
            }
        }
    }

    #[test]
    fn blocks_closed_under_union_and_intersection() {
        for desc in ["A3", "I2(5)", "I2(6)"] {
            let g = create_group(desc).unwrap();
            for w in g.elements() {
                let ks: Vec<Subset> = all_blocks(&g, w).iter().map(|b| b.k).collect();
                for &k1 in &ks {
                    for &k2 in &ks {
                        assert!(ks.contains(&(k1 | k2)), "{desc}: union fails at {w}");
                        assert!(ks.contains(&(k1 & k2)), "{desc}: intersection fails at {w}");
                    }
                }
            }
        }
    }

    #[test]
    fn identity_blocks_all_trivial() {
        let g = a3();
        let blocks = all_blocks(&g, g.identity());
        assert_eq!(blocks.len(), 8);
        assert!(blocks.iter().all(|b| !b.nontrivial));
        assert!(blocks.iter().all(|b| b.cutting_point == g.identity()));
        let reduced: Vec<Subset> = blocks.iter().filter(|b| b.reduced).map(|b| b.k).collect();
        assert_eq!(reduced, vec![0]);
    }

    #[test]
    fn w0_has_all_subsets_reduced() {
        let g = a3();
        let blocks = all_blocks(&g, g.w0());
        assert_eq!(blocks.len(), 8);
        assert!(blocks.iter().all(|b| b.reduced));
    }

    #[test]
    fn cutting_point_examples() {
        let g = a3();
        let w = elem(&g, "4312");
        assert_eq!(
            g.format_elem(cutting_point(&g, w, subset_from_labels(&[1])).unwrap()),
            "3412"
        );
        assert_eq!(
            g.format_elem(cutting_point(&g, w, subset_from_labels(&[1, 2, 3])).unwrap()),
            "1234"
        );
        assert_eq!(cutting_point(&g, w, 0).unwrap(), w);
        assert!(matches!(
            cutting_point(&g, w, subset_from_labels(&[2])),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn codescent_examples() {
        let g = a3();
        let w = elem(&g, "4312");
        assert_eq!(
            codescents(&g, w, g.identity()).unwrap().0,
            subset_from_labels(&[1, 2, 3])
        );
        assert_eq!(codescents(&g, w, elem(&g, "4132")).unwrap().1, 0);
        assert!(matches!(
            codescents(&g, w, elem(&g, "2134")),
            Err(Error::Domain(_))
        ));
        // At w0 the left codescent set is the complement of the left descents.
        for u in g.elements() {
            let (_, j) = codescents(&g, g.w0(), u).unwrap();
            assert_eq!(j, g.full_subset() & !g.left_descents(u), "u = {u}");
        }
    }

    #[test]
    fn cutting_poset_on_a3() {
        let g = a3();
        let cp = CuttingPoset::new(&g).unwrap();
        let w = elem(&g, "4312");
        let below = cp.cutting_points(w);
        let texts: Vec<String> = below.iter().map(|&v| g.format_elem(v)).collect();
        assert_eq!(texts, vec!["1234", "4123", "3412", "4312"]);
        assert_eq!(cp.mobius(elem(&g, "3412"), w).unwrap(), -1);
        assert_eq!(cp.mobius(elem(&g, "4123"), w).unwrap(), -1);
        assert_eq!(cp.mobius(g.identity(), w).unwrap(), 1);
        assert_eq!(cp.mobius(w, w).unwrap(), 1);
        assert!(matches!(
            cp.mobius(elem(&g, "1243"), w),
            Err(Error::Domain(_))
        ));
        // Identity is the unique minimal element.
        assert_eq!(cp.poset().minimal_elements(), vec![0]);
        // Containment in both weak orders.
        for u in g.elements() {
            for v in g.elements() {
                if cp.leq(u, v) {
                    assert!(g.leq(Order::LeftWeak, u, v));
                    assert!(g.leq(Order::RightWeak, u, v));
                }
            }
        }
        // Lower covers of w are the cutting points of the minimal nontrivial
        // blocks.
        let mut expected: Vec<Elem> = minimal_nontrivial_blocks(&g, w)
            .into_iter()
            .map(|k| coset_min(&g, w, k))
            .collect();
        expected.sort_unstable();
        let mut lower: Vec<Elem> = cp
            .covers()
            .iter()
            .filter(|&&(_, upper)| upper == w)
            .map(|&(lower, _)| lower)
            .collect();
        lower.sort_unstable();
        assert_eq!(lower, expected);
    }

    #[test]
    fn cutting_poset_constructs_for_small_groups() {
        for desc in ["A1", "A2", "I2(2)", "I2(3)", "I2(4)", "I2(5)", "I2(6)"] {
            let g = create_group(desc).unwrap();
            CuttingPoset::new(&g).unwrap();
        }
    }

    #[test]
    fn conjecture_holds_on_small_groups() {
        for desc in ["A1", "A2", "A3", "I2(4)"] {
            let g = create_group(desc).unwrap();
            let cp = CuttingPoset::new(&g).unwrap();
            let report = conjecture_report(&cp);
            assert!(report.meet_semilattice, "{desc}");
            assert!(report.intervals_distributive, "{desc}");
            assert!(report.counterexample.is_none());
        }
    }

    #[test]
    fn matrix_blocks_of_36475812() {
        let perm = [3u8, 6, 4, 7, 5, 8, 1, 2];
        let blocks = matrix_blocks(&perm).unwrap();
        let b1 = blocks
            .iter()
            .find(|b| b.col_start == 2 && b.col_end == 5)
            .expect("block on columns 2..5");
        assert_eq!(b1.row_start, 4);
        assert_eq!(b1.row_end, 7);
        assert_eq!(b1.associated, vec![3, 1, 4, 2]);
        let b2 = blocks
            .iter()
            .find(|b| b.col_start == 7 && b.col_end == 8)
            .expect("block on columns 7..8");
        assert_eq!(b2.associated, vec![1, 2]);
        assert!(!is_simple_permutation(&perm).unwrap());
    }

    #[test]
    fn simple_permutation_detected() {
        assert!(is_simple_permutation(&[5, 8, 3, 1, 7, 4, 6, 2]).unwrap());
        // Identity in A1: only a singleton-free full block.
        let blocks = matrix_blocks(&[1, 2]).unwrap();
        assert!(blocks.iter().all(|b| !b.proper));
        assert_eq!(blocks.len(), 3);
    }

    #[test]
    fn perm_right_blocks_match_group_blocks_on_s4() {
        let g = a3();
        for w in g.elements() {
            let perm = g.repr(w).to_vec();
            let pure = perm_right_blocks(&perm).unwrap();
            let from_group = all_blocks(&g, w);
            assert_eq!(pure.len(), from_group.len(), "w = {}", g.format_elem(w));
            for (p, b) in pure.iter().zip(from_group.iter()) {
                assert_eq!(p.k, b.k);
                assert_eq!(p.j, b.j);
                assert_eq!(p.nontrivial, b.nontrivial);
                assert_eq!(p.reduced, b.reduced);
                assert_eq!(p.cutting_point, g.repr(b.cutting_point).to_vec());
            }
        }
    }

    #[test]
    fn bijection_check_examples() {
        let g = a3();
        let (ok, report) = blocks_bijection_check(&[4, 3, 1, 2]).unwrap();
        assert!(ok, "{report}");
        let (ok, report) = blocks_bijection_check(&[3, 6, 4, 7, 5, 8, 1, 2]).unwrap();
        assert!(ok, "{report}");
        for w in g.elements() {
            let (ok, report) = blocks_bijection_check(g.repr(w)).unwrap();
            assert!(ok, "w = {}: {report}", g.format_elem(w));
        }
    }

    #[test]
    fn tiling_examples() {
        let g = a3();
        let w = elem(&g, "4312");
        assert!(tiling_check(&g, w, subset_from_labels(&[3])).unwrap());
        assert!(tiling_check(&g, w, subset_from_labels(&[1, 2])).unwrap());
        assert!(tiling_check(&g, w, 0).unwrap());
        // Cardinalities 2 x 6 = 12 for J = {3}.
        let d = g.parabolic_decompose(w, subset_from_labels(&[3]), Side::Left);
        assert_eq!(g.weak_interval(d.parabolic_part, Side::Right).len(), 2);
        assert_eq!(g.weak_interval(d.representative, Side::Right).len(), 6);
        // Not left-reduced: {2} adds nothing over {} for 213 (s2 is not a
        // left descent).
        let g2 = create_group("A2").unwrap();
        assert!(matches!(
            tiling_check(&g2, elem(&g2, "213"), subset_from_labels(&[2])),
            Err(Error::Precondition(_))
        ));
        // Left-reduced non-block: J = {1} for 231.
        assert!(!tiling_check(&g2, elem(&g2, "231"), subset_from_labels(&[1])).unwrap());
        assert!(!is_left_block(&g2, elem(&g2, "231"), subset_from_labels(&[1])));
    }

    #[test]
    fn tiling_agrees_with_left_block_when_left_reduced() {
        let g = a3();
        for w in g.elements() {
            for j in g.subsets() {
                match tiling_check(&g, w, j) {
                    Ok(result) => {
                        assert_eq!(
                            result,
                            is_left_block(&g, w, j),
                            "w = {}, J = {}",
                            g.format_elem(w),
                            crate::coxeter::subset_text(j)
                        );
                    }
                    Err(Error::Precondition(_)) => {}
                    Err(other) => panic!("unexpected error {other:?}"),
                }
            }
        }
    }

    #[test]
    fn json_report_shape() {
        let g = a3();
        let json = blocks_report_json(&g, elem(&g, "4312"));
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["w"], "4312");
        let blocks = value["blocks"].as_array().unwrap();
        assert_eq!(blocks.len(), 6);
        assert_eq!(blocks[1]["K"], serde_json::json!([1]));
        assert_eq!(blocks[1]["J"], serde_json::json!([3]));
        assert_eq!(blocks[1]["cutting_point"], "3412");
        assert_eq!(blocks[1]["reduced"], true);
        assert_eq!(blocks[1]["trivial"], false);
    }

    #[test]
    fn interval_dot_emphasizes_cutting_points() {
        let g = a3();
        let dot = interval_figure_dot(&g, elem(&g, "4312"));
        assert!(dot.contains("doublecircle"));
        assert!(dot.contains("label=\"3412\""));
    }

    #[test]
    fn lw_family_of_4312() {
        let g = a3();
        let w = elem(&g, "4312");
        let minimal = minimal_nontrivial_blocks(&g, w);
        assert_eq!(
            minimal,
            vec![subset_from_labels(&[1]), subset_from_labels(&[2, 3])]
        );
        let family = lw_family(&g, w).unwrap();
        assert_eq!(family.len(), 4);
        let signs: Vec<i64> = family.iter().map(|e| e.sign).collect();
        assert_eq!(signs, vec![1, -1, -1, 1]);
    }
}
