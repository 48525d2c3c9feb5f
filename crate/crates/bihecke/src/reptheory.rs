//! Composition multiplicities over the Borel submonoid.
//!
//! The Borel submonoid `M1` of the biHecke monoid consists of the functions
//! fixing the identity.  It is J-trivial, so its simple modules are
//! one-dimensional and indexed by the group elements; an element acts by `1`
//! or `0` on each of them.  The multiplicity of the `M1`-simple indexed by
//! `u` inside a module is therefore determined by the traces of the
//! idempotents `e_u`, and those multiplicities can be recovered by Möbius
//! inversion along left weak order.
//!
//! This module computes idempotent traces on concrete matrix modules,
//! inverts them into multiplicity vectors, and assembles the decomposition
//! matrix whose columns record the `M1`-composition series of the simple
//! biHecke modules.

use std::sync::Arc;

use num::{BigRational, Zero};
use serde::Serialize;

use crate::blocks::reduced_left_blocks;
use crate::coxeter::{subset_text, CoxeterGroup, Elem, Order, Subset};
use crate::error::{Error, Result};
use crate::heckeops::e_idempotent;
use crate::linalg::{apply_row, QMat, RowSpace};
use crate::transmod::{
    p_submodule, simple_dims, simple_module_action, ModuleAction, SimpleModule,
};

/// Rectangular table of non-negative integer multiplicities with element
/// labels on both axes.  Used for decomposition matrices (rows indexed by
/// Borel simples, columns by biHecke simples) and for Cartan matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplicityTable {
    row_labels: Vec<String>,
    col_labels: Vec<String>,
    entries: Vec<i64>,
}

#[derive(Serialize)]
struct TableDump<'a> {
    rows: &'a [String],
    cols: &'a [String],
    entries: Vec<&'a [i64]>,
}

impl MultiplicityTable {
    /// Builds a table; `entries` is row-major with `rows * cols` cells, all
    /// of which must be non-negative.
    pub fn new(
        row_labels: Vec<String>,
        col_labels: Vec<String>,
        entries: Vec<i64>,
    ) -> Result<MultiplicityTable> {
        if entries.len() != row_labels.len() * col_labels.len() {
            return Err(Error::Precondition(format!(
                "table needs {} entries, got {}",
                row_labels.len() * col_labels.len(),
                entries.len()
            )));
        }
        if let Some(bad) = entries.iter().find(|&&x| x < 0) {
            return Err(Error::InvariantViolation(format!(
                "multiplicity {bad} is negative"
            )));
        }
        Ok(MultiplicityTable {
            row_labels,
            col_labels,
            entries,
        })
    }

    pub fn row_labels(&self) -> &[String] {
        &self.row_labels
    }

    pub fn col_labels(&self) -> &[String] {
        &self.col_labels
    }

    pub fn get(&self, r: usize, c: usize) -> i64 {
        self.entries[r * self.col_labels.len() + c]
    }

    pub fn row(&self, r: usize) -> &[i64] {
        let n = self.col_labels.len();
        &self.entries[r * n..(r + 1) * n]
    }

    pub fn column_sum(&self, c: usize) -> i64 {
        (0..self.row_labels.len()).map(|r| self.get(r, c)).sum()
    }

    pub fn total(&self) -> i64 {
        self.entries.iter().sum()
    }

    /// Tab-separated rendering with a label header row and column.
    pub fn tsv(&self) -> String {
        let mut out = String::new();
        for label in &self.col_labels {
            out.push('\t');
            out.push_str(label);
        }
        out.push('\n');
        for (r, label) in self.row_labels.iter().enumerate() {
            out.push_str(label);
            for value in self.row(r) {
                out.push('\t');
                out.push_str(&value.to_string());
            }
            out.push('\n');
        }
        out
    }

    /// JSON rendering with explicit row and column labels.
    pub fn json(&self) -> String {
        let dump = TableDump {
            rows: &self.row_labels,
            cols: &self.col_labels,
            entries: (0..self.row_labels.len()).map(|r| self.row(r)).collect(),
        };
        serde_json::to_string_pretty(&dump).expect("table serializes")
    }
}

fn check_ops(group: &Arc<CoxeterGroup>, pi: &[QMat], pibar: &[QMat]) -> Result<usize> {
    if pi.len() != group.rank() || pibar.len() != group.rank() {
        return Err(Error::Precondition(format!(
            "expected {} operators per family, got {} and {}",
            group.rank(),
            pi.len(),
            pibar.len()
        )));
    }
    let dim = pi.first().map_or(0, QMat::rows);
    for m in pi.iter().chain(pibar.iter()) {
        if m.rows() != dim || m.cols() != dim {
            return Err(Error::Precondition(
                "operator matrices must be square and of equal size".to_string(),
            ));
        }
    }
    Ok(dim)
}

/// Matrix of the idempotent `e_u = pi_{u^-1 w0} pibar_{w0 u}` in a module
/// given by its generator matrices (row-vector convention: operators act on
/// the right, products compose left to right).
pub fn e_matrix(group: &Arc<CoxeterGroup>, pi: &[QMat], pibar: &[QMat], u: Elem) -> QMat {
    let dim = pi.first().map_or(0, QMat::rows);
    let first = group.multiply(group.inverse(u), group.w0());
    let second = group.multiply(group.w0(), u);
    let mut word: Vec<&QMat> = Vec::new();
    for &letter in group.reduced_word(first) {
        word.push(&pi[letter as usize - 1]);
    }
    for &letter in group.reduced_word(second) {
        word.push(&pibar[letter as usize - 1]);
    }
    QMat::word_product(dim, &word)
}

/// Trace of the idempotent `e_u` on the module with the given generator
/// matrices.  Errors if the word product fails to be idempotent or the trace
/// fails to be an integer.
pub fn idempotent_trace(
    group: &Arc<CoxeterGroup>,
    pi: &[QMat],
    pibar: &[QMat],
    u: Elem,
) -> Result<i64> {
    check_ops(group, pi, pibar)?;
    e_matrix(group, pi, pibar, u).idempotent_trace().map_err(|_| {
        Error::InvariantViolation(format!(
            "e_{} is not an integer-trace idempotent on this module",
            group.format_elem(u)
        ))
    })
}

/// Trace of `e_u` on a translation module.
pub fn module_idempotent_trace(module: &ModuleAction, u: Elem) -> Result<i64> {
    idempotent_trace(module.group(), &module.pi_q(), &module.pibar_q(), u)
}

/// Trace of `e_u` restricted to an invariant row subspace of the module.
///
/// The subspace must be stable under `e_u`; its reduced-echelon basis makes
/// coordinates available at the pivot columns, so the restricted trace is the
/// sum over basis rows of the pivot coordinate of the transformed row.
pub fn subspace_idempotent_trace(
    group: &Arc<CoxeterGroup>,
    pi: &[QMat],
    pibar: &[QMat],
    u: Elem,
    space: &RowSpace,
) -> Result<i64> {
    check_ops(group, pi, pibar)?;
    let e = e_matrix(group, pi, pibar, u);
    if e.mul(&e) != e {
        return Err(Error::InvariantViolation(format!(
            "e_{} is not idempotent on this module",
            group.format_elem(u)
        )));
    }
    if !space.is_stable(&e) {
        return Err(Error::Precondition(format!(
            "subspace is not stable under e_{}",
            group.format_elem(u)
        )));
    }
    let mut trace = BigRational::zero();
    for (row, &pivot) in space.basis().iter().zip(space.pivots()) {
        trace += &apply_row(row, &e)[pivot];
    }
    if !trace.is_integer() {
        return Err(Error::InvariantViolation(format!(
            "restricted trace {trace} is not an integer"
        )));
    }
    i64::try_from(trace.to_integer())
        .map_err(|_| Error::InvariantViolation("restricted trace exceeds i64".to_string()))
}

/// Recovers Borel-simple multiplicities from the traces of all `e_u`.
///
/// `traces[u]` must be the trace of `e_u` in canonical element order.  The
/// character that is `1` exactly on the elements fixing `v` takes the value
/// `[v <=_L u]` on `e_u`, so the trace function is the left-weak-order zeta
/// transform of the fixed-point-indexed multiplicities; Möbius inversion
/// recovers those.  The output is then reported in the standard simple-module
/// labelling `S¹_u = (character of fixing w0 u^{-1})`, the unique labelling
/// that makes the decomposition matrix uni-triangular and places the trivial
/// character at `w0`.  Errors if any multiplicity comes out negative or the
/// sum disagrees with the module dimension (the trace of `e_{w0}`).
pub fn m1_from_traces(group: &Arc<CoxeterGroup>, traces: &[i64]) -> Result<Vec<i64>> {
    let n = group.order();
    if traces.len() != n {
        return Err(Error::Precondition(format!(
            "expected {n} traces, got {}",
            traces.len()
        )));
    }
    let poset = group.order_poset(Order::LeftWeak);
    let mu = poset.mobius_matrix();
    let mut raw = vec![0i64; n];
    for v in 0..n {
        raw[v] = (0..n).map(|x| mu[x * n + v] * traces[x]).sum();
    }
    let mut out = vec![0i64; n];
    for w in group.elements() {
        let fixed = group.multiply(group.w0(), group.inverse(w));
        out[w as usize] = raw[fixed as usize];
    }
    if let Some(v) = out.iter().position(|&m| m < 0) {
        return Err(Error::InvariantViolation(format!(
            "negative multiplicity {} at {}; the module does not restrict \
             consistently to the Borel submonoid",
            out[v],
            group.format_elem(v as Elem)
        )));
    }
    let total: i64 = out.iter().sum();
    let dim = traces[group.w0() as usize];
    if total != dim {
        return Err(Error::InvariantViolation(format!(
            "multiplicities sum to {total} but the module has dimension {dim}"
        )));
    }
    Ok(out)
}

/// Asserts the fixed-point criterion behind the trace inversion: `e_u` fixes
/// `v` exactly when `v <=_L u`.  Checked over all pairs before any
/// multiplicity computation is trusted.
pub fn fixed_point_criterion(group: &Arc<CoxeterGroup>) -> Result<()> {
    for u in group.elements() {
        let e = e_idempotent(group, u);
        for v in group.elements() {
            let fixes = e.apply(v) == v;
            let below = group.leq(Order::LeftWeak, v, u);
            if fixes != below {
                return Err(Error::InvariantViolation(format!(
                    "e_{} fixes {}: {fixes}, but {} <=_L {}: {below}",
                    group.format_elem(u),
                    group.format_elem(v),
                    group.format_elem(v),
                    group.format_elem(u)
                )));
            }
        }
    }
    Ok(())
}

/// Multiplicity of each Borel simple in the module with the given generator
/// matrices, in canonical element order.
pub fn m1_multiplicities(
    group: &Arc<CoxeterGroup>,
    pi: &[QMat],
    pibar: &[QMat],
) -> Result<Vec<i64>> {
    check_ops(group, pi, pibar)?;
    fixed_point_criterion(group)?;
    let traces: Vec<i64> = group
        .elements()
        .map(|u| idempotent_trace(group, pi, pibar, u))
        .collect::<Result<_>>()?;
    m1_from_traces(group, &traces)
}

/// Borel-simple multiplicities of a translation module.
pub fn m1_of_module(module: &ModuleAction) -> Result<Vec<i64>> {
    m1_multiplicities(module.group(), &module.pi_q(), &module.pibar_q())
}

/// Borel-simple multiplicities of a simple biHecke module.
pub fn m1_of_simple(group: &Arc<CoxeterGroup>, simple: &SimpleModule) -> Result<Vec<i64>> {
    m1_multiplicities(group, simple.pi_all(), simple.pibar_all())
}

/// Borel-simple multiplicities of the filtration factor attached to a
/// reduced left block `j` of a translation module: the span of the `P_j`
/// trace vectors modulo the sum of the spans for all strictly larger reduced
/// left blocks.  Computed entirely from restricted traces, so the quotient
/// module is never materialized.
pub fn subquotient_multiplicities(module: &ModuleAction, j: Subset) -> Result<Vec<i64>> {
    let group = Arc::clone(module.group());
    let blocks = reduced_left_blocks(&group, module.w());
    if !blocks.contains(&j) {
        return Err(Error::Domain(format!(
            "{} is not a reduced left block of {}",
            subset_text(j),
            group.format_elem(module.w())
        )));
    }
    let mut upper = RowSpace::new(module.dim());
    for v in p_submodule(module, j).vectors() {
        upper.insert_i64(v);
    }
    let mut strict = RowSpace::new(module.dim());
    for &bigger in &blocks {
        if bigger != j && bigger & j == j {
            for v in p_submodule(module, bigger).vectors() {
                strict.insert_i64(v);
            }
        }
    }
    for row in strict.basis() {
        if !upper.contains(row) {
            return Err(Error::InvariantViolation(format!(
                "P_{} does not contain the trace span of a larger block",
                subset_text(j)
            )));
        }
    }
    fixed_point_criterion(&group)?;
    let (pi, pibar) = (module.pi_q(), module.pibar_q());
    let traces: Vec<i64> = group
        .elements()
        .map(|u| {
            Ok(subspace_idempotent_trace(&group, &pi, &pibar, u, &upper)?
                - subspace_idempotent_trace(&group, &pi, &pibar, u, &strict)?)
        })
        .collect::<Result<_>>()?;
    m1_from_traces(&group, &traces)
}

/// Decomposition matrix of the biHecke monoid over its Borel submonoid:
/// column `w` lists the Borel-simple multiplicities of the simple biHecke
/// module indexed by `w`.
///
/// Verifies that the matrix is upper uni-triangular for weak order (diagonal
/// `1`, entries in `{0, 1}`, support of column `w` inside the weak-order
/// ideal of `w`) and that column sums match the simple module dimensions.
/// Under the row-action convention used throughout (operators compose left
/// to right), the validating order is the left weak order: the support of
/// column `w` lies in `[1, w]_L`.  If triangularity fails in this
/// orientation, the error reports which of the remaining orientations
/// (right weak order, or either transpose) would have validated.
pub fn decomposition_matrix(group: &Arc<CoxeterGroup>) -> Result<MultiplicityTable> {
    let n = group.order();
    let mut entries = vec![0i64; n * n];
    let mut dims = vec![0i64; n];
    for w in group.elements() {
        let simple = simple_module_action(group, w)?;
        dims[w as usize] = simple.dim() as i64;
        let col = m1_of_simple(group, &simple)?;
        for u in 0..n {
            entries[u * n + w as usize] = col[u];
        }
    }

    let mut direct_ok = true;
    let mut witness = (0, 0);
    let mut alternatives = [true; 3];
    for u in group.elements() {
        for w in group.elements() {
            let m = entries[u as usize * n + w as usize];
            if u == w && m != 1 {
                return Err(Error::InvariantViolation(format!(
                    "diagonal multiplicity at {} is {m}, expected 1",
                    group.format_elem(u)
                )));
            }
            if m != 0 && m != 1 {
                return Err(Error::InvariantViolation(format!(
                    "multiplicity at ({}, {}) is {m}, expected 0 or 1",
                    group.format_elem(u),
                    group.format_elem(w)
                )));
            }
            if m != 0 {
                if !group.leq(Order::LeftWeak, u, w) {
                    direct_ok = false;
                    witness = (u, w);
                }
                alternatives[0] &= group.leq(Order::RightWeak, u, w);
                alternatives[1] &= group.leq(Order::LeftWeak, w, u);
                alternatives[2] &= group.leq(Order::RightWeak, w, u);
            }
        }
    }
    if !direct_ok {
        let (u, w) = witness;
        let names = ["right weak order", "left-order transpose", "right-order transpose"];
        let valid: Vec<&str> = names
            .iter()
            .zip(alternatives)
            .filter_map(|(&name, ok)| ok.then_some(name))
            .collect();
        let hint = if valid.is_empty() {
            String::new()
        } else {
            format!("; only these orientations validate: {}", valid.join(", "))
        };
        return Err(Error::InvariantViolation(format!(
            "column {} has support at {} outside its left-order ideal{hint}",
            group.format_elem(w),
            group.format_elem(u)
        )));
    }

    for w in group.elements() {
        let sum: i64 = (0..n).map(|u| entries[u * n + w as usize]).sum();
        if sum != dims[w as usize] {
            return Err(Error::InvariantViolation(format!(
                "column {} sums to {sum}, expected dimension {}",
                group.format_elem(w),
                dims[w as usize]
            )));
        }
    }

    let labels: Vec<String> = group.elements().map(|e| group.format_elem(e)).collect();
    MultiplicityTable::new(labels.clone(), labels, entries)
}

/// Cross-check available to callers: the column sums of a decomposition
/// matrix must reproduce the simple dimensions computed combinatorially.
pub fn check_column_dims(group: &Arc<CoxeterGroup>, table: &MultiplicityTable) -> Result<()> {
    for w in group.elements() {
        let expected = simple_dims(group, w)?.top() as i64;
        let got = table.column_sum(w as usize);
        if expected != got {
            return Err(Error::InvariantViolation(format!(
                "column {} sums to {got}, combinatorial dimension is {expected}",
                group.format_elem(w)
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{create_group, Side};
    use crate::transmod::{p_submodule, translation_module};

    fn a(n: u32) -> Arc<CoxeterGroup> {
        create_group(&format!("A{n}")).unwrap()
    }

    /// 1x1 modules where every generator acts by the given scalar.
    fn scalar_ops(group: &Arc<CoxeterGroup>, value: i64) -> (Vec<QMat>, Vec<QMat>) {
        let m = QMat::from_i64(1, 1, &[value]);
        (
            vec![m.clone(); group.rank()],
            vec![m; group.rank()],
        )
    }

    #[test]
    fn traces_on_regular_module_count_left_intervals() {
        for group in [a(2), a(3)] {
            let module = translation_module(&group, group.w0());
            for u in group.elements() {
                let trace = module_idempotent_trace(&module, u).unwrap();
                assert_eq!(trace as usize, group.weak_interval(u, Side::Left).len());
            }
        }
    }

    #[test]
    fn extreme_idempotent_traces() {
        // e_{w0} expands to the empty word, so its trace is always the full
        // dimension.  The constant-map idempotent e_1 has trace 1 on the
        // regular module, but on a proper interval its word sweeps every
        // basis vector through a truncation, so the trace drops to 0.
        for group in [a(1), a(2)] {
            for w in group.elements() {
                let module = translation_module(&group, w);
                assert_eq!(
                    module_idempotent_trace(&module, group.w0()).unwrap(),
                    module.dim() as i64
                );
                assert_eq!(
                    module_idempotent_trace(&module, 0).unwrap(),
                    i64::from(w == group.w0())
                );
            }
        }
    }

    #[test]
    fn e_matrix_is_reduced_word_independent() {
        let group = a(3);
        let w = group.parse_elem("4312").unwrap();
        let module = translation_module(&group, w);
        let (pi, pibar) = (module.pi_q(), module.pibar_q());
        for u in group.elements() {
            let canonical = e_matrix(&group, &pi, &pibar, u);
            // Rebuild from words that peel the largest descent instead.
            let mut word: Vec<&QMat> = Vec::new();
            for (target, ops) in [
                (group.multiply(group.inverse(u), group.w0()), &pi),
                (group.multiply(group.w0(), u), &pibar),
            ] {
                let mut x = target;
                let mut letters = Vec::new();
                while x != 0 {
                    let i = 32 - group.right_descents(x).leading_zeros();
                    letters.push(i);
                    x = group.right_mult_gen(x, i);
                }
                letters.reverse();
                for i in letters {
                    word.push(&ops[i as usize - 1]);
                }
            }
            assert_eq!(canonical, QMat::word_product(module.dim(), &word));
        }
    }

    #[test]
    fn trivial_module_concentrates_at_the_longest_element() {
        let group = a(2);
        let (pi, pibar) = scalar_ops(&group, 1);
        let m = m1_multiplicities(&group, &pi, &pibar).unwrap();
        for w in group.elements() {
            assert_eq!(m[w as usize], i64::from(w == group.w0()));
        }
    }

    #[test]
    fn zero_module_concentrates_at_the_identity() {
        let group = a(2);
        let (pi, pibar) = scalar_ops(&group, 0);
        let m = m1_multiplicities(&group, &pi, &pibar).unwrap();
        for w in group.elements() {
            assert_eq!(m[w as usize], i64::from(w == 0));
        }
    }

    #[test]
    fn rank_one_regular_module_splits_evenly() {
        let group = a(1);
        let module = translation_module(&group, group.w0());
        assert_eq!(m1_of_module(&module).unwrap(), vec![1, 1]);
    }

    #[test]
    fn multiplicities_sum_to_dimension_on_all_translation_modules() {
        let group = a(2);
        for w in group.elements() {
            let module = translation_module(&group, w);
            let m = m1_of_module(&module).unwrap();
            assert!(m.iter().all(|&x| x >= 0));
            assert_eq!(m.iter().sum::<i64>(), module.dim() as i64);
        }
    }

    #[test]
    fn subspace_trace_matches_full_trace_on_the_whole_space() {
        let group = a(3);
        let w = group.parse_elem("4312").unwrap();
        let module = translation_module(&group, w);
        let (pi, pibar) = (module.pi_q(), module.pibar_q());
        let whole = p_submodule(&module, 0);
        let mut space = RowSpace::new(module.dim());
        for v in whole.vectors() {
            space.insert_i64(v);
        }
        for u in [0, 3, group.w0()] {
            assert_eq!(
                subspace_idempotent_trace(&group, &pi, &pibar, u, &space).unwrap(),
                module_idempotent_trace(&module, u).unwrap()
            );
        }
    }

    #[test]
    fn subspace_trace_rejects_unstable_spaces() {
        let group = a(3);
        let w = group.parse_elem("4312").unwrap();
        let module = translation_module(&group, w);
        let sub = p_submodule(&module, 0b010);
        assert!(!sub.is_stable());
        let mut space = RowSpace::new(module.dim());
        for v in sub.vectors() {
            space.insert_i64(v);
        }
        let (pi, pibar) = (module.pi_q(), module.pibar_q());
        // e_{w0} is the identity and stabilizes anything, including this
        // non-submodule; some other e_u must refuse it.
        assert_eq!(
            subspace_idempotent_trace(&group, &pi, &pibar, group.w0(), &space).unwrap(),
            space.rank() as i64
        );
        let rejected = group
            .elements()
            .filter(|&u| {
                matches!(
                    subspace_idempotent_trace(&group, &pi, &pibar, u, &space),
                    Err(Error::Precondition(_))
                )
            })
            .count();
        assert!(rejected > 0);
    }

    #[test]
    fn rank_one_decomposition_matrix_is_the_identity() {
        let group = a(1);
        let table = decomposition_matrix(&group).unwrap();
        assert_eq!(table.row_labels(), ["12", "21"]);
        assert_eq!(table.get(0, 0), 1);
        assert_eq!(table.get(1, 1), 1);
        assert_eq!(table.get(0, 1), 0);
        assert_eq!(table.get(1, 0), 0);
    }

    #[test]
    fn decomposition_matrix_passes_structural_checks() {
        let group = a(2);
        let table = decomposition_matrix(&group).unwrap();
        check_column_dims(&group, &table).unwrap();
        let total: i64 = group
            .elements()
            .map(|w| simple_dims(&group, w).unwrap().top() as i64)
            .sum();
        assert_eq!(table.total(), total);
    }

    #[test]
    fn rank_two_decomposition_matrix_is_frozen() {
        let group = a(2);
        let table = decomposition_matrix(&group).unwrap();
        assert_eq!(table.col_labels(), ["123", "132", "213", "231", "312", "321"]);
        let expected: [[i64; 6]; 6] = [
            [1, 0, 0, 0, 0, 0],
            [0, 1, 0, 1, 0, 0],
            [0, 0, 1, 0, 1, 0],
            [0, 0, 0, 1, 0, 0],
            [0, 0, 0, 0, 1, 0],
            [0, 0, 0, 0, 0, 1],
        ];
        for (r, row) in expected.iter().enumerate() {
            assert_eq!(table.row(r), row, "row {}", table.row_labels()[r]);
        }
    }

    #[test]
    fn table_renders_tsv_and_json() {
        let table = MultiplicityTable::new(
            vec!["1".into(), "s1".into()],
            vec!["1".into(), "s1".into()],
            vec![1, 0, 2, 1],
        )
        .unwrap();
        assert_eq!(table.tsv(), "\t1\ts1\n1\t1\t0\ns1\t2\t1\n");
        let parsed: serde_json::Value = serde_json::from_str(&table.json()).unwrap();
        assert_eq!(parsed["rows"][1], "s1");
        assert_eq!(parsed["entries"][1][0], 2);
        assert_eq!(table.column_sum(0), 3);
        assert_eq!(table.total(), 4);
    }

    #[test]
    fn negative_entries_are_rejected() {
        let err =
            MultiplicityTable::new(vec!["1".into()], vec!["1".into()], vec![-1]).unwrap_err();
        assert!(matches!(err, Error::InvariantViolation(_)));
    }

    #[test]
    fn bottom_subquotient_is_the_simple_module() {
        // The empty set is always a reduced left block, and its filtration
        // factor is the simple quotient at the top of the translation module.
        let group = a(2);
        for w in group.elements() {
            let module = translation_module(&group, w);
            let from_filtration = subquotient_multiplicities(&module, 0).unwrap();
            let simple = simple_module_action(&group, w).unwrap();
            let direct = m1_of_simple(&group, &simple).unwrap();
            assert_eq!(from_filtration, direct, "w = {}", group.format_elem(w));
        }
        let group = a(3);
        let w = group.parse_elem("4312").unwrap();
        let module = translation_module(&group, w);
        let from_filtration = subquotient_multiplicities(&module, 0).unwrap();
        let simple = simple_module_action(&group, w).unwrap();
        assert_eq!(from_filtration, m1_of_simple(&group, &simple).unwrap());
    }

    #[test]
    fn subquotients_add_up_to_the_translation_module() {
        let group = a(2);
        for w in group.elements() {
            let module = translation_module(&group, w);
            let whole = m1_of_module(&module).unwrap();
            let mut sum = vec![0i64; group.order()];
            for j in reduced_left_blocks(&group, w) {
                let part = subquotient_multiplicities(&module, j).unwrap();
                for (acc, x) in sum.iter_mut().zip(&part) {
                    *acc += x;
                }
            }
            assert_eq!(sum, whole, "w = {}", group.format_elem(w));
        }
    }

    #[test]
    fn subquotient_rejects_non_blocks() {
        let group = a(2);
        let w = group.parse_elem("231").unwrap();
        let module = translation_module(&group, w);
        // {1} cuts 231 on the right but not on the left.
        let blocks = reduced_left_blocks(&group, w);
        let bad = group.subsets().find(|j| !blocks.contains(j)).unwrap();
        assert!(matches!(
            subquotient_multiplicities(&module, bad),
            Err(Error::Domain(_))
        ));
    }
}
