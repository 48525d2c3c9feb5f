//! Translation modules `T_w` with the combinatorial π/π̄ action, the signed
//! operators `s_i = π_i + π̄_i − 1` and their left counterparts, the
//! antisymmetric submodules `P_J`, the codescent digraph `G^(w)`, and the
//! w-biHecke algebra with its dimension and simple-module data.
//!
//! `T_w` has basis `{ f_u : u ∈ [1,w]_R }` with right action
//!
//! * `f_u · π_i  = f_u` if `i ∈ D_R(u)`; `f_{us_i}` if `us_i ∈ [1,w]_R`;
//!   `0` otherwise;
//! * `f_u · π̄_i = f_{us_i}` if `i ∈ D_R(u)`; `f_u` if `us_i ∈ [1,w]_R`;
//!   `0` otherwise.
//!
//! Both rules truncate to zero when `us_i` leaves the interval; this is the
//! reading forced by `s_i = π_i + π̄_i − 1` acting as `f_u ↦ −f_u` on
//! truncated edges, and it is asserted against the intrinsic monoid
//! construction (`trans_of`) wherever both are available.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::blocks::{codescents, cutting_mobius_column, reduced_left_blocks};
use crate::coxeter::{CoxeterGroup, Elem, Side, Subset};
use crate::error::{Error, Result};
use crate::heckeops::{analyze, generator, FunctionTable, MonoidClosure, OpKind};
use crate::linalg::{quotient_matrix, IMat, QMat, RowSpace};

/// A module with one integer matrix per generator label for each of the two
/// operator families.  Rows are indexed by the basis: row `u` holds the image
/// of the `u`-th basis vector, so operators act on coordinate row vectors
/// from the right and compose left-to-right.
pub struct ModuleAction {
    group: Arc<CoxeterGroup>,
    w: Elem,
    basis: Vec<Elem>,
    position: HashMap<Elem, usize>,
    pi: Vec<IMat>,
    pibar: Vec<IMat>,
}

impl ModuleAction {
    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    /// The element whose right-order interval indexes the basis.
    pub fn w(&self) -> Elem {
        self.w
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn position(&self, u: Elem) -> Option<usize> {
        self.position.get(&u).copied()
    }

    pub fn pi(&self, i: u32) -> Result<&IMat> {
        self.check_label(i)?;
        Ok(&self.pi[i as usize - 1])
    }

    pub fn pibar(&self, i: u32) -> Result<&IMat> {
        self.check_label(i)?;
        Ok(&self.pibar[i as usize - 1])
    }

    pub fn op(&self, kind: OpKind, i: u32) -> Result<&IMat> {
        match kind {
            OpKind::Antisort => self.pi(i),
            OpKind::Sort => self.pibar(i),
        }
    }

    /// `s_i = π_i + π̄_i − 1`; an involution sending `f_u` to `f_{us_i}`
    /// inside the interval and to `−f_u` across the truncated boundary.
    pub fn s_op(&self, i: u32) -> Result<IMat> {
        let s = self
            .pi(i)?
            .add(self.pibar(i)?)
            .sub(&IMat::identity(self.dim()));
        assert_eq!(s.mul(&s), IMat::identity(self.dim()), "s_{i} is an involution");
        Ok(s)
    }

    /// Left counterpart: `f_u ↦ f_{s_i u}` if `s_i u ∈ [1,w]_R`, else `−f_u`.
    pub fn left_s_op(&self, i: u32) -> Result<IMat> {
        self.check_label(i)?;
        let d = self.dim();
        let mut m = IMat::zero(d, d);
        for (pos, &u) in self.basis.iter().enumerate() {
            let target = self.group.left_mult_gen(u, i);
            match self.position(target) {
                Some(t) => m.set(pos, t, 1),
                None => m.set(pos, pos, -1),
            }
        }
        assert_eq!(m.mul(&m), IMat::identity(d), "left s_{i} is an involution");
        Ok(m)
    }

    fn check_label(&self, i: u32) -> Result<()> {
        if i == 0 || i as usize > self.group.rank() {
            return Err(Error::Index(format!(
                "generator label {i} out of range 1..={}",
                self.group.rank()
            )));
        }
        Ok(())
    }

    /// All π then all π̄ matrices as rationals, in label order.
    fn all_ops_q(&self) -> Vec<QMat> {
        self.pi
            .iter()
            .chain(self.pibar.iter())
            .map(IMat::to_qmat)
            .collect()
    }

    /// The π matrices as rationals, in label order.
    pub fn pi_q(&self) -> Vec<QMat> {
        self.pi.iter().map(IMat::to_qmat).collect()
    }

    /// The π̄ matrices as rationals, in label order.
    pub fn pibar_q(&self) -> Vec<QMat> {
        self.pibar.iter().map(IMat::to_qmat).collect()
    }
}

/// The translation module `T_w` on basis `[1, w]_R`.
pub fn translation_module(group: &Arc<CoxeterGroup>, w: Elem) -> ModuleAction {
    let basis = group.weak_interval(w, Side::Right);
    let position: HashMap<Elem, usize> = basis
        .iter()
        .enumerate()
        .map(|(pos, &u)| (u, pos))
        .collect();
    let d = basis.len();
    let mut pi = Vec::with_capacity(group.rank());
    let mut pibar = Vec::with_capacity(group.rank());
    for i in 1..=group.rank() as u32 {
        let mut mp = IMat::zero(d, d);
        let mut mb = IMat::zero(d, d);
        for (pos, &u) in basis.iter().enumerate() {
            let usi = group.right_mult_gen(u, i);
            let descent = group.right_descents(u) & (1 << (i - 1)) != 0;
            if descent {
                // us_i is shorter, hence stays in the interval.
                mp.set(pos, pos, 1);
                mb.set(pos, position[&usi], 1);
            } else if let Some(&t) = position.get(&usi) {
                mp.set(pos, t, 1);
                mb.set(pos, pos, 1);
            }
            // Otherwise both operators truncate f_u to zero.
        }
        assert_eq!(mp.mul(&mp), mp, "pi_{i} is idempotent");
        assert_eq!(mb.mul(&mb), mb, "pibar_{i} is idempotent");
        pi.push(mp);
        pibar.push(mb);
    }
    ModuleAction {
        group: Arc::clone(group),
        w,
        basis,
        position,
        pi,
        pibar,
    }
}

/// The translation module of `f` built from the actual monoid elements: the
/// basis is `{ f_u }` where `f_u` is the unique element of `fM` of full rank
/// with `1·f_u = u`, indexed by `u ∈ [1, type(f)⁻¹w₀]_R`.  The resulting
/// matrices are asserted identical to `translation_module(type(f)⁻¹w₀)`.
pub fn trans_of(f: &FunctionTable, closure: &MonoidClosure) -> Result<ModuleAction> {
    let group = closure.group();
    let Some(f_index) = closure.index_of(f) else {
        return Err(Error::Domain(
            "function is not an element of the closure".to_string(),
        ));
    };
    let analysis = analyze(f);
    let rank = analysis.rank;
    let wprime = group.multiply(group.inverse(analysis.type_elem), group.w0());

    let mut by_image: HashMap<Elem, FunctionTable> = HashMap::new();
    for h_index in closure.right_orbit(f_index) {
        let h = closure.element(h_index);
        if analyze(h).rank != rank {
            continue;
        }
        let u = h.apply(group.identity());
        if let Some(previous) = by_image.insert(u, h.clone()) {
            if &previous != h {
                return Err(Error::InvariantViolation(format!(
                    "two full-rank elements of fM send 1 to {}",
                    group.format_elem(u)
                )));
            }
        }
    }

    let reference = translation_module(group, wprime);
    let found: Vec<Elem> = {
        let mut keys: Vec<Elem> = by_image.keys().copied().collect();
        keys.sort_unstable();
        keys
    };
    if found != reference.basis {
        return Err(Error::InvariantViolation(format!(
            "full-rank elements of fM are indexed by {found:?}, expected the interval below {}",
            group.format_elem(wprime)
        )));
    }

    let d = reference.dim();
    let mut pi = Vec::with_capacity(group.rank());
    let mut pibar = Vec::with_capacity(group.rank());
    for i in 1..=group.rank() as u32 {
        for (kind, out) in [(OpKind::Antisort, &mut pi), (OpKind::Sort, &mut pibar)] {
            let gen = generator(group, kind, i)?;
            let mut m = IMat::zero(d, d);
            for (pos, u) in reference.basis.iter().enumerate() {
                let product = by_image[u].compose(&gen)?;
                if analyze(&product).rank == rank {
                    let v = product.apply(group.identity());
                    let canonical = &by_image[&v];
                    if &product != canonical {
                        return Err(Error::InvariantViolation(format!(
                            "full-rank product is not the canonical element at {}",
                            group.format_elem(v)
                        )));
                    }
                    m.set(pos, reference.position[&v], 1);
                }
            }
            out.push(m);
        }
    }

    if pi != reference.pi || pibar != reference.pibar {
        return Err(Error::InvariantViolation(format!(
            "monoid translation module of type {} differs from the combinatorial one",
            group.format_elem(analysis.type_elem)
        )));
    }
    Ok(ModuleAction {
        group: Arc::clone(group),
        w: wprime,
        basis: reference.basis,
        position: reference.position,
        pi,
        pibar,
    })
}

/// Span of the alternating coset-trace vectors for `J`: the basis elements
/// are grouped by the left coset `W_J x` (equivalently by `^Jx`), and each
/// group contributes `q_t = Σ_x (−1)^{ℓ(x) − ℓ_min} f_x`.  Every `q_t`
/// satisfies the antisymmetry constraints `q_t · s̄_j = −q_t` for `j ∈ J`.
pub struct PSubmodule {
    j: Subset,
    /// Basis positions of each trace, in basis order.
    traces: Vec<Vec<usize>>,
    /// One signed 0/±1 coordinate row per trace.
    vectors: Vec<Vec<i64>>,
    /// Stable under every π_i and π̄_i of the parent module.
    stable: bool,
}

impl PSubmodule {
    pub fn j(&self) -> Subset {
        self.j
    }

    pub fn traces(&self) -> &[Vec<usize>] {
        &self.traces
    }

    pub fn vectors(&self) -> &[Vec<i64>] {
        &self.vectors
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_stable(&self) -> bool {
        self.stable
    }
}

pub fn p_submodule(module: &ModuleAction, j: Subset) -> PSubmodule {
    let group = module.group();
    let mut trace_of_rep: HashMap<Elem, Vec<usize>> = HashMap::new();
    let mut reps: Vec<Elem> = Vec::new();
    for (pos, &u) in module.basis().iter().enumerate() {
        let rep = group.parabolic_decompose(u, j, Side::Left).representative;
        trace_of_rep.entry(rep).or_insert_with(|| {
            reps.push(rep);
            Vec::new()
        });
        trace_of_rep.get_mut(&rep).expect("just inserted").push(pos);
    }
    reps.sort_unstable();

    let mut traces = Vec::with_capacity(reps.len());
    let mut vectors = Vec::with_capacity(reps.len());
    for rep in reps {
        let members = trace_of_rep.remove(&rep).expect("trace exists");
        let min_len = members
            .iter()
            .map(|&pos| group.length(module.basis()[pos]))
            .min()
            .expect("trace is nonempty");
        let mut vector = vec![0i64; module.dim()];
        for &pos in &members {
            let len = group.length(module.basis()[pos]);
            vector[pos] = if (len - min_len) % 2 == 0 { 1 } else { -1 };
        }
        traces.push(members);
        vectors.push(vector);
    }

    // Antisymmetry: q_t · s̄_j = −q_t for every j in J, unconditionally.
    for label in 1..=group.rank() as u32 {
        if j & (1 << (label - 1)) == 0 {
            continue;
        }
        let sbar = module.left_s_op(label).expect("valid label");
        for vector in &vectors {
            let mut image = vec![0i64; module.dim()];
            for (pos, &coeff) in vector.iter().enumerate() {
                if coeff == 0 {
                    continue;
                }
                for (target, &entry) in sbar.row(pos).iter().enumerate() {
                    image[target] += coeff * entry;
                }
            }
            let negated: Vec<i64> = vector.iter().map(|&x| -x).collect();
            assert_eq!(image, negated, "trace vector is antisymmetric in J");
        }
    }

    let mut space = RowSpace::new(module.dim());
    for vector in &vectors {
        assert!(space.insert_i64(vector), "trace vectors are independent");
    }
    let stable = module.all_ops_q().iter().all(|m| space.is_stable(m));

    PSubmodule {
        j,
        traces,
        vectors,
        stable,
    }
}

/// The codescent digraph `G^(w)`: vertices `[1,w]_R`, an edge `u → v`
/// whenever `u = v·s_i` for some generator and `𝕁(u) ⊆ 𝕁(v)`.
pub struct CodescentGraph {
    w: Elem,
    vertices: Vec<Elem>,
    j_sets: Vec<Subset>,
    /// Directed edges as vertex positions, sorted.
    edges: Vec<(usize, usize)>,
}

impl CodescentGraph {
    pub fn w(&self) -> Elem {
        self.w
    }

    pub fn vertices(&self) -> &[Elem] {
        &self.vertices
    }

    pub fn j_sets(&self) -> &[Subset] {
        &self.j_sets
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn dot(&self, group: &CoxeterGroup) -> String {
        let mut out = String::new();
        out.push_str("digraph codescent {\n");
        for (pos, &v) in self.vertices.iter().enumerate() {
            out.push_str(&format!(
                "  n{pos} [label=\"{}\"];\n",
                group.format_elem(v)
            ));
        }
        for &(a, b) in &self.edges {
            if a < b && self.edges.contains(&(b, a)) {
                out.push_str(&format!("  n{a} -> n{b} [dir=none];\n"));
            } else if !self.edges.contains(&(b, a)) {
                out.push_str(&format!("  n{a} -> n{b};\n"));
            }
        }
        out.push_str("}\n");
        out
    }
}

pub fn codescent_graph(group: &Arc<CoxeterGroup>, w: Elem) -> Result<CodescentGraph> {
    let vertices = group.weak_interval(w, Side::Right);
    let position: HashMap<Elem, usize> = vertices
        .iter()
        .enumerate()
        .map(|(pos, &u)| (u, pos))
        .collect();
    let mut j_sets = Vec::with_capacity(vertices.len());
    for &u in &vertices {
        j_sets.push(codescents(group, w, u)?.1);
    }
    let mut edges = Vec::new();
    for (pos, &u) in vertices.iter().enumerate() {
        for i in 1..=group.rank() as u32 {
            let v = group.right_mult_gen(u, i);
            if let Some(&vp) = position.get(&v) {
                // u = v·s_i holds for this pair in both readings.
                if j_sets[pos] & !j_sets[vp] == 0 {
                    edges.push((pos, vp));
                }
            }
        }
    }
    edges.sort_unstable();
    edges.dedup();
    Ok(CodescentGraph {
        w,
        vertices,
        j_sets,
        edges,
    })
}

/// `dim HW^(w)` by the pair-counting formula:
/// `|{ (u,v) ∈ [1,w]_R² : 𝕁(u) ⊆ 𝕁(v) }|`.
pub fn whecke_dim_count(group: &Arc<CoxeterGroup>, w: Elem) -> Result<usize> {
    let graph = codescent_graph(group, w)?;
    let mut count = 0;
    for &ju in graph.j_sets() {
        for &jv in graph.j_sets() {
            if ju & !jv == 0 {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Partial function on basis positions: `0` marks the zero row, otherwise
/// target position + 1.
type OpTable = Vec<u16>;

fn table_of(m: &IMat) -> OpTable {
    let d = m.rows();
    (0..d)
        .map(|r| {
            let row = m.row(r);
            match row.iter().position(|&x| x == 1) {
                Some(c) => (c + 1) as u16,
                None => 0,
            }
        })
        .collect()
}

fn compose_tables(first: &[u16], second: &[u16]) -> OpTable {
    first
        .iter()
        .map(|&t| if t == 0 { 0 } else { second[t as usize - 1] })
        .collect()
}

fn table_to_row(table: &[u16]) -> Vec<i64> {
    let d = table.len();
    let mut row = vec![0i64; d * d];
    for (u, &t) in table.iter().enumerate() {
        if t != 0 {
            row[u * d + (t as usize - 1)] = 1;
        }
    }
    row
}

/// `dim HW^(w)` by span closure: starting from the identity and the π/π̄
/// matrices, repeatedly multiply discovered products by generators and track
/// the rank of an exact row-reduced basis; products of the generators are
/// partial functions on the module basis, so the closure runs on function
/// tables and only the rank test touches linear algebra.  Errors when the
/// module dimension exceeds `bound`.
pub fn whecke_dim_closure(group: &Arc<CoxeterGroup>, w: Elem, bound: usize) -> Result<usize> {
    let module = translation_module(group, w);
    let d = module.dim();
    if d > bound {
        return Err(Error::Resource {
            context: format!(
                "module dimension for {} exceeds the configured bound",
                group.format_elem(w)
            ),
            partial: d,
            budget: bound,
        });
    }
    let generators: Vec<OpTable> = module
        .pi
        .iter()
        .chain(module.pibar.iter())
        .map(table_of)
        .collect();
    let identity: OpTable = (1..=d as u16).collect();

    let mut space = RowSpace::new(d * d);
    let mut seen: std::collections::HashSet<OpTable> = std::collections::HashSet::new();
    space.insert_i64(&table_to_row(&identity));
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while !frontier.is_empty() {
        let mut next = Vec::new();
        for table in &frontier {
            for gen in &generators {
                let product = compose_tables(table, gen);
                if !seen.insert(product.clone()) {
                    continue;
                }
                // Products that do not extend the span cannot lead to new
                // span directions later: multiplying a linear dependency by
                // a generator keeps it a dependency.
                if space.insert_i64(&table_to_row(&product)) {
                    next.push(product);
                }
            }
        }
        frontier = next;
    }
    Ok(space.rank())
}

/// Codescent-class sizes of `[1,w]_R` keyed by the class's left subset `J`,
/// plus the top dimension (the `J = ∅` class) recomputed independently by
/// Möbius inclusion–exclusion over the cutting poset.
pub struct SimpleDims {
    classes: Vec<(Subset, Vec<Elem>)>,
    top: usize,
}

impl SimpleDims {
    /// Class members per subset, sorted by subset mask.
    pub fn classes(&self) -> &[(Subset, Vec<Elem>)] {
        &self.classes
    }

    pub fn dim_of(&self, j: Subset) -> Option<usize> {
        self.classes
            .iter()
            .find(|(subset, _)| *subset == j)
            .map(|(_, members)| members.len())
    }

    /// Dimension of the simple module at the top of `T_w`.
    pub fn top(&self) -> usize {
        self.top
    }
}

pub fn simple_dims(group: &Arc<CoxeterGroup>, w: Elem) -> Result<SimpleDims> {
    let interval = group.weak_interval(w, Side::Right);
    let mut classes: HashMap<Subset, Vec<Elem>> = HashMap::new();
    for &u in &interval {
        let (_, j) = codescents(group, w, u)?;
        classes.entry(j).or_default().push(u);
    }
    let mut classes: Vec<(Subset, Vec<Elem>)> = classes.into_iter().collect();
    classes.sort_unstable_by_key(|(subset, _)| *subset);

    let column = cutting_mobius_column(group, w)?;
    let mut by_mobius = 0i64;
    for (v, &mu) in column.iter().enumerate() {
        if mu != 0 {
            by_mobius += mu * group.weak_interval(v as Elem, Side::Right).len() as i64;
        }
    }
    let by_classes = classes
        .iter()
        .find(|(subset, _)| *subset == 0)
        .map(|(_, members)| members.len())
        .unwrap_or(0);
    if by_mobius != by_classes as i64 {
        return Err(Error::InvariantViolation(format!(
            "top dimension of T_{}: class count {} vs Möbius sum {}",
            group.format_elem(w),
            by_classes,
            by_mobius
        )));
    }
    Ok(SimpleDims {
        classes,
        top: by_classes,
    })
}

/// The simple quotient of `T_w` by the sum of all `P_J` over nonempty
/// reduced left blocks `J`, realized on the non-pivot complement basis.
pub struct SimpleModule {
    w: Elem,
    /// Interval elements whose coordinates survive as the quotient basis.
    basis: Vec<Elem>,
    pi: Vec<QMat>,
    pibar: Vec<QMat>,
}

impl SimpleModule {
    pub fn w(&self) -> Elem {
        self.w
    }

    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn pi(&self, i: u32) -> &QMat {
        &self.pi[i as usize - 1]
    }

    pub fn pibar(&self, i: u32) -> &QMat {
        &self.pibar[i as usize - 1]
    }

    pub fn ops(&self) -> impl Iterator<Item = &QMat> {
        self.pi.iter().chain(self.pibar.iter())
    }

    /// All π matrices in label order.
    pub fn pi_all(&self) -> &[QMat] {
        &self.pi
    }

    /// All π̄ matrices in label order.
    pub fn pibar_all(&self) -> &[QMat] {
        &self.pibar
    }
}

pub fn simple_module_action(group: &Arc<CoxeterGroup>, w: Elem) -> Result<SimpleModule> {
    let module = translation_module(group, w);
    let mut radical = RowSpace::new(module.dim());
    for j in reduced_left_blocks(group, w) {
        if j == 0 {
            continue;
        }
        for vector in p_submodule(&module, j).vectors() {
            radical.insert_i64(vector);
        }
    }
    let mut pi = Vec::with_capacity(group.rank());
    let mut pibar = Vec::with_capacity(group.rank());
    let mut basis_cols = None;
    for i in 1..=group.rank() as u32 {
        for (kind, out) in [(OpKind::Antisort, &mut pi), (OpKind::Sort, &mut pibar)] {
            let (cols, action) = quotient_matrix(&module.op(kind, i)?.to_qmat(), &radical)?;
            if let Some(previous) = &basis_cols {
                assert_eq!(previous, &cols);
            } else {
                basis_cols = Some(cols);
            }
            out.push(action);
        }
    }
    let basis: Vec<Elem> = basis_cols
        .unwrap_or_default()
        .iter()
        .map(|&c| module.basis()[c])
        .collect();

    let dims = simple_dims(group, w)?;
    if basis.len() != dims.top() {
        return Err(Error::InvariantViolation(format!(
            "simple module of {} has dimension {} but the class count gives {}",
            group.format_elem(w),
            basis.len(),
            dims.top()
        )));
    }
    Ok(SimpleModule {
        w,
        basis,
        pi,
        pibar,
    })
}

#[derive(Serialize)]
struct SparseOperator {
    name: String,
    triplets: Vec<(usize, usize, i64)>,
}

#[derive(Serialize)]
struct ModuleDump {
    w: String,
    basis: Vec<String>,
    operators: Vec<SparseOperator>,
}

/// JSON dump of a module: basis texts plus per-generator sparse triplets.
pub fn module_json(module: &ModuleAction) -> String {
    let group = module.group();
    let mut operators = Vec::new();
    for (prefix, family) in [("pi", &module.pi), ("pibar", &module.pibar)] {
        for (offset, m) in family.iter().enumerate() {
            let mut triplets = Vec::new();
            for r in 0..m.rows() {
                for c in 0..m.cols() {
                    let value = m.get(r, c);
                    if value != 0 {
                        triplets.push((r, c, value));
                    }
                }
            }
            operators.push(SparseOperator {
                name: format!("{prefix}{}", offset + 1),
                triplets,
            });
        }
    }
    let dump = ModuleDump {
        w: group.format_elem(module.w()),
        basis: module
            .basis()
            .iter()
            .map(|&u| group.format_elem(u))
            .collect(),
        operators,
    };
    serde_json::to_string_pretty(&dump).expect("serializable dump")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{create_group, subset_from_labels};
    use crate::heckeops::{bihecke_monoid, e_idempotent, ClosureOptions};

    fn a3() -> Arc<CoxeterGroup> {
        create_group("A3").unwrap()
    }

    fn elem(group: &CoxeterGroup, text: &str) -> Elem {
        group.parse_elem(text).unwrap()
    }

    #[test]
    fn translation_module_dimensions() {
        let g = a3();
        assert_eq!(translation_module(&g, elem(&g, "4312")).dim(), 12);
        assert_eq!(translation_module(&g, g.identity()).dim(), 1);
        assert_eq!(translation_module(&g, g.w0()).dim(), 24);
    }

    #[test]
    fn identity_module_is_annihilated() {
        // Both operator families act by zero on T_1: the only basis element
        // is f_1 and every us_i leaves the one-point interval, so both
        // case analyses truncate.  (trans_of of the monoid identity below
        // confirms this is what the monoid itself does.)
        let g = a3();
        let t = translation_module(&g, g.identity());
        for i in 1..=3 {
            assert!(t.pi(i).unwrap().entries().iter().all(|&x| x == 0));
            assert!(t.pibar(i).unwrap().entries().iter().all(|&x| x == 0));
        }
    }

    #[test]
    fn w0_module_is_the_regular_action() {
        let g = a3();
        let t = translation_module(&g, g.w0());
        for i in 1..=3u32 {
            let pi_table = generator(&g, OpKind::Antisort, i).unwrap();
            let pibar_table = generator(&g, OpKind::Sort, i).unwrap();
            for (pos, &u) in t.basis().iter().enumerate() {
                let row = t.pi(i).unwrap().row(pos);
                let target = t.position(pi_table.apply(u)).unwrap();
                assert_eq!(row[target], 1);
                assert_eq!(row.iter().sum::<i64>(), 1);
                let row = t.pibar(i).unwrap().row(pos);
                let target = t.position(pibar_table.apply(u)).unwrap();
                assert_eq!(row[target], 1);
            }
        }
    }

    #[test]
    fn s_ops_move_or_negate() {
        let g = a3();
        let w = elem(&g, "4312");
        let t = translation_module(&g, w);
        for i in 1..=3u32 {
            let s = t.s_op(i).unwrap();
            for (pos, &u) in t.basis().iter().enumerate() {
                let usi = g.right_mult_gen(u, i);
                match t.position(usi) {
                    Some(target) => {
                        assert_eq!(s.get(pos, target), 1);
                        assert_eq!(s.row(pos).iter().map(|x| x.abs()).sum::<i64>(), 1);
                    }
                    None => assert_eq!(s.get(pos, pos), -1),
                }
            }
        }
    }

    #[test]
    fn left_and_right_s_ops_commute_without_truncation() {
        // On T_{w0} no us_i ever leaves the interval, so the left and right
        // actions are plain (signless) multiplications and commute.  (On a
        // proper interval they need not: the −1 truncation cases land on
        // different basis vectors depending on the order of application.)
        let g = a3();
        let t = translation_module(&g, g.w0());
        for i in 1..=3u32 {
            for j in 1..=3u32 {
                let left = t.left_s_op(i).unwrap();
                let right = t.s_op(j).unwrap();
                assert_eq!(left.mul(&right), right.mul(&left));
            }
        }
    }

    #[test]
    fn braid_relations_hold_on_t_w() {
        let g = a3();
        for text in ["4312", "3412", "2143"] {
            let t = translation_module(&g, elem(&g, text));
            let p1 = t.pi(1).unwrap();
            let p2 = t.pi(2).unwrap();
            let p3 = t.pi(3).unwrap();
            assert_eq!(
                p1.mul(p2).mul(p1),
                p2.mul(p1).mul(p2),
                "adjacent braid at {text}"
            );
            assert_eq!(p1.mul(p3), p3.mul(p1), "commuting braid at {text}");
        }
    }

    #[test]
    fn p_submodule_dimensions() {
        let g = a3();
        let w = elem(&g, "4312");
        let t = translation_module(&g, w);
        let cases = [
            (subset_from_labels(&[3]), 6, true),
            (subset_from_labels(&[1, 2]), 4, true),
            (subset_from_labels(&[1, 2, 3]), 1, true),
            (subset_from_labels(&[2]), 8, false),
            (0, 12, true),
        ];
        for (j, dim, stable) in cases {
            let p = p_submodule(&t, j);
            assert_eq!(p.dim(), dim, "J = {j:b}");
            assert_eq!(p.is_stable(), stable, "J = {j:b}");
        }

        let g2 = create_group("A2").unwrap();
        let t2 = translation_module(&g2, elem(&g2, "231"));
        let p = p_submodule(&t2, subset_from_labels(&[1, 2]));
        assert_eq!(p.dim(), 1);
        assert!(p.is_stable());
    }

    #[test]
    fn p_submodule_stability_characterizes_reduced_left_blocks() {
        let g = a3();
        for w in g.elements() {
            let t = translation_module(&g, w);
            let reduced = reduced_left_blocks(&g, w);
            for j in g.subsets() {
                let p = p_submodule(&t, j);
                if reduced.contains(&j) {
                    assert!(p.is_stable(), "w = {}, reduced J = {j:b}", g.format_elem(w));
                } else if crate::blocks::is_left_block(&g, w, j) {
                    // Non-reduced left blocks are not constrained either way.
                } else {
                    let left_reduced = g.subsets().all(|sub| {
                        sub == j
                            || sub & j != sub
                            || g.parabolic_decompose(w, sub, Side::Left).representative
                                != g.parabolic_decompose(w, j, Side::Left).representative
                    });
                    if left_reduced {
                        assert!(
                            !p.is_stable(),
                            "w = {}, non-block J = {j:b}",
                            g.format_elem(w)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn p_submodule_filtration() {
        let g = a3();
        let w = elem(&g, "4312");
        let t = translation_module(&g, w);
        for j in g.subsets() {
            let vectors = p_submodule(&t, j).vectors().to_vec();
            for sub in g.subsets() {
                if sub & j != sub {
                    continue;
                }
                // P_J ⊆ P_sub whenever sub ⊆ J.
                let mut outer = RowSpace::new(t.dim());
                for v in p_submodule(&t, sub).vectors() {
                    outer.insert_i64(v);
                }
                for v in &vectors {
                    assert!(outer.contains(&crate::linalg::i64_row_to_rational(v)));
                }
            }
        }
    }

    #[test]
    fn trans_of_agrees_with_translation_module_on_a2() {
        let g2 = create_group("A2").unwrap();
        let closure = bihecke_monoid(&g2, ClosureOptions::default()).unwrap();
        for w in g2.elements() {
            let e = e_idempotent(&g2, w);
            let t = trans_of(&e, &closure).unwrap();
            let expected = g2.multiply(g2.inverse(w), g2.w0());
            assert_eq!(t.w(), expected, "w = {}", g2.format_elem(w));
            assert_eq!(t.dim(), g2.weak_interval(expected, Side::Right).len());
        }
        // The monoid identity: full rank, type w0, 1-dimensional module.
        let identity = FunctionTable::identity(&g2);
        let t = trans_of(&identity, &closure).unwrap();
        assert_eq!(t.dim(), 1);
        assert_eq!(t.w(), g2.identity());

        // Absent function → domain error.
        let other = create_group("A3").unwrap();
        let foreign = FunctionTable::identity(&other);
        assert!(matches!(
            trans_of(&foreign, &closure),
            Err(Error::Domain(_))
        ));
    }

    #[test]
    fn trans_of_equal_types_give_equal_matrices() {
        let g2 = create_group("A2").unwrap();
        let closure = bihecke_monoid(&g2, ClosureOptions::default()).unwrap();
        let mut by_type: HashMap<Elem, Vec<u32>> = HashMap::new();
        for i in 0..closure.size() as u32 {
            let t = analyze(closure.element(i)).type_elem;
            by_type.entry(t).or_default().push(i);
        }
        for (_, members) in by_type {
            let first = trans_of(closure.element(members[0]), &closure).unwrap();
            for &other in &members[1..] {
                let t = trans_of(closure.element(other), &closure).unwrap();
                assert_eq!(t.basis(), first.basis());
                for i in 1..=2u32 {
                    assert_eq!(t.pi(i).unwrap(), first.pi(i).unwrap());
                    assert_eq!(t.pibar(i).unwrap(), first.pibar(i).unwrap());
                }
            }
        }
    }

    #[test]
    fn codescent_graph_shapes() {
        let g = a3();
        let trivial = codescent_graph(&g, g.identity()).unwrap();
        assert_eq!(trivial.vertices().len(), 1);
        assert!(trivial.edges().is_empty());

        let graph = codescent_graph(&g, elem(&g, "4312")).unwrap();
        assert_eq!(graph.vertices().len(), 12);
        // Underlying undirected graph = Hasse diagram of the interval: every
        // adjacent pair carries at least one direction.
        let interval = graph.vertices().to_vec();
        for (pos, &u) in interval.iter().enumerate() {
            for i in 1..=3u32 {
                let v = g.right_mult_gen(u, i);
                if let Some(vp) = interval.iter().position(|&x| x == v) {
                    assert!(
                        graph.edges().contains(&(pos, vp)) || graph.edges().contains(&(vp, pos)),
                        "pair ({}, {})",
                        g.format_elem(u),
                        g.format_elem(v)
                    );
                }
            }
        }
    }

    #[test]
    fn codescent_graph_at_w0_orients_by_descents() {
        let g2 = create_group("A2").unwrap();
        let graph = codescent_graph(&g2, g2.w0()).unwrap();
        for &(a, b) in graph.edges() {
            let u = graph.vertices()[a];
            let v = graph.vertices()[b];
            let dv = g2.left_descents(v);
            let du = g2.left_descents(u);
            assert_eq!(dv & !du, 0, "D_L({}) ⊆ D_L({})", g2.format_elem(v), g2.format_elem(u));
        }
    }

    #[test]
    fn whecke_dims_frozen_values() {
        let g2 = create_group("A2").unwrap();
        assert_eq!(whecke_dim_count(&g2, g2.identity()).unwrap(), 1);
        assert_eq!(whecke_dim_count(&g2, g2.w0()).unwrap(), 19);
        assert_eq!(whecke_dim_count(&g2, elem(&g2, "231")).unwrap(), 7);
        let g = a3();
        assert_eq!(whecke_dim_count(&g, elem(&g, "4312")).unwrap(), 79);
    }

    #[test]
    fn whecke_closure_matches_count_on_a2() {
        let g2 = create_group("A2").unwrap();
        for w in g2.elements() {
            assert_eq!(
                whecke_dim_closure(&g2, w, 64).unwrap(),
                whecke_dim_count(&g2, w).unwrap(),
                "w = {}",
                g2.format_elem(w)
            );
        }
    }

    #[test]
    fn whecke_closure_on_4312() {
        let g = a3();
        assert_eq!(whecke_dim_closure(&g, elem(&g, "4312"), 64).unwrap(), 79);
        assert!(matches!(
            whecke_dim_closure(&g, elem(&g, "4312"), 4),
            Err(Error::Resource { partial: 12, budget: 4, .. })
        ));
    }

    #[test]
    fn simple_dims_frozen_values() {
        let g = a3();
        let dims = simple_dims(&g, elem(&g, "4312")).unwrap();
        assert_eq!(dims.top(), 3);
        let class: Vec<String> = dims
            .classes()
            .iter()
            .find(|(j, _)| *j == 0)
            .unwrap()
            .1
            .iter()
            .map(|&u| g.format_elem(u))
            .collect();
        assert_eq!(class, vec!["1432", "4132", "4312"]);
        assert_eq!(simple_dims(&g, elem(&g, "3412")).unwrap().top(), 5);
        assert_eq!(simple_dims(&g, elem(&g, "4123")).unwrap().top(), 3);
        assert_eq!(simple_dims(&g, elem(&g, "1234")).unwrap().top(), 1);
        assert_eq!(simple_dims(&g, g.identity()).unwrap().top(), 1);
    }

    #[test]
    fn simple_dims_partition_interval() {
        let g = a3();
        for w in g.elements() {
            let dims = simple_dims(&g, w).unwrap();
            let total: usize = dims.classes().iter().map(|(_, c)| c.len()).sum();
            assert_eq!(total, g.weak_interval(w, Side::Right).len());
            // Class keys are reduced left blocks of w.
            let reduced = reduced_left_blocks(&g, w);
            for (j, _) in dims.classes() {
                assert!(reduced.contains(j), "w = {}, J = {j:b}", g.format_elem(w));
            }
        }
    }

    #[test]
    fn simple_module_of_4312() {
        let g = a3();
        let s = simple_module_action(&g, elem(&g, "4312")).unwrap();
        assert_eq!(s.dim(), 3);
        let basis: Vec<String> = s.basis().iter().map(|&u| g.format_elem(u)).collect();
        assert_eq!(basis, vec!["1432", "4132", "4312"]);
        // Idempotence survives the quotient.
        for m in s.ops() {
            assert_eq!(m.mul(m), *m);
        }
        // Braid relation on the quotient.
        let p1 = s.pi(1);
        let p2 = s.pi(2);
        assert_eq!(p1.mul(p2).mul(p1), p2.mul(p1).mul(p2));
    }

    #[test]
    fn simple_module_of_identity() {
        let g = a3();
        let s = simple_module_action(&g, g.identity()).unwrap();
        assert_eq!(s.dim(), 1);
        for m in s.ops() {
            assert!(m.is_zero());
        }
    }

    #[test]
    fn module_json_shape() {
        let g2 = create_group("A2").unwrap();
        let t = translation_module(&g2, elem(&g2, "231"));
        let value: serde_json::Value = serde_json::from_str(&module_json(&t)).unwrap();
        assert_eq!(value["w"], "231");
        assert_eq!(value["basis"].as_array().unwrap().len(), 3);
        assert_eq!(value["operators"].as_array().unwrap().len(), 4);
        assert_eq!(value["operators"][0]["name"], "pi1");
    }
}
