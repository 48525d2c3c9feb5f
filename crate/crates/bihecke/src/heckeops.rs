//! Function-monoid layer: the bubble antisorting operators `pi_i` and bubble
//! sorting operators `pib_i` as explicit function tables on `W`, their
//! compositions, breadth-first monoid closure (the biHecke monoid), omega
//! powers, rank/type analysis, and the family of idempotents `e_w`.
//!
//! Composition is in right-action order throughout: `w.(fg) = (w.f).g`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::coxeter::{CoxeterGroup, Elem};
use crate::error::{Error, Result};

/// A total map `W -> W`, stored as the image sequence over canonical indices.
#[derive(Clone)]
pub struct FunctionTable {
    group: Arc<CoxeterGroup>,
    img: Vec<Elem>,
}

impl PartialEq for FunctionTable {
    fn eq(&self, other: &Self) -> bool {
        self.group.descriptor() == other.group.descriptor() && self.img == other.img
    }
}

impl Eq for FunctionTable {}

impl fmt::Debug for FunctionTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let images: Vec<String> = self
            .img
            .iter()
            .map(|&v| self.group.format_elem(v))
            .collect();
        write!(f, "FunctionTable[{}]", images.join(","))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OpKind {
    /// `pi_i`: fixes `w` when `i` is already a right descent, else applies `s_i`.
    Antisort,
    /// `pib_i`: applies `s_i` when `i` is a right descent, else fixes `w`.
    Sort,
}

impl FunctionTable {
    pub fn identity(group: &Arc<CoxeterGroup>) -> FunctionTable {
        FunctionTable {
            group: Arc::clone(group),
            img: group.elements().collect(),
        }
    }

    pub fn from_images(group: &Arc<CoxeterGroup>, img: Vec<Elem>) -> Result<FunctionTable> {
        if img.len() != group.order() || img.iter().any(|&v| v as usize >= group.order()) {
            return Err(Error::Domain(format!(
                "image sequence of length {} with out-of-range entries is not a map on {}",
                img.len(),
                group.descriptor()
            )));
        }
        Ok(FunctionTable {
            group: Arc::clone(group),
            img,
        })
    }

    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn apply(&self, w: Elem) -> Elem {
        self.img[w as usize]
    }

    pub fn images(&self) -> &[Elem] {
        &self.img
    }

    /// `self` then `other`: `w.(fg) = (w.f).g`.
    pub fn compose(&self, other: &FunctionTable) -> Result<FunctionTable> {
        if self.group.descriptor() != other.group.descriptor() {
            return Err(Error::Domain(format!(
                "cannot compose maps on {} and {}",
                self.group.descriptor(),
                other.group.descriptor()
            )));
        }
        Ok(FunctionTable {
            group: Arc::clone(&self.group),
            img: compose_images(&self.img, &other.img),
        })
    }

    pub fn is_idempotent(&self) -> bool {
        self.img.iter().all(|&v| self.img[v as usize] == v)
    }

    pub fn fixes_identity(&self) -> bool {
        self.img[0] == 0
    }
}

fn compose_images(f: &[Elem], g: &[Elem]) -> Vec<Elem> {
    f.iter().map(|&v| g[v as usize]).collect()
}

/// The elementary operator `pi_i` (antisort) or `pib_i` (sort).
pub fn generator(group: &Arc<CoxeterGroup>, kind: OpKind, i: u32) -> Result<FunctionTable> {
    if i == 0 || i as usize > group.rank() {
        return Err(Error::Index(format!(
            "generator label {i} outside 1..={}",
            group.rank()
        )));
    }
    let img = group
        .elements()
        .map(|w| {
            let descends = group.right_descents(w) & (1 << (i - 1)) != 0;
            let keep = match kind {
                OpKind::Antisort => descends,
                OpKind::Sort => !descends,
            };
            if keep {
                w
            } else {
                group.right_mult_gen(w, i)
            }
        })
        .collect();
    Ok(FunctionTable {
        group: Arc::clone(group),
        img,
    })
}

/// Product of elementary operators along a word of generator labels.
pub fn table_word(group: &Arc<CoxeterGroup>, kind: OpKind, word: &[u32]) -> Result<FunctionTable> {
    let mut out = FunctionTable::identity(group);
    for &letter in word {
        out = out.compose(&generator(group, kind, letter)?)?;
    }
    Ok(out)
}

/// `pi_w` (or `pib_w`): the product of elementary operators along a reduced
/// word of `w`.  The result is independent of the chosen reduced word; this is
/// asserted by evaluating a second reduced word whenever `w` has more than one
/// right descent somewhere along the peeling.
pub fn pi_of_element(group: &Arc<CoxeterGroup>, w: Elem, kind: OpKind) -> FunctionTable {
    let canonical: Vec<u32> = group.reduced_word(w).iter().map(|&l| l as u32).collect();
    let table = table_word(group, kind, &canonical).expect("valid reduced word");

    // Second reduced word: peel the largest right descent instead.
    let mut alt: Vec<u32> = Vec::with_capacity(canonical.len());
    let mut x = w;
    while x != 0 {
        let descents = group.right_descents(x);
        let i = 32 - descents.leading_zeros();
        alt.push(i);
        x = group.right_mult_gen(x, i);
    }
    alt.reverse();
    if alt != canonical {
        let check = table_word(group, kind, &alt).expect("valid reduced word");
        assert_eq!(
            table.img, check.img,
            "operator product depends on the chosen reduced word"
        );
    }
    table
}

/// Image set, fiber partition, rank, and type of a function table.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FunctionAnalysis {
    /// Sorted set of image elements.
    pub image: Vec<Elem>,
    /// Fibers (preimage classes), one per image element, in image order;
    /// each fiber sorted by canonical index.
    pub fibers: Vec<Vec<Elem>>,
    pub rank: usize,
    /// `(w0.f) * (1.f)^{-1}`.
    pub type_elem: Elem,
}

pub fn analyze(f: &FunctionTable) -> FunctionAnalysis {
    let group = f.group();
    let mut image: Vec<Elem> = f.images().to_vec();
    image.sort_unstable();
    image.dedup();
    let fibers: Vec<Vec<Elem>> = image
        .iter()
        .map(|&v| group.elements().filter(|&w| f.apply(w) == v).collect())
        .collect();
    let type_elem = group.multiply(f.apply(group.w0()), group.inverse(f.apply(group.identity())));
    FunctionAnalysis {
        rank: image.len(),
        image,
        fibers,
        type_elem,
    }
}

/// The idempotent power `f^k` with `f^{k+1} = f^k`.  Exists for every member
/// of a biHecke monoid because that monoid is aperiodic; inputs that cycle
/// (for example a nontrivial permutation table) are rejected.
pub fn omega(f: &FunctionTable) -> Result<FunctionTable> {
    let bound = f.group().order() * f.group().order();
    let mut current = f.clone();
    for _ in 0..bound {
        let next = current.compose(f)?;
        if next == current {
            return Ok(current);
        }
        current = next;
    }
    Err(Error::InvariantViolation(
        "omega power did not stabilize; input is not aperiodic".into(),
    ))
}

/// `e_w := pi_{w^{-1} w0} . pib_{w0 w}`, the unique idempotent in the biHecke
/// monoid whose image set is the left-order interval `[1, w]_L`.
pub fn e_idempotent(group: &Arc<CoxeterGroup>, w: Elem) -> FunctionTable {
    let first = group.multiply(group.inverse(w), group.w0());
    let second = group.multiply(group.w0(), w);
    pi_of_element(group, first, OpKind::Antisort)
        .compose(&pi_of_element(group, second, OpKind::Sort))
        .expect("same group")
}

/// For an idempotent of the biHecke monoid, the endpoints `(a, b)` of its
/// image set, which is always an interval `[a, b]_L` in left order.
pub fn idempotent_interval(e: &FunctionTable) -> Result<(Elem, Elem)> {
    if e.compose(e)? != *e {
        return Err(Error::Domain("idempotent_interval needs an idempotent".into()));
    }
    let group = e.group();
    let analysis = analyze(e);
    let &a = analysis
        .image
        .iter()
        .min_by_key(|&&v| group.length(v))
        .expect("nonempty image");
    let &b = analysis
        .image
        .iter()
        .max_by_key(|&&v| group.length(v))
        .expect("nonempty image");
    let interval: Vec<Elem> = group
        .elements()
        .filter(|&x| {
            group.leq(crate::coxeter::Order::LeftWeak, a, x)
                && group.leq(crate::coxeter::Order::LeftWeak, x, b)
        })
        .collect();
    if interval != analysis.image {
        return Err(Error::InvariantViolation(format!(
            "image of idempotent is not the left-order interval [{}, {}]",
            group.format_elem(a),
            group.format_elem(b)
        )));
    }
    Ok((a, b))
}

/// Two-sided-ideal comparison of idempotents by interval type: with
/// `image(e) = [a,b]_L` and `image(f) = [c,d]_L`, membership `f ∈ MeM` holds
/// exactly when `d c^{-1} <= b a^{-1}` in the two-sided weak order.
pub fn idempotent_ideal_leq(e: &FunctionTable, f: &FunctionTable) -> Result<bool> {
    let (a, b) = idempotent_interval(e)?;
    let (c, d) = idempotent_interval(f)?;
    let group = e.group();
    let e_type = group.multiply(b, group.inverse(a));
    let f_type = group.multiply(d, group.inverse(c));
    Ok(group.leq(crate::coxeter::Order::LeftRightWeak, f_type, e_type))
}

/// Options for monoid closure enumeration.
#[derive(Debug, Clone, Copy)]
pub struct ClosureOptions {
    /// Hard cap on the number of monoid elements.
    pub budget: usize,
    /// Worker threads for frontier expansion (results are identical to the
    /// single-threaded run).
    pub threads: usize,
}

impl Default for ClosureOptions {
    fn default() -> ClosureOptions {
        ClosureOptions {
            budget: 1_000_000,
            threads: 1,
        }
    }
}

/// A submonoid of function tables, fully enumerated, with deterministic
/// indices (breadth-first from the identity, generators in listed order,
/// every new level sorted by image sequence) and its right Cayley graph.
pub struct MonoidClosure {
    group: Arc<CoxeterGroup>,
    gen_names: Vec<String>,
    gen_indices: Vec<u32>,
    elements: Vec<FunctionTable>,
    index: HashMap<Vec<Elem>, u32>,
    /// `edges[i * num_generators + g]` = index of `elements[i] . generator[g]`.
    edges: Vec<u32>,
    fixes_one: Vec<bool>,
    diameter: u32,
}

impl fmt::Debug for MonoidClosure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "MonoidClosure({}, size {}, diameter {})",
            self.group.descriptor(),
            self.size(),
            self.diameter
        )
    }
}

/// The standard biHecke generator list `pi_1..pi_n, pib_1..pib_n`.
pub fn bihecke_generators(group: &Arc<CoxeterGroup>) -> Vec<(String, FunctionTable)> {
    let mut gens = Vec::with_capacity(2 * group.rank());
    for i in 1..=group.rank() as u32 {
        gens.push((
            format!("pi{i}"),
            generator(group, OpKind::Antisort, i).expect("label in range"),
        ));
    }
    for i in 1..=group.rank() as u32 {
        gens.push((
            format!("pib{i}"),
            generator(group, OpKind::Sort, i).expect("label in range"),
        ));
    }
    gens
}

/// Enumerates the submonoid generated by `generators` (the identity is always
/// included as the empty product).
pub fn closure(
    generators: &[(String, FunctionTable)],
    options: ClosureOptions,
) -> Result<MonoidClosure> {
    let group = match generators.first() {
        Some((_, table)) => Arc::clone(table.group()),
        None => return Err(Error::Domain("closure needs at least one generator".into())),
    };
    if generators
        .iter()
        .any(|(_, t)| t.group().descriptor() != group.descriptor())
    {
        return Err(Error::Domain("closure generators live on mixed groups".into()));
    }
    if options.budget == 0 {
        return Err(Error::Domain("closure budget must be positive".into()));
    }

    let gen_imgs: Vec<&[Elem]> = generators.iter().map(|(_, t)| t.images()).collect();
    let identity = FunctionTable::identity(&group);
    let mut elements = vec![identity.clone()];
    let mut index: HashMap<Vec<Elem>, u32> = HashMap::new();
    index.insert(identity.images().to_vec(), 0);
    let mut edges: Vec<u32> = Vec::new();
    let mut frontier: Vec<u32> = vec![0];
    let mut diameter = 0u32;

    while !frontier.is_empty() {
        let products = expand_frontier(&elements, &frontier, &gen_imgs, options.threads);

        let mut fresh: Vec<Vec<Elem>> = products
            .iter()
            .filter(|img| !index.contains_key(*img))
            .cloned()
            .collect();
        fresh.sort_unstable();
        fresh.dedup();
        if elements.len() + fresh.len() > options.budget {
            return Err(Error::Resource {
                context: format!("monoid closure on {}", group.descriptor()),
                partial: elements.len() + fresh.len(),
                budget: options.budget,
            });
        }
        let mut next: Vec<u32> = Vec::with_capacity(fresh.len());
        for img in fresh {
            let id = elements.len() as u32;
            index.insert(img.clone(), id);
            elements.push(FunctionTable {
                group: Arc::clone(&group),
                img,
            });
            next.push(id);
        }
        if !next.is_empty() {
            diameter += 1;
        }
        for img in &products {
            edges.push(index[img]);
        }
        frontier = next;
    }

    let gen_indices = generators
        .iter()
        .map(|(_, t)| index[t.images()])
        .collect();
    let fixes_one = elements.iter().map(|t| t.fixes_identity()).collect();
    Ok(MonoidClosure {
        group,
        gen_names: generators.iter().map(|(n, _)| n.clone()).collect(),
        gen_indices,
        elements,
        index,
        edges,
        fixes_one,
        diameter,
    })
}

/// Computes `frontier[pos] . generator[g]` for every pair, flattened as
/// `pos * num_gens + g`.  Chunked across threads; output is position-indexed,
/// so the merge order (and hence everything downstream) is thread-count
/// independent.
fn expand_frontier(
    elements: &[FunctionTable],
    frontier: &[u32],
    gen_imgs: &[&[Elem]],
    threads: usize,
) -> Vec<Vec<Elem>> {
    let num_gens = gen_imgs.len();
    let fill = |positions: &[u32], out: &mut [Vec<Elem>]| {
        for (pos, &f) in positions.iter().enumerate() {
            let f_img = elements[f as usize].images();
            for (g, gen_img) in gen_imgs.iter().enumerate() {
                out[pos * num_gens + g] = compose_images(f_img, gen_img);
            }
        }
    };

    let mut products: Vec<Vec<Elem>> = vec![Vec::new(); frontier.len() * num_gens];
    if threads <= 1 || frontier.len() < 2 * threads {
        fill(frontier, &mut products);
    } else {
        let chunk = frontier.len().div_ceil(threads);
        std::thread::scope(|scope| {
            for (positions, out) in frontier.chunks(chunk).zip(products.chunks_mut(chunk * num_gens))
            {
                scope.spawn(move || fill(positions, out));
            }
        });
    }
    products
}

/// The biHecke monoid `M(W)`: closure of all `pi_i` and `pib_i`.
pub fn bihecke_monoid(group: &Arc<CoxeterGroup>, options: ClosureOptions) -> Result<MonoidClosure> {
    closure(&bihecke_generators(group), options)
}

impl MonoidClosure {
    pub fn group(&self) -> &Arc<CoxeterGroup> {
        &self.group
    }

    pub fn size(&self) -> usize {
        self.elements.len()
    }

    pub fn diameter(&self) -> u32 {
        self.diameter
    }

    pub fn num_generators(&self) -> usize {
        self.gen_names.len()
    }

    pub fn gen_names(&self) -> &[String] {
        &self.gen_names
    }

    /// Monoid index of the `g`-th generator.
    pub fn generator_index(&self, g: usize) -> u32 {
        self.gen_indices[g]
    }

    pub fn element(&self, i: u32) -> &FunctionTable {
        &self.elements[i as usize]
    }

    pub fn elements(&self) -> &[FunctionTable] {
        &self.elements
    }

    pub fn index_of(&self, f: &FunctionTable) -> Option<u32> {
        self.index.get(f.images()).copied()
    }

    /// Right Cayley edge: index of `elements[i] . generator[g]`.
    pub fn edge(&self, i: u32, g: usize) -> u32 {
        self.edges[i as usize * self.num_generators() + g]
    }

    pub fn fixes_one(&self, i: u32) -> bool {
        self.fixes_one[i as usize]
    }

    /// Monoid index of the product `elements[i] . elements[j]`.
    pub fn product(&self, i: u32, j: u32) -> u32 {
        let table = self.elements[i as usize]
            .compose(&self.elements[j as usize])
            .expect("same group");
        self.index[table.images()]
    }

    pub fn idempotents(&self) -> Vec<u32> {
        (0..self.size() as u32)
            .filter(|&i| self.product(i, i) == i)
            .collect()
    }

    /// The right ideal `f M` as a sorted set of monoid indices, computed by
    /// reachability in the right Cayley graph.
    pub fn right_orbit(&self, start: u32) -> Vec<u32> {
        let mut seen = vec![false; self.size()];
        seen[start as usize] = true;
        let mut stack = vec![start];
        let mut out = vec![start];
        while let Some(x) = stack.pop() {
            for g in 0..self.num_generators() {
                let y = self.edge(x, g);
                if !seen[y as usize] {
                    seen[y as usize] = true;
                    stack.push(y);
                    out.push(y);
                }
            }
        }
        out.sort_unstable();
        out
    }

    /// Literal two-sided-ideal membership: `f ∈ M e M`.
    pub fn ideal_membership(&self, e: u32, f: u32) -> bool {
        // x e y over all x, y: collect Me first, then close under right action.
        let mut in_me = vec![false; self.size()];
        for x in 0..self.size() as u32 {
            in_me[self.product(x, e) as usize] = true;
        }
        let mut stack: Vec<u32> = (0..self.size() as u32).filter(|&i| in_me[i as usize]).collect();
        while let Some(x) = stack.pop() {
            for g in 0..self.num_generators() {
                let y = self.edge(x, g);
                if !in_me[y as usize] {
                    in_me[y as usize] = true;
                    stack.push(y);
                }
            }
        }
        in_me[f as usize]
    }

    /// Idempotent conjugacy classes, keyed by interval type `b a^{-1}` where
    /// the idempotent's image is `[a, b]_L`; sorted by key.
    pub fn idempotent_conjugacy_classes(&self) -> Result<Vec<(Elem, Vec<u32>)>> {
        let mut classes: Vec<(Elem, Vec<u32>)> = Vec::new();
        for i in self.idempotents() {
            let (a, b) = idempotent_interval(&self.elements[i as usize])?;
            let key = self.group.multiply(b, self.group.inverse(a));
            match classes.iter_mut().find(|(k, _)| *k == key) {
                Some((_, members)) => members.push(i),
                None => classes.push((key, vec![i])),
            }
        }
        classes.sort_by_key(|(k, _)| *k);
        Ok(classes)
    }

    /// TSV dump: one row per element with index, image sequence (element
    /// texts), rank, type, and fixes-1 flag.
    pub fn tsv(&self) -> String {
        let mut out = String::from("index\timages\trank\ttype\tfixes_one\n");
        for (i, table) in self.elements.iter().enumerate() {
            let analysis = analyze(table);
            let images: Vec<String> = table
                .images()
                .iter()
                .map(|&v| self.group.format_elem(v))
                .collect();
            out.push_str(&format!(
                "{}\t{}\t{}\t{}\t{}\n",
                i,
                images.join(","),
                analysis.rank,
                self.group.format_elem(analysis.type_elem),
                if self.fixes_one[i] { 1 } else { 0 }
            ));
        }
        out
    }

    /// Right Cayley graph in DOT format, edges labeled by generator name.
    pub fn cayley_dot(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!(
            "digraph \"cayley {}\" {{\n",
            self.group.descriptor()
        ));
        for i in 0..self.size() {
            out.push_str(&format!("  n{i} [label=\"{i}\"];\n"));
        }
        for i in 0..self.size() as u32 {
            for g in 0..self.num_generators() {
                out.push_str(&format!(
                    "  n{} -> n{} [label=\"{}\"];\n",
                    i,
                    self.edge(i, g),
                    self.gen_names[g]
                ));
            }
        }
        out.push_str("}\n");
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coxeter::{create_group, Order};

    fn a2() -> Arc<CoxeterGroup> {
        create_group("A2").unwrap()
    }

    fn texts(group: &CoxeterGroup, elems: &[Elem]) -> Vec<String> {
        elems.iter().map(|&e| group.format_elem(e)).collect()
    }

    #[test]
    fn a1_generators_are_constant_maps() {
        let g = create_group("A1").unwrap();
        let pi = generator(&g, OpKind::Antisort, 1).unwrap();
        let pib = generator(&g, OpKind::Sort, 1).unwrap();
        assert_eq!(pi.images(), &[1, 1]);
        assert_eq!(pib.images(), &[0, 0]);
        assert!(generator(&g, OpKind::Sort, 2).is_err());
    }

    #[test]
    fn antisort_moves_identity_up() {
        let g = a2();
        let pi1 = generator(&g, OpKind::Antisort, 1).unwrap();
        assert_eq!(g.format_elem(pi1.apply(g.identity())), "213");
        // Generators are idempotent.
        assert_eq!(pi1.compose(&pi1).unwrap(), pi1);
    }

    #[test]
    fn pi_of_longest_element_is_constant() {
        let g = a2();
        let pi = pi_of_element(&g, g.w0(), OpKind::Antisort);
        let pib = pi_of_element(&g, g.w0(), OpKind::Sort);
        for w in g.elements() {
            assert_eq!(g.format_elem(pi.apply(w)), "321");
            assert_eq!(g.format_elem(pib.apply(w)), "123");
        }
        assert_eq!(
            pi_of_element(&g, g.identity(), OpKind::Antisort),
            FunctionTable::identity(&g)
        );
    }

    #[test]
    fn compose_order_is_right_action() {
        let g = create_group("A1").unwrap();
        let pi = generator(&g, OpKind::Antisort, 1).unwrap();
        let pib = generator(&g, OpKind::Sort, 1).unwrap();
        // pi then pib: everything lands on s1, then gets sorted to identity.
        assert_eq!(pi.compose(&pib).unwrap().images(), &[0, 0]);
        let id = FunctionTable::identity(&g);
        assert_eq!(pi.compose(&id).unwrap(), pi);
    }

    #[test]
    fn mixed_groups_rejected() {
        let f = FunctionTable::identity(&a2());
        let g = FunctionTable::identity(&create_group("A1").unwrap());
        assert!(matches!(f.compose(&g), Err(Error::Domain(_))));
    }

    #[test]
    fn a1_closure_has_three_elements() {
        let g = create_group("A1").unwrap();
        let m = bihecke_monoid(&g, ClosureOptions::default()).unwrap();
        assert_eq!(m.size(), 3);
        let images: Vec<&[Elem]> = m.elements().iter().map(|t| t.images()).collect();
        assert!(images.contains(&[0, 1].as_slice()));
        assert!(images.contains(&[0, 0].as_slice()));
        assert!(images.contains(&[1, 1].as_slice()));
    }

    #[test]
    fn budget_exhaustion_reports_partial_count() {
        let g = create_group("A1").unwrap();
        let err = bihecke_monoid(
            &g,
            ClosureOptions {
                budget: 2,
                threads: 1,
            },
        )
        .unwrap_err();
        match err {
            Error::Resource { partial, budget, .. } => {
                assert!(partial > 2);
                assert_eq!(budget, 2);
            }
            other => panic!("expected resource error, got {other:?}"),
        }
    }

    #[test]
    fn a2_closure_contains_all_pi_w_tables() {
        let g = a2();
        let m = bihecke_monoid(&g, ClosureOptions::default()).unwrap();
        for w in g.elements() {
            for kind in [OpKind::Antisort, OpKind::Sort] {
                let table = pi_of_element(&g, w, kind);
                assert!(m.index_of(&table).is_some(), "missing table for {w}");
            }
        }
    }

    #[test]
    fn closure_is_thread_count_independent() {
        let g = a2();
        let single = bihecke_monoid(&g, ClosureOptions { budget: 1_000_000, threads: 1 }).unwrap();
        let multi = bihecke_monoid(&g, ClosureOptions { budget: 1_000_000, threads: 4 }).unwrap();
        assert_eq!(single.size(), multi.size());
        for i in 0..single.size() as u32 {
            assert_eq!(single.element(i).images(), multi.element(i).images());
        }
        assert_eq!(single.edges, multi.edges);
    }

    #[test]
    fn omega_of_generator_is_generator() {
        let g = a2();
        let pi1 = generator(&g, OpKind::Antisort, 1).unwrap();
        assert_eq!(omega(&pi1).unwrap(), pi1);
        let mixed = pi1
            .compose(&generator(&g, OpKind::Sort, 2).unwrap())
            .unwrap();
        let e = omega(&mixed).unwrap();
        assert_eq!(e.compose(&e).unwrap(), e);
    }

    #[test]
    fn omega_rejects_cycling_input() {
        let g = a2();
        // The table of right multiplication by s1 is a nontrivial permutation.
        let perm = FunctionTable::from_images(
            &g,
            g.elements().map(|w| g.right_mult_gen(w, 1)).collect(),
        )
        .unwrap();
        assert!(matches!(omega(&perm), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn analysis_of_identity_and_constant() {
        let g = a2();
        let id = FunctionTable::identity(&g);
        let a = analyze(&id);
        assert_eq!(a.rank, 6);
        assert_eq!(a.type_elem, g.w0());
        let pi_w0 = pi_of_element(&g, g.w0(), OpKind::Antisort);
        let a = analyze(&pi_w0);
        assert_eq!(a.rank, 1);
        assert_eq!(a.type_elem, g.identity());
        assert_eq!(a.fibers.len(), 1);
        assert_eq!(a.fibers[0].len(), 6);
    }

    #[test]
    fn e_idempotent_edge_cases() {
        let g = a2();
        let bottom = e_idempotent(&g, g.identity());
        assert!(bottom.images().iter().all(|&v| v == 0));
        let top = e_idempotent(&g, g.w0());
        assert_eq!(top, FunctionTable::identity(&g));
    }

    #[test]
    fn e_idempotent_suite_on_a3() {
        let g = create_group("A3").unwrap();
        for w in g.elements() {
            let e = e_idempotent(&g, w);
            assert_eq!(e.compose(&e).unwrap(), e, "e_{w} not idempotent");
            assert!(e.fixes_identity());
            let analysis = analyze(&e);
            assert_eq!(
                analysis.image,
                g.weak_interval(w, crate::coxeter::Side::Left),
                "image of e_{w}"
            );
            assert_eq!(analysis.type_elem, w, "type of e_{w}");
            // Pointwise formula: e_w(u) is the Bruhat-maximum of
            // [1,u]_B ∩ [1,w]_L.
            for u in g.elements() {
                let meet: Vec<Elem> = g
                    .elements()
                    .filter(|&x| g.leq(Order::Bruhat, x, u) && g.leq(Order::LeftWeak, x, w))
                    .collect();
                let max = meet
                    .iter()
                    .copied()
                    .find(|&m| meet.iter().all(|&x| g.leq(Order::Bruhat, x, m)))
                    .expect("unique Bruhat maximum exists");
                assert_eq!(e.apply(u), max, "e_{w}({u})");
            }
        }
    }

    #[test]
    fn idempotent_interval_examples() {
        let g = a2();
        let id = FunctionTable::identity(&g);
        assert_eq!(idempotent_interval(&id).unwrap(), (g.identity(), g.w0()));
        let w = g.parse_elem("231").unwrap();
        assert_eq!(
            idempotent_interval(&e_idempotent(&g, w)).unwrap(),
            (g.identity(), w)
        );
        let not_idem = FunctionTable::from_images(
            &g,
            g.elements().map(|x| g.right_mult_gen(x, 1)).collect(),
        )
        .unwrap();
        assert!(matches!(
            idempotent_interval(&not_idem),
            Err(Error::Domain(_))
        ));
        // Constant map at s1 in A1: image interval [s1, s1].
        let g1 = create_group("A1").unwrap();
        let const_s1 = FunctionTable::from_images(&g1, vec![1, 1]).unwrap();
        assert_eq!(idempotent_interval(&const_s1).unwrap(), (1, 1));
    }

    #[test]
    fn ideal_comparison_on_a1() {
        let g = create_group("A1").unwrap();
        let e1 = e_idempotent(&g, g.identity());
        let ew0 = e_idempotent(&g, g.w0());
        assert!(!idempotent_ideal_leq(&e1, &ew0).unwrap());
        assert!(idempotent_ideal_leq(&ew0, &e1).unwrap());
        assert!(idempotent_ideal_leq(&e1, &e1).unwrap());
    }

    #[test]
    fn ideal_criterion_matches_bruteforce_on_a2() {
        let g = a2();
        let m = bihecke_monoid(&g, ClosureOptions::default()).unwrap();
        let idempotents = m.idempotents();
        for &e in &idempotents {
            for &f in &idempotents {
                let by_type =
                    idempotent_ideal_leq(m.element(e), m.element(f)).unwrap();
                let literal = m.ideal_membership(e, f);
                assert_eq!(by_type, literal, "e={e} f={f}");
            }
        }
    }

    #[test]
    fn six_conjugacy_classes_in_a2() {
        let g = a2();
        let m = bihecke_monoid(&g, ClosureOptions::default()).unwrap();
        let classes = m.idempotent_conjugacy_classes().unwrap();
        assert_eq!(classes.len(), 6);
        // Keys are exactly the group elements.
        let keys: Vec<Elem> = classes.iter().map(|(k, _)| *k).collect();
        assert_eq!(keys, g.elements().collect::<Vec<_>>());
    }

    #[test]
    fn unique_idempotent_per_image_interval_in_a2() {
        let g = a2();
        let m = bihecke_monoid(&g, ClosureOptions::default()).unwrap();
        for w in g.elements() {
            let expected = g.weak_interval(w, crate::coxeter::Side::Left);
            let with_image: Vec<u32> = m
                .idempotents()
                .into_iter()
                .filter(|&i| analyze(m.element(i)).image == expected)
                .collect();
            assert_eq!(with_image.len(), 1, "w = {}", g.format_elem(w));
            assert_eq!(
                m.element(with_image[0]),
                &e_idempotent(&g, w),
                "w = {}",
                g.format_elem(w)
            );
        }
    }

    #[test]
    fn tsv_and_dot_are_deterministic() {
        let g = create_group("A1").unwrap();
        let m = bihecke_monoid(&g, ClosureOptions::default()).unwrap();
        let tsv = m.tsv();
        assert!(tsv.starts_with("index\timages\trank\ttype\tfixes_one\n"));
        assert_eq!(tsv.lines().count(), 4);
        assert_eq!(tsv, m.tsv());
        let dot = m.cayley_dot();
        assert!(dot.contains("label=\"pi1\""));
        assert!(texts(&g, &[0]) == vec!["12"]);
    }
}
