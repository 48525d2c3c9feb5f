//! Finite Coxeter group kernel.
//!
//! Supported families: `A{r}` (the symmetric group on `r + 1` letters in
//! one-line notation) and `I2(m)` (dihedral groups, stored as rotation
//! exponent / reflection flag pairs).  A group is fully enumerated at
//! construction with deterministic canonical indices: breadth-first from the
//! identity, generators applied in increasing label order, every length layer
//! sorted lexicographically by representation.  All four classical orders
//! (left weak, right weak, two-sided weak, Bruhat) are precomputed as dense
//! relation matrices, so downstream algorithms get O(1) comparisons.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::poset::{hasse_dot, ExplicitPoset};

/// Canonical element index inside one group (0 is always the identity).
pub type Elem = u32;

/// Subset of the generator index set `I`, as a bitmask (bit `i - 1` is `s_i`).
pub type Subset = u32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    A,
    I2,
}

/// Which Coxeter group to build: `A` with `param` letters (so rank
/// `param - 1`), or `I2(param)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct GroupDescriptor {
    pub family: Family,
    pub param: u32,
}

impl GroupDescriptor {
    pub fn parse(text: &str) -> Result<GroupDescriptor> {
        let bad = || Error::Descriptor(format!("cannot parse group descriptor {text:?}"));
        if let Some(rank) = text.strip_prefix('A') {
            let rank: u32 = rank.parse().map_err(|_| bad())?;
            if rank == 0 {
                return Err(Error::Descriptor(
                    "rank 0 is not supported (A1 is the smallest A-family group)".into(),
                ));
            }
            Ok(GroupDescriptor {
                family: Family::A,
                param: rank + 1,
            })
        } else if let Some(rest) = text.strip_prefix("I2(") {
            let m: u32 = rest.strip_suffix(')').ok_or_else(bad)?.parse().map_err(|_| bad())?;
            if m < 2 {
                return Err(Error::Descriptor(format!(
                    "I2(m) requires m >= 2, got m = {m}"
                )));
            }
            Ok(GroupDescriptor {
                family: Family::I2,
                param: m,
            })
        } else {
            Err(bad())
        }
    }

    /// Number of Coxeter generators.
    pub fn rank(&self) -> usize {
        match self.family {
            Family::A => (self.param - 1) as usize,
            Family::I2 => 2,
        }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.family {
            Family::A => write!(f, "A{}", self.param - 1),
            Family::I2 => write!(f, "I2({})", self.param),
        }
    }
}

/// One of the four classical orders on a Coxeter group.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Order {
    LeftWeak,
    RightWeak,
    LeftRightWeak,
    Bruhat,
}

impl Order {
    pub const ALL: [Order; 4] = [
        Order::LeftWeak,
        Order::RightWeak,
        Order::LeftRightWeak,
        Order::Bruhat,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Order::LeftWeak => "left-weak",
            Order::RightWeak => "right-weak",
            Order::LeftRightWeak => "left-right-weak",
            Order::Bruhat => "bruhat",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Left,
    Right,
}

/// Parabolic decomposition of `w`:
/// left side `w = parabolic_part * representative` (`w_J * ^Jw`),
/// right side `w = representative * parabolic_part` (`w^K * _Kw`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ParabolicDecomposition {
    pub side: Side,
    pub subset: Subset,
    pub parabolic_part: Elem,
    pub representative: Elem,
}

/// Internal element representation: one-line notation for family A,
/// `[rotation, reflection]` for I2.
type Repr = Vec<u8>;

pub struct CoxeterGroup {
    descriptor: GroupDescriptor,
    rank: usize,
    reprs: Vec<Repr>,
    index: HashMap<Repr, Elem>,
    length: Vec<u32>,
    inverse: Vec<Elem>,
    right_mult: Vec<Elem>,
    left_mult: Vec<Elem>,
    right_desc: Vec<Subset>,
    left_desc: Vec<Subset>,
    reduced_words: Vec<Vec<u8>>,
    w0: Elem,
    leq: [Vec<bool>; 4],
}

impl fmt::Debug for CoxeterGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CoxeterGroup({}, order {})", self.descriptor, self.order())
    }
}

/// Builds the group named by a descriptor string such as `"A3"` or `"I2(5)"`.
pub fn create_group(text: &str) -> Result<Arc<CoxeterGroup>> {
    CoxeterGroup::new(GroupDescriptor::parse(text)?)
}

impl CoxeterGroup {
    pub fn new(descriptor: GroupDescriptor) -> Result<Arc<CoxeterGroup>> {
        match descriptor.family {
            Family::A => {
                if descriptor.param < 2 {
                    return Err(Error::Descriptor(
                        "family A needs at least two letters".into(),
                    ));
                }
            }
            Family::I2 => {
                if descriptor.param < 2 {
                    return Err(Error::Descriptor("I2(m) requires m >= 2".into()));
                }
            }
        }
        let rank = descriptor.rank();
        let identity: Repr = match descriptor.family {
            Family::A => (1..=descriptor.param as u8).collect(),
            Family::I2 => vec![0, 0],
        };

        // Deterministic BFS enumeration: layer by layer (= by length),
        // each layer sorted lexicographically by representation.
        let mut reprs: Vec<Repr> = vec![identity.clone()];
        let mut index: HashMap<Repr, Elem> = HashMap::new();
        index.insert(identity, 0);
        let mut length: Vec<u32> = vec![0];
        let mut frontier: Vec<Elem> = vec![0];
        let mut level: u32 = 0;
        while !frontier.is_empty() {
            level += 1;
            let mut fresh: Vec<Repr> = Vec::new();
            for &e in &frontier {
                for i in 1..=rank as u8 {
                    let product = right_gen_repr(&descriptor, &reprs[e as usize], i);
                    if !index.contains_key(&product) && !fresh.contains(&product) {
                        fresh.push(product);
                    }
                }
            }
            fresh.sort();
            frontier = Vec::with_capacity(fresh.len());
            for repr in fresh {
                let id = reprs.len() as Elem;
                index.insert(repr.clone(), id);
                reprs.push(repr);
                length.push(level);
                frontier.push(id);
            }
        }

        let size = reprs.len();
        let mut group = CoxeterGroup {
            descriptor,
            rank,
            reprs,
            index,
            length,
            inverse: Vec::with_capacity(size),
            right_mult: vec![0; size * rank],
            left_mult: vec![0; size * rank],
            right_desc: vec![0; size],
            left_desc: vec![0; size],
            reduced_words: Vec::with_capacity(size),
            w0: 0,
            leq: [
                vec![false; size * size],
                vec![false; size * size],
                vec![false; size * size],
                vec![false; size * size],
            ],
        };
        group.fill_tables()?;
        Ok(Arc::new(group))
    }

    fn fill_tables(&mut self) -> Result<()> {
        let size = self.order();
        let rank = self.rank;
        for e in 0..size {
            let repr = &self.reprs[e];
            for i in 1..=rank as u8 {
                let r = right_gen_repr(&self.descriptor, repr, i);
                let l = mult_repr(&self.descriptor, &gen_repr(&self.descriptor, i), repr);
                self.right_mult[e * rank + (i as usize - 1)] = self.index[&r];
                self.left_mult[e * rank + (i as usize - 1)] = self.index[&l];
            }
            let inv = inverse_repr(&self.descriptor, repr);
            self.inverse.push(self.index[&inv]);
        }
        for e in 0..size {
            let mut rd: Subset = 0;
            let mut ld: Subset = 0;
            for i in 0..rank {
                if self.length[self.right_mult[e * rank + i] as usize] < self.length[e] {
                    rd |= 1 << i;
                }
                if self.length[self.left_mult[e * rank + i] as usize] < self.length[e] {
                    ld |= 1 << i;
                }
            }
            self.right_desc[e] = rd;
            self.left_desc[e] = ld;
        }

        let max_len = *self.length.iter().max().expect("nonempty group");
        let top: Vec<usize> = (0..size)
            .filter(|&e| self.length[e] == max_len)
            .collect();
        match top.as_slice() {
            [w0] => self.w0 = *w0 as Elem,
            _ => {
                return Err(Error::InvariantViolation(
                    "longest element is not unique".into(),
                ))
            }
        }

        // Canonical reduced word: repeatedly peel the smallest right descent,
        // then reverse the peeled letters.
        for e in 0..size {
            let mut letters: Vec<u8> = Vec::with_capacity(self.length[e] as usize);
            let mut x = e as Elem;
            while x != 0 {
                let i = self.right_desc[x as usize].trailing_zeros() as u8 + 1;
                letters.push(i);
                x = self.right_mult[x as usize * rank + (i as usize - 1)];
            }
            letters.reverse();
            self.reduced_words.push(letters);
        }

        self.fill_orders();
        Ok(())
    }

    fn fill_orders(&mut self) {
        let size = self.order();
        let rank = self.rank;

        // Weak orders via the length-additivity criterion.
        for u in 0..size {
            for v in 0..size {
                let uinv_v = self.mult_inner(self.inverse[u], v as Elem) as usize;
                if self.length[u] + self.length[uinv_v] == self.length[v] {
                    self.leq[order_slot(Order::RightWeak)][u * size + v] = true;
                }
                let v_uinv = self.mult_inner(v as Elem, self.inverse[u]) as usize;
                if self.length[v_uinv] + self.length[u] == self.length[v] {
                    self.leq[order_slot(Order::LeftWeak)][u * size + v] = true;
                }
            }
        }

        // Two-sided weak order: reachability along length-increasing
        // one-generator steps on either side.
        for u in 0..size {
            let mut seen = vec![false; size];
            let mut stack = vec![u];
            seen[u] = true;
            while let Some(x) = stack.pop() {
                self.leq[order_slot(Order::LeftRightWeak)][u * size + x] = true;
                for i in 0..rank {
                    for y in [self.right_mult[x * rank + i], self.left_mult[x * rank + i]] {
                        let y = y as usize;
                        if self.length[y] > self.length[x] && !seen[y] {
                            seen[y] = true;
                            stack.push(y);
                        }
                    }
                }
            }
        }

        // Bruhat order by the lifting property, filled in length order:
        // for i a left descent of v, u <= v iff (s_i u <= s_i v when i is a
        // left descent of u, else u <= s_i v).
        let bruhat = order_slot(Order::Bruhat);
        for v in 0..size {
            if v == 0 {
                self.leq[bruhat][0] = true;
                continue;
            }
            let i = self.left_desc[v].trailing_zeros() as usize;
            let sv = self.left_mult[v * rank + i] as usize;
            for u in 0..size {
                let value = if self.length[u] >= self.length[v] {
                    u == v
                } else if self.left_desc[u] & (1 << i) != 0 {
                    let su = self.left_mult[u * rank + i] as usize;
                    self.leq[bruhat][su * size + sv]
                } else {
                    self.leq[bruhat][u * size + sv]
                };
                if value {
                    self.leq[bruhat][u * size + v] = true;
                }
            }
        }
    }

    fn mult_inner(&self, u: Elem, v: Elem) -> Elem {
        let repr = mult_repr(
            &self.descriptor,
            &self.reprs[u as usize],
            &self.reprs[v as usize],
        );
        self.index[&repr]
    }

    pub fn descriptor(&self) -> GroupDescriptor {
        self.descriptor
    }

    /// Group order |W|.
    pub fn order(&self) -> usize {
        self.reprs.len()
    }

    /// Number of Coxeter generators; the index set is `1..=rank()`.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order() as Elem
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn w0(&self) -> Elem {
        self.w0
    }

    pub fn length(&self, e: Elem) -> u32 {
        self.length[e as usize]
    }

    pub fn multiply(&self, u: Elem, v: Elem) -> Elem {
        self.mult_inner(u, v)
    }

    pub fn inverse(&self, e: Elem) -> Elem {
        self.inverse[e as usize]
    }

    /// `e * s_i` (generator labels are 1-based).
    pub fn right_mult_gen(&self, e: Elem, i: u32) -> Elem {
        assert!(i >= 1 && i as usize <= self.rank, "generator label {i}");
        self.right_mult[e as usize * self.rank + (i as usize - 1)]
    }

    /// `s_i * e`.
    pub fn left_mult_gen(&self, e: Elem, i: u32) -> Elem {
        assert!(i >= 1 && i as usize <= self.rank, "generator label {i}");
        self.left_mult[e as usize * self.rank + (i as usize - 1)]
    }

    pub fn generator(&self, i: u32) -> Result<Elem> {
        if i == 0 || i as usize > self.rank {
            return Err(Error::Index(format!(
                "generator label {i} outside 1..={}",
                self.rank
            )));
        }
        Ok(self.right_mult_gen(0, i))
    }

    pub fn right_descents(&self, e: Elem) -> Subset {
        self.right_desc[e as usize]
    }

    pub fn left_descents(&self, e: Elem) -> Subset {
        self.left_desc[e as usize]
    }

    pub fn descent_sets(&self, e: Elem) -> (Subset, Subset) {
        (self.left_desc[e as usize], self.right_desc[e as usize])
    }

    /// The full generator index set as a bitmask.
    pub fn full_subset(&self) -> Subset {
        (1u32 << self.rank) - 1
    }

    /// Iterates over every subset of the generator index set, in increasing
    /// bitmask order.
    pub fn subsets(&self) -> impl Iterator<Item = Subset> {
        0..(1u32 << self.rank)
    }

    pub fn leq(&self, order: Order, u: Elem, v: Elem) -> bool {
        self.leq[order_slot(order)][u as usize * self.order() + v as usize]
    }

    pub fn lt(&self, order: Order, u: Elem, v: Elem) -> bool {
        u != v && self.leq(order, u, v)
    }

    /// Canonical reduced word of `e`, as 1-based generator labels.
    pub fn reduced_word(&self, e: Elem) -> &[u8] {
        &self.reduced_words[e as usize]
    }

    /// Longest element of the standard parabolic subgroup `W_subset`.
    pub fn longest_element(&self, subset: Subset) -> Elem {
        let mut x = 0 as Elem;
        loop {
            let missing = subset & !self.right_desc[x as usize];
            if missing == 0 {
                return x;
            }
            let i = missing.trailing_zeros() + 1;
            x = self.right_mult_gen(x, i);
        }
    }

    /// Elements of the standard parabolic subgroup `W_subset`, sorted by
    /// canonical index.
    pub fn parabolic_subgroup(&self, subset: Subset) -> Vec<Elem> {
        let mut seen = vec![false; self.order()];
        seen[0] = true;
        let mut stack = vec![0 as Elem];
        let mut out = vec![0 as Elem];
        while let Some(x) = stack.pop() {
            for i in 1..=self.rank as u32 {
                if subset & (1 << (i - 1)) == 0 {
                    continue;
                }
                let y = self.right_mult_gen(x, i);
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

    /// Tests membership in `W_subset` via the canonical reduced word.
    pub fn in_parabolic(&self, e: Elem, subset: Subset) -> bool {
        self.reduced_words[e as usize]
            .iter()
            .all(|&i| subset & (1 << (i - 1)) != 0)
    }

    /// The unique decomposition `w = w_J * ^Jw` (left) or `w = w^K * _Kw`
    /// (right), where the representative part has no descents in `subset` on
    /// the relevant side.
    pub fn parabolic_decompose(&self, w: Elem, subset: Subset, side: Side) -> ParabolicDecomposition {
        match side {
            Side::Left => {
                let mut x = w;
                while self.left_desc[x as usize] & subset != 0 {
                    let i = (self.left_desc[x as usize] & subset).trailing_zeros() + 1;
                    x = self.left_mult_gen(x, i);
                }
                let part = self.multiply(w, self.inverse(x));
                debug_assert!(self.in_parabolic(part, subset));
                debug_assert_eq!(self.multiply(part, x), w);
                ParabolicDecomposition {
                    side,
                    subset,
                    parabolic_part: part,
                    representative: x,
                }
            }
            Side::Right => {
                let mut x = w;
                while self.right_desc[x as usize] & subset != 0 {
                    let i = (self.right_desc[x as usize] & subset).trailing_zeros() + 1;
                    x = self.right_mult_gen(x, i);
                }
                let part = self.multiply(self.inverse(x), w);
                debug_assert!(self.in_parabolic(part, subset));
                debug_assert_eq!(self.multiply(x, part), w);
                ParabolicDecomposition {
                    side,
                    subset,
                    parabolic_part: part,
                    representative: x,
                }
            }
        }
    }

    /// Minimal coset representative `w^K` of `w W_K`.
    pub fn min_coset_rep_right(&self, w: Elem, k: Subset) -> Elem {
        self.parabolic_decompose(w, k, Side::Right).representative
    }

    /// Minimal coset representative `^Jw` of `W_J w`.
    pub fn min_coset_rep_left(&self, w: Elem, j: Subset) -> Elem {
        self.parabolic_decompose(w, j, Side::Left).representative
    }

    /// All `u` with `u <= w` in the chosen weak order, sorted by canonical
    /// index.
    pub fn weak_interval(&self, w: Elem, side: Side) -> Vec<Elem> {
        let order = match side {
            Side::Left => Order::LeftWeak,
            Side::Right => Order::RightWeak,
        };
        self.down_set(order, w)
    }

    /// All `u` with `u <= v` in the given order, sorted by canonical index.
    pub fn down_set(&self, order: Order, v: Elem) -> Vec<Elem> {
        self.elements().filter(|&u| self.leq(order, u, v)).collect()
    }

    /// Least upper bound in left weak order.  The weak order on a finite
    /// Coxeter group is a lattice, so a unique minimal upper bound must
    /// exist; anything else is reported as an invariant violation.
    pub fn left_join(&self, u: Elem, v: Elem) -> Result<Elem> {
        let ubs: Vec<Elem> = self
            .elements()
            .filter(|&x| self.leq(Order::LeftWeak, u, x) && self.leq(Order::LeftWeak, v, x))
            .collect();
        let min_len = ubs.iter().map(|&x| self.length(x)).min().ok_or_else(|| {
            Error::InvariantViolation(format!("no common upper bound for {u}, {v}"))
        })?;
        let minimal: Vec<Elem> = ubs
            .iter()
            .copied()
            .filter(|&x| self.length(x) == min_len)
            .collect();
        match minimal.as_slice() {
            [m] if ubs.iter().all(|&x| self.leq(Order::LeftWeak, *m, x)) => Ok(*m),
            _ => Err(Error::InvariantViolation(format!(
                "minimal upper bound of {u}, {v} in left order is not unique"
            ))),
        }
    }

    /// Greatest lower bound in left weak order (dual to [`Self::left_join`]).
    pub fn left_meet(&self, u: Elem, v: Elem) -> Result<Elem> {
        let lbs: Vec<Elem> = self
            .elements()
            .filter(|&x| self.leq(Order::LeftWeak, x, u) && self.leq(Order::LeftWeak, x, v))
            .collect();
        let max_len = lbs.iter().map(|&x| self.length(x)).max().ok_or_else(|| {
            Error::InvariantViolation(format!("no common lower bound for {u}, {v}"))
        })?;
        let maximal: Vec<Elem> = lbs
            .iter()
            .copied()
            .filter(|&x| self.length(x) == max_len)
            .collect();
        match maximal.as_slice() {
            [m] if lbs.iter().all(|&x| self.leq(Order::LeftWeak, x, *m)) => Ok(*m),
            _ => Err(Error::InvariantViolation(format!(
                "maximal lower bound of {u}, {v} in left order is not unique"
            ))),
        }
    }

    /// Hasse covers of the chosen order, as `(lower, upper)` pairs sorted
    /// lexicographically.  Weak-order covers are one-generator steps; the
    /// other two orders fall back to generic cover computation.
    pub fn hasse_covers(&self, order: Order) -> Vec<(Elem, Elem)> {
        match order {
            Order::RightWeak | Order::LeftWeak => {
                let mut out = Vec::new();
                for u in self.elements() {
                    for i in 1..=self.rank as u32 {
                        let v = match order {
                            Order::RightWeak => self.right_mult_gen(u, i),
                            _ => self.left_mult_gen(u, i),
                        };
                        if self.length(v) > self.length(u) {
                            out.push((u, v));
                        }
                    }
                }
                out.sort_unstable();
                out.dedup();
                out
            }
            _ => {
                let poset = self.order_poset(order);
                poset
                    .covers()
                    .into_iter()
                    .map(|(u, v)| (u as Elem, v as Elem))
                    .collect()
            }
        }
    }

    /// The chosen order as an explicit poset on canonical indices.
    pub fn order_poset(&self, order: Order) -> ExplicitPoset {
        let n = self.order();
        ExplicitPoset::new(n, self.leq[order_slot(order)].clone())
            .expect("precomputed order relations are posets")
    }

    /// DOT rendering of the Hasse diagram of the chosen order.
    pub fn order_dot(&self, order: Order) -> String {
        let labels: Vec<String> = self.elements().map(|e| self.format_elem(e)).collect();
        let covers: Vec<(usize, usize)> = self
            .hasse_covers(order)
            .into_iter()
            .map(|(u, v)| (u as usize, v as usize))
            .collect();
        let none = vec![false; labels.len()];
        hasse_dot(
            &format!("{} {}", self.descriptor, order.name()),
            &covers,
            &labels,
            &none,
        )
    }

    pub fn format_elem(&self, e: Elem) -> String {
        let repr = &self.reprs[e as usize];
        match self.descriptor.family {
            Family::A => {
                if self.descriptor.param <= 9 {
                    repr.iter().map(|v| v.to_string()).collect()
                } else {
                    repr.iter()
                        .map(|v| v.to_string())
                        .collect::<Vec<_>>()
                        .join(",")
                }
            }
            Family::I2 => {
                let (k, flag) = (repr[0], repr[1]);
                match (k, flag) {
                    (0, 0) => "e".into(),
                    (0, 1) => "s".into(),
                    (1, 0) => "r".into(),
                    (1, 1) => "r.s".into(),
                    (k, 0) => format!("r^{k}"),
                    (k, _) => format!("r^{k}.s"),
                }
            }
        }
    }

    pub fn parse_elem(&self, text: &str) -> Result<Elem> {
        let repr = match self.descriptor.family {
            Family::A => {
                let n = self.descriptor.param;
                let values: Vec<u8> = if text.contains(',') {
                    text.split(',')
                        .map(|part| {
                            part.trim()
                                .parse::<u8>()
                                .map_err(|_| Error::Parse(format!("bad one-line entry {part:?}")))
                        })
                        .collect::<Result<_>>()?
                } else {
                    text.chars()
                        .map(|c| {
                            c.to_digit(10)
                                .map(|d| d as u8)
                                .ok_or_else(|| Error::Parse(format!("bad one-line digit {c:?}")))
                        })
                        .collect::<Result<_>>()?
                };
                let mut seen = vec![false; n as usize + 1];
                if values.len() != n as usize {
                    return Err(Error::Parse(format!(
                        "one-line notation {text:?} has {} entries, expected {n}",
                        values.len()
                    )));
                }
                for &v in &values {
                    if v == 0 || v > n as u8 || seen[v as usize] {
                        return Err(Error::Parse(format!(
                            "one-line notation {text:?} is not a permutation of 1..={n}"
                        )));
                    }
                    seen[v as usize] = true;
                }
                values
            }
            Family::I2 => {
                let m = self.descriptor.param as u8;
                let (rot_text, flag) = match text.strip_suffix(".s") {
                    Some(prefix) => (prefix, 1u8),
                    None if text == "s" => ("e", 1),
                    None => (text, 0),
                };
                let k = if rot_text == "e" {
                    0
                } else if rot_text == "r" {
                    1
                } else if let Some(expo) = rot_text.strip_prefix("r^") {
                    expo.parse::<u8>()
                        .map_err(|_| Error::Parse(format!("bad rotation exponent in {text:?}")))?
                } else {
                    return Err(Error::Parse(format!("cannot parse I2 element {text:?}")));
                };
                if k >= m {
                    return Err(Error::Parse(format!(
                        "rotation exponent {k} out of range for I2({m})"
                    )));
                }
                vec![k, flag]
            }
        };
        self.index
            .get(&repr)
            .copied()
            .ok_or_else(|| Error::Parse(format!("element {text:?} not found in {}", self.descriptor)))
    }

    /// Raw representation (one-line notation for family A).
    pub fn repr(&self, e: Elem) -> &[u8] {
        &self.reprs[e as usize]
    }

    /// Looks up a one-line permutation (family A only).
    pub fn elem_from_one_line(&self, one_line: &[u8]) -> Result<Elem> {
        if self.descriptor.family != Family::A {
            return Err(Error::Domain(
                "one-line lookup is only defined for family A".into(),
            ));
        }
        self.index
            .get(one_line)
            .copied()
            .ok_or_else(|| Error::Parse(format!("{one_line:?} is not an element")))
    }
}

fn order_slot(order: Order) -> usize {
    match order {
        Order::LeftWeak => 0,
        Order::RightWeak => 1,
        Order::LeftRightWeak => 2,
        Order::Bruhat => 3,
    }
}

fn gen_repr(desc: &GroupDescriptor, i: u8) -> Repr {
    match desc.family {
        Family::A => {
            let mut repr: Repr = (1..=desc.param as u8).collect();
            repr.swap(i as usize - 1, i as usize);
            repr
        }
        Family::I2 => {
            if i == 1 {
                vec![0, 1]
            } else {
                vec![(desc.param - 1) as u8, 1]
            }
        }
    }
}

fn right_gen_repr(desc: &GroupDescriptor, repr: &Repr, i: u8) -> Repr {
    match desc.family {
        Family::A => {
            let mut out = repr.clone();
            out.swap(i as usize - 1, i as usize);
            out
        }
        Family::I2 => mult_repr(desc, repr, &gen_repr(desc, i)),
    }
}

/// Group product `(u * v)(i) = u(v(i))`.
fn mult_repr(desc: &GroupDescriptor, u: &Repr, v: &Repr) -> Repr {
    match desc.family {
        Family::A => v.iter().map(|&p| u[p as usize - 1]).collect(),
        Family::I2 => {
            let m = desc.param as u8;
            let (a, fa) = (u[0], u[1]);
            let (b, fb) = (v[0], v[1]);
            if fa == 0 {
                vec![(a + b) % m, fb]
            } else {
                vec![(a + m - b) % m, 1 - fb]
            }
        }
    }
}

fn inverse_repr(desc: &GroupDescriptor, repr: &Repr) -> Repr {
    match desc.family {
        Family::A => {
            let mut inv = vec![0u8; repr.len()];
            for (pos, &val) in repr.iter().enumerate() {
                inv[val as usize - 1] = pos as u8 + 1;
            }
            inv
        }
        Family::I2 => {
            let m = desc.param as u8;
            if repr[1] == 1 {
                repr.clone()
            } else {
                vec![(m - repr[0]) % m, 0]
            }
        }
    }
}

/// Formats a generator subset as `{1,3}` (or `{}` when empty).
pub fn subset_text(subset: Subset) -> String {
    let labels: Vec<String> = subset_labels(subset).iter().map(u32::to_string).collect();
    format!("{{{}}}", labels.join(","))
}

/// 1-based generator labels contained in a subset bitmask, ascending.
pub fn subset_labels(subset: Subset) -> Vec<u32> {
    (0..32).filter(|b| subset & (1 << b) != 0).map(|b| b + 1).collect()
}

/// Builds a subset bitmask from 1-based generator labels.
pub fn subset_from_labels(labels: &[u32]) -> Subset {
    labels.iter().fold(0, |acc, &l| acc | (1 << (l - 1)))
}
