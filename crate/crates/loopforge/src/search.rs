//! Exhaustive search over small loops: streaming enumeration of all
//! loop tables of a given order (in normalized form), isomorphism
//! classification, and a witness pipeline that filters the enumeration
//! through structural predicates and optionally attaches a fully graded
//! inner-mapping-triple instance to each surviving loop.

use std::collections::BTreeMap;
use std::ops::RangeInclusive;

use rayon::prelude::*;
use serde::Serialize;

use crate::deviation::p_vanishes_all;
use crate::error::{Error, Result};
use crate::inner::{
    classify_loop, inner_mapping, is_a_lambda, is_a_loop, is_a_mu, is_a_rho, is_cc_loop,
    is_extra_loop, InnerKind,
};
use crate::perm::{permutations_fixing, Permutation};
use crate::report::{ClassificationReport, LoopFlag};
use crate::table::LoopTable;
use crate::theorems::{analyze_inner_triple, Arrangement, GradeOptions, InnerLabels};

/// Largest order the collecting enumeration functions accept by default.
pub const DEFAULT_ENUMERATION_CAP: usize = 6;

/// Hard ceiling for any enumeration: above this the search space is out
/// of reach for exhaustive methods in this crate.
pub const MAX_ENUMERATION_ORDER: usize = 7;

/// Streaming enumerator of all normalized loop tables of one order, in
/// lexicographic order of their rows.
///
/// A normalized table has identity 0 with natural first row and column,
/// so the search fills only the interior `(n-1) x (n-1)` cells, left to
/// right and top to bottom, trying smaller values first. Every complete
/// fill is a loop table by construction.
#[derive(Debug, Clone)]
pub struct LoopEnumerator {
    order: usize,
    cells: Vec<usize>,
    /// Bitmask of values already used in each row / column.
    row_used: Vec<u32>,
    col_used: Vec<u32>,
    /// Next candidate value to try at each interior position.
    cursor: Vec<usize>,
    /// Interior positions below this index are pre-filled and never
    /// backtracked over.
    floor: usize,
    fresh: bool,
    done: bool,
}

impl LoopEnumerator {
    /// A new enumerator for the given order.
    pub fn new(order: usize) -> Result<LoopEnumerator> {
        if order == 0 {
            return Err(Error::InvalidQuery {
                message: "enumeration order must be at least 1".into(),
            });
        }
        if order > MAX_ENUMERATION_ORDER {
            return Err(Error::OrderCapExceeded {
                order,
                cap: MAX_ENUMERATION_ORDER,
                operation: "enumerate",
            });
        }
        let n = order;
        let mut cells = vec![0; n * n];
        let mut row_used = vec![0u32; n];
        let mut col_used = vec![0u32; n];
        for x in 0..n {
            // Natural first row and first column.
            cells[x] = x;
            cells[x * n] = x;
            row_used[0] |= 1 << x;
            col_used[0] |= 1 << x;
            row_used[x] |= 1 << x;
            col_used[x] |= 1 << x;
        }
        let interior = if n > 1 { (n - 1) * (n - 1) } else { 0 };
        Ok(LoopEnumerator {
            order,
            cells,
            row_used,
            col_used,
            cursor: vec![0; interior + 1],
            floor: 0,
            fresh: true,
            done: false,
        })
    }

    /// An enumerator restricted to completions of one fixed second row
    /// (used to partition the search space deterministically).
    pub(crate) fn with_second_row(order: usize, second_row: &[usize]) -> Result<LoopEnumerator> {
        let mut en = LoopEnumerator::new(order)?;
        let n = order;
        if n < 2 || second_row.len() != n || second_row[0] != 1 {
            return Err(Error::InvalidQuery {
                message: "the fixed second row must start with 1 and have full length".into(),
            });
        }
        for (j, &v) in second_row.iter().enumerate().skip(1) {
            let p = j - 1;
            if v >= n || !en.fits(p, v) {
                return Err(Error::InvalidQuery {
                    message: format!("the fixed second row is not completable at column {j}"),
                });
            }
            en.place(p, v);
            en.cursor[p] = v + 1;
        }
        en.floor = n - 1;
        Ok(en)
    }

    fn coords(&self, p: usize) -> (usize, usize) {
        let m = self.order - 1;
        (1 + p / m, 1 + p % m)
    }

    fn fits(&self, p: usize, v: usize) -> bool {
        let (i, j) = self.coords(p);
        let bit = 1u32 << v;
        self.row_used[i] & bit == 0 && self.col_used[j] & bit == 0
    }

    fn place(&mut self, p: usize, v: usize) {
        let (i, j) = self.coords(p);
        self.cells[i * self.order + j] = v;
        self.row_used[i] |= 1 << v;
        self.col_used[j] |= 1 << v;
    }

    fn unplace(&mut self, p: usize) {
        let (i, j) = self.coords(p);
        let v = self.cells[i * self.order + j];
        self.row_used[i] &= !(1 << v);
        self.col_used[j] &= !(1 << v);
    }

    /// Pops filled positions starting below `p` until one with untried
    /// candidates remains; `None` once the space is exhausted.
    fn backtrack_below(&mut self, mut p: usize) -> Option<usize> {
        loop {
            if p == self.floor {
                self.done = true;
                return None;
            }
            p -= 1;
            self.unplace(p);
            if self.cursor[p] < self.order {
                return Some(p);
            }
        }
    }

    fn emit(&self) -> LoopTable {
        let n = self.order;
        let rows: Vec<Vec<usize>> = (0..n)
            .map(|i| self.cells[i * n..(i + 1) * n].to_vec())
            .collect();
        LoopTable::from_rows(rows).expect("a completed normalized square is a loop table")
    }
}

impl Iterator for LoopEnumerator {
    type Item = LoopTable;

    fn next(&mut self) -> Option<LoopTable> {
        if self.done {
            return None;
        }
        let n = self.order;
        if n == 1 {
            self.done = true;
            return Some(self.emit());
        }
        let total = (n - 1) * (n - 1);
        let mut p = if self.fresh {
            self.fresh = false;
            self.cursor[self.floor] = 0;
            self.floor
        } else {
            // Resume after a yielded table: undo its trailing cells.
            self.backtrack_below(total)?
        };
        if self.floor == total {
            // Fully pre-filled (only possible for order 2 partitions).
            self.done = true;
            return Some(self.emit());
        }
        loop {
            let mut v = self.cursor[p];
            let mut placed = false;
            while v < n {
                if self.fits(p, v) {
                    self.place(p, v);
                    self.cursor[p] = v + 1;
                    placed = true;
                    break;
                }
                v += 1;
            }
            if placed {
                p += 1;
                if p == total {
                    return Some(self.emit());
                }
                self.cursor[p] = 0;
            } else {
                p = self.backtrack_below(p)?;
            }
        }
    }
}

fn check_collect_cap(order: usize, cap: usize) -> Result<()> {
    let cap = cap.min(MAX_ENUMERATION_ORDER);
    if order > cap {
        return Err(Error::OrderCapExceeded {
            order,
            cap,
            operation: "enumerate",
        });
    }
    Ok(())
}

/// All normalized loop tables of one order, in lexicographic order,
/// under the default order cap.
pub fn enumerate_loops(order: usize) -> Result<Vec<LoopTable>> {
    enumerate_loops_with_cap(order, DEFAULT_ENUMERATION_CAP)
}

/// As `enumerate_loops`, with an explicit cap (never above the hard
/// ceiling).
pub fn enumerate_loops_with_cap(order: usize, cap: usize) -> Result<Vec<LoopTable>> {
    check_collect_cap(order, cap)?;
    Ok(LoopEnumerator::new(order)?.collect())
}

/// Counts the loop tables of one order without storing them.
pub fn count_loops(order: usize) -> Result<u64> {
    Ok(LoopEnumerator::new(order)?.map(|_| 1u64).sum())
}

/// All full second rows a normalized table of this order can have, in
/// lexicographic order. Each starts with 1 and avoids the values its
/// columns already hold.
pub(crate) fn second_rows(order: usize) -> Vec<Vec<usize>> {
    let n = order;
    if n < 2 {
        return Vec::new();
    }
    let mut rows = Vec::new();
    let mut row = vec![1usize; n];
    let mut used = vec![false; n];
    used[1] = true;
    fill_second_row(n, 1, &mut row, &mut used, &mut rows);
    rows
}

fn fill_second_row(
    n: usize,
    j: usize,
    row: &mut Vec<usize>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
) {
    if j == n {
        out.push(row.clone());
        return;
    }
    for v in 0..n {
        // Column j already holds j (identity row) and row 1 holds 1.
        if used[v] || v == j {
            continue;
        }
        used[v] = true;
        row[j] = v;
        fill_second_row(n, j + 1, row, used, out);
        used[v] = false;
    }
}

fn thread_pool(workers: usize) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidQuery {
            message: format!("failed to build the worker pool: {e}"),
        })
}

/// Parallel variant of `enumerate_loops`: the search space is split by
/// the table's second row and the partitions are merged in order, so
/// the result is identical to the serial one. `workers == 0` uses one
/// thread per available core.
pub fn enumerate_loops_parallel(order: usize, workers: usize) -> Result<Vec<LoopTable>> {
    enumerate_loops_parallel_with_cap(order, DEFAULT_ENUMERATION_CAP, workers)
}

/// As `enumerate_loops_parallel`, with an explicit cap.
pub fn enumerate_loops_parallel_with_cap(
    order: usize,
    cap: usize,
    workers: usize,
) -> Result<Vec<LoopTable>> {
    check_collect_cap(order, cap)?;
    if order < 3 {
        return Ok(LoopEnumerator::new(order)?.collect());
    }
    let rows = second_rows(order);
    let pool = thread_pool(workers)?;
    let chunks: Result<Vec<Vec<LoopTable>>> = pool.install(|| {
        rows.par_iter()
            .map(|row| Ok(LoopEnumerator::with_second_row(order, row)?.collect()))
            .collect()
    });
    Ok(chunks?.into_iter().flatten().collect())
}

/// The lexicographically least table among all relabelings of this loop
/// that keep the identity at 0. Two loops are isomorphic exactly when
/// their canonical forms are equal.
pub fn canonical_form(g: &LoopTable) -> LoopTable {
    let base = g.normalized();
    permutations_fixing(base.order(), 0)
        .into_iter()
        .map(|sigma| {
            base.relabeled(&sigma)
                .expect("relabeling by a permutation of matching degree succeeds")
        })
        .min()
        .expect("at least the identity relabeling exists")
}

/// Whether two loops are isomorphic (by brute force over relabelings).
pub fn are_isomorphic(a: &LoopTable, b: &LoopTable) -> bool {
    a.order() == b.order() && canonical_form(a) == canonical_form(b)
}

/// One isomorphism class of loops: its canonical representative and how
/// many of the input tables fall into it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IsoClass {
    pub representative: LoopTable,
    pub size: usize,
}

/// Groups tables into isomorphism classes, ordered by their canonical
/// representatives. Class sizes sum to the number of input tables.
pub fn isomorphism_classes(loops: &[LoopTable]) -> Vec<IsoClass> {
    let mut classes: BTreeMap<LoopTable, usize> = BTreeMap::new();
    for g in loops {
        *classes.entry(canonical_form(g)).or_insert(0) += 1;
    }
    classes
        .into_iter()
        .map(|(representative, size)| IsoClass {
            representative,
            size,
        })
        .collect()
}

/// An existential condition on a loop's inner mappings.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerCondition {
    /// Some inner mapping of this family has exactly this order.
    ExponentOrder { kind: InnerKind, order: usize },
    /// Some inner mapping of this family satisfies the vanishing
    /// condition at every point.
    VanishesEverywhere { kind: InnerKind },
}

/// A search over all loops of a range of orders for those satisfying
/// every requirement.
#[derive(Debug, Clone)]
pub struct WitnessQuery {
    pub orders: RangeInclusive<usize>,
    /// Structural flags each witness must have (`true`) or lack (`false`).
    pub required: Vec<(LoopFlag, bool)>,
    pub inner_conditions: Vec<InnerCondition>,
    /// When set, each witness is searched for a fully graded
    /// inner-triple instance of this arrangement.
    pub arrangement: Option<Arrangement>,
}

/// A graded instance attached to a witness: the principal isotope used
/// as target and the labels building the arranged triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InnerTripleInstance {
    pub arrangement: Arrangement,
    /// The `(f, g)` pair of the principal isotope serving as target.
    pub isotope_at: (usize, usize),
    pub labels: InnerLabels,
}

/// One loop returned by a witness search.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub table: LoopTable,
    pub classification: ClassificationReport,
    /// A demonstrating inner-triple instance, when one was requested
    /// and exists.
    pub instance: Option<InnerTripleInstance>,
}

fn flag_holds(g: &LoopTable, flag: LoopFlag) -> bool {
    match flag {
        LoopFlag::Group => g.is_associative(),
        LoopFlag::Commutative => g.is_commutative(),
        LoopFlag::ARho => is_a_rho(g),
        LoopFlag::ALambda => is_a_lambda(g),
        LoopFlag::AMu => is_a_mu(g),
        LoopFlag::ALoop => is_a_loop(g),
        LoopFlag::Cc => is_cc_loop(g),
        LoopFlag::Extra => is_extra_loop(g),
    }
}

/// Boxed predicate over inner mappings, borrowing the table under test.
type InnerCheck<'a> = Box<dyn Fn(&Permutation) -> Result<bool> + 'a>;

/// Whether some inner mapping of the requested family witnesses the
/// condition.
pub(crate) fn satisfies_inner_condition(g: &LoopTable, cond: InnerCondition) -> Result<bool> {
    let n = g.order();
    let (kind, check): (InnerKind, InnerCheck<'_>) = match cond {
        InnerCondition::ExponentOrder { kind, order } => {
            (kind, Box::new(move |m: &Permutation| Ok(m.order() == order)))
        }
        InnerCondition::VanishesEverywhere { kind } => {
            (kind, Box::new(move |m: &Permutation| p_vanishes_all(g, m)))
        }
    };
    match kind.arity() {
        1 => {
            for x in 0..n {
                if check(&inner_mapping(g, kind, &[x])?)? {
                    return Ok(true);
                }
            }
        }
        2 => {
            for x in 0..n {
                for y in 0..n {
                    if check(&inner_mapping(g, kind, &[x, y])?)? {
                        return Ok(true);
                    }
                }
            }
        }
        arity => unreachable!("inner mappings have arity 1 or 2, not {arity}"),
    }
    Ok(false)
}

fn passes_query(g: &LoopTable, query: &WitnessQuery) -> Result<bool> {
    for &(flag, wanted) in &query.required {
        if flag_holds(g, flag) != wanted {
            return Ok(false);
        }
    }
    for &cond in &query.inner_conditions {
        if !satisfies_inner_condition(g, cond)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Searches one loop for the lexicographically first inner-triple
/// instance of the arrangement that is an isotopism onto one of the
/// loop's principal isotopes and grades with every clause passing.
fn find_instance(g: &LoopTable, arrangement: Arrangement) -> Result<Option<InnerTripleInstance>> {
    let n = g.order();
    // Precompute all inner mappings once.
    let mut rho = vec![Vec::with_capacity(n); n];
    let mut lambda = vec![Vec::with_capacity(n); n];
    let mut mu = Vec::with_capacity(n);
    for x in 0..n {
        for y in 0..n {
            rho[x].push(inner_mapping(g, InnerKind::Rho, &[x, y])?);
            lambda[x].push(inner_mapping(g, InnerKind::Lambda, &[x, y])?);
        }
        mu.push(inner_mapping(g, InnerKind::Mu, &[x])?);
    }

    for f in 0..n {
        for gg in 0..n {
            let (isotope, _) = g.principal_isotope(f, gg)?;
            if isotope == *g {
                continue;
            }
            for x in 0..n {
                for y in 0..n {
                    for u in 0..n {
                        for v in 0..n {
                            for (z, mu_z) in mu.iter().enumerate() {
                                let (a, b, c) = match arrangement {
                                    Arrangement::Rlt => (&rho[x][y], &lambda[u][v], mu_z),
                                    Arrangement::Lrt => (&lambda[x][y], &rho[u][v], mu_z),
                                    Arrangement::Trl => (mu_z, &rho[x][y], &lambda[u][v]),
                                };
                                if !isotopism_quick(g, &isotope, a, b, c) {
                                    continue;
                                }
                                let labels = InnerLabels { x, y, u, v, z };
                                let report = analyze_inner_triple(
                                    g,
                                    &isotope,
                                    arrangement,
                                    labels,
                                    GradeOptions::default(),
                                )?;
                                if report.all_pass() {
                                    return Ok(Some(InnerTripleInstance {
                                        arrangement,
                                        isotope_at: (f, gg),
                                        labels,
                                    }));
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Early-exit isotopism test against precomputed components.
fn isotopism_quick(
    g: &LoopTable,
    h: &LoopTable,
    a: &Permutation,
    b: &Permutation,
    c: &Permutation,
) -> bool {
    let n = g.order();
    for x in 0..n {
        let ax = a.apply(x);
        for y in 0..n {
            if h.mul(ax, b.apply(y)) != c.apply(g.mul(x, y)) {
                return false;
            }
        }
    }
    true
}

fn witness_from(g: LoopTable, query: &WitnessQuery) -> Result<Option<Witness>> {
    if !passes_query(&g, query)? {
        return Ok(None);
    }
    let classification = classify_loop(&g)?;
    let instance = match query.arrangement {
        Some(arrangement) => find_instance(&g, arrangement)?,
        None => None,
    };
    Ok(Some(Witness {
        table: g,
        classification,
        instance,
    }))
}

fn validate_orders(query: &WitnessQuery) -> Result<()> {
    let (start, end) = (*query.orders.start(), *query.orders.end());
    if start == 0 || start > end {
        return Err(Error::InvalidQuery {
            message: format!("invalid order range {start}..={end}"),
        });
    }
    if end > MAX_ENUMERATION_ORDER {
        return Err(Error::OrderCapExceeded {
            order: end,
            cap: MAX_ENUMERATION_ORDER,
            operation: "witness search",
        });
    }
    Ok(())
}

/// Runs the query serially over every loop of every order in range, in
/// enumeration order. An empty result means no loop qualifies; it is
/// not an error.
pub fn find_witnesses(query: &WitnessQuery) -> Result<Vec<Witness>> {
    validate_orders(query)?;
    let mut out = Vec::new();
    for order in query.orders.clone() {
        for g in LoopEnumerator::new(order)? {
            if let Some(w) = witness_from(g, query)? {
                out.push(w);
            }
        }
    }
    Ok(out)
}

/// Parallel variant of `find_witnesses`, partitioned by second row and
/// merged in order; the result is identical to the serial one.
/// `workers == 0` uses one thread per available core.
pub fn find_witnesses_with_workers(query: &WitnessQuery, workers: usize) -> Result<Vec<Witness>> {
    validate_orders(query)?;
    let pool = thread_pool(workers)?;
    let mut out = Vec::new();
    for order in query.orders.clone() {
        if order < 3 {
            for g in LoopEnumerator::new(order)? {
                if let Some(w) = witness_from(g, query)? {
                    out.push(w);
                }
            }
            continue;
        }
        let rows = second_rows(order);
        let chunks: Result<Vec<Vec<Witness>>> = pool.install(|| {
            rows.par_iter()
                .map(|row| {
                    let mut chunk = Vec::new();
                    for g in LoopEnumerator::with_second_row(order, row)? {
                        if let Some(w) = witness_from(g, query)? {
                            chunk.push(w);
                        }
                    }
                    Ok(chunk)
                })
                .collect()
        });
        out.extend(chunks?.into_iter().flatten());
    }
    Ok(out)
}
