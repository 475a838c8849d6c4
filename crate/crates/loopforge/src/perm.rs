//! Permutations of `0..n` and finitely generated permutation groups.
//!
//! Permutations act on the **right** and compose **left to right**:
//! `x.apply(&p.then(&q)) == q.apply(p.apply(x))`. Every formula in the
//! rest of the crate is written against this convention.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// A bijection of the labels `0..n`, stored as its image array:
/// `image[x]` is the result of applying the permutation to `x`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(transparent)]
pub struct Permutation {
    image: Vec<usize>,
}

impl Permutation {
    /// The identity permutation on `0..n`.
    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n).collect(),
        }
    }

    /// Builds a permutation from an image array, checking that it is a
    /// bijection of `0..image.len()`.
    pub fn from_images(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for (x, &y) in image.iter().enumerate() {
            if y >= n {
                return Err(Error::NotPermutation {
                    reason: format!("image {y} of {x} is out of range for degree {n}"),
                });
            }
            if seen[y] {
                return Err(Error::NotPermutation {
                    reason: format!("image {y} appears more than once"),
                });
            }
            seen[y] = true;
        }
        Ok(Permutation { image })
    }

    /// Parses one line of whitespace-separated images.
    ///
    /// `line_no` is used only to report errors at the right input line.
    pub fn parse_line(line: &str, line_no: usize) -> Result<Self> {
        let images = line
            .split_whitespace()
            .map(|tok| {
                tok.parse::<usize>().map_err(|_| Error::Parse {
                    line: line_no,
                    message: format!("`{tok}` is not a nonnegative integer"),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if images.is_empty() {
            return Err(Error::Parse {
                line: line_no,
                message: "expected a permutation, found an empty line".into(),
            });
        }
        Permutation::from_images(images).map_err(|e| Error::Parse {
            line: line_no,
            message: e.to_string(),
        })
    }

    /// Number of labels the permutation acts on.
    pub fn degree(&self) -> usize {
        self.image.len()
    }

    /// Applies the permutation to a single label.
    ///
    /// # Panics
    /// Panics if `x` is out of range; labels always come from a validated
    /// table of the same degree.
    pub fn apply(&self, x: usize) -> usize {
        self.image[x]
    }

    /// The underlying image array.
    pub fn images(&self) -> &[usize] {
        &self.image
    }

    /// Left-to-right composition: apply `self`, then `other`.
    ///
    /// # Panics
    /// Panics if the degrees differ; use [`product`] when the inputs have
    /// not already been validated against one context.
    pub fn then(&self, other: &Permutation) -> Permutation {
        assert_eq!(
            self.degree(),
            other.degree(),
            "composed permutations must have equal degrees"
        );
        Permutation {
            image: self.image.iter().map(|&y| other.image[y]).collect(),
        }
    }

    /// The inverse permutation.
    pub fn inverse(&self) -> Permutation {
        let mut image = vec![0; self.image.len()];
        for (x, &y) in self.image.iter().enumerate() {
            image[y] = x;
        }
        Permutation { image }
    }

    /// `self` composed with itself `k` times; `pow(0)` is the identity.
    pub fn pow(&self, k: usize) -> Permutation {
        let mut acc = Permutation::identity(self.degree());
        for _ in 0..k {
            acc = acc.then(self);
        }
        acc
    }

    /// Whether this is the identity permutation.
    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(x, &y)| x == y)
    }

    /// Multiplicative order: the least `k >= 1` with `self.pow(k)` trivial.
    pub fn order(&self) -> usize {
        // The order is the least common multiple of the cycle lengths.
        let mut seen = vec![false; self.degree()];
        let mut order: usize = 1;
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.image[x];
                len += 1;
            }
            order = lcm(order, len);
        }
        order
    }

    /// The cycles of length at least two, each rotated to start at its
    /// smallest label, listed by smallest label.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut cycles = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x);
                x = self.image[x];
            }
            if cycle.len() > 1 {
                cycles.push(cycle);
            }
        }
        cycles
    }
}

impl fmt::Display for Permutation {
    /// Cycle notation with fixed points omitted; the identity prints as `()`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (i, x) in cycle.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    if a == 0 || b == 0 {
        0
    } else {
        a / gcd(a, b) * b
    }
}

/// Left-to-right product of a nonempty sequence of permutations.
///
/// All factors must share one degree; mixed degrees and empty sequences
/// are reported as errors rather than guessed around.
pub fn product(factors: &[Permutation]) -> Result<Permutation> {
    let first = factors.first().ok_or(Error::EmptyProduct)?;
    let mut acc = Permutation::identity(first.degree());
    for p in factors {
        if p.degree() != first.degree() {
            return Err(Error::DegreeMismatch {
                left: first.degree(),
                right: p.degree(),
            });
        }
        acc = acc.then(p);
    }
    Ok(acc)
}

/// All permutations of `0..n` that fix the label `fixed`, in lexicographic
/// order of their image arrays. There are `(n-1)!` of them.
///
/// # Panics
/// Panics if `fixed >= n`.
pub fn permutations_fixing(n: usize, fixed: usize) -> Vec<Permutation> {
    assert!(fixed < n, "fixed label out of range");
    let mut result = Vec::new();
    let mut image = vec![usize::MAX; n];
    image[fixed] = fixed;
    let mut used = vec![false; n];
    used[fixed] = true;
    fill_images(&mut image, &mut used, 0, &mut result);
    result
}

fn fill_images(
    image: &mut Vec<usize>,
    used: &mut Vec<bool>,
    pos: usize,
    out: &mut Vec<Permutation>,
) {
    let n = image.len();
    if pos == n {
        out.push(Permutation {
            image: image.clone(),
        });
        return;
    }
    if image[pos] != usize::MAX {
        // This slot is pinned to the fixed point.
        fill_images(image, used, pos + 1, out);
        return;
    }
    for y in 0..n {
        if !used[y] {
            image[pos] = y;
            used[y] = true;
            fill_images(image, used, pos + 1, out);
            image[pos] = usize::MAX;
            used[y] = false;
        }
    }
}

/// An ordered triple of permutations `(a, b, c)` of one degree, the raw
/// data of an isotopism check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MappingTriple {
    pub a: Permutation,
    pub b: Permutation,
    pub c: Permutation,
}

impl MappingTriple {
    /// Builds a triple, checking that all three degrees agree.
    pub fn new(a: Permutation, b: Permutation, c: Permutation) -> Result<Self> {
        if a.degree() != b.degree() {
            return Err(Error::DegreeMismatch {
                left: a.degree(),
                right: b.degree(),
            });
        }
        if a.degree() != c.degree() {
            return Err(Error::DegreeMismatch {
                left: a.degree(),
                right: c.degree(),
            });
        }
        Ok(MappingTriple { a, b, c })
    }

    /// The identity triple on `0..n`.
    pub fn identity(n: usize) -> Self {
        MappingTriple {
            a: Permutation::identity(n),
            b: Permutation::identity(n),
            c: Permutation::identity(n),
        }
    }

    /// Common degree of the three components.
    pub fn degree(&self) -> usize {
        self.a.degree()
    }

    /// Parses three permutation lines (one per component).
    ///
    /// Blank lines and `#` comments are skipped.
    pub fn parse_str(src: &str) -> Result<Self> {
        let mut perms = Vec::new();
        for (idx, raw) in src.lines().enumerate() {
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            perms.push(Permutation::parse_line(line, idx + 1)?);
        }
        if perms.len() != 3 {
            return Err(Error::Parse {
                line: src.lines().count(),
                message: format!("expected exactly 3 permutation lines, found {}", perms.len()),
            });
        }
        let c = perms.pop().expect("length checked");
        let b = perms.pop().expect("length checked");
        let a = perms.pop().expect("length checked");
        MappingTriple::new(a, b, c)
    }
}

impl fmt::Display for MappingTriple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

/// Drops a trailing `# ...` comment and surrounding whitespace.
pub(crate) fn strip_comment(line: &str) -> &str {
    match line.find('#') {
        Some(pos) => line[..pos].trim(),
        None => line.trim(),
    }
}

/// A finite permutation group stored by its full, lexicographically sorted
/// element list.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
}

impl PermGroup {
    /// The trivial group on `0..n`.
    pub fn trivial(n: usize) -> Self {
        PermGroup {
            degree: n,
            generators: Vec::new(),
            elements: vec![Permutation::identity(n)],
        }
    }

    /// Closes a nonempty generating set under products.
    ///
    /// The budget defaults to `degree!`, the order of the full symmetric
    /// group, which no closure can exceed.
    pub fn close(generators: &[Permutation]) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyProduct)?;
        PermGroup::close_with_budget(generators, factorial_saturating(first.degree()))
    }

    /// Closes a generating set under products, erroring out if more than
    /// `budget` elements appear.
    pub fn close_with_budget(generators: &[Permutation], budget: usize) -> Result<Self> {
        let first = generators.first().ok_or(Error::EmptyProduct)?;
        let degree = first.degree();
        for g in generators {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch {
                    left: degree,
                    right: g.degree(),
                });
            }
        }

        // Breadth-first closure under right multiplication by generators.
        // A finite set of permutations closed under products contains the
        // inverses too, so this reaches the whole generated group.
        let mut seen: BTreeSet<Permutation> = BTreeSet::new();
        let mut queue: VecDeque<Permutation> = VecDeque::new();
        let identity = Permutation::identity(degree);
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    if seen.len() > budget {
                        return Err(Error::ClosureBudgetExceeded { budget });
                    }
                    queue.push_back(q);
                }
            }
        }

        Ok(PermGroup {
            degree,
            generators: generators.to_vec(),
            elements: seen.into_iter().collect(),
        })
    }

    /// Number of labels the group acts on.
    pub fn degree(&self) -> usize {
        self.degree
    }

    /// Number of elements.
    pub fn size(&self) -> usize {
        self.elements.len()
    }

    /// The generating set the group was built from.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// All elements in lexicographic order of their image arrays.
    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    /// Membership test by binary search over the sorted element list.
    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.elements.binary_search(p).is_ok()
    }

    /// Whether the two groups have exactly the same elements.
    pub fn same_elements(&self, other: &PermGroup) -> bool {
        self.elements == other.elements
    }

    /// Whether every pair of elements commutes.
    pub fn is_abelian(&self) -> bool {
        // Checking generators alone would do, but the element lists here
        // are small enough that the direct check costs nothing.
        self.elements
            .iter()
            .enumerate()
            .all(|(i, p)| self.elements[i + 1..].iter().all(|q| p.then(q) == q.then(p)))
    }

    /// Whether every element squares to the identity.
    pub fn is_boolean(&self) -> bool {
        self.elements.iter().all(|p| p.then(p).is_identity())
    }
}

fn factorial_saturating(n: usize) -> usize {
    (1..=n).fold(1usize, |acc, k| acc.saturating_mul(k))
}
