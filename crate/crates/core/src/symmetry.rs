//! Branch-and-bound enumeration of the symmetries of a point set.
//!
//! A label permutation is a symmetry exactly when it preserves the Gram
//! matrix of the set; that combinatorial condition is equivalent to the
//! existence of an orthogonal map realizing the permutation, but needs no
//! division and no field structure. Points are integerized up front, so
//! the whole search reduces to integer equality tests against a
//! precomputed Gram table.
//!
//! The search explores prefixes of length at most `d` (the linear span's
//! dimension), pruning every prefix whose partial Gram differs from the
//! target's. At a full prefix the remaining labels are forced: each point
//! is determined by its inner products against a spanning prefix, so the
//! tail is aligned by sorting profiles, and one full Gram comparison
//! accepts or rejects the leaf.

use std::collections::{HashMap, HashSet};
use std::hash::Hash;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exact::{gram_int, integerize, rank_int, Rational};

/// A bijection on labels `0..m`, stored as its image list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(m: usize) -> Self {
        Self {
            images: (0..m).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let m = images.len();
        let mut seen = vec![false; m];
        for &i in &images {
            if i >= m || seen[i] {
                return Err(Error::Degenerate("not a bijection on labels".into()));
            }
            seen[i] = true;
        }
        Ok(Self { images })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    pub fn apply(&self, i: usize) -> usize {
        self.images[i]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    /// `(self o other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: other.images.iter().map(|&i| self.images[i]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Permutation { images }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }
}

impl std::fmt::Display for Permutation {
    /// One-line image notation, 1-based.
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.images.iter().map(|i| (i + 1).to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// The full set of Gram-preserving label permutations of a point set.
#[derive(Clone, Debug)]
pub struct SymmetryGroup {
    elements: Vec<Permutation>,
}

impl SymmetryGroup {
    /// Builds the group and verifies the group axioms: identity present,
    /// closure under composition, closure under inverse. Quadratic in the
    /// order and deliberately always on; it catches search bugs.
    pub fn from_elements(mut elements: Vec<Permutation>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::EmptyInput("symmetry group"));
        }
        elements.sort();
        elements.dedup();
        let set: HashSet<&Permutation> = elements.iter().collect();
        if !set.contains(&Permutation::identity(elements[0].len())) {
            return Err(Error::Internal("group lacks the identity".into()));
        }
        for g in &elements {
            if !set.contains(&g.inverse()) {
                return Err(Error::Internal("group not closed under inverse".into()));
            }
            for h in &elements {
                if !set.contains(&g.compose(h)) {
                    return Err(Error::Internal(
                        "group not closed under composition".into(),
                    ));
                }
            }
        }
        Ok(Self { elements })
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn degree(&self) -> usize {
        self.elements[0].len()
    }
}

/// A relabeling that puts `d` linearly independent points first (greedy by
/// fraction-free rank) followed by the rest in profile order, together with
/// `d` itself.
///
/// The returned list maps new positions to original labels.
pub fn basis_prefix(points: &[Vec<Rational>]) -> Result<(Vec<usize>, usize)> {
    let (ints, _) = integerize(points);
    let gram = gram_int(&ints);
    basis_prefix_int(&ints, &gram)
}

fn basis_prefix_int(ints: &[Vec<BigInt>], gram: &[Vec<BigInt>]) -> Result<(Vec<usize>, usize)> {
    let m = ints.len();
    let mut prefix: Vec<usize> = Vec::new();
    let mut chosen: Vec<Vec<BigInt>> = Vec::new();
    for (i, p) in ints.iter().enumerate() {
        chosen.push(p.clone());
        if rank_int(&chosen) == chosen.len() {
            prefix.push(i);
        } else {
            chosen.pop();
        }
    }
    let d = prefix.len();
    if d == 0 {
        return Err(Error::Degenerate(
            "all points are zero; no basis prefix exists".into(),
        ));
    }
    let pool: Vec<usize> = (0..m).filter(|i| !prefix.contains(i)).collect();
    let ordered_pool = order_by_profile(gram, &prefix, &pool)?;
    let mut reordering = prefix;
    reordering.extend(ordered_pool);
    Ok((reordering, d))
}

/// Sorts `pool` lexicographically by the inner-product profile against
/// `prefix`. Profiles are injective when the prefix spans the same space
/// as the full set; a duplicate profile therefore signals a violated
/// precondition.
pub fn order_by_profile(
    gram: &[Vec<BigInt>],
    prefix: &[usize],
    pool: &[usize],
) -> Result<Vec<usize>> {
    let profile = |p: usize| -> Vec<&BigInt> { prefix.iter().map(|&b| &gram[p][b]).collect() };
    let mut sorted: Vec<usize> = pool.to_vec();
    sorted.sort_by(|&a, &b| profile(a).cmp(&profile(b)).then(a.cmp(&b)));
    for w in sorted.windows(2) {
        if profile(w[0]) == profile(w[1]) {
            return Err(Error::Degenerate(
                "duplicate inner-product profiles; prefix does not span".into(),
            ));
        }
    }
    Ok(sorted)
}

/// Depth-first search for label sequences whose Gram matrix matches the
/// target's. Shared by the symmetry and congruence entry points.
struct GramSearch<'a> {
    /// Target Gram, indexed by position.
    target: &'a [Vec<BigInt>],
    /// Candidate Gram, indexed by candidate label.
    candidate: &'a [Vec<BigInt>],
    d: usize,
    first_only: bool,
    found: Vec<Vec<usize>>,
}

impl GramSearch<'_> {
    fn run(mut self) -> Vec<Vec<usize>> {
        let mut partial = Vec::with_capacity(self.d);
        let mut used = vec![false; self.candidate.len()];
        self.node(&mut partial, &mut used);
        self.found
    }

    fn node(&mut self, partial: &mut Vec<usize>, used: &mut Vec<bool>) {
        if self.first_only && !self.found.is_empty() {
            return;
        }
        if partial.len() == self.d {
            self.leaf(partial, used);
            return;
        }
        for c in 0..self.candidate.len() {
            if used[c] || !self.extends(partial, c) {
                continue;
            }
            partial.push(c);
            used[c] = true;
            self.node(partial, used);
            partial.pop();
            used[c] = false;
        }
    }

    /// Partial Gram comparison: appending candidate `c` at position
    /// `partial.len()` must reproduce the target row.
    fn extends(&self, partial: &[usize], c: usize) -> bool {
        let k = partial.len();
        if self.candidate[c][c] != self.target[k][k] {
            return false;
        }
        partial
            .iter()
            .enumerate()
            .all(|(i, &w)| self.candidate[c][w] == self.target[k][i])
    }

    /// Tail labels are forced by their profiles against the chosen prefix;
    /// align by sorting and accept on one full Gram comparison.
    fn leaf(&mut self, prefix: &[usize], used: &[bool]) {
        let m = self.candidate.len();
        let pool: Vec<usize> = (0..m).filter(|&c| !used[c]).collect();
        let profile =
            |p: usize| -> Vec<&BigInt> { prefix.iter().map(|&b| &self.candidate[p][b]).collect() };
        let mut tail = pool;
        tail.sort_by(|&a, &b| profile(a).cmp(&profile(b)).then(a.cmp(&b)));

        let mut seq = prefix.to_vec();
        seq.extend(tail);
        for i in 0..m {
            for j in i..m {
                if self.candidate[seq[i]][seq[j]] != self.target[i][j] {
                    return;
                }
            }
        }
        self.found.push(seq);
    }
}

/// All label permutations `s` with
/// `points[i] . points[j] = points[s(i)] . points[s(j)]` for every `i, j`.
///
/// Points are integerized first (uniform scaling preserves the Gram
/// equality pattern), and the result is verified to satisfy the group
/// axioms before being returned.
pub fn find_symmetries(points: &[Vec<Rational>]) -> Result<SymmetryGroup> {
    let mut seen = HashSet::new();
    for p in points {
        if !seen.insert(p.clone()) {
            return Err(Error::Degenerate(
                "symmetry search requires pairwise distinct points".into(),
            ));
        }
    }
    let (ints, _) = integerize(points);
    let gram = gram_int(&ints);
    let (rho, d) = basis_prefix_int(&ints, &gram)?;
    let m = points.len();

    // Gram indexed by reordered positions.
    let target: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| gram[rho[i]][rho[j]].clone()).collect())
        .collect();

    let sequences = GramSearch {
        target: &target,
        candidate: &target,
        d,
        first_only: false,
        found: Vec::new(),
    }
    .run();

    // A sequence acts on reordered positions; conjugate by the relabeling
    // so reported symmetries act on original labels.
    let mut elements = Vec::with_capacity(sequences.len());
    for seq in sequences {
        let mut images = vec![0; m];
        for (i, &t) in seq.iter().enumerate() {
            images[rho[i]] = rho[t];
        }
        elements.push(Permutation::from_images(images)?);
    }
    SymmetryGroup::from_elements(elements)
}

/// A label correspondence between congruent point sets: some permutation
/// `s` with `a[i] . a[j] = b[s(i)] . b[s(j)]` for all `i, j`, or `None`.
pub fn congruent(a: &[Vec<Rational>], b: &[Vec<Rational>]) -> Result<Option<Permutation>> {
    if a.len() != b.len() {
        return Ok(None);
    }
    if a.is_empty() {
        return Ok(Some(Permutation::identity(0)));
    }
    // A common scale keeps the two Gram matrices comparable.
    let mut combined: Vec<Vec<Rational>> = a.to_vec();
    combined.extend(b.iter().cloned());
    let (ints, _) = integerize(&combined);
    let (a_ints, b_ints) = ints.split_at(a.len());
    if rank_int(a_ints) != rank_int(b_ints) {
        return Ok(None);
    }
    let gram_a = gram_int(a_ints);
    let gram_b = gram_int(b_ints);
    let (rho, d) = basis_prefix_int(a_ints, &gram_a)?;
    let m = a.len();
    let target: Vec<Vec<BigInt>> = (0..m)
        .map(|i| (0..m).map(|j| gram_a[rho[i]][rho[j]].clone()).collect())
        .collect();

    let sequences = GramSearch {
        target: &target,
        candidate: &gram_b,
        d,
        first_only: true,
        found: Vec::new(),
    }
    .run();

    match sequences.into_iter().next() {
        Some(seq) => {
            let mut images = vec![0; m];
            for (i, &t) in seq.iter().enumerate() {
                images[rho[i]] = t;
            }
            Ok(Some(Permutation::from_images(images)?))
        }
        None => Ok(None),
    }
}

/// One orbit of a group action on an item list.
#[derive(Clone, Debug)]
pub struct Orbit<T> {
    /// Least member under the item ordering.
    pub representative: T,
    /// Indices into the input list, ascending.
    pub members: Vec<usize>,
}

/// Partitions `items` into orbits under the group action. The action must
/// map items back into the list; anything else is a structural error.
pub fn orbits<T, F>(group: &SymmetryGroup, items: &[T], mut action: F) -> Result<Vec<Orbit<T>>>
where
    T: Clone + Ord + Hash + Eq,
    F: FnMut(&Permutation, &T) -> T,
{
    let index: HashMap<&T, usize> = items.iter().enumerate().map(|(i, t)| (t, i)).collect();
    if index.len() != items.len() {
        return Err(Error::Degenerate("orbit items must be distinct".into()));
    }
    let mut visited = vec![false; items.len()];
    let mut result = Vec::new();
    for start in 0..items.len() {
        if visited[start] {
            continue;
        }
        let mut members = Vec::new();
        for g in group.elements() {
            let image = action(g, &items[start]);
            let Some(&idx) = index.get(&image) else {
                return Err(Error::ActionNotClosed(format!(
                    "image of item {start} is not in the item list"
                )));
            };
            if !visited[idx] {
                visited[idx] = true;
                members.push(idx);
            }
        }
        members.sort_unstable();
        let representative = members
            .iter()
            .map(|&i| items[i].clone())
            .min()
            .expect("orbit cannot be empty");
        result.push(Orbit {
            representative,
            members,
        });
    }
    Ok(result)
}
