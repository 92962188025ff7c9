//! Finite strict partial orders over opaque element identifiers.
//!
//! The relation is stored transitively closed as two bit matrices: `below[i]`
//! holds every `j` with `i > j`, `above[i]` every `j` with `j > i`.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_ELEMENT_LIMIT: usize = 10_000;

#[derive(Debug, Clone, PartialEq, Eq)]
struct BitMatrix {
    n: usize,
    words: usize,
    bits: Vec<u64>,
}

impl BitMatrix {
    fn new(n: usize) -> Self {
        let words = n.div_ceil(64);
        BitMatrix { n, words, bits: vec![0; n * words] }
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    fn get(&self, i: usize, j: usize) -> bool {
        self.row(i)[j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, i: usize, j: usize) {
        self.bits[i * self.words + j / 64] |= 1 << (j % 64);
    }

    /// row(dst) |= row(src)
    fn or_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words;
        let (d, s) = if dst < src {
            let (lo, hi) = self.bits.split_at_mut(src * w);
            (&mut lo[dst * w..(dst + 1) * w], &hi[..w])
        } else {
            let (lo, hi) = self.bits.split_at_mut(dst * w);
            (&mut hi[..w], &lo[src * w..(src + 1) * w])
        };
        for (a, b) in d.iter_mut().zip(s) {
            *a |= *b;
        }
    }

    fn count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    fn ones(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&j| self.get(i, j))
    }

    fn transpose(&self) -> Self {
        let mut t = BitMatrix::new(self.n);
        for i in 0..self.n {
            for j in self.ones(i) {
                t.set(j, i);
            }
        }
        t
    }
}

/// A finite strict partial order `>` on `n` distinct named elements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinitePoset {
    ids: Vec<String>,
    index: HashMap<String, usize>,
    below: BitMatrix,
    above: BitMatrix,
}

/// A point of `X ∪ {-inf, +inf}`: `Top > x > Bottom` for every element `x`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ExtendedElement {
    Bottom,
    Element(String),
    Top,
}

/// A pair witnessing that a value assignment is not a utility representation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RepresentationViolation {
    /// `hi > lo` but `u(hi) <= u(lo)`.
    Succ { hi: usize, lo: usize },
    /// `x ≈ y` but `u(x) != u(y)`.
    Approx { x: usize, y: usize },
}

impl FinitePoset {
    /// Builds the transitive closure of `hi > lo` for every `(lo, hi)` edge.
    pub fn build<S: AsRef<str>>(elements: &[S], edges: &[(S, S)]) -> Result<Self> {
        Self::build_with_limit(elements, edges, DEFAULT_ELEMENT_LIMIT)
    }

    pub fn build_with_limit<S: AsRef<str>>(
        elements: &[S],
        edges: &[(S, S)],
        limit: usize,
    ) -> Result<Self> {
        if elements.len() > limit {
            return Err(Error::TooLarge { size: elements.len(), limit });
        }
        let mut ids = Vec::with_capacity(elements.len());
        let mut index = HashMap::with_capacity(elements.len());
        for e in elements {
            let id = e.as_ref().to_owned();
            if index.insert(id.clone(), ids.len()).is_some() {
                return Err(Error::DuplicateElement(id));
            }
            ids.push(id);
        }
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownElement(s.to_owned()));

        let n = ids.len();
        let mut below = BitMatrix::new(n);
        for (lo, hi) in edges {
            let lo = lookup(lo.as_ref())?;
            let hi = lookup(hi.as_ref())?;
            below.set(hi, lo);
        }
        // Warshall: after pass k, paths through {0..=k} are closed.
        for k in 0..n {
            for i in 0..n {
                if below.get(i, k) {
                    below.or_row(i, k);
                }
            }
        }
        if let Some(i) = (0..n).find(|&i| below.get(i, i)) {
            return Err(Error::Cycle(ids[i].clone()));
        }
        let above = below.transpose();
        Ok(FinitePoset { ids, index, below, above })
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn id(&self, i: usize) -> &str {
        &self.ids[i]
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.index.get(id).copied().ok_or_else(|| Error::UnknownElement(id.to_owned()))
    }

    /// `i > j`.
    pub fn gt(&self, i: usize, j: usize) -> bool {
        self.below.get(i, j)
    }

    /// `i < j`.
    pub fn lt(&self, i: usize, j: usize) -> bool {
        self.below.get(j, i)
    }

    /// Reflexive closure of `<`.
    pub fn le(&self, i: usize, j: usize) -> bool {
        i == j || self.lt(i, j)
    }

    /// `i ~ j`: neither `i > j` nor `j > i`. Every element is incomparable to itself.
    pub fn incomparable(&self, i: usize, j: usize) -> bool {
        !self.gt(i, j) && !self.gt(j, i)
    }

    pub fn incomparable_ids(&self, x: &str, y: &str) -> Result<bool> {
        Ok(self.incomparable(self.index_of(x)?, self.index_of(y)?))
    }

    /// Elements strictly below `i`.
    pub fn down_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.below.ones(i)
    }

    /// Elements strictly above `i`.
    pub fn up_set(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        self.above.ones(i)
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.above.count(i) == 0).collect()
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.below.count(i) == 0).collect()
    }

    /// `i ≈ j`: `i` and `j` are incomparable to exactly the same elements.
    ///
    /// The `~`-row of `i` is the complement of its comparable set
    /// `below[i] ∪ above[i]`, so rows agree iff comparable sets agree.
    pub fn approx(&self, i: usize, j: usize) -> bool {
        self.below
            .row(i)
            .iter()
            .zip(self.above.row(i))
            .zip(self.below.row(j).iter().zip(self.above.row(j)))
            .all(|((bi, ai), (bj, aj))| (bi | ai) == (bj | aj))
    }

    /// Partition into `≈`-classes, each sorted, classes ordered by first member.
    pub fn approx_classes(&self) -> Vec<Vec<usize>> {
        let mut key_to_class: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for i in 0..self.len() {
            let key: Vec<u64> = self
                .below
                .row(i)
                .iter()
                .zip(self.above.row(i))
                .map(|(b, a)| b | a)
                .collect();
            let c = *key_to_class.entry(key).or_insert_with(|| {
                classes.push(Vec::new());
                classes.len() - 1
            });
            classes[c].push(i);
        }
        classes
    }

    pub fn approx_class_ids(&self) -> Vec<Vec<String>> {
        self.approx_classes()
            .into_iter()
            .map(|c| c.into_iter().map(|i| self.ids[i].clone()).collect())
            .collect()
    }

    /// Longest-path depth of each element's `≈`-class in the quotient order.
    pub fn class_depths(&self) -> Vec<usize> {
        let classes = self.approx_classes();
        let mut class_of = vec![0; self.len()];
        for (c, members) in classes.iter().enumerate() {
            for &m in members {
                class_of[m] = c;
            }
        }
        // A strictly smaller class has a strictly smaller down-set, so ordering
        // representatives by down-set size is a topological order.
        let mut order: Vec<usize> = (0..classes.len()).collect();
        order.sort_by_key(|&c| self.below.count(classes[c][0]));
        let mut depth = vec![0usize; classes.len()];
        for c in order {
            let rep = classes[c][0];
            depth[c] = self.down_set(rep).map(|j| depth[class_of[j]] + 1).max().unwrap_or(0);
        }
        class_of.into_iter().map(|c| depth[c]).collect()
    }

    /// A utility representation with values in `(0, 1)`: `(d + 1) / (D + 2)` for
    /// class depth `d` and maximum depth `D`. Indexed like [`FinitePoset::ids`].
    pub fn utility_representation(&self) -> Vec<f64> {
        let depths = self.class_depths();
        let max = depths.iter().copied().max().unwrap_or(0);
        let denom = (max + 2) as f64;
        depths.into_iter().map(|d| (d + 1) as f64 / denom).collect()
    }

    pub fn utility_representation_map(&self) -> HashMap<String, f64> {
        self.ids.iter().cloned().zip(self.utility_representation()).collect()
    }

    /// Checks `x > y ⇒ u(x) > u(y)` and `x ≈ y ⇒ u(x) = u(y)` over all pairs.
    pub fn representation_violation(&self, values: &[f64]) -> Option<RepresentationViolation> {
        assert_eq!(values.len(), self.len());
        for hi in 0..self.len() {
            for lo in self.down_set(hi) {
                if !(values[hi] > values[lo]) {
                    return Some(RepresentationViolation::Succ { hi, lo });
                }
            }
        }
        for class in self.approx_classes() {
            let x = class[0];
            if let Some(&y) = class.iter().find(|&&y| values[y] != values[x]) {
                return Some(RepresentationViolation::Approx { x, y });
            }
        }
        None
    }

    /// The order restricted to `members` (given as indices into `self`).
    pub fn induced(&self, members: &[usize]) -> FinitePoset {
        let ids: Vec<&str> = members.iter().map(|&i| self.id(i)).collect();
        let mut edges = Vec::new();
        for &hi in members {
            for &lo in members {
                if self.gt(hi, lo) {
                    edges.push((self.id(lo), self.id(hi)));
                }
            }
        }
        FinitePoset::build_with_limit(&ids, &edges, usize::MAX).expect("restriction of a valid order")
    }

    fn resolve(&self, e: &ExtendedElement) -> Result<ExtendedIndex> {
        Ok(match e {
            ExtendedElement::Bottom => ExtendedIndex::Bottom,
            ExtendedElement::Element(id) => ExtendedIndex::Element(self.index_of(id)?),
            ExtendedElement::Top => ExtendedIndex::Top,
        })
    }

    /// The order on `X ∪ {-inf, +inf}`.
    pub fn ext_gt(&self, x: &ExtendedElement, y: &ExtendedElement) -> Result<bool> {
        Ok(self.ext_gt_index(self.resolve(x)?, self.resolve(y)?))
    }

    pub fn ext_gt_index(&self, x: ExtendedIndex, y: ExtendedIndex) -> bool {
        use ExtendedIndex::*;
        match (x, y) {
            (Element(i), Element(j)) => self.gt(i, j),
            (Top, Top) | (Bottom, Bottom) => false,
            (Top, _) | (_, Bottom) => true,
            (Bottom, _) | (_, Top) => false,
        }
    }
}

/// Index-based counterpart of [`ExtendedElement`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExtendedIndex {
    Bottom,
    Element(usize),
    Top,
}

impl fmt::Display for ExtendedElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtendedElement::Bottom => f.write_str("-inf"),
            ExtendedElement::Element(id) => f.write_str(id),
            ExtendedElement::Top => f.write_str("+inf"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    /// a < b < c plus isolated d
    fn chain_plus_isolated() -> FinitePoset {
        FinitePoset::build(&["a", "b", "c", "d"], &[("a", "b"), ("b", "c")]).unwrap()
    }

    fn idx(p: &FinitePoset, id: &str) -> usize {
        p.index_of(id).unwrap()
    }

    #[test]
    fn closure_of_two_edge_chain() {
        let p = chain_plus_isolated();
        let (a, b, c, d) = (idx(&p, "a"), idx(&p, "b"), idx(&p, "c"), idx(&p, "d"));
        assert!(p.gt(b, a) && p.gt(c, b) && p.gt(c, a));
        assert!(!p.gt(a, b) && !p.gt(a, c));
        for x in [a, b, c] {
            assert!(p.incomparable(d, x));
        }
        assert_eq!(p.maximal_elements(), vec![c, d]);
        assert_eq!(p.minimal_elements(), vec![a, d]);
    }

    #[test]
    fn build_errors() {
        assert_eq!(
            FinitePoset::build(&["a", "b"], &[("a", "b"), ("b", "a")]).unwrap_err(),
            Error::Cycle("a".into())
        );
        assert!(matches!(FinitePoset::build(&["a"], &[("a", "a")]), Err(Error::Cycle(_))));
        assert_eq!(
            FinitePoset::build(&["a", "a"], &[]).unwrap_err(),
            Error::DuplicateElement("a".into())
        );
        assert_eq!(
            FinitePoset::build(&["a"], &[("a", "z")]).unwrap_err(),
            Error::UnknownElement("z".into())
        );
        assert_eq!(
            FinitePoset::build_with_limit(&["a", "b"], &[], 1).unwrap_err(),
            Error::TooLarge { size: 2, limit: 1 }
        );
    }

    #[test]
    fn single_element_antichain() {
        let p = FinitePoset::build(&["a"], &[]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.incomparable(0, 0));
        assert_eq!(p.approx_classes(), vec![vec![0]]);
        assert_eq!(p.utility_representation(), vec![0.5]);
    }

    #[test]
    fn incomparability_examples() {
        let p = chain_plus_isolated();
        assert!(p.incomparable_ids("a", "d").unwrap());
        assert!(!p.incomparable_ids("a", "b").unwrap());
        assert!(p.incomparable_ids("a", "a").unwrap());
        assert!(p.incomparable_ids("a", "q").is_err());
    }

    /// Oracle: literal ~-rows over all z.
    fn brute_force_classes(p: &FinitePoset) -> Vec<Vec<usize>> {
        let n = p.len();
        let row = |x: usize| -> Vec<bool> { (0..n).map(|z| !p.gt(x, z) && !p.gt(z, x)).collect() };
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for x in 0..n {
            match classes.iter_mut().find(|c| row(c[0]) == row(x)) {
                Some(c) => c.push(x),
                None => classes.push(vec![x]),
            }
        }
        classes
    }

    #[test]
    fn approx_classes_examples() {
        let p = chain_plus_isolated();
        assert_eq!(p.approx_classes(), vec![vec![0], vec![1], vec![2], vec![3]]);
        assert_eq!(brute_force_classes(&p), p.approx_classes());

        let anti = FinitePoset::build(&["x", "y"], &[]).unwrap();
        assert_eq!(anti.approx_class_ids(), vec![vec!["x".to_string(), "y".to_string()]]);
    }

    #[test]
    fn utility_representation_examples() {
        let m = chain_plus_isolated().utility_representation_map();
        assert_eq!(m["a"], 0.25);
        assert_eq!(m["b"], 0.5);
        assert_eq!(m["c"], 0.75);
        assert_eq!(m["d"], 0.25);

        let anti = FinitePoset::build(&["x", "y"], &[]).unwrap();
        assert_eq!(anti.utility_representation(), vec![0.5, 0.5]);
    }

    #[test]
    fn extended_order() {
        let p = chain_plus_isolated();
        let el = |s: &str| ExtendedElement::Element(s.into());
        assert!(p.ext_gt(&ExtendedElement::Top, &el("a")).unwrap());
        assert!(p.ext_gt(&el("a"), &ExtendedElement::Bottom).unwrap());
        assert!(!p.ext_gt(&el("a"), &el("b")).unwrap());
        assert!(p.ext_gt(&el("b"), &el("a")).unwrap());
        assert!(p.ext_gt(&ExtendedElement::Top, &ExtendedElement::Bottom).unwrap());
        assert!(!p.ext_gt(&ExtendedElement::Top, &ExtendedElement::Top).unwrap());
        assert!(!p.ext_gt(&ExtendedElement::Bottom, &el("d")).unwrap());
        assert!(p.ext_gt(&el("zz"), &ExtendedElement::Bottom).is_err());
    }

    #[test]
    fn induced_order_keeps_transitive_edges() {
        let p = chain_plus_isolated();
        let q = p.induced(&[0, 2]);
        assert_eq!(q.ids(), &["a".to_string(), "c".to_string()]);
        assert!(q.gt(1, 0));
    }

    /// Random DAG on n nodes: edges only from lower to higher index.
    pub(crate) fn random_dag() -> impl Strategy<Value = FinitePoset> {
        (1usize..30).prop_flat_map(|n| {
            proptest::collection::vec((0..n, 0..n), 0..2 * n).prop_map(move |pairs| {
                let ids: Vec<String> = (0..n).map(|i| format!("e{i}")).collect();
                let edges: Vec<(String, String)> = pairs
                    .into_iter()
                    .filter(|(a, b)| a < b)
                    .map(|(a, b)| (ids[a].clone(), ids[b].clone()))
                    .collect();
                FinitePoset::build(&ids, &edges).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn closure_is_a_strict_partial_order(p in random_dag()) {
            let n = p.len();
            for i in 0..n {
                prop_assert!(!p.gt(i, i));
                for j in 0..n {
                    if p.gt(i, j) {
                        prop_assert!(!p.gt(j, i));
                        for k in 0..n {
                            if p.gt(j, k) {
                                prop_assert!(p.gt(i, k));
                            }
                        }
                    }
                }
            }
        }

        #[test]
        fn approx_is_an_equivalence_matching_brute_force(p in random_dag()) {
            prop_assert_eq!(brute_force_classes(&p), p.approx_classes());
            let n = p.len();
            for x in 0..n {
                prop_assert!(p.approx(x, x));
                for y in 0..n {
                    prop_assert_eq!(p.approx(x, y), p.approx(y, x));
                    for z in 0..n {
                        if p.approx(x, y) && p.approx(y, z) {
                            prop_assert!(p.approx(x, z));
                        }
                    }
                }
            }
        }

        #[test]
        fn approx_implies_identical_up_and_down_sets(p in random_dag()) {
            for class in p.approx_classes() {
                let x = class[0];
                for &y in &class {
                    prop_assert_eq!(p.down_set(x).collect::<Vec<_>>(), p.down_set(y).collect::<Vec<_>>());
                    prop_assert_eq!(p.up_set(x).collect::<Vec<_>>(), p.up_set(y).collect::<Vec<_>>());
                }
            }
        }

        #[test]
        fn depth_utility_is_a_representation(p in random_dag()) {
            let u = p.utility_representation();
            prop_assert!(u.iter().all(|&v| v > 0.0 && v < 1.0));
            prop_assert_eq!(p.representation_violation(&u), None);
        }
    }
}
