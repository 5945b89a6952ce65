//! Splittings of a reduced right-angled word into a creation part, a clique
//! and an annihilation part.
//!
//! A split of `v = v_1 ... v_d` is a pair of position sets `A`, `B` such that
//! `A` and `A ∪ B` are closed under the dependency order of `v` (positions
//! `i < j` depend on each other when `v_i = v_j` or `v_i, v_j` do not
//! commute). The rearranged word is then `A · B · C` with `C` the remaining
//! positions, each segment written in its canonical order.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use super::graph::{SimplicialGraph, VertexSet};
use super::system::Letter;
use super::word::shuffle_normal_form;

/// Summation index `(l, k, Γ0, Γ1, Γ2)` of the Khintchine decomposition.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SummandIndex {
    pub l: usize,
    pub k: usize,
    pub gamma0: u64,
    pub gamma1: u64,
    pub gamma2: u64,
}

impl SummandIndex {
    pub fn new(l: usize, k: usize, g0: VertexSet, g1: VertexSet, g2: VertexSet) -> Self {
        SummandIndex {
            l,
            k,
            gamma0: g0.0,
            gamma1: g1.0,
            gamma2: g2.0,
        }
    }

    pub fn g0(&self) -> VertexSet {
        VertexSet(self.gamma0)
    }

    pub fn g1(&self) -> VertexSet {
        VertexSet(self.gamma1)
    }

    pub fn g2(&self) -> VertexSet {
        VertexSet(self.gamma2)
    }

    /// Valid for degree `d` on `graph`: sizes in range, `Γ0` an `l`-clique,
    /// `(Γ1, Γ2)` disjoint cliques in `Link(Γ0)`.
    pub fn is_valid(&self, graph: &SimplicialGraph, d: usize) -> bool {
        let link = graph.link(self.g0());
        self.l <= d
            && self.k <= d - self.l
            && self.g0().len() == self.l
            && graph.is_clique(self.g0())
            && graph.is_clique(self.g1())
            && graph.is_clique(self.g2())
            && self.g1().is_subset(link)
            && self.g2().is_subset(link)
            && self.g1().is_disjoint(self.g2())
    }

    pub fn describe(&self, graph: &SimplicialGraph) -> String {
        format!(
            "l={} k={} G0={} G1={} G2={}",
            self.l,
            self.k,
            graph.format_set(self.g0()),
            graph.format_set(self.g1()),
            graph.format_set(self.g2())
        )
    }
}

impl fmt::Debug for SummandIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "(l={}, k={}, {:?}, {:?}, {:?})",
            self.l,
            self.k,
            self.g0(),
            self.g1(),
            self.g2()
        )
    }
}

/// Every valid summation index for degree `d`.
pub fn summand_indices(graph: &SimplicialGraph, d: usize) -> Vec<SummandIndex> {
    let cliques = graph.cliques();
    let mut out = Vec::new();
    for l in 0..=d.min(cliques.len() - 1) {
        for &g0 in &cliques[l] {
            let comm = graph.comm(g0).expect("cliques are cliques");
            for k in 0..=d - l {
                for &(g1, g2) in &comm {
                    out.push(SummandIndex::new(l, k, g0, g1, g2));
                }
            }
        }
    }
    out
}

/// Positions of a word, in the order in which they appear in the rearranged
/// word, grouped by segment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Split {
    pub creation: Vec<usize>,
    pub diagonal: Vec<usize>,
    pub annihilation: Vec<usize>,
}

impl Split {
    /// `sigma` as a list: position `i` of the rearranged word is `sigma[i]`.
    pub fn permutation(&self) -> Vec<usize> {
        let mut p = self.creation.clone();
        p.extend_from_slice(&self.diagonal);
        p.extend_from_slice(&self.annihilation);
        p
    }

    pub fn apply<T: Clone>(&self, items: &[T]) -> Vec<T> {
        self.permutation().iter().map(|&i| items[i].clone()).collect()
    }
}

/// Which of the three rearrangement rules to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SplitRule {
    /// Conditions (1)-(6); all segments canonical.
    Sigma,
    /// Conditions (1)-(4), annihilation part not starting in `Γ2`; the
    /// creation part is canonical when read backwards.
    Q,
    /// Conditions (1)-(4); all segments canonical.
    R,
}

struct Poset<'a> {
    word: &'a [Letter],
    /// `deps[j]`: positions `i < j` that must precede `j`.
    deps: Vec<u64>,
}

impl<'a> Poset<'a> {
    fn new(graph: &SimplicialGraph, word: &'a [Letter]) -> Self {
        assert!(word.len() <= 64, "words longer than 64 letters are not supported");
        let deps = (0..word.len())
            .map(|j| {
                (0..j)
                    .filter(|&i| word[i] == word[j] || !graph.has_edge(word[i] as usize, word[j] as usize))
                    .fold(0u64, |acc, i| acc | 1 << i)
            })
            .collect();
        Poset { word, deps }
    }

    fn len(&self) -> usize {
        self.word.len()
    }

    /// Down-sets of the given size.
    fn down_sets(&self, size: usize) -> Vec<u64> {
        let mut out = Vec::new();
        self.down_sets_rec(0, 0, size, &mut out);
        out
    }

    fn down_sets_rec(&self, j: usize, set: u64, left: usize, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(set);
            return;
        }
        if self.len() - j < left {
            return;
        }
        if self.deps[j] & !set == 0 {
            self.down_sets_rec(j + 1, set | 1 << j, left - 1, out);
        }
        self.down_sets_rec(j + 1, set, left, out);
    }

    /// Positions outside `taken` whose predecessors all lie in `taken`.
    fn minimal_outside(&self, taken: u64) -> Vec<usize> {
        (0..self.len())
            .filter(|&j| taken >> j & 1 == 0 && self.deps[j] & !taken == 0)
            .collect()
    }

    /// Letters of the maximal elements of `set`.
    fn last_letters(&self, set: u64) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for i in bits(set) {
            let later = (i + 1..self.len()).any(|j| set >> j & 1 == 1 && self.deps[j] >> i & 1 == 1);
            if !later {
                out.insert(self.word[i] as usize);
            }
        }
        out
    }

    /// Letters of the minimal elements of `set`.
    fn first_letters(&self, set: u64) -> VertexSet {
        let mut out = VertexSet::EMPTY;
        for j in bits(set) {
            if self.deps[j] & set == 0 {
                out.insert(self.word[j] as usize);
            }
        }
        out
    }
}

fn bits(set: u64) -> impl Iterator<Item = usize> {
    VertexSet(set).iter()
}

fn subsets_of_size(items: &[usize], size: usize) -> Vec<Vec<usize>> {
    fn rec(items: &[usize], size: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == size {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < size - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, size, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, size, 0, &mut Vec::new(), &mut out);
    out
}

/// Positions of `set` in canonical order.
fn canonical(graph: &SimplicialGraph, word: &[Letter], set: u64) -> Vec<usize> {
    let positions: Vec<usize> = bits(set).collect();
    let letters: Vec<Letter> = positions.iter().map(|&i| word[i]).collect();
    let (_, perm) = shuffle_normal_form(graph, &letters);
    perm.into_iter().map(|i| positions[i]).collect()
}

/// Positions of `set` in the order whose reverse is canonical.
fn canonical_reversed(graph: &SimplicialGraph, word: &[Letter], set: u64) -> Vec<usize> {
    let mut positions: Vec<usize> = bits(set).collect();
    positions.reverse();
    let letters: Vec<Letter> = positions.iter().map(|&i| word[i]).collect();
    let (_, perm) = shuffle_normal_form(graph, &letters);
    let mut out: Vec<usize> = perm.into_iter().map(|i| positions[i]).collect();
    out.reverse();
    out
}

fn letters_of(word: &[Letter], positions: &[usize]) -> VertexSet {
    VertexSet::from_indices(positions.iter().map(|&i| word[i] as usize))
}

/// All splits of `word` satisfying `rule` for the index data. There is at
/// most one; this exists so tests can check that.
pub fn split_candidates(graph: &SimplicialGraph, word: &[Letter], rule: SplitRule, idx: &SummandIndex) -> Vec<Split> {
    let n = word.len();
    if idx.l + idx.k > n || idx.g0().len() != idx.l {
        return Vec::new();
    }
    let poset = Poset::new(graph, word);
    let link = graph.link(idx.g0());
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = Vec::new();
    for a in poset.down_sets(idx.k) {
        if poset.last_letters(a).intersection(link) != idx.g1() {
            continue;
        }
        let minimal: Vec<usize> = poset
            .minimal_outside(a)
            .into_iter()
            .filter(|&j| idx.g0().contains(word[j] as usize))
            .collect();
        for b in subsets_of_size(&minimal, idx.l) {
            if letters_of(word, &b) != idx.g0() {
                continue;
            }
            let bset = b.iter().fold(0u64, |acc, &i| acc | 1 << i);
            let c = all & !a & !bset;
            let first_c = poset.first_letters(c);
            let ok = match rule {
                SplitRule::Sigma => first_c.intersection(link) == idx.g2(),
                SplitRule::Q => first_c.is_disjoint(idx.g2()),
                SplitRule::R => true,
            };
            if !ok {
                continue;
            }
            let creation = match rule {
                SplitRule::Q => canonical_reversed(graph, word, a),
                _ => canonical(graph, word, a),
            };
            out.push(Split {
                creation,
                diagonal: canonical(graph, word, bset),
                annihilation: canonical(graph, word, c),
            });
        }
    }
    out
}

/// The unique split for `rule`, if one exists.
pub fn split(graph: &SimplicialGraph, word: &[Letter], rule: SplitRule, idx: &SummandIndex) -> Option<Split> {
    let mut c = split_candidates(graph, word, rule, idx);
    debug_assert!(c.len() <= 1, "split is not unique for {word:?} {idx:?}: {c:?}");
    c.pop()
}

/// `sigma^v_{l,k,Γ0,Γ1,Γ2}`.
pub fn sigma_permutation(graph: &SimplicialGraph, word: &[Letter], idx: &SummandIndex) -> Option<Split> {
    if idx.l + idx.k > word.len() {
        return None;
    }
    split(graph, word, SplitRule::Sigma, idx)
}

/// Every index (for `d = |word|`) at which `sigma^word` exists, with its split.
pub fn indices_with_sigma(graph: &SimplicialGraph, word: &[Letter]) -> BTreeMap<SummandIndex, Split> {
    let n = word.len();
    let poset = Poset::new(graph, word);
    let all = if n == 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut out = BTreeMap::new();
    for k in 0..=n {
        for a in poset.down_sets(k) {
            let minimal = poset.minimal_outside(a);
            for l in 0..=(n - k).min(minimal.len()) {
                for b in subsets_of_size(&minimal, l) {
                    let g0 = letters_of(word, &b);
                    let link = graph.link(g0);
                    let bset = b.iter().fold(0u64, |acc, &i| acc | 1 << i);
                    let c = all & !a & !bset;
                    let g1 = poset.last_letters(a).intersection(link);
                    let g2 = poset.first_letters(c).intersection(link);
                    if !g1.is_disjoint(g2) {
                        continue;
                    }
                    let idx = SummandIndex::new(l, k, g0, g1, g2);
                    let s = Split {
                        creation: canonical(graph, word, a),
                        diagonal: canonical(graph, word, bset),
                        annihilation: canonical(graph, word, c),
                    };
                    let previous = out.insert(idx, s);
                    debug_assert!(previous.is_none(), "two splits for {idx:?}");
                }
            }
        }
    }
    out
}
