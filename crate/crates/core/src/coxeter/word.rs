use std::cmp::Ordering;
use std::collections::{HashSet, VecDeque};
use std::fmt;

use super::graph::SimplicialGraph;
use super::system::{CoxeterSystem, Exponent, Letter};
use crate::error::{Error, Result};

/// A group element stored by its normal form: the lexicographically minimal
/// reduced word. Ordered by `(length, lex)`.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct GroupElement {
    word: Vec<Letter>,
}

impl GroupElement {
    pub fn identity() -> Self {
        GroupElement { word: Vec::new() }
    }

    /// Wrap a word that is already in normal form. No check is made.
    pub fn from_normal_form(word: Vec<Letter>) -> Self {
        GroupElement { word }
    }

    pub fn word(&self) -> &[Letter] {
        &self.word
    }

    pub fn into_word(self) -> Vec<Letter> {
        self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }

    pub fn is_empty(&self) -> bool {
        self.is_identity()
    }

    /// Number of occurrences of each generator in the normal form.
    pub fn letter_counts(&self, rank: usize) -> Vec<u32> {
        let mut counts = vec![0; rank];
        for &s in &self.word {
            counts[s as usize] += 1;
        }
        counts
    }
}

impl Ord for GroupElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.word
            .len()
            .cmp(&other.word.len())
            .then_with(|| self.word.cmp(&other.word))
    }
}

impl PartialOrd for GroupElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "G{:?}", self.word)
    }
}

/// Free reduction in a right-angled group: `s` cancels against the last
/// occurrence of `s` if every letter after it commutes with `s`.
fn ra_push(graph: &SimplicialGraph, out: &mut Vec<Letter>, s: Letter) {
    for i in (0..out.len()).rev() {
        let t = out[i];
        if t == s {
            out.remove(i);
            return;
        }
        if !graph.has_edge(s as usize, t as usize) {
            break;
        }
    }
    out.push(s);
}

/// Lexicographically minimal word in the shuffle class of a reduced word,
/// together with the positions of the input it was assembled from.
pub fn shuffle_normal_form(graph: &SimplicialGraph, word: &[Letter]) -> (Vec<Letter>, Vec<usize>) {
    let n = word.len();
    let mut used = vec![false; n];
    let mut letters = Vec::with_capacity(n);
    let mut perm = Vec::with_capacity(n);
    for _ in 0..n {
        let mut best: Option<usize> = None;
        // a remaining position is available if every earlier remaining
        // letter commutes with it (equal letters never commute)
        let mut blockers: Vec<Letter> = Vec::new();
        for i in 0..n {
            if used[i] {
                continue;
            }
            let s = word[i];
            let free = blockers
                .iter()
                .all(|&b| b != s && graph.has_edge(b as usize, s as usize));
            if free && best.is_none_or(|j| s < word[j]) {
                best = Some(i);
            }
            blockers.push(s);
        }
        let i = best.expect("some letter is always available");
        used[i] = true;
        letters.push(word[i]);
        perm.push(i);
    }
    (letters, perm)
}

impl CoxeterSystem {
    /// Reduce an arbitrary word to the normal form of the element it represents.
    pub fn reduce(&self, word: &[Letter]) -> Result<GroupElement> {
        for &s in word {
            self.check_letter(s as usize)?;
        }
        if self.is_right_angled() {
            let mut out = Vec::with_capacity(word.len());
            for &s in word {
                ra_push(self.graph(), &mut out, s);
            }
            return Ok(GroupElement::from_normal_form(
                shuffle_normal_form(self.graph(), &out).0,
            ));
        }
        if word.len() > self.reduce_cap() {
            return Err(Error::WordTooLong {
                len: word.len(),
                cap: self.reduce_cap(),
            });
        }
        let mut g = GroupElement::identity();
        for &s in word {
            g = self.right_mul_gen(&g, s)?;
        }
        Ok(g)
    }

    pub fn generator_element(&self, s: Letter) -> GroupElement {
        GroupElement::from_normal_form(vec![s])
    }

    /// All reduced words for the element with reduced word `word`, connected
    /// by braid moves.
    pub fn braid_class(&self, word: &[Letter]) -> HashSet<Vec<Letter>> {
        let mut seen = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(word.to_vec());
        queue.push_back(word.to_vec());
        while let Some(w) = queue.pop_front() {
            for i in 0..w.len().saturating_sub(1) {
                let (s, t) = (w[i], w[i + 1]);
                if s == t {
                    continue;
                }
                let Exponent::Finite(m) = self.exponent(s, t) else {
                    continue;
                };
                let m = m as usize;
                if i + m > w.len() {
                    continue;
                }
                let alternates = (0..m).all(|k| w[i + k] == if k % 2 == 0 { s } else { t });
                if !alternates {
                    continue;
                }
                let mut v = w.clone();
                for k in 0..m {
                    v[i + k] = if k % 2 == 0 { t } else { s };
                }
                if seen.insert(v.clone()) {
                    queue.push_back(v);
                }
            }
        }
        seen
    }

    fn lex_min_of_class(&self, word: &[Letter]) -> Vec<Letter> {
        if self.is_right_angled() {
            return shuffle_normal_form(self.graph(), word).0;
        }
        self.braid_class(word).into_iter().min().unwrap_or_default()
    }

    /// `g * s`.
    pub fn right_mul_gen(&self, g: &GroupElement, s: Letter) -> Result<GroupElement> {
        if self.is_right_angled() {
            let mut w = g.word().to_vec();
            w.push(s);
            return self.reduce(&w);
        }
        if g.len() + 1 > self.reduce_cap() {
            return Err(Error::WordTooLong {
                len: g.len() + 1,
                cap: self.reduce_cap(),
            });
        }
        let class = self.braid_class(g.word());
        if let Some(w) = class.iter().find(|w| w.last() == Some(&s)) {
            let shorter = &w[..w.len() - 1];
            return Ok(GroupElement::from_normal_form(self.lex_min_of_class(shorter)));
        }
        let mut w = g.word().to_vec();
        w.push(s);
        Ok(GroupElement::from_normal_form(self.lex_min_of_class(&w)))
    }

    /// `s * g`.
    pub fn left_mul_gen(&self, s: Letter, g: &GroupElement) -> Result<GroupElement> {
        if self.is_right_angled() {
            let mut w = Vec::with_capacity(g.len() + 1);
            w.push(s);
            w.extend_from_slice(g.word());
            return self.reduce(&w);
        }
        let inv = self.inverse(g);
        let r = self.right_mul_gen(&inv, s)?;
        Ok(self.inverse(&r))
    }

    pub fn multiply(&self, g: &GroupElement, h: &GroupElement) -> Result<GroupElement> {
        if self.is_right_angled() {
            let mut w = g.word().to_vec();
            w.extend_from_slice(h.word());
            return self.reduce(&w);
        }
        let mut out = g.clone();
        for &s in h.word() {
            out = self.right_mul_gen(&out, s)?;
        }
        Ok(out)
    }

    pub fn inverse(&self, g: &GroupElement) -> GroupElement {
        let rev: Vec<Letter> = g.word().iter().rev().copied().collect();
        GroupElement::from_normal_form(self.lex_min_of_class(&rev))
    }

    /// `|s g| < |g|`.
    pub fn starts_with(&self, g: &GroupElement, s: Letter) -> bool {
        if self.is_right_angled() {
            for &t in g.word() {
                if t == s {
                    return true;
                }
                if !self.commutes(s, t) {
                    return false;
                }
            }
            return false;
        }
        if g.word().first() == Some(&s) {
            return true;
        }
        self.braid_class(g.word()).iter().any(|w| w.first() == Some(&s))
    }

    /// `|g s| < |g|`.
    pub fn ends_with(&self, g: &GroupElement, s: Letter) -> bool {
        if self.is_right_angled() {
            for &t in g.word().iter().rev() {
                if t == s {
                    return true;
                }
                if !self.commutes(s, t) {
                    return false;
                }
            }
            return false;
        }
        self.braid_class(g.word()).iter().any(|w| w.last() == Some(&s))
    }

    /// Whether `word` is a reduced expression.
    pub fn is_reduced(&self, word: &[Letter]) -> Result<bool> {
        Ok(self.reduce(word)?.len() == word.len())
    }
}
