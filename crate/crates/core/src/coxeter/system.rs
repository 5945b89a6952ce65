use std::fmt;

use serde::{Deserialize, Serialize};

use super::graph::{default_labels, SimplicialGraph, VertexSet, MAX_VERTICES};
use crate::error::{Error, Result};

/// Default cap on word length for the general (braid-search) reduction engine.
pub const DEFAULT_REDUCE_CAP: usize = 16;

/// Generator index.
pub type Letter = u8;

/// An off-diagonal Coxeter exponent `m(s,t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exponent {
    Finite(u32),
    Infinite,
}

impl Exponent {
    /// File encoding: `-1` is infinity.
    pub fn from_code(code: i64) -> Result<Self> {
        match code {
            -1 => Ok(Exponent::Infinite),
            m if m >= 1 => Ok(Exponent::Finite(m as u32)),
            m => Err(Error::InvalidSystem(format!("invalid exponent {m}"))),
        }
    }

    pub fn code(self) -> i64 {
        match self {
            Exponent::Finite(m) => m as i64,
            Exponent::Infinite => -1,
        }
    }

    /// `cos(pi/m)`, with `cos(pi/inf) = 1`.
    pub fn cos_pi_over(self) -> f64 {
        match self {
            Exponent::Finite(m) => (std::f64::consts::PI / m as f64).cos(),
            Exponent::Infinite => 1.0,
        }
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exponent::Finite(m) => write!(f, "{m}"),
            Exponent::Infinite => write!(f, "inf"),
        }
    }
}

/// On-disk system definition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SystemFile {
    pub generators: Vec<String>,
    pub exponents: Vec<Vec<i64>>,
}

/// A Coxeter system `(W, S)` with finitely many generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterSystem {
    names: Vec<String>,
    exponents: Vec<Vec<Exponent>>,
    right_angled: bool,
    /// Commutation graph: edge iff `m(s,t) = 2`.
    graph: SimplicialGraph,
    reduce_cap: usize,
}

impl CoxeterSystem {
    pub fn new<S: Into<String>>(names: Vec<S>, exponents: Vec<Vec<Exponent>>) -> Result<Self> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        let n = names.len();
        if n == 0 {
            return Err(Error::InvalidSystem("no generators".into()));
        }
        if n > MAX_VERTICES {
            return Err(Error::InvalidSystem(format!(
                "at most {MAX_VERTICES} generators supported"
            )));
        }
        for (i, name) in names.iter().enumerate() {
            if name == "e" || name.is_empty() {
                return Err(Error::InvalidSystem(format!("generator name {name:?} is reserved")));
            }
            if names[..i].contains(name) {
                return Err(Error::InvalidSystem(format!("duplicate generator name {name}")));
            }
        }
        if exponents.len() != n || exponents.iter().any(|row| row.len() != n) {
            return Err(Error::InvalidSystem(format!("exponent matrix must be {n}x{n}")));
        }
        let mut edges = Vec::new();
        let mut right_angled = true;
        for s in 0..n {
            if exponents[s][s] != Exponent::Finite(1) {
                return Err(Error::InvalidSystem(format!("m({0},{0}) must be 1", names[s])));
            }
            for t in 0..n {
                if s == t {
                    continue;
                }
                if exponents[s][t] != exponents[t][s] {
                    return Err(Error::InvalidSystem(format!(
                        "exponents not symmetric at ({},{})",
                        names[s], names[t]
                    )));
                }
                match exponents[s][t] {
                    Exponent::Finite(m) if m < 2 => {
                        return Err(Error::InvalidSystem(format!(
                            "m({},{}) = {m} must be at least 2",
                            names[s], names[t]
                        )))
                    }
                    Exponent::Finite(2) => {
                        if s < t {
                            edges.push((s, t));
                        }
                    }
                    Exponent::Finite(_) => right_angled = false,
                    Exponent::Infinite => {}
                }
            }
        }
        let graph = SimplicialGraph::new(names.clone(), &edges)?;
        Ok(CoxeterSystem {
            names,
            exponents,
            right_angled,
            graph,
            reduce_cap: DEFAULT_REDUCE_CAP,
        })
    }

    /// Right-angled system whose commutation graph is `graph`.
    pub fn from_graph(graph: &SimplicialGraph) -> Self {
        let n = graph.vertex_count();
        let exponents = (0..n)
            .map(|s| {
                (0..n)
                    .map(|t| {
                        if s == t {
                            Exponent::Finite(1)
                        } else if graph.has_edge(s, t) {
                            Exponent::Finite(2)
                        } else {
                            Exponent::Infinite
                        }
                    })
                    .collect()
            })
            .collect();
        CoxeterSystem::new(graph.labels().to_vec(), exponents).expect("graph yields a valid system")
    }

    /// The free Coxeter group `(Z_2)^{*n}`.
    pub fn free(n: usize) -> Self {
        CoxeterSystem::from_graph(&SimplicialGraph::edgeless(n))
    }

    /// Dihedral system on `s, t` with `m(s,t) = m`.
    pub fn dihedral(m: Exponent) -> Result<Self> {
        CoxeterSystem::new(
            vec!["s", "t"],
            vec![vec![Exponent::Finite(1), m], vec![m, Exponent::Finite(1)]],
        )
    }

    /// `Z_2^{k_1} * ... * Z_2^{k_l}`; generators of one block commute.
    pub fn free_abelian_product(blocks: &[usize]) -> Result<Self> {
        if blocks.is_empty() || blocks.contains(&0) {
            return Err(Error::InvalidSystem("block sizes must be positive".into()));
        }
        let n: usize = blocks.iter().sum();
        let mut edges = Vec::new();
        let mut start = 0;
        for &k in blocks {
            for u in start..start + k {
                for v in u + 1..start + k {
                    edges.push((u, v));
                }
            }
            start += k;
        }
        Ok(CoxeterSystem::from_graph(&SimplicialGraph::new(
            default_labels(n),
            &edges,
        )?))
    }

    pub fn from_file(file: &SystemFile) -> Result<Self> {
        let exponents = file
            .exponents
            .iter()
            .map(|row| row.iter().map(|&c| Exponent::from_code(c)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        CoxeterSystem::new(file.generators.clone(), exponents)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: SystemFile = serde_json::from_str(text).map_err(|e| Error::Parse(format!("system file: {e}")))?;
        CoxeterSystem::from_file(&file)
    }

    pub fn to_file(&self) -> SystemFile {
        SystemFile {
            generators: self.names.clone(),
            exponents: self
                .exponents
                .iter()
                .map(|row| row.iter().map(|m| m.code()).collect())
                .collect(),
        }
    }

    pub fn with_reduce_cap(mut self, cap: usize) -> Self {
        self.reduce_cap = cap;
        self
    }

    pub fn reduce_cap(&self) -> usize {
        self.reduce_cap
    }

    pub fn rank(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, s: Letter) -> &str {
        &self.names[s as usize]
    }

    pub fn generator(&self, name: &str) -> Option<Letter> {
        self.names.iter().position(|n| n == name).map(|i| i as Letter)
    }

    pub fn exponent(&self, s: Letter, t: Letter) -> Exponent {
        self.exponents[s as usize][t as usize]
    }

    pub fn is_right_angled(&self) -> bool {
        self.right_angled
    }

    /// `m(s,t) = 2`.
    pub fn commutes(&self, s: Letter, t: Letter) -> bool {
        s != t && self.graph.has_edge(s as usize, t as usize)
    }

    /// The commutation graph (the graph of the right-angled case).
    pub fn graph(&self) -> &SimplicialGraph {
        &self.graph
    }

    pub fn generators(&self) -> VertexSet {
        VertexSet::full(self.rank())
    }

    pub fn check_letter(&self, s: usize) -> Result<Letter> {
        if s < self.rank() {
            Ok(s as Letter)
        } else {
            Err(Error::InvalidGenerator {
                index: s,
                rank: self.rank(),
            })
        }
    }

    /// Render a word with generator names, `e` for the empty word.
    pub fn format_word(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "e".into();
        }
        let single = self.names.iter().all(|n| n.chars().count() == 1);
        let parts: Vec<&str> = word.iter().map(|&s| self.name(s)).collect();
        if single {
            parts.concat()
        } else {
            parts.join(".")
        }
    }

    /// Parse a word of generator names: `"sts"` when every name is one
    /// character, otherwise comma or dot separated. `"e"` and `""` are empty.
    pub fn parse_word(&self, text: &str) -> Result<Vec<Letter>> {
        let t = text.trim();
        if t.is_empty() || (t == "e" && self.generator("e").is_none()) {
            return Ok(Vec::new());
        }
        let tokens: Vec<String> = if t.contains([',', '.', ' ']) {
            t.split([',', '.', ' '])
                .filter(|p| !p.is_empty())
                .map(str::to_string)
                .collect()
        } else if self.generator(t).is_some() {
            vec![t.to_string()]
        } else {
            t.chars().map(|c| c.to_string()).collect()
        };
        tokens
            .iter()
            .map(|tok| {
                self.generator(tok)
                    .ok_or_else(|| Error::Parse(format!("unknown generator {tok:?}")))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_invalid_exponents() {
        let one = Exponent::Finite(1);
        let bad_diag = CoxeterSystem::new(
            vec!["s", "t"],
            vec![
                vec![Exponent::Finite(2), Exponent::Infinite],
                vec![Exponent::Infinite, one],
            ],
        );
        assert!(bad_diag.is_err());
        let asym = CoxeterSystem::new(
            vec!["s", "t"],
            vec![vec![one, Exponent::Finite(3)], vec![Exponent::Finite(4), one]],
        );
        assert!(asym.is_err());
        let too_small = CoxeterSystem::new(vec!["s", "t"], vec![vec![one, one], vec![one, one]]);
        assert!(too_small.is_err());
    }

    #[test]
    fn right_angled_predicate() {
        assert!(CoxeterSystem::free(3).is_right_angled());
        assert!(CoxeterSystem::dihedral(Exponent::Finite(2)).unwrap().is_right_angled());
        assert!(!CoxeterSystem::dihedral(Exponent::Finite(3)).unwrap().is_right_angled());
    }

    #[test]
    fn json_round_trip() {
        let text = r#"{ "generators": ["s","t","u"], "exponents": [[1,2,-1],[2,1,3],[-1,3,1]] }"#;
        let sys = CoxeterSystem::from_json(text).unwrap();
        assert_eq!(sys.exponent(0, 2), Exponent::Infinite);
        assert_eq!(sys.exponent(1, 2), Exponent::Finite(3));
        assert!(sys.commutes(0, 1));
        let again = CoxeterSystem::from_file(&sys.to_file()).unwrap();
        assert_eq!(again, sys);
    }

    #[test]
    fn parses_words() {
        let sys = CoxeterSystem::free(3);
        assert_eq!(sys.parse_word("abc").unwrap(), vec![0, 1, 2]);
        assert_eq!(sys.parse_word("a,c").unwrap(), vec![0, 2]);
        assert_eq!(sys.parse_word("e").unwrap(), Vec::<Letter>::new());
        assert!(sys.parse_word("abz").is_err());
        assert_eq!(sys.format_word(&[2, 0]), "ca");
    }
}
