//! Path bases for Hom(V_μ, V^⊗n): the levelled inclusion diagram, paths and
//! the block decomposition seen by each braid generator.

use crate::fusion::{self, FusionError};
use crate::lattice::{LevelRule, Weight};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum BratteliError {
    #[error("unknown export format {0:?} (expected dot or json)")]
    UnknownFormat(String),
    #[error("position {i} out of range for n = {n}")]
    BadPosition { i: usize, n: usize },
    #[error(transparent)]
    Fusion(#[from] FusionError),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LevelEntry {
    pub weight: Weight,
    /// number of paths from level 0, i.e. dim Hom(V_μ, V^⊗level)
    pub multiplicity: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BratteliDiagram {
    pub rule: LevelRule,
    pub levels: Vec<Vec<LevelEntry>>,
    /// `edges[i]` joins level i to level i+1
    pub edges: Vec<Vec<(Weight, Weight)>>,
}

impl BratteliDiagram {
    pub fn n(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn vertices(&self, level: usize) -> Vec<Weight> {
        self.levels[level].iter().map(|e| e.weight).collect()
    }

    pub fn homdim(&self, mu: &Weight, level: usize) -> u64 {
        self.levels[level].iter().find(|e| e.weight == *mu).map_or(0, |e| e.multiplicity)
    }
}

/// Neighbours of μ in the diagram, in sort order.
pub fn successors(mu: &Weight, rule: LevelRule) -> Result<Vec<Weight>, FusionError> {
    Ok(fusion::tensor_v(mu, rule)?.support())
}

pub fn build_diagram(n: usize, rule: LevelRule) -> Result<BratteliDiagram, FusionError> {
    let mut levels = vec![vec![LevelEntry { weight: Weight::ZERO, multiplicity: 1 }]];
    let mut edges = Vec::new();
    for _ in 0..n {
        let mut next: BTreeMap<Weight, u64> = BTreeMap::new();
        let mut es = Vec::new();
        for e in levels.last().unwrap() {
            for nu in successors(&e.weight, rule)? {
                *next.entry(nu).or_insert(0) += e.multiplicity;
                es.push((e.weight, nu));
            }
        }
        es.sort();
        edges.push(es);
        levels.push(next.into_iter().map(|(weight, multiplicity)| LevelEntry { weight, multiplicity }).collect());
    }
    Ok(BratteliDiagram { rule, levels, edges })
}

pub fn homdim(mu: &Weight, n: usize, rule: LevelRule) -> Result<u64, FusionError> {
    Ok(build_diagram(n, rule)?.homdim(mu, n))
}

/// A path 0 = μ⁽⁰⁾ → μ⁽¹⁾ → … → μ⁽ⁿ⁾.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Path {
    pub weights: Vec<Weight>,
}

impl Path {
    pub fn end(&self) -> Weight {
        *self.weights.last().unwrap()
    }
}

/// All paths of length n ending at μ, in lexicographic order of (|λ|, a, b).
pub fn paths(mu: &Weight, n: usize, rule: LevelRule) -> Result<Vec<Path>, FusionError> {
    let mut ps: Vec<Vec<Weight>> = vec![vec![Weight::ZERO]];
    for step in 0..n {
        let mut next = Vec::new();
        for p in ps {
            for nu in successors(p.last().unwrap(), rule)? {
                // |λ| changes by at most one per step
                if (nu.size() - mu.size()).unsigned_abs() as usize > n - step - 1 {
                    continue;
                }
                let mut q = p.clone();
                q.push(nu);
                next.push(q);
            }
        }
        ps = next;
    }
    let mut out: Vec<Path> = ps.into_iter().filter(|p| p.last() == Some(mu)).map(|weights| Path { weights }).collect();
    out.sort();
    Ok(out)
}

/// Eigenvalue labels of a braid generator, indexed by the summand γ of V⊗V.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum EigenLabel {
    /// λ₁ = q², γ = 2Λ₁
    L1,
    /// λ₂ = −1, γ = Λ₂
    L2,
    /// λ₃ = −q⁻⁶, γ = Λ₁
    L3,
    /// λ₄ = q⁻¹², γ = 0
    L4,
}

impl EigenLabel {
    pub const ALL: [EigenLabel; 4] = [EigenLabel::L1, EigenLabel::L2, EigenLabel::L3, EigenLabel::L4];

    pub fn gamma(&self) -> Weight {
        match self {
            EigenLabel::L1 => Weight::new(2, 0).unwrap(),
            EigenLabel::L2 => Weight::L2,
            EigenLabel::L3 => Weight::L1,
            EigenLabel::L4 => Weight::ZERO,
        }
    }
}

/// Multiplicity N^ν_{λ,γ} of each eigenvalue label for the pair (λ, ν).
pub fn eigen_multiset(lambda: &Weight, nu: &Weight, rule: LevelRule) -> Result<BTreeMap<EigenLabel, usize>, FusionError> {
    let vv = fusion::tensor_v(&Weight::L1, rule)?;
    let mut out = BTreeMap::new();
    for l in EigenLabel::ALL {
        if vv.get(&l.gamma()) == 0 {
            continue;
        }
        let m = fusion::mul_basis(lambda, &l.gamma(), rule)?.get(nu);
        if m > 0 {
            out.insert(l, m as usize);
        }
    }
    Ok(out)
}

/// Intermediate weights μ with λ → μ → ν, in sort order.
pub fn intermediates(lambda: &Weight, nu: &Weight, rule: LevelRule) -> Result<Vec<Weight>, FusionError> {
    let mut out = Vec::new();
    for mu in successors(lambda, rule)? {
        if fusion::tensor_v(&mu, rule)?.get(nu) > 0 {
            out.push(mu);
        }
    }
    Ok(out)
}

/// One diagonal block of S_i: the paths sharing everything except μ⁽ⁱ⁾.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Block {
    pub position: usize,
    pub lambda: Weight,
    pub nu: Weight,
    pub intermediates: Vec<Weight>,
    pub eigen: BTreeMap<EigenLabel, usize>,
    /// indices into the path basis, aligned with `intermediates`
    pub paths: Vec<usize>,
}

impl Block {
    pub fn size(&self) -> usize {
        self.intermediates.len()
    }
}

/// Partition of the path basis of Hom(V_μ, V^⊗n) into the blocks of S_i.
pub fn blocks(mu: &Weight, n: usize, i: usize, rule: LevelRule) -> Result<Vec<Block>, BratteliError> {
    if i == 0 || i >= n {
        return Err(BratteliError::BadPosition { i, n });
    }
    let ps = paths(mu, n, rule)?;
    blocks_of(&ps, i, rule)
}

/// Block partition for an already enumerated path basis.
pub fn blocks_of(ps: &[Path], i: usize, rule: LevelRule) -> Result<Vec<Block>, BratteliError> {
    let mut groups: BTreeMap<(Vec<Weight>, Vec<Weight>), Vec<usize>> = BTreeMap::new();
    for (idx, p) in ps.iter().enumerate() {
        let key = (p.weights[..i].to_vec(), p.weights[i + 1..].to_vec());
        groups.entry(key).or_default().push(idx);
    }
    let mut out = Vec::new();
    for ((pre, post), idxs) in groups {
        let lambda = *pre.last().unwrap();
        let nu = post[0];
        let inter: Vec<Weight> = idxs.iter().map(|&k| ps[k].weights[i]).collect();
        out.push(Block {
            position: i,
            lambda,
            nu,
            intermediates: inter,
            eigen: eigen_multiset(&lambda, &nu, rule)?,
            paths: idxs,
        });
    }
    out.sort_by_key(|b| b.paths[0]);
    Ok(out)
}

fn node(level: usize, w: &Weight) -> String {
    let (m1, m2) = w.eps2();
    format!("L{level}_{m1}_{m2}")
}

#[derive(Serialize)]
struct DiagramJson<'a> {
    rule: LevelRule,
    levels: &'a [Vec<LevelEntry>],
    edges: Vec<(usize, Weight, Weight)>,
}

/// Deterministic DOT or JSON text.
pub fn export(d: &BratteliDiagram, format: &str) -> Result<String, BratteliError> {
    match format {
        "dot" => {
            let mut s = String::from("digraph bratteli {\n  rankdir=TB;\n");
            for (l, entries) in d.levels.iter().enumerate() {
                for e in entries {
                    let _ = writeln!(s, "  {} [label=\"{}\\n{}\"];", node(l, &e.weight), e.weight, e.multiplicity);
                }
            }
            for (l, es) in d.edges.iter().enumerate() {
                for (a, b) in es {
                    let _ = writeln!(s, "  {} -> {};", node(l, a), node(l + 1, b));
                }
            }
            s.push_str("}\n");
            Ok(s)
        }
        "json" => {
            let edges = d
                .edges
                .iter()
                .enumerate()
                .flat_map(|(l, es)| es.iter().map(move |(a, b)| (l, *a, *b)))
                .collect();
            let j = DiagramJson { rule: d.rule, levels: &d.levels, edges };
            Ok(serde_json::to_string_pretty(&j).expect("diagram serializes"))
        }
        other => Err(BratteliError::UnknownFormat(other.to_string())),
    }
}
