//! Orbit partition of `B(n)` under `H(λ)`, `λ ∈ {1, 2}`.
//!
//! The action graph (edges `x`, `w_{+λ}`, `w_{-λ}`) is explored breadth-first
//! from every member of `B(n)`, restricted to triples whose coordinates stay
//! within a cap. Members reached from one another are merged, each merge
//! carrying the word that witnesses it. The cap is doubled until the
//! partition stops changing.
//!
//! Merges are always sound. Completeness is only as good as the cap: a count
//! reported as stable is conjectured exact, otherwise it is an upper bound.

use std::collections::{HashMap, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::action::{GeneratorToken, GroupWord, Triple};
use crate::enumeration::{enumerate_b, BSet};
use crate::error::{Error, Result};
use crate::reduction::{in_b, reduce_to_b};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExplorationConfig {
    /// Largest `max(|a|, |b|, |c|)` allowed on the first pass.
    pub initial_cap: u64,
    pub max_doublings: u32,
    /// Consecutive unchanged doublings needed to call the partition stable.
    pub stability_rounds: u32,
}

impl ExplorationConfig {
    /// `initial_cap = 4·max(n², 16)`, 8 doublings, 2 stability rounds.
    pub fn for_n(n: i64) -> Self {
        let n2 = n.unsigned_abs().saturating_mul(n.unsigned_abs());
        ExplorationConfig {
            initial_cap: 4 * n2.max(16),
            max_doublings: 8,
            stability_rounds: 2,
        }
    }

    /// Starts from the smallest cap enclosing `B(n)`.
    pub fn tight(bset: &BSet) -> Self {
        ExplorationConfig {
            initial_cap: bset.max_height().max(1),
            max_doublings: 8,
            stability_rounds: 2,
        }
    }

    fn validate(&self, bset: &BSet) -> Result<()> {
        let need = bset.max_height();
        if self.initial_cap < need {
            return Err(Error::Config(format!(
                "cap {} is below the largest B({}) coordinate {need}",
                self.initial_cap, bset.n
            )));
        }
        if self.stability_rounds == 0 {
            return Err(Error::Config("stability_rounds must be positive".into()));
        }
        Ok(())
    }
}

/// Disjoint sets over `0..len` with path halving and union by size.
#[derive(Debug, Clone)]
pub struct UnionFind {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl UnionFind {
    pub fn new(len: usize) -> Self {
        UnionFind {
            parent: (0..len).collect(),
            size: vec![1; len],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    /// Returns false if `x` and `y` were already joined.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (mut rx, mut ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        if self.size[rx] < self.size[ry] {
            std::mem::swap(&mut rx, &mut ry);
        }
        self.parent[ry] = rx;
        self.size[rx] += self.size[ry];
        true
    }
}

/// `word` maps `from` to `to`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Merge {
    pub from: Triple,
    pub to: Triple,
    pub word: GroupWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrbitPartition {
    pub n: i64,
    pub lambda: i64,
    /// Each class sorted; classes ordered by their smallest member.
    pub classes: Vec<Vec<Triple>>,
    /// Smallest member of each class under `(|a|, a, b, c)`.
    pub representatives: Vec<Triple>,
    pub cap_used: u64,
    pub stable: bool,
    /// Witnesses for the merges made at `cap_used`.
    pub merges: Vec<Merge>,
    /// Triples visited at `cap_used`.
    pub explored: usize,
}

#[derive(Serialize)]
struct PartitionJson<'a> {
    n: i64,
    lambda: i64,
    cap: u64,
    stable: bool,
    classes: &'a [Vec<Triple>],
    representatives: &'a [Triple],
}

impl OrbitPartition {
    pub fn count(&self) -> usize {
        self.classes.len()
    }

    pub fn class_of(&self, t: &Triple) -> Option<usize> {
        self.classes
            .iter()
            .position(|cls| cls.binary_search(t).is_ok())
    }

    /// Reduces both triples into `B(n)` and compares their classes.
    pub fn same_orbit(&self, t1: &Triple, t2: &Triple) -> Result<bool> {
        for t in [t1, t2] {
            if t.n() != self.n {
                return Err(Error::MismatchedN(self.n, t.n()));
            }
        }
        let r1 = reduce_to_b(t1, self.lambda)?.reduced;
        let r2 = reduce_to_b(t2, self.lambda)?.reduced;
        Ok(self.class_of(&r1).is_some() && self.class_of(&r1) == self.class_of(&r2))
    }

    pub fn label(&self) -> &'static str {
        if self.stable {
            "exact (stable)"
        } else {
            "upper bound (cap-limited)"
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&PartitionJson {
            n: self.n,
            lambda: self.lambda,
            cap: self.cap_used,
            stable: self.stable,
            classes: &self.classes,
            representatives: &self.representatives,
        })
        .expect("partition serializes")
    }
}

fn check_lambda(lambda: i64) -> Result<()> {
    match lambda {
        1 | 2 => Ok(()),
        _ => Err(Error::BadLambda(lambda)),
    }
}

fn generators(lambda: i64) -> [GeneratorToken; 3] {
    [
        GeneratorToken::X,
        GeneratorToken::T(lambda),
        GeneratorToken::T(-lambda),
    ]
}

struct Visit {
    triple: Triple,
    parent: u32,
    via: GeneratorToken,
}

const ROOT: u32 = u32::MAX;

/// Tokens leading from the BFS root to `idx`, in composition order.
fn path_word(nodes: &[Visit], mut idx: u32, lambda: i64) -> Result<GroupWord> {
    let mut tokens = Vec::new();
    while nodes[idx as usize].parent != ROOT {
        tokens.push(nodes[idx as usize].via);
        idx = nodes[idx as usize].parent;
    }
    GroupWord::new(lambda, tokens)
}

struct Pass {
    classes: Vec<Vec<Triple>>,
    merges: Vec<Merge>,
    explored: usize,
}

/// One capped exploration from every member of `bset`.
fn explore(bset: &BSet, lambda: i64, cap: u64) -> Result<Pass> {
    let members = &bset.members;
    let mut uf = UnionFind::new(members.len());
    let mut merges = Vec::new();
    let mut index: HashMap<(i64, i64, i64), u32> = HashMap::new();
    let mut nodes: Vec<Visit> = Vec::new();
    let mut queue = VecDeque::new();
    let gens = generators(lambda);

    for (seed_idx, seed) in members.iter().enumerate() {
        if index.contains_key(&seed.coords()) {
            continue;
        }
        let root = nodes.len() as u32;
        index.insert(seed.coords(), root);
        nodes.push(Visit {
            triple: *seed,
            parent: ROOT,
            via: GeneratorToken::X,
        });
        queue.push_back(root);
        while let Some(cur) = queue.pop_front() {
            let here = nodes[cur as usize].triple;
            for &g in &gens {
                let next = here.apply_token(g)?;
                if next.height() > cap || index.contains_key(&next.coords()) {
                    continue;
                }
                let id = nodes.len() as u32;
                index.insert(next.coords(), id);
                nodes.push(Visit {
                    triple: next,
                    parent: cur,
                    via: g,
                });
                queue.push_back(id);
                if in_b(&next) {
                    if let Some(j) = bset.index_of(&next) {
                        uf.union(seed_idx, j);
                        merges.push(Merge {
                            from: *seed,
                            to: next,
                            word: path_word(&nodes, id, lambda)?,
                        });
                    }
                }
            }
        }
    }

    let mut groups: HashMap<usize, Vec<Triple>> = HashMap::new();
    for (i, t) in members.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(*t);
    }
    let mut classes: Vec<Vec<Triple>> = groups.into_values().collect();
    for cls in &mut classes {
        cls.sort();
    }
    classes.sort();
    Ok(Pass {
        classes,
        merges,
        explored: nodes.len(),
    })
}

fn representative(cls: &[Triple]) -> Triple {
    *cls.iter()
        .min_by_key(|t| (t.a().unsigned_abs(), t.a(), t.b(), t.c()))
        .expect("classes are nonempty")
}

/// Partition of a precomputed `B(n)`.
pub fn partition_of(bset: &BSet, lambda: i64, config: &ExplorationConfig) -> Result<OrbitPartition> {
    check_lambda(lambda)?;
    config.validate(bset)?;
    let mut cap = config.initial_cap;
    let mut pass = explore(bset, lambda, cap)?;
    let mut unchanged = 0;
    let mut stable = false;
    for _ in 0..config.max_doublings {
        cap = cap.checked_mul(2).ok_or(Error::Overflow)?;
        let next = explore(bset, lambda, cap)?;
        if next.classes == pass.classes {
            unchanged += 1;
        } else {
            unchanged = 0;
        }
        pass = next;
        if unchanged >= config.stability_rounds {
            stable = true;
            break;
        }
    }
    let representatives = pass.classes.iter().map(|c| representative(c)).collect();
    Ok(OrbitPartition {
        n: bset.n,
        lambda,
        classes: pass.classes,
        representatives,
        cap_used: cap,
        stable,
        merges: pass.merges,
        explored: pass.explored,
    })
}

pub fn orbit_partition(n: i64, lambda: i64, config: &ExplorationConfig) -> Result<OrbitPartition> {
    check_lambda(lambda)?;
    partition_of(&enumerate_b(n)?, lambda, config)
}

/// `(number of classes, stable)`.
pub fn orbit_count(n: i64, lambda: i64, config: &ExplorationConfig) -> Result<(usize, bool)> {
    let p = orbit_partition(n, lambda, config)?;
    Ok((p.count(), p.stable))
}

pub fn same_orbit(t1: &Triple, t2: &Triple, lambda: i64, config: &ExplorationConfig) -> Result<bool> {
    if t1.n() != t2.n() {
        return Err(Error::MismatchedN(t1.n(), t2.n()));
    }
    orbit_partition(t1.n(), lambda, config)?.same_orbit(t1, t2)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeLabel {
    X,
    WPlus,
    WMinus,
}

impl EdgeLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            EdgeLabel::X => "x",
            EdgeLabel::WPlus => "w+",
            EdgeLabel::WMinus => "w-",
        }
    }
}

/// The capped action graph reachable from `B(n)`.
#[derive(Debug, Clone)]
pub struct ActionGraph {
    pub n: i64,
    pub lambda: i64,
    pub cap: u64,
    /// `(triple, in B(n))` in discovery order.
    pub nodes: Vec<(Triple, bool)>,
    pub edges: Vec<(Triple, Triple, EdgeLabel)>,
}

fn node_id(t: &Triple) -> String {
    format!("\"{}_{}_{}\"", t.a(), t.b(), t.c())
}

impl ActionGraph {
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "digraph \"hecke_n{}_lambda{}_cap{}\" {{",
            self.n, self.lambda, self.cap
        );
        for (t, member) in &self.nodes {
            if *member {
                let _ = writeln!(
                    out,
                    "  {} [label=\"{t}\", style=filled, fillcolor=lightblue];",
                    node_id(t)
                );
            } else {
                let _ = writeln!(out, "  {} [label=\"{t}\"];", node_id(t));
            }
        }
        for (from, to, label) in &self.edges {
            let _ = writeln!(
                out,
                "  {} -> {} [label=\"{}\"];",
                node_id(from),
                node_id(to),
                label.as_str()
            );
        }
        out.push_str("}\n");
        out
    }
}

pub fn export_graph(n: i64, lambda: i64, cap: u64) -> Result<ActionGraph> {
    if lambda < 1 {
        return Err(Error::BadLambda(lambda));
    }
    let bset = enumerate_b(n)?;
    let need = bset.max_height();
    if cap < need {
        return Err(Error::Config(format!(
            "cap {cap} is below the largest B({n}) coordinate {need}"
        )));
    }
    let labels = [EdgeLabel::X, EdgeLabel::WPlus, EdgeLabel::WMinus];
    let gens = generators(lambda);
    let mut seen: HashMap<(i64, i64, i64), ()> = HashMap::new();
    let mut nodes = Vec::new();
    let mut edges = Vec::new();
    let mut queue = VecDeque::new();
    for seed in &bset.members {
        if seen.insert(seed.coords(), ()).is_none() {
            nodes.push((*seed, true));
            queue.push_back(*seed);
        }
        while let Some(here) = queue.pop_front() {
            for (&g, &label) in gens.iter().zip(&labels) {
                let next = here.apply_token(g)?;
                if next.height() > cap {
                    continue;
                }
                edges.push((here, next, label));
                if seen.insert(next.coords(), ()).is_none() {
                    nodes.push((next, bset.contains(&next)));
                    queue.push_back(next);
                }
            }
        }
    }
    Ok(ActionGraph {
        n,
        lambda,
        cap,
        nodes,
        edges,
    })
}
