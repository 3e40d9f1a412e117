//! Ground truth at desk scale: exact divisibility by exhaustive cover
//! enumeration, growth tables, and instance-level subgroup inequalities.
//!
//! Degree-m pointed transitive covers correspond to index-m subgroups, so the
//! minimum separating degree is the divisibility function on the nose. The
//! enumeration prunes to one representative per pointed isomorphism class by
//! requiring vertices to be first visited in ascending order, the standard
//! low-index technique.

use std::time::Instant;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::cover::PermutationCover;
use crate::graph::SimplicialGraph;
use crate::word::{ball_level_from, normal_form, GeodesicForm, Word};

/// Which class Ω of subgroups the divisibility search ranges over. Both
/// supported classes intersect to the trivial subgroup for a raAg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum OmegaMode {
    AllSubgroups,
    NormalOnly,
}

impl OmegaMode {
    pub fn label(self) -> &'static str {
        match self {
            OmegaMode::AllSubgroups => "subgroup",
            OmegaMode::NormalOnly => "normal",
        }
    }
}

pub const DEFAULT_NORMAL_BUDGET: u64 = 5000;

#[derive(Debug, Error)]
pub enum OracleError {
    #[error("IdentityElement: divisibility is undefined for the identity")]
    IdentityElement,
    #[error("BudgetExceeded: no separating quotient of order at most {limit}")]
    BudgetExceeded { limit: u64 },
    #[error("NotInduced: {0}")]
    NotInduced(String),
    #[error("Internal: {0}")]
    Internal(String),
}

/// Minimal separating index together with the witnessing cover.
#[derive(Debug, Clone)]
pub struct DivisibilityResult {
    pub value: u64,
    pub witness: PermutationCover,
    pub mode: OmegaMode,
}

/// Enumerates basepoint-transitive commuting permutation tuples of the given
/// degree, one per pointed isomorphism class, via first-visit-ascending
/// canonical labeling. The visitor returns `false` to stop early.
fn visit_covers<F: FnMut(PermutationCover) -> bool>(
    graph: &SimplicialGraph,
    degree: usize,
    f: &mut F,
) -> bool {
    if degree == 0 {
        return true;
    }
    let gens = graph.gen_count();
    let mut perms: Vec<Vec<Option<usize>>> = vec![vec![None; degree]; gens];
    let mut used: Vec<Vec<bool>> = vec![vec![false; degree]; gens];
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    dfs(graph, &edges, degree, 0, 1, &mut perms, &mut used, f)
}

#[allow(clippy::too_many_arguments)]
fn dfs<F: FnMut(PermutationCover) -> bool>(
    graph: &SimplicialGraph,
    edges: &[(usize, usize)],
    degree: usize,
    cell: usize,
    visited: usize,
    perms: &mut Vec<Vec<Option<usize>>>,
    used: &mut Vec<Vec<bool>>,
    f: &mut F,
) -> bool {
    let gens = graph.gen_count();
    if cell == degree * gens {
        let concrete: Vec<Vec<usize>> =
            perms.iter().map(|p| p.iter().map(|v| v.unwrap()).collect()).collect();
        let cover = PermutationCover::make(graph, degree, concrete, 0)
            .expect("enumeration only completes commuting tuples");
        return f(cover);
    }
    let (v, g) = (cell / gens, cell % gens);
    if v >= visited {
        return true; // vertex v was never introduced: dead labeling
    }
    for w in 0..degree.min(visited + 1) {
        if used[g][w] {
            continue;
        }
        perms[g][v] = Some(w);
        used[g][w] = true;
        let new_visited = visited.max(w + 1);
        if commutation_consistent(edges, perms)
            && !dfs(graph, edges, degree, cell + 1, new_visited, perms, used, f)
        {
            perms[g][v] = None;
            used[g][w] = false;
            return false;
        }
        perms[g][v] = None;
        used[g][w] = false;
    }
    true
}

/// Partial commutation check: no fully-determined square may disagree.
fn commutation_consistent(edges: &[(usize, usize)], perms: &[Vec<Option<usize>>]) -> bool {
    for &(a, b) in edges {
        for v in 0..perms[a].len() {
            let ab = perms[a][v].and_then(|u| perms[b][u]);
            let ba = perms[b][v].and_then(|u| perms[a][u]);
            if let (Some(x), Some(y)) = (ab, ba) {
                if x != y {
                    return false;
                }
            }
        }
    }
    true
}

/// All pointed transitive covers of the given degree, in canonical order.
pub fn enumerate_covers(graph: &SimplicialGraph, degree: usize) -> Vec<PermutationCover> {
    let mut out = Vec::new();
    visit_covers(graph, degree, &mut |c| {
        out.push(c);
        true
    });
    out
}

/// Order of the permutation group generated by the cover, or `None` if it
/// exceeds `cap`. Plain closure walk; the degrees here are tiny.
fn group_order(cover: &PermutationCover, cap: u64) -> Option<u64> {
    use std::collections::HashSet;
    let degree = cover.degree();
    let identity: Vec<usize> = (0..degree).collect();
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    seen.insert(identity.clone());
    let mut frontier = vec![identity];
    while let Some(p) = frontier.pop() {
        for g in 0..cover.gen_count() {
            let q: Vec<usize> = p.iter().map(|&x| cover.perm(g)[x]).collect();
            if !seen.contains(&q) {
                if seen.len() as u64 + 1 > cap {
                    return None;
                }
                seen.insert(q.clone());
                frontier.push(q);
            }
        }
    }
    Some(seen.len() as u64)
}

/// Exact divisibility `D(g)` for the element of `w`, by exhaustive search.
///
/// `AllSubgroups`: least degree of a pointed transitive cover whose basepoint
/// moves; the degree never needs to exceed ‖g‖+1. `NormalOnly`: least order of
/// a finite quotient not killing σ_w, minimized over generated permutation
/// groups of transitive covers; `budget` caps that order (default 5000).
pub fn exact_divisibility(
    graph: &SimplicialGraph,
    w: &Word,
    mode: OmegaMode,
    budget: Option<u64>,
) -> Result<DivisibilityResult, OracleError> {
    let nf = normal_form(graph, w);
    if nf.is_empty() {
        return Err(OracleError::IdentityElement);
    }
    let word = nf.as_word();
    match mode {
        OmegaMode::AllSubgroups => {
            let n = nf.len();
            for degree in 1..=n + 1 {
                let mut found: Option<PermutationCover> = None;
                visit_covers(graph, degree, &mut |c| {
                    if c.separates(&word) {
                        found = Some(c);
                        false
                    } else {
                        true
                    }
                });
                if let Some(witness) = found {
                    return Ok(DivisibilityResult { value: degree as u64, witness, mode });
                }
            }
            Err(OracleError::Internal(
                "no separating cover within degree ‖g‖+1; this contradicts the linear bound"
                    .into(),
            ))
        }
        OmegaMode::NormalOnly => {
            let limit = budget.unwrap_or(DEFAULT_NORMAL_BUDGET);
            let mut best: Option<(u64, PermutationCover)> = None;
            let mut degree = 1usize;
            loop {
                let stop = best.as_ref().map(|(v, _)| *v).unwrap_or(limit);
                if degree as u64 > stop {
                    break;
                }
                visit_covers(graph, degree, &mut |c| {
                    let perm = c.act(&word).expect("letters are valid for the cover");
                    let moved = perm.iter().enumerate().any(|(i, &p)| i != p);
                    if moved {
                        let cap = best.as_ref().map(|(v, _)| *v).unwrap_or(limit);
                        if let Some(order) = group_order(&c, cap) {
                            if best.as_ref().map(|(v, _)| order < *v).unwrap_or(true) {
                                best = Some((order, c));
                            }
                        }
                    }
                    true
                });
                degree += 1;
            }
            match best {
                Some((value, witness)) => Ok(DivisibilityResult { value, witness, mode }),
                None => Err(OracleError::BudgetExceeded { limit }),
            }
        }
    }
}

#[derive(Debug, Clone)]
pub struct GrowthRow {
    pub n: usize,
    pub value: u64,
    pub element: GeodesicForm,
    /// Degree of the witnessing cover (equals `value` in subgroup mode).
    pub witness_index: u64,
    pub seconds: f64,
}

#[derive(Debug, Clone)]
pub struct GrowthTable {
    pub mode: OmegaMode,
    pub rows: Vec<GrowthRow>,
}

impl GrowthTable {
    /// CSV per the `# rfg-v1` schema: n, F_n, extremal_word, witness_index, mode, seconds.
    pub fn to_csv(&self, graph: &SimplicialGraph) -> String {
        let mut out = String::from("# rfg-v1\nn,F_n,extremal_word,witness_index,mode,seconds\n");
        for row in &self.rows {
            out.push_str(&format!(
                "{},{},{},{},{},{:.3}\n",
                row.n,
                row.value,
                row.element.display(graph),
                row.witness_index,
                self.mode.label(),
                row.seconds,
            ));
        }
        out
    }
}

/// Residual finiteness growth `F(n)` for n = 1..=n_max: the maximum of the
/// divisibility function over the ball, with the first maximizer (in
/// canonical ball order) as the extremal element.
pub fn growth_table(
    graph: &SimplicialGraph,
    n_max: usize,
    mode: OmegaMode,
    budget: Option<u64>,
) -> Result<GrowthTable, OracleError> {
    let mut rows = Vec::with_capacity(n_max);
    let mut best: Option<(u64, GeodesicForm, u64)> = None;
    let mut level = vec![normal_form(graph, &Word::empty())];
    for n in 1..=n_max {
        let start = Instant::now();
        level = ball_level_from(graph, &level);
        for e in &level {
            let result = exact_divisibility(graph, &e.as_word(), mode, budget)?;
            if best.as_ref().map(|(v, _, _)| result.value > *v).unwrap_or(true) {
                best = Some((result.value, e.clone(), result.witness.degree() as u64));
            }
        }
        let (value, element, witness_index) =
            best.clone().ok_or_else(|| OracleError::Internal("empty ball level".into()))?;
        rows.push(GrowthRow { n, value, element, witness_index, seconds: start.elapsed().as_secs_f64() });
    }
    Ok(GrowthTable { mode, rows })
}

/// Instance-level check of the divisibility inequality when passing to the
/// special subgroup on an induced subgraph: `D_{A_Λ}(w) ≤ D_{A_Γ}(w)`.
///
/// `sub` must be an induced subgraph of `graph`; `w` is a word over `sub`.
pub fn subgroup_inequality_check(
    graph: &SimplicialGraph,
    sub: &SimplicialGraph,
    w: &Word,
) -> Result<bool, OracleError> {
    for g in 0..sub.gen_count() {
        if graph.id(sub.name(g)).is_none() {
            return Err(OracleError::NotInduced(format!(
                "vertex `{}` is not in the ambient graph",
                sub.name(g)
            )));
        }
    }
    for a in 0..sub.gen_count() {
        for b in a + 1..sub.gen_count() {
            let (ga, gb) = (graph.id(sub.name(a)).unwrap(), graph.id(sub.name(b)).unwrap());
            if sub.adjacent(a, b) != graph.adjacent(ga, gb) {
                return Err(OracleError::NotInduced(format!(
                    "edge {{{},{}}} disagrees with the ambient graph",
                    sub.name(a),
                    sub.name(b)
                )));
            }
        }
    }
    let mapped = Word::new(
        w.letters()
            .iter()
            .map(|l| crate::word::Letter {
                gen: graph.id(sub.name(l.gen)).expect("checked above"),
                sign: l.sign,
            })
            .collect(),
    );
    let d_sub = exact_divisibility(sub, w, OmegaMode::AllSubgroups, None)?;
    let d_amb = exact_divisibility(graph, &mapped, OmegaMode::AllSubgroups, None)?;
    Ok(d_sub.value <= d_amb.value)
}
