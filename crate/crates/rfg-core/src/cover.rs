//! Finite covers of the Salvetti complex, encoded on 1-skeleta.
//!
//! A degree-m cover is a commuting-respecting tuple of permutations of
//! {0,…,m−1}, one per generator: the commutation invariant on every edge of Γ
//! is exactly the condition that all defining relators act trivially. Partial
//! covers carry per-generator partial injections; squares and higher cubes are
//! implicit under the square-closed convention (a square exists whenever its
//! four boundary edges do).

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{GenId, SimplicialGraph};
use crate::word::{Letter, Sign, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoverError {
    #[error("NotAPermutation: images for `{gen}` are not a bijection of 0..{degree}")]
    NotAPermutation { gen: String, degree: usize },
    #[error("CommutationFailure: on edge {{{a},{b}}} at vertex {vertex}: {a} then {b} gives {left}, {b} then {a} gives {right}")]
    CommutationFailure { a: String, b: String, vertex: usize, left: usize, right: usize },
    #[error("UnknownGenerator: generator #{0} is not part of this cover")]
    UnknownGenerator(GenId),
    #[error("IndexOfIntransitive: index is only the subgroup index for transitive covers")]
    IndexOfIntransitive,
    #[error("CompletionCommutationFailure: closing the partial cover broke commutation on edge {{{a},{b}}} at vertex {vertex}")]
    CompletionCommutationFailure { a: String, b: String, vertex: usize },
    #[error("BadBasepoint: basepoint {basepoint} out of range for degree {degree}")]
    BadBasepoint { basepoint: usize, degree: usize },
    #[error("PartialConflict: generator `{gen}` already maps {detail}")]
    PartialConflict { gen: String, detail: String },
}

/// JSON shape: `{"degree":2,"basepoint":0,"perms":{"a":[1,0]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CoverSpec {
    pub degree: usize,
    pub basepoint: usize,
    pub perms: BTreeMap<String, Vec<usize>>,
}

/// A pointed finite cover of the Salvetti complex of Γ.
///
/// A transitive pointed cover *is* a finite-index subgroup (the basepoint
/// stabilizer), of index equal to the degree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PermutationCover {
    degree: usize,
    basepoint: usize,
    perms: Vec<Vec<usize>>,
    inverses: Vec<Vec<usize>>,
}

impl PermutationCover {
    /// Validates permutations and the commutation invariant on every edge of Γ.
    pub fn make(
        graph: &SimplicialGraph,
        degree: usize,
        perms: Vec<Vec<usize>>,
        basepoint: usize,
    ) -> Result<Self, CoverError> {
        assert_eq!(perms.len(), graph.gen_count(), "one permutation per generator");
        if degree == 0 || basepoint >= degree {
            return Err(CoverError::BadBasepoint { basepoint, degree });
        }
        let mut inverses = Vec::with_capacity(perms.len());
        for (g, perm) in perms.iter().enumerate() {
            let mut inv = vec![usize::MAX; degree];
            if perm.len() != degree {
                return Err(CoverError::NotAPermutation { gen: graph.name(g).into(), degree });
            }
            for (v, &w) in perm.iter().enumerate() {
                if w >= degree || inv[w] != usize::MAX {
                    return Err(CoverError::NotAPermutation {
                        gen: graph.name(g).into(),
                        degree,
                    });
                }
                inv[w] = v;
            }
            inverses.push(inv);
        }
        for (a, b) in graph.edges() {
            for v in 0..degree {
                let left = perms[b][perms[a][v]]; // a then b
                let right = perms[a][perms[b][v]]; // b then a
                if left != right {
                    return Err(CoverError::CommutationFailure {
                        a: graph.name(a).into(),
                        b: graph.name(b).into(),
                        vertex: v,
                        left,
                        right,
                    });
                }
            }
        }
        Ok(Self { degree, basepoint, perms, inverses })
    }

    /// The degree-1 cover: every generator acts trivially.
    pub fn trivial(graph: &SimplicialGraph) -> Self {
        Self {
            degree: 1,
            basepoint: 0,
            perms: vec![vec![0]; graph.gen_count()],
            inverses: vec![vec![0]; graph.gen_count()],
        }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn basepoint(&self) -> usize {
        self.basepoint
    }

    pub fn gen_count(&self) -> usize {
        self.perms.len()
    }

    pub fn perm(&self, g: GenId) -> &[usize] {
        &self.perms[g]
    }

    pub fn apply_letter(&self, l: Letter, v: usize) -> Result<usize, CoverError> {
        if l.gen >= self.perms.len() {
            return Err(CoverError::UnknownGenerator(l.gen));
        }
        Ok(match l.sign {
            Sign::Pos => self.perms[l.gen][v],
            Sign::Neg => self.inverses[l.gen][v],
        })
    }

    /// The permutation induced by `w`; letters act left-to-right.
    pub fn act(&self, w: &Word) -> Result<Vec<usize>, CoverError> {
        let mut perm: Vec<usize> = (0..self.degree).collect();
        for &l in w.letters() {
            for slot in perm.iter_mut() {
                *slot = self.apply_letter(l, *slot)?;
            }
        }
        Ok(perm)
    }

    pub fn act_on_basepoint(&self, w: &Word) -> Result<usize, CoverError> {
        let mut v = self.basepoint;
        for &l in w.letters() {
            v = self.apply_letter(l, v)?;
        }
        Ok(v)
    }

    /// True iff `w` lies outside the basepoint stabilizer.
    pub fn separates(&self, w: &Word) -> bool {
        self.act_on_basepoint(w).map(|v| v != self.basepoint).unwrap_or(false)
    }

    pub fn is_transitive(&self) -> bool {
        let mut seen = vec![false; self.degree];
        let mut stack = vec![self.basepoint];
        seen[self.basepoint] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for g in 0..self.perms.len() {
                for w in [self.perms[g][v], self.inverses[g][v]] {
                    if !seen[w] {
                        seen[w] = true;
                        count += 1;
                        stack.push(w);
                    }
                }
            }
        }
        count == self.degree
    }

    /// Subgroup index of the basepoint stabilizer; only valid when transitive.
    pub fn index(&self) -> Result<usize, CoverError> {
        if self.is_transitive() {
            Ok(self.degree)
        } else {
            Err(CoverError::IndexOfIntransitive)
        }
    }

    pub fn to_spec(&self, graph: &SimplicialGraph) -> CoverSpec {
        CoverSpec {
            degree: self.degree,
            basepoint: self.basepoint,
            perms: (0..self.perms.len())
                .map(|g| (graph.name(g).to_owned(), self.perms[g].clone()))
                .collect(),
        }
    }

    pub fn from_spec(graph: &SimplicialGraph, spec: &CoverSpec) -> Result<Self, CoverError> {
        let mut perms = vec![Vec::new(); graph.gen_count()];
        for (name, perm) in &spec.perms {
            match graph.id(name) {
                Some(g) => perms[g] = perm.clone(),
                None => return Err(CoverError::UnknownGenerator(usize::MAX)),
            }
        }
        for (g, p) in perms.iter().enumerate() {
            if p.is_empty() && spec.degree > 0 && graph.gen_count() > 0 {
                // missing generator entry
                return Err(CoverError::NotAPermutation {
                    gen: graph.name(g).into(),
                    degree: spec.degree,
                });
            }
        }
        Self::make(graph, spec.degree, perms, spec.basepoint)
    }
}

/// JSON shape: `{"vertex_count":3,"partials":{"a":[1,null,null]}}`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PartialCoverSpec {
    pub vertex_count: usize,
    pub partials: BTreeMap<String, Vec<Option<usize>>>,
}

/// The 1-skeleton of a compact partial cover: one partial injection per
/// generator. A directed `a`-edge `v → w` means `σ_a(v) = w`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialCover {
    vertex_count: usize,
    forward: Vec<Vec<Option<usize>>>,
    backward: Vec<Vec<Option<usize>>>,
}

impl PartialCover {
    pub fn new(gen_count: usize, vertex_count: usize) -> Self {
        Self {
            vertex_count,
            forward: vec![vec![None; vertex_count]; gen_count],
            backward: vec![vec![None; vertex_count]; gen_count],
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn gen_count(&self) -> usize {
        self.forward.len()
    }

    pub fn image(&self, g: GenId, v: usize) -> Option<usize> {
        self.forward[g][v]
    }

    pub fn preimage(&self, g: GenId, v: usize) -> Option<usize> {
        self.backward[g][v]
    }

    /// Adds the directed edge `σ_g(v) = w`. Idempotent; rejects anything that
    /// would break local injectivity.
    pub fn set(&mut self, graph: &SimplicialGraph, g: GenId, v: usize, w: usize) -> Result<(), CoverError> {
        match (self.forward[g][v], self.backward[g][w]) {
            (Some(old), _) if old == w => Ok(()),
            (Some(old), _) => Err(CoverError::PartialConflict {
                gen: graph.name(g).into(),
                detail: format!("{v} to {old}, cannot also map {v} to {w}"),
            }),
            (None, Some(old)) => Err(CoverError::PartialConflict {
                gen: graph.name(g).into(),
                detail: format!("{old} to {w}, cannot also map {v} to {w}"),
            }),
            (None, None) => {
                self.forward[g][v] = Some(w);
                self.backward[g][w] = Some(v);
                Ok(())
            }
        }
    }

    /// Follows a signed edge at `v` if present.
    pub fn traverse(&self, l: Letter, v: usize) -> Option<usize> {
        match l.sign {
            Sign::Pos => self.forward[l.gen][v],
            Sign::Neg => self.backward[l.gen][v],
        }
    }

    pub fn direction_present(&self, l: Letter, v: usize) -> bool {
        self.traverse(l, v).is_some()
    }

    pub fn to_spec(&self, graph: &SimplicialGraph) -> PartialCoverSpec {
        PartialCoverSpec {
            vertex_count: self.vertex_count,
            partials: (0..self.forward.len())
                .map(|g| (graph.name(g).to_owned(), self.forward[g].clone()))
                .collect(),
        }
    }

    pub fn from_spec(graph: &SimplicialGraph, spec: &PartialCoverSpec) -> Result<Self, CoverError> {
        let mut pc = PartialCover::new(graph.gen_count(), spec.vertex_count);
        for (name, images) in &spec.partials {
            let g = graph.id(name).ok_or(CoverError::UnknownGenerator(usize::MAX))?;
            for (v, &img) in images.iter().enumerate() {
                if let Some(w) = img {
                    if v >= spec.vertex_count || w >= spec.vertex_count {
                        return Err(CoverError::PartialConflict {
                            gen: name.clone(),
                            detail: format!("{v} to {w} is out of range"),
                        });
                    }
                    pc.set(graph, g, v, w)?;
                }
            }
        }
        Ok(pc)
    }
}

/// A corner of a would-be square that is missing: the two signed directions
/// are present at `vertex` but do not close up.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CornerViolation {
    pub vertex: usize,
    pub first: (String, i8),
    pub second: (String, i8),
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LocalIsometryReport {
    pub violations: Vec<CornerViolation>,
}

impl LocalIsometryReport {
    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }
}

fn sign_tag(s: Sign) -> i8 {
    match s {
        Sign::Pos => 1,
        Sign::Neg => -1,
    }
}

/// Checks condition (2) of a cubical local isometry combinatorially: for each
/// vertex and each pair of commuting signed directions present there, the
/// completing square must exist and close up.
pub fn check_local_isometry(graph: &SimplicialGraph, pc: &PartialCover) -> LocalIsometryReport {
    let mut violations = Vec::new();
    for v in 0..pc.vertex_count() {
        for (a, b) in graph.edges() {
            for sa in [Sign::Pos, Sign::Neg] {
                for sb in [Sign::Pos, Sign::Neg] {
                    let la = Letter { gen: a, sign: sa };
                    let lb = Letter { gen: b, sign: sb };
                    let (v1, v2) = match (pc.traverse(la, v), pc.traverse(lb, v)) {
                        (Some(v1), Some(v2)) => (v1, v2),
                        _ => continue,
                    };
                    let closes = match (pc.traverse(lb, v1), pc.traverse(la, v2)) {
                        (Some(x), Some(y)) => x == y,
                        _ => false,
                    };
                    if !closes {
                        violations.push(CornerViolation {
                            vertex: v,
                            first: (graph.name(a).into(), sign_tag(sa)),
                            second: (graph.name(b).into(), sign_tag(sb)),
                        });
                    }
                }
            }
        }
    }
    LocalIsometryReport { violations }
}

/// Canonical completion on 1-skeleta: closes each maximal directed path of
/// every generator into a cycle (last vertex maps back to the first) and fixes
/// isolated vertices. Adds no vertices, so the degree is the vertex count.
///
/// The commutation of the result is forced for locally isometric input; the
/// error doubles as the falsifier exercised by the negative tests.
pub fn canonical_complete(
    graph: &SimplicialGraph,
    pc: &PartialCover,
) -> Result<PermutationCover, CoverError> {
    let n = pc.vertex_count();
    let mut perms = Vec::with_capacity(pc.gen_count());
    for g in 0..pc.gen_count() {
        let mut perm: Vec<Option<usize>> = (0..n).map(|v| pc.image(g, v)).collect();
        for (t, slot) in perm.iter_mut().enumerate() {
            if slot.is_some() {
                continue;
            }
            // walk back to the start of the maximal path ending at t
            let mut start = t;
            while let Some(p) = pc.preimage(g, start) {
                start = p;
            }
            *slot = Some(start);
        }
        perms.push(perm.into_iter().map(|v| v.expect("all images assigned")).collect());
    }
    PermutationCover::make(graph, n, perms, 0).map_err(|e| match e {
        CoverError::CommutationFailure { a, b, vertex, .. } => {
            CoverError::CompletionCommutationFailure { a, b, vertex }
        }
        other => other,
    })
}

/// Splittable deterministic RNG for reproducible randomized checks.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e3779b97f4a7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, bound: usize) -> usize {
        (self.next_u64() % bound.max(1) as u64) as usize
    }
}

/// Closes all squares forced by inserting `σ_g(v) = w`, adding edges until a
/// fixpoint. Fails when a forced edge conflicts with local injectivity or two
/// forced corners disagree.
fn insert_square_closed(
    graph: &SimplicialGraph,
    pc: &mut PartialCover,
    g: GenId,
    v: usize,
    w: usize,
    rng: &mut SplitMix64,
) -> Result<(), ()> {
    pc.set(graph, g, v, w).map_err(|_| ())?;
    let mut work = vec![(g, v, w)];
    let mut steps = 0usize;
    while let Some((g, v, w)) = work.pop() {
        steps += 1;
        if steps > 64 * pc.vertex_count() * pc.gen_count().max(1) + 64 {
            return Err(()); // runaway closure; reject this insertion
        }
        // both endpoints of the new g-edge can open corners with link generators
        for &h in graph.link(g) {
            for sh in [Sign::Pos, Sign::Neg] {
                for (corner, gl) in [(v, Letter::pos(g)), (w, Letter::neg(g))] {
                    let lh = Letter { gen: h, sign: sh };
                    let u2 = match pc.traverse(lh, corner) {
                        Some(u2) => u2,
                        None => continue,
                    };
                    let u1 = pc.traverse(gl, corner).expect("edge just inserted");
                    match (pc.traverse(lh, u1), pc.traverse(gl, u2)) {
                        (Some(x), Some(y)) => {
                            if x != y {
                                return Err(());
                            }
                        }
                        (Some(x), None) => {
                            let (fv, fw) = directed(gl, u2, x);
                            pc.set(graph, gl.gen, fv, fw).map_err(|_| ())?;
                            work.push((gl.gen, fv, fw));
                        }
                        (None, Some(y)) => {
                            let (fv, fw) = directed(lh, u1, y);
                            pc.set(graph, lh.gen, fv, fw).map_err(|_| ())?;
                            work.push((lh.gen, fv, fw));
                        }
                        (None, None) => {
                            // choose any target with free slots on both sides
                            let n = pc.vertex_count();
                            let offset = rng.below(n);
                            let mut chosen = None;
                            for d in 0..n {
                                let cand = (offset + d) % n;
                                if slot_free(pc, lh, u1, cand) && slot_free(pc, gl, u2, cand) {
                                    chosen = Some(cand);
                                    break;
                                }
                            }
                            let cand = chosen.ok_or(())?;
                            let (av, aw) = directed(lh, u1, cand);
                            pc.set(graph, lh.gen, av, aw).map_err(|_| ())?;
                            work.push((lh.gen, av, aw));
                            let (bv, bw) = directed(gl, u2, cand);
                            pc.set(graph, gl.gen, bv, bw).map_err(|_| ())?;
                            work.push((gl.gen, bv, bw));
                        }
                    }
                }
            }
        }
    }
    Ok(())
}

/// Rewrites a signed traversal `from --l--> to` as a forward edge `(v, w)`.
fn directed(l: Letter, from: usize, to: usize) -> (usize, usize) {
    match l.sign {
        Sign::Pos => (from, to),
        Sign::Neg => (to, from),
    }
}

fn slot_free(pc: &PartialCover, l: Letter, from: usize, to: usize) -> bool {
    let (v, w) = directed(l, from, to);
    pc.image(l.gen, v).is_none() && pc.preimage(l.gen, w).is_none()
}

/// Random square-closed partial cover: repeatedly inserts a random edge and
/// repairs square closure, rolling back insertions that cannot close. The
/// output always has an empty `LocalIsometryReport`.
pub fn random_square_closed(
    graph: &SimplicialGraph,
    vertex_count: usize,
    insertions: usize,
    seed: u64,
) -> PartialCover {
    let mut rng = SplitMix64::new(seed);
    let mut pc = PartialCover::new(graph.gen_count(), vertex_count);
    if graph.gen_count() == 0 || vertex_count == 0 {
        return pc;
    }
    for _ in 0..insertions {
        let g = rng.below(graph.gen_count());
        let v = rng.below(vertex_count);
        let w = rng.below(vertex_count);
        if pc.image(g, v).is_some() || pc.preimage(g, w).is_some() {
            continue;
        }
        let mut trial = pc.clone();
        if insert_square_closed(graph, &mut trial, g, v, w, &mut rng).is_ok() {
            pc = trial;
        }
    }
    debug_assert!(check_local_isometry(graph, &pc).is_empty());
    pc
}
