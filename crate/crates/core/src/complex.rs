//! Abstract simplicial complexes: Vietoris–Rips construction, barycentric
//! subdivision, simplicial maps, contiguity, and the commuting-diagram
//! condition checker.
//!
//! Simplices are strictly increasing vertex tuples, stored per dimension in
//! lexicographic order. A complex built by [`rips_complex`] is a *flag*
//! complex: it denotes the clique closure of its 1-skeleton, and membership
//! queries above the constructed dimension cap fall back to pairwise edge
//! checks, which is exact for flag complexes.

use crate::metric::FiniteMetricSpace;
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum ComplexError {
    #[error("beta must be positive, got {0}")]
    BetaNonPositive(f64),
    #[error("simplex budget exceeded: more than {limit} simplices at scale")]
    TooManySimplices { limit: usize },
    #[error("vertex map is partial: no image for vertex {vertex}")]
    PartialVertexMap { vertex: u32 },
    #[error("image of simplex {simplex:?} is {image:?}, not a simplex of the target")]
    NotSimplicial { simplex: Vec<u32>, image: Vec<u32> },
    #[error("maps must share {0}")]
    MismatchedComplexes(&'static str),
    #[error("complex is not flag: vertices {witness:?} are pairwise adjacent but span no simplex")]
    NotFlag { witness: Vec<u32> },
    #[error("complex is not pure: simplex {witness:?} is maximal below the top dimension")]
    NotPure { witness: Vec<u32> },
    #[error("empty complex")]
    Empty,
    #[error("simplex {simplex:?} has a repeated or unsorted vertex")]
    MalformedSimplex { simplex: Vec<u32> },
    #[error("subdivision source mismatch: map source is not the subdivision complex")]
    SubdivisionMismatch,
}

/// An abstract simplicial complex with a constructed-dimension cap.
///
/// `cap = None` means the stored simplices are the whole complex. `cap =
/// Some(k)` marks a truncated construction (e.g. a Rips complex expanded
/// only to dimension k); Betti numbers at dimension ≥ k are then upper
/// bounds only.
#[derive(Debug, Clone, PartialEq)]
pub struct SimplicialComplex {
    simplices: Vec<Vec<Vec<u32>>>,
    cap: Option<u32>,
    flag: bool,
}

impl SimplicialComplex {
    /// Builds the downward closure of a set of simplices. Input tuples may
    /// be unsorted; duplicates are merged.
    pub fn from_maximal_simplices(maximal: Vec<Vec<u32>>) -> Result<Self, ComplexError> {
        if maximal.is_empty() {
            return Err(ComplexError::Empty);
        }
        let mut per_dim: Vec<Vec<Vec<u32>>> = Vec::new();
        for raw in maximal {
            let mut s = raw.clone();
            s.sort_unstable();
            s.dedup();
            if s.len() != raw.len() {
                return Err(ComplexError::MalformedSimplex { simplex: raw });
            }
            if s.is_empty() {
                return Err(ComplexError::MalformedSimplex { simplex: raw });
            }
            for size in 1..=s.len() {
                each_subset(&s, size, &mut |face| {
                    let dim = size - 1;
                    if per_dim.len() <= dim {
                        per_dim.resize(dim + 1, Vec::new());
                    }
                    per_dim[dim].push(face.to_vec());
                });
            }
        }
        for level in &mut per_dim {
            level.sort_unstable();
            level.dedup();
        }
        while per_dim.last().is_some_and(Vec::is_empty) {
            per_dim.pop();
        }
        Ok(Self { simplices: per_dim, cap: None, flag: false })
    }

    pub(crate) fn from_parts(simplices: Vec<Vec<Vec<u32>>>, cap: Option<u32>, flag: bool) -> Self {
        Self { simplices, cap, flag }
    }

    /// Highest dimension with stored simplices.
    pub fn max_dim(&self) -> usize {
        self.simplices.len().saturating_sub(1)
    }

    /// Constructed-dimension cap; `None` when the stored simplices are the
    /// complete complex.
    pub fn cap(&self) -> Option<u32> {
        self.cap
    }

    /// Whether this complex denotes the flag closure of its 1-skeleton.
    pub fn is_flag_built(&self) -> bool {
        self.flag
    }

    pub fn simplices(&self, dim: usize) -> &[Vec<u32>] {
        self.simplices.get(dim).map_or(&[], Vec::as_slice)
    }

    /// Simplex counts per dimension.
    pub fn counts(&self) -> Vec<usize> {
        self.simplices.iter().map(Vec::len).collect()
    }

    pub fn vertices(&self) -> impl Iterator<Item = u32> + '_ {
        self.simplices(0).iter().map(|s| s[0])
    }

    pub fn vertex_count(&self) -> usize {
        self.simplices(0).len()
    }

    /// Largest vertex id plus one (vertex ids need not be contiguous).
    pub fn vertex_span(&self) -> usize {
        self.simplices(0).last().map_or(0, |s| s[0] as usize + 1)
    }

    pub fn index_of(&self, dim: usize, simplex: &[u32]) -> Option<usize> {
        self.simplices
            .get(dim)?
            .binary_search_by(|probe| probe.as_slice().cmp(simplex))
            .ok()
    }

    fn has_edge(&self, a: u32, b: u32) -> bool {
        let e = if a < b { [a, b] } else { [b, a] };
        self.index_of(1, &e).is_some()
    }

    /// Membership test for an arbitrary vertex set (deduplicated and sorted
    /// internally). For flag complexes the test uses pairwise edges, so it
    /// is exact even above the constructed cap.
    pub fn has_simplex(&self, vertices: &[u32]) -> bool {
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        if s.is_empty() {
            return false;
        }
        if s.len() == 1 {
            return self.index_of(0, &s).is_some();
        }
        if self.flag {
            for (i, &a) in s.iter().enumerate() {
                if self.index_of(0, &[a]).is_none() {
                    return false;
                }
                for &b in &s[i + 1..] {
                    if !self.has_edge(a, b) {
                        return false;
                    }
                }
            }
            true
        } else {
            self.index_of(s.len() - 1, &s).is_some()
        }
    }

    /// Simplices not contained in any stored simplex one dimension higher.
    pub fn maximal_simplices(&self) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        for dim in 0..=self.max_dim() {
            let above = self.simplices.get(dim + 1);
            for s in self.simplices(dim) {
                let covered = above.is_some_and(|level| {
                    level.iter().any(|t| is_subset(s, t))
                });
                if !covered {
                    out.push(s.clone());
                }
            }
        }
        out
    }

    /// `Some(m)` if every maximal simplex has dimension `m`.
    pub fn pure_dimension(&self) -> Option<usize> {
        let m = self.max_dim();
        for dim in 0..m {
            let above = &self.simplices[dim + 1];
            for s in self.simplices(dim) {
                if !above.iter().any(|t| is_subset(s, t)) {
                    return None;
                }
            }
        }
        Some(m)
    }

    /// True when every stored simplex of `self` is a simplex of `other`.
    pub fn is_subcomplex_of(&self, other: &SimplicialComplex) -> bool {
        for dim in 0..=self.max_dim() {
            for s in self.simplices(dim) {
                if !other.has_simplex(s) {
                    return false;
                }
            }
        }
        true
    }

    /// Verifies that the stored simplices are exactly the cliques of the
    /// 1-skeleton (up to the stored dimension, plus absence of larger
    /// cliques for complete complexes). Returns a witness clique on failure.
    pub fn verify_flag(&self) -> Result<(), ComplexError> {
        if self.flag {
            return Ok(());
        }
        let verts: Vec<u32> = self.vertices().collect();
        let top = self.max_dim();
        let probe_dim = if self.cap.is_none() { top + 1 } else { top };
        // Grow cliques vertex by vertex; any clique that is not a stored
        // simplex (or exceeds the complete complex's top dimension) is a
        // counterexample.
        let mut stack: Vec<(Vec<u32>, usize)> = verts.iter().map(|&v| (vec![v], 0)).collect();
        for (s, _) in stack.iter_mut() {
            s.shrink_to_fit();
        }
        let mut work: Vec<Vec<u32>> = Vec::new();
        for (s, _) in stack.drain(..) {
            work.push(s);
        }
        let mut frontier = work;
        let mut size = 1;
        while !frontier.is_empty() && size <= probe_dim {
            let mut next = Vec::new();
            for clique in &frontier {
                let last = *clique.last().unwrap();
                for &v in verts.iter().filter(|&&v| v > last) {
                    if clique.iter().all(|&u| self.has_edge(u, v)) {
                        let mut bigger = clique.clone();
                        bigger.push(v);
                        if bigger.len() - 1 > top || self.index_of(bigger.len() - 1, &bigger).is_none() {
                            return Err(ComplexError::NotFlag { witness: bigger });
                        }
                        next.push(bigger);
                    }
                }
            }
            frontier = next;
            size += 1;
        }
        Ok(())
    }
}

fn is_subset(small: &[u32], big: &[u32]) -> bool {
    let mut it = big.iter();
    small.iter().all(|v| it.any(|w| w == v))
}

fn each_subset(s: &[u32], size: usize, f: &mut impl FnMut(&[u32])) {
    let mut idx: Vec<usize> = (0..size).collect();
    let n = s.len();
    let mut buf = vec![0u32; size];
    loop {
        for (b, &i) in buf.iter_mut().zip(&idx) {
            *b = s[i];
        }
        f(&buf);
        // advance combination
        let mut k = size;
        loop {
            if k == 0 {
                return;
            }
            k -= 1;
            if idx[k] != k + n - size {
                idx[k] += 1;
                for j in (k + 1)..size {
                    idx[j] = idx[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Vietoris–Rips complex at scale `beta`: the flag complex of the graph
/// {(i,j) : d(i,j) < beta}, expanded to `max_dim` by clique enumeration in
/// degeneracy order. The threshold is strict, so ties at `beta` produce no
/// edge.
pub fn rips_complex(
    ms: &FiniteMetricSpace,
    beta: f64,
    max_dim: usize,
) -> Result<SimplicialComplex, ComplexError> {
    rips_complex_bounded(ms, beta, max_dim, usize::MAX)
}

/// [`rips_complex`] with an abort threshold on the total simplex count.
pub fn rips_complex_bounded(
    ms: &FiniteMetricSpace,
    beta: f64,
    max_dim: usize,
    max_simplices: usize,
) -> Result<SimplicialComplex, ComplexError> {
    if !(beta > 0.0) {
        return Err(ComplexError::BetaNonPositive(beta));
    }
    let n = ms.len();
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for i in 0..n {
        for j in (i + 1)..n {
            if ms.dist(i, j) < beta {
                adj[i].push(j as u32);
                adj[j].push(i as u32);
            }
        }
    }
    let order = degeneracy_order(&adj);
    let mut pos = vec![0u32; n];
    for (p, &v) in order.iter().enumerate() {
        pos[v as usize] = p as u32;
    }
    // Adjacency in position space, restricted to later positions.
    let mut up: Vec<Vec<u32>> = vec![Vec::new(); n];
    for v in 0..n {
        let pv = pos[v];
        let mut nbrs: Vec<u32> = adj[v].iter().map(|&u| pos[u as usize]).filter(|&pu| pu > pv).collect();
        nbrs.sort_unstable();
        up[pv as usize] = nbrs;
    }
    let full: Vec<Vec<u32>> = {
        let mut full = vec![Vec::new(); n];
        for v in 0..n {
            let mut nbrs: Vec<u32> = adj[v].iter().map(|&u| pos[u as usize]).collect();
            nbrs.sort_unstable();
            full[pos[v] as usize] = nbrs;
        }
        full
    };

    let mut per_dim: Vec<Vec<Vec<u32>>> = vec![Vec::new(); max_dim + 1];
    per_dim[0] = (0..n as u32).map(|v| vec![v]).collect();
    let mut budget = max_simplices.saturating_sub(n);

    struct Walk<'a> {
        full: &'a [Vec<u32>],
        order: &'a [u32],
        per_dim: &'a mut Vec<Vec<Vec<u32>>>,
        budget: &'a mut usize,
        max_dim: usize,
    }
    fn extend(w: &mut Walk, chain: &mut Vec<u32>, cands: &[u32], depth: usize) -> Result<(), ComplexError> {
        for (k, &u) in cands.iter().enumerate() {
            chain.push(u);
            if *w.budget == 0 {
                return Err(ComplexError::TooManySimplices { limit: usize::MAX });
            }
            *w.budget -= 1;
            let mut simplex: Vec<u32> = chain.iter().map(|&p| w.order[p as usize]).collect();
            simplex.sort_unstable();
            w.per_dim[depth].push(simplex);
            if depth < w.max_dim {
                let rest = &cands[k + 1..];
                let next: Vec<u32> = intersect_sorted(rest, &w.full[u as usize]);
                if !next.is_empty() {
                    extend(w, chain, &next, depth + 1)?;
                }
            }
            chain.pop();
        }
        Ok(())
    }

    if max_dim >= 1 {
        let mut w = Walk { full: &full, order: &order, per_dim: &mut per_dim, budget: &mut budget, max_dim };
        for p in 0..n as u32 {
            let cands = up[p as usize].clone();
            let mut chain = vec![p];
            extend(&mut w, &mut chain, &cands, 1).map_err(|_| ComplexError::TooManySimplices {
                limit: max_simplices,
            })?;
        }
    }
    for level in &mut per_dim {
        level.sort_unstable();
    }
    while per_dim.last().is_some_and(Vec::is_empty) {
        per_dim.pop();
    }
    // If expansion died out below the cap there are no larger cliques at
    // all, so the stored simplices are the complete flag complex.
    let cap = if per_dim.len() == max_dim + 1 { Some(max_dim as u32) } else { None };
    Ok(SimplicialComplex::from_parts(per_dim, cap, true))
}

fn intersect_sorted(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Degeneracy ordering: repeatedly remove a vertex of minimum remaining
/// degree (lowest id on ties).
fn degeneracy_order(adj: &[Vec<u32>]) -> Vec<u32> {
    let n = adj.len();
    let mut deg: Vec<usize> = adj.iter().map(Vec::len).collect();
    let mut removed = vec![false; n];
    let mut heap: std::collections::BinaryHeap<std::cmp::Reverse<(usize, u32)>> =
        (0..n).map(|v| std::cmp::Reverse((deg[v], v as u32))).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(std::cmp::Reverse((d, v))) = heap.pop() {
        let vi = v as usize;
        if removed[vi] || d != deg[vi] {
            continue;
        }
        removed[vi] = true;
        order.push(v);
        for &u in &adj[vi] {
            let ui = u as usize;
            if !removed[ui] {
                deg[ui] -= 1;
                heap.push(std::cmp::Reverse((deg[ui], u)));
            }
        }
    }
    order
}

/// Barycentric subdivision: one vertex per base simplex, one m-simplex per
/// strict chain of m+1 nested base simplices.
#[derive(Debug, Clone, PartialEq)]
pub struct SubdivisionComplex {
    complex: SimplicialComplex,
    vertex_base: Vec<Vec<u32>>,
    base_offsets: Vec<usize>,
}

impl SubdivisionComplex {
    pub fn complex(&self) -> &SimplicialComplex {
        &self.complex
    }

    /// The base simplex a subdivision vertex stands for.
    pub fn base_of_vertex(&self, v: u32) -> &[u32] {
        &self.vertex_base[v as usize]
    }

    pub fn vertex_base_table(&self) -> &[Vec<u32>] {
        &self.vertex_base
    }

    /// Subdivision vertex id of a base simplex, if present.
    pub fn vertex_of_base(&self, base: &SimplicialComplex, simplex: &[u32]) -> Option<u32> {
        let dim = simplex.len().checked_sub(1)?;
        let idx = base.index_of(dim, simplex)?;
        Some((self.base_offsets[dim] + idx) as u32)
    }
}

pub fn barycentric_subdivision(k: &SimplicialComplex) -> SubdivisionComplex {
    let counts = k.counts();
    let mut offsets = vec![0usize; counts.len() + 1];
    for (d, c) in counts.iter().enumerate() {
        offsets[d + 1] = offsets[d] + c;
    }
    let total = offsets[counts.len()];
    let mut vertex_base: Vec<Vec<u32>> = Vec::with_capacity(total);
    for dim in 0..counts.len() {
        for s in k.simplices(dim) {
            vertex_base.push(s.clone());
        }
    }

    // chains[flat id] = all strict chains of base simplices ending there,
    // as increasing tuples of subdivision vertex ids.
    let mut chains: Vec<Vec<Vec<u32>>> = Vec::with_capacity(total);
    let mut per_dim: Vec<Vec<Vec<u32>>> = vec![Vec::new(); counts.len()];
    for dim in 0..counts.len() {
        for (idx, s) in k.simplices(dim).iter().enumerate() {
            let flat = (offsets[dim] + idx) as u32;
            let mut ending: Vec<Vec<u32>> = vec![vec![flat]];
            for sub_size in 1..s.len() {
                each_subset(s, sub_size, &mut |face| {
                    let fdim = sub_size - 1;
                    let fidx = k.index_of(fdim, face).expect("closure invariant");
                    let fflat = offsets[fdim] + fidx;
                    for c in &chains[fflat] {
                        let mut longer = c.clone();
                        longer.push(flat);
                        ending.push(longer);
                    }
                });
            }
            for c in &ending {
                per_dim[c.len() - 1].push(c.clone());
            }
            chains.push(ending);
        }
    }
    for level in &mut per_dim {
        level.sort_unstable();
    }
    while per_dim.last().is_some_and(Vec::is_empty) {
        per_dim.pop();
    }
    let complex = SimplicialComplex::from_parts(per_dim, k.cap(), false);
    SubdivisionComplex { complex, vertex_base, base_offsets: offsets }
}

/// A validated simplicial map between two complexes.
#[derive(Debug, Clone)]
pub struct SimplicialMap<'a> {
    source: &'a SimplicialComplex,
    target: &'a SimplicialComplex,
    vertex_map: Vec<u32>,
}

impl<'a> SimplicialMap<'a> {
    pub fn source(&self) -> &'a SimplicialComplex {
        self.source
    }

    pub fn target(&self) -> &'a SimplicialComplex {
        self.target
    }

    pub fn image_of_vertex(&self, v: u32) -> u32 {
        self.vertex_map[v as usize]
    }

    /// Image of a simplex as a sorted, deduplicated vertex set.
    pub fn image_of_simplex(&self, simplex: &[u32]) -> Vec<u32> {
        let mut img: Vec<u32> = simplex.iter().map(|&v| self.vertex_map[v as usize]).collect();
        img.sort_unstable();
        img.dedup();
        img
    }
}

/// Validates that `vertex_map` induces a simplicial map from `k` to `l`.
/// The map must assign an image to every vertex of `k`; use `u32::MAX` for
/// padding at non-vertex indices.
pub fn check_simplicial<'a>(
    vertex_map: &[u32],
    k: &'a SimplicialComplex,
    l: &'a SimplicialComplex,
) -> Result<SimplicialMap<'a>, ComplexError> {
    let span = k.vertex_span();
    let mut map = vec![u32::MAX; span];
    for v in k.vertices() {
        let img = vertex_map.get(v as usize).copied().unwrap_or(u32::MAX);
        if img == u32::MAX {
            return Err(ComplexError::PartialVertexMap { vertex: v });
        }
        map[v as usize] = img;
    }
    let m = SimplicialMap { source: k, target: l, vertex_map: map };
    for dim in 0..=k.max_dim() {
        for s in k.simplices(dim) {
            let img = m.image_of_simplex(s);
            if !l.has_simplex(&img) {
                return Err(ComplexError::NotSimplicial { simplex: s.clone(), image: img });
            }
        }
    }
    Ok(m)
}

/// Result of a contiguity check; `witness` is a violating source simplex.
#[derive(Debug, Clone, PartialEq)]
pub struct ContiguityCheck {
    pub holds: bool,
    pub witness: Option<Vec<u32>>,
}

/// Two simplicial maps are contiguous when φ(σ) ∪ ψ(σ) is a target simplex
/// for every source simplex σ. For flag source and target this reduces
/// exactly to the vertex- and edge-level checks, which also covers cliques
/// above the constructed cap.
pub fn contiguous(
    phi: &SimplicialMap,
    psi: &SimplicialMap,
) -> Result<ContiguityCheck, ComplexError> {
    let same_source = std::ptr::eq(phi.source, psi.source) || phi.source == psi.source;
    if !same_source {
        return Err(ComplexError::MismatchedComplexes("source"));
    }
    let same_target = std::ptr::eq(phi.target, psi.target) || phi.target == psi.target;
    if !same_target {
        return Err(ComplexError::MismatchedComplexes("target"));
    }
    let src = phi.source;
    let tgt = phi.target;
    if src.is_flag_built() && tgt.is_flag_built() {
        for s in src.simplices(0) {
            let v = s[0];
            let u = [phi.image_of_vertex(v), psi.image_of_vertex(v)];
            if !tgt.has_simplex(&u) {
                return Ok(ContiguityCheck { holds: false, witness: Some(s.clone()) });
            }
        }
        for e in src.simplices(1) {
            let u = [
                phi.image_of_vertex(e[0]),
                phi.image_of_vertex(e[1]),
                psi.image_of_vertex(e[0]),
                psi.image_of_vertex(e[1]),
            ];
            if !tgt.has_simplex(&u) {
                return Ok(ContiguityCheck { holds: false, witness: Some(e.clone()) });
            }
        }
        return Ok(ContiguityCheck { holds: true, witness: None });
    }
    for dim in 0..=src.max_dim() {
        for s in src.simplices(dim) {
            let mut u = phi.image_of_simplex(s);
            u.extend(psi.image_of_simplex(s));
            if !tgt.has_simplex(&u) {
                return Ok(ContiguityCheck { holds: false, witness: Some(s.clone()) });
            }
        }
    }
    Ok(ContiguityCheck { holds: true, witness: None })
}

/// Outcome of the commuting-diagram condition check.
#[derive(Debug, Clone, PartialEq)]
pub struct HomotopyConditions {
    pub holds: bool,
    /// Original vertex where g(v̂) ≠ f(v), if any.
    pub vertex_mismatch: Option<u32>,
    /// Base simplex σ with f(σ) ∪ {g(σ̂)} not a target simplex, if any.
    pub simplex_violation: Option<Vec<u32>>,
}

/// Checks the two combinatorial conditions under which a map on the
/// subdivision glues with a map on the base complex up to homotopy:
/// (a) g agrees with f on original vertices, and (b) f(σ) ∪ {g(σ̂)} is a
/// simplex of the target for every base simplex σ.
///
/// Preconditions: the target is flag and the base complex is pure; both are
/// verified here.
pub fn check_homotopy_conditions(
    f: &SimplicialMap,
    g: &SimplicialMap,
    sd: &SubdivisionComplex,
) -> Result<HomotopyConditions, ComplexError> {
    let k = f.source();
    let l = f.target();
    if !(std::ptr::eq(l, g.target()) || l == g.target()) {
        return Err(ComplexError::MismatchedComplexes("target"));
    }
    if !(std::ptr::eq(g.source(), sd.complex()) || g.source() == sd.complex()) {
        return Err(ComplexError::SubdivisionMismatch);
    }
    l.verify_flag()?;
    if k.pure_dimension().is_none() {
        let witness = k
            .maximal_simplices()
            .into_iter()
            .find(|s| s.len() - 1 < k.max_dim())
            .unwrap_or_default();
        return Err(ComplexError::NotPure { witness });
    }

    for s in k.simplices(0) {
        let v = s[0];
        let vhat = sd.vertex_of_base(k, s).expect("vertex barycenter exists");
        if g.image_of_vertex(vhat) != f.image_of_vertex(v) {
            return Ok(HomotopyConditions {
                holds: false,
                vertex_mismatch: Some(v),
                simplex_violation: None,
            });
        }
    }
    for dim in 0..=k.max_dim() {
        for s in k.simplices(dim) {
            let shat = sd.vertex_of_base(k, s).expect("barycenter exists");
            let mut u = f.image_of_simplex(s);
            u.push(g.image_of_vertex(shat));
            if !l.has_simplex(&u) {
                return Ok(HomotopyConditions {
                    holds: false,
                    vertex_mismatch: None,
                    simplex_violation: Some(s.clone()),
                });
            }
        }
    }
    Ok(HomotopyConditions { holds: true, vertex_mismatch: None, simplex_violation: None })
}

/// True when the 1-skeleton is connected (isolated vertices count as
/// components).
pub fn is_connected(k: &SimplicialComplex) -> bool {
    let verts: Vec<u32> = k.vertices().collect();
    if verts.is_empty() {
        return true;
    }
    let idx_of = |v: u32| verts.binary_search(&v).unwrap();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); verts.len()];
    for e in k.simplices(1) {
        let (a, b) = (idx_of(e[0]), idx_of(e[1]));
        adj[a].push(b);
        adj[b].push(a);
    }
    let mut seen = vec![false; verts.len()];
    let mut stack = vec![0usize];
    seen[0] = true;
    let mut visited = 1;
    while let Some(v) = stack.pop() {
        for &u in &adj[v] {
            if !seen[u] {
                seen[u] = true;
                visited += 1;
                stack.push(u);
            }
        }
    }
    visited == verts.len()
}
