//! Branched coverings of finite pseudo-manifolds.
//!
//! Coverings are built from monodromy cocycles on the dual graph of the base
//! (Fox completion) and read back by [`extract_cocycle`]. Sheets are numbered
//! `1..=n` in the public API.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::perm::{find_conjugator, PermGroup, Permutation};
use crate::simplicial::{is_good_subcomplex, is_pseudo_manifold, orient, Complex, Simplex, UnionFind, Vertex};

pub type VertexMap = BTreeMap<Vertex, Vertex>;

/// Top simplices and their codimension-1 adjacencies.
#[derive(Clone, Debug)]
pub struct DualGraph {
    pub tops: Vec<Simplex>,
    pub index: HashMap<Simplex, usize>,
    /// `(a, b, face)` with `a < b`, one per face shared by exactly two tops.
    pub edges: Vec<(usize, usize, Simplex)>,
    pub adjacency: Vec<Vec<(usize, usize)>>,
}

impl DualGraph {
    pub fn new(c: &Complex) -> Self {
        let tops: Vec<Simplex> = c.top_simplices().into_iter().cloned().collect();
        let index: HashMap<Simplex, usize> = tops.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect();
        let mut edges = Vec::new();
        let mut adjacency = vec![Vec::new(); tops.len()];
        for (face, cof) in c.codim1_incidence() {
            if cof.len() == 2 {
                let (a, b) = (index[&cof[0]], index[&cof[1]]);
                let (a, b) = if a < b { (a, b) } else { (b, a) };
                let e = edges.len();
                edges.push((a, b, face));
                adjacency[a].push((b, e));
                adjacency[b].push((a, e));
            }
        }
        for adj in &mut adjacency {
            adj.sort_unstable();
        }
        DualGraph { tops, index, edges, adjacency }
    }

    /// Breadth-first spanning forest rooted at the least top simplex.
    pub fn spanning_tree(&self) -> SpanningTree {
        let n = self.tops.len();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut is_tree = vec![false; self.edges.len()];
        let mut order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut queue = VecDeque::from([root]);
            while let Some(a) = queue.pop_front() {
                order.push(a);
                for &(b, e) in &self.adjacency[a] {
                    if !seen[b] {
                        seen[b] = true;
                        parent[b] = Some((a, e));
                        is_tree[e] = true;
                        queue.push_back(b);
                    }
                }
            }
        }
        SpanningTree { order, parent, is_tree }
    }
}

#[derive(Clone, Debug)]
pub struct SpanningTree {
    pub order: Vec<usize>,
    pub parent: Vec<Option<(usize, usize)>>,
    pub is_tree: Vec<bool>,
}

/// Checks that `base` can carry a covering: connected, homogeneous, every
/// codimension-1 face on one or two top simplices, good codimension-2 skeleton.
pub fn check_admissible_base(base: &Complex) -> Result<()> {
    if base.is_empty() {
        return Err(Error::BaseNotPseudoManifold("empty complex".into()));
    }
    if !base.is_connected() {
        return Err(Error::BaseNotPseudoManifold("base is disconnected".into()));
    }
    let rep = is_pseudo_manifold(base);
    if !rep.homogeneous {
        return Err(Error::BaseNotPseudoManifold("not homogeneous".into()));
    }
    if !rep.at_most_two_cofaces {
        return Err(Error::BaseNotPseudoManifold("a codimension-1 face has more than two cofaces".into()));
    }
    if !rep.skeleton_good {
        return Err(Error::BaseNotPseudoManifold("codimension-2 skeleton is not good".into()));
    }
    Ok(())
}

/// Sheet permutations on the dual edges of a base complex.
///
/// `transition(σ, τ)` sends sheet `i` over `σ` to the sheet over `τ` reached by
/// crossing the common face; unset transitions are the identity.
#[derive(Clone, Debug)]
pub struct MonodromyCocycle {
    pub base: Complex,
    pub branch: Complex,
    pub sheets: usize,
    transitions: BTreeMap<(Simplex, Simplex), Permutation>,
}

impl MonodromyCocycle {
    pub fn new(base: Complex, branch: Complex, sheets: usize) -> Result<Self> {
        if sheets == 0 {
            return Err(Error::CocycleInvalid("zero sheets".into()));
        }
        base.check_subcomplex(&branch)?;
        Ok(MonodromyCocycle { base, branch, sheets, transitions: BTreeMap::new() })
    }

    pub fn set_transition(&mut self, from: &[Vertex], to: &[Vertex], perm: Permutation) -> Result<()> {
        let (from, to) = (sorted(from), sorted(to));
        if !self.base.is_top(&from) || !self.base.is_top(&to) {
            return Err(Error::CocycleInvalid(format!("{from:?} or {to:?} is not a top simplex")));
        }
        let shared = from.iter().filter(|v| to.binary_search(v).is_ok()).count();
        if from == to || shared + 1 != from.len() {
            return Err(Error::CocycleInvalid(format!("{from:?} and {to:?} are not adjacent")));
        }
        if perm.degree() != self.sheets {
            return Err(Error::DegreeMismatch(self.sheets, perm.degree()));
        }
        if let Some(old) = self.transitions.get(&(from.clone(), to.clone())) {
            if *old != perm {
                return Err(Error::CocycleInvalid(format!("conflicting transitions {from:?} -> {to:?}")));
            }
        }
        self.transitions.insert((to.clone(), from.clone()), perm.inverse());
        self.transitions.insert((from, to), perm);
        Ok(())
    }

    /// Composes `perm` after the current transition across `from -> to`.
    pub fn push_transition(&mut self, from: &[Vertex], to: &[Vertex], perm: &Permutation) -> Result<()> {
        let current = self.transition(from, to);
        let key = (sorted(from), sorted(to));
        self.transitions.remove(&(key.1.clone(), key.0.clone()));
        self.transitions.remove(&key);
        self.set_transition(from, to, perm.compose(&current))
    }

    pub fn transition(&self, from: &[Vertex], to: &[Vertex]) -> Permutation {
        self.transitions
            .get(&(from.to_vec(), to.to_vec()))
            .cloned()
            .unwrap_or_else(|| Permutation::identity(self.sheets))
    }

    /// Non-identity transitions, each dual edge listed once (`from < to`).
    pub fn transitions(&self) -> Vec<(&Simplex, &Simplex, &Permutation)> {
        self.transitions.iter().filter(|((a, b), p)| a < b && !p.is_identity()).map(|((a, b), p)| (a, b, p)).collect()
    }

    /// Sheet relabeling `t'(σ,τ) = g_τ t(σ,τ) g_σ⁻¹`; describes the same covering.
    pub fn regauge(&self, gauge: &BTreeMap<Simplex, Permutation>) -> Result<Self> {
        let id = Permutation::identity(self.sheets);
        let mut out = MonodromyCocycle::new(self.base.clone(), self.branch.clone(), self.sheets)?;
        let dual = DualGraph::new(&self.base);
        for (a, b, _) in &dual.edges {
            let (s, t) = (&dual.tops[*a], &dual.tops[*b]);
            let gs = gauge.get(s).unwrap_or(&id);
            let gt = gauge.get(t).unwrap_or(&id);
            let p = gt.compose(&self.transition(s, t)).compose(&gs.inverse());
            if !p.is_identity() {
                out.set_transition(s, t, p)?;
            }
        }
        Ok(out)
    }

    /// Classes of `(top, sheet)` pairs over `s` glued across faces containing `s`.
    /// Returns the tops containing `s` and the classes, each a sorted list of
    /// `(index into those tops, 0-based sheet)`.
    fn fiber_classes(&self, dual: &DualGraph, s: &[Vertex]) -> (Vec<usize>, Vec<Vec<(usize, usize)>>) {
        let star: Vec<usize> = self.base.top_cofaces(s).iter().map(|t| dual.index[*t]).collect();
        let local: HashMap<usize, usize> = star.iter().enumerate().map(|(k, &t)| (t, k)).collect();
        let n = self.sheets;
        let mut uf = UnionFind::new(star.len() * n);
        for (ka, &a) in star.iter().enumerate() {
            for &(b, _) in &dual.adjacency[a] {
                if b < a {
                    continue;
                }
                if let Some(&kb) = local.get(&b) {
                    let p = self.transition(&dual.tops[a], &dual.tops[b]);
                    for i in 0..n {
                        uf.union(ka * n + i, kb * n + p.apply0(i));
                    }
                }
            }
        }
        let mut groups: BTreeMap<usize, Vec<(usize, usize)>> = BTreeMap::new();
        for k in 0..star.len() {
            for i in 0..n {
                groups.entry(uf.find(k * n + i)).or_default().push((k, i));
            }
        }
        let mut classes: Vec<Vec<(usize, usize)>> = groups.into_values().collect();
        classes.sort();
        (star, classes)
    }

    /// Local monodromy group of `s`, in the sheet labels of the least top containing `s`.
    pub fn local_group(&self, s: &[Vertex]) -> PermGroup {
        let dual = DualGraph::new(&self.base);
        self.local_group_with(&dual, s)
    }

    fn local_group_with(&self, dual: &DualGraph, s: &[Vertex]) -> PermGroup {
        let star: Vec<usize> = self.base.top_cofaces(s).iter().map(|t| dual.index[*t]).collect();
        let inside: BTreeSet<usize> = star.iter().copied().collect();
        let n = self.sheets;
        let mut gauge: HashMap<usize, Permutation> = HashMap::new();
        let mut gens = Vec::new();
        if let Some(&root) = star.first() {
            gauge.insert(root, Permutation::identity(n));
            let mut queue = VecDeque::from([root]);
            let mut used_edges = BTreeSet::new();
            while let Some(a) = queue.pop_front() {
                for &(b, e) in &dual.adjacency[a] {
                    if !inside.contains(&b) || !used_edges.insert(e) {
                        continue;
                    }
                    let t = self.transition(&dual.tops[a], &dual.tops[b]).compose(&gauge[&a]);
                    match gauge.get(&b) {
                        None => {
                            gauge.insert(b, t);
                            queue.push_back(b);
                        }
                        Some(gb) => gens.push(gb.inverse().compose(&t)),
                    }
                }
            }
        }
        PermGroup::generate(n, &gens).expect("subgroup of a symmetric group")
    }

    /// Image of the monodromy: loops based at the least top simplex.
    pub fn monodromy_group(&self) -> PermGroup {
        let dual = DualGraph::new(&self.base);
        let tree = dual.spanning_tree();
        let gauge = self.tree_gauge(&dual, &tree);
        let mut gens = Vec::new();
        for (e, (a, b, _)) in dual.edges.iter().enumerate() {
            if !tree.is_tree[e] {
                let t = self.transition(&dual.tops[*a], &dual.tops[*b]);
                gens.push(gauge[*b].inverse().compose(&t).compose(&gauge[*a]));
            }
        }
        PermGroup::generate(self.sheets, &gens).expect("subgroup of a symmetric group")
    }

    fn tree_gauge(&self, dual: &DualGraph, tree: &SpanningTree) -> Vec<Permutation> {
        let mut gauge = vec![Permutation::identity(self.sheets); dual.tops.len()];
        for &a in &tree.order {
            if let Some((p, _)) = tree.parent[a] {
                gauge[a] = self.transition(&dual.tops[p], &dual.tops[a]).compose(&gauge[p]);
            }
        }
        gauge
    }

    /// Checks base admissibility, goodness of the branch locus and flatness off it.
    pub fn validate(&self) -> Result<()> {
        check_admissible_base(&self.base)?;
        if !is_good_subcomplex(&self.base, &self.branch) {
            return Err(Error::BranchLocusNotGood);
        }
        let dual = DualGraph::new(&self.base);
        for s in self.base.simplices() {
            if self.branch.contains(s) || self.base.is_top(s) {
                continue;
            }
            let (star, classes) = self.fiber_classes(&dual, s);
            if classes.len() != self.sheets || classes.iter().any(|c| c.len() != star.len()) {
                return Err(Error::CocycleInvalid(format!(
                    "non-trivial local monodromy at {s:?} outside the branch locus"
                )));
            }
        }
        Ok(())
    }
}

fn sorted(s: &[Vertex]) -> Simplex {
    let mut v = s.to_vec();
    v.sort_unstable();
    v
}

/// `(base top, 0-based sheet)` labels of the top simplices of a total complex.
#[derive(Clone, Debug, Default)]
pub struct Labeling {
    pub top_of: HashMap<(Simplex, usize), Simplex>,
    pub label_of: HashMap<Simplex, (Simplex, usize)>,
}

impl Labeling {
    fn insert(&mut self, base_top: Simplex, sheet: usize, total_top: Simplex) {
        self.label_of.insert(total_top.clone(), (base_top.clone(), sheet));
        self.top_of.insert((base_top, sheet), total_top);
    }
}

/// Simplicial Fox completion of a monodromy cocycle.
pub fn fox_complete(mc: &MonodromyCocycle) -> Result<CoveringMap> {
    Ok(fox_complete_labeled(mc)?.0)
}

pub(crate) fn fox_complete_labeled(mc: &MonodromyCocycle) -> Result<(CoveringMap, Labeling)> {
    mc.validate()?;
    let dual = DualGraph::new(&mc.base);
    let n = mc.sheets;
    // fiber point over base vertex v containing (top, sheet)
    let mut vertex_id: HashMap<(usize, usize, Vertex), Vertex> = HashMap::new();
    let mut vertex_map = VertexMap::new();
    let mut next: Vertex = 1;
    for &v in mc.base.vertices() {
        let (star, classes) = mc.fiber_classes(&dual, &[v]);
        for class in classes {
            for &(k, i) in &class {
                vertex_id.insert((star[k], i, v), next);
            }
            vertex_map.insert(next, v);
            next += 1;
        }
    }
    let lift = |top: usize, sheet: usize, s: &[Vertex]| -> Simplex {
        let mut out: Simplex = s.iter().map(|&v| vertex_id[&(top, sheet, v)]).collect();
        out.sort_unstable();
        out
    };
    for s in mc.base.simplices() {
        if s.len() < 2 || mc.base.is_top(s) {
            continue;
        }
        let (star, classes) = mc.fiber_classes(&dual, s);
        let mut seen = BTreeSet::new();
        for class in &classes {
            let (k, i) = class[0];
            if !seen.insert(lift(star[k], i, s)) {
                return Err(Error::CoarseTriangulation(s.clone()));
            }
        }
    }
    let mut labels = Labeling::default();
    let mut tops = Vec::with_capacity(dual.tops.len() * n);
    for (t, sigma) in dual.tops.iter().enumerate() {
        for i in 0..n {
            let lifted = lift(t, i, sigma);
            labels.insert(sigma.clone(), i, lifted.clone());
            tops.push(lifted);
        }
    }
    let total = Complex::from_top(&tops)?;
    let f = CoveringMap::new(total, mc.base.clone(), vertex_map)?;
    Ok((f, labels))
}

/// A non-degenerate simplicial map with cached singular data.
#[derive(Clone, Debug)]
pub struct CoveringMap {
    pub total: Complex,
    pub base: Complex,
    pub vertex_map: VertexMap,
    pub degree: usize,
    local_degree: HashMap<Simplex, usize>,
    pub singular: Complex,
    pub pseudo_singular: Complex,
    pub branch: Complex,
    pub branch_preimage: Complex,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoveringReport {
    pub is_branched_covering: bool,
    pub degree: usize,
    pub local_degrees: BTreeMap<Vertex, usize>,
    pub singular: Vec<Simplex>,
    pub pseudo_singular: Vec<Simplex>,
    pub branch: Vec<Simplex>,
    pub branch_preimage: Vec<Simplex>,
    /// Orbit lengths of the local monodromy at each branch vertex.
    pub branch_orbits: BTreeMap<Vertex, Vec<usize>>,
    pub euler_total: i64,
    pub euler_base: i64,
    pub components: usize,
}

impl CoveringMap {
    pub fn new(total: Complex, base: Complex, vertex_map: VertexMap) -> Result<Self> {
        for v in total.vertices() {
            match vertex_map.get(v) {
                Some(w) if base.has_vertex(*w) => {}
                _ => return Err(Error::NotACovering(format!("vertex {v} has no image in the base"))),
            }
        }
        let image = |s: &[Vertex]| Complex::map_simplex(s, |v| vertex_map[&v]);
        for s in total.simplices() {
            let img = image(s);
            if img.len() != s.len() {
                return Err(Error::NotACovering(format!("{s:?} collapses")));
            }
            if !base.contains(&img) {
                return Err(Error::NotACovering(format!("image of {s:?} is not in the base")));
            }
        }
        let mut fiber: BTreeMap<Simplex, usize> = base.top_simplices().into_iter().map(|t| (t.clone(), 0)).collect();
        for t in total.top_simplices() {
            match fiber.get_mut(&image(t)) {
                Some(c) => *c += 1,
                None => return Err(Error::NotACovering(format!("top {t:?} maps to a non-top simplex"))),
            }
        }
        let degree = fiber.values().copied().next().unwrap_or(0);
        if degree == 0 || fiber.values().any(|&c| c != degree) {
            return Err(Error::NotACovering("fibers over top simplices differ in size".into()));
        }
        let mut local_degree = HashMap::with_capacity(total.len());
        let mut singular = Vec::new();
        for s in total.simplices() {
            let up = total.top_cofaces(s).len();
            let down = base.top_cofaces(&image(s)).len();
            if up % down != 0 {
                return Err(Error::NotACovering(format!("star of {s:?} is not a covering")));
            }
            let d = up / down;
            if d > 1 {
                singular.push(s.clone());
            }
            local_degree.insert(s.clone(), d);
        }
        let singular = total.subcomplex(&singular)?;
        let branch_simplices: Vec<Simplex> = singular.simplices().iter().map(|s| image(s)).collect();
        let branch = base.subcomplex(&branch_simplices)?;
        let preimage: Vec<Simplex> = total.simplices().iter().filter(|s| branch.contains(&image(s))).cloned().collect();
        let branch_preimage = total.subcomplex(&preimage)?;
        let rest: Vec<Simplex> = preimage.iter().filter(|s| !singular.contains(s)).cloned().collect();
        let pseudo_singular = total.subcomplex(&rest)?;
        Ok(CoveringMap {
            total,
            base,
            vertex_map,
            degree,
            local_degree,
            singular,
            pseudo_singular,
            branch,
            branch_preimage,
        })
    }

    pub fn identity(c: &Complex) -> Result<Self> {
        let map = c.vertices().iter().map(|&v| (v, v)).collect();
        Self::new(c.clone(), c.clone(), map)
    }

    pub fn apply(&self, v: Vertex) -> Vertex {
        self.vertex_map[&v]
    }

    pub fn image(&self, s: &[Vertex]) -> Simplex {
        Complex::map_simplex(s, |v| self.vertex_map[&v])
    }

    pub fn local_degree(&self, s: &[Vertex]) -> Option<usize> {
        self.local_degree.get(s).copied()
    }

    pub fn local_degrees(&self) -> BTreeMap<Vertex, usize> {
        self.total.vertices().iter().map(|&v| (v, self.local_degree[&vec![v]])).collect()
    }

    /// Vertices of the total complex over `w`.
    pub fn fiber(&self, w: Vertex) -> Vec<Vertex> {
        self.vertex_map.iter().filter(|(_, &b)| b == w).map(|(&a, _)| a).collect()
    }

    /// Simplices of the total complex over the base simplex `s`.
    pub fn simplex_fiber(&self, s: &[Vertex]) -> Vec<Simplex> {
        match s.first() {
            None => Vec::new(),
            Some(&w) => {
                let mut out = BTreeSet::new();
                for v in self.fiber(w) {
                    for c in self.total.cofaces(&[v]) {
                        if c.len() == s.len() && self.image(c) == s {
                            out.insert(c.clone());
                        }
                    }
                }
                out.into_iter().collect()
            }
        }
    }

    pub fn is_branched_covering(&self) -> bool {
        self.base.is_connected()
            && is_good_subcomplex(&self.total, &self.singular)
            && is_good_subcomplex(&self.base, &self.branch)
    }

    pub fn analyze(&self) -> CoveringReport {
        let mut branch_orbits = BTreeMap::new();
        for &w in self.branch.vertices() {
            let mut sizes: Vec<usize> = self.fiber(w).iter().map(|&v| self.local_degree[&vec![v]]).collect();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            branch_orbits.insert(w, sizes);
        }
        CoveringReport {
            is_branched_covering: self.is_branched_covering(),
            degree: self.degree,
            local_degrees: self.local_degrees(),
            singular: self.singular.simplices().to_vec(),
            pseudo_singular: self.pseudo_singular.simplices().to_vec(),
            branch: self.branch.simplices().to_vec(),
            branch_preimage: self.branch_preimage.simplices().to_vec(),
            branch_orbits,
            euler_total: self.total.euler_characteristic(),
            euler_base: self.base.euler_characteristic(),
            components: self.total.components().len(),
        }
    }

    /// Restrictions of the map to the components of the total complex.
    pub fn components(&self) -> Result<Vec<CoveringMap>> {
        self.total
            .components()
            .into_iter()
            .map(|c| {
                let map = c.vertices().iter().map(|v| (*v, self.vertex_map[v])).collect();
                CoveringMap::new(c, self.base.clone(), map)
            })
            .collect()
    }

    /// Restriction to the total component containing vertex `v`.
    pub fn component_containing(&self, v: Vertex) -> Result<CoveringMap> {
        for c in self.total.components() {
            if c.has_vertex(v) {
                let map = c.vertices().iter().map(|v| (*v, self.vertex_map[v])).collect();
                return CoveringMap::new(c, self.base.clone(), map);
            }
        }
        Err(Error::UnknownVertex(v))
    }

    /// First barycentric subdivision of both complexes with the induced map.
    pub fn subdivide(&self) -> Result<CoveringMap> {
        let total = self.total.subdivide_once();
        let base = self.base.subdivide_once();
        let map = self
            .total
            .simplices()
            .iter()
            .enumerate()
            .map(|(i, s)| (i as Vertex + 1, self.base.index_of(&self.image(s)).unwrap() as Vertex + 1))
            .collect();
        CoveringMap::new(total, base, map)
    }

    /// Total top simplex over base top `sigma` adjacent to `top` across the base face `face`.
    fn neighbor_across(&self, top: &[Vertex], face: &[Vertex]) -> Result<Simplex> {
        let lifted: Simplex = top.iter().copied().filter(|v| face.binary_search(&self.vertex_map[v]).is_ok()).collect();
        let others: Vec<&Simplex> =
            self.total.top_cofaces(&lifted).into_iter().filter(|t| t.as_slice() != top).collect();
        match others.as_slice() {
            [one] => Ok((*one).clone()),
            _ => Err(Error::NotACovering(format!("face {lifted:?} does not have exactly two cofaces"))),
        }
    }

    /// Sheet permutation realized as a vertex permutation of the total complex.
    pub(crate) fn realize_sheet_permutation(&self, labels: &Labeling, c: &Permutation) -> Result<Permutation> {
        let deg = self.total.max_vertex() as usize;
        let mut images: Vec<u32> = (1..=deg as u32).collect();
        let mut set = vec![false; deg];
        for ((sigma, i), top) in &labels.top_of {
            let target = &labels.top_of[&(sigma.clone(), c.apply0(*i))];
            for &v in top {
                let w = self.vertex_map[&v];
                let u = *target.iter().find(|&&u| self.vertex_map[&u] == w).unwrap();
                let slot = v as usize - 1;
                if set[slot] && images[slot] != u {
                    return Err(Error::NotACovering("sheet permutation is not simplicial".into()));
                }
                set[slot] = true;
                images[slot] = u;
            }
        }
        Permutation::from_images(&images)
    }
}

/// Reads off a cocycle with the canonical labeling: breadth-first from the
/// least base top, sheets over it ordered by vertex sequence, identity on tree edges.
pub fn extract_cocycle(f: &CoveringMap) -> Result<MonodromyCocycle> {
    Ok(extract_labeled(f)?.0)
}

pub(crate) fn extract_labeled(f: &CoveringMap) -> Result<(MonodromyCocycle, Labeling)> {
    let dual = DualGraph::new(&f.base);
    let tree = dual.spanning_tree();
    let n = f.degree;
    let mut labels = Labeling::default();
    let mut over: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
    for t in f.total.top_simplices() {
        over.entry(f.image(t)).or_default().push(t.clone());
    }
    for &a in &tree.order {
        let sigma = &dual.tops[a];
        match tree.parent[a] {
            None => {
                if a != tree.order[0] {
                    return Err(Error::BaseNotPseudoManifold("dual graph is disconnected".into()));
                }
                for (i, t) in over[sigma].iter().enumerate() {
                    labels.insert(sigma.clone(), i, t.clone());
                }
            }
            Some((p, e)) => {
                let face = &dual.edges[e].2;
                for i in 0..n {
                    let t = labels.top_of[&(dual.tops[p].clone(), i)].clone();
                    let nb = f.neighbor_across(&t, face)?;
                    labels.insert(sigma.clone(), i, nb);
                }
            }
        }
    }
    let mut mc = MonodromyCocycle::new(f.base.clone(), f.branch.clone(), n)?;
    for (e, (a, b, face)) in dual.edges.iter().enumerate() {
        if tree.is_tree[e] {
            continue;
        }
        let (sa, sb) = (&dual.tops[*a], &dual.tops[*b]);
        let mut images = vec![0u32; n];
        for (i, img) in images.iter_mut().enumerate() {
            let t = &labels.top_of[&(sa.clone(), i)];
            let nb = f.neighbor_across(t, face)?;
            let (over_b, j) =
                labels.label_of.get(&nb).ok_or_else(|| Error::NotACovering("unlabeled top simplex".into()))?;
            if over_b != sb {
                return Err(Error::NotACovering("neighbor lies over the wrong simplex".into()));
            }
            *img = *j as u32 + 1;
        }
        let p = Permutation::from_images(&images)?;
        if !p.is_identity() {
            mc.set_transition(sa, sb, p)?;
        }
    }
    Ok((mc, labels))
}

/// Monodromy pairs on the non-tree dual edges of the shared base.
fn non_tree_transitions(mc: &MonodromyCocycle) -> Vec<Permutation> {
    let dual = DualGraph::new(&mc.base);
    let tree = dual.spanning_tree();
    dual.edges
        .iter()
        .enumerate()
        .filter(|(e, _)| !tree.is_tree[*e])
        .map(|(_, (a, b, _))| mc.transition(&dual.tops[*a], &dual.tops[*b]))
        .collect()
}

/// Covering isomorphism over the identity of the base: the canonical cocycles
/// are simultaneously conjugate.
pub fn coverings_isomorphic(f1: &CoveringMap, f2: &CoveringMap) -> Result<bool> {
    if f1.base != f2.base || f1.degree != f2.degree {
        return Ok(false);
    }
    let c1 = extract_cocycle(f1)?;
    let c2 = extract_cocycle(f2)?;
    let pairs: Vec<(Permutation, Permutation)> =
        non_tree_transitions(&c1).into_iter().zip(non_tree_transitions(&c2)).collect();
    Ok(find_conjugator(&pairs, f1.degree).is_some())
}

/// `g ∘ f` for `f: P → Q` and `g: Q → R`.
pub fn compose(f: &CoveringMap, g: &CoveringMap) -> Result<CoveringMap> {
    if f.base != g.total {
        return Err(Error::IncompatibleComplexes("base of the first map is not the total of the second".into()));
    }
    let map = f.vertex_map.iter().map(|(&v, w)| (v, g.vertex_map[w])).collect();
    CoveringMap::new(f.total.clone(), g.base.clone(), map)
}

/// Regularity verdict with the monodromy image and, when regular, the deck group.
#[derive(Clone, Debug)]
pub struct Regularity {
    pub regular: bool,
    pub monodromy: PermGroup,
    /// Deck transformations as vertex permutations of the total complex.
    pub deck: Option<PermGroup>,
}

/// Centralizer of a transitive group in the symmetric group.
pub fn centralizer_of_transitive(g: &PermGroup) -> Vec<Permutation> {
    let n = g.degree();
    let mut out = Vec::new();
    'target: for j in 0..n as u32 {
        let mut images = vec![u32::MAX; n];
        for x in g.elements() {
            let a = x.apply0(0);
            let b = x.apply0(j as usize) as u32;
            if images[a] != u32::MAX && images[a] != b {
                continue 'target;
            }
            images[a] = b;
        }
        if images.contains(&u32::MAX) {
            continue;
        }
        let c = Permutation::from_zero_based(images);
        if g.generators().iter().all(|s| s.compose(&c) == c.compose(s)) {
            out.push(c);
        }
    }
    out
}

pub fn is_regular(f: &CoveringMap) -> Result<Regularity> {
    if !f.total.is_connected() {
        return Err(Error::TotalNotConnected);
    }
    let (mc, labels) = extract_labeled(f)?;
    let monodromy = mc.monodromy_group();
    let regular = monodromy.order() == f.degree;
    let deck = if regular {
        let mut gens = Vec::new();
        for c in centralizer_of_transitive(&monodromy) {
            gens.push(f.realize_sheet_permutation(&labels, &c)?);
        }
        Some(PermGroup::generate(f.total.max_vertex() as usize, &gens)?)
    } else {
        None
    };
    Ok(Regularity { regular, monodromy, deck })
}

/// Fiber product of two coverings of the same base.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub f: CoveringMap,
    pub p1: CoveringMap,
    pub p2: CoveringMap,
}

/// Sheet `(i, j)` of the product is `i * d2 + j` (0-based).
pub fn pullback(f1: &CoveringMap, f2: &CoveringMap) -> Result<Pullback> {
    Ok(pullback_labeled(f1, f2)?.0)
}

fn pullback_labeled(f1: &CoveringMap, f2: &CoveringMap) -> Result<(Pullback, Labeling)> {
    if f1.base != f2.base {
        return Err(Error::BasesDiffer);
    }
    let (c1, l1) = extract_labeled(f1)?;
    let (c2, l2) = extract_labeled(f2)?;
    let (d1, d2) = (f1.degree, f2.degree);
    let branch = f1.branch.union(&f2.branch);
    let mut mc = MonodromyCocycle::new(f1.base.clone(), branch, d1 * d2)?;
    let dual = DualGraph::new(&f1.base);
    for (a, b, _) in &dual.edges {
        let (sa, sb) = (&dual.tops[*a], &dual.tops[*b]);
        let (t1, t2) = (c1.transition(sa, sb), c2.transition(sa, sb));
        if t1.is_identity() && t2.is_identity() {
            continue;
        }
        let images: Vec<u32> = (0..d1 * d2).map(|k| (t1.apply0(k / d2) * d2 + t2.apply0(k % d2)) as u32).collect();
        mc.set_transition(sa, sb, Permutation::from_zero_based(images))?;
    }
    let (f, labels) = fox_complete_labeled(&mc)?;
    let project = |target: &CoveringMap, lt: &Labeling, which: usize| -> Result<CoveringMap> {
        let mut map = VertexMap::new();
        for ((sigma, k), top) in &labels.top_of {
            let sheet = if which == 1 { k / d2 } else { k % d2 };
            let image = &lt.top_of[&(sigma.clone(), sheet)];
            for &v in top {
                let w = f.vertex_map[&v];
                let u = *image.iter().find(|&&u| target.vertex_map[&u] == w).unwrap();
                if let Some(old) = map.insert(v, u) {
                    if old != u {
                        return Err(Error::NotACovering("pullback projection is not well defined".into()));
                    }
                }
            }
        }
        CoveringMap::new(f.total.clone(), target.total.clone(), map)
    };
    let p1 = project(f1, &l1, 1)?;
    let p2 = project(f2, &l2, 2)?;
    Ok((Pullback { f, p1, p2 }, labels))
}

/// Restriction of the pullback to the component through sheet `(1, 1)` over the least base top.
pub fn connected_pullback(f1: &CoveringMap, f2: &CoveringMap) -> Result<Pullback> {
    if f1.base != f2.base {
        return Err(Error::BasesDiffer);
    }
    if !is_regular(f1)?.regular && !is_regular(f2)?.regular {
        return Err(Error::NeitherRegular);
    }
    let (pb, labels) = pullback_labeled(f1, f2)?;
    let sigma0 = f1.base.top_simplices()[0].clone();
    let anchor = labels.top_of[&(sigma0, 0)].clone();
    let f = pb.f.component_containing(anchor[0])?;
    let restrict = |p: &CoveringMap| {
        let map = f.total.vertices().iter().map(|v| (*v, p.vertex_map[v])).collect();
        CoveringMap::new(f.total.clone(), p.base.clone(), map)
    };
    Ok(Pullback { p1: restrict(&pb.p1)?, p2: restrict(&pb.p2)?, f })
}

/// Minimal regular covering `r` factoring as `r = f ∘ s`.
#[derive(Clone, Debug)]
pub struct Regularization {
    pub r: CoveringMap,
    pub s: CoveringMap,
    /// Deck group of `r` as vertex permutations of its total complex.
    pub deck: PermGroup,
    /// Kernel of the coset action: `core(G, Stab(1))`.
    pub core_order: usize,
}

pub fn minimal_regularization(f: &CoveringMap) -> Result<Regularization> {
    if !f.total.is_connected() {
        return Err(Error::TotalNotConnected);
    }
    let (mc, labels) = extract_labeled(f)?;
    let g = mc.monodromy_group();
    let h = g.stabilizer(1);
    let core = g.core(&h)?;
    let action = g.coset_action(&core)?;
    let m = action.index();
    let mut rc = MonodromyCocycle::new(f.base.clone(), f.branch.clone(), m)?;
    for (a, b, p) in mc.transitions() {
        // non-tree transitions are loops based at the root, so they lie in g
        rc.set_transition(a, b, action.act(p)?)?;
    }
    let (r, rl) = fox_complete_labeled(&rc)?;
    let reps = action.representatives();
    let mut map = VertexMap::new();
    for ((sigma, k), top) in &rl.top_of {
        let sheet = reps[*k].apply0(0);
        let image = &labels.top_of[&(sigma.clone(), sheet)];
        for &v in top {
            let w = r.vertex_map[&v];
            let u = *image.iter().find(|&&u| f.vertex_map[&u] == w).unwrap();
            if let Some(old) = map.insert(v, u) {
                if old != u {
                    return Err(Error::NotACovering("factorization is not well defined".into()));
                }
            }
        }
    }
    let s = CoveringMap::new(r.total.clone(), f.total.clone(), map)?;
    let reg = is_regular(&r)?;
    let deck = reg.deck.ok_or_else(|| Error::NotACovering("regularization is not regular".into()))?;
    Ok(Regularization { r, s, deck, core_order: core.order() })
}

/// Riemann–Hurwitz check in dimension 2: `(χ(total), d·χ(base) − Σ deficiencies)`.
pub fn rh_check(f: &CoveringMap) -> Result<(i64, i64)> {
    if f.base.dim() != 2 {
        return Err(Error::DimensionNotTwo(f.base.dim()));
    }
    let mut rhs = f.degree as i64 * f.base.euler_characteristic();
    for &w in f.base.vertices() {
        rhs -= f.degree as i64 - f.fiber(w).len() as i64;
    }
    Ok((f.total.euler_characteristic(), rhs))
}

/// Shortest edge path between two vertices (least-vertex tie-breaking).
pub fn shortest_path(c: &Complex, from: Vertex, to: Vertex) -> Result<Vec<Vertex>> {
    if !c.has_vertex(from) {
        return Err(Error::UnknownVertex(from));
    }
    if !c.has_vertex(to) {
        return Err(Error::UnknownVertex(to));
    }
    let mut prev: HashMap<Vertex, Vertex> = HashMap::new();
    let mut queue = VecDeque::from([from]);
    prev.insert(from, from);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        let mut nbrs: Vec<Vertex> =
            c.cofaces(&[v]).iter().filter(|s| s.len() == 2).map(|s| if s[0] == v { s[1] } else { s[0] }).collect();
        nbrs.sort_unstable();
        for w in nbrs {
            if let std::collections::hash_map::Entry::Vacant(e) = prev.entry(w) {
                e.insert(v);
                queue.push_back(w);
            }
        }
    }
    if !prev.contains_key(&to) {
        return Err(Error::BaseNotPseudoManifold("vertices lie in different components".into()));
    }
    let mut path = vec![to];
    while *path.last().unwrap() != from {
        path.push(prev[path.last().unwrap()]);
    }
    path.reverse();
    Ok(path)
}

/// Cocycle on an oriented surface cut along edge paths: crossing a path from its
/// left to its right side applies the given permutation. Local monodromy is the
/// permutation at the start of each path and its inverse at the end.
pub fn cut_cocycle(base: &Complex, sheets: usize, cuts: &[(Vec<Vertex>, Permutation)]) -> Result<MonodromyCocycle> {
    if base.dim() != 2 {
        return Err(Error::DimensionNotTwo(base.dim()));
    }
    let or = orient(base)?;
    let mut ends = Vec::new();
    for (path, p) in cuts {
        if path.len() < 2 {
            return Err(Error::CocycleInvalid("cut path needs two vertices".into()));
        }
        if !p.is_identity() {
            ends.push(vec![path[0]]);
            ends.push(vec![*path.last().unwrap()]);
        }
    }
    let branch = base.subcomplex(&ends)?;
    let mut mc = MonodromyCocycle::new(base.clone(), branch, sheets)?;
    for (path, p) in cuts {
        for w in path.windows(2) {
            let (a, b) = (w[0], w[1]);
            let edge = sorted(&[a, b]);
            let cof = base.top_cofaces(&edge);
            if cof.len() != 2 {
                return Err(Error::CocycleInvalid(format!("cut edge {edge:?} is not interior")));
            }
            let third = |t: &Simplex| *t.iter().find(|&&v| v != a && v != b).unwrap();
            let left = cof.iter().find(|t| or.oriented_sign(&[a, b, third(t)]) == Some(1));
            let right = cof.iter().find(|t| or.oriented_sign(&[a, b, third(t)]) == Some(-1));
            match (left, right) {
                (Some(l), Some(r)) => mc.push_transition(l, r, p)?,
                _ => return Err(Error::CocycleInvalid("cut edge sides are not coherently oriented".into())),
            }
        }
    }
    Ok(mc)
}

/// Covering cut along a shortest path from `p` to `q`.
pub fn cut_cover(base: &Complex, p: Vertex, q: Vertex, perm: &Permutation) -> Result<CoveringMap> {
    let path = shortest_path(base, p, q)?;
    fox_complete(&cut_cocycle(base, perm.degree(), &[(path, perm.clone())])?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn identity_cover() {
        let o = fixtures::octahedron();
        let mc = MonodromyCocycle::new(o.clone(), Complex::empty(), 1).unwrap();
        let f = fox_complete(&mc).unwrap();
        assert_eq!(f.degree, 1);
        assert!(f.singular.is_empty() && f.branch.is_empty());
        assert_eq!(f.total.euler_characteristic(), 2);
        assert!(coverings_isomorphic(&f, &CoveringMap::identity(&o).unwrap()).unwrap());
        assert_eq!(rh_check(&f).unwrap(), (2, 2));
        let reg = is_regular(&f).unwrap();
        assert!(reg.regular && reg.deck.unwrap().is_trivial());
    }

    #[test]
    fn pole_cover() {
        let o = fixtures::octahedron();
        let f = cut_cover(&o, 5, 6, &perm("(1 2)", 2)).unwrap();
        let rep = f.analyze();
        assert!(rep.is_branched_covering);
        assert_eq!(rep.euler_total, 2);
        assert_eq!(f.branch.vertices(), &[5, 6]);
        assert_eq!(f.singular.vertices().len(), 2);
        assert_eq!(rep.branch_orbits[&5], vec![2]);
        assert_eq!(rh_check(&f).unwrap(), (2, 2));
        let reg = is_regular(&f).unwrap();
        assert!(reg.regular);
        assert_eq!(reg.deck.unwrap().order(), 2);
    }

    #[test]
    fn flatness_is_checked() {
        let o = fixtures::octahedron();
        let mut mc = MonodromyCocycle::new(o.clone(), Complex::empty(), 2).unwrap();
        mc.set_transition(&[1, 3, 5], &[2, 3, 5], perm("(1 2)", 2)).unwrap();
        assert!(matches!(fox_complete(&mc), Err(Error::CocycleInvalid(_))));
        let edge = o.subcomplex(&[vec![1, 5]]).unwrap();
        let mc = MonodromyCocycle::new(o, edge, 2).unwrap();
        assert!(matches!(fox_complete(&mc), Err(Error::BranchLocusNotGood)));
    }

    #[test]
    fn regauged_cocycle_gives_isomorphic_cover() {
        let o = fixtures::octahedron();
        let mc = cut_cocycle(&o, 3, &[(vec![5, 3, 6], perm("(1 2 3)", 3))]).unwrap();
        let mut gauge = BTreeMap::new();
        gauge.insert(vec![1, 3, 5], perm("(1 3)", 3));
        gauge.insert(vec![2, 4, 6], perm("(2 3)", 3));
        let f = fox_complete(&mc).unwrap();
        let g = fox_complete(&mc.regauge(&gauge).unwrap()).unwrap();
        assert!(coverings_isomorphic(&f, &g).unwrap());
        let back = fox_complete(&extract_cocycle(&f).unwrap()).unwrap();
        assert!(coverings_isomorphic(&f, &back).unwrap());
    }

    #[test]
    fn centralizer_of_regular_cyclic_group() {
        let g = PermGroup::generate(4, &[perm("(1 2 3 4)", 4)]).unwrap();
        assert_eq!(centralizer_of_transitive(&g).len(), 4);
        let s3 = PermGroup::generate(3, &[perm("(1 2)", 3), perm("(1 2 3)", 3)]).unwrap();
        assert_eq!(centralizer_of_transitive(&s3).len(), 1);
    }
}
