//! Finite abstract simplicial complexes.
//!
//! A simplex is a strictly increasing vertex sequence; a [`Complex`] stores every
//! face of every simplex, sorted lexicographically. Subcomplexes are plain
//! complexes checked against an ambient one.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub type Vertex = u32;
pub type Simplex = Vec<Vertex>;

#[derive(Clone, Default)]
pub struct Complex {
    simplices: Vec<Simplex>,
    index: HashMap<Simplex, usize>,
    vertices: Vec<Vertex>,
    tops: Vec<usize>,
    by_vertex: HashMap<Vertex, Vec<usize>>,
    dim: isize,
}

impl PartialEq for Complex {
    fn eq(&self, other: &Self) -> bool {
        self.simplices == other.simplices
    }
}

impl Eq for Complex {}

impl fmt::Debug for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Complex(dim {}, {} vertices, {} simplices, top {:?})",
            self.dim,
            self.vertices.len(),
            self.simplices.len(),
            self.top_simplices()
        )
    }
}

pub(crate) fn is_subset(a: &[Vertex], b: &[Vertex]) -> bool {
    // both sorted
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j == b.len() || b[j] != x {
            return false;
        }
        j += 1;
    }
    true
}

/// Sorts `seq` and returns the sign of the sorting permutation.
pub fn sort_with_sign(seq: &[Vertex]) -> (Simplex, i8) {
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    for i in 0..v.len() {
        for j in 0..v.len() - 1 - i {
            if v[j] > v[j + 1] {
                v.swap(j, j + 1);
                sign = -sign;
            }
        }
    }
    (v, sign)
}

fn all_faces(s: &[Vertex], out: &mut BTreeSet<Simplex>) {
    let n = s.len();
    assert!(n <= 24, "simplex too large");
    for mask in 1u32..(1u32 << n) {
        let face: Simplex = (0..n).filter(|i| mask & (1 << i) != 0).map(|i| s[i]).collect();
        out.insert(face);
    }
}

fn canonical(raw: &[Vertex]) -> Result<Simplex> {
    if raw.is_empty() {
        return Err(Error::EmptySimplex);
    }
    let mut s = raw.to_vec();
    s.sort_unstable();
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::DuplicateVertexInSimplex(raw.to_vec()));
    }
    Ok(s)
}

impl Complex {
    pub fn empty() -> Self {
        Complex { dim: -1, ..Default::default() }
    }

    /// Closes `raw_top` under faces after canonicalizing each sequence.
    pub fn from_top(raw_top: &[Vec<Vertex>]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for raw in raw_top {
            let s = canonical(raw)?;
            if !set.contains(&s) {
                all_faces(&s, &mut set);
            }
        }
        Ok(Self::from_closed(set))
    }

    pub(crate) fn from_closed(set: BTreeSet<Simplex>) -> Self {
        let simplices: Vec<Simplex> = set.into_iter().collect();
        let mut index = HashMap::with_capacity(simplices.len());
        let mut by_vertex: HashMap<Vertex, Vec<usize>> = HashMap::new();
        let mut dim = -1isize;
        for (i, s) in simplices.iter().enumerate() {
            index.insert(s.clone(), i);
            for &v in s {
                by_vertex.entry(v).or_default().push(i);
            }
            dim = dim.max(s.len() as isize - 1);
        }
        let mut vertices: Vec<Vertex> = by_vertex.keys().copied().collect();
        vertices.sort_unstable();
        let tops = (0..simplices.len())
            .filter(|&i| {
                let s = &simplices[i];
                by_vertex[&s[0]]
                    .iter()
                    .all(|&j| j == i || simplices[j].len() <= s.len() || !is_subset(s, &simplices[j]))
            })
            .collect();
        Complex { simplices, index, vertices, tops, by_vertex, dim }
    }

    /// Face closure of an arbitrary collection of (already canonical or not) simplices.
    pub fn closure<'a, I: IntoIterator<Item = &'a Simplex>>(iter: I) -> Result<Self> {
        let raw: Vec<Simplex> = iter.into_iter().cloned().collect();
        Self::from_top(&raw)
    }

    pub fn dim(&self) -> isize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn simplices(&self) -> &[Simplex] {
        &self.simplices
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn max_vertex(&self) -> Vertex {
        self.vertices.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, s: &[Vertex]) -> bool {
        self.index.contains_key(s)
    }

    pub fn has_vertex(&self, v: Vertex) -> bool {
        self.by_vertex.contains_key(&v)
    }

    pub fn index_of(&self, s: &[Vertex]) -> Option<usize> {
        self.index.get(s).copied()
    }

    /// Maximal simplices in lexicographic order.
    pub fn top_simplices(&self) -> Vec<&Simplex> {
        self.tops.iter().map(|&i| &self.simplices[i]).collect()
    }

    pub fn simplices_of_dim(&self, d: isize) -> Vec<&Simplex> {
        self.simplices.iter().filter(|s| s.len() as isize - 1 == d).collect()
    }

    pub fn count_by_dim(&self) -> Vec<usize> {
        let mut counts = vec![0usize; (self.dim + 1).max(0) as usize];
        for s in &self.simplices {
            counts[s.len() - 1] += 1;
        }
        counts
    }

    /// Simplices containing `s` (including `s`), as indices.
    pub fn coface_indices(&self, s: &[Vertex]) -> Vec<usize> {
        match s.first().and_then(|v| self.by_vertex.get(v)) {
            None => Vec::new(),
            Some(list) => list.iter().copied().filter(|&j| is_subset(s, &self.simplices[j])).collect(),
        }
    }

    pub fn cofaces(&self, s: &[Vertex]) -> Vec<&Simplex> {
        self.coface_indices(s).into_iter().map(|j| &self.simplices[j]).collect()
    }

    /// Maximal simplices containing `s`.
    pub fn top_cofaces(&self, s: &[Vertex]) -> Vec<&Simplex> {
        self.coface_indices(s)
            .into_iter()
            .filter(|j| self.tops.binary_search(j).is_ok())
            .map(|j| &self.simplices[j])
            .collect()
    }

    pub fn is_top(&self, s: &[Vertex]) -> bool {
        self.index_of(s).map(|i| self.tops.binary_search(&i).is_ok()).unwrap_or(false)
    }

    pub fn is_subcomplex_of(&self, other: &Complex) -> bool {
        self.simplices.iter().all(|s| other.contains(s))
    }

    /// Face closure of `simplices`, refusing any simplex not in `self`.
    pub fn subcomplex(&self, simplices: &[Simplex]) -> Result<Complex> {
        let mut set = BTreeSet::new();
        for raw in simplices {
            let s = canonical(raw)?;
            if !self.contains(&s) {
                return Err(Error::MisalignedSubcomplex(s));
            }
            all_faces(&s, &mut set);
        }
        Ok(Self::from_closed(set))
    }

    /// Checks that `sub` is a subcomplex of `self`.
    pub fn check_subcomplex(&self, sub: &Complex) -> Result<()> {
        match sub.simplices.iter().find(|s| !self.contains(s)) {
            Some(s) => Err(Error::MisalignedSubcomplex(s.clone())),
            None => Ok(()),
        }
    }

    pub fn skeleton(&self, d: isize) -> Complex {
        Self::from_closed(self.simplices.iter().filter(|s| s.len() as isize - 1 <= d).cloned().collect())
    }

    pub fn union(&self, other: &Complex) -> Complex {
        let mut set: BTreeSet<Simplex> = self.simplices.iter().cloned().collect();
        set.extend(other.simplices.iter().cloned());
        Self::from_closed(set)
    }

    /// Largest subcomplex of both.
    pub fn intersection(&self, other: &Complex) -> Complex {
        Self::from_closed(self.simplices.iter().filter(|s| other.contains(s)).cloned().collect())
    }

    /// Closed star of a simplex.
    pub fn star_of(&self, s: &[Vertex]) -> Complex {
        let mut set = BTreeSet::new();
        for j in self.coface_indices(s) {
            all_faces(&self.simplices[j], &mut set);
        }
        Self::from_closed(set)
    }

    /// Link of a simplex: faces of its star disjoint from it.
    pub fn link_of(&self, s: &[Vertex]) -> Complex {
        let star = self.star_of(s);
        Self::from_closed(
            star.simplices.into_iter().filter(|t| t.iter().all(|v| s.binary_search(v).is_err())).collect(),
        )
    }

    pub fn star_link(&self, x: Vertex) -> Result<(Complex, Complex)> {
        if !self.has_vertex(x) {
            return Err(Error::UnknownVertex(x));
        }
        Ok((self.star_of(&[x]), self.link_of(&[x])))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.simplices.iter().map(|s| if s.len() % 2 == 1 { 1 } else { -1 }).sum()
    }

    /// Simplicial cone with a fresh apex.
    pub fn cone(&self, apex: Vertex) -> Result<Complex> {
        if self.has_vertex(apex) {
            return Err(Error::ApexCollision(apex));
        }
        let mut set: BTreeSet<Simplex> = self.simplices.iter().cloned().collect();
        set.insert(vec![apex]);
        for s in &self.simplices {
            let mut t = s.clone();
            t.push(apex);
            t.sort_unstable();
            set.insert(t);
        }
        Ok(Self::from_closed(set))
    }

    /// First barycentric subdivision; vertex `i + 1` is the barycenter of `simplices()[i]`.
    pub fn subdivide_once(&self) -> Complex {
        let mut set = BTreeSet::new();
        // maximal chains end at top simplices; enumerate chains descending from each top
        for &t in &self.tops {
            let mut stack: Vec<(Simplex, Vec<Vertex>)> = vec![(self.simplices[t].clone(), vec![t as Vertex + 1])];
            while let Some((cur, chain)) = stack.pop() {
                if cur.len() == 1 {
                    let mut c = chain.clone();
                    c.sort_unstable();
                    all_faces(&c, &mut set);
                    continue;
                }
                for skip in 0..cur.len() {
                    let face: Simplex = cur.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                    let mut c = chain.clone();
                    c.push(self.index[&face] as Vertex + 1);
                    stack.push((face, c));
                }
            }
        }
        Self::from_closed(set)
    }

    /// Iterated barycentric subdivision with carrier provenance.
    pub fn barycentric_subdivide(&self, times: usize) -> Subdivision {
        let mut levels = vec![self.clone()];
        for _ in 0..times {
            let next = levels.last().unwrap().subdivide_once();
            levels.push(next);
        }
        Subdivision { levels }
    }

    /// Connected components as vertex-induced subcomplexes, ordered by least vertex.
    pub fn components(&self) -> Vec<Complex> {
        let mut uf = UnionFind::new(self.vertices.len());
        let pos: HashMap<Vertex, usize> = self.vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        for s in &self.simplices {
            if s.len() == 2 {
                uf.union(pos[&s[0]], pos[&s[1]]);
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<Simplex>> = BTreeMap::new();
        for s in &self.simplices {
            groups.entry(uf.find(pos[&s[0]])).or_default().insert(s.clone());
        }
        let mut comps: Vec<Complex> = groups.into_values().map(Self::from_closed).collect();
        comps.sort_by_key(|c| c.vertices[0]);
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Adjacency of top simplices through shared codimension-1 faces.
    /// Returns `face -> tops containing it` for every codimension-1 face of a top simplex.
    pub fn codim1_incidence(&self) -> BTreeMap<Simplex, Vec<Simplex>> {
        let mut map: BTreeMap<Simplex, Vec<Simplex>> = BTreeMap::new();
        for &t in &self.tops {
            let s = &self.simplices[t];
            if s.len() < 2 {
                continue;
            }
            for skip in 0..s.len() {
                let face: Simplex = s.iter().enumerate().filter(|&(i, _)| i != skip).map(|(_, &v)| v).collect();
                map.entry(face).or_default().push(s.clone());
            }
        }
        map
    }

    /// Top simplices are connected through codimension-1 faces.
    pub fn is_strongly_connected(&self) -> bool {
        let tops = self.top_simplices();
        if tops.is_empty() {
            return true;
        }
        let pos: HashMap<&Simplex, usize> = tops.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut uf = UnionFind::new(tops.len());
        for (_, cof) in self.codim1_incidence() {
            for w in cof.windows(2) {
                uf.union(pos[&w[0]], pos[&w[1]]);
            }
        }
        (0..tops.len()).all(|i| uf.find(i) == uf.find(0))
    }

    /// Renames vertices through `f` (must be injective on the vertex set).
    pub fn relabel(&self, f: impl Fn(Vertex) -> Vertex) -> Complex {
        let set: BTreeSet<Simplex> = self
            .simplices
            .iter()
            .map(|s| {
                let mut t: Simplex = s.iter().map(|&v| f(v)).collect();
                t.sort_unstable();
                t
            })
            .collect();
        Self::from_closed(set)
    }

    /// Image of a simplex under a vertex map, canonicalized.
    pub fn map_simplex(s: &[Vertex], f: impl Fn(Vertex) -> Vertex) -> Simplex {
        let mut t: Simplex = s.iter().map(|&v| f(v)).collect();
        t.sort_unstable();
        t.dedup();
        t
    }
}

/// Levels of an iterated barycentric subdivision.
#[derive(Clone, Debug)]
pub struct Subdivision {
    pub levels: Vec<Complex>,
}

impl Subdivision {
    pub fn complex(&self) -> &Complex {
        self.levels.last().unwrap()
    }

    /// Simplex of the previous level whose barycenter is vertex `v` of level `level`.
    pub fn barycenter_of(&self, level: usize, v: Vertex) -> &Simplex {
        &self.levels[level - 1].simplices()[v as usize - 1]
    }

    /// Original simplex whose interior contains the final vertex `v`.
    pub fn carrier(&self, v: Vertex) -> Simplex {
        let mut simplex = vec![v];
        for level in (1..self.levels.len()).rev() {
            // the carrier of an open simplex of a subdivision is its largest vertex carrier
            let mut best: Simplex = Vec::new();
            for &w in &simplex {
                let s = self.barycenter_of(level, w);
                if s.len() > best.len() || (s.len() == best.len() && s > &best) {
                    best = s.clone();
                }
            }
            simplex = best;
        }
        simplex
    }

    /// Provenance of every final vertex.
    pub fn provenance(&self) -> BTreeMap<Vertex, Simplex> {
        self.complex().vertices().iter().map(|&v| (v, self.carrier(v))).collect()
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.parent[r] != r {
            r = self.parent[r];
        }
        let mut y = x;
        while self.parent[y] != r {
            let next = self.parent[y];
            self.parent[y] = r;
            y = next;
        }
        r
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }
}

/// Components of the simplices of `c` not in `s`, adjacency being the face relation.
pub fn open_complement_components(c: &Complex, s: &Complex) -> Vec<Vec<Simplex>> {
    let outside: Vec<usize> = (0..c.len()).filter(|&i| !s.contains(&c.simplices[i])).collect();
    let pos: HashMap<usize, usize> = outside.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let mut uf = UnionFind::new(outside.len());
    for (k, &i) in outside.iter().enumerate() {
        let simplex = &c.simplices[i];
        if simplex.len() < 2 {
            continue;
        }
        for skip in 0..simplex.len() {
            let face: Simplex = simplex.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
            if let Some(&fk) = c.index.get(&face).and_then(|fi| pos.get(fi)) {
                uf.union(k, fk);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<Simplex>> = BTreeMap::new();
    for (k, &i) in outside.iter().enumerate() {
        groups.entry(uf.find(k)).or_default().push(c.simplices[i].clone());
    }
    groups.into_values().collect()
}

/// `s` contains no maximal simplex of `c`.
pub fn is_nowhere_dense(c: &Complex, s: &Complex) -> bool {
    c.top_simplices().iter().all(|t| !s.contains(t))
}

/// Goodness through links in the first subdivision: for every simplex `τ` of `s`,
/// the link of its barycenter minus `s` is connected.
pub fn is_good_subcomplex(c: &Complex, s: &Complex) -> bool {
    if c.check_subcomplex(s).is_err() || !is_nowhere_dense(c, s) {
        return false;
    }
    s.simplices().iter().all(|tau| barycenter_link_complement_components(c, s, tau) == 1)
}

/// Goodness through open stars: for every simplex `τ` of `s`, the simplices of `c`
/// properly containing `τ` and not in `s` form one face-connected class.
pub fn is_good_subcomplex_star(c: &Complex, s: &Complex) -> bool {
    if c.check_subcomplex(s).is_err() || !is_nowhere_dense(c, s) {
        return false;
    }
    s.simplices().iter().all(|tau| star_complement_components(c, s, tau) == 1)
}

pub(crate) fn star_complement_components(c: &Complex, s: &Complex, tau: &[Vertex]) -> usize {
    let cof: Vec<&Simplex> = c.cofaces(tau).into_iter().filter(|r| !s.contains(r)).collect();
    let pos: HashMap<&Simplex, usize> = cof.iter().enumerate().map(|(i, r)| (*r, i)).collect();
    let mut uf = UnionFind::new(cof.len());
    for (i, r) in cof.iter().enumerate() {
        for skip in 0..r.len() {
            let face: Simplex = r.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
            if let Some(&fi) = pos.get(&face) {
                uf.union(i, fi);
            }
        }
    }
    (0..cof.len()).filter(|&i| uf.find(i) == i).count()
}

/// Components of `Lk(b(τ), c') − s'` where `'` is the first barycentric subdivision,
/// computed from chains of simplices comparable with `τ`.
pub(crate) fn barycenter_link_complement_components(c: &Complex, s: &Complex, tau: &[Vertex]) -> usize {
    // poset elements: proper nonempty faces of τ and proper cofaces of τ
    let mut elems: Vec<Simplex> = Vec::new();
    let n = tau.len();
    for mask in 1u32..((1u32 << n) - 1) {
        elems.push((0..n).filter(|i| mask & (1 << i) != 0).map(|i| tau[i]).collect());
    }
    for r in c.cofaces(tau) {
        if r.len() > n {
            elems.push(r.clone());
        }
    }
    elems.sort_by_key(|e| e.len());
    let in_s: Vec<bool> = elems.iter().map(|e| s.contains(e)).collect();
    // enumerate chains (increasing by inclusion), as index lists
    let m = elems.len();
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); m];
    for i in 0..m {
        for j in 0..m {
            if elems[j].len() > elems[i].len() && is_subset(&elems[i], &elems[j]) {
                above[i].push(j);
            }
        }
    }
    let mut chains: Vec<Vec<usize>> = Vec::new();
    let mut stack: Vec<Vec<usize>> = (0..m).map(|i| vec![i]).collect();
    while let Some(ch) = stack.pop() {
        let last = *ch.last().unwrap();
        for &j in &above[last] {
            let mut next = ch.clone();
            next.push(j);
            stack.push(next);
        }
        chains.push(ch);
    }
    let outside: Vec<&Vec<usize>> = chains.iter().filter(|ch| ch.iter().any(|&i| !in_s[i])).collect();
    let pos: HashMap<&Vec<usize>, usize> = outside.iter().enumerate().map(|(k, ch)| (*ch, k)).collect();
    let mut uf = UnionFind::new(outside.len());
    for (k, ch) in outside.iter().enumerate() {
        if ch.len() < 2 {
            continue;
        }
        for skip in 0..ch.len() {
            let sub: Vec<usize> = ch.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &x)| x).collect();
            if let Some(&q) = pos.get(&sub) {
                uf.union(k, q);
            }
        }
    }
    (0..outside.len()).filter(|&k| uf.find(k) == k).count()
}

/// Pseudo-manifold properties of a complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct PmReport {
    pub homogeneous: bool,
    pub two_cofaces: bool,
    pub skeleton_good: bool,
    /// Every codimension-1 face has one or two cofaces (pseudo-manifold with boundary).
    pub at_most_two_cofaces: bool,
}

impl PmReport {
    pub fn holds(&self) -> bool {
        self.homogeneous && self.two_cofaces && self.skeleton_good
    }

    /// Pseudo-manifold possibly with boundary.
    pub fn holds_with_boundary(&self) -> bool {
        self.homogeneous && self.at_most_two_cofaces && self.skeleton_good
    }
}

pub fn is_pseudo_manifold(c: &Complex) -> PmReport {
    let m = c.dim();
    let homogeneous = c.top_simplices().iter().all(|t| t.len() as isize - 1 == m);
    let mut two = true;
    let mut at_most_two = true;
    if m >= 1 {
        for f in c.simplices_of_dim(m - 1) {
            let k = c.cofaces(f).iter().filter(|t| t.len() as isize - 1 == m).count();
            two &= k == 2;
            at_most_two &= k == 1 || k == 2;
        }
    }
    let skeleton = c.skeleton(m - 2);
    let skeleton_good = is_good_subcomplex(c, &skeleton);
    PmReport { homogeneous, two_cofaces: two, skeleton_good, at_most_two_cofaces: at_most_two }
}

/// Coherent ±1 signs on top simplices (with respect to increasing vertex order).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Orientation {
    pub signs: BTreeMap<Simplex, i8>,
}

impl Orientation {
    pub fn sign(&self, top: &[Vertex]) -> Option<i8> {
        self.signs.get(top).copied()
    }

    /// Sign of the vertex sequence `seq` (any order) relative to this orientation.
    pub fn oriented_sign(&self, seq: &[Vertex]) -> Option<i8> {
        let (sorted, sgn) = sort_with_sign(seq);
        self.sign(&sorted).map(|s| s * sgn)
    }

    /// A vertex automorphism preserves the orientation on every top simplex.
    pub fn preserved_by(&self, f: impl Fn(Vertex) -> Vertex) -> bool {
        self.signs.iter().all(|(t, &s)| {
            let image: Vec<Vertex> = t.iter().map(|&v| f(v)).collect();
            self.oriented_sign(&image) == Some(s)
        })
    }
}

/// Finds a coherent orientation by breadth-first search over the dual graph.
/// Boundary faces (one coface) are allowed.
pub fn orient(c: &Complex) -> Result<Orientation> {
    let rep = is_pseudo_manifold(c);
    if !rep.homogeneous || !rep.at_most_two_cofaces {
        return Err(Error::NotPseudoManifold("orientation needs at most two cofaces per codim-1 face".into()));
    }
    let incidence = c.codim1_incidence();
    let mut neighbors: HashMap<&Simplex, Vec<(&Simplex, i8)>> = HashMap::new();
    for (face, tops) in &incidence {
        if tops.len() == 2 {
            let (a, b) = (&tops[0], &tops[1]);
            let ja = a.iter().position(|v| face.binary_search(v).is_err()).unwrap();
            let jb = b.iter().position(|v| face.binary_search(v).is_err()).unwrap();
            // induced orientations (-1)^j sign must be opposite
            let rel: i8 = if (ja + jb) % 2 == 0 { -1 } else { 1 };
            neighbors.entry(a).or_default().push((b, rel));
            neighbors.entry(b).or_default().push((a, rel));
        }
    }
    let mut signs: BTreeMap<Simplex, i8> = BTreeMap::new();
    for t in c.top_simplices() {
        if signs.contains_key(t) {
            continue;
        }
        signs.insert(t.clone(), 1);
        let mut queue = VecDeque::from([t]);
        while let Some(x) = queue.pop_front() {
            let sx = signs[x];
            for &(y, rel) in neighbors.get(x).map(|v| v.as_slice()).unwrap_or(&[]) {
                let want = sx * rel;
                match signs.get(y) {
                    Some(&sy) if sy != want => return Err(Error::NotOrientable),
                    Some(_) => {}
                    None => {
                        signs.insert(y.clone(), want);
                        queue.push_back(y);
                    }
                }
            }
        }
    }
    Ok(Orientation { signs })
}
