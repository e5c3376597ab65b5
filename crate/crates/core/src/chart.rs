//! Branchfold charts `(U, P, V, G = HK)` and their calculus.
//!
//! A chart is a complex `P` with a good action of `G` and subgroups `H ≤ G`,
//! `K ⊴ G` with `HK = G`; `U = P/H` and `V = P/K`. Quotients are taken at the
//! least subdivision level where all three actions have simplicial quotients.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use num_integer::Integer;
use serde::Serialize;

use crate::action::{
    fit_degree, lift_permutations, lift_vertex, minimal_clean_level, quotient_of, QuotientData, SimplicialAction,
};
use crate::covering::{
    compose, connected_pullback, extract_labeled, is_regular, minimal_regularization, CoveringMap, VertexMap,
};
use crate::error::{Error, Result};
use crate::perm::{subgroup_relations, PermGroup, Permutation};
use crate::report::Report;
use crate::simplicial::{is_good_subcomplex, is_pseudo_manifold, orient, Complex, Vertex};

/// Reduced positive fraction `|H| / |K|`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct IndexFraction {
    pub num: u64,
    pub den: u64,
}

impl IndexFraction {
    pub fn new(num: u64, den: u64) -> Self {
        let g = num.gcd(&den).max(1);
        IndexFraction { num: num / g, den: den / g }
    }
}

impl fmt::Display for IndexFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == 1 {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

/// Coprime pair `(h, k)` of a codimension-2 local model.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CodimTwoModel {
    pub h: u64,
    pub k: u64,
}

impl CodimTwoModel {
    pub fn new(h: u64, k: u64) -> Result<Self> {
        if h == 0 || k == 0 || h.gcd(&k) != 1 {
            return Err(Error::ParamOutOfRange(format!("({h}, {k}) is not a coprime pair of positive integers")));
        }
        Ok(CodimTwoModel { h, k })
    }

    pub fn index(&self) -> IndexFraction {
        IndexFraction::new(self.h, self.k)
    }
}

/// `P` subdivided to the chart level, with the groups carried along.
#[derive(Clone, Debug)]
pub struct Frame {
    pub p: Complex,
    pub g: PermGroup,
    pub h: PermGroup,
    pub k: PermGroup,
    pub apex: Option<Vertex>,
}

impl Frame {
    fn lift(
        p: &Complex,
        g: &PermGroup,
        h: &PermGroup,
        k: &PermGroup,
        apex: Option<Vertex>,
        times: usize,
    ) -> Result<Frame> {
        if times == 0 {
            return Ok(Frame { p: p.clone(), g: g.clone(), h: h.clone(), k: k.clone(), apex });
        }
        let mut gens: Vec<Permutation> = g.generators().to_vec();
        let (ng, nh) = (gens.len(), h.generators().len());
        gens.extend(h.generators().iter().cloned());
        gens.extend(k.generators().iter().cloned());
        let (sub, lifted) = lift_permutations(p, &gens, times);
        let n = sub.max_vertex() as usize;
        Ok(Frame {
            g: PermGroup::generate(n, &lifted[..ng])?,
            h: PermGroup::generate(n, &lifted[ng..ng + nh])?,
            k: PermGroup::generate(n, &lifted[ng + nh..])?,
            apex: apex.and_then(|a| lift_vertex(p, a, times)),
            p: sub,
        })
    }

    fn action(&self, group: &PermGroup) -> SimplicialAction {
        SimplicialAction { complex: self.p.clone(), group: group.clone() }
    }
}

#[derive(Clone, Debug)]
pub struct Chart {
    pub p: Complex,
    pub g: PermGroup,
    pub h: PermGroup,
    pub k: PermGroup,
    pub apex: Option<Vertex>,
    /// Subdivision level at which quotients are taken.
    pub level: usize,
    frame: Frame,
}

impl Chart {
    /// Chart from generator lists; an empty `g` means `G = ⟨H, K⟩`.
    pub fn new(
        p: Complex,
        g: &[Permutation],
        h: &[Permutation],
        k: &[Permutation],
        apex: Option<Vertex>,
    ) -> Result<Self> {
        let n = p.max_vertex() as usize;
        let fit = |gens: &[Permutation]| gens.iter().map(|x| fit_degree(x, n)).collect::<Result<Vec<_>>>();
        let (hg, kg) = (fit(h)?, fit(k)?);
        let gg = if g.is_empty() { hg.iter().chain(kg.iter()).cloned().collect() } else { fit(g)? };
        Self::from_groups(
            p,
            PermGroup::generate(n, &gg)?,
            PermGroup::generate(n, &hg)?,
            PermGroup::generate(n, &kg)?,
            apex,
        )
    }

    pub fn from_groups(p: Complex, g: PermGroup, h: PermGroup, k: PermGroup, apex: Option<Vertex>) -> Result<Self> {
        if !p.is_connected() {
            return Err(Error::ChartInvalid("P is not connected".into()));
        }
        if let Some(a) = apex {
            if !p.has_vertex(a) {
                return Err(Error::UnknownVertex(a));
            }
        }
        let actions: Vec<SimplicialAction> = [&g, &h, &k]
            .iter()
            .map(|grp| {
                let a = SimplicialAction { complex: p.clone(), group: (*grp).clone() };
                a.validate().map(|_| a)
            })
            .collect::<Result<_>>()?;
        let level = minimal_clean_level(&actions.iter().collect::<Vec<_>>());
        Self::at_level(p, g, h, k, apex, level)
    }

    fn at_level(
        p: Complex,
        g: PermGroup,
        h: PermGroup,
        k: PermGroup,
        apex: Option<Vertex>,
        level: usize,
    ) -> Result<Self> {
        let frame = Frame::lift(&p, &g, &h, &k, apex, level)?;
        Ok(Chart { p, g, h, k, apex, level, frame })
    }

    pub fn frame(&self) -> &Frame {
        &self.frame
    }

    /// Quotient of `P` at the chart level by a group acting on the subdivided complex.
    pub fn quotient_by(&self, group: &PermGroup) -> Result<QuotientData> {
        quotient_of(self.frame.action(group), self.level)
    }

    pub fn u(&self) -> Result<QuotientData> {
        self.quotient_by(&self.frame.h)
    }

    pub fn v(&self) -> Result<QuotientData> {
        self.quotient_by(&self.frame.k)
    }

    pub fn pmod_g(&self) -> Result<QuotientData> {
        self.quotient_by(&self.frame.g)
    }

    pub fn p_h(&self) -> Result<CoveringMap> {
        self.u()?.as_covering()
    }

    pub fn p_k(&self) -> Result<CoveringMap> {
        self.v()?.as_covering()
    }

    pub fn p_g(&self) -> Result<CoveringMap> {
        self.pmod_g()?.as_covering()
    }

    /// `p: U → P/G`.
    pub fn p_u(&self) -> Result<CoveringMap> {
        let (u, q) = (self.u()?, self.pmod_g()?);
        let map = u.quotient.vertices().iter().map(|&v| (v, q.projection[&v])).collect();
        CoveringMap::new(u.quotient, q.quotient, map)
    }

    /// `p_{G/K}: V → P/G`.
    pub fn p_v(&self) -> Result<CoveringMap> {
        let (v, q) = (self.v()?, self.pmod_g()?);
        let map = v.quotient.vertices().iter().map(|&x| (x, q.projection[&x])).collect();
        CoveringMap::new(v.quotient, q.quotient, map)
    }

    pub fn is_conical(&self) -> bool {
        match self.apex {
            None => false,
            Some(a) => {
                self.g.generators().iter().all(|g| g.apply(a) == a)
                    && self.p.top_simplices().iter().all(|t| t.binary_search(&a).is_ok())
            }
        }
    }

    pub fn is_reduced(&self) -> bool {
        self.g.core(&self.h.intersection(&self.k)).map(|c| c.is_trivial()).unwrap_or(false)
    }

    /// `|H| / |K|` at the apex of a conical chart.
    pub fn index(&self) -> Result<IndexFraction> {
        if !self.is_conical() {
            return Err(Error::NotConical("apex missing, moved by G, or not on every top simplex".into()));
        }
        Ok(IndexFraction::new(self.h.order() as u64, self.k.order() as u64))
    }

    /// Same chart with `P` replaced by its `times`-fold subdivision.
    pub fn subdivided(&self, times: usize) -> Result<Chart> {
        let f = Frame::lift(&self.p, &self.g, &self.h, &self.k, self.apex, times)?;
        Chart::from_groups(f.p, f.g, f.h, f.k, f.apex)
    }
}

pub fn chart_index(c: &Chart) -> Result<IndexFraction> {
    c.index()
}

/// Checks every chart invariant; never fails, failures are report entries.
pub fn validate_chart(c: &Chart) -> Report {
    let mut r = Report::new("chart");
    r.check("p_connected", c.p.is_connected(), "");
    match subgroup_relations(&c.g, &c.h, &c.k) {
        Ok(rel) => {
            r.check("h_leq_g", rel.h_leq_g, format!("|H| = {}, |G| = {}", c.h.order(), c.g.order()));
            r.check("k_normal_in_g", rel.k_normal_in_g, format!("|K| = {}", c.k.order()));
            r.check("product_is_g", rel.product_is_g, "");
        }
        Err(e) => r.check("subgroup_relations", false, e.to_string()),
    }
    let f = &c.frame;
    match c.pmod_g() {
        Ok(q) => {
            r.check("action_good", is_good_subcomplex(&f.p, &q.singular), format!("dim S_G = {}", q.singular.dim()))
        }
        Err(e) => r.check("action_good", false, e.to_string()),
    }
    let pm = is_pseudo_manifold(&f.p);
    r.check("p_pseudo_manifold", pm.holds_with_boundary(), "");
    r.check("p_orientable", orient(&f.p).is_ok(), "");
    match c.v() {
        Ok(v) => {
            r.check("v_pseudo_manifold", is_pseudo_manifold(&v.quotient).holds_with_boundary(), "");
            match orient(&v.quotient) {
                Ok(or) => {
                    let preserved = f.g.generators().iter().all(|g| or.preserved_by(|x| v.projection[&g.apply(x)]));
                    r.check("v_orientable", true, "");
                    r.check("g_mod_k_preserves_orientation", preserved, "");
                }
                Err(e) => r.check("v_orientable", false, e.to_string()),
            }
        }
        Err(e) => r.check("v_quotient", false, e.to_string()),
    }
    let maps = [("p_h", c.p_h()), ("p_k", c.p_k()), ("p", c.p_u()), ("p_g_mod_k", c.p_v())];
    for (name, m) in &maps {
        match m {
            Ok(m) => {
                r.check(&format!("{name}_branched_covering"), m.is_branched_covering(), format!("degree {}", m.degree))
            }
            Err(e) => r.check(&format!("{name}_branched_covering"), false, e.to_string()),
        }
    }
    for (name, m, order) in [("p_h", &maps[0].1, c.h.order()), ("p_k", &maps[1].1, c.k.order())] {
        if let Ok(m) = m {
            let ok = m.degree == order
                && is_regular(m).map(|x| x.regular && x.deck.map(|d| d.order()) == Some(order)).unwrap_or(false);
            r.check(&format!("{name}_regular"), ok, format!("deck order {order}"));
        }
    }
    if let (Ok(ph), Ok(pk), Ok(p), Ok(pv)) = (&maps[0].1, &maps[1].1, &maps[2].1, &maps[3].1) {
        let commutes = f.p.vertices().iter().all(|&x| p.apply(ph.apply(x)) == pv.apply(pk.apply(x)));
        r.check("diagram_commutes", commutes, "");
    }
    r
}

fn restrict_perm(p: &Permutation, c: &Complex) -> Permutation {
    let n = c.max_vertex();
    let images: Vec<u32> = (1..=n).map(|v| if c.has_vertex(v) { p.apply(v) } else { v }).collect();
    Permutation::from_images(&images).expect("invariant vertex set")
}

#[derive(Clone, Debug)]
pub struct ConicalRestriction {
    pub chart: Chart,
    /// `Stab_G(x)` in the original chart.
    pub stabilizer: PermGroup,
}

/// Restriction to the closed star of a vertex of `P`: `H' = H ∩ G_x`, `K' = K ∩ G_x`, `G' = H'K'`.
pub fn conical_restriction(c: &Chart, x: Vertex) -> Result<ConicalRestriction> {
    if !c.p.has_vertex(x) {
        return Err(Error::UnknownVertex(x));
    }
    let stabilizer = c.g.stabilizer(x);
    let star = c.p.star_of(&[x]);
    let h = c.h.intersection(&stabilizer);
    let k = c.k.intersection(&stabilizer);
    let restrict = |grp: &PermGroup| grp.generators().iter().map(|g| restrict_perm(g, &star)).collect::<Vec<_>>();
    let chart = Chart::new(star.clone(), &[], &restrict(&h), &restrict(&k), Some(x))?;
    Ok(ConicalRestriction { chart, stabilizer })
}

/// Quotient of a chart by a normal subgroup `N ≤ H ∩ K`.
#[derive(Clone, Debug)]
pub struct Domination {
    pub n: PermGroup,
    pub chart: Chart,
    /// `P^(l) → P/N`.
    pub map: CoveringMap,
}

pub fn quotient_by_normal(c: &Chart, n: &PermGroup) -> Result<Domination> {
    if !n.is_normal_in(&c.g) || !n.is_subgroup_of(&c.h.intersection(&c.k)) {
        return Err(Error::ChartInvalid("N must be normal in G and contained in H ∩ K".into()));
    }
    if n.is_trivial() {
        return Ok(Domination { n: n.clone(), chart: c.clone(), map: CoveringMap::identity(&c.p)? });
    }
    let level = minimal_clean_level(&[&SimplicialAction { complex: c.p.clone(), group: n.clone() }]);
    let groups = [&c.g, &c.h, &c.k, n];
    let mut gens = Vec::new();
    let mut counts = Vec::new();
    for grp in groups {
        counts.push(grp.generators().len());
        gens.extend(grp.generators().iter().cloned());
    }
    let (sub, lifted) = lift_permutations(&c.p, &gens, level);
    let m = sub.max_vertex() as usize;
    let mut parts: Vec<Vec<Permutation>> = Vec::new();
    let mut at = 0;
    for cnt in counts {
        parts.push(lifted[at..at + cnt].to_vec());
        at += cnt;
    }
    let n_sub = PermGroup::generate(m, &parts[3])?;
    let q = quotient_of(SimplicialAction { complex: sub.clone(), group: n_sub }, level)?;
    let deg = q.quotient.max_vertex();
    let induce = |g: &Permutation| {
        let images: Vec<u32> =
            (1..=deg).map(|v| if q.quotient.has_vertex(v) { q.projection[&g.apply(v)] } else { v }).collect();
        Permutation::from_images(&images)
    };
    let ind = |gs: &[Permutation]| gs.iter().map(induce).collect::<Result<Vec<_>>>();
    let apex = c.apex.and_then(|a| lift_vertex(&c.p, a, level)).map(|a| q.projection[&a]);
    let (gq, hq, kq) = (ind(&parts[0])?, ind(&parts[1])?, ind(&parts[2])?);
    let gq = if gq.is_empty() { hq.iter().chain(kq.iter()).cloned().collect() } else { gq };
    let chart = Chart::new(q.quotient.clone(), &gq, &hq, &kq, apex)?;
    Ok(Domination { n: n.clone(), chart, map: q.as_covering()? })
}

/// Quotient by `core(G, H ∩ K)`.
pub fn reduce_chart(c: &Chart) -> Result<Domination> {
    let n = c.g.core(&c.h.intersection(&c.k))?;
    quotient_by_normal(c, &n)
}

const ISO_NODE_CAP: usize = 5_000_000;

/// Backtracking search for vertex bijections `a → b` carrying simplices to simplices.
/// `allowed(v, w)` prunes candidate images; `accept` is called on each complete map.
pub fn find_isomorphism(
    a: &Complex,
    b: &Complex,
    allowed: &dyn Fn(Vertex, Vertex) -> bool,
    accept: &mut dyn FnMut(&VertexMap) -> bool,
) -> Result<Option<VertexMap>> {
    if a.count_by_dim() != b.count_by_dim() {
        return Ok(None);
    }
    let signature = |c: &Complex, v: Vertex| {
        let mut sig = vec![0usize; (c.dim() + 1).max(0) as usize];
        for s in c.cofaces(&[v]) {
            sig[s.len() - 1] += 1;
        }
        sig
    };
    let neighbors = |c: &Complex, v: Vertex| -> Vec<Vertex> {
        let mut out: Vec<Vertex> =
            c.cofaces(&[v]).iter().filter(|s| s.len() == 2).map(|s| if s[0] == v { s[1] } else { s[0] }).collect();
        out.sort_unstable();
        out
    };
    let sig_a: HashMap<Vertex, Vec<usize>> = a.vertices().iter().map(|&v| (v, signature(a, v))).collect();
    let sig_b: HashMap<Vertex, Vec<usize>> = b.vertices().iter().map(|&v| (v, signature(b, v))).collect();
    let mut freq: HashMap<&Vec<usize>, usize> = HashMap::new();
    for s in sig_b.values() {
        *freq.entry(s).or_default() += 1;
    }
    // visiting order: each next vertex has the most already-placed neighbors,
    // starting at the rarest signature
    let nbrs: HashMap<Vertex, Vec<Vertex>> = a.vertices().iter().map(|&v| (v, neighbors(a, v))).collect();
    let mut order: Vec<(Vertex, Option<Vertex>)> = Vec::new();
    let mut placed: BTreeSet<Vertex> = BTreeSet::new();
    let mut links: HashMap<Vertex, usize> = HashMap::new();
    while placed.len() < a.vertices().len() {
        let next = a
            .vertices()
            .iter()
            .filter(|v| !placed.contains(v))
            .min_by_key(|v| {
                let l = links.get(v).copied().unwrap_or(0);
                (std::cmp::Reverse(l), if l == 0 { freq.get(&sig_a[v]).copied().unwrap_or(0) } else { 0 }, **v)
            })
            .copied()
            .expect("unplaced vertex");
        let anchor = nbrs[&next].iter().copied().find(|w| placed.contains(w));
        order.push((next, anchor));
        placed.insert(next);
        for &w in &nbrs[&next] {
            *links.entry(w).or_default() += 1;
        }
    }
    struct State<'s> {
        map: VertexMap,
        used: BTreeSet<Vertex>,
        nodes: usize,
        accept: &'s mut dyn FnMut(&VertexMap) -> bool,
    }
    fn consistent(a: &Complex, b: &Complex, map: &VertexMap, v: Vertex) -> bool {
        a.cofaces(&[v]).iter().all(|s| {
            if s.iter().all(|x| map.contains_key(x)) {
                b.contains(&Complex::map_simplex(s, |x| map[&x]))
            } else {
                true
            }
        })
    }
    #[allow(clippy::too_many_arguments)]
    fn search(
        a: &Complex,
        b: &Complex,
        order: &[(Vertex, Option<Vertex>)],
        i: usize,
        st: &mut State<'_>,
        sig_a: &HashMap<Vertex, Vec<usize>>,
        sig_b: &HashMap<Vertex, Vec<usize>>,
        allowed: &dyn Fn(Vertex, Vertex) -> bool,
        neighbors: &dyn Fn(&Complex, Vertex) -> Vec<Vertex>,
    ) -> Result<bool> {
        if i == order.len() {
            return Ok((st.accept)(&st.map));
        }
        st.nodes += 1;
        if st.nodes > ISO_NODE_CAP {
            return Err(Error::SearchTooLarge(format!("isomorphism search exceeded {ISO_NODE_CAP} nodes")));
        }
        let (v, anchor) = order[i];
        let candidates: Vec<Vertex> = match anchor {
            Some(p) => neighbors(b, st.map[&p]),
            None => b.vertices().to_vec(),
        };
        for w in candidates {
            if st.used.contains(&w) || sig_a[&v] != sig_b[&w] || !allowed(v, w) {
                continue;
            }
            st.map.insert(v, w);
            st.used.insert(w);
            if consistent(a, b, &st.map, v) && search(a, b, order, i + 1, st, sig_a, sig_b, allowed, neighbors)? {
                return Ok(true);
            }
            st.map.remove(&v);
            st.used.remove(&w);
        }
        Ok(false)
    }
    let mut st = State { map: VertexMap::new(), used: BTreeSet::new(), nodes: 0, accept };
    let found = search(a, b, &order, 0, &mut st, &sig_a, &sig_b, allowed, &neighbors)?;
    Ok(found.then_some(st.map))
}

fn conjugate_group_by(
    grp: &PermGroup,
    map: &VertexMap,
    inverse: &VertexMap,
    degree: usize,
) -> Result<Vec<Permutation>> {
    grp.generators()
        .iter()
        .map(|g| {
            let images: Vec<u32> = (1..=degree as u32)
                .map(|w| match inverse.get(&w) {
                    Some(v) => map[&g.apply(*v)],
                    None => w,
                })
                .collect();
            Permutation::from_images(&images)
        })
        .collect()
}

/// Equivariant simplicial isomorphism between two charts, after subdividing
/// the coarser one when their triangulations differ in size.
#[derive(Clone, Debug)]
pub struct ChartIsomorphism {
    /// Subdivision levels applied to the first and second chart.
    pub levels: (usize, usize),
    pub map: VertexMap,
}

pub fn chart_isomorphism(c1: &Chart, c2: &Chart) -> Result<Option<ChartIsomorphism>> {
    if c1.g.order() != c2.g.order() || c1.h.order() != c2.h.order() || c1.k.order() != c2.k.order() {
        return Ok(None);
    }
    if c1.apex.is_some() != c2.apex.is_some() {
        return Ok(None);
    }
    let (t1, t2) = (c1.p.top_simplices().len(), c2.p.top_simplices().len());
    let mut levels = (0, 0);
    let mut f1 = Frame::lift(&c1.p, &c1.g, &c1.h, &c1.k, c1.apex, 0)?;
    let mut f2 = Frame::lift(&c2.p, &c2.g, &c2.h, &c2.k, c2.apex, 0)?;
    if t1 != t2 {
        let (small, big, first) = if t1 < t2 { (c1, t2, true) } else { (c2, t1, false) };
        let mut found = None;
        for times in 1..=2 {
            let f = Frame::lift(&small.p, &small.g, &small.h, &small.k, small.apex, times)?;
            if f.p.top_simplices().len() == big {
                found = Some((times, f));
                break;
            }
        }
        let Some((times, f)) = found else { return Ok(None) };
        if first {
            f1 = f;
            levels.0 = times;
        } else {
            f2 = f;
            levels.1 = times;
        }
    }
    let deg2 = f2.p.max_vertex() as usize;
    let apexes = (f1.apex, f2.apex);
    let allowed = move |v: Vertex, w: Vertex| match apexes {
        (Some(a), Some(b)) => (v == a) == (w == b),
        _ => true,
    };
    let mut accept = |map: &VertexMap| {
        let inverse: VertexMap = map.iter().map(|(&a, &b)| (b, a)).collect();
        [(&f1.g, &f2.g), (&f1.h, &f2.h), (&f1.k, &f2.k)].iter().all(|(x, y)| {
            conjugate_group_by(x, map, &inverse, deg2).map(|gens| gens.iter().all(|g| y.contains(g))).unwrap_or(false)
        })
    };
    Ok(find_isomorphism(&f1.p, &f2.p, &allowed, &mut accept)?.map(|map| ChartIsomorphism { levels, map }))
}

/// Witness that `c1` dominates `c2`: `c1 / N ≅ c2`.
#[derive(Clone, Debug)]
pub struct DominationWitness {
    pub quotient: Domination,
    pub iso: ChartIsomorphism,
}

pub fn dominates(c1: &Chart, c2: &Chart) -> Result<Option<DominationWitness>> {
    if c1.h.order() * c2.k.order() != c2.h.order() * c1.k.order() || c1.g.order() % c2.g.order() != 0 {
        return Ok(None);
    }
    let inter = c1.h.intersection(&c1.k);
    let mut candidates: Vec<PermGroup> = inter.subgroups().into_iter().filter(|n| n.is_normal_in(&c1.g)).collect();
    candidates.sort_by_key(|n| n.order());
    for n in candidates {
        if c1.g.order() / n.order() != c2.g.order() {
            continue;
        }
        let quotient = quotient_by_normal(c1, &n)?;
        if let Some(iso) = chart_isomorphism(&quotient.chart, c2)? {
            return Ok(Some(DominationWitness { quotient, iso }));
        }
    }
    Ok(None)
}

pub fn charts_equivalent(c1: &Chart, c2: &Chart) -> Result<bool> {
    let (r1, r2) = (reduce_chart(c1)?, reduce_chart(c2)?);
    Ok(chart_isomorphism(&r1.chart, &r2.chart)?.is_some())
}

/// `ρ(d)`: the element `g` of `target` with `m ∘ d = g ∘ m`.
fn descend(m: &CoveringMap, d: &Permutation, target: &PermGroup) -> Result<Permutation> {
    let top = m.total.top_simplices()[0].clone();
    for g in target.elements() {
        let agrees = |v: &Vertex| g.apply(m.apply(*v)) == m.apply(d.apply(*v));
        if top.iter().all(agrees) && m.total.vertices().iter().all(agrees) {
            return Ok(g.clone());
        }
    }
    Err(Error::NotACovering("deck transformation does not descend".into()))
}

fn preimage_group(deck: &PermGroup, m: &CoveringMap, target: &PermGroup, sub: &PermGroup) -> Result<PermGroup> {
    let mut keep = Vec::new();
    for d in deck.elements() {
        if sub.contains(&descend(m, d, target)?) {
            keep.push(d.clone());
        }
    }
    PermGroup::generate(deck.degree(), &keep)
}

fn unique_fiber(m: &CoveringMap, apex: Option<Vertex>) -> Option<Vertex> {
    let fiber = m.fiber(apex?);
    (fiber.len() == 1).then(|| fiber[0])
}

fn subdivide_map(m: &CoveringMap, times: usize) -> Result<CoveringMap> {
    let mut m = m.clone();
    for _ in 0..times {
        m = m.subdivide()?;
    }
    Ok(m)
}

#[derive(Clone, Debug)]
pub struct CommonChart {
    pub chart: Chart,
    pub over_first: DominationWitness,
    pub over_second: DominationWitness,
}

/// Chart dominating two equivalent charts, through their common reduction.
pub fn common_dominating_chart(c1: &Chart, c2: &Chart) -> Result<CommonChart> {
    let (r1, r2) = (reduce_chart(c1)?, reduce_chart(c2)?);
    let iso = chart_isomorphism(&r1.chart, &r2.chart)?.ok_or(Error::NotEquivalent)?;
    let base = r1.chart.subdivided(iso.levels.0)?;
    let pi1 = subdivide_map(&r1.map, iso.levels.0)?;
    let pi2 = subdivide_map(&r2.map, iso.levels.1)?;
    let back: VertexMap = iso.map.iter().map(|(&a, &b)| (b, a)).collect();
    let pi2 = CoveringMap::new(
        pi2.total.clone(),
        base.p.clone(),
        pi2.vertex_map.iter().map(|(&v, w)| (v, back[w])).collect(),
    )?;
    let (pi1, pi2) = (subdivide_map(&pi1, base.level)?, subdivide_map(&pi2, base.level)?);
    let pb = connected_pullback(&pi1, &pi2)?;
    let reg = minimal_regularization(&compose(&pb.f, &base.p_g()?)?)?;
    let m = compose(&reg.s, &pb.f)?;
    let fr = base.frame();
    let h = preimage_group(&reg.deck, &m, &fr.g, &fr.h)?;
    let k = preimage_group(&reg.deck, &m, &fr.g, &fr.k)?;
    let chart = Chart::from_groups(reg.r.total.clone(), reg.deck.clone(), h, k, unique_fiber(&m, fr.apex))?;
    let report = validate_chart(&chart);
    if !report.passed() {
        return Err(Error::ChartInvalid(format!("common chart fails: {:?}", report.failures())));
    }
    let over_first =
        dominates(&chart, c1)?.ok_or_else(|| Error::ChartInvalid("does not dominate the first chart".into()))?;
    let over_second =
        dominates(&chart, c2)?.ok_or_else(|| Error::ChartInvalid("does not dominate the second chart".into()))?;
    Ok(CommonChart { chart, over_first, over_second })
}

/// Chart lifted through a branched covering of its `U`.
#[derive(Clone, Debug)]
pub struct LiftedChart {
    pub chart: Chart,
    /// `P̃ → X`, the quotient by `H̃`.
    pub to_total: CoveringMap,
    /// `P̃ → P` (at the chart level).
    pub to_p: CoveringMap,
}

/// Lifts `c` along `f: X → U`. `ident` maps the base of `f` onto `U` when they differ.
pub fn lift_chart(f: &CoveringMap, c: &Chart, ident: Option<&VertexMap>) -> Result<LiftedChart> {
    let u = c.u()?;
    let f = match ident {
        Some(id) => {
            let map = f.vertex_map.iter().map(|(&v, w)| (v, id[w])).collect();
            CoveringMap::new(f.total.clone(), u.quotient.clone(), map)?
        }
        None => f.clone(),
    };
    if f.base != u.quotient {
        return Err(Error::IncompatibleComplexes("covering base is not U".into()));
    }
    if !f.is_branched_covering() {
        return Err(Error::NotABranchedCovering("singular or branch set is not good".into()));
    }
    let ph = u.as_covering()?;
    let pb = connected_pullback(&ph, &f)?;
    let reg = minimal_regularization(&compose(&pb.p1, &c.p_g()?)?)?;
    let to_p = compose(&reg.s, &pb.p1)?;
    let to_total = compose(&reg.s, &pb.p2)?;
    let fr = c.frame();
    let k = preimage_group(&reg.deck, &to_p, &fr.g, &fr.k)?;
    let over_x: Vec<Permutation> = reg
        .deck
        .elements()
        .iter()
        .filter(|d| to_total.total.vertices().iter().all(|&v| to_total.apply(d.apply(v)) == to_total.apply(v)))
        .cloned()
        .collect();
    let n = reg.deck.degree();
    let h = PermGroup::generate(n, &over_x)?;
    let g = h.join(&k)?;
    let chart = Chart::from_groups(to_p.total.clone(), g, h, k, unique_fiber(&to_p, fr.apex))?;
    Ok(LiftedChart { chart, to_total, to_p })
}

#[derive(Clone, Debug)]
pub struct QuotientChart {
    pub chart: Chart,
    /// `π_L: U → U/L` at the level of the new chart.
    pub pi_l: CoveringMap,
}

/// Quotient of a chart by automorphisms `L` of `U` (given on the vertices of `U`).
pub fn quotient_chart(c: &Chart, l_gens: &[Permutation]) -> Result<QuotientChart> {
    let u = c.u()?;
    let la = SimplicialAction::new(u.quotient.clone(), l_gens)?;
    if let Some(a) = c.frame.apex {
        let ua = u.projection[&a];
        if la.group.generators().iter().any(|g| g.apply(ua) != ua) {
            return Err(Error::ChartInvalid("L must fix the apex".into()));
        }
    }
    let or = orient(&u.quotient).map_err(|_| Error::ChartInvalid("U is not orientable".into()))?;
    for l in la.group.elements() {
        let fixes = u.quotient.vertices().iter().any(|&v| l.apply(v) == v);
        if !l.is_identity() && fixes && !or.preserved_by(|v| l.apply(v)) {
            return Err(Error::OrientationViolation);
        }
    }
    let fr = c.frame();
    let mut lifts = Vec::new();
    for l in la.group.generators() {
        let names = &u.projection;
        let allowed = |v: Vertex, w: Vertex| names[&w] == l.apply(names[&v]);
        let mut accept = |_: &VertexMap| true;
        let lam = find_isomorphism(&fr.p, &fr.p, &allowed, &mut accept)?
            .ok_or_else(|| Error::NotLiftable(format!("{l} has no lift to P")))?;
        let n = fr.p.max_vertex();
        let images: Vec<u32> = (1..=n).map(|v| lam.get(&v).copied().unwrap_or(v)).collect();
        lifts.push(Permutation::from_images(&images)?);
    }
    let n = fr.p.max_vertex() as usize;
    let mut hgens = fr.h.generators().to_vec();
    hgens.extend(lifts);
    let hbar = PermGroup::generate(n, &hgens)?;
    if !fr.h.is_normal_in(&hbar) {
        return Err(Error::NotLiftable("H is not normal in the group of lifts".into()));
    }
    let gbar = hbar.join(&fr.k)?;
    if !fr.k.is_normal_in(&gbar) {
        return Err(Error::NotLiftable("lifts do not normalize K".into()));
    }
    let chart = Chart::from_groups(fr.p.clone(), gbar, hbar, fr.k.clone(), fr.apex)?;
    let (sub, hl) = lift_permutations(&fr.p, fr.h.generators(), chart.level);
    let hq = quotient_of(
        SimplicialAction { complex: sub.clone(), group: PermGroup::generate(sub.max_vertex() as usize, &hl)? },
        chart.level,
    )?;
    let ubar = chart.u()?;
    let map = hq.quotient.vertices().iter().map(|&v| (v, ubar.projection[&v])).collect();
    let pi_l = CoveringMap::new(hq.quotient, ubar.quotient, map)?;
    Ok(QuotientChart { chart, pi_l })
}

/// Image of the `H`-valued monodromy of `p_H` in the coset action on `H/(H ∩ K)`.
#[derive(Clone, Debug, Serialize)]
pub struct LocalCharacteristic {
    pub h_order: usize,
    pub h_cap_k_order: usize,
    pub image_order: usize,
    /// Order of the image of the loop around the apex, for conical charts.
    pub meridian_order: Option<usize>,
}

pub fn local_characteristic(c: &Chart) -> Result<LocalCharacteristic> {
    let fr = c.frame();
    let ph = c.p_h()?;
    let (mc, labels) = extract_labeled(&ph)?;
    let mono = mc.monodromy_group();
    if mono.order() != fr.h.order() || ph.degree != fr.h.order() {
        return Err(Error::ChartInvalid("p_H is not regular with deck group H".into()));
    }
    let inter = fr.h.intersection(&fr.k);
    let cosets = fr.h.coset_action(&inter)?;
    let central = crate::covering::centralizer_of_transitive(&mono);
    // monodromy element m ↦ deck transformation moving sheet 1 to m(1)
    let to_h = |m: &Permutation| -> Result<Permutation> {
        let target = m.apply0(0);
        let cc = central.iter().find(|x| x.apply0(0) == target).expect("regular monodromy");
        let d = ph.realize_sheet_permutation(&labels, cc)?;
        if !fr.h.contains(&d) {
            return Err(Error::ChartInvalid("deck transformation outside H".into()));
        }
        cosets.act(&d)
    };
    let images: Vec<Permutation> = mono.generators().iter().map(to_h).collect::<Result<_>>()?;
    let image = PermGroup::generate(cosets.index(), &images)?;
    let meridian_order = match fr.apex {
        Some(a) if c.is_conical() => {
            let ua = c.u()?.projection[&a];
            let local = mc.local_group(&[ua]);
            let imgs: Vec<Permutation> = local.generators().iter().map(to_h).collect::<Result<_>>()?;
            Some(PermGroup::generate(cosets.index(), &imgs)?.order())
        }
        _ => None,
    };
    Ok(LocalCharacteristic {
        h_order: fr.h.order(),
        h_cap_k_order: inter.order(),
        image_order: image.order(),
        meridian_order,
    })
}

/// `(h, k)` of a conical chart whose reduced model is cyclic with codimension-2 fixed set.
pub fn classify_codim2(c: &Chart) -> Result<CodimTwoModel> {
    if !c.is_conical() {
        return Err(Error::NotCodimTwo("chart is not conical".into()));
    }
    let reduced = reduce_chart(c)?.chart;
    if reduced.g.is_trivial() {
        return Ok(CodimTwoModel { h: 1, k: 1 });
    }
    if !reduced.g.is_cyclic() {
        return Err(Error::NotCodimTwo(format!("G of order {} is not cyclic", reduced.g.order())));
    }
    let q = reduced.pmod_g()?;
    let m = q.action.complex.dim();
    if q.singular.dim() != m - 2 {
        return Err(Error::NotCodimTwo(format!("fixed set has dimension {} in dimension {m}", q.singular.dim())));
    }
    CodimTwoModel::new(reduced.h.order() as u64, reduced.k.order() as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchfoldKind {
    Orbifold,
    Pure,
    Mixed,
}

pub fn classify_kind(models: &[Chart]) -> BranchfoldKind {
    if models.iter().all(|c| c.k.is_trivial()) {
        BranchfoldKind::Orbifold
    } else if models.iter().all(|c| c.h.is_subgroup_of(&c.k)) {
        BranchfoldKind::Pure
    } else {
        BranchfoldKind::Mixed
    }
}

/// Group orders of a reduced local model: `(|G|, |H|, |K|)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModelType {
    pub g: usize,
    pub h: usize,
    pub k: usize,
}

impl ModelType {
    pub fn index(&self) -> IndexFraction {
        IndexFraction::new(self.h as u64, self.k as u64)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct StratumComponent {
    pub dim: usize,
    pub simplices: Vec<Vec<Vertex>>,
    pub model: ModelType,
    pub label: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct Stratification {
    /// `strata[i]`: simplices of `U` in `Σ_i`.
    pub strata: Vec<Vec<Vec<Vertex>>>,
    pub components: Vec<StratumComponent>,
}

fn model_at(fr: &Frame, s: &[Vertex]) -> Result<ModelType> {
    let gs = fr.g.pointwise_stabilizer(s);
    let hs = fr.h.intersection(&gs);
    let ks = fr.k.intersection(&gs);
    let g = hs.join(&ks)?;
    let n = g.core(&hs.intersection(&ks))?;
    Ok(ModelType { g: g.order() / n.order(), h: hs.order() / n.order(), k: ks.order() / n.order() })
}

/// Singular locus of `U` with strata and their local models.
pub fn stratify(c: &Chart) -> Result<Stratification> {
    let level = c.level.max(1);
    let chart = if level == c.level {
        c.clone()
    } else {
        Chart::at_level(c.p.clone(), c.g.clone(), c.h.clone(), c.k.clone(), c.apex, level)?
    };
    let fr = chart.frame();
    let u = chart.u()?;
    let mut models: HashMap<Vec<Vertex>, ModelType> = HashMap::new();
    for s in fr.p.simplices() {
        let m = model_at(fr, s)?;
        if m.g == 1 {
            continue;
        }
        let img = Complex::map_simplex(s, |v| u.projection[&v]);
        if let Some(old) = models.insert(img.clone(), m) {
            if old != m {
                return Err(Error::InconsistentModels(format!("{img:?} has models {old:?} and {m:?}")));
            }
        }
    }
    let mut singular: Vec<&Vec<Vertex>> = models.keys().collect();
    singular.sort();
    let mdim = u.quotient.dim().max(0) as usize;
    let mut sdim: HashMap<&Vec<Vertex>, usize> = HashMap::new();
    for s in &singular {
        let d = u
            .quotient
            .cofaces(s)
            .into_iter()
            .filter(|t| models.get(*t) == Some(&models[*s]))
            .map(|t| t.len() - 1)
            .max()
            .unwrap_or(s.len() - 1);
        sdim.insert(s, d);
    }
    let mut strata = vec![Vec::new(); mdim + 1];
    for s in &singular {
        for (i, stratum) in strata.iter_mut().enumerate() {
            if sdim[s] <= i {
                stratum.push((*s).clone());
            }
        }
    }
    let mut components = Vec::new();
    for i in 0..=mdim {
        let open: Vec<&Vec<Vertex>> = singular.iter().copied().filter(|s| sdim[s] == i).collect();
        let pos: HashMap<&Vec<Vertex>, usize> = open.iter().enumerate().map(|(k, s)| (*s, k)).collect();
        let mut uf = crate::simplicial::UnionFind::new(open.len());
        for (k, s) in open.iter().enumerate() {
            for skip in 0..s.len() {
                if s.len() < 2 {
                    break;
                }
                let face: Vec<Vertex> = s.iter().enumerate().filter(|&(j, _)| j != skip).map(|(_, &v)| v).collect();
                if let Some(&q) = pos.get(&face) {
                    uf.union(k, q);
                }
            }
        }
        let mut groups: std::collections::BTreeMap<usize, Vec<Vec<Vertex>>> = Default::default();
        for (k, s) in open.iter().enumerate() {
            groups.entry(uf.find(k)).or_default().push((*s).clone());
        }
        for (_, simplices) in groups {
            let model = models[&simplices[0]];
            if simplices.iter().any(|s| models[s] != model) {
                return Err(Error::InconsistentModels(format!("stratum component through {:?}", simplices[0])));
            }
            components.push(StratumComponent { dim: i, label: model.index().to_string(), model, simplices });
        }
    }
    Ok(Stratification { strata, components })
}
