//! Finite groups acting on complexes by vertex permutations.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::covering::{is_regular, CoveringMap, VertexMap};
use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation};
use crate::simplicial::{is_good_subcomplex, is_pseudo_manifold, Complex, Simplex, Vertex};

/// A group of vertex permutations preserving the simplices of a complex.
/// Permutations have degree `complex.max_vertex()` and fix ids outside the complex.
#[derive(Clone, Debug)]
pub struct SimplicialAction {
    pub complex: Complex,
    pub group: PermGroup,
}

pub(crate) fn fit_degree(p: &Permutation, n: usize) -> Result<Permutation> {
    if p.degree() <= n {
        return Ok(p.extend(n));
    }
    if (n as u32 + 1..=p.degree() as u32).any(|x| p.apply(x) != x) {
        return Err(Error::ActionInvalid(format!("{p} moves a point outside the complex")));
    }
    Permutation::from_images(&p.images()[..n])
}

impl SimplicialAction {
    pub fn new(complex: Complex, gens: &[Permutation]) -> Result<Self> {
        let n = complex.max_vertex() as usize;
        let gens = gens.iter().map(|g| fit_degree(g, n)).collect::<Result<Vec<_>>>()?;
        let group = PermGroup::generate(n, &gens)?;
        let a = SimplicialAction { complex, group };
        a.validate()?;
        Ok(a)
    }

    pub fn trivial(complex: Complex) -> Self {
        let n = complex.max_vertex() as usize;
        SimplicialAction { complex, group: PermGroup::trivial(n) }
    }

    /// Checks simplex preservation and effectiveness.
    pub fn validate(&self) -> Result<()> {
        if self.group.degree() != self.complex.max_vertex() as usize {
            return Err(Error::ActionInvalid("group degree differs from the largest vertex id".into()));
        }
        for g in self.group.generators() {
            for x in 1..=self.group.degree() as u32 {
                if !self.complex.has_vertex(x) && g.apply(x) != x {
                    return Err(Error::ActionInvalid(format!("{g} moves {x}, which is not a vertex")));
                }
            }
            for s in self.complex.top_simplices() {
                if !self.complex.contains(&self.act(g, s)) {
                    return Err(Error::NotSimplicial(format!("{g} sends {s:?} outside the complex")));
                }
            }
        }
        for g in self.group.elements() {
            if !g.is_identity() && self.complex.vertices().iter().all(|&v| g.apply(v) == v) {
                return Err(Error::NotEffective(format!("{g} fixes every vertex")));
            }
        }
        Ok(())
    }

    pub fn act(&self, g: &Permutation, s: &[Vertex]) -> Simplex {
        Complex::map_simplex(s, |v| g.apply(v))
    }

    /// Vertex orbits, each sorted, ordered by least member.
    pub fn vertex_orbits(&self) -> Vec<Vec<Vertex>> {
        self.group.orbits().into_iter().filter(|o| self.complex.has_vertex(o[0])).collect()
    }

    /// Least vertex in the orbit of each vertex.
    pub fn orbit_names(&self) -> VertexMap {
        let mut out = VertexMap::new();
        for o in self.vertex_orbits() {
            for &v in &o {
                out.insert(v, o[0]);
            }
        }
        out
    }

    pub fn restrict(&self, h: &PermGroup) -> Result<SimplicialAction> {
        if !h.is_subgroup_of(&self.group) {
            return Err(Error::NotSubgroup);
        }
        Ok(SimplicialAction { complex: self.complex.clone(), group: h.clone() })
    }

    /// Induced action on the first barycentric subdivision.
    pub fn subdivide(&self) -> SimplicialAction {
        let sub = self.complex.subdivide_once();
        let gens: Vec<Permutation> =
            self.group.generators().iter().map(|g| subdivide_permutation(&self.complex, g)).collect();
        let n = sub.max_vertex() as usize;
        let group = PermGroup::generate(n, &gens).expect("isomorphic image");
        SimplicialAction { complex: sub, group }
    }

    /// Lifts a subgroup (given on the original vertices) to the action after `times` subdivisions.
    pub fn subdivide_times(&self, times: usize) -> SimplicialAction {
        let mut a = self.clone();
        for _ in 0..times {
            a = a.subdivide();
        }
        a
    }

    /// Every `g` sends simplices with distinct vertex orbits, and simplices with
    /// equal orbit images lie in one orbit. The quotient is then simplicial.
    pub fn is_clean(&self) -> bool {
        let names = self.orbit_names();
        let mut image_orbit: BTreeMap<Simplex, Simplex> = BTreeMap::new();
        for s in self.complex.simplices() {
            let img = Complex::map_simplex(s, |v| names[&v]);
            if img.len() != s.len() {
                return false;
            }
            let rep = self.group.elements().iter().map(|g| self.act(g, s)).min().unwrap();
            match image_orbit.get(&img) {
                Some(r) if *r != rep => return false,
                Some(_) => {}
                None => {
                    image_orbit.insert(img, rep);
                }
            }
        }
        true
    }

    /// Pointwise stabilizer of a vertex set.
    pub fn fixer(&self, vertices: &[Vertex]) -> PermGroup {
        self.group.pointwise_stabilizer(vertices)
    }

    /// Simplices `s` whose pointwise stabilizer is larger than that of their closed star.
    pub fn singular_set(&self) -> Complex {
        let mut sing = Vec::new();
        for s in self.complex.simplices() {
            let gs = self.fixer(s);
            if gs.is_trivial() {
                continue;
            }
            let star = self.complex.star_of(s);
            if gs.order() > self.fixer(star.vertices()).order() {
                sing.push(s.clone());
            }
        }
        self.complex.subcomplex(&sing).expect("simplices of the complex")
    }
}

/// Permutation of the first subdivision induced by a simplicial vertex permutation.
pub fn subdivide_permutation(c: &Complex, g: &Permutation) -> Permutation {
    let images: Vec<u32> = c
        .simplices()
        .iter()
        .map(|s| c.index_of(&Complex::map_simplex(s, |v| g.apply(v))).expect("simplicial permutation") as u32 + 1)
        .collect();
    Permutation::from_images(&images).expect("induced permutation")
}

/// Subdivides `c` `times` times, carrying the permutations along.
pub fn lift_permutations(c: &Complex, perms: &[Permutation], times: usize) -> (Complex, Vec<Permutation>) {
    let mut c = c.clone();
    let mut perms = perms.to_vec();
    for _ in 0..times {
        perms = perms.iter().map(|g| subdivide_permutation(&c, g)).collect();
        c = c.subdivide_once();
    }
    (c, perms)
}

/// Vertex of the `times`-fold subdivision at the barycenter of vertex `v`.
pub fn lift_vertex(c: &Complex, v: Vertex, times: usize) -> Option<Vertex> {
    let mut c = c.clone();
    let mut v = v;
    for _ in 0..times {
        v = c.index_of(&[v])? as Vertex + 1;
        c = c.subdivide_once();
    }
    Some(v)
}

/// Quotient of an action at a subdivision level.
#[derive(Clone, Debug)]
pub struct QuotientData {
    pub level: usize,
    /// The action on the subdivided complex.
    pub action: SimplicialAction,
    pub quotient: Complex,
    pub projection: VertexMap,
    pub singular: Complex,
    pub branch: Complex,
}

impl QuotientData {
    pub fn as_covering(&self) -> Result<CoveringMap> {
        CoveringMap::new(self.action.complex.clone(), self.quotient.clone(), self.projection.clone())
    }
}

/// Quotient on the second barycentric subdivision.
pub fn quotient(a: &SimplicialAction) -> Result<QuotientData> {
    quotient_at_level(a, 2)
}

pub fn quotient_at_level(a: &SimplicialAction, level: usize) -> Result<QuotientData> {
    a.validate()?;
    let sub = a.subdivide_times(level);
    quotient_of(sub, level)
}

pub(crate) fn quotient_of(sub: SimplicialAction, level: usize) -> Result<QuotientData> {
    if !sub.is_clean() {
        return Err(Error::ActionInvalid(format!("quotient is not simplicial at subdivision level {level}")));
    }
    let names = sub.orbit_names();
    let simplices: BTreeSet<Simplex> =
        sub.complex.simplices().iter().map(|s| Complex::map_simplex(s, |v| names[&v])).collect();
    let quotient = Complex::from_top(&simplices.into_iter().collect::<Vec<_>>())?;
    let singular = sub.singular_set();
    let branch_simplices: Vec<Simplex> =
        singular.simplices().iter().map(|s| Complex::map_simplex(s, |v| names[&v])).collect();
    let branch = quotient.subcomplex(&branch_simplices)?;
    Ok(QuotientData { level, action: sub, quotient, projection: names, singular, branch })
}

/// Least level in `0..=2` at which every listed action is clean.
pub fn minimal_clean_level(actions: &[&SimplicialAction]) -> usize {
    for level in 0..2 {
        if actions.iter().all(|a| a.subdivide_times(level).is_clean()) {
            return level;
        }
    }
    2
}

#[derive(Clone, Debug, Serialize)]
pub struct GoodActionReport {
    pub good: bool,
    pub singular_dim: isize,
    /// `dim S_G ≤ m − 2`, reported when the complex is a pseudo-manifold.
    pub codim_two_rule: Option<bool>,
}

pub fn is_good_action(a: &SimplicialAction) -> Result<GoodActionReport> {
    let q = quotient(a)?;
    Ok(good_report(&q))
}

fn good_report(q: &QuotientData) -> GoodActionReport {
    let c = &q.action.complex;
    let good = is_good_subcomplex(c, &q.singular);
    let rep = is_pseudo_manifold(c);
    let codim_two_rule = rep.holds_with_boundary().then(|| q.singular.dim() <= c.dim() - 2);
    GoodActionReport { good, singular_dim: q.singular.dim(), codim_two_rule }
}

/// The canonical projection as a branched covering, checked to be regular with deck group of order `|G|`.
pub fn projection_as_covering(a: &SimplicialAction) -> Result<CoveringMap> {
    projection_at_level(a, 2)
}

pub fn projection_at_level(a: &SimplicialAction, level: usize) -> Result<CoveringMap> {
    let q = quotient_at_level(a, level)?;
    if !good_report(&q).good {
        return Err(Error::NotGoodAction);
    }
    let f = q.as_covering()?;
    if f.total.is_connected() {
        if f.degree != a.group.order() {
            return Err(Error::ActionInvalid(format!(
                "projection degree {} differs from |G| = {}",
                f.degree,
                a.group.order()
            )));
        }
        let reg = is_regular(&f)?;
        if !reg.regular || reg.deck.map(|d| d.order()) != Some(a.group.order()) {
            return Err(Error::ActionInvalid("projection is not regular with deck group G".into()));
        }
    }
    Ok(f)
}

/// Restriction to a subgroup with the intermediate map `P/H → P/G`.
#[derive(Clone, Debug)]
pub struct Restriction {
    pub action: SimplicialAction,
    pub intermediate: CoveringMap,
    pub normal: bool,
    pub regular: bool,
}

pub fn restrict_to_subgroup(a: &SimplicialAction, h: &PermGroup) -> Result<Restriction> {
    restrict_at_level(a, h, 2)
}

pub fn restrict_at_level(a: &SimplicialAction, h: &PermGroup, level: usize) -> Result<Restriction> {
    let action = a.restrict(h)?;
    let qg = quotient_at_level(a, level)?;
    let qh = quotient_at_level(&action, level)?;
    if !good_report(&qg).good {
        return Err(Error::NotGoodAction);
    }
    let map: VertexMap = qh.quotient.vertices().iter().map(|&v| (v, qg.projection[&v])).collect();
    let intermediate = CoveringMap::new(qh.quotient.clone(), qg.quotient.clone(), map)?;
    let regular = is_regular(&intermediate)?.regular;
    Ok(Restriction { action, intermediate, normal: h.is_normal_in(&a.group), regular })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::covering::rh_check;
    use crate::fixtures;

    fn perm(s: &str, n: usize) -> Permutation {
        Permutation::parse(s, n).unwrap()
    }

    #[test]
    fn validation_examples() {
        let o = fixtures::octahedron();
        assert!(SimplicialAction::new(o.clone(), &[perm("(1 2)(3 4)", 6)]).is_ok());
        assert!(SimplicialAction::new(o.clone(), &[perm("(1 2)(3 4)(5 6)", 6)]).is_ok());
        let t = Complex::from_top(&[vec![1, 2, 3]]).unwrap();
        assert!(SimplicialAction::new(t, &[perm("(1 2)", 3)]).is_ok());
        assert!(matches!(SimplicialAction::new(o, &[perm("(1 5)", 6)]), Err(Error::NotSimplicial(_))));
    }

    #[test]
    fn rotation_quotient() {
        let a = SimplicialAction::new(fixtures::octahedron(), &[perm("(1 2)(3 4)", 6)]).unwrap();
        let q = quotient(&a).unwrap();
        assert_eq!(q.quotient.euler_characteristic(), 2);
        assert_eq!(q.singular.dim(), 0);
        assert_eq!(q.singular.vertices().len(), 2);
        assert_eq!(q.branch.vertices().len(), 2);
        let f = projection_as_covering(&a).unwrap();
        assert_eq!(f.degree, 2);
        let (l, r) = rh_check(&f).unwrap();
        assert_eq!(l, r);
    }

    #[test]
    fn antipodal_quotient() {
        let a = SimplicialAction::new(fixtures::octahedron(), &[perm("(1 2)(3 4)(5 6)", 6)]).unwrap();
        let q = quotient(&a).unwrap();
        assert_eq!(q.quotient.euler_characteristic(), 1);
        assert!(q.singular.is_empty());
        let f = projection_as_covering(&a).unwrap();
        assert!(f.branch.is_empty());
    }

    #[test]
    fn reflection_is_not_good() {
        let a = SimplicialAction::new(fixtures::octahedron(), &[perm("(1 2)", 6)]).unwrap();
        let rep = is_good_action(&a).unwrap();
        assert!(!rep.good);
        assert_eq!(rep.singular_dim, 1);
        assert_eq!(rep.codim_two_rule, Some(false));
        assert!(matches!(projection_as_covering(&a), Err(Error::NotGoodAction)));
    }

    #[test]
    fn level_zero_cleanliness() {
        let rot = SimplicialAction::new(fixtures::octahedron(), &[perm("(1 2)(3 4)", 6)]).unwrap();
        assert!(!rot.is_clean());
        assert!(rot.subdivide_times(2).is_clean());
        let refl = SimplicialAction::new(fixtures::octahedron(), &[perm("(1 2)", 6)]).unwrap();
        assert!(refl.is_clean());
    }

    #[test]
    fn trivial_group_quotient() {
        let a = SimplicialAction::trivial(fixtures::octahedron());
        let q = quotient(&a).unwrap();
        assert_eq!(q.quotient, q.action.complex);
        assert!(q.singular.is_empty());
        assert_eq!(projection_as_covering(&a).unwrap().degree, 1);
    }
}
