//! Finite permutation groups stored by full element enumeration.
//!
//! Points are `1..=n` in the public API; internally images are 0-based.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

pub const DEFAULT_GROUP_CAP: usize = 1_000_000;

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<u32>,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Permutation { images: (0..n as u32).collect() }
    }

    /// Builds from 1-based images `[p(1), ..., p(n)]`.
    pub fn from_images(images: &[u32]) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::with_capacity(n);
        for &x in images {
            if x == 0 || x as usize > n || seen[x as usize - 1] {
                return Err(Error::BadPermutation(format!("{images:?} is not a bijection")));
            }
            seen[x as usize - 1] = true;
            out.push(x - 1);
        }
        Ok(Permutation { images: out })
    }

    pub(crate) fn from_zero_based(images: Vec<u32>) -> Self {
        debug_assert!({
            let mut s = images.clone();
            s.sort_unstable();
            s.iter().enumerate().all(|(i, &x)| i as u32 == x)
        });
        Permutation { images }
    }

    /// Builds a permutation of degree `n` from 1-based disjoint cycles.
    pub fn from_cycles(n: usize, cycles: &[Vec<u32>]) -> Result<Self> {
        let mut images: Vec<u32> = (0..n as u32).collect();
        let mut touched = vec![false; n];
        for cyc in cycles {
            for (i, &a) in cyc.iter().enumerate() {
                let b = cyc[(i + 1) % cyc.len()];
                if a == 0 || b == 0 || a as usize > n || b as usize > n {
                    return Err(Error::BadPermutation(format!("point out of range 1..={n} in {cyc:?}")));
                }
                if touched[a as usize - 1] {
                    return Err(Error::BadPermutation(format!("point {a} repeated")));
                }
                touched[a as usize - 1] = true;
                images[a as usize - 1] = b - 1;
            }
        }
        Ok(Permutation { images })
    }

    /// Parses disjoint-cycle notation such as `"(1 2)(3 4)"`; `"()"` is the identity.
    /// The degree is `max(n, largest point mentioned)`.
    pub fn parse(text: &str, n: usize) -> Result<Self> {
        let mut cycles = Vec::new();
        let mut rest = text.trim();
        let mut max_pt = 0u32;
        while !rest.is_empty() {
            if !rest.starts_with('(') {
                return Err(Error::BadPermutation(format!("expected '(' in {text:?}")));
            }
            let close = rest.find(')').ok_or_else(|| Error::BadPermutation(format!("unclosed cycle in {text:?}")))?;
            let inner = &rest[1..close];
            let mut cyc = Vec::new();
            for tok in inner.split(|c: char| c.is_whitespace() || c == ',').filter(|t| !t.is_empty()) {
                let x: u32 =
                    tok.parse().map_err(|_| Error::BadPermutation(format!("bad point {tok:?} in {text:?}")))?;
                max_pt = max_pt.max(x);
                cyc.push(x);
            }
            if cyc.len() > 1 {
                cycles.push(cyc);
            }
            rest = rest[close + 1..].trim_start();
        }
        Permutation::from_cycles(n.max(max_pt as usize), &cycles)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    /// Image of the 1-based point `x`; points beyond the degree are fixed.
    pub fn apply(&self, x: u32) -> u32 {
        if x == 0 || x as usize > self.images.len() {
            x
        } else {
            self.images[x as usize - 1] + 1
        }
    }

    pub(crate) fn apply0(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// 1-based image list.
    pub fn images(&self) -> Vec<u32> {
        self.images.iter().map(|x| x + 1).collect()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        assert_eq!(self.degree(), other.degree(), "degree mismatch in compose");
        Permutation { images: other.images.iter().map(|&j| self.images[j as usize]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u32; self.images.len()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u32;
        }
        Permutation { images: inv }
    }

    /// `g ∘ self ∘ g⁻¹`.
    pub fn conjugate_by(&self, g: &Permutation) -> Permutation {
        g.compose(self).compose(&g.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i as u32 == j)
    }

    /// Nontrivial cycles, 1-based, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cyc.push(x as u32 + 1);
                x = self.images[x] as usize;
            }
            if cyc.len() > 1 {
                out.push(cyc);
            }
        }
        out
    }

    pub fn order(&self) -> usize {
        self.cycles().iter().map(|c| c.len()).fold(1, num_integer::lcm)
    }

    /// +1 for even, -1 for odd.
    pub fn sign(&self) -> i8 {
        let odd = self.cycles().iter().filter(|c| c.len() % 2 == 0).count();
        if odd % 2 == 0 {
            1
        } else {
            -1
        }
    }

    /// Same action on a larger point set, fixing the new points.
    pub fn extend(&self, n: usize) -> Permutation {
        assert!(n >= self.degree());
        let mut images = self.images.clone();
        images.extend(self.degree() as u32..n as u32);
        Permutation { images }
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// A finite permutation group with every element materialized.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: Vec<Permutation>,
    index: HashMap<Permutation, usize>,
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PermGroup(degree {}, order {}, gens {:?})", self.degree, self.order(), self.generators)
    }
}

impl PartialEq for PermGroup {
    fn eq(&self, other: &Self) -> bool {
        self.degree == other.degree && self.order() == other.order() && self.elements.iter().all(|e| other.contains(e))
    }
}

impl Eq for PermGroup {}

impl PermGroup {
    pub fn generate(degree: usize, gens: &[Permutation]) -> Result<Self> {
        Self::generate_with_cap(degree, gens, DEFAULT_GROUP_CAP)
    }

    /// Breadth-first closure of `gens`.
    pub fn generate_with_cap(degree: usize, gens: &[Permutation], cap: usize) -> Result<Self> {
        for g in gens {
            if g.degree() != degree {
                return Err(Error::DegreeMismatch(degree, g.degree()));
            }
        }
        let generators: Vec<Permutation> = gens.iter().filter(|g| !g.is_identity()).cloned().collect();
        let id = Permutation::identity(degree);
        let mut elements = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id, 0);
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            for s in &generators {
                let p = s.compose(&elements[i]);
                if !index.contains_key(&p) {
                    if elements.len() >= cap {
                        return Err(Error::GroupTooLarge(cap));
                    }
                    index.insert(p.clone(), elements.len());
                    queue.push_back(elements.len());
                    elements.push(p);
                }
            }
        }
        Ok(PermGroup { degree, generators, elements, index })
    }

    pub fn trivial(degree: usize) -> Self {
        Self::generate(degree, &[]).expect("trivial group")
    }

    /// Parses a list of cycle-notation generators.
    pub fn parse(degree: usize, gens: &[String]) -> Result<Self> {
        let mut perms = Vec::new();
        for g in gens {
            perms.push(Permutation::parse(g, degree)?);
        }
        let n = perms.iter().map(|p| p.degree()).max().unwrap_or(degree).max(degree);
        let perms: Vec<_> = perms.into_iter().map(|p| p.extend(n)).collect();
        Self::generate(n, &perms)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn elements(&self) -> &[Permutation] {
        &self.elements
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        self.index.contains_key(p)
    }

    pub fn is_trivial(&self) -> bool {
        self.elements.len() == 1
    }

    pub fn is_subgroup_of(&self, g: &PermGroup) -> bool {
        self.degree == g.degree && self.elements.iter().all(|e| g.contains(e))
    }

    /// `g k g⁻¹ ∈ self` for every generator `g` of `ambient` and `k` of self.
    pub fn is_normal_in(&self, ambient: &PermGroup) -> bool {
        self.is_subgroup_of(ambient)
            && ambient.generators.iter().all(|g| self.generators.iter().all(|k| self.contains(&k.conjugate_by(g))))
    }

    pub fn is_abelian(&self) -> bool {
        self.generators.iter().all(|a| self.generators.iter().all(|b| a.compose(b) == b.compose(a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.elements.iter().any(|e| e.order() == self.order())
    }

    /// Element of maximal order, least in lexicographic order among those.
    pub fn cyclic_generator(&self) -> Option<Permutation> {
        let n = self.order();
        self.elements.iter().filter(|e| e.order() == n).min().cloned()
    }

    fn from_element_set(degree: usize, elems: &[Permutation]) -> Self {
        // A subset closed under products: generate from it (small sets only).
        let mut gens: Vec<Permutation> = Vec::new();
        let mut current = PermGroup::trivial(degree);
        let mut sorted: Vec<&Permutation> = elems.iter().collect();
        sorted.sort();
        for e in sorted {
            if !current.contains(e) {
                gens.push(e.clone());
                current = PermGroup::generate(degree, &gens).expect("subset of a finite group");
            }
        }
        current
    }

    pub fn intersection(&self, other: &PermGroup) -> PermGroup {
        let common: Vec<Permutation> = self.elements.iter().filter(|e| other.contains(e)).cloned().collect();
        Self::from_element_set(self.degree, &common)
    }

    /// Subgroup generated by the union of two groups of the same degree.
    pub fn join(&self, other: &PermGroup) -> Result<PermGroup> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        PermGroup::generate(self.degree, &gens)
    }

    /// Stabilizer of the 1-based point `x`.
    pub fn stabilizer(&self, x: u32) -> PermGroup {
        let elems: Vec<Permutation> = self.elements.iter().filter(|e| e.apply(x) == x).cloned().collect();
        Self::from_element_set(self.degree, &elems)
    }

    /// Elements fixing every point of `pts` (1-based).
    pub fn pointwise_stabilizer(&self, pts: &[u32]) -> PermGroup {
        let elems: Vec<Permutation> =
            self.elements.iter().filter(|e| pts.iter().all(|&x| e.apply(x) == x)).cloned().collect();
        Self::from_element_set(self.degree, &elems)
    }

    /// Orbit partition of `{1..n}`, each orbit sorted, orbits ordered by least point.
    pub fn orbits(&self) -> Vec<Vec<u32>> {
        let n = self.degree;
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut orbit = vec![start];
            seen[start] = true;
            let mut i = 0;
            while i < orbit.len() {
                let x = orbit[i];
                for g in &self.generators {
                    let y = g.apply0(x);
                    if !seen[y] {
                        seen[y] = true;
                        orbit.push(y);
                    }
                }
                i += 1;
            }
            let mut o: Vec<u32> = orbit.into_iter().map(|x| x as u32 + 1).collect();
            o.sort_unstable();
            out.push(o);
        }
        out
    }

    pub fn is_transitive(&self) -> bool {
        self.orbits().len() <= 1
    }

    /// Intersection of all conjugates of `h`: the largest normal subgroup of `self` inside `h`.
    pub fn core(&self, h: &PermGroup) -> Result<PermGroup> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        let mut current: Vec<Permutation> = h.elements.clone();
        for g in &self.elements {
            let gi = g.inverse();
            // x survives if g⁻¹ x g ∈ h, i.e. x ∈ g h g⁻¹
            current.retain(|x| h.contains(&gi.compose(x).compose(g)));
            if current.len() == 1 {
                break;
            }
        }
        Ok(Self::from_element_set(self.degree, &current))
    }

    /// Left-coset action of `self` on `self / h`.
    pub fn coset_action(&self, h: &PermGroup) -> Result<CosetAction> {
        if !h.is_subgroup_of(self) {
            return Err(Error::NotSubgroup);
        }
        let mut coset_of = vec![usize::MAX; self.elements.len()];
        let mut cosets: Vec<Vec<usize>> = Vec::new();
        for (i, x) in self.elements.iter().enumerate() {
            if coset_of[i] != usize::MAX {
                continue;
            }
            let members: Vec<usize> = h.elements.iter().map(|k| self.index[&x.compose(k)]).collect();
            let c = cosets.len();
            for &m in &members {
                coset_of[m] = c;
            }
            cosets.push(members);
        }
        // canonical numbering: sort cosets by their least representative
        let mut reps: Vec<(Permutation, usize)> = cosets
            .iter()
            .enumerate()
            .map(|(c, members)| (members.iter().map(|&m| self.elements[m].clone()).min().unwrap(), c))
            .collect();
        reps.sort();
        let mut renumber = vec![0usize; cosets.len()];
        for (new, (_, old)) in reps.iter().enumerate() {
            renumber[*old] = new;
        }
        let coset_of: Vec<usize> = coset_of.iter().map(|&c| renumber[c]).collect();
        let representatives: Vec<Permutation> = reps.into_iter().map(|(r, _)| r).collect();
        Ok(CosetAction { group: self.clone(), coset_of, representatives })
    }

    /// Every subgroup of a small group (each listed once).
    pub fn subgroups(&self) -> Vec<PermGroup> {
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut out: Vec<PermGroup> = Vec::new();
        let key = |g: &PermGroup, me: &PermGroup| {
            let mut v: Vec<usize> = g.elements.iter().map(|e| me.index[e]).collect();
            v.sort_unstable();
            v
        };
        let mut frontier: Vec<PermGroup> = Vec::new();
        for e in &self.elements {
            let c = PermGroup::generate(self.degree, std::slice::from_ref(e)).expect("cyclic subgroup");
            if seen.insert(key(&c, self)) {
                frontier.push(c.clone());
                out.push(c);
            }
        }
        let cyclics = out.clone();
        while let Some(g) = frontier.pop() {
            for c in &cyclics {
                if c.is_subgroup_of(&g) {
                    continue;
                }
                let j = g.join(c).expect("join of subgroups");
                if seen.insert(key(&j, self)) {
                    frontier.push(j.clone());
                    out.push(j);
                }
            }
        }
        out.sort_by_key(|g| key(g, self));
        out
    }

    /// `{hk}` as a set equals `self`.
    pub fn is_product(&self, h: &PermGroup, k: &PermGroup) -> bool {
        let mut prod: BTreeSet<&Permutation> = BTreeSet::new();
        let mut products = Vec::new();
        for a in &h.elements {
            for b in &k.elements {
                products.push(a.compose(b));
            }
        }
        for p in &products {
            if !self.contains(p) {
                return false;
            }
            prod.insert(p);
        }
        prod.len() == self.order()
    }

    pub fn index_of(&self, p: &Permutation) -> Option<usize> {
        self.index.get(p).copied()
    }
}

/// Result of [`PermGroup::coset_action`].
#[derive(Clone, Debug)]
pub struct CosetAction {
    group: PermGroup,
    coset_of: Vec<usize>,
    representatives: Vec<Permutation>,
}

impl CosetAction {
    pub fn index(&self) -> usize {
        self.representatives.len()
    }

    pub fn representatives(&self) -> &[Permutation] {
        &self.representatives
    }

    /// 1-based number of the coset containing `x`.
    pub fn coset_number(&self, x: &Permutation) -> Option<u32> {
        self.group.index_of(x).map(|i| self.coset_of[i] as u32 + 1)
    }

    /// Permutation of the cosets induced by `g`: `xH ↦ gxH`.
    pub fn act(&self, g: &Permutation) -> Result<Permutation> {
        if !self.group.contains(g) {
            return Err(Error::NotSubgroup);
        }
        let images: Vec<u32> =
            self.representatives.iter().map(|r| self.coset_of[self.group.index[&g.compose(r)]] as u32).collect();
        Ok(Permutation::from_zero_based(images))
    }

    /// Images of the group's generators.
    pub fn generator_images(&self) -> Vec<Permutation> {
        self.group.generators.iter().map(|g| self.act(g).expect("generator")).collect()
    }

    /// Image group of the action.
    pub fn image(&self) -> PermGroup {
        PermGroup::generate(self.index(), &self.generator_images()).expect("image of a finite group")
    }

    /// Elements acting trivially on the cosets.
    pub fn kernel(&self) -> PermGroup {
        let elems: Vec<Permutation> = self
            .group
            .elements
            .iter()
            .filter(|g| self.act(g).map(|p| p.is_identity()).unwrap_or(false))
            .cloned()
            .collect();
        PermGroup::from_element_set(self.group.degree, &elems)
    }
}

/// `subgroup_relations` report.
#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub struct SubgroupRelations {
    pub h_leq_g: bool,
    pub k_normal_in_g: bool,
    pub product_is_g: bool,
}

impl SubgroupRelations {
    pub fn all(&self) -> bool {
        self.h_leq_g && self.k_normal_in_g && self.product_is_g
    }
}

pub fn subgroup_relations(g: &PermGroup, h: &PermGroup, k: &PermGroup) -> Result<SubgroupRelations> {
    if g.degree() != h.degree() || g.degree() != k.degree() {
        return Err(Error::DegreeMismatch(g.degree(), h.degree().max(k.degree())));
    }
    Ok(SubgroupRelations {
        h_leq_g: h.is_subgroup_of(g),
        k_normal_in_g: k.is_normal_in(g),
        product_is_g: g.is_product(h, k),
    })
}

/// Some permutation `π` with `π a π⁻¹ = b` for each pair, found by
/// propagation and backtracking over images of orbit representatives.
pub fn find_conjugator(pairs: &[(Permutation, Permutation)], n: usize) -> Option<Permutation> {
    let mut map: Vec<Option<u32>> = vec![None; n];
    let mut used = vec![false; n];
    fn assign(
        pairs: &[(Permutation, Permutation)],
        map: &mut [Option<u32>],
        used: &mut [bool],
        x: usize,
        y: usize,
        trail: &mut Vec<usize>,
    ) -> bool {
        let mut stack = vec![(x, y)];
        while let Some((x, y)) = stack.pop() {
            match map[x] {
                Some(z) if z as usize == y => continue,
                Some(_) => return false,
                None => {
                    if used[y] {
                        return false;
                    }
                    map[x] = Some(y as u32);
                    used[y] = true;
                    trail.push(x);
                    for (a, b) in pairs {
                        stack.push((a.apply0(x), b.apply0(y)));
                    }
                }
            }
        }
        true
    }
    fn search(
        pairs: &[(Permutation, Permutation)],
        map: &mut Vec<Option<u32>>,
        used: &mut Vec<bool>,
        n: usize,
    ) -> bool {
        let Some(x) = map.iter().position(|m| m.is_none()) else {
            return true;
        };
        for y in 0..n {
            if used[y] {
                continue;
            }
            let mut trail = Vec::new();
            if assign(pairs, map, used, x, y, &mut trail) && search(pairs, map, used, n) {
                return true;
            }
            for t in trail {
                used[map[t].unwrap() as usize] = false;
                map[t] = None;
            }
        }
        false
    }
    if pairs.iter().any(|(a, b)| a.degree() != n || b.degree() != n) {
        return None;
    }
    let mut all: Vec<(Permutation, Permutation)> = pairs.to_vec();
    all.extend(pairs.iter().map(|(a, b)| (a.inverse(), b.inverse())));
    if search(&all, &mut map, &mut used, n) {
        Some(Permutation::from_zero_based(map.into_iter().map(|m| m.unwrap()).collect()))
    } else {
        None
    }
}
