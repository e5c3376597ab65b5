//! Presentations of `π₁(X − Σ)` with meridian relations for codimension-2
//! singular loci, and their abelianization.

use std::collections::HashMap;
use std::fmt;

use serde::Serialize;

use crate::chart::CodimTwoModel;
use crate::covering::DualGraph;
use crate::error::{Error, Result};
use crate::simplicial::{is_subset, Complex, Simplex};

/// Generator `i` is `i + 1`, its inverse `-(i + 1)`.
pub type Word = Vec<i32>;

#[derive(Clone, Debug)]
pub struct SingularComponent {
    pub simplices: Vec<Simplex>,
    pub model: CodimTwoModel,
}

/// Triangulated pseudo-manifold with a codimension-2 singular locus labeled by `(h, k)`.
#[derive(Clone, Debug)]
pub struct BranchfoldInstance {
    pub complex: Complex,
    pub components: Vec<SingularComponent>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Presentation {
    pub generators: usize,
    pub relations: Vec<Word>,
}

fn invert(w: &[i32]) -> Word {
    w.iter().rev().map(|x| -x).collect()
}

fn free_reduce(w: &[i32]) -> Word {
    let mut out: Word = Vec::with_capacity(w.len());
    for &x in w {
        if out.last() == Some(&-x) {
            out.pop();
        } else {
            out.push(x);
        }
    }
    out
}

fn cyclic_reduce(w: &[i32]) -> Word {
    let mut w = free_reduce(w);
    while w.len() >= 2 && w[0] == -w[w.len() - 1] {
        w.pop();
        w.remove(0);
    }
    w
}

fn power(w: &[i32], e: u64) -> Word {
    (0..e).flat_map(|_| w.iter().copied()).collect()
}

impl Presentation {
    /// Eliminates generators occurring exactly once in some relation.
    pub fn simplify(&self) -> Presentation {
        let mut gens: Vec<usize> = (1..=self.generators).collect();
        let mut rels: Vec<Word> = self.relations.iter().map(|r| cyclic_reduce(r)).filter(|r| !r.is_empty()).collect();
        loop {
            let mut found = None;
            'search: for (ri, r) in rels.iter().enumerate() {
                let mut count: HashMap<i32, usize> = HashMap::new();
                for &x in r {
                    *count.entry(x.abs()).or_default() += 1;
                }
                if let Some((&g, _)) = count.iter().filter(|&(_, &c)| c == 1).min_by_key(|&(g, _)| *g) {
                    found = Some((ri, g));
                    break 'search;
                }
            }
            let Some((ri, g)) = found else { break };
            let r = rels.remove(ri);
            let pos = r.iter().position(|x| x.abs() == g).unwrap();
            // r = a x^s b = 1, so x^s = a^-1 b^-1, rotate: x^s = (b a)^-1
            let mut ba: Word = r[pos + 1..].to_vec();
            ba.extend_from_slice(&r[..pos]);
            let value = if r[pos] > 0 { invert(&ba) } else { ba };
            let value_inv = invert(&value);
            rels = rels
                .iter()
                .map(|w| {
                    let mut out = Vec::new();
                    for &x in w {
                        if x == g {
                            out.extend_from_slice(&value);
                        } else if x == -g {
                            out.extend_from_slice(&value_inv);
                        } else {
                            out.push(x);
                        }
                    }
                    cyclic_reduce(&out)
                })
                .filter(|w| !w.is_empty())
                .collect();
            gens.retain(|&x| x as i32 != g);
        }
        // renumber surviving generators densely
        let index: HashMap<i32, i32> = gens.iter().enumerate().map(|(i, &g)| (g as i32, i as i32 + 1)).collect();
        let mut relations: Vec<Word> =
            rels.iter().map(|w| w.iter().map(|&x| x.signum() * index[&x.abs()]).collect()).collect();
        relations.sort();
        relations.dedup();
        Presentation { generators: gens.len(), relations }
    }

    /// Abelian invariants: torsion coefficients `> 1` followed by `0` per free factor.
    pub fn abelian_invariants(&self) -> Vec<u64> {
        let n = self.generators;
        let rows: Vec<Vec<i64>> = self
            .relations
            .iter()
            .map(|w| {
                let mut row = vec![0i64; n];
                for &x in w {
                    row[x.unsigned_abs() as usize - 1] += x.signum() as i64;
                }
                row
            })
            .collect();
        let diag = smith_diagonal(rows, n);
        let mut out: Vec<u64> = diag.iter().filter(|&&d| d > 1).map(|&d| d as u64).collect();
        let rank = diag.iter().filter(|&&d| d != 0).count();
        out.extend(std::iter::repeat_n(0, n - rank));
        out
    }
}

/// Nonzero diagonal entries (absolute values) of the Smith normal form.
pub fn smith_diagonal(mut m: Vec<Vec<i64>>, cols: usize) -> Vec<i64> {
    let rows = m.len();
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // pivot: least nonzero absolute value in the remaining block
        let pivot = (t..rows)
            .flat_map(|i| (t..cols).map(move |j| (i, j)))
            .filter(|&(i, j)| m[i][j] != 0)
            .min_by_key(|&(i, j)| m[i][j].abs());
        let Some((pi, pj)) = pivot else { break };
        m.swap(t, pi);
        for row in m.iter_mut() {
            row.swap(t, pj);
        }
        loop {
            let mut clean = true;
            for i in t + 1..rows {
                let q = m[i][t] / m[t][t];
                if q != 0 {
                    for j in t..cols {
                        m[i][j] -= q * m[t][j];
                    }
                }
                if m[i][t] != 0 {
                    clean = false;
                }
            }
            for j in t + 1..cols {
                let q = m[t][j] / m[t][t];
                if q != 0 {
                    for row in m.iter_mut() {
                        row[j] -= q * row[t];
                    }
                }
                if m[t][j] != 0 {
                    clean = false;
                }
            }
            if clean {
                // divisibility: fold a non-multiple into the pivot row
                let bad = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| m[i][j] % m[t][t] != 0);
                match bad {
                    Some((i, _)) => {
                        for j in t..cols {
                            m[t][j] += m[i][j];
                        }
                    }
                    None => break,
                }
            } else {
                let best = (t..rows)
                    .flat_map(|i| (t..cols).map(move |j| (i, j)))
                    .filter(|&(i, j)| (i == t || j == t) && m[i][j] != 0)
                    .min_by_key(|&(i, j)| m[i][j].abs())
                    .unwrap();
                m.swap(t, best.0);
                for row in m.iter_mut() {
                    row.swap(t, best.1);
                }
            }
        }
        diag.push(m[t][t].abs());
        t += 1;
    }
    diag
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = (1..=self.generators).map(|i| format!("x{i}")).collect();
        let word = |w: &Word| {
            if w.is_empty() {
                return "1".to_string();
            }
            w.iter().map(|&x| if x > 0 { format!("x{x}") } else { format!("x{}^-1", -x) }).collect::<Vec<_>>().join(" ")
        };
        let rels: Vec<String> = self.relations.iter().map(word).collect();
        write!(f, "< {} | {} >", gens.join(", "), rels.join(", "))
    }
}

pub fn format_abelian(invariants: &[u64]) -> String {
    if invariants.is_empty() {
        return "1".into();
    }
    invariants.iter().map(|&d| if d == 0 { "Z".to_string() } else { format!("Z{d}") }).collect::<Vec<_>>().join(" + ")
}

#[derive(Clone, Debug, Serialize)]
pub struct Pi1Result {
    pub presentation: Presentation,
    pub simplified: Presentation,
    pub abelian_invariants: Vec<u64>,
    pub abelianization: String,
}

/// Dual-graph word of the loop around an interior codimension-2 simplex.
fn loop_around(c: &Complex, dual: &DualGraph, gen_of: &HashMap<(usize, usize), i32>, tau: &[u32]) -> Option<Word> {
    let tops: Vec<usize> = c.top_cofaces(tau).iter().map(|t| dual.index[*t]).collect();
    if tops.is_empty() {
        return None;
    }
    let adjacent = |a: usize, b: usize| {
        let (ta, tb) = (&dual.tops[a], &dual.tops[b]);
        ta.iter().filter(|v| tb.binary_search(v).is_ok()).count() == ta.len() - 1
    };
    let mut cycle = vec![tops[0]];
    let mut prev = usize::MAX;
    loop {
        let cur = *cycle.last().unwrap();
        let next: Vec<usize> = tops.iter().copied().filter(|&t| t != cur && t != prev && adjacent(cur, t)).collect();
        let Some(&nx) = next.first() else { return None };
        if nx == cycle[0] {
            break;
        }
        if cycle.contains(&nx) {
            return None;
        }
        prev = cur;
        cycle.push(nx);
    }
    if cycle.len() != tops.len() {
        return None;
    }
    let mut word = Word::new();
    for i in 0..cycle.len() {
        let (a, b) = (cycle[i], cycle[(i + 1) % cycle.len()]);
        if let Some(&g) = gen_of.get(&(a.min(b), a.max(b))) {
            word.push(if a < b { g } else { -g });
        }
    }
    Some(word)
}

/// `π₁(X − Σ)` from dual edges, with `μ_C^{h_C}` added for each component.
pub fn branchfold_pi1(inst: &BranchfoldInstance) -> Result<Pi1Result> {
    let c = &inst.complex;
    let m = c.dim();
    let mut sigma: Vec<Simplex> = Vec::new();
    for comp in &inst.components {
        for s in &comp.simplices {
            if !c.contains(s) {
                return Err(Error::MisalignedSubcomplex(s.clone()));
            }
        }
        let sub = Complex::closure(comp.simplices.iter())?;
        if sub.is_empty() || sub.dim() != m - 2 || sub.top_simplices().iter().any(|t| t.len() as isize != m - 1) {
            return Err(Error::SingularLocusNotCodimTwo(format!("component through {:?}", comp.simplices.first())));
        }
        sigma.extend(sub.simplices().iter().cloned());
    }
    let dual = DualGraph::new(c);
    let tree = dual.spanning_tree();
    let mut gen_of: HashMap<(usize, usize), i32> = HashMap::new();
    for (e, (a, b, _)) in dual.edges.iter().enumerate() {
        if !tree.is_tree[e] {
            let next = gen_of.len() as i32 + 1;
            gen_of.insert((*a, *b), next);
        }
    }
    let in_sigma = |s: &Simplex| sigma.iter().any(|t| t == s);
    let mut relations = Vec::new();
    for tau in c.simplices_of_dim(m - 2) {
        if in_sigma(tau) {
            continue;
        }
        if let Some(w) = loop_around(c, &dual, &gen_of, tau) {
            relations.push(w);
        }
    }
    for comp in &inst.components {
        let tau = comp
            .simplices
            .iter()
            .find(|s| s.len() as isize == m - 1)
            .ok_or_else(|| Error::SingularLocusNotCodimTwo("component without a top simplex".into()))?;
        let mu = loop_around(c, &dual, &gen_of, tau)
            .ok_or_else(|| Error::SingularLocusNotCodimTwo(format!("{tau:?} has no circular link")))?;
        relations.push(power(&mu, comp.model.h));
    }
    let presentation = Presentation { generators: gen_of.len(), relations };
    let simplified = presentation.simplify();
    let abelian_invariants = simplified.abelian_invariants();
    Ok(Pi1Result { abelianization: format_abelian(&abelian_invariants), presentation, simplified, abelian_invariants })
}

/// Components of a codimension-2 locus given by its top simplices.
pub fn split_components(sigma: &[Simplex]) -> Vec<Vec<Simplex>> {
    let sub = match Complex::closure(sigma.iter()) {
        Ok(s) => s,
        Err(_) => return Vec::new(),
    };
    sub.components()
        .iter()
        .map(|comp| sigma.iter().filter(|s| is_subset(s, comp.vertices()) && comp.contains(s)).cloned().collect())
        .collect()
}
