//! JSON file formats for complexes, cocycles, coverings, actions, charts and
//! branchfold instances.

use serde::{Deserialize, Serialize};

use crate::action::SimplicialAction;
use crate::chart::{Chart, CodimTwoModel};
use crate::covering::{cut_cocycle, CoveringMap, MonodromyCocycle, VertexMap};
use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::pi1::{BranchfoldInstance, SingularComponent};
use crate::simplicial::{Complex, Simplex, Vertex};

/// A complex is stored through its maximal simplices.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComplexFile {
    pub simplices: Vec<Simplex>,
}

impl ComplexFile {
    pub fn from_complex(c: &Complex) -> Self {
        ComplexFile { simplices: c.top_simplices().into_iter().cloned().collect() }
    }

    pub fn to_complex(&self) -> Result<Complex> {
        Complex::from_top(&self.simplices)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TransitionFile {
    pub from: Simplex,
    pub to: Simplex,
    pub perm: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CutFile {
    /// Vertex path along which sheets are permuted.
    pub path: Vec<Vertex>,
    pub perm: String,
}

/// Monodromy data: explicit dual-edge transitions, or cuts along vertex paths.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonodromyFile {
    pub base: ComplexFile,
    pub sheets: usize,
    #[serde(default)]
    pub branch: Vec<Simplex>,
    #[serde(default)]
    pub transitions: Vec<TransitionFile>,
    #[serde(default)]
    pub cuts: Vec<CutFile>,
}

impl MonodromyFile {
    pub fn from_cocycle(mc: &MonodromyCocycle) -> Self {
        MonodromyFile {
            base: ComplexFile::from_complex(&mc.base),
            sheets: mc.sheets,
            branch: mc.branch.top_simplices().into_iter().cloned().collect(),
            transitions: mc
                .transitions()
                .into_iter()
                .map(|(a, b, p)| TransitionFile { from: a.clone(), to: b.clone(), perm: p.to_string() })
                .collect(),
            cuts: Vec::new(),
        }
    }

    pub fn to_cocycle(&self) -> Result<MonodromyCocycle> {
        let base = self.base.to_complex()?;
        let parse = |s: &str| Permutation::parse(s, self.sheets);
        if !self.cuts.is_empty() {
            if !self.transitions.is_empty() {
                return Err(Error::Input("give either transitions or cuts, not both".into()));
            }
            let cuts = self.cuts.iter().map(|c| Ok((c.path.clone(), parse(&c.perm)?))).collect::<Result<Vec<_>>>()?;
            return cut_cocycle(&base, self.sheets, &cuts);
        }
        let branch = base.subcomplex(&self.branch)?;
        let mut mc = MonodromyCocycle::new(base, branch, self.sheets)?;
        for t in &self.transitions {
            mc.set_transition(&t.from, &t.to, parse(&t.perm)?)?;
        }
        Ok(mc)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringFile {
    pub total: ComplexFile,
    pub base: ComplexFile,
    /// `[vertex, image]` pairs.
    pub map: Vec<[Vertex; 2]>,
}

impl CoveringFile {
    pub fn from_covering(f: &CoveringMap) -> Self {
        CoveringFile {
            total: ComplexFile::from_complex(&f.total),
            base: ComplexFile::from_complex(&f.base),
            map: f.vertex_map.iter().map(|(&v, &w)| [v, w]).collect(),
        }
    }

    pub fn to_covering(&self) -> Result<CoveringMap> {
        let map: VertexMap = self.map.iter().map(|p| (p[0], p[1])).collect();
        CoveringMap::new(self.total.to_complex()?, self.base.to_complex()?, map)
    }
}

/// A group generator: `{"name": "σ", "vertex_perm": "(1 2)(3 4)"}` or a bare cycle string.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GeneratorEntry {
    Named { name: String, vertex_perm: String },
    Plain(String),
}

impl GeneratorEntry {
    pub fn perm_text(&self) -> &str {
        match self {
            GeneratorEntry::Named { vertex_perm, .. } => vertex_perm,
            GeneratorEntry::Plain(p) => p,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ActionFile {
    pub complex: ComplexFile,
    pub generators: Vec<GeneratorEntry>,
}

fn parse_perms(gens: &[String], n: usize) -> Result<Vec<Permutation>> {
    gens.iter().map(|g| Permutation::parse(g, n)).collect()
}

impl ActionFile {
    pub fn from_action(a: &SimplicialAction) -> Self {
        ActionFile {
            complex: ComplexFile::from_complex(&a.complex),
            generators: a
                .group
                .generators()
                .iter()
                .enumerate()
                .map(|(i, g)| GeneratorEntry::Named { name: format!("g{}", i + 1), vertex_perm: g.to_string() })
                .collect(),
        }
    }

    pub fn to_action(&self) -> Result<SimplicialAction> {
        let c = self.complex.to_complex()?;
        let n = c.max_vertex() as usize;
        let gens = self.generators.iter().map(|g| Permutation::parse(g.perm_text(), n)).collect::<Result<Vec<_>>>()?;
        SimplicialAction::new(c, &gens)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChartFile {
    pub complex: ComplexFile,
    #[serde(rename = "G", default)]
    pub g: Vec<String>,
    #[serde(rename = "H")]
    pub h: Vec<String>,
    #[serde(rename = "K")]
    pub k: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub apex: Option<Vertex>,
}

impl ChartFile {
    pub fn from_chart(c: &Chart) -> Self {
        let gens = |g: &crate::perm::PermGroup| g.generators().iter().map(|x| x.to_string()).collect();
        ChartFile {
            complex: ComplexFile::from_complex(&c.p),
            g: gens(&c.g),
            h: gens(&c.h),
            k: gens(&c.k),
            apex: c.apex,
        }
    }

    pub fn to_chart(&self) -> Result<Chart> {
        let p = self.complex.to_complex()?;
        let n = p.max_vertex() as usize;
        Chart::new(p, &parse_perms(&self.g, n)?, &parse_perms(&self.h, n)?, &parse_perms(&self.k, n)?, self.apex)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentFile {
    pub simplices: Vec<Simplex>,
    pub h: u64,
    pub k: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InstanceFile {
    pub complex: ComplexFile,
    #[serde(default)]
    pub components: Vec<ComponentFile>,
}

impl InstanceFile {
    pub fn to_instance(&self) -> Result<BranchfoldInstance> {
        Ok(BranchfoldInstance {
            complex: self.complex.to_complex()?,
            components: self
                .components
                .iter()
                .map(|c| Ok(SingularComponent { simplices: c.simplices.clone(), model: CodimTwoModel::new(c.h, c.k)? }))
                .collect::<Result<_>>()?,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnglesFile {
    /// `"p/q tau"` or decimal radians.
    pub angles: Vec<String>,
}

/// Vertex identification, `[from, to]` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentFile {
    pub map: Vec<[Vertex; 2]>,
}

impl IdentFile {
    pub fn to_map(&self) -> VertexMap {
        self.map.iter().map(|p| (p[0], p[1])).collect()
    }
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn read_json<T: for<'de> Deserialize<'de>>(path: &std::path::Path) -> Result<T> {
    let text =
        std::fs::read_to_string(path).map_err(|e| Error::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{fig2_chart, fig3_cocycle, octahedron, pole_cover};

    #[test]
    fn round_trips() {
        let c = octahedron();
        assert_eq!(ComplexFile::from_complex(&c).to_complex().unwrap(), c);
        let f = pole_cover();
        let back = CoveringFile::from_covering(&f).to_covering().unwrap();
        assert_eq!((back.total, back.base, back.vertex_map), (f.total, f.base, f.vertex_map));
        let mc = fig3_cocycle();
        let file = MonodromyFile::from_cocycle(&mc);
        let again = MonodromyFile::from_cocycle(&file.to_cocycle().unwrap());
        assert_eq!(file, again);
        let ch = ChartFile::from_chart(&fig2_chart());
        assert_eq!(ChartFile::from_chart(&ch.to_chart().unwrap()), ch);
    }

    #[test]
    fn action_generators_in_both_forms() {
        let named = r#"{"complex": {"simplices": [[1, 2, 3]]}, "generators": [{"name": "σ", "vertex_perm": "(1 2)"}]}"#;
        let plain = r#"{"complex": {"simplices": [[1, 2, 3]]}, "generators": ["(1 2)"]}"#;
        let a: ActionFile = serde_json::from_str(named).unwrap();
        let b: ActionFile = serde_json::from_str(plain).unwrap();
        assert_eq!(a.to_action().unwrap().group.order(), 2);
        assert_eq!(a.to_action().unwrap().group, b.to_action().unwrap().group);
    }
}
