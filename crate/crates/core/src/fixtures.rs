//! Standard complexes, actions and coverings used by tests and the CLI.

use crate::simplicial::{Complex, Vertex};

/// Octahedron with `1 = +e1, 2 = −e1, 3 = +e2, 4 = −e2, 5 = +e3, 6 = −e3`.
pub fn octahedron() -> Complex {
    let mut top = Vec::new();
    for a in [1, 2] {
        for b in [3, 4] {
            for c in [5, 6] {
                top.push(vec![a, b, c]);
            }
        }
    }
    Complex::from_top(&top).expect("octahedron")
}

/// Minimal six-vertex projective plane.
pub fn projective_plane() -> Complex {
    let top =
        [[1, 2, 3], [1, 3, 4], [1, 4, 5], [1, 5, 6], [1, 6, 2], [2, 3, 5], [3, 4, 6], [4, 5, 2], [5, 6, 3], [6, 2, 4]];
    Complex::from_top(&top.iter().map(|t| t.to_vec()).collect::<Vec<_>>()).expect("projective plane")
}

/// Cycle `1 - 2 - ... - n - 1`.
pub fn polygon(n: Vertex) -> Complex {
    let top: Vec<Vec<Vertex>> = (1..=n).map(|i| vec![i, i % n + 1]).collect();
    Complex::from_top(&top).expect("polygon")
}

/// Cone over an `n`-gon with apex `n + 1`.
pub fn disk(n: Vertex) -> Complex {
    polygon(n).cone(n + 1).expect("fresh apex")
}

use crate::covering::{cut_cocycle, cut_cover, fox_complete, CoveringMap, MonodromyCocycle};
use crate::perm::Permutation;

fn perm(text: &str, n: usize) -> Permutation {
    Permutation::parse(text, n).expect("fixture permutation")
}

/// Degree-2 cover of the octahedron branched at the poles 5 and 6.
pub fn pole_cover() -> CoveringMap {
    cut_cover(&octahedron(), 5, 6, &perm("(1 2)", 2)).expect("pole cover")
}

/// Degree-2 cover of the octahedron branched at 1 and 2.
pub fn ew_pole_cover() -> CoveringMap {
    cut_cover(&octahedron(), 1, 2, &perm("(1 2)", 2)).expect("east-west pole cover")
}

/// Vertex of the first subdivision of the octahedron at the barycenter of `s`.
pub fn octahedron_barycenter(s: &[Vertex]) -> Vertex {
    octahedron().index_of(s).expect("octahedron simplex") as Vertex + 1
}

/// Degree-3 cocycle on the subdivided octahedron with local monodromies (1 2),
/// (2 3) and a 3-cycle at the barycenters of the original vertices 5, 1 and 6.
/// The two cuts meet only at 6.
pub fn fig3_cocycle() -> MonodromyCocycle {
    let b = |s: &[Vertex]| octahedron_barycenter(s);
    let base = octahedron().subdivide_once();
    cut_cocycle(
        &base,
        3,
        &[
            (vec![b(&[5]), b(&[3, 5]), b(&[3]), b(&[3, 6]), b(&[6])], perm("(1 2)", 3)),
            (vec![b(&[1]), b(&[1, 6]), b(&[6])], perm("(2 3)", 3)),
        ],
    )
    .expect("three-sheet cocycle")
}

pub fn fig3_cover() -> CoveringMap {
    fox_complete(&fig3_cocycle()).expect("three-sheet cover")
}

use crate::chart::Chart;
use crate::covering::minimal_regularization;
use crate::perm::PermGroup;
use crate::simplicial::Simplex;
use num_integer::Integer;

/// Rotation of the polygon `1..=n` by `steps`, as a permutation of degree `degree`.
pub fn rotation(n: u32, steps: u32, degree: usize) -> Permutation {
    let images: Vec<u32> = (1..=degree as u32).map(|v| if v <= n { (v - 1 + steps) % n + 1 } else { v }).collect();
    Permutation::from_images(&images).expect("rotation")
}

/// Default polygon size for the `(h, k)` disk chart.
pub fn disk_chart_size(h: u32, k: u32) -> u32 {
    3 * h.lcm(&k)
}

/// Cyclic chart on the cone over an `n`-gon: `H = Z_h`, `K = Z_k` rotating the
/// polygon, `G = HK`, apex `n + 1`. `n` must be a multiple of `lcm(h, k)`.
pub fn disk_chart_on(h: u32, k: u32, n: u32) -> Chart {
    assert!(n % h.lcm(&k) == 0, "polygon size must be a multiple of lcm(h, k)");
    let deg = n as usize + 1;
    let rot = |order: u32| if order == 1 { vec![] } else { vec![rotation(n, n / order, deg)] };
    Chart::new(disk(n), &rot(h.lcm(&k)), &rot(h), &rot(k), Some(n + 1)).expect("disk chart")
}

pub fn disk_chart(h: u32, k: u32) -> Chart {
    disk_chart_on(h, k, disk_chart_size(h, k))
}

/// Cone over the octahedron (apex 7) with `H = ⟨(3 4)(5 6)⟩` and `K = ⟨(1 2)(5 6)⟩`.
pub fn fig2_chart() -> Chart {
    let p = octahedron().cone(7).expect("fresh apex");
    Chart::new(p, &[], &[perm("(3 4)(5 6)", 7)], &[perm("(1 2)(5 6)", 7)], Some(7)).expect("Klein four chart")
}

/// Cone over the minimal regularization of the three-sheet covering: `G = K` is the
/// deck group and `H` the deck transformations over the degree-3 total.
pub fn fig3_chart() -> Chart {
    let reg = minimal_regularization(&fig3_cover()).expect("regularization");
    let apex = reg.r.total.max_vertex() + 1;
    let p = reg.r.total.cone(apex).expect("fresh apex");
    let n = apex as usize;
    let over: Vec<Permutation> = reg
        .deck
        .elements()
        .iter()
        .filter(|d| reg.s.total.vertices().iter().all(|&v| reg.s.apply(d.apply(v)) == reg.s.apply(v)))
        .map(|d| d.extend(n))
        .collect();
    let g: Vec<Permutation> = reg.deck.generators().iter().map(|d| d.extend(n)).collect();
    let h = PermGroup::generate(n, &over).expect("H");
    let g = PermGroup::generate(n, &g).expect("G");
    Chart::from_groups(p, g.clone(), h, g, Some(apex)).expect("symmetric-group chart")
}

/// Three-dimensional `(3, 2)` chart: the cone over the cone over an 18-gon,
/// singular along the edge joining the two apexes 19 and 20.
pub fn product_chart() -> Chart {
    let p = disk(18).cone(20).expect("fresh apex");
    let r = |steps| vec![rotation(18, steps, 20)];
    Chart::new(p, &r(3), &r(6), &r(9), Some(20)).expect("product chart")
}

/// Star of the north pole 5 inside the octahedron.
pub fn pole_star() -> Complex {
    octahedron().star_of(&[5])
}

/// Restriction of the pole cover to the preimage of the star of 5, renumbered densely.
pub fn pole_star_cover() -> CoveringMap {
    let f = pole_cover();
    let star = pole_star();
    let kept: Vec<Simplex> =
        f.total.top_simplices().into_iter().filter(|t| star.contains(&f.image(t))).cloned().collect();
    let total = Complex::from_top(&kept).expect("preimage");
    let old: Vec<Vertex> = total.vertices().to_vec();
    let new_id = |v: Vertex| old.binary_search(&v).expect("vertex") as Vertex + 1;
    let map = old.iter().map(|&v| (new_id(v), f.apply(v))).collect();
    CoveringMap::new(total.relabel(new_id), star, map).expect("restricted pole cover")
}

/// Identification of the star of 5 with `U` of a cyclic chart on the cone over a
/// `4m`-gon with `H` of order `m`: the link 1, 3, 2, 4 goes to 1, 2, 3, 4.
pub fn pole_star_ident(apex_u: Vertex) -> crate::covering::VertexMap {
    [(1, 1), (3, 2), (2, 3), (4, 4), (5, apex_u)].into_iter().collect()
}

/// Random cocycle of degree at most 4 on the octahedron, branched inside {5, 6}:
/// two cuts from 5 to 6 (through 1 and through 3) carry random permutations, and
/// the result is regauged by a random permutation on every top simplex.
pub fn random_octahedron_cocycle<R: rand::Rng>(rng: &mut R) -> MonodromyCocycle {
    use rand::seq::SliceRandom;
    let d: usize = rng.gen_range(1..=4);
    let random_perm = |rng: &mut R| {
        let mut images: Vec<u32> = (1..=d as u32).collect();
        images.shuffle(rng);
        Permutation::from_images(&images).expect("shuffle")
    };
    let base = octahedron();
    let cuts = vec![(vec![5, 1, 6], random_perm(rng)), (vec![5, 3, 6], random_perm(rng))];
    let mc = cut_cocycle(&base, d, &cuts).expect("random cuts");
    let gauge = base.top_simplices().into_iter().map(|t| (t.clone(), random_perm(rng))).collect();
    mc.regauge(&gauge).expect("regauge")
}
