//! Map and assignment generators for the two experiment families:
//! density sweeps over grid maps and adversarial swap instances.

use std::collections::HashSet;

use petgraph::unionfind::UnionFind;
use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::GraphError;
use crate::graph::{Assignment, Point, Roadmap, VertexId};
use crate::scalar::Scalar;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Connectivity {
    Four,
    Eight,
}

impl Connectivity {
    pub fn from_degree(n: u8) -> Option<Self> {
        match n {
            4 => Some(Self::Four),
            8 => Some(Self::Eight),
            _ => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridSpec<S> {
    /// Vertices per side.
    pub side: usize,
    pub connectivity: Connectivity,
    pub spacing: S,
}

impl<S: Scalar> GridSpec<S> {
    pub fn new(side: usize, connectivity: Connectivity) -> Self {
        assert!(side >= 2, "grid side must be at least 2");
        Self {
            side,
            connectivity,
            spacing: S::one(),
        }
    }
}

/// Square grid; vertex `y * side + x` sits at `(x, y) * spacing`.
pub fn grid<S: Scalar>(spec: &GridSpec<S>) -> Roadmap<S> {
    let n = spec.side;
    let id = |x: usize, y: usize| y * n + x;
    let points = (0..n * n)
        .map(|v| {
            Point::new(
                S::of((v % n) as f64) * spec.spacing,
                S::of((v / n) as f64) * spec.spacing,
            )
        })
        .collect();
    let mut edges = Vec::new();
    for y in 0..n {
        for x in 0..n {
            if x + 1 < n {
                edges.push((id(x, y), id(x + 1, y)));
            }
            if y + 1 < n {
                edges.push((id(x, y), id(x, y + 1)));
            }
            if spec.connectivity == Connectivity::Eight && x + 1 < n && y + 1 < n {
                edges.push((id(x, y), id(x + 1, y + 1)));
                edges.push((id(x + 1, y), id(x, y + 1)));
            }
        }
    }
    Roadmap::new(points, edges).expect("grid edges are valid")
}

/// Random spanning tree: Kruskal over a shuffled edge order, every edge
/// weighted equally.
pub fn mst_base<S: Scalar, R: Rng + ?Sized>(
    map: &Roadmap<S>,
    rng: &mut R,
) -> Result<Roadmap<S>, GraphError> {
    let mut edges = map.edges().to_vec();
    edges.shuffle(rng);
    let mut sets = UnionFind::<usize>::new(map.vertex_count());
    let mut tree = Vec::with_capacity(map.vertex_count().saturating_sub(1));
    for (a, b) in edges {
        if sets.union(a, b) {
            tree.push((a, b));
        }
    }
    if tree.len() + 1 != map.vertex_count() && map.vertex_count() > 0 {
        return Err(GraphError::Disconnected);
    }
    Roadmap::new(map.points().to_vec(), tree)
}

/// `1 + step_count` maps from `base` to `full`, each adding an equal share of
/// the remaining edges in random order; the last map receives the remainder
/// and equals `full`.
pub fn density_sweep<S: Scalar, R: Rng + ?Sized>(
    full: &Roadmap<S>,
    base: &Roadmap<S>,
    step_count: usize,
    rng: &mut R,
) -> Vec<Roadmap<S>> {
    assert!(step_count >= 1, "step_count must be positive");
    let present: HashSet<_> = base.edges().iter().copied().collect();
    let mut unused: Vec<_> = full
        .edges()
        .iter()
        .copied()
        .filter(|e| !present.contains(e))
        .collect();
    unused.shuffle(rng);
    let per_step = unused.len() / step_count;
    let mut current: Vec<_> = base.edges().to_vec();
    let mut maps = vec![base.clone()];
    let mut taken = 0;
    for step in 0..step_count {
        let upto = if step + 1 == step_count {
            unused.len()
        } else {
            taken + per_step
        };
        current.extend_from_slice(&unused[taken..upto]);
        taken = upto;
        maps.push(Roadmap::new(full.points().to_vec(), current.iter().copied()).expect("subset of full"));
    }
    maps
}

/// `k` distinct uniform starts and, independently, `k` distinct uniform goals.
pub fn random_assignment<S: Scalar, R: Rng + ?Sized>(
    map: &Roadmap<S>,
    k: usize,
    rng: &mut R,
) -> Result<Assignment, GraphError> {
    let n = map.vertex_count();
    if k > n {
        return Err(GraphError::TooManyAgents {
            agents: k,
            vertices: n,
        });
    }
    let starts = index::sample(rng, n, k).into_vec();
    let goals = index::sample(rng, n, k).into_vec();
    Assignment::new(starts, goals)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AdversarialSpec {
    /// Even number of agents, at least 2.
    pub agents: usize,
    pub seed: u64,
}

struct Builder {
    points: Vec<(i64, i64)>,
    occupied: HashSet<(i64, i64)>,
    edges: Vec<(VertexId, VertexId)>,
    starts: Vec<VertexId>,
    goals: Vec<VertexId>,
}

const DIRECTIONS: [(i64, i64); 8] = [
    (1, 0),
    (0, 1),
    (-1, 0),
    (0, -1),
    (1, 1),
    (-1, 1),
    (-1, -1),
    (1, -1),
];

impl Builder {
    fn vertex(&mut self, at: (i64, i64)) -> VertexId {
        self.occupied.insert(at);
        self.points.push(at);
        self.points.len() - 1
    }

    /// Free lattice point near `anchor`, preferring `dir`.
    fn free_spot_near(&self, anchor: (i64, i64), dir: (i64, i64)) -> (i64, i64) {
        let mut radius = 1;
        loop {
            let preferred = (anchor.0 + dir.0 * radius, anchor.1 + dir.1 * radius);
            if !self.occupied.contains(&preferred) {
                return preferred;
            }
            for d in DIRECTIONS {
                let p = (anchor.0 + d.0 * radius, anchor.1 + d.1 * radius);
                if !self.occupied.contains(&p) {
                    return p;
                }
            }
            radius += 1;
        }
    }

    fn attach(&mut self, parent: VertexId, dir: (i64, i64)) -> VertexId {
        let at = self.free_spot_near(self.points[parent], dir);
        let v = self.vertex(at);
        self.edges.push((parent, v));
        v
    }

    fn swap_pair(&mut self, a: VertexId, b: VertexId) {
        self.starts.extend([a, b]);
        self.goals.extend([b, a]);
    }

    fn degree(&self, v: VertexId) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Path `u - c - w` with spur `b` on `c`; agents swap `u <-> w`.
    /// Returns the spur.
    fn gadget(&mut self, origin: (i64, i64)) -> VertexId {
        let c = self.vertex(origin);
        let u = self.attach(c, (-1, 0));
        let w = self.attach(c, (1, 0));
        let b = self.attach(c, (0, 1));
        self.swap_pair(u, w);
        b
    }
}

/// Generates a tree-shaped map on which prioritized planning fails for every
/// ordering while a coordinated plan exists.
///
/// Starts from the swap gadget and repeatedly picks a random degree-1 vertex,
/// then either hangs two new leaves off it with a swapping pair between them,
/// or connects a fresh gadget to it.
pub fn adversarial<S: Scalar>(spec: &AdversarialSpec) -> (Roadmap<S>, Assignment) {
    assert!(
        spec.agents >= 2 && spec.agents.is_multiple_of(2),
        "adversarial instances need an even number of agents"
    );
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut b = Builder {
        points: Vec::new(),
        occupied: HashSet::new(),
        edges: Vec::new(),
        starts: Vec::new(),
        goals: Vec::new(),
    };
    b.gadget((0, 0));
    while b.starts.len() < spec.agents {
        let leaves: Vec<VertexId> = (0..b.points.len()).filter(|&v| b.degree(v) == 1).collect();
        let leaf = *leaves.choose(&mut rng).expect("trees always have leaves");
        let parent = b
            .edges
            .iter()
            .find_map(|&(x, y)| (x == leaf).then_some(y).or((y == leaf).then_some(x)))
            .expect("leaf has one edge");
        let outward = {
            let (lx, ly) = b.points[leaf];
            let (px, py) = b.points[parent];
            ((lx - px).signum(), (ly - py).signum())
        };
        if rng.gen_bool(0.5) {
            let side = (-outward.1, outward.0);
            let first = b.attach(leaf, side);
            let second = b.attach(leaf, (-side.0, -side.1));
            b.swap_pair(first, second);
        } else {
            let anchor = b.points[leaf];
            let spot = b.free_spot_near(anchor, outward);
            let centre = (spot.0 + outward.0 * 2, spot.1 + outward.1 * 2);
            let origin = if b.occupied.contains(&centre) {
                b.free_spot_near(centre, outward)
            } else {
                centre
            };
            let spur = b.gadget(origin);
            b.edges.push((leaf, spur));
        }
    }
    let points = b
        .points
        .iter()
        .map(|&(x, y)| Point::new(S::of(x as f64), S::of(y as f64)))
        .collect();
    let map = Roadmap::new(points, b.edges).expect("generated tree is simple");
    let assignment = Assignment::new(b.starts, b.goals).expect("pairs use fresh vertices");
    (map, assignment)
}
