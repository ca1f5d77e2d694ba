//! Brute-force reference implementations shared by the integration suites.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use mrplan::carp::{Time, TimeWindowPath, FOREVER};
use mrplan::graph::{Assignment, Point, Roadmap, VertexId};
use mrplan::mapgen::{self, Connectivity, GridSpec};
use rand::Rng;

/// Every joint move of `from`: each agent stays or steps to a neighbour, no
/// two agents share a vertex and no pair swaps along an edge.
pub fn joint_moves(from: &[VertexId], map: &Roadmap<f64>) -> Vec<Vec<VertexId>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(from.len());
    fn rec(
        i: usize,
        from: &[VertexId],
        map: &Roadmap<f64>,
        current: &mut Vec<VertexId>,
        out: &mut Vec<Vec<VertexId>>,
    ) {
        if i == from.len() {
            out.push(current.clone());
            return;
        }
        let options = std::iter::once(from[i]).chain(map.neighbors(from[i]).iter().copied());
        for v in options {
            let clash = (0..i).any(|j| current[j] == v || (current[j] == from[i] && from[j] == v));
            if clash {
                continue;
            }
            current.push(v);
            rec(i + 1, from, map, current, out);
            current.pop();
        }
    }
    rec(0, from, map, &mut current, &mut out);
    out
}

/// Optimal makespan by breadth-first search over composite configurations.
pub fn composite_bfs(map: &Roadmap<f64>, assignment: &Assignment) -> Option<usize> {
    let start = assignment.starts().to_vec();
    let goal = assignment.goals().to_vec();
    let mut dist: HashMap<Vec<VertexId>, usize> = HashMap::from([(start.clone(), 0)]);
    let mut queue = VecDeque::from([start]);
    while let Some(c) = queue.pop_front() {
        let d = dist[&c];
        if c == goal {
            return Some(d);
        }
        for next in joint_moves(&c, map) {
            if !dist.contains_key(&next) {
                dist.insert(next.clone(), d + 1);
                queue.push_back(next);
            }
        }
    }
    None
}

/// Earliest arrival of one agent among fixed reserved paths, by breadth-first
/// search over (vertex, time) up to `horizon`. The agent must be able to stay
/// at the goal forever once it arrives.
pub fn time_expanded_arrival(
    map: &Roadmap<f64>,
    reserved: &[TimeWindowPath],
    start: VertexId,
    goal: VertexId,
    start_time: Time,
    horizon: Time,
) -> Option<Time> {
    let occupied = |v: VertexId, t: Time| reserved.iter().any(|p| p.position_at(t) == Some(v));
    let swaps = |u: VertexId, v: VertexId, t: Time| {
        reserved
            .iter()
            .any(|p| p.position_at(t) == Some(v) && p.position_at(t + 1) == Some(u))
    };
    let free_forever = |v: VertexId, t: Time| {
        reserved.iter().all(|p| {
            p.entries()
                .iter()
                .all(|e| e.vertex != v || (e.exit != FOREVER && e.exit <= t))
        })
    };
    if occupied(start, start_time) {
        return None;
    }
    let mut seen = HashSet::from([(start, start_time)]);
    let mut frontier = vec![start];
    for t in start_time..=horizon {
        if frontier.contains(&goal) && free_forever(goal, t) {
            return Some(t);
        }
        let mut next = Vec::new();
        for &u in &frontier {
            let options = std::iter::once(u).chain(map.neighbors(u).iter().copied());
            for v in options {
                if occupied(v, t + 1) || (v != u && swaps(u, v, t)) {
                    continue;
                }
                if seen.insert((v, t + 1)) {
                    next.push(v);
                }
            }
        }
        frontier = next;
    }
    None
}

/// Single-source shortest path lengths by Bellman-Ford relaxation.
pub fn bellman_ford(map: &Roadmap<f64>, source: VertexId) -> Vec<f64> {
    let n = map.vertex_count();
    let mut dist = vec![f64::INFINITY; n];
    dist[source] = 0.0;
    for _ in 0..n {
        let mut changed = false;
        for &(a, b) in map.edges() {
            let w = map.euclidean_distance(a, b).unwrap();
            for (x, y) in [(a, b), (b, a)] {
                if dist[x] + w < dist[y] {
                    dist[y] = dist[x] + w;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    dist
}

/// Connected random map: a random spanning tree of a small grid plus some
/// of the remaining grid edges.
pub fn random_map<R: Rng>(rng: &mut R, max_side: usize) -> Roadmap<f64> {
    let w = rng.gen_range(2..=max_side);
    let h = rng.gen_range(2..=max_side);
    let connectivity = if rng.gen_bool(0.5) {
        Connectivity::Four
    } else {
        Connectivity::Eight
    };
    let full: Roadmap<f64> = mapgen::grid(&GridSpec::new(w.max(h), connectivity));
    // crop to w x h
    let side = w.max(h);
    let keep = |v: VertexId| v % side < w && v / side < h;
    let index = |v: VertexId| (v / side) * w + v % side;
    let points: Vec<Point<f64>> = (0..side * side)
        .filter(|&v| keep(v))
        .map(|v| full.point(v).unwrap())
        .collect();
    let edges: Vec<(VertexId, VertexId)> = full
        .edges()
        .iter()
        .filter(|&&(a, b)| keep(a) && keep(b))
        .map(|&(a, b)| (index(a), index(b)))
        .collect();
    let cropped = Roadmap::new(points, edges).unwrap();
    let tree = mapgen::mst_base(&cropped, rng).unwrap();
    let extra: Vec<_> = cropped
        .edges()
        .iter()
        .filter(|e| !tree.edges().contains(e) && rng.gen_bool(0.3))
        .copied()
        .collect();
    let mut edges = tree.edges().to_vec();
    edges.extend(extra);
    Roadmap::new(tree.points().to_vec(), edges).unwrap()
}

/// Random walk with waits, parked forever at its last vertex.
pub fn random_walk<R: Rng>(rng: &mut R, map: &Roadmap<f64>, start_time: Time, len: usize) -> TimeWindowPath {
    use mrplan::carp::PathEntry;
    let mut v = rng.gen_range(0..map.vertex_count());
    let mut entries: Vec<PathEntry> = Vec::new();
    let mut t = start_time;
    let mut entry = start_time;
    for _ in 0..len {
        let nbrs = map.neighbors(v);
        if rng.gen_bool(0.3) || nbrs.is_empty() {
            t += 1;
            continue;
        }
        let next = nbrs[rng.gen_range(0..nbrs.len())];
        entries.push(PathEntry {
            vertex: v,
            entry,
            exit: t + 1,
        });
        t += 1;
        entry = t;
        v = next;
    }
    entries.push(PathEntry {
        vertex: v,
        entry,
        exit: FOREVER,
    });
    TimeWindowPath::new(entries)
}

/// Calls `f` on every permutation of `v` (Heap's algorithm).
pub fn for_each_permutation(v: &mut [usize], f: &mut impl FnMut(&[usize])) {
    fn heap(n: usize, v: &mut [usize], f: &mut impl FnMut(&[usize])) {
        if n <= 1 {
            f(v);
            return;
        }
        for i in 0..n - 1 {
            heap(n - 1, v, f);
            let j = if n.is_multiple_of(2) { i } else { 0 };
            v.swap(j, n - 1);
        }
        heap(n - 1, v, f);
    }
    let n = v.len();
    heap(n, v, f);
}
