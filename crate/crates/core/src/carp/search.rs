use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};

use crate::carp::{CarpError, FreeTimeWindowGraph, PathEntry, Time, TimeWindowPath, FOREVER};
use crate::graph::{Roadmap, VertexId, UNREACHABLE_HOPS};
use crate::scalar::Scalar;

struct Node {
    vertex: VertexId,
    arrival: Time,
    parent: Option<usize>,
}

/// Earliest-arrival A* over (vertex, free window) states.
///
/// `heuristic[v]` must be a lower bound on the number of steps from `v` to
/// `goal`; hop distances from the goal are used by the planner.
pub fn plan_single_with<S: Scalar>(
    start: VertexId,
    goal: VertexId,
    windows: &FreeTimeWindowGraph,
    map: &Roadmap<S>,
    start_time: Time,
    heuristic: &[u32],
) -> Result<TimeWindowPath, CarpError> {
    for v in [start, goal] {
        if !map.contains(v) {
            return Err(CarpError::UnknownVertex(v));
        }
    }
    let start_window = windows
        .window_containing(start, start_time)
        .ok_or(CarpError::StartNotFree {
            vertex: start,
            time: start_time,
        })?;
    if heuristic[start] == UNREACHABLE_HOPS {
        return Err(CarpError::NoPath);
    }

    let mut nodes = vec![Node {
        vertex: start,
        arrival: start_time,
        parent: None,
    }];
    let mut best: HashMap<(VertexId, usize), Time> = HashMap::new();
    best.insert((start, start_window), start_time);
    // (f, vertex, window, node index); ties resolve to the smaller vertex id
    let mut open = BinaryHeap::new();
    open.push(Reverse((
        start_time + Time::from(heuristic[start]),
        start,
        start_window,
        0usize,
    )));

    while let Some(Reverse((_, vertex, window_idx, node_idx))) = open.pop() {
        let arrival = nodes[node_idx].arrival;
        if best.get(&(vertex, window_idx)).is_some_and(|&b| b < arrival) {
            continue;
        }
        let window = windows.windows(vertex)[window_idx];
        if vertex == goal && window.end == FOREVER {
            return Ok(reconstruct(&nodes, node_idx));
        }
        // last time step the agent can still be at `vertex`
        let latest_departure = window.end - 1;
        for &next in map.neighbors(vertex) {
            let h = heuristic[next];
            if h == UNREACHABLE_HOPS {
                continue;
            }
            for (next_idx, next_window) in windows.windows(next).iter().enumerate() {
                if next_window.end <= arrival + 1 {
                    continue;
                }
                if next_window.start > window.end {
                    break;
                }
                let earliest = arrival.max(next_window.start.saturating_sub(1));
                let latest = latest_departure.min(next_window.end - 2);
                let mut departure = earliest;
                while departure <= latest && windows.head_on_blocked(vertex, next, departure) {
                    departure += 1;
                }
                if departure > latest {
                    continue;
                }
                let next_arrival = departure + 1;
                let key = (next, next_idx);
                if best.get(&key).is_some_and(|&b| b <= next_arrival) {
                    continue;
                }
                best.insert(key, next_arrival);
                nodes.push(Node {
                    vertex: next,
                    arrival: next_arrival,
                    parent: Some(node_idx),
                });
                open.push(Reverse((
                    next_arrival + Time::from(h),
                    next,
                    next_idx,
                    nodes.len() - 1,
                )));
            }
        }
    }
    Err(CarpError::NoPath)
}

fn reconstruct(nodes: &[Node], last: usize) -> TimeWindowPath {
    let mut chain = vec![last];
    while let Some(parent) = nodes[*chain.last().unwrap()].parent {
        chain.push(parent);
    }
    chain.reverse();
    let entries = chain
        .iter()
        .enumerate()
        .map(|(i, &idx)| PathEntry {
            vertex: nodes[idx].vertex,
            entry: nodes[idx].arrival,
            exit: chain.get(i + 1).map_or(FOREVER, |&n| nodes[n].arrival),
        })
        .collect();
    TimeWindowPath::new(entries)
}
