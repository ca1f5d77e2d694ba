use std::collections::HashMap;

use crate::graph::{composite_length, validate_move, Configuration, Roadmap, VertexId};
use crate::scalar::Scalar;

pub type NodeId = usize;

#[derive(Debug, Clone)]
pub struct TreeNode<S> {
    pub config: Configuration,
    pub parent: Option<NodeId>,
    /// Configurations after the parent up to and including `config`.
    pub segment: Vec<Configuration>,
    pub segment_length: S,
    /// Cost-from-root: summed composite distance along the tree path.
    pub cost: S,
    pub children: Vec<NodeId>,
}

/// Tree over composite configurations. Node 0 is the root.
#[derive(Debug, Clone)]
pub struct SearchTree<S> {
    nodes: Vec<TreeNode<S>>,
    index: HashMap<Configuration, NodeId>,
}

fn segment_length<S: Scalar>(
    start: &Configuration,
    segment: &[Configuration],
    map: &Roadmap<S>,
) -> S {
    let mut prev = start;
    let mut total = S::zero();
    for c in segment {
        total = total + composite_length(prev, c, map);
        prev = c;
    }
    total
}

impl<S: Scalar> SearchTree<S> {
    pub fn new(root: Configuration) -> Self {
        let mut index = HashMap::new();
        index.insert(root.clone(), 0);
        Self {
            nodes: vec![TreeNode {
                config: root,
                parent: None,
                segment: Vec::new(),
                segment_length: S::zero(),
                cost: S::zero(),
                children: Vec::new(),
            }],
            index,
        }
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn root(&self) -> &TreeNode<S> {
        &self.nodes[0]
    }

    pub fn node(&self, id: NodeId) -> &TreeNode<S> {
        &self.nodes[id]
    }

    pub fn nodes(&self) -> &[TreeNode<S>] {
        &self.nodes
    }

    pub fn cost(&self, id: NodeId) -> S {
        self.nodes[id].cost
    }

    pub fn find(&self, config: &Configuration) -> Option<NodeId> {
        self.index.get(config).copied()
    }

    /// Adds the last configuration of `segment` as a child of `parent`.
    /// Returns `None` if that configuration is already in the tree.
    pub fn add(
        &mut self,
        parent: NodeId,
        segment: Vec<Configuration>,
        map: &Roadmap<S>,
    ) -> Option<NodeId> {
        let config = segment.last()?.clone();
        if self.index.contains_key(&config) {
            return None;
        }
        let length = segment_length(&self.nodes[parent].config, &segment, map);
        let id = self.nodes.len();
        self.nodes.push(TreeNode {
            config: config.clone(),
            parent: Some(parent),
            segment,
            segment_length: length,
            cost: self.nodes[parent].cost + length,
            children: Vec::new(),
        });
        self.nodes[parent].children.push(id);
        self.index.insert(config, id);
        Some(id)
    }

    /// Ids of the up-to-`count` nodes closest to `point` under composite
    /// distance, nearest first, ties by id. `skip` filters candidates.
    pub fn nearest(
        &self,
        point: &[VertexId],
        count: usize,
        map: &Roadmap<S>,
        mut skip: impl FnMut(NodeId) -> bool,
    ) -> Vec<NodeId> {
        let mut best: Vec<(S, NodeId)> = Vec::with_capacity(count + 1);
        for (id, node) in self.nodes.iter().enumerate() {
            if count == 0 {
                break;
            }
            let d = composite_length(&node.config, point, map);
            if best.len() == count && d >= best[count - 1].0 {
                continue;
            }
            if skip(id) {
                continue;
            }
            let pos = best.partition_point(|&(bd, _)| bd <= d);
            best.insert(pos, (d, id));
            best.truncate(count);
        }
        best.into_iter().map(|(_, id)| id).collect()
    }

    /// `true` for `id` and every node on its path to the root.
    pub fn ancestor_mask(&self, id: NodeId) -> Vec<bool> {
        let mut mask = vec![false; self.nodes.len()];
        let mut cur = Some(id);
        while let Some(n) = cur {
            mask[n] = true;
            cur = self.nodes[n].parent;
        }
        mask
    }

    /// Moves `node` under `new_parent` reached via `segment`, and refreshes
    /// the costs of its whole subtree. `new_parent` must not be a descendant
    /// of `node`.
    pub fn reparent(
        &mut self,
        node: NodeId,
        new_parent: NodeId,
        segment: Vec<Configuration>,
        map: &Roadmap<S>,
    ) {
        assert_ne!(node, 0, "root cannot be re-parented");
        debug_assert!(!self.ancestor_mask(new_parent)[node], "would create a cycle");
        debug_assert_eq!(segment.last(), Some(&self.nodes[node].config));
        if let Some(old) = self.nodes[node].parent {
            self.nodes[old].children.retain(|&c| c != node);
        }
        let length = segment_length(&self.nodes[new_parent].config, &segment, map);
        self.nodes[new_parent].children.push(node);
        let n = &mut self.nodes[node];
        n.parent = Some(new_parent);
        n.segment = segment;
        n.segment_length = length;
        self.refresh_costs(node);
    }

    fn refresh_costs(&mut self, top: NodeId) {
        let mut stack = vec![top];
        while let Some(id) = stack.pop() {
            let parent = self.nodes[id].parent.expect("non-root");
            self.nodes[id].cost = self.nodes[parent].cost + self.nodes[id].segment_length;
            stack.extend(self.nodes[id].children.iter().copied());
        }
    }

    /// Configurations from the root to `id`, inclusive.
    pub fn path_from_root(&self, id: NodeId) -> Vec<Configuration> {
        let mut chain = vec![id];
        while let Some(p) = self.nodes[*chain.last().unwrap()].parent {
            chain.push(p);
        }
        chain.reverse();
        let mut path = vec![self.nodes[0].config.clone()];
        for &n in &chain[1..] {
            path.extend(self.nodes[n].segment.iter().cloned());
        }
        path
    }

    /// Full structural check: single root, acyclic, child lists consistent,
    /// segments valid and costs matching a recomputation from the root.
    pub fn audit(&self, map: &Roadmap<S>) -> Result<(), String> {
        if self.nodes.is_empty() || self.nodes[0].parent.is_some() {
            return Err("root missing or has a parent".into());
        }
        if self.nodes[0].cost != S::zero() {
            return Err("root cost is not zero".into());
        }
        let mut reached = vec![false; self.nodes.len()];
        let mut expected_cost = vec![S::zero(); self.nodes.len()];
        reached[0] = true;
        let mut stack = vec![0];
        let mut visited = 1;
        while let Some(id) = stack.pop() {
            for &child in &self.nodes[id].children {
                if reached[child] {
                    return Err(format!("node {child} reached twice"));
                }
                let node = &self.nodes[child];
                if node.parent != Some(id) {
                    return Err(format!("node {child} parent link disagrees with child list"));
                }
                let mut prev = &self.nodes[id].config;
                for c in &node.segment {
                    validate_move(prev, c, map)
                        .map_err(|v| format!("segment into node {child}: {v}"))?;
                    prev = c;
                }
                if node.segment.last() != Some(&node.config) {
                    return Err(format!("segment of node {child} does not end at it"));
                }
                let length = segment_length(&self.nodes[id].config, &node.segment, map);
                expected_cost[child] = expected_cost[id] + length;
                let tol = S::tolerance(expected_cost[child]);
                if (node.cost - expected_cost[child]).abs() > tol {
                    return Err(format!(
                        "node {child} cost {} but path length {}",
                        node.cost, expected_cost[child]
                    ));
                }
                reached[child] = true;
                visited += 1;
                stack.push(child);
            }
        }
        if visited != self.nodes.len() {
            return Err(format!(
                "{} nodes unreachable from the root",
                self.nodes.len() - visited
            ));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Point;

    fn line(n: usize) -> Roadmap<f64> {
        Roadmap::new(
            (0..n).map(|i| Point::new(i as f64, 0.0)).collect(),
            (1..n).map(|i| (i - 1, i)),
        )
        .unwrap()
    }

    fn c(v: usize) -> Configuration {
        Configuration::new(vec![v]).unwrap()
    }

    #[test]
    fn add_and_costs() {
        let map = line(5);
        let mut tree = SearchTree::new(c(0));
        let a = tree.add(0, vec![c(1)], &map).unwrap();
        let b = tree.add(a, vec![c(2)], &map).unwrap();
        assert_eq!(tree.cost(b), 2.0);
        assert!(tree.add(0, vec![c(1)], &map).is_none());
        assert_eq!(tree.path_from_root(b), vec![c(0), c(1), c(2)]);
        tree.audit(&map).unwrap();
    }

    #[test]
    fn reparent_updates_subtree() {
        let map = line(6);
        let mut tree = SearchTree::new(c(2));
        // long way round: 2 -> 1 -> 0 ... then 3 reached through 1? use segments
        let n1 = tree.add(0, vec![c(1)], &map).unwrap();
        let n3 = tree.add(n1, vec![c(2), c(3)], &map).unwrap();
        let n4 = tree.add(n3, vec![c(4)], &map).unwrap();
        assert_eq!(tree.cost(n4), 4.0);
        tree.reparent(n3, 0, vec![c(3)], &map);
        assert_eq!(tree.cost(n3), 1.0);
        assert_eq!(tree.cost(n4), 2.0);
        assert!(tree.node(n1).children.is_empty());
        tree.audit(&map).unwrap();
    }

    #[test]
    fn nearest_orders_by_distance() {
        let map = line(6);
        let mut tree = SearchTree::new(c(0));
        let mut prev = 0;
        for v in 1..6 {
            prev = tree.add(prev, vec![c(v)], &map).unwrap();
        }
        assert_eq!(tree.nearest(&[4], 3, &map, |_| false), vec![4, 3, 5]);
        assert_eq!(tree.nearest(&[4], 2, &map, |id| id == 4), vec![3, 5]);
        let mask = tree.ancestor_mask(2);
        assert_eq!(mask, vec![true, true, true, false, false, false]);
    }
}
