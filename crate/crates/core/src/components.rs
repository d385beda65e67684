//! Monochromatic components and their spanning trees.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use crate::colouring::SetColouring;
use crate::VertexSet;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
#[error("colour {colour} out of range for r={r}")]
pub struct ColourOutOfRange {
    pub colour: usize,
    pub r: usize,
}

/// A connected vertex set in one colour's subgraph, with a spanning tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoComponent {
    pub colour: usize,
    #[serde(with = "vertex_list")]
    pub vertices: VertexSet,
    pub tree_edges: Vec<(usize, usize)>,
}

impl MonoComponent {
    /// Breadth-first spanning tree of `vertices` in the colour-`colour`
    /// subgraph, rooted at the smallest vertex. `None` if `vertices` is empty
    /// or not connected in that colour.
    pub fn spanning(
        colouring: &SetColouring,
        colour: usize,
        vertices: &VertexSet,
    ) -> Option<MonoComponent> {
        let root = vertices.first()?;
        let host = colouring.host();
        let mut seen = VertexSet::singleton(root);
        let mut queue = VecDeque::from([root]);
        let mut tree_edges = Vec::new();
        while let Some(x) = queue.pop_front() {
            for y in host.neighbours(x) {
                if vertices.contains(y)
                    && !seen.contains(y)
                    && colouring.colour(x, y).contains(colour)
                {
                    seen.insert(y);
                    tree_edges.push((x.min(y), x.max(y)));
                    queue.push_back(y);
                }
            }
        }
        (seen.len() == vertices.len()).then(|| MonoComponent {
            colour,
            vertices: vertices.clone(),
            tree_edges,
        })
    }

    pub fn size(&self) -> usize {
        self.vertices.len()
    }

    /// Ordering key used for canonical certificates: colour, then smallest vertex.
    pub fn key(&self) -> (usize, usize) {
        (self.colour, self.vertices.first().unwrap_or(usize::MAX))
    }
}

/// All components of the colour-`colour` subgraph, each vertex in exactly one,
/// ordered by smallest vertex. Vertices without a colour-`colour` edge come out
/// as singletons with no tree edges.
pub fn mono_components(
    colouring: &SetColouring,
    colour: usize,
) -> Result<Vec<MonoComponent>, ColourOutOfRange> {
    if colour >= colouring.r() {
        return Err(ColourOutOfRange {
            colour,
            r: colouring.r(),
        });
    }
    let index = ComponentIndex::build(colouring);
    Ok(index
        .components(colour)
        .iter()
        .map(|set| {
            MonoComponent::spanning(colouring, colour, set)
                .expect("union-find component is connected")
        })
        .collect())
}

#[derive(Clone, Debug)]
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] as usize != root {
            root = self.parent[root] as usize;
        }
        let mut cur = x;
        while self.parent[cur] as usize != root {
            let next = self.parent[cur] as usize;
            self.parent[cur] = root as u32;
            cur = next;
        }
        root
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut a, mut b) = (self.find(a), self.find(b));
        if a == b {
            return false;
        }
        if self.size[a] < self.size[b] {
            std::mem::swap(&mut a, &mut b);
        }
        self.parent[b] = a as u32;
        self.size[a] += self.size[b];
        true
    }
}

/// Per-colour component labelling of a whole colouring.
#[derive(Clone, Debug)]
pub struct ComponentIndex {
    /// `labels[c][v]` indexes into `sets[c]`.
    labels: Vec<Vec<u32>>,
    sets: Vec<Vec<VertexSet>>,
}

impl ComponentIndex {
    pub fn build(colouring: &SetColouring) -> Self {
        let n = colouring.vertex_count();
        let r = colouring.r();
        let mut ufs: Vec<UnionFind> = (0..r).map(|_| UnionFind::new(n)).collect();
        for (u, v, set) in colouring.edges() {
            for c in set.iter() {
                ufs[c].union(u, v);
            }
        }
        let mut labels = Vec::with_capacity(r);
        let mut sets = Vec::with_capacity(r);
        for uf in ufs.iter_mut() {
            let mut root_label = vec![u32::MAX; n];
            let mut lab = vec![0u32; n];
            let mut comps: Vec<VertexSet> = Vec::new();
            for (v, slot) in lab.iter_mut().enumerate() {
                let root = uf.find(v);
                if root_label[root] == u32::MAX {
                    root_label[root] = comps.len() as u32;
                    comps.push(VertexSet::with_capacity(n));
                }
                let l = root_label[root];
                *slot = l;
                comps[l as usize].insert(v);
            }
            labels.push(lab);
            sets.push(comps);
        }
        Self { labels, sets }
    }

    pub fn colours(&self) -> usize {
        self.sets.len()
    }

    /// Components of colour `c`, ordered by smallest vertex.
    pub fn components(&self, c: usize) -> &[VertexSet] {
        &self.sets[c]
    }

    /// The colour-`c` component containing `v`.
    pub fn component_of(&self, c: usize, v: usize) -> &VertexSet {
        &self.sets[c][self.labels[c][v] as usize]
    }

    pub fn label(&self, c: usize, v: usize) -> usize {
        self.labels[c][v] as usize
    }

    pub fn same_component(&self, c: usize, u: usize, v: usize) -> bool {
        self.labels[c][u] == self.labels[c][v]
    }
}

pub(crate) mod vertex_list {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    use crate::VertexSet;

    pub fn serialize<S: Serializer>(set: &VertexSet, s: S) -> Result<S::Ok, S::Error> {
        set.to_vec().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<VertexSet, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Ok(v.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{ColourSet, HostGraph};

    fn two_missing_k4() -> SetColouring {
        // vertex i is v_i; edge v_i v_j gets [4] \ {i, j}
        SetColouring::from_fn(HostGraph::complete(4), 4, Some(2), |u, v| {
            ColourSet::full(4).difference(ColourSet::from_colours([u, v]))
        })
        .unwrap()
    }

    #[test]
    fn two_missing_colour_zero() {
        // colour 0 lives on edges avoiding vertex 0: 1-2, 1-3, 2-3
        let comps = mono_components(&two_missing_k4(), 0).unwrap();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].vertices.to_vec(), vec![0]);
        assert!(comps[0].tree_edges.is_empty());
        assert_eq!(comps[1].vertices.to_vec(), vec![1, 2, 3]);
        assert_eq!(comps[1].tree_edges, vec![(1, 2), (1, 3)]);
    }

    #[test]
    fn monochromatic_host() {
        let c = SetColouring::from_fn(HostGraph::complete(5), 2, Some(1), |_, _| {
            ColourSet::singleton(0)
        })
        .unwrap();
        let zero = mono_components(&c, 0).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].size(), 5);
        assert_eq!(zero[0].tree_edges.len(), 4);
        let one = mono_components(&c, 1).unwrap();
        assert_eq!(one.len(), 5);
        assert!(one.iter().all(|m| m.size() == 1));
        assert_eq!(
            mono_components(&c, 2),
            Err(ColourOutOfRange { colour: 2, r: 2 })
        );
    }

    #[test]
    fn spanning_rejects_disconnected_sets() {
        let c = two_missing_k4();
        let set: VertexSet = [0, 1].into_iter().collect();
        // edge 0-1 carries {2,3}
        assert!(MonoComponent::spanning(&c, 0, &set).is_none());
        assert!(MonoComponent::spanning(&c, 2, &set).is_some());
    }
}
