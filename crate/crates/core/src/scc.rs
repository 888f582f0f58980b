//! Iterative Tarjan strongly connected components over a vertex mask.

use crate::game::{Vertex, VertexSet};

const UNVISITED: usize = usize::MAX;

/// Strongly connected components of the graph `adjacency` restricted to
/// the vertices in `mask`. Edges leaving `mask` are ignored.
pub(crate) fn strongly_connected_components(
    adjacency: &[Vec<Vertex>],
    mask: &VertexSet,
) -> Vec<Vec<Vertex>> {
    let n = adjacency.len();
    let mut index = vec![UNVISITED; n];
    let mut low = vec![0usize; n];
    let mut on_stack = vec![false; n];
    let mut stack: Vec<Vertex> = Vec::new();
    let mut components = Vec::new();
    let mut next_index = 0;
    // (vertex, position in its adjacency list)
    let mut call: Vec<(Vertex, usize)> = Vec::new();

    for root in mask.iter() {
        if index[root] != UNVISITED {
            continue;
        }
        call.push((root, 0));
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;

        while let Some(&mut (v, ref mut pos)) = call.last_mut() {
            if let Some(&u) = adjacency[v].get(*pos) {
                *pos += 1;
                if !mask.contains(u) {
                    continue;
                }
                if index[u] == UNVISITED {
                    index[u] = next_index;
                    low[u] = next_index;
                    next_index += 1;
                    stack.push(u);
                    on_stack[u] = true;
                    call.push((u, 0));
                } else if on_stack[u] {
                    low[v] = low[v].min(index[u]);
                }
                continue;
            }
            call.pop();
            if let Some(&(parent, _)) = call.last() {
                low[parent] = low[parent].min(low[v]);
            }
            if low[v] == index[v] {
                let mut component = Vec::new();
                loop {
                    let w = stack.pop().expect("tarjan stack underflow");
                    on_stack[w] = false;
                    component.push(w);
                    if w == v {
                        break;
                    }
                }
                components.push(component);
            }
        }
    }
    components
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut comps: Vec<Vec<Vertex>>) -> Vec<Vec<Vertex>> {
        for c in &mut comps {
            c.sort_unstable();
        }
        comps.sort();
        comps
    }

    #[test]
    fn two_cycles_and_a_tail() {
        let adj = vec![vec![1], vec![0, 2], vec![3], vec![2], vec![0]];
        let comps = sorted(strongly_connected_components(&adj, &VertexSet::full(5)));
        assert_eq!(comps, vec![vec![0, 1], vec![2, 3], vec![4]]);
    }

    #[test]
    fn mask_cuts_cycles() {
        let adj = vec![vec![1], vec![2], vec![0]];
        let mask = VertexSet::from_vertices(3, [0, 1]);
        let comps = sorted(strongly_connected_components(&adj, &mask));
        assert_eq!(comps, vec![vec![0], vec![1]]);
    }
}
