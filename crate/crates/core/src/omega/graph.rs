//! Cycle questions on finite edge-colored graphs.

/// Strongly connected components (Tarjan, iterative). Returns the
/// component index of every node.
pub fn scc(adj: &[Vec<usize>]) -> Vec<usize> {
    let n = adj.len();
    let mut index = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut on_stack = vec![false; n];
    let mut comp = vec![usize::MAX; n];
    let mut stack = Vec::new();
    let mut next_index = 0;
    let mut next_comp = 0;
    for root in 0..n {
        if index[root] != usize::MAX {
            continue;
        }
        let mut call: Vec<(usize, usize)> = vec![(root, 0)];
        index[root] = next_index;
        low[root] = next_index;
        next_index += 1;
        stack.push(root);
        on_stack[root] = true;
        while let Some(&mut (v, ref mut i)) = call.last_mut() {
            if let Some(&w) = adj[v].get(*i) {
                *i += 1;
                if index[w] == usize::MAX {
                    index[w] = next_index;
                    low[w] = next_index;
                    next_index += 1;
                    stack.push(w);
                    on_stack[w] = true;
                    call.push((w, 0));
                } else if on_stack[w] {
                    low[v] = low[v].min(index[w]);
                }
            } else {
                call.pop();
                if let Some(&(u, _)) = call.last() {
                    low[u] = low[u].min(low[v]);
                }
                if low[v] == index[v] {
                    loop {
                        let w = stack.pop().expect("tarjan stack");
                        on_stack[w] = false;
                        comp[w] = next_comp;
                        if w == v {
                            break;
                        }
                    }
                    next_comp += 1;
                }
            }
        }
    }
    comp
}

/// Nodes reachable from `starts`.
pub fn reachable(adj: &[Vec<usize>], starts: impl IntoIterator<Item = usize>) -> Vec<bool> {
    let mut seen = vec![false; adj.len()];
    let mut stack: Vec<usize> = starts.into_iter().collect();
    for &s in &stack {
        seen[s] = true;
    }
    while let Some(v) = stack.pop() {
        for &w in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen
}

/// Whether some cycle through reachable nodes has an odd (when `odd`) or
/// even maximal edge color. `edges[v]` lists `(target, color)`.
pub fn has_cycle_with_max_parity(
    edges: &[Vec<(usize, u32)>],
    starts: impl IntoIterator<Item = usize>,
    odd: bool,
) -> bool {
    let plain: Vec<Vec<usize>> = edges.iter().map(|es| es.iter().map(|&(t, _)| t).collect()).collect();
    let live = reachable(&plain, starts);
    let mut colors: Vec<u32> = edges.iter().flatten().map(|&(_, c)| c).filter(|c| c % 2 == u32::from(odd)).collect();
    colors.sort_unstable();
    colors.dedup();
    for c in colors {
        let sub: Vec<Vec<usize>> = edges
            .iter()
            .enumerate()
            .map(|(v, es)| {
                if !live[v] {
                    return Vec::new();
                }
                es.iter().filter(|&&(_, k)| k <= c).map(|&(t, _)| t).collect()
            })
            .collect();
        let comp = scc(&sub);
        let found = edges.iter().enumerate().any(|(v, es)| {
            live[v] && es.iter().any(|&(t, k)| k == c && comp[t] == comp[v])
        });
        if found {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn components() {
        let adj = vec![vec![1], vec![2], vec![0, 3], vec![]];
        let c = scc(&adj);
        assert_eq!(c[0], c[1]);
        assert_eq!(c[1], c[2]);
        assert_ne!(c[2], c[3]);
    }

    #[test]
    fn parity_cycles() {
        // 0 -1-> 1 -2-> 0, and 1 -3-> 2 -0-> 2
        let edges = vec![vec![(1, 1)], vec![(0, 2), (2, 3)], vec![(2, 0)]];
        assert!(has_cycle_with_max_parity(&edges, [0], false));
        assert!(!has_cycle_with_max_parity(&edges, [0], true));
        assert!(has_cycle_with_max_parity(&edges, [2], false));
        let odd_loop = vec![vec![(0, 3)]];
        assert!(has_cycle_with_max_parity(&odd_loop, [0], true));
        assert!(!has_cycle_with_max_parity(&odd_loop, [], true));
    }
}
