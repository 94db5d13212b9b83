use std::collections::VecDeque;

/// Directed network with integer capacities and paired residual arcs.
///
/// Arc `a` and its reverse `a ^ 1` are created together; an undirected unit
/// edge is an arc pair where both directions start with capacity 1.
#[derive(Clone, Debug)]
pub struct FlowNetwork {
    out: Vec<Vec<usize>>,
    to: Vec<u32>,
    cap: Vec<u32>,
}

pub const INFINITE: u32 = u32::MAX / 4;

impl FlowNetwork {
    pub fn new(nodes: usize) -> Self {
        Self {
            out: vec![Vec::new(); nodes],
            to: Vec::new(),
            cap: Vec::new(),
        }
    }

    pub fn nodes(&self) -> usize {
        self.out.len()
    }

    /// Adds `a -> b` with capacity `forward` and `b -> a` with `backward`.
    pub fn add_pair(&mut self, a: usize, b: usize, forward: u32, backward: u32) {
        let id = self.to.len();
        self.to.push(b as u32);
        self.cap.push(forward);
        self.out[a].push(id);
        self.to.push(a as u32);
        self.cap.push(backward);
        self.out[b].push(id + 1);
    }

    pub fn add_arc(&mut self, a: usize, b: usize, cap: u32) {
        self.add_pair(a, b, cap, 0);
    }

    /// Shortest-augmenting-path max flow from `s` to `t`, stopping once
    /// `limit` units have been pushed.
    pub fn max_flow(&mut self, s: usize, t: usize, limit: u64) -> u64 {
        let mut flow = 0u64;
        let mut via = vec![usize::MAX; self.nodes()];
        while flow < limit {
            via.fill(usize::MAX);
            let mut queue = VecDeque::from([s]);
            let mut reached = false;
            'bfs: while let Some(x) = queue.pop_front() {
                for &arc in &self.out[x] {
                    let y = self.to[arc] as usize;
                    if self.cap[arc] > 0 && y != s && via[y] == usize::MAX {
                        via[y] = arc;
                        if y == t {
                            reached = true;
                            break 'bfs;
                        }
                        queue.push_back(y);
                    }
                }
            }
            if !reached {
                break;
            }
            let mut push = (limit - flow).min(INFINITE as u64) as u32;
            let mut y = t;
            while y != s {
                let arc = via[y];
                push = push.min(self.cap[arc]);
                y = self.to[arc ^ 1] as usize;
            }
            let mut y = t;
            while y != s {
                let arc = via[y];
                self.cap[arc] -= push;
                self.cap[arc ^ 1] += push;
                y = self.to[arc ^ 1] as usize;
            }
            flow += push as u64;
        }
        flow
    }

    /// Nodes reachable from `s` through arcs with spare capacity.
    pub fn residual_reachable(&self, s: usize) -> Vec<bool> {
        let mut seen = vec![false; self.nodes()];
        seen[s] = true;
        let mut stack = vec![s];
        while let Some(x) = stack.pop() {
            for &arc in &self.out[x] {
                let y = self.to[arc] as usize;
                if self.cap[arc] > 0 && !seen[y] {
                    seen[y] = true;
                    stack.push(y);
                }
            }
        }
        seen
    }
}
