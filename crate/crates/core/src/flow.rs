//! Feasible and minimum-cost flows on networks with lower and upper arc
//! bounds.
//!
//! Both solvers use the usual lower-bound reduction: every arc keeps only its
//! slack `upper - lower`, the forced `lower` units become node imbalances fed
//! from a super source and drained into a super sink, and an uncapacitated
//! sink-to-source arc lets the original s-t flow take any value. A feasible
//! flow exists iff the super source can be saturated.
//!
//! [`feasible_flow`] saturates with Dinic's algorithm; [`min_cost_feasible_flow`]
//! uses successive shortest paths with Johnson potentials. The two share only
//! the reduction, so their feasibility verdicts are an independent check of
//! each other.
//!
//! Networks have a plain-text form (see [`FlowNetwork::parse`]):
//!
//! ```text
//! # comment
//! network <nodes> <source> <sink>
//! arc <from> <to> <lower> <upper> <cost>
//! ```

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};
use std::fmt;

use crate::error::{Error, InputError, Result};
use crate::text;

pub type NodeId = usize;
pub type ArcId = usize;

/// Largest bound or cost accepted; keeps every intermediate sum in `i64`.
pub const MAX_VALUE: i64 = 1 << 30;
/// Largest node count accepted.
pub const MAX_NODES: usize = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FlowArc {
    pub from: NodeId,
    pub to: NodeId,
    pub lower: i64,
    pub upper: i64,
    pub cost: i64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowNetwork {
    nodes: usize,
    source: NodeId,
    sink: NodeId,
    arcs: Vec<FlowArc>,
}

impl FlowNetwork {
    pub fn new(nodes: usize, source: NodeId, sink: NodeId) -> Result<Self> {
        if nodes > MAX_NODES {
            return Err(Error::MalformedNetwork(format!("{nodes} nodes exceeds {MAX_NODES}")));
        }
        if source >= nodes || sink >= nodes {
            return Err(Error::MalformedNetwork("source or sink out of range".into()));
        }
        if source == sink {
            return Err(Error::MalformedNetwork("source and sink coincide".into()));
        }
        Ok(Self { nodes, source, sink, arcs: Vec::new() })
    }

    /// Adds a node and returns its id.
    pub fn add_node(&mut self) -> NodeId {
        self.nodes += 1;
        self.nodes - 1
    }

    pub fn add_arc(&mut self, from: NodeId, to: NodeId, lower: i64, upper: i64, cost: i64) -> Result<ArcId> {
        let arc = FlowArc { from, to, lower, upper, cost };
        self.check_arc(&arc)?;
        self.arcs.push(arc);
        Ok(self.arcs.len() - 1)
    }

    fn check_arc(&self, a: &FlowArc) -> Result<()> {
        if a.from >= self.nodes || a.to >= self.nodes {
            return Err(Error::MalformedNetwork(format!("arc {}->{} has a dangling endpoint", a.from, a.to)));
        }
        if a.from == a.to {
            return Err(Error::MalformedNetwork(format!("self-loop at node {}", a.from)));
        }
        if a.to == self.source {
            return Err(Error::MalformedNetwork("arc into the source".into()));
        }
        if a.from == self.sink {
            return Err(Error::MalformedNetwork("arc out of the sink".into()));
        }
        if a.lower < 0 || a.lower > a.upper {
            return Err(Error::MalformedNetwork(format!(
                "arc {}->{} has bounds [{}, {}]",
                a.from, a.to, a.lower, a.upper
            )));
        }
        if a.upper > MAX_VALUE || a.cost < 0 || a.cost > MAX_VALUE {
            return Err(Error::MalformedNetwork(format!(
                "arc {}->{} bound or cost out of range",
                a.from, a.to
            )));
        }
        Ok(())
    }

    pub fn validate(&self) -> Result<()> {
        if self.source >= self.nodes || self.sink >= self.nodes || self.source == self.sink {
            return Err(Error::MalformedNetwork("bad source or sink".into()));
        }
        self.arcs.iter().try_for_each(|a| self.check_arc(a))
    }

    pub fn nodes(&self) -> usize {
        self.nodes
    }

    pub fn source(&self) -> NodeId {
        self.source
    }

    pub fn sink(&self) -> NodeId {
        self.sink
    }

    pub fn arcs(&self) -> &[FlowArc] {
        &self.arcs
    }

    /// Parses the text form written by `Display`.
    pub fn parse(input: &str) -> Result<Self, InputError> {
        let mut net: Option<FlowNetwork> = None;
        for line in text::lines(input) {
            match line.keyword() {
                "network" => {
                    if net.is_some() {
                        return Err(line.invalid("duplicate `network` header"));
                    }
                    line.expect_arity(3)?;
                    let nodes = line.number::<usize>(0, "a node count")?;
                    let source = line.number::<usize>(1, "a node id")?;
                    let sink = line.number::<usize>(2, "a node id")?;
                    net = Some(FlowNetwork::new(nodes, source, sink).map_err(|e| line.invalid(e.to_string()))?);
                }
                "arc" => {
                    let Some(n) = net.as_mut() else {
                        return Err(line.invalid("`arc` before the `network` header"));
                    };
                    line.expect_arity(5)?;
                    let from = line.number(0, "a node id")?;
                    let to = line.number(1, "a node id")?;
                    let lower = line.number(2, "an integer bound")?;
                    let upper = line.number(3, "an integer bound")?;
                    let cost = line.number(4, "an integer cost")?;
                    n.add_arc(from, to, lower, upper, cost)
                        .map_err(|e| line.invalid(e.to_string()))?;
                }
                other => {
                    return Err(line.parse_error(line.tokens[0].column, format!("unknown directive `{other}`")));
                }
            }
        }
        net.ok_or(InputError::Validation { line: 0, message: "missing `network` header".into() })
    }

    /// Whether `flows` meets every bound and conserves flow at every node
    /// other than the source and sink.
    pub fn is_feasible_assignment(&self, flows: &[i64]) -> bool {
        if flows.len() != self.arcs.len() {
            return false;
        }
        let mut balance = vec![0i64; self.nodes];
        for (a, &f) in self.arcs.iter().zip(flows) {
            if f < a.lower || f > a.upper {
                return false;
            }
            balance[a.from] -= f;
            balance[a.to] += f;
        }
        balance
            .iter()
            .enumerate()
            .all(|(v, &b)| v == self.source || v == self.sink || b == 0)
    }

    pub fn assignment_cost(&self, flows: &[i64]) -> i64 {
        self.arcs.iter().zip(flows).map(|(a, &f)| a.cost * f).sum()
    }
}

impl fmt::Display for FlowNetwork {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "network {} {} {}", self.nodes, self.source, self.sink)?;
        for a in &self.arcs {
            writeln!(f, "arc {} {} {} {} {}", a.from, a.to, a.lower, a.upper, a.cost)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlowResult {
    pub feasible: bool,
    /// Per-arc flow, indexed like [`FlowNetwork::arcs`]; empty when infeasible.
    pub flows: Vec<i64>,
    pub cost: i64,
}

impl FlowResult {
    /// Net flow leaving the source.
    pub fn value(&self, net: &FlowNetwork) -> i64 {
        net.arcs
            .iter()
            .zip(&self.flows)
            .map(|(a, &f)| if a.from == net.source { f } else if a.to == net.source { -f } else { 0 })
            .sum()
    }
}

// Residual graph with paired edges (e, e ^ 1).
struct Residual {
    adj: Vec<Vec<usize>>,
    to: Vec<usize>,
    cap: Vec<i64>,
    cost: Vec<i64>,
}

impl Residual {
    fn new(nodes: usize) -> Self {
        Self { adj: vec![Vec::new(); nodes], to: Vec::new(), cap: Vec::new(), cost: Vec::new() }
    }

    fn link(&mut self, u: usize, v: usize, cap: i64, cost: i64) -> usize {
        let e = self.to.len();
        self.adj[u].push(e);
        self.to.push(v);
        self.cap.push(cap);
        self.cost.push(cost);
        self.adj[v].push(e + 1);
        self.to.push(u);
        self.cap.push(0);
        self.cost.push(-cost);
        e
    }
}

struct Reduction {
    graph: Residual,
    arc_edges: Vec<usize>,
    super_source: usize,
    super_sink: usize,
    demand: i64,
}

fn reduce(net: &FlowNetwork) -> Result<Reduction> {
    net.validate()?;
    let n = net.nodes;
    let (ss, tt) = (n, n + 1);
    let mut graph = Residual::new(n + 2);
    let mut excess = vec![0i64; n];
    let mut arc_edges = Vec::with_capacity(net.arcs.len());
    let mut total_upper: i64 = 0;
    for a in &net.arcs {
        arc_edges.push(graph.link(a.from, a.to, a.upper - a.lower, a.cost));
        excess[a.to] += a.lower;
        excess[a.from] -= a.lower;
        total_upper = total_upper
            .checked_add(a.upper)
            .ok_or_else(|| Error::MalformedNetwork("total capacity overflows".into()))?;
    }
    graph.link(net.sink, net.source, total_upper, 0);
    let mut demand = 0;
    for (v, &e) in excess.iter().enumerate() {
        if e > 0 {
            graph.link(ss, v, e, 0);
            demand += e;
        } else if e < 0 {
            graph.link(v, tt, -e, 0);
        }
    }
    Ok(Reduction { graph, arc_edges, super_source: ss, super_sink: tt, demand })
}

impl Reduction {
    fn result(&self, net: &FlowNetwork, pushed: i64) -> FlowResult {
        if pushed < self.demand {
            return FlowResult { feasible: false, flows: Vec::new(), cost: 0 };
        }
        let flows: Vec<i64> = net
            .arcs
            .iter()
            .zip(&self.arc_edges)
            .map(|(a, &e)| a.lower + self.graph.cap[e ^ 1])
            .collect();
        let cost = net.assignment_cost(&flows);
        FlowResult { feasible: true, flows, cost }
    }
}

/// Any flow meeting every bound, or an infeasible verdict.
pub fn feasible_flow(net: &FlowNetwork) -> Result<FlowResult> {
    let mut red = reduce(net)?;
    let pushed = dinic(&mut red.graph, red.super_source, red.super_sink, red.demand);
    Ok(red.result(net, pushed))
}

/// A feasible flow of minimum total cost.
pub fn min_cost_feasible_flow(net: &FlowNetwork) -> Result<FlowResult> {
    let mut red = reduce(net)?;
    let pushed = successive_shortest_paths(&mut red.graph, red.super_source, red.super_sink, red.demand);
    let res = red.result(net, pushed);
    if res.feasible {
        Ok(res)
    } else {
        Err(Error::Infeasible)
    }
}

fn dinic(g: &mut Residual, s: usize, t: usize, limit: i64) -> i64 {
    let n = g.adj.len();
    let mut total = 0;
    let mut level = vec![usize::MAX; n];
    let mut next = vec![0usize; n];
    while total < limit {
        level.fill(usize::MAX);
        level[s] = 0;
        let mut queue = VecDeque::from([s]);
        while let Some(u) = queue.pop_front() {
            for &e in &g.adj[u] {
                let v = g.to[e];
                if g.cap[e] > 0 && level[v] == usize::MAX {
                    level[v] = level[u] + 1;
                    queue.push_back(v);
                }
            }
        }
        if level[t] == usize::MAX {
            break;
        }
        next.fill(0);
        loop {
            let f = blocking_path(g, &level, &mut next, s, t, limit - total);
            if f == 0 {
                break;
            }
            total += f;
        }
    }
    total
}

// Iterative DFS for one augmenting path in the level graph.
fn blocking_path(g: &mut Residual, level: &[usize], next: &mut [usize], s: usize, t: usize, limit: i64) -> i64 {
    let mut path: Vec<usize> = Vec::new();
    let mut u = s;
    loop {
        if u == t {
            let f = path.iter().map(|&e| g.cap[e]).min().unwrap_or(0).min(limit);
            for &e in &path {
                g.cap[e] -= f;
                g.cap[e ^ 1] += f;
            }
            return f;
        }
        let mut advanced = false;
        while next[u] < g.adj[u].len() {
            let e = g.adj[u][next[u]];
            let v = g.to[e];
            if g.cap[e] > 0 && level[v] == level[u] + 1 {
                path.push(e);
                u = v;
                advanced = true;
                break;
            }
            next[u] += 1;
        }
        if !advanced {
            // dead end: retreat and skip the edge that led here
            let Some(e) = path.pop() else { return 0 };
            u = g.to[e ^ 1];
            next[u] += 1;
        }
    }
}

fn successive_shortest_paths(g: &mut Residual, s: usize, t: usize, limit: i64) -> i64 {
    let n = g.adj.len();
    // all initial residual costs are nonnegative, so zero potentials are valid
    let mut potential = vec![0i64; n];
    let mut dist = vec![i64::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut total = 0;
    while total < limit {
        dist.fill(i64::MAX);
        parent.fill(usize::MAX);
        dist[s] = 0;
        let mut heap = BinaryHeap::from([Reverse((0i64, s))]);
        while let Some(Reverse((d, u))) = heap.pop() {
            if d > dist[u] {
                continue;
            }
            for &e in &g.adj[u] {
                if g.cap[e] == 0 {
                    continue;
                }
                let v = g.to[e];
                let nd = d + g.cost[e] + potential[u] - potential[v];
                if nd < dist[v] {
                    dist[v] = nd;
                    parent[v] = e;
                    heap.push(Reverse((nd, v)));
                }
            }
        }
        if dist[t] == i64::MAX {
            break;
        }
        for v in 0..n {
            if dist[v] != i64::MAX {
                potential[v] += dist[v];
            }
        }
        let mut f = limit - total;
        let mut v = t;
        while v != s {
            let e = parent[v];
            f = f.min(g.cap[e]);
            v = g.to[e ^ 1];
        }
        let mut v = t;
        while v != s {
            let e = parent[v];
            g.cap[e] -= f;
            g.cap[e ^ 1] += f;
            v = g.to[e ^ 1];
        }
        total += f;
    }
    total
}
