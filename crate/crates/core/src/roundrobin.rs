//! Single round robins.
//!
//! A team wins a round robin when it scores at least as much as every other
//! team (co-winners allowed). Making a target win is a winner-determination
//! problem: games the coalition can influence are treated as unplayed, with
//! their possible results restricted to those the coalition may legally
//! produce, and a flow network decides whether the remaining points can be
//! spread without anyone passing the target.
//!
//! Under win-loss (Copeland) scoring the fewest thrown games is found in two
//! stages. Throws into the target raise it by one and lower a rival by one,
//! so they are taken first, greedily from the currently highest-scoring
//! thrower, until the target leads or none are left. Whatever is still
//! needed comes from a single min-cost flow in which every thrown game costs
//! one.

use crate::error::{Error, Result};
use crate::flow::{min_cost_feasible_flow, FlowNetwork, NodeId};
use crate::tournament::{
    validate_model_form, Coalition, Decision, ManipulationPlan, MinimalPlan, Move, Points, ScoringModel, Team,
    Tournament,
};

/// Outcome of the greedy stage.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GreedyResult {
    /// Target's score once `used_moves` are applied.
    pub points: Points,
    pub used_moves: ManipulationPlan,
    /// Whether the target already scores at least as much as everyone else.
    pub satisfied: bool,
}

fn require_win_loss(t: &Tournament) -> Result<()> {
    if t.is_win_loss() {
        Ok(())
    } else {
        Err(Error::RequiresWinLoss)
    }
}

fn leads(scores: &[Points], target: Team) -> bool {
    scores.iter().all(|&s| s <= scores[target])
}

/// Flips coalition wins over `target`, highest-scoring thrower first (lowest
/// index on ties), until the target leads or no such game is left.
pub fn greedy_out_degree(target: Team, t: &Tournament, coalition: &Coalition) -> Result<GreedyResult> {
    require_win_loss(t)?;
    t.check_team(target)?;
    t.check_coalition(coalition)?;
    let mut scores = t.copeland_scores();
    let mut open: Vec<Team> = coalition
        .members()
        .iter()
        .copied()
        .filter(|&i| i != target && t.beats(i, target))
        .collect();
    let mut used = ManipulationPlan::new();
    while !leads(&scores, target) {
        let Some(pos) = (0..open.len()).max_by_key(|&k| (scores[open[k]], std::cmp::Reverse(open[k]))) else {
            break;
        };
        let thrower = open.swap_remove(pos);
        scores[thrower] -= 1;
        scores[target] += 1;
        used.push(Move::flip(thrower, target))?;
    }
    Ok(GreedyResult { points: scores[target], satisfied: leads(&scores, target), used_moves: used })
}

/// Where one game's point can go.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GameArcs {
    pub winner: Team,
    pub loser: Team,
    /// Arc carrying the fair result.
    pub fair_arc: usize,
    /// Arc carrying a thrown result, present when the winner is a member.
    pub thrown_arc: Option<usize>,
}

/// Winner-determination network for the games not involving the target.
#[derive(Debug, Clone)]
pub struct RoundRobinNetwork {
    pub network: FlowNetwork,
    pub target: Team,
    pub cap: Points,
    pub games: Vec<GameArcs>,
    /// Node of each team; `None` for the target.
    pub team_nodes: Vec<Option<NodeId>>,
}

/// Builds the network with the target's own games frozen as they stand in
/// `t`. Every other game sends one unit from the source, to its fair winner
/// at cost 0 or, when the winner is a coalition member, to its loser at cost
/// 1. Each team may absorb `cap` minus what it already took off the target.
pub fn build_flow_network(t: &Tournament, coalition: &Coalition, target: Team, cap: Points) -> Result<RoundRobinNetwork> {
    require_win_loss(t)?;
    t.check_team(target)?;
    t.check_coalition(coalition)?;
    let m = t.teams();
    let mut network = FlowNetwork::new(2, 0, 1)?;
    let (source, sink) = (0, 1);
    let mut team_nodes = vec![None; m];
    for (v, slot) in team_nodes.iter_mut().enumerate() {
        if v == target {
            continue;
        }
        let fixed = i64::from(t.points(v, target));
        let room = i64::from(cap) - fixed;
        if room < 0 {
            return Err(Error::InvalidCapacity { team: v, fixed, cap: i64::from(cap) });
        }
        let node = network.add_node();
        network.add_arc(node, sink, 0, room, 0)?;
        *slot = Some(node);
    }
    let mut games = Vec::new();
    for (i, j, pi, _) in t.games() {
        if i == target || j == target {
            continue;
        }
        let (winner, loser) = if pi > 0 { (i, j) } else { (j, i) };
        let node = network.add_node();
        network.add_arc(source, node, 1, 1, 0)?;
        let fair_arc = network.add_arc(node, team_nodes[winner].unwrap(), 0, 1, 0)?;
        let thrown_arc = if coalition.contains(winner) {
            Some(network.add_arc(node, team_nodes[loser].unwrap(), 0, 1, 1)?)
        } else {
            None
        };
        games.push(GameArcs { winner, loser, fair_arc, thrown_arc });
    }
    Ok(RoundRobinNetwork { network, target, cap, games, team_nodes })
}

/// Fewest thrown games that make `target` score at least as much as every
/// other team.
pub fn rr_min_manipulations(target: Team, t: &Tournament, coalition: &Coalition) -> Result<MinimalPlan> {
    let greedy = greedy_out_degree(target, t, coalition)?;
    let mut plan = greedy.used_moves.clone();
    if !greedy.satisfied {
        let after = t.apply_plan(coalition, &greedy.used_moves)?;
        let net = match build_flow_network(&after, coalition, target, greedy.points) {
            Ok(net) => net,
            Err(Error::InvalidCapacity { .. }) => return Err(Error::NotAchievable),
            Err(e) => return Err(e),
        };
        let flow = match min_cost_feasible_flow(&net.network) {
            Ok(flow) => flow,
            Err(Error::Infeasible) => return Err(Error::NotAchievable),
            Err(e) => return Err(e),
        };
        for g in &net.games {
            if g.thrown_arc.is_some_and(|a| flow.flows[a] == 1) {
                plan.push(Move::flip(g.winner, g.loser))?;
            }
        }
        debug_assert_eq!(plan.count(), greedy.used_moves.count() + flow.cost as usize);
    }
    Ok(MinimalPlan { count: plan.count(), champion: target, plan })
}

fn check_model(t: &Tournament, model: &ScoringModel) -> Result<()> {
    if !validate_model_form(model) {
        return Err(Error::ModelNotSupported);
    }
    for (_, _, pi, pj) in t.games() {
        if !model.contains((pi, pj)) {
            return Err(Error::InvalidOutcome(pi, pj));
        }
    }
    Ok(())
}

/// Whether the coalition can make `target` score at least as much as
/// everyone else under `model`, which must be of the linear form
/// `{(i, n-i)}` up to scale.
///
/// The target takes everything coalition opponents can concede and throws
/// nothing itself. Every other game involving a member becomes an unplayed
/// game: a member facing an outsider may hand over any part of what it
/// earned, two members may split the game any way the model allows. The
/// witness prefers the smallest total of shifted points.
pub fn rr_constructive(target: Team, t: &Tournament, coalition: &Coalition, model: &ScoringModel) -> Result<Decision> {
    check_model(t, model)?;
    t.check_team(target)?;
    t.check_coalition(coalition)?;
    let unit = model.unit();
    let full = model.total() / unit;
    let m = t.teams();
    let pts = |i: Team, j: Team| t.points(i, j) / unit;

    let mut plan = ManipulationPlan::new();
    let mut ceiling: i64 = 0;
    for j in (0..m).filter(|&j| j != target) {
        if coalition.contains(j) && pts(j, target) > 0 {
            plan.push(Move {
                thrower: j,
                opponent: target,
                thrower_points: 0,
                opponent_points: model.total(),
            })?;
            ceiling += i64::from(full);
        } else {
            ceiling += i64::from(pts(target, j));
        }
    }

    let mut banked = vec![0i64; m];
    for j in (0..m).filter(|&j| j != target) {
        banked[j] += i64::from(if coalition.contains(j) { 0 } else { pts(j, target) });
    }

    // A game whose result is left to the flow: `i` ends with `base_i` plus
    // whatever the flow routes to it, `j` with `base_j` plus the rest of `pot`.
    struct Open {
        i: Team,
        j: Team,
        base_i: i64,
        base_j: i64,
        pot: i64,
        to_i: Vec<usize>,
    }

    let mut network = FlowNetwork::new(2, 0, 1)?;
    let (source, sink) = (0, 1);
    let team_node: Vec<NodeId> = (0..m).map(|_| network.add_node()).collect();
    let mut open = Vec::new();
    for (i, j, pi, pj) in t.games() {
        if i == target || j == target {
            continue;
        }
        let (ui, uj) = (i64::from(pi / unit), i64::from(pj / unit));
        match (coalition.contains(i), coalition.contains(j)) {
            (false, false) => {
                banked[i] += ui;
                banked[j] += uj;
            }
            (true, true) => {
                let pot = ui + uj;
                let node = network.add_node();
                network.add_arc(source, node, pot, pot, 0)?;
                let mut to_i = Vec::new();
                for (side, fair) in [(i, ui), (j, uj)] {
                    let keep = network.add_arc(node, team_node[side], 0, fair, 0)?;
                    let gain = network.add_arc(node, team_node[side], 0, pot - fair, 1)?;
                    if side == i {
                        to_i = vec![keep, gain];
                    }
                }
                open.push(Open { i, j, base_i: 0, base_j: 0, pot, to_i });
            }
            (member_i, _) => {
                let (member, outsider, mine, theirs) = if member_i { (i, j, ui, uj) } else { (j, i, uj, ui) };
                banked[outsider] += theirs;
                if mine == 0 {
                    continue;
                }
                let node = network.add_node();
                network.add_arc(source, node, mine, mine, 0)?;
                let keep = network.add_arc(node, team_node[member], 0, mine, 0)?;
                let concede = network.add_arc(node, team_node[outsider], 0, mine, 1)?;
                open.push(if member_i {
                    Open { i, j, base_i: 0, base_j: uj, pot: mine, to_i: vec![keep] }
                } else {
                    Open { i, j, base_i: ui, base_j: 0, pot: mine, to_i: vec![concede] }
                });
            }
        }
    }
    for v in (0..m).filter(|&v| v != target) {
        let room = ceiling - banked[v];
        if room < 0 {
            return Ok(Decision::no());
        }
        network.add_arc(team_node[v], sink, 0, room, 0)?;
    }
    let flow = match min_cost_feasible_flow(&network) {
        Ok(flow) => flow,
        Err(Error::Infeasible) => return Ok(Decision::no()),
        Err(e) => return Err(e),
    };
    for g in &open {
        let routed: i64 = g.to_i.iter().map(|&a| flow.flows[a]).sum();
        let (new_i, new_j) = (g.base_i + routed, g.base_j + g.pot - routed);
        let (fair_i, fair_j) = (i64::from(pts(g.i, g.j)), i64::from(pts(g.j, g.i)));
        if (new_i, new_j) == (fair_i, fair_j) {
            continue;
        }
        let scale = |u: i64| u as Points * unit;
        let (thrower, opponent, tp, op) = if new_i < fair_i { (g.i, g.j, new_i, new_j) } else { (g.j, g.i, new_j, new_i) };
        plan.push(Move { thrower, opponent, thrower_points: scale(tp), opponent_points: scale(op) })?;
    }
    Ok(Decision::yes(target, plan))
}

/// Result of the destructive round-robin check, reporting the points behind
/// the verdict so ties can be judged by the caller.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DestructiveAnswer {
    /// `champion` names the rival that finishes strictly ahead of the loser.
    pub decision: Decision,
    /// Best rival found (the first that succeeds, else the one with the
    /// largest achievable margin) and the points behind the verdict.
    pub rival: Option<Team>,
    pub rival_points: Points,
    pub loser_points: Points,
}

/// Whether some team can be pushed strictly above `loser`.
///
/// For each rival: coalition opponents concede everything to it; if the loser
/// is itself a member it also concedes to the rival and throws all its other
/// games. When the loser is not a member its games stay as played. The
/// witness uses as few of those moves as it needs, largest swing first.
pub fn rr_destructive(loser: Team, t: &Tournament, coalition: &Coalition, model: &ScoringModel) -> Result<DestructiveAnswer> {
    check_model(t, model)?;
    t.check_team(loser)?;
    t.check_coalition(coalition)?;
    let m = t.teams();
    let n = model.total();
    let scores = t.copeland_scores();
    let loser_in = coalition.contains(loser);
    let loser_points = if loser_in { 0 } else { scores[loser] };

    let mut best: Option<(i64, Team, Points)> = None;
    for rival in (0..m).filter(|&r| r != loser) {
        let top: Points = (0..m)
            .filter(|&j| j != rival)
            .map(|j| if coalition.contains(j) { n } else { t.points(rival, j) })
            .sum();
        let margin = i64::from(top) - i64::from(loser_points);
        if best.is_none_or(|(b, _, _)| margin > b) {
            best = Some((margin, rival, top));
        }
        if margin > 0 {
            break;
        }
    }
    let Some((margin, rival, rival_points)) = best else {
        return Ok(DestructiveAnswer { decision: Decision::no(), rival: None, rival_points: 0, loser_points });
    };
    if margin <= 0 {
        return Ok(DestructiveAnswer { decision: Decision::no(), rival: Some(rival), rival_points, loser_points });
    }

    // (swing in rival-minus-loser, move)
    let mut options: Vec<(Points, Move)> = Vec::new();
    for j in (0..m).filter(|&j| j != rival && coalition.contains(j)) {
        let give = t.points(j, rival);
        if give == 0 {
            continue;
        }
        let mv = Move { thrower: j, opponent: rival, thrower_points: 0, opponent_points: n };
        let swing = if j == loser { 2 * give } else { give };
        options.push((swing, mv));
    }
    if loser_in {
        for k in (0..m).filter(|&k| k != rival && k != loser) {
            let give = t.points(loser, k);
            if give > 0 {
                options.push((give, Move { thrower: loser, opponent: k, thrower_points: 0, opponent_points: n }));
            }
        }
    }
    options.sort_by_key(|&(swing, mv)| (std::cmp::Reverse(swing), mv));
    let mut gap = i64::from(scores[rival]) - i64::from(scores[loser]);
    let mut plan = ManipulationPlan::new();
    for (swing, mv) in options {
        if gap > 0 {
            break;
        }
        gap += i64::from(swing);
        plan.push(mv)?;
    }
    Ok(DestructiveAnswer {
        decision: Decision::yes(rival, plan),
        rival: Some(rival),
        rival_points,
        loser_points,
    })
}
