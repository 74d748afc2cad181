//! Fixed single-elimination cups.
//!
//! The cup is a perfect binary tree over a seeding of the teams. Working up
//! from the leaves, a team can win a sub-election iff it can win its own half
//! and then beat some possible winner of the other half, either fairly or
//! because that opponent is a coalition member who throws the game. Each pair
//! of teams can only ever meet at one node (the one where their halves join),
//! so the whole table costs at most `m(m-1)/2` pairwise comparisons.
//!
//! Alongside the possible-winner sets the table keeps, for every team and
//! level, the fewest throws that get the team through that sub-election:
//!
//! ```text
//! cost(v, 0) = 0
//! cost(v, l) = cost(v, l-1) + min over beatable u on the other side of
//!              cost(u, l-1) + [u must throw to v]
//! ```
//!
//! The two halves are disjoint sets of games, so the costs simply add.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::tournament::{Coalition, Decision, ManipulationPlan, MinimalPlan, Move, Team, Tournament};

/// A sub-election: level 0 holds the leaves, the root sits at
/// [`CupTree::height`]. `index` counts nodes left to right within a level.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NodeId {
    pub level: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CupTree {
    leaves: Vec<Team>,
    position: Vec<usize>,
    height: usize,
}

impl CupTree {
    /// Builds a cup over `leaves`, which must be a permutation of `0..m` with
    /// `m` a power of two. Byes are not supported.
    pub fn new(leaves: Vec<Team>) -> Result<Self> {
        let m = leaves.len();
        if m == 0 || !m.is_power_of_two() {
            return Err(Error::MalformedTree(format!("{m} leaves is not a power of two")));
        }
        let mut position = vec![usize::MAX; m];
        for (p, &team) in leaves.iter().enumerate() {
            if team >= m {
                return Err(Error::MalformedTree(format!("leaf {team} out of range")));
            }
            if position[team] != usize::MAX {
                return Err(Error::MalformedTree(format!("team {team} appears twice")));
            }
            position[team] = p;
        }
        Ok(Self { leaves, position, height: m.trailing_zeros() as usize })
    }

    /// Seeding `0, 1, ..., m-1`.
    pub fn identity(m: usize) -> Result<Self> {
        Self::new((0..m).collect())
    }

    pub fn leaves(&self) -> &[Team] {
        &self.leaves
    }

    pub fn teams(&self) -> usize {
        self.leaves.len()
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn root(&self) -> NodeId {
        NodeId { level: self.height, index: 0 }
    }

    /// The sub-election at `level` whose subtree contains `team`.
    pub fn node_of(&self, team: Team, level: usize) -> NodeId {
        NodeId { level, index: self.position[team] >> level }
    }

    /// Teams in the subtree below `node`, in leaf order.
    pub fn subtree(&self, node: NodeId) -> &[Team] {
        let width = 1 << node.level;
        &self.leaves[node.index * width..(node.index + 1) * width]
    }

    fn check_node(&self, node: NodeId) -> Result<()> {
        if node.level > self.height || node.index >= self.teams() >> node.level {
            return Err(Error::MalformedTree(format!(
                "no node at level {} index {}",
                node.level, node.index
            )));
        }
        Ok(())
    }

    fn check_tournament(&self, t: &Tournament) -> Result<()> {
        if t.teams() != self.teams() {
            return Err(Error::MalformedTree(format!(
                "cup has {} leaves but the tournament has {} teams",
                self.teams(),
                t.teams()
            )));
        }
        if !t.is_win_loss() {
            return Err(Error::RequiresWinLoss);
        }
        Ok(())
    }

    /// Plays the cup out with every game decided by `t`.
    pub fn simulate(&self, t: &Tournament) -> Team {
        let mut round = self.leaves.clone();
        while round.len() > 1 {
            round = round
                .chunks(2)
                .map(|p| if t.beats(p[0], p[1]) { p[0] } else { p[1] })
                .collect();
        }
        round[0]
    }
}

#[derive(Debug, Clone, Copy)]
struct Choice {
    opponent: Team,
    thrown: bool,
}

/// Possible winners and minimal manipulation counts for every sub-election
/// of a cup.
#[derive(Debug, Clone)]
pub struct WinnerTable {
    tree: CupTree,
    // cost[level][team]; None when the team cannot win its level-`level` node
    cost: Vec<Vec<Option<u32>>>,
    // choice[level][team], meaningful where cost is Some and level >= 1
    choice: Vec<Vec<Choice>>,
    comparisons: u64,
}

impl WinnerTable {
    pub fn build(tree: &CupTree, t: &Tournament, coalition: &Coalition) -> Result<Self> {
        tree.check_tournament(t)?;
        t.check_coalition(coalition)?;
        let m = tree.teams();
        let none = Choice { opponent: usize::MAX, thrown: false };
        let mut cost = vec![vec![Some(0u32); m]];
        let mut choice = vec![vec![none; m]];
        let mut comparisons = 0u64;

        for level in 1..=tree.height {
            let below = &cost[level - 1];
            let mut here: Vec<Option<u32>> = vec![None; m];
            let mut picked = vec![none; m];
            // best[team] = (cost of beating the cheapest opponent, opponent, thrown)
            let mut best: Vec<Option<(u32, Team, bool)>> = vec![None; m];
            let half = 1 << (level - 1);
            for node in 0..m >> level {
                let span = &tree.leaves[node << level..(node + 1) << level];
                let (left, right) = span.split_at(half);
                for &i in left.iter().filter(|&&i| below[i].is_some()) {
                    for &j in right.iter().filter(|&&j| below[j].is_some()) {
                        comparisons += 1;
                        let (ci, cj) = (below[i].unwrap(), below[j].unwrap());
                        let (winner, loser) = if t.beats(i, j) { (i, j) } else { (j, i) };
                        let (cw, cl) = if winner == i { (ci, cj) } else { (cj, ci) };
                        offer(&mut best[winner], cl, loser, false);
                        if coalition.contains(winner) {
                            offer(&mut best[loser], cw + 1, winner, true);
                        }
                    }
                }
            }
            for team in 0..m {
                if let (Some(own), Some((extra, opponent, thrown))) = (below[team], best[team]) {
                    here[team] = Some(own + extra);
                    picked[team] = Choice { opponent, thrown };
                }
            }
            cost.push(here);
            choice.push(picked);
        }
        Ok(Self { tree: tree.clone(), cost, choice, comparisons })
    }

    pub fn tree(&self) -> &CupTree {
        &self.tree
    }

    /// Pairwise comparisons made while building the table.
    pub fn comparisons(&self) -> u64 {
        self.comparisons
    }

    /// Possible winners of `node`, in increasing team order.
    pub fn winners_at(&self, node: NodeId) -> Result<Vec<Team>> {
        self.tree.check_node(node)?;
        let mut out: Vec<Team> = self
            .tree
            .subtree(node)
            .iter()
            .copied()
            .filter(|&v| self.cost[node.level][v].is_some())
            .collect();
        out.sort_unstable();
        Ok(out)
    }

    pub fn root_winners(&self) -> Vec<Team> {
        self.winners_at(self.tree.root()).expect("root exists")
    }

    /// Fewest throws that make `team` the winner of its sub-election at
    /// `level`.
    pub fn min_cost(&self, team: Team, level: usize) -> Option<u32> {
        self.cost.get(level)?.get(team).copied().flatten()
    }

    /// A plan of exactly [`min_cost`](Self::min_cost) throws that carries
    /// `team` through its sub-election at `level`.
    pub fn witness(&self, team: Team, level: usize) -> Option<ManipulationPlan> {
        self.min_cost(team, level)?;
        let mut moves = Vec::new();
        self.collect(team, level, &mut moves);
        Some(ManipulationPlan::from_moves(moves).expect("subtrees are disjoint, so no game repeats"))
    }

    fn collect(&self, team: Team, level: usize, moves: &mut Vec<Move>) {
        if level == 0 {
            return;
        }
        let Choice { opponent, thrown } = self.choice[level][team];
        self.collect(team, level - 1, moves);
        self.collect(opponent, level - 1, moves);
        if thrown {
            moves.push(Move::flip(opponent, team));
        }
    }
}

// Keeps the cheaper offer; equal costs go to the lower team index.
fn offer(slot: &mut Option<(u32, Team, bool)>, cost: u32, opponent: Team, thrown: bool) {
    match slot {
        Some((c, o, _)) if (*c, *o) <= (cost, opponent) => {}
        _ => *slot = Some((cost, opponent, thrown)),
    }
}

pub fn possible_winners(tree: &CupTree, node: NodeId, t: &Tournament, coalition: &Coalition) -> Result<Vec<Team>> {
    tree.check_node(node)?;
    WinnerTable::build(tree, t, coalition)?.winners_at(node)
}

/// Whether `target` can be made the cup winner; the witness is a minimum one.
pub fn cup_constructive(target: Team, tree: &CupTree, t: &Tournament, coalition: &Coalition) -> Result<Decision> {
    match cup_min_manipulations(target, tree, t, coalition) {
        Ok(best) => Ok(Decision::yes(best.champion, best.plan)),
        Err(Error::NotAchievable) => Ok(Decision::no()),
        Err(e) => Err(e),
    }
}

pub fn cup_min_manipulations(
    target: Team,
    tree: &CupTree,
    t: &Tournament,
    coalition: &Coalition,
) -> Result<MinimalPlan> {
    t.check_team(target)?;
    let table = WinnerTable::build(tree, t, coalition)?;
    min_plan(&table, target)
}

fn min_plan(table: &WinnerTable, target: Team) -> Result<MinimalPlan> {
    let root = table.tree.height;
    let count = table.min_cost(target, root).ok_or(Error::NotAchievable)?;
    let plan = table.witness(target, root).ok_or(Error::NotAchievable)?;
    Ok(MinimalPlan { count: count as usize, champion: target, plan })
}

/// Whether someone other than `loser` can be made the cup winner.
pub fn cup_destructive(loser: Team, tree: &CupTree, t: &Tournament, coalition: &Coalition) -> Result<Decision> {
    match cup_destructive_min(loser, tree, t, coalition) {
        Ok(best) => Ok(Decision::yes(best.champion, best.plan)),
        Err(Error::NotAchievable) => Ok(Decision::no()),
        Err(e) => Err(e),
    }
}

/// Cheapest way to crown anyone but `loser`; ties go to the lowest team index.
pub fn cup_destructive_min(
    loser: Team,
    tree: &CupTree,
    t: &Tournament,
    coalition: &Coalition,
) -> Result<MinimalPlan> {
    t.check_team(loser)?;
    let table = WinnerTable::build(tree, t, coalition)?;
    let root = tree.height;
    let best = (0..tree.teams())
        .filter(|&u| u != loser)
        .filter_map(|u| table.min_cost(u, root).map(|c| (c, u)))
        .min()
        .ok_or(Error::NotAchievable)?;
    min_plan(&table, best.1)
}

/// Root possible winners as a set, for callers that only need membership.
pub fn root_winner_set(tree: &CupTree, t: &Tournament, coalition: &Coalition) -> Result<BTreeSet<Team>> {
    Ok(WinnerTable::build(tree, t, coalition)?.root_winners().into_iter().collect())
}
