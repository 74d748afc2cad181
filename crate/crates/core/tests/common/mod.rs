//! Generators and brute-force references shared by the integration suites.
//!
//! The references here deliberately avoid the library's algorithms: they work
//! on a plain boolean matrix, try every subset of coalition wins by bitmask and
//! replay the competition directly.

#![allow(dead_code, clippy::needless_range_loop)]

use matchfix::flow::FlowNetwork;
use matchfix::{Coalition, Team, Tournament};
use rand::seq::index::sample;
use rand::Rng;

pub type Wins = Vec<Vec<bool>>;

pub fn random_tournament(rng: &mut impl Rng, m: usize) -> Tournament {
    let mut arcs = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            arcs.push(if rng.gen_bool(0.5) { (i, j) } else { (j, i) });
        }
    }
    Tournament::from_arcs(m, &arcs).unwrap()
}

pub fn random_coalition(rng: &mut impl Rng, m: usize, size: usize) -> Coalition {
    Coalition::new(m, sample(rng, m, size)).unwrap()
}

/// Coalition of uniformly random size between 0 and `max`.
pub fn any_coalition(rng: &mut impl Rng, m: usize, max: usize) -> Coalition {
    let size = rng.gen_range(0..=max);
    random_coalition(rng, m, size)
}

pub fn random_order(rng: &mut impl Rng, m: usize) -> Vec<Team> {
    sample(rng, m, m).into_vec()
}

pub fn wins(t: &Tournament) -> Wins {
    let m = t.teams();
    (0..m).map(|i| (0..m).map(|j| i != j && t.beats(i, j)).collect()).collect()
}

/// Every game a coalition member wins, as `(member, opponent)`.
pub fn member_wins(w: &Wins, members: &[Team]) -> Vec<(Team, Team)> {
    let mut out = Vec::new();
    for &i in members {
        for j in 0..w.len() {
            if w[i][j] {
                out.push((i, j));
            }
        }
    }
    out
}

/// For each team, the fewest reversals of `edges` after which `winners`
/// names it; `None` if no subset does.
pub fn min_flips_per_team(w: &Wins, edges: &[(Team, Team)], winners: impl Fn(&Wins) -> Vec<Team>) -> Vec<Option<usize>> {
    assert!(edges.len() <= 22, "brute force over {} edges", edges.len());
    let mut best = vec![None::<usize>; w.len()];
    let mut scratch = w.clone();
    for mask in 0u32..(1 << edges.len()) {
        let flips = mask.count_ones() as usize;
        for (k, &(a, b)) in edges.iter().enumerate() {
            let on = mask >> k & 1 == 1;
            scratch[a][b] = !on;
            scratch[b][a] = on;
        }
        for v in winners(&scratch) {
            if best[v].is_none_or(|c| flips < c) {
                best[v] = Some(flips);
            }
        }
    }
    best
}

pub fn cup_champion(w: &Wins, leaves: &[Team]) -> Team {
    let mut round = leaves.to_vec();
    while round.len() > 1 {
        round = round.chunks(2).map(|p| if w[p[0]][p[1]] { p[0] } else { p[1] }).collect();
    }
    round[0]
}

pub fn score_leaders(w: &Wins) -> Vec<Team> {
    let scores: Vec<usize> = w.iter().map(|row| row.iter().filter(|&&b| b).count()).collect();
    let top = *scores.iter().max().unwrap();
    (0..w.len()).filter(|&v| scores[v] == top).collect()
}

/// Ranked reseeding: survivors sorted by seed, best plays worst.
pub fn reseed_champion(w: &Wins, seeds: &[Team]) -> Team {
    let mut alive = seeds.to_vec();
    while alive.len() > 1 {
        let n = alive.len();
        let mut next: Vec<Team> = (0..n / 2)
            .map(|k| {
                let (a, b) = (alive[k], alive[n - 1 - k]);
                if w[a][b] {
                    a
                } else {
                    b
                }
            })
            .collect();
        next.sort_by_key(|t| seeds.iter().position(|s| s == t).unwrap());
        alive = next;
    }
    alive[0]
}

/// Double elimination without a bracket reset. `upset(w, l)` reverses a game.
/// Winners' round 1 pairs adjacent leaves; the round-1 losers pair off
/// adjacently; from round 2 on, the k-th losers'-bracket survivor meets the
/// k-th team dropping from the winners' bracket, and the survivors then pair
/// off again until a single team remains to meet the winners' champion.
pub fn delim_champion(w: &Wins, leaves: &[Team], mut upset: impl FnMut(Team, Team) -> bool) -> Team {
    let mut play = |a: Team, b: Team| -> (Team, Team) {
        let (x, y) = if w[a][b] { (a, b) } else { (b, a) };
        if upset(x, y) {
            (y, x)
        } else {
            (x, y)
        }
    };
    let rounds = leaves.len().trailing_zeros();
    let mut upper = leaves.to_vec();
    let mut lower = Vec::new();
    for r in 1..=rounds {
        let results: Vec<(Team, Team)> = upper.chunks(2).map(|p| play(p[0], p[1])).collect();
        upper = results.iter().map(|g| g.0).collect();
        let dropped: Vec<Team> = results.iter().map(|g| g.1).collect();
        if r == 1 {
            lower = if dropped.len() == 1 { dropped } else { dropped.chunks(2).map(|p| play(p[0], p[1]).0).collect() };
        } else {
            lower = lower.iter().zip(&dropped).map(|(&a, &b)| play(a, b).0).collect();
            if r < rounds {
                lower = lower.chunks(2).map(|p| play(p[0], p[1]).0).collect();
            }
        }
    }
    play(upper[0], lower[0]).0
}

/// Fewest upsets, each by a coalition member over its fair loser, that crown
/// each team in double elimination.
pub fn delim_min_per_team(w: &Wins, leaves: &[Team], coalition: &Coalition) -> Vec<Option<usize>> {
    let games = 2 * leaves.len() - 2;
    let mut best = vec![None::<usize>; w.len()];
    for mask in 0u32..(1 << games) {
        let mut index = 0;
        let mut legal = true;
        let champion = delim_champion(w, leaves, |winner, _| {
            let on = mask >> index & 1 == 1;
            index += 1;
            legal &= !on || coalition.contains(winner);
            on
        });
        assert_eq!(index, games);
        let n = mask.count_ones() as usize;
        if legal && best[champion].is_none_or(|c| n < c) {
            best[champion] = Some(n);
        }
    }
    best
}

pub fn random_network(rng: &mut impl Rng) -> FlowNetwork {
    let nodes = rng.gen_range(2..=5);
    let mut net = FlowNetwork::new(nodes, 0, 1).unwrap();
    let arcs = rng.gen_range(1..=12);
    while net.arcs().len() < arcs {
        let from = rng.gen_range(0..nodes);
        let to = rng.gen_range(0..nodes);
        if from == to || to == 0 || from == 1 {
            continue;
        }
        let upper = rng.gen_range(0..=3);
        let lower = if rng.gen_bool(0.4) { rng.gen_range(0..=upper) } else { 0 };
        net.add_arc(from, to, lower, upper, rng.gen_range(0..=3)).unwrap();
    }
    net
}

/// Cheapest integral flow meeting every bound with conservation away from
/// the source and sink, by exhaustive backtracking.
pub fn brute_min_cost(net: &FlowNetwork) -> Option<i64> {
    let arcs = net.arcs();
    let mut last = vec![None::<usize>; net.nodes()];
    for (k, a) in arcs.iter().enumerate() {
        last[a.from] = Some(k);
        last[a.to] = Some(k);
    }
    let mut balance = vec![0i64; net.nodes()];
    let mut best = None;
    search(net, &last, 0, 0, &mut balance, &mut best);
    best
}

fn search(net: &FlowNetwork, last: &[Option<usize>], k: usize, cost: i64, balance: &mut Vec<i64>, best: &mut Option<i64>) {
    let arcs = net.arcs();
    if k == arcs.len() {
        let closed = (0..net.nodes()).all(|v| v == net.source() || v == net.sink() || balance[v] == 0);
        if closed && best.is_none_or(|b| cost < b) {
            *best = Some(cost);
        }
        return;
    }
    let a = &arcs[k];
    for f in a.lower..=a.upper {
        balance[a.from] -= f;
        balance[a.to] += f;
        let settled = [a.from, a.to]
            .iter()
            .all(|&v| v == net.source() || v == net.sink() || last[v] != Some(k) || balance[v] == 0);
        if settled {
            search(net, last, k + 1, cost + f * a.cost, balance, best);
        }
        balance[a.from] += f;
        balance[a.to] -= f;
    }
}
