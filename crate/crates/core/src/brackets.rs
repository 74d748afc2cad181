//! Ranked-reseeding cups and double-elimination brackets with a coalition of
//! bounded size.
//!
//! Neither format has a known polynomial algorithm for arbitrary coalitions,
//! but each round contains at most `|C|` games a coalition member can throw,
//! so replaying the bracket once per combination of throw decisions visits at
//! most `(2^|C|)^rounds` scenarios. The search below walks those scenarios
//! depth first: a scenario is a sequence of throw/no-throw decisions, one per
//! coalition game in the order the games are played, and the bracket is
//! simply replayed for each sequence.
//!
//! Double-elimination layout (for `m = 2^k` teams):
//!
//! - winners' bracket round 1 pairs adjacent leaves; round `r` pairs the
//!   round `r-1` winners in order;
//! - losers' round 1 pairs the winners' round 1 losers in order;
//! - for `r >= 2`, losers' round `2(r-1)` pits the `i`-th losers' survivor
//!   against the `i`-th loser of winners' round `r`, and (except after the
//!   last winners' round) losers' round `2r-1` pairs the survivors again;
//! - the grand final is one game between the two bracket winners, with no
//!   reset.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tournament::{Coalition, ManipulationPlan, Move, Team, Tournament};

pub const DEFAULT_COALITION_BOUND: usize = 4;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stage {
    /// Single-elimination round (1-based), or a winners'-bracket round.
    Round(usize),
    /// Losers'-bracket round (1-based).
    Losers(usize),
    GrandFinal,
}

/// One scheduled game: its stage and its position within the stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct GameRef {
    pub stage: Stage,
    pub slot: usize,
}

impl fmt::Display for GameRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.stage {
            Stage::Round(r) => write!(f, "round {r} game {}", self.slot),
            Stage::Losers(r) => write!(f, "losers round {r} game {}", self.slot),
            Stage::GrandFinal => write!(f, "grand final"),
        }
    }
}

/// A coalition member losing a scheduled game it would have won.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct ScheduledThrow {
    pub game: GameRef,
    pub thrower: Team,
    pub opponent: Team,
}

impl fmt::Display for ScheduledThrow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "team {} throws to team {} ({})", self.thrower, self.opponent, self.game)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BracketAnswer {
    pub achievable: bool,
    pub champion: Option<Team>,
    /// Throws in the order the games are played.
    pub throws: Vec<ScheduledThrow>,
    /// Scenarios replayed by the search.
    pub leaves_visited: u64,
}

impl BracketAnswer {
    /// The throws as tournament-level reversals, when no two throws share a
    /// pairing of teams.
    pub fn to_plan(&self) -> Option<ManipulationPlan> {
        ManipulationPlan::from_moves(self.throws.iter().map(|th| Move::flip(th.thrower, th.opponent))).ok()
    }
}

fn check_bound(coalition: &Coalition, bound: usize) -> Result<()> {
    if coalition.len() > bound {
        return Err(Error::CoalitionTooLarge { size: coalition.len(), bound });
    }
    Ok(())
}

fn check_fair(t: &Tournament, teams: usize, coalition: &Coalition) -> Result<()> {
    if t.teams() != teams {
        return Err(Error::MalformedField(format!("field has {teams} teams, tournament has {}", t.teams())));
    }
    if !t.is_win_loss() {
        return Err(Error::RequiresWinLoss);
    }
    t.check_coalition(coalition)
}

fn check_permutation(teams: &[Team]) -> std::result::Result<(), String> {
    let m = teams.len();
    if m == 0 || !m.is_power_of_two() {
        return Err(format!("{m} teams is not a power of two"));
    }
    let mut seen = vec![false; m];
    for &t in teams {
        if t >= m || std::mem::replace(&mut seen[t], true) {
            return Err(format!("team {t} is out of range or repeated"));
        }
    }
    Ok(())
}

/// Decision source for one replay. Positions past the end of the script
/// default to "play fair" and extend it.
struct Script {
    decisions: Vec<bool>,
    cursor: usize,
    throws: Vec<ScheduledThrow>,
}

impl Script {
    fn new(decisions: Vec<bool>) -> Self {
        Self { decisions, cursor: 0, throws: Vec::new() }
    }

    fn decide(&mut self, game: GameRef, winner: Team, loser: Team) -> bool {
        if self.cursor == self.decisions.len() {
            self.decisions.push(false);
        }
        let throw = self.decisions[self.cursor];
        self.cursor += 1;
        if throw {
            self.throws.push(ScheduledThrow { game, thrower: winner, opponent: loser });
        }
        throw
    }
}

/// Replays `run` for every decision sequence in depth-first order ("play
/// fair" before "throw") until one crowns `target`.
fn depth_first(target: Team, mut run: impl FnMut(&mut Script) -> Option<Team>) -> BracketAnswer {
    let mut decisions = Vec::new();
    let mut leaves = 0;
    loop {
        let mut script = Script::new(decisions);
        let champion = run(&mut script);
        leaves += 1;
        if champion == Some(target) {
            return BracketAnswer {
                achievable: true,
                champion,
                throws: script.throws,
                leaves_visited: leaves,
            };
        }
        decisions = script.decisions;
        decisions.truncate(script.cursor);
        while decisions.last() == Some(&true) {
            decisions.pop();
        }
        match decisions.last_mut() {
            Some(last) => *last = true,
            None => {
                return BracketAnswer { achievable: false, champion: None, throws: Vec::new(), leaves_visited: leaves };
            }
        }
    }
}

/// Teams in rank order for a cup that re-pairs survivors best against worst
/// every round.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeededField {
    seeds: Vec<Team>,
    rank: Vec<usize>,
}

/// Survivors entering a round, best seed first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoundState {
    pub round: usize,
    pub survivors: Vec<Team>,
}

impl RoundState {
    /// `(better seed, worse seed)` for each game, best seed's game first.
    pub fn pairings(&self) -> Vec<(Team, Team)> {
        let n = self.survivors.len();
        (0..n / 2).map(|k| (self.survivors[k], self.survivors[n - 1 - k])).collect()
    }

    pub fn champion(&self) -> Option<Team> {
        (self.survivors.len() == 1).then(|| self.survivors[0])
    }
}

impl SeededField {
    /// `seeds[0]` is the top seed.
    pub fn new(seeds: Vec<Team>) -> Result<Self> {
        check_permutation(&seeds).map_err(Error::MalformedField)?;
        let mut rank = vec![0; seeds.len()];
        for (r, &t) in seeds.iter().enumerate() {
            rank[t] = r;
        }
        Ok(Self { seeds, rank })
    }

    pub fn seeds(&self) -> &[Team] {
        &self.seeds
    }

    pub fn teams(&self) -> usize {
        self.seeds.len()
    }

    pub fn rounds(&self) -> usize {
        self.seeds.len().trailing_zeros() as usize
    }

    pub fn first_round(&self) -> RoundState {
        RoundState { round: 1, survivors: self.seeds.clone() }
    }

    fn next_state(&self, state: &RoundState, mut winners: Vec<Team>) -> RoundState {
        winners.sort_by_key(|&t| self.rank[t]);
        RoundState { round: state.round + 1, survivors: winners }
    }

    /// Fair champion.
    pub fn simulate(&self, t: &Tournament) -> Team {
        let mut state = self.first_round();
        while state.champion().is_none() {
            let winners = state.pairings().into_iter().map(|(a, b)| if t.beats(a, b) { a } else { b }).collect();
            state = self.next_state(&state, winners);
        }
        state.survivors[0]
    }

    fn play(&self, t: &Tournament, coalition: &Coalition, target: Team, script: &mut Script) -> Option<Team> {
        let mut state = self.first_round();
        while state.champion().is_none() {
            let mut winners = Vec::with_capacity(state.survivors.len() / 2);
            for (slot, (a, b)) in state.pairings().into_iter().enumerate() {
                let (w, l) = if t.beats(a, b) { (a, b) } else { (b, a) };
                let game = GameRef { stage: Stage::Round(state.round), slot };
                let thrown = coalition.contains(w) && script.decide(game, w, l);
                winners.push(if thrown { l } else { w });
            }
            if !winners.contains(&target) {
                return None;
            }
            state = self.next_state(&state, winners);
        }
        state.champion()
    }
}

/// Plays one reseeded round; `throws[k]` flags the `k`-th pairing as thrown
/// by its fair winner.
pub fn simulate_round(
    field: &SeededField,
    state: &RoundState,
    throws: &[bool],
    t: &Tournament,
    coalition: &Coalition,
) -> Result<RoundState> {
    let pairings = state.pairings();
    if throws.len() != pairings.len() {
        return Err(Error::IllegalThrow(format!(
            "{} throw flags for {} games",
            throws.len(),
            pairings.len()
        )));
    }
    let mut winners = Vec::with_capacity(pairings.len());
    for (&(a, b), &thrown) in pairings.iter().zip(throws) {
        let (w, l) = if t.beats(a, b) { (a, b) } else { (b, a) };
        if thrown && !coalition.contains(w) {
            return Err(Error::IllegalThrow(format!("team {w} is not a coalition member")));
        }
        winners.push(if thrown { l } else { w });
    }
    Ok(field.next_state(state, winners))
}

/// Whether a coalition of at most `bound` teams can make `target` win a
/// ranked-reseeding cup.
pub fn ranked_reseed_constructive(
    target: Team,
    field: &SeededField,
    t: &Tournament,
    coalition: &Coalition,
    bound: usize,
) -> Result<BracketAnswer> {
    check_bound(coalition, bound)?;
    check_fair(t, field.teams(), coalition)?;
    t.check_team(target)?;
    Ok(depth_first(target, |script| field.play(t, coalition, target, script)))
}

/// A double-elimination bracket over a leaf order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleElimBracket {
    leaves: Vec<Team>,
}

/// Result of one double-elimination replay.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleElimOutcome {
    pub champion: Team,
    /// Losses per team at the end; the champion has at most one.
    pub losses: Vec<u8>,
    pub games: usize,
}

impl DoubleElimBracket {
    pub fn new(leaves: Vec<Team>) -> Result<Self> {
        check_permutation(&leaves).map_err(Error::MalformedBracket)?;
        if leaves.len() < 2 {
            return Err(Error::MalformedBracket("double elimination needs at least two teams".into()));
        }
        Ok(Self { leaves })
    }

    pub fn leaves(&self) -> &[Team] {
        &self.leaves
    }

    pub fn teams(&self) -> usize {
        self.leaves.len()
    }

    /// Games in a full replay: `m - 1` winners', `m - 2` losers', one final.
    pub fn game_count(&self) -> usize {
        2 * self.teams() - 2
    }

    /// Replays the bracket. `decide(game, fair_winner, fair_loser)` returns
    /// whether the fair result is overturned. Returns `None` as soon as
    /// `watch` is eliminated.
    pub fn play(
        &self,
        t: &Tournament,
        watch: Option<Team>,
        mut decide: impl FnMut(GameRef, Team, Team) -> bool,
    ) -> Option<DoubleElimOutcome> {
        let m = self.teams();
        let rounds = m.trailing_zeros() as usize;
        let mut losses = vec![0u8; m];
        let mut games = 0;
        let mut game = |stage: Stage, slot: usize, a: Team, b: Team, losses: &mut Vec<u8>| {
            let (w, l) = if t.beats(a, b) { (a, b) } else { (b, a) };
            games += 1;
            let (w, l) = if decide(GameRef { stage, slot }, w, l) { (l, w) } else { (w, l) };
            losses[l] += 1;
            (w, l)
        };
        let out = |losses: &[u8]| watch.is_some_and(|v| losses[v] >= 2);

        let mut upper = self.leaves.clone();
        let mut lower: Vec<Team> = Vec::new();
        for r in 1..=rounds {
            let mut next = Vec::with_capacity(upper.len() / 2);
            let mut dropped = Vec::with_capacity(upper.len() / 2);
            for (slot, pair) in upper.chunks(2).enumerate() {
                let (w, l) = game(Stage::Round(r), slot, pair[0], pair[1], &mut losses);
                next.push(w);
                dropped.push(l);
            }
            upper = next;
            if r == 1 {
                if dropped.len() == 1 {
                    lower = dropped;
                } else {
                    lower = dropped
                        .chunks(2)
                        .enumerate()
                        .map(|(slot, p)| game(Stage::Losers(1), slot, p[0], p[1], &mut losses).0)
                        .collect();
                }
            } else {
                lower = lower
                    .iter()
                    .zip(&dropped)
                    .enumerate()
                    .map(|(slot, (&a, &b))| game(Stage::Losers(2 * (r - 1)), slot, a, b, &mut losses).0)
                    .collect();
                if r < rounds {
                    lower = lower
                        .chunks(2)
                        .enumerate()
                        .map(|(slot, p)| game(Stage::Losers(2 * r - 1), slot, p[0], p[1], &mut losses).0)
                        .collect();
                }
            }
            if out(&losses) {
                return None;
            }
        }
        let (champion, _) = game(Stage::GrandFinal, 0, upper[0], lower[0], &mut losses);
        if out(&losses) {
            return None;
        }
        Some(DoubleElimOutcome { champion, losses, games })
    }

    pub fn simulate(&self, t: &Tournament) -> Team {
        self.play(t, None, |_, _, _| false).expect("nobody is watched").champion
    }

    /// Replays with the listed throws; each must name the fair winner of its
    /// game, be a coalition member, and every throw must be used.
    pub fn replay(&self, t: &Tournament, coalition: &Coalition, throws: &[ScheduledThrow]) -> Result<DoubleElimOutcome> {
        check_fair(t, self.teams(), coalition)?;
        let mut used = 0;
        let mut bad = None;
        let outcome = self
            .play(t, None, |game, w, l| match throws.iter().find(|th| th.game == game) {
                Some(th) => {
                    if th.thrower != w || th.opponent != l || !coalition.contains(w) {
                        bad.get_or_insert(*th);
                    }
                    used += 1;
                    true
                }
                None => false,
            })
            .expect("nobody is watched");
        if let Some(th) = bad {
            return Err(Error::IllegalThrow(format!("{th} does not match the game played")));
        }
        if used != throws.len() {
            return Err(Error::IllegalThrow("throw names a game that is never played".into()));
        }
        Ok(outcome)
    }
}

/// Whether a coalition of at most `bound` teams can make `target` win a
/// double-elimination bracket. Each member may throw any game it would win;
/// its second loss eliminates it.
pub fn double_elim_constructive(
    target: Team,
    bracket: &DoubleElimBracket,
    t: &Tournament,
    coalition: &Coalition,
    bound: usize,
) -> Result<BracketAnswer> {
    check_bound(coalition, bound)?;
    check_fair(t, bracket.teams(), coalition)?;
    t.check_team(target)?;
    Ok(depth_first(target, |script| {
        bracket
            .play(t, Some(target), |game, w, l| coalition.contains(w) && script.decide(game, w, l))
            .map(|o| o.champion)
    }))
}
