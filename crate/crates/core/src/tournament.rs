//! Tournament data model: results, scoring models, coalitions and the
//! manipulation plans the rest of the crate produces.
//!
//! A game between `i` and `j` stores the points each side earns in a fair
//! game. A manipulation replaces that outcome with one where one side (the
//! thrower, always a coalition member) earns no more and the other side earns
//! no less. Under win-loss scoring that is exactly reversing an arc the
//! thrower won.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};

/// Dense team index in `0..m`.
pub type Team = usize;

/// Points earned in a single game. Fractional models are scaled by the caller
/// (chess becomes `{0:2, 1:1, 2:0}`).
pub type Points = u32;

/// The set of admissible per-game outcomes `(a, b)` together with the declared
/// per-game total `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ScoringModel {
    total: Points,
    outcomes: BTreeSet<(Points, Points)>,
}

impl ScoringModel {
    pub fn new(total: Points, outcomes: impl IntoIterator<Item = (Points, Points)>) -> Result<Self> {
        let outcomes: BTreeSet<_> = outcomes.into_iter().collect();
        if outcomes.len() < 2 {
            return Err(Error::InvalidModel(
                "a scoring model needs at least two distinct outcomes".into(),
            ));
        }
        Ok(Self { total, outcomes })
    }

    /// `{(0,1), (1,0)}`.
    pub fn win_loss() -> Self {
        Self {
            total: 1,
            outcomes: [(0, 1), (1, 0)].into_iter().collect(),
        }
    }

    /// Chess scoring scaled to integers: `{(0,2), (1,1), (2,0)}`.
    pub fn chess() -> Self {
        Self::linear(2)
    }

    /// The full linear model `{(i, n-i) | 0 <= i <= n}`.
    pub fn linear(total: Points) -> Self {
        assert!(total > 0, "linear model needs a positive total");
        Self {
            total,
            outcomes: (0..=total).map(|i| (i, total - i)).collect(),
        }
    }

    pub fn total(&self) -> Points {
        self.total
    }

    pub fn outcomes(&self) -> impl Iterator<Item = (Points, Points)> + '_ {
        self.outcomes.iter().copied()
    }

    pub fn contains(&self, outcome: (Points, Points)) -> bool {
        self.outcomes.contains(&outcome)
    }

    pub fn is_win_loss(&self) -> bool {
        *self == Self::win_loss()
    }

    /// Granularity of the model: the gcd of every point value. Every legal
    /// outcome of a form-valid model is a multiple of this.
    pub fn unit(&self) -> Points {
        self.outcomes
            .iter()
            .flat_map(|&(a, b)| [a, b])
            .fold(self.total, gcd)
    }
}

fn gcd(a: Points, b: Points) -> Points {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// True iff the model is `{(i, n-i) | 0 <= i <= n}` up to a common integer
/// scale: every outcome sums to the declared total and, in units of the
/// model's gcd, every split of that total is present.
pub fn validate_model_form(model: &ScoringModel) -> bool {
    let n = model.total;
    if n == 0 || model.outcomes.iter().any(|&(a, b)| a + b != n) {
        return false;
    }
    let unit = model.unit();
    let steps = n / unit;
    model.outcomes.len() as Points == steps + 1
        && (0..=steps).all(|i| model.contains((i * unit, n - i * unit)))
}

/// A coalition-versus-outsider game re-expressed as an unplayed game: the
/// outsider banks its fair points, and the member's fair points become a
/// residual pot the game may split in either direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RestrictedGame {
    pub member_banked: Points,
    pub outsider_banked: Points,
    pub residual_total: Points,
    /// `(member, outsider)` splits of the residual pot.
    pub residual: Vec<(Points, Points)>,
}

impl RestrictedGame {
    pub fn is_fixed(&self) -> bool {
        self.residual.len() <= 1
    }
}

/// Restricts a form-valid model to the outcomes a coalition member may still
/// reach against an outsider: the member may drop anywhere from its fair
/// points down to zero and the outsider picks up the difference.
pub fn normalize_scoring(
    model: &ScoringModel,
    member_points: Points,
    outsider_points: Points,
) -> Result<RestrictedGame> {
    if !validate_model_form(model) {
        return Err(Error::ModelNotSupported);
    }
    if !model.contains((member_points, outsider_points)) {
        return Err(Error::InvalidOutcome(member_points, outsider_points));
    }
    let unit = model.unit();
    let residual = (0..=member_points / unit)
        .map(|k| (k * unit, member_points - k * unit))
        .collect();
    Ok(RestrictedGame {
        member_banked: 0,
        outsider_banked: outsider_points,
        residual_total: member_points,
        residual,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coalition {
    flags: Vec<bool>,
    members: Vec<Team>,
}

impl Coalition {
    pub fn new(teams: usize, members: impl IntoIterator<Item = Team>) -> Result<Self> {
        let mut flags = vec![false; teams];
        for team in members {
            if team >= teams {
                return Err(Error::UnknownTeam { team, teams });
            }
            flags[team] = true;
        }
        let members = flags
            .iter()
            .enumerate()
            .filter_map(|(i, &f)| f.then_some(i))
            .collect();
        Ok(Self { flags, members })
    }

    pub fn empty(teams: usize) -> Self {
        Self {
            flags: vec![false; teams],
            members: Vec::new(),
        }
    }

    pub fn everyone(teams: usize) -> Self {
        Self {
            flags: vec![true; teams],
            members: (0..teams).collect(),
        }
    }

    pub fn contains(&self, team: Team) -> bool {
        self.flags.get(team).copied().unwrap_or(false)
    }

    /// Members in increasing order.
    pub fn members(&self) -> &[Team] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// Size of the field this coalition was declared against.
    pub fn teams(&self) -> usize {
        self.flags.len()
    }

    pub fn is_subset_of(&self, other: &Coalition) -> bool {
        self.members.iter().all(|&t| other.contains(t))
    }
}

/// One reassigned game. The thrower is the side whose points go down and must
/// be a coalition member.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct Move {
    pub thrower: Team,
    pub opponent: Team,
    pub thrower_points: Points,
    pub opponent_points: Points,
}

impl Move {
    /// Win-loss reversal of the arc `thrower -> opponent`.
    pub fn flip(thrower: Team, opponent: Team) -> Self {
        Self {
            thrower,
            opponent,
            thrower_points: 0,
            opponent_points: 1,
        }
    }

    pub fn pair(&self) -> (Team, Team) {
        (self.thrower.min(self.opponent), self.thrower.max(self.opponent))
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "team {} throws to team {} ({}:{})",
            self.thrower, self.opponent, self.thrower_points, self.opponent_points
        )
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ManipulationPlan {
    moves: Vec<Move>,
}

impl ManipulationPlan {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_moves(moves: impl IntoIterator<Item = Move>) -> Result<Self> {
        let mut plan = Self::new();
        for mv in moves {
            plan.push(mv)?;
        }
        Ok(plan)
    }

    /// Appends a move; a game may only be reassigned once per plan.
    pub fn push(&mut self, mv: Move) -> Result<()> {
        if mv.thrower == mv.opponent {
            return Err(Error::IllegalMove(format!("team {} cannot play itself", mv.thrower)));
        }
        if self.moves.iter().any(|m| m.pair() == mv.pair()) {
            let (a, b) = mv.pair();
            return Err(Error::IllegalMove(format!("game {a}-{b} appears twice in the plan")));
        }
        self.moves.push(mv);
        Ok(())
    }

    pub fn extend(&mut self, other: &ManipulationPlan) -> Result<()> {
        for &mv in &other.moves {
            self.push(mv)?;
        }
        Ok(())
    }

    pub fn moves(&self) -> &[Move] {
        &self.moves
    }

    pub fn count(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    /// Moves in canonical (sorted) order.
    pub fn canonical(mut self) -> Self {
        self.moves.sort();
        self
    }

    /// Win-loss inverse: each flip reversed. Only legal when every opponent is
    /// itself a coalition member.
    pub fn reversed(&self) -> Self {
        Self {
            moves: self.moves.iter().map(|m| Move::flip(m.opponent, m.thrower)).collect(),
        }
    }
}

/// Yes/no answer with a witness plan when the answer is yes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decision {
    pub achievable: bool,
    /// The team crowned once `plan` is applied.
    pub champion: Option<Team>,
    pub plan: ManipulationPlan,
}

impl Decision {
    pub fn no() -> Self {
        Self { achievable: false, champion: None, plan: ManipulationPlan::new() }
    }

    pub fn yes(champion: Team, plan: ManipulationPlan) -> Self {
        Self { achievable: true, champion: Some(champion), plan }
    }
}

/// A minimum-size plan and the team it crowns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimalPlan {
    pub count: usize,
    pub champion: Team,
    pub plan: ManipulationPlan,
}

/// Games a coalition can throw: ordered pairs `(i, j)` where `i` is a member
/// and some admissible outcome gives `i` fewer points against `j`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ManipulableEdgeSet {
    entries: BTreeSet<(Team, Team)>,
}

impl ManipulableEdgeSet {
    pub fn contains(&self, edge: (Team, Team)) -> bool {
        self.entries.contains(&edge)
    }

    pub fn iter(&self) -> impl Iterator<Item = (Team, Team)> + '_ {
        self.entries.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_subset(&self, other: &ManipulableEdgeSet) -> bool {
        self.entries.is_subset(&other.entries)
    }
}

/// Complete results over `m` teams.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tournament {
    teams: usize,
    model: ScoringModel,
    // points[i * teams + j]: what i earns against j
    points: Vec<Points>,
}

impl Tournament {
    /// Win-loss tournament from a "does `i` beat `j`" predicate, consulted
    /// once per unordered pair with `i < j`.
    pub fn from_fn(teams: usize, mut beats: impl FnMut(Team, Team) -> bool) -> Self {
        let mut points = vec![0; teams * teams];
        for i in 0..teams {
            for j in i + 1..teams {
                if beats(i, j) {
                    points[i * teams + j] = 1;
                } else {
                    points[j * teams + i] = 1;
                }
            }
        }
        Self {
            teams,
            model: ScoringModel::win_loss(),
            points,
        }
    }

    /// Win-loss tournament from its arc list; every unordered pair must
    /// appear exactly once.
    pub fn from_arcs(teams: usize, arcs: &[(Team, Team)]) -> Result<Self> {
        let mut b = TournamentBuilder::new(teams, ScoringModel::win_loss());
        for &(w, l) in arcs {
            b.set(w, l, 1, 0)?;
        }
        b.build()
    }

    /// Teams listed strongest first; each beats everyone after it.
    pub fn linear_order(order: &[Team]) -> Self {
        let mut rank = vec![0; order.len()];
        for (r, &t) in order.iter().enumerate() {
            rank[t] = r;
        }
        Self::from_fn(order.len(), |i, j| rank[i] < rank[j])
    }

    pub fn teams(&self) -> usize {
        self.teams
    }

    pub fn model(&self) -> &ScoringModel {
        &self.model
    }

    pub fn is_win_loss(&self) -> bool {
        self.model.is_win_loss()
    }

    /// Points `i` earns against `j`.
    pub fn points(&self, i: Team, j: Team) -> Points {
        self.points[i * self.teams + j]
    }

    /// `i` beat `j` (strictly out-scored it).
    pub fn beats(&self, i: Team, j: Team) -> bool {
        self.points(i, j) > self.points(j, i)
    }

    pub fn check_team(&self, team: Team) -> Result<()> {
        if team < self.teams {
            Ok(())
        } else {
            Err(Error::UnknownTeam { team, teams: self.teams })
        }
    }

    pub(crate) fn check_coalition(&self, coalition: &Coalition) -> Result<()> {
        if coalition.teams() == self.teams {
            Ok(())
        } else {
            Err(Error::IllegalMove(format!(
                "coalition declared over {} teams, tournament has {}",
                coalition.teams(),
                self.teams
            )))
        }
    }

    /// Whether `mv` is a legal throw under this tournament's results.
    pub fn check_move(&self, coalition: &Coalition, mv: &Move) -> Result<()> {
        let (t, o) = (mv.thrower, mv.opponent);
        self.check_team(t)?;
        self.check_team(o)?;
        if t == o {
            return Err(Error::IllegalMove(format!("team {t} cannot play itself")));
        }
        if !coalition.contains(t) {
            return Err(Error::IllegalMove(format!("team {t} is not a coalition member")));
        }
        if !self.model.contains((mv.thrower_points, mv.opponent_points)) {
            return Err(Error::InvalidOutcome(mv.thrower_points, mv.opponent_points));
        }
        let (cur_t, cur_o) = (self.points(t, o), self.points(o, t));
        if mv.thrower_points > cur_t || mv.opponent_points < cur_o {
            return Err(Error::IllegalMove(format!(
                "team {t} would gain against team {o} ({cur_t}:{cur_o} -> {}:{})",
                mv.thrower_points, mv.opponent_points
            )));
        }
        if (mv.thrower_points, mv.opponent_points) == (cur_t, cur_o) {
            return Err(Error::IllegalMove(format!("game {t}-{o} is unchanged")));
        }
        Ok(())
    }

    /// Applies every move of `plan`, checking each against the original
    /// results.
    pub fn apply_plan(&self, coalition: &Coalition, plan: &ManipulationPlan) -> Result<Tournament> {
        self.check_coalition(coalition)?;
        let mut next = self.clone();
        for mv in plan.moves() {
            self.check_move(coalition, mv)?;
            next.set_unchecked(mv.thrower, mv.opponent, mv.thrower_points, mv.opponent_points);
        }
        Ok(next)
    }

    pub(crate) fn set_unchecked(&mut self, i: Team, j: Team, pi: Points, pj: Points) {
        self.points[i * self.teams + j] = pi;
        self.points[j * self.teams + i] = pj;
    }

    /// Reverses the arc `w -> l` without any legality check.
    pub(crate) fn flip_unchecked(&mut self, w: Team, l: Team) {
        let (pw, pl) = (self.points(w, l), self.points(l, w));
        self.set_unchecked(w, l, pl, pw);
    }

    /// Per-team point totals; under win-loss this is the out-degree.
    pub fn copeland_scores(&self) -> Vec<Points> {
        (0..self.teams)
            .map(|i| self.points[i * self.teams..(i + 1) * self.teams].iter().sum())
            .collect()
    }

    pub fn manipulable_edges(&self, coalition: &Coalition) -> ManipulableEdgeSet {
        let mut entries = BTreeSet::new();
        for &i in coalition.members() {
            for j in 0..self.teams {
                if i != j && self.can_throw(i, j) {
                    entries.insert((i, j));
                }
            }
        }
        ManipulableEdgeSet { entries }
    }

    /// Whether some admissible outcome leaves `i` with fewer points and `j`
    /// with no fewer.
    fn can_throw(&self, i: Team, j: Team) -> bool {
        let (pi, pj) = (self.points(i, j), self.points(j, i));
        self.model.outcomes().any(|(a, b)| a < pi && b >= pj)
    }

    /// Iterates unordered pairs `(i, j)`, `i < j`, with both sides' points.
    pub fn games(&self) -> impl Iterator<Item = (Team, Team, Points, Points)> + '_ {
        (0..self.teams).flat_map(move |i| {
            (i + 1..self.teams).map(move |j| (i, j, self.points(i, j), self.points(j, i)))
        })
    }
}

/// Free-function forms of the tournament operations.
pub fn manipulable_edges(t: &Tournament, coalition: &Coalition) -> ManipulableEdgeSet {
    t.manipulable_edges(coalition)
}

pub fn apply_plan(t: &Tournament, coalition: &Coalition, plan: &ManipulationPlan) -> Result<Tournament> {
    t.apply_plan(coalition, plan)
}

pub fn copeland_scores(t: &Tournament) -> Vec<Points> {
    t.copeland_scores()
}

/// Incremental construction with per-game validation.
#[derive(Debug, Clone)]
pub struct TournamentBuilder {
    teams: usize,
    model: ScoringModel,
    points: Vec<Points>,
    set: Vec<bool>,
}

impl TournamentBuilder {
    pub fn new(teams: usize, model: ScoringModel) -> Self {
        Self {
            teams,
            model,
            points: vec![0; teams * teams],
            set: vec![false; teams * teams],
        }
    }

    pub fn set(&mut self, i: Team, j: Team, pi: Points, pj: Points) -> Result<&mut Self> {
        for team in [i, j] {
            if team >= self.teams {
                return Err(Error::UnknownTeam { team, teams: self.teams });
            }
        }
        if i == j {
            return Err(Error::IllegalMove(format!("team {i} cannot play itself")));
        }
        if self.is_set(i, j) {
            return Err(Error::IllegalMove(format!("game {}-{} given twice", i.min(j), i.max(j))));
        }
        if !self.model.contains((pi, pj)) {
            return Err(Error::InvalidOutcome(pi, pj));
        }
        self.points[i * self.teams + j] = pi;
        self.points[j * self.teams + i] = pj;
        self.set[i * self.teams + j] = true;
        self.set[j * self.teams + i] = true;
        Ok(self)
    }

    pub fn is_set(&self, i: Team, j: Team) -> bool {
        self.set[i * self.teams + j]
    }

    pub fn build(self) -> Result<Tournament> {
        for i in 0..self.teams {
            for j in i + 1..self.teams {
                if !self.is_set(i, j) {
                    return Err(Error::IllegalMove(format!("game {i}-{j} has no result")));
                }
            }
        }
        Ok(Tournament {
            teams: self.teams,
            model: self.model,
            points: self.points,
        })
    }
}
