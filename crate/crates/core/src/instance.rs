//! Line-oriented instance files.
//!
//! ```text
//! # comment
//! teams 4
//! coalition 0 2
//! model 2 0:2 1:1 2:0      # optional, win-loss when absent
//! game 0 1 1 0             # one line per unordered pair
//! ...
//! seed 0 1 2 3             # optional leaf order
//! ```
//!
//! `teams` must come first. The other directives may appear in any order,
//! but `coalition`, `model` and `seed` at most once each. Games may name the
//! pair in either order. [`InstanceFile`]'s `Display` writes the canonical
//! form, which parses back to an equal value.

use std::fmt;

use crate::error::InputError;
use crate::text::{self, Line};
use crate::tournament::{Coalition, Points, ScoringModel, Team, Tournament, TournamentBuilder};

/// Largest field accepted from text; the tournament is stored as a dense
/// matrix.
pub const MAX_TEAMS: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceFile {
    pub tournament: Tournament,
    pub coalition: Coalition,
    /// The model as written in the file, if any.
    pub model: Option<ScoringModel>,
    pub seed: Option<Vec<Team>>,
}

impl InstanceFile {
    pub fn teams(&self) -> usize {
        self.tournament.teams()
    }

    pub fn model(&self) -> &ScoringModel {
        self.tournament.model()
    }
}

struct PendingGame {
    line: usize,
    i: Team,
    j: Team,
    pi: Points,
    pj: Points,
}

fn team_list(line: &Line<'_>, teams: usize) -> Result<Vec<Team>, InputError> {
    let mut out = Vec::with_capacity(line.args().len());
    for (idx, token) in line.args().iter().enumerate() {
        let id: Team = line.number(idx, "a team id")?;
        if id >= teams {
            return Err(line.parse_error(token.column, format!("team {id} out of range (teams {teams})")));
        }
        out.push(id);
    }
    Ok(out)
}

fn outcome(line: &Line<'_>, idx: usize) -> Result<(Points, Points), InputError> {
    let token = &line.args()[idx];
    let bad = || line.parse_error(token.column, format!("expected an outcome `a:b`, found `{}`", token.text));
    let (a, b) = token.text.split_once(':').ok_or_else(bad)?;
    Ok((a.parse().map_err(|_| bad())?, b.parse().map_err(|_| bad())?))
}

pub fn parse_instance(input: &str) -> Result<InstanceFile, InputError> {
    let mut teams: Option<(usize, usize)> = None;
    let mut coalition: Option<Coalition> = None;
    let mut model: Option<(usize, ScoringModel)> = None;
    let mut seed: Option<Vec<Team>> = None;
    let mut games = Vec::new();

    for line in text::lines(input) {
        let keyword = line.keyword();
        if keyword != "teams" && teams.is_none() {
            if !matches!(keyword, "coalition" | "model" | "game" | "seed") {
                return Err(line.parse_error(line.tokens[0].column, format!("unknown directive `{keyword}`")));
            }
            return Err(line.invalid(format!("`{keyword}` before the `teams` header")));
        }
        let m = teams.map_or(0, |(_, m)| m);
        match keyword {
            "teams" => {
                if teams.is_some() {
                    return Err(line.invalid("duplicate `teams` header"));
                }
                line.expect_arity(1)?;
                let count: usize = line.number(0, "a team count")?;
                if count == 0 || count > MAX_TEAMS {
                    return Err(line.invalid(format!("team count must be between 1 and {MAX_TEAMS}")));
                }
                teams = Some((line.number, count));
            }
            "coalition" => {
                if coalition.is_some() {
                    return Err(line.invalid("duplicate `coalition` line"));
                }
                let members = team_list(&line, m)?;
                let mut sorted = members.clone();
                sorted.sort_unstable();
                if sorted.windows(2).any(|w| w[0] == w[1]) {
                    return Err(line.invalid("coalition lists a team twice"));
                }
                coalition = Some(Coalition::new(m, members).map_err(|e| line.invalid(e.to_string()))?);
            }
            "model" => {
                if model.is_some() {
                    return Err(line.invalid("duplicate `model` line"));
                }
                if line.args().is_empty() {
                    return Err(line.parse_error(line.end_column(), "`model` expects a total and outcomes"));
                }
                let total: Points = line.number(0, "a per-game total")?;
                let mut outcomes = Vec::new();
                for idx in 1..line.args().len() {
                    let o = outcome(&line, idx)?;
                    if outcomes.contains(&o) {
                        return Err(line.invalid(format!("outcome {}:{} listed twice", o.0, o.1)));
                    }
                    outcomes.push(o);
                }
                let parsed = ScoringModel::new(total, outcomes).map_err(|e| line.invalid(e.to_string()))?;
                model = Some((line.number, parsed));
            }
            "game" => {
                line.expect_arity(4)?;
                let i: Team = line.number(0, "a team id")?;
                let j: Team = line.number(1, "a team id")?;
                for (idx, id) in [(0, i), (1, j)] {
                    if id >= m {
                        return Err(line.parse_error(
                            line.args()[idx].column,
                            format!("team {id} out of range (teams {m})"),
                        ));
                    }
                }
                if i == j {
                    return Err(line.invalid(format!("team {i} cannot play itself")));
                }
                let pi = line.number(2, "a point value")?;
                let pj = line.number(3, "a point value")?;
                games.push(PendingGame { line: line.number, i, j, pi, pj });
            }
            "seed" => {
                if seed.is_some() {
                    return Err(line.invalid("duplicate `seed` line"));
                }
                let order = team_list(&line, m)?;
                let mut seen = vec![false; m];
                for &id in &order {
                    if std::mem::replace(&mut seen[id], true) {
                        return Err(line.invalid(format!("team {id} seeded twice")));
                    }
                }
                if order.len() != m {
                    return Err(line.invalid(format!("seed lists {} of {m} teams", order.len())));
                }
                seed = Some(order);
            }
            other => {
                return Err(line.parse_error(line.tokens[0].column, format!("unknown directive `{other}`")));
            }
        }
    }

    let Some((header, m)) = teams else {
        return Err(InputError::Validation { line: 0, message: "missing `teams` header".into() });
    };
    let effective = model.as_ref().map_or_else(ScoringModel::win_loss, |(_, s)| s.clone());
    let mut builder = TournamentBuilder::new(m, effective.clone());
    for g in &games {
        if builder.is_set(g.i, g.j) {
            return Err(InputError::Validation {
                line: g.line,
                message: format!("duplicate game between {} and {}", g.i.min(g.j), g.i.max(g.j)),
            });
        }
        if !effective.contains((g.pi, g.pj)) {
            return Err(InputError::Validation {
                line: g.line,
                message: format!("outcome {}:{} is not in the scoring model", g.pi, g.pj),
            });
        }
        builder
            .set(g.i, g.j, g.pi, g.pj)
            .map_err(|e| InputError::Validation { line: g.line, message: e.to_string() })?;
    }
    for i in 0..m {
        for j in i + 1..m {
            if !builder.is_set(i, j) {
                return Err(InputError::Validation {
                    line: header,
                    message: format!("no game between {i} and {j}"),
                });
            }
        }
    }
    let tournament = builder
        .build()
        .map_err(|e| InputError::Validation { line: header, message: e.to_string() })?;
    Ok(InstanceFile {
        tournament,
        coalition: coalition.unwrap_or_else(|| Coalition::empty(m)),
        model: model.map(|(_, s)| s),
        seed,
    })
}

fn write_ids(f: &mut fmt::Formatter<'_>, keyword: &str, ids: &[Team]) -> fmt::Result {
    f.write_str(keyword)?;
    for id in ids {
        write!(f, " {id}")?;
    }
    writeln!(f)
}

impl fmt::Display for InstanceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "teams {}", self.teams())?;
        write_ids(f, "coalition", self.coalition.members())?;
        if let Some(model) = &self.model {
            write!(f, "model {}", model.total())?;
            for (a, b) in model.outcomes() {
                write!(f, " {a}:{b}")?;
            }
            writeln!(f)?;
        }
        for (i, j, pi, pj) in self.tournament.games() {
            writeln!(f, "game {i} {j} {pi} {pj}")?;
        }
        if let Some(seed) = &self.seed {
            write_ids(f, "seed", seed)?;
        }
        Ok(())
    }
}
