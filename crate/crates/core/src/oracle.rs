//! Exhaustive reference searches for small instances.
//!
//! Each search tries manipulation subsets by increasing size, lexicographic
//! within a size, and replays the competition from scratch for each one. The
//! first subset that crowns the target is therefore a minimum one, and the
//! witness is deterministic.
//!
//! Cups, round robins and reseeding cups enumerate subsets of the
//! manipulable edge set. Double elimination can pit the same two teams
//! against each other twice, so there the search enumerates which scheduled
//! games end in an upset and keeps only the subsets in which every upset is
//! thrown by a coalition member.

use itertools::Itertools;

use crate::brackets::{DoubleElimBracket, GameRef, ScheduledThrow, SeededField};
use crate::cup::CupTree;
use crate::error::{Error, Result};
use crate::tournament::{Coalition, ManipulationPlan, Move, Team, Tournament};

pub const DEFAULT_CAP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    Plan(ManipulationPlan),
    Throws(Vec<ScheduledThrow>),
}

impl Witness {
    pub fn len(&self) -> usize {
        match self {
            Witness::Plan(p) => p.count(),
            Witness::Throws(t) => t.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleReport {
    pub achievable: bool,
    /// Size of the smallest witnessing subset; 0 when not achievable.
    pub min_count: usize,
    pub witness: Option<Witness>,
    pub subsets_examined: u64,
}

pub enum BracketFormat<'a> {
    Reseed(&'a SeededField),
    DoubleElim(&'a DoubleElimBracket),
}

fn smallest_subset<T: Copy>(
    items: &[T],
    cap: usize,
    mut accept: impl FnMut(&[T]) -> bool,
) -> Result<(Option<Vec<T>>, u64)> {
    if items.len() > cap {
        return Err(Error::TooLarge { size: items.len(), cap });
    }
    let mut examined = 0;
    for k in 0..=items.len() {
        for subset in items.iter().copied().combinations(k) {
            examined += 1;
            if accept(&subset) {
                return Ok((Some(subset), examined));
            }
        }
    }
    Ok((None, examined))
}

fn over_edges(
    t: &Tournament,
    coalition: &Coalition,
    cap: usize,
    mut crowns: impl FnMut(&Tournament) -> bool,
) -> Result<OracleReport> {
    t.check_coalition(coalition)?;
    if !t.is_win_loss() {
        return Err(Error::RequiresWinLoss);
    }
    let edges: Vec<(Team, Team)> = t.manipulable_edges(coalition).iter().collect();
    let mut scratch = t.clone();
    let (found, examined) = smallest_subset(&edges, cap, |subset| {
        scratch.clone_from(t);
        for &(w, l) in subset {
            scratch.flip_unchecked(w, l);
        }
        crowns(&scratch)
    })?;
    Ok(match found {
        Some(subset) => OracleReport {
            achievable: true,
            min_count: subset.len(),
            witness: Some(Witness::Plan(
                ManipulationPlan::from_moves(subset.iter().map(|&(w, l)| Move::flip(w, l)))
                    .expect("edges are distinct games"),
            )),
            subsets_examined: examined,
        },
        None => OracleReport { achievable: false, min_count: 0, witness: None, subsets_examined: examined },
    })
}

pub fn oracle_cup(target: Team, tree: &CupTree, t: &Tournament, coalition: &Coalition, cap: usize) -> Result<OracleReport> {
    t.check_team(target)?;
    if tree.teams() != t.teams() {
        return Err(Error::MalformedTree("cup and tournament sizes differ".into()));
    }
    over_edges(t, coalition, cap, |after| tree.simulate(after) == target)
}

/// Target must score at least as much as every other team.
pub fn oracle_roundrobin(target: Team, t: &Tournament, coalition: &Coalition, cap: usize) -> Result<OracleReport> {
    t.check_team(target)?;
    over_edges(t, coalition, cap, |after| {
        let s = after.copeland_scores();
        s.iter().all(|&x| x <= s[target])
    })
}

pub fn oracle_bracket(
    target: Team,
    format: BracketFormat<'_>,
    t: &Tournament,
    coalition: &Coalition,
    cap: usize,
) -> Result<OracleReport> {
    t.check_team(target)?;
    match format {
        BracketFormat::Reseed(field) => {
            if field.teams() != t.teams() {
                return Err(Error::MalformedField("field and tournament sizes differ".into()));
            }
            over_edges(t, coalition, cap, |after| field.simulate(after) == target)
        }
        BracketFormat::DoubleElim(bracket) => {
            if bracket.teams() != t.teams() {
                return Err(Error::MalformedBracket("bracket and tournament sizes differ".into()));
            }
            t.check_coalition(coalition)?;
            if !t.is_win_loss() {
                return Err(Error::RequiresWinLoss);
            }
            let games: Vec<usize> = (0..bracket.game_count()).collect();
            let mut throws = Vec::new();
            let (found, examined) = smallest_subset(&games, cap, |upsets| {
                throws.clear();
                let mut index = 0;
                let mut legal = true;
                let out = bracket
                    .play(t, None, |game: GameRef, w, l| {
                        let upset = upsets.contains(&index);
                        index += 1;
                        if upset {
                            legal &= coalition.contains(w);
                            throws.push(ScheduledThrow { game, thrower: w, opponent: l });
                        }
                        upset
                    })
                    .expect("nobody is watched");
                legal && out.champion == target
            })?;
            Ok(match found {
                Some(subset) => OracleReport {
                    achievable: true,
                    min_count: subset.len(),
                    witness: Some(Witness::Throws(throws)),
                    subsets_examined: examined,
                },
                None => OracleReport { achievable: false, min_count: 0, witness: None, subsets_examined: examined },
            })
        }
    }
}
