//! Dispatch and reporting for the `matchfix` command-line tool.
//!
//! [`run`] maps a subcommand and a parsed instance to a [`Report`]; the
//! binary only reads files, parses arguments and prints. Exit status is 0
//! when the answer is yes, 1 when it is no and 2 on usage or input errors.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};

use matchfix::brackets::{
    double_elim_constructive, ranked_reseed_constructive, BracketAnswer, DoubleElimBracket, ScheduledThrow,
    SeededField, DEFAULT_COALITION_BOUND,
};
use matchfix::cup::{cup_destructive_min, cup_min_manipulations, CupTree, WinnerTable};
use matchfix::oracle::{oracle_bracket, oracle_cup, oracle_roundrobin, BracketFormat, OracleReport, Witness, DEFAULT_CAP};
use matchfix::roundrobin::{rr_constructive, rr_destructive, rr_min_manipulations};
use matchfix::{Error, InstanceFile, ManipulationPlan, MinimalPlan, Move, Points, Team};
use serde::Serialize;

/// Version of the structured output document.
pub const SCHEMA_VERSION: u32 = 1;

pub const EXIT_YES: i32 = 0;
pub const EXIT_NO: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Command {
    Cup,
    CupMin,
    CupDestructive,
    RrConstructive,
    RrDestructive,
    RrMin,
    Reseed,
    Delim,
    Oracle,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Cup => "cup",
            Command::CupMin => "cup-min",
            Command::CupDestructive => "cup-destructive",
            Command::RrConstructive => "rr-constructive",
            Command::RrDestructive => "rr-destructive",
            Command::RrMin => "rr-min",
            Command::Reseed => "reseed",
            Command::Delim => "delim",
            Command::Oracle => "oracle",
        }
    }
}

/// Which competition the `oracle` command searches.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, clap::ValueEnum)]
pub enum OracleFormat {
    #[default]
    Cup,
    Rr,
    Reseed,
    Delim,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flags {
    pub target: Option<Team>,
    pub lose: Option<Team>,
    pub json: bool,
    pub max_coalition: usize,
    pub format: OracleFormat,
}

impl Default for Flags {
    fn default() -> Self {
        Self { target: None, lose: None, json: false, max_coalition: DEFAULT_COALITION_BOUND, format: OracleFormat::Cup }
    }
}

#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Input(String),
    Failed(Error),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(msg) | CliError::Input(msg) => f.write_str(msg),
            CliError::Failed(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Failed(e)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanEntry {
    pub thrower: Team,
    pub opponent: Team,
    pub thrower_points: Points,
    pub opponent_points: Points,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub game: Option<String>,
}

impl From<&Move> for PlanEntry {
    fn from(mv: &Move) -> Self {
        Self {
            thrower: mv.thrower,
            opponent: mv.opponent,
            thrower_points: mv.thrower_points,
            opponent_points: mv.opponent_points,
            game: None,
        }
    }
}

impl From<&ScheduledThrow> for PlanEntry {
    fn from(th: &ScheduledThrow) -> Self {
        Self { thrower: th.thrower, opponent: th.opponent, thrower_points: 0, opponent_points: 1, game: Some(th.game.to_string()) }
    }
}

/// The structured answer. Field order is fixed and no timing is recorded,
/// so equal inputs give byte-identical documents.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub verdict: bool,
    pub champion: Option<Team>,
    /// Size of a minimum plan, when the command computes one.
    pub min_count: Option<usize>,
    pub plan: Vec<PlanEntry>,
    pub stats: BTreeMap<String, u64>,
}

impl Report {
    fn new(command: Command) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            command: command.name().to_string(),
            verdict: false,
            champion: None,
            min_count: None,
            plan: Vec::new(),
            stats: BTreeMap::new(),
        }
    }

    fn with_plan(mut self, plan: &ManipulationPlan) -> Self {
        self.plan = plan.moves().iter().map(PlanEntry::from).collect();
        self
    }

    fn stat(mut self, key: &str, value: u64) -> Self {
        self.stats.insert(key.to_string(), value);
        self
    }

    pub fn exit_code(&self) -> i32 {
        if self.verdict {
            EXIT_YES
        } else {
            EXIT_NO
        }
    }

    pub fn to_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("report serializes");
        out.push('\n');
        out
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "verdict: {}", self.verdict);
        if let Some(c) = self.champion {
            let _ = writeln!(out, "champion: {c}");
        }
        if let Some(n) = self.min_count {
            let _ = writeln!(out, "min_count: {n}");
        }
        if !self.plan.is_empty() {
            out.push_str("plan:\n");
            for p in &self.plan {
                let _ = write!(out, "  team {} throws to team {} ({}:{})", p.thrower, p.opponent, p.thrower_points, p.opponent_points);
                if let Some(g) = &p.game {
                    let _ = write!(out, " in {g}");
                }
                out.push('\n');
            }
        }
        for (k, v) in &self.stats {
            let _ = writeln!(out, "{k}: {v}");
        }
        out
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

fn required(flag: Option<Team>, name: &str, command: Command, inst: &InstanceFile) -> Result<Team, CliError> {
    let team = flag.ok_or_else(|| CliError::Usage(format!("`{}` needs --{name} <id>", command.name())))?;
    if team >= inst.teams() {
        return Err(CliError::Usage(format!("--{name} {team} is out of range (teams {})", inst.teams())));
    }
    Ok(team)
}

fn leaf_order(inst: &InstanceFile) -> Vec<Team> {
    inst.seed.clone().unwrap_or_else(|| (0..inst.teams()).collect())
}

fn minimal(command: Command, found: Result<MinimalPlan, Error>) -> Result<Report, CliError> {
    match found {
        Ok(best) => {
            let mut r = Report::new(command).with_plan(&best.plan);
            r.verdict = true;
            r.champion = Some(best.champion);
            r.min_count = Some(best.count);
            Ok(r)
        }
        Err(Error::NotAchievable) => Ok(Report::new(command)),
        Err(e) => Err(e.into()),
    }
}

fn bracket(command: Command, answer: BracketAnswer) -> Report {
    let mut r = Report::new(command).stat("leaves_visited", answer.leaves_visited);
    r.verdict = answer.achievable;
    r.champion = answer.champion;
    r.plan = answer.throws.iter().map(PlanEntry::from).collect();
    r
}

fn oracle(report: OracleReport) -> Report {
    let mut r = Report::new(Command::Oracle).stat("subsets_examined", report.subsets_examined);
    r.verdict = report.achievable;
    if report.achievable {
        r.min_count = Some(report.min_count);
    }
    r.plan = match &report.witness {
        Some(Witness::Plan(p)) => p.moves().iter().map(PlanEntry::from).collect(),
        Some(Witness::Throws(t)) => t.iter().map(PlanEntry::from).collect(),
        None => Vec::new(),
    };
    r
}

pub fn run(command: Command, inst: &InstanceFile, flags: &Flags) -> Result<Report, CliError> {
    let t = &inst.tournament;
    let co = &inst.coalition;
    let cup_tree = || CupTree::new(leaf_order(inst)).map_err(CliError::from);
    match command {
        Command::Cup | Command::CupMin => {
            let target = required(flags.target, "target", command, inst)?;
            let tree = cup_tree()?;
            let table = WinnerTable::build(&tree, t, co)?;
            let r = minimal(command, cup_min_manipulations(target, &tree, t, co))?;
            Ok(r.stat("comparisons", table.comparisons()).stat("possible_winners", table.root_winners().len() as u64))
        }
        Command::CupDestructive => {
            let loser = required(flags.lose, "lose", command, inst)?;
            let tree = cup_tree()?;
            minimal(command, cup_destructive_min(loser, &tree, t, co))
        }
        Command::RrConstructive => {
            let target = required(flags.target, "target", command, inst)?;
            let d = rr_constructive(target, t, co, inst.model())?;
            let mut r = Report::new(command).with_plan(&d.plan);
            r.verdict = d.achievable;
            r.champion = d.champion;
            Ok(r)
        }
        Command::RrDestructive => {
            let loser = required(flags.lose, "lose", command, inst)?;
            let a = rr_destructive(loser, t, co, inst.model())?;
            let mut r = Report::new(command)
                .with_plan(&a.decision.plan)
                .stat("loser_points", a.loser_points.into())
                .stat("rival_points", a.rival_points.into());
            r.verdict = a.decision.achievable;
            r.champion = a.decision.champion;
            Ok(r)
        }
        Command::RrMin => {
            let target = required(flags.target, "target", command, inst)?;
            minimal(command, rr_min_manipulations(target, t, co))
        }
        Command::Reseed => {
            let target = required(flags.target, "target", command, inst)?;
            let field = SeededField::new(leaf_order(inst))?;
            Ok(bracket(command, ranked_reseed_constructive(target, &field, t, co, flags.max_coalition)?))
        }
        Command::Delim => {
            let target = required(flags.target, "target", command, inst)?;
            let b = DoubleElimBracket::new(leaf_order(inst))?;
            Ok(bracket(command, double_elim_constructive(target, &b, t, co, flags.max_coalition)?))
        }
        Command::Oracle => {
            let target = required(flags.target, "target", command, inst)?;
            let report = match flags.format {
                OracleFormat::Cup => oracle_cup(target, &cup_tree()?, t, co, DEFAULT_CAP)?,
                OracleFormat::Rr => oracle_roundrobin(target, t, co, DEFAULT_CAP)?,
                OracleFormat::Reseed => {
                    let field = SeededField::new(leaf_order(inst))?;
                    oracle_bracket(target, BracketFormat::Reseed(&field), t, co, DEFAULT_CAP)?
                }
                OracleFormat::Delim => {
                    let b = DoubleElimBracket::new(leaf_order(inst))?;
                    oracle_bracket(target, BracketFormat::DoubleElim(&b), t, co, DEFAULT_CAP)?
                }
            };
            Ok(oracle(report))
        }
    }
}

/// Parses `text` and runs `command`, returning the exit status and what to
/// print on stdout, or the exit status and an error message.
pub fn run_text(command: Command, text: &str, flags: &Flags) -> Result<(i32, String), (i32, String)> {
    let inst = matchfix::parse_instance(text).map_err(|e| (EXIT_ERROR, e.to_string()))?;
    let report = run(command, &inst, flags).map_err(|e| (EXIT_ERROR, e.to_string()))?;
    Ok((report.exit_code(), report.render(flags.json)))
}
