//! Small instances shared by tests, examples and the command-line tool.

use crate::tournament::{Coalition, Tournament};

/// Five-team win-loss instance where teams 0 and 3 collude: 0 beats 1 and 3,
/// 1 beats 2, 2 beats 0 and 4, 3 beats 1, 2 and 4, 4 beats 0 and 1.
pub const FIVE_TEAM_COALITION: &str = include_str!("../fixtures/five_team_coalition.txt");

/// Four teams in strict order with the strongest team colluding.
pub const LINEAR_FOUR: &str = include_str!("../fixtures/linear_four.txt");

/// Three teams under chess scoring (scaled to 2 points per game).
pub const CHESS_THREE: &str = include_str!("../fixtures/chess_three.txt");

pub fn five_team() -> (Tournament, Coalition) {
    let t = Tournament::from_arcs(
        5,
        &[(0, 1), (0, 3), (1, 2), (2, 0), (2, 4), (3, 1), (3, 2), (3, 4), (4, 0), (4, 1)],
    )
    .expect("complete arc list");
    let c = Coalition::new(5, [0, 3]).expect("members in range");
    (t, c)
}
