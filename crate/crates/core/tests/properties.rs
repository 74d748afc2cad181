#![allow(clippy::needless_range_loop)]

mod common;

use common::*;
use matchfix::cup::{cup_destructive_min, cup_min_manipulations, root_winner_set, CupTree, WinnerTable};
use matchfix::flow::{feasible_flow, min_cost_feasible_flow, FlowNetwork};
use matchfix::roundrobin::{greedy_out_degree, rr_constructive, rr_destructive, rr_min_manipulations};
use matchfix::{
    parse_instance, Coalition, Error, InstanceFile, ManipulationPlan, Move, Points, ScoringModel, Team, Tournament,
    TournamentBuilder,
};
use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn cup_size() -> impl Strategy<Value = usize> {
    prop_oneof![Just(2usize), Just(4), Just(8), Just(16)]
}

fn min_count(r: Result<matchfix::MinimalPlan, Error>) -> Option<usize> {
    match r {
        Ok(p) => Some(p.count),
        Err(Error::NotAchievable) => None,
        Err(e) => panic!("{e}"),
    }
}

/// A random subset of the coalition's manipulable edges as a plan.
fn random_flips(rng: &mut impl Rng, t: &Tournament, co: &Coalition) -> ManipulationPlan {
    let moves = t
        .manipulable_edges(co)
        .iter()
        .filter(|_| rng.gen_bool(0.5))
        .map(|(w, l)| Move::flip(w, l))
        .collect::<Vec<_>>();
    ManipulationPlan::from_moves(moves).unwrap()
}

fn random_model_tournament(rng: &mut impl Rng, m: usize, model: &ScoringModel) -> Tournament {
    let outcomes: Vec<_> = model.outcomes().collect();
    let mut b = TournamentBuilder::new(m, model.clone());
    for i in 0..m {
        for j in i + 1..m {
            let (a, c) = *outcomes.choose(rng).unwrap();
            b.set(i, j, a, c).unwrap();
        }
    }
    b.build().unwrap()
}

type GameOptions = (Team, Team, Vec<(Points, Points)>);

/// Whether some legal way of conceding points lets `target` finish level
/// with or above everyone, trying every combination of game results.
fn brute_general(t: &Tournament, co: &Coalition, target: Team) -> bool {
    let m = t.teams();
    let games: Vec<GameOptions> = t
        .games()
        .map(|(i, j, a, b)| {
            let options = t
                .model()
                .outcomes()
                .filter(|&(x, y)| (x, y) == (a, b) || (co.contains(i) && x <= a && y >= b) || (co.contains(j) && y <= b && x >= a))
                .collect();
            (i, j, options)
        })
        .collect();
    let mut scores = vec![0; m];
    fn go(games: &[GameOptions], k: usize, scores: &mut Vec<Points>, target: Team) -> bool {
        if k == games.len() {
            return scores.iter().all(|&s| s <= scores[target]);
        }
        let (i, j, options) = &games[k];
        options.iter().any(|&(x, y)| {
            scores[*i] += x;
            scores[*j] += y;
            let ok = go(games, k + 1, scores, target);
            scores[*i] -= x;
            scores[*j] -= y;
            ok
        })
    }
    go(&games, 0, &mut scores, target)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn cup_winners_grow_with_the_coalition(m in cup_size(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let tree = CupTree::new(random_order(&mut r, m)).unwrap();
        let small = any_coalition(&mut r, m, m);
        let extra: Vec<Team> = (0..m).filter(|_| r.gen_bool(0.3)).collect();
        let big = Coalition::new(m, small.members().iter().copied().chain(extra)).unwrap();
        prop_assert!(small.is_subset_of(&big));
        let a = root_winner_set(&tree, &t, &small).unwrap();
        let b = root_winner_set(&tree, &t, &big).unwrap();
        prop_assert!(a.is_subset(&b));
        for v in 0..m {
            let (x, y) = (min_count(cup_min_manipulations(v, &tree, &t, &small)), min_count(cup_min_manipulations(v, &tree, &t, &big)));
            if let Some(x) = x {
                prop_assert!(y.is_some_and(|y| y <= x));
            }
        }
    }

    #[test]
    fn rr_counts_shrink_with_the_coalition(m in 2usize..=7, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let small = any_coalition(&mut r, m, m);
        let big = Coalition::new(m, small.members().iter().copied().chain([r.gen_range(0..m)])).unwrap();
        for v in 0..m {
            if let Some(x) = min_count(rr_min_manipulations(v, &t, &small)) {
                let y = min_count(rr_min_manipulations(v, &t, &big));
                prop_assert!(y.is_some_and(|y| y <= x));
            }
        }
    }

    #[test]
    fn thrown_games_conserve_points(m in 2usize..=10, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let co = any_coalition(&mut r, m, m);
        let plan = random_flips(&mut r, &t, &co);
        let after = t.apply_plan(&co, &plan).unwrap();
        let total: Points = after.copeland_scores().iter().sum();
        prop_assert_eq!(total as usize, m * (m - 1) / 2);
    }

    #[test]
    fn reversing_a_plan_restores_the_tournament(m in 2usize..=10, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let everyone = Coalition::everyone(m);
        let plan = random_flips(&mut r, &t, &everyone);
        let after = t.apply_plan(&everyone, &plan).unwrap();
        prop_assert_eq!(after.apply_plan(&everyone, &plan.reversed()).unwrap(), t);
    }

    #[test]
    fn empty_coalition_leaves_the_fair_result(m in cup_size(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let tree = CupTree::new(random_order(&mut r, m)).unwrap();
        let none = Coalition::empty(m);
        let fair = tree.simulate(&t);
        let winners: Vec<Team> = root_winner_set(&tree, &t, &none).unwrap().into_iter().collect();
        prop_assert_eq!(winners, vec![fair]);
        prop_assert_eq!(min_count(cup_min_manipulations(fair, &tree, &t, &none)), Some(0));
        prop_assert!(t.manipulable_edges(&none).is_empty());
        let scores = t.copeland_scores();
        for v in 0..m {
            let leads = scores.iter().all(|&s| s <= scores[v]);
            prop_assert_eq!(min_count(rr_min_manipulations(v, &t, &none)), leads.then_some(0));
        }
    }

    #[test]
    fn cup_comparisons_are_quadratic(m in prop_oneof![Just(2usize), Just(4), Just(8), Just(16), Just(32), Just(64)], seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let tree = CupTree::new(random_order(&mut r, m)).unwrap();
        let co = any_coalition(&mut r, m, m);
        let table = WinnerTable::build(&tree, &t, &co).unwrap();
        prop_assert!(table.comparisons() as usize <= m * (m - 1) / 2);
    }

    #[test]
    fn manipulable_edges_are_member_wins(m in 2usize..=10, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let co = any_coalition(&mut r, m, m);
        let w = wins(&t);
        let expected = member_wins(&w, co.members());
        let got: Vec<(Team, Team)> = t.manipulable_edges(&co).iter().collect();
        let mut expected = expected;
        expected.sort();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn flow_solvers_agree(seed in any::<u64>()) {
        let net = random_network(&mut rng(seed));
        let quick = feasible_flow(&net).unwrap();
        let cheap = min_cost_feasible_flow(&net);
        prop_assert_eq!(quick.feasible, cheap.is_ok());
        prop_assert_eq!(brute_min_cost(&net), cheap.ok().map(|r| r.cost));
    }

    #[test]
    fn network_text_round_trips(seed in any::<u64>()) {
        let net = random_network(&mut rng(seed));
        prop_assert_eq!(FlowNetwork::parse(&net.to_string()).unwrap(), net);
    }

    #[test]
    fn greedy_only_concedes_to_the_target(m in 2usize..=9, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let co = any_coalition(&mut r, m, m);
        let v = r.gen_range(0..m);
        let g = greedy_out_degree(v, &t, &co).unwrap();
        let scores = t.copeland_scores();
        prop_assert_eq!(g.points as usize, scores[v] as usize + g.used_moves.count());
        for mv in g.used_moves.moves() {
            prop_assert_eq!(mv.opponent, v);
            prop_assert!(co.contains(mv.thrower) && t.beats(mv.thrower, v));
        }
        let after = t.apply_plan(&co, &g.used_moves).unwrap().copeland_scores();
        prop_assert_eq!(g.satisfied, after.iter().all(|&s| s <= after[v]));
        if let Some(best) = min_count(rr_min_manipulations(v, &t, &co)) {
            prop_assert!(best >= g.used_moves.count() || !g.satisfied);
        }
    }

    #[test]
    fn rr_min_matches_brute_force(m in 2usize..=7, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let co = any_coalition(&mut r, m, m.min(3));
        let w = wins(&t);
        let brute = min_flips_per_team(&w, &member_wins(&w, co.members()), score_leaders);
        for v in 0..m {
            prop_assert_eq!(min_count(rr_min_manipulations(v, &t, &co)), brute[v]);
        }
    }

    #[test]
    fn general_model_matches_brute_force(m in 2usize..=4, total in 1u32..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let model = ScoringModel::linear(total);
        let t = random_model_tournament(&mut r, m, &model);
        let co = any_coalition(&mut r, m, m);
        for v in 0..m {
            let d = rr_constructive(v, &t, &co, &model).unwrap();
            prop_assert_eq!(d.achievable, brute_general(&t, &co, v), "team {}", v);
            if d.achievable {
                let after = t.apply_plan(&co, &d.plan).unwrap().copeland_scores();
                prop_assert!(after.iter().all(|&s| s <= after[v]));
                let before: Points = t.copeland_scores().iter().sum();
                prop_assert_eq!(after.iter().sum::<Points>(), before);
            }
        }
    }

    #[test]
    fn rr_destructive_matches_brute_force(m in 2usize..=6, seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let co = any_coalition(&mut r, m, m);
        let w = wins(&t);
        let edges = member_wins(&w, co.members());
        let model = ScoringModel::win_loss();
        for loser in 0..m {
            let mut possible = false;
            for mask in 0u32..(1 << edges.len()) {
                let mut s = w.clone();
                for (k, &(a, b)) in edges.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        s[a][b] = false;
                        s[b][a] = true;
                    }
                }
                let score = |v: usize| s[v].iter().filter(|&&x| x).count();
                if (0..m).any(|u| u != loser && score(u) > score(loser)) {
                    possible = true;
                    break;
                }
            }
            let answer = rr_destructive(loser, &t, &co, &model).unwrap();
            prop_assert_eq!(answer.decision.achievable, possible, "loser {}", loser);
            if let Some(rival) = answer.decision.champion {
                let after = t.apply_plan(&co, &answer.decision.plan).unwrap().copeland_scores();
                prop_assert!(after[rival] > after[loser]);
            }
        }
    }

    #[test]
    fn cup_destructive_min_is_the_cheapest_rival(m in prop_oneof![Just(2usize), Just(4), Just(8)], seed in any::<u64>()) {
        let mut r = rng(seed);
        let t = random_tournament(&mut r, m);
        let tree = CupTree::new(random_order(&mut r, m)).unwrap();
        let co = any_coalition(&mut r, m, 3.min(m));
        let w = wins(&t);
        let brute = min_flips_per_team(&w, &member_wins(&w, co.members()), |w| vec![cup_champion(w, tree.leaves())]);
        for loser in 0..m {
            let expected = (0..m).filter(|&u| u != loser).filter_map(|u| brute[u]).min();
            let got = cup_destructive_min(loser, &tree, &t, &co);
            prop_assert_eq!(min_count(got.clone()), expected);
            if let Ok(p) = got {
                prop_assert_ne!(p.champion, loser);
                let after = t.apply_plan(&co, &p.plan).unwrap();
                prop_assert_eq!(tree.simulate(&after), p.champion);
            }
        }
    }

    #[test]
    fn instances_round_trip(m in 1usize..=9, which in 0usize..3, seeded in any::<bool>(), seed in any::<u64>()) {
        let mut r = rng(seed);
        let model = [None, Some(ScoringModel::chess()), Some(ScoringModel::new(4, [(4, 0), (2, 2), (0, 4), (1, 1)]).unwrap())][which].clone();
        let t = random_model_tournament(&mut r, m, model.as_ref().unwrap_or(&ScoringModel::win_loss()));
        let coalition = any_coalition(&mut r, m, m);
        let seed_order = seeded.then(|| random_order(&mut r, m));
        let inst = InstanceFile { tournament: t, coalition, model, seed: seed_order };
        let text = inst.to_string();
        prop_assert_eq!(parse_instance(&text).unwrap(), inst);
    }

    #[test]
    fn parsers_never_panic(text in "(teams|coalition|model|game|seed|network|arc|#|[0-9]|:| |\n|-|x){0,80}") {
        let _ = parse_instance(&text);
        let _ = FlowNetwork::parse(&text);
    }
}
