//! Max-parity games with partial colorings, solved by Zielonka's recursive
//! algorithm. Uncolored locations count as color 0.

use std::collections::VecDeque;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    Even,
    Odd,
}

impl Player {
    pub fn opponent(self) -> Player {
        match self {
            Player::Even => Player::Odd,
            Player::Odd => Player::Even,
        }
    }

    /// The player who wins when `c` is the largest recurring color.
    pub fn of_color(c: u32) -> Player {
        if c.is_multiple_of(2) {
            Player::Even
        } else {
            Player::Odd
        }
    }

    pub fn index(self) -> usize {
        match self {
            Player::Even => 0,
            Player::Odd => 1,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ParityGame {
    owner: Vec<Player>,
    color: Vec<Option<u32>>,
    succ: Vec<Vec<usize>>,
}

impl ParityGame {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add_location(&mut self, owner: Player, color: Option<u32>) -> usize {
        self.owner.push(owner);
        self.color.push(color);
        self.succ.push(Vec::new());
        self.owner.len() - 1
    }

    pub fn add_move(&mut self, from: usize, to: usize) {
        assert!(to < self.owner.len());
        if !self.succ[from].contains(&to) {
            self.succ[from].push(to);
        }
    }

    pub fn num_locations(&self) -> usize {
        self.owner.len()
    }

    pub fn num_moves(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn owner(&self, v: usize) -> Player {
        self.owner[v]
    }

    pub fn color(&self, v: usize) -> Option<u32> {
        self.color[v]
    }

    fn priority(&self, v: usize) -> u32 {
        self.color[v].unwrap_or(0)
    }

    pub fn successors(&self, v: usize) -> &[usize] {
        &self.succ[v]
    }

    /// Every location has a move.
    pub fn is_total(&self) -> bool {
        self.succ.iter().all(|s| !s.is_empty())
    }

    /// A cycle through uncolored locations only, if any.
    pub fn uncolored_cycle(&self) -> Option<Vec<usize>> {
        crate::papa::find_cycle(&self.succ, |v| self.color[v].is_none())
    }
}

/// Winning regions and memoryless strategies. `strategy[v]` is the move of
/// the owner of `v`; it wins the game when `v` is in the owner's region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub winner: Vec<Player>,
    pub strategy: Vec<usize>,
}

impl Solution {
    pub fn region(&self, p: Player) -> Vec<usize> {
        (0..self.winner.len()).filter(|&v| self.winner[v] == p).collect()
    }
}

/// Solves a total game.
pub fn solve(g: &ParityGame) -> Solution {
    assert!(g.is_total(), "parity game has a location without moves");
    let n = g.num_locations();
    let mut winner = vec![Player::Even; n];
    let mut strategy: Vec<usize> = (0..n).map(|v| g.succ[v][0]).collect();
    let pred = predecessors(g);
    zielonka(g, &pred, &vec![true; n], &mut winner, &mut strategy);
    Solution { winner, strategy }
}

fn predecessors(g: &ParityGame) -> Vec<Vec<usize>> {
    let mut pred = vec![Vec::new(); g.num_locations()];
    for (v, out) in g.succ.iter().enumerate() {
        for &w in out {
            pred[w].push(v);
        }
    }
    pred
}

/// Attractor of `target` for `p` inside `live`. Records attracting moves of
/// `p` in `strategy`.
fn attractor(
    g: &ParityGame,
    pred: &[Vec<usize>],
    live: &[bool],
    target: &[usize],
    p: Player,
    strategy: &mut [usize],
) -> Vec<bool> {
    let n = g.num_locations();
    let mut inside = vec![false; n];
    let mut escapes: Vec<usize> =
        (0..n).map(|v| if live[v] { g.succ[v].iter().filter(|&&w| live[w]).count() } else { 0 }).collect();
    let mut queue: VecDeque<usize> = VecDeque::new();
    for &t in target {
        if !inside[t] {
            inside[t] = true;
            queue.push_back(t);
        }
    }
    while let Some(w) = queue.pop_front() {
        for &v in &pred[w] {
            if !live[v] || inside[v] {
                continue;
            }
            if g.owner[v] == p {
                strategy[v] = w;
                inside[v] = true;
                queue.push_back(v);
            } else {
                escapes[v] -= 1;
                if escapes[v] == 0 {
                    inside[v] = true;
                    queue.push_back(v);
                }
            }
        }
    }
    inside
}

fn zielonka(g: &ParityGame, pred: &[Vec<usize>], live: &[bool], winner: &mut [Player], strategy: &mut [usize]) {
    let nodes: Vec<usize> = (0..live.len()).filter(|&v| live[v]).collect();
    let Some(d) = nodes.iter().map(|&v| g.priority(v)).max() else {
        return;
    };
    let p = Player::of_color(d);
    let top: Vec<usize> = nodes.iter().copied().filter(|&v| g.priority(v) == d).collect();
    // owners of top locations keep any move inside the subgame
    for &v in &top {
        if g.owner[v] == p {
            strategy[v] = *g.succ[v].iter().find(|&&w| live[w]).expect("subgame is total");
        }
    }
    let a = attractor(g, pred, live, &top, p, strategy);
    let rest: Vec<bool> = (0..live.len()).map(|v| live[v] && !a[v]).collect();
    zielonka(g, pred, &rest, winner, strategy);
    let lost: Vec<usize> = nodes.iter().copied().filter(|&v| rest[v] && winner[v] != p).collect();
    if lost.is_empty() {
        for &v in &nodes {
            winner[v] = p;
        }
        return;
    }
    let b = attractor(g, pred, live, &lost, p.opponent(), strategy);
    for &v in &nodes {
        if b[v] {
            winner[v] = p.opponent();
        }
    }
    let rest: Vec<bool> = (0..live.len()).map(|v| live[v] && !b[v]).collect();
    zielonka(g, pred, &rest, winner, strategy);
}

/// Whether every play consistent with `strategy` on the locations of `p`
/// starting in `from` is won by `p`.
pub fn strategy_wins(g: &ParityGame, p: Player, strategy: &[usize], from: &[usize]) -> bool {
    let edges: Vec<Vec<(usize, u32)>> = (0..g.num_locations())
        .map(|v| {
            let c = g.priority(v);
            if g.owner[v] == p {
                vec![(strategy[v], c)]
            } else {
                g.succ[v].iter().map(|&w| (w, c)).collect()
            }
        })
        .collect();
    let opponent_odd = p == Player::Even;
    !crate::omega::graph::has_cycle_with_max_parity(&edges, from.iter().copied(), opponent_odd)
}

/// Winners by enumerating all memoryless strategy pairs and following each
/// induced play. Exponential; meant for games of a handful of locations.
pub fn brute_force_winners(g: &ParityGame) -> Vec<Player> {
    let n = g.num_locations();
    assert!(g.is_total());
    let mine = |p: Player| (0..n).filter(|&v| g.owner[v] == p).collect::<Vec<_>>();
    let (zero, one) = (mine(Player::Even), mine(Player::Odd));
    let zero_choices = all_choices(g, &zero);
    let one_choices = all_choices(g, &one);
    let mut out = Vec::with_capacity(n);
    for start in 0..n {
        let outcome = |s0: &[usize], s1: &[usize]| {
            let mut moves = vec![0; n];
            for (i, &v) in zero.iter().enumerate() {
                moves[v] = s0[i];
            }
            for (i, &v) in one.iter().enumerate() {
                moves[v] = s1[i];
            }
            play_winner(g, &moves, start)
        };
        let even_wins = zero_choices.iter().any(|s0| one_choices.iter().all(|s1| outcome(s0, s1) == Player::Even));
        let odd_wins = one_choices.iter().any(|s1| zero_choices.iter().all(|s0| outcome(s0, s1) == Player::Odd));
        assert!(even_wins != odd_wins, "memoryless determinacy failed at {start}");
        out.push(if even_wins { Player::Even } else { Player::Odd });
    }
    out
}

/// Every assignment of a move to each location in `locs`.
fn all_choices(g: &ParityGame, locs: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &v in locs {
        out = out
            .into_iter()
            .flat_map(|prefix| {
                g.succ[v].iter().map(move |&w| {
                    let mut p = prefix.clone();
                    p.push(w);
                    p
                })
            })
            .collect();
    }
    out
}

/// Winner of the play from `start` where every location takes `moves[v]`.
fn play_winner(g: &ParityGame, moves: &[usize], start: usize) -> Player {
    let mut seen = vec![usize::MAX; g.num_locations()];
    let mut trace = Vec::new();
    let mut v = start;
    while seen[v] == usize::MAX {
        seen[v] = trace.len();
        trace.push(v);
        v = moves[v];
    }
    let top = trace[seen[v]..].iter().map(|&w| g.priority(w)).max().expect("nonempty cycle");
    Player::of_color(top)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn self_loop(c: u32) -> ParityGame {
        let mut g = ParityGame::new();
        let v = g.add_location(Player::Even, Some(c));
        g.add_move(v, v);
        g
    }

    #[test]
    fn single_loops() {
        assert_eq!(solve(&self_loop(2)).winner, [Player::Even]);
        assert_eq!(solve(&self_loop(3)).winner, [Player::Odd]);
    }

    #[test]
    fn choice_matters() {
        // even player at 0 picks between an odd and an even loop
        let mut g = ParityGame::new();
        let v = g.add_location(Player::Even, None);
        let odd = g.add_location(Player::Odd, Some(1));
        let even = g.add_location(Player::Odd, Some(2));
        g.add_move(v, odd);
        g.add_move(v, even);
        g.add_move(odd, odd);
        g.add_move(even, even);
        let s = solve(&g);
        assert_eq!(s.winner, [Player::Even, Player::Odd, Player::Even]);
        assert_eq!(s.strategy[v], even);
        assert_eq!(brute_force_winners(&g), s.winner);
        assert!(strategy_wins(&g, Player::Even, &s.strategy, &[v]));
    }

    #[test]
    fn higher_color_dominates() {
        // 0 -> 1 -> 0 with colors 3 and 4: the play's largest color is 4
        let mut g = ParityGame::new();
        let a = g.add_location(Player::Odd, Some(3));
        let b = g.add_location(Player::Odd, Some(4));
        g.add_move(a, b);
        g.add_move(b, a);
        assert_eq!(solve(&g).winner, [Player::Even, Player::Even]);
    }
}
