//! The game whose winner decides emptiness of an automaton, and witness
//! chains read off winning strategies.

use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use num_traits::{One, Zero};

use super::parity::{ParityGame, Player, Solution};
use super::{GameConfig, GameError, PoolMode};
use crate::bitset::BitSet;
use crate::gadget::{
    all_gadgets, enabling, gadgets_from_seeds_capped, is_compatible, positive_literals, prob_obligations,
    prob_targets, Gadget,
};
use crate::markov::{MarkovChain, PointedMarkovChain};
use crate::omega::LazyTilde;
use crate::papa::Papa;
use crate::prob::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Location {
    /// A gadget and the automaton state reached by reading it.
    Pair { gadget: usize, tilde: usize },
    /// Pair locations, sorted.
    Set(Vec<usize>),
    Sink(Player),
}

/// One decomposition chosen at a pair location: the set location it leads
/// to and the probability mass given to each member.
#[derive(Debug, Clone)]
pub struct Decomposition {
    pub target: usize,
    pub weights: Vec<(usize, Rational)>,
}

/// The explored game together with what is needed to read witnesses off it.
#[derive(Debug, Clone)]
pub struct Arena {
    pub game: ParityGame,
    pub locations: Vec<Location>,
    pub gadgets: Vec<Gadget>,
    /// Singleton set locations for the gadgets of the initial state.
    pub initial: Vec<usize>,
    /// Moves of pair locations, in the order of `game.successors`.
    pub decompositions: HashMap<usize, Vec<Decomposition>>,
    pub tilde_states: usize,
}

struct Builder<'a> {
    a: &'a Papa,
    cfg: &'a GameConfig,
    tilde: LazyTilde,
    game: ParityGame,
    locations: Vec<Location>,
    ids: HashMap<Location, usize>,
    gadgets: Vec<Gadget>,
    gadget_ids: HashMap<Gadget, usize>,
    /// Per gadget: candidate families with their enabling conditions.
    families: HashMap<usize, Vec<(Vec<usize>, Vec<Rational>)>>,
    decompositions: HashMap<usize, Vec<Decomposition>>,
    queue: VecDeque<usize>,
}

impl Builder<'_> {
    fn gadget_id(&mut self, g: &Gadget) -> usize {
        if let Some(&i) = self.gadget_ids.get(g) {
            return i;
        }
        self.gadgets.push(g.clone());
        self.gadget_ids.insert(g.clone(), self.gadgets.len() - 1);
        self.gadgets.len() - 1
    }

    fn location(&mut self, loc: Location) -> Result<usize, GameError> {
        if let Some(&i) = self.ids.get(&loc) {
            return Ok(i);
        }
        if self.locations.len() >= self.cfg.max_locations {
            return Err(GameError::TooManyLocations(self.cfg.max_locations));
        }
        let (owner, color) = match &loc {
            Location::Pair { tilde, .. } => (Player::Even, Some(self.tilde.color(*tilde))),
            Location::Set(_) => (Player::Odd, None),
            Location::Sink(p) => (*p, Some(p.index() as u32)),
        };
        let id = self.game.add_location(owner, color);
        self.locations.push(loc.clone());
        self.ids.insert(loc, id);
        self.queue.push_back(id);
        Ok(id)
    }

    fn pair(&mut self, tilde: usize, g: &Gadget) -> Result<usize, GameError> {
        let letter = self.tilde.letter(g);
        let next = self.tilde.step(tilde, letter)?;
        let gadget = self.gadget_id(g);
        self.location(Location::Pair { gadget, tilde: next })
    }

    fn expand(&mut self, v: usize) -> Result<(), GameError> {
        match self.locations[v].clone() {
            Location::Sink(_) => self.game.add_move(v, v),
            Location::Set(members) => {
                for m in members {
                    self.game.add_move(v, m);
                }
            }
            Location::Pair { gadget, tilde } => {
                let d = self.gadgets[gadget].clone();
                if prob_obligations(self.a, &d).is_empty() {
                    // nothing is owed to successors: the run ends here, and it
                    // is accepting iff the word read so far can be completed
                    // by empty gadgets
                    let rest = Gadget::empty(self.a.num_states());
                    let ok = self.tilde.accepts_from(tilde, &[], &[rest])?;
                    let sink = self.location(Location::Sink(if ok { Player::Even } else { Player::Odd }))?;
                    self.game.add_move(v, sink);
                    self.decompositions.insert(v, vec![Decomposition { target: sink, weights: Vec::new() }]);
                    return Ok(());
                }
                let families = self.families(gadget)?;
                let mut moves = Vec::new();
                for (family, x) in families {
                    let mut weights = Vec::with_capacity(family.len());
                    for (gi, xi) in family.iter().zip(x) {
                        let g = self.gadgets[*gi].clone();
                        weights.push((self.pair(tilde, &g)?, xi));
                    }
                    let mut members: Vec<usize> = weights.iter().map(|&(p, _)| p).collect();
                    members.sort_unstable();
                    let target = self.location(Location::Set(members))?;
                    self.game.add_move(v, target);
                    moves.push(Decomposition { target, weights });
                }
                if moves.is_empty() {
                    let sink = self.location(Location::Sink(Player::Odd))?;
                    self.game.add_move(v, sink);
                    moves.push(Decomposition { target: sink, weights: Vec::new() });
                }
                self.decompositions.insert(v, moves);
            }
        }
        Ok(())
    }

    /// The successor families `gamma` with `gamma |- d`, memoized per gadget.
    fn families(&mut self, d: usize) -> Result<Vec<(Vec<usize>, Vec<Rational>)>, GameError> {
        if let Some(f) = self.families.get(&d) {
            return Ok(f.clone());
        }
        let dg = self.gadgets[d].clone();
        let mut pool = self.pool(&dg)?;
        if self.cfg.prune_incompatible {
            pool.retain(|g| is_compatible(self.a, g));
        }
        let found = if self.cfg.minimal_families {
            minimal_families(self.a, &dg, &pool)
        } else {
            every_family(self.a, &dg, &pool, self.cfg.max_pool_for_all)?
        };
        let mut out = Vec::with_capacity(found.len());
        for (family, x) in found {
            let ids = family.iter().map(|g| self.gadget_id(g)).collect();
            out.push((ids, x));
        }
        self.families.insert(d, out.clone());
        Ok(out)
    }

    fn pool(&self, d: &Gadget) -> Result<Vec<Gadget>, GameError> {
        match self.cfg.pool {
            PoolMode::Unrestricted => Ok(all_gadgets(self.a, self.cfg.max_gadgets)?),
            PoolMode::Seeded => {
                let targets: Vec<usize> = prob_targets(self.a, d).iter().collect();
                let n = self.a.num_states();
                let mut pool = BTreeSet::new();
                for mask in 1..(1u64 << targets.len()) {
                    let seeds = BitSet::from_indices(
                        n,
                        targets.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &t)| t),
                    );
                    pool.extend(gadgets_from_seeds_capped(self.a, &seeds, self.cfg.max_gadgets)?);
                    if pool.len() > self.cfg.max_gadgets {
                        return Err(GameError::Gadgets(crate::gadget::GadgetError::TooMany(self.cfg.max_gadgets)));
                    }
                }
                Ok(pool.into_iter().collect())
            }
        }
    }
}

/// The inclusion-minimal families over `pool` enabling `d`.
///
/// Feasibility only depends on which targets each member contains, and a
/// minimal family never has two members with the same targets (merging them
/// keeps the system feasible). A minimal family also has at most as many
/// members as there are targets: a basic solution of the equality system
/// fixing the masses per target has that many nonzero entries. So it
/// suffices to search the sets of distinct target patterns of that size.
fn minimal_families(a: &Papa, d: &Gadget, pool: &[Gadget]) -> Vec<(Vec<Gadget>, Vec<Rational>)> {
    let targets = prob_targets(a, d);
    let mut by_pattern: BTreeMap<BitSet, Vec<&Gadget>> = BTreeMap::new();
    for g in pool {
        let p = g.states().intersection(&targets);
        if !p.is_empty() {
            by_pattern.entry(p).or_default().push(g);
        }
    }
    let patterns: Vec<&BitSet> = by_pattern.keys().collect();
    let reps: Vec<&Gadget> = by_pattern.values().map(|gs| gs[0]).collect();
    let mut minimal: Vec<(Vec<usize>, Vec<Rational>)> = Vec::new();
    for size in 1..=targets.len().min(patterns.len()) {
        for combo in combinations(patterns.len(), size) {
            if minimal.iter().any(|(m, _)| m.iter().all(|i| combo.contains(i))) {
                continue;
            }
            let family: Vec<&Gadget> = combo.iter().map(|&i| reps[i]).collect();
            if let Some(x) = enabling(a, &family, d) {
                minimal.push((combo, x));
            }
        }
    }
    let mut out = Vec::new();
    for (combo, x) in minimal {
        let groups: Vec<&Vec<&Gadget>> = combo.iter().map(|&i| &by_pattern[patterns[i]]).collect();
        for pick in product(&groups.iter().map(|g| g.len()).collect::<Vec<_>>()) {
            let family = pick.iter().zip(&groups).map(|(&j, g)| g[j].clone()).collect();
            out.push((family, x.clone()));
        }
    }
    out
}

/// Every nonempty family over `pool` enabling `d`.
fn every_family(
    a: &Papa,
    d: &Gadget,
    pool: &[Gadget],
    max_pool: usize,
) -> Result<Vec<(Vec<Gadget>, Vec<Rational>)>, GameError> {
    if pool.len() > max_pool {
        return Err(GameError::PoolTooLarge(pool.len()));
    }
    let mut out = Vec::new();
    for mask in 1u64..(1 << pool.len()) {
        let family: Vec<&Gadget> = (0..pool.len()).filter(|i| mask >> i & 1 == 1).map(|i| &pool[i]).collect();
        if let Some(x) = enabling(a, &family, d) {
            out.push((family.into_iter().cloned().collect(), x));
        }
    }
    Ok(out)
}

/// Increasing `k`-subsets of `0..n`.
fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every index tuple below the given sizes.
fn product(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        out = out
            .into_iter()
            .flat_map(|prefix: Vec<usize>| {
                (0..s).map(move |j| {
                    let mut p = prefix.clone();
                    p.push(j);
                    p
                })
            })
            .collect();
    }
    out
}

/// Explores the part of the game reachable from the initial locations.
pub fn build_game(a: &Papa, cfg: &GameConfig) -> Result<Arena, GameError> {
    let mut b = Builder {
        a,
        cfg,
        tilde: LazyTilde::new(a, cfg.max_dpa_states),
        game: ParityGame::new(),
        locations: Vec::new(),
        ids: HashMap::new(),
        gadgets: Vec::new(),
        gadget_ids: HashMap::new(),
        families: HashMap::new(),
        decompositions: HashMap::new(),
        queue: VecDeque::new(),
    };
    let root = BitSet::from_indices(a.num_states(), [a.initial()]);
    let mut initial = Vec::new();
    for g in gadgets_from_seeds_capped(a, &root, cfg.max_gadgets)? {
        let start = b.tilde.initial();
        let pair = b.pair(start, &g)?;
        initial.push(b.location(Location::Set(vec![pair]))?);
    }
    while let Some(v) = b.queue.pop_front() {
        b.expand(v)?;
    }
    Ok(Arena {
        game: b.game,
        locations: b.locations,
        gadgets: b.gadgets,
        initial,
        decompositions: b.decompositions,
        tilde_states: b.tilde.num_states(),
    })
}

/// An initial location won by the even player, if any.
pub fn emptiness(arena: &Arena, sol: &Solution) -> Option<usize> {
    arena.initial.iter().copied().find(|&v| sol.winner[v] == Player::Even)
}

/// Reads a chain off the even player's strategy from the initial set
/// location `start`. States are the pair locations met along the strategy,
/// named `l0, l1, ...` in breadth-first order, plus a state `sink` that
/// absorbs the unassigned probability mass when there is any.
pub fn extract_witness(a: &Papa, arena: &Arena, sol: &Solution, start: usize) -> PointedMarkovChain {
    assert_eq!(sol.winner[start], Player::Even, "witness start is not won");
    let Location::Set(members) = &arena.locations[start] else { panic!("witness start is not a set location") };
    let root = members[0];
    let mut index: HashMap<usize, usize> = HashMap::from([(root, 0)]);
    let mut order = vec![root];
    let mut rows: Vec<BTreeMap<usize, Rational>> = Vec::new();
    let mut deficits: Vec<Rational> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let v = order[i];
        i += 1;
        assert_eq!(sol.winner[v], Player::Even);
        let chosen = sol.strategy[v];
        let dec = arena.decompositions[&v].iter().find(|d| d.target == chosen).expect("strategy follows a move");
        let mut row = BTreeMap::new();
        let mut rest = Rational::one();
        if dec.weights.is_empty() {
            // nothing owed: stay put
            row.insert(index[&v], Rational::one());
            rest = Rational::zero();
        }
        for (p, x) in &dec.weights {
            let next = order.len();
            let id = *index.entry(*p).or_insert_with(|| {
                order.push(*p);
                next
            });
            *row.entry(id).or_insert_with(Rational::zero) += x;
            rest -= x;
        }
        rows.push(row);
        deficits.push(rest);
    }
    let n = order.len();
    let needs_sink = deficits.iter().any(|r| !r.is_zero());
    let mut names: Vec<String> = (0..n).map(|i| format!("l{i}")).collect();
    let mut labels: Vec<BTreeSet<String>> = order
        .iter()
        .map(|&v| match arena.locations[v] {
            Location::Pair { gadget, .. } => positive_literals(a, &arena.gadgets[gadget]),
            _ => unreachable!("strategy leads to pair locations"),
        })
        .collect();
    if needs_sink {
        names.push("sink".into());
        labels.push(BTreeSet::new());
        for (row, rest) in rows.iter_mut().zip(&deficits) {
            if !rest.is_zero() {
                row.insert(n, rest.clone());
            }
        }
        rows.push(BTreeMap::from([(n, Rational::one())]));
    }
    MarkovChain::new(names, rows, labels).expect("witness rows are stochastic").pointed(0)
}
