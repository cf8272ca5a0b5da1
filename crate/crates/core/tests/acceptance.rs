//! Acceptance suite. Every criterion prints one `PASS`/`FAIL` line; the
//! whole suite is run twice and the verdict text must match byte for byte.
//!
//! Run with `cargo test -p occupation-core --test acceptance`.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use occupation_core::classical::{
    embed_nim, embed_subtraction, nim_truth_closed_form, pile_truth, subtraction_truth_closed_form, PileVariant,
};
use occupation_core::game::{playout, OptimalPolicy, Policy};
use occupation_core::reduction::{
    build_gadget, decide_subset_sum_via_game, extract_witness, gadget_to_explicit, gadget_truth, subset_sum_oracle,
    GadgetGame, GadgetMove, GadgetState, SubsetSumInstance,
};
use occupation_core::{
    ElementSet, Error, MoveFamily, OccupationGame, PositionSet, SolveConfig, StateFamily, TruthValue,
};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const EXPLICIT_CAP: usize = 24;

struct Verdict {
    name: &'static str,
    pass: bool,
    detail: String,
    elapsed: Duration,
    limit: Option<Duration>,
}

impl Verdict {
    fn passed(&self) -> bool {
        self.pass && self.limit.is_none_or(|l| self.elapsed < l)
    }

    /// The deterministic part of the report (no timings).
    fn line(&self) -> String {
        format!(
            "{} {}: {}",
            if self.pass { "PASS" } else { "FAIL" },
            self.name,
            self.detail
        )
    }
}

fn timed(name: &'static str, limit: Option<Duration>, body: impl FnOnce() -> (bool, String)) -> Verdict {
    let t0 = Instant::now();
    let (pass, detail) = body();
    Verdict {
        name,
        pass,
        detail,
        elapsed: t0.elapsed(),
        limit,
    }
}

fn pile_grid() -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for a in 0..=5 {
        for b in 0..=5 {
            for c in 0..=5 {
                out.push(vec![a, b, c]);
            }
        }
    }
    out
}

fn reduction_grid(max_n: usize) -> Vec<SubsetSumInstance> {
    fn weights(n: usize) -> Vec<Vec<u64>> {
        if n == 0 {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for prefix in weights(n - 1) {
            for t in 1..=4 {
                let mut w = prefix.clone();
                w.push(t);
                out.push(w);
            }
        }
        out
    }
    let mut out = Vec::new();
    for n in 1..=max_n {
        for w in weights(n) {
            let total: u64 = w.iter().sum();
            for t in 1..=total + 1 {
                out.push(SubsetSumInstance::new(w.clone(), t).unwrap());
            }
        }
    }
    out
}

type Embedding = fn(&[usize], usize) -> Result<OccupationGame, Error>;

fn formula_equivalence(variant: PileVariant) -> (bool, String) {
    let (closed, embed): (fn(&[usize]) -> TruthValue, Embedding) = match variant {
        PileVariant::Nim => (nim_truth_closed_form, embed_nim),
        PileVariant::Subtraction => (subtraction_truth_closed_form, embed_subtraction),
    };
    let grid = pile_grid();
    let mut mismatches = Vec::new();
    let mut wins = 0;
    for piles in &grid {
        let formula = closed(piles);
        let counted = pile_truth(variant, piles, 64).unwrap();
        let game = embed(piles, EXPLICIT_CAP).unwrap();
        let explicit = occupation_core::game::truth(&game, game.start, SolveConfig::default()).unwrap();
        if formula != counted || formula != explicit {
            mismatches.push(piles.clone());
        }
        wins += formula.is_win() as usize;
    }
    (
        mismatches.is_empty() && grid.len() == 216,
        format!(
            "{} cases, {} first-player wins, {} mismatches {:?}",
            grid.len(),
            wins,
            mismatches.len(),
            mismatches
        ),
    )
}

fn reduction_correctness() -> (bool, String) {
    let grid = reduction_grid(4);
    let mut wrong = Vec::new();
    let mut yes = 0;
    for inst in &grid {
        let oracle = subset_sum_oracle(inst);
        if decide_subset_sum_via_game(inst).unwrap() != oracle {
            wrong.push(inst.to_string());
        }
        yes += oracle as usize;
    }
    (
        wrong.is_empty(),
        format!(
            "{} instances, {} solvable, {} disagreements {:?}",
            grid.len(),
            yes,
            wrong.len(),
            wrong
        ),
    )
}

fn small_explicit_instances() -> Vec<SubsetSumInstance> {
    let mut out = Vec::new();
    for t in 1..=6u64 {
        for t1 in 1..=12u64 {
            out.push(SubsetSumInstance::new(vec![t1], t).unwrap());
        }
        for t1 in 1..=5u64 {
            for t2 in 1..=5u64 {
                out.push(SubsetSumInstance::new(vec![t1, t2], t).unwrap());
            }
        }
    }
    out.retain(|i| build_gadget(i).unwrap().ground_size() <= 14);
    // Named in the criterion although its ground set has 15 elements.
    out.push(SubsetSumInstance::new(vec![1, 1], 2).unwrap());
    out
}

fn explicit_cross_validation() -> (bool, String) {
    let instances = small_explicit_instances();
    let mut wrong = Vec::new();
    for inst in &instances {
        let g = build_gadget(inst).unwrap();
        let e = gadget_to_explicit(&g, EXPLICIT_CAP).unwrap();
        let explicit = occupation_core::game::truth(&e, e.start, SolveConfig::default()).unwrap();
        if explicit != gadget_truth(&g, &g.start()).unwrap() {
            wrong.push(inst.to_string());
        }
    }
    let required = [(vec![1], 1), (vec![1], 2), (vec![1, 1], 1), (vec![1, 1], 2)];
    let covered = required.iter().all(|(w, t)| {
        instances
            .iter()
            .any(|i| i.weights() == w.as_slice() && i.target() == *t)
    });
    (
        wrong.is_empty() && covered,
        format!(
            "{} instances, required four covered: {}, disagreements {:?}",
            instances.len(),
            covered,
            wrong
        ),
    )
}

/// Every member of O1 ∪ O2 contained in the position whose removal keeps
/// `0 ≤ w − v ≤ 1`, computed from the definition alone.
fn literal_restriction(g: &GadgetGame, s: &GadgetState) -> Vec<GadgetMove> {
    let in_band = |v: usize, w: usize| w >= v && w - v <= 1;
    let mut out = Vec::new();
    if s.v >= 1 {
        for j in s.piles() {
            for take in [2 * g.n() as u64 * g.y_sizes()[j], 0] {
                if take <= s.l && in_band(s.v - 1, s.w) {
                    out.push(GadgetMove::O1 { pile: j, l_take: take });
                }
            }
        }
    }
    if s.w >= 1 && s.l >= 1 && in_band(s.v, s.w - 1) {
        out.push(GadgetMove::O2);
    }
    out
}

fn family_emptiness() -> (bool, String) {
    let mut states = 0usize;
    let mut violations = 0usize;
    for inst in reduction_grid(3) {
        let g = build_gadget(&inst).unwrap();
        let mut seen = BTreeSet::new();
        let mut stack = vec![g.start()];
        while let Some(s) = stack.pop() {
            if !seen.insert(s) {
                continue;
            }
            states += 1;
            let literal = literal_restriction(&g, &s);
            let served = g.moves(&s).unwrap();
            let families_ok = if s.w == s.v {
                literal.iter().all(|m| matches!(m, GadgetMove::O1 { .. }))
            } else {
                s.w == s.v + 1 && literal.iter().all(|m| *m == GadgetMove::O2)
            };
            if !families_ok || served != literal {
                violations += 1;
            }
            for m in literal {
                let next = g.apply(&s, m).unwrap();
                if next.w < next.v || next.w - next.v > 1 {
                    violations += 1;
                }
                stack.push(next);
            }
        }
    }
    (
        violations == 0,
        format!("{states} reachable states, {violations} violations"),
    )
}

fn witness_validity() -> (bool, String) {
    let grid = reduction_grid(4);
    let mut invalid = 0;
    let mut false_absent = 0;
    let mut false_present = 0;
    let mut found = 0;
    for inst in &grid {
        let g = build_gadget(inst).unwrap();
        let truth = gadget_truth(&g, &g.start()).unwrap().is_win();
        match extract_witness(&g).unwrap() {
            Some(w) => {
                found += 1;
                let distinct: BTreeSet<_> = w.subset.iter().collect();
                let sum: u64 = w.subset.iter().map(|&i| inst.weights()[i]).sum();
                if !truth {
                    false_present += 1;
                }
                if sum != inst.target() || distinct.len() != w.subset.len() {
                    invalid += 1;
                }
            }
            None if truth => false_absent += 1,
            None => {}
        }
    }
    (
        invalid == 0 && false_absent == 0 && false_present == 0,
        format!(
            "{} instances, {found} witnesses, {invalid} invalid, {false_absent} false absences, {false_present} spurious",
            grid.len()
        ),
    )
}

fn characterized_positions() -> (bool, String) {
    let mut report = String::new();
    let mut all_ok = true;
    // ([1,2], 3) with I = {1,2} as stated, plus ([1,2,4], 3) where I is a
    // proper subset so that family (c) is not vacuous.
    for (weights, witness) in [(vec![1u64, 2], 0b11u64), (vec![1, 2, 4], 0b011)] {
        let inst = SubsetSumInstance::new(weights.clone(), 3).unwrap();
        let g = build_gadget(&inst).unwrap();
        let n = g.n();
        let full = g.all_piles();
        let mut checked = [0usize; 3];
        let mut ok = gadget_truth(
            &g,
            &GadgetState {
                v: 0,
                w: 0,
                l: 0,
                mask: 0,
            },
        )
        .unwrap()
            == TruthValue::Zero;
        checked[0] += 1;
        for j in 0..=full {
            if j & witness != witness {
                continue;
            }
            let size = j.count_ones() as usize;
            let mask = full & !j;
            let b = GadgetState {
                v: n - size,
                w: n - size + 1,
                l: (n - size) as u64,
                mask,
            };
            ok &= gadget_truth(&g, &b).unwrap() == TruthValue::Zero;
            checked[1] += 1;
            if j != full {
                let c = GadgetState {
                    v: n - size,
                    w: n - size,
                    l: (n - 1 - size) as u64,
                    mask,
                };
                ok &= gadget_truth(&g, &c).unwrap() == TruthValue::One;
                checked[2] += 1;
            }
        }
        all_ok &= ok;
        let _ = write!(
            report,
            "{inst}: (a) {} (b) {} (c) {} checked{}; ",
            checked[0],
            checked[1],
            checked[2],
            if ok { "" } else { " MISMATCH" }
        );
    }
    (all_ok, report.trim_end_matches("; ").to_string())
}

struct RandomPolicy<'r> {
    rng: &'r mut ChaCha8Rng,
}

impl Policy for RandomPolicy<'_> {
    fn choose(&mut self, game: &OccupationGame, position: PositionSet) -> occupation_core::Result<ElementSet> {
        let moves = game.admissible_moves(position)?;
        Ok(*moves
            .choose(self.rng)
            .expect("policy called at a non-terminal position"))
    }
}

fn in_states(game: &OccupationGame, a: PositionSet) -> bool {
    match &game.states {
        StateFamily::All => true,
        StateFamily::Explicit(sets) => sets.contains(&a),
        StateFamily::Band { w_region, v_region } => {
            let w = a.intersection(*w_region).len() as i64;
            let v = a.intersection(*v_region).len() as i64;
            (0..=1).contains(&(w - v))
        }
    }
}

/// Checks a trace from first principles against the explicit move list.
fn trace_is_legal(game: &OccupationGame, trace: &occupation_core::game::GameTrace) -> bool {
    let MoveFamily::Explicit(family) = &game.moves else {
        return false;
    };
    let n = trace.moves.len();
    if trace.positions.len() != n + 1 || trace.positions[0] != game.start {
        return false;
    }
    for k in 0..n {
        let (a, sigma, next) = (trace.positions[k], trace.moves[k], trace.positions[k + 1]);
        let legal = !sigma.is_empty()
            && family.contains(&sigma)
            && sigma.is_subset(a)
            && next == a.difference(sigma)
            && in_states(game, next)
            && next.len() < a.len();
        if !legal {
            return false;
        }
    }
    let last = trace.positions[n];
    let terminal = !family
        .iter()
        .any(|m| m.is_subset(last) && in_states(game, last.difference(*m)));
    terminal && trace.loser.index() == n % 2
}

fn trace_legality() -> (bool, String) {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0cc0_0a7e);
    let gadgets: Vec<OccupationGame> = small_explicit_instances()
        .iter()
        .map(|i| gadget_to_explicit(&build_gadget(i).unwrap(), EXPLICIT_CAP).unwrap())
        .collect();
    let mut illegal = 0;
    let mut by_variant = [0usize; 3];
    let mut total_moves = 0;
    for round in 0..1000 {
        let kind = round % 3;
        let game = match kind {
            0 | 1 => {
                let piles: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(0..=4)).collect();
                if kind == 0 {
                    embed_nim(&piles, EXPLICIT_CAP).unwrap()
                } else {
                    embed_subtraction(&piles, EXPLICIT_CAP).unwrap()
                }
            }
            _ => gadgets[rng.gen_range(0..gadgets.len())].clone(),
        };
        by_variant[kind] += 1;
        // Every fourth game pits a random player against the optimal engine.
        let trace = if round % 4 == 3 {
            let mut seat = RandomPolicy { rng: &mut rng };
            playout(&game, &mut seat, &mut OptimalPolicy::default()).unwrap()
        } else {
            let mut a = ChaCha8Rng::seed_from_u64(rng.gen());
            let mut b = ChaCha8Rng::seed_from_u64(rng.gen());
            playout(
                &game,
                &mut RandomPolicy { rng: &mut a },
                &mut RandomPolicy { rng: &mut b },
            )
            .unwrap()
        };
        total_moves += trace.moves.len();
        if !trace_is_legal(&game, &trace) {
            illegal += 1;
        }
    }
    (
        illegal == 0,
        format!(
            "1000 playouts (nim {}, subtraction {}, gadget {}), {total_moves} moves, {illegal} illegal traces",
            by_variant[0], by_variant[1], by_variant[2]
        ),
    )
}

fn run_suite() -> Vec<Verdict> {
    vec![
        timed("nim formula equivalence", Some(Duration::from_secs(30)), || {
            formula_equivalence(PileVariant::Nim)
        }),
        timed("subtraction formula equivalence", Some(Duration::from_secs(30)), || {
            formula_equivalence(PileVariant::Subtraction)
        }),
        timed(
            "reduction correctness",
            Some(Duration::from_secs(120)),
            reduction_correctness,
        ),
        timed("explicit cross-validation", None, explicit_cross_validation),
        timed("lemma family-emptiness", None, family_emptiness),
        timed("witness validity", None, witness_validity),
        timed("characterized positions", None, characterized_positions),
        timed("trace legality", None, trace_legality),
    ]
}

fn verdict_text(verdicts: &[Verdict]) -> String {
    verdicts.iter().map(|v| v.line() + "\n").collect()
}

fn main() {
    let first = run_suite();
    for v in &first {
        let timing = match v.limit {
            Some(l) => format!("{:.2?} (limit {:?})", v.elapsed, l),
            None => format!("{:.2?}", v.elapsed),
        };
        println!("{}  [{}]", v.line(), timing);
    }
    let second = run_suite();
    let identical = verdict_text(&first) == verdict_text(&second);
    println!(
        "{} determinism: second run verdicts {}",
        if identical { "PASS" } else { "FAIL" },
        if identical { "byte-identical" } else { "differ" }
    );

    let failed: Vec<&str> = first
        .iter()
        .chain(&second)
        .filter(|v| !v.passed())
        .map(|v| v.name)
        .collect();
    if !failed.is_empty() || !identical {
        eprintln!("failed criteria: {failed:?}; runs identical: {identical}");
        std::process::exit(1);
    }
}
