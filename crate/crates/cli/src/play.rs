use std::io::{BufRead, Write};

use anyhow::Result;
use occupation_core::reduction::GadgetMove;
use occupation_service::wire::{Mover, StateView, Status, WireMove};
use occupation_service::Session;

/// Human-facing text for a move. Piles are numbered from 1.
pub fn describe(mv: &WireMove) -> String {
    match mv {
        WireMove::Pile(p) => format!("take {} from pile {}", p.take, p.pile + 1),
        WireMove::Gadget(GadgetMove::O1 { pile, l_take: 0 }) => {
            format!("O1: remove pile {} without drawing from L", pile + 1)
        }
        WireMove::Gadget(GadgetMove::O1 { pile, l_take }) => {
            format!("O1: remove pile {} and draw {l_take} from L", pile + 1)
        }
        WireMove::Gadget(GadgetMove::O2) => "O2: one from W and one from L".to_string(),
        WireMove::Explicit(e) => format!("remove {{{}}}", e.elements.join(", ")),
    }
}

fn describe_state(state: &StateView) -> String {
    let one_based = |piles: &[usize]| piles.iter().map(|p| (p + 1).to_string()).collect::<Vec<_>>().join(",");
    match state {
        StateView::Piles { piles } => format!(
            "piles: {}",
            piles.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
        ),
        StateView::Gadget { v, w, l, piles } => format!("V={v} W={w} L={l} piles present: {{{}}}", one_based(piles)),
        StateView::Explicit { elements } => format!("position: {{{}}}", elements.join(", ")),
    }
}

/// Terminal loop: shows the board and numbered legal moves, reads a number
/// or `q` per line, and relays the engine's replies.
pub fn run(mut session: Session, input: impl BufRead, mut out: impl Write) -> Result<Status> {
    let verdict = if session.start_truth().is_win() {
        "winnable"
    } else {
        "lost"
    };
    let opener = match session.history().first() {
        Some(e) if e.by == Mover::Engine => "the engine",
        _ => "you",
    };
    writeln!(
        out,
        "Truth={} for {opener} at the start: {verdict} under perfect play",
        session.start_truth()
    )?;
    if let Some(e) = session.history().first().filter(|e| e.by == Mover::Engine) {
        writeln!(out, "engine: {}", describe(&e.mv))?;
    }
    let mut lines = input.lines();
    while session.status() == Status::InProgress {
        writeln!(out, "{}", describe_state(&session.view().state))?;
        for (i, mv) in session.legal_moves().iter().enumerate() {
            writeln!(out, "  {}) {}", i + 1, describe(mv))?;
        }
        write!(out, "move> ")?;
        out.flush()?;
        let Some(line) = lines.next().transpose()? else {
            writeln!(out)?;
            return Ok(Status::InProgress);
        };
        let line = line.trim();
        if line == "q" || line == "quit" {
            return Ok(Status::InProgress);
        }
        let choice = line
            .parse::<usize>()
            .ok()
            .and_then(|n| n.checked_sub(1))
            .and_then(|i| session.legal_moves().get(i).cloned());
        let Some(mv) = choice else {
            writeln!(
                out,
                "enter a move number from 1 to {}, or q",
                session.legal_moves().len()
            )?;
            continue;
        };
        if let Some(reply) = session.submit(mv)? {
            writeln!(out, "engine: {}", describe(&reply))?;
        }
    }
    writeln!(out, "{}", describe_state(&session.view().state))?;
    match session.status() {
        Status::HumanWon => writeln!(out, "no moves left for the engine: you win")?,
        _ => writeln!(out, "no moves left for you: the engine wins")?,
    }
    Ok(session.status())
}
