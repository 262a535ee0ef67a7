use std::collections::{BTreeMap, BTreeSet};

use crate::model::{GameState, IcePiece, IceSlot, RearrangementPlan, ServerId};

use super::key::impassable;

type Pool = BTreeMap<IcePiece, Vec<IceSlot>>;

fn piece_pool(state: &GameState, keep: impl Fn(&IcePiece) -> bool) -> Pool {
    let mut pool = Pool::new();
    for (server, position, ice) in state.ice_in_play() {
        if keep(ice) {
            pool.entry(*ice)
                .or_default()
                .push(IceSlot { server, position });
        }
    }
    // Pop from the back hands out slots in ascending order.
    for slots in pool.values_mut() {
        slots.reverse();
    }
    pool
}

fn server_sizes(state: &GameState) -> Vec<(ServerId, usize)> {
    state
        .corp
        .servers
        .iter()
        .filter(|s| !s.ice.is_empty())
        .map(|s| (s.id, s.ice.len()))
        .collect()
}

/// One plan per distinct resulting layout: every multiset permutation of
/// the ice in play over the fixed per-server slot counts.
pub fn enumerate_rearrangement_plans(state: &GameState) -> Vec<RearrangementPlan> {
    let sizes = server_sizes(state);
    let mut pool = piece_pool(state, |_| true);
    let mut layout: Vec<(ServerId, Vec<IceSlot>)> =
        sizes.iter().map(|&(id, _)| (id, Vec::new())).collect();
    let mut out = Vec::new();
    fill_all(&sizes, 0, &mut pool, &mut layout, &mut out);
    out
}

fn fill_all(
    sizes: &[(ServerId, usize)],
    server: usize,
    pool: &mut Pool,
    layout: &mut Vec<(ServerId, Vec<IceSlot>)>,
    out: &mut Vec<RearrangementPlan>,
) {
    let Some(&(_, size)) = sizes.get(server) else {
        out.push(RearrangementPlan::from_layout(layout));
        return;
    };
    if layout[server].1.len() == size {
        fill_all(sizes, server + 1, pool, layout, out);
        return;
    }
    let kinds: Vec<IcePiece> = pool
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(k, _)| *k)
        .collect();
    for kind in kinds {
        let slot = pool.get_mut(&kind).and_then(Vec::pop).expect("available");
        layout[server].1.push(slot);
        fill_all(sizes, server, pool, layout, out);
        layout[server].1.pop();
        pool.get_mut(&kind).expect("kind").push(slot);
    }
}

/// One plan per class under the turn-horizon key: each server is either
/// live (filled with passable ice, order kept) or dead (holding at least
/// one impassable piece, contents otherwise irrelevant).
pub(crate) fn reduced_rearrangement_plans(state: &GameState) -> Vec<RearrangementPlan> {
    let sizes = server_sizes(state);
    let mut passable = piece_pool(state, |ice| !impassable(state, ice));
    let impassable_count = state
        .ice_in_play()
        .filter(|(_, _, ice)| impassable(state, ice))
        .count();
    let mut choice: Vec<Option<Vec<IceSlot>>> = Vec::with_capacity(sizes.len());
    let mut out = Vec::new();
    choose_live(
        state,
        &sizes,
        &mut passable,
        impassable_count,
        &mut choice,
        &mut out,
    );
    out
}

fn choose_live(
    state: &GameState,
    sizes: &[(ServerId, usize)],
    passable: &mut Pool,
    impassable_count: usize,
    choice: &mut Vec<Option<Vec<IceSlot>>>,
    out: &mut Vec<RearrangementPlan>,
) {
    let k = choice.len();
    if k == sizes.len() {
        let dead = choice.iter().filter(|c| c.is_none()).count();
        if dead <= impassable_count {
            out.push(complete(state, sizes, choice));
        }
        return;
    }
    let size = sizes[k].1;
    let available: usize = passable.values().map(Vec::len).sum();
    if size <= available {
        let mut seq = Vec::with_capacity(size);
        live_sequences(
            state,
            sizes,
            passable,
            impassable_count,
            choice,
            &mut seq,
            size,
            out,
        );
    }
    choice.push(None);
    choose_live(state, sizes, passable, impassable_count, choice, out);
    choice.pop();
}

#[allow(clippy::too_many_arguments)]
fn live_sequences(
    state: &GameState,
    sizes: &[(ServerId, usize)],
    passable: &mut Pool,
    impassable_count: usize,
    choice: &mut Vec<Option<Vec<IceSlot>>>,
    seq: &mut Vec<IceSlot>,
    size: usize,
    out: &mut Vec<RearrangementPlan>,
) {
    if seq.len() == size {
        choice.push(Some(seq.clone()));
        choose_live(state, sizes, passable, impassable_count, choice, out);
        choice.pop();
        return;
    }
    let kinds: Vec<IcePiece> = passable
        .iter()
        .filter(|(_, v)| !v.is_empty())
        .map(|(k, _)| *k)
        .collect();
    for kind in kinds {
        let slot = passable
            .get_mut(&kind)
            .and_then(Vec::pop)
            .expect("available");
        seq.push(slot);
        live_sequences(
            state,
            sizes,
            passable,
            impassable_count,
            choice,
            seq,
            size,
            out,
        );
        seq.pop();
        passable.get_mut(&kind).expect("kind").push(slot);
    }
}

/// Fills dead servers with the leftover pieces, one impassable piece first.
fn complete(
    state: &GameState,
    sizes: &[(ServerId, usize)],
    choice: &[Option<Vec<IceSlot>>],
) -> RearrangementPlan {
    let used: BTreeSet<IceSlot> = choice.iter().flatten().flatten().copied().collect();
    let mut blockers = Vec::new();
    let mut rest = Vec::new();
    for (server, position, ice) in state.ice_in_play() {
        let slot = IceSlot { server, position };
        if used.contains(&slot) {
            continue;
        }
        if impassable(state, ice) {
            blockers.push(slot);
        } else {
            rest.push(slot);
        }
    }
    blockers.reverse();
    let mut layout: Vec<(ServerId, Vec<IceSlot>)> = sizes
        .iter()
        .zip(choice)
        .map(|(&(server, _), c)| {
            let slots = match c {
                Some(seq) => seq.clone(),
                None => vec![blockers.pop().expect("one blocker per dead server")],
            };
            (server, slots)
        })
        .collect();
    rest.extend(blockers);
    rest.reverse();
    for (&(_, size), (_, slots)) in sizes.iter().zip(layout.iter_mut()) {
        while slots.len() < size {
            slots.push(rest.pop().expect("piece count matches slot count"));
        }
    }
    RearrangementPlan::from_layout(&layout)
}
