//! Shared helpers for integration tests: random valid boards and random
//! embeddings of move patterns.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use smg_core::mosaic::Mosaic;
use smg_core::moves::{Direction, MoveRule, MoveSite, PatternCell};
use smg_core::tile::{Edge, EdgeSet, Symmetry, TileKind};

pub fn rng_for(tag: &str, trial: u64) -> ChaCha8Rng {
    let mut seed = 0xcbf29ce484222325u64;
    for b in tag.bytes() {
        seed = (seed ^ b as u64).wrapping_mul(0x100000001b3);
    }
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial.wrapping_mul(0x9e3779b97f4a7c15)))
}

/// Fills every undecided cell so the whole board is suitably connected.
/// `required[i]` pins edges that must carry connection points. Returns
/// `None` when the partial assignment cannot be completed.
pub fn complete_randomly(
    rows: usize,
    cols: usize,
    grid: &mut Vec<Option<TileKind>>,
    required: &[EdgeSet],
    candidates: &[TileKind],
    rng: &mut ChaCha8Rng,
) -> Option<Mosaic> {
    fn fits(
        rows: usize,
        cols: usize,
        grid: &[Option<TileKind>],
        r: usize,
        c: usize,
        t: TileKind,
    ) -> bool {
        let p = t.profile();
        for e in Edge::ALL {
            let (nr, nc) = match e {
                Edge::N => (r.wrapping_sub(1), c),
                Edge::S => (r + 1, c),
                Edge::W => (r, c.wrapping_sub(1)),
                Edge::E => (r, c + 1),
            };
            if nr >= rows || nc >= cols {
                if p.contains(e) {
                    return false;
                }
                continue;
            }
            if let Some(n) = grid[nr * cols + nc] {
                if n.profile().contains(e.opposite()) != p.contains(e) {
                    return false;
                }
            }
        }
        true
    }
    fn rec(
        rows: usize,
        cols: usize,
        grid: &mut Vec<Option<TileKind>>,
        required: &[EdgeSet],
        order: &[usize],
        i: usize,
        candidates: &[TileKind],
        rng: &mut ChaCha8Rng,
        steps: &mut usize,
    ) -> bool {
        if i == order.len() {
            return true;
        }
        *steps += 1;
        if *steps > 200_000 {
            return false;
        }
        let cell = order[i];
        let (r, c) = (cell / cols, cell % cols);
        let mut tiles: Vec<TileKind> = candidates.to_vec();
        tiles.shuffle(rng);
        for t in tiles {
            if !t.profile().contains_all(required[cell]) {
                continue;
            }
            if !fits(rows, cols, grid, r, c, t) {
                continue;
            }
            grid[cell] = Some(t);
            if rec(rows, cols, grid, required, order, i + 1, candidates, rng, steps) {
                return true;
            }
            grid[cell] = None;
        }
        false
    }

    let order: Vec<usize> = (0..rows * cols).filter(|&i| grid[i].is_none()).collect();
    let mut steps = 0usize;
    if !rec(rows, cols, grid, required, &order, 0, candidates, rng, &mut steps) {
        return None;
    }
    let cells: Vec<TileKind> = grid.iter().map(|c| c.unwrap()).collect();
    let m = Mosaic::new(rows, cols, cells).ok()?;
    if m.is_suitably_connected() {
        Some(m)
    } else {
        None
    }
}

/// Embeds the oriented left side of a rule at anchor (2,2) of a padded board
/// with randomized wildcard and margin fill.
pub fn embed_rule(rule: &MoveRule, g: Symmetry, rng: &mut ChaCha8Rng) -> Option<(Mosaic, MoveSite)> {
    let (h, w) = rule.window;
    let (oh, ow) = g.apply_dims(h, w);
    let rows = oh + 4;
    let cols = ow + 4;
    let mut grid: Vec<Option<TileKind>> = vec![None; rows * cols];
    let mut required: Vec<EdgeSet> = vec![EdgeSet::EMPTY; rows * cols];
    for r in 0..h {
        for c in 0..w {
            let (tr, tc) = g.apply_coords(r, c, h, w);
            let idx = (tr + 2) * cols + (tc + 2);
            match rule.lhs[r * w + c] {
                PatternCell::Tile(t) => grid[idx] = Some(t.transform(g)),
                PatternCell::Wild(req) => required[idx] = g.apply_set(req),
            }
        }
    }
    let board = complete_randomly(
        rows,
        cols,
        &mut grid,
        &required,
        &TileKind::UNDECORATED,
        rng,
    )?;
    let site = MoveSite {
        rule: rule.name.clone(),
        anchor: (2, 2),
        orientation: g,
        direction: Direction::Forward,
    };
    Some((board, site))
}
