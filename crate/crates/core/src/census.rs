//! High-performance enumeration of suitably connected mosaics, twofold-rule
//! completions, kink detection, and mosaic-number bound certification.
//!
//! Suitable connectivity is a local edge-matching constraint, so counting
//! uses a transfer over binary frontier states: one bit per column for the
//! pending south points of the previous row, plus one in-row carry bit.

use std::collections::{HashMap, HashSet};

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::analysis::{admissible, surface_components, Budget, Verdict};
use crate::equiv::{equivalent_within, SearchCaps};
use crate::mosaic::Mosaic;
use crate::moves::{applicable_moves, apply_move, default_table, Direction, MoveSite};
use crate::tile::{Decoration, Edge, TileKind};
use crate::{Error, Result};

/// Pure predicates over a finished board.
#[derive(Debug, Clone, Default)]
pub struct CensusFilter {
    pub min_singular: usize,
    pub max_singular: Option<usize>,
    pub min_chs: usize,
    pub max_chs: Option<usize>,
    pub require_admissible: bool,
    pub surface_target: Option<usize>,
}

impl CensusFilter {
    pub fn empty() -> CensusFilter {
        CensusFilter::default()
    }

    pub fn with_min_singular(mut self, n: usize) -> CensusFilter {
        self.min_singular = n;
        self
    }

    pub fn with_exact_singular(mut self, n: usize) -> CensusFilter {
        self.min_singular = n;
        self.max_singular = Some(n);
        self
    }

    pub fn with_admissible(mut self) -> CensusFilter {
        self.require_admissible = true;
        self
    }
}

fn tile_bits(t: TileKind) -> (bool, bool, bool, bool) {
    let p = t.profile();
    (p.contains(Edge::N), p.contains(Edge::E), p.contains(Edge::S), p.contains(Edge::W))
}

/// Exact count of suitably connected `n x n` mosaics over the tileset.
pub fn count_mosaics(n: usize, tileset: &[TileKind]) -> BigUint {
    count_mosaics_rect(n, n, tileset)
}

pub fn count_mosaics_rect(rows: usize, cols: usize, tileset: &[TileKind]) -> BigUint {
    assert!(rows >= 1 && cols >= 1);
    assert!(cols <= 30, "frontier state is a u32 bitset");
    let bits: Vec<(bool, bool, bool, bool)> = tileset.iter().map(|&t| tile_bits(t)).collect();
    // State: (pending south bits, west carry) -> count.
    let mut states: HashMap<(u32, bool), BigUint> = HashMap::new();
    states.insert((0, false), BigUint::from(1u32));
    for r in 0..rows {
        for c in 0..cols {
            let mut next: HashMap<(u32, bool), BigUint> = HashMap::new();
            for ((frontier, carry), count) in &states {
                let north = frontier & (1 << c) != 0;
                for &(tn, te, ts, tw) in &bits {
                    if tn != north || tw != *carry {
                        continue;
                    }
                    if c == cols - 1 && te {
                        continue;
                    }
                    if r == rows - 1 && ts {
                        continue;
                    }
                    let mut f = *frontier;
                    if ts {
                        f |= 1 << c;
                    } else {
                        f &= !(1 << c);
                    }
                    let carry_out = if c == cols - 1 { false } else { te };
                    *next.entry((f, carry_out)).or_default() += count.clone();
                }
            }
            states = next;
        }
    }
    states.get(&(0, false)).cloned().unwrap_or_default()
}

/// Per-row transfer: which frontier states can follow `input` across one row.
fn row_transfer(input: u32, cols: usize, last_row: bool, bits: &[(bool, bool, bool, bool)]) -> Vec<u32> {
    let mut cur: HashSet<(u32, bool)> = HashSet::new();
    cur.insert((input, false));
    for c in 0..cols {
        let mut next = HashSet::new();
        for (state, carry) in cur {
            let north = state & (1 << c) != 0;
            for &(tn, te, ts, tw) in bits {
                if tn != north || tw != carry {
                    continue;
                }
                if c == cols - 1 && te {
                    continue;
                }
                if last_row && ts {
                    continue;
                }
                let mut f = state;
                if ts {
                    f |= 1 << c;
                } else {
                    f &= !(1 << c);
                }
                next.insert((f, if c == cols - 1 { false } else { te }));
            }
        }
        cur = next;
    }
    cur.into_iter().map(|(s, _)| s).collect()
}

/// Suffix feasibility: `feasible[r]` is the set of frontier states entering
/// row `r` from which the remaining rows can complete.
fn feasibility(rows: usize, cols: usize, tileset: &[TileKind]) -> Vec<HashSet<u32>> {
    let bits: Vec<_> = tileset.iter().map(|&t| tile_bits(t)).collect();
    let mut feasible: Vec<HashSet<u32>> = vec![HashSet::new(); rows + 1];
    feasible[rows].insert(0);
    for r in (0..rows).rev() {
        let mut ok = HashSet::new();
        for input in 0u32..(1 << cols) {
            let outputs = row_transfer(input, cols, r == rows - 1, &bits);
            if outputs.iter().any(|o| feasible[r + 1].contains(o)) {
                ok.insert(input);
            }
        }
        feasible[r] = ok;
    }
    feasible
}

/// Streams every suitably connected board over `tileset` in deterministic
/// (row-major, tile-index) order to the visitor. The visitor returns `false`
/// to stop the enumeration.
pub fn for_each_suitably_connected(
    rows: usize,
    cols: usize,
    tileset: &[TileKind],
    filter: &CensusFilter,
    visitor: &mut dyn FnMut(&[TileKind]) -> bool,
) {
    assert!(cols <= 30);
    let feasible = feasibility(rows, cols, tileset);
    let mut cells: Vec<TileKind> = vec![TileKind::T0; rows * cols];
    let bits: Vec<(TileKind, (bool, bool, bool, bool))> =
        tileset.iter().map(|&t| (t, tile_bits(t))).collect();

    struct Ctx<'a> {
        rows: usize,
        cols: usize,
        bits: &'a [(TileKind, (bool, bool, bool, bool))],
        feasible: &'a [HashSet<u32>],
        filter: &'a CensusFilter,
        cells: &'a mut Vec<TileKind>,
        visitor: &'a mut dyn FnMut(&[TileKind]) -> bool,
        stop: bool,
    }

    fn interior_cells_remaining(ctx: &Ctx, r: usize, c: usize) -> usize {
        // Cells strictly inside the boundary ring at positions after (r, c).
        let mut n = 0;
        for rr in 1..ctx.rows.saturating_sub(1) {
            for cc in 1..ctx.cols.saturating_sub(1) {
                if (rr, cc) > (r, c) {
                    n += 1;
                }
            }
        }
        n
    }

    fn rec(ctx: &mut Ctx, r: usize, c: usize, frontier: u32, carry: bool, singular: usize, chs: usize) {
        if ctx.stop {
            return;
        }
        if r == ctx.rows {
            if singular >= ctx.filter.min_singular && chs >= ctx.filter.min_chs {
                let cells = ctx.cells.clone();
                if !(ctx.visitor)(&cells) {
                    ctx.stop = true;
                }
            }
            return;
        }
        if c == 0 && !ctx.feasible[r].contains(&frontier) {
            return;
        }
        let (nr, nc) = if c + 1 == ctx.cols { (r + 1, 0) } else { (r, c + 1) };
        let north = frontier & (1 << c) != 0;
        for &(t, (tn, te, ts, tw)) in ctx.bits {
            if tn != north || tw != carry {
                continue;
            }
            if c == ctx.cols - 1 && te {
                continue;
            }
            if r == ctx.rows - 1 && ts {
                continue;
            }
            let dec = t.is_decorated();
            let sing = matches!(t.decoration(), Decoration::Singular { .. });
            let new_singular = singular + sing as usize;
            let new_chs = chs + dec as usize;
            if let Some(max) = ctx.filter.max_singular {
                if new_singular > max {
                    continue;
                }
            }
            if let Some(max) = ctx.filter.max_chs {
                if new_chs > max {
                    continue;
                }
            }
            // Decorated tiles only fit strictly inside the boundary ring, so
            // the remaining interior cells bound what can still be added.
            let remaining = interior_cells_remaining(ctx, r, c);
            if new_singular + remaining < ctx.filter.min_singular
                || new_chs + remaining < ctx.filter.min_chs
            {
                continue;
            }
            let mut f = frontier;
            if ts {
                f |= 1 << c;
            } else {
                f &= !(1 << c);
            }
            ctx.cells[r * ctx.cols + c] = t;
            rec(ctx, nr, nc, f, if c == ctx.cols - 1 { false } else { te }, new_singular, new_chs);
            if ctx.stop {
                return;
            }
        }
        ctx.cells[r * ctx.cols + c] = TileKind::T0;
    }

    let mut ctx = Ctx {
        rows,
        cols,
        bits: &bits,
        feasible: &feasible,
        filter,
        cells: &mut cells,
        visitor,
        stop: false,
    };
    rec(&mut ctx, 0, 0, 0, false, 0, 0);
}

/// A finished census: the accepted boards plus a side channel for boards
/// whose admissibility verdict stayed unknown within budget.
#[derive(Debug)]
pub struct CensusResult {
    pub mosaics: Vec<Mosaic>,
    pub unknown: Vec<(Mosaic, String)>,
    pub total_suitably_connected: u64,
}

/// Enumerates every suitably connected `n`-mosaic satisfying the filter,
/// each exactly once, in deterministic order.
pub fn enumerate_mosaics(n: usize, filter: &CensusFilter, budget: &Budget) -> CensusResult {
    let mut mosaics = Vec::new();
    let mut unknown = Vec::new();
    let mut total = 0u64;
    for_each_suitably_connected(n, n, &TileKind::ALL, filter, &mut |cells| {
        total += 1;
        let m = Mosaic::new(n, n, cells.to_vec()).expect("enumerator emits full boards");
        if let Some(target) = filter.surface_target {
            if m.is_blank() || surface_components(&m).ok() != Some(target) {
                return true;
            }
        }
        if filter.require_admissible {
            if m.is_blank() {
                return true;
            }
            match admissible(&m, budget) {
                Ok(v) if v.is_yes() => mosaics.push(m),
                Ok(v) if v.is_no() => {}
                Ok(v) => unknown.push((m, v.witness().to_string())),
                Err(e) => unknown.push((m, e.to_string())),
            }
        } else {
            mosaics.push(m);
        }
        true
    });
    CensusResult { mosaics, unknown, total_suitably_connected: total }
}

/// All boundary-ring fills of an inner block using undecorated tiles only.
pub fn twofold_completions(inner: &Mosaic) -> Result<Vec<Mosaic>> {
    // The block must be internally suitably connected: every edge between
    // two block cells must match. Boundary points of the block are exposed.
    for r in 0..inner.rows() {
        for c in 0..inner.cols() {
            let p = inner.get(r, c).profile();
            if c + 1 < inner.cols()
                && p.contains(Edge::E) != inner.get(r, c + 1).profile().contains(Edge::W)
            {
                return Err(Error::InvalidBoard(format!(
                    "inner block edge mismatch at ({},{})-({},{})",
                    r + 1,
                    c + 1,
                    r + 1,
                    c + 2
                )));
            }
            if r + 1 < inner.rows()
                && p.contains(Edge::S) != inner.get(r + 1, c).profile().contains(Edge::N)
            {
                return Err(Error::InvalidBoard(format!(
                    "inner block edge mismatch at ({},{})-({},{})",
                    r + 1,
                    c + 1,
                    r + 2,
                    c + 1
                )));
            }
        }
    }
    let rows = inner.rows() + 2;
    let cols = inner.cols() + 2;
    let mut base = Mosaic::blank(rows, cols);
    for r in 0..inner.rows() {
        for c in 0..inner.cols() {
            base = base.with_cell(r + 1, c + 1, inner.get(r, c));
        }
    }
    let ring: Vec<(usize, usize)> = (0..rows)
        .flat_map(|r| (0..cols).map(move |c| (r, c)))
        .filter(|&(r, c)| r == 0 || c == 0 || r == rows - 1 || c == cols - 1)
        .collect();

    let mut out = Vec::new();
    fn fits(board: &Mosaic, r: usize, c: usize, t: TileKind) -> bool {
        let p = t.profile();
        // Board boundary edges must stay empty.
        if r == 0 && p.contains(Edge::N)
            || r == board.rows() - 1 && p.contains(Edge::S)
            || c == 0 && p.contains(Edge::W)
            || c == board.cols() - 1 && p.contains(Edge::E)
        {
            return false;
        }
        // Agree with every already decided neighbour; the inner block counts
        // as decided everywhere, ring cells are decided in row-major order.
        if r > 0 {
            let np = board.get(r - 1, c).profile();
            if !ring_pending(board, r - 1, c, r, c) && np.contains(Edge::S) != p.contains(Edge::N) {
                return false;
            }
        }
        if c > 0 {
            let np = board.get(r, c - 1).profile();
            if !ring_pending(board, r, c - 1, r, c) && np.contains(Edge::E) != p.contains(Edge::W) {
                return false;
            }
        }
        if r + 1 < board.rows() && !ring_pending(board, r + 1, c, r, c) {
            let np = board.get(r + 1, c).profile();
            if np.contains(Edge::N) != p.contains(Edge::S) {
                return false;
            }
        }
        if c + 1 < board.cols() && !ring_pending(board, r, c + 1, r, c) {
            let np = board.get(r, c + 1).profile();
            if np.contains(Edge::W) != p.contains(Edge::E) {
                return false;
            }
        }
        true
    }
    /// Is `(nr, nc)` a ring cell not yet decided when `(r, c)` is placed in
    /// row-major ring order?
    fn ring_pending(board: &Mosaic, nr: usize, nc: usize, r: usize, c: usize) -> bool {
        let rows = board.rows();
        let cols = board.cols();
        let on_ring = nr == 0 || nc == 0 || nr == rows - 1 || nc == cols - 1;
        on_ring && (nr, nc) > (r, c)
    }
    /// Ring strands must route the block's exposed connection points; a
    /// closed curve living entirely on the ring is not a completion.
    fn no_ring_only_component(board: &Mosaic) -> bool {
        let Ok(resolved) = crate::resolution::resolve_mosaic(board, crate::tile::Sign::Plus)
        else {
            return false;
        };
        let t = crate::resolution::trace(&resolved);
        let mut inner_comps: HashSet<usize> = HashSet::new();
        for (&(r, c, _), &comp) in &t.port_component {
            let on_ring = r == 0 || c == 0 || r == board.rows() - 1 || c == board.cols() - 1;
            if !on_ring {
                inner_comps.insert(comp);
            }
        }
        (0..t.components).all(|comp| inner_comps.contains(&comp))
    }
    fn rec(board: &mut Mosaic, ring: &[(usize, usize)], i: usize, out: &mut Vec<Mosaic>) {
        if i == ring.len() {
            if board.is_suitably_connected() && no_ring_only_component(board) {
                out.push(board.clone());
            }
            return;
        }
        let (r, c) = ring[i];
        for t in TileKind::UNDECORATED {
            if fits(board, r, c, t) {
                let prev = board.get(r, c);
                *board = board.with_cell(r, c, t);
                rec(board, ring, i + 1, out);
                *board = board.with_cell(r, c, prev);
            }
        }
    }
    let mut board = base;
    rec(&mut board, &ring, 0, &mut out);
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KinkKind {
    Crossing,
    Marked,
}

/// A local kink configuration together with the move that removes it.
#[derive(Debug, Clone)]
pub struct Kink {
    pub site: MoveSite,
    pub kind: KinkKind,
}

/// Reports every kink with one crossing or marked vertex, in all
/// orientations, with removal eligibility attached.
pub fn find_kinks(mosaic: &Mosaic) -> Vec<Kink> {
    let table = default_table();
    applicable_moves(mosaic, table)
        .into_iter()
        .filter(|s| s.direction == Direction::Forward)
        .filter_map(|site| {
            let family = site.rule.split('.').next().unwrap_or(&site.rule).to_string();
            match family.as_str() {
                "Γ1" => Some(Kink { site, kind: KinkKind::Crossing }),
                "Γ6" | "Γ6'" => Some(Kink { site, kind: KinkKind::Marked }),
                _ => None,
            }
        })
        .collect()
}

#[derive(Debug, Clone)]
pub struct BoundsConfig {
    pub budget: Budget,
    pub equiv_caps: SearchCaps,
    pub upper_depth: usize,
    pub upper_nodes: usize,
}

impl Default for BoundsConfig {
    fn default() -> BoundsConfig {
        BoundsConfig {
            budget: Budget::default(),
            equiv_caps: SearchCaps::new(6, 16),
            upper_depth: 6,
            upper_nodes: 4_000,
        }
    }
}

#[derive(Debug)]
pub struct BoundsReport {
    pub lower: usize,
    pub upper: usize,
    pub upper_witness: Mosaic,
    /// One line per board size scanned for the lower bound.
    pub certificate: Vec<String>,
    /// Candidates whose equivalence or admissibility stayed unknown; a
    /// nonzero count makes the lower bound conditional.
    pub unresolved: usize,
}

impl BoundsReport {
    pub fn conditional(&self) -> bool {
        self.unresolved > 0
    }
}

/// Certified mosaic-number bounds: the upper bound from bounded
/// simplification with blank-border cropping, the lower bound from censuses
/// of smaller boards filtered by move-invariants.
pub fn mosaic_number_bounds(target: &Mosaic, config: &BoundsConfig) -> Result<BoundsReport> {
    let verdict = admissible(target, &config.budget)?;
    if !verdict.is_yes() {
        return Err(Error::RequiresAdmissible("mosaic-number bounds"));
    }
    let table = default_table();

    // Upper bound: explore the move closure, cropping blank borders.
    let start = target.clone();
    let mut best = start.crop_blank_border();
    let mut best_size = best.rows().max(best.cols());
    let mut visited: HashSet<String> = HashSet::new();
    visited.insert(start.key());
    let mut frontier = vec![start];
    let mut nodes = 0usize;
    for _ in 0..config.upper_depth {
        let mut next = Vec::new();
        for board in &frontier {
            for site in applicable_moves(board, table) {
                if nodes >= config.upper_nodes {
                    break;
                }
                let Ok(after) = apply_move(board, table, &site) else { continue };
                if !visited.insert(after.key()) {
                    continue;
                }
                nodes += 1;
                let cropped = after.crop_blank_border();
                let size = cropped.rows().max(cropped.cols());
                if size < best_size {
                    best_size = size;
                    best = cropped;
                }
                next.push(after);
            }
        }
        if next.is_empty() || nodes >= config.upper_nodes {
            break;
        }
        frontier = next;
    }
    let mut upper = best_size;
    let mut upper_witness = best;

    // Lower bound: scan censuses of smaller boards. Candidates are the
    // admissible boards; move-invariant separators (singular-vertex count
    // and surface component count) dismiss most of them outright.
    let target_singular = target.singular_count();
    let target_surface = surface_components(target)?;
    let mut certificate = Vec::new();
    let mut unresolved = 0usize;
    let mut lower = 1;
    for k in 1..upper {
        let filter = CensusFilter::empty().with_admissible();
        let census = enumerate_mosaics(k, &filter, &config.budget);
        unresolved += census.unknown.len();
        let mut equivalent_found = None;
        let mut candidates = 0usize;
        let mut separated = 0usize;
        for cand in &census.mosaics {
            if cand.singular_count() != target_singular
                || surface_components(cand).ok() != Some(target_surface)
            {
                separated += 1;
                continue;
            }
            candidates += 1;
            let caps = SearchCaps {
                board_cap: config
                    .equiv_caps
                    .board_cap
                    .max(target.rows().max(target.cols()))
                    .max(k),
                ..config.equiv_caps
            };
            match equivalent_within(cand, target, table, caps, &config.budget)? {
                v if v.is_yes() => {
                    equivalent_found = Some(cand.clone());
                    break;
                }
                Verdict::Unknown { .. } => unresolved += 1,
                _ => {}
            }
        }
        if let Some(witness) = equivalent_found {
            certificate.push(format!("size {k}: equivalent representative found"));
            upper = k;
            upper_witness = witness;
            lower = k;
            break;
        }
        certificate.push(format!(
            "size {k}: {} admissible board(s), {separated} separated by invariants, \
             {candidates} candidate(s), none equivalent",
            census.mosaics.len()
        ));
        lower = k + 1;
    }
    Ok(BoundsReport { lower, upper, upper_witness, certificate, unresolved })
}

#[derive(Debug, Clone)]
pub struct LemmaConfig {
    pub board: usize,
    pub sample_cap: usize,
    pub seed: u64,
}

impl Default for LemmaConfig {
    fn default() -> LemmaConfig {
        LemmaConfig { board: 5, sample_cap: 100_000, seed: 0x5eed }
    }
}

/// Machine-checkable skeleton of the one-singular-vertex lemma: every board
/// with exactly one singular tile has a singular-free inner row or column;
/// twofold completions of decorated singular-free lines contain kinks; and
/// removing a kink drops chs by one.
#[derive(Debug, Default)]
pub struct LemmaReport {
    pub total_matching: u64,
    pub sampled: usize,
    pub with_singular_free_line: usize,
    pub fig24_lines: usize,
    pub completions: usize,
    pub completions_with_kink: usize,
    pub removals_checked: usize,
    pub removals_reducing_chs: usize,
}

impl LemmaReport {
    pub fn summary(&self) -> String {
        format!(
            "sampled {} of {} one-singular boards: singular-free line {}/{}, \
             kink-bearing completions {}/{}, chs-reducing removals {}/{}",
            self.sampled,
            self.total_matching,
            self.with_singular_free_line,
            self.sampled,
            self.completions_with_kink,
            self.completions,
            self.removals_reducing_chs,
            self.removals_checked,
        )
    }
}

pub fn lemma_support_report(config: &LemmaConfig) -> LemmaReport {
    let n = config.board;
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut report = LemmaReport::default();
    let filter = CensusFilter::empty().with_exact_singular(1);
    // Reservoir sample over the deterministic stream.
    let mut reservoir: Vec<Mosaic> = Vec::with_capacity(config.sample_cap);
    for_each_suitably_connected(n, n, &TileKind::ALL, &filter, &mut |cells| {
        report.total_matching += 1;
        let k = report.total_matching as usize;
        if reservoir.len() < config.sample_cap {
            reservoir.push(Mosaic::new(n, n, cells.to_vec()).unwrap());
        } else {
            let j = rng.gen_range(0..k);
            if j < config.sample_cap {
                reservoir[j] = Mosaic::new(n, n, cells.to_vec()).unwrap();
            }
        }
        true
    });
    report.sampled = reservoir.len();

    let table = default_table();
    for m in &reservoir {
        let inner = m.inner_region().expect("boards are at least 3x3");
        // A singular-free inner row or column, up to rotation.
        let row_free = (0..inner.rows()).find(|&r| {
            (0..inner.cols())
                .all(|c| !matches!(inner.get(r, c).decoration(), Decoration::Singular { .. }))
        });
        let col_free = (0..inner.cols()).find(|&c| {
            (0..inner.rows())
                .all(|r| !matches!(inner.get(r, c).decoration(), Decoration::Singular { .. }))
        });
        if row_free.is_some() || col_free.is_some() {
            report.with_singular_free_line += 1;
        }
        let line: Option<Mosaic> = if let Some(r) = row_free {
            Mosaic::new(1, inner.cols(), (0..inner.cols()).map(|c| inner.get(r, c)).collect()).ok()
        } else {
            col_free.and_then(|c| {
                Mosaic::new(inner.rows(), 1, (0..inner.rows()).map(|r| inner.get(r, c)).collect())
                    .ok()
            })
        };
        let Some(line) = line else { continue };
        // Fig 24-type configuration: the line carries at least one crossing
        // or marked vertex whose legs the completion must close up.
        if line.cells().iter().all(|t| !t.is_decorated()) {
            continue;
        }
        report.fig24_lines += 1;
        let Ok(completions) = twofold_completions(&line) else { continue };
        for completion in completions {
            report.completions += 1;
            let kinks = find_kinks(&completion);
            if !kinks.is_empty() {
                report.completions_with_kink += 1;
            }
            for kink in kinks {
                report.removals_checked += 1;
                if let Ok(after) = apply_move(&completion, table, &kink.site) {
                    if after.chs() + 1 == completion.chs() {
                        report.removals_reducing_chs += 1;
                    }
                }
            }
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse;

    #[test]
    fn one_by_one_board_is_blank_only() {
        assert_eq!(count_mosaics(1, &TileKind::ALL), BigUint::from(1u32));
    }

    #[test]
    fn two_by_two_count_is_blank_plus_loop() {
        assert_eq!(count_mosaics(2, &TileKind::ALL), BigUint::from(2u32));
    }

    #[test]
    fn enumeration_matches_count_on_small_boards() {
        for n in [1usize, 2, 3] {
            let census = enumerate_mosaics(n, &CensusFilter::empty(), &Budget::default());
            assert_eq!(
                BigUint::from(census.mosaics.len() as u64),
                count_mosaics(n, &TileKind::ALL),
                "n={n}"
            );
            // No duplicates.
            let keys: HashSet<String> = census.mosaics.iter().map(|m| m.key()).collect();
            assert_eq!(keys.len(), census.mosaics.len());
            for m in &census.mosaics {
                assert!(m.is_suitably_connected());
            }
        }
    }

    #[test]
    fn dp_count_invariant_under_transpose() {
        for (rows, cols) in [(2, 3), (3, 4), (2, 4)] {
            assert_eq!(
                count_mosaics_rect(rows, cols, &TileKind::ALL),
                count_mosaics_rect(cols, rows, &TileKind::ALL)
            );
        }
    }

    #[test]
    fn no_singular_two_mosaics() {
        let census =
            enumerate_mosaics(2, &CensusFilter::empty().with_min_singular(1), &Budget::default());
        assert!(census.mosaics.is_empty());
    }

    #[test]
    fn singular_three_mosaic_census_has_four_boards() {
        let census =
            enumerate_mosaics(3, &CensusFilter::empty().with_min_singular(1), &Budget::default());
        assert_eq!(census.mosaics.len(), 4);
        for m in &census.mosaics {
            assert_eq!(m.chs(), 1);
            assert_eq!(m.singular_count(), 1);
        }
    }

    #[test]
    fn twofold_rule_counts() {
        // A vertical strand block: exactly two ring completions.
        let block = parse("smg 1\n2 1\n|\n|\n").unwrap();
        let completions = twofold_completions(&block).unwrap();
        assert_eq!(completions.len(), 2);
        // A blank block: exactly one (the blank ring).
        let blank = Mosaic::blank(2, 3);
        assert_eq!(twofold_completions(&blank).unwrap().len(), 1);
        // Internally mismatched block: error.
        let bad = parse("smg 1\n1 2\n- .\n").unwrap();
        assert!(twofold_completions(&bad).is_err());
    }

    #[test]
    fn blank_board_has_no_kinks() {
        assert!(find_kinks(&Mosaic::blank(4, 4)).is_empty());
    }

    #[test]
    fn kink_removal_reduces_chs() {
        // Build a kinked loop by applying Γ1 backward to a loop mosaic.
        let board = parse("smg 1\n4 4\n. . . .\nb a . .\nc d . .\n. . . .\n").unwrap();
        let table = default_table();
        let site = applicable_moves(&board, table)
            .into_iter()
            .find(|s| s.rule.starts_with("Γ1") && s.direction == Direction::Backward)
            .unwrap();
        let kinked = apply_move(&board, table, &site).unwrap();
        let kinks = find_kinks(&kinked);
        assert!(!kinks.is_empty());
        for kink in &kinks {
            assert_eq!(kink.kind, KinkKind::Crossing);
            let after = apply_move(&kinked, table, &kink.site).unwrap();
            assert_eq!(after.chs() + 1, kinked.chs());
        }
    }
}
