//! Data-driven local rewrite system: planar mosaic moves, Yoshikawa-type
//! moves, singular-vertex moves, and the H-admissibility conversions.
//!
//! Moves are data, not code. Each rule is a pair of pattern windows over the
//! tile-code grammar, validated at load time so that a rewrite can never
//! break suitable connectivity of the surrounding board. The matcher tries
//! all eight square symmetries of every rule.

use std::collections::HashMap;
use std::sync::OnceLock;

use crate::mosaic::Mosaic;
use crate::tile::{Edge, EdgeSet, Symmetry, TileKind};
use crate::{Error, Result};

/// A pattern cell: a concrete tile, or a wildcard constraint listing edges
/// that must carry connection points (the tile is otherwise unconstrained
/// and copied unchanged by a rewrite).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PatternCell {
    Tile(TileKind),
    Wild(EdgeSet),
}

impl PatternCell {
    fn matches(self, tile: TileKind) -> bool {
        match self {
            PatternCell::Tile(t) => t == tile,
            PatternCell::Wild(required) => tile.profile().contains_all(required),
        }
    }

    fn transform(self, g: Symmetry) -> PatternCell {
        match self {
            PatternCell::Tile(t) => PatternCell::Tile(t.transform(g)),
            PatternCell::Wild(set) => PatternCell::Wild(g.apply_set(set)),
        }
    }

    /// Connection-point requirement on `edge`: `Some(bool)` for pinned
    /// presence, `None` for unconstrained wildcard edges.
    fn requirement(self, edge: Edge) -> Option<bool> {
        match self {
            PatternCell::Tile(t) => Some(t.profile().contains(edge)),
            PatternCell::Wild(required) => {
                if required.contains(edge) {
                    Some(true)
                } else {
                    None
                }
            }
        }
    }

    pub fn code(self) -> String {
        match self {
            PatternCell::Tile(t) => t.code().to_string(),
            PatternCell::Wild(set) if set.is_empty() => "?".to_string(),
            PatternCell::Wild(set) => format!("?{set}"),
        }
    }
}

/// A named local rewrite: two same-shaped windows with identical boundary
/// connection-point requirements.
#[derive(Debug, Clone)]
pub struct MoveRule {
    pub name: String,
    /// `(rows, cols)` of the pattern windows.
    pub window: (usize, usize),
    pub lhs: Vec<PatternCell>,
    pub rhs: Vec<PatternCell>,
    /// Name of the inverse rule; every shipped rule is its own inverse via
    /// the backward direction.
    pub involutive_partner: String,
}

impl MoveRule {
    /// Family prefix, e.g. `Γ6'` for variant `Γ6'.b`.
    pub fn family(&self) -> &str {
        self.name.split('.').next().unwrap_or(&self.name)
    }

    pub fn side(&self, direction: Direction) -> (&[PatternCell], &[PatternCell]) {
        match direction {
            Direction::Forward => (&self.lhs, &self.rhs),
            Direction::Backward => (&self.rhs, &self.lhs),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Forward => write!(f, "forward"),
            Direction::Backward => write!(f, "backward"),
        }
    }
}

/// A concrete placement of a rule on a board.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveSite {
    pub rule: String,
    /// 0-based top-left corner of the oriented window.
    pub anchor: (usize, usize),
    pub orientation: Symmetry,
    pub direction: Direction,
}

impl std::fmt::Display for MoveSite {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "{} {} at ({},{}) orientation {}",
            self.rule,
            self.direction,
            self.anchor.0 + 1,
            self.anchor.1 + 1,
            self.orientation.index()
        )
    }
}

/// One pre-oriented pattern side of a rule.
#[derive(Debug, Clone)]
struct OrientedPattern {
    rule_index: usize,
    orientation: Symmetry,
    direction: Direction,
    rows: usize,
    cols: usize,
    cells: Vec<PatternCell>,
}

#[derive(Debug, Clone)]
pub struct MoveTable {
    rules: Vec<MoveRule>,
    by_name: HashMap<String, usize>,
    /// All 8 orientations of both sides of every rule, sorted for the
    /// deterministic site order (rule name, orientation, direction).
    oriented: Vec<OrientedPattern>,
}

impl MoveTable {
    pub fn rules(&self) -> &[MoveRule] {
        &self.rules
    }

    pub fn get(&self, name: &str) -> Option<&MoveRule> {
        self.by_name.get(&normalize_name(name)).map(|&i| &self.rules[i])
    }

    pub fn family_names(&self) -> Vec<String> {
        let mut names: Vec<String> = Vec::new();
        for r in &self.rules {
            let fam = r.family().to_string();
            if !names.contains(&fam) {
                names.push(fam);
            }
        }
        names
    }

    /// Rules whose name or family matches `needle` (ASCII `G` aliases `Γ`).
    pub fn select(&self, needle: &str) -> Vec<&MoveRule> {
        let needle = normalize_name(needle);
        self.rules
            .iter()
            .filter(|r| r.name == needle || r.family() == needle)
            .collect()
    }
}

/// CLI convenience: a leading `G` names the same family as `Γ`.
pub fn normalize_name(name: &str) -> String {
    if let Some(rest) = name.strip_prefix('G') {
        if rest.chars().next().is_some_and(|c| c.is_ascii_digit()) {
            return format!("Γ{rest}");
        }
    }
    name.to_string()
}

fn table_err(rule: &str, row: usize, col: usize, msg: impl Into<String>) -> Error {
    Error::MoveTable { rule: rule.to_string(), row, col, msg: msg.into() }
}

fn parse_pattern_cell(tok: &str) -> Option<PatternCell> {
    if let Some(rest) = tok.strip_prefix('?') {
        let mut set = EdgeSet::EMPTY;
        for ch in rest.chars() {
            let e = match ch.to_ascii_uppercase() {
                'N' => Edge::N,
                'E' => Edge::E,
                'S' => Edge::S,
                'W' => Edge::W,
                _ => return None,
            };
            set = set.with(e);
        }
        return Some(PatternCell::Wild(set));
    }
    crate::io::lookup_code(tok).map(PatternCell::Tile)
}

/// Parses and validates a move-table document.
///
/// Grammar (line oriented, `#` comments):
///
/// ```text
/// rule Γ1.a
/// window 2 2
/// lhs
/// b a
/// X d
/// rhs
/// . .
/// a .
/// end
/// ```
pub fn load_move_table(source: &str) -> Result<MoveTable> {
    let mut rules: Vec<MoveRule> = Vec::new();
    let mut lines = source
        .lines()
        .map(|l| l.trim())
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .peekable();

    while let Some(line) = lines.next() {
        let name = line
            .strip_prefix("rule ")
            .ok_or_else(|| table_err("?", 0, 0, format!("expected `rule <name>`, got {line:?}")))?
            .trim()
            .to_string();
        let dims = lines
            .next()
            .and_then(|l| l.strip_prefix("window "))
            .ok_or_else(|| table_err(&name, 0, 0, "expected `window <rows> <cols>`"))?;
        let mut it = dims.split_whitespace();
        let h: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| table_err(&name, 0, 0, "malformed window height"))?;
        let w: usize = it
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| table_err(&name, 0, 0, "malformed window width"))?;
        let mut read_side = |label: &str| -> Result<Vec<PatternCell>> {
            let header = lines.next();
            if header != Some(label) {
                return Err(table_err(&name, 0, 0, format!("expected `{label}`")));
            }
            let mut cells = Vec::with_capacity(h * w);
            for r in 0..h {
                let row = lines
                    .next()
                    .ok_or_else(|| table_err(&name, r + 1, 1, "missing pattern row"))?;
                let toks: Vec<&str> = row.split_whitespace().collect();
                if toks.len() != w {
                    return Err(table_err(
                        &name,
                        r + 1,
                        1,
                        format!("expected {w} cells, got {}", toks.len()),
                    ));
                }
                for (c, tok) in toks.iter().enumerate() {
                    let cell = parse_pattern_cell(tok).ok_or_else(|| {
                        table_err(&name, r + 1, c + 1, format!("unknown pattern cell {tok:?}"))
                    })?;
                    cells.push(cell);
                }
            }
            Ok(cells)
        };
        let lhs = read_side("lhs")?;
        let rhs = read_side("rhs")?;
        if lines.next() != Some("end") {
            return Err(table_err(&name, 0, 0, "expected `end`"));
        }
        let rule = MoveRule {
            involutive_partner: name.clone(),
            name,
            window: (h, w),
            lhs,
            rhs,
        };
        validate_rule(&rule)?;
        rules.push(rule);
    }

    let mut by_name = HashMap::new();
    for (i, r) in rules.iter().enumerate() {
        if by_name.insert(r.name.clone(), i).is_some() {
            return Err(table_err(&r.name, 0, 0, "duplicate rule name"));
        }
    }
    let mut oriented = Vec::new();
    let mut order: Vec<usize> = (0..rules.len()).collect();
    order.sort_by(|&a, &b| rules[a].name.cmp(&rules[b].name));
    for &i in &order {
        let rule = &rules[i];
        for direction in [Direction::Forward, Direction::Backward] {
            let (from, _) = rule.side(direction);
            for g in Symmetry::ALL {
                let (cells, rows, cols) = orient_side(from, rule.window.0, rule.window.1, g);
                oriented.push(OrientedPattern {
                    rule_index: i,
                    orientation: g,
                    direction,
                    rows,
                    cols,
                    cells,
                });
            }
        }
    }
    Ok(MoveTable { rules, by_name, oriented })
}

/// Checks the rule invariants: wildcards at identical positions, internal
/// consistency of each side, and identical connection-point requirements on
/// every window-boundary or wildcard-facing edge.
fn validate_rule(rule: &MoveRule) -> Result<()> {
    let (h, w) = rule.window;
    let at = |side: &[PatternCell], r: usize, c: usize| side[r * w + c];
    for r in 0..h {
        for c in 0..w {
            let l = at(&rule.lhs, r, c);
            let rh = at(&rule.rhs, r, c);
            let lwild = matches!(l, PatternCell::Wild(_));
            let rwild = matches!(rh, PatternCell::Wild(_));
            if lwild != rwild || (lwild && l != rh) {
                return Err(table_err(
                    &rule.name,
                    r + 1,
                    c + 1,
                    "wildcard cells must appear identically in lhs and rhs",
                ));
            }
        }
    }
    for (label, side) in [("lhs", &rule.lhs), ("rhs", &rule.rhs)] {
        // Interior edges between two concrete cells must agree.
        for r in 0..h {
            for c in 0..w {
                let here = at(side, r, c);
                if c + 1 < w {
                    if let (Some(a), Some(b)) =
                        (here.requirement(Edge::E), at(side, r, c + 1).requirement(Edge::W))
                    {
                        if a != b {
                            return Err(table_err(
                                &rule.name,
                                r + 1,
                                c + 1,
                                format!("{label} interior east edge mismatch"),
                            ));
                        }
                    }
                }
                if r + 1 < h {
                    if let (Some(a), Some(b)) =
                        (here.requirement(Edge::S), at(side, r + 1, c).requirement(Edge::N))
                    {
                        if a != b {
                            return Err(table_err(
                                &rule.name,
                                r + 1,
                                c + 1,
                                format!("{label} interior south edge mismatch"),
                            ));
                        }
                    }
                }
            }
        }
    }
    // Boundary profile: for every concrete cell and every edge that leads
    // outside the window or into a wildcard cell, lhs and rhs must pin the
    // same presence.
    for r in 0..h {
        for c in 0..w {
            let l = at(&rule.lhs, r, c);
            let rh = at(&rule.rhs, r, c);
            if matches!(l, PatternCell::Wild(_)) {
                continue;
            }
            for e in Edge::ALL {
                let (nr, nc) = match e {
                    Edge::N => (r.wrapping_sub(1), c),
                    Edge::S => (r + 1, c),
                    Edge::W => (r, c.wrapping_sub(1)),
                    Edge::E => (r, c + 1),
                };
                let exposed = nr >= h || nc >= w || matches!(at(&rule.lhs, nr, nc), PatternCell::Wild(_));
                if exposed && l.requirement(e) != rh.requirement(e) {
                    return Err(table_err(
                        &rule.name,
                        r + 1,
                        c + 1,
                        format!("boundary profile mismatch on edge {e}"),
                    ));
                }
            }
        }
    }
    Ok(())
}

const DEFAULT_TABLE_SOURCE: &str = include_str!("../assets/moves.smgt");

/// The shipped move table.
pub fn default_table() -> &'static MoveTable {
    static TABLE: OnceLock<MoveTable> = OnceLock::new();
    TABLE.get_or_init(|| load_move_table(DEFAULT_TABLE_SOURCE).expect("shipped table is valid"))
}

pub fn default_table_source() -> &'static str {
    DEFAULT_TABLE_SOURCE
}

/// The oriented image of a pattern side.
fn orient_side(
    cells: &[PatternCell],
    h: usize,
    w: usize,
    g: Symmetry,
) -> (Vec<PatternCell>, usize, usize) {
    let (nh, nw) = g.apply_dims(h, w);
    let mut out = vec![PatternCell::Tile(TileKind::T0); nh * nw];
    for r in 0..h {
        for c in 0..w {
            let (tr, tc) = g.apply_coords(r, c, h, w);
            out[tr * nw + tc] = cells[r * w + c].transform(g);
        }
    }
    (out, nh, nw)
}

fn matches_at(board: &Mosaic, cells: &[PatternCell], h: usize, w: usize, ar: usize, ac: usize) -> bool {
    if ar + h > board.rows() || ac + w > board.cols() {
        return false;
    }
    for r in 0..h {
        for c in 0..w {
            if !cells[r * w + c].matches(board.get(ar + r, ac + c)) {
                return false;
            }
        }
    }
    true
}

/// Every placement of every rule on the board, in deterministic order
/// (rule name, anchor row-major, orientation index, direction).
pub fn applicable_moves(board: &Mosaic, table: &MoveTable) -> Vec<MoveSite> {
    let mut sites = Vec::new();
    for pat in &table.oriented {
        if pat.rows > board.rows() || pat.cols > board.cols() {
            continue;
        }
        for ar in 0..=board.rows() - pat.rows {
            for ac in 0..=board.cols() - pat.cols {
                if matches_at(board, &pat.cells, pat.rows, pat.cols, ar, ac) {
                    sites.push(MoveSite {
                        rule: table.rules[pat.rule_index].name.clone(),
                        anchor: (ar, ac),
                        orientation: pat.orientation,
                        direction: pat.direction,
                    });
                }
            }
        }
    }
    sites.sort_by(|a, b| {
        (&a.rule, a.anchor, a.orientation.index(), a.direction).cmp(&(
            &b.rule,
            b.anchor,
            b.orientation.index(),
            b.direction,
        ))
    });
    sites
}

/// Applies a move at a site. The window is replaced by the oriented target
/// side with wildcard cells copied unchanged.
pub fn apply_move(board: &Mosaic, table: &MoveTable, site: &MoveSite) -> Result<Mosaic> {
    let rule = table.get(&site.rule).ok_or_else(|| Error::UnknownRule(site.rule.clone()))?;
    let (from, to) = rule.side(site.direction);
    let g = site.orientation;
    let (fcells, h, w) = orient_side(from, rule.window.0, rule.window.1, g);
    let (tcells, _, _) = orient_side(to, rule.window.0, rule.window.1, g);
    let (ar, ac) = site.anchor;
    if !matches_at(board, &fcells, h, w, ar, ac) {
        return Err(Error::PatternMismatch);
    }
    let mut cells = board.cells().to_vec();
    for r in 0..h {
        for c in 0..w {
            if let PatternCell::Tile(t) = tcells[r * w + c] {
                cells[(ar + r) * board.cols() + (ac + c)] = t;
            }
        }
    }
    Mosaic::new(board.rows(), board.cols(), cells)
}

/// The inverse site: same placement, opposite direction.
pub fn inverse_site(site: &MoveSite) -> MoveSite {
    MoveSite { direction: site.direction.flip(), ..site.clone() }
}

/// Applies the conversion between an H-admissible marked-vertex pattern and
/// its singular-vertex counterpart inside the given cell region
/// (0-based, inclusive). `kind` selects which singularity level to convert.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SingularityKind {
    Upper,
    Lower,
    Both,
}

pub fn convert_h_singularity(
    board: &Mosaic,
    region: ((usize, usize), (usize, usize)),
    kind: SingularityKind,
) -> Result<Mosaic> {
    let table = default_table();
    let apply_kind = |board: &Mosaic, family: &str| -> Result<Mosaic> {
        let sites = applicable_moves(board, table);
        for site in sites {
            if site.direction != Direction::Forward {
                continue;
            }
            let rule = table.get(&site.rule).unwrap();
            if rule.family() != family {
                continue;
            }
            let (h, w) = site
                .orientation
                .apply_dims(rule.window.0, rule.window.1);
            let (ar, ac) = site.anchor;
            let ((r0, c0), (r1, c1)) = region;
            if ar >= r0 && ac >= c0 && ar + h - 1 <= r1 && ac + w - 1 <= c1 {
                return apply_move(board, table, &site);
            }
        }
        Err(Error::PatternMismatch)
    };
    match kind {
        SingularityKind::Upper => apply_kind(board, "U-sing"),
        SingularityKind::Lower => apply_kind(board, "L-sing"),
        SingularityKind::Both => {
            let first = apply_kind(board, "U-sing")?;
            apply_kind(&first, "L-sing")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse;

    #[test]
    fn shipped_table_loads() {
        let table = default_table();
        let families = table.family_names();
        assert!(families.len() >= 19, "{families:?}");
        for expected in [
            "P1", "P2", "P3", "P4", "P5", "P6", "P7", "P8", "P9", "P10", "P11", "P12", "P13",
            "P14", "P15", "P8''", "P9''", "P10''", "P11''", "Γ1", "Γ2", "Γ3", "Γ4", "Γ4'", "Γ5",
            "Γ6", "Γ6'", "Γ7", "Γ8", "Γ9", "Γ9'", "Γ10", "Γ11", "Γ12", "U-sing", "L-sing",
        ] {
            assert!(families.iter().any(|f| f == expected), "missing family {expected}");
        }
    }

    #[test]
    fn empty_document_gives_empty_table() {
        let table = load_move_table("# nothing here\n").unwrap();
        assert!(table.rules().is_empty());
    }

    #[test]
    fn boundary_mismatch_rejected() {
        let doc = "rule bad\nwindow 1 2\nlhs\n- -\nrhs\n. .\nend\n";
        let err = load_move_table(doc).unwrap_err();
        assert!(matches!(err, Error::MoveTable { .. }), "{err:?}");
    }

    #[test]
    fn internal_mismatch_rejected() {
        let doc = "rule bad\nwindow 1 2\nlhs\n- .\nrhs\n- .\nend\n";
        assert!(load_move_table(doc).is_err());
    }

    #[test]
    fn wildcard_position_mismatch_rejected() {
        let doc = "rule bad\nwindow 1 1\nlhs\n?\nrhs\n.\nend\n";
        assert!(load_move_table(doc).is_err());
    }

    #[test]
    fn blank_board_has_no_sites() {
        let board = Mosaic::blank(4, 4);
        let sites = applicable_moves(&board, default_table());
        // No shipped rule has an all-blank side, so nothing may match.
        assert!(sites.is_empty(), "{}", sites.len());
    }

    #[test]
    fn forward_backward_is_identity() {
        let board = parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap();
        let table = default_table();
        for site in applicable_moves(&board, table) {
            let after = apply_move(&board, table, &site).unwrap();
            assert!(after.is_suitably_connected(), "{site} broke connectivity");
            let back = apply_move(&after, table, &inverse_site(&site)).unwrap();
            assert_eq!(back, board, "{site} is not involutive");
        }
    }

    #[test]
    fn applicable_moves_equivariant_under_board_transform() {
        let board = parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap();
        let table = default_table();
        let base: std::collections::BTreeSet<String> = applicable_moves(&board, table)
            .iter()
            .map(|s| apply_move(&board, table, s).unwrap().key())
            .collect();
        for g in Symmetry::ALL {
            let tboard = board.board_transform(g);
            let imgs: std::collections::BTreeSet<String> = applicable_moves(&tboard, table)
                .iter()
                .map(|s| apply_move(&tboard, table, s).unwrap().board_transform(g.inverse()).key())
                .collect();
            assert_eq!(imgs, base, "orbit mismatch under {g:?}");
        }
    }

    #[test]
    fn gamma1_backward_introduces_kink() {
        // The Γ1 reduced side (a corner arc beside blanks) embedded in a loop.
        let board = parse("smg 1\n4 4\n. . . .\nb a . .\nc d . .\n. . . .\n").unwrap();
        assert!(board.is_suitably_connected());
        let table = default_table();
        let site = applicable_moves(&board, table)
            .into_iter()
            .find(|s| s.rule.starts_with("Γ1") && s.direction == Direction::Backward)
            .expect("kink creation site");
        let after = apply_move(&board, table, &site).unwrap();
        assert!(after.is_suitably_connected());
        assert_eq!(after.chs(), board.chs() + 1);
    }

    #[test]
    fn planar_rules_preserve_chs() {
        let table = default_table();
        let board = parse("smg 1\n4 4\n. b a .\nb o d .\nc d . .\n. . . .\n").unwrap();
        for site in applicable_moves(&board, table) {
            if site.rule.starts_with('P') {
                let after = apply_move(&board, table, &site).unwrap();
                assert_eq!(after.chs(), board.chs(), "{site}");
            }
        }
    }

    #[test]
    fn unknown_rule_is_an_error() {
        let board = Mosaic::blank(2, 2);
        let site = MoveSite {
            rule: "nope".into(),
            anchor: (0, 0),
            orientation: Symmetry::IDENTITY,
            direction: Direction::Forward,
        };
        assert!(matches!(
            apply_move(&board, default_table(), &site),
            Err(Error::UnknownRule(_))
        ));
    }

    #[test]
    fn mismatched_site_is_an_error() {
        let board = Mosaic::blank(3, 3);
        let site = MoveSite {
            rule: "Γ1.a".into(),
            anchor: (0, 0),
            orientation: Symmetry::IDENTITY,
            direction: Direction::Forward,
        };
        assert!(matches!(
            apply_move(&board, default_table(), &site),
            Err(Error::PatternMismatch)
        ));
    }
}
