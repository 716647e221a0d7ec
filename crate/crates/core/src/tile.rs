//! The fifteen-tile alphabet for singular marked graph mosaics.
//!
//! Tiles are squares with connection points at edge midpoints. The alphabet
//! has one blank tile, four corner arcs, two lines, two double arcs, two
//! crossings, two marked-vertex tiles and two singular-vertex tiles; every
//! decorated tile carries four connection points.

use std::fmt;

/// One of the four sides of a tile.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Edge {
    N,
    E,
    S,
    W,
}

impl Edge {
    pub const ALL: [Edge; 4] = [Edge::N, Edge::E, Edge::S, Edge::W];

    /// The matching edge of the neighbouring cell across `self`.
    pub fn opposite(self) -> Edge {
        match self {
            Edge::N => Edge::S,
            Edge::S => Edge::N,
            Edge::E => Edge::W,
            Edge::W => Edge::E,
        }
    }

    fn letter(self) -> char {
        match self {
            Edge::N => 'N',
            Edge::E => 'E',
            Edge::S => 'S',
            Edge::W => 'W',
        }
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

/// A subset of the four edges, used for connection-point profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct EdgeSet(u8);

impl EdgeSet {
    pub const EMPTY: EdgeSet = EdgeSet(0);
    pub const FULL: EdgeSet = EdgeSet(0b1111);

    fn bit(edge: Edge) -> u8 {
        match edge {
            Edge::N => 1,
            Edge::E => 2,
            Edge::S => 4,
            Edge::W => 8,
        }
    }

    pub fn of(edges: &[Edge]) -> EdgeSet {
        let mut s = EdgeSet::EMPTY;
        for &e in edges {
            s = s.with(e);
        }
        s
    }

    pub fn with(self, edge: Edge) -> EdgeSet {
        EdgeSet(self.0 | Self::bit(edge))
    }

    pub fn contains(self, edge: Edge) -> bool {
        self.0 & Self::bit(edge) != 0
    }

    pub fn contains_all(self, other: EdgeSet) -> bool {
        self.0 & other.0 == other.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = Edge> {
        Edge::ALL.into_iter().filter(move |&e| self.contains(e))
    }
}

impl fmt::Display for EdgeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        for e in self.iter() {
            write!(f, "{}", e.letter())?;
        }
        Ok(())
    }
}

/// Horizontal means the west-east direction, vertical the north-south one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Axis {
    Horizontal,
    Vertical,
}

impl Axis {
    fn rotated(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

/// What a four-point tile carries at its centre.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Decoration {
    None,
    /// Classical crossing; `over` is the axis of the over strand.
    Crossing { over: Axis },
    /// Marked vertex; `marker` is the axis of the marker segment.
    Marked { marker: Axis },
    /// Singular vertex; `circled` is the axis of the encircled strand.
    Singular { circled: Axis },
}

impl Decoration {
    pub fn is_vertex(self) -> bool {
        matches!(self, Decoration::Marked { .. } | Decoration::Singular { .. })
    }
}

/// Resolution direction for marked and singular vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub const BOTH: [Sign; 2] = [Sign::Plus, Sign::Minus];

    pub fn flip(self) -> Sign {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Sign::Plus => write!(f, "+"),
            Sign::Minus => write!(f, "-"),
        }
    }
}

/// A symmetry of the square: counter-clockwise rotation by `k` quarter turns,
/// optionally preceded by the reflection that swaps west and east.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Symmetry {
    pub quarter_turns: u8,
    pub reflect: bool,
}

impl Symmetry {
    pub const IDENTITY: Symmetry = Symmetry { quarter_turns: 0, reflect: false };

    pub const ALL: [Symmetry; 8] = [
        Symmetry { quarter_turns: 0, reflect: false },
        Symmetry { quarter_turns: 1, reflect: false },
        Symmetry { quarter_turns: 2, reflect: false },
        Symmetry { quarter_turns: 3, reflect: false },
        Symmetry { quarter_turns: 0, reflect: true },
        Symmetry { quarter_turns: 1, reflect: true },
        Symmetry { quarter_turns: 2, reflect: true },
        Symmetry { quarter_turns: 3, reflect: true },
    ];

    pub const ROTATIONS: [Symmetry; 4] = [
        Symmetry { quarter_turns: 0, reflect: false },
        Symmetry { quarter_turns: 1, reflect: false },
        Symmetry { quarter_turns: 2, reflect: false },
        Symmetry { quarter_turns: 3, reflect: false },
    ];

    pub const QUARTER_TURN: Symmetry = Symmetry { quarter_turns: 1, reflect: false };
    pub const HALF_TURN: Symmetry = Symmetry { quarter_turns: 2, reflect: false };

    /// Index into `Symmetry::ALL`, used for deterministic orderings.
    pub fn index(self) -> usize {
        self.quarter_turns as usize + if self.reflect { 4 } else { 0 }
    }

    /// Where a connection point on `edge` ends up after applying `self`
    /// to the picture (reflection first, then rotation).
    pub fn apply_edge(self, edge: Edge) -> Edge {
        let mut e = if self.reflect {
            match edge {
                Edge::E => Edge::W,
                Edge::W => Edge::E,
                other => other,
            }
        } else {
            edge
        };
        for _ in 0..self.quarter_turns {
            // Counter-clockwise: the north edge moves to the west side.
            e = match e {
                Edge::N => Edge::W,
                Edge::W => Edge::S,
                Edge::S => Edge::E,
                Edge::E => Edge::N,
            };
        }
        e
    }

    pub fn apply_set(self, set: EdgeSet) -> EdgeSet {
        let mut out = EdgeSet::EMPTY;
        for e in set.iter() {
            out = out.with(self.apply_edge(e));
        }
        out
    }

    fn apply_axis(self, axis: Axis) -> Axis {
        if self.quarter_turns % 2 == 1 {
            axis.rotated()
        } else {
            axis
        }
    }

    /// Group composition: `self.compose(other)` acts as `self` after `other`.
    pub fn compose(self, other: Symmetry) -> Symmetry {
        // Determine the composite by its action on two independent edges.
        let n = self.apply_edge(other.apply_edge(Edge::N));
        let e = self.apply_edge(other.apply_edge(Edge::E));
        for g in Symmetry::ALL {
            if g.apply_edge(Edge::N) == n && g.apply_edge(Edge::E) == e {
                return g;
            }
        }
        unreachable!("dihedral composition is closed")
    }

    pub fn inverse(self) -> Symmetry {
        for g in Symmetry::ALL {
            if g.compose(self) == Symmetry::IDENTITY {
                return g;
            }
        }
        unreachable!("every dihedral element has an inverse")
    }

    /// Image of 0-based cell coordinates in an `rows x cols` grid.
    /// The transformed grid has swapped dimensions for odd quarter turns.
    pub fn apply_coords(self, row: usize, col: usize, rows: usize, cols: usize) -> (usize, usize) {
        let (mut r, mut c) = (row, col);
        let (mut h, mut w) = (rows, cols);
        if self.reflect {
            c = w - 1 - c;
        }
        for _ in 0..self.quarter_turns {
            // Counter-clockwise quarter turn of an h x w grid yields w x h.
            let (nr, nc) = (w - 1 - c, r);
            r = nr;
            c = nc;
            std::mem::swap(&mut h, &mut w);
        }
        (r, c)
    }

    /// Dimensions of the transformed grid.
    pub fn apply_dims(self, rows: usize, cols: usize) -> (usize, usize) {
        if self.quarter_turns % 2 == 1 {
            (cols, rows)
        } else {
            (rows, cols)
        }
    }
}

/// One of the fifteen mosaic tiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
#[allow(clippy::upper_case_acronyms)]
pub enum TileKind {
    T0,
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
    T8,
    T9,
    T10,
    T11,
    T12,
    T13,
    T14,
}

use TileKind::*;

impl TileKind {
    pub const ALL: [TileKind; 15] =
        [T0, T1, T2, T3, T4, T5, T6, T7, T8, T9, T10, T11, T12, T13, T14];

    /// Tiles without crossing, marker or circle decorations.
    pub const UNDECORATED: [TileKind; 9] = [T0, T1, T2, T3, T4, T5, T6, T7, T8];

    /// Single-character body code used by the text format.
    pub fn code(self) -> char {
        match self {
            T0 => '.',
            T1 => 'a',
            T2 => 'b',
            T3 => 'c',
            T4 => 'd',
            T5 => '-',
            T6 => '|',
            T7 => 's',
            T8 => 'z',
            T9 => 'X',
            T10 => 'x',
            T11 => 'm',
            T12 => 'M',
            T13 => 'o',
            T14 => 'O',
        }
    }

    pub fn from_code(c: char) -> Option<TileKind> {
        TileKind::ALL.into_iter().find(|t| t.code() == c)
    }

    pub fn from_long_code(s: &str) -> Option<TileKind> {
        let idx: usize = s.strip_prefix('T')?.parse().ok()?;
        TileKind::ALL.get(idx).copied()
    }

    pub fn index(self) -> usize {
        self as usize
    }

    /// The edges carrying connection points.
    pub fn profile(self) -> EdgeSet {
        EdgeSet::of_pairs(self.pairing())
    }

    /// How strands traverse the tile: each pair joins two connection points.
    /// Crossing-type tiles carry the two transversal strands N-S and E-W.
    pub fn pairing(self) -> &'static [(Edge, Edge)] {
        match self {
            T0 => &[],
            T1 => &[(Edge::S, Edge::W)],
            T2 => &[(Edge::S, Edge::E)],
            T3 => &[(Edge::N, Edge::E)],
            T4 => &[(Edge::N, Edge::W)],
            T5 => &[(Edge::W, Edge::E)],
            T6 => &[(Edge::N, Edge::S)],
            T7 => &[(Edge::N, Edge::W), (Edge::S, Edge::E)],
            T8 => &[(Edge::N, Edge::E), (Edge::S, Edge::W)],
            T9 | T10 | T11 | T12 | T13 | T14 => &[(Edge::N, Edge::S), (Edge::W, Edge::E)],
        }
    }

    pub fn decoration(self) -> Decoration {
        match self {
            T9 => Decoration::Crossing { over: Axis::Vertical },
            T10 => Decoration::Crossing { over: Axis::Horizontal },
            T11 => Decoration::Marked { marker: Axis::Horizontal },
            T12 => Decoration::Marked { marker: Axis::Vertical },
            T13 => Decoration::Singular { circled: Axis::Vertical },
            T14 => Decoration::Singular { circled: Axis::Horizontal },
            _ => Decoration::None,
        }
    }

    pub fn is_decorated(self) -> bool {
        !matches!(self.decoration(), Decoration::None)
    }

    pub fn is_vertex(self) -> bool {
        self.decoration().is_vertex()
    }

    /// The tile whose picture is the image of this one under `g`.
    pub fn transform(self, g: Symmetry) -> TileKind {
        let pairing: Vec<(Edge, Edge)> = self
            .pairing()
            .iter()
            .map(|&(a, b)| (g.apply_edge(a), g.apply_edge(b)))
            .collect();
        let decoration = match self.decoration() {
            Decoration::None => Decoration::None,
            Decoration::Crossing { over } => Decoration::Crossing { over: g.apply_axis(over) },
            Decoration::Marked { marker } => Decoration::Marked { marker: g.apply_axis(marker) },
            Decoration::Singular { circled } => {
                Decoration::Singular { circled: g.apply_axis(circled) }
            }
        };
        for t in TileKind::ALL {
            if t.decoration() == decoration && same_pairing(t.pairing(), &pairing) {
                return t;
            }
        }
        unreachable!("the alphabet is closed under square symmetries")
    }

    /// Resolve the tile in the given direction.
    ///
    /// Marked tiles splice to the two double arcs, singular tiles to the two
    /// crossings (`+` puts the encircled strand on top, `-` the other one).
    /// All other tiles are fixed.
    pub fn resolve(self, sign: Sign) -> TileKind {
        match self {
            T11 => match sign {
                Sign::Plus => T8,
                Sign::Minus => T7,
            },
            T12 => match sign {
                Sign::Plus => T7,
                Sign::Minus => T8,
            },
            T13 => match sign {
                Sign::Plus => T9,
                Sign::Minus => T10,
            },
            T14 => match sign {
                Sign::Plus => T10,
                Sign::Minus => T9,
            },
            other => other,
        }
    }

    /// Given the edge where a strand enters, the edge where it leaves.
    pub fn traverse(self, entry: Edge) -> Option<Edge> {
        for &(a, b) in self.pairing() {
            if a == entry {
                return Some(b);
            }
            if b == entry {
                return Some(a);
            }
        }
        None
    }
}

trait WithPairs {
    fn with_pairs(self, pairs: &[(Edge, Edge)]) -> EdgeSet;
}

impl WithPairs for EdgeSet {
    fn with_pairs(self, pairs: &[(Edge, Edge)]) -> EdgeSet {
        let mut s = self;
        for &(a, b) in pairs {
            s = s.with(a).with(b);
        }
        s
    }
}

impl EdgeSet {
    fn of_pairs(pairs: &[(Edge, Edge)]) -> EdgeSet {
        EdgeSet::EMPTY.with_pairs(pairs)
    }
}

impl fmt::Display for TileKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T{}", self.index())
    }
}

fn same_pairing(a: &[(Edge, Edge)], b: &[(Edge, Edge)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    a.iter().all(|&(x, y)| b.iter().any(|&(p, q)| (p, q) == (x, y) || (q, p) == (x, y)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn alphabet_profile_counts() {
        let by_len = |n| TileKind::ALL.iter().filter(|t| t.profile().len() == n).count();
        assert_eq!(by_len(0), 1);
        assert_eq!(by_len(2), 6);
        assert_eq!(by_len(4), 8);
    }

    #[test]
    fn decorated_tiles_have_full_profile() {
        for t in TileKind::ALL {
            if t.is_decorated() {
                assert_eq!(t.profile(), EdgeSet::FULL, "{t}");
            }
        }
    }

    #[test]
    fn seven_tiles_up_to_rotation() {
        let mut classes: Vec<Vec<TileKind>> = Vec::new();
        for t in TileKind::ALL {
            if classes.iter().any(|c| c.contains(&t)) {
                continue;
            }
            let orbit: Vec<TileKind> =
                Symmetry::ROTATIONS.iter().map(|&g| t.transform(g)).collect();
            let mut orbit: Vec<TileKind> = orbit;
            orbit.sort();
            orbit.dedup();
            classes.push(orbit);
        }
        assert_eq!(classes.len(), 7);
    }

    #[test]
    fn profile_examples() {
        assert!(T0.profile().is_empty());
        assert_eq!(T13.profile(), EdgeSet::FULL);
        assert_eq!(T1.profile(), EdgeSet::of(&[Edge::S, Edge::W]));
    }

    #[test]
    fn transform_examples() {
        for g in Symmetry::ALL {
            assert_eq!(T0.transform(g), T0);
        }
        assert_eq!(T13.transform(Symmetry::QUARTER_TURN), T14);
        assert_eq!(T5.transform(Symmetry::QUARTER_TURN), T6);
        // Arc tiles in counter-clockwise rotation order.
        assert_eq!(T1.transform(Symmetry::QUARTER_TURN), T2);
        assert_eq!(T2.transform(Symmetry::QUARTER_TURN), T3);
        assert_eq!(T3.transform(Symmetry::QUARTER_TURN), T4);
        assert_eq!(T4.transform(Symmetry::QUARTER_TURN), T1);
    }

    #[test]
    fn transform_is_group_action() {
        for t in TileKind::ALL {
            assert_eq!(t.transform(Symmetry::IDENTITY), t);
            for g in Symmetry::ALL {
                for h in Symmetry::ALL {
                    assert_eq!(
                        t.transform(g).transform(h),
                        t.transform(h.compose(g)),
                        "tile {t}, g={g:?}, h={h:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn symmetry_group_laws() {
        for g in Symmetry::ALL {
            assert_eq!(g.compose(g.inverse()), Symmetry::IDENTITY);
            assert_eq!(g.inverse().compose(g), Symmetry::IDENTITY);
        }
        let r = Symmetry::QUARTER_TURN;
        assert_eq!(r.compose(r), Symmetry::HALF_TURN);
    }

    #[test]
    fn resolve_fixes_profile() {
        for t in TileKind::ALL {
            for s in Sign::BOTH {
                assert_eq!(t.resolve(s).profile(), t.profile(), "{t}");
                let d = t.resolve(s).decoration();
                assert!(matches!(d, Decoration::None | Decoration::Crossing { .. }));
            }
        }
    }

    #[test]
    fn resolve_examples() {
        assert_eq!(T3.resolve(Sign::Plus), T3);
        // T13's circled strand is vertical, so + gives the crossing with the
        // vertical strand on top.
        assert_eq!(T13.resolve(Sign::Plus), T9);
        assert_eq!(T13.resolve(Sign::Minus), T10);
        // The two resolutions of a marked tile are the two double arcs.
        assert_ne!(T11.resolve(Sign::Plus), T11.resolve(Sign::Minus));
        assert_eq!(T11.resolve(Sign::Minus), T7);
    }

    #[test]
    fn resolve_differs_exactly_on_vertices() {
        for t in TileKind::ALL {
            let same = t.resolve(Sign::Plus) == t.resolve(Sign::Minus);
            assert_eq!(same, !t.is_vertex(), "{t}");
        }
    }

    #[test]
    fn resolve_commutes_with_rotation() {
        for t in TileKind::ALL {
            for g in Symmetry::ROTATIONS {
                for s in Sign::BOTH {
                    assert_eq!(t.transform(g).resolve(s), t.resolve(s).transform(g), "{t}");
                }
            }
        }
    }

    #[test]
    fn coords_roundtrip() {
        for g in Symmetry::ALL {
            let inv = g.inverse();
            for r in 0..3 {
                for c in 0..4 {
                    let (tr, tc) = g.apply_coords(r, c, 3, 4);
                    let (h, w) = g.apply_dims(3, 4);
                    assert!(tr < h && tc < w);
                    let back = inv.apply_coords(tr, tc, h, w);
                    assert_eq!(back, (r, c));
                }
            }
        }
    }
}
