//! Rectangular mosaic boards and suitable-connectivity validation.

use crate::tile::{Decoration, Edge, EdgeSet, Symmetry, TileKind};
use crate::{Error, Result};

/// An `rows x cols` matrix of mosaic tiles.
///
/// Boards are immutable values; all edits return new boards. Coordinates in
/// reports are 1-based matrix coordinates `(row, column)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Mosaic {
    rows: usize,
    cols: usize,
    cells: Vec<TileKind>,
}

/// A tile owning a connection point that no contiguous tile matches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Offender {
    /// 1-based row.
    pub row: usize,
    /// 1-based column.
    pub col: usize,
    /// The edges whose connection points are unmatched.
    pub edges: EdgeSet,
}

#[derive(Debug, Clone)]
pub struct ValidationReport {
    pub suitably_connected: bool,
    /// Offenders in row-major order.
    pub offenders: Vec<Offender>,
}

impl Mosaic {
    pub fn new(rows: usize, cols: usize, cells: Vec<TileKind>) -> Result<Mosaic> {
        if rows == 0 || cols == 0 {
            return Err(Error::InvalidBoard("dimensions must be at least 1x1".into()));
        }
        if cells.len() != rows * cols {
            return Err(Error::InvalidBoard(format!(
                "expected {} cells for a {}x{} board, got {}",
                rows * cols,
                rows,
                cols,
                cells.len()
            )));
        }
        Ok(Mosaic { rows, cols, cells })
    }

    pub fn blank(rows: usize, cols: usize) -> Mosaic {
        Mosaic { rows, cols, cells: vec![TileKind::T0; rows * cols] }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    /// 0-based access.
    pub fn get(&self, row: usize, col: usize) -> TileKind {
        self.cells[row * self.cols + col]
    }

    pub fn cells(&self) -> &[TileKind] {
        &self.cells
    }

    /// Returns a new board with one cell replaced (0-based coordinates).
    pub fn with_cell(&self, row: usize, col: usize, tile: TileKind) -> Mosaic {
        let mut cells = self.cells.clone();
        cells[row * self.cols + col] = tile;
        Mosaic { rows: self.rows, cols: self.cols, cells }
    }

    pub fn is_blank(&self) -> bool {
        self.cells.iter().all(|&t| t == TileKind::T0)
    }

    /// Presence of a connection point of the *neighbour* of `(row, col)`
    /// across `edge`, or `false` past the board boundary.
    fn neighbour_point(&self, row: usize, col: usize, edge: Edge) -> bool {
        let (nr, nc) = match edge {
            Edge::N => (row.wrapping_sub(1), col),
            Edge::S => (row + 1, col),
            Edge::W => (row, col.wrapping_sub(1)),
            Edge::E => (row, col + 1),
        };
        if nr >= self.rows || nc >= self.cols {
            return false;
        }
        self.get(nr, nc).profile().contains(edge.opposite())
    }

    /// Checks suitable connectivity: every connection point of every tile
    /// must coincide with a connection point of a contiguous tile, and board
    /// boundary edges carry no connection points. Tiles without connection
    /// points never offend.
    pub fn validate(&self) -> ValidationReport {
        let mut offenders = Vec::new();
        for r in 0..self.rows {
            for c in 0..self.cols {
                let profile = self.get(r, c).profile();
                let mut bad = EdgeSet::EMPTY;
                for e in profile.iter() {
                    if !self.neighbour_point(r, c, e) {
                        bad = bad.with(e);
                    }
                }
                if !bad.is_empty() {
                    offenders.push(Offender { row: r + 1, col: c + 1, edges: bad });
                }
            }
        }
        ValidationReport { suitably_connected: offenders.is_empty(), offenders }
    }

    pub fn is_suitably_connected(&self) -> bool {
        self.validate().suitably_connected
    }

    /// Mosaic injection: appends one blank row and one blank column.
    pub fn inject(&self) -> Mosaic {
        let mut out = Mosaic::blank(self.rows + 1, self.cols + 1);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.cells[r * out.cols + c] = self.get(r, c);
            }
        }
        out
    }

    /// Appends `n` blank rows at the bottom.
    pub fn pad_rows(&self, n: usize) -> Mosaic {
        let mut cells = self.cells.clone();
        cells.extend(std::iter::repeat(TileKind::T0).take(n * self.cols));
        Mosaic { rows: self.rows + n, cols: self.cols, cells }
    }

    /// Appends `n` blank columns at the right.
    pub fn pad_cols(&self, n: usize) -> Mosaic {
        let mut out = Mosaic::blank(self.rows, self.cols + n);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.cells[r * out.cols + c] = self.get(r, c);
            }
        }
        out
    }

    /// Pads with blank rows/columns to exactly `n x n`.
    pub fn pad_to_square(&self, n: usize) -> Result<Mosaic> {
        if n < self.rows || n < self.cols {
            return Err(Error::InvalidBoard(format!(
                "cannot pad a {}x{} board down to {n}x{n}",
                self.rows, self.cols
            )));
        }
        Ok(self.pad_rows(n - self.rows).pad_cols(n - self.cols))
    }

    /// Number of cells carrying a crossing, marked vertex or singular vertex.
    pub fn chs(&self) -> usize {
        self.cells.iter().filter(|t| t.is_decorated()).count()
    }

    pub fn count_decoration(&self, f: impl Fn(Decoration) -> bool) -> usize {
        self.cells.iter().filter(|t| f(t.decoration())).count()
    }

    pub fn singular_count(&self) -> usize {
        self.count_decoration(|d| matches!(d, Decoration::Singular { .. }))
    }

    pub fn marked_count(&self) -> usize {
        self.count_decoration(|d| matches!(d, Decoration::Marked { .. }))
    }

    pub fn crossing_count(&self) -> usize {
        self.count_decoration(|d| matches!(d, Decoration::Crossing { .. }))
    }

    /// The interior block excluding the boundary ring.
    pub fn inner_region(&self) -> Result<Mosaic> {
        if self.rows < 3 || self.cols < 3 {
            return Err(Error::NoInterior);
        }
        let mut cells = Vec::with_capacity((self.rows - 2) * (self.cols - 2));
        for r in 1..self.rows - 1 {
            for c in 1..self.cols - 1 {
                cells.push(self.get(r, c));
            }
        }
        Mosaic::new(self.rows - 2, self.cols - 2, cells)
    }

    /// Applies a square symmetry to the whole board, transforming every tile.
    pub fn board_transform(&self, g: Symmetry) -> Mosaic {
        let (nr, nc) = g.apply_dims(self.rows, self.cols);
        let mut out = Mosaic::blank(nr, nc);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let (tr, tc) = g.apply_coords(r, c, self.rows, self.cols);
                out.cells[tr * nc + tc] = self.get(r, c).transform(g);
            }
        }
        out
    }

    /// Removes blank boundary rows and columns (all four sides).
    pub fn crop_blank_border(&self) -> Mosaic {
        let mut top = 0;
        let mut bottom = self.rows;
        let mut left = 0;
        let mut right = self.cols;
        let row_blank = |r: usize| (0..self.cols).all(|c| self.get(r, c) == TileKind::T0);
        let col_blank = |c: usize| (0..self.rows).all(|r| self.get(r, c) == TileKind::T0);
        while bottom - top > 1 && row_blank(top) {
            top += 1;
        }
        while bottom - top > 1 && row_blank(bottom - 1) {
            bottom -= 1;
        }
        while right - left > 1 && col_blank(left) {
            left += 1;
        }
        while right - left > 1 && col_blank(right - 1) {
            right -= 1;
        }
        let mut cells = Vec::with_capacity((bottom - top) * (right - left));
        for r in top..bottom {
            for c in left..right {
                cells.push(self.get(r, c));
            }
        }
        Mosaic { rows: bottom - top, cols: right - left, cells }
    }

    /// Canonical one-line key, used for hashing search states.
    pub fn key(&self) -> String {
        let mut s = String::with_capacity(self.cells.len() + 16);
        s.push_str(&format!("{}x{}:", self.rows, self.cols));
        for t in &self.cells {
            s.push(t.code());
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse;

    fn loop2() -> Mosaic {
        parse("smg 1\n2 2\nb a\nc d\n").unwrap()
    }

    #[test]
    fn blank_board_validates() {
        let m = Mosaic::blank(3, 3);
        let report = m.validate();
        assert!(report.suitably_connected);
        assert!(report.offenders.is_empty());
    }

    #[test]
    fn loop_mosaic_validates() {
        assert!(loop2().is_suitably_connected());
    }

    #[test]
    fn single_arc_on_1x1_is_invalid() {
        let m = Mosaic::new(1, 1, vec![TileKind::T1]).unwrap();
        let report = m.validate();
        assert!(!report.suitably_connected);
        assert_eq!(report.offenders.len(), 1);
        assert_eq!((report.offenders[0].row, report.offenders[0].col), (1, 1));
    }

    #[test]
    fn offender_is_the_tile_owning_the_point() {
        // A lone horizontal line: both its points are unmatched, while the
        // blank neighbours never offend.
        let m = parse("smg 1\n1 3\n. - .\n").unwrap();
        let report = m.validate();
        assert_eq!(report.offenders.len(), 1);
        assert_eq!((report.offenders[0].row, report.offenders[0].col), (1, 2));
    }

    #[test]
    fn inject_preserves_content_and_validity() {
        let m = loop2();
        let inj = m.inject();
        assert_eq!((inj.rows(), inj.cols()), (3, 3));
        for r in 0..2 {
            for c in 0..2 {
                assert_eq!(inj.get(r, c), m.get(r, c));
            }
        }
        assert!(inj.is_suitably_connected());
        assert_eq!(inj.chs(), m.chs());
    }

    #[test]
    fn chs_counts_decorated_cells() {
        assert_eq!(Mosaic::blank(4, 4).chs(), 0);
        let m = parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap();
        assert_eq!(m.chs(), 1);
        assert_eq!(m.singular_count(), 1);
    }

    #[test]
    fn inner_region_sizes() {
        let m = Mosaic::blank(3, 3);
        let inner = m.inner_region().unwrap();
        assert_eq!((inner.rows(), inner.cols()), (1, 1));
        let m = Mosaic::blank(5, 5);
        assert_eq!(m.inner_region().unwrap().rows(), 3);
        assert!(matches!(Mosaic::blank(2, 3).inner_region(), Err(Error::NoInterior)));
    }

    #[test]
    fn board_transform_group_law() {
        let m = parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap();
        assert_eq!(m.board_transform(Symmetry::IDENTITY), m);
        let q = Symmetry::QUARTER_TURN;
        assert_eq!(m.board_transform(q).board_transform(q), m.board_transform(Symmetry::HALF_TURN));
    }

    #[test]
    fn transform_preserves_validity() {
        let m = parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap();
        for g in Symmetry::ALL {
            assert!(m.board_transform(g).is_suitably_connected(), "{g:?}");
        }
    }

    #[test]
    fn crop_removes_blank_border() {
        let m = loop2().inject().inject();
        let cropped = m.crop_blank_border();
        assert_eq!(cropped, loop2());
    }

    #[test]
    fn validate_is_local() {
        // Editing one cell only changes offender status for it and its
        // neighbours.
        let m = loop2().inject();
        let edited = m.with_cell(2, 2, TileKind::T5);
        let before = m.validate().offenders;
        let after = edited.validate().offenders;
        for o in before.iter().chain(after.iter()) {
            let dr = (o.row as isize - 3).abs();
            let dc = (o.col as isize - 3).abs();
            assert!(dr + dc <= 1, "offender {o:?} is not local to the edit");
        }
    }
}
