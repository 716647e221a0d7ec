//! Positive/negative resolutions of a mosaic and extraction of planar
//! link-diagram structure by strand following.

use std::collections::HashMap;

use crate::mosaic::Mosaic;
use crate::tile::{Axis, Decoration, Edge, Sign};
use crate::{Error, Result};

/// A mosaic whose decorations are only blanks and classical crossings.
#[derive(Debug, Clone)]
pub struct ResolvedMosaic {
    pub base: Mosaic,
    pub sign: Sign,
}

/// One crossing of a planar diagram, as pairs of arc identifiers along the
/// over and under strands.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Crossing {
    pub over: (u32, u32),
    pub under: (u32, u32),
}

/// Planar-diagram code: crossings over arc identifiers plus a count of
/// crossing-free closed components.
#[derive(Debug, Clone, Default)]
pub struct PDCode {
    pub crossings: Vec<Crossing>,
    pub free_loops: usize,
}

impl PDCode {
    pub fn arc_count(&self) -> usize {
        let mut max = 0u32;
        let mut any = false;
        for c in &self.crossings {
            for a in [c.over.0, c.over.1, c.under.0, c.under.1] {
                any = true;
                max = max.max(a);
            }
        }
        if any {
            max as usize + 1
        } else {
            0
        }
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("pd {} {}\n", self.crossings.len(), self.free_loops);
        for c in &self.crossings {
            out.push_str(&format!(
                "over {} {} under {} {}\n",
                c.over.0, c.over.1, c.under.0, c.under.1
            ));
        }
        out
    }
}

/// Result of strand-following a resolved mosaic.
#[derive(Debug, Clone)]
pub struct Trace {
    /// Number of closed strands.
    pub components: usize,
    pub pd: PDCode,
    /// Arc identifier -> component index.
    pub arc_component: Vec<usize>,
    /// Component index of every active port `(row, col, edge)` (0-based).
    pub port_component: HashMap<(usize, usize, Edge), usize>,
}

/// Replaces every cell by its resolution in the given direction.
pub fn resolve_mosaic(mosaic: &Mosaic, sign: Sign) -> Result<ResolvedMosaic> {
    let report = mosaic.validate();
    if !report.suitably_connected {
        return Err(Error::InvalidBoard(format!(
            "mosaic is not suitably connected ({} offenders)",
            report.offenders.len()
        )));
    }
    let cells = mosaic.cells().iter().map(|t| t.resolve(sign)).collect();
    let base = Mosaic::new(mosaic.rows(), mosaic.cols(), cells)?;
    Ok(ResolvedMosaic { base, sign })
}

#[derive(Debug, Clone, Copy)]
struct Passage {
    row: usize,
    col: usize,
    entry: Edge,
    exit: Edge,
}

impl Passage {
    /// Axis of travel through the cell.
    fn axis(&self) -> Axis {
        match (self.entry, self.exit) {
            (Edge::N, Edge::S) | (Edge::S, Edge::N) => Axis::Vertical,
            (Edge::W, Edge::E) | (Edge::E, Edge::W) => Axis::Horizontal,
            _ => unreachable!("crossing passages are transversal"),
        }
    }
}

/// Follows every strand through tile pairings. Deterministic: strands are
/// discovered in row-major port order, arcs labelled in first-visit order.
pub fn trace(resolved: &ResolvedMosaic) -> Trace {
    let m = &resolved.base;
    let mut visited: HashMap<(usize, usize, Edge), usize> = HashMap::new();
    let mut components = 0usize;
    // Passages through crossing cells, per component, in walk order.
    let mut crossing_passages: Vec<Vec<Passage>> = Vec::new();
    let mut free_loops = 0usize;

    for r in 0..m.rows() {
        for c in 0..m.cols() {
            for entry in Edge::ALL {
                if !m.get(r, c).profile().contains(entry) {
                    continue;
                }
                if visited.contains_key(&(r, c, entry)) {
                    continue;
                }
                let comp = components;
                components += 1;
                let mut passages = Vec::new();
                let (mut cr, mut cc, mut ce) = (r, c, entry);
                loop {
                    let tile = m.get(cr, cc);
                    let exit = tile.traverse(ce).expect("active port has a pairing");
                    visited.insert((cr, cc, ce), comp);
                    visited.insert((cr, cc, exit), comp);
                    if matches!(tile.decoration(), Decoration::Crossing { .. }) {
                        passages.push(Passage { row: cr, col: cc, entry: ce, exit });
                    }
                    // Step across the exit edge; suitable connectivity
                    // guarantees the neighbour exists and matches.
                    let (nr, nc) = match exit {
                        Edge::N => (cr - 1, cc),
                        Edge::S => (cr + 1, cc),
                        Edge::W => (cr, cc - 1),
                        Edge::E => (cr, cc + 1),
                    };
                    cr = nr;
                    cc = nc;
                    ce = exit.opposite();
                    if (cr, cc, ce) == (r, c, entry) {
                        break;
                    }
                }
                if passages.is_empty() {
                    free_loops += 1;
                }
                crossing_passages.push(passages);
            }
        }
    }

    // Assign arc identifiers: within each component the arc after passage i
    // ends at passage i+1 (cyclically).
    let mut arc_component = Vec::new();
    let mut next_arc = 0u32;
    // Per passage: (incoming arc, outgoing arc).
    let mut passage_arcs: HashMap<(usize, usize, Axis), (u32, u32)> = HashMap::new();
    for (comp, passages) in crossing_passages.iter().enumerate() {
        let k = passages.len();
        if k == 0 {
            continue;
        }
        // Arc `first_arc + i` runs from the exit of passage `i` to the entry
        // of passage `i + 1` (cyclically), so each passage's outgoing arc is
        // its own index and its incoming arc is the previous one.
        let first_arc = next_arc;
        for (i, p) in passages.iter().enumerate() {
            let outgoing = next_arc;
            let incoming =
                if i == 0 { first_arc + k as u32 - 1 } else { next_arc - 1 };
            arc_component.push(comp);
            next_arc += 1;
            let key = (p.row, p.col, p.axis());
            passage_arcs.insert(key, (incoming, outgoing));
        }
    }

    // Build crossing records in row-major cell order.
    let mut crossings = Vec::new();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            if let Decoration::Crossing { over } = m.get(r, c).decoration() {
                let over_arcs = passage_arcs[&(r, c, over)];
                let under_arcs = passage_arcs[&(r, c, over.rotated_axis())];
                crossings.push(Crossing { over: over_arcs, under: under_arcs });
            }
        }
    }

    Trace {
        components,
        pd: PDCode { crossings, free_loops },
        arc_component,
        port_component: visited,
    }
}

trait RotatedAxis {
    fn rotated_axis(self) -> Axis;
}

impl RotatedAxis for Axis {
    fn rotated_axis(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse;
    use crate::tile::{Symmetry, TileKind};

    fn loop2() -> Mosaic {
        parse("smg 1\n2 2\nb a\nc d\n").unwrap()
    }

    /// Independent component counter: union-find over connection points,
    /// merging the two ends of every tile strand and matched cell edges.
    fn union_find_components(m: &Mosaic) -> usize {
        let idx = |r: usize, c: usize, e: Edge| -> usize {
            (r * m.cols() + c) * 4
                + match e {
                    Edge::N => 0,
                    Edge::E => 1,
                    Edge::S => 2,
                    Edge::W => 3,
                }
        };
        let n = m.rows() * m.cols() * 4;
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, x: usize) -> usize {
            if p[x] != x {
                let r = find(p, p[x]);
                p[x] = r;
            }
            p[x]
        }
        let mut union = |p: &mut Vec<usize>, a: usize, b: usize| {
            let (ra, rb) = (find(p, a), find(p, b));
            if ra != rb {
                p[ra] = rb;
            }
        };
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                for &(a, b) in m.get(r, c).pairing() {
                    union(&mut parent, idx(r, c, a), idx(r, c, b));
                }
                if c + 1 < m.cols() && m.get(r, c).profile().contains(Edge::E) {
                    union(&mut parent, idx(r, c, Edge::E), idx(r, c + 1, Edge::W));
                }
                if r + 1 < m.rows() && m.get(r, c).profile().contains(Edge::S) {
                    union(&mut parent, idx(r, c, Edge::S), idx(r + 1, c, Edge::N));
                }
            }
        }
        let mut roots = std::collections::HashSet::new();
        for r in 0..m.rows() {
            for c in 0..m.cols() {
                for e in m.get(r, c).profile().iter() {
                    let i = idx(r, c, e);
                    let root = find(&mut parent, i);
                    roots.insert(root);
                }
            }
        }
        roots.len()
    }

    #[test]
    fn loop_traces_to_one_free_loop() {
        let t = trace(&resolve_mosaic(&loop2(), Sign::Plus).unwrap());
        assert_eq!(t.components, 1);
        assert_eq!(t.pd.crossings.len(), 0);
        assert_eq!(t.pd.free_loops, 1);
    }

    #[test]
    fn two_disjoint_loops() {
        let m = parse("smg 1\n2 4\nb a b a\nc d c d\n").unwrap();
        let t = trace(&resolve_mosaic(&m, Sign::Plus).unwrap());
        assert_eq!(t.components, 2);
        assert_eq!(t.pd.free_loops, 2);
        assert_eq!(union_find_components(&m), 2);
    }

    #[test]
    fn resolution_is_identity_without_vertices() {
        let m = loop2();
        let plus = resolve_mosaic(&m, Sign::Plus).unwrap();
        let minus = resolve_mosaic(&m, Sign::Minus).unwrap();
        assert_eq!(plus.base, minus.base);
        assert_eq!(plus.base, m);
    }

    #[test]
    fn singular_ring_resolves_to_kink() {
        let m = parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap();
        for sign in Sign::BOTH {
            let res = resolve_mosaic(&m, sign).unwrap();
            assert_eq!(res.base.chs(), 1);
            assert_eq!(res.base.crossing_count(), 1);
            let t = trace(&res);
            assert_eq!(t.components, 1);
            assert_eq!(t.pd.crossings.len(), 1);
            assert_eq!(t.pd.free_loops, 0);
            // A kink: two arcs, each occurring exactly twice.
            assert_eq!(t.arc_component.len(), 2);
            assert_eq!(
                union_find_components(&res.base),
                t.components,
                "union-find oracle disagrees"
            );
        }
    }

    #[test]
    fn crossing_count_matches_vertex_rule() {
        // After resolving, crossings = crossing tiles + singular tiles of the
        // original; marked tiles contribute none.
        let m = parse("smg 1\n4 4\n. b a .\nb o o a\n| c d |\nc - - d\n").unwrap();
        assert!(m.is_suitably_connected());
        for sign in Sign::BOTH {
            let t = trace(&resolve_mosaic(&m, sign).unwrap());
            assert_eq!(t.pd.crossings.len(), m.crossing_count() + m.singular_count());
        }
    }

    #[test]
    fn arc_identifiers_occur_exactly_twice() {
        let m = parse("smg 1\n4 4\n. b a .\nb o o a\n| c d |\nc - - d\n").unwrap();
        let t = trace(&resolve_mosaic(&m, Sign::Plus).unwrap());
        let mut occurrences = vec![0usize; t.pd.crossings.len() * 2];
        for c in &t.pd.crossings {
            for a in [c.over.0, c.over.1, c.under.0, c.under.1] {
                occurrences[a as usize] += 1;
            }
        }
        assert!(occurrences.iter().all(|&n| n == 2), "{occurrences:?}");
    }

    #[test]
    fn trace_invariant_under_board_transform() {
        let m = parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap();
        let base = trace(&resolve_mosaic(&m, Sign::Plus).unwrap());
        for g in Symmetry::ALL {
            let t = trace(&resolve_mosaic(&m.board_transform(g), Sign::Plus).unwrap());
            assert_eq!(t.components, base.components);
            assert_eq!(t.pd.crossings.len(), base.pd.crossings.len());
            assert_eq!(t.pd.free_loops, base.pd.free_loops);
        }
    }

    #[test]
    fn invalid_mosaic_rejected() {
        let m = Mosaic::new(1, 1, vec![TileKind::T5]).unwrap();
        assert!(resolve_mosaic(&m, Sign::Plus).is_err());
    }
}
