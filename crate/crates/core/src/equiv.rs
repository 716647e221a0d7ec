//! Bounded equivalence search over the move closure.
//!
//! Two boards are padded to a common square size and explored by
//! bidirectional breadth-first search over exact board states. `proved-no`
//! is only ever issued from a separating invariant, never from search
//! exhaustion.

use std::collections::HashMap;

use crate::analysis::{admissible, surface_components, Budget, Verdict};
use crate::mosaic::Mosaic;
use crate::moves::{applicable_moves, apply_move, MoveSite, MoveTable};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
pub struct SearchCaps {
    pub board_cap: usize,
    pub depth_cap: usize,
    pub node_cap: usize,
}

impl SearchCaps {
    pub fn new(board_cap: usize, depth_cap: usize) -> SearchCaps {
        SearchCaps { board_cap, depth_cap, node_cap: Budget::default().search_nodes }
    }
}

struct Frontier {
    /// key -> (depth, parent key, move taken from the parent)
    visited: HashMap<String, (usize, Option<(String, MoveSite)>)>,
    frontier: Vec<Mosaic>,
    depth: usize,
}

impl Frontier {
    fn new(start: Mosaic) -> Frontier {
        let mut visited = HashMap::new();
        visited.insert(start.key(), (0, None));
        Frontier { visited, frontier: vec![start], depth: 0 }
    }

    /// Expands one level; returns a meeting key if the other side knows it.
    fn expand(
        &mut self,
        table: &MoveTable,
        other: &Frontier,
        nodes_left: &mut usize,
    ) -> Option<String> {
        let mut next = Vec::new();
        let mut meet = None;
        for board in std::mem::take(&mut self.frontier) {
            let from_key = board.key();
            for site in applicable_moves(&board, table) {
                if *nodes_left == 0 {
                    break;
                }
                let Ok(after) = apply_move(&board, table, &site) else { continue };
                if after.rows() != board.rows() || after.cols() != board.cols() {
                    continue;
                }
                let key = after.key();
                if self.visited.contains_key(&key) {
                    continue;
                }
                *nodes_left = nodes_left.saturating_sub(1);
                self.visited.insert(key.clone(), (self.depth + 1, Some((from_key.clone(), site))));
                if other.visited.contains_key(&key) && meet.is_none() {
                    meet = Some(key.clone());
                }
                next.push(after);
            }
        }
        self.depth += 1;
        self.frontier = next;
        meet
    }

    fn path_to(&self, key: &str) -> Vec<String> {
        let mut steps = Vec::new();
        let mut cur = key.to_string();
        while let Some((_, Some((parent, site)))) = self.visited.get(&cur) {
            steps.push(site.to_string());
            cur = parent.clone();
        }
        steps.reverse();
        steps
    }
}

fn pad(board: &Mosaic, cap: usize) -> Result<Mosaic> {
    let size = board.rows().max(board.cols());
    if size > cap {
        return Err(Error::BoardCapTooSmall { cap, size });
    }
    board.pad_to_square(cap)
}

/// Searches for a move path between `a` and `b` after padding both to
/// `board_cap`. Separating invariants (surface component count and the
/// admissibility class) yield proved-no; budget exhaustion yields unknown.
pub fn equivalent_within(
    a: &Mosaic,
    b: &Mosaic,
    table: &MoveTable,
    caps: SearchCaps,
    budget: &Budget,
) -> Result<Verdict> {
    for m in [a, b] {
        if !m.is_suitably_connected() {
            return Err(Error::InvalidBoard("inputs must be suitably connected".into()));
        }
    }
    let a = pad(a, caps.board_cap)?;
    let b = pad(b, caps.board_cap)?;
    if a.key() == b.key() {
        return Ok(Verdict::ProvedYes {
            witness: "identical boards after padding".into(),
            steps: Vec::new(),
        });
    }

    // Separating invariants first: they are cheap and sound.
    if !a.is_blank() && !b.is_blank() {
        let sa = surface_components(&a)?;
        let sb = surface_components(&b)?;
        if sa != sb {
            return Ok(Verdict::ProvedNo {
                witness: format!("surface component counts differ: {sa} vs {sb}"),
                steps: Vec::new(),
            });
        }
        let va = admissible(&a, budget)?;
        let vb = admissible(&b, budget)?;
        if va.is_yes() && vb.is_no() || va.is_no() && vb.is_yes() {
            return Ok(Verdict::ProvedNo {
                witness: format!(
                    "admissibility classes differ: {} vs {}",
                    va.state(),
                    vb.state()
                ),
                steps: Vec::new(),
            });
        }
    }

    let mut fa = Frontier::new(a);
    let mut fb = Frontier::new(b);
    let mut nodes_left = caps.node_cap.min(budget.search_nodes);
    while fa.depth + fb.depth < caps.depth_cap && nodes_left > 0 {
        if fa.frontier.is_empty() && fb.frontier.is_empty() {
            break;
        }
        // Expand the smaller frontier for balance; ties expand the a-side.
        let meet = if fb.frontier.is_empty()
            || (!fa.frontier.is_empty() && fa.frontier.len() <= fb.frontier.len())
        {
            fa.expand(table, &fb, &mut nodes_left)
        } else {
            fb.expand(table, &fa, &mut nodes_left)
        };
        if let Some(key) = meet {
            let mut steps = fa.path_to(&key);
            let back = fb.path_to(&key);
            let total = steps.len() + back.len();
            steps.push(format!("meet at {key}"));
            steps.extend(back.into_iter().rev().map(|s| format!("undo {s}")));
            return Ok(Verdict::ProvedYes {
                witness: format!("move path of length {total} found"),
                steps,
            });
        }
    }
    Ok(Verdict::Unknown {
        budget: format!(
            "no path within depth {} ({} states explored)",
            caps.depth_cap,
            fa.visited.len() + fb.visited.len()
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::io::parse;
    use crate::moves::default_table;

    fn f1_ring_a() -> Mosaic {
        parse("smg 1\n3 3\n. b a\nb o d\nc d .\n").unwrap()
    }

    #[test]
    fn reflexivity_at_depth_zero() {
        let m = f1_ring_a();
        let caps = SearchCaps { board_cap: 4, depth_cap: 0, node_cap: 10 };
        let v = equivalent_within(&m, &m, default_table(), caps, &Budget::default()).unwrap();
        assert!(v.is_yes());
    }

    #[test]
    fn decoration_toggle_is_one_move() {
        let a = f1_ring_a();
        let b = parse("smg 1\n3 3\n. b a\nb O d\nc d .\n").unwrap();
        let caps = SearchCaps::new(3, 2);
        let v = equivalent_within(&a, &b, default_table(), caps, &Budget::default()).unwrap();
        assert!(v.is_yes(), "{v:?}");
    }

    #[test]
    fn ring_mirror_is_one_move() {
        let a = f1_ring_a();
        let b = parse("smg 1\n3 3\nb a .\nc o a\n. c d\n").unwrap();
        let caps = SearchCaps::new(3, 2);
        let v = equivalent_within(&a, &b, default_table(), caps, &Budget::default()).unwrap();
        assert!(v.is_yes(), "{v:?}");
    }

    #[test]
    fn surface_component_separator() {
        let a = f1_ring_a();
        let b = parse("smg 1\n4 4\n. b a .\nb o o a\n| c d |\nc - - d\n").unwrap();
        let caps = SearchCaps::new(4, 4);
        let v = equivalent_within(&a, &b, default_table(), caps, &Budget::default()).unwrap();
        assert!(v.is_no(), "{v:?}");
    }

    #[test]
    fn board_cap_too_small_is_an_error() {
        let a = f1_ring_a();
        let caps = SearchCaps::new(2, 2);
        assert!(matches!(
            equivalent_within(&a, &a, default_table(), caps, &Budget::default()),
            Err(Error::BoardCapTooSmall { .. })
        ));
    }
}
