//! Regenerates the derived fixtures under `fixtures/`. Run explicitly with
//! `cargo test -p smg-core --test fixtures_gen -- --ignored --nocapture`.
//!
//! The derived boards are found by breadth-first search over the move
//! closure of the injected 3-mosaic ring, so the shipped equivalence paths
//! exist by construction and are short.

use std::collections::{HashSet, VecDeque};

use smg_core::analysis::{admissible, euler_characteristic, surface_components, Budget};
use smg_core::io::{parse, serialize};
use smg_core::mosaic::Mosaic;
use smg_core::moves::{applicable_moves, apply_move, default_table};

fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

fn ring3() -> Mosaic {
    parse(&std::fs::read_to_string(fixtures_dir().join("fig20_f1_3mosaic.smg")).unwrap()).unwrap()
}

/// Shallowest board in the move closure of `start` with the requested
/// decoration census (crossings, marked, singular).
fn closure_search(start: &Mosaic, want: (usize, usize, usize)) -> (Mosaic, usize) {
    let table = default_table();
    let mut visited: HashSet<String> = HashSet::new();
    visited.insert(start.key());
    let mut frontier = VecDeque::from([(start.clone(), 0usize)]);
    while let Some((board, depth)) = frontier.pop_front() {
        assert!(depth < 6, "no board with census {want:?} within depth 6");
        for site in applicable_moves(&board, table) {
            let Ok(after) = apply_move(&board, table, &site) else { continue };
            if !visited.insert(after.key()) {
                continue;
            }
            let census =
                (after.crossing_count(), after.marked_count(), after.singular_count());
            if census == want {
                return (after, depth + 1);
            }
            frontier.push_back((after, depth + 1));
        }
    }
    unreachable!("closure exhausted");
}

fn check_presents_sphere(board: &Mosaic) {
    let budget = Budget::default();
    assert!(board.is_suitably_connected());
    assert!(admissible(board, &budget).unwrap().is_yes());
    assert_eq!(surface_components(board).unwrap(), 1);
    assert_eq!(euler_characteristic(board, &budget).unwrap(), 2);
}

#[test]
#[ignore = "writes fixtures; run once after changing the move table"]
fn regenerate_derived_fixtures() {
    let injected = ring3().inject();

    // 4-mosaic of the one-double-point sphere with one classical crossing,
    // one marked vertex and one singular vertex.
    let (four, depth) = closure_search(&injected, (1, 1, 1));
    check_presents_sphere(&four);
    assert_eq!(four.chs(), 3);
    let doc = format!(
        "# 4-mosaic with one classical crossing, one marked vertex and one\n\
         # singular vertex ({depth} moves from the 3-mosaic ring).\n{}",
        serialize(&four)
    );
    std::fs::write(fixtures_dir().join("fig20_f1_4mosaic.smg"), doc).unwrap();
    println!("fig20_f1_4mosaic.smg (depth {depth}):\n{}", serialize(&four));

    // Admissible singular 4-mosaic with one singular vertex and two
    // classical crossings.
    let (b, depth) = closure_search(&injected, (2, 0, 1));
    check_presents_sphere(&b);
    assert_eq!(b.chs(), 3);
    let doc = format!(
        "# Singular marked graph 4-mosaic with one singular vertex and two\n\
         # classical crossings ({depth} moves from the 3-mosaic ring).\n{}",
        serialize(&b)
    );
    std::fs::write(fixtures_dir().join("fig18_3_1_1.smg"), doc).unwrap();
    println!("fig18_3_1_1.smg (depth {depth}):\n{}", serialize(&b));
}
