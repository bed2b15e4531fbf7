use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ChordModel, Position};

/// Seeded random k-polygon model with `m` chords.
///
/// Each chord draws an ordered pair of sides, redrawing while both are equal;
/// the endpoints landing on each side are then shuffled along it. Chord ids
/// follow the order of their first endpoint.
pub fn random_polygon_model(k: usize, m: usize, seed: u64) -> ChordModel {
    assert!(k >= 3, "polygon models need k >= 3");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut per_side: Vec<Vec<usize>> = vec![Vec::new(); k];
    for chord in 0..m {
        let a = rng.gen_range(0..k);
        let mut b = rng.gen_range(0..k);
        while b == a {
            b = rng.gen_range(0..k);
        }
        per_side[a].push(chord);
        per_side[b].push(chord);
    }
    let mut ends: Vec<Vec<Position>> = vec![Vec::with_capacity(2); m];
    let mut next: Position = 1;
    for side in per_side.iter_mut() {
        side.shuffle(&mut rng);
        for &chord in side.iter() {
            ends[chord].push(next);
            next += 1;
        }
    }
    let mut pairs: Vec<(Position, Position)> = ends.into_iter().map(|e| (e[0], e[1])).collect();
    pairs.sort_unstable();
    let lengths: Vec<u32> = per_side.iter().map(|s| s.len() as u32).collect();
    ChordModel::polygon(&lengths, &pairs).expect("generator yields valid models")
}
