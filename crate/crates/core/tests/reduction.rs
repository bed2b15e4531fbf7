mod common;

use chorddom::oracles::random_digraph;
use chorddom::reduction::{parse_names, serialize_names, ChordType};
use chorddom::{
    build_reduction, ham_path_from_pds, hamiltonian_path, is_hamiltonian_path,
    is_paired_dominating_set, pds_from_ham_path, validate_reduction, ChordModel, ChordName,
    Digraph, ReductionArtifact, ReductionError,
};
use common::*;
use proptest::prelude::*;

/// Sample digraphs: all on 2 and 3 vertices, and a seeded batch on 4 and 5.
fn samples() -> Vec<Digraph> {
    let mut out = all_digraphs(2);
    out.extend(all_digraphs(3));
    out.extend((0..20u64).map(|s| random_digraph(4 + (s % 2) as usize, 0.5, s)));
    out
}

/// Rebuilds the artifact with the endpoints at `t` and `t + 1` exchanged.
fn transpose(art: &ReductionArtifact, t: u32) -> ReductionArtifact {
    let mut pairs = art.model().endpoint_pairs();
    let (x, y) = (art.model().chord_at(t), art.model().chord_at(t + 1));
    let swap = |p: u32| {
        if p == t {
            t + 1
        } else if p == t + 1 {
            t
        } else {
            p
        }
    };
    for id in [x, y] {
        let (a, b) = (swap(pairs[id].0), swap(pairs[id].1));
        pairs[id] = (a.min(b), a.max(b));
    }
    ReductionArtifact::from_parts(
        art.digraph().clone(),
        ChordModel::circle(&pairs).unwrap(),
        art.names().to_vec(),
    )
}

/// Rebuilds the artifact without chord `id`, closing the gap in positions.
fn delete(art: &ReductionArtifact, id: usize) -> ReductionArtifact {
    let (p, q) = art.model().endpoint_pairs()[id];
    let shift = |x: u32| x - u32::from(x > p) - u32::from(x > q);
    let mut pairs = Vec::new();
    let mut names = Vec::new();
    for (c, &(a, b)) in art.model().endpoint_pairs().iter().enumerate() {
        if c != id {
            pairs.push((shift(a), shift(b)));
            names.push(art.name(c));
        }
    }
    ReductionArtifact::from_parts(
        art.digraph().clone(),
        ChordModel::circle(&pairs).unwrap(),
        names,
    )
}

/// Whether the construction fixes whether `x` and `y` cross.
fn constrained(x: ChordName, y: ChordName) -> bool {
    use ChordName::*;
    let lr = |c: ChordName| matches!(c, L { .. } | R { .. });
    let one_way = |x: ChordName, y: ChordName| match (x, y) {
        (A { .. } | APrime { .. } | BPrime { .. } | FPrime { .. }, _) => true,
        (C { i, j }, L { i: a, j: b } | R { i: a, j: b }) => (i, j) == (a, b),
        (B { i, j }, C { i: a, j: b } | L { i: a, j: b } | R { i: a, j: b }) => (i, j) == (a, b),
        (E { x, j, .. }, R { i, j: b }) => (x, j) == (i, b),
        (E { y, j, .. }, L { i, j: b }) => (y, j + 1) == (i, b),
        (E { j, .. }, F { j: b }) => j == b,
        (F { .. }, F { .. }) => true,
        _ => false,
    };
    (lr(x) && lr(y)) || one_way(x, y) || one_way(y, x)
}

#[test]
fn counts_follow_the_construction() {
    for d in samples() {
        let art = build_reduction(&d).unwrap();
        let (n, m) = (d.n(), d.m());
        let count = |t: ChordType| art.names().iter().filter(|nm| nm.chord_type() == t).count();
        assert_eq!(count(ChordType::L), n * n - 1);
        assert_eq!(count(ChordType::R), n * n - 1);
        assert_eq!(count(ChordType::C), n * n);
        assert_eq!(count(ChordType::B), n * n);
        assert_eq!(count(ChordType::BPrime), n * n);
        assert_eq!(count(ChordType::A), n);
        assert_eq!(count(ChordType::APrime), n);
        assert_eq!(count(ChordType::F), n - 1);
        assert_eq!(count(ChordType::FPrime), n - 1);
        assert_eq!(count(ChordType::E), (n - 1) * m);
        assert_eq!(art.model().m(), 5 * n * n + 4 * n - 4 + (n - 1) * m);
        assert_eq!(art.model().m(), art.expected_chord_count());
        assert_eq!(art.target_size(), 2 * n * n + 2 * n - 2);
        let violations = validate_reduction(&art);
        assert!(violations.is_empty(), "{:?}: {:?}", d.edges(), violations);
    }
}

#[test]
fn three_vertex_instance() {
    let d = Digraph::new(3, &[(1, 3), (2, 3)]).unwrap();
    let art = build_reduction(&d).unwrap();
    assert_eq!(art.model().m(), 57);
    assert_eq!(art.target_size(), 22);
    assert!(validate_reduction(&art).is_empty());
    assert_eq!(hamiltonian_path(&d, 12).unwrap(), None);
    assert!(matches!(
        pds_from_ham_path(&art, &[1, 2, 3]),
        Err(ReductionError::InvalidPath(_))
    ));
}

#[test]
fn too_few_vertices() {
    let d = Digraph::new(1, &[]).unwrap();
    assert_eq!(
        build_reduction(&d).unwrap_err(),
        ReductionError::TooFewVertices(1)
    );
}

#[test]
fn witnesses_round_trip() {
    for d in samples() {
        let art = build_reduction(&d).unwrap();
        let g = art.graph();
        match hamiltonian_path(&d, 12).unwrap() {
            Some(path) => {
                let s = pds_from_ham_path(&art, &path).unwrap();
                assert_eq!(s.len(), art.target_size());
                assert!(is_paired_dominating_set(&g, &s));
                let back = ham_path_from_pds(&art, &s).unwrap();
                assert!(is_hamiltonian_path(&d, &back));
                assert_eq!(back, path);
            }
            None => assert!(ham_path_by_permutations(&d).is_none()),
        }
    }
}

#[test]
fn every_path_round_trips() {
    // complete digraph on 5 vertices: all 6 paths from 1 to 5
    let edges: Vec<(usize, usize)> = (1..=5)
        .flat_map(|u| (1..=5).filter(move |&v| v != u).map(move |v| (u, v)))
        .collect();
    let d = Digraph::new(5, &edges).unwrap();
    let art = build_reduction(&d).unwrap();
    let g = art.graph();
    let mut seen = 0;
    for a in 2..=4 {
        for b in 2..=4 {
            for c in 2..=4 {
                if a == b || b == c || a == c {
                    continue;
                }
                let path = vec![1, a, b, c, 5];
                let s = pds_from_ham_path(&art, &path).unwrap();
                assert!(is_paired_dominating_set(&g, &s));
                assert_eq!(ham_path_from_pds(&art, &s).unwrap(), path);
                seen += 1;
            }
        }
    }
    assert_eq!(seen, 6);
}

#[test]
fn single_chord_mutations_are_rejected() {
    for d in samples() {
        let Some(path) = hamiltonian_path(&d, 12).unwrap() else {
            continue;
        };
        let art = build_reduction(&d).unwrap();
        let g = art.graph();
        let s = pds_from_ham_path(&art, &path).unwrap();
        let rejected =
            |t: &[usize]| !is_paired_dominating_set(&g, t) || ham_path_from_pds(&art, t).is_err();
        for &out in &s {
            let removed: Vec<usize> = s.iter().copied().filter(|&c| c != out).collect();
            assert!(rejected(&removed));
            for inn in (0..g.n()).filter(|c| !s.contains(c)) {
                let mut swapped = removed.clone();
                swapped.push(inn);
                assert!(rejected(&swapped), "{} -> {}", art.name(out), art.name(inn));
            }
        }
        for inn in (0..g.n()).filter(|c| !s.contains(c)) {
            let mut added = s.clone();
            added.push(inn);
            assert!(matches!(
                ham_path_from_pds(&art, &added),
                Err(ReductionError::NotTargetSizePds(_))
            ));
        }
        assert!(matches!(
            ham_path_from_pds(&art, &s[..s.len() - 1]),
            Err(ReductionError::NotTargetSizePds(_))
        ));
    }
}

#[test]
fn deleted_chords_are_reported() {
    let d = Digraph::new(3, &[(1, 2), (2, 3), (1, 3)]).unwrap();
    let art = build_reduction(&d).unwrap();
    for id in 0..art.model().m() {
        let v = validate_reduction(&delete(&art, id));
        assert!(v.iter().any(|x| x.check == "count"), "{}", art.name(id));
    }
}

#[test]
fn transpositions_break_exactly_the_constrained_pairs() {
    for d in [
        Digraph::new(2, &[(1, 2)]).unwrap(),
        Digraph::new(3, &[(1, 2), (2, 3), (1, 3), (3, 1)]).unwrap(),
        Digraph::new(3, &[(2, 1), (1, 3), (3, 2)]).unwrap(),
    ] {
        let art = build_reduction(&d).unwrap();
        let positions = art.model().num_positions() as u32;
        for t in 1..positions {
            let (x, y) = (art.model().chord_at(t), art.model().chord_at(t + 1));
            if x == y {
                continue;
            }
            let v = validate_reduction(&transpose(&art, t));
            assert_eq!(
                !v.is_empty(),
                constrained(art.name(x), art.name(y)),
                "{} / {}: {:?}",
                art.name(x),
                art.name(y),
                v
            );
        }
    }
}

#[test]
fn left_right_swap_is_reported() {
    let d = Digraph::new(2, &[(1, 2)]).unwrap();
    let art = build_reduction(&d).unwrap();
    // second endpoint of r_1^1 followed by first endpoint of l_2^1
    let r = art
        .model()
        .chord(art.id("r_1^1".parse().unwrap()).unwrap())
        .q;
    let l = art
        .model()
        .chord(art.id("l_2^1".parse().unwrap()).unwrap())
        .p;
    assert_eq!(l, r + 1);
    let v = validate_reduction(&transpose(&art, r));
    assert!(v.iter().any(|x| x.check == "a"), "{v:?}");
}

#[test]
fn name_table_round_trip() {
    let d = random_digraph(4, 0.5, 3);
    let art = build_reduction(&d).unwrap();
    assert_eq!(parse_names(&serialize_names(&art)).unwrap(), art.names());
    assert!(parse_names("names v1\nq_1 0\n").is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn names_round_trip(i in 1usize..30, j in 1usize..30, x in 1usize..30) {
        for name in [
            ChordName::L { i, j },
            ChordName::C { i, j },
            ChordName::R { i, j },
            ChordName::E { x, y: i, j },
            ChordName::F { j },
            ChordName::FPrime { j },
            ChordName::A { i },
            ChordName::APrime { i },
            ChordName::B { i, j },
            ChordName::BPrime { i, j },
        ] {
            prop_assert_eq!(name.to_string().parse::<ChordName>().unwrap(), name);
        }
    }

    #[test]
    fn random_instances_validate(n in 2usize..6, p in 0.0f64..1.0, seed in any::<u64>()) {
        let d = random_digraph(n, p, seed);
        let art = build_reduction(&d).unwrap();
        prop_assert!(validate_reduction(&art).is_empty());
        if let Some(path) = hamiltonian_path(&d, 12).unwrap() {
            let s = pds_from_ham_path(&art, &path).unwrap();
            prop_assert_eq!(ham_path_from_pds(&art, &s).unwrap(), path);
        }
    }
}
