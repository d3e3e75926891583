#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use knotgroup::lattice::NEIGHBOR_OFFSETS;
use knotgroup::{CStructure, CubicalComplex, NeighborMask, Word};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A connected set of `1..=max` cubes grown by random 26-neighbour steps
/// inside a `side³` box.
pub fn random_connected_complex(rng: &mut impl Rng, side: i32, max: usize) -> CubicalComplex {
    let target = rng.gen_range(1..=max);
    let start = [side / 2; 3];
    let mut cubes = vec![start];
    let mut k = CubicalComplex::with_bounds([0; 3], [side - 1; 3]);
    k.insert(start);
    let mut attempts = 0;
    while cubes.len() < target && attempts < 50 * max {
        attempts += 1;
        let base = *cubes.choose(rng).unwrap();
        let o = NEIGHBOR_OFFSETS[rng.gen_range(0..26)];
        let v = [base[0] + o[0], base[1] + o[1], base[2] + o[2]];
        if v.iter().any(|&c| c < 0 || c >= side) || cubes.contains(&v) {
            continue;
        }
        cubes.push(v);
        k.insert(v);
    }
    k
}

pub fn random_mask(rng: &mut impl Rng) -> NeighborMask {
    // vary the density so both sparse and dense masks show up
    let p: f64 = rng.gen_range(0.05..0.95);
    let mut bits = 0u32;
    for i in 0..26 {
        if rng.gen_bool(p) {
            bits |= 1 << i;
        }
    }
    NeighborMask(bits)
}

/// A connected C-structure with up to five vertices, a spanning tree plus
/// extra edges (loops allowed) and up to five faces bounded by random
/// closed walks.
pub fn random_cstructure(rng: &mut impl Rng) -> CStructure {
    let n = rng.gen_range(1..=5usize);
    let mut edges: Vec<(u32, u32)> = Vec::new();
    let mut parent = vec![None; n];
    for v in 1..n {
        let u = rng.gen_range(0..v);
        parent[v] = Some(edges.len());
        if rng.gen_bool(0.5) {
            edges.push((u as u32, v as u32));
        } else {
            edges.push((v as u32, u as u32));
        }
    }
    for _ in 0..rng.gen_range(0..=4) {
        edges.push((rng.gen_range(0..n) as u32, rng.gen_range(0..n) as u32));
    }
    // signed letter leading from `v` toward vertex 0 along the tree
    let up = |v: usize| -> (i64, usize) {
        let e = parent[v].unwrap();
        let (s, t) = edges[e];
        if s as usize == v { (e as i64 + 1, t as usize) } else { (-(e as i64 + 1), s as usize) }
    };
    let mut faces = Vec::new();
    for _ in 0..rng.gen_range(0..=5) {
        let start = rng.gen_range(0..n);
        let mut at = start;
        let mut word = Vec::new();
        for _ in 0..rng.gen_range(1..=6) {
            let steps: Vec<(i64, usize)> = edges
                .iter()
                .enumerate()
                .flat_map(|(i, &(s, t))| {
                    let mut out = Vec::new();
                    if s as usize == at {
                        out.push((i as i64 + 1, t as usize));
                    }
                    if t as usize == at {
                        out.push((-(i as i64 + 1), s as usize));
                    }
                    out
                })
                .collect();
            if steps.is_empty() {
                break;
            }
            let (l, next) = *steps.choose(rng).unwrap();
            word.push(l);
            at = next;
        }
        // walk back: at → root, then root → start
        let mut back = Vec::new();
        let mut v = at;
        while v != 0 {
            let (l, next) = up(v);
            back.push(l);
            v = next;
        }
        let mut down = Vec::new();
        let mut v = start;
        while v != 0 {
            let (l, next) = up(v);
            down.push(-l);
            v = next;
        }
        down.reverse();
        word.extend(back);
        word.extend(down);
        faces.push(Word::from_signed(&word));
    }
    CStructure::from_parts(n, edges, faces).expect("closed walks")
}
