#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tdkernel::graph::{Graph, Vertex};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph with maximum degree at most `max_deg`: candidate pairs in
/// random order, each kept with probability `p` if both ends have room.
pub fn bounded_degree(rng: &mut ChaCha8Rng, n: usize, max_deg: usize, p: f64) -> Graph {
    let mut pairs: Vec<(Vertex, Vertex)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    pairs.shuffle(rng);
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for (u, v) in pairs {
        if deg[u] < max_deg && deg[v] < max_deg && rng.gen_bool(p) {
            deg[u] += 1;
            deg[v] += 1;
            edges.push((u, v));
        }
    }
    Graph::new(n, &edges).unwrap()
}

/// Random spanning tree with degree cap, plus extra edges, so the result is connected.
pub fn connected_bounded(rng: &mut ChaCha8Rng, n: usize, max_deg: usize, extra: f64) -> Graph {
    assert!(max_deg >= 2 || n <= 2);
    let mut deg = vec![0; n];
    let mut edges = Vec::new();
    for v in 1..n {
        let candidates: Vec<Vertex> = (0..v).filter(|&u| deg[u] < max_deg).collect();
        let u = *candidates.choose(rng).unwrap();
        deg[u] += 1;
        deg[v] += 1;
        edges.push((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if deg[u] < max_deg
                && deg[v] < max_deg
                && !edges.contains(&(u, v))
                && rng.gen_bool(extra)
            {
                deg[u] += 1;
                deg[v] += 1;
                edges.push((u, v));
            }
        }
    }
    Graph::new(n, &edges).unwrap()
}

pub fn path(n: usize) -> Graph {
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::new(n, &edges).unwrap()
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |r: usize, c: usize| r * cols + c;
    let mut edges = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if c + 1 < cols {
                edges.push((id(r, c), id(r, c + 1)));
            }
            if r + 1 < rows {
                edges.push((id(r, c), id(r + 1, c)));
            }
        }
    }
    Graph::new(rows * cols, &edges).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    let edges: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
    Graph::new(leaves + 1, &edges).unwrap()
}
