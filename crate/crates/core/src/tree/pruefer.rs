use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Tree;
use crate::error::{Error, Result};

pub(super) fn encode(t: &Tree) -> Vec<usize> {
    let n = t.n();
    if n <= 2 {
        return Vec::new();
    }
    let mut degree: Vec<usize> = (0..n).map(|v| t.degree(v)).collect();
    let mut removed = vec![false; n];
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut seq = Vec::with_capacity(n - 2);
    for _ in 0..n - 2 {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        removed[leaf] = true;
        let parent = *t
            .neighbors(leaf)
            .iter()
            .find(|&&w| !removed[w])
            .expect("leaf keeps exactly one live neighbor");
        seq.push(parent);
        degree[parent] -= 1;
        if degree[parent] == 1 {
            leaves.push(Reverse(parent));
        }
    }
    seq
}

pub(super) fn decode(seq: &[usize]) -> Result<Tree> {
    let n = seq.len() + 2;
    if let Some(&bad) = seq.iter().find(|&&x| x >= n) {
        return Err(Error::BadLabel { label: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<usize>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let Reverse(leaf) = leaves.pop().expect("Prüfer decoding keeps a leaf available");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(u) = leaves.pop().expect("two vertices remain");
    let Reverse(v) = leaves.pop().expect("two vertices remain");
    edges.push((u, v));
    Tree::new(n, &edges)
}

pub(super) fn random(n: usize, seed: u64) -> Result<Tree> {
    match n {
        0 => Err(Error::BadSpec("random tree needs n >= 1".into())),
        1 => Ok(Tree::singleton()),
        _ => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let seq: Vec<usize> = (0..n - 2).map(|_| rng.gen_range(0..n)).collect();
            decode(&seq)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn all_sequences(n: usize) -> Vec<Vec<usize>> {
        let len = n - 2;
        let total = n.pow(len as u32);
        (0..total)
            .map(|mut code| {
                (0..len)
                    .map(|_| {
                        let d = code % n;
                        code /= n;
                        d
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn round_trip_exhaustive_up_to_eight() {
        for n in 3..=8 {
            for seq in all_sequences(n) {
                let t = decode(&seq).unwrap();
                assert_eq!(encode(&t), seq);
                assert_eq!(decode(&encode(&t)).unwrap(), t);
            }
        }
    }

    #[test]
    fn two_vertices() {
        let t = decode(&[]).unwrap();
        assert_eq!(t.edges(), &[(0, 1)]);
        assert!(encode(&t).is_empty());
    }

    #[test]
    fn random_is_seeded() {
        let a = random(7, 1).unwrap();
        let b = random(7, 1).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.edges().len(), 6);
        assert_eq!(random(1, 5).unwrap().n(), 1);
    }

    #[test]
    fn out_of_range_symbol() {
        assert!(matches!(decode(&[5]), Err(Error::BadLabel { .. })));
    }
}
