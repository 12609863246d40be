//! Fixed workloads shared by the benchmarks.

use schurtree::Tree;

/// Tree sizes swept by the benchmarks.
pub const SIZES: [usize; 3] = [16, 64, 128];

/// Seeded random tree on `n` vertices with its longest path.
pub fn workload(n: usize) -> (Tree, Vec<usize>) {
    let t = Tree::random(n, 0x5eed ^ n as u64).expect("n >= 1");
    let path = t.longest_path();
    (t, path)
}
