use ballcomp::graph::VertexSet;
use ballcomp::tree::{closure_targets, RootedBinaryTree, SubtreeKind};
use std::time::Instant;

fn all_binary_trees(n: usize) -> Vec<RootedBinaryTree> {
    fn shapes(n: usize) -> Vec<(Vec<Option<usize>>, Vec<Option<usize>>)> {
        if n == 0 { return vec![(Vec::new(), Vec::new())]; }
        let mut out = Vec::new();
        for left_size in 0..n {
            let right_size = n - 1 - left_size;
            for (ll, lr) in shapes(left_size) {
                for (rl, rr) in shapes(right_size) {
                    let mut left = vec![None];
                    let mut right = vec![None];
                    left.extend(ll.iter().map(|c| c.map(|v| v + 1)));
                    right.extend(lr.iter().map(|c| c.map(|v| v + 1)));
                    let off2 = 1 + left_size;
                    left.extend(rl.iter().map(|c| c.map(|v| v + off2)));
                    right.extend(rr.iter().map(|c| c.map(|v| v + off2)));
                    if left_size > 0 { left[0] = Some(1); }
                    if right_size > 0 { right[0] = Some(off2); }
                    out.push((left, right));
                }
            }
        }
        out
    }
    shapes(n).into_iter().map(|(l, r)| RootedBinaryTree::new(0, l, r).unwrap()).collect()
}

fn main() {
    let n = 9;
    let trees = all_binary_trees(n);
    let mut t_by_kind = [0u128; 3];
    let mut n_by_kind = [0u64; 3];
    for tree in &trees {
        for mask in 0u32..(1 << n) {
            let pool: VertexSet = (0..n).filter(|&i| mask & (1 << i) != 0).collect();
            for target in closure_targets(tree, &pool) {
                let k = match target.kind(tree) {
                    SubtreeKind::WholeTree => 0,
                    SubtreeKind::SingleNode => 1,
                    SubtreeKind::Component => 2,
                };
                let s = Instant::now();
                let code = tree.encode_subtree(&pool, &target).unwrap();
                t_by_kind[k] += s.elapsed().as_nanos();
                n_by_kind[k] += 1;
                std::hint::black_box(code);
            }
        }
    }
    for (name, i) in [("whole", 0), ("single", 1), ("component", 2)] {
        println!("{name}: {} targets, {} ms total, {} ns avg",
            n_by_kind[i], t_by_kind[i] / 1_000_000,
            if n_by_kind[i] > 0 { t_by_kind[i] as u64 / n_by_kind[i] } else { 0 });
    }
}
