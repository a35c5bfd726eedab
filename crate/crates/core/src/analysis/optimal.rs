//! Truncated minimum-redundancy estimate.

use crate::distributions::Distribution;

/// Huffman codeword lengths for `weights`, in input order.
///
/// Two-queue construction over the sorted leaves, `O(n log n)` for the sort
/// and linear afterwards. Ties prefer leaves, which keeps the tree shallow.
pub fn huffman_lengths(weights: &[f64]) -> Vec<u32> {
    let n = weights.len();
    match n {
        0 => return Vec::new(),
        1 => return vec![0],
        _ => {}
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| weights[a].total_cmp(&weights[b]));

    // Nodes 0..n are leaves (in sorted order), n.. are internal.
    let mut weight: Vec<f64> = order.iter().map(|&i| weights[i]).collect();
    let mut parent = vec![usize::MAX; 2 * n - 1];
    let (mut leaf, mut internal) = (0usize, n);
    let pick = |weight: &Vec<f64>, leaf: &mut usize, internal: &mut usize| -> usize {
        let take_leaf =
            *leaf < n && (*internal >= weight.len() || weight[*leaf] <= weight[*internal]);
        if take_leaf {
            *leaf += 1;
            *leaf - 1
        } else {
            *internal += 1;
            *internal - 1
        }
    };
    for _ in 0..n - 1 {
        let a = pick(&weight, &mut leaf, &mut internal);
        let b = pick(&weight, &mut leaf, &mut internal);
        let id = weight.len();
        weight.push(weight[a] + weight[b]);
        parent[a] = id;
        parent[b] = id;
    }
    // Parents always have larger ids, so one backward pass sets depths.
    let mut depth = vec![0u32; 2 * n - 1];
    for v in (0..2 * n - 2).rev() {
        depth[v] = depth[parent[v]] + 1;
    }
    let mut out = vec![0u32; n];
    for (node, &i) in order.iter().enumerate() {
        out[i] = depth[node];
    }
    out
}

/// Expected length of a Huffman code on `p(1), …, p(x−1)` and one
/// supersymbol of mass `t = S(x)`, whose subtree is charged its
/// conditional entropy `lg t + H_x/t`:
///
/// `Σ_{i<x} p(i)·n(i) + t·n_t + t·lg t + H_x`.
///
/// An estimate of the optimal expected length, not a bound.
pub fn optimal_estimate(dist: &dyn Distribution, x: u64) -> f64 {
    assert!(x >= 2, "need x ≥ 2");
    let mut weights: Vec<f64> = (1..x).map(|i| dist.pmf(i)).collect();
    let t = dist.survival(x).mid();
    if t > 0.0 {
        weights.push(t);
    }
    let lengths = huffman_lengths(&weights);
    let head: f64 = weights[..x as usize - 1]
        .iter()
        .zip(&lengths)
        .map(|(p, &n)| p * n as f64)
        .sum();
    if t > 0.0 {
        let n_t = lengths[x as usize - 1] as f64;
        head + t * n_t + t * t.log2() + dist.tail_entropy(x).mid()
    } else {
        head
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::simple::Finite;
    use crate::distributions::DistId;

    #[test]
    fn small_huffman() {
        assert_eq!(huffman_lengths(&[0.25, 0.5, 0.25]), vec![2, 1, 2]);
        assert_eq!(huffman_lengths(&[0.1, 0.2, 0.3, 0.4]), vec![3, 3, 2, 1]);
        assert_eq!(huffman_lengths(&[1.0]), vec![0]);
    }

    #[test]
    fn dyadic_stub() {
        let d = Finite::new(vec![0.5, 0.25, 0.25]);
        assert!((optimal_estimate(&d, 4) - 1.5).abs() < 1e-15);
    }

    #[test]
    fn gauss_kuzmin_estimate() {
        let v = optimal_estimate(&DistId::gauss_kuzmin(), 1 << 16);
        assert!((v - 3.47207).abs() < 2e-3, "{v}");
    }
}
