//! Subset enumeration helpers shared by the combinatorial modules.

/// All `k`-subsets of `0..n` as strictly increasing vectors, in lexicographic order.
pub fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        let mut i = k;
        while i > 0 && cur[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return out;
        }
        cur[i - 1] += 1;
        for t in i..k {
            cur[t] = cur[t - 1] + 1;
        }
    }
}

/// Subsets of `0..n` of size at most `max`, ordered by size then lexicographically.
pub fn subsets_up_to(n: usize, max: usize) -> Vec<Vec<usize>> {
    (0..=max.min(n)).flat_map(|k| combinations(n, k)).collect()
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

pub fn is_subset(small: &[usize], big: &[usize]) -> bool {
    small.iter().all(|x| big.binary_search(x).is_ok())
}

/// Sign of the permutation sorting `seq` (entries distinct), with the sorted result.
pub fn sort_with_sign(seq: &[usize]) -> (i64, Vec<usize>) {
    let mut v = seq.to_vec();
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    (sign, v)
}
