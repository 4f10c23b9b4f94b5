//! Counting and enumeration helpers: binomials, Stirling numbers of the second
//! kind, k-subsets in lexicographic order and set partitions.

/// `C(n, k)`, zero when `k > n`. Panics on `u128` overflow.
pub fn binomial(n: u64, k: u64) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Stirling number of the second kind via `S(n,k) = k S(n-1,k) + S(n-1,k-1)`.
pub fn stirling2(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let mut row = vec![0u128; k + 1];
    row[0] = 1;
    for i in 1..=n {
        for j in (1..=k.min(i)).rev() {
            row[j] = j as u128 * row[j] + row[j - 1];
        }
        row[0] = 0;
    }
    row[k]
}

/// Calls `visit` on every `k`-subset of `0..n` in lexicographic order.
pub fn for_each_subset<F: FnMut(&[usize])>(n: usize, k: usize, mut visit: F) {
    if k > n {
        return;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        visit(&idx);
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i - 1 {
            i -= 1;
        }
        if i == 0 {
            return;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for_each_subset(n, k, |s| out.push(s.to_vec()));
    out
}

/// Set partitions of `0..n` into exactly `k` nonempty blocks, as restricted
/// growth strings (`a[0] = 0`, `a[i] <= 1 + max(a[..i])`). Block labels are
/// therefore ordered by their minimum element.
pub fn set_partitions(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if n == 0 || k == 0 || k > n {
        if n == 0 && k == 0 {
            out.push(Vec::new());
        }
        return out;
    }
    let mut rgs = vec![0usize; n];
    fill(&mut rgs, 1, 0, k, &mut out);
    out
}

fn fill(rgs: &mut [usize], pos: usize, max: usize, k: usize, out: &mut Vec<Vec<usize>>) {
    let n = rgs.len();
    if pos == n {
        if max + 1 == k {
            out.push(rgs.to_vec());
        }
        return;
    }
    // Not enough positions left to open the missing blocks.
    if k - (max + 1) > n - pos {
        return;
    }
    for b in 0..=(max + 1).min(k - 1) {
        rgs[pos] = b;
        fill(rgs, pos + 1, max.max(b), k, out);
    }
}
