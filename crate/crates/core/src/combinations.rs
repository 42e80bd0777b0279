//! Revolving-door enumeration of `t`-subsets of `0..n`.
//!
//! Consecutive subsets differ by exactly one element leaving and one entering,
//! so a running XOR of selected rows can be updated with two row operations.
//! This follows Knuth's Algorithm R (TAOCP 7.2.1.3).

#[derive(Clone, Debug)]
pub struct RevolvingDoor {
    n: usize,
    t: usize,
    // c[1..=t] holds the subset, c[t + 1] = n is a sentinel; c[0] is unused.
    c: Vec<usize>,
}

impl RevolvingDoor {
    /// Starts at the subset `{0, 1, …, t-1}`. Requires `t <= n`.
    pub fn new(n: usize, t: usize) -> Self {
        assert!(t <= n, "cannot choose {t} of {n}");
        let mut c = Vec::with_capacity(t + 2);
        c.push(0);
        c.extend(0..t);
        c.push(n);
        Self { n, t, c }
    }

    /// Current subset, unordered.
    pub fn current(&self) -> &[usize] {
        &self.c[1..=self.t]
    }

    /// Advances to the next subset and reports `(left, entered)`, or `None`
    /// once every subset has been visited.
    pub fn next_swap(&mut self) -> Option<(usize, usize)> {
        let t = self.t;
        if t == 0 || t == self.n {
            return None;
        }
        let c = &mut self.c;
        if t == 1 {
            if c[1] + 1 < self.n {
                c[1] += 1;
                return Some((c[1] - 1, c[1]));
            }
            return None;
        }

        let mut j = 2;
        let mut try_increase = if t % 2 == 1 {
            if c[1] + 1 < c[2] {
                c[1] += 1;
                return Some((c[1] - 1, c[1]));
            }
            false
        } else {
            if c[1] > 0 {
                c[1] -= 1;
                return Some((c[1] + 1, c[1]));
            }
            true
        };
        loop {
            if !try_increase {
                // c[j] == c[j-1] + 1
                if c[j] >= j {
                    let left = c[j];
                    c[j] = c[j - 1];
                    c[j - 1] = j - 2;
                    return Some((left, j - 2));
                }
                j += 1;
                if j > t {
                    return None;
                }
            }
            // c[j-1] == j - 2
            if c[j] + 1 < c[j + 1] {
                let left = c[j - 1];
                c[j - 1] = c[j];
                c[j] += 1;
                return Some((left, c[j]));
            }
            j += 1;
            if j > t {
                return None;
            }
            try_increase = false;
        }
    }
}

/// Binomial coefficient, saturating at `u64::MAX`.
pub fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
        if acc > u64::MAX as u128 {
            return u64::MAX;
        }
    }
    acc as u64
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn visits_every_subset_once_with_single_swaps() {
        for n in 0..=11 {
            for t in 0..=n {
                let mut rd = RevolvingDoor::new(n, t);
                let mut current: BTreeSet<usize> = rd.current().iter().copied().collect();
                let mut seen = BTreeSet::new();
                seen.insert(current.clone());
                while let Some((left, entered)) = rd.next_swap() {
                    assert!(current.remove(&left), "n={n} t={t}: {left} was not present");
                    assert!(current.insert(entered), "n={n} t={t}: {entered} already present");
                    let listed: BTreeSet<usize> = rd.current().iter().copied().collect();
                    assert_eq!(listed, current);
                    assert!(current.iter().all(|&x| x < n));
                    assert!(seen.insert(current.clone()), "n={n} t={t}: repeated subset");
                }
                assert_eq!(seen.len() as u64, binomial(n, t), "n={n} t={t}");
            }
        }
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), 10);
        assert_eq!(binomial(23, 0), 1);
        assert_eq!(binomial(3, 4), 0);
        assert_eq!(binomial(54, 27), 1_946_939_425_648_112);
        assert_eq!(binomial(200, 100), u64::MAX);
    }
}
