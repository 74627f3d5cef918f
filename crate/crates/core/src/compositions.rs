//! Weak compositions of an integer into a fixed number of parts.

/// Iterates the weak compositions of `total` into `parts` nonnegative parts in
/// colexicographic order: `(total, 0, .., 0)` first, `(0, .., 0, total)` last.
#[derive(Debug, Clone)]
pub struct WeakCompositions {
    current: Option<Vec<u32>>,
}

impl WeakCompositions {
    pub fn new(total: u32, parts: usize) -> Self {
        let current = match parts {
            0 if total == 0 => Some(Vec::new()),
            0 => None,
            _ => {
                let mut first = vec![0; parts];
                first[0] = total;
                Some(first)
            }
        };
        WeakCompositions { current }
    }
}

impl Iterator for WeakCompositions {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        let out = self.current.take()?;
        let p = out.len();
        // first nonzero part; everything before it is zero
        if let Some(s) = out.iter().position(|&a| a != 0) {
            if s + 1 < p {
                let mut next = out.clone();
                let rest = next[s] - 1;
                next[s] = 0;
                next[s + 1] += 1;
                next[0] = rest;
                self.current = Some(next);
            }
        }
        Some(out)
    }
}

/// `C(n + k - 1, k - 1)`, the number of weak compositions of `n` into `k` parts.
pub fn count(total: u32, parts: usize) -> u128 {
    if parts == 0 {
        return u128::from(total == 0);
    }
    let n = total as u128 + parts as u128 - 1;
    let k = (parts as u128 - 1).min(total as u128);
    (0..k).fold(1u128, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn brute(total: u32, parts: usize) -> Vec<Vec<u32>> {
        let mut out = Vec::new();
        let mut cur = vec![0u32; parts];
        fn rec(i: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
            if i + 1 == cur.len() {
                cur[i] = left;
                out.push(cur.clone());
                return;
            }
            for a in 0..=left {
                cur[i] = a;
                rec(i + 1, left - a, cur, out);
            }
        }
        if parts == 0 {
            if total == 0 {
                out.push(vec![]);
            }
            return out;
        }
        rec(0, total, &mut cur, &mut out);
        out
    }

    #[test]
    fn small_cases() {
        let v: Vec<_> = WeakCompositions::new(2, 2).collect();
        assert_eq!(v, vec![vec![2, 0], vec![1, 1], vec![0, 2]]);
        assert_eq!(
            WeakCompositions::new(0, 3).collect::<Vec<_>>(),
            vec![vec![0, 0, 0]]
        );
        assert_eq!(WeakCompositions::new(0, 0).count(), 1);
        assert_eq!(WeakCompositions::new(1, 0).count(), 0);
        assert_eq!(WeakCompositions::new(5, 1).collect::<Vec<_>>(), vec![vec![5]]);
    }

    proptest! {
        #[test]
        fn matches_brute_force(total in 0u32..7, parts in 0usize..5) {
            let got: Vec<_> = WeakCompositions::new(total, parts).collect();
            let mut want = brute(total, parts);
            // colex order is lex order of the reversed tuples
            want.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
            prop_assert_eq!(got.len() as u128, count(total, parts));
            prop_assert_eq!(got, want);
        }
    }
}
