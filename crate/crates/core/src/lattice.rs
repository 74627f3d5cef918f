//! Iteration over integer boxes `[0, b_0] x ... x [0, b_{l-1}]`.

/// Points of the box in lexicographic order.
#[derive(Debug, Clone)]
pub struct BoxPoints {
    upper: Vec<u64>,
    next: Option<Vec<u64>>,
}

impl BoxPoints {
    pub fn new(upper: Vec<u64>) -> Self {
        let next = Some(vec![0; upper.len()]);
        BoxPoints { upper, next }
    }
}

impl Iterator for BoxPoints {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let out = self.next.take()?;
        let mut succ = out.clone();
        for c in (0..succ.len()).rev() {
            if succ[c] < self.upper[c] {
                succ[c] += 1;
                self.next = Some(succ);
                break;
            }
            succ[c] = 0;
        }
        Some(out)
    }
}

/// Number of points, or `None` if it does not fit in `usize`.
pub fn box_size(upper: &[u64]) -> Option<usize> {
    upper.iter().try_fold(1usize, |acc, &b| {
        usize::try_from(b)
            .ok()?
            .checked_add(1)
            .and_then(|s| acc.checked_mul(s))
    })
}
