use num_bigint::BigUint;

/// Exact binomial coefficient `C(n, k)`.
pub(crate) fn big(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k);
    let mut acc = BigUint::from(1u32);
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Pascal table `C(a, b)` for `a <= max_n`, `b <= max_k`, with `None` on
/// overflow of `u64`.
#[derive(Debug, Clone)]
pub(crate) struct Table {
    max_k: usize,
    cells: Vec<Option<u64>>,
}

impl Table {
    pub(crate) fn new(max_n: usize, max_k: usize) -> Self {
        let width = max_k + 1;
        let mut cells = vec![Some(0u64); (max_n + 1) * width];
        for a in 0..=max_n {
            cells[a * width] = Some(1);
            for b in 1..=max_k.min(a) {
                let up = cells[(a - 1) * width + b - 1];
                let left = if b < a {
                    cells[(a - 1) * width + b]
                } else {
                    Some(0)
                };
                cells[a * width + b] = match (up, left) {
                    (Some(x), Some(y)) => x.checked_add(y),
                    _ => None,
                };
            }
        }
        Table { max_k, cells }
    }

    /// `C(a, b)`; panics if the entry overflowed, callers check with
    /// [`Table::checked`] first.
    pub(crate) fn get(&self, a: usize, b: usize) -> u64 {
        self.checked(a, b).expect("binomial overflow")
    }

    pub(crate) fn checked(&self, a: usize, b: usize) -> Option<u64> {
        if b > self.max_k {
            return None;
        }
        self.cells[a * (self.max_k + 1) + b]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(big(4, 2), BigUint::from(6u32));
        assert_eq!(big(3, 5), BigUint::from(0u32));
        let t = Table::new(10, 4);
        assert_eq!(t.get(10, 4), 210);
        assert_eq!(t.get(2, 3), 0);
        assert_eq!(t.get(0, 0), 1);
    }

    #[test]
    fn table_agrees_with_bigint() {
        let t = Table::new(60, 8);
        for a in 0..=60u64 {
            for b in 0..=8u64 {
                assert_eq!(BigUint::from(t.get(a as usize, b as usize)), big(a, b));
            }
        }
    }
}
